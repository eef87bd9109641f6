//! Product, the two coproducts, counit and primitive elements of the graph
//! bialgebras and their homogeneous quotients.
//!
//! Grading is the vertex count. The product is disjoint union. The
//! Joni–Rota coproduct sums over all splittings of the vertex set into two
//! parts; the colored coproduct keeps only the splittings that cut no red
//! edge. Tensors are combinations of ordered key pairs, so cocommutativity
//! stays a checkable property rather than a built-in symmetry.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{canonical_form, CanonicalKey};
use crate::combination::{Combination, LinearCombination, Tensor};
use crate::enumerate::enumerate_graphs;
use crate::graph::{EdgeColor, FramedGraph, Palette};
use crate::scalar::Scalar;
use crate::span::{kernel, BlockSpan};

/// Which vertex splittings the coproduct sums over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoproductRule {
    /// Every splitting.
    JoniRota,
    /// Splittings with no red edge between the two parts.
    Colored,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BialgebraError {
    NotHomogeneous,
    /// A key uses an edge color outside the context's palette.
    OutsidePalette,
}

impl fmt::Display for BialgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BialgebraError::NotHomogeneous => f.write_str("element is not homogeneous in the grading"),
            BialgebraError::OutsidePalette => f.write_str("element uses an edge color outside the palette"),
        }
    }
}

impl core::error::Error for BialgebraError {}

/// Class of the disjoint union.
pub fn product_keys(a: &CanonicalKey, b: &CanonicalKey) -> CanonicalKey {
    canonical_form(&a.to_graph().disjoint_union(&b.to_graph()))
}

/// Bilinear extension of disjoint union; the empty graph is the unit.
pub fn product(a: &LinearCombination, b: &LinearCombination) -> LinearCombination {
    let mut out = Combination::zero();
    for (ka, ca) in a {
        let ga = ka.to_graph();
        for (kb, cb) in b {
            out.add_term(canonical_form(&ga.disjoint_union(&kb.to_graph())), ca * cb);
        }
    }
    out
}

/// `a ⊗ b`.
pub fn tensor_product(a: &LinearCombination, b: &LinearCombination) -> Tensor {
    let mut out = Combination::zero();
    for (ka, ca) in a {
        for (kb, cb) in b {
            out.add_term((ka.clone(), kb.clone()), ca * cb);
        }
    }
    out
}

/// Exchanges the two tensor legs.
pub fn swap_legs(t: &Tensor) -> Tensor {
    t.map_keys(|(a, b)| (b.clone(), a.clone()))
}

pub fn coproduct_jr(g: &CanonicalKey) -> Tensor {
    coproduct(g, CoproductRule::JoniRota)
}

pub fn coproduct_c(g: &CanonicalKey) -> Tensor {
    coproduct(g, CoproductRule::Colored)
}

pub fn coproduct(g: &CanonicalKey, rule: CoproductRule) -> Tensor {
    let graph = g.to_graph();
    let n = graph.n();
    assert!(n < 64, "graph too large for the splitting enumeration");
    let full: u64 = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let red: Vec<u64> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&w| graph.edge(v, w) == Some(EdgeColor::Red))
                .fold(0u64, |m, w| m | 1 << w)
        })
        .collect();
    let mut out = Combination::zero();
    let mut part: u64 = 0;
    loop {
        let allowed = match rule {
            CoproductRule::JoniRota => true,
            CoproductRule::Colored => {
                (0..n).all(|v| part >> v & 1 == 0 || red[v] & !part & full == 0)
            }
        };
        if allowed {
            let left = canonical_form(&graph.induced_mask(part));
            let right = canonical_form(&graph.induced_mask(full & !part));
            out.add_term((left, right), Scalar::one());
        }
        if part == full {
            break;
        }
        part += 1;
    }
    out
}

/// Linear extension of [`coproduct`].
pub fn coproduct_of(x: &LinearCombination, rule: CoproductRule) -> Tensor {
    x.flat_map(|k| coproduct(k, rule))
}

/// Coefficient of the empty graph.
pub fn counit(x: &LinearCombination) -> Scalar {
    x.coeff(&CanonicalKey::empty())
}

/// The common vertex count of all terms; `None` for zero.
pub fn grading(x: &LinearCombination) -> Result<Option<usize>, BialgebraError> {
    let mut grade = None;
    for k in x.keys() {
        let n = k.vertex_count();
        match grade {
            None => grade = Some(n),
            Some(g) if g != n => return Err(BialgebraError::NotHomogeneous),
            _ => {}
        }
    }
    Ok(grade)
}

/// `Δ(x) - x⊗1 - 1⊗x` for homogeneous `x`.
pub fn reduced_coproduct(x: &LinearCombination, rule: CoproductRule) -> Result<Tensor, BialgebraError> {
    grading(x)?;
    let unit = LinearCombination::basis(CanonicalKey::empty());
    let mut out = coproduct_of(x, rule);
    out.add_scaled(&tensor_product(x, &unit), &-Scalar::one());
    out.add_scaled(&tensor_product(&unit, x), &-Scalar::one());
    Ok(out)
}

/// Primitivity in the free bialgebra (no relations).
pub fn is_primitive(x: &LinearCombination, rule: CoproductRule) -> Result<bool, BialgebraError> {
    Ok(reduced_coproduct(x, rule)?.is_zero())
}

/// A graph bialgebra, possibly divided by homogeneous relations.
///
/// The same code path serves the Joni–Rota algebra (black palette), the
/// colored algebra, its red-only realization modulo the edge relation, and
/// the further quotients by 4-term relations.
#[derive(Clone)]
pub struct BialgebraContext {
    pub palette: Palette,
    pub rule: CoproductRule,
    /// Restricts the basis to graphs whose framing vanishes identically;
    /// these span a sub-bialgebra under both coproducts.
    pub framing_zero_only: bool,
    relations: BTreeMap<usize, BlockSpan<CanonicalKey>>,
}

impl BialgebraContext {
    pub fn new(palette: Palette, rule: CoproductRule) -> BialgebraContext {
        BialgebraContext { palette, rule, framing_zero_only: false, relations: BTreeMap::new() }
    }

    /// Framed graphs with the Joni–Rota coproduct.
    pub fn joni_rota() -> BialgebraContext {
        BialgebraContext::new(Palette::BLACK, CoproductRule::JoniRota)
    }

    /// Red-only basis with the colored coproduct: the colored algebra modulo
    /// the edge relation.
    pub fn red_quotient() -> BialgebraContext {
        BialgebraContext::new(Palette::RED, CoproductRule::Colored)
    }

    pub fn framing_zero(mut self) -> BialgebraContext {
        self.framing_zero_only = true;
        self
    }

    /// Installs the relations of grading `n`.
    pub fn set_relations(&mut self, n: usize, span: BlockSpan<CanonicalKey>) {
        self.relations.insert(n, span);
    }

    pub fn with_relations(mut self, n: usize, span: BlockSpan<CanonicalKey>) -> BialgebraContext {
        self.set_relations(n, span);
        self
    }

    pub fn relations(&self, n: usize) -> Option<&BlockSpan<CanonicalKey>> {
        self.relations.get(&n)
    }

    /// Normal form modulo the relations, grading by grading.
    pub fn normal_form(&self, x: &LinearCombination) -> LinearCombination {
        if self.relations.is_empty() {
            return x.clone();
        }
        let mut pieces: BTreeMap<usize, LinearCombination> = BTreeMap::new();
        for (k, c) in x {
            pieces.entry(k.vertex_count()).or_default().add_term(k.clone(), c.clone());
        }
        let mut out = Combination::zero();
        for (n, piece) in pieces {
            match self.relations.get(&n) {
                Some(rel) => out.add_scaled(&rel.reduce(&piece), &Scalar::one()),
                None => out.add_scaled(&piece, &Scalar::one()),
            }
        }
        out
    }

    /// Leg-wise normal form, i.e. reduction modulo
    /// `relations ⊗ ambient + ambient ⊗ relations`.
    pub fn reduce_tensor(&self, t: &Tensor) -> Tensor {
        if self.relations.is_empty() {
            return t.clone();
        }
        let mut memo: BTreeMap<CanonicalKey, LinearCombination> = BTreeMap::new();
        let mut nf = |k: &CanonicalKey| -> LinearCombination {
            memo.entry(k.clone())
                .or_insert_with(|| self.normal_form(&LinearCombination::basis(k.clone())))
                .clone()
        };
        let mut out = Combination::zero();
        for ((a, b), c) in t {
            let prod = tensor_product(&nf(a), &nf(b));
            out.add_scaled(&prod, c);
        }
        out
    }

    fn check_palette(&self, x: &LinearCombination) -> Result<(), BialgebraError> {
        if x.keys().all(|k| k.to_graph().fits(self.palette)) {
            Ok(())
        } else {
            Err(BialgebraError::OutsidePalette)
        }
    }

    /// Reduced coproduct of the class of `x` in the quotient.
    pub fn reduced_coproduct(&self, x: &LinearCombination) -> Result<Tensor, BialgebraError> {
        self.check_palette(x)?;
        let x = self.normal_form(x);
        Ok(self.reduce_tensor(&reduced_coproduct(&x, self.rule)?))
    }

    pub fn is_primitive(&self, x: &LinearCombination) -> Result<bool, BialgebraError> {
        Ok(self.reduced_coproduct(x)?.is_zero())
    }

    /// Graph classes of grading `n` that are not relation pivots; their
    /// images form a basis of the quotient component.
    pub fn quotient_basis(&self, n: usize) -> Vec<CanonicalKey> {
        let mut classes = enumerate_graphs(n, self.palette, false);
        if self.framing_zero_only {
            classes.retain(|k| k.to_graph().framing_sum() == 0);
        }
        match self.relations.get(&n) {
            Some(rel) => classes.into_iter().filter(|k| !rel.is_pivot(k)).collect(),
            None => classes,
        }
    }

    /// Basis of the primitive subspace of grading `n`: the kernel of the
    /// reduced coproduct on the quotient component.
    pub fn primitive_basis(&self, n: usize) -> Vec<LinearCombination> {
        let basis = self.quotient_basis(n);
        let images: Vec<Tensor> = basis
            .iter()
            .map(|k| {
                let x = LinearCombination::basis(k.clone());
                self.reduce_tensor(&reduced_coproduct(&x, self.rule).expect("basis keys are homogeneous"))
            })
            .collect();
        kernel(&images)
            .into_iter()
            .map(|v| v.map_keys(|&i| basis[i].clone()))
            .collect()
    }

    pub fn primitive_dimension(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        self.primitive_basis(n).len()
    }

    /// Dimension of the quotient component of grading `n`.
    pub fn dimension(&self, n: usize) -> usize {
        self.quotient_basis(n).len()
    }
}

/// Graded dimensions `d_0..=d_max` of the symmetric algebra on a graded
/// space with `primitive[k]` generators in degree `k` (`primitive[0]` is
/// ignored): the coefficients of `Π_k (1 - x^k)^(-p_k)`.
pub fn symmetric_algebra_dims(primitive: &[u64], max: usize) -> Vec<u128> {
    let mut dims = vec![0u128; max + 1];
    dims[0] = 1;
    for (k, &p) in primitive.iter().enumerate().skip(1) {
        if k > max || p == 0 {
            continue;
        }
        // Multiply by Σ_j C(p + j - 1, j) x^{kj}.
        let mut next = vec![0u128; max + 1];
        for (i, &d) in dims.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let mut binom: u128 = 1;
            let mut j: u128 = 0;
            let mut deg = i;
            while deg <= max {
                next[deg] += d * binom;
                binom = binom * (p as u128 + j) / (j + 1);
                j += 1;
                deg += k;
            }
        }
        dims = next;
    }
    dims
}

/// Graph of a single framed vertex.
pub fn vertex_key(framing: u8) -> CanonicalKey {
    canonical_form(&FramedGraph::edgeless(&[framing]).expect("framing is 0 or 1"))
}
