//! Maps between the Joni–Rota algebra (all-black graphs) and the colored
//! algebra modulo the edge relation `red - black + deleted`.
//!
//! Modulo that relation a black edge equals the sum of the same edge red
//! and the edge deleted, so the red-only graphs form a basis of the
//! quotient; [`red_normal_form`] computes coordinates in it. [`psi`] goes
//! back: each red edge becomes black or is deleted with a sign.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{canonical_form, CanonicalKey};
use crate::combination::{Combination, LinearCombination};
use crate::enumerate::enumerate_graphs;
use crate::graph::{EdgeColor, FramedGraph, Palette};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionError {
    /// Input was required to be all-black.
    RedEdge(CanonicalKey),
    /// Input was required to be red-only.
    BlackEdge(CanonicalKey),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::RedEdge(_) => f.write_str("expected all-black graphs, found a red edge"),
            ReductionError::BlackEdge(_) => f.write_str("expected red-only graphs, found a black edge"),
        }
    }
}

impl core::error::Error for ReductionError {}

pub(crate) fn require_black(x: &LinearCombination) -> Result<(), ReductionError> {
    match x.keys().find(|k| k.to_graph().has_color(EdgeColor::Red)) {
        Some(k) => Err(ReductionError::RedEdge(k.clone())),
        None => Ok(()),
    }
}

pub(crate) fn require_red(x: &LinearCombination) -> Result<(), ReductionError> {
    match x.keys().find(|k| k.to_graph().has_color(EdgeColor::Black)) {
        Some(k) => Err(ReductionError::BlackEdge(k.clone())),
        None => Ok(()),
    }
}

/// Inclusion of framed graphs as all-black colored graphs. The keys are
/// unchanged; the call only checks the support.
pub fn iota(x: &LinearCombination) -> Result<LinearCombination, ReductionError> {
    require_black(x)?;
    Ok(x.clone())
}

/// `ψ(Γ) = Σ_p (-1)^{#deleted} Γ_p` over the 2^k states of the red edges:
/// every red edge is either painted black or deleted.
pub fn psi(x: &LinearCombination) -> LinearCombination {
    x.flat_map(psi_key)
}

pub fn psi_key(key: &CanonicalKey) -> LinearCombination {
    let g = key.to_graph();
    let red: Vec<(usize, usize)> = g
        .edges()
        .filter(|e| e.2 == EdgeColor::Red)
        .map(|(u, v, _)| (u, v))
        .collect();
    let mut out = Combination::zero();
    for mask in 0u64..(1 << red.len()) {
        let mut h = g.clone();
        for (i, &(u, v)) in red.iter().enumerate() {
            let state = (mask >> i & 1 == 0).then_some(EdgeColor::Black);
            h.set_edge(u, v, state).expect("edge endpoints are in range");
        }
        out.add_term(canonical_form(&h), Scalar::sign(mask.count_ones() as usize));
    }
    out
}

/// Coordinates in the red-only basis: every black edge is replaced by
/// (edge red) + (edge deleted), i.e. a sum over subsets of the black edges.
pub fn red_normal_form(x: &LinearCombination) -> LinearCombination {
    x.flat_map(red_normal_form_key)
}

pub fn red_normal_form_key(key: &CanonicalKey) -> LinearCombination {
    red_normal_form_graph(&key.to_graph())
}

pub fn red_normal_form_graph(g: &FramedGraph) -> LinearCombination {
    let black: Vec<(usize, usize)> = g
        .edges()
        .filter(|e| e.2 == EdgeColor::Black)
        .map(|(u, v, _)| (u, v))
        .collect();
    let mut out = Combination::zero();
    for mask in 0u64..(1 << black.len()) {
        let mut h = g.clone();
        for (i, &(u, v)) in black.iter().enumerate() {
            let state = (mask >> i & 1 == 1).then_some(EdgeColor::Red);
            h.set_edge(u, v, state).expect("edge endpoints are in range");
        }
        out.add_term(canonical_form(&h), Scalar::one());
    }
    out
}

/// Keeps connected red graphs and kills disconnected ones.
pub fn pi_c(x: &LinearCombination) -> Result<LinearCombination, ReductionError> {
    require_red(x)?;
    Ok(x.filtered(|k| k.to_graph().is_connected()))
}

/// Projection onto primitives by the explicit double sum
/// `Σ_{Γ'' ⊆ Γ'} (-1)^{e(Γ') - e(Γ'')} Γ''`, where `Γ'` runs over connected
/// spanning subgraphs of `Γ` and `Γ''` over spanning subgraphs of `Γ'`.
pub fn pi_jr_formula(x: &LinearCombination) -> Result<LinearCombination, ReductionError> {
    require_black(x)?;
    Ok(x.flat_map(|k| {
        let g = k.to_graph();
        let edges: Vec<_> = g.edges().collect();
        let mut out = Combination::zero();
        for outer in 0u64..(1 << edges.len()) {
            if !g.with_edge_subset(&edges, outer).is_connected() {
                continue;
            }
            // Subsets of `outer`, by the standard submask walk.
            let mut inner = outer;
            loop {
                let sign = Scalar::sign((outer.count_ones() - inner.count_ones()) as usize);
                out.add_term(canonical_form(&g.with_edge_subset(&edges, inner)), sign);
                if inner == 0 {
                    break;
                }
                inner = (inner - 1) & outer;
            }
        }
        out
    }))
}

/// The same projection as the composition `ψ ∘ π_C ∘ red_normal_form ∘ ι`.
pub fn pi_jr_composed(x: &LinearCombination) -> Result<LinearCombination, ReductionError> {
    let red = red_normal_form(&iota(x)?);
    Ok(psi(&pi_c(&red)?))
}

/// Generator of the edge relation: three graphs that agree everywhere except
/// on the pair `(u, v)`, which is red, black, or absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IcGenerator {
    pub base: FramedGraph,
    pub u: usize,
    pub v: usize,
}

impl IcGenerator {
    pub fn variant(&self, state: Option<EdgeColor>) -> FramedGraph {
        let mut g = self.base.clone();
        g.set_edge(self.u, self.v, state).expect("generator vertices are in range");
        g
    }

    /// `(red) - (black) + (none)`.
    pub fn element(&self) -> LinearCombination {
        let mut out = LinearCombination::zero();
        out.add_term(canonical_form(&self.variant(Some(EdgeColor::Red))), Scalar::one());
        out.add_term(canonical_form(&self.variant(Some(EdgeColor::Black))), -Scalar::one());
        out.add_term(canonical_form(&self.variant(None)), Scalar::one());
        out
    }
}

/// All edge-relation generators on `n` vertices, one per distinct element.
pub fn enumerate_ic_generators(n: usize) -> Vec<IcGenerator> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for key in enumerate_graphs(n, Palette::BOTH, false) {
        let base = key.to_graph();
        for u in 0..n {
            for v in u + 1..n {
                let generator = IcGenerator { base: base.clone(), u, v };
                if seen.insert(generator.element()) {
                    out.push(generator);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::{is_primitive, CoproductRule};
    use crate::graph::EdgeColor::*;

    fn lc(g: &FramedGraph) -> LinearCombination {
        LinearCombination::basis(canonical_form(g))
    }

    fn edgeless(f: &[u8]) -> FramedGraph {
        FramedGraph::edgeless(f).unwrap()
    }

    #[test]
    fn iota_checks_support() {
        let e = lc(&FramedGraph::empty());
        assert_eq!(iota(&e).unwrap(), e);
        let k2 = lc(&FramedGraph::path(&[0, 0], Black).unwrap());
        assert_eq!(iota(&k2).unwrap(), k2);
        assert!(iota(&lc(&FramedGraph::path(&[0, 0], Red).unwrap())).is_err());
    }

    #[test]
    fn psi_examples() {
        let black = lc(&FramedGraph::path(&[0, 1, 0], Black).unwrap());
        assert_eq!(psi(&black), black);

        let red_k2 = lc(&FramedGraph::path(&[0, 0], Red).unwrap());
        let expected = &lc(&FramedGraph::path(&[0, 0], Black).unwrap()) - &lc(&edgeless(&[0, 0]));
        assert_eq!(psi(&red_k2), expected);

        let red_p3 = lc(&FramedGraph::path(&[0, 0, 0], Red).unwrap());
        let k2_v = FramedGraph::path(&[0, 0], Black).unwrap().disjoint_union(&edgeless(&[0]));
        let mut expected = lc(&FramedGraph::path(&[0, 0, 0], Black).unwrap());
        expected.add_scaled(&lc(&k2_v), &Scalar::from_int(-2));
        expected.add_scaled(&lc(&edgeless(&[0, 0, 0])), &Scalar::one());
        assert_eq!(psi(&red_p3), expected);
    }

    #[test]
    fn red_normal_form_examples() {
        let red = lc(&FramedGraph::cycle(&[0, 1, 1], Red).unwrap());
        assert_eq!(red_normal_form(&red), red);
        let black = lc(&FramedGraph::path(&[0, 0], Black).unwrap());
        let expected = &lc(&FramedGraph::path(&[0, 0], Red).unwrap()) + &lc(&edgeless(&[0, 0]));
        assert_eq!(red_normal_form(&black), expected);
    }

    #[test]
    fn pi_c_examples() {
        let tri = lc(&FramedGraph::complete(&[0, 1, 0], Red).unwrap());
        assert_eq!(pi_c(&tri).unwrap(), tri);
        let split = lc(&FramedGraph::path(&[0, 0], Red).unwrap().disjoint_union(&edgeless(&[1])));
        assert!(pi_c(&split).unwrap().is_zero());
        assert_eq!(pi_c(&(&tri + &split)).unwrap(), tri);
        assert!(pi_c(&lc(&FramedGraph::path(&[0, 0], Black).unwrap())).is_err());
    }

    #[test]
    fn pi_jr_small_cases() {
        let v = lc(&edgeless(&[1]));
        assert_eq!(pi_jr_formula(&v).unwrap(), v);

        let k2 = lc(&FramedGraph::path(&[0, 0], Black).unwrap());
        let expected = &k2 - &lc(&edgeless(&[0, 0]));
        assert_eq!(pi_jr_formula(&k2).unwrap(), expected);
        assert!(is_primitive(&expected, CoproductRule::JoniRota).unwrap());

        let p3 = lc(&FramedGraph::path(&[0, 0, 0], Black).unwrap());
        let k2_v = FramedGraph::path(&[0, 0], Black).unwrap().disjoint_union(&edgeless(&[0]));
        let mut expected = p3.clone();
        expected.add_scaled(&lc(&k2_v), &Scalar::from_int(-2));
        expected.add_scaled(&lc(&edgeless(&[0, 0, 0])), &Scalar::one());
        let got = pi_jr_formula(&p3).unwrap();
        assert_eq!(got, expected);
        assert_eq!(pi_jr_composed(&p3).unwrap(), expected);
        assert!(is_primitive(&got, CoproductRule::JoniRota).unwrap());
    }

    #[test]
    fn ic_generators_are_three_term() {
        let gens = enumerate_ic_generators(2);
        assert!(!gens.is_empty());
        for g in &gens {
            assert_eq!(g.element().len(), 3);
            assert!(psi(&g.element()).is_zero());
        }
    }
}
