//! Two 4-invariants on red-only graphs: the framed chromatic polynomial
//! and the 3-coloring invariant W.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::canon::{canonical_form, CanonicalKey};
use crate::combination::LinearCombination;
use crate::graph::{EdgeColor, FramedGraph, RED};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantError {
    /// Red-only invariants were given a graph with a black edge.
    BlackEdge(FramedGraph),
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::BlackEdge(g) => write!(
                f,
                "invariant is defined on red-only graphs; graph on {} vertices has {} black edge(s)",
                g.n(),
                g.count_color(EdgeColor::Black)
            ),
        }
    }
}

impl core::error::Error for InvariantError {}

fn require_red(g: &FramedGraph) -> Result<(), InvariantError> {
    if g.has_color(EdgeColor::Black) {
        Err(InvariantError::BlackEdge(g.clone()))
    } else {
        Ok(())
    }
}

/// Polynomial in the commuting indeterminates `s0`, `s1` with rational
/// coefficients; monomial `s0^i s1^j` is stored under `(i, j)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ChromaticPoly {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl ChromaticPoly {
    pub fn zero() -> ChromaticPoly {
        ChromaticPoly::default()
    }

    pub fn monomial(s0: u32, s1: u32, coeff: Scalar) -> ChromaticPoly {
        let mut p = ChromaticPoly::zero();
        p.add_term((s0, s1), coeff);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Scalar)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, s0: u32, s1: u32) -> Scalar {
        self.terms.get(&(s0, s1)).cloned().unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, mono: (u32, u32), coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_insert_with(Scalar::zero);
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add_scaled(&mut self, other: &ChromaticPoly, factor: &Scalar) {
        for (&m, c) in &other.terms {
            self.add_term(m, c * factor);
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> ChromaticPoly {
        let mut out = ChromaticPoly::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn mul(&self, other: &ChromaticPoly) -> ChromaticPoly {
        let mut out = ChromaticPoly::zero();
        for (&(a0, a1), ca) in &self.terms {
            for (&(b0, b1), cb) in &other.terms {
                out.add_term((a0 + b0, a1 + b1), ca * cb);
            }
        }
        out
    }

    /// Numeric value at `s0`, `s1`.
    pub fn eval(&self, s0: &Scalar, s1: &Scalar) -> Scalar {
        let mut total = Scalar::zero();
        for (&(i, j), c) in &self.terms {
            total += &(c * &s0.pow(i as i32) * s1.pow(j as i32));
        }
        total
    }
}

impl fmt::Display for ChromaticPoly {
    /// Highest monomials first, e.g. `s0^2*s1 - 3/2*s1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut mono = String::new();
            for (name, e) in [("s0", i), ("s1", j)] {
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(name);
                if e > 1 {
                    write!(mono, "^{e}")?;
                }
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => f.write_str(&mono)?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ChromaticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sign convention for contracting a red edge `u - v` with framings `A`,
/// `B` and outer neighbourhoods `x`, `y`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ChromaticSign {
    /// `(-1)^{AB + |x ∩ y|}`. Independent of the contraction order and
    /// vanishes on the 4-term relations.
    #[default]
    Product,
    /// `(-1)^{A + B + |x ∩ y|}`. Depends on the order already on a path
    /// with framings `0, 0, 1`; kept for comparison.
    Sum,
}

/// Contracts the red edge `u - v`. Returns the sign exponent and the
/// smaller graph in which `u` carries framing `A + B + AB` (= `A or B`) and
/// is joined to `x ∪ y`; `v` is removed.
pub fn contract_edge(g: &FramedGraph, u: usize, v: usize, sign: ChromaticSign) -> (usize, FramedGraph) {
    let (a, b) = (g.framing(u), g.framing(v));
    let mut h = g.clone();
    let mut common = 0;
    for w in 0..g.n() {
        if w == u || w == v {
            continue;
        }
        let (xu, yv) = (g.state(u, w) != 0, g.state(v, w) != 0);
        if xu && yv {
            common += 1;
        }
        if xu || yv {
            h.put(u, w, RED);
        }
    }
    h.set_framing(u, a | b).expect("framing is 0 or 1");
    let keep: Vec<usize> = (0..g.n()).filter(|&w| w != v).collect();
    let framing_part = match sign {
        ChromaticSign::Product => (a & b) as usize,
        ChromaticSign::Sum => (a + b) as usize,
    };
    (framing_part + common, h.induced(&keep))
}

fn edgeless_value(g: &FramedGraph) -> ChromaticPoly {
    let ones = g.framing_sum() as u32;
    ChromaticPoly::monomial(g.n() as u32 - ones, ones, Scalar::one())
}

/// Framed chromatic polynomial of a red-only graph: contract red edges one
/// at a time (always the lexicographically first) until none remain.
pub fn framed_chromatic_graph(g: &FramedGraph) -> Result<ChromaticPoly, InvariantError> {
    framed_chromatic_graph_with(g, ChromaticSign::Product)
}

pub fn framed_chromatic_graph_with(g: &FramedGraph, sign: ChromaticSign) -> Result<ChromaticPoly, InvariantError> {
    require_red(g)?;
    let mut g = g.clone();
    let mut exponent = 0usize;
    loop {
        let Some((u, v, _)) = g.edges().next() else { break };
        let (s, h) = contract_edge(&g, u, v, sign);
        exponent += s;
        g = h;
    }
    Ok(edgeless_value(&g).scaled(&Scalar::sign(exponent)))
}

/// Linear extension of [`framed_chromatic_graph`].
pub fn framed_chromatic(x: &LinearCombination) -> Result<ChromaticPoly, InvariantError> {
    framed_chromatic_with(x, ChromaticSign::Product)
}

pub fn framed_chromatic_with(x: &LinearCombination, sign: ChromaticSign) -> Result<ChromaticPoly, InvariantError> {
    let mut out = ChromaticPoly::zero();
    for (k, c) in x {
        out.add_scaled(&framed_chromatic_graph_with(&k.to_graph(), sign)?, c);
    }
    Ok(out)
}

/// Every value reachable by some order of red-edge contractions. A
/// singleton means the result does not depend on the order.
pub fn contraction_values(g: &FramedGraph, sign: ChromaticSign) -> Result<BTreeSet<ChromaticPoly>, InvariantError> {
    require_red(g)?;
    let mut memo = BTreeMap::new();
    Ok(contraction_values_memo(g, sign, &mut memo))
}

fn contraction_values_memo(
    g: &FramedGraph,
    sign: ChromaticSign,
    memo: &mut BTreeMap<CanonicalKey, BTreeSet<ChromaticPoly>>,
) -> BTreeSet<ChromaticPoly> {
    let key = canonical_form(g);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let edges: Vec<_> = g.edges().collect();
    let values = if edges.is_empty() {
        BTreeSet::from([edgeless_value(g)])
    } else {
        let mut values = BTreeSet::new();
        for (u, v, _) in edges {
            // Both orientations: the merged vertex may keep either index.
            for (p, q) in [(u, v), (v, u)] {
                let (s, h) = contract_edge(g, p, q, sign);
                for val in contraction_values_memo(&h, sign, memo) {
                    values.insert(val.scaled(&Scalar::sign(s)));
                }
            }
        }
        values
    };
    memo.insert(key, values.clone());
    values
}

/// Number of proper vertex colorings with `k` colors. Edge colors are
/// ignored apart from the red-only requirement.
pub fn count_proper_colorings(g: &FramedGraph, k: u32) -> Result<u128, InvariantError> {
    require_red(g)?;
    if g.n() <= 10 {
        Ok(brute_force_colorings(g, k))
    } else {
        let adj: Vec<u64> = (0..g.n())
            .map(|v| g.neighbors(v).fold(0u64, |m, w| m | 1 << w))
            .collect();
        Ok(deletion_contraction(adj, k))
    }
}

/// Odometer over all `k^n` assignments, rejecting as soon as an edge is
/// monochromatic.
fn brute_force_colorings(g: &FramedGraph, k: u32) -> u128 {
    let n = g.n();
    if n == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    let mut color = vec![0u32; n];
    let mut count = 0u128;
    loop {
        if edges.iter().all(|&(u, v)| color[u] != color[v]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            color[i] += 1;
            if color[i] < k {
                break;
            }
            color[i] = 0;
            i += 1;
        }
    }
}

/// `P(G) = P(G - e) - P(G / e)` on simple graphs given as adjacency masks.
fn deletion_contraction(adj: Vec<u64>, k: u32) -> u128 {
    let n = adj.len();
    let edge = (0..n).find_map(|u| {
        let higher = adj[u] >> (u + 1);
        (higher != 0).then(|| (u, u + 1 + higher.trailing_zeros() as usize))
    });
    let Some((u, v)) = edge else {
        return (k as u128).pow(n as u32);
    };
    let mut deleted = adj.clone();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);
    // Contract: merge v into u, then drop v and shift higher indices down.
    let mut merged = deleted.clone();
    merged[u] |= merged[v];
    for row in merged.iter_mut() {
        if *row >> v & 1 == 1 {
            *row |= 1 << u;
        }
    }
    merged[u] &= !(1 << u);
    let contracted: Vec<u64> = (0..n)
        .filter(|&w| w != v)
        .map(|w| {
            let m = merged[w] & !(1 << v);
            let low = m & ((1u64 << v) - 1);
            let high = m >> (v + 1);
            low | high << v
        })
        .collect();
    deletion_contraction(deleted, k) - deletion_contraction(contracted, k)
}

/// Base of the Euler-characteristic factor in W.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum WBase {
    /// `(-2)^{-χ}`: the form under which W is a 4-invariant and glues with
    /// factor `-2/3`.
    #[default]
    MinusTwo,
    /// `2^{-χ}`, for comparison.
    Two,
}

/// W of a single red-only graph:
/// `#proper 3-colorings · base^{-χ} · (-1)^{Σ framings}`.
pub fn w_graph(g: &FramedGraph, base: WBase) -> Result<Scalar, InvariantError> {
    let colorings = count_proper_colorings(g, 3)?;
    let b = match base {
        WBase::MinusTwo => Scalar::from_int(-2),
        WBase::Two => Scalar::from_int(2),
    };
    let chi = g.euler_characteristic() as i32;
    let count = Scalar::from(num_rational::BigRational::from_integer(colorings.into()));
    Ok(count * b.pow(-chi) * Scalar::sign(g.framing_sum()))
}

/// Linear extension of W with the default `(-2)` base.
pub fn w_invariant(x: &LinearCombination) -> Result<Scalar, InvariantError> {
    w_invariant_with(x, WBase::MinusTwo)
}

pub fn w_invariant_with(x: &LinearCombination, base: WBase) -> Result<Scalar, InvariantError> {
    let mut total = Scalar::zero();
    for (k, c) in x {
        total += &(c * &w_graph(&k.to_graph(), base)?);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeColor::*;
    use alloc::string::ToString;

    fn red(f: &[u8], e: &[(usize, usize)]) -> FramedGraph {
        let edges: Vec<_> = e.iter().map(|&(u, v)| (u, v, Red)).collect();
        FramedGraph::from_parts(f, &edges).unwrap()
    }

    fn lc(g: &FramedGraph) -> LinearCombination {
        LinearCombination::basis(canonical_form(g))
    }

    #[test]
    fn colorings() {
        assert_eq!(count_proper_colorings(&red(&[0], &[]), 3).unwrap(), 3);
        let tri = FramedGraph::complete(&[0, 0, 0], Red).unwrap();
        assert_eq!(count_proper_colorings(&tri, 3).unwrap(), 6);
        let p3 = FramedGraph::path(&[0, 0, 0], Red).unwrap();
        assert_eq!(count_proper_colorings(&p3, 3).unwrap(), 12);
        let black = FramedGraph::path(&[0, 0], Black).unwrap();
        assert!(count_proper_colorings(&black, 3).is_err());
    }

    #[test]
    fn deletion_contraction_matches_brute_force() {
        let graphs = [
            FramedGraph::cycle(&[0; 5], Red).unwrap(),
            FramedGraph::complete(&[0; 4], Red).unwrap(),
            red(&[0; 6], &[(0, 1), (1, 2), (2, 0), (3, 4), (2, 5), (4, 5)]),
            FramedGraph::empty(),
        ];
        for g in &graphs {
            let adj: Vec<u64> = (0..g.n()).map(|v| g.neighbors(v).fold(0, |m, w| m | 1 << w)).collect();
            for k in 0..5 {
                assert_eq!(deletion_contraction(adj.clone(), k), brute_force_colorings(g, k));
            }
        }
        let big = FramedGraph::cycle(&[0; 12], Red).unwrap();
        // (k-1)^n + (-1)^n (k-1) for cycles.
        assert_eq!(count_proper_colorings(&big, 3).unwrap(), 4096 + 2);
    }

    #[test]
    fn w_small_values() {
        assert_eq!(w_invariant(&lc(&red(&[0], &[]))).unwrap(), Scalar::ratio(-3, 2));
        let k2 = FramedGraph::path(&[0, 0], Red).unwrap();
        assert_eq!(w_invariant(&lc(&k2)).unwrap(), Scalar::from_int(-3));
        let p3 = FramedGraph::path(&[0, 0, 0], Red).unwrap();
        assert_eq!(w_invariant(&lc(&p3)).unwrap(), Scalar::from_int(-6));
        let wk2 = w_invariant(&lc(&k2)).unwrap();
        assert_eq!(w_graph(&p3, WBase::MinusTwo).unwrap(), Scalar::ratio(-2, 3) * &wk2 * &wk2);
        assert_eq!(w_graph(&red(&[0], &[]), WBase::Two).unwrap(), Scalar::ratio(3, 2));
    }

    #[test]
    fn w_on_smallest_relation() {
        let x = &lc(&red(&[0, 1], &[(0, 1)])) + &lc(&red(&[1, 1], &[(0, 1)]));
        assert!(w_invariant(&x).unwrap().is_zero());
        assert!(framed_chromatic(&x).unwrap().is_zero());
    }

    #[test]
    fn chromatic_examples() {
        let v1 = red(&[1], &[]);
        assert_eq!(framed_chromatic_graph(&v1).unwrap().to_string(), "s1");
        assert_eq!(framed_chromatic_graph(&red(&[0], &[])).unwrap().to_string(), "s0");
        let k2 = red(&[0, 1], &[(0, 1)]);
        assert_eq!(framed_chromatic_graph(&k2).unwrap().to_string(), "s1");
        assert_eq!(framed_chromatic_graph_with(&k2, ChromaticSign::Sum).unwrap().to_string(), "-s1");
        let tri = FramedGraph::complete(&[0, 0, 0], Red).unwrap();
        assert_eq!(framed_chromatic_graph(&tri).unwrap().to_string(), "-s0");
        assert_eq!(contraction_values(&tri, ChromaticSign::Product).unwrap().len(), 1);
        let p3 = red(&[0, 0, 1], &[(0, 1), (1, 2)]);
        assert_eq!(contraction_values(&p3, ChromaticSign::Product).unwrap().len(), 1);
        assert_eq!(contraction_values(&p3, ChromaticSign::Sum).unwrap().len(), 2);
        let two = red(&[0, 1, 1], &[]);
        assert_eq!(framed_chromatic_graph(&two).unwrap().to_string(), "s0*s1^2");
    }

    #[test]
    fn chromatic_display_and_eval() {
        let mut p = ChromaticPoly::monomial(2, 1, Scalar::one());
        p.add_scaled(&ChromaticPoly::monomial(0, 1, Scalar::ratio(3, 2)), &-Scalar::one());
        p.add_scaled(&ChromaticPoly::monomial(0, 0, Scalar::one()), &Scalar::one());
        assert_eq!(p.to_string(), "s0^2*s1 - 3/2*s1 + 1");
        assert_eq!(p.eval(&Scalar::from_int(2), &Scalar::from_int(2)), Scalar::from_int(6));
        assert_eq!(ChromaticPoly::zero().to_string(), "0");
    }

    #[test]
    fn black_edges_are_rejected() {
        let g = FramedGraph::path(&[0, 0], Black).unwrap();
        assert!(matches!(framed_chromatic_graph(&g), Err(InvariantError::BlackEdge(_))));
        assert!(w_invariant(&lc(&g)).is_err());
    }
}
