//! Finite simple graphs with an F₂ framing on vertices and a black/red
//! coloring on edges, plus the structural edits the algebra needs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Color of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeColor {
    Black,
    Red,
}

impl EdgeColor {
    pub(crate) const fn state(self) -> u8 {
        match self {
            EdgeColor::Black => BLACK,
            EdgeColor::Red => RED,
        }
    }

    pub(crate) const fn from_state(state: u8) -> Option<EdgeColor> {
        match state {
            BLACK => Some(EdgeColor::Black),
            RED => Some(EdgeColor::Red),
            _ => None,
        }
    }

    /// Single-letter code used by the exchange format.
    pub const fn code(self) -> char {
        match self {
            EdgeColor::Black => 'b',
            EdgeColor::Red => 'r',
        }
    }
}

pub(crate) const NONE: u8 = 0;
pub(crate) const BLACK: u8 = 1;
pub(crate) const RED: u8 = 2;

/// Set of edge colors allowed in a graded basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Palette {
    black: bool,
    red: bool,
}

impl Palette {
    pub const BLACK: Palette = Palette { black: true, red: false };
    pub const RED: Palette = Palette { black: false, red: true };
    pub const BOTH: Palette = Palette { black: true, red: true };
    /// Edgeless graphs only.
    pub const EMPTY: Palette = Palette { black: false, red: false };

    pub const fn contains(self, color: EdgeColor) -> bool {
        match color {
            EdgeColor::Black => self.black,
            EdgeColor::Red => self.red,
        }
    }

    /// Edge states (including "no edge") available under this palette.
    pub(crate) fn states(self) -> Vec<u8> {
        let mut states = vec![NONE];
        if self.black {
            states.push(BLACK);
        }
        if self.red {
            states.push(RED);
        }
        states
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    VertexOutOfRange { vertex: usize, n: usize },
    SelfLoop(usize),
    DuplicateEdge(usize, usize),
    /// Edge endpoints must be listed with the smaller index first.
    UnorderedEdge(usize, usize),
    InvalidFraming { vertex: usize, value: u8 },
    FramingLength { expected: usize, found: usize },
    NotAdjacent(usize, usize),
    /// Vertex identification at vertices of different framing without an
    /// explicit merged framing.
    FramingMismatch { left: u8, right: u8 },
    ColorNotInPalette(EdgeColor),
    RepeatedVertex(usize),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for a graph on {n} vertices")
            }
            GraphError::SelfLoop(v) => write!(f, "self-loop at vertex {v}"),
            GraphError::DuplicateEdge(u, v) => write!(f, "duplicate edge {u}-{v}"),
            GraphError::UnorderedEdge(u, v) => {
                write!(f, "edge [{u}, {v}] must list the smaller endpoint first")
            }
            GraphError::InvalidFraming { vertex, value } => {
                write!(f, "framing of vertex {vertex} is {value}, expected 0 or 1")
            }
            GraphError::FramingLength { expected, found } => {
                write!(f, "expected {expected} framing values, found {found}")
            }
            GraphError::NotAdjacent(u, v) => write!(f, "vertices {u} and {v} are not adjacent"),
            GraphError::FramingMismatch { left, right } => {
                write!(f, "cannot identify vertices of framing {left} and {right}")
            }
            GraphError::ColorNotInPalette(c) => write!(f, "edge color {c:?} not allowed here"),
            GraphError::RepeatedVertex(v) => write!(f, "vertex {v} listed more than once"),
        }
    }
}

impl core::error::Error for GraphError {}

/// A framed simple graph with colored edges.
///
/// Vertices are `0..n`. The adjacency matrix stores one edge state per
/// ordered pair and is kept symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FramedGraph {
    n: usize,
    framing: Vec<u8>,
    adj: Vec<u8>,
}

impl fmt::Debug for FramedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FramedGraph(n={}, framing={:?}, edges=[", self.n, self.framing)?;
        for (i, (u, v, c)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}{}{v}", c.code())?;
        }
        f.write_str("])")
    }
}

impl Default for FramedGraph {
    fn default() -> Self {
        FramedGraph::empty()
    }
}

impl FramedGraph {
    /// The graph on zero vertices (the unit of the algebra).
    pub fn empty() -> FramedGraph {
        FramedGraph { n: 0, framing: Vec::new(), adj: Vec::new() }
    }

    /// Edgeless graph with the given framings.
    pub fn edgeless(framing: &[u8]) -> Result<FramedGraph, GraphError> {
        FramedGraph::from_parts(framing, &[])
    }

    pub fn from_parts(
        framing: &[u8],
        edges: &[(usize, usize, EdgeColor)],
    ) -> Result<FramedGraph, GraphError> {
        let n = framing.len();
        for (vertex, &value) in framing.iter().enumerate() {
            if value > 1 {
                return Err(GraphError::InvalidFraming { vertex, value });
            }
        }
        let mut g = FramedGraph { n, framing: framing.to_vec(), adj: vec![NONE; n * n] };
        for &(u, v, color) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.state(u, v) != NONE {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.put(u, v, color.state());
        }
        Ok(g)
    }

    /// Red path `0 - 1 - ... - (k-1)` with the given framings.
    pub fn path(framing: &[u8], color: EdgeColor) -> Result<FramedGraph, GraphError> {
        let edges: Vec<_> = (1..framing.len()).map(|i| (i - 1, i, color)).collect();
        FramedGraph::from_parts(framing, &edges)
    }

    /// Cycle on `framing.len() >= 3` vertices.
    pub fn cycle(framing: &[u8], color: EdgeColor) -> Result<FramedGraph, GraphError> {
        let k = framing.len();
        let mut edges: Vec<_> = (1..k).map(|i| (i - 1, i, color)).collect();
        if k >= 3 {
            edges.push((0, k - 1, color));
        }
        FramedGraph::from_parts(framing, &edges)
    }

    /// Complete graph.
    pub fn complete(framing: &[u8], color: EdgeColor) -> Result<FramedGraph, GraphError> {
        let k = framing.len();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                edges.push((i, j, color));
            }
        }
        FramedGraph::from_parts(framing, &edges)
    }

    pub(crate) fn from_raw(n: usize, framing: Vec<u8>, adj: Vec<u8>) -> FramedGraph {
        debug_assert_eq!(framing.len(), n);
        debug_assert_eq!(adj.len(), n * n);
        FramedGraph { n, framing, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn framing(&self, v: usize) -> u8 {
        self.framing[v]
    }

    pub fn framings(&self) -> &[u8] {
        &self.framing
    }

    /// Sum of all framings, as an integer.
    pub fn framing_sum(&self) -> usize {
        self.framing.iter().map(|&f| f as usize).sum()
    }

    pub fn set_framing(&mut self, v: usize, value: u8) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        if value > 1 {
            return Err(GraphError::InvalidFraming { vertex: v, value });
        }
        self.framing[v] = value;
        Ok(())
    }

    #[inline]
    pub(crate) fn state(&self, u: usize, v: usize) -> u8 {
        self.adj[u * self.n + v]
    }

    #[inline]
    pub(crate) fn put(&mut self, u: usize, v: usize, state: u8) {
        self.adj[u * self.n + v] = state;
        self.adj[v * self.n + u] = state;
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<EdgeColor> {
        if u >= self.n || v >= self.n {
            return None;
        }
        EdgeColor::from_state(self.state(u, v))
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.edge(u, v).is_some()
    }

    /// Sets, recolors or (with `None`) removes the edge `u - v`.
    pub fn set_edge(
        &mut self,
        u: usize,
        v: usize,
        color: Option<EdgeColor>,
    ) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.put(u, v, color.map_or(NONE, EdgeColor::state));
        Ok(())
    }

    /// Edges as `(u, v, color)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeColor)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter_map(move |v| EdgeColor::from_state(self.state(u, v)).map(|c| (u, v, c)))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&s| s != NONE).count() / 2
    }

    pub fn count_color(&self, color: EdgeColor) -> usize {
        self.adj.iter().filter(|&&s| s == color.state()).count() / 2
    }

    pub fn has_color(&self, color: EdgeColor) -> bool {
        self.adj.iter().any(|&s| s == color.state())
    }

    /// True when every edge color is allowed by `palette`.
    pub fn fits(&self, palette: Palette) -> bool {
        (palette.contains(EdgeColor::Black) || !self.has_color(EdgeColor::Black))
            && (palette.contains(EdgeColor::Red) || !self.has_color(EdgeColor::Red))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.state(v, w) != NONE)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut sets = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = sets.len();
            let mut members = Vec::new();
            comp[start] = id;
            stack.push(start);
            while let Some(v) = stack.pop() {
                members.push(v);
                for (w, c) in comp.iter_mut().enumerate() {
                    if *c == usize::MAX && self.state(v, w) != NONE {
                        *c = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            sets.push(members);
        }
        sets
    }

    pub fn component_count(&self) -> usize {
        self.component_vertex_sets().len()
    }

    /// Exactly one component. The empty graph is not connected.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.component_count() == 1
    }

    pub fn connected_components(&self) -> Vec<FramedGraph> {
        self.component_vertex_sets()
            .iter()
            .map(|set| self.induced(set))
            .collect()
    }

    /// Number of vertices minus number of edges.
    pub fn euler_characteristic(&self) -> i64 {
        self.n as i64 - self.edge_count() as i64
    }

    /// Induced subgraph on `vertices`, relabelled `0..k` in the given order.
    pub fn full_subgraph(&self, vertices: &[usize]) -> Result<FramedGraph, GraphError> {
        let mut seen = vec![false; self.n];
        for &v in vertices {
            self.check_vertex(v)?;
            if seen[v] {
                return Err(GraphError::RepeatedVertex(v));
            }
            seen[v] = true;
        }
        Ok(self.induced(vertices))
    }

    pub(crate) fn induced(&self, vertices: &[usize]) -> FramedGraph {
        let k = vertices.len();
        let framing = vertices.iter().map(|&v| self.framing[v]).collect();
        let mut adj = vec![NONE; k * k];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                adj[i * k + j] = self.state(u, v);
            }
        }
        FramedGraph { n: k, framing, adj }
    }

    /// Induced subgraph on the vertices whose bit is set in `mask`.
    pub(crate) fn induced_mask(&self, mask: u64) -> FramedGraph {
        let vertices: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        self.induced(&vertices)
    }

    /// All `2^|E|` spanning subgraphs (full vertex set, every subset of
    /// edges), ordered by the bitmask over `self.edges()`.
    pub fn spanning_subgraphs(&self) -> SpanningSubgraphs<'_> {
        let edges: Vec<_> = self.edges().collect();
        assert!(edges.len() < 64, "too many edges to enumerate spanning subgraphs");
        SpanningSubgraphs { base: self, total: 1u64 << edges.len(), edges, next: 0 }
    }

    /// Copy of `self` keeping only the edges whose index (in `edges()`
    /// order) has its bit set.
    pub(crate) fn with_edge_subset(&self, edges: &[(usize, usize, EdgeColor)], mask: u64) -> FramedGraph {
        let mut g = FramedGraph { n: self.n, framing: self.framing.clone(), adj: vec![NONE; self.n * self.n] };
        for (i, &(u, v, c)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.put(u, v, c.state());
            }
        }
        g
    }

    /// Same graph with every edge recolored.
    pub fn recolored(&self, color: EdgeColor) -> FramedGraph {
        let mut g = self.clone();
        for s in g.adj.iter_mut() {
            if *s != NONE {
                *s = color.state();
            }
        }
        g
    }

    /// Vertices of `other` are appended after those of `self`.
    pub fn disjoint_union(&self, other: &FramedGraph) -> FramedGraph {
        let n = self.n + other.n;
        let mut framing = self.framing.clone();
        framing.extend_from_slice(&other.framing);
        let mut adj = vec![NONE; n * n];
        for u in 0..self.n {
            for v in 0..self.n {
                adj[u * n + v] = self.state(u, v);
            }
        }
        for u in 0..other.n {
            for v in 0..other.n {
                adj[(self.n + u) * n + self.n + v] = other.state(u, v);
            }
        }
        FramedGraph { n, framing, adj }
    }

    /// Adds a new vertex `n` of framing `framing`, joined to `w` by an edge
    /// of the given color.
    pub fn add_leaf(&self, w: usize, framing: u8, color: EdgeColor) -> Result<FramedGraph, GraphError> {
        self.check_vertex(w)?;
        let mut g = self.add_vertex(framing)?;
        g.put(w, self.n, color.state());
        Ok(g)
    }

    /// Adds an isolated vertex with the given framing; it gets index `n`.
    pub fn add_vertex(&self, framing: u8) -> Result<FramedGraph, GraphError> {
        if framing > 1 {
            return Err(GraphError::InvalidFraming { vertex: self.n, value: framing });
        }
        let n = self.n + 1;
        let mut g = FramedGraph { n, framing: self.framing.clone(), adj: vec![NONE; n * n] };
        g.framing.push(framing);
        for u in 0..self.n {
            for v in 0..self.n {
                g.adj[u * n + v] = self.state(u, v);
            }
        }
        Ok(g)
    }

    /// Identifies vertex `u` of `self` with vertex `v` of `other`. The two
    /// framings must agree; the merged vertex keeps that framing.
    pub fn nabla(&self, u: usize, other: &FramedGraph, v: usize) -> Result<FramedGraph, GraphError> {
        self.check_vertex(u)?;
        other.check_vertex(v)?;
        let (left, right) = (self.framing[u], other.framing[v]);
        if left != right {
            return Err(GraphError::FramingMismatch { left, right });
        }
        self.nabla_with_framing(u, other, v, left)
    }

    /// Vertex identification with an explicit framing for the merged vertex.
    ///
    /// The result lists the vertices of `self` first (the merged vertex keeps
    /// index `u`), then the vertices of `other` except `v`, in order.
    pub fn nabla_with_framing(
        &self,
        u: usize,
        other: &FramedGraph,
        v: usize,
        merged: u8,
    ) -> Result<FramedGraph, GraphError> {
        self.check_vertex(u)?;
        other.check_vertex(v)?;
        if merged > 1 {
            return Err(GraphError::InvalidFraming { vertex: u, value: merged });
        }
        let mut g = self.disjoint_union(other);
        let v_new = self.n + v;
        for w in 0..g.n {
            let s = g.state(v_new, w);
            if s != NONE && w != u {
                g.put(u, w, s);
            }
        }
        g.framing[u] = merged;
        let keep: Vec<usize> = (0..g.n).filter(|&w| w != v_new).collect();
        Ok(g.induced(&keep))
    }

    /// Join of the connected components: every pair of vertices lying in
    /// different components gets a red edge.
    pub fn join_components(&self) -> FramedGraph {
        let sets = self.component_vertex_sets();
        let mut comp = vec![0usize; self.n];
        for (id, set) in sets.iter().enumerate() {
            for &v in set {
                comp[v] = id;
            }
        }
        let mut g = self.clone();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if comp[u] != comp[v] {
                    g.put(u, v, RED);
                }
            }
        }
        g
    }

    /// Applies a relabelling: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> FramedGraph {
        assert_eq!(perm.len(), self.n);
        let n = self.n;
        let mut framing = vec![0; n];
        let mut adj = vec![NONE; n * n];
        for u in 0..n {
            framing[perm[u]] = self.framing[u];
            for v in 0..n {
                adj[perm[u] * n + perm[v]] = self.state(u, v);
            }
        }
        FramedGraph { n, framing, adj }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }
}

/// Iterator returned by [`FramedGraph::spanning_subgraphs`].
pub struct SpanningSubgraphs<'a> {
    base: &'a FramedGraph,
    edges: Vec<(usize, usize, EdgeColor)>,
    next: u64,
    total: u64,
}

impl Iterator for SpanningSubgraphs<'_> {
    type Item = FramedGraph;

    fn next(&mut self) -> Option<FramedGraph> {
        if self.next >= self.total {
            return None;
        }
        let g = self.base.with_edge_subset(&self.edges, self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for SpanningSubgraphs<'_> {}

#[cfg(test)]
mod tests {
    use super::*;
    use EdgeColor::*;

    fn red_path(f: &[u8]) -> FramedGraph {
        FramedGraph::path(f, Red).unwrap()
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(
            FramedGraph::from_parts(&[0, 0], &[(0, 0, Red)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            FramedGraph::from_parts(&[0, 0], &[(0, 1, Red), (1, 0, Black)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            FramedGraph::from_parts(&[0, 2], &[]),
            Err(GraphError::InvalidFraming { vertex: 1, value: 2 })
        );
        assert!(matches!(
            FramedGraph::from_parts(&[0], &[(0, 3, Red)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 1 })
        ));
    }

    #[test]
    fn euler_characteristic_and_components() {
        let v = FramedGraph::edgeless(&[0]).unwrap();
        assert_eq!(v.euler_characteristic(), 1);
        assert_eq!(v.connected_components().len(), 1);

        let triangle = FramedGraph::complete(&[0, 0, 0], Red).unwrap();
        assert_eq!(triangle.connected_components().len(), 1);
        assert_eq!(triangle.euler_characteristic(), 0);

        let k2_v = red_path(&[0, 1]).disjoint_union(&v);
        assert_eq!(k2_v.connected_components().len(), 2);
        assert_eq!(k2_v.euler_characteristic(), 2);
        assert!(!FramedGraph::empty().is_connected());
    }

    #[test]
    fn full_subgraph_cases() {
        let p = red_path(&[1, 0, 1]);
        assert_eq!(p.full_subgraph(&[0, 1, 2]).unwrap(), p);
        assert_eq!(p.full_subgraph(&[]).unwrap(), FramedGraph::empty());
        let ends = p.full_subgraph(&[0, 2]).unwrap();
        assert_eq!(ends, FramedGraph::edgeless(&[1, 1]).unwrap());
        assert!(p.full_subgraph(&[0, 5]).is_err());
        assert_eq!(p.full_subgraph(&[1, 1]), Err(GraphError::RepeatedVertex(1)));
    }

    #[test]
    fn spanning_subgraph_counts() {
        let edgeless = FramedGraph::edgeless(&[0, 1, 1]).unwrap();
        let all: Vec<_> = edgeless.spanning_subgraphs().collect();
        assert_eq!(all, vec![edgeless.clone()]);

        assert_eq!(red_path(&[0, 0]).spanning_subgraphs().count(), 2);

        let triangle = FramedGraph::complete(&[0, 0, 0], Red).unwrap();
        let subs: Vec<_> = triangle.spanning_subgraphs().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|g| g.n() == 3));
        assert_eq!(subs.iter().filter(|g| g.is_connected()).count(), 4);
    }

    #[test]
    fn edits() {
        let g = red_path(&[0, 1, 0]);
        assert_eq!(FramedGraph::empty().disjoint_union(&g), g);

        let v1 = FramedGraph::edgeless(&[1]).unwrap();
        let leafed = v1.add_leaf(0, 0, Red).unwrap();
        assert_eq!(leafed, FramedGraph::from_parts(&[1, 0], &[(0, 1, Red)]).unwrap());

        let k2 = red_path(&[0, 0]);
        let glued = k2.nabla(1, &k2, 0).unwrap();
        assert_eq!(glued, red_path(&[0, 0, 0]));
        assert_eq!(glued.n(), 3);

        let mixed = red_path(&[0, 1]);
        assert_eq!(
            k2.nabla(0, &mixed, 1),
            Err(GraphError::FramingMismatch { left: 0, right: 1 })
        );
        assert_eq!(k2.nabla_with_framing(0, &mixed, 1, 1).unwrap().framings(), &[1, 0, 0]);

        let two = k2.disjoint_union(&FramedGraph::edgeless(&[1]).unwrap());
        let joined = two.join_components();
        assert_eq!(joined.edge_count(), 3);
        assert!(joined.is_connected());
        assert!(g.add_leaf(7, 0, Red).is_err());
    }

    #[test]
    fn permutation_moves_framing_and_edges() {
        let g = FramedGraph::from_parts(&[1, 0, 0], &[(0, 1, Black), (1, 2, Red)]).unwrap();
        let h = g.permuted(&[2, 0, 1]);
        assert_eq!(h.framings(), &[0, 0, 1]);
        assert_eq!(h.edge(2, 0), Some(Black));
        assert_eq!(h.edge(0, 1), Some(Red));
    }
}
