//! Canonical labelling of framed colored graphs.
//!
//! Color refinement seeded by the framing, followed by individualization
//! over the first non-trivial cell. Interchangeable twin vertices are
//! individualized once. The key is the lexicographically smallest encoding
//! over all leaves of the search tree.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

use crate::graph::{FramedGraph, NONE};

/// Order-independent identity of a framed colored graph up to isomorphism.
///
/// Byte layout: vertex count, framing bits (MSB first, padded to bytes),
/// then the upper-triangle edge states (2 bits each, MSB first, row-major)
/// in canonical vertex order. Keys compare lexicographically, so graphs are
/// ordered by vertex count first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Box<[u8]>);

impl CanonicalKey {
    /// Key of the empty graph.
    pub fn empty() -> CanonicalKey {
        CanonicalKey(Box::new([0]))
    }

    pub fn vertex_count(&self) -> usize {
        self.0[0] as usize
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Rebuilds the canonical representative.
    pub fn to_graph(&self) -> FramedGraph {
        let n = self.vertex_count();
        let framing_bytes = n.div_ceil(8);
        let framing: Vec<u8> = (0..n)
            .map(|i| (self.0[1 + i / 8] >> (7 - i % 8)) & 1)
            .collect();
        let mut adj = vec![NONE; n * n];
        let base = 1 + framing_bytes;
        let mut idx = 0;
        for u in 0..n {
            for v in u + 1..n {
                let s = (self.0[base + idx / 4] >> (6 - 2 * (idx % 4))) & 3;
                adj[u * n + v] = s;
                adj[v * n + u] = s;
                idx += 1;
            }
        }
        FramedGraph::from_raw(n, framing, adj)
    }

    fn pack(n: usize, code: &[u8]) -> CanonicalKey {
        assert!(n < 256, "graphs on more than 255 vertices are not supported");
        let framing_bytes = n.div_ceil(8);
        let pairs = code.len() - n;
        let mut bytes = vec![0u8; 1 + framing_bytes + pairs.div_ceil(4)];
        bytes[0] = n as u8;
        for (i, &f) in code[..n].iter().enumerate() {
            bytes[1 + i / 8] |= f << (7 - i % 8);
        }
        let base = 1 + framing_bytes;
        for (idx, &s) in code[n..].iter().enumerate() {
            bytes[base + idx / 4] |= s << (6 - 2 * (idx % 4));
        }
        CanonicalKey(bytes.into_boxed_slice())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Key(")?;
        for b in self.0.iter() {
            write!(f, "{b:02x}")?;
        }
        f.write_str(")")
    }
}

/// Canonical key of `g`.
pub fn canonical_form(g: &FramedGraph) -> CanonicalKey {
    canonical_labeling(g).0
}

/// Canonical key together with the labelling that produces it:
/// `labeling[v]` is the canonical position of vertex `v`.
pub fn canonical_labeling(g: &FramedGraph) -> (CanonicalKey, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (CanonicalKey::empty(), Vec::new());
    }
    let mut search = Search { g, best: None, scratch: Vec::new() };
    let mut colors: Vec<u32> = g.framings().iter().map(|&f| f as u32).collect();
    refine(g, &mut colors);
    search.descend(colors);
    let (code, labeling) = search.best.expect("search visits at least one leaf");
    (CanonicalKey::pack(n, &code), labeling)
}

struct Search<'a> {
    g: &'a FramedGraph,
    best: Option<(Vec<u8>, Vec<usize>)>,
    scratch: Vec<u8>,
}

impl Search<'_> {
    fn descend(&mut self, colors: Vec<u32>) {
        let n = self.g.n();
        let mut counts = vec![0u32; n];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
            self.leaf(&colors);
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
        let mut tried: Vec<usize> = Vec::with_capacity(cell.len());
        for &v in &cell {
            if tried.iter().any(|&t| twins(self.g, t, v)) {
                continue;
            }
            tried.push(v);
            let mut next: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| 2 * c + u32::from(c as usize == target && w != v))
                .collect();
            refine(self.g, &mut next);
            self.descend(next);
        }
    }

    fn leaf(&mut self, labeling: &[u32]) {
        let g = self.g;
        let n = g.n();
        let mut inverse = vec![0usize; n];
        for (v, &pos) in labeling.iter().enumerate() {
            inverse[pos as usize] = v;
        }
        let code = &mut self.scratch;
        code.clear();
        code.extend(inverse.iter().map(|&v| g.framing(v)));
        for i in 0..n {
            for j in i + 1..n {
                code.push(g.state(inverse[i], inverse[j]));
            }
        }
        let better = match &self.best {
            None => true,
            Some((best, _)) => code.as_slice() < best.as_slice(),
        };
        if better {
            let labeling = labeling.iter().map(|&p| p as usize).collect();
            self.best = Some((code.clone(), labeling));
        }
    }
}

/// Swapping `a` and `b` is an automorphism (same framing, same edge state
/// towards every other vertex).
fn twins(g: &FramedGraph, a: usize, b: usize) -> bool {
    g.framing(a) == g.framing(b)
        && (0..g.n()).all(|w| w == a || w == b || g.state(a, w) == g.state(b, w))
}

/// Refines `colors` to a stable ordered partition. Colors are ranks of the
/// signature (old color, sorted multiset of (edge state, neighbor color)),
/// so the result only depends on isomorphism-invariant data.
/// (old color, neighborhood multiset, vertex).
type Signature = (u32, Vec<(u8, u32)>, usize);

fn refine(g: &FramedGraph, colors: &mut [u32]) {
    let n = g.n();
    let mut distinct = rank_in_place(colors);
    let mut sigs: Vec<Signature> = Vec::with_capacity(n);
    loop {
        sigs.clear();
        for v in 0..n {
            let mut nb: Vec<(u8, u32)> = (0..n)
                .filter_map(|w| {
                    let s = g.state(v, w);
                    (s != NONE).then(|| (s, colors[w]))
                })
                .collect();
            nb.sort_unstable();
            sigs.push((colors[v], nb, v));
        }
        sigs.sort_unstable();
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                rank += 1;
            }
            colors[sigs[i].2] = rank;
        }
        let now = rank as usize + 1;
        if now == distinct {
            return;
        }
        distinct = now;
    }
}

/// Replaces values by their dense rank; returns the number of distinct values.
fn rank_in_place(colors: &mut [u32]) -> usize {
    let mut values: Vec<u32> = colors.to_vec();
    values.sort_unstable();
    values.dedup();
    for c in colors.iter_mut() {
        *c = values.binary_search(c).unwrap() as u32;
    }
    values.len()
}

/// Memoizing front end to [`canonical_form`] for hot loops. Graphs up to 11
/// vertices are cached by their labelled encoding.
#[derive(Default)]
pub struct Canonizer {
    cache: HashMap<u128, CanonicalKey>,
}

impl Canonizer {
    pub fn new() -> Canonizer {
        Canonizer::default()
    }

    pub fn key(&mut self, g: &FramedGraph) -> CanonicalKey {
        match labelled_code(g) {
            Some(code) => self.cache.entry(code).or_insert_with(|| canonical_form(g)).clone(),
            None => canonical_form(g),
        }
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }
}

fn labelled_code(g: &FramedGraph) -> Option<u128> {
    let n = g.n();
    if n > 11 {
        return None;
    }
    let mut code: u128 = n as u128;
    for &f in g.framings() {
        code = code << 1 | f as u128;
    }
    for u in 0..n {
        for v in u + 1..n {
            code = code << 2 | g.state(u, v) as u128;
        }
    }
    Some(code)
}
