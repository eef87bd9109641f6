//! Isomorphism classes of framed colored graphs on a fixed vertex count.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{CanonicalKey, Canonizer};
use crate::graph::{FramedGraph, Palette};

/// One key per isomorphism class on exactly `n` vertices whose edges use
/// colors from `palette`, over all framings; sorted by key order.
///
/// Classes on `k + 1` vertices are obtained from the classes on `k` vertices
/// by adding one vertex with every framing and every edge pattern towards
/// the existing vertices, since deleting any vertex of a graph yields a
/// class one level down.
pub fn enumerate_graphs(n: usize, palette: Palette, connected_only: bool) -> Vec<CanonicalKey> {
    let mut canon = Canonizer::new();
    let mut level: BTreeSet<CanonicalKey> = BTreeSet::from([CanonicalKey::empty()]);
    for _ in 0..n {
        level = extend_level(&level, palette, &mut canon);
    }
    level
        .into_iter()
        .filter(|k| !connected_only || k.to_graph().is_connected())
        .collect()
}

/// All classes on `0..=n` vertices, indexed by vertex count.
pub fn enumerate_up_to(n: usize, palette: Palette) -> Vec<Vec<CanonicalKey>> {
    let mut canon = Canonizer::new();
    let mut level: BTreeSet<CanonicalKey> = BTreeSet::from([CanonicalKey::empty()]);
    let mut out = vec![level.iter().cloned().collect::<Vec<_>>()];
    for _ in 0..n {
        level = extend_level(&level, palette, &mut canon);
        out.push(level.iter().cloned().collect());
    }
    out
}

fn extend_level(
    level: &BTreeSet<CanonicalKey>,
    palette: Palette,
    canon: &mut Canonizer,
) -> BTreeSet<CanonicalKey> {
    let states = palette.states();
    let base = states.len();
    let mut next = BTreeSet::new();
    for key in level {
        let g = key.to_graph();
        let k = g.n();
        let patterns = base.pow(k as u32);
        for framing in 0..2u8 {
            let grown = g.add_vertex(framing).expect("framing is 0 or 1");
            for mut pattern in 0..patterns {
                let mut h = grown.clone();
                for w in 0..k {
                    h.put(w, k, states[pattern % base]);
                    pattern /= base;
                }
                next.insert(canon.key(&h));
            }
        }
    }
    next
}

/// Every labelled graph on `n` vertices over `palette`, with all framings.
/// Exponential; meant as a test oracle for tiny `n`.
pub fn labelled_graphs(n: usize, palette: Palette) -> Vec<FramedGraph> {
    let states = palette.states();
    let base = states.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    for fmask in 0..(1usize << n) {
        let framing: Vec<u8> = (0..n).map(|v| (fmask >> v & 1) as u8).collect();
        let blank = FramedGraph::edgeless(&framing).expect("valid framing");
        for mut pattern in 0..base.pow(pairs.len() as u32) {
            let mut g = blank.clone();
            for &(u, v) in &pairs {
                g.put(u, v, states[pattern % base]);
                pattern /= base;
            }
            out.push(g);
        }
    }
    out
}
