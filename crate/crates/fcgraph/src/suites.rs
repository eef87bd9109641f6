//! Batch verification suites with JSON reports.
//!
//! Every check either passes or names the first offending graph or
//! combination in the exchange format, so failures can be replayed with the
//! other commands. Parallel checks scan items in a fixed order and report the
//! first failure by position, so reports do not depend on the worker count.

use std::collections::BTreeSet;
use std::time::Instant;

use clap::ValueEnum;
use fcgraph_core::bialgebra::{coproduct, is_primitive, product, product_keys, swap_legs, CoproductRule};
use fcgraph_core::enumerate::enumerate_up_to;
use fcgraph_core::fourterm::{path_tree, tree_action, FourTermWorkspace, GeneratorFilter, RelationSource};
use fcgraph_core::invariants::{
    contraction_values, framed_chromatic, framed_chromatic_graph, w_graph, w_invariant, ChromaticSign, WBase,
};
use fcgraph_core::reduction::{enumerate_ic_generators, iota, pi_jr_composed, pi_jr_formula, psi, red_normal_form};
use fcgraph_core::span::SpanBasis;
use fcgraph_core::{bialgebra, CanonicalKey, Combination, EdgeColor, FramedGraph, LinearCombination, Palette, Scalar, Tensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::json::{combination_value, graph_value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Suite {
    PsiIota,
    IcAnnihilation,
    Projection,
    FourtermSpans,
    LeafIdentity,
    Forest,
    Coassoc,
    VanishingW,
    VanishingChrom,
    MilnorMoore,
    DirectSum,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::PsiIota,
        Suite::IcAnnihilation,
        Suite::Projection,
        Suite::FourtermSpans,
        Suite::LeafIdentity,
        Suite::Forest,
        Suite::Coassoc,
        Suite::VanishingW,
        Suite::VanishingChrom,
        Suite::MilnorMoore,
        Suite::DirectSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PsiIota => "psi-iota",
            Suite::IcAnnihilation => "ic-annihilation",
            Suite::Projection => "projection",
            Suite::FourtermSpans => "fourterm-spans",
            Suite::LeafIdentity => "leaf-identity",
            Suite::Forest => "forest",
            Suite::Coassoc => "coassoc",
            Suite::VanishingW => "vanishing-w",
            Suite::VanishingChrom => "vanishing-chrom",
            Suite::MilnorMoore => "milnor-moore",
            Suite::DirectSum => "direct-sum",
        }
    }

    pub fn default_max_n(self) -> usize {
        match self {
            Suite::PsiIota | Suite::VanishingW | Suite::VanishingChrom | Suite::MilnorMoore => 5,
            Suite::Forest => 6,
            _ => 4,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Number of sampled pairs in the randomized checks.
    pub samples: usize,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(max_n: usize) -> RunConfig {
        RunConfig { max_n, seed: 0, samples: 128, timings: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of items examined.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub max_n: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

struct Outcome {
    checked: usize,
    detail: Option<String>,
    failure: Option<Value>,
}

impl Outcome {
    fn from_scan(checked: usize, failure: Option<Value>) -> Outcome {
        Outcome { checked, detail: None, failure }
    }

    fn with_detail(mut self, detail: String) -> Outcome {
        self.detail = Some(detail);
        self
    }
}

struct Runner {
    timings: bool,
    checks: Vec<CheckReport>,
}

impl Runner {
    fn check(&mut self, name: &str, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = f();
        self.checks.push(CheckReport {
            name: name.to_string(),
            passed: outcome.failure.is_none(),
            checked: outcome.checked,
            detail: outcome.detail,
            elapsed_ms: self.timings.then(|| start.elapsed().as_millis()),
            counterexample: outcome.failure,
        });
    }
}

/// Runs `test` on every item and returns the failure of the earliest
/// failing item.
fn scan<T: Sync>(items: &[T], test: impl Fn(&T) -> Option<Value> + Sync + Send) -> Outcome {
    Outcome::from_scan(items.len(), items.par_iter().find_map_first(test))
}

fn key_value(k: &CanonicalKey) -> Value {
    graph_value(&k.to_graph())
}

fn classes_up_to(max_n: usize, palette: Palette, min_n: usize) -> Vec<CanonicalKey> {
    enumerate_up_to(max_n, palette).into_iter().skip(min_n).flatten().collect()
}

fn basis(k: &CanonicalKey) -> LinearCombination {
    LinearCombination::basis(k.clone())
}

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> SuiteReport {
    let mut runner = Runner { timings: cfg.timings, checks: Vec::new() };
    let mut ws = FourTermWorkspace::default();
    let n = cfg.max_n;
    match suite {
        Suite::PsiIota => {
            psi_iota(&mut runner, n);
            ic_annihilation(&mut runner, n.min(4));
        }
        Suite::IcAnnihilation => ic_annihilation(&mut runner, n),
        Suite::Projection => projection(&mut runner, cfg),
        Suite::FourtermSpans => fourterm_spans(&mut runner, &mut ws, n),
        Suite::LeafIdentity => runner.check("leaf-identity", || match ws.leaf_identity_check(n) {
            Ok(count) => Outcome::from_scan(count, None),
            Err(f) => Outcome::from_scan(0, Some(json!({"graph": key_value(&f.graph), "u": f.u, "v": f.v}))),
        }),
        Suite::Forest => forest(&mut runner, &mut ws, n),
        Suite::Coassoc => coassoc(&mut runner, cfg),
        Suite::VanishingW => vanishing_w(&mut runner, &mut ws, n),
        Suite::VanishingChrom => vanishing_chrom(&mut runner, &mut ws, n),
        Suite::MilnorMoore => milnor_moore(&mut runner, &mut ws, n),
        Suite::DirectSum => direct_sum(&mut runner, &mut ws, n),
    }
    let passed = runner.checks.iter().all(|c| c.passed);
    SuiteReport { suite: suite.name(), max_n: n, seed: cfg.seed, passed, checks: runner.checks }
}

fn psi_iota(r: &mut Runner, n: usize) {
    r.check("red-basis-dimension", || {
        let red = enumerate_up_to(n, Palette::RED);
        let black = enumerate_up_to(n, Palette::BLACK);
        let counts: Vec<usize> = red.iter().map(Vec::len).collect();
        let failure = (0..=n)
            .find(|&k| red[k].len() != black[k].len())
            .map(|k| json!({"n": k, "red": red[k].len(), "framed": black[k].len()}));
        Outcome::from_scan(n + 1, failure).with_detail(format!("classes {counts:?}"))
    });
    r.check("psi-inverts-iota", || {
        let keys = classes_up_to(n, Palette::BLACK, 0);
        scan(&keys, |k| {
            let x = basis(k);
            let y = iota(&x).expect("black classes");
            (psi(&y) != x || psi(&red_normal_form(&y)) != x).then(|| json!({"graph": key_value(k)}))
        })
    });
    r.check("red-normal-form-inverts-psi", || {
        let keys = classes_up_to(n, Palette::RED, 0);
        scan(&keys, |k| {
            let x = basis(k);
            (red_normal_form(&psi(&x)) != x).then(|| json!({"graph": key_value(k)}))
        })
    });
}

fn ic_annihilation(r: &mut Runner, n: usize) {
    r.check("psi-annihilates-edge-relation", || {
        let gens: Vec<_> = (2..=n).flat_map(enumerate_ic_generators).collect();
        scan(&gens, |g| {
            (!psi(&g.element()).is_zero())
                .then(|| json!({"graph": graph_value(&g.base), "u": g.u, "v": g.v}))
        })
    });
}

/// A random homogeneous combination of up to three classes.
fn sample_combination(rng: &mut ChaCha8Rng, classes: &[CanonicalKey]) -> LinearCombination {
    let mut x = LinearCombination::zero();
    for _ in 0..rng.random_range(1..=3) {
        let k = &classes[rng.random_range(0..classes.len())];
        let c = rng.random_range(1..=3) * if rng.random_bool(0.5) { 1 } else { -1 };
        x.add_term(k.clone(), Scalar::from_int(c));
    }
    x
}

/// Seeded pairs `(x, y)` of positive gradings with total at most `n`.
fn sample_pairs(cfg: &RunConfig, palette: Palette) -> Vec<(LinearCombination, LinearCombination)> {
    if cfg.max_n < 2 {
        return Vec::new();
    }
    let by_grading = enumerate_up_to(cfg.max_n - 1, palette);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.samples)
        .map(|_| {
            let a = rng.random_range(1..cfg.max_n);
            let b = rng.random_range(1..=cfg.max_n - a);
            (sample_combination(&mut rng, &by_grading[a]), sample_combination(&mut rng, &by_grading[b]))
        })
        .collect()
}

fn projection(r: &mut Runner, cfg: &RunConfig) {
    let keys = classes_up_to(cfg.max_n, Palette::BLACK, 0);
    r.check("formula-equals-composition", || {
        scan(&keys, |k| {
            let x = basis(k);
            (pi_jr_formula(&x).unwrap() != pi_jr_composed(&x).unwrap()).then(|| json!({"graph": key_value(k)}))
        })
    });
    r.check("idempotent", || {
        scan(&keys, |k| {
            let p = pi_jr_formula(&basis(k)).unwrap();
            (pi_jr_formula(&p).unwrap() != p).then(|| json!({"graph": key_value(k)}))
        })
    });
    r.check("image-primitive", || {
        let positive: Vec<_> = keys.iter().filter(|k| k.vertex_count() > 0).cloned().collect();
        scan(&positive, |k| {
            let p = pi_jr_formula(&basis(k)).unwrap();
            (!is_primitive(&p, CoproductRule::JoniRota).unwrap())
                .then(|| json!({"graph": key_value(k), "image": combination_value(&p)}))
        })
    });
    r.check("kills-products", || {
        let pairs = sample_pairs(cfg, Palette::BLACK);
        scan(&pairs, |(x, y)| {
            let p = pi_jr_formula(&product(x, y)).unwrap();
            (!p.is_zero()).then(|| json!({"x": combination_value(x), "y": combination_value(y)}))
        })
        .with_detail(format!("{} seeded pairs, seed {}", cfg.samples, cfg.seed))
    });
}

fn same_subspace(a: &SpanBasis<CanonicalKey>, b: &SpanBasis<CanonicalKey>) -> bool {
    a.rank() == b.rank() && a.rows().all(|row| b.contains(row))
}

fn fourterm_spans(r: &mut Runner, ws: &mut FourTermWorkspace, n: usize) {
    r.check("red-form-equals-jr-image", || {
        let mut ranks = Vec::new();
        for k in 0..=n {
            let red = ws.fc_span(k, RelationSource::RedForm).to_span_basis();
            let jr = ws.fc_span(k, RelationSource::JrImage).to_span_basis();
            let both = ws.fc_span(k, RelationSource::Both).rank();
            ranks.push(red.rank());
            if !same_subspace(&red, &jr) || both != red.rank() {
                return Outcome::from_scan(
                    k + 1,
                    Some(json!({"n": k, "red_form_rank": red.rank(), "jr_image_rank": jr.rank(), "both_rank": both})),
                );
            }
        }
        Outcome::from_scan(n + 1, None).with_detail(format!("ranks {ranks:?}"))
    });
    r.check("black-basis-dimension", || {
        for k in 0..=n {
            let (black, red) = (ws.dim_lando_black(k), ws.dim_lando(k));
            if black != red {
                return Outcome::from_scan(k + 1, Some(json!({"n": k, "black": black, "red": red})));
            }
        }
        Outcome::from_scan(n + 1, None)
    });
    r.check("generator-order", || {
        for k in 2..=n {
            let gens = ws.red_generators(k, GeneratorFilter::All).to_vec();
            let forward = SpanBasis::from_generators(&gens);
            let backward = SpanBasis::from_generators(gens.iter().rev());
            if !same_subspace(&forward, &backward) {
                return Outcome::from_scan(k, Some(json!({"n": k})));
            }
        }
        Outcome::from_scan(n.saturating_sub(1), None)
    });
    r.check("biideal", || {
        let mut checked = 0;
        for k in 2..=n {
            match ws.biideal_check(k) {
                Ok(c) => checked += c,
                Err(x) => return Outcome::from_scan(checked, Some(json!({"generator": combination_value(&x)}))),
            }
        }
        Outcome::from_scan(checked, None)
    });
}

fn forest(r: &mut Runner, ws: &mut FourTermWorkspace, n: usize) {
    let mut gradings = Vec::new();
    r.check("trees-equal-in-quotient", || {
        gradings = ws.forest_checks(n);
        let detail = gradings
            .iter()
            .map(|g| format!("k={}: {} tree(s), rank {}", g.k, g.trees, g.rank))
            .collect::<Vec<_>>()
            .join("; ");
        let failure = gradings
            .iter()
            .find(|g| !g.all_equal || g.rank != 1)
            .map(|g| json!({"k": g.k, "trees": g.trees, "all_equal": g.all_equal, "rank": g.rank}));
        Outcome::from_scan(gradings.len(), failure).with_detail(detail)
    });
    r.check("tree-class-nonzero", || {
        let failure = gradings.iter().find(|g| g.chromatic.is_zero()).map(|g| json!({"k": g.k}));
        Outcome::from_scan(gradings.len(), failure)
    });
    r.check("weighted-tree-nonzero", || {
        let v1 = FramedGraph::edgeless(&[1]).expect("valid framing");
        let mut checked = 0;
        for k in 1..=n {
            let key = if k == 1 {
                fcgraph_core::canonical_form(&v1)
            } else {
                tree_action(&path_tree(k - 1), &v1).expect("valid tree action")
            };
            checked += 1;
            if framed_chromatic(&basis(&key)).unwrap().is_zero() {
                return Outcome::from_scan(checked, Some(json!({"graph": key_value(&key)})));
            }
        }
        Outcome::from_scan(checked, None)
    });
}

type Triple = Combination<(CanonicalKey, CanonicalKey, CanonicalKey)>;

fn coassociator(k: &CanonicalKey, rule: CoproductRule) -> Triple {
    let mut left = Triple::zero();
    let mut right = Triple::zero();
    for ((a, b), c) in &coproduct(k, rule) {
        for ((a1, a2), c1) in &coproduct(a, rule) {
            left.add_term((a1.clone(), a2.clone(), b.clone()), c * c1);
        }
        for ((b1, b2), c1) in &coproduct(b, rule) {
            right.add_term((a.clone(), b1.clone(), b2.clone()), c * c1);
        }
    }
    &left - &right
}

fn tensor_square_product(x: &Tensor, y: &Tensor) -> Tensor {
    let mut out = Tensor::zero();
    for ((a, b), c) in x {
        for ((p, q), d) in y {
            out.add_term((product_keys(a, p), product_keys(b, q)), c * d);
        }
    }
    out
}

fn coassoc(r: &mut Runner, cfg: &RunConfig) {
    let keys = classes_up_to(cfg.max_n, Palette::BOTH, 0);
    for (name, rule) in [("coassociative-jr", CoproductRule::JoniRota), ("coassociative-colored", CoproductRule::Colored)] {
        r.check(name, || scan(&keys, |k| (!coassociator(k, rule).is_zero()).then(|| json!({"graph": key_value(k)}))));
    }
    r.check("cocommutative", || {
        scan(&keys, |k| {
            let d = coproduct(k, CoproductRule::Colored);
            (swap_legs(&d) != d).then(|| json!({"graph": key_value(k)}))
        })
    });
    r.check("multiplicative", || {
        let pairs = sample_pairs(cfg, Palette::BOTH);
        scan(&pairs, |(x, y)| {
            [CoproductRule::JoniRota, CoproductRule::Colored].into_iter().find_map(|rule| {
                let lhs = bialgebra::coproduct_of(&product(x, y), rule);
                let rhs = tensor_square_product(&bialgebra::coproduct_of(x, rule), &bialgebra::coproduct_of(y, rule));
                (lhs != rhs).then(|| json!({"x": combination_value(x), "y": combination_value(y)}))
            })
        })
        .with_detail(format!("{} seeded pairs, seed {}", cfg.samples, cfg.seed))
    });
}

fn all_generators(ws: &mut FourTermWorkspace, n: usize) -> (Vec<LinearCombination>, Vec<LinearCombination>) {
    let mut red = Vec::new();
    let mut jr = Vec::new();
    for k in 2..=n {
        red.extend_from_slice(ws.red_generators(k, GeneratorFilter::All));
        jr.extend(ws.jr_image_generators(k));
    }
    (red, jr)
}

fn vanishing_w(r: &mut Runner, ws: &mut FourTermWorkspace, n: usize) {
    let (red, jr) = all_generators(ws, n);
    let test = |x: &LinearCombination| {
        let w = w_invariant(x).expect("red-only generators");
        (!w.is_zero()).then(|| json!({"element": combination_value(x), "w": w.to_string()}))
    };
    r.check("w-vanishes-red-form", || scan(&red, test));
    r.check("w-vanishes-jr-image", || scan(&jr, test));
    r.check("w-gluing", || {
        let graphs: Vec<FramedGraph> =
            (1..=n.min(4)).flat_map(|k| ws.connected_classes(k)).map(|k| k.to_graph()).collect();
        let pairs: Vec<(usize, usize)> =
            (0..graphs.len()).flat_map(|i| (0..graphs.len()).map(move |j| (i, j))).collect();
        let factor = Scalar::ratio(-2, 3);
        scan(&pairs, |&(i, j)| {
            let (g, h) = (&graphs[i], &graphs[j]);
            let expected = &factor * &w_graph(g, WBase::MinusTwo).unwrap() * w_graph(h, WBase::MinusTwo).unwrap();
            for u in 0..g.n() {
                for v in 0..h.n() {
                    if g.framing(u) != h.framing(v) {
                        continue;
                    }
                    let glued = g.nabla_with_framing(u, h, v, g.framing(u) ^ h.framing(v)).expect("valid gluing");
                    if w_graph(&glued, WBase::MinusTwo).unwrap() != expected {
                        return Some(json!({"left": graph_value(g), "u": u, "right": graph_value(h), "v": v}));
                    }
                }
            }
            None
        })
    });
    r.check("w-leaf-scaling", || {
        let keys: Vec<CanonicalKey> = (1..=n).flat_map(|k| ws.connected_classes(k)).collect();
        scan(&keys, |k| {
            let g = k.to_graph();
            let doubled = w_graph(&g, WBase::MinusTwo).unwrap() * Scalar::from_int(2);
            (0..g.n()).find_map(|u| {
                let leaf = g.add_leaf(u, 0, EdgeColor::Red).expect("valid leaf");
                (w_graph(&leaf, WBase::MinusTwo).unwrap() != doubled).then(|| json!({"graph": key_value(k), "u": u}))
            })
        })
    });
}

fn vanishing_chrom(r: &mut Runner, ws: &mut FourTermWorkspace, n: usize) {
    let (red, jr) = all_generators(ws, n);
    let test = |x: &LinearCombination| {
        let p = framed_chromatic(x).expect("red-only generators");
        (!p.is_zero()).then(|| json!({"element": combination_value(x), "chromatic": p.to_string()}))
    };
    r.check("chromatic-vanishes-red-form", || scan(&red, test));
    r.check("chromatic-vanishes-jr-image", || scan(&jr, test));
    r.check("contraction-order-independence", || {
        let keys: Vec<CanonicalKey> = (1..=n).flat_map(|k| ws.connected_classes(k)).collect();
        scan(&keys, |k| {
            let g = k.to_graph();
            let values = contraction_values(&g, ChromaticSign::Product).unwrap();
            let expected = framed_chromatic_graph(&g).unwrap();
            (values.len() != 1 || !values.contains(&expected)).then(|| {
                json!({"graph": key_value(k), "values": values.iter().map(ToString::to_string).collect::<Vec<_>>()})
            })
        })
    });
}

fn milnor_moore(r: &mut Runner, ws: &mut FourTermWorkspace, n: usize) {
    let mut primitive = vec![0u64];
    r.check("kernel-equals-intersection", || {
        for k in 1..=n {
            let (a, b) = (ws.dim_primitive_intersection(k), ws.dim_primitive_kernel(k));
            if a != b {
                return Outcome::from_scan(k, Some(json!({"n": k, "intersection": a, "kernel": b})));
            }
            primitive.push(a as u64);
        }
        Outcome::from_scan(n, None).with_detail(format!("dim PN = {:?}", &primitive[1..]))
    });
    r.check("symmetric-algebra-series", || {
        if primitive.len() != n + 1 {
            return Outcome::from_scan(0, Some(json!({"reason": "primitive dimensions unavailable"})));
        }
        let series = bialgebra::symmetric_algebra_dims(&primitive, n);
        let dims: Vec<u128> = (0..=n).map(|k| ws.dim_lando(k) as u128).collect();
        let failure = (series != dims).then(|| json!({"series": series, "dims": dims}));
        Outcome::from_scan(n + 1, failure).with_detail(format!("dim L = {dims:?}"))
    });
    if n >= 4 {
        r.check("pn4-witnesses", || {
            let witnesses = ws.pn4_witnesses();
            let keys: Vec<CanonicalKey> = witnesses.iter().map(|w| w.key.clone()).collect();
            let detail = witnesses
                .iter()
                .map(|w| format!("({}, {})", w.chromatic, w.w))
                .collect::<Vec<_>>()
                .join(", ");
            let pairs: BTreeSet<(String, String)> =
                witnesses.iter().map(|w| (w.chromatic.to_string(), w.w.to_string())).collect();
            let failure = (witnesses.len() < 4 || pairs.len() != witnesses.len())
                .then(|| json!({"witnesses": keys.iter().map(key_value).collect::<Vec<_>>()}));
            Outcome::from_scan(witnesses.len(), failure).with_detail(format!("(chromatic, W) = {detail}"))
        });
        if n >= 5 {
            r.check("pn5-tree-action", || {
                let keys: Vec<CanonicalKey> = ws.pn4_witnesses().into_iter().map(|w| w.key).collect();
                let rank = ws.acted_rank(&path_tree(1), &keys).expect("witnesses are connected red graphs");
                let failure = (rank < 4).then(|| json!({"rank": rank}));
                Outcome::from_scan(keys.len(), failure).with_detail(format!("rank {rank} in grading 5"))
            });
        }
    }
}

fn direct_sum(r: &mut Runner, ws: &mut FourTermWorkspace, n: usize) {
    r.check("additivity", || {
        let mut rows = Vec::new();
        for k in 1..=n {
            let d = ws.sub_bialgebra_dims(k);
            rows.push(format!("n={k}: {}+{}={}", d.pbl, d.pwl, d.pl));
            if d.pbl + d.pwl != d.pl {
                return Outcome::from_scan(k, Some(json!({"n": k, "pbl": d.pbl, "pwl": d.pwl, "pl": d.pl})));
            }
        }
        Outcome::from_scan(n, None).with_detail(rows.join("; "))
    });
    r.check("unframed-agreement", || {
        for k in 1..=n {
            let (framed, unframed) = (ws.sub_bialgebra_dims(k).pbl, ws.dim_primitive_unframed(k));
            if framed != unframed {
                return Outcome::from_scan(k, Some(json!({"n": k, "red_basis": framed, "black_basis": unframed})));
            }
        }
        Outcome::from_scan(n, None)
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_in_small_gradings() {
        for suite in Suite::ALL {
            let cfg = RunConfig { samples: 32, timings: false, ..RunConfig::new(3) };
            let report = run_suite(suite, &cfg);
            assert!(!report.checks.is_empty(), "{}", suite.name());
            assert!(report.passed, "{}: {:?}", suite.name(), report.checks);
            let names: BTreeSet<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
            assert_eq!(names.len(), report.checks.len());
        }
    }

    #[test]
    fn suite_names_round_trip_through_the_cli_parser() {
        for suite in Suite::ALL {
            assert_eq!(Suite::from_str(suite.name(), false), Ok(suite));
        }
    }
}
