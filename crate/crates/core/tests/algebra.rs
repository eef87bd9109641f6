use fcgraph_core::bialgebra::*;
use fcgraph_core::invariants::*;
use fcgraph_core::reduction::*;
use fcgraph_core::span::{kernel, SpanBasis};
use fcgraph_core::*;
use proptest::prelude::*;
use std::collections::BTreeMap;

fn graph_strategy(max_n: usize, colors: &'static [Option<EdgeColor>]) -> impl Strategy<Value = FramedGraph> {
    (0..=max_n).prop_flat_map(move |n| {
        let pairs = n * n.saturating_sub(1) / 2;
        (
            proptest::collection::vec(0u8..2, n),
            proptest::collection::vec(proptest::sample::select(colors), pairs),
        )
            .prop_map(move |(framing, states)| {
                let mut edges = Vec::new();
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if let Some(c) = states[i] {
                            edges.push((u, v, c));
                        }
                        i += 1;
                    }
                }
                FramedGraph::from_parts(&framing, &edges).unwrap()
            })
    })
}

const ANY: &[Option<EdgeColor>] = &[None, Some(EdgeColor::Black), Some(EdgeColor::Red)];
const RED_ONLY: &[Option<EdgeColor>] = &[None, Some(EdgeColor::Red)];
const BLACK_ONLY: &[Option<EdgeColor>] = &[None, Some(EdgeColor::Black)];

fn lc(g: &FramedGraph) -> LinearCombination {
    LinearCombination::basis(canonical_form(g))
}

type Triple = Combination<(CanonicalKey, CanonicalKey, CanonicalKey)>;

fn left_coassoc(g: &FramedGraph, rule: CoproductRule) -> Triple {
    let mut out = Triple::zero();
    for ((a, b), c) in &coproduct(&canonical_form(g), rule) {
        for ((a1, a2), c1) in &coproduct(a, rule) {
            out.add_term((a1.clone(), a2.clone(), b.clone()), c * c1);
        }
    }
    out
}

fn right_coassoc(g: &FramedGraph, rule: CoproductRule) -> Triple {
    let mut out = Triple::zero();
    for ((a, b), c) in &coproduct(&canonical_form(g), rule) {
        for ((b1, b2), c1) in &coproduct(b, rule) {
            out.add_term((a.clone(), b1.clone(), b2.clone()), c * c1);
        }
    }
    out
}

fn tensor_mul(x: &Tensor, y: &Tensor) -> Tensor {
    let mut out = Tensor::zero();
    for ((a, b), c) in x {
        for ((p, q), d) in y {
            out.add_term((product_keys(a, p), product_keys(b, q)), c * d);
        }
    }
    out
}

/// Row-reduces a dense matrix over the rationals; the oracle for the
/// sparse echelon code.
fn dense_rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] / &pivot;
                for (x, p) in row[col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        rank += 1;
    }
    rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labelling(g in graph_strategy(7, ANY), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        let (key, labeling) = canonical_labeling(&h);
        prop_assert_eq!(h.permuted(&labeling), key.to_graph());
    }

    #[test]
    fn coproducts_are_coassociative(g in graph_strategy(5, ANY)) {
        for rule in [CoproductRule::JoniRota, CoproductRule::Colored] {
            prop_assert_eq!(left_coassoc(&g, rule), right_coassoc(&g, rule));
        }
    }

    #[test]
    fn coproducts_are_cocommutative_and_counital(g in graph_strategy(5, ANY)) {
        let key = canonical_form(&g);
        for rule in [CoproductRule::JoniRota, CoproductRule::Colored] {
            let d = coproduct(&key, rule);
            prop_assert_eq!(swap_legs(&d), d.clone());
            let mut left = LinearCombination::zero();
            for ((a, b), c) in &d {
                if a.vertex_count() == 0 {
                    left.add_term(b.clone(), c.clone());
                }
            }
            prop_assert_eq!(left, LinearCombination::basis(key.clone()));
        }
    }

    #[test]
    fn coproducts_are_multiplicative(g in graph_strategy(3, ANY), h in graph_strategy(3, ANY)) {
        let (kg, kh) = (canonical_form(&g), canonical_form(&h));
        for rule in [CoproductRule::JoniRota, CoproductRule::Colored] {
            let lhs = coproduct(&product_keys(&kg, &kh), rule);
            let rhs = tensor_mul(&coproduct(&kg, rule), &coproduct(&kh, rule));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn psi_inverts_red_normal_form(g in graph_strategy(5, BLACK_ONLY), r in graph_strategy(5, RED_ONLY)) {
        prop_assert_eq!(psi(&red_normal_form(&lc(&g))), lc(&g));
        prop_assert_eq!(red_normal_form(&psi(&lc(&r))), lc(&r));
    }

    #[test]
    fn psi_is_a_coalgebra_map(r in graph_strategy(4, RED_ONLY)) {
        // Δ_JR ∘ ψ = (ψ ⊗ ψ) ∘ Δ_C on red graphs.
        let lhs = coproduct_of(&psi(&lc(&r)), CoproductRule::JoniRota);
        let mut rhs = Tensor::zero();
        for ((a, b), c) in &coproduct(&canonical_form(&r), CoproductRule::Colored) {
            rhs.add_scaled(&tensor_product(&psi_key(a), &psi_key(b)), c);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariants_are_multiplicative(g in graph_strategy(4, RED_ONLY), h in graph_strategy(4, RED_ONLY)) {
        let gh = g.disjoint_union(&h);
        prop_assert_eq!(
            w_graph(&gh, WBase::MinusTwo).unwrap(),
            w_graph(&g, WBase::MinusTwo).unwrap() * w_graph(&h, WBase::MinusTwo).unwrap()
        );
        prop_assert_eq!(
            framed_chromatic_graph(&gh).unwrap(),
            framed_chromatic_graph(&g).unwrap().mul(&framed_chromatic_graph(&h).unwrap())
        );
    }

    #[test]
    fn coloring_counts_agree(g in graph_strategy(9, RED_ONLY), k in 0u32..5) {
        // Brute force against the chromatic polynomial obtained by
        // inclusion-exclusion over edge subsets.
        let edges: Vec<(usize, usize)> = g.edges().map(|(u, v, _)| (u, v)).collect();
        prop_assume!(edges.len() <= 14);
        let mut total: i128 = 0;
        for mask in 0u32..(1 << edges.len()) {
            let mut parent: Vec<usize> = (0..g.n()).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x { let r = find(p, p[x]); p[x] = r; }
                p[x]
            }
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    parent[a] = b;
                }
            }
            let comps = (0..g.n()).filter(|&x| find(&mut parent, x) == x).count();
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            total += sign * (k as i128).pow(comps as u32);
        }
        prop_assert_eq!(count_proper_colorings(&g, k).unwrap() as i128, total);
    }

    #[test]
    fn span_rank_matches_dense_elimination(
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 6), 0..8),
    ) {
        let vectors: Vec<Combination<usize>> = rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(i, &c)| (i, Scalar::from_int(c))).collect())
            .collect();
        let dense: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&c| Scalar::from_int(c)).collect()).collect();
        let span = SpanBasis::from_generators(&vectors);
        prop_assert_eq!(span.rank(), dense_rank(&dense));
        for v in &vectors {
            prop_assert!(span.contains(v));
        }
        // Kernel vectors really are relations, and rank + nullity = count.
        let ker = kernel(&vectors);
        prop_assert_eq!(ker.len() + span.rank(), vectors.len());
        for k in &ker {
            let mut sum = Combination::<usize>::zero();
            for (&i, c) in k {
                sum.add_scaled(&vectors[i], c);
            }
            prop_assert!(sum.is_zero());
        }
    }

    #[test]
    fn rank_ignores_insertion_order(
        rows in proptest::collection::vec(proptest::collection::vec(-2i64..3, 5), 0..7),
        seed in any::<u64>(),
    ) {
        let vectors: Vec<Combination<usize>> = rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(i, &c)| (i, Scalar::from_int(c))).collect())
            .collect();
        let mut shuffled = vectors.clone();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = SpanBasis::from_generators(&vectors);
        let b = SpanBasis::from_generators(&shuffled);
        prop_assert_eq!(a.rank(), b.rank());
        prop_assert_eq!(a.rows().collect::<Vec<_>>(), b.rows().collect::<Vec<_>>());
    }
}

#[test]
fn graded_dimensions_match_class_counts() {
    // The red-only basis and the all-black basis have the same graded
    // dimensions, and both agree with the labelled-graph oracle.
    for n in 0..=4 {
        let red = fcgraph_core::enumerate::enumerate_graphs(n, Palette::RED, false).len();
        let black = fcgraph_core::enumerate::enumerate_graphs(n, Palette::BLACK, false).len();
        let oracle: std::collections::BTreeSet<_> = fcgraph_core::enumerate::labelled_graphs(n, Palette::BLACK)
            .iter()
            .map(canonical_form)
            .collect();
        assert_eq!(red, black);
        assert_eq!(black, oracle.len());
    }
}

#[test]
fn pi_jr_agrees_with_composition() {
    for n in 0..=4 {
        for key in fcgraph_core::enumerate::enumerate_graphs(n, Palette::BLACK, false) {
            let x = LinearCombination::basis(key);
            let p = pi_jr_formula(&x).unwrap();
            assert_eq!(p, pi_jr_composed(&x).unwrap());
            assert_eq!(pi_jr_formula(&p).unwrap(), p);
            if n > 0 {
                assert!(is_primitive(&p, CoproductRule::JoniRota).unwrap());
            }
        }
    }
}

#[test]
fn symmetric_algebra_series() {
    // One generator per degree: partition numbers.
    let dims = symmetric_algebra_dims(&[0, 1, 1, 1, 1, 1, 1], 6);
    assert_eq!(dims, vec![1, 1, 2, 3, 5, 7, 11]);
    // Two generators in degree 1: d_n = n + 1.
    assert_eq!(symmetric_algebra_dims(&[0, 2], 4), vec![1, 2, 3, 4, 5]);
    // The free graph algebra on connected graphs reproduces all classes.
    let mut connected = vec![0u64];
    let mut all = vec![];
    for n in 0..=4 {
        let classes = fcgraph_core::enumerate::enumerate_graphs(n, Palette::RED, false);
        all.push(classes.len() as u128);
        if n > 0 {
            connected.push(classes.iter().filter(|k| k.to_graph().is_connected()).count() as u64);
        }
    }
    assert_eq!(symmetric_algebra_dims(&connected, 4), all);
}

#[test]
fn kernel_primitives_of_free_algebra_are_connected_count() {
    let ctx = BialgebraContext::red_quotient();
    let mut counts = BTreeMap::new();
    for n in 1..=4 {
        let connected = fcgraph_core::enumerate::enumerate_graphs(n, Palette::RED, true).len();
        counts.insert(n, (ctx.primitive_dimension(n), connected));
    }
    for (n, (p, c)) in counts {
        assert_eq!(p, c, "grading {n}");
    }
}
