use fcgraph_core::bialgebra::*;
use fcgraph_core::fourterm::*;
use fcgraph_core::invariants::*;
use fcgraph_core::span::{intersect, intersect_coordinate, SpanBasis};
use fcgraph_core::*;

fn lc(g: &FramedGraph) -> LinearCombination {
    LinearCombination::basis(canonical_form(g))
}

fn same_subspace(a: &SpanBasis<CanonicalKey>, b: &SpanBasis<CanonicalKey>) -> bool {
    a.rank() == b.rank() && a.rows().all(|r| b.contains(r))
}

#[test]
fn both_presentations_span_the_same_relations() {
    let mut ws = FourTermWorkspace::default();
    for n in 0..=4 {
        let red = ws.fc_span(n, RelationSource::RedForm).to_span_basis();
        let jr = ws.fc_span(n, RelationSource::JrImage).to_span_basis();
        let both = ws.fc_span(n, RelationSource::Both).rank();
        assert!(same_subspace(&red, &jr), "grading {n}");
        assert_eq!(both, red.rank());
        assert_eq!(ws.dim_lando_black(n), ws.dim_lando(n));
    }
}

#[test]
fn disjoint_splitting_is_strictly_smaller() {
    let mut cover = FourTermWorkspace::new(SplitRule::Covering);
    let mut disjoint = FourTermWorkspace::new(SplitRule::Disjoint);
    let jr = cover.fc_span(3, RelationSource::JrImage).rank();
    assert_eq!(cover.fc_span(3, RelationSource::RedForm).rank(), jr);
    assert!(disjoint.fc_span(3, RelationSource::RedForm).rank() < jr);
}

#[test]
fn generator_order_does_not_change_the_span() {
    let mut ws = FourTermWorkspace::default();
    let gens = ws.red_generators(4, GeneratorFilter::All).to_vec();
    let forward = SpanBasis::from_generators(&gens);
    let backward = SpanBasis::from_generators(gens.iter().rev());
    assert!(same_subspace(&forward, &backward));
}

#[test]
fn restricted_spans_are_intersections() {
    let mut ws = FourTermWorkspace::default();
    for n in 1..=5 {
        let flat = ws.fc_span(n, RelationSource::RedForm).to_span_basis();
        let connected = intersect_coordinate(&flat, |k| k.to_graph().is_connected());
        let restricted = ws.restricted_span(n, GeneratorFilter::Connected).to_span_basis();
        assert!(same_subspace(&connected, &restricted), "connected, grading {n}");

        let zero = |k: &CanonicalKey| k.to_graph().framing_sum() == 0;
        let framing_zero = intersect_coordinate(&flat, zero);
        let restricted = ws.restricted_span(n, GeneratorFilter::FramingZero).to_span_basis();
        assert!(same_subspace(&framing_zero, &restricted), "framing 0, grading {n}");

        let both = intersect_coordinate(&flat, |k| zero(k) && k.to_graph().is_connected());
        let restricted = ws.restricted_span(n, GeneratorFilter::ConnectedFramingZero).to_span_basis();
        assert!(same_subspace(&both, &restricted), "connected framing 0, grading {n}");
    }
}

#[test]
fn zassenhaus_agrees_with_coordinate_intersection() {
    let mut ws = FourTermWorkspace::default();
    for n in 1..=4 {
        let flat = ws.fc_span(n, RelationSource::RedForm).to_span_basis();
        let connected = ws.connected_classes(n);
        let basis: Vec<LinearCombination> = connected.iter().map(|k| LinearCombination::basis(k.clone())).collect();
        let conn_span = SpanBasis::from_generators(&basis);
        let ambient = ws.classes(n, Palette::RED).to_vec();
        let z = intersect(&flat, &conn_span, &ambient).unwrap();
        let c = intersect_coordinate(&flat, |k| k.to_graph().is_connected());
        assert!(same_subspace(&z, &c), "grading {n}");
    }
}

#[test]
fn primitive_dimension_two_ways_and_milnor_moore() {
    let mut ws = FourTermWorkspace::default();
    let mut primitive = vec![0u64];
    let mut lando = vec![ws.dim_lando(0) as u128];
    for n in 1..=5 {
        let a = ws.dim_primitive_intersection(n);
        let b = ws.dim_primitive_kernel(n);
        assert_eq!(a, b, "grading {n}");
        primitive.push(a as u64);
        lando.push(ws.dim_lando(n) as u128);
    }
    assert_eq!(primitive, vec![0, 2, 2, 3, 6, 11]);
    assert_eq!(symmetric_algebra_dims(&primitive, 5), lando);
}

#[test]
fn primitive_basis_elements_are_primitive() {
    let mut ws = FourTermWorkspace::default();
    let ctx = ws.quotient_context(4);
    for x in ws.primitive_basis(4) {
        assert!(ctx.is_primitive(&x).unwrap());
    }
}

#[test]
fn framing_decomposition() {
    let mut ws = FourTermWorkspace::default();
    for n in 1..=4 {
        let d = ws.sub_bialgebra_dims(n);
        assert_eq!(d.pl, d.pbl + d.pwl, "grading {n}");
    }
    assert_eq!(ws.sub_bialgebra_dims(3).pbl, ws.dim_primitive_unframed(3));
    // Unframed primitive dimensions of the graph Lando algebra.
    let pbl: Vec<usize> = (1..=5).map(|n| ws.sub_bialgebra_dims(n).pbl).collect();
    assert_eq!(pbl, vec![1, 1, 1, 2, 3]);
}

#[test]
fn relations_form_a_biideal() {
    let mut ws = FourTermWorkspace::default();
    for n in 2..=4 {
        assert!(ws.biideal_check(n).is_ok(), "grading {n}");
    }
}

#[test]
fn invariants_vanish_on_generators() {
    let mut ws = FourTermWorkspace::default();
    for n in 2..=4 {
        let mut gens = ws.red_generators(n, GeneratorFilter::All).to_vec();
        gens.extend(ws.jr_image_generators(n));
        for x in &gens {
            assert!(w_invariant(x).unwrap().is_zero(), "W on {x:?}");
            assert!(framed_chromatic(x).unwrap().is_zero(), "chromatic on {x:?}");
        }
    }
}

#[test]
fn literal_base_does_not_vanish() {
    let mut ws = FourTermWorkspace::default();
    let gens = ws.red_generators(3, GeneratorFilter::All).to_vec();
    assert!(gens.iter().any(|x| !w_invariant_with(x, WBase::Two).unwrap().is_zero()));
}

#[test]
fn literal_chromatic_sign_does_not_vanish() {
    let mut ws = FourTermWorkspace::default();
    let gens = ws.red_generators(3, GeneratorFilter::All).to_vec();
    assert!(gens.iter().any(|x| !framed_chromatic_with(x, ChromaticSign::Sum).unwrap().is_zero()));
}

#[test]
fn w_under_gluing_and_leaves() {
    let mut ws = FourTermWorkspace::default();
    let factor = Scalar::ratio(-2, 3);
    let graphs: Vec<FramedGraph> = (1..=3).flat_map(|n| ws.connected_classes(n)).map(|k| k.to_graph()).collect();
    for g in &graphs {
        let wg = w_graph(g, WBase::MinusTwo).unwrap();
        for u in 0..g.n() {
            let leaf = g.add_leaf(u, 0, EdgeColor::Red).unwrap();
            assert_eq!(w_graph(&leaf, WBase::MinusTwo).unwrap(), &wg * &Scalar::from_int(2));
            for h in &graphs {
                let wh = w_graph(h, WBase::MinusTwo).unwrap();
                for v in 0..h.n() {
                    if g.framing(u) != h.framing(v) {
                        continue;
                    }
                    let glued = g.nabla_with_framing(u, h, v, g.framing(u) ^ h.framing(v)).unwrap();
                    assert_eq!(w_graph(&glued, WBase::MinusTwo).unwrap(), &factor * &wg * &wh);
                }
            }
        }
    }
}

#[test]
fn chromatic_order_independence() {
    let mut ws = FourTermWorkspace::default();
    for n in 1..=4 {
        for key in ws.connected_classes(n) {
            let values = contraction_values(&key.to_graph(), ChromaticSign::Product).unwrap();
            assert_eq!(values.len(), 1, "{key:?}");
            assert_eq!(values.into_iter().next().unwrap(), framed_chromatic_graph(&key.to_graph()).unwrap());
        }
    }
}

#[test]
fn trees_and_leaves() {
    let mut ws = FourTermWorkspace::default();
    assert!(ws.leaf_identity_check(3).is_ok());
    for grading in ws.forest_checks(5) {
        assert!(grading.all_equal && grading.rank == 1 && !grading.chromatic.is_zero(), "{grading:?}");
    }
    let star = FramedGraph::from_parts(&[0, 0, 0], &[(0, 1, EdgeColor::Red), (0, 2, EdgeColor::Red)]).unwrap();
    assert_eq!(lc(&star), lc(&path_tree(3)));
}

#[test]
fn witnesses_in_grading_four() {
    let mut ws = FourTermWorkspace::default();
    let witnesses = ws.pn4_witnesses();
    assert!(witnesses.len() >= 4);
    let keys: Vec<CanonicalKey> = witnesses.iter().map(|w| w.key.clone()).collect();
    assert_eq!(ws.acted_rank(&path_tree(1), &keys).unwrap(), witnesses.len());
}

#[test]
fn attachment_experiment_runs() {
    let mut ws = FourTermWorkspace::default();
    let gamma = FramedGraph::path(&[1, 0], EdgeColor::Red).unwrap();
    let report = ws.attachment_experiment(&path_tree(2), &gamma).unwrap();
    assert_eq!(report.attachments.len(), 4);
    // A single leaf moved along an edge is the leaf identity.
    let single = ws.attachment_experiment(&path_tree(1), &gamma).unwrap();
    assert!(single.independent);
}
