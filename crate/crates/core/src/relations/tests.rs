use super::*;
use crate::graph::{
    canonicalize, contract_edge, ensure_valid, iso_sign, Edge, GraphClass, IsoRelation, Parity,
};

const X: VertexKind = VertexKind::External;
const I: VertexKind = VertexKind::Internal;

fn graph(parity: Parity, vertices: &[VertexKind], edges: &[Edge]) -> ColoredGraph {
    let g = ColoredGraph::new(parity, vertices.to_vec(), edges.to_vec()).unwrap();
    ensure_valid(&g, GraphClass::Bcr).unwrap();
    g
}

/// Path `0-1` with hairs to the free externals 2 and 3.
fn two_hairs(parity: Parity) -> ColoredGraph {
    graph(
        parity,
        &[X, X, X, X],
        &[Edge::solid(0, 1), Edge::dashed(0, 2), Edge::dashed(1, 3)],
    )
}

#[test]
fn merge_of_two_hairs_is_a_tripod() {
    let m = merge_external_pair(&two_hairs(Parity::Even), 0).unwrap();
    ensure_valid(&m, GraphClass::Bcr).unwrap();
    assert_eq!(m.external_count(), 3);
    assert_eq!(m.internal_count(), 1);
    assert_eq!(m.solid_edge_count(), 0);
    assert_eq!(m.degree(1, EdgeKind::Dashed), 3);
}

#[test]
fn merge_of_adjacent_chord_makes_a_loop() {
    let d = graph(
        Parity::Even,
        &[X, X],
        &[Edge::solid(0, 1), Edge::dashed(0, 1)],
    );
    let m = merge_external_pair(&d, 0).unwrap();
    ensure_valid(&m, GraphClass::Bcr).unwrap();
    assert!(m.edges().iter().any(|e| e.is_loop() && e.ends == [1, 1]));
}

#[test]
fn merge_rejects_positions_on_different_components() {
    let d = graph(
        Parity::Even,
        &[X, X, X, X],
        &[Edge::solid(0, 1), Edge::dashed(0, 2), Edge::dashed(1, 3)],
    );
    // Row: [0, 1], [2], [3].
    assert_eq!(
        merge_external_pair(&d, 1),
        Err(RelationError::NotSolidAdjacent(1, 2))
    );
    assert_eq!(
        merge_external_pair(&d, 3),
        Err(RelationError::NoSuchPosition(4))
    );
}

#[test]
fn stu_row_of_two_hairs_vanishes_in_even_case() {
    let t = StuTriple::new(&two_hairs(Parity::Even), 0).unwrap();
    assert_eq!(t.case, StuCase::II);
    assert!(canonicalize(&t.merged).is_zero());
    assert!(t.row().is_zero());
}

#[test]
fn stu_case_one_keeps_a_solid_edge() {
    let d = graph(
        Parity::Even,
        &[X, X, X, X, X, X],
        &[
            Edge::solid(0, 1),
            Edge::solid(1, 2),
            Edge::dashed(0, 3),
            Edge::dashed(1, 4),
            Edge::dashed(2, 5),
        ],
    );
    assert_eq!(StuTriple::new(&d, 0).unwrap().case, StuCase::I);
}

#[test]
fn resolving_a_chord_diagram_fails() {
    let d = two_hairs(Parity::Even);
    for e in 0..d.edge_count() {
        assert!(resolve_internal(&d, e).is_err());
    }
}

fn tripod(parity: Parity) -> ColoredGraph {
    graph(
        parity,
        &[X, X, X, I],
        &[Edge::dashed(0, 3), Edge::dashed(1, 3), Edge::dashed(2, 3)],
    )
}

#[test]
fn tripod_resolution_is_twice_a_vanishing_graph() {
    let g = tripod(Parity::Even);
    for e in 0..3 {
        let (t, u) = resolve_internal(&g, e).unwrap();
        assert_eq!(iso_sign(&t, &u), IsoRelation::Vanishing);
        assert!(canonicalize(&t).is_zero());
        assert!(kappa_step(&g, e).unwrap().is_zero());
    }
}

/// Internal vertex with a loop and one leg to an isolated external.
fn tadpole(parity: Parity) -> ColoredGraph {
    graph(parity, &[X, I], &[Edge::dashed(0, 1), Edge::dashed(1, 1)])
}

#[test]
fn tadpole_resolution_depends_on_parity() {
    let even = tadpole(Parity::Even);
    let (t, u) = resolve_internal(&even, 0).unwrap();
    assert_eq!(t, u);
    assert_eq!(
        kappa_step(&even, 0).unwrap(),
        DiagramVector::from_graph(&t).scaled(&int(2))
    );
    assert!(!canonicalize(&t).is_zero());

    let odd = tadpole(Parity::Odd);
    let (t, u) = resolve_internal(&odd, 0).unwrap();
    // Swapping the two ends is an odd vertex relabeling with both edges
    // reversed, so the chord on a 2-segment itself vanishes here.
    assert_eq!(iso_sign(&t, &u), IsoRelation::Vanishing);
    assert!(kappa_step(&odd, 0).unwrap().is_zero());
}

#[test]
fn resolution_inverts_merge() {
    for parity in [Parity::Even, Parity::Odd] {
        let d = graph(
            parity,
            &[X, X, X, X, X, X],
            &[
                Edge::solid(0, 1),
                Edge::solid(1, 2),
                Edge::dashed(0, 4),
                Edge::dashed(1, 5),
                Edge::dashed(2, 3),
            ],
        );
        for i in [0, 1] {
            let t = StuTriple::new(&d, i).unwrap();
            let s = solid_between(
                &d,
                LegRow::of(&d).vertices[i],
                LegRow::of(&d).vertices[i + 1],
            )
            .unwrap();
            let (a, b) = resolve_internal(&t.merged, s).unwrap();
            let found = [a, b].map(|g| canonicalize(&g));
            let want = [&t.left, &t.right].map(canonicalize);
            assert!(found.iter().all(|f| want.contains(f)), "{parity} {i}");
        }
    }
}

/// The three STU terms contract (along the solid edge, resp. the new dashed
/// edge) to the same graph with the same sign.
#[test]
fn stu_terms_share_their_contraction() {
    for parity in [Parity::Even, Parity::Odd] {
        let d = graph(
            parity,
            &[X, X, X, X, X, X],
            &[
                Edge::dashed(0, 3),
                Edge::solid(0, 1),
                Edge::solid(1, 2),
                Edge::dashed(1, 4),
                Edge::dashed(2, 5),
                Edge::solid(3, 4),
            ],
        );
        let t = StuTriple::new(&d, 1).unwrap();
        let s = 2;
        let c = [&t.left, &t.right, &t.merged].map(|g| contract_edge(g, s).unwrap());
        assert_eq!(c[0], c[1]);
        assert_eq!(c[0], c[2]);
    }
}

/// Two internal vertices joined by `e`, with legs to four externals on two
/// solid components.
fn h_graph(parity: Parity) -> ColoredGraph {
    graph(
        parity,
        &[X, X, X, X, I, I],
        &[
            Edge::dashed(4, 5),
            Edge::solid(0, 1),
            Edge::dashed(0, 4),
            Edge::dashed(1, 4),
            Edge::dashed(2, 5),
            Edge::solid(2, 3),
            Edge::dashed(3, 5),
        ],
    )
}

#[test]
fn ihx_terms_share_their_contraction() {
    for parity in [Parity::Even, Parity::Odd] {
        let [i, h, x] = ihx_triple(&h_graph(parity), 0).unwrap();
        for g in [&i, &h, &x] {
            ensure_valid(g, GraphClass::Bcr).unwrap();
        }
        let c = [&i, &h, &x].map(|g| contract_edge(g, 0).unwrap());
        assert_eq!(c[0], c[1]);
        assert_eq!(c[0], c[2]);
    }
}

#[test]
fn ihx_on_a_looped_vertex_kills_it() {
    let g = graph(
        Parity::Even,
        &[X, X, X, I, I, I],
        &[
            Edge::dashed(3, 4),
            Edge::dashed(3, 3),
            Edge::dashed(0, 4),
            Edge::dashed(4, 5),
            Edge::dashed(1, 5),
            Edge::dashed(2, 5),
            Edge::solid(0, 1),
        ],
    );
    let [_, h, x] = ihx_triple(&g, 0).unwrap();
    assert_eq!(iso_sign(&h, &x), IsoRelation::Vanishing);
    assert_eq!(ihx_row(&g, 0).unwrap(), DiagramVector::from_graph(&g));
    assert!(!ihx_row(&g, 0).unwrap().is_zero());
}

#[test]
fn ihx_with_symmetric_legs_has_equal_h_and_x() {
    // Legs of w1 both go to one solid component, which has a flip symmetry.
    let g = graph(
        Parity::Even,
        &[X, X, X, X, I, I],
        &[
            Edge::dashed(4, 5),
            Edge::solid(0, 1),
            Edge::dashed(0, 5),
            Edge::dashed(1, 5),
            Edge::dashed(2, 4),
            Edge::dashed(3, 4),
        ],
    );
    let [_, h, x] = ihx_triple(&g, 0).unwrap();
    assert!(matches!(
        iso_sign(&h, &x),
        IsoRelation::Sign(_) | IsoRelation::Vanishing
    ));
}

#[test]
fn chord_relation_between_components() {
    for parity in [Parity::Even, Parity::Odd] {
        // Components [0,1] and [2,3]; chord 1-2 joins their ends.
        let d = graph(
            parity,
            &[X, X, X, X],
            &[
                Edge::solid(0, 1),
                Edge::solid(2, 3),
                Edge::dashed(1, 2),
                Edge::dashed(0, 3),
            ],
        );
        assert_eq!(chord_edges(&d), vec![2, 3]);
        let p = chord_partner(&d, 2).unwrap();
        ensure_valid(&p, GraphClass::Chord).unwrap();
        assert_eq!(p.degree(1, EdgeKind::Solid), 2);
        assert_eq!(p.degree(2, EdgeKind::Solid), 0);
        assert_eq!(contract_edge(&d, 2).unwrap(), contract_edge(&p, 2).unwrap());
    }
}

#[test]
fn chord_on_one_component_has_no_row() {
    let d = graph(
        Parity::Even,
        &[X, X, X, X],
        &[
            Edge::solid(0, 1),
            Edge::solid(1, 2),
            Edge::solid(2, 3),
            Edge::dashed(0, 3),
            Edge::dashed(1, 2),
        ],
    );
    assert!(chord_edges(&d).is_empty());
    assert_eq!(
        chord_partner(&d, 3),
        Err(RelationError::NotChordBetweenComponents(3))
    );
}

#[test]
fn four_t_rows_from_one_internal_vertex() {
    let s = graph(
        Parity::Even,
        &[X, X, X, X, X, I],
        &[
            Edge::solid(0, 1),
            Edge::solid(1, 2),
            Edge::solid(3, 4),
            Edge::dashed(0, 5),
            Edge::dashed(1, 5),
            Edge::dashed(3, 5),
            Edge::dashed(2, 4),
        ],
    );
    let rows = four_t_rows(std::slice::from_ref(&s));
    assert!(rows.len() <= 3);
    // With three resolvable legs the rows are K1-K2, K1-K3, K2-K3: the
    // first minus the second is the third.
    let legs = resolvable_edges(&s);
    assert_eq!(legs.len(), 3);
    let k: Vec<DiagramVector> = legs.iter().map(|&e| kappa_step(&s, e).unwrap()).collect();
    let r = [&k[0] - &k[1], &k[0] - &k[2], &k[1] - &k[2]];
    assert!((&(&r[0] - &r[1]) + &r[2]).is_zero());

    let one_leg = tadpole(Parity::Even);
    assert!(four_t_rows(&[one_leg]).is_empty());
}

fn sliding_configs(parity: Parity) -> Vec<SlidingConfig> {
    let mut out = Vec::new();
    for (v, e) in crate::spaces::Caps::new(8, 8).components() {
        let c = crate::spaces::Component::new(v, e, parity, None);
        for g in c.underlying_graphs() {
            out.extend(sliding_configurations(&g, 2));
        }
    }
    out
}

#[test]
fn sliding_terms_cover_each_interior_slot_twice() {
    for parity in [Parity::Even, Parity::Odd] {
        let configs = sliding_configs(parity);
        assert!(configs.iter().any(|c| c.chord_count() == 2), "{parity}");
        for cfg in &configs {
            let n = cfg.chord_count();
            let terms = cfg.terms();
            assert_eq!(terms.len(), 4 * n);
            let mut hits = vec![0; 2 * n + 1];
            for t in &terms {
                hits[t.slot] += 1;
            }
            let mut want = vec![2; 2 * n + 1];
            want[0] = 1;
            want[2 * n] = 1;
            assert_eq!(hits, want, "{}", cfg.source.certificate());
        }
    }
}

#[test]
fn sliding_telescopes_to_the_slid_diagram() {
    for parity in [Parity::Even, Parity::Odd] {
        for cfg in sliding_configs(parity) {
            let n = cfg.chord_count();
            let d = DiagramVector::from_graph(&cfg.source);
            let target = &d - &DiagramVector::from_graph(&cfg.slid());
            let found = (0..1u32 << n).any(|mask| {
                let mut sum = DiagramVector::zero();
                for j in 0..n {
                    sum.add_scaled(
                        &cfg.four_t_row(j),
                        &int(if mask >> j & 1 == 1 { -1 } else { 1 }),
                    );
                }
                sum == target || sum == -&target
            });
            assert!(found, "{parity} {}", cfg.source.certificate());
        }
    }
}
