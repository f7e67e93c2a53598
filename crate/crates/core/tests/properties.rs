mod common;

use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::{select, Index};

use bcr_core::graph::text::{parse_graphs, print_graph};
use bcr_core::graph::{canonicalize, iso_sign, CanonicalClass, ColoredGraph, IsoRelation, Parity};
use bcr_core::linalg::{int, rank_of_rows, ratio, DiagramVector, Rational, SparseRow};
use bcr_core::spaces::{Component, Space, SpaceId};

use common::bareiss_rank;

fn components() -> &'static [(Parity, Vec<ColoredGraph>)] {
    static CELL: OnceLock<Vec<(Parity, Vec<ColoredGraph>)>> = OnceLock::new();
    CELL.get_or_init(|| {
        [Parity::Even, Parity::Odd]
            .into_iter()
            .map(|p| {
                let graphs = [(4, 4), (4, 5), (6, 6), (6, 7), (6, 8)]
                    .into_iter()
                    .flat_map(|(v, e)| Component::new(v, e, p, None).bcr_basis().to_vec())
                    .collect();
                (p, graphs)
            })
            .collect()
    })
}

fn space(id: SpaceId) -> &'static Space {
    static CELL: OnceLock<Vec<(SpaceId, std::sync::Arc<Space>)>> = OnceLock::new();
    let spaces = CELL.get_or_init(|| {
        let c = Component::new(6, 7, Parity::Even, None);
        [SpaceId::A, SpaceId::Ac]
            .into_iter()
            .map(|id| (id, c.space(id)))
            .collect()
    });
    &spaces.iter().find(|(s, _)| *s == id).unwrap().1
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn is_odd(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            inv += usize::from(p[i] > p[j]);
        }
    }
    inv % 2 == 1
}

/// A basis graph with a random recoloring and the sign it picks up.
fn recolored() -> impl Strategy<Value = (ColoredGraph, ColoredGraph, i8)> {
    (select(vec![0usize, 1]), any::<Index>())
        .prop_flat_map(|(p, i)| {
            let g = i.get(&components()[p].1).clone();
            let (v, e) = (g.vertex_count(), g.edge_count());
            (
                Just(g),
                permutation(v),
                permutation(e),
                proptest::collection::vec(any::<bool>(), e),
            )
        })
        .prop_map(|(g, vp, ep, flips)| {
            let mut h = g.relabel_vertices(&vp).permute_edges(&ep);
            let mut reversed = 0;
            for (j, &f) in flips.iter().enumerate() {
                if f {
                    h = h.reverse_edge(j);
                    reversed += 1;
                }
            }
            let odd = match g.parity() {
                Parity::Even => is_odd(&ep),
                Parity::Odd => is_odd(&vp) ^ (reversed % 2 == 1),
            };
            (g, h, if odd { -1 } else { 1 })
        })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn vector_over(basis: &'static [ColoredGraph]) -> impl Strategy<Value = DiagramVector> {
    proptest::collection::vec((any::<Index>(), small_rational()), 0..6).prop_map(move |terms| {
        let mut v = DiagramVector::zero();
        for (i, c) in terms {
            v.add_graph(i.get(basis), &c);
        }
        v
    })
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(
            proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], c),
            r,
        )
    })
}

fn sparse(rows: &[Vec<i64>]) -> Vec<SparseRow> {
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(c, &x)| (c, int(x)))
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonicalization_is_idempotent((g, h, _) in recolored()) {
        let CanonicalClass::Graph { canonical, .. } = canonicalize(&h) else {
            return Err(TestCaseError::fail("basis graphs do not vanish"));
        };
        prop_assert_eq!(&canonical, &g);
        prop_assert_eq!(canonicalize(&canonical), CanonicalClass::Graph { canonical: g.clone(), sign: 1 });
    }

    #[test]
    fn recoloring_changes_the_sign_by_its_parity((g, h, sign) in recolored()) {
        prop_assert_eq!(canonicalize(&h), CanonicalClass::Graph { canonical: g.clone(), sign });
        prop_assert_eq!(iso_sign(&h, &g), IsoRelation::Sign(sign));
        prop_assert_eq!(DiagramVector::from_graph(&h), DiagramVector::from_graph(&g).scaled(&int(sign as i64)));
    }

    #[test]
    fn printed_graphs_parse_back((_, h, _) in recolored()) {
        // Labels may be renumbered, but the signed class survives.
        let text = print_graph(&h);
        let parsed = parse_graphs(&text).unwrap();
        prop_assert_eq!(parsed.len(), 1);
        prop_assert_eq!(DiagramVector::from_graph(&parsed[0]), DiagramVector::from_graph(&h));
        let again = print_graph(&parsed[0]);
        prop_assert_eq!(parse_graphs(&again).unwrap(), parsed);
    }

    #[test]
    fn normal_form_is_linear(
        x in vector_over(space(SpaceId::A).basis()),
        y in vector_over(space(SpaceId::A).basis()),
        a in small_rational(),
        b in small_rational(),
    ) {
        let s = space(SpaceId::A);
        let mut xy = x.scaled(&a);
        xy.add_scaled(&y, &b);
        let mut expected = s.normal_form(&x).unwrap().scaled(&a);
        expected.add_scaled(&s.normal_form(&y).unwrap(), &b);
        prop_assert_eq!(s.normal_form(&xy).unwrap(), expected);
    }

    #[test]
    fn reduction_is_idempotent(x in vector_over(space(SpaceId::Ac).basis())) {
        let s = space(SpaceId::Ac);
        let nf = s.normal_form(&x).unwrap();
        prop_assert_eq!(s.normal_form(&nf).unwrap(), nf.clone());
        let quotient = s.quotient_basis();
        prop_assert!(nf.keys().all(|k| quotient.contains(k)));
        let diff = s.relations.to_sparse(&(&x - &nf)).unwrap();
        prop_assert!(s.echelon.reduce(&diff).is_empty());
    }

    #[test]
    fn rank_matches_dense_elimination(m in int_matrix()) {
        let dense: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        prop_assert_eq!(rank_of_rows(&sparse(&m)), bareiss_rank(&dense));
    }

    #[test]
    fn rank_ignores_row_order_and_scaling(
        (m, order) in int_matrix().prop_flat_map(|m| { let n = m.len(); (Just(m), permutation(n)) }),
        scales in proptest::collection::vec(prop_oneof![-5i64..=-1, 1i64..=5], 6),
    ) {
        let rows = sparse(&m);
        let moved: Vec<SparseRow> = order
            .iter()
            .zip(&scales)
            .map(|(&i, &s)| rows[i].iter().map(|(c, q)| (*c, q * ratio(s, 3))).collect())
            .collect();
        prop_assert_eq!(rank_of_rows(&moved), rank_of_rows(&rows));
    }
}

#[test]
fn every_enumerated_basis_round_trips_through_text() {
    for (_, graphs) in components() {
        let text: String = graphs
            .iter()
            .map(print_graph)
            .collect::<Vec<_>>()
            .join("\n");
        assert_eq!(&parse_graphs(&text).unwrap(), graphs);
    }
}
