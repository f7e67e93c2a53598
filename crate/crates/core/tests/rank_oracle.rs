mod common;

use bcr_core::graph::Parity;
use bcr_core::linalg::{rank_of_set, Echelon, RelationKind, RelationSet};
use bcr_core::spaces::Component;

use common::{bareiss_rank, dense_integer_row};

fn dense_rank(set: &RelationSet) -> usize {
    let n = set.basis().len();
    bareiss_rank(
        &set.rows()
            .iter()
            .map(|r| dense_integer_row(r, n))
            .collect::<Vec<_>>(),
    )
}

#[test]
fn stu_rank_on_four_vertices_three_edges() {
    // Both graphs here have an orientation-reversing automorphism, so every
    // STU row vanishes.
    let c = Component::new(4, 3, Parity::Even, None);
    let stu = c.family(RelationKind::Stu);
    assert!(c.bcr_basis().is_empty());
    assert_eq!(rank_of_set(stu), 0);
    assert_eq!(dense_rank(stu), 0);
}

#[test]
fn stu_rank_on_six_vertices_six_edges() {
    let c = Component::new(6, 6, Parity::Even, None);
    let stu = c.family(RelationKind::Stu);
    let dense = dense_rank(stu);
    assert!(dense > 0);
    assert_eq!(rank_of_set(stu), dense);
    assert_eq!(Echelon::new(stu, false).rank(), dense);
}

#[test]
fn every_family_rank_agrees_with_dense_elimination() {
    for parity in [Parity::Even, Parity::Odd] {
        for (v, e) in [
            (2, 1),
            (2, 2),
            (4, 3),
            (4, 4),
            (4, 5),
            (6, 5),
            (6, 6),
            (6, 7),
        ] {
            let c = Component::new(v, e, parity, None);
            for kind in [
                RelationKind::Ihx,
                RelationKind::Stu,
                RelationKind::Chord,
                RelationKind::FourT,
            ] {
                let set = c.family(kind);
                let dense = dense_rank(set);
                assert_eq!(rank_of_set(set), dense, "{kind:?} V={v} E={e} {parity:?}");
                assert_eq!(
                    Echelon::new(set, false).rank(),
                    dense,
                    "{kind:?} V={v} E={e} {parity:?}"
                );
            }
        }
    }
}
