use super::*;

fn bench() -> Workbench {
    Workbench::new(Parity::Even, Caps::default())
}

#[test]
fn strut_component_bases() {
    let w = bench();
    let c = GradedComponent {
        vertices: 2,
        edges: 1,
        parity: Parity::Even,
        class: GraphClass::Chord,
    };
    assert_eq!(w.enumerate_basis(&c).unwrap().len(), 1);
    assert_eq!(w.dimension(SpaceId::Ac, 2, 1).unwrap(), 1);
    assert_eq!(w.dimension(SpaceId::B, 2, 1).unwrap(), 1);
}

#[test]
fn single_external_vertex_has_no_hairy_graph() {
    let w = bench();
    let c = GradedComponent {
        vertices: 1,
        edges: 0,
        parity: Parity::Even,
        class: GraphClass::Hairy,
    };
    assert!(w.enumerate_basis(&c).unwrap().is_empty());
}

#[test]
fn two_vertices_two_edges() {
    let w = bench();
    let c = GradedComponent {
        vertices: 2,
        edges: 2,
        parity: Parity::Even,
        class: GraphClass::Bcr,
    };
    assert_eq!(w.enumerate_basis(&c).unwrap().len(), 2);
    assert_eq!(w.dimension(SpaceId::A, 2, 2).unwrap(), 1);
    assert_eq!(w.dimension(SpaceId::Ac, 2, 2).unwrap(), 1);
    assert_eq!(w.dimension(SpaceId::B, 2, 2).unwrap(), 1);
}

#[test]
fn caps_are_enforced() {
    let w = Workbench::new(Parity::Even, Caps::new(4, 4));
    assert!(matches!(
        w.component(5, 4),
        Err(SpaceError::CapsExceeded { .. })
    ));
}

#[test]
fn space_names_parse() {
    for id in SpaceId::ALL {
        assert_eq!(id.as_str().parse::<SpaceId>().unwrap(), id);
    }
    assert!("C".parse::<SpaceId>().is_err());
}
