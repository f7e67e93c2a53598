//! Edge contraction with the orientation sign.
//!
//! Even case: the contracted edge is moved to the last position and dropped;
//! the sign is the parity of that move and the remaining numbering is kept in
//! order. Odd case: for an edge oriented `a -> b` the labels of `a` and `b` are
//! moved to the last two places, the merged vertex takes the label of `a`, and
//! the sign is the parity of that relabeling.
//!
//! The result is generally not a BCR graph (the merged vertex has dashed
//! degree 0, 2 or 4), which is all the relation generators need.

use super::canon::permutation_sign;
use super::{ColoredGraph, EdgeKind, GraphError, Parity, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contracted {
    pub graph: ColoredGraph,
    pub sign: i8,
}

/// Contracts any non-loop edge.
pub fn contract_edge(g: &ColoredGraph, edge: usize) -> Result<Contracted, GraphError> {
    let e = *g.edges().get(edge).ok_or(GraphError::NoSuchEdge(edge))?;
    if e.is_loop() {
        return Err(GraphError::LoopContraction(edge));
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    let [a, b] = e.ends;
    let merged_kind = if g.is_external(a) || g.is_external(b) {
        VertexKind::External
    } else {
        VertexKind::Internal
    };

    match g.parity() {
        Parity::Even => {
            // Keep vertex order, merge the larger index into the smaller one.
            let (keep, drop) = (a.min(b), a.max(b));
            let remap = |v: usize| {
                let v = if v == drop { keep } else { v };
                if v > drop {
                    v - 1
                } else {
                    v
                }
            };
            let mut vertices = g.vertices().to_vec();
            vertices[keep] = merged_kind;
            vertices.remove(drop);
            let edges = g
                .edges()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != edge)
                .map(|(_, f)| super::Edge {
                    kind: f.kind,
                    ends: [remap(f.ends[0]), remap(f.ends[1])],
                })
                .collect();
            let sign = if (m - 1 - edge).is_multiple_of(2) {
                1
            } else {
                -1
            };
            Ok(Contracted {
                graph: ColoredGraph::from_parts(Parity::Even, vertices, edges),
                sign,
            })
        }
        Parity::Odd => {
            // perm: old label position -> new position, with a at n-2, b at n-1.
            let mut perm = vec![0usize; n];
            let mut next = 0;
            for (v, slot) in perm.iter_mut().enumerate() {
                if v != a && v != b {
                    *slot = next;
                    next += 1;
                }
            }
            perm[a] = n - 2;
            perm[b] = n - 1;
            let sign = permutation_sign(&perm);
            let relabeled = g.relabel_vertices(&perm);
            let mut vertices = relabeled.vertices().to_vec();
            vertices[n - 2] = merged_kind;
            vertices.pop();
            let edges = relabeled
                .edges()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != edge)
                .map(|(_, f)| {
                    let fix = |v: usize| if v == n - 1 { n - 2 } else { v };
                    super::Edge {
                        kind: f.kind,
                        ends: [fix(f.ends[0]), fix(f.ends[1])],
                    }
                })
                .collect();
            Ok(Contracted {
                graph: ColoredGraph::from_parts(Parity::Odd, vertices, edges),
                sign,
            })
        }
    }
}

/// Contracts a dashed, non-loop edge.
pub fn contract_dashed_edge(g: &ColoredGraph, edge: usize) -> Result<Contracted, GraphError> {
    let e = g.edges().get(edge).ok_or(GraphError::NoSuchEdge(edge))?;
    if e.kind == EdgeKind::Solid {
        return Err(GraphError::SolidContraction(edge));
    }
    contract_edge(g, edge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_form, iso_sign, Edge, IsoRelation};

    const X: VertexKind = VertexKind::External;
    const I: VertexKind = VertexKind::Internal;

    #[test]
    fn strut_contracts_to_a_point() {
        let g = ColoredGraph::new(Parity::Even, vec![X, X], vec![Edge::dashed(0, 1)]).unwrap();
        let c = contract_dashed_edge(&g, 0).unwrap();
        assert_eq!(c.sign, 1);
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edge_count(), 0);
    }

    #[test]
    fn middle_edge_of_three() {
        let g = ColoredGraph::new(
            Parity::Even,
            vec![X, X, X, X],
            vec![Edge::solid(0, 1), Edge::dashed(0, 2), Edge::dashed(1, 3)],
        )
        .unwrap();
        assert_eq!(contract_dashed_edge(&g, 1).unwrap().sign, -1);
    }

    #[test]
    fn contraction_errors() {
        let g = ColoredGraph::new(
            Parity::Even,
            vec![X, I],
            vec![Edge::dashed(0, 1), Edge::dashed(1, 1)],
        )
        .unwrap();
        assert_eq!(
            contract_dashed_edge(&g, 1),
            Err(GraphError::LoopContraction(1))
        );
        let g = ColoredGraph::new(
            Parity::Even,
            vec![X, X],
            vec![Edge::solid(0, 1), Edge::dashed(0, 1)],
        )
        .unwrap();
        assert_eq!(
            contract_dashed_edge(&g, 0),
            Err(GraphError::SolidContraction(0))
        );
        assert_eq!(contract_dashed_edge(&g, 5), Err(GraphError::NoSuchEdge(5)));
    }

    fn two_step(g: &ColoredGraph, first: usize, second: usize) -> (ColoredGraph, i8) {
        let c1 = contract_edge(g, first).unwrap();
        // Edge order is kept, so later edges shift down by one.
        let idx = if second > first { second - 1 } else { second };
        let c2 = contract_edge(&c1.graph, idx).unwrap();
        (c2.graph, c1.sign * c2.sign)
    }

    /// Contractions anticommute, which is what makes the contraction sign a
    /// differential; the two composites agree up to that fixed sign.
    #[test]
    fn contractions_anticommute() {
        // Two internal vertices joined by an edge, each with legs to externals.
        for parity in [Parity::Even, Parity::Odd] {
            let g = ColoredGraph::new(
                parity,
                vec![X, X, X, X, I, I],
                vec![
                    Edge::dashed(4, 5),
                    Edge::dashed(0, 4),
                    Edge::dashed(1, 4),
                    Edge::dashed(2, 5),
                    Edge::dashed(3, 5),
                    Edge::solid(0, 2),
                ],
            )
            .unwrap();
            for (p, q) in [(0, 1), (0, 3), (1, 3), (2, 5)] {
                let (g1, s1) = two_step(&g, p, q);
                let (g2, s2) = two_step(&g, q, p);
                match iso_sign(&g1, &g2) {
                    IsoRelation::Sign(s) => assert_eq!(s * s1, -s2, "{parity} {p} {q}"),
                    IsoRelation::Vanishing => {
                        assert!(canonical_form(&g1).sign.is_none());
                    }
                    IsoRelation::NotIsomorphic => panic!("different contractions"),
                }
            }
        }
    }
}
