//! Row generators over the underlying graphs of one graded component.
//!
//! Inputs are one representative per isomorphism class, vanishing ones
//! included: a row sourced at a vanishing graph can still relate nonzero
//! terms.

use rayon::prelude::*;
use serde::Serialize;

use super::{chord_edges, chord_row, ihx_row, kappa_step, resolvable_edges, LegRow, StuTriple};
use crate::graph::{ColoredGraph, EdgeKind};
use crate::linalg::{int, DiagramVector, RelationKind};

/// Deliberate corruption of a generator, for testing failure paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// STU rows use `D - (U_i D)_u - S_i D`.
    StuSign,
}

impl Fault {
    pub fn as_str(self) -> &'static str {
        match self {
            Fault::StuSign => "stu-sign",
        }
    }
}

impl std::str::FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "stu-sign" => Ok(Fault::StuSign),
            other => Err(format!("unknown fault `{other}` (expected stu-sign)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedRow {
    pub kind: RelationKind,
    pub vector: DiagramVector,
    /// Certificate of the source graph and the local choice.
    pub source: String,
}

fn check_homogeneous(source: &ColoredGraph, row: &DiagramVector) {
    for k in row.keys() {
        assert!(
            k.vertex_count() == source.vertex_count() && k.edge_count() == source.edge_count(),
            "relation row from {} leaves its graded component",
            source.certificate()
        );
    }
}

fn collect<F>(graphs: &[ColoredGraph], kind: RelationKind, per_graph: F) -> Vec<GeneratedRow>
where
    F: Fn(&ColoredGraph) -> Vec<(DiagramVector, String)> + Sync,
{
    graphs
        .par_iter()
        .flat_map_iter(|g| {
            per_graph(g).into_iter().map(move |(vector, source)| {
                check_homogeneous(g, &vector);
                GeneratedRow {
                    kind,
                    vector,
                    source,
                }
            })
        })
        .filter(|r| !r.vector.is_zero())
        .collect()
}

/// One row per graph and solid edge.
pub fn stu_rows(graphs: &[ColoredGraph], fault: Option<Fault>) -> Vec<GeneratedRow> {
    collect(graphs, RelationKind::Stu, |g| {
        LegRow::of(g)
            .adjacent_positions()
            .into_iter()
            .map(|i| {
                let t = StuTriple::new(g, i).expect("adjacent position");
                let v = match fault {
                    None => t.row(),
                    Some(Fault::StuSign) => {
                        let mut v = DiagramVector::from_graph(&t.left);
                        v.add_graph(&t.right, &int(-1));
                        v.add_graph(&t.merged, &int(-1));
                        v
                    }
                };
                (v, format!("{} stu@{}", g.certificate(), i))
            })
            .collect()
    })
}

/// One row per dashed edge between two distinct internal vertices.
pub fn ihx_rows(graphs: &[ColoredGraph]) -> Vec<GeneratedRow> {
    collect(graphs, RelationKind::Ihx, |g| {
        g.edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                e.kind == EdgeKind::Dashed
                    && !e.is_loop()
                    && !g.is_external(e.ends[0])
                    && !g.is_external(e.ends[1])
            })
            .map(|(i, _)| {
                (
                    ihx_row(g, i).expect("internal edge"),
                    format!("{} ihx@{}", g.certificate(), i),
                )
            })
            .collect()
    })
}

/// One row per chord between ends of two different solid components.
pub fn chord_rows(graphs: &[ColoredGraph]) -> Vec<GeneratedRow> {
    collect(graphs, RelationKind::Chord, |g| {
        chord_edges(g)
            .into_iter()
            .map(|i| {
                (
                    chord_row(g, i).expect("chord edge"),
                    format!("{} chord@{}", g.certificate(), i),
                )
            })
            .collect()
    })
}

/// For each graph with one internal vertex, one row per pair of its
/// resolvable legs: the difference of the two resolutions.
pub fn four_t_rows(graphs: &[ColoredGraph]) -> Vec<GeneratedRow> {
    collect(graphs, RelationKind::FourT, |g| {
        if g.internal_count() != 1 {
            return Vec::new();
        }
        let legs = resolvable_edges(g);
        let steps: Vec<DiagramVector> = legs
            .iter()
            .map(|&e| kappa_step(g, e).expect("resolvable"))
            .collect();
        let mut out = Vec::new();
        for a in 0..legs.len() {
            for b in a + 1..legs.len() {
                out.push((
                    &steps[a] - &steps[b],
                    format!("{} 4t@{},{}", g.certificate(), legs[a], legs[b]),
                ));
            }
        }
        out
    })
}
