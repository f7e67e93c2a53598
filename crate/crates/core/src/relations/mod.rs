//! Local rewiring rules for the IHX, STU, chord and 4T relations.
//!
//! Every rule keeps the vertex and edge count, keeps edge indices (so the
//! even-case numbering travels with the edges) and keeps vertex slots (so the
//! odd-case labels travel with the vertices). Legs are half-edges: an edge
//! index together with the end slot that sits at the vertex in question.
//!
//! All rows are sums over the preimages of one contracted graph, each weighted
//! by its contraction sign, with an extra [`SOLID_CONTRACTION_SIGN`] for
//! preimages whose middle edge is solid. This gives
//! `I + H + X`, `D - U_i D - S_i D` with `U_i D = -(U_i D)_u`, and `D1 + D2`.

mod generate;
mod sliding;

pub use generate::{chord_rows, four_t_rows, ihx_rows, stu_rows, Fault, GeneratedRow};
pub use sliding::{sliding_configurations, SlidingConfig, SlidingTerm};

use serde::Serialize;
use thiserror::Error;

use crate::conventions::SOLID_CONTRACTION_SIGN;
use crate::graph::{solid_paths_unchecked, ColoredGraph, EdgeKind, VertexKind};
use crate::linalg::{int, DiagramVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("positions {0} and {1} are not adjacent on one solid component")]
    NotSolidAdjacent(usize, usize),
    #[error("leg position {0} is out of range")]
    NoSuchPosition(usize),
    #[error("edge {0} does not join an internal vertex to an external vertex")]
    NotInternalToExternal(usize),
    #[error("edge {0} does not join two distinct internal vertices")]
    NotInternalEdge(usize),
    #[error("edge {0} is not a chord between ends of two solid components")]
    NotChordBetweenComponents(usize),
}

/// The row of leg positions: solid paths laid out one after another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegRow {
    /// Vertex at each position.
    pub vertices: Vec<usize>,
    /// Component index of each position.
    pub component: Vec<usize>,
    /// Positions of each component, contiguous.
    pub spans: Vec<std::ops::Range<usize>>,
}

impl LegRow {
    pub fn of(g: &ColoredGraph) -> Self {
        Self::from_paths(solid_paths_unchecked(g))
    }

    /// The same components with every path read backwards.
    pub fn reversed_of(g: &ColoredGraph) -> Self {
        Self::from_paths(
            solid_paths_unchecked(g)
                .into_iter()
                .map(|mut p| {
                    p.reverse();
                    p
                })
                .collect(),
        )
    }

    fn from_paths(paths: Vec<Vec<usize>>) -> Self {
        let mut vertices = Vec::new();
        let mut component = Vec::new();
        let mut spans = Vec::new();
        for (c, p) in paths.into_iter().enumerate() {
            let start = vertices.len();
            component.extend(std::iter::repeat_n(c, p.len()));
            vertices.extend(p);
            spans.push(start..vertices.len());
        }
        LegRow {
            vertices,
            component,
            spans,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Positions `i` such that `i` and `i + 1` lie on one component.
    pub fn adjacent_positions(&self) -> Vec<usize> {
        (0..self.len().saturating_sub(1))
            .filter(|&i| self.component[i] == self.component[i + 1])
            .collect()
    }

    pub fn pair(&self, i: usize) -> Result<(usize, usize), RelationError> {
        if i + 1 >= self.len() {
            return Err(RelationError::NoSuchPosition(i + 1));
        }
        if self.component[i] != self.component[i + 1] {
            return Err(RelationError::NotSolidAdjacent(i, i + 1));
        }
        Ok((self.vertices[i], self.vertices[i + 1]))
    }
}

/// The end slot of `edge` that sits at `v` (the first one for a loop).
fn slot_at(g: &ColoredGraph, edge: usize, v: usize) -> usize {
    if g.edges()[edge].ends[0] == v {
        0
    } else {
        1
    }
}

fn solid_between(g: &ColoredGraph, p: usize, q: usize) -> Option<usize> {
    g.edges()
        .iter()
        .position(|e| e.kind == EdgeKind::Solid && ((e.ends == [p, q]) || (e.ends == [q, p])))
}

/// Dashed half-edges at `v` other than `skip`, as `(edge, slot)`.
fn dashed_legs(g: &ColoredGraph, v: usize, skip: Option<(usize, usize)>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, e) in g.edges().iter().enumerate() {
        if e.kind != EdgeKind::Dashed {
            continue;
        }
        for s in 0..2 {
            if e.ends[s] == v && Some((i, s)) != skip {
                out.push((i, s));
            }
        }
    }
    out
}

/// Rebuilds a graph after moving half-edges; even-case ends are re-sorted.
fn rebuilt(
    g: &ColoredGraph,
    f: impl FnOnce(&mut Vec<VertexKind>, &mut Vec<crate::graph::Edge>),
) -> ColoredGraph {
    let mut vertices = g.vertices().to_vec();
    let mut edges = g.edges().to_vec();
    f(&mut vertices, &mut edges);
    ColoredGraph::new(g.parity(), vertices, edges).expect("rewiring keeps endpoints in range")
}

/// `(U_i D)_u` for the externals `p`, `q`: their dashed legs trade places.
pub fn swap_legs(d: &ColoredGraph, p: usize, q: usize) -> ColoredGraph {
    let a = d.dashed_edge_at(p).expect("external has a dashed edge");
    let b = d.dashed_edge_at(q).expect("external has a dashed edge");
    if a == b {
        // A chord between p and q: trading its ends reverses it.
        return d.reverse_edge(a);
    }
    let (sa, sb) = (slot_at(d, a, p), slot_at(d, b, q));
    rebuilt(d, |_, edges| {
        edges[a].ends[sa] = q;
        edges[b].ends[sb] = p;
    })
}

/// `S D` for solid-adjacent externals `p`, `q`: `q` becomes the new internal
/// vertex, the solid edge `p-q` becomes the dashed edge joining it to `p`, the
/// dashed leg of `p` moves to `q`, and the other solid edges of `q` move to `p`.
pub fn merge_vertices(d: &ColoredGraph, p: usize, q: usize) -> Result<ColoredGraph, RelationError> {
    let s = solid_between(d, p, q).ok_or(RelationError::NotSolidAdjacent(p, q))?;
    let leg = d.dashed_edge_at(p).expect("external has a dashed edge");
    let leg_slot = slot_at(d, leg, p);
    Ok(rebuilt(d, |vertices, edges| {
        vertices[q] = VertexKind::Internal;
        for (i, e) in edges.iter_mut().enumerate() {
            if i != s && e.kind == EdgeKind::Solid {
                for x in e.ends.iter_mut() {
                    if *x == q {
                        *x = p;
                    }
                }
            }
        }
        edges[s].kind = EdgeKind::Dashed;
        edges[leg].ends[leg_slot] = q;
    }))
}

/// `S_i D` for leg positions `i`, `i + 1` of `D`.
pub fn merge_external_pair(d: &ColoredGraph, i: usize) -> Result<ColoredGraph, RelationError> {
    let (p, q) = LegRow::of(d).pair(i)?;
    merge_vertices(d, p, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StuCase {
    /// The merged external vertex keeps a solid edge.
    I,
    /// The merged external vertex is isolated on the solid side.
    II,
}

/// `S_i D = D - U_i D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StuTriple {
    pub merged: ColoredGraph,
    pub left: ColoredGraph,
    /// `(U_i D)_u`; the relation uses `U_i D = -right`.
    pub right: ColoredGraph,
    pub position: usize,
    pub case: StuCase,
}

impl StuTriple {
    pub fn new(d: &ColoredGraph, i: usize) -> Result<Self, RelationError> {
        let (p, q) = LegRow::of(d).pair(i)?;
        let merged = merge_vertices(d, p, q)?;
        let case = if merged.degree(p, EdgeKind::Solid) > 0 {
            StuCase::I
        } else {
            StuCase::II
        };
        Ok(StuTriple {
            right: swap_legs(d, p, q),
            merged,
            left: d.clone(),
            position: i,
            case,
        })
    }

    /// `D - U_i D - S_i D`, i.e. `D + (U_i D)_u - S_i D`.
    pub fn row(&self) -> DiagramVector {
        let mut v = DiagramVector::from_graph(&self.left);
        v.add_graph(&self.right, &int(1));
        v.add_graph(&self.merged, &int(SOLID_CONTRACTION_SIGN as i64));
        v
    }
}

/// The two resolutions of the internal end of `edge`.
///
/// The external end `v` splits into `v` and a new external in the slot of the
/// internal vertex `w`, joined by `edge`, now solid. If `v` had two solid
/// edges the one with the larger index moves to the new vertex. `T` attaches
/// the first remaining leg of `w` to `v`, `U` the second; `U = (U_i T)_u`.
pub fn resolve_internal(
    s: &ColoredGraph,
    edge: usize,
) -> Result<(ColoredGraph, ColoredGraph), RelationError> {
    let e = *s
        .edges()
        .get(edge)
        .ok_or(RelationError::NotInternalToExternal(edge))?;
    if e.kind != EdgeKind::Dashed || e.is_loop() {
        return Err(RelationError::NotInternalToExternal(edge));
    }
    let [x, y] = e.ends;
    let (v, w) = match (s.is_external(x), s.is_external(y)) {
        (true, false) => (x, y),
        (false, true) => (y, x),
        _ => return Err(RelationError::NotInternalToExternal(edge)),
    };
    let legs = dashed_legs(s, w, Some((edge, slot_at(s, edge, w))));
    debug_assert_eq!(legs.len(), 2);
    let moved_solid = {
        let solids = s.incident(v, EdgeKind::Solid);
        (solids.len() == 2).then(|| solids[1])
    };
    let build = |leg: (usize, usize)| {
        rebuilt(s, |vertices, edges| {
            vertices[w] = VertexKind::External;
            edges[edge].kind = EdgeKind::Solid;
            if let Some(m) = moved_solid {
                for x in edges[m].ends.iter_mut() {
                    if *x == v {
                        *x = w;
                    }
                }
            }
            edges[leg.0].ends[leg.1] = v;
        })
    };
    Ok((build(legs[0]), build(legs[1])))
}

/// Dashed edges joining an internal vertex to an external one.
pub fn resolvable_edges(g: &ColoredGraph) -> Vec<usize> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            e.kind == EdgeKind::Dashed && g.is_external(e.ends[0]) != g.is_external(e.ends[1])
        })
        .map(|(i, _)| i)
        .collect()
}

/// `T - U_i T = T + U` for the resolution of `edge`.
pub fn kappa_step(s: &ColoredGraph, edge: usize) -> Result<DiagramVector, RelationError> {
    let (t, u) = resolve_internal(s, edge)?;
    let mut v = DiagramVector::from_graph(&t);
    v.add_graph(&u, &int(1));
    Ok(v)
}

/// `I`, `H`, `X` for a dashed edge between internal vertices `w1`, `w2`
/// with remaining legs `a, b` at `w1` and `c, d` at `w2`: `H` trades `b` and
/// `c`, `X` trades `b` and `d`.
pub fn ihx_triple(g: &ColoredGraph, edge: usize) -> Result<[ColoredGraph; 3], RelationError> {
    let e = *g
        .edges()
        .get(edge)
        .ok_or(RelationError::NotInternalEdge(edge))?;
    let [w1, w2] = e.ends;
    if e.kind != EdgeKind::Dashed || w1 == w2 || g.is_external(w1) || g.is_external(w2) {
        return Err(RelationError::NotInternalEdge(edge));
    }
    let l1 = dashed_legs(g, w1, Some((edge, 0)));
    let l2 = dashed_legs(g, w2, Some((edge, 1)));
    debug_assert!(l1.len() == 2 && l2.len() == 2);
    let trade = |x: (usize, usize), y: (usize, usize)| {
        rebuilt(g, |_, edges| {
            edges[x.0].ends[x.1] = w2;
            edges[y.0].ends[y.1] = w1;
        })
    };
    Ok([g.clone(), trade(l1[1], l2[0]), trade(l1[1], l2[1])])
}

/// `I + H + X`.
pub fn ihx_row(g: &ColoredGraph, edge: usize) -> Result<DiagramVector, RelationError> {
    let [i, h, x] = ihx_triple(g, edge)?;
    let mut v = DiagramVector::from_graph(&i);
    v.add_graph(&h, &int(1));
    v.add_graph(&x, &int(1));
    Ok(v)
}

/// The partner `D2` of a chord `x-y` between ends of two different solid
/// components, each with exactly one solid edge: the solid edge of `y` moves
/// to `x`, and the chord becomes a hair from `x` to the now isolated `y`.
pub fn chord_partner(g: &ColoredGraph, edge: usize) -> Result<ColoredGraph, RelationError> {
    let bad = RelationError::NotChordBetweenComponents(edge);
    let e = *g.edges().get(edge).ok_or(bad.clone())?;
    let [x, y] = e.ends;
    if e.kind != EdgeKind::Dashed || x == y || !g.is_external(x) || !g.is_external(y) {
        return Err(bad);
    }
    if g.degree(x, EdgeKind::Solid) != 1 || g.degree(y, EdgeKind::Solid) != 1 {
        return Err(bad);
    }
    let row = LegRow::of(g);
    let comp = |v: usize| {
        row.component[row
            .vertices
            .iter()
            .position(|&u| u == v)
            .expect("external on a path")]
    };
    if comp(x) == comp(y) {
        return Err(bad);
    }
    let ys = g.incident(y, EdgeKind::Solid)[0];
    Ok(rebuilt(g, |_, edges| {
        for z in edges[ys].ends.iter_mut() {
            if *z == y {
                *z = x;
            }
        }
    }))
}

/// Edges of `g` that carry a chord relation.
pub fn chord_edges(g: &ColoredGraph) -> Vec<usize> {
    (0..g.edge_count())
        .filter(|&i| chord_partner(g, i).is_ok())
        .collect()
}

/// `D1 + c * D2` with `c` the chord row sign.
pub fn chord_row(g: &ColoredGraph, edge: usize) -> Result<DiagramVector, RelationError> {
    let partner = chord_partner(g, edge)?;
    let mut v = DiagramVector::from_graph(g);
    v.add_graph(&partner, &int(crate::conventions::CHORD_ROW_SIGN as i64));
    Ok(v)
}

#[cfg(test)]
mod tests;
