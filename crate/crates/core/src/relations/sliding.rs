//! Sliding a hair across a block of chords.
//!
//! A configuration is a chord diagram with an external `w1` that ends a solid
//! path `w1 - v_1 - ... - v_2n (- x ...)`, whose dashed edge goes to `w0`
//! outside the block, and whose block `v_1..v_2n` carries `n` chords among
//! itself. The slid diagram `D'` moves `w1` to just after `v_2n`.
//!
//! For each chord `c_j = (a_j, b_j)` the graph `S_j` turns `w1` into an
//! internal vertex joined to `w0`, `a_j` and `b_j`; its 4T row is
//! `κ_a(S_j) - κ_b(S_j)`. The four resolutions put the leg from `w0` into the
//! four slots beside `a_j` and `b_j`; across all chords the `2n - 1` interior
//! slots are hit twice and the two outer slots give `D` and `D'`.

use super::{kappa_step, resolve_internal, LegRow};
use crate::graph::{ColoredGraph, Edge, EdgeKind, Parity, VertexKind};
use crate::linalg::DiagramVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlidingConfig {
    pub source: ColoredGraph,
    pub w0: usize,
    pub w1: usize,
    /// `v_1..v_2n` in path order.
    pub block: Vec<usize>,
    /// Chord edge indices, ordered by their first end along the block.
    pub chords: Vec<usize>,
    /// Edge `w1 - v_1`.
    pub e: usize,
    /// Solid edge `v_2n - x`, if any.
    pub f: Option<usize>,
}

/// One of the `4n` resolved graphs, with its sign in `κ_a - κ_b` and the
/// number of block vertices before the leg from `w0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlidingTerm {
    pub chord: usize,
    pub sign: i8,
    pub graph: ColoredGraph,
    pub slot: usize,
}

impl SlidingConfig {
    pub fn chord_count(&self) -> usize {
        self.chords.len()
    }

    /// `D'`, colored so that it carries the data of `D` along the line.
    ///
    /// Odd: every solid edge keeps its direction along the line; `f` stays
    /// at `v_2n` and `e` moves to `w1 - x`. Even: the labels keep their order
    /// along the line, read from `v_1` in `D'` and from `w1` in `D`.
    pub fn slid(&self) -> ColoredGraph {
        let g = &self.source;
        let mut edges = g.edges().to_vec();
        let last = *self.block.last().expect("nonempty block");
        let x = self.f.map(|f| edges[f].other(last));
        let inner = self.inner_edges();
        let along = |i: usize, from: usize| edges[i].ends[0] == from;
        let oriented = |forward: bool, a: usize, b: usize| {
            if forward {
                Edge::solid(a, b)
            } else {
                Edge::solid(b, a)
            }
        };
        match g.parity() {
            Parity::Odd => {
                let e_fwd = along(self.e, self.w1);
                match (self.f, x) {
                    (Some(f), Some(x)) => {
                        let f_fwd = along(f, last);
                        edges[f] = oriented(f_fwd, last, self.w1);
                        edges[self.e] = oriented(e_fwd, self.w1, x);
                    }
                    _ => edges[self.e] = oriented(e_fwd, last, self.w1),
                }
            }
            Parity::Even => {
                // Labels in line order: e, b_1, .., b_{2n-1}, f.
                let mut labels = vec![self.e];
                labels.extend(&inner);
                let mut slots: Vec<(usize, usize)> =
                    self.block.windows(2).map(|w| (w[0], w[1])).collect();
                slots.push((last, self.w1));
                if let (Some(f), Some(x)) = (self.f, x) {
                    labels.push(f);
                    slots.push((self.w1, x));
                }
                for (label, (a, b)) in labels.into_iter().zip(slots) {
                    edges[label] = Edge::solid(a, b);
                }
            }
        }
        ColoredGraph::new(g.parity(), g.vertices().to_vec(), edges).expect("same vertex set")
    }

    /// `b_1..b_{2n-1}`: the solid edges inside the block, in path order.
    fn inner_edges(&self) -> Vec<usize> {
        let g = &self.source;
        self.block
            .windows(2)
            .map(|w| {
                g.incident(w[0], EdgeKind::Solid)
                    .into_iter()
                    .find(|&i| g.edges()[i].other(w[0]) == w[1])
                    .expect("consecutive block vertices are solid-adjacent")
            })
            .collect()
    }

    /// `S_j` with the edges joining `w1` to `a_j` and to `b_j`.
    pub fn four_t_source(&self, j: usize) -> (ColoredGraph, usize, usize) {
        let g = &self.source;
        let c = self.chords[j];
        let [a, b] = g.edges()[c].ends;
        let mut vertices = g.vertices().to_vec();
        vertices[self.w1] = VertexKind::Internal;
        let mut edges = g.edges().to_vec();
        edges[self.e] = Edge::dashed(self.w1, a);
        edges[c] = Edge::dashed(self.w1, b);
        let s = ColoredGraph::new(g.parity(), vertices, edges).expect("same vertex set");
        (s, self.e, c)
    }

    /// `κ_a(S_j) - κ_b(S_j)`.
    pub fn four_t_row(&self, j: usize) -> DiagramVector {
        let (s, ea, eb) = self.four_t_source(j);
        &kappa_step(&s, ea).expect("leg to a_j") - &kappa_step(&s, eb).expect("leg to b_j")
    }

    /// The `4n` resolved graphs before any cancellation.
    pub fn terms(&self) -> Vec<SlidingTerm> {
        let mut out = Vec::new();
        for j in 0..self.chords.len() {
            let (s, ea, eb) = self.four_t_source(j);
            for (edge, sign) in [(ea, 1), (eb, -1)] {
                let (t, u) = resolve_internal(&s, edge).expect("internal to external");
                for graph in [t, u] {
                    let slot = self.slot_of(&graph);
                    out.push(SlidingTerm {
                        chord: j,
                        sign,
                        graph,
                        slot,
                    });
                }
            }
        }
        out
    }

    fn slot_of(&self, g: &ColoredGraph) -> usize {
        let leg = g.dashed_edge_at(self.w0).expect("w0 keeps its edge");
        let u = g.edges()[leg].other(self.w0);
        let row = LegRow::of(g);
        let at = |v: usize| {
            row.vertices
                .iter()
                .position(|&x| x == v)
                .expect("external on the row")
        };
        let span = row.spans[row.component[at(u)]].clone();
        let mut path: Vec<usize> = row.vertices[span].to_vec();
        let (first, last) = (self.block[0], *self.block.last().expect("nonempty block"));
        let pos = |p: &[usize], v: usize| p.iter().position(|&x| x == v);
        if pos(&path, first) > pos(&path, last) {
            path.reverse();
        }
        let members: Vec<usize> = path
            .into_iter()
            .filter(|&v| v == self.w1 || self.block.contains(&v))
            .collect();
        pos(&members, u).expect("leg sits on the block")
    }
}

/// Every sliding configuration of a chord diagram with `1..=max_chords`
/// chords in the block.
pub fn sliding_configurations(g: &ColoredGraph, max_chords: usize) -> Vec<SlidingConfig> {
    if g.internal_count() != 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for w1 in g.externals() {
        let solids = g.incident(w1, EdgeKind::Solid);
        if solids.len() != 1 {
            continue;
        }
        let e = solids[0];
        let Some(leg) = g.dashed_edge_at(w1) else {
            continue;
        };
        let w0 = g.edges()[leg].other(w1);
        // Walk the path away from w1.
        let mut path = Vec::new();
        let (mut cur, mut via) = (g.edges()[e].other(w1), e);
        loop {
            path.push((cur, via));
            let next = g
                .incident(cur, EdgeKind::Solid)
                .into_iter()
                .find(|&x| x != via);
            match next {
                Some(x) => {
                    cur = g.edges()[x].other(cur);
                    via = x;
                }
                None => break,
            }
        }
        for n in 1..=max_chords {
            if path.len() < 2 * n {
                break;
            }
            let block: Vec<usize> = path[..2 * n].iter().map(|&(v, _)| v).collect();
            if block.contains(&w0) {
                break;
            }
            let mut chords = Vec::new();
            let closed = block.iter().all(|&v| {
                let c = g.dashed_edge_at(v).expect("external has a dashed edge");
                let other = g.edges()[c].other(v);
                if !block.contains(&other) || other == v {
                    return false;
                }
                if !chords.contains(&c) {
                    chords.push(c);
                }
                true
            });
            if !closed {
                continue;
            }
            let f = path.get(2 * n).map(|&(_, edge)| edge);
            out.push(SlidingConfig {
                source: g.clone(),
                w0,
                w1,
                block,
                chords,
                e,
                f,
            });
        }
    }
    out
}
