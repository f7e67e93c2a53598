//! Canonical labeling of colored graphs, with orientation sign.
//!
//! Vertices start colored by kind, the coloring is refined by the multiset of
//! (edge kind, neighbor color) pairs until stable, and the remaining ties are
//! broken by exhaustive individualization. Every leaf of the search tree is a
//! vertex labeling; the lexicographically smallest sorted edge list wins. The
//! set of winning leaves is an orbit of the automorphism group, so comparing
//! the orientation sign across winners detects graphs that vanish.

use serde::Serialize;

use super::{ColoredGraph, Edge, EdgeKind, Parity, VertexKind};
use crate::conventions::ODD_REVERSAL_SIGN;

/// Result of canonicalization for a single graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    /// The canonical representative, colored by the canonical labeling.
    pub graph: ColoredGraph,
    /// `g = sign * graph` in the space of colored graphs, or `None` when the
    /// graph has an orientation-reversing automorphism.
    pub sign: Option<i8>,
    /// Number of vertex permutations that are automorphisms.
    pub vertex_automorphisms: usize,
}

/// A canonical class: either zero, or a signed canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum CanonicalClass {
    Zero,
    Graph { canonical: ColoredGraph, sign: i8 },
}

impl CanonicalClass {
    pub fn is_zero(&self) -> bool {
        matches!(self, CanonicalClass::Zero)
    }

    pub fn graph(&self) -> Option<&ColoredGraph> {
        match self {
            CanonicalClass::Zero => None,
            CanonicalClass::Graph { canonical, .. } => Some(canonical),
        }
    }
}

/// Outcome of comparing two colored graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IsoRelation {
    NotIsomorphic,
    /// Isomorphic, but at least one of them vanishes.
    Vanishing,
    /// `g1 = sign * g2`.
    Sign(i8),
}

type Code = (u8, u32, u32);

struct Search {
    n: usize,
    half_edges: Vec<Vec<(u8, usize)>>,
    edges: Vec<Edge>,
    best: Option<Vec<Code>>,
    leaves: Vec<Vec<usize>>,
}

impl Search {
    fn new(g: &ColoredGraph) -> Self {
        let n = g.vertex_count();
        let mut half_edges = vec![Vec::new(); n];
        for e in g.edges() {
            let k = e.kind as u8;
            half_edges[e.ends[0]].push((k, e.ends[1]));
            half_edges[e.ends[1]].push((k, e.ends[0]));
        }
        Search {
            n,
            half_edges,
            edges: g.edges().to_vec(),
            best: None,
            leaves: Vec::new(),
        }
    }

    fn class_count(colors: &[u32]) -> usize {
        let mut c = colors.to_vec();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Equitable refinement; colors come back as dense ranks.
    fn refine(&self, colors: &mut [u32]) {
        let mut classes = Self::class_count(colors);
        loop {
            let sigs: Vec<(u32, Vec<(u8, u32)>)> = (0..self.n)
                .map(|v| {
                    let mut s: Vec<(u8, u32)> = self.half_edges[v]
                        .iter()
                        .map(|&(k, w)| (k, colors[w]))
                        .collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let mut distinct: Vec<&(u32, Vec<(u8, u32)>)> = sigs.iter().collect();
            distinct.sort();
            distinct.dedup();
            for v in 0..self.n {
                colors[v] = distinct
                    .binary_search(&&sigs[v])
                    .expect("signature present") as u32;
            }
            if distinct.len() == classes {
                return;
            }
            classes = distinct.len();
        }
    }

    fn run(&mut self, mut colors: Vec<u32>) {
        self.refine(&mut colors);
        let mut counts = vec![0usize; self.n];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        match (0..self.n).find(|&c| counts[c] > 1) {
            None => self.leaf(&colors),
            Some(cell) => {
                let members: Vec<usize> = (0..self.n)
                    .filter(|&v| colors[v] as usize == cell)
                    .collect();
                for v in members {
                    let mut next: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
                    next[v] = 2 * cell as u32;
                    self.run(next);
                }
            }
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let perm: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let mut code: Vec<Code> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (perm[e.ends[0]] as u32, perm[e.ends[1]] as u32);
                (e.kind as u8, a.min(b), a.max(b))
            })
            .collect();
        code.sort_unstable();
        match &self.best {
            Some(best) if *best < code => {}
            Some(best) if *best == code => self.leaves.push(perm),
            _ => {
                self.best = Some(code);
                self.leaves.clear();
                self.leaves.push(perm);
            }
        }
    }
}

/// Sign of a permutation given in one-line form.
pub(crate) fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn leaf_sign(g: &ColoredGraph, perm: &[usize], code: &[Code]) -> i8 {
    match g.parity() {
        Parity::Even => {
            let positions: Vec<usize> = g
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = (perm[e.ends[0]] as u32, perm[e.ends[1]] as u32);
                    code.binary_search(&(e.kind as u8, a.min(b), a.max(b)))
                        .expect("edge in code")
                })
                .collect();
            permutation_sign(&positions)
        }
        Parity::Odd => {
            let mut sign = permutation_sign(perm);
            for e in g.edges() {
                if perm[e.ends[0]] > perm[e.ends[1]] {
                    sign *= ODD_REVERSAL_SIGN;
                }
            }
            sign
        }
    }
}

/// Canonical representative, sign and vanishing test in one pass.
pub fn canonical_form(g: &ColoredGraph) -> CanonicalForm {
    let n = g.vertex_count();
    let mut search = Search::new(g);
    let initial: Vec<u32> = g.vertices().iter().map(|&k| k as u32).collect();
    if n > 0 {
        search.run(initial);
    }
    let code = search.best.take().unwrap_or_default();
    let leaves = std::mem::take(&mut search.leaves);

    let mut vertices = vec![VertexKind::External; n];
    if let Some(first) = leaves.first() {
        for (old, &new) in first.iter().enumerate() {
            vertices[new] = g.vertices()[old];
        }
    }
    let edges: Vec<Edge> = code
        .iter()
        .map(|&(k, a, b)| Edge {
            kind: if k == EdgeKind::Solid as u8 {
                EdgeKind::Solid
            } else {
                EdgeKind::Dashed
            },
            ends: [a as usize, b as usize],
        })
        .collect();
    let graph = ColoredGraph::from_parts(g.parity(), vertices, edges);

    let degenerate = match g.parity() {
        // Two identical parallel edges can be swapped: an odd edge permutation.
        Parity::Even => code.windows(2).any(|w| w[0] == w[1]),
        // A loop can be flipped: one reversal and no vertex motion.
        Parity::Odd => ODD_REVERSAL_SIGN == -1 && code.iter().any(|&(_, a, b)| a == b),
    };
    let sign = if degenerate || leaves.is_empty() {
        None
    } else {
        let s = leaf_sign(g, &leaves[0], &code);
        if leaves[1..].iter().all(|p| leaf_sign(g, p, &code) == s) {
            Some(s)
        } else {
            None
        }
    };
    CanonicalForm {
        graph,
        sign,
        vertex_automorphisms: leaves.len(),
    }
}

/// Canonical class of a colored graph.
pub fn canonicalize(g: &ColoredGraph) -> CanonicalClass {
    let form = canonical_form(g);
    match form.sign {
        None => CanonicalClass::Zero,
        Some(sign) => CanonicalClass::Graph {
            canonical: form.graph,
            sign,
        },
    }
}

/// Compares two colorings; see [`IsoRelation`].
pub fn iso_sign(g1: &ColoredGraph, g2: &ColoredGraph) -> IsoRelation {
    let (a, b) = (canonical_form(g1), canonical_form(g2));
    if a.graph != b.graph {
        return IsoRelation::NotIsomorphic;
    }
    match (a.sign, b.sign) {
        (Some(x), Some(y)) => IsoRelation::Sign(x * y),
        _ => IsoRelation::Vanishing,
    }
}
