//! Isomorphism classes of BCR graphs with `V` vertices and `E` edges.
//!
//! For each split into `k` externals and `n` internals there are
//! `d = (k + 3n) / 2` dashed and `s = E - d` solid edges, and the solid paths
//! form a partition of `k` into `k - s` parts. Paths are laid out on the
//! externals in order, then every dashed multigraph with the right degrees is
//! attached, and the connected results are canonicalized and deduplicated.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::graph::{canonical_form, ColoredGraph, Edge, Parity, VertexKind};

/// One isomorphism class, vanishing or not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Underlying {
    /// Canonical representative.
    pub graph: ColoredGraph,
    /// Has an orientation-reversing automorphism.
    pub zero: bool,
}

/// `(k, n, s)` splits compatible with `V` and `E`.
pub fn splits(v: usize, e: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for n in 0..v {
        let k = v - n;
        if !(k + 3 * n).is_multiple_of(2) {
            continue;
        }
        let d = (k + 3 * n) / 2;
        if e < d || e - d >= k {
            continue;
        }
        out.push((k, n, e - d));
    }
    out
}

/// Partitions of `total` into exactly `parts` positive parts, descending.
pub fn partitions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(
        total: usize,
        parts: usize,
        max: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if total < parts {
            return;
        }
        let hi = max.min(total - (parts - 1));
        for first in (1..=hi).rev() {
            prefix.push(first);
            go(total - first, parts - 1, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, total, &mut Vec::new(), &mut out);
    }
    out
}

/// All dashed multigraphs with the given degrees (a loop counts 2, at most
/// one loop per vertex and only where `loops_ok`).
fn dashed_multigraphs(degrees: &[usize], loops_ok: &[bool]) -> Vec<Vec<(usize, usize)>> {
    fn go(
        i: usize,
        j: usize,
        rem: &mut Vec<usize>,
        loops_ok: &[bool],
        edges: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        let n = rem.len();
        if i == n {
            out.push(edges.clone());
            return;
        }
        if j == i {
            // Loop decision for vertex i.
            go(i, j + 1, rem, loops_ok, edges, out);
            if loops_ok[i] && rem[i] >= 2 {
                rem[i] -= 2;
                edges.push((i, i));
                go(i, j + 1, rem, loops_ok, edges, out);
                edges.pop();
                rem[i] += 2;
            }
            return;
        }
        if j == n {
            if rem[i] == 0 {
                go(i + 1, i + 1, rem, loops_ok, edges, out);
            }
            return;
        }
        let max = rem[i].min(rem[j]);
        for m in 0..=max {
            rem[i] -= m;
            rem[j] -= m;
            for _ in 0..m {
                edges.push((i, j));
            }
            go(i, j + 1, rem, loops_ok, edges, out);
            for _ in 0..m {
                edges.pop();
            }
            rem[i] += m;
            rem[j] += m;
        }
    }
    let mut out = Vec::new();
    go(
        0,
        0,
        &mut degrees.to_vec(),
        loops_ok,
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Every isomorphism class in the component, sorted by certificate.
pub fn enumerate_underlying(v: usize, e: usize, parity: Parity) -> Vec<Underlying> {
    let mut jobs = Vec::new();
    for (k, n, s) in splits(v, e) {
        for parts in partitions(k, k - s) {
            jobs.push((k, n, parts));
        }
    }
    let found: Vec<Underlying> = jobs
        .par_iter()
        .flat_map_iter(|(k, n, parts)| {
            let (k, n) = (*k, *n);
            let mut vertices = vec![VertexKind::External; k];
            vertices.extend(std::iter::repeat_n(VertexKind::Internal, n));
            let mut solid = Vec::new();
            let mut start = 0;
            for &len in parts {
                for x in start..start + len - 1 {
                    solid.push(Edge::solid(x, x + 1));
                }
                start += len;
            }
            let degrees: Vec<usize> = (0..k + n).map(|x| if x < k { 1 } else { 3 }).collect();
            let loops_ok: Vec<bool> = (0..k + n).map(|x| x >= k).collect();
            let mut local: BTreeMap<ColoredGraph, bool> = BTreeMap::new();
            for dashed in dashed_multigraphs(&degrees, &loops_ok) {
                let mut edges = solid.clone();
                edges.extend(dashed.iter().map(|&(a, b)| Edge::dashed(a, b)));
                let g = ColoredGraph::new(parity, vertices.clone(), edges).expect("in range");
                if !g.is_connected() {
                    continue;
                }
                let form = canonical_form(&g);
                local.entry(form.graph).or_insert(form.sign.is_none());
            }
            local
                .into_iter()
                .map(|(graph, zero)| Underlying { graph, zero })
        })
        .collect();
    let mut by_graph: BTreeMap<ColoredGraph, bool> = BTreeMap::new();
    for u in found {
        by_graph.entry(u.graph).or_insert(u.zero);
    }
    let mut out: Vec<Underlying> = by_graph
        .into_iter()
        .map(|(graph, zero)| Underlying { graph, zero })
        .collect();
    out.sort_by_cached_key(|u| u.graph.certificate());
    out
}
