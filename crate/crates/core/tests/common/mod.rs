//! Oracles that share no code with the library: a brute-force generator of
//! BCR graphs and dense fraction-free elimination.

#![allow(dead_code)]

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use bcr_core::linalg::SparseRow;

/// `(solid, a, b)` with `a <= b`.
pub type RawEdge = (bool, usize, usize);

/// An isomorphism class found by brute force; externals are `0..externals`.
#[derive(Debug, Clone)]
pub struct RawClass {
    pub externals: usize,
    pub vertices: usize,
    pub edges: Vec<RawEdge>,
    pub zero_even: bool,
    pub zero_odd: bool,
}

impl RawClass {
    pub fn has_solid(&self) -> bool {
        self.edges.iter().any(|e| e.0)
    }

    pub fn has_internal(&self) -> bool {
        self.vertices > self.externals
    }
}

/// Every BCR graph with `v` vertices and `e` edges up to isomorphism, found by
/// listing all labeled edge multisets within the degree bounds and keeping
/// the least relabeling of each.
pub fn brute_force_classes(v: usize, e: usize) -> Vec<RawClass> {
    let mut out = Vec::new();
    for k in 1..=v {
        let mut candidates = Vec::new();
        for a in 0..v {
            for b in a..v {
                candidates.push((false, a, b));
                if b < k && a != b {
                    candidates.push((true, a, b));
                }
            }
        }
        let mut seen: BTreeMap<Vec<RawEdge>, Vec<RawEdge>> = BTreeMap::new();
        let mut chosen = Vec::new();
        let mut dashed = vec![0usize; v];
        let mut solid = vec![0usize; v];
        extend(
            &candidates,
            0,
            e,
            k,
            &mut chosen,
            &mut dashed,
            &mut solid,
            &mut |edges: &[RawEdge]| {
                if is_bcr(v, k, edges) {
                    let key = least_relabeling(v, k, edges);
                    seen.entry(key).or_insert_with(|| edges.to_vec());
                }
            },
        );
        for key in seen.into_keys() {
            let autos = automorphisms(v, k, &key);
            out.push(RawClass {
                externals: k,
                vertices: v,
                zero_even: autos.iter().any(|p| even_reversing(&key, p)),
                zero_odd: autos.iter().any(|p| odd_reversing(&key, p)),
                edges: key,
            });
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend(
    candidates: &[RawEdge],
    from: usize,
    left: usize,
    k: usize,
    chosen: &mut Vec<RawEdge>,
    dashed: &mut [usize],
    solid: &mut [usize],
    visit: &mut dyn FnMut(&[RawEdge]),
) {
    if left == 0 {
        visit(chosen);
        return;
    }
    for i in from..candidates.len() {
        let (s, a, b) = candidates[i];
        if s && chosen.last() == Some(&candidates[i]) {
            continue;
        }
        let degree = if s { &mut *solid } else { &mut *dashed };
        degree[a] += 1;
        degree[b] += 1;
        let ok = (0..dashed.len()).all(|x| {
            let d_cap = if x < k { 1 } else { 3 };
            dashed[x] <= d_cap && solid[x] <= if x < k { 2 } else { 0 }
        });
        if ok {
            chosen.push(candidates[i]);
            extend(candidates, i, left - 1, k, chosen, dashed, solid, visit);
            chosen.pop();
        }
        let degree = if s { &mut *solid } else { &mut *dashed };
        degree[a] -= 1;
        degree[b] -= 1;
    }
}

fn is_bcr(v: usize, k: usize, edges: &[RawEdge]) -> bool {
    let mut dashed = vec![0; v];
    for &(s, a, b) in edges {
        if !s {
            dashed[a] += 1;
            dashed[b] += 1;
        }
    }
    if (0..v).any(|x| dashed[x] != if x < k { 1 } else { 3 }) {
        return false;
    }
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    // Solid edges first, so a repeated root means a solid cycle.
    for &(_, a, b) in edges.iter().filter(|e| e.0) {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    for &(_, a, b) in edges.iter().filter(|e| !e.0) {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let root = find(&mut parent, 0);
    (0..v).all(|x| find(&mut parent, x) == root)
}

fn apply(p: &[usize], edges: &[RawEdge]) -> Vec<RawEdge> {
    let mut out: Vec<RawEdge> = edges
        .iter()
        .map(|&(s, a, b)| {
            let (x, y) = (p[a], p[b]);
            (s, x.min(y), x.max(y))
        })
        .collect();
    out.sort();
    out
}

/// Permutations of `0..v` fixing the set of externals `0..k`.
fn kind_preserving(v: usize, k: usize) -> Vec<Vec<usize>> {
    let ext: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let int: Vec<Vec<usize>> = (k..v).permutations(v - k).collect();
    ext.iter()
        .cartesian_product(&int)
        .map(|(a, b)| a.iter().chain(b).copied().collect())
        .collect()
}

fn least_relabeling(v: usize, k: usize, edges: &[RawEdge]) -> Vec<RawEdge> {
    kind_preserving(v, k)
        .iter()
        .map(|p| apply(p, edges))
        .min()
        .expect("at least one permutation")
}

fn automorphisms(v: usize, k: usize, edges: &[RawEdge]) -> Vec<Vec<usize>> {
    let sorted = apply(&(0..v).collect::<Vec<_>>(), edges);
    kind_preserving(v, k)
        .into_iter()
        .filter(|p| apply(p, edges) == sorted)
        .collect()
}

fn permutation_is_odd(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Edges numbered: an automorphism reverses the orientation when it can
/// permute the edges oddly. Parallel edges of one kind always can.
fn even_reversing(edges: &[RawEdge], p: &[usize]) -> bool {
    if edges.windows(2).any(|w| w[0] == w[1]) {
        return true;
    }
    let image: Vec<usize> = edges
        .iter()
        .map(|&(s, a, b)| {
            let e = (s, p[a].min(p[b]), p[a].max(p[b]));
            edges.iter().position(|&x| x == e).expect("automorphism")
        })
        .collect();
    permutation_is_odd(&image)
}

/// Edges oriented from the smaller label and vertices labeled: the sign is
/// that of the vertex permutation times one per reversed edge. A loop can be
/// reversed on its own.
fn odd_reversing(edges: &[RawEdge], p: &[usize]) -> bool {
    if edges.iter().any(|&(_, a, b)| a == b) {
        return true;
    }
    let reversed = edges.iter().filter(|&&(_, a, b)| p[a] > p[b]).count();
    permutation_is_odd(p) ^ (reversed % 2 == 1)
}

/// Rank by fraction-free Gaussian elimination on a dense integer matrix.
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for c in col + 1..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// A sparse rational row cleared of denominators, as a dense integer row.
pub fn dense_integer_row(row: &SparseRow, ncols: usize) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |l, (_, q)| l.lcm(q.denom()));
    let mut out = vec![BigInt::zero(); ncols];
    for (c, q) in row {
        out[*c] = q.numer() * (&lcm / q.denom());
    }
    out
}
