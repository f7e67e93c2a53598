//! Fraction-free sparse rank with Markowitz pivoting.
//!
//! Rows are scaled to primitive integer rows. Eliminating pivot row `p` (pivot
//! `a` in column `c`) from row `r` (entry `b` in `c`) replaces `r` by the
//! primitive part of `a*r - b*p`, so no fractions appear and entries stay
//! bounded by the content removal.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{RelationSet, SparseRow};

type IntRow = BTreeMap<usize, BigInt>;

fn primitive(row: &SparseRow) -> IntRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out: IntRow = row
        .iter()
        .map(|(c, v)| (*c, (v.numer() * &lcm) / v.denom()))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

pub fn rank_of_set(set: &RelationSet) -> usize {
    rank_of_rows(set.rows())
}

pub fn rank_of_rows(rows: &[SparseRow]) -> usize {
    let mut active: HashMap<usize, IntRow> = rows
        .iter()
        .map(primitive)
        .filter(|r| !r.is_empty())
        .enumerate()
        .collect();
    // column -> rows with a nonzero entry there
    let mut cols: HashMap<usize, HashSet<usize>> = HashMap::new();
    for (&i, r) in &active {
        for &c in r.keys() {
            cols.entry(c).or_default().insert(i);
        }
    }
    let mut rank = 0;
    while !active.is_empty() {
        // Markowitz cost (row nnz - 1) * (col nnz - 1); ties by smaller |pivot|,
        // then by indices for determinism.
        let mut best: Option<(usize, usize, usize, usize, BigInt)> = None;
        for (&i, r) in &active {
            for (&c, v) in r {
                let cost = (r.len() - 1) * (cols[&c].len() - 1);
                let key = (cost, i, c);
                let better = match &best {
                    None => true,
                    Some((bc, bi, bcol, _, bv)) => {
                        (cost, v.abs()) < (*bc, bv.abs())
                            || ((cost, v.abs()) == (*bc, bv.abs()) && (i, c) < (*bi, *bcol))
                    }
                };
                if better {
                    best = Some((key.0, i, c, r.len(), v.clone()));
                }
            }
        }
        let (_, pi, pc, _, _) = best.expect("active rows are nonempty");
        let prow = active.remove(&pi).expect("pivot row");
        for c in prow.keys() {
            if let Some(s) = cols.get_mut(c) {
                s.remove(&pi);
            }
        }
        rank += 1;
        let a = prow[&pc].clone();
        let targets: Vec<usize> = cols
            .get(&pc)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default();
        for ri in targets {
            let mut r = active.remove(&ri).expect("target row");
            for c in r.keys() {
                cols.get_mut(c).expect("column").remove(&ri);
            }
            let b = r[&pc].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (&a / &g, &b / &g);
            for v in r.values_mut() {
                *v *= &fa;
            }
            for (c, pv) in &prow {
                let e = r.entry(*c).or_insert_with(BigInt::zero);
                *e -= &fb * pv;
            }
            r.retain(|_, v| !v.is_zero());
            make_primitive(&mut r);
            if !r.is_empty() {
                for &c in r.keys() {
                    cols.entry(c).or_default().insert(ri);
                }
                active.insert(ri, r);
            }
        }
    }
    rank
}
