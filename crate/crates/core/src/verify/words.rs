//! Word independence of `Λ_D`.
//!
//! Every word up to the length bound is evaluated through the `Λ` table by
//! prepending letters, and all words that reach one orbit state must agree.
//! Each state is also evaluated directly from `Γ_D` of its sorting word.
//! The generators of the kernel of words onto permutations are checked
//! separately: squares through the table, commutations through the doubly
//! merged graph `D_s`, and braids through the IHX row of the graph with three
//! consecutive legs merged.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use super::{ComponentReport, SuiteConfig};
use crate::graph::{ColoredGraph, EdgeKind};
use crate::linalg::{int, DiagramVector, Echelon, RelationSet};
use crate::pbw::{gamma_row, invert, word_for_row, LambdaTable, SigmaEngine, TranspositionWord};
use crate::relations::{ihx_row, merge_vertices, stu_rows, swap_legs, LegRow};
use crate::spaces::{Component, SpaceId};

pub(super) fn prepare(c: &Component) {
    c.space(SpaceId::B);
}

fn in_scope(g: &ColoredGraph, config: &SuiteConfig) -> bool {
    let row = LegRow::of(g);
    g.solid_edge_count() > 0 && row.spans.iter().all(|s| s.len() <= config.max_solid_length)
}

/// STU rows sourced at graphs with exactly `k` external vertices.
struct LevelStu {
    set: RelationSet,
    echelon: Echelon,
}

fn level_stu(c: &Component, k: usize, config: &SuiteConfig) -> LevelStu {
    let graphs: Vec<ColoredGraph> = c
        .underlying_graphs()
        .into_iter()
        .filter(|g| g.external_count() == k)
        .collect();
    let mut set = c.empty_set();
    for row in stu_rows(&graphs, config.fault) {
        set.push(&row.vector, row.kind, Some(row.source))
            .expect("relation terms are basis graphs");
    }
    let echelon = Echelon::new(&set, true);
    LevelStu { set, echelon }
}

pub(super) fn run(c: &Arc<Component>, config: &SuiteConfig, report: &mut ComponentReport) {
    let engine = SigmaEngine::new(Arc::clone(c));
    let graphs: Vec<ColoredGraph> = c
        .underlying_graphs()
        .into_iter()
        .filter(|g| in_scope(g, config))
        .collect();
    let levels: BTreeSet<usize> = graphs
        .iter()
        .filter(|g| LegRow::of(g).spans.iter().any(|s| s.len() >= 3))
        .map(|g| g.external_count() - 1)
        .collect();
    let stu: HashMap<usize, LevelStu> = levels
        .into_iter()
        .map(|k| (k, level_stu(c, k, config)))
        .collect();

    let parts: Vec<ComponentReport> = graphs
        .par_iter()
        .map(|g| {
            let mut part = report.fragment();
            let table = engine.lambda_table(g).expect("graph in the component");
            words(g, &table, config, &mut part);
            states(g, &engine, &table, &mut part);
            squares(g, &engine, &table, &mut part);
            commutations(g, &engine, &mut part);
            braids(g, &engine, stu.get(&(g.external_count() - 1)), &mut part);
            part
        })
        .collect();
    parts.into_iter().for_each(|p| report.absorb(p));
}

/// All words up to the length bound, grouped by the state they reach.
fn words(g: &ColoredGraph, table: &LambdaTable, config: &SuiteConfig, part: &mut ComponentReport) {
    let orbit = &table.orbit;
    let mut first: Vec<Option<(Vec<usize>, DiagramVector)>> = vec![None; orbit.len()];
    let mut mismatched = vec![false; orbit.len()];
    let mut count = 0usize;
    // (word, state, value); letters are prepended, so the word acts right to left.
    let mut stack = vec![(Vec::new(), 0usize, DiagramVector::zero())];
    while let Some((word, state, value)) = stack.pop() {
        count += 1;
        match &first[state] {
            None => first[state] = Some((word.clone(), value.clone())),
            Some((w0, v0)) => {
                if *v0 != value && !mismatched[state] {
                    mismatched[state] = true;
                    part.failures.push(super::Failure {
                        check: "word-independence",
                        certificates: vec![g.certificate()],
                        detail: format!(
                            "words {w0:?} and {word:?} reach one permutation with different values"
                        ),
                        replay: part.replay.clone(),
                    });
                }
            }
        }
        if word.len() == config.max_word_length {
            continue;
        }
        for (a, &i) in orbit.adjacent.iter().enumerate() {
            let mut next = Vec::with_capacity(word.len() + 1);
            next.push(i);
            next.extend(&word);
            stack.push((
                next,
                orbit.states[state].next[a],
                &value + table.term(state, a),
            ));
        }
    }
    *part.instances.entry("word-independence").or_default() += count;
    let identity_zero = first[0].as_ref().is_some_and(|(_, v)| v.is_zero());
    part.check("word-identity", identity_zero, &[g.certificate()], || {
        "the empty word is not zero".into()
    });
}

/// The table value of each state against `Λ` of its sorting word,
/// computed from `Γ_D` directly.
fn states(g: &ColoredGraph, engine: &SigmaEngine, table: &LambdaTable, part: &mut ComponentReport) {
    let row = &table.orbit.row;
    let k = row.len();
    for state in &table.orbit.states {
        let w = word_for_row(&invert(&state.arrangement), row)
            .expect("orbit states preserve components");
        let reached = w.arrangement(k) == state.arrangement;
        let direct = engine.lambda(g, &w).expect("valid word");
        let via_table = table.eval(&w).expect("valid word");
        part.check(
            "gamma-direct",
            reached && direct == via_table,
            &[g.certificate()],
            || format!("word {:?}: table {via_table}, direct {direct}", w.letters()),
        );
    }
}

/// `Λ(U_i U_i π) = Λ(π)` for every state and letter.
fn squares(
    g: &ColoredGraph,
    engine: &SigmaEngine,
    table: &LambdaTable,
    part: &mut ComponentReport,
) {
    let orbit = &table.orbit;
    for s in 0..orbit.len() {
        for a in 0..orbit.adjacent.len() {
            let back = orbit.states[s].next[a];
            let sum = table.term(s, a) + table.term(back, a);
            part.check("g1", sum.is_zero(), &[g.certificate()], || {
                format!("state {s}, letter {}: {sum}", orbit.adjacent[a])
            });
        }
    }
    for &i in &orbit.adjacent {
        let v = engine
            .lambda(g, &TranspositionWord(vec![i, i]))
            .expect("valid word");
        part.check("g1-direct", v.is_zero(), &[g.certificate()], || {
            format!("letter {i}: {v}")
        });
    }
}

/// `Λ(U_i U_j) = σ(S_i D) + σ(S_j D) - σ(D_s)` for disjoint letters, which
/// is symmetric in `i` and `j`.
fn commutations(g: &ColoredGraph, engine: &SigmaEngine, part: &mut ComponentReport) {
    let row = LegRow::of(g);
    let adjacent = row.adjacent_positions();
    let sigma = |h: &ColoredGraph| engine.sigma(h).expect("valid graph in the component");
    for &i in &adjacent {
        for &j in adjacent.iter().filter(|&&j| j >= i + 2) {
            let (pi, qi) = row.pair(i).expect("adjacent");
            let (pj, qj) = row.pair(j).expect("adjacent");
            let si = merge_vertices(g, pi, qi).expect("adjacent");
            let sj = merge_vertices(g, pj, qj).expect("adjacent");
            let ds = merge_vertices(&sj, pi, qi).expect("still adjacent");
            let ds_other = merge_vertices(&si, pj, qj).expect("still adjacent");
            let class = |h: &ColoredGraph| DiagramVector::from_graph(h);
            let swapped = merge_vertices(&swap_legs(g, pi, qi), pj, qj).expect("still adjacent");
            let commute =
                class(&ds) == class(&ds_other) && class(&swapped) == class(&swap_legs(&sj, pi, qi));
            let predicted = &(&sigma(&si) + &sigma(&sj)) - &sigma(&ds);
            let ij = engine
                .lambda(g, &TranspositionWord(vec![i, j]))
                .expect("valid word");
            let ji = engine
                .lambda(g, &TranspositionWord(vec![j, i]))
                .expect("valid word");
            part.check(
                "g2",
                commute && ij == predicted && ji == predicted,
                &[g.certificate()],
                || format!("letters {i},{j}: U_iU_j {ij}, U_jU_i {ji}, via D_s {predicted}"),
            );
        }
    }
}

/// `Γ(U_i U_{i+1} U_i) - Γ(U_{i+1} U_i U_{i+1})` is `±` the IHX row of the
/// graph `Z` with legs `i`, `i + 1`, `i + 2` merged, up to STU rows one
/// level down; its `Λ` value is zero.
fn braids(
    g: &ColoredGraph,
    engine: &SigmaEngine,
    stu: Option<&LevelStu>,
    part: &mut ComponentReport,
) {
    let row = LegRow::of(g);
    let adjacent = row.adjacent_positions();
    for &i in adjacent.iter().filter(|&&i| adjacent.contains(&(i + 1))) {
        let Some(stu) = stu else {
            part.check("g3", false, &[g.certificate()], || {
                "no STU rows prepared".into()
            });
            continue;
        };
        let (a, b, v) = (row.vertices[i], row.vertices[i + 1], row.vertices[i + 2]);
        let w1 = TranspositionWord(vec![i, i + 1, i]);
        let w2 = TranspositionWord(vec![i + 1, i, i + 1]);
        let diff =
            &gamma_row(g, &row, &w1).expect("valid") - &gamma_row(g, &row, &w2).expect("valid");
        let inner = merge_vertices(g, b, v).expect("adjacent");
        let edge = inner
            .edges()
            .iter()
            .position(|e| {
                e.kind == EdgeKind::Dashed && e.touches(b) && e.touches(v) && !e.is_loop()
            })
            .expect("the merged solid edge joins b and v");
        let z = merge_vertices(&inner, a, b).expect("adjacent");
        let ihx = ihx_row(&z, edge).expect("b and v are internal");
        let reduces = [1, -1].into_iter().any(|s| {
            let mut target = diff.clone();
            target.add_scaled(&ihx, &int(-s));
            let Ok(sparse) = stu.set.to_sparse(&target) else {
                return false;
            };
            stu.echelon
                .in_span(&sparse)
                .is_some_and(|w| w.evaluate(&stu.set) == target)
        });
        let lambda =
            &engine.lambda(g, &w1).expect("valid") - &engine.lambda(g, &w2).expect("valid");
        let sigma_ihx = engine.sigma_vector(&ihx).expect("component");
        part.check("g3", reduces && lambda.is_zero() && sigma_ihx.is_zero(), &[g.certificate()], || {
            format!("position {i}: reduces to IHX {reduces}, Lambda difference {lambda}, sigma(IHX) {sigma_ihx}")
        });
    }
}
