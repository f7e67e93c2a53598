//! Span witnesses: IHX rows over STU rows, and sliding a hair across a
//! block of chords over 4T rows.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{ComponentReport, SuiteConfig, WitnessRecord};
use crate::linalg::{int, DiagramVector, RelationKind, Witness};
use crate::relations::{sliding_configurations, SlidingConfig};
use crate::spaces::Component;

pub(super) fn prepare_ihx_in_stu(c: &Component) {
    c.family(RelationKind::Ihx);
    c.tracked(RelationKind::Stu);
}

pub(super) fn prepare_sliding(c: &Component) {
    c.tracked(RelationKind::FourT);
}

pub(super) fn run_ihx_in_stu(c: &Arc<Component>, report: &mut ComponentReport) {
    let ihx = c.generated(RelationKind::Ihx);
    let stu = c.family(RelationKind::Stu);
    let tracked = c.tracked(RelationKind::Stu);
    let parts: Vec<ComponentReport> = ihx
        .par_iter()
        .map(|row| {
            let mut part = report.fragment();
            let witness = stu
                .to_sparse(&row.vector)
                .ok()
                .and_then(|r| tracked.in_span(&r));
            let ok = witness
                .as_ref()
                .is_some_and(|w| w.evaluate(stu) == row.vector);
            part.check("ihx-in-stu", ok, std::slice::from_ref(&row.source), || {
                format!("no STU combination gives {}", row.vector)
            });
            if let Some(witness) = witness {
                part.witnesses.push(WitnessRecord::Span {
                    check: "ihx-in-stu",
                    target: row.source.clone(),
                    relation: RelationKind::Stu,
                    witness,
                });
            }
            part
        })
        .collect();
    parts.into_iter().for_each(|p| report.absorb(p));
}

/// One resolved graph of the telescoping sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub chord: usize,
    /// Sign in `κ_a - κ_b` times the sign chosen for the chord's row.
    pub sign: i8,
    pub slot: usize,
    pub graph: String,
}

/// `Σ_j ε_j (κ_a(S_j) - κ_b(S_j)) = overall · (D - D')`, with the terms that
/// survive and those that cancel in pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TelescopingRecord {
    pub source: String,
    pub slid: String,
    pub w0: usize,
    pub w1: usize,
    pub block: Vec<usize>,
    pub chords: usize,
    pub row_signs: Vec<i8>,
    pub overall: i8,
    pub terms: Vec<TermRecord>,
    pub cancelling_pairs: usize,
    /// `D - D'` over the generated 4T rows.
    pub span: Witness,
}

pub(super) fn run_sliding(c: &Arc<Component>, config: &SuiteConfig, report: &mut ComponentReport) {
    let configs: Vec<SlidingConfig> = c
        .underlying_graphs()
        .iter()
        .flat_map(|g| sliding_configurations(g, config.max_chords))
        .collect();
    let parts: Vec<ComponentReport> = configs
        .par_iter()
        .map(|cfg| {
            let mut part = report.fragment();
            slide(c, cfg, &mut part);
            part
        })
        .collect();
    parts.into_iter().for_each(|p| report.absorb(p));
}

fn slide(c: &Component, cfg: &SlidingConfig, part: &mut ComponentReport) {
    let n = cfg.chord_count();
    let cert = cfg.source.certificate();
    let label = format!("{cert} w1={} chords={n}", cfg.w1);
    let certs = [label.clone()];
    let slid = cfg.slid();
    let target = &DiagramVector::from_graph(&cfg.source) - &DiagramVector::from_graph(&slid);

    let terms = cfg.terms();
    part.check("sliding-term-count", terms.len() == 4 * n, &certs, || {
        format!("{} terms", terms.len())
    });
    let mut hits = vec![0usize; 2 * n + 1];
    for t in &terms {
        if t.slot < hits.len() {
            hits[t.slot] += 1;
        }
    }
    let slots_ok = terms.iter().all(|t| t.slot <= 2 * n)
        && hits[0] == 1
        && hits[2 * n] == 1
        && hits[1..2 * n].iter().all(|&h| h == 2);
    part.check("sliding-slots", slots_ok, &certs, || {
        format!("slot hits {hits:?}")
    });

    let rows: Vec<DiagramVector> = (0..n).map(|j| cfg.four_t_row(j)).collect();
    let mut found = None;
    'search: for mask in 0..1u32 << n {
        let signs: Vec<i8> = (0..n)
            .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
            .collect();
        let mut sum = DiagramVector::zero();
        for (row, &s) in rows.iter().zip(&signs) {
            sum.add_scaled(row, &int(s as i64));
        }
        for overall in [1i8, -1] {
            if sum == target.scaled(&int(overall as i64)) {
                found = Some((signs, overall));
                break 'search;
            }
        }
    }
    let Some((signs, overall)) = found else {
        part.check("sliding-telescoping", false, &certs, || {
            format!("no signed sum of the {n} 4T rows is ±(D - D')")
        });
        return;
    };
    part.check("sliding-telescoping", true, &certs, String::new);

    // Interior slots cancel; the outer slots leave overall · (D - D').
    let signed = |t: &crate::relations::SlidingTerm| {
        let mut v = DiagramVector::zero();
        v.add_graph(&t.graph, &int((signs[t.chord] * t.sign) as i64));
        v
    };
    let mut pairs = 0;
    for slot in 1..2 * n {
        let mut sum = DiagramVector::zero();
        for t in terms.iter().filter(|t| t.slot == slot) {
            sum = &sum + &signed(t);
        }
        if part.check("sliding-pair", sum.is_zero(), &certs, || {
            format!("slot {slot} leaves {sum}")
        }) {
            pairs += 1;
        }
    }
    let mut outer = DiagramVector::zero();
    for t in terms.iter().filter(|t| t.slot == 0 || t.slot == 2 * n) {
        outer = &outer + &signed(t);
    }
    part.check(
        "sliding-outer",
        outer == target.scaled(&int(overall as i64)),
        &certs,
        || format!("outer slots give {outer}"),
    );

    let four_t = c.family(RelationKind::FourT);
    let witness = four_t
        .to_sparse(&target)
        .ok()
        .and_then(|r| c.tracked(RelationKind::FourT).in_span(&r));
    let ok = witness
        .as_ref()
        .is_some_and(|w| w.evaluate(four_t) == target);
    part.check("sliding-span", ok, &certs, || {
        "D - D' is outside the 4T span".into()
    });
    if let Some(span) = witness {
        part.witnesses
            .push(WitnessRecord::Telescoping(TelescopingRecord {
                source: cert,
                slid: slid.certificate(),
                w0: cfg.w0,
                w1: cfg.w1,
                block: cfg.block.clone(),
                chords: n,
                terms: terms
                    .iter()
                    .map(|t| TermRecord {
                        chord: t.chord,
                        sign: signs[t.chord] * t.sign,
                        slot: t.slot,
                        graph: t.graph.certificate(),
                    })
                    .collect(),
                row_signs: signs,
                overall,
                cancelling_pairs: pairs,
                span,
            }));
    }
}
