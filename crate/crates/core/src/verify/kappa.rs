//! `κ`: independence of the resolution order modulo 4T, `κ ∘ ι = id`, the
//! dimension equalities, and descent through STU, IHX and chord rows.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{ComponentReport, Evidence, SuiteConfig, WitnessRecord};
use crate::graph::GraphClass;
use crate::linalg::{DiagramVector, RelationKind};
use crate::pbw::{iota, kappa, kappa_vector, KappaStrategy};
use crate::spaces::{Component, SpaceId};

pub(super) fn prepare(c: &Component) {
    for id in SpaceId::ALL {
        c.space(id);
    }
    c.tracked(RelationKind::FourT);
}

pub(super) fn run(c: &Arc<Component>, config: &SuiteConfig, report: &mut ComponentReport) {
    dimensions(c, report);

    let strategies = [
        KappaStrategy::Min,
        KappaStrategy::Max,
        KappaStrategy::Seeded(config.kappa_seed),
    ];
    let four_t = c.family(RelationKind::FourT);
    let tracked = c.tracked(RelationKind::FourT);
    let graphs: Vec<_> = c
        .bcr_basis()
        .iter()
        .filter(|g| g.internal_count() <= config.max_internal)
        .collect();
    let parts: Vec<ComponentReport> = graphs
        .par_iter()
        .map(|g| {
            let mut part = report.fragment();
            let cert = g.certificate();
            let outs: Vec<DiagramVector> = strategies
                .iter()
                .map(|&s| kappa(g, s).expect("basis graphs are valid"))
                .collect();
            let chords = outs
                .iter()
                .all(|v| v.keys().all(|k| k.in_class(GraphClass::Chord)));
            part.check(
                "kappa-chord-output",
                chords,
                std::slice::from_ref(&cert),
                || "kappa left an internal vertex".into(),
            );
            for a in 0..strategies.len() {
                for b in a + 1..strategies.len() {
                    let diff = &outs[a] - &outs[b];
                    let target = format!("{cert} {}-{}", strategies[a], strategies[b]);
                    let witness = four_t
                        .to_sparse(&diff)
                        .ok()
                        .and_then(|row| tracked.in_span(&row));
                    let ok = witness.as_ref().is_some_and(|w| w.evaluate(four_t) == diff);
                    part.check("kappa-strategy", ok, std::slice::from_ref(&cert), || {
                        format!(
                            "{} and {} differ outside the 4T span by {diff}",
                            strategies[a], strategies[b]
                        )
                    });
                    if let Some(witness) = witness {
                        part.witnesses.push(WitnessRecord::Span {
                            check: "kappa-strategy",
                            target,
                            relation: RelationKind::FourT,
                            witness,
                        });
                    }
                }
            }
            part
        })
        .collect();
    parts.into_iter().for_each(|p| report.absorb(p));

    for g in c.basis(GraphClass::Chord) {
        let v = DiagramVector::from_graph(&g);
        let back = kappa_vector(&iota(&v).expect("chord diagram"), KappaStrategy::Min);
        report.check("kappa-iota", back == v, &[g.certificate()], || {
            format!("kappa(iota(D)) = {back}")
        });
    }

    descent(c, report);
}

fn dimensions(c: &Component, report: &mut ComponentReport) {
    let dims: BTreeMap<&'static str, usize> = SpaceId::ALL
        .iter()
        .map(|&id| (id.as_str(), c.dimension(id)))
        .collect();
    for (bcr, chord) in [(SpaceId::A, SpaceId::Ac), (SpaceId::Abar, SpaceId::Acbar)] {
        let (x, y) = (dims[bcr.as_str()], dims[chord.as_str()]);
        report.check("iota-dimension", x == y, &[], || {
            format!("dim {bcr} = {x}, dim {chord} = {y}")
        });
    }
    report.evidence.push(Evidence {
        check: "iota-dimension",
        values: dims,
        note: String::new(),
    });
}

/// `κ` of every STU and IHX row vanishes in `Ac`, and of every chord row in
/// `Acbar`.
fn descent(c: &Component, report: &mut ComponentReport) {
    let cases = [
        (RelationKind::Stu, SpaceId::Ac, "kappa-stu"),
        (RelationKind::Ihx, SpaceId::Ac, "kappa-ihx"),
        (RelationKind::Chord, SpaceId::Acbar, "kappa-chord"),
    ];
    for (kind, id, check) in cases {
        let space = c.space(id);
        let family = c.family(kind);
        let parts: Vec<ComponentReport> = (0..family.len())
            .into_par_iter()
            .map(|i| {
                let mut part = report.fragment();
                let image = kappa_vector(&family.row_vector(i), KappaStrategy::Min);
                let nf = space.normal_form(&image);
                let ok = matches!(&nf, Ok(v) if v.is_zero());
                let source = family.sources()[i].clone().unwrap_or_default();
                part.check(check, ok, &[source], || {
                    format!("normal form of kappa(row) in {id}: {nf:?}")
                });
                part
            })
            .collect();
        parts.into_iter().for_each(|p| report.absorb(p));
    }
}
