//! `σ` against the relations, `σ ∘ χ = id`, and the rank of `χ` into the
//! two BCR quotients.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::{ComponentReport, Evidence};
use crate::graph::ColoredGraph;
use crate::linalg::{rank_of_rows, DiagramVector, RelationKind};
use crate::pbw::{chi, SigmaEngine};
use crate::relations::{LegRow, StuTriple};
use crate::spaces::{Component, SpaceId};

pub(super) fn prepare_pbw(c: &Component) {
    c.family(RelationKind::Ihx);
    c.family(RelationKind::Stu);
    c.space(SpaceId::B);
    c.space(SpaceId::A);
}

pub(super) fn prepare_question(c: &Component) {
    c.space(SpaceId::B);
    c.space(SpaceId::Abar);
}

pub(super) fn run_pbw(c: &Arc<Component>, report: &mut ComponentReport) {
    let engine = SigmaEngine::new(Arc::clone(c));

    for kind in [RelationKind::Ihx, RelationKind::Stu] {
        let check = if kind == RelationKind::Ihx {
            "sigma-kills-ihx"
        } else {
            "sigma-kills-stu"
        };
        let rows = c.generated(kind);
        let parts: Vec<ComponentReport> = rows
            .par_iter()
            .map(|row| {
                let mut part = report.fragment();
                let value = engine
                    .sigma_vector(&row.vector)
                    .expect("rows stay in the component");
                part.check(
                    check,
                    value.is_zero(),
                    std::slice::from_ref(&row.source),
                    || format!("sigma(row) = {value}"),
                );
                part
            })
            .collect();
        parts.into_iter().for_each(|p| report.absorb(p));
    }

    let zeros: Vec<&ColoredGraph> = c
        .underlying()
        .iter()
        .filter(|u| u.zero)
        .map(|u| &u.graph)
        .collect();
    for g in zeros {
        let value = engine
            .sigma_unreduced(g)
            .expect("underlying graphs are valid");
        report.check(
            "sigma-kills-zero",
            value.is_zero(),
            &[g.certificate()],
            || format!("sigma = {value}"),
        );
    }

    let graphs = c.underlying_graphs();
    let parts: Vec<ComponentReport> = graphs
        .par_iter()
        .map(|g| {
            let mut part = report.fragment();
            for i in LegRow::of(g).adjacent_positions() {
                let t = StuTriple::new(g, i).expect("adjacent position");
                let sigma =
                    |h: &ColoredGraph| engine.sigma(h).expect("valid graph in the component");
                let lhs = &sigma(&t.left) + &sigma(&t.right);
                let rhs = sigma(&t.merged);
                part.check("sigma-stu-triple", lhs == rhs, &[g.certificate()], || {
                    format!("position {i}: sigma(D) - sigma(U_i D) = {lhs}, sigma(S_i D) = {rhs}")
                });
            }
            part
        })
        .collect();
    parts.into_iter().for_each(|p| report.absorb(p));

    let b = c.space(SpaceId::B);
    let quotient = b.quotient_basis();
    for g in &quotient {
        let value =
            engine.sigma_vector(&chi(&DiagramVector::basis_vector(g.clone())).expect("hairy"));
        let ok = matches!(&value, Ok(v) if *v == DiagramVector::basis_vector(g.clone()));
        report.check("sigma-chi-identity", ok, &[g.certificate()], || {
            format!("sigma(chi(b)) = {value:?}")
        });
    }

    let (rank, dim) = chi_rank(c, SpaceId::A, &quotient);
    report.check("pbw-rank", rank == dim, &[], || {
        format!("rank of chi into A is {rank}, dim B is {dim}")
    });
    report.evidence.push(Evidence {
        check: "pbw-rank",
        values: BTreeMap::from([("dim_b", dim), ("rank", rank)]),
        note: String::new(),
    });
}

/// Rank of `normal_form_target ∘ χ` on the quotient basis of `B`, and
/// `dim B`.
fn chi_rank(c: &Component, target: SpaceId, quotient: &[ColoredGraph]) -> (usize, usize) {
    let space = c.space(target);
    let rows: Vec<_> = quotient
        .iter()
        .map(|g| {
            let image = chi(&DiagramVector::basis_vector(g.clone())).expect("hairy");
            let nf = space
                .normal_form(&image)
                .expect("hairy graphs are BCR basis graphs");
            space
                .relations
                .to_sparse(&nf)
                .expect("normal form stays in the basis")
        })
        .collect();
    (rank_of_rows(&rows), quotient.len())
}

/// Injectivity of `χ` into the quotient by all relations, as evidence only.
pub(super) fn run_question(c: &Arc<Component>, report: &mut ComponentReport) {
    let quotient = c.space(SpaceId::B).quotient_basis();
    let (rank, dim) = chi_rank(c, SpaceId::Abar, &quotient);
    *report.instances.entry("chi-into-abar").or_default() += 1;
    let note = if rank < dim {
        format!("chi into Abar is not injective here: rank {rank} < dim B {dim}")
    } else {
        String::new()
    };
    report.evidence.push(Evidence {
        check: "chi-into-abar",
        values: BTreeMap::from([("dim_b", dim), ("rank", rank), ("deficiency", dim - rank)]),
        note,
    });
}
