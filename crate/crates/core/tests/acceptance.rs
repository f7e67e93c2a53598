//! The acceptance criteria, run exactly over Q at caps V <= 8, E <= 8.
//! Prints one PASS or FAIL line per criterion and exits nonzero on failure.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use bcr_core::graph::{GraphClass, Parity};
use bcr_core::spaces::{Caps, Component};
use bcr_core::verify::{run_suite, Suite, SuiteConfig, SuiteReport, WitnessRecord};

use common::brute_force_classes;

const CAPS: (usize, usize) = (8, 8);

type Outcome = Result<String, String>;

fn config(parity: Parity) -> SuiteConfig {
    SuiteConfig::new(parity, Caps::new(CAPS.0, CAPS.1))
}

/// Every named check ran at least once and none of them failed.
fn clean(r: &SuiteReport, checks: &[&str]) -> Outcome {
    let mut counts = Vec::new();
    for &check in checks {
        let n = r.count(check);
        if n == 0 {
            return Err(format!(
                "{} [{}]: check {check} never ran",
                r.suite, r.config.parity
            ));
        }
        if let Some(f) = r.failures().find(|f| f.check == check) {
            return Err(format!(
                "{check} failed on {}: {} (replay: {})",
                f.certificates.join(" "),
                f.detail,
                f.replay
            ));
        }
        counts.push(format!("{check} {n}"));
    }
    Ok(format!(
        "{} [{}]: {}",
        r.suite,
        r.config.parity,
        counts.join(", ")
    ))
}

fn all(parts: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut ok = Vec::new();
    for p in parts {
        ok.push(p?);
    }
    Ok(ok.join("; "))
}

fn pbw_monomorphism(r: &SuiteReport) -> Outcome {
    let components = r
        .components
        .iter()
        .filter(|c| c.instances.contains_key("pbw-rank"))
        .count();
    if components != r.components.len() {
        return Err(format!(
            "rank computed on {components} of {} components",
            r.components.len()
        ));
    }
    let dim_b: usize = r
        .evidence()
        .filter(|(_, e)| e.check == "pbw-rank")
        .map(|(_, e)| e.values["dim_b"])
        .sum();
    clean(r, &["pbw-rank"]).map(|s| format!("{s}, total dim B {dim_b}"))
}

fn sigma_relations(r: &SuiteReport) -> Outcome {
    clean(
        r,
        &[
            "sigma-kills-ihx",
            "sigma-kills-stu",
            "sigma-kills-zero",
            "sigma-stu-triple",
        ],
    )
}

fn word_independence(r: &SuiteReport) -> Outcome {
    clean(
        r,
        &[
            "word-independence",
            "word-identity",
            "gamma-direct",
            "g1",
            "g1-direct",
            "g2",
            "g3",
        ],
    )
}

fn kappa_choices(r: &SuiteReport) -> Outcome {
    let spans = r
        .components
        .iter()
        .flat_map(|c| &c.witnesses)
        .filter(|w| {
            matches!(
                w,
                WitnessRecord::Span {
                    check: "kappa-strategy",
                    ..
                }
            )
        })
        .count();
    clean(r, &["kappa-strategy"]).map(|s| format!("{s}, span witnesses {spans}"))
}

fn iota_isomorphisms(r: &SuiteReport) -> Outcome {
    clean(r, &["iota-dimension", "kappa-iota"])
}

fn ihx_in_stu(r: &SuiteReport) -> Outcome {
    let witnesses = r.witness_count();
    let rows = r.count("ihx-in-stu");
    if witnesses != rows {
        return Err(format!("{witnesses} witnesses for {rows} IHX rows"));
    }
    clean(r, &["ihx-in-stu"])
}

fn sliding(r: &SuiteReport) -> Outcome {
    let mut by_chords: BTreeMap<usize, usize> = BTreeMap::new();
    for w in r.components.iter().flat_map(|c| &c.witnesses) {
        let WitnessRecord::Telescoping(t) = w else {
            continue;
        };
        let n = t.chords;
        if t.terms.len() != 4 * n || t.cancelling_pairs != 2 * n - 1 {
            return Err(format!(
                "{} w1={}: {} terms, {} cancelling pairs",
                t.source,
                t.w1,
                t.terms.len(),
                t.cancelling_pairs
            ));
        }
        *by_chords.entry(n).or_default() += 1;
    }
    let configs = r.count("sliding-span");
    let witnessed: usize = by_chords.values().sum();
    if witnessed != configs || !by_chords.contains_key(&1) || !by_chords.contains_key(&2) {
        return Err(format!("{witnessed} telescoping witnesses for {configs} configurations, by chord count {by_chords:?}"));
    }
    clean(
        r,
        &[
            "sliding-term-count",
            "sliding-slots",
            "sliding-telescoping",
            "sliding-pair",
            "sliding-outer",
            "sliding-span",
        ],
    )
    .map(|s| format!("{s}, configurations by chord count {by_chords:?}"))
}

fn enumeration() -> Outcome {
    let mut total = [0usize; 2];
    for v in 1..=6 {
        for e in 0..=CAPS.1 {
            let classes = brute_force_classes(v, e);
            for (i, parity) in [Parity::Even, Parity::Odd].into_iter().enumerate() {
                let c = Component::new(v, e, parity, None);
                let live: Vec<_> = classes
                    .iter()
                    .filter(|k| !if i == 0 { k.zero_even } else { k.zero_odd })
                    .collect();
                let expected = [
                    classes.len(),
                    live.len(),
                    live.iter().filter(|k| !k.has_solid()).count(),
                    live.iter().filter(|k| !k.has_internal()).count(),
                ];
                let found = [
                    c.underlying().len(),
                    c.bcr_basis().len(),
                    c.basis(GraphClass::Hairy).len(),
                    c.basis(GraphClass::Chord).len(),
                ];
                if expected != found {
                    return Err(format!(
                        "V={v} E={e} {parity}: brute force {expected:?}, library {found:?}"
                    ));
                }
                total[i] += found[1];
            }
        }
    }
    Ok(format!(
        "V <= 6, E <= {}: {} even and {} odd nonzero classes",
        CAPS.1, total[0], total[1]
    ))
}

fn determinism(first: &[(Parity, SuiteReport)]) -> Outcome {
    for (parity, r) in first {
        let again = run_suite(r.suite, &config(*parity)).map_err(|e| e.to_string())?;
        let (a, b) = (r.to_json(), again.to_json());
        if a != b {
            return Err(format!("{} [{parity}] reports differ", r.suite));
        }
        let third = run_suite(r.suite, &config(*parity))
            .map_err(|e| e.to_string())?
            .to_json();
        if third != a {
            return Err(format!("{} [{parity}] third run differs", r.suite));
        }
    }
    Ok(format!(
        "{} reports, each reproduced byte for byte",
        first.len()
    ))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut reports: Vec<(Parity, SuiteReport)> = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for suite in Suite::ALL {
            reports.push((
                parity,
                run_suite(suite, &config(parity)).expect("caps are valid"),
            ));
        }
    }
    let get = |suite: Suite, parity: Parity| {
        &reports
            .iter()
            .find(|(p, r)| *p == parity && r.suite == suite)
            .expect("suite ran")
            .1
    };
    let both = |suite: Suite, f: fn(&SuiteReport) -> Outcome| {
        all([Parity::Even, Parity::Odd].map(|p| f(get(suite, p))))
    };

    let criteria: Vec<(&str, Outcome)> = vec![
        (
            "PBW map is a monomorphism (even)",
            pbw_monomorphism(get(Suite::Pbw, Parity::Even)),
        ),
        (
            "sigma vanishes on relations and respects STU triples",
            both(Suite::Pbw, sigma_relations),
        ),
        (
            "sigma is independent of the word",
            both(Suite::SigmaWords, word_independence),
        ),
        (
            "kappa is independent of choices up to 4T",
            both(Suite::Kappa, kappa_choices),
        ),
        (
            "iota is an isomorphism",
            both(Suite::Kappa, iota_isomorphisms),
        ),
        (
            "IHX rows are sums of STU rows",
            both(Suite::IhxInStu, ihx_in_stu),
        ),
        (
            "sliding a hair across chords is a sum of 4T rows",
            both(Suite::Sliding, sliding),
        ),
        ("enumeration matches brute force", enumeration()),
        ("reports are deterministic", determinism(&reports)),
    ];

    let mut failed = 0;
    for (i, (name, outcome)) in criteria.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed at V <= {}, E <= {} in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        CAPS.0,
        CAPS.1,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
