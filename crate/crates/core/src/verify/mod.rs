//! Verification suites.
//!
//! Each suite runs over the graded components within the caps and produces a
//! [`SuiteReport`]: instance counts per check, failures with the offending
//! certificates and a command line that replays them, and span witnesses
//! that re-verify by plain vector arithmetic. Reports are deterministic: no
//! timings, and components appear in increasing `(V, E)` order.

mod kappa;
mod pbw;
mod spans;
mod words;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::conventions::{Conventions, CONVENTIONS};
use crate::graph::Parity;
use crate::linalg::{RelationKind, Witness};
use crate::relations::Fault;
use crate::spaces::{Caps, Component, SpaceError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Pbw,
    SigmaWords,
    Kappa,
    IhxInStu,
    Sliding,
    Question,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Pbw,
        Suite::SigmaWords,
        Suite::Kappa,
        Suite::IhxInStu,
        Suite::Sliding,
        Suite::Question,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Pbw => "pbw",
            Suite::SigmaWords => "sigma-words",
            Suite::Kappa => "kappa",
            Suite::IhxInStu => "ihx-in-stu",
            Suite::Sliding => "sliding",
            Suite::Question => "question",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.as_str()).collect();
                format!("unknown suite `{s}` (expected {})", names.join("|"))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// Everything that determines a run; recorded verbatim in the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub parity: Parity,
    pub caps: Caps,
    /// Restricts the run to one `(V, E)` component.
    pub component: Option<(usize, usize)>,
    /// Seed of the third `κ` strategy.
    pub kappa_seed: u64,
    /// `κ` is compared on graphs with at most this many internal vertices.
    pub max_internal: usize,
    pub max_word_length: usize,
    /// Word checks cover graphs whose solid components are at most this long.
    pub max_solid_length: usize,
    pub max_chords: usize,
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            parity: Parity::Even,
            caps: Caps::default(),
            component: None,
            kappa_seed: 1,
            max_internal: 3,
            max_word_length: 5,
            max_solid_length: 4,
            max_chords: 2,
            fault: None,
        }
    }
}

impl SuiteConfig {
    pub fn new(parity: Parity, caps: Caps) -> Self {
        SuiteConfig {
            parity,
            caps,
            ..Self::default()
        }
    }

    /// The selected components, in increasing order.
    pub fn components(&self) -> Result<Vec<(usize, usize)>, VerifyError> {
        match self.component {
            Some((v, e)) => {
                self.caps.check(v, e)?;
                Ok(vec![(v, e)])
            }
            None => Ok(self.caps.components()),
        }
    }

    /// The command that reruns `suite` on one component.
    pub fn replay(&self, suite: Suite, vertices: usize, edges: usize) -> String {
        let mut cmd = format!(
            "bcr verify --suite {suite} --max-vertices {} --max-edges {} --parity {} --component {vertices},{edges}",
            self.caps.max_vertices, self.caps.max_edges, self.parity
        );
        let defaults = SuiteConfig::default();
        if self.kappa_seed != defaults.kappa_seed {
            cmd.push_str(&format!(" --kappa-seed {}", self.kappa_seed));
        }
        if let Some(f) = self.fault {
            cmd.push_str(&format!(" --fault-inject {}", f.as_str()));
        }
        cmd
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: &'static str,
    pub certificates: Vec<String>,
    pub detail: String,
    pub replay: String,
}

/// A span-membership witness, or the telescoping data of a sliding
/// configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessRecord {
    Span {
        check: &'static str,
        /// What was shown to lie in the span.
        target: String,
        /// The family whose rows the coefficients refer to.
        relation: RelationKind,
        witness: Witness,
    },
    Telescoping(spans::TelescopingRecord),
}

/// Measured quantities that are reported rather than asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub check: &'static str,
    pub values: BTreeMap<&'static str, usize>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub vertices: usize,
    pub edges: usize,
    pub instances: BTreeMap<&'static str, usize>,
    pub failures: Vec<Failure>,
    pub witnesses: Vec<WitnessRecord>,
    pub evidence: Vec<Evidence>,
    #[serde(skip)]
    replay: String,
}

impl ComponentReport {
    fn new(vertices: usize, edges: usize, replay: String) -> Self {
        ComponentReport {
            vertices,
            edges,
            instances: BTreeMap::new(),
            failures: Vec::new(),
            witnesses: Vec::new(),
            evidence: Vec::new(),
            replay,
        }
    }

    /// An empty report for one work item, merged back with [`Self::absorb`].
    fn fragment(&self) -> Self {
        Self::new(self.vertices, self.edges, self.replay.clone())
    }

    fn absorb(&mut self, other: ComponentReport) {
        for (k, n) in other.instances {
            *self.instances.entry(k).or_default() += n;
        }
        self.failures.extend(other.failures);
        self.witnesses.extend(other.witnesses);
        self.evidence.extend(other.evidence);
    }

    /// Counts one instance of `check`, recording a failure unless `ok`.
    fn check(
        &mut self,
        check: &'static str,
        ok: bool,
        certificates: &[String],
        detail: impl FnOnce() -> String,
    ) -> bool {
        *self.instances.entry(check).or_default() += 1;
        if !ok {
            self.failures.push(Failure {
                check,
                certificates: certificates.to_vec(),
                detail: detail(),
                replay: self.replay.clone(),
            });
        }
        ok
    }

    pub fn instance_count(&self) -> usize {
        self.instances.values().sum()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub format_version: u32,
    pub suite: Suite,
    pub config: SuiteConfig,
    pub conventions: Conventions,
    pub components: Vec<ComponentReport>,
    pub instances: usize,
    pub failure_count: usize,
    pub passed: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &Failure> {
        self.components.iter().flat_map(|c| c.failures.iter())
    }

    /// Total instances of one check over all components.
    pub fn count(&self, check: &str) -> usize {
        self.components
            .iter()
            .filter_map(|c| c.instances.get(check))
            .sum()
    }

    pub fn witness_count(&self) -> usize {
        self.components.iter().map(|c| c.witnesses.len()).sum()
    }

    pub fn evidence(&self) -> impl Iterator<Item = (&ComponentReport, &Evidence)> {
        self.components
            .iter()
            .flat_map(|c| c.evidence.iter().map(move |e| (c, e)))
    }

    /// One line: suite, parity, caps, counts and verdict.
    pub fn summary(&self) -> String {
        format!(
            "{} [{}, V<={}, E<={}]: {} instances, {} witnesses, {} failures: {}",
            self.suite,
            self.config.parity,
            self.config.caps.max_vertices,
            self.config.caps.max_edges,
            self.instances,
            self.witness_count(),
            self.failure_count,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// Runs one suite. Components are built and their shared state prepared
/// one at a time, then checked in parallel.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport, VerifyError> {
    let selected = config.components()?;
    let components: Vec<Arc<Component>> = selected
        .iter()
        .map(|&(v, e)| {
            let c = Arc::new(Component::new(v, e, config.parity, config.fault));
            prepare(suite, &c);
            log::debug!("{suite}: prepared V={v} E={e}");
            c
        })
        .collect();
    let reports: Vec<ComponentReport> = components
        .par_iter()
        .map(|c| {
            let mut report = ComponentReport::new(
                c.vertices,
                c.edges,
                config.replay(suite, c.vertices, c.edges),
            );
            match suite {
                Suite::Pbw => pbw::run_pbw(c, &mut report),
                Suite::Question => pbw::run_question(c, &mut report),
                Suite::SigmaWords => words::run(c, config, &mut report),
                Suite::Kappa => kappa::run(c, config, &mut report),
                Suite::IhxInStu => spans::run_ihx_in_stu(c, &mut report),
                Suite::Sliding => spans::run_sliding(c, config, &mut report),
            }
            if !report.passed() {
                log::warn!(
                    "{suite}: {} failures at V={} E={}",
                    report.failures.len(),
                    c.vertices,
                    c.edges
                );
            }
            report
        })
        .collect();
    let instances = reports.iter().map(ComponentReport::instance_count).sum();
    let failure_count = reports.iter().map(|r| r.failures.len()).sum();
    Ok(SuiteReport {
        format_version: FORMAT_VERSION,
        suite,
        config: config.clone(),
        conventions: CONVENTIONS,
        components: reports,
        instances,
        failure_count,
        passed: failure_count == 0,
    })
}

/// Builds every lazily computed piece a suite reads, so that the parallel
/// phase never initializes shared state.
fn prepare(suite: Suite, c: &Component) {
    match suite {
        Suite::Pbw => pbw::prepare_pbw(c),
        Suite::Question => pbw::prepare_question(c),
        Suite::SigmaWords => words::prepare(c),
        Suite::Kappa => kappa::prepare(c),
        Suite::IhxInStu => spans::prepare_ihx_in_stu(c),
        Suite::Sliding => spans::prepare_sliding(c),
    }
}
