//! `κ`: repeated STU resolution into chord diagrams.
//!
//! Every intermediate term is a canonical graph, and the leg to resolve is
//! chosen on that canonical coloring, so the output depends only on the input
//! class and the strategy.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use super::PbwError;
use crate::graph::{ensure_valid, ColoredGraph, GraphClass};
use crate::linalg::DiagramVector;
use crate::relations::{kappa_step, resolvable_edges};

/// Which internal-to-external edge to resolve next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KappaStrategy {
    /// Smallest edge index.
    #[default]
    Min,
    /// Largest edge index.
    Max,
    /// Index chosen by hashing the seed with the graph certificate.
    Seeded(u64),
}

impl KappaStrategy {
    fn choose(self, g: &ColoredGraph, legs: &[usize]) -> usize {
        match self {
            KappaStrategy::Min => legs[0],
            KappaStrategy::Max => legs[legs.len() - 1],
            KappaStrategy::Seeded(seed) => {
                let h = splitmix(seed ^ fnv1a(g.certificate().as_bytes()));
                legs[(h % legs.len() as u64) as usize]
            }
        }
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl fmt::Display for KappaStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KappaStrategy::Min => f.write_str("min"),
            KappaStrategy::Max => f.write_str("max"),
            KappaStrategy::Seeded(n) => write!(f, "seed:{n}"),
        }
    }
}

impl FromStr for KappaStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min" => Ok(KappaStrategy::Min),
            "max" => Ok(KappaStrategy::Max),
            _ => s
                .strip_prefix("seed:")
                .and_then(|n| n.parse().ok())
                .map(KappaStrategy::Seeded)
                .ok_or_else(|| format!("unknown strategy `{s}` (expected min, max or seed:N)")),
        }
    }
}

/// `κ` of the class of one BCR graph.
pub fn kappa(d: &ColoredGraph, strategy: KappaStrategy) -> Result<DiagramVector, PbwError> {
    ensure_valid(d, GraphClass::Bcr)?;
    Ok(kappa_vector(&DiagramVector::from_graph(d), strategy))
}

/// `κ` extended linearly.
pub fn kappa_vector(v: &DiagramVector, strategy: KappaStrategy) -> DiagramVector {
    let mut memo = HashMap::new();
    let mut out = DiagramVector::zero();
    for (k, c) in v.iter() {
        out.add_scaled(&resolve(k, strategy, &mut memo), c);
    }
    out
}

fn resolve(
    g: &ColoredGraph,
    strategy: KappaStrategy,
    memo: &mut HashMap<ColoredGraph, DiagramVector>,
) -> DiagramVector {
    if g.internal_count() == 0 {
        return DiagramVector::basis_vector(g.clone());
    }
    if let Some(v) = memo.get(g) {
        return v.clone();
    }
    let legs = resolvable_edges(g);
    let e = strategy.choose(g, &legs);
    let step = kappa_step(g, e).expect("resolvable edge");
    let mut out = DiagramVector::zero();
    for (k, c) in step.iter() {
        out.add_scaled(&resolve(k, strategy, memo), c);
    }
    memo.insert(g.clone(), out.clone());
    out
}
