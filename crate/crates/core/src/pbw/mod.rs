//! The maps χ, σ, ι and κ.
//!
//! `χ` and `ι` are inclusions of generators. `σ` is the averaged left inverse
//! of `χ` built by induction on the number of external vertices, and `κ`
//! rewrites a graph into chord diagrams by repeated STU resolution.
//!
//! Leg permutations act on the row of leg positions of a fixed coloring `D`:
//! `(πD)_u` moves the leg at position `j` to position `π(j)`, and
//! `πD = sign(π) (πD)_u`. A word `[i_1, ..., i_n]` stands for
//! `U_{i_1} ⋯ U_{i_n}`, so `U_{i_n}` acts first.

mod kappa;
mod orbit;
mod sigma;

pub use kappa::{kappa, kappa_vector, KappaStrategy};
pub use orbit::{Orbit, OrbitState};
pub use sigma::{LambdaTable, LegOrder, SigmaEngine};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{ColoredGraph, GraphClass, GraphError};
use crate::linalg::{DiagramVector, LinalgError};
use crate::relations::{merge_vertices, swap_legs, LegRow, RelationError};
use crate::spaces::SpaceError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
    #[error("{0} is not a hairy graph")]
    NotHairy(String),
    #[error("{0} is not a chord diagram")]
    NotChord(String),
    #[error("not a permutation of {0} leg positions")]
    NotPermutation(usize),
    #[error("the permutation moves position {0} to another solid component")]
    CrossesComponents(usize),
    #[error("position {0} is not followed by a position on the same solid component")]
    InvalidLetter(usize),
    #[error("graph lies in component (V={0}, E={1}), not in the engine's component")]
    WrongComponent(usize, usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn check_keys(v: &DiagramVector, class: GraphClass) -> Result<(), PbwError> {
    for k in v.keys() {
        if !k.in_class(class) {
            let cert = k.certificate();
            return Err(match class {
                GraphClass::Chord => PbwError::NotChord(cert),
                _ => PbwError::NotHairy(cert),
            });
        }
    }
    Ok(())
}

/// Inclusion of hairy graphs among BCR graphs.
pub fn chi(v: &DiagramVector) -> Result<DiagramVector, PbwError> {
    check_keys(v, GraphClass::Hairy)?;
    Ok(v.clone())
}

/// Inclusion of chord diagrams among BCR graphs.
pub fn iota(v: &DiagramVector) -> Result<DiagramVector, PbwError> {
    check_keys(v, GraphClass::Chord)?;
    Ok(v.clone())
}

/// Adjacent transpositions `U_i`, written left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TranspositionWord(pub Vec<usize>);

impl TranspositionWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks every letter against the leg row.
    pub fn check(&self, row: &LegRow) -> Result<(), PbwError> {
        match self.0.iter().find(|&&i| row.pair(i).is_err()) {
            Some(&i) => Err(PbwError::InvalidLetter(i)),
            None => Ok(()),
        }
    }

    /// `arrangement[pos]` is the original position of the leg that the word
    /// moves to `pos`.
    pub fn arrangement(&self, k: usize) -> Vec<usize> {
        let mut arr: Vec<usize> = (0..k).collect();
        for &i in self.0.iter().rev() {
            arr.swap(i, i + 1);
        }
        arr
    }

    /// The permutation `π` with `π(j)` the final position of leg `j`.
    pub fn permutation(&self, k: usize) -> Vec<usize> {
        invert(&self.arrangement(k))
    }
}

pub(crate) fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// A word for `π` by adjacent-transposition sorting.
///
/// Bubble sort turns the arrangement `π^{-1}` into the identity; since every
/// letter is an involution, the swaps in the order they happen form a word
/// whose rightmost letter acts first.
pub fn word_for(perm: &[usize], d: &ColoredGraph) -> Result<TranspositionWord, PbwError> {
    word_for_row(perm, &LegRow::of(d))
}

pub fn word_for_row(perm: &[usize], row: &LegRow) -> Result<TranspositionWord, PbwError> {
    let k = row.len();
    let mut seen = vec![false; k];
    if perm.len() != k
        || perm
            .iter()
            .any(|&p| p >= k || std::mem::replace(&mut seen[p], true))
    {
        return Err(PbwError::NotPermutation(k));
    }
    if let Some(j) = (0..k).find(|&j| row.component[j] != row.component[perm[j]]) {
        return Err(PbwError::CrossesComponents(j));
    }
    let mut arr = invert(perm);
    let mut word = Vec::new();
    for end in (1..k).rev() {
        for i in 0..end {
            if arr[i] > arr[i + 1] {
                arr.swap(i, i + 1);
                word.push(i);
            }
        }
    }
    Ok(TranspositionWord(word))
}

/// `(wD)_u` and `sign(w)`.
pub fn apply_word(d: &ColoredGraph, w: &TranspositionWord) -> Result<(ColoredGraph, i8), PbwError> {
    apply_word_row(d, &LegRow::of(d), w)
}

pub(crate) fn apply_word_row(
    d: &ColoredGraph,
    row: &LegRow,
    w: &TranspositionWord,
) -> Result<(ColoredGraph, i8), PbwError> {
    w.check(row)?;
    let mut g = d.clone();
    let mut sign = 1i8;
    for &i in w.0.iter().rev() {
        g = swap_legs(&g, row.vertices[i], row.vertices[i + 1]);
        sign = -sign;
    }
    Ok((g, sign))
}

/// `Γ_D(w) = Σ_l S_{i_l} U_{i_{l+1}} ⋯ U_{i_n} D`, so that
/// `D - wD = Γ_D(w)` modulo STU rows.
pub fn gamma(d: &ColoredGraph, w: &TranspositionWord) -> Result<DiagramVector, PbwError> {
    gamma_row(d, &LegRow::of(d), w)
}

pub(crate) fn gamma_row(
    d: &ColoredGraph,
    row: &LegRow,
    w: &TranspositionWord,
) -> Result<DiagramVector, PbwError> {
    w.check(row)?;
    let mut out = DiagramVector::zero();
    let mut g = d.clone();
    let mut sign = 1i64;
    for &i in w.0.iter().rev() {
        let (p, q) = (row.vertices[i], row.vertices[i + 1]);
        out.add_graph(&merge_vertices(&g, p, q)?, &crate::linalg::int(sign));
        g = swap_legs(&g, p, q);
        sign = -sign;
    }
    Ok(out)
}
