use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{format_rational, normalize_row, DiagramVector, LinalgError, Rational, SparseRow};
use crate::graph::ColoredGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RelationKind {
    #[serde(rename = "IHX")]
    Ihx,
    #[serde(rename = "STU")]
    Stu,
    #[serde(rename = "Chord")]
    Chord,
    #[serde(rename = "4T")]
    FourT,
    #[serde(rename = "Sliding")]
    Sliding,
}

impl RelationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RelationKind::Ihx => "IHX",
            RelationKind::Stu => "STU",
            RelationKind::Chord => "Chord",
            RelationKind::FourT => "4T",
            RelationKind::Sliding => "Sliding",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rows over a fixed ordered basis of canonical graphs.
///
/// Rows are stored as pushed; a row that is a scalar multiple of an existing
/// one is dropped.
#[derive(Debug, Clone)]
pub struct RelationSet {
    basis: Arc<Vec<ColoredGraph>>,
    index: Arc<HashMap<ColoredGraph, usize>>,
    rows: Vec<SparseRow>,
    tags: Vec<RelationKind>,
    sources: Vec<Option<String>>,
    seen: HashSet<SparseRow>,
}

impl RelationSet {
    /// The basis is sorted by certificate.
    pub fn new(mut basis: Vec<ColoredGraph>) -> Self {
        basis.sort_by_cached_key(|g| g.certificate());
        basis.dedup();
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i))
            .collect();
        RelationSet {
            basis: Arc::new(basis),
            index: Arc::new(index),
            rows: Vec::new(),
            tags: Vec::new(),
            sources: Vec::new(),
            seen: HashSet::new(),
        }
    }

    /// An empty set over the same basis.
    pub fn empty_like(&self) -> Self {
        RelationSet {
            basis: Arc::clone(&self.basis),
            index: Arc::clone(&self.index),
            rows: Vec::new(),
            tags: Vec::new(),
            sources: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn basis(&self) -> &[ColoredGraph] {
        &self.basis
    }

    pub fn index_of(&self, g: &ColoredGraph) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &ColoredGraph) -> bool {
        self.index.contains_key(g)
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn tags(&self) -> &[RelationKind] {
        &self.tags
    }

    pub fn sources(&self) -> &[Option<String>] {
        &self.sources
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_sparse(&self, v: &DiagramVector) -> Result<SparseRow, LinalgError> {
        let mut row: SparseRow = Vec::with_capacity(v.len());
        for (k, c) in v.iter() {
            let i = self
                .index_of(k)
                .ok_or_else(|| LinalgError::NotInBasis(k.certificate()))?;
            row.push((i, c.clone()));
        }
        row.sort_by_key(|e| e.0);
        Ok(row)
    }

    pub fn to_vector(&self, row: &SparseRow) -> DiagramVector {
        row.iter()
            .map(|(i, c)| (self.basis[*i].clone(), c.clone()))
            .collect()
    }

    pub fn row_vector(&self, i: usize) -> DiagramVector {
        self.to_vector(&self.rows[i])
    }

    /// Adds a row; returns `false` for zero rows and duplicates.
    pub fn push(
        &mut self,
        v: &DiagramVector,
        tag: RelationKind,
        source: Option<String>,
    ) -> Result<bool, LinalgError> {
        let row = self.to_sparse(v)?;
        self.push_sparse(row, tag, source)
    }

    pub fn push_sparse(
        &mut self,
        row: SparseRow,
        tag: RelationKind,
        source: Option<String>,
    ) -> Result<bool, LinalgError> {
        if let Some(&(c, _)) = row.iter().find(|(c, _)| *c >= self.basis.len()) {
            return Err(LinalgError::ColumnOutOfRange {
                column: c,
                size: self.basis.len(),
            });
        }
        if row.is_empty() || !self.seen.insert(normalize_row(&row)) {
            return Ok(false);
        }
        self.rows.push(row);
        self.tags.push(tag);
        self.sources.push(source);
        Ok(true)
    }

    /// Appends all rows of `other`, which must share this basis.
    pub fn extend_from(&mut self, other: &RelationSet) {
        assert!(
            Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis,
            "basis mismatch"
        );
        for i in 0..other.len() {
            let _ = self.push_sparse(
                other.rows[i].clone(),
                other.tags[i],
                other.sources[i].clone(),
            );
        }
    }

    /// The rows whose keys all satisfy `keep`, re-expressed over the kept basis.
    pub fn restrict(&self, keep: impl Fn(&ColoredGraph) -> bool) -> RelationSet {
        let basis: Vec<ColoredGraph> = self.basis.iter().filter(|g| keep(g)).cloned().collect();
        let mut out = RelationSet::new(basis);
        for i in 0..self.len() {
            let v = self.row_vector(i);
            if v.keys().all(|k| out.contains(k)) {
                let _ = out.push(&v, self.tags[i], self.sources[i].clone());
            }
        }
        out
    }

    pub fn export(&self) -> MatrixExport {
        MatrixExport {
            format_version: 1,
            basis: self.basis.iter().map(|g| g.certificate()).collect(),
            rows: (0..self.len())
                .map(|i| RowExport {
                    tag: self.tags[i],
                    source: self.sources[i].clone(),
                    entries: self.rows[i]
                        .iter()
                        .map(|(c, v)| (*c, v.numer().to_string(), v.denom().to_string()))
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn format_row(&self, i: usize) -> String {
        self.rows[i]
            .iter()
            .map(|(c, v)| format!("{}*[{}]", format_rational(v), self.basis[*c].certificate()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// JSON shape of an exported relation matrix.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixExport {
    pub format_version: u32,
    pub basis: Vec<String>,
    pub rows: Vec<RowExport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowExport {
    pub tag: RelationKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    /// `(column, numerator, denominator)`.
    pub entries: Vec<(usize, String, String)>,
}

impl RowExport {
    pub fn coefficient(&self, k: usize) -> Rational {
        let (_, n, d) = &self.entries[k];
        Rational::new(n.parse().expect("integer"), d.parse().expect("integer"))
    }
}
