//! Exact linear algebra over ℚ on formal combinations of canonical graphs.

mod echelon;
mod rank;
mod relset;
mod vector;

pub use echelon::{Echelon, Witness};
pub use rank::{rank_of_rows, rank_of_set};
pub use relset::{MatrixExport, RelationKind, RelationSet, RowExport};
pub use vector::DiagramVector;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// A sparse row: strictly increasing column indices, no zero entries.
pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("graph {0} is not in the basis")]
    NotInBasis(String),
    #[error("column {column} is outside a basis of size {size}")]
    ColumnOutOfRange { column: usize, size: usize },
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `a += c * b` on sparse rows.
pub fn axpy(a: &SparseRow, c: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Scales a row so that its first entry is one.
pub fn normalize_row(row: &SparseRow) -> SparseRow {
    match row.first() {
        None => Vec::new(),
        Some((_, lead)) if lead.is_one() => row.clone(),
        Some((_, lead)) => {
            let inv = lead.recip();
            row.iter().map(|(c, v)| (*c, v * &inv)).collect()
        }
    }
}

/// Exact textual form: `n` or `n/d`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
