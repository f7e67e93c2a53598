use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use super::{axpy, DiagramVector, LinalgError, Rational, RelationSet, SparseRow};

/// Row echelon form over ℚ with one pivot per row at its leading column,
/// normalized to one. Reducing in increasing column order clears every pivot
/// column, which gives a unique representative of each coset.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    pivot_row: HashMap<usize, usize>,
    rows: Vec<SparseRow>,
    /// `rows[r] = Σ combos[r][i] * input_i` when tracking.
    combos: Option<Vec<SparseRow>>,
}

/// Coefficients `c_i` with `v = Σ c_i * row_i` over the input rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(serialize_with = "serialize_coefficients")]
    pub coefficients: Vec<(usize, Rational)>,
}

fn serialize_coefficients<S: serde::Serializer>(
    c: &[(usize, Rational)],
    s: S,
) -> Result<S::Ok, S::Error> {
    let v: Vec<(usize, String)> = c
        .iter()
        .map(|(i, q)| (*i, super::format_rational(q)))
        .collect();
    v.serialize(s)
}

impl Witness {
    /// Recomputes `Σ c_i * row_i` by plain arithmetic.
    pub fn evaluate(&self, set: &RelationSet) -> DiagramVector {
        let mut out = DiagramVector::zero();
        for (i, c) in &self.coefficients {
            out.add_scaled(&set.row_vector(*i), c);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

fn to_map(row: &SparseRow) -> BTreeMap<usize, Rational> {
    row.iter().cloned().collect()
}

fn sub_scaled(acc: &mut BTreeMap<usize, Rational>, coeff: &Rational, row: &[(usize, Rational)]) {
    for (j, v) in row {
        let e = acc.entry(*j).or_insert_with(Rational::zero);
        *e -= coeff * v;
        if e.is_zero() {
            acc.remove(j);
        }
    }
}

impl Echelon {
    pub fn new(set: &RelationSet, track: bool) -> Self {
        Self::from_rows(set.basis().len(), set.rows(), track)
    }

    pub fn from_rows(ncols: usize, input: &[SparseRow], track: bool) -> Self {
        let mut ech = Echelon {
            ncols,
            pivot_row: HashMap::new(),
            rows: Vec::new(),
            combos: if track { Some(Vec::new()) } else { None },
        };
        for (i, row) in input.iter().enumerate() {
            let (residue, used) = ech.reduce_inner(row, track);
            let Some((lead_col, lead)) = residue.first().cloned() else {
                continue;
            };
            let inv = lead.recip();
            let normalized: SparseRow = residue.iter().map(|(c, v)| (*c, v * &inv)).collect();
            if let Some(combos) = ech.combos.as_mut() {
                // residue = input_i - Σ used_j * input_j
                let own: SparseRow = vec![(i, Rational::one())];
                let combo = axpy(&own, &-Rational::one(), &used);
                combos.push(combo.iter().map(|(c, v)| (*c, v * &inv)).collect());
            }
            ech.pivot_row.insert(lead_col, ech.rows.len());
            ech.rows.push(normalized);
        }
        ech
    }

    /// Residue and, when tracking, the input combination that was removed.
    fn reduce_inner(&self, row: &SparseRow, track: bool) -> (SparseRow, SparseRow) {
        let mut acc = to_map(row);
        let mut used: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut cursor = 0;
        loop {
            let next = acc
                .range(cursor..)
                .find(|(c, _)| self.pivot_row.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, coeff)) = next else { break };
            cursor = col + 1;
            let r = self.pivot_row[&col];
            acc.remove(&col);
            sub_scaled(&mut acc, &coeff, &self.rows[r][1..]);
            if track {
                if let Some(combos) = &self.combos {
                    for (j, v) in &combos[r] {
                        let e = used.entry(*j).or_insert_with(Rational::zero);
                        *e += &coeff * v;
                        if e.is_zero() {
                            used.remove(j);
                        }
                    }
                }
            }
        }
        (acc.into_iter().collect(), used.into_iter().collect())
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Columns without a pivot, in increasing order: a quotient basis.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.is_pivot(*c)).collect()
    }

    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        self.reduce_inner(row, false).0
    }

    /// A witness when `row` lies in the span of the input rows.
    pub fn in_span(&self, row: &SparseRow) -> Option<Witness> {
        assert!(
            self.combos.is_some(),
            "in_span needs an echelon built with tracking"
        );
        let (residue, used) = self.reduce_inner(row, true);
        residue.is_empty().then_some(Witness { coefficients: used })
    }

    /// Normal form of a vector over `set`'s basis.
    pub fn normal_form(
        &self,
        set: &RelationSet,
        v: &DiagramVector,
    ) -> Result<DiagramVector, LinalgError> {
        let row = set.to_sparse(v)?;
        Ok(set.to_vector(&self.reduce(&row)))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, ratio};
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, int(v))).collect()
    }

    #[test]
    fn empty_and_multiples() {
        assert_eq!(Echelon::from_rows(3, &[], false).rank(), 0);
        let e = Echelon::from_rows(3, &[row(&[(0, 1), (2, 1)]), row(&[(0, 2), (2, 2)])], false);
        assert_eq!(e.rank(), 1);
        assert_eq!(e.free_columns(), vec![1, 2]);
    }

    #[test]
    fn witness_for_constructed_combination() {
        let rows = vec![
            row(&[(0, 1), (1, 1)]),
            row(&[(1, 1), (2, -1)]),
            row(&[(0, 2), (3, 5)]),
        ];
        let e = Echelon::from_rows(4, &rows, true);
        let v = axpy(&rows[0], &int(3), &rows[1]);
        let w = e.in_span(&v).unwrap();
        assert_eq!(w.coefficients, vec![(0, int(1)), (1, int(3))]);
        assert_eq!(e.in_span(&Vec::new()).unwrap().coefficients, vec![]);
        assert!(e.in_span(&row(&[(3, 1)])).is_none());
    }

    #[test]
    fn reduction_clears_pivots() {
        let rows = vec![row(&[(1, 2), (3, 1)]), row(&[(0, 1), (1, 1)])];
        let e = Echelon::from_rows(4, &rows, false);
        let r = e.reduce(&row(&[(0, 1)]));
        assert!(r.iter().all(|(c, _)| !e.is_pivot(*c)));
        assert_eq!(r, vec![(3, ratio(1, 2))]);
    }
}
