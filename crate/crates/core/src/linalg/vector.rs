use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::Serialize;

use super::{format_rational, int, Rational};
use crate::graph::{canonicalize, CanonicalClass, ColoredGraph};

/// A finite ℚ-combination of canonical graphs. Zero coefficients are never
/// stored and every key is a canonical representative.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DiagramVector {
    terms: BTreeMap<ColoredGraph, Rational>,
}

impl DiagramVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The class of a colored graph: `sign * canonical`, or zero.
    pub fn from_graph(g: &ColoredGraph) -> Self {
        let mut v = Self::zero();
        v.add_graph(g, &Rational::one());
        v
    }

    /// A canonical key with coefficient one; the caller guarantees canonicity.
    pub fn basis_vector(key: ColoredGraph) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(key, Rational::one());
        DiagramVector { terms }
    }

    /// Adds `coeff * g` after canonicalizing `g`.
    pub fn add_graph(&mut self, g: &ColoredGraph, coeff: &Rational) {
        if let CanonicalClass::Graph { canonical, sign } = canonicalize(g) {
            self.add_term(canonical, &(coeff * int(sign as i64)));
        }
    }

    /// Adds `coeff * key` for a key already in canonical form.
    pub fn add_term(&mut self, key: ColoredGraph, coeff: &Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + coeff;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &DiagramVector, coeff: &Rational) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * coeff));
        }
    }

    pub fn scaled(&self, coeff: &Rational) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        DiagramVector {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * coeff))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &ColoredGraph) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ColoredGraph, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &ColoredGraph> {
        self.terms.keys()
    }

    /// Terms as `(coefficient, certificate)` pairs, sorted by certificate.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .terms
            .iter()
            .map(|(k, v)| (format_rational(v), k.certificate()))
            .collect();
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }
}

impl FromIterator<(ColoredGraph, Rational)> for DiagramVector {
    fn from_iter<I: IntoIterator<Item = (ColoredGraph, Rational)>>(iter: I) -> Self {
        let mut v = DiagramVector::zero();
        for (k, c) in iter {
            v.add_term(k, &c);
        }
        v
    }
}

impl Add for &DiagramVector {
    type Output = DiagramVector;
    fn add(self, rhs: &DiagramVector) -> DiagramVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &DiagramVector {
    type Output = DiagramVector;
    fn sub(self, rhs: &DiagramVector) -> DiagramVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &DiagramVector {
    type Output = DiagramVector;
    fn neg(self) -> DiagramVector {
        self.scaled(&-Rational::one())
    }
}

impl fmt::Display for DiagramVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, cert)) in self.to_pairs().iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})[{cert}]")?;
        }
        Ok(())
    }
}

impl Serialize for DiagramVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs = self.to_pairs();
        let mut seq = serializer.serialize_seq(Some(pairs.len()))?;
        for p in &pairs {
            seq.serialize_element(p)?;
        }
        seq.end()
    }
}
