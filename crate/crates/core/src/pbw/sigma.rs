//! `σ`: BCR graphs to the hairy quotient, by averaging over leg permutations.
//!
//! On a hairy graph `σ` is the projection to the quotient. Otherwise
//! `σ(D) = |𝔖_k(D)|^{-1} Σ_π Λ_D(π)` with `Λ_D(π) = σ(Γ_D(π))`, evaluated along
//! a breadth-first spanning tree of the orbit:
//! `Λ_D(U_i π) = Λ_D(π) + sign(π) σ(S_i (πD)_u)`.
//! Every graph reached has fewer external vertices, so the recursion ends at
//! hairy graphs. Values live in the normal-form coordinates of the hairy
//! quotient of one graded component.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::orbit::Orbit;
use super::{gamma_row, PbwError, TranspositionWord};
use crate::graph::{canonicalize, ensure_valid, CanonicalClass, ColoredGraph, GraphClass};
use crate::linalg::{ratio, DiagramVector};
use crate::relations::{merge_vertices, LegRow};
use crate::spaces::{Component, Space, SpaceId};

/// Reading direction of every solid component.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum LegOrder {
    /// From the endpoint with the smaller vertex index.
    #[default]
    Forward,
    Reversed,
}

impl LegOrder {
    pub fn row(self, g: &ColoredGraph) -> LegRow {
        match self {
            LegOrder::Forward => LegRow::of(g),
            LegOrder::Reversed => LegRow::reversed_of(g),
        }
    }
}

/// Memoized `σ` for one graded component.
#[derive(Debug)]
pub struct SigmaEngine {
    component: Arc<Component>,
    space: Arc<Space>,
    order: LegOrder,
    memo: RwLock<HashMap<ColoredGraph, DiagramVector>>,
}

/// `sign(π) σ(S_i (πD)_u)` for every orbit state and letter, so that
/// `Λ_D(w)` of any word is a sum of table entries.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    pub orbit: Orbit,
    terms: Vec<Vec<DiagramVector>>,
}

impl LambdaTable {
    pub fn term(&self, state: usize, letter: usize) -> &DiagramVector {
        &self.terms[state][letter]
    }

    /// `Λ_D(w)`.
    pub fn eval(&self, w: &TranspositionWord) -> Result<DiagramVector, PbwError> {
        let mut total = DiagramVector::zero();
        let mut state = 0;
        for &i in w.letters().iter().rev() {
            let a = self
                .orbit
                .letter_index(i)
                .ok_or(PbwError::InvalidLetter(i))?;
            total = &total + &self.terms[state][a];
            state = self.orbit.states[state].next[a];
        }
        Ok(total)
    }

    /// The orbit state reached by `w`.
    pub fn state_of(&self, w: &TranspositionWord) -> Result<usize, PbwError> {
        let mut state = 0;
        for &i in w.letters().iter().rev() {
            let a = self
                .orbit
                .letter_index(i)
                .ok_or(PbwError::InvalidLetter(i))?;
            state = self.orbit.states[state].next[a];
        }
        Ok(state)
    }
}

impl SigmaEngine {
    /// Builds the hairy quotient of `component` up front, so later calls only
    /// read shared state.
    pub fn new(component: Arc<Component>) -> Self {
        Self::with_order(component, LegOrder::Forward)
    }

    pub fn with_order(component: Arc<Component>, order: LegOrder) -> Self {
        let space = component.space(SpaceId::B);
        SigmaEngine {
            component,
            space,
            order,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn component(&self) -> &Component {
        &self.component
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn order(&self) -> LegOrder {
        self.order
    }

    /// Number of memoized canonical graphs.
    pub fn memo_len(&self) -> usize {
        self.memo.read().expect("sigma memo lock").len()
    }

    fn check_component(&self, g: &ColoredGraph) -> Result<(), PbwError> {
        if g.vertex_count() != self.component.vertices
            || g.edge_count() != self.component.edges
            || g.parity() != self.component.parity
        {
            return Err(PbwError::WrongComponent(g.vertex_count(), g.edge_count()));
        }
        Ok(())
    }

    /// Normal form in the hairy quotient of a vector of hairy graphs.
    pub fn project(&self, v: &DiagramVector) -> Result<DiagramVector, PbwError> {
        super::check_keys(v, GraphClass::Hairy)?;
        Ok(self.space.normal_form(v)?)
    }

    /// `σ` of the class of `g`.
    pub fn sigma(&self, g: &ColoredGraph) -> Result<DiagramVector, PbwError> {
        self.check_component(g)?;
        ensure_valid(g, GraphClass::Bcr)?;
        Ok(self.sigma_of(g))
    }

    pub fn sigma_vector(&self, v: &DiagramVector) -> Result<DiagramVector, PbwError> {
        let mut out = DiagramVector::zero();
        for (k, c) in v.iter() {
            self.check_component(k)?;
            out.add_scaled(&self.sigma_canonical(k), c);
        }
        Ok(out)
    }

    /// The defining formula on the given coloring itself, without first
    /// passing to the canonical class; on a vanishing graph this must give
    /// zero by itself.
    pub fn sigma_unreduced(&self, g: &ColoredGraph) -> Result<DiagramVector, PbwError> {
        self.check_component(g)?;
        ensure_valid(g, GraphClass::Bcr)?;
        if g.in_class(GraphClass::Hairy) {
            return self.project(&DiagramVector::from_graph(g));
        }
        Ok(self.average(g))
    }

    /// `Λ_D(w) = σ(Γ_D(w))` computed from the word directly.
    pub fn lambda(
        &self,
        d: &ColoredGraph,
        w: &TranspositionWord,
    ) -> Result<DiagramVector, PbwError> {
        self.check_component(d)?;
        let gamma = gamma_row(d, &self.order.row(d), w)?;
        self.sigma_vector(&gamma)
    }

    pub fn lambda_table(&self, d: &ColoredGraph) -> Result<LambdaTable, PbwError> {
        self.check_component(d)?;
        ensure_valid(d, GraphClass::Bcr)?;
        let orbit = Orbit::new(d, self.order.row(d));
        let terms = (0..orbit.len())
            .map(|s| {
                (0..orbit.adjacent.len())
                    .map(|a| self.term(&orbit, s, a))
                    .collect()
            })
            .collect();
        Ok(LambdaTable { orbit, terms })
    }

    fn sigma_of(&self, g: &ColoredGraph) -> DiagramVector {
        match canonicalize(g) {
            CanonicalClass::Zero => DiagramVector::zero(),
            CanonicalClass::Graph { canonical, sign } => {
                let v = self.sigma_canonical(&canonical);
                if sign == 1 {
                    v
                } else {
                    -&v
                }
            }
        }
    }

    fn sigma_canonical(&self, g: &ColoredGraph) -> DiagramVector {
        if let Some(v) = self.memo.read().expect("sigma memo lock").get(g) {
            return v.clone();
        }
        let v = if g.in_class(GraphClass::Hairy) {
            self.space
                .normal_form(&DiagramVector::basis_vector(g.clone()))
                .expect("hairy basis graph")
        } else {
            self.average(g)
        };
        self.memo
            .write()
            .expect("sigma memo lock")
            .entry(g.clone())
            .or_insert(v)
            .clone()
    }

    fn term(&self, orbit: &Orbit, state: usize, letter: usize) -> DiagramVector {
        let s = &orbit.states[state];
        let i = orbit.adjacent[letter];
        let merged = merge_vertices(&s.graph, orbit.row.vertices[i], orbit.row.vertices[i + 1])
            .expect("orbit letters are solid-adjacent");
        let v = self.sigma_of(&merged);
        if s.sign == 1 {
            v
        } else {
            -&v
        }
    }

    fn average(&self, g: &ColoredGraph) -> DiagramVector {
        let orbit = Orbit::new(g, self.order.row(g));
        let mut lambdas: Vec<DiagramVector> = Vec::with_capacity(orbit.len());
        lambdas.push(DiagramVector::zero());
        let mut total = DiagramVector::zero();
        for s in 1..orbit.len() {
            let (p, a) = orbit.states[s].parent.expect("non-root state");
            let l = &lambdas[p] + &self.term(&orbit, p, a);
            total = &total + &l;
            lambdas.push(l);
        }
        total.scaled(&ratio(1, orbit.len() as i64))
    }
}
