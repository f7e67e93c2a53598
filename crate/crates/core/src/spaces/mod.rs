//! Graded components, their bases, and the five quotient spaces.
//!
//! All relation families keep the vertex count `V` and edge count `E`, so every
//! space splits into components indexed by `(V, E)`.

mod enumerate;

pub use enumerate::{enumerate_underlying, partitions, splits, Underlying};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{ColoredGraph, GraphClass, Parity};
use crate::linalg::{rank_of_set, DiagramVector, Echelon, LinalgError, RelationKind, RelationSet};
use crate::relations::{chord_rows, four_t_rows, ihx_rows, stu_rows, Fault, GeneratedRow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("component (V={vertices}, E={edges}) exceeds the caps V <= {max_vertices}, E <= {max_edges}")]
    CapsExceeded {
        vertices: usize,
        edges: usize,
        max_vertices: usize,
        max_edges: usize,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_vertices: 8,
            max_edges: 8,
        }
    }
}

impl Caps {
    pub fn new(max_vertices: usize, max_edges: usize) -> Self {
        Caps {
            max_vertices,
            max_edges,
        }
    }

    pub fn check(&self, vertices: usize, edges: usize) -> Result<(), SpaceError> {
        if vertices > self.max_vertices || edges > self.max_edges {
            return Err(SpaceError::CapsExceeded {
                vertices,
                edges,
                max_vertices: self.max_vertices,
                max_edges: self.max_edges,
            });
        }
        Ok(())
    }

    /// Components `(V, E)` within the caps that contain at least one graph
    /// shape, in increasing order.
    pub fn components(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 1..=self.max_vertices {
            for e in 0..=self.max_edges {
                if !splits(v, e).is_empty() {
                    out.push((v, e));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GradedComponent {
    pub vertices: usize,
    pub edges: usize,
    pub parity: Parity,
    pub class: GraphClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SpaceId {
    B,
    A,
    Abar,
    Ac,
    Acbar,
}

impl SpaceId {
    pub const ALL: [SpaceId; 5] = [
        SpaceId::B,
        SpaceId::A,
        SpaceId::Abar,
        SpaceId::Ac,
        SpaceId::Acbar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SpaceId::B => "B",
            SpaceId::A => "A",
            SpaceId::Abar => "Abar",
            SpaceId::Ac => "Ac",
            SpaceId::Acbar => "Acbar",
        }
    }

    pub fn class(self) -> GraphClass {
        match self {
            SpaceId::B => GraphClass::Hairy,
            SpaceId::A | SpaceId::Abar => GraphClass::Bcr,
            SpaceId::Ac | SpaceId::Acbar => GraphClass::Chord,
        }
    }

    pub fn relation_kinds(self) -> &'static [RelationKind] {
        match self {
            SpaceId::B => &[RelationKind::Ihx],
            SpaceId::A => &[RelationKind::Ihx, RelationKind::Stu],
            SpaceId::Abar => &[RelationKind::Ihx, RelationKind::Stu, RelationKind::Chord],
            SpaceId::Ac => &[RelationKind::FourT],
            SpaceId::Acbar => &[RelationKind::FourT, RelationKind::Chord],
        }
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SpaceId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SpaceId::ALL
            .into_iter()
            .find(|x| x.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown space `{s}` (expected B, A, Abar, Ac or Acbar)"))
    }
}

/// A quotient space restricted to one component.
#[derive(Debug)]
pub struct Space {
    pub id: SpaceId,
    pub relations: RelationSet,
    pub echelon: Echelon,
}

impl Space {
    fn new(id: SpaceId, relations: RelationSet) -> Self {
        let echelon = Echelon::new(&relations, false);
        Space {
            id,
            relations,
            echelon,
        }
    }

    pub fn basis(&self) -> &[ColoredGraph] {
        self.relations.basis()
    }

    pub fn dimension(&self) -> usize {
        self.basis().len() - self.echelon.rank()
    }

    /// Coset representatives: basis graphs at columns without a pivot.
    pub fn quotient_basis(&self) -> Vec<ColoredGraph> {
        self.echelon
            .free_columns()
            .into_iter()
            .map(|c| self.basis()[c].clone())
            .collect()
    }

    pub fn normal_form(&self, v: &DiagramVector) -> Result<DiagramVector, LinalgError> {
        self.echelon.normal_form(&self.relations, v)
    }
}

/// Everything computed about one `(V, E)` component, built lazily.
#[derive(Debug)]
pub struct Component {
    pub vertices: usize,
    pub edges: usize,
    pub parity: Parity,
    fault: Option<Fault>,
    underlying: Vec<Underlying>,
    all: RelationSet,
    families: [OnceLock<RelationSet>; 4],
    spaces: [OnceLock<Arc<Space>>; 5],
    tracked: [OnceLock<Arc<Echelon>>; 4],
}

fn family_index(kind: RelationKind) -> usize {
    match kind {
        RelationKind::Ihx => 0,
        RelationKind::Stu => 1,
        RelationKind::Chord => 2,
        RelationKind::FourT => 3,
        RelationKind::Sliding => panic!("sliding rows are not a generated family"),
    }
}

impl Component {
    pub fn new(vertices: usize, edges: usize, parity: Parity, fault: Option<Fault>) -> Self {
        let underlying = enumerate_underlying(vertices, edges, parity);
        let basis = underlying
            .iter()
            .filter(|u| !u.zero)
            .map(|u| u.graph.clone())
            .collect();
        Component {
            vertices,
            edges,
            parity,
            fault,
            underlying,
            all: RelationSet::new(basis),
            families: Default::default(),
            spaces: Default::default(),
            tracked: Default::default(),
        }
    }

    /// Every isomorphism class, vanishing ones included.
    pub fn underlying(&self) -> &[Underlying] {
        &self.underlying
    }

    pub fn underlying_graphs(&self) -> Vec<ColoredGraph> {
        self.underlying.iter().map(|u| u.graph.clone()).collect()
    }

    /// Nonzero canonical BCR graphs, sorted by certificate.
    pub fn bcr_basis(&self) -> &[ColoredGraph] {
        self.all.basis()
    }

    pub fn basis(&self, class: GraphClass) -> Vec<ColoredGraph> {
        self.bcr_basis()
            .iter()
            .filter(|g| g.in_class(class))
            .cloned()
            .collect()
    }

    /// An empty relation set over the BCR basis.
    pub fn empty_set(&self) -> RelationSet {
        self.all.empty_like()
    }

    pub fn generated(&self, kind: RelationKind) -> Vec<GeneratedRow> {
        let graphs = self.underlying_graphs();
        match kind {
            RelationKind::Ihx => ihx_rows(&graphs),
            RelationKind::Stu => stu_rows(&graphs, self.fault),
            RelationKind::Chord => chord_rows(&graphs),
            RelationKind::FourT => four_t_rows(&graphs),
            RelationKind::Sliding => Vec::new(),
        }
    }

    /// One relation family over the BCR basis.
    pub fn family(&self, kind: RelationKind) -> &RelationSet {
        self.families[family_index(kind)].get_or_init(|| {
            let mut set = self.empty_set();
            for row in self.generated(kind) {
                set.push(&row.vector, row.kind, Some(row.source))
                    .expect("relation terms are basis graphs");
            }
            set
        })
    }

    /// One family with span witnesses available.
    pub fn tracked(&self, kind: RelationKind) -> Arc<Echelon> {
        Arc::clone(
            self.tracked[family_index(kind)]
                .get_or_init(|| Arc::new(Echelon::new(self.family(kind), true))),
        )
    }

    pub fn space(&self, id: SpaceId) -> Arc<Space> {
        let idx = SpaceId::ALL.iter().position(|&x| x == id).expect("listed");
        Arc::clone(self.spaces[idx].get_or_init(|| {
            let mut combined = self.empty_set();
            for &kind in id.relation_kinds() {
                combined.extend_from(self.family(kind));
            }
            let class = id.class();
            let set = if class == GraphClass::Bcr {
                combined
            } else {
                combined.restrict(|g| g.in_class(class))
            };
            Arc::new(Space::new(id, set))
        }))
    }

    /// `|basis| - rank`, with the rank from fraction-free elimination.
    pub fn dimension(&self, id: SpaceId) -> usize {
        let space = self.space(id);
        space.basis().len() - rank_of_set(&space.relations)
    }
}

/// Components of one parity, built on demand and shared.
#[derive(Debug)]
pub struct Workbench {
    pub parity: Parity,
    pub caps: Caps,
    fault: Option<Fault>,
    components: Mutex<HashMap<(usize, usize), Arc<Component>>>,
}

impl Workbench {
    pub fn new(parity: Parity, caps: Caps) -> Self {
        Self::with_fault(parity, caps, None)
    }

    pub fn with_fault(parity: Parity, caps: Caps, fault: Option<Fault>) -> Self {
        Workbench {
            parity,
            caps,
            fault,
            components: Mutex::new(HashMap::new()),
        }
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    pub fn component(&self, vertices: usize, edges: usize) -> Result<Arc<Component>, SpaceError> {
        self.caps.check(vertices, edges)?;
        let mut map = self.components.lock().expect("component table lock");
        if let Some(c) = map.get(&(vertices, edges)) {
            return Ok(Arc::clone(c));
        }
        // Building under the lock keeps each component unique; the work
        // inside is itself parallel.
        let c = Arc::new(Component::new(vertices, edges, self.parity, self.fault));
        map.insert((vertices, edges), Arc::clone(&c));
        Ok(c)
    }

    pub fn component_of(&self, g: &ColoredGraph) -> Result<Arc<Component>, SpaceError> {
        self.component(g.vertex_count(), g.edge_count())
    }

    pub fn enumerate_basis(&self, c: &GradedComponent) -> Result<Vec<ColoredGraph>, SpaceError> {
        self.caps.check(c.vertices, c.edges)?;
        if c.parity != self.parity {
            return Ok(Component::new(c.vertices, c.edges, c.parity, self.fault).basis(c.class));
        }
        Ok(self.component(c.vertices, c.edges)?.basis(c.class))
    }

    pub fn dimension(
        &self,
        id: SpaceId,
        vertices: usize,
        edges: usize,
    ) -> Result<usize, SpaceError> {
        Ok(self.component(vertices, edges)?.dimension(id))
    }

    pub fn quotient_basis(
        &self,
        id: SpaceId,
        vertices: usize,
        edges: usize,
    ) -> Result<Arc<Space>, SpaceError> {
        Ok(self.component(vertices, edges)?.space(id))
    }

    pub fn components(&self) -> Vec<(usize, usize)> {
        self.caps.components()
    }
}

#[cfg(test)]
mod tests;
