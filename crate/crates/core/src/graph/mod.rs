//! Colored BCR graphs.
//!
//! A [`ColoredGraph`] stores its coloring positionally:
//!
//! * even parity: the edge at index `j` carries the number `j + 1`; edge
//!   endpoints are unordered.
//! * odd parity: the vertex at index `i` carries the label `i + 1`; every edge
//!   is oriented from `ends[0]` to `ends[1]`.
//!
//! Recoloring a graph therefore amounts to permuting vectors, which keeps the
//! sign bookkeeping in [`canon`] and [`contract`] short.

pub mod canon;
pub mod contract;
pub mod text;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{
    canonical_form, canonicalize, iso_sign, CanonicalClass, CanonicalForm, IsoRelation,
};
pub use contract::{contract_dashed_edge, contract_edge, Contracted};

/// Which of the two coloring rules is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// Edges are numbered; odd edge permutations reverse the orientation.
    Even,
    /// Edges are oriented and vertices labeled.
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Parity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(format!("unknown parity `{other}` (expected even|odd)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    External,
    Internal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EdgeKind {
    Solid,
    Dashed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub kind: EdgeKind,
    pub ends: [usize; 2],
}

impl Edge {
    pub fn dashed(a: usize, b: usize) -> Self {
        Edge {
            kind: EdgeKind::Dashed,
            ends: [a, b],
        }
    }

    pub fn solid(a: usize, b: usize) -> Self {
        Edge {
            kind: EdgeKind::Solid,
            ends: [a, b],
        }
    }

    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    pub fn touches(&self, v: usize) -> bool {
        self.ends[0] == v || self.ends[1] == v
    }

    /// The endpoint opposite to `v`; `v` itself for a loop.
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

/// The three graph classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Bcr,
    Hairy,
    Chord,
}

impl std::str::FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bcr" => Ok(GraphClass::Bcr),
            "hairy" => Ok(GraphClass::Hairy),
            "chord" => Ok(GraphClass::Chord),
            other => Err(format!(
                "unknown graph class `{other}` (expected bcr|hairy|chord)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} refers to vertex {vertex}, but the graph has {count} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        count: usize,
    },
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(usize),
    #[error("edge {0} is solid; only dashed edges are contracted here")]
    SolidContraction(usize),
    #[error("graph is not a valid {class:?} graph: {violations}")]
    Invalid {
        class: GraphClass,
        violations: String,
    },
    #[error("{0}")]
    Operation(String),
}

impl GraphError {
    fn invalid(class: GraphClass, violations: &[Violation]) -> Self {
        let text = violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ");
        GraphError::Invalid {
            class,
            violations: text,
        }
    }
}

/// A finite multigraph with vertex kinds, edge kinds and a coloring.
///
/// The derived ordering compares parity, then the vertex kind sequence, then
/// the edge list; on canonical representatives this is the basis order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColoredGraph {
    parity: Parity,
    vertices: Vec<VertexKind>,
    edges: Vec<Edge>,
}

impl ColoredGraph {
    pub fn new(
        parity: Parity,
        vertices: Vec<VertexKind>,
        edges: Vec<Edge>,
    ) -> Result<Self, GraphError> {
        let count = vertices.len();
        for (i, e) in edges.iter().enumerate() {
            for &v in &e.ends {
                if v >= count {
                    return Err(GraphError::VertexOutOfRange {
                        edge: i,
                        vertex: v,
                        count,
                    });
                }
            }
        }
        Ok(Self::from_parts(parity, vertices, edges))
    }

    /// Builds a graph whose edge endpoints are already known to be in range.
    pub(crate) fn from_parts(
        parity: Parity,
        vertices: Vec<VertexKind>,
        mut edges: Vec<Edge>,
    ) -> Self {
        if parity == Parity::Even {
            for e in &mut edges {
                e.ends.sort_unstable();
            }
        }
        ColoredGraph {
            parity,
            vertices,
            edges,
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn vertices(&self) -> &[VertexKind] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn with_parity(&self, parity: Parity) -> Self {
        Self::from_parts(parity, self.vertices.clone(), self.edges.clone())
    }

    pub fn is_external(&self, v: usize) -> bool {
        self.vertices[v] == VertexKind::External
    }

    pub fn externals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&v| self.is_external(v))
    }

    pub fn internals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&v| !self.is_external(v))
    }

    pub fn external_count(&self) -> usize {
        self.externals().count()
    }

    pub fn internal_count(&self) -> usize {
        self.vertices.len() - self.external_count()
    }

    pub fn solid_edge_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Solid)
            .count()
    }

    /// Degree of `v` counted over edges of `kind`; a loop counts twice.
    pub fn degree(&self, v: usize, kind: EdgeKind) -> usize {
        self.edges
            .iter()
            .filter(|e| e.kind == kind)
            .map(|e| e.ends.iter().filter(|&&x| x == v).count())
            .sum()
    }

    /// Indices of edges of `kind` incident to `v` (a loop is listed once).
    pub fn incident(&self, v: usize, kind: EdgeKind) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.kind == kind && e.touches(v))
            .map(|(i, _)| i)
            .collect()
    }

    /// The unique dashed edge at an external vertex of a valid graph.
    pub fn dashed_edge_at(&self, v: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| e.kind == EdgeKind::Dashed && e.touches(v))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut comps = n;
        for e in &self.edges {
            let a = find(&mut parent, e.ends[0]);
            let b = find(&mut parent, e.ends[1]);
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps == 1
    }

    /// Membership in a graph class, assuming the graph is a valid BCR graph.
    pub fn in_class(&self, class: GraphClass) -> bool {
        match class {
            GraphClass::Bcr => true,
            GraphClass::Hairy => self.solid_edge_count() == 0,
            GraphClass::Chord => self.internal_count() == 0,
        }
    }

    /// Loop order `E - V + 1`.
    pub fn loop_order(&self) -> isize {
        self.edges.len() as isize - self.vertices.len() as isize + 1
    }

    /// Relabels vertices by `perm` (old index -> new index) keeping edge order.
    pub fn relabel_vertices(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.vertices.len());
        let mut vertices = vec![VertexKind::External; perm.len()];
        for (old, &new) in perm.iter().enumerate() {
            vertices[new] = self.vertices[old];
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                kind: e.kind,
                ends: [perm[e.ends[0]], perm[e.ends[1]]],
            })
            .collect();
        Self::from_parts(self.parity, vertices, edges)
    }

    /// Reorders edges so that old edge `j` lands at index `perm[j]`.
    pub fn permute_edges(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.edges.len());
        let mut edges = self.edges.clone();
        for (old, &new) in perm.iter().enumerate() {
            edges[new] = self.edges[old];
        }
        Self::from_parts(self.parity, self.vertices.clone(), edges)
    }

    /// Reverses the orientation of edge `j` (meaningful in the odd case).
    pub fn reverse_edge(&self, j: usize) -> Self {
        let mut g = self.clone();
        g.edges[j].ends.swap(0, 1);
        g
    }

    /// A compact, human-readable, decodable encoding of the graph.
    ///
    /// `e:xxi:s0-1.d0-2.d1-2` reads: even parity, vertices 0,1 external and 2
    /// internal, then the edges in coloring order.
    pub fn certificate(&self) -> String {
        let p = match self.parity {
            Parity::Even => 'e',
            Parity::Odd => 'o',
        };
        let kinds: String = self
            .vertices
            .iter()
            .map(|k| match k {
                VertexKind::External => 'x',
                VertexKind::Internal => 'i',
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let k = match e.kind {
                    EdgeKind::Solid => 's',
                    EdgeKind::Dashed => 'd',
                };
                format!("{k}{}-{}", e.ends[0], e.ends[1])
            })
            .collect::<Vec<_>>()
            .join(".");
        format!("{p}:{kinds}:{edges}")
    }

    pub fn from_certificate(cert: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::Operation(format!("malformed certificate `{cert}`"));
        let mut parts = cert.splitn(3, ':');
        let parity = match parts.next() {
            Some("e") => Parity::Even,
            Some("o") => Parity::Odd,
            _ => return Err(bad()),
        };
        let vertices = parts
            .next()
            .ok_or_else(bad)?
            .chars()
            .map(|c| match c {
                'x' => Ok(VertexKind::External),
                'i' => Ok(VertexKind::Internal),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let rest = parts.next().ok_or_else(bad)?;
        let mut edges = Vec::new();
        for tok in rest.split('.').filter(|t| !t.is_empty()) {
            let kind = match tok.as_bytes()[0] {
                b's' => EdgeKind::Solid,
                b'd' => EdgeKind::Dashed,
                _ => return Err(bad()),
            };
            let (a, b) = tok[1..].split_once('-').ok_or_else(bad)?;
            let a = a.parse().map_err(|_| bad())?;
            let b = b.parse().map_err(|_| bad())?;
            edges.push(Edge { kind, ends: [a, b] });
        }
        ColoredGraph::new(parity, vertices, edges)
    }
}

impl fmt::Display for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.certificate())
    }
}

/// One violated clause of a class definition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    NoVertices,
    Disconnected,
    NoExternalVertex,
    InternalDashedDegree { vertex: usize, degree: usize },
    InternalSolidEdge { vertex: usize, edge: usize },
    ExternalDashedDegree { vertex: usize, degree: usize },
    ExternalSolidDegree { vertex: usize, degree: usize },
    SolidLoop { edge: usize },
    SolidMultiEdge { edges: [usize; 2] },
    SolidCycle { edges: Vec<usize> },
    SolidEdgeInHairyGraph { edge: usize },
    InternalVertexInChordDiagram { vertex: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "graph has no vertices"),
            Violation::Disconnected => write!(f, "graph is not connected"),
            Violation::NoExternalVertex => write!(f, "graph has no external vertex"),
            Violation::InternalDashedDegree { vertex, degree } => {
                write!(
                    f,
                    "internal dashed-degree ≠ 3 at vertex {vertex} (found {degree})"
                )
            }
            Violation::InternalSolidEdge { vertex, edge } => {
                write!(f, "solid edge {edge} at internal vertex {vertex}")
            }
            Violation::ExternalDashedDegree { vertex, degree } => {
                write!(
                    f,
                    "external dashed-degree ≠ 1 at vertex {vertex} (found {degree})"
                )
            }
            Violation::ExternalSolidDegree { vertex, degree } => {
                write!(
                    f,
                    "external solid-degree > 2 at vertex {vertex} (found {degree})"
                )
            }
            Violation::SolidLoop { edge } => write!(f, "solid loop at edge {edge}"),
            Violation::SolidMultiEdge { edges } => {
                write!(
                    f,
                    "solid multi-edge formed by edges {} and {}",
                    edges[0], edges[1]
                )
            }
            Violation::SolidCycle { edges } => {
                let list = edges
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                write!(f, "solid loop through edges {list}")
            }
            Violation::SolidEdgeInHairyGraph { edge } => {
                write!(f, "hairy graph has solid edge {edge}")
            }
            Violation::InternalVertexInChordDiagram { vertex } => {
                write!(f, "chord diagram has internal vertex {vertex}")
            }
        }
    }
}

/// Checks every clause of `class`; an empty report means the graph is valid.
pub fn validate(g: &ColoredGraph, class: GraphClass) -> Vec<Violation> {
    let mut out = Vec::new();
    if g.vertices.is_empty() {
        out.push(Violation::NoVertices);
        return out;
    }
    if !g.is_connected() {
        out.push(Violation::Disconnected);
    }
    if g.external_count() == 0 {
        out.push(Violation::NoExternalVertex);
    }
    for v in 0..g.vertex_count() {
        let dashed = g.degree(v, EdgeKind::Dashed);
        let solid = g.degree(v, EdgeKind::Solid);
        match g.vertices[v] {
            VertexKind::Internal => {
                if dashed != 3 {
                    out.push(Violation::InternalDashedDegree {
                        vertex: v,
                        degree: dashed,
                    });
                }
                for e in g.incident(v, EdgeKind::Solid) {
                    out.push(Violation::InternalSolidEdge { vertex: v, edge: e });
                }
                if class == GraphClass::Chord {
                    out.push(Violation::InternalVertexInChordDiagram { vertex: v });
                }
            }
            VertexKind::External => {
                if dashed != 1 {
                    out.push(Violation::ExternalDashedDegree {
                        vertex: v,
                        degree: dashed,
                    });
                }
                if solid > 2 {
                    out.push(Violation::ExternalSolidDegree {
                        vertex: v,
                        degree: solid,
                    });
                }
            }
        }
    }
    let solid: Vec<usize> = (0..g.edge_count())
        .filter(|&i| g.edges[i].kind == EdgeKind::Solid)
        .collect();
    for &i in &solid {
        if g.edges[i].is_loop() {
            out.push(Violation::SolidLoop { edge: i });
        }
        if class == GraphClass::Hairy {
            out.push(Violation::SolidEdgeInHairyGraph { edge: i });
        }
    }
    for (x, &i) in solid.iter().enumerate() {
        for &j in &solid[x + 1..] {
            let (a, b) = (g.edges[i].ends, g.edges[j].ends);
            let same = (a[0] == b[0] && a[1] == b[1]) || (a[0] == b[1] && a[1] == b[0]);
            if same && !g.edges[i].is_loop() {
                out.push(Violation::SolidMultiEdge { edges: [i, j] });
            }
        }
    }
    if let Some(cycle) = solid_cycle(g) {
        out.push(Violation::SolidCycle { edges: cycle });
    }
    out
}

/// Validates and converts the report into an error.
pub fn ensure_valid(g: &ColoredGraph, class: GraphClass) -> Result<(), GraphError> {
    let report = validate(g, class);
    if report.is_empty() {
        Ok(())
    } else {
        Err(GraphError::invalid(class, &report))
    }
}

/// Finds a cycle made of at least three solid edges (loops and double edges
/// are reported separately).
fn solid_cycle(g: &ColoredGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // Iterative DFS carrying the edge used to enter each vertex.
        let mut parent_edge: Vec<Option<usize>> = vec![None; n];
        let mut parent: Vec<usize> = vec![usize::MAX; n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for (i, e) in g.edges.iter().enumerate() {
                if e.kind != EdgeKind::Solid
                    || !e.touches(v)
                    || e.is_loop()
                    || Some(i) == parent_edge[v]
                {
                    continue;
                }
                let w = e.other(v);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = v;
                    parent_edge[w] = Some(i);
                    stack.push(w);
                } else if parent[v] != w
                    || parent_edge[v].is_some_and(|pe| g.edges[pe].ends != e.ends)
                {
                    // Walk both endpoints up to their common ancestor.
                    let path_to_root = |mut x: usize| {
                        let mut p = vec![x];
                        while parent[x] != usize::MAX {
                            x = parent[x];
                            p.push(x);
                        }
                        p
                    };
                    let pv = path_to_root(v);
                    let pw = path_to_root(w);
                    if let Some(&meet) = pv.iter().find(|x| pw.contains(x)) {
                        let mut cycle = vec![i];
                        for path in [&pv, &pw] {
                            for &x in path.iter().take_while(|&&x| x != meet) {
                                cycle.push(
                                    parent_edge[x].expect("non-root vertex has a parent edge"),
                                );
                            }
                        }
                        if cycle.len() >= 3 {
                            cycle.sort_unstable();
                            return Some(cycle);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Descending multiset of solid-component vertex counts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SolidType(pub Vec<usize>);

impl SolidType {
    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    /// Order of the group of component-preserving leg permutations.
    pub fn group_order(&self) -> u128 {
        self.0
            .iter()
            .map(|&l| (1..=l as u128).product::<u128>())
            .product()
    }
}

impl fmt::Display for SolidType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .0
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "({parts})")
    }
}

/// Solid components as vertex paths.
///
/// Each path starts at its endpoint with the smaller vertex index and the
/// paths are ordered by that first vertex, so the "row" of legs is a
/// deterministic function of the (canonical) coloring.
pub fn solid_components(g: &ColoredGraph) -> Result<Vec<Vec<usize>>, GraphError> {
    ensure_valid(g, GraphClass::Bcr)?;
    Ok(solid_paths_unchecked(g))
}

pub(crate) fn solid_paths_unchecked(g: &ColoredGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in g.edges.iter().filter(|e| e.kind == EdgeKind::Solid) {
        nbrs[e.ends[0]].push(e.ends[1]);
        nbrs[e.ends[1]].push(e.ends[0]);
    }
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for v in g.externals() {
        if seen[v] || nbrs[v].len() > 1 {
            continue;
        }
        let mut path = vec![v];
        seen[v] = true;
        let mut prev = usize::MAX;
        let mut cur = v;
        loop {
            let next = nbrs[cur].iter().copied().find(|&x| x != prev && !seen[x]);
            match next {
                Some(x) => {
                    seen[x] = true;
                    path.push(x);
                    prev = cur;
                    cur = x;
                }
                None => break,
            }
        }
        paths.push(path);
    }
    paths.sort();
    paths
}

pub fn solid_type(g: &ColoredGraph) -> Result<SolidType, GraphError> {
    let mut lengths: Vec<usize> = solid_components(g)?.iter().map(Vec::len).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    Ok(SolidType(lengths))
}
