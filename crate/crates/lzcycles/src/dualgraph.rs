//! Dual graphs of (p+1)-simplices joined across shared p-faces, with dummy
//! vertices standing in for boundary pieces.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{SimplexId, SimplexSet, SimplicialComplex};
use crate::mincut::{ExtWeight, FlowGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error("p-simplices without exactly two cofaces: {0:?}")]
    NotClosedPseudomanifold(Vec<SimplexId>),
    #[error("p-simplex {0} lies on more than two component boundaries")]
    OverlappingBoundaries(SimplexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualVertex {
    Cofacet(SimplexId),
    /// Stands for the j-th component.
    Dummy(usize),
    Outer,
    /// Boundary dummy of the shared component graph.
    Boundary(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DualEdge {
    /// Dual of a p-simplex; `part` is the component it belongs to in a shared
    /// graph, else 0.
    DualOf {
        simplex: SimplexId,
        part: usize,
    },
    Augmenting(usize),
}

#[derive(Clone, Debug)]
pub struct DualGraph {
    pub graph: FlowGraph,
    pub vertices: Vec<DualVertex>,
    pub edges: Vec<DualEdge>,
    index: HashMap<DualVertex, usize>,
}

impl DualGraph {
    fn new() -> Self {
        DualGraph {
            graph: FlowGraph::new(0),
            vertices: Vec::new(),
            edges: Vec::new(),
            index: HashMap::new(),
        }
    }

    fn vertex(&mut self, v: DualVertex) -> usize {
        if let Some(&i) = self.index.get(&v) {
            return i;
        }
        let i = self.graph.add_vertex();
        self.vertices.push(v);
        self.index.insert(v, i);
        i
    }

    fn edge(&mut self, a: DualVertex, b: DualVertex, kind: DualEdge, w: ExtWeight) {
        let (u, v) = (self.vertex(a), self.vertex(b));
        self.graph.add_edge(u, v, w);
        self.edges.push(kind);
    }

    pub fn index_of(&self, v: DualVertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph
            .edges()
            .iter()
            .map(|&(a, b, _)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Non-augmenting crossing edges of a cut, as `(p-simplex, part)`.
    pub fn pull_back(&self, source_side: &[bool]) -> Vec<(SimplexId, usize)> {
        let (_, crossing) = self.graph.cut_of(source_side);
        crossing
            .into_iter()
            .filter_map(|e| match self.edges[e] {
                DualEdge::DualOf { simplex, part } => Some((simplex, part)),
                DualEdge::Augmenting(_) => None,
            })
            .collect()
    }

    fn name(&self, cx: &SimplicialComplex, v: usize) -> String {
        match self.vertices[v] {
            DualVertex::Cofacet(t) => format!("c:{}", cx.simplex(t)),
            DualVertex::Dummy(j) => format!("phi:{j}"),
            DualVertex::Outer => "phibar".to_string(),
            DualVertex::Boundary(0) => "bbar".to_string(),
            DualVertex::Boundary(k) => format!("bbar:{k}"),
        }
    }

    /// DOT text with stable vertex names.
    pub fn to_dot(&self, cx: &SimplicialComplex) -> String {
        let mut s = String::from("graph dual {\n");
        for v in 0..self.vertices.len() {
            let mut attrs = String::new();
            if self.graph.sources().contains(&v) {
                attrs.push_str(" [shape=box]");
            } else if self.graph.sinks().contains(&v) {
                attrs.push_str(" [shape=diamond]");
            }
            let _ = writeln!(s, "  \"{}\"{attrs};", self.name(cx, v));
        }
        for (e, &(a, b, w)) in self.graph.edges().iter().enumerate() {
            let label = match self.edges[e] {
                DualEdge::DualOf { simplex, .. } => format!("{}", cx.simplex(simplex)),
                DualEdge::Augmenting(j) => format!("aug:{j}"),
            };
            let _ = writeln!(
                s,
                "  \"{}\" -- \"{}\" [label=\"{label} w={w}\"];",
                self.name(cx, a),
                self.name(cx, b)
            );
        }
        s.push_str("}\n");
        s
    }
}

/// p-faces of the given (p+1)-simplices, each with its cofaces among them.
fn face_incidence(cx: &SimplicialComplex, tops: &[SimplexId]) -> Vec<(SimplexId, Vec<SimplexId>)> {
    let mut map: HashMap<SimplexId, Vec<SimplexId>> = HashMap::new();
    for &t in tops {
        for &f in cx.faces(t) {
            map.entry(f).or_default().push(t);
        }
    }
    let mut out: Vec<_> = map.into_iter().collect();
    out.sort_unstable();
    out
}

/// Dual graph of a closed pseudomanifold given by its (p+1)-simplices.
pub fn dual_closed(
    cx: &SimplicialComplex,
    tops: &[SimplexId],
    weight: impl Fn(SimplexId) -> ExtWeight,
) -> Result<DualGraph, DualError> {
    let inc = face_incidence(cx, tops);
    let bad: Vec<SimplexId> = inc
        .iter()
        .filter(|(_, c)| c.len() != 2)
        .map(|&(f, _)| f)
        .collect();
    if !bad.is_empty() {
        return Err(DualError::NotClosedPseudomanifold(bad));
    }
    let mut g = DualGraph::new();
    for &t in tops {
        g.vertex(DualVertex::Cofacet(t));
    }
    for (f, c) in inc {
        g.edge(
            DualVertex::Cofacet(c[0]),
            DualVertex::Cofacet(c[1]),
            DualEdge::DualOf {
                simplex: f,
                part: 0,
            },
            weight(f),
        );
    }
    Ok(g)
}

/// Dual graph of `host` where the boundary pieces of component `j` collapse
/// into the dummy `phi:j` and everything else outside into `phibar`, plus one
/// augmenting edge `phi:j -- phibar` per component.
pub fn dual_with_boundary(
    cx: &SimplicialComplex,
    p: usize,
    host: &SimplexSet,
    boundaries: &[Vec<SimplexId>],
    aug: &[ExtWeight],
    weight: impl Fn(SimplexId) -> ExtWeight,
) -> Result<DualGraph, DualError> {
    let mut owners: HashMap<SimplexId, Vec<usize>> = HashMap::new();
    for (j, bd) in boundaries.iter().enumerate() {
        for &s in bd {
            owners.entry(s).or_default().push(j);
        }
    }
    let mut g = DualGraph::new();
    for t in host.ids_of_dim(cx, p + 1) {
        g.vertex(DualVertex::Cofacet(t));
    }
    for j in 0..boundaries.len() {
        g.vertex(DualVertex::Dummy(j));
    }
    g.vertex(DualVertex::Outer);
    for s in host.ids_of_dim(cx, p) {
        let cof: Vec<SimplexId> = cx
            .cofaces(s)
            .iter()
            .copied()
            .filter(|&t| host.contains(t))
            .collect();
        let own = owners.get(&s).map_or(&[][..], |v| v.as_slice());
        let kind = DualEdge::DualOf {
            simplex: s,
            part: 0,
        };
        let (a, b) = match (cof.as_slice(), own) {
            ([t1, t2], _) => (DualVertex::Cofacet(*t1), DualVertex::Cofacet(*t2)),
            ([t], []) => (DualVertex::Cofacet(*t), DualVertex::Outer),
            ([t], [j]) => (DualVertex::Cofacet(*t), DualVertex::Dummy(*j)),
            ([], []) => (DualVertex::Outer, DualVertex::Outer),
            ([], [j]) => (DualVertex::Dummy(*j), DualVertex::Outer),
            ([], [i, j]) => (DualVertex::Dummy(*i), DualVertex::Dummy(*j)),
            _ => return Err(DualError::OverlappingBoundaries(s)),
        };
        g.edge(a, b, kind, weight(s));
    }
    for (j, &w) in aug.iter().enumerate() {
        g.edge(
            DualVertex::Dummy(j),
            DualVertex::Outer,
            DualEdge::Augmenting(j),
            w,
        );
    }
    Ok(g)
}

/// One graph over several components. Every p-face on the boundary of
/// component `j` joins its coface to the boundary dummy chosen by
/// `boundary_dummy`; `side` fixes cofacets (and dummies) as sources (`true`)
/// or sinks (`false`). Terminals are installed on the returned graph.
pub fn dual_component_shared(
    cx: &SimplicialComplex,
    components: &[Vec<SimplexId>],
    boundary_dummy: impl Fn(SimplexId) -> usize,
    dummy_side: &[bool],
    side: impl Fn(SimplexId) -> Option<bool>,
    weight: impl Fn(SimplexId) -> ExtWeight,
) -> DualGraph {
    let mut g = DualGraph::new();
    for (k, _) in dummy_side.iter().enumerate() {
        g.vertex(DualVertex::Boundary(k));
    }
    for (j, comp) in components.iter().enumerate() {
        for &t in comp {
            g.vertex(DualVertex::Cofacet(t));
        }
        for (f, cof) in face_incidence(cx, comp) {
            let kind = DualEdge::DualOf {
                simplex: f,
                part: j,
            };
            match cof.as_slice() {
                [t1, t2] => g.edge(
                    DualVertex::Cofacet(*t1),
                    DualVertex::Cofacet(*t2),
                    kind,
                    weight(f),
                ),
                [t] => g.edge(
                    DualVertex::Cofacet(*t),
                    DualVertex::Boundary(boundary_dummy(f)),
                    kind,
                    weight(f),
                ),
                _ => unreachable!("weak pseudomanifold faces have at most two cofaces"),
            }
        }
    }
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    for (v, dv) in g.vertices.iter().enumerate() {
        let s = match *dv {
            DualVertex::Cofacet(t) => side(t),
            DualVertex::Boundary(k) => Some(dummy_side[k]),
            _ => None,
        };
        match s {
            Some(true) => sources.push(v),
            Some(false) => sinks.push(v),
            None => {}
        }
    }
    g.graph.set_terminals(sources, sinks);
    g
}
