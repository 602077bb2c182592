//! Labelled graphs: vertices carrying rational charges, geometric edges made
//! of two opposite darts carrying a common nonzero integer index.
//!
//! Vertices, edges and darts are kept in id-lexicographic order so that every
//! matrix and certificate derived from a graph is reproducible. The two darts
//! of edge `e` are `e+` (first end to second) and `e-`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, parse_rational, Rational, RationalParseError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub charge: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dart {
    pub id: String,
    /// Position of the owning geometric edge.
    pub edge: usize,
    pub tail: usize,
    pub opp: usize,
    pub index: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricEdge {
    pub id: String,
    /// `[forward, backward]` dart positions.
    pub darts: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    edges: Vec<GeometricEdge>,
    darts: Vec<Dart>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}zero intersection index on edge {edge:?}", line_prefix(*line))]
    ZeroIndex { edge: String, line: Option<usize> },
    #[error("{}edge {edge:?} references unknown vertex {vertex:?}", line_prefix(*line))]
    UnknownVertex {
        edge: String,
        vertex: String,
        line: Option<usize>,
    },
    #[error("{}duplicate vertex id {id:?}", line_prefix(*line))]
    DuplicateVertex { id: String, line: Option<usize> },
    #[error("{}duplicate edge id {id:?}", line_prefix(*line))]
    DuplicateEdge { id: String, line: Option<usize> },
    #[error("{}bad charge on vertex {vertex:?}: {source}", line_prefix(*line))]
    BadCharge {
        vertex: String,
        line: Option<usize>,
        source: RationalParseError,
    },
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

/// One broken structural invariant found by [`LabeledGraph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    DuplicateVertexId,
    DuplicateDartId,
    TailOutOfRange,
    OppositeOutOfRange,
    SelfPairedDart,
    InvolutionBroken,
    IndexMismatch,
    ZeroIndex,
    EdgeDartsNotPaired,
}

impl ViolationKind {
    pub fn message(self) -> &'static str {
        match self {
            ViolationKind::DuplicateVertexId => "duplicate vertex id",
            ViolationKind::DuplicateDartId => "duplicate dart id",
            ViolationKind::TailOutOfRange => "dart tail out of range",
            ViolationKind::OppositeOutOfRange => "opposite dart out of range",
            ViolationKind::SelfPairedDart => "self-paired dart",
            ViolationKind::InvolutionBroken => "opposite map is not an involution",
            ViolationKind::IndexMismatch => "index mismatch on edge",
            ViolationKind::ZeroIndex => "zero intersection index",
            ViolationKind::EdgeDartsNotPaired => "edge darts are not mutually opposite",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.kind.message(), self.location)
    }
}

impl LabeledGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    /// Assembles a graph without any checking; see [`LabeledGraph::validate`].
    pub fn from_raw_parts(
        vertices: Vec<Vertex>,
        edges: Vec<GeometricEdge>,
        darts: Vec<Dart>,
    ) -> Self {
        LabeledGraph {
            vertices,
            edges,
            darts,
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[GeometricEdge] {
        &self.edges
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn charge(&self, v: usize) -> &Rational {
        &self.vertices[v].charge
    }

    pub fn vertex_ids(&self) -> Vec<String> {
        self.vertices.iter().map(|v| v.id.clone()).collect()
    }

    pub fn vertex_position(&self, id: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.id.as_str().cmp(id))
            .ok()
    }

    pub fn dart_position(&self, id: &str) -> Option<usize> {
        self.darts.iter().position(|d| d.id == id)
    }

    pub fn tail(&self, dart: usize) -> usize {
        self.darts[dart].tail
    }

    pub fn head(&self, dart: usize) -> usize {
        self.darts[self.darts[dart].opp].tail
    }

    pub fn opp(&self, dart: usize) -> usize {
        self.darts[dart].opp
    }

    pub fn index(&self, dart: usize) -> i64 {
        self.darts[dart].index
    }

    /// Endpoints `(tail, head)` of the forward dart of an edge.
    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        let forward = self.edges[edge].darts[0];
        (self.tail(forward), self.head(forward))
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let (u, v) = self.endpoints(edge);
        u == v
    }

    /// Darts leaving `v`. A loop at `v` contributes both of its darts.
    pub fn boundary(&self, v: usize) -> Vec<usize> {
        (0..self.darts.len())
            .filter(|&d| self.darts[d].tail == v)
            .collect()
    }

    /// True when some loop sits at a vertex with nonzero charge.
    pub fn has_charged_loop(&self) -> bool {
        (0..self.edges.len()).any(|e| {
            let (u, _) = self.endpoints(e);
            self.is_loop(e) && !self.charge(u).is_zero()
        })
    }

    /// Subgraph on the vertices at positions `keep`, with every edge whose ends both survive.
    pub fn induced_subgraph(&self, keep: &[usize]) -> LabeledGraph {
        let mut b = LabeledGraph::builder();
        for &v in keep {
            b = b.vertex(self.vertices[v].id.clone(), self.vertices[v].charge.clone());
        }
        for (e, edge) in self.edges.iter().enumerate() {
            let (u, v) = self.endpoints(e);
            if keep.contains(&u) && keep.contains(&v) {
                let ids = (&self.vertices[u].id, &self.vertices[v].id);
                b = b.edge(edge.id.clone(), ids.0.clone(), ids.1.clone(), self.darts[edge.darts[0]].index);
            }
        }
        b.build().expect("subgraph of a valid graph")
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |kind, location: String| out.push(Violation { kind, location });

        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.id.as_str()) {
                push(ViolationKind::DuplicateVertexId, v.id.clone());
            }
        }
        let mut seen = BTreeSet::new();
        let n = self.darts.len();
        for (i, d) in self.darts.iter().enumerate() {
            if !seen.insert(d.id.as_str()) {
                push(ViolationKind::DuplicateDartId, d.id.clone());
            }
            if d.tail >= self.vertices.len() {
                push(ViolationKind::TailOutOfRange, d.id.clone());
            }
            if d.index == 0 {
                push(ViolationKind::ZeroIndex, d.id.clone());
            }
            if d.opp >= n {
                push(ViolationKind::OppositeOutOfRange, d.id.clone());
                continue;
            }
            if d.opp == i {
                push(ViolationKind::SelfPairedDart, d.id.clone());
                continue;
            }
            let back = &self.darts[d.opp];
            if back.opp != i {
                push(ViolationKind::InvolutionBroken, d.id.clone());
            } else if i < d.opp && back.index != d.index {
                push(
                    ViolationKind::IndexMismatch,
                    format!("{} / {}", d.id, back.id),
                );
            }
        }
        for e in &self.edges {
            let [f, b] = e.darts;
            let paired = f < n && b < n && self.darts[f].opp == b && self.darts[b].opp == f;
            if !paired {
                push(ViolationKind::EdgeDartsNotPaired, e.id.clone());
            }
        }
        out
    }

    fn to_document(&self) -> GraphDocument {
        GraphDocument {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexDocument {
                    id: v.id.clone(),
                    charge: ChargeText::Text(format_rational(&v.charge)),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    let forward = &self.darts[e.darts[0]];
                    let backward = &self.darts[e.darts[1]];
                    EdgeDocument {
                        id: e.id.clone(),
                        ends: [
                            self.vertices[forward.tail].id.clone(),
                            self.vertices[backward.tail].id.clone(),
                        ],
                        b: forward.index,
                    }
                })
                .collect(),
        }
    }
}

/// Collects vertices and edges, then sorts and checks them in [`GraphBuilder::build`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<(String, Rational, Option<usize>)>,
    edges: Vec<(String, String, String, i64, Option<usize>)>,
}

impl GraphBuilder {
    pub fn vertex(mut self, id: impl Into<String>, charge: Rational) -> Self {
        self.vertices.push((id.into(), charge, None));
        self
    }

    pub fn edge(
        mut self,
        id: impl Into<String>,
        from: impl Into<String>,
        to: impl Into<String>,
        b: i64,
    ) -> Self {
        self.edges.push((id.into(), from.into(), to.into(), b, None));
        self
    }

    pub fn build(mut self) -> Result<LabeledGraph, GraphError> {
        self.vertices.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in self.vertices.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(GraphError::DuplicateVertex {
                    id: pair[1].0.clone(),
                    line: pair[1].2.or(pair[0].2),
                });
            }
        }
        self.edges.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in self.edges.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(GraphError::DuplicateEdge {
                    id: pair[1].0.clone(),
                    line: pair[1].4.or(pair[0].4),
                });
            }
        }
        let position: BTreeMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.0.as_str(), i))
            .collect();

        let mut edges = Vec::with_capacity(self.edges.len());
        let mut darts = Vec::with_capacity(2 * self.edges.len());
        for (i, (id, from, to, b, line)) in self.edges.iter().enumerate() {
            if *b == 0 {
                return Err(GraphError::ZeroIndex {
                    edge: id.clone(),
                    line: *line,
                });
            }
            let lookup = |name: &String| {
                position
                    .get(name.as_str())
                    .copied()
                    .ok_or_else(|| GraphError::UnknownVertex {
                        edge: id.clone(),
                        vertex: name.clone(),
                        line: *line,
                    })
            };
            let (u, v) = (lookup(from)?, lookup(to)?);
            let forward = 2 * i;
            darts.push(Dart {
                id: format!("{id}+"),
                edge: i,
                tail: u,
                opp: forward + 1,
                index: *b,
            });
            darts.push(Dart {
                id: format!("{id}-"),
                edge: i,
                tail: v,
                opp: forward,
                index: *b,
            });
            edges.push(GeometricEdge {
                id: id.clone(),
                darts: [forward, forward + 1],
            });
        }
        let vertices = self
            .vertices
            .into_iter()
            .map(|(id, charge, _)| Vertex { id, charge })
            .collect();
        Ok(LabeledGraph {
            vertices,
            edges,
            darts,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDocument {
    vertices: Vec<VertexDocument>,
    #[serde(default)]
    edges: Vec<EdgeDocument>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDocument {
    id: String,
    charge: ChargeText,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ChargeText {
    Text(String),
    Integer(i64),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDocument {
    id: String,
    ends: [String; 2],
    b: i64,
}

/// Line (1-based) of the first occurrence of `"id"` at or after `start`.
fn locate(text: &str, start: usize, id: &str) -> Option<usize> {
    let needle = format!("\"{id}\"");
    let offset = text.get(start..)?.find(&needle)? + start;
    Some(text[..offset].matches('\n').count() + 1)
}

pub fn parse_graph(text: &str) -> Result<LabeledGraph, GraphError> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| GraphError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let edges_at = text.find("\"edges\"").unwrap_or(0);
    let mut builder = GraphBuilder::default();
    for v in doc.vertices {
        let line = locate(text, 0, &v.id);
        let charge = match v.charge {
            ChargeText::Integer(k) => crate::rational::int(k),
            ChargeText::Text(s) => parse_rational(&s).map_err(|source| GraphError::BadCharge {
                vertex: v.id.clone(),
                line,
                source,
            })?,
        };
        builder.vertices.push((v.id, charge, line));
    }
    for e in doc.edges {
        let line = locate(text, edges_at, &e.id);
        let [from, to] = e.ends;
        builder.edges.push((e.id, from, to, e.b, line));
    }
    builder.build()
}

pub fn serialize_graph(g: &LabeledGraph) -> String {
    let mut text = serde_json::to_string_pretty(&g.to_document()).expect("graph document");
    text.push('\n');
    text
}
