//! The weighted bipartite model graph and its superlevel filtration.
//!
//! Vertices are ordered pairs `(x, y)` of vertices of the star (`0` is the
//! center, `1..=k` the leaves). The full graph moves one robot at a time
//! between the center and a leaf; the reduced graph keeps only the pairs
//! with a robot at the center and joins `(x,0)` to `(0,y)` directly.
//!
//! Edge indices are assigned once, on the unfiltered graph, and inherited by
//! every superlevel subgraph, so cycle vectors from any parameter value live
//! in the same coordinate space.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::foundation::Rational;

/// Edge lengths `(L, l_2, ..., l_k)` with the tail sorted descending.
///
/// `L` (edge 1) is the varying length. The tail is fixed and stored in
/// descending order; `permutation[p]` is the normalized tail position of the
/// `p`-th tail entry as the user supplied it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeLengthVector {
    first: Rational,
    tail: Vec<Rational>,
    permutation: Vec<usize>,
}

/// Validates and normalizes raw lengths `[L, t_1, ..., t_{k-1}]`.
pub fn normalize_lengths(raw: &[Rational]) -> Result<EdgeLengthVector> {
    if raw.len() < 3 {
        return Err(Error::InvalidLengths(format!(
            "need at least 3 edge lengths, got {}",
            raw.len()
        )));
    }
    if let Some((i, bad)) = raw.iter().enumerate().find(|(_, l)| !l.is_positive()) {
        return Err(Error::InvalidLengths(format!(
            "edge {} has non-positive length {bad}",
            i + 1
        )));
    }
    let user_tail = &raw[1..];
    let mut order: Vec<usize> = (0..user_tail.len()).collect();
    // stable: equal lengths keep their input order
    order.sort_by(|a, b| user_tail[*b].cmp(&user_tail[*a]));
    let mut permutation = vec![0; user_tail.len()];
    for (normalized, user) in order.iter().enumerate() {
        permutation[*user] = normalized;
    }
    Ok(EdgeLengthVector {
        first: raw[0].clone(),
        tail: order.iter().map(|i| user_tail[*i].clone()).collect(),
        permutation,
    })
}

impl EdgeLengthVector {
    /// Number of edges of the star.
    pub fn k(&self) -> usize {
        self.tail.len() + 1
    }

    pub fn first(&self) -> &Rational {
        &self.first
    }

    /// Tail lengths, descending. `tail()[0]` is `l_2`.
    pub fn tail(&self) -> &[Rational] {
        &self.tail
    }

    pub fn permutation(&self) -> &[usize] {
        &self.permutation
    }

    /// `L_x` in normalized labels, with `L_0 = 0` and `L_1 = L`.
    pub fn length(&self, x: usize) -> Rational {
        match x {
            0 => Rational::zero(),
            1 => self.first.clone(),
            _ => self.tail[x - 2].clone(),
        }
    }

    /// Smallest tail length `l_k`.
    pub fn min_tail(&self) -> &Rational {
        self.tail.last().expect("k >= 3")
    }

    /// Same tail with a different first length.
    pub fn with_first(&self, first: Rational) -> EdgeLengthVector {
        EdgeLengthVector {
            first,
            ..self.clone()
        }
    }

    /// Every length multiplied by `factor` (must be positive).
    pub fn scaled(&self, factor: &Rational) -> Result<EdgeLengthVector> {
        if !factor.is_positive() {
            return Err(Error::InvalidLengths(format!("scale factor {factor} is not positive")));
        }
        Ok(EdgeLengthVector {
            first: &self.first * factor,
            tail: self.tail.iter().map(|t| t * factor).collect(),
            permutation: self.permutation.clone(),
        })
    }

    /// Lengths in the order the user gave them.
    pub fn user_order(&self) -> Vec<Rational> {
        let mut out = vec![self.first.clone()];
        out.extend(self.permutation.iter().map(|p| self.tail[*p].clone()));
        out
    }

    /// User-facing edge label (1-based, input order) for a normalized label.
    pub fn user_label(&self, normalized: usize) -> usize {
        match normalized {
            0 | 1 => normalized,
            n => {
                let user = self
                    .permutation
                    .iter()
                    .position(|p| *p == n - 2)
                    .expect("permutation is a bijection");
                user + 2
            }
        }
    }

    /// Normalized lengths `[L, l_2, ..., l_k]`.
    pub fn normalized(&self) -> Vec<Rational> {
        let mut out = vec![self.first.clone()];
        out.extend(self.tail.iter().cloned());
        out
    }
}

/// A vertex `(x, y)`: robot one at star vertex `x`, robot two at `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModelVertex {
    pub x: usize,
    pub y: usize,
}

impl ModelVertex {
    pub fn new(x: usize, y: usize) -> Self {
        debug_assert!(x != y, "({x},{y}) is not a model vertex");
        ModelVertex { x, y }
    }

    /// Vertices with one robot at the center.
    pub fn touches_center(&self) -> bool {
        self.x == 0 || self.y == 0
    }
}

impl fmt::Display for ModelVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelEdge {
    pub index: usize,
    /// Sorted endpoints.
    pub endpoints: (ModelVertex, ModelVertex),
    pub weight: Rational,
    pub filter_value: Rational,
}

impl ModelEdge {
    pub fn other(&self, v: ModelVertex) -> Option<ModelVertex> {
        if self.endpoints.0 == v {
            Some(self.endpoints.1)
        } else if self.endpoints.1 == v {
            Some(self.endpoints.0)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Full,
    Reduced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelGraph {
    kind: GraphKind,
    lengths: EdgeLengthVector,
    vertices: BTreeMap<ModelVertex, Rational>,
    edges: Vec<ModelEdge>,
    edge_universe: usize,
}

fn sorted_pair(a: ModelVertex, b: ModelVertex) -> (ModelVertex, ModelVertex) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Builds the full model graph.
///
/// Edge `{(x,0),(x,y)}` moves robot two from the center out to leaf `y`; it
/// has weight `L_y` and filter value `L_x`. Edge `{(0,y),(x,y)}` is the
/// mirror image. Indices: all `{(x,0),(x,y)}` edges first in `(x,y)` order,
/// then all `{(0,y),(x,y)}` edges.
pub fn build_full_model(lengths: &EdgeLengthVector) -> ModelGraph {
    let k = lengths.k();
    let mut vertices = BTreeMap::new();
    for x in 0..=k {
        for y in 0..=k {
            if x != y {
                vertices.insert(ModelVertex::new(x, y), lengths.length(x) + lengths.length(y));
            }
        }
    }
    let mut edges = Vec::with_capacity(2 * k * (k - 1));
    for x in 1..=k {
        for y in (1..=k).filter(|y| *y != x) {
            edges.push(ModelEdge {
                index: edges.len(),
                endpoints: sorted_pair(ModelVertex::new(x, 0), ModelVertex::new(x, y)),
                weight: lengths.length(y),
                filter_value: lengths.length(x),
            });
        }
    }
    for x in 1..=k {
        for y in (1..=k).filter(|y| *y != x) {
            edges.push(ModelEdge {
                index: edges.len(),
                endpoints: sorted_pair(ModelVertex::new(0, y), ModelVertex::new(x, y)),
                weight: lengths.length(x),
                filter_value: lengths.length(y),
            });
        }
    }
    let edge_universe = edges.len();
    ModelGraph {
        kind: GraphKind::Full,
        lengths: lengths.clone(),
        vertices,
        edges,
        edge_universe,
    }
}

/// Builds the reduced model graph on the `2k` center-touching vertices.
///
/// Edge `{(x,0),(0,y)}` replaces the path through `(x,y)`; its filter value
/// is the smaller endpoint filter and its weight is the total length of the
/// replaced path, `L_x + L_y`. Indices follow `(x,y)` order.
pub fn build_reduced_model(lengths: &EdgeLengthVector) -> ModelGraph {
    let k = lengths.k();
    let mut vertices = BTreeMap::new();
    for x in 1..=k {
        vertices.insert(ModelVertex::new(x, 0), lengths.length(x));
        vertices.insert(ModelVertex::new(0, x), lengths.length(x));
    }
    let mut edges = Vec::with_capacity(k * (k - 1));
    for x in 1..=k {
        for y in (1..=k).filter(|y| *y != x) {
            let (lx, ly) = (lengths.length(x), lengths.length(y));
            edges.push(ModelEdge {
                index: edges.len(),
                endpoints: sorted_pair(ModelVertex::new(x, 0), ModelVertex::new(0, y)),
                filter_value: lx.clone().min(ly.clone()),
                weight: lx + ly,
            });
        }
    }
    let edge_universe = edges.len();
    ModelGraph {
        kind: GraphKind::Reduced,
        lengths: lengths.clone(),
        vertices,
        edges,
        edge_universe,
    }
}

/// Superlevel subgraph: vertices and edges with filter value `>= r`.
pub fn filter_at(g: &ModelGraph, r: &Rational) -> ModelGraph {
    let vertices: BTreeMap<_, _> = g
        .vertices
        .iter()
        .filter(|(_, f)| *f >= r)
        .map(|(v, f)| (*v, f.clone()))
        .collect();
    let edges = g
        .edges
        .iter()
        .filter(|e| &e.filter_value >= r)
        .cloned()
        .collect::<Vec<_>>();
    debug_assert!(edges
        .iter()
        .all(|e| vertices.contains_key(&e.endpoints.0) && vertices.contains_key(&e.endpoints.1)));
    ModelGraph {
        kind: g.kind,
        lengths: g.lengths.clone(),
        vertices,
        edges,
        edge_universe: g.edge_universe,
    }
}

/// Checks that `small` embeds in `large` as a weighted subgraph: vertex and
/// edge containment by label, and edge weights not decreasing.
pub fn subgraph_monotonicity_check(small: &ModelGraph, large: &ModelGraph) -> Result<bool> {
    if small.kind != large.kind || small.k() != large.k() {
        return Err(Error::GraphMismatch(format!(
            "{:?} k={} vs {:?} k={}",
            small.kind,
            small.k(),
            large.kind,
            large.k()
        )));
    }
    if !small.vertices.keys().all(|v| large.vertices.contains_key(v)) {
        return Ok(false);
    }
    let large_edges: BTreeMap<_, _> = large.edges.iter().map(|e| (e.endpoints, e)).collect();
    for e in &small.edges {
        match large_edges.get(&e.endpoints) {
            Some(big) if e.weight <= big.weight => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

impl ModelGraph {
    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.lengths.k()
    }

    pub fn lengths(&self) -> &EdgeLengthVector {
        &self.lengths
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges of the unfiltered parent graph; the dimension of the
    /// ambient cycle-vector space.
    pub fn edge_universe(&self) -> usize {
        self.edge_universe
    }

    pub fn vertices(&self) -> impl Iterator<Item = ModelVertex> + '_ {
        self.vertices.keys().copied()
    }

    pub fn vertex_filters(&self) -> &BTreeMap<ModelVertex, Rational> {
        &self.vertices
    }

    pub fn vertex_filter(&self, v: ModelVertex) -> Option<&Rational> {
        self.vertices.get(&v)
    }

    pub fn contains_vertex(&self, v: ModelVertex) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn edges(&self) -> &[ModelEdge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Option<&ModelEdge> {
        self.edges
            .binary_search_by_key(&index, |e| e.index)
            .ok()
            .map(|i| &self.edges[i])
    }

    pub fn edge_indices(&self) -> BTreeSet<usize> {
        self.edges.iter().map(|e| e.index).collect()
    }

    pub fn degree(&self, v: ModelVertex) -> usize {
        self.edges
            .iter()
            .filter(|e| e.endpoints.0 == v || e.endpoints.1 == v)
            .count()
    }

    /// Neighbors of `v` with the connecting edge index.
    pub fn neighbors(&self, v: ModelVertex) -> Vec<(ModelVertex, usize)> {
        self.edges
            .iter()
            .filter_map(|e| e.other(v).map(|u| (u, e.index)))
            .collect()
    }

    pub fn max_filter_value(&self) -> Option<&Rational> {
        self.vertices.values().max()
    }

    /// The induced subgraph on the remaining vertices; edge indices are kept.
    pub fn without_vertices(&self, drop: &[ModelVertex]) -> ModelGraph {
        ModelGraph {
            kind: self.kind,
            lengths: self.lengths.clone(),
            vertices: self
                .vertices
                .iter()
                .filter(|(v, _)| !drop.contains(v))
                .map(|(v, f)| (*v, f.clone()))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| !drop.contains(&e.endpoints.0) && !drop.contains(&e.endpoints.1))
                .cloned()
                .collect(),
            edge_universe: self.edge_universe,
        }
    }

    /// Every edge joins the two sides of the bipartition: for the full graph
    /// a center-touching vertex to one that is not, for the reduced graph an
    /// `(x,0)` vertex to a `(0,y)` vertex.
    pub fn is_bipartite_as_built(&self) -> bool {
        self.edges.iter().all(|e| {
            let (a, b) = e.endpoints;
            match self.kind {
                GraphKind::Full => a.touches_center() != b.touches_center(),
                GraphKind::Reduced => (a.x == 0 && b.y == 0) || (a.y == 0 && b.x == 0),
            }
        })
    }

    /// JSON form: `{kind, k, lengths, vertices: [[x,y,"fv"]],
    /// edges: [[idx,[x1,y1],[x2,y2],"weight","fe"]]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "k": self.k(),
            "lengths": self.lengths.normalized().iter().map(Rational::to_pq).collect::<Vec<_>>(),
            "vertices": self.vertices.iter()
                .map(|(v, f)| json!([v.x, v.y, f.to_pq()]))
                .collect::<Vec<_>>(),
            "edges": self.edges.iter()
                .map(|e| json!([
                    e.index,
                    [e.endpoints.0.x, e.endpoints.0.y],
                    [e.endpoints.1.x, e.endpoints.1.y],
                    e.weight.to_pq(),
                    e.filter_value.to_pq(),
                ]))
                .collect::<Vec<_>>(),
        })
    }
}
