//! Biased spanning trees.
//!
//! An edge's priority is the smaller of its two endpoint weights; a biased
//! spanning tree maximizes the total priority. The greedy construction is
//! Prim's algorithm started from a maximum-weight vertex.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::foundation::Rational;
use crate::model::{ModelEdge, ModelGraph, ModelVertex};

pub type VertexWeights = BTreeMap<ModelVertex, Rational>;

/// The model's own vertex weights: `w((x,0)) = L_x`, `w((0,y)) = L_y`, and
/// in general the vertex filter value.
pub fn model_weights(g: &ModelGraph) -> VertexWeights {
    g.vertex_filters().clone()
}

pub fn edge_priority(e: &ModelEdge, weights: &VertexWeights) -> Result<Rational> {
    let w = |v: ModelVertex| {
        weights
            .get(&v)
            .ok_or_else(|| Error::MissingWeight { vertex: v.to_string() })
    };
    let (a, b) = (w(e.endpoints.0)?, w(e.endpoints.1)?);
    Ok(a.min(b).clone())
}

/// A spanning tree of one connected component, as a set of edge indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpanningTree {
    pub edges: BTreeSet<usize>,
    pub vertices: BTreeSet<ModelVertex>,
    pub root: ModelVertex,
}

impl SpanningTree {
    pub fn total_priority(&self, g: &ModelGraph, weights: &VertexWeights) -> Result<Rational> {
        let mut total = Rational::zero();
        for idx in &self.edges {
            let e = g
                .edge(*idx)
                .ok_or_else(|| Error::InvalidTree(format!("edge {idx} not in graph")))?;
            total = total + edge_priority(e, weights)?;
        }
        Ok(total)
    }

    /// Checks that the tree is a spanning tree of the component of `g` that
    /// contains its vertices.
    pub fn validate(&self, g: &ModelGraph) -> Result<()> {
        if !self.vertices.contains(&self.root) {
            return Err(Error::InvalidTree(format!("root {} not in tree", self.root)));
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return Err(Error::InvalidTree(format!(
                "{} edges on {} vertices",
                self.edges.len(),
                self.vertices.len()
            )));
        }
        let mut uf = UnionFind::new(self.vertices.iter().copied());
        for idx in &self.edges {
            let e = g
                .edge(*idx)
                .ok_or_else(|| Error::InvalidTree(format!("edge {idx} not in graph")))?;
            let (a, b) = e.endpoints;
            if !self.vertices.contains(&a) || !self.vertices.contains(&b) {
                return Err(Error::InvalidTree(format!("edge {idx} leaves the vertex set")));
            }
            if !uf.union(a, b) {
                return Err(Error::InvalidTree(format!("edge {idx} closes a cycle")));
            }
        }
        // spanning: no graph edge leaves the vertex set
        for e in g.edges() {
            if self.vertices.contains(&e.endpoints.0) != self.vertices.contains(&e.endpoints.1) {
                return Err(Error::InvalidTree(format!(
                    "vertex set is not a whole component (edge {})",
                    e.index
                )));
            }
        }
        Ok(())
    }
}

/// Disjoint-set forest over model vertices.
pub(crate) struct UnionFind {
    index: BTreeMap<ModelVertex, usize>,
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(vertices: impl IntoIterator<Item = ModelVertex>) -> Self {
        let index: BTreeMap<_, _> = vertices.into_iter().enumerate().map(|(i, v)| (v, i)).collect();
        let parent = (0..index.len()).collect();
        UnionFind { index, parent }
    }

    fn root(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub(crate) fn find(&mut self, v: ModelVertex) -> usize {
        let i = self.index[&v];
        self.root(i)
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: ModelVertex, b: ModelVertex) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // smaller root index wins so labels stay deterministic
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

fn max_weight_vertex<'a>(
    candidates: impl Iterator<Item = &'a ModelVertex>,
    weights: &VertexWeights,
) -> Result<Option<ModelVertex>> {
    let mut best: Option<(ModelVertex, &Rational)> = None;
    for v in candidates {
        let w = weights
            .get(v)
            .ok_or_else(|| Error::MissingWeight { vertex: v.to_string() })?;
        // strict comparison keeps the smallest label among ties
        if best.is_none_or(|(_, bw)| w > bw) {
            best = Some((*v, w));
        }
    }
    Ok(best.map(|(v, _)| v))
}

/// Prim's algorithm on the component of `root`.
fn prim_from(g: &ModelGraph, weights: &VertexWeights, root: ModelVertex) -> Result<SpanningTree> {
    let mut adjacency: BTreeMap<ModelVertex, Vec<&ModelEdge>> = BTreeMap::new();
    for e in g.edges() {
        adjacency.entry(e.endpoints.0).or_default().push(e);
        adjacency.entry(e.endpoints.1).or_default().push(e);
    }
    let mut vertices = BTreeSet::from([root]);
    let mut edges = BTreeSet::new();
    // max priority first, then the smallest endpoint pair
    let mut frontier = BinaryHeap::new();
    let push = |frontier: &mut BinaryHeap<_>, v: ModelVertex| -> Result<()> {
        for e in adjacency.get(&v).into_iter().flatten() {
            frontier.push((edge_priority(e, weights)?, Reverse((e.endpoints, e.index))));
        }
        Ok(())
    };
    push(&mut frontier, root)?;
    while let Some((_, Reverse(((a, b), idx)))) = frontier.pop() {
        let new = match (vertices.contains(&a), vertices.contains(&b)) {
            (true, false) => b,
            (false, true) => a,
            _ => continue,
        };
        vertices.insert(new);
        edges.insert(idx);
        push(&mut frontier, new)?;
    }
    Ok(SpanningTree { edges, vertices, root })
}

/// Greedy biased spanning tree of a connected graph.
pub fn biased_spanning_tree(g: &ModelGraph, weights: &VertexWeights) -> Result<SpanningTree> {
    let mut forest = biased_spanning_forest(g, weights)?;
    match forest.len() {
        1 => Ok(forest.remove(0)),
        components => Err(Error::Disconnected { components }),
    }
}

/// One biased tree per component, in the order their roots were chosen
/// (each root is the heaviest vertex not yet covered).
pub fn biased_spanning_forest(g: &ModelGraph, weights: &VertexWeights) -> Result<Vec<SpanningTree>> {
    let mut remaining: BTreeSet<ModelVertex> = g.vertices().collect();
    let mut forest = Vec::new();
    while let Some(root) = max_weight_vertex(remaining.iter(), weights)? {
        let tree = prim_from(g, weights, root)?;
        for v in &tree.vertices {
            remaining.remove(v);
        }
        forest.push(tree);
    }
    Ok(forest)
}

fn is_connected_without(g: &ModelGraph, skip: ModelVertex) -> bool {
    let vertices: BTreeSet<_> = g.vertices().filter(|v| *v != skip).collect();
    let Some(start) = vertices.iter().next().copied() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for (w, _) in g.neighbors(u) {
            if w != skip && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == vertices.len()
}

/// Attaches the minimum-weight vertex `v0` to a biased tree of `g - v0`
/// through its heaviest neighbor.
pub fn extend_biased_tree(
    t: &SpanningTree,
    g: &ModelGraph,
    v0: ModelVertex,
    weights: &VertexWeights,
) -> Result<SpanningTree> {
    let mut best: Option<(Rational, ModelVertex, usize)> = None;
    for (u, idx) in g.neighbors(v0) {
        let w = weights
            .get(&u)
            .ok_or_else(|| Error::MissingWeight { vertex: u.to_string() })?
            .clone();
        if best.as_ref().is_none_or(|(bw, bu, _)| w > *bw || (w == *bw && u < *bu)) {
            best = Some((w, u, idx));
        }
    }
    let (_, _, idx) = best.ok_or_else(|| Error::InvalidTree(format!("{v0} has no neighbors")))?;
    extend_biased_tree_with(t, g, v0, idx, weights)
}

/// Attaches `v0` through a chosen incident edge. Since `v0` carries the
/// minimum weight, every incident edge has the same priority `w(v0)`.
pub fn extend_biased_tree_with(
    t: &SpanningTree,
    g: &ModelGraph,
    v0: ModelVertex,
    edge: usize,
    weights: &VertexWeights,
) -> Result<SpanningTree> {
    let w0 = weights
        .get(&v0)
        .ok_or_else(|| Error::MissingWeight { vertex: v0.to_string() })?;
    for v in g.vertices() {
        let w = weights
            .get(&v)
            .ok_or_else(|| Error::MissingWeight { vertex: v.to_string() })?;
        if w < w0 {
            return Err(Error::NotMinimumWeight { vertex: v0.to_string() });
        }
    }
    if !is_connected_without(g, v0) {
        return Err(Error::Disconnected { components: 2 });
    }
    let expected: BTreeSet<_> = g.vertices().filter(|v| *v != v0).collect();
    if t.vertices != expected {
        return Err(Error::InvalidTree("tree does not span g - v0".into()));
    }
    let e = g
        .edge(edge)
        .ok_or_else(|| Error::InvalidTree(format!("edge {edge} not in graph")))?;
    if e.other(v0).is_none() {
        return Err(Error::InvalidTree(format!("edge {edge} is not incident to {v0}")));
    }
    let mut out = t.clone();
    out.vertices.insert(v0);
    out.edges.insert(edge);
    Ok(out)
}

pub const SPANNING_TREE_GUARD: usize = 20;

/// Every spanning tree of a connected graph with at most
/// [`SPANNING_TREE_GUARD`] edges. A disconnected graph has none.
pub fn all_spanning_trees(g: &ModelGraph) -> Result<Vec<SpanningTree>> {
    if g.edge_count() > SPANNING_TREE_GUARD {
        return Err(Error::GuardExceeded {
            edges: g.edge_count(),
            limit: SPANNING_TREE_GUARD,
        });
    }
    let vertices: BTreeSet<_> = g.vertices().collect();
    let Some(root) = vertices.iter().next().copied() else {
        return Ok(Vec::new());
    };
    let position: BTreeMap<ModelVertex, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let edges: Vec<(usize, usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (e.index, position[&e.endpoints.0], position[&e.endpoints.1]))
        .collect();

    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }

    /// Number of union operations that merged two parts.
    fn merges(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> (usize, bool) {
        let mut parent: Vec<usize> = (0..n).collect();
        let mut merged = 0;
        let mut acyclic = true;
        for (a, b) in edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                acyclic = false;
            } else {
                parent[ra] = rb;
                merged += 1;
            }
        }
        (merged, acyclic)
    }

    struct Search<'a> {
        n: usize,
        edges: &'a [(usize, usize, usize)],
        found: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        fn go(&mut self, next: usize, chosen: &mut Vec<usize>) {
            if chosen.len() + 1 == self.n {
                self.found.push(chosen.clone());
                return;
            }
            let reachable = chosen
                .iter()
                .copied()
                .chain(next..self.edges.len())
                .map(|i| (self.edges[i].1, self.edges[i].2));
            if next == self.edges.len() || merges(self.n, reachable).0 + 1 != self.n {
                return;
            }
            chosen.push(next);
            if merges(self.n, chosen.iter().map(|i| (self.edges[*i].1, self.edges[*i].2))).1 {
                self.go(next + 1, chosen);
            }
            chosen.pop();
            self.go(next + 1, chosen);
        }
    }

    let mut search = Search {
        n: vertices.len(),
        edges: &edges,
        found: Vec::new(),
    };
    search.go(0, &mut Vec::new());
    Ok(search
        .found
        .into_iter()
        .map(|chosen| SpanningTree {
            edges: chosen.iter().map(|i| edges[*i].0).collect(),
            vertices: vertices.clone(),
            root,
        })
        .collect())
}
