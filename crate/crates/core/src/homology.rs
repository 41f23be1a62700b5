//! Components, first Betti numbers and GF(2) cycle spaces of model graphs.
//!
//! Cycle vectors are indexed by the global edge indices of the unfiltered
//! model, so cycle spaces at different parameter values can be compared by
//! plain subspace containment.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::arrangement::{chamber_witness, Chamber, Side};
use crate::error::{Error, Result};
use crate::foundation::{EchelonBasis, Gf2Vector};
use crate::model::{EdgeLengthVector, ModelGraph, ModelVertex};
use crate::spanning::{biased_spanning_forest, model_weights, SpanningTree, UnionFind};

/// A GF(2) edge vector whose support has even degree at every vertex.
pub type CycleVector = Gf2Vector;

/// A subspace of the cycle-vector space, stored as an independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSubspace {
    ambient: usize,
    basis: Vec<CycleVector>,
}

impl CycleSubspace {
    pub fn zero(ambient: usize) -> Self {
        CycleSubspace { ambient, basis: Vec::new() }
    }

    /// Keeps an independent subset of `vectors` spanning the same space.
    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = CycleVector>) -> Result<Self> {
        let mut echelon = EchelonBasis::new(ambient);
        let mut basis = Vec::new();
        for v in vectors {
            if v.dim() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.dim() });
            }
            if echelon.insert(&v)? {
                basis.push(v);
            }
        }
        Ok(CycleSubspace { ambient, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CycleVector] {
        &self.basis
    }

    pub fn echelon(&self) -> EchelonBasis {
        EchelonBasis::from_vectors(self.ambient, &self.basis)
            .expect("basis vectors share the ambient dimension")
    }

    pub fn contains(&self, v: &CycleVector) -> bool {
        self.echelon().contains(v) == Ok(true)
    }

    pub fn is_subspace_of(&self, other: &CycleSubspace) -> bool {
        let e = other.echelon();
        self.ambient == other.ambient && self.basis.iter().all(|v| e.contains(v) == Ok(true))
    }

    /// Edge indices of `v` as a JSON-friendly list.
    pub fn support_indices(v: &CycleVector) -> Vec<usize> {
        v.ones().collect()
    }
}

/// Number of path components and a component label per vertex. Labels are
/// numbered in the order of each component's smallest vertex.
pub fn connected_components(g: &ModelGraph) -> (usize, BTreeMap<ModelVertex, usize>) {
    let mut uf = UnionFind::new(g.vertices());
    for e in g.edges() {
        uf.union(e.endpoints.0, e.endpoints.1);
    }
    let mut labels_by_root = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for v in g.vertices() {
        let root = uf.find(v);
        let next = labels_by_root.len();
        let label = *labels_by_root.entry(root).or_insert(next);
        labels.insert(v, label);
    }
    (labels_by_root.len(), labels)
}

/// `E - V + C`.
pub fn betti1_euler(g: &ModelGraph) -> usize {
    let (c, _) = connected_components(g);
    g.edge_count() + c - g.vertex_count()
}

/// The closed-form rank for the chamber, when one applies.
pub fn closed_form_betti1(chamber: &Chamber, lengths: &EdgeLengthVector) -> Option<usize> {
    let k = lengths.k();
    let (r, _) = chamber_witness(chamber, lengths);
    let l = |i: usize| lengths.length(i);
    let above = chamber.side == Side::Above;
    let formula = |a: i64| usize::try_from(a).ok();
    let k = k as i64;
    if r > l(2) {
        return Some(0);
    }
    if r <= l(k as usize) {
        if above {
            return formula(k * k - 3 * k + 1);
        }
        if k >= 4 {
            return formula(k * k - 5 * k + 5);
        }
        return None;
    }
    if k < 4 {
        return None;
    }
    if above && r <= l(k as usize - 1) {
        return formula(k * k - 5 * k + 5);
    }
    if r > l(4) {
        if !above {
            return Some(0);
        }
        if r <= l(3) {
            return Some(1);
        }
    }
    None
}

/// Fundamental cycles of a spanning forest (one tree per component), one
/// per non-tree edge, in increasing order of that edge's index.
pub fn fundamental_cycles(g: &ModelGraph, forest: &[SpanningTree]) -> Result<Vec<CycleVector>> {
    let mut covered = BTreeSet::new();
    let mut tree_edges = BTreeSet::new();
    let mut parent: BTreeMap<ModelVertex, Option<(ModelVertex, usize)>> = BTreeMap::new();
    for t in forest {
        t.validate(g)?;
        for v in &t.vertices {
            if !covered.insert(*v) {
                return Err(Error::InvalidTree(format!("{v} lies in two trees")));
            }
        }
        tree_edges.extend(t.edges.iter().copied());
        parent.insert(t.root, None);
        let mut queue = VecDeque::from([t.root]);
        while let Some(u) = queue.pop_front() {
            for (w, idx) in g.neighbors(u) {
                if t.edges.contains(&idx) && !parent.contains_key(&w) {
                    parent.insert(w, Some((u, idx)));
                    queue.push_back(w);
                }
            }
        }
    }
    if covered.len() != g.vertex_count() {
        return Err(Error::InvalidTree("forest does not cover every vertex".into()));
    }
    let depth = |mut v: ModelVertex| {
        let mut d = 0;
        while let Some((p, _)) = parent[&v] {
            v = p;
            d += 1;
        }
        d
    };
    let mut cycles = Vec::new();
    for e in g.edges().iter().filter(|e| !tree_edges.contains(&e.index)) {
        let mut v = Gf2Vector::zeros(g.edge_universe());
        v.set(e.index, true);
        let (mut a, mut b) = e.endpoints;
        let (mut da, mut db) = (depth(a), depth(b));
        while a != b {
            if da >= db {
                let (p, idx) = parent[&a].expect("non-root has a parent");
                v.flip(idx);
                a = p;
                da -= 1;
            } else {
                let (p, idx) = parent[&b].expect("non-root has a parent");
                v.flip(idx);
                b = p;
                db -= 1;
            }
        }
        cycles.push(v);
    }
    Ok(cycles)
}

/// Basis of the cycle space from the fundamental cycles of the biased
/// spanning forest.
pub fn cycle_space(g: &ModelGraph) -> CycleSubspace {
    let forest = biased_spanning_forest(g, &model_weights(g)).expect("model weights cover every vertex");
    let cycles = fundamental_cycles(g, &forest).expect("greedy forest spans the graph");
    CycleSubspace {
        ambient: g.edge_universe(),
        basis: cycles,
    }
}

/// Whether every vertex of the support of `v` has even degree in `g`.
pub fn is_cycle(g: &ModelGraph, v: &CycleVector) -> bool {
    let mut degree: BTreeMap<ModelVertex, usize> = BTreeMap::new();
    for idx in v.ones() {
        match g.edge(idx) {
            Some(e) => {
                *degree.entry(e.endpoints.0).or_default() += 1;
                *degree.entry(e.endpoints.1).or_default() += 1;
            }
            None => return false,
        }
    }
    degree.values().all(|d| d % 2 == 0)
}

/// Rank of the map induced by inclusion, which is injective: fails unless
/// `sub` is contained in `sup`, and then returns `dim(sub)`.
pub fn structure_map_rank(sub: &CycleSubspace, sup: &CycleSubspace) -> Result<usize> {
    if sub.ambient != sup.ambient {
        return Err(Error::DimensionMismatch { expected: sup.ambient, found: sub.ambient });
    }
    let e = sup.echelon();
    if let Some(i) = sub.basis.iter().position(|v| e.contains(v) != Ok(true)) {
        return Err(Error::ContainmentViolated(format!(
            "basis vector {i} {:?} is not in the target space",
            sub.basis[i]
        )));
    }
    Ok(sub.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::reduced_chamber_poset;
    use crate::foundation::{q, Rational};
    use crate::model::{build_full_model, build_reduced_model, filter_at, normalize_lengths};

    fn lengths(v: &[i64]) -> EdgeLengthVector {
        normalize_lengths(&v.iter().map(|x| Rational::from_integer(*x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn components_and_betti() {
        let l = lengths(&[10, 3, 2, 1]);
        let empty = filter_at(&build_full_model(&l), &q(100, 1));
        assert_eq!(connected_components(&empty).0, 0);
        assert_eq!(betti1_euler(&empty), 0);
        let full = build_full_model(&l);
        assert_eq!(connected_components(&filter_at(&full, &q(1, 2))).0, 1);
        assert_eq!(betti1_euler(&filter_at(&full, &q(3, 2))), 1);
        let k5 = build_full_model(&lengths(&[10, 1, 2, 3, 4]));
        assert_eq!(betti1_euler(&filter_at(&k5, &q(1, 2))), 11);
    }

    #[test]
    fn component_labels_follow_smallest_vertex() {
        let g = filter_at(&build_reduced_model(&lengths(&[10, 3, 2, 1])), &q(5, 2));
        let (c, labels) = connected_components(&g);
        assert_eq!(c, 2);
        let first = g.vertices().next().unwrap();
        assert_eq!(labels[&first], 0);
    }

    #[test]
    fn closed_forms() {
        let l6 = lengths(&[60, 6, 5, 4, 3, 2]);
        let p = reduced_chamber_poset(&l6);
        let c = |band, side| &p.chambers()[p.find(band, side).unwrap()];
        assert_eq!(closed_form_betti1(c(0, Side::Above), &l6), Some(19));
        assert_eq!(closed_form_betti1(c(1, Side::Above), &l6), Some(11));
        assert_eq!(closed_form_betti1(c(0, Side::Below), &l6), Some(11));
        assert_eq!(closed_form_betti1(c(2, Side::Above), &l6), None);
        assert_eq!(closed_form_betti1(c(3, Side::Above), &l6), Some(1));
        assert_eq!(closed_form_betti1(c(3, Side::Below), &l6), Some(0));
        assert_eq!(closed_form_betti1(c(5, Side::Above), &l6), Some(0));
        let l5 = lengths(&[40, 4, 3, 2, 1]);
        let p = reduced_chamber_poset(&l5);
        let c = &p.chambers()[p.find(2, Side::Above).unwrap()];
        assert_eq!(closed_form_betti1(c, &l5), Some(1));
    }

    #[test]
    fn cycle_space_dimensions() {
        let g = build_reduced_model(&lengths(&[10, 3, 2, 1]));
        let cs = cycle_space(&g);
        assert_eq!(cs.dim(), 5);
        assert!(cs.basis().iter().all(|v| is_cycle(&g, v)));
        // the reduced k=3 graph is a single 6-cycle
        let g3 = build_reduced_model(&lengths(&[10, 3, 2]));
        let cs3 = cycle_space(&g3);
        assert_eq!(cs3.dim(), 1);
        assert_eq!(cs3.basis()[0].count_ones(), 6);
        // a forest has no cycles
        let tree = filter_at(&build_full_model(&lengths(&[10, 3, 2, 1])), &q(7, 2));
        assert_eq!(cycle_space(&tree).dim(), betti1_euler(&tree));
    }

    #[test]
    fn structure_maps() {
        let g = build_reduced_model(&lengths(&[10, 4, 3, 2, 1]));
        let top = cycle_space(&filter_at(&g, &q(1, 2)));
        let next = cycle_space(&filter_at(&g, &q(3, 2)));
        assert_eq!((top.dim(), next.dim()), (11, 5));
        assert_eq!(structure_map_rank(&next, &top), Ok(5));
        assert_eq!(structure_map_rank(&top, &top), Ok(11));
        assert!(matches!(structure_map_rank(&top, &next), Err(Error::ContainmentViolated(_))));
    }
}
