//! The chamber-poset representation of first homology and its interval
//! decomposition.
//!
//! Every chamber of the reduced arrangement gets the cycle space of the
//! reduced model at the chamber's witness point. All cycle spaces share the
//! model's global edge coordinates, so structure maps are inclusions of
//! subspaces and a decomposition is a basis of the largest space that is
//! adapted to every chamber's subspace.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arrangement::{chamber_witness, reduced_chamber_poset, Chamber, ChamberPoset, Side};
use crate::error::{Error, Result};
use crate::foundation::{extend_from, EchelonBasis, Rational};
use crate::homology::{cycle_space, structure_map_rank, CycleSubspace, CycleVector};
use crate::model::{build_reduced_model, filter_at, EdgeLengthVector, ModelGraph};

/// Support of an interval summand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", content = "bound", rename_all = "lowercase")]
pub enum Region {
    /// `0 < r <= bound`, `L > 0`.
    Rectangle(Rational),
    /// `0 < r <= bound`, `r <= L`.
    Trapezoid(Rational),
}

impl Region {
    pub fn bound(&self) -> &Rational {
        match self {
            Region::Rectangle(b) | Region::Trapezoid(b) => b,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Region::Rectangle(_) => "rectangle",
            Region::Trapezoid(_) => "trapezoid",
        }
    }

    pub fn contains_chamber(&self, c: &Chamber) -> bool {
        match self {
            Region::Rectangle(b) => c.upper_le(b),
            Region::Trapezoid(b) => c.side == Side::Above && c.upper_le(b),
        }
    }

    /// Chambers of `poset` lying in the region.
    pub fn chambers(&self, poset: &ChamberPoset) -> BTreeSet<usize> {
        (0..poset.len())
            .filter(|i| self.contains_chamber(&poset.chambers()[*i]))
            .collect()
    }

    /// Whether `(r, L)` lies in the region.
    pub fn contains_point(&self, r: &Rational, l: &Rational) -> bool {
        r.is_positive()
            && r <= self.bound()
            && match self {
                Region::Rectangle(_) => l.is_positive(),
                Region::Trapezoid(_) => r <= l,
            }
    }

    pub fn scaled(&self, factor: &Rational) -> Region {
        match self {
            Region::Rectangle(b) => Region::Rectangle(b * factor),
            Region::Trapezoid(b) => Region::Trapezoid(b * factor),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind(), self.bound())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSummand {
    pub region: Region,
    pub multiplicity: usize,
    pub witness_vectors: Option<Vec<CycleVector>>,
}

impl IntervalSummand {
    pub fn new(region: Region, multiplicity: usize) -> Self {
        IntervalSummand {
            region,
            multiplicity,
            witness_vectors: None,
        }
    }
}

/// Combines summands with equal regions and sorts by region.
pub fn merge_summands(summands: impl IntoIterator<Item = IntervalSummand>) -> Vec<IntervalSummand> {
    let mut merged: BTreeMap<Region, IntervalSummand> = BTreeMap::new();
    for s in summands.into_iter().filter(|s| s.multiplicity > 0) {
        match merged.get_mut(&s.region) {
            Some(m) => {
                m.multiplicity += s.multiplicity;
                m.witness_vectors = match (m.witness_vectors.take(), s.witness_vectors) {
                    (Some(mut a), Some(b)) => {
                        a.extend(b);
                        Some(a)
                    }
                    _ => None,
                };
            }
            None => {
                merged.insert(s.region.clone(), s);
            }
        }
    }
    merged.into_values().collect()
}

/// `(region, multiplicity)` pairs after merging, for multiset comparison.
pub fn summand_multiset(summands: &[IntervalSummand]) -> Vec<(Region, usize)> {
    merge_summands(summands.iter().map(|s| IntervalSummand::new(s.region.clone(), s.multiplicity)))
        .into_iter()
        .map(|s| (s.region, s.multiplicity))
        .collect()
}

/// A representation of the chamber poset by subspaces of one ambient
/// cycle-vector space.
#[derive(Clone, Debug)]
pub struct Representation {
    lengths: EdgeLengthVector,
    poset: ChamberPoset,
    spaces: Vec<CycleSubspace>,
}

/// The reduced model filtered at the witness point of `chamber`.
pub fn chamber_graph(lengths: &EdgeLengthVector, chamber: &Chamber) -> ModelGraph {
    let (r, l) = chamber_witness(chamber, lengths);
    filter_at(&build_reduced_model(&lengths.with_first(l)), &r)
}

/// Cycle spaces of the reduced model at every chamber of the reduced
/// arrangement.
pub fn build_representation(lengths: &EdgeLengthVector) -> Result<Representation> {
    let poset = reduced_chamber_poset(lengths);
    let spaces: Vec<CycleSubspace> = poset
        .chambers()
        .par_iter()
        .map(|c| cycle_space(&chamber_graph(lengths, c)))
        .collect();
    Representation::new(lengths.clone(), poset, spaces)
}

impl Representation {
    /// Checks that related chambers carry nested subspaces.
    pub fn new(lengths: EdgeLengthVector, poset: ChamberPoset, spaces: Vec<CycleSubspace>) -> Result<Self> {
        if spaces.len() != poset.len() {
            return Err(Error::DimensionMismatch {
                expected: poset.len(),
                found: spaces.len(),
            });
        }
        for i in 0..poset.len() {
            for j in 0..poset.len() {
                if i != j && poset.leq(i, j) {
                    structure_map_rank(&spaces[i], &spaces[j]).map_err(|e| {
                        Error::ContainmentViolated(format!("chamber {i} into chamber {j}: {e}"))
                    })?;
                }
            }
        }
        let dims = spaces.iter().map(CycleSubspace::dim).collect();
        Ok(Representation {
            lengths,
            poset: poset.with_dims(dims),
            spaces,
        })
    }

    pub fn lengths(&self) -> &EdgeLengthVector {
        &self.lengths
    }

    pub fn poset(&self) -> &ChamberPoset {
        &self.poset
    }

    pub fn spaces(&self) -> &[CycleSubspace] {
        &self.spaces
    }

    pub fn space(&self, chamber: usize) -> &CycleSubspace {
        &self.spaces[chamber]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(CycleSubspace::dim).collect()
    }

    pub fn ambient_dim(&self) -> usize {
        let k = self.lengths.k();
        k * (k - 1)
    }

    /// Chambers whose space contains `v`.
    pub fn support(&self, v: &CycleVector) -> BTreeSet<usize> {
        (0..self.spaces.len()).filter(|i| self.spaces[*i].contains(v)).collect()
    }

    /// Rank of every structure map `(source, target, rank)` along the order.
    pub fn structure_map_ranks(&self) -> Result<Vec<(usize, usize, usize)>> {
        let mut out = Vec::new();
        for i in 0..self.poset.len() {
            for j in 0..self.poset.len() {
                if i != j && self.poset.leq(i, j) {
                    out.push((i, j, structure_map_rank(&self.spaces[i], &self.spaces[j])?));
                }
            }
        }
        Ok(out)
    }

    pub fn without_lowest_band(&self) -> Representation {
        let keep = self.poset.chambers().iter().filter(|c| c.band > 0).map(|c| c.id);
        Representation {
            lengths: self.lengths.clone(),
            spaces: keep.map(|i| self.spaces[i].clone()).collect(),
            poset: self.poset.without_lowest_band(),
        }
    }

    fn band_space(&self, band: usize, side: Side) -> CycleSubspace {
        match self.poset.find(band, side) {
            Some(i) => self.spaces[i].clone(),
            None => CycleSubspace::zero(self.ambient_dim()),
        }
    }
}

fn span(ambient: usize, vectors: &[CycleVector]) -> EchelonBasis {
    EchelonBasis::from_vectors(ambient, vectors).expect("vectors share the ambient dimension")
}

/// Whether `basis` is independent and meets every chamber space in a basis
/// of that space.
fn is_adapted(rep: &Representation, basis: &[CycleVector]) -> bool {
    let ambient = rep.ambient_dim();
    if span(ambient, basis).rank() != basis.len() {
        return false;
    }
    rep.spaces.iter().all(|s| {
        let inside: Vec<_> = basis.iter().filter(|v| s.contains(v)).cloned().collect();
        inside.len() == s.dim() && span(ambient, &inside).rank() == s.dim()
    })
}

/// Greedy adapted basis.
///
/// Distinct chamber subspaces are processed by increasing dimension; each
/// one is completed over the sum of the chamber subspaces strictly inside
/// it. Candidates are the fundamental cycles spanning the largest space,
/// then their pairwise sums, then the subspace's own basis.
fn greedy_adapted_basis(rep: &Representation) -> Result<Vec<CycleVector>> {
    let ambient = rep.ambient_dim();
    let mut distinct: Vec<&CycleSubspace> = Vec::new();
    for s in rep.spaces.iter().filter(|s| s.dim() > 0) {
        if !distinct.iter().any(|d| d.dim() == s.dim() && s.is_subspace_of(d)) {
            distinct.push(s);
        }
    }
    distinct.sort_by_key(|s| s.dim());
    let Some(top) = distinct.last() else {
        return Ok(Vec::new());
    };
    let fundamental = top.basis().to_vec();
    let mut pairwise = Vec::new();
    for i in 0..fundamental.len() {
        for j in i + 1..fundamental.len() {
            pairwise.push(fundamental[i].sum(&fundamental[j]));
        }
    }

    let mut chosen = Vec::new();
    for u in &distinct {
        let u_span = u.echelon();
        let mut lower = EchelonBasis::new(ambient);
        for s in distinct.iter().filter(|s| s.dim() < u.dim() && s.is_subspace_of(u)) {
            for v in s.basis() {
                lower.insert(v)?;
            }
        }
        let candidates = fundamental
            .iter()
            .chain(&pairwise)
            .chain(u.basis())
            .filter(|v| u_span.contains(v) == Ok(true))
            .cloned();
        let new = extend_from(&lower, candidates, u.dim())?;
        if lower.rank() + new.len() != u.dim() {
            return Err(Error::NotIntervalDecomposable(format!(
                "could not complete a subspace of dimension {}",
                u.dim()
            )));
        }
        chosen.extend(new);
    }
    Ok(chosen)
}

/// Adapted basis collected from repeated splits of the lowest band.
fn split_adapted_basis(rep: &Representation) -> Result<Vec<CycleVector>> {
    let mut rep = rep.clone();
    let mut vectors = Vec::new();
    while rep.spaces.iter().any(|s| s.dim() > 0) {
        let (a, b) = inductive_split(&rep)?;
        let d = b.poset.find(0, Side::Above).expect("split keeps the lowest band");
        vectors.extend(b.spaces[d].basis().iter().cloned());
        rep = a.without_lowest_band();
    }
    Ok(vectors)
}

/// An adapted basis of the representation with the support of each vector.
pub fn adapted_basis(rep: &Representation) -> Result<Vec<(CycleVector, BTreeSet<usize>)>> {
    let greedy = greedy_adapted_basis(rep)?;
    let basis = if is_adapted(rep, &greedy) {
        greedy
    } else {
        let split = split_adapted_basis(rep)?;
        if !is_adapted(rep, &split) {
            return Err(Error::NotIntervalDecomposable(
                "neither the greedy nor the split construction gave an adapted basis".into(),
            ));
        }
        split
    };
    Ok(basis
        .into_iter()
        .map(|v| {
            let support = rep.support(&v);
            (v, support)
        })
        .collect())
}

fn classify_support(rep: &Representation, support: &BTreeSet<usize>) -> Result<Region> {
    let chambers = rep.poset.chambers();
    let mut bound: Option<&Rational> = None;
    for i in support {
        match &chambers[*i].upper {
            Some(u) => bound = Some(bound.map_or(u, |b| b.max(u))),
            None => {
                return Err(Error::UnsupportedRegion(format!(
                    "support reaches the unbounded band: {support:?}"
                )))
            }
        }
    }
    let bound = bound
        .ok_or_else(|| Error::UnsupportedRegion("empty support".into()))?
        .clone();
    let region = if support.iter().any(|i| chambers[*i].side == Side::Below) {
        Region::Rectangle(bound)
    } else {
        Region::Trapezoid(bound)
    };
    let expected = region.chambers(&rep.poset);
    if &expected != support {
        return Err(Error::UnsupportedRegion(format!(
            "support {support:?} differs from {region} chambers {expected:?}"
        )));
    }
    Ok(region)
}

/// Interval summands read off an adapted basis, merged by region.
pub fn interval_decomposition(rep: &Representation) -> Result<Vec<IntervalSummand>> {
    let mut out = Vec::new();
    for (v, support) in adapted_basis(rep)? {
        out.push(IntervalSummand {
            region: classify_support(rep, &support)?,
            multiplicity: 1,
            witness_vectors: Some(vec![v]),
        });
    }
    Ok(merge_summands(out))
}

/// The decomposition given by the closed-form multiplicity table.
pub fn predicted_decomposition(lengths: &EdgeLengthVector) -> Vec<IntervalSummand> {
    let k = lengths.k();
    let l = |i: usize| lengths.length(i);
    let mut out = Vec::new();
    if k == 3 {
        out.push(IntervalSummand::new(Region::Trapezoid(l(3)), 1));
    } else {
        out.push(IntervalSummand::new(Region::Rectangle(l(4)), 1));
        out.push(IntervalSummand::new(Region::Trapezoid(l(3)), 1));
        out.push(IntervalSummand::new(Region::Trapezoid(l(4)), 3));
        for i in 5..=k {
            out.push(IntervalSummand::new(Region::Rectangle(l(i)), 2 * i - 6));
            out.push(IntervalSummand::new(Region::Trapezoid(l(i)), 2));
        }
    }
    merge_summands(out)
}

/// Splits off the part of the representation born in the lowest band.
///
/// With `b`, `d` the Below and Above chambers of the lowest band and `a`,
/// `c` those of the next band, `A` replaces the spaces at `b` and `d` by
/// the images of `a` and `c`; `B` is zero except at `b` (a complement of
/// the image of `a`) and `d` (that complement extended by a complement of
/// the image of `c`).
pub fn inductive_split(rep: &Representation) -> Result<(Representation, Representation)> {
    let ambient = rep.ambient_dim();
    let p = &rep.poset;
    let (Some(b), Some(d)) = (p.find(0, Side::Below), p.find(0, Side::Above)) else {
        return Err(Error::NotIntervalDecomposable("no lowest band".into()));
    };
    let w_a = rep.band_space(1, Side::Below);
    let w_c = rep.band_space(1, Side::Above);
    let (w_b, w_d) = (&rep.spaces[b], &rep.spaces[d]);
    for (small, big, what) in [(&w_a, w_b, "a into b"), (&w_c, w_d, "c into d"), (w_b, w_d, "b into d")] {
        if !small.is_subspace_of(big) {
            return Err(Error::ContainmentViolated(what.into()));
        }
    }
    let b_b = extend_from(&w_a.echelon(), w_b.basis().iter().cloned(), w_b.dim())?;
    let mut acc = w_c.echelon();
    for v in &b_b {
        if !acc.insert(v)? {
            return Err(Error::NotIntervalDecomposable(
                "complement at b meets the image at d".into(),
            ));
        }
    }
    let extra = extend_from(&acc, w_d.basis().iter().cloned(), w_d.dim())?;
    let mut b_d = b_b.clone();
    b_d.extend(extra);

    let mut a_spaces = rep.spaces.clone();
    a_spaces[b] = w_a;
    a_spaces[d] = w_c;
    let mut b_spaces = vec![CycleSubspace::zero(ambient); rep.spaces.len()];
    b_spaces[b] = CycleSubspace::from_vectors(ambient, b_b)?;
    b_spaces[d] = CycleSubspace::from_vectors(ambient, b_d)?;
    let a = Representation::new(rep.lengths.clone(), p.clone(), a_spaces)?;
    let b = Representation::new(rep.lengths.clone(), p.clone(), b_spaces)?;
    Ok((a, b))
}

/// Decomposition by peeling off the lowest band until at most three
/// chambers carry homology, then reading the rest off an adapted basis.
pub fn decompose_by_splitting(rep: &Representation) -> Result<Vec<IntervalSummand>> {
    let mut rep = rep.clone();
    let mut out = Vec::new();
    while rep.spaces.iter().filter(|s| s.dim() > 0).count() > 3 {
        let bound = rep.poset.chambers()[0]
            .upper
            .clone()
            .ok_or_else(|| Error::NotIntervalDecomposable("homology in the unbounded band".into()))?;
        let (a, b) = inductive_split(&rep)?;
        let below = b.spaces[b.poset.find(0, Side::Below).expect("lowest band")].dim();
        let above = b.spaces[b.poset.find(0, Side::Above).expect("lowest band")].dim();
        out.push(IntervalSummand::new(Region::Rectangle(bound.clone()), below));
        out.push(IntervalSummand::new(Region::Trapezoid(bound), above - below));
        rep = a.without_lowest_band();
    }
    out.extend(interval_decomposition(&rep)?);
    Ok(merge_summands(
        out.into_iter().map(|s| IntervalSummand::new(s.region, s.multiplicity)),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pointwise_counts: bool,
    pub supports_are_intervals: bool,
    pub injective_maps: bool,
    pub matches_prediction: bool,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.pointwise_counts && self.supports_are_intervals && self.injective_maps && self.matches_prediction
    }
}

pub fn verify_decomposition(rep: &Representation, summands: &[IntervalSummand]) -> VerificationReport {
    let mut failures = Vec::new();
    let poset = &rep.poset;

    let mut pointwise_counts = true;
    for (i, c) in poset.chambers().iter().enumerate() {
        let count: usize = summands
            .iter()
            .filter(|s| s.region.contains_chamber(c))
            .map(|s| s.multiplicity)
            .sum();
        if count != rep.spaces[i].dim() {
            pointwise_counts = false;
            failures.push(format!(
                "chamber {i} {} {}: {count} summands, dimension {}",
                c.band_label(),
                c.side,
                rep.spaces[i].dim()
            ));
        }
    }

    let mut supports_are_intervals = true;
    for s in summands {
        if !poset.is_interval(&s.region.chambers(poset)) {
            supports_are_intervals = false;
            failures.push(format!("{} is not an interval of the chamber poset", s.region));
        }
    }

    let mut injective_maps = true;
    match rep.structure_map_ranks() {
        Ok(ranks) => {
            for (i, j, rank) in ranks {
                if rank != rep.spaces[i].dim() {
                    injective_maps = false;
                    failures.push(format!("map {i} -> {j} has rank {rank}"));
                }
            }
        }
        Err(e) => {
            injective_maps = false;
            failures.push(e.to_string());
        }
    }

    let predicted = summand_multiset(&predicted_decomposition(&rep.lengths));
    let computed = summand_multiset(summands);
    let matches_prediction = predicted == computed;
    if !matches_prediction {
        failures.push(format!("computed {computed:?} but predicted {predicted:?}"));
    }

    VerificationReport {
        pointwise_counts,
        supports_are_intervals,
        injective_maps,
        matches_prediction,
        failures,
    }
}

pub fn summands_json(summands: &[IntervalSummand]) -> Value {
    Value::Array(
        summands
            .iter()
            .map(|s| {
                json!({
                    "kind": s.region.kind(),
                    "bound": s.region.bound().to_pq(),
                    "multiplicity": s.multiplicity,
                })
            })
            .collect(),
    )
}

/// `{k, lengths, summands, predicted, verification}`.
pub fn decomposition_json(
    rep: &Representation,
    summands: &[IntervalSummand],
    report: &VerificationReport,
) -> Value {
    json!({
        "k": rep.lengths.k(),
        "lengths": rep.lengths.normalized().iter().map(Rational::to_pq).collect::<Vec<_>>(),
        "summands": summands_json(summands),
        "predicted": summands_json(&predicted_decomposition(&rep.lengths)),
        "verification": report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::q;
    use crate::model::normalize_lengths;

    fn lengths(v: &[i64]) -> EdgeLengthVector {
        normalize_lengths(&v.iter().map(|x| Rational::from_integer(*x)).collect::<Vec<_>>()).unwrap()
    }

    fn nonzero_dims(rep: &Representation) -> Vec<usize> {
        let mut d: Vec<_> = rep.dims().into_iter().filter(|d| *d > 0).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn representation_dims() {
        assert_eq!(nonzero_dims(&build_representation(&lengths(&[40, 4, 3, 2, 1])).unwrap()), [1, 1, 5, 5, 11]);
        assert_eq!(nonzero_dims(&build_representation(&lengths(&[30, 3, 2, 1])).unwrap()), [1, 1, 5]);
        assert_eq!(nonzero_dims(&build_representation(&lengths(&[20, 2, 1])).unwrap()), [1]);
    }

    #[test]
    fn small_decompositions() {
        let rep = build_representation(&lengths(&[30, 3, 2, 1])).unwrap();
        let got = summand_multiset(&interval_decomposition(&rep).unwrap());
        assert_eq!(
            got,
            vec![
                (Region::Rectangle(q(1, 1)), 1),
                (Region::Trapezoid(q(1, 1)), 3),
                (Region::Trapezoid(q(2, 1)), 1),
            ]
        );
        let rep = build_representation(&lengths(&[20, 2, 1])).unwrap();
        assert_eq!(
            summand_multiset(&interval_decomposition(&rep).unwrap()),
            vec![(Region::Trapezoid(q(1, 1)), 1)]
        );
    }

    #[test]
    fn k5_decomposition_and_split() {
        let rep = build_representation(&lengths(&[40, 1, 2, 3, 4])).unwrap();
        let direct = interval_decomposition(&rep).unwrap();
        assert_eq!(
            summand_multiset(&direct),
            vec![
                (Region::Rectangle(q(1, 1)), 4),
                (Region::Rectangle(q(2, 1)), 1),
                (Region::Trapezoid(q(1, 1)), 2),
                (Region::Trapezoid(q(2, 1)), 3),
                (Region::Trapezoid(q(3, 1)), 1),
            ]
        );
        let (a, b) = inductive_split(&rep).unwrap();
        let bd: Vec<_> = b.dims().into_iter().filter(|d| *d > 0).collect();
        assert_eq!(bd, [6, 4]);
        for i in 0..rep.poset().len() {
            assert_eq!(a.space(i).dim() + b.space(i).dim(), rep.space(i).dim());
        }
        assert_eq!(summand_multiset(&decompose_by_splitting(&rep).unwrap()), summand_multiset(&direct));
        assert!(verify_decomposition(&rep, &direct).passed());
    }

    #[test]
    fn split_basis_is_adapted() {
        let rep = build_representation(&lengths(&[70, 6, 5, 4, 3, 2])).unwrap();
        let basis = split_adapted_basis(&rep).unwrap();
        assert!(is_adapted(&rep, &basis));
        assert_eq!(basis.len(), 19);
    }

    #[test]
    fn prediction_with_ties() {
        let got = summand_multiset(&predicted_decomposition(&lengths(&[9, 2, 2, 2, 2])));
        assert_eq!(got, vec![(Region::Rectangle(q(2, 1)), 5), (Region::Trapezoid(q(2, 1)), 6)]);
    }

    #[test]
    fn verification_flags_wrong_summands() {
        let rep = build_representation(&lengths(&[30, 3, 2, 1])).unwrap();
        let wrong = vec![IntervalSummand::new(Region::Trapezoid(q(1, 1)), 5)];
        let report = verify_decomposition(&rep, &wrong);
        assert!(!report.passed());
        assert!(!report.pointwise_counts);
        assert!(!report.matches_prediction);
        assert!(report.injective_maps);
    }

    #[test]
    fn region_geometry() {
        let t = Region::Trapezoid(q(2, 1));
        assert!(t.contains_point(&q(1, 1), &q(1, 1)));
        assert!(!t.contains_point(&q(1, 1), &q(1, 2)));
        assert!(Region::Rectangle(q(2, 1)).contains_point(&q(2, 1), &q(1, 2)));
        assert!(!Region::Rectangle(q(2, 1)).contains_point(&q(3, 1), &q(5, 1)));
    }
}
