//! Hyperplane arrangements in the `(r, L)` parameter plane, chambers of the
//! reduced arrangement and the chamber poset.
//!
//! `r` runs along the horizontal axis and `L` (the first edge length) along
//! the vertical one. The reduced arrangement consists of the diagonal
//! `r = L` and the vertical lines `r = l_i`; its chambers are the half-open
//! bands `(c_j, c_{j+1}]` split by the diagonal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::foundation::Rational;
use crate::model::EdgeLengthVector;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HyperplaneForm {
    /// `r = value`.
    VerticalR(Rational),
    /// `r = L`.
    Diagonal,
    /// `r = L + offset`.
    SlopeLine(Rational),
}

/// Which family of critical parameters produced a line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Origin {
    /// `r = L`.
    FirstLength,
    /// `r = l_i` for a tail edge.
    EdgeLength,
    /// `r = L + l_i`.
    FirstPlusEdge,
    /// `r = l_i + l_j` for two tail edges.
    PairSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub form: HyperplaneForm,
    pub multiplicity: usize,
    pub origins: BTreeSet<Origin>,
}

fn merge(lines: Vec<(HyperplaneForm, Origin)>) -> Vec<Hyperplane> {
    let mut merged: BTreeMap<HyperplaneForm, Hyperplane> = BTreeMap::new();
    for (form, origin) in lines {
        let h = merged.entry(form.clone()).or_insert_with(|| Hyperplane {
            form,
            multiplicity: 0,
            origins: BTreeSet::new(),
        });
        h.multiplicity += 1;
        h.origins.insert(origin);
    }
    merged.into_values().collect()
}

/// Every line across which the combinatorial type of the configuration
/// space can change.
pub fn full_hyperplanes(lengths: &EdgeLengthVector) -> Vec<Hyperplane> {
    let tail = lengths.tail();
    let mut lines = vec![(HyperplaneForm::Diagonal, Origin::FirstLength)];
    for t in tail {
        lines.push((HyperplaneForm::VerticalR(t.clone()), Origin::EdgeLength));
        lines.push((HyperplaneForm::SlopeLine(t.clone()), Origin::FirstPlusEdge));
    }
    for i in 0..tail.len() {
        for j in i + 1..tail.len() {
            lines.push((HyperplaneForm::VerticalR(&tail[i] + &tail[j]), Origin::PairSum));
        }
    }
    merge(lines)
}

/// The lines across which first homology can change: the diagonal and the
/// verticals at the tail lengths.
pub fn reduced_hyperplanes(lengths: &EdgeLengthVector) -> Vec<Hyperplane> {
    let mut lines = vec![(HyperplaneForm::Diagonal, Origin::FirstLength)];
    for t in lengths.tail() {
        lines.push((HyperplaneForm::VerticalR(t.clone()), Origin::EdgeLength));
    }
    merge(lines)
}

/// Distinct values of the vertical lines, ascending.
pub fn vertical_values(hyperplanes: &[Hyperplane]) -> Vec<Rational> {
    let set: BTreeSet<Rational> = hyperplanes
        .iter()
        .filter_map(|h| match &h.form {
            HyperplaneForm::VerticalR(v) => Some(v.clone()),
            _ => None,
        })
        .collect();
    set.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `L >= r`.
    Above,
    /// `L < r`.
    Below,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Above => "above",
            Side::Below => "below",
        })
    }
}

/// `(lower, upper] x side`; `upper = None` means the band is unbounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub id: usize,
    /// Band index, counted from the band next to `r = 0`.
    pub band: usize,
    pub lower: Rational,
    pub upper: Option<Rational>,
    pub side: Side,
}

impl Chamber {
    pub fn contains(&self, r: &Rational, l: &Rational) -> bool {
        let in_band = r > &self.lower && self.upper.as_ref().is_none_or(|u| r <= u);
        in_band && ((l >= r) == (self.side == Side::Above))
    }

    /// Upper end compared as a value, with `None` above everything.
    pub fn upper_le(&self, bound: &Rational) -> bool {
        self.upper.as_ref().is_some_and(|u| u <= bound)
    }

    pub fn band_label(&self) -> String {
        match &self.upper {
            Some(u) => format!("({}, {}]", self.lower, u),
            None => format!("({}, inf)", self.lower),
        }
    }
}

/// An interior point: the band midpoint (or `lower + 1` for the unbounded
/// band), with `L = r + 1` above the diagonal and `L = r / 2` below it.
pub fn chamber_witness(c: &Chamber, _lengths: &EdgeLengthVector) -> (Rational, Rational) {
    let r = match &c.upper {
        Some(u) => c.lower.midpoint(u),
        None => &c.lower + Rational::one(),
    };
    let l = match c.side {
        Side::Above => &r + Rational::one(),
        Side::Below => &r / Rational::from_integer(2),
    };
    (r, l)
}

/// Chambers and their order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberPoset {
    chambers: Vec<Chamber>,
    critical_values: Vec<Rational>,
    relation: Vec<Vec<bool>>,
    dims: Option<Vec<usize>>,
}

/// Enumerates the chambers of the reduced arrangement, band by band from
/// `r = 0`, the `Above` chamber of each band first. The relation is left
/// reflexive only; see [`chamber_poset`].
pub fn enumerate_chambers(reduced: &[Hyperplane]) -> ChamberPoset {
    let critical_values = vertical_values(reduced);
    let mut bounds: Vec<Option<Rational>> = critical_values.iter().cloned().map(Some).collect();
    bounds.push(None);
    let mut chambers = Vec::with_capacity(2 * bounds.len());
    let mut lower = Rational::zero();
    for (band, upper) in bounds.into_iter().enumerate() {
        for side in [Side::Above, Side::Below] {
            chambers.push(Chamber {
                id: chambers.len(),
                band,
                lower: lower.clone(),
                upper: upper.clone(),
                side,
            });
        }
        if let Some(u) = upper {
            lower = u;
        }
    }
    let n = chambers.len();
    let relation = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    ChamberPoset {
        chambers,
        critical_values,
        relation,
        dims: None,
    }
}

/// Whether some point of `p` is below some point of `q` in the parameter
/// order (`r` decreasing, `L` increasing).
fn relation_holds(p: &Chamber, q: &Chamber) -> bool {
    // some r in p is >= some r in q
    let r_ok = p.upper.as_ref().is_none_or(|u| u > &q.lower);
    r_ok && !(p.side == Side::Above && q.side == Side::Below)
}

/// Fills in the order relation of the chamber poset.
pub fn chamber_poset(cs: &ChamberPoset) -> ChamberPoset {
    let n = cs.chambers.len();
    let mut relation: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i == j || relation_holds(&cs.chambers[i], &cs.chambers[j])).collect())
        .collect();
    // already transitive; closing keeps the contract independent of that fact
    for m in 0..n {
        for i in 0..n {
            if relation[i][m] {
                let via = relation[m].clone();
                for (cell, reach) in relation[i].iter_mut().zip(via) {
                    *cell |= reach;
                }
            }
        }
    }
    ChamberPoset {
        relation,
        ..cs.clone()
    }
}

/// Reduced arrangement chambers with the order relation.
pub fn reduced_chamber_poset(lengths: &EdgeLengthVector) -> ChamberPoset {
    chamber_poset(&enumerate_chambers(&reduced_hyperplanes(lengths)))
}

impl ChamberPoset {
    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    /// Distinct vertical critical values, ascending.
    pub fn critical_values(&self) -> &[Rational] {
        &self.critical_values
    }

    pub fn band_count(&self) -> usize {
        self.chambers.iter().map(|c| c.band + 1).max().unwrap_or(0)
    }

    /// `chambers[i] <= chambers[j]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.relation[i][j]
    }

    pub fn relation(&self) -> &[Vec<bool>] {
        &self.relation
    }

    pub fn dims(&self) -> Option<&[usize]> {
        self.dims.as_deref()
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        assert_eq!(dims.len(), self.chambers.len());
        self.dims = Some(dims);
        self
    }

    pub fn chamber_of(&self, r: &Rational, l: &Rational) -> Option<usize> {
        self.chambers.iter().position(|c| c.contains(r, l))
    }

    pub fn find(&self, band: usize, side: Side) -> Option<usize> {
        self.chambers
            .iter()
            .position(|c| c.band == band && c.side == side)
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| self.relation[i][i])
            && (0..n).all(|i| (0..n).all(|j| i == j || !(self.relation[i][j] && self.relation[j][i])))
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    !self.relation[i][j] || (0..n).all(|m| !self.relation[j][m] || self.relation[i][m])
                })
            })
    }

    /// Covering pairs `(i, j)` with `i < j` in the order and nothing between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && self.relation[i][j]
                    && !(0..n).any(|m| m != i && m != j && self.relation[i][m] && self.relation[m][j])
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Whether `set` is convex (closed under betweenness) and connected in
    /// the comparability graph.
    pub fn is_interval(&self, set: &BTreeSet<usize>) -> bool {
        if set.is_empty() {
            return false;
        }
        let n = self.len();
        for &x in set {
            for &z in set {
                if self.relation[x][z] {
                    for y in 0..n {
                        if self.relation[x][y] && self.relation[y][z] && !set.contains(&y) {
                            return false;
                        }
                    }
                }
            }
        }
        let start = *set.iter().next().expect("non-empty");
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in set {
                if (self.relation[u][v] || self.relation[v][u]) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.len() == set.len()
    }

    /// The poset with its lowest band removed; chambers are renumbered and
    /// bands shifted down by one.
    pub fn without_lowest_band(&self) -> ChamberPoset {
        let keep: Vec<usize> = (0..self.len()).filter(|i| self.chambers[*i].band > 0).collect();
        let chambers = keep
            .iter()
            .enumerate()
            .map(|(id, i)| Chamber {
                id,
                band: self.chambers[*i].band - 1,
                ..self.chambers[*i].clone()
            })
            .collect();
        ChamberPoset {
            chambers,
            critical_values: self.critical_values.iter().skip(1).cloned().collect(),
            relation: keep
                .iter()
                .map(|i| keep.iter().map(|j| self.relation[*i][*j]).collect())
                .collect(),
            dims: self
                .dims
                .as_ref()
                .map(|d| keep.iter().map(|i| d[*i]).collect()),
        }
    }
}

/// One point in every open cell of the full arrangement.
///
/// For each open `r`-band between consecutive verticals (pair sums
/// included), the `L` axis is cut at the diagonal `L = r` and at every
/// slope line `L = r - l_i`; one `L` is taken in each open piece.
pub fn full_arrangement_witnesses(lengths: &EdgeLengthVector) -> Vec<(Rational, Rational)> {
    let verticals = vertical_values(&full_hyperplanes(lengths));
    let mut rs = Vec::new();
    let mut lower = Rational::zero();
    for v in &verticals {
        rs.push(lower.midpoint(v));
        lower = v.clone();
    }
    rs.push(&lower + Rational::one());

    let mut out = Vec::new();
    for r in rs {
        let mut cuts: BTreeSet<Rational> = BTreeSet::from([r.clone()]);
        for t in lengths.tail() {
            let c = &r - t;
            if c.is_positive() {
                cuts.insert(c);
            }
        }
        let mut lower = Rational::zero();
        for c in &cuts {
            out.push((r.clone(), lower.midpoint(c)));
            lower = c.clone();
        }
        out.push((r.clone(), &lower + Rational::one()));
    }
    out
}

/// Whether `(r, L)` lies on a line of the full arrangement.
pub fn is_critical(lengths: &EdgeLengthVector, r: &Rational, l: &Rational) -> bool {
    full_hyperplanes(lengths).iter().any(|h| match &h.form {
        HyperplaneForm::VerticalR(v) => v == r,
        HyperplaneForm::Diagonal => r == l,
        HyperplaneForm::SlopeLine(o) => &(l + o) == r,
    })
}
