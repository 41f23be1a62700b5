//! Brute-force homology of the restricted configuration space itself.
//!
//! The space of ordered pairs of points on the metric star at distance at
//! least `r` is a union of polygons, one per ordered pair of edges: the
//! rectangle `[0, l_i] x [0, l_j]` cut by `x + y >= r` when `i != j`, and
//! the two triangles `x - y >= r`, `y - x >= r` inside `[0, l_i]^2`. The
//! polygons are fan-triangulated with vertices keyed by their canonical
//! position pair, so facets where a robot sits at the center or at a leaf
//! glue across cells.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::full_arrangement_witnesses;
use crate::error::{Error, Result};
use crate::foundation::{gf2_rank, Gf2Matrix, Gf2Vector, Rational};
use crate::homology::{betti1_euler, connected_components};
use crate::model::{build_full_model, filter_at, EdgeLengthVector};

/// Where one robot is. Edges are numbered `1..=k` in normalized order;
/// `Interior(i, x)` is at distance `x` from the center, `0 < x < l_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    Center,
    Leaf(usize),
    Interior(usize, Rational),
}

impl Position {
    /// Canonical position at distance `x` from the center along `edge`.
    pub fn on_edge(edge: usize, x: &Rational, lengths: &EdgeLengthVector) -> Position {
        if x.is_zero() {
            Position::Center
        } else if *x == lengths.length(edge) {
            Position::Leaf(edge)
        } else {
            Position::Interior(edge, x.clone())
        }
    }

    /// `(edge, distance from center)`, with no edge for the center.
    pub fn coordinates(&self, lengths: &EdgeLengthVector) -> (Option<usize>, Rational) {
        match self {
            Position::Center => (None, Rational::zero()),
            Position::Leaf(i) => (Some(*i), lengths.length(*i)),
            Position::Interior(i, x) => (Some(*i), x.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConfigPoint(pub Position, pub Position);

/// Path distance between two positions on the star.
pub fn delta(a: &Position, b: &Position, lengths: &EdgeLengthVector) -> Rational {
    let (ea, x) = a.coordinates(lengths);
    let (eb, y) = b.coordinates(lengths);
    match (ea, eb) {
        (Some(i), Some(j)) if i == j => (&x - &y).abs(),
        _ => x + y,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ShapeTag {
    Pentagon,
    Quad,
    Triangle,
    DiagTriangle,
    DegeneratePoint,
    Empty,
}

/// For a cell inside one edge squared: which robot is farther out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum DiagonalOrder {
    /// `x - y >= r`.
    FirstFarther,
    /// `y - x >= r`.
    SecondFarther,
}

/// One polygon of the configuration space, in the coordinates `(x, y)` of
/// the two robots along edges `first` and `second`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopalCell {
    pub first: usize,
    pub second: usize,
    pub diagonal: Option<DiagonalOrder>,
    pub shape: ShapeTag,
    /// Counter-clockwise, starting at the lowest corner (by `y`, then `x`).
    pub corners: Vec<(Rational, Rational)>,
}

impl PolytopalCell {
    pub fn points(&self, lengths: &EdgeLengthVector) -> Vec<ConfigPoint> {
        self.corners
            .iter()
            .map(|(x, y)| {
                ConfigPoint(
                    Position::on_edge(self.first, x, lengths),
                    Position::on_edge(self.second, y, lengths),
                )
            })
            .collect()
    }
}

type Point = (Rational, Rational);

/// Sutherland-Hodgman clip of a convex polygon by `a x + b y >= c`.
fn clip(poly: &[Point], a: i64, b: i64, c: &Rational) -> Vec<Point> {
    let (a, b) = (Rational::from_integer(a), Rational::from_integer(b));
    let value = |p: &Point| &a * &p.0 + &b * &p.1 - c;
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        let (vp, vq) = (value(p), value(q));
        if !vp.is_negative() {
            out.push(p.clone());
        }
        if (vp.is_positive() && vq.is_negative()) || (vp.is_negative() && vq.is_positive()) {
            let t = &vp / (&vp - &vq);
            out.push((&p.0 + &t * (&q.0 - &p.0), &p.1 + &t * (&q.1 - &p.1)));
        }
    }
    normalize_polygon(out)
}

/// Drops repeated consecutive corners and rotates to start at the lowest.
fn normalize_polygon(mut poly: Vec<Point>) -> Vec<Point> {
    poly.dedup();
    while poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    if let Some(start) = (0..poly.len()).min_by(|i, j| {
        (&poly[*i].1, &poly[*i].0).cmp(&(&poly[*j].1, &poly[*j].0))
    }) {
        poly.rotate_left(start);
    }
    poly
}

fn rectangle(w: &Rational, h: &Rational) -> Vec<Point> {
    let z = Rational::zero();
    vec![
        (z.clone(), z.clone()),
        (w.clone(), z.clone()),
        (w.clone(), h.clone()),
        (z, h.clone()),
    ]
}

fn off_diagonal_shape(li: &Rational, lj: &Rational, r: &Rational) -> ShapeTag {
    let (lo, hi) = if li <= lj { (li, lj) } else { (lj, li) };
    let sum = li + lj;
    if r <= lo {
        ShapeTag::Pentagon
    } else if r <= hi {
        ShapeTag::Quad
    } else if *r < sum {
        ShapeTag::Triangle
    } else if *r == sum {
        ShapeTag::DegeneratePoint
    } else {
        ShapeTag::Empty
    }
}

/// Every cell of the configuration space at restraint `r > 0`: one per
/// ordered pair of distinct edges and two per edge.
pub fn enumerate_cells(lengths: &EdgeLengthVector, r: &Rational) -> Vec<PolytopalCell> {
    let k = lengths.k();
    let mut cells = Vec::new();
    for i in 1..=k {
        for j in 1..=k {
            let (li, lj) = (lengths.length(i), lengths.length(j));
            let square = rectangle(&li, &lj);
            if i != j {
                cells.push(PolytopalCell {
                    first: i,
                    second: j,
                    diagonal: None,
                    shape: off_diagonal_shape(&li, &lj, r),
                    corners: clip(&square, 1, 1, r),
                });
            } else {
                let shape = match r.cmp(&li) {
                    std::cmp::Ordering::Less => ShapeTag::DiagTriangle,
                    std::cmp::Ordering::Equal => ShapeTag::DegeneratePoint,
                    std::cmp::Ordering::Greater => ShapeTag::Empty,
                };
                for (order, a, b) in [
                    (DiagonalOrder::FirstFarther, 1, -1),
                    (DiagonalOrder::SecondFarther, -1, 1),
                ] {
                    cells.push(PolytopalCell {
                        first: i,
                        second: i,
                        diagonal: Some(order),
                        shape,
                        corners: clip(&square, a, b, r),
                    });
                }
            }
        }
    }
    cells
}

/// A 2-dimensional simplicial complex with vertices keyed by configuration.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex2 {
    pub vertices: Vec<ConfigPoint>,
    pub edges: BTreeSet<(usize, usize)>,
    pub triangles: BTreeSet<(usize, usize, usize)>,
}

fn sorted2(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn sorted3(a: usize, b: usize, c: usize) -> (usize, usize, usize) {
    let mut v = [a, b, c];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

/// Fan-triangulates every cell from its first corner.
pub fn triangulate(lengths: &EdgeLengthVector, cells: &[PolytopalCell]) -> Result<SimplicialComplex2> {
    let mut index: BTreeMap<ConfigPoint, usize> = BTreeMap::new();
    let mut c = SimplicialComplex2::default();
    for cell in cells {
        let points = cell.points(lengths);
        let distinct: BTreeSet<_> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::InconsistentComplex(format!(
                "cell ({}, {}) has corners with equal keys",
                cell.first, cell.second
            )));
        }
        let ids: Vec<usize> = points
            .into_iter()
            .map(|p| {
                let next = index.len();
                *index.entry(p.clone()).or_insert_with(|| {
                    c.vertices.push(p);
                    next
                })
            })
            .collect();
        let n = ids.len();
        if n >= 2 {
            for i in 0..n {
                let j = (i + 1) % n;
                if i != j {
                    c.edges.insert(sorted2(ids[i], ids[j]));
                }
            }
        }
        for i in 1..n.saturating_sub(1) {
            c.edges.insert(sorted2(ids[0], ids[i]));
            c.triangles.insert(sorted3(ids[0], ids[i], ids[i + 1]));
        }
    }
    for &(a, b, d) in &c.triangles {
        for e in [sorted2(a, b), sorted2(a, d), sorted2(b, d)] {
            if !c.edges.contains(&e) {
                return Err(Error::InconsistentComplex(format!("triangle edge {e:?} missing")));
            }
        }
    }
    Ok(c)
}

impl SimplicialComplex2 {
    pub fn boundary_1(&self) -> Gf2Matrix {
        let rows = self
            .edges
            .iter()
            .map(|(a, b)| Gf2Vector::from_indices(self.vertices.len(), [*a, *b]))
            .collect();
        Gf2Matrix::from_rows(self.vertices.len(), rows).expect("rows have the vertex count as width")
    }

    pub fn boundary_2(&self) -> Gf2Matrix {
        let edge_index: BTreeMap<_, _> = self.edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        let rows = self
            .triangles
            .iter()
            .map(|(a, b, c)| {
                Gf2Vector::from_indices(
                    self.edges.len(),
                    [sorted2(*a, *b), sorted2(*a, *c), sorted2(*b, *c)].map(|e| edge_index[&e]),
                )
            })
            .collect();
        Gf2Matrix::from_rows(self.edges.len(), rows).expect("rows have the edge count as width")
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Vertex, edge and triangle lines in an OFF-like layout. A vertex is
    /// written as `edge distance edge distance`, edge `0` being the center.
    pub fn to_off(&self, lengths: &EdgeLengthVector) -> String {
        let mut s = String::from("OFF\n");
        let _ = writeln!(s, "{} {} {}", self.vertices.len(), self.triangles.len(), self.edges.len());
        for ConfigPoint(a, b) in &self.vertices {
            let (ea, x) = a.coordinates(lengths);
            let (eb, y) = b.coordinates(lengths);
            let _ = writeln!(s, "{} {} {} {}", ea.unwrap_or(0), x.to_pq(), eb.unwrap_or(0), y.to_pq());
        }
        for (a, b, c) in &self.triangles {
            let _ = writeln!(s, "3 {a} {b} {c}");
        }
        s
    }
}

/// GF(2) Betti numbers of a triangulated complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexBetti {
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
}

pub fn complex_ranks(c: &SimplicialComplex2) -> ComplexBetti {
    let r1 = gf2_rank(&c.boundary_1());
    let r2 = gf2_rank(&c.boundary_2());
    ComplexBetti {
        b0: c.vertices.len() - r1,
        b1: c.edges.len() - r1 - r2,
        b2: c.triangles.len() - r2,
    }
}

/// `(b0, b1)`.
pub fn complex_betti(c: &SimplicialComplex2) -> (usize, usize) {
    let b = complex_ranks(c);
    (b.b0, b.b1)
}

/// Triangulated configuration space at `(r, lengths)`.
pub fn configuration_complex(lengths: &EdgeLengthVector, r: &Rational) -> Result<SimplicialComplex2> {
    triangulate(lengths, &enumerate_cells(lengths, r))
}

/// One comparison between the configuration complex and the full model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub r: Rational,
    pub l: Rational,
    pub oracle: (usize, usize),
    pub oracle_b2: usize,
    pub model: (usize, usize),
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.oracle == self.model && self.oracle_b2 == 0
    }
}

/// Compares `(b0, b1)` of the configuration complex against components and
/// first Betti number of the full model at one point in every open cell of
/// the full arrangement.
pub fn oracle_check(lengths: &EdgeLengthVector) -> Result<Vec<OracleComparison>> {
    full_arrangement_witnesses(lengths)
        .into_par_iter()
        .map(|(r, l)| {
            let at = lengths.with_first(l.clone());
            let betti = complex_ranks(&configuration_complex(&at, &r)?);
            let model = filter_at(&build_full_model(&at), &r);
            Ok(OracleComparison {
                oracle: (betti.b0, betti.b1),
                oracle_b2: betti.b2,
                model: (connected_components(&model).0, betti1_euler(&model)),
                r,
                l,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::q;
    use crate::model::normalize_lengths;

    fn lengths(v: &[Rational]) -> EdgeLengthVector {
        normalize_lengths(v).unwrap()
    }

    fn ints(v: &[i64]) -> EdgeLengthVector {
        lengths(&v.iter().map(|x| Rational::from_integer(*x)).collect::<Vec<_>>())
    }

    #[test]
    fn distances() {
        let l = ints(&[5, 3, 2]);
        let c = Position::Center;
        let a = Position::Interior(1, q(1, 1));
        let b = Position::Interior(1, q(4, 1));
        let leaf = Position::Leaf(2);
        assert_eq!(delta(&a, &b, &l), q(3, 1));
        assert_eq!(delta(&a, &leaf, &l), q(4, 1));
        assert_eq!(delta(&c, &leaf, &l), q(3, 1));
        assert_eq!(Position::on_edge(2, &q(3, 1), &l), Position::Leaf(2));
        assert_eq!(Position::on_edge(2, &q(0, 1), &l), Position::Center);
    }

    #[test]
    fn cell_shapes_k3_unit() {
        let l = ints(&[1, 1, 1]);
        let cells = enumerate_cells(&l, &q(1, 2));
        let count = |s| cells.iter().filter(|c| c.shape == s).count();
        assert_eq!(count(ShapeTag::Pentagon), 6);
        assert_eq!(count(ShapeTag::DiagTriangle), 6);
        assert!(cells
            .iter()
            .filter(|c| c.shape == ShapeTag::Pentagon)
            .all(|c| c.corners.len() == 5));
    }

    #[test]
    fn quad_corners() {
        let l = ints(&[2, 1, 1]);
        let cells = enumerate_cells(&l, &q(3, 2));
        let cell = cells.iter().find(|c| c.first == 1 && c.second == 2).unwrap();
        assert_eq!(cell.shape, ShapeTag::Quad);
        assert_eq!(cell.corners, vec![(q(3, 2), q(0, 1)), (q(2, 1), q(0, 1)), (q(2, 1), q(1, 1)), (q(1, 2), q(1, 1))]);
    }

    #[test]
    fn degenerate_point_at_pair_sum() {
        let l = ints(&[2, 1, 1]);
        let cells = enumerate_cells(&l, &q(3, 1));
        let cell = cells.iter().find(|c| c.first == 1 && c.second == 2).unwrap();
        assert_eq!(cell.shape, ShapeTag::DegeneratePoint);
        assert_eq!(cell.points(&l), vec![ConfigPoint(Position::Leaf(1), Position::Leaf(2))]);
    }

    #[test]
    fn every_corner_respects_restraint() {
        let l = ints(&[5, 3, 2, 1]);
        for r in [q(1, 2), q(3, 2), q(5, 2), q(4, 1), q(6, 1)] {
            for cell in enumerate_cells(&l, &r) {
                for ConfigPoint(a, b) in cell.points(&l) {
                    assert!(delta(&a, &b, &l) >= r);
                }
            }
        }
    }

    #[test]
    fn shared_facets_glue() {
        let l = ints(&[4, 3, 2]);
        let r = q(1, 1);
        let cells = enumerate_cells(&l, &r);
        let points = |i, j| {
            cells
                .iter()
                .find(|c| c.first == i && c.second == j && c.diagonal.is_none())
                .unwrap()
                .points(&l)
        };
        let seg = [
            ConfigPoint(Position::Center, Position::Interior(3, q(1, 1))),
            ConfigPoint(Position::Center, Position::Leaf(3)),
        ];
        for (i, j) in [(1, 3), (2, 3)] {
            let p = points(i, j);
            assert!(seg.iter().all(|s| p.contains(s)));
        }
        let diag = cells
            .iter()
            .find(|c| c.first == 3 && c.diagonal == Some(DiagonalOrder::SecondFarther))
            .unwrap()
            .points(&l);
        assert!(seg.iter().all(|s| diag.contains(s)));
    }

    #[test]
    fn betti_examples() {
        let c = configuration_complex(&ints(&[1, 1, 1]), &q(1, 2)).unwrap();
        assert_eq!(complex_betti(&c), (1, 1));
        let c = configuration_complex(&ints(&[10, 3, 2, 1]), &q(3, 2)).unwrap();
        assert_eq!(complex_betti(&c), (1, 1));
        let c = configuration_complex(&ints(&[1, 1, 1]), &q(3, 1)).unwrap();
        assert_eq!(complex_betti(&c), (0, 0));
        let r = complex_ranks(&configuration_complex(&ints(&[3, 2, 2, 1]), &q(1, 3)).unwrap());
        assert_eq!(r.b2, 0);
    }

    #[test]
    fn pentagon_fan() {
        let l = ints(&[3, 2, 1]);
        let cells = enumerate_cells(&l, &q(1, 2));
        let pent: Vec<_> = cells.into_iter().filter(|c| c.first == 1 && c.second == 2).collect();
        let c = triangulate(&l, &pent).unwrap();
        assert_eq!(c.triangles.len(), 3);
        assert_eq!(c.edges.len(), 7);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn off_dump_layout() {
        let l = ints(&[2, 1, 1]);
        let c = configuration_complex(&l, &q(3, 2)).unwrap();
        let off = c.to_off(&l);
        let mut lines = off.lines();
        assert_eq!(lines.next(), Some("OFF"));
        let counts: Vec<usize> = lines.next().unwrap().split(' ').map(|t| t.parse().unwrap()).collect();
        assert_eq!(counts, vec![c.vertices.len(), c.triangles.len(), c.edges.len()]);
        assert_eq!(off.lines().count(), 2 + c.vertices.len() + c.triangles.len());
    }

    #[test]
    fn agrees_with_model_k3() {
        for cmp in oracle_check(&ints(&[5, 3, 2])).unwrap() {
            assert!(cmp.agrees(), "{cmp:?}");
        }
    }
}
