//! Dense linear algebra over GF(2).
//!
//! Vectors are packed into `u64` words; addition is XOR. Everything the
//! persistence pipeline needs (rank, span membership, intersections,
//! complements) reduces to Gaussian elimination against an [`EchelonBasis`].

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(dim: usize) -> usize {
    dim.div_ceil(WORD)
}

/// A vector in GF(2)^dim.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vector {
    dim: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(dim: usize) -> Self {
        Gf2Vector {
            dim,
            words: vec![0; words_for(dim)],
        }
    }

    /// Unit vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.set(i, true);
        v
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(dim: usize, ones: I) -> Self {
        let mut v = Self::zeros(dim);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        Self::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.dim, "bit {i} out of range for dimension {}", self.dim);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.dim, "bit {i} out of range for dimension {}", self.dim);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.dim, "bit {i} out of range for dimension {}", self.dim);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim).filter(move |i| self.get(*i))
    }

    /// In-place XOR. Panics on mismatched dimensions; see [`Gf2Vector::try_add_assign`].
    pub fn add_assign(&mut self, other: &Gf2Vector) {
        assert_eq!(self.dim, other.dim, "GF(2) dimension mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn try_add_assign(&mut self, other: &Gf2Vector) -> Result<()> {
        check_dim(self.dim, other.dim)?;
        self.add_assign(other);
        Ok(())
    }

    pub fn sum(&self, other: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// True if every set bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &Gf2Vector) -> bool {
        self.dim == other.dim
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.dim)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "Gf2Vector({s})")
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Row-major GF(2) matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Gf2Vector>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            cols,
            rows: vec![Gf2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Gf2Matrix {
            cols: n,
            rows: (0..n).map(|i| Gf2Vector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Gf2Vector>) -> Result<Self> {
        for r in &rows {
            check_dim(cols, r.dim())?;
        }
        Ok(Gf2Matrix { cols, rows })
    }

    /// Parses rows written as `'0'`/`'1'` strings.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| Gf2Vector::from_bits(&r.chars().map(|c| c == '1').collect::<Vec<_>>()))
            .collect();
        Self::from_rows(cols, rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Gf2Vector] {
        &self.rows
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.rows[row].set(col, value);
    }

    pub fn flip(&mut self, row: usize, col: usize) {
        self.rows[row].flip(col);
    }

    pub fn rank(&self) -> usize {
        gf2_rank(self)
    }
}

/// Incrementally maintained row-echelon basis.
///
/// Each stored row has a distinct pivot (its lowest set bit) and remembers
/// which inserted vectors were summed to produce it, so span membership can
/// report coefficients.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(Gf2Vector, Gf2Vector)>,
    inserted: usize,
    track: usize,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        Self::with_tracking(dim, 0)
    }

    /// `track` is the maximum number of vectors whose combinations will be
    /// recorded.
    pub fn with_tracking(dim: usize, track: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
            inserted: 0,
            track,
        }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a Gf2Vector>>(dim: usize, vs: I) -> Result<Self> {
        let mut basis = Self::new(dim);
        for v in vs {
            basis.insert(v)?;
        }
        Ok(basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis. Returns the residual and the
    /// combination of inserted vectors that was subtracted.
    pub fn reduce(&self, v: &Gf2Vector) -> Result<(Gf2Vector, Gf2Vector)> {
        check_dim(self.dim, v.dim())?;
        let mut residual = v.clone();
        let mut combo = Gf2Vector::zeros(self.track);
        // Rows are kept sorted by pivot, and each row has no bits below its
        // pivot, so one ascending pass suffices.
        for (row, c) in &self.rows {
            let pivot = row.lowest_one().expect("stored rows are nonzero");
            if residual.get(pivot) {
                residual.add_assign(row);
                combo.add_assign(c);
            }
        }
        Ok((residual, combo))
    }

    pub fn contains(&self, v: &Gf2Vector) -> Result<bool> {
        Ok(self.reduce(v)?.0.is_zero())
    }

    /// Inserts `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &Gf2Vector) -> Result<bool> {
        let (residual, mut combo) = self.reduce(v)?;
        let slot = self.inserted;
        self.inserted += 1;
        if residual.is_zero() {
            return Ok(false);
        }
        if slot < self.track {
            combo.flip(slot);
        }
        let pivot = residual.lowest_one().expect("nonzero residual");
        let pos = self
            .rows
            .partition_point(|(r, _)| r.lowest_one().expect("nonzero") < pivot);
        self.rows.insert(pos, (residual, combo));
        Ok(true)
    }

    pub fn vectors(&self) -> impl Iterator<Item = &Gf2Vector> {
        self.rows.iter().map(|(r, _)| r)
    }
}

/// Rank over GF(2) by Gaussian elimination.
pub fn gf2_rank(m: &Gf2Matrix) -> usize {
    let mut basis = EchelonBasis::new(m.ncols());
    for r in m.rows() {
        basis.insert(r).expect("rows share the matrix width");
    }
    basis.rank()
}

/// Coefficients `c` with `sum c_i basis_i = v`, or `None` if `v` is not in
/// the span. When `basis` is dependent any valid combination may be returned.
pub fn gf2_solve_membership(basis: &[Gf2Vector], v: &Gf2Vector) -> Result<Option<Vec<bool>>> {
    let dim = v.dim();
    let mut echelon = EchelonBasis::with_tracking(dim, basis.len());
    for b in basis {
        echelon.insert(b)?;
    }
    let (residual, combo) = echelon.reduce(v)?;
    if !residual.is_zero() {
        return Ok(None);
    }
    Ok(Some((0..basis.len()).map(|i| combo.get(i)).collect()))
}

pub fn span_rank(vs: &[Gf2Vector], dim: usize) -> Result<usize> {
    Ok(EchelonBasis::from_vectors(dim, vs)?.rank())
}

/// dim(span a ∩ span b) = rank a + rank b - rank(a ∪ b).
pub fn subspace_intersection_dim(a: &[Gf2Vector], b: &[Gf2Vector]) -> Result<usize> {
    let dim = a.first().or(b.first()).map_or(0, |v| v.dim());
    let ra = span_rank(a, dim)?;
    let rb = span_rank(b, dim)?;
    let mut both = EchelonBasis::from_vectors(dim, a)?;
    for v in b {
        both.insert(v)?;
    }
    Ok(ra + rb - both.rank())
}

/// Picks vectors from `candidates` extending `base` to span `target_rank`
/// dimensions. Returns the chosen vectors in candidate order.
pub fn extend_from(
    base: &EchelonBasis,
    candidates: impl IntoIterator<Item = Gf2Vector>,
    target_rank: usize,
) -> Result<Vec<Gf2Vector>> {
    let mut acc = base.clone();
    let mut chosen = Vec::new();
    for c in candidates {
        if acc.rank() >= target_rank {
            break;
        }
        if acc.insert(&c)? {
            chosen.push(c);
        }
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Size of the row space by listing every XOR combination of rows.
    fn brute_force_rank(m: &Gf2Matrix) -> usize {
        let n = m.nrows();
        let mut seen = std::collections::BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let mut acc = Gf2Vector::zeros(m.ncols());
            for (i, r) in m.rows().iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc.add_assign(r);
                }
            }
            seen.insert(acc);
        }
        seen.len().trailing_zeros() as usize
    }

    #[test]
    fn rank_examples() {
        assert_eq!(gf2_rank(&Gf2Matrix::zeros(0, 0)), 0);
        assert_eq!(gf2_rank(&Gf2Matrix::identity(3)), 3);
        let m = Gf2Matrix::from_strs(&["110", "011", "101"]).unwrap();
        assert_eq!(brute_force_rank(&m), 2);
        assert_eq!(gf2_rank(&m), 2);
        // rank leaves the input untouched
        assert_eq!(m, Gf2Matrix::from_strs(&["110", "011", "101"]).unwrap());
    }

    #[test]
    fn membership_examples() {
        let e = |i| Gf2Vector::unit(3, i);
        assert_eq!(gf2_solve_membership(&[], &Gf2Vector::zeros(3)).unwrap(), Some(vec![]));
        assert_eq!(gf2_solve_membership(&[e(0)], &e(1)).unwrap(), None);
        let basis = [e(0), e(0).sum(&e(1))];
        let coeffs = gf2_solve_membership(&basis, &e(1)).unwrap().unwrap();
        assert_eq!(coeffs, vec![true, true]);
        assert!(gf2_solve_membership(&[Gf2Vector::zeros(4)], &e(1)).is_err());
    }

    #[test]
    fn intersection_examples() {
        let e = |i| Gf2Vector::unit(3, i);
        assert_eq!(subspace_intersection_dim(&[e(0)], &[e(0)]).unwrap(), 1);
        assert_eq!(subspace_intersection_dim(&[e(0)], &[e(1)]).unwrap(), 0);
        assert_eq!(subspace_intersection_dim(&[e(0), e(1)], &[e(1), e(2)]).unwrap(), 1);
        assert!(subspace_intersection_dim(&[e(0)], &[Gf2Vector::unit(4, 0)]).is_err());
    }

    #[test]
    fn intersection_matches_enumeration() {
        // span{e1,e2} ∩ span{e2,e3} by listing both spans
        let e = |i| Gf2Vector::unit(3, i);
        let span = |vs: &[Gf2Vector]| {
            let mut out = std::collections::BTreeSet::new();
            for mask in 0..(1 << vs.len()) {
                let mut acc = Gf2Vector::zeros(3);
                for (i, v) in vs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        acc.add_assign(v);
                    }
                }
                out.insert(acc);
            }
            out
        };
        let a = span(&[e(0), e(1)]);
        let b = span(&[e(1), e(2)]);
        let common = a.intersection(&b).count();
        assert_eq!(common, 2); // {0, e2}, so dimension 1
    }

    #[test]
    fn wide_vectors_cross_word_boundaries() {
        let mut v = Gf2Vector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        let mut w = v.clone();
        w.add_assign(&Gf2Vector::unit(130, 0));
        assert_eq!(w.lowest_one(), Some(64));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix(
            max_rows: usize,
            cols: impl Strategy<Value = usize>,
        ) -> impl Strategy<Value = Gf2Matrix> {
            (0..=max_rows, cols).prop_flat_map(|(r, c)| {
                proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                    move |rows| {
                        let rows = rows.iter().map(|b| Gf2Vector::from_bits(b)).collect();
                        Gf2Matrix::from_rows(c, rows).unwrap()
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn rank_matches_row_space_size(m in matrix(8, 1usize..=9)) {
                prop_assert_eq!(gf2_rank(&m), brute_force_rank(&m));
            }

            #[test]
            fn rank_bounded_and_permutation_invariant(m in matrix(8, 1usize..=9), seed in any::<u64>()) {
                let r = gf2_rank(&m);
                prop_assert!(r <= m.nrows().min(m.ncols()));
                let mut rows = m.rows().to_vec();
                let n = rows.len();
                if n > 1 {
                    rows.rotate_left((seed as usize) % n);
                    rows.swap(0, n - 1);
                }
                let p = Gf2Matrix::from_rows(m.ncols(), rows).unwrap();
                prop_assert_eq!(gf2_rank(&p), r);
            }

            #[test]
            fn intersection_is_symmetric((a, b) in (1usize..=7).prop_flat_map(|c| (matrix(5, c..=c), matrix(5, c..=c)))) {
                let x = subspace_intersection_dim(a.rows(), b.rows()).unwrap();
                let y = subspace_intersection_dim(b.rows(), a.rows()).unwrap();
                prop_assert_eq!(x, y);
            }

            #[test]
            fn membership_coefficients_reconstruct(m in matrix(6, 1usize..=8), pick in any::<u8>()) {
                let rows = m.rows();
                let mut v = Gf2Vector::zeros(m.ncols());
                for (i, r) in rows.iter().enumerate() {
                    if pick >> i & 1 == 1 {
                        v.add_assign(r);
                    }
                }
                let coeffs = gf2_solve_membership(rows, &v).unwrap().expect("v is in the span");
                let mut back = Gf2Vector::zeros(m.ncols());
                for (c, r) in coeffs.iter().zip(rows) {
                    if *c {
                        back.add_assign(r);
                    }
                }
                prop_assert_eq!(back, v);
            }
        }
    }
}
