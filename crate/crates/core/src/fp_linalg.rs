//! Exact linear algebra over the prime field F_p.
//!
//! Matrices are stored column-sparse: column `j` is the image of the `j`-th
//! basis vector, as a sorted list of `(row, value)` pairs with nonzero values.
//! Elimination is column reduction with the pivot at the largest row index,
//! which is the natural order for chain complexes (and allows clearing).

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::series::GradedDims;

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_i64(self) -> i64 {
        self.0 as i64
    }

    #[inline]
    fn reduce(self, x: u64) -> u32 {
        match self.0 {
            2 => (x & 1) as u32,
            p => (x % p as u64) as u32,
        }
    }

    /// Residue of an arbitrary integer in `[0, p)`.
    #[inline]
    pub fn residue(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 + b as u64)
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.pow(a, self.0 as u64 - 2)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Sparse vector: strictly increasing indices, nonzero residues.
pub type SparseVec = Vec<(u32, u32)>;

/// `a + c·b`, both sorted.
fn axpy(p: Prime, a: &[(u32, u32)], c: u32, b: &[(u32, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let f2 = p.get() == 2;
    while i < a.len() && j < b.len() {
        let (ia, va) = a[i];
        let (ib, vb) = b[j];
        if ia < ib {
            out.push(a[i]);
            i += 1;
        } else if ib < ia {
            out.push((ib, if f2 { 1 } else { p.mul(c, vb) }));
            j += 1;
        } else {
            if !f2 {
                let v = p.add(va, p.mul(c, vb));
                if v != 0 {
                    out.push((ia, v));
                }
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    if f2 {
        out.extend_from_slice(&b[j..]);
    } else {
        out.extend(b[j..].iter().map(|&(r, v)| (r, p.mul(c, v))));
    }
    out
}

/// Sort, merge duplicates and drop zeros.
fn normalize(p: Prime, mut v: Vec<(u32, i64)>) -> SparseVec {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (r, x) in v {
        let x = p.residue(x);
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 = p.add(last.1, x),
            _ => out.push((r, x)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// Incremental column echelon form, pivoting on the largest row index.
/// Optionally tracks each reduced column as a combination of the inputs.
struct Echelon {
    p: Prime,
    pivot: Vec<u32>,
    reduced: Vec<SparseVec>,
    track: Option<Vec<SparseVec>>,
}

const NO_PIVOT: u32 = u32::MAX;

impl Echelon {
    fn new(p: Prime, rows: usize, tracking: bool) -> Self {
        Echelon { p, pivot: vec![NO_PIVOT; rows], reduced: Vec::new(), track: tracking.then(Vec::new) }
    }

    /// Reduce `v` (with tag `t`, a combination of inputs) against the stored pivots.
    fn reduce(&self, mut v: SparseVec, mut t: SparseVec) -> (SparseVec, SparseVec) {
        let p = self.p;
        while let Some(&(r, c)) = v.last() {
            let k = self.pivot[r as usize];
            if k == NO_PIVOT {
                break;
            }
            let col = &self.reduced[k as usize];
            let lead = col.last().unwrap().1;
            let factor = p.neg(p.mul(c, p.inv(lead)));
            v = axpy(p, &v, factor, col);
            if let Some(track) = &self.track {
                t = axpy(p, &t, factor, &track[k as usize]);
            }
        }
        (v, t)
    }

    /// Insert a vector; returns the residual and its tag when it reduced to zero.
    fn insert(&mut self, v: SparseVec, t: SparseVec) -> Option<SparseVec> {
        let (v, t) = self.reduce(v, t);
        match v.last() {
            None => Some(t),
            Some(&(r, _)) => {
                self.pivot[r as usize] = self.reduced.len() as u32;
                self.reduced.push(v);
                if let Some(track) = &mut self.track {
                    track.push(t);
                }
                None
            }
        }
    }

    fn rank(&self) -> usize {
        self.reduced.len()
    }
}

/// Incrementally grown subspace of `F_p^dim`.
pub struct SpanBuilder {
    ech: Echelon,
}

impl SpanBuilder {
    pub fn new(p: Prime, dim: usize) -> Self {
        SpanBuilder { ech: Echelon::new(p, dim, false) }
    }

    /// Adds `v`; returns whether it was outside the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.ech.insert(v, Vec::new()).is_none()
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.ech.reduce(v, Vec::new()).0.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }
}

/// Sparse vector from integer entries.
pub fn sparse(p: Prime, entries: Vec<(u32, i64)>) -> SparseVec {
    normalize(p, entries)
}

/// Matrix over F_p acting on column vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {}x{}) {:?}", self.p, self.rows, self.cols, self.to_dense())
    }
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        FpMatrix { p, rows: n, cols: n, data: (0..n as u32).map(|i| vec![(i, 1)]).collect() }
    }

    /// From row-major integer entries; entries are reduced mod p.
    pub fn from_dense(p: Prime, rows: &[Vec<i64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let mut data = vec![Vec::new(); ncols];
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let v = p.residue(x);
                if v != 0 {
                    data[j].push((i as u32, v));
                }
            }
        }
        Ok(FpMatrix { p, rows: rows.len(), cols: ncols, data })
    }

    /// From integer columns given as `(row, value)` lists in any order.
    pub fn from_columns(p: Prime, rows: usize, columns: Vec<Vec<(u32, i64)>>) -> Result<Self> {
        let cols = columns.len();
        let mut data = Vec::with_capacity(cols);
        for c in columns {
            if c.iter().any(|&(r, _)| r as usize >= rows) {
                return Err(Error::Shape(format!("row index out of range for {rows} rows")));
            }
            data.push(normalize(p, c));
        }
        Ok(FpMatrix { p, rows, cols, data })
    }

    pub(crate) fn from_sparse_columns(p: Prime, rows: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|e| (e.0 as usize) < rows && e.1 != 0 && e.1 < p.get())));
        FpMatrix { p, rows, cols: data.len(), data }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(u32, u32)] {
        &self.data[j]
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        let col = &self.data[c];
        col.binary_search_by_key(&(r as u32), |e| e.0).map_or(0, |k| col[k].1)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (j, col) in self.data.iter().enumerate() {
            for &(r, v) in col {
                out[r as usize][j] = v;
            }
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut data = vec![Vec::new(); self.rows];
        for (j, col) in self.data.iter().enumerate() {
            for &(r, v) in col {
                data[r as usize].push((j as u32, v));
            }
        }
        FpMatrix { p: self.p, rows: self.cols, cols: self.rows, data }
    }

    /// Apply to a sparse vector.
    pub fn apply(&self, v: &[(u32, u32)]) -> SparseVec {
        let mut acc: SparseVec = Vec::new();
        for &(j, c) in v {
            acc = axpy(self.p, &acc, c, &self.data[j as usize]);
        }
        acc
    }

    /// `self · other`.
    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows || self.p != other.p {
            return Err(Error::Shape(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let data = other.data.iter().map(|c| self.apply(c)).collect();
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: other.cols, data })
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("sum of unequal shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| axpy(self.p, a, 1, b)).collect();
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: i64) -> FpMatrix {
        let c = self.p.residue(c);
        let data = if c == 0 {
            vec![Vec::new(); self.cols]
        } else {
            self.data.iter().map(|col| col.iter().map(|&(r, v)| (r, self.p.mul(c, v))).collect()).collect()
        };
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("difference of unequal shapes".into()));
        }
        let m1 = self.p.neg(1);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| axpy(self.p, a, m1, b)).collect();
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data })
    }

    /// Kronecker product; basis index of `(i, j)` is `i·dim(other) + j`.
    pub fn kron(&self, other: &FpMatrix) -> FpMatrix {
        let p = self.p;
        let mut data = Vec::with_capacity(self.cols * other.cols);
        for a in &self.data {
            for b in &other.data {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for &(ra, va) in a {
                    for &(rb, vb) in b {
                        col.push((ra * other.rows as u32 + rb, p.mul(va, vb)));
                    }
                }
                data.push(col);
            }
        }
        FpMatrix { p, rows: self.rows * other.rows, cols: self.cols * other.cols, data }
    }

    /// Stack column-wise: `[self | other]`.
    pub fn hcat(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.rows != other.rows {
            return Err(Error::Shape("hcat with unequal row counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(FpMatrix { p: self.p, rows: self.rows, cols: self.cols + other.cols, data })
    }

    /// Stack row-wise.
    pub fn vcat(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.cols {
            return Err(Error::Shape("vcat with unequal column counts".into()));
        }
        let shift = self.rows as u32;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&(r, v)| (r + shift, v))).collect())
            .collect();
        Ok(FpMatrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Basis of the null space, as the columns of a `cols × dim ker` matrix.
    pub fn kernel(&self) -> FpMatrix {
        let mut ech = Echelon::new(self.p, self.rows, true);
        let mut basis = Vec::new();
        for (j, col) in self.data.iter().enumerate() {
            if let Some(t) = ech.insert(col.clone(), vec![(j as u32, 1)]) {
                basis.push(t);
            }
        }
        FpMatrix { p: self.p, rows: self.cols, cols: basis.len(), data: basis }
    }

    /// Coordinates `X` with `basis · X = self`, if every column lies in the span.
    /// The columns of `basis` must be linearly independent.
    pub fn solve_in(&self, basis: &FpMatrix) -> Result<Option<FpMatrix>> {
        if basis.rows != self.rows {
            return Err(Error::Shape("solve_in with unequal row counts".into()));
        }
        let mut ech = Echelon::new(self.p, self.rows, true);
        for (j, col) in basis.data.iter().enumerate() {
            if ech.insert(col.clone(), vec![(j as u32, 1)]).is_some() {
                return Err(Error::invalid("solve_in: basis columns are dependent"));
            }
        }
        let m1 = self.p.neg(1);
        let mut out = Vec::with_capacity(self.cols);
        for col in &self.data {
            let (res, t) = ech.reduce(col.clone(), Vec::new());
            if !res.is_empty() {
                return Ok(None);
            }
            // col − Σ (tracked combos) = 0, with the tag holding −(coefficients).
            out.push(t.into_iter().map(|(i, v)| (i, self.p.mul(m1, v))).collect());
        }
        Ok(Some(FpMatrix { p: self.p, rows: basis.cols, cols: self.cols, data: out }))
    }
}

/// Rank over F_p.
pub fn rank(m: &FpMatrix) -> usize {
    let mut ech = Echelon::new(m.p, m.rows, false);
    for col in &m.data {
        ech.insert(col.clone(), Vec::new());
    }
    ech.rank()
}

/// Rank of the columns not listed in `skip`; returns the rank and the pivot rows.
fn rank_with_clearing(m: &FpMatrix, skip: &[bool]) -> (usize, Vec<bool>) {
    let mut ech = Echelon::new(m.p, m.rows, false);
    for (j, col) in m.data.iter().enumerate() {
        if !skip.get(j).copied().unwrap_or(false) {
            ech.insert(col.clone(), Vec::new());
        }
    }
    let pivots = ech.pivot.iter().map(|&k| k != NO_PIVOT).collect();
    (ech.rank(), pivots)
}

/// Bounded cochain complex `C^lo → C^{lo+1} → …`.
#[derive(Debug, Clone)]
pub struct FpCochainComplex {
    p: Prime,
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<FpMatrix>,
}

impl FpCochainComplex {
    /// `diffs[k]` maps degree `lo + k` to `lo + k + 1`; there are `dims.len() − 1` of them.
    pub fn new(p: Prime, lo: i64, dims: Vec<usize>, diffs: Vec<FpMatrix>) -> Result<Self> {
        let c = Self::new_unchecked(p, lo, dims, diffs)?;
        for k in 1..c.diffs.len() {
            if !c.diffs[k].mul(&c.diffs[k - 1])?.is_zero() {
                return Err(Error::NotAComplex(lo + k as i64));
            }
        }
        Ok(c)
    }

    /// Shape checks only; skips the `d∘d = 0` verification.
    pub fn new_unchecked(p: Prime, lo: i64, dims: Vec<usize>, diffs: Vec<FpMatrix>) -> Result<Self> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::Shape(format!("{} spaces need {} differentials, got {}", dims.len(), dims.len().saturating_sub(1), diffs.len())));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.p != p || d.cols != dims[k] || d.rows != dims[k + 1] {
                return Err(Error::Shape(format!("differential out of degree {} is {}x{}, expected {}x{}", lo + k as i64, d.rows, d.cols, dims[k + 1], dims[k])));
            }
        }
        Ok(FpCochainComplex { p, lo, dims, diffs })
    }

    /// A complex given by its graded pieces as a map; missing degrees are zero.
    pub fn from_map(p: Prime, spaces: &BTreeMap<i64, usize>, diffs: &BTreeMap<i64, FpMatrix>) -> Result<Self> {
        let (Some(&lo), Some(&hi)) = (spaces.keys().next(), spaces.keys().next_back()) else {
            return Self::new(p, 0, Vec::new(), Vec::new());
        };
        let dims: Vec<usize> = (lo..=hi).map(|d| spaces.get(&d).copied().unwrap_or(0)).collect();
        let mut ds = Vec::new();
        for d in lo..hi {
            let (src, dst) = (dims[(d - lo) as usize], dims[(d - lo + 1) as usize]);
            ds.push(diffs.get(&d).cloned().unwrap_or_else(|| FpMatrix::zeros(p, dst, src)));
        }
        Self::new(p, lo, dims, ds)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, degree: i64) -> Option<&FpMatrix> {
        usize::try_from(degree - self.lo).ok().and_then(|k| self.diffs.get(k))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(k, &d)| sign(self.lo + k as i64) * d as i64).sum()
    }

    pub fn cohomology_dims(&self) -> GradedDims {
        cohomology_dims(self)
    }
}

fn sign(d: i64) -> i64 {
    if d.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `dim H^d = dim ker d^d − rank d^{d−1}` in every degree.
pub fn cohomology_dims(c: &FpCochainComplex) -> GradedDims {
    let n = c.dims.len();
    let mut ranks = vec![0usize; n];
    let mut skip: Vec<bool> = Vec::new();
    for k in 0..c.diffs.len() {
        // A column whose cell is the pivot of an earlier reduction is a
        // coboundary's leading term, so it reduces to zero here anyway.
        let (r, pivots) = rank_with_clearing(&c.diffs[k], &skip);
        ranks[k] = r;
        skip = pivots;
    }
    let mut out = BTreeMap::new();
    for k in 0..n {
        let before = if k > 0 { ranks[k - 1] } else { 0 };
        let h = c.dims[k] - ranks[k] - before;
        if h > 0 {
            out.insert(c.lo + k as i64, h as u64);
        }
    }
    GradedDims::finite(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn primes_validated() {
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(1).is_err());
        assert_eq!(Prime::new(5).unwrap().get(), 5);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FpMatrix::identity(p(2), 2).rank(), 2);
        assert_eq!(FpMatrix::from_dense(p(2), &[vec![2]]).unwrap().rank(), 0);
        assert_eq!(FpMatrix::from_dense(p(3), &[vec![1; 3], vec![1; 3], vec![1; 3]]).unwrap().rank(), 1);
    }

    #[test]
    fn cohomology_examples() {
        let single = FpCochainComplex::new(p(3), 4, vec![1], vec![]).unwrap();
        assert_eq!(single.cohomology_dims().get(4), 1);
        let acyclic = FpCochainComplex::new(p(2), 0, vec![1, 1], vec![FpMatrix::identity(p(2), 1)]).unwrap();
        assert!(acyclic.cohomology_dims().is_zero());
        let bad = FpCochainComplex::new(p(2), 0, vec![1, 1, 1], vec![FpMatrix::identity(p(2), 1), FpMatrix::identity(p(2), 1)]);
        assert!(matches!(bad, Err(Error::NotAComplex(1))));
        let ragged = FpCochainComplex::new(p(2), 0, vec![1, 2], vec![FpMatrix::identity(p(2), 1)]);
        assert!(matches!(ragged, Err(Error::Shape(_))));
    }

    #[test]
    fn solve_and_kernel() {
        let m = FpMatrix::from_dense(p(5), &[vec![1, 2, 3], vec![2, 4, 1]]).unwrap();
        let k = m.kernel();
        assert_eq!(k.cols(), 2); // second row is twice the first mod 5
        assert!(m.mul(&k).unwrap().is_zero());
        let basis = FpMatrix::from_dense(p(5), &[vec![1, 0], vec![1, 1], vec![0, 3]]).unwrap();
        let target = basis.mul(&FpMatrix::from_dense(p(5), &[vec![2, 4], vec![3, 1]]).unwrap()).unwrap();
        let x = target.solve_in(&basis).unwrap().unwrap();
        assert_eq!(x.to_dense(), vec![vec![2, 4], vec![3, 1]]);
    }

    fn dense(pr: u64) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(0..pr as i64, c), r))
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in dense(3)) {
            let m = FpMatrix::from_dense(p(3), &rows).unwrap();
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).unwrap().is_zero());
            prop_assert!(m.rank() <= m.rows().min(m.cols()));
        }

        #[test]
        fn rank_permutation_invariant(rows in dense(2), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let m = FpMatrix::from_dense(p(2), &rows).unwrap();
            let mut shuffled = rows.clone();
            shuffled.shuffle(&mut rng);
            let mut order: Vec<usize> = (0..rows[0].len()).collect();
            order.shuffle(&mut rng);
            let shuffled: Vec<Vec<i64>> = shuffled.iter().map(|r| order.iter().map(|&j| r[j]).collect()).collect();
            prop_assert_eq!(m.rank(), FpMatrix::from_dense(p(2), &shuffled).unwrap().rank());
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn euler_characteristic_preserved(a in dense(5), b in dense(5)) {
            // d1·d0 = 0 by building d1 from the left kernel of a.
            let pr = p(5);
            let d0 = FpMatrix::from_dense(pr, &a).unwrap();
            let d1 = d0.transpose().kernel().transpose();
            let _ = b;
            let c = FpCochainComplex::new(pr, -1, vec![d0.cols(), d0.rows(), d1.rows()], vec![d0, d1]).unwrap();
            prop_assert_eq!(c.euler_characteristic(), c.cohomology_dims().euler_characteristic());
        }
    }
}
