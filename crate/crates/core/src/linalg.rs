//! Exact dense linear algebra over prime fields `F_p` with `2 <= p <= 251`.
//!
//! Matrices are stored row-major as residues `0 <= v < p`. Everything above
//! this module (Hom spaces, syzygies, Ext and Tor) reduces to Gaussian
//! elimination implemented here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_MODULUS: u32 = 251;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_modulus(p: u32) -> Result<()> {
    if is_prime(p) && p <= MAX_MODULUS {
        Ok(())
    } else {
        Err(Error::BadModulus(p))
    }
}

/// Multiplicative inverse of a nonzero residue.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverse of zero");
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

pub fn reduce(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// A residue class modulo a small prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Self {
        Fp {
            value: reduce(value, modulus),
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Fp> {
        (self.value != 0).then(|| Fp {
            value: inv_mod(self.value, self.modulus),
            modulus: self.modulus,
        })
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: (self.value + rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: (self.value + self.modulus - rhs.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: self.value * rhs.value % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Dense matrix over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    modulus: u32,
    entries: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}x{} mod {}](", self.rows, self.cols, self.modulus)?;
        for i in 0..self.rows {
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, ")")
    }
}

/// Reduced row echelon form together with its pivot columns.
pub struct Echelon {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, modulus: u32) -> Mat {
        Mat {
            rows,
            cols,
            modulus,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u32) -> Mat {
        let mut m = Mat::zeros(n, n, modulus);
        for i in 0..n {
            m.entries[i * n + i] = 1 % modulus;
        }
        m
    }

    pub fn scalar(n: usize, c: u32, modulus: u32) -> Mat {
        let mut m = Mat::zeros(n, n, modulus);
        for i in 0..n {
            m.entries[i * n + i] = c % modulus;
        }
        m
    }

    /// Builds a matrix from raw row-major residues; values are reduced mod p.
    pub fn from_vec(rows: usize, cols: usize, modulus: u32, values: Vec<u32>) -> Result<Mat> {
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                values.len(),
                rows,
                cols
            )));
        }
        Ok(Mat {
            rows,
            cols,
            modulus,
            entries: values.into_iter().map(|v| v % modulus).collect(),
        })
    }

    pub fn from_rows(modulus: u32, rows: &[Vec<i64>]) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| reduce(v, modulus)))
            .collect();
        Ok(Mat {
            rows: r,
            cols: c,
            modulus,
            entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, modulus: u32, mut f: impl FnMut(usize, usize) -> u32) -> Mat {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j) % modulus);
            }
        }
        Mat {
            rows,
            cols,
            modulus,
            entries,
        }
    }

    /// Column vector from residues.
    pub fn column(modulus: u32, values: &[u32]) -> Mat {
        Mat {
            rows: values.len(),
            cols: 1,
            modulus,
            entries: values.iter().map(|v| v % modulus).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn scalar_at(&self, i: usize, j: usize) -> Fp {
        Fp {
            value: self.get(i, j),
            modulus: self.modulus,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v % self.modulus;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, self.modulus, |i, j| self.get(j, i))
    }

    pub fn scale(&self, c: u32) -> Mat {
        let p = self.modulus;
        let c = c % p;
        Mat {
            rows: self.rows,
            cols: self.cols,
            modulus: p,
            entries: self.entries.iter().map(|&v| v * c % p).collect(),
        }
    }

    fn check_same_shape(&self, other: &Mat) {
        assert_eq!(
            (self.rows, self.cols, self.modulus),
            (other.rows, other.cols, other.modulus),
            "shape or modulus mismatch"
        );
    }

    /// `self + c * other`, in place.
    pub fn add_scaled(&mut self, other: &Mat, c: u32) {
        self.check_same_shape(other);
        let p = self.modulus;
        let c = c % p;
        if c == 0 {
            return;
        }
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            *a = (*a + b * c) % p;
        }
    }

    pub fn mul_mat(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        let p = self.modulus as u64;
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut acc = vec![0u64; n * m];
        for i in 0..n {
            let out = &mut acc[i * m..(i + 1) * m];
            for t in 0..k {
                let a = self.entries[i * k + t] as u64;
                if a == 0 {
                    continue;
                }
                let brow = &other.entries[t * m..(t + 1) * m];
                for (o, &b) in out.iter_mut().zip(brow) {
                    *o += a * b as u64;
                }
            }
            // products are < 251^2, and k <= a few thousand, so no overflow before reduction
        }
        Mat {
            rows: n,
            cols: m,
            modulus: self.modulus,
            entries: acc.into_iter().map(|v| (v % p) as u32).collect(),
        }
    }

    pub fn pow(&self, mut e: usize) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut result = Mat::identity(self.rows, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_mat(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mat(&base);
            }
        }
        result
    }

    pub fn hstack(blocks: &[&Mat], rows: usize, modulus: u32) -> Mat {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(rows, cols, modulus);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            m.set_block(0, offset, b);
            offset += b.cols;
        }
        m
    }

    pub fn vstack(blocks: &[&Mat], cols: usize, modulus: u32) -> Mat {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Mat::zeros(rows, cols, modulus);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            m.set_block(offset, 0, b);
            offset += b.rows;
        }
        m
    }

    pub fn block_diag(blocks: &[&Mat], modulus: u32) -> Mat {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(rows, cols, modulus);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(r0 + i) * self.cols + c0 + j] = block.get(i, j);
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(rows, cols, self.modulus, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        Mat::from_fn(self.rows, cols.len(), self.modulus, |i, j| self.get(i, cols[j]))
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        Mat::from_fn(rows.len(), self.cols, self.modulus, |i, j| self.get(rows[i], j))
    }

    /// Flattens row-major into a column vector of length rows*cols.
    pub fn flatten(&self) -> Vec<u32> {
        self.entries.clone()
    }

    pub fn kron(&self, other: &Mat) -> Mat {
        let p = self.modulus;
        Mat::from_fn(self.rows * other.rows, self.cols * other.cols, p, |i, j| {
            let (a, b) = (i / other.rows, i % other.rows);
            let (c, d) = (j / other.cols, j % other.cols);
            self.get(a, c) * other.get(b, d) % p
        })
    }

    pub fn echelon(&self) -> Echelon {
        let p = self.modulus;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.entries.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in c..m.cols {
                let v = m.get(r, j) * inv % p;
                m.entries[r * m.cols + j] = v;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let sub = f * m.get(r, j) % p;
                    let idx = i * m.cols + j;
                    m.entries[idx] = (m.entries[idx] + p - sub) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> Mat {
        let p = self.modulus;
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.cols, free.len(), p);
        for (idx, &f) in free.iter().enumerate() {
            k.set(f, idx, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                let v = reduced.get(r, f);
                if v != 0 {
                    k.set(pc, idx, p - v);
                }
            }
        }
        k
    }

    /// Indices of a maximal set of linearly independent columns, chosen greedily left to right.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// Basis of the column space made of original columns.
    pub fn column_space(&self) -> Mat {
        self.select_cols(&self.independent_columns())
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows against {} rows",
                self.rows, b.rows
            )));
        }
        let p = self.modulus;
        let aug = Mat::hstack(&[self, b], self.rows, p);
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.cols, b.cols, p);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, reduced.get(r, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0, self.modulus));
        }
        let id = Mat::identity(n, self.modulus);
        let aug = Mat::hstack(&[self, &id], n, self.modulus);
        let Echelon { reduced, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// For a matrix with independent columns, some `L` with `L * self = I`.
    pub fn left_inverse(&self) -> Option<Mat> {
        let k = self.cols;
        let complement = self.complement_columns();
        let full = Mat::hstack(&[self, &complement], self.rows, self.modulus);
        let inv = full.inverse()?;
        Some(inv.block(0, 0, k, self.rows))
    }

    /// Standard unit vectors completing the (independent) columns of `self` to a basis.
    pub fn complement_columns(&self) -> Mat {
        let n = self.rows;
        let id = Mat::identity(n, self.modulus);
        let aug = Mat::hstack(&[self, &id], n, self.modulus);
        let chosen: Vec<usize> = aug
            .independent_columns()
            .into_iter()
            .filter(|&c| c >= self.cols)
            .map(|c| c - self.cols)
            .collect();
        id.select_cols(&chosen)
    }

    /// Whether the column `v` lies in the column space of `self`.
    pub fn spans(&self, v: &Mat) -> bool {
        matches!(self.solve(v), Ok(Some(_)))
    }

    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows.max(1)).is_zero()
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        let mut out = self.clone();
        out.add_scaled(rhs, 1);
        out
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        let mut out = self.clone();
        out.add_scaled(rhs, self.modulus - 1);
        out
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.mul_mat(rhs)
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        self.scale(self.modulus - 1)
    }
}

/// Incremental span of vectors of a fixed length, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    len: usize,
    modulus: u32,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl SpanBuilder {
    pub fn new(len: usize, modulus: u32) -> Self {
        SpanBuilder {
            len,
            modulus,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u32]) {
        let p = self.modulus;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc];
            if f == 0 {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = (*x + p - f * r % p) % p;
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.len);
        let p = self.modulus;
        let mut w: Vec<u32> = v.iter().map(|x| x % p).collect();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pc], p);
        for x in w.iter_mut() {
            *x = *x * inv % p;
        }
        for row in self.rows.iter_mut() {
            let f = row[pc];
            if f != 0 {
                for (x, &r) in row.iter_mut().zip(&w) {
                    *x = (*x + p - f * r % p) % p;
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(rows: &[Vec<i64>]) -> Mat {
        Mat::from_rows(2, rows).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::identity(2, 2).rank(), 2);
        assert_eq!(Mat::zeros(2, 2, 2).rank(), 0);
        assert_eq!(m2(&[vec![1, 1], vec![1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::identity(3, 5).kernel_basis().cols(), 0);
        assert_eq!(Mat::zeros(2, 3, 2).kernel_basis().cols(), 3);
        let k = m2(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k.shape(), (2, 1));
        assert_eq!(k.col(0), vec![1, 1]);
    }

    #[test]
    fn solve_examples() {
        let b = Mat::from_rows(7, &[vec![3, 1], vec![4, 0]]).unwrap();
        assert_eq!(Mat::identity(2, 7).solve(&b).unwrap(), Some(b.clone()));
        let nonzero = Mat::column(7, &[1, 0]);
        assert_eq!(Mat::zeros(2, 2, 7).solve(&nonzero).unwrap(), None);
        let a = m2(&[vec![1, 1], vec![0, 1]]);
        let x = a.solve(&Mat::column(2, &[0, 1])).unwrap().unwrap();
        assert_eq!(x.col(0), vec![1, 1]);
        assert!(Mat::identity(2, 2).solve(&Mat::zeros(3, 1, 2)).is_err());
    }

    #[test]
    fn inverse_and_left_inverse() {
        let a = Mat::from_rows(5, &[vec![2, 1], vec![1, 1]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Mat::identity(2, 5));
        let s = Mat::from_rows(3, &[vec![1], vec![2], vec![0]]).unwrap();
        let l = s.left_inverse().unwrap();
        assert_eq!(&l * &s, Mat::identity(1, 3));
        assert!(m2(&[vec![1, 1], vec![1, 1]]).inverse().is_none());
    }

    #[test]
    fn field_scalars() {
        let a = Fp::new(-3, 7);
        assert_eq!(a.value(), 4);
        assert_eq!((a * a.inv().unwrap()).value(), 1);
        assert_eq!((a + Fp::new(3, 7)).value(), 0);
        assert!(check_modulus(251).is_ok());
        assert!(check_modulus(253).is_err());
        assert!(check_modulus(257).is_err());
    }

    #[test]
    fn span_builder_tracks_dimension() {
        let mut s = SpanBuilder::new(3, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(!s.insert(&[2, 1, 0]));
        assert!(s.insert(&[0, 0, 1]));
        assert!(s.contains(&[1, 2, 2]));
        assert_eq!(s.dim(), 2);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn mat_strategy() -> impl Strategy<Value = Mat> {
            (1usize..5, 1usize..5, prop::sample::select(vec![2u32, 3, 5, 7]))
                .prop_flat_map(|(r, c, p)| {
                    prop::collection::vec(0..p, r * c)
                        .prop_map(move |v| Mat::from_vec(r, c, p, v).unwrap())
                })
        }

        proptest! {
            #[test]
            fn rank_nullity(m in mat_strategy()) {
                let k = m.kernel_basis();
                prop_assert_eq!(m.rank() + k.cols(), m.cols());
                prop_assert!((&m * &k).is_zero());
            }

            #[test]
            fn solve_is_consistent(m in mat_strategy(), seed in 0u32..1000) {
                let p = m.modulus();
                let b = Mat::from_fn(m.rows(), 1, p, |i, _| (seed + 7 * i as u32) % p);
                if let Some(x) = m.solve(&b).unwrap() {
                    prop_assert_eq!(&m * &x, b.clone());
                    let aug = Mat::hstack(&[&m, &b], m.rows(), p);
                    prop_assert_eq!(aug.rank(), m.rank());
                }
            }
        }
    }
}
