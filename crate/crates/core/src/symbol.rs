//! Matrix-valued Laurent polynomials `Φ(z) = Σ_k coeff(k) z^k` on the unit circle.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{czero, Cx, CMat, Real};

/// Dense Laurent symbol with coefficients over `[kmin, kmax]`.
///
/// Always kept in canonical form: the extreme coefficients are nonzero, and the
/// zero symbol is stored as `kmin = kmax = 0` with a single zero matrix.
#[derive(Clone, PartialEq)]
pub struct LaurentSymbol<T: Real> {
    rows: usize,
    cols: usize,
    kmin: i64,
    coeffs: Vec<CMat<T>>,
}

impl<T: Real> fmt::Debug for LaurentSymbol<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSymbol({}x{}, k in [{}, {}])", self.rows, self.cols, self.kmin, self.kmax())?;
        for (i, c) in self.coeffs.iter().enumerate() {
            write!(f, "\n  k={}: {}", self.kmin + i as i64, c)?;
        }
        Ok(())
    }
}

impl<T: Real> LaurentSymbol<T> {
    /// Assemble a symbol from `(k, coeff(k))` pairs. Missing indices are zero.
    pub fn new(rows: usize, cols: usize, entries: Vec<(i64, CMat<T>)>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("symbol dimensions must be positive, got {rows}x{cols}")));
        }
        if entries.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        let mut seen: Vec<i64> = Vec::with_capacity(entries.len());
        for (k, m) in &entries {
            if m.nrows() != rows || m.ncols() != cols {
                return Err(Error::Shape(format!(
                    "coefficient {k} has shape {}x{}, expected {rows}x{cols}",
                    m.nrows(),
                    m.ncols()
                )));
            }
            if seen.contains(k) {
                return Err(Error::DuplicateIndex(*k));
            }
            seen.push(*k);
        }
        let kmin = *seen.iter().min().unwrap();
        let kmax = *seen.iter().max().unwrap();
        let mut coeffs = vec![DMatrix::zeros(rows, cols); (kmax - kmin + 1) as usize];
        for (k, m) in entries {
            coeffs[(k - kmin) as usize] = m;
        }
        Ok(Self::from_dense(rows, cols, kmin, coeffs))
    }

    /// Build from a dense run of coefficients starting at `kmin`, then canonicalize.
    pub fn from_dense(rows: usize, cols: usize, kmin: i64, coeffs: Vec<CMat<T>>) -> Self {
        let mut s = LaurentSymbol { rows, cols, kmin, coeffs };
        s.canonicalize();
        s
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        LaurentSymbol { rows, cols, kmin: 0, coeffs: vec![DMatrix::zeros(rows, cols)] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::constant(DMatrix::identity(dim, dim))
    }

    pub fn constant(m: CMat<T>) -> Self {
        Self::monomial(0, m)
    }

    /// `m · z^k`
    pub fn monomial(k: i64, m: CMat<T>) -> Self {
        let (r, c) = m.shape();
        Self::from_dense(r, c, k, vec![m])
    }

    /// Scalar symbol with complex coefficients starting at `kmin`.
    pub fn scalar(kmin: i64, coeffs: &[Cx<T>]) -> Self {
        if coeffs.is_empty() {
            return Self::zero(1, 1);
        }
        let cs = coeffs.iter().map(|c| DMatrix::from_element(1, 1, *c)).collect();
        Self::from_dense(1, 1, kmin, cs)
    }

    /// Scalar symbol with real coefficients starting at `kmin`.
    pub fn scalar_real(kmin: i64, coeffs: &[f64]) -> Self {
        let cs: Vec<Cx<T>> = coeffs.iter().map(|&x| crate::scalar::cx(x, 0.0)).collect();
        Self::scalar(kmin, &cs)
    }

    /// Symbol whose coefficients are real row-major matrices, given as `(k, entries)`.
    pub fn from_real(rows: usize, cols: usize, entries: &[(i64, &[f64])]) -> Result<Self> {
        let mut list = Vec::with_capacity(entries.len());
        for (k, vals) in entries {
            if vals.len() != rows * cols {
                return Err(Error::Shape(format!(
                    "coefficient {k} has {} entries, expected {}",
                    vals.len(),
                    rows * cols
                )));
            }
            let m = DMatrix::from_row_iterator(rows, cols, vals.iter().map(|&x| crate::scalar::cx(x, 0.0)));
            list.push((*k, m));
        }
        Self::new(rows, cols, list)
    }

    fn canonicalize(&mut self) {
        let is_zero = |m: &CMat<T>| m.iter().all(|c| c.re == T::zero() && c.im == T::zero());
        while self.coeffs.len() > 1 && is_zero(&self.coeffs[self.coeffs.len() - 1]) {
            self.coeffs.pop();
        }
        while self.coeffs.len() > 1 && is_zero(&self.coeffs[0]) {
            self.coeffs.remove(0);
            self.kmin += 1;
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(DMatrix::zeros(self.rows, self.cols));
        }
        if self.coeffs.len() == 1 && is_zero(&self.coeffs[0]) {
            self.kmin = 0;
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kmin(&self) -> i64 {
        self.kmin
    }

    pub fn kmax(&self) -> i64 {
        self.kmin + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `z^k`; zero outside the stored band.
    pub fn coeff(&self, k: i64) -> CMat<T> {
        self.coeff_ref(k).cloned().unwrap_or_else(|| DMatrix::zeros(self.rows, self.cols))
    }

    pub fn coeff_ref(&self, k: i64) -> Option<&CMat<T>> {
        if k < self.kmin || k > self.kmax() {
            None
        } else {
            Some(&self.coeffs[(k - self.kmin) as usize])
        }
    }

    /// `(k, coeff(k))` over the stored band.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &CMat<T>)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.kmin + i as i64, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].iter().all(|c| c.re == T::zero() && c.im == T::zero())
    }

    /// No negative powers.
    pub fn is_analytic(&self) -> bool {
        self.is_zero() || self.kmin >= 0
    }

    /// Largest power present, or 0 for the zero symbol.
    pub fn degree_hi(&self) -> i64 {
        self.kmax()
    }

    /// `max(|kmin|, kmax)`
    pub fn band(&self) -> i64 {
        self.kmin.abs().max(self.kmax().abs())
    }

    pub fn eval(&self, z: Cx<T>) -> CMat<T> {
        // Horner in z from the top coefficient, then scale by z^kmin.
        let mut acc: CMat<T> = DMatrix::zeros(self.rows, self.cols);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc * zpow(z, self.kmin)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![DMatrix::zeros(self.rows, other.cols); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(Self::from_dense(self.rows, other.cols, self.kmin + other.kmin, out))
    }

    /// Pointwise adjoint on the circle: `coeff(k) ↦ coeff(-k)^H`.
    pub fn adjoint(&self) -> Self {
        let coeffs = self.coeffs.iter().rev().map(|c| c.adjoint()).collect();
        Self::from_dense(self.cols, self.rows, -self.kmax(), coeffs)
    }

    /// `Φ(z̄)`: `coeff(k) ↦ coeff(-k)` with no conjugation.
    pub fn conj_arg(&self) -> Self {
        let coeffs = self.coeffs.iter().rev().cloned().collect();
        Self::from_dense(self.rows, self.cols, -self.kmax(), coeffs)
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::from_dense(self.rows, self.cols, self.kmin + k, self.coeffs.clone())
    }

    pub fn scale(&self, s: Cx<T>) -> Self {
        Self::from_dense(self.rows, self.cols, self.kmin, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, Complex::new(T::one(), T::zero()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, Complex::new(-T::one(), T::zero()))
    }

    fn combine(&self, other: &Self, sign: Cx<T>) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let lo = self.kmin.min(other.kmin);
        let hi = self.kmax().max(other.kmax());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + other.coeff(k) * sign).collect();
        Ok(Self::from_dense(self.rows, self.cols, lo, coeffs))
    }

    /// Terms with `k ≥ 0`.
    pub fn analytic_part(&self) -> Self {
        self.band_part(0, i64::MAX)
    }

    /// Terms with `k ≤ -1`.
    pub fn coanalytic_part(&self) -> Self {
        self.band_part(i64::MIN, -1)
    }

    fn band_part(&self, lo: i64, hi: i64) -> Self {
        let coeffs: Vec<_> = self.terms().filter(|(k, _)| *k >= lo && *k <= hi).map(|(k, c)| (k, c.clone())).collect();
        match coeffs.first() {
            None => Self::zero(self.rows, self.cols),
            Some(&(k0, _)) => Self::from_dense(self.rows, self.cols, k0, coeffs.into_iter().map(|(_, c)| c).collect()),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Rows `r0..r1` of every coefficient.
    pub fn row_block(&self, r0: usize, r1: usize) -> Self {
        assert!(r0 < r1 && r1 <= self.rows, "row block {r0}..{r1} out of range");
        let coeffs = self.coeffs.iter().map(|c| c.rows(r0, r1 - r0).into_owned()).collect();
        Self::from_dense(r1 - r0, self.cols, self.kmin, coeffs)
    }

    /// Columns `c0..c1` of every coefficient.
    pub fn col_block(&self, c0: usize, c1: usize) -> Self {
        assert!(c0 < c1 && c1 <= self.cols, "column block {c0}..{c1} out of range");
        let coeffs = self.coeffs.iter().map(|c| c.columns(c0, c1 - c0).into_owned()).collect();
        Self::from_dense(self.rows, c1 - c0, self.kmin, coeffs)
    }

    pub fn vstack(top: &Self, bottom: &Self) -> Result<Self> {
        if top.cols != bottom.cols {
            return Err(Error::Shape(format!("vstack: {} vs {} columns", top.cols, bottom.cols)));
        }
        let lo = top.kmin.min(bottom.kmin);
        let hi = top.kmax().max(bottom.kmax());
        let rows = top.rows + bottom.rows;
        let coeffs = (lo..=hi)
            .map(|k| {
                let mut m = DMatrix::zeros(rows, top.cols);
                m.rows_mut(0, top.rows).copy_from(&top.coeff(k));
                m.rows_mut(top.rows, bottom.rows).copy_from(&bottom.coeff(k));
                m
            })
            .collect();
        Ok(Self::from_dense(rows, top.cols, lo, coeffs))
    }

    pub fn hstack(left: &Self, right: &Self) -> Result<Self> {
        if left.rows != right.rows {
            return Err(Error::Shape(format!("hstack: {} vs {} rows", left.rows, right.rows)));
        }
        Ok(Self::vstack(&left.adjoint(), &right.adjoint())?.adjoint())
    }

    /// `[[a, b], [c, d]]`
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        Self::vstack(&Self::hstack(a, b)?, &Self::hstack(c, d)?)
    }

    /// Largest coefficient-wise Frobenius distance.
    pub fn coeff_distance(&self, other: &Self) -> Result<T> {
        if self.shape() != other.shape() {
            return Err(Error::Shape("coeff_distance: shapes differ".into()));
        }
        let lo = self.kmin.min(other.kmin);
        let hi = self.kmax().max(other.kmax());
        let mut worst = T::zero();
        for k in lo..=hi {
            let d = (self.coeff(k) - other.coeff(k)).norm();
            if d > worst {
                worst = d;
            }
        }
        Ok(worst)
    }

    /// Per-column `(kmin, kmax)` over nonzero entries; `None` for an all-zero column.
    pub fn column_band(&self, c: usize) -> Option<(i64, i64)> {
        band_where(self, |m| m.column(c).iter().any(|x| *x != czero()))
    }

    /// Per-row `(kmin, kmax)` over nonzero entries; `None` for an all-zero row.
    pub fn row_band(&self, r: usize) -> Option<(i64, i64)> {
        band_where(self, |m| m.row(r).iter().any(|x| *x != czero()))
    }
}

fn band_where<T: Real>(s: &LaurentSymbol<T>, pred: impl Fn(&CMat<T>) -> bool) -> Option<(i64, i64)> {
    let ks: Vec<i64> = s.terms().filter(|(_, m)| pred(m)).map(|(k, _)| k).collect();
    Some((*ks.first()?, *ks.last()?))
}

pub(crate) fn zpow<T: Real>(z: Cx<T>, k: i64) -> Cx<T> {
    if k >= 0 {
        z.powi(k as i32)
    } else {
        // |z| = 1 on the circle, but stay exact off it too.
        Complex::new(T::one(), T::zero()) / z.powi((-k) as i32)
    }
}
