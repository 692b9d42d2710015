//! Thin wrappers around nalgebra's complex SVD.

use nalgebra::DMatrix;

use crate::scalar::{CMat, Real};

pub struct Svd<T: Real> {
    /// Left singular vectors, one column per singular value.
    pub u: CMat<T>,
    /// Descending singular values.
    pub s: Vec<T>,
    /// Full set of right singular vectors as columns (`ncols × ncols`).
    pub v: CMat<T>,
}

/// SVD with a complete right basis; rows are zero-padded when the matrix is wide.
pub fn svd<T: Real>(m: &CMat<T>) -> Svd<T> {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Svd { u: DMatrix::zeros(r, 0), s: vec![], v: DMatrix::identity(c, c) };
    }
    let padded;
    let work = if r < c {
        let mut p = DMatrix::zeros(c, c);
        p.rows_mut(0, r).copy_from(m);
        padded = p;
        &padded
    } else {
        m
    };
    let d = work.clone().svd(true, true);
    let u_all = d.u.expect("u requested");
    let vt = d.v_t.expect("v_t requested");
    let mut idx: Vec<usize> = (0..d.singular_values.len()).collect();
    idx.sort_by(|&a, &b| {
        d.singular_values[b].partial_cmp(&d.singular_values[a]).unwrap_or(std::cmp::Ordering::Equal)
    });
    let k = r.min(c);
    let mut u = DMatrix::zeros(r, k);
    let mut s = Vec::with_capacity(k);
    let mut v = DMatrix::zeros(c, c);
    for (j, &i) in idx.iter().enumerate() {
        v.set_column(j, &vt.row(i).adjoint());
        if j < k {
            u.set_column(j, &u_all.column(i).rows(0, r));
            s.push(d.singular_values[i]);
        }
    }
    Svd { u, s, v }
}

pub fn singular_values<T: Real>(m: &CMat<T>) -> Vec<T> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return vec![];
    }
    let mut s: Vec<T> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    s
}

pub fn spectral_norm<T: Real>(m: &CMat<T>) -> T {
    singular_values(m).first().copied().unwrap_or_else(T::zero)
}

/// Number of singular values above `tol` (absolute).
pub fn rank<T: Real>(m: &CMat<T>, tol: T) -> usize {
    singular_values(m).iter().filter(|&&s| s > tol).count()
}

/// Orthonormal basis of `{x : ‖m x‖ ≈ 0}`; singular values `≤ tol` count as zero.
pub fn null_space<T: Real>(m: &CMat<T>, tol: T) -> CMat<T> {
    let c = m.ncols();
    let d = svd(m);
    let r = d.s.iter().filter(|&&s| s > tol).count();
    d.v.columns(r, c - r).into_owned()
}

/// Orthonormal basis of the column space; singular values `≤ tol` are dropped.
pub fn range_basis<T: Real>(m: &CMat<T>, tol: T) -> CMat<T> {
    let d = svd(m);
    let r = d.s.iter().filter(|&&s| s > tol).count();
    d.u.columns(0, r).into_owned()
}

/// Largest principal angle between the column spans of two orthonormal bases.
///
/// Computed from sines, `‖B₂ − B₁B₁ᴴB₂‖`, which stays accurate for tiny angles.
/// Subspaces of different dimension are reported at π/2.
pub fn max_principal_angle<T: Real>(b1: &CMat<T>, b2: &CMat<T>) -> T {
    assert_eq!(b1.nrows(), b2.nrows(), "principal angle: ambient dimensions differ");
    if b1.ncols() != b2.ncols() {
        return T::frac_pi_2();
    }
    if b1.ncols() == 0 {
        return T::zero();
    }
    let r12 = b2 - b1 * (b1.adjoint() * b2);
    let r21 = b1 - b2 * (b2.adjoint() * b1);
    let s = spectral_norm(&r12).max(spectral_norm(&r21));
    s.min(T::one()).asin()
}

/// Copy the given rows of `m` into a new matrix.
pub fn select_rows<T: Real>(m: &CMat<T>, rows: &[usize]) -> CMat<T> {
    DMatrix::from_fn(rows.len(), m.ncols(), |i, j| m[(rows[i], j)])
}

/// Copy the given columns of `m` into a new matrix.
pub fn select_cols<T: Real>(m: &CMat<T>, cols: &[usize]) -> CMat<T> {
    DMatrix::from_fn(m.nrows(), cols.len(), |i, j| m[(i, cols[j])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn m(rows: usize, cols: usize, v: &[f64]) -> CMat<f64> {
        DMatrix::from_row_iterator(rows, cols, v.iter().map(|&x| cx(x, 0.0)))
    }

    #[test]
    fn null_space_of_wide_matrix() {
        let a = m(1, 3, &[1.0, 1.0, 0.0]);
        let n = null_space(&a, 1e-12);
        assert_eq!(n.ncols(), 2);
        assert!((&a * &n).norm() < 1e-14);
        assert!((n.adjoint() * &n - DMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn range_and_rank() {
        let a = m(3, 2, &[1.0, 2.0, 2.0, 4.0, 0.0, 0.0]);
        assert_eq!(rank(&a, 1e-12), 1);
        assert_eq!(range_basis(&a, 1e-12).ncols(), 1);
        assert!((spectral_norm(&a) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn principal_angle_basics() {
        let e1 = m(2, 1, &[1.0, 0.0]);
        let e2 = m(2, 1, &[0.0, 1.0]);
        let d = m(2, 1, &[0.5f64.sqrt(), 0.5f64.sqrt()]);
        assert!(max_principal_angle(&e1, &e1) < 1e-15);
        assert!((max_principal_angle(&e1, &e2) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((max_principal_angle(&e1, &d) - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        let both = m(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        assert!((max_principal_angle(&e1, &both) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
