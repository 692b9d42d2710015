//! Orthonormal bases of subspaces of truncated spaces, tagged with the degree
//! window on which they are exact.

use nalgebra::DMatrix;

use crate::linalg;
use crate::scalar::{re, CMat, Real};
use crate::space::SpaceSum;

/// Rank threshold used when restricting or intersecting bases.
pub const RESTRICT_TOL: f64 = 1e-9;

/// `span(basis) = V ∩ Poly_window` for the subspace `V` it represents.
#[derive(Clone, Debug)]
pub struct SubspaceBasis<T: Real> {
    pub ambient: SpaceSum,
    pub basis: CMat<T>,
    pub window: i64,
}

impl<T: Real> SubspaceBasis<T> {
    /// Trust that `basis` already has orthonormal columns.
    pub fn from_orthonormal(ambient: SpaceSum, basis: CMat<T>, window: i64) -> Self {
        assert_eq!(basis.nrows(), ambient.dim(), "basis rows must match the ambient dimension");
        SubspaceBasis { ambient, basis, window }
    }

    /// Orthonormalize a spanning set; singular values `≤ tol·max(1, σ_max)` are dropped.
    pub fn from_spanning(ambient: SpaceSum, vectors: &CMat<T>, window: i64, tol: T) -> Self {
        let smax = linalg::spectral_norm(vectors).max(T::one());
        let b = linalg::range_basis(vectors, tol * smax);
        Self::from_orthonormal(ambient, b, window)
    }

    pub fn zero(ambient: SpaceSum, window: i64) -> Self {
        let d = ambient.dim();
        Self::from_orthonormal(ambient, DMatrix::zeros(d, 0), window)
    }

    /// Every coordinate of degree `≤ window`.
    pub fn full(ambient: SpaceSum, window: i64) -> Self {
        let idx = ambient.window_indices(window);
        let mut b = DMatrix::zeros(ambient.dim(), idx.len());
        for (k, &i) in idx.iter().enumerate() {
            b[(i, k)] = crate::scalar::cone();
        }
        Self::from_orthonormal(ambient, b, window)
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn projector(&self) -> CMat<T> {
        &self.basis * self.basis.adjoint()
    }

    /// `‖BᴴB − I‖_F`
    pub fn orthonormality_defect(&self) -> T {
        (self.basis.adjoint() * &self.basis - DMatrix::identity(self.dim(), self.dim())).norm()
    }

    /// Part of the subspace supported on degrees `≤ w` (and `≥ −w` in Lebesgue blocks).
    pub fn restrict_to_window(&self, w: i64) -> Self {
        if w >= self.ambient.max_degree() {
            return self.clone();
        }
        let keep = self.ambient.window_indices(w);
        let outside: Vec<usize> = (0..self.ambient.dim()).filter(|i| !keep.contains(i)).collect();
        self.restrict_rows_zero(&outside, w.min(self.window))
    }

    /// Vectors of the span vanishing on the given coordinates.
    pub fn restrict_rows_zero(&self, rows: &[usize], window: i64) -> Self {
        if self.dim() == 0 || rows.is_empty() {
            return SubspaceBasis { window, ..self.clone() };
        }
        let m = linalg::select_rows(&self.basis, rows);
        let null = linalg::null_space(&m, re(RESTRICT_TOL));
        let b = &self.basis * null;
        // re-orthonormalize; null is orthonormal so this only cleans rounding
        Self::from_spanning(self.ambient.clone(), &b, window, re(RESTRICT_TOL))
    }

    /// Largest principal angle after restricting both bases to their common window.
    pub fn distance(&self, other: &Self) -> T {
        let w = self.window.min(other.window);
        let a = self.restrict_to_window(w);
        let b = other.restrict_to_window(w);
        linalg::max_principal_angle(&a.basis, &b.basis)
    }

    /// `span(self) + span(other)`, exact on the smaller window.
    pub fn span_with(&self, other: &Self) -> Self {
        let w = self.window.min(other.window);
        let a = self.restrict_to_window(w);
        let b = other.restrict_to_window(w);
        let mut m = DMatrix::zeros(self.ambient.dim(), a.dim() + b.dim());
        m.columns_mut(0, a.dim()).copy_from(&a.basis);
        m.columns_mut(a.dim(), b.dim()).copy_from(&b.basis);
        Self::from_spanning(self.ambient.clone(), &m, w, re(RESTRICT_TOL))
    }

    /// `span(self) ∩ span(other)` as the kernel of `[I − P₁; I − P₂]`.
    pub fn intersect(&self, other: &Self) -> Self {
        let w = self.window.min(other.window);
        let a = self.restrict_to_window(w);
        let b = other.restrict_to_window(w);
        let d = self.ambient.dim();
        let id = DMatrix::<crate::scalar::Cx<T>>::identity(d, d);
        let mut stacked = DMatrix::zeros(2 * d, d);
        stacked.rows_mut(0, d).copy_from(&(&id - a.projector()));
        stacked.rows_mut(d, d).copy_from(&(&id - b.projector()));
        let null = linalg::null_space(&stacked, re(RESTRICT_TOL));
        Self::from_orthonormal(self.ambient.clone(), null, w)
    }

    /// Orthogonal complement inside `Poly_w` of the ambient, `w = self.window`.
    pub fn complement_in_window(&self) -> Self {
        let idx = self.ambient.window_indices(self.window);
        let sub = linalg::select_rows(&self.basis, &idx);
        let null = linalg::null_space(&sub.adjoint(), re(RESTRICT_TOL));
        let mut b = DMatrix::zeros(self.ambient.dim(), null.ncols());
        for (k, &i) in idx.iter().enumerate() {
            b.set_row(i, &null.row(k));
        }
        Self::from_orthonormal(self.ambient.clone(), b, self.window)
    }
}
