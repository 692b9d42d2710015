//! The correspondence `N = J₂[(L²_E ⊕ H²_F) ⊖ N₃]` at finite truncation.
//!
//! `N₃` lives in `L²_E(n) ⊕ H²_F(n)` (degrees `[−n, n]` on E, `[0, n]` on F). The subspace
//! `N ∩ Poly_m` is recovered exactly from the slab `S_m` of E-degrees `[−m, 0]` and
//! F-degrees `[0, m]`: every generator of `N₃` touching `S_m` fits in the truncation
//! once `m` is shrunk by the symbol bands.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::x_shift;
use crate::scalar::{re, CMat, Real};
use crate::space::{SpaceSum, TruncatedSpace};
use crate::spec::InvariantSubspaceSpec;
use crate::subspace::SubspaceBasis;
use crate::symbol::LaurentSymbol;

const NULL_TOL: f64 = 1e-10;

/// Ambient of `N₃`: `L²_E(n) ⊕ H²_F(n)`.
pub fn n3_ambient(dim_e: usize, dim_f: usize, n: usize) -> SpaceSum {
    SpaceSum::new(vec![TruncatedSpace::lebesgue(dim_e, n), TruncatedSpace::hardy(dim_f, n)])
}

fn band_of<T: Real>(s: &LaurentSymbol<T>) -> (i64, i64) {
    if s.is_zero() {
        (0, 0)
    } else {
        (s.kmin(), s.kmax())
    }
}

/// Column of `z^k · G e_col` for a symbol `G : · → E ⊕ F`, in the `N₃` ambient.
fn generator<T: Real>(amb: &SpaceSum, g: &LaurentSymbol<T>, dim_e: usize, k: i64, col: usize) -> Option<CMat<T>> {
    let mut v = DMatrix::zeros(amb.dim(), 1);
    for (j, c) in g.terms() {
        let d = j + k;
        for r in 0..g.rows() {
            let x = c[(r, col)];
            if x == crate::scalar::czero() {
                continue;
            }
            let idx = if r < dim_e { amb.index(0, d, r) } else { amb.index(1, d, r - dim_e) };
            v[(idx?, 0)] = x;
        }
    }
    Some(v)
}

/// Orthonormal basis of `U·H²_{E₀} ⊕ Ω·L²_{E₂}` inside `L²_E(n) ⊕ H²_F(n)`.
///
/// Every generator `U z^k e` (`k ≥ 0`) and `Ω z^k e` (`k ∈ ℤ`) that fits is included.
/// The returned window `m` certifies that `N_from_N3` is exact on `Poly_m`.
pub fn build_n3<T: Real>(spec: &InvariantSubspaceSpec<T>, n: usize) -> Result<SubspaceBasis<T>> {
    let (e, f) = (spec.dim_e, spec.dim_f);
    let ni = n as i64;
    let amb = n3_ambient(e, f, n);
    let mut cols: Vec<CMat<T>> = Vec::new();
    let mut m = ni;

    if let Some(u) = spec.u() {
        let (ue_lo, ue_hi) = band_of(&u.row_block(0, e));
        let (uf_lo, uf_hi) = band_of(&u.row_block(e, e + f));
        if uf_lo < 0 {
            return Err(Error::NotAnalytic("U_F".into()));
        }
        let top = ue_hi.max(uf_hi).max(0);
        m = m.min(ni - top);
        // generators touching the slab have k ≤ max(m, −kmin(U_E)); all of them must fit
        if m < 0 || m.max(-ue_lo) + top > ni {
            return Err(Error::BandExceedsTruncation(format!("U has band [{ue_lo}, {top}] at n = {n}")));
        }
        let mut k = 0;
        while k + top <= ni {
            if k + ue_lo >= -ni {
                for c in 0..u.cols() {
                    if let Some(v) = generator(&amb, u, e, k, c) {
                        cols.push(v);
                    }
                }
            }
            k += 1;
        }
    }
    if let Some(om) = spec.omega_full() {
        let (w_lo, w_hi) = band_of(&om.row_block(0, e));
        m = m.min(ni - (w_hi - w_lo));
        if m < 0 {
            return Err(Error::BandExceedsTruncation(format!("Omega has width {} at n = {n}", w_hi - w_lo)));
        }
        for k in (-ni - w_lo)..=(ni - w_hi) {
            for c in 0..om.cols() {
                if let Some(v) = generator(&amb, &om, e, k, c) {
                    cols.push(v);
                }
            }
        }
    }
    if cols.is_empty() {
        return Ok(SubspaceBasis::zero(amb, m));
    }
    let g = DMatrix::from_columns(&cols.iter().map(|c| c.column(0).into_owned()).collect::<Vec<_>>());
    Ok(SubspaceBasis::from_spanning(amb, &g, m, re(NULL_TOL)))
}

/// Indices of the slab `S_m` in the `N₃` ambient, paired with the matching index of
/// `J₂ S_m` in `H²_E(n) ⊕ H²_F(n)`.
fn slab<T: Real>(n3: &SubspaceBasis<T>, out: &SpaceSum) -> Vec<(usize, usize)> {
    let amb = &n3.ambient;
    let (e, f) = (amb.blocks[0].fiber_dim, amb.blocks[1].fiber_dim);
    let m = n3.window;
    let mut pairs = Vec::new();
    for d in 0..=m {
        for r in 0..e {
            pairs.push((amb.index(0, -d, r).unwrap(), out.index(0, d, r).unwrap()));
        }
        for r in 0..f {
            pairs.push((amb.index(1, d, r).unwrap(), out.index(1, d, r).unwrap()));
        }
    }
    pairs
}

fn check_n3_ambient<T: Real>(n3: &SubspaceBasis<T>, n: usize) -> Result<()> {
    let b = &n3.ambient.blocks;
    let ok = b.len() == 2
        && b[0] == TruncatedSpace::lebesgue(b[0].fiber_dim, n)
        && b[1] == TruncatedSpace::hardy(b[1].fiber_dim, n);
    if ok {
        Ok(())
    } else {
        Err(Error::Shape(format!("N3 ambient must be L2_E({n}) + H2_F({n})")))
    }
}

/// `N ∩ Poly_m = J₂[S_m ⊖ N₃]` in `H²_E(n) ⊕ H²_F(n)`, with `m = n3.window`.
pub fn n_from_n3<T: Real>(n3: &SubspaceBasis<T>, n: usize) -> Result<SubspaceBasis<T>> {
    check_n3_ambient(n3, n)?;
    let out = SpaceSum::hardy_pair(n3.ambient.blocks[0].fiber_dim, n3.ambient.blocks[1].fiber_dim, n);
    let pairs = slab(n3, &out);
    let src: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let g = linalg::select_rows(&n3.basis, &src);
    let null = linalg::null_space(&g.adjoint(), re(NULL_TOL));
    let mut b = DMatrix::zeros(out.dim(), null.ncols());
    for (k, p) in pairs.iter().enumerate() {
        b.set_row(p.1, &null.row(k));
    }
    Ok(SubspaceBasis::from_orthonormal(out, b, n3.window))
}

/// Principal angle between `P_{S_m} N₃` and `S_m ⊖ J₂N`, both as subspaces of the slab.
pub fn reverse_projection_angle<T: Real>(n3: &SubspaceBasis<T>, nsub: &SubspaceBasis<T>, n: usize) -> Result<T> {
    check_n3_ambient(n3, n)?;
    let nw = nsub.restrict_to_window(n3.window);
    let pairs = slab(n3, &nsub.ambient);
    let src: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let dst: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let proj = linalg::select_rows(&n3.basis, &src);
    let smax = linalg::spectral_norm(&proj).max(T::one());
    let lhs = linalg::range_basis(&proj, re::<T>(NULL_TOL) * smax);
    let jn = linalg::select_rows(&nw.basis, &dst);
    let rhs = linalg::null_space(&jn.adjoint(), re(NULL_TOL));
    Ok(linalg::max_principal_angle(&lhs, &rhs))
}

/// `‖(I − P_N) X P‖` for `X = S_E ⊕ S_F*`, over inputs of `N ∩ Poly_w` whose E-part has
/// degree `< w`, so that `X` keeps them inside the window.
pub fn invariance_check<T: Real>(nsub: &SubspaceBasis<T>) -> Result<T> {
    let w = nsub.window;
    let b = nsub.restrict_to_window(w);
    let outside = b.ambient.select(|c| c.deg > w || (c.block == 0 && c.deg >= w));
    let inputs = b.restrict_rows_zero(&outside, w);
    if inputs.dim() == 0 {
        return Ok(T::zero());
    }
    let x = x_shift::<T>(&b.ambient)?;
    let img = &x.entries * &inputs.basis;
    let resid = &img - &b.basis * (b.basis.adjoint() * &img);
    Ok(linalg::spectral_norm(&resid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type S = LaurentSymbol<f64>;

    fn u_phi1() -> S {
        let h = 0.5f64.sqrt();
        S::from_real(2, 2, &[(0, &[0.0, h, 0.0, -h]), (1, &[h, 0.0, h, 0.0])]).unwrap()
    }

    fn e_column() -> S {
        S::from_real(2, 1, &[(0, &[1.0, 0.0])]).unwrap()
    }

    #[test]
    fn constant_e_column() {
        let spec = InvariantSubspaceSpec::type_i(e_column(), 1, 1).unwrap();
        let n3 = build_n3(&spec, 6).unwrap();
        assert_eq!(n3.dim(), 7);
        for d in 0..=6 {
            let i = n3.ambient.index(0, d, 0).unwrap();
            assert!((n3.basis.row(i).norm() - 1.0).abs() < 1e-12);
        }
        let nn = n_from_n3(&n3, 6).unwrap();
        // zH²_E ⊕ H²_F on the window
        assert_eq!(nn.dim(), 6 + 7);
        assert!(nn.basis.row(0).norm() < 1e-12);
        assert!(invariance_check(&nn).unwrap() < 1e-12);
        assert!(reverse_projection_angle(&n3, &nn, 6).unwrap() < 1e-10);
    }

    #[test]
    fn doubly_invariant_corner() {
        let spec = InvariantSubspaceSpec::type_ii(None, S::identity(1), 1, 1).unwrap();
        let n3 = build_n3(&spec, 5).unwrap();
        assert_eq!(n3.dim(), 11);
        let nn = n_from_n3(&n3, 5).unwrap();
        let want = SubspaceBasis::full(SpaceSum::hardy_pair(1, 1, 5), 5).restrict_rows_zero(&(0..6).collect::<Vec<_>>(), 5);
        assert_eq!(nn.dim(), 6);
        assert!(nn.distance(&want) < 1e-12);
    }

    #[test]
    fn phi1_generators() {
        let u = u_phi1();
        let spec = InvariantSubspaceSpec::type_i(u.clone(), 1, 1).unwrap();
        let n3 = build_n3(&spec, 6).unwrap();
        assert_eq!(n3.window, 5);
        // every U·z^k e_c that fits lies in the span
        let p = n3.projector();
        for k in 0..=5 {
            for c in 0..2 {
                let g = generator(&n3.ambient, &u, 1, k, c).unwrap();
                assert!((&g - &p * &g).norm() < 1e-12);
            }
        }
        assert_eq!(n3.dim(), 12);
        let nn = n_from_n3(&n3, 6).unwrap();
        assert!(invariance_check(&nn).unwrap() < 1e-12);
        assert!(reverse_projection_angle(&n3, &nn, 6).unwrap() < 1e-10);
        // N = {F ⊕ F(0)}: each basis vector's F-part equals its E constant term
        for j in 0..nn.dim() {
            let e0 = nn.basis[(nn.ambient.index(0, 0, 0).unwrap(), j)];
            let f0 = nn.basis[(nn.ambient.index(1, 0, 0).unwrap(), j)];
            assert!((e0 - f0).norm() < 1e-12);
            for d in 1..=6 {
                assert!(nn.basis[(nn.ambient.index(1, d, 0).unwrap(), j)].norm() < 1e-12);
            }
        }
        assert_eq!(nn.dim(), 6);
    }

    #[test]
    fn invariance_examples() {
        let amb = SpaceSum::hardy_pair(1, 1, 4);
        let mut v = DMatrix::zeros(10, 1);
        v[(0, 0)] = cx(1.0, 0.0);
        let s = SubspaceBasis::from_orthonormal(amb.clone(), v, 4);
        assert!((invariance_check::<f64>(&s).unwrap() - 1.0).abs() < 1e-12);

        let idx: Vec<usize> = vec![0];
        let zh = SubspaceBasis::<f64>::full(amb, 4).restrict_rows_zero(&idx, 4);
        assert!(invariance_check(&zh).unwrap() < 1e-12);
    }

    #[test]
    fn band_too_wide() {
        let u = S::from_real(2, 1, &[(0, &[0.0, 1.0])]).unwrap().shift(5);
        let spec = InvariantSubspaceSpec::type_i(u, 1, 1).unwrap();
        assert!(matches!(build_n3(&spec, 3), Err(Error::BandExceedsTruncation(_))));
    }
}
