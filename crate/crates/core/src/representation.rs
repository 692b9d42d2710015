//! Kernel (`ker W_Ψ ∩ (ΘH² ⊕ H²)`) and range (`span{R(V_Φ), K_Θ}`) descriptions of `N`.

use nalgebra::DMatrix;

use crate::classify::classify_isometry;
use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::{split_rows, toeplitz_op, v_phi, w_psi};
use crate::report::VerificationReport;
use crate::scalar::{re, to_f64, CMat, Real};
use crate::space::{SpaceSum, TruncatedSpace};
use crate::subspace::SubspaceBasis;
use crate::symbol::LaurentSymbol;

#[derive(Clone, Copy, Debug)]
pub struct RepOptions {
    /// Principal-angle threshold for subspace agreement.
    pub tol: f64,
    /// Relative singular-value threshold for kernels and ranges.
    pub rank_tol: f64,
    /// Optional upper bound on the comparison window.
    pub window_cap: Option<i64>,
}

impl Default for RepOptions {
    fn default() -> Self {
        RepOptions { tol: 1e-8, rank_tol: 1e-10, window_cap: None }
    }
}

fn require_inner<T: Real>(theta: &LaurentSymbol<T>) -> Result<()> {
    if !theta.is_analytic() {
        return Err(Error::NotAnalytic("Theta".into()));
    }
    let c = classify_isometry(theta, re(1e-10));
    if !c.is_isometric() {
        return Err(Error::NotIsometry("Theta".into(), to_f64(c.residual)));
    }
    Ok(())
}

/// `K_Θ ∩ Poly_n = ker T_Θ*` on `H²(n)`; `T_Θ*` lowers degree, so the whole truncation is exact.
pub fn model_space_basis<T: Real>(theta: &LaurentSymbol<T>, n: usize) -> Result<SubspaceBasis<T>> {
    require_inner(theta)?;
    let t = toeplitz_op(&theta.adjoint(), n)?;
    let amb = SpaceSum::single(TruncatedSpace::hardy(theta.rows(), n));
    let null = linalg::null_space(&t.entries, re(1e-10));
    Ok(SubspaceBasis::from_orthonormal(amb, null, n as i64))
}

/// `ΘH² ∩ Poly_w` with `w = n − kmax(Θ)`.
pub fn theta_range_basis<T: Real>(theta: &LaurentSymbol<T>, n: usize) -> Result<SubspaceBasis<T>> {
    require_inner(theta)?;
    let t = toeplitz_op(theta, n)?;
    let w = n as i64 - theta.kmax().max(0);
    let amb = SpaceSum::single(TruncatedSpace::hardy(theta.rows(), n));
    let cols = t.window_columns(w)?;
    let m = linalg::select_cols(&t.entries, &cols);
    let high = amb.select(|c| c.deg > w);
    let coef = linalg::null_space(&linalg::select_rows(&m, &high), re(1e-10));
    Ok(SubspaceBasis::from_spanning(amb, &(m * coef), w, re(1e-10)))
}

/// Place a subspace of one Hardy block into block `slot` of `H²_E(n) ⊕ H²_F(n)`.
pub fn embed<T: Real>(s: &SubspaceBasis<T>, pair: &SpaceSum, slot: usize) -> SubspaceBasis<T> {
    let off = pair.offset(slot);
    let mut b = DMatrix::zeros(pair.dim(), s.dim());
    b.rows_mut(off, s.ambient.dim()).copy_from(&s.basis);
    SubspaceBasis::from_orthonormal(pair.clone(), b, s.window)
}

fn null_relative<T: Real>(m: &CMat<T>, rank_tol: f64) -> CMat<T> {
    let smax = linalg::spectral_norm(m).max(T::one());
    linalg::null_space(m, re::<T>(rank_tol) * smax)
}

/// `ker W_Ψ ∩ Poly_w` in `H²_E(n) ⊕ H²_F(n)`, `w` the exact window of `W_Ψ`.
pub fn kernel_subspace<T: Real>(psi: &LaurentSymbol<T>, dim_e: usize, n: usize, rank_tol: f64) -> Result<SubspaceBasis<T>> {
    let w = w_psi(psi, dim_e, n)?;
    let win = w.exact_window();
    if win < 0 {
        return Err(Error::EmptyWindow(format!("W_Psi has no exact columns at n = {n}")));
    }
    let cols = w.window_columns(win)?;
    let null = null_relative(&linalg::select_cols(&w.entries, &cols), rank_tol);
    let mut b = DMatrix::zeros(w.domain.dim(), null.ncols());
    for (k, &j) in cols.iter().enumerate() {
        b.set_row(j, &null.row(k));
    }
    Ok(SubspaceBasis::from_orthonormal(w.domain.clone(), b, win))
}

/// `R(V_Φ)` restricted to the exact window of `V_Φ`.
pub fn range_subspace<T: Real>(phi: &LaurentSymbol<T>, dim_e: usize, n: usize, rank_tol: f64) -> Result<SubspaceBasis<T>> {
    let v = v_phi(phi, dim_e, n)?;
    let win = v.exact_window();
    let (_, pf) = split_rows(phi, dim_e)?;
    // V_Φ* must map Poly_w back into the exact window, which needs the Hankel band inside it
    let hband = if pf.is_zero() { -1 } else { -pf.kmin() - 1 };
    if win < 0 || hband > win {
        return Err(Error::EmptyWindow(format!("V_Phi exact window {win} is below the Hankel band {hband}")));
    }
    let m = v.compress_domain();
    let smax = linalg::spectral_norm(&m).max(T::one());
    let r = linalg::range_basis(&m, re::<T>(rank_tol) * smax);
    Ok(SubspaceBasis::from_orthonormal(v.codomain.clone(), r, n as i64).restrict_to_window(win))
}

/// `ker W_Ψ ∩ (ΘH²_{E₁} ⊕ H²_F)` on its window; `theta = None` leaves the kernel unconstrained.
pub fn kernel_rep_subspace<T: Real>(
    psi: &LaurentSymbol<T>,
    theta: Option<&LaurentSymbol<T>>,
    dim_e: usize,
    n: usize,
    rank_tol: f64,
) -> Result<SubspaceBasis<T>> {
    let dim_f = psi.rows() - dim_e;
    let pair = SpaceSum::hardy_pair(dim_e, dim_f, n);
    let k = kernel_subspace(psi, dim_e, n, rank_tol)?;
    let Some(t) = theta else { return Ok(k) };
    let constraint = if t.is_zero() {
        embed(&SubspaceBasis::full(SpaceSum::single(TruncatedSpace::hardy(dim_f, n)), n as i64), &pair, 1)
    } else {
        let tr = theta_range_basis(t, n)?;
        let f = SubspaceBasis::full(SpaceSum::single(TruncatedSpace::hardy(dim_f, n)), tr.window);
        embed(&tr, &pair, 0).span_with(&embed(&f, &pair, 1))
    };
    Ok(k.intersect(&constraint))
}

/// `span{R(V_Φ), 0 ⊕ K_Θ}` on its window; `theta = None` drops the model-space term.
pub fn range_rep_subspace<T: Real>(
    phi: &LaurentSymbol<T>,
    theta: Option<&LaurentSymbol<T>>,
    dim_e: usize,
    n: usize,
    rank_tol: f64,
) -> Result<SubspaceBasis<T>> {
    let dim_f = phi.rows() - dim_e;
    let pair = SpaceSum::hardy_pair(dim_e, dim_f, n);
    let r = range_subspace(phi, dim_e, n, rank_tol)?;
    let Some(t) = theta else { return Ok(r) };
    let k = if t.is_zero() {
        SubspaceBasis::full(SpaceSum::single(TruncatedSpace::hardy(dim_f, n)), n as i64)
    } else {
        model_space_basis(t, n)?
    };
    Ok(r.span_with(&embed(&k, &pair, 1)))
}

/// `Ψ = [z̄U_E; U_F]` and `Φ = Ψ(z̄)` for `U = [U_E; U_F]`, i.e. `U_E = zA(z̄)`, `U_F = C`.
pub fn symbols_from_u<T: Real>(u: &LaurentSymbol<T>, dim_e: usize) -> Result<(LaurentSymbol<T>, LaurentSymbol<T>)> {
    let (ue, uf) = split_rows(u, dim_e)?;
    let psi = LaurentSymbol::vstack(&ue.shift(-1), &uf)?;
    let phi = psi.conj_arg();
    Ok((psi, phi))
}

fn comparison_window(a: i64, b: i64, cap: Option<i64>) -> i64 {
    cap.map_or(a.min(b), |c| a.min(b).min(c))
}

/// Compare `N` with `ker W_Ψ ∩ (ΘH²_{E₁} ⊕ H²_F)`; returns the report and the computed subspace.
#[allow(clippy::too_many_arguments)]
pub fn kernel_representation_check<T: Real>(
    nsub: &SubspaceBasis<T>,
    psi: &LaurentSymbol<T>,
    theta: Option<&LaurentSymbol<T>>,
    gamma: Option<&LaurentSymbol<T>>,
    dim_e: usize,
    n: usize,
    opts: &RepOptions,
) -> Result<(VerificationReport, SubspaceBasis<T>)> {
    let mut rep = VerificationReport::new();
    let c = classify_isometry(psi, re(1e-10));
    if let Some(t) = theta.filter(|t| !t.is_zero()) {
        let c = classify_isometry(t, re(1e-10));
        rep.flag("Theta inner", t.is_analytic() && c.is_isometric(), to_f64(c.residual), 0, n);
    }

    let k = kernel_rep_subspace(psi, theta, dim_e, n, opts.rank_tol)?;
    let w = comparison_window(k.window, nsub.window, opts.window_cap);
    let k = k.restrict_to_window(w);
    let d = to_f64(k.distance(nsub));
    rep.residual("kernel_rep", d, opts.tol, w, n).detail(format!(
        "dim ker = {}, dim N = {}, Psi {:?}",
        k.dim(),
        nsub.restrict_to_window(w).dim(),
        c.kind
    ));

    if let (Some(t), Some(g)) = (theta, gamma) {
        let a = psi.row_block(0, dim_e).conj_arg();
        let r = to_f64(t.mul(g)?.coeff_distance(&a)?);
        rep.residual("A = Theta Gamma", r, 1e-10, 0, n);
    }
    Ok((rep, k))
}

/// Compare `N` with `span{R(V_Φ), 0 ⊕ K_Θ}`; returns the report and the computed subspace.
pub fn range_representation_check<T: Real>(
    nsub: &SubspaceBasis<T>,
    phi: &LaurentSymbol<T>,
    theta: Option<&LaurentSymbol<T>>,
    dim_e: usize,
    n: usize,
    opts: &RepOptions,
) -> Result<(VerificationReport, SubspaceBasis<T>)> {
    let mut rep = VerificationReport::new();
    let c = classify_isometry(phi, re(1e-10));

    let total = range_rep_subspace(phi, theta, dim_e, n, opts.rank_tol)?;
    let w = comparison_window(total.window, nsub.window, opts.window_cap);
    let total = total.restrict_to_window(w);
    let d = to_f64(total.distance(nsub));
    let alone = range_subspace(phi, dim_e, n, opts.rank_tol)?.restrict_to_window(w);
    let alone = to_f64(alone.distance(nsub));
    rep.residual("range_rep", d, opts.tol, w, n)
        .detail(format!("distance with R(V_Phi) alone = {alone:.3e}, Phi {:?}", c.kind));
    Ok((rep, total))
}
