//! Splitting tests and uniqueness up to a constant unitary.

use nalgebra::DMatrix;

use crate::classify::{classify_isometry, sample};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cone, czero, re, to_f64, Cx, CMat, Real};
use crate::space::SpaceSum;
use crate::subspace::SubspaceBasis;
use crate::symbol::LaurentSymbol;

#[derive(Clone, Debug, PartialEq)]
pub struct SplittingResult<T: Real> {
    pub splitting: bool,
    /// `(α, β)` with `α·a + β·b = 0` when the pair is proportional.
    pub witness: Option<(Cx<T>, Cx<T>)>,
    /// `σ₂/σ₁` of the stacked coefficient matrix `[a | b]`.
    pub ratio: T,
}

/// Scalar case: with `Φ₁ = [a, b; c(z̄), d(z̄)]` unitary-valued, the subspace splits
/// exactly when `a` and `b` are proportional.
pub fn splitting_check_scalar<T: Real>(
    a: &LaurentSymbol<T>,
    b: &LaurentSymbol<T>,
    c: &LaurentSymbol<T>,
    d: &LaurentSymbol<T>,
    tol: T,
) -> Result<SplittingResult<T>> {
    for (name, s) in [("a", a), ("b", b), ("c", c), ("d", d)] {
        if s.shape() != (1, 1) {
            return Err(Error::Shape(format!("`{name}` must be scalar")));
        }
    }
    let phi1 = LaurentSymbol::block2(a, b, &c.conj_arg(), &d.conj_arg())?;
    let cls = classify_isometry(&phi1, tol);
    if cls.kind != crate::classify::IsometryKind::UnitaryValued {
        return Err(Error::NotUnitary("Phi1".into(), to_f64(cls.residual)));
    }
    let lo = a.kmin().min(b.kmin());
    let hi = a.kmax().max(b.kmax());
    let m = DMatrix::from_fn((hi - lo + 1) as usize, 2, |i, j| {
        let k = lo + i as i64;
        if j == 0 { a.coeff(k)[(0, 0)] } else { b.coeff(k)[(0, 0)] }
    });
    let s = linalg::singular_values(&m);
    let ratio = if s.len() > 1 && s[0] > T::zero() { s[1] / s[0] } else { T::zero() };
    let splitting = ratio <= tol;
    let witness = if !splitting {
        None
    } else if m.column(1).norm() <= tol {
        Some((czero(), cone()))
    } else if m.column(0).norm() <= tol {
        Some((cone(), czero()))
    } else {
        let mu = m.column(0).dotc(&m.column(1)) / m.column(0).dotc(&m.column(0));
        Some((mu, -cone::<T>()))
    };
    Ok(SplittingResult { splitting, witness, ratio })
}

/// Constant unitary `W` with `S₁ = S₂ W`, estimated as the mean of `S₂(z_j)ᴴ S₁(z_j)`.
pub fn constant_unitary_match<T: Real>(
    s1: &LaurentSymbol<T>,
    s2: &LaurentSymbol<T>,
    num_samples: usize,
    tol: T,
) -> Result<CMat<T>> {
    if s1.shape() != s2.shape() {
        return Err(Error::Shape("constant_unitary_match: shapes differ".into()));
    }
    for (name, s) in [("S1", s1), ("S2", s2)] {
        let c = classify_isometry(s, tol);
        if !c.is_isometric() {
            return Err(Error::NotIsometry(name.into(), to_f64(c.residual)));
        }
    }
    // the constant term of S₂*S₁ is isolated once the grid outnumbers its largest |power|
    let reach = (s1.kmax() - s2.kmin()).abs().max((s1.kmin() - s2.kmax()).abs()) as usize;
    let ns = num_samples.max(reach + 1);
    let mut w: CMat<T> = DMatrix::zeros(s1.cols(), s1.cols());
    for (p1, p2) in sample(s1, ns).iter().zip(sample(s2, ns)) {
        w += p2.adjoint() * p1;
    }
    let w = w / Cx::new(re::<T>(ns as f64), T::zero());
    let unit = to_f64((w.adjoint() * &w - DMatrix::identity(w.ncols(), w.ncols())).norm());
    let fit = to_f64(s1.coeff_distance(&s2.mul(&LaurentSymbol::constant(w.clone()))?)?);
    let worst = unit.max(fit);
    if worst > to_f64(tol) {
        return Err(Error::NoConstantUnitary(worst));
    }
    Ok(w)
}

/// Dimensions `(dim N, dim P_E N, dim P_F N)` on the window of `N ⊂ H²_E ⊕ H²_F`.
///
/// `N = M₁ ⊕ M₂` with `M₁ ⊂ H²_E`, `M₂ ⊂ H²_F` forces `dim N = dim P_E N + dim P_F N`.
pub fn block_split_dims<T: Real>(nsub: &SubspaceBasis<T>, rank_tol: f64) -> (usize, usize, usize) {
    let b = nsub.restrict_to_window(nsub.window);
    let amb: &SpaceSum = &b.ambient;
    let e = amb.select(|c| c.block == 0);
    let f = amb.select(|c| c.block == 1);
    let pe = linalg::select_rows(&b.basis, &e);
    let pf = linalg::select_rows(&b.basis, &f);
    let r = |m: &CMat<T>| linalg::rank(m, re(rank_tol));
    (b.dim(), r(&pe), r(&pf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type S = LaurentSymbol<f64>;

    #[test]
    fn timotin_pair_is_not_split() {
        let h = 0.5f64.sqrt();
        let a = S::scalar_real(0, &[h]);
        let b = S::scalar_real(1, &[h]);
        let c = S::scalar_real(1, &[h]);
        let d = S::scalar_real(0, &[-h]);
        let r = splitting_check_scalar(&a, &b, &c, &d, 1e-10).unwrap();
        assert!(!r.splitting);
        assert!(r.witness.is_none());
    }

    #[test]
    fn identity_splits() {
        let one = S::identity(1);
        let zero = S::zero(1, 1);
        let r = splitting_check_scalar(&one, &zero, &zero, &one, 1e-10).unwrap();
        assert!(r.splitting);
        assert_eq!(r.witness, Some((cx(0.0, 0.0), cx(1.0, 0.0))));
    }

    #[test]
    fn proportional_pair_splits() {
        let h = 0.5f64.sqrt();
        let a = S::scalar(1, &[cx(h, 0.0)]);
        let b = S::scalar(1, &[cx(0.0, h)]);
        let c = S::scalar(0, &[cx(0.0, h)]);
        let d = S::scalar(0, &[cx(h, 0.0)]);
        let r = splitting_check_scalar(&a, &b, &c, &d, 1e-10).unwrap();
        assert!(r.splitting);
        let (al, be) = r.witness.unwrap();
        assert!((al - cx(0.0, 1.0)).norm() < 1e-12);
        assert!((be - cx(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rejects_non_unitary() {
        let one = S::identity(1);
        assert!(matches!(splitting_check_scalar(&one, &one, &one, &one, 1e-10), Err(Error::NotUnitary(..))));
    }

    #[test]
    fn unitary_match_examples() {
        let h = 0.5f64.sqrt();
        let phi1 = S::from_real(2, 2, &[(-1, &[0., 0., h, 0.]), (0, &[h, 0., 0., -h]), (1, &[0., h, 0., 0.])]).unwrap();
        let w = constant_unitary_match(&phi1, &phi1, 8, 1e-10).unwrap();
        assert!((w - DMatrix::identity(2, 2)).norm() < 1e-12);

        let d1 = S::from_real(2, 2, &[(0, &[0., 0., 0., 1.]), (1, &[1., 0., 0., 0.])]).unwrap();
        let d2 = S::from_real(2, 2, &[(0, &[1., 0., 0., 0.]), (1, &[0., 0., 0., 1.])]).unwrap();
        assert!(matches!(constant_unitary_match(&d1, &d2, 8, 1e-10), Err(Error::NoConstantUnitary(_))));
    }
}
