//! Pointwise properties of symbols: isometry classes, sampled ranks, complements.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{cone, czero, root_of_unity, Cx, CMat, Real};
use crate::symbol::LaurentSymbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsometryKind {
    Zero,
    None,
    IsometryValued,
    CoisometryValued,
    UnitaryValued,
    PartialIsometryValued,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsometryClass<T: Real> {
    pub kind: IsometryKind,
    /// Pointwise rank of `Φ(z)*Φ(z)`, i.e. `dim E₀` for a partial isometry.
    pub initial_rank: usize,
    pub residual: T,
}

impl<T: Real> IsometryClass<T> {
    /// Isometry- or unitary-valued.
    pub fn is_isometric(&self) -> bool {
        matches!(self.kind, IsometryKind::IsometryValued | IsometryKind::UnitaryValued)
    }

    /// Zero, or `Φ*Φ` a constant projection.
    pub fn is_partial_isometric(&self) -> bool {
        matches!(
            self.kind,
            IsometryKind::Zero
                | IsometryKind::IsometryValued
                | IsometryKind::UnitaryValued
                | IsometryKind::PartialIsometryValued
        )
    }
}

/// Max Frobenius deviation of the Laurent coefficients of `p` from `δ_{m0}·target`.
fn deviation<T: Real>(p: &LaurentSymbol<T>, target: &CMat<T>) -> T {
    let mut worst = T::zero();
    for k in p.kmin().min(0)..=p.kmax().max(0) {
        let d = if k == 0 { (p.coeff(0) - target).norm() } else { p.coeff(k).norm() };
        worst = worst.max(d);
    }
    worst
}

/// Classify a symbol by exact coefficient convolution of `Φ*Φ` and `ΦΦ*`.
pub fn classify_isometry<T: Real>(s: &LaurentSymbol<T>, tol: T) -> IsometryClass<T> {
    if s.is_zero() {
        return IsometryClass { kind: IsometryKind::Zero, initial_rank: 0, residual: T::zero() };
    }
    let gram = s.adjoint().mul(s).expect("shapes compose");
    let dual = s.mul(&s.adjoint()).expect("shapes compose");
    let iso = deviation(&gram, &DMatrix::identity(s.cols(), s.cols()));
    let coiso = deviation(&dual, &DMatrix::identity(s.rows(), s.rows()));

    let g0 = gram.coeff(0);
    let off = deviation(&gram, &g0);
    let idem = (&g0 * &g0 - &g0).norm();
    let herm = (&g0 - g0.adjoint()).norm();
    let partial = off.max(idem).max(herm);
    let trace_rank = g0.trace().re.round().to_usize().unwrap_or(0);

    let (kind, initial_rank, residual) = if iso <= tol && coiso <= tol {
        (IsometryKind::UnitaryValued, s.cols(), iso.max(coiso))
    } else if iso <= tol {
        (IsometryKind::IsometryValued, s.cols(), iso)
    } else if coiso <= tol {
        (IsometryKind::CoisometryValued, s.rows(), coiso)
    } else if partial <= tol {
        (IsometryKind::PartialIsometryValued, trace_rank, partial)
    } else {
        (IsometryKind::None, 0, iso.min(coiso).min(partial))
    };
    IsometryClass { kind, initial_rank, residual }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub ranks: Vec<usize>,
    pub constant: bool,
}

/// Smallest sampling grid that resolves every coefficient of products of `s` with its adjoint.
pub fn min_samples<T: Real>(s: &LaurentSymbol<T>) -> usize {
    (2 * (s.kmax() - s.kmin()) + 1) as usize
}

pub fn sample<T: Real>(s: &LaurentSymbol<T>, num_samples: usize) -> Vec<CMat<T>> {
    (0..num_samples).map(|j| s.eval(root_of_unity(j, num_samples))).collect()
}

/// Numerical rank at `num_samples` roots of unity, relative to the largest singular
/// value seen over all samples. The grid is enlarged to `2(kmax−kmin)+1` if smaller.
pub fn rank_profile<T: Real>(s: &LaurentSymbol<T>, num_samples: usize, tol: T) -> RankProfile {
    let n = num_samples.max(min_samples(s));
    let svs: Vec<Vec<T>> = sample(s, n).iter().map(linalg::singular_values).collect();
    let smax = svs.iter().filter_map(|v| v.first().copied()).fold(T::zero(), |a, b| a.max(b));
    let ranks: Vec<usize> = svs.iter().map(|v| v.iter().filter(|&&x| x > tol * smax).count()).collect();
    let constant = ranks.windows(2).all(|w| w[0] == w[1]);
    RankProfile { ranks, constant }
}

/// Pointwise orthonormal complement `V(z_j)` of the columns of an isometry-valued `U`.
///
/// Columns are chosen by Gram–Schmidt over the standard basis, taking the largest
/// residual first and the lowest index among ties.
pub fn complementary_completion<T: Real>(
    u: &LaurentSymbol<T>,
    num_samples: usize,
    tol: T,
) -> Result<Vec<CMat<T>>> {
    if u.rows() <= u.cols() {
        return Err(Error::Invalid(format!(
            "completion needs rows > cols, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let class = classify_isometry(u, tol);
    if !class.is_isometric() {
        return Err(Error::NotIsometry("U".into(), crate::scalar::to_f64(class.residual)));
    }
    let need = u.rows() - u.cols();
    let mut out = Vec::with_capacity(num_samples);
    for (j, uz) in sample(u, num_samples).into_iter().enumerate() {
        let mut basis: Vec<nalgebra::DVector<Cx<T>>> = uz.column_iter().map(|c| c.into_owned()).collect();
        let mut chosen = Vec::with_capacity(need);
        let mut used = vec![false; u.rows()];
        for _ in 0..need {
            let mut best: Option<(usize, nalgebra::DVector<Cx<T>>, T)> = None;
            for i in (0..u.rows()).filter(|&i| !used[i]) {
                let mut r = nalgebra::DVector::from_element(u.rows(), czero::<T>());
                r[i] = cone();
                // two passes keep the residual orthogonal to working precision
                for _ in 0..2 {
                    for b in &basis {
                        let p = b.dotc(&r);
                        r -= b * p;
                    }
                }
                let nr = r.norm();
                let better = match &best {
                    None => true,
                    Some((_, _, bn)) => nr > *bn * (T::one() + crate::scalar::re(1e-12)),
                };
                if better {
                    best = Some((i, r, nr));
                }
            }
            let (i, r, nr) = best.expect("at least one candidate");
            if nr <= tol {
                return Err(Error::RankDeficient(j));
            }
            used[i] = true;
            let v = r / Cx::new(nr, T::zero());
            basis.push(v.clone());
            chosen.push(v);
        }
        out.push(DMatrix::from_columns(&chosen));
    }
    Ok(out)
}

/// Scalar anti-analytic symbol with `coeff(z̄^k) = Σ_j c_j λ_j^{k−1}` for `1 ≤ k ≤ degree`.
///
/// Its Hankel operator has rank equal to the number of poles.
pub fn make_cyclic_symbol<T: Real>(poles: &[Cx<T>], weights: &[T], degree: usize) -> Result<LaurentSymbol<T>> {
    if poles.len() != weights.len() {
        return Err(Error::InvalidPoles(format!("{} poles but {} weights", poles.len(), weights.len())));
    }
    for (i, p) in poles.iter().enumerate() {
        if nalgebra::ComplexField::modulus(*p) >= T::one() {
            return Err(Error::InvalidPoles(format!("pole {i} is not inside the unit disk")));
        }
        if poles[..i].iter().any(|q| *q == *p) {
            return Err(Error::InvalidPoles(format!("pole {i} is repeated")));
        }
        if weights[i] <= T::zero() {
            return Err(Error::InvalidPoles(format!("weight {i} is not positive")));
        }
    }
    if poles.is_empty() || degree == 0 {
        return Ok(LaurentSymbol::zero(1, 1));
    }
    // coefficients listed from z̄^degree up to z̄^1
    let mut cs = vec![czero::<T>(); degree];
    for (p, w) in poles.iter().zip(weights) {
        let mut pk = cone::<T>();
        for k in 1..=degree {
            cs[degree - k] += pk * *w;
            pk *= *p;
        }
    }
    Ok(LaurentSymbol::scalar(-(degree as i64), &cs))
}
