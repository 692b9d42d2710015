//! Admissibility of bilateral-shift data: `zH²_E ⊂ N₃ ⊂ L²_E ⊕ H²_F`.

use serde::{Deserialize, Serialize};

use crate::classify::{classify_isometry, rank_profile, sample};
use crate::report::VerificationReport;
use crate::scalar::{re, to_f64, Real};
use crate::spec::{InvariantSubspaceSpec, Variant};
use crate::symbol::LaurentSymbol;

/// Relative threshold for sampled rank decisions.
pub const RANK_TOL: f64 = 1e-8;

fn coeff_norm_where<T: Real>(s: &LaurentSymbol<T>, pred: impl Fn(i64) -> bool) -> f64 {
    s.terms().filter(|(k, _)| pred(*k)).map(|(_, c)| to_f64(c.norm())).fold(0.0, f64::max)
}

/// Checks that `U` (and `Ω`) describe a subspace `N₃` with `zH²_E ⊂ N₃ ⊂ L²_E ⊕ H²_F`.
///
/// Only type I and type II data can be checked; representation variants get a failing
/// `variant` entry.
pub fn twocond_check<T: Real>(spec: &InvariantSubspaceSpec<T>, num_samples: usize, tol: T) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let tolf = to_f64(tol);
    let (e, f) = (spec.dim_e, spec.dim_f);
    if !matches!(spec.variant, Variant::TypeI { .. } | Variant::TypeII { .. }) {
        rep.flag("variant", false, f64::NAN, 0, 0).detail("admissibility applies to type I/II data only");
        return rep;
    }
    let expected_rank = (spec.dim_e0() + spec.dim_e2()) as i64 - e as i64;

    if let Some(u) = spec.u() {
        let c = classify_isometry(u, tol);
        rep.flag("U isometry", c.is_isometric(), to_f64(c.residual), 0, 0);
        let ue = u.row_block(0, e);
        let uf = u.row_block(e, e + f);
        rep.residual("U_F analytic", coeff_norm_where(&uf, |k| k < 0), tolf, 0, 0);
        // zU_E* analytic ⇔ U_E has no powers above 1
        rep.residual("zU_E* analytic", coeff_norm_where(&ue, |k| k > 1), tolf, 0, 0);
        let prof = rank_profile(&uf, num_samples, re(RANK_TOL));
        let worst = prof.ranks.iter().map(|&r| (r as i64 - expected_rank).abs()).max().unwrap_or(0);
        rep.flag("rank U_F (zH2_E containment)", worst == 0 && prof.constant, worst as f64, 0, 0)
            .detail(format!("expected {expected_rank}, sampled {:?}", dedup(&prof.ranks)));
    } else {
        // no simply invariant part: rank U_F is 0
        let worst = expected_rank.abs();
        rep.flag("rank U_F (zH2_E containment)", worst == 0, worst as f64, 0, 0)
            .detail(format!("expected {expected_rank}, U absent"));
    }

    if let Variant::TypeII { omega, .. } = &spec.variant {
        let c = classify_isometry(omega, tol);
        rep.flag("Omega isometry", c.is_isometric(), to_f64(c.residual), 0, 0);
        let frows = if omega.rows() > e { coeff_norm_where(&omega.row_block(e, e + f), |_| true) } else { 0.0 };
        rep.residual("Omega into E", frows, tolf, 0, 0);
        if let Some(u) = spec.u() {
            let om = spec.omega_full().expect("type II");
            let ns = num_samples.max(crate::classify::min_samples(&om.adjoint().mul(u).expect("rows agree")));
            let worst = sample(&om, ns)
                .iter()
                .zip(sample(u, ns))
                .map(|(w, uz)| to_f64((w.adjoint() * uz).norm()))
                .fold(0.0, f64::max);
            rep.residual("Omega orthogonal to U", worst, tolf, 0, 0);
        }
    }
    rep
}

fn dedup(v: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = v.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceType {
    TypeI,
    TypeII,
    NotInvariant,
    /// Representation data; no bilateral-shift description to classify.
    Unclassified,
}

pub fn classify_type<T: Real>(
    spec: &InvariantSubspaceSpec<T>,
    num_samples: usize,
    tol: T,
) -> (SubspaceType, VerificationReport) {
    let rep = twocond_check(spec, num_samples, tol);
    let t = match &spec.variant {
        Variant::KernelRep { .. } | Variant::RangeRep { .. } => SubspaceType::Unclassified,
        _ if !rep.pass() => SubspaceType::NotInvariant,
        Variant::TypeII { omega, .. } if !omega.is_zero() => SubspaceType::TypeII,
        _ => SubspaceType::TypeI,
    };
    (t, rep)
}

/// Default circle grid: `4·band + 1` points.
pub fn default_samples<T: Real>(spec: &InvariantSubspaceSpec<T>) -> usize {
    4 * spec.band() as usize + 1
}
