//! Executes scenarios and serializes the results.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::n3::{build_n3, invariance_check, n_from_n3, reverse_projection_angle};
use crate::operator::{defect_norm, hankel_op, intertwining_residual, nehari_bounds, v_phi, w_psi, Intertwining, OperatorMatrix};
use crate::report::VerificationReport;
use crate::representation::{
    kernel_rep_subspace, kernel_representation_check, range_rep_subspace, range_representation_check, RepOptions,
};
use crate::scalar::cx;
use crate::scenario::{CheckId, Scenario};
use crate::spec::Variant;
use crate::splitting::{block_split_dims, splitting_check_scalar};
use crate::subspace::SubspaceBasis;
use crate::twocond::{classify_type, default_samples, twocond_check, SubspaceType};

type Basis = SubspaceBasis<f64>;

/// Threshold for exact identities (invariance, intertwining, admissibility).
pub const IDENTITY_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub report: VerificationReport,
}

impl ScenarioReport {
    pub fn pass(&self) -> bool {
        self.report.pass()
    }
}

/// One line of structured output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record<'a> {
    pub scenario: &'a str,
    pub check: &'a str,
    pub n: usize,
    pub residual: f64,
    pub pass: bool,
}

/// Round to 12 significant digits; nonzero values stay nonzero.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Newline-delimited `{scenario, check, n, residual, pass}` records.
pub fn to_structured(reports: &[ScenarioReport]) -> String {
    let mut out = String::new();
    for r in reports {
        for c in &r.report.checks {
            let rec = Record { scenario: &r.scenario, check: &c.name, n: c.n, residual: sig12(c.residual), pass: c.pass };
            out.push_str(&serde_json::to_string(&rec).expect("record serializes"));
            out.push('\n');
        }
    }
    out
}

pub fn to_text(reports: &[ScenarioReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let verdict = if r.pass() { "PASS" } else { "FAIL" };
        out.push_str(&format!("scenario {} [{verdict}]\n", r.scenario));
        let width = r.report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &r.report.checks {
            out.push_str(&format!(
                "  {}  {:<width$}  n={:<3} window={:<3} residual={:.11e}",
                if c.pass { "ok  " } else { "FAIL" },
                c.name,
                c.n,
                c.window,
                c.residual,
            ));
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
    }
    out
}

/// Runs scenarios concurrently; output is ordered by scenario name.
pub fn run_batch(scenarios: &[Scenario]) -> Vec<ScenarioReport> {
    let mut out: Vec<ScenarioReport> = scenarios.par_iter().map(run).collect();
    out.sort_by(|a, b| a.scenario.cmp(&b.scenario));
    out
}

/// Every check at every `n`; a check that errors is recorded as failing with the error attached.
pub fn run(sc: &Scenario) -> ScenarioReport {
    let mut rep = VerificationReport::new();
    let samples = sc.samples.unwrap_or_else(|| default_samples(&sc.spec));
    let admissible = matches!(sc.spec.variant, Variant::TypeI { .. } | Variant::TypeII { .. })
        .then(|| twocond_check(&sc.spec, samples, 1e-10).pass());

    for &check in sc.checks.iter().filter(|c| !per_n(**c)) {
        if let Err(e) = global_check(sc, check, samples, &mut rep) {
            fail(&mut rep, check, 0, e);
        }
    }
    for &n in &sc.n_list {
        let built = build_subspace(sc, n);
        for &check in sc.checks.iter().filter(|c| per_n(**c)) {
            let res = match &built {
                Ok((nsub, n3)) => per_n_check(sc, check, n, nsub, n3.as_ref(), admissible, &mut rep),
                Err(e) => Err(e.clone()),
            };
            if let Err(e) = res {
                fail(&mut rep, check, n, e);
            }
        }
    }
    ScenarioReport { scenario: sc.name.clone(), report: rep }
}

fn per_n(c: CheckId) -> bool {
    !matches!(c, CheckId::Twocond | CheckId::Classify | CheckId::Splitting | CheckId::Nehari)
}

fn fail(rep: &mut VerificationReport, check: CheckId, n: usize, e: Error) {
    rep.flag(check.as_str(), false, f64::NAN, -1, n).detail(format!("error: {e}"));
}

fn prefixed(rep: &mut VerificationReport, id: CheckId, sub: VerificationReport) {
    for mut c in sub.checks {
        if c.name != id.as_str() {
            c.name = format!("{}/{}", id.as_str(), c.name);
        }
        rep.checks.push(c);
    }
}

fn opts(sc: &Scenario) -> RepOptions {
    RepOptions { tol: sc.tol, rank_tol: sc.rank_tol, window_cap: sc.window_cap }
}

/// `N` at truncation `n`, plus `N₃` when the scenario is given by bilateral-shift data.
fn build_subspace(sc: &Scenario, n: usize) -> Result<(Basis, Option<Basis>)> {
    let (e, cap) = (sc.spec.dim_e, sc.window_cap);
    let capped = |b: Basis| match cap {
        Some(c) if c < b.window => b.restrict_to_window(c),
        _ => b,
    };
    match &sc.spec.variant {
        Variant::TypeI { .. } | Variant::TypeII { .. } => {
            let n3 = build_n3(&sc.spec, n)?;
            let nsub = n_from_n3(&n3, n)?;
            Ok((capped(nsub), Some(n3)))
        }
        Variant::KernelRep { psi, theta, .. } => Ok((capped(kernel_rep_subspace(psi, theta.as_ref(), e, n, sc.rank_tol)?), None)),
        Variant::RangeRep { phi, theta } => Ok((capped(range_rep_subspace(phi, theta.as_ref(), e, n, sc.rank_tol)?), None)),
    }
}

fn global_check(sc: &Scenario, check: CheckId, samples: usize, rep: &mut VerificationReport) -> Result<()> {
    match check {
        CheckId::Twocond => prefixed(rep, check, twocond_check(&sc.spec, samples, 1e-10)),
        CheckId::Classify => {
            let (t, _) = classify_type(&sc.spec, samples, 1e-10);
            let ok = match sc.expect_type {
                Some(want) => t == want,
                None => t != SubspaceType::NotInvariant,
            };
            rep.flag("classify", ok, if ok { 0.0 } else { 1.0 }, 0, 0).detail(format!("{t:?}"));
        }
        CheckId::Splitting => {
            let phi = sc.range_data().expect("validated").phi;
            let entry = |i: usize, j: usize| phi.row_block(i, i + 1).col_block(j, j + 1);
            let (c, d) = (entry(1, 0).conj_arg(), entry(1, 1).conj_arg());
            let r = splitting_check_scalar(&entry(0, 0), &entry(0, 1), &c, &d, 1e-10)?;
            let want = sc.expect_splitting.expect("validated");
            let witness = r.witness.map_or("none".to_string(), |(a, b)| format!("({a:.6}, {b:.6})"));
            rep.flag("splitting", r.splitting == want, r.ratio, 0, 0)
                .detail(format!("splitting = {}, witness = {witness}", r.splitting));
        }
        CheckId::Nehari => {
            let phi = sc.range_data().expect("validated").phi;
            let (e, k) = (sc.spec.dim_e, phi.cols());
            let blk = |r0: usize, r1: usize, c0: usize, c1: usize| phi.row_block(r0, r1).col_block(c0, c1);
            let (a, b) = (blk(0, e, 0, e), blk(0, e, e, k));
            let (c, d) = (blk(e, phi.rows(), 0, e), blk(e, phi.rows(), e, k));
            let nb = nehari_bounds(&a, &b, &c, &d, &sc.n_list, &sc.nehari_candidates, samples)?;
            let best = nb.upper.iter().copied().fold(f64::INFINITY, f64::min);
            for (n, lo) in &nb.lower {
                rep.flag("nehari/lower", *lo <= best + sc.tol, *lo, -1, *n);
            }
            rep.flag("nehari/upper", best.is_finite(), best, -1, 0);
            rep.flag("nehari/gap", nb.gap >= -sc.tol, nb.gap, -1, 0);
        }
        _ => unreachable!("per-n check"),
    }
    Ok(())
}

fn partial_isometry_defect(op: &OperatorMatrix<f64>) -> Result<(f64, f64)> {
    // W W* W = W on exact columns, and the spread of the window singular values from {0, 1}
    let d = op.compose(&op.adjoint().compose(op)?)?.sub(op)?;
    let identity = defect_norm(&d)?;
    let spread = linalg::singular_values(&op.compress_domain())
        .into_iter()
        .map(|s| s.abs().min((s - 1.0).abs()))
        .fold(0.0, f64::max);
    Ok((identity, spread))
}

fn per_n_check(
    sc: &Scenario,
    check: CheckId,
    n: usize,
    nsub: &Basis,
    n3: Option<&Basis>,
    admissible: Option<bool>,
    rep: &mut VerificationReport,
) -> Result<()> {
    let e = sc.spec.dim_e;
    match check {
        CheckId::Invariance => {
            let r = invariance_check(nsub)?;
            let c = rep.flag("invariance", r <= IDENTITY_TOL && admissible != Some(false), r, nsub.window, n);
            if admissible == Some(false) {
                c.detail("N3 fails zH2_E < N3 < L2_E + H2_F; the correspondence does not apply");
            }
        }
        CheckId::RoundTrip => {
            let n3 = n3.ok_or_else(|| Error::Invalid("round_trip needs N3".into()))?;
            let a = reverse_projection_angle(n3, nsub, n)?;
            rep.residual("round_trip", a, sc.tol, n3.window, n);
        }
        CheckId::KernelRep => {
            let k = sc.kernel_data().expect("validated");
            let (sub, kb) = kernel_representation_check(nsub, &k.psi, k.theta.as_ref(), k.gamma.as_ref(), e, n, &opts(sc))?;
            prefixed(rep, check, sub);
            if sc.checks.contains(&CheckId::RangeRep) {
                let r = sc.range_data().expect("validated");
                let rb = range_rep_subspace(&r.phi, r.theta.as_ref(), e, n, sc.rank_tol)?;
                let w = kb.window.min(rb.window);
                let d = kb.distance(&rb.restrict_to_window(w));
                rep.residual("kernel_vs_range", d, sc.tol, w, n);
            }
        }
        CheckId::RangeRep => {
            let r = sc.range_data().expect("validated");
            let (sub, _) = range_representation_check(nsub, &r.phi, r.theta.as_ref(), e, n, &opts(sc))?;
            prefixed(rep, check, sub);
        }
        CheckId::BlockSplit => {
            let (d, pe, pf) = block_split_dims(nsub, 1e-8);
            let split = d == pe + pf;
            let want = sc.expect_splitting.expect("validated");
            rep.flag("block_split", split == want, (pe + pf - d) as f64, nsub.window, n)
                .detail(format!("dim N = {d}, dim P_E N = {pe}, dim P_F N = {pf}"));
        }
        CheckId::Intertwining => {
            if let Some(r) = sc.range_data() {
                let v = v_phi(&r.phi, e, n)?;
                rep.residual("intertwining/X V = V Y", intertwining_residual(&v, Intertwining::VPhi)?, IDENTITY_TOL, v.exact_window(), n);
            }
            if let Some(k) = sc.kernel_data() {
                let w = w_psi(&k.psi, e, n)?;
                rep.residual("intertwining/W X = Y* W", intertwining_residual(&w, Intertwining::WPsi)?, IDENTITY_TOL, w.exact_window(), n);
            }
        }
        CheckId::PartialIsometry => {
            if let Some(r) = sc.range_data() {
                let v = v_phi(&r.phi, e, n)?;
                let (id, spread) = partial_isometry_defect(&v)?;
                rep.residual("partial_isometry/V_Phi", id, sc.tol, v.exact_window(), n)
                    .detail(format!("window singular values within {spread:.3e} of {{0, 1}}"));
            }
            if let Some(k) = sc.kernel_data() {
                let w = w_psi(&k.psi, e, n)?;
                let (id, spread) = partial_isometry_defect(&w)?;
                rep.residual("partial_isometry/W_Psi", id, sc.tol, w.exact_window(), n)
                    .detail(format!("window singular values within {spread:.3e} of {{0, 1}}"));
            }
        }
        CheckId::ExplicitFamily => {
            let fam = sc.family.expect("validated");
            let want = explicit_family_basis(fam.m, fam.n, n, nsub.window);
            let d = want.distance(nsub);
            rep.residual("explicit_family", d, sc.tol, nsub.window, n)
                .detail(format!("{{f x{} + f(0) x{}}}", fam.m, fam.n));
        }
        CheckId::HankelRank => {
            let h = sc.hankel.as_ref().expect("validated");
            let hn = h.n.unwrap_or(n);
            let op = hankel_op(&h.symbol, hn)?;
            let s = linalg::singular_values(&op.entries);
            let top = s.first().copied().unwrap_or(0.0);
            let rank = s.iter().filter(|&&x| x > h.rel_tol * top).count();
            let next = s.get(h.rank).copied().unwrap_or(0.0) / top.max(f64::MIN_POSITIVE);
            rep.flag("hankel_rank", rank == h.rank, next, -1, hn)
                .detail(format!("numerical rank {rank}, expected {}", h.rank));
        }
        _ => unreachable!("global check"),
    }
    Ok(())
}

/// `{(f, …, f) ⊕ (f(0), …, f(0))}` with `m` copies of `f` and `k` copies of `f(0)`, on `Poly_w`.
pub fn explicit_family_basis(m: usize, k: usize, n: usize, w: i64) -> Basis {
    let amb = crate::space::SpaceSum::hardy_pair(m, k, n);
    let mut b = nalgebra::DMatrix::zeros(amb.dim(), (w + 1).max(0) as usize);
    let c0 = cx::<f64>(1.0 / ((m + k) as f64).sqrt(), 0.0);
    let cd = cx::<f64>(1.0 / (m as f64).sqrt(), 0.0);
    for d in 0..=w {
        let col = d as usize;
        for i in 0..m {
            b[(amb.index(0, d, i).expect("degree in range"), col)] = if d == 0 { c0 } else { cd };
        }
        if d == 0 {
            for j in 0..k {
                b[(amb.index(1, 0, j).expect("degree in range"), col)] = c0;
            }
        }
    }
    Basis::from_orthonormal(amb, b, w)
}
