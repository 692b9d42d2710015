//! Built-in scenarios for the named examples.

use nalgebra::DMatrix;

use crate::classify::make_cyclic_symbol;
use crate::error::{Error, Result};
use crate::run::{run_batch, ScenarioReport};
use crate::scalar::{cx, CMat};
use crate::scenario::{CheckId, Family, HankelData, KernelData, RangeData, Scenario, DEFAULT_N_LIST, DEFAULT_RANK_TOL, DEFAULT_TOL};
use crate::spec::InvariantSubspaceSpec;
use crate::symbol::LaurentSymbol;
use crate::twocond::SubspaceType;

type Sym = LaurentSymbol<f64>;

pub const DEMO_NAMES: [&str; 5] = ["timotin-nonsplitting", "splitting-scalar", "f-f0-example", "cyclic-kernel", "type2-corner"];

pub fn describe(name: &str) -> &'static str {
    match name {
        "timotin-nonsplitting" => "Phi1 = [[1, z], [conj z, -1]]/sqrt2: N3, kernel and range agree; not splitting",
        "splitting-scalar" => "a = 1, b = 0: N = H2_E + 0 splits",
        "f-f0-example" => "{f + f(0) + f(0)} (m=1, n=2) and {f + f + f(0) x3} (m=2, n=3)",
        "cyclic-kernel" => "Hankel of a 4-pole cyclic symbol has rank 4; N = 0 + span{1, z} as a kernel",
        "type2-corner" => "Omega = 1: doubly invariant N3 = L2_E, N = 0 + H2_F",
        _ => "",
    }
}

fn base(name: &str, spec: InvariantSubspaceSpec<f64>, checks: &[CheckId]) -> Scenario {
    Scenario {
        name: name.to_string(),
        spec,
        kernel: None,
        range: None,
        checks: checks.to_vec(),
        n_list: DEFAULT_N_LIST.to_vec(),
        samples: None,
        tol: DEFAULT_TOL,
        rank_tol: DEFAULT_RANK_TOL,
        window_cap: None,
        expect_splitting: None,
        expect_type: None,
        family: None,
        hankel: None,
        nehari_candidates: Vec::new(),
    }
}

fn real(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> CMat<f64> {
    DMatrix::from_fn(rows, cols, |i, j| cx(f(i, j), 0.0))
}

/// `U = [[z, 1], [z, −1]]/√2`, the bilateral-shift data behind `Φ₁`.
pub fn u_phi1() -> Sym {
    let h = 0.5f64.sqrt();
    Sym::from_real(2, 2, &[(0, &[0.0, h, 0.0, -h]), (1, &[h, 0.0, h, 0.0])]).expect("2x2")
}

/// `Φ₁ = [[1, z], [z̄, −1]]/√2`.
pub fn phi1() -> Sym {
    let h = 0.5f64.sqrt();
    Sym::from_real(2, 2, &[(-1, &[0., 0., h, 0.]), (0, &[h, 0., 0., -h]), (1, &[0., h, 0., 0.])]).expect("2x2")
}

/// `(I − P) + zP` for the orthogonal projection `P` onto `v/|v|`.
fn rank_one_inner(v: &[f64]) -> Sym {
    let k = v.len();
    let nrm2: f64 = v.iter().map(|x| x * x).sum();
    let p = real(k, k, |i, j| v[i] * v[j] / nrm2);
    let i_minus_p = CMat::identity(k, k) - &p;
    Sym::new(k, k, vec![(0, i_minus_p), (1, p)]).expect("square")
}

/// Type I data for `{f ⊕ f(0) ⊕ f(0)}`: `U = (I − P) + zP`, `P` onto `(1, 1, 1)/√3`.
pub fn u_f_f0_m1() -> Sym {
    rank_one_inner(&[1.0, 1.0, 1.0])
}

/// Type II data for `{f ⊕ f ⊕ f(0) ⊕ f(0) ⊕ f(0)}`: `Ω = (1, −1)/√2` into `E`, and
/// `U = R((I − P) + zP)` with `R x = (x₀/√2, x₀/√2, x₁, x₂, x₃)`, `P` onto `(√2, 1, 1, 1)/√5`.
pub fn f_f0_m2_data() -> (Sym, Sym) {
    let h = 0.5f64.sqrt();
    let r = Sym::constant(real(5, 4, |i, j| match (i, j) {
        (0, 0) | (1, 0) => h,
        (i, j) if i >= 2 && j == i - 1 => 1.0,
        _ => 0.0,
    }));
    let u = r.mul(&rank_one_inner(&[2f64.sqrt(), 1.0, 1.0, 1.0])).expect("5x4 times 4x4");
    let omega = Sym::from_real(2, 1, &[(0, &[h, -h])]).expect("2x1");
    (u, omega)
}

/// `Φ = [1; …; 1; z̄; …; z̄]/√(m+k)` with `m` ones and `k` copies of `z̄`.
pub fn f_f0_phi(m: usize, k: usize) -> Sym {
    let s = 1.0 / ((m + k) as f64).sqrt();
    let top = Sym::constant(real(m, 1, |_, _| s));
    let bottom = Sym::monomial(-1, real(k, 1, |_, _| s));
    Sym::vstack(&top, &bottom).expect("one column")
}

/// `a` from poles `{1/2, 1/3, 1/4, 1/5}`, weights `4^{−j}`, degree 33.
pub fn cyclic_a() -> Sym {
    let poles: Vec<_> = (2..=5).map(|d| cx(1.0 / d as f64, 0.0)).collect();
    let weights: Vec<f64> = (1..=4).map(|j| 4f64.powi(-j)).collect();
    make_cyclic_symbol(&poles, &weights, 33).expect("valid poles")
}

pub fn scenarios(name: &str) -> Result<Vec<Scenario>> {
    use CheckId::*;
    let out = match name {
        "timotin-nonsplitting" => {
            let spec = InvariantSubspaceSpec::type_i(u_phi1(), 1, 1)?;
            let mut sc = base(
                name,
                spec,
                &[Twocond, Classify, Invariance, RoundTrip, KernelRep, RangeRep, Splitting, BlockSplit, Intertwining, PartialIsometry, Nehari],
            );
            sc.expect_splitting = Some(false);
            sc.expect_type = Some(SubspaceType::TypeI);
            vec![sc]
        }
        "splitting-scalar" => {
            let u = Sym::from_real(2, 2, &[(0, &[0., 0., 0., 1.]), (1, &[1., 0., 0., 0.])])?;
            let spec = InvariantSubspaceSpec::type_i(u, 1, 1)?;
            let mut sc = base(
                name,
                spec,
                &[Twocond, Classify, Invariance, RoundTrip, KernelRep, RangeRep, Splitting, BlockSplit, Intertwining, PartialIsometry],
            );
            sc.expect_splitting = Some(true);
            vec![sc]
        }
        "f-f0-example" => {
            let spec = InvariantSubspaceSpec::type_i(u_f_f0_m1(), 1, 2)?;
            let mut m1 = base(
                "f-f0-example/m1-n2",
                spec,
                &[Twocond, Classify, Invariance, RoundTrip, RangeRep, ExplicitFamily, BlockSplit],
            );
            m1.range = Some(RangeData { phi: f_f0_phi(1, 2), theta: None });
            m1.family = Some(Family { m: 1, n: 2 });
            m1.expect_splitting = Some(false);

            let (u, omega) = f_f0_m2_data();
            let spec = InvariantSubspaceSpec::type_ii(Some(u), omega, 2, 3)?;
            let mut m2 = base(
                "f-f0-example/m2-n3",
                spec,
                &[Twocond, Classify, Invariance, RoundTrip, RangeRep, ExplicitFamily, BlockSplit],
            );
            m2.range = Some(RangeData { phi: f_f0_phi(2, 3), theta: None });
            m2.family = Some(Family { m: 2, n: 3 });
            m2.expect_splitting = Some(false);
            m2.expect_type = Some(SubspaceType::TypeII);
            vec![m1, m2]
        }
        "cyclic-kernel" => {
            let u = Sym::from_real(2, 1, &[(2, &[0.0, 1.0])])?;
            let spec = InvariantSubspaceSpec::type_ii(Some(u), Sym::identity(1), 1, 1)?;
            let mut sc = base(name, spec, &[Twocond, Classify, Invariance, RoundTrip, KernelRep, RangeRep, HankelRank]);
            let a = cyclic_a();
            let z2 = Sym::scalar_real(2, &[1.0]);
            let psi = Sym::block2(&a, &Sym::zero(1, 1), &Sym::zero(1, 1), &z2)?;
            sc.kernel = Some(KernelData { psi, theta: None, gamma: None });
            sc.range = Some(RangeData { phi: Sym::zero(2, 1), theta: Some(z2) });
            sc.hankel = Some(HankelData { symbol: a, rank: 4, rel_tol: 1e-8, n: Some(16) });
            // the truncated Hankel of `a` is injective on Poly_3 only, so compare there
            sc.n_list = vec![32];
            sc.window_cap = Some(3);
            sc.expect_type = Some(SubspaceType::TypeII);
            vec![sc]
        }
        "type2-corner" => {
            let spec = InvariantSubspaceSpec::type_ii(None, Sym::identity(1), 1, 1)?;
            let mut sc = base(name, spec, &[Twocond, Classify, Invariance, RoundTrip, KernelRep, RangeRep]);
            sc.kernel = Some(KernelData { psi: Sym::zero(2, 1), theta: Some(Sym::zero(1, 1)), gamma: None });
            sc.range = Some(RangeData { phi: Sym::zero(2, 1), theta: Some(Sym::zero(1, 1)) });
            sc.expect_type = Some(SubspaceType::TypeII);
            vec![sc]
        }
        _ => return Err(Error::UnknownDemo(name.to_string())),
    };
    Ok(out)
}

pub fn demo(name: &str) -> Result<Vec<ScenarioReport>> {
    Ok(run_batch(&scenarios(name)?))
}
