//! Acceptance criteria. Runs without the libtest harness so every criterion prints
//! exactly one `PASS`/`FAIL` line; the process exits non-zero if any fails.

mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use common::*;
use dualshift::demos::{cyclic_a, f_f0_m2_data, f_f0_phi, phi1, u_f_f0_m1, u_phi1};
use dualshift::linalg;
use dualshift::n3::{build_n3, invariance_check, n_from_n3, reverse_projection_angle};
use dualshift::operator::{
    defect_norm, hankel_op, intertwining_residual, nehari_bounds, svd_analysis, toeplitz_op, v_phi, w_psi,
    Intertwining, OperatorMatrix,
};
use dualshift::representation::{
    kernel_rep_subspace, kernel_representation_check, range_rep_subspace, range_representation_check, RepOptions,
};
use dualshift::space::SpaceSum;
use dualshift::splitting::{block_split_dims, constant_unitary_match, splitting_check_scalar};
use dualshift::{Spec, Subspace, Symbol};

type Outcome = Result<String, String>;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn ok_if(pass: bool, msg: String) -> Outcome {
    if pass { Ok(msg) } else { Err(msg) }
}

fn err(e: dualshift::Error) -> String {
    format!("error: {e}")
}

/// Random `Φ` with analytic `Φ_E` and `Ψ` with analytic `Ψ_F`, bands ≤ 3, fiber dims ≤ 3.
fn random_pairs(seed: u64, count: usize) -> Vec<(usize, Symbol, Symbol)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let (e, f, k) = (r.gen_range(1..=3), r.gen_range(1..=3), r.gen_range(1..=3));
            let d: [i64; 5] = std::array::from_fn(|_| r.gen_range(0..=3));
            let phi_e = rand_symbol(&mut r, e, k, 0, d[0]);
            let phi_f = rand_symbol(&mut r, f, k, -d[1], d[2]);
            let psi_e = rand_symbol(&mut r, e, k, -d[2], d[3]);
            let psi_f = rand_symbol(&mut r, f, k, 0, d[4]);
            (e, Symbol::vstack(&phi_e, &phi_f).unwrap(), Symbol::vstack(&psi_e, &psi_f).unwrap())
        })
        .collect()
}

fn intertwining() -> Outcome {
    let mut worst = 0.0f64;
    for (e, phi, psi) in random_pairs(1, 50) {
        let v = v_phi(&phi, e, 16).map_err(err)?;
        let w = w_psi(&psi, e, 16).map_err(err)?;
        worst = worst.max(intertwining_residual(&v, Intertwining::VPhi).map_err(err)?);
        worst = worst.max(intertwining_residual(&w, Intertwining::WPsi).map_err(err)?);
    }
    ok_if(worst <= 1e-10, format!("50 random symbols at n=16, worst residual {worst:.2e}"))
}

fn structure() -> Outcome {
    let n = 16;
    let mut worst = 0.0f64;
    let mut oracle = 0.0f64;
    for (_, phi, _) in random_pairs(2, 50) {
        let (rows, cols) = phi.shape();
        let tz_in = toeplitz_op(&Symbol::identity(cols).shift(1), n).map_err(err)?;
        let tz_out = toeplitz_op(&Symbol::identity(rows).shift(1), n).map_err(err)?;
        let t = toeplitz_op(&phi, n).map_err(err)?;
        let h = hankel_op(&phi, n).map_err(err)?;
        let d1 = tz_out.adjoint().compose(&t).and_then(|x| x.compose(&tz_in)).and_then(|x| x.sub(&t)).map_err(err)?;
        let d2 = h.compose(&tz_in).and_then(|x| x.sub(&tz_out.adjoint().compose(&h)?)).map_err(err)?;
        let flipped = hankel_op(&phi.conj_arg().adjoint(), n).map_err(err)?;
        let d3 = h.adjoint().sub(&flipped).map_err(err)?;
        for d in [d1, d2, d3] {
            worst = worst.max(defect_norm(&d).map_err(err)?);
        }
        oracle = oracle.max((&h.entries - dense_hankel(&phi, n)).norm());
    }
    ok_if(
        worst <= 1e-12 && oracle <= 1e-14,
        format!("worst shift/adjoint defect {worst:.2e}, Hankel vs direct assembly {oracle:.2e}"),
    )
}

/// `U = blockdiag(G_E, G_F)·[[zD₁(z̄), 0], [0, D₂(z)]]·G`, returned as `(dim_e, Ψ, Φ)` with
/// `Ψ = [z̄U_E; U_F]` and `Φ = Ψ(z̄)` built directly from the factors.
fn random_unitary_family(seed: u64, count: usize) -> Vec<(usize, Symbol, Symbol)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let (e, f) = (r.gen_range(1..=2), r.gen_range(1..=2));
            let d1: Vec<i64> = (0..e).map(|_| r.gen_range(0..=2)).collect();
            let d2: Vec<i64> = (0..f).map(|_| r.gen_range(0..=2)).collect();
            let (ge, gf, g) = (rand_unitary(&mut r, e), rand_unitary(&mut r, f), rand_unitary(&mut r, e + f));
            let ge = Symbol::constant(ge);
            let gf = Symbol::constant(gf);
            let g = Symbol::constant(g);
            let top = |d: &Symbol| Symbol::hstack(&ge.mul(d).unwrap(), &Symbol::zero(e, f)).unwrap().mul(&g).unwrap();
            let bot = |d: &Symbol| Symbol::hstack(&Symbol::zero(f, e), &gf.mul(d).unwrap()).unwrap().mul(&g).unwrap();
            let d1_bar = diag_monomials(&d1.iter().map(|k| -k).collect::<Vec<_>>());
            let d1_z = diag_monomials(&d1);
            let d2_z = diag_monomials(&d2);
            let d2_bar = diag_monomials(&d2.iter().map(|k| -k).collect::<Vec<_>>());
            let psi = Symbol::vstack(&top(&d1_bar), &bot(&d2_z)).unwrap();
            let phi = Symbol::vstack(&top(&d1_z), &bot(&d2_bar)).unwrap();
            (e, psi, phi)
        })
        .collect()
}

fn spread(s: &[f64]) -> f64 {
    s.iter().map(|&x| x.abs().min((x - 1.0).abs())).fold(0.0, f64::max)
}

fn partial_isometries() -> Outcome {
    let (mut sw, mut sv, mut sum) = (0.0f64, 0.0f64, 0.0f64);
    let mut oracle = 0.0f64;
    for (e, psi, phi) in random_unitary_family(3, 20) {
        oracle = oracle.max(isometry_defect(&psi)).max(isometry_defect(&phi));
        for n in [8, 16, 32] {
            let w = w_psi(&psi, e, n).map_err(err)?;
            let v = v_phi(&phi, e, n).map_err(err)?;
            sw = sw.max(spread(&svd_analysis(&w, 1e-8).singular_values));
            sv = sv.max(spread(&svd_analysis(&v, 1e-8).singular_values));
            let id = OperatorMatrix::identity(w.domain.clone());
            let d = w
                .adjoint()
                .compose(&w)
                .and_then(|x| x.add(&v.compose(&v.adjoint())?))
                .and_then(|x| x.sub(&id))
                .map_err(err)?;
            sum = sum.max(defect_norm(&d).map_err(err)?);
        }
    }
    ok_if(
        sw <= 1e-8 && sv <= 1e-8 && sum <= 1e-8 && oracle <= 1e-12,
        format!(
            "20 unitary U, n in {{8,16,32}}: W_Psi spread {sw:.2e}, V_Phi spread {sv:.2e}, \
             |W*W + VV* - I| {sum:.2e}, unitarity of symbols {oracle:.2e}"
        ),
    )
}

fn spec_library() -> Vec<(&'static str, Spec)> {
    let h = 0.5f64.sqrt();
    let z2 = Symbol::from_real(2, 1, &[(2, &[0.0, 1.0])]).unwrap();
    let (u5, om5) = f_f0_m2_data();
    vec![
        ("phi1", Spec::type_i(u_phi1(), 1, 1).unwrap()),
        ("split", Spec::type_i(Symbol::from_real(2, 2, &[(0, &[0., 0., 0., 1.]), (1, &[1., 0., 0., 0.])]).unwrap(), 1, 1).unwrap()),
        ("f-f0 m1", Spec::type_i(u_f_f0_m1(), 1, 2).unwrap()),
        ("e column", Spec::type_i(Symbol::from_real(2, 1, &[(0, &[1.0, 0.0])]).unwrap(), 1, 1).unwrap()),
        (
            "3x2 isometry",
            Spec::type_i(Symbol::from_real(3, 2, &[(0, &[0., 0., 0., h, 0., h]), (1, &[1., 0., 0., 0., 0., 0.])]).unwrap(), 1, 2)
                .unwrap(),
        ),
        ("cyclic", Spec::type_ii(Some(z2), Symbol::identity(1), 1, 1).unwrap()),
        ("corner", Spec::type_ii(None, Symbol::identity(1), 1, 1).unwrap()),
        ("f-f0 m2", Spec::type_ii(Some(u5), om5, 2, 3).unwrap()),
    ]
}

fn round_trip() -> Outcome {
    let n = 16;
    let mut lines = Vec::new();
    let mut pass = true;
    for (name, spec) in spec_library() {
        let n3 = build_n3(&spec, n).map_err(err)?;
        let nsub = n_from_n3(&n3, n).map_err(err)?;
        let inv = invariance_check(&nsub).map_err(err)?;
        let ang = reverse_projection_angle(&n3, &nsub, n).map_err(err)?;
        pass &= inv <= 1e-10 && ang <= 1e-8;
        lines.push(format!("{name} {inv:.1e}/{ang:.1e}"));
    }
    ok_if(pass, format!("{} specs at n=16 (invariance/angle): {}", lines.len(), lines.join(", ")))
}

fn timotin() -> Outcome {
    let n = 16;
    let p = phi1();
    let oracle = isometry_defect(&p).max(isometry_defect(&p.adjoint()));
    let spec = Spec::type_i(u_phi1(), 1, 1).map_err(err)?;
    let nsub = n_from_n3(&build_n3(&spec, n).map_err(err)?, n).map_err(err)?;
    let psi = p.conj_arg();
    let ker = kernel_rep_subspace(&psi, None, 1, n, 1e-10).map_err(err)?;
    let ran = range_rep_subspace(&p, None, 1, n, 1e-10).map_err(err)?;
    let agree = nsub.distance(&ker).max(nsub.distance(&ran)).max(ker.distance(&ran));
    let h = c(0.5f64.sqrt());
    let a = Symbol::scalar(0, &[h]);
    let b = Symbol::scalar(1, &[h]);
    let cc = Symbol::scalar(1, &[h]);
    let d = Symbol::scalar(0, &[-h]);
    let split = splitting_check_scalar(&a, &b, &cc, &d, 1e-10).map_err(err)?;
    let v = svd_analysis(&v_phi(&p, 1, n).map_err(err)?, 1e-8);
    ok_if(
        oracle <= 1e-14 && agree <= 1e-8 && !split.splitting && v.is_partial_isometry,
        format!(
            "agreement {agree:.2e}, splitting {} (ratio {:.3}), V_Phi1 partial isometry {}, unitarity {oracle:.1e}",
            split.splitting, split.ratio, v.is_partial_isometry
        ),
    )
}

/// `{f ⊕ f ⊕ … ⊕ f(0) ⊕ …}` with `m` copies of `f` and `k` of `f(0)`, on degrees `0..=n`.
fn f_f0_family(m: usize, k: usize, n: usize) -> Subspace {
    let amb = SpaceSum::hardy_pair(m, k, n);
    let e_dim = m * (n + 1);
    let mut b = DMatrix::zeros(amb.dim(), n + 1);
    for d in 0..=n {
        for i in 0..m {
            b[(d * m + i, d)] = c(1.0);
        }
    }
    for j in 0..k {
        b[(e_dim + j, 0)] = c(1.0);
    }
    for mut col in b.column_iter_mut() {
        let nrm = col.norm();
        col /= c(nrm);
    }
    Subspace::from_orthonormal(amb, b, n as i64)
}

fn f_f0() -> Outcome {
    let n = 16;
    let fam = f_f0_family(1, 2, n);
    let (rep, _) = range_representation_check(&fam, &f_f0_phi(1, 2), None, 1, n, &RepOptions::default()).map_err(err)?;
    let range = rep.get("range_rep").map(|c| c.residual).unwrap_or(f64::NAN);

    let fam2 = f_f0_family(2, 3, n);
    let inv = invariance_check(&fam2).map_err(err)?;
    let (dim, pe, pf) = block_split_dims(&fam2, 1e-8);
    let (u, om) = f_f0_m2_data();
    let spec = Spec::type_ii(Some(u), om, 2, 3).map_err(err)?;
    let nsub = n_from_n3(&build_n3(&spec, n).map_err(err)?, n).map_err(err)?;
    let via_n3 = nsub.distance(&fam2);
    ok_if(
        range <= 1e-8 && inv <= 1e-10 && dim < pe + pf && via_n3 <= 1e-8,
        format!(
            "m=1,n=2 range distance {range:.2e}; m=2,n=3 invariance {inv:.1e}, \
             dim N {dim} < {pe} + {pf}, family vs N3 {via_n3:.1e}"
        ),
    )
}

fn nehari() -> Outcome {
    let zero = Symbol::zero(1, 1);
    let zbar = Symbol::scalar_real(-1, &[1.0]);
    let b1 = nehari_bounds(&zero, &zero, &zero, &zbar, &[4, 8, 16], &[(zero.clone(), zero.clone())], 256).map_err(err)?;
    let lo8 = b1.lower.iter().find(|p| p.0 == 8).map(|p| p.1).unwrap_or(f64::NAN);
    let first = (lo8 - 1.0).abs() <= 1e-10 && (b1.upper[0] - 1.0).abs() <= 1e-10;

    let d = Symbol::scalar_real(-1, &[2.0, 0.0, 1.0]);
    let l2 = Symbol::scalar_real(1, &[1.0]);
    let b2 = nehari_bounds(&zero, &zero, &zero, &d, &[4, 8, 16], &[(zero.clone(), l2)], 256).map_err(err)?;
    let lo = b2.lower.last().map(|p| p.1).unwrap_or(f64::NAN);
    let second = (lo - 2.0).abs() <= 1e-8 && (b2.upper[0] - 2.0).abs() <= 1e-8;
    ok_if(
        first && second,
        format!(
            "D = conj z: lower(8) {lo8:.12}, upper {:.12}; D = 2 conj z + z: lower {lo:.12}, upper {:.12}",
            b1.upper[0], b2.upper[0]
        ),
    )
}

fn cyclic() -> Outcome {
    let a = cyclic_a();
    let h = dense_hankel(&a, 16);
    let s = linalg::singular_values(&h);
    let rank = s.iter().filter(|&&x| x > 1e-8 * s[0]).count();
    let lib = hankel_op(&a, 16).map_err(err)?;
    let same = (&lib.entries - &h).norm();

    let n = 32;
    let z2 = Symbol::scalar_real(2, &[1.0]);
    let psi = Symbol::block2(&a, &Symbol::zero(1, 1), &Symbol::zero(1, 1), &z2).map_err(err)?;
    let amb = SpaceSum::hardy_pair(1, 1, n);
    let mut b = DMatrix::zeros(amb.dim(), 2);
    b[(amb.index(1, 0, 0).unwrap(), 0)] = c(1.0);
    b[(amb.index(1, 1, 0).unwrap(), 1)] = c(1.0);
    let nsub = Subspace::from_orthonormal(amb, b, n as i64);
    let opts = RepOptions { window_cap: Some(3), ..RepOptions::default() };
    let (rep, _) = kernel_representation_check(&nsub, &psi, None, None, 1, n, &opts).map_err(err)?;
    let k = rep.get("kernel_rep").map(|c| c.residual).unwrap_or(f64::NAN);
    ok_if(
        rank == 4 && same <= 1e-14 && k <= 1e-8,
        format!("Hankel rank {rank} at n=16 (sigma_5/sigma_1 = {:.1e}), kernel distance {k:.2e}", s[4] / s[0]),
    )
}

fn uniqueness() -> Outcome {
    let mut r = rng(9);
    let p = phi1();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let g = rand_unitary(&mut r, 2);
        let s1 = p.mul(&Symbol::constant(g.clone())).map_err(err)?;
        let w = constant_unitary_match(&s1, &p, 64, 1e-10).map_err(err)?;
        worst = worst.max((w - g).norm());
    }
    ok_if(worst <= 1e-10, format!("20 planted unitaries on Phi1, worst |W - G| {worst:.2e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("intertwining", intertwining),
        ("toeplitz_hankel_structure", structure),
        ("partial_isometries", partial_isometries),
        ("round_trip", round_trip),
        ("timotin_nonsplitting", timotin),
        ("f_f0_family", f_f0),
        ("nehari", nehari),
        ("cyclic_hankel", cyclic),
        ("constant_unitary_uniqueness", uniqueness),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {} {name}: PASS ({msg})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({msg})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
