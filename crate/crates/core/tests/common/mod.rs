#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dualshift::scalar::CMat;
use dualshift::Symbol;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_cx(r: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
}

pub fn rand_mat(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMat<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rand_cx(r))
}

/// Dense random symbol with coefficients in degrees `lo..=hi`.
pub fn rand_symbol(r: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i64, hi: i64) -> Symbol {
    let coeffs = (lo..=hi).map(|_| rand_mat(r, rows, cols)).collect();
    Symbol::from_dense(rows, cols, lo, coeffs)
}

/// Haar-ish unitary from the QR factor of a random matrix.
pub fn rand_unitary(r: &mut ChaCha8Rng, k: usize) -> CMat<f64> {
    rand_mat(r, k, k).qr().q()
}

/// Coefficient-wise product `Σ_k (Σ_j a_j b_{k−j}) z^k`, independent of `Symbol::mul`.
pub fn convolve(a: &Symbol, b: &Symbol) -> Vec<(i64, CMat<f64>)> {
    let mut out = Vec::new();
    for k in (a.kmin() + b.kmin())..=(a.kmax() + b.kmax()) {
        let mut c = DMatrix::zeros(a.rows(), b.cols());
        for j in a.kmin()..=a.kmax() {
            c += a.coeff(j) * b.coeff(k - j);
        }
        out.push((k, c));
    }
    out
}

/// `max_k ‖(S*S)_k − δ_{k0} I‖` computed by convolution.
pub fn isometry_defect(s: &Symbol) -> f64 {
    let id = DMatrix::<Complex64>::identity(s.cols(), s.cols());
    convolve(&s.adjoint(), s)
        .into_iter()
        .map(|(k, c)| if k == 0 { (c - &id).norm() } else { c.norm() })
        .fold(0.0, f64::max)
}

/// Block Hankel `(j, i) ↦ coeff(−(j+i+1))` on degrees `0..=n`, assembled directly.
pub fn dense_hankel(s: &Symbol, n: usize) -> CMat<f64> {
    let (r, c) = s.shape();
    let mut m = DMatrix::zeros(r * (n + 1), c * (n + 1));
    for j in 0..=n {
        for i in 0..=n {
            let blk = s.coeff(-((j + i + 1) as i64));
            m.view_mut((j * r, i * c), (r, c)).copy_from(&blk);
        }
    }
    m
}

pub fn diag_monomials(degs: &[i64]) -> Symbol {
    let k = degs.len();
    let mut out = Symbol::zero(k, k);
    for (i, &d) in degs.iter().enumerate() {
        let mut e = DMatrix::zeros(k, k);
        e[(i, i)] = Complex64::new(1.0, 0.0);
        out = out.add(&Symbol::monomial(d, e)).unwrap();
    }
    out
}
