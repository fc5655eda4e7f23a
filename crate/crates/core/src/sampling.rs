//! Seeded random data. Matrix entries stay in `[-2, 2]` and samples with poor
//! conditioning are rejected.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::antilinear::Conjugation;
use crate::linalg::{c64, realify_columns, CMat, RMat};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream for a named sub-experiment.
pub fn substream(seed: u64, label: &str) -> SeededRng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    rng(seed ^ h)
}

pub fn uniform_real(rng: &mut SeededRng, rows: usize, cols: usize, bound: f64) -> RMat {
    RMat::from_fn(rows, cols, |_, _| rng.gen_range(-bound..bound))
}

pub fn uniform_complex(rng: &mut SeededRng, rows: usize, cols: usize, bound: f64) -> CMat {
    CMat::from_fn(rows, cols, |_, _| c64(rng.gen_range(-bound..bound), rng.gen_range(-bound..bound)))
}

/// Standard normal by Box–Muller.
pub fn normal(rng: &mut SeededRng) -> f64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn condition_real(m: &RMat) -> f64 {
    let s = m.clone().svd(false, false).singular_values;
    s.max() / s.min()
}

fn condition_complex(m: &CMat) -> f64 {
    let s = m.clone().svd(false, false).singular_values;
    s.max() / s.min()
}

/// Real `n×n` matrix with entries in `[-2, 2]` and condition number at most `max_cond`.
pub fn well_conditioned_real(rng: &mut SeededRng, n: usize, max_cond: f64) -> RMat {
    loop {
        let m = uniform_real(rng, n, n, 2.0);
        if condition_real(&m) <= max_cond {
            return m;
        }
    }
}

pub fn well_conditioned_complex(rng: &mut SeededRng, n: usize, max_cond: f64) -> CMat {
    loop {
        let m = uniform_complex(rng, n, n, 1.4);
        if condition_complex(&m) <= max_cond {
            return m;
        }
    }
}

/// Unitary matrix from the QR factorisation of a random complex matrix.
pub fn unitary(rng: &mut SeededRng, n: usize) -> CMat {
    let m = well_conditioned_complex(rng, n, 50.0);
    let qr = m.qr();
    let (q, r) = (qr.q(), qr.r());
    // fix the phase ambiguity so that the result depends continuously on the sample
    let phases = CMat::from_diagonal(&r.diagonal().map(|z| if z.norm() > 0.0 { z / z.norm() } else { c64(1.0, 0.0) }));
    q * phases
}

pub fn orthogonal(rng: &mut SeededRng, n: usize) -> RMat {
    let m = well_conditioned_real(rng, n, 50.0);
    let qr = m.qr();
    let (q, r) = (qr.q(), qr.r());
    let signs = RMat::from_diagonal(&r.diagonal().map(|x| if x < 0.0 { -1.0 } else { 1.0 }));
    q * signs
}

pub fn hermitian(rng: &mut SeededRng, n: usize, bound: f64) -> CMat {
    let m = uniform_complex(rng, n, n, bound);
    (&m + m.adjoint()) * c64(0.5, 0.0)
}

pub fn skew_symmetric(rng: &mut SeededRng, n: usize, bound: f64) -> RMat {
    let m = uniform_real(rng, n, n, bound);
    (&m - m.transpose()) * 0.5
}

/// Random conjugation `z ↦ U Uᵀ conj(z)`, whose fixed space is `U R^n`.
pub fn conjugation(rng: &mut SeededRng, n: usize) -> Conjugation {
    let u = unitary(rng, n);
    Conjugation::new(&u * u.transpose()).expect("U Uᵀ is a conjugation matrix")
}

/// Complex basis whose real span is standard, with a bound on the conditioning of
/// its realification.
pub fn standard_basis(rng: &mut SeededRng, n: usize, max_cond: f64) -> CMat {
    loop {
        let b = uniform_complex(rng, n, n, 1.0);
        let mut cols = realify_columns(&b);
        let ib = b.map(|z| z * c64(0.0, 1.0));
        cols = cols.insert_columns(n, n, 0.0);
        cols.view_mut((0, n), (2 * n, n)).copy_from(&realify_columns(&ib));
        if condition_real(&cols) <= max_cond {
            return b;
        }
    }
}

pub fn log_uniform(rng: &mut SeededRng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

pub fn sign(rng: &mut SeededRng) -> f64 {
    if rng.gen::<bool>() {
        1.0
    } else {
        -1.0
    }
}
