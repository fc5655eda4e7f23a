//! Dense linear algebra helpers on top of `nalgebra`.
//!
//! Complex matrices act on `C^n`; real subspaces of `C^n` are handled through the
//! realification `z = x + i y ↦ (x, y) ∈ R^{2n}`, under which `Re⟨z, w⟩` becomes the
//! Euclidean inner product.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tolerances::SPECTRAL_CLAMP;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type RMat = DMatrix<f64>;
pub type CVec = DVector<C64>;
pub type RVec = DVector<f64>;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub const I: C64 = Complex { re: 0.0, im: 1.0 };

pub fn conj(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

pub fn complexify(m: &RMat) -> CMat {
    m.map(|x| c64(x, 0.0))
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Frobenius distance scaled by the larger operand, floored at 1.
pub fn rel_dist(a: &CMat, b: &CMat) -> f64 {
    let scale = a.norm().max(b.norm()).max(1.0);
    (a - b).norm() / scale
}

pub fn rel_dist_real(a: &RMat, b: &RMat) -> f64 {
    let scale = a.norm().max(b.norm()).max(1.0);
    (a - b).norm() / scale
}

pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()) * c64(0.5, 0.0)
}

pub fn hermitian_residual(m: &CMat) -> f64 {
    (m - m.adjoint()).norm() / m.norm().max(1.0)
}

pub fn unitary_residual(m: &CMat) -> f64 {
    (m.adjoint() * m - identity(m.nrows())).norm()
}

/// Eigen-decomposition of a (numerically) hermitian matrix: `(eigenvalues, eigenvectors)`.
pub fn hermitian_eigen(h: &CMat) -> (RVec, CMat) {
    let e = hermitian_part(h).symmetric_eigen();
    (e.eigenvalues, e.eigenvectors)
}

/// `f(H)` for hermitian `H` by the spectral theorem.
pub fn hermitian_function(h: &CMat, f: impl Fn(f64) -> C64) -> CMat {
    let (vals, vecs) = hermitian_eigen(h);
    let d = CMat::from_diagonal(&vals.map(&f));
    &vecs * d * vecs.adjoint()
}

/// Eigenvalues of a positive operator, failing if any falls below the clamp.
fn positive_spectrum(delta: &CMat) -> Result<(RVec, CMat)> {
    let (vals, vecs) = hermitian_eigen(delta);
    let min = vals.min();
    if min < SPECTRAL_CLAMP {
        return Err(Error::NonPositiveSpectrum { min });
    }
    Ok((vals, vecs))
}

fn spectral_apply(vals: &RVec, vecs: &CMat, f: impl Fn(f64) -> C64) -> CMat {
    let d = CMat::from_diagonal(&vals.map(f));
    vecs * d * vecs.adjoint()
}

/// `Δ^p` for positive definite `Δ`.
pub fn positive_power(delta: &CMat, p: f64) -> Result<CMat> {
    let (vals, vecs) = positive_spectrum(delta)?;
    Ok(spectral_apply(&vals, &vecs, |x| c64(x.powf(p), 0.0)))
}

/// `Δ^{it}` for positive definite `Δ`.
pub fn positive_imag_power(delta: &CMat, t: f64) -> Result<CMat> {
    let (vals, vecs) = positive_spectrum(delta)?;
    Ok(spectral_apply(&vals, &vecs, |x| (I * (t * x.ln())).exp()))
}

pub fn positive_log(delta: &CMat) -> Result<CMat> {
    let (vals, vecs) = positive_spectrum(delta)?;
    Ok(spectral_apply(&vals, &vecs, |x| c64(x.ln(), 0.0)))
}

/// `exp(i t H)` for hermitian `H`.
pub fn unitary_group(h: &CMat, t: f64) -> CMat {
    hermitian_function(h, |x| (I * (t * x)).exp())
}

/// Principal logarithm of a unitary matrix. Eigenvalue arguments are taken in `(-π, π]`.
pub fn unitary_log(u: &CMat) -> CMat {
    let (q, t) = nalgebra::linalg::Schur::new(u.clone()).unpack();
    let n = u.nrows();
    let mut d = CMat::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut arg = lambda.arg();
        if arg <= -std::f64::consts::PI {
            arg += 2.0 * std::f64::consts::PI;
        }
        d[(k, k)] = c64(lambda.norm().ln(), arg);
    }
    // Schur form of a normal matrix is diagonal; the off-diagonal part is rounding.
    let log = &q * d * q.adjoint();
    (&log - log.adjoint()) * c64(0.5, 0.0)
}

/// Realification of complex column vectors: an `n×k` complex matrix becomes `2n×k` real.
pub fn realify_columns(m: &CMat) -> RMat {
    let (n, k) = m.shape();
    RMat::from_fn(2 * n, k, |r, c| if r < n { m[(r, c)].re } else { m[(r - n, c)].im })
}

pub fn complexify_columns(r: &RMat) -> CMat {
    let n = r.nrows() / 2;
    CMat::from_fn(n, r.ncols(), |i, c| c64(r[(i, c)], r[(i + n, c)]))
}

/// Real `2n×2n` matrix of the R-linear map `z ↦ M z`.
pub fn linear_real_rep(m: &CMat) -> RMat {
    let n = m.nrows();
    RMat::from_fn(2 * n, 2 * n, |r, c| {
        let (i, j) = (r % n, c % n);
        let z = m[(i, j)];
        match (r < n, c < n) {
            (true, true) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
            (false, false) => z.re,
        }
    })
}

/// Real `2n×2n` matrix of the R-linear map `z ↦ M conj(z)`.
pub fn antilinear_real_rep(m: &CMat) -> RMat {
    let n = m.nrows();
    RMat::from_fn(2 * n, 2 * n, |r, c| {
        let (i, j) = (r % n, c % n);
        let z = m[(i, j)];
        match (r < n, c < n) {
            (true, true) => z.re,
            (true, false) => z.im,
            (false, true) => z.im,
            (false, false) => -z.re,
        }
    })
}

/// Modified Gram–Schmidt with one re-orthogonalisation pass. Columns whose residual
/// falls below `drop_tol` (relative to their original norm) are discarded.
pub fn orthonormalize(cols: &RMat, drop_tol: f64) -> RMat {
    let mut out: Vec<RVec> = Vec::with_capacity(cols.ncols());
    for c in cols.column_iter() {
        let orig = c.norm();
        if orig == 0.0 {
            continue;
        }
        let mut v: RVec = c.into_owned();
        for _ in 0..2 {
            for q in &out {
                let p = q.dot(&v);
                v.axpy(-p, q, 1.0);
            }
        }
        let nv = v.norm();
        if nv > drop_tol * orig {
            out.push(v / nv);
        }
    }
    if out.is_empty() {
        return RMat::zeros(cols.nrows(), 0);
    }
    RMat::from_columns(&out)
}

/// Orthonormal basis of the range of `k`, assumed to have rank `rank`, from the
/// symmetric eigenproblem of `K Kᵀ`.
pub fn range_basis(k: &RMat, rank: usize) -> RMat {
    let kk = k * k.transpose();
    let kk = (&kk + kk.transpose()) * 0.5;
    let e = kk.symmetric_eigen();
    let mut idx: Vec<usize> = (0..e.eigenvalues.len()).collect();
    idx.sort_by(|&a, &b| e.eigenvalues[b].total_cmp(&e.eigenvalues[a]));
    let cols: Vec<RVec> = idx[..rank].iter().map(|&i| e.eigenvectors.column(i).into_owned()).collect();
    RMat::from_columns(&cols)
}

/// Orthonormal basis of the orthogonal complement of the span of orthonormal `q`.
pub fn orthogonal_complement(q: &RMat) -> RMat {
    let m = q.nrows();
    let p = RMat::identity(m, m) - q * q.transpose();
    range_basis(&p, m - q.ncols())
}

/// Operator 2-norm of a real symmetric matrix.
pub fn symmetric_opnorm(m: &RMat) -> f64 {
    let s = (m + m.transpose()) * 0.5;
    s.symmetric_eigen().eigenvalues.amax()
}

/// Spectral norm of a general complex matrix.
pub fn opnorm(m: &CMat) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

/// Kronecker product.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    CMat::from_fn(ar * br, ac * bc, |r, c| a[(r / br, c / bc)] * b[(r % br, c % bc)])
}

pub fn invert(m: &CMat) -> Result<CMat> {
    m.clone().try_inverse().ok_or(Error::SingularOperator)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_reps_match_complex_action() {
        let m = CMat::from_row_slice(2, 2, &[c64(1.0, 2.0), c64(0.5, -1.0), c64(-0.3, 0.0), c64(0.0, 1.5)]);
        let z = CMat::from_column_slice(2, 1, &[c64(0.7, -0.2), c64(-1.1, 0.4)]);
        let lin = realify_columns(&(&m * &z));
        assert!((linear_real_rep(&m) * realify_columns(&z) - lin).norm() < 1e-14);
        let anti = realify_columns(&(&m * conj(&z)));
        assert!((antilinear_real_rep(&m) * realify_columns(&z) - anti).norm() < 1e-14);
    }

    #[test]
    fn unitary_log_inverts_exp() {
        let h = CMat::from_row_slice(2, 2, &[c64(0.3, 0.0), c64(0.1, 0.4), c64(0.1, -0.4), c64(-0.8, 0.0)]);
        let u = unitary_group(&h, 1.0);
        let log = unitary_log(&u);
        assert!((log - &h * I).norm() < 1e-12);
    }

    #[test]
    fn clamp_rejects_singular_delta() {
        let d = CMat::from_diagonal(&CVec::from_vec(vec![c64(1.0, 0.0), c64(0.0, 0.0)]));
        assert!(matches!(positive_power(&d, 0.5), Err(Error::NonPositiveSpectrum { .. })));
    }

    #[test]
    fn complement_is_orthogonal() {
        let q = orthonormalize(&RMat::from_row_slice(3, 1, &[1.0, 1.0, 0.0]), 1e-12);
        let c = orthogonal_complement(&q);
        assert_eq!(c.ncols(), 2);
        assert!((q.transpose() * &c).norm() < 1e-14);
    }
}
