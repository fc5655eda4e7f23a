//! Antilinear operators on `C^n`.
//!
//! An antilinear map is stored as a complex matrix `M` acting by `z ↦ M·conj(z)`.
//! In this convention:
//!
//! * the composite `A₁∘A₂` is the *linear* map with matrix `M₁·conj(M₂)`;
//! * the adjoint, defined by `⟨A*x, y⟩ = conj⟨x, Ay⟩`, has matrix `Mᵀ`;
//! * `A∘L` (with `L` linear) has matrix `M·conj(L)`, and `L∘A` has matrix `L·M`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, conj, CMat, CVec, RMat};
use crate::tolerances::MODEL_GAP;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AntilinearMap {
    #[serde(with = "crate::json::cmat")]
    m: CMat,
}

impl AntilinearMap {
    pub fn new(m: CMat) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch { expected: m.nrows(), got: m.ncols() });
        }
        Ok(Self { m })
    }

    /// Entrywise complex conjugation on `C^n`.
    pub fn standard_conjugation(n: usize) -> Self {
        Self { m: linalg::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn apply(&self, v: &CVec) -> Result<CVec> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(&self.m * v.map(|z| z.conj()))
    }

    /// Applies the map to every column of `b`.
    pub fn apply_columns(&self, b: &CMat) -> CMat {
        &self.m * conj(b)
    }

    pub fn adjoint(&self) -> Self {
        Self { m: self.m.transpose() }
    }

    /// The linear operator `self ∘ other`.
    pub fn compose(&self, other: &AntilinearMap) -> CMat {
        &self.m * conj(&other.m)
    }

    /// The antilinear operator `self ∘ l`.
    pub fn after_linear(&self, l: &CMat) -> AntilinearMap {
        AntilinearMap { m: &self.m * conj(l) }
    }

    /// The antilinear operator `l ∘ self`.
    pub fn before_linear(&self, l: &CMat) -> AntilinearMap {
        AntilinearMap { m: l * &self.m }
    }

    /// `A∘L∘A⁻¹` for a linear `L`.
    pub fn conjugate_linear(&self, l: &CMat) -> Result<CMat> {
        let inv = linalg::invert(&self.m)?;
        Ok(&self.m * conj(l) * inv)
    }

    /// Residual of `A² = id`, i.e. `‖M·conj(M) − I‖`.
    pub fn involution_residual(&self) -> f64 {
        (self.compose(self) - linalg::identity(self.dim())).norm()
    }

    /// Real `2n×2n` matrix of the map on `R^{2n} ≅ C^n`.
    pub fn real_rep(&self) -> RMat {
        linalg::antilinear_real_rep(&self.m)
    }
}

/// Antiunitary involution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Conjugation {
    map: AntilinearMap,
}

impl Conjugation {
    /// Accepts `M` with `M` unitary and `M·conj(M) = I` up to `1e-8` (relative to `n`).
    pub fn new(m: CMat) -> Result<Self> {
        let map = AntilinearMap::new(m)?;
        let n = map.dim() as f64;
        let residual = (map.involution_residual() + linalg::unitary_residual(&map.m)) / n.sqrt();
        if residual > MODEL_GAP {
            return Err(Error::NotConjugation { residual });
        }
        Ok(Self { map })
    }

    pub fn standard(n: usize) -> Self {
        Self { map: AntilinearMap::standard_conjugation(n) }
    }

    /// `z ↦ (z_n, …, z_1)` conjugated entrywise.
    pub fn flip(n: usize) -> Self {
        let m = CMat::from_fn(n, n, |i, j| if i + j + 1 == n { linalg::c64(1.0, 0.0) } else { linalg::c64(0.0, 0.0) });
        Self { map: AntilinearMap { m } }
    }

    pub fn as_map(&self) -> &AntilinearMap {
        &self.map
    }

    pub fn matrix(&self) -> &CMat {
        &self.map.m
    }

    pub fn dim(&self) -> usize {
        self.map.dim()
    }

    /// `J∘L∘J` for a linear `L`; uses `J⁻¹ = J`.
    pub fn conjugate_linear(&self, l: &CMat) -> CMat {
        &self.map.m * conj(l) * conj(&self.map.m)
    }

    /// `J∘A∘J` for an antilinear `A`, returned as an antilinear map.
    pub fn conjugate_antilinear(&self, a: &AntilinearMap) -> AntilinearMap {
        AntilinearMap { m: &self.map.m * conj(&a.m) * &self.map.m }
    }

    /// Orthonormal basis of the real form `Fix(J)`, as complex columns. The columns are
    /// orthonormal for the complex inner product as well.
    pub fn fixed_frame(&self) -> CMat {
        let n = self.dim();
        let r = self.map.real_rep();
        let k = (RMat::identity(2 * n, 2 * n) + r) * 0.5;
        linalg::complexify_columns(&linalg::range_basis(&k, n))
    }
}

/// Unitary or antiunitary operator: `z ↦ M z` or `z ↦ M conj(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AuOperator {
    pub m: CMat,
    pub odd: bool,
}

impl AuOperator {
    pub fn unitary(m: CMat) -> Self {
        Self { m, odd: false }
    }

    pub fn antiunitary(m: CMat) -> Self {
        Self { m, odd: true }
    }

    pub fn identity(n: usize) -> Self {
        Self::unitary(linalg::identity(n))
    }

    pub fn from_conjugation(j: &Conjugation) -> Self {
        Self::antiunitary(j.matrix().clone())
    }

    /// Grading `ε = ±1`.
    pub fn grading(&self) -> i8 {
        if self.odd {
            -1
        } else {
            1
        }
    }

    pub fn compose(&self, other: &AuOperator) -> AuOperator {
        let rhs = if self.odd { conj(&other.m) } else { other.m.clone() };
        AuOperator { m: &self.m * rhs, odd: self.odd ^ other.odd }
    }

    /// Inverse assuming `M` unitary.
    pub fn inverse(&self) -> AuOperator {
        if self.odd {
            AuOperator::antiunitary(self.m.transpose())
        } else {
            AuOperator::unitary(self.m.adjoint())
        }
    }

    pub fn apply_columns(&self, b: &CMat) -> CMat {
        if self.odd {
            &self.m * conj(b)
        } else {
            &self.m * b
        }
    }

    /// `g L g⁻¹` for a linear operator `L`.
    pub fn conjugate_linear(&self, l: &CMat) -> CMat {
        let inv = self.inverse();
        if self.odd {
            &self.m * conj(l) * conj(&inv.m)
        } else {
            &self.m * l * &inv.m
        }
    }

    /// `g A g⁻¹` for an antilinear map `A`.
    pub fn conjugate_antilinear(&self, a: &AntilinearMap) -> AntilinearMap {
        let g = self.compose(&AuOperator::antiunitary(a.m.clone())).compose(&self.inverse());
        AntilinearMap { m: g.m }
    }

    /// Distance between operators of the same parity; `∞` if parities differ.
    pub fn distance(&self, other: &AuOperator) -> f64 {
        if self.odd != other.odd {
            return f64::INFINITY;
        }
        linalg::rel_dist(&self.m, &other.m)
    }
}

/// Pair `(Δ, J)` with `Δ` positive definite and `JΔJ = Δ⁻¹`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularPair {
    #[serde(rename = "Delta", with = "crate::json::cmat")]
    delta: CMat,
    #[serde(rename = "J")]
    j: Conjugation,
}

impl ModularPair {
    pub fn new(delta: CMat, j: Conjugation) -> Result<Self> {
        if delta.nrows() != j.dim() {
            return Err(Error::DimensionMismatch { expected: j.dim(), got: delta.nrows() });
        }
        let delta = linalg::hermitian_part(&delta);
        let residual = modular_residual(&delta, &j)?;
        if residual > MODEL_GAP {
            return Err(Error::ModularRelationViolated { residual });
        }
        Ok(Self { delta, j })
    }

    pub fn dim(&self) -> usize {
        self.j.dim()
    }

    pub fn delta(&self) -> &CMat {
        &self.delta
    }

    pub fn j(&self) -> &Conjugation {
        &self.j
    }

    /// `Δ^{it}`.
    pub fn delta_it(&self, t: f64) -> CMat {
        linalg::positive_imag_power(&self.delta, t).expect("spectrum checked on construction")
    }

    pub fn delta_power(&self, p: f64) -> CMat {
        linalg::positive_power(&self.delta, p).expect("spectrum checked on construction")
    }

    /// The pair `(Δ⁻¹, J)` of the symplectic complement.
    pub fn inverted(&self) -> ModularPair {
        ModularPair { delta: linalg::hermitian_part(&self.delta_power(-1.0)), j: self.j.clone() }
    }

    pub fn distance(&self, other: &ModularPair) -> f64 {
        linalg::rel_dist(&self.delta, &other.delta).max(linalg::rel_dist(self.j.matrix(), other.j.matrix()))
    }
}

/// Relative residual of `JΔJ = Δ⁻¹`.
pub fn modular_residual(delta: &CMat, j: &Conjugation) -> Result<f64> {
    let inv = linalg::positive_power(delta, -1.0)?;
    Ok(linalg::rel_dist(&j.conjugate_linear(delta), &inv))
}

/// Polar parts of an invertible antilinear operator `S = J Δ^{1/2}`.
#[derive(Clone, Debug)]
pub struct PolarDecomposition {
    pub delta: CMat,
    pub delta_sqrt: CMat,
    /// `S∘Δ^{-1/2}`; a conjugation whenever `S² = id`.
    pub j: AntilinearMap,
    pub involutive: bool,
    pub involution_residual: f64,
    pub reconstruction_residual: f64,
}

impl PolarDecomposition {
    /// The modular pair, available when `S` is involutive.
    pub fn modular_pair(&self) -> Result<ModularPair> {
        let j = Conjugation::new(self.j.matrix().clone())?;
        ModularPair::new(self.delta.clone(), j)
    }
}

pub fn polar_decompose(s: &AntilinearMap) -> Result<PolarDecomposition> {
    let sv = s.matrix().clone().svd(false, false).singular_values;
    if sv.min() <= 1e-14 * sv.max().max(1.0) {
        return Err(Error::SingularOperator);
    }
    let delta = linalg::hermitian_part(&s.adjoint().compose(s));
    let delta_sqrt = linalg::positive_power(&delta, 0.5)?;
    let delta_msqrt = linalg::positive_power(&delta, -0.5)?;
    let j = s.after_linear(&delta_msqrt);
    let reconstruction_residual = (j.after_linear(&delta_sqrt).matrix() - s.matrix()).norm();
    let involution_residual = s.involution_residual() / (s.dim() as f64).sqrt();
    Ok(PolarDecomposition {
        delta,
        delta_sqrt,
        j,
        involutive: involution_residual <= MODEL_GAP,
        involution_residual,
        reconstruction_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, I};

    fn worked() -> AntilinearMap {
        AntilinearMap::new(CMat::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(0.0, 2.0), c64(0.0, 0.0), c64(1.0, 0.0)])).unwrap()
    }

    #[test]
    fn apply_follows_convention() {
        let a = worked();
        let e2 = CVec::from_vec(vec![c64(0.0, 0.0), c64(1.0, 0.0)]);
        let out = a.apply(&e2).unwrap();
        assert_eq!(out, CVec::from_vec(vec![c64(0.0, 2.0), c64(1.0, 0.0)]));
        let v = CVec::from_vec(vec![c64(0.3, -1.0), c64(2.0, 0.5)]);
        let lhs = a.apply(&(v.clone() * I)).unwrap();
        let rhs = a.apply(&v).unwrap() * (-I);
        assert!((lhs - rhs).norm() < 1e-15);
        assert!(a.apply(&CVec::zeros(3)).is_err());
    }

    #[test]
    fn adjoint_relation() {
        let a = worked();
        let x = CVec::from_vec(vec![c64(0.2, 0.7), c64(-1.0, 0.1)]);
        let y = CVec::from_vec(vec![c64(1.5, -0.4), c64(0.3, 0.9)]);
        let lhs = a.adjoint().apply(&x).unwrap().dotc(&y);
        let rhs = x.dotc(&a.apply(&y).unwrap()).conj();
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn delta_of_worked_example() {
        let p = polar_decompose(&worked()).unwrap();
        let expected = CMat::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(0.0, -2.0), c64(0.0, 2.0), c64(5.0, 0.0)]);
        assert!((&p.delta - expected).norm() < 1e-14);
        assert!(p.involutive);
        assert!(p.reconstruction_residual < 1e-13);
        let pair = p.modular_pair().unwrap();
        assert!(modular_residual(pair.delta(), pair.j()).unwrap() < 1e-12);
    }

    #[test]
    fn phase_in_dimension_one() {
        let theta: f64 = 0.4;
        let s = AntilinearMap::new(CMat::from_element(1, 1, (I * 2.0 * theta).exp())).unwrap();
        let p = polar_decompose(&s).unwrap();
        assert!((p.delta[(0, 0)] - c64(1.0, 0.0)).norm() < 1e-15);
        assert!((p.j.matrix()[(0, 0)] - (I * 2.0 * theta).exp()).norm() < 1e-15);
    }

    #[test]
    fn singular_rejected() {
        let s = AntilinearMap::new(CMat::zeros(2, 2)).unwrap();
        assert!(matches!(polar_decompose(&s), Err(Error::SingularOperator)));
    }

    #[test]
    fn non_involutive_flagged() {
        let s = AntilinearMap::new(CMat::from_diagonal_element(2, 2, c64(2.0, 0.0))).unwrap();
        let p = polar_decompose(&s).unwrap();
        assert!(!p.involutive);
    }

    #[test]
    fn au_operator_algebra() {
        let j = Conjugation::flip(2);
        let g = AuOperator::from_conjugation(&j);
        let id = g.compose(&g);
        assert!(!id.odd);
        assert!((id.m - linalg::identity(2)).norm() < 1e-15);
        assert!(g.compose(&g.inverse()).distance(&AuOperator::identity(2)) < 1e-15);
    }
}
