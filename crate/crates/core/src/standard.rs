//! Standard subspaces of `C^n` and the passage between the three models:
//! subspaces `V`, modular pairs `(Δ, J)` and graded homomorphisms `R^× → AU(C^n)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::antilinear::{polar_decompose, AntilinearMap, AuOperator, Conjugation, ModularPair};
use crate::error::{Error, Result};
use crate::linalg::{self, c64, conj, CMat, RMat, I};
use crate::tolerances::{MODEL_GAP, STANDARDNESS};

/// A real subspace `V ⊆ C^n` of real dimension `n` with `V ∩ iV = {0}`.
///
/// The basis is stored orthonormalised for `Re⟨·,·⟩`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StandardSubspace {
    n: usize,
    #[serde(rename = "B", with = "crate::json::cmat")]
    basis: CMat,
}

/// Hadamard-normalised `|det|` of the real matrix of `(x, y) ↦ Bx + iBy`.
pub fn standardness_measure(b: &CMat) -> f64 {
    let (n, k) = b.shape();
    if k != n || n == 0 {
        return 0.0;
    }
    let ib = b * I;
    let mut m = RMat::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (2 * n, n)).copy_from(&linalg::realify_columns(b));
    m.view_mut((0, n), (2 * n, n)).copy_from(&linalg::realify_columns(&ib));
    let mut scale = 1.0;
    for c in m.column_iter() {
        let nc = c.norm();
        if nc == 0.0 {
            return 0.0;
        }
        scale *= nc;
    }
    (m.determinant() / scale).abs()
}

pub fn is_standard(b: &CMat) -> bool {
    standardness_measure(b) > STANDARDNESS
}

impl StandardSubspace {
    pub fn new(b: &CMat) -> Result<Self> {
        if !is_standard(b) {
            return Err(Error::NotStandard);
        }
        let q = linalg::orthonormalize(&linalg::realify_columns(b), 1e-12);
        Ok(Self { n: b.nrows(), basis: linalg::complexify_columns(&q) })
    }

    fn from_real_basis(q: &RMat) -> Result<Self> {
        Self::new(&linalg::complexify_columns(q))
    }

    /// `R^n ⊆ C^n`.
    pub fn real_form(n: usize) -> Self {
        Self { n, basis: linalg::identity(n) }
    }

    /// `Fix(J)`.
    pub fn fixed_space(j: &Conjugation) -> Self {
        Self { n: j.dim(), basis: j.fixed_frame() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &CMat {
        &self.basis
    }

    /// Orthonormal real basis in `R^{2n}`.
    pub fn real_basis(&self) -> RMat {
        linalg::realify_columns(&self.basis)
    }

    /// Orthogonal projection onto `V` in `R^{2n}`.
    pub fn projector(&self) -> RMat {
        let q = self.real_basis();
        &q * q.transpose()
    }

    /// Euclidean distance from `v` (given as a complex vector) to `V`.
    pub fn distance_to(&self, v: &CMat) -> f64 {
        let x = linalg::realify_columns(v);
        (&x - self.projector() * &x).norm()
    }

    /// Image under a unitary or antiunitary operator.
    pub fn transform(&self, g: &AuOperator) -> Result<Self> {
        Self::new(&g.apply_columns(&self.basis))
    }

    /// Image under an invertible linear map.
    pub fn transform_linear(&self, g: &CMat) -> Result<Self> {
        Self::new(&(g * &self.basis))
    }

    /// Image under an invertible antilinear map.
    pub fn transform_antilinear(&self, a: &AntilinearMap) -> Result<Self> {
        Self::new(&a.apply_columns(&self.basis))
    }

    /// Matrix of the Tomita operator `S(v + iw) = v − iw`, acting by `z ↦ A_S conj(z)`.
    pub fn tomita(&self) -> AntilinearMap {
        let inv = linalg::invert(&conj(&self.basis)).expect("standard basis is invertible");
        AntilinearMap::new(&self.basis * inv).expect("square")
    }
}

pub fn modular_objects(v: &StandardSubspace) -> Result<ModularPair> {
    polar_decompose(&v.tomita())?.modular_pair()
}

/// Real fixed space of an involutive antilinear map, via the range of `(I + R)/2` where
/// `R` is the real `2n×2n` representation.
pub fn antilinear_fixed_space(s: &AntilinearMap) -> Result<StandardSubspace> {
    let n = s.dim();
    let k = (RMat::identity(2 * n, 2 * n) + s.real_rep()) * 0.5;
    StandardSubspace::from_real_basis(&linalg::range_basis(&k, n))
}

/// `Φ(Δ, J) = Fix(J Δ^{1/2})`.
pub fn standard_from_modular(p: &ModularPair) -> Result<StandardSubspace> {
    let s = p.j().as_map().after_linear(&p.delta_power(0.5));
    antilinear_fixed_space(&s)
}

/// Graded homomorphism `γ(e^t) = exp(tA)`, `γ(−1) = J`, with `A` skew-hermitian and
/// `JAJ = A`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GradedHom {
    #[serde(rename = "A", with = "crate::json::cmat")]
    a: CMat,
    #[serde(rename = "J")]
    j: Conjugation,
}

impl GradedHom {
    pub fn new(a: CMat, j: Conjugation) -> Result<Self> {
        let skew = (&a + a.adjoint()).norm() / a.norm().max(1.0);
        if skew > MODEL_GAP {
            return Err(Error::NotSkew { residual: skew });
        }
        let a = (&a - a.adjoint()) * c64(0.5, 0.0);
        let residual = linalg::rel_dist(&j.conjugate_linear(&a), &a);
        if residual > MODEL_GAP {
            return Err(Error::ModularRelationViolated { residual });
        }
        Ok(Self { a, j })
    }

    pub fn generator(&self) -> &CMat {
        &self.a
    }

    pub fn j(&self) -> &Conjugation {
        &self.j
    }

    /// `γ(r)` as a unitary (`r > 0`) or antiunitary (`r < 0`) operator.
    pub fn eval(&self, r: f64) -> AuOperator {
        assert!(r != 0.0, "graded homomorphisms are defined on R^×");
        // exp(tA) = exp(i·(−t)·K) with K = iA hermitian
        let k = &self.a * I;
        let u = AuOperator::unitary(linalg::unitary_group(&k, -r.abs().ln()));
        if r < 0.0 {
            u.compose(&AuOperator::from_conjugation(&self.j))
        } else {
            u
        }
    }

    pub fn distance(&self, other: &GradedHom) -> f64 {
        linalg::rel_dist(&self.a, &other.a).max(linalg::rel_dist(self.j.matrix(), other.j.matrix()))
    }
}

/// `Ψ(Δ, J)`: `A = −(i/2π) log Δ`, so that `exp(tA) = Δ^{−it/2π}`.
pub fn graded_hom_of(p: &ModularPair) -> Result<GradedHom> {
    let log = linalg::positive_log(p.delta())?;
    GradedHom::new(log * c64(0.0, -1.0 / (2.0 * PI)), p.j().clone())
}

/// Inverse of [`graded_hom_of`]: `Δ = exp(2πi A)`.
pub fn modular_of(g: &GradedHom) -> Result<ModularPair> {
    let k = g.generator() * I;
    let delta = linalg::hermitian_function(&k, |x| c64((2.0 * PI * x).exp(), 0.0));
    ModularPair::new(delta, g.j().clone())
}

/// `V′ = i·V^{⊥_R}`.
pub fn symplectic_complement(v: &StandardSubspace) -> Result<StandardSubspace> {
    let perp = linalg::complexify_columns(&linalg::orthogonal_complement(&v.real_basis()));
    StandardSubspace::new(&(perp * I))
}

/// Operator norm of the difference of the real orthogonal projections.
pub fn subspace_gap(v1: &StandardSubspace, v2: &StandardSubspace) -> f64 {
    linalg::symmetric_opnorm(&(v1.projector() - v2.projector()))
}

/// `V = V′`, decided through `Δ_V = I`.
pub fn is_lagrangian(v: &StandardSubspace) -> Result<bool> {
    let p = modular_objects(v)?;
    Ok((p.delta() - linalg::identity(v.dim())).norm() <= MODEL_GAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_basis() -> CMat {
        CMat::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(0.0, 1.0), c64(0.0, 0.0), c64(1.0, 0.0)])
    }

    #[test]
    fn standardness_examples() {
        assert!(is_standard(&linalg::identity(3)));
        assert!(!is_standard(&CMat::from_row_slice(1, 2, &[c64(1.0, 0.0), c64(0.0, 1.0)])));
        assert!(is_standard(&worked_basis()));
        assert!(!is_standard(&CMat::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(0.0, 1.0), c64(0.0, 0.0), c64(0.0, 0.0)])));
    }

    #[test]
    fn real_form_has_trivial_modular_objects() {
        let p = modular_objects(&StandardSubspace::real_form(3)).unwrap();
        assert!((p.delta() - linalg::identity(3)).norm() < 1e-14);
        assert!((p.j().matrix() - linalg::identity(3)).norm() < 1e-14);
    }

    #[test]
    fn tomita_of_worked_example() {
        let v = StandardSubspace::new(&worked_basis()).unwrap();
        let expected = CMat::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(0.0, 2.0), c64(0.0, 0.0), c64(1.0, 0.0)]);
        assert!((v.tomita().matrix() - expected).norm() < 1e-13);
    }

    #[test]
    fn fixed_space_round_trip() {
        let v = StandardSubspace::new(&worked_basis()).unwrap();
        let p = modular_objects(&v).unwrap();
        let back = standard_from_modular(&p).unwrap();
        assert!(subspace_gap(&v, &back) < 1e-9);
    }

    #[test]
    fn diagonal_generator() {
        let a = 0.3;
        let delta = CMat::from_diagonal(&crate::linalg::CVec::from_vec(vec![
            c64((-2.0 * PI * a).exp(), 0.0),
            c64((2.0 * PI * a).exp(), 0.0),
        ]));
        let p = ModularPair::new(delta, Conjugation::flip(2)).unwrap();
        let g = graded_hom_of(&p).unwrap();
        let expected = CMat::from_diagonal(&crate::linalg::CVec::from_vec(vec![c64(0.0, a), c64(0.0, -a)]));
        assert!((g.generator() - expected).norm() < 1e-13);
        assert!(modular_of(&g).unwrap().distance(&p) < 1e-12);
    }

    #[test]
    fn modular_relation_enforced() {
        let delta = CMat::from_diagonal(&crate::linalg::CVec::from_vec(vec![c64(2.0, 0.0), c64(3.0, 0.0)]));
        assert!(matches!(
            ModularPair::new(delta, Conjugation::standard(2)),
            Err(Error::ModularRelationViolated { .. })
        ));
    }

    #[test]
    fn complement_of_worked_example() {
        let v = StandardSubspace::new(&worked_basis()).unwrap();
        let vp = symplectic_complement(&v).unwrap();
        let p = modular_objects(&v).unwrap();
        let jv = v.transform(&AuOperator::from_conjugation(p.j())).unwrap();
        assert!(subspace_gap(&vp, &jv) < 1e-9);
        let pp = modular_objects(&vp).unwrap();
        assert!(pp.distance(&p.inverted()) < 1e-9);
        assert!(subspace_gap(&symplectic_complement(&vp).unwrap(), &v) < 1e-9);
        assert!(!is_lagrangian(&v).unwrap());
        assert!(is_lagrangian(&StandardSubspace::real_form(2)).unwrap());
    }
}
