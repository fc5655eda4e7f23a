//! Antiunitary representations of graded matrix groups and the map `γ ↦ V` sending a
//! graded homomorphism `γ: R^× → G` to the standard subspace of `U ∘ γ`.
//!
//! The group `G` is the antiunitary group of a defining space `C^m`; a representation
//! `U: G → AU(H)` is one of a few functorial constructions on it. A graded
//! homomorphism into `G` is a [`GradedHom`] on `C^m`.

use serde::{Deserialize, Serialize};

use crate::antilinear::{AuOperator, Conjugation};
use crate::error::{Error, Result};
use crate::linalg::{self, c64, CMat, I};
use crate::reflection::{AxiomReport, LawResidual};
use crate::standard::{modular_of, standard_from_modular, subspace_gap, symplectic_complement, GradedHom, StandardSubspace};

/// Representation of `AU(C^m)` on `H`, built from the defining representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AuRep {
    /// `U(g) = g` on `C^m`.
    Defining { m: usize },
    /// `U(g) = g ⊕ ⋯ ⊕ g` (`copies` summands) on `C^{m·copies}`.
    DirectSum { m: usize, copies: usize },
    /// `U(g) = g ⊗ g` on `C^{m²}`.
    Tensor { m: usize },
    /// `U(g) = W g W*` for a fixed unitary `W`.
    Twisted {
        #[serde(with = "crate::json::cmat")]
        w: CMat,
    },
}

impl AuRep {
    /// Dimension of the defining space.
    pub fn group_dim(&self) -> usize {
        match self {
            AuRep::Defining { m } | AuRep::DirectSum { m, .. } | AuRep::Tensor { m } => *m,
            AuRep::Twisted { w } => w.nrows(),
        }
    }

    /// Dimension of `H`.
    pub fn dim(&self) -> usize {
        match self {
            AuRep::Defining { m } => *m,
            AuRep::DirectSum { m, copies } => m * copies,
            AuRep::Tensor { m } => m * m,
            AuRep::Twisted { w } => w.nrows(),
        }
    }

    /// `U(g)`; the parity of `g` is preserved, so `ε(U_g) = ε(g)`.
    pub fn image(&self, g: &AuOperator) -> Result<AuOperator> {
        let m = self.group_dim();
        if g.m.shape() != (m, m) {
            return Err(Error::DimensionMismatch { expected: m, got: g.m.nrows() });
        }
        let mat = match self {
            AuRep::Defining { .. } => g.m.clone(),
            AuRep::DirectSum { copies, .. } => {
                let mut out = CMat::zeros(m * copies, m * copies);
                for k in 0..*copies {
                    out.view_mut((k * m, k * m), (m, m)).copy_from(&g.m);
                }
                out
            }
            AuRep::Tensor { .. } => linalg::kron(&g.m, &g.m),
            AuRep::Twisted { w } => {
                if g.odd {
                    w * &g.m * w.transpose()
                } else {
                    w * &g.m * w.adjoint()
                }
            }
        };
        Ok(AuOperator { m: mat, odd: g.odd })
    }

    /// `dU(X)` for skew-hermitian `X`, as `k·log U(exp(X/k))` with `k = 2^p` chosen so that
    /// `‖X‖/k ≤ 1/2`; the logarithm takes eigenvalue arguments in `(−π, π]`.
    pub fn differential(&self, x: &CMat) -> Result<CMat> {
        let norm = linalg::opnorm(x);
        let mut k = 1.0;
        while norm / k > 0.5 {
            k *= 2.0;
        }
        let h = x * c64(0.0, -1.0);
        let g = AuOperator::unitary(linalg::unitary_group(&h, 1.0 / k));
        Ok(linalg::unitary_log(&self.image(&g)?.m) * c64(k, 0.0))
    }

    /// `max ‖U(gh) − U(g)U(h)‖` over the given pairs.
    pub fn homomorphism_residual(&self, pairs: &[(AuOperator, AuOperator)]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (g, h) in pairs {
            let lhs = self.image(&g.compose(h))?;
            let rhs = self.image(g)?.compose(&self.image(h)?);
            worst = worst.max(lhs.distance(&rhs));
        }
        Ok(worst)
    }
}

/// `U ∘ γ` as a graded homomorphism into `AU(H)`: generator `dU(X)`, involution `U(γ(−1))`.
pub fn push_forward(rep: &AuRep, gamma: &GradedHom) -> Result<GradedHom> {
    let xu = rep.differential(gamma.generator())?;
    let sigma = rep.image(&AuOperator::from_conjugation(gamma.j()))?;
    let j = Conjugation::new(sigma.m).map_err(|e| match e {
        Error::NotConjugation { residual } => Error::ModularRelationViolated { residual },
        other => other,
    })?;
    GradedHom::new(xu, j)
}

/// `V = Φ(exp(2πi·dU(X)), U(γ(−1)))`.
pub fn bgl_map(rep: &AuRep, gamma: &GradedHom) -> Result<StandardSubspace> {
    standard_from_modular(&modular_of(&push_forward(rep, gamma)?)?)
}

/// `γ^g(r) = g γ(r) g⁻¹`.
pub fn conjugate_hom(gamma: &GradedHom, g: &AuOperator) -> Result<GradedHom> {
    let a = g.conjugate_linear(gamma.generator());
    let j = g.conjugate_antilinear(gamma.j().as_map());
    GradedHom::new(a, Conjugation::new(j.matrix().clone())?)
}

/// Gap between `V(U, γ^g)` and `U_g V` for even `g`, `U_g V′` for odd `g`: an
/// antiunitary `g` inverts the modular operator, `gΔg⁻¹ = exp(−2πi·dU(gXg⁻¹))`.
pub fn bgl_equivariance_check(rep: &AuRep, gamma: &GradedHom, conjugators: &[AuOperator], tol: f64) -> Result<AxiomReport> {
    let v = bgl_map(rep, gamma)?;
    let vc = symplectic_complement(&v)?;
    let mut worst: f64 = 0.0;
    for g in conjugators {
        let lhs = bgl_map(rep, &conjugate_hom(gamma, g)?)?;
        let rhs = if g.odd { &vc } else { &v }.transform(&rep.image(g)?)?;
        worst = worst.max(subspace_gap(&lhs, &rhs));
    }
    let laws = vec![LawResidual { law: "equivariance".into(), samples: conjugators.len(), max_residual: worst }];
    Ok(AxiomReport::from_laws("bgl-equivariance", laws, 0, tol))
}

/// `g ∈ S_V`: in finite dimension `U_g V ⊆ V` forces equality, decided by the gap.
pub fn semigroup_membership(rep: &AuRep, g: &AuOperator, v: &StandardSubspace, tol: f64) -> Result<bool> {
    if g.odd {
        return Err(Error::NotInG1);
    }
    Ok(subspace_gap(&v.transform(&rep.image(g)?)?, v) <= tol)
}

/// Positive energy of a generator: `−i·dU(X) ≥ 0` up to `tol`.
pub fn positive_energy(rep: &AuRep, x: &CMat, tol: f64) -> Result<bool> {
    let h = linalg::hermitian_part(&(rep.differential(x)? * -I));
    let (vals, _) = linalg::hermitian_eigen(&h);
    Ok(vals.iter().all(|&l| l >= -tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(AuRep::Tensor { m: 3 }.dim(), 9);
        assert_eq!(AuRep::DirectSum { m: 2, copies: 3 }.dim(), 6);
        assert_eq!(AuRep::Defining { m: 2 }.group_dim(), 2);
    }

    #[test]
    fn rep_json() {
        let r = AuRep::DirectSum { m: 2, copies: 2 };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"kind":"direct_sum","m":2,"copies":2}"#);
    }
}
