//! The conformal group of a euclidean Jordan algebra `E` as words in the generators
//! `x ↦ x + b`, `x ↦ Tx` (`T E_+ = ±E_+`) and `x ↦ −x⁻¹`, acting birationally on `E`,
//! together with its Lie algebra `g₁ ⊕ g₀ ⊕ g₋₁` realised as polynomial vector fields.
//!
//! Conventions: a word is stored outermost first, so `[a, b, c]` acts as `a∘b∘c`.
//! The Lie bracket of fields is `[X, Y] = dX·Y − dY·X`, for which constant fields
//! have `ad h`-eigenvalue `+1` with `h(z) = z`. The `g₋₁` field of `v` is
//! `z ↦ −P(z)v`, whose flow `x ↦ (x⁻¹ + tv)⁻¹` compresses `E_+` for `v ∈ C_+`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::{JordanAlgebra, JordanElement};
use crate::linalg::{RMat, RVec};
use crate::reflection::{AxiomReport, LawResidual};
use crate::sampling::{self, SeededRng};
use crate::tolerances::WORD_EQ;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gen", rename_all = "snake_case")]
pub enum Generator {
    Translate {
        #[serde(with = "crate::json::rvec")]
        b: RVec,
    },
    Structure {
        #[serde(with = "crate::json::rmat")]
        t: RMat,
    },
    NegInversion,
}

impl Generator {
    pub fn translate(b: &JordanElement) -> Self {
        Generator::Translate { b: b.coords.clone() }
    }

    pub fn structure(t: RMat) -> Self {
        Generator::Structure { t }
    }

    fn act(&self, alg: &JordanAlgebra, x: &RVec) -> Option<RVec> {
        match self {
            Generator::Translate { b } => Some(x + b),
            Generator::Structure { t } => Some(t * x),
            Generator::NegInversion => {
                let el = alg.element(x.clone()).ok()?;
                alg.inverse(&el).ok().map(|inv| -inv.coords)
            }
        }
    }

    fn differential(&self, alg: &JordanAlgebra, x: &RVec) -> Option<RMat> {
        match self {
            Generator::Translate { b } => Some(RMat::identity(b.len(), b.len())),
            Generator::Structure { t } => Some(t.clone()),
            Generator::NegInversion => {
                // d(−x⁻¹) = P(x)⁻¹
                let el = alg.element(x.clone()).ok()?;
                alg.inverse(&el).ok()?;
                alg.quad_p(&el).ok()?.try_inverse()
            }
        }
    }

    fn inverse(&self) -> Result<Generator> {
        Ok(match self {
            Generator::Translate { b } => Generator::Translate { b: -b },
            Generator::Structure { t } => Generator::Structure { t: t.clone().try_inverse().ok_or(Error::SingularOperator)? },
            Generator::NegInversion => Generator::NegInversion,
        })
    }

    /// `τ(g) = γ(−1) g γ(−1)`.
    fn tau(&self) -> Generator {
        match self {
            Generator::Translate { b } => Generator::Translate { b: -b },
            other => other.clone(),
        }
    }
}

/// Word in the generators, outermost first.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConfWord {
    pub gens: Vec<Generator>,
}

impl ConfWord {
    pub fn new(gens: Vec<Generator>) -> Self {
        Self { gens }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &ConfWord) -> ConfWord {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        ConfWord { gens }
    }

    pub fn inverse(&self) -> Result<ConfWord> {
        Ok(ConfWord { gens: self.gens.iter().rev().map(Generator::inverse).collect::<Result<_>>()? })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

fn check_dim(alg: &JordanAlgebra, w: &ConfWord) -> Result<()> {
    let d = alg.dim();
    for g in &w.gens {
        let ok = match g {
            Generator::Translate { b } => b.len() == d,
            Generator::Structure { t } => t.shape() == (d, d),
            Generator::NegInversion => true,
        };
        if !ok {
            return Err(Error::AlgebraMismatch);
        }
    }
    Ok(())
}

/// Action of a word; `None` where an inversion meets a singular element.
pub fn conf_act(alg: &JordanAlgebra, g: &ConfWord, x: &JordanElement) -> Option<JordanElement> {
    if x.kind != alg.kind || check_dim(alg, g).is_err() {
        return None;
    }
    let mut c = x.coords.clone();
    for gen in g.gens.iter().rev() {
        c = gen.act(alg, &c)?;
    }
    Some(JordanElement { kind: alg.kind, coords: c })
}

/// `dg(x)` by the chain rule over the word.
pub fn conf_differential(alg: &JordanAlgebra, g: &ConfWord, x: &JordanElement) -> Result<RMat> {
    Ok(differential_with_amplification(alg, g, x)?.0)
}

/// `dg(x)` together with the product of the condition numbers `(|λ|_max/|λ|_min)²` of
/// the inversion steps, a bound on the relative roundoff amplification along the chain.
fn differential_with_amplification(alg: &JordanAlgebra, g: &ConfWord, x: &JordanElement) -> Result<(RMat, f64)> {
    if x.kind != alg.kind {
        return Err(Error::AlgebraMismatch);
    }
    check_dim(alg, g)?;
    let mut c = x.coords.clone();
    let mut d = RMat::identity(alg.dim(), alg.dim());
    let mut amp = 1.0;
    for gen in g.gens.iter().rev() {
        let dg = gen.differential(alg, &c).ok_or(Error::PointOutsideDomain)?;
        if let Generator::NegInversion = gen {
            let spec = alg.spectrum(&alg.element(c.clone())?)?;
            let (lo, hi) = spec.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), l| (lo.min(l.abs()), hi.max(l.abs())));
            amp *= (hi / lo).powi(2);
        }
        c = gen.act(alg, &c).ok_or(Error::PointOutsideDomain)?;
        d = dg * d;
    }
    Ok((d, amp))
}

/// Sample points at which gradings and word equality are evaluated: cone points with
/// eigenvalues log-uniform in `[0.1, 10]` and random points.
pub fn probe_points(alg: &JordanAlgebra, seed: u64, k: usize) -> Vec<JordanElement> {
    let mut rng = sampling::rng(seed);
    (0..k)
        .map(|i| {
            if i % 2 == 0 {
                cone_point(alg, &mut rng, 0.1, 10.0)
            } else {
                alg.random(&mut rng, 2.0)
            }
        })
        .collect()
}

pub fn cone_point(alg: &JordanAlgebra, rng: &mut SeededRng, lo: f64, hi: f64) -> JordanElement {
    let spec: Vec<f64> = (0..alg.rank()).map(|_| sampling::log_uniform(rng, lo, hi)).collect();
    alg.with_spectrum(rng, &spec)
}

const GRADING_PROBES: usize = 16;
const GRADING_SEED: u64 = 0x6772_6164;
const GRADING_REL_TOL: f64 = 1e-9;
/// Chain probes closer to a pole of the word than this conditioning allows are skipped.
const GRADING_MAX_AMPLIFICATION: f64 = 1e8;

/// `±1` if `v ∈ ±E_+` up to `slack` relative to the spectral scale, `None` otherwise.
fn definite_sign(alg: &JordanAlgebra, v: &JordanElement, slack: f64) -> Result<Option<i8>> {
    let spec = alg.spectrum(v)?;
    let (lo, hi) = (spec[0], spec[spec.len() - 1]);
    let slack = slack * lo.abs().max(hi.abs());
    Ok(if hi > 0.0 && lo >= -slack {
        Some(1)
    } else if lo < 0.0 && hi <= slack {
        Some(-1)
    } else {
        None
    })
}

/// Translations and `−x⁻¹` are even; `t ∈ Str(E)` has the sign of `t·e`, and must map
/// the cone probes into the same half.
fn generator_grading(alg: &JordanAlgebra, gen: &Generator, probes: &[JordanElement]) -> Result<i8> {
    let Generator::Structure { t } = gen else { return Ok(1) };
    let sign = definite_sign(alg, &alg.apply(t, &alg.unit())?, GRADING_REL_TOL)?.ok_or(Error::InconsistentGrading)?;
    for x in probes {
        if definite_sign(alg, &alg.apply(t, x)?, GRADING_REL_TOL)? != Some(sign) {
            return Err(Error::InconsistentGrading);
        }
    }
    Ok(sign)
}

/// `ε(g) = ±1` according to `dg(x)e ∈ ±E_+`. Computed as the product of the generator
/// signs and cross-checked against the chain-rule differential at every probe point
/// where the chain is well conditioned.
pub fn grading(alg: &JordanAlgebra, g: &ConfWord) -> Result<i8> {
    check_dim(alg, g)?;
    let probes = probe_points(alg, GRADING_SEED, GRADING_PROBES);
    let cone_probes: Vec<JordanElement> = probes.iter().step_by(2).cloned().collect();
    let mut sign = 1;
    for gen in &g.gens {
        sign *= generator_grading(alg, gen, &cone_probes)?;
    }
    let e = alg.unit();
    for x in &probes {
        let Ok((d, amp)) = differential_with_amplification(alg, g, x) else { continue };
        if amp > GRADING_MAX_AMPLIFICATION {
            continue;
        }
        let v = alg.apply(&d, &e)?;
        if !v.coords.iter().all(|c| c.is_finite()) {
            continue;
        }
        let slack = GRADING_REL_TOL.max(16.0 * f64::EPSILON * amp);
        if definite_sign(alg, &v, slack)? != Some(sign) {
            return Err(Error::InconsistentGrading);
        }
    }
    Ok(sign)
}

/// `γ(r) = r·id_E`.
pub fn gamma_scalar(alg: &JordanAlgebra, r: f64) -> Result<ConfWord> {
    if r == 0.0 || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("gamma(r) needs r != 0, got {r}")));
    }
    Ok(ConfWord::new(vec![Generator::structure(RMat::identity(alg.dim(), alg.dim()) * r)]))
}

/// Generator-wise `τ`: `τ(g)(x) = −g(−x)`.
pub fn tau_conj(g: &ConfWord) -> ConfWord {
    ConfWord { gens: g.gens.iter().map(Generator::tau).collect() }
}

/// Flow of the `g₋₁` field `z ↦ −P(z)c` at time `t`: `x ↦ (x⁻¹ + tc)⁻¹`.
pub fn exp_quadratic(c: &JordanElement, t: f64) -> ConfWord {
    ConfWord::new(vec![
        Generator::NegInversion,
        Generator::Translate { b: &c.coords * (-t) },
        Generator::NegInversion,
    ])
}

/// Extensional equality on 64 fixed probe points.
pub fn words_equal(alg: &JordanAlgebra, a: &ConfWord, b: &ConfWord) -> bool {
    word_distance(alg, a, b) <= WORD_EQ
}

/// Largest relative discrepancy of the two actions on the probe points; `∞` when only
/// one of them is defined somewhere.
pub fn word_distance(alg: &JordanAlgebra, a: &ConfWord, b: &ConfWord) -> f64 {
    let mut worst: f64 = 0.0;
    for x in probe_points(alg, 0x776f_7264, 64) {
        match (conf_act(alg, a, &x), conf_act(alg, b, &x)) {
            (Some(p), Some(q)) => worst = worst.max(p.sub(&q).norm() / p.norm().max(q.norm()).max(1.0)),
            (None, None) => {}
            _ => return f64::INFINITY,
        }
    }
    worst
}

/// Element `u + T + v` of `g = g₁ ⊕ g₀ ⊕ g₋₁`, with field `z ↦ u + Tz − P(z)v`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LieTriple {
    #[serde(with = "crate::json::rvec")]
    pub u: RVec,
    #[serde(with = "crate::json::rmat")]
    pub t: RMat,
    #[serde(with = "crate::json::rvec")]
    pub v: RVec,
}

impl LieTriple {
    pub fn zero(alg: &JordanAlgebra) -> Self {
        let d = alg.dim();
        Self { u: RVec::zeros(d), t: RMat::zeros(d, d), v: RVec::zeros(d) }
    }

    pub fn constant(alg: &JordanAlgebra, u: &JordanElement) -> Self {
        Self { u: u.coords.clone(), ..Self::zero(alg) }
    }

    pub fn linear(alg: &JordanAlgebra, t: RMat) -> Self {
        Self { t, ..Self::zero(alg) }
    }

    /// `θ̃(v)`: the `g₋₁` element `z ↦ −P(z)v`.
    pub fn quadratic(alg: &JordanAlgebra, v: &JordanElement) -> Self {
        Self { v: v.coords.clone(), ..Self::zero(alg) }
    }

    /// Graded components `(x₁, x₀, x₋₁)`.
    pub fn parts(&self, alg: &JordanAlgebra) -> [LieTriple; 3] {
        let z = Self::zero(alg);
        [
            LieTriple { u: self.u.clone(), ..z.clone() },
            LieTriple { t: self.t.clone(), ..z.clone() },
            LieTriple { v: self.v.clone(), ..z },
        ]
    }

    /// `(r u, T, v/r)`, the expected `Ad_{γ(r)}` image.
    pub fn graded_scale(&self, r: f64) -> LieTriple {
        LieTriple { u: &self.u * r, t: self.t.clone(), v: &self.v / r }
    }
}

/// Cartan involution `θ = Ad_{−j}` in this convention: `(u, T, v) ↦ (−v, −Tᵀ, −u)`.
pub fn cartan_involution(xi: &LieTriple) -> LieTriple {
    LieTriple { u: -&xi.v, t: -xi.t.transpose(), v: -&xi.u }
}

/// `h = γ'(0)`, the Euler field `z ↦ z`.
pub fn scalar_h(alg: &JordanAlgebra) -> LieTriple {
    LieTriple::linear(alg, RMat::identity(alg.dim(), alg.dim()))
}

pub fn vector_field_eval(alg: &JordanAlgebra, xi: &LieTriple, z: &JordanElement) -> Result<RVec> {
    let p = alg.quad_p(z)?;
    Ok(&xi.u + &xi.t * &z.coords - p * &xi.v)
}

/// A vector field on `E` in coordinates.
pub type Field<'a> = dyn Fn(&RVec) -> Result<RVec> + 'a;

/// `dX(z)·w` by central differences with one Richardson step.
pub fn directional_derivative(x: &Field<'_>, z: &RVec, w: &RVec, h: f64) -> Result<RVec> {
    let d = |h: f64| -> Result<RVec> { Ok((x(&(z + w * h))? - x(&(z - w * h))?) / (2.0 * h)) };
    let (coarse, fine) = (d(h)?, d(h / 2.0)?);
    Ok((fine * 4.0 - coarse) / 3.0)
}

const BRACKET_STEP: f64 = 1e-3;

/// `[X, Y](z) = dX(z)·Y(z) − dY(z)·X(z)`.
pub fn bracket_at(x: &Field<'_>, y: &Field<'_>, z: &RVec) -> Result<RVec> {
    let (xz, yz) = (x(z)?, y(z)?);
    Ok(directional_derivative(x, z, &yz, BRACKET_STEP)? - directional_derivative(y, z, &xz, BRACKET_STEP)?)
}

/// The field of a triple as a closure.
pub fn field_of<'a>(alg: &'a JordanAlgebra, xi: &'a LieTriple) -> impl Fn(&RVec) -> Result<RVec> + 'a {
    move |z| vector_field_eval(alg, xi, &alg.element(z.clone())?)
}

/// `(Ad_g X)(z) = dg(g⁻¹z) X(g⁻¹z)`.
pub fn pushforward_at(alg: &JordanAlgebra, g: &ConfWord, x: &Field<'_>, z: &JordanElement) -> Result<RVec> {
    let ginv = g.inverse()?;
    let w = conf_act(alg, &ginv, z).ok_or(Error::PointOutsideDomain)?;
    let d = conf_differential(alg, g, &w)?;
    Ok(d * x(&w.coords)?)
}

/// Checks `Ad_{γ(r)} x_j = r^j x_j` for each graded part of `ξ` by numerical
/// pushforward at the sample points.
pub fn lie_grade_check(alg: &JordanAlgebra, xi: &LieTriple, r: f64, samples: &[JordanElement], tol: f64) -> Result<AxiomReport> {
    let g = gamma_scalar(alg, r)?;
    let names = ["grade+1", "grade0", "grade-1"];
    let mut laws = Vec::new();
    let mut violations = 0;
    for (part, name) in xi.parts(alg).iter().zip(names) {
        let expected = part.graded_scale(r);
        let f = field_of(alg, part);
        let mut worst: f64 = 0.0;
        for z in samples {
            match pushforward_at(alg, &g, &f, z) {
                Ok(p) => {
                    let e = vector_field_eval(alg, &expected, z)?;
                    worst = worst.max((p - &e).norm() / e.norm().max(1.0));
                }
                Err(_) => {
                    violations += 1;
                    worst = f64::INFINITY;
                }
            }
        }
        laws.push(LawResidual { law: name.to_string(), samples: samples.len(), max_residual: worst });
    }
    Ok(AxiomReport::from_laws(&format!("lie-grading[{}, r = {r}]", alg.kind), laws, violations, tol))
}

/// `max_z ‖(Ad_g h)(z) − h(z)‖` over the samples.
pub fn ad_h_residual(alg: &JordanAlgebra, g: &ConfWord, samples: &[JordanElement]) -> Result<f64> {
    let h = scalar_h(alg);
    let f = field_of(alg, &h);
    let mut worst: f64 = 0.0;
    for z in samples {
        let p = pushforward_at(alg, g, &f, z)?;
        worst = worst.max((p - &z.coords).norm() / z.norm().max(1.0));
    }
    Ok(worst)
}

/// Random cone automorphism `P(a)P(b)` with `a, b ∈ E_+`, spectra in `[1/2, 2]`.
pub fn random_cone_automorphism(alg: &JordanAlgebra, rng: &mut SeededRng) -> RMat {
    let a = cone_point(alg, rng, 0.5, 2.0);
    let b = cone_point(alg, rng, 0.5, 2.0);
    alg.quad_p(&a).expect("same algebra") * alg.quad_p(&b).expect("same algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_fraction() {
        let r = JordanAlgebra::sym(1);
        let x = r.unit();
        let w = ConfWord::new(vec![
            Generator::NegInversion,
            Generator::Translate { b: RVec::from_vec(vec![-1.0]) },
            Generator::NegInversion,
        ]);
        assert!((conf_act(&r, &w, &x).unwrap().coords[0] - 0.5).abs() < 1e-15);
        assert_eq!(w, exp_quadratic(&r.unit(), 1.0));
    }

    #[test]
    fn gradings() {
        let a = JordanAlgebra::spin(3);
        let b = a.from_spin(0.3, &[1.0, -2.0]).unwrap();
        assert_eq!(grading(&a, &ConfWord::new(vec![Generator::translate(&b)])).unwrap(), 1);
        assert_eq!(grading(&a, &gamma_scalar(&a, -1.0).unwrap()).unwrap(), -1);
        assert_eq!(grading(&a, &ConfWord::new(vec![Generator::NegInversion])).unwrap(), 1);
    }

    #[test]
    fn word_json() {
        let r = JordanAlgebra::sym(1);
        let w = exp_quadratic(&r.unit(), 2.0);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"[{"gen":"neg_inversion"},{"gen":"translate","b":[-2.0]},{"gen":"neg_inversion"}]"#);
        let back: ConfWord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
    }
}
