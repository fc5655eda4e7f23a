//! The compression semigroup `S = {g ∈ G₁ : g E_+ ⊆ E_+}`, its product factorization
//! `exp(C_+) Aut(E_+) exp(θ(C_+))` and the order `g₁ ≤ g₂ ⇔ g₂⁻¹g₁ ∈ S`.
//!
//! Membership is decided by Monte Carlo: a word compresses if every probe of the cone
//! is mapped into the closed cone. The test is one-sided; failures carry a witness.

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use rand::Rng;

use crate::conformal::{conf_act, cone_point, exp_quadratic, grading, random_cone_automorphism, tau_conj, ConfWord, Generator};
use crate::error::{Error, Result};
use crate::jordan::{JordanAlgebra, JordanElement, JordanKind};
use crate::sampling::{self, SeededRng};
use crate::tolerances::CONE_MARGIN;

/// Sample budget and margin of the compression test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompressionConfig {
    pub interior: usize,
    pub boundary: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for CompressionConfig {
    fn default() -> Self {
        Self { interior: 512, boundary: 128, tol: CONE_MARGIN, seed: 0x636f_6e65 }
    }
}

impl CompressionConfig {
    pub fn budget(&self) -> usize {
        self.interior + self.boundary
    }
}

/// Relative spectral gap of the near-boundary probes.
pub const BOUNDARY_GAP: f64 = 1e-4;

/// Cone probes: `e/2, e, 2e`, then points with spectral radius log-uniform in
/// `[1e-3, 1e3]`; the last `boundary` of them have smallest eigenvalue `1e-4` times the radius.
pub fn cone_probes(alg: &JordanAlgebra, cfg: &CompressionConfig) -> Vec<JordanElement> {
    let mut rng = sampling::rng(cfg.seed);
    let e = alg.unit();
    let mut out: Vec<JordanElement> = [0.5, 1.0, 2.0].iter().map(|&s| e.scale(s)).collect();
    let k = alg.rank();
    let interior = cfg.interior.saturating_sub(out.len());
    for i in 0..interior + cfg.boundary {
        let radius = sampling::log_uniform(&mut rng, 1e-3, 1e3);
        let mut spec: Vec<f64> = (0..k).map(|_| radius * sampling::log_uniform(&mut rng, 1e-2, 1.0)).collect();
        spec[0] = radius;
        if i >= interior && k > 1 {
            spec[k - 1] = radius * BOUNDARY_GAP;
        } else if i >= interior {
            spec[0] = radius * BOUNDARY_GAP;
        }
        out.push(alg.with_spectrum(&mut rng, &spec));
    }
    out
}

/// A probe `x` of the cone whose image `g(x)` is undefined or outside the closed cone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: JordanElement,
    pub image: Option<JordanElement>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompressionReport {
    pub compresses: bool,
    pub samples: usize,
    /// Smallest relative margin `λ_min(g(x)) / max(1, |g(x)|_∞)` over the probes.
    pub min_margin: f64,
    pub witness: Option<Witness>,
}

fn relative_margin(alg: &JordanAlgebra, y: &JordanElement) -> Result<f64> {
    let spec = alg.spectrum(y)?;
    let scale = spec.iter().fold(1.0_f64, |m, l| m.max(l.abs()));
    Ok(spec[0] / scale)
}

fn require_g1(alg: &JordanAlgebra, g: &ConfWord) -> Result<()> {
    match grading(alg, g)? {
        1 => Ok(()),
        _ => Err(Error::NotInG1),
    }
}

/// Runs the compression test and records the first failing probe.
pub fn compression_report(alg: &JordanAlgebra, g: &ConfWord, cfg: &CompressionConfig) -> Result<CompressionReport> {
    require_g1(alg, g)?;
    let probes = cone_probes(alg, cfg);
    let mut min_margin = f64::INFINITY;
    let mut witness = None;
    for x in &probes {
        let image = conf_act(alg, g, x);
        let margin = match &image {
            Some(y) if y.coords.iter().all(|c| c.is_finite()) => relative_margin(alg, y)?,
            _ => f64::NEG_INFINITY,
        };
        min_margin = min_margin.min(margin);
        if margin < -cfg.tol && witness.is_none() {
            witness = Some(Witness { point: x.clone(), image });
        }
    }
    Ok(CompressionReport { compresses: witness.is_none(), samples: probes.len(), min_margin, witness })
}

pub fn compresses_cone(alg: &JordanAlgebra, g: &ConfWord, cfg: &CompressionConfig) -> Result<bool> {
    Ok(compression_report(alg, g, cfg)?.compresses)
}

/// Sampled test of `a(E_+) = E_+` for a linear map.
fn preserves_cone(alg: &JordanAlgebra, a: &nalgebra::DMatrix<f64>) -> Result<bool> {
    let cfg = CompressionConfig { interior: 48, boundary: 16, ..CompressionConfig::default() };
    let w = ConfWord::new(vec![Generator::structure(a.clone())]);
    let Some(inv) = a.clone().try_inverse() else { return Ok(false) };
    let winv = ConfWord::new(vec![Generator::structure(inv)]);
    if grading(alg, &w).ok() != Some(1) {
        return Ok(false);
    }
    Ok(compresses_cone(alg, &w, &cfg)? && compresses_cone(alg, &winv, &cfg)?)
}

fn require_closed_cone(alg: &JordanAlgebra, c: &JordanElement, name: &str) -> Result<()> {
    if c.kind != alg.kind {
        return Err(Error::AlgebraMismatch);
    }
    let spec = alg.spectrum(c)?;
    let scale = spec.iter().fold(1.0_f64, |m, l| m.max(l.abs()));
    if spec[0] < -CONE_MARGIN * scale {
        return Err(Error::ConePreconditionViolated(format!("{name} has eigenvalue {:e}", spec[0])));
    }
    Ok(())
}

/// `Translate(c₁) ∘ a ∘ exp_quadratic(c₂, 1)` for `c₁, c₂ ∈ C_+` and `a ∈ Aut(E_+)`.
pub fn koufany_compose(alg: &JordanAlgebra, c1: &JordanElement, a: &nalgebra::DMatrix<f64>, c2: &JordanElement) -> Result<ConfWord> {
    require_closed_cone(alg, c1, "c1")?;
    require_closed_cone(alg, c2, "c2")?;
    if a.shape() != (alg.dim(), alg.dim()) {
        return Err(Error::AlgebraMismatch);
    }
    if !preserves_cone(alg, a)? {
        return Err(Error::ConePreconditionViolated("a does not preserve the cone".into()));
    }
    let mut gens = vec![Generator::translate(c1), Generator::structure(a.clone())];
    gens.extend(exp_quadratic(c2, 1.0).gens);
    Ok(ConfWord::new(gens))
}

/// `g₁ ≤ g₂`, i.e. `g₂⁻¹g₁` compresses the cone.
pub fn order_leq(alg: &JordanAlgebra, g1: &ConfWord, g2: &ConfWord, cfg: &CompressionConfig) -> Result<bool> {
    require_g1(alg, g1)?;
    require_g1(alg, g2)?;
    compresses_cone(alg, &g2.inverse()?.then_after(g1), cfg)
}

/// Sampled inclusion `g₁E_+ ⊆ g₂E_+`: each image point `g₁(x)` is pulled back through
/// the generators of `g₂` one at a time and tested for membership in the closed cone.
pub fn image_inclusion(alg: &JordanAlgebra, g1: &ConfWord, g2: &ConfWord, cfg: &CompressionConfig) -> Result<bool> {
    require_g1(alg, g1)?;
    require_g1(alg, g2)?;
    let g2inv = g2.inverse()?;
    for x in cone_probes(alg, cfg) {
        let Some(y) = conf_act(alg, g1, &x) else { return Ok(false) };
        let mut z = Some(y);
        for gen in g2inv.gens.iter().rev() {
            z = z.and_then(|z| conf_act(alg, &ConfWord::new(vec![gen.clone()]), &z));
        }
        match z {
            Some(z) if relative_margin(alg, &z)? >= -cfg.tol => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// Both directions of the antitone law under `γ(−1)`: `g₁ ≤ g₂ ⇔ τ(g₂) ≤ τ(g₁)`.
pub fn antitone_pair(alg: &JordanAlgebra, g1: &ConfWord, g2: &ConfWord, cfg: &CompressionConfig) -> Result<(bool, bool)> {
    Ok((order_leq(alg, g1, g2, cfg)?, order_leq(alg, &tau_conj(g2), &tau_conj(g1), cfg)?))
}

/// Matrix of a word over `E = R` acting by Möbius transformations
/// (`Translate(b) ↦ [[1, b], [0, 1]]`, `Structure(t) ↦ [[t, 0], [0, 1]]`,
/// `NegInversion ↦ [[0, −1], [1, 0]]`); `None` outside rank one.
pub fn mobius_matrix(alg: &JordanAlgebra, g: &ConfWord) -> Option<Matrix2<f64>> {
    if alg.kind != JordanKind::Sym(1) {
        return None;
    }
    let mut m = Matrix2::identity();
    for gen in &g.gens {
        let f = match gen {
            Generator::Translate { b } => Matrix2::new(1.0, *b.get(0)?, 0.0, 1.0),
            Generator::Structure { t } => Matrix2::new(*t.get((0, 0))?, 0.0, 0.0, 1.0),
            Generator::NegInversion => Matrix2::new(0.0, -1.0, 1.0, 0.0),
        };
        m *= f;
    }
    Some(m)
}

/// Factors `(c₁, a, c₂)` of a rank-one word with
/// `[[p, q], [r, s]] ∝ [[1, c₁], [0, 1]]·[[a, 0], [0, 1]]·[[1, 0], [c₂, 1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankOneFactors {
    pub c1: f64,
    pub a: f64,
    pub c2: f64,
}

impl RankOneFactors {
    /// Whether the factors lie in `C_+ × Aut(E_+) × C_+`.
    pub fn in_product(&self, tol: f64) -> bool {
        self.c1 >= -tol && self.c2 >= -tol && self.a > 0.0
    }

    pub fn word(&self) -> ConfWord {
        let alg = JordanAlgebra::sym(1);
        let c1 = alg.unit().scale(self.c1);
        let c2 = alg.unit().scale(self.c2);
        let mut gens = vec![Generator::translate(&c1), Generator::structure(nalgebra::DMatrix::from_element(1, 1, self.a))];
        gens.extend(exp_quadratic(&c2, 1.0).gens);
        ConfWord::new(gens)
    }
}

/// Triangular decomposition of a rank-one word; `None` when the lower-right entry vanishes.
pub fn rank_one_factorization(alg: &JordanAlgebra, g: &ConfWord) -> Option<RankOneFactors> {
    let m = mobius_matrix(alg, g)?;
    let (p, q, r, s) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    if s.abs() <= 1e-12 * m.amax() {
        return None;
    }
    Some(RankOneFactors { c1: q / s, a: (p * s - q * r) / (s * s), c2: r / s })
}

/// Random product `exp(c₁) a exp(θ(c₂))` with `c₁, c₂` of spectrum in `[1e−2, 10]` and
/// `a = P(x)P(y)`.
pub fn sample_koufany(alg: &JordanAlgebra, rng: &mut SeededRng) -> ConfWord {
    let c1 = cone_point(alg, rng, 1e-2, 10.0);
    let c2 = cone_point(alg, rng, 1e-2, 10.0);
    let a = random_cone_automorphism(alg, rng);
    koufany_compose(alg, &c1, &a, &c2).expect("sampled factors satisfy the preconditions")
}

/// Random word of grading `+1` of length `len` mixing all generator types.
pub fn sample_g1_word(alg: &JordanAlgebra, rng: &mut SeededRng, len: usize) -> ConfWord {
    loop {
        let gens = (0..len)
            .map(|_| match rng.gen_range(0..3) {
                0 => Generator::translate(&alg.random(rng, 1.0)),
                1 => Generator::structure(random_cone_automorphism(alg, rng) * sampling::sign(rng)),
                _ => Generator::NegInversion,
            })
            .collect();
        let w = ConfWord::new(gens);
        if grading(alg, &w) == Ok(1) {
            return w;
        }
    }
}

/// Membership in the standard right wedge `x₁ > |x₀|` of Minkowski space `Λ_n`.
pub fn in_right_wedge(x: &JordanElement) -> Result<bool> {
    match x.kind {
        JordanKind::Spin(_) => Ok(x.coords[1] > x.coords[0].abs()),
        _ => Err(Error::AlgebraMismatch),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probe_layout() {
        let alg = JordanAlgebra::spin(3);
        let cfg = CompressionConfig { interior: 10, boundary: 4, ..Default::default() };
        let p = cone_probes(&alg, &cfg);
        assert_eq!(p.len(), 14);
        for x in &p[10..] {
            let s = alg.spectrum(x).unwrap();
            assert!((s[0] / s[1] - BOUNDARY_GAP).abs() < 1e-9);
        }
    }

    #[test]
    fn negative_translation_has_witness() {
        let alg = JordanAlgebra::sym(2);
        let w = ConfWord::new(vec![Generator::translate(&alg.unit().scale(-1.0))]);
        let rep = compression_report(&alg, &w, &CompressionConfig::default()).unwrap();
        assert!(!rep.compresses);
        let wit = rep.witness.unwrap();
        assert!(wit.point.sub(&alg.unit().scale(0.5)).norm() < 1e-15);
    }
}
