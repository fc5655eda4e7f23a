//! Reflection and dilation spaces.
//!
//! A reflection space carries a product `x•y = s_x(y)` with
//! (S1) `x•x = x`, (S2) `x•(x•y) = y`, (S3) `s_x(y•z) = s_x(y)•s_x(z)`.
//! A dilation space refines this to maps `r_x(y) = x•_r y`, `r ∈ R^×`, with
//! (D1) `r_x(x) = x`, (D2) `r_x∘s_x = (rs)_x`, (D3) `r_x(y•_s z) = r_x(y)•_s r_x(z)`
//! and `•_{−1} = •`.
//!
//! Instances implement [`PointSpace`]; the laws are checked by the harness in this
//! module, never by the instances themselves.

pub mod instances;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::RMat;
use crate::sampling::{self, SeededRng};
use rand::Rng;

pub trait PointSpace: Sync {
    type Point: Clone + Send + Sync + std::fmt::Debug;

    fn name(&self) -> String;

    fn reflect(&self, x: &Self::Point, y: &Self::Point) -> Result<Self::Point>;

    fn dilate(&self, _x: &Self::Point, _r: f64, _y: &Self::Point) -> Result<Self::Point> {
        Err(Error::NoDilation)
    }

    fn has_dilation(&self) -> bool {
        false
    }

    /// Distance used for point equality.
    fn distance(&self, a: &Self::Point, b: &Self::Point) -> f64;
}

/// Residual statistics for one law.
#[derive(Clone, Debug, Serialize)]
pub struct LawResidual {
    pub law: String,
    pub samples: usize,
    pub max_residual: f64,
}

/// Outcome of an axiom run. A sample whose evaluation fails an instance precondition
/// counts as a violation and contributes an infinite residual.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub law: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub precondition_violations: usize,
    pub laws: Vec<LawResidual>,
    pub pass: bool,
}

impl AxiomReport {
    pub fn from_laws(law: &str, laws: Vec<LawResidual>, violations: usize, tol: f64) -> Self {
        let samples = laws.iter().map(|l| l.samples).sum();
        let max_residual = laws.iter().map(|l| l.max_residual).fold(0.0, f64::max);
        Self {
            law: law.to_string(),
            samples,
            max_residual,
            tol,
            precondition_violations: violations,
            laws,
            pass: max_residual <= tol,
        }
    }

    pub fn law_residual(&self, name: &str) -> Option<f64> {
        self.laws.iter().find(|l| l.law == name).map(|l| l.max_residual)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SampleConfig {
    pub n_samples: usize,
    pub tol: f64,
    pub seed: u64,
}

struct Accumulator {
    law: &'static str,
    samples: usize,
    max: f64,
}

impl Accumulator {
    fn new(law: &'static str) -> Self {
        Self { law, samples: 0, max: 0.0 }
    }

    fn record(&mut self, r: Result<f64>, violations: &mut usize) {
        self.samples += 1;
        match r {
            Ok(v) if v.is_finite() => self.max = self.max.max(v),
            Ok(_) => self.max = f64::INFINITY,
            Err(_) => {
                *violations += 1;
                self.max = f64::INFINITY;
            }
        }
    }

    fn finish(self) -> LawResidual {
        LawResidual { law: self.law.to_string(), samples: self.samples, max_residual: self.max }
    }
}

/// Number of power pairs `(n, m) ∈ [−4, 4]²` checked per sampled point.
pub const POW_RANGE: i32 = 4;

/// `x^n` with respect to `e`: `x⁰ = e`, `x¹ = x`, `x^{n+2} = x•(e•xⁿ)` and
/// `x^{−n} = (e•x)ⁿ`.
pub fn power<M: PointSpace>(space: &M, e: &M::Point, x: &M::Point, n: i32) -> Result<M::Point> {
    if n < 0 {
        let y = space.reflect(e, x)?;
        return power(space, e, &y, -n);
    }
    let (mut even, mut odd) = (e.clone(), x.clone());
    let target_odd = n % 2 == 1;
    let mut k = if target_odd { 1 } else { 0 };
    while k < n {
        if target_odd {
            odd = space.reflect(x, &space.reflect(e, &odd)?)?;
        } else {
            even = space.reflect(x, &space.reflect(e, &even)?)?;
        }
        k += 2;
    }
    Ok(if target_odd { odd } else { even })
}

/// All powers `x^k`, `|k| ≤ max`, indexed by `k + max`.
fn power_table<M: PointSpace>(space: &M, e: &M::Point, x: &M::Point, max: i32) -> Result<Vec<M::Point>> {
    let y = space.reflect(e, x)?;
    let mut pos = vec![e.clone(), x.clone()];
    let mut neg = vec![e.clone(), y.clone()];
    for k in 2..=max as usize {
        pos.push(space.reflect(x, &space.reflect(e, &pos[k - 2])?)?);
        neg.push(space.reflect(&y, &space.reflect(e, &neg[k - 2])?)?);
    }
    let mut out: Vec<M::Point> = neg.into_iter().skip(1).rev().collect();
    out.extend(pos);
    Ok(out)
}

/// Residual of `xⁿ • x^m = x^{2n−m}` for `n, m ∈ [−POW_RANGE, POW_RANGE]`.
pub fn pow1_residual<M: PointSpace>(space: &M, e: &M::Point, x: &M::Point) -> Result<f64> {
    let max = 3 * POW_RANGE;
    let table = power_table(space, e, x, max)?;
    let at = |k: i32| &table[(k + max) as usize];
    let mut worst: f64 = 0.0;
    for n in -POW_RANGE..=POW_RANGE {
        for m in -POW_RANGE..=POW_RANGE {
            let lhs = space.reflect(at(n), at(m))?;
            worst = worst.max(space.distance(&lhs, at(2 * n - m)));
        }
    }
    Ok(worst)
}

/// Sampler of base/point pairs `(e, x)` for the power law. Powers up to `x^{±12}` are
/// formed, so pairs should be close enough for these to stay well conditioned.
pub type PowPairSampler<'a, P> = &'a dyn Fn(&mut SeededRng) -> (P, P);

/// Checks (S1)–(S3) on `n_samples` triples and `xⁿ•x^m = x^{2n−m}` on up to 100 pairs
/// (drawn from `pow_pairs` when given, else from `sampler`).
pub fn verify_reflection_axioms<M, S>(
    space: &M,
    sampler: S,
    pow_pairs: Option<PowPairSampler<'_, M::Point>>,
    cfg: &SampleConfig,
) -> AxiomReport
where
    M: PointSpace,
    S: Fn(&mut SeededRng) -> M::Point,
{
    let mut rng = sampling::substream(cfg.seed, &format!("reflection:{}", space.name()));
    let mut violations = 0;
    let (mut s1, mut s2, mut s3, mut p1) =
        (Accumulator::new("S1"), Accumulator::new("S2"), Accumulator::new("S3"), Accumulator::new("pow1"));
    for i in 0..cfg.n_samples {
        let (x, y, z) = (sampler(&mut rng), sampler(&mut rng), sampler(&mut rng));
        s1.record(space.reflect(&x, &x).map(|xx| space.distance(&xx, &x)), &mut violations);
        s2.record(
            space.reflect(&x, &y).and_then(|xy| space.reflect(&x, &xy)).map(|v| space.distance(&v, &y)),
            &mut violations,
        );
        s3.record(
            (|| {
                let lhs = space.reflect(&x, &space.reflect(&y, &z)?)?;
                let rhs = space.reflect(&space.reflect(&x, &y)?, &space.reflect(&x, &z)?)?;
                Ok(space.distance(&lhs, &rhs))
            })(),
            &mut violations,
        );
        if i < 100 {
            let (e, p) = match pow_pairs {
                Some(f) => f(&mut rng),
                None => (x.clone(), y.clone()),
            };
            p1.record(pow1_residual(space, &e, &p), &mut violations);
        }
    }
    let laws = vec![s1.finish(), s2.finish(), s3.finish(), p1.finish()];
    AxiomReport::from_laws(&format!("reflection[{}]", space.name()), laws, violations, cfg.tol)
}

/// Random dilation parameter `±e^u`, `u ∈ [−1, 1]`.
pub fn sample_scalar(rng: &mut SeededRng) -> f64 {
    sampling::sign(rng) * rng.gen_range(-1.0f64..1.0).exp()
}

/// Checks (D1)–(D3) and `•_{−1} = •` on `n_samples` triples.
pub fn verify_dilation_axioms<M, S>(space: &M, sampler: S, cfg: &SampleConfig) -> AxiomReport
where
    M: PointSpace,
    S: Fn(&mut SeededRng) -> M::Point,
{
    let label = format!("dilation[{}]", space.name());
    if !space.has_dilation() {
        let mut report = AxiomReport::from_laws(&label, vec![], 1, cfg.tol);
        report.max_residual = f64::INFINITY;
        report.pass = false;
        return report;
    }
    let mut rng = sampling::substream(cfg.seed, &format!("dilation:{}", space.name()));
    let mut violations = 0;
    let (mut d1, mut d2, mut d3, mut dm) =
        (Accumulator::new("D1"), Accumulator::new("D2"), Accumulator::new("D3"), Accumulator::new("minus-one"));
    for _ in 0..cfg.n_samples {
        let (x, y, z) = (sampler(&mut rng), sampler(&mut rng), sampler(&mut rng));
        let (r, s) = (sample_scalar(&mut rng), sample_scalar(&mut rng));
        d1.record(space.dilate(&x, r, &x).map(|v| space.distance(&v, &x)), &mut violations);
        d2.record(
            (|| {
                let lhs = space.dilate(&x, r, &space.dilate(&x, s, &y)?)?;
                let rhs = space.dilate(&x, r * s, &y)?;
                Ok(space.distance(&lhs, &rhs))
            })(),
            &mut violations,
        );
        d3.record(
            (|| {
                let lhs = space.dilate(&x, r, &space.dilate(&y, s, &z)?)?;
                let rhs = space.dilate(&space.dilate(&x, r, &y)?, s, &space.dilate(&x, r, &z)?)?;
                Ok(space.distance(&lhs, &rhs))
            })(),
            &mut violations,
        );
        dm.record(
            (|| Ok(space.distance(&space.dilate(&x, -1.0, &y)?, &space.reflect(&x, &y)?)))(),
            &mut violations,
        );
    }
    let laws = vec![d1.finish(), d2.finish(), d3.finish(), dm.finish()];
    AxiomReport::from_laws(&label, laws, violations, cfg.tol)
}

/// Number of `ys` fixed by `s_x` within `tol`. Symmetric spaces have `x` isolated in
/// `Fix(s_x)`; this count only reports, it cannot certify isolatedness.
pub fn fixed_point_count<M: PointSpace>(space: &M, x: &M::Point, ys: &[M::Point], tol: f64) -> usize {
    ys.iter()
        .filter(|y| space.reflect(x, y).map(|v| space.distance(&v, y) <= tol).unwrap_or(false))
        .count()
}

/// Matrix one-parameter group data of a geodesic `γ(t) = exp(tX)·g`.
#[derive(Clone, Debug)]
pub struct OneParamProvenance {
    pub generator: RMat,
    pub offset: RMat,
}

/// A curve `R → M`, meant to be a morphism from `(R, •)` with `t•s = 2t − s`.
pub struct Geodesic<P> {
    eval: Box<dyn Fn(f64) -> P + Send + Sync>,
    pub provenance: Option<OneParamProvenance>,
}

impl<P> Geodesic<P> {
    pub fn new(eval: impl Fn(f64) -> P + Send + Sync + 'static) -> Self {
        Self { eval: Box::new(eval), provenance: None }
    }

    pub fn eval(&self, t: f64) -> P {
        (self.eval)(t)
    }
}

/// `γ(t) = exp(tX)·g`.
pub fn geodesic_from_one_param(generator: &RMat, g: &RMat) -> Geodesic<RMat> {
    let (x, g0) = (generator.clone(), g.clone());
    let mut geo = Geodesic::new(move |t| (&x * t).exp() * &g0);
    geo.provenance = Some(OneParamProvenance { generator: generator.clone(), offset: g.clone() });
    geo
}

/// Criterion `γ(r^λ s) = γ(0) •_r γ(s)` for dilation-compatible geodesics.
#[derive(Clone, Debug)]
pub struct DilationCriterion {
    pub lambda: f64,
    pub rs: Vec<f64>,
}

fn signed_power(r: f64, lambda: f64) -> f64 {
    if r >= 0.0 {
        r.powf(lambda)
    } else {
        let k = lambda.round();
        assert!((k - lambda).abs() < 1e-12, "negative r requires an integral exponent");
        r.powi(k as i32)
    }
}

/// Checks `γ(2t − s) = γ(t)•γ(s)` on all pairs from `ts`, and optionally the dilation
/// criterion.
pub fn verify_geodesic<M: PointSpace>(
    space: &M,
    gamma: &Geodesic<M::Point>,
    ts: &[f64],
    tol: f64,
    criterion: Option<&DilationCriterion>,
) -> AxiomReport {
    let mut violations = 0;
    let mut morph = Accumulator::new("morphism");
    for &t in ts {
        let gt = gamma.eval(t);
        for &s in ts {
            let gs = gamma.eval(s);
            morph.record(space.reflect(&gt, &gs).map(|v| space.distance(&gamma.eval(2.0 * t - s), &v)), &mut violations);
        }
    }
    let mut laws = vec![morph.finish()];
    if let Some(c) = criterion {
        let mut dil = Accumulator::new("dilation-criterion");
        let g0 = gamma.eval(0.0);
        for &r in &c.rs {
            for &s in ts {
                let lhs = gamma.eval(signed_power(r, c.lambda) * s);
                dil.record(space.dilate(&g0, r, &gamma.eval(s)).map(|v| space.distance(&lhs, &v)), &mut violations);
            }
        }
        laws.push(dil.finish());
    }
    AxiomReport::from_laws(&format!("geodesic[{}]", space.name()), laws, violations, tol)
}
