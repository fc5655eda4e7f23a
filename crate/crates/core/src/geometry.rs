//! The dilation space structure on standard subspaces, modular pairs and graded
//! homomorphisms; Loos normal form; geodesics and `G_α` representations.

use std::f64::consts::PI;

use crate::antilinear::{AuOperator, Conjugation, ModularPair};
use crate::error::{Error, Result};
use crate::linalg::{self, c64, conj, CMat, RMat, I};
use crate::reflection::{Geodesic, PointSpace};
use crate::sampling::{self, SeededRng};
use crate::standard::{
    graded_hom_of, modular_objects, standard_from_modular, subspace_gap, GradedHom, StandardSubspace,
};
use crate::tolerances::{GEODESIC, MODEL_GAP};

/// `W = Δ^{−it/2π}` with `t = ln|r|`.
fn dilation_unitary(p: &ModularPair, r: f64) -> CMat {
    p.delta_it(-r.abs().ln() / (2.0 * PI))
}

fn check_scalar(r: f64) -> Result<()> {
    if r == 0.0 || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("dilation parameter must be a nonzero real, got {r}")));
    }
    Ok(())
}

/// `V₁ •_r V₂`: `Δ₁^{−it/2π} V₂` for `r = e^t`, and `Δ₁^{−it/2π} J₁J₂ V₂` for `r = −e^t`.
pub fn stand_bullet(v1: &StandardSubspace, r: f64, v2: &StandardSubspace) -> Result<StandardSubspace> {
    check_scalar(r)?;
    let p1 = modular_objects(v1)?;
    let mut b = v2.basis().clone();
    if r < 0.0 {
        let p2 = modular_objects(v2)?;
        let jj = AuOperator::from_conjugation(p1.j()).compose(&AuOperator::from_conjugation(p2.j()));
        b = jj.apply_columns(&b);
    }
    if r.abs() != 1.0 {
        b = dilation_unitary(&p1, r) * b;
    }
    StandardSubspace::new(&b)
}

/// `(Δ₁, J₁) •_r (Δ₂, J₂)`; for `r = −1` this is `(J₁Δ₂⁻¹J₁, J₁J₂J₁)`, for `r = e^t`
/// conjugation of `(Δ₂, J₂)` by `Δ₁^{−it/2π}`, and the product of both otherwise.
pub fn mod_bullet(p1: &ModularPair, r: f64, p2: &ModularPair) -> Result<ModularPair> {
    check_scalar(r)?;
    let (mut delta, mut j) = (p2.delta().clone(), p2.j().matrix().clone());
    if r < 0.0 {
        delta = p1.j().conjugate_linear(&p2.delta_power(-1.0));
        let m1 = p1.j().matrix();
        j = m1 * conj(&j) * m1;
    }
    if r.abs() != 1.0 {
        let w = dilation_unitary(p1, r);
        delta = &w * delta * w.adjoint();
        j = &w * j * w.transpose();
    }
    ModularPair::new(delta, Conjugation::new(j)?)
}

/// `(γ •_r η)(s) = γ(r) η(s) γ(r)⁻¹`.
pub fn hom_bullet(g1: &GradedHom, r: f64, g2: &GradedHom) -> Result<GradedHom> {
    check_scalar(r)?;
    let g = g1.eval(r);
    let a = g.conjugate_linear(g2.generator());
    let j = g.conjugate_antilinear(g2.j().as_map());
    GradedHom::new(a, Conjugation::new(j.matrix().clone())?)
}

/// `g R^n ♯ h R^n = g ḡ⁻¹ h̄ R^n` for invertible `g`, `h`.
pub fn sharp(g: &CMat, h: &CMat) -> Result<StandardSubspace> {
    let b = g * linalg::invert(&conj(g))? * conj(h);
    StandardSubspace::new(&b)
}

/// `Stand(C^n)` with the products `•_r`, compared through the subspace gap.
#[derive(Clone, Debug)]
pub struct StandSpace {
    pub n: usize,
}

impl PointSpace for StandSpace {
    type Point = StandardSubspace;

    fn name(&self) -> String {
        format!("Stand(C^{})", self.n)
    }

    fn reflect(&self, x: &StandardSubspace, y: &StandardSubspace) -> Result<StandardSubspace> {
        stand_bullet(x, -1.0, y)
    }

    fn dilate(&self, x: &StandardSubspace, r: f64, y: &StandardSubspace) -> Result<StandardSubspace> {
        stand_bullet(x, r, y)
    }

    fn has_dilation(&self) -> bool {
        true
    }

    fn distance(&self, a: &StandardSubspace, b: &StandardSubspace) -> f64 {
        subspace_gap(a, b)
    }
}

#[derive(Clone, Debug)]
pub struct ModSpace {
    pub n: usize,
}

impl PointSpace for ModSpace {
    type Point = ModularPair;

    fn name(&self) -> String {
        format!("Mod(C^{})", self.n)
    }

    fn reflect(&self, x: &ModularPair, y: &ModularPair) -> Result<ModularPair> {
        mod_bullet(x, -1.0, y)
    }

    fn dilate(&self, x: &ModularPair, r: f64, y: &ModularPair) -> Result<ModularPair> {
        mod_bullet(x, r, y)
    }

    fn has_dilation(&self) -> bool {
        true
    }

    fn distance(&self, a: &ModularPair, b: &ModularPair) -> f64 {
        a.distance(b)
    }
}

#[derive(Clone, Debug)]
pub struct HomGrSpace {
    pub n: usize,
}

impl PointSpace for HomGrSpace {
    type Point = GradedHom;

    fn name(&self) -> String {
        format!("Hom_gr(R^x, AU(C^{}))", self.n)
    }

    fn reflect(&self, x: &GradedHom, y: &GradedHom) -> Result<GradedHom> {
        hom_bullet(x, -1.0, y)
    }

    fn dilate(&self, x: &GradedHom, r: f64, y: &GradedHom) -> Result<GradedHom> {
        hom_bullet(x, r, y)
    }

    fn has_dilation(&self) -> bool {
        true
    }

    fn distance(&self, a: &GradedHom, b: &GradedHom) -> f64 {
        a.distance(b)
    }
}

/// Random standard subspace whose realified basis `[B | iB]` has condition at most 20.
pub fn sample_standard(n: usize) -> impl Fn(&mut SeededRng) -> StandardSubspace {
    move |rng| StandardSubspace::new(&sampling::standard_basis(rng, n, 20.0)).expect("sampled basis is standard")
}

pub fn sample_modular(n: usize) -> impl Fn(&mut SeededRng) -> ModularPair {
    let inner = sample_standard(n);
    move |rng| modular_objects(&inner(rng)).expect("sampled subspace is standard")
}

pub fn sample_graded_hom(n: usize) -> impl Fn(&mut SeededRng) -> GradedHom {
    let inner = sample_modular(n);
    move |rng| graded_hom_of(&inner(rng)).expect("sampled pair is modular")
}

/// `A_real = F*(i log Δ)F` in the orthonormal frame `F` of `Fix(J_V)` returned by
/// [`Conjugation::fixed_frame`]. The result is real skew-symmetric.
pub fn loos_generator(v: &StandardSubspace) -> Result<(Conjugation, RMat)> {
    let p = modular_objects(v)?;
    let a = linalg::positive_log(p.delta())? * I;
    let f = p.j().fixed_frame();
    let ar = f.adjoint() * a * &f;
    let scale = ar.norm().max(1.0);
    let imag = ar.map(|z| z.im).norm() / scale;
    if imag > MODEL_GAP {
        return Err(Error::ModularRelationViolated { residual: imag });
    }
    Ok((p.j().clone(), ar.map(|z| z.re)))
}

/// Inverse of [`loos_generator`]: `Δ = exp(−iA)` with `A = F A_real F*`, then `Φ(Δ, J)`.
pub fn loos_standard(j: &Conjugation, a_real: &RMat) -> Result<StandardSubspace> {
    let n = j.dim();
    if a_real.shape() != (n, n) {
        return Err(Error::DimensionMismatch { expected: n, got: a_real.nrows() });
    }
    let skew = (a_real + a_real.transpose()).norm() / a_real.norm().max(1.0);
    if skew > MODEL_GAP {
        return Err(Error::NotSkew { residual: skew });
    }
    let f = j.fixed_frame();
    let a = &f * linalg::complexify(a_real) * f.adjoint();
    // exp(−iA) with −iA hermitian: the hermitian generator of Δ is H = −iA
    let h = linalg::hermitian_part(&(a * c64(0.0, -1.0)));
    let delta = linalg::hermitian_function(&h, |x| c64(x.exp(), 0.0));
    standard_from_modular(&ModularPair::new(delta, j.clone())?)
}

/// Sample times at which the constraint `J U_t J = U_{−t}` is checked.
const CONSTRAINT_TIMES: [f64; 5] = [-2.3, -0.7, 0.4, 1.0, 3.1];

/// Geodesic `γ(t) = U_{t/2} V` with `U_t = exp(itH)` and `J_V U_t J_V = U_{−t}`.
#[derive(Clone, Debug)]
pub struct StandGeodesic {
    base: StandardSubspace,
    modular: ModularPair,
    h: CMat,
    pub constraint_residual: f64,
}

/// `max_t ‖J U_t J − U_{−t}‖` over [`CONSTRAINT_TIMES`].
pub fn invertibility_residual(j: &Conjugation, h: &CMat) -> f64 {
    CONSTRAINT_TIMES
        .iter()
        .map(|&t| {
            let lhs = j.conjugate_linear(&linalg::unitary_group(h, t));
            (lhs - linalg::unitary_group(h, -t)).norm()
        })
        .fold(0.0, f64::max)
}

pub fn geodesic_standard(v: &StandardSubspace, h: &CMat) -> Result<StandGeodesic> {
    if h.shape() != (v.dim(), v.dim()) {
        return Err(Error::DimensionMismatch { expected: v.dim(), got: h.nrows() });
    }
    let herm = linalg::hermitian_residual(h);
    if herm > MODEL_GAP * h.norm().max(1.0) {
        return Err(Error::InvalidArgument(format!("generator is not hermitian (residual {herm:e})")));
    }
    let h = linalg::hermitian_part(h);
    let modular = modular_objects(v)?;
    let residual = invertibility_residual(modular.j(), &h);
    if residual > GEODESIC {
        return Err(Error::InvertibilityConstraintViolated { residual });
    }
    Ok(StandGeodesic { base: v.clone(), modular, h, constraint_residual: residual })
}

impl StandGeodesic {
    pub fn base(&self) -> &StandardSubspace {
        &self.base
    }

    pub fn generator(&self) -> &CMat {
        &self.h
    }

    pub fn modular(&self) -> &ModularPair {
        &self.modular
    }

    /// `U_t = exp(itH)`.
    pub fn u(&self, t: f64) -> CMat {
        linalg::unitary_group(&self.h, t)
    }

    pub fn eval(&self, t: f64) -> StandardSubspace {
        self.base.transform_linear(&self.u(t / 2.0)).expect("unitary image of a standard subspace")
    }

    pub fn to_geodesic(&self) -> Geodesic<StandardSubspace> {
        let me = self.clone();
        Geodesic::new(move |t| me.eval(t))
    }

    /// `max_t ‖J_{γ(t)} − U_t J‖`, computing `J_{γ(t)}` from scratch.
    pub fn u_rel_residual(&self, ts: &[f64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &t in ts {
            let jt = modular_objects(&self.eval(t))?;
            let expected = self.u(t) * self.modular.j().matrix();
            worst = worst.max(linalg::rel_dist(jt.j().matrix(), &expected));
        }
        Ok(worst)
    }
}

/// Minimises `f` over `[lo, hi]` by a coarse scan followed by golden-section search.
/// Returns the minimiser and the minimum.
pub fn fit_alpha(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    const SCAN: usize = 120;
    let step = (hi - lo) / SCAN as f64;
    let mut best = (lo, f(lo));
    for k in 1..=SCAN {
        let a = lo + step * k as f64;
        let v = f(a);
        if v < best.1 {
            best = (a, v);
        }
    }
    let (mut a, mut b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-12 * (1.0 + best.0.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let m = (a + b) / 2.0;
    let fm = f(m);
    if fm <= best.1 {
        (m, fm)
    } else {
        best
    }
}

/// Element `(b, r)` of `G_α = R ⋊ R^×`.
pub type GAlphaElement = (f64, f64);

/// `ζ(r) = sign(r)|r|^α`.
pub fn zeta(alpha: f64, r: f64) -> f64 {
    r.signum() * r.abs().powf(alpha)
}

/// `(b₁, r₁)(b₂, r₂) = (b₁ + ζ(r₁)b₂, r₁r₂)`.
pub fn g_alpha_mul(alpha: f64, x: GAlphaElement, y: GAlphaElement) -> GAlphaElement {
    (x.0 + zeta(alpha, x.1) * y.0, x.1 * y.1)
}

const COMMUTATION_S: [f64; 4] = [-1.0, -0.4, 0.3, 1.2];
const COMMUTATION_T: [f64; 3] = [-1.0, 0.5, 1.5];

/// Antiunitary representation `U_{(b, ±e^s)} = U_b W_s (J)` of `G_α`.
#[derive(Clone, Debug)]
pub struct GAlphaRep {
    pub alpha: f64,
    pub fitted_alpha: f64,
    h: CMat,
    modular: ModularPair,
}

fn commutation_residual(p: &ModularPair, h: &CMat, alpha: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for &s in &COMMUTATION_S {
        let w = p.delta_it(-s / (2.0 * PI));
        for &t in &COMMUTATION_T {
            let lhs = &w * linalg::unitary_group(h, t) * w.adjoint();
            let rhs = linalg::unitary_group(h, (alpha * s).exp() * t);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

/// Builds the `G_α` representation of a dilation invariant geodesic. The exponent is
/// refitted from the commutation relation `W_s U_t W_{−s} = U_{e^{αs}t}` on a fixed grid.
pub fn dilation_rep_from_geodesic(gamma: &StandGeodesic, alpha: f64) -> Result<GAlphaRep> {
    let p = gamma.modular();
    let h = gamma.generator();
    let residual = commutation_residual(p, h, alpha);
    let (fitted, _) = fit_alpha(|a| commutation_residual(p, h, a), alpha - 3.0, alpha + 3.0);
    if residual > GEODESIC {
        return Err(Error::NotDilationInvariant { alpha: fitted, residual });
    }
    Ok(GAlphaRep { alpha, fitted_alpha: fitted, h: h.clone(), modular: p.clone() })
}

impl GAlphaRep {
    pub fn eval(&self, g: GAlphaElement) -> AuOperator {
        let (b, r) = g;
        assert!(r != 0.0, "G_alpha elements have r in R^x");
        let ub = linalg::unitary_group(&self.h, b);
        let ws = self.modular.delta_it(-r.abs().ln() / (2.0 * PI));
        let u = AuOperator::unitary(ub * ws);
        if r < 0.0 {
            u.compose(&AuOperator::from_conjugation(self.modular.j()))
        } else {
            u
        }
    }

    /// `max ‖U(g₁)U(g₂) − U(g₁g₂)‖` over the given pairs.
    pub fn homomorphism_residual(&self, pairs: &[(GAlphaElement, GAlphaElement)]) -> f64 {
        pairs
            .iter()
            .map(|&(x, y)| {
                let lhs = self.eval(x).compose(&self.eval(y));
                lhs.distance(&self.eval(g_alpha_mul(self.alpha, x, y)))
            })
            .fold(0.0, f64::max)
    }
}

/// Random `G_α` elements with `b ∈ [−2, 2]` and `|r| ∈ [e^{−1.5}, e^{1.5}]`.
pub fn sample_g_alpha(rng: &mut SeededRng) -> GAlphaElement {
    use rand::Rng;
    let b = rng.gen_range(-2.0..2.0);
    let r = sampling::sign(rng) * rng.gen_range(-1.5f64..1.5).exp();
    (b, r)
}

/// `τ(g) = JgJ` on unitaries.
pub fn tau(j: &Conjugation, g: &CMat) -> CMat {
    j.conjugate_linear(g)
}

/// `q(V) = J_V`.
pub fn conjugation_of(v: &StandardSubspace) -> Result<Conjugation> {
    Ok(modular_objects(v)?.j().clone())
}

/// `Φ ∘ Ψ⁻¹` on the graded homomorphism model.
pub fn standard_of_hom(g: &GradedHom) -> Result<StandardSubspace> {
    standard_from_modular(&crate::standard::modular_of(g)?)
}

/// Residual of `JAJ = A` for the complex generator `A = i log Δ_V`.
pub fn loos_commutation_residual(v: &StandardSubspace) -> Result<f64> {
    let p = modular_objects(v)?;
    let a = linalg::positive_log(p.delta())? * I;
    Ok(linalg::rel_dist(&p.j().conjugate_linear(&a), &a))
}
