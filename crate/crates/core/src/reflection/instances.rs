//! Shipped reflection and dilation spaces, their samplers, and a few deliberately
//! broken laws used to exercise the harness.

use nalgebra::DVector;
use rand::Rng;

use super::PointSpace;
use crate::error::{Error, Result};
use crate::linalg::{rel_dist_real, RMat, RVec};
use crate::sampling::{self, SeededRng};

fn inverse(m: &RMat) -> Result<RMat> {
    m.clone().try_inverse().ok_or(Error::DegeneratePoint("singular matrix".into()))
}

fn vec_dist(a: &RVec, b: &RVec) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

/// Sampler for `GL_n(R)`: entries in `[−2, 2]`, condition number at most 10.
pub fn sample_gl(n: usize) -> impl Fn(&mut SeededRng) -> RMat {
    move |rng| sampling::well_conditioned_real(rng, n, 10.0)
}

/// Pairs `(e, e·exp(A))` with small `A`, for the power law.
pub fn near_pairs_gl(n: usize) -> impl Fn(&mut SeededRng) -> (RMat, RMat) {
    move |rng| {
        let e = sampling::well_conditioned_real(rng, n, 10.0);
        let a = sampling::uniform_real(rng, n, n, 0.05);
        let x = &e * a.exp();
        (e, x)
    }
}

/// Pairs `(e, e + δ)` with `|δ_i| ≤ 0.05`.
pub fn near_pairs_vector<F>(sampler: F) -> impl Fn(&mut SeededRng) -> (RVec, RVec)
where
    F: Fn(&mut SeededRng) -> RVec,
{
    move |rng| {
        let e = sampler(rng);
        let d = RVec::from_fn(e.len(), |_, _| rng.gen_range(-0.05..0.05));
        let x = &e + d;
        (e, x)
    }
}

/// A group with `g•h = g h⁻¹ g`, here `GL_n(R)`.
#[derive(Clone, Debug)]
pub struct GroupSpace {
    pub n: usize,
}

impl PointSpace for GroupSpace {
    type Point = RMat;

    fn name(&self) -> String {
        format!("group GL_{}(R)", self.n)
    }

    fn reflect(&self, g: &RMat, h: &RMat) -> Result<RMat> {
        Ok(g * inverse(h)? * g)
    }

    fn distance(&self, a: &RMat, b: &RMat) -> f64 {
        rel_dist_real(a, b)
    }
}

/// `GL_n(R)/O(n)` with `τ(g) = g^{−T}`: `gH • hH = g τ(g)⁻¹ τ(h) H = g gᵀ h^{−T} H`.
/// Cosets are compared through `g gᵀ`.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    pub n: usize,
}

impl PointSpace for CosetSpace {
    type Point = RMat;

    fn name(&self) -> String {
        format!("coset GL_{}(R)/O({})", self.n, self.n)
    }

    fn reflect(&self, g: &RMat, h: &RMat) -> Result<RMat> {
        Ok(g * g.transpose() * inverse(h)?.transpose())
    }

    fn distance(&self, a: &RMat, b: &RMat) -> f64 {
        rel_dist_real(&(a * a.transpose()), &(b * b.transpose()))
    }
}

/// The same product on `GL_n(R)` itself (trivial subgroup): `x•y = x xᵀ y^{−T}`.
#[derive(Clone, Debug)]
pub struct TwistedGroupSpace {
    pub n: usize,
}

impl PointSpace for TwistedGroupSpace {
    type Point = RMat;

    fn name(&self) -> String {
        format!("twisted GL_{}(R)", self.n)
    }

    fn reflect(&self, x: &RMat, y: &RMat) -> Result<RMat> {
        Ok(x * x.transpose() * inverse(y)?.transpose())
    }

    fn distance(&self, a: &RMat, b: &RMat) -> f64 {
        rel_dist_real(a, b)
    }
}

/// Positive definite matrices with `a•b = a b⁻¹ a`; the quotient of
/// [`TwistedGroupSpace`] under `g ↦ g gᵀ`.
#[derive(Clone, Debug)]
pub struct PositiveSpace {
    pub n: usize,
}

impl PositiveSpace {
    pub fn quotient(g: &RMat) -> RMat {
        g * g.transpose()
    }
}

impl PointSpace for PositiveSpace {
    type Point = RMat;

    fn name(&self) -> String {
        format!("Pos_{}(R)", self.n)
    }

    fn reflect(&self, a: &RMat, b: &RMat) -> Result<RMat> {
        Ok(a * inverse(b)? * a)
    }

    fn distance(&self, a: &RMat, b: &RMat) -> f64 {
        rel_dist_real(a, b)
    }
}

/// `V^× = {β(v,v) ≠ 0}` with `s_x(y) = −y + 2 β(x,y)/β(x,x) x`.
#[derive(Clone, Debug)]
pub struct BilinearSpace {
    pub form: RMat,
}

impl BilinearSpace {
    /// `diag(1, −1, −1)` on `R³`.
    pub fn lorentz3() -> Self {
        Self { form: RMat::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, -1.0])) }
    }

    pub fn euclidean(n: usize) -> Self {
        Self { form: RMat::identity(n, n) }
    }

    pub fn beta(&self, x: &RVec, y: &RVec) -> f64 {
        x.dot(&(&self.form * y))
    }

    /// Rejection sampler: entries in `[−2, 2]`, `|β(v,v)| ≥ 0.5`.
    pub fn sampler(&self) -> impl Fn(&mut SeededRng) -> RVec + '_ {
        move |rng| loop {
            let v = RVec::from_fn(self.form.nrows(), |_, _| rng.gen_range(-2.0..2.0));
            if self.beta(&v, &v).abs() >= 0.5 {
                return v;
            }
        }
    }
}

impl PointSpace for BilinearSpace {
    type Point = RVec;

    fn name(&self) -> String {
        format!("bilinear R^{}", self.form.nrows())
    }

    fn reflect(&self, x: &RVec, y: &RVec) -> Result<RVec> {
        let bxx = self.beta(x, x);
        if bxx.abs() <= 1e-12 * x.norm_squared().max(1e-300) {
            return Err(Error::DegeneratePoint(format!("isotropic vector, beta(x,x) = {bxx:e}")));
        }
        Ok(x * (2.0 * self.beta(x, y) / bxx) - y)
    }

    fn distance(&self, a: &RVec, b: &RVec) -> f64 {
        vec_dist(a, b)
    }
}

/// `(m, n) • (m', n') = (m•m', n•n')`, and likewise for dilations.
#[derive(Clone, Debug)]
pub struct ProductSpace<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: PointSpace, B: PointSpace> PointSpace for ProductSpace<A, B> {
    type Point = (A::Point, B::Point);

    fn name(&self) -> String {
        format!("{} x {}", self.left.name(), self.right.name())
    }

    fn reflect(&self, x: &Self::Point, y: &Self::Point) -> Result<Self::Point> {
        Ok((self.left.reflect(&x.0, &y.0)?, self.right.reflect(&x.1, &y.1)?))
    }

    fn dilate(&self, x: &Self::Point, r: f64, y: &Self::Point) -> Result<Self::Point> {
        Ok((self.left.dilate(&x.0, r, &y.0)?, self.right.dilate(&x.1, r, &y.1)?))
    }

    fn has_dilation(&self) -> bool {
        self.left.has_dilation() && self.right.has_dilation()
    }

    fn distance(&self, a: &Self::Point, b: &Self::Point) -> f64 {
        self.left.distance(&a.0, &b.0).max(self.right.distance(&a.1, &b.1))
    }
}

/// A homomorphism `γ: R^× → GL_n(R)` given by `γ(e^t) = exp(tX)`, `γ(−1) = σ`, with
/// `σ² = 1` and `σXσ = X`.
#[derive(Clone, Debug)]
pub struct HomPoint {
    pub x: RMat,
    pub sigma: RMat,
}

impl HomPoint {
    pub fn eval(&self, r: f64) -> RMat {
        let u = (&self.x * r.abs().ln()).exp();
        if r < 0.0 {
            u * &self.sigma
        } else {
            u
        }
    }

    fn distance(&self, other: &HomPoint) -> f64 {
        rel_dist_real(&self.x, &other.x).max(rel_dist_real(&self.sigma, &other.sigma))
    }
}

/// Random `(X, σ)`: `σ = P diag(±1) P⁻¹` and `X = P X₀ P⁻¹` with `X₀` block diagonal
/// along the sign blocks.
pub fn sample_hom_point(n: usize) -> impl Fn(&mut SeededRng) -> HomPoint {
    move |rng| {
        let p = sampling::well_conditioned_real(rng, n, 5.0);
        let pinv = p.clone().try_inverse().expect("well conditioned");
        let signs: Vec<f64> = (0..n).map(|_| sampling::sign(rng)).collect();
        let x0 = RMat::from_fn(n, n, |i, j| if signs[i] == signs[j] { rng.gen_range(-0.5..0.5) } else { 0.0 });
        let s = RMat::from_diagonal(&DVector::from_vec(signs));
        HomPoint { x: &p * x0 * &pinv, sigma: &p * s * &pinv }
    }
}

/// Pairs `(e, g·e)` with `g = exp(B)` small, acting by conjugation.
pub fn near_pairs_hom(n: usize) -> impl Fn(&mut SeededRng) -> (HomPoint, HomPoint) {
    move |rng| {
        let e = sample_hom_point(n)(rng);
        let b = sampling::uniform_real(rng, n, n, 0.05);
        let (g, ginv) = (b.clone().exp(), (-b).exp());
        let x = HomPoint { x: &g * &e.x * &ginv, sigma: &g * &e.sigma * &ginv };
        (e, x)
    }
}

/// `Hom(R^×, GL_n(R))` with `(γ •_r η)(s) = γ(r) η(s) γ(r)⁻¹`, evaluated in the group.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub n: usize,
}

impl PointSpace for HomSpace {
    type Point = HomPoint;

    fn name(&self) -> String {
        format!("Hom(R^x, GL_{}(R))", self.n)
    }

    fn reflect(&self, x: &HomPoint, y: &HomPoint) -> Result<HomPoint> {
        self.dilate(x, -1.0, y)
    }

    fn dilate(&self, g: &HomPoint, r: f64, h: &HomPoint) -> Result<HomPoint> {
        let a = g.eval(r);
        let ainv = inverse(&a)?;
        Ok(HomPoint { x: &a * &h.x * &ainv, sigma: &a * &h.sigma * &ainv })
    }

    fn has_dilation(&self) -> bool {
        true
    }

    fn distance(&self, a: &HomPoint, b: &HomPoint) -> f64 {
        a.distance(b)
    }
}

/// Pairs `(x, σ) ∈ gl_n × Inv(GL_n)` with `Ad_σ x = x`:
/// `(x,σ)•(y,η) = (Ad_σ y, σησ)` and `(x,σ) •_{e^t} (y,η) = (e^{t ad x} y, exp(tx) η exp(−tx))`.
/// The adjoint exponential is computed on `gl_n` as an `n²×n²` matrix exponential.
#[derive(Clone, Debug)]
pub struct PairSpace {
    pub n: usize,
}

impl PairSpace {
    /// Matrix of `ad x` on column-major `vec(y)`.
    fn ad(x: &RMat) -> RMat {
        let n = x.nrows();
        let id = RMat::identity(n, n);
        id.kronecker(x) - x.transpose().kronecker(&id)
    }

    fn exp_ad(x: &RMat, t: f64, y: &RMat) -> RMat {
        let n = y.nrows();
        let v = (Self::ad(x) * t).exp() * RVec::from_column_slice(y.as_slice());
        RMat::from_column_slice(n, n, v.as_slice())
    }
}

impl PointSpace for PairSpace {
    type Point = HomPoint;

    fn name(&self) -> String {
        format!("pairs (x, sigma) in gl_{} x Inv", self.n)
    }

    fn reflect(&self, a: &HomPoint, b: &HomPoint) -> Result<HomPoint> {
        let s = &a.sigma;
        let sinv = inverse(s)?;
        Ok(HomPoint { x: s * &b.x * &sinv, sigma: s * &b.sigma * s })
    }

    fn dilate(&self, a: &HomPoint, r: f64, b: &HomPoint) -> Result<HomPoint> {
        let b = if r < 0.0 { self.reflect(a, b)? } else { b.clone() };
        let t = r.abs().ln();
        let u = (&a.x * t).exp();
        let uinv = (&a.x * -t).exp();
        Ok(HomPoint { x: Self::exp_ad(&a.x, t, &b.x), sigma: u * &b.sigma * uinv })
    }

    fn has_dilation(&self) -> bool {
        true
    }

    fn distance(&self, a: &HomPoint, b: &HomPoint) -> f64 {
        a.distance(b)
    }
}

/// `D(r) = diag(sgn(r)^{ε_i} |r|^{λ_i})`, a homomorphism `R^× → GL_n(R)`.
#[derive(Clone, Debug)]
pub struct DiagonalCharacter {
    pub lambdas: Vec<f64>,
    pub parities: Vec<bool>,
}

impl DiagonalCharacter {
    pub fn eval(&self, r: f64) -> RMat {
        let d: Vec<f64> = self
            .lambdas
            .iter()
            .zip(&self.parities)
            .map(|(&l, &odd)| {
                let m = r.abs().powf(l);
                if odd && r < 0.0 {
                    -m
                } else {
                    m
                }
            })
            .collect();
        RMat::from_diagonal(&DVector::from_vec(d))
    }

    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }
}

/// `GL_n(R)` with `g •_r h = g α_r(g⁻¹h)` for `α_r = Ad_{D(r)}`.
#[derive(Clone, Debug)]
pub struct AlphaGroupSpace {
    pub character: DiagonalCharacter,
}

impl PointSpace for AlphaGroupSpace {
    type Point = RMat;

    fn name(&self) -> String {
        format!("GL_{}(R) with alpha = Ad D(r)", self.character.dim())
    }

    fn reflect(&self, g: &RMat, h: &RMat) -> Result<RMat> {
        self.dilate(g, -1.0, h)
    }

    fn dilate(&self, g: &RMat, r: f64, h: &RMat) -> Result<RMat> {
        let d = self.character.eval(r);
        let dinv = self.character.eval(1.0 / r);
        Ok(g * d * inverse(g)? * h * dinv)
    }

    fn has_dilation(&self) -> bool {
        true
    }

    fn distance(&self, a: &RMat, b: &RMat) -> f64 {
        rel_dist_real(a, b)
    }
}

/// `a •_r b = a + α(r)(b − a)` on `R^n`. With `α(r) = r` this is the affine line.
#[derive(Clone, Debug)]
pub struct VectorDilationSpace {
    pub character: DiagonalCharacter,
}

impl VectorDilationSpace {
    pub fn affine(n: usize) -> Self {
        Self { character: DiagonalCharacter { lambdas: vec![1.0; n], parities: vec![true; n] } }
    }
}

impl PointSpace for VectorDilationSpace {
    type Point = RVec;

    fn name(&self) -> String {
        format!("vector dilation R^{}", self.character.dim())
    }

    fn reflect(&self, a: &RVec, b: &RVec) -> Result<RVec> {
        self.dilate(a, -1.0, b)
    }

    fn dilate(&self, a: &RVec, r: f64, b: &RVec) -> Result<RVec> {
        Ok(a + self.character.eval(r) * (b - a))
    }

    fn has_dilation(&self) -> bool {
        true
    }

    fn distance(&self, a: &RVec, b: &RVec) -> f64 {
        vec_dist(a, b)
    }
}

pub fn sample_vector(n: usize) -> impl Fn(&mut SeededRng) -> RVec {
    move |rng| RVec::from_fn(n, |_, _| rng.gen_range(-2.0..2.0))
}

/// `R^n` with `a•b = 2a − b`, acted on transitively by the affine group, with dilations
/// `g.0 •_r y = g β(r) g⁻¹.y`, `β(r) = r^λ`, for `r > 0`. The lift `g` of a point `x`
/// is `y ↦ x + L_x y` with a point-dependent linear part, which cancels in the result.
#[derive(Clone, Debug)]
pub struct HomDilSpace {
    pub n: usize,
    pub lambda: f64,
}

impl HomDilSpace {
    fn lift_linear(x: &RVec) -> RMat {
        let n = x.len();
        let skew = RMat::from_fn(n, n, |i, j| {
            let v = 0.3 * (x[i] + x[j]);
            match i.cmp(&j) {
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Greater => -v,
                std::cmp::Ordering::Equal => 0.0,
            }
        });
        skew.exp() * (1.0 + 0.1 * x.norm())
    }
}

impl PointSpace for HomDilSpace {
    type Point = RVec;

    fn name(&self) -> String {
        format!("affine R^{} with beta(r) = r^{}", self.n, self.lambda)
    }

    fn reflect(&self, a: &RVec, b: &RVec) -> Result<RVec> {
        Ok(a * 2.0 - b)
    }

    fn dilate(&self, x: &RVec, r: f64, y: &RVec) -> Result<RVec> {
        let y = if r < 0.0 { self.reflect(x, y)? } else { y.clone() };
        let l = Self::lift_linear(x);
        let linv = inverse(&l)?;
        let pulled = linv * (y - x);
        Ok(x + l * (pulled * r.abs().powf(self.lambda)))
    }

    fn has_dilation(&self) -> bool {
        true
    }

    fn distance(&self, a: &RVec, b: &RVec) -> f64 {
        vec_dist(a, b)
    }
}

/// Broken law `x•y = x − y` on `R`.
#[derive(Clone, Debug)]
pub struct DifferenceLine;

impl PointSpace for DifferenceLine {
    type Point = f64;

    fn name(&self) -> String {
        "broken x - y".into()
    }

    fn reflect(&self, x: &f64, y: &f64) -> Result<f64> {
        Ok(x - y)
    }

    fn distance(&self, a: &f64, b: &f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1.0)
    }
}

/// Broken dilations on `R`: `r_x(y) = 2x − y + (r + 1)`, which compose additively,
/// `r_x∘s_x = (r + s)_x` up to a shift, instead of multiplicatively.
#[derive(Clone, Debug)]
pub struct AdditiveDilationLine;

impl PointSpace for AdditiveDilationLine {
    type Point = f64;

    fn name(&self) -> String {
        "broken additive dilation".into()
    }

    fn reflect(&self, x: &f64, y: &f64) -> Result<f64> {
        Ok(2.0 * x - y)
    }

    fn dilate(&self, x: &f64, r: f64, y: &f64) -> Result<f64> {
        Ok(2.0 * x - y + (r + 1.0))
    }

    fn has_dilation(&self) -> bool {
        true
    }

    fn distance(&self, a: &f64, b: &f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1.0)
    }
}

pub fn sample_real(rng: &mut SeededRng) -> f64 {
    rng.gen_range(-2.0..2.0)
}
