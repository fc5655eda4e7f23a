//! Grid model of the antiunitary positive energy representation of `Aff(R)` in the
//! logarithmic variable `θ = log x`:
//!
//! * `U_b f(θ) = e^{i b e^θ} f(θ)` (positive generator `e^θ`),
//! * `W_s f(θ) = f(θ + s)` (an FFT phase shift), with `Δ^{it} = W_{−2πt}`,
//! * `J f = conj(f)`.
//!
//! Functions live on `N` equispaced points of `[−L, L)`; frequencies are
//! `ω = 2π·fftfreq(N, 2L/N)`. The standard subspace `V = Fix(JΔ^{1/2})` consists of the
//! `f` whose transform is `F(ω) = e^{πω/2} G(ω)` with `G(−ω) = conj(G(ω))`.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::fit_alpha;
use crate::linalg::{c64, C64};

/// `U_b V ⊆ V` holds for `b ≥ 0` (`+1`) rather than for `b ≤ 0` (`−1`); fixed by the
/// oracle run and guarded by a regression test.
pub const INCLUSION_ORIENTATION: i8 = 1;

/// Largest admissible value of the multiplier `e^{−πω}` on the spectral support.
pub const MULTIPLIER_CAP: f64 = 1e12;

/// Relative level below which FFT bins count as numerical zero (outside the support).
pub const SUPPORT_FLOOR: f64 = 1e-12;

/// Default grid and band.
pub const DEFAULT_N: usize = 4096;
pub const DEFAULT_L: f64 = 20.0;
pub const DEFAULT_BAND: f64 = 8.0;

/// Centres and widths of the Gaussian test vectors.
pub const TEST_VECTORS: [(f64, f64); 5] = [(-4.0, 1.0), (-3.0, 1.0), (-3.0, 1.25), (-2.5, 1.0), (-2.0, 1.0)];

/// Truncated log-frequency grid with cached FFT plans.
#[derive(Clone)]
pub struct AffineGrid {
    n: usize,
    l: f64,
    band: f64,
    theta: Vec<f64>,
    omega: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for AffineGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AffineGrid").field("n", &self.n).field("l", &self.l).field("band", &self.band).finish()
    }
}

/// Samples of a function on the grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    pub l: f64,
    #[serde(with = "crate::json::cvec")]
    pub values: Vec<C64>,
}

/// `(b, e^s)` of `Aff(R)`, optionally composed with `J`: acts as `U_b W_s J^{odd}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineElement {
    pub b: f64,
    pub s: f64,
    pub odd: bool,
}

impl AffineElement {
    pub fn new(b: f64, s: f64) -> Self {
        Self { b, s, odd: false }
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn j() -> Self {
        Self { b: 0.0, s: 0.0, odd: true }
    }

    /// Product in `Aff(R) ⋊ {1, J}`, using `W_s U_b W_{−s} = U_{e^s b}` and `J U_b J = U_{−b}`.
    pub fn mul(&self, other: &AffineElement) -> AffineElement {
        let b2 = if self.odd { -other.b } else { other.b };
        AffineElement { b: self.b + self.s.exp() * b2, s: self.s + other.s, odd: self.odd ^ other.odd }
    }
}

impl AffineGrid {
    pub fn new(n: usize, l: f64, band: f64) -> Result<Self> {
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("grid size must be a power of two >= 4, got {n}")));
        }
        if !(l > 0.0 && l.is_finite()) || !(band > 0.0 && band.is_finite()) {
            return Err(Error::InvalidArgument(format!("need L > 0 and band > 0, got L = {l}, band = {band}")));
        }
        let h = 2.0 * l / n as f64;
        let theta = (0..n).map(|j| -l + h * j as f64).collect();
        let omega = (0..n)
            .map(|k| {
                let k = if k < n / 2 { k as f64 } else { k as f64 - n as f64 };
                2.0 * PI * k / (n as f64 * h)
            })
            .collect();
        let mut planner = FftPlanner::new();
        Ok(Self { n, l, band, theta, omega, forward: planner.plan_fft_forward(n), inverse: planner.plan_fft_inverse(n) })
    }

    pub fn default_grid() -> Self {
        Self::new(DEFAULT_N, DEFAULT_L, DEFAULT_BAND).expect("valid defaults")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn band(&self) -> f64 {
        self.band
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.l / self.n as f64
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    /// Largest admissible shift `|s|`.
    pub fn shift_budget(&self) -> f64 {
        self.l / 2.0
    }

    fn check(&self, f: &GridFunction) -> Result<()> {
        if f.values.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: f.values.len() });
        }
        if f.l != self.l {
            return Err(Error::InvalidArgument(format!("grid half-width {} differs from {}", f.l, self.l)));
        }
        Ok(())
    }

    pub fn function(&self, values: Vec<C64>) -> Result<GridFunction> {
        let f = GridFunction { l: self.l, values };
        self.check(&f)?;
        Ok(f)
    }

    pub fn from_fn(&self, f: impl Fn(f64) -> C64) -> GridFunction {
        GridFunction { l: self.l, values: self.theta.iter().map(|&t| f(t)).collect() }
    }

    pub fn fft(&self, f: &[C64]) -> Vec<C64> {
        let mut buf = f.to_vec();
        self.forward.process(&mut buf);
        buf
    }

    pub fn ifft(&self, f: &[C64]) -> Vec<C64> {
        let mut buf = f.to_vec();
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        buf.iter_mut().for_each(|z| *z *= scale);
        buf
    }

    /// Discrete `L²` norm with weight `dθ`.
    pub fn norm(&self, f: &GridFunction) -> f64 {
        (f.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.spacing()).sqrt()
    }

    /// `⟨f, g⟩ = Σ conj(f) g dθ`.
    pub fn inner(&self, f: &GridFunction, g: &GridFunction) -> C64 {
        f.values.iter().zip(&g.values).map(|(a, b)| a.conj() * b).sum::<C64>() * self.spacing()
    }

    pub fn sub(&self, f: &GridFunction, g: &GridFunction) -> GridFunction {
        GridFunction { l: self.l, values: f.values.iter().zip(&g.values).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, f: &GridFunction, z: C64) -> GridFunction {
        GridFunction { l: self.l, values: f.values.iter().map(|a| a * z).collect() }
    }

    /// `U_b f = e^{i b e^θ} f`.
    pub fn translate(&self, b: f64, f: &GridFunction) -> Result<GridFunction> {
        self.check(f)?;
        let values = f.values.iter().zip(&self.theta).map(|(z, t)| z * c64(0.0, b * t.exp()).exp()).collect();
        Ok(GridFunction { l: self.l, values })
    }

    /// `W_s f = f(· + s)` by the phase `e^{iωs}`.
    pub fn dilate(&self, s: f64, f: &GridFunction) -> Result<GridFunction> {
        self.check(f)?;
        if s.abs() > self.shift_budget() {
            return Err(Error::ShiftOutOfRange { shift: s, budget: self.shift_budget() });
        }
        let mut spec = self.fft(&f.values);
        for (z, w) in spec.iter_mut().zip(&self.omega) {
            *z *= c64(0.0, w * s).exp();
        }
        Ok(GridFunction { l: self.l, values: self.ifft(&spec) })
    }

    pub fn conjugate(&self, f: &GridFunction) -> GridFunction {
        GridFunction { l: self.l, values: f.values.iter().map(|z| z.conj()).collect() }
    }

    /// `U_b W_s J^{odd} f`.
    pub fn affine_apply(&self, el: &AffineElement, f: &GridFunction) -> Result<GridFunction> {
        let g = if el.odd { self.conjugate(f) } else { f.clone() };
        let g = if el.s != 0.0 { self.dilate(el.s, &g)? } else { g };
        if el.b != 0.0 {
            self.translate(el.b, &g)
        } else {
            Ok(g)
        }
    }

    /// `S f = J Δ^{1/2} f`, with `Δ^{1/2}` the multiplier `e^{−πω}`. Out-of-band bins below
    /// [`SUPPORT_FLOOR`] of the spectral peak are treated as zero; on the remaining support
    /// the multiplier must stay below [`MULTIPLIER_CAP`]. In-band roundoff is amplified by
    /// up to `e^{π·band}`.
    pub fn tomita_apply(&self, f: &GridFunction) -> Result<GridFunction> {
        self.check(f)?;
        let mut spec = self.fft(&f.values);
        let peak = spec.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
        for (z, w) in spec.iter_mut().zip(&self.omega) {
            if w.abs() > self.band && z.norm() <= SUPPORT_FLOOR * peak {
                *z = c64(0.0, 0.0);
                continue;
            }
            let m = (-PI * w).exp();
            if m > MULTIPLIER_CAP {
                return Err(Error::SpectralOverflow { multiplier: m });
            }
            *z *= m;
        }
        Ok(self.conjugate(&GridFunction { l: self.l, values: self.ifft(&spec) }))
    }

    /// Orthogonal projection onto `V` in the parametrisation `F = e^{πω/2}G`,
    /// `G(−ω) = conj(G(ω))`; the Nyquist bin is dropped.
    pub fn project_v(&self, f: &GridFunction) -> Result<GridFunction> {
        self.check(f)?;
        let n = self.n;
        let spec = self.fft(&f.values);
        let mut out = vec![c64(0.0, 0.0); n];
        for k in 0..n {
            if k == n / 2 {
                continue;
            }
            let a = (PI * self.omega[k] / 2.0).exp();
            let fk = spec[k];
            let fneg = spec[(n - k) % n];
            let g = (fk * a + fneg.conj() / a) / (a * a + 1.0 / (a * a));
            out[k] = g * a;
        }
        Ok(GridFunction { l: self.l, values: self.ifft(&out) })
    }

    pub fn dist_to_v(&self, f: &GridFunction) -> Result<f64> {
        Ok(self.norm(&self.sub(f, &self.project_v(f)?)))
    }

    /// Unit vector of `V` from the real Gaussian `G` centred at `c` with width `sigma`,
    /// band-limited to `|ω| ≤ band`.
    pub fn gaussian_in_v(&self, c: f64, sigma: f64) -> GridFunction {
        let g: Vec<C64> = self.theta.iter().map(|t| c64((-(t - c).powi(2) / (2.0 * sigma * sigma)).exp(), 0.0)).collect();
        let mut spec = self.fft(&g);
        for (k, (z, w)) in spec.iter_mut().zip(&self.omega).enumerate() {
            *z = if w.abs() > self.band || k == self.n / 2 { c64(0.0, 0.0) } else { *z * (PI * w / 2.0).exp() };
        }
        let f = GridFunction { l: self.l, values: self.ifft(&spec) };
        let nrm = self.norm(&f);
        self.scale(&f, c64(1.0 / nrm, 0.0))
    }

    pub fn test_vectors(&self) -> Vec<GridFunction> {
        TEST_VECTORS.iter().map(|&(c, s)| self.gaussian_in_v(c, s)).collect()
    }

    /// `max_f ‖W_s U_b W_{−s} f − U_{e^s b} f‖`.
    pub fn borchers_residual(&self, pairs: &[(f64, f64)], vs: &[GridFunction]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &(b, s) in pairs {
            for v in vs {
                let lhs = self.dilate(s, &self.translate(b, &self.dilate(-s, v)?)?)?;
                let rhs = self.translate(s.exp() * b, v)?;
                worst = worst.max(self.norm(&self.sub(&lhs, &rhs)));
            }
        }
        Ok(worst)
    }

    /// `max ‖g₁(g₂ f) − (g₁g₂) f‖` over the given pairs and vectors.
    pub fn group_law_residual(&self, pairs: &[(AffineElement, AffineElement)], vs: &[GridFunction]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (a, b) in pairs {
            for v in vs {
                let lhs = self.affine_apply(a, &self.affine_apply(b, v)?)?;
                let rhs = self.affine_apply(&a.mul(b), v)?;
                worst = worst.max(self.norm(&self.sub(&lhs, &rhs)));
            }
        }
        Ok(worst)
    }

    /// `⟨f, e^θ f⟩`, the quadratic form of the generator of `b ↦ U_b`.
    pub fn energy(&self, f: &GridFunction) -> f64 {
        f.values.iter().zip(&self.theta).map(|(z, t)| t.exp() * z.norm_sqr()).sum::<f64>() * self.spacing()
    }

    /// Fits `α` in `W_s U_b W_{−s} = U_{e^{αs} b}` on the given vectors.
    pub fn fit_commutation_alpha(&self, b: f64, s: f64, vs: &[GridFunction]) -> Result<(f64, f64)> {
        let mut lhs = Vec::with_capacity(vs.len());
        for v in vs {
            lhs.push(self.dilate(s, &self.translate(b, &self.dilate(-s, v)?)?)?);
        }
        let residual = |alpha: f64| -> f64 {
            vs.iter()
                .zip(&lhs)
                .map(|(v, l)| self.translate((alpha * s).exp() * b, v).map(|r| self.norm(&self.sub(l, &r))).unwrap_or(f64::INFINITY))
                .fold(0.0, f64::max)
        };
        Ok(fit_alpha(residual, -1.0, 3.0))
    }
}

/// Largest distance to `V` of `U_b v` over the vectors, for one `b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityRow {
    pub b: f64,
    pub max_distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub rows: Vec<MonotonicityRow>,
    /// `+1` if the inclusions hold for `b ≥ 0` and fail for `b < 0`, `−1` for the reverse,
    /// `0` if neither pattern is observed.
    pub orientation: i8,
    pub fitted_alpha: f64,
    pub alpha_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

/// `U_b V ⊆ V` for `b ≥ 0` (distances `≤ tol`) and a violation witness for `b < 0`
/// (some distance `≥ 100·tol`).
pub fn monotonicity_experiment(grid: &AffineGrid, bs: &[f64], vs: &[GridFunction], tol: f64) -> Result<MonotonicityReport> {
    for v in vs {
        let d = grid.dist_to_v(v)?;
        if d > tol * grid.norm(v).max(1.0) {
            return Err(Error::InvalidArgument(format!("test vector is not in V (distance {d:e})")));
        }
    }
    let mut rows = Vec::with_capacity(bs.len());
    for &b in bs {
        let mut worst: f64 = 0.0;
        for v in vs {
            worst = worst.max(grid.dist_to_v(&grid.translate(b, v)?)?);
        }
        rows.push(MonotonicityRow { b, max_distance: worst });
    }
    let holds = |sign: f64| {
        rows.iter().all(|r| {
            if r.b == 0.0 || r.b * sign > 0.0 {
                r.max_distance <= tol
            } else {
                r.max_distance >= 100.0 * tol
            }
        })
    };
    let orientation = if holds(1.0) {
        1
    } else if holds(-1.0) {
        -1
    } else {
        0
    };
    let (fitted_alpha, alpha_residual) = grid.fit_commutation_alpha(0.5, 0.3, vs)?;
    let pass = orientation == INCLUSION_ORIENTATION;
    Ok(MonotonicityReport { rows, orientation, fitted_alpha, alpha_residual, tol, pass })
}

/// Distances to `V` of the `W_s`-translates `W_s U_{−b} W_{−s} v = U_{−e^s b} v` of a
/// point off `V`; positive values show that `W` moves the geodesic `b ↦ U_b V`.
pub fn dilation_moves_geodesic(grid: &AffineGrid, b: f64, ss: &[f64], v: &GridFunction) -> Result<Vec<f64>> {
    ss.iter()
        .map(|&s| {
            let w = grid.dilate(s, &grid.translate(-b, &grid.dilate(-s, v)?)?)?;
            grid.dist_to_v(&w)
        })
        .collect()
}

/// `(b, distance)` rows as CSV.
pub fn curve_csv(rows: &[MonotonicityRow]) -> String {
    let mut out = String::from("b,max_distance\n");
    for r in rows {
        out.push_str(&format!("{},{:e}\n", r.b, r.max_distance));
    }
    out
}
