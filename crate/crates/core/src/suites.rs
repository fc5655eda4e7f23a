//! The verification suites run by the command line tool: one function per subcommand,
//! each returning deterministic [`Suite`]s for a seed and configuration.

use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::affine::{dilation_moves_geodesic, monotonicity_experiment, AffineElement, AffineGrid, DEFAULT_BAND, INCLUSION_ORIENTATION};
use crate::antilinear::AuOperator;
use crate::bgl::{bgl_equivariance_check, bgl_map, conjugate_hom, positive_energy, semigroup_membership, AuRep};
use crate::conformal::{
    bracket_at, cone_point, field_of, grading, lie_grade_check, ConfWord, Generator, LieTriple,
};
use crate::error::{Error, Result};
use crate::geometry::{
    dilation_rep_from_geodesic, geodesic_standard, hom_bullet, loos_generator, loos_standard, mod_bullet, sample_g_alpha, sample_graded_hom,
    sample_modular, sample_standard, stand_bullet, conjugation_of, HomGrSpace, ModSpace, StandSpace,
};
use crate::jordan::{JordanAlgebra, JordanElement, JordanKind};
use crate::linalg::{self, c64, CMat, I};
use crate::reflection::instances::*;
use crate::reflection::{verify_dilation_axioms, verify_geodesic, verify_reflection_axioms, PointSpace, PowPairSampler, SampleConfig};
use crate::report::{axiom_checks, Check, Report, Suite};
use crate::sampling::{self, SeededRng};
use crate::semigroup::{
    antitone_pair, compression_report, image_inclusion, order_leq, sample_g1_word, sample_koufany, CompressionConfig,
};
use crate::standard::{graded_hom_of, modular_objects, modular_of, standard_from_modular, subspace_gap, StandardSubspace};
use crate::tolerances;

/// Tolerances of all suites; each can be overridden by name.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub axiom: f64,
    pub model_gap: f64,
    pub worked_constant: f64,
    pub geodesic: f64,
    pub geodesic_rel: f64,
    pub alpha_fit: f64,
    pub jordan: f64,
    pub grade_scaling: f64,
    pub finite_diff: f64,
    pub cone_margin: f64,
    pub borchers: f64,
    pub inclusion: f64,
    pub violation: f64,
    pub affine_group_law: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            axiom: tolerances::AXIOM,
            model_gap: tolerances::MODEL_GAP,
            worked_constant: tolerances::WORKED_CONSTANT,
            geodesic: tolerances::GEODESIC,
            geodesic_rel: tolerances::GEODESIC_REL,
            alpha_fit: tolerances::ALPHA_FIT,
            jordan: tolerances::JORDAN,
            grade_scaling: tolerances::GRADE_SCALING,
            finite_diff: tolerances::FINITE_DIFF,
            cone_margin: tolerances::CONE_MARGIN,
            borchers: tolerances::BORCHERS,
            inclusion: tolerances::INCLUSION,
            violation: tolerances::VIOLATION,
            affine_group_law: tolerances::AFFINE_GROUP_LAW,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 14] = [
        "axiom",
        "model_gap",
        "worked_constant",
        "geodesic",
        "geodesic_rel",
        "alpha_fit",
        "jordan",
        "grade_scaling",
        "finite_diff",
        "cone_margin",
        "borchers",
        "inclusion",
        "violation",
        "affine_group_law",
    ];

    /// Overrides one tolerance; values must be positive and finite.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::InvalidArgument(format!("tolerance {name} must be positive, got {value}")));
        }
        let slot = match name {
            "axiom" => &mut self.axiom,
            "model_gap" => &mut self.model_gap,
            "worked_constant" => &mut self.worked_constant,
            "geodesic" => &mut self.geodesic,
            "geodesic_rel" => &mut self.geodesic_rel,
            "alpha_fit" => &mut self.alpha_fit,
            "jordan" => &mut self.jordan,
            "grade_scaling" => &mut self.grade_scaling,
            "finite_diff" => &mut self.finite_diff,
            "cone_margin" => &mut self.cone_margin,
            "borchers" => &mut self.borchers,
            "inclusion" => &mut self.inclusion,
            "violation" => &mut self.violation,
            "affine_group_law" => &mut self.affine_group_law,
            _ => return Err(Error::InvalidArgument(format!("unknown tolerance {name:?}; known: {}", Self::NAMES.join(", ")))),
        };
        *slot = value;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Axioms,
    Modular,
    Geodesic,
    Jordan,
    Semigroup,
    Bgl,
    Affine,
    All,
}

impl Command {
    pub const ALL: [Command; 7] =
        [Command::Axioms, Command::Modular, Command::Geodesic, Command::Jordan, Command::Semigroup, Command::Bgl, Command::Affine];

    pub fn name(self) -> &'static str {
        match self {
            Command::Axioms => "axioms",
            Command::Modular => "modular",
            Command::Geodesic => "geodesic",
            Command::Jordan => "jordan",
            Command::Semigroup => "semigroup",
            Command::Bgl => "bgl",
            Command::Affine => "affine",
            Command::All => "all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .chain([Command::All])
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown command {s:?}")))
    }
}

/// Configuration of a run. `trials` overrides the main sample count of every suite
/// (1000 axiom samples, 200 model instances, 1000 Jordan samples, 1000 Koufany words,
/// 100 conjugators); `max_dim` caps the Hilbert space dimension of random models.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tol: Tolerances,
    pub trials: Option<usize>,
    pub max_dim: usize,
    pub grid_n: usize,
    pub grid_l: f64,
    pub algebras: Vec<JordanKind>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            tol: Tolerances::default(),
            trials: None,
            max_dim: 8,
            grid_n: crate::affine::DEFAULT_N,
            grid_l: crate::affine::DEFAULT_L,
            algebras: vec![JordanKind::Sym(3), JordanKind::Herm(2), JordanKind::Spin(4)],
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_dim < 2 {
            return Err(Error::InvalidArgument(format!("dimension cap must be at least 2, got {}", self.max_dim)));
        }
        if self.trials == Some(0) {
            return Err(Error::InvalidArgument("trials must be positive".into()));
        }
        if self.algebras.is_empty() {
            return Err(Error::InvalidArgument("no Jordan algebra selected".into()));
        }
        for k in &self.algebras {
            JordanAlgebra::new(*k)?;
        }
        AffineGrid::new(self.grid_n, self.grid_l, DEFAULT_BAND)?;
        if self.grid_l < 10.0 {
            return Err(Error::InvalidArgument(format!("grid half-width must be at least 10 to hold the test vectors, got {}", self.grid_l)));
        }
        Ok(())
    }

    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    fn rng(&self, label: &str) -> SeededRng {
        sampling::substream(self.seed, label)
    }
}

type SuiteFn = fn(&RunConfig) -> Vec<Suite>;

fn suite_fn(cmd: Command) -> SuiteFn {
    match cmd {
        Command::Axioms => axioms,
        Command::Modular => modular,
        Command::Geodesic => geodesic,
        Command::Jordan => jordan,
        Command::Semigroup => semigroup,
        Command::Bgl => bgl,
        Command::Affine => affine,
        Command::All => |cfg| Command::ALL.iter().flat_map(|c| suite_fn(*c)(cfg)).collect(),
    }
}

/// Runs a command. Suite groups run concurrently; results are assembled in a fixed
/// order, so the report depends only on `(cmd, cfg)`.
pub fn run(cmd: Command, cfg: &RunConfig) -> Report {
    let cmds: Vec<Command> = if cmd == Command::All { Command::ALL.to_vec() } else { vec![cmd] };
    let suites = std::thread::scope(|s| {
        let handles: Vec<_> = cmds.iter().map(|c| s.spawn(move || suite_fn(*c)(cfg))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("suite thread panicked")).collect()
    });
    Report::new(cmd.name(), cfg.seed, suites)
}

/// Runs closures on scoped threads and returns their results in order.
fn parallel<T: Send>(jobs: Vec<Box<dyn FnOnce() -> T + Send + '_>>) -> Vec<T> {
    std::thread::scope(|s| {
        let handles: Vec<_> = jobs.into_iter().map(|j| s.spawn(j)).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}

fn instance_suite<M, S>(space: &M, sampler: S, pairs: Option<PowPairSampler<'_, M::Point>>, dilation: bool, cfg: &RunConfig) -> Suite
where
    M: PointSpace,
    S: Fn(&mut SeededRng) -> M::Point,
{
    let sc = SampleConfig { n_samples: cfg.trials(1000), tol: cfg.tol.axiom, seed: cfg.seed };
    let mut checks = axiom_checks(&verify_reflection_axioms(space, &sampler, pairs, &sc));
    if dilation {
        checks.extend(axiom_checks(&verify_dilation_axioms(space, &sampler, &sc)));
    }
    Suite::new(format!("axioms[{}]", space.name()), checks)
}

/// Reflection (and where present dilation) laws for every shipped instance.
pub fn axioms(cfg: &RunConfig) -> Vec<Suite> {
    let jobs: Vec<Box<dyn FnOnce() -> Suite + Send + '_>> = vec![
        Box::new(|| instance_suite(&GroupSpace { n: 3 }, sample_gl(3), Some(&near_pairs_gl(3)), false, cfg)),
        Box::new(|| instance_suite(&CosetSpace { n: 3 }, sample_gl(3), Some(&near_pairs_gl(3)), false, cfg)),
        Box::new(|| instance_suite(&TwistedGroupSpace { n: 3 }, sample_gl(3), Some(&near_pairs_gl(3)), false, cfg)),
        Box::new(|| {
            let b = BilinearSpace::lorentz3();
            let pairs = near_pairs_vector(b.sampler());
            instance_suite(&b, b.sampler(), Some(&pairs), false, cfg)
        }),
        Box::new(|| {
            let p = ProductSpace { left: GroupSpace { n: 2 }, right: BilinearSpace::lorentz3() };
            let right = BilinearSpace::lorentz3();
            let sampler = |rng: &mut SeededRng| (sample_gl(2)(rng), right.sampler()(rng));
            let pairs = |rng: &mut SeededRng| {
                let (a, b) = near_pairs_gl(2)(rng);
                let (c, d) = near_pairs_vector(right.sampler())(rng);
                ((a, c), (b, d))
            };
            instance_suite(&p, sampler, Some(&pairs), false, cfg)
        }),
        Box::new(|| {
            let q = ProductSpace { left: HomSpace { n: 3 }, right: VectorDilationSpace::affine(2) };
            let sampler = |rng: &mut SeededRng| (sample_hom_point(3)(rng), sample_vector(2)(rng));
            let pairs = |rng: &mut SeededRng| {
                let (a, b) = near_pairs_hom(3)(rng);
                let (c, d) = near_pairs_vector(sample_vector(2))(rng);
                ((a, c), (b, d))
            };
            instance_suite(&q, sampler, Some(&pairs), true, cfg)
        }),
        Box::new(|| instance_suite(&HomSpace { n: 3 }, sample_hom_point(3), Some(&near_pairs_hom(3)), true, cfg)),
        Box::new(|| instance_suite(&PairSpace { n: 3 }, sample_hom_point(3), Some(&near_pairs_hom(3)), true, cfg)),
        Box::new(|| {
            let a = AlphaGroupSpace { character: DiagonalCharacter { lambdas: vec![1.0, 0.5, -0.7], parities: vec![true, false, true] } };
            instance_suite(&a, sample_gl(3), Some(&near_pairs_gl(3)), true, cfg)
        }),
        Box::new(|| {
            let v = VectorDilationSpace { character: DiagonalCharacter { lambdas: vec![1.0, 2.0, 0.5], parities: vec![true, false, true] } };
            instance_suite(&v, sample_vector(3), None, true, cfg)
        }),
        Box::new(|| instance_suite(&HomDilSpace { n: 3, lambda: 1.5 }, sample_vector(3), None, true, cfg)),
    ];
    parallel(jobs)
}

fn worked_subspace() -> Result<StandardSubspace> {
    StandardSubspace::new(&CMat::from_row_slice(2, 2, &[c64(1.0, 0.0), I, c64(0.0, 0.0), c64(1.0, 0.0)]))
}

/// `Δ` of `span_R{e₁, ie₁ + e₂}` against `[[1, −2i], [2i, 5]]` and its spectrum `3 ± 2√2`.
pub fn worked_constant(cfg: &RunConfig) -> Suite {
    let run = || -> Result<Vec<Check>> {
        let p = modular_objects(&worked_subspace()?)?;
        let expected = CMat::from_row_slice(2, 2, &[c64(1.0, 0.0), c64(0.0, -2.0), c64(0.0, 2.0), c64(5.0, 0.0)]);
        let entry = (p.delta() - &expected).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let (mut vals, _) = linalg::hermitian_eigen(p.delta());
        vals.as_mut_slice().sort_by(f64::total_cmp);
        let s = 2.0 * 2f64.sqrt();
        let eig = (vals[0] - (3.0 - s)).abs().max((vals[1] - (3.0 + s)).abs());
        Ok(vec![Check::at_most("delta-entries", entry, cfg.tol.worked_constant), Check::at_most("delta-eigenvalues", eig, cfg.tol.worked_constant)])
    };
    match run() {
        Ok(c) => Suite::new("modular/worked-constant", c),
        Err(e) => Suite::failed("modular/worked-constant", &e),
    }
}

const BULLET_RS: [f64; 6] = [-1.0, E, 1.0 / E, 1.395_612_425_086_089_5, -2.5, -0.3];

/// Round trips between the three models and intertwining of the bullets.
pub fn model_round_trips(cfg: &RunConfig) -> Suite {
    let mut rng = cfg.rng("modular/round-trips");
    let (mut trip, mut phi, mut psi) = (0.0_f64, 0.0_f64, 0.0_f64);
    let mut failures = 0usize;
    let span = cfg.max_dim - 1;
    let trials = cfg.trials(200);
    for k in 0..trials {
        let n = 2 + k % span;
        let r = BULLET_RS[k % BULLET_RS.len()];
        let (v1, v2) = (sample_standard(n)(&mut rng), sample_standard(n)(&mut rng));
        let one = || -> Result<(f64, f64, f64)> {
            let (p1, p2) = (modular_objects(&v1)?, modular_objects(&v2)?);
            let (g1, g2) = (graded_hom_of(&p1)?, graded_hom_of(&p2)?);
            let t = subspace_gap(&standard_from_modular(&p1)?, &v1).max(modular_of(&g1)?.distance(&p1));
            let pm = mod_bullet(&p1, r, &p2)?;
            let f = subspace_gap(&standard_from_modular(&pm)?, &stand_bullet(&v1, r, &v2)?);
            let s = graded_hom_of(&pm)?.distance(&hom_bullet(&g1, r, &g2)?);
            Ok((t, f, s))
        };
        match one() {
            Ok((t, f, s)) => {
                trip = trip.max(t);
                phi = phi.max(f);
                psi = psi.max(s);
            }
            Err(_) => failures += 1,
        }
    }
    let mut loos: f64 = 0.0;
    for k in 0..trials.min(100) {
        let n = 2 + k % span.min(5);
        let j = sampling::conjugation(&mut rng, n);
        let a = sampling::skew_symmetric(&mut rng, n, 1.5);
        let gap = loos_standard(&j, &a).and_then(|v| {
            let (j2, a2) = loos_generator(&v)?;
            Ok(subspace_gap(&loos_standard(&j2, &a2)?, &v))
        });
        loos = loos.max(gap.unwrap_or(f64::INFINITY));
    }
    let tol = cfg.tol.model_gap;
    Suite::new(
        "modular/round-trips",
        vec![
            Check::at_most("stand-mod-hom-round-trip", trip, tol),
            Check::at_most("bullet-intertwining-stand-mod", phi, tol),
            Check::at_most("bullet-intertwining-mod-hom", psi, tol),
            Check::at_most("loos-round-trip", loos, tol),
            Check::at_most("precondition-failures", failures as f64, 0.0),
        ],
    )
}

/// Dilation-space laws on the three models of standard subspaces.
pub fn model_laws(cfg: &RunConfig) -> Suite {
    let sc = SampleConfig { n_samples: 120, tol: cfg.tol.model_gap, seed: cfg.seed };
    let n = 3.min(cfg.max_dim);
    let mut checks = Vec::new();
    let stand = StandSpace { n };
    checks.extend(axiom_checks(&verify_reflection_axioms(&stand, sample_standard(n), None, &sc)));
    checks.extend(axiom_checks(&verify_dilation_axioms(&stand, sample_standard(n), &sc)));
    let m = ModSpace { n };
    checks.extend(axiom_checks(&verify_reflection_axioms(&m, sample_modular(n), None, &sc)));
    checks.extend(axiom_checks(&verify_dilation_axioms(&m, sample_modular(n), &sc)));
    let h = HomGrSpace { n };
    checks.extend(axiom_checks(&verify_reflection_axioms(&h, sample_graded_hom(n), None, &sc)));
    checks.extend(axiom_checks(&verify_dilation_axioms(&h, sample_graded_hom(n), &sc)));
    Suite::new("modular/model-laws", checks)
}

pub fn modular(cfg: &RunConfig) -> Vec<Suite> {
    parallel(vec![Box::new(|| worked_constant(cfg)), Box::new(|| model_round_trips(cfg)), Box::new(|| model_laws(cfg))])
}

const GEODESIC_TS: [f64; 6] = [-1.5, -0.6, 0.0, 0.35, 1.0, 2.2];

fn geodesic_checks(label: &str, v: &StandardSubspace, h: &CMat, cfg: &RunConfig) -> Result<Vec<Check>> {
    let g = geodesic_standard(v, h)?;
    let r = verify_geodesic(&StandSpace { n: v.dim() }, &g.to_geodesic(), &GEODESIC_TS, cfg.tol.geodesic, None);
    Ok(vec![
        Check::at_most(format!("{label}/morphism"), r.max_residual, cfg.tol.geodesic),
        Check::at_most(format!("{label}/u-rel"), g.u_rel_residual(&GEODESIC_TS)?, cfg.tol.geodesic_rel),
    ])
}

/// Geodesics `t ↦ e^{itH}V` and the `G_α` representation of a dilation-invariant one.
pub fn geodesic(cfg: &RunConfig) -> Vec<Suite> {
    let mut checks = Vec::new();
    let flip = StandardSubspace::fixed_space(&crate::antilinear::Conjugation::flip(2));
    let h = CMat::from_row_slice(2, 2, &[c64(0.0, 0.0), I, -I, c64(0.0, 0.0)]);
    checks.push(Check::from_result("flip", geodesic_checks("flip", &flip, &h, cfg).map(|mut c| c.remove(0))));
    if let Ok(c) = geodesic_checks("flip", &flip, &h, cfg) {
        checks.push(c[1].clone());
    }
    let mut rng = cfg.rng("geodesic/random");
    let (mut morph, mut urel) = (0.0_f64, 0.0_f64);
    for k in 0..20 {
        let n = 2 + k % (cfg.max_dim - 1).min(4);
        let v = sample_standard(n)(&mut rng);
        let h0 = sampling::hermitian(&mut rng, n, 1.0);
        let r = conjugation_of(&v).and_then(|j| {
            let h = (&h0 + j.conjugate_linear(&h0)) * c64(0.5, 0.0);
            geodesic_checks("random", &v, &h, cfg)
        });
        match r {
            Ok(c) => {
                morph = morph.max(c[0].residual);
                urel = urel.max(c[1].residual);
            }
            Err(_) => morph = f64::INFINITY,
        }
    }
    checks.push(Check::at_most("random/morphism", morph, cfg.tol.geodesic));
    checks.push(Check::at_most("random/u-rel", urel, cfg.tol.geodesic_rel));

    let rep = (|| -> Result<Vec<Check>> {
        let n = 3.min(cfg.max_dim);
        let v = sample_standard(n)(&mut rng);
        let p = modular_objects(&v)?;
        let log = linalg::positive_log(p.delta())?;
        let h = &log * &log + linalg::identity(n);
        let g = geodesic_standard(&v, &h)?;
        let rep = dilation_rep_from_geodesic(&g, 0.0)?;
        let pairs: Vec<_> = (0..200).map(|_| (sample_g_alpha(&mut rng), sample_g_alpha(&mut rng))).collect();
        Ok(vec![
            Check::at_most("g-alpha/homomorphism", rep.homomorphism_residual(&pairs), cfg.tol.geodesic_rel),
            Check::at_most("g-alpha/alpha-error", (rep.fitted_alpha - rep.alpha).abs(), cfg.tol.alpha_fit),
        ])
    })();
    match rep {
        Ok(c) => checks.extend(c),
        Err(e) => checks.push(Check::from_result("g-alpha", Err(e))),
    }
    vec![Suite::new("geodesic", checks)]
}

fn worst_over(n: usize, rng: &mut SeededRng, alg: &JordanAlgebra, f: impl Fn(&[JordanElement]) -> Result<f64>) -> f64 {
    (0..n)
        .map(|_| {
            let xs: Vec<_> = (0..3).map(|_| alg.random(rng, 1.0)).collect();
            f(&xs).unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max)
}

/// Jordan algebra identities on one algebra.
pub fn jordan_suite(kind: JordanKind, cfg: &RunConfig) -> Suite {
    let name = format!("jordan[{kind}]");
    let alg = match JordanAlgebra::new(kind) {
        Ok(a) => a,
        Err(e) => return Suite::failed(name, &e),
    };
    let n = cfg.trials(1000);
    let tol = cfg.tol.jordan;
    let mut rng = cfg.rng(&name);
    let e = alg.unit();
    let mut checks = vec![
        Check::at_most(
            "jordan-identity",
            worst_over(n, &mut rng, &alg, |xs| {
                let x2 = alg.square(&xs[0])?;
                let lhs = alg.jmul(&xs[0], &alg.jmul(&x2, &xs[1])?)?;
                let rhs = alg.jmul(&x2, &alg.jmul(&xs[0], &xs[1])?)?;
                Ok(lhs.sub(&rhs).norm())
            }),
            tol,
        ),
        Check::at_most(
            "commutative-unital",
            worst_over(n, &mut rng, &alg, |xs| {
                let c = alg.jmul(&xs[0], &xs[1])?.sub(&alg.jmul(&xs[1], &xs[0])?).norm();
                Ok(c.max(alg.jmul(&xs[0], &e)?.sub(&xs[0]).norm()))
            }),
            tol,
        ),
        Check::at_most(
            "trace-form-associative",
            worst_over(n, &mut rng, &alg, |xs| {
                let lx = alg.lop(&xs[0])?;
                let ly = alg.apply(&lx, &xs[1])?;
                let lz = alg.apply(&lx, &xs[2])?;
                Ok((alg.trace_form(&ly, &xs[2])? - alg.trace_form(&xs[1], &lz)?).abs())
            }),
            tol,
        ),
        Check::at_most(
            "quadratic-P(z,e)=L(z)",
            worst_over(n, &mut rng, &alg, |xs| Ok((alg.quad_p2(&xs[0], &e)? - alg.lop(&xs[0])?).norm())),
            tol,
        ),
    ];
    let gram_min = alg.trace_gram().symmetric_eigen().eigenvalues.min();
    let samples: Vec<_> = (0..n).map(|_| alg.random(&mut rng, 1.0)).collect();
    checks.push(Check::at_least("euclidean/trace-form-min-eigenvalue", gram_min, 1e-12));
    checks.push(Check::holds("euclidean/sum-of-squares", alg.is_euclidean(&samples)));
    match kind {
        JordanKind::Sym(_) | JordanKind::Herm(_) => checks.push(Check::at_most(
            "quadratic-P(x)y=xyx",
            worst_over(n, &mut rng, &alg, |xs| {
                let pxy = alg.apply(&alg.quad_p(&xs[0])?, &xs[1])?;
                let (mx, my) = (xs[0].matrix().expect("matrix kind"), xs[1].matrix().expect("matrix kind"));
                Ok((pxy.matrix().expect("matrix kind") - &mx * my * &mx).norm())
            }),
            tol,
        )),
        JordanKind::Spin(m) => {
            let mut worst: f64 = 0.0;
            let mut count = 0;
            while count < n {
                let x = alg.random(&mut rng, 1.0);
                let (t, v) = (x.coords[0], x.coords.rows(1, m - 1).into_owned());
                let d = t * t - v.norm_squared();
                if d.abs() < 0.05 {
                    continue;
                }
                count += 1;
                let r = (|| -> Result<f64> {
                    let oracle = alg.from_spin(t / d, (-v / d).as_slice())?;
                    let inv = alg.inverse(&x)?;
                    Ok((inv.sub(&oracle).norm() / oracle.norm().max(1.0)).max(alg.jmul(&x, &inv)?.sub(&e).norm()))
                })();
                worst = worst.max(r.unwrap_or(f64::INFINITY));
            }
            checks.push(Check::at_most("spin-inverse-formula", worst, tol));
        }
    }
    Suite::new(name, checks)
}

/// Gradings of the generators, `Ad_{γ(r)}` grade scaling and `[e, θ̃(u)] = 2L(u)`.
pub fn conformal_suite(kind: JordanKind, cfg: &RunConfig) -> Suite {
    let name = format!("conformal[{kind}]");
    let run = || -> Result<Vec<Check>> {
        let alg = JordanAlgebra::new(kind)?;
        let mut rng = cfg.rng(&name);
        let d = alg.dim();
        let grade = |w: ConfWord, expected: i8| grading(&alg, &w).map(|g| (g - expected).abs() as f64);
        let b = alg.random(&mut rng, 1.0);
        let mut checks = vec![
            Check::at_most("grading/translate=+1", grade(ConfWord::new(vec![Generator::translate(&b)]), 1)?, 0.0),
            Check::at_most("grading/structure(-id)=-1", grade(ConfWord::new(vec![Generator::structure(-DMatrix::identity(d, d))]), -1)?, 0.0),
            Check::at_most("grading/neg-inversion=+1", grade(ConfWord::new(vec![Generator::NegInversion]), 1)?, 0.0),
        ];
        let samples: Vec<_> = (0..6).map(|_| cone_point(&alg, &mut rng, 0.3, 3.0)).collect();
        let xi = LieTriple { u: alg.random(&mut rng, 1.0).coords, t: alg.lop(&alg.random(&mut rng, 1.0))?, v: alg.random(&mut rng, 1.0).coords };
        for r in [2.0, 1.0 / 3.0] {
            let rep = lie_grade_check(&alg, &xi, r, &samples, cfg.tol.grade_scaling)?;
            checks.push(Check::at_most(format!("grade-scaling/r={r:.6}"), rep.max_residual, cfg.tol.grade_scaling));
        }
        let u = alg.random(&mut rng, 1.0);
        let (et, qt) = (LieTriple::constant(&alg, &alg.unit()), LieTriple::quadratic(&alg, &u));
        let (fe, fq) = (field_of(&alg, &et), field_of(&alg, &qt));
        let lu = alg.lop(&u)?;
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let z = alg.random(&mut rng, 1.5);
            worst = worst.max((bracket_at(&fe, &fq, &z.coords)? - &lu * &z.coords * 2.0).norm());
        }
        checks.push(Check::at_most("bracket/[e,theta(u)]=2L(u)", worst, cfg.tol.finite_diff));
        Ok(checks)
    };
    match run() {
        Ok(c) => Suite::new(name, c),
        Err(e) => Suite::failed(name, &e),
    }
}

pub fn jordan(cfg: &RunConfig) -> Vec<Suite> {
    let mut jobs: Vec<Box<dyn FnOnce() -> Suite + Send + '_>> = Vec::new();
    for &k in &cfg.algebras {
        jobs.push(Box::new(move || jordan_suite(k, cfg)));
        jobs.push(Box::new(move || conformal_suite(k, cfg)));
    }
    parallel(jobs)
}

/// Koufany products compress the cone; the order agrees with image inclusion, is
/// reflexive, `G₁`-invariant and reversed by odd conjugation; `Translate(−e)` fails.
pub fn semigroup_suite(kind: JordanKind, cfg: &RunConfig) -> Suite {
    let name = format!("semigroup[{kind}]");
    let run = || -> Result<Vec<Check>> {
        let alg = JordanAlgebra::new(kind)?;
        let mut rng = cfg.rng(&name);
        let full = CompressionConfig { tol: cfg.tol.cone_margin, ..CompressionConfig::default() };
        let light = CompressionConfig { interior: 96, boundary: 32, ..full };
        let mut failures = 0usize;
        let mut margin = f64::INFINITY;
        for _ in 0..cfg.trials(1000) {
            let rep = compression_report(&alg, &sample_koufany(&alg, &mut rng), &full)?;
            if !rep.compresses {
                failures += 1;
            }
            margin = margin.min(rep.min_margin);
        }
        let mut checks = vec![
            Check::at_most(format!("koufany-words-failing-compression/budget={}", full.budget()), failures as f64, 0.0),
            Check::at_least("koufany-min-margin", margin, -cfg.tol.cone_margin),
        ];
        let pair = |rng: &mut SeededRng| {
            let g = sample_g1_word(&alg, rng, 3);
            let s = if rng.gen_bool(0.5) { sample_koufany(&alg, rng) } else { sample_g1_word(&alg, rng, 2) };
            (g.then_after(&s), g)
        };
        let (mut mismatches, mut yes, mut no) = (0usize, 0usize, 0usize);
        for _ in 0..200 {
            let (g1, g2) = pair(&mut rng);
            let leq = order_leq(&alg, &g1, &g2, &light)?;
            if leq != image_inclusion(&alg, &g1, &g2, &light)? {
                mismatches += 1;
            }
            if leq {
                yes += 1
            } else {
                no += 1
            }
        }
        checks.push(Check::at_most("order-vs-image-inclusion/mismatches", mismatches as f64, 0.0));
        checks.push(Check::at_least("order-vs-image-inclusion/related-pairs", yes as f64, 1.0));
        checks.push(Check::at_least("order-vs-image-inclusion/unrelated-pairs", no as f64, 1.0));
        let (mut refl, mut inv, mut anti) = (0usize, 0usize, 0usize);
        for _ in 0..20 {
            let g = sample_g1_word(&alg, &mut rng, 4);
            if !order_leq(&alg, &g, &g, &light)? {
                refl += 1;
            }
            let h = sample_g1_word(&alg, &mut rng, 3);
            let (g1, g2) = pair(&mut rng);
            if order_leq(&alg, &h.then_after(&g1), &h.then_after(&g2), &light)? != order_leq(&alg, &g1, &g2, &light)? {
                inv += 1;
            }
            let (a, b) = antitone_pair(&alg, &g1, &g2, &light)?;
            if a != b {
                anti += 1;
            }
        }
        checks.push(Check::at_most("reflexivity/failures", refl as f64, 0.0));
        checks.push(Check::at_most("g1-invariance/failures", inv as f64, 0.0));
        checks.push(Check::at_most("antitone/failures", anti as f64, 0.0));
        let e = alg.unit();
        let minus = compression_report(&alg, &ConfWord::new(vec![Generator::translate(&e.scale(-1.0))]), &full)?;
        let witnessed = !minus.compresses
            && minus.witness.as_ref().is_some_and(|w| w.image.as_ref().is_none_or(|y| !alg.in_cone(y).unwrap_or(true)));
        checks.push(Check::holds("translate(-e)-rejected-with-witness", witnessed));
        Ok(checks)
    };
    match run() {
        Ok(c) => Suite::new(name, c),
        Err(e) => Suite::failed(name, &e),
    }
}

pub fn semigroup(cfg: &RunConfig) -> Vec<Suite> {
    let jobs: Vec<Box<dyn FnOnce() -> Suite + Send + '_>> =
        cfg.algebras.iter().map(|&k| Box::new(move || semigroup_suite(k, cfg)) as Box<dyn FnOnce() -> Suite + Send + '_>).collect();
    parallel(jobs)
}

fn random_au(rng: &mut SeededRng, n: usize, odd: bool) -> AuOperator {
    AuOperator { m: sampling::unitary(rng, n), odd }
}

/// Equivariance of `γ ↦ V` under `U`, and `S_V ∩ S_V⁻¹` equal to the stabilizer.
pub fn bgl(cfg: &RunConfig) -> Vec<Suite> {
    let run = || -> Result<Vec<Check>> {
        let mut rng = cfg.rng("bgl");
        let mut checks = Vec::new();
        for m in [2usize, 3].into_iter().filter(|&m| m * m <= cfg.max_dim.max(4) || m == 2) {
            let gamma = sample_graded_hom(m)(&mut rng);
            let conj: Vec<_> = (0..cfg.trials(100)).map(|k| random_au(&mut rng, m, k % 2 == 1)).collect();
            let reps = [
                AuRep::Defining { m },
                AuRep::DirectSum { m, copies: 2 },
                AuRep::Tensor { m },
                AuRep::Twisted { w: sampling::unitary(&mut rng, m) },
            ];
            for rep in reps {
                let kind = match &rep {
                    AuRep::Defining { .. } => "defining",
                    AuRep::DirectSum { .. } => "direct-sum",
                    AuRep::Tensor { .. } => "tensor",
                    AuRep::Twisted { .. } => "twisted",
                };
                let r = bgl_equivariance_check(&rep, &gamma, &conj, cfg.tol.model_gap)?;
                checks.push(Check::at_most(format!("equivariance/m={m}/{kind}"), r.max_residual, cfg.tol.model_gap));
            }
        }
        let gamma = sample_graded_hom(3)(&mut rng);
        let rep = AuRep::DirectSum { m: 3, copies: 2 };
        let v = bgl_map(&rep, &gamma)?;
        let mut mismatches = 0usize;
        for k in 0..60 {
            let g = match k % 3 {
                0 => gamma.eval(sampling::log_uniform(&mut rng, 0.1, 10.0)),
                1 => gamma.eval(-1.0).compose(&gamma.eval(-2.0)),
                _ => random_au(&mut rng, 3, false),
            };
            let both = semigroup_membership(&rep, &g, &v, cfg.tol.model_gap)? && semigroup_membership(&rep, &g.inverse(), &v, cfg.tol.model_gap)?;
            let stabilizes = subspace_gap(&v.transform(&rep.image(&g)?)?, &v) <= cfg.tol.model_gap;
            if both != stabilizes {
                mismatches += 1;
            }
        }
        checks.push(Check::at_most("semigroup-meets-inverse-in-stabilizer/mismatches", mismatches as f64, 0.0));
        let mut worst: f64 = 0.0;
        for r in [E, -1.0, 0.4] {
            let g = gamma.eval(r);
            worst = worst.max(subspace_gap(&bgl_map(&rep, &conjugate_hom(&gamma, &g)?)?, &v));
        }
        checks.push(Check::at_most("dilations-fix-image", worst, cfg.tol.model_gap));
        let (g1, g2) = (sample_graded_hom(3)(&mut rng), sample_graded_hom(3)(&mut rng));
        let (v1, v2) = (bgl_map(&rep, &g1)?, bgl_map(&rep, &g2)?);
        let mut worst: f64 = 0.0;
        for r in [-1.0, E, 1.0 / E] {
            worst = worst.max(subspace_gap(&bgl_map(&rep, &hom_bullet(&g1, r, &g2)?)?, &stand_bullet(&v1, r, &v2)?));
        }
        checks.push(Check::at_most("bullet-intertwining", worst, cfg.tol.model_gap));
        let x = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c64(0.0, 1.0), c64(0.0, 2.0)]));
        checks.push(Check::holds("positive-energy/tensor", positive_energy(&AuRep::Tensor { m: 2 }, &x, 1e-10)?));
        Ok(checks)
    };
    vec![match run() {
        Ok(c) => Suite::new("bgl", c),
        Err(e) => Suite::failed("bgl", &e),
    }]
}

/// Borchers relation, inclusions `U_b V ⊆ V` for `b ≥ 0`, violation for `b < 0`, the
/// commutation exponent, group law and positive energy on the grid.
pub fn affine(cfg: &RunConfig) -> Vec<Suite> {
    let run = || -> Result<Vec<Check>> {
        let grid = AffineGrid::new(cfg.grid_n, cfg.grid_l, DEFAULT_BAND)?;
        let vs = grid.test_vectors();
        let mut checks = Vec::new();
        let pairs: Vec<(f64, f64)> = [0.1, 0.5, 1.0, -1.0].iter().flat_map(|&b| [-0.3, 0.3, 0.7].map(|s| (b, s))).collect();
        checks.push(Check::at_most("borchers", grid.borchers_residual(&pairs, &vs)?, cfg.tol.borchers));
        let bs = [0.0, 0.1, 0.5, 1.0, -1.0];
        let mono = monotonicity_experiment(&grid, &bs, &vs, cfg.tol.inclusion)?;
        for row in &mono.rows {
            if row.b >= 0.0 {
                checks.push(Check::at_most(format!("dist-to-V(U_b v)/b={}", row.b), row.max_distance, cfg.tol.inclusion));
            } else {
                checks.push(Check::at_least(format!("dist-to-V(U_b v)/b={}", row.b), row.max_distance, cfg.tol.violation));
            }
        }
        checks.push(Check::at_most("orientation", (mono.orientation - INCLUSION_ORIENTATION).abs() as f64, 0.0));
        checks.push(Check::at_most("commutation-alpha-error", (mono.fitted_alpha - 1.0).abs(), cfg.tol.alpha_fit));
        let moved = dilation_moves_geodesic(&grid, 1.0, &[-0.5, 0.0, 0.5], &vs[vs.len() - 1])?;
        checks.push(Check::at_least("dilations-move-violation/min-distance", moved.iter().copied().fold(f64::INFINITY, f64::min), 1e-4));
        let els = [AffineElement::new(0.3, 0.2), AffineElement { b: -0.4, s: -0.1, odd: true }, AffineElement::new(1.0, -0.3), AffineElement::j()];
        let gl: Vec<_> = els.iter().flat_map(|a| els.iter().map(move |b| (*a, *b))).collect();
        checks.push(Check::at_most("group-law", grid.group_law_residual(&gl, &vs)?, cfg.tol.affine_group_law));
        let mut rng = cfg.rng("affine/energy");
        let mut min_energy = vs.iter().map(|v| grid.energy(v)).fold(f64::INFINITY, f64::min);
        for _ in 0..8 {
            let values = (0..grid.n()).map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let f = grid.function(values)?;
            min_energy = min_energy.min(grid.energy(&f));
        }
        checks.push(Check::at_least("positive-energy/min-form", min_energy, 0.0));
        let iv = grid.scale(&vs[0], c64(0.0, 1.0));
        checks.push(Check::at_least("non-trivial/dist-to-V(i v)", grid.dist_to_v(&iv)?, cfg.tol.violation));
        Ok(checks)
    };
    vec![match run() {
        Ok(c) => Suite::new("affine", c),
        Err(e) => Suite::failed("affine", &e),
    }]
}

/// `max_distance` over `b ∈ [lo, hi]` (`steps + 1` points) for the CSV curve dump.
pub fn affine_curve(cfg: &RunConfig, lo: f64, hi: f64, steps: usize) -> Result<Vec<crate::affine::MonotonicityRow>> {
    let grid = AffineGrid::new(cfg.grid_n, cfg.grid_l, DEFAULT_BAND)?;
    let vs = grid.test_vectors();
    let bs: Vec<f64> = (0..=steps).map(|k| lo + (hi - lo) * k as f64 / steps.max(1) as f64).collect();
    let mut rows = Vec::with_capacity(bs.len());
    for b in bs {
        let mut worst: f64 = 0.0;
        for v in &vs {
            worst = worst.max(grid.dist_to_v(&grid.translate(b, v)?)?);
        }
        rows.push(crate::affine::MonotonicityRow { b, max_distance: worst });
    }
    Ok(rows)
}
