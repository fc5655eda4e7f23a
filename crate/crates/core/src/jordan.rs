//! Euclidean Jordan algebras `Sym_n(R)`, `Herm_n(C)` and the spin factors `Λ_n`.
//!
//! Elements are stored as coordinates in an orthonormal basis for `⟨x, y⟩ = tr(xy)`
//! (matrix kinds) or `tt' + ⟨v, v'⟩` (spin kind); matrices are rebuilt on demand.
//! With these coordinates `L(x)` is a symmetric `d×d` matrix.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c64, CMat, CVec, RMat, RVec, C64};
use crate::sampling::{self, SeededRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n", rename_all = "lowercase")]
pub enum JordanKind {
    /// Real symmetric `n×n` matrices; `Sym_1` is `E = R`.
    Sym(usize),
    /// Complex hermitian `n×n` matrices.
    Herm(usize),
    /// `Λ_n = R × R^{n−1}`, `n ≥ 2`.
    Spin(usize),
}

impl JordanKind {
    pub fn dim(self) -> usize {
        match self {
            JordanKind::Sym(n) => n * (n + 1) / 2,
            JordanKind::Herm(n) => n * n,
            JordanKind::Spin(n) => n,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            JordanKind::Sym(n) | JordanKind::Herm(n) => n,
            JordanKind::Spin(_) => 2,
        }
    }
}

impl fmt::Display for JordanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JordanKind::Sym(n) => write!(f, "Sym_{n}"),
            JordanKind::Herm(n) => write!(f, "Herm_{n}"),
            JordanKind::Spin(n) => write!(f, "Lambda_{n}"),
        }
    }
}

/// Accepts `sym3`, `herm2`, `spin4` (also `lambda4`).
impl FromStr for JordanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| bad_kind(&s))?;
        let (name, num) = s.split_at(split);
        let n: usize = num.parse().map_err(|_| bad_kind(&s))?;
        let name = name.trim_end_matches('_');
        let kind = match name {
            "sym" => JordanKind::Sym(n),
            "herm" => JordanKind::Herm(n),
            "spin" | "lambda" => JordanKind::Spin(n),
            _ => return Err(bad_kind(&s)),
        };
        JordanAlgebra::new(kind)?;
        Ok(kind)
    }
}

fn bad_kind(s: &str) -> Error {
    Error::InvalidArgument(format!("unknown Jordan algebra '{s}' (expected symN, hermN or spinN)"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanAlgebra {
    pub kind: JordanKind,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "ElementJson", try_from = "ElementJson")]
pub struct JordanElement {
    pub kind: JordanKind,
    pub coords: RVec,
}

/// Element in a complexified algebra, `re + i·im`, as complex coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexElement {
    pub kind: JordanKind,
    pub coords: CVec,
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

impl JordanAlgebra {
    pub fn new(kind: JordanKind) -> Result<Self> {
        let ok = match kind {
            JordanKind::Sym(n) | JordanKind::Herm(n) => n >= 1,
            JordanKind::Spin(n) => n >= 2,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!("{kind} is not a valid Jordan algebra")));
        }
        Ok(Self { kind })
    }

    pub fn sym(n: usize) -> Self {
        Self::new(JordanKind::Sym(n)).expect("n >= 1")
    }

    pub fn herm(n: usize) -> Self {
        Self::new(JordanKind::Herm(n)).expect("n >= 1")
    }

    pub fn spin(n: usize) -> Self {
        Self::new(JordanKind::Spin(n)).expect("n >= 2")
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn element(&self, coords: RVec) -> Result<JordanElement> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        Ok(JordanElement { kind: self.kind, coords })
    }

    pub fn zero(&self) -> JordanElement {
        JordanElement { kind: self.kind, coords: RVec::zeros(self.dim()) }
    }

    pub fn unit(&self) -> JordanElement {
        let mut c = RVec::zeros(self.dim());
        match self.kind {
            JordanKind::Sym(n) | JordanKind::Herm(n) => c.rows_mut(0, n).fill(1.0),
            JordanKind::Spin(_) => c[0] = 1.0,
        }
        JordanElement { kind: self.kind, coords: c }
    }

    /// Orthonormal basis elements.
    pub fn basis(&self) -> Vec<JordanElement> {
        (0..self.dim())
            .map(|k| JordanElement { kind: self.kind, coords: RVec::from_fn(self.dim(), |i, _| if i == k { 1.0 } else { 0.0 }) })
            .collect()
    }

    /// From a symmetric matrix (symmetric part taken).
    pub fn from_sym(&self, m: &RMat) -> Result<JordanElement> {
        let JordanKind::Sym(n) = self.kind else { return Err(Error::AlgebraMismatch) };
        if m.shape() != (n, n) {
            return Err(Error::DimensionMismatch { expected: n, got: m.nrows() });
        }
        let s = (m + m.transpose()) * 0.5;
        let mut c: Vec<f64> = (0..n).map(|i| s[(i, i)]).collect();
        c.extend(pairs(n).map(|(i, j)| SQRT_2 * s[(i, j)]));
        self.element(RVec::from_vec(c))
    }

    /// From a hermitian matrix (hermitian part taken).
    pub fn from_herm(&self, m: &CMat) -> Result<JordanElement> {
        let JordanKind::Herm(n) = self.kind else { return Err(Error::AlgebraMismatch) };
        if m.shape() != (n, n) {
            return Err(Error::DimensionMismatch { expected: n, got: m.nrows() });
        }
        let h = (m + m.adjoint()) * c64(0.5, 0.0);
        let mut c: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
        c.extend(pairs(n).map(|(i, j)| SQRT_2 * h[(i, j)].re));
        c.extend(pairs(n).map(|(i, j)| SQRT_2 * h[(i, j)].im));
        self.element(RVec::from_vec(c))
    }

    /// `(t, v)` in `Λ_n`.
    pub fn from_spin(&self, t: f64, v: &[f64]) -> Result<JordanElement> {
        let JordanKind::Spin(n) = self.kind else { return Err(Error::AlgebraMismatch) };
        if v.len() + 1 != n {
            return Err(Error::DimensionMismatch { expected: n - 1, got: v.len() });
        }
        let mut c = vec![t];
        c.extend_from_slice(v);
        self.element(RVec::from_vec(c))
    }

    fn check(&self, x: &JordanElement) -> Result<()> {
        if x.kind != self.kind {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    /// Jordan product: `(XY + YX)/2`, or `(tt' + ⟨v,v'⟩, tv' + t'v)` on `Λ_n`.
    pub fn jmul(&self, x: &JordanElement, y: &JordanElement) -> Result<JordanElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    fn mul_unchecked(&self, x: &JordanElement, y: &JordanElement) -> JordanElement {
        match self.kind {
            JordanKind::Sym(_) => {
                let (a, b) = (x.sym_matrix(), y.sym_matrix());
                self.from_sym(&((&a * &b + &b * &a) * 0.5)).expect("same algebra")
            }
            JordanKind::Herm(_) => {
                let (a, b) = (x.herm_matrix(), y.herm_matrix());
                self.from_herm(&((&a * &b + &b * &a) * c64(0.5, 0.0))).expect("same algebra")
            }
            JordanKind::Spin(n) => {
                let (t, s) = (x.coords[0], y.coords[0]);
                let (v, w) = (x.coords.rows(1, n - 1), y.coords.rows(1, n - 1));
                let mut c = RVec::zeros(n);
                c[0] = t * s + v.dot(&w);
                c.rows_mut(1, n - 1).copy_from(&(w * t + v * s));
                JordanElement { kind: self.kind, coords: c }
            }
        }
    }

    pub fn square(&self, x: &JordanElement) -> Result<JordanElement> {
        self.jmul(x, x)
    }

    /// `L(x)y = xy` as a `d×d` matrix.
    pub fn lop(&self, x: &JordanElement) -> Result<RMat> {
        self.check(x)?;
        let d = self.dim();
        if let JordanKind::Spin(n) = self.kind {
            let mut m = RMat::identity(n, n) * x.coords[0];
            for k in 1..n {
                m[(0, k)] = x.coords[k];
                m[(k, 0)] = x.coords[k];
            }
            return Ok(m);
        }
        let cols: Vec<RVec> = self.basis().iter().map(|b| self.mul_unchecked(x, b).coords).collect();
        let m = RMat::from_columns(&cols);
        debug_assert_eq!(m.nrows(), d);
        Ok(m)
    }

    /// `tr L(xy)`.
    pub fn trace_form(&self, x: &JordanElement, y: &JordanElement) -> Result<f64> {
        Ok(self.lop(&self.jmul(x, y)?)?.trace())
    }

    /// Gram matrix of the trace form on the orthonormal basis.
    pub fn trace_gram(&self) -> RMat {
        let b = self.basis();
        RMat::from_fn(self.dim(), self.dim(), |i, j| self.trace_form(&b[i], &b[j]).expect("same algebra"))
    }

    /// Positive definiteness of the trace form: the Gram matrix is positive definite and
    /// `tr L(x²) > 0` on the given samples.
    pub fn is_euclidean(&self, samples: &[JordanElement]) -> bool {
        let g = self.trace_gram();
        let min = g.symmetric_eigen().eigenvalues.min();
        min > 0.0 && samples.iter().all(|x| self.trace_form(x, x).map(|v| v > 0.0 || x.coords.norm() == 0.0).unwrap_or(false))
    }

    /// Determinant form `t² − |v|²` on `Λ_n`; the Jordan determinant in general.
    pub fn det(&self, x: &JordanElement) -> Result<f64> {
        Ok(self.spectrum(x)?.iter().product())
    }

    /// `P(x, y) = L(x)L(y) + L(y)L(x) − L(xy)`.
    pub fn quad_p2(&self, x: &JordanElement, y: &JordanElement) -> Result<RMat> {
        let (lx, ly) = (self.lop(x)?, self.lop(y)?);
        Ok(&lx * &ly + &ly * &lx - self.lop(&self.jmul(x, y)?)?)
    }

    /// `P(x) = 2L(x)² − L(x²)`.
    pub fn quad_p(&self, x: &JordanElement) -> Result<RMat> {
        let lx = self.lop(x)?;
        Ok(&lx * &lx * 2.0 - self.lop(&self.square(x)?)?)
    }

    pub fn apply(&self, m: &RMat, x: &JordanElement) -> Result<JordanElement> {
        self.check(x)?;
        Ok(JordanElement { kind: self.kind, coords: m * &x.coords })
    }

    /// Eigenvalues in ascending order; `{t − |v|, t + |v|}` on `Λ_n`.
    pub fn spectrum(&self, x: &JordanElement) -> Result<Vec<f64>> {
        self.check(x)?;
        let mut ev: Vec<f64> = match self.kind {
            JordanKind::Sym(_) => x.sym_matrix().symmetric_eigen().eigenvalues.iter().copied().collect(),
            JordanKind::Herm(_) => crate::linalg::hermitian_eigen(&x.herm_matrix()).0.iter().copied().collect(),
            JordanKind::Spin(n) => {
                let (t, r) = (x.coords[0], x.coords.rows(1, n - 1).norm());
                vec![t - r, t + r]
            }
        };
        ev.sort_by(f64::total_cmp);
        Ok(ev)
    }

    /// Membership in the open cone `E_+`.
    pub fn in_cone(&self, x: &JordanElement) -> Result<bool> {
        Ok(self.spectrum(x)?[0] > 0.0)
    }

    /// `x⁻¹` by matrix inversion or the spin formula `(t, −v)/(t² − |v|²)`.
    pub fn inverse(&self, x: &JordanElement) -> Result<JordanElement> {
        self.check(x)?;
        let spec = self.spectrum(x)?;
        let scale = spec.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1e-300);
        if spec.iter().any(|v| v.abs() <= 1e-13 * scale) {
            return Err(Error::SingularElement);
        }
        match self.kind {
            JordanKind::Sym(_) => self.from_sym(&x.sym_matrix().try_inverse().ok_or(Error::SingularElement)?),
            JordanKind::Herm(_) => self.from_herm(&x.herm_matrix().try_inverse().ok_or(Error::SingularElement)?),
            JordanKind::Spin(n) => {
                let t = x.coords[0];
                let v = x.coords.rows(1, n - 1);
                let d = t * t - v.norm_squared();
                let mut c = -x.coords.clone() / d;
                c[0] = t / d;
                Ok(JordanElement { kind: self.kind, coords: c })
            }
        }
    }

    /// `P(x)⁻¹x`, an independent route to `x⁻¹`.
    pub fn inverse_via_quadratic(&self, x: &JordanElement) -> Result<JordanElement> {
        let p = self.quad_p(x)?;
        let lu = p.lu();
        let sol = lu.solve(&x.coords).ok_or(Error::SingularElement)?;
        Ok(JordanElement { kind: self.kind, coords: sol })
    }

    /// Element with the given spectrum in a random frame.
    pub fn with_spectrum(&self, rng: &mut SeededRng, eigenvalues: &[f64]) -> JordanElement {
        assert_eq!(eigenvalues.len(), self.rank(), "one eigenvalue per rank");
        match self.kind {
            JordanKind::Sym(n) => {
                let q = sampling::orthogonal(rng, n);
                let d = RMat::from_diagonal(&RVec::from_column_slice(eigenvalues));
                self.from_sym(&(&q * d * q.transpose())).expect("same algebra")
            }
            JordanKind::Herm(n) => {
                let u = sampling::unitary(rng, n);
                let d = CMat::from_diagonal(&CVec::from_iterator(n, eigenvalues.iter().map(|&l| c64(l, 0.0))));
                self.from_herm(&(&u * d * u.adjoint())).expect("same algebra")
            }
            JordanKind::Spin(n) => {
                let mut u = RVec::from_fn(n - 1, |_, _| sampling::normal(rng));
                if u.norm() == 0.0 {
                    u[0] = 1.0;
                }
                let u = u.normalize();
                let (a, b) = (eigenvalues[0], eigenvalues[1]);
                let mut c = RVec::zeros(n);
                c[0] = (a + b) / 2.0;
                c.rows_mut(1, n - 1).copy_from(&(u * ((b - a) / 2.0)));
                JordanElement { kind: self.kind, coords: c }
            }
        }
    }

    /// Random element with coordinates uniform in `[−bound, bound]`.
    pub fn random(&self, rng: &mut SeededRng, bound: f64) -> JordanElement {
        use rand::Rng;
        JordanElement { kind: self.kind, coords: RVec::from_fn(self.dim(), |_, _| rng.gen_range(-bound..bound)) }
    }

    // complexification

    pub fn complexify(&self, x: &JordanElement) -> ComplexElement {
        ComplexElement { kind: x.kind, coords: x.coords.map(|v| c64(v, 0.0)) }
    }

    pub fn complex(&self, re: &JordanElement, im: &JordanElement) -> Result<ComplexElement> {
        self.check(re)?;
        self.check(im)?;
        Ok(ComplexElement { kind: self.kind, coords: CVec::from_fn(self.dim(), |i, _| c64(re.coords[i], im.coords[i])) })
    }

    /// `L_C(w) = L(Re w) + i L(Im w)`.
    pub fn complex_lop(&self, w: &ComplexElement) -> Result<CMat> {
        if w.kind != self.kind {
            return Err(Error::AlgebraMismatch);
        }
        let (re, im) = w.parts();
        let (lr, li) = (self.lop(&re)?, self.lop(&im)?);
        Ok(CMat::from_fn(self.dim(), self.dim(), |i, j| c64(lr[(i, j)], li[(i, j)])))
    }

    pub fn complex_mul(&self, a: &ComplexElement, b: &ComplexElement) -> Result<ComplexElement> {
        if b.kind != self.kind {
            return Err(Error::AlgebraMismatch);
        }
        Ok(ComplexElement { kind: self.kind, coords: self.complex_lop(a)? * &b.coords })
    }

    /// `w⁻¹ = P_C(w)⁻¹ w` with `P_C(w) = 2L_C(w)² − L_C(w²)`.
    pub fn complex_inverse(&self, w: &ComplexElement) -> Result<ComplexElement> {
        let lw = self.complex_lop(w)?;
        let w2 = ComplexElement { kind: self.kind, coords: &lw * &w.coords };
        let p = &lw * &lw * c64(2.0, 0.0) - self.complex_lop(&w2)?;
        let sv = p.clone().svd(false, false).singular_values;
        if sv.min() <= 1e-13 * sv.max().max(1e-300) {
            return Err(Error::SingularElement);
        }
        let sol = p.lu().solve(&w.coords).ok_or(Error::SingularElement)?;
        Ok(ComplexElement { kind: self.kind, coords: sol })
    }

    /// Cayley transform `p(z) = (z − ie)(z + ie)⁻¹`.
    pub fn cayley(&self, z: &ComplexElement) -> Result<ComplexElement> {
        let ie = self.complexify(&self.unit()).scale(c64(0.0, 1.0));
        let num = z.sub(&ie);
        let den = self.complex_inverse(&z.add(&ie))?;
        self.complex_mul(&num, &den)
    }
}

impl JordanElement {
    pub fn algebra(&self) -> JordanAlgebra {
        JordanAlgebra { kind: self.kind }
    }

    pub fn add(&self, other: &JordanElement) -> JordanElement {
        assert_eq!(self.kind, other.kind, "elements of different algebras");
        JordanElement { kind: self.kind, coords: &self.coords + &other.coords }
    }

    pub fn sub(&self, other: &JordanElement) -> JordanElement {
        assert_eq!(self.kind, other.kind, "elements of different algebras");
        JordanElement { kind: self.kind, coords: &self.coords - &other.coords }
    }

    pub fn scale(&self, s: f64) -> JordanElement {
        JordanElement { kind: self.kind, coords: &self.coords * s }
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }

    pub fn sym_matrix(&self) -> RMat {
        let JordanKind::Sym(n) = self.kind else { panic!("not an element of Sym_n") };
        let mut m = RMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.coords[i];
        }
        for (k, (i, j)) in pairs(n).enumerate() {
            let v = self.coords[n + k] / SQRT_2;
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
        m
    }

    pub fn herm_matrix(&self) -> CMat {
        let JordanKind::Herm(n) = self.kind else { panic!("not an element of Herm_n") };
        let np = n * (n - 1) / 2;
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c64(self.coords[i], 0.0);
        }
        for (k, (i, j)) in pairs(n).enumerate() {
            let z = c64(self.coords[n + k], self.coords[n + np + k]) / SQRT_2;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
        m
    }

    /// Associative matrix form as a complex matrix (matrix kinds only).
    pub fn matrix(&self) -> Option<CMat> {
        match self.kind {
            JordanKind::Sym(_) => Some(crate::linalg::complexify(&self.sym_matrix())),
            JordanKind::Herm(_) => Some(self.herm_matrix()),
            JordanKind::Spin(_) => None,
        }
    }
}

impl ComplexElement {
    pub fn parts(&self) -> (JordanElement, JordanElement) {
        (
            JordanElement { kind: self.kind, coords: self.coords.map(|z| z.re) },
            JordanElement { kind: self.kind, coords: self.coords.map(|z| z.im) },
        )
    }

    pub fn add(&self, o: &ComplexElement) -> ComplexElement {
        ComplexElement { kind: self.kind, coords: &self.coords + &o.coords }
    }

    pub fn sub(&self, o: &ComplexElement) -> ComplexElement {
        ComplexElement { kind: self.kind, coords: &self.coords - &o.coords }
    }

    pub fn scale(&self, s: C64) -> ComplexElement {
        ComplexElement { kind: self.kind, coords: &self.coords * s }
    }

    pub fn norm(&self) -> f64 {
        self.coords.norm()
    }
}

/// JSON form: `{"algebra": {"kind": "sym", "n": 2}, "matrix": [[..]]}` for `Sym_n`,
/// `"matrix": [[[re, im], ..]]` for `Herm_n`, `"t"`/`"v"` for `Λ_n`.
#[derive(Serialize, Deserialize)]
struct ElementJson {
    algebra: JordanKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    matrix: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    v: Option<Vec<f64>>,
}

impl From<JordanElement> for ElementJson {
    fn from(x: JordanElement) -> Self {
        let mut out = ElementJson { algebra: x.kind, matrix: None, t: None, v: None };
        match x.kind {
            JordanKind::Sym(_) => {
                let m = x.sym_matrix();
                let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
                out.matrix = Some(serde_json::to_value(rows).expect("finite floats"));
            }
            JordanKind::Herm(_) => {
                out.matrix = Some(serde_json::to_value(crate::json::cmat_rows(&x.herm_matrix())).expect("finite floats"));
            }
            JordanKind::Spin(n) => {
                out.t = Some(x.coords[0]);
                out.v = Some(x.coords.rows(1, n - 1).iter().copied().collect());
            }
        }
        out
    }
}

impl TryFrom<ElementJson> for JordanElement {
    type Error = String;

    fn try_from(j: ElementJson) -> std::result::Result<Self, String> {
        let alg = JordanAlgebra::new(j.algebra).map_err(|e| e.to_string())?;
        let res = match j.algebra {
            JordanKind::Sym(_) => {
                let rows: Vec<Vec<f64>> = serde_json::from_value(j.matrix.ok_or("missing matrix")?).map_err(|e| e.to_string())?;
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err("matrix is not square".into());
                }
                alg.from_sym(&RMat::from_fn(n, n, |i, k| rows[i][k]))
            }
            JordanKind::Herm(_) => {
                let rows: Vec<Vec<[f64; 2]>> = serde_json::from_value(j.matrix.ok_or("missing matrix")?).map_err(|e| e.to_string())?;
                alg.from_herm(&crate::json::cmat_from_rows(&rows).ok_or("ragged matrix")?)
            }
            JordanKind::Spin(_) => alg.from_spin(j.t.ok_or("missing t")?, &j.v.ok_or("missing v")?),
        };
        res.map_err(|e| e.to_string())
    }
}
