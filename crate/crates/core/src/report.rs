//! Machine-readable verification reports (schema 1).
//!
//! A report is a list of suites, each a list of checks `{name, residual, tol, bound,
//! pass}`. Upper-bound checks pass when `residual ≤ tol`, lower-bound checks when
//! `residual ≥ tol`. Non-finite residuals serialize as `null` and always fail.
//! Reports carry no timings, so equal inputs give byte-identical JSON.

use serde::{Deserialize, Deserializer, Serialize};

use crate::reflection::AxiomReport;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(deserialize_with = "null_as_infinity")]
    pub residual: f64,
    pub tol: f64,
    pub bound: Bound,
    pub pass: bool,
}

fn null_as_infinity<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
}

impl Check {
    /// Passes iff `residual ≤ tol`.
    pub fn at_most(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self { name: name.into(), residual, tol, bound: Bound::Upper, pass: residual.is_finite() && residual <= tol }
    }

    /// Passes iff `value ≥ threshold`.
    pub fn at_least(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), residual: value, tol: threshold, bound: Bound::Lower, pass: value.is_finite() && value >= threshold }
    }

    /// A predicate, recorded as residual 0 (true) or 1 (false) against tolerance 0.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self::at_most(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    /// A fallible computation: errors become a failing check with infinite residual.
    pub fn from_result(name: impl Into<String>, r: crate::Result<Check>) -> Self {
        let name = name.into();
        r.unwrap_or_else(|e| Self { name: format!("{name} ({e})"), residual: f64::INFINITY, tol: 0.0, bound: Bound::Upper, pass: false })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Suite {
    pub name: String,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Suite {
    pub fn new(name: impl Into<String>, checks: Vec<Check>) -> Self {
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        Self { name: name.into(), checks, pass }
    }

    /// A suite that could not be run at all.
    pub fn failed(name: impl Into<String>, err: &crate::Error) -> Self {
        let name = name.into();
        Self::new(name.clone(), vec![Check::from_result(name, Err(err.clone()))])
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// One check per law of an axiom report, plus a precondition check when violations
/// occurred.
pub fn axiom_checks(r: &AxiomReport) -> Vec<Check> {
    let mut out: Vec<Check> = r.laws.iter().map(|l| Check::at_most(format!("{}/{}", r.law, l.law), l.max_residual, r.tol)).collect();
    if r.precondition_violations > 0 || r.laws.is_empty() {
        out.push(Check::at_most(format!("{}/preconditions", r.law), r.precondition_violations.max(1) as f64, 0.0));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64, suites: Vec<Suite>) -> Self {
        let pass = !suites.is_empty() && suites.iter().all(|s| s.pass);
        Self { schema: SCHEMA, command: command.into(), seed, suites, pass }
    }

    pub fn suite(&self, name: &str) -> Option<&Suite> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// `suite,check,residual,tol,bound,pass` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,residual,tol,bound,pass\n");
        for s in &self.suites {
            for c in &s.checks {
                let bound = match c.bound {
                    Bound::Upper => "upper",
                    Bound::Lower => "lower",
                };
                out.push_str(&format!("{},{},{:e},{:e},{},{}\n", csv_field(&s.name), csv_field(&c.name), c.residual, c.tol, bound, c.pass));
            }
        }
        out
    }

    /// Aligned plain-text table, one line per check.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!("[{}] {}\n", if s.pass { "pass" } else { "FAIL" }, s.name));
            for c in &s.checks {
                let op = match c.bound {
                    Bound::Upper => "<=",
                    Bound::Lower => ">=",
                };
                out.push_str(&format!("  {:<4} {:<60} {:>11.3e} {op} {:.1e}\n", if c.pass { "ok" } else { "FAIL" }, c.name, c.residual, c.tol));
            }
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_and_bounds() {
        assert!(Check::at_most("a", 1e-12, 1e-10).pass);
        assert!(!Check::at_most("a", f64::NAN, 1e-10).pass);
        assert!(Check::at_least("b", 1e-2, 1e-3).pass);
        assert!(!Check::at_least("b", 1e-4, 1e-3).pass);
        assert!(!Suite::new("empty", vec![]).pass);
    }

    #[test]
    fn json_round_trip_with_infinity() {
        let r = Report::new("x", 7, vec![Suite::new("s", vec![Check::at_most("inf", f64::INFINITY, 1.0), Check::holds("ok", true)])]);
        let json = r.to_json();
        assert!(json.contains("\"residual\": null"));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(!back.pass);
    }

    #[test]
    fn csv_quotes_commas() {
        let r = Report::new("x", 1, vec![Suite::new("s", vec![Check::at_most("a,b", 0.5, 1.0)])]);
        assert_eq!(r.to_csv(), "suite,check,residual,tol,bound,pass\ns,\"a,b\",5e-1,1e0,upper,true\n");
    }
}
