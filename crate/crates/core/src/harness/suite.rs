//! Seeded, parallel runner over the named check suites.
//!
//! Every trial draws from its own stream `derive_seed(seed, [suite, n, trial])`
//! and results are merged in trial order, so a report depends only on its config.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::harness::checks::*;
use crate::harness::fit::{default_probes, fit_classification, FitResult, REJECT_TOL};
use crate::harness::kind::{MapRegistry, MeasureMapKind, NORMALIZED_S};
use crate::harness::random::{
    derive_seed, random_flat_polytope, random_hyperplane_through, random_interior_polytope, random_invertible,
    random_origin_hyperplane, random_polytope, random_unimodular,
};
use crate::harness::report::CheckReport;
use crate::linalg::{int, parse_rational, Direction, RVector, Rational};
use crate::measure::{lp_surface_measure, measure_distance, surface_measure, Atom, DiscreteSphereMeasure, SurfaceVariant};
use crate::polytope::{Hyperplane, Polytope};
use crate::shapes::standard_simplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Golden,
    Dissection,
    Valuation,
    Contravariance,
    Functional,
    Homogeneity,
    Simplicity,
    Variation,
    Fit,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Golden,
        Suite::Dissection,
        Suite::Valuation,
        Suite::Contravariance,
        Suite::Functional,
        Suite::Homogeneity,
        Suite::Simplicity,
        Suite::Variation,
        Suite::Fit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Golden => "golden",
            Suite::Dissection => "dissection",
            Suite::Valuation => "valuation",
            Suite::Contravariance => "contravariance",
            Suite::Functional => "functional",
            Suite::Homogeneity => "homogeneity",
            Suite::Simplicity => "simplicity",
            Suite::Variation => "variation",
            Suite::Fit => "fit",
        }
    }

    /// Parses one suite name; `"all"` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Ok(vec![s.parse()?])
    }

    fn id(self) -> u64 {
        Suite::ALL.iter().position(|&x| x == self).unwrap() as u64
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::ConfigInvalid(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub dims: Vec<usize>,
    pub p_values: Vec<f64>,
    /// Random trials per dimension for the valuation and contravariance suites;
    /// also caps the random parts of the simplicity and variation suites.
    pub trials: usize,
    pub seed: u64,
    pub tol_exact: f64,
    pub tol_float: f64,
    pub tol_fd: f64,
    /// Rational strings in `(0, 1)`.
    pub lambdas: Vec<String>,
    /// Positive rational strings.
    pub scales: Vec<String>,
    pub variation_pairs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Suite::ALL.to_vec(),
            dims: vec![3, 4],
            p_values: vec![-1.0, 0.0, 0.5, 2.0, 3.0],
            trials: 200,
            seed: 42,
            tol_exact: TOL_EXACT,
            tol_float: TOL_FLOAT,
            tol_fd: TOL_FD,
            lambdas: vec!["1/4".into(), "1/2".into(), "2/3".into(), "3/4".into()],
            scales: vec!["1/2".into(), "1".into(), "2".into(), "3".into()],
            variation_pairs: 20,
        }
    }
}

/// Largest ambient dimension the brute-force geometry is run in.
pub const MAX_DIM: usize = 6;

struct Parsed {
    lambdas: Vec<Rational>,
    scales: Vec<Rational>,
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ConfigInvalid(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        self.parse().map(|_| ())
    }

    fn parse(&self) -> Result<Parsed> {
        let bad = |msg: String| Err(Error::ConfigInvalid(msg));
        if self.suites.is_empty() {
            return bad("no suites selected".into());
        }
        if self.dims.is_empty() {
            return bad("no dimensions given".into());
        }
        if let Some(n) = self.dims.iter().find(|&&n| !(2..=MAX_DIM).contains(&n)) {
            return bad(format!("dimension {n} outside 2..={MAX_DIM}"));
        }
        if let Some(p) = self.p_values.iter().find(|p| !p.is_finite()) {
            return bad(format!("exponent {p} is not finite"));
        }
        for (name, t) in [("tol_exact", self.tol_exact), ("tol_float", self.tol_float), ("tol_fd", self.tol_fd)] {
            if !(t >= 0.0) || !t.is_finite() {
                return bad(format!("{name} = {t} must be a finite nonnegative number"));
            }
        }
        let lambdas = self
            .lambdas
            .iter()
            .map(|s| {
                let l = parse_rational(s).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
                if l <= int(0) || l >= int(1) {
                    return Err(Error::ConfigInvalid(format!("lambda {s} outside (0, 1)")));
                }
                Ok(l)
            })
            .collect::<Result<Vec<_>>>()?;
        let scales = self
            .scales
            .iter()
            .map(|s| {
                let v = parse_rational(s).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
                if v <= int(0) {
                    return Err(Error::ConfigInvalid(format!("scale {s} must be positive")));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Parsed { lambdas, scales })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Runs the configured suites with the built-in external maps available.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    run_suite_with(config, &MapRegistry::with_builtins())
}

pub fn run_suite_with(config: &SuiteConfig, reg: &MapRegistry) -> Result<SuiteReport> {
    let parsed = config.parse()?;
    let ctx = Ctx { cfg: config, parsed, reg };
    let mut checks = Vec::new();
    let mut seen = Vec::new();
    for &suite in &config.suites {
        if seen.contains(&suite) {
            continue;
        }
        seen.push(suite);
        log::info!("running suite {suite}");
        checks.extend(match suite {
            Suite::Golden => ctx.golden(),
            Suite::Dissection => ctx.dissection(),
            Suite::Valuation => ctx.valuation(),
            Suite::Contravariance => ctx.contravariance(),
            Suite::Functional => ctx.functional(),
            Suite::Homogeneity => ctx.homogeneity(),
            Suite::Simplicity => ctx.simplicity(),
            Suite::Variation => ctx.variation(),
            Suite::Fit => ctx.fit(),
        });
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    let failed = checks.len() - passed;
    Ok(SuiteReport {
        config: config.clone(),
        checks,
        summary: Summary { passed, failed },
    })
}

struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    parsed: Parsed,
    reg: &'a MapRegistry,
}

/// Turns an evaluation error into a failed report.
fn settle(name: &str, inputs: Value, tol: f64, r: Result<CheckReport>) -> CheckReport {
    r.unwrap_or_else(|e| CheckReport::errored(name, inputs, tol, &e))
}

fn settle_many(name: &str, inputs: Value, tol: f64, r: Result<Vec<CheckReport>>) -> Vec<CheckReport> {
    r.unwrap_or_else(|e| vec![CheckReport::errored(name, inputs, tol, &e)])
}

impl Ctx<'_> {
    fn seed(&self, suite: Suite, parts: &[u64]) -> u64 {
        let mut all = vec![suite.id()];
        all.extend_from_slice(parts);
        derive_seed(self.cfg.seed, &all)
    }

    /// `(kind, degree)` pairs exercised by the randomized suites.
    fn kinds(&self) -> Vec<(MeasureMapKind, f64)> {
        let mut out = vec![
            (MeasureMapKind::S, 1.0),
            (MeasureMapKind::Sstar, 1.0),
            (MeasureMapKind::So, 1.0),
        ];
        out.extend(self.cfg.p_values.iter().map(|&p| (MeasureMapKind::Sp(p), p)));
        out
    }

    /// Kinds that vanish on lower-dimensional polytopes.
    fn simple_kinds(&self) -> Vec<(MeasureMapKind, f64)> {
        let mut out = vec![(MeasureMapKind::Sstar, 1.0)];
        out.extend(self.cfg.p_values.iter().map(|&p| (MeasureMapKind::Sp(p), p)));
        out
    }

    fn golden(&self) -> Vec<CheckReport> {
        let tol = self.cfg.tol_exact;
        let mut out = Vec::new();
        for &n in &self.cfg.dims {
            let inputs = json!({ "n": n });
            out.push(settle("golden_surface_simplex", inputs.clone(), tol, golden_surface(n, tol)));
            for &p in &self.cfg.p_values {
                let inputs = json!({ "n": n, "p": p });
                out.push(settle("golden_lp_simplex", inputs, tol, golden_lp(n, p, tol)));
            }
        }
        out
    }

    fn dissection(&self) -> Vec<CheckReport> {
        let mut grid = Vec::new();
        for &n in &self.cfg.dims {
            for l in &self.parsed.lambdas {
                for s in &self.parsed.scales {
                    grid.push((n, l, s));
                }
            }
        }
        grid.par_iter()
            .map(|&(n, l, s)| {
                let inputs = json!({ "n": n, "lambda": l.to_string(), "s": s.to_string() });
                settle("dissection_identity", inputs, 0.0, check_dissection_identity(n, s, l))
            })
            .collect()
    }

    fn valuation(&self) -> Vec<CheckReport> {
        let kinds: Vec<MeasureMapKind> = self.kinds().into_iter().map(|(k, _)| k).collect();
        let tol = self.cfg.tol_exact;
        self.per_trial(Suite::Valuation, self.cfg.trials, |n, trial, seed| {
            let inputs = json!({ "n": n, "trial": trial, "seed": seed });
            let r = valuation_instance(n, trial, seed)
                .and_then(|(p, h)| check_valuation_many(&kinds, &p, &h, tol, self.reg));
            settle_many("valuation", inputs, tol, r)
        })
    }

    fn contravariance(&self) -> Vec<CheckReport> {
        let kinds = self.kinds();
        let tol = self.cfg.tol_float;
        self.per_trial(Suite::Contravariance, self.cfg.trials, |n, trial, seed| {
            let inputs = json!({ "n": n, "trial": trial, "seed": seed });
            let r = (|| {
                let p = random_polytope(seed, n, n + 1 + (trial % 4))?;
                // Alternate between volume-preserving and general maps.
                let map = if trial % 2 == 0 {
                    random_unimodular(derive_seed(seed, &[1]), n, n + 2)?
                } else {
                    random_invertible(derive_seed(seed, &[1]), n)?
                };
                check_contravariance_many(&kinds, &p, &map, tol, derive_seed(seed, &[2]), self.reg)
            })();
            settle_many("contravariance", inputs, tol, r)
        })
    }

    fn functional(&self) -> Vec<CheckReport> {
        let tol = self.cfg.tol_float;
        let mut kinds = vec![(MeasureMapKind::Sstar, 1.0)];
        kinds.extend(self.cfg.p_values.iter().map(|&p| (MeasureMapKind::Sp(p), p)));
        let mut grid = Vec::new();
        for &n in &self.cfg.dims {
            let mut xs = vec![RVector::basis(n, 0), -&RVector::basis(n, 0), RVector::new(vec![int(1); n])];
            if n >= 3 {
                xs.push(RVector::basis(n, 2));
            }
            // Normal of the dissecting hyperplane for λ = 1/2.
            xs.push(&RVector::basis(n, 0) - &RVector::basis(n, 1));
            for (kind, p) in &kinds {
                for x in &xs {
                    for l in &self.parsed.lambdas {
                        for s in &self.parsed.scales {
                            grid.push((kind, *p, x.clone(), l, s));
                        }
                    }
                }
            }
        }
        grid.par_iter()
            .map(|(kind, p, x, l, s)| {
                let inputs = json!({ "kind": kind.name(), "p": p, "x": x.to_f64(), "lambda": l.to_string(), "s": s.to_string() });
                let r = rational_to_scale(s)
                    .and_then(|sf| check_functional_equation(kind, *p, sf, x, l, tol, self.reg));
                settle("functional_equation", inputs, tol, r)
            })
            .collect()
    }

    fn homogeneity(&self) -> Vec<CheckReport> {
        let tol = self.cfg.tol_exact;
        let mut grid = Vec::new();
        for &n in &self.cfg.dims {
            for (kind, p) in self.kinds() {
                for s in &self.parsed.scales {
                    grid.push((n, kind.clone(), p, s));
                }
            }
        }
        grid.par_iter()
            .map(|(n, kind, p, s)| {
                let inputs = json!({ "kind": kind.name(), "p": p, "n": n, "s": s.to_string() });
                settle("homogeneity", inputs, tol, check_homogeneity(kind, *p, *n, s, tol, self.reg))
            })
            .collect()
    }

    fn simplicity(&self) -> Vec<CheckReport> {
        let mut out = Vec::new();
        for &n in &self.cfg.dims {
            for (kind, p) in self.kinds() {
                // Vanishing is exact for p ≠ 1.
                let tol = if p == 1.0 { self.cfg.tol_exact } else { 0.0 };
                for s in &self.parsed.scales {
                    let inputs = json!({ "kind": kind.name(), "p": p, "n": n, "s": s.to_string() });
                    out.push(settle("simplicity", inputs, tol, check_simplicity(&kind, p, n, s, tol, self.reg)));
                }
            }
        }
        let kinds = self.simple_kinds();
        let count = self.cfg.trials.min(20);
        out.extend(self.per_trial(Suite::Simplicity, count, |n, trial, seed| {
            let inputs = json!({ "n": n, "trial": trial, "seed": seed });
            match random_flat_polytope(seed, n, n + (trial % 3)) {
                Ok(flat) => kinds
                    .iter()
                    .map(|(k, _)| settle("vanishes_low_dim", inputs.clone(), 0.0, check_vanishes(k, &flat, 0.0, self.reg)))
                    .collect(),
                Err(e) => vec![CheckReport::errored("vanishes_low_dim", inputs, 0.0, &e)],
            }
        }));
        out
    }

    fn variation(&self) -> Vec<CheckReport> {
        let mut out = Vec::new();
        let nonzero: Vec<f64> = self.cfg.p_values.iter().copied().filter(|&p| p != 0.0).collect();
        for &n in &self.cfg.dims {
            for &p in &nonzero {
                let inputs = json!({ "n": n, "p": p });
                out.push(settle(
                    "variation_closed_form",
                    inputs,
                    self.cfg.tol_float,
                    check_variation_closed_form(n, p, self.cfg.tol_float),
                ));
            }
        }
        let count = self.cfg.trials.min(self.cfg.variation_pairs);
        let (tol_fd, tol_float) = (self.cfg.tol_fd, self.cfg.tol_float);
        out.extend(self.per_trial(Suite::Variation, count, |n, trial, seed| {
            let inputs = json!({ "n": n, "trial": trial, "seed": seed });
            let pair = random_interior_polytope(seed, n, 2 * n + 1)
                .and_then(|p| Ok((p, random_interior_polytope(derive_seed(seed, &[1]), n, 2 * n + 1)?)));
            let (p, q) = match pair {
                Ok(pq) => pq,
                Err(e) => return vec![CheckReport::errored("variation", inputs, tol_fd, &e)],
            };
            let mut reports = Vec::new();
            for &e in &nonzero {
                if e > 0.0 {
                    reports.push(settle("variation_finite_difference", inputs.clone(), tol_fd, check_variation_fd(&p, &q, e, tol_fd)));
                }
                reports.push(settle("variation_self", inputs.clone(), tol_float, check_variation_self(&p, e, tol_float)));
            }
            reports
        }));
        out
    }

    fn fit(&self) -> Vec<CheckReport> {
        let tol = self.cfg.tol_float;
        let mut out = Vec::new();
        for &n in &self.cfg.dims {
            let probes = match default_probes(n, self.seed(Suite::Fit, &[n as u64])) {
                Ok(p) => p,
                Err(e) => {
                    out.push(CheckReport::errored("fit", json!({ "n": n }), tol, &e));
                    continue;
                }
            };
            let mut recover: Vec<(String, f64, Vec<f64>)> = vec![
                ("2*S + 3*S(-)".into(), 1.0, vec![2.0, 3.0, 0.0, 0.0]),
                ("S + 0.5*S(-) - 0.25*Sstar + 1.5*Sstar(-)".into(), 1.0, vec![1.0, 0.5, -0.25, 1.5]),
            ];
            for &p in self.cfg.p_values.iter().filter(|&&p| p != 1.0) {
                recover.push(("2*Sp + 0.5*Sp(-)".into(), p, vec![2.0, 0.5]));
            }
            for (spec, p, expected) in recover {
                let inputs = json!({ "n": n, "candidate": spec, "p": p, "expected": expected });
                let r = MeasureMapKind::parse(&spec, p)
                    .and_then(|k| fit_classification(&k, p, &probes, self.reg))
                    .map(|fit| recovery_report(fit, &expected, inputs.clone(), tol));
                out.push(settle("fit_recovers", inputs, tol, r));
            }
            for (spec, p) in [("S", 2.0), (NORMALIZED_S, 1.0)] {
                let inputs = json!({ "n": n, "candidate": spec, "p": p });
                let r = MeasureMapKind::parse(spec, p)
                    .and_then(|k| fit_classification(&k, p, &probes, self.reg))
                    .map(|fit| rejection_report(fit, inputs.clone()));
                out.push(settle("fit_rejects", inputs, 1.0, r));
            }
        }
        out
    }

    /// Runs `trial` for every dimension and trial index in parallel and
    /// concatenates the results in `(n, trial)` order.
    fn per_trial<F>(&self, suite: Suite, count: usize, trial: F) -> Vec<CheckReport>
    where
        F: Fn(usize, usize, u64) -> Vec<CheckReport> + Sync,
    {
        let jobs: Vec<(usize, usize)> = self
            .cfg
            .dims
            .iter()
            .flat_map(|&n| (0..count).map(move |t| (n, t)))
            .collect();
        let results: Vec<Vec<CheckReport>> = jobs
            .par_iter()
            .map(|&(n, t)| trial(n, t, self.seed(suite, &[n as u64, t as u64])))
            .collect();
        results.into_iter().flatten().collect()
    }
}

/// Random polytope and cutting hyperplane for one valuation trial. Every fourth
/// trial cuts through a vertex; otherwise a hyperplane that splits the polytope
/// is preferred.
fn valuation_instance(n: usize, trial: usize, seed: u64) -> Result<(Polytope, Hyperplane)> {
    let p = random_polytope(seed, n, n + 1 + (trial % 4))?;
    if trial % 4 == 3 {
        let verts: Vec<&RVector> = p.vertices().iter().filter(|v| !v.is_zero()).collect();
        let v = verts[seed as usize % verts.len()];
        return Ok((p.clone(), random_hyperplane_through(derive_seed(seed, &[1]), v)?));
    }
    let mut h = random_origin_hyperplane(derive_seed(seed, &[1, 0]), n)?;
    for attempt in 1..20u64 {
        if splits(&p, &h) {
            break;
        }
        h = random_origin_hyperplane(derive_seed(seed, &[1, attempt]), n)?;
    }
    Ok((p, h))
}

fn splits(p: &Polytope, h: &Hyperplane) -> bool {
    let signs: Vec<std::cmp::Ordering> = p
        .vertices()
        .iter()
        .map(|v| h.normal().dot(v).cmp(&int(0)))
        .collect();
    signs.contains(&std::cmp::Ordering::Greater) && signs.contains(&std::cmp::Ordering::Less)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `S(T^n) = 1/(n-1)!·Σ δ_{-e_i} + √n/(n-1)!·δ_{⟨1⟩}`.
fn golden_surface(n: usize, tol: f64) -> Result<CheckReport> {
    let t = standard_simplex(n, &int(1))?;
    let f = factorial(n - 1);
    let mut atoms: Vec<Atom> = (0..n)
        .map(|i| Ok(Atom { dir: Direction::from_rational(&RVector::basis(n, i))?.neg(), mass: 1.0 / f }))
        .collect::<Result<_>>()?;
    atoms.push(Atom { dir: Direction::from_rational(&RVector::new(vec![int(1); n]))?, mass: (n as f64).sqrt() / f });
    let expected = DiscreteSphereMeasure::from_atoms(n, atoms)?;
    let got = surface_measure(&t, SurfaceVariant::S);
    Ok(CheckReport::new("golden_surface_simplex", json!({ "n": n }), measure_distance(&got, &expected)?, tol))
}

/// `S_p(T^n) = n^{(p-1)/2}·√n/(n-1)!·δ_{⟨1⟩}`: only the facet off the origin counts.
fn golden_lp(n: usize, p: f64, tol: f64) -> Result<CheckReport> {
    let t = standard_simplex(n, &int(1))?;
    let nf = n as f64;
    let h: f64 = 1.0 / nf.sqrt();
    let mass = h.powf(1.0 - p) * nf.sqrt() / factorial(n - 1);
    let expected = DiscreteSphereMeasure::from_atoms(
        n,
        [Atom { dir: Direction::from_rational(&RVector::new(vec![int(1); n]))?, mass }],
    )?;
    let got = lp_surface_measure(&t, p);
    let residual = measure_distance(&got, &expected)? / mass.max(1.0);
    Ok(CheckReport::new("golden_lp_simplex", json!({ "n": n, "p": p }), residual, tol))
}

fn fit_value(fit: &FitResult) -> Value {
    serde_json::to_value(fit).expect("fit serializes")
}

/// The fit must reproduce the combination it was built from.
fn recovery_report(fit: FitResult, expected: &[f64], mut inputs: Value, tol: f64) -> CheckReport {
    let coeff_err = fit
        .coefficients
        .iter()
        .zip(expected)
        .map(|(c, e)| (c - e).abs())
        .fold(0.0, f64::max);
    let residual = if fit.constraints_ok { fit.residual.max(coeff_err) } else { f64::INFINITY };
    inputs["fit"] = fit_value(&fit);
    CheckReport::new("fit_recovers", inputs, residual, tol)
}

/// A candidate outside the span must leave a misfit above [`REJECT_TOL`];
/// the residual is `REJECT_TOL / misfit`, so the check passes when it is `≤ 1`.
fn rejection_report(fit: FitResult, mut inputs: Value) -> CheckReport {
    let residual = if fit.residual > 0.0 { REJECT_TOL / fit.residual } else { f64::INFINITY };
    inputs["fit"] = fit_value(&fit);
    CheckReport::new("fit_rejects", inputs, residual, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suite: Suite) -> SuiteConfig {
        SuiteConfig {
            suites: vec![suite],
            dims: vec![3],
            trials: 6,
            variation_pairs: 2,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn every_suite_passes_on_small_configs() {
        for suite in Suite::ALL {
            let report = run_suite(&small(suite)).unwrap();
            assert!(!report.checks.is_empty(), "{suite}");
            let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
            assert!(failed.is_empty(), "{suite}: {failed:#?}");
        }
    }

    #[test]
    fn deterministic_and_ordered() {
        let cfg = SuiteConfig { suites: vec![Suite::Valuation, Suite::Contravariance], ..small(Suite::Valuation) };
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a, b);
        let other = run_suite(&SuiteConfig { seed: 7, ..cfg }).unwrap();
        assert_ne!(a.checks, other.checks);
    }

    #[test]
    fn zero_trials_gives_an_empty_report() {
        let cfg = SuiteConfig { trials: 0, ..small(Suite::Valuation) };
        let r = run_suite(&cfg).unwrap();
        assert!(r.checks.is_empty());
        assert_eq!(r.summary, Summary { passed: 0, failed: 0 });
    }

    #[test]
    fn tiny_tolerance_exposes_rounding() {
        let cfg = SuiteConfig {
            suites: vec![Suite::Contravariance, Suite::Variation],
            tol_float: 1e-15,
            tol_fd: 1e-15,
            ..small(Suite::Functional)
        };
        let r = run_suite(&cfg).unwrap();
        assert!(r.summary.failed > 0);
        assert_eq!(r.summary.passed + r.summary.failed, r.checks.len());
    }

    #[test]
    fn invalid_configs() {
        let bad = [
            SuiteConfig { dims: vec![], ..SuiteConfig::default() },
            SuiteConfig { dims: vec![1], ..SuiteConfig::default() },
            SuiteConfig { tol_float: -1.0, ..SuiteConfig::default() },
            SuiteConfig { lambdas: vec!["1".into()], ..SuiteConfig::default() },
            SuiteConfig { scales: vec!["-2".into()], ..SuiteConfig::default() },
            SuiteConfig { p_values: vec![f64::NAN], ..SuiteConfig::default() },
            SuiteConfig { suites: vec![], ..SuiteConfig::default() },
        ];
        for cfg in bad {
            assert!(matches!(run_suite(&cfg), Err(Error::ConfigInvalid(_))), "{cfg:?}");
        }
        assert!(SuiteConfig::from_json(r#"{"trials": 3, "bogus": 1}"#).is_err());
        let cfg = SuiteConfig::from_json(r#"{"trials": 3, "suites": ["fit"]}"#).unwrap();
        assert_eq!(cfg.trials, 3);
        assert_eq!(cfg.suites, vec![Suite::Fit]);
        assert_eq!(Suite::parse_list("all").unwrap().len(), 9);
        assert!(Suite::parse_list("nope").is_err());
    }
}
