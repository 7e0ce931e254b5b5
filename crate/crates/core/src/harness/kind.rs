//! Measure-valued maps on polytopes: the built-in surface measures, signed
//! combinations of them, and externally registered maps.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::measure::{
    combine, lp_surface_measure_scaled, surface_measure, surface_measure_scaled, DiscreteSphereMeasure,
    SignedCombination, SurfaceVariant,
};
use crate::polytope::Polytope;

/// `P ↦ μ(P,·)`.
#[derive(Clone, Debug, PartialEq)]
pub enum MeasureMapKind {
    S,
    Sstar,
    So,
    Sp(f64),
    Combination(Vec<Term>),
    External(String),
}

/// `coeff · kind(±P)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub kind: MeasureMapKind,
    /// Evaluate on `-P` instead of `P`.
    pub reflected: bool,
}

impl Term {
    pub fn new(coeff: f64, kind: MeasureMapKind) -> Self {
        Term {
            coeff,
            kind,
            reflected: false,
        }
    }

    pub fn reflected(coeff: f64, kind: MeasureMapKind) -> Self {
        Term {
            coeff,
            kind,
            reflected: true,
        }
    }
}

pub type ExternalMap = Arc<dyn Fn(&Polytope) -> Result<DiscreteSphereMeasure> + Send + Sync>;

/// Named measure maps that `MeasureMapKind::External` can refer to.
#[derive(Clone, Default)]
pub struct MapRegistry {
    maps: HashMap<String, ExternalMap>,
}

impl fmt::Debug for MapRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names: Vec<&String> = self.maps.keys().collect();
        names.sort();
        f.debug_struct("MapRegistry").field("maps", &names).finish()
    }
}

/// Name of the built-in total-mass-normalized surface measure, a map that is
/// not a valuation of any degree and so lies outside every classification span.
pub const NORMALIZED_S: &str = "S_normalized";

impl MapRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry preloaded with [`NORMALIZED_S`].
    pub fn with_builtins() -> Self {
        let mut reg = Self::new();
        reg.register(NORMALIZED_S, |p| {
            let s = surface_measure(p, SurfaceVariant::S);
            let total = s.total_mass();
            if total == 0.0 {
                Ok(s)
            } else {
                s.scaled(1.0 / total)
            }
        });
        reg
    }

    pub fn register<F>(&mut self, name: &str, f: F)
    where
        F: Fn(&Polytope) -> Result<DiscreteSphereMeasure> + Send + Sync + 'static,
    {
        self.maps.insert(name.to_string(), Arc::new(f));
    }

    pub fn get(&self, name: &str) -> Result<&ExternalMap> {
        self.maps.get(name).ok_or_else(|| Error::UnknownMap(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.maps.contains_key(name)
    }
}

/// Signed atoms below this (relative to the total absolute mass) are treated as
/// cancellation noise when a combination is turned back into a measure.
const CANCELLATION_TOL: f64 = 1e-12;

impl MeasureMapKind {
    pub fn evaluate(&self, p: &Polytope, reg: &MapRegistry) -> Result<DiscreteSphereMeasure> {
        match self {
            MeasureMapKind::External(name) => (reg.get(name)?)(p),
            MeasureMapKind::Combination(terms) => combination(terms, |kind, reflected| {
                if reflected {
                    kind.evaluate(&p.reflect(), reg)
                } else {
                    kind.evaluate(p, reg)
                }
            }),
            _ => Ok(self.builtin(p, 1.0).expect("builtin kind")),
        }
    }

    /// Evaluates on `tP` for real `t > 0` through the facet scaling law, so that
    /// irrational multiples such as `s·λ^{1/n}·T^n` can be handled exactly up to
    /// the final float step. External maps only accept `t = 1`.
    pub fn evaluate_scaled(&self, p: &Polytope, t: f64, reg: &MapRegistry) -> Result<DiscreteSphereMeasure> {
        if !(t > 0.0) {
            return Err(Error::BadScale);
        }
        match self {
            MeasureMapKind::External(name) => {
                if t != 1.0 {
                    return Err(Error::ConfigInvalid(format!(
                        "external map {name:?} cannot be evaluated on a real multiple"
                    )));
                }
                (reg.get(name)?)(p)
            }
            MeasureMapKind::Combination(terms) => combination(terms, |kind, reflected| {
                if reflected {
                    kind.evaluate_scaled(&p.reflect(), t, reg)
                } else {
                    kind.evaluate_scaled(p, t, reg)
                }
            }),
            _ => Ok(self.builtin(p, t).expect("builtin kind")),
        }
    }

    fn builtin(&self, p: &Polytope, t: f64) -> Option<DiscreteSphereMeasure> {
        Some(match self {
            MeasureMapKind::S => surface_measure_scaled(p, SurfaceVariant::S, t),
            MeasureMapKind::Sstar => surface_measure_scaled(p, SurfaceVariant::Sstar, t),
            MeasureMapKind::So => surface_measure_scaled(p, SurfaceVariant::So, t),
            MeasureMapKind::Sp(q) => lp_surface_measure_scaled(p, *q, t),
            _ => return None,
        })
    }

    /// Degree of contravariance of a built-in kind (1 for `S`, `S*`, `S°`).
    pub fn degree(&self) -> Option<f64> {
        match self {
            MeasureMapKind::S | MeasureMapKind::Sstar | MeasureMapKind::So => Some(1.0),
            MeasureMapKind::Sp(q) => Some(*q),
            MeasureMapKind::Combination(terms) => {
                let first = terms.first()?.kind.degree()?;
                terms
                    .iter()
                    .all(|t| t.kind.degree() == Some(first))
                    .then_some(first)
            }
            MeasureMapKind::External(_) => None,
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }

    /// Parses specs such as `"2*S + 3*S(-)"`, `"Sp"`, `"Sp[0.5] - 0.25*Sstar(-)"`.
    ///
    /// `Sp` without brackets takes `default_p`. Unknown identifiers become
    /// `External` maps. A single unit term parses to the bare kind.
    pub fn parse(spec: &str, default_p: f64) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in map spec {spec:?}"));
        let mut terms = Vec::new();
        let mut rest = spec.trim();
        let mut sign = 1.0;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1.0;
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            let end = next_operator(rest);
            let (token, tail) = rest.split_at(end);
            terms.push(parse_term(token.trim(), sign, default_p).map_err(|e| bad(&e))?);
            let tail = tail.trim_start();
            if tail.is_empty() {
                break;
            }
            sign = if tail.starts_with('-') { -1.0 } else { 1.0 };
            rest = tail[1..].trim_start();
            if rest.is_empty() {
                return Err(bad("dangling operator"));
            }
        }
        if terms.len() == 1 && terms[0].coeff == 1.0 && !terms[0].reflected {
            return Ok(terms.pop().unwrap().kind);
        }
        Ok(MeasureMapKind::Combination(terms))
    }
}

/// Index of the next top-level `+`/`-` that separates terms.
fn next_operator(s: &str) -> usize {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b'+' | b'-' if depth == 0 && i > 0 => {
                // Exponent sign inside a float literal such as 1e-3.
                let prev = bytes[i - 1];
                if (prev == b'e' || prev == b'E') && i >= 2 && bytes[i - 2].is_ascii_digit() {
                    continue;
                }
                return i;
            }
            _ => {}
        }
    }
    s.len()
}

fn parse_term(token: &str, sign: f64, default_p: f64) -> std::result::Result<Term, String> {
    let (coeff, body) = match token.split_once('*') {
        Some((c, b)) => (
            c.trim().parse::<f64>().map_err(|_| format!("bad coefficient {c:?}"))?,
            b.trim(),
        ),
        None => (1.0, token),
    };
    let (body, reflected) = match body.strip_suffix("(-)") {
        Some(b) => (b.trim(), true),
        None => (body, false),
    };
    let kind = match body {
        "S" => MeasureMapKind::S,
        "Sstar" | "S*" => MeasureMapKind::Sstar,
        "So" | "S°" => MeasureMapKind::So,
        "Sp" => MeasureMapKind::Sp(default_p),
        _ if body.starts_with("Sp[") && body.ends_with(']') => {
            let q = &body[3..body.len() - 1];
            MeasureMapKind::Sp(q.trim().parse().map_err(|_| format!("bad exponent {q:?}"))?)
        }
        _ if !body.is_empty() && body.chars().all(|c| c.is_alphanumeric() || c == '_') => {
            MeasureMapKind::External(body.to_string())
        }
        _ => return Err(format!("unrecognized term {token:?}")),
    };
    Ok(Term {
        coeff: sign * coeff,
        kind,
        reflected,
    })
}

fn combination(
    terms: &[Term],
    mut eval: impl FnMut(&MeasureMapKind, bool) -> Result<DiscreteSphereMeasure>,
) -> Result<DiscreteSphereMeasure> {
    let mut combo = SignedCombination::default();
    for t in terms {
        combo.terms.push((t.coeff, eval(&t.kind, t.reflected)?));
    }
    let scale = combo
        .terms
        .iter()
        .map(|(c, m)| c.abs() * m.total_mass())
        .sum::<f64>()
        .max(1.0);
    let signed = combine(&combo)?;
    DiscreteSphereMeasure::try_from_signed(signed, CANCELLATION_TOL * scale)
}

impl fmt::Display for MeasureMapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureMapKind::S => write!(f, "S"),
            MeasureMapKind::Sstar => write!(f, "Sstar"),
            MeasureMapKind::So => write!(f, "So"),
            MeasureMapKind::Sp(q) => write!(f, "Sp[{q}]"),
            MeasureMapKind::External(name) => write!(f, "{name}"),
            MeasureMapKind::Combination(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    let c = if i == 0 {
                        format!("{}", t.coeff)
                    } else if t.coeff < 0.0 {
                        format!(" - {}", -t.coeff)
                    } else {
                        format!(" + {}", t.coeff)
                    };
                    write!(f, "{c}*{}{}", t.kind, if t.reflected { "(-)" } else { "" })?;
                }
                Ok(())
            }
        }
    }
}
