//! JSON formats for polytopes, linear maps and measures.
//!
//! Polytopes: `{"n": 3, "vertices": [["0","0","0"], ["1/2","0","0"], ...]}`;
//! coordinates may be rational strings or JSON integers.
//!
//! Measures: `{"n": 3, "p": 1, "atoms": [{"dir": [-1,0,0], "mass": 5e-1}, ...]}`
//! with atoms sorted by direction and masses written with 17 significant digits, so
//! that writing and reading back reproduces every `f64` bit for bit.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Direction, LinearMap, RVector, Rational};
use crate::measure::{Atom, DiscreteSphereMeasure};
use crate::polytope::{hull, Polytope};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Shortest form that still round-trips: 17 significant digits in exponent form.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| parse_err(format!("invalid JSON: {e}")))
}

fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(num) => match num.as_i64() {
            Some(i) => Ok(Rational::from_integer(BigInt::from(i))),
            None => Err(parse_err(format!(
                "coordinate {num} is not an integer; write fractions as \"p/q\" strings"
            ))),
        },
        other => Err(parse_err(format!("expected a rational, got {other}"))),
    }
}

pub fn rvector_from_value(v: &Value) -> Result<RVector> {
    let arr = v.as_array().ok_or_else(|| parse_err("expected an array of coordinates"))?;
    Ok(RVector::new(arr.iter().map(rational_from_value).collect::<Result<_>>()?))
}

pub fn rvector_to_value(v: &RVector) -> Value {
    Value::Array(v.coords().iter().map(|c| Value::String(format_rational(c))).collect())
}

pub fn polytope_to_value(p: &Polytope) -> Value {
    json!({
        "n": p.ambient_dim(),
        "vertices": p.vertices().iter().map(rvector_to_value).collect::<Vec<_>>(),
    })
}

pub fn polytope_from_value(v: &Value) -> Result<Polytope> {
    let verts = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("polytope needs a \"vertices\" array"))?;
    let pts: Vec<RVector> = verts.iter().map(rvector_from_value).collect::<Result<_>>()?;
    if let Some(n) = v.get("n") {
        let n = n.as_u64().ok_or_else(|| parse_err("\"n\" must be a positive integer"))? as usize;
        if let Some(bad) = pts.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch(format!(
                "vertex of length {} in a polytope declared in R^{n}",
                bad.dim()
            )));
        }
    }
    hull(&pts)
}

pub fn polytope_from_str(text: &str) -> Result<Polytope> {
    polytope_from_value(&parse_json(text)?)
}

/// A matrix as `[[row], ...]` or `{"rows": [[row], ...]}`.
pub fn map_from_value(v: &Value) -> Result<LinearMap> {
    let rows = v.get("rows").unwrap_or(v);
    let rows = rows.as_array().ok_or_else(|| parse_err("map must be an array of rows"))?;
    let rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| rvector_from_value(r).map(RVector::into_coords))
        .collect::<Result<_>>()?;
    LinearMap::invertible(rows)
}

pub fn map_from_str(text: &str) -> Result<LinearMap> {
    map_from_value(&parse_json(text)?)
}

pub fn map_to_value(m: &LinearMap) -> Value {
    json!({
        "rows": m
            .rows()
            .iter()
            .map(|r| r.iter().map(|c| Value::String(format_rational(c))).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn bigint_to_json(b: &BigInt) -> String {
    match b.to_i64() {
        Some(i) => i.to_string(),
        None => format!("\"{b}\""),
    }
}

pub fn direction_to_value(d: &Direction) -> Value {
    Value::Array(
        d.coords()
            .iter()
            .map(|c| match c.to_i64() {
                Some(i) => Value::from(i),
                None => Value::String(c.to_string()),
            })
            .collect(),
    )
}

fn direction_from_value(v: &Value) -> Result<Direction> {
    let arr = v.as_array().ok_or_else(|| parse_err("\"dir\" must be an array of integers"))?;
    let coords = arr
        .iter()
        .map(|c| match c {
            Value::Number(num) => num
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| parse_err(format!("direction entry {num} is not an integer"))),
            Value::String(s) => s
                .parse::<BigInt>()
                .map_err(|_| parse_err(format!("direction entry {s:?} is not an integer"))),
            other => Err(parse_err(format!("bad direction entry {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Direction::from_integers(coords)
}

/// Canonical text form of a measure.
pub fn measure_to_string(mu: &DiscreteSphereMeasure, p: Option<f64>) -> String {
    let mut out = format!("{{\"n\":{}", mu.ambient_dim());
    if let Some(p) = p {
        out.push_str(&format!(",\"p\":{}", format_float(p)));
    }
    out.push_str(",\"atoms\":[");
    for (i, (dir, mass)) in mu.atoms().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let coords: Vec<String> = dir.coords().iter().map(bigint_to_json).collect();
        out.push_str(&format!("{{\"dir\":[{}],\"mass\":{}}}", coords.join(","), format_float(mass)));
    }
    out.push_str("]}");
    out
}

pub fn measure_to_value(mu: &DiscreteSphereMeasure, p: Option<f64>) -> Value {
    parse_json(&measure_to_string(mu, p)).expect("canonical form is valid JSON")
}

/// Reads a measure and the optional exponent `p` recorded with it.
pub fn measure_from_value(v: &Value) -> Result<(DiscreteSphereMeasure, Option<f64>)> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| parse_err("measure needs an integer \"n\""))? as usize;
    let p = match v.get("p") {
        None | Some(Value::Null) => None,
        Some(x) => Some(x.as_f64().ok_or_else(|| parse_err("\"p\" must be a number"))?),
    };
    let atoms = v
        .get("atoms")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("measure needs an \"atoms\" array"))?;
    let atoms = atoms
        .iter()
        .map(|a| {
            let dir = direction_from_value(a.get("dir").ok_or_else(|| parse_err("atom without \"dir\""))?)?;
            let mass = a
                .get("mass")
                .and_then(Value::as_f64)
                .ok_or_else(|| parse_err("atom without numeric \"mass\""))?;
            Ok(Atom { dir, mass })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((DiscreteSphereMeasure::from_atoms(n, atoms)?, p))
}

pub fn measure_from_str(text: &str) -> Result<(DiscreteSphereMeasure, Option<f64>)> {
    measure_from_value(&parse_json(text)?)
}

/// `{"probes": [{"polytope": {...}, "measure": {...}}, ...]}`: candidate values
/// of an unknown map on a list of polytopes.
pub fn probe_bundle_from_str(text: &str) -> Result<Vec<(Polytope, DiscreteSphereMeasure)>> {
    let v = parse_json(text)?;
    let probes = v
        .get("probes")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("bundle needs a \"probes\" array"))?;
    probes
        .iter()
        .map(|entry| {
            let p = polytope_from_value(entry.get("polytope").ok_or_else(|| parse_err("probe without \"polytope\""))?)?;
            let (m, _) = measure_from_value(entry.get("measure").ok_or_else(|| parse_err("probe without \"measure\""))?)?;
            if m.ambient_dim() != p.ambient_dim() {
                return Err(Error::DimensionMismatch("probe measure and polytope differ in dimension".into()));
            }
            Ok((p, m))
        })
        .collect()
}

pub fn probe_bundle_to_string(probes: &[(Polytope, DiscreteSphereMeasure)]) -> String {
    let entries: Vec<String> = probes
        .iter()
        .map(|(p, m)| format!("{{\"polytope\":{},\"measure\":{}}}", polytope_to_value(p), measure_to_string(m, None)))
        .collect();
    format!("{{\"probes\":[{}]}}", entries.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};
    use crate::measure::{lp_surface_measure, surface_measure, SurfaceVariant};
    use crate::shapes::standard_simplex;

    #[test]
    fn polytope_round_trip() {
        let p = hull(&[
            RVector::zeros(3),
            RVector::new(vec![rat(1, 2), int(0), int(0)]),
            RVector::from_ints(&[0, 3, 0]),
            RVector::new(vec![int(0), int(0), rat(-7, 3)]),
        ])
        .unwrap();
        let text = polytope_to_value(&p).to_string();
        assert!(text.contains("\"1/2\"") && text.contains("\"-7/3\""));
        assert_eq!(polytope_from_str(&text).unwrap(), p);
        let q = polytope_from_str(r#"{"n":2,"vertices":[[0,0],[1,0],["0","1/2"]]}"#).unwrap();
        assert_eq!(q.volume(), rat(1, 4));
    }

    #[test]
    fn polytope_errors() {
        assert!(matches!(polytope_from_str("{"), Err(Error::Parse(_))));
        assert!(matches!(
            polytope_from_str(r#"{"n":3,"vertices":[[0,0,0],[1,0]]}"#),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(polytope_from_str(r#"{"vertices":[[0.5,0]]}"#), Err(Error::Parse(_))));
        assert_eq!(
            polytope_from_str(r#"{"vertices":[[1,0],[0,1],[1,1]]}"#),
            Err(Error::OriginNotContained)
        );
    }

    #[test]
    fn measure_round_trip_is_exact() {
        let t = standard_simplex(3, &rat(7, 3)).unwrap();
        for mu in [surface_measure(&t, SurfaceVariant::S), lp_surface_measure(&t, 0.37)] {
            let text = measure_to_string(&mu, Some(0.37));
            let (back, p) = measure_from_str(&text).unwrap();
            assert_eq!(p, Some(0.37));
            assert_eq!(back, mu);
            for ((d1, m1), (d2, m2)) in back.atoms().zip(mu.atoms()) {
                assert_eq!(d1, d2);
                assert_eq!(m1.to_bits(), m2.to_bits());
            }
        }
    }

    #[test]
    fn measure_text_is_sorted_and_full_precision() {
        let t = standard_simplex(3, &int(1)).unwrap();
        let text = measure_to_string(&surface_measure(&t, SurfaceVariant::S), Some(1.0));
        assert!(text.starts_with(r#"{"n":3,"p":1.0000000000000000e0,"atoms":[{"dir":[-1,0,0],"mass":5.0000000000000000e-1}"#));
        assert!(text.contains(r#"{"dir":[1,1,1],"mass":8.6602540378443871e-1}"#), "{text}");
    }

    #[test]
    fn maps_and_bundles() {
        let m = map_from_str(r#"[["1","1/2"],[0,2]]"#).unwrap();
        assert_eq!(m.det(), int(2));
        assert_eq!(map_from_value(&map_to_value(&m)).unwrap(), m);
        assert_eq!(map_from_str("[[1,2],[2,4]]"), Err(Error::SingularMap));

        let t = standard_simplex(3, &int(1)).unwrap();
        let bundle = vec![(t.clone(), surface_measure(&t, SurfaceVariant::S))];
        let back = probe_bundle_from_str(&probe_bundle_to_string(&bundle)).unwrap();
        assert_eq!(back, bundle);
    }
}
