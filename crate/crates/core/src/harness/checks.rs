//! Individual verification checks. Each returns a [`CheckReport`]; geometric
//! failures on the inputs themselves are returned as errors instead.

use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::harness::kind::{MapRegistry, MeasureMapKind};
use crate::harness::random::{random_unit, rng};
use crate::harness::report::CheckReport;
use crate::io::{direction_to_value, map_to_value, polytope_to_value, rvector_to_value};
use crate::linalg::{format_rational, int, to_f64, Direction, LinearMap, RVector, Rational};
use crate::lp::{lp_first_variation, relative_step, richardson_variation, DEFAULT_EPS};
use crate::measure::{cosine_transform, eval_homog, pushforward_contra, relative_distance, DiscreteSphereMeasure};
use crate::polytope::{apply_map, cut, Hyperplane, Polytope};
use crate::shapes::{cube, dissection_hyperplane, origin, phi_map, psi_map, simplex_prime, standard_simplex};

/// Default tolerance of checks that compare exactly computed data.
pub const TOL_EXACT: f64 = 1e-12;
/// Default tolerance of checks that go through floating-point geometry.
pub const TOL_FLOAT: f64 = 1e-9;
/// Default tolerance of finite-difference checks.
pub const TOL_FD: f64 = 1e-3;

/// Number of random directions in the integral form of contravariance.
const INTEGRAL_PROBES: usize = 3;

/// The atom where two measures differ most.
fn worst_atom(a: &DiscreteSphereMeasure, b: &DiscreteSphereMeasure) -> Value {
    let mut worst: Option<(&Direction, f64)> = None;
    for (d, _) in a.atoms().chain(b.atoms()) {
        let diff = (a.mass(d) - b.mass(d)).abs();
        if worst.is_none_or(|(_, w)| diff > w) {
            worst = Some((d, diff));
        }
    }
    match worst {
        Some((d, _)) => json!({ "dir": direction_to_value(d), "lhs": a.mass(d), "rhs": b.mass(d) }),
        None => Value::Null,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn hyperplane_value(h: &Hyperplane) -> Value {
    rvector_to_value(h.normal())
}

/// `μ(P) + μ(P ∩ H) = μ(P ∩ H⁺) + μ(P ∩ H⁻)`.
pub fn check_valuation(
    kind: &MeasureMapKind,
    p: &Polytope,
    h: &Hyperplane,
    tol: f64,
    reg: &MapRegistry,
) -> Result<CheckReport> {
    Ok(check_valuation_many(std::slice::from_ref(kind), p, h, tol, reg)?.remove(0))
}

/// [`check_valuation`] for several kinds sharing one cut.
pub fn check_valuation_many(
    kinds: &[MeasureMapKind],
    p: &Polytope,
    h: &Hyperplane,
    tol: f64,
    reg: &MapRegistry,
) -> Result<Vec<CheckReport>> {
    let c = cut(p, h)?;
    kinds
        .iter()
        .map(|kind| {
            let lhs = kind.evaluate(p, reg)?.plus(&kind.evaluate(&c.zero, reg)?)?;
            let rhs = kind.evaluate(&c.plus, reg)?.plus(&kind.evaluate(&c.minus, reg)?)?;
            let residual = relative_distance(&lhs, &rhs)?;
            Ok(CheckReport::new(
                "valuation",
                json!({
                    "kind": kind.name(),
                    "P": polytope_to_value(p),
                    "H_normal": hyperplane_value(h),
                }),
                residual,
                tol,
            )
            .with_witness(|| worst_atom(&lhs, &rhs)))
        })
        .collect()
}

/// `μ(φP) = φ·μ(P)` atom by atom, and for `p > 0` also
/// `∫|w·x|^p dμ(φP) = |det φ| ∫|w·φ^{-t}x|^p dμ(P)` on random `w`.
pub fn check_contravariance(
    kind: &MeasureMapKind,
    p: &Polytope,
    map: &LinearMap,
    exponent: f64,
    tol: f64,
    seed: u64,
    reg: &MapRegistry,
) -> Result<CheckReport> {
    let image = apply_map(p, map)?;
    contravariance_on(kind, p, &image, map, exponent, tol, seed, reg)
}

/// [`check_contravariance`] for several `(kind, exponent)` pairs sharing one image.
pub fn check_contravariance_many(
    kinds: &[(MeasureMapKind, f64)],
    p: &Polytope,
    map: &LinearMap,
    tol: f64,
    seed: u64,
    reg: &MapRegistry,
) -> Result<Vec<CheckReport>> {
    let image = apply_map(p, map)?;
    kinds
        .iter()
        .map(|(kind, exponent)| contravariance_on(kind, p, &image, map, *exponent, tol, seed, reg))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn contravariance_on(
    kind: &MeasureMapKind,
    p: &Polytope,
    image: &Polytope,
    map: &LinearMap,
    exponent: f64,
    tol: f64,
    seed: u64,
    reg: &MapRegistry,
) -> Result<CheckReport> {
    let lhs = kind.evaluate(image, reg)?;
    let base = kind.evaluate(p, reg)?;
    let rhs = pushforward_contra(&base, map, exponent)?;
    let atom_residual = relative_distance(&lhs, &rhs)?;

    let mut integral_residual = 0.0;
    if exponent > 0.0 {
        let n = p.ambient_dim();
        let abs_det = to_f64(&map.det().abs());
        let inv_t = map.inverse_transpose()?;
        let inv_t: Vec<Vec<f64>> = inv_t.rows().iter().map(|r| r.iter().map(to_f64).collect()).collect();
        let mut r = rng(seed);
        for _ in 0..INTEGRAL_PROBES {
            let w = random_unit(&mut r, n);
            let left = cosine_transform(&lhs, exponent, &w)?;
            let right = abs_det
                * base.integrate(|x| {
                    let y: Vec<f64> = inv_t.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect();
                    let c: f64 = y.iter().zip(&w).map(|(a, b)| a * b).sum();
                    c.abs().powf(exponent)
                });
            integral_residual = f64::max(integral_residual, rel(left, right));
        }
    }
    Ok(CheckReport::new(
        "contravariance",
        json!({
            "kind": kind.name(),
            "p": exponent,
            "P": polytope_to_value(p),
            "map": map_to_value(map),
            "det": format_rational(&map.det()),
        }),
        atom_residual.max(integral_residual),
        tol,
    )
    .with_witness(|| {
        json!({
            "atom_residual": atom_residual,
            "integral_residual": integral_residual,
            "worst_atom": worst_atom(&lhs, &rhs),
        })
    }))
}

/// Exact vertex-set comparison of the three pieces of `sT^n` cut by `H_λ`
/// with `sφ_λT^n`, `sψ_λT^n` and `sφ_λT'`. The residual counts mismatches.
pub fn check_dissection_identity(n: usize, s: &Rational, lambda: &Rational) -> Result<CheckReport> {
    let t = standard_simplex(n, s)?;
    let tp = simplex_prime(n, s)?;
    let phi = phi_map(lambda, n)?;
    let psi = psi_map(lambda, n)?;
    let c = cut(&t, &dissection_hyperplane(lambda, n)?)?;
    let pairs = [
        ("plus", c.plus, apply_map(&t, &phi)?),
        ("minus", c.minus, apply_map(&t, &psi)?),
        ("zero", c.zero, apply_map(&tp, &phi)?),
    ];
    let bad: Vec<&(&str, Polytope, Polytope)> = pairs.iter().filter(|(_, a, b)| a.vertices() != b.vertices()).collect();
    let witness: Vec<Value> = bad
        .iter()
        .map(|(name, a, b)| json!({ "piece": name, "cut": polytope_to_value(a), "mapped": polytope_to_value(b) }))
        .collect();
    Ok(CheckReport::new(
        "dissection_identity",
        json!({ "n": n, "s": format_rational(s), "lambda": format_rational(lambda) }),
        bad.len() as f64,
        0.0,
    )
    .with_witness(|| Value::Array(witness)))
}

/// `f(s,x) = λ^{p/n} f(sλ^{1/n}, φ_λ^t x) + (1-λ)^{p/n} f(s(1-λ)^{1/n}, ψ_λ^t x)`
/// for `f(s,x) = μ(sT^n)(⟨x⟩)·|x|^{-p}`. The residual is relative to `max(|f(s,x)|, 1)`.
#[allow(clippy::too_many_arguments)]
pub fn check_functional_equation(
    kind: &MeasureMapKind,
    exponent: f64,
    s: f64,
    x: &RVector,
    lambda: &Rational,
    tol: f64,
    reg: &MapRegistry,
) -> Result<CheckReport> {
    let n = x.dim();
    if x.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let t = standard_simplex(n, &int(1))?;
    let phi = phi_map(lambda, n)?;
    let psi = psi_map(lambda, n)?;
    let f = |scale: f64, y: &RVector| -> Result<f64> { eval_homog(&kind.evaluate_scaled(&t, scale, reg)?, y, exponent) };
    let l = to_f64(lambda);
    let nf = n as f64;
    let direct = f(s, x)?;
    let first = l.powf(exponent / nf) * f(s * l.powf(1.0 / nf), &phi.transpose().apply(x))?;
    let second = (1.0 - l).powf(exponent / nf) * f(s * (1.0 - l).powf(1.0 / nf), &psi.transpose().apply(x))?;
    let residual = (direct - first - second).abs() / direct.abs().max(1.0);
    Ok(CheckReport::new(
        "functional_equation",
        json!({
            "kind": kind.name(),
            "p": exponent,
            "s": s,
            "x": rvector_to_value(x),
            "lambda": format_rational(lambda),
        }),
        residual,
        tol,
    )
    .with_witness(|| json!({ "f": direct, "phi_term": first, "psi_term": second })))
}

/// `μ(sT^n) = s^{n-p} μ(T^n)`, atom by atom.
pub fn check_homogeneity(
    kind: &MeasureMapKind,
    exponent: f64,
    n: usize,
    s: &Rational,
    tol: f64,
    reg: &MapRegistry,
) -> Result<CheckReport> {
    let scaled = kind.evaluate(&standard_simplex(n, s)?, reg)?;
    let factor = to_f64(s).powf(n as f64 - exponent);
    let expected = kind.evaluate(&standard_simplex(n, &int(1))?, reg)?.scaled(factor)?;
    let residual = relative_distance(&scaled, &expected)?;
    Ok(CheckReport::new(
        "homogeneity",
        json!({ "kind": kind.name(), "p": exponent, "n": n, "s": format_rational(s) }),
        residual,
        tol,
    )
    .with_witness(|| worst_atom(&scaled, &expected)))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Value on `sT'` forced by the structure of a built-in kind:
/// `S` and `S°` give `s^{n-1}/(n-1)!·(δ_{e_1} + δ_{-e_1})`, maps that only see
/// facets missing the origin give zero.
fn expected_on_flat_simplex(kind: &MeasureMapKind, n: usize, s: &Rational) -> Result<Option<DiscreteSphereMeasure>> {
    let area = to_f64(s).powi(n as i32 - 1) / factorial(n - 1);
    let e1 = Direction::from_rational(&RVector::basis(n, 0))?;
    let two_sided = DiscreteSphereMeasure::from_atoms(
        n,
        [
            crate::measure::Atom { dir: e1.clone(), mass: area },
            crate::measure::Atom { dir: e1.neg(), mass: area },
        ],
    )?;
    Ok(match kind {
        MeasureMapKind::S | MeasureMapKind::So => Some(two_sided),
        MeasureMapKind::Sstar | MeasureMapKind::Sp(_) => Some(DiscreteSphereMeasure::zero(n)),
        MeasureMapKind::External(_) => None,
        MeasureMapKind::Combination(terms) => {
            let mut total = DiscreteSphereMeasure::zero(n);
            for t in terms {
                let Some(m) = expected_on_flat_simplex(&t.kind, n, s)? else {
                    return Ok(None);
                };
                // Every expected value here is symmetric, so reflection is a no-op.
                let m = m.scaled(t.coeff.abs())?;
                total = if t.coeff >= 0.0 {
                    total.plus(&m)?
                } else {
                    subtract(&total, &m)?
                };
            }
            Some(total)
        }
    })
}

fn subtract(a: &DiscreteSphereMeasure, b: &DiscreteSphereMeasure) -> Result<DiscreteSphereMeasure> {
    let combo = crate::measure::SignedCombination {
        terms: vec![(1.0, a.clone()), (-1.0, b.clone())],
    };
    let scale = a.total_mass().max(b.total_mass()).max(1.0);
    DiscreteSphereMeasure::try_from_signed(crate::measure::combine(&combo)?, TOL_EXACT * scale)
}

/// Behaviour on the lower-dimensional generators `sT'` and `{o}`.
///
/// `μ({o})` must vanish. For degree `p ≠ 1` so must `μ(sT')`; for `p = 1` a
/// built-in kind must match its explicit value and an external one must at
/// least be carried by `±e_1` with equal masses.
pub fn check_simplicity(
    kind: &MeasureMapKind,
    exponent: f64,
    n: usize,
    s: &Rational,
    tol: f64,
    reg: &MapRegistry,
) -> Result<CheckReport> {
    let at_origin = kind.evaluate(&origin(n)?, reg)?;
    let flat = kind.evaluate(&simplex_prime(n, s)?, reg)?;
    let origin_residual = at_origin.total_mass();
    let (flat_residual, expected) = if exponent != 1.0 {
        (flat.total_mass(), Some(DiscreteSphereMeasure::zero(n)))
    } else {
        match expected_on_flat_simplex(kind, n, s)? {
            Some(e) => (crate::measure::measure_distance(&flat, &e)?, Some(e)),
            None => {
                let e1 = Direction::from_rational(&RVector::basis(n, 0))?;
                let (plus, minus) = (flat.mass(&e1), flat.mass(&e1.neg()));
                let off_axis = flat.total_mass() - plus - minus;
                (off_axis.abs() + (plus - minus).abs(), None)
            }
        }
    };
    Ok(CheckReport::new(
        "simplicity",
        json!({ "kind": kind.name(), "p": exponent, "n": n, "s": format_rational(s) }),
        origin_residual.max(flat_residual),
        tol,
    )
    .with_witness(|| {
        json!({
            "origin_mass": origin_residual,
            "flat_simplex": crate::io::measure_to_value(&flat, None),
            "expected": expected.map(|e| crate::io::measure_to_value(&e, None)),
        })
    }))
}

/// `μ(P) = 0`, for lower-dimensional `P` and maps that ignore facets through `o`.
pub fn check_vanishes(kind: &MeasureMapKind, p: &Polytope, tol: f64, reg: &MapRegistry) -> Result<CheckReport> {
    let m = kind.evaluate(p, reg)?;
    Ok(CheckReport::new(
        "vanishes_low_dim",
        json!({ "kind": kind.name(), "P": polytope_to_value(p), "dim": p.dim() }),
        m.total_mass(),
        tol,
    )
    .with_witness(|| crate::io::measure_to_value(&m, None)))
}

/// `(1/p) ∫ h(C,u)^p dS_p(C,u) = n·2^n/p` on the cube `C = [-1,1]^n`.
pub fn check_variation_closed_form(n: usize, exponent: f64, tol: f64) -> Result<CheckReport> {
    let c = cube(n, &int(-1), &int(1))?;
    let value = lp_first_variation(&c, &c, exponent)?;
    let expected = n as f64 * 2f64.powi(n as i32) / exponent;
    Ok(CheckReport::new(
        "variation_closed_form",
        json!({ "n": n, "p": exponent, "expected": expected }),
        rel(value, expected),
        tol,
    )
    .with_witness(|| json!({ "value": value })))
}

/// Richardson-extrapolated difference quotient of `V(P +_p εQ)` against the
/// integral formula, relative error. The step is [`DEFAULT_EPS`] measured as a
/// relative support change.
pub fn check_variation_fd(p: &Polytope, q: &Polytope, exponent: f64, tol: f64) -> Result<CheckReport> {
    let formula = lp_first_variation(p, q, exponent)?;
    let eps = relative_step(p, q, exponent, DEFAULT_EPS)?;
    let fd = richardson_variation(p, q, exponent, eps)?;
    Ok(CheckReport::new(
        "variation_finite_difference",
        json!({
            "p": exponent,
            "eps": eps,
            "P": polytope_to_value(p),
            "Q": polytope_to_value(q),
        }),
        rel(fd, formula),
        tol,
    )
    .with_witness(|| json!({ "formula": formula, "finite_difference": fd })))
}

/// `(1/p) ∫ h(P,u)^p dS_p(P,u) = (n/p) V(P)`.
pub fn check_variation_self(p: &Polytope, exponent: f64, tol: f64) -> Result<CheckReport> {
    let value = lp_first_variation(p, p, exponent)?;
    let expected = p.ambient_dim() as f64 / exponent * to_f64(&p.volume());
    Ok(CheckReport::new(
        "variation_self",
        json!({ "p": exponent, "P": polytope_to_value(p) }),
        rel(value, expected),
        tol,
    )
    .with_witness(|| json!({ "value": value, "expected": expected })))
}

/// `s` as an `f64`, with an error for values that do not fit.
pub fn rational_to_scale(s: &Rational) -> Result<f64> {
    if !s.is_positive() {
        return Err(Error::BadScale);
    }
    let v = s.to_f64().unwrap_or(f64::NAN);
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::BadScale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::kind::{Term, NORMALIZED_S};
    use crate::linalg::rat;

    fn reg() -> MapRegistry {
        MapRegistry::with_builtins()
    }

    #[test]
    fn valuation_on_cube_diagonal() {
        let c = cube(3, &int(-1), &int(1)).unwrap();
        let h = Hyperplane::through_origin(RVector::from_ints(&[1, 1, 0])).unwrap();
        for kind in [MeasureMapKind::S, MeasureMapKind::Sstar, MeasureMapKind::So, MeasureMapKind::Sp(2.0)] {
            let r = check_valuation(&kind, &c, &h, TOL_EXACT, &reg()).unwrap();
            assert!(r.passed, "{r:?}");
        }
        // Normalizing by total mass destroys additivity.
        let r = check_valuation(&MeasureMapKind::External(NORMALIZED_S.into()), &c, &h, TOL_EXACT, &reg()).unwrap();
        assert!(!r.passed);
        assert!(r.witness.is_some());
    }

    #[test]
    fn contravariance_for_shear_and_reflection() {
        let t = standard_simplex(3, &int(1)).unwrap();
        let shear = LinearMap::from_rows(vec![
            vec![int(1), rat(1, 2), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(-2), int(1)],
        ])
        .unwrap();
        let flip = LinearMap::diagonal(&[int(-1), rat(1, 2), int(3)]);
        for map in [&shear, &flip] {
            for (kind, p) in [(MeasureMapKind::S, 1.0), (MeasureMapKind::So, 1.0), (MeasureMapKind::Sp(2.5), 2.5), (MeasureMapKind::Sp(-1.0), -1.0)] {
                let r = check_contravariance(&kind, &t, map, p, TOL_FLOAT, 5, &reg()).unwrap();
                assert!(r.passed, "{r:?}");
            }
        }
        // Wrong degree is detected.
        let r = check_contravariance(&MeasureMapKind::Sp(2.0), &t, &flip, 1.0, TOL_FLOAT, 5, &reg()).unwrap();
        assert!(!r.passed);
    }

    #[test]
    fn dissection_identity_holds() {
        for n in [2, 3, 4] {
            for lambda in [rat(1, 4), rat(1, 2), rat(2, 3)] {
                for s in [int(1), rat(5, 2)] {
                    let r = check_dissection_identity(n, &s, &lambda).unwrap();
                    assert!(r.passed, "{r:?}");
                }
            }
        }
        assert_eq!(check_dissection_identity(3, &int(1), &int(1)).unwrap_err(), Error::LambdaRange);
    }

    #[test]
    fn functional_equation_for_lp_measures() {
        let x = RVector::from_ints(&[1, 1, 1]);
        for p in [-1.0, 0.0, 0.5, 2.0, 3.0] {
            for lambda in [rat(1, 4), rat(1, 2)] {
                let r = check_functional_equation(&MeasureMapKind::Sp(p), p, 1.0, &x, &lambda, TOL_FLOAT, &reg()).unwrap();
                assert!(r.passed, "{r:?}");
            }
        }
        // S is not simple: the slice through H_λ contributes at its normal.
        let r = check_functional_equation(&MeasureMapKind::S, 1.0, 1.0, &RVector::from_ints(&[1, -1, 0]), &rat(1, 2), TOL_FLOAT, &reg())
            .unwrap();
        assert!(!r.passed, "{r:?}");
    }

    #[test]
    fn homogeneity_and_simplicity() {
        for s in [rat(1, 2), int(3)] {
            assert!(check_homogeneity(&MeasureMapKind::S, 1.0, 3, &s, TOL_EXACT, &reg()).unwrap().passed);
            assert!(check_homogeneity(&MeasureMapKind::Sp(-1.0), -1.0, 4, &s, TOL_EXACT, &reg()).unwrap().passed);
            assert!(!check_homogeneity(&MeasureMapKind::Sp(2.0), 1.0, 3, &s, TOL_EXACT, &reg()).unwrap().passed);
            for kind in [MeasureMapKind::S, MeasureMapKind::So, MeasureMapKind::Sstar] {
                assert!(check_simplicity(&kind, 1.0, 3, &s, TOL_EXACT, &reg()).unwrap().passed);
            }
            assert!(check_simplicity(&MeasureMapKind::Sp(2.0), 2.0, 3, &s, 0.0, &reg()).unwrap().passed);
            let combo = MeasureMapKind::Combination(vec![
                Term::new(2.0, MeasureMapKind::S),
                Term::reflected(-0.5, MeasureMapKind::Sstar),
            ]);
            assert!(check_simplicity(&combo, 1.0, 3, &s, TOL_EXACT, &reg()).unwrap().passed);
            let ext = MeasureMapKind::External(NORMALIZED_S.into());
            assert!(check_simplicity(&ext, 1.0, 3, &s, TOL_EXACT, &reg()).unwrap().passed);
        }
        // Treating S as if its degree were 2 exposes the nonzero flat value.
        assert!(!check_simplicity(&MeasureMapKind::S, 2.0, 3, &int(1), 0.0, &reg()).unwrap().passed);
    }

    #[test]
    fn variation_checks() {
        for p in [0.5, 2.0, 3.0, -1.0] {
            assert!(check_variation_closed_form(3, p, TOL_FLOAT).unwrap().passed);
        }
        let c = cube(3, &int(-1), &int(1)).unwrap();
        let q = crate::shapes::cross_polytope(3).unwrap();
        assert!(check_variation_fd(&c, &q, 2.0, TOL_FD).unwrap().passed);
        assert!(check_variation_self(&c, 0.5, TOL_FLOAT).unwrap().passed);
    }
}
