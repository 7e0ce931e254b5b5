//! L_p support combinations over a fixed normal fan and the first variation of
//! volume.
//!
//! `P +_p ε·Q` is realized as the Wulff body of `(h(P,u)^p + ε h(Q,u)^p)^{1/p}` over
//! the facet normals `u` of `P`. To first order in `ε` only these support numbers
//! move the volume (`∂V/∂h_u = V_{n-1}(F_u)`), so the difference quotient has the
//! same limit as for the true L_p sum.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::halfspace::{exact_volume, FloatPolytope, Halfspace};
use crate::linalg::{to_f64, Direction};
use crate::measure::lp_surface_measure;
use crate::polytope::Polytope;

/// Default step sizes of the Richardson pair.
pub const DEFAULT_EPS: f64 = 1e-4;

/// Support numbers prescribed on a finite set of directions.
#[derive(Clone, Debug, PartialEq)]
pub struct FanSupport {
    pub fan: Vec<Direction>,
    /// `h(u)` for the unit vector along each fan direction.
    pub values: Vec<f64>,
}

fn require_interior(p: &Polytope, which: &'static str) -> Result<()> {
    if !p.is_full_dimensional() || p.facets().iter().any(|f| !f.support_scaled.is_positive()) {
        return Err(Error::OriginNotInterior(which));
    }
    Ok(())
}

fn unit_support(q: &Polytope, g: &Direction) -> Result<f64> {
    Ok(to_f64(&q.support_scaled(&g.to_rvector())?) / g.norm())
}

/// `(h(P,u)^p + ε h(Q,u)^p)^{1/p}` on the facet normals of `P`.
pub fn lp_support_combination(p: &Polytope, q: &Polytope, exponent: f64, eps: f64) -> Result<FanSupport> {
    if exponent == 0.0 {
        return Err(Error::ZeroP);
    }
    if !(eps >= 0.0) {
        return Err(Error::BadScale);
    }
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::DimensionMismatch("P and Q live in different spaces".into()));
    }
    require_interior(p, "P")?;
    require_interior(q, "Q")?;
    let mut fan = Vec::with_capacity(p.facets().len());
    let mut values = Vec::with_capacity(p.facets().len());
    for f in p.facets() {
        let hp = f.support();
        let hq = unit_support(q, &f.normal)?;
        fan.push(f.normal.clone());
        values.push((hp.powf(exponent) + eps * hq.powf(exponent)).powf(1.0 / exponent));
    }
    Ok(FanSupport { fan, values })
}

fn wulff_constraints(fs: &FanSupport) -> Vec<Halfspace> {
    // Integer normals keep the constraint matrix exact; only the bounds round.
    fs.fan
        .iter()
        .zip(&fs.values)
        .map(|(d, &h)| Halfspace::new(d.to_f64(), h * d.norm()))
        .collect()
}

/// `{x : ⟨u⟩·x ≤ h(u) for all u in the fan}`.
pub fn wulff_body(fs: &FanSupport) -> Result<FloatPolytope> {
    FloatPolytope::from_halfspaces(wulff_constraints(fs))
}

/// Volume of the Wulff body, exact for the rounded support numbers.
pub fn wulff_volume(fs: &FanSupport) -> Result<f64> {
    Ok(to_f64(&exact_volume(&wulff_constraints(fs))?))
}

fn wulff_volume_exact(p: &Polytope, q: &Polytope, exponent: f64, eps: f64) -> Result<crate::linalg::Rational> {
    exact_volume(&wulff_constraints(&lp_support_combination(p, q, exponent, eps)?))
}

/// `(1/p) ∫ h(Q,u)^p dS_p(P,u)`.
pub fn lp_first_variation(p: &Polytope, q: &Polytope, exponent: f64) -> Result<f64> {
    if exponent == 0.0 {
        return Err(Error::ZeroP);
    }
    if p.ambient_dim() != q.ambient_dim() {
        return Err(Error::DimensionMismatch("P and Q live in different spaces".into()));
    }
    let sp = lp_surface_measure(p, exponent);
    let mut sum = 0.0;
    for (dir, mass) in sp.atoms() {
        let h = unit_support(q, dir)?;
        if h < 0.0 || (exponent < 0.0 && h == 0.0) {
            return Err(Error::NegativeSupport(h));
        }
        if h > 0.0 {
            sum += h.powf(exponent) * mass;
        }
    }
    Ok(sum / exponent)
}

/// `(V(P +_p ε·Q) - V(P)) / ε` over the fixed fan of `P`.
///
/// Both volumes are taken of Wulff bodies with rounded support numbers, so the
/// rounding of `h(P,·)` itself cancels in the difference.
pub fn finite_diff_variation(p: &Polytope, q: &Polytope, exponent: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::BadScale);
    }
    let base = wulff_volume_exact(p, q, exponent, 0.0)?;
    let moved = wulff_volume_exact(p, q, exponent, eps)?;
    Ok(to_f64(&(moved - base)) / eps)
}

/// `eps / max_u (h(Q,u)/h(P,u))^p` over the facet normals of `P`, so that the
/// relative change of every support number stays below `eps`. With random pairs
/// the ratio can reach 1e5, which would take a fixed step far outside the linear
/// regime.
pub fn relative_step(p: &Polytope, q: &Polytope, exponent: f64, eps: f64) -> Result<f64> {
    let fs = lp_support_combination(p, q, exponent, 0.0)?;
    let mut worst: f64 = 1.0;
    for (g, hp) in fs.fan.iter().zip(&fs.values) {
        worst = worst.max((unit_support(q, g)? / hp).powf(exponent));
    }
    Ok(eps / worst)
}

/// One Richardson step on the one-sided quotient: `2 D(ε/2) - D(ε)`.
pub fn richardson_variation(p: &Polytope, q: &Polytope, exponent: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::BadScale);
    }
    let base = wulff_volume_exact(p, q, exponent, 0.0)?;
    let coarse = to_f64(&(wulff_volume_exact(p, q, exponent, eps)? - &base)) / eps;
    let fine = to_f64(&(wulff_volume_exact(p, q, exponent, eps / 2.0)? - &base)) / (eps / 2.0);
    Ok(2.0 * fine - coarse)
}
