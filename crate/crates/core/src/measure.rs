//! Discrete measures on the unit sphere and the surface area measures of polytopes.
//!
//! An atom is identified by the primitive integer vector of its ray, never by a
//! floating unit vector, so atom-wise equality of two measures is an exact
//! comparison of keys. Masses are `f64`s computed from the exact facet data with
//! one square root (and one power for `S_p`).

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{to_f64, Direction, LinearMap, RVector};
use crate::polytope::{FacetData, Polytope};

/// A point mass `mass · δ_dir`.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub dir: Direction,
    pub mass: f64,
}

/// Finite sum of point masses on `S^{n-1}`, keyed by direction (sorted
/// lexicographically). Zero atoms are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteSphereMeasure {
    n: usize,
    atoms: BTreeMap<Direction, f64>,
}

impl DiscreteSphereMeasure {
    pub fn zero(n: usize) -> Self {
        DiscreteSphereMeasure {
            n,
            atoms: BTreeMap::new(),
        }
    }

    /// Merges atoms with equal directions. Rejects negative or non-finite masses.
    pub fn from_atoms(n: usize, atoms: impl IntoIterator<Item = Atom>) -> Result<Self> {
        let mut m = Self::zero(n);
        for atom in atoms {
            if atom.dir.dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "atom direction has length {}, measure lives in R^{n}",
                    atom.dir.dim()
                )));
            }
            if !(atom.mass >= 0.0) || !atom.mass.is_finite() {
                return Err(Error::NegativeMass(atom.mass));
            }
            m.add_mass(atom.dir, atom.mass);
        }
        Ok(m)
    }

    /// Turns a signed atom list into a measure. Atoms with `|mass| ≤ tol` are
    /// dropped; anything more negative is an error.
    pub fn try_from_signed(atoms: SignedAtoms, tol: f64) -> Result<Self> {
        let mut m = Self::zero(atoms.n);
        for (dir, mass) in atoms.atoms {
            if mass.abs() <= tol {
                continue;
            }
            if mass < 0.0 {
                return Err(Error::NegativeMass(mass));
            }
            m.atoms.insert(dir, mass);
        }
        Ok(m)
    }

    fn add_mass(&mut self, dir: Direction, mass: f64) {
        if mass == 0.0 {
            return;
        }
        *self.atoms.entry(dir).or_insert(0.0) += mass;
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atoms in lexicographic direction order.
    pub fn atoms(&self) -> impl Iterator<Item = (&Direction, f64)> + '_ {
        self.atoms.iter().map(|(d, &m)| (d, m))
    }

    /// `μ({dir})`.
    pub fn mass(&self, dir: &Direction) -> f64 {
        self.atoms.get(dir).copied().unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.values().fold(0.0, |acc, m| acc + m)
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::from_atoms(
            self.n,
            self.atoms.iter().map(|(d, &m)| Atom {
                dir: d.clone(),
                mass: c * m,
            }),
        )
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        check_same_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (d, &m) in &other.atoms {
            out.add_mass(d.clone(), m);
        }
        Ok(out)
    }

    /// `μ(-·)`: every atom moved to its antipode.
    pub fn reflect(&self) -> Self {
        DiscreteSphereMeasure {
            n: self.n,
            atoms: self.atoms.iter().map(|(d, &m)| (d.neg(), m)).collect(),
        }
    }

    /// `∫ f dμ`, with `f` evaluated at the unit vectors of the atoms.
    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.atoms.iter().map(|(d, &m)| f(&d.unit()) * m).sum()
    }
}

fn check_same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(format!(
            "measures live in R^{a} and R^{b}"
        )));
    }
    Ok(())
}

/// Which facets contribute to a surface measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceVariant {
    /// All facets.
    S,
    /// Facets not containing the origin.
    Sstar,
    /// Facets containing the origin.
    So,
}

impl SurfaceVariant {
    fn includes(self, f: &FacetData) -> bool {
        match self {
            SurfaceVariant::S => true,
            SurfaceVariant::Sstar => !f.contains_origin,
            SurfaceVariant::So => f.contains_origin,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SurfaceVariant::S => "S",
            SurfaceVariant::Sstar => "Sstar",
            SurfaceVariant::So => "So",
        }
    }
}

/// `S(P,·)`, `S*(P,·)` or `S°(P,·)`: mass `V_{n-1}(F_u)` at each included facet normal.
pub fn surface_measure(p: &Polytope, variant: SurfaceVariant) -> DiscreteSphereMeasure {
    surface_measure_scaled(p, variant, 1.0)
}

/// Surface measure of `tP` for real `t > 0`, from the facet scaling law
/// `F(tP, u) = t·F(P, u)`.
pub fn surface_measure_scaled(p: &Polytope, variant: SurfaceVariant, t: f64) -> DiscreteSphereMeasure {
    let n = p.ambient_dim();
    let area_factor = if t == 1.0 { 1.0 } else { t.powi(n as i32 - 1) };
    let mut m = DiscreteSphereMeasure::zero(n);
    for f in p.facets().iter().filter(|f| variant.includes(f)) {
        m.add_mass(f.normal.clone(), f.area() * area_factor);
    }
    m
}

/// `S_p(P,·) = Σ_{u ∈ N*(P)} h(P,u)^{1-p} V_{n-1}(F_u) δ_u`.
///
/// At `p = 1` this is `S*(P,·)`; a warning is logged since the classification
/// for `S_p` excludes that exponent. See [`lp_surface_measure_flagged`].
pub fn lp_surface_measure(p: &Polytope, exponent: f64) -> DiscreteSphereMeasure {
    let (m, warned) = lp_surface_measure_flagged(p, exponent);
    if warned {
        log::warn!("S_p requested at p = 1; returning S*");
    }
    m
}

/// [`lp_surface_measure`] plus a flag that is set when `p == 1`.
pub fn lp_surface_measure_flagged(p: &Polytope, exponent: f64) -> (DiscreteSphereMeasure, bool) {
    (lp_surface_measure_scaled(p, exponent, 1.0), exponent == 1.0)
}

/// `S_p(tP,·)` for real `t > 0`: heights scale by `t`, areas by `t^{n-1}`.
pub fn lp_surface_measure_scaled(p: &Polytope, exponent: f64, t: f64) -> DiscreteSphereMeasure {
    let n = p.ambient_dim();
    let unit = t == 1.0;
    let mut m = DiscreteSphereMeasure::zero(n);
    for f in p.facets().iter().filter(|f| !f.contains_origin) {
        let mass = if unit {
            f.lp_weighted_area(exponent)
        } else {
            let (h, area) = (f.support() * t, f.area() * t.powi(n as i32 - 1));
            let weight = if exponent == 1.0 { 1.0 } else { h.powf(1.0 - exponent) };
            weight * area
        };
        m.add_mass(f.normal.clone(), mass);
    }
    m
}

/// `μ({⟨x⟩}) · |x|^{-p}`.
pub fn eval_homog(mu: &DiscreteSphereMeasure, x: &RVector, p: f64) -> Result<f64> {
    check_same_dim(mu.n, x.dim())?;
    let dir = Direction::from_rational(x)?;
    let mass = mu.mass(&dir);
    if mass == 0.0 {
        return Ok(0.0);
    }
    Ok(mass * x.norm().powf(-p))
}

/// Image of `μ` under the degree-`p` contravariant action of `φ`: the atom at `v`
/// moves to `⟨φ^{-t}v⟩` and its mass is multiplied by `|det φ| · |φ^{-t}⟨v⟩|^p`.
pub fn pushforward_contra(mu: &DiscreteSphereMeasure, map: &LinearMap, p: f64) -> Result<DiscreteSphereMeasure> {
    check_same_dim(mu.n, map.dim())?;
    let det = map.det();
    if det.is_zero() {
        return Err(Error::SingularMap);
    }
    let abs_det = to_f64(&det.abs());
    let inv_t = map.inverse_transpose()?;
    let mut out = DiscreteSphereMeasure::zero(mu.n);
    for (dir, mass) in mu.atoms() {
        let v = dir.to_rvector();
        let w = inv_t.apply(&v);
        let stretch = (to_f64(&w.norm_sq()) / to_f64(&v.norm_sq())).sqrt();
        out.add_mass(Direction::from_rational(&w)?, abs_det * stretch.powf(p) * mass);
    }
    Ok(out)
}

/// `C_p μ(u) = ∫ |⟨u⟩·v|^p dμ(v)`.
pub fn cosine_transform(mu: &DiscreteSphereMeasure, p: f64, u: &[f64]) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::BadExponent(p));
    }
    check_same_dim(mu.n, u.len())?;
    let len = u.iter().map(|c| c * c).sum::<f64>().sqrt();
    if len == 0.0 {
        return Err(Error::ZeroDirection);
    }
    Ok(mu.integrate(|v| {
        let c: f64 = v.iter().zip(u).map(|(a, b)| a * b).sum::<f64>() / len;
        c.abs().powf(p)
    }))
}

/// `max_dir |μ(dir) - ν(dir)|` over the union of both supports.
pub fn measure_distance(mu: &DiscreteSphereMeasure, nu: &DiscreteSphereMeasure) -> Result<f64> {
    check_same_dim(mu.n, nu.n)?;
    let mut worst: f64 = 0.0;
    for (d, m) in mu.atoms() {
        worst = worst.max((m - nu.mass(d)).abs());
    }
    for (d, m) in nu.atoms() {
        if !mu.atoms.contains_key(d) {
            worst = worst.max(m);
        }
    }
    Ok(worst)
}

/// [`measure_distance`] divided by `max(|μ|, |ν|, 1)`.
pub fn relative_distance(mu: &DiscreteSphereMeasure, nu: &DiscreteSphereMeasure) -> Result<f64> {
    let d = measure_distance(mu, nu)?;
    Ok(d / mu.total_mass().max(nu.total_mass()).max(1.0))
}

/// Atoms with possibly negative masses.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedAtoms {
    pub n: usize,
    pub atoms: BTreeMap<Direction, f64>,
}

impl SignedAtoms {
    pub fn mass(&self, dir: &Direction) -> f64 {
        self.atoms.get(dir).copied().unwrap_or(0.0)
    }
}

/// `Σ c_i μ_i` as a list of terms.
#[derive(Clone, Debug, Default)]
pub struct SignedCombination {
    pub terms: Vec<(f64, DiscreteSphereMeasure)>,
}

/// Merges the terms of a signed combination into one signed atom list.
/// Atoms cancelling to exactly zero are removed.
pub fn combine(terms: &SignedCombination) -> Result<SignedAtoms> {
    let n = terms
        .terms
        .first()
        .map(|(_, m)| m.n)
        .ok_or(Error::EmptyInput("empty combination"))?;
    let mut atoms: BTreeMap<Direction, f64> = BTreeMap::new();
    for (c, m) in &terms.terms {
        check_same_dim(n, m.n)?;
        for (d, mass) in m.atoms() {
            *atoms.entry(d.clone()).or_insert(0.0) += c * mass;
        }
    }
    atoms.retain(|_, m| *m != 0.0);
    Ok(SignedAtoms { n, atoms })
}
