//! Exact convex polytopes in vertex representation.
//!
//! Facets are found by brute force over affinely independent point subsets, which
//! is fine at the sizes this crate works with (tens of vertices, n ≤ 5). Each facet
//! is stored through integer/rational quantities only:
//!
//! - `normal`: primitive integer outer normal `g`,
//! - `area_scaled`: `V_{n-1}(F) · |g|`,
//! - `support_scaled`: `h(P, g) = max g·v`,
//!
//! so every irrational quantity downstream comes from a single `|g|`.
//!
//! The `(n-1)`-volume of a facet is obtained by projecting it along a coordinate axis
//! `k` with `g_k != 0`; the projected volume times `|g|/|g_k|` is the facet volume,
//! hence `area_scaled = proj · |g|² / |g_k|` is rational.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank, Direction, LinearMap, RVector, Rational};

/// One facet of a polytope; see the module docs for the scaling conventions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetData {
    pub normal: Direction,
    pub area_scaled: Rational,
    pub support_scaled: Rational,
    pub contains_origin: bool,
}

impl FacetData {
    /// `V_{n-1}(F)`.
    pub fn area(&self) -> f64 {
        crate::linalg::to_f64(&self.area_scaled) / self.normal.norm()
    }

    /// `h(P, u)` for the unit normal `u`.
    pub fn support(&self) -> f64 {
        crate::linalg::to_f64(&self.support_scaled) / self.normal.norm()
    }

    /// `h(P,u)^{1-p} V_{n-1}(F)`, written as `h_g^{1-p} a_g |g|^{p-2}` over the
    /// integer normal `g`. For integer `p` the rational part is exact and only
    /// `|g|^{p-2}` is rounded, which is itself exact for even `p`.
    pub fn lp_weighted_area(&self, exponent: f64) -> f64 {
        use crate::linalg::to_f64;
        if exponent == 1.0 {
            return self.area();
        }
        let nsq = Rational::from_integer(self.normal.norm_sq());
        if exponent.fract() == 0.0 && exponent.abs() <= 64.0 {
            let k = exponent as i32;
            let base = self.support_scaled.pow(1 - k) * &self.area_scaled;
            let half = (k - 2).div_euclid(2);
            let r = base * nsq.pow(half);
            if (k - 2) % 2 == 0 {
                to_f64(&r)
            } else {
                to_f64(&r) * to_f64(&nsq).sqrt()
            }
        } else {
            to_f64(&self.support_scaled).powf(1.0 - exponent)
                * to_f64(&self.area_scaled)
                * to_f64(&nsq).powf((exponent - 2.0) / 2.0)
        }
    }
}

/// Hyperplane `normal · x = offset`, with halfspaces `H⁺: normal·x ≥ offset` and
/// `H⁻: normal·x ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    normal: RVector,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: RVector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn through_origin(normal: RVector) -> Result<Self> {
        Self::new(normal, Rational::zero())
    }

    pub fn normal(&self) -> &RVector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }
}

/// Convex polytope containing the origin, stored by its extreme points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    n: usize,
    dim: usize,
    vertices: Vec<RVector>,
    facets: Vec<FacetData>,
}

impl Polytope {
    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Affine dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points, sorted.
    pub fn vertices(&self) -> &[RVector] {
        &self.vertices
    }

    /// Facets sorted by normal. An `(n-1)`-dimensional polytope has the two
    /// facets `±g`, each carrying its full `(n-1)`-volume; lower dimensions have none.
    pub fn facets(&self) -> &[FacetData] {
        &self.facets
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.n
    }

    /// `h(P, g) = max{g·v : v ∈ P}`; divide by `|g|` for the unit-normal value.
    pub fn support_scaled(&self, g: &RVector) -> Result<Rational> {
        check_dim(self.n, g.dim())?;
        if g.is_zero() {
            return Err(Error::ZeroDirection);
        }
        Ok(self
            .vertices
            .iter()
            .map(|v| g.dot(v))
            .max()
            .expect("polytopes are nonempty"))
    }

    /// Exact n-volume: sum of the origin pyramids over the facets,
    /// `(1/n) Σ support_scaled · area_scaled / |g|²`.
    pub fn volume(&self) -> Rational {
        if !self.is_full_dimensional() {
            return Rational::zero();
        }
        let sum = self.facets.iter().fold(Rational::zero(), |acc, f| {
            acc + &f.support_scaled * &f.area_scaled / Rational::from_integer(f.normal.norm_sq())
        });
        sum / Rational::from_integer(BigInt::from(self.n))
    }

    /// `-P`, computed directly from the stored data.
    pub fn reflect(&self) -> Polytope {
        let mut vertices: Vec<RVector> = self.vertices.iter().map(|v| -v).collect();
        vertices.sort();
        let mut facets: Vec<FacetData> = self
            .facets
            .iter()
            .map(|f| FacetData {
                normal: f.normal.neg(),
                ..f.clone()
            })
            .collect();
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));
        Polytope {
            n: self.n,
            dim: self.dim,
            vertices,
            facets,
        }
    }

    pub fn facet(&self, normal: &Direction) -> Option<&FacetData> {
        self.facets
            .binary_search_by(|f| f.normal.cmp(normal))
            .ok()
            .map(|i| &self.facets[i])
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch(format!(
            "expected dimension {expected}, got {got}"
        )));
    }
    Ok(())
}

/// Convex hull of a finite point set. The hull must contain the origin.
pub fn hull(points: &[RVector]) -> Result<Polytope> {
    let first = points.first().ok_or(Error::EmptyInput("hull needs at least one point"))?;
    let n = first.dim();
    if n < 2 {
        return Err(Error::DimensionMismatch("ambient dimension must be at least 2".into()));
    }
    for p in points {
        check_dim(n, p.dim())?;
    }
    let distinct: Vec<RVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let int_pts = IntPoints::new(&distinct);

    // Affine hull contains o exactly when the linear span has the affine dimension.
    let diffs: Vec<RVector> = distinct[1..].iter().map(|p| p - &distinct[0]).collect();
    let dim = rank(&diffs);
    if rank(&distinct) != dim {
        return Err(Error::OriginNotContained);
    }
    if dim == 0 {
        return Ok(Polytope {
            n,
            dim,
            vertices: vec![RVector::zeros(n)],
            facets: Vec::new(),
        });
    }

    if dim == n {
        let raw = facets_full(&int_pts.coords, n);
        if raw.iter().any(|f| f.offset.is_negative()) {
            return Err(Error::OriginNotContained);
        }
        let vertex_idx = extreme_points(&raw, distinct.len(), n);
        let scale = Rational::from_integer(int_pts.scale.clone());
        let mut facets: Vec<FacetData> = raw
            .iter()
            .map(|f| {
                let k = f.normal.pivot();
                let projected: Vec<Vec<BigInt>> = f
                    .members
                    .iter()
                    .map(|&i| drop_coord(&int_pts.coords[i], k))
                    .collect();
                let proj_vol = full_volume(&projected, n - 1) / pow(&scale, n - 1);
                let area_scaled = proj_vol * Rational::from_integer(f.normal.norm_sq())
                    / Rational::from_integer(f.normal.abs_entry(k));
                let support_scaled = Rational::from_integer(f.offset.clone()) / &scale;
                FacetData {
                    normal: f.normal.clone(),
                    area_scaled,
                    contains_origin: support_scaled.is_zero(),
                    support_scaled,
                }
            })
            .collect();
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));
        let mut vertices: Vec<RVector> = vertex_idx.into_iter().map(|i| distinct[i].clone()).collect();
        vertices.sort();
        return Ok(Polytope {
            n,
            dim,
            vertices,
            facets,
        });
    }

    // Lower-dimensional: work inside the linear span through an injective
    // coordinate projection.
    let span_basis = basis_of(&distinct);
    let (coords_kept, hyperplane_normal) = if dim == n - 1 {
        let g = cofactor_normal_rational(&span_basis);
        let k = g.pivot();
        ((0..n).filter(|&c| c != k).collect::<Vec<_>>(), Some(g))
    } else {
        (pivot_columns(&span_basis), None)
    };
    let projected: Vec<Vec<BigInt>> = int_pts
        .coords
        .iter()
        .map(|p| coords_kept.iter().map(|&c| p[c].clone()).collect())
        .collect();
    let raw = facets_full(&projected, dim);
    if raw.iter().any(|f| f.offset.is_negative()) {
        return Err(Error::OriginNotContained);
    }
    let mut vertices: Vec<RVector> = extreme_points(&raw, distinct.len(), dim)
        .into_iter()
        .map(|i| distinct[i].clone())
        .collect();
    vertices.sort();

    let mut facets = Vec::new();
    if let Some(g) = hyperplane_normal {
        let k = g.pivot();
        let scale = Rational::from_integer(int_pts.scale.clone());
        let proj_vol = full_volume(&projected, n - 1) / pow(&scale, n - 1);
        let area_scaled = proj_vol * Rational::from_integer(g.norm_sq())
            / Rational::from_integer(g.abs_entry(k));
        for normal in [g.neg(), g] {
            facets.push(FacetData {
                normal,
                area_scaled: area_scaled.clone(),
                support_scaled: Rational::zero(),
                contains_origin: true,
            });
        }
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));
    }
    Ok(Polytope {
        n,
        dim,
        vertices,
        facets,
    })
}

/// `φP`, the hull of the images of the vertices.
pub fn apply_map(p: &Polytope, map: &LinearMap) -> Result<Polytope> {
    check_dim(p.n, map.dim())?;
    if map.det().is_zero() {
        return Err(Error::SingularMap);
    }
    let images: Vec<RVector> = p.vertices.iter().map(|v| map.apply(v)).collect();
    hull(&images)
}

/// The three pieces `P ∩ H⁺`, `P ∩ H⁻` and `P ∩ H` of a cut by an origin hyperplane.
#[derive(Clone, Debug)]
pub struct Cut {
    pub plus: Polytope,
    pub minus: Polytope,
    pub zero: Polytope,
}

pub fn cut(p: &Polytope, h: &Hyperplane) -> Result<Cut> {
    check_dim(p.n, h.normal.dim())?;
    if !h.offset.is_zero() {
        return Err(Error::OffsetNotZero);
    }
    let side: Vec<Rational> = p.vertices.iter().map(|v| h.normal.dot(v)).collect();
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut zero = Vec::new();
    for (v, s) in p.vertices.iter().zip(&side) {
        if !s.is_negative() {
            plus.push(v.clone());
        }
        if !s.is_positive() {
            minus.push(v.clone());
        }
        if s.is_zero() {
            zero.push(v.clone());
        }
    }
    // Every vertex of P ∩ H is a vertex of P on H or an edge crossing; crossing
    // points of non-edges lie inside P ∩ H and are pruned by the hull.
    for (i, si) in side.iter().enumerate().filter(|(_, s)| s.is_positive()) {
        for (j, sj) in side.iter().enumerate().filter(|(_, s)| s.is_negative()) {
            let t = si / (si - sj);
            let vi = &p.vertices[i];
            let x = vi + &(&p.vertices[j] - vi).scale(&t);
            plus.push(x.clone());
            minus.push(x.clone());
            zero.push(x);
        }
    }
    // The origin lies on H and in P, so it belongs to every piece.
    for pts in [&mut plus, &mut minus, &mut zero] {
        pts.push(RVector::zeros(p.n));
    }
    Ok(Cut {
        plus: hull(&plus)?,
        minus: hull(&minus)?,
        zero: hull(&zero)?,
    })
}

fn pow(r: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * r)
}

/// Points scaled by the lcm of all denominators.
struct IntPoints {
    coords: Vec<Vec<BigInt>>,
    scale: BigInt,
}

impl IntPoints {
    fn new(points: &[RVector]) -> Self {
        let scale = points
            .iter()
            .flat_map(|p| p.coords())
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let coords = points
            .iter()
            .map(|p| {
                p.coords()
                    .iter()
                    .map(|c| c.numer() * (&scale / c.denom()))
                    .collect()
            })
            .collect();
        IntPoints { coords, scale }
    }
}

struct RawFacet {
    normal: Direction,
    offset: BigInt,
    members: Vec<usize>,
}

fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn drop_coord(p: &[BigInt], k: usize) -> Vec<BigInt> {
    p.iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, c)| c.clone())
        .collect()
}

/// Fraction-free (Bareiss) determinant.
pub(crate) fn det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Vector orthogonal to the `d-1` rows of `rows` (each of length `d`):
/// the signed maximal minors.
fn cofactor_normal(rows: &[Vec<BigInt>], d: usize) -> Vec<BigInt> {
    (0..d)
        .map(|k| {
            let minor: Vec<Vec<BigInt>> = rows.iter().map(|r| drop_coord(r, k)).collect();
            let det = det_int(minor);
            if k % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

/// Primitive normal of the hyperplane spanned by `n-1` independent rational vectors.
fn cofactor_normal_rational(basis: &[RVector]) -> Direction {
    let ints = IntPoints::new(basis);
    let n = basis[0].dim();
    Direction::from_integers(cofactor_normal(&ints.coords, n)).expect("basis is independent")
}

/// Facets of a full-dimensional point set in Z^d (d ≥ 1).
fn facets_full(points: &[Vec<BigInt>], d: usize) -> Vec<RawFacet> {
    if d == 1 {
        let min = points.iter().map(|p| &p[0]).min().expect("nonempty");
        let max = points.iter().map(|p| &p[0]).max().expect("nonempty");
        let members = |x: &BigInt| -> Vec<usize> {
            (0..points.len()).filter(|&i| &points[i][0] == x).collect()
        };
        return vec![
            RawFacet {
                normal: Direction::from_i64(&[-1]).unwrap(),
                offset: -min,
                members: members(min),
            },
            RawFacet {
                normal: Direction::from_i64(&[1]).unwrap(),
                offset: max.clone(),
                members: members(max),
            },
        ];
    }

    let m = points.len();
    let mut seen: HashSet<Direction> = HashSet::new();
    let mut found: Vec<RawFacet> = Vec::new();
    let mut member_sets: Vec<Vec<bool>> = Vec::new();
    for subset in (0..m).combinations(d) {
        // A facet already found through these points is the same hyperplane.
        if member_sets
            .iter()
            .any(|set| subset.iter().all(|&i| set[i]))
        {
            continue;
        }
        let base = &points[subset[0]];
        let rows: Vec<Vec<BigInt>> = subset[1..]
            .iter()
            .map(|&i| points[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let Ok(mut normal) = Direction::from_integers(cofactor_normal(&rows, d)) else {
            continue;
        };
        let mut offset = dot_int(normal.coords(), base);
        let mut above = false;
        let mut below = false;
        let mut on = vec![false; m];
        for (i, p) in points.iter().enumerate() {
            let s = dot_int(normal.coords(), p) - &offset;
            if s.is_positive() {
                above = true;
            } else if s.is_negative() {
                below = true;
            } else {
                on[i] = true;
            }
            if above && below {
                break;
            }
        }
        if above && below {
            continue;
        }
        if above {
            normal = normal.neg();
            offset = -offset;
        }
        if seen.insert(normal.clone()) {
            found.push(RawFacet {
                normal,
                offset,
                members: (0..m).filter(|&i| on[i]).collect(),
            });
            member_sets.push(on);
        }
    }
    found
}

/// Indices of extreme points: those whose incident facet normals span R^d.
fn extreme_points(facets: &[RawFacet], m: usize, d: usize) -> Vec<usize> {
    (0..m)
        .filter(|&i| {
            let normals: Vec<RVector> = facets
                .iter()
                .filter(|f| f.members.contains(&i))
                .map(|f| f.normal.to_rvector())
                .collect();
            normals.len() >= d && rank(&normals) == d
        })
        .collect()
}

/// Exact d-volume of a full-dimensional point set in Z^d, by the pyramid
/// formula `V = (1/d) Σ_F offset_F · proj_F / |g_k|`.
fn full_volume(points: &[Vec<BigInt>], d: usize) -> Rational {
    let facets = facets_full(points, d);
    if d == 1 {
        let len = &facets[0].offset + &facets[1].offset;
        return Rational::from_integer(len);
    }
    let sum = facets.iter().fold(Rational::zero(), |acc, f| {
        let k = f.normal.pivot();
        let projected: Vec<Vec<BigInt>> = f
            .members
            .iter()
            .map(|&i| drop_coord(&points[i], k))
            .collect();
        let proj = full_volume(&projected, d - 1);
        acc + proj * Rational::new(f.offset.clone(), f.normal.abs_entry(k))
    });
    sum / Rational::from_integer(BigInt::from(d))
}

/// Maximal independent subset of `points`, as a basis of their span.
fn basis_of(points: &[RVector]) -> Vec<RVector> {
    let mut basis: Vec<RVector> = Vec::new();
    for p in points {
        basis.push(p.clone());
        if rank(&basis) < basis.len() {
            basis.pop();
        }
    }
    basis
}

/// Coordinate indices on which the projection of span(basis) is injective.
fn pivot_columns(basis: &[RVector]) -> Vec<usize> {
    let n = basis[0].dim();
    let mut cols: Vec<usize> = Vec::new();
    for c in 0..n {
        cols.push(c);
        let restricted: Vec<RVector> = basis
            .iter()
            .map(|b| RVector::new(cols.iter().map(|&i| b.coords()[i].clone()).collect()))
            .collect();
        if rank(&restricted) < cols.len() {
            cols.pop();
        }
        if cols.len() == basis.len() {
            break;
        }
    }
    cols
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    fn pts(raw: &[&[i64]]) -> Vec<RVector> {
        raw.iter().map(|c| RVector::from_ints(c)).collect()
    }

    #[test]
    fn tetrahedron_facets() {
        let t = hull(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(t.dim(), 3);
        assert_eq!(t.facets().len(), 4);
        for axis in 0..3 {
            let mut g = vec![0; 3];
            g[axis] = -1;
            let f = t.facet(&Direction::from_i64(&g).unwrap()).unwrap();
            assert_eq!(f.area_scaled, rat(1, 2));
            assert!(f.contains_origin);
        }
        let f = t.facet(&Direction::from_i64(&[1, 1, 1]).unwrap()).unwrap();
        assert_eq!(f.area_scaled, rat(3, 2));
        assert_eq!(f.support_scaled, int(1));
        assert!(!f.contains_origin);
        assert_eq!(t.volume(), rat(1, 6));
    }

    #[test]
    fn redundant_points_are_dropped() {
        let mut p = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        p.push(RVector::new(vec![rat(1, 4), rat(1, 4), rat(1, 4)]));
        p.push(RVector::new(vec![rat(1, 2), rat(1, 2), int(0)]));
        p.push(RVector::from_ints(&[1, 0, 0]));
        let t = hull(&p).unwrap();
        assert_eq!(t.vertices().len(), 4);
    }

    #[test]
    fn flat_simplex_has_two_sided_facets() {
        let t = hull(&pts(&[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(t.dim(), 2);
        let normals: Vec<_> = t.facets().iter().map(|f| f.normal.clone()).collect();
        assert_eq!(
            normals,
            vec![
                Direction::from_i64(&[-1, 0, 0]).unwrap(),
                Direction::from_i64(&[1, 0, 0]).unwrap()
            ]
        );
        for f in t.facets() {
            assert_eq!(f.area_scaled, rat(1, 2));
            assert!(f.support_scaled.is_zero());
        }
        assert!(t.volume().is_zero());
    }

    #[test]
    fn tilted_flat_polygon_area() {
        // Triangle o, (1,1,0), (0,0,1) lies in x = y; area = |(1,1,0)×(0,0,1)|/2 = √2/2.
        let t = hull(&pts(&[&[0, 0, 0], &[1, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(t.facets().len(), 2);
        let f = &t.facets()[0];
        assert_eq!(f.normal.norm_sq(), BigInt::from(2));
        assert!((f.area() - 2f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn segment_and_point() {
        let seg = hull(&pts(&[&[-1, 2, 0], &[2, -4, 0], &[0, 0, 0]])).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.vertices().len(), 2);
        assert!(seg.facets().is_empty());
        let o = hull(&pts(&[&[0, 0, 0]])).unwrap();
        assert_eq!(o.dim(), 0);
        assert!(o.facets().is_empty());
    }

    #[test]
    fn origin_outside_is_rejected() {
        let e = hull(&pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]));
        assert_eq!(e, Err(Error::OriginNotContained));
        let e = hull(&pts(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(e, Err(Error::OriginNotContained));
        let e = hull(&pts(&[&[1, 0, 0], &[2, 0, 0]]));
        assert_eq!(e, Err(Error::OriginNotContained));
    }

    #[test]
    fn ragged_input_is_rejected() {
        let e = hull(&[RVector::from_ints(&[0, 0, 0]), RVector::from_ints(&[1, 0])]);
        assert!(matches!(e, Err(Error::DimensionMismatch(_))));
        assert!(matches!(hull(&[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn support_of_tetrahedron() {
        let t = hull(&pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(t.support_scaled(&RVector::from_ints(&[1, 1, 1])).unwrap(), int(1));
        assert_eq!(t.support_scaled(&RVector::from_ints(&[-1, 0, 0])).unwrap(), int(0));
        assert_eq!(
            t.support_scaled(&RVector::zeros(3)),
            Err(Error::ZeroDirection)
        );
    }

    #[test]
    fn cube_cut_along_diagonal() {
        let mut corners = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    corners.push(RVector::from_ints(&[x, y, z]));
                }
            }
        }
        let cube = hull(&corners).unwrap();
        assert_eq!(cube.volume(), int(1));
        assert_eq!(cube.facets().len(), 6);
        let h = Hyperplane::through_origin(RVector::from_ints(&[1, -1, 0])).unwrap();
        let c = cut(&cube, &h).unwrap();
        assert_eq!(c.plus.volume(), rat(1, 2));
        assert_eq!(c.minus.volume(), rat(1, 2));
        assert_eq!(c.plus.vertices().len(), 6);
        assert_eq!(
            c.zero.vertices(),
            &pts(&[&[0, 0, 0], &[0, 0, 1], &[1, 1, 0], &[1, 1, 1]])[..]
        );
        assert_eq!(c.zero.dim(), 2);
    }

    #[test]
    fn cut_rejects_offset() {
        let o = hull(&pts(&[&[0, 0, 0]])).unwrap();
        let h = Hyperplane::new(RVector::from_ints(&[1, 0, 0]), int(1)).unwrap();
        assert!(matches!(cut(&o, &h), Err(Error::OffsetNotZero)));
        let h = Hyperplane::through_origin(RVector::from_ints(&[1, 0, 0])).unwrap();
        let c = cut(&o, &h).unwrap();
        assert_eq!(c.plus.dim(), 0);
        assert_eq!(c.minus.dim(), 0);
        assert_eq!(c.zero.dim(), 0);
    }

    #[test]
    fn stretched_cube() {
        let mut corners = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    corners.push(RVector::from_ints(&[x, y, z]));
                }
            }
        }
        let cube = hull(&corners).unwrap();
        let map = LinearMap::diagonal(&[int(2), int(1), int(1)]);
        let image = apply_map(&cube, &map).unwrap();
        assert_eq!(image.volume(), int(2));
        let area = |g: &[i64]| image.facet(&Direction::from_i64(g).unwrap()).unwrap().area_scaled.clone();
        assert_eq!(area(&[1, 0, 0]), int(1));
        assert_eq!(area(&[-1, 0, 0]), int(1));
        assert_eq!(area(&[0, 1, 0]), int(2));
        assert_eq!(area(&[0, 0, -1]), int(2));
        let singular = LinearMap::diagonal(&[int(0), int(1), int(1)]);
        assert!(matches!(apply_map(&cube, &singular), Err(Error::SingularMap)));
    }

    #[test]
    fn four_dimensional_volume() {
        let mut corners = Vec::new();
        for mask in 0..16 {
            corners.push(RVector::from_ints(&[mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1]));
        }
        let cube = hull(&corners).unwrap();
        assert_eq!(cube.facets().len(), 8);
        assert_eq!(cube.volume(), int(1));
        for f in cube.facets() {
            assert_eq!(f.area_scaled, int(1));
        }
    }
}
