//! Floating-point halfspace intersections `{x : a_i·x ≤ b_i}`.
//!
//! Vertices are found by brute force over n-subsets of constraints. Works for the
//! small systems used by Wulff bodies (m ≲ 60, n ≤ 5).
//!
//! [`exact_volume`] reads the `f64` data as exact binary rationals and computes the
//! volume of that body without rounding: floating-point solves only propose
//! candidate vertices, which are then confirmed in rational arithmetic, and the
//! volume comes from a pulling triangulation over exact incidences. This stays
//! correct when a support perturbation splits a degenerate vertex into a cluster
//! far smaller than any workable float tolerance.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::polytope::det_int;

/// Feasibility, deduplication and incidence tolerance, relative to the size of
/// the polytope. Small enough to resolve the vertex clusters that appear when a
/// degenerate vertex is split by a support perturbation of order 1e-5.
pub const VERTEX_TOL: f64 = 1e-11;

/// One constraint `normal · x ≤ bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace {
    pub normal: Vec<f64>,
    pub bound: f64,
}

impl Halfspace {
    pub fn new(normal: Vec<f64>, bound: f64) -> Self {
        Halfspace { normal, bound }
    }

    fn slack(&self, x: &[f64]) -> f64 {
        self.bound - dot(&self.normal, x)
    }

    fn scale(&self) -> f64 {
        norm(&self.normal)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Vertices of a bounded feasible halfspace system.
pub fn halfspace_vertices(constraints: &[Halfspace]) -> Result<Vec<Vec<f64>>> {
    let n = constraints
        .first()
        .ok_or(Error::EmptyInput("no halfspaces"))?
        .normal
        .len();
    if constraints.iter().any(|c| c.normal.len() != n) {
        return Err(Error::DimensionMismatch("halfspace normals differ in length".into()));
    }
    if constraints.iter().any(|c| c.scale() == 0.0) {
        return Err(Error::ZeroDirection);
    }

    // Probe boundedness with a large box: a vertex touching the box means the
    // original system recedes to infinity.
    let reach = constraints
        .iter()
        .map(|c| c.bound.abs() / c.scale())
        .fold(1.0, f64::max);
    let box_size = 1e6 * reach;
    let mut system = constraints.to_vec();
    for i in 0..n {
        for sign in [1.0, -1.0] {
            let mut normal = vec![0.0; n];
            normal[i] = sign;
            system.push(Halfspace::new(normal, box_size));
        }
    }

    let vertices = enumerate_vertices(&system, n);
    if vertices.is_empty() {
        return Err(Error::Infeasible);
    }
    let on_box = vertices
        .iter()
        .any(|v| v.iter().any(|c| c.abs() >= box_size * (1.0 - 1e-9)));
    if on_box {
        return Err(Error::Unbounded);
    }
    Ok(vertices)
}

fn enumerate_vertices(system: &[Halfspace], n: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for subset in (0..system.len()).combinations(n) {
        let a = DMatrix::from_fn(n, n, |r, c| system[subset[r]].normal[c]);
        let b = DVector::from_fn(n, |r, _| system[subset[r]].bound);
        let Some(x) = a.lu().solve(&b) else {
            continue;
        };
        let x: Vec<f64> = x.iter().copied().collect();
        if !x.iter().all(|c| c.is_finite()) {
            continue;
        }
        let scale = 1.0 + norm(&x);
        let feasible = system
            .iter()
            .all(|h| h.slack(&x) >= -VERTEX_TOL * scale * h.scale().max(1.0));
        if !feasible {
            continue;
        }
        if out.iter().all(|v| norm(&sub(v, &x)) > VERTEX_TOL * scale) {
            out.push(x);
        }
    }
    out
}

/// Bounded halfspace intersection with its vertices.
#[derive(Clone, Debug)]
pub struct FloatPolytope {
    pub constraints: Vec<Halfspace>,
    pub vertices: Vec<Vec<f64>>,
}

impl FloatPolytope {
    pub fn from_halfspaces(constraints: Vec<Halfspace>) -> Result<Self> {
        let vertices = halfspace_vertices(&constraints)?;
        Ok(FloatPolytope {
            constraints,
            vertices,
        })
    }

    pub fn dim(&self) -> usize {
        self.constraints[0].normal.len()
    }

    /// n-volume by recursive pyramid decomposition over the face lattice.
    pub fn volume(&self) -> f64 {
        let n = self.dim();
        let scale = 1.0 + self.vertices.iter().map(|v| norm(v)).fold(0.0, f64::max);
        let tight: Vec<Vec<bool>> = self
            .vertices
            .iter()
            .map(|v| {
                self.constraints
                    .iter()
                    .map(|h| h.slack(v).abs() <= VERTEX_TOL * scale * h.scale())
                    .collect()
            })
            .collect();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        if affine_rank(&self.vertices, &all, scale) < n {
            return 0.0;
        }
        face_volume(&self.vertices, &tight, &all, n, scale)
    }
}

/// Orthonormal basis (Gram-Schmidt) of the differences `v_i - v_{idx[0]}`.
fn affine_basis(verts: &[Vec<f64>], idx: &[usize], scale: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let base = &verts[idx[0]];
    for &i in &idx[1..] {
        let mut d = sub(&verts[i], base);
        for b in &basis {
            let proj = dot(&d, b);
            for (dc, bc) in d.iter_mut().zip(b) {
                *dc -= proj * bc;
            }
        }
        let len = norm(&d);
        if len > 1e-9 * scale {
            basis.push(d.into_iter().map(|c| c / len).collect());
        }
    }
    basis
}

fn affine_rank(verts: &[Vec<f64>], idx: &[usize], scale: f64) -> usize {
    if idx.is_empty() {
        return 0;
    }
    affine_basis(verts, idx, scale).len()
}

/// Volume of the k-face spanned by `idx`: `(1/k) Σ dist(c, aff F) · V_{k-1}(F)`
/// over its (k-1)-faces `F`, with `c` the vertex centroid.
fn face_volume(verts: &[Vec<f64>], tight: &[Vec<bool>], idx: &[usize], k: usize, scale: f64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if k == 1 {
        return idx
            .iter()
            .tuple_combinations()
            .map(|(&a, &b)| norm(&sub(&verts[a], &verts[b])))
            .fold(0.0, f64::max);
    }
    let dim = verts[0].len();
    let mut centroid = vec![0.0; dim];
    for &i in idx {
        for (c, v) in centroid.iter_mut().zip(&verts[i]) {
            *c += v / idx.len() as f64;
        }
    }
    let constraints = tight[0].len();
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut total = 0.0;
    for j in 0..constraints {
        let sub_face: Vec<usize> = idx.iter().copied().filter(|&i| tight[i][j]).collect();
        if sub_face.len() < k || sub_face.len() == idx.len() || seen.contains(&sub_face) {
            continue;
        }
        if affine_rank(verts, &sub_face, scale) != k - 1 {
            continue;
        }
        let basis = affine_basis(verts, &sub_face, scale);
        let mut d = sub(&centroid, &verts[sub_face[0]]);
        for b in &basis {
            let proj = dot(&d, b);
            for (dc, bc) in d.iter_mut().zip(b) {
                *dc -= proj * bc;
            }
        }
        let height = norm(&d);
        total += height * face_volume(verts, tight, &sub_face, k - 1, scale);
        seen.push(sub_face);
    }
    total / k as f64
}

/// Constraint `a·x ≤ b` scaled to integers.
struct IntConstraint {
    a: Vec<BigInt>,
    b: BigInt,
}

fn integer_constraint(h: &Halfspace) -> IntConstraint {
    let exact = |x: f64| Rational::from_float(x).expect("finite constraint data");
    let coeffs: Vec<Rational> = h.normal.iter().map(|&x| exact(x)).chain([exact(h.bound)]).collect();
    let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    let b = ints.pop().unwrap();
    IntConstraint { a: ints, b }
}

/// Vertex in homogeneous integer coordinates `(d, x_1·d, …, x_n·d)` with `d > 0`
/// and no common factor.
type HomPoint = Vec<BigInt>;

/// Slack below which a float vertex candidate is passed on to the exact test.
const CANDIDATE_TOL: f64 = 1e-7;

/// Volume of `{x : a_i·x ≤ b_i}` with every `f64` taken at its exact value.
pub fn exact_volume(constraints: &[Halfspace]) -> Result<Rational> {
    halfspace_vertices(constraints)?;
    let n = constraints[0].normal.len();
    let ints: Vec<IntConstraint> = constraints.iter().map(integer_constraint).collect();

    let mut found: BTreeSet<HomPoint> = BTreeSet::new();
    for subset in (0..constraints.len()).combinations(n) {
        let a = DMatrix::from_fn(n, n, |r, c| constraints[subset[r]].normal[c]);
        let b = DVector::from_fn(n, |r, _| constraints[subset[r]].bound);
        let Some(x) = a.lu().solve(&b) else {
            continue;
        };
        let x: Vec<f64> = x.iter().copied().collect();
        if !x.iter().all(|c| c.is_finite()) {
            continue;
        }
        let scale = 1.0 + norm(&x);
        if constraints
            .iter()
            .any(|h| h.slack(&x) < -CANDIDATE_TOL * scale * h.scale().max(1.0))
        {
            continue;
        }
        let Some(v) = cramer(&ints, &subset) else {
            continue;
        };
        if ints.iter().all(|c| dot_int(&c.a, &v[1..]) <= &c.b * &v[0]) {
            found.insert(v);
        }
    }
    let verts: Vec<HomPoint> = found.into_iter().collect();
    let incidence: Vec<Vec<bool>> = verts
        .iter()
        .map(|v| ints.iter().map(|c| dot_int(&c.a, &v[1..]) == &c.b * &v[0]).collect())
        .collect();
    let all: Vec<usize> = (0..verts.len()).collect();
    if verts.is_empty() || affine_rank_int(&verts, &all) < n {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    for simplex in pulling_triangulation(&verts, &incidence, &all, n) {
        let rows: Vec<Vec<BigInt>> = simplex.iter().map(|&i| verts[i].clone()).collect();
        let den = simplex.iter().fold(BigInt::one(), |acc, &i| acc * &verts[i][0]);
        total += Rational::new(det_int(rows).abs(), den);
    }
    let factorial: BigInt = (1..=n).map(BigInt::from).product();
    Ok(total / Rational::from_integer(factorial))
}

fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Intersection point of the hyperplanes in `subset` by Cramer's rule.
fn cramer(ints: &[IntConstraint], subset: &[usize]) -> Option<HomPoint> {
    let n = subset.len();
    let a: Vec<Vec<BigInt>> = subset.iter().map(|&i| ints[i].a.clone()).collect();
    let mut d = det_int(a.clone());
    if d.is_zero() {
        return None;
    }
    let mut coords: Vec<BigInt> = (0..n)
        .map(|j| {
            let mut m = a.clone();
            for (row, &i) in m.iter_mut().zip(subset) {
                row[j] = ints[i].b.clone();
            }
            det_int(m)
        })
        .collect();
    if d.is_negative() {
        d = -d;
        coords.iter_mut().for_each(|c| *c = -&*c);
    }
    let g = coords.iter().fold(d.clone(), |g, c| g.gcd(c));
    let mut v = vec![d / &g];
    v.extend(coords.into_iter().map(|c| c / &g));
    Some(v)
}

/// Rank of the homogeneous rows minus one.
fn affine_rank_int(verts: &[HomPoint], idx: &[usize]) -> usize {
    let mut m: Vec<Vec<BigInt>> = idx.iter().map(|&i| verts[i].clone()).collect();
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (f, g) = (m[r][c].clone(), m[i][c].clone());
            for k in c..cols {
                let v = &m[i][k] * &f - &m[r][k] * &g;
                m[i][k] = v;
            }
            let content = m[i][c..].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !content.is_zero() && !content.is_one() {
                for k in c..cols {
                    m[i][k] = &m[i][k] / &content;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r - 1
}

/// Simplices of the pulling triangulation of the `k`-face with vertex set `face`:
/// cone from its first vertex over the triangulated facets not containing it.
fn pulling_triangulation(verts: &[HomPoint], incidence: &[Vec<bool>], face: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![face[0]]];
    }
    let apex = face[0];
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut out = Vec::new();
    for j in 0..incidence[0].len() {
        if incidence[apex][j] {
            continue;
        }
        let sub: Vec<usize> = face.iter().copied().filter(|&i| incidence[i][j]).collect();
        if sub.len() < k || seen.contains(&sub) || affine_rank_int(verts, &sub) != k - 1 {
            continue;
        }
        for mut s in pulling_triangulation(verts, incidence, &sub, k - 1) {
            s.push(apex);
            out.push(s);
        }
        seen.push(sub);
    }
    out
}
