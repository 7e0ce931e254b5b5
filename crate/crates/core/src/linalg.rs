//! Exact rational vectors, primitive integer directions and linear maps.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `p / q` as a rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"` or an integer string.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Point or direction with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RVector(Vec<Rational>);

impl RVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RVector(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RVector(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        RVector(vec![Rational::zero(); n])
    }

    /// Canonical basis vector `e_{i+1}` (0-based `i`).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, s: &Rational) -> RVector {
        RVector(self.0.iter().map(|c| c * s).collect())
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        to_f64(&self.norm_sq()).sqrt()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Add for &RVector {
    type Output = RVector;
    fn add(self, rhs: &RVector) -> RVector {
        RVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RVector {
    type Output = RVector;
    fn sub(self, rhs: &RVector) -> RVector {
        RVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RVector {
    type Output = RVector;
    fn neg(self) -> RVector {
        RVector(self.0.iter().map(|c| -c).collect())
    }
}

/// A ray from the origin, stored as its primitive integer representative
/// (coprime entries, sign preserved). Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction(Vec<BigInt>);

impl Direction {
    /// Canonicalizes an integer vector. Fails on the zero vector.
    pub fn from_integers(mut coords: Vec<BigInt>) -> Result<Self> {
        let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(Error::ZeroDirection);
        }
        if !g.is_one() {
            for c in &mut coords {
                *c /= &g;
            }
        }
        Ok(Direction(coords))
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::from_integers(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Primitive direction of the ray through a nonzero rational vector.
    pub fn from_rational(v: &RVector) -> Result<Self> {
        let l = v
            .coords()
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Self::from_integers(
            v.coords()
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect(),
        )
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm_sq(&self) -> BigInt {
        self.0.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().to_f64().unwrap_or(f64::INFINITY).sqrt()
    }

    pub fn neg(&self) -> Direction {
        Direction(self.0.iter().map(|c| -c).collect())
    }

    pub fn to_rvector(&self) -> RVector {
        RVector(
            self.0
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Floating unit vector along the direction.
    pub fn unit(&self) -> Vec<f64> {
        let norm = self.norm();
        self.to_f64().into_iter().map(|c| c / norm).collect()
    }

    /// First index with a nonzero entry.
    pub fn pivot(&self) -> usize {
        self.0
            .iter()
            .position(|c| !c.is_zero())
            .expect("directions are nonzero")
    }

    /// Absolute value of entry `i`.
    pub fn abs_entry(&self, i: usize) -> BigInt {
        self.0[i].abs()
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Linear map on R^n as a row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    rows: Vec<Vec<Rational>>,
}

impl LinearMap {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "matrix must be square and nonempty".into(),
            ));
        }
        Ok(LinearMap { rows })
    }

    /// Builds the matrix whose `j`-th column is the image of `e_j`.
    pub fn from_columns(cols: &[RVector]) -> Result<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.dim() != n) {
            return Err(Error::DimensionMismatch("columns must have length n".into()));
        }
        let rows = (0..n)
            .map(|i| cols.iter().map(|c| c.coords()[i].clone()).collect())
            .collect();
        Ok(LinearMap { rows })
    }

    /// Like [`LinearMap::from_rows`] but rejects singular matrices.
    pub fn invertible(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = Self::from_rows(rows)?;
        if m.det().is_zero() {
            return Err(Error::SingularMap);
        }
        Ok(m)
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Rational::one(); n])
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let n = d.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { d[i].clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        LinearMap { rows }
    }

    pub fn scalar(n: usize, s: &Rational) -> Self {
        Self::diagonal(&vec![s.clone(); n])
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> RVector {
        RVector(self.rows.iter().map(|r| r[j].clone()).collect())
    }

    pub fn transpose(&self) -> LinearMap {
        let n = self.dim();
        LinearMap {
            rows: (0..n).map(|j| self.column(j).0).collect(),
        }
    }

    pub fn apply(&self, v: &RVector) -> RVector {
        RVector(
            self.rows
                .iter()
                .map(|r| {
                    r.iter()
                        .zip(v.coords())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(Rational::zero(), |acc, k| {
                            acc + &self.rows[i][k] * &other.rows[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        LinearMap { rows }
    }

    pub fn det(&self) -> Rational {
        let mut a = self.rows.clone();
        let n = a.len();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if piv != col {
                a.swap(piv, col);
                det = -det;
            }
            let p = a[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &p;
                for c in col..n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        let n = self.dim();
        let mut a: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::SingularMap)?;
            a.swap(piv, col);
            let p = a[col][col].clone();
            for c in 0..2 * n {
                a[col][c] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let delta = &f * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        Ok(LinearMap {
            rows: a.into_iter().map(|r| r[n..].to_vec()).collect(),
        })
    }

    /// `phi^{-t}`, the transpose of the inverse.
    pub fn inverse_transpose(&self) -> Result<LinearMap> {
        Ok(self.inverse()?.transpose())
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let parts: Vec<String> = r.iter().map(format_rational).collect();
                format!("[{}]", parts.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Rank of a list of rational vectors, all of the same length.
pub fn rank(vectors: &[RVector]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(piv, rank);
        let p = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = &rows[r][col] / &p;
            for c in col..width {
                let delta = &f * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/2", "-7", "0", "-1/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn direction_is_primitive_and_signed() {
        let d = Direction::from_rational(&RVector::new(vec![rat(-1, 2), rat(-1, 3), int(0)]))
            .unwrap();
        assert_eq!(d, Direction::from_i64(&[-3, -2, 0]).unwrap());
        assert_eq!(Direction::from_i64(&[0, 0]), Err(Error::ZeroDirection));
    }

    #[test]
    fn det_inverse_transpose() {
        let m = LinearMap::from_rows(vec![
            vec![int(2), int(1), int(0)],
            vec![int(0), rat(1, 2), int(0)],
            vec![int(1), int(0), int(1)],
        ])
        .unwrap();
        assert_eq!(m.det(), int(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.compose(&inv), LinearMap::identity(3));
        assert_eq!(m.transpose().transpose(), m);
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(LinearMap::invertible(singular), Err(Error::SingularMap));
    }

    #[test]
    fn rank_detects_dependence() {
        let v = [
            RVector::from_ints(&[1, 0, 1]),
            RVector::from_ints(&[0, 1, 1]),
            RVector::from_ints(&[1, 1, 2]),
        ];
        assert_eq!(rank(&v), 2);
        assert_eq!(rank(&v[..2]), 2);
        assert_eq!(rank(&[]), 0);
    }
}
