//! Seeded generators of rational polytopes, maps and hyperplanes.
//!
//! All draws come from a `ChaCha8Rng` seeded with the given `u64`, so a seed
//! fixes the output on every platform.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{rat, LinearMap, RVector, Rational};
use crate::polytope::{hull, Hyperplane, Polytope};

/// Attempts before a degenerate draw is reported as an error.
pub const MAX_RETRIES: usize = 100;

const DENOMINATORS: [i64; 3] = [1, 2, 3];
const DIAGONAL: [(i64, i64); 7] = [(1, 3), (1, 2), (2, 3), (1, 1), (3, 2), (2, 1), (3, 1)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with trial coordinates into an independent stream seed.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut h = base ^ 0x9E37_79B9_7F4A_7C15;
    for &p in parts {
        h ^= p.wrapping_add(0x9E37_79B9_7F4A_7C15).wrapping_add(h << 6).wrapping_add(h >> 2);
        // splitmix64 finalizer
        h = (h ^ (h >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h ^= h >> 31;
    }
    h
}

/// Numerator in `[-6, 6]` over a denominator in `{1, 2, 3}`.
fn coordinate(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-6..=6);
    let den = *DENOMINATORS.choose(rng).unwrap();
    rat(num, den)
}

fn point(rng: &mut ChaCha8Rng, n: usize) -> RVector {
    RVector::new((0..n).map(|_| coordinate(rng)).collect())
}

fn check_dims(n: usize, m: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::ConfigInvalid("dimension must be at least 2".into()));
    }
    if m < n {
        return Err(Error::ConfigInvalid(format!("{m} random points cannot span R^{n} with the origin")));
    }
    Ok(())
}

/// Hull of `m` random rational points and the origin, full-dimensional.
pub fn random_polytope(seed: u64, n: usize, m: usize) -> Result<Polytope> {
    check_dims(n, m)?;
    let mut rng = rng(seed);
    for _ in 0..MAX_RETRIES {
        let mut pts: Vec<RVector> = (0..m).map(|_| point(&mut rng, n)).collect();
        pts.push(RVector::zeros(n));
        let p = hull(&pts)?;
        if p.is_full_dimensional() {
            return Ok(p);
        }
    }
    Err(Error::DegenerateRetryExceeded("random polytope stayed lower-dimensional"))
}

/// Like [`random_polytope`] but with the origin in the interior.
pub fn random_interior_polytope(seed: u64, n: usize, m: usize) -> Result<Polytope> {
    check_dims(n, m)?;
    let mut rng = rng(seed);
    for _ in 0..MAX_RETRIES {
        let pts: Vec<RVector> = (0..m).map(|_| point(&mut rng, n)).collect();
        let Ok(p) = hull(&pts) else {
            continue;
        };
        if p.is_full_dimensional() && p.facets().iter().all(|f| f.support_scaled > Rational::zero()) {
            return Ok(p);
        }
    }
    Err(Error::DegenerateRetryExceeded("origin never landed in the interior"))
}

/// Random polytope of dimension `< n` containing the origin: `m` points in a
/// random rational hyperplane through the origin.
pub fn random_flat_polytope(seed: u64, n: usize, m: usize) -> Result<Polytope> {
    check_dims(n, 1.max(m))?;
    let mut rng = rng(seed);
    for _ in 0..MAX_RETRIES {
        let normal = integer_vector(&mut rng, n, 3);
        let Ok(basis) = complement_basis(&normal) else {
            continue;
        };
        let k = basis.len();
        let mut pts = vec![RVector::zeros(n)];
        for _ in 0..m {
            let c = point(&mut rng, k);
            let mut v = RVector::zeros(n);
            for (ci, b) in c.coords().iter().zip(&basis) {
                v = &v + &b.scale(ci);
            }
            pts.push(v);
        }
        let p = hull(&pts)?;
        if p.dim() < n {
            return Ok(p);
        }
    }
    Err(Error::DegenerateRetryExceeded("flat polytope generation failed"))
}

/// Integer basis of `normal^⊥`.
fn complement_basis(normal: &RVector) -> Result<Vec<RVector>> {
    let n = normal.dim();
    let pivot = normal
        .coords()
        .iter()
        .position(|c| !c.is_zero())
        .ok_or(Error::ZeroDirection)?;
    let a = &normal.coords()[pivot];
    Ok((0..n)
        .filter(|&i| i != pivot)
        .map(|i| {
            // a·e_i - c_i·e_pivot is orthogonal to the normal.
            let mut c = vec![Rational::zero(); n];
            c[i] = a.clone();
            c[pivot] = -normal.coords()[i].clone();
            RVector::new(c)
        })
        .collect())
}

fn integer_vector(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> RVector {
    loop {
        let v = RVector::new((0..n).map(|_| rat(rng.gen_range(-bound..=bound), 1)).collect());
        if !v.is_zero() {
            return v;
        }
    }
}

/// Product of `k` elementary shears `I + t·E_ij` with rational `t ∈ [-2, 2]`.
pub fn random_unimodular(seed: u64, n: usize, k: usize) -> Result<LinearMap> {
    if n < 2 {
        return Err(Error::ConfigInvalid("dimension must be at least 2".into()));
    }
    let mut rng = rng(seed);
    Ok(unimodular_from(&mut rng, n, k))
}

fn unimodular_from(rng: &mut ChaCha8Rng, n: usize, k: usize) -> LinearMap {
    let mut m = LinearMap::identity(n);
    for _ in 0..k {
        let t = loop {
            let t = coordinate(rng);
            if !t.is_zero() && within_two(&t) {
                break t;
            }
        };
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let mut rows: Vec<Vec<Rational>> = LinearMap::identity(n).rows().to_vec();
        rows[i][j] = t;
        let shear = LinearMap::from_rows(rows).expect("square");
        m = shear.compose(&m);
    }
    m
}

fn within_two(t: &Rational) -> bool {
    let two = Rational::one() + Rational::one();
    *t <= two && *t >= -two
}

/// Invertible map `U·D` with `U` unimodular and `D` diagonal with entries
/// `±{1/3, 1/2, 2/3, 1, 3/2, 2, 3}`, so both orientations occur.
pub fn random_invertible(seed: u64, n: usize) -> Result<LinearMap> {
    if n < 2 {
        return Err(Error::ConfigInvalid("dimension must be at least 2".into()));
    }
    let mut rng = rng(seed);
    let u = unimodular_from(&mut rng, n, n + 1);
    let diag: Vec<Rational> = (0..n)
        .map(|_| {
            let (p, q) = *DIAGONAL.choose(&mut rng).unwrap();
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            rat(sign * p, q)
        })
        .collect();
    Ok(u.compose(&LinearMap::diagonal(&diag)))
}

/// Origin hyperplane with integer normal entries in `[-3, 3]`.
pub fn random_origin_hyperplane(seed: u64, n: usize) -> Result<Hyperplane> {
    let mut rng = rng(seed);
    Hyperplane::through_origin(integer_vector(&mut rng, n, 3))
}

/// Origin hyperplane that also contains the given nonzero point.
pub fn random_hyperplane_through(seed: u64, v: &RVector) -> Result<Hyperplane> {
    let mut rng = rng(seed);
    let n = v.dim();
    if v.is_zero() {
        return random_origin_hyperplane(seed, n);
    }
    for _ in 0..MAX_RETRIES {
        let w = integer_vector(&mut rng, n, 3);
        // Component of w orthogonal to v.
        let normal = &w - &v.scale(&(w.dot(v) / v.norm_sq()));
        if !normal.is_zero() {
            return Hyperplane::through_origin(normal);
        }
    }
    Err(Error::DegenerateRetryExceeded("no hyperplane through the chosen point"))
}

/// Uniform random unit vector (rejection sampling in the ball).
pub fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let len = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if len > 0.1 && len <= 1.0 {
            return v.into_iter().map(|c| c / len).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_given_seed() {
        let a = random_polytope(7, 3, 5).unwrap();
        let b = random_polytope(7, 3, 5).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_polytope(8, 3, 5).unwrap());
        assert_eq!(random_invertible(3, 4).unwrap(), random_invertible(3, 4).unwrap());
    }

    #[test]
    fn generated_objects_have_the_promised_shape() {
        for seed in 0..20 {
            let p = random_polytope(seed, 3, 4).unwrap();
            assert!(p.is_full_dimensional());
            let q = random_interior_polytope(seed, 3, 8).unwrap();
            assert!(q.facets().iter().all(|f| f.support() > 0.0));
            let f = random_flat_polytope(seed, 4, 4).unwrap();
            assert!(f.dim() < 4);
            let u = random_unimodular(seed, 3, 4).unwrap();
            assert_eq!(u.det(), Rational::one());
            let g = random_invertible(seed, 3).unwrap();
            assert!(!g.det().is_zero());
            let v = RVector::from_ints(&[1, 2, 3]);
            let h = random_hyperplane_through(seed, &v).unwrap();
            assert!(h.normal().dot(&v).is_zero());
        }
    }

    #[test]
    fn both_orientations_occur() {
        let signs: Vec<bool> = (0..40)
            .map(|s| random_invertible(s, 3).unwrap().det() > Rational::zero())
            .collect();
        assert!(signs.contains(&true) && signs.contains(&false));
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(42, &[3, 0]), derive_seed(42, &[3, 1]));
        assert_ne!(derive_seed(42, &[3, 0]), derive_seed(42, &[4, 0]));
        assert_eq!(derive_seed(42, &[1, 2]), derive_seed(42, &[1, 2]));
    }

    #[test]
    fn bad_configuration() {
        assert!(matches!(random_polytope(0, 1, 3), Err(Error::ConfigInvalid(_))));
        assert!(matches!(random_polytope(0, 4, 2), Err(Error::ConfigInvalid(_))));
    }
}
