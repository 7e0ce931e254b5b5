//! Named polytopes and linear maps used throughout the checks.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{LinearMap, RVector, Rational};
use crate::polytope::{hull, Hyperplane, Polytope};

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::DimensionMismatch("dimension must be at least 2".into()));
    }
    Ok(())
}

fn check_scale(s: &Rational) -> Result<()> {
    if !s.is_positive() {
        return Err(Error::BadScale);
    }
    Ok(())
}

fn check_lambda(lambda: &Rational) -> Result<()> {
    if !lambda.is_positive() || *lambda >= Rational::one() {
        return Err(Error::LambdaRange);
    }
    Ok(())
}

/// `sT^n = conv{o, s·e_1, …, s·e_n}`.
pub fn standard_simplex(n: usize, s: &Rational) -> Result<Polytope> {
    check_n(n)?;
    check_scale(s)?;
    let mut pts = vec![RVector::zeros(n)];
    pts.extend((0..n).map(|i| RVector::basis(n, i).scale(s)));
    hull(&pts)
}

/// `sT' = conv{o, s·e_2, …, s·e_n}`, the face of `sT^n` in `e_1^⊥`.
pub fn simplex_prime(n: usize, s: &Rational) -> Result<Polytope> {
    check_n(n)?;
    check_scale(s)?;
    let mut pts = vec![RVector::zeros(n)];
    pts.extend((1..n).map(|i| RVector::basis(n, i).scale(s)));
    hull(&pts)
}

/// `φ_λ`: `e_1 ↦ e_1`, `e_2 ↦ (1-λ)e_1 + λe_2`, `e_k ↦ e_k`. Determinant `λ`.
pub fn phi_map(lambda: &Rational, n: usize) -> Result<LinearMap> {
    check_n(n)?;
    check_lambda(lambda)?;
    let mut cols: Vec<RVector> = (0..n).map(|i| RVector::basis(n, i)).collect();
    cols[1] = mixed_column(lambda, n);
    LinearMap::from_columns(&cols)
}

/// `ψ_λ`: `e_1 ↦ (1-λ)e_1 + λe_2`, `e_2 ↦ e_2`, `e_k ↦ e_k`. Determinant `λ`.
pub fn psi_map(lambda: &Rational, n: usize) -> Result<LinearMap> {
    check_n(n)?;
    check_lambda(lambda)?;
    let mut cols: Vec<RVector> = (0..n).map(|i| RVector::basis(n, i)).collect();
    cols[0] = mixed_column(lambda, n);
    LinearMap::from_columns(&cols)
}

fn mixed_column(lambda: &Rational, n: usize) -> RVector {
    let mut c = RVector::zeros(n).into_coords();
    c[0] = Rational::one() - lambda;
    c[1] = lambda.clone();
    RVector::new(c)
}

/// `H_λ`: the origin hyperplane with normal `λe_1 - (1-λ)e_2`.
pub fn dissection_hyperplane(lambda: &Rational, n: usize) -> Result<Hyperplane> {
    check_n(n)?;
    check_lambda(lambda)?;
    let mut c = RVector::zeros(n).into_coords();
    c[0] = lambda.clone();
    c[1] = lambda - Rational::one();
    Hyperplane::through_origin(RVector::new(c))
}

/// Axis-parallel box `[lo, hi]^n`; requires `lo ≤ 0 ≤ hi`.
pub fn cube(n: usize, lo: &Rational, hi: &Rational) -> Result<Polytope> {
    check_n(n)?;
    let pts: Vec<RVector> = (0..1usize << n)
        .map(|mask| {
            RVector::new(
                (0..n)
                    .map(|i| if mask >> i & 1 == 1 { hi.clone() } else { lo.clone() })
                    .collect(),
            )
        })
        .collect();
    hull(&pts)
}

/// `conv{±e_i}`.
pub fn cross_polytope(n: usize) -> Result<Polytope> {
    check_n(n)?;
    let pts: Vec<RVector> = (0..n)
        .flat_map(|i| {
            let e = RVector::basis(n, i);
            [-&e, e]
        })
        .collect();
    hull(&pts)
}

/// Cross-polytope intersected with the nonnegative orthant; equals `T^n`.
///
/// Kept as a named probe because it is built by a genuine cut sequence.
pub fn orthant_cross_polytope(n: usize) -> Result<Polytope> {
    let mut p = cross_polytope(n)?;
    for i in 0..n {
        let h = Hyperplane::through_origin(RVector::basis(n, i))?;
        p = crate::polytope::cut(&p, &h)?.plus;
    }
    Ok(p)
}

/// `{o}` in R^n.
pub fn origin(n: usize) -> Result<Polytope> {
    check_n(n)?;
    hull(&[RVector::zeros(n)])
}

/// `s·Id`.
pub fn scaling(n: usize, s: &Rational) -> Result<LinearMap> {
    if s.is_zero() {
        return Err(Error::SingularMap);
    }
    Ok(LinearMap::scalar(n, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};
    use crate::polytope::{apply_map, cut};

    #[test]
    fn simplex_volumes() {
        assert_eq!(standard_simplex(3, &int(1)).unwrap().volume(), rat(1, 6));
        assert_eq!(standard_simplex(3, &int(2)).unwrap().volume(), rat(4, 3));
        assert_eq!(standard_simplex(4, &int(1)).unwrap().volume(), rat(1, 24));
        assert_eq!(standard_simplex(3, &int(0)), Err(Error::BadScale));
    }

    #[test]
    fn simplex_prime_is_flat() {
        let t = simplex_prime(3, &int(1)).unwrap();
        assert_eq!(t.dim(), 2);
        assert_eq!(t.facets().len(), 2);
        assert!(t.facets().iter().all(|f| f.area_scaled == rat(1, 2)));
    }

    #[test]
    fn phi_psi_definitions() {
        let half = rat(1, 2);
        let phi = phi_map(&half, 3).unwrap();
        assert_eq!(phi.column(0), RVector::from_ints(&[1, 0, 0]));
        assert_eq!(phi.column(1), RVector::new(vec![half.clone(), half.clone(), int(0)]));
        assert_eq!(phi.det(), half);
        let psi = psi_map(&half, 3).unwrap();
        assert_eq!(psi.column(0), RVector::new(vec![half.clone(), half.clone(), int(0)]));
        assert_eq!(psi.column(1), RVector::from_ints(&[0, 1, 0]));
        assert_eq!(psi.det(), half);
        for lambda in [rat(1, 3), rat(3, 4)] {
            let ones = RVector::from_ints(&[1, 1, 1, 1]);
            assert_eq!(phi_map(&lambda, 4).unwrap().transpose().apply(&ones), ones);
            assert_eq!(psi_map(&lambda, 4).unwrap().transpose().apply(&ones), ones);
        }
        assert_eq!(phi_map(&int(0), 3), Err(Error::LambdaRange));
        assert_eq!(psi_map(&int(1), 3), Err(Error::LambdaRange));
    }

    #[test]
    fn phi_image_of_simplex() {
        let t = standard_simplex(3, &int(1)).unwrap();
        let img = apply_map(&t, &phi_map(&rat(1, 2), 3).unwrap()).unwrap();
        let expected = hull(&[
            RVector::zeros(3),
            RVector::basis(3, 0),
            RVector::new(vec![rat(1, 2), rat(1, 2), int(0)]),
            RVector::basis(3, 2),
        ])
        .unwrap();
        assert_eq!(img.vertices(), expected.vertices());
        let h = Hyperplane::through_origin(RVector::from_ints(&[1, -1, 0])).unwrap();
        assert_eq!(cut(&t, &h).unwrap().plus.vertices(), expected.vertices());
    }

    #[test]
    fn orthant_cross_polytope_is_simplex() {
        let p = orthant_cross_polytope(3).unwrap();
        assert_eq!(p.vertices(), standard_simplex(3, &int(1)).unwrap().vertices());
    }
}
