use num_traits::Signed;
use proptest::prelude::*;

use samlab::harness::random::{random_invertible, random_origin_hyperplane, random_polytope};
use samlab::linalg::{rat, Direction, RVector};
use samlab::measure::{eval_homog, lp_surface_measure, surface_measure, SurfaceVariant};
use samlab::polytope::{apply_map, cut};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn volume_scales_by_determinant(seed in any::<u64>(), n in 2usize..=4) {
        let p = random_polytope(seed, n, n + 3).unwrap();
        let phi = random_invertible(seed ^ 0x5eed, n).unwrap();
        let image = apply_map(&p, &phi).unwrap();
        prop_assert_eq!(image.volume(), phi.det().abs() * p.volume());
    }

    #[test]
    fn cut_pieces_reassemble(seed in any::<u64>(), n in 2usize..=4) {
        let p = random_polytope(seed, n, n + 3).unwrap();
        let h = random_origin_hyperplane(seed.wrapping_add(1), n).unwrap();
        let c = cut(&p, &h).unwrap();
        prop_assert_eq!(c.plus.volume() + c.minus.volume(), p.volume());
    }

    #[test]
    fn facets_follow_the_inverse_transpose(seed in any::<u64>(), n in 2usize..=4) {
        let p = random_polytope(seed, n, n + 2).unwrap();
        let phi = random_invertible(seed ^ 0xface, n).unwrap();
        let image = apply_map(&p, &phi).unwrap();
        let it = phi.inverse_transpose().unwrap();
        let det = samlab::linalg::to_f64(&phi.det().abs());
        prop_assert_eq!(image.facets().len(), p.facets().len());
        for f in p.facets() {
            let mapped = it.apply(&f.normal.to_rvector());
            let g = Direction::from_rational(&mapped).unwrap();
            let img = image.facet(&g);
            prop_assert!(img.is_some(), "no image facet for {:?}", f.normal);
            let stretch = mapped.norm() / f.normal.norm();
            prop_assert!(rel(img.unwrap().area(), stretch * det * f.area()) <= 1e-12);
        }
    }

    #[test]
    fn facet_normals_balance(seed in any::<u64>(), n in 2usize..=4) {
        let p = random_polytope(seed, n, n + 4).unwrap();
        let mut sum = vec![0.0; n];
        let mut scale: f64 = 0.0;
        for f in p.facets() {
            let a = f.area();
            scale = scale.max(a);
            for (s, u) in sum.iter_mut().zip(f.normal.unit()) {
                *s += a * u;
            }
        }
        prop_assert!(sum.iter().all(|s| s.abs() <= 1e-12 * scale.max(1.0)), "{:?}", sum);
    }

    #[test]
    fn surface_measure_splits_at_the_origin(seed in any::<u64>(), n in 2usize..=4) {
        let p = random_polytope(seed, n, n + 3).unwrap();
        let s = surface_measure(&p, SurfaceVariant::S);
        let star = surface_measure(&p, SurfaceVariant::Sstar);
        let o = surface_measure(&p, SurfaceVariant::So);
        prop_assert_eq!(s.len(), star.len() + o.len());
        for (d, m) in s.atoms() {
            prop_assert_eq!(m, star.mass(d) + o.mass(d));
        }
    }

    #[test]
    fn reflection_moves_atoms_antipodally(
        seed in any::<u64>(),
        n in 2usize..=4,
        p in prop::sample::select(vec![-1.0, 0.0, 0.5, 2.0, 3.0]),
    ) {
        let poly = random_polytope(seed, n, n + 3).unwrap();
        let mu = lp_surface_measure(&poly, p);
        let nu = lp_surface_measure(&poly.reflect(), p);
        prop_assert_eq!(mu.len(), nu.len());
        for (d, m) in mu.atoms() {
            prop_assert_eq!(nu.mass(&d.neg()), m);
        }
    }

    #[test]
    fn homogeneous_evaluation_scales(
        seed in any::<u64>(),
        n in 2usize..=4,
        p in prop::sample::select(vec![-1.0, 0.0, 0.5, 2.0, 3.0]),
        num in 1i64..20,
        den in 1i64..20,
    ) {
        let poly = random_polytope(seed, n, n + 3).unwrap();
        let mu = lp_surface_measure(&poly, p);
        let t = rat(num, den);
        let tf = num as f64 / den as f64;
        for (d, _) in mu.atoms() {
            let x = d.to_rvector();
            let tx = RVector::new(x.coords().iter().map(|c| c * &t).collect());
            let lhs = eval_homog(&mu, &tx, p).unwrap();
            let rhs = tf.powf(-p) * eval_homog(&mu, &x, p).unwrap();
            prop_assert!(rel(lhs, rhs) <= 1e-12, "{} vs {}", lhs, rhs);
        }
    }
}
