// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use unitarize_core::random::{gaussian_matrix, random_invertible, random_spd, random_unitary, seeded};
use unitarize_core::{
    certify, congruence, distance, geodesic, midpoint, solve, spectral_decompose, ActionGroupoidSpec, ComplexMatrix,
    FiniteGroup, HermitianMatrix, PointSet, SolverOptions, SpdPoint,
};

fn hermitian(seed: u64, dim: usize) -> HermitianMatrix {
    let g = gaussian_matrix(&mut seeded(seed), dim);
    HermitianMatrix::new((&g + &g.adjoint()).scale(0.5)).unwrap()
}

fn spd(seed: u64, dim: usize, cond: f64) -> SpdPoint {
    SpdPoint::new(random_spd(&mut seeded(seed), dim, cond))
}

fn close(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> bool {
    (a - b).l2_norm() <= tol * (1.0 + a.l2_norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectral_reconstruction(seed in any::<u64>(), dim in 1usize..=8) {
        let h = hermitian(seed, dim);
        let dec = spectral_decompose(&h).unwrap();
        prop_assert!(close(h.as_matrix(), &dec.reconstruct(), 1e-12));
        let v = &dec.eigenvectors;
        prop_assert!(close(&(&v.adjoint() * v), &ComplexMatrix::identity(dim), 1e-12));
        prop_assert!(dec.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn exp_and_log_are_inverse(seed in any::<u64>(), dim in 1usize..=8) {
        let h = hermitian(seed, dim);
        let back = h.exp().unwrap().log();
        prop_assert!(close(h.as_matrix(), back.as_matrix(), 1e-11));
    }

    #[test]
    fn square_root_squares_back(seed in any::<u64>(), dim in 1usize..=8, cond in 1.0f64..1e3) {
        let a = random_spd(&mut seeded(seed), dim, cond);
        let r = a.sqrt();
        prop_assert!(close(&(r.as_matrix() * r.as_matrix()), a.as_matrix(), 1e-11));
        let w = a.inv_sqrt();
        prop_assert!(close(&(&(w.as_matrix() * a.as_matrix()) * w.as_matrix()), &ComplexMatrix::identity(dim), 1e-10));
    }

    #[test]
    fn l2_norm_is_unitarily_invariant(seed in any::<u64>(), dim in 1usize..=8) {
        let mut rng = seeded(seed);
        let x = gaussian_matrix(&mut rng, dim);
        let u = random_unitary(&mut rng, dim);
        let moved = &(&u * &x) * &u.adjoint();
        prop_assert!((moved.l2_norm() - x.l2_norm()).abs() <= 1e-12 * (1.0 + x.l2_norm()));
        prop_assert!(x.l2_norm() <= x.operator_norm().unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn distance_is_symmetric_and_separates(seed in any::<u64>(), dim in 1usize..=6) {
        let a = spd(seed, dim, 100.0);
        let b = spd(seed ^ 0x9e37, dim, 100.0);
        let dab = distance(&a, &b).unwrap();
        prop_assert!((dab - distance(&b, &a).unwrap()).abs() <= 1e-10 * (1.0 + dab));
        prop_assert!(distance(&a, &a).unwrap() <= 1e-12);
    }

    #[test]
    fn congruence_is_an_isometry(seed in any::<u64>(), dim in 1usize..=6, cond in 1.0f64..1e2) {
        let a = spd(seed, dim, 100.0);
        let b = spd(seed.wrapping_add(1), dim, 100.0);
        let g = random_invertible(&mut seeded(seed.wrapping_add(2)), dim, cond);
        let before = distance(&a, &b).unwrap();
        let after = distance(&congruence(&g, &a).unwrap(), &congruence(&g, &b).unwrap()).unwrap();
        prop_assert!((before - after).abs() <= 1e-9 * (1.0 + before));
    }

    #[test]
    fn triangle_inequality(seed in any::<u64>(), dim in 1usize..=6) {
        let a = spd(seed, dim, 1e3);
        let b = spd(seed.wrapping_add(1), dim, 1e3);
        let c = spd(seed.wrapping_add(2), dim, 1e3);
        let lhs = distance(&a, &c).unwrap();
        prop_assert!(lhs <= distance(&a, &b).unwrap() + distance(&b, &c).unwrap() + 1e-10);
    }

    #[test]
    fn geodesic_has_constant_speed(seed in any::<u64>(), dim in 1usize..=6, s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let a = spd(seed, dim, 1e3);
        let b = spd(seed.wrapping_add(1), dim, 1e3);
        let d = distance(&a, &b).unwrap();
        let p = geodesic(&a, &b, s).unwrap();
        let q = geodesic(&a, &b, t).unwrap();
        prop_assert!((distance(&p, &q).unwrap() - (s - t).abs() * d).abs() <= 1e-8 * (1.0 + d));
    }

    #[test]
    fn midpoint_is_symmetric(seed in any::<u64>(), dim in 1usize..=6) {
        let a = spd(seed, dim, 1e3);
        let b = spd(seed.wrapping_add(1), dim, 1e3);
        let m1 = midpoint(&a, &b).unwrap();
        let m2 = midpoint(&b, &a).unwrap();
        prop_assert!(distance(&m1, &m2).unwrap() <= 1e-9);
    }

    #[test]
    fn semi_parallelogram_law(seed in any::<u64>(), dim in 1usize..=6) {
        let a = spd(seed, dim, 1e3);
        let b = spd(seed.wrapping_add(1), dim, 1e3);
        let x = spd(seed.wrapping_add(2), dim, 1e3);
        let z = midpoint(&a, &b).unwrap();
        let (dab, dzx) = (distance(&a, &b).unwrap(), distance(&z, &x).unwrap());
        let (dxa, dxb) = (distance(&x, &a).unwrap(), distance(&x, &b).unwrap());
        let lhs = dab * dab + 4.0 * dzx * dzx;
        let rhs = 2.0 * dxa * dxa + 2.0 * dxb * dxb;
        prop_assert!(lhs <= rhs + 1e-8 * (1.0 + lhs + rhs));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn circumcenter_commutes_with_congruence(seed in any::<u64>(), dim in 1usize..=4, m in 1usize..=6) {
        let mut rng = seeded(seed);
        let points: Vec<SpdPoint> = (0..m).map(|_| SpdPoint::new(random_spd(&mut rng, dim, 20.0))).collect();
        let g = random_invertible(&mut rng, dim, 5.0);
        let moved: Vec<SpdPoint> = points.iter().map(|p| congruence(&g, p).unwrap()).collect();
        let opts = SolverOptions::new(1e-6);
        let here = solve(&PointSet::enclosing(points).unwrap(), &opts).unwrap();
        let there = solve(&PointSet::enclosing(moved).unwrap(), &opts).unwrap();
        let transported = congruence(&g, &here.center).unwrap();
        let gap = distance(&transported, &there.center).unwrap();
        prop_assert!(gap <= here.center_error_bound + there.center_error_bound + 1e-9);
    }

    #[test]
    fn certificates_contain_the_set(seed in any::<u64>(), dim in 1usize..=4, m in 1usize..=8) {
        let mut rng = seeded(seed);
        let points: Vec<SpdPoint> = (0..m).map(|_| SpdPoint::new(random_spd(&mut rng, dim, 50.0))).collect();
        let set = PointSet::enclosing(points.clone()).unwrap();
        let res = solve(&set, &SolverOptions::new(1e-6)).unwrap();
        prop_assert!(res.radius_lower_bound <= res.radius_at_center);
        for p in &points {
            prop_assert!(distance(&res.center, p).unwrap() <= res.radius_at_center + 1e-9);
        }
        // any other candidate is no better certified than its radius allows
        let cert = certify(&points[0], &set).unwrap();
        prop_assert!(cert.radius_at + 1e-12 >= res.radius_lower_bound);
    }

    #[test]
    fn induced_measure_sums_over_targets(seed in any::<u64>(), points in 1usize..=9, k in 1usize..=3) {
        // translation by ℤ/n on ℤ/points needs points | n
        let n = points * k;
        let mut rng = seeded(seed);
        let group = FiniteGroup::cyclic(n);
        let spec = ActionGroupoidSpec::uniform(group, points, |g, x| (g + x) % points).unwrap();
        let g = spec.build().unwrap();
        let subset: Vec<usize> = (0..g.arrow_count()).filter(|_| rand::Rng::random_bool(&mut rng, 0.5)).collect();
        let direct: f64 = subset.iter().map(|&a| g.mu()[g.tgt(a)]).sum();
        prop_assert!((g.nu(&subset) - direct).abs() <= 1e-12);
        prop_assert!((g.nu(&(0..g.arrow_count()).collect::<Vec<_>>()) - n as f64).abs() <= 1e-12);
    }
}
