mod common;

use std::f64::consts::PI;

use common::*;
use numrange::linalg::{hausdorff_distance, hermitian_eigs, ConvexPolygon};
use numrange::numrange::{elliptical_range, numerical_range};
use numrange::shift::{
    dilation_eigenvalues, numrange_via_dilations, sb_matrix, unitary_dilation, BlaschkeProduct,
};
use numrange::{CMatrix, Complex64};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn compressed_shift_is_a_contraction_with_rank_one_defect() {
    let mut rng = rng(301);
    for n in 1..=6 {
        let zeros: Vec<Complex64> = (0..n).map(|_| disk_point(&mut rng, 0.9)).collect();
        let s = sb_matrix(&zeros).unwrap();
        for (k, z) in zeros.iter().enumerate() {
            assert_eq!(s[(k, k)], *z);
        }
        let defect = &CMatrix::identity(n) - &(&s.adjoint() * &s);
        let eig = hermitian_eigs(&defect).unwrap();
        for v in &eig.values[..n - 1] {
            assert!(v.abs() < 1e-12, "n = {n}: {:?}", eig.values);
        }
        assert!(eig.max_value() > 0.0 && eig.max_value() <= 1.0 + 1e-12);
    }
}

#[test]
fn dilation_eigenvalue_power_sums_match_traces() {
    let mut rng = rng(302);
    for n in 1..=5 {
        let zeros: Vec<Complex64> = (0..n).map(|_| disk_point(&mut rng, 0.85)).collect();
        let lambda = unimodular(&mut rng);
        let u = unitary_dilation(&zeros, lambda).unwrap().matrix;
        let mu = dilation_eigenvalues(&zeros, lambda).unwrap();
        let mut uk = CMatrix::identity(n + 1);
        for k in 1..=n + 1 {
            uk = &uk * &u;
            let sum: Complex64 = mu.iter().map(|m| m.powi(k as i32)).sum();
            assert!((uk.trace() - sum).norm() < 1e-9, "n = {n}, k = {k}");
        }
    }
}

#[test]
fn blaschke_winds_n_times_with_unit_modulus() {
    let b = BlaschkeProduct::new(vec![
        Complex64::new(0.3, 0.4),
        Complex64::new(-0.6, 0.0),
        Complex64::new(0.0, -0.2),
    ])
    .unwrap();
    for t in grid(64) {
        assert!((b.eval(Complex64::from_polar(1.0, t)).unwrap().norm() - 1.0).abs() < 1e-12);
    }
    let args = b.boundary_argument(2048).unwrap();
    // Continue the branch one step further, back to t = 2π.
    let last = args[args.len() - 1];
    let end = args[0] + 2.0 * PI * ((last - args[0]) / (2.0 * PI)).round();
    let total = end - args[0];
    assert!((total - 6.0 * PI).abs() < 1e-6, "winding {total}");
}

#[test]
fn repeated_zero_at_origin_gives_jordan_disk() {
    for n in 1..=6 {
        let w = numrange_via_dilations(&vec![Complex64::new(0.0, 0.0); n], 720).unwrap();
        let r = (PI / (n as f64 + 1.0)).cos();
        let disk = ConvexPolygon::regular(Complex64::new(0.0, 0.0), r, 4000, 0.0);
        assert!(hausdorff_distance(&w, &disk).unwrap() < 1e-3, "n = {n}");
    }
}

#[test]
fn two_zeros_match_the_elliptical_range() {
    let mut rng = rng(303);
    for _ in 0..5 {
        let zeros = vec![disk_point(&mut rng, 0.8), disk_point(&mut rng, 0.8)];
        let e = elliptical_range(&sb_matrix(&zeros).unwrap()).unwrap();
        let expected = ((1.0 - zeros[0].norm_sqr()) * (1.0 - zeros[1].norm_sqr())).sqrt();
        assert!((e.minor_axis - expected).abs() < 1e-12);
        let w = numrange_via_dilations(&zeros, 720).unwrap();
        assert!(hausdorff_distance(&w, &e.boundary_polygon(4000)).unwrap() < 5e-3);
    }
}

#[test]
fn dilation_intersections_converge_monotonically() {
    let zeros = vec![Complex64::new(0.5, 0.1), Complex64::new(-0.3, 0.6), Complex64::new(0.0, -0.7)];
    let counts = [45, 90, 180, 360];
    let polys: Vec<ConvexPolygon> = counts.iter().map(|&k| numrange_via_dilations(&zeros, k).unwrap()).collect();
    let twice: Vec<ConvexPolygon> = counts.iter().map(|&k| numrange_via_dilations(&zeros, 2 * k).unwrap()).collect();
    let diffs: Vec<f64> = polys.iter().zip(&twice).map(|(a, b)| hausdorff_distance(a, b).unwrap()).collect();
    for w in diffs.windows(2) {
        assert!(w[1] < w[0], "{diffs:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn intersection_contains_the_numerical_range(seed in 0u64..100_000) {
        let mut rng = rng(seed);
        let n = rng.gen_range(1..=4);
        let zeros: Vec<Complex64> = (0..n).map(|_| disk_point(&mut rng, 0.8)).collect();
        let w = numrange_via_dilations(&zeros, 90).unwrap();
        let inner = numerical_range(&sb_matrix(&zeros).unwrap(), 90).unwrap().inner;
        for &v in inner.vertices() {
            prop_assert!(w.signed_distance(v).unwrap() >= -1e-8);
        }
    }

    #[test]
    fn dilations_are_unitary(seed in 0u64..100_000) {
        let mut rng = rng(seed);
        let n = rng.gen_range(1..=6);
        let zeros: Vec<Complex64> = (0..n).map(|_| disk_point(&mut rng, 0.95)).collect();
        let u = unitary_dilation(&zeros, unimodular(&mut rng)).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-10);
        let s = sb_matrix(&zeros).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(u.matrix[(i, j)], s[(i, j)]);
            }
        }
    }
}
