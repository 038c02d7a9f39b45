mod common;

use common::{assert_close, gauss2, spd2};
use frao::linalg::Matrix;
use frao::spd::{
    hilbert_projective, rho_spd, siegel_cross_ratio, siegel_distance, siegel_embed_gaussian,
    spd_geodesic, whitened_log_eigs, SiegelPoint,
};
use frao::{Error, SpdMatrix};
use proptest::prelude::*;

#[test]
fn cone_distance_matches_diagonal_hand_values() {
    let id = SpdMatrix::identity(2);
    let scaled = SpdMatrix::from_diag(&[std::f64::consts::E.powi(2); 2]).unwrap();
    assert_close(rho_spd(&id, &scaled).unwrap(), 8.0_f64.sqrt(), 1e-12, "e^2 I");

    let d = SpdMatrix::from_diag(&[4.0, 9.0]).unwrap();
    let expected = (4.0_f64.ln().powi(2) + 9.0_f64.ln().powi(2)).sqrt();
    assert_close(rho_spd(&id, &d).unwrap(), expected, 1e-12, "diag(4,9)");

    let p = spd2(2.0, 0.7, 0.7, 1.5);
    assert!(rho_spd(&p, &p).unwrap() < 1e-12);
}

#[test]
fn cone_distance_is_symmetric_and_inversion_invariant() {
    let p = spd2(2.0, 0.7, 0.7, 1.5);
    let q = spd2(1.0, -0.4, -0.4, 3.0);
    let d = rho_spd(&p, &q).unwrap();
    assert_close(rho_spd(&q, &p).unwrap(), d, 1e-12, "symmetry");
    assert_close(
        rho_spd(&p.inverse(), &q.inverse()).unwrap(),
        d,
        1e-10,
        "inversion invariance",
    );
}

#[test]
fn cone_distance_is_congruence_invariant() {
    let p = spd2(2.0, 0.7, 0.7, 1.5);
    let q = spd2(1.0, -0.4, -0.4, 3.0);
    let a = Matrix::new(2, 2, vec![2.0, 1.0, 0.0, 1.0]).unwrap();
    let pa = SpdMatrix::new(p.mat().congruence(&a)).unwrap();
    let qa = SpdMatrix::new(q.mat().congruence(&a)).unwrap();
    assert_close(
        rho_spd(&pa, &qa).unwrap(),
        rho_spd(&p, &q).unwrap(),
        1e-10,
        "congruence invariance",
    );
}

#[test]
fn whitened_log_eigenvalues_are_sorted_and_shaped() {
    let p = spd2(2.0, 0.7, 0.7, 1.5);
    let q = spd2(1.0, -0.4, -0.4, 3.0);
    let logs = whitened_log_eigs(&p, &q).unwrap();
    assert_eq!(logs.len(), 2);
    assert!(logs[0] >= logs[1]);
    let err = whitened_log_eigs(&p, &SpdMatrix::identity(3)).unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch { expected: 2, got: 3 }));
}

#[test]
fn geodesic_hits_its_endpoints_and_midpoint() {
    let p = spd2(2.0, 0.7, 0.7, 1.5);
    let q = spd2(1.0, -0.4, -0.4, 3.0);
    assert!(spd_geodesic(&p, &q, 0.0).unwrap().mat().max_abs_diff(p.mat()) < 1e-12);
    assert!(spd_geodesic(&p, &q, 1.0).unwrap().mat().max_abs_diff(q.mat()) < 1e-12);

    let mid = spd_geodesic(&p, &q, 0.5).unwrap();
    let total = rho_spd(&p, &q).unwrap();
    assert_close(rho_spd(&p, &mid).unwrap(), 0.5 * total, 1e-10, "first half");
    assert_close(rho_spd(&mid, &q).unwrap(), 0.5 * total, 1e-10, "second half");
}

#[test]
fn geodesic_extrapolates_linearly_in_arc_length() {
    let p = spd2(2.0, 0.7, 0.7, 1.5);
    let q = spd2(1.0, -0.4, -0.4, 3.0);
    let total = rho_spd(&p, &q).unwrap();
    let doubled = spd_geodesic(&p, &q, 2.0).unwrap();
    assert_close(rho_spd(&p, &doubled).unwrap(), 2.0 * total, 1e-9, "t = 2");
    let behind = spd_geodesic(&p, &q, -1.0).unwrap();
    assert_close(rho_spd(&p, &behind).unwrap(), total, 1e-10, "t = -1");
}

#[test]
fn geodesic_between_commuting_matrices_is_elementwise() {
    let p = SpdMatrix::from_diag(&[1.0, 4.0]).unwrap();
    let q = SpdMatrix::from_diag(&[9.0, 16.0]).unwrap();
    let mid = spd_geodesic(&p, &q, 0.5).unwrap();
    assert!(mid.mat().max_abs_diff(&Matrix::from_diag(&[3.0, 8.0])) < 1e-12);
}

#[test]
fn log_determinant_is_linear_along_the_geodesic() {
    let p = spd2(2.0, 0.7, 0.7, 1.5);
    let q = spd2(1.0, -0.4, -0.4, 3.0);
    for t in [0.2, 0.3, 0.75] {
        let pt = spd_geodesic(&p, &q, t).unwrap();
        assert_close(
            pt.log_det(),
            (1.0 - t) * p.log_det() + t * q.log_det(),
            1e-11,
            "log-det interpolation",
        );
    }
}

#[test]
fn hilbert_distance_ignores_positive_scaling() {
    let p = spd2(2.0, 0.7, 0.7, 1.5);
    let q = spd2(1.0, -0.4, -0.4, 3.0);
    assert!(hilbert_projective(&p, &p).unwrap().abs() < 1e-12);
    assert_close(
        hilbert_projective(&SpdMatrix::identity(2), &SpdMatrix::from_diag(&[4.0, 9.0]).unwrap())
            .unwrap(),
        (9.0f64 / 4.0).ln(),
        1e-12,
        "diagonal ratio",
    );
    let d = hilbert_projective(&p, &q).unwrap();
    assert_close(
        hilbert_projective(&p, &q.scale_spd(3.7)).unwrap(),
        d,
        1e-11,
        "scaling the second argument",
    );
    assert_close(
        hilbert_projective(&p.scale_spd(0.2), &q).unwrap(),
        d,
        1e-11,
        "scaling the first argument",
    );
}

// ---------------------------------------------------------------------------
// Siegel upper half-space
// ---------------------------------------------------------------------------

#[test]
fn siegel_points_validate_their_parts() {
    let bad_x = Matrix::new(2, 2, vec![0.0, 1.0, -1.0, 0.0]).unwrap();
    assert!(matches!(
        SiegelPoint::new(bad_x, SpdMatrix::identity(2)),
        Err(Error::NotSymmetric { .. })
    ));
    let tall_x = Matrix::zeros(3, 3);
    assert!(matches!(
        SiegelPoint::new(tall_x, SpdMatrix::identity(2)),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn gaussian_embedding_uses_second_moment_and_covariance() {
    let n = gauss2(1.0, 2.0, 1.5, 0.3, 0.3, 0.8);
    let z = siegel_embed_gaussian(&n);
    assert!(z.x().max_abs_diff(&Matrix::new(2, 2, vec![1.0, 2.0, 2.0, 4.0]).unwrap()) < 1e-15);
    assert!(z.y().mat().max_abs_diff(n.cov().mat()) < 1e-15);
}

#[test]
fn cross_ratio_of_a_point_with_itself_vanishes() {
    let z = SiegelPoint::new(
        Matrix::new(2, 2, vec![0.5, 0.1, 0.1, -0.2]).unwrap(),
        spd2(2.0, 0.7, 0.7, 1.5),
    )
    .unwrap();
    let r = siegel_cross_ratio(&z, &z).unwrap();
    assert!(r.re.max_abs() < 1e-14);
    assert!(r.im.max_abs() < 1e-14);
    assert_eq!(siegel_distance(&z, &z).unwrap(), 0.0);
}

#[test]
fn scalar_siegel_distance_is_the_log_ratio_of_scales() {
    let z1 = SiegelPoint::imaginary(SpdMatrix::from_diag(&[2.0]).unwrap());
    let z2 = SiegelPoint::imaginary(SpdMatrix::from_diag(&[5.0]).unwrap());
    assert_close(
        siegel_distance(&z1, &z2).unwrap(),
        (5.0f64 / 2.0).ln(),
        1e-12,
        "imaginary axis",
    );
    // a shared real part translates away
    let x = Matrix::new(1, 1, vec![1.3]).unwrap();
    let w1 = SiegelPoint::new(x.clone(), SpdMatrix::from_diag(&[2.0]).unwrap()).unwrap();
    let w2 = SiegelPoint::new(x, SpdMatrix::from_diag(&[5.0]).unwrap()).unwrap();
    assert_close(
        siegel_distance(&w1, &w2).unwrap(),
        (5.0f64 / 2.0).ln(),
        1e-12,
        "translated",
    );
}

#[test]
fn imaginary_siegel_points_recover_the_cone_distance() {
    let p = spd2(2.0, 0.7, 0.7, 1.5);
    let q = spd2(1.0, -0.4, -0.4, 3.0);
    assert_close(
        siegel_distance(&SiegelPoint::imaginary(p.clone()), &SiegelPoint::imaginary(q.clone()))
            .unwrap(),
        rho_spd(&p, &q).unwrap(),
        1e-9,
        "pure imaginary block",
    );
}

#[test]
fn siegel_distance_is_symmetric() {
    let z1 = SiegelPoint::new(
        Matrix::new(2, 2, vec![0.5, 0.1, 0.1, -0.2]).unwrap(),
        spd2(2.0, 0.7, 0.7, 1.5),
    )
    .unwrap();
    let z2 = SiegelPoint::new(
        Matrix::new(2, 2, vec![-0.3, 0.4, 0.4, 0.9]).unwrap(),
        spd2(1.0, -0.4, -0.4, 3.0),
    )
    .unwrap();
    let d12 = siegel_distance(&z1, &z2).unwrap();
    let d21 = siegel_distance(&z2, &z1).unwrap();
    assert_close(d21, d12, 1e-10, "symmetry");
    assert!(d12 > 0.0);
}

#[test]
fn same_mean_gaussians_embed_at_the_cone_distance() {
    // equal rank-one real parts translate away, leaving the covariance cone
    let n1 = gauss2(1.0, 2.0, 2.0, 0.7, 0.7, 1.5);
    let n2 = gauss2(1.0, 2.0, 1.0, -0.4, -0.4, 3.0);
    assert_close(
        siegel_distance(&siegel_embed_gaussian(&n1), &siegel_embed_gaussian(&n2)).unwrap(),
        rho_spd(n1.cov(), n2.cov()).unwrap(),
        1e-8,
        "same-mean pair",
    );
}

// ---------------------------------------------------------------------------
// randomized metric axioms
// ---------------------------------------------------------------------------

fn spd_strategy(d: usize) -> impl Strategy<Value = SpdMatrix> {
    proptest::collection::vec(-1.0..1.0f64, d * d).prop_map(move |c| {
        let l = Matrix::from_fn(d, d, |i, j| {
            if j > i {
                0.0
            } else if i == j {
                0.5 + 1.5 * c[i * d + j].abs()
            } else {
                c[i * d + j]
            }
        });
        SpdMatrix::new(&l * &l.transpose()).unwrap()
    })
}

proptest! {
    #[test]
    fn cone_distance_satisfies_the_metric_axioms(
        p in spd_strategy(3),
        q in spd_strategy(3),
        r in spd_strategy(3),
    ) {
        let dpq = rho_spd(&p, &q).unwrap();
        let dqp = rho_spd(&q, &p).unwrap();
        prop_assert!((dpq - dqp).abs() <= 1e-9 * (1.0 + dpq));
        prop_assert!(rho_spd(&p, &p).unwrap() <= 1e-12);
        let dpr = rho_spd(&p, &r).unwrap();
        let drq = rho_spd(&r, &q).unwrap();
        prop_assert!(dpq <= dpr + drq + 1e-9);
    }

    #[test]
    fn geodesic_points_stay_on_the_metric_segment(
        p in spd_strategy(2),
        q in spd_strategy(2),
        t in 0.0..1.0f64,
    ) {
        let pt = spd_geodesic(&p, &q, t).unwrap();
        let total = rho_spd(&p, &q).unwrap();
        prop_assert!((rho_spd(&p, &pt).unwrap() - t * total).abs() <= 1e-8 * (1.0 + total));
        prop_assert!((rho_spd(&pt, &q).unwrap() - (1.0 - t) * total).abs() <= 1e-8 * (1.0 + total));
    }
}
