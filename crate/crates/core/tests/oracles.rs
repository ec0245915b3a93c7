//! Frozen reference values computed independently (scipy `expm`, direct
//! trace of ad products) and pasted as literals.

use cskit_core::groups::GroupId;
use cskit_core::isomaps::rot3;
use cskit_core::lie::builtin;
use cskit_core::linalg::Mat;
use cskit_core::metrics::{lambdas, odd_case_spectrum, so31_metric};
use cskit_core::quat::{QuatAlgebra, Quaternion};
use cskit_core::screws::{screw_decompose, twist_exp, Space, Twist};
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_2_PI, PI};

fn close(a: &Mat<f64>, rows: &[[f64; 4]], tol: f64) {
    let b = Mat::from_rows(rows);
    assert!(a.dist(&b) < tol, "{a:?}");
}

#[test]
fn killing_forms() {
    let k = builtin::so3::<f64>().killing_form();
    assert!(k.matrix().dist(&Mat::from_diag(&[-2.0, -2.0, -2.0])) < 1e-14);
    for alg in [builtin::sl2::<f64>(), builtin::so21()] {
        assert!(alg.killing_form().matrix().dist(&Mat::from_diag(&[-1.0, 1.0, 1.0])) < 1e-13);
    }
    let want = Mat::from_diag(&[1.0, 1.0, 1.0, -1.0, -1.0, -1.0]);
    assert!(so31_metric(1.0, 0.0).unwrap().matrix().dist(&want) < 1e-14);
}

#[test]
fn structural_dimensions() {
    assert_eq!(builtin::so3::<f64>().centralizer_basis().len(), 1);
    assert_eq!(builtin::sl2::<f64>().centralizer_basis().len(), 1);
    assert_eq!(builtin::so31::<f64>().centralizer_basis().len(), 2);
    assert_eq!(builtin::so31::<f64>().derived_dim(), 6);
    assert_eq!(builtin::heisenberg::<f64>().derived_dim(), 1);
}

#[test]
fn golden_spectrum() {
    let (l1, l2) = lambdas(1.0f64, 1.0);
    assert_eq!(l1, -0.6180339887498949);
    assert_eq!(l2, 1.618033988749895);
    let spectrum = odd_case_spectrum(1.0f64, 1.0, 3, 3);
    let want = [
        -1.618033988749895,
        -1.618033988749895,
        -1.618033988749895,
        0.6180339887498949,
        0.6180339887498949,
        0.6180339887498949,
    ];
    for (a, b) in spectrum.iter().zip(want) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn quarter_turn_quaternion() {
    let q = Quaternion::new(FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2);
    let r = rot3(&q).unwrap();
    let want = Mat::from_rows(&[[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
    assert!(r.matrix().dist(&want) < 1e-15);
    assert!((q.norm2() - 1.0).abs() < 1e-15);
}

#[test]
fn euclidean_exponentials() {
    let g = twist_exp(
        &Twist::new([0.0, 0.0, PI / 2.0], [1.0, 0.0, 0.0], Space::Euclidean),
        1.0,
    )
    .unwrap();
    close(
        g.matrix(),
        &[
            [0.0, -1.0, 0.0, FRAC_2_PI],
            [1.0, 0.0, 0.0, FRAC_2_PI],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
        1e-14,
    );
    let g = twist_exp(&Twist::new([0.3, -0.2, 0.5], [0.1, 0.4, -0.6], Space::Euclidean), 1.7).unwrap();
    close(
        g.matrix(),
        &[
            [
                0.6179233890256144,
                -0.7817948055086252,
                -0.08347195561881873,
                -0.04622960480087479,
            ],
            [
                0.6236941388985346,
                0.55204811127141,
                -0.5533972388305569,
                0.9194738919887802,
            ],
            [
                0.4787236221440452,
                0.28989612781373914,
                0.8287242778390685,
                -0.794472680323963,
            ],
            [0.0, 0.0, 0.0, 1.0],
        ],
        1e-13,
    );
}

#[test]
fn minkowski_exponentials() {
    let g = twist_exp(&Twist::new([0.0, 0.0, 0.8], [1.0, -0.5, 2.0], Space::Minkowski), 1.0).unwrap();
    assert_eq!(g.group(), GroupId::SE21);
    close(
        g.matrix(),
        &[
            [1.3374349463048447, 0.8881059821876232, 0.0, 0.8992356362940009],
            [0.8881059821876232, 1.3374349463048447, 0.0, -0.13327255598620857],
            [0.0, 0.0, 1.0, 2.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
        1e-13,
    );
    let g = twist_exp(&Twist::new([0.7, 0.0, 0.0], [0.0, 0.3, 0.0], Space::Minkowski), 1.0).unwrap();
    close(
        g.matrix(),
        &[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.7648421872844884, -0.6442176872376911, 0.27609329453043907],
            [0.0, 0.644217687237691, 0.7648421872844884, 0.10078191973521926],
            [0.0, 0.0, 0.0, 1.0],
        ],
        1e-13,
    );
}

#[test]
fn quarter_turn_screw() {
    let g = twist_exp(
        &Twist::new([0.0, 0.0, PI / 2.0], [1.0, 0.0, 0.0], Space::Euclidean),
        1.0,
    )
    .unwrap();
    let s = screw_decompose(&g).unwrap();
    assert!(!s.pure_translation);
    assert!((s.angle - PI / 2.0).abs() < 1e-14);
    assert!(s.pitch.abs() < 1e-14);
    assert!(s.displacement.abs() < 1e-14);
    let want = [[0.0, 0.0, 1.0], [0.0, FRAC_2_PI, 0.0]];
    for (got, want) in [s.axis_dir, s.axis_point].iter().zip(want) {
        for i in 0..3 {
            assert!((got[i] - want[i]).abs() < 1e-14, "{s:?}");
        }
    }
}
