//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always print. Exits
//! nonzero if any criterion fails, except the clauses listed in
//! `UNATTAINABLE`, which are printed red and checked to be impossible.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cskit_core::check::{printed_j, screw_geodesic_sweep, COVER_MAPS};
use cskit_core::groups::{GroupElement, GroupId};
use cskit_core::isomaps::{hom_residual, map_by_name, pi_cover, psi_element, rot21, rot3};
use cskit_core::lie::builtin;
use cskit_core::linalg::Mat;
use cskit_core::metrics::{
    cotangent_metric, eigenvalues, h3_left_frame, h3_metric, invariant_form_det_scan, killing_normal_cotangent_frame,
    odd_case_spectrum, parallelism_residual, signature, CotangentMetricParams, H3MetricParams,
};
use cskit_core::quat::{DualOf, QuatAlgebra, Quaternion, SplitQuaternion};
use cskit_core::sampling::{self, trial_rng};
use cskit_core::screws::{linspace, riemannian_obstruction_scan, Space};
use rand::Rng;

const SEED: u64 = 20;

// tolerances as stated in the criteria
const KILLING_TOL: f64 = 1e-12;
const J_TOL: f64 = 1e-10;
const SPECTRUM_TOL: f64 = 1e-10;
const PARALLEL_TOL: f64 = 1e-6;
const PARALLEL_STEP: f64 = 1e-5;
const DOUBLED_MIN: f64 = 1e-3;
const DET_SCAN_TOL: f64 = 1e-12;
const COVER_TOL: f64 = 1e-12;
const HOM_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-12;
const GEODESIC_TOL: f64 = 1e-4;
const PERTURBED_MIN: f64 = 1e-2;

/// Clauses that cannot hold; see the README.
const UNATTAINABLE: &[&str] = &["2b"];

struct Line {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn timed(id: &'static str, title: &'static str, budget_s: u64, f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (passed, detail) = f();
    Line {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget_s),
    }
}

fn c1() -> (bool, String) {
    let so31 = builtin::so31::<f64>().killing_form();
    let want = Mat::from_diag(&[4.0, 4.0, 4.0, -4.0, -4.0, -4.0]);
    let a = so31.matrix().dist(&want);
    let b = builtin::sl2::<f64>()
        .killing_form()
        .matrix()
        .dist(&Mat::from_diag(&[-1.0, 1.0, 1.0]));
    (a < KILLING_TOL && b < KILLING_TOL, format!("so31 {a:.3e}, sl2 {b:.3e}"))
}

fn c2a() -> (bool, String) {
    let mut dims = Vec::new();
    for name in ["so3", "su2", "sl2", "so21", "so31"] {
        dims.push(builtin::by_name::<f64>(name).unwrap().centralizer_basis().len());
    }
    let g = builtin::so31::<f64>();
    let j = g.complex_structure_j().unwrap();
    let jm = j.matrix();
    let sq = (&(jm * jm) + &Mat::identity(6)).max_abs();
    let pattern = jm.map(f64::abs).dist(&printed_j().map(f64::abs));
    let ok = dims == [1, 1, 1, 1, 2] && sq < J_TOL && pattern < J_TOL;
    (
        ok,
        format!("dims {dims:?}, |J^2+I| {sq:.3e}, |J| pattern {pattern:.3e}"),
    )
}

/// The printed J literally, up to sign.
fn c2b() -> (bool, String) {
    let jm = builtin::so31::<f64>().complex_structure_j().unwrap().matrix().clone();
    let p = printed_j();
    let d = jm.dist(&p).min(jm.dist(&p.scale(-1.0)));
    let printed_sq = (&p * &p).dist(&Mat::identity(6));
    (
        d < J_TOL,
        format!(
            "distance to +-printed J {d:.3e}; printed matrix is symmetric with square = +I (|P^2-I| {printed_sq:.1e})"
        ),
    )
}

fn unattainable_2b() -> bool {
    let p = printed_j();
    p == p.transpose() && (&p * &p).dist(&Mat::identity(6)) == 0.0
}

fn c3() -> (bool, String) {
    let mut rng = trial_rng(SEED, 3);
    let mut spread: f64 = 0.0;
    let mut bad = 0;
    for name in ["so3", "su2", "sl2", "so21"] {
        let g = builtin::by_name::<f64>(name).unwrap();
        let (frame, p) = killing_normal_cotangent_frame(&g).unwrap();
        for _ in 0..50 {
            let s = rng.gen_range(-3.0..3.0);
            let t = rng.gen_range(0.1..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let mu = cotangent_metric(&g, CotangentMetricParams::Odd { s, t }, None).unwrap();
            let sig = signature(&mu);
            bad += usize::from((sig.neg, sig.pos, sig.zero) != (3, 3, 0));
            let ev = eigenvalues(&mu.change_basis(&frame));
            for (a, b) in ev.iter().zip(odd_case_spectrum(s, t, p, 3)) {
                spread = spread.max((a - b).abs());
            }
        }
    }
    let g = builtin::so31::<f64>();
    let j = g.complex_structure_j().unwrap();
    let mut bad_even = 0;
    for _ in 0..50 {
        let v = sampling::uniform_vec::<f64, _>(&mut rng, 4, -2.0, 2.0);
        let params = CotangentMetricParams::Even {
            s1: v[0],
            s2: v[1],
            t1: v[2],
            t2: v[3],
        };
        let sig = signature(&cotangent_metric(&g, params, Some(&j)).unwrap());
        bad_even += usize::from((sig.neg, sig.pos, sig.zero) != (6, 6, 0));
    }
    (
        bad == 0 && bad_even == 0 && spread < SPECTRUM_TOL,
        format!("odd not (3,3): {bad}/200, spectrum dev {spread:.3e}, even not (6,6): {bad_even}/50"),
    )
}

fn c4() -> (bool, String) {
    let mut rng = trial_rng(SEED, 4);
    let alg = builtin::heisenberg::<f64>();
    let (mut res, mut doubled): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let f = h3_metric(H3MetricParams::sample(&mut rng)).unwrap();
        let pts: Vec<Vec<f64>> = (0..100)
            .map(|_| sampling::uniform_vec(&mut rng, 3, -2.0, 2.0))
            .collect();
        res = res.max(parallelism_residual(&f, &alg, &h3_left_frame, &pts, PARALLEL_STEP));
        doubled = doubled.max(parallelism_residual(
            &f.scaled_entry(0, 1, 2.0),
            &alg,
            &h3_left_frame,
            &pts,
            PARALLEL_STEP,
        ));
    }
    (
        res < PARALLEL_TOL && doubled > DOUBLED_MIN,
        format!("residual {res:.3e}, doubled dxdy {doubled:.3e}"),
    )
}

fn c5() -> (bool, String) {
    let mut rng = trial_rng(SEED, 5);
    let (dim, det) = invariant_form_det_scan(&builtin::heisenberg::<f64>(), 5000, &mut rng);
    (
        dim > 0 && det < DET_SCAN_TOL,
        format!("{dim}-dim invariant space, max |det| {det:.3e}"),
    )
}

fn c6() -> (bool, String) {
    let mut rng = trial_rng(SEED, 6);
    let (mut orth, mut adpsi): (f64, f64) = (0.0, 0.0);
    let mut stray = 0;
    let near_id = |g: &GroupElement<f64>| g.dist(&GroupElement::identity(g.group())) < 1e-6;
    let trivial = |w: f64| (w.abs() - 1.0).abs() < 1e-6;
    for _ in 0..1000 {
        let q: Quaternion<f64> = sampling::unit_quaternion(&mut rng);
        let r = rot3(&q).unwrap();
        let m = r.matrix();
        orth = orth.max((&(&m.transpose() * m) - &Mat::identity(3)).max_abs());
        adpsi = adpsi.max(psi_element(&q).unwrap().adjoint_rep().0.dist(m));
        let s: SplitQuaternion<f64> = sampling::unit_split_quaternion(&mut rng);
        stray += usize::from(near_id(&r) && !trivial(q.w));
        stray += usize::from(near_id(&rot21(&s).unwrap()) && !trivial(s.w));
        let d = sampling::unit_dual_quaternion::<f64, _>(&mut rng);
        stray += usize::from(near_id(&pi_cover(&d).unwrap()) && !trivial(d.re.w));
    }
    let mut kernel: f64 = 0.0;
    for sign in [1.0, -1.0] {
        kernel = kernel.max(
            rot3(&Quaternion::real(sign))
                .unwrap()
                .dist(&GroupElement::identity(GroupId::SO3)),
        );
        kernel = kernel.max(
            rot21(&SplitQuaternion::real(sign))
                .unwrap()
                .dist(&GroupElement::identity(GroupId::SO21)),
        );
        let d = DualOf::new(Quaternion::real(sign), Quaternion::zero());
        kernel = kernel.max(pi_cover(&d).unwrap().dist(&GroupElement::identity(GroupId::SE3)));
    }
    let mut worst_hom: f64 = 0.0;
    let mut worst_name = "";
    for name in COVER_MAPS {
        let r = hom_residual(map_by_name(name).unwrap().as_ref(), 500, SEED);
        if r >= worst_hom {
            worst_hom = r;
            worst_name = name;
        }
    }
    let ok = orth < COVER_TOL && adpsi < COVER_TOL && kernel == 0.0 && stray == 0 && worst_hom < HOM_TOL;
    (
        ok,
        format!("orth {orth:.3e}, Ad psi vs rot3 {adpsi:.3e}, kernel {kernel:.1e}, stray {stray}, worst hom {worst_hom:.3e} ({worst_name})"),
    )
}

fn c7() -> (bool, String) {
    fn run<Q>(rng: &mut rand_chacha::ChaCha8Rng) -> f64
    where
        Q: QuatAlgebra<f64> + Copy + std::ops::Mul<Output = Q> + std::ops::Add<Output = Q>,
    {
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            let mut draw = || {
                DualOf::new(
                    sampling::any_quat::<f64, Q, _>(rng),
                    sampling::any_quat::<f64, Q, _>(rng),
                )
            };
            let (a, b) = (draw(), draw());
            let lhs = (a * b).norm2();
            let rhs = a.norm2() * b.norm2();
            worst = worst.max((lhs.re - rhs.re).abs()).max((lhs.du - rhs.du).abs());
        }
        worst
    }
    let mut rng = trial_rng(SEED, 7);
    let a = run::<Quaternion<f64>>(&mut rng);
    let b = run::<SplitQuaternion<f64>>(&mut rng);
    (
        a < NORM_TOL && b < NORM_TOL,
        format!("dual quaternion {a:.3e}, dual split {b:.3e}"),
    )
}

fn c8() -> (bool, String) {
    let mut parts = Vec::new();
    let mut ok = true;
    for space in Space::ALL {
        let mut rng = trial_rng(SEED, 8);
        let (good, bad) = screw_geodesic_sweep(space, 20, 5, &mut rng).unwrap();
        ok &= good < GEODESIC_TOL && bad > PERTURBED_MIN;
        parts.push(format!("{space}: {good:.3e}, perturbed {bad:.3e}"));
    }
    (ok, parts.join("; "))
}

fn c9() -> (bool, String) {
    let ss = linspace(-5.0, 5.0, 10);
    let ts = linspace(0.1, 5.0, 10);
    let mut parts = Vec::new();
    let mut ok = true;
    for space in Space::ALL {
        let rep = riemannian_obstruction_scan(space, &ss, &ts).unwrap();
        let all = rep.signatures.iter().all(|s| s.neg == 3 && s.pos == 3);
        ok &= all && rep.min_neg == 3;
        parts.push(format!(
            "{space}: min neg {} over {} points",
            rep.min_neg,
            rep.grid.len()
        ));
    }
    (ok, parts.join("; "))
}

fn c10() -> (bool, String) {
    let mut dims = Vec::new();
    let mut ok = true;
    for name in builtin::SIMPLE {
        let g = builtin::by_name::<f64>(name).unwrap();
        let d = g.cotangent_algebra().derived_dim();
        ok &= d == 2 * g.dim();
        dims.push(format!("{name} {d}"));
    }
    let h = builtin::heisenberg::<f64>().derived_dim();
    ok &= h == 1;
    (ok, format!("{}, h3 {h}", dims.join(", ")))
}

fn main() -> ExitCode {
    let lines = vec![
        timed("1", "Killing matrices", 1, c1),
        timed("2a", "Centralizer dimensions and J", 1, c2a),
        timed("2b", "J equals the printed matrix", 1, c2b),
        timed("3", "Cotangent metric signatures", 5, c3),
        timed("4", "Heisenberg parallelism", 5, c4),
        timed("5", "No biinvariant metric on H3", 1, c5),
        timed("6", "Cover identities", 10, c6),
        timed("7", "Norm multiplicativity", 1, c7),
        timed("8", "Screw geodesics", 60, c8),
        timed("9", "Riemannian obstruction", 5, c9),
        timed("10", "Perfectness", 1, c10),
    ];
    let mut failed = 0;
    for l in &lines {
        let in_time = l.elapsed <= l.budget;
        let pass = l.passed && in_time;
        let known = UNATTAINABLE.contains(&l.id);
        println!(
            "criterion {:<3} {} {} [{:.2}s / {}s] {}",
            l.id,
            if pass {
                "PASS"
            } else if known {
                "FAIL (unattainable)"
            } else {
                "FAIL"
            },
            l.title,
            l.elapsed.as_secs_f64(),
            l.budget.as_secs(),
            l.detail
        );
        if !pass && !known {
            failed += 1;
        }
        if known && !pass && !unattainable_2b() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all attainable criteria passed");
        ExitCode::SUCCESS
    }
}
