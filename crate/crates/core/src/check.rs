//! Property suites behind `cskit check`: every check is a named scalar
//! compared against a threshold, seeded and run in a fixed order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{sample_element, GroupElement, GroupId};
use crate::isomaps::{hom_residual, map_by_name, pi_cover, psi_element, rot21, rot3, MAP_NAMES};
use crate::lie::builtin;
use crate::linalg::Mat;
use crate::metrics::{
    cotangent_metric, eigenvalues, h3_left_frame, h3_metric, invariant_form_det_scan, k_j_form,
    killing_normal_cotangent_frame, odd_case_spectrum, parallelism_residual, signature, so31_metric,
    CotangentMetricParams, H3MetricParams,
};
use crate::quat::{DualOf, DualQuaternion, DualSplitQuaternion, QuatAlgebra, Quaternion, SplitQuaternion};
use crate::sampling::{self, trial_rng};
use crate::screws::{
    geodesic_residual, geodesic_sample, linspace, riemannian_obstruction_scan, screw_decompose, screw_metric,
    twist_exp, twist_metric, Space, Twist,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Algebra,
    Quat,
    Covers,
    Metrics,
    Screws,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Algebra,
        Suite::Quat,
        Suite::Covers,
        Suite::Metrics,
        Suite::Screws,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Quat => "quat",
            Suite::Covers => "covers",
            Suite::Metrics => "metrics",
            Suite::Screws => "screws",
        }
    }

    /// Parses a suite name; `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Suite::ALL.to_vec());
        }
        Ok(vec![s.parse()?])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(format!("suite {s}")))
    }
}

/// How a check value is judged against its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cmp {
    Below,
    Above,
    Equal,
}

impl Cmp {
    fn symbol(self) -> &'static str {
        match self {
            Cmp::Below => "<",
            Cmp::Above => ">",
            Cmp::Equal => "==",
        }
    }

    fn holds(self, value: f64, threshold: f64) -> bool {
        match self {
            Cmp::Below => value < threshold,
            Cmp::Above => value > threshold,
            Cmp::Equal => value == threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub value: f64,
    pub cmp: Cmp,
    pub threshold: f64,
    pub passed: bool,
}

impl Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Seed, trial count and tolerance overrides.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CheckConfig {
    pub seed: u64,
    /// Replaces each check's default sample count when set.
    pub trials: Option<usize>,
    /// Keyed by check name (`metrics.h3_parallelism`), suite name or `*`.
    pub overrides: BTreeMap<String, f64>,
}

impl CheckConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    /// Adds an override; tolerances must be positive and finite.
    pub fn with_override(mut self, key: &str, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Parse(format!("tolerance for {key} must be positive, got {tol}")));
        }
        self.overrides.insert(key.to_string(), tol);
        Ok(self)
    }

    fn threshold(&self, suite: Suite, name: &str, default: f64) -> f64 {
        self.overrides
            .get(name)
            .or_else(|| self.overrides.get(suite.name()))
            .or_else(|| self.overrides.get("*"))
            .copied()
            .unwrap_or(default)
    }

    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default).max(1)
    }
}

struct Ctx<'a> {
    cfg: &'a CheckConfig,
    suite: Suite,
    out: Vec<CheckResult>,
    stream: u64,
}

impl Ctx<'_> {
    /// A fresh generator per check, so checks do not share draws.
    fn rng(&mut self) -> ChaCha8Rng {
        self.stream += 1;
        trial_rng(self.cfg.seed, (self.suite as u64) << 32 | self.stream)
    }

    fn push(&mut self, name: &str, value: f64, cmp: Cmp, default: f64) {
        let full = format!("{}.{}", self.suite.name(), name);
        // exact-count checks are not tolerances
        let threshold = if cmp == Cmp::Equal {
            default
        } else {
            self.cfg.threshold(self.suite, &full, default)
        };
        self.out.push(CheckResult {
            suite: self.suite,
            passed: cmp.holds(value, threshold),
            name: full,
            value,
            cmp,
            threshold,
        });
    }

    fn below(&mut self, name: &str, value: f64, tol: f64) {
        self.push(name, value, Cmp::Below, tol);
    }

    fn above(&mut self, name: &str, value: f64, tol: f64) {
        self.push(name, value, Cmp::Above, tol);
    }

    fn count(&mut self, name: &str, got: usize, want: usize) {
        self.push(name, got as f64, Cmp::Equal, want as f64);
    }
}

/// Results of one or more suites, in suite order.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({"seed": self.seed, "passed": self.passed(), "results": self.results})
    }

    /// One line per check, values to 12 significant digits.
    pub fn to_text(&self) -> String {
        let mut s = format!("seed {}\n", self.seed);
        for r in &self.results {
            s.push_str(&format!(
                "{} {} = {:.11e} {} {:.11e}\n",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.value,
                r.cmp.symbol(),
                r.threshold
            ));
        }
        let failed = self.failures().count();
        s.push_str(&format!("{} checks, {} failed\n", self.results.len(), failed));
        s
    }
}

pub fn run(suites: &[Suite], cfg: &CheckConfig) -> Result<Report> {
    let mut results = Vec::new();
    let mut ordered = suites.to_vec();
    ordered.sort();
    ordered.dedup();
    for suite in ordered {
        let mut ctx = Ctx {
            cfg,
            suite,
            out: Vec::new(),
            stream: 0,
        };
        match suite {
            Suite::Algebra => algebra(&mut ctx)?,
            Suite::Quat => quat(&mut ctx)?,
            Suite::Covers => covers(&mut ctx)?,
            Suite::Metrics => metrics(&mut ctx)?,
            Suite::Screws => screws(&mut ctx)?,
        }
        results.extend(ctx.out);
    }
    Ok(Report {
        seed: cfg.seed,
        results,
    })
}

/// J as printed: E₁₄+E₄₁+E₂₅+E₅₂−E₃₆−E₆₃.
pub fn printed_j() -> Mat<f64> {
    let e = |i, j| Mat::<f64>::elementary(6, i, j);
    let sum = [
        &e(1, 4) + &e(4, 1),
        &e(2, 5) + &e(5, 2),
        (&e(3, 6) + &e(6, 3)).scale(-1.0),
    ];
    sum.iter().fold(Mat::zeros(6, 6), |acc, m| &acc + m)
}

fn algebra(ctx: &mut Ctx) -> Result<()> {
    let mut jac: f64 = 0.0;
    for name in ["so3", "su2", "sl2", "so21", "so31", "h3"] {
        jac = jac.max(builtin::by_name::<f64>(name)?.jacobi_residual());
    }
    for g in [GroupId::SE3, GroupId::SE21] {
        jac = jac.max(g.algebra::<f64>().algebra().jacobi_residual());
    }
    ctx.below("jacobi", jac, 1e-12);

    let so31 = builtin::so31::<f64>();
    let want = Mat::from_diag(&[4.0, 4.0, 4.0, -4.0, -4.0, -4.0]);
    ctx.below("killing_so31", so31.killing_form().matrix().dist(&want), 1e-12);
    let sl2 = builtin::sl2::<f64>();
    ctx.below(
        "killing_sl2",
        sl2.killing_form().matrix().dist(&Mat::from_diag(&[-1.0, 1.0, 1.0])),
        1e-12,
    );

    for name in ["so3", "su2", "sl2", "so21"] {
        let dim = builtin::by_name::<f64>(name)?.centralizer_basis().len();
        ctx.count(&format!("centralizer_{name}"), dim, 1);
    }
    ctx.count("centralizer_so31", so31.centralizer_basis().len(), 2);

    let j = so31.complex_structure_j()?;
    let jm = j.matrix();
    ctx.below("j_squared", (&(jm * jm) + &Mat::identity(6)).max_abs(), 1e-10);
    let printed = printed_j();
    ctx.below("j_abs_pattern", jm.map(f64::abs).dist(&printed.map(f64::abs)), 1e-10);
    let kj = k_j_form(&so31, &j);
    ctx.below("k_j_display", kj.matrix().dist(&printed.scale(4.0)), 1e-10);

    for name in builtin::SIMPLE {
        let g = builtin::by_name::<f64>(name)?;
        ctx.count(
            &format!("perfect_{name}"),
            g.cotangent_algebra().derived_dim(),
            2 * g.dim(),
        );
    }
    ctx.count("derived_h3", builtin::heisenberg::<f64>().derived_dim(), 1);
    Ok(())
}

fn dual_norm_residual<Q>(rng: &mut ChaCha8Rng, trials: usize) -> f64
where
    Q: QuatAlgebra<f64> + Copy + std::ops::Mul<Output = Q> + std::ops::Add<Output = Q>,
{
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let a = DualOf::new(
            sampling::any_quat::<f64, Q, _>(rng),
            sampling::any_quat::<f64, Q, _>(rng),
        );
        let b = DualOf::new(
            sampling::any_quat::<f64, Q, _>(rng),
            sampling::any_quat::<f64, Q, _>(rng),
        );
        let lhs = (a * b).norm2();
        let rhs = a.norm2() * b.norm2();
        worst = worst.max((lhs.re - rhs.re).abs()).max((lhs.du - rhs.du).abs());
    }
    worst
}

fn algebra_laws<Q>(rng: &mut ChaCha8Rng, trials: usize) -> (f64, f64, f64)
where
    Q: QuatAlgebra<f64> + Copy + std::ops::Mul<Output = Q>,
{
    let (mut assoc, mut norm, mut conj): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..trials {
        let p: Q = sampling::any_quat(rng);
        let q: Q = sampling::any_quat(rng);
        let r: Q = sampling::any_quat(rng);
        assoc = assoc.max(((p * q) * r).max_abs_diff(&(p * (q * r))));
        norm = norm.max(((p * q).norm2() - p.norm2() * q.norm2()).abs());
        conj = conj.max((p * q).conj().max_abs_diff(&(q.conj() * p.conj())));
    }
    (assoc, norm, conj)
}

fn quat(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.cfg.trials(1000);
    let mut rng = ctx.rng();
    let (a, m, c) = algebra_laws::<Quaternion<f64>>(&mut rng, n);
    ctx.below("hamilton_assoc", a, 1e-12);
    ctx.below("hamilton_norm_mult", m, 1e-12);
    ctx.below("hamilton_conj_anti", c, 1e-12);
    let mut rng = ctx.rng();
    let (a, m, c) = algebra_laws::<SplitQuaternion<f64>>(&mut rng, n);
    ctx.below("split_assoc", a, 1e-12);
    ctx.below("split_norm_mult", m, 1e-12);
    ctx.below("split_conj_anti", c, 1e-12);

    let mut rng = ctx.rng();
    let r = dual_norm_residual::<Quaternion<f64>>(&mut rng, n);
    ctx.below("dual_quat_norm_mult", r, 1e-12);
    let mut rng = ctx.rng();
    let r = dual_norm_residual::<SplitQuaternion<f64>>(&mut rng, n);
    ctx.below("dual_split_norm_mult", r, 1e-12);

    let mut rng = ctx.rng();
    let mut inv: f64 = 0.0;
    for _ in 0..n {
        let d: DualQuaternion<f64> = sampling::unit_dual_quaternion(&mut rng);
        let s: DualSplitQuaternion<f64> = sampling::unit_dual_split_quaternion(&mut rng);
        inv = inv.max((d * d.inv()?).max_abs_diff(&DualOf::one()));
        inv = inv.max((s * s.inv()?).max_abs_diff(&DualOf::one()));
    }
    ctx.below("dual_unit_inverse", inv, 1e-12);
    Ok(())
}

/// Maps whose homomorphism residual is checked; `psi-corrupted` is the negative control.
pub const COVER_MAPS: [&str; 12] = [
    "identity-so3",
    "psi",
    "rot3",
    "pi",
    "omega",
    "rot21",
    "f",
    "T",
    "Tprime",
    "phibar",
    "p",
    "Phi",
];

fn covers(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.cfg.trials(1000);
    let mut rng = ctx.rng();
    let (mut orth, mut adpsi): (f64, f64) = (0.0, 0.0);
    let mut stray = 0;
    let near_identity = |g: &GroupElement<f64>| g.dist(&GroupElement::identity(g.group())) < 1e-6;
    for _ in 0..n {
        let q: Quaternion<f64> = sampling::unit_quaternion(&mut rng);
        let r = rot3(&q)?;
        let m = r.matrix();
        orth = orth.max((&(&m.transpose() * m) - &Mat::identity(3)).max_abs());
        adpsi = adpsi.max(psi_element(&q)?.adjoint_rep().0.dist(m));
        let s: SplitQuaternion<f64> = sampling::unit_split_quaternion(&mut rng);
        let d: DualQuaternion<f64> = sampling::unit_dual_quaternion(&mut rng);
        let trivial = |w: f64| (w.abs() - 1.0).abs() < 1e-6;
        stray += usize::from(near_identity(&r) && !trivial(q.w));
        stray += usize::from(near_identity(&rot21(&s)?) && !trivial(s.w));
        stray += usize::from(
            near_identity(&pi_cover(&d)?) && !trivial(d.re.w) && d.du.max_abs_diff(&Quaternion::zero()) > 1e-6,
        );
    }
    ctx.below("rot3_orthogonality", orth, 1e-12);
    ctx.below("ad_psi_is_rot3", adpsi, 1e-12);

    let mut kernel: f64 = 0.0;
    for sign in [1.0, -1.0] {
        kernel = kernel.max(rot3(&Quaternion::real(sign))?.dist(&GroupElement::identity(GroupId::SO3)));
        kernel = kernel.max(rot21(&SplitQuaternion::real(sign))?.dist(&GroupElement::identity(GroupId::SO21)));
        let d = DualOf::new(Quaternion::real(sign), Quaternion::zero());
        kernel = kernel.max(pi_cover(&d)?.dist(&GroupElement::identity(GroupId::SE3)));
    }
    ctx.below("kernel_contains_pm1", kernel, 1e-15);
    ctx.count("kernel_outside_pm1", stray, 0);

    let hom_trials = ctx.cfg.trials(500);
    for name in COVER_MAPS {
        let map = map_by_name(name)?;
        ctx.below(
            &format!("hom_{name}"),
            hom_residual(map.as_ref(), hom_trials, ctx.cfg.seed),
            1e-10,
        );
    }
    debug_assert!(MAP_NAMES.contains(&"psi-corrupted"));
    let bad = map_by_name("psi-corrupted")?;
    ctx.above(
        "hom_psi_corrupted",
        hom_residual(bad.as_ref(), hom_trials, ctx.cfg.seed),
        1e-1,
    );
    Ok(())
}

fn metrics(ctx: &mut Ctx) -> Result<()> {
    let h3 = builtin::heisenberg::<f64>();
    let mut rng = ctx.rng();
    let (mut res, mut doubled): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let field = h3_metric(H3MetricParams::sample(&mut rng))?;
        let pts: Vec<Vec<f64>> = (0..100)
            .map(|_| sampling::uniform_vec(&mut rng, 3, -2.0, 2.0))
            .collect();
        res = res.max(parallelism_residual(&field, &h3, &h3_left_frame, &pts, 1e-5));
        doubled = doubled.max(parallelism_residual(
            &field.scaled_entry(0, 1, 2.0),
            &h3,
            &h3_left_frame,
            &pts,
            1e-5,
        ));
    }
    ctx.below("h3_parallelism", res, 1e-6);
    ctx.above("h3_doubled_dxdy", doubled, 1e-3);

    let mut rng = ctx.rng();
    let (dim, det) = invariant_form_det_scan(&h3, 2000, &mut rng);
    ctx.count("h3_invariant_forms_nonzero", usize::from(dim > 0), 1);
    ctx.below("h3_invariant_form_det", det, 1e-12);

    let mut rng = ctx.rng();
    let (mut wrong_sig, mut spread, mut adinv): (usize, f64, f64) = (0, 0.0, 0.0);
    for name in ["so3", "su2", "sl2", "so21"] {
        let g = builtin::by_name::<f64>(name)?;
        let (frame, p) = killing_normal_cotangent_frame(&g)?;
        let cot = g.cotangent_algebra();
        for _ in 0..50 {
            let s = rng.gen_range(-3.0..3.0);
            let t = rng.gen_range(0.1..3.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let mu = cotangent_metric(&g, CotangentMetricParams::Odd { s, t }, None)?;
            adinv = adinv.max(cot.ad_invariance_residual(&mu)?);
            let sig = signature(&mu);
            wrong_sig += usize::from((sig.neg, sig.pos, sig.zero) != (3, 3, 0));
            let got = eigenvalues(&mu.change_basis(&frame));
            for (a, b) in got.iter().zip(odd_case_spectrum(s, t, p, g.dim())) {
                spread = spread.max((a - b).abs());
            }
        }
    }
    ctx.count("odd_signature_not_3_3", wrong_sig, 0);
    ctx.below("odd_spectrum", spread, 1e-10);

    let so31 = builtin::so31::<f64>();
    let j = so31.complex_structure_j()?;
    let cot = so31.cotangent_algebra();
    let mut wrong_even = 0;
    for _ in 0..50 {
        let v = sampling::uniform_vec::<f64, _>(&mut rng, 4, -2.0, 2.0);
        let params = CotangentMetricParams::Even {
            s1: v[0],
            s2: v[1],
            t1: v[2],
            t2: v[3],
        };
        let mu = cotangent_metric(&so31, params, Some(&j))?;
        adinv = adinv.max(cot.ad_invariance_residual(&mu)?);
        let sig = signature(&mu);
        wrong_even += usize::from((sig.neg, sig.pos, sig.zero) != (6, 6, 0));
    }
    ctx.count("even_signature_not_6_6", wrong_even, 0);
    ctx.below("cotangent_ad_invariance", adinv, 1e-12);

    let quarter = so31.killing_form().scale(0.25);
    ctx.below(
        "so31_quarter_killing",
        so31_metric(1.0, 0.0)?.matrix().dist(quarter.matrix()),
        1e-12,
    );
    Ok(())
}

/// Worst geodesic residual over `screws` random screws and `metrics`
/// random (s, t), plus the worst residual of the 0.1·E₁₁-perturbed metric.
pub fn screw_geodesic_sweep(space: Space, screws: usize, metrics: usize, rng: &mut ChaCha8Rng) -> Result<(f64, f64)> {
    let ts = linspace(-0.5, 0.5, 5);
    let params: Vec<(f64, f64)> = (0..metrics)
        .map(|_| {
            let s = rng.gen_range(-2.0..2.0);
            let t = rng.gen_range(0.1..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            (s, t)
        })
        .collect();
    let bump = crate::lie::BilinearForm::new(Mat::elementary(6, 1, 1).scale(0.1));
    let (s0, t0) = params[0];
    let bundle = cotangent_metric(
        &space.rotation_algebra::<f64>(),
        CotangentMetricParams::Odd { s: s0, t: t0 },
        None,
    )?;
    let perturbed = twist_metric(space, &bundle.add(&bump))?;
    let (mut good, mut bad): (f64, f64) = (0.0, 0.0);
    for _ in 0..screws {
        let g0 = sample_element::<f64, _>(space.group(), rng, 0.5);
        let xi = Twist::sample(space, rng);
        for &(s, t) in &params {
            good = good.max(geodesic_residual(&screw_metric(space, s, t)?, &g0, &xi, &ts, 1e-4)?);
        }
        bad = bad.max(geodesic_residual(&perturbed, &g0, &xi, &ts, 1e-4)?);
    }
    Ok((good, bad))
}

fn screws(ctx: &mut Ctx) -> Result<()> {
    let n = ctx.cfg.trials(1000);
    let mut rng = ctx.rng();
    let (mut round, mut flow): (f64, f64) = (0.0, 0.0);
    for _ in 0..n {
        let g = sample_element::<f64, _>(GroupId::SE3, &mut rng, 1.7);
        let sp = screw_decompose(&g)?;
        if (sp.angle - std::f64::consts::PI).abs() > 1e-8 {
            round = round.max(twist_exp(&sp.to_twist(), 1.0)?.dist(&g));
        }
    }
    ctx.below("decompose_round_trip", round, 1e-10);
    for space in Space::ALL {
        for _ in 0..20 {
            let g0 = sample_element::<f64, _>(space.group(), &mut rng, 0.5);
            let xi = Twist::sample(space, &mut rng);
            let (s, t) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let c = geodesic_sample(&g0, &xi, &[t, s + t])?;
            flow = flow.max(twist_exp(&xi, s)?.mul(&c[0])?.dist(&c[1]));
        }
    }
    ctx.below("flow_composition", flow, 1e-10);

    for space in Space::ALL {
        let mut rng = ctx.rng();
        let (good, bad) = screw_geodesic_sweep(space, 20, 5, &mut rng)?;
        ctx.below(&format!("geodesic_{space}"), good, 1e-4);
        ctx.above(&format!("geodesic_perturbed_{space}"), bad, 1e-2);
    }

    let ss = linspace(-5.0, 5.0, 10);
    let ts = linspace(0.1, 5.0, 10);
    for space in Space::ALL {
        let rep = riemannian_obstruction_scan(space, &ss, &ts)?;
        ctx.count(&format!("obstruction_min_neg_{space}"), rep.min_neg, 3);
        let max_neg = rep.signatures.iter().map(|s| s.neg).max().unwrap_or(0);
        ctx.count(&format!("obstruction_max_neg_{space}"), max_neg, 3);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 5);
        assert_eq!(Suite::parse_list("Covers").unwrap(), vec![Suite::Covers]);
        assert!(Suite::parse_list("nope").is_err());
    }

    #[test]
    fn override_resolution() {
        let cfg = CheckConfig::new(0)
            .with_override("*", 1.0)
            .unwrap()
            .with_override("quat", 2.0)
            .unwrap()
            .with_override("quat.split_assoc", 3.0)
            .unwrap();
        assert_eq!(cfg.threshold(Suite::Quat, "quat.split_assoc", 9.0), 3.0);
        assert_eq!(cfg.threshold(Suite::Quat, "quat.hamilton_assoc", 9.0), 2.0);
        assert_eq!(cfg.threshold(Suite::Algebra, "algebra.jacobi", 9.0), 1.0);
        assert!(CheckConfig::new(0).with_override("x", 0.0).is_err());
        assert!(CheckConfig::new(0).with_override("x", f64::NAN).is_err());
    }

    #[test]
    fn algebra_suite_passes() {
        let rep = run(&[Suite::Algebra], &CheckConfig::new(0)).unwrap();
        let failed: Vec<_> = rep.failures().map(|r| r.name.clone()).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn quat_suite_is_deterministic() {
        let cfg = CheckConfig {
            trials: Some(50),
            ..CheckConfig::new(42)
        };
        let a = run(&[Suite::Quat], &cfg).unwrap();
        let b = run(&[Suite::Quat], &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn tiny_tolerance_fails() {
        let cfg = CheckConfig {
            trials: Some(20),
            ..CheckConfig::new(0)
        }
        .with_override("quat", 1e-30)
        .unwrap();
        assert!(!run(&[Suite::Quat], &cfg).unwrap().passed());
    }

    #[test]
    fn printed_j_is_symmetric() {
        let j = printed_j();
        assert_eq!(j, j.transpose());
        assert_eq!((&j * &j).dist(&Mat::identity(6)), 0.0);
    }
}
