//! Twists, screw decomposition and one-parameter-subgroup geodesics on
//! SE(3) and SE(2,1), with a finite-difference geodesic check in the
//! right-trivialized exponential chart.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::{exp_cubic, rotation_log, GroupElement, GroupId};
use crate::isomaps::{hat_f, hat_h, t_iso_inv, tprime_iso_inv, vee_f, vee_h};
use crate::lie::{builtin, BilinearForm, LieAlgebra};
use crate::linalg::{vec_dot, Mat};
use crate::metrics::{cotangent_metric, signature, CoordinateMetricField, CotangentMetricParams, Signature};
use crate::sampling::uniform3;
use crate::scalar::Scalar;

/// Ambient geometry of a twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    Euclidean,
    Minkowski,
}

impl Space {
    pub const ALL: [Space; 2] = [Space::Euclidean, Space::Minkowski];

    pub fn group(self) -> GroupId {
        match self {
            Space::Euclidean => GroupId::SE3,
            Space::Minkowski => GroupId::SE21,
        }
    }

    pub fn rotation_group(self) -> GroupId {
        match self {
            Space::Euclidean => GroupId::SO3,
            Space::Minkowski => GroupId::SO21,
        }
    }

    /// The simple algebra whose cotangent bundle carries the metrics.
    pub fn rotation_algebra<T: Scalar>(self) -> LieAlgebra<T> {
        match self {
            Space::Euclidean => builtin::so3(),
            Space::Minkowski => builtin::so21(),
        }
    }

    pub fn hat<T: Scalar>(self, x: &[T]) -> Mat<T> {
        match self {
            Space::Euclidean => hat_f(x),
            Space::Minkowski => hat_h(x),
        }
    }

    pub fn vee<T: Scalar>(self, m: &Mat<T>) -> [T; 3] {
        match self {
            Space::Euclidean => vee_f(m),
            Space::Minkowski => vee_h(m),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Space::Euclidean => "se3",
            Space::Minkowski => "se21",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "se3" | "euclidean" => Ok(Space::Euclidean),
            "se21" | "minkowski" => Ok(Space::Minkowski),
            _ => Err(Error::Unknown(s.to_string())),
        }
    }
}

/// Angular part ω and translational part v of an se(3) or se(2,1) element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Twist<T> {
    pub omega: [T; 3],
    pub v: [T; 3],
    pub space: Space,
}

impl<T: Scalar> Twist<T> {
    pub fn new(omega: [T; 3], v: [T; 3], space: Space) -> Self {
        Self { omega, v, space }
    }

    pub fn zero(space: Space) -> Self {
        Self::new([T::zero(); 3], [T::zero(); 3], space)
    }

    pub fn sample<R: Rng + ?Sized>(space: Space, rng: &mut R) -> Self {
        let omega = uniform3(rng, -1.0, 1.0);
        Self::new(omega, uniform3(rng, -1.0, 1.0), space)
    }

    /// Coordinates in the group's algebra basis (ω then v).
    pub fn coords(&self) -> Vec<T> {
        self.omega.iter().chain(&self.v).copied().collect()
    }

    pub fn scaled(&self, t: T) -> Self {
        Self::new(self.omega.map(|x| x * t), self.v.map(|x| x * t), self.space)
    }

    /// The 4×4 generator [[hat(ω), v], [0, 0]].
    pub fn matrix(&self) -> Mat<T> {
        let mut m = Mat::zeros(4, 4);
        m.set_block(0, 0, &self.space.hat(&self.omega));
        for i in 0..3 {
            m[(i, 3)] = self.v[i];
        }
        m
    }
}

/// exp(t·ξ) in SE(3) or SE(2,1).
pub fn twist_exp<T: Scalar>(xi: &Twist<T>, t: T) -> Result<GroupElement<T>> {
    crate::groups::group_exp(xi.space.group(), &xi.scaled(t).coords())
}

/// Truncated power series of exp(t·ξ); an independent reference for [`twist_exp`].
pub fn twist_exp_series<T: Scalar>(xi: &Twist<T>, t: T, terms: usize) -> Mat<T> {
    let x = xi.scaled(t).matrix();
    let mut term = Mat::identity(4);
    let mut sum = Mat::identity(4);
    for k in 1..terms {
        term = (&term * &x).scale(T::one() / T::lit(k as f64));
        sum = &sum + &term;
    }
    sum
}

/// Chasles normal form of a rigid motion: rotation by `angle` about the line
/// through `axis_point` along `axis_dir`, with `displacement` along the axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScrewParams<T> {
    pub axis_point: [T; 3],
    pub axis_dir: [T; 3],
    pub angle: T,
    pub pitch: T,
    pub displacement: T,
    pub pure_translation: bool,
}

impl<T: Scalar> ScrewParams<T> {
    pub fn zero() -> Self {
        Self {
            axis_point: [T::zero(); 3],
            axis_dir: [T::zero(); 3],
            angle: T::zero(),
            pitch: T::zero(),
            displacement: T::zero(),
            pure_translation: true,
        }
    }

    /// The twist whose unit-time exponential is the motion.
    pub fn to_twist(&self) -> Twist<T> {
        if self.pure_translation {
            return Twist::new(
                [T::zero(); 3],
                self.axis_dir.map(|x| x * self.displacement),
                Space::Euclidean,
            );
        }
        let omega = self.axis_dir.map(|x| x * self.angle);
        let wq = crate::quat::cross(omega, self.axis_point);
        let v = [0, 1, 2].map(|i| -wq[i] + self.pitch * omega[i]);
        Twist::new(omega, v, Space::Euclidean)
    }

    pub fn to_json(&self) -> Value {
        let f = |v: [T; 3]| v.map(|x| x.as_f64());
        json!({
            "axis_point": f(self.axis_point),
            "axis_dir": f(self.axis_dir),
            "angle": self.angle.as_f64(),
            "pitch": self.pitch.as_f64(),
            "displacement": self.displacement.as_f64(),
            "pure_translation": self.pure_translation,
        })
    }
}

/// Rotation angle below which a motion counts as a pure translation.
const ANGLE_EPS: f64 = 1e-10;

fn normalize<T: Scalar>(v: [T; 3]) -> [T; 3] {
    let n = vec_dot(&v, &v).sqrt();
    v.map(|x| x / n)
}

/// Screw parameters of an SE(3) element; angle in [0, π].
pub fn screw_decompose<T: Scalar>(g: &GroupElement<T>) -> Result<ScrewParams<T>> {
    if g.group() != GroupId::SE3 {
        return Err(Error::GroupMismatch {
            left: g.group().name().into(),
            right: "SE3".into(),
        });
    }
    let r = g.rotation_block();
    let p = g.translation();
    let skew = vee_f(&(&r - &r.transpose()).scale(T::half()));
    let sin = vec_dot(&skew, &skew).sqrt();
    let cos = (r.trace() - T::one()) * T::half();
    let angle = sin.atan2(cos);
    if angle < T::lit(ANGLE_EPS) {
        let d = vec_dot(&p, &p).sqrt();
        if d == T::zero() {
            return Ok(ScrewParams::zero());
        }
        return Ok(ScrewParams {
            axis_dir: p.map(|x| x / d),
            displacement: d,
            ..ScrewParams::zero()
        });
    }
    let axis = if cos >= T::zero() {
        normalize(skew)
    } else {
        // ω̂ω̂ᵀ = (R − cos θ I)/(1 − cos θ); take the dominant column
        let s = (&r + &r.transpose()).scale(T::half());
        let k = (0..3)
            .max_by(|&a, &b| s[(a, a)].partial_cmp(&s[(b, b)]).expect("finite"))
            .expect("3 columns");
        let mut col = [s[(0, k)], s[(1, k)], s[(2, k)]];
        col[k] = col[k] - cos;
        let mut a = normalize(col);
        let dir = vec_dot(&a, &skew);
        let flip = if dir.abs() > T::lit(1e-12) {
            dir < T::zero()
        } else {
            a.iter()
                .find(|x| x.abs() > T::lit(1e-12))
                .is_some_and(|&x| x < T::zero())
        };
        if flip {
            a = a.map(|x| -x);
        }
        a
    };
    let d = vec_dot(&axis, &p);
    let perp = [0, 1, 2].map(|i| p[i] - d * axis[i]);
    let cot = T::one() / (angle * T::half()).tan();
    let c = crate::quat::cross(axis, perp);
    let q = [0, 1, 2].map(|i| T::half() * (perp[i] + cot * c[i]));
    Ok(ScrewParams {
        axis_point: q,
        axis_dir: axis,
        angle,
        pitch: d / angle,
        displacement: d,
        pure_translation: false,
    })
}

/// [exp(tξ)·g₀ for t in ts].
pub fn geodesic_sample<T: Scalar>(g0: &GroupElement<T>, xi: &Twist<T>, ts: &[T]) -> Result<Vec<GroupElement<T>>> {
    ts.iter().map(|&t| twist_exp(xi, t)?.mul(g0)).collect()
}

/// Matrix M sending twist coordinates to bundle-algebra coordinates
/// (x, f) ∈ 𝒢 ⋉ 𝒢*, read off the T / T′ identification at the identity.
pub fn twist_to_bundle<T: Scalar>(space: Space) -> Result<Mat<T>> {
    let rot = space.rotation_group().algebra::<T>();
    let mut m = Mat::zeros(6, 6);
    for k in 0..3 {
        let mut e = [T::zero(); 3];
        e[k] = T::one();
        let x = rot.coords(&space.hat(&e));
        let g = GroupElement::rigid(space.group(), &Mat::identity(3), e)?;
        let f = match space {
            Space::Euclidean => t_iso_inv(&g)?,
            Space::Minkowski => tprime_iso_inv(&g)?,
        }
        .payload;
        for i in 0..3 {
            m[(i, k)] = x[i];
            m[(i + 3, k + 3)] = f[i];
        }
    }
    Ok(m)
}

/// Pullback Mᵀ μ M of a bundle-algebra form to twist coordinates.
pub fn twist_metric<T: Scalar>(space: Space, bundle_form: &BilinearForm<T>) -> Result<BilinearForm<T>> {
    if bundle_form.dim() != 6 {
        return Err(Error::DimensionMismatch {
            expected: 6,
            got: bundle_form.dim(),
        });
    }
    Ok(bundle_form.change_basis(&twist_to_bundle(space)?))
}

/// Odd-family metric for `space` pulled back to twist coordinates.
pub fn screw_metric<T: Scalar>(space: Space, s: T, t: T) -> Result<BilinearForm<T>> {
    let mu = cotangent_metric(
        &space.rotation_algebra::<T>(),
        CotangentMetricParams::Odd { s, t },
        None,
    )?;
    twist_metric(space, &mu)
}

/// Right-trivialized exponential chart c = (log R, p) of SE(3) / SE(2,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpChart {
    pub space: Space,
}

/// Step of the central difference that builds the chart frame.
const FRAME_STEP: f64 = 1e-5;

impl ExpChart {
    pub fn new(space: Space) -> Self {
        Self { space }
    }

    /// Raw matrix at chart point c.
    pub fn point<T: Scalar>(&self, c: &[T]) -> Mat<T> {
        let mut m = Mat::identity(4);
        m.set_block(0, 0, &exp_cubic(&self.space.hat(&c[..3])));
        for i in 0..3 {
            m[(i, 3)] = c[i + 3];
        }
        m
    }

    /// Chart coordinates of g; `ChartOverflow` near rotation angle π.
    pub fn coords<T: Scalar>(&self, g: &GroupElement<T>) -> Result<Vec<T>> {
        let rg = self.space.rotation_group();
        let rot = GroupElement::new(rg, g.rotation_block())?;
        let x = rotation_log(&rot)?;
        let r = self.space.vee(&rg.algebra::<T>().matrix(&x));
        Ok(r.iter().chain(&g.translation()).copied().collect())
    }

    /// Columns are the right-trivialized frame (∂g/∂cᵢ)g⁻¹ in twist coordinates.
    pub fn frame<T: Scalar>(&self, c: &[T]) -> Mat<T> {
        let alg = self.space.group().algebra::<T>();
        let h = T::lit(FRAME_STEP);
        let ginv = self.point(c).inverse().expect("group element");
        let mut out = Mat::zeros(6, 6);
        for i in 0..6 {
            let mut cp = c.to_vec();
            let mut cm = c.to_vec();
            cp[i] = cp[i] + h;
            cm[i] = cm[i] - h;
            let d = (&self.point(&cp) - &self.point(&cm)).scale(T::one() / (T::two() * h));
            out.set_col(i, &alg.coords(&(&d * &ginv)));
        }
        out
    }

    /// Right-invariant metric field of a constant twist-coordinate form.
    pub fn metric_field<T: Scalar>(&self, form: &BilinearForm<T>) -> CoordinateMetricField<T> {
        let chart = *self;
        let g = form.matrix().clone();
        CoordinateMetricField::new(6, move |c| {
            let f = chart.frame(c);
            &(&f.transpose() * &g) * &f
        })
    }
}

/// Γᵏᵢⱼ at c as `gamma[k][(i, j)]`, by central differences of step h.
pub fn christoffel<T: Scalar>(field: &CoordinateMetricField<T>, c: &[T], h: T) -> Result<Vec<Mat<T>>> {
    let n = field.dim();
    let ginv = field.at(c).inverse()?;
    let dg: Vec<Mat<T>> = (0..n)
        .map(|l| {
            let mut cp = c.to_vec();
            let mut cm = c.to_vec();
            cp[l] = cp[l] + h;
            cm[l] = cm[l] - h;
            (&field.at(&cp) - &field.at(&cm)).scale(T::one() / (T::two() * h))
        })
        .collect();
    Ok((0..n)
        .map(|k| {
            Mat::from_fn(n, n, |i, j| {
                let s: T = (0..n)
                    .map(|l| ginv[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]))
                    .sum();
                T::half() * s
            })
        })
        .collect())
}

/// Step in t for curve derivatives.
pub const CURVE_STEP: f64 = 1e-3;

/// max over ts of ‖c̈ + Γ(ċ, ċ)‖∞ along t ↦ exp(tξ)g₀ in the exponential
/// chart, for the right-invariant metric of `form` (twist coordinates).
pub fn geodesic_residual<T: Scalar>(
    form: &BilinearForm<T>,
    g0: &GroupElement<T>,
    xi: &Twist<T>,
    ts: &[T],
    h: T,
) -> Result<T> {
    if g0.group() != xi.space.group() {
        return Err(Error::GroupMismatch {
            left: g0.group().name().into(),
            right: xi.space.group().name().into(),
        });
    }
    let chart = ExpChart::new(xi.space);
    let field = chart.metric_field(form);
    let dt = T::lit(CURVE_STEP);
    let at = |t: T| -> Result<Vec<T>> { chart.coords(&twist_exp(xi, t)?.mul(g0)?) };
    let mut worst = T::zero();
    for &t in ts {
        let (cm, c0, cp) = (at(t - dt)?, at(t)?, at(t + dt)?);
        let vel: Vec<T> = (0..6).map(|i| (cp[i] - cm[i]) / (T::two() * dt)).collect();
        let acc: Vec<T> = (0..6).map(|i| (cp[i] - T::two() * c0[i] + cm[i]) / (dt * dt)).collect();
        let gamma = christoffel(&field, &c0, h)?;
        for k in 0..6 {
            let q = vec_dot(&vel, &gamma[k].mul_vec(&vel));
            worst = worst.max((acc[k] + q).abs());
        }
    }
    Ok(worst)
}

/// `n` evenly spaced points on [a, b].
pub fn linspace<T: Scalar>(a: T, b: T, n: usize) -> Vec<T> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * T::lit(i as f64) / T::lit((n - 1) as f64))
            .collect(),
    }
}

/// Signatures of the odd family over an (s, t) grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionReport {
    pub space: Space,
    pub grid: Vec<(f64, f64)>,
    pub signatures: Vec<Signature>,
    pub min_neg: usize,
}

impl ObstructionReport {
    /// True when no grid point is positive definite.
    pub fn obstructed(&self) -> bool {
        self.min_neg > 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.name(),
            "grid": self.grid.iter().map(|&(s, t)| [s, t]).collect::<Vec<_>>(),
            "signatures": self.signatures,
            "min_neg": self.min_neg,
        })
    }
}

pub fn riemannian_obstruction_scan(space: Space, ss: &[f64], ts: &[f64]) -> Result<ObstructionReport> {
    if ss.is_empty() || ts.is_empty() {
        return Err(Error::Degenerate("empty parameter grid".into()));
    }
    if let Some(t) = ts.iter().find(|t| t.abs() < 1e-6) {
        return Err(Error::Degenerate(format!("t = {t} is too close to 0")));
    }
    let mut grid = Vec::new();
    let mut signatures = Vec::new();
    for &s in ss {
        for &t in ts {
            grid.push((s, t));
            signatures.push(signature(&screw_metric::<f64>(space, s, t)?));
        }
    }
    let min_neg = signatures.iter().map(|s| s.neg).min().expect("nonempty");
    Ok(ObstructionReport {
        space,
        grid,
        signatures,
        min_neg,
    })
}

/// CSV with header `t,m00,…,m33`, one row per sample.
pub fn trajectory_csv<T: Scalar>(ts: &[T], curve: &[GroupElement<T>]) -> String {
    let mut out = String::from("t");
    for i in 0..4 {
        for j in 0..4 {
            out.push_str(&format!(",m{i}{j}"));
        }
    }
    out.push('\n');
    for (t, g) in ts.iter().zip(curve) {
        out.push_str(&format!("{}", t.as_f64()));
        for x in g.matrix().as_slice() {
            out.push_str(&format!(",{}", x.as_f64()));
        }
        out.push('\n');
    }
    out
}
