//! Matrix groups, their adjoint/coadjoint representations and the
//! right-trivialized bundle groups G ⋉_Ad 𝒢 and G ⋉_Ad* 𝒢*.
//!
//! SU(2) is stored as the realification `[[A, −B], [B, A]]` of `A + iB`, so
//! every group shares the real [`Mat`] code path; [`Complex`] appears only at
//! the ψ boundary and in JSON.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lie::{builtin, LinearEndo, MatrixAlgebra};
use crate::linalg::{vec_add, Mat};
use crate::scalar::Scalar;

/// Membership residual accepted at construction.
pub fn member_tol<T: Scalar>() -> T {
    T::lit(1e-10).max(T::epsilon() * T::lit(1e3))
}

/// Residual beyond which a product is reported as drift.
pub fn drift_tol<T: Scalar>() -> T {
    T::lit(1e-8).max(T::epsilon() * T::lit(1e4))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupId {
    SO3,
    SU2,
    SL2,
    SO21,
    SO31,
    H3,
    SE3,
    SE21,
}

impl GroupId {
    pub const ALL: [GroupId; 8] = [
        GroupId::SO3,
        GroupId::SU2,
        GroupId::SL2,
        GroupId::SO21,
        GroupId::SO31,
        GroupId::H3,
        GroupId::SE3,
        GroupId::SE21,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupId::SO3 => "SO3",
            GroupId::SU2 => "SU2",
            GroupId::SL2 => "SL2",
            GroupId::SO21 => "SO21",
            GroupId::SO31 => "SO31",
            GroupId::H3 => "H3",
            GroupId::SE3 => "SE3",
            GroupId::SE21 => "SE21",
        }
    }

    /// Side of the stored real matrix (SU(2) is realified to 4).
    pub fn matrix_size(self) -> usize {
        match self {
            GroupId::SL2 => 2,
            GroupId::SO3 | GroupId::SO21 | GroupId::H3 => 3,
            GroupId::SU2 | GroupId::SO31 | GroupId::SE3 | GroupId::SE21 => 4,
        }
    }

    pub fn algebra<T: Scalar>(self) -> MatrixAlgebra<T> {
        match self {
            GroupId::SO3 => builtin::so3_matrices(),
            GroupId::SU2 => builtin::su2_matrices(),
            GroupId::SL2 => builtin::sl2_matrices(),
            GroupId::SO21 => builtin::so21_matrices(),
            GroupId::SO31 => builtin::so31_matrices(),
            GroupId::H3 => builtin::heisenberg_matrices(),
            GroupId::SE3 => builtin::se3_matrices(),
            GroupId::SE21 => builtin::se21_matrices(),
        }
    }

    pub fn dim(self) -> usize {
        match self {
            GroupId::SO31 | GroupId::SE3 | GroupId::SE21 => 6,
            _ => 3,
        }
    }

    /// Defining form η of the pseudo-orthogonal groups.
    pub fn eta<T: Scalar>(self) -> Option<Mat<T>> {
        let d = |v: &[f64]| Mat::from_diag(&v.iter().map(|&x| T::lit(x)).collect::<Vec<_>>());
        match self {
            GroupId::SO3 => Some(Mat::identity(3)),
            GroupId::SO21 => Some(d(&[1.0, -1.0, -1.0])),
            GroupId::SO31 => Some(d(&[1.0, 1.0, 1.0, -1.0])),
            _ => None,
        }
    }

    /// Rotation part of the rigid-motion groups.
    pub fn rotation_part(self) -> Option<GroupId> {
        match self {
            GroupId::SE3 => Some(GroupId::SO3),
            GroupId::SE21 => Some(GroupId::SO21),
            _ => None,
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_uppercase();
        GroupId::ALL
            .into_iter()
            .find(|g| g.name() == key)
            .ok_or_else(|| Error::Unknown(s.to_string()))
    }
}

impl<T: Scalar> std::ops::Mul for Complex<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl<T: Scalar> std::ops::Sub for Complex<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

/// Complex number as a pair of reals.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

impl<T: Scalar> Complex<T> {
    pub fn new(re: T, im: T) -> Self {
        Self { re, im }
    }

    pub fn abs(self) -> T {
        self.re.hypot(self.im)
    }
}

pub type C2x2<T> = [[Complex<T>; 2]; 2];

pub fn c2x2_mul<T: Scalar>(a: &C2x2<T>, b: &C2x2<T>) -> C2x2<T> {
    let mut out = [[Complex::default(); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, o) in row.iter_mut().enumerate() {
            let p = a[i][0] * b[0][j];
            let q = a[i][1] * b[1][j];
            *o = Complex::new(p.re + q.re, p.im + q.im);
        }
    }
    out
}

pub fn c2x2_det<T: Scalar>(a: &C2x2<T>) -> Complex<T> {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

/// Realification [[A, −B], [B, A]] of a complex 2×2 matrix.
pub fn realify_c2x2<T: Scalar>(c: &C2x2<T>) -> Mat<T> {
    let re = Mat::from_fn(2, 2, |i, j| c[i][j].re);
    let im = Mat::from_fn(2, 2, |i, j| c[i][j].im);
    builtin::realify(&re, &im)
}

pub fn complexify_c2x2<T: Scalar>(m: &Mat<T>) -> C2x2<T> {
    let mut out = [[Complex::default(); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, o) in row.iter_mut().enumerate() {
            *o = Complex::new(m[(i, j)], m[(i + 2, j)]);
        }
    }
    out
}

fn is_rigid(g: GroupId) -> bool {
    matches!(g, GroupId::SE3 | GroupId::SE21)
}

/// Membership residual of a raw matrix; scale-relative for the noncompact groups.
pub fn membership_residual<T: Scalar>(group: GroupId, m: &Mat<T>) -> T {
    let n = group.matrix_size();
    if m.rows() != n || m.cols() != n {
        return T::infinity();
    }
    let one = T::one();
    let size = one.max(m.max_abs());
    match group {
        GroupId::SO3 | GroupId::SO21 | GroupId::SO31 => {
            let eta = group.eta::<T>().expect("pseudo-orthogonal");
            let gram = &(&m.transpose() * &eta) * m;
            let r = (&gram - &eta).max_abs() / (size * size);
            r.max((m.det() - one).abs() / size.powi(n as i32))
        }
        GroupId::SU2 => {
            let c = complexify_c2x2(m);
            let structure = (&builtin::realify(
                &Mat::from_fn(2, 2, |i, j| c[i][j].re),
                &Mat::from_fn(2, 2, |i, j| c[i][j].im),
            ) - m)
                .max_abs();
            let unit = (&(&m.transpose() * m) - &Mat::identity(4)).max_abs();
            let d = c2x2_det(&c);
            structure.max(unit).max(Complex::new(d.re - one, d.im).abs())
        }
        GroupId::SL2 => (m.det() - one).abs() / (size * size),
        GroupId::H3 => {
            let mut r = T::zero();
            for i in 0..3 {
                r = r.max((m[(i, i)] - one).abs());
                for j in 0..i {
                    r = r.max(m[(i, j)].abs());
                }
            }
            r
        }
        GroupId::SE3 | GroupId::SE21 => {
            let rot = m.block(0, 0, 3, 3);
            let mut r = membership_residual(group.rotation_part().expect("rigid"), &rot);
            for j in 0..3 {
                r = r.max(m[(3, j)].abs());
            }
            r.max((m[(3, 3)] - one).abs())
        }
    }
}

/// Matrix representative tagged with its group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement<T> {
    group: GroupId,
    m: Mat<T>,
}

impl<T: Scalar> GroupElement<T> {
    /// Fails with `NotMember` when the residual exceeds [`member_tol`].
    pub fn new(group: GroupId, m: Mat<T>) -> Result<Self> {
        let r = membership_residual(group, &m);
        if !(r < member_tol::<T>()) {
            return Err(Error::NotMember {
                group: group.name().to_string(),
                residual: r.as_f64(),
            });
        }
        Ok(Self { group, m })
    }

    pub fn identity(group: GroupId) -> Self {
        Self {
            group,
            m: Mat::identity(group.matrix_size()),
        }
    }

    /// SU(2) element from a complex 2×2 matrix.
    pub fn from_complex(c: &C2x2<T>) -> Result<Self> {
        Self::new(GroupId::SU2, realify_c2x2(c))
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.m
    }

    pub fn complex_matrix(&self) -> Option<C2x2<T>> {
        (self.group == GroupId::SU2).then(|| complexify_c2x2(&self.m))
    }

    pub fn residual(&self) -> T {
        membership_residual(self.group, &self.m)
    }

    /// Rigid motion from its rotation block and translation.
    pub fn rigid(group: GroupId, rot: &Mat<T>, v: [T; 3]) -> Result<Self> {
        if !is_rigid(group) {
            return Err(Error::Unknown(format!("{group} is not a rigid-motion group")));
        }
        let mut m = Mat::identity(4);
        m.set_block(0, 0, rot);
        for i in 0..3 {
            m[(i, 3)] = v[i];
        }
        Self::new(group, m)
    }

    pub fn rotation_block(&self) -> Mat<T> {
        self.m.block(0, 0, 3, 3)
    }

    pub fn translation(&self) -> [T; 3] {
        [self.m[(0, 3)], self.m[(1, 3)], self.m[(2, 3)]]
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                left: self.group.name().to_string(),
                right: other.group.name().to_string(),
            });
        }
        let m = &self.m * &other.m;
        let r = membership_residual(self.group, &m);
        if !(r < drift_tol::<T>()) {
            return Err(Error::NumericalDrift(r.as_f64()));
        }
        Ok(Self { group: self.group, m })
    }

    pub fn inv(&self) -> Self {
        let m = match self.group {
            GroupId::SO3 | GroupId::SO21 | GroupId::SO31 => {
                let eta = self.group.eta::<T>().expect("pseudo-orthogonal");
                &(&eta * &self.m.transpose()) * &eta
            }
            GroupId::SU2 => self.m.transpose(),
            GroupId::SE3 | GroupId::SE21 => {
                let rot = GroupElement {
                    group: self.group.rotation_part().expect("rigid"),
                    m: self.rotation_block(),
                }
                .inv()
                .m;
                let t = rot.mul_vec(&self.translation());
                let mut m = Mat::identity(4);
                m.set_block(0, 0, &rot);
                for i in 0..3 {
                    m[(i, 3)] = -t[i];
                }
                m
            }
            GroupId::SL2 => {
                let a = &self.m;
                Mat::from_rows(&[[a[(1, 1)], -a[(0, 1)]], [-a[(1, 0)], a[(0, 0)]]]).scale(T::one() / a.det())
            }
            GroupId::H3 => self.m.inverse().expect("unitriangular"),
        };
        Self { group: self.group, m }
    }

    pub fn dist(&self, other: &Self) -> T {
        self.m.dist(&other.m)
    }

    /// Matrix of Ad_g in the group's fixed algebra basis.
    pub fn adjoint_rep(&self) -> LinearEndo<T> {
        let alg = self.group.algebra::<T>();
        let inv = self.inv().m;
        let n = alg.dim();
        let cols: Vec<Vec<T>> = alg
            .basis()
            .iter()
            .map(|b| alg.coords(&(&(&self.m * b) * &inv)))
            .collect();
        LinearEndo(Mat::from_fn(n, n, |i, j| cols[j][i]))
    }

    /// Matrix of Ad*_g = (Ad_{g⁻¹})ᵀ in dual coordinates.
    pub fn coadjoint_rep(&self) -> LinearEndo<T> {
        LinearEndo(self.inv().adjoint_rep().0.transpose())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = match self.complex_matrix() {
            Some(c) => c
                .iter()
                .map(|r| json!(r.iter().map(|z| [z.re.as_f64(), z.im.as_f64()]).collect::<Vec<_>>()))
                .collect(),
            None => self.m.to_f64_rows().into_iter().map(|r| json!(r)).collect(),
        };
        json!({"group": self.group.name(), "matrix": rows})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(msg.to_string());
        let group: GroupId = v["group"].as_str().ok_or_else(|| bad("missing \"group\""))?.parse()?;
        let rows = v["matrix"].as_array().ok_or_else(|| bad("missing \"matrix\""))?;
        let num = |x: &Value| x.as_f64().ok_or_else(|| bad("matrix entry is not a number"));
        if group == GroupId::SU2 {
            let mut c = [[Complex::default(); 2]; 2];
            if rows.len() != 2 {
                return Err(bad("SU2 matrix must be 2x2"));
            }
            for (i, row) in rows.iter().enumerate() {
                let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(|| bad("SU2 row"))?;
                for (j, z) in row.iter().enumerate() {
                    let pair = z
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| bad("complex entry must be [re, im]"))?;
                    c[i][j] = Complex::new(T::lit(num(&pair[0])?), T::lit(num(&pair[1])?));
                }
            }
            return Self::from_complex(&c);
        }
        let n = group.matrix_size();
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: rows.len(),
            });
        }
        let mut m = Mat::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| bad("matrix row"))?;
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = T::lit(num(x)?);
            }
        }
        Self::new(group, m)
    }
}

/// Coefficients f₁ = Σ cᵐ/(2m+1)!, f₂ = Σ cᵐ/(2m+2)! and f₃ = Σ cᵐ/(2m+3)!
/// for X³ = cX, so that exp X = I + f₁X + f₂X².
pub fn cubic_exp_coeffs<T: Scalar>(c: T) -> (T, T, T) {
    if c.abs() < T::lit(1e-4) {
        let c2 = c * c;
        return (
            T::one() + c / T::lit(6.0) + c2 / T::lit(120.0) + c2 * c / T::lit(5040.0),
            T::half() + c / T::lit(24.0) + c2 / T::lit(720.0) + c2 * c / T::lit(40320.0),
            T::one() / T::lit(6.0) + c / T::lit(120.0) + c2 / T::lit(5040.0) + c2 * c / T::lit(362880.0),
        );
    }
    if c < T::zero() {
        let th = (-c).sqrt();
        let (s, co) = th.sin_cos();
        (s / th, (T::one() - co) / (th * th), (th - s) / (th * th * th))
    } else {
        let g = c.sqrt();
        let (s, co) = (g.sinh(), g.cosh());
        (s / g, (co - T::one()) / (g * g), (s - g) / (g * g * g))
    }
}

/// exp of a 3×3 generator with X³ = (tr X²/2)·X.
pub fn exp_cubic<T: Scalar>(x: &Mat<T>) -> Mat<T> {
    let x2 = x * x;
    let (f1, f2, _) = cubic_exp_coeffs(x2.trace() * T::half());
    &(&Mat::identity(3) + &x.scale(f1)) + &x2.scale(f2)
}

/// Group exponential of algebra coordinates ξ.
pub fn group_exp<T: Scalar>(group: GroupId, xi: &[T]) -> Result<GroupElement<T>> {
    if xi.len() != group.dim() {
        return Err(Error::DimensionMismatch {
            expected: group.dim(),
            got: xi.len(),
        });
    }
    let alg = group.algebra::<T>();
    let x = alg.matrix(xi);
    let m = match group {
        GroupId::SO3 | GroupId::SO21 => exp_cubic(&x),
        GroupId::SE3 | GroupId::SE21 => {
            // exp [[X, v], [0, 0]] = [[exp X, V v], [0, 1]], V = I + f₂X + f₃X²
            let r = x.block(0, 0, 3, 3);
            let r2 = &r * &r;
            let (f1, f2, f3) = cubic_exp_coeffs(r2.trace() * T::half());
            let id = Mat::identity(3);
            let rot = &(&id + &r.scale(f1)) + &r2.scale(f2);
            let v = &(&id + &r.scale(f2)) + &r2.scale(f3);
            let t = v.mul_vec(&xi[3..]);
            let mut m = Mat::identity(4);
            m.set_block(0, 0, &rot);
            for i in 0..3 {
                m[(i, 3)] = t[i];
            }
            m
        }
        GroupId::SU2 => {
            // X² = −|ξ|² 𝕀 on su(2)
            let th = xi.iter().map(|&v| v * v).sum::<T>().sqrt();
            let (f1, _, _) = cubic_exp_coeffs(-th * th);
            &Mat::identity(4).scale(th.cos()) + &x.scale(f1)
        }
        _ => x.expm(),
    };
    let r = membership_residual(group, &m);
    if !(r < drift_tol::<T>()) {
        return Err(Error::NumericalDrift(r.as_f64()));
    }
    Ok(GroupElement { group, m })
}

/// Logarithm of an SO(3) or SO(2,1) element, in algebra coordinates.
/// Fails near the rotation angle π and off the image of exp.
pub fn rotation_log<T: Scalar>(g: &GroupElement<T>) -> Result<Vec<T>> {
    let group = g.group();
    let eta = match group {
        GroupId::SO3 | GroupId::SO21 => group.eta::<T>().expect("pseudo-orthogonal"),
        other => return Err(Error::Unknown(format!("no closed-form log on {other}"))),
    };
    let a = g.matrix();
    let s = (a.trace() - T::one()) * T::half();
    let xs = (a - &(&(&eta * &a.transpose()) * &eta)).scale(T::half());
    let kappa = (&xs * &xs).trace() * T::half();
    let small = T::lit(1e-10);
    let f1 = if kappa.abs() < small {
        if s < T::zero() {
            return Err(Error::ChartOverflow(format!("trace gives cos = {}", s.as_f64())));
        }
        // X_s = f₁ X and κ = f₁² c with c ≈ κ here
        cubic_exp_coeffs(kappa).0
    } else if kappa < T::zero() {
        let th = (-kappa).sqrt().atan2(s);
        if th > T::PI() - T::lit(1e-3) {
            return Err(Error::ChartOverflow(format!(
                "rotation angle {} too close to pi",
                th.as_f64()
            )));
        }
        th.sin() / th
    } else {
        if s < T::zero() {
            return Err(Error::ChartOverflow("not in the image of exp".into()));
        }
        let gam = kappa.sqrt().asinh();
        gam.sinh() / gam
    };
    Ok(group.algebra::<T>().coords(&xs.scale(T::one() / f1)))
}

/// Uniform sample of `exp(ξ)` with ξ uniform in [−scale, scale]ⁿ.
pub fn sample_element<T: Scalar, R: Rng + ?Sized>(group: GroupId, rng: &mut R, scale: f64) -> GroupElement<T> {
    let xi: Vec<T> = (0..group.dim())
        .map(|_| T::lit(rng.gen_range(-scale..=scale)))
        .collect();
    group_exp(group, &xi).expect("small exponentials stay in the group")
}

/// Which bundle product a semidirect element uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// G ⋉_Ad 𝒢: (σ₁, x)(σ₂, y) = (σ₁σ₂, x + Ad_{σ₁} y).
    Adjoint,
    /// G ⋉_Ad* 𝒢*: (σ₁, f)(σ₂, g) = (σ₁σ₂, f + Ad*_{σ₁} g).
    Coadjoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemidirectElement<T> {
    pub sigma: GroupElement<T>,
    pub payload: Vec<T>,
    pub variant: Variant,
}

impl<T: Scalar> SemidirectElement<T> {
    pub fn new(sigma: GroupElement<T>, payload: Vec<T>, variant: Variant) -> Result<Self> {
        let n = sigma.group().dim();
        if payload.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: payload.len(),
            });
        }
        Ok(Self {
            sigma,
            payload,
            variant,
        })
    }

    pub fn identity(group: GroupId, variant: Variant) -> Self {
        Self {
            sigma: GroupElement::identity(group),
            payload: vec![T::zero(); group.dim()],
            variant,
        }
    }

    fn action(&self) -> LinearEndo<T> {
        match self.variant {
            Variant::Adjoint => self.sigma.adjoint_rep(),
            Variant::Coadjoint => self.sigma.coadjoint_rep(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.variant != other.variant {
            return Err(Error::VariantMismatch);
        }
        let sigma = self.sigma.mul(&other.sigma)?;
        let payload = vec_add(&self.payload, &self.action().apply(&other.payload));
        Ok(Self {
            sigma,
            payload,
            variant: self.variant,
        })
    }

    /// (σ, x)⁻¹ = (σ⁻¹, −Act_{σ⁻¹} x).
    pub fn inv(&self) -> Self {
        let sigma = self.sigma.inv();
        let act = Self {
            sigma: sigma.clone(),
            payload: vec![],
            variant: self.variant,
        }
        .action();
        let payload = act.apply(&self.payload).into_iter().map(|v| -v).collect();
        Self {
            sigma,
            payload,
            variant: self.variant,
        }
    }

    pub fn dist(&self, other: &Self) -> T {
        let dp = self
            .payload
            .iter()
            .zip(&other.payload)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()));
        self.sigma.dist(&other.sigma).max(dp)
    }
}

/// exp of (x, f) in the bundle algebra: σ = exp(x), payload = ∫₀¹ exp(t·a_x) f dt,
/// read off the top-right block of exp([[a_x, f], [0, 0]]) where a_x is ad_x
/// or ad*_x.
pub fn semidirect_exp<T: Scalar>(group: GroupId, variant: Variant, x: &[T], f: &[T]) -> Result<SemidirectElement<T>> {
    let n = group.dim();
    if f.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.len(),
        });
    }
    let alg = group.algebra::<T>();
    let a = match variant {
        Variant::Adjoint => alg.algebra().ad_matrix(x)?,
        Variant::Coadjoint => alg.algebra().coad_matrix(x)?,
    };
    let mut big = Mat::zeros(n + 1, n + 1);
    big.set_block(0, 0, a.matrix());
    for i in 0..n {
        big[(i, n)] = f[i];
    }
    let e = big.expm();
    let payload = (0..n).map(|i| e[(i, n)]).collect();
    SemidirectElement::new(group_exp(group, x)?, payload, variant)
}

/// Point of the Heisenberg group in global coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HeisenbergPoint<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> HeisenbergPoint<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    /// (x,y,z)(x′,y′,z′) = (x+x′, y+y′, z+z′+xy′).
    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z + self.x * o.y)
    }

    pub fn inv(&self) -> Self {
        Self::new(-self.x, -self.y, self.x * self.y - self.z)
    }

    /// exp(a e₁ + b e₂ + c e₃) = (a, b, c + ab/2).
    pub fn exp(xi: [T; 3]) -> Self {
        Self::new(xi[0], xi[1], xi[2] + xi[0] * xi[1] * T::half())
    }

    pub fn to_matrix(&self) -> Mat<T> {
        let (o, z) = (T::one(), T::zero());
        Mat::from_rows(&[[o, self.x, self.z], [z, o, self.y], [z, z, o]])
    }

    pub fn from_matrix(m: &Mat<T>) -> Self {
        Self::new(m[(0, 1)], m[(1, 2)], m[(0, 2)])
    }

    pub fn to_element(&self) -> GroupElement<T> {
        GroupElement {
            group: GroupId::H3,
            m: self.to_matrix(),
        }
    }

    /// Left-invariant frame at p in chart coordinates: e₁⁺ = ∂x,
    /// e₂⁺ = ∂y + x∂z, e₃⁺ = ∂z.
    pub fn left_frame(&self) -> [[T; 3]; 3] {
        let (o, z) = (T::one(), T::zero());
        [[o, z, z], [z, o, self.x], [z, z, o]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn group_name_parsing() {
        assert_eq!("so3".parse::<GroupId>().unwrap(), GroupId::SO3);
        assert_eq!("SO(2,1)".parse::<GroupId>().unwrap(), GroupId::SO21);
        assert!("so4".parse::<GroupId>().is_err());
    }

    #[test]
    fn heisenberg_product_law() {
        let p = HeisenbergPoint::new(1.0, 2.0, 3.0).mul(&HeisenbergPoint::new(4.0, 5.0, 6.0));
        assert_eq!(p, HeisenbergPoint::new(5.0, 7.0, 14.0));
        let a = HeisenbergPoint::new(0.3f64, -1.2, 2.5);
        let b = HeisenbergPoint::new(-0.7, 0.4, 1.1);
        let via = HeisenbergPoint::from_matrix(&(&a.to_matrix() * &b.to_matrix()));
        assert_eq!(via, a.mul(&b));
        let e = a.mul(&a.inv());
        assert!(e.x == 0.0 && e.y == 0.0 && e.z.abs() < 1e-15);
    }

    #[test]
    fn heisenberg_exp_matches_matrix_exp() {
        let g = group_exp::<f64>(GroupId::H3, &[0.5, -1.5, 2.0]).unwrap();
        let want = HeisenbergPoint::exp([0.5, -1.5, 2.0]);
        assert!(g.matrix().dist(&want.to_matrix()) < 1e-14);
        assert_eq!(want, HeisenbergPoint::new(0.5, -1.5, 2.0 - 0.375));
    }

    #[test]
    fn so3_exp_quarter_turn() {
        let g = group_exp::<f64>(GroupId::SO3, &[0.0, 0.0, std::f64::consts::FRAC_PI_2]).unwrap();
        let want = Mat::from_rows(&[[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(g.matrix().dist(&want) < 1e-15);
    }

    #[test]
    fn closed_forms_agree_with_expm() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for group in [GroupId::SO3, GroupId::SO21, GroupId::SE3, GroupId::SE21] {
            for _ in 0..20 {
                let xi: Vec<f64> = (0..group.dim()).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let g = group_exp(group, &xi).unwrap();
                let e = group.algebra::<f64>().matrix(&xi).expm();
                assert!(g.matrix().dist(&e) < 1e-12 * e.max_abs().max(1.0), "{group}");
            }
        }
    }

    #[test]
    fn one_parameter_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for group in GroupId::ALL {
            let xi: Vec<f64> = (0..group.dim()).map(|_| rng.gen_range(-0.5..0.5)).collect();
            let (s, t) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let sc = |a: f64| xi.iter().map(|x| x * a).collect::<Vec<_>>();
            let lhs = group_exp(group, &sc(s + t)).unwrap();
            let rhs = group_exp(group, &sc(s))
                .unwrap()
                .mul(&group_exp(group, &sc(t)).unwrap())
                .unwrap();
            assert!(lhs.dist(&rhs) < 1e-10, "{group}");
        }
    }

    #[test]
    fn rotation_log_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for group in [GroupId::SO3, GroupId::SO21] {
            for _ in 0..50 {
                let xi: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let back = rotation_log(&group_exp(group, &xi).unwrap()).unwrap();
                let d = xi.iter().zip(&back).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                assert!(d < 1e-10, "{group} {xi:?} {back:?}");
            }
        }
        let half_turn = group_exp::<f64>(GroupId::SO3, &[std::f64::consts::PI, 0.0, 0.0]).unwrap();
        assert!(matches!(rotation_log(&half_turn), Err(Error::ChartOverflow(_))));
    }

    #[test]
    fn se3_block_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a: GroupElement<f64> = sample_element(GroupId::SE3, &mut rng, 1.0);
        let b: GroupElement<f64> = sample_element(GroupId::SE3, &mut rng, 1.0);
        let ab = a.mul(&b).unwrap();
        assert!(ab.rotation_block().dist(&(&a.rotation_block() * &b.rotation_block())) < 1e-15);
        let t = vec_add(&a.rotation_block().mul_vec(&b.translation()), &a.translation());
        assert!((0..3).all(|i| (ab.translation()[i] - t[i]).abs() < 1e-14));
        assert!(a.mul(&a.inv()).unwrap().dist(&GroupElement::identity(GroupId::SE3)) < 1e-12);
    }

    #[test]
    fn membership_and_mismatch_errors() {
        let bad = Mat::from_diag(&[2.0, 1.0, 1.0]);
        assert!(matches!(
            GroupElement::new(GroupId::SO3, bad),
            Err(Error::NotMember { .. })
        ));
        let a = GroupElement::<f64>::identity(GroupId::SO3);
        let b = GroupElement::<f64>::identity(GroupId::SO21);
        assert!(matches!(a.mul(&b), Err(Error::GroupMismatch { .. })));
    }

    #[test]
    fn adjoint_matches_exp_of_ad() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for group in GroupId::ALL {
            let xi: Vec<f64> = (0..group.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let g = group_exp(group, &xi).unwrap();
            let ad = group.algebra::<f64>().algebra().ad_matrix(&xi).unwrap();
            assert!(g.adjoint_rep().0.dist(&ad.0.expm()) < 1e-10, "{group}");
            assert!(
                GroupElement::<f64>::identity(group)
                    .adjoint_rep()
                    .0
                    .dist(&Mat::identity(group.dim()))
                    < 1e-15
            );
        }
    }

    #[test]
    fn semidirect_identity_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for variant in [Variant::Adjoint, Variant::Coadjoint] {
            let sigma: GroupElement<f64> = sample_element(GroupId::SO3, &mut rng, 1.0);
            let a = SemidirectElement::new(sigma, vec![0.3, -0.2, 1.0], variant).unwrap();
            let e = SemidirectElement::identity(GroupId::SO3, variant);
            assert!(e.mul(&a).unwrap().dist(&a) < 1e-15);
            assert!(a.mul(&a.inv()).unwrap().dist(&e) < 1e-14);
        }
        let a = SemidirectElement::<f64>::identity(GroupId::SO3, Variant::Adjoint);
        let b = SemidirectElement::<f64>::identity(GroupId::SO3, Variant::Coadjoint);
        assert_eq!(a.mul(&b), Err(Error::VariantMismatch));
    }

    #[test]
    fn semidirect_exp_is_one_parameter() {
        let x = [0.4, -0.3, 0.8];
        let f = [1.0, 0.5, -0.2];
        let sc = |v: &[f64], a: f64| v.iter().map(|c| c * a).collect::<Vec<_>>();
        for variant in [Variant::Adjoint, Variant::Coadjoint] {
            let g = |t: f64| semidirect_exp(GroupId::SL2, variant, &sc(&x, t), &sc(&f, t)).unwrap();
            let lhs = g(0.7);
            let rhs = g(0.3).mul(&g(0.4)).unwrap();
            assert!(lhs.dist(&rhs) < 1e-12);
        }
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for group in GroupId::ALL {
            let g: GroupElement<f64> = sample_element(group, &mut rng, 1.0);
            let text = serde_json::to_string(&g.to_json()).unwrap();
            let back = GroupElement::<f64>::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, g, "{group}");
        }
        let su2: GroupElement<f64> = sample_element(GroupId::SU2, &mut rng, 1.0);
        let v = su2.to_json();
        assert!(v["matrix"][0][0].is_array());
    }
}
