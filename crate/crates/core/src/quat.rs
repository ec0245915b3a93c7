//! Quaternions ℍ, split quaternions 𝕊 and their dual extensions.
//!
//! Both four-dimensional algebras implement [`QuatAlgebra`]; the dual
//! versions are the single generic type [`DualOf`]. The product on ℍ is the
//! Hamilton product with `i·j = k`; on 𝕊 it is
//! `QP = q₀p₀ − ⟨q,p⟩ + q₀p + p₀q + q ×ₛ p` with the Lorentz form
//! `⟨q,p⟩ = q_x p_x − q_y p_y − q_z p_z`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Smallest |norm²| accepted by inverses.
pub const INVERSE_GUARD: f64 = 1e-300;
/// Tolerance of unit predicates.
pub const UNIT_TOL: f64 = 1e-12;

pub fn cross<T: Scalar>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn dot3<T: Scalar>(a: [T; 3], b: [T; 3]) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// ⟨a,b⟩ = a_x b_x − a_y b_y − a_z b_z.
pub fn lorentz_dot<T: Scalar>(a: [T; 3], b: [T; 3]) -> T {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2]
}

/// q ×ₛ p = (q_z p_y − q_y p_z, q_z p_x − q_x p_z, q_x p_y − q_y p_x).
pub fn minkowski_cross<T: Scalar>(q: [T; 3], p: [T; 3]) -> [T; 3] {
    [
        q[2] * p[1] - q[1] * p[2],
        q[2] * p[0] - q[0] * p[2],
        q[0] * p[1] - q[1] * p[0],
    ]
}

/// Shared contract of ℍ and 𝕊.
pub trait QuatAlgebra<T: Scalar>:
    Copy
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<Output = Self>
{
    fn new(w: T, x: T, y: T, z: T) -> Self;
    fn components(&self) -> [T; 4];
    /// The algebra's symmetric pairing; `pairing(q, q) = q q*`.
    fn pairing(&self, other: &Self) -> T;

    fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    fn real(w: T) -> Self {
        Self::new(w, T::zero(), T::zero(), T::zero())
    }

    fn pure(v: [T; 3]) -> Self {
        Self::new(T::zero(), v[0], v[1], v[2])
    }

    fn scalar_part(&self) -> T {
        self.components()[0]
    }

    fn vector_part(&self) -> [T; 3] {
        let [_, x, y, z] = self.components();
        [x, y, z]
    }

    fn conj(&self) -> Self {
        let [w, x, y, z] = self.components();
        Self::new(w, -x, -y, -z)
    }

    fn norm2(&self) -> T {
        self.pairing(self)
    }

    fn scale(&self, s: T) -> Self {
        let [w, x, y, z] = self.components();
        Self::new(w * s, x * s, y * s, z * s)
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm2();
        if n.abs() <= T::lit(INVERSE_GUARD) {
            return Err(Error::NonInvertible);
        }
        Ok(self.conj().scale(T::one() / n))
    }

    fn is_unit(&self) -> bool {
        (self.norm2() - T::one()).abs() < T::lit(UNIT_TOL).max(T::epsilon() * T::lit(64.0))
    }

    fn max_abs_diff(&self, other: &Self) -> T {
        let a = self.components();
        let b = other.components();
        (0..4).fold(T::zero(), |m, i| m.max((a[i] - b[i]).abs()))
    }
}

macro_rules! quat_type {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Debug, Clone, Copy, PartialEq, Default)]
        pub struct $name<T> {
            pub w: T,
            pub x: T,
            pub y: T,
            pub z: T,
        }

        impl<T: Scalar> $name<T> {
            pub fn from_array(c: [T; 4]) -> Self {
                Self {
                    w: c[0],
                    x: c[1],
                    y: c[2],
                    z: c[3],
                }
            }
        }

        impl<T: Scalar> Add for $name<T> {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                Self {
                    w: self.w + o.w,
                    x: self.x + o.x,
                    y: self.y + o.y,
                    z: self.z + o.z,
                }
            }
        }

        impl<T: Scalar> Sub for $name<T> {
            type Output = Self;
            fn sub(self, o: Self) -> Self {
                Self {
                    w: self.w - o.w,
                    x: self.x - o.x,
                    y: self.y - o.y,
                    z: self.z - o.z,
                }
            }
        }

        impl<T: Scalar> Neg for $name<T> {
            type Output = Self;
            fn neg(self) -> Self {
                Self {
                    w: -self.w,
                    x: -self.x,
                    y: -self.y,
                    z: -self.z,
                }
            }
        }

        impl<T: Scalar> fmt::Display for $name<T> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{} + {} i + {} j + {} k", self.w, self.x, self.y, self.z)
            }
        }

        impl<T: Scalar> FromStr for $name<T> {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                parse_components(s).map(Self::from_array)
            }
        }
    };
}

quat_type!(Quaternion, "Hamilton quaternion `w + x i + y j + z k`.");
quat_type!(SplitQuaternion, "Split quaternion: i² = −1, j² = k² = 1, ijk = 1.");

fn parse_number<T: Scalar>(s: &str) -> Result<T> {
    s.trim()
        .parse::<T>()
        .map_err(|_| Error::Parse(format!("bad number {s:?}")))
}

fn parse_components<T: Scalar>(s: &str) -> Result<[T; 4]> {
    let parts: Vec<&str> = s.trim().split(" + ").collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("expected 'w + x i + y j + z k', got {s:?}")));
    }
    let mut out = [T::zero(); 4];
    out[0] = parse_number(parts[0])?;
    for (slot, (part, unit)) in parts[1..].iter().zip(["i", "j", "k"]).enumerate() {
        let num = part
            .trim()
            .strip_suffix(unit)
            .ok_or_else(|| Error::Parse(format!("missing unit {unit} in {part:?}")))?;
        out[slot + 1] = parse_number(num)?;
    }
    Ok(out)
}

impl<T: Scalar> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            w: self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            x: self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            y: self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            z: self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        }
    }
}

impl<T: Scalar> QuatAlgebra<T> for Quaternion<T> {
    fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    fn components(&self) -> [T; 4] {
        [self.w, self.x, self.y, self.z]
    }

    fn pairing(&self, o: &Self) -> T {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }
}

impl<T: Scalar> Quaternion<T> {
    /// cos(θ/2) + sin(θ/2) u for a unit axis u.
    pub fn from_axis_angle(axis: [T; 3], angle: T) -> Self {
        let h = angle * T::half();
        let (s, c) = h.sin_cos();
        Self::new(c, axis[0] * s, axis[1] * s, axis[2] * s)
    }

    /// exp of a pure quaternion v: cos|v| + sin|v| v/|v|.
    pub fn exp_pure(v: [T; 3]) -> Self {
        let th = dot3(v, v).sqrt();
        let sinc = if th < T::lit(1e-8) {
            T::one() - th * th / T::lit(6.0)
        } else {
            th.sin() / th
        };
        Self::new(th.cos(), v[0] * sinc, v[1] * sinc, v[2] * sinc)
    }
}

impl<T: Scalar> Mul for SplitQuaternion<T> {
    type Output = Self;
    fn mul(self, p: Self) -> Self {
        let q = self;
        let qv = [q.x, q.y, q.z];
        let pv = [p.x, p.y, p.z];
        let c = minkowski_cross(qv, pv);
        Self {
            w: q.w * p.w - (p.x * q.x - p.y * q.y - p.z * q.z),
            x: q.w * p.x + p.w * q.x + c[0],
            y: q.w * p.y + p.w * q.y + c[1],
            z: q.w * p.z + p.w * q.z + c[2],
        }
    }
}

impl<T: Scalar> QuatAlgebra<T> for SplitQuaternion<T> {
    fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    fn components(&self) -> [T; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// ⟨Q,P⟩ = q₀p₀ + q_x p_x − q_y p_y − q_z p_z.
    fn pairing(&self, o: &Self) -> T {
        self.w * o.w + self.x * o.x - self.y * o.y - self.z * o.z
    }
}

/// Causal type of a pure split quaternion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalType {
    Timelike,
    Lightlike,
    Spacelike,
}

fn lightlike_tol<T: Scalar>(v: [T; 3]) -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(16.0)) * T::one().max(dot3(v, v))
}

/// Timelike if ⟨v,v⟩ > 0, lightlike if ⟨v,v⟩ ≈ 0 with v ≠ 0, spacelike
/// otherwise (including v = 0).
pub fn causal_type<T: Scalar>(v: [T; 3]) -> CausalType {
    let n = lorentz_dot(v, v);
    if v.iter().all(|c| *c == T::zero()) {
        CausalType::Spacelike
    } else if n.abs() < lightlike_tol(v) {
        CausalType::Lightlike
    } else if n > T::zero() {
        CausalType::Timelike
    } else {
        CausalType::Spacelike
    }
}

/// Exponential of a pure split quaternion, by causal branch.
pub fn split_exp<T: Scalar>(v: [T; 3]) -> SplitQuaternion<T> {
    let n = lorentz_dot(v, v);
    if n.abs() < lightlike_tol(v) {
        return SplitQuaternion::new(T::one(), v[0], v[1], v[2]);
    }
    let (c, s_over) = if n > T::zero() {
        let th = n.sqrt();
        (th.cos(), th.sin() / th)
    } else {
        let g = (-n).sqrt();
        (g.cosh(), g.sinh() / g)
    };
    SplitQuaternion::new(c, v[0] * s_over, v[1] * s_over, v[2] * s_over)
}

/// Truncated power series Σ_{k<terms} vᵏ/k!, used as an independent check.
pub fn split_exp_series<T: Scalar>(v: [T; 3], terms: usize) -> SplitQuaternion<T> {
    let vq = SplitQuaternion::pure(v);
    let mut term = SplitQuaternion::one();
    let mut acc = term;
    for k in 1..terms {
        term = (term * vq).scale(T::one() / T::lit(k as f64));
        acc = acc + term;
    }
    acc
}

/// Dual number a + 𝔢b with 𝔢² = 0.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualNumber<T> {
    pub re: T,
    pub du: T,
}

impl<T: Scalar> DualNumber<T> {
    pub fn new(re: T, du: T) -> Self {
        Self { re, du }
    }
}

impl<T: Scalar> Mul for DualNumber<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self {
            re: self.re * o.re,
            du: self.re * o.du + self.du * o.re,
        }
    }
}

impl<T: Scalar> Add for DualNumber<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            re: self.re + o.re,
            du: self.du + o.du,
        }
    }
}

/// Dual extension Q_r + 𝔢Q_d of a quaternionic algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualOf<Q> {
    pub re: Q,
    pub du: Q,
}

pub type DualQuaternion<T> = DualOf<Quaternion<T>>;
pub type DualSplitQuaternion<T> = DualOf<SplitQuaternion<T>>;

impl<Q> DualOf<Q> {
    pub fn new(re: Q, du: Q) -> Self {
        Self { re, du }
    }
}

impl<Q> DualOf<Q> {
    pub fn one<T: Scalar>() -> Self
    where
        Q: QuatAlgebra<T>,
    {
        Self::new(Q::one(), Q::zero())
    }

    pub fn conj<T: Scalar>(&self) -> Self
    where
        Q: QuatAlgebra<T>,
    {
        Self::new(self.re.conj(), self.du.conj())
    }

    /// ‖Q̂‖² = ⟨Q_r,Q_r⟩ + 2𝔢⟨Q_r,Q_d⟩.
    pub fn norm2<T: Scalar>(&self) -> DualNumber<T>
    where
        Q: QuatAlgebra<T>,
    {
        DualNumber::new(self.re.norm2(), T::two() * self.re.pairing(&self.du))
    }

    pub fn is_unit<T: Scalar>(&self) -> bool
    where
        Q: QuatAlgebra<T>,
    {
        let n = self.norm2();
        let tol = T::lit(UNIT_TOL).max(T::epsilon() * T::lit(64.0));
        (n.re - T::one()).abs() < tol && n.du.abs() < tol
    }

    /// Q_r⁻¹ − 𝔢(Q_r⁻¹ Q_d Q_r⁻¹).
    pub fn inv<T: Scalar>(&self) -> Result<Self>
    where
        Q: QuatAlgebra<T>,
    {
        let ri = self.re.inv()?;
        Ok(Self::new(ri, -(ri * self.du * ri)))
    }

    pub fn max_abs_diff<T: Scalar>(&self, other: &Self) -> T
    where
        Q: QuatAlgebra<T>,
    {
        self.re.max_abs_diff(&other.re).max(self.du.max_abs_diff(&other.du))
    }

    /// Q + 𝔢(uQ) for a unit Q and a translation u.
    pub fn from_pose<T: Scalar>(q: Q, u: [T; 3]) -> Result<Self>
    where
        Q: QuatAlgebra<T>,
    {
        if !q.is_unit() {
            return Err(Error::NonUnit(q.norm2().as_f64()));
        }
        Ok(Self::new(q, Q::pure(u) * q))
    }

    /// Translation u = vec(Q_d Q_r⁻¹) of a unit element Q + 𝔢(uQ).
    pub fn translation<T: Scalar>(&self) -> Result<[T; 3]>
    where
        Q: QuatAlgebra<T>,
    {
        Ok((self.du * self.re.inv()?).vector_part())
    }
}

impl<Q: Copy + Mul<Output = Q> + Add<Output = Q>> Mul for DualOf<Q> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re, self.re * o.du + self.du * o.re)
    }
}

/// Q + 𝔢(uQ); fails unless ‖Q‖² = 1.
pub fn unit_dq_from_pose<T: Scalar>(q: Quaternion<T>, u: [T; 3]) -> Result<DualQuaternion<T>> {
    DualOf::from_pose(q, u)
}

impl<Q: fmt::Display> fmt::Display for DualOf<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + e({})", self.re, self.du)
    }
}

impl<Q: FromStr<Err = Error>> FromStr for DualOf<Q> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (re, rest) = s
            .split_once(" + e(")
            .ok_or_else(|| Error::Parse(format!("expected 'Qr + e(Qd)', got {s:?}")))?;
        let du = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unclosed dual part in {s:?}")))?;
        Ok(Self::new(re.parse()?, du.parse()?))
    }
}
