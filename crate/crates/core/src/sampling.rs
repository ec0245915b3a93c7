//! Seeded random sources and samplers for the quaternionic groups.
//!
//! Trial `k` of a run with seed `s` draws from ChaCha8 stream `k` of seed
//! `s`, so trials reproduce regardless of evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quat::{split_exp, DualOf, QuatAlgebra, Quaternion, SplitQuaternion};
use crate::scalar::Scalar;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn uniform_vec<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<T> {
    (0..n).map(|_| T::lit(rng.gen_range(lo..hi))).collect()
}

pub fn uniform3<T: Scalar, R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> [T; 3] {
    [
        T::lit(rng.gen_range(lo..hi)),
        T::lit(rng.gen_range(lo..hi)),
        T::lit(rng.gen_range(lo..hi)),
    ]
}

/// Uniform on the unit sphere S³ (rejection from the cube).
pub fn unit_quaternion<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Quaternion<T> {
    loop {
        let v: [f64; 4] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return Quaternion::new(T::lit(v[0] / n), T::lit(v[1] / n), T::lit(v[2] / n), T::lit(v[3] / n));
        }
    }
}

/// ±exp(v) with v uniform in [−1, 1]³.
pub fn unit_split_quaternion<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> SplitQuaternion<T> {
    let q = split_exp(uniform3::<T, _>(rng, -1.0, 1.0));
    if rng.gen_bool(0.5) {
        q
    } else {
        -q
    }
}

pub fn unit_dual_quaternion<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> DualOf<Quaternion<T>> {
    let q = unit_quaternion(rng);
    DualOf::from_pose(q, uniform3(rng, -2.0, 2.0)).expect("unit real part")
}

pub fn unit_dual_split_quaternion<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> DualOf<SplitQuaternion<T>> {
    let q = unit_split_quaternion(rng);
    DualOf::from_pose(q, uniform3(rng, -2.0, 2.0)).expect("unit real part")
}

/// Arbitrary (not necessarily unit) element with components in [−2, 2].
pub fn any_quat<T: Scalar, Q: QuatAlgebra<T>, R: Rng + ?Sized>(rng: &mut R) -> Q {
    let v = uniform_vec::<T, _>(rng, 4, -2.0, 2.0);
    Q::new(v[0], v[1], v[2], v[3])
}
