//! Covering maps and isomorphisms between the quaternionic groups, the
//! rigid-motion groups and the trivialized (co)tangent bundles, plus a
//! seeded homomorphism-residual harness.

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groups::{c2x2_mul, sample_element, C2x2, Complex, GroupElement, GroupId, SemidirectElement, Variant};
use crate::lie::{builtin, BilinearForm, Covector, LieAlgebra};
use crate::linalg::Mat;
use crate::quat::{DualQuaternion, DualSplitQuaternion, QuatAlgebra, Quaternion, SplitQuaternion};
use crate::sampling::{self, trial_rng};
use crate::scalar::Scalar;

pub use crate::lie::builtin::{hat_cross as hat_f, hat_minkowski as hat_h};

/// Inverse of [`hat_f`]: the vector x with F(x) = m.
pub fn vee_f<T: Scalar>(m: &Mat<T>) -> [T; 3] {
    [m[(2, 1)], m[(0, 2)], m[(1, 0)]]
}

/// Inverse of [`hat_h`]: the vector n with H(n) = m.
pub fn vee_h<T: Scalar>(m: &Mat<T>) -> [T; 3] {
    [m[(2, 1)], -m[(0, 2)], m[(0, 1)]]
}

/// ψ(w + xi + yj + zk) = wI + xX₁ + yX₂ + zX₃ with X₁ = diag(−i, i),
/// X₂ = E₂₁ − E₁₂, X₃ = i(E₁₂ + E₂₁).
pub fn psi<T: Scalar>(q: &Quaternion<T>) -> C2x2<T> {
    [
        [Complex::new(q.w, -q.x), Complex::new(-q.y, q.z)],
        [Complex::new(q.y, q.z), Complex::new(q.w, q.x)],
    ]
}

/// ψ with the sign of X₂ flipped; not a homomorphism.
pub fn psi_corrupted<T: Scalar>(q: &Quaternion<T>) -> C2x2<T> {
    psi(&Quaternion::new(q.w, q.x, -q.y, q.z))
}

/// Inverse of ψ on its image.
pub fn psi_inv<T: Scalar>(c: &C2x2<T>) -> Quaternion<T> {
    Quaternion::new(c[0][0].re, -c[0][0].im, c[1][0].re, c[1][0].im)
}

pub fn psi_element<T: Scalar>(q: &Quaternion<T>) -> Result<GroupElement<T>> {
    unit_check(q)?;
    GroupElement::from_complex(&psi(q))
}

fn unit_check<T: Scalar, Q: QuatAlgebra<T>>(q: &Q) -> Result<()> {
    if q.is_unit() {
        Ok(())
    } else {
        Err(Error::NonUnit(q.norm2().as_f64()))
    }
}

/// Matrix of u ↦ QuQ⁻¹ for a unit quaternion.
pub fn rot3<T: Scalar>(q: &Quaternion<T>) -> Result<GroupElement<T>> {
    unit_check(q)?;
    let Quaternion { w, x, y, z } = *q;
    let two = T::two();
    let m = Mat::from_rows(&[
        [
            w * w + x * x - y * y - z * z,
            two * (x * y - w * z),
            two * (x * z + w * y),
        ],
        [
            two * (x * y + w * z),
            w * w - x * x + y * y - z * z,
            two * (y * z - w * x),
        ],
        [
            two * (x * z - w * y),
            two * (y * z + w * x),
            w * w - x * x - y * y + z * z,
        ],
    ]);
    GroupElement::new(GroupId::SO3, m)
}

/// Π(Q + 𝔢(uQ)) = (R_Q, u).
pub fn pi_cover<T: Scalar>(d: &DualQuaternion<T>) -> Result<GroupElement<T>> {
    if !d.is_unit() {
        return Err(Error::NonUnit(d.norm2().re.as_f64()));
    }
    let rot = rot3(&d.re)?;
    GroupElement::rigid(GroupId::SE3, rot.matrix(), d.translation()?)
}

/// ω(w + xi + yj + zk) = wI + x(E₁₂−E₂₁) + y(E₁₂+E₂₁) + z(E₁₁−E₂₂).
pub fn omega<T: Scalar>(q: &SplitQuaternion<T>) -> Mat<T> {
    Mat::from_rows(&[[q.w + q.z, q.x + q.y], [q.y - q.x, q.w - q.z]])
}

pub fn omega_inv<T: Scalar>(m: &Mat<T>) -> SplitQuaternion<T> {
    let h = T::half();
    SplitQuaternion::new(
        h * (m[(0, 0)] + m[(1, 1)]),
        h * (m[(0, 1)] - m[(1, 0)]),
        h * (m[(0, 1)] + m[(1, 0)]),
        h * (m[(0, 0)] - m[(1, 1)]),
    )
}

pub fn omega_element<T: Scalar>(q: &SplitQuaternion<T>) -> Result<GroupElement<T>> {
    unit_check(q)?;
    GroupElement::new(GroupId::SL2, omega(q))
}

/// Matrix of v ↦ QvQ⁻¹ on pure split quaternions, basis (i, j, k).
pub fn rot21<T: Scalar>(q: &SplitQuaternion<T>) -> Result<GroupElement<T>> {
    unit_check(q)?;
    let qi = q.inv()?;
    let mut m = Mat::zeros(3, 3);
    for c in 0..3 {
        let mut e = [T::zero(); 3];
        e[c] = T::one();
        let img = (*q * SplitQuaternion::pure(e) * qi).vector_part();
        for r in 0..3 {
            m[(r, c)] = img[r];
        }
    }
    GroupElement::new(GroupId::SO21, m)
}

/// Minkowski rigid motion of a unit dual split quaternion Q + 𝔢(uQ).
pub fn pi_cover_split<T: Scalar>(d: &DualSplitQuaternion<T>) -> Result<GroupElement<T>> {
    if !d.is_unit() {
        return Err(Error::NonUnit(d.norm2().re.as_f64()));
    }
    let rot = rot21(&d.re)?;
    GroupElement::rigid(GroupId::SE21, rot.matrix(), d.translation()?)
}

/// Basis E₁ = E₁₂+E₂₁, E₂ = −(E₁₃+E₃₁), E₃ = E₃₂−E₂₃ of so(2,1).
pub fn so21_e_basis<T: Scalar>() -> Vec<Mat<T>> {
    let e = |i: usize| {
        let mut n = [T::zero(); 3];
        n[i] = T::one();
        hat_h(&n)
    };
    vec![e(2), e(1), e(0)]
}

fn f_basis<T: Scalar>() -> [Mat<T>; 3] {
    let r5 = T::lit(5f64.sqrt());
    let l = T::lit;
    [
        Mat::from_rows(&[[r5 / l(4.0), l(-0.5)], [l(0.125), -r5 / l(4.0)]]),
        Mat::from_rows(&[[l(0.0), l(-1.0)], [l(-0.25), l(0.0)]]),
        Mat::from_rows(&[[l(0.25), -r5 / l(2.0)], [r5 / l(8.0), l(-0.25)]]),
    ]
}

/// The Lie algebra isomorphism so(2,1) → sl(2,ℝ), on coordinates in (E₁, E₂, E₃).
pub fn f_iso<T: Scalar>(x: [T; 3]) -> Mat<T> {
    let b = f_basis::<T>();
    &(&b[0].scale(x[0]) + &b[1].scale(x[1])) + &b[2].scale(x[2])
}

/// 3×3 matrix of f from (E₁,E₂,E₃) to the sl(2,ℝ) basis (e₁,e₂,e₃).
pub fn f_iso_matrix<T: Scalar>() -> Mat<T> {
    let sl2 = builtin::sl2_matrices::<T>();
    let cols: Vec<Vec<T>> = f_basis::<T>().iter().map(|m| sl2.coords(m)).collect();
    Mat::from_fn(3, 3, |r, c| cols[c][r])
}

/// Θ(x) = B(x, ·) for a nondegenerate form B.
#[derive(Debug, Clone)]
pub struct Theta<T> {
    form: BilinearForm<T>,
    inv: Mat<T>,
}

impl<T: Scalar> Theta<T> {
    pub fn new(form: BilinearForm<T>) -> Result<Self> {
        if form.is_degenerate() {
            return Err(Error::Degenerate("Theta needs a nondegenerate form".into()));
        }
        let inv = form.matrix().inverse()?;
        Ok(Self { form, inv })
    }

    /// Also requires ad-invariance on `alg` (residual < 1e-10).
    pub fn biinvariant(alg: &LieAlgebra<T>, form: BilinearForm<T>) -> Result<Self> {
        let r = alg.ad_invariance_residual(&form)?;
        if !(r < T::lit(1e-10)) {
            return Err(Error::Degenerate(format!(
                "form is not ad-invariant (residual {})",
                r.as_f64()
            )));
        }
        Self::new(form)
    }

    pub fn form(&self) -> &BilinearForm<T> {
        &self.form
    }

    pub fn flat(&self, x: &[T]) -> Covector<T> {
        Covector(self.form.matrix().mul_vec(x))
    }

    pub fn sharp(&self, f: &Covector<T>) -> Vec<T> {
        self.inv.mul_vec(f.components())
    }

    /// ‖Θ(Ad_g x) − Ad*_g Θ(x)‖_max.
    pub fn equivariance_residual(&self, g: &GroupElement<T>, x: &[T]) -> T {
        let lhs = self.flat(&g.adjoint_rep().apply(x));
        let rhs = g.coadjoint_rep().apply(self.flat(x).components());
        lhs.0
            .iter()
            .zip(&rhs)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }
}

pub fn theta_flat<T: Scalar>(b: &BilinearForm<T>, x: &[T]) -> Result<Covector<T>> {
    Ok(Theta::new(b.clone())?.flat(x))
}

pub fn theta_sharp<T: Scalar>(b: &BilinearForm<T>, f: &Covector<T>) -> Result<Vec<T>> {
    Ok(Theta::new(b.clone())?.sharp(f))
}

/// Θ on so(3) and so(2,1): the Killing form.
pub fn killing_theta<T: Scalar>(group: GroupId) -> Theta<T> {
    Theta::new(group.algebra::<T>().algebra().killing_form()).expect("semisimple")
}

/// Θ on su(2): the complex trace form tr(MN), equal to −2𝕀 in (X₁, X₂, X₃).
pub fn su2_trace_theta<T: Scalar>() -> Theta<T> {
    let alg = builtin::su2_matrices::<T>();
    let b = alg.basis();
    // the realified trace doubles the real part of the complex trace
    let m = Mat::from_fn(3, 3, |i, j| (&b[i] * &b[j]).trace() * T::half());
    Theta::new(BilinearForm::new(m)).expect("nondegenerate")
}

fn expect_variant<T: Scalar>(a: &SemidirectElement<T>, group: GroupId, variant: Variant) -> Result<()> {
    if a.variant != variant {
        return Err(Error::VariantMismatch);
    }
    if a.sigma.group() != group {
        return Err(Error::GroupMismatch {
            left: a.sigma.group().name().to_string(),
            right: group.name().to_string(),
        });
    }
    Ok(())
}

/// T(σ, f) = (σ, F⁻¹(Θ⁻¹ f)) from SO(3) ⋉ so(3)* to SE(3).
pub fn t_iso<T: Scalar>(a: &SemidirectElement<T>) -> Result<GroupElement<T>> {
    expect_variant(a, GroupId::SO3, Variant::Coadjoint)?;
    let x = killing_theta::<T>(GroupId::SO3).sharp(&Covector(a.payload.clone()));
    let v = vee_f(&GroupId::SO3.algebra::<T>().matrix(&x));
    GroupElement::rigid(GroupId::SE3, a.sigma.matrix(), v)
}

pub fn t_iso_inv<T: Scalar>(g: &GroupElement<T>) -> Result<SemidirectElement<T>> {
    if g.group() != GroupId::SE3 {
        return Err(Error::GroupMismatch {
            left: g.group().name().into(),
            right: "SE3".into(),
        });
    }
    let alg = GroupId::SO3.algebra::<T>();
    let x = alg.coords(&hat_f(&g.translation()));
    let f = killing_theta::<T>(GroupId::SO3).flat(&x);
    SemidirectElement::new(
        GroupElement::new(GroupId::SO3, g.rotation_block())?,
        f.0,
        Variant::Coadjoint,
    )
}

/// T′(σ, f) = (σ, H⁻¹(Θ⁻¹ f)) from SO(2,1) ⋉ so(2,1)* to SE(2,1).
pub fn tprime_iso<T: Scalar>(a: &SemidirectElement<T>) -> Result<GroupElement<T>> {
    expect_variant(a, GroupId::SO21, Variant::Coadjoint)?;
    let x = killing_theta::<T>(GroupId::SO21).sharp(&Covector(a.payload.clone()));
    let n = vee_h(&GroupId::SO21.algebra::<T>().matrix(&x));
    GroupElement::rigid(GroupId::SE21, a.sigma.matrix(), n)
}

pub fn tprime_iso_inv<T: Scalar>(g: &GroupElement<T>) -> Result<SemidirectElement<T>> {
    if g.group() != GroupId::SE21 {
        return Err(Error::GroupMismatch {
            left: g.group().name().into(),
            right: "SE21".into(),
        });
    }
    let alg = GroupId::SO21.algebra::<T>();
    let x = alg.coords(&hat_h(&g.translation()));
    let f = killing_theta::<T>(GroupId::SO21).flat(&x);
    SemidirectElement::new(
        GroupElement::new(GroupId::SO21, g.rotation_block())?,
        f.0,
        Variant::Coadjoint,
    )
}

/// S(σ)x = F⁻¹(σF(x)σ⁻¹) as a 3×3 matrix.
pub fn s_automorphism<T: Scalar>(sigma: &GroupElement<T>) -> Mat<T> {
    conj_matrix(sigma, hat_f, vee_f)
}

/// U(σ)x = H⁻¹(σH(x)σ⁻¹) as a 3×3 matrix.
pub fn u_automorphism<T: Scalar>(sigma: &GroupElement<T>) -> Mat<T> {
    conj_matrix(sigma, hat_h, vee_h)
}

fn conj_matrix<T: Scalar>(sigma: &GroupElement<T>, hat: fn(&[T]) -> Mat<T>, vee: fn(&Mat<T>) -> [T; 3]) -> Mat<T> {
    let s = sigma.matrix();
    let si = sigma.inv();
    let mut m = Mat::zeros(3, 3);
    for c in 0..3 {
        let mut e = [T::zero(); 3];
        e[c] = T::one();
        let img = vee(&(&(s * &hat(&e)) * si.matrix()));
        for r in 0..3 {
            m[(r, c)] = img[r];
        }
    }
    m
}

/// φ̄(Q + 𝔢(uQ)) = (ψ(Q), Θ(ψ(u))) in SU(2) ⋉ su(2)*.
pub fn phibar<T: Scalar>(d: &DualQuaternion<T>) -> Result<SemidirectElement<T>> {
    if !d.is_unit() {
        return Err(Error::NonUnit(d.norm2().re.as_f64()));
    }
    let sigma = psi_element(&d.re)?;
    let u = d.translation()?;
    let alg = GroupId::SU2.algebra::<T>();
    let x = alg.coords(&crate::groups::realify_c2x2(&psi(&Quaternion::pure(u))));
    SemidirectElement::new(sigma, su2_trace_theta().flat(&x).0, Variant::Coadjoint)
}

pub fn phibar_inv<T: Scalar>(a: &SemidirectElement<T>) -> Result<DualQuaternion<T>> {
    expect_variant(a, GroupId::SU2, Variant::Coadjoint)?;
    let q = psi_inv(&a.sigma.complex_matrix().expect("SU2"));
    let x = su2_trace_theta::<T>().sharp(&Covector(a.payload.clone()));
    let alg = GroupId::SU2.algebra::<T>();
    let u = psi_inv(&crate::groups::complexify_c2x2(&alg.matrix(&x))).vector_part();
    crate::quat::DualOf::from_pose(q, u)
}

/// 𝔭(Q + 𝔢(uQ)) = (ω(Q), ω(u)) in SL(2,ℝ) ⋉_Ad sl(2,ℝ).
pub fn p_iso<T: Scalar>(d: &DualSplitQuaternion<T>) -> Result<SemidirectElement<T>> {
    if !d.is_unit() {
        return Err(Error::NonUnit(d.norm2().re.as_f64()));
    }
    let sigma = omega_element(&d.re)?;
    let u = d.translation()?;
    let x = GroupId::SL2.algebra::<T>().coords(&omega(&SplitQuaternion::pure(u)));
    SemidirectElement::new(sigma, x, Variant::Adjoint)
}

pub fn p_iso_inv<T: Scalar>(a: &SemidirectElement<T>) -> Result<DualSplitQuaternion<T>> {
    expect_variant(a, GroupId::SL2, Variant::Adjoint)?;
    let q = omega_inv(a.sigma.matrix());
    let u = omega_inv(&GroupId::SL2.algebra::<T>().matrix(&a.payload)).vector_part();
    crate::quat::DualOf::from_pose(q, u)
}

/// Φ(σ, x) = (σ, Θ(x)) from G ⋉_Ad 𝒢 to G ⋉_Ad* 𝒢*.
pub fn phi_tg_to_tstarg<T: Scalar>(theta: &Theta<T>, a: &SemidirectElement<T>) -> Result<SemidirectElement<T>> {
    if a.variant != Variant::Adjoint {
        return Err(Error::VariantMismatch);
    }
    SemidirectElement::new(a.sigma.clone(), theta.flat(&a.payload).0, Variant::Coadjoint)
}

pub fn phi_tg_to_tstarg_inv<T: Scalar>(theta: &Theta<T>, a: &SemidirectElement<T>) -> Result<SemidirectElement<T>> {
    if a.variant != Variant::Coadjoint {
        return Err(Error::VariantMismatch);
    }
    SemidirectElement::new(
        a.sigma.clone(),
        theta.sharp(&Covector(a.payload.clone())),
        Variant::Adjoint,
    )
}

/// A map under test: how to sample, multiply on both sides, evaluate and
/// measure codomain distance.
pub trait MapDescriptor: Send + Sync {
    fn name(&self) -> &str;
    /// ‖map(ab) − map(a)map(b)‖_max for one random pair.
    fn trial(&self, rng: &mut ChaCha8Rng) -> f64;
    /// Codomain membership residual of the image of one random sample.
    fn membership(&self, rng: &mut ChaCha8Rng) -> f64;
}

type Sampler<D> = Box<dyn Fn(&mut ChaCha8Rng) -> D + Send + Sync>;
type BinOp<X> = Box<dyn Fn(&X, &X) -> X + Send + Sync>;
type EvalFn<D, C> = Box<dyn Fn(&D) -> Result<C> + Send + Sync>;
type DistFn<X> = Box<dyn Fn(&X, &X) -> f64 + Send + Sync>;
type MemberFn<X> = Box<dyn Fn(&X) -> f64 + Send + Sync>;

/// Closure-backed [`MapDescriptor`].
pub struct Hom<D, C> {
    pub name: String,
    pub sample: Sampler<D>,
    pub dmul: BinOp<D>,
    pub eval: EvalFn<D, C>,
    pub cmul: BinOp<C>,
    pub dist: DistFn<C>,
    pub member: MemberFn<C>,
}

impl<D, C> MapDescriptor for Hom<D, C> {
    fn name(&self) -> &str {
        &self.name
    }

    fn trial(&self, rng: &mut ChaCha8Rng) -> f64 {
        let a = (self.sample)(rng);
        let b = (self.sample)(rng);
        let ab = (self.dmul)(&a, &b);
        match ((self.eval)(&ab), (self.eval)(&a), (self.eval)(&b)) {
            (Ok(fab), Ok(fa), Ok(fb)) => (self.dist)(&fab, &(self.cmul)(&fa, &fb)),
            _ => f64::INFINITY,
        }
    }

    fn membership(&self, rng: &mut ChaCha8Rng) -> f64 {
        let a = (self.sample)(rng);
        (self.eval)(&a).map(|c| (self.member)(&c)).unwrap_or(f64::INFINITY)
    }
}

/// Max residual over `trials` pairs; trial k uses stream k of `seed`.
pub fn hom_residual(map: &dyn MapDescriptor, trials: usize, seed: u64) -> f64 {
    (0..trials.max(1) as u64)
        .map(|k| map.trial(&mut trial_rng(seed, k)))
        .fold(0.0, f64::max)
}

/// Max codomain membership residual over `trials` samples.
pub fn membership_scan(map: &dyn MapDescriptor, trials: usize, seed: u64) -> f64 {
    (0..trials.max(1) as u64)
        .map(|k| map.membership(&mut trial_rng(seed ^ 0x9e37_79b9, k)))
        .fold(0.0, f64::max)
}

fn c2_dist(a: &C2x2<f64>, b: &C2x2<f64>) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m
                .max((a[i][j].re - b[i][j].re).abs())
                .max((a[i][j].im - b[i][j].im).abs());
        }
    }
    m
}

fn group_hom(
    name: &str,
    sample: Sampler<GroupElement<f64>>,
    eval: EvalFn<GroupElement<f64>, GroupElement<f64>>,
) -> Box<dyn MapDescriptor> {
    Box::new(Hom {
        name: name.to_string(),
        sample,
        dmul: Box::new(|a: &GroupElement<f64>, b: &GroupElement<f64>| a.mul(b).expect("same group")),
        eval,
        cmul: Box::new(|a: &GroupElement<f64>, b: &GroupElement<f64>| a.mul(b).expect("same group")),
        dist: Box::new(|a: &GroupElement<f64>, b: &GroupElement<f64>| a.dist(b)),
        member: Box::new(|c: &GroupElement<f64>| c.residual()),
    })
}

fn semidirect_sampler(group: GroupId, variant: Variant) -> Sampler<SemidirectElement<f64>> {
    Box::new(move |rng| {
        let sigma = sample_element(group, rng, 1.5);
        let payload = sampling::uniform_vec(rng, group.dim(), -2.0, 2.0);
        SemidirectElement::new(sigma, payload, variant).expect("dims")
    })
}

fn semi_mul() -> BinOp<SemidirectElement<f64>> {
    Box::new(|a: &SemidirectElement<f64>, b: &SemidirectElement<f64>| a.mul(b).expect("same variant"))
}

fn semi_dist() -> DistFn<SemidirectElement<f64>> {
    Box::new(|a: &SemidirectElement<f64>, b: &SemidirectElement<f64>| a.dist(b))
}

/// Names accepted by [`map_by_name`].
pub const MAP_NAMES: [&str; 13] = [
    "identity-so3",
    "psi",
    "psi-corrupted",
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

/// The registry of maps checked by `iso-verify` and the acceptance suite.
pub fn map_by_name(name: &str) -> Result<Box<dyn MapDescriptor>> {
    let quat_sampler: Sampler<Quaternion<f64>> = Box::new(sampling::unit_quaternion);
    let quat_mul: BinOp<Quaternion<f64>> = Box::new(|a: &Quaternion<f64>, b: &Quaternion<f64>| *a * *b);
    let split_sampler: Sampler<SplitQuaternion<f64>> = Box::new(sampling::unit_split_quaternion);
    let split_mul: BinOp<SplitQuaternion<f64>> = Box::new(|a: &SplitQuaternion<f64>, b: &SplitQuaternion<f64>| *a * *b);
    let ge_mul: BinOp<GroupElement<f64>> =
        Box::new(|a: &GroupElement<f64>, b: &GroupElement<f64>| a.mul(b).expect("same group"));
    let ge_dist = || Box::new(|a: &GroupElement<f64>, b: &GroupElement<f64>| a.dist(b));
    let ge_member = || Box::new(|c: &GroupElement<f64>| c.residual());
    let c2_hom = |name: &str,
                  f: fn(&Quaternion<f64>) -> C2x2<f64>,
                  sample: Sampler<Quaternion<f64>>,
                  dmul: BinOp<Quaternion<f64>>|
     -> Box<dyn MapDescriptor> {
        Box::new(Hom {
            name: name.to_string(),
            sample,
            dmul,
            eval: Box::new(move |q: &Quaternion<f64>| Ok(f(q))),
            cmul: Box::new(|a: &C2x2<f64>, b: &C2x2<f64>| c2x2_mul(a, b)),
            dist: Box::new(c2_dist),
            member: Box::new(|c: &C2x2<f64>| {
                GroupElement::<f64>::from_complex(c)
                    .map(|g| g.residual())
                    .unwrap_or(f64::INFINITY)
            }),
        })
    };
    Ok(match name {
        "identity-so3" => group_hom(
            name,
            Box::new(|rng| sample_element(GroupId::SO3, rng, 3.0)),
            Box::new(|g: &GroupElement<f64>| Ok(g.clone())),
        ),
        "psi" => c2_hom(name, psi, quat_sampler, quat_mul),
        "psi-corrupted" => c2_hom(name, psi_corrupted, quat_sampler, quat_mul),
        "rot3" => Box::new(Hom {
            name: name.into(),
            sample: quat_sampler,
            dmul: quat_mul,
            eval: Box::new(|q: &Quaternion<f64>| rot3(q)),
            cmul: ge_mul,
            dist: ge_dist(),
            member: ge_member(),
        }),
        "pi" => Box::new(Hom {
            name: name.into(),
            sample: Box::new(sampling::unit_dual_quaternion),
            dmul: Box::new(|a: &DualQuaternion<f64>, b: &DualQuaternion<f64>| *a * *b),
            eval: Box::new(|d: &DualQuaternion<f64>| pi_cover(d)),
            cmul: ge_mul,
            dist: ge_dist(),
            member: ge_member(),
        }),
        "omega" => Box::new(Hom {
            name: name.into(),
            sample: split_sampler,
            dmul: split_mul,
            eval: Box::new(|q: &SplitQuaternion<f64>| omega_element(q)),
            cmul: ge_mul,
            dist: ge_dist(),
            member: ge_member(),
        }),
        "rot21" => Box::new(Hom {
            name: name.into(),
            sample: split_sampler,
            dmul: split_mul,
            eval: Box::new(|q: &SplitQuaternion<f64>| rot21(q)),
            cmul: ge_mul,
            dist: ge_dist(),
            member: ge_member(),
        }),
        "f" => {
            // bracket preservation: the "product" is the Lie bracket
            let e_alg =
                crate::lie::MatrixAlgebra::new(vec!["E1".into(), "E2".into(), "E3".into()], so21_e_basis::<f64>())?;
            Box::new(Hom {
                name: name.into(),
                sample: Box::new(|rng| sampling::uniform3::<f64, _>(rng, -2.0, 2.0)),
                dmul: Box::new(move |a: &[f64; 3], b: &[f64; 3]| {
                    let v = e_alg.algebra().bracket(a, b).expect("dims");
                    [v[0], v[1], v[2]]
                }),
                eval: Box::new(|x: &[f64; 3]| Ok(f_iso(*x))),
                cmul: Box::new(|a: &Mat<f64>, b: &Mat<f64>| a.commutator(b)),
                dist: Box::new(|a: &Mat<f64>, b: &Mat<f64>| a.dist(b)),
                member: Box::new(|m: &Mat<f64>| m.trace().abs()),
            })
        }
        "T" => Box::new(Hom {
            name: name.into(),
            sample: semidirect_sampler(GroupId::SO3, Variant::Coadjoint),
            dmul: semi_mul(),
            eval: Box::new(|a: &SemidirectElement<f64>| t_iso(a)),
            cmul: ge_mul,
            dist: ge_dist(),
            member: ge_member(),
        }),
        "Tprime" => Box::new(Hom {
            name: name.into(),
            sample: semidirect_sampler(GroupId::SO21, Variant::Coadjoint),
            dmul: semi_mul(),
            eval: Box::new(|a: &SemidirectElement<f64>| tprime_iso(a)),
            cmul: ge_mul,
            dist: ge_dist(),
            member: ge_member(),
        }),
        "phibar" => Box::new(Hom {
            name: name.into(),
            sample: Box::new(sampling::unit_dual_quaternion),
            dmul: Box::new(|a: &DualQuaternion<f64>, b: &DualQuaternion<f64>| *a * *b),
            eval: Box::new(|d: &DualQuaternion<f64>| phibar(d)),
            cmul: semi_mul(),
            dist: semi_dist(),
            member: Box::new(|a: &SemidirectElement<f64>| a.sigma.residual()),
        }),
        "p" => Box::new(Hom {
            name: name.into(),
            sample: Box::new(sampling::unit_dual_split_quaternion),
            dmul: Box::new(|a: &DualSplitQuaternion<f64>, b: &DualSplitQuaternion<f64>| *a * *b),
            eval: Box::new(|d: &DualSplitQuaternion<f64>| p_iso(d)),
            cmul: semi_mul(),
            dist: semi_dist(),
            member: Box::new(|a: &SemidirectElement<f64>| a.sigma.residual()),
        }),
        "Phi" => {
            let theta = killing_theta::<f64>(GroupId::SO3);
            Box::new(Hom {
                name: name.into(),
                sample: semidirect_sampler(GroupId::SO3, Variant::Adjoint),
                dmul: semi_mul(),
                eval: Box::new(move |a: &SemidirectElement<f64>| phi_tg_to_tstarg(&theta, a)),
                cmul: semi_mul(),
                dist: semi_dist(),
                member: Box::new(|a: &SemidirectElement<f64>| a.sigma.residual()),
            })
        }
        other => return Err(Error::Unknown(other.to_string())),
    })
}

/// Φ on an arbitrary group with an arbitrary nondegenerate form, for
/// negative controls where no biinvariant form exists.
pub fn phi_map_with_form(group: GroupId, form: BilinearForm<f64>) -> Result<Box<dyn MapDescriptor>> {
    let theta = Theta::new(form)?;
    Ok(Box::new(Hom {
        name: format!("Phi[{group}]"),
        sample: semidirect_sampler(group, Variant::Adjoint),
        dmul: semi_mul(),
        eval: Box::new(move |a: &SemidirectElement<f64>| phi_tg_to_tstarg(&theta, a)),
        cmul: semi_mul(),
        dist: semi_dist(),
        member: Box::new(|a: &SemidirectElement<f64>| a.sigma.residual()),
    }))
}
