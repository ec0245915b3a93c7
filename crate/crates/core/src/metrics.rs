//! Cartan-Schouten metric families, signatures and the finite-difference
//! parallelism check `x⁺·μ(y⁺,z⁺) = ½(μ([x,y]⁺,z⁺) + μ(y⁺,[x,z]⁺))`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{BilinearForm, LieAlgebra, LinearEndo};
use crate::linalg::{inertia, Mat};
use crate::scalar::Scalar;

/// Parameters of the Heisenberg family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H3MetricParams<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub m: T,
}

impl<T: Scalar> H3MetricParams<T> {
    pub fn new(a: T, b: T, c: T, d: T, e: T, m: T) -> Self {
        Self { a, b, c, d, e, m }
    }

    /// aem − ad² − b²m + 2bcd − c²e, the determinant of the metric.
    pub fn discriminant(&self) -> T {
        let Self { a, b, c, d, e, m } = *self;
        a * e * m - a * d * d - b * b * m + T::two() * b * c * d - c * c * e
    }

    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut v = || T::lit(rng.gen_range(-2.0..2.0));
            let p = Self::new(v(), v(), v(), v(), v(), v());
            if p.discriminant().abs() > T::lit(0.1) {
                return p;
            }
        }
    }
}

type MetricFn<T> = dyn Fn(&[T]) -> Mat<T> + Send + Sync;

/// Metric coefficients as a function of chart coordinates.
#[derive(Clone)]
pub struct CoordinateMetricField<T> {
    dim: usize,
    f: Arc<MetricFn<T>>,
}

impl<T: Scalar> fmt::Debug for CoordinateMetricField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoordinateMetricField").field("dim", &self.dim).finish()
    }
}

impl<T: Scalar> CoordinateMetricField<T> {
    /// The closure's output is symmetrized.
    pub fn new(dim: usize, f: impl Fn(&[T]) -> Mat<T> + Send + Sync + 'static) -> Self {
        Self {
            dim,
            f: Arc::new(move |p| f(p).symmetrize()),
        }
    }

    /// The same constant matrix everywhere.
    pub fn constant(form: &BilinearForm<T>) -> Self {
        let m = form.matrix().clone();
        Self::new(m.rows(), move |_| m.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, p: &[T]) -> Mat<T> {
        (self.f)(p)
    }

    /// Adds `delta` to the (i, j) and (j, i) coefficient functions.
    pub fn perturbed(&self, i: usize, j: usize, delta: T) -> Self {
        let inner = Arc::clone(&self.f);
        Self {
            dim: self.dim,
            f: Arc::new(move |p| {
                let mut m = inner(p);
                m[(i, j)] = m[(i, j)] + delta;
                if i != j {
                    m[(j, i)] = m[(j, i)] + delta;
                }
                m
            }),
        }
    }

    /// Multiplies the (i, j) and (j, i) coefficient functions by `factor`.
    pub fn scaled_entry(&self, i: usize, j: usize, factor: T) -> Self {
        let inner = Arc::clone(&self.f);
        Self {
            dim: self.dim,
            f: Arc::new(move |p| {
                let mut m = inner(p);
                m[(i, j)] = m[(i, j)] * factor;
                if i != j {
                    m[(j, i)] = m[(j, i)] * factor;
                }
                m
            }),
        }
    }
}

/// Heisenberg Cartan-Schouten metric in the global (x, y, z) chart. The
/// printed dxdy-type coefficients are the values μ(∂x, ∂y) etc.
pub fn h3_metric<T: Scalar>(p: H3MetricParams<T>) -> Result<CoordinateMetricField<T>> {
    let disc = p.discriminant();
    if !(disc.abs() > T::lit(1e-12)) {
        return Err(Error::Degenerate(format!("discriminant {}", disc.as_f64())));
    }
    let H3MetricParams { a, b, c, d, e, m } = p;
    Ok(CoordinateMetricField::new(3, move |q| {
        let (x, y) = (q[0], q[1]);
        let h = T::half();
        let qr = T::lit(0.25);
        let m11 = qr * a * y * y - c * y + m;
        let m22 = qr * a * x * x - b * x + e;
        let m12 = qr * a * x * y - h * c * x - h * b * y + d;
        let m13 = -(h * a * y - c);
        let m23 = -(h * a * x - b);
        Mat::from_rows(&[[m11, m12, m13], [m12, m22, m23], [m13, m23, a]])
    }))
}

/// Left-invariant frame of the Heisenberg group at p: rows are the chart
/// components of e₁⁺ = ∂x, e₂⁺ = ∂y + x∂z, e₃⁺ = ∂z.
pub fn h3_left_frame<T: Scalar>(p: &[T]) -> Vec<Vec<T>> {
    let (o, z) = (T::one(), T::zero());
    vec![vec![o, z, z], vec![z, o, p[0]], vec![z, z, o]]
}

fn quad<T: Scalar>(m: &Mat<T>, u: &[T], v: &[T]) -> T {
    let mv = m.mul_vec(v);
    u.iter().zip(&mv).map(|(&a, &b)| a * b).sum()
}

fn combine<T: Scalar>(frame: &[Vec<T>], coeffs: &[T]) -> Vec<T> {
    let n = frame[0].len();
    (0..n)
        .map(|r| frame.iter().zip(coeffs).map(|(f, &c)| f[r] * c).sum())
        .collect()
}

/// Max over `points` and basis triples of
/// |D_{x⁺}[μ(y⁺,z⁺)] − ½(μ([x,y]⁺,z⁺) + μ(y⁺,[x,z]⁺))|, with central
/// differences of step `h` along x⁺.
pub fn parallelism_residual<T: Scalar>(
    field: &CoordinateMetricField<T>,
    alg: &LieAlgebra<T>,
    frame: &dyn Fn(&[T]) -> Vec<Vec<T>>,
    points: &[Vec<T>],
    h: T,
) -> T {
    let n = alg.dim();
    let mut worst = T::zero();
    for p in points {
        let fr = frame(p);
        let mu = field.at(p);
        for i in 0..n {
            let shift = |s: T| -> Vec<T> { p.iter().zip(&fr[i]).map(|(&a, &b)| a + s * b).collect() };
            let (pp, pm) = (shift(h), shift(-h));
            let (fp, fm) = (frame(&pp), frame(&pm));
            let (mp, mm) = (field.at(&pp), field.at(&pm));
            for j in 0..n {
                let bij = combine(
                    &fr,
                    &alg.bracket(&alg.basis_vector(i), &alg.basis_vector(j)).expect("dims"),
                );
                for k in 0..n {
                    let bik = combine(
                        &fr,
                        &alg.bracket(&alg.basis_vector(i), &alg.basis_vector(k)).expect("dims"),
                    );
                    let lhs = (quad(&mp, &fp[j], &fp[k]) - quad(&mm, &fm[j], &fm[k])) / (T::two() * h);
                    let rhs = T::half() * (quad(&mu, &bij, &fr[k]) + quad(&mu, &fr[j], &bik));
                    worst = worst.max((lhs - rhs).abs());
                }
            }
        }
    }
    worst
}

/// k₁·diag(1,1,1,−1,−1,−1) + k₂·(E₁₄+E₄₁+E₂₅+E₅₂−E₃₆−E₆₃) on so(3,1).
pub fn so31_metric<T: Scalar>(k1: T, k2: T) -> Result<BilinearForm<T>> {
    let mut m = Mat::zeros(6, 6);
    for i in 0..3 {
        m[(i, i)] = k1;
        m[(i + 3, i + 3)] = -k1;
    }
    for (a, b, s) in [(0, 3, 1.0), (1, 4, 1.0), (2, 5, -1.0)] {
        m[(a, b)] = k2 * T::lit(s);
        m[(b, a)] = k2 * T::lit(s);
    }
    let form = BilinearForm::new(m);
    if form.is_degenerate() {
        return Err(Error::Degenerate(format!(
            "so31 metric with k1 = {}, k2 = {}",
            k1.as_f64(),
            k2.as_f64()
        )));
    }
    Ok(form)
}

/// K_J(x, y) = K₀(Jx, y), matrix Jᵀ K₀.
pub fn k_j_form<T: Scalar>(alg: &LieAlgebra<T>, j: &LinearEndo<T>) -> BilinearForm<T> {
    BilinearForm::new(&j.matrix().transpose() * alg.killing_form().matrix())
}

/// Parameters of the cotangent-bundle family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CotangentMetricParams<T> {
    /// μ = sK₀ + t⟨,⟩.
    Odd { s: T, t: T },
    /// μ = s₁K₀ + s₂K_J + t₁⟨,⟩ + t₂⟨,⟩_J.
    Even { s1: T, s2: T, t1: T, t2: T },
}

/// Biinvariant metric on the cotangent algebra of a simple algebra, on the
/// basis (e₁…e_n, e₁*…e_n*).
pub fn cotangent_metric<T: Scalar>(
    alg: &LieAlgebra<T>,
    params: CotangentMetricParams<T>,
    j: Option<&LinearEndo<T>>,
) -> Result<BilinearForm<T>> {
    let n = alg.dim();
    let k0 = alg.killing_form();
    if k0.is_degenerate() {
        return Err(Error::Degenerate(
            "Killing form is degenerate; the algebra is not semisimple".into(),
        ));
    }
    let centralizer = alg.centralizer_basis().len();
    let (top_left, pairing) = match (params, j) {
        (CotangentMetricParams::Odd { s, t }, None) => {
            if centralizer != 1 {
                return Err(Error::Parity(format!("dim K = {centralizer}; use the even family")));
            }
            if t == T::zero() {
                return Err(Error::Degenerate("t = 0 leaves the dual copy unpaired".into()));
            }
            (k0.matrix().scale(s), Mat::identity(n).scale(t))
        }
        (CotangentMetricParams::Even { s1, s2, t1, t2 }, Some(j)) => {
            if centralizer != 2 {
                return Err(Error::Parity(format!("dim K = {centralizer}; use the odd family")));
            }
            if j.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: j.dim(),
                });
            }
            if t1 == T::zero() && t2 == T::zero() {
                return Err(Error::Degenerate("t1 = t2 = 0 leaves the dual copy unpaired".into()));
            }
            let kj = k_j_form(alg, j);
            (
                &k0.matrix().scale(s1) + &kj.matrix().scale(s2),
                &Mat::identity(n).scale(t1) + &j.matrix().transpose().scale(t2),
            )
        }
        (CotangentMetricParams::Odd { .. }, Some(_)) => {
            return Err(Error::Parity("the odd family takes no complex structure".into()))
        }
        (CotangentMetricParams::Even { .. }, None) => {
            return Err(Error::Parity("the even family needs a complex structure".into()))
        }
    };
    let mut m = Mat::zeros(2 * n, 2 * n);
    m.set_block(0, 0, &top_left);
    m.set_block(0, n, &pairing);
    m.set_block(n, 0, &pairing.transpose());
    let form = BilinearForm::new(m);
    if form.is_degenerate() {
        return Err(Error::Degenerate("metric matrix is singular".into()));
    }
    Ok(form)
}

/// Counts of negative, positive and near-zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub neg: usize,
    pub pos: usize,
    pub zero: usize,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.neg, self.pos, self.zero)
    }
}

/// Ascending eigenvalues of the form's matrix.
pub fn eigenvalues<T: Scalar>(b: &BilinearForm<T>) -> Vec<T> {
    b.matrix().sym_eigen().0
}

/// Inertia by cyclic Jacobi, threshold 1e-10·max|λ|.
pub fn signature<T: Scalar>(b: &BilinearForm<T>) -> Signature {
    let (neg, pos, zero) = inertia(&eigenvalues(b));
    Signature { neg, pos, zero }
}

/// λ₁,₂ = ½(s ∓ √(s² + 4t²)).
pub fn lambdas<T: Scalar>(s: T, t: T) -> (T, T) {
    let r = (s * s + T::lit(4.0) * t * t).sqrt();
    (T::half() * (s - r), T::half() * (s + r))
}

/// Roots of (X+λ₁)^p (X+λ₂)^p (X−λ₁)^{n−p} (X−λ₂)^{n−p}, ascending.
pub fn odd_case_spectrum<T: Scalar>(s: T, t: T, p: usize, n: usize) -> Vec<T> {
    let (l1, l2) = lambdas(s, t);
    let mut v = Vec::with_capacity(2 * n);
    v.extend(std::iter::repeat_n(-l1, p));
    v.extend(std::iter::repeat_n(-l2, p));
    v.extend(std::iter::repeat_n(l1, n - p));
    v.extend(std::iter::repeat_n(l2, n - p));
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    v
}

/// Change of basis diag(P, P⁻ᵀ) on the cotangent algebra, where P brings
/// K₀ to diag(−𝕀_p, 𝕀_{n−p}). Returns the matrix and p.
pub fn killing_normal_cotangent_frame<T: Scalar>(alg: &LieAlgebra<T>) -> Result<(Mat<T>, usize)> {
    let (p, neg) = alg.killing_normal_frame()?;
    let n = alg.dim();
    let mut m = Mat::zeros(2 * n, 2 * n);
    m.set_block(0, 0, &p);
    m.set_block(n, n, &p.inverse()?.transpose());
    Ok((m, neg))
}

/// Max |det| over `samples` random unit vectors of the ad-invariant form
/// space, each combination normalized to unit Frobenius norm.
pub fn invariant_form_det_scan<T: Scalar, R: Rng + ?Sized>(
    alg: &LieAlgebra<T>,
    samples: usize,
    rng: &mut R,
) -> (usize, T) {
    let forms = alg.invariant_forms();
    let n = alg.dim();
    let mut worst = T::zero();
    if forms.is_empty() {
        return (0, worst);
    }
    for _ in 0..samples {
        let w: Vec<f64> = (0..forms.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut m = Mat::zeros(n, n);
        for (f, &c) in forms.iter().zip(&w) {
            m = &m + &f.matrix().scale(T::lit(c));
        }
        let norm = m.frobenius();
        if norm > T::zero() {
            worst = worst.max(m.scale(T::one() / norm).det().abs());
        }
    }
    (forms.len(), worst)
}

/// Dimension of the space of metric fields with quadratic polynomial
/// coefficients satisfying the parallelism equations at `points`.
pub fn h3_parallel_solution_dim<T: Scalar>(points: &[Vec<T>]) -> usize {
    let alg = crate::lie::builtin::heisenberg::<T>();
    // monomials of degree ≤ 2 in (x, y, z): value and gradient
    let exps: Vec<[i32; 3]> = {
        let mut v = Vec::new();
        for a in 0..=2 {
            for b in 0..=2 - a {
                for c in 0..=2 - a - b {
                    v.push([a, b, c]);
                }
            }
        }
        v
    };
    let mono = |e: [i32; 3], p: &[T]| p[0].powi(e[0]) * p[1].powi(e[1]) * p[2].powi(e[2]);
    let dmono = |e: [i32; 3], p: &[T], axis: usize| {
        if e[axis] == 0 {
            return T::zero();
        }
        let mut f = e;
        f[axis] -= 1;
        T::lit(e[axis] as f64) * mono(f, p)
    };
    let slots: Vec<(usize, usize)> = (0..3).flat_map(|i| (i..3).map(move |j| (i, j))).collect();
    let unknowns = slots.len() * exps.len();
    let mut rows: Vec<Vec<T>> = Vec::new();
    for p in points {
        let fr = h3_left_frame(p);
        // frame derivative along X: only e₂⁺ depends on x
        let dframe = |j: usize, x: &[T]| -> Vec<T> {
            let z = T::zero();
            if j == 1 {
                vec![z, z, x[0]]
            } else {
                vec![z, z, z]
            }
        };
        for i in 0..3 {
            let xdir = &fr[i];
            for j in 0..3 {
                let bij = combine(
                    &fr,
                    &alg.bracket(&alg.basis_vector(i), &alg.basis_vector(j)).expect("dims"),
                );
                for k in 0..3 {
                    let bik = combine(
                        &fr,
                        &alg.bracket(&alg.basis_vector(i), &alg.basis_vector(k)).expect("dims"),
                    );
                    let mut row = vec![T::zero(); unknowns];
                    for (si, &(a, b)) in slots.iter().enumerate() {
                        let mut s = Mat::zeros(3, 3);
                        s[(a, b)] = T::one();
                        s[(b, a)] = T::one();
                        for (mi, &e) in exps.iter().enumerate() {
                            let phi = mono(e, p);
                            let dphi: T = (0..3).map(|ax| dmono(e, p, ax) * xdir[ax]).sum();
                            let lhs = dphi * quad(&s, &fr[j], &fr[k])
                                + phi * (quad(&s, &dframe(j, xdir), &fr[k]) + quad(&s, &fr[j], &dframe(k, xdir)));
                            let rhs = T::half() * phi * (quad(&s, &bij, &fr[k]) + quad(&s, &fr[j], &bik));
                            row[si * exps.len() + mi] = lhs - rhs;
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    let sys = Mat::from_fn(rows.len(), unknowns, |r, c| rows[r][c]);
    unknowns - sys.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::builtin;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn points(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|_| (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect())
            .collect()
    }

    #[test]
    fn riemannian_h3_closed_form() {
        let f = h3_metric(H3MetricParams::new(1.0, 0.0, 0.0, 0.0, 1.0, 1.0)).unwrap();
        let p = [0.7, -1.3, 0.2];
        // dx² + dy² + (dz − y/2 dx − x/2 dy)²
        let w = [-p[1] / 2.0, -p[0] / 2.0, 1.0];
        let want = Mat::from_fn(3, 3, |i, j| if i == j && i < 2 { 1.0 } else { 0.0 } + w[i] * w[j]);
        assert!(f.at(&p).dist(&want) < 1e-15);
    }

    #[test]
    fn lorentzian_h3_has_null_direction() {
        let f = h3_metric(H3MetricParams::new(-1.0f64, 0.0, 0.0, 0.0, 1.0, 1.0)).unwrap();
        for p in [[0.0, 0.0, 0.0], [1.5, -0.4, 3.0]] {
            let m = f.at(&p);
            assert!((m.det() + 1.0).abs() < 1e-12);
            let v = [0.0, 1.0, p[0] / 2.0 + 1.0];
            assert!(quad(&m, &v, &v).abs() < 1e-12);
        }
    }

    #[test]
    fn h3_origin_matrix() {
        let p = H3MetricParams::new(1.0f64, 2.0, 3.0, 4.0, 5.0, 6.0);
        let m = h3_metric(p).unwrap().at(&[0.0; 3]);
        let want = Mat::from_rows(&[[6.0, 4.0, 3.0], [4.0, 5.0, 2.0], [3.0, 2.0, 1.0]]);
        assert_eq!(m, want);
        assert!((m.det() - p.discriminant()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_h3_params() {
        let p = H3MetricParams::new(0.0, 0.0, 0.0, 0.0, 1.0, 1.0);
        assert!(matches!(h3_metric(p), Err(Error::Degenerate(_))));
    }

    #[test]
    fn h3_parallelism_and_controls() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let alg = builtin::heisenberg::<f64>();
        let pts = points(&mut rng, 30);
        let f = h3_metric(H3MetricParams::sample(&mut rng)).unwrap();
        assert!(parallelism_residual(&f, &alg, &h3_left_frame, &pts, 1e-5) < 1e-6);
        let doubled = f.scaled_entry(0, 1, 2.0);
        assert!(parallelism_residual(&doubled, &alg, &h3_left_frame, &pts, 1e-5) > 1e-3);
        for (i, j) in [(2, 2), (0, 2), (1, 2)] {
            let r = parallelism_residual(&f.perturbed(i, j, 0.1), &alg, &h3_left_frame, &pts, 1e-5);
            assert!(r > 1e-3, "({i},{j}) {r}");
        }
        // constant shifts of these entries are shifts of m, e, d
        for (i, j) in [(0, 0), (1, 1), (0, 1)] {
            let r = parallelism_residual(&f.perturbed(i, j, 0.1), &alg, &h3_left_frame, &pts, 1e-5);
            assert!(r < 1e-6, "({i},{j}) {r}");
        }
    }

    #[test]
    fn h3_frame_is_left_invariant() {
        // e_i⁺(p) = d/dt p·exp(t e_i) at t = 0
        use crate::groups::HeisenbergPoint;
        let p = HeisenbergPoint::new(0.8f64, -0.3, 1.7);
        let h = 1e-6;
        let frame = h3_left_frame(&[p.x, p.y, p.z]);
        for i in 0..3 {
            let mut xi = [0.0; 3];
            xi[i] = h;
            let a = p.mul(&HeisenbergPoint::exp(xi));
            xi[i] = -h;
            let b = p.mul(&HeisenbergPoint::exp(xi));
            let d = [
                (a.x - b.x) / (2.0 * h),
                (a.y - b.y) / (2.0 * h),
                (a.z - b.z) / (2.0 * h),
            ];
            assert!((0..3).all(|k| (d[k] - frame[i][k]).abs() < 1e-9));
        }
    }

    #[test]
    fn constant_biinvariant_form_is_parallel() {
        let alg = builtin::so3::<f64>();
        let f = CoordinateMetricField::constant(&alg.killing_form());
        // at the identity of the exp chart the frame is the coordinate frame
        let frame = |_: &[f64]| vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        assert!(parallelism_residual(&f, &alg, &frame, &[vec![0.0; 3]], 1e-5) < 1e-12);
    }

    #[test]
    fn h3_family_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(h3_parallel_solution_dim(&points(&mut rng, 12)), 6);
    }

    #[test]
    fn h3_has_no_biinvariant_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (dim, worst) = invariant_form_det_scan(&builtin::heisenberg::<f64>(), 2000, &mut rng);
        assert!(dim >= 1);
        assert!(worst < 1e-12);
    }

    #[test]
    fn so31_metric_cases() {
        let g = builtin::so31::<f64>();
        let quarter = g.killing_form().scale(0.25);
        assert!(so31_metric(1.0, 0.0).unwrap().matrix().dist(quarter.matrix()) < 1e-15);
        let j = g.complex_structure_j().unwrap();
        let kj = k_j_form(&g, &j).scale(0.25);
        assert!(so31_metric(0.0, 1.0).unwrap().matrix().dist(kj.matrix()) < 1e-12);
        assert!(g.ad_invariance_residual(&so31_metric(0.37, -1.4).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn sl2_cotangent_metric_coefficients() {
        let g = builtin::sl2::<f64>();
        let (s, t) = (0.8, -1.7);
        let mu = cotangent_metric(&g, CotangentMetricParams::Odd { s, t }, None).unwrap();
        let m = mu.matrix();
        for r in 0..6 {
            for c in 0..6 {
                let want = match (r, c) {
                    (0, 0) => -s,
                    (1, 1) | (2, 2) => s,
                    (a, b) if a + 3 == b || b + 3 == a => t,
                    _ => 0.0,
                };
                assert!((m[(r, c)] - want).abs() < 1e-12, "({r},{c})");
            }
        }
    }

    #[test]
    fn cotangent_metric_errors() {
        let g = builtin::sl2::<f64>();
        let z = CotangentMetricParams::Odd { s: 0.0, t: 0.0 };
        assert!(matches!(cotangent_metric(&g, z, None), Err(Error::Degenerate(_))));
        let so31 = builtin::so31::<f64>();
        let odd = CotangentMetricParams::Odd { s: 1.0, t: 1.0 };
        assert!(matches!(cotangent_metric(&so31, odd, None), Err(Error::Parity(_))));
        let even = CotangentMetricParams::Even {
            s1: 1.0,
            s2: 0.0,
            t1: 1.0,
            t2: 0.0,
        };
        assert!(matches!(cotangent_metric(&g, even, None), Err(Error::Parity(_))));
        let h3 = builtin::heisenberg::<f64>();
        assert!(matches!(cotangent_metric(&h3, odd, None), Err(Error::Degenerate(_))));
    }

    #[test]
    fn signatures() {
        let d = BilinearForm::new(Mat::from_diag(&[-1.0, 1.0, 1.0]));
        assert_eq!(
            signature(&d),
            Signature {
                neg: 1,
                pos: 2,
                zero: 0
            }
        );
        let g = builtin::so3::<f64>();
        let (frame, p) = killing_normal_cotangent_frame(&g).unwrap();
        let mu = cotangent_metric(&g, CotangentMetricParams::Odd { s: 0.0, t: 1.0 }, None)
            .unwrap()
            .change_basis(&frame);
        assert_eq!(p, 3);
        assert_eq!(
            signature(&mu),
            Signature {
                neg: 3,
                pos: 3,
                zero: 0
            }
        );
        for (got, want) in eigenvalues(&mu).iter().zip(odd_case_spectrum(0.0, 1.0, 3, 3)) {
            assert!((got - want).abs() < 1e-12);
        }
        let so31 = builtin::so31::<f64>();
        let j = so31.complex_structure_j().unwrap();
        let pairing = CotangentMetricParams::Even {
            s1: 0.0,
            s2: 0.0,
            t1: 1.0,
            t2: 0.0,
        };
        let mu = cotangent_metric(&so31, pairing, Some(&j)).unwrap();
        assert_eq!(
            signature(&mu),
            Signature {
                neg: 6,
                pos: 6,
                zero: 0
            }
        );
        assert!(eigenvalues(&mu).iter().all(|l| (l.abs() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn cotangent_metrics_are_ad_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for name in ["so3", "su2", "sl2", "so21"] {
            let g = builtin::by_name::<f64>(name).unwrap();
            let s = rng.gen_range(-3.0..3.0);
            let t = rng.gen_range(0.1..3.0);
            let mu = cotangent_metric(&g, CotangentMetricParams::Odd { s, t }, None).unwrap();
            assert!(
                g.cotangent_algebra().ad_invariance_residual(&mu).unwrap() < 1e-12,
                "{name}"
            );
        }
        let g = builtin::so31::<f64>();
        let j = g.complex_structure_j().unwrap();
        let params = CotangentMetricParams::Even {
            s1: 0.3,
            s2: -1.1,
            t1: 0.7,
            t2: 1.9,
        };
        let mu = cotangent_metric(&g, params, Some(&j)).unwrap();
        assert!(g.cotangent_algebra().ad_invariance_residual(&mu).unwrap() < 1e-12);
    }
}
