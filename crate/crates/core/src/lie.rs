//! Structure-constant Lie algebras: brackets, Killing forms, the centralizer
//! of the adjoint representation, coadjoint action and the tangent/cotangent
//! semidirect algebras.
//!
//! Coordinates are plain slices over the algebra's labeled basis. The
//! coadjoint convention is `ad*_x f = -f ∘ ad_x`, so that in dual coordinates
//! the matrix of `ad*_x` is `-ad(x)ᵀ` and `Ad*_{exp(tx)} = exp(t·ad*_x)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{vec_max_abs, Mat, RANK_RTOL};
use crate::scalar::Scalar;

/// `(i, j, [(k, c)])` encodes [eᵢ, eⱼ] = Σ c eₖ.
pub type UpperBracket<T> = (usize, usize, Vec<(usize, T)>);

/// Jacobi residual accepted when validating an algebra.
pub fn jacobi_tolerance<T: Scalar>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(1e3))
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// Linear endomorphism of an algebra, acting on coefficient columns.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEndo<T>(pub Mat<T>);

impl<T: Scalar> LinearEndo<T> {
    pub fn identity(n: usize) -> Self {
        Self(Mat::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.0
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        self.0.mul_vec(x)
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }
}

/// Symmetric bilinear form, stored as its Gram matrix in the algebra basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm<T>(Mat<T>);

impl<T: Scalar> BilinearForm<T> {
    /// Symmetrizes the input.
    pub fn new(m: Mat<T>) -> Self {
        assert!(m.is_square(), "bilinear form needs a square matrix");
        Self(m.symmetrize())
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.0
    }

    pub fn eval(&self, x: &[T], y: &[T]) -> T {
        let my = self.0.mul_vec(y);
        x.iter().zip(&my).map(|(&a, &b)| a * b).sum()
    }

    pub fn scale(&self, s: T) -> Self {
        Self(self.0.scale(s))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    /// Rank-deficient at the crate-wide singular-value threshold.
    pub fn is_degenerate(&self) -> bool {
        self.0.rank() < self.dim()
    }

    /// Matrix of the same form in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Mat<T>) -> Self {
        Self::new(&(&p.transpose() * &self.0) * p)
    }
}

/// Element of the dual space, in dual-basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Covector<T>(pub Vec<T>);

impl<T: Scalar> Covector<T> {
    pub fn zero(n: usize) -> Self {
        Self(vec![T::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[T] {
        &self.0
    }

    /// ⟨f, x⟩.
    pub fn pair(&self, x: &[T]) -> T {
        self.0.iter().zip(x).map(|(&a, &b)| a * b).sum()
    }
}

/// Finite-dimensional real Lie algebra given by dense structure constants
/// `c[i][j][k]` = coefficient of `e_k` in `[e_i, e_j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<T> {
    dim: usize,
    labels: Vec<String>,
    c: Vec<T>,
}

impl<T: Scalar> LieAlgebra<T> {
    /// Validates antisymmetry (exact) and Jacobi (within [`jacobi_tolerance`]).
    pub fn from_structure_constants(labels: Vec<String>, c: Vec<T>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension must be positive".into()));
        }
        check_len(dim * dim * dim, c.len())?;
        let alg = Self { dim, labels, c };
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if alg.sc(i, j, k) != -alg.sc(j, i, k) {
                        return Err(Error::InvalidAlgebra(format!("antisymmetry fails at ({i},{j},{k})")));
                    }
                }
            }
        }
        let jr = alg.jacobi_residual();
        if !(jr < jacobi_tolerance::<T>()) {
            return Err(Error::InvalidAlgebra(format!("Jacobi residual {:e}", jr.as_f64())));
        }
        Ok(alg)
    }

    /// Builds from the `i < j` brackets only; the rest follows by antisymmetry.
    pub fn from_upper_brackets(labels: Vec<String>, brackets: &[UpperBracket<T>]) -> Result<Self> {
        let n = labels.len();
        let mut c = vec![T::zero(); n * n * n];
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            if i >= j || j >= n {
                return Err(Error::InvalidAlgebra(format!(
                    "bracket entry ({i},{j}) must satisfy i < j < {n}"
                )));
            }
            for &(k, v) in coeffs {
                if k >= n {
                    return Err(Error::InvalidAlgebra(format!("coefficient index {k} out of range")));
                }
                c[(i * n + j) * n + k] = c[(i * n + j) * n + k] + v;
                c[(j * n + i) * n + k] = c[(j * n + i) * n + k] - v;
            }
        }
        Self::from_structure_constants(labels, c)
    }

    #[inline]
    fn sc(&self, i: usize, j: usize, k: usize) -> T {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> T {
        self.sc(i, j, k)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.dim];
        v[i] = T::one();
        v
    }

    /// max |Σ_l c_ij^l c_lk^m + c_jk^l c_li^m + c_ki^l c_lj^m|.
    pub fn jacobi_residual(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let s: T = (0..n)
                            .map(|l| {
                                self.sc(i, j, l) * self.sc(l, k, m)
                                    + self.sc(j, k, l) * self.sc(l, i, m)
                                    + self.sc(k, i, l) * self.sc(l, j, m)
                            })
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }

    pub fn bracket(&self, x: &[T], y: &[T]) -> Result<Vec<T>> {
        check_len(self.dim, x.len())?;
        check_len(self.dim, y.len())?;
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == T::zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                let w = xi * yj;
                if w == T::zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = *o + w * self.sc(i, j, k);
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn ad_matrix(&self, x: &[T]) -> Result<LinearEndo<T>> {
        check_len(self.dim, x.len())?;
        let n = self.dim;
        Ok(LinearEndo(Mat::from_fn(n, n, |k, j| {
            (0..n).map(|i| x[i] * self.sc(i, j, k)).sum()
        })))
    }

    fn ad_basis(&self) -> Vec<Mat<T>> {
        (0..self.dim)
            .map(|i| self.ad_matrix(&self.basis_vector(i)).expect("basis length").0)
            .collect()
    }

    /// K₀(x, y) = tr(ad_x ∘ ad_y).
    pub fn killing_form(&self) -> BilinearForm<T> {
        let ads = self.ad_basis();
        let n = self.dim;
        BilinearForm::new(Mat::from_fn(n, n, |i, j| (&ads[i] * &ads[j]).trace()))
    }

    /// (ad*_x f)(y) = −f([x, y]).
    pub fn coad(&self, x: &[T], f: &Covector<T>) -> Result<Covector<T>> {
        check_len(self.dim, f.dim())?;
        let ad = self.ad_matrix(x)?;
        let n = self.dim;
        Ok(Covector(
            (0..n)
                .map(|j| -(0..n).map(|k| ad.0[(k, j)] * f.0[k]).sum::<T>())
                .collect(),
        ))
    }

    /// Matrix of `f ↦ ad*_x f` in dual coordinates (equals `-ad(x)ᵀ`).
    pub fn coad_matrix(&self, x: &[T]) -> Result<LinearEndo<T>> {
        Ok(LinearEndo(-&self.ad_matrix(x)?.0.transpose()))
    }

    /// Basis of K(𝒢) = {A : A∘ad_y = ad_y∘A for all y}.
    pub fn centralizer_basis(&self) -> Vec<LinearEndo<T>> {
        let n = self.dim;
        let ads = self.ad_basis();
        // unknown A is vectorized row-major: A[r][s] ↦ r*n + s
        let mut sys = Mat::zeros(n * n * n, n * n);
        for (q, ad) in ads.iter().enumerate() {
            for r in 0..n {
                for s in 0..n {
                    let row = q * n * n + r * n + s;
                    for t in 0..n {
                        // (A·ad)[r][s] = Σ_t A[r][t] ad[t][s]
                        let idx = r * n + t;
                        sys[(row, idx)] = sys[(row, idx)] + ad[(t, s)];
                        // (ad·A)[r][s] = Σ_t ad[r][t] A[t][s]
                        let idx = t * n + s;
                        sys[(row, idx)] = sys[(row, idx)] - ad[(r, t)];
                    }
                }
            }
        }
        sys.nullspace()
            .into_iter()
            .map(|v| LinearEndo(Mat::from_fn(n, n, |r, s| v[r * n + s])))
            .collect()
    }

    /// Complex structure J spanning K(𝒢) together with the identity, for
    /// simple algebras whose centralizer is two-dimensional. Normalized so
    /// that J² = −𝕀 and the first nonzero entry (row-major) is positive.
    pub fn complex_structure_j(&self) -> Result<LinearEndo<T>> {
        let basis = self.centralizer_basis();
        if basis.len() != 2 {
            return Err(Error::NoComplexStructure(basis.len()));
        }
        let n = self.dim;
        let nn = T::lit(n as f64);
        let id = Mat::identity(n);
        // traceless parts; keep the one farthest from the identity line
        let b0 = basis
            .iter()
            .map(|b| &b.0 - &id.scale(b.0.trace() / nn))
            .max_by(|a, b| {
                a.frobenius()
                    .partial_cmp(&b.frobenius())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("two basis elements");
        let sq = &b0 * &b0;
        let kappa = sq.trace() / nn;
        let off = (&sq - &id.scale(kappa)).max_abs();
        let scale = sq.max_abs().max(T::min_positive_value());
        if !(kappa < T::zero()) || off > T::lit(1e-8) * scale {
            return Err(Error::NotComplexType((off / scale).as_f64()));
        }
        let mut j = b0.scale(T::one() / (-kappa).sqrt());
        let tiny = T::lit(1e-12);
        if let Some(&first) = j.as_slice().iter().find(|x| x.abs() > tiny) {
            if first < T::zero() {
                j = -&j;
            }
        }
        Ok(LinearEndo(j))
    }

    /// dim [𝒢, 𝒢].
    pub fn derived_dim(&self) -> usize {
        let n = self.dim;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        if pairs.is_empty() {
            return 0;
        }
        Mat::from_fn(n, pairs.len(), |k, p| self.sc(pairs[p].0, pairs[p].1, k)).rank()
    }

    /// 𝒢 ⋉ 𝒢* on the basis (e₁…e_n, e₁*…e_n*), with
    /// [(x,f),(y,g)] = ([x,y], ad*_x g − ad*_y f).
    pub fn cotangent_algebra(&self) -> LieAlgebra<T> {
        let n = self.dim;
        let m = 2 * n;
        let mut c = vec![T::zero(); m * m * m];
        let idx = |i: usize, j: usize, k: usize| (i * m + j) * m + k;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[idx(i, j, k)] = self.sc(i, j, k);
                    // [e_i, e_j*] = Σ_k −c_ik^j e_k*
                    let v = -self.sc(i, k, j);
                    c[idx(i, n + j, n + k)] = v;
                    c[idx(n + j, i, n + k)] = -v;
                }
            }
        }
        let labels = self
            .labels
            .iter()
            .cloned()
            .chain(self.labels.iter().map(|l| format!("{l}*")))
            .collect();
        Self { dim: m, labels, c }
    }

    /// 𝒢 ⋉ 𝒢 on the basis (e₁…e_n, ē₁…ē_n), with
    /// [(x₁,y₁),(x₂,y₂)] = ([x₁,x₂], [x₁,y₂] − [x₂,y₁]).
    pub fn tangent_algebra(&self) -> LieAlgebra<T> {
        let n = self.dim;
        let m = 2 * n;
        let mut c = vec![T::zero(); m * m * m];
        let idx = |i: usize, j: usize, k: usize| (i * m + j) * m + k;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.sc(i, j, k);
                    c[idx(i, j, k)] = v;
                    c[idx(i, n + j, n + k)] = v;
                    c[idx(n + j, i, n + k)] = -v;
                }
            }
        }
        let labels = self
            .labels
            .iter()
            .cloned()
            .chain(self.labels.iter().map(|l| format!("{l}_bar")))
            .collect();
        Self { dim: m, labels, c }
    }

    /// max over basis triples of |B([e_i,e_j],e_k) + B(e_j,[e_i,e_k])|.
    pub fn ad_invariance_residual(&self, b: &BilinearForm<T>) -> Result<T> {
        check_len(self.dim, b.dim())?;
        let n = self.dim;
        let m = b.matrix();
        let mut worst = T::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let s: T = (0..n)
                        .map(|l| self.sc(i, j, l) * m[(l, k)] + self.sc(i, k, l) * m[(j, l)])
                        .sum();
                    worst = worst.max(s.abs());
                }
            }
        }
        Ok(worst)
    }

    /// Basis of the space of symmetric ad-invariant bilinear forms.
    pub fn invariant_forms(&self) -> Vec<BilinearForm<T>> {
        let n = self.dim;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let slot = |a: usize, b: usize| {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            pairs.iter().position(|&p| p == (a, b)).expect("pair")
        };
        let mut sys = Mat::zeros(n * n * n, pairs.len());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let row = (i * n + j) * n + k;
                    for l in 0..n {
                        let s = slot(l, k);
                        sys[(row, s)] = sys[(row, s)] + self.sc(i, j, l);
                        let s = slot(j, l);
                        sys[(row, s)] = sys[(row, s)] + self.sc(i, k, l);
                    }
                }
            }
        }
        sys.nullspace()
            .into_iter()
            .map(|v| {
                let mut m = Mat::zeros(n, n);
                for (p, &(a, b)) in pairs.iter().enumerate() {
                    m[(a, b)] = v[p];
                    m[(b, a)] = v[p];
                }
                BilinearForm::new(m)
            })
            .collect()
    }

    /// Change of basis P (columns = new basis vectors) with Pᵀ K₀ P = 𝕀_{p,n}:
    /// negative directions first. Fails when the Killing form is degenerate.
    pub fn killing_normal_frame(&self) -> Result<(Mat<T>, usize)> {
        let k = self.killing_form();
        let (vals, vecs) = k.matrix().sym_eigen();
        let top = vals.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        if vals.iter().any(|x| x.abs() <= T::lit(RANK_RTOL) * top) {
            return Err(Error::Degenerate("Killing form is degenerate".into()));
        }
        let n = self.dim;
        // diagonal Killing forms keep the original basis order
        let diag = (0..n).all(|i| (0..n).all(|j| i == j || k.matrix()[(i, j)] == T::zero()));
        let mut p = Mat::zeros(n, n);
        let mut order: Vec<usize> = (0..n).collect();
        if diag {
            order.sort_by_key(|&i| if k.matrix()[(i, i)] < T::zero() { 0 } else { 1 });
            for (col, &i) in order.iter().enumerate() {
                p[(i, col)] = T::one() / k.matrix()[(i, i)].abs().sqrt();
            }
        } else {
            for (col, (&lam, j)) in vals.iter().zip(0..n).enumerate() {
                let s = T::one() / lam.abs().sqrt();
                for i in 0..n {
                    p[(i, col)] = vecs[(i, j)] * s;
                }
            }
        }
        let negatives = vals.iter().filter(|&&x| x < T::zero()).count();
        Ok((p, negatives))
    }

    /// Numerical check that K(𝒢) is closed under composition.
    pub fn centralizer_closure_residual(&self) -> T {
        let basis = self.centralizer_basis();
        let n = self.dim;
        let span = Mat::from_fn(n * n, basis.len(), |r, c| basis[c].0.as_slice()[r]);
        let mut worst = T::zero();
        for a in &basis {
            for b in &basis {
                let prod = a.compose(b).0;
                let rhs = Mat::column(prod.as_slice());
                // least squares via normal equations on an orthonormal basis
                let coeffs = &span.transpose() * &rhs;
                let back = &span * &coeffs;
                worst = worst.max(back.dist(&rhs));
            }
        }
        worst
    }

    /// Serializable description listing only `i < j` brackets.
    pub fn to_json_doc(&self) -> AlgebraDoc {
        let n = self.dim;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<String, f64> = (0..n)
                    .filter(|&k| self.sc(i, j, k) != T::zero())
                    .map(|k| (k.to_string(), self.sc(i, j, k).as_f64()))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(BracketDoc { i, j, coeffs });
                }
            }
        }
        AlgebraDoc {
            dim: n,
            labels: self.labels.clone(),
            brackets,
        }
    }

    pub fn from_json_doc(doc: &AlgebraDoc) -> Result<Self> {
        if doc.labels.len() != doc.dim {
            return Err(Error::InvalidAlgebra(format!(
                "{} labels for dimension {}",
                doc.labels.len(),
                doc.dim
            )));
        }
        let mut entries = Vec::with_capacity(doc.brackets.len());
        for b in &doc.brackets {
            let mut coeffs = Vec::with_capacity(b.coeffs.len());
            for (k, &v) in &b.coeffs {
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient index {k:?}")))?;
                coeffs.push((k, T::lit(v)));
            }
            entries.push((b.i, b.j, coeffs));
        }
        Self::from_upper_brackets(doc.labels.clone(), &entries)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AlgebraDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_doc(&doc)
    }
}

/// JSON document `{"dim": n, "labels": [...], "brackets": [{"i":0,"j":1,"coeffs":{"2":1.0}}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<BracketDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, f64>,
}

/// A Lie algebra realized by a basis of real matrices, with the projection
/// back to coordinates.
#[derive(Debug, Clone)]
pub struct MatrixAlgebra<T> {
    algebra: LieAlgebra<T>,
    basis: Vec<Mat<T>>,
    gram_inv: Mat<T>,
}

impl<T: Scalar> MatrixAlgebra<T> {
    /// Structure constants are read off the commutators of `basis`; a
    /// commutator leaving the span is an error.
    pub fn new(labels: Vec<String>, basis: Vec<Mat<T>>) -> Result<Self> {
        let n = basis.len();
        check_len(n, labels.len())?;
        let gram = Mat::from_fn(n, n, |i, j| basis[i].dot(&basis[j]));
        let gram_inv = gram
            .inverse()
            .map_err(|_| Error::InvalidAlgebra("basis matrices are linearly dependent".into()))?;
        let mut partial = Self {
            algebra: LieAlgebra {
                dim: n,
                labels: labels.clone(),
                c: vec![T::zero(); n * n * n],
            },
            basis,
            gram_inv,
        };
        let mut c = vec![T::zero(); n * n * n];
        for i in 0..n {
            for j in i + 1..n {
                let comm = partial.basis[i].commutator(&partial.basis[j]);
                let coords = partial.coords(&comm);
                let back = partial.matrix(&coords);
                if back.dist(&comm) > T::lit(1e-12).max(T::epsilon() * T::lit(1e3)) {
                    return Err(Error::InvalidAlgebra(format!(
                        "[{},{}] leaves the span",
                        labels[i], labels[j]
                    )));
                }
                for k in 0..n {
                    c[(i * n + j) * n + k] = coords[k];
                    c[(j * n + i) * n + k] = -coords[k];
                }
            }
        }
        partial.algebra = LieAlgebra::from_structure_constants(labels, c)?;
        Ok(partial)
    }

    pub fn algebra(&self) -> &LieAlgebra<T> {
        &self.algebra
    }

    pub fn basis(&self) -> &[Mat<T>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a matrix in the basis (orthogonal projection onto the span).
    pub fn coords(&self, m: &Mat<T>) -> Vec<T> {
        let rhs: Vec<T> = self.basis.iter().map(|b| b.dot(m)).collect();
        self.gram_inv.mul_vec(&rhs)
    }

    pub fn matrix(&self, x: &[T]) -> Mat<T> {
        let (r, c) = (self.basis[0].rows(), self.basis[0].cols());
        self.basis
            .iter()
            .zip(x)
            .fold(Mat::zeros(r, c), |acc, (b, &s)| &acc + &b.scale(s))
    }

    /// Distance of `m` from the span of the basis.
    pub fn span_residual(&self, m: &Mat<T>) -> T {
        self.matrix(&self.coords(m)).dist(m)
    }
}

/// Built-in algebras in their fixed bases.
pub mod builtin {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// Cross-product matrix F(x)y = x × y.
    pub fn hat_cross<T: Scalar>(x: &[T]) -> Mat<T> {
        let z = T::zero();
        Mat::from_rows(&[[z, -x[2], x[1]], [x[2], z, -x[0]], [-x[1], x[0], z]])
    }

    /// Minkowski cross-product matrix H(n)y = n ×ₛ y:
    /// n₃(E₁₂+E₂₁) − n₂(E₁₃+E₃₁) + n₁(E₃₂−E₂₃).
    pub fn hat_minkowski<T: Scalar>(n: &[T]) -> Mat<T> {
        let z = T::zero();
        Mat::from_rows(&[[z, n[2], -n[1]], [n[2], z, -n[0]], [-n[1], n[0], z]])
    }

    /// Realification [[A, −B], [B, A]] of the complex matrix A + iB.
    pub fn realify<T: Scalar>(re: &Mat<T>, im: &Mat<T>) -> Mat<T> {
        let n = re.rows();
        let mut m = Mat::zeros(2 * n, 2 * n);
        m.set_block(0, 0, re);
        m.set_block(0, n, &(-im));
        m.set_block(n, 0, im);
        m.set_block(n, n, re);
        m
    }

    /// so(3) in the cyclic basis Lᵢ = F(eᵢ), [L₁, L₂] = L₃.
    pub fn so3_matrices<T: Scalar>() -> MatrixAlgebra<T> {
        let basis = (0..3)
            .map(|i| {
                let mut e = [T::zero(); 3];
                e[i] = T::one();
                hat_cross(&e)
            })
            .collect();
        MatrixAlgebra::new(labels(&["L1", "L2", "L3"]), basis).expect("so(3)")
    }

    /// su(2) in the basis X₁ = i(E₂₂−E₁₁), X₂ = E₂₁−E₁₂, X₃ = i(E₁₂+E₂₁), realified.
    pub fn su2_matrices<T: Scalar>() -> MatrixAlgebra<T> {
        let e = |i, j| Mat::<T>::elementary(2, i, j);
        let z = Mat::<T>::zeros(2, 2);
        let x1 = realify(&z, &(&e(2, 2) - &e(1, 1)));
        let x2 = realify(&(&e(2, 1) - &e(1, 2)), &z);
        let x3 = realify(&z, &(&e(1, 2) + &e(2, 1)));
        MatrixAlgebra::new(labels(&["X1", "X2", "X3"]), vec![x1, x2, x3]).expect("su(2)")
    }

    /// sl(2,ℝ) in the basis e₁ = √2/4(E₁₂−E₂₁), e₂ = √2/4(E₁₁−E₂₂), e₃ = √2/4(E₁₂+E₂₁).
    pub fn sl2_matrices<T: Scalar>() -> MatrixAlgebra<T> {
        let e = |i, j| Mat::<T>::elementary(2, i, j);
        let s = T::lit(2f64.sqrt() / 4.0);
        let basis = vec![
            (&e(1, 2) - &e(2, 1)).scale(s),
            (&e(1, 1) - &e(2, 2)).scale(s),
            (&e(1, 2) + &e(2, 1)).scale(s),
        ];
        MatrixAlgebra::new(labels(&["e1", "e2", "e3"]), basis).expect("sl(2)")
    }

    /// so(2,1) (form diag(1,−1,−1)) in the basis e₁′ = √2/2(E₂₃−E₃₂),
    /// e₂′ = √2/2(E₁₃+E₃₁), e₃′ = −√2/2(E₁₂+E₂₁).
    pub fn so21_matrices<T: Scalar>() -> MatrixAlgebra<T> {
        let e = |i, j| Mat::<T>::elementary(3, i, j);
        let s = T::lit(2f64.sqrt() / 2.0);
        let basis = vec![
            (&e(2, 3) - &e(3, 2)).scale(s),
            (&e(1, 3) + &e(3, 1)).scale(s),
            (&e(1, 2) + &e(2, 1)).scale(-s),
        ];
        MatrixAlgebra::new(labels(&["e1'", "e2'", "e3'"]), basis).expect("so(2,1)")
    }

    /// so(3,1) in the basis S₁…S₆: boosts S₁ = E₁₄+E₄₁, S₂, S₃ and rotations
    /// S₄ = E₂₃−E₃₂, S₅ = E₃₁−E₁₃, S₆ = E₂₁−E₁₂.
    pub fn so31_matrices<T: Scalar>() -> MatrixAlgebra<T> {
        let e = |i, j| Mat::<T>::elementary(4, i, j);
        let basis = vec![
            &e(1, 4) + &e(4, 1),
            &e(2, 4) + &e(4, 2),
            &e(3, 4) + &e(4, 3),
            &e(2, 3) - &e(3, 2),
            &e(3, 1) - &e(1, 3),
            &e(2, 1) - &e(1, 2),
        ];
        MatrixAlgebra::new(labels(&["S1", "S2", "S3", "S4", "S5", "S6"]), basis).expect("so(3,1)")
    }

    /// Heisenberg algebra: e₁ = E₁₂, e₂ = E₂₃, e₃ = E₁₃, [e₁, e₂] = e₃.
    pub fn heisenberg_matrices<T: Scalar>() -> MatrixAlgebra<T> {
        let e = |i, j| Mat::<T>::elementary(3, i, j);
        MatrixAlgebra::new(labels(&["e1", "e2", "e3"]), vec![e(1, 2), e(2, 3), e(1, 3)]).expect("h3")
    }

    fn pad4<T: Scalar>(m: &Mat<T>) -> Mat<T> {
        let mut out = Mat::zeros(4, 4);
        out.set_block(0, 0, m);
        out
    }

    /// se(3) twists (ω, v): rotation generators F(eᵢ) then translations E_{i,4}.
    pub fn se3_matrices<T: Scalar>() -> MatrixAlgebra<T> {
        let mut basis: Vec<Mat<T>> = (0..3)
            .map(|i| {
                let mut e = [T::zero(); 3];
                e[i] = T::one();
                pad4(&hat_cross(&e))
            })
            .collect();
        basis.extend((1..=3).map(|i| Mat::elementary(4, i, 4)));
        MatrixAlgebra::new(labels(&["w1", "w2", "w3", "v1", "v2", "v3"]), basis).expect("se(3)")
    }

    /// se(2,1) twists (n, v): H(eᵢ) then translations E_{i,4}.
    pub fn se21_matrices<T: Scalar>() -> MatrixAlgebra<T> {
        let mut basis: Vec<Mat<T>> = (0..3)
            .map(|i| {
                let mut e = [T::zero(); 3];
                e[i] = T::one();
                pad4(&hat_minkowski(&e))
            })
            .collect();
        basis.extend((1..=3).map(|i| Mat::elementary(4, i, 4)));
        MatrixAlgebra::new(labels(&["n1", "n2", "n3", "v1", "v2", "v3"]), basis).expect("se(2,1)")
    }

    pub fn so3<T: Scalar>() -> LieAlgebra<T> {
        so3_matrices().algebra
    }

    pub fn su2<T: Scalar>() -> LieAlgebra<T> {
        su2_matrices().algebra
    }

    pub fn sl2<T: Scalar>() -> LieAlgebra<T> {
        sl2_matrices().algebra
    }

    pub fn so21<T: Scalar>() -> LieAlgebra<T> {
        so21_matrices().algebra
    }

    pub fn so31<T: Scalar>() -> LieAlgebra<T> {
        so31_matrices().algebra
    }

    pub fn heisenberg<T: Scalar>() -> LieAlgebra<T> {
        heisenberg_matrices().algebra
    }

    /// Looks up a built-in by name (`so3`, `su2`, `sl2`, `so21`, `so31`, `h3`).
    pub fn by_name<T: Scalar>(name: &str) -> Result<LieAlgebra<T>> {
        match name {
            "so3" => Ok(so3()),
            "su2" => Ok(su2()),
            "sl2" => Ok(sl2()),
            "so21" => Ok(so21()),
            "so31" => Ok(so31()),
            "h3" => Ok(heisenberg()),
            other => Err(Error::Unknown(other.to_string())),
        }
    }

    /// The five simple built-ins.
    pub const SIMPLE: [&str; 5] = ["so3", "su2", "sl2", "so21", "so31"];
}

/// Max over basis pairs of |A[e_i,e_j] − [Ae_i, e_j]|.
pub fn centralizer_residual<T: Scalar>(alg: &LieAlgebra<T>, a: &LinearEndo<T>) -> T {
    let n = alg.dim();
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            let ei = alg.basis_vector(i);
            let ej = alg.basis_vector(j);
            let lhs = a.apply(&alg.bracket(&ei, &ej).expect("dims"));
            let rhs = alg.bracket(&a.apply(&ei), &ej).expect("dims");
            worst = worst.max(lhs.iter().zip(&rhs).fold(T::zero(), |m, (&x, &y)| m.max((x - y).abs())));
        }
    }
    worst
}

/// Residual of the Jacobi identity for three specific vectors.
pub fn jacobi_triple<T: Scalar>(alg: &LieAlgebra<T>, x: &[T], y: &[T], z: &[T]) -> Result<T> {
    let a = alg.bracket(x, &alg.bracket(y, z)?)?;
    let b = alg.bracket(y, &alg.bracket(z, x)?)?;
    let c = alg.bracket(z, &alg.bracket(x, y)?)?;
    let s: Vec<T> = (0..alg.dim()).map(|k| a[k] + b[k] + c[k]).collect();
    Ok(vec_max_abs(&s))
}

#[cfg(test)]
mod tests {
    use super::builtin::*;
    use super::*;

    fn e(n: usize, i: usize) -> Vec<f64> {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v
    }

    #[test]
    fn heisenberg_bracket_table() {
        let h = heisenberg::<f64>();
        assert_eq!(h.bracket(&e(3, 0), &e(3, 1)).unwrap(), e(3, 2));
        assert_eq!(h.bracket(&e(3, 1), &e(3, 0)).unwrap(), vec![0.0, 0.0, -1.0]);
        assert_eq!(h.bracket(&e(3, 0), &e(3, 2)).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn so31_bracket_table_matches_printed_relations() {
        let g = so31::<f64>();
        let s = |i: usize| e(6, i - 1);
        let neg = |v: Vec<f64>| v.into_iter().map(|x| -x).collect::<Vec<_>>();
        let table: &[(usize, usize, Vec<f64>)] = &[
            (1, 2, neg(s(6))),
            (1, 3, neg(s(5))),
            (1, 5, neg(s(3))),
            (1, 6, neg(s(2))),
            (2, 3, s(4)),
            (2, 4, s(3)),
            (2, 6, s(1)),
            (3, 4, neg(s(2))),
            (3, 5, s(1)),
            (4, 5, s(6)),
            (4, 6, neg(s(5))),
            (5, 6, s(4)),
        ];
        for (i, j, want) in table {
            let got = g.bracket(&s(*i), &s(*j)).unwrap();
            let d = got.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(d < 1e-14, "[S{i},S{j}] = {got:?}");
        }
        // every pair not listed vanishes
        for (i, j) in [(1, 4), (2, 5), (3, 6)] {
            assert!(vec_max_abs(&g.bracket(&s(i), &s(j)).unwrap()) < 1e-14);
        }
    }

    #[test]
    fn bracket_self_vanishes_and_dimension_errors() {
        let g = so31::<f64>();
        let x = [0.3, -1.2, 0.7, 2.0, 0.1, -0.4];
        assert!(vec_max_abs(&g.bracket(&x, &x).unwrap()) < 1e-15);
        assert_eq!(
            g.bracket(&x[..3], &x),
            Err(Error::DimensionMismatch { expected: 6, got: 3 })
        );
    }

    #[test]
    fn ad_matrix_cases() {
        let h = heisenberg::<f64>();
        let ad = h.ad_matrix(&e(3, 0)).unwrap();
        assert_eq!(ad.apply(&e(3, 1)), e(3, 2));
        assert_eq!(ad.apply(&e(3, 0)), vec![0.0; 3]);
        assert_eq!(ad.apply(&e(3, 2)), vec![0.0; 3]);
        assert_eq!(h.ad_matrix(&[0.0; 3]).unwrap().0.max_abs(), 0.0);
        // so(3): ad(L1) is the rotation generator about the first axis
        let g = so3::<f64>();
        let ad1 = g.ad_matrix(&e(3, 0)).unwrap();
        let want = Mat::from_rows(&[[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]]);
        assert!(ad1.0.dist(&want) < 1e-15);
    }

    #[test]
    fn killing_matrices() {
        let k = so31::<f64>().killing_form();
        let want = Mat::from_diag(&[4.0, 4.0, 4.0, -4.0, -4.0, -4.0]);
        assert!(k.matrix().dist(&want) < 1e-12);
        let k = sl2::<f64>().killing_form();
        assert!(k.matrix().dist(&Mat::from_diag(&[-1.0, 1.0, 1.0])) < 1e-12);
        let k = so21::<f64>().killing_form();
        assert!(k.matrix().dist(&Mat::from_diag(&[-1.0, 1.0, 1.0])) < 1e-12);
        assert_eq!(heisenberg::<f64>().killing_form().matrix().max_abs(), 0.0);
    }

    #[test]
    fn coad_cases() {
        let h = heisenberg::<f64>();
        let f = Covector(e(3, 2));
        assert_eq!(h.coad(&e(3, 0), &f).unwrap().0, vec![0.0, -1.0, 0.0]);
        assert_eq!(h.coad(&e(3, 0), &Covector::zero(3)).unwrap().0, vec![0.0; 3]);
        let g = so3::<f64>();
        let got = g.coad(&e(3, 0), &Covector(e(3, 1))).unwrap();
        let oracle = (-&g.ad_matrix(&e(3, 0)).unwrap().0.transpose()).mul_vec(&e(3, 1));
        assert_eq!(got.0, oracle);
    }

    #[test]
    fn centralizer_dimensions() {
        assert_eq!(so3::<f64>().centralizer_basis().len(), 1);
        assert_eq!(so31::<f64>().centralizer_basis().len(), 2);
        // regression baseline, not a structural claim: endomorphisms commuting
        // with every ad of the Heisenberg algebra
        assert_eq!(heisenberg::<f64>().centralizer_basis().len(), 3);
    }

    #[test]
    fn identity_lies_in_centralizer_span() {
        for name in SIMPLE {
            let g = by_name::<f64>(name).unwrap();
            let basis = g.centralizer_basis();
            let n = g.dim();
            let span = Mat::from_fn(n * n, basis.len(), |r, c| basis[c].0.as_slice()[r]);
            let id = Mat::column(Mat::<f64>::identity(n).as_slice());
            let back = &span * &(&span.transpose() * &id);
            assert!(back.dist(&id) < 1e-10, "{name}");
            assert!(g.centralizer_closure_residual() < 1e-10, "{name}");
        }
    }

    #[test]
    fn complex_structure_of_so31() {
        let g = so31::<f64>();
        let j = g.complex_structure_j().unwrap();
        let sq = &j.0 * &j.0;
        assert!((&sq + &Mat::identity(6)).max_abs() < 1e-10);
        assert!(centralizer_residual(&g, &j) < 1e-10);
        // the Killing form pulled back by J is 4x the printed E-sum
        let kj = &j.0.transpose() * g.killing_form().matrix();
        let mut display = Mat::<f64>::zeros(6, 6);
        for (a, b, s) in [(1, 4, 1.0), (2, 5, 1.0), (3, 6, -1.0)] {
            display[(a - 1, b - 1)] = s;
            display[(b - 1, a - 1)] = s;
        }
        assert!(kj.dist(&display.scale(4.0)) < 1e-10);
    }

    #[test]
    fn complex_structure_errors() {
        assert_eq!(so3::<f64>().complex_structure_j(), Err(Error::NoComplexStructure(1)));
    }

    #[test]
    fn derived_dimensions() {
        assert_eq!(so31::<f64>().derived_dim(), 6);
        assert_eq!(heisenberg::<f64>().derived_dim(), 1);
        assert_eq!(so3::<f64>().cotangent_algebra().derived_dim(), 6);
    }

    #[test]
    fn cotangent_algebra_structure() {
        let g = so3::<f64>();
        let t = g.cotangent_algebra();
        assert_eq!(t.dim(), 6);
        for i in 3..6 {
            for j in 3..6 {
                assert_eq!(t.bracket(&e(6, i), &e(6, j)).unwrap(), vec![0.0; 6]);
            }
        }
        let got = t.bracket(&e(6, 0), &e(6, 4)).unwrap();
        let coad = g.coad(&e(3, 0), &Covector(e(3, 1))).unwrap();
        assert_eq!(&got[..3], &[0.0; 3]);
        assert_eq!(&got[3..], coad.components());
        assert!(sl2::<f64>().cotangent_algebra().jacobi_residual() < 1e-12);
    }

    #[test]
    fn tangent_algebra_structure() {
        let g = so3::<f64>();
        let t = g.tangent_algebra();
        assert_eq!(t.bracket(&e(6, 3), &e(6, 4)).unwrap(), vec![0.0; 6]);
        // [e1, ē2] = ē3
        assert_eq!(t.bracket(&e(6, 0), &e(6, 4)).unwrap(), e(6, 5));
        assert!(t.jacobi_residual() < 1e-12);
    }

    #[test]
    fn ad_invariance_cases() {
        let g = so31::<f64>();
        assert!(g.ad_invariance_residual(&g.killing_form()).unwrap() < 1e-12);
        let s3 = so3::<f64>();
        let b = BilinearForm::new(Mat::elementary(3, 1, 1));
        assert!((s3.ad_invariance_residual(&b).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            s3.ad_invariance_residual(&g.killing_form()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn invariant_form_spaces() {
        assert_eq!(so31::<f64>().invariant_forms().len(), 2);
        assert_eq!(so3::<f64>().invariant_forms().len(), 1);
        for b in heisenberg::<f64>().invariant_forms() {
            assert!(b.matrix().det().abs() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let g = so31::<f64>();
        let text = serde_json::to_string(&g.to_json_doc()).unwrap();
        let back = LieAlgebra::<f64>::from_json(&text).unwrap();
        assert_eq!(back, g);
        let heis = r#"{"dim":3,"labels":["a","b","c"],"brackets":[{"i":0,"j":1,"coeffs":{"2":1.0}}]}"#;
        assert_eq!(LieAlgebra::<f64>::from_json(heis).unwrap().derived_dim(), 1);
        // [a,b]=a, [b,c]=b, [a,c]=c fails Jacobi
        let bad = r#"{"dim":3,"labels":["a","b","c"],"brackets":[
            {"i":0,"j":1,"coeffs":{"0":1.0}},{"i":1,"j":2,"coeffs":{"1":1.0}},{"i":0,"j":2,"coeffs":{"2":1.0}}]}"#;
        assert!(matches!(
            LieAlgebra::<f64>::from_json(bad),
            Err(Error::InvalidAlgebra(_))
        ));
        let lower = r#"{"dim":2,"labels":["a","b"],"brackets":[{"i":1,"j":0,"coeffs":{"0":1.0}}]}"#;
        assert!(LieAlgebra::<f64>::from_json(lower).is_err());
    }

    #[test]
    fn builtins_are_generic_over_f32() {
        let g = so31::<f32>();
        let k = g.killing_form();
        assert!((k.matrix()[(0, 0)] - 4.0).abs() < 1e-5);
        assert!((k.matrix()[(5, 5)] + 4.0).abs() < 1e-5);
    }
}
