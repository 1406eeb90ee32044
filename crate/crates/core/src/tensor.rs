//! Dense complex linear algebra used by every other module.
//!
//! Matrices are stored row-major and are never mutated after construction;
//! all operations return new values. Hermitian eigenproblems are delegated to
//! `nalgebra`'s tridiagonal solver and then post-processed into ascending,
//! column-orthonormal form with an explicit residual.

use std::ops::Index;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// A plain complex column vector.
pub type ComplexVector = Vec<C64>;

/// Relative Hermiticity tolerance: `max|M - M^H| <= tol * (1 + max|M|)`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Relative eigenvalue cutoff for rank, inertia and range computations.
pub const RANK_TOL: f64 = 1e-9;
/// Relative residual below which a vector counts as a subspace member.
pub const MEMBER_TOL: f64 = 1e-8;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", rows * cols),
                found: format!("{} entries", data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Result<Self> {
        Self::new(rows, cols, values.iter().map(|&x| re(x)).collect())
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { re(values[i]) } else { ZERO })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[ComplexVector]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "column length mismatch");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    /// `|v><v|`.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        Self::from_fn(n, n, |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn data(&self) -> &[C64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<ComplexVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = vec![ZERO; self.rows * other.cols];
        for i in 0..self.rows {
            let row = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                let brow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Self {
            rows: self.rows,
            cols: other.cols,
            data: out,
        }
    }

    pub fn mul_vec(&self, v: &[C64]) -> ComplexVector {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `v^H M v`.
    pub fn quadratic(&self, v: &[C64]) -> C64 {
        vector::inner(v, &self.mul_vec(v))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |M[i,j] - conj(M[j,i])|`; infinite for non-square input.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol * (1.0 + self.max_abs())
    }

    pub fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        let defect = self.hermiticity_defect();
        let allowed = tol * (1.0 + self.max_abs());
        if defect <= allowed {
            Ok(())
        } else {
            Err(Error::NotHermitian { defect, allowed })
        }
    }

    /// Principal submatrix on the given (ordered) index list.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |i, j| self.get(idx[i], idx[j]))
    }

    /// `M'[i,j] = M[perm[i], perm[j]]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rows);
        Self::from_fn(self.rows, self.cols, |i, j| self.get(perm[i], perm[j]))
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

/// `(A ⊗ B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l]`.
pub fn kron(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let (rb, cb) = (b.rows, b.cols);
    DenseMatrix::from_fn(a.rows * rb, a.cols * cb, |r, c| {
        a.get(r / rb, c / cb) * b.get(r % rb, c % cb)
    })
}

pub mod vector {
    use super::{ComplexVector, C64, ZERO};

    /// Conjugate-linear in the first argument.
    pub fn inner(a: &[C64], b: &[C64]) -> C64 {
        assert_eq!(a.len(), b.len(), "vector length mismatch");
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    }

    pub fn norm(v: &[C64]) -> f64 {
        v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(v: &[C64], s: C64) -> ComplexVector {
        v.iter().map(|&z| z * s).collect()
    }

    pub fn sub(a: &[C64], b: &[C64]) -> ComplexVector {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn add(a: &[C64], b: &[C64]) -> ComplexVector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn conj(v: &[C64]) -> ComplexVector {
        v.iter().map(|z| z.conj()).collect()
    }

    /// Unit vector along `v`, or `None` when `v` is (numerically) zero.
    pub fn normalized(v: &[C64]) -> Option<ComplexVector> {
        let n = norm(v);
        (n > 0.0 && n.is_finite()).then(|| v.iter().map(|&z| z / n).collect())
    }

    pub fn kron(a: &[C64], b: &[C64]) -> ComplexVector {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for &x in a {
            for &y in b {
                out.push(x * y);
            }
        }
        out
    }

    pub fn basis(dim: usize, k: usize) -> ComplexVector {
        let mut v = vec![ZERO; dim];
        v[k] = super::ONE;
        v
    }

    pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct EigenResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal columns, matched to `eigenvalues`.
    pub eigenvectors: DenseMatrix,
    /// `||M V - V diag(λ)||_F`.
    pub residual: f64,
}

impl EigenResult {
    pub fn vector(&self, k: usize) -> ComplexVector {
        self.eigenvectors.column(k)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// Spectral norm of the decomposed (Hermitian) matrix.
    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    /// Absolute cutoff `tol * max(1, ||M||_2)`.
    pub fn threshold(&self, tol: f64) -> f64 {
        tol * self.spectral_norm().max(1.0)
    }

    pub fn inertia(&self, tol: f64) -> Inertia {
        let tau = self.threshold(tol);
        let n_plus = self.eigenvalues.iter().filter(|&&x| x > tau).count();
        let n_minus = self.eigenvalues.iter().filter(|&&x| x < -tau).count();
        Inertia {
            n_plus,
            n_minus,
            n_zero: self.eigenvalues.len() - n_plus - n_minus,
            threshold: tau,
        }
    }

    pub fn range(&self, tol: f64) -> DenseMatrix {
        let tau = self.threshold(tol);
        let cols: Vec<_> = self
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, x)| x.abs() > tau)
            .map(|(k, _)| self.vector(k))
            .collect();
        DenseMatrix::from_columns(self.eigenvectors.rows(), &cols)
    }
}

/// Eigendecomposition of a Hermitian matrix with ascending eigenvalues.
///
/// The input is symmetrized as `(M + M^H)/2` after the tolerance check so the
/// solver sees an exactly Hermitian matrix.
pub fn hermitian_eig(m: &DenseMatrix, tol: f64) -> Result<EigenResult> {
    m.ensure_hermitian(tol)?;
    let n = m.rows();
    if n == 0 {
        return Ok(EigenResult {
            eigenvalues: vec![],
            eigenvectors: DenseMatrix::zeros(0, 0),
            residual: 0.0,
        });
    }
    let sym = DenseMatrix::from_fn(n, n, |i, j| (m.get(i, j) + m.get(j, i).conj()) * 0.5);
    let eig = SymmetricEigen::new(sym.to_nalgebra());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]).then(a.cmp(&b)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DenseMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);

    let mv = m.matmul(&vectors);
    let mut res = 0.0;
    for i in 0..n {
        for j in 0..n {
            res += (mv.get(i, j) - vectors.get(i, j) * eigenvalues[j]).norm_sqr();
        }
    }
    Ok(EigenResult {
        eigenvalues,
        eigenvectors: vectors,
        residual: res.sqrt(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
    pub threshold: f64,
}

impl Inertia {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.n_plus, self.n_minus, self.n_zero)
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }
}

/// Counts of eigenvalues above `τ`, below `-τ`, and in `[-τ, τ]`,
/// with `τ = tol * max(1, ||M||_2)`.
pub fn inertia_of(m: &DenseMatrix, tol: f64) -> Result<Inertia> {
    Ok(hermitian_eig(m, HERMITIAN_TOL)?.inertia(tol))
}

/// Orthonormal basis (as columns) of the eigenspaces with `|λ| > τ`.
pub fn range_basis(m: &DenseMatrix, tol: f64) -> Result<DenseMatrix> {
    Ok(hermitian_eig(m, HERMITIAN_TOL)?.range(tol))
}

pub fn rank(m: &DenseMatrix, tol: f64) -> Result<usize> {
    Ok(range_basis(m, tol)?.cols())
}

/// `||v - B B^H v|| / ||v||` for a basis `B` with orthonormal columns.
pub fn subspace_residual(v: &[C64], basis: &DenseMatrix) -> Result<f64> {
    let nv = vector::norm(v);
    if nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    if basis.rows() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: format!("vector of length {}", basis.rows()),
            found: format!("length {}", v.len()),
        });
    }
    let mut proj = vec![ZERO; v.len()];
    for k in 0..basis.cols() {
        let col = basis.column(k);
        let c = vector::inner(&col, v);
        for (p, b) in proj.iter_mut().zip(&col) {
            *p += b * c;
        }
    }
    let r = vector::norm(&vector::sub(v, &proj)) / nv;
    Ok(r.clamp(0.0, 1.0))
}

/// Singular value decomposition `M = U diag(s) V^H` with `s` descending.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: DenseMatrix,
    pub singular_values: Vec<f64>,
    pub v: DenseMatrix,
}

/// Thin SVD (`k = min(rows, cols)` columns) read off the Hermitian dilation
/// `[[0, M], [M^H, 0]]`, whose eigenpairs are `(±s, (u, ±v)/√2)`.
///
/// `nalgebra`'s complex SVD loses accuracy on rank-deficient inputs, while
/// its Hermitian solver does not. Pairs with `s` at roundoff level are
/// replaced by orthonormal completions.
pub fn svd(m: &DenseMatrix) -> Svd {
    let (r, c) = (m.rows(), m.cols());
    let k = r.min(c);
    if k == 0 {
        return Svd {
            u: DenseMatrix::zeros(r, 0),
            singular_values: vec![],
            v: DenseMatrix::zeros(c, 0),
        };
    }
    let h = DenseMatrix::from_fn(r + c, r + c, |i, j| match (i < r, j < r) {
        (true, false) => m.get(i, j - r),
        (false, true) => m.get(j, i - r).conj(),
        _ => ZERO,
    });
    let e = hermitian_eig(&h, HERMITIAN_TOL).expect("dilation is Hermitian");
    let n = r + c;
    let top = e.eigenvalues[n - 1].max(0.0);
    let cut = 1e-12 * top.max(f64::MIN_POSITIVE) * n as f64;
    let mut singular_values = Vec::with_capacity(k);
    let mut us = Vec::with_capacity(k);
    let mut vs = Vec::with_capacity(k);
    for idx in (n - k..n).rev() {
        let s = e.eigenvalues[idx].max(0.0);
        singular_values.push(s);
        if s > cut {
            let z = e.vector(idx);
            us.push(vector::normalized(&z[..r]).expect("nonzero half"));
            vs.push(vector::normalized(&z[r..]).expect("nonzero half"));
        }
    }
    let complete = |mut cols: Vec<ComplexVector>, dim: usize| {
        let mut cand = cols.clone();
        cand.extend((0..dim).map(|j| vector::basis(dim, j)));
        cols = orthonormalize(&cand, 1e-8);
        cols.truncate(k);
        DenseMatrix::from_columns(dim, &cols)
    };
    Svd {
        u: complete(us, r),
        singular_values,
        v: complete(vs, c),
    }
}

/// Orthonormalize columns with two passes of modified Gram-Schmidt, dropping
/// columns whose remaining norm falls below `drop_tol` relative to their
/// original norm.
pub fn orthonormalize(columns: &[ComplexVector], drop_tol: f64) -> Vec<ComplexVector> {
    let mut out: Vec<ComplexVector> = Vec::new();
    for c in columns {
        let n0 = vector::norm(c);
        if n0 == 0.0 {
            continue;
        }
        let mut w = c.clone();
        for _ in 0..2 {
            for q in &out {
                let p = vector::inner(q, &w);
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= qi * p;
                }
            }
        }
        let n = vector::norm(&w);
        if n > drop_tol * n0 {
            out.push(w.iter().map(|z| z / n).collect());
        }
    }
    out
}

/// Numerical rank of a set of vectors: singular values above
/// `tol * max(1, σ_max)` of the matrix having them as columns.
pub fn span_rank(vectors: &[ComplexVector], dim: usize, tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = DenseMatrix::from_columns(dim, vectors);
    let s = svd(&m).singular_values;
    let tau = tol * s.first().copied().unwrap_or(0.0).max(1.0);
    s.iter().filter(|&&x| x > tau).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_identities_give_identity() {
        let i2 = DenseMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), DenseMatrix::identity(4));
    }

    #[test]
    fn kron_of_diagonals() {
        let a = DenseMatrix::diag_real(&[1.0, 2.0]);
        let b = DenseMatrix::diag_real(&[3.0, 4.0]);
        assert_eq!(kron(&a, &b), DenseMatrix::diag_real(&[3.0, 4.0, 6.0, 8.0]));
    }

    #[test]
    fn kron_basis_vectors_land_on_enumerated_index() {
        // e_2 ⊗ e_1 in (2,2): brute-force enumeration of (i, k) pairs in
        // row-major order puts (1, 0) at position 2.
        let mut pos = None;
        for (idx, (i, k)) in (0..2).flat_map(|i| (0..2).map(move |k| (i, k))).enumerate() {
            if (i, k) == (1, 0) {
                pos = Some(idx);
            }
        }
        let v = vector::kron(&vector::basis(2, 1), &vector::basis(2, 0));
        let hot: Vec<usize> = (0..4).filter(|&k| v[k] != ZERO).collect();
        assert_eq!(hot, vec![pos.unwrap()]);
        assert_eq!(hot, vec![2]);
    }

    #[test]
    fn eig_of_diagonal() {
        let m = DenseMatrix::diag_real(&[0.0, 1.0, -2.0]);
        let e = hermitian_eig(&m, HERMITIAN_TOL).unwrap();
        assert_eq!(e.eigenvalues, vec![-2.0, 0.0, 1.0]);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = DenseMatrix::from_real(2, 2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
        assert!(matches!(
            hermitian_eig(&m, HERMITIAN_TOL),
            Err(Error::NotHermitian { .. })
        ));
        assert!(inertia_of(&m, RANK_TOL).is_err());
        assert!(range_basis(&m, RANK_TOL).is_err());
    }

    #[test]
    fn identity_inertia() {
        let i = inertia_of(&DenseMatrix::identity(4), RANK_TOL).unwrap();
        assert_eq!(i.counts(), (4, 0, 0));
    }

    #[test]
    fn zero_matrix_has_empty_range() {
        assert_eq!(range_basis(&DenseMatrix::zeros(5, 5), RANK_TOL).unwrap().cols(), 0);
    }

    #[test]
    fn rank_one_projector_range() {
        let psi = vector::normalized(&[re(1.0), C64::new(0.0, 2.0), re(-1.0)]).unwrap();
        let b = range_basis(&DenseMatrix::outer(&psi), RANK_TOL).unwrap();
        assert_eq!(b.cols(), 1);
        let overlap = vector::inner(&b.column(0), &psi).norm();
        assert!((overlap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn residual_extremes() {
        let b = DenseMatrix::from_columns(3, &[vector::basis(3, 0), vector::basis(3, 1)]);
        assert!(subspace_residual(&vector::basis(3, 1), &b).unwrap() < 1e-15);
        assert!((subspace_residual(&vector::basis(3, 2), &b).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(subspace_residual(&[ZERO; 3], &b), Err(Error::ZeroVector));
    }

    #[test]
    fn svd_sorted_and_reconstructs() {
        let m = DenseMatrix::from_fn(3, 4, |i, j| C64::new((i * 4 + j) as f64, (i as f64) - (j as f64)));
        let d = svd(&m);
        assert!(d.singular_values.windows(2).all(|w| w[0] >= w[1]));
        let s = DenseMatrix::from_fn(3, 3, |i, j| if i == j { re(d.singular_values[i]) } else { ZERO });
        let back = d.u.matmul(&s).matmul(&d.v.adjoint());
        assert!(back.max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn svd_rank_deficient_wide() {
        // rank 2, 4x6: nalgebra's complex SVD reconstructs such inputs poorly
        let a = |k: usize| C64::new((k as f64 * 0.7).sin(), (k as f64 * 1.3).cos());
        let x: ComplexVector = (0..4).map(a).collect();
        let y: ComplexVector = (0..6).map(|k| a(k + 5)).collect();
        let p: ComplexVector = (0..4).map(|k| a(k + 11)).collect();
        let q: ComplexVector = (0..6).map(|k| a(k + 17)).collect();
        let m = DenseMatrix::from_fn(4, 6, |i, j| x[i] * y[j] + p[i] * q[j]);
        let d = svd(&m);
        let s = DenseMatrix::diag_real(&d.singular_values);
        assert!(d.u.matmul(&s).matmul(&d.v.adjoint()).max_abs_diff(&m) < 1e-12);
        assert!(d.u.adjoint().matmul(&d.u).max_abs_diff(&DenseMatrix::identity(4)) < 1e-12);
        assert!(d.v.adjoint().matmul(&d.v).max_abs_diff(&DenseMatrix::identity(4)) < 1e-12);
        assert!(d.singular_values[2] < 1e-12);
    }
}
