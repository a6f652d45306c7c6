//! Dense complex matrices and the handful of kernels the rest of the crate
//! needs: products, Kronecker products, compensated accumulation,
//! Gram-Schmidt and a Hermitian eigensolver.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::invalid;
use crate::Result;

pub type C64 = Complex<f64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Builds a matrix from row-major entries; fails if the entry count does
    /// not match or an entry is not finite.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(invalid!(
                "matrix of shape {}x{} needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            ));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(invalid!("matrix entries must be finite"));
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, entries.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    /// Outer product `u v^dagger`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<C64>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<C64> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> ComplexMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> ComplexMatrix {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> ComplexMatrix {
        ComplexMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn scale(&self, s: C64) -> ComplexMatrix {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> ComplexMatrix {
        self.map(|z| z * s)
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &ComplexMatrix, f: impl Fn(C64, C64) -> C64) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (r2, c2) = (other.rows, other.cols);
        let mut out = ComplexMatrix::zeros(self.rows * r2, self.cols * c2);
        let out_cols = out.cols;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a == ZERO {
                    continue;
                }
                for k in 0..r2 {
                    let dst = (i * r2 + k) * out_cols + j * c2;
                    for (o, b) in out.data[dst..dst + c2].iter_mut().zip(other.row(k)) {
                        *o = a * b;
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius inner product `tr(self^dagger other)`.
    pub fn frobenius_inner(&self, other: &ComplexMatrix) -> C64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise residual of `self^dagger self - I`.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint().matmul(self).max_abs_diff(&ComplexMatrix::identity(self.cols))
    }

    /// Entrywise residual of `self - self^dagger`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Submatrix of rows `r0..r0+rows` and columns `c0..c0+cols`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> ComplexMatrix {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Neumaier-compensated running sum of equally shaped matrices.
///
/// Real and imaginary parts carry separate compensation terms. Adding the
/// same terms in the same order always produces the same bits.
#[derive(Clone, Debug)]
pub struct MatrixAccumulator {
    rows: usize,
    cols: usize,
    sum: Vec<[f64; 2]>,
    comp: Vec<[f64; 2]>,
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl MatrixAccumulator {
    pub fn new(rows: usize, cols: usize) -> Self {
        MatrixAccumulator { rows, cols, sum: vec![[0.0; 2]; rows * cols], comp: vec![[0.0; 2]; rows * cols] }
    }

    /// Adds `coef * m`.
    pub fn add_scaled(&mut self, coef: C64, m: &ComplexMatrix) {
        assert_eq!((self.rows, self.cols), (m.rows, m.cols), "shape mismatch");
        for ((s, c), z) in self.sum.iter_mut().zip(self.comp.iter_mut()).zip(&m.data) {
            if *z == ZERO {
                continue;
            }
            let w = coef * z;
            neumaier(&mut s[0], &mut c[0], w.re);
            neumaier(&mut s[1], &mut c[1], w.im);
        }
    }

    /// Folds another accumulator in, sums and compensations separately.
    pub fn merge(&mut self, other: &MatrixAccumulator) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        for i in 0..self.sum.len() {
            for p in 0..2 {
                neumaier(&mut self.sum[i][p], &mut self.comp[i][p], other.sum[i][p]);
                neumaier(&mut self.sum[i][p], &mut self.comp[i][p], other.comp[i][p]);
            }
        }
    }

    pub fn finish(self) -> ComplexMatrix {
        let data = self.sum.iter().zip(&self.comp).map(|(s, c)| C64::new(s[0] + c[0], s[1] + c[1])).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, data }
    }
}

/// `<a|b> = sum conj(a_i) b_i`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    assert_eq!(a.len(), b.len(), "inner product length mismatch");
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn scale_vec(v: &[C64], s: C64) -> Vec<C64> {
    v.iter().map(|z| z * s).collect()
}

/// `y += a x`
pub fn axpy(y: &mut [C64], a: C64, x: &[C64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// Vectors whose residual norm falls below `drop_tol` are discarded. The
/// output depends only on the input order.
pub fn orthonormalize(vectors: &[Vec<C64>], drop_tol: f64) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _pass in 0..2 {
            for b in &basis {
                let c = inner(b, &w);
                axpy(&mut w, -c, b);
            }
        }
        let nw = norm(&w);
        if nw > drop_tol {
            basis.push(scale_vec(&w, C64::new(1.0 / nw, 0.0)));
        }
    }
    basis
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of the pivot `a_pq`, then applies
/// the real symmetric Jacobi rotation. Eigenvectors come out orthonormal to
/// machine precision, which the subspace computations rely on.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(invalid!("eigendecomposition needs a square matrix, got {}x{}", a.rows, a.cols));
    }
    let n = a.rows;
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    if a.hermiticity_residual() > 1e-9 * scale.max(1.0) {
        return Err(invalid!("matrix is not Hermitian"));
    }
    let mut m = a.clone();
    // Symmetrize exactly so rotations act on a truly Hermitian matrix.
    for i in 0..n {
        m[(i, i)] = C64::new(m[(i, i)].re, 0.0);
        for j in i + 1..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let off_norm = |m: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let total = m.frobenius_norm().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        if off_norm(&m) <= 1e-15 * total {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r; // e^{i phi}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane.
                let jpp = C64::new(c, 0.0);
                let jpq = C64::new(s, 0.0);
                let jqp = phase.conj() * (-s);
                let jqq = phase.conj() * c;
                // m <- m J
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * jpp + mkq * jqp;
                    m[(k, q)] = mkp * jpq + mkq * jqq;
                }
                // m <- J^dagger m
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = jpp.conj() * mpk + jqp.conj() * mqk;
                    m[(q, k)] = jpq.conj() * mpk + jqq.conj() * mqk;
                }
                m[(p, q)] = ZERO;
                m[(q, p)] = ZERO;
                m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    if off_norm(&m) > 1e-10 * total {
        return Err(crate::Error::NumericalConsistency(alloc::format!(
            "Jacobi eigensolver did not converge on a {n}x{n} matrix"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re).then(i.cmp(&j)));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermitianEigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_of_small_matrices() {
        let a = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = ComplexMatrix::from_real(2, 1, &[0.0, 1.0]).unwrap();
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (4, 2));
        let expect = [0.0, 0.0, 1.0, 2.0, 0.0, 0.0, 3.0, 4.0];
        for (z, e) in k.data().iter().zip(expect) {
            assert_eq!(*z, c(e, 0.0));
        }
    }

    #[test]
    fn from_vec_rejects_bad_shapes_and_nan() {
        assert!(ComplexMatrix::from_vec(2, 2, vec![ONE; 3]).is_err());
        assert!(ComplexMatrix::from_vec(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn accumulator_compensates() {
        let big = ComplexMatrix::from_real(1, 1, &[1e16]).unwrap();
        let one = ComplexMatrix::from_real(1, 1, &[1.0]).unwrap();
        let mut acc = MatrixAccumulator::new(1, 1);
        acc.add_scaled(ONE, &big);
        for _ in 0..10 {
            acc.add_scaled(ONE, &one);
        }
        acc.add_scaled(-ONE, &big);
        assert_eq!(acc.finish()[(0, 0)], c(10.0, 0.0));
    }

    #[test]
    fn gram_schmidt_drops_dependent_vectors() {
        let v1 = vec![ONE, ONE, ZERO];
        let v2 = vec![c(2.0, 0.0), c(2.0, 0.0), ZERO];
        let v3 = vec![ZERO, c(0.0, 1.0), ONE];
        let b = orthonormalize(&[v1, v2, v3], 1e-10);
        assert_eq!(b.len(), 2);
        assert!(inner(&b[0], &b[1]).norm() < 1e-14);
        assert!((norm(&b[1]) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_on_complex_hermitian() {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1.
        let a = ComplexMatrix::from_vec(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        let e = hermitian_eigen(&a).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-12);
        assert!((e.values[1] - 1.0).abs() < 1e-12);
        for k in 0..2 {
            let v = e.vector(k);
            let av = a.mul_vec(&v);
            for (x, y) in av.iter().zip(&v) {
                assert!((x - y * e.values[k]).norm() < 1e-12);
            }
        }
        assert!(e.vectors.unitarity_residual() < 1e-12);
    }

    #[test]
    fn jacobi_rejects_non_hermitian() {
        let a = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(hermitian_eigen(&a).is_err());
    }
}
