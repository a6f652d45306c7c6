//! Vectorization, maximally entangled states over subspaces, the states
//! `|Psi_lambda^(phi)>` that pass weak Fourier sampling, and the subspaces
//! `M_lambda`.
//!
//! `vec A = sum_ij A_ij |i>|j>`, i.e. the row-major entries of `A`. With this
//! convention `(B ⊗ C) vec A = vec(B A C^T)`, which is how operators on the
//! left register are applied without forming Kronecker products.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::invalid;
use crate::kronecker::multiplicity_character;
use crate::linalg::{hermitian_eigen, inner, norm, orthonormalize, ComplexMatrix, MatrixAccumulator, C64, ZERO};
use crate::symgroup::Partition;
use crate::tolerance;
use crate::verifier::acceptance_operator_for;
use crate::yyrep::{GroupRep, RepContext};
use crate::{Error, Result};

/// A unit vector together with the dimensions of its tensor factors.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    registers: Vec<usize>,
    amplitudes: Vec<C64>,
}

impl StateVector {
    /// Fails unless the register dimensions multiply to the length and the
    /// vector has unit norm within [`tolerance::UNIT_NORM`].
    pub fn new(registers: Vec<usize>, amplitudes: Vec<C64>) -> Result<Self> {
        check_registers(&registers, amplitudes.len())?;
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(invalid!("state amplitudes must be finite"));
        }
        let nv = norm(&amplitudes);
        if (nv - 1.0).abs() > tolerance::UNIT_NORM {
            return Err(invalid!("state must have unit norm, got norm {}", nv));
        }
        Ok(StateVector { registers, amplitudes })
    }

    /// Single-register state.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        Self::new(alloc::vec![amplitudes.len()], amplitudes)
    }

    /// Normalizes `amplitudes`; also returns the original norm.
    pub fn normalized(registers: Vec<usize>, amplitudes: Vec<C64>) -> Result<(Self, f64)> {
        check_registers(&registers, amplitudes.len())?;
        let nv = norm(&amplitudes);
        if !nv.is_finite() || nv * nv < tolerance::DEGENERATE_NORM_SQR {
            return Err(Error::DegenerateInput(format!("cannot normalize a vector of norm {nv}")));
        }
        let amplitudes = amplitudes.into_iter().map(|z| z / nv).collect();
        Ok((StateVector { registers, amplitudes }, nv))
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn registers(&self) -> &[usize] {
        &self.registers
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &StateVector) -> C64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    /// Same amplitudes, different factorization.
    pub fn with_registers(mut self, registers: Vec<usize>) -> Result<Self> {
        check_registers(&registers, self.amplitudes.len())?;
        self.registers = registers;
        Ok(self)
    }
}

fn check_registers(registers: &[usize], len: usize) -> Result<()> {
    let product: usize = registers.iter().product();
    if registers.is_empty() || product != len {
        return Err(invalid!("registers {:?} do not multiply to the state length {}", registers, len));
    }
    Ok(())
}

/// A subspace of `C^ambient_dim` given by an orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<C64>>,
}

impl Subspace {
    pub fn empty(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    /// Checks orthonormality within [`tolerance::ORTHONORMAL`].
    pub fn from_orthonormal(ambient_dim: usize, basis: Vec<Vec<C64>>) -> Result<Self> {
        if basis.iter().any(|b| b.len() != ambient_dim) {
            return Err(invalid!("basis vectors must have length {}", ambient_dim));
        }
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate().skip(i) {
                let expected = if i == j { 1.0 } else { 0.0 };
                if (inner(a, b) - expected).norm() > tolerance::ORTHONORMAL {
                    return Err(invalid!("basis vectors {} and {} are not orthonormal", i, j));
                }
            }
        }
        Ok(Subspace { ambient_dim, basis })
    }

    /// Span of `vectors`, orthonormalized in order by modified Gram-Schmidt.
    pub fn from_spanning(ambient_dim: usize, vectors: &[Vec<C64>]) -> Result<Self> {
        if vectors.iter().any(|b| b.len() != ambient_dim) {
            return Err(invalid!("spanning vectors must have length {}", ambient_dim));
        }
        Ok(Subspace { ambient_dim, basis: orthonormalize(vectors, tolerance::ORTHONORMAL) })
    }

    /// Range of an orthogonal projector, read off its eigenvectors with
    /// eigenvalue near 1.
    pub fn image_of(projector: &ComplexMatrix) -> Result<Self> {
        let eig = hermitian_eigen(projector)?;
        let basis = (0..eig.values.len()).filter(|&k| eig.values[k] > 0.5).map(|k| eig.vector(k)).collect();
        Ok(Subspace { ambient_dim: projector.rows(), basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    /// Orthogonal projection of `v` onto the subspace.
    pub fn project(&self, v: &[C64]) -> Vec<C64> {
        let mut out = alloc::vec![ZERO; self.ambient_dim];
        for b in &self.basis {
            let c = inner(b, v);
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    /// `||(I - P) v||`.
    pub fn distance(&self, v: &[C64]) -> f64 {
        let p = self.project(v);
        let residual: Vec<C64> = v.iter().zip(&p).map(|(a, b)| a - b).collect();
        norm(&residual)
    }

    /// The projector `sum_i |b_i><b_i|`.
    pub fn projector(&self) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.ambient_dim, self.ambient_dim);
        for b in &self.basis {
            for i in 0..self.ambient_dim {
                for j in 0..self.ambient_dim {
                    p[(i, j)] += b[i] * b[j].conj();
                }
            }
        }
        p
    }

    /// Largest distance from a basis vector of `other` to `self`.
    pub fn containment_residual(&self, other: &Subspace) -> f64 {
        other.basis.iter().map(|b| self.distance(b)).fold(0.0, f64::max)
    }
}

/// `vec A`: the row-major entries of `A`.
pub fn vectorize(a: &ComplexMatrix) -> Vec<C64> {
    a.data().to_vec()
}

/// Inverse of [`vectorize`].
pub fn unvectorize(v: &[C64], rows: usize, cols: usize) -> Result<ComplexMatrix> {
    ComplexMatrix::from_vec(rows, cols, v.to_vec())
}

/// `vec A / ||A||_F` on registers `[rows, cols]`, and `||A||_F`.
pub fn vec_state(a: &ComplexMatrix) -> Result<(StateVector, f64)> {
    StateVector::normalized(alloc::vec![a.rows(), a.cols()], vectorize(a))
}

/// Side length `D` of a vector of length `D^2`.
pub fn square_side(len: usize) -> Result<usize> {
    let d = (len as f64).sqrt().round() as usize;
    if d * d != len {
        return Err(invalid!("length {} is not a perfect square", len));
    }
    Ok(d)
}

/// `(M ⊗ I) v` for `v` on `C^{M.cols} ⊗ C^k`, computed as `vec(M X)`.
pub fn apply_left_register(m: &ComplexMatrix, v: &[C64]) -> Result<Vec<C64>> {
    if m.cols() == 0 || !v.len().is_multiple_of(m.cols()) {
        return Err(invalid!("vector of length {} does not factor through a left register of dimension {}", v.len(), m.cols()));
    }
    let x = unvectorize(v, m.cols(), v.len() / m.cols())?;
    Ok(m.matmul(&x).into_data())
}

/// `(I ⊗ M) v` for `v` on `C^k ⊗ C^{M.cols}`, computed as `vec(X M^T)`.
pub fn apply_right_register(m: &ComplexMatrix, v: &[C64]) -> Result<Vec<C64>> {
    if m.cols() == 0 || !v.len().is_multiple_of(m.cols()) {
        return Err(invalid!("vector of length {} does not factor through a right register of dimension {}", v.len(), m.cols()));
    }
    let x = unvectorize(v, v.len() / m.cols(), m.cols())?;
    Ok(x.matmul(&m.transpose()).into_data())
}

/// `|Phi+> = (1/sqrt d) sum_i |i>|i>`.
pub fn phi_plus(d: usize) -> StateVector {
    let mut amps = alloc::vec![ZERO; d * d];
    let a = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    for i in 0..d {
        amps[i * d + i] = a;
    }
    StateVector { registers: alloc::vec![d, d], amplitudes: amps }
}

/// `|Phi_Pi> = (1/sqrt dim Pi) sum_i |b_i> ⊗ |conj b_i>` over the stored
/// orthonormal basis of `Pi`. The result equals `vec(P)/sqrt(dim Pi)` for the
/// projector `P` onto `Pi`, so it does not depend on the basis.
pub fn max_entangled_over(pi: &Subspace) -> Result<StateVector> {
    if pi.is_empty() {
        return Err(invalid!("maximally entangled state over the zero subspace"));
    }
    let n = pi.ambient_dim();
    let mut amps = alloc::vec![ZERO; n * n];
    for b in pi.basis() {
        for (i, bi) in b.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                amps[i * n + j] += bi * bj.conj();
            }
        }
    }
    let s = 1.0 / (pi.dim() as f64).sqrt();
    for z in &mut amps {
        *z *= s;
    }
    Ok(StateVector { registers: alloc::vec![n, n], amplitudes: amps })
}

/// `|Psi> = (1/sqrt A) sum_h conj(chi^lambda(h)) (sigma(h) ⊗ I) |phi>` and
/// the normalization `A`.
///
/// `phi` lives on `C^D ⊗ C^D`. Fails with [`Error::DegenerateInput`] when
/// `A < 1e-12`, i.e. `phi` has no component in the image of `Xi_lambda ⊗ I`.
pub fn psi_lambda(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition, phi: &StateVector) -> Result<(StateVector, f64)> {
    ctx.check_rep(sigma)?;
    ctx.partition_index(lambda)?;
    let d = sigma.dim();
    if phi.dim() != d * d {
        return Err(invalid!("state of dimension {} given for D^2 = {}", phi.dim(), d * d));
    }
    let x = unvectorize(phi.amplitudes(), d, d)?;
    let mut acc = MatrixAccumulator::new(d, d);
    for h in 0..ctx.order() {
        let chi = ctx.irrep_character(lambda, h)?;
        if chi == 0.0 {
            continue;
        }
        acc.add_scaled(C64::new(chi, 0.0), &ctx.image(sigma, h)?.matmul(&x));
    }
    let sum = acc.finish().into_data();
    let a = sum.iter().map(|z| z.norm_sqr()).sum::<f64>();
    if a < tolerance::DEGENERATE_NORM_SQR {
        return Err(Error::DegenerateInput(format!(
            "state has no component in the lambda = {} isotypic subspace (A = {a:e})",
            lambda
        )));
    }
    let s = 1.0 / a.sqrt();
    let amps = sum.into_iter().map(|z| z * s).collect();
    Ok((StateVector { registers: alloc::vec![d, d], amplitudes: amps }, a))
}

/// An orthonormal basis `w_{j,k}` (`j < m`, `k < d_lambda`) of the
/// `lambda`-isotypic subspace in which `sigma` acts as `I_m ⊗ rho^lambda`.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    lambda: Partition,
    multiplicity: usize,
    irrep_dim: usize,
    // D x (m d), column j*d + k holds w_{j,k}
    basis: ComplexMatrix,
}

impl BlockDecomposition {
    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn irrep_dim(&self) -> usize {
        self.irrep_dim
    }

    /// Columns `w_{j,k}`, ordered `j`-major.
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// `Xi_{lambda,j} = sum_k |w_{j,k}><w_{j,k}|`, the projector onto the
    /// `j`-th copy of `lambda`.
    pub fn block_projector(&self, j: usize) -> ComplexMatrix {
        let d = self.irrep_dim;
        let cols: Vec<Vec<C64>> = (0..d).map(|k| self.basis.column(j * d + k)).collect();
        let w = ComplexMatrix::from_columns(self.basis.rows(), &cols);
        w.matmul(&w.adjoint())
    }

    /// Sum of the block projectors.
    pub fn isotypic_projector(&self) -> ComplexMatrix {
        self.basis.matmul(&self.basis.adjoint())
    }

    /// Largest entrywise residual of `W^dagger sigma(s_i) W - I_m ⊗ rho^lambda(s_i)`
    /// over the generators.
    pub fn conjugation_residual(&self, sigma: &GroupRep) -> f64 {
        let rho = GroupRep::irrep(&self.lambda);
        let id = ComplexMatrix::identity(self.multiplicity);
        (1..sigma.degree())
            .map(|i| {
                let lhs = self.basis.adjoint().matmul(sigma.generator(i)).matmul(&self.basis);
                lhs.max_abs_diff(&id.kron(rho.generator(i)))
            })
            .fold(0.0, f64::max)
    }
}

/// Block decomposition from matrix units
/// `P_kl = (d/|G|) sum_g conj(rho_kl(g)) sigma(g)`: an orthonormal basis
/// `v_j` of the range of `P_00`, then `w_{j,k} = P_k0 v_j`.
pub fn block_decomposition(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition) -> Result<BlockDecomposition> {
    ctx.check_rep(sigma)?;
    let m = multiplicity_character(ctx, sigma, lambda)?.value;
    let d = lambda.dimension();
    let big_d = sigma.dim();
    let order = ctx.order();
    let mut units: Vec<MatrixAccumulator> = (0..d).map(|_| MatrixAccumulator::new(big_d, big_d)).collect();
    for g in 0..order {
        let rho = ctx.irrep_image(lambda, g)?;
        let s = ctx.image(sigma, g)?;
        for (k, acc) in units.iter_mut().enumerate() {
            let c = rho[(k, 0)].conj();
            if c != ZERO {
                acc.add_scaled(c, &s);
            }
        }
    }
    let scale = d as f64 / order as f64;
    let units: Vec<ComplexMatrix> = units.into_iter().map(|a| a.finish().scale_real(scale)).collect();
    let seeds = Subspace::image_of(&units[0])?;
    if seeds.dim() != m {
        return Err(Error::NumericalConsistency(format!(
            "matrix unit P_00 for lambda = {} has rank {} but the multiplicity is {}",
            lambda,
            seeds.dim(),
            m
        )));
    }
    let mut columns = Vec::with_capacity(m * d);
    for v in seeds.basis() {
        for unit in &units {
            columns.push(unit.mul_vec(v));
        }
    }
    let basis = ComplexMatrix::from_columns(big_d, &columns);
    let residual = basis.adjoint().matmul(&basis).max_abs_diff(&ComplexMatrix::identity(m * d));
    if residual > tolerance::ORTHONORMAL {
        return Err(Error::NumericalConsistency(format!(
            "block basis for lambda = {lambda} is not orthonormal (residual {residual:e})"
        )));
    }
    Ok(BlockDecomposition { lambda: lambda.clone(), multiplicity: m, irrep_dim: d, basis })
}

/// How [`m_lambda_subspace`] builds `M_lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MLambdaRoute {
    /// Span of `Phi_{Xi_{lambda,j}}` over the blocks of a block decomposition
    /// (dimension `m`).
    Span,
    /// Eigenvalue-1 eigenspace of the acceptance operator
    /// `(Xi_lambda ⊗ I) T (Xi_lambda ⊗ I)` (dimension `m^2`).
    FixedPoint,
}

/// `M_lambda` inside `C^D ⊗ C^D`; empty when `m_{sigma lambda} = 0`.
pub fn m_lambda_subspace(ctx: &RepContext, sigma: &GroupRep, lambda: &Partition, route: MLambdaRoute) -> Result<Subspace> {
    let big_d = sigma.dim();
    match route {
        MLambdaRoute::Span => {
            let blocks = block_decomposition(ctx, sigma, lambda)?;
            let scale = C64::new(1.0 / (blocks.irrep_dim() as f64).sqrt(), 0.0);
            let vectors: Vec<Vec<C64>> = (0..blocks.multiplicity())
                .map(|j| vectorize(&blocks.block_projector(j).scale(scale)))
                .collect();
            Subspace::from_spanning(big_d * big_d, &vectors)
        }
        MLambdaRoute::FixedPoint => Ok(acceptance_operator_for(ctx, sigma, lambda)?.accepting_subspace()),
    }
}
