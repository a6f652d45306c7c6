//! Young-Yamanouchi (Young's orthogonal form) irreps of `S_n`, derived
//! representations, characters and the dense group Fourier transform.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::invalid;
use crate::linalg::{ComplexMatrix, C64, ONE, ZERO};
use crate::symgroup::{enumerate_partitions, enumerate_tableaux, Partition, Permutation, SymmetricGroup};
use crate::{factorial, Error, Limits, Result};

/// Image of the adjacent transposition `s_i` in the irrep `lambda`.
///
/// Rows and columns follow [`enumerate_tableaux`]. Column `k` holds
/// `1/tau` on the diagonal and `sqrt(1 - 1/tau^2)` at the tableau obtained by
/// swapping `i` and `i+1`, when that tableau is standard.
pub fn yy_generator_matrix(lambda: &Partition, i: usize) -> Result<ComplexMatrix> {
    let n = lambda.n();
    if i == 0 || i >= n {
        return Err(invalid!("generator index {} outside 1..={}", i, n.saturating_sub(1)));
    }
    let tableaux = enumerate_tableaux(lambda);
    let words: Vec<Vec<usize>> = tableaux.iter().map(|t| t.reading_word()).collect();
    let d = tableaux.len();
    let mut m = ComplexMatrix::zeros(d, d);
    for (k, t) in tableaux.iter().enumerate() {
        let tau = t.axial_distance(i)? as f64;
        m[(k, k)] = C64::new(1.0 / tau, 0.0);
        if let Some(swapped) = t.swapped(i) {
            let l = words.binary_search(&swapped.reading_word()).expect("swapped tableau is enumerated");
            m[(l, k)] = C64::new((1.0 - 1.0 / (tau * tau)).sqrt(), 0.0);
        }
    }
    Ok(m)
}

/// How a [`GroupRep`] was built.
#[derive(Clone, Debug, PartialEq)]
pub enum RepKind {
    Irrep(Partition),
    /// `a ⊗ b`, the same group acting on both factors.
    Tensor(Box<GroupRep>, Box<GroupRep>),
    /// `|g>|h> -> |g h>` on the group algebra.
    LeftRegular,
    /// `|g>|h> -> |h g^{-1}>` on the group algebra.
    RightRegular,
    /// `sigma ⊗ I_d`: acts on the left of two registers.
    LiftWithIdentity(Box<GroupRep>, usize),
    /// `I_m ⊗ sigma`: `m` copies of `sigma`.
    Amplified(usize, Box<GroupRep>),
    /// Entrywise complex conjugate.
    Conjugate(Box<GroupRep>),
}

/// A unitary representation of `S_n`, stored as its images of the adjacent
/// transpositions `s_1, ..., s_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRep {
    n: usize,
    dim: usize,
    kind: RepKind,
    generators: Vec<ComplexMatrix>,
}

impl GroupRep {
    /// The Young-Yamanouchi irrep `rho^lambda`.
    pub fn irrep(lambda: &Partition) -> GroupRep {
        let n = lambda.n();
        let generators = (1..n).map(|i| yy_generator_matrix(lambda, i).expect("index in range")).collect();
        GroupRep { n, dim: lambda.dimension(), kind: RepKind::Irrep(lambda.clone()), generators }
    }

    pub fn tensor(a: &GroupRep, b: &GroupRep) -> Result<GroupRep> {
        if a.n != b.n {
            return Err(invalid!("tensor product of representations of S_{} and S_{}", a.n, b.n));
        }
        let generators = a.generators.iter().zip(&b.generators).map(|(x, y)| x.kron(y)).collect();
        Ok(GroupRep {
            n: a.n,
            dim: a.dim * b.dim,
            kind: RepKind::Tensor(Box::new(a.clone()), Box::new(b.clone())),
            generators,
        })
    }

    /// `sigma ⊗ I_d`.
    pub fn lift_with_identity(sigma: &GroupRep, d: usize) -> GroupRep {
        let id = ComplexMatrix::identity(d);
        GroupRep {
            n: sigma.n,
            dim: sigma.dim * d,
            kind: RepKind::LiftWithIdentity(Box::new(sigma.clone()), d),
            generators: sigma.generators.iter().map(|g| g.kron(&id)).collect(),
        }
    }

    /// `I_m ⊗ sigma`.
    pub fn amplified(copies: usize, sigma: &GroupRep) -> GroupRep {
        let id = ComplexMatrix::identity(copies);
        GroupRep {
            n: sigma.n,
            dim: sigma.dim * copies,
            kind: RepKind::Amplified(copies, Box::new(sigma.clone())),
            generators: sigma.generators.iter().map(|g| id.kron(g)).collect(),
        }
    }

    pub fn conjugate(sigma: &GroupRep) -> GroupRep {
        GroupRep {
            n: sigma.n,
            dim: sigma.dim,
            kind: RepKind::Conjugate(Box::new(sigma.clone())),
            generators: sigma.generators.iter().map(ComplexMatrix::conj).collect(),
        }
    }

    fn regular(group: &SymmetricGroup, left: bool) -> GroupRep {
        let n = group.degree();
        let generators = (1..n)
            .map(|i| regular_matrix(group, &Permutation::adjacent(n, i).unwrap(), left))
            .collect();
        let kind = if left { RepKind::LeftRegular } else { RepKind::RightRegular };
        GroupRep { n, dim: group.order(), kind, generators }
    }

    /// Degree `n` of the acting group `S_n`.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Dimension `D` of the representation space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &RepKind {
        &self.kind
    }

    /// Image of `s_i`, `1 <= i <= n-1`.
    pub fn generator(&self, i: usize) -> &ComplexMatrix {
        &self.generators[i - 1]
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    /// Short textual label: `2,1`, `2,1x2,1`, `left:3`, `lift(2,1;2)`, ...
    pub fn label(&self) -> String {
        match &self.kind {
            RepKind::Irrep(l) => format!("{l}"),
            RepKind::Tensor(a, b) => format!("{}x{}", a.label(), b.label()),
            RepKind::LeftRegular => format!("left:{}", self.n),
            RepKind::RightRegular => format!("right:{}", self.n),
            RepKind::LiftWithIdentity(s, d) => format!("lift({};{})", s.label(), d),
            RepKind::Amplified(m, s) => format!("amp({};{})", m, s.label()),
            RepKind::Conjugate(s) => format!("conj({})", s.label()),
        }
    }

    fn check_degree(&self, g: &Permutation) -> Result<()> {
        if g.degree() != self.n {
            return Err(invalid!("permutation of degree {} given to a representation of S_{}", g.degree(), self.n));
        }
        Ok(())
    }

    /// Product of generator images along `word`.
    pub fn evaluate_word(&self, word: &[usize]) -> Result<ComplexMatrix> {
        let mut m = ComplexMatrix::identity(self.dim);
        for &i in word {
            if i == 0 || i >= self.n {
                return Err(invalid!("generator index {} outside 1..={}", i, self.n.saturating_sub(1)));
            }
            m = m.matmul(&self.generators[i - 1]);
        }
        Ok(m)
    }

    /// `sigma(g)`.
    ///
    /// Irreps multiply their generator images along
    /// [`Permutation::adjacent_transposition_decomposition`]; derived kinds
    /// combine the images of their parts, and regular representations are
    /// written down as permutation matrices directly. Every route agrees with
    /// [`Self::evaluate_word`] on any word for `g`.
    pub fn evaluate(&self, g: &Permutation) -> Result<ComplexMatrix> {
        self.check_degree(g)?;
        Ok(match &self.kind {
            RepKind::Irrep(_) => self.evaluate_word(&g.adjacent_transposition_decomposition())?,
            RepKind::Tensor(a, b) => a.evaluate(g)?.kron(&b.evaluate(g)?),
            RepKind::LiftWithIdentity(s, d) => s.evaluate(g)?.kron(&ComplexMatrix::identity(*d)),
            RepKind::Amplified(m, s) => ComplexMatrix::identity(*m).kron(&s.evaluate(g)?),
            RepKind::Conjugate(s) => s.evaluate(g)?.conj(),
            RepKind::LeftRegular | RepKind::RightRegular => {
                let group = SymmetricGroup::with_limits(self.n, &Limits { max_degree: self.n, ..Limits::default() })?;
                regular_matrix(&group, g, matches!(self.kind, RepKind::LeftRegular))
            }
        })
    }

    /// `chi(g) = tr sigma(g)`, straight from [`Self::evaluate`].
    pub fn character_direct(&self, g: &Permutation) -> Result<C64> {
        Ok(self.evaluate(g)?.trace())
    }

    /// Largest residual over the defining relations of `S_n`: unitary and
    /// involutive generators, braid relations for neighbours and commutation
    /// for distant pairs.
    pub fn relation_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(self.dim);
        let mut worst: f64 = 0.0;
        for (i, s) in self.generators.iter().enumerate() {
            worst = worst.max(s.unitarity_residual());
            worst = worst.max(s.matmul(s).max_abs_diff(&id));
            for (j, t) in self.generators.iter().enumerate().skip(i + 1) {
                let r = if j == i + 1 {
                    s.matmul(t).matmul(s).max_abs_diff(&t.matmul(s).matmul(t))
                } else {
                    s.matmul(t).max_abs_diff(&t.matmul(s))
                };
                worst = worst.max(r);
            }
        }
        worst
    }
}

/// Permutation matrix of `g` in the left (`|x> -> |g x>`) or right
/// (`|x> -> |x g^{-1}>`) regular representation.
fn regular_matrix(group: &SymmetricGroup, g: &Permutation, left: bool) -> ComplexMatrix {
    let order = group.order();
    let g_inv = g.inverse();
    let mut m = ComplexMatrix::zeros(order, order);
    for (col, x) in group.elements().iter().enumerate() {
        let target = if left { g.compose(x) } else { x.compose(&g_inv) };
        m[(target.lex_rank(), col)] = ONE;
    }
    m
}

/// The irrep `rho^lambda`.
pub fn irrep(lambda: &Partition) -> GroupRep {
    GroupRep::irrep(lambda)
}

/// `rho^mu ⊗ rho^nu`.
pub fn tensor_rep(mu: &Partition, nu: &Partition) -> Result<GroupRep> {
    GroupRep::tensor(&GroupRep::irrep(mu), &GroupRep::irrep(nu))
}

pub fn lift_with_identity(sigma: &GroupRep, d: usize) -> GroupRep {
    GroupRep::lift_with_identity(sigma, d)
}

pub fn conjugate_rep(sigma: &GroupRep) -> GroupRep {
    GroupRep::conjugate(sigma)
}

/// Everything about `S_n` that group sums need, computed once: the element
/// list, the partitions, every irrep evaluated on every element (when the
/// dense cap allows), and the character table by conjugacy class.
///
/// Immutable after construction and `Sync`; share it freely across threads.
#[derive(Clone, Debug)]
pub struct RepContext {
    limits: Limits,
    group: SymmetricGroup,
    partitions: Vec<Partition>,
    irreps: Vec<GroupRep>,
    // irrep_tables[l][g] = rho^{partitions[l]}(elements[g])
    irrep_tables: Option<Vec<Vec<ComplexMatrix>>>,
    // characters[l][c] = chi^{partitions[l]} on class c
    characters: Vec<Vec<f64>>,
}

impl RepContext {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_limits(n, Limits::default())
    }

    pub fn with_limits(n: usize, limits: Limits) -> Result<Self> {
        let group = SymmetricGroup::with_limits(n, &limits)?;
        let partitions = enumerate_partitions(n)?;
        let irreps: Vec<GroupRep> = partitions.iter().map(GroupRep::irrep).collect();
        let irrep_tables = (n <= limits.dense_max_degree)
            .then(|| irreps.iter().map(|r| evaluate_all_by_descent(r, &group)).collect::<Vec<_>>());
        let characters = irreps
            .iter()
            .enumerate()
            .map(|(l, rep)| {
                group
                    .classes()
                    .iter()
                    .map(|c| match &irrep_tables {
                        Some(t) => t[l][c.representative].trace().re,
                        None => rep.character_direct(group.element(c.representative)).unwrap().re,
                    })
                    .collect()
            })
            .collect();
        Ok(RepContext { limits, group, partitions, irreps, irrep_tables, characters })
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn group(&self) -> &SymmetricGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Partitions of `n` in reverse-lexicographic order.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn partition_index(&self, lambda: &Partition) -> Result<usize> {
        self.partitions.iter().position(|p| p == lambda).ok_or_else(|| {
            invalid!("{} is not a partition of n = {}", lambda, self.degree())
        })
    }

    pub fn irrep(&self, lambda: &Partition) -> Result<&GroupRep> {
        Ok(&self.irreps[self.partition_index(lambda)?])
    }

    /// Fails unless dense `|G| x |G|`-scale work is allowed at this `n`.
    pub fn require_dense(&self, what: &str) -> Result<()> {
        let n = self.degree();
        if n > self.limits.dense_max_degree {
            let order = factorial(n);
            return Err(Error::ResourceLimit(format!(
                "{what} at n = {n} exceeds the dense cap n <= {}: a dense |G| x |G| complex matrix needs (n!)^2 * 16 bytes = {} bytes",
                self.limits.dense_max_degree,
                order * order * 16
            )));
        }
        Ok(())
    }

    pub fn check_rep(&self, sigma: &GroupRep) -> Result<()> {
        if sigma.degree() != self.degree() {
            return Err(invalid!("representation of S_{} used with S_{}", sigma.degree(), self.degree()));
        }
        Ok(())
    }

    /// `rho^lambda(elements[g])` from the precomputed table.
    pub fn irrep_image(&self, lambda: &Partition, g: usize) -> Result<&ComplexMatrix> {
        self.require_dense("per-element irrep tables")?;
        let l = self.partition_index(lambda)?;
        Ok(&self.irrep_tables.as_ref().unwrap()[l][g])
    }

    /// `sigma(elements[g])`, assembled from the irrep tables.
    pub fn image(&self, sigma: &GroupRep, g: usize) -> Result<ComplexMatrix> {
        self.check_rep(sigma)?;
        self.require_dense("group sums")?;
        self.image_unchecked(sigma, g)
    }

    fn image_unchecked(&self, sigma: &GroupRep, g: usize) -> Result<ComplexMatrix> {
        Ok(match sigma.kind() {
            RepKind::Irrep(l) => self.irrep_tables.as_ref().unwrap()[self.partition_index(l)?][g].clone(),
            RepKind::Tensor(a, b) => self.image_unchecked(a, g)?.kron(&self.image_unchecked(b, g)?),
            RepKind::LiftWithIdentity(s, d) => self.image_unchecked(s, g)?.kron(&ComplexMatrix::identity(*d)),
            RepKind::Amplified(m, s) => ComplexMatrix::identity(*m).kron(&self.image_unchecked(s, g)?),
            RepKind::Conjugate(s) => self.image_unchecked(s, g)?.conj(),
            RepKind::LeftRegular => regular_matrix(&self.group, self.group.element(g), true),
            RepKind::RightRegular => regular_matrix(&self.group, self.group.element(g), false),
        })
    }

    /// `chi^lambda` on the class of element `g`.
    pub fn irrep_character(&self, lambda: &Partition, g: usize) -> Result<f64> {
        Ok(self.characters[self.partition_index(lambda)?][self.group.class_index(g)])
    }

    /// Character table: `[lambda][class]`, both in partition order.
    pub fn character_table(&self) -> &[Vec<f64>] {
        &self.characters
    }

    /// `chi^sigma` on conjugacy class `class`, without forming `sigma(g)`:
    /// products for tensors, scaled values for lifts, `|G|` or `0` for the
    /// regular representations.
    pub fn class_character(&self, sigma: &GroupRep, class: usize) -> Result<C64> {
        self.check_rep(sigma)?;
        Ok(match sigma.kind() {
            RepKind::Irrep(l) => C64::new(self.characters[self.partition_index(l)?][class], 0.0),
            RepKind::Tensor(a, b) => self.class_character(a, class)? * self.class_character(b, class)?,
            RepKind::LiftWithIdentity(s, d) => self.class_character(s, class)? * (*d as f64),
            RepKind::Amplified(m, s) => self.class_character(s, class)? * (*m as f64),
            RepKind::Conjugate(s) => self.class_character(s, class)?.conj(),
            RepKind::LeftRegular | RepKind::RightRegular => {
                if self.group.classes()[class].cycle_type == Partition::sign(self.degree()) {
                    C64::new(self.order() as f64, 0.0)
                } else {
                    ZERO
                }
            }
        })
    }

    /// `chi^sigma(g) = tr sigma(g)`, read from the per-class cache.
    pub fn character(&self, sigma: &GroupRep, g: &Permutation) -> Result<C64> {
        self.check_rep(sigma)?;
        let idx = self.group.index_of(g).ok_or_else(|| invalid!("degree mismatch"))?;
        self.class_character(sigma, self.group.class_index(idx))
    }

    /// `sigma(g)` for an explicit permutation.
    pub fn rep_evaluate(&self, sigma: &GroupRep, g: &Permutation) -> Result<ComplexMatrix> {
        self.check_rep(sigma)?;
        sigma.evaluate(g)
    }

    /// `(rho_L, rho_R)` on the `|G|`-dimensional group algebra.
    pub fn regular_representations(&self) -> Result<(GroupRep, GroupRep)> {
        self.require_dense("regular representations")?;
        Ok((GroupRep::regular(&self.group, true), GroupRep::regular(&self.group, false)))
    }

    /// Row offset of the `lambda` block in [`Self::fourier_transform_matrix`].
    pub fn fourier_block_offset(&self, lambda: &Partition) -> Result<usize> {
        let l = self.partition_index(lambda)?;
        Ok(self.partitions[..l].iter().map(|p| p.dimension().pow(2)).sum())
    }

    /// The `|G| x |G|` unitary with entry `sqrt(d_lambda/|G|) rho^lambda_ij(pi)`
    /// at row `(lambda, i, j)` and column `pi`.
    ///
    /// Rows run over `lambda` in partition order, then `(i, j)` row-major.
    pub fn fourier_transform_matrix(&self) -> Result<ComplexMatrix> {
        self.require_dense("the Fourier transform")?;
        let order = self.order();
        let tables = self.irrep_tables.as_ref().unwrap();
        let mut ft = ComplexMatrix::zeros(order, order);
        let mut row = 0;
        for (l, lambda) in self.partitions.iter().enumerate() {
            let d = lambda.dimension();
            let scale = (d as f64 / order as f64).sqrt();
            for i in 0..d {
                for j in 0..d {
                    for (pi, rho) in tables[l].iter().enumerate() {
                        ft[(row, pi)] = rho[(i, j)] * scale;
                    }
                    row += 1;
                }
            }
        }
        Ok(ft)
    }
}

/// `rho(g)` for every element, each obtained from a shorter element as
/// `rho(g) = rho(g s_i) rho(s_i)` where `i` is the first right descent of `g`.
fn evaluate_all_by_descent(rep: &GroupRep, group: &SymmetricGroup) -> Vec<ComplexMatrix> {
    let mut order: Vec<usize> = (0..group.order()).collect();
    order.sort_by_key(|&g| group.element(g).inversions());
    let mut table: Vec<Option<ComplexMatrix>> = alloc::vec![None; group.order()];
    for g in order {
        let perm = group.element(g);
        let descent = (0..perm.degree().saturating_sub(1)).find(|&i| perm.image0(i) > perm.image0(i + 1));
        let m = match descent {
            None => ComplexMatrix::identity(rep.dim()),
            Some(i) => {
                let shorter = perm.compose(&Permutation::adjacent(perm.degree(), i + 1).unwrap());
                let prev = table[shorter.lex_rank()].as_ref().expect("shorter elements come first");
                prev.matmul(rep.generator(i + 1))
            }
        };
        table[g] = Some(m);
    }
    table.into_iter().map(Option::unwrap).collect()
}
