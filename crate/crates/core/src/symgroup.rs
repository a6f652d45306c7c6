//! Partitions, standard Young tableaux and permutations of `{1, ..., n}`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::invalid;
use crate::{factorial, Error, Limits, Result};

/// A weakly decreasing sequence of positive integers; labels an irrep of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(invalid!("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(invalid!("partition parts must be positive: {:?}", parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid!("partition parts must be weakly decreasing: {:?}", parts));
        }
        Ok(Partition { parts })
    }

    /// The one-row partition `(n)`.
    pub fn trivial(n: usize) -> Self {
        Partition { parts: vec![n] }
    }

    /// The one-column partition `(1, ..., 1)`.
    pub fn sign(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Column lengths.
    pub fn conjugate(&self) -> Partition {
        let cols = (0..self.parts[0]).map(|c| self.parts.iter().filter(|&&p| p > c).count()).collect();
        Partition { parts: cols }
    }

    /// Hook length of the cell at `(row, col)`, 0-indexed.
    pub fn hook(&self, row: usize, col: usize) -> usize {
        let arm = self.parts[row] - col - 1;
        let leg = self.parts[row + 1..].iter().filter(|&&p| p > col).count();
        arm + leg + 1
    }

    /// `d_lambda` by the hook-length formula.
    pub fn dimension(&self) -> usize {
        let mut hooks: Vec<u128> = Vec::with_capacity(self.n());
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len {
                hooks.push(self.hook(r, c) as u128);
            }
        }
        // n! / prod(hooks), cancelling as we go so intermediates stay small.
        let mut result: u128 = 1;
        for k in 1..=self.n() as u128 {
            let mut f = k;
            for h in hooks.iter_mut() {
                let g = gcd(f, *h);
                f /= g;
                *h /= g;
            }
            result = result.checked_mul(f).expect("irrep dimension overflows u128");
        }
        let rest: u128 = hooks.iter().product();
        usize::try_from(result / rest).expect("irrep dimension overflows usize")
    }

    /// Label of the form `(2,1)`.
    pub fn paren_label(&self) -> String {
        alloc::format!("({})", self)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
    if t.is_empty() {
        return Err(invalid!("empty list"));
    }
    t.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| invalid!("not a non-negative integer: {:?}", x.trim())))
        .collect()
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"2,1"` (surrounding parentheses are accepted).
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_list(s)?)
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first,
/// `(1, ..., 1)` last.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(invalid!("partitions are enumerated for n >= 1"));
    }
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// A standard Young tableau: rows increase left to right, columns top to
/// bottom, and `1..=n` each appear once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.n();
        let mut seen = vec![false; n + 1];
        for &x in rows.iter().flatten() {
            if x == 0 || x > n || seen[x] {
                return Err(invalid!("tableau entries must be 1..={} each exactly once", n));
            }
            seen[x] = true;
        }
        for (r, row) in rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid!("tableau row {} is not increasing", r + 1));
            }
            if r > 0 && row.iter().enumerate().any(|(c, &x)| rows[r - 1][c] >= x) {
                return Err(invalid!("tableau column is not increasing below row {}", r));
            }
        }
        Ok(StandardTableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Entries read row by row.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    /// 0-indexed `(row, col)` of entry `k`.
    pub fn position(&self, k: usize) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|&x| x == k).map(|c| (r, c)))
    }

    /// Content `col - row` of the cell holding `k`.
    pub fn content(&self, k: usize) -> Option<i64> {
        self.position(k).map(|(r, c)| c as i64 - r as i64)
    }

    /// Signed axial distance `content(i+1) - content(i)`.
    ///
    /// Same-row neighbours give `+1`, same-column neighbours `-1`; this is the
    /// sign that makes every generator matrix square to the identity.
    pub fn axial_distance(&self, i: usize) -> Result<i64> {
        let n = self.shape.n();
        if i == 0 || i >= n {
            return Err(invalid!("axial distance needs 1 <= i <= n-1 = {}, got {}", n.saturating_sub(1), i));
        }
        Ok(self.content(i + 1).unwrap() - self.content(i).unwrap())
    }

    /// The filling with `i` and `i+1` exchanged, if that is still standard.
    pub fn swapped(&self, i: usize) -> Option<StandardTableau> {
        let mut rows = self.rows.clone();
        for x in rows.iter_mut().flatten() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
        StandardTableau::from_rows(rows).ok()
    }
}

/// All standard tableaux of shape `shape`, sorted lexicographically by
/// reading word.
pub fn enumerate_tableaux(shape: &Partition) -> Vec<StandardTableau> {
    fn rec(filled: &mut Vec<usize>, shape: &[usize], next: usize, n: usize, grid: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if next > n {
            out.push(grid.clone());
            return;
        }
        for r in 0..shape.len() {
            let c = filled[r];
            let fits = c < shape[r] && (r == 0 || filled[r - 1] > c);
            if fits {
                grid[r].push(next);
                filled[r] += 1;
                rec(filled, shape, next + 1, n, grid, out);
                filled[r] -= 1;
                grid[r].pop();
            }
        }
    }
    let mut raw = Vec::new();
    let mut grid = vec![Vec::new(); shape.len()];
    rec(&mut vec![0; shape.len()], shape.parts(), 1, shape.n(), &mut grid, &mut raw);
    let mut tableaux: Vec<StandardTableau> =
        raw.into_iter().map(|rows| StandardTableau { shape: shape.clone(), rows }).collect();
    tableaux.sort_by_key(StandardTableau::reading_word);
    tableaux
}

/// `d_lambda`: the hook-length value, which equals the number of standard
/// tableaux of the shape.
pub fn irrep_dimension(shape: &Partition) -> usize {
    shape.dimension()
}

/// A permutation of `{1, ..., n}` in one-line notation.
///
/// Products compose right to left: `(g.compose(h))(x) = g(h(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<usize>,
}

impl Permutation {
    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(invalid!("a permutation needs degree >= 1"));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(invalid!("{:?} is not a permutation of 1..={}", images, n));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images: images.iter().map(|x| x - 1).collect() })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// The adjacent transposition `s_i = (i, i+1)`, `1 <= i <= n-1`.
    pub fn adjacent(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(invalid!("adjacent transposition index {} outside 1..={}", i, n.saturating_sub(1)));
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// Product `s_{w_1} s_{w_2} ... s_{w_k}`.
    pub fn from_adjacent_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut g = Self::identity(n);
        for &i in word {
            g = g.compose(&Self::adjacent(n, i)?);
        }
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// Image of `x` (1-based).
    pub fn image(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    pub(crate) fn image0(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inversions(&self) -> usize {
        let n = self.degree();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.images[i] > self.images[j]).count()).sum()
    }

    /// Cycle lengths sorted decreasingly; the conjugacy class label.
    pub fn cycle_type(&self) -> Partition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts: lens }
    }

    /// A word `[i_1, ..., i_k]` with `self = s_{i_1} s_{i_2} ... s_{i_k}` and
    /// `k = inversions <= n(n-1)/2`, found by peeling the leftmost right
    /// descent off repeatedly.
    pub fn adjacent_transposition_decomposition(&self) -> Vec<usize> {
        let mut g = self.clone();
        let mut rev = Vec::with_capacity(self.inversions());
        while let Some(i) = (0..g.degree().saturating_sub(1)).find(|&i| g.images[i] > g.images[i + 1]) {
            // g = (g s_i) s_i and g s_i has one inversion fewer.
            g.images.swap(i, i + 1);
            rev.push(i + 1);
        }
        rev.reverse();
        rev
    }

    /// A second reduced word for the same element, built from the largest
    /// left descent instead. Usually differs from
    /// [`Self::adjacent_transposition_decomposition`].
    pub fn adjacent_transposition_decomposition_left(&self) -> Vec<usize> {
        let mut inv = self.inverse();
        let mut word = Vec::with_capacity(self.inversions());
        // A left descent of g is a right descent of g^{-1}.
        while let Some(i) = (0..inv.degree().saturating_sub(1)).rev().find(|&i| inv.images[i] > inv.images[i + 1]) {
            inv.images.swap(i, i + 1);
            word.push(i + 1);
        }
        word
    }

    /// Position of this permutation in the lexicographic order of one-line
    /// notations (the Lehmer code read as a factorial-base number).
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0usize;
        for i in 0..n {
            let smaller = (i + 1..n).filter(|&j| self.images[j] < self.images[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses 1-based one-line notation such as `"2,3,1"`.
    fn from_str(s: &str) -> Result<Self> {
        Permutation::from_one_line(&parse_list(s)?)
    }
}

/// A conjugacy class of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub cycle_type: Partition,
    pub size: usize,
    /// Index of a representative in the group's element list.
    pub representative: usize,
}

/// `S_n` with its elements in lexicographic one-line order.
#[derive(Clone, Debug)]
pub struct SymmetricGroup {
    n: usize,
    elements: Vec<Permutation>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_limits(n, &Limits::default())
    }

    pub fn with_limits(n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(invalid!("the symmetric group needs degree n >= 1"));
        }
        if n > limits.max_degree {
            return Err(Error::ResourceLimit(alloc::format!(
                "S_{} has {}! = {} elements, above the enumeration cap n <= {} ({}! = {})",
                n,
                n,
                factorial(n),
                limits.max_degree,
                limits.max_degree,
                factorial(limits.max_degree)
            )));
        }
        let elements = lex_permutations(n);
        let partitions = enumerate_partitions(n)?;
        let mut classes: Vec<ConjugacyClass> = partitions
            .into_iter()
            .map(|cycle_type| ConjugacyClass { cycle_type, size: 0, representative: usize::MAX })
            .collect();
        let mut class_of = Vec::with_capacity(elements.len());
        for (idx, g) in elements.iter().enumerate() {
            let ct = g.cycle_type();
            let c = classes.iter().position(|c| c.cycle_type == ct).expect("cycle type is a partition of n");
            classes[c].size += 1;
            if classes[c].representative == usize::MAX {
                classes[c].representative = idx;
            }
            class_of.push(c);
        }
        Ok(SymmetricGroup { n, elements, classes, class_of })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &Permutation {
        &self.elements[idx]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        (g.degree() == self.n).then(|| g.lex_rank())
    }

    /// Conjugacy classes in partition order of their cycle types.
    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    /// Index into [`Self::classes`] of the class of element `idx`.
    pub fn class_index(&self, idx: usize) -> usize {
        self.class_of[idx]
    }

    pub fn conjugacy_class_of(&self, g: &Permutation) -> Partition {
        g.cycle_type()
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.elements[a].compose(&self.elements[b]).lex_rank()
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        self.elements[a].inverse().lex_rank()
    }
}

/// All permutations of degree `n` in lexicographic order.
fn lex_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(factorial(n) as usize);
    loop {
        out.push(Permutation { images: cur.clone() });
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Enumerates `S_n` in lexicographic order, subject to the default cap.
pub fn enumerate_group(n: usize) -> Result<Vec<Permutation>> {
    Ok(SymmetricGroup::new(n)?.elements)
}
