//! Type-A root data: finite and affine roots, dominant weights and the
//! dominance order.
//!
//! Indices are 1-based, so `FiniteRoot { i: 1, j: 2 }` is `e_1 - e_2`.

use std::fmt;

use crate::error::RootError;

/// The finite root `e_i - e_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteRoot {
    pub i: usize,
    pub j: usize,
}

impl FiniteRoot {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self, RootError> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(RootError::InvalidRoot { n, i, j });
        }
        Ok(FiniteRoot { i, j })
    }

    pub fn is_positive(&self) -> bool {
        self.i < self.j
    }

    pub fn negate(&self) -> Self {
        FiniteRoot { i: self.j, j: self.i }
    }

    /// Pairing with an integer vector, `<v, e_i - e_j>`.
    pub fn pair(&self, v: &[i64]) -> i64 {
        v[self.i - 1] - v[self.j - 1]
    }
}

impl fmt::Display for FiniteRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i, self.j)
    }
}

/// The affine root `root + level * delta`, i.e. the affine function
/// `lambda -> <lambda, root> + level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: FiniteRoot,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(root: FiniteRoot, level: i64) -> Self {
        AffineRoot { root, level }
    }

    pub fn negate(&self) -> Self {
        AffineRoot { root: self.root.negate(), level: -self.level }
    }

    /// Value of the affine function at a point.
    pub fn eval(&self, v: &[i64]) -> i64 {
        self.root.pair(v) + self.level
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.root, self.level)
    }
}

pub fn affine_root_positive(r: &AffineRoot) -> bool {
    r.level > 0 || (r.level == 0 && r.root.is_positive())
}

/// All positive roots `e_i - e_j`, `i < j`, in lexicographic order.
pub fn positive_roots(n: usize) -> Result<Vec<FiniteRoot>, RootError> {
    if n < 2 {
        return Err(RootError::RankTooSmall(n));
    }
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(FiniteRoot { i, j });
        }
    }
    Ok(out)
}

/// The simple roots `alpha_i = e_i - e_{i+1}`.
pub fn simple_roots(n: usize) -> Vec<FiniteRoot> {
    (1..n).map(|i| FiniteRoot { i, j: i + 1 }).collect()
}

/// Fundamental weight `omega_p = (1^p, 0^{n-p})`; `p = 0` is the origin.
pub fn fundamental_weight(n: usize, p: usize) -> Vec<i64> {
    (0..n).map(|k| if k < p { 1 } else { 0 }).collect()
}

/// A weakly decreasing integer vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DominantWeight {
    coords: Vec<i64>,
}

impl DominantWeight {
    pub fn new(coords: Vec<i64>) -> Result<Self, RootError> {
        if coords.windows(2).any(|w| w[0] < w[1]) {
            return Err(RootError::NotDominant(coords));
        }
        Ok(DominantWeight { coords })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.coords.iter().sum()
    }
}

pub fn is_dominant(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

fn check_lengths(l: &DominantWeight, m: &DominantWeight) -> Result<(), RootError> {
    if l.len() != m.len() {
        return Err(RootError::LengthMismatch(l.len(), m.len()));
    }
    Ok(())
}

/// Prefix-sum form: `sum_{k<=r} lambda_k <= sum_{k<=r} mu_k` for all `r`,
/// with equal totals.
pub fn dominance_leq_star(l: &DominantWeight, m: &DominantWeight) -> Result<bool, RootError> {
    check_lengths(l, m)?;
    if l.sum() != m.sum() {
        return Ok(false);
    }
    let (mut a, mut b) = (0i64, 0i64);
    for (x, y) in l.coords.iter().zip(&m.coords) {
        a += x;
        b += y;
        if a > b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T_lambda(r) = sum_{j >= r} #{i : lambda_i >= j}`, which collapses to
/// `sum_i max(lambda_i - r + 1, 0)`.
pub fn tail_count(l: &[i64], r: i64) -> i64 {
    l.iter().map(|&x| (x - r + 1).max(0)).sum()
}

/// Tail-count form: `T_lambda(r) <= T_mu(r)` for every threshold `r`, with
/// equal totals.
pub fn dominance_leq_dagger(l: &DominantWeight, m: &DominantWeight) -> Result<bool, RootError> {
    check_lengths(l, m)?;
    if l.sum() != m.sum() {
        return Ok(false);
    }
    if l.is_empty() {
        return Ok(true);
    }
    let lo = l.coords.iter().chain(&m.coords).min().copied().unwrap_or(0);
    let hi = l.coords.iter().chain(&m.coords).max().copied().unwrap_or(0);
    // Outside [lo, hi + 1] both sides are affine in r with equal slope.
    Ok((lo..=hi + 1).all(|r| tail_count(&l.coords, r) <= tail_count(&m.coords, r)))
}
