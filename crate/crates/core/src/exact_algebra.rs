//! Exact arithmetic: rationals, sparse polynomials in the variables `A_ji`,
//! truncated Laurent series in `t`, and determinants.
//!
//! Variables are indexed in priority order: larger span `j - i` first, and
//! within a span larger `j` first. Monomials compare by total degree, then
//! lexicographically in that variable order, so the leading term of a
//! polynomial maximises the degree of `A_n1` first, then `A_n2`, and so on.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;

use crate::error::AlgebraError;

pub type Rational = BigRational;

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `"p/q"` encoding used in reports.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Number of variables `A_ji`, `1 <= i < j <= n`.
pub fn num_vars(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Position of `A_ji` in the priority order.
pub fn var_index(n: usize, j: usize, i: usize) -> usize {
    assert!(1 <= i && i < j && j <= n, "A_{j}{i} is not a variable for n = {n}");
    let d = j - i;
    (n - d - 1) * (n - d) / 2 + (n - j)
}

/// The variables `(j, i)` in priority order.
pub fn variables(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(num_vars(n));
    for d in (1..n).rev() {
        for j in (d + 1..=n).rev() {
            out.push((j, j - d));
        }
    }
    out
}

/// Exponent vector over the variables in priority order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; num_vars(n)])
    }

    pub fn var(n: usize, j: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[var_index(n, j, i)] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn exponent(&self, n: usize, j: usize, i: usize) -> u32 {
        self.0[var_index(n, j, i)]
    }

    pub fn times_var(&mut self, n: usize, j: usize, i: usize) {
        self.0[var_index(n, j, i)] += 1;
    }

    /// `[j, i, exponent]` triples sorted by `(j, i)`, zero exponents omitted.
    pub fn triples(&self, n: usize) -> Vec<[usize; 3]> {
        let mut out: Vec<[usize; 3]> = variables(n)
            .into_iter()
            .enumerate()
            .filter(|(k, _)| self.0[*k] > 0)
            .map(|(k, (j, i))| [j, i, self.0[k] as usize])
            .collect();
        out.sort();
        out
    }

    pub fn from_triples(n: usize, triples: &[[usize; 3]]) -> Self {
        let mut m = Self::one(n);
        for &[j, i, e] in triples {
            m.0[var_index(n, j, i)] += e as u32;
        }
        m
    }

    pub fn format(&self, n: usize) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.triples(n)
            .iter()
            .map(|[j, i, e]| if *e == 1 { format!("A{j}{i}") } else { format!("A{j}{i}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Values for the variables, keyed by `(j, i)`.
pub type Assignment = BTreeMap<(usize, usize), Rational>;

/// Integer assignment with entries uniform in `[-bound, bound]`.
pub fn random_assignment<R: Rng>(n: usize, rng: &mut R, bound: i64) -> Assignment {
    variables(n).into_iter().map(|v| (v, rat(rng.gen_range(-bound..=bound)))).collect()
}

/// Sparse polynomial with rational coefficients in the variables `A_ji`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultivariatePolynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

pub type Poly = MultivariatePolynomial;

impl MultivariatePolynomial {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn var(n: usize, j: usize, i: usize) -> Self {
        Self::term(n, Monomial::var(n, j, i), Rational::one())
    }

    pub fn term(n: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one(self.n)).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient_of(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    /// Exact quotient `self / d`; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Self, AlgebraError> {
        let (dm, dc) = d.leading_term().ok_or(AlgebraError::InexactDivision)?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = Self::zero(self.n);
        while let Some((m, c)) = r.leading_term() {
            let qm = m.div(&dm).ok_or(AlgebraError::InexactDivision)?;
            let qc = c / &dc;
            r = &r - &d.mul_term(&qm, &qc);
            q.add_term(qm, qc);
        }
        Ok(q)
    }

    pub fn eval_at(&self, a: &Assignment) -> Result<Rational, AlgebraError> {
        let vars = variables(self.n);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (j, i) = vars[k];
                let x = a.get(&(j, i)).ok_or(AlgebraError::MissingVariable(j, i))?;
                v *= num::pow::pow(x.clone(), e as usize);
            }
            total += v;
        }
        Ok(total)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for MultivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if m.is_one() {
                    c.to_string()
                } else if c.is_one() {
                    m.format(self.n)
                } else {
                    format!("({})*{}", c, m.format(self.n))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Laurent polynomial in `t` known modulo `t^{hi+1}`, zero below `lo`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedLoopPoly {
    n: usize,
    lo: i64,
    hi: i64,
    coeffs: BTreeMap<i64, Poly>,
}

impl TruncatedLoopPoly {
    pub fn zero(n: usize, lo: i64, hi: i64) -> Self {
        TruncatedLoopPoly { n, lo, hi, coeffs: BTreeMap::new() }
    }

    pub fn monomial(n: usize, e: i64, c: Poly, lo: i64, hi: i64) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(n, lo, hi);
        p.add_at(e, &c)?;
        Ok(p)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Poly)> {
        self.coeffs.iter().map(|(e, p)| (*e, p))
    }

    pub fn add_at(&mut self, e: i64, c: &Poly) -> Result<(), AlgebraError> {
        if e < self.lo || e > self.hi {
            return Err(AlgebraError::OutOfWindow(e, self.lo, self.hi));
        }
        let slot = self.coeffs.entry(e).or_insert_with(|| Poly::zero(self.n));
        *slot = &*slot + c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
        Ok(())
    }

    /// Coefficient of `t^e`; zero below the window, an error above it.
    pub fn coeff(&self, e: i64) -> Result<Poly, AlgebraError> {
        if e > self.hi {
            return Err(AlgebraError::OutOfWindow(e, self.lo, self.hi));
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(|| Poly::zero(self.n)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n, self.lo.min(other.lo), self.hi.min(other.hi));
        for (e, c) in self.coeffs.iter().chain(&other.coeffs) {
            if *e <= out.hi {
                out.add_at(*e, c).expect("inside window");
            }
        }
        out
    }

    pub fn scale(&self, c: &Poly) -> Self {
        let mut out = Self::zero(self.n, self.lo, self.hi);
        for (e, p) in &self.coeffs {
            out.add_at(*e, &(p * c)).expect("inside window");
        }
        out
    }

    /// Highest exponent of the product that the operand windows determine.
    pub fn product_precision(&self, other: &Self) -> i64 {
        (self.hi + other.lo).min(self.lo + other.hi)
    }

    /// Product known up to `t^hi`; fails if the operands do not determine it.
    pub fn mul_window(&self, other: &Self, hi: i64) -> Result<Self, AlgebraError> {
        let available = self.product_precision(other);
        if hi > available {
            return Err(AlgebraError::PrecisionUnderflow { requested: hi, available });
        }
        let lo = self.lo + other.lo;
        let mut out = Self::zero(self.n, lo.min(hi), hi);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                if e1 + e2 <= hi {
                    out.add_at(e1 + e2, &(c1 * c2))?;
                }
            }
        }
        Ok(out)
    }
}

/// Square matrix of truncated loop polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedLoopMatrix {
    n: usize,
    dim: usize,
    entries: Vec<TruncatedLoopPoly>,
}

impl TruncatedLoopMatrix {
    pub fn zero(n: usize, dim: usize, lo: i64, hi: i64) -> Self {
        TruncatedLoopMatrix { n, dim, entries: vec![TruncatedLoopPoly::zero(n, lo, hi); dim * dim] }
    }

    pub fn identity(n: usize, dim: usize, hi: i64) -> Self {
        let mut m = Self::zero(n, dim, 0, hi);
        for k in 0..dim {
            m.entries[k * dim + k].add_at(0, &Poly::one(n)).expect("0 in window");
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank_n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &TruncatedLoopPoly {
        &self.entries[r * self.dim + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut TruncatedLoopPoly {
        &mut self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: TruncatedLoopPoly) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn precision(&self) -> i64 {
        self.entries.iter().map(|e| e.hi).min().unwrap_or(i64::MAX)
    }

    pub fn mul_window(&self, other: &Self, hi: i64) -> Result<Self, AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::Dimension(format!("{} vs {}", self.dim, other.dim)));
        }
        let d = self.dim;
        let mut out = Self::zero(self.n, d, 0, hi);
        for r in 0..d {
            for c in 0..d {
                let mut acc: Option<TruncatedLoopPoly> = None;
                for k in 0..d {
                    let p = self.get(r, k).mul_window(other.get(k, c), hi)?;
                    acc = Some(match acc {
                        None => p,
                        Some(a) => a.add(&p),
                    });
                }
                out.set(r, c, acc.expect("dim > 0"));
            }
        }
        Ok(out)
    }

    /// The matrix of `t^k` coefficients.
    pub fn coefficient_matrix(&self, k: i64) -> Result<PolyMatrix, AlgebraError> {
        let mut m = PolyMatrix::zero(self.n, self.dim, self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                m.set(r, c, self.get(r, c).coeff(k)?);
            }
        }
        Ok(m)
    }
}

/// Rectangular matrix of polynomials, with optional block boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
    /// Start index of each row block; the blocks partition the rows.
    pub row_blocks: Vec<usize>,
    pub col_blocks: Vec<usize>,
}

impl PolyMatrix {
    pub fn zero(n: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            n,
            rows,
            cols,
            data: vec![Poly::zero(n); rows * cols],
            row_blocks: vec![0],
            col_blocks: vec![0],
        }
    }

    pub fn identity(n: usize, dim: usize) -> Self {
        let mut m = Self::zero(n, dim, dim);
        for k in 0..dim {
            m.set(k, k, Poly::one(n));
        }
        m
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<Poly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(n, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rank_n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Poly) {
        self.data[r * self.cols + c] = v;
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zero(self.n, rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                m.set(a, b, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn eval_at(&self, a: &Assignment) -> Result<Vec<Vec<Rational>>, AlgebraError> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).eval_at(a)).collect())
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Dimension(format!("{} vs {}", self.cols, other.rows)));
        }
        let mut m = Self::zero(self.n, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Poly::zero(self.n);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(r, k) * other.get(k, c));
                }
                m.set(r, c, acc);
            }
        }
        Ok(m)
    }
}

/// Determinant by fraction-free (Bareiss) elimination with exact division.
pub fn poly_det(m: &PolyMatrix) -> Result<Poly, AlgebraError> {
    if m.rows != m.cols {
        return Err(AlgebraError::NotSquare(m.rows, m.cols));
    }
    let d = m.rows;
    let n = m.n;
    if d == 0 {
        return Ok(Poly::one(n));
    }
    let mut a: Vec<Vec<Poly>> = (0..d).map(|r| (0..d).map(|c| m.get(r, c).clone()).collect()).collect();
    let mut negate = false;
    let mut prev = Poly::one(n);
    for k in 0..d - 1 {
        // Pivot on the sparsest nonzero entry of the column.
        let pivot = (k..d)
            .filter(|&r| !a[r][k].is_zero())
            .min_by_key(|&r| a[r][k].num_terms());
        let Some(p) = pivot else {
            return Ok(Poly::zero(n));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..d {
            for j in k + 1..d {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[d - 1][d - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Determinant by cofactor expansion along the first row.
pub fn det_cofactor(m: &PolyMatrix) -> Result<Poly, AlgebraError> {
    if m.rows != m.cols {
        return Err(AlgebraError::NotSquare(m.rows, m.cols));
    }
    let rows: Vec<usize> = (0..m.rows).collect();
    let cols: Vec<usize> = (0..m.cols).collect();
    Ok(cofactor(m, &rows, &cols))
}

fn cofactor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Poly {
    if rows.is_empty() {
        return Poly::one(m.n);
    }
    let mut acc = Poly::zero(m.n);
    for (k, &c) in cols.iter().enumerate() {
        let e = m.get(rows[0], c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = e * &cofactor(m, &rows[1..], &rest);
        acc = if k % 2 == 0 { &acc + &minor } else { &acc - &minor };
    }
    acc
}

/// Determinant of a rational matrix by Gaussian elimination.
pub fn rational_det(m: &[Vec<Rational>]) -> Rational {
    let d = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for k in 0..d {
        let Some(p) = (k..d).find(|&r| !a[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..d {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..d {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
    }
    det
}

/// Rank of a rational matrix given as a list of rows.
pub fn rational_rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        for i in 0..rows {
            if i == rank || a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[rank][c];
            for j in c..cols {
                let v = &f * &a[rank][j];
                a[i][j] -= v;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// `prod_{i<j} (v_j - v_i)`.
pub fn vandermonde_det(values: &[Rational]) -> Rational {
    let mut out = Rational::one();
    for j in 0..values.len() {
        for i in 0..j {
            out *= &values[j] - &values[i];
        }
    }
    out
}

/// Sign of a permutation of `0..len` given as images.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = p[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub fn is_nonzero(r: &Rational) -> bool {
    !r.is_zero()
}

pub fn abs_rational(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize, j: usize, i: usize) -> Poly {
        Poly::var(n, j, i)
    }

    #[test]
    fn variable_order() {
        assert_eq!(variables(3), vec![(3, 1), (3, 2), (2, 1)]);
        assert_eq!(variables(4), vec![(4, 1), (4, 2), (3, 1), (4, 3), (3, 2), (2, 1)]);
        for n in 2..7 {
            for (k, (j, i)) in variables(n).into_iter().enumerate() {
                assert_eq!(var_index(n, j, i), k);
            }
        }
    }

    #[test]
    fn monomial_order_prefers_long_spans() {
        let n = 3;
        let big = Monomial::var(n, 3, 1);
        let small = Monomial::var(n, 2, 1).mul(&Monomial::var(n, 3, 2));
        assert!(small > big); // higher degree wins
        assert!(Monomial::var(n, 3, 1) > Monomial::var(n, 3, 2));
        assert!(Monomial::var(n, 3, 2) > Monomial::var(n, 2, 1));
    }

    #[test]
    fn coefficients() {
        let n = 3;
        assert_eq!(a(n, 2, 1).coefficient_of(&Monomial::var(n, 2, 1)), rat(1));
        let m = Monomial::var(n, 2, 1).mul(&Monomial::var(n, 3, 1));
        let p = Poly::term(n, m.clone(), frac(3, 2));
        assert_eq!(p.coefficient_of(&m), frac(3, 2));
        assert_eq!(p.coefficient_of(&Monomial::one(n)), rat(0));
    }

    #[test]
    fn evaluation() {
        let n = 2;
        let mut asg = Assignment::new();
        assert_eq!(Poly::constant(n, frac(7, 3)).eval_at(&asg).unwrap(), frac(7, 3));
        assert!(a(n, 2, 1).eval_at(&asg).is_err());
        asg.insert((2, 1), rat(5));
        assert_eq!(a(n, 2, 1).eval_at(&asg).unwrap(), rat(5));
        assert!((&a(n, 2, 1) - &a(n, 2, 1)).eval_at(&asg).unwrap().is_zero());
    }

    #[test]
    fn small_determinants() {
        let n = 3;
        assert_eq!(poly_det(&PolyMatrix::identity(n, 4)).unwrap(), Poly::one(n));
        let m = PolyMatrix::from_rows(n, vec![vec![a(n, 2, 1)]]);
        assert_eq!(poly_det(&m).unwrap(), a(n, 2, 1));
        let m = PolyMatrix::from_rows(
            n,
            vec![vec![a(n, 2, 1), a(n, 3, 1)], vec![a(n, 3, 2), Poly::constant(n, rat(2))]],
        );
        let expect = &(&a(n, 2, 1) * &Poly::constant(n, rat(2))) - &(&a(n, 3, 1) * &a(n, 3, 2));
        assert_eq!(poly_det(&m).unwrap(), expect);
        assert_eq!(det_cofactor(&m).unwrap(), expect);
    }

    #[test]
    fn zero_column_gives_zero() {
        let n = 2;
        let m = PolyMatrix::from_rows(n, vec![vec![Poly::zero(n), a(n, 2, 1)], vec![Poly::zero(n), Poly::one(n)]]);
        assert!(poly_det(&m).unwrap().is_zero());
    }

    #[test]
    fn vandermonde() {
        assert_eq!(vandermonde_det(&[rat(4)]), rat(1));
        assert_eq!(vandermonde_det(&[rat(0), rat(1)]), rat(1));
        assert_eq!(vandermonde_det(&[rat(0), rat(1), rat(3)]), rat(6));
    }

    #[test]
    fn exact_division() {
        let n = 3;
        let p = &(&a(n, 2, 1) + &a(n, 3, 1)) * &(&a(n, 3, 2) - &Poly::one(n));
        let q = p.div_exact(&(&a(n, 3, 2) - &Poly::one(n))).unwrap();
        assert_eq!(q, &a(n, 2, 1) + &a(n, 3, 1));
        assert!(a(n, 2, 1).div_exact(&a(n, 3, 1)).is_err());
    }

    #[test]
    fn loop_poly_window() {
        let n = 2;
        let x = TruncatedLoopPoly::monomial(n, 1, a(n, 2, 1), 0, 3).unwrap();
        let y = TruncatedLoopPoly::monomial(n, 0, Poly::one(n), 0, 2).unwrap();
        assert_eq!(x.product_precision(&y), 2);
        assert!(x.mul_window(&y, 3).is_err());
        let p = x.mul_window(&x, 3).unwrap();
        assert_eq!(p.coeff(2).unwrap(), &a(n, 2, 1) * &a(n, 2, 1));
        assert!(p.coeff(4).is_err());
    }

    #[test]
    fn rational_helpers() {
        assert_eq!(format_rational(&frac(-3, 6)), "-1/2");
        assert_eq!(parse_rational("-1/2").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("5").unwrap(), rat(5));
        assert!(parse_rational("1/0").is_none());
        let m = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(rational_det(&m), rat(0));
        assert_eq!(rational_rank(&m), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
