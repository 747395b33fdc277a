//! The matrices `M^w` parametrising the open part of a component, their
//! inverses, and the conjugation identity
//! `(M^w)^{-1} t s M^w = t s + sum_{i<j} t^{a_ji + 1} A_ji (s_j - s_i) E_ji`.
//!
//! Entry `t^k E_ji` of a loop matrix corresponds to the affine root
//! `(e_j - e_i) + k delta`; it lies in `^w b` when `w^{-1}` of that root is
//! positive.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine_weyl::AffineWeylElement;
use crate::error::{AlgebraError, SpringerError};
use crate::exact_algebra::{
    frac, rat, Poly, PolyMatrix, Rational, TruncatedLoopMatrix, TruncatedLoopPoly,
};
use crate::root_system::{affine_root_positive, AffineRoot, FiniteRoot};

/// Pairwise distinct `s_1, ..., s_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralParameters(Vec<Rational>);

impl SpectralParameters {
    pub fn new(values: Vec<Rational>) -> Result<Self, SpringerError> {
        for a in 0..values.len() {
            for b in a + 1..values.len() {
                if values[a] == values[b] {
                    return Err(SpringerError::NotRegular);
                }
            }
        }
        Ok(SpectralParameters(values))
    }

    /// `s = (0, 1, 3, 7, 15, ...)`.
    pub fn default_for(n: usize) -> Self {
        SpectralParameters((0..n).map(|k| rat((1i64 << k) - 1)).collect())
    }

    /// Seeded pseudorandom distinct rationals.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values: Vec<Rational> = Vec::with_capacity(n);
        while values.len() < n {
            let v = frac(rng.gen_range(-60..=60), rng.gen_range(1..=9));
            if !values.contains(&v) {
                values.push(v);
            }
        }
        SpectralParameters(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// `s_i`, 1-based.
    pub fn s(&self, i: usize) -> &Rational {
        &self.0[i - 1]
    }

    /// `s'_k = s_{z(k)}` for a finite permutation `z`.
    pub fn permuted(&self, z: &AffineWeylElement) -> Self {
        SpectralParameters((0..self.len()).map(|k| self.0[z.perm_image(k)].clone()).collect())
    }
}

/// Smallest `k` with `w^{-1}((e_j - e_i) + (k + 1) delta)` positive, so that
/// `t^{k+1} E_ji` is the lowest power of `E_ji` inside `^w b`.
pub fn a_exponent(w: &AffineWeylElement, j: usize, i: usize) -> i64 {
    let inv = w.inverse();
    let root = FiniteRoot { i: j, j: i };
    let base = inv.act_on_affine_root(&AffineRoot::new(root, 0));
    // Positivity is monotone in the level, so step from a safe lower bound.
    let mut k = -base.level - 2;
    while !affine_root_positive(&AffineRoot::new(base.root, base.level + k + 1)) {
        k += 1;
    }
    k
}

/// `max_p (w(omega_p)_i - w(omega_p)_j) - 1`.
pub fn a_exponent_by_vertices(w: &AffineWeylElement, j: usize, i: usize) -> i64 {
    w.vertices().iter().map(|v| v[i - 1] - v[j - 1]).max().unwrap_or(0) - 1
}

/// The exponents `a_ji` of a minimal coset representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentTable {
    n: usize,
    a: BTreeMap<(usize, usize), i64>,
}

impl ExponentTable {
    pub fn new(w: &AffineWeylElement) -> Result<Self, SpringerError> {
        if !w.is_min_coset_rep() {
            return Err(SpringerError::NotMinimal(w.to_string()));
        }
        let n = w.rank();
        let mut a = BTreeMap::new();
        for j in 1..=n {
            for i in 1..j {
                a.insert((j, i), a_exponent(w, j, i));
            }
        }
        Ok(ExponentTable { n, a })
    }

    pub fn get(&self, j: usize, i: usize) -> i64 {
        self.a[&(j, i)]
    }

    pub fn max(&self) -> i64 {
        self.a.values().copied().max().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.n
    }
}

/// All strictly increasing chains from `i` to `j`.
pub fn chains(i: usize, j: usize) -> Vec<Vec<usize>> {
    if i == j {
        return vec![vec![i]];
    }
    let mids: Vec<usize> = (i + 1..j).collect();
    let mut out = Vec::with_capacity(1 << mids.len());
    for mask in 0u64..(1u64 << mids.len()) {
        let mut ch = vec![i];
        ch.extend(mids.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, m)| *m));
        ch.push(j);
        out.push(ch);
    }
    out.sort_by_key(|c| c.len());
    out
}

/// `c = prod_{l<k} (s_{i_l} - s_{i_{l+1}}) / (s_{i_l} - s_{i_k})`.
pub fn chain_constant_c(chain: &[usize], s: &SpectralParameters) -> Rational {
    let last = s.s(*chain.last().expect("nonempty chain"));
    let mut v = Rational::one();
    for w in chain.windows(2) {
        v *= (s.s(w[0]) - s.s(w[1])) / (s.s(w[0]) - last);
    }
    v
}

/// Readings of the denominator in the closed form for `c'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CPrimeReading {
    /// Denominators `s_1 - s_{i_{l+1}}`, taken literally.
    Literal,
    /// Denominators `s_{i_1} - s_{i_{l+1}}`.
    ChainStart,
}

impl CPrimeReading {
    pub fn name(&self) -> &'static str {
        match self {
            CPrimeReading::Literal => "literal-s1",
            CPrimeReading::ChainStart => "chain-start",
        }
    }
}

pub fn chain_constant_c_prime_with(
    chain: &[usize],
    s: &SpectralParameters,
    reading: CPrimeReading,
) -> Option<Rational> {
    let first = match reading {
        CPrimeReading::Literal => s.s(1),
        CPrimeReading::ChainStart => s.s(chain[0]),
    };
    let mut v = if chain.len() % 2 == 1 { Rational::one() } else { -Rational::one() };
    for w in chain.windows(2) {
        let den = first - s.s(w[1]);
        if den.is_zero() {
            return None;
        }
        v *= (s.s(w[0]) - s.s(w[1])) / den;
    }
    Some(v)
}

/// `c'` under the reading that inverts `M^w`.
pub fn chain_constant_c_prime(chain: &[usize], s: &SpectralParameters) -> Rational {
    chain_constant_c_prime_with(chain, s, CPrimeReading::ChainStart).expect("regular s")
}

/// `sum_l c(i_1..i_l) c'(i_l..i_k)`; equals 1 for `k = 1` and 0 otherwise.
pub fn chain_orthogonality(chain: &[usize], s: &SpectralParameters) -> Rational {
    (1..=chain.len())
        .map(|l| chain_constant_c(&chain[..l], s) * chain_constant_c_prime(&chain[l - 1..], s))
        .sum()
}

/// `sum_l c(i_1..i_l) s_{i_l} c'(i_l..i_k)`; zero for `k > 2`.
pub fn weighted_orthogonality(chain: &[usize], s: &SpectralParameters) -> Rational {
    (1..=chain.len())
        .map(|l| {
            chain_constant_c(&chain[..l], s)
                * s.s(chain[l - 1])
                * chain_constant_c_prime(&chain[l - 1..], s)
        })
        .sum()
}

/// Lower unitriangular loop matrix `M^w` (or its inverse).
#[derive(Debug, Clone)]
pub struct SpringerMatrix {
    pub w: AffineWeylElement,
    pub s: SpectralParameters,
    pub exponents: ExponentTable,
    pub entries: TruncatedLoopMatrix,
}

impl SpringerMatrix {
    pub fn rank(&self) -> usize {
        self.w.rank()
    }

    pub fn precision(&self) -> i64 {
        self.entries.precision()
    }
}

/// Default `t` window `[0, n * max a + 2]`.
pub fn default_window(table: &ExponentTable) -> i64 {
    table.rank() as i64 * table.max() + 2
}

fn chain_sum(
    w: &AffineWeylElement,
    table: &ExponentTable,
    hi: i64,
    constant: impl Fn(&[usize]) -> Rational,
) -> Result<TruncatedLoopMatrix, AlgebraError> {
    let n = w.rank();
    let mut m = TruncatedLoopMatrix::zero(n, n, 0, hi);
    for j in 1..=n {
        for i in 1..=j {
            let mut entry = TruncatedLoopPoly::zero(n, 0, hi);
            for ch in chains(i, j) {
                let mut mono = Poly::constant(n, constant(&ch));
                let mut texp = 0;
                for step in ch.windows(2) {
                    texp += table.get(step[1], step[0]);
                    mono = &mono * &Poly::var(n, step[1], step[0]);
                }
                if texp <= hi {
                    entry.add_at(texp, &mono)?;
                }
            }
            m.set(j - 1, i - 1, entry);
        }
    }
    Ok(m)
}

pub fn build_m(w: &AffineWeylElement, s: &SpectralParameters) -> Result<SpringerMatrix, SpringerError> {
    let table = ExponentTable::new(w)?;
    let hi = default_window(&table);
    build_m_window(w, s, hi)
}

pub fn build_m_window(
    w: &AffineWeylElement,
    s: &SpectralParameters,
    hi: i64,
) -> Result<SpringerMatrix, SpringerError> {
    check_rank(w, s)?;
    let table = ExponentTable::new(w)?;
    let entries = chain_sum(w, &table, hi, |ch| chain_constant_c(ch, s))?;
    Ok(SpringerMatrix { w: w.clone(), s: s.clone(), exponents: table, entries })
}

pub fn build_m_inverse(
    w: &AffineWeylElement,
    s: &SpectralParameters,
) -> Result<SpringerMatrix, SpringerError> {
    build_m_inverse_with(w, s, CPrimeReading::ChainStart, None)
}

pub fn build_m_inverse_with(
    w: &AffineWeylElement,
    s: &SpectralParameters,
    reading: CPrimeReading,
    hi: Option<i64>,
) -> Result<SpringerMatrix, SpringerError> {
    check_rank(w, s)?;
    let table = ExponentTable::new(w)?;
    let hi = hi.unwrap_or_else(|| default_window(&table));
    let entries = chain_sum(w, &table, hi, |ch| {
        chain_constant_c_prime_with(ch, s, reading).unwrap_or_else(Rational::zero)
    })?;
    Ok(SpringerMatrix { w: w.clone(), s: s.clone(), exponents: table, entries })
}

fn check_rank(w: &AffineWeylElement, s: &SpectralParameters) -> Result<(), SpringerError> {
    if s.len() != w.rank() {
        return Err(SpringerError::WrongLength { expected: w.rank(), got: s.len() });
    }
    Ok(())
}

/// Inverse of a lower unitriangular loop matrix by forward substitution.
pub fn unitriangular_inverse(m: &TruncatedLoopMatrix) -> Result<TruncatedLoopMatrix, AlgebraError> {
    let d = m.dim();
    let n = m.rank_n();
    let hi = m.precision();
    let mut inv = TruncatedLoopMatrix::identity(n, d, hi);
    let minus_one = Poly::constant(n, -Rational::one());
    for j in 0..d {
        for i in (0..j).rev() {
            let mut acc = TruncatedLoopPoly::zero(n, 0, hi);
            for k in i..j {
                acc = acc.add(&m.get(j, k).mul_window(inv.get(k, i), hi)?);
            }
            inv.set(j, i, acc.scale(&minus_one));
        }
    }
    Ok(inv)
}

/// Outcome of testing both readings of `c'` against `M M^{-1} = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseResolution {
    pub passing: Vec<CPrimeReading>,
    /// The reading used by `build_m_inverse`; `None` means neither closed
    /// form inverts and generic inversion must be used.
    pub chosen: Option<CPrimeReading>,
}

/// Check `M M^{-1} = M^{-1} M = I` symbolically for every given `w`.
pub fn inverse_holds(
    w: &AffineWeylElement,
    s: &SpectralParameters,
    reading: CPrimeReading,
) -> Result<bool, SpringerError> {
    let m = build_m(w, s)?;
    let hi = m.precision();
    let inv = build_m_inverse_with(w, s, reading, Some(hi))?;
    let id = TruncatedLoopMatrix::identity(w.rank(), w.rank(), hi);
    Ok(m.entries.mul_window(&inv.entries, hi)? == id && inv.entries.mul_window(&m.entries, hi)? == id)
}

pub fn resolve_c_prime_reading(
    elements: &[AffineWeylElement],
    params: &[SpectralParameters],
) -> Result<InverseResolution, SpringerError> {
    let mut passing = vec![];
    for reading in [CPrimeReading::Literal, CPrimeReading::ChainStart] {
        let mut ok = true;
        'outer: for w in elements {
            for s in params.iter().filter(|s| s.len() == w.rank()) {
                if !inverse_holds(w, s, reading)? {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            passing.push(reading);
        }
    }
    let chosen = if passing.contains(&CPrimeReading::ChainStart) {
        Some(CPrimeReading::ChainStart)
    } else {
        passing.first().copied()
    };
    Ok(InverseResolution { passing, chosen })
}

/// `(M^w)^{-1} (t s) M^w`, checked entry by entry against the closed form
/// and for membership in `^w b`.
pub fn conjugate_ts(
    w: &AffineWeylElement,
    s: &SpectralParameters,
    precision: i64,
) -> Result<TruncatedLoopMatrix, SpringerError> {
    let n = w.rank();
    let m = build_m_window(w, s, precision)?;
    let inv = build_m_inverse_with(w, s, CPrimeReading::ChainStart, Some(precision))?;
    let mut ts = TruncatedLoopMatrix::zero(n, n, 0, precision);
    for k in 1..=n {
        ts.get_mut(k - 1, k - 1).add_at(1, &Poly::constant(n, s.s(k).clone()))?;
    }
    let conj = inv.entries.mul_window(&ts, precision)?.mul_window(&m.entries, precision)?;
    let winv = w.inverse();
    for j in 1..=n {
        for i in 1..=n {
            let entry = conj.get(j - 1, i - 1);
            let mut expected = TruncatedLoopPoly::zero(n, 0, precision);
            if i == j {
                expected.add_at(1, &Poly::constant(n, s.s(i).clone()))?;
            } else if i < j {
                let e = m.exponents.get(j, i) + 1;
                if e <= precision {
                    let c = Poly::var(n, j, i).scale(&(s.s(j) - s.s(i)));
                    expected.add_at(e, &c)?;
                }
            }
            if entry.terms().collect::<Vec<_>>() != expected.terms().collect::<Vec<_>>() {
                return Err(SpringerError::Conjugation {
                    j,
                    i,
                    detail: "entry differs from the closed form".to_string(),
                });
            }
            for (k, _) in entry.terms() {
                let ok = if i == j {
                    k >= 0
                } else {
                    let r = AffineRoot::new(FiniteRoot { i: j, j: i }, k);
                    affine_root_positive(&winv.act_on_affine_root(&r))
                };
                if !ok {
                    return Err(SpringerError::Conjugation {
                        j,
                        i,
                        detail: format!("t^{k} term lies outside ^w b"),
                    });
                }
            }
        }
    }
    Ok(conj)
}

/// The matrix `M^{(k)}` of `t^k` coefficients.
pub fn t_coefficient_matrix(m: &SpringerMatrix, k: i64) -> Result<PolyMatrix, SpringerError> {
    let (lo, hi) = (0, m.precision());
    if k < lo || k > hi {
        return Err(AlgebraError::OutOfWindow(k, lo, hi).into());
    }
    Ok(m.entries.coefficient_matrix(k)?)
}

/// For the longest box element `a_ji = j - i - 1`, so `M^{(k)}_ji` sums over
/// chains of length `j - i + 1 - k`.
pub fn closed_form_coefficient(n: usize, s: &SpectralParameters, k: i64) -> PolyMatrix {
    let mut m = PolyMatrix::zero(n, n, n);
    for j in 1..=n {
        for i in 1..=j {
            let len = (j - i) as i64 + 1 - k;
            if len < 1 {
                continue;
            }
            let mut acc = Poly::zero(n);
            for ch in chains(i, j).into_iter().filter(|c| c.len() as i64 == len) {
                let mut mono = Poly::constant(n, chain_constant_c(&ch, s));
                for step in ch.windows(2) {
                    mono = &mono * &Poly::var(n, step[1], step[0]);
                }
                acc = &acc + &mono;
            }
            m.set(j - 1, i - 1, acc);
        }
    }
    m
}
