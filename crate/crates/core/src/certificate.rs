//! Determinant certificates for fixed points.
//!
//! For a component `x` in the fundamental box and a vertex index `i`, the
//! lattice `M^{w_F} x <e_1..e_i, t e_{i+1}..t e_n>` is written in the basis
//! `t^m e_k` as a block matrix: row block `r` holds the basis vectors at
//! relative valuation `r`, column block `l` the generators `e_k` with
//! `x(omega_i)_k >= x(omega_i)_1 - l`, and block `(r, l)` is `M^{(r-l)}`.
//! A candidate `y` keeps the first `#{y(omega_i)_k >= x(omega_i)_1 - r}` rows
//! of block `r`; `y` is a fixed point of the component iff the resulting
//! square determinant is a nonzero polynomial for every `i`.
//!
//! The certificate picks columns per row block greedily (own block first,
//! then earlier blocks), reads off one monomial of the determinant and
//! computes its coefficient as a product of Vandermonde-type determinants.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use num::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::affine_weyl::{
    bruhat_interval_below, bruhat_leq_fw, elements_up_to_length, enumerate_f, finite_weyl_group,
    longest_of, w0, AffineWeylElement,
};
use crate::error::CertError;
use crate::exact_algebra::{
    permutation_sign, poly_det, random_assignment, rational_det, vandermonde_det, Assignment,
    Monomial, Poly, PolyMatrix, Rational,
};
use crate::springer_matrix::{
    build_m, chain_constant_c, t_coefficient_matrix, SpectralParameters, SpringerMatrix,
};

/// Default largest symbolic determinant attempted.
pub const SYMBOLIC_LIMIT: usize = 12;

/// Master seed used when none is given.
pub const DEFAULT_SEED: u64 = 0;

pub const DEFAULT_TRIALS: usize = 5;

/// Random assignments are drawn from `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 1000;

/// Shared data for all components of a given rank.
#[derive(Debug, Clone)]
pub struct ComponentContext {
    pub n: usize,
    pub s: SpectralParameters,
    pub box_elements: Vec<AffineWeylElement>,
    pub w_f: AffineWeylElement,
    pub m_wf: SpringerMatrix,
    pub symbolic_limit: usize,
    coeffs: Vec<PolyMatrix>,
}

impl ComponentContext {
    pub fn new(n: usize, s: SpectralParameters) -> Result<Self, CertError> {
        let box_elements = enumerate_f(n)?;
        let w_f = longest_of(n, &box_elements)?;
        let m_wf = build_m(&w_f, &s)?;
        let coeffs = (0..=m_wf.precision())
            .map(|k| t_coefficient_matrix(&m_wf, k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ComponentContext { n, s, box_elements, w_f, m_wf, symbolic_limit: SYMBOLIC_LIMIT, coeffs })
    }

    pub fn with_default(n: usize) -> Result<Self, CertError> {
        Self::new(n, SpectralParameters::default_for(n))
    }

    /// `M^{(k)}_{row, col}` (1-based), zero outside the polynomial support.
    pub fn coeff(&self, k: i64, row: usize, col: usize) -> Poly {
        if k < 0 || k as usize >= self.coeffs.len() {
            return Poly::zero(self.n);
        }
        self.coeffs[k as usize].get(row - 1, col - 1).clone()
    }

    pub fn in_box(&self, x: &AffineWeylElement) -> bool {
        self.box_elements.contains(x)
    }

    fn check_box(&self, x: &AffineWeylElement) -> Result<(), CertError> {
        if !self.in_box(x) {
            return Err(CertError::NotInBox(x.to_string()));
        }
        Ok(())
    }
}

/// Row and column blocks of the matrix for one vertex of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    pub n: usize,
    pub vertex: Vec<i64>,
    /// `x(omega_i)_1 - x(omega_i)_n - 1`; negative means an empty matrix.
    pub k_max: i64,
    /// `j_l = #{k : x(omega_i)_k >= x(omega_i)_1 - l}` for `l = 0..=k_max`.
    pub j: Vec<usize>,
    /// Rows of each fixed level set.
    pub level_sets: Vec<Range<usize>>,
    /// Columns of each valuation set.
    pub valuation_sets: Vec<Range<usize>>,
}

impl BlockStructure {
    pub fn from_vertex(vertex: &[i64]) -> Self {
        let n = vertex.len();
        let top = vertex[0];
        let k_max = top - vertex[n - 1] - 1;
        let levels = (k_max + 1).max(0) as usize;
        let j: Vec<usize> =
            (0..levels).map(|l| vertex.iter().filter(|&&v| v >= top - l as i64).count()).collect();
        let level_sets = (0..levels).map(|r| r * n..(r + 1) * n).collect();
        let mut valuation_sets = vec![];
        let mut start = 0;
        for &c in &j {
            valuation_sets.push(start..start + c);
            start += c;
        }
        BlockStructure { n, vertex: vertex.to_vec(), k_max, j, level_sets, valuation_sets }
    }

    pub fn levels(&self) -> usize {
        self.j.len()
    }

    pub fn rows(&self) -> usize {
        self.levels() * self.n
    }

    pub fn cols(&self) -> usize {
        self.j.iter().sum()
    }

    /// Global row index of basis vector `e_rho` in level set `r`.
    pub fn row_index(&self, r: usize, rho: usize) -> usize {
        r * self.n + rho - 1
    }

    /// Global column index of generator `k` in valuation set `l`.
    pub fn col_index(&self, l: usize, k: usize) -> usize {
        self.valuation_sets[l].start + k - 1
    }
}

#[derive(Debug, Clone)]
pub struct BlockMatrix {
    pub matrix: PolyMatrix,
    pub structure: BlockStructure,
}

fn vertex_of(x: &AffineWeylElement, i: usize) -> Result<Vec<i64>, CertError> {
    if i >= x.rank() {
        return Err(CertError::BadVertex { n: x.rank(), i });
    }
    Ok(x.vertex_image(i).coords)
}

pub fn build_block_matrix(
    ctx: &ComponentContext,
    x: &AffineWeylElement,
    i: usize,
) -> Result<BlockMatrix, CertError> {
    ctx.check_box(x)?;
    let st = BlockStructure::from_vertex(&vertex_of(x, i)?);
    let mut m = PolyMatrix::zero(ctx.n, st.rows(), st.cols());
    for r in 0..st.levels() {
        for l in 0..=r {
            for rho in 1..=ctx.n {
                for k in 1..=st.j[l] {
                    let e = ctx.coeff((r - l) as i64, rho, k);
                    if !e.is_zero() {
                        m.set(st.row_index(r, rho), st.col_index(l, k), e);
                    }
                }
            }
        }
    }
    m.row_blocks = st.level_sets.iter().map(|r| r.start).collect();
    m.col_blocks = st.valuation_sets.iter().map(|r| r.start).collect();
    Ok(BlockMatrix { matrix: m, structure: st })
}

/// Rows kept for a candidate `y`: the first `counts[r]` rows of level `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSelection {
    pub counts: Vec<usize>,
    pub rows: Vec<usize>,
}

/// Row counts from the vertex images alone, checking the prefix condition.
pub fn select_rows_for_vertices(
    st: &BlockStructure,
    yv: &[i64],
    i: usize,
) -> Result<RowSelection, CertError> {
    let top = st.vertex[0];
    if yv.iter().sum::<i64>() != st.vertex.iter().sum::<i64>() || yv[0] > top {
        return Err(CertError::NotComparable(i));
    }
    let counts: Vec<usize> =
        (0..st.levels()).map(|r| yv.iter().filter(|&&v| v >= top - r as i64).count()).collect();
    let (mut have, mut need) = (0, 0);
    for r in 0..st.levels() {
        have += st.j[r];
        need += counts[r];
        if need > have {
            return Err(CertError::NotComparable(i));
        }
    }
    if need != have {
        // Equal totals with y below the last threshold would need more rows.
        return Err(CertError::NotComparable(i));
    }
    let rows = (0..st.levels())
        .flat_map(|r| (1..=counts[r]).map(move |rho| st.row_index(r, rho)))
        .collect();
    Ok(RowSelection { counts, rows })
}

pub fn select_rows(
    x: &AffineWeylElement,
    y: &AffineWeylElement,
    i: usize,
) -> Result<RowSelection, CertError> {
    if !y.is_min_coset_rep() {
        return Err(CertError::NotMinimal(y.to_string()));
    }
    let st = BlockStructure::from_vertex(&vertex_of(x, i)?);
    select_rows_for_vertices(&st, &vertex_of(y, i)?, i)
}

/// Columns taken from an earlier valuation set for one level set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyGroup {
    /// How many sets back: the source is valuation set `level - depth`.
    pub depth: usize,
    pub source: usize,
    /// First column taken (1-based), `l_s`.
    pub first: usize,
    /// Number of columns taken, `m_s`.
    pub count: usize,
    /// Rows (1-based) matched to the columns, in order.
    pub rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelChoice {
    pub level: usize,
    /// Columns `1..=own` of the level's own valuation set, on the diagonal.
    pub own: usize,
    /// Rows kept in this level set.
    pub selected: usize,
    /// Groups from earlier sets, nearest first.
    pub groups: Vec<GreedyGroup>,
}

/// One matched pair: row `e_row` of a level set and generator `col` of a
/// valuation set, joined by the chain `col, col+1, .., row-depth-1, row`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pairing {
    pub level: usize,
    pub row: usize,
    pub set: usize,
    pub col: usize,
}

impl Pairing {
    pub fn depth(&self) -> usize {
        self.level - self.set
    }

    /// Last chain index before the jump to `row`.
    pub fn sigma(&self) -> Option<usize> {
        (self.row as i64 - self.depth() as i64 - 1).try_into().ok().filter(|&s: &usize| s >= 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedySelection {
    pub structure: BlockStructure,
    pub rows: RowSelection,
    pub levels: Vec<LevelChoice>,
}

impl GreedySelection {
    pub fn pairings(&self) -> Vec<Pairing> {
        let mut out = vec![];
        for lv in &self.levels {
            for k in 1..=lv.own {
                out.push(Pairing { level: lv.level, row: k, set: lv.level, col: k });
            }
            for g in &lv.groups {
                for (a, &row) in g.rows.iter().enumerate() {
                    out.push(Pairing { level: lv.level, row, set: g.source, col: g.first + a });
                }
            }
        }
        out
    }

    pub fn is_pivot_only(&self) -> bool {
        self.levels.iter().all(|l| l.groups.is_empty())
    }
}

/// Steps (1)-(5) of the greedy column choice, with earlier sets matched to
/// the bottom rows, the deepest set lowest.
pub fn greedy_for_structure(st: &BlockStructure, rows: &RowSelection) -> Result<GreedySelection, CertError> {
    let levels = st.levels();
    let mut used = vec![0usize; levels];
    let mut out = Vec::with_capacity(levels);
    for r in 0..levels {
        let selected = rows.counts[r];
        let own = st.j[r].min(selected);
        used[r] = own;
        let mut need = selected - own;
        let mut groups = vec![];
        let mut depth = 1;
        while need > 0 {
            if depth > r {
                return Err(CertError::NotComparable(0));
            }
            let l = r - depth;
            let take = (st.j[l] - used[l]).min(need);
            if take > 0 {
                groups.push(GreedyGroup { depth, source: l, first: used[l] + 1, count: take, rows: vec![] });
                used[l] += take;
                need -= take;
            }
            depth += 1;
        }
        let mut next = selected;
        for g in groups.iter_mut().rev() {
            g.rows = (next + 1 - g.count..=next).collect();
            next -= g.count;
        }
        debug_assert_eq!(next, own);
        out.push(LevelChoice { level: r, own, selected, groups });
    }
    Ok(GreedySelection { structure: st.clone(), rows: rows.clone(), levels: out })
}

pub fn greedy_submatrices(
    x: &AffineWeylElement,
    y: &AffineWeylElement,
    i: usize,
) -> Result<GreedySelection, CertError> {
    let rows = select_rows(x, y, i)?;
    let st = BlockStructure::from_vertex(&vertex_of(x, i)?);
    greedy_for_structure(&st, &rows)
}

/// Certificate monomial and its predicted coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateMonomial {
    pub monomial: Monomial,
    pub coefficient: Rational,
}

/// Product over all non-pivot pairings of `A_{col+1,col} ... A_{sigma,sigma-1} A_{row,sigma}`.
pub fn certificate_monomial(sel: &GreedySelection) -> Result<Monomial, CertError> {
    let n = sel.structure.n;
    let mut m = Monomial::one(n);
    for p in sel.pairings().into_iter().filter(|p| p.depth() > 0) {
        let sigma = p.sigma().filter(|&s| s >= p.col).ok_or(CertError::Infeasible { row: p.row, col: p.col })?;
        for k in p.col..sigma {
            m.times_var(n, k + 1, k);
        }
        m.times_var(n, p.row, sigma);
    }
    Ok(m)
}

/// One row of a ratio block: matched row, its jump source and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioRow {
    pub row: usize,
    pub sigma: usize,
    pub col: usize,
}

/// Non-pivot pairings grouped by source valuation set, each in
/// (level, row) order.
pub fn ratio_groups(sel: &GreedySelection) -> Result<BTreeMap<usize, Vec<RatioRow>>, CertError> {
    let mut groups: BTreeMap<usize, Vec<(usize, RatioRow)>> = BTreeMap::new();
    for p in sel.pairings().into_iter().filter(|p| p.depth() > 0) {
        let sigma = p.sigma().filter(|&s| s >= p.col).ok_or(CertError::Infeasible { row: p.row, col: p.col })?;
        groups.entry(p.set).or_default().push((p.level, RatioRow { row: p.row, sigma, col: p.col }));
    }
    Ok(groups
        .into_iter()
        .map(|(l, mut g)| {
            g.sort_by_key(|(lv, r)| (*lv, r.row));
            (l, g.into_iter().map(|(_, r)| r).collect())
        })
        .collect())
}

/// `R[a][b] = c(col_b, col_b + 1, .., sigma_a, row_a)`, zero when `col_b > sigma_a`.
pub fn ratio_matrix(group: &[RatioRow], s: &SpectralParameters) -> Vec<Vec<Rational>> {
    group
        .iter()
        .map(|a| {
            group
                .iter()
                .map(|b| {
                    if b.col > a.sigma {
                        return Rational::zero();
                    }
                    let mut chain: Vec<usize> = (b.col..=a.sigma).collect();
                    chain.push(a.row);
                    chain_constant_c(&chain, s)
                })
                .collect()
        })
        .collect()
}

/// Closed form of `det R` when every chain reaches the last column. Rows
/// are rescaled by `prod_{i=b}^{sigma-1} (s_i - s_row)/(s_i - s_{i+1})` and
/// columns by `prod_{i=b}^{b+p-1} (s_i - s_{i+1})`, leaving a Vandermonde
/// matrix in the `s_row`.
pub fn ratio_det_closed_form(group: &[RatioRow], s: &SpectralParameters) -> Option<Rational> {
    let m = group.len();
    let b = group.iter().map(|r| r.col).min()?;
    let top = group.iter().map(|r| r.col).max()?;
    if group.iter().any(|r| r.sigma < top) || top - b + 1 != m {
        return None;
    }
    let mut out = vandermonde_det(&group.iter().map(|r| s.s(r.row).clone()).collect::<Vec<_>>());
    if (m * (m.saturating_sub(1)) / 2) % 2 == 1 {
        out = -out;
    }
    for r in group {
        for i in b..r.sigma {
            out *= (s.s(i) - s.s(i + 1)) / (s.s(i) - s.s(r.row));
        }
    }
    for p in 0..m {
        for i in b..b + p {
            out /= s.s(i) - s.s(i + 1);
        }
    }
    Some(out)
}

/// Sign of the matching between sorted columns and sorted rows.
pub fn pairing_sign(sel: &GreedySelection) -> i64 {
    let pairs = sel.pairings();
    let mut rows: Vec<(usize, usize)> = pairs.iter().map(|p| (p.level, p.row)).collect();
    rows.sort();
    let mut by_col = pairs.clone();
    by_col.sort_by_key(|p| (p.set, p.col));
    let perm: Vec<usize> = by_col
        .iter()
        .map(|p| rows.binary_search(&(p.level, p.row)).expect("row present"))
        .collect();
    permutation_sign(&perm)
}

pub fn monomial_coefficient(sel: &GreedySelection, s: &SpectralParameters) -> Result<Rational, CertError> {
    let mut coeff = Rational::from_integer(pairing_sign(sel).into());
    for group in ratio_groups(sel)?.values() {
        let d = ratio_det_closed_form(group, s).unwrap_or_else(|| rational_det(&ratio_matrix(group, s)));
        coeff *= d;
    }
    Ok(coeff)
}

pub fn certificate(sel: &GreedySelection, s: &SpectralParameters) -> Result<CertificateMonomial, CertError> {
    Ok(CertificateMonomial { monomial: certificate_monomial(sel)?, coefficient: monomial_coefficient(sel, s)? })
}

/// Selected rows against all columns; square whenever the rows are valid.
pub fn square_submatrix(
    ctx: &ComponentContext,
    x: &AffineWeylElement,
    y: &AffineWeylElement,
    i: usize,
) -> Result<PolyMatrix, CertError> {
    let bm = build_block_matrix(ctx, x, i)?;
    let rows = select_rows(x, y, i)?;
    let cols: Vec<usize> = (0..bm.structure.cols()).collect();
    Ok(bm.matrix.submatrix(&rows.rows, &cols))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Certificate,
    Symbolic,
    Randomized,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Certificate, Method::Symbolic, Method::Randomized];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Certificate => "certificate",
            Method::Symbolic => "symbolic",
            Method::Randomized => "randomized",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    NonZero,
    IdenticallyZero,
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::NonZero => "NonZero",
            Verdict::IdenticallyZero => "IdenticallyZero",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// A verdict with the evidence behind it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictDetail {
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub size: usize,
    pub certificate: Option<CertificateMonomial>,
    pub witness: Option<Assignment>,
    pub trials_used: usize,
    /// Homogeneous degree of the determinant, for the Schwartz-Zippel bound.
    pub degree_bound: Option<u32>,
}

impl VerdictDetail {
    fn new(verdict: Verdict, size: usize) -> Self {
        VerdictDetail {
            verdict,
            reason: None,
            size,
            certificate: None,
            witness: None,
            trials_used: 0,
            degree_bound: None,
        }
    }

    fn because(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }
}

/// Stable 64-bit seed from a master seed and labels.
pub fn derive_seed(master: u64, labels: &[&str]) -> u64 {
    let mut h = Sha256::new();
    h.update(master.to_le_bytes());
    for l in labels {
        h.update((l.len() as u64).to_le_bytes());
        h.update(l.as_bytes());
    }
    let d = h.finalize();
    u64::from_le_bytes(d[..8].try_into().expect("8 bytes"))
}

/// Degree of the (homogeneous) determinant: row `(r, rho)` against column
/// `(l, k)` has degree `(rho - r) - (k - l)`.
pub fn determinant_degree(sel: &GreedySelection) -> u32 {
    sel.pairings()
        .iter()
        .map(|p| (p.row as i64 - p.level as i64) - (p.col as i64 - p.set as i64))
        .sum::<i64>()
        .max(0) as u32
}

pub fn nonvanishing_verdict(
    ctx: &ComponentContext,
    x: &AffineWeylElement,
    y: &AffineWeylElement,
    i: usize,
    method: Method,
    seed: u64,
    trials: usize,
) -> Result<VerdictDetail, CertError> {
    ctx.check_box(x)?;
    if !y.is_min_coset_rep() {
        return Err(CertError::NotMinimal(y.to_string()));
    }
    let st = BlockStructure::from_vertex(&vertex_of(x, i)?);
    let rows = match select_rows_for_vertices(&st, &vertex_of(y, i)?, i) {
        Ok(r) => r,
        Err(CertError::NotComparable(_)) => {
            return Ok(VerdictDetail::new(Verdict::IdenticallyZero, 0).because("NotComparable"))
        }
        Err(e) => return Err(e),
    };
    let size = rows.rows.len();
    if size == 0 {
        return Ok(VerdictDetail::new(Verdict::NonZero, 0).because("empty matrix"));
    }
    let sel = greedy_for_structure(&st, &rows)?;
    let degree = determinant_degree(&sel);
    match method {
        Method::Certificate => match certificate(&sel, &ctx.s) {
            Ok(c) => {
                let v = if c.coefficient.is_zero() { Verdict::Inconclusive } else { Verdict::NonZero };
                let mut d = VerdictDetail::new(v, size);
                d.certificate = Some(c);
                d.degree_bound = Some(degree);
                Ok(d)
            }
            Err(CertError::Infeasible { row, col }) => Ok(VerdictDetail::new(Verdict::Inconclusive, size)
                .because(format!("no chain from column {col} to row {row}"))),
            Err(e) => Err(e),
        },
        Method::Symbolic => {
            if size > ctx.symbolic_limit {
                return Ok(VerdictDetail::new(Verdict::Inconclusive, size)
                    .because(format!("{size}x{size} exceeds the symbolic limit {}", ctx.symbolic_limit)));
            }
            let m = square_submatrix(ctx, x, y, i)?;
            let det = poly_det(&m).expect("square");
            let v = if det.is_zero() { Verdict::IdenticallyZero } else { Verdict::NonZero };
            let mut d = VerdictDetail::new(v, size);
            d.degree_bound = Some(degree);
            Ok(d)
        }
        Method::Randomized => {
            let m = square_submatrix(ctx, x, y, i)?;
            let tag = format!("{i}");
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[&x.to_string(), &y.to_string(), &tag]));
            for t in 0..trials {
                let a = random_assignment(ctx.n, &mut rng, SAMPLE_BOUND);
                let num = m.eval_at(&a).expect("all variables assigned");
                if !rational_det(&num).is_zero() {
                    let mut d = VerdictDetail::new(Verdict::NonZero, size);
                    d.witness = Some(a);
                    d.trials_used = t + 1;
                    d.degree_bound = Some(degree);
                    return Ok(d);
                }
            }
            let mut d = VerdictDetail::new(Verdict::Inconclusive, size).because("all evaluations vanished");
            d.trials_used = trials;
            d.degree_bound = Some(degree);
            Ok(d)
        }
    }
}

/// One assignment at which the determinants for every vertex are nonzero.
pub fn common_witness(
    ctx: &ComponentContext,
    x: &AffineWeylElement,
    y: &AffineWeylElement,
    seed: u64,
    trials: usize,
) -> Result<Option<(Assignment, u64)>, CertError> {
    let mats = (0..ctx.n)
        .map(|i| square_submatrix(ctx, x, y, i))
        .collect::<Result<Vec<_>, _>>()?;
    let task_seed = derive_seed(seed, &[&x.to_string(), &y.to_string(), "common"]);
    let mut rng = ChaCha8Rng::seed_from_u64(task_seed);
    for _ in 0..trials {
        let a = random_assignment(ctx.n, &mut rng, SAMPLE_BOUND);
        if mats.iter().all(|m| !rational_det(&m.eval_at(&a).expect("assigned")).is_zero()) {
            return Ok(Some((a, task_seed)));
        }
    }
    Ok(None)
}

/// Verdicts of one candidate across all vertex indices.
#[derive(Debug, Clone)]
pub struct CandidateRecord {
    pub y: AffineWeylElement,
    pub verdicts: Vec<VerdictDetail>,
}

impl CandidateRecord {
    pub fn overall(&self) -> Verdict {
        if self.verdicts.iter().any(|v| v.verdict == Verdict::IdenticallyZero) {
            Verdict::IdenticallyZero
        } else if self.verdicts.iter().all(|v| v.verdict == Verdict::NonZero) {
            Verdict::NonZero
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Debug, Clone)]
pub struct FixedPointResult {
    pub x: AffineWeylElement,
    pub method: Method,
    pub members: BTreeSet<AffineWeylElement>,
    /// Candidates with no decision, to be reported as gaps.
    pub gaps: Vec<AffineWeylElement>,
    /// Orbit points that fell outside `[e, w0 x]`; must stay empty.
    pub outside_bound: Vec<AffineWeylElement>,
    pub records: Vec<CandidateRecord>,
}

/// Minimal representatives `y` with `y <= x`, by the vertex criterion over
/// all minimal representatives of length at most `l(x)`.
pub fn candidates_below(x: &AffineWeylElement) -> Result<Vec<AffineWeylElement>, CertError> {
    let mut out = vec![];
    for y in elements_up_to_length(x.rank(), x.length()) {
        if y.is_min_coset_rep() && bruhat_leq_fw(&y, x)? {
            out.push(y);
        }
    }
    Ok(out)
}

/// Add the `W_f`-orbits of the accepted candidates, split by the bound.
pub fn orbit_union(
    accepted: &[AffineWeylElement],
    bound: &BTreeSet<AffineWeylElement>,
) -> (BTreeSet<AffineWeylElement>, Vec<AffineWeylElement>) {
    let mut members = BTreeSet::new();
    let mut outside = BTreeSet::new();
    for y in accepted {
        for z in finite_weyl_group(y.rank()) {
            let zy = z.multiply(y).expect("same rank");
            if bound.contains(&zy) {
                members.insert(zy);
            } else {
                outside.insert(zy);
            }
        }
    }
    (members, outside.into_iter().collect())
}

pub fn upper_bound(x: &AffineWeylElement) -> BTreeSet<AffineWeylElement> {
    let w0x = w0(x.rank()).multiply(x).expect("same rank");
    bruhat_interval_below(&w0x).into_iter().collect()
}

pub fn fixed_point_set(
    ctx: &ComponentContext,
    x: &AffineWeylElement,
    method: Method,
    seed: u64,
    trials: usize,
) -> Result<FixedPointResult, CertError> {
    ctx.check_box(x)?;
    let cands = candidates_below(x)?;
    let records = cands
        .par_iter()
        .map(|y| {
            let verdicts = (0..ctx.n)
                .map(|i| nonvanishing_verdict(ctx, x, y, i, method, seed, trials))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CandidateRecord { y: y.clone(), verdicts })
        })
        .collect::<Result<Vec<_>, CertError>>()?;
    let accepted: Vec<_> = records.iter().filter(|r| r.overall() == Verdict::NonZero).map(|r| r.y.clone()).collect();
    let gaps = records.iter().filter(|r| r.overall() == Verdict::Inconclusive).map(|r| r.y.clone()).collect();
    let bound = upper_bound(x);
    let (members, outside_bound) = orbit_union(&accepted, &bound);
    Ok(FixedPointResult { x: x.clone(), method, members, gaps, outside_bound, records })
}

/// The pivot-only certificate is the constant 1.
pub fn trivial_certificate(n: usize) -> CertificateMonomial {
    CertificateMonomial { monomial: Monomial::one(n), coefficient: Rational::one() }
}
