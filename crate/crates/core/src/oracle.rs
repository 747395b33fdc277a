//! Lattice-model membership test, independent of the block matrices.
//!
//! With `L_p = <e_1..e_p, t e_{p+1}..t e_n>` the point of the component
//! given by an assignment of the `A_ji` is the chain `V_p = g x L_p`, where
//! `g = M^{w_F}` evaluated at the assignment and
//! `x L_p = (+)_k t^{1 - x(omega_p)_k} O e_k`. It lies in the attracting
//! neighbourhood `U_y` iff `V_p ∩ y N_p = 0` for every `p`, where
//! `y N_p = (+)_k t^{<= -y(omega_p)_k} C e_k` is the `C[t^{-1}]`-module
//! translated from the `U_1` condition. All spaces are cut to exponents in
//! `[-P, P]`, which is exact once `P` clears the vertex coordinates.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::affine_weyl::{bruhat_interval_below, w0, AffineWeylElement};
use crate::certificate::{
    candidates_below, derive_seed, orbit_union, upper_bound, ComponentContext, SAMPLE_BOUND,
};
use crate::error::OracleError;
use crate::exact_algebra::{random_assignment, rational_rank, Assignment, Rational};
use crate::springer_matrix::{build_m, SpectralParameters, SpringerMatrix};

/// Loop matrix with rational coefficients: `g[row][col]` maps `t`-exponent
/// to coefficient.
pub type EvaluatedLoopMatrix = Vec<Vec<BTreeMap<i64, Rational>>>;

pub fn evaluate(m: &SpringerMatrix, a: &Assignment) -> EvaluatedLoopMatrix {
    let n = m.rank();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    m.entries
                        .get(r, c)
                        .terms()
                        .map(|(e, p)| (e, p.eval_at(a).expect("all variables assigned")))
                        .filter(|(_, v)| !v.is_zero())
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Chain `V_0 ⊂ V_1 ⊂ .. ⊂ V_{n-1}` with `t V_{n-1} ⊂ V_0`, cut to `[-P, P]`.
#[derive(Debug, Clone)]
pub struct LatticeChain {
    pub n: usize,
    pub precision: i64,
    pub x: AffineWeylElement,
    /// Generators of each `V_p` as coordinate vectors indexed by
    /// `(m + P) * n + (k - 1)` for the basis vector `t^m e_k`.
    pub generators: Vec<Vec<Vec<Rational>>>,
    g: EvaluatedLoopMatrix,
}

/// Smallest safe `P` for the pair of elements.
pub fn required_precision(x: &AffineWeylElement, y: Option<&AffineWeylElement>) -> i64 {
    let mut need = 1;
    for w in std::iter::once(x).chain(y) {
        for v in w.vertices() {
            let lo = *v.iter().min().expect("n >= 2");
            let hi = *v.iter().max().expect("n >= 2");
            need = need.max(-lo).max(hi - 1).max(1 - lo);
        }
    }
    need
}

/// `max_p (max - min of x(omega_p)) + 2`.
pub fn default_precision(x: &AffineWeylElement) -> i64 {
    let spread = x
        .vertices()
        .iter()
        .map(|v| v.iter().max().unwrap() - v.iter().min().unwrap())
        .max()
        .unwrap_or(0);
    spread + 2
}

fn generators_at(g: &EvaluatedLoopMatrix, x: &AffineWeylElement, p: usize, prec: i64) -> Vec<Vec<Rational>> {
    let n = x.rank();
    let width = (2 * prec + 1) as usize * n;
    let v = x.vertex_image(p).coords;
    let mut out = vec![];
    for k in 1..=n {
        for m in 1 - v[k - 1]..=prec {
            let mut vec = vec![Rational::zero(); width];
            for row in 1..=n {
                for (e, c) in &g[row - 1][k - 1] {
                    let exp = m + e;
                    if exp <= prec && exp >= -prec {
                        vec[((exp + prec) as usize) * n + row - 1] = c.clone();
                    }
                }
            }
            out.push(vec);
        }
    }
    out
}

impl LatticeChain {
    pub fn at_precision(&self, prec: i64) -> LatticeChain {
        LatticeChain {
            n: self.n,
            precision: prec,
            x: self.x.clone(),
            generators: (0..self.n).map(|p| generators_at(&self.g, &self.x, p, prec)).collect(),
            g: self.g.clone(),
        }
    }

    fn width(&self) -> usize {
        (2 * self.precision + 1) as usize * self.n
    }

    /// `V_p ⊂ V_{p+1}` and `t V_{n-1} ⊂ V_0`, by rank comparisons.
    pub fn containments_hold(&self) -> bool {
        let contained = |a: &[Vec<Rational>], b: &[Vec<Rational>]| {
            let mut both = b.to_vec();
            both.extend_from_slice(a);
            rational_rank(&both) == rational_rank(b)
        };
        for p in 0..self.n - 1 {
            if !contained(&self.generators[p], &self.generators[p + 1]) {
                return false;
            }
        }
        // Multiply by t: shift every coordinate up by one level.
        let n = self.n;
        let shifted: Vec<Vec<Rational>> = self.generators[n - 1]
            .iter()
            .map(|v| {
                let mut out = vec![Rational::zero(); v.len()];
                let keep = v.len().saturating_sub(n);
                out[n..n + keep].clone_from_slice(&v[..keep]);
                out
            })
            .collect();
        contained(&shifted, &self.generators[0])
    }

    fn neighbourhood_basis(&self, y: &AffineWeylElement, p: usize) -> Vec<Vec<Rational>> {
        let n = self.n;
        let prec = self.precision;
        let v = y.vertex_image(p).coords;
        let mut out = vec![];
        for k in 1..=n {
            for m in -prec..=-v[k - 1] {
                let mut vec = vec![Rational::zero(); self.width()];
                vec[((m + prec) as usize) * n + k - 1] = Rational::from_integer(1.into());
                out.push(vec);
            }
        }
        out
    }

    /// `V_p ∩ y N_p = 0` at this chain's precision.
    pub fn intersection_trivial(&self, y: &AffineWeylElement, p: usize) -> bool {
        let v = &self.generators[p];
        let nb = self.neighbourhood_basis(y, p);
        let mut both = v.clone();
        both.extend(nb.iter().cloned());
        rational_rank(&both) == rational_rank(v) + nb.len()
    }

    pub fn verdict_at(&self, y: &AffineWeylElement) -> bool {
        (0..self.n).all(|p| self.intersection_trivial(y, p))
    }
}

pub fn lattice_chain_with(
    m: &SpringerMatrix,
    x: &AffineWeylElement,
    a: &Assignment,
    precision: i64,
) -> Result<LatticeChain, OracleError> {
    let need = required_precision(x, None);
    if precision < need {
        return Err(OracleError::Precision { needed: need, have: precision });
    }
    let g = evaluate(m, a);
    let n = x.rank();
    let generators = (0..n).map(|p| generators_at(&g, x, p, precision)).collect();
    Ok(LatticeChain { n, precision, x: x.clone(), generators, g })
}

/// Chain for the component of `x` at the given assignment, using `M^{w_F}`.
pub fn lattice_chain_from_a(
    ctx: &ComponentContext,
    x: &AffineWeylElement,
    a: &Assignment,
    precision: Option<i64>,
) -> Result<LatticeChain, OracleError> {
    if !ctx.in_box(x) {
        return Err(OracleError::NotInBox(x.to_string()));
    }
    lattice_chain_with(&ctx.m_wf, x, a, precision.unwrap_or_else(|| default_precision(x)))
}

/// Membership of the chain in `U_y`, re-checked at `P + 1`.
pub fn in_attracting_nbhd(chain: &LatticeChain, y: &AffineWeylElement) -> Result<bool, OracleError> {
    let need = required_precision(&chain.x, Some(y));
    if chain.precision < need {
        return Err(OracleError::Precision { needed: need, have: chain.precision });
    }
    let v = chain.verdict_at(y);
    if chain.at_precision(chain.precision + 1).verdict_at(y) != v {
        return Err(OracleError::Unstable(chain.precision as usize));
    }
    Ok(v)
}

/// Chain built from `M^x` instead of `M^{w_F}`.
pub fn lattice_chain_mx(
    s: &SpectralParameters,
    x: &AffineWeylElement,
    a: &Assignment,
    precision: i64,
) -> Result<LatticeChain, OracleError> {
    let m = build_m(x, s)?;
    lattice_chain_with(&m, x, a, precision)
}

/// The torus-fixed chain `z L_p` itself.
pub fn fixed_point_chain(z: &AffineWeylElement, precision: i64) -> Result<LatticeChain, OracleError> {
    let n = z.rank();
    let need = required_precision(z, None);
    if precision < need {
        return Err(OracleError::Precision { needed: need, have: precision });
    }
    let g: EvaluatedLoopMatrix = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { BTreeMap::from([(0, Rational::from_integer(1.into()))]) } else { BTreeMap::new() })
                .collect()
        })
        .collect();
    let generators = (0..n).map(|p| generators_at(&g, z, p, precision)).collect();
    Ok(LatticeChain { n, precision, x: z.clone(), generators, g })
}

impl LatticeChain {
    /// Image of the chain under the finite Weyl element `z`, which moves
    /// the coordinate `e_k` to `e_{z(k)}`.
    pub fn permuted(&self, z: &AffineWeylElement) -> LatticeChain {
        let n = self.n;
        let mut g: EvaluatedLoopMatrix = vec![vec![BTreeMap::new(); n]; n];
        for r in 0..n {
            for c in 0..n {
                g[z.perm_image(r)][c] = self.g[r][c].clone();
            }
        }
        let generators = self
            .generators
            .iter()
            .map(|gens| {
                gens.iter()
                    .map(|v| {
                        let mut out = vec![Rational::zero(); v.len()];
                        for (idx, c) in v.iter().enumerate() {
                            out[(idx / n) * n + z.perm_image(idx % n)] = c.clone();
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        LatticeChain { n, precision: self.precision, x: self.x.clone(), generators, g }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleOutcome {
    pub member: bool,
    /// 1-based trial that found the witness.
    pub trial: Option<usize>,
    pub witness: Option<Assignment>,
    pub seed: u64,
}

/// Search seeded random points of the component of `x` for one in `U_y`.
pub fn membership_sample(
    ctx: &ComponentContext,
    x: &AffineWeylElement,
    y: &AffineWeylElement,
    trials: usize,
    seed: u64,
    precision: Option<i64>,
) -> Result<SampleOutcome, OracleError> {
    let prec = precision.unwrap_or_else(|| default_precision(x).max(required_precision(x, Some(y))));
    let task_seed = derive_seed(seed, &[&x.to_string(), &y.to_string(), "oracle"]);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(task_seed, &[&t.to_string()]));
        let a = random_assignment(ctx.n, &mut rng, SAMPLE_BOUND);
        let chain = lattice_chain_from_a(ctx, x, &a, Some(prec))?;
        if in_attracting_nbhd(&chain, y)? {
            return Ok(SampleOutcome { member: true, trial: Some(t + 1), witness: Some(a), seed: task_seed });
        }
    }
    Ok(SampleOutcome { member: false, trial: None, witness: None, seed: task_seed })
}

/// `[e, w0 x]`, the outer bound for every method.
pub fn orbit_closure_fixed_points(x: &AffineWeylElement) -> BTreeSet<AffineWeylElement> {
    let w0x = w0(x.rank()).multiply(x).expect("same rank");
    bruhat_interval_below(&w0x).into_iter().collect()
}

#[derive(Debug, Clone)]
pub struct OracleFixedPoints {
    pub members: BTreeSet<AffineWeylElement>,
    pub outside_bound: Vec<AffineWeylElement>,
    pub samples: Vec<(AffineWeylElement, SampleOutcome)>,
}

/// Fixed points by sampling each minimal candidate below `x` and adding
/// `W_f`-orbits.
pub fn oracle_fixed_points(
    ctx: &ComponentContext,
    x: &AffineWeylElement,
    trials: usize,
    seed: u64,
    precision: Option<i64>,
) -> Result<OracleFixedPoints, OracleError> {
    if !ctx.in_box(x) {
        return Err(OracleError::NotInBox(x.to_string()));
    }
    let cands = candidates_below(x).map_err(|_| OracleError::NotInBox(x.to_string()))?;
    let samples = cands
        .par_iter()
        .map(|y| Ok((y.clone(), membership_sample(ctx, x, y, trials, seed, precision)?)))
        .collect::<Result<Vec<_>, OracleError>>()?;
    let accepted: Vec<_> = samples.iter().filter(|(_, s)| s.member).map(|(y, _)| y.clone()).collect();
    let (members, outside_bound) = orbit_union(&accepted, &upper_bound(x));
    Ok(OracleFixedPoints { members, outside_bound, samples })
}
