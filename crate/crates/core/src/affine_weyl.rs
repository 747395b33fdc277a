//! The affine Weyl group `W = S_n ⋉ Z R^v` of type `A_{n-1}`.
//!
//! An element `w = w̄ t^mu` acts on `R^n` by `w(lambda) = w̄(lambda + mu)`,
//! where the permutation moves coordinate `k` to position `w̄(k)`. With
//! this convention `w^{-1}(alpha + k delta) = w̄^{-1}(alpha) + (k + <mu,
//! w̄^{-1} alpha>) delta`. Simple reflections are `s_1..s_{n-1}` (adjacent
//! transpositions) and the affine reflection `s_0`, the reflection in the
//! hyperplane `<lambda, e_1 - e_n> = 1`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::WeylError;
use crate::root_system::{
    affine_root_positive, dominance_leq_star, fundamental_weight, is_dominant, AffineRoot,
    DominantWeight, FiniteRoot,
};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    // 0-based images: coordinate k goes to perm[k].
    perm: Vec<usize>,
    trans: Vec<i64>,
}

/// The image `w(omega_base)` of a vertex of the fundamental alcove.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexImage {
    pub base: usize,
    pub coords: Vec<i64>,
}

impl AffineWeylElement {
    /// Build from a 1-based permutation and a translation summing to zero.
    pub fn new(perm: Vec<usize>, trans: Vec<i64>) -> Result<Self, WeylError> {
        let n = perm.len();
        if n < 2 {
            return Err(WeylError::RankTooSmall(n));
        }
        if trans.len() != n {
            return Err(WeylError::RankMismatch(n, trans.len()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p == 0 || p > n || seen[p - 1] {
                return Err(WeylError::BadPermutation { n, perm });
            }
            seen[p - 1] = true;
        }
        if trans.iter().sum::<i64>() != 0 {
            return Err(WeylError::BadTranslation(trans));
        }
        Ok(AffineWeylElement { perm: perm.iter().map(|p| p - 1).collect(), trans })
    }

    pub fn identity(n: usize) -> Self {
        AffineWeylElement { perm: (0..n).collect(), trans: vec![0; n] }
    }

    pub fn translation(mu: Vec<i64>) -> Result<Self, WeylError> {
        let n = mu.len();
        Self::new((1..=n).collect(), mu)
    }

    /// Finite permutation with zero translation (1-based images).
    pub fn finite(perm: Vec<usize>) -> Result<Self, WeylError> {
        let n = perm.len();
        Self::new(perm, vec![0; n])
    }

    /// Simple reflection `s_i`, `0 <= i < n`.
    pub fn simple(n: usize, i: usize) -> Result<Self, WeylError> {
        if n < 2 {
            return Err(WeylError::RankTooSmall(n));
        }
        if i >= n {
            return Err(WeylError::BadSimpleIndex { n, i });
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut trans = vec![0; n];
        if i == 0 {
            perm.swap(0, n - 1);
            trans[0] = -1;
            trans[n - 1] = 1;
        } else {
            perm.swap(i - 1, i);
        }
        Ok(AffineWeylElement { perm, trans })
    }

    pub fn from_word(n: usize, word: &[usize]) -> Result<Self, WeylError> {
        let mut w = Self::identity(n);
        for &i in word {
            w = w.multiply(&Self::simple(n, i)?)?;
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// 1-based permutation images `w̄(1), ..., w̄(n)`.
    pub fn perm(&self) -> Vec<usize> {
        self.perm.iter().map(|p| p + 1).collect()
    }

    pub fn trans(&self) -> &[i64] {
        &self.trans
    }

    /// 0-based image of coordinate `k` under the finite part.
    pub fn perm_image(&self, k: usize) -> usize {
        self.perm[k]
    }

    pub fn is_identity(&self) -> bool {
        self.trans.iter().all(|&t| t == 0) && self.perm.iter().enumerate().all(|(k, &p)| k == p)
    }

    pub fn is_finite(&self) -> bool {
        self.trans.iter().all(|&t| t == 0)
    }

    /// `(w̄ t^mu)(v̄ t^nu) = (w̄ v̄) t^{v̄^{-1}(mu) + nu}`.
    pub fn multiply(&self, other: &Self) -> Result<Self, WeylError> {
        let n = self.rank();
        if other.rank() != n {
            return Err(WeylError::RankMismatch(n, other.rank()));
        }
        let perm = (0..n).map(|k| self.perm[other.perm[k]]).collect();
        let trans = (0..n).map(|k| self.trans[other.perm[k]] + other.trans[k]).collect();
        Ok(AffineWeylElement { perm, trans })
    }

    pub fn inverse(&self) -> Self {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut trans = vec![0; n];
        for k in 0..n {
            perm[self.perm[k]] = k;
            trans[self.perm[k]] = -self.trans[k];
        }
        AffineWeylElement { perm, trans }
    }

    /// `w(v) = w̄(v + mu)`.
    pub fn act_on_vertex(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for k in 0..self.rank() {
            out[self.perm[k]] = v[k] + self.trans[k];
        }
        out
    }

    pub fn vertex_image(&self, p: usize) -> VertexImage {
        VertexImage { base: p, coords: self.act_on_vertex(&fundamental_weight(self.rank(), p)) }
    }

    /// The images `w(omega_0), ..., w(omega_{n-1})` of the vertices of `A_0`.
    pub fn vertices(&self) -> Vec<Vec<i64>> {
        (0..self.rank()).map(|p| self.vertex_image(p).coords).collect()
    }

    /// `w(alpha + k delta) = w̄(alpha) + (k - <mu, alpha>) delta`.
    pub fn act_on_affine_root(&self, r: &AffineRoot) -> AffineRoot {
        let shift = self.trans[r.root.i - 1] - self.trans[r.root.j - 1];
        AffineRoot {
            root: FiniteRoot { i: self.perm[r.root.i - 1] + 1, j: self.perm[r.root.j - 1] + 1 },
            level: r.level - shift,
        }
    }

    pub fn length(&self) -> usize {
        let n = self.rank() as i64;
        // A generic interior point of A_0, scaled by n so it is integral.
        let p0: Vec<i64> = (0..n).map(|k| n - 1 - k).collect();
        let mut q = vec![0; self.rank()];
        for k in 0..self.rank() {
            q[self.perm[k]] = p0[k] + n * self.trans[k];
        }
        let mut len = 0;
        for i in 0..q.len() {
            for j in i + 1..q.len() {
                len += (q[i] - q[j]).div_euclid(n).unsigned_abs() as usize;
            }
        }
        len
    }

    fn times_simple(&self, i: usize) -> Self {
        self.multiply(&Self::simple(self.rank(), i).expect("valid index")).expect("same rank")
    }

    /// Greedy right-descent reduced word; the product of the word is `w`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.rank();
        let mut w = self.clone();
        let mut len = w.length();
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            let (i, ws) = (0..n)
                .map(|i| (i, w.times_simple(i)))
                .find(|(_, ws)| ws.length() < len)
                .expect("a nontrivial element has a right descent");
            word.push(i);
            w = ws;
            len -= 1;
        }
        word.reverse();
        word
    }

    /// `w^{-1}(alpha_i) > 0` for every finite simple root.
    pub fn is_min_coset_rep(&self) -> bool {
        let inv = self.inverse();
        (1..self.rank()).all(|i| {
            let a = AffineRoot::new(FiniteRoot { i, j: i + 1 }, 0);
            affine_root_positive(&inv.act_on_affine_root(&a))
        })
    }

    /// Every vertex of `wA_0` lies in the dominant chamber.
    pub fn is_min_coset_rep_by_vertices(&self) -> bool {
        self.vertices().iter().all(|v| is_dominant(v))
    }

    /// Minimal representative and `w^{-1}(delta - alpha_i) > 0` for all `i`.
    pub fn in_fundamental_box(&self) -> bool {
        if !self.is_min_coset_rep() {
            return false;
        }
        let inv = self.inverse();
        (1..self.rank()).all(|i| {
            let a = AffineRoot::new(FiniteRoot { i: i + 1, j: i }, 1);
            affine_root_positive(&inv.act_on_affine_root(&a))
        })
    }

    /// All vertices satisfy `0 <= <v, alpha_i> <= 1`.
    pub fn in_fundamental_box_by_vertices(&self) -> bool {
        self.vertices()
            .iter()
            .all(|v| v.windows(2).all(|p| (0..=1).contains(&(p[0] - p[1]))))
    }

    /// Decompose `w = z y` with `z` finite and `y` a minimal representative.
    pub fn min_coset_decomposition(&self) -> (Self, Self) {
        let n = self.rank();
        for perm in permutations(n) {
            let z = AffineWeylElement { perm, trans: vec![0; n] };
            let y = z.inverse().multiply(self).expect("same rank");
            if y.is_min_coset_rep() {
                return (z, y);
            }
        }
        unreachable!("every coset has a minimal representative")
    }

    /// Dimension of `t^{-1} ^w b ∩ g(O) / ^w b ∩ g(O)`: the number of roots
    /// `alpha` whose lowest level in `^w b` is at least one.
    pub fn component_dimension(&self) -> usize {
        let n = self.rank();
        let inv = self.inverse();
        let mut count = 0;
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let img = inv.act_on_affine_root(&AffineRoot::new(FiniteRoot { i, j }, 0));
                let lowest = -img.level + if img.root.is_positive() { 0 } else { 1 };
                if lowest >= 1 {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        let t: Vec<String> = self.trans.iter().map(|t| t.to_string()).collect();
        write!(f, "perm=[{}];trans=[{}]", p.join(","), t.join(","))
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, text: &str) -> Result<Vec<T>, WeylError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| WeylError::Parse(text.to_string()))?;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| WeylError::Parse(text.to_string())))
        .collect()
}

/// Parse either the canonical encoding or a word such as `"s0 s1 s0"`.
/// The empty string and `"e"` denote the identity.
pub fn parse_element(n: usize, text: &str) -> Result<AffineWeylElement, WeylError> {
    let t = text.trim();
    if t.starts_with("perm=") {
        let (p, tr) = t.split_once(';').ok_or_else(|| WeylError::Parse(text.to_string()))?;
        let perm = parse_list(&p["perm=".len()..], text)?;
        let trans = parse_list(
            tr.trim().strip_prefix("trans=").ok_or_else(|| WeylError::Parse(text.to_string()))?,
            text,
        )?;
        let w = AffineWeylElement::new(perm, trans)?;
        if w.rank() != n {
            return Err(WeylError::RankMismatch(n, w.rank()));
        }
        return Ok(w);
    }
    if t.is_empty() || t == "e" {
        return Ok(AffineWeylElement::identity(n));
    }
    let word = t
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.strip_prefix('s')
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| WeylError::Parse(text.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    AffineWeylElement::from_word(n, &word)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// The finite Weyl group as affine elements.
pub fn finite_weyl_group(n: usize) -> Vec<AffineWeylElement> {
    permutations(n)
        .into_iter()
        .map(|perm| AffineWeylElement { perm, trans: vec![0; n] })
        .collect()
}

/// The longest element of the finite Weyl group.
pub fn w0(n: usize) -> AffineWeylElement {
    AffineWeylElement { perm: (0..n).rev().collect(), trans: vec![0; n] }
}

/// Subword criterion: walk a reduced word of `w` from the right, peeling
/// off `s` from `y` whenever `s` is a descent of `y`. `y <= w` iff the walk
/// ends at the identity.
pub fn bruhat_leq(y: &AffineWeylElement, w: &AffineWeylElement) -> Result<bool, WeylError> {
    if y.rank() != w.rank() {
        return Err(WeylError::RankMismatch(y.rank(), w.rank()));
    }
    let mut ly = y.length();
    let lw = w.length();
    if ly > lw {
        return Ok(false);
    }
    let mut y = y.clone();
    for &s in w.reduced_word().iter().rev() {
        if ly == 0 {
            break;
        }
        let ys = y.times_simple(s);
        let l = ys.length();
        if l < ly {
            y = ys;
            ly = l;
        }
    }
    Ok(ly == 0)
}

/// Vertex criterion on minimal representatives: `y <= w` iff
/// `y(omega_p) <= w(omega_p)` in dominance order for every vertex.
pub fn bruhat_leq_fw(y: &AffineWeylElement, w: &AffineWeylElement) -> Result<bool, WeylError> {
    if y.rank() != w.rank() {
        return Err(WeylError::RankMismatch(y.rank(), w.rank()));
    }
    for e in [y, w] {
        if !e.is_min_coset_rep() {
            return Err(WeylError::NotMinimal(e.to_string()));
        }
    }
    for (a, b) in y.vertices().into_iter().zip(w.vertices()) {
        let a = DominantWeight::new(a).expect("vertex of a minimal representative");
        let b = DominantWeight::new(b).expect("vertex of a minimal representative");
        if !dominance_leq_star(&a, &b).expect("equal lengths") {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All `y <= w`, as products of subwords of a reduced word of `w`.
pub fn bruhat_interval_below(w: &AffineWeylElement) -> Vec<AffineWeylElement> {
    let n = w.rank();
    let mut set: HashSet<AffineWeylElement> = HashSet::from([AffineWeylElement::identity(n)]);
    for s in w.reduced_word() {
        let next: Vec<_> = set.iter().map(|y| y.times_simple(s)).collect();
        set.extend(next);
    }
    let mut out: Vec<_> = set.into_iter().collect();
    out.sort_by_key(|e| (e.length(), e.clone()));
    out
}

/// All elements of length at most `max_len`, by breadth-first search.
pub fn elements_up_to_length(n: usize, max_len: usize) -> Vec<AffineWeylElement> {
    let id = AffineWeylElement::identity(n);
    let mut seen: HashSet<AffineWeylElement> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([(id, 0usize)]);
    while let Some((w, l)) = queue.pop_front() {
        if l == max_len {
            continue;
        }
        for i in 0..n {
            let ws = w.times_simple(i);
            if !seen.contains(&ws) && ws.length() == l + 1 {
                seen.insert(ws.clone());
                queue.push_back((ws, l + 1));
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by_key(|e| (e.length(), e.clone()));
    out
}

/// All elements whose translation coordinates lie in `[-c, c]`.
pub fn elements_in_window(n: usize, c: i64) -> Vec<AffineWeylElement> {
    let mut translations = vec![vec![]];
    for _ in 0..n - 1 {
        translations = translations
            .into_iter()
            .flat_map(|t: Vec<i64>| {
                (-c..=c).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    let mut out = vec![];
    for mut t in translations {
        let last = -t.iter().sum::<i64>();
        if last.abs() > c {
            continue;
        }
        t.push(last);
        for perm in permutations(n) {
            out.push(AffineWeylElement { perm, trans: t.clone() });
        }
    }
    out
}

/// Fundamental box elements found in the window `[-c, c]`.
pub fn enumerate_f_window(n: usize, c: i64) -> Vec<AffineWeylElement> {
    let mut out: Vec<_> = elements_in_window(n, c)
        .into_iter()
        .filter(|w| w.in_fundamental_box())
        .collect();
    out.sort_by_key(|e| (e.length(), e.clone()));
    out
}

/// Result of the windowed scan for the fundamental box.
#[derive(Debug, Clone)]
pub struct BoxEnumeration {
    pub elements: Vec<AffineWeylElement>,
    /// Window half-widths scanned, last one included.
    pub windows: Vec<i64>,
}

/// Scan windows `c = 2, 4, 8, ...` until the answer is unchanged twice.
pub fn enumerate_f_stable(n: usize) -> Result<BoxEnumeration, WeylError> {
    if n < 2 {
        return Err(WeylError::RankTooSmall(n));
    }
    let mut c = 2;
    let mut windows = vec![c];
    let mut last = enumerate_f_window(n, c);
    let mut stable = 0;
    while stable < 2 {
        c *= 2;
        windows.push(c);
        let next = enumerate_f_window(n, c);
        if next == last {
            stable += 1;
        } else {
            stable = 0;
        }
        last = next;
    }
    Ok(BoxEnumeration { elements: last, windows })
}

pub fn enumerate_f(n: usize) -> Result<Vec<AffineWeylElement>, WeylError> {
    Ok(enumerate_f_stable(n)?.elements)
}

/// The unique longest element `w_F` of the fundamental box, checked to
/// factor every `x` in the box as `w_F = x z` with additive lengths.
pub fn longest_box_element(n: usize) -> Result<AffineWeylElement, WeylError> {
    let f = enumerate_f(n)?;
    longest_of(n, &f)
}

pub fn longest_of(n: usize, f: &[AffineWeylElement]) -> Result<AffineWeylElement, WeylError> {
    let max = f.iter().map(|w| w.length()).max().unwrap_or(0);
    let top: Vec<_> = f.iter().filter(|w| w.length() == max).collect();
    if top.len() != 1 {
        return Err(WeylError::LongestNotUnique(n));
    }
    let wf = top[0].clone();
    for x in f {
        let z = x.inverse().multiply(&wf)?;
        if x.length() + z.length() != max {
            return Err(WeylError::FactorizationFails(x.to_string()));
        }
    }
    Ok(wf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, i: usize) -> AffineWeylElement {
        AffineWeylElement::simple(n, i).unwrap()
    }

    #[test]
    fn group_law() {
        let a = parse_element(3, "s0 s1 s2").unwrap();
        assert!(a.multiply(&a.inverse()).unwrap().is_identity());
        let t1 = AffineWeylElement::translation(vec![1, -1, 0]).unwrap();
        let t2 = AffineWeylElement::translation(vec![0, 2, -2]).unwrap();
        assert_eq!(t1.multiply(&t2).unwrap().trans(), &[1, 1, -2]);
        assert!(s(3, 0).multiply(&s(3, 0)).unwrap().is_identity());
    }

    #[test]
    fn vertex_action() {
        let t = AffineWeylElement::translation(vec![1, -1]).unwrap();
        assert_eq!(t.act_on_vertex(&[0, 0]), vec![1, -1]);
        assert_eq!(s(2, 1).act_on_vertex(&[1, 0]), vec![0, 1]);
        // s_0 reflects in <lambda, e_1 - e_n> = 1.
        assert_eq!(s(3, 0).act_on_vertex(&[0, 0, 0]), vec![1, 0, -1]);
    }

    #[test]
    fn affine_root_action_example() {
        let t = AffineWeylElement::translation(vec![1, -1]).unwrap();
        let r = AffineRoot::new(FiniteRoot { i: 1, j: 2 }, 0);
        let img = t.inverse().act_on_affine_root(&r);
        assert_eq!(img, AffineRoot::new(FiniteRoot { i: 1, j: 2 }, 2));
    }

    #[test]
    fn lengths() {
        assert_eq!(AffineWeylElement::identity(3).length(), 0);
        for i in 0..3 {
            assert_eq!(s(3, i).length(), 1);
        }
        assert_eq!(AffineWeylElement::translation(vec![1, -1]).unwrap().length(), 2);
    }

    #[test]
    fn reduced_words() {
        assert!(AffineWeylElement::identity(3).reduced_word().is_empty());
        assert_eq!(s(3, 2).reduced_word(), vec![2]);
        let w = parse_element(3, "s0 s1 s2 s1 s0").unwrap();
        let word = w.reduced_word();
        assert_eq!(word.len(), w.length());
        assert_eq!(AffineWeylElement::from_word(3, &word).unwrap(), w);
    }

    #[test]
    fn bruhat_small() {
        let e = AffineWeylElement::identity(2);
        assert!(bruhat_leq(&e, &s(2, 0)).unwrap());
        assert!(bruhat_leq(&s(2, 0), &s(2, 0)).unwrap());
        assert!(!bruhat_leq(&s(2, 0), &s(2, 1)).unwrap());
    }

    #[test]
    fn min_coset() {
        assert!(AffineWeylElement::identity(3).is_min_coset_rep());
        assert!(!s(3, 1).is_min_coset_rep());
        assert!(!s(3, 2).is_min_coset_rep());
        assert!(s(3, 0).is_min_coset_rep());
        let w = parse_element(3, "s1 s0 s2").unwrap();
        let (z, y) = w.min_coset_decomposition();
        assert!(z.is_finite() && y.is_min_coset_rep());
        assert_eq!(z.multiply(&y).unwrap(), w);
    }

    #[test]
    fn bruhat_fw_rejects_non_minimal() {
        let e = AffineWeylElement::identity(3);
        assert!(bruhat_leq_fw(&s(3, 1), &e).is_err());
    }

    #[test]
    fn box_small_ranks() {
        assert_eq!(enumerate_f(2).unwrap(), vec![AffineWeylElement::identity(2)]);
        let f3 = enumerate_f(3).unwrap();
        assert_eq!(f3, vec![AffineWeylElement::identity(3), s(3, 0)]);
        assert_eq!(longest_box_element(2).unwrap(), AffineWeylElement::identity(2));
        assert_eq!(longest_box_element(3).unwrap(), s(3, 0));
    }

    #[test]
    fn longest_finite() {
        assert_eq!(w0(2).perm(), vec![2, 1]);
        assert_eq!(w0(3).perm(), vec![3, 2, 1]);
        assert!(w0(4).multiply(&w0(4)).unwrap().is_identity());
        assert_eq!(w0(4).length(), 6);
    }

    #[test]
    fn intervals() {
        assert_eq!(bruhat_interval_below(&AffineWeylElement::identity(3)).len(), 1);
        assert_eq!(bruhat_interval_below(&s(2, 1)).len(), 2);
        assert_eq!(bruhat_interval_below(&w0(3)).len(), 6);
    }

    #[test]
    fn parse_round_trip() {
        let w = parse_element(3, "s0 s1").unwrap();
        let text = w.to_string();
        assert_eq!(parse_element(3, &text).unwrap(), w);
        assert_eq!(parse_element(2, "perm=[2,1];trans=[0,0]").unwrap(), s(2, 1));
        assert!(parse_element(2, "perm=[2,2];trans=[0,0]").is_err());
        assert!(parse_element(2, "perm=[1,2];trans=[1,0]").is_err());
        assert!(parse_element(2, "s5").is_err());
    }

    #[test]
    fn dimension_is_number_of_positive_roots() {
        for w in elements_up_to_length(3, 5) {
            assert_eq!(w.component_dimension(), 3);
        }
    }
}
