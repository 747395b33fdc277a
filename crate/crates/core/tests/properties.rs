use num::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use springer_core::affine_weyl::{
    bruhat_leq, bruhat_leq_fw, elements_up_to_length, enumerate_f, enumerate_f_window, finite_weyl_group,
    longest_of, AffineWeylElement,
};
use springer_core::certificate::{
    build_block_matrix, certificate, greedy_submatrices, nonvanishing_verdict, select_rows, square_submatrix,
    ComponentContext, Method, Verdict,
};
use springer_core::exact_algebra::{
    det_cofactor, num_vars, poly_det, random_assignment, rat, rational_det, Poly, PolyMatrix, Rational,
};
use springer_core::root_system::{
    affine_root_positive, dominance_leq_dagger, dominance_leq_star, AffineRoot, DominantWeight, FiniteRoot,
};
use springer_core::springer_matrix::{
    build_m, build_m_inverse, chain_orthogonality, chains, conjugate_ts, unitriangular_inverse,
    weighted_orthogonality, SpectralParameters,
};

fn weight(mut v: Vec<i64>) -> DominantWeight {
    v.sort_unstable_by(|a, b| b.cmp(a));
    DominantWeight::new(v).unwrap()
}

/// Weights of a common length and total, so that comparisons are not
/// decided by the sums alone.
fn same_sum_weights(count: usize) -> impl Strategy<Value = Vec<DominantWeight>> {
    (1usize..=8).prop_flat_map(move |len| {
        proptest::collection::vec(proptest::collection::vec(-5i64..=5, len), count).prop_map(|vs| {
            let target: i64 = vs[0].iter().sum();
            vs.into_iter()
                .map(|mut v| {
                    let d = target - v.iter().sum::<i64>();
                    v[0] += d;
                    weight(v)
                })
                .collect()
        })
    })
}

fn word(n: usize, max: usize) -> impl Strategy<Value = AffineWeylElement> {
    proptest::collection::vec(0..n, 0..=max).prop_map(move |w| AffineWeylElement::from_word(n, &w).unwrap())
}

fn affine_root(n: usize) -> impl Strategy<Value = AffineRoot> {
    (1..=n, 1..=n, -6i64..=6)
        .prop_filter("distinct", |(i, j, _)| i != j)
        .prop_map(|(i, j, k)| AffineRoot::new(FiniteRoot { i, j }, k))
}

fn random_poly(n: usize, seed: u64) -> Poly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_assignment(n, &mut rng, 3);
    let mut p = Poly::constant(n, rat(seed as i64 % 5 - 2));
    for ((j, i), c) in a {
        if (j + i + seed as usize) % 2 == 0 {
            p = &p + &Poly::var(n, j, i).scale(&c);
        }
    }
    p
}

fn random_poly_matrix(n: usize, dim: usize, seed: u64) -> PolyMatrix {
    let rows = (0..dim)
        .map(|r| (0..dim).map(|c| random_poly(n, seed.wrapping_mul(31).wrapping_add((r * dim + c) as u64))).collect())
        .collect();
    PolyMatrix::from_rows(n, rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dominance_forms_agree(ws in same_sum_weights(2)) {
        prop_assert_eq!(dominance_leq_star(&ws[0], &ws[1]).unwrap(), dominance_leq_dagger(&ws[0], &ws[1]).unwrap());
    }

    #[test]
    fn dominance_is_partial_order(ws in same_sum_weights(3)) {
        let le = |a: &DominantWeight, b: &DominantWeight| dominance_leq_star(a, b).unwrap();
        prop_assert!(le(&ws[0], &ws[0]));
        if le(&ws[0], &ws[1]) && le(&ws[1], &ws[0]) {
            prop_assert_eq!(&ws[0], &ws[1]);
        }
        if le(&ws[0], &ws[1]) && le(&ws[1], &ws[2]) {
            prop_assert!(le(&ws[0], &ws[2]));
        }
    }

    #[test]
    fn affine_roots_have_one_sign(r in affine_root(4)) {
        prop_assert!(affine_root_positive(&r) ^ affine_root_positive(&r.negate()));
    }

    #[test]
    fn root_action_is_a_group_action(a in word(3, 8), b in word(3, 8), r in affine_root(3)) {
        let ab = a.multiply(&b).unwrap();
        prop_assert_eq!(ab.act_on_affine_root(&r), a.act_on_affine_root(&b.act_on_affine_root(&r)));
    }

    #[test]
    fn length_is_subadditive(a in word(3, 8), b in word(3, 8)) {
        let ab = a.multiply(&b).unwrap();
        prop_assert!(ab.length() <= a.length() + b.length());
        prop_assert_eq!(a.reduced_word().len(), a.length());
        prop_assert_eq!(AffineWeylElement::from_word(3, &a.reduced_word()).unwrap(), a);
    }

    #[test]
    fn coset_criteria_agree(w in word(3, 8)) {
        prop_assert_eq!(w.is_min_coset_rep(), w.is_min_coset_rep_by_vertices());
        prop_assert_eq!(w.in_fundamental_box(), w.in_fundamental_box_by_vertices());
    }

    #[test]
    fn bruhat_criteria_agree(y in word(3, 8), w in word(3, 8)) {
        let (_, y) = y.min_coset_decomposition();
        let (_, w) = w.min_coset_decomposition();
        prop_assert_eq!(bruhat_leq(&y, &w).unwrap(), bruhat_leq_fw(&y, &w).unwrap());
    }

    #[test]
    fn bareiss_matches_cofactor(dim in 1usize..=4, seed in any::<u64>()) {
        let m = random_poly_matrix(3, dim, seed);
        prop_assert_eq!(poly_det(&m).unwrap(), det_cofactor(&m).unwrap());
    }

    #[test]
    fn determinant_commutes_with_evaluation(dim in 1usize..=5, seed in any::<u64>()) {
        let m = random_poly_matrix(3, dim, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let a = random_assignment(3, &mut rng, 1000);
        prop_assert_eq!(poly_det(&m).unwrap().eval_at(&a).unwrap(), rational_det(&m.eval_at(&a).unwrap()));
    }

    #[test]
    fn block_triangular_determinant_factors(d1 in 1usize..=3, d2 in 1usize..=3, seed in any::<u64>()) {
        let top = random_poly_matrix(3, d1, seed);
        let bottom = random_poly_matrix(3, d2, seed.wrapping_add(1));
        let below = random_poly_matrix(3, d1 + d2, seed.wrapping_add(2));
        let mut m = PolyMatrix::zero(3, d1 + d2, d1 + d2);
        for r in 0..d1 + d2 {
            for c in 0..d1 + d2 {
                let v = if r < d1 && c < d1 {
                    top.get(r, c).clone()
                } else if r >= d1 && c >= d1 {
                    bottom.get(r - d1, c - d1).clone()
                } else if r >= d1 {
                    below.get(r, c).clone()
                } else {
                    Poly::zero(3)
                };
                m.set(r, c, v);
            }
        }
        let prod = &poly_det(&top).unwrap() * &poly_det(&bottom).unwrap();
        prop_assert_eq!(poly_det(&m).unwrap(), prod);
    }

    #[test]
    fn orthogonality_on_random_parameters(seed in any::<u64>(), k in 1usize..=6) {
        let s = SpectralParameters::random(7, seed);
        for ch in chains(1, k) {
            let expect = if ch.len() == 1 { Rational::one() } else { Rational::zero() };
            prop_assert_eq!(chain_orthogonality(&ch, &s), expect);
            if ch.len() > 2 {
                prop_assert!(weighted_orthogonality(&ch, &s).is_zero());
            }
        }
    }
}

#[test]
fn f_window_is_stable() {
    for n in 2..=4 {
        let a = enumerate_f_window(n, 4);
        let b = enumerate_f_window(n, 8);
        assert_eq!(a, b);
        assert_eq!(a, enumerate_f(n).unwrap());
    }
}

#[test]
fn box_factorizations_are_length_additive() {
    for n in 2..=4 {
        let f = enumerate_f(n).unwrap();
        let wf = longest_of(n, &f).unwrap();
        for x in &f {
            let z = x.inverse().multiply(&wf).unwrap();
            assert_eq!(wf.length(), x.length() + z.length(), "x={x}");
        }
    }
}

#[test]
fn inverse_matches_generic_inversion() {
    for n in 2..=4 {
        for seed in 0..3 {
            let s = SpectralParameters::random(n, seed);
            for w in enumerate_f(n).unwrap() {
                let m = build_m(&w, &s).unwrap();
                let closed = build_m_inverse(&w, &s).unwrap();
                assert_eq!(closed.entries, unitriangular_inverse(&m.entries).unwrap(), "w={w}");
            }
        }
    }
}

#[test]
fn conjugation_lands_in_the_iwahori() {
    for n in 2..=4 {
        let s = SpectralParameters::random(n, 17);
        for w in enumerate_f(n).unwrap() {
            let prec = build_m(&w, &s).unwrap().precision();
            conjugate_ts(&w, &s, prec).unwrap();
        }
    }
}

#[test]
fn entry_degrees_follow_chains() {
    for n in 2..=4 {
        let s = SpectralParameters::default_for(n);
        for w in enumerate_f(n).unwrap() {
            let m = build_m(&w, &s).unwrap();
            for j in 1..=n {
                for i in 1..=j {
                    for (e, p) in m.entries.get(j - 1, i - 1).terms() {
                        for (mono, _) in p.terms() {
                            let vars = mono.triples(n);
                            let texp: i64 = vars.iter().map(|[a, b, k]| m.exponents.get(*a, *b) * *k as i64).sum();
                            assert_eq!(texp, e);
                            // A chain from i to j uses each step once.
                            assert!(vars.iter().all(|t| t[2] == 1));
                            assert!(mono.degree() as usize <= j - i);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn variable_count_is_flag_dimension() {
    for n in 2..=6 {
        assert_eq!(num_vars(n), n * (n - 1) / 2);
        for x in enumerate_f(n.min(4)).unwrap() {
            assert_eq!(x.component_dimension(), num_vars(x.rank()));
        }
    }
}

#[test]
fn row_selection_matches_bruhat() {
    let n = 3;
    let fw: Vec<_> = elements_up_to_length(n, 7).into_iter().filter(|w| w.is_min_coset_rep()).collect();
    for x in fw.iter().filter(|x| x.length() <= 5) {
        for y in fw.iter().filter(|y| y.length() <= x.length() + 2) {
            let all = (0..n).all(|i| select_rows(x, y, i).is_ok());
            assert_eq!(all, bruhat_leq_fw(y, x).unwrap(), "x={x} y={y}");
        }
    }
}

#[test]
fn methods_are_monotone() {
    for n in [3, 4] {
        let ctx = ComponentContext::with_default(n).unwrap();
        for x in ctx.box_elements.clone() {
            for y in elements_up_to_length(n, x.length()).into_iter().filter(|y| y.is_min_coset_rep()) {
                for i in 0..n {
                    let c = nonvanishing_verdict(&ctx, &x, &y, i, Method::Certificate, 0, 5).unwrap();
                    let s = nonvanishing_verdict(&ctx, &x, &y, i, Method::Symbolic, 0, 5).unwrap();
                    let r = nonvanishing_verdict(&ctx, &x, &y, i, Method::Randomized, 0, 5).unwrap();
                    if c.verdict == Verdict::NonZero {
                        assert_eq!(s.verdict, Verdict::NonZero, "x={x} y={y} i={i}");
                    }
                    if s.verdict == Verdict::NonZero {
                        assert_eq!(r.verdict, Verdict::NonZero, "x={x} y={y} i={i}");
                        // Schwartz-Zippel: a nonzero det vanishes on at most deg/2001 of the samples.
                        if let Some(d) = r.degree_bound {
                            assert!((d as i64) < 2001);
                        }
                    }
                    if s.verdict == Verdict::IdenticallyZero {
                        assert_ne!(r.verdict, Verdict::NonZero);
                    }
                }
            }
        }
    }
}

#[test]
fn equal_prefix_counts_split_the_determinant() {
    let mut split = 0;
    for n in [3, 4] {
        let ctx = ComponentContext::with_default(n).unwrap();
        for x in ctx.box_elements.clone() {
            for y in elements_up_to_length(n, x.length()).into_iter().filter(|y| y.is_min_coset_rep()) {
                for i in 0..n {
                    let Ok(rows) = select_rows(&x, &y, i) else { continue };
                    let st = build_block_matrix(&ctx, &x, i).unwrap().structure;
                    let m = square_submatrix(&ctx, &x, &y, i).unwrap();
                    let det = poly_det(&m).unwrap();
                    let (mut r, mut c) = (0, 0);
                    for l in 0..st.levels().saturating_sub(1) {
                        r += rows.counts[l];
                        c += st.j[l];
                        if r != c || r == 0 || r == m.rows() {
                            continue;
                        }
                        let head: Vec<usize> = (0..r).collect();
                        let tail: Vec<usize> = (r..m.rows()).collect();
                        let prod = &poly_det(&m.submatrix(&head, &head)).unwrap()
                            * &poly_det(&m.submatrix(&tail, &tail)).unwrap();
                        assert_eq!(det, prod, "x={x} y={y} i={i} level={l}");
                        split += 1;
                    }
                }
            }
        }
    }
    assert!(split > 0);
}

#[test]
fn certificate_coefficients_match_extraction() {
    for n in [3, 4] {
        let ctx = ComponentContext::with_default(n).unwrap();
        for x in ctx.box_elements.clone() {
            for y in elements_up_to_length(n, x.length()).into_iter().filter(|y| y.is_min_coset_rep()) {
                for i in 0..n {
                    let Ok(sel) = greedy_submatrices(&x, &y, i) else { continue };
                    let Ok(cert) = certificate(&sel, &ctx.s) else { continue };
                    let det = poly_det(&square_submatrix(&ctx, &x, &y, i).unwrap()).unwrap();
                    assert_eq!(det.coefficient_of(&cert.monomial), cert.coefficient, "x={x} y={y} i={i}");
                    assert!(!cert.coefficient.is_zero());
                }
            }
        }
    }
}

#[test]
fn weyl_orbit_is_closed_under_products() {
    let g = finite_weyl_group(3);
    for a in &g {
        for b in &g {
            assert!(g.contains(&a.multiply(b).unwrap()));
        }
    }
}
