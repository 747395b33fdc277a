use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use springer_core::affine_weyl::{elements_up_to_length, enumerate_f, finite_weyl_group, AffineWeylElement};
use springer_core::certificate::{candidates_below, upper_bound, ComponentContext};
use springer_core::exact_algebra::random_assignment;
use springer_core::oracle::{
    default_precision, fixed_point_chain, in_attracting_nbhd, lattice_chain_from_a, lattice_chain_mx,
    membership_sample, orbit_closure_fixed_points, required_precision,
};
use springer_core::springer_matrix::SpectralParameters;

#[test]
fn neighbourhoods_hold_one_fixed_point() {
    for n in [2, 3] {
        let pool = elements_up_to_length(n, if n == 2 { 4 } else { 3 });
        for z in &pool {
            for y in &pool {
                let p = required_precision(z, Some(y));
                let chain = fixed_point_chain(z, p).unwrap();
                assert_eq!(in_attracting_nbhd(&chain, y).unwrap(), z == y, "z={z} y={y}");
            }
        }
    }
}

#[test]
fn chains_are_nested() {
    let ctx = ComponentContext::with_default(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for x in &ctx.box_elements {
        for _ in 0..3 {
            let a = random_assignment(3, &mut rng, 1000);
            let chain = lattice_chain_from_a(&ctx, x, &a, None).unwrap();
            assert!(chain.containments_hold(), "{x}");
        }
    }
}

#[test]
fn outside_the_bound_never_sampled() {
    let ctx = ComponentContext::with_default(3).unwrap();
    for x in &ctx.box_elements {
        let bound = orbit_closure_fixed_points(x);
        for y in elements_up_to_length(3, x.length() + 2) {
            if y.is_min_coset_rep() && !bound.contains(&y) {
                assert!(!membership_sample(&ctx, x, &y, 3, 5, None).unwrap().member, "x={x} y={y}");
            }
        }
    }
}

#[test]
fn fallback_matrix_agrees() {
    let ctx = ComponentContext::with_default(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for x in &ctx.box_elements {
        for y in candidates_below(x).unwrap() {
            let a = random_assignment(3, &mut rng, 1000);
            let p = default_precision(x).max(required_precision(x, Some(&y)));
            let primary = in_attracting_nbhd(&lattice_chain_from_a(&ctx, x, &a, Some(p)).unwrap(), &y).unwrap();
            let fallback = in_attracting_nbhd(&lattice_chain_mx(&ctx.s, x, &a, p).unwrap(), &y).unwrap();
            assert!(primary, "x={x} y={y}");
            assert_eq!(primary, fallback, "x={x} y={y}");
        }
    }
}

#[test]
fn weyl_translates_rank_two() {
    let ctx = ComponentContext::with_default(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let x = AffineWeylElement::identity(2);
    for y in upper_bound(&x) {
        for z in finite_weyl_group(2) {
            let a = random_assignment(2, &mut rng, 1000);
            let p = 4;
            let chain = lattice_chain_from_a(&ctx, &x, &a, Some(p)).unwrap();
            let zy = z.multiply(&y).unwrap();
            assert_eq!(
                in_attracting_nbhd(&chain, &y).unwrap(),
                in_attracting_nbhd(&chain.permuted(&z), &zy).unwrap()
            );
        }
    }
    // Conjugated spectral parameters give the same fixed points.
    for z in finite_weyl_group(2) {
        let s = SpectralParameters::default_for(2).permuted(&z);
        let ctx_z = ComponentContext::new(2, s).unwrap();
        for y in candidates_below(&x).unwrap() {
            assert!(membership_sample(&ctx_z, &x, &y, 2, 1, None).unwrap().member);
        }
    }
}

#[test]
fn doubling_precision_is_stable() {
    for n in [2, 3] {
        let ctx = ComponentContext::with_default(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for x in enumerate_f(n).unwrap() {
            let a = random_assignment(n, &mut rng, 1000);
            let chain = lattice_chain_from_a(&ctx, &x, &a, None).unwrap();
            let wide = chain.at_precision(2 * chain.precision);
            for y in upper_bound(&x) {
                assert_eq!(chain.verdict_at(&y), wide.verdict_at(&y), "x={x} y={y}");
            }
        }
    }
}
