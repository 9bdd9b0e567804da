use hfmotive_core::grchow::{
    chern_sym_power, class_xi, gr_integrate, gr_mul, sym_power_chern_roots, GrClass, GrContext, IntegrationMode,
};
use hfmotive_core::motive::{analyze, TripleParams};
use hfmotive_core::ppchow::{geom_series_inverse, pp_mul, PPClass};
use hfmotive_core::symcore::{
    alternant_integrate, generator, lr_mul, partitions_in_box, schur_expand, schur_to_poly, schur_vector_to_poly,
    GeneratorKind, MonomialSymPoly, Partition, Rect, SchurVector,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// A random combination of Schur classes of weight `w` inside `rect`.
fn random_vector(rng: &mut StdRng, w: u32, rect: Rect) -> SchurVector {
    let basis = partitions_in_box(w, rect.rows, rect.cols);
    let mut x = SchurVector::zero();
    for p in basis {
        if rng.gen_bool(0.6) {
            x.add_term(p, BigInt::from(rng.gen_range(-9i64..=9)));
        }
    }
    x
}

fn random_class(rng: &mut StdRng, ctx: GrContext, w: u32) -> GrClass {
    GrClass::homogeneous(ctx, random_vector(rng, w, ctx.rect()), i64::from(w)).unwrap()
}

fn random_perm(rng: &mut StdRng, v: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..v).collect();
    p.shuffle(rng);
    p
}

fn assert_invariant(p: &MonomialSymPoly, rng: &mut StdRng) {
    let perm = random_perm(rng, p.vars());
    assert_eq!(&p.permute(&perm).unwrap(), p, "not invariant under {perm:?}");
}

/// `(kappa, n)` with `kappa <= 3` and `n <= 8`.
fn grassmannian() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=3).prop_flat_map(|k| (Just(k), (k + 1)..=8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lr_product_matches_alternant_oracle((kappa, n) in grassmannian(), split in 0.0f64..=1.0, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ctx = GrContext::new(n, kappa).unwrap();
        let rect = ctx.rect();
        let w1 = (f64::from(ctx.dim()) * split).round() as u32;
        let x = random_vector(&mut rng, w1, rect);
        let y = random_vector(&mut rng, ctx.dim() - w1, rect);
        let lr = lr_mul(&x, &y, Some(rect)).coeff(&rect.full());
        let px = schur_vector_to_poly(&x, ctx.vars(), Some(n)).unwrap();
        let py = schur_vector_to_poly(&y, ctx.vars(), Some(n)).unwrap();
        let oracle = alternant_integrate(&px.mul(&py, Some(n)).unwrap(), kappa, n).unwrap();
        prop_assert_eq!(lr, oracle);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schur_round_trip(v in 1usize..=5, parts in prop::collection::vec(0i64..=5, 0..=5)) {
        let mut parts = parts;
        parts.truncate(v);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let lambda = Partition::new(&parts).unwrap();
        let back = schur_expand(&schur_to_poly(&lambda, v).unwrap()).unwrap();
        prop_assert_eq!(back, SchurVector::basis(lambda));
    }

    #[test]
    fn polynomials_stay_symmetric(v in 1usize..=5, j in 0i64..=4, k in 0i64..=4, d in 1u32..=3, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let e = generator(GeneratorKind::Elementary, j, v).unwrap();
        let h = generator(GeneratorKind::Complete, k, v).unwrap();
        assert_invariant(&e, &mut rng);
        assert_invariant(&h, &mut rng);
        assert_invariant(&e.mul(&h, None).unwrap(), &mut rng);
        assert_invariant(&e.add(&h).unwrap(), &mut rng);
        assert_invariant(&h.pow(2, Some(5)).unwrap(), &mut rng);
        assert_invariant(&sym_power_chern_roots(v, d, 6, None).unwrap(), &mut rng);
        let lambda = Partition::new(&[i64::from(k as u32 + 1), j.min(1)]).unwrap();
        if lambda.len() <= v {
            assert_invariant(&schur_to_poly(&lambda, v).unwrap(), &mut rng);
        }
    }

    #[test]
    fn lr_grading(w1 in 0u32..=6, w2 in 0u32..=6, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let wide = Rect::new(6, 6);
        let x = random_vector(&mut rng, w1, wide);
        let y = random_vector(&mut rng, w2, wide);
        let prod = lr_mul(&x, &y, None);
        if !prod.is_zero() {
            prop_assert_eq!(prod.homogeneous_degree(), Some(w1 + w2));
        }
    }

    #[test]
    fn gr_mul_commutes_and_associates((kappa, n) in grassmannian(), w in prop::array::uniform3(0u32..=4), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ctx = GrContext::new(n, kappa).unwrap();
        let [a, b, c] = w.map(|w| random_class(&mut rng, ctx, w.min(ctx.dim())));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left, gr_mul(ctx, &[a, b, c]).unwrap());
    }

    #[test]
    fn schur_and_oracle_integration_agree((kappa, n) in grassmannian(), w in 0u32..=20, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ctx = GrContext::new(n, kappa).unwrap();
        let w = w.min(ctx.dim());
        let x = random_class(&mut rng, ctx, w).mul(&random_class(&mut rng, ctx, ctx.dim() - w)).unwrap();
        let schur = gr_integrate(&x, IntegrationMode::Schur).unwrap();
        prop_assert_eq!(gr_integrate(&x, IntegrationMode::Oracle).unwrap(), schur.clone());
        prop_assert_eq!(gr_integrate(&x, IntegrationMode::Both).unwrap(), schur);
    }

    #[test]
    fn swap_commutes_with_products(n in 1u32..=6, xs in prop::collection::vec((0u32..=6, 0u32..=6, -20i64..=20), 0..8),
                                   ys in prop::collection::vec((0u32..=6, 0u32..=6, -20i64..=20), 0..8)) {
        let build = |v: &[(u32, u32, i64)]| {
            PPClass::from_terms(n, v.iter().map(|&(i, j, c)| ((i, j), BigRational::from_integer(c.into()))))
        };
        let (x, y) = (build(&xs), build(&ys));
        prop_assert_eq!(pp_mul(&x, &y).unwrap().swap(), pp_mul(&x.swap(), &y.swap()).unwrap());
        let d = (xs.len() as u32 % 5) + 1;
        let inv = geom_series_inverse(d, n);
        prop_assert_eq!(inv.swap(), inv);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn triple_invariants(kappa in 1u32..=3, d in 1u32..=5, extra in 1u32..=6) {
        let n = kappa + extra;
        let p = TripleParams::new(n, d, kappa).unwrap();
        prop_assert_eq!(p.expected_fano_dim - p.s_excess, p.hf_dim);
        let a = analyze(&p, IntegrationMode::Both).unwrap();
        let c = &a.condition;
        prop_assert_eq!(c.holds, p.s_excess >= 0 && c.m.as_ref().is_some_and(|m| !m.is_zero()));
        if let Some(m) = &c.m {
            prop_assert!((m % BigInt::from(d)).is_zero());
            let sign = if kappa % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            prop_assert_eq!(c.osculating_count.clone().unwrap(), sign * m / BigInt::from(d));
            let b = a.b_matrix.as_ref().unwrap();
            for (i, row) in b.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    prop_assert_eq!(v, &b[j][i]);
                }
            }
            let sum = a.sum_ai.as_ref().unwrap();
            prop_assert!(sum.is_integral());
            if let Some(betas) = &a.betas {
                prop_assert_eq!(betas.len(), n as usize);
                let rev: Vec<_> = betas.iter().rev().cloned().collect();
                prop_assert_eq!(betas, &rev);
            }
        }
    }
}

#[test]
fn duality_in_small_grassmannians() {
    for (n, kappa) in [(3, 1), (4, 1)] {
        let ctx = GrContext::new(n, kappa).unwrap();
        let rect = ctx.rect();
        for w in 0..=ctx.dim() {
            for lambda in partitions_in_box(w, rect.rows, rect.cols) {
                for mu in partitions_in_box(ctx.dim() - w, rect.rows, rect.cols) {
                    let x = GrClass::schur(ctx, lambda.clone()).mul(&GrClass::schur(ctx, mu.clone())).unwrap();
                    let expected = i64::from(lambda.complement(rect.rows, rect.cols) == Some(mu.clone()));
                    assert_eq!(gr_integrate(&x, IntegrationMode::Both).unwrap(), BigInt::from(expected), "{lambda} {mu}");
                }
            }
        }
    }
}

#[test]
fn chern_classes_of_symmetric_powers() {
    for kappa in 1..=3u32 {
        for d in 1..=5u32 {
            let rank = hfmotive_core::grchow::sym_power_rank(d, kappa) as u32;
            let total = sym_power_chern_roots(kappa as usize + 1, d, rank + 3, None).unwrap();
            assert_eq!(total.homogeneous_part(0), MonomialSymPoly::one(kappa as usize + 1).unwrap());
            for j in rank + 1..=rank + 3 {
                assert!(total.homogeneous_part(j).is_zero(), "c_{j} of Sym^{d} for kappa={kappa}");
            }
            let ctx = GrContext::new(kappa + 3, kappa).unwrap();
            assert_eq!(chern_sym_power(ctx, d, 0).unwrap(), GrClass::unit(ctx));
            let scalar = u64::from(d) * u64::from(rank);
            assert_eq!(scalar % u64::from(kappa + 1), 0);
            let c1 = chern_sym_power(ctx, d, 1).unwrap();
            assert_eq!(c1, class_xi(ctx, 1).scale(&BigInt::from(scalar / u64::from(kappa + 1))));
        }
    }
}
