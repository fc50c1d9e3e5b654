//! Property suites: field axioms and factorization round-trips on random
//! inputs, splitting-field behavior of group-element actions, stripping
//! order independence of 2-cores, and the direct simplicity validator on
//! every defect-zero catalog block.

use blockomega::config::Config;
use blockomega::gf2m::{self, DenseMatrix, FieldCtx, Poly};
use blockomega::gmodule::{self, GSet};
use blockomega::permgroup::{self, GroupData};
use blockomega::symgroup::{self, Partition};
use blockomega::{blocks, catalog};
use proptest::prelude::*;
use std::sync::Arc;

fn ctx_for(m: u32) -> FieldCtx {
    gf2m::field_ctx(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms_random_triples(
        m in prop::sample::select(vec![1u32, 2, 3, 4, 8]),
        a in any::<u64>(),
        b in any::<u64>(),
        c in any::<u64>(),
    ) {
        let ctx = ctx_for(m);
        let q = ctx.q();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(ctx.mul(a, ctx.mul(b, c)), ctx.mul(ctx.mul(a, b), c));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.mul(a, b ^ c), ctx.mul(a, b) ^ ctx.mul(a, c));
        prop_assert_eq!(ctx.mul(a, 1), a);
        if a != 0 {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a)), 1);
        }
    }

    #[test]
    fn factor_roundtrip_random(
        m in prop::sample::select(vec![1u32, 2, 4]),
        coeffs in prop::collection::vec(any::<u64>(), 1..9),
        seed in any::<u64>(),
    ) {
        let ctx = ctx_for(m);
        let q = ctx.q();
        let mut cs: Vec<u64> = coeffs.iter().map(|&c| c % q).collect();
        cs.push(1); // force nonzero leading coefficient
        let f = Poly::new(cs);
        let factors = f.factor(&ctx, seed);
        let mut prod = Poly::one();
        for (p, mult) in &factors {
            prop_assert!(p.is_irreducible(&ctx));
            for _ in 0..*mult {
                prod = prod.mul(&ctx, p);
            }
        }
        prop_assert_eq!(prod, f.monic(&ctx));
    }

    #[test]
    fn rank_nullity_random(
        rows in 1usize..6,
        cols in 1usize..7,
        data in prop::collection::vec(any::<u64>(), 42),
    ) {
        let ctx = ctx_for(3);
        let q = ctx.q();
        let m = DenseMatrix::from_fn(rows, cols, |i, j| data[i * 7 + j] % q);
        prop_assert_eq!(m.rank(&ctx) + m.nullspace(&ctx).rows, cols);
    }

    #[test]
    fn min_poly_annihilates_and_is_minimal(
        n in 1usize..5,
        data in prop::collection::vec(any::<u64>(), 16),
        seed in any::<u64>(),
    ) {
        let ctx = ctx_for(2);
        let q = ctx.q();
        let a = DenseMatrix::from_fn(n, n, |i, j| data[i * 4 + j] % q);
        let mu = a.min_poly(&ctx, seed);
        prop_assert!(mu.eval_matrix(&ctx, &a).is_zero());
        // no proper divisor annihilates
        for (p, _) in mu.factor(&ctx, seed) {
            let (quot, rem) = mu.divrem(&ctx, &p);
            prop_assert!(rem.is_zero());
            prop_assert!(!quot.eval_matrix(&ctx, &a).is_zero());
        }
    }

    #[test]
    fn two_core_stripping_order_independent(
        parts in prop::collection::vec(1u32..7, 1..5),
        picks in prop::collection::vec(any::<usize>(), 32),
    ) {
        let p = Partition::new(parts);
        let canonical = symgroup::two_core(&p);
        let i = std::cell::Cell::new(0usize);
        let random = symgroup::two_core_with_order(&p, |k| {
            let idx = picks[i.get() % picks.len()] % k;
            i.set(i.get() + 1);
            idx
        });
        prop_assert_eq!(random, canonical);
    }
}

/// In the computed splitting field, the minimal polynomial of every
/// group-element action on kOmega splits into linear factors.
#[test]
fn splitting_field_splits_element_actions() {
    for name in ["C6", "S3", "A4", "D12", "D10"] {
        let (deg, gens) = catalog::catalog_group(name).unwrap();
        let group = Arc::new(GroupData::enumerate(deg, gens, 200_000).unwrap());
        let m = gf2m::splitting_degree(&group);
        let ctx = gf2m::field_ctx(m).unwrap();
        let omega = permgroup::involutions(&group);
        let gset = GSet::conjugation(Arc::clone(&group), omega, "omega");
        let module = gmodule::perm_module(&gset, &ctx);
        for e in 0..group.order as u32 {
            let action = module.element_action(&group, e);
            let mu = action.min_poly(&ctx, 0);
            for (p, _) in mu.factor(&ctx, 0) {
                assert_eq!(
                    p.degree(),
                    1,
                    "{name}: element {e} action has a nonlinear factor over GF(2^{m})"
                );
            }
        }
    }
}

/// Every defect-zero block of the catalog passes the direct simplicity
/// validator: dim e_B.kG is a perfect square s^2 and the block component of
/// the regular module splits into s copies of one simple.
#[test]
fn defect_zero_blocks_validate_simplicity() {
    let cfg = Config::default();
    for name in ["C1", "C3", "S3", "D10", "A5", "A6", "S6"] {
        let (deg, gens) = catalog::catalog_group(name).unwrap();
        let group = Arc::new(GroupData::enumerate(deg, gens, 200_000).unwrap());
        let ctx = gf2m::field_ctx(gf2m::splitting_degree(&group)).unwrap();
        let center = blocks::center_structure(&group, &ctx);
        let infos = blocks::classify_blocks(&group, &center, &cfg).unwrap();
        for info in infos.iter().filter(|b| b.is_defect_zero) {
            let report =
                blocks::validate_simplicity(&info.idempotent, &group, &center, &cfg).unwrap();
            assert!(
                report.agrees_with_k,
                "simplicity validation failed on {name}: {report:?}"
            );
            assert_eq!(Some(report.simple_dim), info.simple_dim, "{name}");
        }
    }
}

/// Verdicts are identical across RNG seeds: every probabilistic step has a
/// deterministic fallback.
#[test]
fn verdict_seed_stability() {
    use blockomega::theorem::{self, Session, VerifyScope};
    for name in ["S3", "S4", "D10", "A5", "C6"] {
        let (deg, gens) = catalog::catalog_group(name).unwrap();
        let group = Arc::new(GroupData::enumerate(deg, gens, 200_000).unwrap());
        let mut verdicts = Vec::new();
        for seed in [0u64, 1, 99] {
            let cfg = Config::with_seed(seed);
            let session = Session::new(Arc::clone(&group), name, &cfg).unwrap();
            let r = theorem::verify_group(&session, VerifyScope::Full).unwrap();
            verdicts.push((
                r.verdicts.pass,
                r.verdicts.bijection,
                r.verdicts.theorem_i,
                r.verdicts.theorem_ii,
                r.verdicts.real_defect_zero_count,
                r.verdicts.projective_component_count,
            ));
        }
        assert!(verdicts.windows(2).all(|w| w[0] == w[1]), "{name}: {verdicts:?}");
    }
}

/// dim End of a defect-zero block component equals the squared multiplicity
/// of the simple inside it (cross-check between the block and module layers).
#[test]
fn defect_zero_end_dimension_is_multiplicity_squared() {
    let cfg = Config::default();
    for name in ["S3", "D10", "A5", "A6"] {
        let (deg, gens) = catalog::catalog_group(name).unwrap();
        let group = Arc::new(GroupData::enumerate(deg, gens, 200_000).unwrap());
        let ctx = gf2m::field_ctx(gf2m::splitting_degree(&group)).unwrap();
        let center = blocks::center_structure(&group, &ctx);
        let infos = blocks::classify_blocks(&group, &center, &cfg).unwrap();
        let omega = permgroup::involutions(&group);
        let gset = GSet::conjugation(Arc::clone(&group), omega, "omega");
        let komega = gmodule::perm_module(&gset, &ctx);
        for info in infos.iter().filter(|b| b.is_defect_zero) {
            let comp = blocks::block_component(&info.idempotent, &komega, &group, "c");
            if comp.dim == 0 {
                continue;
            }
            let mult = comp.dim / info.simple_dim.unwrap();
            let end = gmodule::hom_space(&comp, &comp).len();
            assert_eq!(end, mult * mult, "{name}: dim End vs multiplicity^2");
        }
    }
}
