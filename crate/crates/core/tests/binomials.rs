use gss_core::{binom_mod_p, stable_binom, Error, PrimeContext};
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = PrimeContext> {
    prop::sample::select(vec![2u32, 3, 5, 7, 11, 13]).prop_map(|p| PrimeContext::new(p).unwrap())
}

/// Exact binomial for small arguments.
fn exact(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

proptest! {
    #[test]
    fn agrees_with_exact_values(ctx in prime(), n in 0u64..60, k in 0u64..64) {
        let want = (exact(n, k) % ctx.p() as u128) as u32;
        prop_assert_eq!(binom_mod_p(n, k, &ctx).value(), want);
    }

    #[test]
    fn pascal_rule(ctx in prime(), n in 1u64..1_000_000, k in 1u64..1_000_000) {
        let lhs = binom_mod_p(n, k, &ctx);
        let rhs = ctx.add(binom_mod_p(n - 1, k - 1, &ctx), binom_mod_p(n - 1, k, &ctx));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetry(ctx in prime(), n in 0u64..1_000_000, k in 0u64..1_000_000) {
        prop_assume!(k <= n);
        prop_assert_eq!(binom_mod_p(n, k, &ctx), binom_mod_p(n, n - k, &ctx));
    }

    #[test]
    fn stable_value_is_shift_invariant(ctx in prime(), a in -200i64..0, b in 0u64..200) {
        let mut e = 0;
        while ctx.power_of_p(e).unwrap() < (b as i64 - a) as u64 {
            e += 1;
        }
        let got = stable_binom(a, b, &ctx).unwrap();
        for m in [e, e + 1, e + 2] {
            let k = ctx.power_of_p(m).unwrap() as i64;
            prop_assert_eq!(binom_mod_p((a + k) as u64, b, &ctx), got);
        }
    }
}

#[test]
fn stable_binom_needs_negative_top() {
    let ctx = PrimeContext::new(3).unwrap();
    assert!(matches!(
        stable_binom(0, 2, &ctx),
        Err(Error::StableBinomDomain(0))
    ));
    assert_eq!(stable_binom(-1, 5, &ctx).unwrap(), ctx.scalar(-1));
}
