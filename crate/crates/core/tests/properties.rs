//! Randomized cross-checks of the algebraic kernels. Each property states
//! a law that must hold for every input, so any counterexample proptest
//! finds is a real bug, not a flaky tolerance.

use cubeperm::binform::{class_number, class_number_forms_oracle, normalize_rs, represent_4p};
use cubeperm::counts::difference_counts;
use cubeperm::eisenstein::{cubic_symbol, divrem, primary_associate, prime_above, EisensteinInt};
use cubeperm::modular::{inv_mod, is_prime, mul_mod, pow_mod, primitive_roots};
use cubeperm::permsign::{permutation_sign, permutation_sign_by_inversions};
use cubeperm::verify::build_context;
use proptest::prelude::*;

fn primes_where(lo: u64, hi: u64, f: impl Fn(u64) -> bool) -> Vec<u64> {
    (lo..hi).filter(|&p| is_prime(p) && f(p)).collect()
}

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #[test]
    fn norm_is_multiplicative(
        a1 in -(1i64 << 20)..(1i64 << 20), b1 in -(1i64 << 20)..(1i64 << 20),
        a2 in -(1i64 << 20)..(1i64 << 20), b2 in -(1i64 << 20)..(1i64 << 20),
    ) {
        let u = EisensteinInt::new(a1, b1);
        let v = EisensteinInt::new(a2, b2);
        let uv = u.checked_mul(&v).unwrap();
        prop_assert_eq!(uv.norm(), u.norm() * v.norm());
    }

    #[test]
    fn conjugation_is_a_ring_map(
        a1 in -(1i64 << 20)..(1i64 << 20), b1 in -(1i64 << 20)..(1i64 << 20),
        a2 in -(1i64 << 20)..(1i64 << 20), b2 in -(1i64 << 20)..(1i64 << 20),
    ) {
        let u = EisensteinInt::new(a1, b1);
        let v = EisensteinInt::new(a2, b2);
        prop_assert_eq!(u.conj().conj(), u);
        prop_assert_eq!(
            u.checked_mul(&v).unwrap().conj(),
            u.conj().checked_mul(&v.conj()).unwrap()
        );
        prop_assert_eq!(
            u.checked_add(&v).unwrap().conj(),
            u.conj().checked_add(&v.conj()).unwrap()
        );
    }

    #[test]
    fn divrem_is_euclidean(
        a1 in -(1i64 << 16)..(1i64 << 16), b1 in -(1i64 << 16)..(1i64 << 16),
        a2 in -(1i64 << 16)..(1i64 << 16), b2 in -(1i64 << 16)..(1i64 << 16),
    ) {
        let u = EisensteinInt::new(a1, b1);
        let v = EisensteinInt::new(a2, b2);
        prop_assume!(v.norm() != 0);
        let (q, r) = divrem(&u, &v).unwrap();
        let back = q.checked_mul(&v).unwrap().checked_add(&r).unwrap();
        prop_assert_eq!(back, u);
        prop_assert!(r.norm() < v.norm());
    }

    #[test]
    fn primary_associate_preserves_the_ideal(
        a in -(1i64 << 16)..(1i64 << 16), b in -(1i64 << 16)..(1i64 << 16),
    ) {
        let z = EisensteinInt::new(a, b);
        prop_assume!(z.norm() % 3 != 0);
        let pz = primary_associate(&z).unwrap();
        prop_assert!(pz.is_primary());
        prop_assert_eq!(pz.norm(), z.norm());
        // same ideal: each divides the other exactly
        let (_, r1) = divrem(&z, &pz).unwrap();
        let (_, r2) = divrem(&pz, &z).unwrap();
        prop_assert_eq!(r1, EisensteinInt::ZERO);
        prop_assert_eq!(r2, EisensteinInt::ZERO);
    }

    #[test]
    fn pow_mod_satisfies_group_laws(
        p in prop::sample::select(primes_where(2, 10_000, |_| true)),
        a_seed in 1u64..u64::MAX,
        e1 in 0u64..(1 << 20),
        e2 in 0u64..(1 << 20),
    ) {
        let a = 1 + a_seed % (p - 1).max(1);
        prop_assert_eq!(
            mul_mod(pow_mod(a, e1, p), pow_mod(a, e2, p), p),
            pow_mod(a, e1 + e2, p)
        );
        prop_assert_eq!(pow_mod(pow_mod(a, e1, p), e2, p), pow_mod(a, e1 * e2, p));
        if a % p != 0 {
            prop_assert_eq!(mul_mod(a % p, inv_mod(a % p, p), p), 1);
        }
    }

    #[test]
    fn cubic_symbol_is_multiplicative(
        p in prop::sample::select(primes_where(7, 500, |p| p % 3 == 1)),
        k1_seed in 1u64..u64::MAX,
        k2_seed in 1u64..u64::MAX,
    ) {
        let pi = prime_above(p).unwrap();
        let k1 = 1 + k1_seed % (p - 1);
        let k2 = 1 + k2_seed % (p - 1);
        let lhs = cubic_symbol(mul_mod(k1, k2, p) as i64, &pi, p).unwrap();
        let s1 = cubic_symbol(k1 as i64, &pi, p).unwrap();
        let s2 = cubic_symbol(k2 as i64, &pi, p).unwrap();
        prop_assert_eq!(lhs, s1 * s2);
        // swapping the prime above p squares every symbol value
        let conj_sym = cubic_symbol(k1 as i64, &pi.conj(), p).unwrap();
        prop_assert_eq!(conj_sym, s1.conjugate());
    }

    #[test]
    fn permutation_sign_is_multiplicative(
        (sigma, tau) in (2usize..=40).prop_flat_map(|n| (perm(n), perm(n))),
    ) {
        let comp: Vec<usize> = tau.iter().map(|&i| sigma[i - 1]).collect();
        let s_sigma = permutation_sign(&sigma).unwrap();
        let s_tau = permutation_sign(&tau).unwrap();
        let s_comp = permutation_sign(&comp).unwrap();
        prop_assert_eq!(s_comp, s_sigma * s_tau);
        prop_assert_eq!(permutation_sign_by_inversions(&comp).unwrap(), s_comp);
        // the inverse permutation has the same sign
        let mut inv = vec![0usize; sigma.len()];
        for (i, &v) in sigma.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        prop_assert_eq!(permutation_sign(&inv).unwrap(), s_sigma);
    }

    #[test]
    fn class_number_methods_agree_and_are_odd(
        p in prop::sample::select(primes_where(7, 3_000, |p| p % 4 == 3)),
    ) {
        let h = class_number(p).unwrap();
        prop_assert_eq!(h, class_number_forms_oracle(p).unwrap());
        prop_assert_eq!(h % 2, 1);
    }

    #[test]
    fn quadruple_prime_representation_holds(
        p in prop::sample::select(primes_where(7, 5_000, |p| p % 3 == 1)),
        g_seed in 0usize..usize::MAX,
    ) {
        let (r, s) = represent_4p(p).unwrap();
        prop_assert_eq!(r * r + 3 * s * s, 4 * p as i64);
        prop_assert_eq!(r.rem_euclid(3), 1);
        prop_assert_eq!(s.rem_euclid(3), 0);
        // per-generator normalization only ever flips the sign of s
        let roots = primitive_roots(p).unwrap();
        let g = roots[g_seed % roots.len()];
        let rep = normalize_rs(p, g).unwrap();
        prop_assert_eq!(rep.r, r);
        prop_assert!(rep.s == s || rep.s == -s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn difference_counts_are_cube_class_invariant(
        p in prop::sample::select(primes_where(7, 150, |p| p % 3 == 1)),
        k_seed in 1u64..u64::MAX,
        c_seed in 1u64..u64::MAX,
    ) {
        let ctx = build_context(p, None).unwrap();
        let k = 1 + k_seed % (p - 1);
        let c = 1 + c_seed % (p - 1);
        let k2 = mul_mod(k, pow_mod(c, 3, p), p);
        let at_k = difference_counts(p, ctx.pi, ctx.rep, k).unwrap();
        let at_k2 = difference_counts(p, ctx.pi, ctx.rep, k2).unwrap();
        prop_assert_eq!(at_k, at_k2);
    }

    #[test]
    fn context_build_is_coherent(
        p in prop::sample::select(primes_where(7, 500, |p| p % 3 == 1)),
        g_seed in 0usize..usize::MAX,
    ) {
        let roots = primitive_roots(p).unwrap();
        let g = roots[g_seed % roots.len()];
        let ctx = build_context(p, Some(g)).unwrap();
        prop_assert_eq!(ctx.g, g);
        prop_assert_eq!(ctx.n, (p - 1) / 3);
        // w is a primitive cube root of unity and pi's coordinates
        // reproduce the normalized form representation
        prop_assert!(ctx.w != 1);
        prop_assert_eq!(pow_mod(ctx.w, 3, p), 1);
        prop_assert_eq!(2 * ctx.pi.a - ctx.pi.b, ctx.rep.r);
        prop_assert_eq!(ctx.pi.b, ctx.rep.s);
        let sym = cubic_symbol(g as i64, &ctx.pi, p).unwrap();
        prop_assert_eq!(sym, cubeperm::eisenstein::CubicSymbolValue::Omega);
    }
}
