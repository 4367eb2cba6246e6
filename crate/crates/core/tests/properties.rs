use std::collections::HashSet;

use proptest::prelude::*;

use triquad_core::arith::{factor_squarefree, is_prime, is_squarefree, jacobi, SymbolLog};
use triquad_core::classifier::{classify, rank2_case, rank3_case, GroupType};
use triquad_core::formulas::H2Kind;
use triquad_core::quadforms::fundamental_discriminant;
use triquad_core::report::ScanRecord;
use triquad_core::units::{eps_decomposition, fundamental_unit};
use triquad_core::{Config, Context};

/// Kronecker symbol `(D/a)` for a fundamental discriminant `D`.
fn kronecker(d: i64, a: u64) -> i64 {
    let mut a = a;
    let mut s = 1;
    while a.is_multiple_of(2) {
        a /= 2;
        s *= match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    if a == 1 {
        return s;
    }
    s * jacobi(d, a).unwrap().value() as i64
}

/// `h(D) = -(w / 2|D|) sum_{a < |D|} (D/a) a` for `D < 0`.
fn analytic_class_number(d: i64) -> u64 {
    let n = d.unsigned_abs();
    let w = match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    };
    let s: i64 = (1..n).map(|a| kronecker(d, a) * a as i64).sum();
    (-s * w / (2 * n as i64)) as u64
}

#[test]
fn class_numbers_match_analytic_formula() {
    let ctx = Context::default();
    for m in (1..2500i64).map(|m| -m).filter(|m| is_squarefree(m.unsigned_abs())) {
        let d = fundamental_discriminant(m).unwrap().value();
        assert_eq!(ctx.class_number(m).unwrap(), analytic_class_number(d), "D = {d}");
    }
}

#[test]
fn rank_lists_are_mutually_exclusive() {
    for d in (3..100_000u64).step_by(2).filter(|&d| is_squarefree(d)) {
        let f = factor_squarefree(d).unwrap();
        let mut log = SymbolLog::new();
        let r2 = rank2_case(&f, &mut log).unwrap();
        let r3 = rank3_case(&f, &mut log).unwrap();
        assert!(r2.is_none() || r3.is_none(), "d = {d}");
        if let Some(c) = r2.or(r3) {
            let mut p = c.primes.clone();
            p.sort_unstable();
            assert_eq!(p, f.primes().collect::<Vec<_>>(), "d = {d}");
        }
    }
}

#[test]
fn verdicts_are_coherent() {
    let ctx = Context::default();
    let mut seen = HashSet::new();
    for d in (3..6000u64).step_by(2).filter(|&d| is_squarefree(d)) {
        let v = classify(&ctx, d).unwrap();
        seen.insert(v.group_type);
        match v.group_type {
            GroupType::Type24 => assert_eq!(v.rank(), Some(2), "d = {d}"),
            GroupType::Type222 => assert_eq!(v.rank(), Some(3), "d = {d}"),
            GroupType::NotOfTargetType => assert!(v.rank().is_some(), "d = {d}"),
            GroupType::OutOfScope => assert!(v.diagnostics.is_empty(), "d = {d}: {:?}", v.diagnostics),
        }
        if v.group_type.is_target() {
            assert_eq!((v.h2.kind, v.h2.value), (H2Kind::Exact, 8), "d = {d}");
        }
        for c in &v.certificates {
            assert_eq!(v.h2.value % c.value, 0, "d = {d}");
        }
        if v.annotations.iter().any(|a| a == "8-rank = 1") {
            assert!(v.annotations.iter().any(|a| a == "4-rank = 1"));
            assert!(v.h2.value >= 16 && v.h2.value.is_multiple_of(16), "d = {d}");
        }
    }
    assert_eq!(seen.len(), 4);
}

#[test]
fn both_minus_symbols_annotate_ranks() {
    let ctx = Context::default();
    for p in (17..3000u64).step_by(8).filter(|&p| is_prime(p)) {
        let both_minus = triquad_core::arith::quartic_symbol(2, p).unwrap().is_minus()
            && triquad_core::arith::quartic_symbol_mod2(p as i64).unwrap().is_minus();
        let v = classify(&ctx, p).unwrap();
        assert_eq!(v.annotations.iter().any(|a| a == "8-rank = 1"), both_minus, "p = {p}");
    }
}

#[test]
fn q1q2_h2_matches_h2_of_minus_2d() {
    let ctx = Context::default();
    let qs: Vec<u64> = (3..400).filter(|&q| q % 8 == 3 && is_prime(q)).collect();
    for (i, &a) in qs.iter().enumerate() {
        for &b in &qs[i + 1..] {
            let v = classify(&ctx, a * b).unwrap();
            let h = ctx.h2_quadratic(-2 * (a * b) as i64).unwrap();
            assert!(v.annotations.contains(&format!("h2(L_d) = h2(-2d) = {h}")), "d = {}", a * b);
            if v.h2.is_exact() {
                assert_eq!(v.h2.value, h);
            }
        }
    }
}

/// For `d = q1 q2`, `q1 = q2 = 3 (mod 8)`, the `x +- 1` parts of `eps_d` are
/// `2 q1` and `2 q2` in some order.
#[test]
fn unit_decomposition_of_q1q2() {
    let qs: Vec<u64> = (3..3000).filter(|&q| q % 8 == 3 && is_prime(q)).collect();
    let mut checked = 0;
    for (i, &a) in qs.iter().enumerate() {
        for &b in &qs[i + 1..] {
            if a * b >= 3000 {
                break;
            }
            let u = fundamental_unit((a * b) as i64).unwrap();
            let dec = eps_decomposition(&u).unwrap();
            let mut got = [dec.sf_plus, dec.sf_minus];
            got.sort_unstable();
            assert_eq!(got, [2 * a, 2 * b], "d = {}", a * b);
            checked += 1;
        }
    }
    assert!(checked > 10);
}

#[test]
fn cache_round_trip_reproduces_entries() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.cache");
    let ctx = Context::default();
    for m in [-66i64, -418, -5, 33, 89, -2 * 493] {
        ctx.class_data(m).unwrap();
    }
    ctx.save_cache(&path, &HashSet::new()).unwrap();

    let warm = Context::default();
    assert_eq!(warm.load_cache(&path).unwrap(), ctx.cache().len());
    let cold = Context::default();
    for e in warm.cache().entries() {
        let m = fundamental_discriminant_radicand(e.discriminant);
        assert_eq!(cold.class_data(m).unwrap(), e.data);
    }
    assert_eq!(classify(&warm, 209).unwrap(), classify(&cold, 209).unwrap());
}

fn fundamental_discriminant_radicand(d: i64) -> i64 {
    triquad_core::quadforms::FundamentalDiscriminant::new(d).unwrap().radicand()
}

#[test]
fn small_ceiling_is_enforced() {
    let ctx = Context::new(Config::with_ceiling(100));
    assert!(classify(&ctx, 89).is_ok());
    assert!(classify(&ctx, 101).is_err());
}

fn odd_squarefree() -> impl Strategy<Value = u64> {
    (1u64..50_000).prop_map(|n| 2 * n + 1).prop_filter("square-free", |&d| is_squarefree(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_is_consistent(d in odd_squarefree()) {
        let f = factor_squarefree(d).unwrap();
        prop_assert_eq!(f.primes().product::<u64>(), d);
        for p in f.factors() {
            prop_assert!(is_prime(p.prime));
            prop_assert_eq!(p.mod8 as u64, p.prime % 8);
            prop_assert_eq!(p.mod16 as u64, p.prime % 16);
        }
    }

    #[test]
    fn jacobi_is_multiplicative(a in -500i64..500, b in -500i64..500, n in (0u64..2000).prop_map(|n| 2 * n + 3)) {
        let ab = jacobi(a * b, n).unwrap();
        prop_assert_eq!(ab, jacobi(a, n).unwrap() * jacobi(b, n).unwrap());
    }

    #[test]
    fn units_satisfy_norm_equation(m in 2i64..200_000) {
        prop_assume!(is_squarefree(m as u64));
        let u = fundamental_unit(m).unwrap();
        prop_assert!(u.satisfies_norm_equation());
    }

    #[test]
    fn records_round_trip(d in odd_squarefree()) {
        let ctx = Context::default();
        let r = ScanRecord::from(&classify(&ctx, d).unwrap());
        let back: ScanRecord = serde_json::from_str(&r.to_json()).unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn genus_two_rank(m in 1i64..200_000) {
        prop_assume!(is_squarefree(m as u64));
        let ctx = Context::default();
        let disc = fundamental_discriminant(-m).unwrap().value();
        let t = triquad_core::arith::factor(disc.unsigned_abs()).len();
        prop_assert_eq!(ctx.imaginary_class_group(-m).unwrap().two_rank() + 1, t);
    }
}
