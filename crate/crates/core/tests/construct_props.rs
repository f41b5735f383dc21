mod common;

use std::collections::BTreeSet;

use curvezeta::construct::{
    catalog, ckp_plan, ds_p_rank, igusa_counts, instantiate_factors, verify_supersingular_factors,
    ConstructError,
};
use curvezeta::curves::parse_curve;
use curvezeta::ffield::{make_field, Limits};
use curvezeta::npoly::newton_polygon;
use curvezeta::zeta::{is_supersingular_elliptic, l_polynomial};
use num_bigint::BigUint;
use proptest::prelude::*;

/// Genus of the fibre product from the base-p digits of δ alone: a run of
/// ones at positions `s..=s+r` after `used` earlier digits contributes
/// `(p^{r+1} - 1) p^used` curves of genus `p^{s+1-used} (p-1) / 2`.
fn genus_from_digits(p: u64, delta: u64) -> BigUint {
    let mut digits = Vec::new();
    let mut n = delta;
    while n > 0 {
        digits.push(n % p);
        n /= p;
    }
    let pb = BigUint::from(p);
    let (mut total, mut used, mut k) = (BigUint::from(0u32), 0u32, 0usize);
    while k < digits.len() {
        if digits[k] == 1 {
            let s = k as u32;
            while k < digits.len() && digits[k] == 1 {
                k += 1;
            }
            let d = k as u32 - s;
            total += (pb.pow(d) - 1u32) * pb.pow(used) * pb.pow(s + 1 - used) * (p - 1) / 2u32;
            used += d;
        } else {
            k += 1;
        }
    }
    total
}

fn admissible(p: u64, mut delta: u64) -> bool {
    while delta > 0 {
        if delta % p > 1 {
            return false;
        }
        delta /= p;
    }
    true
}

#[test]
fn ckp_identity_for_small_primes() {
    for p in [2u64, 3, 5, 7] {
        let mut seen = 0;
        for delta in 1..=10_000u64 {
            if !admissible(p, delta) {
                assert!(matches!(ckp_plan(p, delta), Err(ConstructError::BadDigits { .. })));
                continue;
            }
            seen += 1;
            let plan = ckp_plan(p, delta).unwrap_or_else(|e| panic!("p={p} δ={delta}: {e}"));
            let target = BigUint::from(delta) * p * (p - 1) * (p - 1) / 2u32;
            assert_eq!(plan.genus_target, target);
            assert_eq!(genus_from_digits(p, delta), target, "p={p} δ={delta}");
            let sum: BigUint = plan.runs.iter().map(|r| &r.factor_count * &r.factor_genus).sum();
            assert_eq!(sum, target);
            let used: u32 = plan.runs.iter().map(|r| r.d).sum();
            assert_eq!(plan.total_factors(), BigUint::from(p).pow(used) - 1u32);
        }
        assert!(seen > 0);
    }
    assert!(matches!(ckp_plan(4, 1), Err(ConstructError::NotPrime(4))));
    assert!(matches!(ckp_plan(3, 0), Err(ConstructError::ZeroDelta)));
}

#[test]
fn instantiated_factors_are_supersingular() {
    let limits = Limits::default();
    for (p, delta) in [(2u64, 1u64), (2, 2), (2, 3), (3, 1)] {
        let plan = ckp_plan(p, delta).unwrap();
        let factors = instantiate_factors(&plan, &limits).unwrap();
        assert_eq!(BigUint::from(factors.len()), plan.total_factors(), "p={p} δ={delta}");
        let reports = verify_supersingular_factors(&factors, &limits).unwrap();
        assert!(reports.iter().all(|r| r.supersingular && r.p_rank == 0));
        let genus: u64 = reports.iter().map(|r| r.g).sum();
        assert_eq!(BigUint::from(genus), plan.genus_target, "p={p} δ={delta}");
        let distinct: BTreeSet<&str> = reports.iter().map(|r| r.curve.as_str()).collect();
        assert_eq!(distinct.len(), reports.len());
    }
    let plan = ckp_plan(2, 1 << 12).unwrap();
    assert!(matches!(
        instantiate_factors(&plan, &Limits::default()),
        Err(ConstructError::CapExceeded { .. })
    ));
}

#[test]
fn ds_matches_zeta_on_tame_corpus() {
    let limits = Limits::default();
    let corpus = common::tame_corpus();
    assert_eq!(corpus.len(), 50);
    for c in corpus {
        let spec = parse_curve(&c.text).unwrap_or_else(|e| panic!("{}: {e}", c.text));
        let ds = ds_p_rank(c.p, 0, &vec![c.p; c.poles as usize]).unwrap();
        assert_eq!(ds, (c.poles - 1) * (c.p - 1));
        let l = l_polynomial(&spec, &limits).unwrap();
        let np = newton_polygon(&l).unwrap();
        assert_eq!(np.p_rank(), ds, "{}", c.text);
    }
}

#[test]
fn ds_rejects_bad_branch_data() {
    assert_eq!(ds_p_rank(4, 1, &[2, 2, 1]).unwrap(), 3);
    assert_eq!(ds_p_rank(3, 2, &[3, 1]).unwrap(), 6);
    for (h, e) in [(6u64, vec![2u64]), (9, vec![2]), (9, vec![27]), (4, vec![0])] {
        assert!(matches!(ds_p_rank(h, 0, &e), Err(ConstructError::InconsistentBranchData(_))), "{h} {e:?}");
    }
    assert!(ds_p_rank(2, 0, &[]).is_err());
}

/// Roots in `F_{p^2}` of `H_p(λ) = Σ C(m,i)^2 λ^i`, `m = (p-1)/2`, and the
/// distinct `j` values they give.
fn hasse_oracle(p: u64) -> (u64, u64) {
    let f = make_field(p, 2).unwrap();
    let m = (p - 1) / 2;
    let binom = |i: u64| (0..i).fold(1u128, |acc, k| acc * (m - k) as u128 / (k + 1) as u128);
    let coeffs: Vec<u64> = (0..=m).map(|i| (binom(i) * binom(i) % p as u128) as u64).collect();
    let mut roots = 0;
    let mut js = BTreeSet::new();
    for lam in f.elements(&Limits::default()).unwrap() {
        let mut h = f.zero();
        for &c in coeffs.iter().rev() {
            h = f.add(&f.mul(&h, &lam), &f.from_prime(c));
        }
        if !h.is_zero() {
            continue;
        }
        roots += 1;
        // j = 256 (λ² - λ + 1)³ / (λ² (λ - 1)²)
        let l2 = f.mul(&lam, &lam);
        let a = f.add(&f.sub(&l2, &lam), &f.one());
        let num = f.mul(&f.from_prime(256 % p), &f.mul(&a, &f.mul(&a, &a)));
        let b = f.sub(&lam, &f.one());
        let den = f.mul(&l2, &f.mul(&b, &b));
        js.insert(f.div(&num, &den).unwrap().index(p));
    }
    (roots, js.len() as u64)
}

#[test]
fn igusa_against_hasse_polynomial() {
    let limits = Limits::default();
    let expected = [(3u64, (1u64, 1u64)), (5, (2, 1)), (7, (3, 1)), (11, (5, 2)), (13, (6, 1))];
    for (p, want) in expected {
        assert_eq!(igusa_counts(p, &limits).unwrap(), want, "p={p}");
        assert_eq!(hasse_oracle(p), want, "p={p}");
    }
    for p in [17u64, 19, 23, 29, 31] {
        assert_eq!(igusa_counts(p, &limits).unwrap(), hasse_oracle(p), "p={p}");
    }
    assert!(matches!(igusa_counts(2, &limits), Err(ConstructError::NeedsOddPrime(2))));
    assert!(matches!(igusa_counts(9, &limits), Err(ConstructError::NotPrime(9))));
}

#[test]
fn catalog_entries_reproduce() {
    let limits = Limits::default();
    let cat = catalog();
    for rule in &cat.elliptic_rules {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            let text = rule.curve_for(p);
            let Ok(spec) = parse_curve(&text) else { continue };
            let l = l_polynomial(&spec, &limits).unwrap();
            assert_eq!(is_supersingular_elliptic(&l).unwrap(), rule.predicts_supersingular(p), "{text}");
        }
    }
    for e in &cat.igusa {
        assert_eq!(igusa_counts(e.p, &limits).unwrap(), (e.lambda_count, e.iso_classes));
    }
}

proptest! {
    #[test]
    fn plans_partition_factor_counts(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), bits in 1u64..(1 << 12)) {
        // δ with base-p digits given by the binary digits of `bits`
        let delta = (0..12).filter(|i| bits >> i & 1 == 1).map(|i| p.pow(i)).sum::<u64>();
        let plan = ckp_plan(p, delta).unwrap();
        prop_assert_eq!(&plan.genus_target, &genus_from_digits(p, delta));
        for w in plan.runs.windows(2) {
            prop_assert!(w[1].u > w[0].u);
            prop_assert!(w[1].s > w[0].s + w[0].d);
        }
    }
}
