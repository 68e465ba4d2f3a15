mod common;

use proptest::prelude::*;
use usalg_core::*;

#[test]
fn corpus_rings_pass_audit() {
    for r in common::rings() {
        r.audit().unwrap();
    }
}

#[test]
fn example_ring_shape() {
    let (r, set) = common::example();
    assert_eq!(r.size(), 8);
    assert_eq!(set.len(), 2);
    let s = set.members().iter().copied().find(|&a| a != r.one()).unwrap();
    assert_eq!(r.label(s), "(1,0)");
    let x = r.find_label("x").unwrap();
    assert_eq!(r.mul(s, x), r.zero());
    assert_eq!(r.mul(x, x), r.zero());
}

#[test]
fn spectrum_of_cyclic_rings_counts_prime_divisors() {
    let b = Budget::default();
    for n in 2..=30usize {
        let primes = (2..=n).filter(|p| n % p == 0 && (2..*p).all(|d| p % d != 0)).count();
        let spec = spectrum(&common::z(n), &b).unwrap();
        assert_eq!(spec.maximal_ideals().count(), primes);
        assert_eq!(spec.prime_ideals().count(), primes);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_of_cyclic_rings_are_rings(a in 1usize..7, b in 1usize..7) {
        let p = common::product(a, b);
        p.audit().unwrap();
        prop_assert_eq!(p.size(), a * b);
        let coprime = (2..=a.min(b)).all(|d| a % d != 0 || b % d != 0);
        prop_assert_eq!(find_ring_isomorphism(&p, &common::z(a * b)).is_some(), coprime);
    }

    #[test]
    fn ideal_lattice_is_closed(n in 2usize..40) {
        let b = Budget::default();
        let r = common::z(n);
        let ideals = all_ideals(&r, &b).unwrap();
        let divisors = (1..=n).filter(|d| n % d == 0).count();
        prop_assert_eq!(ideals.len(), divisors);
        for i in &ideals {
            i.audit().unwrap();
            for j in &ideals {
                for kind in [Combine::Sum, Combine::Product, Combine::Intersection] {
                    let k = ideal_combine(kind, i, j).unwrap();
                    prop_assert!(ideals.contains(&k));
                }
            }
        }
    }

    #[test]
    fn quotient_rings_have_expected_size(n in 2usize..40, g in 0usize..40) {
        let r = common::z(n);
        let i = principal_ideal(&r, g % n);
        let q = quotient_ring(&i);
        q.ring.audit().unwrap();
        prop_assert_eq!(q.ring.size() * i.len(), n);
        for a in r.elements() {
            for c in r.elements() {
                prop_assert_eq!(q.projection[r.mul(a, c)], q.ring.mul(q.projection[a], q.projection[c]));
            }
        }
    }

    #[test]
    fn mulclose_is_multiplicative(idx in 0usize..16, gens in proptest::collection::vec(0usize..64, 0..3)) {
        let rings = common::rings();
        let r = &rings[idx % rings.len()];
        let gens: Vec<usize> = gens.into_iter().map(|g| g % r.size()).collect();
        let s = mulclose(r, &gens);
        prop_assert!(s.contains(r.one()));
        for &a in s.members() {
            for &c in s.members() {
                prop_assert!(s.contains(r.mul(a, c)));
            }
        }
        for g in gens {
            prop_assert!(s.contains(g));
        }
    }
}
