mod common;

use std::sync::Arc;

use proptest::prelude::*;
use usalg_core::modcat::{free_module, module_ideal, quotient_module, submodule};
use usalg_core::*;

fn cyclic(i: &Ideal) -> Arc<ModuleTable> {
    module_cyclic(i).module
}

fn iso(a: &Arc<ModuleTable>, b: &Arc<ModuleTable>) -> bool {
    find_module_isomorphism(a, b, &Budget::default()).unwrap().is_some()
}

#[test]
fn tor_matches_cyclic_oracle_on_small_rings() {
    let b = Budget::default();
    for r in [common::z(8), common::z(12), common::product(2, 4), common::example().0] {
        let ideals = all_ideals(&r, &b).unwrap();
        for i in &ideals {
            for j in &ideals {
                let t = tor(1, &cyclic(i), &cyclic(j), &b).unwrap();
                let o = tor1_cyclic_oracle(i, j).unwrap();
                assert!(iso(&t, &o), "{} {} {}", r.provenance(), i, j);
            }
        }
    }
}

#[test]
fn tor_is_symmetric_on_cyclic_pairs() {
    let b = Budget::default();
    for r in [common::z(12), common::product(2, 4), common::dual_numbers()] {
        let ideals = all_ideals(&r, &b).unwrap();
        for i in &ideals {
            for j in &ideals {
                let (m, n) = (cyclic(i), cyclic(j));
                assert!(iso(&tor(1, &m, &n, &b).unwrap(), &tor(1, &n, &m, &b).unwrap()));
            }
        }
    }
}

#[test]
fn cyclic_tensor_matches_sum_of_ideals() {
    let b = Budget::default();
    for r in common::rings() {
        let ideals = all_ideals(&r, &b).unwrap();
        for i in &ideals {
            for j in &ideals {
                let t = tensor(&cyclic(i), &cyclic(j), &b).unwrap();
                t.module.audit().unwrap();
                let sum = ideal_combine(Combine::Sum, i, j).unwrap();
                assert!(iso(&t.module, &cyclic(&sum)));
            }
        }
    }
}

#[test]
fn higher_tor_of_free_modules_vanishes() {
    let b = Budget::default();
    for r in [common::z(4), common::z(6), common::example().0] {
        let f = free_module(&r, 1, &b).unwrap();
        for i in all_ideals(&r, &b).unwrap() {
            for n in 1..=3 {
                assert!(tor(n, &f, &cyclic(&i), &b).unwrap().is_zero_module());
            }
        }
    }
}

#[test]
fn presentation_kernels_are_exact() {
    let b = Budget::default();
    for r in common::rings() {
        for i in all_ideals(&r, &b).unwrap() {
            let m = cyclic(&i);
            let p = presentation(&m, &b).unwrap();
            assert!(p.evaluation.is_surjective());
            let kernel: Vec<usize> = p.relations.inclusion.map().to_vec();
            let expected: Vec<usize> = p.free.elements().filter(|&x| p.evaluation.apply(x) == m.zero()).collect();
            assert_eq!(kernel, expected);
        }
    }
}

fn arb_ring() -> impl Strategy<Value = Arc<RingTable>> {
    (0..common::rings().len()).prop_map(|i| common::rings().swap_remove(i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constructed_modules_pass_audit(r in arb_ring(), a in 0usize..64, c in 0usize..64) {
        let b = Budget::default();
        let ideals = all_ideals(&r, &b).unwrap();
        let i = &ideals[a % ideals.len()];
        let j = &ideals[c % ideals.len()];
        let m = cyclic(i);
        let n = module_ideal(j).module;
        m.audit().unwrap();
        n.audit().unwrap();
        let s = direct_sum(&m, &n, &b).unwrap();
        s.module.audit().unwrap();
        prop_assert_eq!(s.module.size(), m.size() * n.size());
        tensor(&m, &n, &b).unwrap().module.audit().unwrap();
    }

    #[test]
    fn tensor_is_right_exact(r in arb_ring(), a in 0usize..64, c in 0usize..64, f in 0usize..64) {
        // A -> B -> C -> 0 with B = R/J, A = image of I in B, C = cokernel
        let b = Budget::default();
        let ideals = all_ideals(&r, &b).unwrap();
        let big = cyclic(&ideals[a % ideals.len()]);
        let i = &ideals[c % ideals.len()];
        let f_mod = cyclic(&ideals[f % ideals.len()]);
        let x = r.elements().find(|&x| i.contains(x) && x != r.zero()).unwrap_or(r.zero());
        let span = big.span(&[big.act(x, 1.min(big.size() - 1))]);
        let sub = submodule(&big, &span);
        let quo = quotient_module(&big, &span);
        let parts = hom_parts(&sub.inclusion);
        prop_assert!(parts.kernel.module.is_zero_module());
        let tb = tensor(&big, &f_mod, &b).unwrap();
        let tc = tensor(&quo.module, &f_mod, &b).unwrap();
        let id: Vec<usize> = f_mod.elements().collect();
        let map = tb.induced(&tc, quo.projection.map(), &id);
        let mut hit = vec![false; tc.module.size()];
        for y in map {
            hit[y] = true;
        }
        prop_assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn induced_maps_respect_pure_tensors(r in arb_ring(), a in 0usize..64, c in 0usize..64) {
        let b = Budget::default();
        let ideals = all_ideals(&r, &b).unwrap();
        let i = &ideals[a % ideals.len()];
        let n = cyclic(&ideals[c % ideals.len()]);
        let sub = module_ideal(i);
        let ts = tensor(&sub.module, &n, &b).unwrap();
        let tr = tensor(&module_from_ring(&r), &n, &b).unwrap();
        let id: Vec<usize> = n.elements().collect();
        let map = ts.induced(&tr, sub.inclusion.map(), &id);
        ModuleHom::new(Arc::clone(&ts.module), Arc::clone(&tr.module), map.clone()).unwrap();
        for x in sub.module.elements() {
            for y in n.elements() {
                prop_assert_eq!(map[ts.pure(x, y)], tr.pure(sub.inclusion.apply(x), y));
            }
        }
    }

    #[test]
    fn hom_counts_match_regular_rule(r in arb_ring(), a in 0usize..64) {
        let b = Budget::default();
        let ideals = all_ideals(&r, &b).unwrap();
        let m = cyclic(&ideals[a % ideals.len()]);
        let homs = hom_enumerate(&module_from_ring(&r), &m, &b).unwrap();
        prop_assert_eq!(homs.len(), m.size());
        for h in &homs {
            prop_assert!(h.validate().is_ok());
        }
    }
}
