mod common;

use std::sync::Arc;

use proptest::prelude::*;
use usalg_core::modcat::{all_submodules, module_ideal, quotient_module, submodule};
use usalg_core::*;

/// Regular module, every cyclic module, every ideal, and a few sums.
fn corpus_modules(r: &Arc<RingTable>) -> Vec<Arc<ModuleTable>> {
    let b = Budget::default();
    let ideals = all_ideals(r, &b).unwrap();
    let mut out = vec![module_from_ring(r)];
    for i in &ideals {
        out.push(module_cyclic(i).module);
        out.push(module_ideal(i).module);
    }
    let first = module_cyclic(&ideals[ideals.len() / 2]).module;
    if let Ok(s) = direct_sum(&first, &out[0], &b) {
        out.push(s.module);
    }
    out
}

#[test]
fn s_torsion_agrees_with_uniform_torsion() {
    for r in common::rings() {
        for set in common::mulsets(&r) {
            for m in corpus_modules(&r) {
                let u = is_u_s_torsion(&m, &set).unwrap();
                let p = is_s_torsion(&m, &set).unwrap();
                assert_eq!(u.verdict, p.verdict);
                if let Some(s) = u.witness_elem("s") {
                    assert!(kills_module(&m, s));
                }
            }
        }
    }
}

#[test]
fn maximal_torsion_submodule_contains_every_torsion_submodule() {
    let b = Budget::default();
    for r in common::rings() {
        for set in common::mulsets(&r) {
            for m in corpus_modules(&r).into_iter().filter(|m| m.size() <= 64) {
                let max = max_u_s_torsion_submodule(&m, &set).unwrap();
                assert!(is_u_s_torsion(&max.module, &set).unwrap().verdict);
                let in_max = max.inclusion.image_mask();
                for mask in all_submodules(&m, &b).unwrap() {
                    let sub = submodule(&m, &mask);
                    if is_u_s_torsion(&sub.module, &set).unwrap().verdict {
                        assert!(m.elements().all(|x| !mask[x] || in_max[x]));
                    }
                }
            }
        }
    }
}

#[test]
fn hom_vanishing_matches_torsion_freeness() {
    let b = Budget::default();
    for r in common::rings().into_iter().filter(|r| r.size() <= 8) {
        for set in common::mulsets(&r) {
            let modules = corpus_modules(&r);
            let torsion: Vec<Arc<ModuleTable>> = modules
                .iter()
                .map(|m| max_u_s_torsion_submodule(m, &set).unwrap().module)
                .chain(modules.iter().filter(|m| is_u_s_torsion(m, &set).unwrap().verdict).cloned())
                .collect();
            for f in &modules {
                let free = is_s_torsionfree(f, &set).unwrap().verdict;
                let vanish = torsion
                    .iter()
                    .all(|t| hom_enumerate(t, f, &b).unwrap().iter().all(ModuleHom::is_zero));
                assert_eq!(free, vanish, "{} {:?}", r.provenance(), set.members());
            }
        }
    }
}

/// `0 → N → B → B/N → 0` for a random submodule `N`.
fn sequence(b_mod: &Arc<ModuleTable>, gen: usize) -> SequenceCandidate {
    let mask = b_mod.span(&[gen % b_mod.size()]);
    let sub = submodule(b_mod, &mask);
    let quo = quotient_module(b_mod, &mask);
    SequenceCandidate::new(sub.inclusion, quo.projection).unwrap()
}

fn arb_case() -> impl Strategy<Value = (Arc<RingTable>, MulSet, Arc<ModuleTable>, usize)> {
    (0..common::rings().len(), 0usize..64, 0usize..64, 0usize..64).prop_map(|(ri, si, mi, g)| {
        let r = common::rings().swap_remove(ri);
        let sets = common::mulsets(&r);
        let set = sets[si % sets.len()].clone();
        let mods = corpus_modules(&r);
        let m = Arc::clone(&mods[mi % mods.len()]);
        (r, set, m, g)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn two_of_three_witness_arithmetic((r, set, b_mod, g) in arb_case()) {
        let seq = sequence(&b_mod, g);
        let short = check_short_u_s_exact(&seq, &set).unwrap();
        prop_assert!(short.verdict);
        let s = short.witness_elem("s").unwrap();
        let s1 = short.witness_elem("s_mono").unwrap();
        let s2 = short.witness_elem("s_epi").unwrap();
        let _ = (s1, s2);
        if let Some(sb) = is_u_s_torsion(seq.b(), &set).unwrap().witness_elem("s") {
            prop_assert!(kills_module(seq.a(), r.mul(sb, s1)));
            prop_assert!(kills_module(seq.c(), r.mul(sb, s2)));
        }
        let ta = is_u_s_torsion(seq.a(), &set).unwrap().witness_elem("s");
        let tc = is_u_s_torsion(seq.c(), &set).unwrap().witness_elem("s");
        if let (Some(a), Some(c)) = (ta, tc) {
            prop_assert!(kills_module(seq.b(), r.mul(r.mul(a, s), c)));
        }
    }

    #[test]
    fn s_finite_witnesses_compose((_r, set, b_mod, g) in arb_case()) {
        let bud = Budget::default();
        let seq = sequence(&b_mod, g);
        let s = check_u_s_exact(&seq, &set).unwrap().witness_elem("s").unwrap();
        let wa = s_finite_witness(seq.a(), &set, &bud).unwrap();
        let wc = s_finite_witness(seq.c(), &set, &bud).unwrap();
        let gens = |rep: &CheckReport| match &rep.witness("G").unwrap().value {
            Value::Subset(v) => v.clone(),
            _ => unreachable!(),
        };
        let (ga, gc) = (gens(&wa), gens(&wc));
        prop_assert!(replay_s_finite(seq.a(), wa.witness_elem("s").unwrap(), &ga));
        let (gb, sb) = compose_s_finite(
            &seq,
            (wa.witness_elem("s").unwrap(), &ga),
            (wc.witness_elem("s").unwrap(), &gc),
            s,
        )
        .unwrap();
        prop_assert!(replay_s_finite(seq.b(), sb, &gb));
    }

    #[test]
    fn reports_replay((r, set, m, g) in arb_case()) {
        let rep = is_u_s_torsion(&m, &set).unwrap();
        if rep.verdict {
            prop_assert!(kills_module(&m, rep.witness_elem("s").unwrap()));
        } else {
            for c in &rep.counterexample {
                let s = r.find_label(c.name.trim_start_matches("s=")).unwrap();
                let Value::Module(x) = c.value else { unreachable!() };
                prop_assert_ne!(m.act(s, x), m.zero());
            }
        }
        let rep = is_s_torsionfree(&m, &set).unwrap();
        if !rep.verdict {
            let s = rep.counterexample("s").unwrap().ring_elem().unwrap();
            let Value::Module(x) = rep.counterexample("m").unwrap().value else { unreachable!() };
            prop_assert!(x != m.zero() && m.act(s, x) == m.zero());
        }
        let h = ModuleHom::scalar(&m, r.elements().nth(g % r.size()).unwrap());
        let c = classify_hom(&h, &set).unwrap();
        if let Some(s) = c.witness_elem("s_mono") {
            let ker = h.kernel_mask();
            prop_assert!(m.elements().all(|x| !ker[x] || m.act(s, x) == m.zero()));
        }
        if let Some(s) = c.witness_elem("s_epi") {
            let im = h.image_mask();
            prop_assert!(m.elements().all(|x| im[m.act(s, x)]));
        }
    }
}
