use std::sync::Arc;

use crate::error::{AlgError, Result};
use crate::finring::{Elem, MulSet};
use crate::ideal::{all_ideals, spectrum, Ideal};
use crate::modcat::{module_cyclic, tensor, tor, ModuleHom, ModuleTable};
use crate::report::{CheckReport, Named, Value};
use crate::uniformity::{check_short_u_s_exact, ring_named, SequenceCandidate};
use crate::Budget;

fn ideal_named(name: impl Into<String>, i: &Ideal) -> Named {
    Named::new(name, Value::Subset(i.members().to_vec()), i.to_string())
}

/// `Tor₁(R/I, M)` for every ideal `I`, in ideal order.
pub fn cyclic_tors(m: &Arc<ModuleTable>, budget: &Budget) -> Result<Vec<(Ideal, Arc<ModuleTable>)>> {
    all_ideals(m.ring(), budget)?
        .into_iter()
        .map(|i| {
            let t = tor(1, &module_cyclic(&i).module, m, budget)?;
            Ok((i, t))
        })
        .collect()
}

/// Flat iff `Tor₁(R/I, M) = 0` for every ideal `I`.
pub fn is_flat(m: &Arc<ModuleTable>, budget: &Budget) -> Result<CheckReport> {
    for (i, t) in cyclic_tors(m, budget)? {
        if !t.is_zero_module() {
            return Ok(CheckReport::fail("flat")
                .with_counterexample(ideal_named("I", &i))
                .with_extra(Named::count("tor_size", t.size())));
        }
    }
    Ok(CheckReport::pass("flat"))
}

fn kills(t: &ModuleTable, s: Elem) -> bool {
    t.elements().all(|x| t.act(s, x) == t.zero())
}

/// Least `s ∈ S` with `s·Tor₁(R/I, M) = 0` for all ideals `I` at once.
pub fn is_u_s_flat(m: &Arc<ModuleTable>, set: &MulSet, budget: &Budget) -> Result<CheckReport> {
    if !m.ring().same_ring(set.ring()) {
        return Err(AlgError::RingMismatch("module and multiplicative set over different rings".into()));
    }
    let tors = cyclic_tors(m, budget)?;
    let ring = set.ring();
    let detail = "u-S-flat";
    let good = set
        .members()
        .iter()
        .copied()
        .find(|&s| tors.iter().all(|(_, t)| kills(t, s)));
    Ok(match good {
        Some(s) => CheckReport::pass(detail)
            .with_witness(ring_named("s", ring, s))
            .with_extra(Named::count("ideals", tors.len())),
        None => set.members().iter().fold(CheckReport::fail(detail), |rep, &s| {
            let (i, _) = tors.iter().find(|(_, t)| !kills(t, s)).expect("no s works");
            rep.with_counterexample(ideal_named(format!("I[s={}]", ring.label(s)), i))
        }),
    })
}

/// Tensors a short u-S-exact sequence with `M` and checks the result.
///
/// Fails with a precondition error when the input sequence itself is not
/// short u-S-exact.
pub fn tensor_sequence_check(
    seq: &SequenceCandidate,
    m: &Arc<ModuleTable>,
    set: &MulSet,
    budget: &Budget,
) -> Result<CheckReport> {
    let input = check_short_u_s_exact(seq, set)?;
    if !input.verdict {
        return Err(AlgError::Precondition("sequence is not short u-S-exact".into()));
    }
    let ta = tensor(seq.a(), m, budget)?;
    let tb = tensor(seq.b(), m, budget)?;
    let tc = tensor(seq.c(), m, budget)?;
    let id: Vec<Elem> = m.elements().collect();
    let f = ModuleHom::new_unchecked(Arc::clone(&ta.module), Arc::clone(&tb.module), ta.induced(&tb, seq.f.map(), &id))?;
    let g = ModuleHom::new_unchecked(Arc::clone(&tb.module), Arc::clone(&tc.module), tb.induced(&tc, seq.g.map(), &id))?;
    let out = check_short_u_s_exact(&SequenceCandidate::new(f, g)?, set)?;
    let ring = set.ring();
    let mut rep = CheckReport {
        detail: "tensored sequence u-S-exact".into(),
        ..out
    };
    if let (Some(a), Some(s), Some(c)) = (rep.witness_elem("s_mono"), rep.witness_elem("s"), rep.witness_elem("s_epi")) {
        rep = rep.with_witness(ring_named("product", ring, ring.mul(ring.mul(a, s), c)));
    }
    Ok(rep)
}

/// `M` is flat iff it is u-(R∖𝔪)-flat for every maximal `𝔪`.
///
/// The verdict records whether both sides agree; `flat`, `all_local` and one
/// flag per maximal ideal carry the two sides.
pub fn check_local_flat(m: &Arc<ModuleTable>, budget: &Budget) -> Result<CheckReport> {
    let ring = m.ring();
    let spec = spectrum(ring, budget)?;
    let flat = is_flat(m, budget)?.verdict;
    let mut all_local = true;
    let mut rep = CheckReport::default();
    for mx in spec.maximal_ideals() {
        let set = MulSet::new(Arc::clone(ring), ring.elements().filter(|&a| !mx.contains(a)))?;
        let local = is_u_s_flat(m, &set, budget)?;
        all_local &= local.verdict;
        rep = rep.with_extra(Named::flag(format!("local[{mx}]"), local.verdict));
        if !local.verdict {
            rep = rep.with_extra(ideal_named("failing_m", mx));
        }
    }
    rep.verdict = flat == all_local;
    rep.detail = "flat iff u-m-flat for all maximal m".into();
    Ok(rep
        .with_extra(Named::flag("flat", flat))
        .with_extra(Named::flag("all_local", all_local)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{mulclose, zmod, RingTable};
    use crate::ideal::principal_ideal;
    use crate::modcat::{free_module, module_from_ring, module_ideal};

    fn z(n: usize) -> Arc<RingTable> {
        Arc::new(zmod(n, &Budget::default()).unwrap())
    }

    #[test]
    fn flatness_over_z4() {
        let b = Budget::default();
        let r = z(4);
        assert!(is_flat(&free_module(&r, 2, &b).unwrap(), &b).unwrap().verdict);
        let m = module_cyclic(&principal_ideal(&r, 2)).module;
        let rep = is_flat(&m, &b).unwrap();
        assert!(!rep.verdict);
        assert_eq!(rep.counterexample("I").unwrap().value, Value::Subset(vec![0, 2]));
        assert!(!is_u_s_flat(&m, &mulclose(&r, &[]), &b).unwrap().verdict);
        let loc = check_local_flat(&m, &b).unwrap();
        assert!(loc.verdict);
        assert_eq!(loc.extra_flag("local[<2>]"), Some(false));
    }

    #[test]
    fn fields_and_direct_factors() {
        let b = Budget::default();
        let f = z(5);
        assert!(is_flat(&module_from_ring(&f), &b).unwrap().verdict);
        let r = z(6);
        let m = module_cyclic(&principal_ideal(&r, 2)).module;
        let loc = check_local_flat(&m, &b).unwrap();
        assert!(loc.verdict);
        assert_eq!(loc.extra_flag("flat"), Some(true));
        assert_eq!(loc.extra_flag("all_local"), Some(true));
    }

    #[test]
    fn torsion_modules_are_u_s_flat() {
        let b = Budget::default();
        let r = z(4);
        let set = mulclose(&r, &[2]);
        let m = module_cyclic(&principal_ideal(&r, 2)).module;
        let rep = is_u_s_flat(&m, &set, &b).unwrap();
        assert!(rep.verdict);
    }

    #[test]
    fn tensoring_exact_sequences() {
        let b = Budget::default();
        let r = z(4);
        let set = mulclose(&r, &[]);
        let i = principal_ideal(&r, 2);
        let seq = SequenceCandidate::new(module_ideal(&i).inclusion, module_cyclic(&i).projection).unwrap();
        let free = module_from_ring(&r);
        let rep = tensor_sequence_check(&seq, &free, &set, &b).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.witness_elem("s"), Some(1));
        let quo = module_cyclic(&i).module;
        assert!(!tensor_sequence_check(&seq, &quo, &set, &b).unwrap().verdict);
        let bad = SequenceCandidate::new(
            ModuleHom::zero(&module_ideal(&i).module, &free).unwrap(),
            module_cyclic(&i).projection,
        )
        .unwrap();
        assert!(matches!(tensor_sequence_check(&bad, &quo, &set, &b), Err(AlgError::Precondition(_))));
    }
}
