use std::sync::Arc;

use super::localize::localize_ring;
use crate::error::Result;
use crate::finring::{idempotents, Elem, MulSet, RingTable};
use crate::ideal::{all_ideals, principal_ideal, spectrum, Ideal};
use crate::report::{CheckReport, Named, Value};
use crate::uniformity::ring_named;
use crate::Budget;

/// Outcome of a (u-S-)von Neumann regularity search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VnrCertificate {
    pub verdict: bool,
    pub uniform_s: Option<Elem>,
    /// `section[a] = r` with `s·a = r·a²`; empty when the verdict is false.
    pub section: Vec<Elem>,
    pub counterexample_a: Option<Elem>,
    /// Set when `S` contained a nilpotent and `s = 0` was taken directly.
    pub nilpotent_shortcut: bool,
}

impl VnrCertificate {
    /// Re-checks `s·a = r·a²` for every stored pair, or that the
    /// counterexample has no `r` for `s = 1`.
    pub fn replay(&self, ring: &RingTable) -> bool {
        match (self.verdict, self.uniform_s) {
            (true, Some(s)) => {
                self.section.len() == ring.size()
                    && ring
                        .elements()
                        .all(|a| ring.mul(s, a) == ring.mul(self.section[a], ring.mul(a, a)))
            }
            (false, _) => self
                .counterexample_a
                .is_some_and(|a| section_entry(ring, ring.one(), a).is_none()),
            _ => false,
        }
    }

    pub fn to_report(&self, ring: &RingTable, detail: &str) -> CheckReport {
        let mut rep = if self.verdict {
            CheckReport::pass(detail)
        } else {
            CheckReport::fail(detail)
        };
        if let Some(s) = self.uniform_s {
            rep = rep.with_witness(ring_named("s", ring, s));
        }
        if let Some(a) = self.counterexample_a {
            rep = rep.with_counterexample(ring_named("a", ring, a));
        }
        if self.nilpotent_shortcut {
            rep = rep.with_extra(Named::flag("nilpotent_shortcut", true));
        }
        rep
    }
}

/// Least `r` with `s·a = r·a²`.
fn section_entry(ring: &RingTable, s: Elem, a: Elem) -> Option<Elem> {
    let target = ring.mul(s, a);
    let sq = ring.mul(a, a);
    ring.elements().find(|&r| ring.mul(r, sq) == target)
}

fn section_for(ring: &RingTable, s: Elem) -> std::result::Result<Vec<Elem>, Elem> {
    ring.elements()
        .map(|a| section_entry(ring, s, a).ok_or(a))
        .collect()
}

pub fn is_vnr(ring: &RingTable) -> VnrCertificate {
    match section_for(ring, ring.one()) {
        Ok(section) => VnrCertificate {
            verdict: true,
            uniform_s: Some(ring.one()),
            section,
            counterexample_a: None,
            nilpotent_shortcut: false,
        },
        Err(a) => VnrCertificate {
            verdict: false,
            uniform_s: None,
            section: Vec::new(),
            counterexample_a: Some(a),
            nilpotent_shortcut: false,
        },
    }
}

/// Scans `s ∈ S` in index order for one admitting a full section.
///
/// When nothing works, the counterexample is the least `a` that fails for
/// every `s`, falling back to the one failing for `s = 1`.
pub fn is_u_s_vnr(ring: &RingTable, set: &MulSet) -> VnrCertificate {
    if set.members().iter().any(|&s| ring.nilpotency_index(s).is_some()) {
        return VnrCertificate {
            verdict: true,
            uniform_s: Some(ring.zero()),
            section: vec![ring.zero(); ring.size()],
            counterexample_a: None,
            nilpotent_shortcut: true,
        };
    }
    let mut fails_all = vec![true; ring.size()];
    for &s in set.members() {
        match section_for(ring, s) {
            Ok(section) => {
                return VnrCertificate {
                    verdict: true,
                    uniform_s: Some(s),
                    section,
                    counterexample_a: None,
                    nilpotent_shortcut: false,
                }
            }
            Err(_) => {
                for a in ring.elements() {
                    if section_entry(ring, s, a).is_some() {
                        fails_all[a] = false;
                    }
                }
            }
        }
    }
    let a = ring
        .elements()
        .find(|&a| fails_all[a])
        .or_else(|| section_for(ring, ring.one()).err());
    VnrCertificate {
        verdict: false,
        uniform_s: None,
        section: Vec::new(),
        counterexample_a: a,
        nilpotent_shortcut: false,
    }
}

/// Idempotent S-generation of principal ideals and of all ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentGenerationReport {
    pub uniform_s: Option<Elem>,
    /// The `s` whose data is shown: the uniform one, or the one with fewest
    /// failures.
    pub attempted_s: Elem,
    /// `a ↦ e_a` with `s·⟨a⟩ ⊆ ⟨e_a⟩ ⊆ ⟨a⟩`.
    pub assignments: Vec<(Elem, Elem)>,
    pub failures: Vec<Elem>,
    /// Same search over every ideal, by position in `all_ideals`.
    pub ideals_uniform_s: Option<Elem>,
    pub ideal_assignments: Vec<(usize, Elem)>,
    pub ideal_failures: Vec<usize>,
}

impl IdempotentGenerationReport {
    pub fn principal_ok(&self) -> bool {
        self.uniform_s.is_some()
    }

    pub fn ideals_ok(&self) -> bool {
        self.ideals_uniform_s.is_some()
    }
}

/// Least idempotent `e ∈ I` with `s·I ⊆ ⟨e⟩`.
fn generating_idempotent(ring: &Arc<RingTable>, idems: &[Elem], s: Elem, i: &Ideal) -> Option<Elem> {
    idems.iter().copied().find(|&e| {
        i.contains(e) && {
            let pe = principal_ideal(ring, e);
            i.members().iter().all(|&a| pe.contains(ring.mul(s, a)))
        }
    })
}

type Assigned<K> = Vec<(K, Elem)>;
type Search<K> = (Option<Elem>, Elem, Assigned<K>, Vec<K>);

fn search<K: Copy>(ring: &Arc<RingTable>, set: &MulSet, items: &[(K, Ideal)]) -> Search<K> {
    let idems = idempotents(ring);
    // Fewest failures so far, with the data for that `s`.
    let mut best: Option<(usize, Elem, Assigned<K>, Vec<K>)> = None;
    for &s in set.members() {
        let mut assigned = Vec::new();
        let mut failed = Vec::new();
        for (k, i) in items {
            match generating_idempotent(ring, &idems, s, i) {
                Some(e) => assigned.push((*k, e)),
                None => failed.push(*k),
            }
        }
        if failed.is_empty() {
            return (Some(s), s, assigned, failed);
        }
        if best.as_ref().is_none_or(|b| failed.len() < b.0) {
            best = Some((failed.len(), s, assigned, failed));
        }
    }
    let (_, s, a, f) = best.expect("S is nonempty");
    (None, s, a, f)
}

pub fn idempotent_s_generation(ring: &Arc<RingTable>, set: &MulSet, budget: &Budget) -> Result<IdempotentGenerationReport> {
    let principal: Vec<(Elem, Ideal)> = ring.elements().map(|a| (a, principal_ideal(ring, a))).collect();
    let (uniform_s, attempted_s, assignments, failures) = search(ring, set, &principal);
    let ideals: Vec<(usize, Ideal)> = all_ideals(ring, budget)?.into_iter().enumerate().collect();
    let (ideals_uniform_s, _, ideal_assignments, ideal_failures) = search(ring, set, &ideals);
    Ok(IdempotentGenerationReport {
        uniform_s,
        attempted_s,
        assignments,
        failures,
        ideals_uniform_s,
        ideal_assignments,
        ideal_failures,
    })
}

/// Pointwise `∀a ∃s ∃r: s·a = r·a²` against `is_vnr(R_S)`; the verdict is
/// their agreement, with both sides in `pointwise` and `localized_vnr`.
pub fn check_localized_vnr(ring: &RingTable, set: &MulSet) -> Result<CheckReport> {
    let mut rep = CheckReport::default();
    let mut pointwise = true;
    for a in ring.elements() {
        match set.members().iter().find_map(|&s| section_entry(ring, s, a).map(|r| (s, r))) {
            Some((s, r)) => {
                rep = rep
                    .with_witness(ring_named(format!("s[{}]", ring.label(a)), ring, s))
                    .with_witness(ring_named(format!("r[{}]", ring.label(a)), ring, r));
            }
            None => {
                pointwise = false;
                rep = rep.with_extra(ring_named("failing_a", ring, a));
            }
        }
    }
    if !pointwise {
        rep.witness.clear();
    }
    let loc = localize_ring(set)?;
    let localized = is_vnr(&loc.ring).verdict;
    rep.verdict = pointwise == localized;
    rep.detail = "pointwise condition iff R_S von Neumann regular".into();
    Ok(rep
        .with_extra(Named::flag("pointwise", pointwise))
        .with_extra(Named::flag("localized_vnr", localized))
        .with_extra(Named::count("localized_size", loc.ring.size())))
}

/// `R` is vNr iff it is u-(R∖𝔪)-vNr for every maximal `𝔪`.
pub fn check_local_vnr(ring: &Arc<RingTable>, budget: &Budget) -> Result<CheckReport> {
    let spec = spectrum(ring, budget)?;
    let vnr = is_vnr(ring).verdict;
    let mut all_local = true;
    let mut rep = CheckReport::default();
    for mx in spec.maximal_ideals() {
        let set = MulSet::new(Arc::clone(ring), ring.elements().filter(|&a| !mx.contains(a)))?;
        let local = is_u_s_vnr(ring, &set);
        all_local &= local.verdict;
        rep = rep.with_extra(Named::flag(format!("local[{mx}]"), local.verdict));
        if !local.verdict {
            rep = rep.with_extra(Named::new("failing_m", Value::Subset(mx.members().to_vec()), mx.to_string()));
        }
    }
    rep.verdict = vnr == all_local;
    rep.detail = "vNr iff u-m-vNr for all maximal m".into();
    Ok(rep
        .with_extra(Named::flag("vnr", vnr))
        .with_extra(Named::flag("all_local", all_local)))
}
