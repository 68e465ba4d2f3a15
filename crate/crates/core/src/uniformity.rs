//! Uniform torsion, exactness and finiteness relative to a multiplicative set,
//! each decided with replayable witnesses.

use std::sync::Arc;

use crate::error::{AlgError, Result};
use crate::finring::{Elem, MulSet, RingTable};
use crate::modcat::{submodule, ModuleHom, ModuleTable, Submodule};
use crate::report::{CheckReport, Named, Value};
use crate::Budget;

pub(crate) fn ring_named(name: impl Into<String>, ring: &RingTable, a: Elem) -> Named {
    Named::new(name, Value::Ring(a), ring.label(a))
}

pub(crate) fn module_named(name: impl Into<String>, m: &ModuleTable, x: Elem) -> Named {
    Named::new(name, Value::Module(x), m.label(x))
}

pub(crate) fn subset_named(name: impl Into<String>, labels: &[String], members: &[Elem]) -> Named {
    let parts: Vec<&str> = members.iter().map(|&x| labels[x].as_str()).collect();
    Named::new(name, Value::Subset(members.to_vec()), format!("{{{}}}", parts.join(",")))
}

fn check_ring(m: &ModuleTable, s: &MulSet) -> Result<()> {
    if m.ring().same_ring(s.ring()) {
        Ok(())
    } else {
        Err(AlgError::RingMismatch("module and multiplicative set over different rings".into()))
    }
}

/// First `s ∈ S` (in index order) with `s·X ⊆ Y`.
pub(crate) fn least_scaling_into(m: &ModuleTable, set: &MulSet, x: &[bool], y: &[bool]) -> Option<Elem> {
    set.members()
        .iter()
        .copied()
        .find(|&s| m.elements().all(|e| !x[e] || y[m.act(s, e)]))
}

/// First element of `X` with `s·e ∉ Y`.
fn escape(m: &ModuleTable, s: Elem, x: &[bool], y: &[bool]) -> Option<Elem> {
    m.elements().find(|&e| x[e] && !y[m.act(s, e)])
}

/// Least `s ∈ S` with `s·X ⊆ Y`, or per-`s` escaping elements.
fn uniform_scaling(m: &ModuleTable, set: &MulSet, x: &[bool], y: &[bool], name: &str, detail: &str) -> CheckReport {
    let ring = set.ring();
    match least_scaling_into(m, set, x, y) {
        Some(s) => CheckReport::pass(detail).with_witness(ring_named(name, ring, s)),
        None => set.members().iter().fold(CheckReport::fail(detail), |rep, &s| {
            let e = escape(m, s, x, y).expect("no s works");
            rep.with_counterexample(module_named(format!("{name}={}", ring.label(s)), m, e))
        }),
    }
}

fn all(m: &ModuleTable) -> Vec<bool> {
    vec![true; m.size()]
}

fn zero_mask(m: &ModuleTable) -> Vec<bool> {
    m.elements().map(|x| x == m.zero()).collect()
}

/// `∃ s ∈ S` with `s·M = 0`.
pub fn is_u_s_torsion(m: &ModuleTable, set: &MulSet) -> Result<CheckReport> {
    check_ring(m, set)?;
    Ok(uniform_scaling(m, set, &all(m), &zero_mask(m), "s", "u-S-torsion"))
}

/// `∀ m ∃ s ∈ S` with `s·m = 0`; the witness maps each element to its least `s`.
pub fn is_s_torsion(m: &ModuleTable, set: &MulSet) -> Result<CheckReport> {
    check_ring(m, set)?;
    let ring = set.ring();
    let mut rep = CheckReport::pass("S-torsion");
    for x in m.elements() {
        match set.members().iter().find(|&&s| m.act(s, x) == m.zero()) {
            Some(&s) => rep = rep.with_witness(ring_named(format!("s[{}]", m.label(x)), ring, s)),
            None => {
                return Ok(CheckReport::fail("S-torsion").with_counterexample(module_named("m", m, x)));
            }
        }
    }
    Ok(rep)
}

/// `s·m = 0` with `s ∈ S` forces `m = 0`.
pub fn is_s_torsionfree(m: &ModuleTable, set: &MulSet) -> Result<CheckReport> {
    check_ring(m, set)?;
    for &s in set.members() {
        if let Some(x) = m.elements().find(|&x| x != m.zero() && m.act(s, x) == m.zero()) {
            return Ok(CheckReport::fail("S-torsion-free")
                .with_counterexample(ring_named("s", set.ring(), s))
                .with_counterexample(module_named("m", m, x)));
        }
    }
    Ok(CheckReport::pass("S-torsion-free"))
}

/// `Σ_{s∈S} ann_M(s)`, the largest u-S-torsion submodule.
pub fn max_u_s_torsion_submodule(m: &Arc<ModuleTable>, set: &MulSet) -> Result<Submodule> {
    check_ring(m, set)?;
    let gens: Vec<Elem> = m
        .elements()
        .filter(|&x| set.members().iter().any(|&s| m.act(s, x) == m.zero()))
        .collect();
    Ok(submodule(m, &m.span(&gens)))
}

/// A composable pair `A --f--> B --g--> C`.
#[derive(Debug, Clone)]
pub struct SequenceCandidate {
    pub f: ModuleHom,
    pub g: ModuleHom,
}

impl SequenceCandidate {
    pub fn new(f: ModuleHom, g: ModuleHom) -> Result<Self> {
        if f.codomain().as_ref() != g.domain().as_ref() {
            return Err(AlgError::Invalid("sequence maps are not composable".into()));
        }
        Ok(SequenceCandidate { f, g })
    }

    pub fn a(&self) -> &Arc<ModuleTable> {
        self.f.domain()
    }

    pub fn b(&self) -> &Arc<ModuleTable> {
        self.f.codomain()
    }

    pub fn c(&self) -> &Arc<ModuleTable> {
        self.g.codomain()
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        self.b().ring()
    }
}

/// Least `s` with `s·Ker g ⊆ Im f` and `s·Im f ⊆ Ker g`.
pub fn check_u_s_exact(seq: &SequenceCandidate, set: &MulSet) -> Result<CheckReport> {
    let b = seq.b();
    check_ring(b, set)?;
    let ker = seq.g.kernel_mask();
    let im = seq.f.image_mask();
    let ring = set.ring();
    let detail = "u-S-exact at the middle";
    let good = set.members().iter().copied().find(|&s| {
        b.elements()
            .all(|e| (!ker[e] || im[b.act(s, e)]) && (!im[e] || ker[b.act(s, e)]))
    });
    Ok(match good {
        Some(s) => CheckReport::pass(detail).with_witness(ring_named("s", ring, s)),
        None => set.members().iter().fold(CheckReport::fail(detail), |rep, &s| {
            let e = escape(b, s, &ker, &im)
                .or_else(|| escape(b, s, &im, &ker))
                .expect("no s works");
            rep.with_counterexample(module_named(format!("s={}", ring.label(s)), b, e))
        }),
    })
}

/// u-S-mono / u-S-epi / u-S-iso classification with the least witnesses.
pub fn classify_hom(h: &ModuleHom, set: &MulSet) -> Result<CheckReport> {
    check_ring(h.domain(), set)?;
    let ring = set.ring();
    let d = h.domain();
    let c = h.codomain();
    let mono = least_scaling_into(d, set, &h.kernel_mask(), &zero_mask(d));
    let epi = least_scaling_into(c, set, &all(c), &h.image_mask());
    let iso = mono.is_some() && epi.is_some();
    let mut rep = if iso { CheckReport::pass("u-S-iso") } else { CheckReport::fail("u-S-iso") };
    if let Some(s) = mono {
        rep = rep.with_witness(ring_named("s_mono", ring, s));
    }
    if let Some(s) = epi {
        rep = rep.with_witness(ring_named("s_epi", ring, s));
    }
    Ok(rep
        .with_extra(Named::flag("u_s_mono", mono.is_some()))
        .with_extra(Named::flag("u_s_epi", epi.is_some()))
        .with_extra(Named::flag("u_s_iso", iso)))
}

/// Witnesses for `0 → A → B → C → 0` being u-S-exact at all three places:
/// `s_mono` for `f`, `s` at `B`, `s_epi` for `g`.
pub fn check_short_u_s_exact(seq: &SequenceCandidate, set: &MulSet) -> Result<CheckReport> {
    let mid = check_u_s_exact(seq, set)?;
    let f = classify_hom(&seq.f, set)?;
    let g = classify_hom(&seq.g, set)?;
    let ring = set.ring();
    let parts = (f.witness_elem("s_mono"), mid.witness_elem("s"), g.witness_elem("s_epi"));
    Ok(match parts {
        (Some(a), Some(s), Some(c)) => CheckReport::pass("short u-S-exact")
            .with_witness(ring_named("s_mono", ring, a))
            .with_witness(ring_named("s", ring, s))
            .with_witness(ring_named("s_epi", ring, c)),
        _ => {
            let mut rep = CheckReport::fail("short u-S-exact")
                .with_extra(Named::flag("mono", parts.0.is_some()))
                .with_extra(Named::flag("middle", parts.1.is_some()))
                .with_extra(Named::flag("epi", parts.2.is_some()));
            rep.counterexample = mid.counterexample;
            rep
        }
    })
}

/// Smallest `G` and least `s` with `s·M ⊆ ⟨G⟩`, ordered by `(|G|, G, s)`.
pub fn s_finite_witness(m: &ModuleTable, set: &MulSet, budget: &Budget) -> Result<CheckReport> {
    check_ring(m, set)?;
    let ring = set.ring();
    let everything = all(m);
    let nonzero: Vec<Elem> = m.elements().filter(|&x| x != m.zero()).collect();
    let mut attempts = 0usize;
    for t in 0..=nonzero.len() {
        let mut idx: Vec<usize> = (0..t).collect();
        loop {
            attempts += 1;
            if attempts > budget.max_search {
                return Err(AlgError::Budget {
                    what: "S-finite search",
                    needed: attempts,
                    limit: budget.max_search,
                });
            }
            let gens: Vec<Elem> = idx.iter().map(|&i| nonzero[i]).collect();
            let span = m.span(&gens);
            if let Some(s) = least_scaling_into(m, set, &everything, &span) {
                return Ok(CheckReport::pass("S-finite")
                    .with_witness(ring_named("s", ring, s))
                    .with_witness(subset_named("G", m.labels(), &gens)));
            }
            if !advance(&mut idx, nonzero.len()) {
                break;
            }
        }
    }
    unreachable!("the whole carrier generates with s = 1")
}

fn advance(idx: &mut [usize], n: usize) -> bool {
    let t = idx.len();
    for i in (0..t).rev() {
        if idx[i] < n - t + i {
            idx[i] += 1;
            for j in i + 1..t {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Generators and witness for `B` assembled from S-finite witnesses of `A`
/// and `C` and a middle witness `s`: `f(G_A)` plus least-index preimages of
/// `G_C`, with witness `s_A·s·s_C`.
pub fn compose_s_finite(
    seq: &SequenceCandidate,
    (s_a, g_a): (Elem, &[Elem]),
    (s_c, g_c): (Elem, &[Elem]),
    s: Elem,
) -> Option<(Vec<Elem>, Elem)> {
    let ring = seq.ring();
    let mut gens: Vec<Elem> = g_a.iter().map(|&x| seq.f.apply(x)).collect();
    for &y in g_c {
        gens.push(seq.b().elements().find(|&b| seq.g.apply(b) == y)?);
    }
    Some((gens, ring.mul(ring.mul(s_a, s), s_c)))
}

/// Replays `s·M ⊆ ⟨G⟩`.
pub fn replay_s_finite(m: &ModuleTable, s: Elem, gens: &[Elem]) -> bool {
    let span = m.span(gens);
    m.elements().all(|x| span[m.act(s, x)])
}

/// Replays `s·X = 0` for a whole module.
pub fn kills_module(m: &ModuleTable, s: Elem) -> bool {
    m.elements().all(|x| m.act(s, x) == m.zero())
}
