//! Invariant suites run by `verify` and by the acceptance tests.
//!
//! A [`RingCase`] bundles a ring with its multiplicative sets, a module corpus
//! and a sequence corpus. Every case is completed with the regular module,
//! each `R/I`, each ideal `I`, and each sequence `0 → I → R → R/I → 0`.

use std::cell::OnceCell;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use usalg_core::modcat::{all_submodules, module_ideal, quotient_module, submodule};
use usalg_core::*;

use crate::env::Environment;
use crate::parse::parse_script;
use crate::report::{SuiteResult, SuiteStatus};

/// Scripts shipped with the tool; together they form the standard corpus.
pub const CORPUS: &[(&str, &str)] = &[
    ("example", include_str!("../corpus/example.ring")),
    ("cyclic", include_str!("../corpus/cyclic.ring")),
    ("small", include_str!("../corpus/small.ring")),
    ("field", include_str!("../corpus/field.ring")),
];

/// How multiplicative sets are chosen for rings of a script.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetChoice {
    /// Declared sets, or `{1}` when a ring has none.
    Declared,
    /// Declared sets plus the closure of every single element.
    Singletons,
}

#[derive(Debug, Clone)]
pub struct RingCase {
    pub name: String,
    pub ring: Arc<RingTable>,
    pub sets: Vec<(String, MulSet)>,
    pub modules: Vec<(String, Arc<ModuleTable>)>,
    pub sequences: Vec<(String, SequenceCandidate)>,
    pub ideals: Vec<Ideal>,
    /// `modules[cyclic[i]]` is `R/ideals[i]`.
    pub cyclic: Vec<usize>,
    /// Indices into `sequences` of `0 → I → R → R/I → 0`, one per ideal.
    pub ideal_sequences: Vec<usize>,
}

fn push_set(sets: &mut Vec<(String, MulSet)>, name: String, set: MulSet) {
    if !sets.iter().any(|(_, s)| s == &set) {
        sets.push((name, set));
    }
}

fn push_module(mods: &mut Vec<(String, Arc<ModuleTable>)>, name: String, m: Arc<ModuleTable>) -> usize {
    match mods.iter().position(|(_, x)| x.as_ref() == m.as_ref()) {
        Some(i) => i,
        None => {
            mods.push((name, m));
            mods.len() - 1
        }
    }
}

impl RingCase {
    /// A case with the given sets and declared modules, completed with the
    /// ideal corpus.
    pub fn new(
        name: &str,
        ring: Arc<RingTable>,
        sets: Vec<(String, MulSet)>,
        modules: Vec<(String, Arc<ModuleTable>)>,
        sequences: Vec<(String, SequenceCandidate)>,
        budget: &Budget,
    ) -> Result<Self> {
        let ideals = all_ideals(&ring, budget)?;
        let mut mods = Vec::new();
        for (n, m) in modules {
            push_module(&mut mods, n, m);
        }
        let regular = module_from_ring(&ring);
        push_module(&mut mods, name.to_string(), Arc::clone(&regular));
        let mut cyclic = Vec::new();
        let mut seqs = sequences;
        let mut ideal_sequences = Vec::new();
        for i in &ideals {
            let q = module_cyclic(i);
            let s = module_ideal(i);
            cyclic.push(push_module(&mut mods, format!("{name}/{i}"), Arc::clone(&q.module)));
            push_module(&mut mods, format!("{i}"), Arc::clone(&s.module));
            ideal_sequences.push(seqs.len());
            seqs.push((format!("0->{i}->{name}->{name}/{i}->0"), SequenceCandidate::new(s.inclusion, q.projection)?));
        }
        Ok(RingCase {
            name: name.to_string(),
            ring,
            sets,
            modules: mods,
            sequences: seqs,
            ideals,
            cyclic,
            ideal_sequences,
        })
    }
}

/// One case per distinct ring of the environment.
pub fn cases_from_environment(env: &Environment, choice: SetChoice) -> Result<Vec<RingCase>> {
    let mut out: Vec<RingCase> = Vec::new();
    let mut seen: Vec<Arc<RingTable>> = Vec::new();
    for (name, entry) in env.rings() {
        if seen.iter().any(|r| Arc::ptr_eq(r, &entry.ring)) {
            continue;
        }
        seen.push(Arc::clone(&entry.ring));
        let ring = Arc::clone(&entry.ring);
        let mut sets = Vec::new();
        for (n, _, s) in env.mulsets().filter(|(_, r, _)| Arc::ptr_eq(&r.ring, &ring)) {
            push_set(&mut sets, n.to_string(), s.clone());
        }
        if choice == SetChoice::Singletons {
            for a in ring.elements() {
                push_set(&mut sets, format!("close({})", ring.label(a)), mulclose(&ring, &[a]));
            }
        }
        if sets.is_empty() {
            push_set(&mut sets, "{1}".into(), mulclose(&ring, &[]));
        }
        let modules = env
            .modules()
            .filter(|(_, m)| Arc::ptr_eq(&m.ring.ring, &ring))
            .map(|(n, m)| (n.to_string(), Arc::clone(&m.module)))
            .collect();
        let sequences = env
            .sequences()
            .filter(|(_, s)| Arc::ptr_eq(&s.b.ring.ring, &ring))
            .map(|(n, s)| (n.to_string(), s.seq.clone()))
            .collect();
        out.push(RingCase::new(name, ring, sets, modules, sequences, &env.budget)?);
    }
    Ok(out)
}

/// Every shipped corpus ring with all singleton-generated sets.
pub fn standard_corpus(budget: &Budget) -> Vec<RingCase> {
    CORPUS
        .iter()
        .flat_map(|(name, text)| {
            let script = parse_script(text).unwrap_or_else(|e| panic!("corpus script {name}: {e}"));
            let env = Environment::build(&script, *budget).unwrap_or_else(|e| panic!("corpus script {name}: {e}"));
            cases_from_environment(&env, SetChoice::Singletons).expect("corpus fits the budget")
        })
        .collect()
}

/// Per-case caches shared by the suites.
struct CaseData<'a> {
    case: &'a RingCase,
    budget: &'a Budget,
    tors: Vec<OnceCell<Result<Vec<Arc<ModuleTable>>>>>,
    flat: Vec<Vec<OnceCell<Result<CheckReport>>>>,
}

impl<'a> CaseData<'a> {
    fn new(case: &'a RingCase, budget: &'a Budget) -> Self {
        CaseData {
            case,
            budget,
            tors: case.modules.iter().map(|_| OnceCell::new()).collect(),
            flat: case.sets.iter().map(|_| case.modules.iter().map(|_| OnceCell::new()).collect()).collect(),
        }
    }

    fn ring(&self) -> &Arc<RingTable> {
        &self.case.ring
    }

    /// `Tor₁(R/I, M)` for every ideal, for module `m`.
    fn tors(&self, m: usize) -> Result<&[Arc<ModuleTable>]> {
        let cell = self.tors[m].get_or_init(|| {
            Ok(cyclic_tors(&self.case.modules[m].1, self.budget)?.into_iter().map(|(_, t)| t).collect())
        });
        match cell {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    /// `Tor₁(R/Iᵢ, R/Iⱼ)`.
    fn pair_tor(&self, i: usize, j: usize) -> Result<&Arc<ModuleTable>> {
        Ok(&self.tors(self.case.cyclic[j])?[i])
    }

    /// Least `s ∈ S` killing every `Tor₁(R/I, M)`, as an `is_u_s_flat` report.
    fn flat(&self, set: usize, m: usize) -> Result<CheckReport> {
        let cell = self.flat[set][m].get_or_init(|| {
            let tors = self.tors(m)?;
            let s = &self.case.sets[set].1;
            let r = self.ring();
            Ok(match s.members().iter().find(|&&s| tors.iter().all(|t| kills_module(t, s))) {
                Some(&s) => CheckReport::pass("u-S-flat").with_witness(Named::new("s", Value::Ring(s), r.label(s))),
                None => CheckReport::fail("u-S-flat"),
            })
        });
        cell.clone()
    }

    fn label(&self, a: Elem) -> &str {
        self.ring().label(a)
    }
}

/// Accumulates the outcome of one suite across cases.
#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
    failed: usize,
    witnesses: Vec<String>,
    budget: Vec<String>,
}

const MAX_LISTED_FAILURES: usize = 8;

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    fn witness(&mut self, label: &str) {
        if !self.witnesses.iter().any(|w| w == label) {
            self.witnesses.push(label.to_string());
        }
    }

    fn finish(self, name: &str) -> SuiteResult {
        let status = if self.failed > 0 {
            SuiteStatus::Fail
        } else if !self.budget.is_empty() {
            SuiteStatus::Budget
        } else {
            SuiteStatus::Pass
        };
        let mut failures = self.failures;
        if self.failed > failures.len() {
            failures.push(format!("... {} more", self.failed - failures.len()));
        }
        failures.extend(self.budget.into_iter().take(MAX_LISTED_FAILURES));
        SuiteResult {
            name: name.to_string(),
            status,
            cases: self.cases,
            failures,
            witnesses: self.witnesses,
        }
    }
}

type SuiteFn = fn(&CaseData, &mut Tally) -> Result<()>;

/// Suite names in execution and report order.
pub const SUITES: &[&str] = &[
    "axioms",
    "tor_oracle",
    "tor_symmetry",
    "torsion_pointwise_uniform",
    "maximal_torsion_submodule",
    "hom_vanishing",
    "two_of_three",
    "s_finite_composition",
    "regular_set_collapse",
    "localization_vnr",
    "localized_pointwise",
    "vnr_equivalences",
    "flat_tensored_sequences",
    "local_vnr",
    "local_flat",
    "flat_localizes",
    "direct_sum_witness",
    "tor_witness_propagation",
];

fn suite_fn(name: &str) -> SuiteFn {
    match name {
        "axioms" => axioms,
        "tor_oracle" => tor_oracle,
        "tor_symmetry" => tor_symmetry,
        "torsion_pointwise_uniform" => torsion_pointwise_uniform,
        "maximal_torsion_submodule" => maximal_torsion,
        "hom_vanishing" => hom_vanishing,
        "two_of_three" => two_of_three,
        "s_finite_composition" => s_finite_composition,
        "regular_set_collapse" => regular_set_collapse,
        "localization_vnr" => localization_vnr,
        "localized_pointwise" => localized_pointwise,
        "vnr_equivalences" => vnr_equivalences,
        "flat_tensored_sequences" => flat_tensored_sequences,
        "local_vnr" => local_vnr,
        "local_flat" => local_flat,
        "flat_localizes" => flat_localizes,
        "direct_sum_witness" => direct_sum_witness,
        "tor_witness_propagation" => tor_witness_propagation,
        other => panic!("unknown suite {other}"),
    }
}

/// Runs the named suites (all of them when `only` is empty) over `cases`.
/// Budget exhaustion is recorded per suite and never aborts the run.
pub fn run_suites(cases: &[RingCase], only: &[&str], budget: &Budget) -> Vec<SuiteResult> {
    if cases.is_empty() {
        return Vec::new();
    }
    let data: Vec<CaseData> = cases.iter().map(|c| CaseData::new(c, budget)).collect();
    SUITES
        .iter()
        .filter(|n| only.is_empty() || only.contains(n))
        .map(|&name| {
            let run = suite_fn(name);
            let mut tally = Tally::default();
            for d in &data {
                match run(d, &mut tally) {
                    Ok(()) => {}
                    Err(e @ AlgError::Budget { .. }) => tally.budget.push(format!("{}: {e}", d.case.name)),
                    Err(e) => {
                        let msg = format!("{}: {e}", d.case.name);
                        tally.check(false, || msg);
                    }
                }
            }
            tally.finish(name)
        })
        .collect()
}

fn axioms(d: &CaseData, t: &mut Tally) -> Result<()> {
    let r = d.ring();
    t.check(r.audit().is_ok(), || format!("{}: ring axioms", d.case.name));
    for (n, m) in &d.case.modules {
        t.check(m.audit().is_ok(), || format!("{n}: module axioms"));
    }
    for (n, s) in &d.case.sets {
        let closed = s.contains(r.one())
            && s.members().iter().all(|&a| s.members().iter().all(|&b| s.contains(r.mul(a, b))));
        t.check(closed, || format!("{n}: not multiplicatively closed"));
    }
    Ok(())
}

fn tor_oracle(d: &CaseData, t: &mut Tally) -> Result<()> {
    let ideals = &d.case.ideals;
    for (i, a) in ideals.iter().enumerate() {
        for (j, b) in ideals.iter().enumerate() {
            let tor = d.pair_tor(i, j)?;
            let oracle = tor1_cyclic_oracle(a, b)?;
            let iso = find_module_isomorphism(tor, &oracle, d.budget)?.is_some();
            t.check(iso, || format!("{}: Tor1(R/{a}, R/{b})", d.case.name));
        }
    }
    Ok(())
}

fn tor_symmetry(d: &CaseData, t: &mut Tally) -> Result<()> {
    let ideals = &d.case.ideals;
    for i in 0..ideals.len() {
        for j in i + 1..ideals.len() {
            let iso = find_module_isomorphism(d.pair_tor(i, j)?, d.pair_tor(j, i)?, d.budget)?.is_some();
            t.check(iso, || format!("{}: Tor1 symmetry for {} and {}", d.case.name, ideals[i], ideals[j]));
        }
    }
    Ok(())
}

fn torsion_pointwise_uniform(d: &CaseData, t: &mut Tally) -> Result<()> {
    for (sn, set) in &d.case.sets {
        for (mn, m) in &d.case.modules {
            let u = is_u_s_torsion(m, set)?;
            let p = is_s_torsion(m, set)?;
            let replay = u.witness_elem("s").is_none_or(|s| kills_module(m, s));
            t.check(u.verdict == p.verdict && replay, || format!("{sn}, {mn}"));
            if let Some(w) = u.witness("s") {
                t.witness(&w.label);
            }
        }
    }
    Ok(())
}

fn maximal_torsion(d: &CaseData, t: &mut Tally) -> Result<()> {
    for (sn, set) in &d.case.sets {
        for (mn, m) in d.case.modules.iter().filter(|(_, m)| m.size() <= 64) {
            let max = max_u_s_torsion_submodule(m, set)?;
            let tor = is_u_s_torsion(&max.module, set)?;
            if let Some(w) = tor.witness("s") {
                t.witness(&w.label);
            }
            let inside = max.inclusion.image_mask();
            let mut ok = tor.verdict;
            for mask in all_submodules(m, d.budget)? {
                let sub = submodule(m, &mask);
                if is_u_s_torsion(&sub.module, set)?.verdict {
                    ok &= m.elements().all(|x| !mask[x] || inside[x]);
                }
            }
            t.check(ok, || format!("{sn}, {mn}"));
        }
    }
    Ok(())
}

fn hom_vanishing(d: &CaseData, t: &mut Tally) -> Result<()> {
    let mods = &d.case.modules;
    for (sn, set) in &d.case.sets {
        let mut torsion: Vec<Arc<ModuleTable>> = Vec::new();
        for (_, m) in mods {
            torsion.push(max_u_s_torsion_submodule(m, set)?.module);
            if is_u_s_torsion(m, set)?.verdict {
                torsion.push(Arc::clone(m));
            }
        }
        for (fname, f) in mods {
            let free = is_s_torsionfree(f, set)?.verdict;
            let mut vanish = true;
            for tm in &torsion {
                if !hom_enumerate(tm, f, d.budget)?.iter().all(ModuleHom::is_zero) {
                    vanish = false;
                    break;
                }
            }
            t.check(free == vanish, || format!("{sn}, {fname}"));
        }
    }
    Ok(())
}

/// Witness arithmetic for one short sequence: a torsion middle term bounds
/// the ends, and torsion ends bound the middle.
fn two_of_three_laws(seq: &SequenceCandidate, set: &MulSet) -> Result<(bool, Option<Elem>)> {
    let r = seq.ring();
    let short = check_short_u_s_exact(seq, set)?;
    if !short.verdict {
        return Ok((false, None));
    }
    let s = short.witness_elem("s").expect("short sequences carry s");
    let s1 = short.witness_elem("s_mono").expect("short sequences carry s_mono");
    let s2 = short.witness_elem("s_epi").expect("short sequences carry s_epi");
    let mut ok = true;
    if let Some(sb) = is_u_s_torsion(seq.b(), set)?.witness_elem("s") {
        ok &= kills_module(seq.a(), r.mul(sb, s1));
        ok &= kills_module(seq.c(), r.mul(sb, s2));
    }
    let ta = is_u_s_torsion(seq.a(), set)?.witness_elem("s");
    let tc = is_u_s_torsion(seq.c(), set)?.witness_elem("s");
    if let (Some(a), Some(c)) = (ta, tc) {
        ok &= kills_module(seq.b(), r.mul(r.mul(a, s), c));
    }
    Ok((ok, Some(s)))
}

fn two_of_three(d: &CaseData, t: &mut Tally) -> Result<()> {
    for (sn, set) in &d.case.sets {
        for (qn, seq) in &d.case.sequences {
            if !check_short_u_s_exact(seq, set)?.verdict {
                continue;
            }
            let (ok, s) = two_of_three_laws(seq, set)?;
            if let Some(s) = s {
                t.witness(d.label(s));
            }
            t.check(ok, || format!("{sn}, {qn}"));
        }
    }
    Ok(())
}

/// Composes S-finite witnesses of the ends of an exact-up-to-`s` sequence and
/// replays the result on the middle term.
fn s_finite_law(seq: &SequenceCandidate, set: &MulSet, budget: &Budget) -> Result<Option<bool>> {
    let Some(s) = check_u_s_exact(seq, set)?.witness_elem("s") else {
        return Ok(None);
    };
    let wa = s_finite_witness(seq.a(), set, budget)?;
    let wc = s_finite_witness(seq.c(), set, budget)?;
    let gens = |rep: &CheckReport| match rep.witness("G").map(|n| &n.value) {
        Some(Value::Subset(v)) => Some(v.clone()),
        _ => None,
    };
    let (Some(ga), Some(gc), Some(sa), Some(sc)) = (gens(&wa), gens(&wc), wa.witness_elem("s"), wc.witness_elem("s"))
    else {
        return Ok(Some(false));
    };
    // Preimages of the generators of C exist only when g reaches them.
    let Some((gb, sb)) = compose_s_finite(seq, (sa, &ga), (sc, &gc), s) else {
        return Ok(None);
    };
    Ok(Some(replay_s_finite(seq.a(), sa, &ga) && replay_s_finite(seq.b(), sb, &gb)))
}

fn s_finite_composition(d: &CaseData, t: &mut Tally) -> Result<()> {
    for (sn, set) in &d.case.sets {
        for (qn, seq) in &d.case.sequences {
            if let Some(ok) = s_finite_law(seq, set, d.budget)? {
                t.check(ok, || format!("{sn}, {qn}"));
            }
        }
    }
    Ok(())
}

fn regular_set_collapse(d: &CaseData, t: &mut Tally) -> Result<()> {
    let r = d.ring();
    let vnr = is_vnr(r).verdict;
    for (sn, set) in &d.case.sets {
        if is_regular_set(set).verdict {
            let u = is_u_s_vnr(r, set);
            if let Some(s) = u.uniform_s {
                t.witness(d.label(s));
            }
            t.check(u.verdict == vnr, || format!("{}, {sn}", d.case.name));
        }
    }
    Ok(())
}

fn localization_vnr(d: &CaseData, t: &mut Tally) -> Result<()> {
    let r = d.ring();
    for (sn, set) in &d.case.sets {
        let u = is_u_s_vnr(r, set);
        let loc = localize_ring(set)?;
        if let Some(s) = u.uniform_s {
            t.witness(d.label(s));
        }
        t.check(u.replay(r) && u.verdict == is_vnr(&loc.ring).verdict, || format!("{}, {sn}", d.case.name));
    }
    Ok(())
}

fn localized_pointwise(d: &CaseData, t: &mut Tally) -> Result<()> {
    for (sn, set) in &d.case.sets {
        let rep = check_localized_vnr(d.ring(), set)?;
        t.check(rep.verdict, || format!("{}, {sn}", d.case.name));
    }
    Ok(())
}

/// Least `s ∈ S` killing every module in `tors`.
fn uniform_killer<'a>(set: &MulSet, mut tors: impl FnMut() -> Vec<&'a Arc<ModuleTable>>) -> Option<Elem> {
    let all = tors();
    set.members().iter().copied().find(|&s| all.iter().all(|t| kills_module(t, s)))
}

fn vnr_equivalences(d: &CaseData, t: &mut Tally) -> Result<()> {
    let r = d.ring();
    let ideals = &d.case.ideals;
    let n = ideals.len();
    let mut pairs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            pairs.push(d.pair_tor(i, j)?);
        }
    }
    let mut principal = Vec::new();
    for a in r.elements() {
        let p = principal_ideal(r, a);
        let k = ideals.iter().position(|i| *i == p).expect("principal ideals are enumerated");
        principal.push(d.pair_tor(k, k)?);
    }
    for (si, (sn, set)) in d.case.sets.iter().enumerate() {
        let vnr = is_u_s_vnr(r, set);
        let all_pairs = uniform_killer(set, || pairs.clone());
        let diagonal = uniform_killer(set, || principal.clone());
        let mut product = Some(r.one());
        for m in 0..d.case.modules.len() {
            let rep = d.flat(si, m)?;
            product = match (product, rep.witness_elem("s")) {
                (Some(p), Some(s)) => Some(r.mul(p, s)),
                _ => None,
            };
        }
        let common = product.is_some_and(|s| {
            (0..d.case.modules.len()).all(|m| d.tors(m).is_ok_and(|ts| ts.iter().all(|x| kills_module(x, s))))
        });
        let gen = idempotent_s_generation(r, set, d.budget)?;
        let verdicts = [
            vnr.verdict,
            all_pairs.is_some(),
            diagonal.is_some(),
            common,
            gen.principal_ok(),
            gen.ideals_ok(),
        ];
        if let Some(s) = vnr.uniform_s {
            t.witness(d.label(s));
        }
        t.check(verdicts.iter().all(|&v| v == verdicts[0]), || {
            format!("{}, {sn}: verdicts {verdicts:?}", d.case.name)
        });
    }
    Ok(())
}

fn flat_tensored_sequences(d: &CaseData, t: &mut Tally) -> Result<()> {
    for (si, (sn, set)) in d.case.sets.iter().enumerate() {
        let exact: Vec<bool> = d
            .case
            .sequences
            .iter()
            .map(|(_, q)| check_short_u_s_exact(q, set).map(|r| r.verdict))
            .collect::<Result<_>>()?;
        for (mi, (mn, m)) in d.case.modules.iter().enumerate() {
            let flat = d.flat(si, mi)?;
            if let Some(w) = flat.witness("s") {
                t.witness(&w.label);
            }
            let mut ideal_pass = true;
            for &q in &d.case.ideal_sequences {
                ideal_pass &= tensor_sequence_check(&d.case.sequences[q].1, m, set, d.budget)?.verdict;
            }
            let mut ok = flat.verdict == ideal_pass;
            if flat.verdict {
                for (q, (_, seq)) in d.case.sequences.iter().enumerate() {
                    if exact[q] && !d.case.ideal_sequences.contains(&q) {
                        ok &= tensor_sequence_check(seq, m, set, d.budget)?.verdict;
                    }
                }
            }
            t.check(ok, || format!("{sn}, {mn}"));
        }
    }
    Ok(())
}

fn local_vnr(d: &CaseData, t: &mut Tally) -> Result<()> {
    let rep = check_local_vnr(d.ring(), d.budget)?;
    t.check(rep.verdict, || d.case.name.clone());
    Ok(())
}

fn local_flat(d: &CaseData, t: &mut Tally) -> Result<()> {
    for (mn, m) in &d.case.modules {
        let rep = check_local_flat(m, d.budget)?;
        t.check(rep.verdict, || mn.clone());
    }
    Ok(())
}

fn flat_localizes(d: &CaseData, t: &mut Tally) -> Result<()> {
    for (si, (sn, set)) in d.case.sets.iter().enumerate() {
        let loc = localize_ring(set)?;
        for (mi, (mn, m)) in d.case.modules.iter().enumerate() {
            if d.flat(si, mi)?.verdict {
                let lm = localize_module(m, &loc)?;
                let ok = is_flat(&lm.module, d.budget)?.verdict;
                t.check(ok, || format!("{sn}, {mn}"));
            }
        }
    }
    Ok(())
}

/// Largest direct sum built by the direct-sum suite.
const MAX_SUM: usize = 64;

fn direct_sum_witness(d: &CaseData, t: &mut Tally) -> Result<()> {
    let r = d.ring();
    let mods = &d.case.modules;
    for (si, (sn, _)) in d.case.sets.iter().enumerate() {
        for i in 0..mods.len() {
            for j in i..mods.len() {
                if mods[i].1.size() * mods[j].1.size() > MAX_SUM {
                    continue;
                }
                let (Some(s1), Some(s2)) = (d.flat(si, i)?.witness_elem("s"), d.flat(si, j)?.witness_elem("s")) else {
                    continue;
                };
                let sum = direct_sum(&mods[i].1, &mods[j].1, d.budget)?.module;
                let s = r.mul(s1, s2);
                let ok = cyclic_tors(&sum, d.budget)?.iter().all(|(_, x)| kills_module(x, s));
                t.witness(d.label(s));
                t.check(ok, || format!("{sn}, {} (+) {}", mods[i].0, mods[j].0));
            }
        }
    }
    Ok(())
}

/// `s·Tor_n(M, R/⟨s⟩) = 0`.
fn tor_propagation_law(m: &Arc<ModuleTable>, s: Elem, n: usize, budget: &Budget) -> Result<bool> {
    let r = m.ring();
    let tmod = module_cyclic(&principal_ideal(r, s)).module;
    Ok(kills_module(tor(n, m, &tmod, budget)?.as_ref(), s))
}

fn tor_witness_propagation(d: &CaseData, t: &mut Tally) -> Result<()> {
    let depth = d.budget.tor_depth.min(3);
    let mut members: Vec<Elem> = d.case.sets.iter().flat_map(|(_, s)| s.members().iter().copied()).collect();
    members.sort_unstable();
    members.dedup();
    for &s in &members {
        for &m in &d.case.cyclic {
            let (mn, module) = &d.case.modules[m];
            for n in 1..=depth {
                let ok = tor_propagation_law(module, s, n, d.budget)?;
                t.witness(d.label(s));
                t.check(ok, || format!("s={}, Tor{n}({mn}, R/<{}>)", d.label(s), d.label(s)));
            }
        }
    }
    Ok(())
}

/// One randomized witness-arithmetic instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub description: String,
    pub two_of_three: bool,
    pub s_finite: bool,
    pub tor_propagation: bool,
}

impl Instance {
    pub fn passed(&self) -> bool {
        self.two_of_three && self.s_finite && self.tor_propagation
    }
}

/// Draws `count` instances from the corpus with a fixed seed. The torsion
/// laws use `N --incl∘sₐ--> B --s_c∘proj--> B/N`, which is exact only up to
/// elements of `S`; the S-finite law uses the same `f` with the plain
/// projection, so that generators of `B/N` have preimages. Tor degrees are
/// at most 3.
pub fn random_instances(cases: &[RingCase], seed: u64, count: usize, budget: &Budget) -> Result<Vec<Instance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let case = cases.choose(&mut rng).expect("nonempty corpus");
        let r = &case.ring;
        let (sn, set) = case.sets.choose(&mut rng).expect("every case has a set");
        let (bn, b) = case.modules.choose(&mut rng).expect("every case has modules");
        if b.size() > 64 {
            continue;
        }
        let g = rng.gen_range(0..b.size());
        let mask = b.span(&[g]);
        let sub = submodule(b, &mask);
        let quo = quotient_module(b, &mask);
        let sa = *set.members().choose(&mut rng).expect("S is nonempty");
        let sc = *set.members().choose(&mut rng).expect("S is nonempty");
        let f = ModuleHom::scalar(&sub.module, sa).then(&sub.inclusion)?;
        let h = quo.projection.then(&ModuleHom::scalar(&quo.module, sc))?;
        let (two, _) = two_of_three_laws(&SequenceCandidate::new(f.clone(), h)?, set)?;
        let onto = SequenceCandidate::new(f, quo.projection.clone())?;
        let fin = s_finite_law(&onto, set, budget)?.unwrap_or(false);
        let s = *set.members().choose(&mut rng).expect("S is nonempty");
        let &mi = case.cyclic.choose(&mut rng).expect("R/R is always present");
        let n = rng.gen_range(1..=3usize.min(budget.tor_depth));
        let prop = tor_propagation_law(&case.modules[mi].1, s, n, budget)?;
        out.push(Instance {
            description: format!(
                "{}, {sn}, B={bn}, N=<{}>, s_a={}, s_c={}, Tor{n}({}, R/<{}>)",
                case.name,
                b.label(g),
                r.label(sa),
                r.label(sc),
                case.modules[mi].0,
                r.label(s)
            ),
            two_of_three: two,
            s_finite: fin,
            tor_propagation: prop,
        });
    }
    Ok(out)
}
