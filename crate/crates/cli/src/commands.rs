//! Command dispatch: each command elaborates the script and builds a
//! [`Report`].

use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value as Json};
use usalg_core::*;

use crate::ast::{ModExpr, Name, RingScript, Span, Spanned};
use crate::env::{Environment, ModuleEntry, RingEntry, SequenceEntry};
use crate::error::{CliError, CliResult};
use crate::harness::{cases_from_environment, run_suites, SetChoice};
use crate::parse::parse_mod_expr;
use crate::report::{Report, SuiteStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Check,
    Localize,
    Tor,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Check => "check",
            Command::Localize => "localize",
            Command::Tor => "tor",
            Command::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    UsVnr,
    Vnr,
    UsFlat,
    Flat,
    UsTorsion,
    STorsionFree,
    UsExact,
    SFinite,
}

impl Property {
    pub const ALL: [(&'static str, Property); 8] = [
        ("usvnr", Property::UsVnr),
        ("vnr", Property::Vnr),
        ("usflat", Property::UsFlat),
        ("flat", Property::Flat),
        ("ustorsion", Property::UsTorsion),
        ("storsionfree", Property::STorsionFree),
        ("usexact", Property::UsExact),
        ("sfinite", Property::SFinite),
    ];

    pub fn parse(s: &str) -> Option<Property> {
        Self::ALL.iter().find(|(n, _)| *n == s).map(|&(_, p)| p)
    }

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(_, p)| *p == self).map(|(n, _)| *n).expect("listed")
    }
}

/// Optional arguments shared by the commands. Names default to the last
/// declaration of the right kind.
#[derive(Debug, Clone, Default)]
pub struct Args {
    pub property: Option<Property>,
    pub ring: Option<String>,
    pub set: Option<String>,
    pub module: Option<String>,
    pub sequence: Option<String>,
    pub n: Option<usize>,
    pub left: Option<String>,
    pub right: Option<String>,
    pub timing: bool,
}

/// A report plus the process exit code it implies.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

fn arg_name(s: &str) -> Name {
    Spanned::new(s.to_string(), Span::default())
}

fn last<'a, T>(items: impl Iterator<Item = (&'a str, T)>, kind: &str) -> CliResult<String> {
    items
        .last()
        .map(|(n, _)| n.to_string())
        .ok_or_else(|| CliError::Usage(format!("the script declares no {kind}")))
}

fn labels(r: &RingTable, items: &[Elem]) -> Vec<String> {
    items.iter().map(|&a| r.label(a).to_string()).collect()
}

fn ring_summary(entry: &RingEntry, budget: &Budget) -> CliResult<Json> {
    let r = &entry.ring;
    let spec = spectrum(r, budget)?;
    let vnr = is_vnr(r);
    let mut v = json!({
        "kind": "ring",
        "construction": r.provenance(),
        "size": r.size(),
        "characteristic": r.characteristic(),
        "field": r.is_field(),
        "idempotents": labels(r, &idempotents(r)),
        "nilpotents": labels(r, &r.nilpotents()),
        "units": labels(r, &r.units()),
        "spectrum": {
            "ideals": spec.ideals.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
            "primes": spec.prime_ideals().map(|i| i.to_string()).collect::<Vec<_>>(),
            "maximals": spec.maximal_ideals().map(|i| i.to_string()).collect::<Vec<_>>(),
        },
        "vnr": vnr.verdict,
    });
    if let Some(a) = vnr.counterexample_a {
        v["vnr_counterexample"] = json!(r.label(a));
    }
    Ok(v)
}

fn module_summary(m: &ModuleTable) -> Json {
    let orders: Vec<usize> = m.elements().map(|x| m.additive_order(x)).collect();
    let exponent = orders.iter().fold(1usize, |acc, &o| acc / gcd(acc, o) * o);
    json!({
        "kind": "module",
        "size": m.size(),
        "exponent": exponent,
        "annihilator": m.annihilator().to_string(),
        "labels": m.labels(),
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn extras(rep: &CheckReport) -> Json {
    Json::Object(rep.extra.iter().map(|n| (n.name.clone(), json!(n.label))).collect())
}

fn set_labels(set: &MulSet) -> String {
    format!("{{{}}}", set.labels().join(","))
}

struct Ctx {
    env: Environment,
    args: Args,
}

impl Ctx {
    fn ring(&self) -> CliResult<(String, Arc<RingEntry>)> {
        let name = match &self.args.ring {
            Some(n) => n.clone(),
            None => last(self.env.rings(), "ring")?,
        };
        Ok((name.clone(), self.env.ring(&arg_name(&name))?))
    }

    fn set(&self) -> CliResult<(String, Arc<RingEntry>, MulSet)> {
        let name = match &self.args.set {
            Some(n) => n.clone(),
            None => last(self.env.mulsets().map(|(n, r, _)| (n, r)), "mulset")?,
        };
        let (r, s) = self.env.mulset(&arg_name(&name))?;
        Ok((name, r, s))
    }

    fn module(&self) -> CliResult<(String, Arc<ModuleEntry>)> {
        let name = match &self.args.module {
            Some(n) => n.clone(),
            None => last(self.env.modules(), "module")?,
        };
        Ok((name.clone(), self.env.module(&arg_name(&name))?))
    }

    fn sequence(&self) -> CliResult<(String, SequenceEntry)> {
        let name = match &self.args.sequence {
            Some(n) => n.clone(),
            None => last(self.env.sequences(), "sequence")?,
        };
        Ok((name.clone(), self.env.sequence(&arg_name(&name))?))
    }

    /// A `--left`/`--right` module expression; its ring is the one named
    /// inside it.
    fn module_arg(&self, flag: &str, text: &str) -> CliResult<Arc<ModuleEntry>> {
        let expr = parse_mod_expr(text).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))?;
        let ring = self.expr_ring(&expr)?;
        self.env.module_expr(&expr, &ring)
    }

    fn expr_ring(&self, e: &ModExpr) -> CliResult<Arc<RingEntry>> {
        match e {
            ModExpr::Regular(r) | ModExpr::Cyclic(r, _) | ModExpr::Ideal(r, _) => self.env.ring(r),
            ModExpr::Name(m) => Ok(Arc::clone(&self.env.module(m)?.ring)),
            ModExpr::Sum(a, _) => self.expr_ring(a),
        }
    }
}

/// Elaborates `script` and runs `command`.
pub fn run_command(script: &RingScript, command: Command, args: &Args, budget: Budget) -> CliResult<Outcome> {
    let start = Instant::now();
    let env = Environment::build(script, budget)?;
    let ctx = Ctx {
        env,
        args: args.clone(),
    };
    let mut report = match command {
        Command::Analyze => analyze(&ctx)?,
        Command::Check => check(&ctx)?,
        Command::Localize => localize(&ctx)?,
        Command::Tor => tor_command(&ctx)?,
        Command::Verify => verify(&ctx)?,
    };
    if args.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let exit_code = if command == Command::Check && report.verdict == Some(false) {
        1
    } else {
        0
    };
    Ok(Outcome { report, exit_code })
}

fn analyze(ctx: &Ctx) -> CliResult<Report> {
    let (name, r) = ctx.ring()?;
    let b = &ctx.env.budget;
    let mut report = Report::new("analyze", b).input("ring", &name);
    report = report.summary(&name, ring_summary(&r, b)?);
    for (sn, _, set) in ctx.env.mulsets().filter(|(_, e, _)| Arc::ptr_eq(&e.ring, &r.ring)) {
        let regular = is_regular_set(set).verdict;
        report = report.summary(
            sn,
            json!({ "kind": "mulset", "members": set.labels(), "regular": regular }),
        );
    }
    Ok(report)
}

fn check(ctx: &Ctx) -> CliResult<Report> {
    let prop = ctx
        .args
        .property
        .ok_or_else(|| CliError::Usage("check needs --property".into()))?;
    let b = &ctx.env.budget;
    let report = Report::new("check", b).input("property", prop.name());
    Ok(match prop {
        Property::UsVnr => {
            let (sn, r, set) = ctx.set()?;
            let cert = is_u_s_vnr(&r.ring, &set);
            let rep = cert.to_report(&r.ring, "u-S-von Neumann regular");
            report
                .input("ring", &r.name)
                .input("set", &sn)
                .with_check(&rep)
                .summary(&r.name, ring_summary(&r, b)?)
                .summary(&sn, json!({ "kind": "mulset", "members": set.labels(), "nilpotent_shortcut": cert.nilpotent_shortcut }))
        }
        Property::Vnr => {
            let (name, r) = ctx.ring()?;
            let rep = is_vnr(&r.ring).to_report(&r.ring, "von Neumann regular");
            report.input("ring", &name).with_check(&rep).summary(&name, ring_summary(&r, b)?)
        }
        Property::Flat => {
            let (mn, m) = ctx.module()?;
            let rep = is_flat(&m.module, b)?;
            report
                .input("module", &mn)
                .with_check(&rep)
                .summary(&mn, with_extras(module_summary(&m.module), &rep))
        }
        Property::UsFlat | Property::UsTorsion | Property::STorsionFree | Property::SFinite => {
            let (mn, m) = ctx.module()?;
            let (sn, _, set) = ctx.set()?;
            let rep = match prop {
                Property::UsFlat => is_u_s_flat(&m.module, &set, b)?,
                Property::UsTorsion => is_u_s_torsion(&m.module, &set)?,
                Property::STorsionFree => is_s_torsionfree(&m.module, &set)?,
                _ => s_finite_witness(&m.module, &set, b)?,
            };
            report
                .input("module", &mn)
                .input("set", &sn)
                .with_check(&rep)
                .summary(&mn, with_extras(module_summary(&m.module), &rep))
        }
        Property::UsExact => {
            let (qn, q) = ctx.sequence()?;
            let (sn, _, set) = ctx.set()?;
            let rep = check_short_u_s_exact(&q.seq, &set)?;
            report
                .input("sequence", &qn)
                .input("set", &sn)
                .with_check(&rep)
                .summary(&qn, json!({
                    "kind": "sequence",
                    "modules": [q.a.expr, q.b.expr, q.c.expr],
                    "sizes": [q.a.module.size(), q.b.module.size(), q.c.module.size()],
                    "extra": extras(&rep),
                }))
        }
    })
}

fn with_extras(mut summary: Json, rep: &CheckReport) -> Json {
    if !rep.extra.is_empty() {
        summary["extra"] = extras(rep);
    }
    summary
}

fn localize(ctx: &Ctx) -> CliResult<Report> {
    let (sn, r, set) = ctx.set()?;
    let loc = localize_ring(&set)?;
    let lr = &loc.ring;
    let vnr = is_vnr(lr);
    let agreement = check_localized_vnr(&r.ring, &set)?;
    let canonical: serde_json::Map<String, Json> = r
        .ring
        .elements()
        .map(|a| (r.ring.label(a).to_string(), json!(lr.label(loc.canonical[a]))))
        .collect();
    let mut summary = json!({
        "kind": "localization",
        "set": set_labels(&set),
        "size": lr.size(),
        "elements": lr.labels(),
        "kernel": loc.kernel.to_string(),
        "canonical": canonical,
        "vnr": vnr.verdict,
        "u_s_vnr": is_u_s_vnr(&r.ring, &set).verdict,
        "extra": extras(&agreement),
    });
    if let Some(a) = vnr.counterexample_a {
        summary["vnr_counterexample"] = json!(lr.label(a));
    }
    Ok(Report::new("localize", &ctx.env.budget)
        .input("ring", &r.name)
        .input("set", &sn)
        .summary(&format!("{}_{}", r.name, sn), summary))
}

fn tor_command(ctx: &Ctx) -> CliResult<Report> {
    let b = &ctx.env.budget;
    let n = ctx.args.n.unwrap_or(1);
    let left_text = ctx.args.left.clone().ok_or_else(|| CliError::Usage("tor needs --left".into()))?;
    let right_text = ctx.args.right.clone().ok_or_else(|| CliError::Usage("tor needs --right".into()))?;
    let left = ctx.module_arg("left", &left_text)?;
    let right = ctx.module_arg("right", &right_text)?;
    let t = tor(n, &left.module, &right.module, b)?;
    let mut summary = module_summary(&t);
    if let (crate::env::ModuleKind::Cyclic(i, _), crate::env::ModuleKind::Cyclic(j, _)) = (&left.kind, &right.kind) {
        if n == 1 {
            let oracle = tor1_cyclic_oracle(i, j)?;
            summary["oracle_size"] = json!(oracle.size());
            summary["oracle_isomorphic"] = json!(find_module_isomorphism(&t, &oracle, b)?.is_some());
        }
    }
    Ok(Report::new("tor", b)
        .input("n", n.to_string())
        .input("left", left.expr.clone())
        .input("right", right.expr.clone())
        .summary("tor", summary))
}

fn verify(ctx: &Ctx) -> CliResult<Report> {
    let b = ctx.env.budget;
    let mut report = Report::new("verify", &b);
    let cases = match cases_from_environment(&ctx.env, SetChoice::Declared) {
        Ok(c) => c,
        Err(e @ AlgError::Budget { .. }) => {
            report.budget.exceeded.push(e.to_string());
            Vec::new()
        }
        Err(e) => return Err(e.into()),
    };
    let suites = run_suites(&cases, &[], &b);
    for s in suites.iter().filter(|s| s.status == SuiteStatus::Budget) {
        report.budget.exceeded.push(format!("suite {} stopped by a size bound", s.name));
    }
    if !suites.is_empty() {
        report.verdict = Some(suites.iter().all(|s| s.status != SuiteStatus::Fail));
    }
    report.suites = Some(suites);
    Ok(report)
}
