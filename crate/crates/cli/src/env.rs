//! Elaboration of a parsed script into rings, modules and sequences.

use std::sync::Arc;

use indexmap::IndexMap;
use usalg_core::{
    direct_sum, module_cyclic, module_from_ring, module_ideal, mulclose, polyquot, quotient_ring,
    ring_product, zmod, AlgError, Budget, DirectSum, Elem, Ideal, ModuleHom, ModuleTable, MulSet,
    Poly, PolyQuotient, QuotientModule, QuotientRing, RingTable, SequenceCandidate, Submodule,
};

use crate::ast::{Decl, ElemExpr, HomSpec, ModExpr, Name, RingExpr, RingScript, Span, Spanned};
use crate::ast::Elem as Lit;
use crate::error::{CliError, CliResult};

/// How a ring was built; needed to interpret pairs, `x`, and constants
/// declared over a related ring.
#[derive(Debug)]
pub enum RingKind {
    Zmod(u64),
    Product(Arc<RingEntry>, Arc<RingEntry>),
    PolyQuot(Arc<RingEntry>, PolyQuotient),
    Quotient(Arc<RingEntry>, QuotientRing),
}

#[derive(Debug)]
pub struct RingEntry {
    pub name: String,
    pub ring: Arc<RingTable>,
    pub kind: RingKind,
}

#[derive(Debug)]
pub enum ModuleKind {
    Regular,
    Cyclic(Ideal, QuotientModule),
    Ideal(Ideal, Submodule),
    Sum(Arc<ModuleEntry>, Arc<ModuleEntry>, DirectSum),
}

#[derive(Debug)]
pub struct ModuleEntry {
    /// Source form of the defining expression.
    pub expr: String,
    pub ring: Arc<RingEntry>,
    pub module: Arc<ModuleTable>,
    pub kind: ModuleKind,
}

#[derive(Debug, Clone)]
pub struct SequenceEntry {
    pub a: Arc<ModuleEntry>,
    pub b: Arc<ModuleEntry>,
    pub c: Arc<ModuleEntry>,
    pub seq: SequenceCandidate,
}

#[derive(Debug, Clone)]
pub enum Binding {
    Ring(Arc<RingEntry>),
    Const(Arc<RingEntry>, Elem),
    MulSet(Arc<RingEntry>, MulSet),
    Module(Arc<ModuleEntry>),
    Sequence(SequenceEntry),
}

impl Binding {
    pub fn kind(&self) -> &'static str {
        match self {
            Binding::Ring(_) => "ring",
            Binding::Const(..) => "const",
            Binding::MulSet(..) => "mulset",
            Binding::Module(_) => "module",
            Binding::Sequence(_) => "sequence",
        }
    }
}

/// Every declaration of a script, in source order.
#[derive(Debug, Clone, Default)]
pub struct Environment {
    pub bindings: IndexMap<String, Binding>,
    pub budget: Budget,
}

fn alg(span: Span) -> impl Fn(AlgError) -> CliError {
    move |source| CliError::Algebra { span, source }
}

fn same(a: &Arc<RingEntry>, b: &Arc<RingEntry>) -> bool {
    Arc::ptr_eq(a, b) || a.ring.same_ring(&b.ring)
}

impl Environment {
    pub fn build(script: &RingScript, budget: Budget) -> CliResult<Self> {
        let mut env = Environment {
            bindings: IndexMap::new(),
            budget,
        };
        for d in &script.decls {
            let name = d.name();
            if env.bindings.contains_key(&name.node) {
                return Err(CliError::elaborate(name.span, format!("duplicate name `{}`", name.node)));
            }
            let binding = env.declare(d)?;
            env.bindings.insert(name.node.clone(), binding);
        }
        Ok(env)
    }

    fn declare(&self, d: &Decl) -> CliResult<Binding> {
        Ok(match d {
            Decl::Ring { name, expr } => Binding::Ring(self.ring_expr(&name.node, expr)?),
            Decl::Const { ring, value, .. } => {
                let r = self.ring(ring)?;
                let v = self.eval(value, &r)?;
                Binding::Const(r, v)
            }
            Decl::MulSet { ring, gens, .. } => {
                let r = self.ring(ring)?;
                let gens = gens.iter().map(|g| self.eval(g, &r)).collect::<CliResult<Vec<_>>>()?;
                let set = mulclose(&r.ring, &gens);
                Binding::MulSet(r, set)
            }
            Decl::Module { ring, expr, .. } => {
                let r = self.ring(ring)?;
                Binding::Module(self.module_expr(expr, &r)?)
            }
            Decl::Sequence { a, b, c, f, g, .. } => {
                let (ma, mb, mc) = (self.module(a)?, self.module(b)?, self.module(c)?);
                let hf = self.hom(f, &ma, &mb)?;
                let hg = self.hom(g, &mb, &mc)?;
                let seq = SequenceCandidate::new(hf, hg).map_err(alg(a.span))?;
                Binding::Sequence(SequenceEntry {
                    a: ma,
                    b: mb,
                    c: mc,
                    seq,
                })
            }
        })
    }

    fn lookup(&self, name: &Name) -> CliResult<&Binding> {
        self.bindings
            .get(&name.node)
            .ok_or_else(|| CliError::elaborate(name.span, format!("unresolved name `{}`", name.node)))
    }

    fn wrong_kind(name: &Name, want: &str, got: &Binding) -> CliError {
        CliError::elaborate(
            name.span,
            format!("`{}` is a {}, expected a {want}", name.node, got.kind()),
        )
    }

    pub fn ring(&self, name: &Name) -> CliResult<Arc<RingEntry>> {
        match self.lookup(name)? {
            Binding::Ring(r) => Ok(Arc::clone(r)),
            other => Err(Self::wrong_kind(name, "ring", other)),
        }
    }

    pub fn mulset(&self, name: &Name) -> CliResult<(Arc<RingEntry>, MulSet)> {
        match self.lookup(name)? {
            Binding::MulSet(r, s) => Ok((Arc::clone(r), s.clone())),
            other => Err(Self::wrong_kind(name, "mulset", other)),
        }
    }

    pub fn module(&self, name: &Name) -> CliResult<Arc<ModuleEntry>> {
        match self.lookup(name)? {
            Binding::Module(m) => Ok(Arc::clone(m)),
            other => Err(Self::wrong_kind(name, "module", other)),
        }
    }

    pub fn sequence(&self, name: &Name) -> CliResult<SequenceEntry> {
        match self.lookup(name)? {
            Binding::Sequence(s) => Ok(s.clone()),
            other => Err(Self::wrong_kind(name, "sequence", other)),
        }
    }

    pub fn rings(&self) -> impl Iterator<Item = (&str, &Arc<RingEntry>)> {
        self.bindings.iter().filter_map(|(n, b)| match b {
            Binding::Ring(r) => Some((n.as_str(), r)),
            _ => None,
        })
    }

    pub fn mulsets(&self) -> impl Iterator<Item = (&str, &Arc<RingEntry>, &MulSet)> {
        self.bindings.iter().filter_map(|(n, b)| match b {
            Binding::MulSet(r, s) => Some((n.as_str(), r, s)),
            _ => None,
        })
    }

    pub fn modules(&self) -> impl Iterator<Item = (&str, &Arc<ModuleEntry>)> {
        self.bindings.iter().filter_map(|(n, b)| match b {
            Binding::Module(m) => Some((n.as_str(), m)),
            _ => None,
        })
    }

    pub fn sequences(&self) -> impl Iterator<Item = (&str, &SequenceEntry)> {
        self.bindings.iter().filter_map(|(n, b)| match b {
            Binding::Sequence(s) => Some((n.as_str(), s)),
            _ => None,
        })
    }

    fn ring_expr(&self, name: &str, expr: &RingExpr) -> CliResult<Arc<RingEntry>> {
        let build = |ring: RingTable, kind| {
            Arc::new(RingEntry {
                name: name.to_string(),
                ring: Arc::new(ring),
                kind,
            })
        };
        match expr {
            RingExpr::Zmod(n) => {
                if n.node == 0 {
                    return Err(CliError::elaborate(n.span, "zmod(0) is not a finite ring"));
                }
                let size = usize::try_from(n.node).unwrap_or(usize::MAX);
                let r = zmod(size, &self.budget).map_err(alg(n.span))?;
                Ok(build(r, RingKind::Zmod(n.node)))
            }
            RingExpr::Name(n) => self.ring(n),
            RingExpr::Product(a, b) => {
                let span = ring_span(a);
                let (l, r) = (self.ring_expr(name, a)?, self.ring_expr(name, b)?);
                let p = ring_product(&l.ring, &r.ring, &self.budget).map_err(alg(span))?;
                Ok(build(p, RingKind::Product(l, r)))
            }
            RingExpr::PolyQuot(base, rels) => {
                let b = self.ring(base)?;
                let polys = rels.iter().map(|e| self.eval_poly(e, &b)).collect::<CliResult<Vec<_>>>()?;
                let pq = polyquot(&b.ring, &polys, &self.budget).map_err(alg(base.span))?;
                let ring = Arc::clone(pq.ring());
                Ok(Arc::new(RingEntry {
                    name: name.to_string(),
                    ring,
                    kind: RingKind::PolyQuot(b, pq),
                }))
            }
            RingExpr::Quotient(parent, gens) => {
                let p = self.ring(parent)?;
                let gens = gens.iter().map(|e| self.eval(e, &p)).collect::<CliResult<Vec<_>>>()?;
                let q = quotient_ring(&Ideal::generated(&p.ring, &gens));
                let ring = Arc::clone(&q.ring);
                Ok(Arc::new(RingEntry {
                    name: name.to_string(),
                    ring,
                    kind: RingKind::Quotient(p, q),
                }))
            }
        }
    }

    /// Moves a constant of ring `from` into `to` along the chain of
    /// polynomial and quotient constructions.
    fn coerce(from: &Arc<RingEntry>, a: Elem, to: &Arc<RingEntry>) -> Option<Elem> {
        if same(from, to) {
            return Some(a);
        }
        match &to.kind {
            RingKind::PolyQuot(base, pq) => Self::coerce(from, a, base).map(|b| pq.embed(b)),
            RingKind::Quotient(parent, q) => Self::coerce(from, a, parent).map(|b| q.projection[b]),
            _ => None,
        }
    }

    /// The class of `x` in `target`, if it is a polynomial quotient or a
    /// quotient of one.
    fn indeterminate(target: &Arc<RingEntry>) -> Option<Elem> {
        match &target.kind {
            RingKind::PolyQuot(_, pq) => Some(pq.x()),
            RingKind::Quotient(parent, q) => Self::indeterminate(parent).map(|x| q.projection[x]),
            _ => None,
        }
    }

    /// Evaluates an element literal in `target`.
    pub fn eval(&self, e: &Lit, target: &Arc<RingEntry>) -> CliResult<Elem> {
        let r = target.ring.as_ref();
        Ok(match &e.node {
            ElemExpr::Int(n) => r.int_mul(*n, r.one()),
            ElemExpr::X => Self::indeterminate(target).ok_or_else(|| {
                CliError::elaborate(e.span, format!("`x` is not an element of ring `{}`", target.name))
            })?,
            ElemExpr::Name(n) => {
                let name = Spanned::new(n.clone(), e.span);
                match self.lookup(&name)? {
                    Binding::Const(from, a) => Self::coerce(from, *a, target).ok_or_else(|| {
                        CliError::elaborate(
                            e.span,
                            format!("constant `{n}` of ring `{}` is not valid in ring `{}`", from.name, target.name),
                        )
                    })?,
                    other => return Err(Self::wrong_kind(&name, "const", other)),
                }
            }
            ElemExpr::Pair(a, b) => match &target.kind {
                RingKind::Product(left, right) => {
                    let (x, y) = (self.eval(a, left)?, self.eval(b, right)?);
                    x * right.ring.size() + y
                }
                _ => {
                    return Err(CliError::elaborate(
                        e.span,
                        format!("pair literal is not valid in ring `{}`, which is not a product", target.name),
                    ))
                }
            },
            ElemExpr::Neg(a) => r.neg(self.eval(a, target)?),
            ElemExpr::Add(a, b) => r.add(self.eval(a, target)?, self.eval(b, target)?),
            ElemExpr::Sub(a, b) => r.sub(self.eval(a, target)?, self.eval(b, target)?),
            ElemExpr::Mul(a, b) => r.mul(self.eval(a, target)?, self.eval(b, target)?),
            ElemExpr::Pow(a, k) => r.pow(self.eval(a, target)?, *k),
        })
    }

    /// Evaluates a literal as a polynomial in `x` over `base`.
    fn eval_poly(&self, e: &Lit, base: &Arc<RingEntry>) -> CliResult<Poly> {
        let r = base.ring.as_ref();
        if !e.node.mentions_x() {
            return Ok(Poly::constant(r, self.eval(e, base)?));
        }
        Ok(match &e.node {
            ElemExpr::X => Poly::x(r),
            ElemExpr::Neg(a) => self.eval_poly(a, base)?.neg(r),
            ElemExpr::Add(a, b) => self.eval_poly(a, base)?.add(&self.eval_poly(b, base)?, r),
            ElemExpr::Sub(a, b) => self.eval_poly(a, base)?.sub(&self.eval_poly(b, base)?, r),
            ElemExpr::Mul(a, b) => self.eval_poly(a, base)?.mul(&self.eval_poly(b, base)?, r),
            ElemExpr::Pow(a, k) => self.eval_poly(a, base)?.pow(*k, r),
            _ => {
                return Err(CliError::elaborate(
                    e.span,
                    "`x` may not appear inside a pair literal",
                ))
            }
        })
    }

    /// Elaborates a module expression over `ring`.
    pub fn module_expr(&self, expr: &ModExpr, ring: &Arc<RingEntry>) -> CliResult<Arc<ModuleEntry>> {
        let check_ring = |n: &Name| -> CliResult<()> {
            let r = self.ring(n)?;
            if same(&r, ring) {
                Ok(())
            } else {
                Err(CliError::elaborate(
                    n.span,
                    format!("ring `{}` differs from the module's ring `{}`", n.node, ring.name),
                ))
            }
        };
        let gens = |items: &[Lit]| -> CliResult<Ideal> {
            let g = items.iter().map(|e| self.eval(e, ring)).collect::<CliResult<Vec<_>>>()?;
            Ok(Ideal::generated(&ring.ring, &g))
        };
        let entry = |module, kind| {
            Arc::new(ModuleEntry {
                expr: expr.to_string(),
                ring: Arc::clone(ring),
                module,
                kind,
            })
        };
        Ok(match expr {
            ModExpr::Regular(n) => {
                check_ring(n)?;
                entry(module_from_ring(&ring.ring), ModuleKind::Regular)
            }
            ModExpr::Cyclic(n, items) => {
                check_ring(n)?;
                let i = gens(items)?;
                let q = module_cyclic(&i);
                entry(Arc::clone(&q.module), ModuleKind::Cyclic(i, q))
            }
            ModExpr::Ideal(n, items) => {
                check_ring(n)?;
                let i = gens(items)?;
                let s = module_ideal(&i);
                entry(Arc::clone(&s.module), ModuleKind::Ideal(i, s))
            }
            ModExpr::Name(n) => {
                let m = self.module(n)?;
                if !same(&m.ring, ring) {
                    return Err(CliError::elaborate(
                        n.span,
                        format!("module `{}` lives over ring `{}`, not `{}`", n.node, m.ring.name, ring.name),
                    ));
                }
                m
            }
            ModExpr::Sum(a, b) => {
                let (l, r) = (self.module_expr(a, ring)?, self.module_expr(b, ring)?);
                let s = direct_sum(&l.module, &r.module, &self.budget).map_err(alg(a.span()))?;
                entry(Arc::clone(&s.module), ModuleKind::Sum(l, r, s))
            }
        })
    }

    fn hom(&self, spec: &Spanned<HomSpec>, from: &Arc<ModuleEntry>, to: &Arc<ModuleEntry>) -> CliResult<ModuleHom> {
        let span = spec.span;
        let is_same = Arc::ptr_eq(from, to) || from.module == to.module;
        let fail = |what: &str| {
            CliError::elaborate(span, format!("no {what} map from `{}` to `{}`", from.expr, to.expr))
        };
        if !same(&from.ring, &to.ring) {
            return Err(CliError::elaborate(span, "sequence modules live over different rings"));
        }
        match &spec.node {
            HomSpec::Zero => ModuleHom::zero(&from.module, &to.module).map_err(alg(span)),
            HomSpec::MulBy(e) => {
                if !is_same {
                    return Err(fail("multiplication"));
                }
                Ok(ModuleHom::scalar(&from.module, self.eval(e, &from.ring)?))
            }
            HomSpec::Incl => {
                if is_same {
                    return Ok(ModuleHom::identity(&from.module));
                }
                if let ModuleKind::Sum(l, r, s) = &to.kind {
                    if Arc::ptr_eq(l, from) || l.module == from.module {
                        return Ok(s.inject_left.clone());
                    }
                    if Arc::ptr_eq(r, from) || r.module == from.module {
                        return Ok(s.inject_right.clone());
                    }
                }
                let lift: Vec<Elem> = match &from.kind {
                    ModuleKind::Regular => from.module.elements().collect(),
                    ModuleKind::Ideal(_, s) => s.inclusion.map().to_vec(),
                    _ => return Err(fail("inclusion")),
                };
                let map = lift
                    .iter()
                    .map(|&a| locate(to, a).ok_or_else(|| fail("inclusion")))
                    .collect::<CliResult<Vec<_>>>()?;
                ModuleHom::new(Arc::clone(&from.module), Arc::clone(&to.module), map).map_err(|_| fail("inclusion"))
            }
            HomSpec::Proj => {
                if is_same {
                    return Ok(ModuleHom::identity(&from.module));
                }
                if let ModuleKind::Sum(l, r, s) = &from.kind {
                    if Arc::ptr_eq(l, to) || l.module == to.module {
                        return Ok(s.project_left.clone());
                    }
                    if Arc::ptr_eq(r, to) || r.module == to.module {
                        return Ok(s.project_right.clone());
                    }
                }
                let lift: Vec<Elem> = match &from.kind {
                    ModuleKind::Regular => from.module.elements().collect(),
                    ModuleKind::Cyclic(_, q) => q.representatives.clone(),
                    _ => return Err(fail("projection")),
                };
                let ModuleKind::Cyclic(_, q) = &to.kind else {
                    return Err(fail("projection"));
                };
                let map = lift.iter().map(|&a| q.projection.apply(a)).collect();
                ModuleHom::new(Arc::clone(&from.module), Arc::clone(&to.module), map).map_err(|_| fail("projection"))
            }
        }
    }
}

/// Position of the ring element `a` in a module built from the ring.
fn locate(m: &ModuleEntry, a: Elem) -> Option<Elem> {
    match &m.kind {
        ModuleKind::Regular => Some(a),
        ModuleKind::Ideal(_, s) => s.inclusion.map().binary_search(&a).ok(),
        ModuleKind::Cyclic(_, q) => Some(q.projection.apply(a)),
        ModuleKind::Sum(..) => None,
    }
}

fn ring_span(e: &RingExpr) -> Span {
    match e {
        RingExpr::Zmod(n) => n.span,
        RingExpr::Name(n) | RingExpr::PolyQuot(n, _) | RingExpr::Quotient(n, _) => n.span,
        RingExpr::Product(a, _) => ring_span(a),
    }
}
