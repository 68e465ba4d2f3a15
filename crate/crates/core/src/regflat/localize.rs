use std::sync::Arc;

use crate::error::Result;
use crate::finring::{Elem, MulSet, RingTable};
use crate::ideal::Ideal;
use crate::modcat::ModuleTable;

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the least index as root so roots are least representatives
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

/// Fraction classes of `X × S` under the relations generated by
/// `(x, t) ~ (u·x, u·t)` and `(x, t) ~ (x + k, t)` for `u ∈ S`, `k` in the
/// S-torsion part. Returns the class of each pair and the least pair per class.
fn fraction_classes(
    carrier: usize,
    set: &MulSet,
    scale: impl Fn(Elem, Elem) -> Elem,
    add: impl Fn(Elem, Elem) -> Elem,
    torsion_gens: &[Elem],
) -> (Vec<Elem>, Vec<(Elem, Elem)>) {
    let ring = set.ring();
    let members = set.members();
    let ns = members.len();
    let pos = |t: Elem| members.binary_search(&t).expect("closed under products");
    let pair = |x: Elem, j: usize| x * ns + j;
    let mut uf = UnionFind::new(carrier * ns);
    for x in 0..carrier {
        for (j, &t) in members.iter().enumerate() {
            for &u in members {
                uf.union(pair(x, j), pair(scale(u, x), pos(ring.mul(u, t))));
            }
            for &k in torsion_gens {
                uf.union(pair(x, j), pair(add(x, k), j));
            }
        }
    }
    let mut class = vec![usize::MAX; carrier * ns];
    let mut reps = Vec::new();
    let mut root_class = vec![usize::MAX; carrier * ns];
    for p in 0..carrier * ns {
        let r = uf.find(p);
        if root_class[r] == usize::MAX {
            root_class[r] = reps.len();
            reps.push((p / ns, members[p % ns]));
        }
        class[p] = root_class[r];
    }
    (class, reps)
}

/// `R_S` with the canonical map `a ↦ a/1`.
#[derive(Debug, Clone)]
pub struct LocalizationResult {
    pub ring: Arc<RingTable>,
    pub set: MulSet,
    /// `a ↦ a/1`.
    pub canonical: Vec<Elem>,
    /// `{a : s·a = 0 for some s ∈ S}`.
    pub kernel: Ideal,
    /// Least `(a, s)` representing each class.
    pub representatives: Vec<(Elem, Elem)>,
    class: Vec<Elem>,
}

impl LocalizationResult {
    pub fn source(&self) -> &Arc<RingTable> {
        self.set.ring()
    }

    /// Class of `a/s`; `s` must lie in `S`.
    pub fn fraction(&self, a: Elem, s: Elem) -> Elem {
        let j = self.set.members().binary_search(&s).expect("denominator in S");
        self.class[a * self.set.len() + j]
    }

    pub fn fraction_labels(&self) -> &[String] {
        self.ring.labels()
    }
}

pub fn localize_ring(set: &MulSet) -> Result<LocalizationResult> {
    let r = set.ring();
    let kernel_members: Vec<Elem> = r
        .elements()
        .filter(|&a| set.members().iter().any(|&s| r.mul(s, a) == r.zero()))
        .collect();
    let kernel = Ideal::from_members(Arc::clone(r), kernel_members)?;
    let kgens = kernel.members().to_vec();
    let (class, reps) = fraction_classes(r.size(), set, |u, x| r.mul(u, x), |a, b| r.add(a, b), &kgens);
    let n = reps.len();
    let ns = set.len();
    let members = set.members();
    let pos = |t: Elem| members.binary_search(&t).unwrap();
    let frac = |a: Elem, s: Elem| class[a * ns + pos(s)];
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for (i, &(a, s)) in reps.iter().enumerate() {
        for (j, &(b, t)) in reps.iter().enumerate() {
            let st = r.mul(s, t);
            add[i * n + j] = frac(r.add(r.mul(t, a), r.mul(s, b)), st);
            mul[i * n + j] = frac(r.mul(a, b), st);
        }
    }
    let labels = reps
        .iter()
        .map(|&(a, s)| format!("{}/{}", r.label(a), r.label(s)))
        .collect();
    let provenance = format!("{}[S^-1]", r.provenance());
    let ring = Arc::new(RingTable::from_tables(
        add,
        mul,
        frac(r.zero(), r.one()),
        frac(r.one(), r.one()),
        labels,
        provenance,
    )?);
    let canonical = r.elements().map(|a| frac(a, r.one())).collect();
    Ok(LocalizationResult {
        ring,
        set: set.clone(),
        canonical,
        kernel,
        representatives: reps,
        class,
    })
}

/// `M_S` over `R_S` with the canonical map `m ↦ m/1`.
#[derive(Debug, Clone)]
pub struct LocalizedModule {
    pub module: Arc<ModuleTable>,
    pub canonical: Vec<Elem>,
    pub representatives: Vec<(Elem, Elem)>,
}

pub fn localize_module(m: &ModuleTable, loc: &LocalizationResult) -> Result<LocalizedModule> {
    let set = &loc.set;
    let r = set.ring();
    let torsion: Vec<Elem> = m
        .elements()
        .filter(|&x| set.members().iter().any(|&s| m.act(s, x) == m.zero()))
        .collect();
    let (class, reps) = fraction_classes(m.size(), set, |u, x| m.act(u, x), |a, b| m.add(a, b), &torsion);
    let n = reps.len();
    let ns = set.len();
    let members = set.members();
    let pos = |t: Elem| members.binary_search(&t).unwrap();
    let frac = |x: Elem, s: Elem| class[x * ns + pos(s)];
    let mut add = vec![0; n * n];
    for (i, &(x, s)) in reps.iter().enumerate() {
        for (j, &(y, t)) in reps.iter().enumerate() {
            add[i * n + j] = frac(m.add(m.act(t, x), m.act(s, y)), r.mul(s, t));
        }
    }
    let k = loc.ring.size();
    let mut scalar = vec![0; k * n];
    for (c, &(a, s)) in loc.representatives.iter().enumerate() {
        for (i, &(x, t)) in reps.iter().enumerate() {
            scalar[c * n + i] = frac(m.act(a, x), r.mul(s, t));
        }
    }
    let labels = reps
        .iter()
        .map(|&(x, s)| format!("{}/{}", m.label(x), r.label(s)))
        .collect();
    let module = Arc::new(ModuleTable::new(
        Arc::clone(&loc.ring),
        add,
        scalar,
        frac(m.zero(), r.one()),
        labels,
    )?);
    let canonical = m.elements().map(|x| frac(x, r.one())).collect();
    Ok(LocalizedModule {
        module,
        canonical,
        representatives: reps,
    })
}
