//! Finite modules over finite rings: tables, homomorphisms, subquotients,
//! direct sums, presentations, tensor products and Tor.

mod abelian;
mod gens;
mod hom;
pub(crate) mod snf;
mod tensor;
mod tor;

pub use gens::{all_submodules, minimal_generators, presentation, Presentation};
pub use hom::{find_module_isomorphism, hom_enumerate, hom_parts, HomParts};
pub use tensor::{tensor, TensorProduct};
pub use tor::{syzygy, tor, tor1, tor1_cyclic_oracle};

use std::sync::Arc;

use crate::error::{check_budget, AlgError, Result};
use crate::finring::{Elem, RingTable};
use crate::ideal::Ideal;
use crate::Budget;

/// A finite module: an abelian group table plus a scalar-action table
/// indexed `scalar[r·m + x] = r·x`.
#[derive(Debug, Clone)]
pub struct ModuleTable {
    ring: Arc<RingTable>,
    size: usize,
    add: Vec<Elem>,
    neg: Vec<Elem>,
    scalar: Vec<Elem>,
    zero: Elem,
    labels: Vec<String>,
}

impl PartialEq for ModuleTable {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.add == other.add
            && self.scalar == other.scalar
            && self.ring.same_ring(&other.ring)
    }
}

impl Eq for ModuleTable {}

impl ModuleTable {
    pub fn new(
        ring: Arc<RingTable>,
        add: Vec<Elem>,
        scalar: Vec<Elem>,
        zero: Elem,
        labels: Vec<String>,
    ) -> Result<Self> {
        let m = labels.len();
        if m == 0 || add.len() != m * m || scalar.len() != ring.size() * m || zero >= m {
            return Err(AlgError::Invalid("module table shape mismatch".into()));
        }
        if add.iter().chain(&scalar).any(|&x| x >= m) {
            return Err(AlgError::Invalid("module table entry out of range".into()));
        }
        let mut neg = vec![usize::MAX; m];
        for a in 0..m {
            neg[a] = (0..m)
                .find(|&b| add[a * m + b] == zero)
                .ok_or_else(|| AlgError::Axiom(format!("{} has no negative", labels[a])))?;
        }
        Ok(ModuleTable {
            ring,
            size: m,
            add,
            neg,
            scalar,
            zero,
            labels,
        })
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn is_zero_module(&self) -> bool {
        self.size == 1
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b])
    }

    /// `r · x`.
    #[inline]
    pub fn act(&self, r: Elem, x: Elem) -> Elem {
        self.scalar[r * self.size + x]
    }

    pub fn int_mul(&self, mut n: u64, a: Elem) -> Elem {
        let (mut base, mut acc) = (a, self.zero);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    pub fn scalar_table(&self) -> &[Elem] {
        &self.scalar
    }

    pub fn additive_order(&self, x: Elem) -> usize {
        let (mut y, mut n) = (x, 1);
        while y != self.zero {
            y = self.add(y, x);
            n += 1;
        }
        n
    }

    /// `{x : s·x = 0}` as a membership mask.
    pub fn annihilated_by(&self, s: Elem) -> Vec<bool> {
        self.elements().map(|x| self.act(s, x) == self.zero).collect()
    }

    /// True when `s·x = 0` for every `x` in the subset.
    pub fn kills(&self, s: Elem, subset: &[bool]) -> bool {
        self.elements()
            .all(|x| !subset[x] || self.act(s, x) == self.zero)
    }

    /// `Ann(M) = {r : r·M = 0}`.
    pub fn annihilator(&self) -> Ideal {
        let members = self
            .ring
            .elements()
            .filter(|&r| self.elements().all(|x| self.act(r, x) == self.zero));
        Ideal::from_members(Arc::clone(&self.ring), members).expect("annihilators are ideals")
    }

    /// `{r : r·x = 0}`.
    pub fn element_annihilator(&self, x: Elem) -> Vec<Elem> {
        self.ring
            .elements()
            .filter(|&r| self.act(r, x) == self.zero)
            .collect()
    }

    /// Submodule generated by `gens`, as a membership mask.
    pub fn span(&self, gens: &[Elem]) -> Vec<bool> {
        let mut mask = vec![false; self.size];
        mask[self.zero] = true;
        let mut members = vec![self.zero];
        for &g in gens {
            if mask[g] {
                continue;
            }
            let mut multiples: Vec<Elem> = self.ring.elements().map(|r| self.act(r, g)).collect();
            multiples.sort_unstable();
            multiples.dedup();
            let prev = members.len();
            for i in 0..prev {
                for &p in &multiples {
                    let y = self.add(members[i], p);
                    if !mask[y] {
                        mask[y] = true;
                        members.push(y);
                    }
                }
            }
        }
        mask
    }

    /// `s·X` for a subset mask `X`.
    pub fn scaled(&self, s: Elem, subset: &[bool]) -> Vec<bool> {
        let mut out = vec![false; self.size];
        for x in self.elements().filter(|&x| subset[x]) {
            out[self.act(s, x)] = true;
        }
        out
    }

    /// Checks that a mask is a submodule.
    pub fn is_submodule(&self, mask: &[bool]) -> bool {
        mask.len() == self.size
            && mask[self.zero]
            && self.elements().filter(|&x| mask[x]).all(|x| {
                self.elements()
                    .filter(|&y| mask[y])
                    .all(|y| mask[self.add(x, y)])
                    && self.ring.elements().all(|r| mask[self.act(r, x)])
            })
    }

    /// Exhaustive check of the abelian-group and action axioms.
    pub fn audit(&self) -> Result<()> {
        let r = &self.ring;
        let m = self.size;
        for a in 0..m {
            if self.add(a, self.zero) != a {
                return Err(AlgError::Axiom("zero is not an additive identity".into()));
            }
            if self.act(r.one(), a) != a {
                return Err(AlgError::Axiom(format!("1·{} != {}", self.labels[a], self.labels[a])));
            }
            for b in 0..m {
                if self.add(a, b) != self.add(b, a) {
                    return Err(AlgError::Axiom("module addition not commutative".into()));
                }
                for c in 0..m {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(AlgError::Axiom("module addition not associative".into()));
                    }
                }
                for s in r.elements() {
                    if self.act(s, self.add(a, b)) != self.add(self.act(s, a), self.act(s, b)) {
                        return Err(AlgError::Axiom("r(m+m') != rm + rm'".into()));
                    }
                }
            }
            for s in r.elements() {
                for t in r.elements() {
                    if self.act(r.add(s, t), a) != self.add(self.act(s, a), self.act(t, a)) {
                        return Err(AlgError::Axiom("(r+r')m != rm + r'm".into()));
                    }
                    if self.act(r.mul(s, t), a) != self.act(s, self.act(t, a)) {
                        return Err(AlgError::Axiom("(rr')m != r(r'm)".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// An R-linear map between module carriers.
#[derive(Debug, Clone)]
pub struct ModuleHom {
    domain: Arc<ModuleTable>,
    codomain: Arc<ModuleTable>,
    map: Vec<Elem>,
}

impl PartialEq for ModuleHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.domain == other.domain && self.codomain == other.codomain
    }
}

impl Eq for ModuleHom {}

impl ModuleHom {
    /// Validates linearity against the full tables.
    pub fn new(domain: Arc<ModuleTable>, codomain: Arc<ModuleTable>, map: Vec<Elem>) -> Result<Self> {
        let h = ModuleHom::new_unchecked(domain, codomain, map)?;
        h.validate()?;
        Ok(h)
    }

    pub(crate) fn new_unchecked(
        domain: Arc<ModuleTable>,
        codomain: Arc<ModuleTable>,
        map: Vec<Elem>,
    ) -> Result<Self> {
        if !domain.ring.same_ring(&codomain.ring) {
            return Err(AlgError::RingMismatch("hom between modules over different rings".into()));
        }
        if map.len() != domain.size() || map.iter().any(|&y| y >= codomain.size()) {
            return Err(AlgError::Invalid("hom map has wrong shape".into()));
        }
        Ok(ModuleHom {
            domain,
            codomain,
            map,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let (d, c) = (&self.domain, &self.codomain);
        if self.map[d.zero()] != c.zero() {
            return Err(AlgError::Axiom("hom does not preserve zero".into()));
        }
        for a in d.elements() {
            for b in d.elements() {
                if self.map[d.add(a, b)] != c.add(self.map[a], self.map[b]) {
                    return Err(AlgError::Axiom("hom not additive".into()));
                }
            }
            for r in d.ring().elements() {
                if self.map[d.act(r, a)] != c.act(r, self.map[a]) {
                    return Err(AlgError::Axiom("hom not R-linear".into()));
                }
            }
        }
        Ok(())
    }

    pub fn identity(m: &Arc<ModuleTable>) -> Self {
        ModuleHom {
            domain: Arc::clone(m),
            codomain: Arc::clone(m),
            map: m.elements().collect(),
        }
    }

    pub fn zero(domain: &Arc<ModuleTable>, codomain: &Arc<ModuleTable>) -> Result<Self> {
        ModuleHom::new_unchecked(
            Arc::clone(domain),
            Arc::clone(codomain),
            vec![codomain.zero(); domain.size()],
        )
    }

    /// Multiplication by a ring element on a single module.
    pub fn scalar(m: &Arc<ModuleTable>, r: Elem) -> Self {
        ModuleHom {
            domain: Arc::clone(m),
            codomain: Arc::clone(m),
            map: m.elements().map(|x| m.act(r, x)).collect(),
        }
    }

    pub fn domain(&self) -> &Arc<ModuleTable> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<ModuleTable> {
        &self.codomain
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleHom) -> Result<ModuleHom> {
        if self.codomain.as_ref() != other.domain.as_ref() {
            return Err(AlgError::Invalid("homs are not composable".into()));
        }
        ModuleHom::new_unchecked(
            Arc::clone(&self.domain),
            Arc::clone(&other.codomain),
            self.map.iter().map(|&y| other.map[y]).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|&y| y == self.codomain.zero())
    }

    pub fn kernel_mask(&self) -> Vec<bool> {
        self.map.iter().map(|&y| y == self.codomain.zero()).collect()
    }

    pub fn image_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.codomain.size()];
        for &y in &self.map {
            mask[y] = true;
        }
        mask
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_mask().iter().filter(|&&k| k).count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image_mask().iter().all(|&b| b)
    }
}

/// A submodule realised as its own table together with the inclusion map.
#[derive(Debug, Clone)]
pub struct Submodule {
    pub module: Arc<ModuleTable>,
    pub inclusion: ModuleHom,
}

/// Builds the submodule with the given membership mask; element order follows
/// the parent's indices.
pub fn submodule(parent: &Arc<ModuleTable>, mask: &[bool]) -> Submodule {
    debug_assert!(parent.is_submodule(mask));
    let members: Vec<Elem> = parent.elements().filter(|&x| mask[x]).collect();
    let mut index = vec![usize::MAX; parent.size()];
    for (i, &x) in members.iter().enumerate() {
        index[x] = i;
    }
    let n = members.len();
    let k = parent.ring().size();
    let mut add = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            add[i * n + j] = index[parent.add(members[i], members[j])];
        }
    }
    let mut scalar = vec![0; k * n];
    for r in 0..k {
        for i in 0..n {
            scalar[r * n + i] = index[parent.act(r, members[i])];
        }
    }
    let labels = members.iter().map(|&x| parent.label(x).to_string()).collect();
    let module = Arc::new(
        ModuleTable::new(Arc::clone(parent.ring()), add, scalar, index[parent.zero()], labels)
            .expect("submodule tables are well formed"),
    );
    let inclusion = ModuleHom {
        domain: Arc::clone(&module),
        codomain: Arc::clone(parent),
        map: members,
    };
    Submodule { module, inclusion }
}

/// `M/N` with its projection.
#[derive(Debug, Clone)]
pub struct QuotientModule {
    pub module: Arc<ModuleTable>,
    pub projection: ModuleHom,
    /// Least element of each coset.
    pub representatives: Vec<Elem>,
}

/// Quotient by the submodule with the given mask; cosets ordered by least
/// representative and labelled `[m]`.
pub fn quotient_module(parent: &Arc<ModuleTable>, mask: &[bool]) -> QuotientModule {
    debug_assert!(parent.is_submodule(mask));
    let sub: Vec<Elem> = parent.elements().filter(|&x| mask[x]).collect();
    let mut proj = vec![usize::MAX; parent.size()];
    let mut reps = Vec::new();
    for x in parent.elements() {
        if proj[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &s in &sub {
            proj[parent.add(x, s)] = c;
        }
    }
    let n = reps.len();
    let k = parent.ring().size();
    let mut add = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            add[i * n + j] = proj[parent.add(reps[i], reps[j])];
        }
    }
    let mut scalar = vec![0; k * n];
    for r in 0..k {
        for i in 0..n {
            scalar[r * n + i] = proj[parent.act(r, reps[i])];
        }
    }
    let labels = reps.iter().map(|&x| format!("[{}]", parent.label(x))).collect();
    let module = Arc::new(
        ModuleTable::new(Arc::clone(parent.ring()), add, scalar, proj[parent.zero()], labels)
            .expect("quotient tables are well formed"),
    );
    let projection = ModuleHom {
        domain: Arc::clone(parent),
        codomain: Arc::clone(&module),
        map: proj,
    };
    QuotientModule {
        module,
        projection,
        representatives: reps,
    }
}

/// The ring as a module over itself.
pub fn module_from_ring(ring: &Arc<RingTable>) -> Arc<ModuleTable> {
    Arc::new(
        ModuleTable::new(
            Arc::clone(ring),
            ring.add_table().to_vec(),
            ring.mul_table().to_vec(),
            ring.zero(),
            ring.labels().to_vec(),
        )
        .expect("ring tables form a module"),
    )
}

/// The cyclic module `R/I`.
pub fn module_cyclic(ideal: &Ideal) -> QuotientModule {
    let regular = module_from_ring(ideal.ring());
    let mask: Vec<bool> = regular.elements().map(|a| ideal.contains(a)).collect();
    quotient_module(&regular, &mask)
}

/// The ideal `I` as a submodule of `R`.
pub fn module_ideal(ideal: &Ideal) -> Submodule {
    let regular = module_from_ring(ideal.ring());
    let mask: Vec<bool> = regular.elements().map(|a| ideal.contains(a)).collect();
    submodule(&regular, &mask)
}

/// The free module `R^g`; the tuple `(r₀,…,r_{g-1})` has index `Σ rᵢ·kⁱ`.
pub fn free_module(ring: &Arc<RingTable>, rank: usize, budget: &Budget) -> Result<Arc<ModuleTable>> {
    let k = ring.size();
    let size = (0..rank)
        .try_fold(1usize, |acc, _| acc.checked_mul(k))
        .unwrap_or(usize::MAX);
    check_budget("free module carrier", size, budget.max_module)?;
    if rank == 1 {
        return Ok(module_from_ring(ring));
    }
    let digits = |mut x: usize| -> Vec<Elem> {
        (0..rank)
            .map(|_| {
                let d = x % k;
                x /= k;
                d
            })
            .collect()
    };
    let undigits = |d: &[Elem]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * k + c) };
    let tuples: Vec<Vec<Elem>> = (0..size).map(digits).collect();
    let mut add = vec![0; size * size];
    for x in 0..size {
        for y in 0..size {
            let s: Vec<Elem> = (0..rank).map(|i| ring.add(tuples[x][i], tuples[y][i])).collect();
            add[x * size + y] = undigits(&s);
        }
    }
    let mut scalar = vec![0; k * size];
    for r in 0..k {
        for x in 0..size {
            let s: Vec<Elem> = tuples[x].iter().map(|&c| ring.mul(r, c)).collect();
            scalar[r * size + x] = undigits(&s);
        }
    }
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().map(|&c| ring.label(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let zero = undigits(&vec![ring.zero(); rank]);
    Ok(Arc::new(ModuleTable::new(Arc::clone(ring), add, scalar, zero, labels)?))
}

/// `M ⊕ N` with its canonical injections and projections.
///
/// The pair `(m, n)` has index `m·|N| + n`.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: Arc<ModuleTable>,
    pub inject_left: ModuleHom,
    pub inject_right: ModuleHom,
    pub project_left: ModuleHom,
    pub project_right: ModuleHom,
}

pub fn direct_sum(m: &Arc<ModuleTable>, n: &Arc<ModuleTable>, budget: &Budget) -> Result<DirectSum> {
    if !m.ring.same_ring(&n.ring) {
        return Err(AlgError::RingMismatch("direct sum over different rings".into()));
    }
    let (a, b) = (m.size(), n.size());
    let size = a.saturating_mul(b);
    check_budget("direct sum carrier", size, budget.max_module)?;
    let k = m.ring.size();
    let pair = |x: Elem, y: Elem| x * b + y;
    let mut add = vec![0; size * size];
    for p in 0..size {
        for q in 0..size {
            add[p * size + q] = pair(m.add(p / b, q / b), n.add(p % b, q % b));
        }
    }
    let mut scalar = vec![0; k * size];
    for r in 0..k {
        for p in 0..size {
            scalar[r * size + p] = pair(m.act(r, p / b), n.act(r, p % b));
        }
    }
    let labels = (0..size)
        .map(|p| format!("({},{})", m.label(p / b), n.label(p % b)))
        .collect();
    let module = Arc::new(ModuleTable::new(
        Arc::clone(&m.ring),
        add,
        scalar,
        pair(m.zero(), n.zero()),
        labels,
    )?);
    let hom = |d: &Arc<ModuleTable>, c: &Arc<ModuleTable>, map: Vec<Elem>| ModuleHom {
        domain: Arc::clone(d),
        codomain: Arc::clone(c),
        map,
    };
    Ok(DirectSum {
        inject_left: hom(m, &module, (0..a).map(|x| pair(x, n.zero())).collect()),
        inject_right: hom(n, &module, (0..b).map(|y| pair(m.zero(), y)).collect()),
        project_left: hom(&module, m, (0..size).map(|p| p / b).collect()),
        project_right: hom(&module, n, (0..size).map(|p| p % b).collect()),
        module,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::zmod;
    use crate::ideal::principal_ideal;

    fn z(n: usize) -> Arc<RingTable> {
        Arc::new(zmod(n, &Budget::default()).unwrap())
    }

    #[test]
    fn regular_module() {
        let r = z(6);
        let m = module_from_ring(&r);
        m.audit().unwrap();
        assert_eq!(m.size(), 6);
        for a in r.elements() {
            for x in r.elements() {
                assert_eq!(m.act(a, x), r.mul(a, x));
            }
        }
        assert!(module_from_ring(&z(1)).is_zero_module());
    }

    #[test]
    fn cyclic_modules() {
        let r = z(6);
        let q = module_cyclic(&principal_ideal(&r, 3));
        q.module.audit().unwrap();
        assert_eq!(q.module.size(), 3);
        assert_eq!(module_cyclic(&Ideal::zero(&r)).module.size(), 6);
        assert!(module_cyclic(&Ideal::unit(&r)).module.is_zero_module());
    }

    #[test]
    fn direct_sums() {
        let b = Budget::default();
        let r = z(4);
        let m = module_from_ring(&r);
        let zero = module_from_ring(&z(1));
        let zero_over_r = module_cyclic(&Ideal::unit(&r)).module;
        let s = direct_sum(&m, &zero_over_r, &b).unwrap();
        s.module.audit().unwrap();
        assert_eq!(s.module.size(), 4);
        assert!(direct_sum(&m, &zero, &b).is_err());
        let c = module_cyclic(&principal_ideal(&r, 2)).module;
        let t = direct_sum(&m, &c, &b).unwrap();
        assert_eq!(t.module.size(), 8);
        for hom in [&t.inject_left, &t.inject_right, &t.project_left, &t.project_right] {
            hom.validate().unwrap();
        }
        let round = t.inject_left.then(&t.project_left).unwrap();
        assert_eq!(round, ModuleHom::identity(&m));
    }

    #[test]
    fn free_modules() {
        let r = z(3);
        let f = free_module(&r, 2, &Budget::default()).unwrap();
        f.audit().unwrap();
        assert_eq!(f.size(), 9);
        assert_eq!(free_module(&r, 0, &Budget::default()).unwrap().size(), 1);
        let tight = Budget {
            max_module: 8,
            ..Budget::default()
        };
        assert!(free_module(&r, 2, &tight).is_err());
    }

    #[test]
    fn hom_validation_rejects_nonlinear_maps() {
        let m = module_from_ring(&z(4));
        assert!(ModuleHom::new(Arc::clone(&m), Arc::clone(&m), vec![0, 1, 1, 0]).is_err());
        assert!(ModuleHom::new(Arc::clone(&m), Arc::clone(&m), vec![0, 2, 0, 2]).is_ok());
    }
}
