//! Finite commutative rings stored as dense Cayley tables.

pub(crate) mod iso;
mod poly;

pub use iso::find_ring_isomorphism;
pub use poly::{polyquot, Poly, PolyQuotient};

use std::sync::Arc;

use crate::error::{check_budget, AlgError, Result};
use crate::report::{CheckReport, Named, Value};
use crate::Budget;

/// Index of an element in a ring or module carrier.
pub type Elem = usize;

/// A finite commutative ring with identity, given by its addition and
/// multiplication tables over the carrier `0..size`.
#[derive(Debug, Clone)]
pub struct RingTable {
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    one: Elem,
    labels: Vec<String>,
    provenance: String,
}

impl PartialEq for RingTable {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for RingTable {}

impl RingTable {
    /// Builds a ring from row-major `size × size` tables.
    ///
    /// Shapes and the additive identity are checked here; the full axiom set
    /// is left to [`RingTable::audit`].
    pub fn from_tables(
        add: Vec<Elem>,
        mul: Vec<Elem>,
        zero: Elem,
        one: Elem,
        labels: Vec<String>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let size = labels.len();
        if size == 0 {
            return Err(AlgError::Invalid("ring carrier must be nonempty".into()));
        }
        if add.len() != size * size || mul.len() != size * size {
            return Err(AlgError::Invalid("table shape does not match carrier".into()));
        }
        if zero >= size || one >= size || add.iter().chain(&mul).any(|&x| x >= size) {
            return Err(AlgError::Invalid("table entry out of range".into()));
        }
        let mut neg = vec![usize::MAX; size];
        for a in 0..size {
            for b in 0..size {
                if add[a * size + b] == zero {
                    neg[a] = b;
                    break;
                }
            }
        }
        if let Some(a) = neg.iter().position(|&n| n == usize::MAX) {
            return Err(AlgError::Axiom(format!(
                "element {} has no additive inverse",
                labels[a]
            )));
        }
        Ok(RingTable {
            size,
            add,
            mul,
            neg,
            zero,
            one,
            labels,
            provenance: provenance.into(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = self.one;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `n · a` as an iterated sum.
    pub fn int_mul(&self, mut n: u64, a: Elem) -> Elem {
        let mut base = a;
        let mut acc = self.zero;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    /// Finds the element with the given label.
    pub fn find_label(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn same_ring(&self, other: &RingTable) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.elements().find(|&b| self.mul(a, b) == self.one)
    }

    /// Least `k ≥ 1` with `a^k = 0`, if any.
    pub fn nilpotency_index(&self, a: Elem) -> Option<u64> {
        let mut p = a;
        for k in 1..=self.size as u64 {
            if p == self.zero {
                return Some(k);
            }
            p = self.mul(p, a);
        }
        None
    }

    pub fn nilpotents(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&a| self.nilpotency_index(a).is_some())
            .collect()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    /// Least nonzero `b` with `a·b = 0`.
    pub fn zero_divisor_partner(&self, a: Elem) -> Option<Elem> {
        self.elements()
            .find(|&b| b != self.zero && self.mul(a, b) == self.zero)
    }

    /// Additive order of `a`.
    pub fn additive_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.zero {
            x = self.add(x, a);
            n += 1;
        }
        n
    }

    /// Smallest `n ≥ 1` with `n·1 = 0`.
    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one)
    }

    /// True when every nonzero element is a unit and the ring is nontrivial.
    pub fn is_field(&self) -> bool {
        !self.is_trivial() && self.elements().all(|a| a == self.zero || self.is_unit(a))
    }

    /// Exhaustive O(k³) check of the commutative-ring axioms.
    pub fn audit(&self) -> Result<()> {
        let k = self.size;
        let lab = |a: Elem| self.labels[a].as_str();
        if (self.zero == self.one) != (k == 1) {
            return Err(AlgError::Axiom("0 = 1 in a nontrivial ring".into()));
        }
        for a in 0..k {
            if self.add(a, self.zero) != a {
                return Err(AlgError::Axiom(format!("{} + 0 != {}", lab(a), lab(a))));
            }
            if self.mul(a, self.one) != a {
                return Err(AlgError::Axiom(format!("{} * 1 != {}", lab(a), lab(a))));
            }
            if self.add(a, self.neg(a)) != self.zero {
                return Err(AlgError::Axiom(format!("{} has no negative", lab(a))));
            }
            for b in 0..k {
                if self.add(a, b) != self.add(b, a) {
                    return Err(AlgError::Axiom(format!(
                        "addition not commutative at ({}, {})",
                        lab(a),
                        lab(b)
                    )));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(AlgError::Axiom(format!(
                        "multiplication not commutative at ({}, {})",
                        lab(a),
                        lab(b)
                    )));
                }
                for c in 0..k {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(AlgError::Axiom(format!(
                            "addition not associative at ({}, {}, {})",
                            lab(a),
                            lab(b),
                            lab(c)
                        )));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(AlgError::Axiom(format!(
                            "multiplication not associative at ({}, {}, {})",
                            lab(a),
                            lab(b),
                            lab(c)
                        )));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(AlgError::Axiom(format!(
                            "distributivity fails at ({}, {}, {})",
                            lab(a),
                            lab(b),
                            lab(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The ring of integers modulo `n`, labelled `"0".."n-1"`.
pub fn zmod(n: usize, budget: &Budget) -> Result<RingTable> {
    if n == 0 {
        return Err(AlgError::Invalid("zmod(0) is not a finite ring".into()));
    }
    check_budget("ring carrier", n, budget.max_carrier)?;
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push((a + b) % n);
            mul.push((a * b) % n);
        }
    }
    let labels = (0..n).map(|a| a.to_string()).collect();
    RingTable::from_tables(add, mul, 0, 1 % n, labels, format!("zmod({n})"))
}

/// Componentwise product ring; element `(a, b)` has index `a·|R2| + b`.
pub fn ring_product(r1: &RingTable, r2: &RingTable, budget: &Budget) -> Result<RingTable> {
    let (k1, k2) = (r1.size(), r2.size());
    let k = k1
        .checked_mul(k2)
        .ok_or(AlgError::Budget {
            what: "ring carrier",
            needed: usize::MAX,
            limit: budget.max_carrier,
        })?;
    check_budget("ring carrier", k, budget.max_carrier)?;
    let pair = |a: Elem, b: Elem| a * k2 + b;
    let mut add = vec![0; k * k];
    let mut mul = vec![0; k * k];
    for x in 0..k {
        let (a1, b1) = (x / k2, x % k2);
        for y in 0..k {
            let (a2, b2) = (y / k2, y % k2);
            add[x * k + y] = pair(r1.add(a1, a2), r2.add(b1, b2));
            mul[x * k + y] = pair(r1.mul(a1, a2), r2.mul(b1, b2));
        }
    }
    let labels = (0..k)
        .map(|x| format!("({},{})", r1.label(x / k2), r2.label(x % k2)))
        .collect();
    RingTable::from_tables(
        add,
        mul,
        pair(r1.zero(), r2.zero()),
        pair(r1.one(), r2.one()),
        labels,
        format!("{} * {}", r1.provenance(), r2.provenance()),
    )
}

/// All idempotents `e² = e`, in ascending index order.
pub fn idempotents(r: &RingTable) -> Vec<Elem> {
    r.elements().filter(|&e| r.mul(e, e) == e).collect()
}

/// A multiplicatively closed subset containing 1.
#[derive(Debug, Clone)]
pub struct MulSet {
    ring: Arc<RingTable>,
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl PartialEq for MulSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.ring.same_ring(&other.ring)
    }
}

impl Eq for MulSet {}

impl MulSet {
    /// Wraps an explicit subset, rejecting it unless it contains 1 and is
    /// closed under multiplication.
    pub fn new(ring: Arc<RingTable>, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut mask = vec![false; ring.size()];
        for m in members {
            if m >= ring.size() {
                return Err(AlgError::Invalid(format!("element {m} not in ring")));
            }
            mask[m] = true;
        }
        if !mask[ring.one()] {
            return Err(AlgError::Invalid("multiplicative set must contain 1".into()));
        }
        let members: Vec<Elem> = (0..ring.size()).filter(|&a| mask[a]).collect();
        for &s in &members {
            for &t in &members {
                if !mask[ring.mul(s, t)] {
                    return Err(AlgError::Invalid(format!(
                        "set not closed: {}·{} = {}",
                        ring.label(s),
                        ring.label(t),
                        ring.label(ring.mul(s, t))
                    )));
                }
            }
        }
        Ok(MulSet {
            ring,
            members,
            mask,
        })
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    /// Members in ascending index order.
    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.mask.get(a).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Product of all members: a single element killing anything some member kills.
    pub fn product_of_members(&self) -> Elem {
        self.members
            .iter()
            .fold(self.ring.one(), |acc, &s| self.ring.mul(acc, s))
    }

    pub fn labels(&self) -> Vec<String> {
        self.members
            .iter()
            .map(|&s| self.ring.label(s).to_string())
            .collect()
    }
}

/// Smallest multiplicatively closed set containing 1 and `generators`.
pub fn mulclose(ring: &Arc<RingTable>, generators: &[Elem]) -> MulSet {
    let mut mask = vec![false; ring.size()];
    mask[ring.one()] = true;
    let mut members = vec![ring.one()];
    for &g in generators {
        if !mask[g] {
            mask[g] = true;
            members.push(g);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let s = members[i];
        let mut j = 0;
        while j < members.len() {
            let p = ring.mul(s, members[j]);
            if !mask[p] {
                mask[p] = true;
                members.push(p);
            }
            j += 1;
        }
        i += 1;
    }
    members.sort_unstable();
    MulSet {
        ring: Arc::clone(ring),
        members,
        mask,
    }
}

/// Decides whether `S` consists of non-zero-divisors.
///
/// Always reports the flag `contains_nilpotent`; a false verdict carries the
/// least `(s, a)` with `a ≠ 0` and `s·a = 0`.
pub fn is_regular_set(set: &MulSet) -> CheckReport {
    let r = set.ring();
    let nilpotent = set
        .members()
        .iter()
        .copied()
        .find(|&s| r.nilpotency_index(s).is_some());
    let mut report = None;
    for &s in set.members() {
        if let Some(a) = r.zero_divisor_partner(s) {
            report = Some(
                CheckReport::fail(format!("{} is a zero-divisor", r.label(s)))
                    .with_counterexample(Named::new("s", Value::Ring(s), r.label(s)))
                    .with_counterexample(Named::new("a", Value::Ring(a), r.label(a))),
            );
            break;
        }
    }
    let mut report =
        report.unwrap_or_else(|| CheckReport::pass("every element of S is a non-zero-divisor"));
    report = report.with_extra(Named::flag("contains_nilpotent", nilpotent.is_some()));
    if let Some(s) = nilpotent {
        report = report.with_extra(Named::new("nilpotent", Value::Ring(s), r.label(s)));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn zmod_basics() {
        let z1 = zmod(1, &b()).unwrap();
        assert_eq!(z1.zero(), z1.one());
        assert!(z1.is_trivial());
        let z6 = zmod(6, &b()).unwrap();
        assert_eq!(z6.add(1, 5), 0);
        assert_eq!(z6.mul(2, 3), 0);
        let z4 = zmod(4, &b()).unwrap();
        assert_eq!(z4.mul(2, 2), 0);
        assert!(matches!(zmod(0, &b()), Err(AlgError::Invalid(_))));
        for n in 1..=12 {
            zmod(n, &b()).unwrap().audit().unwrap();
        }
    }

    #[test]
    fn zmod_respects_carrier_bound() {
        let tight = Budget {
            max_carrier: 10,
            ..Budget::default()
        };
        assert!(matches!(zmod(11, &tight), Err(AlgError::Budget { .. })));
    }

    #[test]
    fn product_of_two_fields_of_order_two_is_boolean() {
        let z2 = zmod(2, &b()).unwrap();
        let t = ring_product(&z2, &z2, &b()).unwrap();
        t.audit().unwrap();
        assert_eq!(t.size(), 4);
        assert_eq!(idempotents(&t), vec![0, 1, 2, 3]);
        assert_eq!(t.label(2), "(1,0)");
    }

    #[test]
    fn product_budget() {
        let z16 = zmod(16, &b()).unwrap();
        let z17 = zmod(17, &b()).unwrap();
        assert!(matches!(
            ring_product(&z16, &z17, &b()),
            Err(AlgError::Budget { .. })
        ));
    }

    #[test]
    fn idempotent_lists() {
        assert_eq!(idempotents(&zmod(6, &b()).unwrap()), vec![0, 1, 3, 4]);
        assert_eq!(idempotents(&zmod(5, &b()).unwrap()), vec![0, 1]);
    }

    #[test]
    fn mulclose_examples() {
        let z6 = Arc::new(zmod(6, &b()).unwrap());
        assert_eq!(mulclose(&z6, &[3]).members(), &[1, 3]);
        assert_eq!(mulclose(&z6, &[]).members(), &[1]);
        let z4 = Arc::new(zmod(4, &b()).unwrap());
        assert_eq!(mulclose(&z4, &[2]).members(), &[0, 1, 2]);
    }

    #[test]
    fn mulset_rejects_non_closed() {
        let z6 = Arc::new(zmod(6, &b()).unwrap());
        assert!(MulSet::new(Arc::clone(&z6), [1, 2]).is_err());
        assert!(MulSet::new(Arc::clone(&z6), [3]).is_err());
        assert!(MulSet::new(z6, [1, 3]).is_ok());
    }

    #[test]
    fn regular_set_examples() {
        let z6 = Arc::new(zmod(6, &b()).unwrap());
        assert!(is_regular_set(&mulclose(&z6, &[])).verdict);
        let rep = is_regular_set(&mulclose(&z6, &[3]));
        assert!(!rep.verdict);
        assert_eq!(rep.counterexample("s").unwrap().ring_elem(), Some(3));
        assert_eq!(rep.counterexample("a").unwrap().ring_elem(), Some(2));
        assert_eq!(rep.extra_flag("contains_nilpotent"), Some(false));
        let z8 = Arc::new(zmod(8, &b()).unwrap());
        assert!(is_regular_set(&mulclose(&z8, &[3])).verdict);
        let z4 = Arc::new(zmod(4, &b()).unwrap());
        assert_eq!(
            is_regular_set(&mulclose(&z4, &[2])).extra_flag("contains_nilpotent"),
            Some(true)
        );
    }

    #[test]
    fn audit_catches_broken_table() {
        let z3 = zmod(3, &b()).unwrap();
        let mut mul = z3.mul_table().to_vec();
        mul[2 * 3 + 2] = 2;
        let broken =
            RingTable::from_tables(z3.add_table().to_vec(), mul, 0, 1, z3.labels().to_vec(), "x")
                .unwrap();
        assert!(matches!(broken.audit(), Err(AlgError::Axiom(_))));
    }
}
