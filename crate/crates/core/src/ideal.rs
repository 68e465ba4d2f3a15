//! Ideals of a finite commutative ring: enumeration, arithmetic, quotients
//! and the prime/maximal spectrum.

use std::fmt;
use std::sync::Arc;

use crate::error::{check_budget, AlgError, Result};
use crate::finring::{Elem, RingTable};
use crate::Budget;

/// An ideal stored extensionally as its member set.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<RingTable>,
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && self.ring.same_ring(&other.ring)
    }
}

impl Eq for Ideal {}

impl Ideal {
    fn from_mask(ring: Arc<RingTable>, mask: Vec<bool>) -> Self {
        let members = (0..mask.len()).filter(|&a| mask[a]).collect();
        Ideal {
            ring,
            members,
            mask,
        }
    }

    /// Validates an explicit member set.
    pub fn from_members(ring: Arc<RingTable>, members: impl IntoIterator<Item = Elem>) -> Result<Self> {
        let mut mask = vec![false; ring.size()];
        for m in members {
            if m >= ring.size() {
                return Err(AlgError::Invalid(format!("element {m} not in ring")));
            }
            mask[m] = true;
        }
        let ideal = Ideal::from_mask(ring, mask);
        ideal.audit()?;
        Ok(ideal)
    }

    /// Smallest ideal containing `gens`.
    pub fn generated(ring: &Arc<RingTable>, gens: &[Elem]) -> Self {
        let r = ring.as_ref();
        let mut mask = vec![false; r.size()];
        mask[r.zero()] = true;
        let mut span = vec![r.zero()];
        for &g in gens {
            if mask[g] {
                continue;
            }
            let mut multiples: Vec<Elem> = r.elements().map(|x| r.mul(x, g)).collect();
            multiples.sort_unstable();
            multiples.dedup();
            let prev = span.clone();
            for &x in &prev {
                for &p in &multiples {
                    let y = r.add(x, p);
                    if !mask[y] {
                        mask[y] = true;
                        span.push(y);
                    }
                }
            }
        }
        Ideal::from_mask(Arc::clone(ring), mask)
    }

    pub fn zero(ring: &Arc<RingTable>) -> Self {
        Ideal::generated(ring, &[])
    }

    pub fn unit(ring: &Arc<RingTable>) -> Self {
        Ideal::generated(ring, &[ring.one()])
    }

    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.mask.get(a).copied().unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_unit(&self) -> bool {
        self.contains(self.ring.one())
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.iter().all(|&a| other.contains(a))
    }

    /// Least `a` with `⟨a⟩ = self`, if the ideal is principal.
    pub fn principal_generator(&self) -> Option<Elem> {
        self.members
            .iter()
            .copied()
            .find(|&a| Ideal::generated(&self.ring, &[a]) == *self)
    }

    /// Checks containment of 0, additive closure and absorption.
    pub fn audit(&self) -> Result<()> {
        let r = &self.ring;
        if !self.contains(r.zero()) {
            return Err(AlgError::Axiom("ideal does not contain 0".into()));
        }
        for &a in &self.members {
            for &b in &self.members {
                if !self.contains(r.add(a, b)) {
                    return Err(AlgError::Axiom("ideal not closed under addition".into()));
                }
            }
            for x in r.elements() {
                if !self.contains(r.mul(x, a)) {
                    return Err(AlgError::Axiom("ideal not absorbing".into()));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(g) = self.principal_generator() {
            return write!(f, "<{}>", self.ring.label(g));
        }
        let labels: Vec<&str> = self.members.iter().map(|&a| self.ring.label(a)).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// The principal ideal `{r·a : r ∈ R}`.
pub fn principal_ideal(ring: &Arc<RingTable>, a: Elem) -> Ideal {
    let mut mask = vec![false; ring.size()];
    for r in ring.elements() {
        mask[ring.mul(r, a)] = true;
    }
    Ideal::from_mask(Arc::clone(ring), mask)
}

/// Every ideal of the ring, sorted by `(size, members)`.
///
/// Breadth-first closure from `⟨0⟩` under `I ↦ I + ⟨a⟩`.
pub fn all_ideals(ring: &Arc<RingTable>, budget: &Budget) -> Result<Vec<Ideal>> {
    let principals: Vec<Ideal> = ring.elements().map(|a| principal_ideal(ring, a)).collect();
    let mut found = vec![Ideal::zero(ring)];
    let mut seen = std::collections::HashSet::new();
    seen.insert(found[0].members.clone());
    let mut i = 0;
    while i < found.len() {
        for p in &principals {
            if p.is_subset(&found[i]) {
                continue;
            }
            let sum = sum_of(&found[i], p);
            if seen.insert(sum.members.clone()) {
                found.push(sum);
                check_budget("ideal count", found.len(), budget.max_ideals)?;
            }
        }
        i += 1;
    }
    found.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combine {
    Sum,
    Product,
    Intersection,
}

fn sum_of(a: &Ideal, b: &Ideal) -> Ideal {
    let r = &a.ring;
    let mut mask = vec![false; r.size()];
    for &x in &a.members {
        for &y in &b.members {
            mask[r.add(x, y)] = true;
        }
    }
    Ideal::from_mask(Arc::clone(r), mask)
}

/// Sum, product or intersection of two ideals of the same ring.
pub fn ideal_combine(kind: Combine, a: &Ideal, b: &Ideal) -> Result<Ideal> {
    if !a.ring.same_ring(&b.ring) {
        return Err(AlgError::RingMismatch("ideals over different rings".into()));
    }
    let r = &a.ring;
    Ok(match kind {
        Combine::Sum => sum_of(a, b),
        Combine::Intersection => {
            let mask = (0..r.size()).map(|x| a.contains(x) && b.contains(x)).collect();
            Ideal::from_mask(Arc::clone(r), mask)
        }
        Combine::Product => {
            let mut gens: Vec<Elem> = a
                .members
                .iter()
                .flat_map(|&x| b.members.iter().map(move |&y| r.mul(x, y)))
                .collect();
            gens.sort_unstable();
            gens.dedup();
            Ideal::generated(r, &gens)
        }
    })
}

/// `R/I` with the projection `R → R/I`.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub ring: Arc<RingTable>,
    /// Coset index of each element of `R`.
    pub projection: Vec<Elem>,
    /// Least element of each coset.
    pub representatives: Vec<Elem>,
}

/// The quotient ring by an ideal; cosets are ordered by least representative
/// and labelled `[a]`.
pub fn quotient_ring(ideal: &Ideal) -> QuotientRing {
    let r = ideal.ring.as_ref();
    let mut projection = vec![usize::MAX; r.size()];
    let mut reps = Vec::new();
    for a in r.elements() {
        if projection[a] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(a);
        for &i in &ideal.members {
            projection[r.add(a, i)] = c;
        }
    }
    let n = reps.len();
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            add[x * n + y] = projection[r.add(reps[x], reps[y])];
            mul[x * n + y] = projection[r.mul(reps[x], reps[y])];
        }
    }
    let labels = reps.iter().map(|&a| format!("[{}]", r.label(a))).collect();
    let ring = RingTable::from_tables(
        add,
        mul,
        projection[r.zero()],
        projection[r.one()],
        labels,
        format!("quotient({}; {})", r.provenance(), ideal),
    )
    .expect("induced tables are well formed");
    QuotientRing {
        ring: Arc::new(ring),
        projection,
        representatives: reps,
    }
}

/// All ideals with their prime/maximal classification.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub ideals: Vec<Ideal>,
    /// Indices into `ideals`.
    pub primes: Vec<usize>,
    /// Indices into `ideals`.
    pub maximals: Vec<usize>,
    /// For each non-prime proper ideal, elements `a, b ∉ I` with `ab ∈ I`.
    pub zero_divisor_witness: Vec<Option<(Elem, Elem)>>,
}

impl SpectrumReport {
    pub fn maximal_ideals(&self) -> impl Iterator<Item = &Ideal> {
        self.maximals.iter().map(|&i| &self.ideals[i])
    }

    pub fn prime_ideals(&self) -> impl Iterator<Item = &Ideal> {
        self.primes.iter().map(|&i| &self.ideals[i])
    }
}

/// Classifies every ideal by auditing its quotient ring.
pub fn spectrum(ring: &Arc<RingTable>, budget: &Budget) -> Result<SpectrumReport> {
    let ideals = all_ideals(ring, budget)?;
    let mut primes = Vec::new();
    let mut maximals = Vec::new();
    let mut witnesses = Vec::with_capacity(ideals.len());
    for (i, ideal) in ideals.iter().enumerate() {
        let q = quotient_ring(ideal);
        let qr = &q.ring;
        if qr.is_trivial() {
            witnesses.push(None);
            continue;
        }
        let pair = qr.elements().filter(|&a| a != qr.zero()).find_map(|a| {
            qr.zero_divisor_partner(a).map(|b| (q.representatives[a], q.representatives[b]))
        });
        match pair {
            Some(p) => witnesses.push(Some(p)),
            None => {
                primes.push(i);
                if qr.is_field() {
                    maximals.push(i);
                }
                witnesses.push(None);
            }
        }
    }
    Ok(SpectrumReport {
        ideals,
        primes,
        maximals,
        zero_divisor_witness: witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{find_ring_isomorphism, zmod};

    fn z(n: usize) -> Arc<RingTable> {
        Arc::new(zmod(n, &Budget::default()).unwrap())
    }

    #[test]
    fn principal_ideals() {
        let r = z(6);
        assert_eq!(principal_ideal(&r, 2).members(), &[0, 2, 4]);
        assert_eq!(principal_ideal(&r, 0).members(), &[0]);
        assert_eq!(principal_ideal(&r, 1).len(), 6);
    }

    #[test]
    fn ideal_counts() {
        let b = Budget::default();
        let i4: Vec<Vec<Elem>> = all_ideals(&z(4), &b)
            .unwrap()
            .iter()
            .map(|i| i.members().to_vec())
            .collect();
        assert_eq!(i4, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert_eq!(all_ideals(&z(7), &b).unwrap().len(), 2);
        let i6: Vec<Vec<Elem>> = all_ideals(&z(6), &b)
            .unwrap()
            .iter()
            .map(|i| i.members().to_vec())
            .collect();
        assert_eq!(i6, vec![vec![0], vec![0, 3], vec![0, 2, 4], (0..6).collect()]);
    }

    #[test]
    fn ideal_budget() {
        let tiny = Budget {
            max_ideals: 2,
            ..Budget::default()
        };
        assert!(matches!(all_ideals(&z(6), &tiny), Err(AlgError::Budget { .. })));
    }

    #[test]
    fn combine_examples() {
        let r = z(8);
        let two = principal_ideal(&r, 2);
        let four = principal_ideal(&r, 4);
        let meet = ideal_combine(Combine::Intersection, &two, &four).unwrap();
        assert_eq!(meet.members(), &[0, 4]);
        let prod = ideal_combine(Combine::Product, &two, &four).unwrap();
        assert_eq!(prod.members(), &[0]);
        let zero = Ideal::zero(&r);
        assert_eq!(ideal_combine(Combine::Sum, &two, &zero).unwrap(), two);
        let unit = Ideal::unit(&r);
        assert_eq!(ideal_combine(Combine::Product, &two, &unit).unwrap(), two);
        assert!(ideal_combine(Combine::Sum, &two, &Ideal::zero(&z(4))).is_err());
    }

    #[test]
    fn quotients() {
        let r = z(6);
        let q = quotient_ring(&principal_ideal(&r, 3));
        q.ring.audit().unwrap();
        assert!(find_ring_isomorphism(&q.ring, &z(3)).is_some());
        let q0 = quotient_ring(&Ideal::zero(&r));
        assert!(find_ring_isomorphism(&q0.ring, &r).is_some());
        assert!(quotient_ring(&Ideal::unit(&r)).ring.is_trivial());
    }

    #[test]
    fn spectra() {
        let b = Budget::default();
        let s6 = spectrum(&z(6), &b).unwrap();
        let max6: Vec<Vec<Elem>> = s6.maximal_ideals().map(|i| i.members().to_vec()).collect();
        assert_eq!(max6, vec![vec![0, 3], vec![0, 2, 4]]);
        let s5 = spectrum(&z(5), &b).unwrap();
        let max5: Vec<&Ideal> = s5.maximal_ideals().collect();
        assert_eq!(max5.len(), 1);
        assert!(max5[0].is_zero());
        let s4 = spectrum(&z(4), &b).unwrap();
        let max4: Vec<Vec<Elem>> = s4.maximal_ideals().map(|i| i.members().to_vec()).collect();
        assert_eq!(max4, vec![vec![0, 2]]);
        // ⟨0⟩ in Z/4 is not prime: 2·2 = 0
        assert_eq!(s4.zero_divisor_witness[0], Some((2, 2)));
        let trivial = spectrum(&z(1), &b).unwrap();
        assert!(trivial.primes.is_empty() && trivial.maximals.is_empty());
    }

    #[test]
    fn display_uses_principal_generator() {
        let r = z(6);
        assert_eq!(principal_ideal(&r, 4).to_string(), "<2>");
    }
}
