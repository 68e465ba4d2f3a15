use std::sync::Arc;

use super::{Elem, RingTable};
use crate::error::{check_budget, AlgError, Result};
use crate::Budget;

/// A polynomial in one indeterminate `x`; `coeffs[i]` is the coefficient of `x^i`.
///
/// Coefficients are element indices of some base ring, which every operation
/// takes explicitly. Trailing zero coefficients are trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(ring: &RingTable, coeffs: Vec<Elem>) -> Self {
        let mut p = Poly { coeffs };
        p.trim(ring);
        p
    }

    pub fn constant(ring: &RingTable, c: Elem) -> Self {
        Poly::from_coeffs(ring, vec![c])
    }

    /// The monomial `c·x^deg`.
    pub fn monomial(ring: &RingTable, c: Elem, deg: usize) -> Self {
        let mut coeffs = vec![ring.zero(); deg + 1];
        coeffs[deg] = c;
        Poly::from_coeffs(ring, coeffs)
    }

    pub fn x(ring: &RingTable) -> Self {
        Poly::monomial(ring, ring.one(), 1)
    }

    fn trim(&mut self, ring: &RingTable) {
        while self.coeffs.last() == Some(&ring.zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, ring: &RingTable, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(ring.zero())
    }

    pub fn add(&self, other: &Poly, ring: &RingTable) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| ring.add(self.coeff(ring, i), other.coeff(ring, i)))
            .collect();
        Poly::from_coeffs(ring, coeffs)
    }

    pub fn neg(&self, ring: &RingTable) -> Poly {
        Poly::from_coeffs(ring, self.coeffs.iter().map(|&c| ring.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly, ring: &RingTable) -> Poly {
        self.add(&other.neg(ring), ring)
    }

    pub fn scale(&self, c: Elem, ring: &RingTable) -> Poly {
        Poly::from_coeffs(ring, self.coeffs.iter().map(|&a| ring.mul(c, a)).collect())
    }

    pub fn mul(&self, other: &Poly, ring: &RingTable) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = ring.add(coeffs[i + j], ring.mul(a, b));
            }
        }
        Poly::from_coeffs(ring, coeffs)
    }

    pub fn pow(&self, mut e: u64, ring: &RingTable) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(ring, ring.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ring);
            }
            base = base.mul(&base, ring);
            e >>= 1;
        }
        acc
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, modulus: &Poly, ring: &RingTable) -> Poly {
        let d = modulus.degree().expect("modulus is nonzero");
        debug_assert_eq!(modulus.leading(), Some(ring.one()));
        let mut c = self.coeffs.clone();
        while c.len() > d {
            let top = c.len() - 1;
            let lead = c[top];
            if lead != ring.zero() {
                let shift = top - d;
                for (i, &m) in modulus.coeffs.iter().enumerate() {
                    c[shift + i] = ring.sub(c[shift + i], ring.mul(lead, m));
                }
            }
            c.pop();
        }
        Poly::from_coeffs(ring, c)
    }

    /// Human-readable rendering using the base ring's labels.
    pub fn render(&self, ring: &RingTable) -> String {
        if self.is_zero() {
            return ring.label(ring.zero()).to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == ring.zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let coef = ring.label(c);
            let coef = if coef.contains('+') || coef.contains('-') {
                format!("({coef})")
            } else {
                coef.to_string()
            };
            terms.push(match (i, c == ring.one()) {
                (0, _) => coef,
                (_, true) => mono,
                _ => format!("{coef}{mono}"),
            });
        }
        terms.join("+")
    }
}

/// `base[x] / ⟨relations⟩` together with the map from reduced polynomials to
/// carrier indices.
#[derive(Debug, Clone)]
pub struct PolyQuotient {
    ring: Arc<RingTable>,
    base: Arc<RingTable>,
    modulus: Poly,
    degree: usize,
    class_of: Vec<Elem>,
}

impl PolyQuotient {
    pub fn ring(&self) -> &Arc<RingTable> {
        &self.ring
    }

    pub fn base(&self) -> &Arc<RingTable> {
        &self.base
    }

    /// The monic relation used to bound degrees.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Number of coefficients kept for formal polynomials.
    pub fn degree(&self) -> usize {
        self.degree
    }

    fn encode(&self, p: &Poly) -> usize {
        let k = self.base.size();
        (0..self.degree)
            .rev()
            .fold(0, |acc, i| acc * k + p.coeff(&self.base, i))
    }

    /// Class of an arbitrary polynomial over the base ring.
    pub fn class_of_poly(&self, p: &Poly) -> Elem {
        let r = p.rem_monic(&self.modulus, &self.base);
        self.class_of[self.encode(&r)]
    }

    /// Class map on formal polynomials of degree below [`degree`](Self::degree),
    /// indexed by `Σ cᵢ·kⁱ`.
    pub fn class_map(&self) -> &[Elem] {
        &self.class_of
    }

    pub fn x(&self) -> Elem {
        self.class_of_poly(&Poly::x(&self.base))
    }

    /// Image of a base element as a constant polynomial.
    pub fn embed(&self, c: Elem) -> Elem {
        self.class_of_poly(&Poly::constant(&self.base, c))
    }
}

/// Builds `base[x] / ⟨relations⟩`.
///
/// One relation must have a unit leading coefficient; the least-degree such
/// relation bounds the degree of formal representatives, which keeps the
/// quotient finite.
pub fn polyquot(
    base: &Arc<RingTable>,
    relations: &[Poly],
    budget: &Budget,
) -> Result<PolyQuotient> {
    let r = base.as_ref();
    let k = r.size();
    let monic = relations
        .iter()
        .filter_map(|g| {
            let lead = g.leading()?;
            let inv = r.inverse(lead)?;
            Some(g.scale(inv, r))
        })
        .min_by_key(|g| g.degree());
    let modulus = monic.ok_or_else(|| {
        AlgError::Invalid(
            "quotient is infinite: no relation has a unit leading coefficient, so x is not \
             reduced to lower degree"
                .into(),
        )
    })?;
    let d = modulus.degree().unwrap_or(0);
    let formal = (0..d).try_fold(1usize, |acc, _| acc.checked_mul(k));
    let formal = formal.unwrap_or(usize::MAX);
    check_budget("formal polynomials", formal, budget.max_search)?;

    let decode = |mut v: usize| -> Poly {
        let mut coeffs = Vec::with_capacity(d);
        for _ in 0..d {
            coeffs.push(v % k);
            v /= k;
        }
        Poly::from_coeffs(r, coeffs)
    };
    let encode = |p: &Poly| -> usize { (0..d).rev().fold(0, |acc, i| acc * k + p.coeff(r, i)) };
    // coefficientwise addition on encodings
    let add_enc = |a: usize, b: usize| -> usize {
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..d {
            out += r.add(a % k, b % k) * place;
            a /= k;
            b /= k;
            place *= k;
        }
        out
    };

    // additive closure of { c·x^i·g mod f }
    let mut in_ideal = vec![false; formal];
    let mut ideal = vec![encode(&Poly::zero())];
    in_ideal[ideal[0]] = true;
    for g in relations {
        for i in 0..d.max(1) {
            for c in r.elements() {
                let gen = Poly::monomial(r, c, i).mul(g, r).rem_monic(&modulus, r);
                let e = encode(&gen);
                if in_ideal[e] {
                    continue;
                }
                let mut j = 0;
                while j < ideal.len() {
                    let mut y = add_enc(ideal[j], e);
                    while !in_ideal[y] {
                        in_ideal[y] = true;
                        ideal.push(y);
                        y = add_enc(y, e);
                    }
                    j += 1;
                }
            }
        }
    }

    let classes = formal / ideal.len();
    check_budget("ring carrier", classes, budget.max_carrier)?;
    let mut class_of = vec![usize::MAX; formal];
    let mut reps = Vec::with_capacity(classes);
    let mut labels = Vec::with_capacity(classes);
    for v in 0..formal {
        if class_of[v] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(v);
        let mut best: Option<(usize, usize, String)> = None;
        for &i in &ideal {
            let w = add_enc(v, i);
            class_of[w] = c;
            let text = decode(w).render(r);
            let key = (text.chars().count(), w);
            if best.as_ref().is_none_or(|b| key < (b.0, b.1)) {
                best = Some((key.0, key.1, text));
            }
        }
        labels.push(best.expect("cosets are nonempty").2);
    }

    let n = reps.len();
    let mut add = vec![0; n * n];
    let mut mul = vec![0; n * n];
    let polys: Vec<Poly> = reps.iter().map(|&v| decode(v)).collect();
    for a in 0..n {
        for b in 0..n {
            add[a * n + b] = class_of[add_enc(reps[a], reps[b])];
            let prod = polys[a].mul(&polys[b], r).rem_monic(&modulus, r);
            mul[a * n + b] = class_of[encode(&prod)];
        }
    }
    let zero = class_of[encode(&Poly::zero())];
    let one = class_of[encode(&Poly::constant(r, r.one()).rem_monic(&modulus, r))];
    let rels: Vec<String> = relations.iter().map(|g| g.render(r)).collect();
    let ring = RingTable::from_tables(
        add,
        mul,
        zero,
        one,
        labels,
        format!("polyquot({}; {})", r.provenance(), rels.join(", ")),
    )?;
    Ok(PolyQuotient {
        ring: Arc::new(ring),
        base: Arc::clone(base),
        modulus,
        degree: d,
        class_of,
    })
}
