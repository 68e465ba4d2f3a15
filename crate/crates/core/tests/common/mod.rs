#![allow(dead_code)]

use std::sync::Arc;

use usalg_core::{mulclose, polyquot, ring_product, zmod, Budget, MulSet, Poly, RingTable};

pub fn z(n: usize) -> Arc<RingTable> {
    Arc::new(zmod(n, &Budget::default()).unwrap())
}

pub fn product(a: usize, b: usize) -> Arc<RingTable> {
    let bud = Budget::default();
    Arc::new(ring_product(&zmod(a, &bud).unwrap(), &zmod(b, &bud).unwrap(), &bud).unwrap())
}

/// `(Z/2 × Z/2)[x]/(s·x, x²)` with `s = (1,0)`, and `S = {1, s}`.
pub fn example() -> (Arc<RingTable>, MulSet) {
    let bud = Budget::default();
    let t = product(2, 2);
    let s = t.find_label("(1,0)").unwrap();
    let rels = [Poly::monomial(&t, s, 1), Poly::monomial(&t, t.one(), 2)];
    let q = polyquot(&t, &rels, &bud).unwrap();
    let ring = Arc::clone(q.ring());
    let set = mulclose(&ring, &[q.embed(s)]);
    (ring, set)
}

pub fn dual_numbers() -> Arc<RingTable> {
    let f2 = z(2);
    let q = polyquot(&f2, &[Poly::monomial(&f2, 1, 2)], &Budget::default()).unwrap();
    Arc::clone(q.ring())
}

pub fn field4() -> Arc<RingTable> {
    let f2 = z(2);
    let f = Poly::from_coeffs(&f2, vec![1, 1, 1]);
    Arc::clone(polyquot(&f2, &[f], &Budget::default()).unwrap().ring())
}

pub fn rings() -> Vec<Arc<RingTable>> {
    let mut out: Vec<Arc<RingTable>> = (2..=12).map(z).collect();
    out.push(product(2, 2));
    out.push(product(2, 4));
    out.push(example().0);
    out.push(dual_numbers());
    out.push(field4());
    out
}

/// `{1}` and the closure of every single element, without repeats.
pub fn mulsets(r: &Arc<RingTable>) -> Vec<MulSet> {
    let mut out: Vec<MulSet> = vec![mulclose(r, &[])];
    for a in r.elements() {
        let s = mulclose(r, &[a]);
        if !out.iter().any(|t| t.members() == s.members()) {
            out.push(s);
        }
    }
    out
}
