use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use usalg_core::*;

fn example() -> (Arc<RingTable>, MulSet) {
    let b = Budget::default();
    let z2 = zmod(2, &b).unwrap();
    let t = Arc::new(ring_product(&z2, &z2, &b).unwrap());
    let s = t.find_label("(1,0)").unwrap();
    let rels = [Poly::monomial(&t, s, 1), Poly::monomial(&t, t.one(), 2)];
    let q = polyquot(&t, &rels, &b).unwrap();
    let ring = Arc::clone(q.ring());
    let set = mulclose(&ring, &[q.embed(s)]);
    (ring, set)
}

fn benches(c: &mut Criterion) {
    let b = Budget::default();
    let (r, set) = example();
    let z12 = Arc::new(zmod(12, &b).unwrap());
    let ideals = all_ideals(&r, &b).unwrap();
    let left = module_cyclic(&ideals[1]).module;
    let right = module_cyclic(&ideals[2]).module;
    let regular = module_from_ring(&r);

    c.bench_function("all_ideals example", |bn| bn.iter(|| all_ideals(black_box(&r), &b).unwrap()));
    c.bench_function("all_ideals zmod12", |bn| bn.iter(|| all_ideals(black_box(&z12), &b).unwrap()));
    c.bench_function("tensor R (x) R/I", |bn| bn.iter(|| tensor(black_box(&regular), &right, &b).unwrap()));
    c.bench_function("tor1 cyclic", |bn| bn.iter(|| tor(1, black_box(&left), &right, &b).unwrap()));
    c.bench_function("tor3 cyclic", |bn| bn.iter(|| tor(3, black_box(&left), &right, &b).unwrap()));
    c.bench_function("is_u_s_vnr example", |bn| bn.iter(|| is_u_s_vnr(black_box(&r), &set)));
    c.bench_function("is_u_s_flat regular", |bn| bn.iter(|| is_u_s_flat(black_box(&regular), &set, &b).unwrap()));
    c.bench_function("localize example", |bn| bn.iter(|| localize_ring(black_box(&set)).unwrap()));
}

criterion_group!(algebra, benches);
criterion_main!(algebra);
