use super::{Elem, RingTable};

/// Greedy additive generators: each one is the least element outside the
/// span of the previous ones.
pub(crate) fn additive_generators(size: usize, zero: Elem, add: impl Fn(Elem, Elem) -> Elem) -> Vec<Elem> {
    let mut in_span = vec![false; size];
    in_span[zero] = true;
    let mut span = vec![zero];
    let mut gens = Vec::new();
    for g in 0..size {
        if in_span[g] {
            continue;
        }
        gens.push(g);
        let mut j = 0;
        while j < span.len() {
            let mut y = add(span[j], g);
            while !in_span[y] {
                in_span[y] = true;
                span.push(y);
                y = add(y, g);
            }
            j += 1;
        }
    }
    gens
}

/// Brute-force ring isomorphism `a → b`, if one exists.
///
/// Candidates are additive homomorphisms fixed by the images of greedy
/// additive generators; each is checked for bijectivity and multiplicativity
/// against the full tables.
pub fn find_ring_isomorphism(a: &RingTable, b: &RingTable) -> Option<Vec<Elem>> {
    if a.size() != b.size() || a.characteristic() != b.characteristic() {
        return None;
    }
    let mut sig_a: Vec<_> = a.elements().map(|x| ring_signature(a, x)).collect();
    let mut sig_b: Vec<_> = b.elements().map(|x| ring_signature(b, x)).collect();
    let elem_sig_a = sig_a.clone();
    let elem_sig_b = sig_b.clone();
    sig_a.sort_unstable();
    sig_b.sort_unstable();
    if sig_a != sig_b {
        return None;
    }
    let gens = additive_generators(a.size(), a.zero(), |x, y| a.add(x, y));
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            b.elements()
                .filter(|&y| elem_sig_b[y] == elem_sig_a[g])
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<Elem> = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| candidates[i].get(c).copied())
            .collect::<Option<_>>()?;
        if let Some(map) = extend_additive(a, b, &gens, &images) {
            let ok = a.elements().all(|x| {
                a.elements()
                    .all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y]))
            });
            if ok {
                return Some(map);
            }
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == gens.len() {
                return None;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn ring_signature(r: &RingTable, x: Elem) -> (usize, bool, bool, Option<u64>) {
    let idem = r.mul(x, x) == x;
    (r.additive_order(x), idem, r.is_unit(x), r.nilpotency_index(x))
}

/// Extends generator images to an additive bijection, or `None` when the
/// assignment is inconsistent or not bijective.
fn extend_additive(a: &RingTable, b: &RingTable, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    let mut map = vec![usize::MAX; a.size()];
    map[a.zero()] = b.zero();
    let mut span = vec![a.zero()];
    for (&g, &img) in gens.iter().zip(images) {
        // relative order of g modulo the current span
        let (mut w, mut w_img, mut c) = (g, img, 1);
        while map[w] == usize::MAX {
            w = a.add(w, g);
            w_img = b.add(w_img, img);
            c += 1;
        }
        if map[w] != w_img {
            return None;
        }
        let prev = span.len();
        for j in 0..prev {
            let (mut x, mut y) = (span[j], map[span[j]]);
            for _ in 1..c {
                x = a.add(x, g);
                y = b.add(y, img);
                map[x] = y;
                span.push(x);
            }
        }
    }
    let mut seen = vec![false; b.size()];
    for &y in &map {
        if y == usize::MAX || seen[y] {
            return None;
        }
        seen[y] = true;
    }
    Some(map)
}
