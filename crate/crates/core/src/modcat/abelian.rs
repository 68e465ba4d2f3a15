//! Additive decomposition of a finite abelian group table into greedy
//! generators with a triangular relation matrix.

use crate::finring::Elem;

#[derive(Debug, Clone)]
pub(crate) struct AbelianGroup {
    pub gens: Vec<Elem>,
    /// One row per generator: `c·eⱼ − Σ_{i<j} aᵢ·eᵢ = 0`.
    pub relations: Vec<Vec<i64>>,
    /// Mixed-radix coordinates of every element in the generators.
    pub coords: Vec<Vec<i64>>,
    /// Least common multiple of the additive orders.
    pub exponent: i64,
}

pub(crate) fn decompose(size: usize, zero: Elem, add: impl Fn(Elem, Elem) -> Elem) -> AbelianGroup {
    let mut coords: Vec<Option<Vec<i64>>> = vec![None; size];
    coords[zero] = Some(Vec::new());
    let mut span = vec![zero];
    let mut gens = Vec::new();
    let mut relations = Vec::new();
    for g in 0..size {
        if coords[g].is_some() {
            continue;
        }
        let j = gens.len();
        gens.push(g);
        let (mut w, mut c) = (g, 1i64);
        while coords[w].is_none() {
            w = add(w, g);
            c += 1;
        }
        let mut row: Vec<i64> = coords[w].clone().unwrap().iter().map(|&a| -a).collect();
        row.resize(j, 0);
        row.push(c);
        relations.push(row);
        let prev = span.len();
        for idx in 0..prev {
            let x0 = span[idx];
            let base = coords[x0].clone().unwrap();
            let mut x = x0;
            for b in 1..c {
                x = add(x, g);
                let mut cx = base.clone();
                cx.resize(j, 0);
                cx.push(b);
                coords[x] = Some(cx);
                span.push(x);
            }
        }
    }
    let u = gens.len();
    let coords: Vec<Vec<i64>> = coords
        .into_iter()
        .map(|c| {
            let mut c = c.expect("greedy generators span the group");
            c.resize(u, 0);
            c
        })
        .collect();
    for row in &mut relations {
        row.resize(u, 0);
    }
    let mut exponent = 1i64;
    for x in 0..size {
        let (mut y, mut n) = (x, 1i64);
        while y != zero {
            y = add(y, x);
            n += 1;
        }
        exponent = lcm(exponent, n);
    }
    AbelianGroup {
        gens,
        relations,
        coords,
        exponent,
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}
