use std::sync::Arc;

use super::abelian::{decompose, gcd, AbelianGroup};
use super::snf::diagonalize_mod;
use super::ModuleTable;
use crate::error::{check_budget, AlgError, Result};
use crate::finring::iso::additive_generators;
use crate::finring::Elem;
use crate::Budget;

/// `M ⊗_R N` with the class of every pure tensor.
///
/// The carrier is `⊕ Z/oₜ` in mixed radix, first component least significant.
#[derive(Debug, Clone)]
pub struct TensorProduct {
    pub module: Arc<ModuleTable>,
    left: Arc<ModuleTable>,
    right: Arc<ModuleTable>,
    left_group: AbelianGroup,
    right_group: AbelianGroup,
    modulus: i64,
    orders: Vec<i64>,
    /// Lift of each kept basis vector as a vector over generator pairs.
    lifts: Vec<Vec<i64>>,
    pure: Vec<Elem>,
}

impl TensorProduct {
    pub fn left(&self) -> &Arc<ModuleTable> {
        &self.left
    }

    pub fn right(&self) -> &Arc<ModuleTable> {
        &self.right
    }

    /// Class of `m ⊗ n`.
    pub fn pure(&self, m: Elem, n: Elem) -> Elem {
        self.pure[m * self.right.size() + n]
    }

    /// Component orders of the carrier.
    pub fn invariants(&self) -> &[i64] {
        &self.orders
    }

    fn encode(&self, comps: &[i64]) -> Elem {
        let mut idx = 0usize;
        for (t, &c) in comps.iter().enumerate().rev() {
            idx = idx * self.orders[t] as usize + c.rem_euclid(self.orders[t]) as usize;
        }
        idx
    }

    fn decode(&self, mut idx: Elem) -> Vec<i64> {
        self.orders
            .iter()
            .map(|&o| {
                let c = (idx % o as usize) as i64;
                idx /= o as usize;
                c
            })
            .collect()
    }

    /// The map `A ⊗ N → B ⊗ N'` induced by `f: A → B` on the left and
    /// `h: N → N'` on the right, given as carrier maps.
    pub fn induced(&self, target: &TensorProduct, f: &[Elem], h: &[Elem]) -> Vec<Elem> {
        let v = self.right_group.gens.len();
        let images: Vec<Vec<i64>> = self
            .lifts
            .iter()
            .map(|w| {
                let mut acc = vec![0i64; target.orders.len()];
                for (p, &c) in w.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let (i, j) = (p / v, p % v);
                    let img = target.pure(f[self.left_group.gens[i]], h[self.right_group.gens[j]]);
                    for (a, b) in acc.iter_mut().zip(target.decode(img)) {
                        *a += c * b;
                    }
                }
                acc
            })
            .collect();
        (0..self.module.size())
            .map(|z| {
                let comps = self.decode(z);
                let mut acc = vec![0i64; target.orders.len()];
                for (t, &c) in comps.iter().enumerate() {
                    for (a, &b) in acc.iter_mut().zip(&images[t]) {
                        *a += c * b;
                    }
                }
                target.encode(&acc)
            })
            .collect()
    }
}

fn class_of(proj: &[Vec<i64>], orders: &[i64], pairs: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; orders.len()];
    for (p, &x) in pairs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (t, o) in out.iter_mut().enumerate() {
            *o += x * proj[p][t];
        }
    }
    for (o, &m) in out.iter_mut().zip(orders) {
        *o = o.rem_euclid(m);
    }
    out
}

/// Builds `M ⊗_R N` from the bilinearity and balancing relations on pairs of
/// additive generators, diagonalised over `Z/E` with `E = gcd(exp M, exp N)`.
pub fn tensor(m: &Arc<ModuleTable>, n: &Arc<ModuleTable>, budget: &Budget) -> Result<TensorProduct> {
    if !m.ring().same_ring(n.ring()) {
        return Err(AlgError::RingMismatch("tensor of modules over different rings".into()));
    }
    let ring = m.ring();
    let gm = decompose(m.size(), m.zero(), |a, b| m.add(a, b));
    let gn = decompose(n.size(), n.zero(), |a, b| n.add(a, b));
    let (u, v) = (gm.gens.len(), gn.gens.len());
    let npairs = u * v;
    let e = gcd(gm.exponent, gn.exponent);
    let ring_gens = additive_generators(ring.size(), ring.zero(), |a, b| ring.add(a, b));
    let nrows = (u + v + ring_gens.len() * npairs) * npairs.max(1);
    check_budget("tensor relation matrix", nrows, budget.max_search)?;
    let at = |i: usize, j: usize| i * v + j;

    let mut rows: Vec<Vec<i64>> = Vec::new();
    for rho in &gm.relations {
        for j in 0..v {
            let mut row = vec![0i64; npairs];
            for (i, &c) in rho.iter().enumerate() {
                row[at(i, j)] += c;
            }
            rows.push(row);
        }
    }
    for sigma in &gn.relations {
        for i in 0..u {
            let mut row = vec![0i64; npairs];
            for (j, &c) in sigma.iter().enumerate() {
                row[at(i, j)] += c;
            }
            rows.push(row);
        }
    }
    for &r in &ring_gens {
        for i in 0..u {
            let left = &gm.coords[m.act(r, gm.gens[i])];
            for j in 0..v {
                let right = &gn.coords[n.act(r, gn.gens[j])];
                let mut row = vec![0i64; npairs];
                for (a, &c) in left.iter().enumerate() {
                    row[at(a, j)] += c;
                }
                for (b, &c) in right.iter().enumerate() {
                    row[at(i, b)] -= c;
                }
                if row.iter().any(|&x| x.rem_euclid(e) != 0) {
                    rows.push(row);
                }
            }
        }
    }

    let diag = diagonalize_mod(rows, npairs, e);
    let kept: Vec<usize> = (0..npairs).filter(|&t| diag.orders[t] > 1).collect();
    let orders: Vec<i64> = kept.iter().map(|&t| diag.orders[t]).collect();
    let size = orders
        .iter()
        .try_fold(1usize, |acc, &o| acc.checked_mul(o as usize))
        .unwrap_or(usize::MAX);
    check_budget("tensor carrier", size, budget.max_module)?;
    let proj: Vec<Vec<i64>> = (0..npairs)
        .map(|p| kept.iter().map(|&t| diag.q[p][t]).collect())
        .collect();
    let lifts: Vec<Vec<i64>> = kept.iter().map(|&t| diag.q_inv[t].clone()).collect();

    let pair_vector = |x: Elem, y: Elem| -> Vec<i64> {
        let (cx, cy) = (&gm.coords[x], &gn.coords[y]);
        let mut w = vec![0i64; npairs];
        for i in 0..u {
            if cx[i] == 0 {
                continue;
            }
            for j in 0..v {
                w[at(i, j)] = (cx[i] * cy[j]).rem_euclid(e);
            }
        }
        w
    };

    let q = orders.len();
    let encode = |comps: &[i64]| -> Elem {
        let mut idx = 0usize;
        for t in (0..q).rev() {
            idx = idx * orders[t] as usize + comps[t].rem_euclid(orders[t]) as usize;
        }
        idx
    };
    let decode = |mut idx: Elem| -> Vec<i64> {
        orders
            .iter()
            .map(|&o| {
                let c = (idx % o as usize) as i64;
                idx /= o as usize;
                c
            })
            .collect()
    };

    let mut pure = vec![0; m.size() * n.size()];
    let mut labels: Vec<Option<String>> = vec![None; size];
    for x in m.elements() {
        for y in n.elements() {
            let c = encode(&class_of(&proj, &orders, &pair_vector(x, y)));
            pure[x * n.size() + y] = c;
            if labels[c].is_none() {
                labels[c] = Some(format!("{}⊗{}", m.label(x), n.label(y)));
            }
        }
    }
    let comps: Vec<Vec<i64>> = (0..size).map(decode).collect();
    let mut add = vec![0; size * size];
    for a in 0..size {
        for b in 0..size {
            let s: Vec<i64> = (0..q).map(|t| comps[a][t] + comps[b][t]).collect();
            add[a * size + b] = encode(&s);
        }
    }
    let k = ring.size();
    let mut scalar = vec![0; k * size];
    for r in ring.elements() {
        // image of each kept basis vector under r·(eᵢ⊗fⱼ) = (r eᵢ)⊗fⱼ
        let act: Vec<Vec<i64>> = lifts
            .iter()
            .map(|w| {
                let mut moved = vec![0i64; npairs];
                for (p, &c) in w.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let (i, j) = (p / v, p % v);
                    for (a, &d) in gm.coords[m.act(r, gm.gens[i])].iter().enumerate() {
                        moved[at(a, j)] += c * d;
                    }
                }
                for x in &mut moved {
                    *x = x.rem_euclid(e);
                }
                class_of(&proj, &orders, &moved)
            })
            .collect();
        for z in 0..size {
            let mut acc = vec![0i64; q];
            for (t, &c) in comps[z].iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (a, &b) in acc.iter_mut().zip(&act[t]) {
                    *a += c * b;
                }
            }
            scalar[r * size + z] = encode(&acc);
        }
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(z, l)| {
            l.unwrap_or_else(|| {
                let parts: Vec<String> = comps[z].iter().map(|c| c.to_string()).collect();
                format!("<{}>", parts.join(","))
            })
        })
        .collect();
    let module = Arc::new(ModuleTable::new(Arc::clone(ring), add, scalar, encode(&vec![0; q]), labels)?);
    Ok(TensorProduct {
        module,
        left: Arc::clone(m),
        right: Arc::clone(n),
        left_group: gm,
        right_group: gn,
        modulus: e,
        orders,
        lifts,
        pure,
    })
}

impl TensorProduct {
    /// `E = gcd(exp M, exp N)`, which kills every tensor.
    pub fn exponent_bound(&self) -> i64 {
        self.modulus
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{zmod, RingTable};
    use crate::ideal::{principal_ideal, Ideal};
    use crate::modcat::{module_cyclic, module_from_ring};

    fn z(n: usize) -> Arc<RingTable> {
        Arc::new(zmod(n, &Budget::default()).unwrap())
    }

    fn cyc(r: &Arc<RingTable>, g: Elem) -> Arc<ModuleTable> {
        module_cyclic(&principal_ideal(r, g)).module
    }

    #[test]
    fn cyclic_tensors() {
        let b = Budget::default();
        let r6 = z(6);
        let t = tensor(&cyc(&r6, 2), &cyc(&r6, 3), &b).unwrap();
        assert!(t.module.is_zero_module());
        let r4 = z(4);
        let t = tensor(&cyc(&r4, 2), &cyc(&r4, 2), &b).unwrap();
        assert_eq!(t.module.size(), 2);
        t.module.audit().unwrap();
    }

    #[test]
    fn unit_isomorphism() {
        let b = Budget::default();
        let r = z(12);
        let reg = module_from_ring(&r);
        let m = cyc(&r, 4);
        let t = tensor(&reg, &m, &b).unwrap();
        assert_eq!(t.module.size(), m.size());
        let classes: std::collections::BTreeSet<Elem> = m.elements().map(|x| t.pure(r.one(), x)).collect();
        assert_eq!(classes.len(), m.size());
    }

    #[test]
    fn pure_tensors_are_bilinear() {
        let b = Budget::default();
        let r = z(8);
        let m = cyc(&r, 4);
        let n = module_from_ring(&r);
        let t = tensor(&m, &n, &b).unwrap();
        let tm = &t.module;
        for x in m.elements() {
            for y in n.elements() {
                for y2 in n.elements() {
                    assert_eq!(t.pure(x, n.add(y, y2)), tm.add(t.pure(x, y), t.pure(x, y2)));
                }
                for s in r.elements() {
                    assert_eq!(t.pure(m.act(s, x), y), t.pure(x, n.act(s, y)));
                    assert_eq!(t.pure(m.act(s, x), y), tm.act(s, t.pure(x, y)));
                }
            }
        }
    }

    #[test]
    fn trivial_factors() {
        let b = Budget::default();
        let r = z(5);
        let zero = module_cyclic(&Ideal::unit(&r)).module;
        let t = tensor(&zero, &module_from_ring(&r), &b).unwrap();
        assert!(t.module.is_zero_module());
    }
}
