//! Diagonalisation of an integer relation matrix over `Z/E`.
//!
//! Only the cokernel matters here, and every generator is killed by `E`, so
//! the relation matrix can be reduced modulo `E` throughout. Row operations
//! are free; column operations are tracked in `q` and its inverse.

#[derive(Debug, Clone)]
pub(crate) struct Diagonal {
    /// Invariant order of each column after reduction (`E` for free columns).
    pub orders: Vec<i64>,
    /// Column transform: new coordinates are `x · q`.
    pub q: Vec<Vec<i64>>,
    /// `q⁻¹`; row `t` is a lift of the `t`-th new basis vector.
    pub q_inv: Vec<Vec<i64>>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub(crate) fn diagonalize_mod(mut rows: Vec<Vec<i64>>, ncols: usize, modulus: i64) -> Diagonal {
    let e = modulus;
    let red = |v: i64| v.rem_euclid(e);
    for row in &mut rows {
        for v in row.iter_mut() {
            *v = red(*v);
        }
    }
    let identity = |n: usize| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect()
    };
    let mut q = identity(ncols);
    let mut q_inv = identity(ncols);
    let mut orders = vec![e; ncols];
    let nrows = rows.len();
    for t in 0..ncols.min(nrows) {
        // pivot with the least gcd against E, then least position
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 {
                    let g = super::abelian::gcd(v, e);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        rows.swap(t, pi);
        if pj != t {
            for row in rows.iter_mut() {
                row.swap(t, pj);
            }
            for row in q.iter_mut() {
                row.swap(t, pj);
            }
            q_inv.swap(t, pj);
        }
        loop {
            for i in t + 1..nrows {
                let b = rows[i][t];
                if b == 0 {
                    continue;
                }
                let a = rows[t][t];
                let (g, x, y) = ext_gcd(a, b);
                let (ag, bg) = (a / g, b / g);
                let (top, rest) = rows.split_at_mut(i);
                for (p, q) in top[t].iter_mut().zip(rest[0].iter_mut()).take(ncols) {
                    let (u, v) = (*p, *q);
                    *p = red(x * u + y * v);
                    *q = red(-bg * u + ag * v);
                }
            }
            let mut changed = false;
            for j in t + 1..ncols {
                let b = rows[t][j];
                if b == 0 {
                    continue;
                }
                let a = rows[t][t];
                let (g, x, y) = ext_gcd(a, b);
                let (ag, bg) = (a / g, b / g);
                if b % a != 0 {
                    changed = true;
                }
                for row in rows.iter_mut().chain(q.iter_mut()) {
                    let (u, v) = (row[t], row[j]);
                    row[t] = red(x * u + y * v);
                    row[j] = red(-bg * u + ag * v);
                }
                let (rt, rj) = (q_inv[t].clone(), q_inv[j].clone());
                for c in 0..ncols {
                    q_inv[t][c] = red(ag * rt[c] + bg * rj[c]);
                    q_inv[j][c] = red(-y * rt[c] + x * rj[c]);
                }
            }
            if !changed {
                break;
            }
        }
        orders[t] = super::abelian::gcd(rows[t][t], e);
    }
    Diagonal { orders, q, q_inv }
}
