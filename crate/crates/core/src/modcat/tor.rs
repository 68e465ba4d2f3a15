use std::sync::Arc;

use super::{module_from_ring, presentation, quotient_module, submodule, tensor, ModuleTable, Submodule};
use crate::error::{AlgError, Result};
use crate::ideal::{ideal_combine, Combine, Ideal};
use crate::Budget;

/// `Ω(M)`: the relation kernel of the minimal presentation.
pub fn syzygy(m: &Arc<ModuleTable>, budget: &Budget) -> Result<Arc<ModuleTable>> {
    Ok(presentation(m, budget)?.relations.module)
}

/// `Tor₁(M, N) = ker(K ⊗ N → Rᵍ ⊗ N)` as a submodule of `K ⊗ N`.
pub fn tor1(m: &Arc<ModuleTable>, n: &Arc<ModuleTable>, budget: &Budget) -> Result<Submodule> {
    if !m.ring().same_ring(n.ring()) {
        return Err(AlgError::RingMismatch("Tor of modules over different rings".into()));
    }
    let p = presentation(m, budget)?;
    let k_tensor = tensor(&p.relations.module, n, budget)?;
    let f_tensor = tensor(&p.free, n, budget)?;
    let identity: Vec<usize> = n.elements().collect();
    let map = k_tensor.induced(&f_tensor, p.relations.inclusion.map(), &identity);
    let zero = f_tensor.module.zero();
    let mask: Vec<bool> = map.iter().map(|&y| y == zero).collect();
    Ok(submodule(&k_tensor.module, &mask))
}

/// `Torₙ(M, N)`, with `Tor₀ = M ⊗ N` and `Torₙ = Tor₁(Ωⁿ⁻¹M, N)`.
pub fn tor(n: usize, m: &Arc<ModuleTable>, right: &Arc<ModuleTable>, budget: &Budget) -> Result<Arc<ModuleTable>> {
    if n > budget.tor_depth {
        return Err(AlgError::Budget {
            what: "tor depth",
            needed: n,
            limit: budget.tor_depth,
        });
    }
    if n == 0 {
        return Ok(tensor(m, right, budget)?.module);
    }
    let mut left = Arc::clone(m);
    for _ in 1..n {
        left = syzygy(&left, budget)?;
    }
    Ok(tor1(&left, right, budget)?.module)
}

/// `(I ∩ J)/IJ` with the induced action.
pub fn tor1_cyclic_oracle(i: &Ideal, j: &Ideal) -> Result<Arc<ModuleTable>> {
    let meet = ideal_combine(Combine::Intersection, i, j)?;
    let product = ideal_combine(Combine::Product, i, j)?;
    let regular = module_from_ring(i.ring());
    let mask: Vec<bool> = regular.elements().map(|a| meet.contains(a)).collect();
    let sub = submodule(&regular, &mask);
    let inner: Vec<bool> = sub.inclusion.map().iter().map(|&a| product.contains(a)).collect();
    Ok(quotient_module(&sub.module, &inner).module)
}
