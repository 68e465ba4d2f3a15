use std::sync::Arc;

use super::{minimal_generators, quotient_module, submodule, ModuleHom, ModuleTable, QuotientModule, Submodule};
use crate::error::{check_budget, AlgError, Result};
use crate::finring::Elem;
use crate::Budget;

/// Extends generator images R-linearly, or `None` when inconsistent.
pub(crate) fn extend_linear(m: &ModuleTable, n: &ModuleTable, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    let ring = m.ring();
    let mut map = vec![usize::MAX; m.size()];
    map[m.zero()] = n.zero();
    let mut span = vec![m.zero()];
    for (&g, &img) in gens.iter().zip(images) {
        let prev = span.len();
        for idx in 0..prev {
            let (x, fx) = (span[idx], map[span[idx]]);
            for r in ring.elements() {
                let z = m.add(x, m.act(r, g));
                let fz = n.add(fx, n.act(r, img));
                if map[z] == usize::MAX {
                    map[z] = fz;
                    span.push(z);
                } else if map[z] != fz {
                    return None;
                }
            }
        }
    }
    (span.len() == m.size()).then_some(map)
}

/// Every R-linear map `M → N`, ordered by their carrier maps.
pub fn hom_enumerate(m: &Arc<ModuleTable>, n: &Arc<ModuleTable>, budget: &Budget) -> Result<Vec<ModuleHom>> {
    if !m.ring().same_ring(n.ring()) {
        return Err(AlgError::RingMismatch("hom between modules over different rings".into()));
    }
    let gens = minimal_generators(m, budget)?;
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let ann = m.element_annihilator(g);
            n.elements()
                .filter(|&y| ann.iter().all(|&r| n.act(r, y) == n.zero()))
                .collect()
        })
        .collect();
    let total = candidates
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
        .unwrap_or(usize::MAX);
    check_budget("hom enumeration", total, budget.max_search)?;
    let mut out = Vec::new();
    for_each_choice(&candidates, |images| {
        if let Some(map) = extend_linear(m, n, &gens, images) {
            out.push(map);
        }
        false
    });
    out.sort();
    out.into_iter()
        .map(|map| ModuleHom::new_unchecked(Arc::clone(m), Arc::clone(n), map))
        .collect()
}

/// Runs `visit` over the Cartesian product of candidate lists (last position
/// fastest) until it returns `true`.
fn for_each_choice(candidates: &[Vec<Elem>], mut visit: impl FnMut(&[Elem]) -> bool) -> bool {
    if candidates.iter().any(|c| c.is_empty()) {
        return false;
    }
    let mut choice = vec![0usize; candidates.len()];
    let mut images: Vec<Elem> = candidates.iter().map(|c| c[0]).collect();
    loop {
        if visit(&images) {
            return true;
        }
        let mut i = candidates.len();
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                images[i] = candidates[i][choice[i]];
                break;
            }
            choice[i] = 0;
            images[i] = candidates[i][0];
        }
    }
}

/// Kernel, image and cokernel of a hom.
#[derive(Debug, Clone)]
pub struct HomParts {
    pub kernel: Submodule,
    pub image: Submodule,
    pub cokernel: QuotientModule,
}

pub fn hom_parts(h: &ModuleHom) -> HomParts {
    let image_mask = h.image_mask();
    HomParts {
        kernel: submodule(h.domain(), &h.kernel_mask()),
        image: submodule(h.codomain(), &image_mask),
        cokernel: quotient_module(h.codomain(), &image_mask),
    }
}

fn order_profile(m: &ModuleTable) -> Vec<usize> {
    let mut v: Vec<usize> = m.elements().map(|x| m.additive_order(x)).collect();
    v.sort_unstable();
    v
}

/// A module isomorphism `M → N`, if one exists.
pub fn find_module_isomorphism(
    m: &Arc<ModuleTable>,
    n: &Arc<ModuleTable>,
    budget: &Budget,
) -> Result<Option<Vec<Elem>>> {
    if !m.ring().same_ring(n.ring()) {
        return Err(AlgError::RingMismatch("isomorphism between modules over different rings".into()));
    }
    if m.size() != n.size() || order_profile(m) != order_profile(n) || m.annihilator() != n.annihilator() {
        return Ok(None);
    }
    let gens = minimal_generators(m, budget)?;
    let n_ann: Vec<Vec<Elem>> = n.elements().map(|y| n.element_annihilator(y)).collect();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let (ord, ann) = (m.additive_order(g), m.element_annihilator(g));
            n.elements()
                .filter(|&y| n.additive_order(y) == ord && n_ann[y] == ann)
                .collect()
        })
        .collect();
    let total = candidates
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
        .unwrap_or(usize::MAX);
    check_budget("isomorphism search", total, budget.max_search)?;
    let mut found = None;
    for_each_choice(&candidates, |images| {
        if let Some(map) = extend_linear(m, n, &gens, images) {
            let mut hit = vec![false; n.size()];
            if map.iter().all(|&y| !std::mem::replace(&mut hit[y], true)) {
                found = Some(map);
                return true;
            }
        }
        false
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{zmod, RingTable};
    use crate::ideal::{principal_ideal, Ideal};
    use crate::modcat::{direct_sum, module_cyclic, module_from_ring};

    fn z(n: usize) -> Arc<RingTable> {
        Arc::new(zmod(n, &Budget::default()).unwrap())
    }

    #[test]
    fn hom_counts() {
        let b = Budget::default();
        let r = z(4);
        let z2 = module_cyclic(&principal_ideal(&r, 2)).module;
        let z4 = module_from_ring(&r);
        let homs = hom_enumerate(&z2, &z4, &b).unwrap();
        assert_eq!(homs.len(), 2);
        let zero = module_cyclic(&Ideal::unit(&r)).module;
        assert_eq!(hom_enumerate(&zero, &z4, &b).unwrap().len(), 1);
        assert_eq!(hom_enumerate(&z4, &z2, &b).unwrap().len(), z2.size());
        for h in homs {
            h.validate().unwrap();
        }
    }

    #[test]
    fn multiplication_by_three() {
        let r = z(6);
        let m = module_from_ring(&r);
        let p = hom_parts(&ModuleHom::scalar(&m, 3));
        assert_eq!(p.kernel.inclusion.map(), &[0, 2, 4]);
        assert_eq!(p.image.inclusion.map(), &[0, 3]);
        assert_eq!(p.cokernel.module.size(), 3);
        let id = hom_parts(&ModuleHom::identity(&m));
        assert!(id.kernel.module.is_zero_module() && id.cokernel.module.is_zero_module());
    }

    #[test]
    fn isomorphisms() {
        let b = Budget::default();
        let r = z(6);
        let a = module_cyclic(&principal_ideal(&r, 2)).module;
        let c = module_cyclic(&principal_ideal(&r, 3)).module;
        let s = direct_sum(&a, &c, &b).unwrap().module;
        assert!(find_module_isomorphism(&s, &module_from_ring(&r), &b).unwrap().is_some());
        let r4 = z(4);
        let k = module_cyclic(&principal_ideal(&r4, 2)).module;
        let kk = direct_sum(&k, &k, &b).unwrap().module;
        assert!(find_module_isomorphism(&kk, &module_from_ring(&r4), &b).unwrap().is_none());
    }
}
