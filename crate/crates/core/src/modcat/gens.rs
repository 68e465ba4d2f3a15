use std::sync::Arc;

use super::{free_module, submodule, ModuleHom, ModuleTable, Submodule};
use crate::error::{check_budget, AlgError, Result};
use crate::finring::Elem;
use crate::Budget;

/// A generating set of least size; among those, the lexicographically least
/// index tuple.
pub fn minimal_generators(m: &ModuleTable, budget: &Budget) -> Result<Vec<Elem>> {
    if m.is_zero_module() {
        return Ok(Vec::new());
    }
    let mut greedy = Vec::new();
    let mut mask = m.span(&[]);
    for x in m.elements() {
        if !mask[x] {
            greedy.push(x);
            mask = m.span(&greedy);
        }
    }
    let nonzero: Vec<Elem> = m.elements().filter(|&x| x != m.zero()).collect();
    let mut attempts = 0usize;
    for t in 1..=greedy.len() {
        let mut idx: Vec<usize> = (0..t).collect();
        loop {
            attempts += 1;
            if attempts > budget.max_search {
                return Err(AlgError::Budget {
                    what: "generator search",
                    needed: attempts,
                    limit: budget.max_search,
                });
            }
            let gens: Vec<Elem> = idx.iter().map(|&i| nonzero[i]).collect();
            if m.span(&gens).iter().all(|&b| b) {
                return Ok(gens);
            }
            if !next_combination(&mut idx, nonzero.len()) {
                break;
            }
        }
    }
    Ok(greedy)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let t = idx.len();
    for i in (0..t).rev() {
        if idx[i] < n - t + i {
            idx[i] += 1;
            for j in i + 1..t {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Free cover `Rᵍ → M` on the minimal generators with its kernel.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub module: Arc<ModuleTable>,
    pub generators: Vec<Elem>,
    pub free: Arc<ModuleTable>,
    pub evaluation: ModuleHom,
    /// The relation kernel `K ⊆ Rᵍ`, i.e. the first syzygy.
    pub relations: Submodule,
}

impl Presentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

pub fn presentation(m: &Arc<ModuleTable>, budget: &Budget) -> Result<Presentation> {
    let generators = minimal_generators(m, budget)?;
    let ring = m.ring();
    let g = generators.len();
    let free = free_module(ring, g, budget)?;
    let k = ring.size();
    let mut eval = Vec::with_capacity(free.size());
    for idx in free.elements() {
        let (mut rest, mut acc) = (idx, m.zero());
        for &gen in &generators {
            acc = m.add(acc, m.act(rest % k, gen));
            rest /= k;
        }
        eval.push(acc);
    }
    let evaluation = ModuleHom::new_unchecked(Arc::clone(&free), Arc::clone(m), eval)?;
    let relations = submodule(&free, &evaluation.kernel_mask());
    Ok(Presentation {
        module: Arc::clone(m),
        generators,
        free,
        evaluation,
        relations,
    })
}

/// Every submodule of a small module, as membership masks ordered by size
/// then by member indices.
pub fn all_submodules(m: &ModuleTable, budget: &Budget) -> Result<Vec<Vec<bool>>> {
    check_budget("submodule enumeration carrier", m.size(), 64.min(budget.max_module))?;
    let mut seen = std::collections::BTreeSet::new();
    let start = m.span(&[]);
    seen.insert(start.clone());
    let mut queue = vec![start];
    while let Some(cur) = queue.pop() {
        for x in m.elements().filter(|&x| !cur[x]) {
            let mut gens: Vec<Elem> = m.elements().filter(|&y| cur[y]).collect();
            gens.push(x);
            let next = m.span(&gens);
            if seen.insert(next.clone()) {
                check_budget("submodule count", seen.len(), budget.max_ideals)?;
                queue.push(next);
            }
        }
    }
    let mut out: Vec<Vec<bool>> = seen.into_iter().collect();
    out.sort_by_key(|mask| {
        let members: Vec<Elem> = (0..mask.len()).filter(|&i| mask[i]).collect();
        (members.len(), members)
    });
    Ok(out)
}
