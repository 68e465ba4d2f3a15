/// Size bounds shared by every constructor and search in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest ring carrier any constructor may produce.
    pub max_carrier: usize,
    /// Largest number of ideals `all_ideals` will enumerate.
    pub max_ideals: usize,
    /// Largest Tor degree accepted by `tor`.
    pub tor_depth: usize,
    /// Largest module carrier (free covers, direct sums, tensor products).
    pub max_module: usize,
    /// Cap on candidate counts in exhaustive searches (generators, homs).
    pub max_search: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_carrier: 256,
            max_ideals: 4096,
            tor_depth: 3,
            max_module: 4096,
            max_search: 4_000_000,
        }
    }
}
