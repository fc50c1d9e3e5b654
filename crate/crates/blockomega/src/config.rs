//! Runtime configuration shared by the library entry points.

/// Caps and seeds controlling every randomized or size-limited routine.
#[derive(Debug, Clone)]
pub struct Config {
    /// Root seed for all randomized routines. Results are deterministic
    /// given the seed; verdicts are seed-independent.
    pub seed: u64,
    /// Maximum group order accepted by enumeration.
    pub group_cap: usize,
    /// Maximum module dimension accepted by `decompose`.
    pub module_cap: usize,
    /// Optional override for the field extension degree. Must be at least
    /// the computed splitting degree.
    pub field_degree: Option<u32>,
    /// Group order bound for the optional direct simplicity validator.
    pub simplicity_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            group_cap: 200_000,
            module_cap: 2000,
            field_degree: None,
            simplicity_cap: 2500,
        }
    }
}

impl Config {
    pub fn with_seed(seed: u64) -> Self {
        Config { seed, ..Config::default() }
    }

    /// Deterministic child seed for an independent randomized branch.
    pub fn branch_seed(&self, tag: u64) -> u64 {
        // splitmix64 step keeps branches decorrelated but reproducible
        let mut z = self.seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}
