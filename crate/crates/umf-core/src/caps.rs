//! Size caps for the exhaustive-search operations.
//!
//! Caps are configuration, not constants: every enumeration that could blow
//! up takes a [`Caps`] value and refuses inputs past the limit instead of
//! grinding. The defaults are sized so the full default sweep finishes in
//! well under a minute.

/// Limits for the operations that enumerate or store whole tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order for which a dense Cayley table is built.
    pub table_order: usize,
    /// Largest group order for full subgroup enumeration.
    pub subgroup_order: usize,
    /// Largest group order for automorphism-group enumeration.
    pub automorphism_order: usize,
    /// Largest phase-space size accepted by the flow isomorphism search.
    pub iso_points: usize,
    /// Largest `n` accepted by `symmetric(n)`.
    pub symmetric_n: usize,
    /// Largest group order included in catalog sweeps.
    pub sweep_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            table_order: 10_000,
            subgroup_order: 256,
            automorphism_order: 64,
            iso_points: 512,
            symmetric_n: 6,
            sweep_order: 24,
        }
    }
}

impl Caps {
    /// Override a single cap by key name, as accepted by `--caps key=value`.
    pub fn set(&mut self, key: &str, value: usize) -> bool {
        match key {
            "table_order" => self.table_order = value,
            "subgroup_order" => self.subgroup_order = value,
            "automorphism_order" => self.automorphism_order = value,
            "iso_points" => self.iso_points = value,
            "symmetric_n" => self.symmetric_n = value,
            "sweep_order" => self.sweep_order = value,
            _ => return false,
        }
        true
    }
}
