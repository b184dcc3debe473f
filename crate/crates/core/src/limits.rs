//! Scale guards and search budgets shared by every module.

/// Largest group order any table operation accepts by default.
pub const DEFAULT_MAX_ORDER: usize = 128;
/// Largest order `catalog_up_to` accepts by default.
pub const DEFAULT_CATALOG_MAX: usize = 64;
/// Backtracking nodes an automorphism search may visit.
pub const DEFAULT_AUT_NODES: u64 = 10_000_000;
/// Atom evaluations plus branch nodes a formula evaluation may spend.
pub const DEFAULT_EVAL_ATOMS: u64 = 100_000_000;
/// Largest group the Cayley-formula oracle is run on by default.
pub const DEFAULT_FORMULA_MAX_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub catalog_max: usize,
    pub aut_nodes: u64,
    pub eval_atoms: u64,
    pub formula_max_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_MAX_ORDER,
            catalog_max: DEFAULT_CATALOG_MAX,
            aut_nodes: DEFAULT_AUT_NODES,
            eval_atoms: DEFAULT_EVAL_ATOMS,
            formula_max_order: DEFAULT_FORMULA_MAX_ORDER,
        }
    }
}

impl Limits {
    /// Overrides both node budgets with the same value.
    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.aut_nodes = nodes;
        self.eval_atoms = nodes;
        self
    }
}
