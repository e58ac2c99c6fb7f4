use serde::Serialize;

/// Which reading of the totality condition on functional relations to use.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub enum ConditionV {
    /// `P_⟨id,id⟩(ρ) ≤ ∃_{pr1}(φ)` in the fiber over the source carrier.
    #[default]
    Strict,
    /// `P_⟨id,id⟩(σ) ≤ ∃_{pr2}(φ)` in the fiber over the target carrier.
    Alt,
}

/// Resource limits and construction switches shared by every pipeline.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    /// Largest fiber that may be materialized.
    pub cap_fibers: usize,
    /// Largest candidate enumeration per pair of objects (and total for morphism searches).
    pub cap_enum: u64,
    pub condition_v: ConditionV,
}

impl Default for Config {
    fn default() -> Self {
        Config { cap_fibers: 512, cap_enum: 1 << 20, condition_v: ConditionV::Strict }
    }
}
