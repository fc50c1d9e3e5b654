//! Serializable report structures; field names are frozen for tests.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub order: usize,
    pub field_degree: u32,
    pub blocks: Vec<BlockRecord>,
    pub omega: OmegaRecord,
    pub classes: Vec<ClassRecord>,
    pub verdicts: Verdicts,
    pub skipped: Vec<String>,
    pub timing_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockRecord {
    pub index: usize,
    pub k: usize,
    pub real: bool,
    pub defect_zero: bool,
    pub simple_dim: Option<usize>,
    /// dim of e_B . kOmega.
    pub omega_component_dim: usize,
    /// dim End(e_B . kOmega); 1 on a real defect-zero block.
    pub omega_component_end_dim: usize,
    /// Self-duality of the component, evaluated for defect-zero blocks.
    pub omega_component_self_dual: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OmegaRecord {
    pub dim: usize,
    pub components: Vec<ComponentRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentRecord {
    pub dim: usize,
    pub multiplicity: usize,
    pub projective: bool,
    pub self_dual: bool,
    pub block: Option<usize>,
    pub end_dim: usize,
    pub residue_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRecord {
    pub class_index: usize,
    pub class_size: usize,
    pub centralizer_order: u64,
    pub module_dim: usize,
    /// (block index, dimension, multiplicity) of each projective component.
    pub projective_components: Vec<ProjectiveComponentRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectiveComponentRecord {
    pub block: usize,
    pub dim: usize,
    pub multiplicity: usize,
    pub self_dual: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdicts {
    pub theorem_i: bool,
    pub theorem_ii: bool,
    pub bijection: bool,
    pub real_defect_zero_count: usize,
    pub projective_component_count: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddedReport {
    pub group: String,
    pub order: usize,
    pub subgroup_order: usize,
    pub index: usize,
    pub strongly_embedded: bool,
    pub module_dim: usize,
    pub trivial_count: usize,
    pub projective_count: usize,
    pub components: Vec<ComponentRecord>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymReport {
    pub n: u32,
    pub blocks: Vec<SymBlockRecord>,
    pub has_defect_zero: bool,
    pub triangular_m: Option<u32>,
    pub character_value: Option<i64>,
    pub involution: Option<SymInvolutionRecord>,
    pub inner_product: Option<SymInnerProduct>,
    pub odd_centralizer: Option<bool>,
    pub cross_check: Option<SymCrossCheck>,
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymBlockRecord {
    pub core: Vec<u32>,
    pub weight: u32,
    pub defect_zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymInvolutionRecord {
    pub transpositions: u32,
    pub fixed_points: u32,
    pub diagonal_part_count: u32,
    pub floor_formula_part_count: u32,
    pub formulas_agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymInnerProduct {
    pub sum: i64,
    pub centralizer_order: i64,
    pub value: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymCrossCheck {
    pub engine_defect_zero_count: usize,
    pub predicted_defect_zero_count: usize,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockTableRow {
    pub index: usize,
    pub k: usize,
    pub real: bool,
    pub defect_zero: bool,
}
