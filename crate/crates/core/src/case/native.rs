//! JSON case format.
//!
//! Top-level keys are `name`, `base_mva`, `buses` and `branches`; the bus
//! and branch objects use the field names of [`BusRecord`](super::BusRecord)
//! and [`BranchRecord`](super::BranchRecord). All values are per-unit.

use super::SystemCase;
use crate::error::CaseError;

/// Reads and validates a JSON case. Schema errors carry the offending path.
pub fn parse_case_native(text: &str) -> Result<SystemCase, CaseError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let case: SystemCase = serde_path_to_error::deserialize(de).map_err(|e| CaseError::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    case.validate()?;
    Ok(case)
}

/// Pretty-printed JSON; [`parse_case_native`] reads it back bit-exactly.
pub fn emit_case_native(case: &SystemCase) -> String {
    let mut s = serde_json::to_string_pretty(case).expect("case serializes");
    s.push('\n');
    s
}
