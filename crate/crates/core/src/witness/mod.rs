//! Dual witnesses, hyperflows and the constructions built from them.

mod hyperflow;
mod search;
mod trim;
mod weighting;

pub use hyperflow::{HyperflowWdg, Primitivized, SwitchEvent};
pub use search::{find_dual_witness, find_hyperflow, find_narrow_dual_witness, sink_assignment_count, DualWitness, SinkAssignment};
pub use trim::{cascade_superpose, patch, trim_high_degree, TrimReport, Trimmed};
pub use weighting::{
    asymmetric_llr, is_primitive, shifted_llr, superpose, verify_dual_witness, verify_hyperflow, verify_weak_dual_witness,
    EdgeWeighting, Violation, Wdg, WeightingJson,
};
