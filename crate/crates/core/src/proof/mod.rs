//! Mechanical checks of the computable steps in two nonexistence
//! arguments, and exact verification of published solutions.

pub mod companion;
pub mod reciprocity;
pub mod residue;
pub mod solutions;
pub mod trace;
pub mod valuation;

pub use companion::{verify_companion_claims, CompanionReport};
pub use reciprocity::{reciprocity_sweep, ReciprocitySweep, SweepOptions};
pub use residue::{
    verify_companion_residues, verify_main_residues, verify_power7_cycle, PowerCycleReport,
    ResidueObstructionReport, COMPANION_EQUATION, MAIN_EQUATION,
};
pub use solutions::{
    check_solution, verify_known_solution, verify_published_solutions, SolutionCheck, PUBLISHED,
};
pub use trace::{
    build_main_trace, verify_trace_identities, MainProofTrace, SevenAdicSplit, TraceReport,
};
pub use valuation::{verify_valuation_cube_property, ValuationWitness};
