//! Cubic equations: representation, length, canonical forms, enumeration,
//! and screening.

pub mod compact;
pub mod enumerate;
pub mod equation;
pub mod local;
pub mod parser;
pub mod pipeline;

pub use compact::{canonicalize, canonicalize_equation, Compact};
pub use enumerate::{enumerate, enumerate_equations, EnumerateOptions};
pub use equation::{length_measure, CubicEquation, LengthMeasure, Monomial};
pub use local::{check_local_solvability, DEFAULT_MODULI};
pub use parser::{parse_equation, parse_equation_with_notes, ParseNotes};
pub use pipeline::{classify, classify_equation, ClassifyReport, FilterOutcome, PipelineOptions};
