//! Entropic EPR-steering between two qubits when one or both are uniformly
//! accelerated, and its recovery by local filtering.
//!
//! The pipeline for one parameter point is
//!
//! ```text
//! initial state ─▶ unruh_apply (r_a, r_b) ─▶ filter_apply (α_a, α_b) ─▶ steerability_report
//! ```
//!
//! * [`qstate`]: validated two-qubit density matrices, Bloch parametrization,
//!   the Werner and generic-pure families.
//! * [`channels`]: the acceleration channel (explicit and Kraus forms),
//!   closed-form accelerated families, local filtering.
//! * [`steering`]: Pauli statistics, entropic steering functionals and
//!   steerability degrees.
//! * [`sweep`]: parameter grids, figure presets, CSV/JSON output and the
//!   oracle cross-check suite.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod error;
pub mod linalg;
pub mod qstate;
pub mod steering;
pub mod sweep;

pub use channels::{
    accelerate_then_filter, accelerated_generic_pure, accelerated_werner, filter_apply,
    r_from_physical, unruh_apply, unruh_apply_kraus, AccelerationParams, FilterParams,
    PhysicalModeParams,
};
pub use error::{Error, Result};
pub use qstate::{
    from_bloch, generic_pure, werner, Axis, BlochDecomposition, DensityMatrix4, PureFamilyParams,
    QubitState, Subsystem, WernerParams,
};
pub use steering::{
    closed_form_p, conditional_entropy_sum, entropic_bound, pauli_distribution,
    steerability_report, steering_inequality, Direction, MeasurementDistribution, SteeringReport,
};
