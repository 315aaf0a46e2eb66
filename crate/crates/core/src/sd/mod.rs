//! The equation `f((x+y)/(x−y)) = (f(x)+f(y))/(f(x)−f(y))`, its forced
//! consequences and the progression argument, generic over the carrier.

pub mod ap;
pub mod candidate;
pub mod check;
pub mod report;
pub mod symbolic;

pub use ap::{ap_propagate, ap_propagate_ordered, ApPropagation, ApStep, Direction, MoveFailure, PropagationOrder};
pub use candidate::{Conjugated, Conjugation, Identity, PowerMap, QpiMap, Rule, SdCandidate};
pub use check::{check_properties, check_sd, sd_residual, sd_sides};
pub use report::{SdReport, Status, Violation};
pub use symbolic::{
    integer_induction_check, reference_values, u_constraint, symbolic_sequence, symbolic_sequence_with_cap, SymbolicSequence,
    UConstraint, DEFAULT_SEQUENCE_CAP,
};
