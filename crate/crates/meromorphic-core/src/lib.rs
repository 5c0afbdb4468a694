//! Meromorphic functions on vertical strips carrying charged Laurent data.
//!
//! A pole's polar part is split into a `+` part (belongs to the left of an
//! inversion contour) and a `−` part (belongs to the right). Products keep
//! the two parts separate, and argument negation swaps them.

pub mod algebra;
pub mod error;
pub mod function;
pub mod laurent;
pub mod table;

pub use algebra::{
    charged_product, charged_sum, negate_argument, polar_consistency_check, scale, PolarCheckEntry,
    PolarConsistencyReport,
};
pub use error::MeromorphicError;
pub use function::{circle_coefficient, ChargedMeromorphicFunction, DecayClass, Evaluator, Strip};
pub use laurent::{Charge, ChargeSelector, ChargedLaurent};
pub use table::{pole_table, pole_table_json, poles_from_json, poles_from_table, ComplexJson, PoleTableEntry};
