//! Free resolutions, Betti tables, Tor, Matlis duals and the socle check
//! for minimal resolutions against integrally closed ideals.

mod action;
mod burch;
mod resolution;
mod tor;

pub(crate) use action::annihilator_of_action;
pub use action::{matlis_dual, ActionModule};
pub use burch::{
    burch_socle_check, entries_in_closure, ideal_times_free_in_image, image_in_ideal_multiple, socle_image_intersection,
    tor_annihilator, BurchReport,
};
pub use resolution::{
    classify, minimal_resolution, pd_of, projective_dimension, BettiTable, GradedFreeResolution, IdealClass,
    ModulePresentation, ProjectiveDimension, DEFAULT_MAX_LENGTH,
};
pub use tor::{tor, tor_by_resolving_quotient, tor_twists};
