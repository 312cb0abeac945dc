//! Text formats: the polynomial grammar, ring descriptions, scenario files
//! and reports.

mod grammar;
mod ringspec;

pub use grammar::{parse_polynomial, parse_polynomial_list, print_polynomial};
pub use ringspec::{parse_field, parse_order, RingSpec};
