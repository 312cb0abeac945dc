//! Worked examples as a frozen registry, and seeded generators for the
//! structured ideal classes the checks quantify over.

mod examples;
mod general;
mod matrices;
mod recipes;

pub use examples::{find_example, worked_examples, ExampleRecord, ExpectedFact, Fact, FactCheck, FactOrigin};
pub use general::general_elements;
pub use matrices::{determinant, maximal_minors, maximal_pfaffians, pfaffian};
pub use recipes::{
    generate, recipe_ring, variable_names, GeneratorRecipe, RecipeKind, COEFF_RANGE, MAX_ATTEMPTS, MAX_ENTRY_DEGREE,
    MAX_MONOMIAL_DEGREE,
};
