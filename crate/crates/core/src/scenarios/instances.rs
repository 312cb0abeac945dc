use serde::{Deserialize, Serialize};

use crate::closure::DEFAULT_MMAX;
use crate::corpus::{generate, ExampleRecord, GeneratorRecipe};
use crate::error::{Error, Result};
use crate::modops::IdealHandle;
use crate::polyring::{Polynomial, Ring};
use crate::resolutions::ModulePresentation;
use crate::text::{parse_polynomial, print_polynomial, RingSpec};

/// Numeric parameters of a check run.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    pub m_max: u32,
    pub t_min: usize,
    pub t_max: usize,
    /// Resolution length cap where resolutions may be infinite.
    pub max_length: usize,
    /// Seed for random general elements.
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub question: Option<u8>,
}

impl Default for Params {
    fn default() -> Self {
        Params { m_max: DEFAULT_MMAX, t_min: 1, t_max: 3, max_length: 4, seed: 0, question: None }
    }
}

/// A graded module given as the cokernel of `relations` (columns) on a free
/// module with basis degrees `twists`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub twists: Vec<i64>,
    pub relations: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_pd: Option<usize>,
}

impl ModuleSpec {
    pub fn presentation(&self, ring: &Ring) -> Result<ModulePresentation> {
        let cols: Vec<Vec<Polynomial>> = self
            .relations
            .iter()
            .map(|c| c.iter().map(|s| parse_polynomial(s, ring.base())).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        ModulePresentation::cokernel(ring, self.twists.clone(), &cols)
    }
}

/// Everything needed to rerun a check: ring, ideal, optional second ideal
/// or module, and parameters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Instance {
    pub name: String,
    pub ring: RingSpec,
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    pub params: Params,
}

pub(crate) fn print_all(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(print_polynomial).collect()
}

impl Instance {
    pub fn new(name: impl Into<String>, ring: &Ring, gens: &[Polynomial]) -> Self {
        Instance {
            name: name.into(),
            ring: RingSpec::of(ring),
            ideal: print_all(gens),
            other: None,
            module: None,
            params: Params::default(),
        }
    }

    pub fn with_params(mut self, params: Params) -> Self {
        self.params = params;
        self
    }

    pub fn build_ring(&self) -> Result<Ring> {
        self.ring.build()
    }

    pub fn generators(&self, ring: &Ring) -> Result<Vec<Polynomial>> {
        parse_list(ring, &self.ideal)
    }

    pub fn ideal(&self, ring: &Ring) -> Result<IdealHandle> {
        IdealHandle::new(ring, &self.generators(ring)?)
    }

    pub fn other_ideal(&self, ring: &Ring) -> Result<IdealHandle> {
        let gens = self.other.as_ref().ok_or_else(|| Error::Requirement("the check needs a second ideal".into()))?;
        IdealHandle::new(ring, &parse_list(ring, gens)?)
    }

    pub fn presentation(&self, ring: &Ring) -> Result<ModulePresentation> {
        self.module.as_ref().ok_or_else(|| Error::Requirement("the check needs a module".into()))?.presentation(ring)
    }
}

pub(crate) fn parse_list(ring: &Ring, list: &[String]) -> Result<Vec<Polynomial>> {
    list.iter().map(|s| parse_polynomial(s, ring.base()).map(|p| ring.normalize(&p))).collect()
}

pub fn example_instance(record: &ExampleRecord) -> Result<Instance> {
    let ring = record.ring()?;
    Ok(Instance::new(record.name.clone(), &ring, &record.polynomials(&ring)?))
}

/// Instance built from a seeded recipe, named `kind/n<vars>/d<degree>/s<size>/<seed>`.
pub fn recipe_instance(recipe: &GeneratorRecipe) -> Result<Instance> {
    let i = generate(recipe)?;
    let name = format!("{}/n{}/d{}/s{}/{:03}", recipe.kind, recipe.nvars, recipe.degree, recipe.size, recipe.seed);
    Ok(Instance::new(name, i.ring(), i.gens()))
}

/// Pairs an ideal with a module.
pub fn module_instance(base: &Instance, name: impl Into<String>, module: ModuleSpec) -> Instance {
    Instance { name: name.into(), module: Some(module), ..base.clone() }
}

/// The residue field of a ring, as the quotient by the ideal of variables.
pub fn residue_field_instance(name: impl Into<String>, ring: &Ring) -> Instance {
    let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| ring.variable(i)).collect();
    Instance::new(name, ring, &vars)
}
