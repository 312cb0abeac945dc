use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::closure::monomial_closure;
use crate::error::{Error, Result};
use crate::modops::{dimension_and_height, monomials_of_degree, IdealHandle};
use crate::polyring::{Field, Monomial, PolyRing, Polynomial, Ring, Scalar, DEFAULT_PRIME};
use crate::resolutions::classify;

use super::matrices::{maximal_minors, maximal_pfaffians};

/// Attempts before a recipe gives up on its postcondition.
pub const MAX_ATTEMPTS: usize = 32;

/// Largest exponent sum of a random monomial generator.
pub const MAX_MONOMIAL_DEGREE: u32 = 6;

/// Largest degree of a random matrix entry.
pub const MAX_ENTRY_DEGREE: u32 = 2;

/// Random rational coefficients are drawn from `[-COEFF_RANGE, COEFF_RANGE]`.
pub const COEFF_RANGE: i64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecipeKind {
    MonomialMprimary,
    IntegrallyClosedMonomial,
    HilbertBurch,
    PfaffianGorenstein,
    CompleteIntersection,
}

impl RecipeKind {
    pub const ALL: [RecipeKind; 5] = [
        RecipeKind::MonomialMprimary,
        RecipeKind::IntegrallyClosedMonomial,
        RecipeKind::HilbertBurch,
        RecipeKind::PfaffianGorenstein,
        RecipeKind::CompleteIntersection,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RecipeKind::MonomialMprimary => "monomial_mprimary",
            RecipeKind::IntegrallyClosedMonomial => "integrally_closed_monomial",
            RecipeKind::HilbertBurch => "hilbert_burch",
            RecipeKind::PfaffianGorenstein => "pfaffian_gorenstein",
            RecipeKind::CompleteIntersection => "complete_intersection",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for RecipeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A seeded description of a random ideal.
///
/// `size` counts extra monomials (monomial kinds), generators (Hilbert–Burch
/// and complete intersections) or the side of the skew matrix (Pfaffians).
/// `degree` bounds monomial degrees, or fixes the degree of matrix entries
/// and of complete-intersection forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorRecipe {
    pub kind: RecipeKind,
    pub nvars: usize,
    pub field: Field,
    pub size: usize,
    pub degree: u32,
    pub seed: u64,
}

impl GeneratorRecipe {
    /// Default parameters of each kind.
    pub fn standard(kind: RecipeKind, seed: u64) -> Self {
        let (nvars, field, size, degree) = match kind {
            RecipeKind::MonomialMprimary => (2, Field::Rational, 3, 6),
            RecipeKind::IntegrallyClosedMonomial => (2, Field::Rational, 3, 6),
            RecipeKind::HilbertBurch => (3, Field::Rational, 3, 1),
            RecipeKind::PfaffianGorenstein => (3, Field::Prime(DEFAULT_PRIME), 5, 1),
            RecipeKind::CompleteIntersection => (2, Field::Rational, 2, 2),
        };
        GeneratorRecipe { kind, nvars, field, size, degree, seed }
    }

    pub fn with_nvars(mut self, nvars: usize) -> Self {
        self.nvars = nvars;
        self
    }

    pub fn with_size(mut self, size: usize) -> Self {
        self.size = size;
        self
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        self.degree = degree;
        self
    }

    pub fn with_field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(format!("{}: {m}", self.kind)));
        if self.nvars == 0 {
            return bad("needs at least one variable");
        }
        match self.kind {
            RecipeKind::MonomialMprimary | RecipeKind::IntegrallyClosedMonomial => {
                if self.degree == 0 || self.degree > MAX_MONOMIAL_DEGREE {
                    return bad("monomial degree must lie in 1..=6");
                }
            }
            RecipeKind::HilbertBurch => {
                if self.size < 2 || self.nvars < 2 {
                    return bad("needs at least two generators and two variables");
                }
                if self.degree == 0 || self.degree > MAX_ENTRY_DEGREE {
                    return bad("matrix entries must be linear or quadratic");
                }
            }
            RecipeKind::PfaffianGorenstein => {
                if self.field.characteristic() == 2 {
                    return Err(Error::InvalidField("Pfaffian Gorenstein ideals need characteristic other than 2".into()));
                }
                if self.size < 3 || self.size % 2 == 0 || self.nvars < 3 {
                    return bad("needs an odd matrix side of at least 3 and three variables");
                }
                if self.degree == 0 || self.degree > MAX_ENTRY_DEGREE {
                    return bad("matrix entries must be linear or quadratic");
                }
            }
            RecipeKind::CompleteIntersection => {
                if self.size == 0 || self.size > self.nvars {
                    return bad("needs between 1 and nvars forms");
                }
                if self.degree == 0 || self.degree > MAX_MONOMIAL_DEGREE {
                    return bad("form degree must lie in 1..=6");
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for GeneratorRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}(nvars={}, field={}, size={}, degree={}, seed={})",
            self.kind, self.nvars, self.field, self.size, self.degree, self.seed
        )
    }
}

/// `x, y, z, w` for up to four variables, `x1..xn` beyond.
pub fn variable_names(n: usize) -> Vec<String> {
    if n <= 4 {
        ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

pub fn recipe_ring(recipe: &GeneratorRecipe) -> Result<Ring> {
    let base = PolyRing::new(&variable_names(recipe.nvars), recipe.field, crate::polyring::MonomialOrder::GradedReverseLex)?;
    Ok(Ring::Poly(base))
}

pub(crate) fn random_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    match field {
        Field::Rational => field.from_i64(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub(crate) fn random_nonzero_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    loop {
        let s = random_scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A dense random form of the given degree.
pub(crate) fn random_form(rng: &mut ChaCha8Rng, base: &Arc<PolyRing>, degree: u64) -> Polynomial {
    let terms = monomials_of_degree(base.nvars(), degree)
        .into_iter()
        .map(|m| (m, random_scalar(rng, base.field())))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Polynomial::from_terms(base, terms)
}

/// A random ideal satisfying the structural postcondition of its kind.
/// Pure in the recipe: the same recipe gives the same generators.
pub fn generate(recipe: &GeneratorRecipe) -> Result<IdealHandle> {
    recipe.validate()?;
    let ring = recipe_ring(recipe)?;
    let mut rng = ChaCha8Rng::seed_from_u64(recipe.seed);
    for _ in 0..MAX_ATTEMPTS {
        crate::deadline::checkpoint()?;
        if let Some(i) = attempt(recipe, &ring, &mut rng)? {
            return Ok(i);
        }
    }
    Err(Error::RetriesExhausted(MAX_ATTEMPTS))
}

fn attempt(recipe: &GeneratorRecipe, ring: &Ring, rng: &mut ChaCha8Rng) -> Result<Option<IdealHandle>> {
    let base = ring.base();
    let n = recipe.nvars;
    match recipe.kind {
        RecipeKind::MonomialMprimary => {
            let i = random_monomial_ideal(recipe, ring, rng)?;
            Ok((i.is_m_primary() && i.mu()? > n).then_some(i))
        }
        RecipeKind::IntegrallyClosedMonomial => {
            let i = monomial_closure(&random_monomial_ideal(recipe, ring, rng)?)?;
            let ok = i.is_m_primary() && monomial_closure(&i)?.equals(&i) && i.mu()? > n;
            Ok(ok.then_some(i))
        }
        RecipeKind::HilbertBurch => {
            let m: Vec<Vec<Polynomial>> = (0..recipe.size)
                .map(|_| (0..recipe.size - 1).map(|_| random_form(rng, base, recipe.degree as u64)).collect())
                .collect();
            let gens = maximal_minors(&m, base)?;
            if gens.iter().any(|g| g.is_zero()) {
                return Ok(None);
            }
            let i = IdealHandle::new(ring, &gens)?;
            if i.mu()? != recipe.size || dimension_and_height(&i)?.1 != 2 {
                return Ok(None);
            }
            Ok(classify(&i)?.perfect.then_some(i))
        }
        RecipeKind::PfaffianGorenstein => {
            let s = recipe.size;
            let mut m: Vec<Vec<Polynomial>> = vec![vec![Polynomial::zero(base); s]; s];
            for a in 0..s {
                for b in a + 1..s {
                    let f = random_form(rng, base, recipe.degree as u64);
                    m[b][a] = f.neg();
                    m[a][b] = f;
                }
            }
            let gens = maximal_pfaffians(&m, base)?;
            if gens.iter().any(|g| g.is_zero()) {
                return Ok(None);
            }
            let i = IdealHandle::new(ring, &gens)?;
            if i.is_unit() {
                return Ok(None);
            }
            let c = classify(&i)?;
            Ok((c.height == 3 && c.gorenstein_quotient && c.mu == s).then_some(i))
        }
        RecipeKind::CompleteIntersection => {
            let gens: Vec<Polynomial> = (0..recipe.size).map(|_| random_form(rng, base, recipe.degree as u64)).collect();
            if gens.iter().any(|g| g.is_zero()) {
                return Ok(None);
            }
            let i = IdealHandle::new(ring, &gens)?;
            if i.is_unit() {
                return Ok(None);
            }
            Ok((dimension_and_height(&i)?.1 == recipe.size).then_some(i))
        }
    }
}

/// Pure powers `x_i^(a_i)` plus `size` random monomials below them, reduced to
/// minimal generators.
fn random_monomial_ideal(recipe: &GeneratorRecipe, ring: &Ring, rng: &mut ChaCha8Rng) -> Result<IdealHandle> {
    let n = recipe.nvars;
    let d = recipe.degree;
    let base = ring.base();
    let powers: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
    let mut exps: Vec<Vec<u32>> =
        (0..n).map(|i| (0..n).map(|k| if k == i { powers[i] } else { 0 }).collect()).collect();
    for _ in 0..recipe.size {
        let total = rng.gen_range(1..=d);
        let mut e = vec![0u32; n];
        for _ in 0..total {
            e[rng.gen_range(0..n)] += 1;
        }
        exps.push(e);
    }
    let mut minimal: Vec<Vec<u32>> = Vec::new();
    for e in &exps {
        let divisible = exps.iter().any(|f| f != e && f.iter().zip(e).all(|(a, b)| a <= b));
        if !divisible && !minimal.contains(e) {
            minimal.push(e.clone());
        }
    }
    minimal.sort();
    let gens: Vec<Polynomial> = minimal
        .iter()
        .map(|e| Polynomial::monomial(base, Monomial::from_exponents(e), base.field().one()))
        .collect();
    IdealHandle::new(ring, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_ideal() {
        for kind in RecipeKind::ALL {
            let r = GeneratorRecipe::standard(kind, 7);
            assert_eq!(generate(&r).unwrap().gens(), generate(&r).unwrap().gens(), "{kind}");
        }
    }

    #[test]
    fn postconditions_hold() {
        for seed in 0..3 {
            let m = generate(&GeneratorRecipe::standard(RecipeKind::MonomialMprimary, seed)).unwrap();
            assert!(m.is_m_primary());
            let c = generate(&GeneratorRecipe::standard(RecipeKind::IntegrallyClosedMonomial, seed)).unwrap();
            assert!(monomial_closure(&c).unwrap().equals(&c));
            let hb = generate(&GeneratorRecipe::standard(RecipeKind::HilbertBurch, seed)).unwrap();
            let class = classify(&hb).unwrap();
            assert!(class.perfect && class.height == 2 && class.mu == 3);
            let ci = generate(&GeneratorRecipe::standard(RecipeKind::CompleteIntersection, seed)).unwrap();
            assert!(classify(&ci).unwrap().complete_intersection);
        }
    }

    #[test]
    fn pfaffian_recipe_is_gorenstein() {
        let i = generate(&GeneratorRecipe::standard(RecipeKind::PfaffianGorenstein, 11)).unwrap();
        let c = classify(&i).unwrap();
        assert_eq!((c.height, c.mu, c.gorenstein_quotient), (3, 5, true));
        assert!(!c.complete_intersection);
    }

    #[test]
    fn characteristic_two_is_rejected() {
        let r = GeneratorRecipe::standard(RecipeKind::PfaffianGorenstein, 1).with_field(Field::Prime(2));
        assert!(matches!(generate(&r), Err(Error::InvalidField(_))));
    }

    #[test]
    fn degree_caps_are_enforced() {
        let r = GeneratorRecipe::standard(RecipeKind::MonomialMprimary, 1).with_degree(7);
        assert!(generate(&r).is_err());
        let r = GeneratorRecipe::standard(RecipeKind::HilbertBurch, 1).with_degree(3);
        assert!(generate(&r).is_err());
    }
}
