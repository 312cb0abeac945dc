use koszul_core::corpus::find_example;
use koszul_core::polyring::{Polynomial, Ring};
use koszul_core::text::{parse_field, parse_polynomial, parse_polynomial_list, RingSpec};
use koszul_core::{Error, Result};

use crate::args::Global;

/// A ring with an ideal given by generators, both resolved from the flags.
pub struct Loaded {
    pub ring: Ring,
    pub gens: Vec<Polynomial>,
}

impl Loaded {
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Ok(self.ring.normalize(&parse_polynomial(text, self.ring.base())?))
    }

    pub fn parse_list(&self, text: &str) -> Result<Vec<Polynomial>> {
        Ok(parse_polynomial_list(text, self.ring.base())?.iter().map(|p| self.ring.normalize(p)).collect())
    }
}

fn split(text: &str) -> Vec<String> {
    text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

/// Identifiers in order of first appearance.
fn identifiers(texts: &[&str]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for t in texts {
        let mut cur = String::new();
        for ch in t.chars().chain(std::iter::once(' ')) {
            if ch.is_ascii_alphabetic() || ch == '_' || (!cur.is_empty() && ch.is_ascii_digit()) {
                cur.push(ch);
            } else if !cur.is_empty() {
                if !out.contains(&cur) {
                    out.push(cur.clone());
                }
                cur.clear();
            }
        }
    }
    out
}

/// Resolves `--ideal`. `examples/<name>` loads a registry example, whose ring
/// may be overridden field-by-field from the flags; anything else is a
/// generator list over the ring described by the flags. `extra` lists other
/// polynomial arguments, used only to infer variables.
pub fn load(global: &Global, ideal: &str, extra: &[&str]) -> Result<Loaded> {
    if let Some(name) = ideal.trim().strip_prefix("examples/") {
        let rec = find_example(name).ok_or_else(|| Error::InvalidArgument(format!("no example named {name:?}")))?;
        let mut spec = rec.ring.clone();
        if let Some(f) = &global.field {
            parse_field(f)?;
            spec.field = f.clone();
        }
        if let Some(o) = &global.order {
            spec.order = o.clone();
        }
        let ring = spec.build()?;
        let gens = rec.polynomials(&ring)?.iter().map(|p| ring.normalize(p)).collect();
        return Ok(Loaded { ring, gens });
    }
    let vars = match &global.vars {
        Some(v) => split(v),
        None => {
            let mut texts = vec![ideal];
            texts.extend_from_slice(extra);
            if let Some(r) = &global.relations {
                texts.push(r);
            }
            identifiers(&texts)
        }
    };
    let vars = if vars.is_empty() && ideal.trim().is_empty() { vec!["x".to_string()] } else { vars };
    if vars.is_empty() {
        return Err(Error::InvalidArgument("no variables: pass --vars".into()));
    }
    let spec = RingSpec {
        vars,
        field: global.field.clone().unwrap_or_else(|| "q".into()),
        order: global.order.clone().unwrap_or_else(|| "grevlex".into()),
        relations: global.relations.as_deref().map(split).unwrap_or_default(),
    };
    let ring = spec.build()?;
    let gens = if ideal.trim().is_empty() {
        Vec::new()
    } else {
        parse_polynomial_list(ideal, ring.base())?.iter().map(|p| ring.normalize(p)).collect()
    };
    Ok(Loaded { ring, gens })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_follow_first_appearance() {
        assert_eq!(identifiers(&["y^2 + x1*y", "z"]), vec!["y", "x1", "z"]);
    }
}
