//! Scenario files: a line-oriented sectioned key/value format.
//!
//! ```text
//! # comments start with '#'
//! [ring]
//! vars = x, y
//! field = q
//! order = grevlex
//!
//! [ideal square]
//! gens = x^2, x*y, y^2
//!
//! [module cyclic]
//! twists = 0
//! columns = x ; y
//! pd = 2
//!
//! [recipe closed]
//! kind = integrally_closed_monomial
//! nvars = 2
//! seeds = 0..25
//!
//! [check]
//! id = C10
//! ideal = square
//! module = cyclic
//! t = 1..3
//! ```
//!
//! A check targets either a named ideal of the ring block or every instance
//! of a recipe. Module columns are separated by `;` and entries by `,`.

use std::fmt::{self, Write as _};
use std::ops::Range;

use crate::corpus::{GeneratorRecipe, RecipeKind};
use crate::error::{Error, Result};
use crate::text::{parse_field, parse_polynomial_list, RingSpec};

use super::instances::{recipe_instance, Instance, ModuleSpec, Params};
use super::suite::CheckRequest;
use super::CheckId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedIdeal {
    pub name: String,
    pub gens: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedModule {
    pub name: String,
    pub spec: ModuleSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecipeBlock {
    pub name: String,
    /// `seed` of the template is ignored; `seeds` enumerates the instances.
    pub template: GeneratorRecipe,
    pub seeds: Range<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckBlock {
    pub id: CheckId,
    /// Name of an ideal or of a recipe.
    pub target: String,
    pub other: Option<String>,
    pub module: Option<String>,
    pub params: Params,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScenarioFile {
    pub ring: Option<RingSpec>,
    pub ideals: Vec<NamedIdeal>,
    pub modules: Vec<NamedModule>,
    pub recipes: Vec<RecipeBlock>,
    pub checks: Vec<CheckBlock>,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Scenario { line, message: message.into() }
}

fn list(v: &str) -> Vec<String> {
    v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn number<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| err(line, format!("{key}: expected a number, got {v:?}")))
}

/// `a..b`, or a single value `a` meaning `a..a+1`.
fn range(line: usize, key: &str, v: &str) -> Result<Range<u64>> {
    match v.split_once("..") {
        Some((a, b)) => {
            let r = number(line, key, a)?..number(line, key, b)?;
            if r.is_empty() {
                return Err(err(line, format!("{key}: empty range {v:?}")));
            }
            Ok(r)
        }
        None => {
            let a = number(line, key, v)?;
            Ok(a..a + 1)
        }
    }
}

struct Section {
    kind: String,
    name: Option<String>,
    line: usize,
    entries: Vec<(usize, String, String)>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        let k = self.entries.iter().position(|(_, kk, _)| kk == key)?;
        let (l, _, v) = self.entries.remove(k);
        Some((l, v))
    }

    fn require(&mut self, key: &str) -> Result<(usize, String)> {
        self.take(key).ok_or_else(|| err(self.line, format!("[{}] needs {key:?}", self.kind)))
    }

    fn name(&self) -> Result<String> {
        self.name.clone().ok_or_else(|| err(self.line, format!("[{}] needs a name", self.kind)))
    }

    fn finish(self) -> Result<()> {
        match self.entries.first() {
            Some((l, k, _)) => Err(err(*l, format!("unknown key {k:?} in [{}]", self.kind))),
            None => Ok(()),
        }
    }
}

fn sections(text: &str) -> Result<Vec<Section>> {
    let mut out: Vec<Section> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        if let Some(head) = s.strip_prefix('[') {
            let head = head.strip_suffix(']').ok_or_else(|| err(line, "unterminated section header"))?;
            let mut parts = head.split_whitespace();
            let kind = parts.next().ok_or_else(|| err(line, "empty section header"))?.to_string();
            let name = parts.next().map(str::to_string);
            if parts.next().is_some() {
                return Err(err(line, "section names cannot contain spaces"));
            }
            out.push(Section { kind, name, line, entries: Vec::new() });
            continue;
        }
        let (k, v) = s.split_once('=').ok_or_else(|| err(line, format!("expected key = value, got {s:?}")))?;
        let sec = out.last_mut().ok_or_else(|| err(line, "key outside of any section"))?;
        let key = k.trim().to_string();
        if sec.entries.iter().any(|(_, kk, _)| *kk == key) {
            return Err(err(line, format!("duplicate key {key:?}")));
        }
        sec.entries.push((line, key, v.trim().to_string()));
    }
    Ok(out)
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut file = ScenarioFile::default();
        for mut sec in sections(text)? {
            match sec.kind.as_str() {
                "ring" => {
                    if file.ring.is_some() {
                        return Err(err(sec.line, "only one [ring] block is allowed"));
                    }
                    let (_, vars) = sec.require("vars")?;
                    let field = sec.take("field").map(|(_, v)| v).unwrap_or_else(|| "q".into());
                    let order = sec.take("order").map(|(_, v)| v).unwrap_or_else(|| "grevlex".into());
                    let relations = sec.take("relations").map(|(_, v)| list(&v)).unwrap_or_default();
                    let spec = RingSpec { vars: list(&vars), field, order, relations };
                    spec.build().map_err(|e| err(sec.line, e.to_string()))?;
                    file.ring = Some(spec);
                }
                "ideal" => {
                    let name = sec.name()?;
                    let (_, gens) = sec.require("gens")?;
                    file.ideals.push(NamedIdeal { name, gens: list(&gens) });
                }
                "module" => {
                    let name = sec.name()?;
                    let (l, twists) = sec.require("twists")?;
                    let twists = list(&twists).iter().map(|t| number(l, "twists", t)).collect::<Result<_>>()?;
                    let relations = match sec.take("columns") {
                        Some((_, v)) if !v.trim().is_empty() => v.split(';').map(list).collect(),
                        _ => Vec::new(),
                    };
                    let expected_pd = match sec.take("pd") {
                        Some((l, v)) => Some(number(l, "pd", &v)?),
                        None => None,
                    };
                    file.modules.push(NamedModule { name, spec: ModuleSpec { twists, relations, expected_pd } });
                }
                "recipe" => {
                    let name = sec.name()?;
                    let (l, kind) = sec.require("kind")?;
                    let kind = RecipeKind::from_name(kind.trim()).ok_or_else(|| err(l, format!("unknown recipe kind {kind:?}")))?;
                    let mut r = GeneratorRecipe::standard(kind, 0);
                    if let Some((l, v)) = sec.take("nvars") {
                        r = r.with_nvars(number(l, "nvars", &v)?);
                    }
                    if let Some((l, v)) = sec.take("size") {
                        r = r.with_size(number(l, "size", &v)?);
                    }
                    if let Some((l, v)) = sec.take("degree") {
                        r = r.with_degree(number(l, "degree", &v)?);
                    }
                    if let Some((l, v)) = sec.take("field") {
                        r = r.with_field(parse_field(&v).map_err(|e| err(l, e.to_string()))?);
                    }
                    let seeds = match sec.take("seeds") {
                        Some((l, v)) => range(l, "seeds", &v)?,
                        None => 0..1,
                    };
                    file.recipes.push(RecipeBlock { name, template: r, seeds });
                }
                "check" => {
                    let (l, id) = sec.require("id")?;
                    let id = CheckId::parse(&id).ok_or_else(|| err(l, format!("unknown check {id:?}")))?;
                    let (_, target) = sec.require("ideal")?;
                    let other = sec.take("other").map(|(_, v)| v);
                    let module = sec.take("module").map(|(_, v)| v);
                    let mut p = Params::default();
                    if let Some((l, v)) = sec.take("m_max") {
                        p.m_max = number(l, "m_max", &v)?;
                    }
                    if let Some((l, v)) = sec.take("t") {
                        let r = range(l, "t", &v)?;
                        p.t_min = r.start as usize;
                        p.t_max = r.end as usize - 1;
                    }
                    if let Some((l, v)) = sec.take("max_length") {
                        p.max_length = number(l, "max_length", &v)?;
                    }
                    if let Some((l, v)) = sec.take("seed") {
                        p.seed = number(l, "seed", &v)?;
                    }
                    if let Some((l, v)) = sec.take("question") {
                        p.question = Some(number(l, "question", &v)?);
                    }
                    file.checks.push(CheckBlock { id, target, other, module, params: p });
                }
                other => return Err(err(sec.line, format!("unknown section [{other}]"))),
            }
            sec.finish()?;
        }
        file.validate()?;
        Ok(file)
    }

    fn validate(&self) -> Result<()> {
        let mut names: Vec<&str> = Vec::new();
        for n in self.ideals.iter().map(|i| &i.name).chain(self.recipes.iter().map(|r| &r.name)) {
            if names.contains(&n.as_str()) {
                return Err(err(0, format!("name {n:?} is defined twice")));
            }
            names.push(n);
        }
        if let Some(spec) = &self.ring {
            let ring = spec.build()?;
            for i in &self.ideals {
                parse_polynomial_list(&i.gens.join(", "), ring.base())
                    .map_err(|e| err(0, format!("ideal {}: {e}", i.name)))?;
            }
            for m in &self.modules {
                m.spec.presentation(&ring).map_err(|e| err(0, format!("module {}: {e}", m.name)))?;
            }
        } else if !self.ideals.is_empty() || !self.modules.is_empty() {
            return Err(err(0, "named ideals and modules need a [ring] block"));
        }
        for c in &self.checks {
            let is_ideal = self.ideals.iter().any(|i| i.name == c.target);
            let is_recipe = self.recipes.iter().any(|r| r.name == c.target);
            if !is_ideal && !is_recipe {
                return Err(err(0, format!("check {}: no ideal or recipe named {:?}", c.id, c.target)));
            }
            if is_recipe && (c.other.is_some() || c.module.is_some()) {
                return Err(err(0, format!("check {}: recipes cannot be paired with a second ideal or module", c.id)));
            }
            if let Some(o) = &c.other {
                if !self.ideals.iter().any(|i| &i.name == o) {
                    return Err(err(0, format!("check {}: no ideal named {o:?}", c.id)));
                }
            }
            if let Some(m) = &c.module {
                if !self.modules.iter().any(|x| &x.name == m) {
                    return Err(err(0, format!("check {}: no module named {m:?}", c.id)));
                }
            }
        }
        Ok(())
    }

    /// Expands the check blocks into requests.
    pub fn requests(&self) -> Result<Vec<CheckRequest>> {
        let mut out = Vec::new();
        for c in &self.checks {
            let mut instances = Vec::new();
            if let Some(r) = self.recipes.iter().find(|r| r.name == c.target) {
                for seed in r.seeds.clone() {
                    instances.push(recipe_instance(&GeneratorRecipe { seed, ..r.template })?);
                }
            } else {
                let ideal = self.ideals.iter().find(|i| i.name == c.target).expect("validated");
                let mut inst = Instance {
                    name: ideal.name.clone(),
                    ring: self.ring.clone().expect("validated"),
                    ideal: ideal.gens.clone(),
                    other: None,
                    module: None,
                    params: Params::default(),
                };
                if let Some(o) = &c.other {
                    inst.other = Some(self.ideals.iter().find(|i| &i.name == o).expect("validated").gens.clone());
                    inst.name = format!("{}/with-{o}", inst.name);
                }
                if let Some(m) = &c.module {
                    inst.module = Some(self.modules.iter().find(|x| &x.name == m).expect("validated").spec.clone());
                    inst.name = format!("{}/{m}", inst.name);
                }
                instances.push(inst);
            }
            out.extend(instances.into_iter().map(|i| CheckRequest::new(c.id, i.with_params(c.params.clone()))));
        }
        Ok(out)
    }
}

impl fmt::Display for ScenarioFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if let Some(r) = &self.ring {
            let _ = writeln!(s, "[ring]\nvars = {}\nfield = {}\norder = {}", r.vars.join(", "), r.field, r.order);
            if !r.relations.is_empty() {
                let _ = writeln!(s, "relations = {}", r.relations.join(", "));
            }
            s.push('\n');
        }
        for i in &self.ideals {
            let _ = writeln!(s, "[ideal {}]\ngens = {}\n", i.name, i.gens.join(", "));
        }
        for m in &self.modules {
            let t: Vec<String> = m.spec.twists.iter().map(|t| t.to_string()).collect();
            let cols: Vec<String> = m.spec.relations.iter().map(|c| c.join(", ")).collect();
            let _ = writeln!(s, "[module {}]\ntwists = {}", m.name, t.join(", "));
            if !cols.is_empty() {
                let _ = writeln!(s, "columns = {}", cols.join(" ; "));
            }
            if let Some(pd) = m.spec.expected_pd {
                let _ = writeln!(s, "pd = {pd}");
            }
            s.push('\n');
        }
        for r in &self.recipes {
            let t = &r.template;
            let _ = writeln!(
                s,
                "[recipe {}]\nkind = {}\nnvars = {}\nsize = {}\ndegree = {}\nfield = {}\nseeds = {}..{}\n",
                r.name, t.kind, t.nvars, t.size, t.degree, t.field, r.seeds.start, r.seeds.end
            );
        }
        let d = Params::default();
        for c in &self.checks {
            let p = &c.params;
            let _ = writeln!(s, "[check]\nid = {}\nideal = {}", c.id, c.target);
            if let Some(o) = &c.other {
                let _ = writeln!(s, "other = {o}");
            }
            if let Some(m) = &c.module {
                let _ = writeln!(s, "module = {m}");
            }
            if p.m_max != d.m_max {
                let _ = writeln!(s, "m_max = {}", p.m_max);
            }
            if (p.t_min, p.t_max) != (d.t_min, d.t_max) {
                let _ = writeln!(s, "t = {}..{}", p.t_min, p.t_max + 1);
            }
            if p.max_length != d.max_length {
                let _ = writeln!(s, "max_length = {}", p.max_length);
            }
            if p.seed != d.seed {
                let _ = writeln!(s, "seed = {}", p.seed);
            }
            if let Some(q) = p.question {
                let _ = writeln!(s, "question = {q}");
            }
            s.push('\n');
        }
        f.write_str(s.trim_end())?;
        f.write_str("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "
# a plane and two ideals
[ring]
vars = x, y
field = q

[ideal square]
gens = x^2, x*y, y^2

[ideal line]
gens = x

[module cyclic]
twists = 0
columns = x ; y
pd = 2

[recipe closed]
kind = integrally_closed_monomial
seeds = 0..3

[check]
id = C10
ideal = square
module = cyclic
t = 1..4

[check]
id = c11
ideal = square
other = line

[check]
id = C1
ideal = closed
";

    #[test]
    fn parses_and_expands() {
        let f = ScenarioFile::parse(SAMPLE).unwrap();
        assert_eq!(f.ideals.len(), 2);
        assert_eq!(f.modules[0].spec.relations, vec![vec!["x".to_string()], vec!["y".to_string()]]);
        assert_eq!(f.checks[0].params.t_max, 3);
        let reqs = f.requests().unwrap();
        assert_eq!(reqs.len(), 5);
        assert_eq!(reqs[0].instance.name, "square/cyclic");
        assert_eq!(reqs[1].instance.name, "square/with-line");
        assert_eq!(reqs[1].check, CheckId::C11);
    }

    #[test]
    fn round_trips_through_the_printer() {
        let f = ScenarioFile::parse(SAMPLE).unwrap();
        let printed = f.to_string();
        assert_eq!(ScenarioFile::parse(&printed).unwrap(), f);
        assert_eq!(ScenarioFile::parse(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn rejects_bad_input_with_a_line() {
        let bad = |s: &str| ScenarioFile::parse(s).unwrap_err();
        assert!(matches!(bad("[ring]\nvars = x\nspeed = 3\n"), Error::Scenario { line: 3, .. }));
        assert!(matches!(bad("vars = x\n"), Error::Scenario { line: 1, .. }));
        assert!(matches!(bad("[ring]\nvars = x\n[check]\nid = C99\nideal = a\n"), Error::Scenario { line: 4, .. }));
        assert!(matches!(bad("[ring]\nvars = x\n[check]\nid = C1\nideal = missing\n"), Error::Scenario { .. }));
        assert!(matches!(bad("[ring]\nvars = x\n[ideal a]\ngens = z\n"), Error::Scenario { .. }));
        assert!(matches!(bad("[ideal a]\ngens = x\n"), Error::Scenario { .. }));
    }
}
