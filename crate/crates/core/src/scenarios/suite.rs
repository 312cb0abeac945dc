use std::time::{Duration, Instant};

use crate::corpus::{worked_examples, GeneratorRecipe, RecipeKind};
use crate::deadline;
use crate::error::{Error, Result};
use crate::parallel::{self, Parallelism};
use crate::modops::{ideal_power, product, IdealHandle};
use crate::polyring::{Field, Ring};
use crate::text::RingSpec;

use super::certificate::Certificate;
use super::checks::run_check;
use super::instances::{example_instance, print_all, module_instance, recipe_instance, residue_field_instance, Instance, ModuleSpec, Params};
use super::{CheckId, Outcome, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRequest {
    pub check: CheckId,
    pub instance: Instance,
}

impl CheckRequest {
    pub fn new(check: CheckId, instance: Instance) -> Self {
        CheckRequest { check, instance }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub parallelism: Parallelism,
    /// Per-check wall-clock budget.
    pub timeout: Option<Duration>,
    /// Record elapsed milliseconds. Off by default so reports are reproducible.
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { parallelism: Parallelism::default(), timeout: None, timings: false }
    }
}

fn aborted(req: &CheckRequest, reason: String) -> Outcome {
    Outcome {
        check: req.check,
        instance: req.instance.clone(),
        status: Status::Inconclusive,
        certificate: Certificate::Aborted { reason },
        millis: None,
    }
}

/// Runs one request under the options' budget. Requirement violations are
/// returned as errors; every other failure becomes an inconclusive outcome.
pub fn run_request(req: &CheckRequest, opts: &SuiteOptions) -> Result<Outcome> {
    let start = Instant::now();
    let _g = deadline::install(opts.timeout.map(|t| start + t));
    let mut out = match run_check(req.check, &req.instance) {
        Ok(o) => o,
        Err(e @ Error::Requirement(_)) => {
            return Err(Error::Requirement(format!("{} on {}: {e}", req.check, req.instance.name)))
        }
        Err(Error::Timeout) => aborted(req, "timeout".into()),
        Err(e) => aborted(req, e.to_string()),
    };
    if opts.timings {
        out.millis = Some(start.elapsed().as_millis() as u64);
    }
    Ok(out)
}

/// Runs every request, in parallel when enabled. Outcomes are sorted by
/// check, instance name and instance content.
pub fn run_suite(requests: Vec<CheckRequest>, opts: &SuiteOptions) -> Result<Vec<Outcome>> {
    let results = parallel::map(requests, opts.parallelism, |r| run_request(&r, opts));
    let mut outs = results.into_iter().collect::<Result<Vec<_>>>()?;
    outs.sort_by_cached_key(|o| o.sort_key());
    Ok(outs)
}

fn recipes(kind: RecipeKind, count: u64, adjust: impl Fn(GeneratorRecipe) -> GeneratorRecipe) -> Result<Vec<Instance>> {
    (0..count).map(|seed| recipe_instance(&adjust(GeneratorRecipe::standard(kind, seed)))).collect()
}

fn requests(check: CheckId, instances: &[Instance]) -> impl Iterator<Item = CheckRequest> + '_ {
    instances.iter().map(move |i| CheckRequest::new(check, i.clone()))
}

fn plain(name: &str, vars: &[&str], gens: &[&str]) -> Instance {
    Instance {
        name: name.into(),
        ring: RingSpec::polynomial(vars, Field::Rational),
        ideal: gens.iter().map(|s| s.to_string()).collect(),
        other: None,
        module: None,
        params: Params::default(),
    }
}

fn module(twists: &[i64], relations: &[&[&str]], pd: usize) -> ModuleSpec {
    ModuleSpec {
        twists: twists.to_vec(),
        relations: relations.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect(),
        expected_pd: Some(pd),
    }
}

/// Modules over `Q[x,y]` with known projective dimension.
pub fn plane_modules() -> Vec<(&'static str, ModuleSpec)> {
    vec![
        ("free", module(&[0], &[], 0)),
        ("free-rank-two", module(&[0, 1], &[], 0)),
        ("principal-x", module(&[0], &[&["x"]], 1)),
        ("principal-xy", module(&[0], &[&["x*y"]], 1)),
        ("principal-square", module(&[0], &[&["x^2 + y^2"]], 1)),
        ("maximal-quotient", module(&[0], &[&["x"], &["y"]], 2)),
        ("square-quotient", module(&[0], &[&["x^2"], &["x*y"], &["y^2"]], 2)),
        ("monomial-quotient", module(&[0], &[&["x^3"], &["y^2"]], 2)),
        ("mixed-sum", module(&[0, 0], &[&["x", "0"], &["0", "x"], &["0", "y"]], 2)),
        ("principal-sum", module(&[0, 0], &[&["x", "0"], &["0", "y"]], 1)),
        ("line-quotient", module(&[0], &[&["x*y"], &["y^2"]], 2)),
    ]
}

/// Reduced non-regular quotients by squarefree monomials.
fn singular_rings() -> Result<Vec<(&'static str, Ring)>> {
    let q = |vars: &[&str], rels: &[&str]| -> Result<Ring> {
        RingSpec { relations: rels.iter().map(|s| s.to_string()).collect(), ..RingSpec::polynomial(vars, Field::Rational) }
            .build()
    };
    Ok(vec![
        ("node", q(&["x", "y"], &["x*y"])?),
        ("line-and-plane", q(&["x", "y", "z"], &["x*y", "x*z"])?),
        ("coordinate-axes", q(&["x", "y", "z"], &["x*y", "x*z", "y*z"])?),
        ("three-planes", q(&["x", "y", "z"], &["x*y*z"])?),
    ])
}

fn example(name: &str) -> Result<Instance> {
    let rec = worked_examples().into_iter().find(|r| r.name == name).ok_or_else(|| Error::InvalidArgument(name.into()))?;
    example_instance(&rec)
}

/// The standard check suite: worked examples plus seeded random families.
pub fn default_suite() -> Result<Vec<CheckRequest>> {
    use CheckId::*;
    use RecipeKind::*;
    let mut out: Vec<CheckRequest> = Vec::new();

    let binomial = example("binomial")?;
    let square = example("square-of-maximal")?;
    let quintic = example("aci-quintic")?;
    out.extend([C3, C4].map(|c| CheckRequest::new(c, binomial.clone())));
    out.extend([C1, C2, C3, C4, C8, C13].map(|c| CheckRequest::new(c, square.clone())));
    out.extend([C3, C4, C13].map(|c| CheckRequest::new(c, quintic.clone())));

    let closed2 = recipes(IntegrallyClosedMonomial, 15, |r| r)?;
    let closed3 = recipes(IntegrallyClosedMonomial, 12, |r| r.with_nvars(3).with_degree(4).with_size(2))?;
    for set in [&closed2, &closed3] {
        out.extend(requests(C1, set));
        out.extend(requests(C2, set));
    }

    let mprimary2 = recipes(MonomialMprimary, 15, |r| r)?;
    let mprimary3 = recipes(MonomialMprimary, 10, |r| r.with_nvars(3).with_degree(4).with_size(2))?;
    let cis = recipes(CompleteIntersection, 5, |r| r)?;
    for set in [&mprimary2, &mprimary3, &cis] {
        out.extend(requests(C3, set));
    }
    out.extend(requests(C4, &mprimary2));
    out.extend(requests(C4, &closed2));

    let hb = recipes(HilbertBurch, 10, |r| r)?;
    out.extend(requests(C5, &hb));
    let hb2 = recipes(HilbertBurch, 4, |r| r.with_nvars(2))?;
    out.extend(requests(C13, &hb2));

    let pf = recipes(PfaffianGorenstein, 5, |r| r)?;
    out.extend(requests(C6, &pf));
    out.extend(requests(C7, &pf));

    let dc: Vec<Instance> = mprimary2
        .iter()
        .take(8)
        .chain(closed3.iter().take(4))
        .cloned()
        .collect();
    out.extend(requests(C8, &dc));

    let base = plain("square-of-maximal", &["x", "y"], &["x^2", "x*y", "y^2"]);
    for (name, spec) in plane_modules() {
        let inst = module_instance(&base, format!("square-of-maximal/{name}"), spec);
        out.push(CheckRequest::new(C9, inst.clone()));
        out.push(CheckRequest::new(C10, inst));
    }

    for (n, i) in closed2.iter().take(6).enumerate() {
        let ring = i.build_ring()?;
        let ideal = i.ideal(&ring)?;
        let others = [
            closed2[(n + 1) % closed2.len()].ideal.clone(),
            mprimary2[n].ideal.clone(),
            print_all(product(&IdealHandle::maximal(&ring), &ideal)?.gens()),
            print_all(ideal_power(&ideal, 2)?.gens()),
        ];
        for (m, other) in others.into_iter().enumerate() {
            let mut inst = i.clone();
            inst.name = format!("{}/with-{m}", i.name);
            inst.other = Some(other);
            out.push(CheckRequest::new(C11, inst));
        }
    }

    for (name, ring) in singular_rings()? {
        let inst = residue_field_instance(format!("residue-field/{name}"), &ring);
        out.push(CheckRequest::new(C12, inst));
    }

    for q in [1u8, 2] {
        for i in mprimary2.iter().take(4).chain(closed3.iter().take(2)) {
            let p = Params { question: Some(q), ..i.params.clone() };
            out.push(CheckRequest::new(C14, i.clone().with_params(p)));
        }
    }
    Ok(out)
}

/// Probe requests for one question over `count` seeds starting at `seed`.
pub fn probe_suite(question: u8, seed: u64, count: u64) -> Result<Vec<CheckRequest>> {
    if !(1..=2).contains(&question) {
        return Err(Error::InvalidArgument("the probe question is 1 or 2".into()));
    }
    let mut out = Vec::new();
    for s in seed..seed + count {
        let recipe = if s % 2 == 0 {
            GeneratorRecipe::standard(RecipeKind::MonomialMprimary, s)
        } else {
            GeneratorRecipe::standard(RecipeKind::MonomialMprimary, s).with_nvars(3).with_degree(4).with_size(2)
        };
        let inst = recipe_instance(&recipe)?;
        let p = Params { question: Some(question), seed: s, ..Params::default() };
        out.push(CheckRequest::new(CheckId::C14, inst.with_params(p)));
    }
    Ok(out)
}
