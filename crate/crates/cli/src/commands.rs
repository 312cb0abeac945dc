use std::fs;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use koszul_core::closure::{fractional_membership, ClosureCertificate, is_integral_over, monomial_closure, ClosureStatus};
use koszul_core::corpus::{find_example, worked_examples, ExampleRecord};
use koszul_core::deadline;
use koszul_core::koszul::{build_koszul, ensure_minimal, homology, homology_with_coefficients, presentation_and_content};
use koszul_core::modops::{colon, IdealHandle};
use koszul_core::parallel::Parallelism;
use koszul_core::polyring::Polynomial;
use koszul_core::resolutions::{matlis_dual, minimal_resolution, tor, ModulePresentation};
use koszul_core::scenarios::{default_suite, probe_suite, run_suite, CheckRequest, Report, ScenarioFile, SuiteOptions};
use koszul_core::text::print_polynomial;
use koszul_core::{Error, Result};

use crate::args::{Cli, Coefficients, Command, Format, Global};
use crate::load::{load, Loaded};
use crate::{EXIT_INCONCLUSIVE, EXIT_OK, EXIT_REFUTED};

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(print_polynomial).collect()
}

fn canon(i: &IdealHandle) -> Vec<String> {
    strings(&i.canonical_generators())
}

/// Prints `value` as JSON, or `text` otherwise.
fn emit(global: &Global, value: Value, text: String) {
    match global.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json values serialize")),
        Format::Text => print!("{text}"),
    }
}

fn ideal_text(gens: &[String]) -> String {
    format!("({})", gens.join(", "))
}

pub fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    if let Some(t) = g.timeout {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument("--timeout must be a positive number of seconds".into()));
        }
    }
    let budget = g.timeout.map(Duration::from_secs_f64);
    if matches!(cli.command, Command::Check { .. } | Command::Probe { .. }) {
        return suite_command(cli, budget);
    }
    let _guard = deadline::install(budget.map(|b| Instant::now() + b));
    match &cli.command {
        Command::Gb(a) => {
            let l = load(g, &a.ideal, &[])?;
            let i = IdealHandle::new(&l.ring, &l.gens)?;
            let basis = if l.gens.iter().all(|p| p.is_zero()) { Vec::new() } else { canon(&i) };
            let text = basis.iter().map(|b| format!("{b}\n")).collect();
            emit(g, json!({ "basis": basis }), text);
            Ok(EXIT_OK)
        }
        Command::Nf { ideal, poly } => {
            let l = load(g, &ideal.ideal, &[poly])?;
            let i = IdealHandle::new(&l.ring, &l.gens)?;
            let nf = print_polynomial(&i.normal_form(&l.parse(poly)?));
            emit(g, json!({ "normal_form": nf }), format!("{nf}\n"));
            Ok(EXIT_OK)
        }
        Command::Koszul { ideal, index, coefficients } => koszul(g, &ideal.ideal, *index, *coefficients),
        Command::Syz(a) => {
            let l = load(g, &a.ideal, &[])?;
            let (phi, content) = presentation_and_content(&l.gens, &l.ring)?;
            let base = l.ring.base();
            let cols: Vec<Vec<String>> = phi.columns.iter().map(|c| strings(&c.to_polys(base))).collect();
            let mut text = String::new();
            for c in &cols {
                text.push_str(&format!("[{}]\n", c.join(", ")));
            }
            text.push_str(&format!("I1 = {}\n", ideal_text(&canon(&content))));
            emit(g, json!({ "columns": cols, "content": canon(&content) }), text);
            Ok(EXIT_OK)
        }
        Command::Closure { ideal, monomial, member, mmax, fractional } => {
            let extra: Vec<&str> = member.iter().map(|s| s.as_str()).collect();
            let l = load(g, &ideal.ideal, &extra)?;
            let i = IdealHandle::new(&l.ring, &l.gens)?;
            match (monomial, member) {
                (true, _) => {
                    let c = canon(&monomial_closure(&i)?);
                    emit(g, json!({ "closure": c }), format!("{}\n", ideal_text(&c)));
                    Ok(EXIT_OK)
                }
                (false, Some(c)) => {
                    let p = l.parse(c)?;
                    let v = match fractional {
                        Some(f) => {
                            let (a, b) = parse_fraction(f)?;
                            fractional_membership(&p, &i, a, b, *mmax)?
                        }
                        None => is_integral_over(&p, &i, *mmax)?,
                    };
                    let text = format!("{}: {}\n", status_word(v.status), describe(&v.certificate));
                    emit(g, json!({ "element": print_polynomial(&p), "verdict": v }), text);
                    Ok(if v.status == ClosureStatus::Inconclusive { EXIT_INCONCLUSIVE } else { EXIT_OK })
                }
                (false, None) => Err(Error::InvalidArgument("closure needs --monomial or --member".into())),
            }
        }
        Command::Colon { ideal, by } => {
            let l = load(g, &ideal.ideal, &[by])?;
            let i = IdealHandle::new(&l.ring, &l.gens)?;
            let j = IdealHandle::new(&l.ring, &l.parse_list(by)?)?;
            let q = canon(&colon(&i, &j)?);
            emit(g, json!({ "colon": q }), format!("{}\n", ideal_text(&q)));
            Ok(EXIT_OK)
        }
        Command::Tor { ideal, t, twists, columns } => {
            let extra: Vec<&str> = columns.iter().map(|s| s.as_str()).collect();
            let l = load(g, &ideal.ideal, &extra)?;
            let i = IdealHandle::new(&l.ring, &l.gens)?;
            let m = module(&l, twists.as_deref(), columns.as_deref())?;
            let res = minimal_resolution(&m, t + 1)?;
            let module = tor(&res, &i, *t)?;
            let vanishes = module.is_zero()?;
            let ann = if vanishes { IdealHandle::unit(&l.ring) } else { module.annihilator()? };
            let text = format!(
                "Tor_{t} {}\nannihilator {}\n",
                if vanishes { "vanishes" } else { "is nonzero" },
                ideal_text(&canon(&ann))
            );
            emit(g, json!({ "t": t, "vanishes": vanishes, "annihilator": canon(&ann) }), text);
            Ok(EXIT_OK)
        }
        Command::Resolve { ideal, max_length } => {
            let l = load(g, &ideal.ideal, &[])?;
            let i = IdealHandle::new(&l.ring, &l.gens)?;
            let res = minimal_resolution(&ModulePresentation::cyclic(&i)?, *max_length)?;
            let len = res.computed_length();
            let maps: Vec<Vec<Vec<String>>> =
                (1..=len).map(|t| Ok(res.matrix(t)?.iter().map(|c| strings(c)).collect())).collect::<Result<_>>()?;
            let ranks: Vec<usize> = (0..=len).map(|t| res.rank(t)).collect();
            let mut text = format!("ranks {:?}{}\n", ranks, if res.is_complete() { "" } else { " (truncated)" });
            for (t, m) in maps.iter().enumerate() {
                text.push_str(&format!("map {}:\n", t + 1));
                for c in m {
                    text.push_str(&format!("  [{}]\n", c.join(", ")));
                }
            }
            emit(g, json!({ "ranks": ranks, "complete": res.is_complete(), "maps": maps }), text);
            Ok(EXIT_OK)
        }
        Command::Examples { name, all } => examples(g, name.as_deref(), *all),
        Command::Check { .. } | Command::Probe { .. } => unreachable!("handled above"),
    }
}

fn status_word(s: ClosureStatus) -> &'static str {
    match s {
        ClosureStatus::Member => "member",
        ClosureStatus::NonMember => "non-member",
        ClosureStatus::Inconclusive => "inconclusive",
    }
}

fn describe(c: &ClosureCertificate) -> String {
    match c {
        ClosureCertificate::Witness { m } => format!("witness m = {m}"),
        ClosureCertificate::Polyhedron => "every monomial lies in the Newton polyhedron".into(),
        ClosureCertificate::Facet { exponent, facet } => {
            format!("exponent {exponent:?} violates the facet {:?} . e >= {}", facet.normal, facet.rhs)
        }
        ClosureCertificate::OrderBound { order, bound } => format!("order {order} is below the bound {bound}"),
        ClosureCertificate::Exhausted { m_max } => format!("no witness up to m = {m_max}"),
    }
}

fn parse_fraction(f: &str) -> Result<(u32, u32)> {
    let bad = || Error::InvalidArgument(format!("expected a/b with positive integers, got {f:?}"));
    let (a, b) = f.split_once('/').ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

fn module(l: &Loaded, twists: Option<&str>, columns: Option<&str>) -> Result<ModulePresentation> {
    let Some(columns) = columns else {
        let m = IdealHandle::maximal(&l.ring);
        return ModulePresentation::cyclic(&m);
    };
    let cols: Vec<Vec<Polynomial>> = columns.split(';').map(|c| l.parse_list(c)).collect::<Result<_>>()?;
    let rank = cols.first().map(|c| c.len()).unwrap_or(1);
    let twists: Vec<i64> = match twists {
        Some(t) => t
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad twist {x:?}"))))
            .collect::<Result<_>>()?,
        None => vec![0; rank],
    };
    ModulePresentation::cokernel(&l.ring, twists, &cols)
}

fn koszul(g: &Global, ideal: &str, index: Option<usize>, coefficients: Coefficients) -> Result<u8> {
    let l = load(g, ideal, &[])?;
    ensure_minimal(&l.gens, &l.ring)?;
    let n = l.gens.len();
    let indices: Vec<usize> = match index {
        Some(i) if i > n => return Err(Error::InvalidArgument(format!("index {i} exceeds the number of generators {n}"))),
        Some(i) => vec![i],
        None => (1..=n).collect(),
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    match coefficients {
        Coefficients::Ring => {
            let k = build_koszul(&l.gens, &l.ring)?;
            for i in indices {
                let h = homology(&k, i)?;
                let ann = canon(&h.annihilator);
                text.push_str(&format!("H_{i}: {} Ann = {}\n", if h.vanishing { "zero," } else { "nonzero," }, ideal_text(&ann)));
                rows.push(json!({ "index": i, "vanishing": h.vanishing, "annihilator": ann }));
            }
        }
        Coefficients::InjectiveHull => {
            let e = matlis_dual(&l.ring)?;
            for i in indices {
                let h = homology_with_coefficients(&l.gens, &e, i)?;
                let ann = canon(&h.annihilator()?);
                let zero = h.is_zero();
                text.push_str(&format!("H_{i}(E): {} Ann = {}\n", if zero { "zero," } else { "nonzero," }, ideal_text(&ann)));
                rows.push(json!({ "index": i, "vanishing": zero, "annihilator": ann }));
            }
        }
    }
    emit(g, json!({ "homology": rows }), text);
    Ok(EXIT_OK)
}

fn examples(g: &Global, name: Option<&str>, all: bool) -> Result<u8> {
    let records: Vec<ExampleRecord> = match name {
        Some(n) => vec![find_example(n.trim_start_matches("examples/"))
            .ok_or_else(|| Error::InvalidArgument(format!("no example named {n:?}")))?],
        None if all => worked_examples(),
        None => {
            let list: Vec<Value> = worked_examples()
                .iter()
                .map(|r| json!({ "name": r.name, "ring": r.ring.to_string(), "generators": r.generators, "summary": r.summary }))
                .collect();
            let text = worked_examples().iter().map(|r| format!("{:<20} {}\n", r.name, r.summary)).collect();
            emit(g, Value::Array(list), text);
            return Ok(EXIT_OK);
        }
    };
    let mut failed = false;
    let mut out = Vec::new();
    let mut text = String::new();
    for r in &records {
        let mut facts = Vec::new();
        for f in &r.facts {
            let c = r.check(&f.fact)?;
            failed |= !c.holds;
            let label = serde_json::to_string(&f.fact).unwrap_or_default();
            text.push_str(&format!("{} {} {}\n", r.name, if c.holds { "holds" } else { "FAILS" }, label));
            facts.push(json!({ "fact": f, "holds": c.holds, "observed": c.observed }));
        }
        out.push(json!({ "name": r.name, "facts": facts }));
    }
    emit(g, Value::Array(out), text);
    Ok(if failed { EXIT_REFUTED } else { EXIT_OK })
}

fn suite_command(cli: &Cli, budget: Option<Duration>) -> Result<u8> {
    let g = &cli.global;
    let (requests, timings, output): (Vec<CheckRequest>, bool, _) = match &cli.command {
        Command::Check { file, timings, output } => {
            let reqs = match file {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
                    ScenarioFile::parse(&text)?.requests()?
                }
                None => default_suite()?,
            };
            (reqs, *timings, output.clone())
        }
        Command::Probe { question, seeds, count, timings, output } => {
            (probe_suite(*question, seeds.unwrap_or(g.seed), *count)?, *timings, output.clone())
        }
        _ => unreachable!("only suite commands"),
    };
    let opts = SuiteOptions { parallelism: Parallelism::from_jobs(g.jobs), timeout: budget, timings };
    let report = Report::new(run_suite(requests, &opts)?);
    let json = report.to_json();
    if let Some(path) = output {
        fs::write(&path, format!("{json}\n"))
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    }
    match g.format {
        Format::Json => println!("{json}"),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(report.exit_code() as u8)
}
