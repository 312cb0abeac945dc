use std::process::ExitCode;
use std::time::{Duration, Instant};

use koszul_core::closure::{is_integral_over, monomial_closure, verify_verdict, ClosureCertificate, ClosureStatus, ClosureVerdict};
use koszul_core::corpus::find_example;
use koszul_core::koszul::{build_koszul, homology, homology_with_coefficients, presentation_and_content};
use koszul_core::modops::{colon, dimension_and_height, ideal_power, IdealHandle};
use koszul_core::polyring::{PolyRing, QuotientRing, Ring};
use koszul_core::resolutions::matlis_dual;
use koszul_core::scenarios::{
    default_suite, example_instance, probe_suite, run_check, run_suite, verify_certificate, Certificate, CheckId, Outcome,
    Report, Status, SuiteOptions,
};
use koszul_core::text::parse_polynomial_list;
use koszul_core::Result;

struct Fail(String);

impl From<koszul_core::Error> for Fail {
    fn from(e: koszul_core::Error) -> Self {
        Fail(format!("error: {e}"))
    }
}

/// A passing note or the reason for failure.
type Verdict = std::result::Result<String, Fail>;

fn ideal(ring: &Ring, text: &str) -> Result<IdealHandle> {
    IdealHandle::new(ring, &parse_polynomial_list(text, ring.base())?)
}

fn ensure(ok: bool, what: &str) -> std::result::Result<(), Fail> {
    if ok {
        Ok(())
    } else {
        Err(Fail(what.to_string()))
    }
}

fn within(start: Instant, limit: Duration) -> Verdict {
    let took = start.elapsed();
    ensure(took < limit, &format!("took {took:?}, limit {limit:?}"))?;
    Ok(format!("{} ms", took.as_millis()))
}

fn member_within(v: &ClosureVerdict, m_max: u32) -> bool {
    v.status == ClosureStatus::Member
        && match v.certificate {
            ClosureCertificate::Witness { m } => m <= m_max,
            _ => true,
        }
}

fn binomial() -> Verdict {
    let start = Instant::now();
    let rec = find_example("binomial").expect("registered");
    let ring = rec.ring.build()?;
    let gens = rec.polynomials(&ring)?;
    let i = IdealHandle::new(&ring, &gens)?;
    let k = build_koszul(&gens, &ring)?;
    let a1 = homology(&k, 1)?.annihilator;
    let a2 = homology(&k, 2)?.annihilator;
    let c = parse_polynomial_list("x*z - y*z - x*w + y*w", ring.base())?.remove(0);
    let v = is_integral_over(&c, &i, 10)?;
    ensure(a1.equals(&ideal(&ring, "x^2 - x*y, -x*y + y^2, z^2 - z*w, -z*w + w^2, x*z - y*z - x*w + y*w")?), "Ann H1")?;
    ensure(a2.equals(&ideal(&ring, "x - y, z - w")?), "Ann H2")?;
    ensure(dimension_and_height(&i)?.1 == 2, "height")?;
    ensure(member_within(&v, 10) && matches!(v.certificate, ClosureCertificate::Witness { .. }), "witness")?;
    ensure(verify_verdict(&c, &i, &v)?, "witness re-verification")?;
    within(start, Duration::from_secs(10))
}

fn quintic() -> Verdict {
    let start = Instant::now();
    let base = PolyRing::rational(&["x", "y"]);
    let ring = Ring::Poly(base.clone());
    let gens = parse_polynomial_list("x^5 - y^5, x^4*y, x*y^4", &base)?;
    let i = IdealHandle::new(&ring, &gens)?;
    let sq = colon(&ideal_power(&i, 2)?, &i)?;
    let (_, content) = presentation_and_content(&gens, &ring)?;
    let rec = find_example("aci-quintic").expect("registered");
    let c13 = run_check(CheckId::C13, &example_instance(&rec)?)?;
    ensure(sq.equals(&ideal(&ring, "x^5 - y^5, x^4*y, x*y^4, x^3*y^3")?), "I^2 : I")?;
    ensure(content.equals(&ideal(&ring, "x^2, x*y, y^2")?), "I1(phi)")?;
    ensure(i.mu()? == 3 && content.mu()? == 3, "mu")?;
    ensure(!sq.equals(&i), "faithfulness should fail")?;
    ensure(c13.status == Status::HypothesisNotMet, &format!("C13 reported {:?}", c13.status))?;
    within(start, Duration::from_secs(5))
}

fn square() -> Verdict {
    let start = Instant::now();
    let base = PolyRing::rational(&["x", "y"]);
    let ring = Ring::Poly(base.clone());
    let gens = parse_polynomial_list("x^2, x*y, y^2", &base)?;
    let i = IdealHandle::new(&ring, &gens)?;
    let (_, content) = presentation_and_content(&gens, &ring)?;
    let q = colon(&i, &content)?;
    ensure(q.equals(&ideal(&ring, "x, y")?), "I : I1(phi)")?;
    ensure(i.contains_ideal(&ideal_power(&q, 2)?), "square of the colon")?;
    ensure(monomial_closure(&i)?.equals(&i), "closure")?;
    within(start, Duration::from_secs(1))
}

fn injective_hull() -> Verdict {
    let start = Instant::now();
    let base = PolyRing::rational(&["x", "y", "z"]);
    let m = ideal(&Ring::Poly(base.clone()), "x, y, z")?;
    let ring = Ring::Quotient(QuotientRing::new(base.clone(), ideal_power(&m, 3)?.gens())?);
    let e = matlis_dual(&ring)?;
    let gens = parse_polynomial_list("x, y", &base)?;
    let z = parse_polynomial_list("z", &base)?.remove(0);
    let h1 = homology_with_coefficients(&gens, &e, 1)?;
    let h2 = homology_with_coefficients(&gens, &e, 2)?;
    ensure(h1.annihilated_by(&z), "z H1 = 0")?;
    ensure(!h2.annihilated_by(&z.pow(2)), "z^2 H2 != 0")?;
    within(start, Duration::from_secs(5))
}

fn of(outcomes: &[Outcome], check: CheckId, prefix: &str) -> Vec<Outcome> {
    outcomes.iter().filter(|o| o.check == check && o.instance.name.starts_with(prefix)).cloned().collect()
}

fn all_verified(os: &[Outcome], min: usize, what: &str) -> Verdict {
    ensure(os.len() >= min, &format!("{} {what} instances, need {min}", os.len()))?;
    let bad: Vec<&str> = os.iter().filter(|o| o.status != Status::Verified).map(|o| o.instance.name.as_str()).collect();
    ensure(bad.is_empty(), &format!("not verified: {bad:?}"))?;
    Ok(format!("{}/{} {what}", os.len(), os.len()))
}

fn closed_suite(out: &[Outcome]) -> Verdict {
    all_verified(&of(out, CheckId::C1, "integrally_closed_monomial"), 25, "closed monomial ideals")
}

fn content_colon_suite(out: &[Outcome]) -> Verdict {
    let os: Vec<Outcome> = of(out, CheckId::C3, "").into_iter().filter(|o| o.instance.name != "binomial").collect();
    let mut syzygetic = 0;
    for o in &os {
        if let Certificate::ContentColon { syzygetic: s, contained, equal, .. } = &o.certificate {
            ensure(*contained, &format!("{} not contained", o.instance.name))?;
            ensure(!*s || *equal, &format!("{} syzygetic without equality", o.instance.name))?;
            syzygetic += usize::from(*s);
        }
    }
    Ok(format!("{}, {syzygetic} syzygetic", all_verified(&os, 25, "m-primary ideals")?))
}

fn hilbert_burch_suite(out: &[Outcome]) -> Verdict {
    all_verified(&of(out, CheckId::C5, "hilbert_burch"), 10, "Hilbert-Burch ideals")
}

fn pfaffian_suite(out: &[Outcome]) -> Verdict {
    let c7 = of(out, CheckId::C7, "pfaffian_gorenstein");
    let mut inconclusive = 0;
    for o in &c7 {
        if let Certificate::PfaffianClosure { products, fractional, .. } = &o.certificate {
            inconclusive += products.iter().filter(|v| v.verdict.status == ClosureStatus::Inconclusive).count();
            ensure(products.iter().all(|v| member_within(&v.verdict, 10)), &format!("{} square", o.instance.name))?;
            ensure(fractional.iter().all(|v| v.verdict.status == ClosureStatus::Member), &format!("{} fractional", o.instance.name))?;
        }
    }
    ensure(inconclusive == 0, &format!("{inconclusive} inconclusive"))?;
    let a = all_verified(&c7, 5, "Pfaffian closures")?;
    let b = all_verified(&of(out, CheckId::C6, "pfaffian_gorenstein"), 5, "socle checks")?;
    Ok(format!("{a}, {b}, 0 inconclusive"))
}

fn double_colon_suite(out: &[Outcome]) -> Verdict {
    let os = of(out, CheckId::C8, "");
    for o in &os {
        if let Certificate::DoubleColon { equal, verdicts, .. } = &o.certificate {
            ensure(*equal, &format!("{} equality", o.instance.name))?;
            ensure(verdicts.iter().all(|v| v.verdict.status == ClosureStatus::Member), &format!("{} closure", o.instance.name))?;
        }
    }
    all_verified(&os, 10, "general complete intersections")
}

fn tor_suite(out: &[Outcome]) -> Verdict {
    let tor = all_verified(&of(out, CheckId::C10, "square-of-maximal/"), 10, "modules")?;
    let burch = of(out, CheckId::C9, "square-of-maximal/");
    let mut certified = 0;
    for o in &burch {
        ensure(o.status != Status::Refuted && o.status != Status::Inconclusive, &format!("{} burch {:?}", o.instance.name, o.status))?;
        if let Certificate::BurchSocle { steps } = &o.certificate {
            for s in steps.iter().filter(|s| s.hypothesis == ClosureStatus::Member) {
                certified += 1;
                ensure(s.annihilator_in_image == Some(true), &format!("{} t={}", o.instance.name, s.t))?;
            }
        }
    }
    Ok(format!("{tor}, {certified} certified Burch steps"))
}

fn integrity(out: &[Outcome]) -> Verdict {
    let failing: Vec<&str> = out
        .iter()
        .filter(|o| !verify_certificate(o).unwrap_or(false))
        .map(|o| o.instance.name.as_str())
        .collect();
    let mut mutated = out.iter().find(|o| matches!(o.certificate, Certificate::AnnihilatorEquality { .. })).unwrap().clone();
    if let Certificate::AnnihilatorEquality { equal, .. } = &mut mutated.certificate {
        *equal = !*equal;
    }
    let caught = !verify_certificate(&mutated)?;
    ensure(failing.is_empty(), &format!("failing certificates: {failing:?}"))?;
    ensure(caught, "mutated certificate accepted")?;
    Ok(format!("{}/{} certificates verify, mutation rejected", out.len(), out.len()))
}

fn probes() -> Verdict {
    let dir = std::env::temp_dir().join(format!("koszul-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| Fail(e.to_string()))?;
    let mut notes = Vec::new();
    for q in [1u8, 2] {
        let report = Report::new(run_suite(probe_suite(q, 0, 20)?, &SuiteOptions::default())?);
        let path = dir.join(format!("probe-q{q}.json"));
        std::fs::write(&path, report.to_json()).map_err(|e| Fail(e.to_string()))?;
        let back = Report::from_json(&std::fs::read_to_string(&path).map_err(|e| Fail(e.to_string()))?)?;
        ensure(back.outcomes.len() >= 20, &format!("q{q}: {} seeds", back.outcomes.len()))?;
        ensure(back.summary.theorem_refutations == 0, &format!("q{q}: theorem refutations"))?;
        ensure(back.summary.inconclusive == 0, &format!("q{q}: inconclusive outcomes"))?;
        for o in back.outcomes.iter().filter(|o| o.status == Status::Refuted) {
            ensure(verify_certificate(o)?, &format!("q{q}: {} refutation does not re-verify", o.instance.name))?;
        }
        notes.push(format!("q{q}: {} verified, {} refuted", back.summary.verified, back.summary.refuted));
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(notes.join("; "))
}

fn determinism(first: &Report) -> Verdict {
    let second = Report::new(run_suite(default_suite()?, &SuiteOptions::default())?);
    ensure(first.to_json() == second.to_json(), "reports differ")?;
    Ok(format!("{} bytes identical", first.to_json().len()))
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags; a name filter other than ours skips the run.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return ExitCode::SUCCESS;
    }
    let mut results: Vec<(u32, &str, Verdict)> = vec![
        (1, "binomial annihilators", (binomial())),
        (2, "almost complete intersection of quintics", (quintic())),
        (3, "square of the maximal ideal", (square())),
        (4, "injective hull coefficients", (injective_hull())),
    ];
    let suite = default_suite().and_then(|r| run_suite(r, &SuiteOptions::default()));
    match suite {
        Ok(out) => {
            results.push((5, "closed monomial suite", closed_suite(&out)));
            results.push((6, "content colon suite", content_colon_suite(&out)));
            results.push((7, "Hilbert-Burch suite", hilbert_burch_suite(&out)));
            results.push((8, "Pfaffian suite", pfaffian_suite(&out)));
            results.push((9, "double colon suite", double_colon_suite(&out)));
            results.push((10, "Tor vanishing suite", tor_suite(&out)));
            results.push((11, "certificate integrity", (integrity(&out))));
            results.push((12, "probes", (probes())));
            results.push((13, "determinism", (determinism(&Report::new(out)))));
        }
        Err(e) => {
            for (n, name) in [(5, "closed monomial suite"), (6, "content colon suite"), (7, "Hilbert-Burch suite")] {
                results.push((n, name, Err(Fail(format!("suite failed: {e}")))));
            }
        }
    }
    let mut failed = 0;
    for (n, name, v) in &results {
        match v {
            Ok(note) => println!("criterion {n:>2} PASS  {name}: {note}"),
            Err(Fail(why)) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 && results.len() == 13 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
