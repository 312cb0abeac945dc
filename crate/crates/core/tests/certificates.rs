use std::sync::OnceLock;

use koszul_core::scenarios::{
    default_suite, failing_certificates, run_suite, verify_certificate, Certificate, Outcome, Report, Status, SuiteOptions,
};
use serde_json::Value;

fn outcomes() -> &'static [Outcome] {
    static OUT: OnceLock<Vec<Outcome>> = OnceLock::new();
    OUT.get_or_init(|| run_suite(default_suite().unwrap(), &SuiteOptions::default()).unwrap())
}

/// Paths to every boolean and every `t`/`index` counter in a JSON tree.
fn mutable_paths(v: &Value, path: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Bool(_) => out.push(path.clone()),
        Value::Number(_) if matches!(path.last().map(String::as_str), Some("t" | "index" | "entries_checked")) => {
            out.push(path.clone())
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                path.push(i.to_string());
                mutable_paths(x, path, out);
                path.pop();
            }
        }
        Value::Object(o) => {
            for (k, x) in o {
                path.push(k.clone());
                mutable_paths(x, path, out);
                path.pop();
            }
        }
        _ => {}
    }
}

fn at<'a>(v: &'a mut Value, path: &[String]) -> &'a mut Value {
    path.iter().fold(v, |cur, k| match cur {
        Value::Array(a) => &mut a[k.parse::<usize>().unwrap()],
        Value::Object(o) => o.get_mut(k).unwrap(),
        _ => unreachable!(),
    })
}

fn element_paths(v: &Value, path: &mut Vec<String>, out: &mut Vec<Vec<String>>) {
    match v {
        Value::String(_) if path.last().map(String::as_str) == Some("element") => out.push(path.clone()),
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                path.push(i.to_string());
                element_paths(x, path, out);
                path.pop();
            }
        }
        Value::Object(o) => {
            for (k, x) in o {
                path.push(k.clone());
                element_paths(x, path, out);
                path.pop();
            }
        }
        _ => {}
    }
}

fn with_certificate(o: &Outcome, v: Value) -> Option<Outcome> {
    let mut m = o.clone();
    m.certificate = serde_json::from_value::<Certificate>(v).ok()?;
    Some(m)
}

fn accepted(o: &Outcome) -> bool {
    verify_certificate(o).unwrap_or(false)
}

#[test]
fn every_default_certificate_verifies() {
    assert_eq!(failing_certificates(outcomes()), Vec::<usize>::new());
}

#[test]
fn flipped_flags_and_shifted_counters_are_rejected() {
    let mut tried = 0;
    for o in outcomes() {
        let v = serde_json::to_value(&o.certificate).unwrap();
        let mut paths = Vec::new();
        mutable_paths(&v, &mut Vec::new(), &mut paths);
        for p in paths {
            let mut w = v.clone();
            let slot = at(&mut w, &p);
            *slot = match slot.clone() {
                Value::Bool(b) => Value::Bool(!b),
                Value::Number(n) => Value::from(n.as_u64().unwrap() + 1),
                _ => unreachable!(),
            };
            let Some(m) = with_certificate(o, w) else { continue };
            tried += 1;
            assert!(!accepted(&m), "{:?} {} accepted after mutating {}", o.check, o.instance.name, p.join("."));
        }
    }
    assert!(tried > 400);
}

#[test]
fn perturbed_elements_are_rejected() {
    let mut tried = 0;
    for o in outcomes() {
        let v = serde_json::to_value(&o.certificate).unwrap();
        let mut paths = Vec::new();
        element_paths(&v, &mut Vec::new(), &mut paths);
        for p in paths {
            let mut w = v.clone();
            let slot = at(&mut w, &p);
            *slot = Value::String(format!("{} + x", slot.as_str().unwrap()));
            let m = with_certificate(o, w).unwrap();
            tried += 1;
            assert!(!accepted(&m), "{:?} {} accepted after perturbing {}", o.check, o.instance.name, p.join("."));
        }
    }
    assert!(tried > 100);
}

#[test]
fn altered_statuses_are_rejected() {
    for o in outcomes() {
        for s in [Status::Verified, Status::Refuted, Status::Inconclusive, Status::HypothesisNotMet] {
            if s != o.status {
                let mut m = o.clone();
                m.status = s;
                assert!(!accepted(&m), "{:?} {} accepted as {s:?}", o.check, o.instance.name);
            }
        }
    }
}

#[test]
fn dropped_annihilator_generator_is_rejected() {
    let o = outcomes()
        .iter()
        .find(|o| matches!(&o.certificate, Certificate::AnnihilatorEquality { annihilator, .. } if annihilator.len() > 1))
        .unwrap();
    let mut m = o.clone();
    if let Certificate::AnnihilatorEquality { annihilator, .. } = &mut m.certificate {
        annihilator.pop();
    }
    assert!(!accepted(&m));
}

#[test]
fn aborted_certificate_needs_inconclusive_status() {
    let mut m = outcomes()[0].clone();
    m.certificate = Certificate::Aborted { reason: "timeout".into() };
    m.status = Status::Inconclusive;
    assert!(accepted(&m));
    m.status = Status::Verified;
    assert!(!accepted(&m));
}

#[test]
fn report_round_trips_through_json() {
    let r = Report::new(outcomes().to_vec());
    let back = Report::from_json(&r.to_json()).unwrap();
    assert_eq!(back.to_json(), r.to_json());
    assert_eq!(r.summary.theorem_refutations, 0);
    assert!(Report::from_json("{\"version\": ").is_err());
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let opts = SuiteOptions { parallelism: koszul_core::parallel::Parallelism::from_jobs(1), ..SuiteOptions::default() };
    let seq = Report::new(run_suite(default_suite().unwrap(), &opts).unwrap());
    assert_eq!(seq.to_json(), Report::new(outcomes().to_vec()).to_json());
}
