use crate::closure::{
    fractional_membership, is_integral_over, is_monomial_ideal, monomial_closure, ClosureStatus,
};
use crate::corpus::general_elements;
use crate::error::{Error, Result};
use crate::koszul::{build_koszul, delta_invariant, ensure_minimal, homology, presentation_and_content};
use crate::modops::{
    colon, colon_element, dimension_and_height, ideal_power, intersection, product, socle_colon, IdealHandle,
};
use crate::polyring::{Polynomial, Ring};
use crate::resolutions::{
    burch_socle_check, classify, ideal_times_free_in_image, image_in_ideal_multiple, minimal_resolution, tor,
    GradedFreeResolution, ModulePresentation,
};
use crate::text::print_polynomial;

use super::certificate::{
    aggregate, BurchStep, Certificate, ColonCheck, ElementVerdict, EscapeStep, HomologyEntry, ProbeStep, TorEntry,
};
use super::instances::Instance;
use super::{CheckId, Outcome, Status};

pub(crate) fn canon(i: &IdealHandle) -> Vec<String> {
    i.canonical_generators().iter().map(print_polynomial).collect()
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Requirement(msg.into()))
    }
}

fn require_poly(ring: &Ring) -> Result<()> {
    require(!ring.is_quotient(), "the check runs over a polynomial ring")
}

pub(crate) fn require_closed_m_primary(i: &IdealHandle) -> Result<()> {
    require(i.is_m_primary(), "the ideal must be m-primary")?;
    require(is_monomial_ideal(i), "integral closedness is certified for monomial ideals only")?;
    require(monomial_closure(i)?.equals(i), "the ideal must be integrally closed")
}

fn verdicts(elems: &[Polynomial], target: &IdealHandle, m_max: u32) -> Result<Vec<ElementVerdict>> {
    elems
        .iter()
        .map(|c| Ok(ElementVerdict { element: print_polynomial(c), verdict: is_integral_over(c, target, m_max)? }))
        .collect()
}

fn closure_status(s: ClosureStatus) -> Status {
    match s {
        ClosureStatus::Member => Status::Verified,
        ClosureStatus::NonMember => Status::Refuted,
        ClosureStatus::Inconclusive => Status::Inconclusive,
    }
}

/// Runs one check on one instance. Requirement violations are errors; the
/// deadline installed on the calling thread is honoured.
pub fn run_check(check: CheckId, instance: &Instance) -> Result<Outcome> {
    let ring = instance.build_ring()?;
    let gens = instance.generators(&ring)?;
    require(gens.iter().any(|g| !g.is_zero()), "the ideal must be nonzero")?;
    let i = IdealHandle::new(&ring, &gens)?;
    require(!i.is_unit(), "the ideal must be proper")?;
    let p = &instance.params;
    let (status, certificate) = match check {
        CheckId::C1 => closed_annihilator(&ring, &gens, &i)?,
        CheckId::C2 => socle_closure(&ring, &gens, &i, p.m_max)?,
        CheckId::C3 => content_colon(&ring, &gens, &i)?,
        CheckId::C4 => colon_power(&ring, &gens, &i)?,
        CheckId::C5 => height_two(&ring, &gens, &i)?,
        CheckId::C6 => gorenstein_socle(&ring, &gens, &i)?,
        CheckId::C7 => pfaffian_closure(&ring, &gens, &i, p.m_max)?,
        CheckId::C8 => double_colon(&ring, &gens, &i, p.m_max, p.seed)?,
        CheckId::C9 => {
            require_poly(&ring)?;
            require_closed_m_primary(&i)?;
            burch(&instance.presentation(&ring)?, &i, p.t_min, p.t_max, p.m_max)?
        }
        CheckId::C10 => {
            require_poly(&ring)?;
            require_closed_m_primary(&i)?;
            tor_vanishing(instance, &ring, &i, p.t_min, p.t_max)?
        }
        CheckId::C11 => conditional_containment(&ring, &i, &instance.other_ideal(&ring)?, p.m_max)?,
        CheckId::C12 => entries_escape(&ring, &i, p.max_length, p.m_max)?,
        CheckId::C13 => faithful(&ring, &gens, &i)?,
        CheckId::C14 => match p.question {
            Some(1) => product_probe(&ring, &gens, &i, p.m_max)?,
            Some(2) => general_probe(&ring, &gens, &i, p.m_max, p.seed)?,
            _ => return Err(Error::InvalidArgument("the probe needs question 1 or 2".into())),
        },
    };
    Ok(Outcome { check, instance: instance.clone(), status, certificate, millis: None })
}

type Run = (Status, Certificate);

fn closed_annihilator(ring: &Ring, gens: &[Polynomial], i: &IdealHandle) -> Result<Run> {
    require_poly(ring)?;
    require_closed_m_primary(i)?;
    ensure_minimal(gens, ring)?;
    let h1 = homology(&build_koszul(gens, ring)?, 1)?;
    let equal = h1.annihilator.equals(i);
    let status = if h1.vanishing {
        Status::HypothesisNotMet
    } else if equal {
        Status::Verified
    } else {
        Status::Refuted
    };
    Ok((status, Certificate::AnnihilatorEquality { annihilator: canon(&h1.annihilator), equal }))
}

fn socle_closure(ring: &Ring, gens: &[Polynomial], i: &IdealHandle, m_max: u32) -> Result<Run> {
    require_poly(ring)?;
    require(i.is_m_primary(), "the ideal must be m-primary")?;
    ensure_minimal(gens, ring)?;
    let h1 = homology(&build_koszul(gens, ring)?, 1)?;
    if h1.vanishing {
        let cert = Certificate::SocleClosure { h1_vanishes: true, candidates: Vec::new(), colon_checks: Vec::new() };
        return Ok((Status::HypothesisNotMet, cert));
    }
    let ann = &h1.annihilator;
    let both = intersection(ann, &socle_colon(i)?)?;
    let cands: Vec<Polynomial> = both.small_generators().into_iter().filter(|c| !i.contains(c)).collect();
    let candidates = verdicts(&cands, i, m_max)?;
    let mi = product(&IdealHandle::maximal(ring), i)?;
    let mut colon_checks = Vec::new();
    for c in ann.small_generators().into_iter().filter(|c| !i.contains(c)) {
        let equal = colon_element(i, &c)?.equals(&colon_element(&mi, &c)?);
        colon_checks.push(ColonCheck { element: print_polynomial(&c), equal });
    }
    let status = if colon_checks.iter().any(|c| !c.equal) {
        Status::Refuted
    } else {
        closure_status(aggregate(&candidates))
    };
    Ok((status, Certificate::SocleClosure { h1_vanishes: false, candidates, colon_checks }))
}

fn content_colon(ring: &Ring, gens: &[Polynomial], i: &IdealHandle) -> Result<Run> {
    let (_, content) = presentation_and_content(gens, ring)?;
    let ann = homology(&build_koszul(gens, ring)?, 1)?.annihilator;
    let q = colon(i, &content)?;
    let (_, syzygetic) = delta_invariant(gens, ring)?;
    let contained = q.contains_ideal(&ann);
    let equal = contained && ann.contains_ideal(&q);
    let status = if !contained || (syzygetic && !equal) { Status::Refuted } else { Status::Verified };
    Ok((
        status,
        Certificate::ContentColon {
            annihilator: canon(&ann),
            content: canon(&content),
            colon: canon(&q),
            syzygetic,
            contained,
            equal,
        },
    ))
}

fn quotient_resolution(i: &IdealHandle) -> Result<GradedFreeResolution> {
    let res = minimal_resolution(&ModulePresentation::cyclic(i)?, i.ring().nvars() + 1)?;
    require(res.is_complete(), "the resolution of R/I must be finite")?;
    Ok(res)
}

fn colon_power(ring: &Ring, gens: &[Polynomial], i: &IdealHandle) -> Result<Run> {
    require_poly(ring)?;
    let (_, content) = presentation_and_content(gens, ring)?;
    let q = colon(i, &content)?;
    let pd = quotient_resolution(i)?.length().saturating_sub(1);
    let power = pd as u32 + 1;
    let contained = i.contains_ideal(&ideal_power(&q, power)?);
    let status = if contained { Status::Verified } else { Status::Refuted };
    Ok((status, Certificate::ColonPower { colon: canon(&q), projective_dimension: pd, power, contained }))
}

fn height_two(ring: &Ring, gens: &[Polynomial], i: &IdealHandle) -> Result<Run> {
    require_poly(ring)?;
    ensure_minimal(gens, ring)?;
    let class = classify(i)?;
    require(class.perfect && class.height == 2, "the ideal must be perfect of height two")?;
    let k = build_koszul(gens, ring)?;
    let mut entries = Vec::new();
    let mut refuted = false;
    for index in 1..gens.len() {
        let h = homology(&k, index)?;
        if !h.vanishing && !h.annihilator.equals(i) {
            refuted = true;
        }
        entries.push(HomologyEntry { index, vanishing: h.vanishing, annihilator: canon(&h.annihilator) });
    }
    let status = if refuted { Status::Refuted } else { Status::Verified };
    Ok((status, Certificate::HomologyAnnihilators { entries }))
}

fn gorenstein_socle(ring: &Ring, gens: &[Polynomial], i: &IdealHandle) -> Result<Run> {
    require_poly(ring)?;
    require(i.is_m_primary(), "the ideal must be m-primary")?;
    ensure_minimal(gens, ring)?;
    let class = classify(i)?;
    require(class.gorenstein_quotient && !class.complete_intersection, "the ideal must be Gorenstein and not a complete intersection")?;
    let h1 = homology(&build_koszul(gens, ring)?, 1)?;
    let socle = socle_colon(i)?;
    let killing: Vec<bool> = socle.canonical_generators().iter().map(|s| h1.module.annihilated_by(s)).collect::<Result<_>>()?;
    let status = if killing.iter().all(|&k| k) { Status::Verified } else { Status::Refuted };
    Ok((status, Certificate::SocleKillsHomology { socle: canon(&socle), killing }))
}

pub(crate) fn require_pfaffian(ring: &Ring, i: &IdealHandle) -> Result<usize> {
    require_poly(ring)?;
    require(ring.field().characteristic() != 2, "the characteristic must differ from 2")?;
    let class = classify(i)?;
    require(
        class.height == 3 && class.gorenstein_quotient && class.mu >= 5 && class.mu % 2 == 1,
        "the ideal must be height three Gorenstein with an odd number n >= 5 of generators",
    )?;
    Ok((class.mu - 1) / 2)
}

fn pfaffian_closure(ring: &Ring, gens: &[Polynomial], i: &IdealHandle, m_max: u32) -> Result<Run> {
    ensure_minimal(gens, ring)?;
    let k = require_pfaffian(ring, i)?;
    let ann = homology(&build_koszul(gens, ring)?, 1)?.annihilator;
    let ag = ann.canonical_generators();
    let mut prods = Vec::new();
    for (n, f) in ag.iter().enumerate() {
        for g in &ag[n..] {
            prods.push(ring.normalize(&f.mul(g)));
        }
    }
    let products = verdicts(&prods, i, m_max)?;
    let (a, b) = (k as u32 - 1, k as u32);
    let fractional: Vec<ElementVerdict> = ag
        .iter()
        .map(|c| Ok(ElementVerdict { element: print_polynomial(c), verdict: fractional_membership(c, i, a, b, m_max)? }))
        .collect::<Result<_>>()?;
    let status = closure_status(aggregate(products.iter().chain(&fractional)));
    Ok((status, Certificate::PfaffianClosure { annihilator: canon(&ann), products, a, b, fractional }))
}

fn double_colon(ring: &Ring, gens: &[Polynomial], i: &IdealHandle, m_max: u32, seed: u64) -> Result<Run> {
    require_poly(ring)?;
    require(i.is_m_primary(), "the ideal must be m-primary")?;
    ensure_minimal(gens, ring)?;
    let g = ring.nvars();
    let n = gens.len();
    let j = general_elements(i, g, seed)?;
    let l = colon(&j, &colon(&j, i)?)?;
    let ann = homology(&build_koszul(gens, ring)?, n - g)?.annihilator;
    let equal = ann.equals(&l);
    let vs = verdicts(&l.canonical_generators(), i, m_max)?;
    let status = if !equal { Status::Refuted } else { closure_status(aggregate(&vs)) };
    Ok((
        status,
        Certificate::DoubleColon {
            regular_sequence: j.gens().iter().map(print_polynomial).collect(),
            double_colon: canon(&l),
            annihilator: canon(&ann),
            equal,
            verdicts: vs,
        },
    ))
}

fn burch(m: &ModulePresentation, i: &IdealHandle, t_min: usize, t_max: usize, m_max: u32) -> Result<Run> {
    require(t_min >= 1 && t_min <= t_max, "the t-range must satisfy 1 <= t_min <= t_max")?;
    let res = minimal_resolution(m, t_max + 1)?;
    let mut steps = Vec::new();
    for t in t_min..=t_max {
        let rep = burch_socle_check(&res, i, t, m_max)?;
        let mut step = BurchStep {
            t,
            annihilator: canon(&rep.jt),
            hypothesis: rep.hypothesis,
            entries: rep
                .entry_verdicts
                .iter()
                .map(|(e, v)| ElementVerdict { element: e.clone(), verdict: v.clone() })
                .collect(),
            socle_meets_image: None,
            image_in_ideal_multiple: None,
            annihilator_in_image: None,
        };
        if rep.hypothesis == ClosureStatus::Member {
            step.socle_meets_image = rep.intersection_zero.map(|z| !z);
            step.image_in_ideal_multiple = Some(image_in_ideal_multiple(&res, i, t)?);
            step.annihilator_in_image = Some(ideal_times_free_in_image(&res, &rep.jt, t)?);
        }
        steps.push(step);
    }
    Ok((burch_status(&steps), Certificate::BurchSocle { steps }))
}

pub(crate) fn burch_status(steps: &[BurchStep]) -> Status {
    let failed = steps.iter().any(|s| {
        s.socle_meets_image == Some(true) || s.image_in_ideal_multiple == Some(false) || s.annihilator_in_image == Some(false)
    });
    if failed {
        Status::Refuted
    } else if steps.iter().any(|s| s.hypothesis == ClosureStatus::Member) {
        Status::Verified
    } else if steps.iter().any(|s| s.hypothesis == ClosureStatus::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::HypothesisNotMet
    }
}

fn tor_vanishing(inst: &Instance, ring: &Ring, i: &IdealHandle, t_min: usize, t_max: usize) -> Result<Run> {
    let m = inst.presentation(ring)?;
    let res = minimal_resolution(&m, ring.nvars() + 1)?;
    require(res.is_complete(), "the module must have a finite resolution")?;
    let pd = res.length();
    if let Some(want) = inst.module.as_ref().and_then(|s| s.expected_pd) {
        require(want == pd, "the module does not have its declared projective dimension")?;
    }
    let mut entries = Vec::new();
    for t in t_min..=t_max {
        let tor_vanishes = tor(&res, i, t)?.is_zero()?;
        entries.push(TorEntry { t, tor_vanishes, pd_below_t: pd < t });
    }
    let ok = entries.iter().all(|e| e.tor_vanishes == e.pd_below_t);
    Ok((if ok { Status::Verified } else { Status::Refuted }, Certificate::TorVanishing { projective_dimension: pd, entries }))
}

pub(crate) fn colon_target(i: &IdealHandle, j: &IdealHandle) -> Result<IdealHandle> {
    let inner = colon(&product(i, j)?, &intersection(i, j)?)?;
    product(&IdealHandle::maximal(i.ring()), &inner)
}

fn conditional_containment(ring: &Ring, i: &IdealHandle, j: &IdealHandle, m_max: u32) -> Result<Run> {
    require_poly(ring)?;
    require_closed_m_primary(i)?;
    let target = colon_target(i, j)?;
    let vs = verdicts(&j.small_generators(), &target, m_max)?;
    let hypothesis = aggregate(&vs);
    let (status, contained) = match hypothesis {
        ClosureStatus::Member => {
            let c = i.contains_ideal(j);
            (if c { Status::Verified } else { Status::Refuted }, Some(c))
        }
        ClosureStatus::NonMember => (Status::HypothesisNotMet, None),
        ClosureStatus::Inconclusive => (Status::Inconclusive, None),
    };
    Ok((status, Certificate::ConditionalContainment { target: canon(&target), hypothesis, verdicts: vs, contained }))
}

pub(crate) fn require_reduced_singular(ring: &Ring, i: &IdealHandle) -> Result<()> {
    let Ring::Quotient(q) = ring else {
        return Err(Error::Requirement("the ring must be a quotient by squarefree monomials".into()));
    };
    require(
        !q.relations().is_empty()
            && q.relations().iter().all(|r| {
                r.is_monomial() && r.degree().is_some_and(|d| d >= 2) && r.terms()[0].0.exponents().iter().all(|&e| e <= 1)
            }),
        "the relations must be squarefree monomials of degree at least two",
    )?;
    require(i.equals(&IdealHandle::maximal(ring)), "the module must be the residue field")
}

pub(crate) fn distinct_entries(res: &GradedFreeResolution, ring: &Ring, t: usize) -> Result<Vec<Polynomial>> {
    let mut out: Vec<Polynomial> = Vec::new();
    for col in res.matrix(t)? {
        for e in col {
            let e = ring.normalize(&e);
            if !e.is_zero() && !out.contains(&e) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

fn entries_escape(ring: &Ring, i: &IdealHandle, max_length: usize, m_max: u32) -> Result<Run> {
    require_reduced_singular(ring, i)?;
    let res = minimal_resolution(&ModulePresentation::cyclic(i)?, max_length)?;
    let target = product(&IdealHandle::maximal(ring), i)?;
    let mut steps = Vec::new();
    let mut status = Status::Verified;
    for t in 1..=res.computed_length().min(max_length) {
        let entries = distinct_entries(&res, ring, t)?;
        let mut step = EscapeStep { t, witness: None, entries_checked: 0 };
        let mut undecided = false;
        for e in &entries {
            step.entries_checked += 1;
            let v = is_integral_over(e, &target, m_max)?;
            match v.status {
                ClosureStatus::NonMember => {
                    step.witness = Some(ElementVerdict { element: print_polynomial(e), verdict: v });
                    break;
                }
                ClosureStatus::Inconclusive => undecided = true,
                ClosureStatus::Member => {}
            }
        }
        if step.witness.is_none() {
            status = if undecided || entries.is_empty() { status.max(Status::Inconclusive) } else { Status::Refuted };
        }
        steps.push(step);
    }
    if status == Status::HypothesisNotMet {
        status = Status::Refuted;
    }
    Ok((status, Certificate::EntryEscapes { steps }))
}

fn faithful(ring: &Ring, gens: &[Polynomial], i: &IdealHandle) -> Result<Run> {
    require_poly(ring)?;
    let class = classify(i)?;
    let (_, content) = presentation_and_content(gens, ring)?;
    let content_ci = !content.is_unit() && dimension_and_height(&content)?.1 == content.mu()?;
    let sq = colon(&ideal_power(i, 2)?, i)?;
    let is_faithful = sq.equals(i);
    let met = class.perfect && class.almost_complete_intersection && content_ci;
    let status = match (met, is_faithful) {
        (false, _) => Status::HypothesisNotMet,
        (true, true) => Status::Verified,
        (true, false) => Status::Refuted,
    };
    Ok((
        status,
        Certificate::Faithfulness {
            perfect: class.perfect,
            almost_complete_intersection: class.almost_complete_intersection,
            content: canon(&content),
            content_is_complete_intersection: content_ci,
            square_colon: canon(&sq),
            faithful: is_faithful,
        },
    ))
}

fn product_probe(ring: &Ring, gens: &[Polynomial], i: &IdealHandle, m_max: u32) -> Result<Run> {
    require_poly(ring)?;
    require(i.is_m_primary(), "the ideal must be m-primary")?;
    ensure_minimal(gens, ring)?;
    let r = gens.len().saturating_sub(ring.nvars());
    if r == 0 {
        let cert = Certificate::ProductClosure { factors: Vec::new(), power: 0, verdicts: Vec::new() };
        return Ok((Status::Verified, cert));
    }
    // the nonvanishing range H_1..H_(n-d)
    let k = build_koszul(gens, ring)?;
    let factors: Vec<IdealHandle> = (1..=r).map(|t| Ok(homology(&k, t)?.annihilator)).collect::<Result<_>>()?;
    let mut prod = factors[0].clone();
    for f in &factors[1..] {
        prod = product(&prod, f)?;
    }
    let target = ideal_power(i, r as u32)?;
    let vs = verdicts(&prod.small_generators(), &target, m_max)?;
    Ok((
        closure_status(aggregate(&vs)),
        Certificate::ProductClosure { factors: factors.iter().map(canon).collect(), power: r, verdicts: vs },
    ))
}

fn general_probe(ring: &Ring, gens: &[Polynomial], i: &IdealHandle, m_max: u32, seed: u64) -> Result<Run> {
    require_poly(ring)?;
    require(i.is_m_primary(), "the ideal must be m-primary")?;
    ensure_minimal(gens, ring)?;
    let n = gens.len();
    let d = ring.nvars();
    let k = build_koszul(gens, ring)?;
    let mut steps = Vec::new();
    for j in d..n {
        let jj = general_elements(i, j, seed.wrapping_add(j as u64))?;
        let l = colon(&jj, &colon(&jj, i)?)?;
        let ann = homology(&k, n - j)?.annihilator;
        let contained = l.contains_ideal(&ann);
        steps.push(ProbeStep {
            j,
            elements: jj.gens().iter().map(print_polynomial).collect(),
            double_colon: canon(&l),
            annihilator: canon(&ann),
            contained,
            verdicts: verdicts(&l.canonical_generators(), i, m_max)?,
        });
    }
    let status = if steps.iter().any(|s| !s.contained) {
        Status::Refuted
    } else {
        closure_status(aggregate(steps.iter().flat_map(|s| &s.verdicts)))
    };
    Ok((status, Certificate::GeneralColons { steps }))
}
