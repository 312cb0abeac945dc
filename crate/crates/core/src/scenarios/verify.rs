//! Re-verification of outcomes. Every claim recorded in a certificate is
//! recomputed by a route other than the one that produced it: homology
//! annihilators through the dual complex, colons by elimination,
//! intersections through syzygies, Tor by resolving the other factor and
//! projective dimension from Tor against the residue field.

use crate::closure::{verify_verdict, ClosureStatus};
use crate::error::Result;
use crate::groebner::{kernel_generators, GroebnerBasis, ModuleElement};
use crate::koszul::{cohomology_annihilator_direct, presentation_and_content};
use crate::modops::{colon_via_elimination, dimension_and_height, ideal_power, intersection_via_syzygies, product, sum, IdealHandle};
use crate::polyring::{Polynomial, Ring};
use crate::resolutions::{classify, minimal_resolution, tor_by_resolving_quotient, ModulePresentation};
use crate::text::parse_polynomial;

use super::certificate::{aggregate, BurchStep, Certificate, ElementVerdict};
use super::checks::{burch_status, colon_target, distinct_entries};
use super::instances::parse_list;
use super::{CheckId, Outcome, Status};

struct Ctx {
    ring: Ring,
    gens: Vec<Polynomial>,
    i: IdealHandle,
    m: IdealHandle,
}

impl Ctx {
    fn ideal(&self, list: &[String]) -> Result<IdealHandle> {
        IdealHandle::new(&self.ring, &parse_list(&self.ring, list)?)
    }

    fn poly(&self, s: &str) -> Result<Polynomial> {
        Ok(self.ring.normalize(&parse_polynomial(s, self.ring.base())?))
    }

    /// `Ann H_k(I)` as the annihilator of the cohomology `H^(n−k)`.
    fn homology_annihilator(&self, k: usize) -> Result<IdealHandle> {
        cohomology_annihilator_direct(&self.gens, &self.ring, self.gens.len() - k)
    }

    fn verdicts_hold(&self, vs: &[ElementVerdict], target: &IdealHandle) -> Result<bool> {
        for v in vs {
            if !verify_verdict(&self.poly(&v.element)?, target, &v.verdict)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Projective dimension of `M` as the last `t` with `Tor_t(M, k) ≠ 0`.
    fn projective_dimension(&self, m: &ModulePresentation) -> Result<usize> {
        let mut pd = 0;
        for t in 1..=self.ring.nvars() {
            if !tor_by_resolving_quotient(m, &self.m, t)?.0.is_zero()? {
                pd = t;
            }
        }
        Ok(pd)
    }
}

/// Whether `Sym₂(I) → I²` is injective: every relation among the products
/// `fᵢfⱼ` must come from a syzygy of the generators times some `eⱼ`.
fn syzygetic_by_symmetric_square(gens: &[Polynomial], ring: &Ring) -> Result<bool> {
    let n = gens.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let slot = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).expect("pair listed");
    let products: Vec<ModuleElement> = pairs.iter().map(|&(i, j)| ModuleElement::from_poly(&gens[i].mul(&gens[j]))).collect();
    let kernel = kernel_generators(&products, 1, ring)?;
    let cols: Vec<ModuleElement> = gens.iter().map(ModuleElement::from_poly).collect();
    let base = ring.base();
    let mut induced = Vec::new();
    for z in kernel_generators(&cols, 1, ring)? {
        let z = z.to_polys(base);
        for j in 0..n {
            let mut entries = vec![Polynomial::zero(base); pairs.len()];
            for (i, zi) in z.iter().enumerate() {
                entries[slot(i, j)] = entries[slot(i, j)].add(zi);
            }
            induced.push(ModuleElement::from_polys(&entries, crate::groebner::ModuleOrder::of(base)));
        }
    }
    Ok(GroebnerBasis::compute(ring, pairs.len(), &induced)?.contains_all(&kernel))
}

fn closure_status(s: ClosureStatus) -> Status {
    match s {
        ClosureStatus::Member => Status::Verified,
        ClosureStatus::NonMember => Status::Refuted,
        ClosureStatus::Inconclusive => Status::Inconclusive,
    }
}

/// Whether the certificate of `o` supports its status. Errors mean the
/// certificate could not be evaluated, for example a malformed polynomial.
pub fn verify_certificate(o: &Outcome) -> Result<bool> {
    if let Certificate::Aborted { .. } = o.certificate {
        return Ok(o.status == Status::Inconclusive);
    }
    let ring = o.instance.build_ring()?;
    let gens = o.instance.generators(&ring)?;
    let i = IdealHandle::new(&ring, &gens)?;
    let m = IdealHandle::maximal(&ring);
    let cx = Ctx { ring, gens, i, m };
    let i = &cx.i;
    let st = o.status;
    let ok = match (&o.check, &o.certificate) {
        (CheckId::C1, Certificate::AnnihilatorEquality { annihilator, equal }) => {
            let a = cx.homology_annihilator(1)?;
            let want = if a.is_unit() {
                Status::HypothesisNotMet
            } else if *equal {
                Status::Verified
            } else {
                Status::Refuted
            };
            a.equals(&cx.ideal(annihilator)?) && a.equals(i) == *equal && st == want
        }
        (CheckId::C2, Certificate::SocleClosure { h1_vanishes, candidates, colon_checks }) => {
            let a = cx.homology_annihilator(1)?;
            if *h1_vanishes {
                return Ok(a.is_unit() && st == Status::HypothesisNotMet);
            }
            let socle = colon_via_elimination(i, &cx.m)?;
            let both = intersection_via_syzygies(&a, &socle)?;
            let listed: Vec<Polynomial> = candidates.iter().map(|c| cx.poly(&c.element)).collect::<Result<_>>()?;
            let covered = sum(i, &IdealHandle::new(&cx.ring, &listed)?)?.contains_ideal(&both);
            let inside = listed.iter().all(|c| both.contains(c));
            let mi = product(&cx.m, i)?;
            let mut colons_ok = true;
            let mut checked = Vec::new();
            for c in colon_checks {
                let p = cx.poly(&c.element)?;
                let principal = IdealHandle::principal(&cx.ring, &p)?;
                let equal = colon_via_elimination(i, &principal)?.equals(&colon_via_elimination(&mi, &principal)?);
                colons_ok &= equal == c.equal && a.contains(&p);
                checked.push(p);
            }
            let colon_cover = sum(i, &IdealHandle::new(&cx.ring, &checked)?)?.contains_ideal(&a);
            let want = if colon_checks.iter().any(|c| !c.equal) {
                Status::Refuted
            } else {
                closure_status(aggregate(candidates))
            };
            !a.is_unit() && covered && inside && colons_ok && colon_cover && cx.verdicts_hold(candidates, i)? && st == want
        }
        (CheckId::C3, Certificate::ContentColon { annihilator, content, colon, syzygetic, contained, equal }) => {
            let a = cx.homology_annihilator(1)?;
            let c = cx.ideal(content)?;
            let (_, fresh) = presentation_and_content(&cx.gens, &cx.ring)?;
            let q = colon_via_elimination(i, &c)?;
            let is_contained = q.contains_ideal(&a);
            let is_equal = is_contained && a.contains_ideal(&q);
            let syz = syzygetic_by_symmetric_square(&cx.gens, &cx.ring)?;
            let want = if !is_contained || (syz && !is_equal) { Status::Refuted } else { Status::Verified };
            fresh.equals(&c)
                && a.equals(&cx.ideal(annihilator)?)
                && q.equals(&cx.ideal(colon)?)
                && is_contained == *contained
                && is_equal == *equal
                && syz == *syzygetic
                && st == want
        }
        (CheckId::C4, Certificate::ColonPower { colon, projective_dimension, power, contained }) => {
            let (_, c) = presentation_and_content(&cx.gens, &cx.ring)?;
            let q = colon_via_elimination(i, &c)?;
            let pd = cx.projective_dimension(&ModulePresentation::cyclic(i)?)?.saturating_sub(1);
            let inside = i.contains_ideal(&ideal_power(&q, *power)?);
            q.equals(&cx.ideal(colon)?)
                && pd == *projective_dimension
                && *power as usize == pd + 1
                && inside == *contained
                && st == if inside { Status::Verified } else { Status::Refuted }
        }
        (CheckId::C5, Certificate::HomologyAnnihilators { entries }) => {
            let mut ok = entries.len() + 1 == cx.gens.len() && entries.iter().enumerate().all(|(k, e)| e.index == k + 1);
            let mut refuted = false;
            for e in entries {
                let a = cx.homology_annihilator(e.index)?;
                ok &= a.is_unit() == e.vanishing && a.equals(&cx.ideal(&e.annihilator)?);
                refuted |= !e.vanishing && !a.equals(i);
            }
            ok && st == if refuted { Status::Refuted } else { Status::Verified }
        }
        (CheckId::C6, Certificate::SocleKillsHomology { socle, killing }) => {
            let a = cx.homology_annihilator(1)?;
            let s = colon_via_elimination(i, &cx.m)?;
            let listed = cx.ideal(socle)?;
            let gens = listed.canonical_generators();
            let kills: Vec<bool> = gens.iter().map(|g| a.contains(g)).collect();
            s.equals(&listed)
                && kills == *killing
                && st == if kills.iter().all(|&k| k) { Status::Verified } else { Status::Refuted }
        }
        (CheckId::C7, Certificate::PfaffianClosure { annihilator, products, a, b, fractional }) => {
            let ann = cx.homology_annihilator(1)?;
            let listed = cx.ideal(annihilator)?;
            let prods: Vec<Polynomial> = products.iter().map(|v| cx.poly(&v.element)).collect::<Result<_>>()?;
            let square_covered = IdealHandle::new(&cx.ring, &prods)?.contains_ideal(&ideal_power(&ann, 2)?);
            let ia = ideal_power(i, *a)?;
            let mut frac_ok = fractional.len() == listed.canonical_generators().len();
            for v in fractional {
                let c = cx.poly(&v.element)?;
                frac_ok &= ann.contains(&c) && verify_verdict(&c.pow(*b), &ia, &v.verdict)?;
            }
            let gens_cover = {
                let fs: Vec<Polynomial> = fractional.iter().map(|v| cx.poly(&v.element)).collect::<Result<_>>()?;
                IdealHandle::new(&cx.ring, &fs)?.contains_ideal(&ann)
            };
            let n = cx.gens.len() as u32;
            ann.equals(&listed)
                && square_covered
                && prods.iter().all(|p| ideal_power(&ann, 2).map(|s| s.contains(p)).unwrap_or(false))
                && frac_ok
                && gens_cover
                && *b == (n - 1) / 2
                && *a + 1 == *b
                && cx.verdicts_hold(products, i)?
                && st == closure_status(aggregate(products.iter().chain(fractional)))
        }
        (CheckId::C8, Certificate::DoubleColon { regular_sequence, double_colon, annihilator, equal, verdicts }) => {
            let g = cx.ring.nvars();
            let j = cx.ideal(regular_sequence)?;
            let regular = regular_sequence.len() == g && i.contains_ideal(&j) && dimension_and_height(&j)?.1 == g;
            let l = colon_via_elimination(&j, &colon_via_elimination(&j, i)?)?;
            let a = cx.homology_annihilator(cx.gens.len() - g)?;
            let is_equal = a.equals(&l);
            let vs: Vec<Polynomial> = verdicts.iter().map(|v| cx.poly(&v.element)).collect::<Result<_>>()?;
            let want = if !is_equal { Status::Refuted } else { closure_status(aggregate(verdicts)) };
            regular
                && l.equals(&cx.ideal(double_colon)?)
                && a.equals(&cx.ideal(annihilator)?)
                && is_equal == *equal
                && IdealHandle::new(&cx.ring, &vs)?.equals(&l)
                && cx.verdicts_hold(verdicts, i)?
                && st == want
        }
        (CheckId::C9, Certificate::BurchSocle { steps }) => {
            let pres = o.instance.presentation(&cx.ring)?;
            let p = &o.instance.params;
            steps.iter().map(|s| s.t).eq(p.t_min..=p.t_max)
                && burch_steps_hold(&cx, &pres, steps)?
                && st == burch_status(steps)
        }
        (CheckId::C10, Certificate::TorVanishing { projective_dimension, entries }) => {
            let pres = o.instance.presentation(&cx.ring)?;
            let pd = cx.projective_dimension(&pres)?;
            let p = &o.instance.params;
            let mut ok = pd == *projective_dimension && entries.iter().map(|e| e.t).eq(p.t_min..=p.t_max);
            for e in entries {
                let vanishes = tor_by_resolving_quotient(&pres, i, e.t)?.0.is_zero()?;
                ok &= vanishes == e.tor_vanishes && e.pd_below_t == (pd < e.t);
            }
            let consistent = entries.iter().all(|e| e.tor_vanishes == e.pd_below_t);
            ok && st == if consistent { Status::Verified } else { Status::Refuted }
        }
        (CheckId::C11, Certificate::ConditionalContainment { target, hypothesis, verdicts, contained }) => {
            let j = o.instance.other_ideal(&cx.ring)?;
            let inner = colon_via_elimination(&product(i, &j)?, &intersection_via_syzygies(i, &j)?)?;
            let k = product(&cx.m, &inner)?;
            let listed: Vec<Polynomial> = verdicts.iter().map(|v| cx.poly(&v.element)).collect::<Result<_>>()?;
            let covers = IdealHandle::new(&cx.ring, &listed)?.equals(&j);
            let agg = aggregate(verdicts);
            let (want, want_contained) = match agg {
                ClosureStatus::Member => {
                    let c = i.contains_ideal(&j);
                    (if c { Status::Verified } else { Status::Refuted }, Some(c))
                }
                ClosureStatus::NonMember => (Status::HypothesisNotMet, None),
                ClosureStatus::Inconclusive => (Status::Inconclusive, None),
            };
            k.equals(&cx.ideal(target)?)
                && k.equals(&colon_target(i, &j)?)
                && covers
                && agg == *hypothesis
                && cx.verdicts_hold(verdicts, &k)?
                && *contained == want_contained
                && st == want
        }
        (CheckId::C12, Certificate::EntryEscapes { steps }) => {
            let res = minimal_resolution(&ModulePresentation::cyclic(i)?, o.instance.params.max_length)?;
            let target = product(&cx.m, i)?;
            let top = res.computed_length().min(o.instance.params.max_length);
            let mut ok = !steps.is_empty() && steps.iter().map(|s| s.t).eq(1..=top);
            let mut all_found = true;
            for s in steps {
                let entries = distinct_entries(&res, &cx.ring, s.t)?;
                match &s.witness {
                    Some(w) => {
                        let e = cx.poly(&w.element)?;
                        ok &= w.verdict.status == ClosureStatus::NonMember
                            && entries.iter().position(|x| *x == e).map(|k| k + 1) == Some(s.entries_checked)
                            && verify_verdict(&e, &target, &w.verdict)?;
                    }
                    None => {
                        ok &= s.entries_checked == entries.len();
                        all_found = false;
                    }
                }
            }
            ok && (st == Status::Verified) == all_found && st != Status::HypothesisNotMet
        }
        (
            CheckId::C13,
            Certificate::Faithfulness {
                perfect,
                almost_complete_intersection,
                content,
                content_is_complete_intersection,
                square_colon,
                faithful,
            },
        ) => {
            let class = classify(i)?;
            let c = cx.ideal(content)?;
            let (_, fresh) = presentation_and_content(&cx.gens, &cx.ring)?;
            let ci = !c.is_unit() && dimension_and_height(&c)?.1 == c.mu()?;
            let sq = colon_via_elimination(&ideal_power(i, 2)?, i)?;
            let is_faithful = sq.equals(i);
            let met = class.perfect && class.almost_complete_intersection && ci;
            let want = match (met, is_faithful) {
                (false, _) => Status::HypothesisNotMet,
                (true, true) => Status::Verified,
                (true, false) => Status::Refuted,
            };
            class.perfect == *perfect
                && class.almost_complete_intersection == *almost_complete_intersection
                && fresh.equals(&c)
                && ci == *content_is_complete_intersection
                && sq.equals(&cx.ideal(square_colon)?)
                && is_faithful == *faithful
                && st == want
        }
        (CheckId::C14, Certificate::ProductClosure { factors, power, verdicts }) => {
            let r = cx.gens.len().saturating_sub(cx.ring.nvars());
            if r == 0 {
                return Ok(*power == 0 && factors.is_empty() && st == Status::Verified);
            }
            let mut ok = *power == r && factors.len() == r;
            let mut prod = IdealHandle::unit(&cx.ring);
            for (t, f) in factors.iter().enumerate() {
                let a = cx.homology_annihilator(t + 1)?;
                ok &= a.equals(&cx.ideal(f)?);
                prod = product(&prod, &a)?;
            }
            let listed: Vec<Polynomial> = verdicts.iter().map(|v| cx.poly(&v.element)).collect::<Result<_>>()?;
            let target = ideal_power(i, r as u32)?;
            ok && IdealHandle::new(&cx.ring, &listed)?.equals(&prod)
                && cx.verdicts_hold(verdicts, &target)?
                && st == closure_status(aggregate(verdicts))
        }
        (CheckId::C14, Certificate::GeneralColons { steps }) => {
            let n = cx.gens.len();
            let d = cx.ring.nvars();
            let mut ok = steps.len() == n.saturating_sub(d);
            for s in steps {
                let j = cx.ideal(&s.elements)?;
                let l = colon_via_elimination(&j, &colon_via_elimination(&j, i)?)?;
                let a = cx.homology_annihilator(n - s.j)?;
                let vs: Vec<Polynomial> = s.verdicts.iter().map(|v| cx.poly(&v.element)).collect::<Result<_>>()?;
                ok &= s.elements.len() == s.j
                    && i.contains_ideal(&j)
                    && l.equals(&cx.ideal(&s.double_colon)?)
                    && a.equals(&cx.ideal(&s.annihilator)?)
                    && l.contains_ideal(&a) == s.contained
                    && IdealHandle::new(&cx.ring, &vs)?.equals(&l)
                    && cx.verdicts_hold(&s.verdicts, i)?;
            }
            let want = if steps.iter().any(|s| !s.contained) {
                Status::Refuted
            } else {
                closure_status(aggregate(steps.iter().flat_map(|s| &s.verdicts)))
            };
            ok && st == want
        }
        _ => false,
    };
    Ok(ok)
}

fn burch_steps_hold(cx: &Ctx, pres: &ModulePresentation, steps: &[BurchStep]) -> Result<bool> {
    use crate::resolutions::{ideal_times_free_in_image, image_in_ideal_multiple, socle_image_intersection};
    let t_max = steps.iter().map(|s| s.t).max().unwrap_or(0);
    let res = minimal_resolution(pres, t_max + 1)?;
    for s in steps {
        let (tor, _) = tor_by_resolving_quotient(pres, &cx.i, s.t)?;
        let jt = if tor.cycles().is_empty() || tor.is_zero()? { IdealHandle::unit(&cx.ring) } else { tor.annihilator()? };
        if !jt.equals(&cx.ideal(&s.annihilator)?) {
            return Ok(false);
        }
        let mj = product(&cx.m, &jt)?;
        let entries = distinct_entries(&res, &cx.ring, s.t)?;
        let listed: Vec<Polynomial> = s.entries.iter().map(|v| cx.poly(&v.element)).collect::<Result<_>>()?;
        if listed.len() != entries.len() || !entries.iter().all(|e| listed.contains(e)) {
            return Ok(false);
        }
        if !cx.verdicts_hold(&s.entries, &mj)? || aggregate(&s.entries) != s.hypothesis {
            return Ok(false);
        }
        if s.hypothesis == ClosureStatus::Member {
            let meets = !socle_image_intersection(&res, &cx.i, s.t)?.is_empty();
            if s.socle_meets_image != Some(meets)
                || s.image_in_ideal_multiple != Some(image_in_ideal_multiple(&res, &cx.i, s.t)?)
                || s.annihilator_in_image != Some(ideal_times_free_in_image(&res, &jt, s.t)?)
            {
                return Ok(false);
            }
        } else if s.socle_meets_image.is_some() || s.image_in_ideal_multiple.is_some() || s.annihilator_in_image.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verifies every outcome and returns the indices that fail.
pub fn failing_certificates(outcomes: &[Outcome]) -> Vec<usize> {
    outcomes
        .iter()
        .enumerate()
        .filter(|(_, o)| !matches!(verify_certificate(o), Ok(true)))
        .map(|(k, _)| k)
        .collect()
}
