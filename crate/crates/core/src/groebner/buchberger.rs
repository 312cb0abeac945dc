//! Buchberger's algorithm for submodules of free modules with sugar pair
//! selection and the Gebauer–Möller update.


use crate::deadline;
use crate::error::Result;
use crate::polyring::{Field, Monomial};

use super::element::{ModTerm, ModuleElement, ModuleOrder};

struct Entry {
    elem: ModuleElement,
    rep: Option<ModuleElement>,
    sugar: i64,
    active: bool,
}

impl Entry {
    fn lead(&self) -> &ModTerm {
        self.elem.leading().expect("basis elements are nonzero")
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    sugar: i64,
}

/// Output of a run: reduced basis sorted by descending leading term, and for
/// each element its coefficients in terms of the input generators when tracked.
pub(crate) struct RunOutput {
    pub basis: Vec<ModuleElement>,
    pub reps: Option<Vec<ModuleElement>>,
}

pub(crate) struct Engine {
    order: ModuleOrder,
    rank: usize,
    field: Field,
    nvars: usize,
    twists: Vec<i64>,
    track: Option<usize>,
    entries: Vec<Entry>,
    pairs: Vec<Pair>,
}

impl Engine {
    pub fn new(rank: usize, nvars: usize, field: Field, order: ModuleOrder) -> Self {
        Engine { order, rank, field, nvars, twists: vec![0; rank], track: None, entries: Vec::new(), pairs: Vec::new() }
    }

    pub fn run(mut self, gens: &[ModuleElement], track: bool) -> Result<RunOutput> {
        let s = gens.len();
        if track {
            self.track = Some(s);
        }
        let mut input: Vec<(ModuleElement, Option<ModuleElement>, i64)> = gens
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(k, g)| {
                let rep = track.then(|| ModuleElement::unit(s, k, self.nvars, self.field));
                let sugar = g.max_degree(&self.twists).unwrap_or(0);
                (g.clone(), rep, sugar)
            })
            .collect();
        // stable: ties keep input order
        input.sort_by(|a, b| {
            a.2.cmp(&b.2).then_with(|| {
                let (x, y) = (a.0.leading().unwrap(), b.0.leading().unwrap());
                self.order.cmp(x.comp, &x.mono, y.comp, &y.mono)
            })
        });
        for (g, rep, sugar) in input {
            deadline::checkpoint()?;
            let (h, rep, sugar) = self.top_reduce(g, rep, sugar);
            if !h.is_zero() {
                self.insert(h, rep, sugar);
            }
        }
        while let Some(p) = self.select() {
            deadline::checkpoint()?;
            let (h, rep, sugar) = self.s_element(&p);
            let (h, rep, sugar) = self.top_reduce(h, rep, sugar);
            if !h.is_zero() {
                self.insert(h, rep, sugar);
            }
        }
        Ok(self.finish())
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| order.cmp(a.comp, &a.lcm, b.comp, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_element(&self, p: &Pair) -> (ModuleElement, Option<ModuleElement>, i64) {
        let (a, b) = (&self.entries[p.i], &self.entries[p.j]);
        let ma = a.lead().mono.quotient_of(&p.lcm);
        let mb = b.lead().mono.quotient_of(&p.lcm);
        let one = self.field.one();
        let minus = one.neg();
        let h = a.elem.scale_term(&one, &ma).add_scaled(&b.elem, &minus, &mb, self.order);
        let rep = match (&a.rep, &b.rep) {
            (Some(ra), Some(rb)) => Some(ra.scale_term(&one, &ma).add_scaled(rb, &minus, &mb, self.order)),
            _ => None,
        };
        (h, rep, p.sugar)
    }

    fn find_divisor(&self, t: &ModTerm) -> Option<usize> {
        self.entries.iter().position(|e| e.active && e.lead().comp == t.comp && e.lead().mono.divides(&t.mono))
    }

    fn top_reduce(
        &self,
        mut h: ModuleElement,
        mut rep: Option<ModuleElement>,
        mut sugar: i64,
    ) -> (ModuleElement, Option<ModuleElement>, i64) {
        while let Some(t) = h.leading() {
            let Some(k) = self.find_divisor(t) else { break };
            let e = &self.entries[k];
            let q = e.lead().mono.quotient_of(&t.mono);
            let c = t.coef.div(&e.lead().coef).neg();
            sugar = sugar.max(e.sugar + q.degree() as i64);
            h = h.add_scaled(&e.elem, &c, &q, self.order);
            if let (Some(r), Some(er)) = (rep.as_mut(), e.rep.as_ref()) {
                *r = r.add_scaled(er, &c, &q, self.order);
            }
        }
        (h, rep, sugar)
    }

    fn insert(&mut self, h: ModuleElement, rep: Option<ModuleElement>, sugar: i64) {
        let lc_inv = h.leading().unwrap().coef.inv().expect("nonzero");
        let unit = Monomial::one(self.nvars);
        let h = h.scale_term(&lc_inv, &unit);
        let rep = rep.map(|r| r.scale_term(&lc_inv, &unit));
        let n = self.entries.len();
        let ht = h.leading().unwrap().clone();

        // Old pairs whose lcm is divisible by the new leading term.
        let entries = &self.entries;
        self.pairs.retain(|p| {
            if p.comp != ht.comp || !ht.mono.divides(&p.lcm) {
                return true;
            }
            let li = entries[p.i].lead().mono.lcm(&ht.mono);
            let lj = entries[p.j].lead().mono.lcm(&ht.mono);
            li == p.lcm || lj == p.lcm
        });

        let product_criterion = self.rank == 1;
        let mut fresh: Vec<(usize, Monomial, bool)> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active && e.lead().comp == ht.comp)
            .map(|(i, e)| {
                let lm = &e.lead().mono;
                (i, lm.lcm(&ht.mono), product_criterion && lm.is_coprime(&ht.mono))
            })
            .collect();

        // Drop pairs whose lcm is a proper multiple of another new lcm.
        let lcms: Vec<Monomial> = fresh.iter().map(|f| f.1.clone()).collect();
        fresh.retain(|(_, l, _)| !lcms.iter().any(|o| o != l && o.divides(l)));
        // Equal lcms: keep one, or none if any of them satisfies the product criterion.
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (i, l, coprime) in fresh {
            match kept.iter_mut().find(|k| k.1 == l) {
                Some(k) => k.2 |= coprime,
                None => kept.push((i, l, coprime)),
            }
        }
        for (i, l, coprime) in kept {
            if coprime {
                continue;
            }
            let e = &self.entries[i];
            let s = (e.sugar + e.lead().mono.quotient_of(&l).degree() as i64)
                .max(sugar + ht.mono.quotient_of(&l).degree() as i64);
            self.pairs.push(Pair { i, j: n, lcm: l, comp: ht.comp, sugar: s });
        }

        for e in self.entries.iter_mut() {
            if e.active && e.lead().comp == ht.comp && ht.mono.divides(&e.lead().mono) {
                e.active = false;
            }
        }
        self.entries.push(Entry { elem: h, rep, sugar, active: true });
    }

    fn finish(self) -> RunOutput {
        let order = self.order;
        let mut active: Vec<Entry> = self.entries.into_iter().filter(|e| e.active).collect();
        active.sort_by(|a, b| {
            let (x, y) = (a.lead(), b.lead());
            order.cmp(y.comp, &y.mono, x.comp, &x.mono)
        });
        let tracked = self.track.is_some();
        let leads: Vec<(ModuleElement, Option<ModuleElement>)> =
            active.iter().map(|e| (e.elem.clone(), e.rep.clone())).collect();
        let mut basis = Vec::with_capacity(active.len());
        let mut reps = Vec::with_capacity(active.len());
        for (k, e) in active.into_iter().enumerate() {
            let mut h = e.elem;
            let lead = h.pop_lead().unwrap();
            let others: Vec<(&ModuleElement, Option<&ModuleElement>)> = leads
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, (g, r))| (g, r.as_ref()))
                .collect();
            let (tail, rep) = reduce_full(h, e.rep, &others, order);
            let mut terms = vec![lead];
            terms.extend_from_slice(tail.terms());
            basis.push(ModuleElement::from_sorted(tail.rank(), terms));
            if let Some(r) = rep {
                reps.push(r);
            }
        }
        RunOutput { basis, reps: tracked.then_some(reps) }
    }
}

/// Full reduction of `v` by `divisors`, updating the tracked representation.
pub(crate) fn reduce_full(
    mut v: ModuleElement,
    mut rep: Option<ModuleElement>,
    divisors: &[(&ModuleElement, Option<&ModuleElement>)],
    order: ModuleOrder,
) -> (ModuleElement, Option<ModuleElement>) {
    let mut rem: Vec<ModTerm> = Vec::new();
    while let Some(t) = v.leading() {
        let hit = divisors.iter().find(|(g, _)| {
            let l = g.leading().unwrap();
            l.comp == t.comp && l.mono.divides(&t.mono)
        });
        match hit {
            Some((g, gr)) => {
                let l = g.leading().unwrap();
                let q = l.mono.quotient_of(&t.mono);
                let c = t.coef.div(&l.coef).neg();
                v = v.add_scaled(g, &c, &q, order);
                if let (Some(r), Some(gr)) = (rep.as_mut(), gr) {
                    *r = r.add_scaled(gr, &c, &q, order);
                }
            }
            None => rem.push(v.pop_lead().unwrap()),
        }
    }
    (ModuleElement::from_sorted(v.rank(), rem), rep)
}

/// Division with quotients: `v = Σ q_j g_j + r`, returning `(q, r)` with `q` in
/// a free module of rank `basis.len()`.
pub(crate) fn divide(mut v: ModuleElement, basis: &[ModuleElement], order: ModuleOrder) -> (ModuleElement, ModuleElement) {
    let rank = v.rank();
    let mut quot: Vec<ModTerm> = Vec::new();
    let mut rem: Vec<ModTerm> = Vec::new();
    while let Some(t) = v.leading() {
        let hit = basis.iter().enumerate().find(|(_, g)| {
            let l = g.leading().unwrap();
            l.comp == t.comp && l.mono.divides(&t.mono)
        });
        match hit {
            Some((j, g)) => {
                let l = g.leading().unwrap();
                let q = l.mono.quotient_of(&t.mono);
                let c = t.coef.div(&l.coef);
                v = v.add_scaled(g, &c.neg(), &q, order);
                quot.push(ModTerm { comp: j, mono: q, coef: c });
            }
            None => rem.push(v.pop_lead().unwrap()),
        }
    }
    (ModuleElement::from_terms(basis.len(), quot, order), ModuleElement::from_sorted(rank, rem))
}
