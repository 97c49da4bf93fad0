//! Sweeps of the structural lemmas over generated instances. Every checker
//! returns how many instances satisfied the hypotheses and which of them
//! failed the conclusion.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::admissible::AdmOracle;
use crate::affine::{self, Elem, Levi};
use crate::appendix;
use crate::cartan::Family;
use crate::connectivity::root_orbit;
use crate::coweight::{self, ChaseMode};
use crate::root_datum::{Coweight, Int, RootDatum, RootId};
use crate::sigma::{self, ShortDatum};
use crate::subset::Subset;
use crate::weyl;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub instances: usize,
    pub violations: Vec<String>,
}

impl Tally {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn absorb(&mut self, o: Tally) {
        self.instances += o.instances;
        self.violations.extend(o.violations);
    }

    fn check(&mut self, holds: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !holds {
            self.violations.push(what());
        }
    }
}

fn merge(ts: impl IntoIterator<Item = Tally>) -> Tally {
    let mut t = Tally::default();
    for x in ts {
        t.absorb(x);
    }
    t
}

/// Adjoint data for the listed families.
pub fn data(families: &[(Family, usize)]) -> Vec<RootDatum> {
    families.iter().map(|&(f, n)| RootDatum::adjoint(f, n)).collect()
}

pub const SMALL: [(Family, usize); 10] = [
    (Family::A, 1),
    (Family::A, 2),
    (Family::A, 3),
    (Family::B, 2),
    (Family::C, 2),
    (Family::G, 2),
    (Family::B, 3),
    (Family::C, 3),
    (Family::A, 4),
    (Family::D, 4),
];

pub const SIMPLY_LACED: [(Family, usize); 10] = [
    (Family::A, 1),
    (Family::A, 2),
    (Family::A, 3),
    (Family::A, 4),
    (Family::A, 5),
    (Family::A, 6),
    (Family::D, 4),
    (Family::D, 5),
    (Family::D, 6),
    (Family::E, 6),
];

/// HN-irreducible pairs used by the short-datum sweeps: `mu` in `[-1, 1]`,
/// `lambda - mu` with coefficients in `[0, cmax]`, both isogenies.
pub fn instances(d: &RootDatum, cmax: Int) -> Vec<(Coweight, ShortDatum)> {
    sigma::irreducible_instances(d, -1, 1, cmax)
}

fn both_isogenies(families: &[(Family, usize)]) -> Vec<RootDatum> {
    let mut out = Vec::new();
    for &(f, n) in families {
        out.push(RootDatum::adjoint(f, n));
        let sc = RootDatum::simply_connected(f, n);
        if sc.pi1_factors() != out.last().unwrap().pi1_factors() {
            out.push(sc);
        }
    }
    out
}

// ---------------------------------------------------------------- compare

/// Conjugating a Levi Bruhat relation `x <=_M y` by minimal coset
/// representatives `z, z'` preserves Bruhat order in `W~`.
pub fn compare(d: &RootDatum, j: Subset, len_xy: usize, len_z: usize, cap: usize) -> Tally {
    let levi = Levi::new(d, j);
    let ball = affine::ball(d, len_xy);
    let inside: Vec<&Elem> = ball.iter().filter(|x| levi.contains(d, x)).collect();
    let reps: Vec<Elem> = affine::ball(d, len_z).into_iter().filter(|z| levi.is_min_right_coset(d, z)).take(cap).collect();
    let mut pairs = Vec::new();
    for x in &inside {
        for y in &inside {
            if x != y && levi.bruhat_leq(d, x, y) {
                pairs.push((*x, *y));
            }
        }
    }
    pairs.truncate(cap);
    let inv: Vec<Elem> = reps.iter().map(|z| z.inverse(d)).collect();
    let mut t = Tally::default();
    for (x, y) in &pairs {
        for (z, zi) in reps.iter().zip(&inv) {
            for zp in &reps {
                let a = zp.mul(d, x).mul(d, zi);
                let b = zp.mul(d, y).mul(d, zi);
                t.check(affine::bruhat_leq(d, &a, &b), || format!("{} J={:?} x={:?} y={:?} z={:?} z'={:?}", d.label(), j.indices(), x, y, z, zp));
            }
        }
    }
    t
}

pub fn compare_suite() -> Tally {
    let cases: Vec<(RootDatum, Subset)> = vec![
        (RootDatum::adjoint(Family::A, 2), Subset::single(0)),
        (RootDatum::adjoint(Family::C, 2), Subset::single(0)),
        (RootDatum::adjoint(Family::C, 2), Subset::single(1)),
        (RootDatum::adjoint(Family::G, 2), Subset::single(0)),
        (RootDatum::adjoint(Family::G, 2), Subset::single(1)),
        (RootDatum::adjoint(Family::A, 3), Subset::from_indices([0, 2])),
        (RootDatum::adjoint(Family::A, 3), Subset::from_indices([0, 1])),
        (RootDatum::simply_connected(Family::B, 3), Subset::from_indices([1, 2])),
    ];
    merge(cases.par_iter().map(|(d, j)| compare(d, *j, 3, 2, 12)).collect::<Vec<_>>())
}

// ---------------------------------------------------------------- f2 / f4

/// Length-zero elements of the Levi `M_J` of the form `t^mu w`, `mu` in a box.
pub fn omega_j(d: &RootDatum, j: Subset, lo: Int, hi: Int) -> Vec<Elem> {
    let levi = Levi::new(d, j);
    let ws = weyl::parabolic_elements(d, j);
    let mut out = Vec::new();
    for mu in sigma::boxes(d.rank, lo, hi) {
        if !d.in_lattice(&mu) {
            continue;
        }
        for w in &ws {
            let x = Elem::new(mu.clone(), w.clone());
            if levi.length(d, &x) == 0 {
                out.push(x);
            }
        }
    }
    out
}

struct Oracles<'a> {
    d: &'a RootDatum,
    cache: HashMap<Coweight, AdmOracle<'a>>,
}

impl<'a> Oracles<'a> {
    fn new(d: &'a RootDatum) -> Self {
        Oracles { d, cache: HashMap::new() }
    }

    /// `x in Adm(dom(chi))`.
    fn contains(&mut self, chi: &[Int], x: &Elem) -> bool {
        let dom = coweight::dominant_rep(self.d, chi).0;
        let d = self.d;
        self.cache.entry(dom).or_insert_with_key(|k| AdmOracle::new(d, k).expect("dominant lattice coweight")).contains(x)
    }
}

/// Both memberships for `w~ in Omega_J`, `z, s_a z in W^J` and every `u in W_J`.
pub fn f2(d: &RootDatum, j: Subset) -> Tally {
    let mut t = Tally::default();
    let mut adm = Oracles::new(d);
    let reps = weyl::coset_reps(d, j);
    let us = weyl::parabolic_elements(d, j);
    for x in omega_j(d, j, -1, 1) {
        let mu = &x.mu;
        for z in &reps {
            let zi = z.inverse();
            let zx = Elem::finite(d, z.clone()).mul(d, &x).mul(d, &Elem::finite(d, zi.clone()));
            for a in 0..d.npos() {
                let sa = d.reflection(a);
                if !sa.mul(z).is_min_coset_rep(d, j) {
                    continue;
                }
                let sa_e = Elem::finite(d, sa.clone());
                let left = zx.mul(d, &sa_e);
                let right = sa_e.mul(d, &zx);
                let zc = zi.act(d, d.coroot(a));
                for u in &us {
                    let v = u.act_inv(d, &zc);
                    let ok1 = adm.contains(&coweight::sub(mu, &v), &left) || adm.contains(mu, &left);
                    let ok2 = adm.contains(&coweight::add(mu, &v), &right) || adm.contains(mu, &right);
                    t.check(ok1 && ok2, || format!("{} J={:?} x={:?} z={:?} a={a} u={:?} ({ok1},{ok2})", d.label(), j.indices(), x, z.word(d), u.word(d)));
                }
            }
        }
    }
    t
}

pub fn f2_suite() -> Tally {
    let mut jobs = Vec::new();
    for &(f, n) in &[(Family::A, 1), (Family::A, 2), (Family::C, 2), (Family::G, 2), (Family::A, 3), (Family::B, 3)] {
        let d = RootDatum::adjoint(f, n);
        for j in d.full().subsets() {
            if j != d.full() {
                jobs.push((f, n, j));
            }
        }
    }
    merge(jobs.par_iter().map(|&(f, n, j)| f2(&RootDatum::adjoint(f, n), j)).collect::<Vec<_>>())
}

/// Both directions of the coset-reflection admissibility statement and its
/// sufficient condition `mu + gamma_J^vee <= lambda`.
pub fn f4(d: &RootDatum, lambda: &[Int], sd: &ShortDatum) -> Tally {
    let mut t = Tally::default();
    let Ok(adm) = AdmOracle::new(d, lambda) else { return t };
    let j = sd.j;
    for z in weyl::coset_reps(d, j) {
        let ze = Elem::finite(d, z.clone());
        let zi = Elem::finite(d, z.inverse());
        for g in 0..d.npos() {
            if d.in_subsystem(g, j) {
                continue;
            }
            let zs = z.mul(d.reflection(g));
            if !zs.is_min_coset_rep(d, j) {
                continue;
            }
            let sg = affine::finite_reflection(d, g);
            let right = ze.mul(d, &sd.wtilde).mul(d, &sg).mul(d, &zi);
            let left = ze.mul(d, &sg).mul(d, &sd.wtilde).mul(d, &zi);
            let (a_r, a_l) = (adm.contains(&right), adm.contains(&left));
            let down = !d.is_positive(z.apply(g));
            let (given, other) = if down { (a_r, a_l) } else { (a_l, a_r) };
            let gj = coweight::root_j_antidominant(d, g, j);
            let suff = coweight::preceq(d, &coweight::add(&sd.mu, d.coroot(gj)), lambda);
            t.check((!given || other) && (!suff || given), || {
                format!("{} lambda={lambda:?} mu={:?} J={:?} z={:?} g={g} adm(zws)={a_r} adm(zsw)={a_l} suff={suff}", d.label(), sd.mu, j.indices(), z.word(d))
            });
        }
    }
    t
}

fn instance_sweep<F>(datums: &[RootDatum], cmax: Int, f: F) -> Tally
where
    F: Fn(&RootDatum, &[Int], &ShortDatum) -> Tally + Sync,
{
    merge(
        datums
            .iter()
            .map(|d| merge(instances(d, cmax).par_iter().map(|(l, sd)| f(d, l, sd)).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

pub fn f4_suite() -> Tally {
    instance_sweep(&both_isogenies(&SMALL[..8]), 2, f4)
}

// ---------------------------------------------------------------- f3 / f5

/// `W_J`-orbits on `Phi^+ - Phi_J`.
pub fn orbits(d: &RootDatum, j: Subset) -> Vec<Vec<RootId>> {
    let mut seen = vec![false; d.npos()];
    let mut out = Vec::new();
    for a in 0..d.npos() {
        if seen[a] || d.in_subsystem(a, j) {
            continue;
        }
        let o = root_orbit(d, a, j);
        for &b in &o {
            seen[b] = true;
        }
        out.push(o);
    }
    out
}

/// For `W_J`-stable `D` (unions of at most `max_union` orbits, or all unions
/// when there are few orbits) and every `z in W^J`: each `J`-maximal element
/// of `D cap z^-1(Phi^-)` gives a minimal coset representative `z s_b`.
pub fn f3(d: &RootDatum, j: Subset, max_union: usize) -> Tally {
    let orb = orbits(d, j);
    let m = orb.len();
    let unions: Vec<Vec<RootId>> = (1u64..1 << m.min(20))
        .filter(|mask| m <= 6 || (mask.count_ones() as usize) <= max_union)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).flat_map(|i| orb[i].iter().copied()).collect())
        .collect();
    let mut t = Tally::default();
    for z in weyl::coset_reps(d, j) {
        for dset in &unions {
            let neg: Vec<RootId> = dset.iter().copied().filter(|&b| !d.is_positive(z.apply(b))).collect();
            if neg.is_empty() {
                continue;
            }
            for b in coweight::max_j(d, &neg, j) {
                let zs = z.mul(d.reflection(b));
                t.check(zs.is_min_coset_rep(d, j), || format!("{} J={:?} z={:?} beta={b}", d.label(), j.indices(), z.word(d)));
            }
        }
    }
    t
}

pub fn f3_suite() -> Tally {
    let mut jobs = Vec::new();
    for &(f, n) in &[(Family::A, 2), (Family::A, 3), (Family::A, 4), (Family::D, 4), (Family::D, 5)] {
        let d = RootDatum::adjoint(f, n);
        for j in d.full().subsets() {
            if j != d.full() {
                jobs.push((f, n, j));
            }
        }
    }
    merge(jobs.par_iter().map(|&(f, n, j)| f3(&RootDatum::adjoint(f, n), j, 2)).collect::<Vec<_>>())
}

/// Roots of `Phi^+ - Phi_J` agreeing outside `J` are `W_J`-conjugate.
pub fn f5(d: &RootDatum, j: Subset) -> Tally {
    let mut t = Tally::default();
    let out: Vec<RootId> = (0..d.npos()).filter(|&a| !d.in_subsystem(a, j)).collect();
    for (k, &a) in out.iter().enumerate() {
        let orbit = root_orbit(d, a, j);
        for &b in &out[k + 1..] {
            let same = (0..d.rank).all(|i| j.contains(i) || d.root(a)[i] == d.root(b)[i]);
            if same {
                t.check(orbit.contains(&b), || format!("{} J={:?} {a} {b}", d.label(), j.indices()));
            }
        }
    }
    t
}

pub fn f5_suite() -> Tally {
    let ds = data(&SIMPLY_LACED);
    merge(ds.iter().map(|d| merge(d.full().subsets().par_iter().map(|&j| f5(d, j)).collect::<Vec<_>>())).collect::<Vec<_>>())
}

// ---------------------------------------------------------------- ind

/// The four chase statements on coweights in `[lo, hi]^n`, with `lambda`
/// ranging over dominant coweights in `[0, 2]^n`.
pub fn ind(d: &RootDatum, lo: Int, hi: Int) -> [Tally; 4] {
    let mut t: [Tally; 4] = Default::default();
    let lambdas: Vec<Coweight> = sigma::boxes(d.rank, 0, 2).into_iter().filter(|l| d.in_lattice(l)).collect();
    let chis: Vec<Coweight> = sigma::boxes(d.rank, lo, hi).into_iter().filter(|c| d.in_lattice(c)).collect();
    for chi in &chis {
        let wd = coweight::is_weakly_dominant(d, chi);
        for i in 0..d.rank {
            if let Some(next) = coweight::chase_step(d, chi, i, ChaseMode::Plus) {
                for l in &lambdas {
                    if coweight::leq(d, chi, l) {
                        t[0].check(coweight::leq(d, &next, l), || format!("{} chi={chi:?} +{i} lambda={l:?}", d.label()));
                    }
                }
            }
            if wd {
                if let Some(next) = coweight::chase_step(d, chi, i, ChaseMode::Minus) {
                    t[3].check(coweight::is_weakly_dominant(d, &next), || format!("{} chi={chi:?} -{i}", d.label()));
                }
            }
        }
        if strict_chase_hits_dominant(d, chi, 4 * d.rank + 4) {
            t[1].check(wd, || format!("{} chi={chi:?}", d.label()));
        }
        if wd {
            for l in &lambdas {
                if coweight::leq(d, chi, l) {
                    t[2].check(coweight::preceq(d, chi, l), || format!("{} chi={chi:?} lambda={l:?}", d.label()));
                }
            }
        }
    }
    t
}

fn strict_chase_hits_dominant(d: &RootDatum, chi: &[Int], bound: usize) -> bool {
    let mut frontier = vec![chi.to_vec()];
    let mut seen = std::collections::HashSet::new();
    for _ in 0..=bound {
        let mut next = Vec::new();
        for c in frontier {
            if coweight::is_dominant(d, &c) {
                return true;
            }
            if !seen.insert(c.clone()) {
                continue;
            }
            next.extend((0..d.rank).filter_map(|i| coweight::chase_step(d, &c, i, ChaseMode::PlusStrict)));
        }
        frontier = next;
    }
    false
}

pub fn ind_suite() -> [Tally; 4] {
    let ds = data(&SMALL);
    let parts: Vec<[Tally; 4]> = ds.par_iter().map(|d| ind(d, -2, 2)).collect();
    let mut out: [Tally; 4] = Default::default();
    for p in parts {
        for (o, x) in out.iter_mut().zip(p) {
            o.absorb(x);
        }
    }
    out
}

// ---------------------------------------------------------------- elementary

/// With a trivalent node, a positive root whose coefficient there is at most
/// one is elementary.
pub fn elementary(d: &RootDatum) -> Tally {
    let mut t = Tally::default();
    let Some(node) = (0..d.rank).find(|&i| d.dynkin_neighbors(i).len() == 3) else { return t };
    for a in 0..d.npos() {
        if d.root(a)[node] <= 1 {
            t.check(coweight::is_elementary(d, a), || format!("{} root {:?}", d.label(), d.root(a)));
        }
    }
    t
}

pub fn elementary_suite() -> Tally {
    let fams = [(Family::D, 4), (Family::D, 5), (Family::D, 6), (Family::E, 6), (Family::E, 7), (Family::E, 8)];
    merge(data(&fams).iter().map(elementary).collect::<Vec<_>>())
}

// ---------------------------------------------------------------- short-datum lemmas

/// `mu + a^vee <= lambda` for simple `a` outside `J`.
pub fn add_simple(d: &RootDatum, lambda: &[Int], sd: &ShortDatum) -> Tally {
    let mut t = Tally::default();
    for a in d.full().minus(sd.j).iter() {
        let v = coweight::add(&sd.mu, d.coroot(a));
        t.check(coweight::leq(d, &v, lambda), || format!("{} lambda={lambda:?} mu={:?} a={a}", d.label(), sd.mu));
    }
    t
}

/// `<mu, g> >= 1` for `J`-dominant `g` in `Phi^+ - Phi_{J_nu}`.
pub fn positive(d: &RootDatum, sd: &ShortDatum) -> Tally {
    let mut t = Tally::default();
    for g in 0..d.npos() {
        if d.in_subsystem(g, sd.j_nu) || !coweight::is_root_j_dominant(d, g, sd.j) {
            continue;
        }
        t.check(d.pair(&sd.mu, g) >= 1, || format!("{} mu={:?} J_nu={:?} g={g}", d.label(), sd.mu, sd.j_nu.indices()));
    }
    t
}

/// `<mu, g_J> = <mu, g> = 0` implies `g <=_J w^-1(g)`.
pub fn shrink(d: &RootDatum, sd: &ShortDatum) -> Tally {
    let mut t = Tally::default();
    for g in 0..d.npos() {
        if d.in_subsystem(g, sd.j) {
            continue;
        }
        let gj = coweight::root_j_antidominant(d, g, sd.j);
        if d.pair(&sd.mu, g) != 0 || d.pair(&sd.mu, gj) != 0 {
            continue;
        }
        let img = sd.w.apply_inv(g);
        t.check(coweight::root_leq_in(d, g, img, sd.j), || format!("{} mu={:?} J={:?} g={g}", d.label(), sd.mu, sd.j.indices()));
    }
    t
}

pub fn teq(d: &RootDatum, lambda: &[Int], sd: &ShortDatum) -> Tally {
    let mut t = Tally::default();
    for a in sigma::c_set(d, lambda, sd) {
        let r = sigma::teq_elements(d, lambda, sd, a);
        let holds = r.as_ref().map(|r| r.holds()).unwrap_or(false);
        t.check(holds, || format!("{} lambda={lambda:?} mu={:?} a={a} {:?}", d.label(), sd.mu, r));
    }
    t
}

pub fn span(d: &RootDatum, lambda: &[Int], sd: &ShortDatum) -> Tally {
    let mut t = Tally::default();
    t.check(sigma::span_check(d, lambda, sd), || format!("{} lambda={lambda:?} mu={:?} J={:?}", d.label(), sd.mu, sd.j.indices()));
    t
}

/// Both clauses of the `<mu, a'> = -1` bound for every eligible `a'`.
pub fn plus(d: &RootDatum, sd: &ShortDatum) -> Tally {
    let mut t = Tally::default();
    for a in d.full().minus(sd.j).iter() {
        if sd.mu[a] != -1 {
            continue;
        }
        let r = appendix::verify_plus(d, sd, a);
        let holds = r.as_ref().map(|r| r.holds()).unwrap_or(false);
        t.check(holds, || format!("{} mu={:?} J={:?} a'={a} {:?}", d.label(), sd.mu, sd.j.indices(), r));
    }
    t
}

fn short_sweep<F>(datums: &[RootDatum], f: F) -> Tally
where
    F: Fn(&RootDatum, &ShortDatum) -> Tally + Sync,
{
    merge(
        datums
            .iter()
            .map(|d| merge(sigma::short_data_in_box(d, -1, 1).par_iter().map(|sd| f(d, sd)).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

pub fn add_simple_suite() -> Tally {
    instance_sweep(&both_isogenies(&SMALL), 2, add_simple)
}

pub fn positive_suite() -> Tally {
    short_sweep(&both_isogenies(&SMALL), positive)
}

pub fn shrink_suite() -> Tally {
    short_sweep(&both_isogenies(&SMALL), shrink)
}

pub fn teq_suite() -> Tally {
    instance_sweep(&both_isogenies(&SMALL[..8]), 2, teq)
}

pub fn span_suite() -> Tally {
    instance_sweep(&both_isogenies(&SMALL), 2, span)
}

/// The bound clause holds in every type; the geodesic clause is checked in types A and D.
pub fn plus_suite() -> Tally {
    let mut fams = SIMPLY_LACED.to_vec();
    fams.extend([(Family::B, 3), (Family::C, 3), (Family::G, 2)]);
    short_sweep(&data(&fams), plus)
}

// ---------------------------------------------------------------- criterion / plus-simple

/// Coweights in `[lo, hi]^n` satisfying the weak-dominance criterion's hypotheses.
pub fn criterion(d: &RootDatum, lo: Int, hi: Int) -> Tally {
    let mut t = Tally::default();
    for chi in sigma::boxes(d.rank, lo, hi) {
        if appendix::criterion_applies(d, &chi) == Some(true) {
            t.check(coweight::is_weakly_dominant(d, &chi), || format!("{} chi={chi:?}", d.label()));
        }
    }
    t
}

pub fn criterion_suite() -> Tally {
    let fams = [
        (Family::A, 2),
        (Family::A, 3),
        (Family::A, 4),
        (Family::A, 5),
        (Family::A, 6),
        (Family::D, 4),
        (Family::D, 5),
        (Family::D, 6),
    ];
    merge(data(&fams).par_iter().map(|d| criterion(d, -2, 2)).collect::<Vec<_>>())
}

/// (c) propagates from `chi` to `chi + a^vee` under the separation hypothesis.
pub fn plus_simple(d: &RootDatum, lo: Int, hi: Int) -> Tally {
    let mut t = Tally::default();
    for chi in sigma::boxes(d.rank, lo, hi) {
        for a in 0..d.rank {
            if appendix::plus_simple_applies(d, &chi, a) {
                t.check(!appendix::plus_simple_violated(d, &chi, a), || format!("{} chi={chi:?} a={a}", d.label()));
            }
        }
    }
    t
}

pub fn plus_simple_suite() -> Tally {
    merge(data(&SIMPLY_LACED).par_iter().map(|d| plus_simple(d, -1, 2)).collect::<Vec<_>>())
}

/// Every suite by name, in a fixed order.
pub fn all_suites() -> Vec<(&'static str, Tally)> {
    let [i1, i2, i3, i4] = ind_suite();
    vec![
        ("compare", compare_suite()),
        ("f2", f2_suite()),
        ("f3", f3_suite()),
        ("f4", f4_suite()),
        ("f5", f5_suite()),
        ("ind(1)", i1),
        ("ind(2)", i2),
        ("ind(3)", i3),
        ("ind(4)", i4),
        ("elementary", elementary_suite()),
        ("add-simple", add_simple_suite()),
        ("positive", positive_suite()),
        ("shrink", shrink_suite()),
        ("teq", teq_suite()),
        ("span", span_suite()),
        ("criterion", criterion_suite()),
        ("plus", plus_suite()),
        ("plus-simple", plus_simple_suite()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f5_in_a3_is_clean() {
        let d = RootDatum::adjoint(Family::A, 3);
        let t = merge(d.full().subsets().into_iter().map(|j| f5(&d, j)));
        assert!(t.ok() && t.instances > 0);
    }

    #[test]
    fn elementary_d4() {
        let t = elementary(&RootDatum::adjoint(Family::D, 4));
        // every positive root of D4 except the highest has centre coefficient <= 1
        assert_eq!(t.instances, 11);
        assert!(t.ok());
    }

    #[test]
    fn ind_a2_is_clean() {
        for t in ind(&RootDatum::adjoint(Family::A, 2), -2, 2) {
            assert!(t.ok(), "{:?}", t.violations);
            assert!(t.instances > 0);
        }
    }
}
