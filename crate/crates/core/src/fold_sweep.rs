//! Exhaustive checks of the folded lemmas over small configurations.
//!
//! A configuration is a folded short datum, an `iota`-fixed `1 != z` in
//! `(W_0')^{J'}` and, where needed, a dominant `lambda` making the pair
//! HN-irreducible.  Everything is evaluated in the ambient datum except
//! `Adm(lambda)`, which is taken in the folded group.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::admissible::AdmOracle;
use crate::affine::{self, Elem};
use crate::cartan::Family;
use crate::coweight;
use crate::error::{Error, Result};
use crate::folding::{in_span, wedge, FoldingDatum};
use crate::root_datum::{Coweight, Int, RootDatum, RootId};
use crate::sigma::{self, ShortDatum};
use crate::subset::Subset;
use crate::weyl::Weyl;

/// The data of a folded short element seen in the ambient datum.
pub struct Lifted {
    pub mu: Coweight,
    pub w: Weyl,
    pub wtilde: Elem,
    pub jp: Subset,
}

pub fn lift(fd: &FoldingDatum, sd: &ShortDatum) -> Lifted {
    Lifted {
        mu: fd.embed_coweight(&sd.mu),
        w: fd.embed_weyl(&sd.w),
        wtilde: fd.embed_elem(&sd.wtilde),
        jp: fd.j_prime(sd.j),
    }
}

/// The properties of `mu` the folded argument starts from.
pub fn premises_hold(fd: &FoldingDatum, l: &Lifted) -> bool {
    let d = &fd.ambient;
    fd.iota_vec(&l.mu) == l.mu
        && coweight::is_j_dominant(&l.mu, l.jp)
        && coweight::is_j_minuscule(d, &l.mu, l.jp)
        && coweight::is_weakly_dominant(d, &l.mu)
}

fn plus(d: &RootDatum, v: &[Int], simple: &[usize]) -> Coweight {
    simple.iter().fold(v.to_vec(), |acc, &i| coweight::add(&acc, d.coroot(i)))
}

fn pair_vec(d: &RootDatum, mu: &[Int], v: &[Int]) -> Int {
    v.iter().zip(mu).map(|(c, m)| c * m).sum::<Int>() + 0 * d.rank as Int
}

/// The simple root chosen for the case split, with its geodesic to `iota(alpha)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct O1Choice {
    pub alpha: usize,
    pub geodesic: Vec<usize>,
}

pub fn o1_choice(fd: &FoldingDatum, l: &Lifted, z: &Weyl) -> Option<O1Choice> {
    let d = &fd.ambient;
    let desc: Vec<usize> = (0..d.rank).filter(|&i| !d.is_positive(z.apply(i))).collect();
    let m = desc.iter().map(|&i| d.dynkin_dist(i, fd.iota[i])).min()?;
    let alpha = desc
        .iter()
        .copied()
        .filter(|&i| d.dynkin_dist(i, fd.iota[i]) == m)
        .min_by_key(|&i| (l.mu[i], i))?;
    Some(O1Choice { alpha, geodesic: d.geodesic(alpha, fd.iota[alpha]) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum O1Outcome {
    Case { case: u8 },
    Violation { reason: String },
}

/// Which of the four cases holds for `(lambda, sd, z)`.
pub fn o1_classify(fd: &FoldingDatum, sd: &ShortDatum, lambda: &[Int], z: &Weyl) -> Result<O1Outcome> {
    let d = &fd.ambient;
    let l = lift(fd, sd);
    let lam = fd.embed_coweight(lambda);
    let ch = o1_choice(fd, &l, z).ok_or_else(|| Error::Domain("z is trivial".into()))?;
    let (a, ia) = (ch.alpha, fd.iota[ch.alpha]);
    let g = &ch.geodesic;
    let interior = if g.len() > 2 { &g[1..g.len() - 1] } else { &[][..] };
    if interior.iter().any(|&i| !d.is_positive(z.apply(i))) {
        return Ok(O1Outcome::Violation { reason: "an interior geodesic root is a descent of z".into() });
    }
    let mu = &l.mu;
    let pre = |v: &Coweight| coweight::preceq(d, v, &lam);
    if a != ia {
        let inner: Int = interior.iter().map(|&i| mu[i]).sum();
        if inner >= 1 && pre(&plus(d, mu, &[a, ia])) || inner == 0 && pre(&plus(d, mu, g)) {
            return Ok(O1Outcome::Case { case: 1 });
        }
    } else if pre(&plus(d, mu, &[a])) {
        return Ok(O1Outcome::Case { case: 2 });
    }
    if d.is_type(Family::E) && a == 1 && mu[3] == -1 && pre(&plus(d, mu, &[1, 3])) {
        return Ok(O1Outcome::Case { case: 3 });
    }
    if d.is_type(Family::D) && a != ia && a >= d.rank - 2 && mu[a] >= 0 {
        let n = d.rank;
        // 0-based: fork n-2, n-1; the node next to it is n-3
        for dd in 3..=n - 2 {
            let low = n - dd - 1;
            let ok = mu[n - 3] == 1
                && mu[low] == -1
                && l.jp.contains(n - 3)
                && (low + 1..n - 3).all(|i| l.jp.contains(i) && mu[i] == 0);
            if ok {
                let mut s: Vec<usize> = vec![n - 2, n - 1];
                s.extend(low..=n - 3);
                if pre(&plus(d, mu, &s)) {
                    return Ok(O1Outcome::Case { case: 4 });
                }
            }
        }
    }
    Ok(O1Outcome::Violation { reason: format!("no case applies for alpha = {a}") })
}

/// Scan of the wedge lemma for one `iota`-stable `J'`; returns (checked, violations).
pub fn o2_scan(fd: &FoldingDatum, jp: Subset) -> (usize, Vec<String>) {
    let d = &fd.ambient;
    let is_root_or_zero = |v: &[Int]| v.iter().all(|&c| c == 0) || d.root_index(v).is_some_and(|r| d.is_positive(r));
    let mut checked = 0;
    let mut bad = Vec::new();
    for g in 0..d.npos() {
        let ig = fd.iota_root(g);
        if d.in_subsystem(g, jp) || !in_span(&coweight::sub(d.root(g), d.root(ig)), jp) {
            continue;
        }
        checked += 1;
        let xi = wedge(d.root(g), d.root(ig));
        if !is_root_or_zero(&xi) || !is_root_or_zero(&coweight::sub(d.root(g), &xi)) {
            bad.push(format!("wedge of root {g} and its image is not split"));
            continue;
        }
        if g == ig {
            continue;
        }
        for del in (0..d.nroots()).filter(|&x| d.in_subsystem(d.abs(x), jp)) {
            if d.cartan_int(del, g) == -1 && d.cartan_int(del, ig) == -1 {
                let p = pair_vec(d, d.coroot(del), &xi);
                if fd.iota_root(del) != del || p != -1 {
                    bad.push(format!("moreover clause fails for gamma {g}, delta {del}"));
                }
            }
        }
    }
    (checked, bad)
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct O3Tally {
    pub checked: usize,
    pub case1: usize,
    pub case2: usize,
    /// Nonempty fixed part but no maximal `gamma` with `gamma ^ iota(gamma)` maximal there.
    pub unselectable: usize,
    pub violations: Vec<String>,
    /// Every `gamma` picked by the first case, deduplicated.
    #[serde(skip)]
    pub selected: Vec<RootId>,
}

/// Selection lemma over a family of `phi` for one `(J', z)`.
pub fn o3_scan(fd: &FoldingDatum, jp: Subset, z: &Weyl) -> O3Tally {
    let d = &fd.ambient;
    let mut t = O3Tally::default();
    let mut phis: Vec<Vec<Int>> = Vec::new();
    for b in (0..d.npos()).filter(|&b| !d.in_subsystem(b, jp)) {
        let r = d.root(b).to_vec();
        phis.push(coweight::add(&r, &fd.iota_vec(&r)));
        phis.push(coweight::scale(&r, 2));
        phis.push(r);
    }
    phis.sort();
    phis.dedup();
    let coset_ok = |g: RootId| {
        let zs = z.mul(d.reflection(d.abs(g)));
        let zr = z.mul(&fd.r(g));
        zs.is_min_coset_rep(d, jp) && zr.is_min_coset_rep(d, jp)
    };
    for phi in phis {
        let (set, _) = match fd.a_phi(z, jp, &phi) {
            Ok(x) => x,
            Err(e) => {
                t.violations.push(format!("A_phi for {phi:?}: {e}"));
                continue;
            }
        };
        t.checked += 1;
        let fixed = fd.fixed_part(&set);
        if in_span(&coweight::sub(&phi, &fd.iota_vec(&phi)), jp) && fixed.is_empty() != set.is_empty() {
            t.violations.push(format!("fixed part of A_phi empty iff A_phi empty fails for {phi:?}"));
        }
        let maxes = coweight::max_j(d, &set, jp);
        if !fixed.is_empty() {
            t.case1 += 1;
            let fmax = coweight::max_j(d, &fixed, jp);
            let cands: Vec<RootId> = maxes
                .iter()
                .copied()
                .filter(|&g| d.root_index(&fd.wedge_roots(g, fd.iota_root(g))).is_some_and(|x| fmax.contains(&x)))
                .collect();
            if cands.is_empty() {
                t.unselectable += 1;
            }
            t.selected.extend(&cands);
            for g in cands {
                if !coset_ok(g) {
                    t.violations.push(format!("case (1) coset test fails for phi {phi:?}, gamma {g}"));
                }
            }
        }
        let sum = coweight::add(&phi, &fd.iota_vec(&phi));
        if !set.is_empty() && fd.a_phi(z, jp, &sum).map(|x| x.0.is_empty()).unwrap_or(false) {
            t.case2 += 1;
            for &g in &maxes {
                if !coset_ok(g) {
                    t.violations.push(format!("case (2) coset test fails for phi {phi:?}, gamma {g}"));
                }
            }
        }
    }
    t.selected.sort();
    t.selected.dedup();
    t
}

/// Support lemma: every `gamma in A_alpha` is `u(alpha)` for a fixed `u` off the fixed nodes.
pub fn o0_scan(fd: &FoldingDatum, jp: Subset, z: &Weyl) -> (usize, Vec<String>) {
    let d = &fd.ambient;
    let fixed = Subset::from_indices((0..d.rank).filter(|&i| fd.iota[i] == i));
    let mut checked = 0;
    let mut bad = Vec::new();
    for a in (0..d.rank).filter(|&a| fd.iota[a] != a && !jp.contains(a)) {
        let sum = coweight::add(d.root(a), d.root(fd.iota[a]));
        if !fd.a_phi(z, jp, &sum).map(|x| x.0.is_empty()).unwrap_or(false) {
            continue;
        }
        let (set, _) = fd.a_phi(z, jp, d.root(a)).expect("alpha is outside J'");
        for g in set {
            checked += 1;
            match fd.o0_decompose(z, jp, a, g) {
                Ok(u) => {
                    let letters_ok = u.word(d).iter().all(|&i| jp.contains(i) && !fixed.contains(i));
                    if u.apply(a) != g || !fd.is_fixed_weyl(&u) || !letters_ok {
                        bad.push(format!("decomposition for alpha {a}, gamma {g} is wrong"));
                    }
                }
                Err(e) => bad.push(format!("alpha {a}, gamma {g}: {e}")),
            }
        }
    }
    (checked, bad)
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ZetaTally {
    pub checked: usize,
    /// Cases where the ambient reading of clause (2) differs from the folded pairing.
    pub reading_mismatch: usize,
    pub violations: Vec<String>,
}

pub fn zeta_scan(fd: &FoldingDatum, sd: &ShortDatum, z: &Weyl) -> ZetaTally {
    let d = &fd.ambient;
    let l = lift(fd, sd);
    let mut t = ZetaTally::default();
    for zeta in (0..d.npos()).filter(|&x| !d.in_subsystem(x, l.jp)) {
        let zj = coweight::root_j_antidominant(d, zeta, l.jp);
        if fd.iota_root(zj) != zj || d.pair(&l.mu, zj) != -1 {
            continue;
        }
        let Ok((set, theta)) = fd.a_phi(z, l.jp, &coweight::scale(d.root(zeta), 2)) else { continue };
        let Some(theta) = theta else { continue };
        if set.is_empty() || d.pair(&l.mu, theta) < 0 {
            continue;
        }
        t.checked += 1;
        let wz = l.w.apply(zeta);
        let c1 = d.pair(&l.mu, zeta) == 0 && d.pair(&l.mu, wz) == 0;
        let iz = fd.iota_root(zeta);
        let c2 = if iz != zeta {
            let mut v = [d.cartan_int(zeta, wz), d.cartan_int(zeta, l.w.apply(iz))];
            v.sort();
            v == [-1, 0]
        } else {
            d.cartan_int(zeta, wz) == -1
        };
        let f = &fd.folded;
        let uz = fd.underline(zeta);
        let c2_folded = f.cartan_int(uz, sd.w.apply(uz)) == -1;
        if c2 != c2_folded {
            t.reading_mismatch += 1;
        }
        if c1 && c2 {
            t.violations.push(format!("mu {:?}, z {:?}, zeta {zeta}: both clauses hold", sd.mu, z.word(d)));
        }
    }
    t
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct O5Report {
    /// 0 when `gamma` is fixed, else the chain used.
    pub case: u8,
    pub chain: Vec<bool>,
    pub top_admissible: bool,
    pub target_admissible: bool,
}

impl O5Report {
    pub fn holds(&self) -> bool {
        self.chain.iter().all(|&b| b) && self.top_admissible && self.target_admissible
    }
}

/// The `lambda`-independent part of the check: the chain from `top` down to the target.
#[derive(Clone, Debug)]
pub struct O5Chain {
    pub gamma_j: RootId,
    pub case: u8,
    pub chain: Vec<bool>,
    /// `None` when `gamma` is fixed and no chain is needed.
    pub top: Option<Elem>,
    pub target: Elem,
}

pub fn o5_chain(fd: &FoldingDatum, sd: &ShortDatum, z: &Weyl, gamma: RootId) -> Result<O5Chain> {
    let d = &fd.ambient;
    let l = lift(fd, sd);
    let gj = coweight::root_j_antidominant(d, gamma, l.jp);
    let ze = Elem::finite(d, z.clone());
    let target = ze.mul(d, &l.wtilde).mul(d, &Elem::finite(d, fd.r(gamma))).mul(d, &ze.inverse(d));
    let ig = fd.iota_root(gamma);
    if ig == gamma {
        return Ok(O5Chain { gamma_j: gj, case: 0, chain: vec![], top: None, target });
    }
    let zeta = d.root_index(&fd.wedge_roots(gamma, ig)).ok_or(Error::Invalid("gamma ^ iota(gamma) is not a root".into()))?;
    let eps = d.sub(gamma, zeta).ok_or(Error::Invalid("gamma - zeta is not a root".into()))?;
    let ieps = fd.iota_root(eps);
    let big = d
        .root_index(&coweight::add(&coweight::add(d.root(zeta), d.root(eps)), d.root(ieps)))
        .ok_or(Error::Invalid("zeta + eps + iota(eps) is not a root".into()))?;
    // u in W_J with u(gamma_J') = zeta
    let u = {
        let gens: Vec<Weyl> = sd.j.iter().map(|o| fd.r(d.simple(fd.orbits[o][0]))).collect();
        let mut frontier = vec![(gj, Weyl::identity(d))];
        let mut seen = vec![gj];
        let mut found = None;
        while let Some((b, w)) = frontier.pop() {
            if b == zeta {
                found = Some(w);
                break;
            }
            for g in &gens {
                let c = g.apply(b);
                if !seen.contains(&c) {
                    seen.push(c);
                    frontier.push((c, g.mul(&w)));
                }
            }
        }
        found.ok_or(Error::Invalid("zeta is not W_J-conjugate to gamma_J'".into()))?
    };
    let umu = u.act(d, &l.mu);
    let p = |a: RootId| d.pair(&umu, a);
    let zumu = z.act(d, &umu);
    let t = |v: &[Int]| Elem::translation(d, v);
    let s = |a: RootId| Elem::finite(d, d.reflection(d.abs(z.apply(a))).clone());
    let top = t(&z.act(d, &coweight::add(&umu, d.coroot(zeta))));
    let leq = |x: &Elem, y: &Elem| affine::bruhat_leq(d, x, y);
    let (case, chain, top) = if p(big) >= 1 {
        let a2 = t(&zumu).mul(d, &s(zeta));
        let a3 = a2.mul(d, &s(big));
        let alt = t(&zumu).mul(d, &s(eps)).mul(d, &s(ieps)).mul(d, &s(gamma)).mul(d, &s(ig));
        (1, vec![leq(&a2, &top), leq(&a3, &a2), a3 == alt, leq(&target, &a3)], top)
    } else if p(zeta) + p(eps) == p(zeta) + p(ieps) && p(zeta) + p(eps) >= 0 {
        let a2 = t(&zumu).mul(d, &s(zeta));
        let b3 = a2.mul(d, &s(eps));
        let b4 = b3.mul(d, &s(ieps));
        let b5 = b4.mul(d, &s(zeta));
        let alt = t(&zumu).mul(d, &s(gamma)).mul(d, &s(ig));
        (2, vec![leq(&a2, &top), leq(&b3, &a2), leq(&b4, &b3), leq(&b5, &b4), b5 == alt, leq(&target, &b5)], top)
    } else if p(gamma) == -1 && p(eps) == 0 && p(ieps) == 0 {
        let c1 = t(&zumu);
        let c2 = c1.mul(d, &s(gamma)).mul(d, &s(ig));
        (3, vec![leq(&c2, &c1), leq(&target, &c2)], c1)
    } else {
        return Ok(O5Chain { gamma_j: gj, case: 4, chain: vec![false], top: Some(top), target });
    };
    Ok(O5Chain { gamma_j: gj, case, chain, top: Some(top), target })
}

/// The `lambda`-dependent part: `mu + gamma_J'^vee <= lambda` gates the check,
/// then the top of the chain must be admissible.  The target is decided directly
/// when `check_target` is set, else inferred from the chain.
pub fn o5_apply(fd: &FoldingDatum, sd: &ShortDatum, adm: &AdmOracle, c: &O5Chain, check_target: bool) -> Result<O5Report> {
    let d = &fd.ambient;
    let mu = fd.embed_coweight(&sd.mu);
    let lam = fd.embed_coweight(adm.lambda());
    if !coweight::preceq(d, &coweight::add(&mu, d.coroot(c.gamma_j)), &lam) {
        return Err(Error::Domain("mu + gamma_J'^vee is not below lambda".into()));
    }
    let in_adm = |x: &Elem| fd.project_elem(x).is_some_and(|y| adm.contains(&y));
    // a translation t^v lies in Adm(lambda) iff the dominant conjugate of v is below lambda
    let top_admissible = c.top.as_ref().is_none_or(|t| {
        t.w.is_identity()
            && fd.iota_vec(&t.mu) == t.mu
            && coweight::preceq(d, &t.mu, &lam)
            && d.pi1_class(&t.mu) == d.pi1_class(&lam)
    });
    let chain_ok = c.chain.iter().all(|&b| b);
    let target_admissible = if check_target || c.top.is_none() { in_adm(&c.target) } else { chain_ok && top_admissible };
    Ok(O5Report { case: c.case, chain: c.chain.clone(), top_admissible, target_admissible })
}

/// `z w~ r_gamma z^{-1} in Adm(lambda)`, replaying the chain of the applicable case.
pub fn o5_check(fd: &FoldingDatum, sd: &ShortDatum, adm: &AdmOracle, z: &Weyl, gamma: RootId) -> Result<O5Report> {
    let c = o5_chain(fd, sd, z, gamma)?;
    o5_apply(fd, sd, adm, &c, true)
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FoldSweepReport {
    pub ambient: String,
    pub folded: String,
    pub folded_cartan: Vec<Vec<Int>>,
    pub short_data: usize,
    pub premise_failures: usize,
    pub pairs: usize,
    pub instances: usize,
    pub o1_cases: [usize; 4],
    pub o1_violations: Vec<String>,
    pub o2_checked: usize,
    pub o2_violations: Vec<String>,
    pub o3: O3Tally,
    pub o0_checked: usize,
    pub o0_violations: Vec<String>,
    pub o5_cases: [usize; 4],
    pub o5_violations: Vec<String>,
    pub zeta: ZetaTally,
}

impl FoldSweepReport {
    pub fn violations(&self) -> usize {
        self.premise_failures
            + self.o1_violations.len()
            + self.o2_violations.len()
            + self.o3.violations.len()
            + self.o0_violations.len()
            + self.o5_violations.len()
            + self.zeta.violations.len()
    }

    pub fn ok(&self) -> bool {
        self.violations() == 0
    }

    fn absorb(&mut self, o: FoldSweepReport) {
        self.premise_failures += o.premise_failures;
        self.pairs += o.pairs;
        self.instances += o.instances;
        for k in 0..4 {
            self.o1_cases[k] += o.o1_cases[k];
            self.o5_cases[k] += o.o5_cases[k];
        }
        self.o1_violations.extend(o.o1_violations);
        self.o3.checked += o.o3.checked;
        self.o3.case1 += o.o3.case1;
        self.o3.case2 += o.o3.case2;
        self.o3.unselectable += o.o3.unselectable;
        self.o3.violations.extend(o.o3.violations);
        self.o0_checked += o.o0_checked;
        self.o0_violations.extend(o.o0_violations);
        self.o5_violations.extend(o.o5_violations);
        self.zeta.checked += o.zeta.checked;
        self.zeta.reading_mismatch += o.zeta.reading_mismatch;
        self.zeta.violations.extend(o.zeta.violations);
    }
}

/// All folded checks for short data with `mu` in `[lo, hi]` and `lambda - mu` coefficients in `[0, cmax]`.
pub fn sweep(fd: &FoldingDatum, lo: Int, hi: Int, cmax: Int) -> FoldSweepReport {
    let f = &fd.folded;
    let mut rep = FoldSweepReport {
        ambient: fd.ambient.label(),
        folded: fd.identified.clone().unwrap_or_else(|| f.label()),
        folded_cartan: fd.folded_cartan.clone(),
        ..Default::default()
    };
    for j in f.full().subsets() {
        let (c, v) = o2_scan(fd, fd.j_prime(j));
        rep.o2_checked += c;
        rep.o2_violations.extend(v);
    }
    let sds = sigma::short_data_in_box(f, lo, hi);
    rep.short_data = sds.len();
    // nontrivial iota-fixed coset representatives, per J'
    let reps: HashMap<Subset, Vec<Weyl>> = f
        .full()
        .subsets()
        .into_par_iter()
        .map(|j| {
            let jp = fd.j_prime(j);
            (jp, fd.folded_coset_reps(jp).expect("J' is iota-stable").into_iter().skip(1).collect())
        })
        .collect();
    let parts: Vec<FoldSweepReport> = sds.par_iter().map(|sd| sweep_one(fd, &reps, sd, cmax)).collect();
    for p in parts {
        rep.absorb(p);
    }
    rep
}

fn sweep_one(fd: &FoldingDatum, reps: &HashMap<Subset, Vec<Weyl>>, sd: &ShortDatum, cmax: Int) -> FoldSweepReport {
    let d = &fd.ambient;
    let f = &fd.folded;
    let mut rep = FoldSweepReport::default();
    let l = lift(fd, sd);
    if !premises_hold(fd, &l) {
        rep.premise_failures += 1;
        return rep;
    }
    let zs = &reps[&l.jp];
    let mut chains: Vec<Vec<(RootId, Result<O5Chain>)>> = Vec::new();
    for z in zs {
        rep.pairs += 1;
        let t = o3_scan(fd, l.jp, z);
        rep.o3.checked += t.checked;
        rep.o3.case1 += t.case1;
        rep.o3.case2 += t.case2;
        rep.o3.unselectable += t.unselectable;
        rep.o3.violations.extend(t.violations);
        chains.push(t.selected.iter().map(|&g| (g, o5_chain(fd, sd, z, g))).collect());
        let (c, v) = o0_scan(fd, l.jp, z);
        rep.o0_checked += c;
        rep.o0_violations.extend(v);
        let t = zeta_scan(fd, sd, z);
        rep.zeta.checked += t.checked;
        rep.zeta.reading_mismatch += t.reading_mismatch;
        rep.zeta.violations.extend(t.violations);
    }
    let mut target_checked = vec![vec![false; d.npos() * 2]; zs.len()];
    for c in sigma::boxes(f.rank, 0, cmax) {
        let lambda = coweight::add(&sd.mu, &f.from_coroot_coords(&c));
        if !coweight::is_dominant(f, &lambda) || sigma::hn_classify(f, &lambda, sd) != sigma::HnClass::Irreducible {
            continue;
        }
        let adm = AdmOracle::new(f, &lambda).expect("dominant");
        for (zi, z) in zs.iter().enumerate() {
            rep.instances += 1;
            match o1_classify(fd, sd, &lambda, z) {
                Ok(O1Outcome::Case { case }) => rep.o1_cases[case as usize - 1] += 1,
                Ok(O1Outcome::Violation { reason }) => {
                    rep.o1_violations.push(format!("lambda {lambda:?}, mu {:?}, z {:?}: {reason}", sd.mu, z.word(d)))
                }
                Err(e) => rep.o1_violations.push(e.to_string()),
            }
            for (g, ch) in &chains[zi] {
                let ch = match ch {
                    Ok(ch) => ch,
                    Err(e) => {
                        rep.o5_violations.push(format!("mu {:?}, z {:?}, gamma {g}: {e}", sd.mu, z.word(d)));
                        continue;
                    }
                };
                let first = !target_checked[zi][*g];
                match o5_apply(fd, sd, &adm, ch, first) {
                    Ok(r) => {
                        target_checked[zi][*g] = true;
                        rep.o5_cases[r.case as usize] += 1;
                        if !r.holds() {
                            rep.o5_violations.push(format!(
                                "lambda {lambda:?}, mu {:?}, z {:?}, gamma {g}: {r:?}",
                                sd.mu,
                                z.word(d)
                            ));
                        }
                    }
                    Err(Error::Domain(_)) => {}
                    Err(e) => rep.o5_violations.push(e.to_string()),
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_fold_sweep_is_clean() {
        let fd = FoldingDatum::new(Family::A, 3).unwrap();
        let r = sweep(&fd, -1, 1, 2);
        assert!(r.ok(), "{:?}", (&r.o1_violations, &r.o3.violations, &r.o5_violations, &r.zeta.violations));
        assert!(r.instances > 0 && r.o2_checked > 0 && r.o3.checked > 0);
    }
}
