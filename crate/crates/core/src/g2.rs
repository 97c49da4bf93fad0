//! The explicit Bruhat chains for `G_2`, replayed instance by instance.
//!
//! Index 0 is the short simple root `beta`, index 1 the long simple root `alpha`.
//! Every chain `top >= ... >= z w~ s_gamma z^{-1}` is checked with `bruhat_leq`,
//! each stated equality literally, and `top in Adm(lambda)`.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::admissible::{self, AdmOracle};
use crate::affine::{self, Elem};
use crate::cartan::Family;
use crate::coweight;
use crate::root_datum::{Coweight, Int, RootDatum, RootId};
use crate::sigma::{self, ShortDatum};
use crate::subset::Subset;
use crate::weyl::{self, Weyl};

/// `a alpha + b beta`.
fn root(d: &RootDatum, a: Int, b: Int) -> RootId {
    d.root_index(&[b, a]).expect("G2 root")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rel {
    Geq,
    Eq,
}

/// `elems[0] rel[0] elems[1] rel[1] ...`
#[derive(Clone, Debug)]
pub struct Chain {
    pub case: String,
    pub elems: Vec<Elem>,
    pub rels: Vec<Rel>,
}

impl Chain {
    fn start(case: &str, top: Elem) -> Chain {
        Chain { case: case.to_string(), elems: vec![top], rels: vec![] }
    }

    fn geq(mut self, x: Elem) -> Chain {
        self.elems.push(x);
        self.rels.push(Rel::Geq);
        self
    }

    fn eq(mut self, x: Elem) -> Chain {
        self.elems.push(x);
        self.rels.push(Rel::Eq);
        self
    }

    pub fn top(&self) -> &Elem {
        &self.elems[0]
    }

    pub fn bottom(&self) -> &Elem {
        self.elems.last().unwrap()
    }

    /// Indices of the links that fail.
    pub fn failing_links(&self, d: &RootDatum) -> Vec<usize> {
        (0..self.rels.len())
            .filter(|&i| {
                let (x, y) = (&self.elems[i], &self.elems[i + 1]);
                match self.rels[i] {
                    Rel::Geq => !affine::bruhat_leq(d, y, x),
                    Rel::Eq => x != y,
                }
            })
            .collect()
    }
}

struct Ctx<'a> {
    d: &'a RootDatum,
    z: &'a Weyl,
    mu: &'a [Int],
}

impl Ctx<'_> {
    fn t(&self, v: &[Int]) -> Elem {
        Elem::translation(self.d, &self.z.act(self.d, v))
    }

    fn s(&self, a: RootId) -> Elem {
        let d = self.d;
        Elem::finite(d, d.reflection(d.abs(self.z.apply(a))).clone())
    }

    fn mu_plus(&self, roots: &[RootId]) -> Coweight {
        roots.iter().fold(self.mu.to_vec(), |v, &r| coweight::add(&v, self.d.coroot(r)))
    }

    fn m(&self) -> Elem {
        self.t(self.mu)
    }

    fn target(&self, sd: &ShortDatum, g: RootId) -> Elem {
        let d = self.d;
        let ze = Elem::finite(d, self.z.clone());
        ze.mul(d, &sd.wtilde).mul(d, &Elem::finite(d, d.reflection(g).clone())).mul(d, &ze.inverse(d))
    }
}

/// Premises the section states for `(lambda, sd, z)`; returns the failing ones.
pub fn premise_failures(d: &RootDatum, lambda: &[Int], sd: &ShortDatum, z: &Weyl) -> Vec<String> {
    let (a, b) = (d.simple(1), d.simple(0));
    let pos = |r: RootId| d.is_positive(z.apply(r));
    let pre = |v: &[Int]| coweight::preceq(d, v, lambda);
    let plus = |rs: &[RootId]| rs.iter().fold(sd.mu.clone(), |v, &r| coweight::add(&v, d.coroot(r)));
    let mut bad = Vec::new();
    let mut need = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };
    let order = |seq: &[RootId]| (0..seq.len()).all(|j| (j..seq.len()).all(|i| !pos(seq[j]) || pos(seq[i])));
    match sd.j.indices().as_slice() {
        [1] => {
            need(sd.wtilde == Elem::new(sd.mu.clone(), d.s(1).clone()), "w~ = t^mu s_alpha");
            need(!pos(b) && pos(a), "-z(beta), z(alpha) > 0");
            need(d.pair(&sd.mu, a) == 1 && d.pair(&sd.mu, b) >= 0, "<mu, alpha> = 1, <mu, beta> >= 0");
            need(pre(&plus(&[a, b])), "mu + alpha^vee + beta^vee <= lambda");
            need(order(&gammas(d)), "z(gamma_j) > 0 propagates up");
        }
        [0] => {
            need(sd.wtilde == Elem::new(sd.mu.clone(), d.s(0).clone()), "w~ = t^mu s_beta");
            need(pos(b) && !pos(a), "z(beta), -z(alpha) > 0");
            need(d.pair(&sd.mu, b) == 1 && d.pair(&sd.mu, root(d, 1, 1)) >= 0, "<mu, beta> = 1, <mu, alpha + beta> >= 0");
            need(pre(&plus(&[a])), "mu + alpha^vee <= lambda");
            need(order(&deltas(d)), "z(delta_j) > 0 propagates up");
        }
        [] => {
            need(sd.wtilde == Elem::translation(d, &sd.mu), "w~ = t^mu");
            need(coweight::is_dominant(d, &sd.mu), "mu dominant");
            need(pre(&plus(&[a])) && pre(&plus(&[a, b])), "mu + alpha^vee, mu + alpha^vee + beta^vee <= lambda");
        }
        _ => need(false, "J is a proper subset"),
    }
    bad
}

fn gammas(d: &RootDatum) -> Vec<RootId> {
    vec![root(d, 0, 1), root(d, 1, 3), root(d, 1, 2), root(d, 2, 3), root(d, 1, 1)]
}

fn deltas(d: &RootDatum) -> Vec<RootId> {
    vec![root(d, 1, 0), root(d, 1, 1), root(d, 2, 3), root(d, 1, 2), root(d, 1, 3)]
}

/// First `i` with `z(seq[i]) < 0` and `z(seq[i+1]) > 0` (the last index needs only the first).
fn case_index(d: &RootDatum, z: &Weyl, seq: &[RootId]) -> Option<usize> {
    let neg = |r: RootId| !d.is_positive(z.apply(r));
    (0..seq.len()).find(|&i| neg(seq[i]) && (i + 1 == seq.len() || !neg(seq[i + 1])))
}

/// The chain and reflection root for `(sd, z)`; `None` when `z` is trivial or no case applies.
pub fn chain_for(d: &RootDatum, sd: &ShortDatum, z: &Weyl) -> Option<(Chain, RootId)> {
    let c = Ctx { d, z, mu: &sd.mu };
    let a = d.simple(1);
    let b = d.simple(0);
    let [ab, a2b, a3b, a23b] = [root(d, 1, 1), root(d, 1, 2), root(d, 1, 3), root(d, 2, 3)];
    let m = c.m();
    let ms = |rs: &[RootId]| rs.iter().fold(m.clone(), |x, &r| x.mul(d, &c.s(r)));
    match sd.j.indices().as_slice() {
        [1] => {
            let i = case_index(d, z, &gammas(d))?;
            let g = gammas(d)[i];
            let top = c.t(&c.mu_plus(&[a, b]));
            let ch = Chain::start(&format!("C{}", i + 1), top.clone());
            let ch = match i {
                0 => ch
                    .geq(top.mul(d, &c.t(&coweight::scale(d.coroot(b), -1))).mul(d, &c.s(b)))
                    .eq(c.t(&c.mu_plus(&[a])).mul(d, &c.s(b))),
                1 => ch.geq(ms(&[a3b])),
                2 => ch.geq(ms(&[a3b])).geq(ms(&[a3b, a23b])).geq(ms(&[a3b, a23b, ab])).eq(ms(&[a2b])),
                3 => ch.geq(ms(&[a3b])).geq(ms(&[a3b, a])).eq(ms(&[a, a23b])),
                _ => ch.geq(ms(&[a3b])).geq(ms(&[a3b, a2b])).geq(ms(&[a3b, a2b, a])).eq(ms(&[ab])),
            };
            Some((ch.geq(c.target(sd, g)), g))
        }
        [0] => {
            let i = case_index(d, z, &deltas(d))?;
            let g = deltas(d)[i];
            let top = c.t(&c.mu_plus(&[a]));
            let ch = Chain::start(&format!("C{}'", i + 1), top).geq(ms(&[a]));
            let ch = match i {
                0 => ch,
                1 => ch.geq(ms(&[a, a23b])).eq(ms(&[b, ab])),
                // both products are -1; the right-hand factor is s_beta, not s_alpha
                2 => ch.geq(ms(&[a, a2b])).eq(ms(&[b, a23b])),
                3 => ch.geq(ms(&[a, a3b])).eq(ms(&[b, a2b])),
                _ => ch.geq(ms(&[a, b])).eq(ms(&[b, a3b])),
            };
            Some((ch.geq(c.target(sd, g)), g))
        }
        [] => {
            let neg = |r: RootId| !d.is_positive(z.apply(r));
            if neg(a) {
                // t^{z mu} s_{z alpha} = t^{z(mu + alpha^vee)} t^{-z alpha^vee} s_{z alpha}
                let top = c.t(&c.mu_plus(&[a]));
                let x = top.mul(d, &c.t(&coweight::scale(d.coroot(a), -1))).mul(d, &c.s(a));
                let ch = Chain::start("E1", top).geq(x).eq(ms(&[a])).eq(c.target(sd, a));
                Some((ch, a))
            } else if neg(b) && neg(a3b) {
                let top = c.t(&c.mu_plus(&[a, b]));
                let x = top.mul(d, &c.t(&coweight::scale(d.coroot(a3b), -1))).mul(d, &c.s(a3b));
                let ch = Chain::start("E2", top).geq(x).eq(ms(&[a3b])).eq(c.target(sd, a3b));
                Some((ch, a3b))
            } else if neg(b) {
                let top = c.t(&c.mu_plus(&[a, b]));
                let x2 = ms(&[b]).mul(d, &c.t(d.coroot(a))).mul(d, &c.s(a));
                let x1 = top.mul(d, &c.s(a3b));
                let ch = Chain::start("E3", top).geq(x1).geq(x2).geq(ms(&[b])).eq(c.target(sd, b));
                Some((ch, b))
            } else {
                None
            }
        }
        _ => None,
    }
    .map(|(ch, g)| (ch, d.abs(g)))
    .filter(|_| !z.is_identity())
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct G2Report {
    pub instances: usize,
    pub pairs: usize,
    /// Chains replayed per case label.
    pub cases: BTreeMap<String, usize>,
    pub links: usize,
    pub failures: Vec<String>,
    /// Targets whose membership in `Adm(lambda)` was re-decided by interval search.
    pub interval_checks: usize,
}

impl G2Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Largest `lambda` length whose `Adm(lambda)` is enumerated for the cross-check.
const INTERVAL_CAP: i64 = 40;

/// All HN-irreducible `(lambda, sd)` with `mu` in `[lo, hi]` and `lambda - mu` coefficients in `[0, cmax]`.
pub fn verify_g2(lo: Int, hi: Int, cmax: Int) -> G2Report {
    let d = RootDatum::adjoint(Family::G, 2);
    let d = &d;
    let mut rep = G2Report::default();
    let mut intervals: HashMap<Coweight, Option<HashSet<Elem>>> = HashMap::new();
    for (lambda, sd) in sigma::irreducible_instances(d, lo, hi, cmax) {
        rep.instances += 1;
        let adm = AdmOracle::new(d, &lambda).expect("dominant");
        let interval = intervals.entry(lambda.clone()).or_insert_with(|| {
            admissible::compute_adm_capped(d, &lambda, INTERVAL_CAP).ok().map(|a| a.elements.into_iter().collect())
        });
        for z in weyl::coset_reps(d, sd.j).into_iter().filter(|z| !z.is_identity()) {
            rep.pairs += 1;
            let tag = format!("lambda {lambda:?}, mu {:?}, J {:?}, z {:?}", sd.mu, sd.j.indices(), z.word(d));
            for p in premise_failures(d, &lambda, &sd, &z) {
                rep.failures.push(format!("{tag}: premise {p}"));
            }
            let Some((ch, g)) = chain_for(d, &sd, &z) else {
                rep.failures.push(format!("{tag}: no case applies"));
                continue;
            };
            *rep.cases.entry(ch.case.clone()).or_default() += 1;
            rep.links += ch.rels.len();
            for i in ch.failing_links(d) {
                rep.failures.push(format!("{tag}: {} link {i} fails", ch.case));
            }
            if !adm.contains(ch.top()) {
                rep.failures.push(format!("{tag}: {} top not admissible", ch.case));
            }
            if !z.mul(d.reflection(g)).is_min_coset_rep(d, sd.j) || z.mul(d.reflection(g)).length(d) >= z.length(d) {
                rep.failures.push(format!("{tag}: z s_gamma is not a shorter coset rep"));
            }
            let x = ch.bottom();
            if !adm.contains(x) {
                rep.failures.push(format!("{tag}: target not admissible"));
            }
            if let Some(iv) = interval.as_ref() {
                rep.interval_checks += 1;
                if !iv.contains(x) {
                    rep.failures.push(format!("{tag}: target missing from the enumerated Adm"));
                }
            }
        }
    }
    rep
}

/// `J` values occurring in a report's instances, as a sanity check on coverage.
pub fn covered_levis(rep: &G2Report) -> Vec<Subset> {
    let mut out: Vec<Subset> = rep
        .cases
        .keys()
        .map(|k| match (k.starts_with('E'), k.ends_with('\'')) {
            (true, _) => Subset::default(),
            (false, true) => Subset::single(0),
            (false, false) => Subset::single(1),
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_chain_holds() {
        let r = verify_g2(-1, 2, 2);
        assert!(r.ok(), "{:#?}", &r.failures[..r.failures.len().min(10)]);
        assert!(r.instances > 0 && r.interval_checks > 0);
        assert_eq!(covered_levis(&r).len(), 3);
    }

    #[test]
    fn all_thirteen_cases_occur() {
        let r = verify_g2(-1, 2, 2);
        let want = ["C1", "C2", "C3", "C4", "C5", "C1'", "C2'", "C3'", "C4'", "C5'", "E1", "E2", "E3"];
        for c in want {
            assert!(r.cases.contains_key(c), "{c} missing: {:?}", r.cases);
        }
    }

    #[test]
    fn orthogonal_long_short_pairs_give_minus_one() {
        let d = RootDatum::adjoint(Family::G, 2);
        let r = |a, b| d.reflection(root(&d, a, b)).clone();
        let minus_one = r(1, 0).mul(&r(1, 2));
        assert_eq!(minus_one, r(0, 1).mul(&r(2, 3)));
        assert_eq!(minus_one, r(1, 1).mul(&r(1, 3)));
        assert_ne!(minus_one, r(1, 0).mul(&r(2, 3)));
    }

    #[test]
    fn case_sequences_are_ordered() {
        let d = RootDatum::adjoint(Family::G, 2);
        let g = gammas(&d);
        assert_eq!(g[1], root(&d, 1, 3));
        assert!(d.norm(g[0]) < d.norm(g[3]));
        assert!(d.norm(d.simple(0)) < d.norm(d.simple(1)));
    }
}
