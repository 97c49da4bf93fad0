//! Admissible sets `Adm(lambda) = { x : x <= t^{u(lambda)} for some u in W_0 }`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Mutex;

use crate::affine::{self, Elem};
use crate::coweight::{self, RationalCoweight};
use crate::error::{Error, Result};
use crate::root_datum::{Coweight, Int, RootDatum};

/// Default cap on `l(t^lambda)` for full enumeration.
pub const DEFAULT_LENGTH_CAP: i64 = 30;

/// The `W_0`-orbit of a coweight, sorted.
pub fn orbit(d: &RootDatum, v: &[Int]) -> Vec<Coweight> {
    let mut seen: HashSet<Coweight> = HashSet::from([v.to_vec()]);
    let mut out = vec![v.to_vec()];
    let mut i = 0;
    while i < out.len() {
        for k in 0..d.rank {
            let y = d.s(k).act(d, &out[i]);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

/// Size of the `W_0`-orbit of `v`, or `None` if it exceeds `cap`.
pub fn orbit_size(d: &RootDatum, v: &[Int], cap: usize) -> Option<usize> {
    let mut seen: HashSet<Coweight> = HashSet::from([v.to_vec()]);
    let mut queue = vec![v.to_vec()];
    while let Some(x) = queue.pop() {
        for k in 0..d.rank {
            let y = d.s(k).act(d, &x);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push(y);
            }
        }
    }
    Some(seen.len())
}

/// `l(t^lambda) = <lambda, 2 rho>` for dominant `lambda`.
pub fn translation_length(d: &RootDatum, lambda: &[Int]) -> Int {
    (0..d.npos()).map(|a| d.pair(lambda, a)).sum()
}

#[derive(Clone, Debug)]
pub struct AdmissibleSet {
    pub lambda: Coweight,
    pub elements: Vec<Elem>,
    /// Indices into `elements` of the straight elements.
    pub straight: Vec<usize>,
}

fn check_dominant(d: &RootDatum, lambda: &[Int]) -> Result<()> {
    d.check_lattice(lambda)?;
    if !coweight::is_dominant(d, lambda) {
        return Err(Error::NotDominant);
    }
    Ok(())
}

pub fn compute_adm(d: &RootDatum, lambda: &[Int]) -> Result<AdmissibleSet> {
    compute_adm_capped(d, lambda, DEFAULT_LENGTH_CAP)
}

pub fn compute_adm_capped(d: &RootDatum, lambda: &[Int], cap: i64) -> Result<AdmissibleSet> {
    check_dominant(d, lambda)?;
    let l = translation_length(d, lambda);
    if l > cap {
        return Err(Error::TooLarge { length: l, cap });
    }
    let tops: Vec<Elem> = orbit(d, lambda).iter().map(|m| Elem::translation(d, m)).collect();
    let elements = affine::lower_interval(d, &tops, 50_000_000)?;
    let straight = (0..elements.len()).filter(|&i| elements[i].is_straight(d)).collect();
    Ok(AdmissibleSet { lambda: lambda.to_vec(), elements, straight })
}

/// Straight elements grouped by `(eta, dominant Newton point)`.
pub fn straight_elements(d: &RootDatum, adm: &AdmissibleSet) -> BTreeMap<(Vec<Int>, RationalCoweight), Vec<Elem>> {
    let mut out: BTreeMap<(Vec<Int>, RationalCoweight), Vec<Elem>> = BTreeMap::new();
    for &i in &adm.straight {
        let x = &adm.elements[i];
        out.entry((x.kottwitz(d), x.newton_dominant(d))).or_default().push(x.clone());
    }
    out
}

/// Membership oracle for `Adm(lambda)` without enumeration, with a result cache.
pub struct AdmOracle<'a> {
    d: &'a RootDatum,
    lambda: Coweight,
    tops: Vec<Coweight>,
    top_len: usize,
    eta: Vec<Int>,
    cache: Mutex<HashMap<Elem, bool>>,
}

impl<'a> AdmOracle<'a> {
    pub fn new(d: &'a RootDatum, lambda: &[Int]) -> Result<AdmOracle<'a>> {
        check_dominant(d, lambda)?;
        Ok(AdmOracle {
            d,
            lambda: lambda.to_vec(),
            tops: orbit(d, lambda),
            top_len: translation_length(d, lambda) as usize,
            eta: d.pi1_class(lambda),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn lambda(&self) -> &[Int] {
        &self.lambda
    }

    pub fn contains(&self, x: &Elem) -> bool {
        if let Some(&r) = self.cache.lock().unwrap().get(x) {
            return r;
        }
        let r = self.decide(x);
        self.cache.lock().unwrap().insert(x.clone(), r);
        r
    }

    fn decide(&self, x: &Elem) -> bool {
        let d = self.d;
        if x.kottwitz(d) != self.eta || x.length(d) > self.top_len || !coweight::preceq(d, &x.mu, &self.lambda) {
            return false;
        }
        // try the orbit points nearest to the translation part first
        let mut tops: Vec<(Int, &Coweight)> = self
            .tops
            .iter()
            .map(|t| (t.iter().zip(&x.mu).map(|(a, b)| (a - b).abs()).sum(), t))
            .collect();
        tops.sort();
        tops.iter().any(|(_, t)| affine::bruhat_leq(d, x, &Elem::translation(d, t)))
    }
}

/// One-shot membership test.
pub fn adm_contains(d: &RootDatum, lambda: &[Int], x: &Elem) -> Result<bool> {
    Ok(AdmOracle::new(d, lambda)?.contains(x))
}

/// `Adm(chi)` for a possibly non-dominant `chi` means `Adm` of its dominant conjugate.
pub fn adm_contains_any(d: &RootDatum, chi: &[Int], x: &Elem) -> bool {
    let dom = coweight::dominant_rep(d, chi).0;
    AdmOracle::new(d, &dom).map(|o| o.contains(x)).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;
    use crate::weyl;

    #[test]
    fn trivial_lambda() {
        let d = RootDatum::adjoint(Family::A, 2);
        let a = compute_adm(&d, &[0, 0]).unwrap();
        assert_eq!(a.elements, vec![Elem::identity(&d)]);
        assert_eq!(a.straight, vec![0]);
    }

    /// All elements of length at most `l` in `W~` with translation parts in a box.
    fn small_elements(d: &RootDatum, l: usize, b: Int) -> Vec<Elem> {
        let ws = weyl::parabolic_elements(d, d.full());
        let mut out = Vec::new();
        let n = d.rank;
        let mut mu = vec![-b; n];
        loop {
            for w in &ws {
                let x = Elem::new(mu.clone(), w.clone());
                if x.length(d) <= l {
                    out.push(x);
                }
            }
            let mut k = 0;
            while k < n && mu[k] == b {
                mu[k] = -b;
                k += 1;
            }
            if k == n {
                break;
            }
            mu[k] += 1;
        }
        out
    }

    #[test]
    fn a1_admissible_sets_match_scan() {
        let d = RootDatum::adjoint(Family::A, 1);
        for lam in [vec![1], vec![2], vec![4]] {
            let adm = compute_adm(&d, &lam).unwrap();
            let tops: Vec<Elem> = orbit(&d, &lam).iter().map(|m| Elem::translation(&d, m)).collect();
            let scan: Vec<Elem> = small_elements(&d, translation_length(&d, &lam) as usize, 6)
                .into_iter()
                .filter(|x| tops.iter().any(|t| affine::bruhat_leq(&d, x, t)))
                .collect();
            assert_eq!(adm.elements.len(), scan.len());
            let o = AdmOracle::new(&d, &lam).unwrap();
            for x in small_elements(&d, 6, 4) {
                assert_eq!(o.contains(&x), adm.elements.contains(&x));
            }
        }
        // omega^vee minuscule: t^{omega}, t^{-omega} and the length-zero element
        assert_eq!(compute_adm(&d, &[1]).unwrap().elements.len(), 3);
        // alpha^vee: [e, s0 s1] and [e, s1 s0]
        assert_eq!(compute_adm(&d, &[2]).unwrap().elements.len(), 5);
    }

    #[test]
    fn oracle_matches_enumeration_rank2() {
        for (f, lam) in [(Family::A, vec![1, 1]), (Family::C, vec![0, 1]), (Family::G, vec![1, 0])] {
            let d = RootDatum::adjoint(f, 2);
            let adm = compute_adm(&d, &lam).unwrap();
            let set: HashSet<Elem> = adm.elements.iter().cloned().collect();
            let o = AdmOracle::new(&d, &lam).unwrap();
            for x in small_elements(&d, translation_length(&d, &lam) as usize + 1, 3) {
                assert_eq!(o.contains(&x), set.contains(&x), "{f:?} {x:?}");
            }
        }
    }

    #[test]
    fn non_dominant_is_refused() {
        let d = RootDatum::adjoint(Family::A, 2);
        assert_eq!(compute_adm(&d, &[-1, 2]).unwrap_err(), Error::NotDominant);
    }
}
