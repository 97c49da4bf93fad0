//! The extended affine Weyl group `W~ = Y x| W_0`.
//!
//! `t^mu w` acts on the apartment by `v -> w(v) + mu`.  An affine root
//! `(a, k)` is the function `v -> -<a, v> + k`; the base alcove lies in the
//! dominant chamber, so `(a, k)` is positive when `a > 0, k >= 1` or
//! `a < 0, k >= 0`.  The simple affine roots are `(-alpha_i, 0)` and, for each
//! component, `(theta, 1)` with reflection `s_0 = t^{theta^vee} s_theta`.
//!
//! Affine words use letters `0..n` for `s_i` and `n + c` for the affine
//! reflection of component `c` (so `n` is `s_0` for the whole group).

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::coweight::{self, RationalCoweight};
use crate::error::{Error, Result};
use crate::root_datum::{Coweight, Int, RootDatum, RootId};
use crate::subset::Subset;
use crate::weyl::{self, Weyl};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub mu: Coweight,
    pub w: Weyl,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineRoot {
    pub root: RootId,
    pub k: Int,
}

impl AffineRoot {
    pub fn is_positive(&self, d: &RootDatum) -> bool {
        if d.is_positive(self.root) {
            self.k >= 1
        } else {
            self.k >= 0
        }
    }
}

/// Serializable form: translation part and a reduced word of the finite part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemRepr {
    pub mu: Coweight,
    pub w: Vec<usize>,
}

impl Elem {
    pub fn new(mu: Coweight, w: Weyl) -> Elem {
        Elem { mu, w }
    }

    pub fn identity(d: &RootDatum) -> Elem {
        Elem { mu: d.zero(), w: Weyl::identity(d) }
    }

    pub fn translation(d: &RootDatum, mu: &[Int]) -> Elem {
        Elem { mu: mu.to_vec(), w: Weyl::identity(d) }
    }

    pub fn finite(d: &RootDatum, w: Weyl) -> Elem {
        Elem { mu: d.zero(), w }
    }

    pub fn repr(&self, d: &RootDatum) -> ElemRepr {
        ElemRepr { mu: self.mu.clone(), w: self.w.word(d) }
    }

    pub fn from_repr(d: &RootDatum, r: &ElemRepr) -> Result<Elem> {
        if r.mu.len() != d.rank {
            return Err(Error::Dimension { expected: d.rank, got: r.mu.len() });
        }
        if r.w.iter().any(|&i| i >= d.rank) {
            return Err(Error::Invalid("letter out of range".into()));
        }
        d.check_lattice(&r.mu)?;
        Ok(Elem { mu: r.mu.clone(), w: Weyl::from_word(d, &r.w) })
    }

    pub fn mul(&self, d: &RootDatum, o: &Elem) -> Elem {
        let wm = self.w.act(d, &o.mu);
        Elem { mu: coweight::add(&self.mu, &wm), w: self.w.mul(&o.w) }
    }

    pub fn inverse(&self, d: &RootDatum) -> Elem {
        let wi = self.w.inverse();
        let m = wi.act(d, &self.mu);
        Elem { mu: m.iter().map(|x| -x).collect(), w: wi }
    }

    /// `self * other * self^{-1}`.
    pub fn conj(&self, d: &RootDatum, o: &Elem) -> Elem {
        self.mul(d, o).mul(d, &self.inverse(d))
    }

    pub fn pow(&self, d: &RootDatum, k: usize) -> Elem {
        let mut p = Elem::identity(d);
        for _ in 0..k {
            p = p.mul(d, self);
        }
        p
    }

    /// Image of an affine root.
    pub fn act_root(&self, d: &RootDatum, r: AffineRoot) -> AffineRoot {
        let a = self.w.apply(r.root);
        AffineRoot { root: a, k: r.k + d.pair(&self.mu, a) }
    }

    /// Image of an affine root under the inverse.
    pub fn act_root_inv(&self, d: &RootDatum, r: AffineRoot) -> AffineRoot {
        AffineRoot { root: self.w.apply_inv(r.root), k: r.k - d.pair(&self.mu, r.root) }
    }

    /// Length, by the closed formula over positive roots.
    pub fn length(&self, d: &RootDatum) -> usize {
        length_over(d, self, 0..d.npos())
    }

    /// Kottwitz invariant: the class of the translation part in `pi_1`.
    pub fn kottwitz(&self, d: &RootDatum) -> Vec<Int> {
        d.pi1_class(&self.mu)
    }

    /// Newton point `nu_x`, not necessarily dominant.
    pub fn newton(&self, d: &RootDatum) -> RationalCoweight {
        let k = weyl::order(d, &self.w);
        let p = self.pow(d, k);
        debug_assert!(p.w.is_identity());
        RationalCoweight::new(p.mu, k as Int)
    }

    /// Dominant Newton point.
    pub fn newton_dominant(&self, d: &RootDatum) -> RationalCoweight {
        let n = self.newton(d);
        RationalCoweight::new(coweight::dominant_rep(d, &n.num).0, n.den)
    }

    /// `l(x) = <nu_x, 2 rho>`.
    pub fn is_straight(&self, d: &RootDatum) -> bool {
        let n = self.newton_dominant(d);
        let s: Int = (0..d.npos()).map(|a| d.pair(&n.num, a)).sum();
        (self.length(d) as Int) * n.den == s
    }

    /// Straightness from the definition: `l(x^m) = m l(x)` for `m` up to the order of `w`.
    pub fn is_straight_by_powers(&self, d: &RootDatum) -> bool {
        let k = weyl::order(d, &self.w);
        let l = self.length(d);
        let mut p = Elem::identity(d);
        for m in 1..=k {
            p = p.mul(d, self);
            if p.length(d) != m * l {
                return false;
            }
        }
        true
    }
}

fn length_over<I: IntoIterator<Item = RootId>>(d: &RootDatum, x: &Elem, roots: I) -> usize {
    let mut l = 0;
    for g in roots {
        let m = d.pair(&x.mu, g);
        l += if d.is_positive(x.w.apply_inv(g)) { m.abs() } else { (m - 1).abs() };
    }
    l as usize
}

/// Reflection `t^{k a^vee} s_a` in the affine root hyperplane `<a, v> = k`.
pub fn reflection(d: &RootDatum, a: RootId, k: Int) -> Elem {
    Elem { mu: coweight::scale(d.coroot(a), k), w: d.reflection(a).clone() }
}

/// Reflection `s_a` of a finite root as an element of `W~`.
pub fn finite_reflection(d: &RootDatum, a: RootId) -> Elem {
    Elem::finite(d, d.reflection(a).clone())
}

/// A standard Levi subgroup `M_J`, with `J = S_0` giving the whole group.
#[derive(Clone, Debug)]
pub struct Levi {
    pub j: Subset,
    pub comps: Vec<Subset>,
    pub thetas: Vec<RootId>,
    pub pos: Vec<RootId>,
    simple: Vec<AffineRoot>,
}

impl Levi {
    pub fn new(d: &RootDatum, j: Subset) -> Levi {
        let comps = d.components(j);
        let thetas: Vec<RootId> = comps.iter().map(|&h| d.highest_root_in(h)).collect();
        let mut simple: Vec<AffineRoot> = (0..d.rank)
            .map(|i| AffineRoot { root: d.neg(i), k: 0 })
            .collect();
        simple.extend(thetas.iter().map(|&t| AffineRoot { root: t, k: 1 }));
        Levi { j, comps, thetas, pos: d.positive_roots_in(j), simple }
    }

    pub fn full(d: &RootDatum) -> Levi {
        Levi::new(d, d.full())
    }

    /// Letters of this Levi's simple affine reflections.
    pub fn letters(&self, d: &RootDatum) -> Vec<usize> {
        let mut v: Vec<usize> = self.j.indices();
        v.extend((0..self.comps.len()).map(|c| d.rank + c));
        v
    }

    pub fn simple_root(&self, letter: usize) -> AffineRoot {
        self.simple[letter]
    }

    pub fn simple_reflection(&self, d: &RootDatum, letter: usize) -> Elem {
        let r = self.simple[letter];
        if letter < d.rank {
            Elem::finite(d, d.s(letter).clone())
        } else {
            reflection(d, r.root, r.k)
        }
    }

    pub fn contains(&self, d: &RootDatum, x: &Elem) -> bool {
        x.w.in_parabolic(d, self.j)
    }

    pub fn length(&self, d: &RootDatum, x: &Elem) -> usize {
        length_over(d, x, self.pos.iter().copied())
    }

    /// `l(s x) < l(x)` for the simple reflection `s` of `letter`.
    pub fn is_left_descent(&self, d: &RootDatum, x: &Elem, letter: usize) -> bool {
        !x.act_root_inv(d, self.simple[letter]).is_positive(d)
    }

    /// `l(x s) < l(x)`.
    pub fn is_right_descent(&self, d: &RootDatum, x: &Elem, letter: usize) -> bool {
        !x.act_root(d, self.simple[letter]).is_positive(d)
    }

    pub fn left_mul(&self, d: &RootDatum, letter: usize, x: &Elem) -> Elem {
        self.simple_reflection(d, letter).mul(d, x)
    }

    /// Reduced word `x = s_{i_1} ... s_{i_k} tau` with `l(tau) = 0`.
    pub fn reduced_word(&self, d: &RootDatum, x: &Elem) -> (Vec<usize>, Elem) {
        let letters = self.letters(d);
        let mut x = x.clone();
        let mut word = Vec::new();
        while let Some(&s) = letters.iter().find(|&&s| self.is_left_descent(d, &x, s)) {
            word.push(s);
            x = self.left_mul(d, s, &x);
        }
        (word, x)
    }

    pub fn from_word(&self, d: &RootDatum, word: &[usize], tau: &Elem) -> Elem {
        let mut x = tau.clone();
        for &s in word.iter().rev() {
            x = self.left_mul(d, s, &x);
        }
        x
    }

    /// Bruhat order within this Levi, by descending along left descents of `y`.
    pub fn bruhat_leq(&self, d: &RootDatum, x: &Elem, y: &Elem) -> bool {
        if !self.contains(d, x) || !self.contains(d, y) {
            return false;
        }
        let letters = self.letters(d);
        let mut lx = self.length(d, x);
        let mut ly = self.length(d, y);
        let mut x = x.clone();
        let mut y = y.clone();
        loop {
            if lx > ly {
                return false;
            }
            if lx == ly {
                return x == y;
            }
            let s = *letters
                .iter()
                .find(|&&s| self.is_left_descent(d, &y, s))
                .expect("positive length has a descent");
            y = self.left_mul(d, s, &y);
            ly -= 1;
            if self.is_left_descent(d, &x, s) {
                x = self.left_mul(d, s, &x);
                lx -= 1;
            }
        }
    }

    /// Whether `x` is minimal in `x W~_M^{aff}` for this Levi's affine simple reflections.
    pub fn is_min_right_coset(&self, d: &RootDatum, x: &Elem) -> bool {
        self.letters(d).iter().all(|&s| !self.is_right_descent(d, x, s))
    }
}

/// Bruhat order on `W~`.
pub fn bruhat_leq(d: &RootDatum, x: &Elem, y: &Elem) -> bool {
    Levi::full(d).bruhat_leq(d, x, y)
}

/// The length-zero elements `Omega`.
pub fn omega(d: &RootDatum) -> Vec<Elem> {
    let lv = Levi::full(d);
    let mut out = vec![Elem::identity(d)];
    let gens: Vec<Elem> = (0..d.rank).map(|i| lv.reduced_word(d, &Elem::translation(d, &d.fundamental(i))).1).collect();
    let mut i = 0;
    while i < out.len() {
        for g in &gens {
            let x = out[i].mul(d, g);
            if !out.contains(&x) {
                out.push(x);
            }
        }
        i += 1;
    }
    out.retain(|x| d.in_lattice(&x.mu));
    out.sort();
    out
}

/// All elements of length at most `len`, shortest first.
pub fn ball(d: &RootDatum, len: usize) -> Vec<Elem> {
    let lv = Levi::full(d);
    let letters = lv.letters(d);
    let mut layer = omega(d);
    let mut out = layer.clone();
    for _ in 0..len {
        let mut next: Vec<Elem> = Vec::new();
        let mut seen: HashSet<Elem> = HashSet::new();
        for x in &layer {
            for &s in &letters {
                if !lv.is_left_descent(d, x, s) {
                    let y = lv.left_mul(d, s, x);
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Elements `r y` with `r` a reflection and `l(r y) = l(y) - 1`.
pub fn down_covers(d: &RootDatum, y: &Elem) -> Vec<Elem> {
    let ly = y.length(d);
    let mut out = Vec::new();
    for a in 0..d.npos() {
        let m = d.pair(&y.mu, a).abs() + 1;
        for k in -m..=m {
            let c = if k >= 1 { AffineRoot { root: a, k } } else { AffineRoot { root: d.neg(a), k: -k } };
            if y.act_root_inv(d, c).is_positive(d) {
                continue;
            }
            let z = reflection(d, a, k).mul(d, y);
            if z.length(d) + 1 == ly {
                out.push(z);
            }
        }
    }
    out
}

/// The lower Bruhat interval `[e, y]` (all `x <= y`), by breadth-first search over covers.
pub fn lower_interval(d: &RootDatum, tops: &[Elem], cap: usize) -> Result<Vec<Elem>> {
    let mut seen: HashSet<Elem> = tops.iter().cloned().collect();
    let mut queue: VecDeque<Elem> = tops.iter().cloned().collect();
    while let Some(y) = queue.pop_front() {
        for z in down_covers(d, &y) {
            if seen.insert(z.clone()) {
                if seen.len() > cap {
                    return Err(Error::SearchBound);
                }
                queue.push_back(z);
            }
        }
    }
    let mut v: Vec<Elem> = seen.into_iter().collect();
    v.sort_by_key(|x| (x.length(d), x.mu.clone(), x.w.word(d)));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;

    fn brute_length(d: &RootDatum, x: &Elem) -> usize {
        let bound = x.mu.iter().map(|v| v.abs()).sum::<Int>() * 4 + 4;
        let mut l = 0;
        for a in 0..d.nroots() {
            for k in -bound..=bound {
                let r = AffineRoot { root: a, k };
                if r.is_positive(d) && !x.act_root(d, r).is_positive(d) {
                    l += 1;
                }
            }
        }
        l
    }

    #[test]
    fn a1_lengths() {
        let d = RootDatum::adjoint(Family::A, 1);
        let t = Elem::translation(&d, &d.simple_coroot(0));
        assert_eq!(t.length(&d), 2);
        let ts = t.mul(&d, &finite_reflection(&d, 0));
        assert_eq!(ts.length(&d), 1);
        let s0 = reflection(&d, d.highest_root(), 1);
        assert_eq!(s0.length(&d), 1);
        // omega^vee s is the nontrivial length-zero element
        let tau = Elem::new(d.fundamental(0), d.s(0).clone());
        assert_eq!(tau.length(&d), 0);
    }

    #[test]
    fn closed_length_matches_inversion_count() {
        for (f, n) in [(Family::A, 2), (Family::C, 2), (Family::G, 2), (Family::B, 3)] {
            let d = RootDatum::adjoint(f, n);
            let ws = weyl::parabolic_elements(&d, d.full());
            for mu in [vec![1; n], (0..n as Int).map(|i| i - 1).collect::<Vec<_>>()] {
                for w in ws.iter().step_by(3) {
                    let x = Elem::new(mu.clone(), w.clone());
                    assert_eq!(x.length(&d), brute_length(&d, &x));
                }
            }
        }
    }

    #[test]
    fn simple_reflections_have_length_one() {
        let d = RootDatum::adjoint(Family::F, 4);
        let l = Levi::full(&d);
        for s in l.letters(&d) {
            assert_eq!(l.simple_reflection(&d, s).length(&d), 1);
        }
    }

    #[test]
    fn reduced_words_rebuild() {
        let d = RootDatum::adjoint(Family::C, 2);
        let l = Levi::full(&d);
        let x = Elem::new(vec![2, -1], Weyl::from_word(&d, &[0, 1]));
        let (word, tau) = l.reduced_word(&d, &x);
        assert_eq!(word.len(), x.length(&d));
        assert_eq!(tau.length(&d), 0);
        assert_eq!(l.from_word(&d, &word, &tau), x);
    }

    fn subword_products(d: &RootDatum, l: &Levi, word: &[usize], tau: &Elem) -> HashSet<Elem> {
        let mut out = HashSet::new();
        for mask in 0u32..(1 << word.len()) {
            let sub: Vec<usize> = word.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
            out.insert(l.from_word(d, &sub, tau));
        }
        out
    }

    #[test]
    fn bruhat_matches_subwords_and_interval() {
        for (f, n) in [(Family::A, 2), (Family::G, 2), (Family::B, 2)] {
            let d = RootDatum::adjoint(f, n);
            let l = Levi::full(&d);
            let y = Elem::new(d.simple_coroot(0), Weyl::from_word(&d, &[1]));
            let (word, tau) = l.reduced_word(&d, &y);
            assert!(word.len() <= 12);
            let sub = subword_products(&d, &l, &word, &tau);
            let interval: HashSet<Elem> = lower_interval(&d, &[y.clone()], 100000).unwrap().into_iter().collect();
            assert_eq!(sub, interval);
            for x in &interval {
                assert!(bruhat_leq(&d, x, &y));
            }
            // elements just outside the interval
            for z in &interval {
                for s in l.letters(&d) {
                    let zz = l.left_mul(&d, s, z);
                    assert_eq!(bruhat_leq(&d, &zz, &y), interval.contains(&zz));
                }
            }
        }
    }

    #[test]
    fn newton_and_straightness() {
        let d = RootDatum::adjoint(Family::A, 1);
        let tau = Elem::new(d.fundamental(0), d.s(0).clone());
        assert_eq!(tau.newton(&d).num, vec![0]);
        assert!(tau.is_straight(&d));
        let t = Elem::translation(&d, &[3]);
        assert!(t.is_straight(&d));
        assert!(t.is_straight_by_powers(&d));
        let s = finite_reflection(&d, 0);
        assert!(!s.is_straight(&d));
        assert!(!s.is_straight_by_powers(&d));
    }

    #[test]
    fn inverse_and_conjugation() {
        let d = RootDatum::adjoint(Family::G, 2);
        let x = Elem::new(vec![1, -2], Weyl::from_word(&d, &[0, 1, 0]));
        assert_eq!(x.mul(&d, &x.inverse(&d)), Elem::identity(&d));
        assert_eq!(x.inverse(&d).length(&d), x.length(&d));
    }
}
