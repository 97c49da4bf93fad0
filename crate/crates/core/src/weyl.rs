//! Finite Weyl group elements as permutations of the roots.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::root_datum::{Coweight, Int, RootDatum, RootId};
use crate::subset::Subset;

/// An element `w` of the finite Weyl group, stored as the permutation
/// `a -> w(a)` of root indices together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weyl {
    img: Box<[u16]>,
    pre: Box<[u16]>,
}

impl Weyl {
    pub(crate) fn from_img(img: Vec<u16>) -> Weyl {
        let mut pre = vec![0u16; img.len()];
        for (a, &b) in img.iter().enumerate() {
            pre[b as usize] = a as u16;
        }
        Weyl { img: img.into(), pre: pre.into() }
    }

    pub fn identity(d: &RootDatum) -> Weyl {
        Weyl::from_img((0..d.nroots() as u16).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(a, &b)| a == b as usize)
    }

    /// `w(a)`.
    pub fn apply(&self, a: RootId) -> RootId {
        self.img[a] as usize
    }

    /// `w^{-1}(a)`.
    pub fn apply_inv(&self, a: RootId) -> RootId {
        self.pre[a] as usize
    }

    /// `self * other`.
    pub fn mul(&self, other: &Weyl) -> Weyl {
        let img: Vec<u16> = other.img.iter().map(|&b| self.img[b as usize]).collect();
        let pre: Vec<u16> = self.pre.iter().map(|&b| other.pre[b as usize]).collect();
        Weyl { img: img.into(), pre: pre.into() }
    }

    pub fn inverse(&self) -> Weyl {
        Weyl { img: self.pre.clone(), pre: self.img.clone() }
    }

    pub fn length(&self, d: &RootDatum) -> usize {
        (0..d.npos()).filter(|&a| !d.is_positive(self.apply(a))).count()
    }

    /// `w(v)` for a coweight `v`.
    pub fn act(&self, d: &RootDatum, v: &[Int]) -> Coweight {
        (0..d.rank).map(|j| d.pair(v, self.apply_inv(j))).collect()
    }

    /// `w^{-1}(v)`.
    pub fn act_inv(&self, d: &RootDatum, v: &[Int]) -> Coweight {
        (0..d.rank).map(|j| d.pair(v, self.apply(j))).collect()
    }

    /// Matrix of `w` on coweights in the internal coordinates: column `k` is `w(e_k)`.
    pub fn matrix(&self, d: &RootDatum) -> Vec<Vec<Int>> {
        let n = d.rank;
        (0..n).map(|j| d.root(self.apply_inv(j)).to_vec()).collect()
    }

    /// Whether `w` lies in the parabolic subgroup `W_J`.
    pub fn in_parabolic(&self, d: &RootDatum, j: Subset) -> bool {
        (0..d.npos()).all(|a| d.is_positive(self.apply(a)) || d.in_subsystem(a, j))
    }

    pub fn from_word(d: &RootDatum, word: &[usize]) -> Weyl {
        let mut w = Weyl::identity(d);
        for &i in word {
            w = w.mul(d.s(i));
        }
        w
    }

    /// Lexicographically first reduced word.
    pub fn word(&self, d: &RootDatum) -> Vec<usize> {
        let mut w = self.clone();
        let mut out = Vec::new();
        loop {
            let Some(i) = (0..d.rank).find(|&i| !d.is_positive(w.apply_inv(i))) else { break };
            out.push(i);
            w = d.s(i).mul(&w);
        }
        out
    }

    /// Left descents `i` with `l(s_i w) < l(w)`.
    pub fn left_descent(&self, d: &RootDatum, i: usize) -> bool {
        !d.is_positive(self.apply_inv(i))
    }

    /// Right descents `i` with `l(w s_i) < l(w)`.
    pub fn right_descent(&self, d: &RootDatum, i: usize) -> bool {
        !d.is_positive(self.apply(i))
    }

    /// Whether `w` is of minimal length in `w W_J`.
    pub fn is_min_coset_rep(&self, d: &RootDatum, j: Subset) -> bool {
        j.iter().all(|i| d.is_positive(self.apply(i)))
    }

    /// Minimal length representative of `w W_J`, and `u in W_J` with `w = rep * u`.
    pub fn min_coset_rep(&self, d: &RootDatum, j: Subset) -> (Weyl, Weyl) {
        let mut w = self.clone();
        let mut u = Weyl::identity(d);
        while let Some(i) = j.iter().find(|&i| !d.is_positive(w.apply(i))) {
            w = w.mul(d.s(i));
            u = d.s(i).mul(&u);
        }
        (w, u)
    }

    pub fn serialize_word(&self, d: &RootDatum) -> Vec<usize> {
        self.word(d)
    }
}

/// Longest element of `W_J`.
pub fn longest(d: &RootDatum, j: Subset) -> Weyl {
    let mut w = Weyl::identity(d);
    while let Some(i) = j.iter().find(|&i| d.is_positive(w.apply(i))) {
        w = w.mul(d.s(i));
    }
    w
}

/// Minimal length representatives of `W / W_J`, by length then reduced word.
pub fn coset_reps(d: &RootDatum, j: Subset) -> Vec<Weyl> {
    let mut out = vec![Weyl::identity(d)];
    let mut seen: HashSet<Weyl> = out.iter().cloned().collect();
    let mut layer = out.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for z in &layer {
            for i in 0..d.rank {
                if z.left_descent(d, i) {
                    continue;
                }
                let y = d.s(i).mul(z);
                if y.is_min_coset_rep(d, j) && seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        next.sort_by_cached_key(|w| w.word(d));
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// All elements of `W_J`.
pub fn parabolic_elements(d: &RootDatum, j: Subset) -> Vec<Weyl> {
    let mut out = vec![Weyl::identity(d)];
    let mut seen: HashSet<Weyl> = out.iter().cloned().collect();
    let mut i = 0;
    while i < out.len() {
        for k in j.iter() {
            let y = out[i].mul(d.s(k));
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// Order of `w` as a group element.
pub fn order(d: &RootDatum, w: &Weyl) -> usize {
    let id = Weyl::identity(d);
    let mut p = w.clone();
    let mut k = 1;
    while p != id {
        p = p.mul(w);
        k += 1;
    }
    k
}

/// Serializable finite Weyl element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;

    #[test]
    fn group_orders() {
        let cases = [(Family::A, 3, 24), (Family::B, 3, 48), (Family::D, 4, 192), (Family::G, 2, 12), (Family::F, 4, 1152)];
        for (f, n, k) in cases {
            let d = RootDatum::adjoint(f, n);
            assert_eq!(parabolic_elements(&d, d.full()).len(), k);
            assert_eq!(coset_reps(&d, Subset::EMPTY).len(), k);
            assert_eq!(longest(&d, d.full()).length(&d), d.npos());
        }
    }

    #[test]
    fn coset_counts() {
        let d = RootDatum::adjoint(Family::A, 3);
        assert_eq!(coset_reps(&d, Subset::from_indices([0, 2])).len(), 6);
        let d = RootDatum::adjoint(Family::E, 6);
        assert_eq!(coset_reps(&d, Subset::from_indices([0, 1, 2, 3, 4])).len(), 27);
    }

    #[test]
    fn words_roundtrip() {
        let d = RootDatum::adjoint(Family::B, 3);
        for w in parabolic_elements(&d, d.full()) {
            let word = w.word(&d);
            assert_eq!(word.len(), w.length(&d));
            assert_eq!(Weyl::from_word(&d, &word), w);
        }
    }

    #[test]
    fn action_matches_reflection_formula() {
        let d = RootDatum::adjoint(Family::G, 2);
        let v = vec![3, -1];
        for i in 0..2 {
            let direct: Vec<i64> = (0..2).map(|j| v[j] - v[i] * d.cartan[i][j]).collect();
            assert_eq!(d.s(i).act(&d, &v), direct);
        }
    }

    #[test]
    fn matrix_is_action() {
        let d = RootDatum::adjoint(Family::C, 3);
        let w = Weyl::from_word(&d, &[0, 1, 2, 1]);
        let m = w.matrix(&d);
        let v = vec![2, -1, 3];
        let mv: Vec<i64> = (0..3).map(|j| (0..3).map(|k| m[j][k] * v[k]).sum()).collect();
        assert_eq!(mv, w.act(&d, &v));
    }
}
