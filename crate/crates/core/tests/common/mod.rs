//! Brute-force oracles shared by the integration and acceptance tests.

#![allow(dead_code)]

use std::collections::HashSet;

use adlv_core::admissible::{self, AdmOracle};
use adlv_core::affine::{self, Elem, Levi};
use adlv_core::connectivity;
use adlv_core::coweight;
use adlv_core::sigma;
use adlv_core::weyl;
use adlv_core::{Int, RootDatum};

/// Bruhat lower set of `y` as the set of all subword products of a reduced word.
pub fn subword_set(d: &RootDatum, y: &Elem) -> HashSet<Elem> {
    let l = Levi::full(d);
    let (word, tau) = l.reduced_word(d, y);
    let mut out = HashSet::new();
    for mask in 0u64..(1 << word.len()) {
        let sub: Vec<usize> = word.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
        out.insert(l.from_word(d, &sub, &tau));
    }
    out
}

/// `(pairs, mismatches)` for `bruhat_leq` against subwords on the ball of radius `len`.
pub fn bruhat_vs_subwords(d: &RootDatum, len: usize) -> (usize, Vec<String>) {
    let ball = affine::ball(d, len);
    let mut bad = Vec::new();
    let mut pairs = 0;
    for y in &ball {
        let below = subword_set(d, y);
        for x in &ball {
            pairs += 1;
            if affine::bruhat_leq(d, x, y) != below.contains(x) {
                bad.push(format!("{} x={x:?} y={y:?}", d.label()));
            }
        }
    }
    (pairs, bad)
}

/// `l(x^m) = m l(x)` for `m` up to the order of the finite part.
pub fn straight_by_powers(d: &RootDatum, x: &Elem) -> bool {
    let l = x.length(d);
    let mut p = x.clone();
    for m in 2..=weyl::order(d, &x.w) {
        p = p.mul(d, x);
        if p.length(d) != m * l {
            return false;
        }
    }
    true
}

pub fn straightness_vs_powers(d: &RootDatum, len: usize) -> (usize, Vec<String>) {
    let ball = affine::ball(d, len);
    let bad = ball
        .iter()
        .filter(|x| x.is_straight(d) != straight_by_powers(d, x))
        .map(|x| format!("{} {x:?}", d.label()))
        .collect();
    (ball.len(), bad)
}

/// Every dominant `lambda' <= lambda` with coordinates in `[0, max]` has
/// `Adm(lambda')` inside `Adm(lambda)`. Small sets are enumerated in full,
/// larger ones are compared through their translation tops.
pub fn adm_monotone(d: &RootDatum, max: Int, enumerate_upto: i64) -> (usize, Vec<String>) {
    let doms: Vec<Vec<Int>> = sigma::boxes(d.rank, 0, max).into_iter().filter(|l| d.in_lattice(l)).collect();
    let mut bad = Vec::new();
    let mut pairs = 0;
    for lam in &doms {
        let big = AdmOracle::new(d, lam).expect("dominant");
        for small in &doms {
            if small == lam || !coweight::preceq(d, small, lam) {
                continue;
            }
            pairs += 1;
            let elems: Vec<Elem> = if admissible::translation_length(d, small) <= enumerate_upto {
                admissible::compute_adm(d, small).expect("small").elements
            } else {
                admissible::orbit(d, small).iter().map(|m| Elem::translation(d, m)).collect()
            };
            if let Some(x) = elems.iter().find(|x| !big.contains(x)) {
                bad.push(format!("{} {small:?} <= {lam:?} but {x:?} missing", d.label()));
            }
        }
    }
    (pairs, bad)
}

/// Permissibility symmetry over every `(z, a)` with `z, s_a z` minimal in the
/// instances of a datum. Returns `(checked, failures)`.
pub fn permissibility_symmetry(d: &RootDatum, lo: Int, hi: Int, cmax: Int) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut seen = HashSet::new();
    for (_, sd) in sigma::irreducible_instances(d, lo, hi, cmax) {
        if !seen.insert((sd.mu.clone(), sd.j_nu)) {
            continue;
        }
        for z in weyl::coset_reps(d, sd.j) {
            for a in 0..d.npos() {
                if d.in_subsystem(z.apply_inv(a), sd.j) || !d.reflection(a).mul(&z).is_min_coset_rep(d, sd.j) {
                    continue;
                }
                checked += 1;
                if let Err(e) = connectivity::permissibility_symmetry_check(d, &sd, &z, a) {
                    bad.push(format!("{} mu={:?} z={:?} a={a}: {e}", d.label(), sd.mu, z.word(d)));
                }
            }
        }
    }
    (checked, bad)
}
