//! Orders and moves on coweights.

use serde::{Deserialize, Serialize};

use crate::root_datum::{Coweight, Int, RootDatum, RootId};
use crate::subset::Subset;
use crate::weyl::Weyl;

/// A rational coweight `num / den` with `den > 0` and `gcd(num, den) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RationalCoweight {
    pub num: Vec<Int>,
    pub den: Int,
}

impl RationalCoweight {
    pub fn new(num: Vec<Int>, den: Int) -> RationalCoweight {
        assert!(den != 0);
        let g = num.iter().fold(den.abs(), |a, &x| num_integer::gcd(a, x));
        let s = den.signum();
        RationalCoweight { num: num.iter().map(|x| x * s / g).collect(), den: den.abs() / g }
    }

    pub fn integral(v: &[Int]) -> RationalCoweight {
        RationalCoweight::new(v.to_vec(), 1)
    }

    /// `<self, a>` as a numerator over `den`.
    pub fn pair_num(&self, d: &RootDatum, a: RootId) -> Int {
        d.pair(&self.num, a)
    }

    pub fn act(&self, d: &RootDatum, w: &Weyl) -> RationalCoweight {
        RationalCoweight { num: w.act(d, &self.num), den: self.den }
    }

    pub fn is_dominant(&self, d: &RootDatum) -> bool {
        is_dominant(d, &self.num)
    }

    /// Simple roots orthogonal to `self`.
    pub fn stabilizer(&self, d: &RootDatum) -> Subset {
        Subset::from_indices((0..d.rank).filter(|&i| self.num[i] == 0))
    }
}

pub fn add(a: &[Int], b: &[Int]) -> Coweight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> Coweight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Int], k: Int) -> Coweight {
    a.iter().map(|x| x * k).collect()
}

pub fn is_dominant(_d: &RootDatum, v: &[Int]) -> bool {
    v.iter().all(|&x| x >= 0)
}

pub fn is_j_dominant(v: &[Int], j: Subset) -> bool {
    j.iter().all(|i| v[i] >= 0)
}

pub fn is_j_antidominant(v: &[Int], j: Subset) -> bool {
    j.iter().all(|i| v[i] <= 0)
}

/// `<v, a> >= -1` for every positive root `a`.
pub fn is_weakly_dominant(d: &RootDatum, v: &[Int]) -> bool {
    (0..d.npos()).all(|a| d.pair(v, a) >= -1)
}

/// `<v, a> in {-1, 0, 1}` for every root of `Phi_J`.
pub fn is_j_minuscule(d: &RootDatum, v: &[Int], j: Subset) -> bool {
    d.positive_roots_in(j).iter().all(|&a| d.pair(v, a).abs() <= 1)
}

/// The dominant conjugate of `v` and `u` with `u(v)` dominant.
pub fn dominant_rep(d: &RootDatum, v: &[Int]) -> (Coweight, Weyl) {
    j_dominant_rep(d, v, d.full())
}

/// The `J`-dominant `W_J`-conjugate of `v` and the conjugating element.
pub fn j_dominant_rep(d: &RootDatum, v: &[Int], j: Subset) -> (Coweight, Weyl) {
    let mut v = v.to_vec();
    let mut u = Weyl::identity(d);
    while let Some(i) = j.iter().find(|&i| v[i] < 0) {
        v = d.s(i).act(d, &v);
        u = d.s(i).mul(&u);
    }
    (v, u)
}

/// The `J`-antidominant `W_J`-conjugate of `v` and the conjugating element.
pub fn j_antidominant_rep(d: &RootDatum, v: &[Int], j: Subset) -> (Coweight, Weyl) {
    let mut v = v.to_vec();
    let mut u = Weyl::identity(d);
    while let Some(i) = j.iter().find(|&i| v[i] > 0) {
        v = d.s(i).act(d, &v);
        u = d.s(i).mul(&u);
    }
    (v, u)
}

/// Simple-coroot coordinates of `b - a`, if integral.
fn diff_coords(d: &RootDatum, a: &[Int], b: &[Int]) -> Option<Vec<Int>> {
    d.to_coroot_coords(&sub(b, a))
}

/// `a <= b`: `b - a` is a nonnegative integral combination of simple coroots.
pub fn leq(d: &RootDatum, a: &[Int], b: &[Int]) -> bool {
    leq_in(d, a, b, d.full())
}

/// `a <=_J b`: `b - a` is a nonnegative integral combination of simple coroots in `J`.
pub fn leq_in(d: &RootDatum, a: &[Int], b: &[Int], j: Subset) -> bool {
    match diff_coords(d, a, b) {
        Some(x) => x.iter().enumerate().all(|(i, &c)| c >= 0 && (c == 0 || j.contains(i))),
        None => false,
    }
}

/// `a <=^J b`: `a <= b + phi` for some `phi` in the coroot lattice of `J`.
pub fn leq_mod(d: &RootDatum, a: &[Int], b: &[Int], j: Subset) -> bool {
    match diff_coords(d, a, b) {
        Some(x) => x.iter().enumerate().all(|(i, &c)| c >= 0 || j.contains(i)),
        None => false,
    }
}

/// `chi <= lambda` after replacing `chi` by its dominant conjugate.
pub fn preceq(d: &RootDatum, chi: &[Int], lambda: &[Int]) -> bool {
    leq(d, &dominant_rep(d, chi).0, lambda)
}

/// Roots: `a <=_J b` when `b - a` is a nonnegative combination of simple roots in `J`.
pub fn root_leq_in(d: &RootDatum, a: RootId, b: RootId, j: Subset) -> bool {
    let (ra, rb) = (d.root(a), d.root(b));
    (0..d.rank).all(|i| {
        let c = rb[i] - ra[i];
        c >= 0 && (c == 0 || j.contains(i))
    })
}

/// The `J`-antidominant `W_J`-conjugate of a root, `gamma_J`.
pub fn root_j_antidominant(d: &RootDatum, a: RootId, j: Subset) -> RootId {
    let mut a = a;
    while let Some(i) = j.iter().find(|&i| d.cartan_int(i, a) > 0) {
        a = d.s(i).apply(a);
    }
    a
}

/// The `J`-dominant `W_J`-conjugate of a root, `gamma^J`.
pub fn root_j_dominant(d: &RootDatum, a: RootId, j: Subset) -> RootId {
    let mut a = a;
    while let Some(i) = j.iter().find(|&i| d.cartan_int(i, a) < 0) {
        a = d.s(i).apply(a);
    }
    a
}

pub fn is_root_j_dominant(d: &RootDatum, a: RootId, j: Subset) -> bool {
    j.iter().all(|i| d.cartan_int(i, a) >= 0)
}

pub fn is_root_j_antidominant(d: &RootDatum, a: RootId, j: Subset) -> bool {
    j.iter().all(|i| d.cartan_int(i, a) <= 0)
}

/// Maximal elements of `set` under `<=_J`.
pub fn max_j(d: &RootDatum, set: &[RootId], j: Subset) -> Vec<RootId> {
    set.iter()
        .copied()
        .filter(|&a| !set.iter().any(|&b| b != a && root_leq_in(d, a, b, j)))
        .collect()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChaseMode {
    /// `chi -> chi + alpha_i^vee`, allowed when `<chi, alpha_i> <= -1`.
    Plus,
    /// As `Plus`, but only when `<chi, alpha_i> = -1`.
    PlusStrict,
    /// `chi -> chi - alpha_i^vee`, allowed when `<chi, alpha_i> >= 1`.
    Minus,
}

/// One coroot chase move at the simple root `i`, if allowed.
pub fn chase_step(d: &RootDatum, chi: &[Int], i: usize, mode: ChaseMode) -> Option<Coweight> {
    let c = d.simple_coroot(i);
    match mode {
        ChaseMode::Plus if chi[i] <= -1 => Some(add(chi, &c)),
        ChaseMode::PlusStrict if chi[i] == -1 => Some(add(chi, &c)),
        ChaseMode::Minus if chi[i] >= 1 => Some(sub(chi, &c)),
        _ => None,
    }
}

/// Whether `chi'` is reachable from `chi` by plus-chase moves (within `bound` steps).
pub fn chase_reaches(d: &RootDatum, chi: &[Int], target: &[Int], mode: ChaseMode, bound: usize) -> bool {
    let mut frontier = vec![chi.to_vec()];
    let mut seen = std::collections::HashSet::new();
    for _ in 0..=bound {
        let mut next = Vec::new();
        for c in frontier {
            if c == target {
                return true;
            }
            if !seen.insert(c.clone()) {
                continue;
            }
            for i in 0..d.rank {
                if let Some(n) = chase_step(d, &c, i, mode) {
                    next.push(n);
                }
            }
        }
        frontier = next;
    }
    false
}

/// A root is elementary if all its simple-root coefficients are at most one.
pub fn is_elementary(d: &RootDatum, a: RootId) -> bool {
    d.root(a).iter().all(|&x| x.abs() <= 1)
}

/// `D^+` and `D^-`: simple roots where `chi` pairs to be positive, resp. negative.
pub fn signs(chi: &[Int]) -> (Subset, Subset) {
    (
        Subset::from_indices((0..chi.len()).filter(|&i| chi[i] > 0)),
        Subset::from_indices((0..chi.len()).filter(|&i| chi[i] < 0)),
    )
}

/// Interior of the Dynkin geodesic between `i` and `j`.
pub fn open_interval(d: &RootDatum, i: usize, j: usize) -> Subset {
    let g = d.geodesic(i, j);
    if g.len() <= 2 {
        return Subset::EMPTY;
    }
    Subset::from_indices(g[1..g.len() - 1].iter().copied())
}

/// `<chi, alpha> >= -1` on simple roots and any two distinct simple roots in
/// `D^-` have a `D^+` node strictly between them.
pub fn condition_c(d: &RootDatum, chi: &[Int]) -> bool {
    if chi.iter().any(|&x| x < -1) {
        return false;
    }
    let (plus, minus) = signs(chi);
    let m = minus.indices();
    for (k, &a) in m.iter().enumerate() {
        for &b in &m[k + 1..] {
            if open_interval(d, a, b).inter(plus).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;

    #[test]
    fn rational_normalizes() {
        let r = RationalCoweight::new(vec![2, -4], -6);
        assert_eq!(r, RationalCoweight { num: vec![-1, 2], den: 3 });
    }

    #[test]
    fn dominant_rep_conjugates() {
        let d = RootDatum::adjoint(Family::B, 3);
        let v = vec![-2, 1, -1];
        let (dom, u) = dominant_rep(&d, &v);
        assert!(is_dominant(&d, &dom));
        assert_eq!(u.act(&d, &v), dom);
    }

    #[test]
    fn coroot_order() {
        let d = RootDatum::adjoint(Family::A, 2);
        let a1 = d.simple_coroot(0);
        assert!(leq(&d, &d.zero(), &a1));
        assert!(!leq(&d, &a1, &d.zero()));
        // fundamental coweight is not in Q^vee
        assert!(!leq(&d, &d.zero(), &d.fundamental(0)));
        assert!(leq_in(&d, &d.zero(), &a1, Subset::single(0)));
        assert!(!leq_in(&d, &d.zero(), &a1, Subset::single(1)));
        assert!(leq_mod(&d, &a1, &d.zero(), Subset::single(0)));
    }

    #[test]
    fn condition_c_examples() {
        let d = RootDatum::adjoint(Family::A, 3);
        assert!(condition_c(&d, &[-1, 1, -1]));
        assert!(!condition_c(&d, &[-1, 0, -1]));
        assert!(!condition_c(&d, &[-2, 3, 0]));
    }

    #[test]
    fn root_conjugates() {
        let d = RootDatum::adjoint(Family::A, 3);
        let j = Subset::from_indices([0, 2]);
        let g = d.root_index(&[1, 1, 1]).unwrap();
        assert_eq!(d.root(root_j_antidominant(&d, g, j)), &[0, 1, 0]);
        assert_eq!(root_j_dominant(&d, d.simple(1), j), g);
    }
}
