//! Root data for simple groups.
//!
//! Coweights are stored by their values on the simple roots, `v[j] = <v, alpha_j>`.
//! These coordinates are integral on all of `P^vee`; the simple coroot
//! `alpha_i^vee` is row `i` of the Cartan matrix.  Roots are stored in
//! simple-root coordinates and referred to by index: `0..N` are the positive
//! roots (height order, simple roots first in label order) and `N + i` is the
//! negative of root `i`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cartan::{self, Family};
use crate::error::{Error, Result};
use crate::snf;
use crate::subset::Subset;
use crate::weyl::Weyl;

pub type Int = i64;
pub type Coweight = Vec<Int>;
pub type RootId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Isogeny {
    Adjoint,
    SimplyConnected,
    /// `Y` is spanned by `Q^vee` and these coweights.
    Intermediate(Vec<Coweight>),
}

/// Serializable description of a root datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumConfig {
    #[serde(rename = "type")]
    pub label: String,
    pub isogeny: Isogeny,
}

const NONE: u16 = u16::MAX;

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub family: Option<Family>,
    pub rank: usize,
    pub cartan: Vec<Vec<Int>>,
    pub isogeny: Isogeny,
    /// `sym[i] = (alpha_i, alpha_i) / 2` up to a common scalar, minimal integral.
    pub sym: Vec<Int>,
    npos: usize,
    roots: Vec<Vec<Int>>,
    coroot_fund: Vec<Vec<Int>>,
    coroot_coords: Vec<Vec<Int>>,
    norm: Vec<Int>,
    height: Vec<Int>,
    index: HashMap<Vec<Int>, RootId>,
    sum: Vec<u16>,
    refl: Vec<Weyl>,
    highest: RootId,
    inv_t: Vec<Vec<Int>>,
    det: Int,
    adj: Vec<Vec<usize>>,
    dist: Vec<Vec<usize>>,
    snf_d: Vec<Int>,
    snf_v: Vec<Vec<Int>>,
    pi1: Vec<Vec<Int>>,
}

impl RootDatum {
    pub fn new(family: Family, rank: usize, isogeny: Isogeny) -> Result<RootDatum> {
        let c = cartan::cartan(family, rank)?;
        let mut d = Self::from_cartan(c, isogeny)?;
        d.family = Some(family);
        Ok(d)
    }

    pub fn adjoint(family: Family, rank: usize) -> RootDatum {
        Self::new(family, rank, Isogeny::Adjoint).expect("valid type")
    }

    pub fn simply_connected(family: Family, rank: usize) -> RootDatum {
        Self::new(family, rank, Isogeny::SimplyConnected).expect("valid type")
    }

    pub fn from_config(cfg: &DatumConfig) -> Result<RootDatum> {
        let (f, n) = cartan::parse_label(&cfg.label)?;
        Self::new(f, n, cfg.isogeny.clone())
    }

    pub fn config(&self) -> DatumConfig {
        DatumConfig { label: self.label(), isogeny: self.isogeny.clone() }
    }

    pub fn label(&self) -> String {
        match self.family {
            Some(f) => format!("{}{}", f.letter(), self.rank),
            None => format!("cartan{:?}", self.cartan),
        }
    }

    pub fn is_type(&self, f: Family) -> bool {
        self.family == Some(f)
    }

    /// Builds the datum of an irreducible Cartan matrix.
    pub fn from_cartan(c: Vec<Vec<Int>>, isogeny: Isogeny) -> Result<RootDatum> {
        let n = c.len();
        if n == 0 || n > 16 || c.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidDatum("Cartan matrix must be square of size 1..16".into()));
        }
        for i in 0..n {
            if c[i][i] != 2 {
                return Err(Error::InvalidDatum("diagonal entries must be 2".into()));
            }
            for j in 0..n {
                if i != j && (c[i][j] > 0 || (c[i][j] == 0) != (c[j][i] == 0)) {
                    return Err(Error::InvalidDatum("not a generalized Cartan matrix".into()));
                }
            }
        }
        let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| j != i && c[i][j] != 0).collect()).collect();
        // symmetrizer along the Dynkin graph
        let mut symq: Vec<Option<(i64, i64)>> = vec![None; n];
        symq[0] = Some((1, 1));
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (p, q) = symq[i].unwrap();
            for &j in &adj[i] {
                // d_j = d_i c[i][j] / c[j][i]
                let (np, nq) = (p * c[i][j], q * c[j][i]);
                let g = num_integer::gcd(np, nq);
                let (np, nq) = (np / g * nq.signum(), (nq / g).abs());
                match symq[j] {
                    None => {
                        symq[j] = Some((np, nq));
                        queue.push_back(j);
                    }
                    Some(x) if x != (np, nq) => {
                        return Err(Error::InvalidDatum("Cartan matrix is not symmetrizable".into()))
                    }
                    _ => {}
                }
            }
        }
        if symq.iter().any(|x| x.is_none()) {
            return Err(Error::InvalidDatum("Dynkin diagram is not connected".into()));
        }
        let l = symq.iter().fold(1i64, |a, x| num_integer::lcm(a, x.unwrap().1));
        let mut sym: Vec<i64> = symq.iter().map(|x| x.unwrap().0 * l / x.unwrap().1).collect();
        let g = sym.iter().fold(0i64, |a, &x| num_integer::gcd(a, x));
        sym.iter_mut().for_each(|x| *x /= g);

        // positive roots by root strings
        let mut pos: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let mut set: HashSet<Vec<i64>> = pos.iter().cloned().collect();
        let mut layer: Vec<Vec<i64>> = pos.clone();
        while !layer.is_empty() {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for b in &layer {
                for i in 0..n {
                    let mut up = b.clone();
                    up[i] += 1;
                    if set.contains(&up) {
                        continue;
                    }
                    let mut p = 0;
                    let mut down = b.clone();
                    loop {
                        down[i] -= 1;
                        if set.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pair: i64 = (0..n).map(|j| c[i][j] * b[j]).sum();
                    if p - pair > 0 {
                        set.insert(up.clone());
                        next.push(up);
                    }
                }
                if set.len() > 20000 {
                    return Err(Error::InvalidDatum("Cartan matrix is not of finite type".into()));
                }
            }
            next.sort_by(|a, b| b.cmp(a));
            pos.extend(next.iter().cloned());
            layer = next;
        }
        let np = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let height: Vec<i64> = roots.iter().map(|r| r.iter().sum()).collect();
        // (alpha, alpha)/2 in units of sym
        let norm: Vec<i64> = roots
            .iter()
            .map(|r| {
                let mut s = 0;
                for i in 0..n {
                    for j in 0..n {
                        s += r[i] * r[j] * sym[i] * c[i][j];
                    }
                }
                s / 2
            })
            .collect();
        let coroot_coords: Vec<Vec<i64>> = roots
            .iter()
            .zip(&norm)
            .map(|(r, &d)| (0..n).map(|i| r[i] * sym[i] / d).collect())
            .collect();
        let coroot_fund: Vec<Vec<i64>> = coroot_coords
            .iter()
            .map(|x| (0..n).map(|j| (0..n).map(|i| x[i] * c[i][j]).sum()).collect())
            .collect();
        let m2 = 2 * np;
        let mut sum = vec![NONE; m2 * m2];
        for a in 0..m2 {
            for b in 0..m2 {
                let s: Vec<i64> = (0..n).map(|k| roots[a][k] + roots[b][k]).collect();
                if let Some(&k) = index.get(&s) {
                    sum[a * m2 + b] = k as u16;
                }
            }
        }
        let refl: Vec<Weyl> = (0..np)
            .map(|a| {
                let img: Vec<u16> = (0..m2)
                    .map(|b| {
                        let p: i64 = (0..n).map(|k| coroot_fund[a][k] * roots[b][k]).sum();
                        let r: Vec<i64> = (0..n).map(|k| roots[b][k] - p * roots[a][k]).collect();
                        index[&r] as u16
                    })
                    .collect();
                Weyl::from_img(img)
            })
            .collect();
        let highest = np - 1;
        let ct: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| c[j][i]).collect()).collect();
        let det = snf::det(&ct);
        let inv_t = snf::adjugate(&ct);
        let mut dist = vec![vec![usize::MAX; n]; n];
        for s in 0..n {
            dist[s][s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(i) = q.pop_front() {
                for &j in &adj[i] {
                    if dist[s][j] == usize::MAX {
                        dist[s][j] = dist[s][i] + 1;
                        q.push_back(j);
                    }
                }
            }
        }
        let (dd, _u, v) = snf::smith(&c);
        let keep: Vec<usize> = (0..n).filter(|&k| dd[k] > 1).collect();
        let snf_d: Vec<i64> = keep.iter().map(|&k| dd[k]).collect();
        let snf_v: Vec<Vec<i64>> = (0..n).map(|i| keep.iter().map(|&k| v[i][k]).collect()).collect();
        let mut d = RootDatum {
            family: None,
            rank: n,
            cartan: c,
            isogeny: Isogeny::Adjoint,
            sym,
            npos: np,
            roots,
            coroot_fund,
            coroot_coords,
            norm,
            height,
            index,
            sum,
            refl,
            highest,
            inv_t,
            det,
            adj,
            dist,
            snf_d,
            snf_v,
            pi1: Vec::new(),
        };
        d.set_isogeny(isogeny)?;
        Ok(d)
    }

    fn set_isogeny(&mut self, iso: Isogeny) -> Result<()> {
        let n = self.rank;
        let gens: Vec<Vec<i64>> = match &iso {
            Isogeny::Adjoint => (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect(),
            Isogeny::SimplyConnected => Vec::new(),
            Isogeny::Intermediate(g) => {
                for v in g {
                    if v.len() != n {
                        return Err(Error::Dimension { expected: n, got: v.len() });
                    }
                }
                g.clone()
            }
        };
        let zero = vec![0i64; self.snf_d.len()];
        let mut group: Vec<Vec<i64>> = vec![zero.clone()];
        let mut seen: HashSet<Vec<i64>> = HashSet::from([zero]);
        let images: Vec<Vec<i64>> = gens.iter().map(|g| self.pi1_class(g)).collect();
        let mut i = 0;
        while i < group.len() {
            for im in &images {
                let s: Vec<i64> = group[i]
                    .iter()
                    .zip(im)
                    .zip(&self.snf_d)
                    .map(|((a, b), m)| (a + b).rem_euclid(*m))
                    .collect();
                if seen.insert(s.clone()) {
                    group.push(s);
                }
            }
            i += 1;
        }
        group.sort();
        self.pi1 = group;
        self.isogeny = iso;
        Ok(())
    }

    pub fn npos(&self) -> usize {
        self.npos
    }

    pub fn nroots(&self) -> usize {
        2 * self.npos
    }

    pub fn root(&self, a: RootId) -> &[Int] {
        &self.roots[a]
    }

    pub fn is_positive(&self, a: RootId) -> bool {
        a < self.npos
    }

    pub fn neg(&self, a: RootId) -> RootId {
        if a < self.npos {
            a + self.npos
        } else {
            a - self.npos
        }
    }

    /// Positive root in `{a, -a}`.
    pub fn abs(&self, a: RootId) -> RootId {
        if a < self.npos {
            a
        } else {
            a - self.npos
        }
    }

    pub fn simple(&self, i: usize) -> RootId {
        i
    }

    pub fn highest_root(&self) -> RootId {
        self.highest
    }

    pub fn height(&self, a: RootId) -> Int {
        self.height[a]
    }

    /// `(alpha, alpha) / 2` in the normalization where `sym` is minimal.
    pub fn norm(&self, a: RootId) -> Int {
        self.norm[a]
    }

    pub fn is_simply_laced(&self) -> bool {
        self.sym.iter().all(|&s| s == self.sym[0])
    }

    pub fn root_index(&self, coords: &[Int]) -> Option<RootId> {
        self.index.get(coords).copied()
    }

    /// Index of `a + b` if it is a root.
    pub fn add(&self, a: RootId, b: RootId) -> Option<RootId> {
        let k = self.sum[a * 2 * self.npos + b];
        (k != NONE).then_some(k as usize)
    }

    /// Index of `a - b` if it is a root.
    pub fn sub(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.add(a, self.neg(b))
    }

    /// The coroot of `a` as a coweight.
    pub fn coroot(&self, a: RootId) -> &[Int] {
        &self.coroot_fund[a]
    }

    /// The coroot of `a` in simple-coroot coordinates.
    pub fn coroot_coords(&self, a: RootId) -> &[Int] {
        &self.coroot_coords[a]
    }

    pub fn pair(&self, v: &[Int], a: RootId) -> Int {
        v.iter().zip(&self.roots[a]).map(|(x, y)| x * y).sum()
    }

    /// `<a^vee, b>`.
    pub fn cartan_int(&self, a: RootId, b: RootId) -> Int {
        self.pair(&self.coroot_fund[a], b)
    }

    /// Symmetric form `(a, b)`, in the units of `sym`, doubled.
    pub fn form(&self, a: &[Int], b: &[Int]) -> Int {
        let n = self.rank;
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += a[i] * b[j] * self.sym[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// Reflection in the root `a` (any sign).
    pub fn reflection(&self, a: RootId) -> &Weyl {
        &self.refl[self.abs(a)]
    }

    pub fn s(&self, i: usize) -> &Weyl {
        &self.refl[i]
    }

    pub fn dynkin_neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn dynkin_dist(&self, i: usize, j: usize) -> usize {
        self.dist[i][j]
    }

    /// The unique shortest path from `i` to `j` in the Dynkin diagram, inclusive.
    pub fn geodesic(&self, i: usize, j: usize) -> Vec<usize> {
        let mut path = vec![i];
        let mut cur = i;
        while cur != j {
            cur = *self.adj[cur]
                .iter()
                .find(|&&k| self.dist[k][j] + 1 == self.dist[cur][j])
                .expect("connected diagram");
            path.push(cur);
        }
        path
    }

    pub fn zero(&self) -> Coweight {
        vec![0; self.rank]
    }

    pub fn fundamental(&self, i: usize) -> Coweight {
        (0..self.rank).map(|j| (i == j) as Int).collect()
    }

    pub fn simple_coroot(&self, i: usize) -> Coweight {
        self.cartan[i].clone()
    }

    /// Coweight with the given simple-coroot coordinates.
    pub fn from_coroot_coords(&self, x: &[Int]) -> Coweight {
        let n = self.rank;
        (0..n).map(|j| (0..n).map(|i| x[i] * self.cartan[i][j]).sum()).collect()
    }

    /// Simple-coroot coordinates of `v` as numerators over `denominator()`.
    pub fn coroot_coords_scaled(&self, v: &[Int]) -> Vec<Int> {
        let n = self.rank;
        (0..n).map(|i| (0..n).map(|j| self.inv_t[i][j] * v[j]).sum()).collect()
    }

    pub fn denominator(&self) -> Int {
        self.det
    }

    /// Simple-coroot coordinates of `v` if `v` lies in `Q^vee`.
    pub fn to_coroot_coords(&self, v: &[Int]) -> Option<Vec<Int>> {
        let s = self.coroot_coords_scaled(v);
        let d = self.det;
        s.iter().map(|&x| (x % d == 0).then_some(x / d)).collect()
    }

    /// Invariant factors of `P^vee / Q^vee` greater than one.
    pub fn pi1_factors(&self) -> &[Int] {
        &self.snf_d
    }

    /// Class of a coweight in `P^vee / Q^vee`, as residues modulo `pi1_factors`.
    pub fn pi1_class(&self, v: &[Int]) -> Vec<Int> {
        (0..self.snf_d.len())
            .map(|k| {
                let s: i64 = (0..self.rank).map(|i| v[i] * self.snf_v[i][k]).sum();
                s.rem_euclid(self.snf_d[k])
            })
            .collect()
    }

    /// Elements of `pi_1 = Y / Q^vee`, sorted.
    pub fn pi1_elements(&self) -> &[Vec<Int>] {
        &self.pi1
    }

    pub fn in_lattice(&self, v: &[Int]) -> bool {
        v.len() == self.rank && self.pi1.binary_search(&self.pi1_class(v)).is_ok()
    }

    pub fn check_lattice(&self, v: &[Int]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::Dimension { expected: self.rank, got: v.len() });
        }
        if !self.in_lattice(v) {
            return Err(Error::NotInLattice);
        }
        Ok(())
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.rank)
    }

    /// Support of a root.
    pub fn support(&self, a: RootId) -> Subset {
        Subset::from_indices((0..self.rank).filter(|&i| self.roots[a][i] != 0))
    }

    pub fn in_subsystem(&self, a: RootId, j: Subset) -> bool {
        self.support(a).is_subset(j)
    }

    /// Positive roots of the subsystem spanned by `j`.
    pub fn positive_roots_in(&self, j: Subset) -> Vec<RootId> {
        (0..self.npos).filter(|&a| self.in_subsystem(a, j)).collect()
    }

    /// Connected components of `j` in the Dynkin diagram.
    pub fn components(&self, j: Subset) -> Vec<Subset> {
        let mut left = j;
        let mut out = Vec::new();
        while let Some(s) = left.iter().next() {
            let mut comp = Subset::single(s);
            let mut stack = vec![s];
            while let Some(i) = stack.pop() {
                for &k in &self.adj[i] {
                    if j.contains(k) && !comp.contains(k) {
                        comp.insert(k);
                        stack.push(k);
                    }
                }
            }
            left = left.minus(comp);
            out.push(comp);
        }
        out
    }

    /// Highest root of a connected subset.
    pub fn highest_root_in(&self, h: Subset) -> RootId {
        *self.positive_roots_in(h).iter().max_by_key(|&&a| self.height[a]).expect("nonempty")
    }

    /// Coefficient sum restricted to `j` (the `j`-part of a root in simple-root coordinates).
    pub fn restrict(&self, a: RootId, j: Subset) -> Vec<Int> {
        (0..self.rank).map(|i| if j.contains(i) { self.roots[a][i] } else { 0 }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(f: Family, n: usize) -> usize {
        RootDatum::adjoint(f, n).npos()
    }

    #[test]
    fn positive_root_counts() {
        for n in 1..=7 {
            assert_eq!(count(Family::A, n), n * (n + 1) / 2);
        }
        for n in 2..=6 {
            assert_eq!(count(Family::B, n), n * n);
            assert_eq!(count(Family::C, n), n * n);
        }
        for n in 4..=7 {
            assert_eq!(count(Family::D, n), n * (n - 1));
        }
        assert_eq!(count(Family::E, 6), 36);
        assert_eq!(count(Family::E, 7), 63);
        assert_eq!(count(Family::E, 8), 120);
        assert_eq!(count(Family::F, 4), 24);
        assert_eq!(count(Family::G, 2), 6);
    }

    #[test]
    fn highest_roots() {
        let e8 = RootDatum::adjoint(Family::E, 8);
        assert_eq!(e8.root(e8.highest_root()), &[2, 3, 4, 6, 5, 4, 3, 2]);
        let g2 = RootDatum::adjoint(Family::G, 2);
        // alpha_1 short, alpha_2 long: highest root 3a1 + 2a2
        assert_eq!(g2.root(g2.highest_root()), &[3, 2]);
        let f4 = RootDatum::adjoint(Family::F, 4);
        assert_eq!(f4.root(f4.highest_root()), &[2, 3, 4, 2]);
        let b3 = RootDatum::adjoint(Family::B, 3);
        assert_eq!(b3.root(b3.highest_root()), &[1, 2, 2]);
        let c3 = RootDatum::adjoint(Family::C, 3);
        assert_eq!(c3.root(c3.highest_root()), &[2, 2, 1]);
    }

    #[test]
    fn simple_roots_first() {
        let d = RootDatum::adjoint(Family::E, 6);
        for i in 0..6 {
            assert_eq!(d.root(i), d.fundamental(i).as_slice());
        }
    }

    #[test]
    fn coroots_pair_to_two() {
        for (f, n) in [(Family::B, 3), (Family::C, 4), (Family::F, 4), (Family::G, 2), (Family::E, 7)] {
            let d = RootDatum::adjoint(f, n);
            for a in 0..d.nroots() {
                assert_eq!(d.cartan_int(a, a), 2);
                assert!(d.to_coroot_coords(d.coroot(a)).is_some());
            }
        }
    }

    #[test]
    fn fundamental_group_orders() {
        let cases = [
            (Family::A, 3, 4),
            (Family::B, 3, 2),
            (Family::C, 3, 2),
            (Family::D, 4, 4),
            (Family::D, 5, 4),
            (Family::E, 6, 3),
            (Family::E, 7, 2),
            (Family::E, 8, 1),
            (Family::F, 4, 1),
            (Family::G, 2, 1),
        ];
        for (f, n, k) in cases {
            let d = RootDatum::adjoint(f, n);
            assert_eq!(d.pi1_elements().len(), k, "{f:?}{n}");
            assert_eq!(RootDatum::simply_connected(f, n).pi1_elements().len(), 1);
        }
        // D4 has P/Q = Z/2 x Z/2
        assert_eq!(RootDatum::adjoint(Family::D, 4).pi1_factors(), &[2, 2]);
    }

    #[test]
    fn intermediate_lattice() {
        // SO(8)-like: Y generated by Q^vee and omega_1^vee
        let d = RootDatum::new(Family::D, 4, Isogeny::Intermediate(vec![vec![1, 0, 0, 0]])).unwrap();
        assert_eq!(d.pi1_elements().len(), 2);
        assert!(d.in_lattice(&[1, 0, 0, 0]));
        assert!(!d.in_lattice(&[0, 0, 1, 0]));
        assert!(d.in_lattice(&d.simple_coroot(2)));
    }

    #[test]
    fn geodesics_in_e8() {
        let d = RootDatum::adjoint(Family::E, 8);
        assert_eq!(d.geodesic(0, 1), vec![0, 2, 3, 1]);
        assert_eq!(d.geodesic(7, 4), vec![7, 6, 5, 4]);
    }
}
