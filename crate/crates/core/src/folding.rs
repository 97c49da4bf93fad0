//! Non-simply-laced groups as fixed points of a diagram involution `iota` on a
//! simply-laced ambient datum.
//!
//! Ambient coweights are adjoint (fundamental-coweight coordinates).  A folded
//! simple root is an `iota`-orbit `O` of ambient simple roots with
//! `underline(alpha_i) = (alpha_i + alpha_{iota i}) / 2`; its reflection is
//! `r_O = prod_{i in O} s_i` and its coroot is `sum_{i in O} alpha_i^vee`.
//! The `iota`-fixed ambient coweights are exactly the folded coweights, with
//! `v_O = v'_i` for any `i in O`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::affine::Elem;
use crate::cartan::{self, Family};
use crate::coweight;
use crate::error::{Error, Result};
use crate::root_datum::{Coweight, Int, Isogeny, RootDatum, RootId};
use crate::subset::Subset;
use crate::weyl::{self, Weyl};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldDescriptor {
    pub ambient: String,
    pub iota: String,
}

#[derive(Clone, Debug)]
pub struct FoldingDatum {
    pub ambient: RootDatum,
    /// `iota` on ambient simple indices.
    pub iota: Vec<usize>,
    iota_root: Vec<RootId>,
    /// Ambient simple indices of each folded simple root.
    pub orbits: Vec<Vec<usize>>,
    orbit_of: Vec<usize>,
    pub folded: RootDatum,
    pub folded_cartan: Vec<Vec<Int>>,
    /// A standard type whose Cartan matrix equals `folded_cartan`, if any.
    pub identified: Option<String>,
    underline: Vec<RootId>,
}

fn standard_iota(f: Family, n: usize) -> Result<Vec<usize>> {
    match f {
        Family::A if n >= 3 && n % 2 == 1 => Ok((0..n).map(|i| n - 1 - i).collect()),
        Family::D if n >= 4 => {
            let mut v: Vec<usize> = (0..n).collect();
            v.swap(n - 2, n - 1);
            Ok(v)
        }
        Family::E if n == 6 => Ok(vec![5, 1, 4, 3, 2, 0]),
        _ => Err(Error::Domain(format!("no standard involution on {}{}", f.letter(), n))),
    }
}

/// `<sum_{i in O} alpha_i^vee, underline(alpha_P)>` in the ambient datum.
fn folded_entry(a: &RootDatum, o: &[usize], p: &[usize]) -> Int {
    let s: Int = o.iter().map(|&i| p.iter().map(|&j| a.cartan[i][j]).sum::<Int>()).sum();
    if p.len() == 2 {
        s / 2
    } else {
        s
    }
}

impl FoldingDatum {
    pub fn new(family: Family, rank: usize) -> Result<FoldingDatum> {
        let iota = standard_iota(family, rank)?;
        let ambient = RootDatum::adjoint(family, rank);
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for i in 0..rank {
            if iota[i] >= i {
                orbits.push(if iota[i] == i { vec![i] } else { vec![i, iota[i]] });
            }
        }
        let m = orbits.len();
        let raw: Vec<Vec<Int>> =
            (0..m).map(|o| (0..m).map(|p| folded_entry(&ambient, &orbits[o], &orbits[p])).collect()).collect();
        // reorder the orbits to a standard labelling when one matches
        let mut identified = None;
        'outer: for f in [Family::B, Family::C, Family::F] {
            let Ok(std) = cartan::cartan(f, m) else { continue };
            for perm in permutations(m) {
                if (0..m).all(|i| (0..m).all(|j| raw[perm[i]][perm[j]] == std[i][j])) {
                    orbits = perm.iter().map(|&k| orbits[k].clone()).collect();
                    identified = Some((f, m));
                    break 'outer;
                }
            }
        }
        let folded_cartan: Vec<Vec<Int>> =
            (0..m).map(|o| (0..m).map(|p| folded_entry(&ambient, &orbits[o], &orbits[p])).collect()).collect();
        let mut folded = RootDatum::from_cartan(folded_cartan.clone(), Isogeny::Adjoint)?;
        if let Some((f, _)) = identified {
            folded.family = Some(f);
        }
        let mut orbit_of = vec![0; rank];
        for (k, o) in orbits.iter().enumerate() {
            for &i in o {
                orbit_of[i] = k;
            }
        }
        let iota_root = (0..ambient.nroots())
            .map(|a| {
                let r = ambient.root(a);
                let c: Vec<Int> = (0..rank).map(|i| r[iota[i]]).collect();
                ambient.root_index(&c).expect("iota permutes roots")
            })
            .collect();
        let underline = (0..ambient.nroots())
            .map(|a| {
                let r = ambient.root(a);
                let c: Vec<Int> = orbits.iter().map(|o| o.iter().map(|&i| r[i]).sum()).collect();
                folded.root_index(&c).expect("underline of a root is a root")
            })
            .collect();
        Ok(FoldingDatum {
            ambient,
            iota,
            iota_root,
            orbits,
            orbit_of,
            folded,
            folded_cartan,
            identified: identified.map(|(f, m)| format!("{}{}", f.letter(), m)),
            underline,
        })
    }

    pub fn from_descriptor(desc: &FoldDescriptor) -> Result<FoldingDatum> {
        if desc.iota != "standard" {
            return Err(Error::Domain(format!("unknown involution {:?}", desc.iota)));
        }
        let (f, n) = cartan::parse_label(&desc.ambient)?;
        FoldingDatum::new(f, n)
    }

    pub fn descriptor(&self) -> FoldDescriptor {
        FoldDescriptor { ambient: self.ambient.label(), iota: "standard".into() }
    }

    pub fn iota_root(&self, a: RootId) -> RootId {
        self.iota_root[a]
    }

    pub fn iota_vec(&self, v: &[Int]) -> Vec<Int> {
        (0..v.len()).map(|i| v[self.iota[i]]).collect()
    }

    pub fn iota_set(&self, j: Subset) -> Subset {
        Subset::from_indices(j.iter().map(|i| self.iota[i]))
    }

    /// `iota w iota`.
    pub fn iota_weyl(&self, w: &Weyl) -> Weyl {
        let word: Vec<usize> = w.word(&self.ambient).iter().map(|&i| self.iota[i]).collect();
        Weyl::from_word(&self.ambient, &word)
    }

    pub fn is_fixed_weyl(&self, w: &Weyl) -> bool {
        (0..self.ambient.rank).all(|i| w.apply(self.iota[i]) == self.iota_root[w.apply(i)])
    }

    /// The folded root `underline(a)`.
    pub fn underline(&self, a: RootId) -> RootId {
        self.underline[a]
    }

    /// `r_a = s_a s_{iota a}` (or `s_a` when `a` is fixed).
    pub fn r(&self, a: RootId) -> Weyl {
        let d = &self.ambient;
        let b = self.iota_root[a];
        if b == a {
            d.reflection(d.abs(a)).clone()
        } else {
            d.reflection(d.abs(a)).mul(d.reflection(d.abs(b)))
        }
    }

    /// `J' = {i : underline(alpha_i) in J}`.
    pub fn j_prime(&self, j: Subset) -> Subset {
        Subset::from_indices(j.iter().flat_map(|o| self.orbits[o].iter().copied()))
    }

    pub fn embed_coweight(&self, v: &[Int]) -> Coweight {
        self.orbit_of.iter().map(|&o| v[o]).collect()
    }

    pub fn project_coweight(&self, v: &[Int]) -> Option<Coweight> {
        if self.iota_vec(v) != v {
            return None;
        }
        Some(self.orbits.iter().map(|o| v[o[0]]).collect())
    }

    pub fn embed_weyl(&self, w: &Weyl) -> Weyl {
        let word: Vec<usize> = w.word(&self.folded).iter().flat_map(|&o| self.orbits[o].iter().copied()).collect();
        Weyl::from_word(&self.ambient, &word)
    }

    /// The folded element of an `iota`-fixed ambient Weyl element.
    pub fn project_weyl(&self, w: &Weyl) -> Option<Weyl> {
        if !self.is_fixed_weyl(w) {
            return None;
        }
        let a = &self.ambient;
        let mut w = w.clone();
        let mut word = Vec::new();
        while let Some(o) = (0..self.orbits.len()).find(|&o| !a.is_positive(w.apply(self.orbits[o][0]))) {
            word.push(o);
            for &i in &self.orbits[o] {
                w = w.mul(a.s(i));
            }
        }
        word.reverse();
        Some(Weyl::from_word(&self.folded, &word))
    }

    pub fn embed_elem(&self, x: &Elem) -> Elem {
        Elem::new(self.embed_coweight(&x.mu), self.embed_weyl(&x.w))
    }

    pub fn project_elem(&self, x: &Elem) -> Option<Elem> {
        Some(Elem::new(self.project_coweight(&x.mu)?, self.project_weyl(&x.w)?))
    }

    /// `iota`-fixed minimal coset representatives of `W_0' / W_{J'}`.
    pub fn folded_coset_reps(&self, jp: Subset) -> Result<Vec<Weyl>> {
        if self.iota_set(jp) != jp {
            return Err(Error::Domain("J' is not iota-stable".into()));
        }
        Ok(weyl::coset_reps(&self.ambient, jp).into_iter().filter(|z| self.is_fixed_weyl(z)).collect())
    }

    /// `A_phi = {gamma : z(gamma) < 0, gamma - phi in Z Phi'_{J'}}` and its `J'`-antidominant member.
    pub fn a_phi(&self, z: &Weyl, jp: Subset, phi: &[Int]) -> Result<(Vec<RootId>, Option<RootId>)> {
        let d = &self.ambient;
        if in_span(phi, jp) {
            return Err(Error::Domain("phi lies in Z Phi'_{J'}".into()));
        }
        let same_outside = |g: RootId| d.root(g).iter().zip(phi).enumerate().all(|(i, (r, p))| r == p || jp.contains(i));
        let set: Vec<RootId> = (0..d.nroots()).filter(|&g| same_outside(g) && !d.is_positive(z.apply(g))).collect();
        let anti: Vec<RootId> =
            set.iter().copied().filter(|&g| coweight::is_root_j_antidominant(d, g, jp)).collect();
        if anti.len() > 1 {
            return Err(Error::Invalid(format!("A_phi has {} J'-antidominant members", anti.len())));
        }
        Ok((set, anti.first().copied()))
    }

    pub fn fixed_part(&self, set: &[RootId]) -> Vec<RootId> {
        set.iter().copied().filter(|&g| self.iota_root[g] == g).collect()
    }

    pub fn wedge_roots(&self, a: RootId, b: RootId) -> Vec<Int> {
        wedge(self.ambient.root(a), self.ambient.root(b))
    }

    /// A root `gamma` with `z s_gamma, z r_gamma` in `(W_0')^{J'}`, chosen as in the two cases.
    pub fn o3_select(&self, z: &Weyl, jp: Subset, phi: &[Int]) -> Result<O3Choice> {
        let d = &self.ambient;
        let (set, _) = self.a_phi(z, jp, phi)?;
        let fixed = self.fixed_part(&set);
        let maxes = coweight::max_j(d, &set, jp);
        let (case, cands): (u8, Vec<RootId>) = if !fixed.is_empty() {
            let fmax = coweight::max_j(d, &fixed, jp);
            let c = maxes
                .iter()
                .copied()
                .filter(|&g| {
                    d.root_index(&self.wedge_roots(g, self.iota_root[g])).is_some_and(|x| fmax.contains(&x))
                })
                .collect();
            (1, c)
        } else {
            let sum = crate::coweight::add(phi, &self.iota_vec(phi));
            let empty = in_span(&sum, jp) || self.a_phi(z, jp, &sum)?.0.is_empty();
            if !empty || set.is_empty() {
                return Err(Error::Domain("neither selection case applies".into()));
            }
            (2, maxes)
        };
        let gamma = *cands.iter().min_by_key(|&&g| (d.height(g), g)).ok_or(Error::SearchBound)?;
        let zs = z.mul(d.reflection(d.abs(gamma)));
        let zr = z.mul(&self.r(gamma));
        Ok(O3Choice {
            gamma,
            case,
            candidates: cands,
            zs_min: zs.is_min_coset_rep(d, jp),
            zr_min: zr.is_min_coset_rep(d, jp),
        })
    }

    /// `u in W_{J' - fixed}` with `iota(u) = u` and `u(alpha) = gamma`, built as `y iota(y)`.
    pub fn o0_decompose(&self, z: &Weyl, jp: Subset, alpha: usize, gamma: RootId) -> Result<Weyl> {
        let d = &self.ambient;
        if self.iota[alpha] == alpha {
            return Err(Error::Domain("alpha is iota-fixed".into()));
        }
        let sum = crate::coweight::add(d.root(alpha), d.root(self.iota[alpha]));
        if !self.a_phi(z, jp, &sum)?.0.is_empty() {
            return Err(Error::Domain("A_{alpha + iota(alpha)} is nonempty".into()));
        }
        let (set, _) = self.a_phi(z, jp, d.root(alpha))?;
        if !set.contains(&gamma) {
            return Err(Error::Domain("gamma is not in A_alpha".into()));
        }
        let fixed = Subset::from_indices((0..d.rank).filter(|&i| self.iota[i] == i));
        if !d.support(gamma).inter(fixed).is_empty() {
            return Err(Error::Invalid("supp(gamma) meets the iota-fixed simple roots".into()));
        }
        let comp = d
            .components(d.full().minus(fixed))
            .into_iter()
            .find(|c| c.contains(alpha))
            .expect("alpha is not fixed");
        let gens = jp.inter(comp);
        // y in W_{gens} with y(alpha) = gamma
        let mut prev: HashMap<RootId, (RootId, usize)> = HashMap::new();
        let mut queue = VecDeque::from([alpha]);
        let mut seen = HashSet::from([alpha]);
        while let Some(b) = queue.pop_front() {
            if b == gamma {
                break;
            }
            for i in gens.iter() {
                let c = d.s(i).apply(b);
                if seen.insert(c) {
                    prev.insert(c, (b, i));
                    queue.push_back(c);
                }
            }
        }
        if !seen.contains(&gamma) {
            return Err(Error::Invalid("gamma is not in the W_{J' cap C}-orbit of alpha".into()));
        }
        let mut word = Vec::new();
        let mut cur = gamma;
        while let Some(&(p, i)) = prev.get(&cur) {
            word.push(i);
            cur = p;
        }
        word.reverse();
        // y = s_{last} ... s_{first}
        let y = Weyl::from_word(d, &word.iter().rev().copied().collect::<Vec<_>>());
        Ok(y.mul(&self.iota_weyl(&y)))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct O3Choice {
    pub gamma: RootId,
    /// 1 when the fixed part of `A_phi` is nonempty, 2 when `A_{phi + iota(phi)}` is empty.
    pub case: u8,
    pub candidates: Vec<RootId>,
    pub zs_min: bool,
    pub zr_min: bool,
}

/// Coefficient-wise minimum.
pub fn wedge(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()
}

/// Whether a root-coordinate vector lies in `Z Phi_J`.
pub fn in_span(v: &[Int], j: Subset) -> bool {
    v.iter().enumerate().all(|(i, &c)| c == 0 || j.contains(i))
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::new();
        for p in &out {
            for x in (0..m).filter(|x| !p.contains(x)) {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}
