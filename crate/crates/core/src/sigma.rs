//! Short elements, Hodge-Newton classification and the set `C_{lambda,J,b}`.

use serde::{Deserialize, Serialize};

use crate::admissible::AdmOracle;
use crate::affine::{self, Elem, Levi};
use crate::cartan::Family;
use crate::coweight::{self, RationalCoweight};
use crate::error::{Error, Result};
use crate::root_datum::{Coweight, Int, RootDatum, RootId};
use crate::snf;
use crate::subset::Subset;
use crate::weyl::{self, Weyl};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShortDatum {
    pub wtilde: Elem,
    pub mu: Coweight,
    pub nu: RationalCoweight,
    pub j_nu: Subset,
    pub j: Subset,
    pub k: Subset,
    pub w: Weyl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShortDatumRepr {
    pub mu: Coweight,
    #[serde(rename = "J_nu")]
    pub j_nu: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
    pub nu: RationalCoweight,
}

/// Components of `j_nu` on which `mu` is noncentral.
pub fn noncentral_part(d: &RootDatum, mu: &[Int], j_nu: Subset) -> Subset {
    d.components(j_nu)
        .into_iter()
        .filter(|h| h.iter().any(|i| mu[i] != 0))
        .fold(Subset::EMPTY, Subset::union)
}

pub fn is_short(d: &RootDatum, x: &Elem) -> bool {
    let nu = x.newton(d);
    if !nu.is_dominant(d) {
        return false;
    }
    let j_nu = nu.stabilizer(d);
    let levi = Levi::new(d, j_nu);
    levi.contains(d, x) && levi.length(d, x) == 0
}

impl ShortDatum {
    /// The candidate `t^mu w_K w_J` for a given `J_nu`, checked for shortness.
    pub fn from_mu(d: &RootDatum, mu: &[Int], j_nu: Subset) -> Result<ShortDatum> {
        d.check_lattice(mu)?;
        let j = noncentral_part(d, mu, j_nu);
        let k = Subset::from_indices(j.iter().filter(|&i| mu[i] == 0));
        let w = weyl::longest(d, k).mul(&weyl::longest(d, j));
        let wtilde = Elem::new(mu.to_vec(), w.clone());
        let nu = wtilde.newton(d);
        let sd = ShortDatum { wtilde, mu: mu.to_vec(), nu, j_nu, j, k, w };
        sd.validate(d)?;
        Ok(sd)
    }

    pub fn validate(&self, d: &RootDatum) -> Result<()> {
        let bad = |s: &str| Err(Error::NotShort(s.to_string()));
        if !self.nu.is_dominant(d) {
            return bad("Newton point is not dominant");
        }
        if self.nu.stabilizer(d) != self.j_nu {
            return bad("J_nu is not the stabilizer of the Newton point");
        }
        if !is_short(d, &self.wtilde) {
            return bad("element is not in Omega_{J_nu}");
        }
        if !coweight::is_weakly_dominant(d, &self.mu) {
            return bad("mu is not weakly dominant");
        }
        if !coweight::is_j_dominant(&self.mu, self.j_nu) || !coweight::is_j_minuscule(d, &self.mu, self.j_nu) {
            return bad("mu is not J_nu-dominant and J_nu-minuscule");
        }
        Ok(())
    }

    pub fn repr(&self) -> ShortDatumRepr {
        ShortDatumRepr {
            mu: self.mu.clone(),
            j_nu: self.j_nu.indices(),
            j: self.j.indices(),
            k: self.k.indices(),
            nu: self.nu.clone(),
        }
    }

    /// Rebuilds from `mu` and `J_nu`; `J` and `K` in the input are checked for consistency.
    pub fn from_repr(d: &RootDatum, r: &ShortDatumRepr) -> Result<ShortDatum> {
        if r.mu.len() != d.rank {
            return Err(Error::Dimension { expected: d.rank, got: r.mu.len() });
        }
        let sd = ShortDatum::from_mu(d, &r.mu, Subset::from_indices(r.j_nu.iter().copied()))?;
        if sd.j.indices() != r.j || sd.k.indices() != r.k {
            return Err(Error::Invalid("J or K inconsistent with mu and J_nu".into()));
        }
        Ok(sd)
    }

    pub fn eta(&self, d: &RootDatum) -> Vec<Int> {
        d.pi1_class(&self.mu)
    }
}

/// The short element of the class of a straight element, with `z` in `W_0^{J_nu}`
/// such that `nu_x = z(nu_bar)`; `w~ = z^{-1} x z`.
pub fn short_from_straight(d: &RootDatum, x: &Elem) -> Result<(ShortDatum, Weyl)> {
    if !x.is_straight(d) {
        return Err(Error::NotStraight);
    }
    let nu = x.newton(d);
    let (_, u) = coweight::dominant_rep(d, &nu.num);
    let nubar = nu.act(d, &u);
    let j_nu = nubar.stabilizer(d);
    let (z, _) = u.inverse().min_coset_rep(d, j_nu);
    let zz = Elem::finite(d, z.clone());
    let y = zz.inverse(d).mul(d, x).mul(d, &zz);
    if is_short(d, &y) {
        let sd = ShortDatum::from_mu(d, &y.mu, j_nu)?;
        if sd.wtilde != y {
            return Err(Error::NotShort("short element is not t^mu w_K w_J".into()));
        }
        return Ok((sd, z));
    }
    let sd = short_from_invariants(d, &x.kottwitz(d), &nubar)?;
    Ok((sd, z))
}

/// The short datum with the given Kottwitz class and dominant Newton point,
/// found by solving for `mu` over `J_nu`-minuscule patterns.
pub fn short_from_invariants(d: &RootDatum, eta: &[Int], nubar: &RationalCoweight) -> Result<ShortDatum> {
    let j_nu = nubar.stabilizer(d);
    let free: Vec<usize> = j_nu.indices();
    let mut found: Option<ShortDatum> = None;
    for mask in 0u32..(1 << free.len()) {
        let mut mu = vec![0; d.rank];
        for (b, &i) in free.iter().enumerate() {
            mu[i] = (mask >> b & 1) as Int;
        }
        if !coweight::is_j_minuscule(d, &mu, j_nu) {
            continue;
        }
        // nu = mu - sum_H mu|_H; outside J_nu, <mu, a_i> = <nu, a_i> + <sum_H mu|_H, a_i>
        let proj = levi_projection(d, &mu, j_nu);
        let mut ok = true;
        for i in 0..d.rank {
            if j_nu.contains(i) {
                continue;
            }
            let num = nubar.num[i] * proj.den + proj.num[i] * nubar.den;
            let den = nubar.den * proj.den;
            if num % den != 0 {
                ok = false;
                break;
            }
            mu[i] = num / den;
        }
        if !ok || !d.in_lattice(&mu) || d.pi1_class(&mu) != eta {
            continue;
        }
        if let Ok(sd) = ShortDatum::from_mu(d, &mu, j_nu) {
            if &sd.nu == nubar {
                if found.as_ref().is_some_and(|f| f != &sd) {
                    return Err(Error::NotShort("two short elements for one class".into()));
                }
                found = Some(sd);
            }
        }
    }
    found.ok_or_else(|| Error::NotShort("no short element for these invariants".into()))
}

/// `sum_H mu|_H`: the orthogonal projection of `mu` onto the span of the
/// coroots of `j`, as a rational coweight.
pub fn levi_projection(d: &RootDatum, mu: &[Int], j: Subset) -> RationalCoweight {
    // solve for x in Q^{|j|}: <sum_k x_k a_k^vee, a_i> = <mu, a_i> for i in j
    let idx = j.indices();
    let m = idx.len();
    if m == 0 {
        return RationalCoweight::new(d.zero(), 1);
    }
    let a: Vec<Vec<Int>> = idx.iter().map(|&i| idx.iter().map(|&k| d.cartan[k][i]).collect()).collect();
    let det = snf::det(&a);
    let adj = snf::adjugate(&a);
    let rhs: Vec<Int> = idx.iter().map(|&i| mu[i]).collect();
    let x: Vec<Int> = (0..m).map(|r| (0..m).map(|c| adj[r][c] * rhs[c]).sum()).collect();
    let mut num = d.zero();
    for (k, &i) in idx.iter().enumerate() {
        for (t, v) in num.iter_mut().enumerate() {
            *v += x[k] * d.cartan[i][t];
        }
    }
    RationalCoweight::new(num, det)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag")]
pub enum HnClass {
    Irreducible,
    CentralTranslation,
    NotComparable { reason: NotComparableReason },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NotComparableReason {
    EtaMismatch,
    /// Simple-coroot coefficient `num / den` of `lambda - nu` at `index` is not positive.
    Coefficient { index: usize, num: Int, den: Int },
}

/// Simple-coroot coefficients of `lambda - nu` as numerators over a common denominator.
pub fn coefficients(d: &RootDatum, lambda: &[Int], nu: &RationalCoweight) -> (Vec<Int>, Int) {
    let diff: Vec<Int> = lambda.iter().zip(&nu.num).map(|(l, n)| l * nu.den - n).collect();
    (d.coroot_coords_scaled(&diff), nu.den * d.denominator())
}

pub fn hn_classify(d: &RootDatum, lambda: &[Int], sd: &ShortDatum) -> HnClass {
    if lambda.iter().all(|&x| x == 0) && sd.wtilde == Elem::translation(d, lambda) {
        return HnClass::CentralTranslation;
    }
    if d.pi1_class(lambda) != sd.wtilde.kottwitz(d) {
        return HnClass::NotComparable { reason: NotComparableReason::EtaMismatch };
    }
    let (c, den) = coefficients(d, lambda, &sd.nu);
    if let Some(i) = (0..d.rank).find(|&i| c[i] * den.signum() <= 0) {
        let g = num_integer::gcd(c[i], den);
        return HnClass::NotComparable {
            reason: NotComparableReason::Coefficient { index: i, num: c[i] / g * den.signum(), den: (den / g).abs() },
        };
    }
    HnClass::Irreducible
}

/// `(sigma - 1)^{-1}(eta(t^lambda) - eta(b))` for split groups: all of `pi_1`.
pub fn pi0_prediction(d: &RootDatum, lambda: &[Int], sd: &ShortDatum) -> Result<Vec<Vec<Int>>> {
    if hn_classify(d, lambda, sd) != HnClass::Irreducible {
        return Err(Error::NotIrreducible);
    }
    Ok(d.pi1_elements().to_vec())
}

/// `<a^vee, b> in {-1, 0, 1}` for all `b` in `Phi_J`.
pub fn coroot_j_minuscule(d: &RootDatum, a: RootId, j: Subset) -> bool {
    d.positive_roots_in(j).iter().all(|&b| d.cartan_int(a, b).abs() <= 1)
}

pub fn coroot_j_antidominant(d: &RootDatum, a: RootId, j: Subset) -> bool {
    j.iter().all(|i| d.cartan_int(a, i) <= 0)
}

/// `C_{lambda, J, b}`.
pub fn c_set(d: &RootDatum, lambda: &[Int], sd: &ShortDatum) -> Vec<RootId> {
    if d.is_type(Family::G) && sd.j.len() == 1 {
        let g = sd.j.iter().next().unwrap();
        let other = 1 - g;
        if d.norm(g) < d.norm(other) {
            return vec![other];
        }
    }
    (0..d.npos())
        .filter(|&a| !d.in_subsystem(a, sd.j))
        .filter(|&a| coweight::preceq(d, &coweight::add(&sd.mu, d.coroot(a)), lambda))
        .filter(|&a| coroot_j_minuscule(d, a, sd.j) && coroot_j_antidominant(d, a, sd.j))
        .collect()
}

/// Whether the coroots of `c_set` generate `Z Phi^vee / Z Phi_J^vee`.
pub fn span_check(d: &RootDatum, lambda: &[Int], sd: &ShortDatum) -> bool {
    let outside: Vec<usize> = d.full().minus(sd.j).indices();
    let vecs: Vec<Vec<Int>> = c_set(d, lambda, sd)
        .iter()
        .map(|&a| outside.iter().map(|&i| d.coroot_coords(a)[i]).collect())
        .collect();
    snf::generates_lattice(&vecs, outside.len())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeqReport {
    pub s: affine::ElemRepr,
    /// Membership of `w~`, `s w~`, `w~ s`, `s w~ s` in `Adm(lambda)`.
    pub memberships: [bool; 4],
    pub simply_laced_span: bool,
    /// `None` when `w_J(a) + w_K(a)` is not a root.
    pub pairing_at_least_two: Option<bool>,
}

impl TeqReport {
    pub fn holds(&self) -> bool {
        self.memberships.iter().all(|&b| b) && self.simply_laced_span && self.pairing_at_least_two != Some(false)
    }
}

/// Roots in `Z a + Z b` for linearly independent roots.
fn roots_in_span(d: &RootDatum, a: RootId, b: RootId) -> Vec<RootId> {
    let (ra, rb) = (d.root(a), d.root(b));
    // pick two coordinates where (ra, rb) is invertible
    let n = d.rank;
    let mut pick = None;
    'o: for i in 0..n {
        for k in i + 1..n {
            if ra[i] * rb[k] - ra[k] * rb[i] != 0 {
                pick = Some((i, k));
                break 'o;
            }
        }
    }
    let Some((i, k)) = pick else { return vec![a, d.neg(a)] };
    let det = ra[i] * rb[k] - ra[k] * rb[i];
    (0..d.nroots())
        .filter(|&g| {
            let rg = d.root(g);
            let x = rg[i] * rb[k] - rg[k] * rb[i];
            let y = ra[i] * rg[k] - ra[k] * rg[i];
            if x % det != 0 || y % det != 0 {
                return false;
            }
            let (x, y) = (x / det, y / det);
            (0..n).all(|t| rg[t] == x * ra[t] + y * rb[t])
        })
        .collect()
}

/// Whether `(Z a + Z b) cap Phi` is simply laced.
pub fn span_simply_laced(d: &RootDatum, a: RootId, b: RootId) -> bool {
    let rs = if d.abs(a) == d.abs(b) { vec![a] } else { roots_in_span(d, a, b) };
    rs.iter().all(|&g| d.norm(g) == d.norm(rs[0]))
}

pub fn teq_elements(d: &RootDatum, lambda: &[Int], sd: &ShortDatum, a: RootId) -> Result<TeqReport> {
    if !c_set(d, lambda, sd).contains(&a) {
        return Err(Error::Domain("root is not in C_{lambda,J,b}".into()));
    }
    let wj = weyl::longest(d, sd.j);
    let wk = weyl::longest(d, sd.k);
    let wja = wj.apply(a);
    let s = affine::reflection(d, wja, 1);
    let x = &sd.wtilde;
    let adm = AdmOracle::new(d, lambda)?;
    let memberships = [
        adm.contains(x),
        adm.contains(&s.mul(d, x)),
        adm.contains(&x.mul(d, &s)),
        adm.contains(&s.mul(d, x).mul(d, &s)),
    ];
    let simply_laced_span = span_simply_laced(d, a, sd.w.apply(a));
    let pairing_at_least_two = d.add(wja, wk.apply(a)).map(|_| d.pair(&sd.mu, wja) >= 2);
    Ok(TeqReport { s: s.repr(d), memberships, simply_laced_span, pairing_at_least_two })
}

/// All short data with `mu` coordinates outside `J_nu` in `[lo, hi]`.
pub fn short_data_in_box(d: &RootDatum, lo: Int, hi: Int) -> Vec<ShortDatum> {
    let mut out = Vec::new();
    for j_nu in d.full().subsets() {
        let inside = j_nu.indices();
        let outside = d.full().minus(j_nu).indices();
        for mask in 0u32..(1 << inside.len()) {
            let mut mu = vec![0; d.rank];
            for (b, &i) in inside.iter().enumerate() {
                mu[i] = (mask >> b & 1) as Int;
            }
            if !coweight::is_j_minuscule(d, &mu, j_nu) {
                continue;
            }
            for v in boxes(outside.len(), lo, hi) {
                for (t, &i) in outside.iter().enumerate() {
                    mu[i] = v[t];
                }
                if let Ok(sd) = ShortDatum::from_mu(d, &mu, j_nu) {
                    out.push(sd);
                }
            }
        }
    }
    out.sort_by(|a, b| (a.j_nu, &a.mu).cmp(&(b.j_nu, &b.mu)));
    out
}

/// All integer vectors of length `m` with entries in `[lo, hi]`.
pub fn boxes(m: usize, lo: Int, hi: Int) -> Vec<Vec<Int>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v: Vec<Int>| {
                (lo..=hi).map(move |x| {
                    let mut u = v.clone();
                    u.push(x);
                    u
                })
            })
            .collect();
    }
    out
}

/// HN-irreducible pairs `(lambda, sd)` with `lambda - mu` having simple-coroot
/// coefficients in `[0, cmax]`, for short data with `mu` in a box.
pub fn irreducible_instances(d: &RootDatum, lo: Int, hi: Int, cmax: Int) -> Vec<(Coweight, ShortDatum)> {
    let mut out = Vec::new();
    for sd in short_data_in_box(d, lo, hi) {
        for c in boxes(d.rank, 0, cmax) {
            let lambda = coweight::add(&sd.mu, &d.from_coroot_coords(&c));
            if coweight::is_dominant(d, &lambda) && hn_classify(d, &lambda, &sd) == HnClass::Irreducible {
                out.push((lambda, sd.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominant_translation_is_short() {
        let d = RootDatum::adjoint(Family::A, 2);
        let x = Elem::translation(&d, &[2, 1]);
        let (sd, z) = short_from_straight(&d, &x).unwrap();
        assert!(z.is_identity());
        assert_eq!(sd.wtilde, x);
        assert!(sd.j.is_empty());
    }

    #[test]
    fn a1_negative_translation() {
        let d = RootDatum::adjoint(Family::A, 1);
        let x = Elem::translation(&d, &[-2]);
        let (sd, z) = short_from_straight(&d, &x).unwrap();
        assert_eq!(z, d.s(0).clone());
        assert_eq!(sd.mu, vec![2]);
    }

    #[test]
    fn superbasic_a2() {
        let d = RootDatum::adjoint(Family::A, 2);
        let sd = ShortDatum::from_mu(&d, &[1, 0], d.full()).unwrap();
        assert_eq!(sd.nu.num, vec![0, 0]);
        assert_eq!(sd.wtilde.length(&d), 0);
        assert_eq!(sd.k, Subset::single(1));
        let (back, _) = short_from_straight(&d, &sd.wtilde).unwrap();
        assert_eq!(back, sd);
        let inv = short_from_invariants(&d, &sd.eta(&d), &sd.nu).unwrap();
        assert_eq!(inv, sd);
    }

    #[test]
    fn classification() {
        let d = RootDatum::adjoint(Family::A, 1);
        let basic = ShortDatum::from_mu(&d, &[0], Subset::single(0)).unwrap();
        assert_eq!(hn_classify(&d, &[2], &basic), HnClass::Irreducible);
        assert_eq!(pi0_prediction(&d, &[2], &basic).unwrap().len(), 2);
        assert_eq!(
            hn_classify(&d, &[1], &basic),
            HnClass::NotComparable { reason: NotComparableReason::EtaMismatch }
        );
        assert_eq!(hn_classify(&d, &[0], &basic), HnClass::CentralTranslation);
        let top = ShortDatum::from_mu(&d, &[2], Subset::EMPTY).unwrap();
        assert!(matches!(
            hn_classify(&d, &[2], &top),
            HnClass::NotComparable { reason: NotComparableReason::Coefficient { index: 0, num: 0, .. } }
        ));
    }

    #[test]
    fn g2_c_set_exception() {
        let d = RootDatum::adjoint(Family::G, 2);
        // J = {short simple root}, index 0
        let sd = ShortDatum::from_mu(&d, &[1, 0], Subset::single(0)).unwrap();
        assert_eq!(sd.j, Subset::single(0));
        assert_eq!(c_set(&d, &[3, 1], &sd), vec![1]);
    }

    #[test]
    fn levi_projection_averages() {
        let d = RootDatum::adjoint(Family::A, 2);
        // omega_1 projected to the span of all coroots is itself
        let p = levi_projection(&d, &[1, 0], d.full());
        assert_eq!(p, RationalCoweight::new(vec![1, 0], 1));
        let p = levi_projection(&d, &[1, 0], Subset::single(0));
        assert_eq!(p, RationalCoweight::new(vec![2, -1], 2));
    }
}
