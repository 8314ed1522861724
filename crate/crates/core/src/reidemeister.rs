//! Reidemeister numbers computed three ways.
//!
//! * [`reidemeister_orbits`] counts orbits of the twisted conjugation action
//!   `g . x = g x f(g)^-1` with a union-find over all `(g, x)` pairs.
//! * [`reidemeister_burnside`] averages fixed-point counts over the acting
//!   group.
//! * [`reidemeister_formula`] evaluates the closed form, which depends on
//!   `y` alone:
//!
//! ```text
//! R(y) = (1/m) * sum_{v < m} sum_{u < n, n/gcd(n,y-1) | u} g_u / o_{k(u,v)}(r)
//!   where g_u = gcd(m, [u]_r),  k(u,v) = g_u / gcd(g_u, v)
//! ```
//!
//! The closed form is evaluated as `T / (m n)` with
//! `T = sum g_u * (n / o_k(r))`. Every `o_k(r)` divides `n` because
//! `k | m` and `r^n = 1 (mod m)`, so `T` is an exact integer and a
//! non-integral quotient is reported instead of rounded.
//!
//! The brute-force routes agree with each other on every triple. The closed
//! form agrees with them whenever `x1` lies in the subgroup generated by `r`
//! modulo `m`, but not in general; see the `outer_x1` tests below.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{gcd, is_prime, mult_order};
use crate::morphisms::{self, admissible_ys, apply, Mode, MorphismTriple};
use crate::zmgroup::{Element, ZmParams};
use crate::Nat;

/// The three Reidemeister values for one morphism triple.
///
/// The brute-force fields are `None` when the group exceeded the
/// brute-force cap and the oracles were skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReidemeisterReport {
    pub params: ZmParams,
    pub triple: MorphismTriple,
    pub r_orbit: Option<Nat>,
    pub r_burnside: Option<Nat>,
    pub r_formula: Nat,
    /// `r_orbit = r_burnside = r_formula`; `None` when the oracles were skipped.
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub params: ZmParams,
    pub mode: Mode,
    /// `(y, R)` for each admissible `y`, ascending in `y`.
    pub per_y: Vec<(Nat, Nat)>,
    /// Distinct values of `per_y`, ascending.
    pub spectrum: Vec<Nat>,
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Links the larger root under the smaller, so every root is the least
    /// index of its set.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Twisted conjugacy classes of `f`, each sorted, ordered by least element.
pub fn twisted_classes(p: &ZmParams, f: &MorphismTriple) -> Result<Vec<Vec<Element>>> {
    p.require_brute_force()?;
    let size = p.order() as usize;
    let mut sets = DisjointSets::new(size);
    let twists: Vec<Element> = p.iter().map(|g| p.inverse(apply(p, f, g))).collect();
    for g in p.iter() {
        let tw = twists[p.index_of(g)];
        for x in p.iter() {
            let y = p.multiply(p.multiply(g, x), tw);
            sets.union(p.index_of(x), p.index_of(y));
        }
    }
    let mut classes: Vec<Vec<Element>> = Vec::new();
    let mut slot_of_root = vec![usize::MAX; size];
    for idx in 0..size {
        let root = sets.find(idx);
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot_of_root[root]].push(p.element_at(idx));
    }
    Ok(classes)
}

/// Number of orbits of `g . x = g x f(g)^-1`, by exhaustive union-find.
pub fn reidemeister_orbits(p: &ZmParams, f: &MorphismTriple) -> Result<Nat> {
    p.require_brute_force()?;
    let size = p.order() as usize;
    let mut sets = DisjointSets::new(size);
    let mut classes = size;
    for g in p.iter() {
        let tw = p.inverse(apply(p, f, g));
        for x in p.iter() {
            let y = p.multiply(p.multiply(g, x), tw);
            if sets.union(p.index_of(x), p.index_of(y)) {
                classes -= 1;
            }
        }
    }
    Ok(classes as Nat)
}

/// `|{x : g x f(g)^-1 = x}|`, by iterating over every `x`.
pub fn fix_count(p: &ZmParams, f: &MorphismTriple, g: Element) -> Result<Nat> {
    p.require_brute_force()?;
    let tw = p.inverse(apply(p, f, g));
    Ok(p.iter()
        .filter(|&x| p.multiply(p.multiply(g, x), tw) == x)
        .count() as Nat)
}

/// Burnside's lemma: the average of [`fix_count`] over the group.
pub fn reidemeister_burnside(p: &ZmParams, f: &MorphismTriple) -> Result<Nat> {
    p.require_brute_force()?;
    let mut total: Nat = 0;
    for g in p.iter() {
        total += fix_count(p, f, g)?;
    }
    if !total.is_multiple_of(p.order()) {
        return Err(Error::Internal(format!(
            "fixed-point total {total} is not divisible by |G| = {} for {p} {f}",
            p.order()
        )));
    }
    Ok(total / p.order())
}

/// The closed-form Reidemeister number for the morphisms with parameter `y`.
///
/// Accepts every `y` with `0 <= y < n` and `y = 1 (mod d)`, including values
/// with `gcd(y, n) > 1`.
pub fn reidemeister_formula(p: &ZmParams, y: Nat) -> Result<Nat> {
    let (m, n, d) = (p.m(), p.n(), p.d());
    if y >= n || y % d != 1 % d {
        return Err(Error::Domain(format!(
            "y={y} must satisfy 0 <= y < {n} and y = 1 mod {d}"
        )));
    }
    // gcd(n, y - 1) with y - 1 taken as an integer; y = 1 gives gcd(n, 0) = n.
    let step = n / gcd(n, (y + n - 1) % n);

    let mut orders: Vec<Nat> = vec![0; m as usize + 1];
    let mut total: Nat = 0;
    for u in (0..n).step_by(step as usize) {
        let g_u = gcd(m, p.repunit(u));
        for v in 0..m {
            let k = g_u / gcd(g_u, v);
            let o = match orders[k as usize] {
                0 => {
                    let o = mult_order(p.r(), k)?;
                    orders[k as usize] = o;
                    o
                }
                o => o,
            };
            if n % o != 0 {
                return Err(Error::Internal(format!(
                    "o_{k}(r)={o} does not divide n={n}"
                )));
            }
            total = g_u
                .checked_mul(n / o)
                .and_then(|t| total.checked_add(t))
                .ok_or(Error::Overflow("closed-form sum"))?;
        }
    }
    let order = p.order();
    if !total.is_multiple_of(order) {
        return Err(Error::Integrality {
            what: "closed-form Reidemeister number",
            numerator: total,
            divisor: order,
        });
    }
    Ok(total / order)
}

/// Closed-form values for every admissible `y` under `mode`.
pub fn spectrum(p: &ZmParams, mode: Mode) -> Result<SpectrumResult> {
    let per_y = admissible_ys(p, mode)
        .into_iter()
        .map(|y| reidemeister_formula(p, y).map(|r| (y, r)))
        .collect::<Result<Vec<_>>>()?;
    let spectrum: BTreeSet<Nat> = per_y.iter().map(|&(_, r)| r).collect();
    Ok(SpectrumResult {
        params: p.clone(),
        mode,
        per_y,
        spectrum: spectrum.into_iter().collect(),
    })
}

/// The set of brute-force Reidemeister numbers over every triple of `mode`.
///
/// With [`Mode::Strict`] this is the Reidemeister spectrum of the group
/// computed without the closed form.
pub fn brute_spectrum(p: &ZmParams, mode: Mode) -> Result<Vec<Nat>> {
    p.require_brute_force()?;
    let mut values = BTreeSet::new();
    for f in morphisms::enumerate(p, mode) {
        values.insert(reidemeister_orbits(p, &f)?);
    }
    Ok(values.into_iter().collect())
}

/// Prime-`n` shortcut: `n - 1 + S / n` with `S = sum_{u<n} gcd(m, [u]_r)`.
pub fn corollary_prime_n(p: &ZmParams) -> Result<Nat> {
    let n = p.n();
    if !is_prime(n) {
        return Err(Error::Domain(format!("n={n} is not prime")));
    }
    let s: Nat = (0..n).map(|u| gcd(p.m(), p.repunit(u))).sum();
    if !s.is_multiple_of(n) {
        return Err(Error::Integrality {
            what: "prime-n sum S",
            numerator: s,
            divisor: n,
        });
    }
    Ok(n - 1 + s / n)
}

/// `(m + 3) / 2`, the closed-form value for the dihedral group of order
/// `2m`, `m` odd.
pub fn dihedral_spectrum(m: Nat) -> Result<Nat> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::Domain(format!("m={m} must be odd and at least 3")));
    }
    Ok((m + 3) / 2)
}

/// Closed form plus, when `brute_cap` allows, both brute-force oracles.
pub fn report(p: &ZmParams, f: &MorphismTriple, brute_cap: Nat) -> Result<ReidemeisterReport> {
    let r_formula = reidemeister_formula(p, f.y)?;
    let (r_orbit, r_burnside, agree) = if p.order() <= brute_cap {
        let orbit = reidemeister_orbits(p, f)?;
        let burnside = reidemeister_burnside(p, f)?;
        (
            Some(orbit),
            Some(burnside),
            Some(orbit == burnside && burnside == r_formula),
        )
    } else {
        (None, None, None)
    };
    Ok(ReidemeisterReport {
        params: p.clone(),
        triple: *f,
        r_orbit,
        r_burnside,
        r_formula,
        agree,
    })
}
