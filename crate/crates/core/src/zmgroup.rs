//! The group ZM(m, n, r): admissible parameters, normal-form elements and
//! the group law.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{gcd, mod_pow, mul_mod, mult_order, repunit_table};
use crate::Nat;

/// Default upper bound on the group order `m * n`.
pub const DEFAULT_MAX_ORDER: Nat = 1 << 20;

/// Upper bound on the group order for the quadratic brute-force routines.
pub const BRUTE_FORCE_MAX_ORDER: Nat = 1 << 12;

/// A validated admissible triple `(m, n, r)`.
///
/// `r` is stored reduced modulo `m` and `d` caches the multiplicative order
/// of `r` modulo `m`. The powers `r^k` and repunits `[k]_r` for `k < n` are
/// tabulated once at construction.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct ZmParams {
    m: Nat,
    n: Nat,
    r: Nat,
    d: Nat,
    r_pows: Arc<[Nat]>,
    repunits: Arc<[Nat]>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawParams {
    m: Nat,
    n: Nat,
    r: Nat,
    d: Nat,
}

impl TryFrom<RawParams> for ZmParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        let p = ZmParams::new(raw.m, raw.n, raw.r)?;
        if p.d != raw.d {
            return Err(Error::Validation(format!(
                "d = {} does not match o_m(r) = {}",
                raw.d, p.d
            )));
        }
        Ok(p)
    }
}

impl From<ZmParams> for RawParams {
    fn from(p: ZmParams) -> Self {
        RawParams {
            m: p.m,
            n: p.n,
            r: p.r,
            d: p.d,
        }
    }
}

impl PartialEq for ZmParams {
    fn eq(&self, other: &Self) -> bool {
        (self.m, self.n, self.r) == (other.m, other.n, other.r)
    }
}

impl Eq for ZmParams {}

impl fmt::Debug for ZmParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZM({}, {}, {})", self.m, self.n, self.r)
    }
}

impl fmt::Display for ZmParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZM({},{},{})", self.m, self.n, self.r)
    }
}

/// Group element `b^u a^v` in normal form, `0 <= u < n`, `0 <= v < m`.
///
/// The derived ordering is `u`-major lexicographic, which is the global
/// element order used by every enumeration in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element {
    pub u: Nat,
    pub v: Nat,
}

impl Element {
    pub const fn new(u: Nat, v: Nat) -> Self {
        Element { u, v }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.u, self.v) {
            (0, 0) => write!(f, "1"),
            (0, v) => write!(f, "a^{v}"),
            (u, 0) => write!(f, "b^{u}"),
            (u, v) => write!(f, "b^{u}a^{v}"),
        }
    }
}

impl ZmParams {
    /// Validates `(m, n, r)` against the default order bound.
    pub fn new(m: Nat, n: Nat, r: Nat) -> Result<Self> {
        Self::with_bound(m, n, r, DEFAULT_MAX_ORDER)
    }

    /// Validates `(m, n, r)`, rejecting groups of order above `max_order`.
    pub fn with_bound(m: Nat, n: Nat, r: Nat, max_order: Nat) -> Result<Self> {
        if m == 0 {
            return Err(Error::Validation("m must be at least 1".into()));
        }
        if n == 0 {
            return Err(Error::Validation("n must be at least 1".into()));
        }
        let order = m.checked_mul(n).ok_or(Error::SizeBound {
            order: Nat::MAX,
            bound: max_order,
        })?;
        if order > max_order {
            return Err(Error::SizeBound {
                order,
                bound: max_order,
            });
        }
        let g = gcd(m, n);
        if g != 1 {
            return Err(Error::Validation(format!("gcd(m,n)={g} != 1")));
        }
        let r = r % m;
        // r - 1 as an integer; gcd(m, r - 1) = gcd(m, (r - 1) mod m).
        let g = gcd(m, (r + m - 1) % m);
        if g != 1 {
            return Err(Error::Validation(format!("gcd(m,r-1)={g} != 1")));
        }
        let rn = mod_pow(r, n, m)?;
        if rn != 1 % m {
            return Err(Error::Validation(format!("r^n mod m = {rn} != 1")));
        }
        let d = mult_order(r, m)?;
        debug_assert_eq!(n % d, 0);

        let mut r_pows = Vec::with_capacity(n as usize);
        let mut x = 1 % m;
        for _ in 0..n {
            r_pows.push(x);
            x = mul_mod(x, r, m);
        }
        let repunits = repunit_table(n, r, m)?;
        Ok(ZmParams {
            m,
            n,
            r,
            d,
            r_pows: r_pows.into(),
            repunits: repunits.into(),
        })
    }

    pub fn m(&self) -> Nat {
        self.m
    }

    pub fn n(&self) -> Nat {
        self.n
    }

    pub fn r(&self) -> Nat {
        self.r
    }

    /// Multiplicative order of `r` modulo `m`.
    pub fn d(&self) -> Nat {
        self.d
    }

    pub fn order(&self) -> Nat {
        self.m * self.n
    }

    /// `r^k mod m`, for any `k`.
    #[inline]
    pub fn r_pow(&self, k: Nat) -> Nat {
        self.r_pows[(k % self.n) as usize]
    }

    /// `[u]_r mod m` for `0 <= u < n`.
    #[inline]
    pub fn repunit(&self, u: Nat) -> Nat {
        self.repunits[u as usize]
    }

    /// Fails with a size error when the group is too large for the
    /// quadratic brute-force routines.
    pub fn require_brute_force(&self) -> Result<()> {
        if self.order() > BRUTE_FORCE_MAX_ORDER {
            return Err(Error::SizeBound {
                order: self.order(),
                bound: BRUTE_FORCE_MAX_ORDER,
            });
        }
        Ok(())
    }

    pub fn identity(&self) -> Element {
        Element::new(0, 0)
    }

    /// The generator `a = b^0 a^1`.
    pub fn a(&self) -> Element {
        Element::new(0, 1 % self.m)
    }

    /// The generator `b = b^1 a^0`.
    pub fn b(&self) -> Element {
        Element::new(1 % self.n, 0)
    }

    pub fn contains(&self, g: Element) -> bool {
        g.u < self.n && g.v < self.m
    }

    /// Checks that `(u, v)` is a canonical representative.
    pub fn element(&self, u: Nat, v: Nat) -> Result<Element> {
        let g = Element::new(u, v);
        if !self.contains(g) {
            return Err(Error::Domain(format!(
                "({u},{v}) is not a normal form in {self}"
            )));
        }
        Ok(g)
    }

    /// `(b^u1 a^v1)(b^u2 a^v2) = b^(u1+u2) a^(v1 r^u2 + v2)`, from
    /// `a^v b^k = b^k a^(v r^k)`.
    #[inline]
    pub fn multiply(&self, g: Element, h: Element) -> Element {
        let u = (g.u + h.u) % self.n;
        let v = (mul_mod(g.v, self.r_pow(h.u), self.m) + h.v) % self.m;
        Element { u, v }
    }

    #[inline]
    pub fn inverse(&self, g: Element) -> Element {
        let u = (self.n - g.u) % self.n;
        let v = (self.m - mul_mod(g.v, self.r_pow(u), self.m)) % self.m;
        Element { u, v }
    }

    /// `g^k` for any non-negative `k`.
    pub fn pow(&self, g: Element, mut k: Nat) -> Element {
        let mut acc = self.identity();
        let mut sq = g;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(acc, sq);
            }
            sq = self.multiply(sq, sq);
            k >>= 1;
        }
        acc
    }

    /// Position of `g` in [`ZmParams::elements`].
    #[inline]
    pub fn index_of(&self, g: Element) -> usize {
        (g.u * self.m + g.v) as usize
    }

    #[inline]
    pub fn element_at(&self, idx: usize) -> Element {
        let idx = idx as Nat;
        Element::new(idx / self.m, idx % self.m)
    }

    /// All `m * n` elements in `u`-major lexicographic order.
    pub fn elements(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.n).flat_map(move |u| (0..self.m).map(move |v| Element::new(u, v)))
    }

    /// Ordinary conjugacy classes, found by conjugating every element by
    /// every element. Each class is sorted and classes are ordered by their
    /// least element.
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<Element>>> {
        self.require_brute_force()?;
        let size = self.order() as usize;
        let mut assigned = vec![false; size];
        let mut classes = Vec::new();
        for x in self.iter() {
            if assigned[self.index_of(x)] {
                continue;
            }
            let mut class: Vec<Element> = self
                .iter()
                .map(|g| self.multiply(self.multiply(g, x), self.inverse(g)))
                .collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                assigned[self.index_of(y)] = true;
            }
            classes.push(class);
        }
        Ok(classes)
    }

    /// Elements commuting with every element, by exhaustive check.
    pub fn center(&self) -> Result<Vec<Element>> {
        self.require_brute_force()?;
        Ok(self
            .iter()
            .filter(|&z| {
                self.iter()
                    .all(|g| self.multiply(z, g) == self.multiply(g, z))
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_params(max_order: Nat) -> Vec<ZmParams> {
        let mut out = Vec::new();
        for m in 1..=max_order {
            for n in 1..=max_order / m {
                for r in 0..m {
                    if let Ok(p) = ZmParams::new(m, n, r) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn validate_examples() {
        let p = ZmParams::new(3, 4, 2).unwrap();
        assert_eq!(p.d(), 2);
        assert_eq!(p.order(), 12);

        let err = ZmParams::new(4, 2, 3).unwrap_err();
        assert!(err.to_string().contains("gcd(m,n)=2"), "{err}");
        let err = ZmParams::new(3, 4, 1).unwrap_err();
        assert!(err.to_string().contains("gcd(m,r-1)=3"), "{err}");
        let err = ZmParams::new(7, 2, 2).unwrap_err();
        assert!(err.to_string().contains("r^n mod m"), "{err}");
    }

    #[test]
    fn r_is_reduced() {
        let p = ZmParams::new(3, 4, 5).unwrap();
        assert_eq!(p.r(), 2);
        assert_eq!(p, ZmParams::new(3, 4, 2).unwrap());
    }

    #[test]
    fn degenerate_groups() {
        let trivial = ZmParams::new(1, 1, 0).unwrap();
        assert_eq!(trivial.elements(), vec![Element::new(0, 0)]);
        assert_eq!(trivial.d(), 1);
        let cyclic = ZmParams::new(1, 7, 0).unwrap();
        assert_eq!(cyclic.order(), 7);
        let a_only = ZmParams::new(5, 1, 1);
        // r = 1 makes gcd(m, r - 1) = m.
        assert!(a_only.is_err());
        assert!(ZmParams::new(0, 3, 0).is_err());
        assert!(ZmParams::new(3, 0, 2).is_err());
    }

    #[test]
    fn size_bound() {
        assert!(matches!(
            ZmParams::with_bound(3, 4, 2, 11),
            Err(Error::SizeBound {
                order: 12,
                bound: 11
            })
        ));
        assert!(ZmParams::with_bound(3, 4, 2, 12).is_ok());
        assert!(matches!(
            ZmParams::new(Nat::MAX, 2, 0),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn multiply_examples() {
        let p = ZmParams::new(3, 4, 2).unwrap();
        let e = p.identity();
        for x in p.iter() {
            assert_eq!(p.multiply(e, x), x);
            assert_eq!(p.multiply(x, e), x);
        }
        assert_eq!(
            p.multiply(Element::new(1, 1), Element::new(1, 1)),
            Element::new(2, 0)
        );
        for v1 in 0..3 {
            for v2 in 0..3 {
                assert_eq!(
                    p.multiply(Element::new(0, v1), Element::new(0, v2)),
                    Element::new(0, (v1 + v2) % 3)
                );
            }
        }
        // b^-1 a b = a^r
        let (a, b) = (p.a(), p.b());
        assert_eq!(p.multiply(p.multiply(p.inverse(b), a), b), p.pow(a, p.r()));
    }

    #[test]
    fn inverse_examples() {
        let p = ZmParams::new(3, 4, 2).unwrap();
        assert_eq!(p.inverse(p.identity()), p.identity());
        assert_eq!(p.inverse(Element::new(1, 1)), Element::new(3, 1));
        for x in p.iter() {
            assert_eq!(p.inverse(p.inverse(x)), x);
        }
    }

    #[test]
    fn elements_examples() {
        assert_eq!(ZmParams::new(3, 4, 2).unwrap().elements().len(), 12);
        assert_eq!(ZmParams::new(3, 2, 2).unwrap().elements().len(), 6);
        let p = ZmParams::new(5, 6, 4).unwrap();
        let els = p.elements();
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        for (i, &g) in els.iter().enumerate() {
            assert_eq!(p.index_of(g), i);
            assert_eq!(p.element_at(i), g);
        }
    }

    #[test]
    fn group_axioms_exhaustive() {
        for p in small_params(60) {
            let els = p.elements();
            assert_eq!(els.len() as Nat, p.order());
            for &x in &els {
                let xi = p.inverse(x);
                assert_eq!(p.multiply(x, xi), p.identity(), "{p:?}");
                assert_eq!(p.multiply(xi, x), p.identity(), "{p:?}");
                for &y in &els {
                    let xy = p.multiply(x, y);
                    for &z in &els {
                        assert_eq!(p.multiply(xy, z), p.multiply(x, p.multiply(y, z)), "{p:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn noncommutative_iff_r_nontrivial() {
        for p in small_params(60) {
            let commute = p.multiply(p.a(), p.b()) == p.multiply(p.b(), p.a());
            assert_eq!(commute, p.r() == 1 % p.m(), "{p:?}");
            assert_eq!(commute, p.d() == 1, "{p:?}");
        }
    }

    #[test]
    fn conjugacy_class_examples() {
        let dic3 = ZmParams::new(3, 4, 2).unwrap();
        assert_eq!(dic3.conjugacy_classes().unwrap().len(), 6);
        let trivial = ZmParams::new(1, 1, 0).unwrap();
        assert_eq!(trivial.conjugacy_classes().unwrap().len(), 1);
        let s3 = ZmParams::new(3, 2, 2).unwrap();
        let classes = s3.conjugacy_classes().unwrap();
        assert_eq!(
            classes,
            vec![
                vec![Element::new(0, 0)],
                vec![Element::new(0, 1), Element::new(0, 2)],
                vec![Element::new(1, 0), Element::new(1, 1), Element::new(1, 2)],
            ]
        );
    }

    #[test]
    fn conjugacy_classes_partition() {
        for p in small_params(120) {
            let classes = p.conjugacy_classes().unwrap();
            let total: usize = classes.iter().map(Vec::len).sum();
            assert_eq!(total as Nat, p.order());
            let mut seen: Vec<Element> = classes.iter().flatten().copied().collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen.len() as Nat, p.order());
            assert!(classes.windows(2).all(|w| w[0][0] < w[1][0]));
            for class in &classes {
                for g in [p.a(), p.b()] {
                    for &x in class {
                        let y = p.multiply(p.multiply(g, x), p.inverse(g));
                        assert!(class.binary_search(&y).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn center_examples() {
        let dic3 = ZmParams::new(3, 4, 2).unwrap();
        assert_eq!(
            dic3.center().unwrap(),
            vec![Element::new(0, 0), Element::new(2, 0)]
        );
        let trivial = ZmParams::new(1, 1, 0).unwrap();
        assert_eq!(trivial.center().unwrap(), trivial.elements());
        let p = ZmParams::new(5, 6, 4).unwrap();
        assert_eq!(
            p.center().unwrap(),
            vec![Element::new(0, 0), Element::new(2, 0), Element::new(4, 0)]
        );
    }

    #[test]
    fn center_is_generated_by_b_to_the_d() {
        for p in small_params(120) {
            let expected: Vec<Element> = (0..p.n())
                .filter(|u| u % p.d() == 0)
                .map(|u| Element::new(u, 0))
                .collect();
            assert_eq!(p.center().unwrap(), expected, "{p:?}");
        }
    }

    #[test]
    fn params_serde_revalidates() {
        let p = ZmParams::new(3, 4, 2).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"m":3,"n":4,"r":2,"d":2}"#);
        let back: ZmParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<ZmParams>(r#"{"m":4,"n":2,"r":3,"d":1}"#).is_err());
        assert!(serde_json::from_str::<ZmParams>(r#"{"m":3,"n":4,"r":2,"d":1}"#).is_err());
    }
}
