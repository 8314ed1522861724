//! Triple parametrization of the automorphisms of ZM(m, n, r).
//!
//! A triple `(x1, x2, y)` acts by `b^u a^v -> b^(y u) a^(x1 v + x2 [u]_r)`.
//! The published admissibility condition is `gcd(x1, m) = 1`, `0 <= y < n`
//! and `y = 1 (mod d)`. That condition alone does not force bijectivity: in
//! ZM(5, 6, 4) the triple `(1, 0, 3)` sends `b^2` to the identity. Two
//! enumeration modes are therefore provided:
//!
//! * [`Mode::Paper`] lists every triple satisfying the published condition.
//! * [`Mode::Strict`] additionally requires `gcd(y, n) = 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modarith::{euler_phi, gcd, mul_mod};
use crate::zmgroup::{Element, ZmParams};
use crate::Nat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Paper,
    #[default]
    Strict,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Paper => "paper",
            Mode::Strict => "strict",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Mode::Paper),
            "strict" => Ok(Mode::Strict),
            other => Err(Error::Domain(format!(
                "unknown mode {other:?} (expected paper or strict)"
            ))),
        }
    }
}

/// `(x1, x2, y)` with `0 <= x1, x2 < m`, `gcd(x1, m) = 1`, `0 <= y < n`
/// and `y = 1 (mod d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MorphismTriple {
    pub x1: Nat,
    pub x2: Nat,
    pub y: Nat,
}

impl fmt::Display for MorphismTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x1, self.x2, self.y)
    }
}

impl MorphismTriple {
    /// Checks the published admissibility condition for `p`.
    pub fn new(p: &ZmParams, x1: Nat, x2: Nat, y: Nat) -> Result<Self> {
        let (m, n, d) = (p.m(), p.n(), p.d());
        if x1 >= m || x2 >= m {
            return Err(Error::Validation(format!(
                "x1 and x2 must lie in [0,{m}), got x1={x1} x2={x2}"
            )));
        }
        if gcd(x1, m) != 1 {
            return Err(Error::Validation(format!("gcd(x1,m)={} != 1", gcd(x1, m))));
        }
        if y >= n {
            return Err(Error::Validation(format!("y must lie in [0,{n}), got {y}")));
        }
        if y % d != 1 % d {
            return Err(Error::Validation(format!("y={y} is not 1 mod d={d}")));
        }
        Ok(MorphismTriple { x1, x2, y })
    }

    /// The triple of the identity map.
    pub fn identity(p: &ZmParams) -> Self {
        MorphismTriple {
            x1: 1 % p.m(),
            x2: 0,
            y: 1 % p.n(),
        }
    }

    /// Whether the triple also satisfies `gcd(y, n) = 1`.
    pub fn is_strict(&self, p: &ZmParams) -> bool {
        gcd(self.y, p.n()) == 1
    }
}

/// Whether `y` is admissible for the given mode.
pub fn y_admissible(p: &ZmParams, y: Nat, mode: Mode) -> bool {
    y < p.n() && y % p.d() == 1 % p.d() && (mode == Mode::Paper || gcd(y, p.n()) == 1)
}

/// The admissible `y` values in ascending order.
pub fn admissible_ys(p: &ZmParams, mode: Mode) -> Vec<Nat> {
    (0..p.n()).filter(|&y| y_admissible(p, y, mode)).collect()
}

/// Units modulo `m`, ascending.
pub fn units(m: Nat) -> Vec<Nat> {
    (0..m).filter(|&x| gcd(x, m) == 1).collect()
}

#[inline]
pub fn apply(p: &ZmParams, f: &MorphismTriple, g: Element) -> Element {
    let m = p.m();
    Element {
        u: mul_mod(f.y, g.u, p.n()),
        v: (mul_mod(f.x1, g.v, m) + mul_mod(f.x2, p.repunit(g.u), m)) % m,
    }
}

/// Images of every element, indexed like [`ZmParams::elements`].
pub fn images(p: &ZmParams, f: &MorphismTriple) -> Vec<Element> {
    p.iter().map(|g| apply(p, f, g)).collect()
}

/// All triples for `p` under `mode`, ordered lexicographically by
/// `(y, x1, x2)`.
pub fn enumerate(p: &ZmParams, mode: Mode) -> Vec<MorphismTriple> {
    let xs = units(p.m());
    let mut out = Vec::new();
    for y in admissible_ys(p, mode) {
        for &x1 in &xs {
            for x2 in 0..p.m() {
                out.push(MorphismTriple { x1, x2, y });
            }
        }
    }
    out
}

/// Number of triples under `mode`, without materializing them.
pub fn count(p: &ZmParams, mode: Mode) -> Result<Nat> {
    let ys = admissible_ys(p, mode).len() as Nat;
    let per_y = p
        .m()
        .checked_mul(euler_phi(p.m())?)
        .ok_or(Error::Overflow("morphism count"))?;
    per_y
        .checked_mul(ys)
        .ok_or(Error::Overflow("morphism count"))
}

/// The closed-form count `m * phi(m) * n / d` of published triples.
pub fn paper_count_formula(p: &ZmParams) -> Result<Nat> {
    p.m()
        .checked_mul(euler_phi(p.m())?)
        .and_then(|x| x.checked_mul(p.n() / p.d()))
        .ok_or(Error::Overflow("m*phi(m)*n/d"))
}

/// Which property a [`MorphismCheck`] witness falsifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// `f(g h) != f(g) f(h)` for the pair `(g, h)`.
    NotHomomorphism,
    /// `g != h` but `f(g) = f(h)`.
    NotInjective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub g: Element,
    pub h: Element,
}

impl Witness {
    /// Re-evaluates the witness against `f`; true when it still falsifies.
    pub fn holds(&self, p: &ZmParams, f: &MorphismTriple) -> bool {
        match self.kind {
            WitnessKind::NotHomomorphism => {
                apply(p, f, p.multiply(self.g, self.h))
                    != p.multiply(apply(p, f, self.g), apply(p, f, self.h))
            }
            WitnessKind::NotInjective => {
                self.g != self.h && apply(p, f, self.g) == apply(p, f, self.h)
            }
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            WitnessKind::NotHomomorphism => {
                write!(f, "f({}*{}) != f({})*f({})", self.g, self.h, self.g, self.h)
            }
            WitnessKind::NotInjective => write!(f, "f({}) = f({})", self.g, self.h),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismCheck {
    pub is_homomorphism: bool,
    pub is_bijective: bool,
    /// First falsifying pair found, homomorphism failures taking precedence.
    pub witness: Option<Witness>,
}

/// Exhaustively tests `f` for the homomorphism property over all pairs and
/// for injectivity over all elements.
pub fn check_morphism(p: &ZmParams, f: &MorphismTriple) -> Result<MorphismCheck> {
    p.require_brute_force()?;
    let img = images(p, f);

    let mut hom_witness = None;
    'outer: for g in p.iter() {
        let fg = img[p.index_of(g)];
        for h in p.iter() {
            let lhs = img[p.index_of(p.multiply(g, h))];
            if lhs != p.multiply(fg, img[p.index_of(h)]) {
                hom_witness = Some(Witness {
                    kind: WitnessKind::NotHomomorphism,
                    g,
                    h,
                });
                break 'outer;
            }
        }
    }

    let mut first_preimage: Vec<Option<Element>> = vec![None; img.len()];
    let mut inj_witness = None;
    for g in p.iter() {
        let slot = &mut first_preimage[p.index_of(img[p.index_of(g)])];
        match slot {
            Some(h) => {
                inj_witness = Some(Witness {
                    kind: WitnessKind::NotInjective,
                    g: *h,
                    h: g,
                });
                break;
            }
            None => *slot = Some(g),
        }
    }

    Ok(MorphismCheck {
        is_homomorphism: hom_witness.is_none(),
        is_bijective: inj_witness.is_none(),
        witness: hom_witness.or(inj_witness),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: Nat, n: Nat, r: Nat) -> ZmParams {
        ZmParams::new(m, n, r).unwrap()
    }

    fn all_params(max_order: Nat) -> Vec<ZmParams> {
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
    fn triple_validation() {
        let p = params(3, 4, 2);
        assert!(MorphismTriple::new(&p, 1, 0, 1).is_ok());
        assert!(MorphismTriple::new(&p, 2, 1, 3).is_ok());
        let err = MorphismTriple::new(&p, 0, 0, 1).unwrap_err();
        assert!(err.to_string().contains("gcd(x1,m)=3"), "{err}");
        assert!(MorphismTriple::new(&p, 1, 0, 2).is_err());
        assert!(MorphismTriple::new(&p, 1, 3, 1).is_err());
        assert!(MorphismTriple::new(&p, 1, 0, 5).is_err());
        // Paper-mode triple that is not strict.
        let q = params(5, 6, 4);
        let f = MorphismTriple::new(&q, 1, 0, 3).unwrap();
        assert!(!f.is_strict(&q));
    }

    #[test]
    fn apply_examples() {
        let p = params(3, 4, 2);
        let id = MorphismTriple::identity(&p);
        assert_eq!(id, MorphismTriple { x1: 1, x2: 0, y: 1 });
        for g in p.iter() {
            assert_eq!(apply(&p, &id, g), g);
        }
        let f = MorphismTriple { x1: 2, x2: 0, y: 1 };
        assert_eq!(apply(&p, &f, Element::new(0, 1)), Element::new(0, 2));
        let f = MorphismTriple { x1: 1, x2: 1, y: 1 };
        assert_eq!(apply(&p, &f, Element::new(1, 0)), Element::new(1, 1));
    }

    #[test]
    fn identity_triple_on_degenerate_groups() {
        for p in [params(1, 1, 0), params(1, 5, 0)] {
            let id = MorphismTriple::identity(&p);
            assert!(MorphismTriple::new(&p, id.x1, id.x2, id.y).is_ok());
            for g in p.iter() {
                assert_eq!(apply(&p, &id, g), g);
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let p = params(3, 4, 2);
        let paper = enumerate(&p, Mode::Paper);
        assert_eq!(paper.len(), 12);
        assert_eq!(enumerate(&p, Mode::Strict), paper);
        assert!(paper
            .windows(2)
            .all(|w| (w[0].y, w[0].x1, w[0].x2) < (w[1].y, w[1].x1, w[1].x2)));

        let q = params(5, 6, 4);
        assert_eq!(enumerate(&q, Mode::Paper).len(), 60);
        let strict = enumerate(&q, Mode::Strict);
        assert_eq!(strict.len(), 40);
        assert!(strict.iter().all(|f| f.y != 3));
        assert_eq!(count(&q, Mode::Paper), Ok(60));
        assert_eq!(count(&q, Mode::Strict), Ok(40));
    }

    #[test]
    fn check_examples() {
        let p = params(3, 4, 2);
        let ok = MorphismCheck {
            is_homomorphism: true,
            is_bijective: true,
            witness: None,
        };
        assert_eq!(
            check_morphism(&p, &MorphismTriple::identity(&p)),
            Ok(ok.clone())
        );
        assert_eq!(
            check_morphism(&p, &MorphismTriple { x1: 2, x2: 1, y: 3 }),
            Ok(ok)
        );

        let q = params(5, 6, 4);
        let f = MorphismTriple { x1: 1, x2: 0, y: 3 };
        let check = check_morphism(&q, &f).unwrap();
        assert!(check.is_homomorphism);
        assert!(!check.is_bijective);
        let w = check.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::NotInjective);
        assert_eq!((w.g, w.h), (q.identity(), Element::new(2, 0)));
        assert!(w.holds(&q, &f));
    }

    #[test]
    fn non_homomorphism_witness() {
        // y = 2 violates y = 1 mod d in ZM(3,4,2), so the map b -> b^2 fails.
        let p = params(3, 4, 2);
        let f = MorphismTriple { x1: 1, x2: 0, y: 2 };
        let check = check_morphism(&p, &f).unwrap();
        assert!(!check.is_homomorphism);
        let w = check.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::NotHomomorphism);
        assert!(w.holds(&p, &f));
    }

    #[test]
    fn check_rejects_large_groups() {
        let p = params(1, 5000, 0);
        assert!(matches!(
            check_morphism(&p, &MorphismTriple::identity(&p)),
            Err(Error::SizeBound { .. })
        ));
    }

    #[test]
    fn paper_triples_are_homomorphisms_strict_are_bijective() {
        for p in all_params(60) {
            for f in enumerate(&p, Mode::Paper) {
                let check = check_morphism(&p, &f).unwrap();
                assert!(check.is_homomorphism, "{p:?} {f}");
                assert_eq!(check.is_bijective, f.is_strict(&p), "{p:?} {f}");
                if let Some(w) = check.witness {
                    assert!(w.holds(&p, &f));
                }
            }
        }
    }

    #[test]
    fn paper_count_matches_formula() {
        for p in all_params(300) {
            let listed = enumerate(&p, Mode::Paper).len() as Nat;
            assert_eq!(listed, paper_count_formula(&p).unwrap(), "{p:?}");
            assert_eq!(listed, count(&p, Mode::Paper).unwrap());
            assert_eq!(
                enumerate(&p, Mode::Strict).len() as Nat,
                count(&p, Mode::Strict).unwrap()
            );
        }
    }

    #[test]
    fn bijective_when_y_and_x1_are_units() {
        for p in all_params(120) {
            for y in 0..p.n() {
                if gcd(y, p.n()) != 1 {
                    continue;
                }
                for x1 in units(p.m()) {
                    let f = MorphismTriple {
                        x1,
                        x2: p.m() - 1,
                        y,
                    };
                    let mut img = images(&p, &f);
                    img.sort_unstable();
                    img.dedup();
                    assert_eq!(img.len() as Nat, p.order(), "{p:?} {f}");
                }
            }
        }
    }

    #[test]
    fn strict_maps_closed_under_composition() {
        for p in all_params(60) {
            let maps = enumerate(&p, Mode::Strict);
            let tables: Vec<Vec<Element>> = maps.iter().map(|f| images(&p, f)).collect();
            for f_img in &tables {
                for g_img in &tables {
                    let comp: Vec<Element> = g_img.iter().map(|&x| f_img[p.index_of(x)]).collect();
                    // A triple is determined by the images of a and b.
                    let fa = comp[p.index_of(p.a())];
                    let fb = comp[p.index_of(p.b())];
                    assert_eq!(fa.u, 0);
                    let h = MorphismTriple::new(&p, fa.v, fb.v, fb.u % p.n())
                        .unwrap_or_else(|e| panic!("{p:?}: {e}"));
                    assert!(h.is_strict(&p));
                    assert_eq!(images(&p, &h), comp, "{p:?}");
                }
            }
        }
    }
}
