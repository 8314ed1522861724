//! Exact modular arithmetic: gcd, powers, multiplicative orders, repunits
//! and Euler's totient.
//!
//! Products are formed in `u128`, so for any modulus that fits in a `Nat`
//! the reduced result is exact.

use crate::error::{Error, Result};
use crate::Nat;

/// Greatest common divisor, with `gcd(a, 0) = a` and `gcd(0, 0) = 0`.
pub fn gcd(mut a: Nat, mut b: Nat) -> Nat {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub(crate) fn mul_mod(a: Nat, b: Nat, modulus: Nat) -> Nat {
    ((a as u128 * b as u128) % modulus as u128) as Nat
}

/// `base^exp mod modulus`, by square-and-multiply.
pub fn mod_pow(base: Nat, mut exp: Nat, modulus: Nat) -> Result<Nat> {
    if modulus == 0 {
        return Err(Error::Domain("mod_pow: modulus must be at least 1".into()));
    }
    let mut acc = 1 % modulus;
    let mut sq = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, sq, modulus);
        }
        sq = mul_mod(sq, sq, modulus);
        exp >>= 1;
    }
    Ok(acc)
}

/// Least `t >= 1` with `r^t = 1 (mod k)`.
///
/// Defined only when `k >= 1` and `gcd(r, k) = 1`; the order modulo 1 is 1.
pub fn mult_order(r: Nat, k: Nat) -> Result<Nat> {
    if k == 0 {
        return Err(Error::Domain(
            "mult_order: modulus must be at least 1".into(),
        ));
    }
    if gcd(r % k, k) != 1 {
        return Err(Error::Domain(format!(
            "mult_order: gcd({r}, {k}) != 1, order undefined"
        )));
    }
    if k == 1 {
        return Ok(1);
    }
    let base = r % k;
    let mut x = base;
    let mut t = 1;
    // The order divides phi(k) < k, so this terminates within k steps.
    while x != 1 {
        x = mul_mod(x, base, k);
        t += 1;
    }
    Ok(t)
}

/// The repunit `[u]_r = 1 + r + ... + r^(u-1)` reduced modulo `m`, with
/// `[0]_r = 0`.
///
/// Only the residue is kept: every consumer uses it inside `gcd(m, .)` or
/// as an exponent of `a`, and both are invariant under reduction mod `m`.
pub fn repunit(u: Nat, r: Nat, m: Nat) -> Result<Nat> {
    if m == 0 {
        return Err(Error::Domain("repunit: modulus must be at least 1".into()));
    }
    let r = r % m;
    let mut acc = 0;
    for _ in 0..u {
        acc = (mul_mod(acc, r, m) + 1) % m;
    }
    Ok(acc)
}

/// Repunits `[0]_r, [1]_r, ..., [len-1]_r` modulo `m`.
pub fn repunit_table(len: Nat, r: Nat, m: Nat) -> Result<Vec<Nat>> {
    if m == 0 {
        return Err(Error::Domain("repunit: modulus must be at least 1".into()));
    }
    let r = r % m;
    let mut out = Vec::with_capacity(len as usize);
    let mut acc = 0;
    for _ in 0..len {
        out.push(acc);
        acc = (mul_mod(acc, r, m) + 1) % m;
    }
    Ok(out)
}

/// Euler's totient, by trial division.
pub fn euler_phi(m: Nat) -> Result<Nat> {
    if m == 0 {
        return Err(Error::Domain(
            "euler_phi: argument must be at least 1".into(),
        ));
    }
    let mut rest = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    Ok(phi)
}

pub fn is_prime(n: Nat) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(4, 2), 2);
        assert_eq!(gcd(4, 0), 4);
        assert_eq!(gcd(0, 4), 4);
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(3, 7), 1);
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(2, 4, 5), Ok(1));
        assert_eq!(mod_pow(2, 0, 3), Ok(1));
        assert_eq!(mod_pow(7, 3, 1), Ok(0));
        assert_eq!(mod_pow(7, 0, 1), Ok(0));
        assert!(matches!(mod_pow(2, 3, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn mod_pow_large_modulus_is_exact() {
        let m = (1u64 << 61) - 1;
        // Fermat: a^(p-1) = 1 for the Mersenne prime 2^61 - 1.
        assert_eq!(mod_pow(3, m - 1, m), Ok(1));
    }

    #[test]
    fn mult_order_examples() {
        assert_eq!(mult_order(2, 3), Ok(2));
        assert_eq!(mult_order(5, 1), Ok(1));
        assert_eq!(mult_order(2, 7), Ok(3));
        assert_eq!(mult_order(0, 1), Ok(1));
        assert!(matches!(mult_order(2, 4), Err(Error::Domain(_))));
        assert!(matches!(mult_order(3, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn repunit_examples() {
        assert_eq!(repunit(0, 2, 3), Ok(0));
        assert_eq!(repunit(3, 2, 3), Ok(1));
        assert_eq!(repunit(2, 4, 5), Ok(0));
        assert!(matches!(repunit(1, 2, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn repunit_table_matches_pointwise() {
        let table = repunit_table(40, 7, 30).unwrap();
        for (u, &val) in table.iter().enumerate() {
            assert_eq!(repunit(u as Nat, 7, 30), Ok(val));
        }
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1), Ok(1));
        assert_eq!(euler_phi(3), Ok(2));
        assert_eq!(euler_phi(12), Ok(4));
        assert!(matches!(euler_phi(0), Err(Error::Domain(_))));
    }

    #[test]
    fn euler_phi_matches_counting() {
        for m in 1..=300 {
            let count = (1..=m).filter(|&k| gcd(k, m) == 1).count() as Nat;
            assert_eq!(euler_phi(m), Ok(count), "m = {m}");
        }
    }

    #[test]
    fn order_is_least_exponent() {
        for k in 1..=200 {
            for r in 0..k {
                if gcd(r, k) != 1 {
                    continue;
                }
                let t = mult_order(r, k).unwrap();
                assert_eq!(mod_pow(r, t, k).unwrap(), 1 % k);
                for s in 1..t {
                    assert_ne!(mod_pow(r, s, k).unwrap(), 1 % k, "r={r} k={k} s={s}");
                }
            }
        }
    }

    #[test]
    fn order_divides_every_annihilating_exponent() {
        for k in 1..=200 {
            for r in 0..k {
                if gcd(r, k) != 1 {
                    continue;
                }
                let t = mult_order(r, k).unwrap();
                for s in 1..=2 * k {
                    if mod_pow(r, s, k).unwrap() == 1 % k {
                        assert_eq!(s % t, 0, "r={r} k={k} s={s}");
                    }
                }
            }
        }
    }

    #[test]
    fn primes() {
        let small: Vec<Nat> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    proptest! {
        #[test]
        fn gcd_symmetric_and_divides(a in 0u64..100_000, b in 0u64..100_000) {
            let g = gcd(a, b);
            prop_assert_eq!(g, gcd(b, a));
            if g != 0 {
                prop_assert_eq!(a % g, 0);
                prop_assert_eq!(b % g, 0);
            }
        }

        #[test]
        fn repunit_recurrence(r in 0u64..1000, m in 1u64..1000) {
            let table = repunit_table(400, r, m).unwrap();
            for u in 0..399 {
                prop_assert_eq!(table[u + 1], (table[u] * (r % m) + 1) % m);
            }
        }

        #[test]
        fn repunit_gcd_stable_under_reduction(u in 0u64..=30, r in 0u64..=10, m in 1u64..500) {
            let exact: u128 = (0..u).map(|i| (r as u128).pow(i as u32)).sum();
            let reduced = repunit(u, r, m).unwrap();
            let exact_gcd = {
                let (mut a, mut b) = (m as u128, exact);
                while b != 0 {
                    let t = a % b;
                    a = b;
                    b = t;
                }
                a as Nat
            };
            prop_assert_eq!(exact_gcd, gcd(m, reduced));
        }
    }
}
