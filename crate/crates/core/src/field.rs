//! Exact arithmetic in the prime field `F_p` for an odd prime `p`.
//!
//! Everything is computed on canonical residues in `[0, p)` with 64-bit
//! intermediates, so any modulus up to `2^31 - 1` is safe. Beyond the four
//! ring operations the module provides quadratic-residue tests, square
//! roots (Tonelli-Shanks) and elements of prescribed multiplicative order,
//! which the matrix constructions downstream rely on.

use std::sync::OnceLock;

use crate::{Error, Result};

/// A canonical residue in `[0, p)`. Values are only created through [`Fp`],
/// which keeps the invariant that they are already reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpElement(u32);

impl FpElement {
    pub fn value(self) -> u32 {
        self.0
    }
}

impl std::fmt::Display for FpElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut acc: u32 = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat; `a` must be nonzero mod the prime `p`.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(!a.is_multiple_of(p), "division by zero mod {p}");
    pow_mod(a, p as u64 - 2, p)
}

fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The field `F_p` for an odd prime `p <= 2^31 - 1`.
///
/// Cheap to clone; the primitive root is computed once per instance on
/// first use. All operations are pure, so a shared reference can be used
/// from concurrent workers.
#[derive(Debug, Clone)]
pub struct Fp {
    p: u32,
    root: OnceLock<u32>,
}

impl Fp {
    /// Primality is checked by trial division, which is exact over the
    /// whole supported range.
    pub fn new(p: u32) -> Result<Fp> {
        if p > (1 << 31) - 1 || !is_odd_prime(p) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Fp {
            p,
            root: OnceLock::new(),
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary value to its canonical residue.
    pub fn elem(&self, v: u64) -> FpElement {
        FpElement((v % self.p as u64) as u32)
    }

    /// Reduces a signed value, mapping negatives to `p - |v| mod p`.
    pub fn elem_signed(&self, v: i64) -> FpElement {
        let r = v.rem_euclid(self.p as i64);
        FpElement(r as u32)
    }

    pub fn zero(&self) -> FpElement {
        FpElement(0)
    }

    pub fn one(&self) -> FpElement {
        FpElement(1 % self.p)
    }

    pub fn add(&self, a: FpElement, b: FpElement) -> FpElement {
        FpElement(add_mod(a.0, b.0, self.p))
    }

    pub fn sub(&self, a: FpElement, b: FpElement) -> FpElement {
        FpElement(sub_mod(a.0, b.0, self.p))
    }

    pub fn mul(&self, a: FpElement, b: FpElement) -> FpElement {
        FpElement(mul_mod(a.0, b.0, self.p))
    }

    pub fn neg(&self, a: FpElement) -> FpElement {
        FpElement(neg_mod(a.0, self.p))
    }

    pub fn pow(&self, a: FpElement, e: u64) -> FpElement {
        FpElement(pow_mod(a.0, e, self.p))
    }

    /// # Panics
    ///
    /// Panics if `a` is zero.
    pub fn inv(&self, a: FpElement) -> FpElement {
        FpElement(inv_mod(a.0, self.p))
    }

    /// # Panics
    ///
    /// Panics if `b` is zero.
    pub fn div(&self, a: FpElement, b: FpElement) -> FpElement {
        self.mul(a, self.inv(b))
    }

    /// Euler's criterion: `a^((p-1)/2) = 1`.
    ///
    /// # Panics
    ///
    /// Panics if `a` is zero; zero is neither a residue nor a non-residue.
    pub fn is_qr(&self, a: FpElement) -> bool {
        assert!(a.0 != 0, "is_qr is undefined on zero");
        pow_mod(a.0, (self.p as u64 - 1) / 2, self.p) == 1
    }

    /// Square root by Tonelli-Shanks. Of the two roots `{r, p-r}` the
    /// numerically smaller residue is returned, so the output is
    /// deterministic. `sqrt_mod(0) = 0`.
    pub fn sqrt_mod(&self, a: FpElement) -> Result<FpElement> {
        let p = self.p;
        if a.0 == 0 {
            return Ok(FpElement(0));
        }
        if !self.is_qr(a) {
            return Err(Error::NonResidue { value: a.0, p });
        }
        let r = if p % 4 == 3 {
            pow_mod(a.0, (p as u64 + 1) / 4, p)
        } else {
            self.tonelli_shanks(a.0)
        };
        debug_assert_eq!(mul_mod(r, r, p), a.0);
        Ok(FpElement(r.min(p - r)))
    }

    fn tonelli_shanks(&self, a: u32) -> u32 {
        let p = self.p;
        // p - 1 = q * 2^s with q odd
        let mut q = p as u64 - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        // any non-residue works as the seed; scan upward deterministically
        let mut z = 2u32;
        while pow_mod(z, (p as u64 - 1) / 2, p) == 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, q.div_ceil(2), p);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = mul_mod(t2, t2, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        r
    }

    /// The smallest primitive root of `p`, found by ascending trial with
    /// order verification against the prime factors of `p - 1`.
    pub fn primitive_root(&self) -> u32 {
        *self.root.get_or_init(|| {
            let p = self.p;
            let factors = prime_factors(p as u64 - 1);
            'outer: for g in 2..p {
                for &q in &factors {
                    if pow_mod(g, (p as u64 - 1) / q, p) == 1 {
                        continue 'outer;
                    }
                }
                return g;
            }
            unreachable!("every prime has a primitive root")
        })
    }

    /// `g^((p-1)/n)` for the smallest primitive root `g`; the result has
    /// multiplicative order exactly `n`.
    pub fn element_of_order(&self, n: u32) -> Result<FpElement> {
        let p = self.p;
        if n == 0 || !(p as u64 - 1).is_multiple_of(n as u64) {
            return Err(Error::NoSuchOrder { n, p });
        }
        let g = self.primitive_root();
        let e = FpElement(pow_mod(g, (p as u64 - 1) / n as u64, p));
        debug_assert_eq!(self.multiplicative_order(e), n);
        Ok(e)
    }

    /// Order of a nonzero residue in `F_p*`.
    pub fn multiplicative_order(&self, a: FpElement) -> u32 {
        assert!(a.0 != 0, "zero has no multiplicative order");
        let mut x = a.0;
        let mut n = 1u32;
        while x != 1 {
            x = mul_mod(x, a.0, self.p);
            n += 1;
        }
        n
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_primes() {
        for p in [0u32, 1, 2, 4, 9, 15, 91, 2 << 20] {
            assert!(Fp::new(p).is_err(), "p={p} accepted");
        }
        for p in [3u32, 5, 17, 101, 2147483647] {
            assert!(Fp::new(p).is_ok(), "p={p} rejected");
        }
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = Fp::new(5).unwrap();
        assert_eq!(f5.inv(f5.elem(2)).value(), 3);
        let f17 = Fp::new(17).unwrap();
        assert_eq!(f17.pow(f17.elem(3), 16).value(), 1);
        // 13 * 4 = 52 = 3 * 17 + 1
        assert_eq!(f17.mul(f17.elem(13), f17.elem(4)).value(), 1);
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn inverting_zero_panics() {
        let f = Fp::new(7).unwrap();
        f.inv(f.zero());
    }

    #[test]
    fn quadratic_residues() {
        let f13 = Fp::new(13).unwrap();
        assert!(f13.is_qr(f13.one()));
        let f5 = Fp::new(5).unwrap();
        // squares mod 5 are {1, 4}
        assert!(!f5.is_qr(f5.elem(2)));
        let f17 = Fp::new(17).unwrap();
        // 6^2 = 36 = 2 mod 17
        assert!(f17.is_qr(f17.elem(2)));
    }

    #[test]
    fn qr_count_is_half() {
        for p in [3u32, 5, 7, 13, 17, 29, 97, 101] {
            let f = Fp::new(p).unwrap();
            let count = (1..p).filter(|&a| f.is_qr(f.elem(a as u64))).count();
            assert_eq!(count as u32, (p - 1) / 2, "p={p}");
        }
    }

    #[test]
    fn sqrt_examples() {
        let f17 = Fp::new(17).unwrap();
        // 6^2 = 11^2 = 2 mod 17; the smaller root wins
        assert_eq!(f17.sqrt_mod(f17.elem(2)).unwrap().value(), 6);
        assert_eq!(f17.sqrt_mod(f17.zero()).unwrap().value(), 0);
        let f13 = Fp::new(13).unwrap();
        assert_eq!(f13.sqrt_mod(f13.elem(4)).unwrap().value(), 2);
        assert!(matches!(
            f13.sqrt_mod(f13.elem(2)),
            Err(Error::NonResidue { value: 2, p: 13 })
        ));
    }

    #[test]
    fn sqrt_on_all_residues() {
        for p in [3u32, 5, 13, 17, 29, 41, 101] {
            let f = Fp::new(p).unwrap();
            for a in 1..p {
                let a = f.elem(a as u64);
                if f.is_qr(a) {
                    let r = f.sqrt_mod(a).unwrap();
                    assert_eq!(f.mul(r, r), a);
                    assert!(r.value() <= p - r.value());
                }
            }
        }
    }

    #[test]
    fn elements_of_prescribed_order() {
        let f17 = Fp::new(17).unwrap();
        assert_eq!(f17.primitive_root(), 3);
        assert_eq!(f17.element_of_order(16).unwrap().value(), 3);
        assert_eq!(f17.element_of_order(2).unwrap().value(), 16);
        let f13 = Fp::new(13).unwrap();
        // smallest primitive root mod 13 is 2, and 2^(12/4) = 8 has order 4
        assert_eq!(f13.primitive_root(), 2);
        assert_eq!(f13.element_of_order(4).unwrap().value(), 8);
        assert!(matches!(
            f13.element_of_order(5),
            Err(Error::NoSuchOrder { n: 5, p: 13 })
        ));
    }

    #[test]
    fn order_is_exact() {
        for p in [5u32, 13, 17, 101] {
            let f = Fp::new(p).unwrap();
            for n in 1..=(p - 1) {
                if (p - 1) % n != 0 {
                    continue;
                }
                let e = f.element_of_order(n).unwrap();
                assert_eq!(f.pow(e, n as u64).value(), 1);
                for d in 1..n {
                    if n % d == 0 {
                        assert_ne!(f.pow(e, d as u64).value(), 1, "p={p} n={n} d={d}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn inverse_roundtrip(p in prop::sample::select(vec![5u32, 13, 17, 97, 101]), a in 1u64..10_000) {
            let f = Fp::new(p).unwrap();
            let a = f.elem(a);
            prop_assume!(a.value() != 0);
            prop_assert_eq!(f.mul(a, f.inv(a)).value(), 1);
        }

        #[test]
        fn sub_then_add(p in prop::sample::select(vec![5u32, 13, 17, 97]), a in 0u64..1000, b in 0u64..1000) {
            let f = Fp::new(p).unwrap();
            let (a, b) = (f.elem(a), f.elem(b));
            prop_assert_eq!(f.add(f.sub(a, b), b), a);
        }
    }
}
