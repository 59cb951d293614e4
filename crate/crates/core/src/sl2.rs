//! Elements of `SL(2,p)` and the fully enumerated group.
//!
//! A [`GroupTable`] lists all `(p+1)p(p-1)` elements in a fixed canonical
//! order and maps any matrix back to its dense index in O(1), which is what
//! the bit-vector set algebra in [`crate::growth`] is built on.
//!
//! The enumeration order is part of the contract (indices are stable across
//! runs and show up in reports): first the matrices with `a = 0`, iterated
//! by `(b, d)` with `c = -b^{-1}` forced, then the matrices with `a != 0`,
//! iterated lexicographically by `(a, b, c)` with `d = (1 + bc) / a` forced.

use std::fmt;
use std::sync::Arc;

use crate::field::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod, Fp};
use crate::{Error, Result};

/// A 2x2 determinant-1 matrix over `F_p`, stored row-major as `[a, b, c, d]`
/// with canonical residues.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    p: u32,
    m: [u32; 4],
}

impl GroupElement {
    /// Builds a matrix from canonical or signed entries, checking that the
    /// determinant is 1.
    pub fn new(p: u32, entries: [i64; 4]) -> Result<GroupElement> {
        let m: [u32; 4] = {
            let mut out = [0u32; 4];
            for (o, &e) in out.iter_mut().zip(entries.iter()) {
                *o = e.rem_euclid(p as i64) as u32;
            }
            out
        };
        let det = sub_mod(mul_mod(m[0], m[3], p), mul_mod(m[1], m[2], p), p);
        if det != 1 {
            return Err(Error::NotUnimodular { det, p });
        }
        Ok(GroupElement { p, m })
    }

    pub fn identity(p: u32) -> GroupElement {
        GroupElement { p, m: [1, 0, 0, 1] }
    }

    /// `-I`, the unique involution of `SL(2,p)`.
    pub fn neg_identity(p: u32) -> GroupElement {
        GroupElement {
            p,
            m: [p - 1, 0, 0, p - 1],
        }
    }

    /// `u(alpha, beta) = [[alpha, beta], [0, alpha^{-1}]]`; `alpha` nonzero.
    pub fn upper(p: u32, alpha: u32, beta: u32) -> GroupElement {
        assert!(!alpha.is_multiple_of(p), "upper-triangular u(alpha, beta) needs alpha != 0");
        GroupElement {
            p,
            m: [alpha % p, beta % p, 0, inv_mod(alpha, p)],
        }
    }

    /// `diag[alpha, alpha^{-1}]`.
    pub fn diag(p: u32, alpha: u32) -> GroupElement {
        assert!(!alpha.is_multiple_of(p), "diag[alpha, 1/alpha] needs alpha != 0");
        GroupElement {
            p,
            m: [alpha % p, 0, 0, inv_mod(alpha, p)],
        }
    }

    /// `antidiag[v, -v^{-1}] = [[0, v], [-v^{-1}, 0]]`, determinant 1.
    pub fn antidiag(p: u32, v: u32) -> GroupElement {
        assert!(!v.is_multiple_of(p), "antidiag[v, -1/v] needs v != 0");
        GroupElement {
            p,
            m: [0, v % p, neg_mod(inv_mod(v, p), p), 0],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Row-major `[a, b, c, d]`.
    pub fn entries(&self) -> [u32; 4] {
        self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m == [1, 0, 0, 1]
    }

    pub fn trace(&self) -> u32 {
        add_mod(self.m[0], self.m[3], self.p)
    }

    /// Matrix product. Both factors must live over the same modulus.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(
            self.p, other.p,
            "cannot multiply matrices over different moduli"
        );
        let p = self.p;
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = other.m;
        GroupElement {
            p,
            m: [
                add_mod(mul_mod(a, e, p), mul_mod(b, g, p), p),
                add_mod(mul_mod(a, f, p), mul_mod(b, h, p), p),
                add_mod(mul_mod(c, e, p), mul_mod(d, g, p), p),
                add_mod(mul_mod(c, f, p), mul_mod(d, h, p), p),
            ],
        }
    }

    /// Closed-form inverse `[d, -b; -c, a]` for determinant-1 matrices.
    pub fn inv(&self) -> GroupElement {
        let p = self.p;
        let [a, b, c, d] = self.m;
        GroupElement {
            p,
            m: [d, neg_mod(b, p), neg_mod(c, p), a],
        }
    }

    /// `-g`.
    pub fn neg(&self) -> GroupElement {
        let p = self.p;
        GroupElement {
            p,
            m: [
                neg_mod(self.m[0], p),
                neg_mod(self.m[1], p),
                neg_mod(self.m[2], p),
                neg_mod(self.m[3], p),
            ],
        }
    }

    /// Conjugate `x^{-1} g x`.
    pub fn conj(&self, x: &GroupElement) -> GroupElement {
        x.inv().mul(self).mul(x)
    }

    pub fn pow(&self, e: i64) -> GroupElement {
        let mut base = if e < 0 { self.inv() } else { *self };
        let mut e = e.unsigned_abs();
        let mut acc = GroupElement::identity(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Least `n >= 1` with `g^n = I`, by repeated multiplication.
    pub fn order(&self) -> u32 {
        let cap = group_order(self.p);
        let mut x = *self;
        let mut n = 1u32;
        while !x.is_identity() {
            x = x.mul(self);
            n += 1;
            assert!((n as u64) <= cap, "order exceeded |SL(2,p)|");
        }
        n
    }

    /// Parses the matrix text format `[[a,b],[c,d]]`. Whitespace is ignored
    /// anywhere; entries may carry a sign and are reduced mod `p`.
    pub fn parse(s: &str, p: u32) -> Result<GroupElement> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix("[[")
            .and_then(|t| t.strip_suffix("]]"))
            .ok_or_else(|| Error::Parse(format!("expected [[a,b],[c,d]], got {s:?}")))?;
        let rows: Vec<&str> = inner.split("],[").collect();
        if rows.len() != 2 {
            return Err(Error::Parse(format!("expected two rows in {s:?}")));
        }
        let mut entries = [0i64; 4];
        for (r, row) in rows.iter().enumerate() {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != 2 {
                return Err(Error::Parse(format!("expected two entries per row in {s:?}")));
            }
            for (c, col) in cols.iter().enumerate() {
                entries[2 * r + c] = col
                    .parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad entry {col:?}: {e}")))?;
            }
        }
        GroupElement::new(p, entries)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} mod {}", self.p)
    }
}

/// `|SL(2,p)| = (p+1)p(p-1)`.
pub fn group_order(p: u32) -> u64 {
    (p as u64 + 1) * p as u64 * (p as u64 - 1)
}

/// The fully enumerated group `SL(2,p)` with dense element indices.
///
/// Immutable after construction; share it across workers behind an [`Arc`].
pub struct GroupTable {
    fp: Fp,
    p: u32,
    elements: Vec<GroupElement>,
    inv_idx: Vec<u32>,
    neg_idx: Vec<u32>,
    mul_table: Option<Vec<u32>>,
}

impl GroupTable {
    /// Default memory budget, in group elements. `p = 113` fits.
    pub const DEFAULT_BUDGET: u64 = 2_000_000;

    pub fn enumerate(p: u32) -> Result<GroupTable> {
        GroupTable::enumerate_with_budget(p, GroupTable::DEFAULT_BUDGET)
    }

    /// Convenience for the common "enumerate and share" pattern.
    pub fn shared(p: u32) -> Result<Arc<GroupTable>> {
        Ok(Arc::new(GroupTable::enumerate(p)?))
    }

    pub fn enumerate_with_budget(p: u32, budget: u64) -> Result<GroupTable> {
        let fp = Fp::new(p)?;
        let order = group_order(p);
        if order > budget {
            return Err(Error::BudgetExceeded { order, budget });
        }
        let mut elements = Vec::with_capacity(order as usize);
        // inverses of 1..p, shared by both blocks
        let inv: Vec<u32> = std::iter::once(0)
            .chain((1..p).map(|v| inv_mod(v, p)))
            .collect();
        for b in 1..p {
            let c = neg_mod(inv[b as usize], p);
            for d in 0..p {
                elements.push(GroupElement { p, m: [0, b, c, d] });
            }
        }
        for a in 1..p {
            let a_inv = inv[a as usize];
            for b in 0..p {
                for c in 0..p {
                    let d = mul_mod(add_mod(1, mul_mod(b, c, p), p), a_inv, p);
                    elements.push(GroupElement { p, m: [a, b, c, d] });
                }
            }
        }
        debug_assert_eq!(elements.len() as u64, order);
        let table = GroupTable {
            fp,
            p,
            elements,
            inv_idx: Vec::new(),
            neg_idx: Vec::new(),
            mul_table: None,
        };
        let inv_idx = table
            .elements
            .iter()
            .map(|g| table.index_of(&g.inv()))
            .collect();
        let neg_idx = table
            .elements
            .iter()
            .map(|g| table.index_of(&g.neg()))
            .collect();
        Ok(GroupTable {
            inv_idx,
            neg_idx,
            ..table
        })
    }

    /// Precomputes the full `|G| x |G|` multiplication table. Only sensible
    /// for tiny primes; the exhaustive search uses it for `p = 5`.
    pub fn with_mul_table(mut self) -> GroupTable {
        let n = self.elements.len();
        let mut t = vec![0u32; n * n];
        for i in 0..n {
            let gi = self.elements[i];
            for j in 0..n {
                t[i * n + j] = self.index_of(&gi.mul(&self.elements[j]));
            }
        }
        self.mul_table = Some(t);
        self
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn fp(&self) -> &Fp {
        &self.fp
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn element(&self, idx: u32) -> &GroupElement {
        &self.elements[idx as usize]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// Dense index of a matrix, inverted arithmetically from the canonical
    /// enumeration order.
    pub fn index_of(&self, g: &GroupElement) -> u32 {
        debug_assert_eq!(g.p, self.p);
        let p = self.p;
        let [a, b, c, _d] = g.m;
        let idx = if a == 0 {
            (b - 1) * p + g.m[3]
        } else {
            p * (p - 1) + ((a - 1) * p + b) * p + c
        };
        debug_assert_eq!(self.elements[idx as usize], *g);
        idx
    }

    pub fn identity_index(&self) -> u32 {
        self.p * (self.p - 1)
    }

    pub fn neg_identity_index(&self) -> u32 {
        self.index_of(&GroupElement::neg_identity(self.p))
    }

    /// Index of `elements[i] * elements[j]`.
    pub fn mul_idx(&self, i: u32, j: u32) -> u32 {
        if let Some(t) = &self.mul_table {
            t[i as usize * self.elements.len() + j as usize]
        } else {
            self.index_of(&self.elements[i as usize].mul(&self.elements[j as usize]))
        }
    }

    pub fn inv_idx(&self, i: u32) -> u32 {
        self.inv_idx[i as usize]
    }

    pub fn neg_idx(&self, i: u32) -> u32 {
        self.neg_idx[i as usize]
    }

    pub fn has_mul_table(&self) -> bool {
        self.mul_table.is_some()
    }

    pub(crate) fn mul_row(&self, i: u32) -> Option<&[u32]> {
        let n = self.elements.len();
        self.mul_table
            .as_ref()
            .map(|t| &t[i as usize * n..(i as usize + 1) * n])
    }

    pub(crate) fn raw_mul_table(&self) -> Option<&[u32]> {
        self.mul_table.as_deref()
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable(SL(2,{}), order {})", self.p, self.order())
    }
}
