//! Set algebra over subsets of an enumerated `SL(2,p)`.
//!
//! [`ElementSet`] is a dense bit-vector over element indices. Sets are
//! immutable after construction: every operation returns a new set, so
//! read-sharing across workers is safe. The module covers setwise products
//! and triple products, the growth report `Δ(S) = log|S³|/log|S|`, subgroup
//! closure, double cosets `HxH` with the Frobenius size formula, coset
//! cores `xH ∩ Hx`, and projection to `PSL(2,p)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::sl2::{GroupElement, GroupTable};
use crate::{Error, Result};

fn word_count(order: u64) -> usize {
    order.div_ceil(64) as usize
}

fn set_bit(words: &mut [u64], i: u32) {
    words[(i / 64) as usize] |= 1u64 << (i % 64);
}

fn test_bit(words: &[u64], i: u32) -> bool {
    words[(i / 64) as usize] >> (i % 64) & 1 == 1
}

fn popcount(words: &[u64]) -> u64 {
    words.iter().map(|w| w.count_ones() as u64).sum()
}

fn iter_bits(words: &[u64]) -> impl Iterator<Item = u32> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(wi as u32 * 64 + b)
            }
        })
    })
}

/// A subset of an enumerated group, stored as a dense bit-vector over
/// element indices. Immutable; operations produce new sets.
#[derive(Clone)]
pub struct ElementSet {
    table: Arc<GroupTable>,
    bits: Box<[u64]>,
    len: u64,
    subgroup: OnceLock<bool>,
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.table.modulus() == other.table.modulus() && self.bits == other.bits
    }
}

impl Eq for ElementSet {}

impl std::hash::Hash for ElementSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.table.modulus().hash(state);
        self.bits.hash(state);
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ElementSet({} of {} in SL(2,{}))",
            self.len,
            self.table.order(),
            self.table.modulus()
        )
    }
}

impl ElementSet {
    fn from_words(table: Arc<GroupTable>, words: Vec<u64>) -> ElementSet {
        let len = popcount(&words);
        ElementSet {
            table,
            bits: words.into_boxed_slice(),
            len,
            subgroup: OnceLock::new(),
        }
    }

    pub fn empty(table: &Arc<GroupTable>) -> ElementSet {
        ElementSet::from_words(Arc::clone(table), vec![0; word_count(table.order())])
    }

    pub fn full(table: &Arc<GroupTable>) -> ElementSet {
        let mut words = vec![!0u64; word_count(table.order())];
        let extra = (64 * words.len()) as u64 - table.order();
        if extra > 0 {
            *words.last_mut().unwrap() >>= extra;
        }
        ElementSet::from_words(Arc::clone(table), words)
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(
        table: &Arc<GroupTable>,
        indices: I,
    ) -> ElementSet {
        let mut words = vec![0u64; word_count(table.order())];
        for i in indices {
            assert!((i as u64) < table.order(), "index out of range");
            set_bit(&mut words, i);
        }
        ElementSet::from_words(Arc::clone(table), words)
    }

    pub fn from_elements(table: &Arc<GroupTable>, elements: &[GroupElement]) -> Result<ElementSet> {
        let mut words = vec![0u64; word_count(table.order())];
        for g in elements {
            if g.modulus() != table.modulus() {
                return Err(Error::ModulusMismatch(g.modulus(), table.modulus()));
            }
            set_bit(&mut words, table.index_of(g));
        }
        Ok(ElementSet::from_words(Arc::clone(table), words))
    }

    pub fn table(&self) -> &Arc<GroupTable> {
        &self.table
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains_index(&self, i: u32) -> bool {
        test_bit(&self.bits, i)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.modulus() == self.table.modulus() && test_bit(&self.bits, self.table.index_of(g))
    }

    pub fn indices(&self) -> impl Iterator<Item = u32> + '_ {
        iter_bits(&self.bits)
    }

    pub fn elements(&self) -> impl Iterator<Item = &GroupElement> + '_ {
        self.indices().map(|i| self.table.element(i))
    }

    fn same_table(&self, other: &ElementSet) -> bool {
        self.table.modulus() == other.table.modulus()
    }

    fn zip_words(&self, other: &ElementSet, op: impl Fn(u64, u64) -> u64) -> ElementSet {
        assert!(self.same_table(other), "sets over different tables");
        let words = self
            .bits
            .iter()
            .zip(other.bits.iter())
            .map(|(&a, &b)| op(a, b))
            .collect();
        ElementSet::from_words(Arc::clone(&self.table), words)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersect(&self, other: &ElementSet) -> ElementSet {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn with_index(&self, i: u32) -> ElementSet {
        let mut words = self.bits.to_vec();
        set_bit(&mut words, i);
        ElementSet::from_words(Arc::clone(&self.table), words)
    }

    /// `S ∪ {x, x^{-1}}`.
    pub fn with_pair(&self, i: u32) -> ElementSet {
        let mut words = self.bits.to_vec();
        set_bit(&mut words, i);
        set_bit(&mut words, self.table.inv_idx(i));
        ElementSet::from_words(Arc::clone(&self.table), words)
    }

    /// `S \ {x, x^{-1}}`.
    pub fn without_pair(&self, i: u32) -> ElementSet {
        let mut words = self.bits.to_vec();
        let j = self.table.inv_idx(i);
        words[(i / 64) as usize] &= !(1u64 << (i % 64));
        words[(j / 64) as usize] &= !(1u64 << (j % 64));
        ElementSet::from_words(Arc::clone(&self.table), words)
    }

    /// `{x^{-1} : x ∈ S}`.
    pub fn inverse_set(&self) -> ElementSet {
        let t = &self.table;
        let mut words = vec![0u64; self.bits.len()];
        for i in self.indices() {
            set_bit(&mut words, t.inv_idx(i));
        }
        ElementSet::from_words(Arc::clone(t), words)
    }

    pub fn is_symmetric(&self) -> bool {
        self.indices()
            .all(|i| test_bit(&self.bits, self.table.inv_idx(i)))
    }

    pub fn contains_identity(&self) -> bool {
        test_bit(&self.bits, self.table.identity_index())
    }

    /// `{x * g : x ∈ S}`.
    pub fn right_mul(&self, g: &GroupElement) -> ElementSet {
        let t = &self.table;
        assert_eq!(g.modulus(), t.modulus());
        let mut words = vec![0u64; self.bits.len()];
        for i in self.indices() {
            set_bit(&mut words, t.index_of(&t.element(i).mul(g)));
        }
        ElementSet::from_words(Arc::clone(t), words)
    }

    /// `{g * x : x ∈ S}`.
    pub fn left_mul(&self, g: &GroupElement) -> ElementSet {
        let t = &self.table;
        assert_eq!(g.modulus(), t.modulus());
        let mut words = vec![0u64; self.bits.len()];
        for i in self.indices() {
            set_bit(&mut words, t.index_of(&g.mul(t.element(i))));
        }
        ElementSet::from_words(Arc::clone(t), words)
    }

    /// `{g^{-1} x g : x ∈ S}`.
    pub fn conjugate_by(&self, g: &GroupElement) -> ElementSet {
        self.left_mul(&g.inv()).right_mul(g)
    }

    /// Setwise product `{ab : a ∈ A, b ∈ B}`.
    pub fn product(&self, other: &ElementSet) -> Result<ElementSet> {
        if !self.same_table(other) {
            return Err(Error::TableMismatch);
        }
        Ok(self.product_unchecked(other))
    }

    pub(crate) fn product_unchecked(&self, other: &ElementSet) -> ElementSet {
        let t = &self.table;
        let mut words = vec![0u64; self.bits.len()];
        if t.has_mul_table() {
            for i in self.indices() {
                let row = t.mul_row(i).unwrap();
                for j in other.indices() {
                    set_bit(&mut words, row[j as usize]);
                }
            }
        } else {
            for i in self.indices() {
                let gi = *t.element(i);
                for j in other.indices() {
                    set_bit(&mut words, t.index_of(&gi.mul(t.element(j))));
                }
            }
        }
        ElementSet::from_words(Arc::clone(t), words)
    }

    /// `S³ = S·S·S`.
    pub fn triple(&self) -> ElementSet {
        self.product_unchecked(self).product_unchecked(self)
    }

    /// The subgroup `⟨S⟩`: breadth-first orbit of the identity under right
    /// multiplication by `S ∪ S^{-1}`.
    pub fn closure(&self) -> ElementSet {
        assert!(!self.is_empty(), "closure of the empty set");
        let (words, _, _) = self.closure_impl(None);
        ElementSet::from_words(Arc::clone(&self.table), words)
    }

    /// Whether `⟨S⟩` is the whole group. Stops the closure early once more
    /// than half the group is reached, which already forces `⟨S⟩ = G`.
    pub fn generates(&self) -> bool {
        assert!(!self.is_empty(), "generation of the empty set");
        let half = self.table.order() / 2 + 1;
        let (_, size, stopped) = self.closure_impl(Some(half));
        stopped || size == self.table.order()
    }

    /// Closure that gives up once it exceeds `limit` elements. Used by
    /// constructions that only care about subgroups up to a known order.
    pub(crate) fn closure_within(&self, limit: u64) -> Option<ElementSet> {
        let (words, size, stopped) = self.closure_impl(Some(limit + 1));
        if stopped && size > limit {
            None
        } else {
            Some(ElementSet::from_words(Arc::clone(&self.table), words))
        }
    }

    fn closure_impl(&self, early_exit: Option<u64>) -> (Vec<u64>, u64, bool) {
        let t = &self.table;
        let mut gens: Vec<u32> = Vec::with_capacity(2 * self.len as usize);
        for i in self.indices() {
            gens.push(i);
            let inv = t.inv_idx(i);
            if inv != i {
                gens.push(inv);
            }
        }
        let mut words = vec![0u64; self.bits.len()];
        let id = t.identity_index();
        set_bit(&mut words, id);
        let mut size = 1u64;
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &f in &frontier {
                for &g in &gens {
                    let n = t.mul_idx(f, g);
                    if !test_bit(&words, n) {
                        set_bit(&mut words, n);
                        size += 1;
                        next.push(n);
                    }
                }
                if let Some(limit) = early_exit {
                    if size >= limit {
                        return (words, size, true);
                    }
                }
            }
            frontier = next;
        }
        (words, size, false)
    }

    /// Subgroup test (contains the identity and is closed under products);
    /// quadratic in `|S|` and cached per set.
    pub fn is_subgroup(&self) -> bool {
        *self.subgroup.get_or_init(|| {
            if !self.contains_identity() {
                return false;
            }
            let t = &self.table;
            let idx: Vec<u32> = self.indices().collect();
            for &i in &idx {
                for &j in &idx {
                    if !test_bit(&self.bits, t.mul_idx(i, j)) {
                        return false;
                    }
                }
            }
            true
        })
    }

    fn ensure_subgroup(&self) -> Result<()> {
        if self.is_subgroup() {
            Ok(())
        } else {
            Err(Error::NotASubgroup)
        }
    }

    /// Full growth report for a nonempty set.
    pub fn analyze(&self) -> GrowthReport {
        assert!(!self.is_empty(), "analyze needs |S| >= 1");
        let s2 = self.product_unchecked(self);
        let s3 = s2.product_unchecked(self);
        if self.is_symmetric() && self.contains_identity() {
            // containment chain for symmetric sets with identity
            debug_assert!(self.is_subset_of(&s2) && s2.is_subset_of(&s3));
        }
        GrowthReport {
            size_s: self.len,
            size_s2: s2.len,
            size_s3: s3.len,
            delta_ratio: delta_ratio(s3.len, self.len),
            generates: self.generates(),
            symmetric: self.is_symmetric(),
            contains_identity: self.contains_identity(),
        }
    }
}

/// The double coset `HxH`; `H` must be a subgroup.
pub fn double_coset(h: &ElementSet, x: &GroupElement) -> Result<ElementSet> {
    h.ensure_subgroup()?;
    Ok(h.right_mul(x).product_unchecked(h))
}

/// `|HxL| = |H|·|L| / |x^{-1}Hx ∩ L|` by the Frobenius formula.
pub fn frobenius_size(h: &ElementSet, l: &ElementSet, x: &GroupElement) -> Result<u64> {
    h.ensure_subgroup()?;
    l.ensure_subgroup()?;
    let d = h.conjugate_by(x).intersect(l).len();
    Ok(h.len() * l.len() / d)
}

/// The coset core `xH ∩ Hx`, equal to `xL` for `L = H ∩ x^{-1}Hx`.
pub fn coset_core(h: &ElementSet, x: &GroupElement) -> Result<ElementSet> {
    h.ensure_subgroup()?;
    if h.contains(x) {
        return Err(Error::XInH);
    }
    Ok(h.left_mul(x).intersect(&h.right_mul(x)))
}

/// `L = H ∩ x^{-1}Hx`.
pub fn intersect_conjugate(h: &ElementSet, x: &GroupElement) -> Result<ElementSet> {
    h.ensure_subgroup()?;
    Ok(h.intersect(&h.conjugate_by(x)))
}

/// Image sizes `(|π(S)|, |π(S³)|)` under `π : SL(2,p) → PSL(2,p)`.
/// Requires `S = -S`, so that the fibres `{g, -g}` are whole.
pub fn psl_project(s: &ElementSet) -> Result<(u64, u64)> {
    let t = s.table();
    if s.indices().any(|i| !s.contains_index(t.neg_idx(i))) {
        return Err(Error::NotCentrallyClosed);
    }
    let count_classes =
        |set: &ElementSet| set.indices().filter(|&i| i <= t.neg_idx(i)).count() as u64;
    let s3 = s.triple();
    Ok((count_classes(s), count_classes(&s3)))
}

/// `Δ = log|S³| / log|S|` in natural logs (the ratio is base-independent).
/// Singletons report 1 by convention.
pub fn delta_ratio(cube: u64, size: u64) -> f64 {
    if size <= 1 {
        1.0
    } else {
        (cube as f64).ln() / (size as f64).ln()
    }
}

/// Compares `Δ(a)` with `Δ(b)` where each side is a `(|S³|, |S|)` pair.
///
/// Doubles decide when they differ by more than 1e-12; ties fall back to an
/// exact cross-power comparison over big integers when both sizes are
/// powers of a common base (`log c₁ / e₁·log g < log c₂ / e₂·log g` iff
/// `c₁^{e₂} < c₂^{e₁}`), and otherwise stand as computed.
pub fn cmp_delta(a: (u64, u64), b: (u64, u64)) -> Ordering {
    let d1 = delta_ratio(a.0, a.1);
    let d2 = delta_ratio(b.0, b.1);
    if (d1 - d2).abs() > 1e-12 {
        return d1.partial_cmp(&d2).expect("finite deltas");
    }
    if a == b {
        return Ordering::Equal;
    }
    if a.1 >= 2 && b.1 >= 2 {
        let (g1, e1) = perfect_power(a.1);
        let (g2, e2) = perfect_power(b.1);
        if g1 == g2 {
            let lhs = BigUint::from(a.0).pow(e2);
            let rhs = BigUint::from(b.0).pow(e1);
            return lhs.cmp(&rhs);
        }
    }
    d1.partial_cmp(&d2).expect("finite deltas")
}

/// Writes `n = b^e` with `e` maximal (so `b` is not itself a perfect power).
fn perfect_power(n: u64) -> (u64, u32) {
    debug_assert!(n >= 2);
    for e in (2..=63u32).rev() {
        let b = nth_root(n, e);
        if b >= 2 && b.pow(e) == n {
            return (b, e);
        }
    }
    (n, 1)
}

fn nth_root(n: u64, e: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / e as f64).round() as u64;
    while r > 1 && r.checked_pow(e).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(e).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Sizes, growth ratio and status flags of a set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    #[serde(rename = "sizeS")]
    pub size_s: u64,
    #[serde(rename = "sizeS2")]
    pub size_s2: u64,
    #[serde(rename = "sizeS3")]
    pub size_s3: u64,
    pub delta_ratio: f64,
    pub generates: bool,
    pub symmetric: bool,
    pub contains_identity: bool,
}

/// A set together with its running square and cube, for cheap incremental
/// growth of `S` by inverse pairs. Adding `{y, y^{-1}}` only multiplies the
/// new elements against the old state instead of recomputing `T³` from
/// scratch.
#[derive(Clone)]
pub struct ProductState {
    pub s: ElementSet,
    pub s2: ElementSet,
    pub s3: ElementSet,
}

impl ProductState {
    pub fn new(s: &ElementSet) -> ProductState {
        let s2 = s.product_unchecked(s);
        let s3 = s2.product_unchecked(s);
        ProductState {
            s: s.clone(),
            s2,
            s3,
        }
    }

    /// State for `T = S ∪ {y, y^{-1}}`.
    ///
    /// `T² = S² ∪ S·N ∪ N·T` and `T³ = S³ ∪ S²·N ∪ (T² \ S²)·T`
    /// for `N = {y, y^{-1}} \ S`.
    pub fn with_pair(&self, y: u32) -> ProductState {
        let t = self.s.table();
        let mut new_elems: Vec<u32> = Vec::with_capacity(2);
        for n in [y, t.inv_idx(y)] {
            if !self.s.contains_index(n) && !new_elems.contains(&n) {
                new_elems.push(n);
            }
        }
        if new_elems.is_empty() {
            return self.clone();
        }

        let mut t_words = self.s.bits.to_vec();
        for &n in &new_elems {
            set_bit(&mut t_words, n);
        }
        let t_set = ElementSet::from_words(Arc::clone(t), t_words);

        // additions to the square
        let mut add2 = vec![0u64; self.s.bits.len()];
        for &n in &new_elems {
            for i in self.s.indices() {
                set_bit(&mut add2, t.mul_idx(i, n));
            }
            for j in t_set.indices() {
                set_bit(&mut add2, t.mul_idx(n, j));
            }
        }
        let mut t2_words = self.s2.bits.to_vec();
        let mut d2 = vec![0u64; add2.len()];
        for (k, &a) in add2.iter().enumerate() {
            d2[k] = a & !self.s2.bits[k];
            t2_words[k] |= a;
        }
        let t2_set = ElementSet::from_words(Arc::clone(t), t2_words);

        // additions to the cube
        let mut t3_words = self.s3.bits.to_vec();
        for &n in &new_elems {
            for i in self.s2.indices() {
                set_bit(&mut t3_words, t.mul_idx(i, n));
            }
        }
        for i in iter_bits(&d2) {
            for j in t_set.indices() {
                set_bit(&mut t3_words, t.mul_idx(i, j));
            }
        }
        let t3_set = ElementSet::from_words(Arc::clone(t), t3_words);

        ProductState {
            s: t_set,
            s2: t2_set,
            s3: t3_set,
        }
    }
}

/// Serializes a set in the set file format: a `p=<prime>` header followed
/// by one matrix per line in index order.
pub fn format_set(s: &ElementSet) -> String {
    let mut out = format!("p={}\n", s.table().modulus());
    for g in s.elements() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

/// Parses the set file format into the header prime and the matrix list.
/// `#` starts a comment; blank lines are skipped.
pub fn parse_set_text(text: &str) -> Result<(u32, Vec<GroupElement>)> {
    let mut p: Option<u32> = None;
    let mut elems = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match p {
            None => {
                let rest = line.strip_prefix("p=").ok_or_else(|| {
                    Error::Parse(format!("expected p=<prime> header, got {line:?}"))
                })?;
                p = Some(
                    rest.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Parse(format!("bad prime {rest:?}: {e}")))?,
                );
            }
            Some(p) => elems.push(GroupElement::parse(line, p)?),
        }
    }
    let p = p.ok_or_else(|| Error::Parse("missing p=<prime> header".into()))?;
    Ok((p, elems))
}

/// Parses a set file against an existing table.
pub fn set_from_text(text: &str, table: &Arc<GroupTable>) -> Result<ElementSet> {
    let (p, elems) = parse_set_text(text)?;
    if p != table.modulus() {
        return Err(Error::ModulusMismatch(p, table.modulus()));
    }
    ElementSet::from_elements(table, &elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::GroupElement;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn table(p: u32) -> Arc<GroupTable> {
        GroupTable::shared(p).unwrap()
    }

    /// Cyclic subgroup generated by one element.
    fn cyclic(t: &Arc<GroupTable>, g: GroupElement) -> ElementSet {
        let mut elems = vec![GroupElement::identity(t.modulus())];
        let mut x = g;
        while !x.is_identity() {
            elems.push(x);
            x = x.mul(&g);
        }
        ElementSet::from_elements(t, &elems).unwrap()
    }

    #[test]
    fn product_basics() {
        let t = table(5);
        let h = cyclic(&t, GroupElement::new(5, [2, 0, 0, 3]).unwrap());
        assert_eq!(h.len(), 4);
        assert_eq!(h.product(&h).unwrap(), h);
        let id = ElementSet::from_indices(&t, [t.identity_index()]);
        let b = ElementSet::from_indices(&t, 0..37);
        assert_eq!(id.product(&b).unwrap(), b);
    }

    #[test]
    fn oversized_product_covers_group() {
        // |A| + |B| > |G| forces AB = G
        let t = table(5);
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..5 {
            let a = ElementSet::from_indices(&t, (0..120u32).filter(|_| rng.gen_bool(0.55)));
            let b = ElementSet::from_indices(&t, (0..120u32).filter(|_| rng.gen_bool(0.55)));
            if a.len() + b.len() > 120 {
                assert_eq!(a.product(&b).unwrap(), ElementSet::full(&t));
            }
        }
    }

    #[test]
    fn table_mismatch_is_an_error() {
        let t5 = table(5);
        let t13 = table(13);
        let a = ElementSet::from_indices(&t5, [0]);
        let b = ElementSet::from_indices(&t13, [0]);
        assert!(matches!(a.product(&b), Err(Error::TableMismatch)));
    }

    #[test]
    fn triple_of_subgroup_is_subgroup() {
        let t = table(13);
        let h = cyclic(&t, GroupElement::diag(13, 2));
        assert_eq!(h.triple(), h);
        let center = ElementSet::from_elements(
            &t,
            &[GroupElement::identity(13), GroupElement::neg_identity(13)],
        )
        .unwrap();
        assert_eq!(center.triple(), center);
    }

    #[test]
    fn closure_examples() {
        let t = table(5);
        let h = cyclic(&t, GroupElement::new(5, [2, 0, 0, 3]).unwrap());
        assert_eq!(h.closure(), h);
        let minus = ElementSet::from_elements(&t, &[GroupElement::neg_identity(5)]).unwrap();
        let center = minus.with_index(t.identity_index());
        assert_eq!(minus.closure(), center);
    }

    #[test]
    fn closure_matches_fixed_point_oracle() {
        // oracle: iterate C <- C * (S ∪ S^{-1} ∪ {I}) until stable
        let t = table(5);
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..20 {
            let s = ElementSet::from_indices(&t, (0..4).map(|_| rng.gen_range(0..120u32)));
            let gens = s.union(&s.inverse_set()).with_index(t.identity_index());
            let mut c = gens.clone();
            loop {
                let next = c.product(&gens).unwrap();
                if next == c {
                    break;
                }
                c = next;
            }
            assert_eq!(s.closure(), c);
            assert_eq!(s.generates(), c.len() == t.order());
        }
    }

    #[test]
    fn analyze_singleton() {
        let t = table(5);
        let id = ElementSet::from_indices(&t, [t.identity_index()]);
        let r = id.analyze();
        assert_eq!(r.size_s3, 1);
        assert!(!r.generates);
        assert_eq!(r.delta_ratio, 1.0);
        assert!(r.symmetric && r.contains_identity);
    }

    #[test]
    fn symmetric_sets_grow_monotonically() {
        let t = table(13);
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..10 {
            let mut s = ElementSet::from_indices(&t, [t.identity_index()]);
            for _ in 0..3 {
                s = s.with_pair(rng.gen_range(0..t.order() as u32));
            }
            let s2 = s.product(&s).unwrap();
            let s3 = s2.product(&s).unwrap();
            assert!(s.is_subset_of(&s2) && s2.is_subset_of(&s3));
            let r = s.analyze();
            assert!(r.size_s <= r.size_s2 && r.size_s2 <= r.size_s3);
            if r.size_s >= 2 {
                assert!(r.delta_ratio >= 1.0);
            }
        }
    }

    #[test]
    fn double_coset_basics() {
        let t = table(5);
        let h = cyclic(&t, GroupElement::new(5, [2, 0, 0, 3]).unwrap());
        let id = GroupElement::identity(5);
        assert_eq!(double_coset(&h, &id).unwrap(), h);
        // the center is normal: double cosets are plain cosets
        let center = ElementSet::from_elements(
            &t,
            &[GroupElement::identity(5), GroupElement::neg_identity(5)],
        )
        .unwrap();
        let x = GroupElement::new(5, [1, 1, 0, 1]).unwrap();
        assert_eq!(double_coset(&center, &x).unwrap().len(), 2);
        // not a subgroup
        let junk = ElementSet::from_indices(&t, [3, 4]);
        assert!(matches!(double_coset(&junk, &x), Err(Error::NotASubgroup)));
    }

    #[test]
    fn frobenius_trivial_cases() {
        let t = table(13);
        let h = cyclic(&t, GroupElement::diag(13, 2));
        let id = GroupElement::identity(13);
        assert_eq!(frobenius_size(&h, &h, &id).unwrap(), h.len());
        let trivial = ElementSet::from_indices(&t, [t.identity_index()]);
        let x = GroupElement::new(13, [1, 5, 0, 1]).unwrap();
        assert_eq!(frobenius_size(&trivial, &trivial, &x).unwrap(), 1);
    }

    #[test]
    fn coset_core_of_center() {
        let t = table(5);
        let center = ElementSet::from_elements(
            &t,
            &[GroupElement::identity(5), GroupElement::neg_identity(5)],
        )
        .unwrap();
        let x = GroupElement::new(5, [1, 1, 0, 1]).unwrap();
        let core = coset_core(&center, &x).unwrap();
        assert_eq!(core.len(), 2);
        assert!(core.contains(&x) && core.contains(&x.neg()));
        assert!(matches!(
            coset_core(&center, &GroupElement::neg_identity(5)),
            Err(Error::XInH)
        ));
    }

    #[test]
    fn intersect_conjugate_with_inner_x() {
        let t = table(13);
        let h = cyclic(&t, GroupElement::diag(13, 2));
        let x = GroupElement::diag(13, 4);
        assert!(h.contains(&x));
        assert_eq!(intersect_conjugate(&h, &x).unwrap(), h);
    }

    #[test]
    fn psl_projection_basics() {
        let t = table(5);
        let center = ElementSet::from_elements(
            &t,
            &[GroupElement::identity(5), GroupElement::neg_identity(5)],
        )
        .unwrap();
        assert_eq!(psl_project(&center).unwrap(), (1, 1));
        let full = ElementSet::full(&t);
        assert_eq!(psl_project(&full).unwrap(), (60, 60));
        let lopsided = ElementSet::from_indices(&t, [t.identity_index()]);
        assert!(matches!(
            psl_project(&lopsided),
            Err(Error::NotCentrallyClosed)
        ));
    }

    #[test]
    fn incremental_pair_state_matches_scratch() {
        let t = table(13);
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..20 {
            let mut s = ElementSet::from_indices(&t, [t.identity_index()]);
            for _ in 0..rng.gen_range(1..4) {
                s = s.with_pair(rng.gen_range(0..t.order() as u32));
            }
            let state = ProductState::new(&s);
            let y = rng.gen_range(0..t.order() as u32);
            let next = state.with_pair(y);
            let direct = s.with_pair(y);
            assert_eq!(next.s, direct);
            assert_eq!(next.s2, direct.product(&direct).unwrap());
            assert_eq!(next.s3, direct.triple());
        }
    }

    #[test]
    fn delta_comparison() {
        use std::cmp::Ordering::*;
        // 224/64 vs 114/30: clearly ordered
        assert_eq!(cmp_delta((224, 64), (114, 30)), Less);
        assert_eq!(cmp_delta((114, 30), (224, 64)), Greater);
        assert_eq!(cmp_delta((224, 64), (224, 64)), Equal);
        // ln8/ln4 = ln64/ln16 exactly; resolved by cross powers
        assert_eq!(cmp_delta((8, 4), (64, 16)), Equal);
        assert_eq!(cmp_delta((9, 4), (64, 16)), Greater);
        assert_eq!(cmp_delta((8, 4), (65, 16)), Less);
        // singleton convention
        assert_eq!(cmp_delta((1, 1), (5, 5)), Equal);
    }

    #[test]
    fn set_file_round_trip() {
        let t = table(5);
        let s = ElementSet::from_indices(&t, [0, 17, 53, 119]);
        let text = format_set(&s);
        let back = set_from_text(&text, &t).unwrap();
        assert_eq!(back, s);
        // comments and whitespace are tolerated
        let commented = "# a set\np=5\n\n[[2,0],[0,3]] # diagonal\n";
        let parsed = set_from_text(commented, &t).unwrap();
        assert_eq!(parsed.len(), 1);
    }

    #[test]
    fn set_file_errors() {
        let t = table(5);
        assert!(set_from_text("no header", &t).is_err());
        assert!(set_from_text("p=13\n", &t).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn set_file_round_trips(indices in prop::collection::btree_set(0u32..120, 0..40)) {
            let t = table(5);
            let s = ElementSet::from_indices(&t, indices);
            let back = set_from_text(&format_set(&s), &t).unwrap();
            prop_assert_eq!(back, s);
        }

        #[test]
        fn inverse_set_is_involutive(indices in prop::collection::btree_set(0u32..120, 0..40)) {
            let t = table(5);
            let s = ElementSet::from_indices(&t, indices);
            prop_assert_eq!(s.inverse_set().inverse_set(), s.clone());
            prop_assert!(s.union(&s.inverse_set()).is_symmetric());
        }
    }
}
