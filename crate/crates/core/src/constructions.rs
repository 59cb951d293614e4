//! The subgroup catalog of `SL(2,p)` and the small-tripling set
//! constructions built from it.
//!
//! Covered subgroups: the full upper-triangular group `U`, its unipotent
//! and diagonal parts, the index-2 subgroup of `U` supported on quadratic
//! residues, split-torus cyclic subgroups, generalized quaternion groups
//! `Q_{4n}`, and the exceptional double covers `2·A4`, `2·S4`, `2·A5`.
//!
//! On top of these: subgroup-plus-two sets `H ∪ {x^{±1}}`, subgroup plus
//! coset core `H ∪ (xH ∩ Hx)`, coset-representative normalization, the
//! scan for the best companion element `x`, and the index-based size
//! bounds for `|S³|`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;

use crate::growth::{coset_core, double_coset, ElementSet};
use crate::sl2::{GroupElement, GroupTable};
use crate::{Error, Result};

/// Subgroup kinds the toolkit can build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupKind {
    /// `U = {[[α,β],[0,α^{-1}]]}`, order `p(p-1)`.
    UpperTriangular,
    /// `N = {[[1,β],[0,1]]}`, order `p`.
    Unipotent,
    /// `D = {diag[λ, λ^{-1}]}`, order `p-1`.
    Diagonal,
    /// Index-2 subgroup of `U` with quadratic-residue diagonal, order
    /// `p(p-1)/2`. Built for `p ≡ 1 mod 4` so that `-I` lies inside.
    QrIndex2,
    /// Split-torus cyclic subgroup of order `n`, for `n` dividing `p-1`.
    Cyclic(u32),
    /// Generalized quaternion `Q_{4n}` of order `4n`, for `2n` dividing
    /// `p-1` and `n >= 2`.
    GenQuaternion(u32),
    /// Double cover of `S4`, order 48; `p ≡ 1 mod 8`.
    TwoDotS4,
    /// Double cover of `A4`, order 24, as the index-2 subgroup of `2·S4`.
    TwoDotA4,
    /// Double cover of `A5`, order 120; `p ≡ ±1 mod 10`.
    TwoDotA5,
}

impl SubgroupKind {
    /// Expected order of the subgroup in `SL(2,p)`.
    pub fn order(&self, p: u32) -> u64 {
        let p = p as u64;
        match self {
            SubgroupKind::UpperTriangular => p * (p - 1),
            SubgroupKind::Unipotent => p,
            SubgroupKind::Diagonal => p - 1,
            SubgroupKind::QrIndex2 => p * (p - 1) / 2,
            SubgroupKind::Cyclic(n) => *n as u64,
            SubgroupKind::GenQuaternion(n) => 4 * *n as u64,
            SubgroupKind::TwoDotS4 => 48,
            SubgroupKind::TwoDotA4 => 24,
            SubgroupKind::TwoDotA5 => 120,
        }
    }

    pub fn name(&self) -> String {
        match self {
            SubgroupKind::UpperTriangular => "upper_triangular".into(),
            SubgroupKind::Unipotent => "unipotent".into(),
            SubgroupKind::Diagonal => "diagonal".into(),
            SubgroupKind::QrIndex2 => "qr_index2".into(),
            SubgroupKind::Cyclic(n) => format!("cyclic:{n}"),
            SubgroupKind::GenQuaternion(n) => format!("gen_quaternion:{}", 4 * n),
            SubgroupKind::TwoDotS4 => "two_dot_S4".into(),
            SubgroupKind::TwoDotA4 => "two_dot_A4".into(),
            SubgroupKind::TwoDotA5 => "two_dot_A5".into(),
        }
    }

    /// Parses the names produced by [`SubgroupKind::name`]; the
    /// parametrized kinds take a `:` suffix (`cyclic:6`,
    /// `gen_quaternion:16` with the full group order).
    pub fn parse(s: &str) -> Result<SubgroupKind> {
        let (head, param) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let num = |p: Option<&str>| -> Result<u32> {
            p.ok_or_else(|| Error::Parse(format!("kind {head} needs a :<order> suffix")))?
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("bad order in kind {s:?}: {e}")))
        };
        match head {
            "upper_triangular" => Ok(SubgroupKind::UpperTriangular),
            "unipotent" => Ok(SubgroupKind::Unipotent),
            "diagonal" => Ok(SubgroupKind::Diagonal),
            "qr_index2" => Ok(SubgroupKind::QrIndex2),
            "cyclic" => Ok(SubgroupKind::Cyclic(num(param)?)),
            "gen_quaternion" => {
                let order = num(param)?;
                if order % 4 != 0 || order < 8 {
                    return Err(Error::Parse(format!(
                        "gen_quaternion order must be a multiple of 4 and at least 8, got {order}"
                    )));
                }
                Ok(SubgroupKind::GenQuaternion(order / 4))
            }
            "two_dot_S4" => Ok(SubgroupKind::TwoDotS4),
            "two_dot_A4" => Ok(SubgroupKind::TwoDotA4),
            "two_dot_A5" => Ok(SubgroupKind::TwoDotA5),
            _ => Err(Error::Parse(format!("unknown subgroup kind {s:?}"))),
        }
    }
}

impl std::fmt::Display for SubgroupKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A built catalog subgroup: kind, generators and the full element set.
#[derive(Debug, Clone)]
pub struct SubgroupSpec {
    pub kind: SubgroupKind,
    pub p: u32,
    pub generators: Vec<GroupElement>,
    pub elements: ElementSet,
}

impl SubgroupSpec {
    pub fn order(&self) -> u64 {
        self.elements.len()
    }
}

fn not_realizable(kind: SubgroupKind, p: u32, reason: &str) -> Error {
    Error::NotRealizable {
        kind: kind.name(),
        p,
        reason: reason.into(),
    }
}

/// All catalog kinds that exist in `SL(2,p)`, with small parametrized
/// variants listed explicitly.
pub fn realizable_kinds(p: u32) -> Vec<SubgroupKind> {
    let mut kinds = vec![
        SubgroupKind::UpperTriangular,
        SubgroupKind::Unipotent,
        SubgroupKind::Diagonal,
    ];
    if p % 4 == 1 {
        kinds.push(SubgroupKind::QrIndex2);
    }
    for n in 2..=(p - 1) {
        if (p - 1).is_multiple_of(n) {
            kinds.push(SubgroupKind::Cyclic(n));
        }
    }
    for n in 2..=(p - 1) / 2 {
        if (p - 1).is_multiple_of(2 * n) {
            kinds.push(SubgroupKind::GenQuaternion(n));
        }
    }
    if p % 8 == 1 {
        kinds.push(SubgroupKind::TwoDotS4);
        kinds.push(SubgroupKind::TwoDotA4);
    }
    if p % 10 == 1 || p % 10 == 9 {
        kinds.push(SubgroupKind::TwoDotA5);
    }
    kinds
}

/// Builds a catalog subgroup, verifying its order, the closure equality
/// `H = ⟨generators⟩`, and per-kind structural surrogates.
pub fn build_subgroup(kind: SubgroupKind, table: &Arc<GroupTable>) -> Result<SubgroupSpec> {
    let p = table.modulus();
    let fp = table.fp();
    let spec = match kind {
        SubgroupKind::UpperTriangular => {
            let g = fp.primitive_root();
            let gens = vec![GroupElement::diag(p, g), GroupElement::upper(p, 1, 1)];
            let mut elems = Vec::with_capacity((p * (p - 1)) as usize);
            for alpha in 1..p {
                for beta in 0..p {
                    elems.push(GroupElement::upper(p, alpha, beta));
                }
            }
            SubgroupSpec {
                kind,
                p,
                generators: gens,
                elements: ElementSet::from_elements(table, &elems)?,
            }
        }
        SubgroupKind::Unipotent => {
            let gens = vec![GroupElement::upper(p, 1, 1)];
            let elems: Vec<_> = (0..p).map(|b| GroupElement::upper(p, 1, b)).collect();
            SubgroupSpec {
                kind,
                p,
                generators: gens,
                elements: ElementSet::from_elements(table, &elems)?,
            }
        }
        SubgroupKind::Diagonal => {
            let g = fp.primitive_root();
            let gens = vec![GroupElement::diag(p, g)];
            let elems: Vec<_> = (1..p).map(|a| GroupElement::diag(p, a)).collect();
            SubgroupSpec {
                kind,
                p,
                generators: gens,
                elements: ElementSet::from_elements(table, &elems)?,
            }
        }
        SubgroupKind::QrIndex2 => {
            if p % 4 != 1 {
                return Err(not_realizable(kind, p, "needs p = 1 mod 4 so that -1 is a residue"));
            }
            assert!(fp.is_qr(fp.elem_signed(-1)), "-1 must be a residue");
            let g = fp.primitive_root();
            let g2 = fp.mul(fp.elem(g as u64), fp.elem(g as u64));
            let gens = vec![
                GroupElement::diag(p, g2.value()),
                GroupElement::upper(p, 1, 1),
            ];
            let mut elems = Vec::with_capacity((p * (p - 1) / 2) as usize);
            for alpha in 1..p {
                if fp.is_qr(fp.elem(alpha as u64)) {
                    for beta in 0..p {
                        elems.push(GroupElement::upper(p, alpha, beta));
                    }
                }
            }
            SubgroupSpec {
                kind,
                p,
                generators: gens,
                elements: ElementSet::from_elements(table, &elems)?,
            }
        }
        SubgroupKind::Cyclic(n) => {
            if n == 0 || !(p - 1).is_multiple_of(n) {
                return Err(not_realizable(kind, p, "order must divide p - 1"));
            }
            let zeta = fp.element_of_order(n)?;
            let z = GroupElement::diag(p, zeta.value());
            let elems: Vec<_> = (0..n).map(|k| z.pow(k as i64)).collect();
            SubgroupSpec {
                kind,
                p,
                generators: vec![z],
                elements: ElementSet::from_elements(table, &elems)?,
            }
        }
        SubgroupKind::GenQuaternion(n) => {
            if n < 2 {
                return Err(not_realizable(kind, p, "Q_{4n} needs n >= 2"));
            }
            if !(p - 1).is_multiple_of(2 * n) {
                return Err(not_realizable(kind, p, "2n must divide p - 1"));
            }
            let zeta = fp.element_of_order(2 * n)?;
            let z = GroupElement::diag(p, zeta.value());
            let w = GroupElement::antidiag(p, 1);
            // presentation checks: z^n = w^2 = -I and w^{-1} z w = z^{-1}
            assert_eq!(z.pow(n as i64), GroupElement::neg_identity(p));
            assert_eq!(w.mul(&w), GroupElement::neg_identity(p));
            assert_eq!(z.conj(&w), z.inv());
            let set = ElementSet::from_elements(table, &[z, w])?;
            let elements = set
                .closure_within(4 * n as u64)
                .ok_or_else(|| not_realizable(kind, p, "closure exceeded 4n"))?;
            SubgroupSpec {
                kind,
                p,
                generators: vec![z, w],
                elements,
            }
        }
        SubgroupKind::TwoDotS4 => build_two_dot_s4(table, None)?,
        SubgroupKind::TwoDotA4 => {
            let s4 = build_two_dot_s4(table, None)?;
            index_two_subgroup(&s4)?
        }
        SubgroupKind::TwoDotA5 => build_two_dot_a5(table, 0)?,
    };
    verify_subgroup(&spec)?;
    Ok(spec)
}

/// Reduction of the octahedral generator pair to `F_p`: with `i² = -1`,
/// `h = √2/2`, the matrices `a = diag[h(1+i), h(1-i)]` and
/// `b = [[h, h], [-h, h]]` generate a copy of `2·S4` whose generators have
/// order 8. Any of the four root choices gives a conjugate subgroup;
/// `roots` overrides the default (smallest) ones.
pub fn build_two_dot_s4(
    table: &Arc<GroupTable>,
    roots: Option<(u32, u32)>,
) -> Result<SubgroupSpec> {
    let kind = SubgroupKind::TwoDotS4;
    let p = table.modulus();
    if p % 8 != 1 {
        return Err(not_realizable(
            kind,
            p,
            "needs p = 1 mod 8 so that both 2 and -1 are squares",
        ));
    }
    let fp = table.fp();
    let (sqrt2, i) = match roots {
        Some(r) => r,
        None => (
            fp.sqrt_mod(fp.elem(2))?.value(),
            fp.sqrt_mod(fp.elem_signed(-1))?.value(),
        ),
    };
    let h = fp.div(fp.elem(sqrt2 as u64), fp.elem(2));
    let i = fp.elem(i as u64);
    let one = fp.one();
    let a = GroupElement::new(
        p,
        [
            fp.mul(h, fp.add(one, i)).value() as i64,
            0,
            0,
            fp.mul(h, fp.sub(one, i)).value() as i64,
        ],
    )?;
    let b = GroupElement::new(
        p,
        [
            h.value() as i64,
            h.value() as i64,
            -(h.value() as i64),
            h.value() as i64,
        ],
    )?;
    assert_eq!(a.order(), 8, "octahedral generator a must have order 8");
    assert_eq!(b.order(), 8, "octahedral generator b must have order 8");
    let set = ElementSet::from_elements(table, &[a, b])?;
    let elements = set
        .closure_within(48)
        .ok_or_else(|| not_realizable(kind, p, "closure exceeded order 48"))?;
    Ok(SubgroupSpec {
        kind,
        p,
        generators: vec![a, b],
        elements,
    })
}

/// The unique index-2 subgroup, generated by the squares.
fn index_two_subgroup(h: &SubgroupSpec) -> Result<SubgroupSpec> {
    let table = h.elements.table();
    let squares: Vec<GroupElement> = {
        let mut seen = std::collections::HashSet::new();
        h.elements
            .elements()
            .map(|g| g.mul(g))
            .filter(|g| seen.insert(g.entries()))
            .collect()
    };
    let set = ElementSet::from_elements(table, &squares)?;
    let elements = set
        .closure_within(h.order() / 2)
        .ok_or(Error::NotASubgroup)?;
    if elements.len() != h.order() / 2 {
        return Err(Error::NotASubgroup);
    }
    // small generator list: grow until the closure matches
    let mut gens: Vec<GroupElement> = Vec::new();
    for g in squares {
        if gens.contains(&g) || g.is_identity() {
            continue;
        }
        gens.push(g);
        let c = ElementSet::from_elements(table, &gens)?
            .closure_within(elements.len())
            .ok_or(Error::NotASubgroup)?;
        if c == elements {
            break;
        }
    }
    Ok(SubgroupSpec {
        kind: SubgroupKind::TwoDotA4,
        p: h.p,
        generators: gens,
        elements,
    })
}

/// Randomized construction of `2·A5`: sample pairs of elements whose
/// orders fit the icosahedral census until their closure has order 120.
/// Deterministic for a fixed seed.
pub fn build_two_dot_a5(table: &Arc<GroupTable>, seed: u64) -> Result<SubgroupSpec> {
    const ATTEMPTS: u32 = 50_000;
    let kind = SubgroupKind::TwoDotA5;
    let p = table.modulus();
    if p % 10 != 1 && p % 10 != 9 {
        return Err(not_realizable(kind, p, "needs p = ±1 mod 10"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5105_u64));
    let order = table.order();
    let allowed = [3u32, 4, 5, 6, 10];
    let pick = |rng: &mut ChaCha8Rng| loop {
        let i = rng.gen_range(0..order as u32);
        let g = table.element(i);
        if allowed.contains(&g.order()) {
            return *g;
        }
    };
    for _ in 0..ATTEMPTS {
        let g = pick(&mut rng);
        let h = pick(&mut rng);
        let set = ElementSet::from_elements(table, &[g, h])?;
        let Some(closure) = set.closure_within(120) else {
            continue;
        };
        if closure.len() != 120 {
            continue;
        }
        let spec = SubgroupSpec {
            kind,
            p,
            generators: vec![g, h],
            elements: closure,
        };
        if verify_subgroup(&spec).is_ok() {
            return Ok(spec);
        }
    }
    Err(Error::SearchExhausted(ATTEMPTS))
}

fn involution_count(h: &ElementSet) -> usize {
    h.elements()
        .filter(|g| !g.is_identity() && g.mul(g).is_identity())
        .count()
}

/// Subgroup generated by all commutators.
fn derived_subgroup(h: &ElementSet) -> ElementSet {
    let table = h.table();
    let idx: Vec<u32> = h.indices().collect();
    let mut comms = std::collections::HashSet::new();
    for &i in &idx {
        for &j in &idx {
            let g = table.element(i);
            let k = table.element(j);
            comms.insert(g.inv().mul(&k.inv()).mul(g).mul(k).entries());
        }
    }
    let elems: Vec<GroupElement> = comms
        .into_iter()
        .map(|m| {
            GroupElement::new(
                table.modulus(),
                [m[0] as i64, m[1] as i64, m[2] as i64, m[3] as i64],
            )
            .expect("commutators are unimodular")
        })
        .collect();
    ElementSet::from_elements(table, &elems)
        .expect("same table")
        .closure()
}

/// Order formula, closure equality, center membership and the per-kind
/// isomorphism surrogates.
fn verify_subgroup(spec: &SubgroupSpec) -> Result<()> {
    let table = spec.elements.table();
    let expected = spec.kind.order(spec.p);
    let check = |ok: bool, what: &str| -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(not_realizable(spec.kind, spec.p, what))
        }
    };
    check(spec.order() == expected, "order formula violated")?;
    let gen_set = ElementSet::from_elements(table, &spec.generators)?;
    check(
        gen_set.closure_within(expected).as_ref() == Some(&spec.elements),
        "closure of generators differs from the element set",
    )?;
    check(spec.elements.is_subgroup(), "element set is not closed")?;
    // -I lies in H exactly when |H| is even
    let has_center = spec
        .elements
        .contains(&GroupElement::neg_identity(spec.p));
    check(
        has_center == expected.is_multiple_of(2),
        "-I membership disagrees with parity of |H|",
    )?;
    match spec.kind {
        SubgroupKind::TwoDotS4 => {
            check(involution_count(&spec.elements) == 1, "involution count")?;
            check(
                derived_subgroup(&spec.elements).len() == 24,
                "derived subgroup of 2.S4 must have order 24",
            )?;
        }
        SubgroupKind::TwoDotA4 => {
            check(involution_count(&spec.elements) == 1, "involution count")?;
            check(
                derived_subgroup(&spec.elements).len() == 8,
                "derived subgroup of 2.A4 must have order 8",
            )?;
        }
        SubgroupKind::TwoDotA5 => {
            check(involution_count(&spec.elements) == 1, "involution count")?;
            let census: std::collections::BTreeSet<u32> =
                spec.elements.elements().map(|g| g.order()).collect();
            check(
                census == [1u32, 2, 3, 4, 5, 6, 10].into_iter().collect(),
                "element-order census must be {1,2,3,4,5,6,10}",
            )?;
            check(
                derived_subgroup(&spec.elements).len() == 120,
                "2.A5 must be perfect",
            )?;
        }
        _ => {}
    }
    Ok(())
}

/// `H ∪ {x, x^{-1}}`.
pub fn splus2(h: &SubgroupSpec, x: &GroupElement) -> Result<ElementSet> {
    if h.elements.contains(x) {
        return Err(Error::XInH);
    }
    if x.order() <= 2 {
        return Err(Error::OrderTwo);
    }
    let table = h.elements.table();
    Ok(h.elements.with_pair(table.index_of(x)))
}

/// The subgroup plus coset core `H ∪ (xH ∩ Hx)`; symmetric because
/// `x² ∈ H` is required.
pub fn coset_core_set(h: &SubgroupSpec, x: &GroupElement) -> Result<ElementSet> {
    if h.elements.contains(x) {
        return Err(Error::XInH);
    }
    if !h.elements.contains(&x.mul(x)) {
        return Err(Error::XSquaredNotInH);
    }
    let core = coset_core(&h.elements, x)?;
    let s = h.elements.union(&core);
    debug_assert!(s.is_symmetric());
    Ok(s)
}

/// If `HxH = Hx^{-1}H`, returns the first `y ∈ Hx` (by enumeration order
/// of `h₂` with `x h₂^{-1} x ∈ H`, `y = h₂^{-1} x`) satisfying `y² ∈ H`;
/// returns `None` when the two double cosets are disjoint.
pub fn normalize_rep(h: &SubgroupSpec, x: &GroupElement) -> Result<Option<GroupElement>> {
    if h.elements.contains(x) {
        return Err(Error::XInH);
    }
    let hxh = double_coset(&h.elements, x)?;
    if !hxh.contains(&x.inv()) {
        return Ok(None);
    }
    for h2 in h.elements.elements() {
        let h1 = x.mul(&h2.inv()).mul(x);
        if h.elements.contains(&h1) {
            let y = h2.inv().mul(x);
            debug_assert!(h.elements.contains(&y.mul(&y)));
            return Ok(Some(y));
        }
    }
    unreachable!("HxH = Hx^{{-1}}H guarantees a witness h2");
}

/// Scans `G \ H` for elements `x` with `x² ∈ H` and `⟨H,x⟩ = G`, and
/// returns all minimizers of the index `c = [H : H ∩ x^{-1}Hx]`, sorted by
/// element index.
pub fn find_good_x(h: &SubgroupSpec) -> Result<Vec<(GroupElement, u64)>> {
    let table = h.elements.table();
    let mut by_c: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for idx in 0..table.order() as u32 {
        if h.elements.contains_index(idx) {
            continue;
        }
        let x = table.element(idx);
        if !h.elements.contains(&x.mul(x)) {
            continue;
        }
        let l = h.elements.intersect(&h.elements.conjugate_by(x));
        let c = h.order() / l.len();
        by_c.entry(c).or_default().push(idx);
    }
    for (c, candidates) in by_c {
        let generating: Vec<(GroupElement, u64)> = candidates
            .into_iter()
            .filter(|&idx| {
                let mut gens = h.generators.clone();
                gens.push(*table.element(idx));
                ElementSet::from_elements(table, &gens)
                    .expect("same table")
                    .generates()
            })
            .map(|idx| (*table.element(idx), c))
            .collect();
        if !generating.is_empty() {
            return Ok(generating);
        }
    }
    Err(Error::NoneFound)
}

/// A catalog subgroup together with its companion element and the
/// resulting symmetric set.
#[derive(Debug, Clone)]
pub struct SetConstruction {
    pub subgroup: SubgroupSpec,
    pub x: GroupElement,
    pub set: ElementSet,
}

/// The size-64 set with `|S³| = 224`: `H = 2·S4`, `x = antidiag[v, -v^{-1}]`
/// for `v` of order 16, `S = H ∪ (xH ∩ Hx)`. Needs `p ≡ 1 mod 16`.
pub fn optimal_construction(table: &Arc<GroupTable>) -> Result<SetConstruction> {
    let p = table.modulus();
    if p % 16 != 1 {
        return Err(Error::NotRealizable {
            kind: "optimal_set".into(),
            p,
            reason: "needs p = 1 mod 16 so that F_p* has elements of order 16".into(),
        });
    }
    let subgroup = build_two_dot_s4(table, None)?;
    let v = table.fp().element_of_order(16)?;
    let x = GroupElement::antidiag(p, v.value());
    let set = coset_core_set(&subgroup, &x)?;
    Ok(SetConstruction { subgroup, x, set })
}

/// Just the set from [`optimal_construction`].
pub fn optimal_set(table: &Arc<GroupTable>) -> Result<ElementSet> {
    Ok(optimal_construction(table)?.set)
}

/// The large subgroup-plus-two set of size `(p(p-1)+4)/2` over the
/// quadratic-residue subgroup of `U`, with the fixed order-4 companion
/// `x = [[1,-2],[1,-1]]` (not upper triangular, `x² = -I`).
/// Needs `p ≡ 1 mod 4`.
pub fn eventual_delta_construction(table: &Arc<GroupTable>) -> Result<SetConstruction> {
    let p = table.modulus();
    if p % 4 != 1 {
        return Err(Error::NotRealizable {
            kind: "eventual_delta_set".into(),
            p,
            reason: "needs p = 1 mod 4".into(),
        });
    }
    let subgroup = build_subgroup(SubgroupKind::QrIndex2, table)?;
    let x = GroupElement::new(p, [1, -2, 1, -1])?;
    assert_ne!(x.entries()[2], 0, "x must lie outside U");
    assert_eq!(x.mul(&x), GroupElement::neg_identity(p), "x^2 must be -I");
    let set = splus2(&subgroup, &x)?;
    debug_assert_eq!(set.len(), (p as u64 * (p as u64 - 1) + 4) / 2);
    Ok(SetConstruction { subgroup, x, set })
}

/// Just the set from [`eventual_delta_construction`].
pub fn eventual_delta_set(table: &Arc<GroupTable>) -> Result<ElementSet> {
    Ok(eventual_delta_construction(table)?.set)
}

/// Which of the two size regimes a subgroup-plus companion set falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundCase {
    /// `HxH` and `Hx^{-1}H` disjoint: only a lower bound is available.
    DisjointCosets,
    /// `x² ∈ H`, `S = H ∪ xL`: two-sided bounds.
    CosetCore,
}

/// Index-based size bounds for `|S³|` and the predicted `|S|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEstimate {
    pub c: u64,
    pub size_h: u64,
    pub lower3: u64,
    pub upper3: Option<u64>,
    pub size_s: u64,
    pub case: BoundCase,
}

/// For `c = [H : H ∩ x^{-1}Hx]`:
/// coset-core case `(c+1)|H| <= |S³| <= (c+2-1/c)|H|` with
/// `|S| = (1+1/c)|H|`; disjoint case `|S³| >= (2c+1)|H|` with
/// `|S| = |H| + 2`. The index `c = 1` never occurs for generating pairs.
pub fn bound_estimate(size_h: u64, c: u64, case: BoundCase) -> Result<BoundEstimate> {
    if c < 2 {
        return Err(Error::BadIndex(c));
    }
    match case {
        BoundCase::CosetCore => {
            if !size_h.is_multiple_of(c) {
                return Err(Error::BadIndex(c));
            }
            Ok(BoundEstimate {
                c,
                size_h,
                lower3: (c + 1) * size_h,
                upper3: Some((c + 2) * size_h - size_h / c),
                size_s: size_h + size_h / c,
                case,
            })
        }
        BoundCase::DisjointCosets => Ok(BoundEstimate {
            c,
            size_h,
            lower3: (2 * c + 1) * size_h,
            upper3: None,
            size_s: size_h + 2,
            case,
        }),
    }
}

/// The pair of increasing functions
/// `f_l(k) = log(l·k(k+1)) / log(l(k+1))` and
/// `g_l(k) = log(l·k(2k+1)) / log(l(k+1))`, for `l >= 2`, `k >= 1`.
pub fn monotone_bounds(l: u64, k: f64) -> Result<(f64, f64)> {
    if l < 2 {
        return Err(Error::Domain(format!("l must be at least 2, got {l}")));
    }
    if !k.is_finite() || k < 1.0 {
        return Err(Error::Domain(format!("k must be at least 1, got {k}")));
    }
    let l = l as f64;
    let denom = (l * (k + 1.0)).ln();
    let f = (l * k * (k + 1.0)).ln() / denom;
    let g = (l * k * (2.0 * k + 1.0)).ln() / denom;
    Ok((f, g))
}
