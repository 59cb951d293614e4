//! Cross-module structural identities checked by enumeration on the
//! subgroup catalog.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sl2_growth::constructions::{
    build_subgroup, coset_core_set, find_good_x, realizable_kinds, splus2, SubgroupKind,
    SubgroupSpec,
};
use sl2_growth::growth::{coset_core, double_coset, intersect_conjugate, ElementSet};
use sl2_growth::sl2::{GroupElement, GroupTable};
use sl2_growth::Error;

type Catalog = Vec<(SubgroupSpec, Vec<(GroupElement, u64)>)>;

fn catalog_with_x(p: u32) -> (Arc<GroupTable>, Catalog) {
    let t = GroupTable::shared(p).unwrap();
    let mut out = Vec::new();
    for kind in realizable_kinds(p) {
        let Ok(h) = build_subgroup(kind, &t) else {
            continue;
        };
        match find_good_x(&h) {
            Ok(xs) => out.push((h, xs)),
            Err(Error::NoneFound) => {}
            Err(e) => panic!("scan failed for {kind}: {e}"),
        }
    }
    (t, out)
}

/// With `x² ∈ H`, the cube of `H ∪ {x^{±1}}` is exactly
/// `H ∪ HxH ∪ x^{-1}Hx`, and the coset-core set has the same cube.
#[test]
fn cube_decomposition_and_core_equivalence_on_catalog() {
    for p in [13u32, 17] {
        let (_t, catalog) = catalog_with_x(p);
        assert!(!catalog.is_empty());
        for (h, xs) in &catalog {
            for (x, _) in xs {
                let plus2 = splus2(h, x).unwrap();
                let cube = plus2.triple();
                let expected = h
                    .elements
                    .union(&double_coset(&h.elements, x).unwrap())
                    .union(&h.elements.conjugate_by(x));
                assert_eq!(cube, expected, "p={p} {} x={x}", h.kind);
                let core = coset_core_set(h, x).unwrap();
                assert!(core.len() >= plus2.len());
                assert_eq!(core.triple(), cube, "p={p} {} x={x}", h.kind);
            }
        }
    }
}

/// `x^{-1} ∈ xL` (so the coset-core set is symmetric) exactly when
/// `x² ∈ H`, probed on random companions of the residue subgroup.
#[test]
fn core_symmetry_tracks_x_squared() {
    let t = GroupTable::shared(13).unwrap();
    let h = build_subgroup(SubgroupKind::QrIndex2, &t).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut seen_both = (false, false);
    for _ in 0..400 {
        let x = *t.element(rng.gen_range(0..t.order() as u32));
        if h.elements.contains(&x) {
            continue;
        }
        let core = coset_core(&h.elements, &x).unwrap();
        let with_core = h.elements.union(&core);
        let x2_in_h = h.elements.contains(&x.mul(&x));
        assert_eq!(with_core.is_symmetric(), x2_in_h, "x={x}");
        if x2_in_h {
            seen_both.0 = true;
        } else {
            seen_both.1 = true;
        }
    }
    assert!(seen_both.0 && seen_both.1, "both branches should occur");
}

/// Every element outside the octahedral cover at `p = 17` spans a double
/// coset of at least three `H`-cosets, and the cover is maximal on a
/// sample of generation checks.
#[test]
fn octahedral_double_cosets_are_wide() {
    let t = GroupTable::shared(17).unwrap();
    let h = build_subgroup(SubgroupKind::TwoDotS4, &t).unwrap();
    let mut sampled = 0;
    for idx in 0..t.order() as u32 {
        let y = t.element(idx);
        if h.elements.contains(y) {
            continue;
        }
        let l = intersect_conjugate(&h.elements, y).unwrap();
        let coset_size = h.order() * h.order() / l.len();
        assert!(coset_size >= 144, "|HyH| = {coset_size} at y = {y}");
        if idx % 500 == 0 {
            sampled += 1;
            let mut gens = h.generators.clone();
            gens.push(*y);
            let gen_set = ElementSet::from_elements(&t, &gens).unwrap();
            assert!(gen_set.generates(), "H with {y} should generate");
        }
    }
    assert!(sampled >= 5);
}

/// The three Sylow 2-subgroups of the octahedral cover intersect
/// pairwise in order 8.
#[test]
fn sylow_two_intersections_have_order_eight() {
    let t = GroupTable::shared(17).unwrap();
    let h = build_subgroup(SubgroupKind::TwoDotS4, &t).unwrap();
    let mut sylows: Vec<ElementSet> = Vec::new();
    for g in h.elements.elements() {
        if g.order() != 8 {
            continue;
        }
        // closure of an order-8 element and a conjugate partner inside H
        let candidate = ElementSet::from_elements(&t, &[*g]).unwrap().closure();
        let mut grown = candidate;
        for m in h.elements.elements() {
            let joined = grown.with_index(t.index_of(m)).closure();
            if joined.len() == 16 && joined.is_subset_of(&h.elements) {
                grown = joined;
            }
        }
        if grown.len() == 16 && !sylows.contains(&grown) {
            sylows.push(grown);
        }
    }
    assert_eq!(sylows.len(), 3, "2.S4 has three Sylow 2-subgroups");
    for i in 0..sylows.len() {
        for j in i + 1..sylows.len() {
            assert_eq!(sylows[i].intersect(&sylows[j]).len(), 8);
        }
    }
}
