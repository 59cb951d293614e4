//! Local-minimum verification: adding, removing, or swapping an inverse
//! pair in a symmetric set and measuring how `Δ` responds.
//!
//! A perturbation item is either an inverse pair `{y, y^{-1}}` or the
//! singleton `{-I}` (its own inverse). Removals keep the identity in
//! place; adds draw from outside the set; swaps do both at once. Trials
//! are independent and run across workers, with a deterministic
//! min-reduction.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::growth::{cmp_delta, delta_ratio, ElementSet, ProductState};

/// Which perturbation a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbKind {
    Add,
    Remove,
    Swap,
}

impl PerturbKind {
    pub fn name(&self) -> &'static str {
        match self {
            PerturbKind::Add => "add",
            PerturbKind::Remove => "remove",
            PerturbKind::Swap => "swap",
        }
    }
}

/// How many swap combinations to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapScope {
    /// The full cross product of inner and outer items.
    All,
    /// A seeded uniform sample of this many combinations.
    Sample(u64),
}

/// Outcome of a perturbation sweep.
#[derive(Debug, Clone)]
pub struct PerturbationReport {
    pub base_delta: f64,
    pub kind: PerturbKind,
    pub trials: u64,
    pub min_delta_seen: f64,
    pub all_exceed_base: bool,
    /// The perturbed set achieving `min_delta_seen`.
    pub worst_case: ElementSet,
}

/// Canonical representatives of the inverse-pair items inside `set`,
/// excluding the identity: one index per pair `{y, y^{-1}}`, plus `-I`
/// by itself when present.
pub fn inner_items(set: &ElementSet) -> Vec<u32> {
    let t = set.table();
    set.indices()
        .filter(|&i| i != t.identity_index() && i <= t.inv_idx(i))
        .collect()
}

/// Canonical representatives of the inverse-pair items outside `set`.
pub fn outer_items(set: &ElementSet) -> Vec<u32> {
    let t = set.table();
    (0..t.order() as u32)
        .filter(|&i| !set.contains_index(i) && i <= t.inv_idx(i))
        .collect()
}

fn summarize(
    kind: PerturbKind,
    base: &ProductState,
    results: Vec<(u64, u64)>,
    rebuild: impl Fn(usize) -> ElementSet,
) -> PerturbationReport {
    assert!(!results.is_empty(), "perturbation sweep had no trials");
    let base_pair = (base.s3.len(), base.s.len());
    let mut min_at = 0usize;
    let mut all_exceed = true;
    for (k, &(t3, t)) in results.iter().enumerate() {
        if cmp_delta((t3, t), base_pair) != std::cmp::Ordering::Greater {
            all_exceed = false;
        }
        if cmp_delta((t3, t), results[min_at]) == std::cmp::Ordering::Less {
            min_at = k;
        }
    }
    let (t3, t) = results[min_at];
    PerturbationReport {
        base_delta: delta_ratio(base_pair.0, base_pair.1),
        kind,
        trials: results.len() as u64,
        min_delta_seen: delta_ratio(t3, t),
        all_exceed_base: all_exceed,
        worst_case: rebuild(min_at),
    }
}

/// `Δ(S ∪ {y^{±1}})` over every inverse pair outside `S`.
pub fn perturb_add(set: &ElementSet) -> PerturbationReport {
    let base = ProductState::new(set);
    let outers = outer_items(set);
    let results: Vec<(u64, u64)> = outers
        .par_iter()
        .map(|&y| {
            let t = base.with_pair(y);
            (t.s3.len(), t.s.len())
        })
        .collect();
    summarize(PerturbKind::Add, &base, results, |k| {
        set.with_pair(outers[k])
    })
}

/// `Δ(S \ {z^{±1}})` over every inverse pair (and the `-I` singleton)
/// inside `S \ {I}`.
pub fn perturb_remove(set: &ElementSet) -> PerturbationReport {
    let base = ProductState::new(set);
    let inners = inner_items(set);
    let results: Vec<(u64, u64)> = inners
        .par_iter()
        .map(|&z| {
            let t = set.without_pair(z);
            (t.triple().len(), t.len())
        })
        .collect();
    summarize(PerturbKind::Remove, &base, results, |k| {
        set.without_pair(inners[k])
    })
}

/// Whether every removal leaves the triple product exactly unchanged
/// (set equality, not just size).
pub fn removals_preserve_triple(set: &ElementSet) -> bool {
    let s3 = set.triple();
    inner_items(set)
        .par_iter()
        .all(|&z| set.without_pair(z).triple() == s3)
}

/// `Δ((S \ {s^{±1}}) ∪ {y^{±1}})` over inner/outer combinations: the full
/// cross product, or a seeded uniform sample.
pub fn perturb_swap(set: &ElementSet, scope: SwapScope, seed: u64) -> PerturbationReport {
    let base = ProductState::new(set);
    let inners = inner_items(set);
    let outers = outer_items(set);
    let combos: Vec<(usize, usize)> = match scope {
        SwapScope::All => (0..inners.len())
            .flat_map(|i| (0..outers.len()).map(move |o| (i, o)))
            .collect(),
        SwapScope::Sample(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    (
                        rng.gen_range(0..inners.len()),
                        rng.gen_range(0..outers.len()),
                    )
                })
                .collect()
        }
    };
    // group by inner item so the shrunken state is built once per inner
    let mut by_inner: Vec<Vec<usize>> = vec![Vec::new(); inners.len()];
    for &(i, o) in &combos {
        by_inner[i].push(o);
    }
    let per_inner: Vec<Vec<(usize, (u64, u64))>> = by_inner
        .par_iter()
        .enumerate()
        .filter(|(_, os)| !os.is_empty())
        .map(|(i, os)| {
            let z = set.without_pair(inners[i]);
            let state = ProductState::new(&z);
            os.iter()
                .map(|&o| {
                    let t = state.with_pair(outers[o]);
                    (o, (t.s3.len(), t.s.len()))
                })
                .collect()
        })
        .collect();
    let mut sized: Vec<((usize, usize), (u64, u64))> = per_inner
        .iter()
        .zip(by_inner.iter().enumerate().filter(|(_, os)| !os.is_empty()))
        .flat_map(|(res, (i, _))| res.iter().map(move |&(o, sizes)| ((i, o), sizes)))
        .collect();
    sized.sort_by_key(|&(key, _)| key);
    let keys: Vec<(usize, usize)> = sized.iter().map(|&(k, _)| k).collect();
    let results: Vec<(u64, u64)> = sized.iter().map(|&(_, s)| s).collect();
    summarize(PerturbKind::Swap, &base, results, |k| {
        let (i, o) = keys[k];
        set.without_pair(inners[i]).with_pair(outers[o])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::optimal_set;
    use crate::sl2::{GroupElement, GroupTable};
    

    fn optimal17() -> ElementSet {
        let t = GroupTable::shared(17).unwrap();
        optimal_set(&t).unwrap()
    }

    #[test]
    fn item_lists_partition_pairs() {
        let s = optimal17();
        let t = s.table();
        let inner = inner_items(&s);
        let outer = outer_items(&s);
        // 64 = identity + the -I singleton + 31 proper pairs
        assert_eq!(inner.len(), 32);
        assert!(inner.contains(&t.neg_identity_index()));
        assert_eq!(outer.len(), (4896 - 64) / 2);
        for &i in &outer {
            assert!(!s.contains_index(i));
        }
    }

    #[test]
    fn removals_keep_the_cube() {
        let s = optimal17();
        assert!(removals_preserve_triple(&s));
        let r = perturb_remove(&s);
        assert_eq!(r.trials, 32);
        assert!(r.all_exceed_base);
        // every removal keeps |T^3| = 224 while |T| shrinks to 62 or 63
        assert!(r.min_delta_seen > r.base_delta);
        assert_eq!(r.worst_case.triple().len(), 224);
    }

    #[test]
    fn sampled_swaps_exceed_base() {
        let s = optimal17();
        let r = perturb_swap(&s, SwapScope::Sample(60), 1);
        assert_eq!(r.trials, 60);
        assert!(r.all_exceed_base);
        assert!(r.min_delta_seen > r.base_delta);
        // the worst case still picked up at least 14 extra cube elements
        assert!(r.worst_case.triple().len() >= 238);
    }

    #[test]
    fn swap_determinism() {
        let s = optimal17();
        let a = perturb_swap(&s, SwapScope::Sample(40), 7);
        let b = perturb_swap(&s, SwapScope::Sample(40), 7);
        assert_eq!(a.min_delta_seen, b.min_delta_seen);
        assert_eq!(a.worst_case, b.worst_case);
    }

    #[test]
    fn add_on_a_small_set() {
        // {I, -I} plus any pair keeps delta well above 1
        let t = GroupTable::shared(5).unwrap();
        let center = ElementSet::from_elements(
            &t,
            &[GroupElement::identity(5), GroupElement::neg_identity(5)],
        )
        .unwrap();
        let r = perturb_add(&center);
        assert_eq!(r.trials, 59);
        assert!(r.min_delta_seen >= 1.0);
    }
}
