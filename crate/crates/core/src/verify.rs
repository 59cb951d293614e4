//! The reproduction battery: every headline quantity of the toolkit is
//! recomputed from scratch and checked against its expected value or
//! bracket. The CLI exposes this as `verify-all`; the acceptance test
//! target asserts each criterion individually.

use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use rayon::prelude::*;

use crate::constructions::{
    bound_estimate, build_subgroup, build_two_dot_a5, coset_core_set, eventual_delta_construction,
    find_good_x, normalize_rep, optimal_construction, realizable_kinds, splus2, BoundCase,
    SubgroupKind, SubgroupSpec,
};
use crate::growth::{
    double_coset, frobenius_size, intersect_conjugate, psl_project, ElementSet, ProductState,
};
use crate::perturb::{
    inner_items, outer_items, perturb_add, perturb_remove, perturb_swap,
    removals_preserve_triple, SwapScope,
};
use crate::search::{full_search, gl_conjugacy_classes, verify_published_optimum};
use crate::sl2::{GroupElement, GroupTable};
use crate::Error;

/// What to include in a [`run_all`] sweep.
#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Run the exhaustive `SL(2,5)` search (takes on the order of a
    /// minute; excluded from quick passes).
    pub include_search: bool,
    /// Check every swap perturbation instead of the seeded sample.
    pub exhaustive_swap: bool,
    /// Worker threads; 0 picks the rayon default.
    pub workers: usize,
}

/// One criterion's outcome. `details` lines are deterministic;
/// wall-clock time is kept separate so reports can stay byte-identical.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub skipped: bool,
    pub details: Vec<String>,
    pub seconds: f64,
}

struct Checker {
    details: Vec<String>,
    passed: bool,
}

impl Checker {
    fn new() -> Checker {
        Checker {
            details: Vec::new(),
            passed: true,
        }
    }

    fn check(&mut self, ok: bool, msg: String) {
        if ok {
            self.details.push(format!("ok: {msg}"));
        } else {
            self.passed = false;
            self.details.push(format!("FAIL: {msg}"));
        }
    }

    fn note(&mut self, msg: String) {
        self.details.push(format!("note: {msg}"));
    }

    fn finish(self, id: &'static str, name: &'static str, start: Instant) -> CriterionResult {
        CriterionResult {
            id,
            name,
            passed: self.passed,
            skipped: false,
            details: self.details,
            seconds: start.elapsed().as_secs_f64(),
        }
    }
}

fn table(p: u32) -> Arc<GroupTable> {
    GroupTable::shared(p).expect("tested primes fit the budget")
}

type CatalogPairs = Vec<(SubgroupSpec, Vec<(GroupElement, u64)>)>;

/// (subgroup, minimizer list) pairs for every catalog kind at `p` where
/// the scan succeeds; cached per prime since two criteria need them.
fn catalog_pairs(p: u32) -> Arc<CatalogPairs> {
    static CACHE: OnceLock<Mutex<std::collections::HashMap<u32, Arc<CatalogPairs>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&p) {
        return Arc::clone(hit);
    }
    let t = table(p);
    let mut out = Vec::new();
    for kind in realizable_kinds(p) {
        let Ok(h) = build_subgroup(kind, &t) else {
            continue;
        };
        // normal subgroups and kinds with no admissible x are skipped
        match find_good_x(&h) {
            Ok(pairs) => out.push((h, pairs)),
            Err(Error::NoneFound) => {}
            Err(e) => panic!("catalog scan failed for {kind} at p={p}: {e}"),
        }
    }
    let arc = Arc::new(out);
    cache.lock().unwrap().insert(p, Arc::clone(&arc));
    arc
}

/// C1: the coset-core sets of size 64 with cube 224 exist and have the
/// exact growth ratio `(5 + log2 7)/6`, for three primes `p = 1 mod 16`.
pub fn criterion_optimal_sets() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    let expected_delta = (5.0 + 7f64.log2()) / 6.0;
    for p in [17u32, 97, 113] {
        let clock = Instant::now();
        let t = table(p);
        match optimal_construction(&t) {
            Err(e) => c.check(false, format!("p={p}: construction failed: {e}")),
            Ok(built) => {
                let report = built.set.analyze();
                c.check(
                    report.size_s == 64,
                    format!("p={p}: |S| = {} (want 64)", report.size_s),
                );
                c.check(
                    report.size_s3 == 224,
                    format!("p={p}: |S^3| = {} (want 224)", report.size_s3),
                );
                c.check(report.generates, format!("p={p}: S generates SL(2,{p})"));
                c.check(
                    report.size_s3 < t.order(),
                    format!("p={p}: S^3 is a proper subset"),
                );
                let err = (report.delta_ratio - expected_delta).abs();
                c.check(
                    err < 1e-9,
                    format!("p={p}: delta = (5+log2(7))/6 up to {err:.2e}"),
                );
                let secs = clock.elapsed().as_secs_f64();
                c.check(secs < 5.0, format!("p={p}: runtime under the 5 s budget"));
            }
        }
    }
    c.finish("C1", "optimal 64/224 coset-core sets", start)
}

/// C2: the structural split of the optimal cube at `p = 17`:
/// `S³ = H ⊔ HxH ⊔ (x^{-1}Hx \ L)` with sizes 48 + 144 + 32.
pub fn criterion_cube_structure() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    let t = table(17);
    let built = optimal_construction(&t).expect("p=17 is admissible");
    let h = &built.subgroup.elements;
    let x = &built.x;
    let l = intersect_conjugate(h, x).expect("H is a subgroup");
    c.check(l.len() == 16, format!("|L| = {} (want 16)", l.len()));
    c.check(
        h.len() / l.len() == 3,
        format!("[H:L] = {} (want 3)", h.len() / l.len()),
    );
    c.check(
        l.is_subgroup(),
        "L is a subgroup of order 16 (a Sylow 2-subgroup)".into(),
    );
    let hxh = double_coset(h, x).expect("H is a subgroup");
    c.check(
        frobenius_size(h, h, x).expect("subgroups") == hxh.len() && hxh.len() == 144,
        format!("|HxH| = {} by enumeration and by |H|·|H|/d", hxh.len()),
    );
    let conj = h.conjugate_by(x);
    c.check(
        hxh.intersect(&conj).is_empty(),
        "HxH and x^{-1}Hx are disjoint".into(),
    );
    let third = conj.difference(&l);
    c.check(
        hxh.len() == 144 && third.len() == 32,
        format!(
            "|HxH| = {}, |x^-1Hx \\ L| = {} (want 144, 32)",
            hxh.len(),
            third.len()
        ),
    );
    c.check(
        h.intersect(&hxh).is_empty() && h.intersect(&third).is_empty(),
        "the three parts are pairwise disjoint".into(),
    );
    let cube = built.set.triple();
    let union = h.union(&hxh).union(&third);
    c.check(union == cube, "H ∪ HxH ∪ (x^-1Hx \\ L) equals S^3".into());
    c.check(cube.len() == 224, format!("48 + 144 + 32 = {}", cube.len()));
    c.finish("C2", "cube splits as H ⊔ HxH ⊔ (x⁻¹Hx∖L)", start)
}

/// C3: the fixed optimal 30-element subset of `SL(2,5)`.
pub fn criterion_sl25_optimum() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    let t = table(5);
    match verify_published_optimum(&t) {
        Err(e) => c.check(false, format!("interpretation failed: {e}")),
        Ok(report) => {
            c.check(
                report.size_s == 30,
                format!("|S| = {} (want 30)", report.size_s),
            );
            c.check(
                report.size_s3 == 114,
                format!("|S^3| = {} (want 114)", report.size_s3),
            );
            c.check(
                report.generates && report.symmetric && report.contains_identity,
                "S is symmetric, generates, and contains I".into(),
            );
            let err = (report.delta_ratio - 1.3925).abs();
            c.check(
                err < 1e-4,
                format!("delta within 1e-4 of 1.3925 (err {err:.2e})"),
            );
            c.check(report.size_s3 < 120, "S^3 is proper (114 < 120)".into());
        }
    }
    let secs = start.elapsed().as_secs_f64();
    c.check(secs < 1.0, "runtime under the 1 s budget".to_string());
    c.finish("C3", "SL(2,5) fixed 30/114 optimum", start)
}

/// C4 (long): the exhaustive `SL(2,5)` search terminates on the exact
/// optimum `log 114 / log 30` with sound witnesses, all GL(2,5)-conjugate.
pub fn criterion_exhaustive_search(workers: usize) -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    match full_search(3, workers) {
        Err(e) => c.check(false, format!("search failed: {e}")),
        Ok(result) => {
            c.check(
                result.best_sizes == Some((114, 30)),
                format!("optimum sizes {:?} (want (114, 30))", result.best_sizes),
            );
            let exact = 114f64.ln() / 30f64.ln();
            c.check(
                (result.best_delta - exact).abs() < 1e-12,
                format!("best delta {} = log 114 / log 30", result.best_delta),
            );
            c.check(
                !result.witnesses.is_empty(),
                format!("{} witnesses found", result.witnesses.len()),
            );
            let sound = result.witnesses.iter().all(|w| {
                let r = w.analyze();
                r.symmetric
                    && r.contains_identity
                    && r.generates
                    && r.size_s == 30
                    && r.size_s3 == 114
            });
            c.check(sound, "every witness re-verified by the set algebra".into());
            let classes = gl_conjugacy_classes(&result.witnesses);
            c.check(
                classes == 1,
                format!("witnesses form {classes} GL(2,5) conjugacy class(es)"),
            );
            c.note(format!("nodes visited: {}", result.nodes_visited));
        }
    }
    c.finish("C4", "exhaustive SL(2,5) search optimum", start)
}

/// C5: projecting the optimal set to `PSL(2,17)` gives (32, 112).
pub fn criterion_psl_projection() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    let t = table(17);
    let s = optimal_construction(&t).expect("p=17 admissible").set;
    match psl_project(&s) {
        Err(e) => c.check(false, format!("projection failed: {e}")),
        Ok((b, b3)) => {
            c.check(
                (b, b3) == (32, 112),
                format!("image sizes ({b}, {b3}) (want (32, 112))"),
            );
            let ratio = 112f64.ln() / 32f64.ln();
            c.check(
                (ratio - 1.3614).abs() < 1e-3,
                format!("log 112 / log 32 = {ratio:.5} within 1e-3 of 1.3614"),
            );
        }
    }
    c.finish("C5", "projection to PSL(2,17) gives 32/112", start)
}

/// C6: the large quadratic-residue sets: exact size, bracketed cube,
/// proper cube, generation, and the drift of `|S³|/|S|^{3/2}` toward √2.
pub fn criterion_large_sets() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    for p in [5u32, 13, 17] {
        let t = table(p);
        let built = eventual_delta_construction(&t).expect("p = 1 mod 4");
        let report = built.set.analyze();
        let p64 = p as u64;
        let want_size = (p64 * (p64 - 1) + 4) / 2;
        c.check(
            report.size_s == want_size,
            format!("p={p}: |S| = {} (want {want_size})", report.size_s),
        );
        let lo = (p64 + 1) * p64 * (p64 - 1) / 2;
        let hi = (p64 + 2) * p64 * (p64 - 1) / 2;
        c.check(
            (lo..=hi).contains(&report.size_s3),
            format!("p={p}: |S^3| = {} within [{lo}, {hi}]", report.size_s3),
        );
        c.check(
            report.size_s3 < t.order(),
            format!("p={p}: S^3 proper ({} < {})", report.size_s3, t.order()),
        );
        c.check(report.generates, format!("p={p}: S generates"));
    }
    let mut last_ratio = 0.0;
    for p in [13u32, 17, 29, 37, 41] {
        let t = table(p);
        let s = eventual_delta_construction(&t).expect("p = 1 mod 4").set;
        let cube = s.triple().len() as f64;
        let ratio = cube / (s.len() as f64).powf(1.5);
        c.check(
            ratio > 1.0 && ratio < 2.0,
            format!("p={p}: |S^3|/|S|^1.5 = {ratio:.4} in (1, 2)"),
        );
        last_ratio = ratio;
    }
    let drift = (last_ratio - std::f64::consts::SQRT_2).abs() / std::f64::consts::SQRT_2;
    c.check(
        drift < 0.15,
        format!(
            "p=41 ratio {last_ratio:.4} within 15% of sqrt(2) (off by {:.1}%)",
            drift * 100.0
        ),
    );
    c.finish("C6", "large residue sets: sizes, brackets, √2 trend", start)
}

/// C7: index-based brackets hold for every catalog pair, and the
/// exceptional-subgroup numeric bounds are attained.
pub fn criterion_bound_suites() -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    for p in [13u32, 17] {
        let pairs = catalog_pairs(p);
        c.note(format!(
            "p={p}: catalog kinds with admissible x: {}",
            pairs.len()
        ));
        for (h, xs) in pairs.iter() {
            let outcomes: Vec<(u64, u64, u64, bool)> = xs
                .par_iter()
                .map(|(x, cidx)| {
                    let core = coset_core_set(h, x).expect("x^2 in H by construction");
                    let plus2 = splus2(h, x).expect("x outside H, order > 2");
                    (
                        core.triple().len(),
                        plus2.triple().len(),
                        *cidx,
                        core.len() == h.order() + h.order() / cidx,
                    )
                })
                .collect();
            let mut all_ok = true;
            let mut c_seen = 0;
            for (core3, plus3, cidx, size_ok) in outcomes {
                c_seen = cidx;
                let est = bound_estimate(h.order(), cidx, BoundCase::CosetCore)
                    .expect("c >= 2 for generating pairs");
                let hi = est.upper3.unwrap();
                all_ok &= size_ok
                    && (est.lower3..=hi).contains(&core3)
                    && (est.lower3..=hi).contains(&plus3);
            }
            c.check(
                all_ok,
                format!(
                    "p={p} {}: {} pair(s) at c={c_seen}, cubes inside [(c+1)|H|, (c+2-1/c)|H|]",
                    h.kind,
                    xs.len()
                ),
            );
            c.check(
                xs.iter().all(|(_, cidx)| *cidx >= 2),
                format!("p={p} {}: no emitted pair has index 1", h.kind),
            );
        }
    }
    // tetrahedral cover at p = 17: cube at least 96, set at most 32
    {
        let t = table(17);
        let h = build_subgroup(SubgroupKind::TwoDotA4, &t).expect("p = 1 mod 8");
        match find_good_x(&h) {
            Err(e) => c.check(false, format!("2.A4 scan failed: {e}")),
            Ok(xs) => {
                let (x, cidx) = &xs[0];
                let s = coset_core_set(&h, x).expect("x^2 in H");
                c.check(
                    s.len() <= 32 && s.triple().len() >= 96,
                    format!(
                        "2.A4 at p=17: |S| = {} <= 32, |S^3| = {} >= 96 (c={cidx})",
                        s.len(),
                        s.triple().len()
                    ),
                );
            }
        }
    }
    // icosahedral cover at p in {11, 19}: cube at least 720, set at most 144
    for p in [11u32, 19] {
        let t = table(p);
        match build_two_dot_a5(&t, 0) {
            Err(Error::SearchExhausted(n)) => {
                c.note(format!(
                    "p={p}: 2.A5 randomized build gave up after {n} attempts; skipped"
                ));
            }
            Err(e) => c.check(false, format!("p={p}: 2.A5 build failed: {e}")),
            Ok(h) => match find_good_x(&h) {
                Err(e) => c.check(false, format!("p={p}: 2.A5 scan failed: {e}")),
                Ok(xs) => {
                    let (x, cidx) = &xs[0];
                    let s = coset_core_set(&h, x).expect("x^2 in H");
                    c.check(
                        *cidx >= 5 && s.len() <= 144 && s.triple().len() >= 720,
                        format!(
                            "2.A5 at p={p}: c={cidx} >= 5, |S| = {} <= 144, |S^3| = {} >= 720",
                            s.len(),
                            s.triple().len()
                        ),
                    );
                }
            },
        }
    }
    c.finish("C7", "index brackets and exceptional-cover bounds", start)
}

/// C8: the optimal set is a local minimum: removals keep the cube
/// exactly, every add grows the cube to at least 240 (336 outside the
/// distinguished double coset), and swaps gain at least 14 cube elements.
pub fn criterion_local_minimum(exhaustive_swap: bool) -> CriterionResult {
    let start = Instant::now();
    let mut c = Checker::new();
    let t = table(17);
    let built = optimal_construction(&t).expect("p=17 admissible");
    let s = &built.set;
    let h = &built.subgroup.elements;
    let base = s.analyze();

    c.check(
        removals_preserve_triple(s),
        "every pair/center removal keeps S^3 exactly".into(),
    );
    let removal = perturb_remove(s);
    c.check(
        removal.all_exceed_base && removal.trials == 32,
        format!(
            "all {} removals exceed the base ratio (min {:.5} > {:.5})",
            removal.trials, removal.min_delta_seen, removal.base_delta
        ),
    );

    let add = perturb_add(s);
    c.check(
        add.all_exceed_base && add.trials == (t.order() - 64) / 2,
        format!(
            "all {} adds exceed the base ratio (min {:.5})",
            add.trials, add.min_delta_seen
        ),
    );
    c.check(
        add.min_delta_seen > 1.3081,
        format!("worst add ratio {:.5} > 1.3081", add.min_delta_seen),
    );
    // per-add cube floors, split by whether HyH is the distinguished coset
    let hxh = double_coset(h, &built.x).expect("subgroup");
    let state = ProductState::new(s);
    let floors: Vec<(bool, u64)> = outer_items(s)
        .par_iter()
        .map(|&y| {
            let cube = state.with_pair(y).s3.len();
            (hxh.contains_index(y), cube)
        })
        .collect();
    c.check(
        floors.iter().all(|&(_, cube)| cube >= 240),
        format!(
            "every add reaches |T^3| >= 240 (min {})",
            floors.iter().map(|&(_, cube)| cube).min().unwrap()
        ),
    );
    c.check(
        floors
            .iter()
            .filter(|&&(same, _)| !same)
            .all(|&(_, cube)| cube >= 336),
        "adds outside HxH reach |T^3| >= 336".into(),
    );

    let scope = if exhaustive_swap {
        SwapScope::All
    } else {
        SwapScope::Sample(1000)
    };
    let swap = perturb_swap(s, scope, 0);
    c.check(
        swap.all_exceed_base,
        format!(
            "all {} swaps exceed the base ratio (min {:.5})",
            swap.trials, swap.min_delta_seen
        ),
    );
    // swap cube floor: at least 14 elements above the base cube,
    // measured per trial (the minimum-ratio case alone could hide a
    // floor violation at the other set size)
    let inners = inner_items(s);
    let outers = outer_items(s);
    let combos: Vec<(usize, usize)> = if exhaustive_swap {
        (0..inners.len())
            .flat_map(|i| (0..outers.len()).map(move |o| (i, o)))
            .collect()
    } else {
        use rand::Rng;
        use rand_chacha::rand_core::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        (0..1000)
            .map(|_| (rng.gen_range(0..inners.len()), rng.gen_range(0..outers.len())))
            .collect()
    };
    let mut by_inner: Vec<Vec<usize>> = vec![Vec::new(); inners.len()];
    for &(i, o) in &combos {
        by_inner[i].push(o);
    }
    let min_cube: u64 = by_inner
        .par_iter()
        .enumerate()
        .filter(|(_, os)| !os.is_empty())
        .map(|(i, os)| {
            let zstate = ProductState::new(&s.without_pair(inners[i]));
            os.iter()
                .map(|&o| zstate.with_pair(outers[o]).s3.len())
                .min()
                .unwrap()
        })
        .min()
        .unwrap();
    c.check(
        min_cube >= base.size_s3 + 14,
        format!(
            "{} swap cube floor {min_cube} >= |S^3| + 14 = {}",
            if exhaustive_swap {
                "exhaustive"
            } else {
                "sampled"
            },
            base.size_s3 + 14
        ),
    );
    c.finish("C8", "optimal set is a local minimum", start)
}

/// C9: the cross-cutting property suites: Frobenius agreement, the
/// double-coset partition, the triangular index law, representative
/// normalization, the unique involution, and bound monotonicity.
pub fn criterion_property_suites() -> CriterionResult {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    let start = Instant::now();
    let mut c = Checker::new();

    // Frobenius size formula against enumeration, 200 random triples each
    for p in [5u32, 13, 17] {
        let t = table(p);
        let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
        let mut agreed = 0;
        let mut trials = 0;
        while trials < 200 {
            let a = ElementSet::from_indices(&t, [rng.gen_range(0..t.order() as u32)]);
            let b = ElementSet::from_indices(&t, [rng.gen_range(0..t.order() as u32)]);
            let (Some(h), Some(l)) = (a.closure_within(500), b.closure_within(500)) else {
                continue;
            };
            let x = *t.element(rng.gen_range(0..t.order() as u32));
            trials += 1;
            let predicted = frobenius_size(&h, &l, &x).expect("closures are subgroups");
            let enumerated = h.right_mul(&x).product(&l).expect("same table").len();
            if predicted == enumerated {
                agreed += 1;
            }
        }
        c.check(
            agreed == trials,
            format!("p={p}: Frobenius formula matched enumeration in {agreed}/{trials} trials"),
        );
    }

    // double cosets partition the group (exhaustive at p = 5)
    {
        let t = table(5);
        for kind in realizable_kinds(5) {
            let Ok(h) = build_subgroup(kind, &t) else {
                continue;
            };
            let mut covered = ElementSet::empty(&t);
            let mut disjoint = true;
            for idx in 0..t.order() as u32 {
                if covered.contains_index(idx) {
                    continue;
                }
                let coset = double_coset(&h.elements, t.element(idx)).expect("subgroup");
                if !covered.intersect(&coset).is_empty() {
                    disjoint = false;
                }
                covered = covered.union(&coset);
            }
            c.check(
                disjoint && covered == ElementSet::full(&t),
                format!("p=5 {kind}: double cosets partition the group"),
            );
        }
    }

    // triangular index law at p = 13: |H ∩ x^-1Hx| = |H|/p off U
    {
        let t = table(13);
        let u = build_subgroup(SubgroupKind::UpperTriangular, &t).unwrap();
        for kind in [SubgroupKind::UpperTriangular, SubgroupKind::QrIndex2] {
            let h = build_subgroup(kind, &t).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(99);
            let mut ok = true;
            let mut done = 0;
            while done < 50 {
                let x = *t.element(rng.gen_range(0..t.order() as u32));
                if u.elements.contains(&x) {
                    continue;
                }
                done += 1;
                let l = intersect_conjugate(&h.elements, &x).expect("subgroup");
                ok &= l.len() == h.order() / 13;
            }
            c.check(
                ok,
                format!("p=13 {kind}: |H ∩ x⁻¹Hx| = |H|/p for 50 random x ∉ U"),
            );
        }
    }

    // representative normalization on all catalog pairs
    for p in [13u32, 17] {
        let pairs = catalog_pairs(p);
        let mut ok = true;
        let mut count = 0;
        for (h, xs) in pairs.iter() {
            for (x, _) in xs {
                count += 1;
                match normalize_rep(h, x).expect("x outside H") {
                    None => ok = false,
                    Some(y) => {
                        ok &= h.elements.contains(&y.mul(&y));
                        let t3 = splus2(h, &y).expect("valid").triple();
                        let s3 = splus2(h, x).expect("valid").triple();
                        ok &= t3.is_subset_of(&s3);
                    }
                }
            }
        }
        c.check(
            ok,
            format!("p={p}: normalization gave y with y² ∈ H and T³ ⊆ S³ on {count} pairs"),
        );
    }

    // the unique involution is -I (exhaustive for p <= 17)
    for p in [3u32, 5, 7, 11, 13, 17] {
        let t = table(p);
        let involutions: Vec<u32> = (0..t.order() as u32)
            .filter(|&i| {
                let g = t.element(i);
                !g.is_identity() && g.mul(g).is_identity()
            })
            .collect();
        c.check(
            involutions.len() == 1 && *t.element(involutions[0]) == GroupElement::neg_identity(p),
            format!("p={p}: -I is the unique involution"),
        );
    }

    // monotone bound grid
    {
        let mut ok = true;
        for l in [2u64, 4, 8] {
            let mut prev = None;
            let mut k = 1.0;
            while k <= 50.0 {
                let (f, g) = crate::constructions::monotone_bounds(l, k).expect("domain");
                if let Some((pf, pg)) = prev {
                    ok &= f > pf && g > pg;
                }
                prev = Some((f, g));
                k += 0.5;
            }
        }
        c.check(
            ok,
            "f_l and g_l strictly increase on the k grid for l in {2,4,8}".into(),
        );
    }

    c.finish("C9", "Frobenius, partitions, index law, normalization", start)
}

fn skipped_search_row() -> CriterionResult {
    CriterionResult {
        id: "C4",
        name: "exhaustive SL(2,5) search optimum",
        passed: true,
        skipped: true,
        details: vec!["skipped: run with --include-search (takes about a minute)".into()],
        seconds: 0.0,
    }
}

/// Runs the whole battery; the search criterion is included only on
/// request and reported as skipped otherwise.
pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionResult> {
    let mut results = vec![
        criterion_optimal_sets(),
        criterion_cube_structure(),
        criterion_sl25_optimum(),
    ];
    if opts.include_search {
        results.push(criterion_exhaustive_search(opts.workers));
    } else {
        results.push(skipped_search_row());
    }
    results.push(criterion_psl_projection());
    results.push(criterion_large_sets());
    results.push(criterion_bound_suites());
    results.push(criterion_local_minimum(opts.exhaustive_swap));
    results.push(criterion_property_suites());
    results
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skipped_row_is_marked_and_passing() {
        let row = skipped_search_row();
        assert!(row.skipped && row.passed);
    }

    #[test]
    fn checker_collects_failures() {
        let mut c = Checker::new();
        c.check(true, "fine".into());
        c.check(false, "broken".into());
        c.note("extra".into());
        assert!(!c.passed);
        assert_eq!(c.details.len(), 3);
        assert!(c.details[1].starts_with("FAIL"));
    }
}
