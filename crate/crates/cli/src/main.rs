//! Command-line front end: constructions, growth reports, the exhaustive
//! `SL(2,5)` search, perturbation sweeps, the subgroup catalog, and the
//! full verification battery.
//!
//! Results go to standard output (JSON with `--json`, aligned text
//! otherwise); logs go to standard error. Exit codes: 0 success, 1 a
//! claim or assertion failed, 2 usage error.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use sl2_growth::constructions::{
    build_subgroup, coset_core_set, eventual_delta_set, find_good_x, optimal_set, realizable_kinds,
    splus2, SubgroupKind,
};
use sl2_growth::growth::{format_set, parse_set_text, ElementSet, GrowthReport};
use sl2_growth::perturb::{perturb_add, perturb_remove, perturb_swap, SwapScope};
use sl2_growth::search::{backtrack_search, merge_results, SearchConfig, SearchResult};
use sl2_growth::sl2::{GroupElement, GroupTable};
use sl2_growth::verify::{run_all, VerifyOptions};

#[derive(Parser)]
#[command(name = "sl2-growth", version, about = "Symmetric sets with small triple products in SL(2,p)")]
struct Cli {
    /// Emit machine-readable JSON instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    /// Lift the default prime cap of p <= 101.
    #[arg(long, global = true)]
    allow_large: bool,
    /// Worker threads for search and perturbation sweeps (0 = automatic).
    #[arg(long, global = true, env = "SL2_GROWTH_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Write the primary output to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a catalog subgroup, optionally extended by a companion x.
    Construct {
        #[arg(long)]
        p: u32,
        /// Subgroup kind: upper_triangular, unipotent, diagonal,
        /// qr_index2, cyclic:<n>, gen_quaternion:<4n>, two_dot_S4,
        /// two_dot_A4, two_dot_A5.
        #[arg(long)]
        kind: String,
        /// Companion element: `auto` scans for the best x, otherwise a
        /// matrix like [[0,3],[11,0]].
        #[arg(long)]
        with_x: Option<String>,
        /// Extend by the whole coset core xH ∩ Hx instead of {x, x^-1}.
        #[arg(long)]
        coset_core: bool,
    },
    /// Growth report of a set: sizes, delta ratio, status flags.
    Analyze {
        /// `optimal`, `eventual-delta`, `published`, or a set file path.
        #[arg(long)]
        set: String,
        /// Prime modulus; required for the named constructions.
        #[arg(long)]
        p: Option<u32>,
    },
    /// Exhaustive backtrack search over symmetric subsets of SL(2,5).
    Search {
        #[arg(long, default_value_t = 5)]
        p: u32,
        #[arg(long, value_enum, default_value_t = Half::Both)]
        half: Half,
        #[arg(long, default_value_t = 3)]
        prune_depth: u32,
        /// Optional pruning ratio; leave unset for the certified run.
        #[arg(long)]
        delta_cap: Option<f64>,
    },
    /// Add/remove/swap perturbation sweep around a set (default: the
    /// optimal construction at the given prime).
    Perturb {
        #[arg(long, default_value_t = 17)]
        p: u32,
        #[arg(long, value_enum)]
        kind: PerturbChoice,
        /// Evaluate every swap combination instead of a sample.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample size for swap sweeps.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// List the realizable catalog subgroups at a prime.
    Catalog {
        #[arg(long)]
        p: u32,
    },
    /// Run the verification battery and print a pass/fail table.
    VerifyAll {
        /// Include the exhaustive SL(2,5) search (about a minute).
        #[arg(long)]
        include_search: bool,
        /// Check every swap perturbation instead of a sample.
        #[arg(long)]
        exhaustive_swap: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Half {
    WithCenter,
    WithoutCenter,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum PerturbChoice {
    Add,
    Remove,
    Swap,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e
                .downcast_ref::<sl2_growth::Error>()
                .map(|err| matches!(err, sl2_growth::Error::Parse(_)))
                .unwrap_or(false);
            if usage {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    if cli.workers > 0 {
        // best effort; the pool may already exist in tests
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.workers)
            .build_global();
    }
    let mut sink = output_sink(&cli.out)?;
    match &cli.command {
        Command::Construct {
            p,
            kind,
            with_x,
            coset_core,
        } => cmd_construct(&cli, &mut sink, *p, kind, with_x.as_deref(), *coset_core),
        Command::Analyze { set, p } => cmd_analyze(&cli, &mut sink, set, *p),
        Command::Search {
            p,
            half,
            prune_depth,
            delta_cap,
        } => cmd_search(&cli, &mut sink, *p, *half, *prune_depth, *delta_cap),
        Command::Perturb {
            p,
            kind,
            exhaustive,
            seed,
            samples,
        } => cmd_perturb(&cli, &mut sink, *p, *kind, *exhaustive, *seed, *samples),
        Command::Catalog { p } => cmd_catalog(&cli, &mut sink, *p),
        Command::VerifyAll {
            include_search,
            exhaustive_swap,
        } => cmd_verify_all(&cli, &mut sink, *include_search, *exhaustive_swap),
    }
}

fn output_sink(path: &Option<std::path::PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(
            std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        ),
        None => Box::new(std::io::stdout()),
    })
}

fn make_table(p: u32, allow_large: bool) -> anyhow::Result<Arc<GroupTable>> {
    if p > 101 && !allow_large {
        return Err(sl2_growth::Error::Parse(format!(
            "p = {p} exceeds the default cap of 101; pass --allow-large to proceed"
        ))
        .into());
    }
    let budget = if allow_large {
        100_000_000
    } else {
        GroupTable::DEFAULT_BUDGET
    };
    Ok(Arc::new(GroupTable::enumerate_with_budget(p, budget)?))
}

fn report_json(report: &GrowthReport) -> serde_json::Value {
    serde_json::to_value(report).expect("report serializes")
}

fn print_report(cli: &Cli, sink: &mut dyn Write, report: &GrowthReport) -> anyhow::Result<()> {
    if cli.json {
        writeln!(sink, "{}", serde_json::to_string_pretty(&report_json(report))?)?;
    } else {
        writeln!(sink, "|S|    = {}", report.size_s)?;
        writeln!(sink, "|S^2|  = {}", report.size_s2)?;
        writeln!(sink, "|S^3|  = {}", report.size_s3)?;
        writeln!(sink, "delta  = {:.9}", report.delta_ratio)?;
        writeln!(sink, "generates: {}", report.generates)?;
        writeln!(sink, "symmetric: {}", report.symmetric)?;
        writeln!(sink, "contains I: {}", report.contains_identity)?;
    }
    Ok(())
}

fn cmd_construct(
    cli: &Cli,
    sink: &mut dyn Write,
    p: u32,
    kind: &str,
    with_x: Option<&str>,
    coset_core: bool,
) -> anyhow::Result<ExitCode> {
    let table = make_table(p, cli.allow_large)?;
    let kind = SubgroupKind::parse(kind)?;
    let h = build_subgroup(kind, &table)?;
    let (set, x_used): (ElementSet, Option<GroupElement>) = match with_x {
        None => (h.elements.clone(), None),
        Some(spec) => {
            let x = if spec == "auto" {
                let best = find_good_x(&h)?;
                best[0].0
            } else {
                GroupElement::parse(spec, p)?
            };
            let set = if coset_core {
                coset_core_set(&h, &x)?
            } else {
                splus2(&h, &x)?
            };
            (set, Some(x))
        }
    };
    eprintln!(
        "constructed {} at p={p}: |H| = {}{}{}",
        kind,
        h.order(),
        x_used.map_or(String::new(), |x| format!(", x = {x}")),
        if with_x.is_some() {
            format!(", |S| = {}", set.len())
        } else {
            String::new()
        }
    );
    if cli.json {
        let value = serde_json::json!({
            "p": p,
            "kind": kind.name(),
            "order": h.order(),
            "x": x_used.map(|x| x.to_string()),
            "set_size": set.len(),
            "set": set.elements().map(|g| g.to_string()).collect::<Vec<_>>(),
        });
        writeln!(sink, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        write!(sink, "{}", format_set(&set))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_analyze(
    cli: &Cli,
    sink: &mut dyn Write,
    set_spec: &str,
    p: Option<u32>,
) -> anyhow::Result<ExitCode> {
    let (table, set) = match set_spec {
        "optimal" => {
            let p = p.ok_or_else(|| anyhow!("--set optimal needs --p"))?;
            let table = make_table(p, cli.allow_large)?;
            let set = optimal_set(&table)?;
            (table, set)
        }
        "eventual-delta" => {
            let p = p.ok_or_else(|| anyhow!("--set eventual-delta needs --p"))?;
            let table = make_table(p, cli.allow_large)?;
            let set = eventual_delta_set(&table)?;
            (table, set)
        }
        "published" => {
            let table = make_table(5, cli.allow_large)?;
            let set = sl2_growth::search::published_optimal_set(&table)?;
            (table, set)
        }
        path => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading set file {path}"))?;
            let (file_p, elems) = parse_set_text(&text)?;
            if let Some(want) = p {
                if want != file_p {
                    return Err(sl2_growth::Error::ModulusMismatch(file_p, want).into());
                }
            }
            let table = make_table(file_p, cli.allow_large)?;
            let set = ElementSet::from_elements(&table, &elems)?;
            (table, set)
        }
    };
    let _ = &table;
    let report = set.analyze();
    if !report.symmetric {
        print_report(cli, sink, &report)?;
        eprintln!("SymmetryViolation: the set is not closed under inversion");
        return Ok(ExitCode::from(1));
    }
    print_report(cli, sink, &report)?;
    Ok(ExitCode::SUCCESS)
}

fn search_json(result: &SearchResult) -> serde_json::Value {
    serde_json::json!({
        "best_delta": result.best_delta,
        "best_sizes": result.best_sizes.map(|(c, s)| serde_json::json!({"cube": c, "size": s})),
        "witness_count": result.witnesses.len(),
        "witnesses": result.witnesses.iter().map(format_set).collect::<Vec<_>>(),
        "nodes_visited": result.nodes_visited,
        "timing": { "wall_seconds": result.wall_time.as_secs_f64() },
    })
}

fn cmd_search(
    cli: &Cli,
    sink: &mut dyn Write,
    p: u32,
    half: Half,
    prune_depth: u32,
    delta_cap: Option<f64>,
) -> anyhow::Result<ExitCode> {
    let config = |include_minus_i| SearchConfig {
        p,
        include_minus_i,
        conjugacy_prune_depth: prune_depth,
        delta_cap,
        worker_count: cli.workers,
    };
    let result = match half {
        Half::WithCenter => backtrack_search(&config(true))?,
        Half::WithoutCenter => backtrack_search(&config(false))?,
        Half::Both => {
            eprintln!("searching the half containing -I ...");
            let a = backtrack_search(&config(true))?;
            eprintln!("searching the half without -I ...");
            let b = backtrack_search(&config(false))?;
            merge_results(a, b)
        }
    };
    eprintln!(
        "search done: {} nodes in {:.1}s",
        result.nodes_visited,
        result.wall_time.as_secs_f64()
    );
    if cli.json {
        writeln!(sink, "{}", serde_json::to_string_pretty(&search_json(&result))?)?;
    } else {
        writeln!(sink, "best delta    = {:.6}", result.best_delta)?;
        if let Some((cube, size)) = result.best_sizes {
            writeln!(sink, "best |S^3|/|S| = {cube}/{size}")?;
        }
        writeln!(sink, "witnesses     = {}", result.witnesses.len())?;
        writeln!(sink, "nodes visited = {}", result.nodes_visited)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_perturb(
    cli: &Cli,
    sink: &mut dyn Write,
    p: u32,
    kind: PerturbChoice,
    exhaustive: bool,
    seed: u64,
    samples: u64,
) -> anyhow::Result<ExitCode> {
    let table = make_table(p, cli.allow_large)?;
    let set = optimal_set(&table)?;
    let report = match kind {
        PerturbChoice::Add => perturb_add(&set),
        PerturbChoice::Remove => perturb_remove(&set),
        PerturbChoice::Swap => {
            let scope = if exhaustive {
                SwapScope::All
            } else {
                SwapScope::Sample(samples)
            };
            perturb_swap(&set, scope, seed)
        }
    };
    if cli.json {
        let value = serde_json::json!({
            "p": p,
            "kind": report.kind.name(),
            "base_delta": report.base_delta,
            "trials": report.trials,
            "min_delta_seen": report.min_delta_seen,
            "all_exceed_base": report.all_exceed_base,
            "worst_case": format_set(&report.worst_case),
        });
        writeln!(sink, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        writeln!(sink, "perturbation  = {}", report.kind.name())?;
        writeln!(sink, "base delta    = {:.9}", report.base_delta)?;
        writeln!(sink, "trials        = {}", report.trials)?;
        writeln!(sink, "min delta     = {:.9}", report.min_delta_seen)?;
        writeln!(sink, "all exceed    = {}", report.all_exceed_base)?;
    }
    if report.all_exceed_base {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("claim failed: a perturbation did not increase the growth ratio");
        Ok(ExitCode::from(1))
    }
}

fn cmd_catalog(cli: &Cli, sink: &mut dyn Write, p: u32) -> anyhow::Result<ExitCode> {
    let table = make_table(p, cli.allow_large)?;
    let mut rows = Vec::new();
    for kind in realizable_kinds(p) {
        match build_subgroup(kind, &table) {
            Ok(h) => rows.push((kind.name(), h.order(), true)),
            Err(sl2_growth::Error::SearchExhausted(_)) => {
                rows.push((kind.name(), kind.order(p), false))
            }
            Err(e) => return Err(e.into()),
        }
    }
    if cli.json {
        let value: Vec<serde_json::Value> = rows
            .iter()
            .map(|(name, order, built)| {
                serde_json::json!({"kind": name, "order": order, "built": built})
            })
            .collect();
        writeln!(sink, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        writeln!(sink, "{:<22} {:>8}  built", "kind", "order")?;
        for (name, order, built) in rows {
            writeln!(sink, "{name:<22} {order:>8}  {built}")?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_all(
    cli: &Cli,
    sink: &mut dyn Write,
    include_search: bool,
    exhaustive_swap: bool,
) -> anyhow::Result<ExitCode> {
    let opts = VerifyOptions {
        include_search,
        exhaustive_swap,
        workers: cli.workers,
    };
    let results = run_all(&opts);
    let all_passed = results.iter().all(|r| r.passed);
    if cli.json {
        let rows: Vec<serde_json::Value> = results
            .iter()
            .map(|r| {
                serde_json::json!({
                    "id": r.id,
                    "name": r.name,
                    "passed": r.passed,
                    "skipped": r.skipped,
                    "details": r.details,
                })
            })
            .collect();
        let timing: serde_json::Map<String, serde_json::Value> = results
            .iter()
            .map(|r| (r.id.to_string(), serde_json::json!(r.seconds)))
            .collect();
        let value = serde_json::json!({ "results": rows, "timing": timing });
        writeln!(sink, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        for r in &results {
            let verdict = if r.skipped {
                "skip"
            } else if r.passed {
                "pass"
            } else {
                "FAIL"
            };
            writeln!(sink, "[{verdict}] {}  {}", r.id, r.name)?;
            for line in &r.details {
                writeln!(sink, "       {line}")?;
            }
        }
    }
    if all_passed {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verification failed");
        Ok(ExitCode::from(1))
    }
}
