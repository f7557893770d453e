//! Batch interface: build regions, count tilings exactly, evaluate the
//! closed-form products, and run verification sweeps.

mod spec_parse;
mod svg;
mod sweep;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use lozenge_core::counting::{count_symmetric_tilings, counter_by_name, enumerate_tilings};
use lozenge_core::geometry::Orient;
use lozenge_core::report::VerificationReport;
use spec_parse::parse_region_spec;
use std::io::Write;
use std::process::ExitCode;
use sweep::{family_is_asserted, run_family, SweepOptions};

#[derive(Parser)]
#[command(
    name = "lozenge",
    version,
    about = "Exact lozenge-tiling workbench for fern-cored hexagonal regions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a region and write its canonical JSON description (and
    /// optionally an SVG rendering)
    Build(BuildArgs),
    /// Count the tilings of a region exactly
    Count(CountArgs),
    /// Run a verification sweep over a family of identities
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// region spec, e.g. fc:x=2,y=6,z=4,a=1,2,6,3
    spec: String,
    /// write the JSON description here (default: stdout)
    #[arg(long)]
    json: Option<std::path::PathBuf>,
    /// write an SVG rendering here
    #[arg(long)]
    svg: Option<std::path::PathBuf>,
    /// render the N-th tiling (0-based, enumeration order) into the SVG
    #[arg(long)]
    tiling: Option<usize>,
}

#[derive(Args)]
struct CountArgs {
    /// region spec, e.g. hex:x=2,y=2,z=2
    spec: String,
    /// count only centrally symmetric tilings
    #[arg(long)]
    symmetric: bool,
    /// counting kernel to use
    #[arg(long, default_value = "elimination")]
    algorithm: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// family: macmahon | semihex | trapezoid | cross | theorem1 |
    /// theorem2 | conjecture1 | conjecture2 | kuo | recurrence | basecase
    family: String,
    /// inclusive range like 0..4 for the x parameter
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    #[arg(long)]
    z: Option<String>,
    /// family-specific size bound (hexagon side, base length, ...)
    #[arg(long)]
    max: Option<i64>,
    #[arg(long)]
    lobes_sum_max: Option<i64>,
    #[arg(long)]
    gaps_max: Option<i64>,
    /// per-instance cell budget; larger instances are recorded as skipped
    #[arg(long)]
    budget: Option<usize>,
    /// worker pool size
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// report output path
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// report format
    #[arg(long, default_value = "json")]
    format: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Count(args) => cmd_count(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn cmd_build(args: BuildArgs) -> Result<ExitCode> {
    let spec = parse_region_spec(&args.spec)?;
    let region = spec.build().map_err(|e| anyhow!("{e}"))?;
    let sides = spec.hexagon_sides();
    let cells: Vec<serde_json::Value> = region
        .cells
        .iter()
        .map(|t| serde_json::json!([t.p, t.q, if t.orient == Orient::Up { "u" } else { "d" }]))
        .collect();
    let doc = serde_json::json!({
        "schema": 1,
        "spec": args.spec,
        "sides": sides.map(|s| s.to_vec()),
        "center": region.center.map(|c| [c.cp2, c.cq2]),
        "up_cells": region.up_count(),
        "down_cells": region.down_count(),
        "cells": cells,
    });
    let text = serde_json::to_string_pretty(&doc)? + "\n";
    match &args.json {
        Some(path) => std::fs::write(path, &text).context("writing JSON")?,
        None => print!("{text}"),
    }
    if let Some(path) = &args.svg {
        let tiling = match args.tiling {
            Some(n) => {
                let limit = std::cmp::max(n + 1, 10_000);
                let tilings = enumerate_tilings(&region, limit).map_err(|e| anyhow!("{e}"))?;
                Some(
                    tilings
                        .into_iter()
                        .nth(n)
                        .ok_or_else(|| anyhow!("tiling index {n} out of range"))?,
                )
            }
            None => None,
        };
        std::fs::write(path, svg::render(&region, tiling.as_ref())).context("writing SVG")?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_count(args: CountArgs) -> Result<ExitCode> {
    let spec = parse_region_spec(&args.spec)?;
    let region = spec.build().map_err(|e| anyhow!("{e}"))?;
    if args.symmetric {
        match count_symmetric_tilings(&region) {
            Ok(n) => {
                println!("{n}");
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => {
                eprintln!("error: {e}");
                Ok(ExitCode::from(2))
            }
        }
    } else {
        let counter = counter_by_name(&args.algorithm).ok_or_else(|| {
            anyhow!(
                "unknown algorithm '{}'; available: {}",
                args.algorithm,
                lozenge_core::counting::counters()
                    .iter()
                    .map(|c| c.name())
                    .collect::<Vec<_>>()
                    .join(", ")
            )
        })?;
        let n = counter.count(&region).map_err(|e| anyhow!("{e}"))?;
        println!("{n}");
        Ok(ExitCode::SUCCESS)
    }
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    if let Some((a, b)) = s.split_once("..") {
        Ok((a.trim().parse()?, b.trim().parse()?))
    } else {
        let v: i64 = s.trim().parse()?;
        Ok((v, v))
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let mut opts = SweepOptions {
        jobs: args.jobs.max(1),
        max: args.max,
        lobes_sum_max: args.lobes_sum_max,
        gaps_max: args.gaps_max,
        ..SweepOptions::default()
    };
    if let Some(b) = args.budget {
        opts.budget = b;
    }
    if let Some(x) = &args.x {
        opts.x = Some(parse_range(x)?);
    }
    if let Some(y) = &args.y {
        opts.y = Some(parse_range(y)?);
    }
    if let Some(z) = &args.z {
        opts.z = Some(parse_range(z)?);
    }
    let reports = run_family(&args.family, &opts)?;

    let passed = reports.iter().filter(|r| r.pass).count();
    let skipped = reports.iter().filter(|r| r.skipped.is_some()).count();
    let failed = reports.len() - passed - skipped;
    for r in &reports {
        if let Some(reason) = &r.skipped {
            println!("SKIP {} ({reason})", r.id);
        } else if r.pass {
            println!("PASS {}", r.id);
        } else {
            println!(
                "FAIL {} lhs={} rhs={}{}",
                r.id,
                r.lhs,
                r.rhs,
                r.detail
                    .as_deref()
                    .map(|d| format!(" [{d}]"))
                    .unwrap_or_default()
            );
        }
    }
    println!(
        "{}: {} passed, {} failed, {} skipped",
        args.family, passed, failed, skipped
    );

    if let Some(path) = &args.out {
        let mut file = std::fs::File::create(path).context("creating report file")?;
        match args.format.as_str() {
            "json" => {
                let doc = serde_json::json!({
                    "schema": 1,
                    "family": args.family,
                    "passed": passed,
                    "failed": failed,
                    "skipped": skipped,
                    "instances": reports,
                });
                serde_json::to_writer_pretty(&mut file, &doc)?;
                file.write_all(b"\n")?;
            }
            "csv" => {
                writeln!(file, "{}", VerificationReport::CSV_HEADER)?;
                for r in &reports {
                    writeln!(file, "{}", r.csv_row())?;
                }
            }
            other => bail!("unknown format '{other}'"),
        }
    }

    if failed > 0 && family_is_asserted(&args.family) {
        Ok(ExitCode::FAILURE)
    } else {
        if failed > 0 {
            eprintln!(
                "note: {} counterexample candidate(s) recorded for conjecture family '{}'",
                failed, args.family
            );
        }
        Ok(ExitCode::SUCCESS)
    }
}
