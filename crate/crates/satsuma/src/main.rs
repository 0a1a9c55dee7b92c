use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use satsuma::asymptotics;
use satsuma::compare::{run_compare, run_reduce_check, selfcheck};
use satsuma::config::ExperimentConfig;
use satsuma::error::Error;
use satsuma::pde::evolve;
use satsuma::report;
use satsuma::scattering::{build_table, ScatteringTable};

#[derive(Parser)]
#[command(
    name = "satsuma",
    version,
    about = "Coupled Sasa-Satsuma laboratory: scattering, evolution, and long-time asymptotics"
)]
struct Cli {
    /// Experiment configuration (TOML)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Where outputs are written (overrides the config)
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    /// RNG seed override for randomized suites
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Proceed despite a nonzero winding count (report is tainted)
    #[arg(long, global = true)]
    allow_solitons: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the reflection row gamma(lambda) and emit scattering.csv
    Scatter,
    /// Evolve the field pair and emit snapshots plus the mass monitor
    Evolve,
    /// Evaluate the leading-order prediction at (x, t) points or along a ray
    Asymptote,
    /// Headline experiment: PDE truth vs the asymptotic formula along rays
    Compare,
    /// Verify the nonlocal reduction constraint under evolution
    ReduceCheck,
    /// Run the invariant suite and print a pass/fail table
    Selfcheck,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(pass) => {
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e.downcast_ref::<Error>() {
                Some(Error::Config(_)) | Some(Error::Grid(_)) | Some(Error::Io(_)) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn load_config(cli: &Cli) -> anyhow::Result<ExperimentConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config is required for this subcommand".into()))?;
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(dir) = &cli.output_dir {
        cfg.output_dir = Some(dir.to_string_lossy().into_owned());
    }
    Ok(cfg)
}

fn output_dir(cfg: &ExperimentConfig) -> PathBuf {
    PathBuf::from(cfg.output_dir.clone().unwrap_or_else(|| "out".to_string()))
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Selfcheck => {
            let seed = cli.seed.unwrap_or(0);
            let results = selfcheck(seed);
            let mut all_pass = true;
            println!("{:<55} {:<6} detail", "check", "status");
            for r in &results {
                println!(
                    "{:<55} {:<6} {}",
                    r.name,
                    if r.pass { "PASS" } else { "FAIL" },
                    r.detail
                );
                all_pass &= r.pass;
            }
            Ok(all_pass)
        }
        Command::Scatter => {
            let cfg = load_config(&cli)?;
            let spec = cfg
                .scattering
                .ok_or_else(|| Error::Config("scatter requires [scattering]".into()))?;
            let grid = cfg.grid.build()?;
            let fp = cfg.field.build(grid)?;
            if let Some(amp) = fp.schwartz_violation(satsuma::grid::DEFAULT_BOUNDARY_TOL) {
                eprintln!(
                    "warning: initial data reaches {amp:.3e} at the truncation edges; \
                     Jost boundary conditions degrade"
                );
            }
            let table = build_table(&fp, spec.lambda_max, spec.m)?;
            let dir = output_dir(&cfg);
            report::ensure_dir(&dir)?;
            report::write_scattering_csv(&dir, &table)?;
            report::write_symmetry_report(&dir, &table.symmetry)?;
            report::write_meta(&dir, &cfg, "scatter")?;
            println!(
                "wrote {} lambda samples to {}; worst |det s - 1| = {:.3e}, unitarity = {:.3e}",
                table.lambdas.len(),
                dir.display(),
                table.symmetry.max_det_s_error,
                table.symmetry.max_unitarity_error
            );
            Ok(true)
        }
        Command::Evolve => {
            let cfg = load_config(&cli)?;
            let evo = cfg
                .evolution
                .clone()
                .ok_or_else(|| Error::Config("evolve requires [evolution]".into()))?;
            let grid = cfg.grid.build()?;
            let fp = cfg.field.build(grid)?;
            let (snapshots, monitor) = evolve(&fp, &evo)?;
            let dir = output_dir(&cfg);
            report::ensure_dir(&dir)?;
            for (label, snap) in evo.record_times.iter().zip(snapshots.iter()) {
                report::write_snapshot_csv(&dir, *label, snap)?;
            }
            report::write_monitor_csv(&dir, &monitor)?;
            report::write_meta(&dir, &cfg, "evolve")?;
            println!(
                "evolved to t = {} ({} snapshots); max |mass drift| = {:.3e}",
                evo.t_end,
                snapshots.len(),
                monitor.max_abs_drift()
            );
            Ok(true)
        }
        Command::Asymptote => {
            let cfg = load_config(&cli)?;
            let spec = cfg
                .asymptote
                .clone()
                .ok_or_else(|| Error::Config("asymptote requires [asymptote]".into()))?;
            let table = match &spec.table_file {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    let (lambdas, gammas) = report::parse_scattering_csv(&text)?;
                    ScatteringTable::from_gamma_rows(lambdas, gammas)?
                }
                None => {
                    let s = cfg.scattering.ok_or_else(|| {
                        Error::Config("asymptote needs [scattering] or a table_file".into())
                    })?;
                    let grid = cfg.grid.build()?;
                    let fp = cfg.field.build(grid)?;
                    build_table(&fp, s.lambda_max, s.m)?
                }
            };
            let mut points: Vec<(f64, f64)> =
                spec.points.iter().map(|p| (p[0], p[1])).collect();
            if let Some(ray) = &spec.ray {
                for &t in &ray.times {
                    points.push((-12.0 * ray.lambda0 * ray.lambda0 * t, t));
                }
            }
            if points.is_empty() {
                return Err(Error::Config(
                    "asymptote needs points or a ray specification".into(),
                )
                .into());
            }
            let mut rows = Vec::with_capacity(points.len());
            for (x, t) in points {
                rows.push(asymptotics::leading_order(x, t, &table)?);
            }
            let dir = output_dir(&cfg);
            report::ensure_dir(&dir)?;
            report::write_asymptote_csv(&dir, &rows)?;
            report::write_meta(&dir, &cfg, "asymptote")?;
            println!("evaluated {} asymptotic samples into {}", rows.len(), dir.display());
            Ok(true)
        }
        Command::Compare => {
            let cfg = load_config(&cli)?;
            let (rep, table, monitor) = run_compare(&cfg, cli.allow_solitons)?;
            let dir = output_dir(&cfg);
            report::ensure_dir(&dir)?;
            report::write_comparison_outputs(&dir, &rep)?;
            report::write_scattering_csv(&dir, &table)?;
            report::write_symmetry_report(&dir, &table.symmetry)?;
            report::write_monitor_csv(&dir, &monitor)?;
            report::write_meta(&dir, &cfg, "compare")?;
            for w in &rep.warnings {
                eprintln!("warning: {w}");
            }
            for row in &rep.rows {
                println!(
                    "lambda0 = {:.3}, t = {:>8.2}: |u_num| = {:.4e}, |u_pred| = {:.4e}, rel err = {:.3e}",
                    row.lambda0, row.t, row.u_num_abs, row.u_pred_abs, row.u_rel_err
                );
            }
            for fit in &rep.decay {
                println!(
                    "lambda0 = {:.3}: fitted decay exponent {:.4}",
                    fit.lambda0, fit.exponent_u
                );
            }
            if rep.tainted {
                eprintln!("warning: report tainted (winding = {})", rep.winding);
            }
            Ok(!rep.tainted)
        }
        Command::ReduceCheck => {
            let cfg = load_config(&cli)?;
            let outcome = run_reduce_check(&cfg)?;
            report::write_reduce_outcome(std::io::stdout().lock(), &outcome)?;
            let dir = output_dir(&cfg);
            report::ensure_dir(&dir)?;
            let file = std::fs::File::create(dir.join("reduce_check.json"))?;
            report::write_reduce_outcome(file, &outcome)?;
            report::write_meta(&dir, &cfg, "reduce-check")?;
            Ok(outcome.pass)
        }
    }
}
