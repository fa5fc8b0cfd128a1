//! CSV sweeps and Monte Carlo checks over the ampcred-core library.
//!
//! Angles are taken in degrees on the command line and converted once at the
//! parse boundary; component indices in --factors are 1-based. Output files
//! are deterministic: rerunning a command reproduces them byte for byte.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use ampcred_core::{
    compose, conservation_check, default_grid, dispersion_component, dispersion_total,
    dispersion_transformed, endpoint_prob, multinomial_enumerate, prob_curve, run_calibration,
    BitBudget, EmbeddedRotation, EncodingKind, LogFactorialTable, OutcomeDistribution, PhaseVector,
    RepKind, Rotation2Params, SamplerConfig, RNG_ALGORITHM,
};

#[derive(Parser)]
#[command(
    name = "ampcred",
    version,
    about = "Exact and Monte Carlo statistics of encoded trial frequencies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bit-credibility curves of the three encodings over a p-grid
    Fig1(CurveArgs),
    /// Endpoint-hit probabilities of the amplitude arc vs the arcsine line
    Fig3(CurveArgs),
    /// N-scaled component dispersion at N=100 and N=4000 against (1-p)/4
    Fig4(Fig4Args),
    /// Dispersion split before and after a two-level rotation
    Fig5(Fig5Args),
    /// Total dispersion over a doubling ladder of trial counts
    Klevel(KlevelArgs),
    /// Compose embedded rotations and report the dispersion redistribution
    Transform(TransformArgs),
    /// Compare exact values against seeded Monte Carlo over a built-in grid
    McCheck(McCheckArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Number of interior grid points, placed at k/(points+1)
    #[arg(long, default_value_t = 199)]
    grid_points: usize,
    /// Also evaluate the degenerate endpoints p=0 and p=1
    #[arg(long)]
    include_endpoints: bool,
}

#[derive(Args)]
struct CurveArgs {
    /// Number of trials N
    #[arg(long, default_value_t = 4000)]
    trials: u64,
    /// Leading bits S that must be correct
    #[arg(long, default_value_t = 6)]
    bits: u32,
    #[command(flatten)]
    grid: GridArgs,
    /// Output CSV path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Fig4Args {
    #[command(flatten)]
    grid: GridArgs,
    /// Output CSV path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Fig5Args {
    /// Number of trials N
    #[arg(long, default_value_t = 4000)]
    trials: u64,
    /// Rotation angles tau,theta,phi in degrees
    #[arg(long, default_value = "75,50,110")]
    rotation: String,
    #[command(flatten)]
    grid: GridArgs,
    /// Output CSV path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KlevelArgs {
    /// Largest trial count of the ladder
    #[arg(long, default_value_t = 4000)]
    trials: u64,
    /// Number of outcomes K
    #[arg(long, default_value_t = 2)]
    outcomes: usize,
    /// Outcome probabilities p1,p2,... (default: uniform)
    #[arg(long)]
    dist: Option<String>,
    /// Add a column from full enumeration (small N only)
    #[arg(long)]
    oracle: bool,
    /// Output CSV path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    /// Number of trials N
    #[arg(long, default_value_t = 4000)]
    trials: u64,
    /// Number of outcomes K
    #[arg(long, default_value_t = 2)]
    outcomes: usize,
    /// Outcome probabilities p1,p2,... (default: uniform)
    #[arg(long)]
    dist: Option<String>,
    /// Component phases in degrees d1,d2,... (default: zeros)
    #[arg(long)]
    phases: Option<String>,
    /// Rotation factors i:j:tau:theta:phi;... (1-based components, degrees)
    #[arg(long, default_value = "")]
    factors: String,
    /// Output CSV path
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct McCheckArgs {
    /// Seed of the sampler
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Replications per grid cell
    #[arg(long, default_value_t = 10_000)]
    reps: u32,
}

/// 17 significant digits: doubles survive a round-trip through the CSV.
fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

fn grid_of(args: &GridArgs) -> Result<Vec<f64>> {
    if args.grid_points == 0 {
        bail!("--grid-points must be at least 1");
    }
    let mut grid = default_grid(args.grid_points);
    if args.include_endpoints {
        grid.insert(0, 0.0);
        grid.push(1.0);
    }
    Ok(grid)
}

fn write_csv(path: &Path, header: &str, rows: &[Vec<String>]) -> Result<()> {
    let file = File::create(path)
        .with_context(|| format!("cannot write output file {}", path.display()))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()?;
    Ok(())
}

fn out_path(choice: &Option<PathBuf>, default_name: &str) -> PathBuf {
    choice
        .clone()
        .unwrap_or_else(|| PathBuf::from(default_name))
}

fn parse_list(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<f64>()
                .with_context(|| format!("bad {what} entry {piece:?}"))
        })
        .collect()
}

fn parse_rotation(s: &str) -> Result<Rotation2Params> {
    let angles = parse_list(s, "rotation angle")?;
    if angles.len() != 3 {
        bail!(
            "--rotation needs tau,theta,phi (got {} values)",
            angles.len()
        );
    }
    Ok(Rotation2Params::from_degrees(
        angles[0], angles[1], angles[2],
    )?)
}

fn parse_dist(choice: &Option<String>, k: usize) -> Result<OutcomeDistribution> {
    match choice {
        None => Ok(OutcomeDistribution::uniform(k)?),
        Some(s) => {
            let probs = parse_list(s, "probability")?;
            if probs.len() != k {
                bail!("--dist has {} entries for {} outcomes", probs.len(), k);
            }
            Ok(OutcomeDistribution::new(probs)?)
        }
    }
}

fn parse_phases(choice: &Option<String>, k: usize) -> Result<PhaseVector> {
    match choice {
        None => Ok(PhaseVector::zeros(k)),
        Some(s) => {
            let degrees = parse_list(s, "phase")?;
            if degrees.len() != k {
                bail!(
                    "--phases has {} entries for {} components",
                    degrees.len(),
                    k
                );
            }
            Ok(PhaseVector::new(
                degrees.into_iter().map(f64::to_radians).collect(),
            )?)
        }
    }
}

/// Factors like "1:2:75:50:110;2:3:30:0:0": 1-based component pair, then the
/// three angles in degrees.
fn parse_factors(s: &str, k: usize) -> Result<Vec<EmbeddedRotation>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|piece| {
            let fields: Vec<&str> = piece.trim().split(':').collect();
            if fields.len() != 5 {
                bail!("factor {piece:?} needs i:j:tau:theta:phi");
            }
            let i: usize = fields[0]
                .parse()
                .with_context(|| format!("bad component index {:?}", fields[0]))?;
            let j: usize = fields[1]
                .parse()
                .with_context(|| format!("bad component index {:?}", fields[1]))?;
            if i == 0 || j == 0 {
                bail!("factor {piece:?}: component indices are 1-based");
            }
            let angles: Vec<f64> = fields[2..]
                .iter()
                .map(|a| {
                    a.parse::<f64>()
                        .with_context(|| format!("bad angle {a:?} in factor {piece:?}"))
                })
                .collect::<Result<_>>()?;
            let params = Rotation2Params::from_degrees(angles[0], angles[1], angles[2])?;
            Ok(EmbeddedRotation::new(k, i - 1, j - 1, params)?)
        })
        .collect()
}

fn run_fig1(args: &CurveArgs) -> Result<()> {
    let bits = BitBudget::new(args.bits)?;
    let grid = grid_of(&args.grid)?;
    // prob_curve wants interior points only; at p = 0 or 1 the count is
    // deterministic and every encoding reads back exactly, so those rows are 1.
    let interior: Vec<f64> = grid
        .iter()
        .copied()
        .filter(|&p| p > 0.0 && p < 1.0)
        .collect();
    let offset = usize::from(args.grid.include_endpoints);
    let curves: Vec<_> = EncodingKind::ALL
        .iter()
        .map(|&kind| prob_curve(kind, args.trials, bits, &interior))
        .collect::<ampcred_core::Result<_>>()?;
    let rows: Vec<Vec<String>> = grid
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let mut row = vec![fmt(p)];
            for curve in &curves {
                if p == 0.0 || p == 1.0 {
                    row.push(fmt(1.0));
                } else {
                    row.push(fmt(curve.values()[i - offset]));
                }
            }
            row
        })
        .collect();
    let path = out_path(&args.out, "fig1.csv");
    write_csv(&path, "p,prob_frequency,prob_amplitude,prob_arcsine", &rows)?;
    let mut summary = String::from("fig1:");
    for curve in &curves {
        let (p_min, v_min) = curve.min_point();
        let (p_max, v_max) = curve.max_point();
        write!(
            summary,
            " {} min {v_min:.6} at p={p_min:.6} max {v_max:.6} at p={p_max:.6};",
            curve.meta().kind.label()
        )?;
    }
    println!("{summary}");
    println!("fig1: wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

fn run_fig3(args: &CurveArgs) -> Result<()> {
    let bits = BitBudget::new(args.bits)?;
    let grid = grid_of(&args.grid)?;
    let values: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&p| {
            let arc = endpoint_prob(RepKind::Amplitude, args.trials, p, bits)?;
            let line = endpoint_prob(RepKind::Arcsine, args.trials, p, bits)?;
            Ok((arc, line))
        })
        .collect::<ampcred_core::Result<_>>()?;
    let rows: Vec<Vec<String>> = grid
        .iter()
        .zip(&values)
        .map(|(&p, &(arc, line))| vec![fmt(p), fmt(arc), fmt(line)])
        .collect();
    let path = out_path(&args.out, "fig3.csv");
    write_csv(&path, "p,endpoint_prob_eta,endpoint_prob_chi", &rows)?;
    let (worst_p, worst) = grid
        .iter()
        .zip(&values)
        .map(|(&p, &(arc, line))| (p, (arc - line).abs()))
        .fold(
            (0.0, 0.0),
            |acc, item| if item.1 > acc.1 { item } else { acc },
        );
    println!("fig3: max |endpoint_prob_eta - endpoint_prob_chi| = {worst:.3e} at p={worst_p:.6}");
    println!("fig3: wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

const FIG4_COARSE_N: u64 = 100;
const FIG4_FINE_N: u64 = 4000;

fn run_fig4(args: &Fig4Args) -> Result<()> {
    let grid = grid_of(&args.grid)?;
    let values: Vec<(f64, f64)> = grid
        .par_iter()
        .map(|&p| {
            (
                FIG4_COARSE_N as f64 * dispersion_component(FIG4_COARSE_N, p),
                FIG4_FINE_N as f64 * dispersion_component(FIG4_FINE_N, p),
            )
        })
        .collect();
    let rows: Vec<Vec<String>> = grid
        .iter()
        .zip(&values)
        .map(|(&p, &(coarse, fine))| vec![fmt(p), fmt(coarse), fmt(fine), fmt((1.0 - p) / 4.0)])
        .collect();
    let path = out_path(&args.out, "fig4.csv");
    write_csv(
        &path,
        "p_j,n_times_D2_at_N100,n_times_D2_at_N4000,asymptote",
        &rows,
    )?;
    let worst = grid
        .iter()
        .zip(&values)
        .filter(|(&p, _)| (0.1..=0.95).contains(&p))
        .map(|(&p, &(_, fine))| {
            let limit = (1.0 - p) / 4.0;
            (fine - limit).abs() / limit
        })
        .fold(0.0f64, f64::max);
    println!(
        "fig4: max relative gap of the N={FIG4_FINE_N} column to (1-p)/4 over p in [0.1, 0.95]: {worst:.3e}"
    );
    println!("fig4: wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

fn run_fig5(args: &Fig5Args) -> Result<()> {
    let rotation = compose(
        2,
        &[EmbeddedRotation::new(
            2,
            0,
            1,
            parse_rotation(&args.rotation)?,
        )?],
    )?;
    let grid = grid_of(&args.grid)?;
    let n = args.trials;
    let phases = PhaseVector::zeros(2);
    let reports: Vec<_> = grid
        .par_iter()
        .map(|&p| {
            let dist = OutcomeDistribution::pair(p)?;
            let before = dispersion_total(n, &dist, &phases)?;
            let after = dispersion_transformed(n, &dist, &phases, &rotation)?;
            Ok((before, after))
        })
        .collect::<ampcred_core::Result<_>>()?;
    let scale = n as f64;
    let rows: Vec<Vec<String>> = grid
        .iter()
        .zip(&reports)
        .map(|(&p, (before, after))| {
            vec![
                fmt(p),
                fmt(scale * before.per_component[0]),
                fmt(scale * before.per_component[1]),
                fmt(scale * before.total),
                fmt(scale * after.per_component[0]),
                fmt(scale * after.per_component[1]),
                fmt(scale * after.total),
            ]
        })
        .collect();
    let path = out_path(&args.out, "fig5.csv");
    write_csv(
        &path,
        "p1,D2_eta1,D2_eta2,D2_eta_total,D2_psi1,D2_psi2,D2_psi_total",
        &rows,
    )?;
    let worst = reports
        .iter()
        .map(|(before, after)| (scale * (before.total - after.total)).abs())
        .fold(0.0f64, f64::max);
    println!("fig5: max |D2_eta_total - D2_psi_total| = {worst:.3e} (N-scaled)");
    println!("fig5: wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

fn ladder(max_trials: u64) -> Result<Vec<u64>> {
    if max_trials < 8 {
        bail!("--trials must be at least 8 to form a ladder");
    }
    let mut steps = Vec::new();
    let mut n = max_trials;
    while n >= 8 {
        steps.push(n);
        n /= 2;
    }
    steps.reverse();
    Ok(steps)
}

fn enumeration_total(n: u64, dist: &OutcomeDistribution) -> Result<f64> {
    let k = dist.k();
    let table = LogFactorialTable::new(n as usize);
    let mut mean = vec![0.0f64; k];
    let mut second = vec![0.0f64; k];
    for (counts, weight) in multinomial_enumerate(&table, n, dist)? {
        for j in 0..k {
            let amp = (counts.counts()[j] as f64 / n as f64).sqrt();
            mean[j] += weight * amp;
            second[j] += weight * amp * amp;
        }
    }
    Ok((0..k).map(|j| second[j] - mean[j] * mean[j]).sum())
}

fn run_klevel(args: &KlevelArgs) -> Result<()> {
    if args.outcomes < 2 {
        bail!("--outcomes must be at least 2");
    }
    let dist = parse_dist(&args.dist, args.outcomes)?;
    let steps = ladder(args.trials)?;
    let limit = (args.outcomes as f64 - 1.0) / 4.0;
    let phases = PhaseVector::zeros(args.outcomes);
    let mut rows = Vec::new();
    let mut final_gap = 0.0;
    let mut worst_oracle_gap = 0.0f64;
    for &n in &steps {
        let scaled = n as f64 * dispersion_total(n, &dist, &phases)?.total;
        let gap = (scaled - limit) / limit;
        final_gap = gap;
        let mut row = vec![n.to_string(), fmt(scaled), fmt(limit), fmt(gap)];
        if args.oracle {
            let oracle = n as f64 * enumeration_total(n, &dist)?;
            worst_oracle_gap = worst_oracle_gap.max((oracle - scaled).abs());
            row.push(fmt(oracle));
        }
        rows.push(row);
    }
    let header = if args.oracle {
        "N,n_times_D2,asymptote,relative_gap,enumeration_n_times_D2"
    } else {
        "N,n_times_D2,asymptote,relative_gap"
    };
    let path = out_path(&args.out, "klevel.csv");
    write_csv(&path, header, &rows)?;
    println!(
        "klevel: K={}, ladder {}..{}, relative gap at the top {final_gap:.3e}",
        args.outcomes,
        steps.first().expect("ladder is nonempty"),
        steps.last().expect("ladder is nonempty"),
    );
    if args.oracle {
        println!("klevel: max |enumeration - sum| = {worst_oracle_gap:.3e} (N-scaled)");
    }
    println!("klevel: wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

fn run_transform(args: &TransformArgs) -> Result<()> {
    if args.outcomes < 2 {
        bail!("--outcomes must be at least 2");
    }
    let k = args.outcomes;
    let dist = parse_dist(&args.dist, k)?;
    let phases = parse_phases(&args.phases, k)?;
    let factors = parse_factors(&args.factors, k)?;
    let u = compose(k, &factors)?;
    println!(
        "transform: composed unitary from {} factor(s)",
        factors.len()
    );
    for r in 0..k {
        let mut line = format!("  row {}:", r + 1);
        for c in 0..k {
            let e = u.entry(r, c);
            write!(line, " {:+.6}{:+.6}i", e.re, e.im)?;
        }
        println!("{line}");
    }
    println!(
        "transform: unitarity residual {:.3e}",
        u.unitarity_residual()
    );
    let before = dispersion_total(args.trials, &dist, &phases)?;
    let after = dispersion_transformed(args.trials, &dist, &phases, &u)?;
    let check = conservation_check(args.trials, &dist, &phases, &u)?;
    let scale = args.trials as f64;
    let rows: Vec<Vec<String>> = (0..k)
        .map(|j| {
            vec![
                (j + 1).to_string(),
                fmt(scale * before.per_component[j]),
                fmt(scale * after.per_component[j]),
            ]
        })
        .collect();
    let path = out_path(&args.out, "transform.csv");
    write_csv(&path, "component,n_times_D2_before,n_times_D2_after", &rows)?;
    println!(
        "transform: N-scaled total dispersion before {:.12}, after {:.12}",
        scale * check.total_before,
        scale * check.total_after
    );
    println!(
        "transform: conservation residual {:.3e} (N-scaled {:.3e})",
        check.abs_difference,
        scale * check.abs_difference
    );
    println!("transform: wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

fn run_mc_check(args: &McCheckArgs) -> Result<()> {
    let cfg = SamplerConfig::new(args.seed, args.reps)?;
    let outcome = run_calibration(&cfg)?;
    for cell in &outcome.cells {
        let verdict = if cell.pass { "PASS" } else { "FAIL" };
        println!(
            "[{verdict}] {}: exact {:.6} mc {:.6} +/- {:.2e}",
            cell.label, cell.exact, cell.estimate.mean, cell.estimate.std_error
        );
    }
    let total = outcome.total();
    println!(
        "mc-check: {}/{} cells within 3 standard errors (seed {}, {} replications, {})",
        outcome.passed, total, args.seed, args.reps, RNG_ALGORITHM
    );
    let failed = total - outcome.passed;
    if failed * 10 > total {
        bail!("{failed}/{total} calibration cells failed");
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Fig1(args) => run_fig1(args),
        Command::Fig3(args) => run_fig3(args),
        Command::Fig4(args) => run_fig4(args),
        Command::Fig5(args) => run_fig5(args),
        Command::Klevel(args) => run_klevel(args),
        Command::Transform(args) => run_transform(args),
        Command::McCheck(args) => run_mc_check(args),
    };
    if let Err(err) = outcome {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}
