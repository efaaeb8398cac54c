//! `torfilter`: lattice data, filter validation, completion, cascade
//! transforms and the obstruction filter from the command line.
//!
//! Exit codes: 0 pass, 1 checked and failed, 2 usage or data error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use torfilter::cascade::{box_samples, convergence_table, wavelet_fourier, ScalingTransform, DEFAULT_DEPTH};
use torfilter::completion::{
    align_sweep, complete_q2, SweepOptions, SweepOrder, DEFAULT_JUMP_TOL, DEFAULT_RELAX_ITERS,
};
use torfilter::filters::{
    validate_family_on, validate_low_pass_on, working_grid, FamilyReport, FilterBank, FilterScale,
    LowPassReport, DEFAULT_TOL,
};
use torfilter::io::{self, read_filter_file, read_matrix_file, LoadedFilters};
use torfilter::lattice::{validate_dilation, DilationMatrix};
use torfilter::obstruction::{
    assemble_h0, check_identities, demo_completion_failure, dilation as obstruction_dilation, DEFAULT_SAMPLES,
    DEFAULT_SHAPE, HAAR_LADDER, OBSTRUCTION_LADDER, OBSTRUCTION_RELAX_ITERS,
};
use torfilter::torus::{bracket_on, BracketKind, Grid, TorusFunction};
use torfilter::{Complex64, Error, Result};

#[derive(Parser)]
#[command(name = "torfilter", version, about = "Wavelet filter banks on the n-torus")]
struct Cli {
    #[command(flatten)]
    shared: Shared,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Shared {
    /// Sup-norm tolerance for pass/fail decisions.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Sample grid, comma separated points per axis (e.g. 16,16).
    #[arg(long, global = true, value_delimiter = ',')]
    grid: Option<Vec<usize>>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (written atomically); stdout if absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print q, coset representatives and the dual group of a dilation matrix.
    Lattice {
        file: PathBuf,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Check the low-pass conditions and, for a full bank, the family conditions.
    Validate { file: PathBuf },
    /// Complete a low-pass filter to a full bank.
    Complete {
        file: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Where to write the sweep report (stdout if absent).
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Order::Lex)]
        order: Order,
        #[arg(long, default_value_t = DEFAULT_JUMP_TOL)]
        jump_tol: f64,
        #[arg(long, default_value_t = DEFAULT_RELAX_ITERS)]
        relax_iters: usize,
    },
    /// Sample the scaling function (and wavelet) Fourier transforms on a box.
    Cascade {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        /// Box `lo,hi` applied to every axis.
        #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true, default_value = "-4,4")]
        bounds: (f64, f64),
        /// Points per axis; 512 in one dimension, 33 otherwise.
        #[arg(long)]
        res: Option<usize>,
        /// Add a column pair per high-pass filter in the file.
        #[arg(long)]
        wavelets: bool,
    },
    /// The obstruction filter: identity checks, assembly, completion demo.
    Obstruct(ObstructArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "mode")]
struct ObstructModes {
    /// Run the identity suite (`identities` is the only suite).
    #[arg(long, value_parser = ["identities"])]
    check: Option<String>,
    /// Assemble h0 on a grid and write it as a filter file.
    #[arg(long)]
    build_h0: bool,
    /// Run the completion sweep on the control and obstruction ladders.
    #[arg(long)]
    demo_failure: bool,
}

#[derive(Args)]
struct ObstructArgs {
    #[command(flatten)]
    mode: ObstructModes,
    /// Grid for --build-h0, comma separated (first axis divisible by 3).
    #[arg(long, value_delimiter = ',')]
    res: Option<Vec<usize>>,
    /// Random points for --check identities.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Skip the rotation that makes h0(0) = 1.
    #[arg(long)]
    uncalibrated: bool,
    #[arg(long, default_value_t = OBSTRUCTION_RELAX_ITERS)]
    relax_iters: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Q2,
    Sweep,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Lex,
    Reverse,
}

fn parse_box(s: &str) -> std::result::Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [lo, hi] => {
            let lo = lo.trim().parse::<f64>().map_err(|e| e.to_string())?;
            let hi = hi.trim().parse::<f64>().map_err(|e| e.to_string())?;
            Ok((lo, hi))
        }
        _ => Err(format!("expected lo,hi, got {s:?}")),
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let shared = &cli.shared;
    match &cli.command {
        Command::Lattice { file, json } => cmd_lattice(file, *json, shared),
        Command::Validate { file } => cmd_validate(file, shared),
        Command::Complete { file, method, report, order, jump_tol, relax_iters } => {
            let options = SweepOptions {
                order: match order {
                    Order::Lex => SweepOrder::Lexicographic,
                    Order::Reverse => SweepOrder::ReverseLexicographic,
                },
                jump_tol: *jump_tol,
                relax_iters: *relax_iters,
                ..SweepOptions::default()
            };
            cmd_complete(file, *method, report.as_deref(), &options, shared)
        }
        Command::Cascade { file, depth, bounds, res, wavelets } => {
            cmd_cascade(file, *depth, *bounds, *res, *wavelets, shared)
        }
        Command::Obstruct(args) => cmd_obstruct(args, shared),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => io::atomic_write(path, text.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn emit_json<T: Serialize + ?Sized>(out: Option<&Path>, value: &T) -> Result<()> {
    emit(out, &io::to_json_pretty(value)?)
}

fn tuple<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn cmd_lattice(file: &Path, as_json: bool, shared: &Shared) -> Result<Outcome> {
    let a = validate_dilation(&read_matrix_file(file)?)?;
    let reps = a.coset_representatives();
    let dual = a.dual_group();
    let dual_strings: Vec<Vec<String>> =
        dual.elements().iter().map(|w| w.iter().map(ToString::to_string).collect()).collect();
    if as_json || shared.out.is_some() {
        let value = json!({
            "dilation": a.entries().to_rows(),
            "det": a.det(),
            "q": a.q(),
            "coset_representatives": reps.as_slice(),
            "dual_group": dual_strings,
        });
        emit_json(shared.out.as_deref(), &value)?;
    }
    if !as_json {
        let mut text = format!("q = {}\n", a.q());
        let r: Vec<String> = reps.iter().map(|k| tuple(k)).collect();
        text.push_str(&format!("coset representatives: {}\n", r.join(", ")));
        let f: Vec<String> = dual.elements().iter().map(|w| tuple(w)).collect();
        text.push_str(&format!("dual group F: {{{}}}\n", f.join(", ")));
        if shared.out.is_some() {
            eprint!("{text}");
        } else {
            emit(None, &text)?;
        }
    }
    Ok(Outcome::Pass)
}

fn require_dilation(loaded: &LoadedFilters) -> Result<DilationMatrix> {
    loaded.dilation.clone().ok_or_else(|| Error::Parse("filter file has no \"dilation\"".into()))
}

fn bank_of(loaded: &LoadedFilters) -> Result<FilterBank> {
    let scale = if loaded.normalized { FilterScale::Normalized } else { FilterScale::Mask };
    FilterBank::new(require_dilation(loaded)?, loaded.filters.clone(), scale)
}

fn grid_for(shared: &Shared, filters: &[TorusFunction], a: &DilationMatrix) -> Result<Grid> {
    let dual = a.dual_group();
    match &shared.grid {
        Some(shape) => {
            let grid = Grid::new(shape.clone())?;
            grid.require_compatible(&dual)?;
            Ok(grid)
        }
        None => working_grid(filters.iter(), &dual),
    }
}

#[derive(Serialize)]
struct ValidateOutput {
    scale: FilterScale,
    q: u64,
    grid: Vec<usize>,
    low_pass: LowPassReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<FamilyReport>,
    pass: bool,
}

fn cmd_validate(file: &Path, shared: &Shared) -> Result<Outcome> {
    let loaded = read_filter_file(file)?;
    let bank = bank_of(&loaded)?;
    let a = bank.dilation();
    let grid = grid_for(shared, bank.filters(), a)?;
    let masks = bank.to_mask();
    let low_pass = validate_low_pass_on(masks.low_pass(), a, shared.tol, &grid)?;
    let family = if bank.len() > 1 { Some(validate_family_on(&bank, shared.tol, &grid)?) } else { None };
    let pass = low_pass.pass() && family.as_ref().is_none_or(FamilyReport::pass);
    let output = ValidateOutput {
        scale: bank.scale(),
        q: a.q(),
        grid: grid.shape().to_vec(),
        low_pass,
        family,
        pass,
    };
    emit_json(shared.out.as_deref(), &output)?;
    Ok(if pass { Outcome::Pass } else { Outcome::Fail })
}

fn cmd_complete(
    file: &Path,
    method: Method,
    report: Option<&Path>,
    options: &SweepOptions,
    shared: &Shared,
) -> Result<Outcome> {
    let loaded = read_filter_file(file)?;
    let input = bank_of(&loaded)?;
    let a = input.dilation().clone();
    let h0 = input.normalized().low_pass().clone();
    let write_bank = |bank: &FilterBank| -> Result<()> {
        let bank = if loaded.normalized { bank.normalized() } else { bank.to_mask() };
        let text = io::filter_file_json(Some(&a), loaded.normalized, bank.filters())?;
        emit(shared.out.as_deref(), &text)
    };
    match method {
        Method::Q2 => {
            if a.q() != 2 {
                return Err(Error::NotQ2(a.q()));
            }
            let h1 = complete_q2(&h0, &a)?;
            let bank = FilterBank::new(a.clone(), vec![h0, h1], FilterScale::Normalized)?;
            let grid = grid_for(shared, bank.filters(), &a)?;
            let check = validate_family_on(&bank, shared.tol, &grid)?;
            eprintln!("gram residual {:e} on grid {:?}", check.residual(), grid.shape());
            write_bank(&bank)?;
            Ok(if check.pass() { Outcome::Pass } else { Outcome::Fail })
        }
        Method::Sweep => {
            let grid = match &shared.grid {
                Some(shape) => Grid::new(shape.clone())?,
                None => working_grid([&h0], &a.dual_group())?,
            };
            let outcome = align_sweep(&h0, &a, &grid, options)?;
            let value = json!({
                "closed": outcome.report.closed,
                "max_jump": outcome.report.max_jump,
                "location": outcome.report.location,
                "grid": outcome.report.grid,
                "sweep": outcome.report.sweep,
                "jump_tol": options.jump_tol,
                "reference_jump": outcome.reference_jump,
                "covariance_residual": outcome.covariance_residual,
                "gram_residual": outcome.gram_residual,
                "relax_passes": outcome.relax_passes,
            });
            let closed = outcome.is_closed();
            if closed && shared.out.is_some() {
                write_bank(&outcome.bank)?;
            }
            match (report, &shared.out) {
                (Some(path), _) => emit_json(Some(path), &value)?,
                (None, None) => emit_json(None, &value)?,
                (None, Some(_)) => eprint!("{}", io::to_json_pretty(&value)?),
            }
            Ok(if closed { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn cmd_cascade(
    file: &Path,
    depth: usize,
    (lo, hi): (f64, f64),
    res: Option<usize>,
    wavelets: bool,
    shared: &Shared,
) -> Result<Outcome> {
    if depth == 0 {
        return Err(Error::BadDepth);
    }
    let loaded = read_filter_file(file)?;
    let masks = bank_of(&loaded)?.to_mask();
    let a = masks.dilation().clone();
    let n = a.dim();
    let transform = ScalingTransform::new(masks.low_pass(), &a, depth)?;
    let res = res.unwrap_or(if n == 1 { 512 } else { 33 });
    let points = box_samples(n, lo, hi, res)?;
    let high: &[TorusFunction] = if wavelets { &masks.filters()[1..] } else { &[] };

    let rows = points
        .par_iter()
        .map(|x| {
            let mut row = x.clone();
            let phi = transform.evaluate(x)?;
            row.extend([phi.re, phi.im]);
            for m in high {
                let psi: Complex64 = wavelet_fourier(m, &a, &transform, x)?;
                row.extend([psi.re, psi.im]);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut header: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    header.extend(["phi_re".into(), "phi_im".into()]);
    for i in 1..=high.len() {
        header.extend([format!("psi{i}_re"), format!("psi{i}_im")]);
    }
    emit(shared.out.as_deref(), &io::csv_string(&header, &rows))?;

    let depths: Vec<usize> = [depth / 4, depth / 2, depth].into_iter().filter(|&d| d > 0).collect();
    eprintln!("depth,max_change");
    for row in convergence_table(&transform, &points, &depths)? {
        eprintln!("{},{:e}", row.depth, row.max_change);
    }
    Ok(Outcome::Pass)
}

fn cmd_obstruct(args: &ObstructArgs, shared: &Shared) -> Result<Outcome> {
    let out = shared.out.as_deref();
    if args.mode.check.is_some() {
        let report = check_identities(args.samples, shared.seed)?;
        emit_json(out, &report)?;
        return Ok(if report.pass() { Outcome::Pass } else { Outcome::Fail });
    }
    if args.mode.build_h0 {
        let shape = args.res.clone().unwrap_or_else(|| DEFAULT_SHAPE.to_vec());
        let h0 = assemble_h0(&shape, !args.uncalibrated)?;
        let a = obstruction_dilation();
        let grid = Grid::new(shape)?;
        let b = bracket_on(&h0, &h0, &a.dual_group(), BracketKind::Primed, &grid)?;
        let residual = b.values_on(&grid)?.iter().map(|v| (v - 1.0).norm()).fold(0.0, f64::max);
        let at_zero = h0.values_on(&grid)?[0];
        emit(out, &io::filter_file_json(Some(&a), true, &[h0])?)?;
        eprintln!(
            "{}",
            json!({"grid": grid.shape(), "bracket_residual": residual, "h0_at_zero": [at_zero.re, at_zero.im]})
        );
        return Ok(if residual < 1e-9 { Outcome::Pass } else { Outcome::Fail });
    }
    let options = SweepOptions { relax_iters: args.relax_iters, ..SweepOptions::default() };
    let ladders: Vec<Vec<usize>> = OBSTRUCTION_LADDER.iter().map(|r| r.to_vec()).collect();
    let reports = demo_completion_failure(&HAAR_LADDER, &ladders, &options)?;
    emit_json(out, &reports)?;
    let control = &reports[0].max_jumps;
    let decreasing = control.windows(2).all(|w| w[1] < w[0]);
    let stuck = reports[1].max_jumps.iter().all(|&j| j > options.jump_tol);
    Ok(if decreasing && stuck { Outcome::Pass } else { Outcome::Fail })
}
