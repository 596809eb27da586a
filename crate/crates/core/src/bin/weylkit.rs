use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use weylkit::deform::pointwise_family_e0;
use weylkit::harness::toeplitz::{composite_symbols, monomial_symbol};
use weylkit::harness::{
    equivariant_toeplitz_demo, run_suite, toeplitz_index, winding, write_outputs, Suite,
    SuiteConfig,
};
use weylkit::projectors::{bott_projector, inverse_stereographic, sphere_projector};
use weylkit::Error;

#[derive(Parser)]
#[command(name = "weylkit", version, about = "Deformation quantization verification toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and emit a JSON report.
    Verify(VerifyArgs),
    /// Run a demonstration.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
    /// Export data as CSV.
    Export {
        #[command(subcommand)]
        what: Export,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Suite to run (repeatable): core, symbols, quantize, projectors, deform, toeplitz, all.
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Hermite truncation for n = 1.
    #[arg(long)]
    nmax: Option<usize>,
    /// Tolerance override `check_id=value` (repeatable).
    #[arg(long = "tol")]
    tols: Vec<String>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Only print the summary line.
    #[arg(long)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Demo {
    /// Toeplitz index against winding number on the circle.
    Toeplitz {
        #[arg(long, default_value_t = 256)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldKind {
    Bott,
    Sphere,
    E0,
}

#[derive(Subcommand)]
enum Export {
    /// Values of a projection field on a square grid of the plane.
    Field {
        #[arg(long, value_enum, default_value_t = FieldKind::Bott)]
        field: FieldKind,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        /// Half-width of the grid in each of the first two coordinates.
        #[arg(long, default_value_t = 3.0)]
        extent: f64,
        #[arg(long, default_value_t = 21)]
        points: usize,
        /// Output file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn config_from(args: &VerifyArgs) -> Result<SuiteConfig, Error> {
    let mut cfg = match &args.config {
        Some(p) => SuiteConfig::from_file(p)?,
        None => SuiteConfig::default(),
    };
    if !args.suites.is_empty() {
        cfg.suites = args.suites.iter().map(|s| Suite::parse(s)).collect::<Result<_, _>>()?;
    }
    if let Some(n) = args.nmax {
        cfg.n_max = n;
    }
    for t in &args.tols {
        cfg.set_tolerance(t)?;
    }
    if let Some(p) = &args.report {
        cfg.report = Some(p.display().to_string());
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    cfg.jobs = args.jobs;
    cfg.validate()?;
    Ok(cfg)
}

fn verify(args: VerifyArgs) -> ExitCode {
    let cfg = match config_from(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e @ Error::Config(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if !args.quiet {
        for c in &report.checks {
            let metric = c.metric.map_or_else(|| "-".to_string(), |m| format!("{m:.3e}"));
            let status = if c.pass { "PASS" } else { "FAIL" };
            println!("{status} {:<45} metric={metric:<10} tol={:.1e}", c.id, c.tol);
            if let Some(e) = &c.error {
                println!("     {e}");
            }
        }
    }
    println!("{}/{} checks passed", report.summary.passed, report.summary.total);
    if let Some(p) = &cfg.report {
        match write_outputs(&report, std::path::Path::new(p)) {
            Ok(files) => {
                for f in files {
                    eprintln!("wrote {}", f.display());
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn demo_toeplitz(n: usize) -> Result<bool, Error> {
    let mut ok = true;
    let mut symbols: Vec<(String, _)> = (-3..=3).map(|k| (format!("e^{{{k}i t}}"), monomial_symbol(k))).collect();
    symbols.extend(composite_symbols());
    println!("{:<28} {:>8} {:>8}", "symbol", "index", "winding");
    for (name, f) in &symbols {
        let idx = toeplitz_index(f, n)?;
        let w = winding(f, n)?;
        ok &= idx == -w;
        println!("{name:<28} {idx:>8} {w:>8}");
    }
    for k in [0, 1, 3] {
        let r = equivariant_toeplitz_demo(k, 8, n)?;
        ok &= r.pass;
        println!("{}", serde_json::to_string(&r).map_err(|e| Error::Io(e.to_string()))?);
    }
    Ok(ok)
}

fn export_field(kind: FieldKind, n: usize, tau: f64, extent: f64, points: usize, out: Option<PathBuf>) -> Result<(), Error> {
    if points < 2 {
        return Err(Error::InvalidArgument("need at least two grid points".into()));
    }
    let field = match kind {
        FieldKind::Bott => bott_projector(n)?,
        FieldKind::Sphere => sphere_projector(n)?,
        FieldKind::E0 => pointwise_family_e0(tau, n)?,
    };
    let step = 2.0 * extent / (points - 1) as f64;
    let mut grid = Vec::with_capacity(points * points);
    for i in 0..points {
        for j in 0..points {
            let mut w = vec![0.0; 2 * n];
            w[0] = -extent + step * i as f64;
            w[n] = -extent + step * j as f64;
            grid.push(match kind {
                FieldKind::Sphere => inverse_stereographic(&w),
                _ => w,
            });
        }
    }
    match out {
        Some(p) => field.export_csv(&grid, std::fs::File::create(p)?),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            field.export_csv(&grid, &mut lock)?;
            lock.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Demo { which: Demo::Toeplitz { n } } => match demo_toeplitz(n) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Export { what: Export::Field { field, n, tau, extent, points, out } } => {
            match export_field(field, n, tau, extent, points, out) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
    }
}
