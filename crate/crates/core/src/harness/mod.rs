//! Suites, reports, the Toeplitz demo and the CLI backend.

pub mod checks;
pub mod config;
pub mod report;
pub mod toeplitz;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rayon::prelude::*;

pub use config::{Suite, SuiteConfig};
pub use report::{CheckRecord, Comparison, Report, Summary, REPORT_VERSION};
pub use toeplitz::{
    circle_szego, equivariant_toeplitz_demo, toeplitz_index, winding, EquivariantRecord,
    FourierSymbol,
};

use crate::deform::write_table_csv;
use crate::error::{Error, Result};
use checks::{CheckDef, CheckRng};

/// Every anchor a full run must reference.
pub const IN_SCOPE_ANCHORS: [&str; 22] = [
    "symplectic-structures",
    "twisted-convolution-fourier",
    "scaling-maps",
    "polynomial-weyl-algebra",
    "weyl-quantization",
    "harmonic-oscillator",
    "symbol-families",
    "bargmann-fock",
    "clifford-multiplication",
    "clifford-square",
    "idempotent-equivariance",
    "kernel-index",
    "bott-projector",
    "stereographic-pullback",
    "boundary-idempotent",
    "mehler-kernel",
    "resolvent-family",
    "parametrix-family",
    "idempotent-family",
    "tau-limit",
    "lambda-zero-endpoint",
    "toeplitz-index-circle",
];

/// FNV-1a, used to give each check its own random stream.
fn stream_id(id: &str) -> u64 {
    id.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".into()
    }
}

fn run_check(def: &CheckDef, cfg: &SuiteConfig) -> CheckRecord {
    let tol = cfg.tolerances.get(def.id).copied().unwrap_or(def.tol);
    let mut rng = CheckRng::seed_from_u64(cfg.seed ^ stream_id(def.id));
    let outcome = catch_unwind(AssertUnwindSafe(|| (def.run)(&mut rng)));
    let (metric, error) = match outcome {
        Ok(Ok(m)) if m.is_finite() => (Some(m), None),
        Ok(Ok(m)) => (None, Some(format!("non-finite metric {m}"))),
        Ok(Err(e)) => (None, Some(e.to_string())),
        Err(p) => (None, Some(format!("check panicked: {}", panic_message(p)))),
    };
    let pass = match (metric, def.comparison) {
        (Some(m), Comparison::AtMost) => m <= tol,
        (Some(m), Comparison::AtLeast) => m >= tol,
        (None, _) => false,
    };
    CheckRecord {
        id: def.id.to_string(),
        anchor: def.anchor.to_string(),
        params: def.params.clone(),
        metric,
        tol,
        comparison: def.comparison,
        pass,
        error,
    }
}

/// All check ids known to the toolkit.
pub fn check_ids(cfg: &SuiteConfig) -> Vec<&'static str> {
    checks::register(Suite::All, cfg).iter().map(|d| d.id).collect()
}

/// Runs the selected suites. Records are ordered by suite, then registration.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    cfg.validate()?;
    let known = check_ids(cfg);
    if let Some(k) = cfg.tolerances.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(Error::Config(format!("tolerance override for unknown check '{k}'")));
    }
    let defs: Vec<CheckDef> = cfg
        .selected()
        .into_iter()
        .flat_map(|s| checks::register(s, cfg))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let records = pool.install(|| defs.par_iter().map(|d| run_check(d, cfg)).collect());
    Ok(Report::new(cfg.clone(), records))
}

/// Path of a CSV side table next to the report.
pub fn side_table_path(report: &Path, name: &str) -> PathBuf {
    let stem = report.file_stem().and_then(|s| s.to_str()).unwrap_or("report");
    report.with_file_name(format!("{stem}_{name}.csv"))
}

/// Writes the JSON report and, when the deform suite ran, its CSV side tables.
pub fn write_outputs(report: &Report, path: &Path) -> Result<Vec<PathBuf>> {
    std::fs::write(path, report.to_json_string()? + "\n")?;
    let mut written = vec![path.to_path_buf()];
    if report.config.selected().contains(&Suite::Deform) {
        for (name, rows) in checks::deform::side_tables(&report.config)? {
            let p = side_table_path(path, name);
            write_table_csv(&rows, std::fs::File::create(&p)?)?;
            written.push(p);
        }
    }
    Ok(written)
}
