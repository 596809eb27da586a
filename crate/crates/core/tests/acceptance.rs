//! The twelve acceptance criteria, each at its stated tolerance and time budget.
//! Prints one `PASS`/`FAIL` line per criterion and exits nonzero if any failed.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weylkit::deform::{family_equivariance, tau_convergence, DeformationFamily};
use weylkit::harness::checks::core::clifford_intertwining_residual;
use weylkit::harness::checks::deform::{cells, e0_chern_defect, e0_projection_residual, tau_grid};
use weylkit::harness::checks::projectors::{field_projection_residual, sphere_points};
use weylkit::harness::checks::quantize::{
    determinant_action_residual, homomorphism_residual, kernel_summary,
    oscillator_spectrum_residual, vacuum_projection_residual,
};
use weylkit::harness::checks::symbols::{
    a_square_symbol_residual, mehler_semigroup_residual, vacuum_idempotent_failures, EXACT_LAMBDAS,
};
use weylkit::harness::checks::toeplitz::index_defect;
use weylkit::harness::toeplitz::{composite_symbols, equivariant_toeplitz_demo, monomial_symbol};
use weylkit::harness::{run_suite, SuiteConfig, IN_SCOPE_ANCHORS};
use weylkit::projectors::{
    bott_projector, chern_integral, equivariance_check, pullback_residual, sphere_projector,
};
use weylkit::quantize::HermiteBasisSpec;
use weylkit::sampling::{random_real_vec, random_sphere_point, random_unitary};
use weylkit::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + tag)
}

fn c1_exact_vacuum() -> Result<Outcome> {
    let failures = vacuum_idempotent_failures(&EXACT_LAMBDAS, &[1, 2, 3])?;
    Ok(outcome(failures == 0.0, format!("failing cells = {failures}")))
}

fn c2_mehler() -> Result<Outcome> {
    let taus = [0.1, 0.5, 1.0, 2.0, 3.0];
    let lambdas = [0.25, 0.5, 1.0, 2.0, 4.0];
    let r = [1, 2].iter().try_fold(0.0_f64, |m, &n| Ok::<_, weylkit::Error>(m.max(mehler_semigroup_residual(&taus, &lambdas, n)?)))?;
    Ok(outcome(r <= 1e-14, format!("residual = {r:.3e} (tol 1e-14)")))
}

fn c3_a_square() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        for lambda in [0.5, 1.0, 2.0] {
            worst = worst.max(a_square_symbol_residual(n, lambda)?);
        }
    }
    Ok(outcome(worst == 0.0, format!("coefficient distance = {worst:.3e} (exact)")))
}

fn c4_homomorphism() -> Result<Outcome> {
    let mut r = rng(4);
    let mut worst: f64 = 0.0;
    for n in [1, 2] {
        worst = worst.max(homomorphism_residual(&mut r, n, 1.0, 32, 50)?);
    }
    Ok(outcome(worst <= 1e-10, format!("residual = {worst:.3e} (tol 1e-10)")))
}

fn c5_oscillator() -> Result<Outcome> {
    let mut spec: f64 = 0.0;
    let mut vac: f64 = 0.0;
    for n in [1, 2] {
        let n_max = if n == 1 { 24 } else { 10 };
        spec = spec.max(oscillator_spectrum_residual(n, 1.0, n_max)?);
        vac = vac.max(vacuum_projection_residual(n, 1.0, n_max)?);
    }
    Ok(outcome(
        spec <= 1e-10 && vac <= 1e-10,
        format!("spectrum = {spec:.3e}, vacuum projection = {vac:.3e} (tol 1e-10)"),
    ))
}

fn c6_kernel_index() -> Result<Outcome> {
    let mut r = rng(6);
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, n_max) in [(1, 24), (2, 10)] {
        let k = kernel_summary(n, n_max)?;
        ok &= k.kernel == 1 && k.cokernel == 0 && k.ground_overlap >= 1.0 - 1e-8;
        let d = determinant_action_residual(&mut r, n, n_max, 20)?;
        ok &= d <= 1e-8;
        parts.push(format!(
            "n={n}: ker={} coker={} overlap={:.12} det={d:.3e}",
            k.kernel, k.cokernel, k.ground_overlap
        ));
    }
    Ok(outcome(ok, parts.join("; ")))
}

fn c7_family() -> Result<Outcome> {
    let mut idem: f64 = 0.0;
    let mut rel: f64 = 0.0;
    for cell in cells(&SuiteConfig::default()) {
        let f = cell.family()?;
        let r = f.relations()?;
        idem = idem.max(r.idempotent);
        rel = rel.max(r.ab_identity).max(r.b_intertwines_r);
        let b = f.b_operator();
        rel = rel.max(f.a.mul(&b)?.interior_residual(&b.mul(&f.a)?, weylkit::deform::RELATION_MARGIN)?);
    }
    Ok(outcome(
        idem <= 1e-8 && rel <= 1e-9,
        format!("e^2 - e = {idem:.3e} (tol 1e-8), AB = BA = R - R^2 residual = {rel:.3e} (tol 1e-9)"),
    ))
}

fn c8_tau_limit() -> Result<Outcome> {
    let t = tau_convergence(HermiteBasisSpec::new(1, 1.0, 24)?, &tau_grid())?;
    let ok = t.monotone && (-2.2..=-1.8).contains(&t.slope);
    Ok(outcome(ok, format!("monotone = {}, slope = {:.4}", t.monotone, t.slope)))
}

fn c9_bott_endpoint() -> Result<Outcome> {
    let mut r = rng(9);
    let mut proj: f64 = 0.0;
    for n in [1, 2] {
        proj = proj.max(field_projection_residual(&mut r, &bott_projector(n)?, 1000)?);
        proj = proj.max(e0_projection_residual(&mut r, n, 1000)?);
    }
    let mut pull: f64 = 0.0;
    for n in [1, 2] {
        pull = pull.max(pullback_residual(n, &sphere_points(&mut r, n, 1000))?);
    }
    let cb = chern_integral(&bott_projector(1)?, 512)?;
    let ce = chern_integral(&weylkit::deform::pointwise_family_e0(1.0, 1)?, 512)?;
    let chern = e0_chern_defect(512)?;
    Ok(outcome(
        proj <= 1e-12 && pull <= 1e-12 && chern <= 1e-3,
        format!("idempotent = {proj:.3e}, pullback = {pull:.3e}, chern(bott) = {cb:.6}, chern(e0) = {ce:.6}"),
    ))
}

fn c10_equivariance() -> Result<Outcome> {
    let mut r = rng(10);
    let mut cliff: f64 = 0.0;
    let mut conj: f64 = 0.0;
    for (n, n_max) in [(1, 24), (2, 10)] {
        cliff = cliff.max(clifford_intertwining_residual(&mut r, n, 20)?);
        let bott = bott_projector(n)?;
        let sphere = sphere_projector(n)?;
        let e0 = weylkit::deform::pointwise_family_e0(1.0, n)?;
        let fam = DeformationFamily::new(1.0, HermiteBasisSpec::new(n, 1.0, n_max)?)?;
        for _ in 0..20 {
            let u = random_unitary(&mut r, n);
            let plane: Vec<Vec<f64>> = (0..10).map(|_| random_real_vec(&mut r, 2 * n)).collect();
            let sp: Vec<Vec<f64>> = (0..10).map(|_| random_sphere_point(&mut r, 2 * n + 1)).collect();
            conj = conj
                .max(equivariance_check(&bott, &u, &plane)?)
                .max(equivariance_check(&e0, &u, &plane)?)
                .max(equivariance_check(&sphere, &u, &sp)?)
                .max(family_equivariance(&fam, &u, 2)?);
        }
    }
    Ok(outcome(
        cliff <= 1e-8 && conj <= 1e-8,
        format!("clifford = {cliff:.3e}, conjugation = {conj:.3e} (tol 1e-8)"),
    ))
}

fn c11_toeplitz() -> Result<Outcome> {
    let n = 256;
    let mut defect = 0.0;
    for k in -3..=3 {
        defect += index_defect(&monomial_symbol(k), n)?;
    }
    for (_, f) in composite_symbols() {
        defect += index_defect(&f, n)?;
    }
    let mut weights_ok = true;
    for k in [0, 1, 3] {
        weights_ok &= equivariant_toeplitz_demo(k, 16, n)?.pass;
    }
    Ok(outcome(
        defect == 0.0 && weights_ok,
        format!("index + winding mismatches = {defect}, weight multisets match = {weights_ok}"),
    ))
}

fn c12_determinism() -> Result<Outcome> {
    let cfg = SuiteConfig::default();
    let a = run_suite(&cfg)?.to_json_string()?;
    let b = run_suite(&cfg)?.to_json_string()?;
    let report = weylkit::harness::Report::from_json_str(&a)?;
    let anchors: BTreeSet<String> = report.anchors().into_iter().collect();
    let expected: BTreeSet<String> = IN_SCOPE_ANCHORS.iter().map(|s| s.to_string()).collect();
    let ok = a == b && anchors == expected && report.all_passed();
    Ok(outcome(
        ok,
        format!(
            "identical = {}, anchors = {}/{}, checks passed = {}/{}",
            a == b,
            anchors.intersection(&expected).count(),
            expected.len(),
            report.summary.passed,
            report.summary.total
        ),
    ))
}

type Criterion = (&'static str, Duration, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1 exact vacuum idempotent", Duration::from_secs(1), c1_exact_vacuum),
        ("2 mehler semigroup", Duration::from_secs(1), c2_mehler),
        ("3 A#A symbol identity", Duration::from_secs(5), c3_a_square),
        ("4 quantization homomorphism", Duration::from_secs(30), c4_homomorphism),
        ("5 oscillator spectrum", Duration::from_secs(5), c5_oscillator),
        ("6 kernel and determinant action", Duration::from_secs(30), c6_kernel_index),
        ("7 idempotent family relations", Duration::from_secs(120), c7_family),
        ("8 tau limit", Duration::from_secs(60), c8_tau_limit),
        ("9 bott endpoint", Duration::from_secs(60), c9_bott_endpoint),
        ("10 equivariance", Duration::from_secs(30), c10_equivariance),
        ("11 toeplitz index", Duration::from_secs(30), c11_toeplitz),
        ("12 determinism and coverage", Duration::from_secs(300), c12_determinism),
    ];
    let mut failed = Vec::new();
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (pass, detail) = match result {
            Ok(o) => (o.pass && elapsed <= budget, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "{} criterion {name}: {detail} [{:.2}s / {}s]",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if !pass {
            failed.push(name);
        }
    }
    if failed.is_empty() {
        println!("acceptance: 12/12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
