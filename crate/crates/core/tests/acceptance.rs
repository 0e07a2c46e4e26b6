//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::time::Instant;

use common::criteria::{self, Outcome};
use lilykernel::kernels::Problem;

fn report(id: usize, name: &str, out: &Outcome, started: Instant) -> bool {
    let verdict = if out.passed() { "PASS" } else { "FAIL" };
    println!(
        "criterion {id} {name}: {verdict} ({}; {:.1}s)",
        out.detail,
        started.elapsed().as_secs_f64()
    );
    for f in out.failures.iter().take(5) {
        println!("    {f}");
    }
    if out.failures.len() > 5 {
        println!("    ... {} more", out.failures.len() - 5);
    }
    out.passed()
}

fn require(out: &mut Outcome, ok: bool, msg: &str) {
    if !ok {
        out.failures.push(msg.to_string());
    }
}

fn main() {
    let mut passed = Vec::new();

    let t = Instant::now();
    let cases = criteria::suite_cases();
    let reports = criteria::run_suite(&cases);
    let mut eq = criteria::equivalence(&reports);
    let graphs = criteria::suite_graphs().len();
    require(&mut eq, graphs >= 200, "fewer than 200 suite instances");
    passed.push(report(1, "bikernel-equivalence", &eq, t));

    let t = Instant::now();
    let mut peel = Outcome::default();
    let mut parts = Vec::new();
    for problem in [
        Problem::RcDom,
        Problem::Total,
        Problem::Roman,
        Problem::Scatter,
        Problem::LambdaMu,
    ] {
        let out = criteria::peel_safety(problem);
        if out.checked < 50 {
            peel.failures.push(format!("{problem}: only {} instances", out.checked));
        }
        peel.checked += out.checked;
        peel.failures
            .extend(out.failures.iter().map(|f| format!("{problem}: {f}")));
        parts.push(format!("{problem} {}", out.detail));
    }
    peel.detail = parts.join(", ");
    passed.push(report(2, "peel-safety", &peel, t));

    let t = Instant::now();
    passed.push(report(3, "be-kernel-offsets", &criteria::offsets(&reports), t));

    let t = Instant::now();
    passed.push(report(4, "multikernel-identities", &criteria::multikernels(), t));

    let t = Instant::now();
    let mut proj = criteria::projection_kernels(256);
    let enough = proj.checked >= 200;
    require(&mut proj, enough, "fewer than 200 inputs");
    passed.push(report(5, "projection-kernel", &proj, t));

    let t = Instant::now();
    passed.push(report(6, "certified-approximation", &criteria::approximation(), t));

    let t = Instant::now();
    let (verified, available) = criteria::lilies(40);
    let mut lily = Outcome {
        checked: verified.checked + available.checked,
        detail: format!("{}; availability {}", verified.detail, available.detail),
        failures: verified.failures,
    };
    lily.failures.extend(available.failures);
    passed.push(report(7, "water-lilies", &lily, t));

    let t = Instant::now();
    let (lin, sizes) = criteria::linearity();
    passed.push(report(8, "empirical-linearity", &lin, t));
    let table: Vec<String> = sizes.iter().map(|(k, n)| format!("{k}:{n}")).collect();
    println!("    kernel sizes k:|Ĝ| {}", table.join(" "));

    let ok = passed.iter().filter(|&&p| p).count();
    println!("acceptance: {ok}/{} criteria passed", passed.len());
    if ok != passed.len() {
        std::process::exit(1);
    }
}
