//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Tolerances and bounds are pinned here; a failure prints the obstruction.

use std::time::{Duration, Instant};

use eightvertex::report::VerificationReport;
use eightvertex::suite::{self, SuiteConfig};

fn conclude(id: &str, report: &VerificationReport, budget: Option<Duration>, elapsed: Duration) {
    let ok = report.all_passed() && budget.map_or(true, |b| elapsed <= b);
    println!(
        "ACCEPTANCE {}: {} ({} checks, {:.1?}{})",
        id,
        if ok { "PASS" } else { "FAIL" },
        report.checks.len(),
        elapsed,
        budget
            .map(|b| format!(", budget {:.0?}", b))
            .unwrap_or_default()
    );
    if !report.all_passed() {
        print!("{}", report.render_text());
    }
    assert!(
        report.all_passed(),
        "checks failed:\n{}",
        report.render_text()
    );
    if let Some(b) = budget {
        assert!(
            elapsed <= b,
            "runtime {:?} exceeded budget {:?}",
            elapsed,
            b
        );
    }
}

#[test]
fn criterion_1_golden_corpus() {
    let t0 = Instant::now();
    let report = suite::verify_golden_suite();
    conclude(
        "1 (golden corpus, bit-exact)",
        &report,
        Some(Duration::from_secs(10)),
        t0.elapsed(),
    );
}

#[test]
fn criterion_2_tau_identities_to_20() {
    let t0 = Instant::now();
    let report = suite::verify_tau_suite(20);
    conclude(
        "2 (tau specializations, n <= 20)",
        &report,
        Some(Duration::from_secs(60)),
        t0.elapsed(),
    );
}

#[test]
fn criterion_3_positivity_integrality_degrees_to_20() {
    let t0 = Instant::now();
    let report = suite::verify_conjecture_a(20);
    conclude(
        "3 (coefficient positivity/integrality/degree bounds, n <= 20)",
        &report,
        Some(Duration::from_secs(600)),
        t0.elapsed(),
    );
}

#[test]
fn criterion_4_tq_and_wronskian_to_8() {
    let t0 = Instant::now();
    let report = suite::verify_tq_suite(8, 6);
    conclude(
        "4 (TQ relation and Wronskian family, n <= 8)",
        &report,
        Some(Duration::from_secs(600)),
        t0.elapsed(),
    );
}

#[test]
fn criterion_5_eigenvector_conjectures_to_13() {
    let t0 = Instant::now();
    let report = suite::verify_eigen_suite(&[3, 5, 7, 9, 11, 13]);
    conclude(
        "5 (eigenvector conjectures, N <= 13)",
        &report,
        Some(Duration::from_secs(1800)),
        t0.elapsed(),
    );
}

#[test]
fn criterion_6_asm_anchor() {
    let t0 = Instant::now();
    let report = suite::verify_special_values(3, 9);
    conclude(
        "6+7 (ASM anchor n <= 9, product formulas n <= 3)",
        &report,
        None,
        t0.elapsed(),
    );
}

#[test]
fn criterion_7_product_formulas_standalone() {
    // the q-side leading coefficient and p(1/3) formulas, exact rationals
    let t0 = Instant::now();
    let report = suite::verify_special_values(3, 4);
    conclude("7 (product formulas, n <= 3)", &report, None, t0.elapsed());
}

#[test]
fn criterion_8_sos_appendix() {
    let t0 = Instant::now();
    let report = suite::verify_sos_suite(10, &[0, 2, 4]);
    conclude(
        "8 (solid-on-solid recurrence, kernels, bridge)",
        &report,
        Some(Duration::from_secs(600)),
        t0.elapsed(),
    );
}

#[test]
fn criterion_9_numeric_bridge() {
    let t0 = Instant::now();
    let cfg = SuiteConfig::default();
    let report = suite::verify_numeric_suite(&cfg);
    conclude(
        "9 (floating-point bridge)",
        &report,
        Some(Duration::from_secs(120)),
        t0.elapsed(),
    );
}

#[test]
fn float_spectrum_invariant() {
    // ground energy -N/2 in the float sector spectrum at random zeta,
    // N up to 13
    let t0 = Instant::now();
    let report = suite::verify_float_spectrum(&[3, 5, 7, 9, 11, 13]);
    conclude(
        "aux (float ground energy, N <= 13)",
        &report,
        None,
        t0.elapsed(),
    );
}
