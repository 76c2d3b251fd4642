//! One pass/fail line per acceptance criterion, at pinned tolerances.
//!
//! Runs the default suite twice at seed 42; the first run feeds the suite
//! criteria and the second is compared byte for byte with it.

use std::process::ExitCode;
use std::time::Instant;

use peircelab::harness::{default_suite, run_suite, PropertyReport, VerificationReport};

const SEED: u64 = 42;

/// `(property, trials per model and dimension, tolerance)`.
type Requirement = (&'static str, usize, f64);

fn criterion(report: &VerificationReport, label: &str, reqs: &[Requirement]) -> bool {
    let mut ok = true;
    let mut detail = Vec::new();
    for &(name, trials, tol) in reqs {
        let Some(p) = report.property(name) else {
            ok = false;
            detail.push(format!("{name} missing"));
            continue;
        };
        let per_cell = p.trials / (p.models.len() * p.dims.len()).max(1);
        let good = p.passed() && per_cell >= trials && p.tol <= tol && p.worst_residual <= tol;
        ok &= good;
        detail.push(summary(p, per_cell, tol, good));
    }
    println!(
        "{} {label}: {}",
        if ok { "PASS" } else { "FAIL" },
        detail.join("; ")
    );
    ok
}

fn summary(p: &PropertyReport, per_cell: usize, tol: f64, good: bool) -> String {
    let mut s = format!(
        "{} {}/{} ok, {per_cell} per model/dim, worst {:.1e} <= {tol:.0e}",
        p.name,
        p.trials - p.failures,
        p.trials,
        p.worst_residual
    );
    if !good {
        if let Some(f) = &p.first_failure {
            s.push_str(&format!(
                " (first failure {} dim {} trial {} sub-seed {})",
                f.model, f.dim, f.trial, f.sub_seed
            ));
        }
    }
    s
}

fn main() -> ExitCode {
    let config = default_suite(SEED);
    let start = Instant::now();
    let first = run_suite(&config).expect("default suite runs");
    let wall = start.elapsed().as_secs_f64();
    let second = run_suite(&config).expect("default suite runs");

    let criteria: [(&str, &[Requirement]); 6] = [
        (
            "identity suite",
            &[
                ("jordan-identity", 200, 1e-9),
                ("fundamental-identity", 200, 1e-9),
                ("ternary-identity", 200, 1e-9),
                ("power-identities", 200, 1e-9),
            ],
        ),
        (
            "peirce suite",
            &[
                ("peirce-projections", 200, 1e-9),
                ("peirce-rules", 200, 1e-9),
                ("peirce2-algebra-axioms", 200, 1e-9),
            ],
        ),
        (
            "polar isometries and witnesses",
            &[
                ("polar-isometry-characterization", 100, 1e-9),
                ("weakly-rickart-witness", 100, 1e-9),
                ("finite-reversed-witness", 100, 1e-9),
            ],
        ),
        (
            "positive elements, range projections and approximation",
            &[
                ("positive-commuting-equivalences", 200, 1e-9),
                ("positive-annihilator-equivalence", 100, 1e-9),
                ("range-projection-minimality", 100, 1e-9),
                ("range-projection-operator-commutation", 100, 1e-9),
                ("projection-approximation", 100, 1e-9),
            ],
        ),
        (
            "range tripotents and automorphisms",
            &[
                ("wor-range-tripotent-uniqueness", 100, 1e-8),
                ("wor-range-tripotent-projection", 100, 1e-9),
                ("peirce-automorphisms", 100, 1e-9),
                ("peirce2-rickart-inheritance", 100, 1e-9),
            ],
        ),
        (
            "regular elements and approximation",
            &[
                ("generalized-inverse", 100, 1e-9),
                ("regular-range-tripotent", 100, 1e-9),
                ("regular-approximation", 100, 1e-10),
                ("inner-ideal-density", 100, 1e-8),
                ("inner-ideal-closure", 100, 1e-8),
            ],
        ),
    ];

    let mut ok = true;
    for (label, reqs) in criteria {
        ok &= criterion(&first, label, reqs);
    }
    let identical = first.to_json() == second.to_json();
    println!(
        "{} determinism: two seed {SEED} runs of the default suite give {} reports",
        if identical { "PASS" } else { "FAIL" },
        if identical {
            "byte-identical"
        } else {
            "different"
        }
    );
    ok &= identical;
    println!(
        "INFO default suite: {} properties, pass={}, {wall:.1}s wall",
        first.properties.len(),
        first.pass
    );
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
