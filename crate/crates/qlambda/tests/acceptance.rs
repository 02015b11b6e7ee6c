//! Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
//! A criterion may end in a documented deviation: it then prints FAIL with
//! the discrepancy and does not fail the run.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use qlambda::verify::{criterion_title, run_criterion, CheckRecord, Status, SuiteOptions};

fn property_suites() -> (bool, String) {
    use common::*;
    let cases = 128;
    let runner = || TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let seeds = || prop::collection::vec(small_coords(), 1..4);
    let results: Vec<(&str, Result<(), String>)> = vec![
        (
            "entropic",
            runner()
                .run(&(0usize..10, coords(), coords(), coords(), coords(), coords()), |(ci, p, a, b, c, d)| {
                    entropic(ci, p, a, b, c, d)
                })
                .map_err(|e| e.to_string()),
        ),
        ("idempotence", runner().run(&(0usize..10, coords(), coords()), |(ci, p, a)| idempotent(ci, p, a)).map_err(|e| e.to_string())),
        (
            "complement levels",
            runner().run(&(0usize..10, seeds(), 1usize..=2), |(ci, s, n)| complement_levels(ci, s, n)).map_err(|e| e.to_string()),
        ),
        (
            "affine equivariance",
            runner()
                .run(&(0usize..10, small_coords(), small_coords(), 0usize..=3), |(ci, a, b, n)| affine(ci, a, b, n))
                .map_err(|e| e.to_string()),
        ),
        (
            "window containment",
            runner().run(&(0usize..7, seeds(), 1usize..=2), |(ci, s, n)| window_containment(ci, s, n)).map_err(|e| e.to_string()),
        ),
        (
            "scheme identity",
            runner().run(&(1i64..=12, 0i64..12), |(m, k)| scheme_identity(m, 1 + k % m)).map_err(|e| e.to_string()),
        ),
        (
            "star basis",
            runner()
                .run(&(prop::collection::vec(-6i64..=6, 1..7), 0usize..5), |(c, e)| star_basis_roundtrip(c, e))
                .map_err(|e| e.to_string()),
        ),
        ("eta", runner().run(&(2i64..300, -20i64..=20, 0usize..16), |(d, p, q)| eta_monotone(d, p, q)).map_err(|e| e.to_string())),
        (
            "progression window",
            runner().run(&(0usize..7, coords(), coords()), |(ci, x, d)| ap_finite(ci, x, d)).map_err(|e| e.to_string()),
        ),
    ];
    let failed: Vec<String> = results.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{n}: {e}"))).collect();
    (failed.is_empty(), format!("{} suites x {cases} cases; failures: {failed:?}", results.len()))
}

fn main() -> ExitCode {
    let opts = SuiteOptions::default();
    let mut unexpected = 0;
    for n in 1..=12u32 {
        let record = run_criterion(n, &opts).unwrap_or_else(|| {
            let t = Instant::now();
            let (ok, detail) = property_suites();
            CheckRecord {
                id: format!("c{n:02}-property-suites"),
                criterion: n,
                title: criterion_title(n).unwrap(),
                status: if ok { Status::Pass } else { Status::Fail },
                detail,
                seconds: t.elapsed().as_secs_f64(),
            }
        });
        if record.status == Status::Fail {
            unexpected += 1;
        }
        println!("{}", record.line());
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
