//! Acceptance criteria A1-A9, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown.
//! Exits non-zero if a criterion fails that is not on the known list below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fivebrane_core::plethystic::{pexp, plog};
use fivebrane_core::verify::{Check, Status, Suite, Verifier, DEFAULT_FIXTURES};
use fivebrane_core::{Error, HalfInt, Monomial, Series};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Checks that fail because the statement they check is itself wrong:
/// criterion, prefix of the failing check ids, reason. Any other failure is
/// unexpected.
const KNOWN_UNATTAINABLE: &[(&str, &str, &str)] = &[
    (
        "A3",
        "kim.chi2_reduced.q4",
        "the printed y-frame q^4 coefficient of f~_2 and chi~_2 has -chi[0,1]*y where the formula gives \
         -(1 + chi[1,1])*y; the x-frame display of the same series agrees with the computed value",
    ),
    (
        "A4",
        "imamura.chi2_reduced.q3",
        "PExp of the reproduced f~_2 rows has sl(3)-scalar (1-x-x^3)/(1-x^2) at q^3; the printed +x^6 \
         needs a singlet in the cube of chi[1,0]*x^2*q, which its symmetric cube does not have",
    ),
    (
        "A5",
        "largeN.chi_reduced.",
        "chi_sugra has the y*q term of f_1, which the reduced chi~_N lacks, so chi_sugra = chi~_N mod q^(N+1) \
         fails at q^1 for every N; it holds for the full chi_N, which is checked alongside",
    ),
];

struct Outcome {
    id: &'static str,
    title: String,
    limit: Duration,
    elapsed: Duration,
    checks: Vec<Check>,
}

impl Outcome {
    fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    fn passed(&self) -> bool {
        !self.checks.is_empty() && self.failures().is_empty() && self.elapsed < self.limit
    }
}

fn timed(id: &'static str, title: impl Into<String>, limit_secs: u64, run: impl FnOnce() -> Vec<Check>) -> Outcome {
    let start = Instant::now();
    let checks = run();
    Outcome { id, title: title.into(), limit: Duration::from_secs(limit_secs), elapsed: start.elapsed(), checks }
}

fn select(verifier: &Verifier, suite: Suite, order: i32, prefixes: &[&str]) -> Vec<Check> {
    verifier.run_selected(suite, Some(HalfInt::int(order)), prefixes).checks
}

fn random_series(rng: &mut ChaCha8Rng, allow_constant: bool) -> Series {
    let n = rng.gen_range(1..=5);
    Series::from_ints((0..n).map(|_| {
        let c2 = if allow_constant && rng.gen_bool(0.3) { 0 } else { rng.gen_range(1..=12) };
        let m = Monomial::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2), c2);
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        (m, c)
    }))
}

fn has_constant_term(s: &Series) -> bool {
    s.iter().any(|(m, _)| m.c2 == 0)
}

fn plethystic_checks() -> Vec<Check> {
    const CITE: &str = "PExp is multiplicative, PLog inverts it; \"there is a nonzero constant term\"";
    let order = HalfInt::int(10);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad_add = Vec::new();
    let mut bad_log = Vec::new();
    for i in 0..50 {
        let f = random_series(&mut rng, false);
        let g = random_series(&mut rng, false);
        let sum = pexp(&(&f + &g), order).unwrap();
        let prod = (&pexp(&f, order).unwrap() * &pexp(&g, order).unwrap()).truncate_q(order);
        if sum != prod {
            bad_add.push(i);
        }
        if plog(&pexp(&f, order).unwrap(), order).unwrap() != f.truncate_q(order) {
            bad_log.push(i);
        }
    }
    let mut bad_err = Vec::new();
    let mut with_constant = 0;
    for i in 0..50 {
        let f = random_series(&mut rng, true);
        let constant = has_constant_term(&f);
        with_constant += constant as usize;
        let raised = matches!(pexp(&f, order), Err(Error::ConstantTermError(_)));
        if raised != constant {
            bad_err.push(i);
        }
    }
    vec![
        Check::predicate("A9.additive", bad_add.is_empty(), "pexp(f+g) = pexp(f) pexp(g) on 50 pairs to q^10", format!("{} mismatches", bad_add.len()), CITE),
        Check::predicate("A9.plog", bad_log.is_empty(), "plog(pexp(f)) = f on 50 series to q^10", format!("{} mismatches", bad_log.len()), CITE),
        Check::predicate(
            "A9.constant_term",
            bad_err.is_empty() && with_constant > 0 && with_constant < 50,
            "ConstantTermError exactly for series with a q^0 term",
            format!("{} of 50 had a q^0 term, {} disagreements", with_constant, bad_err.len()),
            CITE,
        ),
    ]
}

fn main() -> ExitCode {
    let v = Verifier::new(DEFAULT_FIXTURES);
    let outcomes = vec![
        timed("A1", "sl(2)-sum identity, k <= 40, to q^20", 1, || select(&v, Suite::Identity, 20, &["identity.sl2_sum"])),
        timed("A2", "one fivebrane: t- and y-frame PExp to q^6, Schur limit against partitions to q^30", 1, || {
            select(&v, Suite::Identity, 30, &["identity.f1_frames", "identity.f1_schur_partitions"])
        }),
        timed("A3", "Kim expansions: chi~_2 to q^4, chi_2 to q^3, chi_3 - chi_2 at q^3", 5, || {
            select(&v, Suite::Kim, 4, &["kim.chi2_reduced.", "kim.chi2.", "kim.chi3_minus_chi2."])
        }),
        timed("A4", "Imamura expansions: chi~_2 to q^3 in the x-frame, chi~_3 to q^2", 10, || {
            select(&v, Suite::Imamura, 3, &["imamura.chi2_reduced.", "imamura.chi3_reduced."])
        }),
        timed("A5", "large N: f_sugra - f_N for N <= 8, chi_sugra vs chi~_N and chi_N for N <= 6", 30, || {
            select(&v, Suite::LargeN, 8, &["largeN."])
        }),
        timed("A6", "Schur limits: W_N vacuum for N <= 8, Virasoro, MacMahon to q^25", 5, || {
            select(&v, Suite::Schur, 25, &["schur."])
        }),
        timed("A7", "minimal reduction to total degree 10 for N <= 3, zw-form of g_1..g_3 to q^12", 60, || {
            select(&v, Suite::Minimal, 10, &["minimal.product.", "minimal.zw_form."])
        }),
        timed("A8", "jet oracle after calibration, g_1..g_4 to q^8", 120, || {
            select(&v, Suite::Oracle, 8, &["oracle.calibration", "oracle.g.1", "oracle.g.2", "oracle.g.3", "oracle.g.4"])
        }),
        timed("A9", "plethystic properties on 50 random series to q^10", 10, plethystic_checks),
    ];

    let mut unexpected = Vec::new();
    for o in &outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let failed = o.failures().len();
        println!(
            "{} {status} {:.2}s (limit {}s) checks={} failed={} {}",
            o.id,
            o.elapsed.as_secs_f64(),
            o.limit.as_secs(),
            o.checks.len(),
            failed,
            o.title
        );
        for c in o.failures() {
            println!("    {}", c.line());
        }
        if o.elapsed >= o.limit {
            println!("    over the time limit");
        }
        if !o.passed() {
            let known = KNOWN_UNATTAINABLE.iter().find(|(id, _, _)| *id == o.id);
            let explained = o.elapsed < o.limit
                && match known {
                    Some((_, prefix, _)) => o.failures().iter().all(|c| c.id.starts_with(prefix)),
                    None => false,
                };
            match known {
                Some((_, _, reason)) if explained => println!("    known: {reason}"),
                _ => unexpected.push(o.id),
            }
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed()).count();
    println!("acceptance: {passed}/{} criteria pass", outcomes.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
