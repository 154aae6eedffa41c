//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use belnap::verify::{run_suite, Suite, SuiteReport, VerifyConfig};
use std::process::ExitCode;
use std::time::{Duration, Instant};

struct Criterion {
    id: u8,
    title: &'static str,
    suite: Suite,
    cfg: VerifyConfig,
    limit: Option<Duration>,
}

fn sized(n: usize) -> VerifyConfig {
    VerifyConfig {
        max_size: Some(n),
        ..VerifyConfig::default()
    }
}

fn criteria() -> Vec<Criterion> {
    let mins = |m: u64| Some(Duration::from_secs(60 * m));
    let c = |id, title, suite, cfg, limit| Criterion { id, title, suite, cfg, limit };
    vec![
        c(1, "axioms sound in their defining structures", Suite::Soundness, VerifyConfig::default(), Some(Duration::from_secs(10))),
        c(2, "rule ledger and three-element counterexample", Suite::Ledger, VerifyConfig::default(), None),
        c(3, "Leibniz methods agree up to size 5", Suite::LeibnizCrosscheck, sized(5), mins(1)),
        c(4, "filter and reduct facts up to size 5", Suite::Facts, sized(5), None),
        c(5, "subdirect embeddings up to size 6", Suite::Subdirect, sized(6), mins(5)),
        c(6, "reduced models have the stated shapes at size 4", Suite::Classification, sized(4), mins(10)),
        c(7, "derivations found, checked, mutations rejected", Suite::Derivability, VerifyConfig::default(), None),
        c(8, "exact truth translates to equality with top", Suite::Translation, VerifyConfig::default(), None),
        c(9, "derived rules are valid", Suite::EngineSoundness, VerifyConfig::default(), None),
        c(10, "parser round-trip", Suite::Roundtrip, VerifyConfig { samples: 10_000, ..VerifyConfig::default() }, None),
    ]
}

fn summary(r: &SuiteReport) -> String {
    match r.failures().next() {
        Some(f) => format!("{}: {}", f.name, f.detail),
        None => format!("{} checks", r.checks.len()),
    }
}

fn main() -> ExitCode {
    let filter: Option<u8> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for c in criteria().into_iter().filter(|c| filter.is_none_or(|f| f == c.id)) {
        let start = Instant::now();
        let (ok, detail) = match run_suite(c.suite, &c.cfg) {
            Ok(r) => (r.passed(), summary(&r)),
            Err(e) => (false, format!("error: {e}")),
        };
        let took = start.elapsed();
        let in_time = c.limit.is_none_or(|l| took <= l);
        let detail = if in_time { detail } else { format!("{detail}; over the {:?} limit", c.limit.unwrap()) };
        let pass = ok && in_time;
        failed += usize::from(!pass);
        println!(
            "criterion {:>2}  {}  {:<48} [{}] {detail} ({:.1}s)",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            c.suite,
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
