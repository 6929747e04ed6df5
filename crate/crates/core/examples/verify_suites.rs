//! Runs every property suite with a small trial count and prints one line each.
//!
//! `cargo run --release --example verify_suites -- 200` raises the count.

use delaybounds::verification::{run_suite, SuiteConfig, SuiteId};

fn main() -> delaybounds::Result<()> {
    let trials = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20);
    let cfg = SuiteConfig {
        trials,
        ..SuiteConfig::default()
    };
    for id in SuiteId::ALL {
        let report = run_suite(id, &cfg)?;
        let worst = report
            .worst_margins
            .iter()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, v)| format!("{k} {v:.3e}"))
            .unwrap_or_default();
        println!(
            "{:<24} {:?} trials={} checks={} failures={} worst: {} ({:.2?})",
            id.as_str(),
            report.status,
            report.trials,
            report.checks,
            report.failures.len(),
            worst,
            report.elapsed
        );
        for f in report.failures.iter().take(3) {
            println!("    {} {} margin={:e}", f.property, f.digest, f.margin);
        }
    }
    Ok(())
}
