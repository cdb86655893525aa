// Runs the conjecture suites for small sizes and prints a summary.

use looplab::harness::{run_report, Suite, VerifyConfig};
use looplab::Result;

pub fn run_example() -> Result<Vec<String>> {
    let cfg = VerifyConfig { n_min: 1, n_max: 3, suites: Suite::ALL.to_vec(), ..VerifyConfig::default() };
    let report = run_report(&cfg)?;
    let mut lines: Vec<String> = report
        .reports
        .iter()
        .map(|r| format!("{:<6} n={} {}", r.conjecture, r.n, if r.pass { "pass" } else { "FAIL" }))
        .collect();
    lines.push(format!("overall: {}", report.pass));
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    for l in run_example()? {
        println!("{l}");
    }
    Ok(())
}
