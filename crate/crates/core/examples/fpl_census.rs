// Counts fully packed loop configurations by link pattern.

use looplab::fpl::{a_n, fpl_census};
use looplab::Result;

pub fn run_example() -> Result<Vec<String>> {
    let mut lines = vec![];
    for n in 1..=5 {
        let census = fpl_census(n)?;
        assert_eq!(num_bigint::BigUint::from(census.total()), a_n(n));
        lines.push(format!("n = {n}: {} configurations", census.total()));
    }
    for (pi, c) in &fpl_census(3)?.counts {
        lines.push(format!("  {pi} {c}"));
    }
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    for l in run_example()? {
        println!("{l}");
    }
    Ok(())
}
