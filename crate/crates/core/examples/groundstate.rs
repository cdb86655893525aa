// Integer groundstates of the loop Hamiltonian and their sums.

use looplab::cpl::{hamiltonian, GroundStateCache};
use looplab::fpl::a_n;
use looplab::Result;

pub fn run_example() -> Result<Vec<String>> {
    let cache = GroundStateCache::new(None, 8);
    let mut lines = vec![];
    for n in 1..=7 {
        let gs = cache.get(n)?;
        assert_eq!(num_bigint::BigUint::from(gs.sum()), a_n(n));
        lines.push(format!("n = {n}: dim {}, {} orbits, sum {}", hamiltonian(n).dim(), gs.orbit_count(), gs.sum()));
    }
    for (pi, v) in cache.get(3)?.components() {
        lines.push(format!("  {pi} {v}"));
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
