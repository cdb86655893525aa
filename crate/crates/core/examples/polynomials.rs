// A_π(t) by interpolation, its root pattern and G_π.

use looplab::apoly::{a_poly, g_value};
use looplab::cpl::GroundStateCache;
use looplab::multiplicity::m;
use looplab::poly::{factorial, real_root_count};
use looplab::{enumerate_matchings, Result};

pub fn run_example() -> Result<Vec<String>> {
    let cache = GroundStateCache::new(None, 10);
    let mut lines = vec![];
    for pi in enumerate_matchings(3) {
        let a = a_poly(&pi, &cache)?;
        let scaled = a.scale(&factorial(pi.d()).into());
        lines.push(format!(
            "{pi}  d!A = {scaled}  m = {:?}  real roots {}  G = {}",
            m(&pi)?.as_slice(),
            real_root_count(&a),
            g_value(&pi, &cache)?
        ));
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
