// Ψ_π(τ, t) from constant terms and the change of basis.

use looplab::poly::q;
use looplab::qkz::{c_matrix, QkzEngine};
use looplab::{enumerate_matchings, Result};

pub fn run_example() -> Result<Vec<String>> {
    let c = c_matrix(3)?;
    c.check_invariants()?;
    let mut lines = vec![];
    for a in &c.index {
        let row: Vec<String> = c.index.iter().map(|pi| c.get(a, pi).to_string()).collect();
        lines.push(format!("C[{a}] = [{}]", row.join(", ")));
    }
    let engine = QkzEngine::new();
    for pi in enumerate_matchings(3) {
        let psi = engine.psi_tau(&pi)?;
        lines.push(format!("{pi}  Psi = {psi}  at tau=1: {}", psi.eval_tau(&q(1))));
        lines.push(format!("{pi}  G(tau) = {}", engine.g_tau(&pi)?.to_string().replace('t', "tau")));
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
