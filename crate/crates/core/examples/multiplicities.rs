// Multiplicity vectors from both rules, and cuts of a matching.

use looplab::multiplicity::{decompose_at, m_rule_a, m_rule_b, remove_rim};
use looplab::{enumerate_matchings, Matching, Result};

pub fn run_example() -> Result<Vec<String>> {
    let mut lines = vec![];
    for pi in enumerate_matchings(4) {
        let a = m_rule_a(&pi)?;
        assert_eq!(a, m_rule_b(&pi));
        let mut cuts = vec![];
        for p in 1..4 {
            if let Some((alpha, beta)) = decompose_at(&pi, p)? {
                cuts.push(format!("{p}: {alpha} | {beta}"));
            }
        }
        lines.push(format!("{pi}  m = {:?}  {}", a.as_slice(), cuts.join("  ")));
    }
    let mut pi: Matching = "((()())(()))".parse()?;
    while pi.d() > 0 {
        let (next, rim) = remove_rim(&pi)?;
        lines.push(format!("rim of {pi}: {rim:?}"));
        pi = next;
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
