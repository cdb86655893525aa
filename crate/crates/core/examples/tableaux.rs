// The determinant polynomial against tableau counts, and hook sums.

use looplab::hook::{count_tableaux, d_det, hook_identities, subleading, TableauMode};
use looplab::{Matching, Result, YoungDiagram};

pub fn run_example() -> Result<Vec<String>> {
    let pi = Matching::from_a_seq(&[1, 2, 4, 7])?;
    let y = pi.young();
    let d = d_det(&pi);
    let mut lines = vec![format!("{pi}  rows {:?}  D(t) = {d}", y.rows())];
    for p in 0..3 {
        let c = count_tableaux(&y, p + 3, TableauMode::Strict);
        lines.push(format!("D({p}) = {}  strict tableaux up to {}: {}", d.eval_int(p), p + 3, c.count));
    }
    let w = count_tableaux(&y, 1, TableauMode::Weak);
    lines.push(format!("D(-5) = {}  weak tableaux up to 1: {}", d.eval_int(-5), w.count));
    lines.push(format!("coefficient of t^{} in A: {}", pi.d() - 1, subleading(&pi)?));
    let all = YoungDiagram::in_staircase(6);
    let ok = all.iter().filter(|y| hook_identities(y)).count();
    lines.push(format!("hook identities hold for {ok} of {} diagrams", all.len()));
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    for l in run_example()? {
        println!("{l}");
    }
    Ok(())
}
