// Parsing and rendering matchings, and the diagrams attached to them.

use looplab::{enumerate_matchings, Matching, Result};

pub fn run_example() -> Result<Vec<String>> {
    let pi: Matching = "(()())()".parse()?;
    let mut lines = vec![
        format!("word     {}", pi.render_word()),
        format!("a-seq    {}", pi.render_a()),
        format!("arches   {}", pi.render_arches()),
        format!("diagram  {:?}  d = {}", pi.young().rows(), pi.d()),
        format!("rotated  {}", pi.rotate()),
        format!("nested   {}", pi.nest(2)),
    ];
    let same = Matching::from_a_seq(&pi.a_seq())?;
    assert_eq!(same, pi);
    for n in 1..=5 {
        lines.push(format!("size {n}: {} matchings", enumerate_matchings(n).len()));
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
