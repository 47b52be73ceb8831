//! Decide whether some mapping class can carry one homology class to
//! another.

use std::io::Write;

use goeritz::{obstruct, star, GroupWord, HomologyVector, Verdict};

pub fn run_example(out: &mut impl Write) -> goeritz::Result<()> {
    let mut pairs: Vec<(u32, HomologyVector, HomologyVector)> = Vec::new();
    for (p, v, w) in [(2, "0,0,1,0", "0,0,1,1"), (5, "0,0,1,0", "0,0,6,0"), (5, "5,-3,-2,-3", "1,0,0,0")] {
        pairs.push((p, v.parse()?, w.parse()?));
    }
    // Targets reached by actual words are always certified.
    for (p, word, v) in [(3, "a b^-1 g d", "1,2,0,1"), (5, "b s g^2", "1,2,0,1"), (7, "s^-2 g b", "2,0,3,-1")] {
        let v: HomologyVector = v.parse()?;
        let w = v.transform(&star(&GroupWord::parse(word, p)?));
        pairs.push((p, v, w));
    }
    for (p, v, w) in pairs {
        let r = obstruct(&v, &w, p, 32)?;
        writeln!(out, "p = {p}: {v} -> {w}: {}", r.verdict).unwrap();
        writeln!(out, "  {}", r.reason).unwrap();
        if let Some(c) = &r.certificate {
            assert_eq!(v.transform(&c.element.assemble()), w);
            writeln!(out, "  via {}", c.word).unwrap();
        }
        if r.verdict == Verdict::Obstructed {
            assert!(r.certificate.is_none());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> goeritz::Result<()> {
    run_example(&mut std::io::stdout())
}
