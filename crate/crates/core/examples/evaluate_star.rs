//! Evaluate the homology representation on a few words and check that it is
//! a homomorphism.

use std::io::Write;

use goeritz::{GroupWord, StarMap};

pub fn run_example(out: &mut impl Write) -> goeritz::Result<()> {
    for (p, text) in [(2, "r g b"), (3, "a b g d"), (5, "b s g^-1"), (7, "a^2 s g")] {
        let map = StarMap::new(p)?;
        let w = GroupWord::parse(text, p)?;
        let m = map.eval(&w)?;
        writeln!(out, "p = {p}, {text}:\n{m}\n").unwrap();

        // Splitting the word anywhere gives the same product.
        let (head, tail) = w.letters().split_at(w.letters().len() / 2);
        let u = GroupWord::from_letters(p, head.iter().cloned())?;
        let v = GroupWord::from_letters(p, tail.iter().cloned())?;
        assert_eq!(map.eval(&u)? * map.eval(&v)?, m);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> goeritz::Result<()> {
    run_example(&mut std::io::stdout())
}
