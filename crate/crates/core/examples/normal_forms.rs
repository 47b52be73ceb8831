//! Canonical forms modulo the central involution. Words with the same
//! normal form have the same homology matrix.

use std::io::Write;

use goeritz::{normal_form, star, GroupWord};

pub fn run_example(out: &mut impl Write) -> goeritz::Result<()> {
    let cases = [
        (2, "b^2 r g r^-1"),
        (2, "r^2 r^2 b"),
        (3, "d^3 a b a^-1"),
        (5, "s b s^-1 b^3 g"),
        (6, "g^2 b g^-1 b"),
    ];
    for (p, text) in cases {
        let w = GroupWord::parse(text, p)?;
        let nf = normal_form(&w);
        let back = nf.realize();
        writeln!(out, "p = {p}: {text:<16} -> {nf}").unwrap();
        assert_eq!(star(&back), star(&w));
        assert_eq!(normal_form(&back), nf);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> goeritz::Result<()> {
    run_example(&mut std::io::stdout())
}
