//! Enumerate B_p elements by kappa and tally how many come from words.

use std::collections::BTreeMap;
use std::io::Write;

use goeritz::{enumerate_image, synthesize_word};

pub fn run_example(out: &mut impl Write) -> goeritz::Result<()> {
    for (p, kappa) in [(2, 6), (3, 6), (4, 8), (5, 24)] {
        let mut by_kappa: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for e in enumerate_image(p, kappa) {
            let slot = by_kappa.entry(format!("{:>3}", e.kappa())).or_default();
            slot.0 += 1;
            if synthesize_word(&e).is_ok() {
                slot.1 += 1;
            }
        }
        writeln!(out, "p = {p}").unwrap();
        for (k, (total, images)) in by_kappa {
            writeln!(out, "  kappa {k}: {total:>5} in B_p, {images:>5} realized").unwrap();
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> goeritz::Result<()> {
    run_example(&mut std::io::stdout())
}
