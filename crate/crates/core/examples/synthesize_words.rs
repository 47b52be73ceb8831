//! Recover a word from an image matrix by kappa descent, and see what
//! happens for elements of B_p that are not images.

use std::io::Write;

use goeritz::{star, synthesize_word, Error, Sign, SpElement};

pub fn run_example(out: &mut impl Write) -> goeritz::Result<()> {
    let targets = [
        SpElement::new(2, Sign::Plus, 1, 2, 2, 1, Sign::Plus)?,
        SpElement::new(3, Sign::Minus, 0, 2, 1, 2, Sign::Plus)?,
        SpElement::new(5, Sign::Plus, 1, 1, 1, 0, Sign::Plus)?,
        SpElement::new(7, Sign::Plus, -1, 5, 1, -1, Sign::Plus)?,
    ];
    for e in &targets {
        match synthesize_word(e) {
            Ok(w) => {
                assert_eq!(star(&w), e.assemble());
                writeln!(out, "{e}\n  kappa {} <- {w}", e.kappa()).unwrap();
            }
            Err(err) => writeln!(out, "{e}\n  {err}").unwrap(),
        }
    }

    // In B_5 but not an image: one generator pushes it out of B_5.
    let e = SpElement::new(5, Sign::Plus, -2, -4, -5, -2, Sign::Minus)?;
    assert!(e.in_b_p());
    match synthesize_word(&e) {
        Err(Error::NotInImage { word }) => writeln!(out, "{e}\n  not an image, witness {word}").unwrap(),
        other => panic!("unexpected {other:?}"),
    }

    // The smallest S_5 element outside B_5 is rejected before any descent.
    let outside = (-4..=4)
        .flat_map(|k| (-4..=4).flat_map(move |l| (-4..=4).map(move |m| (k, l, m))))
        .flat_map(|(k, l, m)| (-4..=4).map(move |n| (k, l, m, n)))
        .flat_map(|(k, l, m, n)| [Sign::Plus, Sign::Minus].map(|d| SpElement::new(5, Sign::Plus, k, l, m, n, d)))
        .flatten()
        .filter(|e| !e.in_b_p())
        .min_by_key(|e| e.kappa());
    if let Some(e) = outside {
        writeln!(out, "{e}\n  {}", synthesize_word(&e).unwrap_err()).unwrap();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> goeritz::Result<()> {
    run_example(&mut std::io::stdout())
}
