//! Move between 4x4 matrices in S_p and their parameters, and multiply in
//! parameter space.

use std::io::Write;

use goeritz::{compose_sp, decompose_sp, star, GroupWord, RepMatrix4};

pub fn run_example(out: &mut impl Write) -> goeritz::Result<()> {
    let p = 5;
    let u = GroupWord::parse("b s g", p)?;
    let v = GroupWord::parse("g^-1 s^2", p)?;
    let (eu, ev) = (decompose_sp(&star(&u), p)?, decompose_sp(&star(&v), p)?);
    writeln!(out, "b s g      -> {eu}, kappa = {}", eu.kappa()).unwrap();
    writeln!(out, "g^-1 s^2   -> {ev}, kappa = {}", ev.kappa()).unwrap();

    let product = compose_sp(&eu, &ev)?;
    assert_eq!(product.assemble(), star(&u.multiply(&v)?));
    writeln!(out, "product    -> {product}\n{}", product.assemble()).unwrap();

    // The A block has the form [[kp+1, l], [mp, np+Delta]].
    writeln!(out, "A =\n{}\nD =\n{}", product.a_block(), product.d_block()).unwrap();

    let bad = RepMatrix4::parse("1 1 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1")?;
    match decompose_sp(&bad, p) {
        Err(e) => writeln!(out, "rejected: {e}").unwrap(),
        Ok(e) => panic!("accepted {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> goeritz::Result<()> {
    run_example(&mut std::io::stdout())
}
