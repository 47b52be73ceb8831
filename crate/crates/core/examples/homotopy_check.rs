//! Free homotopy of loops on the genus-2 handlebody is conjugacy in the
//! free group on x and y.

use std::io::Write;

use goeritz::{cyclic_reduce, freely_homotopic, FreeWord};

pub fn run_example(out: &mut impl Write) -> goeritz::Result<()> {
    let pairs = [("xyxY", "YxyxYy"), ("xxy", "xyx"), ("xy", "yx"), ("xy", "xY"), ("XyxY", "yXYx")];
    for (u, v) in pairs {
        let (fu, fv): (FreeWord, FreeWord) = (u.parse()?, v.parse()?);
        writeln!(
            out,
            "{u:>8} ~ {v:<8} {:<5}  cyclic reductions {} and {}",
            freely_homotopic(&fu, &fv),
            cyclic_reduce(&fu),
            cyclic_reduce(&fv)
        )
        .unwrap();
    }
    let w: FreeWord = "xyXY".parse()?;
    let g: FreeWord = "yyx".parse()?;
    assert!(freely_homotopic(&w, &w.conjugate_by(&g)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> goeritz::Result<()> {
    run_example(&mut std::io::stdout())
}
