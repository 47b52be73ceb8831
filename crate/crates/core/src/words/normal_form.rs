//! Canonical forms in the quotient `G' = G_p / <<beta^2>>`.
//!
//! In every regime `G'` is a free product of `<beta | beta^2>` with a small
//! finite group (modulo a central involution), so reduction is a single
//! left-to-right stack pass: adjacent finite-group syllables multiply,
//! adjacent betas cancel.

use std::fmt;

use serde::Serialize;

use super::{Generator, GroupWord, Letter};
use crate::error::{Error, Result};
use crate::int::Regime;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum NormalForm {
    Two(G2Form),
    Three(G3Form),
    Large(LargeForm),
}

/// `(rho^2)^w gamma^e (eta_k gamma^e rho) ... (eta_k gamma^e rho) eta_k gamma^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct G2Form {
    pub rho_squared: bool,
    pub lead_gamma: bool,
    /// Leftmost block first.
    pub blocks: Vec<G2Block>,
    pub tail_k: u64,
    pub tail_gamma: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct G2Block {
    pub k: u64,
    pub gamma: bool,
}

/// `alpha^e3 beta^e2 eta_n ... eta_1 beta^e1` with `eta = beta gamma^e delta^f`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct G3Form {
    pub alpha: bool,
    pub lead_beta: bool,
    /// `(e, f)` pairs, leftmost first.
    pub etas: Vec<Syllable3>,
    pub tail_beta: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Syllable3 {
    pub e: u8,
    pub f: u8,
}

/// `alpha^e` times a freely reduced word in the involutions beta, gamma, sigma.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LargeForm {
    pub p: u32,
    pub alpha: bool,
    pub involutions: Vec<Generator>,
}

/// A syllable of the free product: either `beta` or an element of the
/// finite factor, encoded as `gamma^e x^r` with `x` = rho or delta.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Syl {
    Beta,
    Finite { e: u8, r: u8 },
}

/// Stack reduction shared by `p = 2` and `p = 3`. `mul` multiplies two
/// finite-factor elements and reports whether a central involution was
/// produced.
struct Reducer<F: Fn((u8, u8), (u8, u8)) -> ((u8, u8), bool)> {
    stack: Vec<Syl>,
    central: bool,
    mul: F,
}

impl<F: Fn((u8, u8), (u8, u8)) -> ((u8, u8), bool)> Reducer<F> {
    fn push_beta(&mut self) {
        if self.stack.last() == Some(&Syl::Beta) {
            self.stack.pop();
        } else {
            self.stack.push(Syl::Beta);
        }
    }

    fn push_finite(&mut self, x: (u8, u8), toggle: bool) {
        self.central ^= toggle;
        if x == (0, 0) {
            return;
        }
        if let Some(Syl::Finite { e, r }) = self.stack.last().copied() {
            self.stack.pop();
            let (prod, carry) = (self.mul)((e, r), x);
            self.central ^= carry;
            if prod != (0, 0) {
                self.stack.push(Syl::Finite { e: prod.0, r: prod.1 });
            }
        } else {
            self.stack.push(Syl::Finite { e: x.0, r: x.1 });
        }
    }
}

fn odd(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

/// `gamma^e1 rho^r1 gamma^e2 rho^r2` in the dihedral group of order 8,
/// modulo its center `rho^2`.
fn mul_k2((e1, r1): (u8, u8), (e2, r2): (u8, u8)) -> ((u8, u8), bool) {
    let r1 = if e2 == 1 { -(r1 as i64) } else { r1 as i64 };
    let t = (r1 + r2 as i64).rem_euclid(4);
    (((e1 + e2) % 2, (t % 2) as u8), t >= 2)
}

/// `gamma^e1 delta^f1 gamma^e2 delta^f2` in `S_3`.
fn mul_s3((e1, f1): (u8, u8), (e2, f2): (u8, u8)) -> ((u8, u8), bool) {
    let f1 = if e2 == 1 { -(f1 as i64) } else { f1 as i64 };
    (((e1 + e2) % 2, (f1 + f2 as i64).rem_euclid(3) as u8), false)
}

pub fn normal_form(w: &GroupWord) -> NormalForm {
    match w.regime() {
        Regime::Two => NormalForm::Two(normal_form_2(w.letters())),
        Regime::Three => NormalForm::Three(normal_form_3(w.letters())),
        Regime::Large => NormalForm::Large(normal_form_large(w.p(), w.letters())),
    }
}

fn normal_form_2(letters: &[Letter]) -> G2Form {
    let mut red = Reducer { stack: Vec::new(), central: false, mul: mul_k2 };
    for l in letters {
        match l.generator {
            Generator::Beta => {
                if odd(l.exponent) {
                    red.push_beta();
                }
            }
            Generator::Gamma => red.push_finite((odd(l.exponent) as u8, 0), false),
            Generator::Rho => {
                let e = l.exponent.rem_euclid(4);
                red.push_finite((0, (e % 2) as u8), e >= 2);
            }
            _ => unreachable!("validated alphabet"),
        }
    }
    split_blocks(red.central, &red.stack)
}

/// Cuts the reduced syllable sequence at every `gamma^e rho` syllable.
fn split_blocks(rho_squared: bool, stack: &[Syl]) -> G2Form {
    let mut segments: Vec<&[Syl]> = Vec::new();
    let mut cuts: Vec<bool> = Vec::new();
    let mut start = 0;
    for (i, s) in stack.iter().enumerate() {
        if let Syl::Finite { e, r: 1 } = *s {
            segments.push(&stack[start..i]);
            cuts.push(e == 1);
            start = i + 1;
        }
    }
    let tail = &stack[start..];
    let betas = |seg: &[Syl]| seg.iter().filter(|s| **s == Syl::Beta).count() as u64;
    let starts_gamma = |seg: &[Syl]| matches!(seg.first(), Some(Syl::Finite { .. }));
    let ends_gamma = |seg: &[Syl]| matches!(seg.last(), Some(Syl::Finite { .. }));

    if segments.is_empty() {
        // No rho at all: gamma^e eta_k gamma^e. A lone gamma goes to the tail.
        let k = betas(tail);
        let tail_gamma = ends_gamma(tail);
        let lead_gamma = starts_gamma(tail) && k > 0;
        return G2Form { rho_squared, lead_gamma, blocks: Vec::new(), tail_k: k, tail_gamma };
    }
    let lead_gamma = starts_gamma(segments[0]);
    let blocks = segments
        .iter()
        .zip(cuts)
        .map(|(seg, gamma)| G2Block { k: betas(seg), gamma })
        .collect();
    G2Form {
        rho_squared,
        lead_gamma,
        blocks,
        tail_k: betas(tail),
        tail_gamma: ends_gamma(tail),
    }
}

fn normal_form_3(letters: &[Letter]) -> G3Form {
    let mut alpha = false;
    let mut red = Reducer { stack: Vec::new(), central: false, mul: mul_s3 };
    for l in letters {
        match l.generator {
            Generator::Alpha => alpha ^= odd(l.exponent),
            Generator::Beta => {
                if odd(l.exponent) {
                    red.push_beta();
                }
            }
            Generator::Gamma => red.push_finite((odd(l.exponent) as u8, 0), false),
            Generator::Delta => red.push_finite((0, l.exponent.rem_euclid(3) as u8), false),
            _ => unreachable!("validated alphabet"),
        }
    }
    let stack = red.stack;
    let lead_beta = matches!(stack.first(), Some(Syl::Finite { .. }));
    let tail_beta = !stack.is_empty() && stack.last() == Some(&Syl::Beta);
    let etas = stack
        .iter()
        .filter_map(|s| match *s {
            Syl::Finite { e, r } => Some(Syllable3 { e, f: r }),
            Syl::Beta => None,
        })
        .collect();
    G3Form { alpha, lead_beta, etas, tail_beta }
}

fn normal_form_large(p: u32, letters: &[Letter]) -> LargeForm {
    let mut alpha = false;
    let mut stack: Vec<Generator> = Vec::new();
    for l in letters {
        if l.generator == Generator::Alpha {
            alpha ^= odd(l.exponent);
        } else if odd(l.exponent) {
            if stack.last() == Some(&l.generator) {
                stack.pop();
            } else {
                stack.push(l.generator);
            }
        }
    }
    LargeForm { p, alpha, involutions: stack }
}

impl NormalForm {
    pub fn p(&self) -> u32 {
        match self {
            NormalForm::Two(_) => 2,
            NormalForm::Three(_) => 3,
            NormalForm::Large(f) => f.p,
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            NormalForm::Two(f) => {
                !f.rho_squared && !f.lead_gamma && f.blocks.is_empty() && f.tail_k == 0 && !f.tail_gamma
            }
            NormalForm::Three(f) => !f.alpha && !f.lead_beta && f.etas.is_empty() && !f.tail_beta,
            NormalForm::Large(f) => !f.alpha && f.involutions.is_empty(),
        }
    }

    /// The canonical word for this class (with the cancelled `beta beta`
    /// of the `p = 3` form left out).
    pub fn realize(&self) -> GroupWord {
        use Generator::*;
        fn put(out: &mut Vec<Letter>, g: Generator, on: bool) {
            if on {
                out.push(Letter::new(g, 1));
            }
        }
        fn eta(out: &mut Vec<Letter>, k: u64) {
            for i in 0..k {
                put(out, Gamma, i > 0);
                put(out, Beta, true);
            }
        }
        let p = self.p();
        let mut out: Vec<Letter> = Vec::new();
        match self {
            NormalForm::Two(f) => {
                if f.rho_squared {
                    out.push(Letter::new(Rho, 2));
                }
                put(&mut out, Gamma, f.lead_gamma);
                for b in &f.blocks {
                    eta(&mut out, b.k);
                    put(&mut out, Gamma, b.gamma);
                    put(&mut out, Rho, true);
                }
                eta(&mut out, f.tail_k);
                put(&mut out, Gamma, f.tail_gamma);
            }
            NormalForm::Three(f) => {
                put(&mut out, Alpha, f.alpha);
                for (i, s) in f.etas.iter().enumerate() {
                    put(&mut out, Beta, i > 0 || !f.lead_beta);
                    put(&mut out, Gamma, s.e == 1);
                    if s.f > 0 {
                        out.push(Letter::new(Delta, s.f as i64));
                    }
                }
                put(&mut out, Beta, f.tail_beta);
            }
            NormalForm::Large(f) => {
                put(&mut out, Alpha, f.alpha);
                for &g in &f.involutions {
                    put(&mut out, g, true);
                }
            }
        }
        GroupWord::from_letters(p, out).expect("normal forms use the alphabet of p")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.realize();
        if w.is_empty() {
            f.write_str("1")
        } else {
            write!(f, "{w}")
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LlPrefix {
    #[serde(rename = "gamma")]
    Gamma,
    #[serde(rename = "sigma")]
    Sigma,
    #[serde(rename = "beta gamma")]
    BetaGamma,
    #[serde(rename = "beta sigma")]
    BetaSigma,
    #[serde(rename = "empty")]
    Empty,
}

impl fmt::Display for LlPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LlPrefix::Gamma => "g",
            LlPrefix::Sigma => "s",
            LlPrefix::BetaGamma => "b g",
            LlPrefix::BetaSigma => "b s",
            LlPrefix::Empty => "empty",
        })
    }
}

/// Leftmost shortest subword containing gamma or sigma, read off the
/// reduced form of `w` in `G'` with alpha stripped.
pub fn ll_prefix(w: &GroupWord) -> Result<LlPrefix> {
    let NormalForm::Large(f) = normal_form(w) else {
        return Err(Error::NeedsLargeP(w.p()));
    };
    use Generator::*;
    Ok(match f.involutions.as_slice() {
        [Gamma, ..] => LlPrefix::Gamma,
        [Sigma, ..] => LlPrefix::Sigma,
        [Beta, Gamma, ..] => LlPrefix::BetaGamma,
        [Beta, Sigma, ..] => LlPrefix::BetaSigma,
        _ => LlPrefix::Empty,
    })
}
