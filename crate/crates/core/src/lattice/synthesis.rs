//! Word synthesis by descent on `kappa = |X11| + |X22|`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::SpElement;
use crate::error::{Error, Result};
use crate::int::{exact_div, Regime, Sign};
use crate::matrix::RepMatrix2;
use crate::words::GroupWord;

/// Left multiplication by `[[1, s], [0, 1]]` or `[[1, 0], [s p, 1]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Move {
    Upper(Sign),
    Lower(Sign),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentStep {
    pub mv: Move,
    pub kappa_after: String,
}

fn kappa2(x: &RepMatrix2) -> BigInt {
    x.a().abs() + x.d().abs()
}

fn apply(x: &RepMatrix2, mv: Move, p: &BigInt) -> RepMatrix2 {
    let (a, b, c, d) = (x.a(), x.b(), x.c(), x.d());
    match mv {
        Move::Upper(s) => RepMatrix2::from_rows([
            [a + s.apply(c.clone()), b + s.apply(d.clone())],
            [c.clone(), d.clone()],
        ]),
        Move::Lower(s) => RepMatrix2::from_rows([
            [a.clone(), b.clone()],
            [c + s.apply(p * a), d + s.apply(p * b)],
        ]),
    }
}

/// Picks the next move: the proof's rule when it applies (upper first),
/// otherwise any move that lowers `kappa`. Ties go to the smaller
/// `|l| + |m|`, then to the `+` sign.
fn choose(x: &RepMatrix2, p: &BigInt) -> Option<(Move, RepMatrix2)> {
    let two = BigInt::from(2);
    let k0 = kappa2(x);
    let (a, b, c, d) = (x.a(), x.b(), x.c(), x.d());
    let upper = !c.is_zero() && c.abs() < &two * a.abs();
    let lower = !b.is_zero() && p * b.abs() < &two * d.abs();
    let best = |moves: &[Move]| {
        moves
            .iter()
            .map(|&mv| {
                let y = apply(x, mv, p);
                let size = y.b().abs() + y.c().abs() / p;
                (kappa2(&y), size, mv, y)
            })
            .filter(|(k, ..)| *k < k0)
            .min_by(|l, r| (&l.0, &l.1).cmp(&(&r.0, &r.1)))
            .map(|(_, _, mv, y)| (mv, y))
    };
    let ups = [Move::Upper(Sign::Plus), Move::Upper(Sign::Minus)];
    let lows = [Move::Lower(Sign::Plus), Move::Lower(Sign::Minus)];
    let all = [ups[0], ups[1], lows[0], lows[1]];
    (if upper { best(&ups) } else { None })
        .or_else(|| if lower { best(&lows) } else { None })
        .or_else(|| best(&all))
}

fn upper_word(p: u32, t: i64) -> GroupWord {
    GroupWord::parse("b g", p).expect("beta, gamma exist for all p").pow(t)
}

fn lower_word(p: u32, t: i64) -> GroupWord {
    let base = match Regime::of(p).expect("valid p") {
        Regime::Two => "r^2 b g r",
        Regime::Three => "b g d",
        Regime::Large => "b s",
    };
    GroupWord::parse(base, p).expect("alphabet of p").pow(t)
}

fn minus_one(p: u32) -> GroupWord {
    let text = if p == 2 { "r^2" } else { "a" };
    GroupWord::parse(text, p).expect("alphabet of p")
}

fn small(n: &BigInt) -> Result<i64> {
    n.to_i64()
        .ok_or_else(|| Error::ResourceLimit(format!("exponent {n} does not fit in 64 bits")))
}

/// Word for a `kappa = 2` matrix: `X = U(u) diag(a', d) L(t)` with
/// `u = b d`, `t = d c / p`, `a' = a - b c d`.
fn base_word(x: &RepMatrix2, p: u32) -> Result<GroupWord> {
    let pb = BigInt::from(p);
    let (a, b, c, d) = (x.a(), x.b(), x.c(), x.d());
    let stall = || Error::DescentStall { kappa: kappa2(x).to_string() };
    let ds = Sign::from_unit(d).ok_or_else(stall)?;
    let u = ds.apply(b.clone());
    let t = ds.apply(exact_div(c, &pb).ok_or_else(stall)?);
    let a2 = a - ds.apply(b * c);
    let a2s = Sign::from_unit(&a2).ok_or_else(stall)?;
    let empty = GroupWord::empty(p)?;
    let beta = GroupWord::parse("b", p)?;
    let diag = match (a2s, ds) {
        (Sign::Plus, Sign::Plus) => empty,
        (Sign::Plus, Sign::Minus) => beta,
        (Sign::Minus, Sign::Minus) => minus_one(p),
        (Sign::Minus, Sign::Plus) => minus_one(p).multiply(&beta)?,
    };
    upper_word(p, small(&u)?).multiply(&diag)?.multiply(&lower_word(p, small(&t)?))
}

/// Both `B_p` inequalities, read off `X = omega A` (they ignore the sign).
fn in_b(x: &RepMatrix2, p: &BigInt) -> bool {
    let two = BigInt::from(2);
    x.c().abs() <= &two * x.a().abs() || p * x.b().abs() <= two * x.d().abs()
}

fn move_word(p: u32, mv: Move) -> GroupWord {
    match mv {
        Move::Upper(s) => upper_word(p, s.to_i64()),
        Move::Lower(s) => lower_word(p, s.to_i64()),
    }
}

/// The word for `S_t ... S_1 S_extra`, the moves applied so far.
fn moves_word(p: u32, steps: &[DescentStep], extra: Option<Move>) -> GroupWord {
    let mut w = GroupWord::empty(p).expect("valid p");
    for mv in steps.iter().map(|s| s.mv).chain(extra) {
        w = move_word(p, mv).multiply(&w).expect("same p");
    }
    w.tidy()
}

/// Runs the descent from `omega * A` down to `kappa = 2`.
///
/// Fails with `NotInImage` when the moves reach a matrix outside `B_p`, or
/// when a stalled matrix has a neighbour outside `B_p`.
pub fn descent(e: &SpElement) -> Result<(Vec<DescentStep>, RepMatrix2)> {
    let p = BigInt::from(e.p);
    let two = BigInt::from(2);
    let mut x = e.q_image();
    let mut steps: Vec<DescentStep> = Vec::new();
    let outside = |steps: &[DescentStep], extra| Error::NotInImage { word: moves_word(e.p, steps, extra).to_string() };
    while kappa2(&x) > two {
        if !in_b(&x, &p) {
            return Err(outside(&steps, None));
        }
        let Some((mv, y)) = choose(&x, &p) else {
            let all = [Sign::Plus, Sign::Minus].into_iter().flat_map(|s| [Move::Upper(s), Move::Lower(s)]);
            for mv in all {
                if !in_b(&apply(&x, mv, &p), &p) {
                    return Err(outside(&steps, Some(mv)));
                }
            }
            return Err(Error::DescentStall { kappa: kappa2(&x).to_string() });
        };
        steps.push(DescentStep { mv, kappa_after: kappa2(&y).to_string() });
        x = y;
    }
    Ok((steps, x))
}

/// A word whose star image is `assemble(e)`.
pub fn synthesize_word(e: &SpElement) -> Result<GroupWord> {
    if !e.in_b_p() {
        return Err(Error::NotInBp);
    }
    let p = e.p;
    let (steps, base) = descent(e)?;
    let mut w = GroupWord::empty(p)?;
    for step in &steps {
        // X = S^-1 X'; the inverse of U(s) is U(-s), likewise for L.
        let inv = match step.mv {
            Move::Upper(s) => upper_word(p, -s.to_i64()),
            Move::Lower(s) => lower_word(p, -s.to_i64()),
        };
        w = w.multiply(&inv)?;
    }
    Ok(w.multiply(&base_word(&base, p)?)?.tidy())
}
