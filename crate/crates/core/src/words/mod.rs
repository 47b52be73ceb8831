//! Words in the generators of the Goeritz group, plus normal forms in the
//! quotient by the normal closure of `beta^2` and free-group words.

mod free;
mod normal_form;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::{check_p, Regime};

pub use free::{cyclic_reduce, freely_homotopic, FreeLetter, FreeWord};
pub use normal_form::{
    ll_prefix, normal_form, G2Block, G2Form, G3Form, LargeForm, LlPrefix, NormalForm, Syllable3,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Rho,
    Sigma,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Alpha,
        Generator::Beta,
        Generator::Gamma,
        Generator::Delta,
        Generator::Rho,
        Generator::Sigma,
    ];

    pub fn token(self) -> char {
        match self {
            Generator::Alpha => 'a',
            Generator::Beta => 'b',
            Generator::Gamma => 'g',
            Generator::Delta => 'd',
            Generator::Rho => 'r',
            Generator::Sigma => 's',
        }
    }

    pub fn from_token(c: char) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.token() == c)
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Alpha => "alpha",
            Generator::Beta => "beta",
            Generator::Gamma => "gamma",
            Generator::Delta => "delta",
            Generator::Rho => "rho",
            Generator::Sigma => "sigma",
        }
    }

    pub fn is_valid_for(self, p: u32) -> bool {
        match self {
            Generator::Alpha => p >= 3,
            Generator::Rho => p == 2,
            Generator::Delta => p == 3,
            Generator::Sigma => p >= 4,
            Generator::Beta | Generator::Gamma => p >= 2,
        }
    }

    /// The generators of the presentation for `p`, in a fixed order.
    pub fn alphabet(p: u32) -> Vec<Generator> {
        Generator::ALL.into_iter().filter(|g| g.is_valid_for(p)).collect()
    }

    /// Order of the generator in the group, `None` when infinite (beta).
    pub fn order(self) -> Option<i64> {
        match self {
            Generator::Alpha | Generator::Gamma | Generator::Sigma => Some(2),
            Generator::Delta => Some(3),
            Generator::Rho => Some(4),
            Generator::Beta => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

impl Letter {
    pub fn new(generator: Generator, exponent: i64) -> Letter {
        Letter { generator, exponent }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.generator.token())
        } else {
            write!(f, "{}^{}", self.generator.token(), self.exponent)
        }
    }
}

/// A run-length-merged word over the alphabet for a fixed `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    p: u32,
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn empty(p: u32) -> Result<GroupWord> {
        check_p(p)?;
        Ok(GroupWord { p, letters: Vec::new() })
    }

    /// Validates every symbol against `p` and merges adjacent equal symbols.
    pub fn from_letters(p: u32, letters: impl IntoIterator<Item = Letter>) -> Result<GroupWord> {
        let mut w = GroupWord::empty(p)?;
        for l in letters {
            if !l.generator.is_valid_for(p) {
                return Err(Error::InvalidGenerator { symbol: l.generator, p });
            }
            w.push(l);
        }
        Ok(w)
    }

    pub fn generator(g: Generator, p: u32) -> Result<GroupWord> {
        GroupWord::from_letters(p, [Letter::new(g, 1)])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exponent.unsigned_abs()).sum()
    }

    fn push(&mut self, l: Letter) {
        if l.exponent == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some(last) if last.generator == l.generator => {
                last.exponent += l.exponent;
                if last.exponent == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(l),
        }
    }

    /// Concatenation with run-length merging. No relations are applied.
    pub fn multiply(&self, other: &GroupWord) -> Result<GroupWord> {
        if self.p != other.p {
            return Err(Error::MismatchedP { left: self.p, right: other.p });
        }
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        Ok(w)
    }

    pub fn invert(&self) -> GroupWord {
        GroupWord {
            p: self.p,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.generator, -l.exponent))
                .collect(),
        }
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut w = GroupWord { p: self.p, letters: Vec::new() };
        for _ in 0..n.unsigned_abs() {
            for &l in &base.letters {
                w.push(l);
            }
        }
        w
    }

    /// Reduces exponents of the finite-order generators to the symmetric
    /// range and re-merges. Beta is left alone, so the result is equal to
    /// `self` in the group itself, not only in the quotient.
    pub fn tidy(&self) -> GroupWord {
        let mut w = GroupWord { p: self.p, letters: Vec::new() };
        for &l in &self.letters {
            w.push(l);
            if let Some(last) = w.letters.last_mut() {
                if let Some(order) = last.generator.order() {
                    let mut e = last.exponent.rem_euclid(order);
                    if 2 * e > order {
                        e -= order;
                    }
                    last.exponent = e;
                    if e == 0 {
                        w.letters.pop();
                    }
                }
            }
        }
        w
    }

    /// Parses the whitespace-separated token grammar, e.g. `b g r^2`.
    pub fn parse(text: &str, p: u32) -> Result<GroupWord> {
        check_p(p)?;
        let mut letters = Vec::new();
        for (position, tok) in text.split_whitespace().enumerate() {
            let syntax = |message: String| Error::Syntax { position, message };
            let mut chars = tok.chars();
            let head = chars.next().expect("split_whitespace yields nonempty tokens");
            let generator = Generator::from_token(head)
                .ok_or_else(|| syntax(format!("unknown generator {head:?}")))?;
            let rest = chars.as_str();
            let exponent = if rest.is_empty() {
                1
            } else {
                let digits = rest
                    .strip_prefix('^')
                    .ok_or_else(|| syntax(format!("expected '^' after {head:?} in {tok:?}")))?;
                let e: i64 = digits
                    .parse()
                    .map_err(|_| syntax(format!("bad exponent {digits:?}")))?;
                if e == 0 {
                    return Err(syntax("exponent must be nonzero".into()));
                }
                e
            };
            letters.push(Letter::new(generator, exponent));
        }
        GroupWord::from_letters(p, letters)
    }

    pub fn regime(&self) -> Regime {
        Regime::of(self.p).expect("p validated on construction")
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn parse_word(text: &str, p: u32) -> Result<GroupWord> {
    GroupWord::parse(text, p)
}

pub fn multiply(u: &GroupWord, v: &GroupWord) -> Result<GroupWord> {
    u.multiply(v)
}

pub fn invert(u: &GroupWord) -> GroupWord {
    u.invert()
}

pub fn is_trivial_in_quotient(w: &GroupWord) -> bool {
    normal_form(w).is_trivial()
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Generator> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Generator::from_token(c),
            _ => Generator::ALL.into_iter().find(|g| g.name() == s),
        }
        .ok_or_else(|| Error::Syntax { position: 0, message: format!("unknown generator {s:?}") })
    }
}
