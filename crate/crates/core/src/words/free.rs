//! Words in the free group on `X`, `Y` and the conjugacy test.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FreeLetter {
    X,
    XInv,
    Y,
    YInv,
}

impl FreeLetter {
    pub const ALL: [FreeLetter; 4] = [FreeLetter::X, FreeLetter::XInv, FreeLetter::Y, FreeLetter::YInv];

    pub fn inverse(self) -> FreeLetter {
        match self {
            FreeLetter::X => FreeLetter::XInv,
            FreeLetter::XInv => FreeLetter::X,
            FreeLetter::Y => FreeLetter::YInv,
            FreeLetter::YInv => FreeLetter::Y,
        }
    }

    pub fn token(self) -> char {
        match self {
            FreeLetter::X => 'x',
            FreeLetter::XInv => 'X',
            FreeLetter::Y => 'y',
            FreeLetter::YInv => 'Y',
        }
    }

    pub fn from_token(c: char) -> Option<FreeLetter> {
        FreeLetter::ALL.into_iter().find(|l| l.token() == c)
    }
}

/// A word in the rank-2 free group. Not necessarily reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord {
    pub letters: Vec<FreeLetter>,
}

impl FreeWord {
    pub fn new(letters: Vec<FreeLetter>) -> FreeWord {
        FreeWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reduce(&self) -> FreeWord {
        let mut out: Vec<FreeLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord::new(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inverse())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord::new(self.letters.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord::new(letters)
    }

    pub fn conjugate_by(&self, g: &FreeWord) -> FreeWord {
        g.concat(self).concat(&g.inverse())
    }
}

/// Accepts `x X y Y` with or without separating whitespace.
impl FromStr for FreeWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<FreeWord> {
        let mut letters = Vec::new();
        for (position, c) in s.chars().filter(|c| !c.is_whitespace()).enumerate() {
            let l = FreeLetter::from_token(c).ok_or_else(|| Error::Syntax {
                position,
                message: format!("expected one of x X y Y, got {c:?}"),
            })?;
            letters.push(l);
        }
        Ok(FreeWord::new(letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.token().to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Freely reduces, then strips matching inverse pairs from the two ends.
pub fn cyclic_reduce(w: &FreeWord) -> FreeWord {
    let r = w.reduce();
    let letters = &r.letters;
    let (mut i, mut j) = (0, letters.len());
    while j - i >= 2 && letters[i] == letters[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    FreeWord::new(letters[i..j].to_vec())
}

/// Conjugacy in the free group: the cyclic reductions are rotations of
/// each other.
pub fn freely_homotopic(u: &FreeWord, v: &FreeWord) -> bool {
    let (u, v) = (cyclic_reduce(u), cyclic_reduce(v));
    if u.len() != v.len() {
        return false;
    }
    if u.is_empty() {
        return true;
    }
    let doubled: Vec<FreeLetter> = u.letters.iter().chain(&u.letters).copied().collect();
    doubled.windows(v.len()).any(|w| w == v.letters.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fw(s: &str) -> FreeWord {
        s.parse().unwrap()
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(cyclic_reduce(&fw("x y X")), fw("y"));
        assert_eq!(cyclic_reduce(&fw("x y")), fw("x y"));
        assert_eq!(cyclic_reduce(&fw("x X")), fw(""));
        assert_eq!(cyclic_reduce(&fw("y x x y X X Y")), fw("y"));
    }

    #[test]
    fn homotopy_examples() {
        assert!(freely_homotopic(&fw("x y X"), &fw("y")));
        assert!(freely_homotopic(&fw("x y"), &fw("y x")));
        assert!(!freely_homotopic(&fw("x"), &fw("y")));
        assert!(!freely_homotopic(&fw("x"), &fw("X")));
        assert!(freely_homotopic(&fw(""), &fw("x X")));
        assert!(!freely_homotopic(&fw("x x y"), &fw("x y y")));
    }

    #[test]
    fn parse_display() {
        assert_eq!(fw("xYX").to_string(), "x Y X");
        assert!("x z".parse::<FreeWord>().is_err());
    }
}
