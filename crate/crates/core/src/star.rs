//! The homology representation on `H_1(F)` in the basis `a, x, b, y`, the
//! projection to the upper-left block, and the Moebius action of 2x2
//! blocks on the extended rational line.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::int::check_p;
use crate::matrix::{RepMatrix2, RepMatrix4};
use crate::words::{Generator, GroupWord};

pub fn generator_matrix(g: Generator, p: u32) -> Result<RepMatrix4> {
    check_p(p)?;
    if !g.is_valid_for(p) {
        return Err(Error::InvalidGenerator { symbol: g, p });
    }
    let p = p as i64;
    Ok(RepMatrix4::from_i64(match g {
        Generator::Alpha => [[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
        Generator::Beta => [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]],
        Generator::Gamma => [[1, 1, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 1, -1]],
        Generator::Delta => [[-2, -1, 1, -1], [3, 1, -1, 0], [0, 0, 1, -3], [0, 0, 1, -2]],
        Generator::Rho => [[1, 1, 1, -1], [-2, -1, -1, 0], [0, 0, -1, 2], [0, 0, -1, 1]],
        Generator::Sigma => [[1, 0, 0, 1], [-p, -1, -1, 0], [0, 0, 1, -p], [0, 0, 0, -1]],
    }))
}

/// Generator images and their inverses for one `p`, computed once.
#[derive(Debug, Clone)]
pub struct StarMap {
    p: u32,
    table: Vec<(Generator, RepMatrix4, RepMatrix4)>,
}

impl StarMap {
    pub fn new(p: u32) -> Result<StarMap> {
        let table = Generator::alphabet(p)
            .into_iter()
            .map(|g| {
                let m = generator_matrix(g, p)?;
                let inv = m.inverse_unimodular().expect("generator images are unimodular");
                Ok((g, m, inv))
            })
            .collect::<Result<_>>()?;
        Ok(StarMap { p, table })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generator(&self, g: Generator) -> Result<&RepMatrix4> {
        self.entry(g).map(|e| &e.1)
    }

    fn entry(&self, g: Generator) -> Result<&(Generator, RepMatrix4, RepMatrix4)> {
        self.table
            .iter()
            .find(|e| e.0 == g)
            .ok_or(Error::InvalidGenerator { symbol: g, p: self.p })
    }

    /// Image of a single letter `g^e`.
    pub fn letter(&self, g: Generator, e: i64) -> Result<RepMatrix4> {
        let (_, m, inv) = self.entry(g)?;
        let base = if e < 0 { inv } else { m };
        Ok(base.pow_unsigned(e.unsigned_abs()))
    }

    pub fn eval(&self, w: &GroupWord) -> Result<RepMatrix4> {
        if w.p() != self.p {
            return Err(Error::MismatchedP { left: self.p, right: w.p() });
        }
        let mut acc = RepMatrix4::identity();
        for l in w.letters() {
            acc = &acc * &self.letter(l.generator, l.exponent)?;
        }
        Ok(acc)
    }
}

/// Product of generator images; the empty word maps to the identity.
pub fn star(w: &GroupWord) -> RepMatrix4 {
    StarMap::new(w.p())
        .and_then(|s| s.eval(w))
        .expect("words only contain generators valid for their p")
}

pub fn q_project(m: &RepMatrix4) -> RepMatrix2 {
    m.upper_left()
}

/// A point of `Q u {inf}`, always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    Finite(BigRational),
    Infinity,
}

impl ExtendedRational {
    pub fn integer(n: i64) -> ExtendedRational {
        ExtendedRational::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> ExtendedRational {
        ExtendedRational::from_pair(BigInt::from(num), BigInt::from(den))
    }

    /// `num / den`, with any `n / 0` read as infinity.
    pub fn from_pair(num: BigInt, den: BigInt) -> ExtendedRational {
        if den.is_zero() {
            ExtendedRational::Infinity
        } else {
            ExtendedRational::Finite(BigRational::new(num, den))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::Infinity)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Infinity => f.write_str("inf"),
            ExtendedRational::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExtendedRational::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<ExtendedRational> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(ExtendedRational::Infinity);
        }
        let bad = || Error::Syntax { position: 0, message: format!("bad extended rational {s:?}") };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.parse::<BigInt>().map_err(|_| bad())?, d.parse::<BigInt>().map_err(|_| bad())?),
            None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        Ok(ExtendedRational::from_pair(num, den))
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `t -> (a t + b) / (c t + d)`, with `inf -> a / c` and poles sent to
/// infinity.
pub fn mobius_apply(m: &RepMatrix2, t: &ExtendedRational) -> ExtendedRational {
    let (a, b, c, d) = (m.a(), m.b(), m.c(), m.d());
    match t {
        ExtendedRational::Infinity => ExtendedRational::from_pair(a.clone(), c.clone()),
        ExtendedRational::Finite(r) => {
            let (n, q) = (r.numer(), r.denom());
            ExtendedRational::from_pair(a * n + b * q, c * n + d * q)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Interval {
    /// `[-inf, -1/2] u {inf}`
    GammaMinus,
    /// `[1/2, inf) u {inf}`
    GammaPlus,
    /// `[-2/p, 0]`
    SigmaMinus,
    /// `[0, 2/p]`
    SigmaPlus,
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Interval::GammaMinus => "I_gamma^-",
            Interval::GammaPlus => "I_gamma^+",
            Interval::SigmaMinus => "I_sigma^-",
            Interval::SigmaPlus => "I_sigma^+",
        })
    }
}

/// The closed intervals containing `t`, in declaration order.
pub fn interval_classify(t: &ExtendedRational, p: u32) -> Result<Vec<Interval>> {
    if p < 4 {
        return Err(Error::NeedsLargeP(p));
    }
    let r = match t {
        ExtendedRational::Infinity => return Ok(vec![Interval::GammaMinus, Interval::GammaPlus]),
        ExtendedRational::Finite(r) => r,
    };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let bound = BigRational::new(BigInt::from(2), BigInt::from(p));
    let mut out = Vec::new();
    if *r <= -half.clone() {
        out.push(Interval::GammaMinus);
    }
    if *r >= half {
        out.push(Interval::GammaPlus);
    }
    if !r.is_positive() && *r >= -bound.clone() {
        out.push(Interval::SigmaMinus);
    }
    if !r.is_negative() && *r <= bound {
        out.push(Interval::SigmaPlus);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, p: u32) -> GroupWord {
        GroupWord::parse(text, p).unwrap()
    }

    #[test]
    fn generator_examples() {
        for p in [2, 3, 5] {
            assert_eq!(
                generator_matrix(Generator::Beta, p).unwrap(),
                RepMatrix4::from_i64([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])
            );
        }
        assert_eq!(
            generator_matrix(Generator::Sigma, 5).unwrap(),
            RepMatrix4::from_i64([[1, 0, 0, 1], [-5, -1, -1, 0], [0, 0, 1, -5], [0, 0, 0, -1]])
        );
        assert_eq!(
            generator_matrix(Generator::Rho, 3),
            Err(Error::InvalidGenerator { symbol: Generator::Rho, p: 3 })
        );
    }

    #[test]
    fn star_examples() {
        assert!(star(&w("", 5)).is_identity());
        assert!(star(&w("b^2", 3)).is_identity());
        assert!(star(&w("r^4", 2)).is_identity());
        assert!(!star(&w("r^2", 2)).is_identity());
        assert_eq!(star(&w("r^-1", 2)), star(&w("r^3", 2)));
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_project(&star(&w("b g", 7))), RepMatrix2::from_i64([[1, 1], [0, 1]]));
        assert_eq!(q_project(&star(&w("r^2", 2))), RepMatrix2::from_i64([[-1, 0], [0, -1]]));
        assert!(q_project(&RepMatrix4::identity()).is_identity());
    }

    #[test]
    fn mobius_examples() {
        let qg = q_project(&generator_matrix(Generator::Gamma, 5).unwrap());
        let qs = q_project(&generator_matrix(Generator::Sigma, 5).unwrap());
        let zero = ExtendedRational::integer(0);
        assert_eq!(mobius_apply(&qg, &zero), ExtendedRational::integer(-1));
        assert_eq!(mobius_apply(&qs, &zero), zero);
        let t = ExtendedRational::ratio(7, 3);
        assert_eq!(mobius_apply(&RepMatrix2::identity(), &t), t);
        assert_eq!(mobius_apply(&qg, &ExtendedRational::Infinity), ExtendedRational::Infinity);
        // sigma sends its pole -1/p to infinity
        assert_eq!(mobius_apply(&qs, &ExtendedRational::ratio(-1, 5)), ExtendedRational::Infinity);
    }

    #[test]
    fn interval_examples() {
        use Interval::*;
        assert_eq!(
            interval_classify(&ExtendedRational::Infinity, 5).unwrap(),
            vec![GammaMinus, GammaPlus]
        );
        assert_eq!(interval_classify(&ExtendedRational::ratio(-1, 5), 5).unwrap(), vec![SigmaMinus]);
        assert_eq!(interval_classify(&ExtendedRational::ratio(1, 4), 5).unwrap(), vec![SigmaPlus]);
        assert_eq!(
            interval_classify(&ExtendedRational::integer(0), 5).unwrap(),
            vec![SigmaMinus, SigmaPlus]
        );
        assert_eq!(
            interval_classify(&ExtendedRational::ratio(1, 2), 4).unwrap(),
            vec![GammaPlus, SigmaPlus]
        );
        assert!(interval_classify(&ExtendedRational::ratio(1, 3), 7).unwrap().is_empty());
        assert_eq!(interval_classify(&ExtendedRational::integer(0), 3), Err(Error::NeedsLargeP(3)));
    }

    #[test]
    fn extended_rational_text() {
        for s in ["inf", "7/3", "-1/2", "0", "5"] {
            assert_eq!(s.parse::<ExtendedRational>().unwrap().to_string(), s);
        }
        assert_eq!("4/6".parse::<ExtendedRational>().unwrap().to_string(), "2/3");
        assert!("1/0".parse::<ExtendedRational>().is_err());
    }
}
