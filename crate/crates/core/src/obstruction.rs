//! Arithmetic obstructions to carrying one homology class to another, the
//! seven vector families, and an exact solver for `g v = v'`.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::int::{epsilon, exact_div, gcd, JsonInt, Sign};
use crate::lattice::{synthesize_word, SpElement};
use crate::linalg;
use crate::matrix::RepMatrix4;

/// Coordinates in the basis `a, x, b, y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyVector {
    pub a: BigInt,
    pub x: BigInt,
    pub b: BigInt,
    pub y: BigInt,
}

impl HomologyVector {
    pub fn new(a: impl Into<BigInt>, x: impl Into<BigInt>, b: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        HomologyVector { a: a.into(), x: x.into(), b: b.into(), y: y.into() }
    }

    pub fn from_array([a, x, b, y]: [BigInt; 4]) -> Self {
        HomologyVector { a, x, b, y }
    }

    pub fn to_array(&self) -> [BigInt; 4] {
        [self.a.clone(), self.x.clone(), self.b.clone(), self.y.clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.x.is_zero() && self.b.is_zero() && self.y.is_zero()
    }

    pub fn transform(&self, m: &RepMatrix4) -> HomologyVector {
        HomologyVector::from_array(m.mul_vec(&self.to_array()))
    }

    pub fn neg(&self) -> HomologyVector {
        HomologyVector::from_array(self.to_array().map(|c| -c))
    }

    /// `s = a p + epsilon b`
    pub fn s(&self, p: u32) -> BigInt {
        &self.a * BigInt::from(p) + epsilon(p).apply(self.b.clone())
    }

    /// `delta = b s + x y p`
    pub fn delta(&self, p: u32) -> BigInt {
        &self.b * self.s(p) + &self.x * &self.y * BigInt::from(p)
    }
}

impl FromStr for HomologyVector {
    type Err = Error;
    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.trim().trim_matches(|c| c == '(' || c == ')').split(',').collect();
        if parts.len() != 4 {
            return Err(Error::VectorFormat(format!("expected a,x,b,y; got {text:?}")));
        }
        let mut vals = Vec::with_capacity(4);
        for part in parts {
            vals.push(
                part.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::VectorFormat(format!("bad integer {part:?}")))?,
            );
        }
        let [a, x, b, y]: [BigInt; 4] = vals.try_into().expect("length checked");
        Ok(HomologyVector { a, x, b, y })
    }
}

impl fmt::Display for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.x, self.b, self.y)
    }
}

impl Serialize for HomologyVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().map(JsonInt).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomologyVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let arr = <[JsonInt; 4]>::deserialize(d)?;
        Ok(HomologyVector::from_array(arr.map(|j| j.0)))
    }
}

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    if r.is_integer() {
        JsonInt(r.to_integer()).serialize(s)
    } else {
        s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cdef {
    #[serde(serialize_with = "ser_rational")]
    pub c: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub d: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub e: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub f: BigRational,
}

impl Cdef {
    fn integers(&self) -> Option<[BigInt; 4]> {
        [&self.c, &self.d, &self.e, &self.f]
            .iter()
            .all(|r| r.is_integer())
            .then(|| [&self.c, &self.d, &self.e, &self.f].map(|r| r.to_integer()))
    }
}

/// The four numerators shared by `c, d, e, f` and their primed versions.
fn numerators(v: &HomologyVector, w: &HomologyVector, p: u32, delta: Sign) -> [BigInt; 4] {
    let pb = BigInt::from(p);
    let (s, s2) = (v.s(p), w.s(p));
    [
        delta.apply(&v.b * &w.x) - &w.b * &v.x,
        &v.b * &s2 + delta.apply(&v.x * &w.y * &pb),
        &w.b * &s + delta.apply(&w.x * &v.y * &pb),
        &v.y * &s2 - delta.apply(&w.y * &s),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedInvariants {
    pub delta_sign: Sign,
    #[serde(with = "crate::int::serde_bigint")]
    pub s: BigInt,
    #[serde(with = "crate::int::serde_bigint")]
    pub s_prime: BigInt,
    #[serde(with = "crate::int::serde_bigint")]
    pub delta: BigInt,
    #[serde(with = "crate::int::serde_bigint")]
    pub delta_prime: BigInt,
    /// Present when `delta != 0`.
    pub cdef: Option<Cdef>,
    /// Present when `delta' != 0`.
    pub cdef_prime: Option<Cdef>,
}

pub fn derived_invariants(v: &HomologyVector, w: &HomologyVector, p: u32, delta: Sign) -> DerivedInvariants {
    let nums = numerators(v, w, p, delta);
    let over = |den: &BigInt| {
        (!den.is_zero()).then(|| {
            let [c, d, e, f] = nums.clone().map(|n| BigRational::new(n, den.clone()));
            Cdef { c, d, e, f }
        })
    };
    let (dv, dw) = (v.delta(p), w.delta(p));
    DerivedInvariants {
        delta_sign: delta,
        s: v.s(p),
        s_prime: w.s(p),
        cdef: over(&dv),
        cdef_prime: over(&dw),
        delta: dv,
        delta_prime: dw,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Pass,
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
}

impl Check {
    fn of(ok: bool) -> Check {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

/// The four necessary conditions for one choice of `(omega, Delta)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignConditions {
    pub omega: Sign,
    pub delta: Sign,
    pub congruence: Check,
    pub gcd: Check,
    pub divisibility: Check,
    pub inequality: Check,
}

impl SignConditions {
    pub fn passes(&self) -> bool {
        [self.congruence, self.gcd, self.divisibility, self.inequality]
            .iter()
            .all(|c| *c != Check::Fail)
    }

    pub fn key(&self) -> String {
        format!("omega={},delta={}", self.omega, self.delta)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub pairs: Vec<SignConditions>,
}

impl ConditionReport {
    /// Every sign pair fails some condition.
    pub fn obstructed(&self) -> bool {
        self.pairs.iter().all(|c| !c.passes())
    }

    pub fn pair(&self, omega: Sign, delta: Sign) -> &SignConditions {
        self.pairs
            .iter()
            .find(|c| c.omega == omega && c.delta == delta)
            .expect("all four pairs present")
    }
}

impl Serialize for ConditionReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, &SignConditions> = self.pairs.iter().map(|c| (c.key(), c)).collect();
        map.serialize(s)
    }
}

pub const SIGN_PAIRS: [(Sign, Sign); 4] = [
    (Sign::Plus, Sign::Plus),
    (Sign::Plus, Sign::Minus),
    (Sign::Minus, Sign::Plus),
    (Sign::Minus, Sign::Minus),
];

pub fn check_homology_obstruction(v: &HomologyVector, w: &HomologyVector, p: u32) -> ConditionReport {
    let pb = BigInt::from(p);
    let gcd_ok = gcd(&v.b, &v.y) == gcd(&w.b, &w.y);
    let (dv, dw) = (v.delta(p), w.delta(p));
    let pairs = SIGN_PAIRS
        .iter()
        .map(|&(omega, delta)| {
            let congruence = Check::of((&w.b - omega.apply(v.b.clone())) % &pb == BigInt::zero());
            let (divisibility, inequality) = if dv.is_zero() || dw.is_zero() {
                (Check::NotApplicable, Check::NotApplicable)
            } else {
                let nums = numerators(v, w, p, delta);
                let divides = nums.iter().all(|n| (n % &dv).is_zero() && (n % &dw).is_zero());
                let two = BigInt::from(2);
                let [nc, nd, ne, nf] = &nums;
                let ineq = (nc * &pb).abs() <= &two * nd.abs() || &pb * nf.abs() <= &two * ne.abs();
                (Check::of(divides), Check::of(ineq))
            };
            SignConditions { omega, delta, congruence, gcd: Check::of(gcd_ok), divisibility, inequality }
        })
        .collect();
    ConditionReport { pairs }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyHit {
    pub family: u8,
    pub omega: Option<Sign>,
    pub delta: Sign,
    /// `l` for family 2, `m` for family 3.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<JsonInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMatch {
    pub families: Vec<u8>,
    /// False when `delta * delta' = 0`: families 4 to 7 were not evaluated
    /// and an empty list proves nothing.
    pub complete: bool,
    pub hits: Vec<FamilyHit>,
}

/// Integer `t != 0` with `coef_i * t = rhs_i` for all `i`.
fn solve_scalar(eqs: &[(BigInt, BigInt)]) -> Option<BigInt> {
    let t = match eqs.iter().find(|(c, _)| !c.is_zero()) {
        Some((c, r)) => exact_div(r, c)?,
        None => BigInt::from(1),
    };
    (!t.is_zero() && eqs.iter().all(|(c, r)| c * &t == *r)).then_some(t)
}

pub fn match_vector_families(v: &HomologyVector, w: &HomologyVector, p: u32) -> FamilyMatch {
    let pb = BigInt::from(p);
    let eps = epsilon(p);
    let (a, x, b, y) = (&v.a, &v.x, &v.b, &v.y);
    let s = v.s(p);
    let dv = v.delta(p);
    let complete = !dv.is_zero() && !w.delta(p).is_zero();
    let mut hits = Vec::new();
    for &(omega, delta) in &SIGN_PAIRS {
        let o = |n: BigInt| omega.apply(n);
        let dl = |n: BigInt| delta.apply(n);
        let hit = |family, parameter: Option<BigInt>| FamilyHit {
            family,
            omega: Some(omega),
            delta,
            parameter: parameter.map(JsonInt),
        };

        if *w == HomologyVector::new(o(a.clone()), o(dl(x.clone())), o(b.clone()), o(dl(y.clone()))) {
            hits.push(hit(1, None));
        }
        let fam2 = [
            (x.clone(), o(w.a.clone()) - a),
            (BigInt::zero(), &w.x - o(dl(x.clone()))),
            (BigInt::zero(), &w.b - o(b.clone())),
            (-b, o(dl(w.y.clone())) - y),
        ];
        if let Some(l) = solve_scalar(&fam2) {
            hits.push(hit(2, Some(l)));
        }
        let fam3 = [
            (dl(eps.apply(y.clone())), o(w.a.clone()) - a),
            (s.clone(), o(w.x.clone()) - dl(x.clone())),
            (-dl(&pb * y), o(w.b.clone()) - b),
            (BigInt::zero(), &w.y - o(dl(y.clone()))),
        ];
        if let Some(m) = solve_scalar(&fam3) {
            hits.push(hit(3, Some(m)));
        }

        if !complete {
            continue;
        }
        let inv = derived_invariants(v, w, p, delta);
        let Some(cdef) = inv.cdef else { continue };
        let c_int = cdef.c.is_integer().then(|| cdef.c.to_integer());
        let f_int = cdef.f.is_integer().then(|| cdef.f.to_integer());

        if let (Some(c), Some(f)) = (&c_int, &f_int) {
            let cf = c * f;
            let fam4 = HomologyVector::new(
                o(a + &cf * &s) + f * x + eps.apply(c * y),
                dl(o(x.clone()) + c * &s),
                o(b.clone()) - c * &pb * y,
                dl(o((&cf * &pb + 1) * y) - f * b),
            );
            if *w == fam4 {
                hits.push(hit(4, None));
            }
            if p == 2 && (c.is_zero() || f.is_zero()) {
                let fam5 = HomologyVector::new(
                    -o(a.clone()) + f * x + c * y,
                    -dl(o(x.clone()) - c * &s),
                    -o(b.clone()) - 2 * c * y,
                    -dl(o(y.clone()) + f * b),
                );
                if *w == fam5 {
                    hits.push(hit(5, None));
                }
            }
        }
        if let Some(c) = &c_int {
            let cp = c * &pb;
            let fam7 = HomologyVector::new(
                o(a + x) + eps.apply(c * (y - b)),
                dl((&cp + omega.to_bigint()) * x + c * &s),
                (&cp + omega.to_bigint()) * b - &cp * y,
                dl(o(y - b)),
            );
            if *w == fam7 {
                hits.push(hit(7, None));
            }
        }
        // Family 6 has no omega; it is recorded once per Delta.
        if omega == Sign::Plus {
            if let Some([c, d, e, f]) = cdef.integers() {
                if let Some(de) = exact_div(&(&d - &e), &pb) {
                    let two = BigInt::from(2);
                    let ineq = (&c * &pb).abs() <= &two * d.abs() || &pb * f.abs() <= &two * e.abs();
                    let fam6 = HomologyVector::new(
                        &d * a + &f * x + eps.apply(de * b) + eps.apply(&c * y),
                        dl(&e * x + &c * &s),
                        &e * b - &c * &pb * y,
                        dl(&d * y - &f * b),
                    );
                    if ineq && *w == fam6 {
                        hits.push(FamilyHit { family: 6, omega: None, delta, parameter: None });
                    }
                }
            }
        }
    }
    let mut families: Vec<u8> = hits.iter().map(|h| h.family).collect();
    families.sort_unstable();
    families.dedup();
    FamilyMatch { families, complete, hits }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub element: SpElement,
    #[serde(serialize_with = "ser_display")]
    pub word: crate::words::GroupWord,
}

fn ser_display<T: fmt::Display, S: Serializer>(t: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub certificate: Option<Certificate>,
    /// When true, absence of a certificate is a proof that none exists.
    pub exhaustive: bool,
}

/// Rows of `g v = v'` as linear equations in `(k, l, m, n)`.
fn linear_system(v: &HomologyVector, w: &HomologyVector, p: u32, omega: Sign, delta: Sign) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let pb = BigInt::from(p);
    let eps = epsilon(p);
    let s = v.s(p);
    let z = BigInt::zero;
    let rows = vec![
        vec![s.clone(), v.x.clone(), delta.apply(eps.apply(v.y.clone())), -delta.apply(eps.apply(v.b.clone()))],
        vec![z(), z(), s, &pb * &v.x],
        vec![z(), z(), -delta.apply(&pb * &v.y), delta.apply(&pb * &v.b)],
        vec![delta.apply(&pb * &v.y), -delta.apply(v.b.clone()), z(), z()],
    ];
    let o = |n: &BigInt| omega.apply(n.clone());
    let rhs = vec![
        o(&w.a) - &v.a,
        o(&w.x) - delta.apply(v.x.clone()),
        o(&w.b) - &v.b,
        o(&w.y) - delta.apply(v.y.clone()),
    ];
    (rows, rhs)
}

/// `num / den` when it is an exact integer.
fn rational_to_int(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// Rational square root, if there is one.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Tuples in `[-bound, bound]^dim`, small max-norm first.
fn small_first(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-bound..=bound).map(move |t| {
                    let mut q = prefix.clone();
                    q.push(t);
                    q
                })
            })
            .collect();
    }
    out.sort_by_key(|t| (t.iter().map(|x| x.abs()).max().unwrap_or(0), t.clone()));
    out
}

struct SignSearch {
    found: Vec<Certificate>,
    exhaustive: bool,
}

fn search_sign_pair(v: &HomologyVector, w: &HomologyVector, p: u32, omega: Sign, delta: Sign, bound: u64) -> SignSearch {
    let (rows, rhs) = linear_system(v, w, p, omega, delta);
    let Some(sol) = linalg::solve(&rows, &rhs) else {
        return SignSearch { found: Vec::new(), exhaustive: true };
    };
    let pb = BigRational::from_integer(BigInt::from(p));
    let dr = BigRational::from_integer(delta.to_bigint());
    // Some B_p elements are outside the image; synthesis tells them apart,
    // and a stalled descent leaves the answer open.
    let stalled = Cell::new(false);
    let accept = |g: &[BigRational]| -> Option<Certificate> {
        let ints: Vec<BigInt> = g.iter().map(rational_to_int).collect::<Option<_>>()?;
        let [k, ell, m, n]: [BigInt; 4] = ints.try_into().ok()?;
        let e = SpElement { omega, k, ell, m, n, delta, p };
        if !(e.satisfies_determinant_condition() && e.in_b_p() && v.transform(&e.assemble()) == *w) {
            return None;
        }
        let element = e.canonical();
        match synthesize_word(&element) {
            Ok(word) => Some(Certificate { element, word }),
            Err(Error::NotInImage { .. }) => None,
            Err(_) => {
                stalled.set(true);
                None
            }
        }
    };
    let dim = sol.free.len();
    if dim == 0 {
        let found: Vec<Certificate> = accept(&sol.particular).into_iter().collect();
        return SignSearch { found, exhaustive: !stalled.get() };
    }
    let bound = bound.min(i64::MAX as u64) as i64;
    let mut found = Vec::new();
    let mut exhaustive = dim == 1;
    // det condition k n p + Delta k + n - l m as a function of the last free unknown
    let dc = |g: &[BigRational]| &g[0] * &g[3] * &pb + &dr * &g[0] + &g[3] - &g[1] * &g[2];
    let last = &sol.basis[dim - 1];
    for fixed in small_first(dim - 1, bound) {
        let mut g0 = sol.particular.clone();
        for (t, basis) in fixed.iter().zip(&sol.basis) {
            let t = BigRational::from_integer(BigInt::from(*t));
            for (gi, bi) in g0.iter_mut().zip(basis) {
                *gi += &t * bi;
            }
        }
        let u = last;
        let qa = &u[0] * &u[3] * &pb - &u[1] * &u[2];
        let qb = (&g0[0] * &u[3] + &g0[3] * &u[0]) * &pb + &dr * &u[0] + &u[3] - (&g0[1] * &u[2] + &g0[2] * &u[1]);
        let qc = dc(&g0);
        let roots: Vec<BigRational> = if qa.is_zero() {
            if qb.is_zero() {
                if qc.is_zero() {
                    exhaustive = false;
                    (-bound..=bound).map(|t| BigRational::from_integer(BigInt::from(t))).collect()
                } else {
                    Vec::new()
                }
            } else {
                vec![-&qc / &qb]
            }
        } else {
            let disc = &qb * &qb - BigRational::from_integer(BigInt::from(4)) * &qa * &qc;
            match rational_sqrt(&disc) {
                Some(r) => {
                    let two_a = BigRational::from_integer(BigInt::from(2)) * &qa;
                    let mut rs = vec![(-&qb - &r) / &two_a, (-&qb + &r) / &two_a];
                    rs.dedup();
                    rs
                }
                None => Vec::new(),
            }
        };
        for t in roots {
            if !t.is_integer() {
                continue;
            }
            let g: Vec<BigRational> = g0.iter().zip(u).map(|(gi, ui)| gi + &t * ui).collect();
            if let Some(c) = accept(&g) {
                found.push(c);
            }
        }
        if !found.is_empty() {
            break;
        }
    }
    SignSearch { found, exhaustive: exhaustive && !stalled.get() }
}

/// Decides whether some `g` in the image maps `v` to `v'`, searching
/// underdetermined systems within `search_bound`.
pub fn search_goeritz_matrix(v: &HomologyVector, w: &HomologyVector, p: u32, search_bound: u64) -> Result<SearchOutcome> {
    crate::int::check_p(p)?;
    let none = |exhaustive| Ok(SearchOutcome { certificate: None, exhaustive });
    if v.is_zero() || w.is_zero() {
        if v.is_zero() && w.is_zero() {
            let e = SpElement::identity(p)?;
            let word = synthesize_word(&e)?;
            return Ok(SearchOutcome { certificate: Some(Certificate { element: e, word }), exhaustive: true });
        }
        return none(true);
    }
    // delta is preserved by the whole image, as are the gcd and the
    // residue of b up to sign.
    let pb = BigInt::from(p);
    let residue_ok = Sign::BOTH
        .iter()
        .any(|o| ((&w.b - o.apply(v.b.clone())) % &pb).is_zero());
    if v.delta(p) != w.delta(p) || gcd(&v.b, &v.y) != gcd(&w.b, &w.y) || !residue_ok {
        return none(true);
    }
    let mut exhaustive = true;
    let mut best: Option<(BigInt, u64, Certificate)> = None;
    for &(omega, delta) in &SIGN_PAIRS {
        let r = search_sign_pair(v, w, p, omega, delta, search_bound);
        exhaustive &= r.exhaustive;
        for c in r.found {
            let key = (c.element.kappa(), c.word.length());
            if best.as_ref().is_none_or(|(k, l, _)| key < (k.clone(), *l)) {
                best = Some((key.0, key.1, c));
            }
        }
    }
    Ok(SearchOutcome { certificate: best.map(|(_, _, c)| c), exhaustive })
}

pub fn find_goeritz_matrix(v: &HomologyVector, w: &HomologyVector, p: u32, search_bound: u64) -> Option<(SpElement, crate::words::GroupWord)> {
    search_goeritz_matrix(v, w, p, search_bound)
        .ok()?
        .certificate
        .map(|c| (c.element, c.word))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "certified-equivalent-on-homology")]
    Certified,
    #[serde(rename = "obstructed")]
    Obstructed,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified-equivalent-on-homology",
            Verdict::Obstructed => "obstructed",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    #[serde(with = "crate::int::serde_bigint")]
    pub s: BigInt,
    #[serde(with = "crate::int::serde_bigint")]
    pub s_prime: BigInt,
    #[serde(with = "crate::int::serde_bigint")]
    pub delta: BigInt,
    #[serde(with = "crate::int::serde_bigint")]
    pub delta_prime: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub p: u32,
    pub v: HomologyVector,
    pub v_prime: HomologyVector,
    pub invariants: Invariants,
    pub conditions: ConditionReport,
    pub families: Vec<u8>,
    pub families_complete: bool,
    pub family_hits: Vec<FamilyHit>,
    pub certificate: Option<Certificate>,
    pub search_exhaustive: bool,
    pub verdict: Verdict,
    pub reason: String,
}

/// Runs the conditions, the family match and the solver, and combines
/// them into one verdict.
pub fn obstruct(v: &HomologyVector, w: &HomologyVector, p: u32, search_bound: u64) -> Result<ObstructionReport> {
    crate::int::check_p(p)?;
    let conditions = check_homology_obstruction(v, w, p);
    let fam = match_vector_families(v, w, p);
    let search = search_goeritz_matrix(v, w, p, search_bound)?;
    let (verdict, reason) = if let Some(c) = &search.certificate {
        debug_assert!(conditions.pair(c.element.omega, c.element.delta).passes());
        (Verdict::Certified, "found g in the image with g v = v'".to_string())
    } else if conditions.obstructed() {
        (Verdict::Obstructed, "every (omega, Delta) fails one of the four necessary conditions".into())
    } else if fam.complete && fam.families.is_empty() {
        (Verdict::Obstructed, "no vector family matches".into())
    } else if search.exhaustive {
        (Verdict::Obstructed, "the linear system has no admissible integer solution".into())
    } else {
        (Verdict::Inconclusive, format!("no solution with free parameters in [-{search_bound}, {search_bound}]"))
    };
    Ok(ObstructionReport {
        p,
        v: v.clone(),
        v_prime: w.clone(),
        invariants: Invariants { s: v.s(p), s_prime: w.s(p), delta: v.delta(p), delta_prime: w.delta(p) },
        conditions,
        families: fam.families,
        families_complete: fam.complete,
        family_hits: fam.hits,
        certificate: search.certificate,
        search_exhaustive: search.exhaustive,
        verdict,
        reason,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{decompose_sp, enumerate_image};
    use crate::star::star;
    use crate::words::{Generator, GroupWord, Letter};
    use proptest::prelude::*;

    fn hv(a: i64, x: i64, b: i64, y: i64) -> HomologyVector {
        HomologyVector::new(a, x, b, y)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn derived_examples() {
        let inv = derived_invariants(&hv(0, 0, 1, 0), &hv(0, 0, 1, 1), 2, Sign::Minus);
        assert_eq!((inv.s.clone(), inv.s_prime.clone()), (1.into(), 1.into()));
        assert_eq!((inv.delta.clone(), inv.delta_prime.clone()), (1.into(), 1.into()));
        assert_eq!(inv.cdef.unwrap(), Cdef { c: q(0), d: q(1), e: q(1), f: q(1) });
        let v = hv(1, 1, 1, 1);
        assert_eq!((v.s(2), v.delta(2)), (3.into(), 5.into()));
        let inv = derived_invariants(&hv(0, 0, 0, 0), &hv(0, 0, 0, 0), 5, Sign::Plus);
        assert!(inv.cdef.is_none() && inv.cdef_prime.is_none() && inv.delta.is_zero());
    }

    #[test]
    fn determinant_condition_examples() {
        use crate::lattice::determinant_condition as dc;
        let z = BigInt::zero;
        assert!(dc(&z(), &z(), &z(), &z(), 7, Sign::Plus));
        assert!(dc(&z(), &1.into(), &z(), &z(), 2, Sign::Minus));
        assert!(!dc(&1.into(), &z(), &z(), &z(), 5, Sign::Plus));
    }

    #[test]
    fn condition_examples() {
        let r = check_homology_obstruction(&hv(0, 0, 1, 0), &hv(0, 0, 6, 0), 5);
        assert!(r.obstructed());
        assert!(r.pairs.iter().all(|c| c.gcd == Check::Fail));
        assert_eq!(r.pair(Sign::Plus, Sign::Plus).congruence, Check::Pass);
        assert_eq!(r.pair(Sign::Minus, Sign::Plus).congruence, Check::Fail);

        let r = check_homology_obstruction(&hv(0, 0, 1, 0), &hv(0, 0, 1, 1), 2);
        let c = r.pair(Sign::Plus, Sign::Minus);
        assert!(c.passes() && c.divisibility == Check::Pass && c.inequality == Check::Pass);

        let v = hv(2, -1, 3, 5);
        let r = check_homology_obstruction(&v, &v, 7);
        assert!(r.pair(Sign::Plus, Sign::Plus).passes());
    }

    #[test]
    fn family_examples() {
        let m = match_vector_families(&hv(1, 2, 3, 4), &hv(-1, -2, -3, -4), 5);
        assert!(m.families.contains(&1));
        assert!(m.hits.iter().any(|h| h.family == 1 && h.omega == Some(Sign::Minus) && h.delta == Sign::Plus));

        let m = match_vector_families(&hv(0, 0, 1, 0), &hv(0, 0, 1, 1), 2);
        assert!(m.hits.iter().any(|h| h.family == 2
            && h.omega == Some(Sign::Plus)
            && h.delta == Sign::Minus
            && h.parameter == Some(JsonInt(1.into()))));

        // delta = 0 here, so only families 1-3 can be decided
        let m = match_vector_families(&hv(0, 0, 0, 1), &hv(0, 0, 0, 2), 3);
        assert!(m.families.is_empty());
        assert!(!m.complete);
    }

    #[test]
    fn solver_examples() {
        let (e, w) = find_goeritz_matrix(&hv(0, 0, 1, 0), &hv(0, 0, 1, 1), 2, 16).unwrap();
        assert_eq!(e, SpElement::new(2, Sign::Plus, 0, 1, 0, 0, Sign::Minus).unwrap());
        assert_eq!(w, GroupWord::parse("g", 2).unwrap());

        let (e, w) = find_goeritz_matrix(&hv(1, 0, 0, 0), &hv(1, 0, 0, 0), 5, 16).unwrap();
        assert_eq!(e, SpElement::identity(5).unwrap());
        assert!(w.is_empty());

        assert!(find_goeritz_matrix(&hv(0, 0, 1, 0), &hv(0, 0, 6, 0), 5, 16).is_none());
    }

    #[test]
    fn verdicts() {
        let r = obstruct(&hv(0, 0, 1, 0), &hv(0, 0, 6, 0), 5, 16).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        let r = obstruct(&hv(0, 0, 1, 0), &hv(0, 0, 1, 1), 2, 16).unwrap();
        assert_eq!(r.verdict, Verdict::Certified);
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["certificate"]["word"], "g");
        assert_eq!(j["conditions"]["omega=+1,delta=-1"]["gcd"], "pass");
        assert_eq!(j["verdict"], "certified-equivalent-on-homology");
        let r = obstruct(&hv(0, 0, 0, 1), &hv(0, 0, 0, 2), 3, 16).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
    }

    #[test]
    fn witness_target_is_not_reachable_through_b5() {
        // The outside-B_5 matrix sends e_a to (11, 25, 0, 0); the image
        // cannot, because the solver only accepts B_p elements.
        let witness = SpElement::new(5, Sign::Plus, 2, 7, 5, 3, Sign::Plus).unwrap();
        let v = hv(0, 0, 1, 0);
        let w = v.transform(&witness.assemble());
        let out = search_goeritz_matrix(&v, &w, 5, 32).unwrap();
        if let Some(c) = out.certificate {
            assert!(c.element.in_b_p());
            assert_eq!(v.transform(&c.element.assemble()), w);
        }
    }

    #[test]
    fn vector_text() {
        assert_eq!("1,-2,3,0".parse::<HomologyVector>().unwrap(), hv(1, -2, 3, 0));
        assert_eq!("(1, 2, 3, 4)".parse::<HomologyVector>().unwrap(), hv(1, 2, 3, 4));
        assert!("1,2,3".parse::<HomologyVector>().is_err());
        assert_eq!(serde_json::to_string(&hv(1, 2, 3, -4)).unwrap(), "[1,2,3,-4]");
    }

    #[test]
    fn delta_is_an_invariant_of_the_image() {
        for p in [2, 3, 5] {
            for e in enumerate_image(p, 7) {
                let m = e.assemble();
                for v in [hv(1, 2, -1, 3), hv(0, 1, 0, -2), hv(3, 0, 1, 0)] {
                    assert_eq!(v.transform(&m).delta(p), v.delta(p));
                }
            }
        }
    }

    fn arb_case() -> impl Strategy<Value = (u32, HomologyVector, SpElement)> {
        (prop_oneof![Just(2u32), Just(3u32), Just(5u32)], prop::array::uniform4(-6i64..=6), prop::collection::vec((0usize..4, -2i64..=2), 0..7))
            .prop_map(|(p, [a, x, b, y], ls)| {
                let alphabet = Generator::alphabet(p);
                let letters = ls.into_iter().map(|(i, e)| Letter::new(alphabet[i % alphabet.len()], e));
                let word = GroupWord::from_letters(p, letters).unwrap();
                (p, hv(a, x, b, y), decompose_sp(&star(&word), p).unwrap())
            })
    }

    proptest! {
        #[test]
        fn soundness((p, v, e) in arb_case()) {
            let w = v.transform(&e.assemble());
            let conds = check_homology_obstruction(&v, &w, p);
            prop_assert!(conds.pair(e.omega, e.delta).passes());
            let inv = derived_invariants(&v, &w, p, e.delta);
            if !inv.delta.is_zero() {
                prop_assert_eq!(&inv.delta, &inv.delta_prime);
                let pb = BigInt::from(p);
                let o = |n: BigInt| BigRational::from_integer(e.omega.apply(n));
                let cdef = inv.cdef.unwrap();
                prop_assert_eq!(cdef.c, o(e.delta.apply(e.m.clone())));
                prop_assert_eq!(cdef.d, o(&e.k * &pb + 1));
                prop_assert_eq!(cdef.e, o(e.delta.apply(&e.n * &pb) + 1));
                prop_assert_eq!(cdef.f, o(e.ell.clone()));
                prop_assert!(!match_vector_families(&v, &w, p).families.is_empty());
            }
            let out = search_goeritz_matrix(&v, &w, p, 24).unwrap();
            if let Some(c) = &out.certificate {
                prop_assert_eq!(v.transform(&c.element.assemble()), w.clone());
                prop_assert_eq!(star(&c.word), c.element.assemble());
            } else {
                prop_assert!(!out.exhaustive);
            }
        }

        #[test]
        fn lemma_identities(p in 2u32..9, v in prop::array::uniform4(-9i64..=9), w in prop::array::uniform4(-9i64..=9), minus in any::<bool>()) {
            let (v, w) = (hv(v[0], v[1], v[2], v[3]), hv(w[0], w[1], w[2], w[3]));
            let delta = if minus { Sign::Minus } else { Sign::Plus };
            let inv = derived_invariants(&v, &w, p, delta);
            if let (Some(c), Some(c2)) = (inv.cdef, inv.cdef_prime) {
                let pq = BigRational::from_integer(p.into());
                let ratio = BigRational::new(inv.delta_prime.clone(), inv.delta.clone());
                prop_assert_eq!(&c.c * &c.f * &pq - &c.d * &c.e, -ratio.clone());
                prop_assert_eq!(&c2.c * &c2.f * &pq - &c2.d * &c2.e, -ratio.recip());
            }
        }
    }
}
