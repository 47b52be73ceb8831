//! The block-triangular group `S_p`, its parameterization by
//! `(omega, k, l, m, n, Delta)`, and the subset `B_p` cut out by the two
//! inequalities.

mod enumerate;
mod synthesis;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::int::{check_p, epsilon, exact_div, serde_bigint, Sign};
use crate::matrix::{RepMatrix2, RepMatrix4};

pub use enumerate::enumerate_image;
pub use synthesis::{synthesize_word, DescentStep, Move};

/// One element of `S_p`.
///
/// For `p >= 3` the parameters are determined by the matrix. For `p = 2`
/// every matrix has exactly two parameter tuples (`omega` can be traded
/// for `k -> -k-1, l -> -l, m -> -m, n -> -n-Delta`); the canonical one has
/// `omega = +1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpElement {
    pub omega: Sign,
    #[serde(with = "serde_bigint")]
    pub k: BigInt,
    #[serde(with = "serde_bigint")]
    pub ell: BigInt,
    #[serde(with = "serde_bigint")]
    pub m: BigInt,
    #[serde(with = "serde_bigint")]
    pub n: BigInt,
    pub delta: Sign,
    pub p: u32,
}

pub fn determinant_condition(k: &BigInt, ell: &BigInt, m: &BigInt, n: &BigInt, p: u32, delta: Sign) -> bool {
    let p = BigInt::from(p);
    (k * n * &p + delta.apply(k.clone()) + n - ell * m).is_zero()
}

impl SpElement {
    /// Checks `p` and the determinant condition, then canonicalizes.
    pub fn new(
        p: u32,
        omega: Sign,
        k: impl Into<BigInt>,
        ell: impl Into<BigInt>,
        m: impl Into<BigInt>,
        n: impl Into<BigInt>,
        delta: Sign,
    ) -> Result<SpElement> {
        check_p(p)?;
        let e = SpElement { omega, k: k.into(), ell: ell.into(), m: m.into(), n: n.into(), delta, p };
        if !e.satisfies_determinant_condition() {
            return Err(Error::DeterminantCondition);
        }
        Ok(e.canonical())
    }

    pub fn identity(p: u32) -> Result<SpElement> {
        SpElement::new(p, Sign::Plus, 0, 0, 0, 0, Sign::Plus)
    }

    pub fn satisfies_determinant_condition(&self) -> bool {
        determinant_condition(&self.k, &self.ell, &self.m, &self.n, self.p, self.delta)
    }

    fn pb(&self) -> BigInt {
        BigInt::from(self.p)
    }

    /// `kp + 1`
    pub fn a11(&self) -> BigInt {
        &self.k * self.pb() + 1
    }

    /// `np + Delta`
    pub fn a22(&self) -> BigInt {
        &self.n * self.pb() + self.delta.to_bigint()
    }

    pub fn a_block(&self) -> RepMatrix2 {
        RepMatrix2::from_rows([[self.a11(), self.ell.clone()], [&self.m * self.pb(), self.a22()]])
    }

    pub fn d_block(&self) -> RepMatrix2 {
        RepMatrix2::from_rows([
            [&self.k - self.delta.apply(self.n.clone()), self.delta.apply(self.m.clone())],
            [self.m.clone(), BigInt::zero()],
        ])
    }

    /// `(A^T)^{-1}`, written out.
    pub fn lower_right(&self) -> RepMatrix2 {
        let d = self.delta;
        let pb = self.pb();
        RepMatrix2::from_rows([
            [d.apply(&self.n * &pb) + 1, -d.apply(&self.m * &pb)],
            [-d.apply(self.ell.clone()), d.apply(self.a11())],
        ])
    }

    /// `q` of the assembled matrix: `omega * A`.
    pub fn q_image(&self) -> RepMatrix2 {
        let a = self.a_block();
        match self.omega {
            Sign::Plus => a,
            Sign::Minus => -a,
        }
    }

    pub fn assemble(&self) -> RepMatrix4 {
        let ud = self.d_block().scale(&epsilon(self.p).to_bigint());
        let m = RepMatrix4::from_blocks(&self.a_block(), &ud, &RepMatrix2::zero(), &self.lower_right());
        match self.omega {
            Sign::Plus => m,
            Sign::Minus => -m,
        }
    }

    pub fn kappa(&self) -> BigInt {
        self.a11().abs() + self.a22().abs()
    }

    pub fn in_b_p(&self) -> bool {
        let two = BigInt::from(2);
        let pb = self.pb();
        (&self.m * &pb).abs() <= &two * self.a11().abs() || &pb * self.ell.abs() <= two * self.a22().abs()
    }

    /// Representative with `omega = +1` when `p = 2`; unchanged otherwise.
    pub fn canonical(mut self) -> SpElement {
        if self.p == 2 && self.omega == Sign::Minus {
            self.omega = Sign::Plus;
            self.k = -&self.k - 1;
            self.ell = -&self.ell;
            self.m = -&self.m;
            self.n = -&self.n - self.delta.to_bigint();
        }
        self
    }

    /// Reads off the parameters of `omega * A` for a 2x2 block, if it has
    /// the `A_p` shape.
    pub fn from_q(a: &RepMatrix2, p: u32) -> Option<SpElement> {
        check_p(p).ok()?;
        let delta = Sign::from_unit(&a.det2())?;
        let pb = BigInt::from(p);
        for omega in Sign::BOTH {
            let s = omega.to_bigint();
            let (a11, a12, a21, a22) = (a.a() * &s, a.b() * &s, a.c() * &s, a.d() * &s);
            let Some(k) = exact_div(&(a11 - 1), &pb) else { continue };
            let Some(m) = exact_div(&a21, &pb) else { continue };
            let Some(n) = exact_div(&(a22 - delta.to_bigint()), &pb) else { continue };
            let e = SpElement { omega, k, ell: a12, m, n, delta, p };
            debug_assert!(e.satisfies_determinant_condition());
            return Some(e.canonical());
        }
        None
    }

    pub fn compose(&self, other: &SpElement) -> Result<SpElement> {
        compose_sp(self, other)
    }

    pub fn inverse(&self) -> SpElement {
        let inv = self.q_image().inverse_unimodular().expect("det is a unit");
        SpElement::from_q(&inv, self.p).expect("A_p is closed under inversion")
    }
}

impl fmt::Display for SpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(omega={}, k={}, l={}, m={}, n={}, Delta={}, p={})",
            self.omega, self.k, self.ell, self.m, self.n, self.delta, self.p
        )
    }
}

pub fn a_block(e: &SpElement) -> RepMatrix2 {
    e.a_block()
}

pub fn d_block(e: &SpElement) -> RepMatrix2 {
    e.d_block()
}

pub fn assemble(e: &SpElement) -> Result<RepMatrix4> {
    if !e.satisfies_determinant_condition() {
        return Err(Error::DeterminantCondition);
    }
    Ok(e.assemble())
}

pub fn kappa(e: &SpElement) -> BigInt {
    e.kappa()
}

pub fn in_b_p(e: &SpElement) -> bool {
    e.in_b_p()
}

/// Whether `M` or `-M` has the shape `[[kp+1, l], [mp, np+Delta]]` with
/// determinant `Delta = +-1`.
pub fn in_a_p(m: &RepMatrix2, p: u32) -> bool {
    SpElement::from_q(m, p).is_some()
}

/// The unique canonical parameters of a matrix in `S_p`.
pub fn decompose_sp(mat: &RepMatrix4, p: u32) -> Result<SpElement> {
    check_p(p)?;
    let not_in = |reason: &str| Error::NotInSp { p, reason: reason.to_string() };
    if !mat.lower_left().rows().iter().flatten().all(|x| x.is_zero()) {
        return Err(not_in("lower-left block is nonzero"));
    }
    let e = SpElement::from_q(&mat.upper_left(), p)
        .ok_or_else(|| not_in("upper-left block does not match the mod-p pattern with determinant +-1"))?;
    let back = e.assemble();
    if back.upper_right() != mat.upper_right() {
        return Err(not_in("upper-right block differs from epsilon * D_A"));
    }
    if back.lower_right() != mat.lower_right() {
        return Err(not_in("lower-right block differs from (A^T)^-1"));
    }
    Ok(e)
}

/// Closed-form product, agreeing with the product of the assembled
/// matrices.
pub fn compose_sp(e1: &SpElement, e2: &SpElement) -> Result<SpElement> {
    if e1.p != e2.p {
        return Err(Error::MismatchedP { left: e1.p, right: e2.p });
    }
    let p = BigInt::from(e1.p);
    let (d1, d2) = (e1.delta.to_bigint(), e2.delta.to_bigint());
    let (k1, l1, m1, n1) = (&e1.k, &e1.ell, &e1.m, &e1.n);
    let (k2, l2, m2, n2) = (&e2.k, &e2.ell, &e2.m, &e2.n);
    let k3 = k1 * k2 * &p + k1 + k2 + l1 * m2;
    let l3 = l2 * (k1 * &p + 1) + l1 * (n2 * &p + &d2);
    let m3 = m1 * (k2 * &p + 1) + m2 * (n1 * &p + &d1);
    let n3 = m1 * l2 + n1 * n2 * &p + n1 * &d2 + n2 * &d1;
    let e = SpElement {
        omega: e1.omega * e2.omega,
        k: k3,
        ell: l3,
        m: m3,
        n: n3,
        delta: e1.delta * e2.delta,
        p: e1.p,
    };
    debug_assert!(e.satisfies_determinant_condition());
    Ok(e.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::star::star;
    use crate::words::GroupWord;
    use proptest::prelude::*;

    fn el(p: u32, omega: i64, k: i64, l: i64, m: i64, n: i64, delta: i64) -> SpElement {
        let s = |x: i64| if x > 0 { Sign::Plus } else { Sign::Minus };
        SpElement::new(p, s(omega), k, l, m, n, s(delta)).unwrap()
    }

    fn word(text: &str, p: u32) -> GroupWord {
        GroupWord::parse(text, p).unwrap()
    }

    #[test]
    fn a_block_examples() {
        assert_eq!(el(2, 1, 0, 1, 0, 0, -1).a_block(), RepMatrix2::from_i64([[1, 1], [0, -1]]));
        assert!(SpElement::identity(7).unwrap().a_block().is_identity());
        assert_eq!(el(5, 1, 1, 1, 1, 0, 1).a_block(), RepMatrix2::from_i64([[6, 1], [5, 1]]));
    }

    #[test]
    fn d_block_examples() {
        assert_eq!(el(2, 1, 0, 1, 0, 0, -1).d_block(), RepMatrix2::zero());
        assert_eq!(el(5, 1, 0, 0, -1, 0, -1).d_block(), RepMatrix2::from_i64([[0, 1], [-1, 0]]));
        assert_eq!(SpElement::identity(5).unwrap().d_block(), RepMatrix2::zero());
    }

    #[test]
    fn assemble_matches_generators() {
        assert_eq!(el(2, 1, 0, 1, 0, 0, -1).assemble(), star(&word("g", 2)));
        assert_eq!(el(5, 1, 0, 0, -1, 0, -1).assemble(), star(&word("s", 5)));
        assert!(SpElement::identity(3).unwrap().assemble().is_identity());
        let bad = SpElement { k: BigInt::one(), ..SpElement::identity(5).unwrap() };
        assert_eq!(assemble(&bad), Err(Error::DeterminantCondition));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose_sp(&star(&word("g", 2)), 2).unwrap(), el(2, 1, 0, 1, 0, 0, -1));
        assert_eq!(decompose_sp(&RepMatrix4::identity(), 4).unwrap(), SpElement::identity(4).unwrap());
        let mut m = RepMatrix4::identity();
        m[(2, 0)] = BigInt::one();
        assert!(matches!(decompose_sp(&m, 3), Err(Error::NotInSp { .. })));
        let mut m = star(&word("s", 5));
        m[(0, 3)] = BigInt::from(2);
        assert!(matches!(decompose_sp(&m, 5), Err(Error::NotInSp { .. })));
        // rho's image is fine at p = 2 and off-pattern at p = 5
        let rho = star(&word("r", 2));
        assert!(decompose_sp(&rho, 2).is_ok());
        assert!(decompose_sp(&rho, 5).is_err());
    }

    #[test]
    fn p2_twin_parameters_share_a_matrix() {
        let plus = SpElement { omega: Sign::Plus, k: 0.into(), ell: 1.into(), m: (-1).into(), n: (-1).into(), delta: Sign::Plus, p: 2 };
        let minus = SpElement { omega: Sign::Minus, k: (-1).into(), ell: (-1).into(), m: 1.into(), n: 0.into(), delta: Sign::Plus, p: 2 };
        assert!(plus.satisfies_determinant_condition() && minus.satisfies_determinant_condition());
        assert_eq!(plus.assemble(), minus.assemble());
        assert_eq!(plus.assemble(), star(&word("r", 2)));
        assert_eq!(minus.canonical(), plus);
    }

    #[test]
    fn compose_examples() {
        let beta = decompose_sp(&star(&word("b", 5)), 5).unwrap();
        let gamma = decompose_sp(&star(&word("g", 5)), 5).unwrap();
        assert_eq!(compose_sp(&beta, &gamma).unwrap(), el(5, 1, 0, 1, 0, 0, 1));
        assert_eq!(compose_sp(&gamma, &SpElement::identity(5).unwrap()).unwrap(), gamma);
        assert_eq!(compose_sp(&gamma, &gamma).unwrap(), SpElement::identity(5).unwrap());
        assert!(compose_sp(&gamma, &SpElement::identity(3).unwrap()).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(in_a_p(&RepMatrix2::from_i64([[6, 1], [5, 1]]), 5));
        assert!(!in_a_p(&RepMatrix2::from_i64([[2, 0], [0, 2]]), 5));
        assert!(in_a_p(&RepMatrix2::identity(), 9));
        assert!(in_a_p(&RepMatrix2::from_i64([[-6, -1], [-5, -1]]), 5));
        assert!(!in_a_p(&RepMatrix2::from_i64([[2, 1], [1, 1]]), 5));
        assert!(el(5, 1, 1, 1, 1, 0, 1).in_b_p());
        assert!(!el(5, 1, 2, 7, 5, 3, 1).in_b_p());
        assert!(SpElement::identity(5).unwrap().in_b_p());
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(SpElement::identity(5).unwrap().kappa(), BigInt::from(2));
        assert_eq!(el(5, 1, 1, 1, 1, 0, 1).kappa(), BigInt::from(7));
        assert_eq!(el(5, 1, 2, 7, 5, 3, 1).kappa(), BigInt::from(27));
    }

    #[test]
    fn json_shape() {
        let e = el(5, 1, 1, 1, 1, 0, 1);
        let j = serde_json::to_string(&e).unwrap();
        assert_eq!(j, r#"{"omega":1,"k":1,"ell":1,"m":1,"n":0,"delta":1,"p":5}"#);
        let back: SpElement = serde_json::from_str(&j).unwrap();
        assert_eq!(back, e);
    }

    fn arb_element(p: u32) -> impl Strategy<Value = SpElement> {
        // Random words give random elements without solving the
        // determinant condition by hand.
        let alphabet = crate::words::Generator::alphabet(p);
        prop::collection::vec((0..alphabet.len(), -3i64..=3), 0..10).prop_map(move |ls| {
            let letters = ls
                .into_iter()
                .map(|(i, e)| crate::words::Letter::new(alphabet[i], e));
            let w = GroupWord::from_letters(p, letters).unwrap();
            decompose_sp(&star(&w), p).unwrap()
        })
    }

    fn arb_pair() -> impl Strategy<Value = (SpElement, SpElement)> {
        prop_oneof![Just(2u32), Just(3u32), Just(4u32), Just(5u32), Just(11u32)]
            .prop_flat_map(|p| (arb_element(p), arb_element(p)))
    }

    proptest! {
        #[test]
        fn compose_matches_matrix_product((e1, e2) in arb_pair()) {
            let c = compose_sp(&e1, &e2).unwrap();
            prop_assert_eq!(c.assemble(), &e1.assemble() * &e2.assemble());
            prop_assert_eq!(decompose_sp(&(&e1.assemble() * &e2.assemble()), e1.p).unwrap(), c);
        }

        #[test]
        fn cocycle_identity((e1, e2) in arb_pair()) {
            let eps = epsilon(e1.p).to_bigint();
            let c1 = e1.q_image();
            let lhs = &(&c1 * &e2.d_block().scale(&e2.omega.to_bigint()))
                + &(&e1.d_block().scale(&e1.omega.to_bigint()) * &e2.lower_right().scale(&e2.omega.to_bigint()));
            let c3 = compose_sp(&e1, &e2).unwrap();
            prop_assert_eq!(lhs.scale(&eps), c3.d_block().scale(&(c3.omega.to_bigint() * &eps)));
        }

        #[test]
        fn round_trip(e in prop_oneof![arb_element(2), arb_element(3), arb_element(6)]) {
            prop_assert_eq!(decompose_sp(&e.assemble(), e.p).unwrap(), e.clone());
            prop_assert_eq!(SpElement::from_q(&e.q_image(), e.p).unwrap(), e.clone());
            prop_assert!(compose_sp(&e, &e.inverse()).unwrap().assemble().is_identity());
        }
    }
}
