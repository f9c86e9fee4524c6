//! Exact scalars: arbitrary-precision rationals and sparse multivariate
//! polynomials over them.
//!
//! `Rat` is the coefficient field for every concrete computation in the
//! crate; `MultiPoly` is the scalar ring used by the generic-evaluation
//! oracle, where algebra elements carry indeterminate coordinates.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal `{0}`")]
    BadLiteral(String),
}

/// An exact rational number. Always stored reduced with a positive
/// denominator; zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`, reduced. Panics on a zero denominator; use only with
    /// denominators known to be nonzero.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Multiplicative inverse. Fails on zero.
    pub fn inv(&self) -> Result<Rat, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Rat(self.0.recip()))
        }
    }

    /// Division by a value known to be nonzero (pivots, cocycle entries).
    pub fn div_exact(&self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn pow_u32(&self, exp: u32) -> Rat {
        let mut acc = Rat::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = ScalarError;

    /// Accepts `p` or `p/q`, optionally with a leading `-`.
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let bad = || ScalarError::BadLiteral(s.to_string());
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num_str.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den_str.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
    };
}

rat_binop!(Add, add, +);
rat_binop!(Sub, sub, -);
rat_binop!(Mul, mul, *);

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

/// Sorted `(variable, exponent)` list with positive exponents; the key type
/// of `MultiPoly`.
pub type VarPowers = Vec<(u32, u32)>;

/// A sparse multivariate polynomial over `Rat`. No zero coefficients are
/// stored and term keys are canonical, so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MultiPoly {
    terms: BTreeMap<VarPowers, Rat>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { terms }
    }

    /// The indeterminate `t_i`.
    pub fn var(i: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(i, 1)], Rat::one());
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VarPowers, &Rat)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, key: VarPowers, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<u32> {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|(v, _)| *v))
            .collect()
    }

    pub fn degree_in(&self, var: u32) -> u32 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().filter(|(v, _)| *v == var).map(|(_, e)| *e))
            .max()
            .unwrap_or(0)
    }

    /// Substitutes a rational value for one indeterminate.
    pub fn substitute(&self, var: u32, value: &Rat) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (key, coeff) in &self.terms {
            let mut exp = 0;
            let rest: VarPowers = key
                .iter()
                .filter(|(v, e)| {
                    if *v == var {
                        exp = *e;
                        false
                    } else {
                        true
                    }
                })
                .copied()
                .collect();
            out.insert_term(rest, coeff * &value.pow_u32(exp));
        }
        out
    }
}

fn merge_keys(a: &VarPowers, b: &VarPowers) -> VarPowers {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.insert_term(k.clone(), v.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.insert_term(k.clone(), -v);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                out.insert_term(merge_keys(ka, kb), va * vb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (key, coeff)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{coeff}")?;
            for (var, exp) in key {
                write!(f, "*t{var}")?;
                if *exp > 1 {
                    write!(f, "^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

/// Scalar coefficients an algebra element may carry: exact rationals for
/// concrete elements, polynomials for generic ones.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rat) -> Self;
    fn from_rat(c: &Rat) -> Self;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rat) -> Self {
        self * c
    }
    fn from_rat(c: &Rat) -> Self {
        c.clone()
    }
}

impl Scalar for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rat) -> Self {
        MultiPoly::scale(self, c)
    }
    fn from_rat(c: &Rat) -> Self {
        MultiPoly::constant(c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_arithmetic_normalizes() {
        let half = Rat::new(1, 2);
        let third = Rat::new(1, 3);
        assert_eq!(&half + &third, Rat::new(5, 6));
        assert_eq!(Rat::new(2, 4), Rat::new(1, 2));
        assert_eq!(Rat::new(-3, 7).inv().unwrap(), Rat::new(-7, 3));
        assert_eq!(Rat::new(-3, 7).inv().unwrap().to_string(), "-7/3");
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(Rat::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn rational_literals_round_trip() {
        for s in ["0", "7", "-3", "2/3", "-11/4"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("4/6".parse::<Rat>().unwrap().to_string(), "2/3");
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn poly_products_commute_on_variables() {
        let t1 = MultiPoly::var(1);
        let t2 = MultiPoly::var(2);
        let p = &(&t1 * &t2) + &(&t2 * &t1);
        let expected = (&t1 * &t2).scale(&Rat::from_i64(2));
        assert_eq!(p, expected);
    }

    #[test]
    fn poly_cancellation() {
        let t1 = MultiPoly::var(1);
        let t2 = MultiPoly::var(2);
        let p = &(&t1 * &t1) + &t2;
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn binomial_square_has_three_terms() {
        let s = &MultiPoly::var(1) + &MultiPoly::var(2);
        let sq = &s * &s;
        assert_eq!(sq.num_terms(), 3);
        let mut coeffs: Vec<String> = sq.terms().map(|(_, c)| c.to_string()).collect();
        coeffs.sort();
        assert_eq!(coeffs, vec!["1", "1", "2"]);
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec(
            (
                proptest::collection::vec((0u32..4, 1u32..3), 0..3),
                -5i64..6,
            ),
            0..5,
        )
        .prop_map(|raw| {
            let mut p = MultiPoly::zero();
            for (mut key, c) in raw {
                key.sort();
                key.dedup_by(|a, b| {
                    if a.0 == b.0 {
                        b.1 += a.1;
                        true
                    } else {
                        false
                    }
                });
                p.insert_term(key, Rat::from_i64(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn poly_ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&(&a + &b) - &(&b + &a)).is_zero());
            prop_assert!((&a - &a).is_zero());
        }
    }
}
