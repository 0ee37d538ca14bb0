//! Exact arithmetic in Q and in the field Q(i, √2).

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a rational")]
    ParseRational(String),
    #[error("cannot parse {0:?} as a scalar (expected a|b|c|d)")]
    ParseScalar(String),
}

/// Coefficient ring interface shared by [`Rational`] and [`Scalar`].
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign
    + for<'a> AddAssign<&'a Self>
    + SubAssign
    + for<'a> SubAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inverse(&self) -> Result<Self, ScalarError>;
    fn from_rational(q: Rational) -> Self;
    /// Complex conjugation; the identity on Q.
    fn conjugate(&self) -> Self;

    fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from(k))
    }

    fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(p, q))
    }
}

/// Arbitrary precision rational number, always in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Panics if `q == 0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn try_new(p: i64, q: i64) -> Result<Self, ScalarError> {
        if q == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::new(p, q))
    }

    pub fn from_big(p: BigInt, q: BigInt) -> Result<Self, ScalarError> {
        if q.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(p, q)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Rational::one();
        for _ in 0..k {
            out *= self;
        }
        out
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Canonical `p/q` text, e.g. `-3/1`.
    pub fn canonical(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    /// Display-only decimal rendering with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        decimal(self.to_f64(), sig)
    }
}

pub(crate) fn decimal(v: f64, sig: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { format!("{v}") };
    }
    let exp = v.abs().log10().floor() as i64;
    let places = (sig as i64 - 1 - exp).max(0) as usize;
    let s = format!("{:.*}", places, v);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ScalarError::ParseRational(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rational::from_big(p, q)
            }
            None => {
                let p: BigInt = t.parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(p)))
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(k: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(k)))
    }
}

impl From<i32> for Rational {
    fn from(k: i32) -> Self {
        Rational::from(k as i64)
    }
}

impl From<usize> for Rational {
    fn from(k: usize) -> Self {
        Rational(BigRational::from_integer(BigInt::from(k)))
    }
}

impl From<BigInt> for Rational {
    fn from(k: BigInt) -> Self {
        Rational(BigRational::from_integer(k))
    }
}

macro_rules! forward_binop {
    ($ty:ident, $tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                $tr::$m(self, &rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $m(self, rhs: &'a $ty) -> $ty {
                $tr::$m(self.clone(), rhs)
            }
        }
        impl $atr for $ty {
            fn $am(&mut self, rhs: $ty) {
                let lhs = std::mem::take(self);
                *self = $tr::$m(lhs, &rhs);
            }
        }
        impl<'a> $atr<&'a $ty> for $ty {
            fn $am(&mut self, rhs: &'a $ty) {
                let lhs = std::mem::take(self);
                *self = $tr::$m(lhs, rhs);
            }
        }
    };
}

impl<'a> Add<&'a Rational> for Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        Rational(self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a Rational> for Rational {
    type Output = Rational;
    fn sub(self, rhs: &'a Rational) -> Rational {
        Rational(self.0 - &rhs.0)
    }
}

impl<'a> Mul<&'a Rational> for Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        Rational(self.0 * &rhs.0)
    }
}

forward_binop!(Rational, Add, add, AddAssign, add_assign);
forward_binop!(Rational, Sub, sub, SubAssign, sub_assign);
forward_binop!(Rational, Mul, mul, MulAssign, mul_assign);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0.clone())
    }
}

impl std::ops::Div for Rational {
    type Output = Rational;
    /// Panics on division by zero; use [`Rational::recip`] to get an error instead.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inverse(&self) -> Result<Self, ScalarError> {
        self.recip()
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn conjugate(&self) -> Self {
        self.clone()
    }
}

/// An element a + b√2 + c·i + d·i√2 of Q(i, √2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

// (x + y√2) arithmetic on pairs
fn qmul(x: &(Rational, Rational), y: &(Rational, Rational)) -> (Rational, Rational) {
    let two = Rational::from(2);
    (
        x.0.clone() * &y.0 + two * &x.1 * &y.1,
        x.0.clone() * &y.1 + x.1.clone() * &y.0,
    )
}

impl Scalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Scalar { a, b, c, d }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::real(Rational::one())
    }

    pub fn real(q: Rational) -> Self {
        Scalar { a: q, ..Scalar::default() }
    }

    pub fn int(k: i64) -> Self {
        Scalar::real(Rational::from(k))
    }

    pub fn sqrt2() -> Self {
        Scalar { b: Rational::one(), ..Scalar::default() }
    }

    pub fn i() -> Self {
        Scalar { c: Rational::one(), ..Scalar::default() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// True if the element lies in the real subfield Q(√2).
    pub fn is_real(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    /// True if the element is rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        (self.b.is_zero() && self.is_real()).then_some(&self.a)
    }

    /// Strict positivity for elements of the real subfield.
    pub fn is_positive_real(&self) -> bool {
        self.is_real() && sign_q_sqrt2(&self.a, &self.b) == Ordering::Greater
    }

    pub fn conjugate(&self) -> Self {
        Scalar {
            a: self.a.clone(),
            b: self.b.clone(),
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // x = P + iQ, x⁻¹ = (P − iQ)/(P² + Q²) with P² + Q² ∈ Q(√2)
        let p = (self.a.clone(), self.b.clone());
        let q = (self.c.clone(), self.d.clone());
        let pp = qmul(&p, &p);
        let qq = qmul(&q, &q);
        let (u, v) = (pp.0 + qq.0, pp.1 + qq.1);
        let norm = u.clone() * &u - Rational::from(2) * &v * &v;
        let ninv = norm.recip()?;
        let inv = (u * &ninv, -(v * &ninv));
        let re = qmul(&p, &inv);
        let im = qmul(&q, &inv);
        Ok(Scalar { a: re.0, b: re.1, c: -im.0, d: -im.1 })
    }

    /// Canonical `a|b|c|d` encoding with `p/q` components.
    pub fn encode(&self) -> String {
        format!(
            "{}|{}|{}|{}",
            self.a.canonical(),
            self.b.canonical(),
            self.c.canonical(),
            self.d.canonical()
        )
    }

    pub fn decode(s: &str) -> Result<Self, ScalarError> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() != 4 {
            return Err(ScalarError::ParseScalar(s.to_string()));
        }
        let p = |t: &str| t.parse::<Rational>().map_err(|_| ScalarError::ParseScalar(s.to_string()));
        Ok(Scalar { a: p(parts[0])?, b: p(parts[1])?, c: p(parts[2])?, d: p(parts[3])? })
    }

    /// Approximate (real, imaginary) parts, for display only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let s = std::f64::consts::SQRT_2;
        (self.a.to_f64() + s * self.b.to_f64(), self.c.to_f64() + s * self.d.to_f64())
    }
}

fn sign_q_sqrt2(a: &Rational, b: &Rational) -> Ordering {
    let sa = a.cmp(&Rational::zero());
    let sb = b.cmp(&Rational::zero());
    match (sa, sb) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        _ => {
            let a2 = a.clone() * a;
            let b2 = Rational::from(2) * b * b;
            match a2.cmp(&b2) {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => sa,
                Ordering::Less => sb,
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (q, unit) in [(&self.a, ""), (&self.b, "√2"), (&self.c, "i"), (&self.d, "i√2")] {
            if q.is_zero() {
                continue;
            }
            if unit.is_empty() {
                parts.push(q.to_string());
            } else if *q == Rational::one() {
                parts.push(unit.to_string());
            } else if *q == -Rational::one() {
                parts.push(format!("-{unit}"));
            } else {
                parts.push(format!("{q}{unit}"));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::decode(s)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::real(q)
    }
}

impl From<i64> for Scalar {
    fn from(k: i64) -> Self {
        Scalar::int(k)
    }
}

impl<'a> Add<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn add(self, r: &'a Scalar) -> Scalar {
        Scalar { a: self.a + &r.a, b: self.b + &r.b, c: self.c + &r.c, d: self.d + &r.d }
    }
}

impl<'a> Sub<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn sub(self, r: &'a Scalar) -> Scalar {
        Scalar { a: self.a - &r.a, b: self.b - &r.b, c: self.c - &r.c, d: self.d - &r.d }
    }
}

impl<'a> Mul<&'a Scalar> for Scalar {
    type Output = Scalar;
    fn mul(self, r: &'a Scalar) -> Scalar {
        let p = (self.a, self.b);
        let q = (self.c, self.d);
        let p2 = (r.a.clone(), r.b.clone());
        let q2 = (r.c.clone(), r.d.clone());
        let pp = qmul(&p, &p2);
        let qq = qmul(&q, &q2);
        let pq = qmul(&p, &q2);
        let qp = qmul(&q, &p2);
        Scalar { a: pp.0 - qq.0, b: pp.1 - qq.1, c: pq.0 + qp.0, d: pq.1 + qp.1 }
    }
}

forward_binop!(Scalar, Add, add, AddAssign, add_assign);
forward_binop!(Scalar, Sub, sub, SubAssign, sub_assign);
forward_binop!(Scalar, Mul, mul, MulAssign, mul_assign);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn inverse(&self) -> Result<Self, ScalarError> {
        Scalar::inverse(self)
    }
    fn from_rational(q: Rational) -> Self {
        Scalar::real(q)
    }
    fn conjugate(&self) -> Self {
        Scalar::conjugate(self)
    }
}

/// Binomial coefficient, zero outside 0 ≤ k ≤ n.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * Rational::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p, r)
    }

    #[test]
    fn defining_relations() {
        assert_eq!(Scalar::sqrt2() * Scalar::sqrt2(), Scalar::int(2));
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::int(-1));
        let x = Scalar::one() + Scalar::sqrt2();
        let y = Scalar::int(-1) + Scalar::sqrt2();
        assert_eq!(x * y, Scalar::one());
    }

    #[test]
    fn inverses() {
        assert_eq!(Scalar::int(2).inverse().unwrap(), Scalar::real(q(1, 2)));
        let half_sqrt2 = Scalar::new(q(0, 1), q(1, 2), q(0, 1), q(0, 1));
        assert_eq!(Scalar::sqrt2().inverse().unwrap(), half_sqrt2);
        assert_eq!(Scalar::i().inverse().unwrap(), -Scalar::i());
        assert_eq!(Scalar::zero().inverse(), Err(ScalarError::DivisionByZero));
        assert_eq!(Rational::zero().recip(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn conjugation() {
        let isq = Scalar::i() * Scalar::sqrt2();
        assert_eq!(isq.conjugate(), -isq.clone());
        assert_eq!(Scalar::real(q(3, 4)).conjugate(), Scalar::real(q(3, 4)));
    }

    #[test]
    fn encoding() {
        let x = Scalar::new(q(1, 2), q(0, 1), q(-3, 1), q(0, 1));
        assert_eq!(x.encode(), "1/2|0/1|-3/1|0/1");
        assert_eq!(Scalar::decode("1/2|0/1|-3/1|0/1").unwrap(), x);
        assert!(Scalar::decode("1|2").is_err());
        assert_eq!("-6/4".parse::<Rational>().unwrap(), q(-3, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), q(7, 1));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn positivity() {
        assert!(Scalar::new(q(-1, 1), q(1, 1), q(0, 1), q(0, 1)).is_positive_real());
        assert!(!Scalar::new(q(-2, 1), q(1, 1), q(0, 1), q(0, 1)).is_positive_real());
        assert!(!Scalar::i().is_positive_real());
        assert!(!Scalar::zero().is_positive_real());
    }

    #[test]
    fn decimal_display() {
        assert_eq!(q(7, 5).to_decimal(12), "1.4");
        assert_eq!(q(1, 3).to_decimal(12), "0.333333333333");
        assert_eq!(q(5, 1).to_decimal(12), "5");
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(4, -1), 0);
    }
}
