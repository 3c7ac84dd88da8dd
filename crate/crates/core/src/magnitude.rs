//! Exact nonnegative real magnitudes `sqrt(r) * (a + b sqrt(d))`.
//!
//! This covers every absolute value the crate produces: `|x|` for rational
//! `x`, `|a + b sqrt(d)|` under a real embedding, complex moduli
//! `sqrt(a^2 - d b^2)` and ramified `p^(-k/2)`. The family is closed under
//! products, quotients and integer powers, and comparisons reduce to the
//! sign of an element of `Q(sqrt(d))`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HeightError, Result};
use crate::numeric;

/// `a + b sqrt(d)` with `d` a squarefree integer `> 1`, or `d == 1` and
/// `b == 0` for a plain rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct RealQuad {
    pub a: BigRational,
    pub b: BigRational,
    pub d: i64,
}

impl RealQuad {
    pub fn rational(a: BigRational) -> Self {
        RealQuad {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn new(a: BigRational, b: BigRational, d: i64) -> Self {
        if b.is_zero() {
            RealQuad::rational(a)
        } else {
            RealQuad { a, b, d }
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common_d(&self, other: &Self) -> Result<i64> {
        match (self.d, other.d) {
            (1, e) | (e, 1) => Ok(e),
            (e, f) if e == f => Ok(e),
            _ => Err(HeightError::MixedFields),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        let dd = BigRational::from_integer(d.into());
        Ok(RealQuad::new(
            &self.a * &other.a + &self.b * &other.b * dd,
            &self.a * &other.b + &self.b * &other.a,
            d,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        Ok(RealQuad::new(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.into())
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero");
        RealQuad::new(&self.a / &n, -&self.b / &n, self.d)
    }

    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.inv() } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = RealQuad::rational(BigRational::one());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq).expect("same field");
            }
            sq = sq.mul(&sq).expect("same field");
            e >>= 1;
        }
        acc
    }

    /// Exact sign of the real number `a + b sqrt(d)`.
    pub fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let db2 = &self.b * &self.b * BigRational::from_integer(self.d.into());
        if a2 > db2 {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() == Ordering::Less {
            RealQuad::new(-&self.a, -&self.b, self.d)
        } else {
            self.clone()
        }
    }

    /// `ln` of this positive number, scaled by `2^prec`.
    pub fn ln_fixed(&self, prec: u32) -> BigInt {
        debug_assert_eq!(self.sign(), Ordering::Greater);
        if self.b.is_zero() {
            return numeric::ln_rational(&self.a, prec);
        }
        let d = self.d as u64;
        if self.a.is_zero() || self.a.is_positive() == self.b.is_positive() {
            return numeric::ln_same_sign_quadratic(&self.a, &self.b, d, prec);
        }
        // a and b sqrt(d) cancel: go through the conjugate, whose summands agree in sign
        numeric::ln_rational(&self.norm().abs(), prec) - numeric::ln_same_sign_quadratic(&self.a, &self.b, d, prec)
    }

    /// Positive rational content `c` with `self = c * primitive`.
    pub fn content(&self) -> BigRational {
        use num_integer::Integer;
        let num = self.a.numer().gcd(self.b.numer());
        let den = self.a.denom().lcm(self.b.denom());
        if num.is_zero() {
            BigRational::one()
        } else {
            BigRational::new(num, den)
        }
    }
}

impl fmt::Display for RealQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sqrt = format!("sqrt({})", self.d);
        let b_abs = self.b.abs();
        let b_part = if b_abs.is_one() {
            sqrt
        } else {
            format!("{b_abs}*{sqrt}")
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{b_part}")
            } else {
                write!(f, "{b_part}")
            }
        } else {
            let op = if self.b.is_negative() { "-" } else { "+" };
            write!(f, "{}{}{}", self.a, op, b_part)
        }
    }
}

/// An exact nonnegative real number `sqrt(radicand) * unit`.
///
/// Invariants: `radicand >= 0`; `unit > 0` whenever `radicand > 0`.
#[derive(Clone, Debug)]
pub struct Magnitude {
    radicand: BigRational,
    unit: RealQuad,
}

impl Magnitude {
    pub fn zero() -> Self {
        Magnitude {
            radicand: BigRational::zero(),
            unit: RealQuad::rational(BigRational::one()),
        }
    }

    pub fn one() -> Self {
        Magnitude::from_rational(&BigRational::one())
    }

    /// `|x|` for rational `x`.
    pub fn from_rational(x: &BigRational) -> Self {
        if x.is_zero() {
            return Magnitude::zero();
        }
        Magnitude {
            radicand: BigRational::one(),
            unit: RealQuad::rational(x.abs()),
        }
    }

    /// Nonnegative square root of `r >= 0`.
    pub fn sqrt_of(r: &BigRational) -> Self {
        assert!(!r.is_negative(), "square root of a negative rational");
        if r.is_zero() {
            return Magnitude::zero();
        }
        Magnitude {
            radicand: r.clone(),
            unit: RealQuad::rational(BigRational::one()),
        }
    }

    /// `|a + b sqrt(d)|` for a real quadratic field (`d > 1` squarefree).
    pub fn real_quadratic(a: &BigRational, b: &BigRational, d: i64) -> Self {
        let q = RealQuad::new(a.clone(), b.clone(), d);
        if q.sign() == Ordering::Equal {
            return Magnitude::zero();
        }
        Magnitude {
            radicand: BigRational::one(),
            unit: q.abs(),
        }
    }

    /// `p^e` for a rational exponent with denominator 1 or 2.
    pub fn prime_power(p: u64, exponent: &BigRational) -> Self {
        let base = BigRational::from_integer(p.into());
        let doubled = exponent * BigRational::from_integer(2.into());
        assert!(doubled.is_integer(), "exponent must be a half-integer");
        let e2 = i32::try_from(doubled.to_integer()).expect("exponent out of range");
        if e2 % 2 == 0 {
            Magnitude::from_rational(&num_traits::pow::Pow::pow(&base, e2 / 2))
        } else {
            Magnitude::sqrt_of(&num_traits::pow::Pow::pow(&base, e2))
        }
    }

    pub(crate) fn from_unit(unit: &RealQuad) -> Magnitude {
        if unit.is_rational() {
            Magnitude::from_rational(&unit.a)
        } else {
            Magnitude::real_quadratic(&unit.a, &unit.b, unit.d)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.radicand.is_zero()
    }

    pub(crate) fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub(crate) fn unit(&self) -> &RealQuad {
        &self.unit
    }

    /// The quadratic field this value lives in, if irrational there.
    pub fn field_d(&self) -> Option<i64> {
        (!self.unit.is_rational()).then_some(self.unit.d)
    }

    pub fn mul(&self, other: &Magnitude) -> Result<Magnitude> {
        if self.is_zero() || other.is_zero() {
            return Ok(Magnitude::zero());
        }
        Ok(Magnitude {
            radicand: &self.radicand * &other.radicand,
            unit: self.unit.mul(&other.unit)?,
        })
    }

    /// Quotient `self / other`; `other` must be nonzero.
    pub fn div(&self, other: &Magnitude) -> Result<Magnitude> {
        assert!(!other.is_zero(), "division by a zero magnitude");
        if self.is_zero() {
            return Ok(Magnitude::zero());
        }
        Ok(Magnitude {
            radicand: &self.radicand / &other.radicand,
            unit: self.unit.mul(&other.unit.inv())?,
        })
    }

    pub fn pow(&self, exp: i64) -> Magnitude {
        if self.is_zero() {
            assert!(exp > 0, "nonpositive power of zero");
            return Magnitude::zero();
        }
        let e = i32::try_from(exp).expect("exponent out of range");
        Magnitude {
            radicand: num_traits::pow::Pow::pow(&self.radicand, e),
            unit: self.unit.pow(exp),
        }
    }

    /// If this value is `sqrt(r)` for a rational `r`, returns `r`.
    pub fn rational_square(&self) -> Option<BigRational> {
        if self.unit.b.is_zero() {
            Some(&self.radicand * &self.unit.a * &self.unit.a)
        } else if self.unit.a.is_zero() {
            let d = BigRational::from_integer(self.unit.d.into());
            Some(&self.radicand * &self.unit.b * &self.unit.b * d)
        } else {
            None
        }
    }

    /// Exact comparison; fails only when the operands live in different
    /// real quadratic fields.
    pub fn try_cmp(&self, other: &Magnitude) -> Result<Ordering> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ok(Ordering::Equal),
            (true, false) => return Ok(Ordering::Less),
            (false, true) => return Ok(Ordering::Greater),
            _ => {}
        }
        // self/other = sqrt(R) * u; compare R * u^2 with 1
        let q = self.div(other)?;
        let u2 = q.unit.mul(&q.unit)?;
        let scaled = RealQuad::new(&u2.a * &q.radicand, &u2.b * &q.radicand, u2.d);
        Ok(scaled.sub(&RealQuad::rational(BigRational::one()))?.sign())
    }

    /// `ln` of a positive magnitude, scaled by `2^prec`.
    pub fn ln_fixed(&self, prec: u32) -> BigInt {
        assert!(!self.is_zero(), "logarithm of zero");
        let half_ln_r = numeric::ln_rational(&self.radicand, prec + 1);
        let half = (half_ln_r + BigInt::from(2)) >> 2u32;
        half + self.unit.ln_fixed(prec)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        numeric::fixed_to_f64(&self.ln_fixed(64), 64).exp()
    }
}

impl PartialEq for Magnitude {
    fn eq(&self, other: &Self) -> bool {
        matches!(self.try_cmp(other), Ok(Ordering::Equal))
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(r) = self.rational_square() {
            if let Some(root) = rational_sqrt(&r) {
                return write!(f, "{root}");
            }
            return write!(f, "sqrt({r})");
        }
        if self.radicand.is_one() {
            write!(f, "{}", self.unit)
        } else {
            write!(f, "sqrt({})*({})", self.radicand, self.unit)
        }
    }
}

/// Exact square root of a rational when it is a perfect square.
pub(crate) fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sign_of_quadratics() {
        assert_eq!(RealQuad::new(rat(1, 1), rat(-1, 1), 2).sign(), Ordering::Less);
        assert_eq!(RealQuad::new(rat(-1, 1), rat(1, 1), 2).sign(), Ordering::Greater);
        assert_eq!(RealQuad::new(rat(3, 1), rat(-2, 1), 2).sign(), Ordering::Greater);
        assert_eq!(RealQuad::new(rat(-3, 1), rat(2, 1), 2).sign(), Ordering::Less);
    }

    #[test]
    fn conjugate_magnitudes_multiply_to_norm() {
        let plus = Magnitude::real_quadratic(&rat(1, 1), &rat(1, 1), 2);
        let minus = Magnitude::real_quadratic(&rat(1, 1), &rat(-1, 1), 2);
        assert_eq!(minus.to_string(), "-1+sqrt(2)");
        assert_eq!(plus.mul(&minus).unwrap(), Magnitude::one());
    }

    #[test]
    fn sqrt_and_rational_compare() {
        let s2 = Magnitude::sqrt_of(&rat(2, 1));
        assert_eq!(s2.try_cmp(&Magnitude::one()).unwrap(), Ordering::Greater);
        assert_eq!(
            s2.try_cmp(&Magnitude::from_rational(&rat(3, 2))).unwrap(),
            Ordering::Less
        );
        assert_eq!(s2.mul(&s2).unwrap(), Magnitude::from_rational(&rat(2, 1)));
        let unit = Magnitude::real_quadratic(&rat(1, 1), &rat(1, 1), 2);
        // (1 + sqrt2) vs sqrt(6): 3 + 2 sqrt2 ~ 5.83 < 6
        assert_eq!(unit.try_cmp(&Magnitude::sqrt_of(&rat(6, 1))).unwrap(), Ordering::Less);
    }

    #[test]
    fn logs_are_accurate() {
        let m = Magnitude::real_quadratic(&rat(1, 1), &rat(-1, 1), 2);
        let got = numeric::fixed_to_f64(&m.ln_fixed(64), 64);
        assert!((got - (2f64.sqrt() - 1.0).ln()).abs() < 1e-15);
        let r = Magnitude::sqrt_of(&rat(1, 2));
        let got = numeric::fixed_to_f64(&r.ln_fixed(64), 64);
        assert!((got + 0.5 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Magnitude::real_quadratic(&rat(1, 1), &rat(1, 1), 2);
        let b = Magnitude::real_quadratic(&rat(1, 1), &rat(1, 1), 3);
        assert_eq!(a.try_cmp(&b), Err(HeightError::MixedFields));
    }
}
