//! Places of `Q`: the archimedean absolute value and one `p`-adic absolute
//! value per prime, normalized so that `|p|_p = 1/p`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{HeightError, Result};
use crate::logvalue::LogValue;
use crate::magnitude::Magnitude;
use crate::numeric;

/// A verified prime below `2^64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if numeric::is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(HeightError::InvalidPlace(format!("{p} is not prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Archimedean,
    Finite(Prime),
}

impl Place {
    pub fn finite(p: u64) -> Result<Place> {
        Prime::new(p).map(Place::Finite)
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::Archimedean)
    }

    /// The exponent in the triangle inequality `|x + y| <= 2^eps max(|x|, |y|)`.
    pub fn epsilon(&self) -> u32 {
        match self {
            Place::Archimedean => 1,
            Place::Finite(_) => 0,
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Place::Archimedean => None,
            Place::Finite(p) => Some(p.get()),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => write!(f, "inf"),
            Place::Finite(p) => write!(f, "p={p}"),
        }
    }
}

/// `v_p(x)` for nonzero rational `x`.
pub fn valuation(x: &BigRational, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(HeightError::InfiniteValuation);
    }
    let p = Prime::new(p)?;
    Ok(numeric::rat_valuation(x, p.get()))
}

pub fn absolute_value(x: &BigRational, v: Place) -> Magnitude {
    match v {
        Place::Archimedean => Magnitude::from_rational(x),
        Place::Finite(p) => {
            if x.is_zero() {
                return Magnitude::zero();
            }
            let e = numeric::rat_valuation(x, p.get());
            Magnitude::prime_power(p.get(), &BigRational::from_integer((-e).into()))
        }
    }
}

/// Primes at which some value of the list has `|x|_p != 1`.
pub fn support(values: &[BigRational]) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for x in values {
        if x.is_zero() {
            return Err(HeightError::InfiniteValuation);
        }
        out.extend(numeric::prime_factors(x.numer().magnitude())?);
        out.extend(numeric::prime_factors(x.denom().magnitude())?);
    }
    Ok(out)
}

/// `sum over all places v of log |x|_v`, returned as an uncanonicalized
/// symbolic sum: `-v_p(x) log p` for every prime in the support plus the
/// archimedean term `log |x|`.
pub fn log_abs_sum(x: &BigRational) -> Result<LogValue> {
    if x.is_zero() {
        return Err(HeightError::InfiniteValuation);
    }
    let mut total = LogValue::log_magnitude(BigRational::from_integer(1.into()), Magnitude::from_rational(x));
    for p in support(std::slice::from_ref(x))? {
        let v = numeric::rat_valuation(x, p);
        total = total.add(&LogValue::log_prime(p, BigRational::from_integer((-v).into())));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&rat(12, 5), 2), Ok(2));
        assert_eq!(valuation(&rat(12, 5), 5), Ok(-1));
        assert_eq!(valuation(&rat(7, 9), 3), Ok(-2));
        assert_eq!(valuation(&rat(0, 1), 3), Err(HeightError::InfiniteValuation));
        assert!(matches!(valuation(&rat(3, 1), 4), Err(HeightError::InvalidPlace(_))));
    }

    #[test]
    fn absolute_value_examples() {
        let two = Place::finite(2).unwrap();
        assert_eq!(absolute_value(&rat(12, 5), two), Magnitude::from_rational(&rat(1, 4)));
        assert!(absolute_value(&rat(0, 1), two).is_zero());
        assert!(absolute_value(&rat(0, 1), Place::Archimedean).is_zero());
        assert_eq!(
            absolute_value(&rat(-3, 2), Place::Archimedean),
            Magnitude::from_rational(&rat(3, 2))
        );
    }

    #[test]
    fn support_examples() {
        let s = support(&[rat(12, 5)]).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![2, 3, 5]);
        assert!(support(&[rat(1, 1)]).unwrap().is_empty());
        let s = support(&[rat(7, 9), rat(2, 1)]).unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![2, 3, 7]);
        assert_eq!(support(&[rat(0, 1)]), Err(HeightError::InfiniteValuation));
    }

    #[test]
    fn product_formula_examples() {
        for x in [rat(12, 5), rat(1, 1), rat(-1, 1)] {
            assert!(log_abs_sum(&x).unwrap().canonicalize().unwrap().is_empty());
        }
        let raw = log_abs_sum(&rat(12, 5)).unwrap();
        assert_eq!(raw.finite_coefficient(2), rat(-2, 1));
        assert_eq!(raw.finite_coefficient(5), rat(1, 1));
        assert_eq!(raw.arch_terms().len(), 1);
    }

    #[test]
    fn epsilon_per_place() {
        assert_eq!(Place::Archimedean.epsilon(), 1);
        assert_eq!(Place::finite(3).unwrap().epsilon(), 0);
    }
}
