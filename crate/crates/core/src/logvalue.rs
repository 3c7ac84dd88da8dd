//! Exact real numbers of the form `sum c_p log p + sum w log m` (plus `+inf`).
//!
//! Local and global heights are kept in this form and only turned into
//! floating point at the output boundary. Equality and ordering are decided
//! exactly by exponentiating: `sum c_p log p + sum w log m` has the sign of
//! `prod p^(c_p L) * prod m^(w L) - 1` for a common denominator `L`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{HeightError, Result};
use crate::magnitude::{Magnitude, RealQuad};
use crate::numeric;
use crate::places::Place;

#[derive(Clone, Debug)]
pub struct LogValue {
    finite: BTreeMap<u64, BigRational>,
    arch: Vec<(BigRational, Magnitude)>,
    infinite: bool,
}

fn int_rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl LogValue {
    pub fn zero() -> Self {
        LogValue {
            finite: BTreeMap::new(),
            arch: Vec::new(),
            infinite: false,
        }
    }

    pub fn infinity() -> Self {
        LogValue {
            finite: BTreeMap::new(),
            arch: Vec::new(),
            infinite: true,
        }
    }

    /// `coefficient * log p`.
    pub fn log_prime(p: u64, coefficient: BigRational) -> Self {
        let mut v = LogValue::zero();
        if !coefficient.is_zero() {
            v.finite.insert(p, coefficient);
        }
        v
    }

    /// `weight * log m` for a positive magnitude.
    pub fn log_magnitude(weight: BigRational, m: Magnitude) -> Self {
        assert!(!m.is_zero(), "log of zero is not representable");
        let mut v = LogValue::zero();
        if !weight.is_zero() {
            v.arch.push((weight, m));
        }
        v
    }

    pub fn is_infinite(&self) -> bool {
        self.infinite
    }

    /// No terms at all (structural, not semantic, emptiness).
    pub fn is_empty(&self) -> bool {
        !self.infinite && self.finite.is_empty() && self.arch.is_empty()
    }

    pub fn finite_part(&self) -> &BTreeMap<u64, BigRational> {
        &self.finite
    }

    pub fn finite_coefficient(&self, p: u64) -> BigRational {
        self.finite.get(&p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn arch_terms(&self) -> &[(BigRational, Magnitude)] {
        &self.arch
    }

    pub fn add(&self, other: &LogValue) -> LogValue {
        if self.infinite || other.infinite {
            return LogValue::infinity();
        }
        let mut out = self.clone();
        for (p, c) in &other.finite {
            let entry = out.finite.entry(*p).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                out.finite.remove(p);
            }
        }
        out.arch.extend(other.arch.iter().cloned());
        out
    }

    /// `factor * self`; scaling `+inf` by a positive factor keeps it infinite.
    pub fn scale(&self, factor: &BigRational) -> LogValue {
        if self.infinite {
            assert!(factor.is_positive(), "only positive multiples of infinity exist");
            return LogValue::infinity();
        }
        if factor.is_zero() {
            return LogValue::zero();
        }
        LogValue {
            finite: self.finite.iter().map(|(p, c)| (*p, c * factor)).collect(),
            arch: self.arch.iter().map(|(w, m)| (w * factor, m.clone())).collect(),
            infinite: false,
        }
    }

    /// `self - other` for a finite `other`.
    pub fn sub(&self, other: &LogValue) -> LogValue {
        assert!(!other.infinite, "cannot subtract infinity");
        self.add(&other.scale(&int_rat(-1)))
    }

    pub fn sum<'a>(values: impl IntoIterator<Item = &'a LogValue>) -> LogValue {
        values.into_iter().fold(LogValue::zero(), |acc, v| acc.add(v))
    }

    /// Exact total order. Fails only when the value involves irrational
    /// magnitudes from two different quadratic fields.
    pub fn exact_cmp(&self, other: &LogValue) -> Result<Ordering> {
        match (self.infinite, other.infinite) {
            (true, true) => return Ok(Ordering::Equal),
            (true, false) => return Ok(Ordering::Greater),
            (false, true) => return Ok(Ordering::Less),
            _ => {}
        }
        self.sub(other).sign()
    }

    pub fn exact_eq(&self, other: &LogValue) -> Result<bool> {
        Ok(self.exact_cmp(other)? == Ordering::Equal)
    }

    /// Semantic zero test.
    pub fn is_zero(&self) -> bool {
        !self.infinite && matches!(self.sign(), Ok(Ordering::Equal))
    }

    fn common_denominator(&self) -> BigInt {
        self.finite
            .values()
            .chain(self.arch.iter().map(|(w, _)| w))
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Sign of a finite value.
    fn sign(&self) -> Result<Ordering> {
        debug_assert!(!self.infinite);
        if self.finite.is_empty() && self.arch.is_empty() {
            return Ok(Ordering::Equal);
        }
        let l = self.common_denominator();
        let exp = |c: &BigRational| -> i64 {
            (c * BigRational::from_integer(l.clone()))
                .to_integer()
                .to_i64()
                .expect("exponent out of range")
        };
        let mut rational = Magnitude::one();
        for (p, c) in &self.finite {
            let m = Magnitude::from_rational(&int_rat(*p as i64)).pow(exp(c));
            rational = rational.mul(&m)?;
        }
        let mut by_field: BTreeMap<i64, Magnitude> = BTreeMap::new();
        for (w, m) in &self.arch {
            let powered = m.pow(exp(w));
            match powered.field_d() {
                None => rational = rational.mul(&powered)?,
                Some(d) => {
                    let slot = by_field.entry(d).or_insert_with(Magnitude::one);
                    *slot = slot.mul(&powered)?;
                }
            }
        }
        let mut irrational = Vec::new();
        for (_, m) in by_field {
            if m.field_d().is_none() {
                rational = rational.mul(&m)?;
            } else {
                irrational.push(m);
            }
        }
        let total = match irrational.len() {
            0 => rational,
            1 => rational.mul(&irrational[0])?,
            _ => return Err(HeightError::MixedFields),
        };
        total.try_cmp(&Magnitude::one())
    }

    /// Rewrite every rational part of the archimedean terms as prime logs
    /// and merge the remaining irrational terms into one term per field.
    pub fn canonicalize(&self) -> Result<LogValue> {
        if self.infinite {
            return Ok(LogValue::infinity());
        }
        let mut out = LogValue {
            finite: BTreeMap::new(),
            arch: Vec::new(),
            infinite: false,
        };
        out = out.add(&LogValue {
            finite: self.finite.clone(),
            arch: Vec::new(),
            infinite: false,
        });
        let mut groups: BTreeMap<i64, Vec<(BigRational, RealQuad)>> = BTreeMap::new();
        for (w, m) in &self.arch {
            out = out.add(&rational_log(&(w / int_rat(2)), m.radicand())?);
            let unit = m.unit();
            if let Some(r) = Magnitude::from_unit(unit).rational_square() {
                out = out.add(&rational_log(&(w / int_rat(2)), &r)?);
                continue;
            }
            let c = unit.content();
            out = out.add(&rational_log(w, &c)?);
            let primitive = RealQuad::new(&unit.a / &c, &unit.b / &c, unit.d);
            groups.entry(unit.d).or_default().push((w.clone(), primitive));
        }
        for (d, terms) in groups {
            let l = terms.iter().fold(BigInt::one(), |acc, (w, _)| acc.lcm(w.denom()));
            let l_rat = BigRational::from_integer(l.clone());
            let mut product = RealQuad::rational(BigRational::one());
            for (w, q) in &terms {
                let e = (w * &l_rat).to_integer().to_i64().expect("exponent out of range");
                product = product.mul(&q.pow(e))?;
            }
            let weight = BigRational::new(BigInt::one(), l);
            let c = product.content();
            out = out.add(&rational_log(&weight, &c)?);
            let primitive = RealQuad::new(&product.a / &c, &product.b / &c, d);
            let m = Magnitude::from_unit(&primitive);
            if let Some(r) = m.rational_square() {
                out = out.add(&rational_log(&(weight / int_rat(2)), &r)?);
            } else {
                out.arch.push((weight, m));
            }
        }
        Ok(out)
    }

    /// Which single place this value lives at, if any.
    fn place_class(&self) -> PlaceClass {
        if self.infinite || self.is_empty() {
            return PlaceClass::Neutral;
        }
        match (self.finite.len(), self.arch.is_empty()) {
            (0, false) => PlaceClass::Archimedean,
            (1, true) => PlaceClass::Prime(*self.finite.keys().next().expect("one key")),
            _ => PlaceClass::Mixed,
        }
    }

    fn check_place(values: &[LogValue], place: Place) -> Result<()> {
        for v in values {
            let ok = match (v.place_class(), place) {
                (PlaceClass::Neutral, _) => true,
                (PlaceClass::Archimedean, Place::Archimedean) => true,
                (PlaceClass::Prime(p), Place::Finite(q)) => p == q.get(),
                _ => false,
            };
            if !ok {
                return Err(HeightError::MixedPlaceComparison);
            }
        }
        Ok(())
    }

    /// Minimum of values taken at one common place (`+inf` for an empty list).
    pub fn min_at(place: Place, values: &[LogValue]) -> Result<LogValue> {
        LogValue::check_place(values, place)?;
        let mut best = LogValue::infinity();
        for v in values {
            if v.exact_cmp(&best)? == Ordering::Less {
                best = v.clone();
            }
        }
        Ok(best)
    }

    pub fn max_at(place: Place, values: &[LogValue]) -> Result<LogValue> {
        LogValue::check_place(values, place)?;
        let mut best: Option<LogValue> = None;
        for v in values {
            let replace = match &best {
                None => true,
                Some(b) => v.exact_cmp(b)? == Ordering::Greater,
            };
            if replace {
                best = Some(v.clone());
            }
        }
        best.ok_or_else(|| HeightError::InvalidPlace("maximum of an empty list".into()))
    }

    /// Fixed-point value scaled by `2^prec`; `None` for `+inf`.
    pub fn to_fixed(&self, prec: u32) -> Option<BigInt> {
        if self.infinite {
            return None;
        }
        let w = prec + 16;
        let mut acc = BigInt::zero();
        for (p, c) in &self.finite {
            let ln = numeric::ln_rational(&int_rat(*p as i64), w);
            acc += (ln * c.numer()).div_floor(c.denom());
        }
        for (weight, m) in &self.arch {
            acc += (m.ln_fixed(w) * weight.numer()).div_floor(weight.denom());
        }
        Some((acc + (BigInt::one() << 15u32)) >> 16u32)
    }

    /// Floating-point value computed with at least `precision_bits` bits.
    pub fn to_float(&self, precision_bits: u32) -> f64 {
        if self.infinite {
            return f64::INFINITY;
        }
        let prec = precision_bits.max(64);
        numeric::fixed_to_f64(&self.to_fixed(prec).expect("finite"), prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float(64)
    }

    /// Decimal rendering. Up to 53 bits this is the shortest `f64` text;
    /// beyond that, enough digits to carry the requested precision.
    pub fn to_decimal(&self, precision_bits: u32) -> String {
        if self.infinite {
            return "inf".into();
        }
        if precision_bits <= 53 {
            return format!("{}", self.to_float(64));
        }
        let digits = (precision_bits as f64 * std::f64::consts::LOG10_2).ceil() as usize;
        let fixed = self.to_fixed(precision_bits + 8).expect("finite");
        numeric::fixed_to_decimal(&fixed, precision_bits + 8, digits)
    }

    fn render(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.infinite {
            return write!(f, "inf");
        }
        // primes sharing a coefficient are rendered as one log of their product
        let mut groups: Vec<(BigRational, BigInt, u64)> = Vec::new();
        for (p, c) in &self.finite {
            match groups.iter_mut().find(|(q, _, _)| q == c) {
                Some(g) => g.1 *= BigInt::from(*p),
                None => groups.push((c.clone(), BigInt::from(*p), *p)),
            }
        }
        groups.sort_by_key(|g| g.2);
        let mut terms: Vec<(BigRational, String)> =
            groups.into_iter().map(|(c, prod, _)| (c, prod.to_string())).collect();
        for (w, m) in &self.arch {
            terms.push((w.clone(), m.to_string()));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, arg)) in terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            if abs.is_one() {
                write!(f, "log({arg})")?;
            } else {
                write!(f, "{abs}*log({arg})")?;
            }
        }
        Ok(())
    }
}

/// `weight * log r` for a positive rational, split into primes.
fn rational_log(weight: &BigRational, r: &BigRational) -> Result<LogValue> {
    if r.is_one() || weight.is_zero() {
        return Ok(LogValue::zero());
    }
    let mut out = LogValue::zero();
    for p in crate::places::support(std::slice::from_ref(r))? {
        let v = numeric::rat_valuation(r, p);
        out = out.add(&LogValue::log_prime(p, weight * int_rat(v)));
    }
    Ok(out)
}

#[derive(Debug, PartialEq, Eq)]
enum PlaceClass {
    Neutral,
    Archimedean,
    Prime(u64),
    Mixed,
}

impl PartialEq for LogValue {
    fn eq(&self, other: &Self) -> bool {
        matches!(self.exact_eq(other), Ok(true))
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.exact_cmp(other).ok()
    }
}

/// Human-readable exact rendering of the canonical form, e.g.
/// `2*log(2) + log(3) - 1/2*log(1+sqrt(2))`.
impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.canonicalize() {
            Ok(c) => c.render(f),
            Err(_) => self.render(f),
        }
    }
}

impl FromStr for LogValue {
    type Err = HeightError;

    fn from_str(s: &str) -> Result<LogValue> {
        parse::parse_log_value(s)
    }
}

mod parse {
    use super::*;

    fn err(offset: usize, message: impl Into<String>) -> HeightError {
        HeightError::Syntax {
            offset,
            message: message.into(),
        }
    }

    fn rational(s: &str, offset: usize) -> Result<BigRational> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err(offset, format!("bad number `{s}`")))?;
        let d: BigInt = d.parse().map_err(|_| err(offset, format!("bad number `{s}`")))?;
        if !d.is_positive() {
            return Err(err(offset, "denominator must be positive"));
        }
        Ok(BigRational::new(n, d))
    }

    /// `sqrt(d)` possibly preceded by `c*`.
    fn surd(s: &str, offset: usize) -> Result<(BigRational, i64)> {
        let (coef, rest) = match s.split_once('*') {
            Some((c, r)) => (rational(c, offset)?, r),
            None => (BigRational::one(), s),
        };
        let inner = rest
            .strip_prefix("sqrt(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err(offset, format!("expected sqrt(..) in `{s}`")))?;
        let d: i64 = inner
            .parse()
            .map_err(|_| err(offset, format!("bad radicand `{inner}`")))?;
        Ok((coef, d))
    }

    fn quadratic(s: &str, offset: usize) -> Result<Magnitude> {
        // split `a+b*sqrt(d)` / `a-b*sqrt(d)` at the sign before the surd part
        let split = s
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (a, b, d) = match split {
            Some(i) if s[i + 1..].contains("sqrt") && !s[..i].contains("sqrt") => {
                let a = rational(&s[..i], offset)?;
                let (b, d) = surd(&s[i + 1..], offset)?;
                let b = if &s[i..=i] == "-" { -b } else { b };
                (a, b, d)
            }
            _ => {
                let (neg, body) = match s.strip_prefix('-') {
                    Some(r) => (true, r),
                    None => (false, s),
                };
                let (b, d) = surd(body, offset)?;
                (BigRational::zero(), if neg { -b } else { b }, d)
            }
        };
        Ok(Magnitude::real_quadratic(&a, &b, d))
    }

    fn magnitude(s: &str, offset: usize) -> Result<Magnitude> {
        if !s.contains("sqrt") {
            return Ok(Magnitude::from_rational(&rational(s, offset)?));
        }
        if let Some(rest) = s.strip_prefix("sqrt(") {
            let close = rest.find(')').ok_or_else(|| err(offset, "unclosed sqrt"))?;
            let radicand = rational(&rest[..close], offset)?;
            let tail = &rest[close + 1..];
            let root = Magnitude::sqrt_of(&radicand);
            if tail.is_empty() {
                return Ok(root);
            }
            let unit = tail
                .strip_prefix("*(")
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| err(offset, format!("unexpected `{tail}`")))?;
            return root.mul(&quadratic(unit, offset)?);
        }
        quadratic(s, offset)
    }

    fn term(s: &str, offset: usize) -> Result<LogValue> {
        let s = s.trim();
        let (coef, body) = match s.find("log(") {
            Some(0) => (BigRational::one(), s),
            Some(i) => {
                let c = s[..i]
                    .strip_suffix('*')
                    .ok_or_else(|| err(offset, "expected `*` before log"))?;
                (rational(c, offset)?, &s[i..])
            }
            None => return Err(err(offset, format!("expected log(..) in `{s}`"))),
        };
        let inner = body
            .strip_prefix("log(")
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| err(offset, format!("malformed term `{s}`")))?;
        let m = magnitude(inner, offset)?;
        if m.is_zero() {
            return Err(err(offset, "log(0) is not a finite value"));
        }
        Ok(LogValue::log_magnitude(coef, m))
    }

    pub(super) fn parse_log_value(text: &str) -> Result<LogValue> {
        let s = text.trim();
        if s == "inf" {
            return Ok(LogValue::infinity());
        }
        if s == "0" {
            return Ok(LogValue::zero());
        }
        let (mut negative, mut rest, mut offset) = match s.strip_prefix('-') {
            Some(r) => (true, r, 1),
            None => (false, s, 0),
        };
        let mut total = LogValue::zero();
        loop {
            let next = [" + ", " - "]
                .iter()
                .filter_map(|sep| rest.find(sep).map(|i| (i, *sep)))
                .min();
            let (chunk, tail) = match next {
                Some((i, sep)) => (&rest[..i], Some((&rest[i + 3..], sep == " - "))),
                None => (rest, None),
            };
            let t = term(chunk, offset)?;
            total = total.add(&if negative { t.scale(&int_rat(-1)) } else { t });
            match tail {
                Some((r, neg)) => {
                    offset += chunk.len() + 3;
                    rest = r;
                    negative = neg;
                }
                None => break,
            }
        }
        Ok(total)
    }
}

/// Nonnegative per-place constants, zero at all but finitely many places.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundProfile {
    per_place: BTreeMap<Place, f64>,
}

impl BoundProfile {
    pub fn new() -> Self {
        BoundProfile::default()
    }

    pub fn get(&self, place: Place) -> f64 {
        self.per_place.get(&place).copied().unwrap_or(0.0)
    }

    /// Sets the constant at `place`; negative inputs clamp to zero.
    pub fn set(&mut self, place: Place, value: f64) {
        let value = value.max(0.0);
        if value == 0.0 {
            self.per_place.remove(&place);
        } else {
            self.per_place.insert(place, value);
        }
    }

    /// Raises the constant at `place` to at least `value`.
    pub fn raise(&mut self, place: Place, value: f64) {
        if value > self.get(place) {
            self.set(place, value);
        }
    }

    pub fn with(mut self, place: Place, value: f64) -> Self {
        self.set(place, value);
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &f64)> {
        self.per_place.iter()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.per_place.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn lp(p: u64, c: i64) -> LogValue {
        LogValue::log_prime(p, int_rat(c))
    }

    #[test]
    fn add_and_scale() {
        assert_eq!(lp(2, 2).add(&lp(2, 3)), lp(2, 5));
        assert_eq!(lp(3, 2).scale(&rat(1, 2)), lp(3, 1));
        assert!(lp(2, 1).add(&LogValue::infinity()).is_infinite());
    }

    #[test]
    fn min_max_at_place() {
        let p3 = Place::finite(3).unwrap();
        assert_eq!(LogValue::min_at(p3, &[lp(3, 1), lp(3, 2)]).unwrap(), lp(3, 1));
        assert_eq!(LogValue::max_at(p3, &[lp(3, 1), lp(3, 2)]).unwrap(), lp(3, 2));
        assert_eq!(
            LogValue::min_at(p3, &[lp(3, 1), lp(2, 2)]),
            Err(HeightError::MixedPlaceComparison)
        );
        let arch = |n| LogValue::log_magnitude(int_rat(1), Magnitude::from_rational(&int_rat(n)));
        assert_eq!(
            LogValue::min_at(Place::Archimedean, &[arch(5), arch(3), LogValue::infinity()]).unwrap(),
            arch(3)
        );
        assert_eq!(
            LogValue::min_at(Place::Archimedean, &[arch(5), lp(3, 1)]),
            Err(HeightError::MixedPlaceComparison)
        );
    }

    #[test]
    fn float_of_log_three_halves() {
        let v = LogValue::log_magnitude(int_rat(1), Magnitude::from_rational(&rat(3, 2)));
        assert!((v.to_float(53) - 0.405_465_108_108_164_4).abs() < 1e-15);
    }

    #[test]
    fn exact_equality_across_representations() {
        let six = LogValue::log_magnitude(int_rat(1), Magnitude::from_rational(&int_rat(6)));
        assert_eq!(six, lp(2, 1).add(&lp(3, 1)));
        let unit = Magnitude::real_quadratic(&int_rat(1), &int_rat(1), 2);
        let unit_sq = Magnitude::real_quadratic(&int_rat(3), &int_rat(2), 2);
        let a = LogValue::log_magnitude(int_rat(2), unit.clone());
        let b = LogValue::log_magnitude(int_rat(1), unit_sq);
        assert_eq!(a, b);
        assert!(a > LogValue::zero());
        let conj = Magnitude::real_quadratic(&int_rat(1), &int_rat(-1), 2);
        assert!(LogValue::log_magnitude(int_rat(1), unit)
            .add(&LogValue::log_magnitude(int_rat(1), conj))
            .is_zero());
    }

    #[test]
    fn canonical_rendering() {
        let six = LogValue::log_magnitude(int_rat(1), Magnitude::from_rational(&int_rat(6)));
        assert_eq!(six.to_string(), "log(6)");
        let twelve = LogValue::log_magnitude(int_rat(1), Magnitude::from_rational(&int_rat(12)));
        assert_eq!(twelve.to_string(), "2*log(2) + log(3)");
        let half = LogValue::log_magnitude(int_rat(1), Magnitude::sqrt_of(&int_rat(2)));
        assert_eq!(half.to_string(), "1/2*log(2)");
        let third = LogValue::log_magnitude(int_rat(1), Magnitude::from_rational(&rat(1, 3)));
        assert_eq!(third.to_string(), "-log(3)");
        let unit = Magnitude::real_quadratic(&int_rat(2), &int_rat(2), 2);
        assert_eq!(
            LogValue::log_magnitude(int_rat(1), unit).to_string(),
            "log(2) + log(1+sqrt(2))"
        );
        assert_eq!(LogValue::zero().to_string(), "0");
        assert_eq!(LogValue::infinity().to_string(), "inf");
    }

    #[test]
    fn parse_round_trip() {
        for text in [
            "log(6)",
            "2*log(2) + log(3)",
            "-log(3)",
            "1/2*log(2) - 3/4*log(5)",
            "log(2) + log(1+sqrt(2))",
            "1/2*log(-1+sqrt(2))",
            "log(sqrt(3)*(1+sqrt(2)))",
            "inf",
            "0",
        ] {
            let v: LogValue = text.parse().unwrap();
            let again: LogValue = v.to_string().parse().unwrap();
            assert_eq!(v, again, "{text}");
        }
    }

    #[test]
    fn high_precision_decimal() {
        let v = lp(2, 1);
        assert!(v
            .to_decimal(200)
            .starts_with("0.693147180559945309417232121458176568075500134360255254"));
        assert_eq!(v.to_decimal(53), "0.6931471805599453");
    }

    #[test]
    fn bound_profile_basics() {
        let mut b = BoundProfile::new();
        assert!(b.is_identically_zero());
        b.raise(Place::Archimedean, 0.5);
        b.raise(Place::Archimedean, 0.25);
        assert_eq!(b.get(Place::Archimedean), 0.5);
        assert_eq!(b.get(Place::finite(2).unwrap()), 0.0);
    }
}
