//! Quadratic fields `Q(sqrt d)`, their elements, and the places lying over
//! each place of `Q`.
//!
//! Absolute values on `Q(sqrt d)` are normalized to extend those of `Q`:
//! `|alpha|_w = p^(-val_w(alpha))` with `val_w` restricting to `v_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{HeightError, Result};
use crate::magnitude::Magnitude;
use crate::numeric;
use crate::places::{Place, Prime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadraticField {
    d: i64,
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<QuadraticField> {
        if d == 0 || d == 1 {
            return Err(HeightError::InvalidField(format!(
                "d = {d} does not define a quadratic field"
            )));
        }
        if !numeric::rational_is_square_free(d) {
            return Err(HeightError::InvalidField(format!("{d} is not squarefree")));
        }
        Ok(QuadraticField { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        if self.d.rem_euclid(4) == 1 {
            self.d
        } else {
            4 * self.d
        }
    }

    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    fn d_rat(&self) -> BigRational {
        BigRational::from_integer(self.d.into())
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.d)
    }
}

pub fn make_field(d: i64) -> Result<QuadraticField> {
    QuadraticField::new(d)
}

/// `a + b sqrt(d)`; with `field == None` this is the rational `a` (`b == 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    a: BigRational,
    b: BigRational,
    field: Option<QuadraticField>,
}

impl FieldElement {
    pub fn rational(a: BigRational) -> Self {
        FieldElement {
            a,
            b: BigRational::zero(),
            field: None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        FieldElement::rational(BigRational::from_integer(n.into()))
    }

    pub fn quadratic(a: BigRational, b: BigRational, field: QuadraticField) -> Self {
        FieldElement {
            a,
            b,
            field: Some(field),
        }
    }

    pub fn zero() -> Self {
        FieldElement::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        FieldElement::rational(BigRational::one())
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn field(&self) -> Option<QuadraticField> {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    /// The same number viewed inside `field`.
    pub fn embed(&self, field: QuadraticField) -> Result<Self> {
        match self.field {
            Some(f) if f != field => Err(HeightError::FieldMismatch(format!("{f} vs {field}"))),
            _ => Ok(FieldElement::quadratic(self.a.clone(), self.b.clone(), field)),
        }
    }

    fn joint_field(&self, other: &Self) -> Option<QuadraticField> {
        match (self.field, other.field) {
            (Some(f), Some(g)) => {
                assert_eq!(f, g, "arithmetic across different quadratic fields");
                Some(f)
            }
            (f, None) | (None, f) => f,
        }
    }

    pub fn norm(&self) -> BigRational {
        match self.field {
            None => &self.a * &self.a,
            Some(f) => &self.a * &self.a - &self.b * &self.b * f.d_rat(),
        }
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn conjugate(&self) -> Self {
        FieldElement {
            a: self.a.clone(),
            b: -&self.b,
            field: self.field,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        FieldElement {
            a: &self.a * c,
            b: &self.b * c,
            field: self.field,
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverse of zero");
        let c = self.conjugate();
        match self.field {
            None => FieldElement::rational(BigRational::one() / &self.a),
            Some(_) => c.scale(&(BigRational::one() / n)),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = FieldElement::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.joint_field(rhs),
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            field: self.joint_field(rhs),
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let field = self.joint_field(rhs);
        let d = field.map(|f| f.d_rat()).unwrap_or_else(BigRational::zero);
        FieldElement {
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            field,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -&self.a,
            b: -&self.b,
            field: self.field,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            None => write!(f, "{}", self.a),
            Some(_) if self.b.is_zero() => write!(f, "{}", self.a),
            Some(k) => {
                if self.a.is_zero() {
                    write!(f, "{}*sqrt({})", self.b, k.d)
                } else if self.b.is_negative() {
                    write!(f, "{}-{}*sqrt({})", self.a, -&self.b, k.d)
                } else {
                    write!(f, "{}+{}*sqrt({})", self.a, self.b, k.d)
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EmbeddingSign {
    Plus,
    Minus,
}

/// How a place of `Q(sqrt d)` sits over its base place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtPlaceKind {
    /// `sqrt(d) -> +/- sqrt(d)` in `R` (`d > 0`).
    RealEmbedding(EmbeddingSign),
    /// The conjugate pair of complex embeddings (`d < 0`).
    ComplexPair,
    /// One of two places over a split prime, identified by the residue of
    /// `sqrt(d)`: modulo `p` for odd `p`, modulo 4 for `p = 2`.
    Split {
        root_seed: u64,
    },
    Inert,
    Ramified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtPlace {
    pub field: QuadraticField,
    pub base: Place,
    pub kind: ExtPlaceKind,
}

impl ExtPlace {
    pub fn local_degree(&self) -> u32 {
        match self.kind {
            ExtPlaceKind::RealEmbedding(_) | ExtPlaceKind::Split { .. } => 1,
            ExtPlaceKind::ComplexPair | ExtPlaceKind::Inert | ExtPlaceKind::Ramified => 2,
        }
    }
}

impl fmt::Display for ExtPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.base, self.kind) {
            (_, ExtPlaceKind::RealEmbedding(EmbeddingSign::Plus)) => write!(f, "inf:+"),
            (_, ExtPlaceKind::RealEmbedding(EmbeddingSign::Minus)) => write!(f, "inf:-"),
            (_, ExtPlaceKind::ComplexPair) => write!(f, "inf:complex"),
            (b, ExtPlaceKind::Split { root_seed }) => write!(f, "{b}:split(root {root_seed})"),
            (b, ExtPlaceKind::Inert) => write!(f, "{b}:inert"),
            (b, ExtPlaceKind::Ramified) => write!(f, "{b}:ram"),
        }
    }
}

/// All places of `field` above `v`, split places ordered by their seed.
pub fn places_above(v: Place, field: QuadraticField) -> Vec<ExtPlace> {
    let mk = |kind| ExtPlace { field, base: v, kind };
    match v {
        Place::Archimedean => {
            if field.is_real() {
                vec![
                    mk(ExtPlaceKind::RealEmbedding(EmbeddingSign::Plus)),
                    mk(ExtPlaceKind::RealEmbedding(EmbeddingSign::Minus)),
                ]
            } else {
                vec![mk(ExtPlaceKind::ComplexPair)]
            }
        }
        Place::Finite(p) => {
            let p = p.get();
            let disc = field.discriminant();
            if disc.rem_euclid(p as i64) == 0 {
                return vec![mk(ExtPlaceKind::Ramified)];
            }
            if p == 2 {
                return if field.d.rem_euclid(8) == 1 {
                    vec![
                        mk(ExtPlaceKind::Split { root_seed: 1 }),
                        mk(ExtPlaceKind::Split { root_seed: 3 }),
                    ]
                } else {
                    vec![mk(ExtPlaceKind::Inert)]
                };
            }
            match numeric::sqrt_mod_prime(field.d, p) {
                Some((r1, r2)) => vec![
                    mk(ExtPlaceKind::Split { root_seed: r1 }),
                    mk(ExtPlaceKind::Split { root_seed: r2 }),
                ],
                None => vec![mk(ExtPlaceKind::Inert)],
            }
        }
    }
}

/// Square root of `d` modulo `p^k`, lifted from the smaller root mod `p`.
pub fn hensel_sqrt(d: i64, p: u64, k: u32) -> Result<BigUint> {
    Prime::new(p)?;
    if p == 2 || d.rem_euclid(p as i64) == 0 {
        return Err(HeightError::UnsupportedHensel { d, p });
    }
    let (seed, _) = numeric::sqrt_mod_prime(d, p).ok_or(HeightError::NotSplit { d, p })?;
    Ok(numeric::hensel_lift(d, p, seed, k.max(1)))
}

/// Lift of the root identified by a split place, correct modulo `p^k`.
fn split_root(field: QuadraticField, p: u64, seed: u64, k: u32) -> BigUint {
    if p == 2 {
        numeric::two_adic_sqrt(field.d, seed, k)
    } else {
        numeric::hensel_lift(field.d, p, seed, k)
    }
}

/// `(A, B, c)` integers with `alpha = (A + B sqrt d) / c`.
fn clear_denominators(alpha: &FieldElement) -> (BigInt, BigInt, BigInt) {
    let c = alpha.a.denom().lcm(alpha.b.denom());
    let big_a = alpha.a.numer() * (&c / alpha.a.denom());
    let big_b = alpha.b.numer() * (&c / alpha.b.denom());
    (big_a, big_b, c)
}

/// Normalized valuation `val_w(alpha)` at a finite place, with
/// `|alpha|_w = p^(-val)`.
pub fn ext_valuation(alpha: &FieldElement, w: &ExtPlace) -> Result<BigRational> {
    if alpha.is_zero() {
        return Err(HeightError::InfiniteValuation);
    }
    let p = w
        .base
        .prime()
        .ok_or_else(|| HeightError::InvalidPlace("valuation needs a finite place".into()))?;
    let alpha = alpha.embed(w.field)?;
    match w.kind {
        ExtPlaceKind::Inert | ExtPlaceKind::Ramified => {
            let v = numeric::rat_valuation(&alpha.norm(), p);
            Ok(BigRational::new(v.into(), 2.into()))
        }
        ExtPlaceKind::Split { root_seed } => {
            let (big_a, big_b, c) = clear_denominators(&alpha);
            let norm = &big_a * &big_a - &big_b * &big_b * BigInt::from(w.field.d);
            // both places have val >= 0 on Z[sqrt d] and they sum to v_p(norm),
            // so precision v_p(norm) + 1 already decides; escalate defensively
            let mut k = numeric::int_valuation(&norm, p) as u32 + 1;
            let p_big = BigInt::from(p);
            loop {
                let modulus = p_big.pow(k);
                let root = BigInt::from(split_root(w.field, p, root_seed, k));
                let image = (&big_a + &big_b * root).mod_floor(&modulus);
                if !image.is_zero() {
                    let v = numeric::int_valuation(&image, p) - numeric::int_valuation(&c, p);
                    return Ok(BigRational::from_integer(v.into()));
                }
                k *= 2;
            }
        }
        _ => Err(HeightError::InvalidPlace("valuation needs a finite place".into())),
    }
}

pub fn ext_absolute_value(alpha: &FieldElement, w: &ExtPlace) -> Result<Magnitude> {
    if alpha.is_zero() {
        return Ok(Magnitude::zero());
    }
    let alpha = alpha.embed(w.field)?;
    match w.kind {
        ExtPlaceKind::RealEmbedding(sign) => {
            let b = match sign {
                EmbeddingSign::Plus => alpha.b.clone(),
                EmbeddingSign::Minus => -&alpha.b,
            };
            Ok(Magnitude::real_quadratic(&alpha.a, &b, w.field.d))
        }
        ExtPlaceKind::ComplexPair => Ok(Magnitude::sqrt_of(&alpha.norm())),
        _ => {
            let p = w.base.prime().expect("finite place");
            Ok(Magnitude::prime_power(p, &-ext_valuation(&alpha, w)?))
        }
    }
}

#[derive(Clone, Debug)]
pub struct DegreeReport {
    pub field: QuadraticField,
    pub place: Place,
    pub decomposition: Vec<(ExtPlace, u32)>,
    pub total: u32,
    pub holds: bool,
}

/// `[L:Q] = sum over w | v of [L_w : Q_v]`.
pub fn check_degree_formula(field: QuadraticField, v: Place) -> DegreeReport {
    let decomposition: Vec<_> = places_above(v, field)
        .into_iter()
        .map(|w| (w, w.local_degree()))
        .collect();
    let total = decomposition.iter().map(|(_, d)| d).sum();
    DegreeReport {
        field,
        place: v,
        decomposition,
        total,
        holds: total == 2,
    }
}

#[derive(Clone, Debug)]
pub struct NormReport {
    pub place: Place,
    /// `(w, |alpha|_w, [L_w : Q_v])` per place above `v`.
    pub local: Vec<(ExtPlace, Magnitude, u32)>,
    pub norm_abs: Magnitude,
    pub holds: bool,
}

/// `prod over w | v of |alpha|_w^[L_w:Q_v] = |N(alpha)|_v`, checked exactly.
pub fn check_norm_formula(alpha: &FieldElement, field: QuadraticField, v: Place) -> Result<NormReport> {
    if alpha.is_zero() {
        return Err(HeightError::InfiniteValuation);
    }
    let alpha = alpha.embed(field)?;
    let norm = alpha.norm();
    let norm_abs = crate::places::absolute_value(&norm, v);
    let mut local = Vec::new();
    let holds = match v {
        Place::Finite(p) => {
            let mut sum = BigRational::zero();
            for w in places_above(v, field) {
                let val = ext_valuation(&alpha, &w)?;
                sum += &val * BigRational::from_integer(w.local_degree().into());
                local.push((w, ext_absolute_value(&alpha, &w)?, w.local_degree()));
            }
            sum == BigRational::from_integer(numeric::rat_valuation(&norm, p.get()).into())
        }
        Place::Archimedean => {
            let mut product = Magnitude::one();
            for w in places_above(v, field) {
                let m = ext_absolute_value(&alpha, &w)?;
                product = product.mul(&m.pow(w.local_degree() as i64))?;
                local.push((w, m, w.local_degree()));
            }
            product == norm_abs
        }
    };
    Ok(NormReport {
        place: v,
        local,
        norm_abs,
        holds,
    })
}

/// Primes whose places could see `alpha` with nonzero valuation:
/// those dividing the norm or the denominators of `a`, `b`.
pub(crate) fn candidate_primes(alpha: &FieldElement) -> Result<std::collections::BTreeSet<u64>> {
    let mut out = std::collections::BTreeSet::new();
    if alpha.is_zero() {
        return Ok(out);
    }
    let n = alpha.norm();
    out.extend(numeric::prime_factors(n.numer().magnitude())?);
    out.extend(numeric::prime_factors(n.denom().magnitude())?);
    out.extend(numeric::prime_factors(alpha.a.denom().magnitude())?);
    out.extend(numeric::prime_factors(alpha.b.denom().magnitude())?);
    Ok(out)
}

pub(crate) fn discriminant_primes(field: QuadraticField) -> Vec<u64> {
    let disc = BigUint::from(field.discriminant().unsigned_abs());
    numeric::prime_factors(&disc)
        .expect("discriminant fits in u64")
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn q(a: i64, b: i64, d: i64) -> FieldElement {
        FieldElement::quadratic(rat(a, 1), rat(b, 1), QuadraticField::new(d).unwrap())
    }

    #[test]
    fn make_field_examples() {
        assert_eq!(make_field(2).unwrap().d(), 2);
        assert_eq!(make_field(-1).unwrap().discriminant(), -4);
        assert!(matches!(make_field(12), Err(HeightError::InvalidField(_))));
        assert!(make_field(0).is_err());
        assert!(make_field(1).is_err());
        assert_eq!(make_field(5).unwrap().discriminant(), 5);
    }

    #[test]
    fn norm_trace_conjugate() {
        assert_eq!(q(1, 1, 2).norm(), rat(-1, 1));
        assert_eq!(q(3, 0, 5).norm(), rat(9, 1));
        assert_eq!(q(2, -3, -1).trace(), rat(4, 1));
        let a = q(3, -7, 10);
        assert_eq!(
            &a * &a.conjugate(),
            FieldElement::quadratic(a.norm(), rat(0, 1), a.field().unwrap())
        );
        assert_eq!(
            &a * &a.inv(),
            FieldElement::quadratic(rat(1, 1), rat(0, 1), a.field().unwrap())
        );
    }

    #[test]
    fn places_above_examples() {
        let f2 = make_field(2).unwrap();
        let seven = places_above(Place::finite(7).unwrap(), f2);
        let kinds: Vec<_> = seven.iter().map(|w| (w.kind, w.local_degree())).collect();
        assert_eq!(
            kinds,
            vec![
                (ExtPlaceKind::Split { root_seed: 3 }, 1),
                (ExtPlaceKind::Split { root_seed: 4 }, 1)
            ]
        );
        let five = places_above(Place::finite(5).unwrap(), f2);
        assert_eq!(five.len(), 1);
        assert_eq!((five[0].kind, five[0].local_degree()), (ExtPlaceKind::Inert, 2));
        let gauss = places_above(Place::Archimedean, make_field(-1).unwrap());
        assert_eq!((gauss[0].kind, gauss[0].local_degree()), (ExtPlaceKind::ComplexPair, 2));
        let two = places_above(Place::finite(2).unwrap(), f2);
        assert_eq!(two[0].kind, ExtPlaceKind::Ramified);
        let two_split = places_above(Place::finite(2).unwrap(), make_field(-7).unwrap());
        assert_eq!(two_split.len(), 2);
        let two_inert = places_above(Place::finite(2).unwrap(), make_field(5).unwrap());
        assert_eq!(two_inert[0].kind, ExtPlaceKind::Inert);
    }

    #[test]
    fn brute_force_split_matches_residues() {
        // oracle: count roots of x^2 - d over F_p by enumeration
        for d in [-7i64, -3, -2, -1, 2, 3, 5, 10] {
            let field = make_field(d).unwrap();
            for p in (3u64..=101).filter(|&p| numeric::is_prime(p)) {
                let roots: Vec<u64> = (0..p)
                    .filter(|x| (x * x) % p == d.rem_euclid(p as i64) as u64)
                    .collect();
                let above = places_above(Place::finite(p).unwrap(), field);
                if field.discriminant().rem_euclid(p as i64) == 0 {
                    assert_eq!(above[0].kind, ExtPlaceKind::Ramified);
                } else if roots.len() == 2 {
                    let seeds: Vec<_> = above
                        .iter()
                        .map(|w| match w.kind {
                            ExtPlaceKind::Split { root_seed } => root_seed,
                            _ => panic!("expected split"),
                        })
                        .collect();
                    assert_eq!(seeds, roots);
                } else {
                    assert_eq!(above[0].kind, ExtPlaceKind::Inert, "d={d} p={p}");
                }
            }
        }
    }

    #[test]
    fn hensel_sqrt_examples() {
        assert_eq!(hensel_sqrt(2, 7, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(hensel_sqrt(2, 7, 2).unwrap(), BigUint::from(10u32));
        assert_eq!(hensel_sqrt(3, 5, 1), Err(HeightError::NotSplit { d: 3, p: 5 }));
        assert_eq!(hensel_sqrt(2, 2, 3), Err(HeightError::UnsupportedHensel { d: 2, p: 2 }));
        assert_eq!(hensel_sqrt(7, 7, 3), Err(HeightError::UnsupportedHensel { d: 7, p: 7 }));
    }

    #[test]
    fn hensel_coherence() {
        for (d, p) in [(2i64, 7u64), (-1, 5), (10, 3), (-7, 11)] {
            for k in 2..12 {
                let hi = hensel_sqrt(d, p, k).unwrap();
                let lo = hensel_sqrt(d, p, k - 1).unwrap();
                assert_eq!(hi % BigUint::from(p).pow(k - 1), lo);
            }
        }
    }

    #[test]
    fn ext_valuation_examples() {
        let f2 = make_field(2).unwrap();
        let split3 = ExtPlace {
            field: f2,
            base: Place::finite(7).unwrap(),
            kind: ExtPlaceKind::Split { root_seed: 3 },
        };
        assert_eq!(ext_valuation(&q(1, 1, 2), &split3).unwrap(), rat(0, 1));
        let ram = places_above(Place::finite(2).unwrap(), f2)[0];
        assert_eq!(ext_valuation(&q(0, 1, 2), &ram).unwrap(), rat(1, 2));
        let inert5 = places_above(Place::finite(5).unwrap(), f2)[0];
        assert_eq!(ext_valuation(&q(5, 0, 2), &inert5).unwrap(), rat(1, 1));
        // 3 + sqrt2 has norm 7: one split place sees it, the other does not
        let vals: Vec<_> = places_above(Place::finite(7).unwrap(), f2)
            .iter()
            .map(|w| ext_valuation(&q(3, 1, 2), w).unwrap())
            .collect();
        assert_eq!(vals.iter().sum::<BigRational>(), rat(1, 1));
        assert!(vals.contains(&rat(0, 1)) && vals.contains(&rat(1, 1)));
        assert_eq!(
            ext_valuation(&FieldElement::zero(), &split3),
            Err(HeightError::InfiniteValuation)
        );
    }

    #[test]
    fn ext_absolute_value_examples() {
        let f2 = make_field(2).unwrap();
        let minus = places_above(Place::Archimedean, f2)[1];
        let m = ext_absolute_value(&q(1, 1, 2), &minus).unwrap();
        assert_eq!(m, Magnitude::real_quadratic(&rat(-1, 1), &rat(1, 1), 2));
        let complex = places_above(Place::Archimedean, make_field(-1).unwrap())[0];
        let m = ext_absolute_value(&q(1, 1, -1), &complex).unwrap();
        assert_eq!(m, Magnitude::sqrt_of(&rat(2, 1)));
        assert!(ext_absolute_value(&FieldElement::zero(), &complex).unwrap().is_zero());
    }

    #[test]
    fn degree_and_norm_formula_examples() {
        let f2 = make_field(2).unwrap();
        let r = check_degree_formula(f2, Place::finite(7).unwrap());
        assert!(r.holds && r.decomposition.len() == 2);
        let r = check_degree_formula(f2, Place::finite(2).unwrap());
        assert!(r.holds && r.decomposition.len() == 1);
        assert!(check_degree_formula(make_field(-1).unwrap(), Place::Archimedean).holds);

        assert!(
            check_norm_formula(&q(1, 1, 2), f2, Place::finite(7).unwrap())
                .unwrap()
                .holds
        );
        let r = check_norm_formula(&q(0, 1, 2), f2, Place::finite(2).unwrap()).unwrap();
        assert!(r.holds);
        assert_eq!(r.norm_abs, Magnitude::from_rational(&rat(1, 2)));
        assert!(check_norm_formula(&q(1, 1, 2), f2, Place::Archimedean).unwrap().holds);
    }

    #[test]
    fn two_adic_split_valuations() {
        // in Q(sqrt -7), 2 = ((1 + sqrt-7)/2) ((1 - sqrt-7)/2)
        let f = make_field(-7).unwrap();
        let pi = FieldElement::quadratic(rat(1, 2), rat(1, 2), f);
        let vals: Vec<_> = places_above(Place::finite(2).unwrap(), f)
            .iter()
            .map(|w| ext_valuation(&pi, w).unwrap())
            .collect();
        assert_eq!(vals.iter().sum::<BigRational>(), rat(1, 1));
        assert!(vals.contains(&rat(0, 1)));
    }
}
