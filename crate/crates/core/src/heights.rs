//! Local and global heights attached to presentations, the Weil height and
//! the arithmetic distance on `P^N`.
//!
//! `lambda_D(x, v) = log max_j min_k |s_j / (s_D t_k)(x)|_v` is computed on a
//! single coordinate representative, so every ratio is of degree zero. At
//! finite places everything happens in valuations; at infinite places in
//! exact magnitudes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{HeightError, Result};
use crate::geometry::{points_equal, MultihomogPolynomial, ProjectivePoint};
use crate::logvalue::{BoundProfile, LogValue};
use crate::magnitude::Magnitude;
use crate::numeric;
use crate::places::{self, Place};
use crate::presentations::{
    diagonal_presentation, hypersurface_presentation, DivisorPresentation, SubschemePresentation,
};
use crate::quadratic::{self, ext_absolute_value, ext_valuation, places_above, ExtPlace, FieldElement, QuadraticField};

/// A place of `Q`, or a place of a quadratic field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LocalPlace {
    Base(Place),
    Ext(ExtPlace),
}

impl LocalPlace {
    /// The place of `Q` below.
    pub fn base(&self) -> Place {
        match self {
            LocalPlace::Base(v) => *v,
            LocalPlace::Ext(w) => w.base,
        }
    }

    pub fn local_degree(&self) -> u32 {
        match self {
            LocalPlace::Base(_) => 1,
            LocalPlace::Ext(w) => w.local_degree(),
        }
    }

    pub fn is_archimedean(&self) -> bool {
        self.base().is_archimedean()
    }

    pub fn field(&self) -> Option<QuadraticField> {
        match self {
            LocalPlace::Base(_) => None,
            LocalPlace::Ext(w) => Some(w.field),
        }
    }
}

impl From<Place> for LocalPlace {
    fn from(v: Place) -> Self {
        LocalPlace::Base(v)
    }
}

impl From<ExtPlace> for LocalPlace {
    fn from(w: ExtPlace) -> Self {
        LocalPlace::Ext(w)
    }
}

impl fmt::Display for LocalPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalPlace::Base(v) => write!(f, "{v}"),
            LocalPlace::Ext(w) => write!(f, "{w}"),
        }
    }
}

/// Indices attaining `min_divisor max_j min_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub divisor: usize,
    pub section: usize,
    pub denominator: usize,
}

#[derive(Clone, Debug)]
pub struct LocalHeightResult {
    pub value: LogValue,
    pub place: LocalPlace,
    /// `None` when the value is `+inf`.
    pub witness: Option<Witness>,
}

/// A global height together with the field whose places were summed.
#[derive(Clone, Debug)]
pub struct HeightValue {
    pub value: LogValue,
    pub field: Option<QuadraticField>,
}

impl fmt::Display for HeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

struct DivisorValues {
    s_d: FieldElement,
    s: Vec<FieldElement>,
    t: Vec<FieldElement>,
}

fn evaluate_divisor(d: &DivisorPresentation, x: &ProjectivePoint) -> DivisorValues {
    let rep = x.coords();
    DivisorValues {
        s_d: d.s_d().evaluate(rep),
        s: d.l_sections().iter().map(|p| p.evaluate(rep)).collect(),
        t: d.m_sections().iter().map(|p| p.evaluate(rep)).collect(),
    }
}

fn check_point(ambient_ok: bool, x: &ProjectivePoint, w: &LocalPlace) -> Result<()> {
    if !ambient_ok {
        return Err(HeightError::AmbientMismatch(format!("point on {}", x.ambient())));
    }
    match (x.field(), w) {
        (Some(f), LocalPlace::Base(_)) => Err(HeightError::FieldMismatch(format!(
            "point over {f} needs a place of {f}, got {w}"
        ))),
        (Some(f), LocalPlace::Ext(e)) if f != e.field => Err(HeightError::FieldMismatch(format!(
            "point over {f}, place of {}",
            e.field
        ))),
        _ => Ok(()),
    }
}

/// Normalized valuation at a finite place.
fn valuation_at(alpha: &FieldElement, w: &LocalPlace) -> Result<BigRational> {
    match w {
        LocalPlace::Base(Place::Finite(p)) => {
            let a = alpha
                .as_rational()
                .ok_or_else(|| HeightError::FieldMismatch("irrational value at a place of Q".into()))?;
            Ok(BigRational::from_integer(numeric::rat_valuation(a, p.get()).into()))
        }
        LocalPlace::Ext(e) => ext_valuation(alpha, e),
        LocalPlace::Base(Place::Archimedean) => unreachable!("valuation at an infinite place"),
    }
}

fn magnitude_at(alpha: &FieldElement, w: &LocalPlace) -> Result<Magnitude> {
    match w {
        LocalPlace::Base(Place::Archimedean) => {
            let a = alpha
                .as_rational()
                .ok_or_else(|| HeightError::FieldMismatch("irrational value at a place of Q".into()))?;
            Ok(Magnitude::from_rational(a))
        }
        LocalPlace::Ext(e) => ext_absolute_value(alpha, e),
        LocalPlace::Base(Place::Finite(_)) => unreachable!("magnitude at a finite place"),
    }
}

/// Index of the largest `|values[i]|_w` among nonzero entries, lowest index
/// on ties, with that entry's valuation (finite) or magnitude (infinite).
enum Size {
    Val(BigRational),
    Mag(Magnitude),
}

fn largest(values: &[FieldElement], w: &LocalPlace) -> Result<Option<(usize, Size)>> {
    let mut best: Option<(usize, Size)> = None;
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let size = if w.is_archimedean() {
            Size::Mag(magnitude_at(v, w)?)
        } else {
            Size::Val(valuation_at(v, w)?)
        };
        let better = match (&best, &size) {
            (None, _) => true,
            (Some((_, Size::Val(b))), Size::Val(s)) => s < b,
            (Some((_, Size::Mag(b))), Size::Mag(s)) => s.try_cmp(b)? == Ordering::Greater,
            _ => unreachable!(),
        };
        if better {
            best = Some((i, size));
        }
    }
    Ok(best)
}

fn divisor_height(vals: &DivisorValues, w: &LocalPlace, index: usize) -> Result<(LogValue, Option<Witness>)> {
    if vals.s_d.is_zero() {
        return Ok((LogValue::infinity(), None));
    }
    let Some((k, t_size)) = largest(&vals.t, w)? else {
        return Ok((LogValue::infinity(), None));
    };
    let Some((j, s_size)) = largest(&vals.s, w)? else {
        return Err(HeightError::DegenerateSections { divisor: index });
    };
    let witness = Some(Witness {
        divisor: index,
        section: j,
        denominator: k,
    });
    let value = match (s_size, t_size) {
        (Size::Val(vs), Size::Val(vt)) => {
            let p = w.base().prime().expect("finite place");
            let vd = valuation_at(&vals.s_d, w)?;
            LogValue::log_prime(p, -(vs - vd - vt))
        }
        (Size::Mag(ms), Size::Mag(mt)) => {
            let md = magnitude_at(&vals.s_d, w)?;
            let ratio = ms.div(&md.mul(&mt)?)?;
            LogValue::log_magnitude(BigRational::one(), ratio).canonicalize()?
        }
        _ => unreachable!(),
    };
    Ok((value, witness))
}

fn min_over_divisors(values: &[DivisorValues], w: LocalPlace) -> Result<LocalHeightResult> {
    let mut best = LocalHeightResult {
        value: LogValue::infinity(),
        place: w,
        witness: None,
    };
    for (i, vals) in values.iter().enumerate() {
        let (value, witness) = divisor_height(vals, &w, i)?;
        if value.exact_cmp(&best.value)? == Ordering::Less {
            best = LocalHeightResult {
                value,
                place: w,
                witness,
            };
        }
    }
    Ok(best)
}

/// `lambda_D(x, w)`.
pub fn local_height_divisor(
    d: &DivisorPresentation,
    x: &ProjectivePoint,
    w: impl Into<LocalPlace>,
) -> Result<LocalHeightResult> {
    let w = w.into();
    check_point(d.ambient() == x.ambient(), x, &w)?;
    let (value, witness) = divisor_height(&evaluate_divisor(d, x), &w, 0)?;
    Ok(LocalHeightResult {
        value,
        place: w,
        witness,
    })
}

/// `lambda_Y(x, w)`: the minimum over the divisors of the presentation.
pub fn local_height(
    y: &SubschemePresentation,
    x: &ProjectivePoint,
    w: impl Into<LocalPlace>,
) -> Result<LocalHeightResult> {
    let w = w.into();
    check_point(y.ambient() == x.ambient(), x, &w)?;
    let values: Vec<DivisorValues> = y.divisors().iter().map(|d| evaluate_divisor(d, x)).collect();
    min_over_divisors(&values, w)
}

/// `log |s_j / (s_D t_k)(x)|_w` for the indices of a witness.
pub fn witness_value(
    y: &SubschemePresentation,
    x: &ProjectivePoint,
    w: impl Into<LocalPlace>,
    witness: Witness,
) -> Result<LogValue> {
    let w = w.into();
    let d = &y.divisors()[witness.divisor];
    let vals = evaluate_divisor(d, x);
    let s = &vals.s[witness.section];
    let t = &vals.t[witness.denominator];
    if s.is_zero() {
        return Err(HeightError::DegenerateSections {
            divisor: witness.divisor,
        });
    }
    if w.is_archimedean() {
        let m = magnitude_at(s, &w)?.div(&magnitude_at(&vals.s_d, &w)?.mul(&magnitude_at(t, &w)?)?)?;
        LogValue::log_magnitude(BigRational::one(), m).canonicalize()
    } else {
        let c = valuation_at(s, &w)? - valuation_at(&vals.s_d, &w)? - valuation_at(t, &w)?;
        Ok(LogValue::log_prime(w.base().prime().unwrap(), -c))
    }
}

fn archimedean_places(field: Option<QuadraticField>) -> Vec<LocalPlace> {
    match field {
        None => vec![LocalPlace::Base(Place::Archimedean)],
        Some(f) => places_above(Place::Archimedean, f)
            .into_iter()
            .map(LocalPlace::Ext)
            .collect(),
    }
}

/// Places of the point's field over the given primes.
fn finite_places(field: Option<QuadraticField>, primes: &BTreeSet<u64>) -> Vec<LocalPlace> {
    let mut out = Vec::new();
    for &p in primes {
        let v = Place::finite(p).expect("factor is prime");
        match field {
            None => out.push(LocalPlace::Base(v)),
            Some(f) => out.extend(places_above(v, f).into_iter().map(LocalPlace::Ext)),
        }
    }
    out
}

/// Primes at which some value can have a nonzero valuation.
fn candidate_primes<'a>(
    field: Option<QuadraticField>,
    values: impl IntoIterator<Item = &'a FieldElement>,
) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for v in values {
        if v.is_zero() {
            continue;
        }
        match v.as_rational() {
            Some(r) if field.is_none() => {
                out.extend(numeric::prime_factors(r.numer().magnitude())?);
                out.extend(numeric::prime_factors(r.denom().magnitude())?);
            }
            _ => out.extend(quadratic::candidate_primes(v)?),
        }
    }
    if let Some(f) = field {
        out.extend(quadratic::discriminant_primes(f));
    }
    Ok(out)
}

fn ensure_off_subscheme(values: &[DivisorValues]) -> Result<()> {
    if values.iter().all(|v| v.s_d.is_zero()) {
        return Err(HeightError::OnSubscheme {
            divisors: (0..values.len()).collect(),
        });
    }
    Ok(())
}

/// Every place where `lambda_Y(x, .)` is nonzero, with its value.
pub fn local_height_support(
    y: &SubschemePresentation,
    x: &ProjectivePoint,
) -> Result<BTreeMap<LocalPlace, LocalHeightResult>> {
    if y.ambient() != x.ambient() {
        return Err(HeightError::AmbientMismatch(format!(
            "{} vs {}",
            y.ambient(),
            x.ambient()
        )));
    }
    let x = x.normalized();
    let values: Vec<DivisorValues> = y.divisors().iter().map(|d| evaluate_divisor(d, &x)).collect();
    ensure_off_subscheme(&values)?;
    let field = x.field();
    let primes = candidate_primes(
        field,
        values
            .iter()
            .flat_map(|v| std::iter::once(&v.s_d).chain(&v.s).chain(&v.t)),
    )?;
    let mut out = BTreeMap::new();
    for w in archimedean_places(field)
        .into_iter()
        .chain(finite_places(field, &primes))
    {
        let r = min_over_divisors(&values, w)?;
        if !r.value.is_zero() {
            out.insert(w, r);
        }
    }
    Ok(out)
}

fn weight(w: &LocalPlace, field: Option<QuadraticField>) -> BigRational {
    match field {
        None => BigRational::one(),
        Some(_) => BigRational::new(w.local_degree().into(), 2.into()),
    }
}

/// `h_Y(x)`, summed over the places of the point's field of definition.
pub fn global_height(y: &SubschemePresentation, x: &ProjectivePoint) -> Result<HeightValue> {
    let field = x.field();
    let support = local_height_support(y, x)?;
    let mut total = LogValue::zero();
    for (w, r) in &support {
        total = total.add(&r.value.scale(&weight(w, field)));
    }
    Ok(HeightValue {
        value: total.canonicalize()?,
        field,
    })
}

/// `h_Y(x)` for a rational point, summed over the places of `field` instead.
pub fn global_height_in_field(
    y: &SubschemePresentation,
    x: &ProjectivePoint,
    field: QuadraticField,
) -> Result<HeightValue> {
    global_height(y, &x.over_field(field)?)
}

/// Places where some value of `values` may have absolute value other than 1,
/// together with all infinite places.
fn places_for(field: Option<QuadraticField>, values: &[FieldElement]) -> Result<Vec<LocalPlace>> {
    let primes = candidate_primes(field, values)?;
    Ok(archimedean_places(field)
        .into_iter()
        .chain(finite_places(field, &primes))
        .collect())
}

/// `sum_w weight_w * log max_i |x_i|_w` over the given places.
fn weighted_log_max(values: &[FieldElement], places: &[LocalPlace], field: Option<QuadraticField>) -> Result<LogValue> {
    let mut total = LogValue::zero();
    for w in places {
        let wt = weight(w, field);
        match largest(values, w)? {
            Some((_, Size::Val(v))) => {
                total = total.add(&LogValue::log_prime(w.base().prime().unwrap(), -v * &wt));
            }
            Some((_, Size::Mag(m))) => total = total.add(&LogValue::log_magnitude(wt, m)),
            None => unreachable!("nonzero block"),
        }
    }
    total.canonicalize()
}

/// The absolute logarithmic Weil height on `P^N`, computed directly from the
/// coordinates and again as the height of a hyperplane presentation plus the
/// (vanishing) product-formula correction. The two must agree exactly.
pub fn weil_height(x: &ProjectivePoint) -> Result<HeightValue> {
    if x.ambient().num_blocks() != 1 {
        return Err(HeightError::AmbientMismatch(
            "Weil height needs a single projective space".into(),
        ));
    }
    let x = x.normalized();
    let field = x.field();
    let coords = &x.coords()[0];
    let places = places_for(field, coords)?;

    let direct = match x.rational_coords().filter(|_| field.is_none()) {
        Some(c) => {
            let max = c[0]
                .iter()
                .map(Magnitude::from_rational)
                .fold(Magnitude::zero(), |a, b| {
                    if b.try_cmp(&a) == Ok(Ordering::Greater) {
                        b
                    } else {
                        a
                    }
                });
            LogValue::log_magnitude(BigRational::one(), max).canonicalize()?
        }
        None => weighted_log_max(coords, &places, field)?,
    };

    let i0 = coords.iter().position(|c| !c.is_zero()).expect("nonzero block");
    let hyperplane = hypersurface_presentation(&MultihomogPolynomial::variable(x.ambient(), 0, i0), None)?;
    let via_hyperplane = global_height(&SubschemePresentation::from_divisor(hyperplane), &x)?.value;
    let correction = weighted_log_max(std::slice::from_ref(&coords[i0]), &places, field)?;
    let second = via_hyperplane.add(&correction).canonicalize()?;

    if !direct.exact_eq(&second)? {
        return Err(HeightError::Inconsistent(format!(
            "Weil height of {x}: direct {direct} vs hyperplane route {second}"
        )));
    }
    Ok(HeightValue { value: direct, field })
}

fn check_distance_inputs(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<usize> {
    if x.ambient() != y.ambient() || x.ambient().num_blocks() != 1 {
        return Err(HeightError::AmbientMismatch(format!(
            "arithmetic distance needs two points of one P^N, got {} and {}",
            x.ambient(),
            y.ambient()
        )));
    }
    Ok(x.ambient().blocks()[0] - 1)
}

/// `delta(x, y, w)`, the local height of the diagonal at `(x, y)`;
/// `+inf` when `x = y`.
pub fn arithmetic_distance_local(
    x: &ProjectivePoint,
    y: &ProjectivePoint,
    w: impl Into<LocalPlace>,
) -> Result<LocalHeightResult> {
    let w = w.into();
    let n = check_distance_inputs(x, y)?;
    let pair = x.pair(y)?;
    check_point(true, &pair, &w)?;
    if points_equal(x, y)? {
        return Ok(LocalHeightResult {
            value: LogValue::infinity(),
            place: w,
            witness: None,
        });
    }
    local_height(&diagonal_presentation(n)?, &pair, w)
}

/// Global arithmetic distance of two distinct points.
pub fn arithmetic_distance_global(x: &ProjectivePoint, y: &ProjectivePoint) -> Result<HeightValue> {
    let n = check_distance_inputs(x, y)?;
    if points_equal(x, y)? {
        return Err(HeightError::IdenticalPoints);
    }
    global_height(&diagonal_presentation(n)?, &x.pair(y)?)
}

/// Sup over the samples of `|lambda_Y - lambda_Y'|` per place of `Q`.
/// Places outside every support contribute 0.
pub fn estimate_bound_profile(
    y: &SubschemePresentation,
    y2: &SubschemePresentation,
    samples: &[ProjectivePoint],
) -> Result<BoundProfile> {
    let mut profile = BoundProfile::new();
    for x in samples {
        let a = local_height_support(y, x)?;
        let b = local_height_support(y2, x)?;
        let places: BTreeSet<&LocalPlace> = a.keys().chain(b.keys()).collect();
        for w in places {
            let va = a.get(w).map(|r| r.value.clone()).unwrap_or_else(LogValue::zero);
            let vb = b.get(w).map(|r| r.value.clone()).unwrap_or_else(LogValue::zero);
            let diff = va.sub(&vb);
            let diff = if diff.exact_cmp(&LogValue::zero())? == Ordering::Less {
                diff.scale(&-BigRational::one())
            } else {
                diff
            };
            profile.raise(w.base(), diff.to_f64());
        }
    }
    Ok(profile)
}

/// The sum `sum_v log |x|_v` over the places of `Q` for a rational number,
/// exposed for product-formula checks.
pub fn product_formula_sum(x: &BigRational) -> Result<LogValue> {
    if x.is_zero() {
        return Err(HeightError::InfiniteValuation);
    }
    places::log_abs_sum(x)?.canonicalize()
}
