//! Executable checks of the identities and bounded-difference statements
//! satisfied by local and global heights, run over seeded samples.
//!
//! Exact checks compare canonical [`LogValue`]s; bound checks compare floats
//! against a [`BoundProfile`] and only ever establish empirical evidence.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HeightError, Result};
use crate::geometry::{parse_polynomial, points_equal, Ambient, Morphism, ProjectivePoint};
use crate::heights::{
    arithmetic_distance_local, global_height, global_height_in_field, local_height, local_height_support, LocalPlace,
};
use crate::logvalue::{BoundProfile, LogValue};
use crate::numeric;
use crate::places::{self, Place};
use crate::presentations::{
    add_subschemes, diagonal_presentation, hypersurface_presentation, intersect, pullback, pullback_divisor,
    subscheme_presentation, sum, DivisorPresentation, SubschemePresentation,
};
use crate::quadratic::{
    check_degree_formula, check_norm_formula, ext_valuation, hensel_sqrt, places_above, FieldElement, QuadraticField,
};

/// Slack used when comparing floating-point values against a bound.
pub const BOUND_SLACK: f64 = 1e-12;

const MAX_WITNESSES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub count: usize,
    pub seed: u64,
    /// Numerators and denominators are bounded by this in absolute value.
    pub coordinate_height_bound: u64,
    pub field: Option<QuadraticField>,
}

impl SampleSpec {
    pub fn new(count: usize, seed: u64) -> Self {
        SampleSpec {
            count,
            seed,
            coordinate_height_bound: 20,
            field: None,
        }
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.coordinate_height_bound = bound;
        self
    }

    pub fn with_field(mut self, field: Option<QuadraticField>) -> Self {
        self.field = field;
        self
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }
}

/// Deterministic source of rationals, field elements and points.
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
    field: Option<QuadraticField>,
}

impl Sampler {
    pub fn new(spec: &SampleSpec) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(spec.seed),
            bound: spec.coordinate_height_bound.clamp(1, i64::MAX as u64) as i64,
            field: spec.field,
        }
    }

    /// `n / m` with `|n| <= B` and `1 <= m <= B`; zero is possible.
    pub fn rational(&mut self) -> BigRational {
        let n = self.rng.gen_range(-self.bound..=self.bound);
        let m = self.rng.gen_range(1..=self.bound);
        BigRational::new(n.into(), m.into())
    }

    pub fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn integer(&mut self) -> BigRational {
        BigRational::from_integer(self.rng.gen_range(-self.bound..=self.bound).into())
    }

    /// A field element; irrational with positive probability when a field
    /// is set.
    pub fn element(&mut self) -> FieldElement {
        match self.field {
            None => FieldElement::rational(self.rational()),
            Some(f) => {
                let a = self.rational();
                let b = self.rational();
                FieldElement::quadratic(a, b, f)
            }
        }
    }

    /// A point with coordinates from [`Sampler::element`]; `None` when some
    /// block came out all zero.
    pub fn point(&mut self, ambient: &Ambient) -> Option<ProjectivePoint> {
        let coords = ambient
            .blocks()
            .iter()
            .map(|&size| (0..size).map(|_| self.element()).collect())
            .collect();
        ProjectivePoint::new(ambient, self.field, coords).ok()
    }

    /// A rational point with integer coordinates.
    pub fn integer_point(&mut self, ambient: &Ambient) -> Option<ProjectivePoint> {
        let coords = ambient
            .blocks()
            .iter()
            .map(|&size| (0..size).map(|_| FieldElement::rational(self.integer())).collect())
            .collect();
        ProjectivePoint::new(ambient, None, coords).ok()
    }
}

/// `spec.count` points accepted by `accept`, with at most `100 * count`
/// attempts.
pub fn sample_points(
    ambient: &Ambient,
    spec: &SampleSpec,
    mut accept: impl FnMut(&ProjectivePoint) -> Result<bool>,
) -> Result<Vec<ProjectivePoint>> {
    let mut sampler = Sampler::new(spec);
    let cap = spec.count.saturating_mul(100).max(100);
    let mut out = Vec::with_capacity(spec.count);
    let mut attempts = 0;
    while out.len() < spec.count {
        if attempts >= cap {
            return Err(HeightError::SamplingExhausted {
                attempts,
                accepted: out.len(),
                requested: spec.count,
            });
        }
        attempts += 1;
        if let Some(p) = sampler.point(ambient) {
            if accept(&p)? {
                out.push(p);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum CheckStatus {
    ExactPass,
    ExactFail,
    BoundPass(BoundProfile),
    BoundViolation(BoundProfile),
}

impl CheckStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CheckStatus::ExactPass => "EXACT-PASS",
            CheckStatus::ExactFail => "EXACT-FAIL",
            CheckStatus::BoundPass(_) => "BOUND-PASS",
            CheckStatus::BoundViolation(_) => "BOUND-VIOLATION",
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self, CheckStatus::ExactPass | CheckStatus::BoundPass(_))
    }
}

/// Inputs that reproduce a failure, with both sides of the comparison.
#[derive(Clone, Debug)]
pub struct CheckWitness {
    pub points: Vec<ProjectivePoint>,
    pub place: Option<LocalPlace>,
    pub lhs: LogValue,
    pub rhs: LogValue,
    pub note: String,
}

impl fmt::Display for CheckWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "points [{}]", pts.join(", "))?;
        if let Some(w) = &self.place {
            write!(f, " at {w}")?;
        }
        write!(f, ": lhs = {}, rhs = {}", self.lhs, self.rhs)?;
        if !self.note.is_empty() {
            write!(f, " ({})", self.note)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub check_name: String,
    pub status: CheckStatus,
    pub samples_used: usize,
    pub witnesses: Vec<CheckWitness>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} samples)",
            self.check_name,
            self.status.label(),
            self.samples_used
        )?;
        if let CheckStatus::BoundPass(p) | CheckStatus::BoundViolation(p) = &self.status {
            let parts: Vec<String> = p.iter().map(|(v, x)| format!("{v}: {x:.6}")).collect();
            write!(f, " profile {{{}}}", parts.join(", "))?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        for w in &self.witnesses {
            write!(f, "\n  witness: {w}")?;
        }
        Ok(())
    }
}

/// Accumulates exact comparisons for one check.
struct Tally {
    name: String,
    samples: usize,
    failures: usize,
    witnesses: Vec<CheckWitness>,
    notes: Vec<String>,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            name: name.to_string(),
            samples: 0,
            failures: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn compare(
        &mut self,
        points: &[&ProjectivePoint],
        place: Option<LocalPlace>,
        lhs: LogValue,
        rhs: LogValue,
        note: &str,
    ) -> Result<()> {
        if !lhs.exact_eq(&rhs)? {
            self.fail(points, place, lhs, rhs, note);
        }
        Ok(())
    }

    fn fail(
        &mut self,
        points: &[&ProjectivePoint],
        place: Option<LocalPlace>,
        lhs: LogValue,
        rhs: LogValue,
        note: &str,
    ) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(CheckWitness {
                points: points.iter().map(|p| (*p).clone()).collect(),
                place,
                lhs,
                rhs,
                note: note.to_string(),
            });
        }
    }

    fn exact(self) -> CheckReport {
        let status = if self.failures == 0 {
            CheckStatus::ExactPass
        } else {
            CheckStatus::ExactFail
        };
        self.finish(status)
    }

    fn bound(self, profile: BoundProfile) -> CheckReport {
        let status = if self.failures == 0 {
            CheckStatus::BoundPass(profile)
        } else {
            CheckStatus::BoundViolation(profile)
        };
        self.finish(status)
    }

    fn finish(mut self, status: CheckStatus) -> CheckReport {
        if self.failures > self.witnesses.len() {
            self.notes.push(format!(
                "{} failures, first {} kept",
                self.failures,
                self.witnesses.len()
            ));
        }
        CheckReport {
            check_name: self.name,
            status,
            samples_used: self.samples,
            witnesses: self.witnesses,
            notes: self.notes,
        }
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

/// Infinite places plus every place in the support of a presentation not
/// containing `x`.
fn places_for(x: &ProjectivePoint, presentations: &[&SubschemePresentation]) -> Result<BTreeSet<LocalPlace>> {
    let mut out: BTreeSet<LocalPlace> = archimedean_places(x.field()).into_iter().collect();
    for y in presentations {
        match local_height_support(y, x) {
            Ok(s) => out.extend(s.into_keys()),
            Err(HeightError::OnSubscheme { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn off(y: &SubschemePresentation, x: &ProjectivePoint) -> bool {
    y.divisors().iter().any(|d| !d.s_d().evaluate(x.coords()).is_zero())
}

fn off_divisor(d: &DivisorPresentation, x: &ProjectivePoint) -> bool {
    !d.s_d().evaluate(x.coords()).is_zero()
}

/// `lambda_{D+E} = lambda_D + lambda_E`.
pub fn check_sum_identity(d: &DivisorPresentation, e: &DivisorPresentation, spec: &SampleSpec) -> Result<CheckReport> {
    check_sum_identity_against(d, e, &sum(d, e)?, spec)
}

/// As [`check_sum_identity`] with the sum presentation supplied by the caller.
pub fn check_sum_identity_against(
    d: &DivisorPresentation,
    e: &DivisorPresentation,
    claimed_sum: &DivisorPresentation,
    spec: &SampleSpec,
) -> Result<CheckReport> {
    let yd = SubschemePresentation::from_divisor(d.clone());
    let ye = SubschemePresentation::from_divisor(e.clone());
    let ys = SubschemePresentation::from_divisor(claimed_sum.clone());
    let samples = sample_points(d.ambient(), spec, |x| Ok(off_divisor(d, x) && off_divisor(e, x)))?;
    let mut tally = Tally::new("sum-identity");
    for x in &samples {
        tally.samples += 1;
        for w in places_for(x, &[&yd, &ye, &ys])? {
            let lhs = local_height(&ys, x, w)?.value;
            let rhs = local_height(&yd, x, w)?.value.add(&local_height(&ye, x, w)?.value);
            tally.compare(&[x], Some(w), lhs, rhs, "lambda_{D+E} vs lambda_D + lambda_E")?;
        }
    }
    Ok(tally.exact())
}

/// `lambda_{phi^* D}(x) = lambda_D(phi(x))`.
pub fn check_functoriality(phi: &Morphism, d: &DivisorPresentation, spec: &SampleSpec) -> Result<CheckReport> {
    let pulled = SubschemePresentation::from_divisor(pullback_divisor(phi, d)?);
    let yd = SubschemePresentation::from_divisor(d.clone());
    let mut skipped = 0;
    let samples = sample_points(phi.source(), spec, |x| match phi.apply(x) {
        Ok(fx) => Ok(off_divisor(d, &fx)),
        Err(HeightError::IndeterminacyPoint { .. }) => {
            skipped += 1;
            Ok(false)
        }
        Err(e) => Err(e),
    })?;
    let mut tally = Tally::new("functoriality");
    if skipped > 0 {
        tally
            .notes
            .push(format!("{skipped} samples at indeterminacy points skipped"));
    }
    for x in &samples {
        tally.samples += 1;
        let fx = phi.apply(x)?;
        let mut places = places_for(x, &[&pulled])?;
        places.extend(places_for(&fx, &[&yd])?);
        for w in places {
            let lhs = local_height(&pulled, x, w)?.value;
            let rhs = local_height(&yd, &fx, w)?.value;
            tally.compare(&[x, &fx], Some(w), lhs, rhs, "lambda_{f^*D}(x) vs lambda_D(f(x))")?;
        }
    }
    Ok(tally.exact())
}

/// Intersection is the minimum, addition is the sum and, when a morphism
/// is given, pullback is composition.
pub fn check_basic_properties(
    y: &SubschemePresentation,
    w: &SubschemePresentation,
    phi: Option<&Morphism>,
    spec: &SampleSpec,
) -> Result<CheckReport> {
    check_basic_properties_against(y, w, &intersect(y, w)?, &add_subschemes(y, w)?, phi, spec)
}

/// As [`check_basic_properties`] with the intersection and sum supplied.
pub fn check_basic_properties_against(
    y: &SubschemePresentation,
    w: &SubschemePresentation,
    claimed_intersection: &SubschemePresentation,
    claimed_addition: &SubschemePresentation,
    phi: Option<&Morphism>,
    spec: &SampleSpec,
) -> Result<CheckReport> {
    let samples = sample_points(y.ambient(), spec, |x| Ok(off(y, x) && off(w, x)))?;
    let mut tally = Tally::new("basic-properties");
    for x in &samples {
        tally.samples += 1;
        for v in places_for(x, &[y, w, claimed_intersection, claimed_addition])? {
            let ly = local_height(y, x, v)?.value;
            let lw = local_height(w, x, v)?.value;
            let min = if ly.exact_cmp(&lw)?.is_le() {
                ly.clone()
            } else {
                lw.clone()
            };
            let li = local_height(claimed_intersection, x, v)?.value;
            tally.compare(&[x], Some(v), li, min, "lambda_{Y cap W} vs min")?;
            let la = local_height(claimed_addition, x, v)?.value;
            tally.compare(&[x], Some(v), la, ly.add(&lw), "lambda_{Y+W} vs lambda_Y + lambda_W")?;
        }
    }
    let mut parts = 2;
    if let Some(phi) = phi {
        parts += 1;
        let pulled = pullback(phi, y)?;
        let pts = sample_points(phi.source(), spec, |x| match phi.apply(x) {
            Ok(fx) => Ok(off(y, &fx)),
            Err(HeightError::IndeterminacyPoint { .. }) => Ok(false),
            Err(e) => Err(e),
        })?;
        for x in &pts {
            tally.samples += 1;
            let fx = phi.apply(x)?;
            let mut places = places_for(x, &[&pulled])?;
            places.extend(places_for(&fx, &[y])?);
            for v in places {
                let lhs = local_height(&pulled, x, v)?.value;
                let rhs = local_height(y, &fx, v)?.value;
                tally.compare(&[x, &fx], Some(v), lhs, rhs, "lambda_{f^*Y}(x) vs lambda_Y(f(x))")?;
            }
        }
    }
    tally.notes.push(format!("{parts} parts checked"));
    Ok(tally.exact())
}

fn abs_value(v: &LogValue) -> Result<LogValue> {
    Ok(if v.exact_cmp(&LogValue::zero())?.is_lt() {
        v.scale(&-BigRational::one())
    } else {
        v.clone()
    })
}

/// Empirical bound on `|lambda_Y - lambda_Y'|` for two presentations of the
/// same subscheme, optionally tested against a claimed profile.
pub fn check_independence(
    y: &SubschemePresentation,
    y2: &SubschemePresentation,
    spec: &SampleSpec,
    claimed: Option<&BoundProfile>,
) -> Result<CheckReport> {
    let samples = sample_points(y.ambient(), spec, |x| Ok(off(y, x) && off(y2, x)))?;
    let mut tally = Tally::new("independence");
    let mut profile = BoundProfile::new();
    for x in &samples {
        tally.samples += 1;
        let a = local_height_support(y, x)?;
        let b = local_height_support(y2, x)?;
        let places: BTreeSet<&LocalPlace> = a.keys().chain(b.keys()).collect();
        for w in places {
            let va = a.get(w).map(|r| r.value.clone()).unwrap_or_else(LogValue::zero);
            let vb = b.get(w).map(|r| r.value.clone()).unwrap_or_else(LogValue::zero);
            let diff = abs_value(&va.sub(&vb))?.to_f64();
            profile.raise(w.base(), diff);
            if let Some(c) = claimed {
                if diff > c.get(w.base()) + BOUND_SLACK {
                    let note = format!("|difference| = {diff:.15} exceeds {:.15}", c.get(w.base()));
                    tally.fail(&[x], Some(*w), va, vb, &note);
                }
            }
        }
    }
    if claimed.is_none() {
        tally.notes.push("no claimed profile; reporting the estimate".into());
    }
    Ok(tally.bound(profile))
}

fn delta(x: &ProjectivePoint, y: &ProjectivePoint, w: LocalPlace) -> Result<LogValue> {
    Ok(arithmetic_distance_local(x, y, w)?.value)
}

fn min_value(a: &LogValue, b: &LogValue) -> Result<LogValue> {
    Ok(if a.exact_cmp(b)?.is_le() { a.clone() } else { b.clone() })
}

/// `lhs <= rhs + gamma`: exactly when `gamma = 0`, with float slack
/// otherwise. Returns the excess `lhs - rhs` as a float (may be negative).
fn within(lhs: &LogValue, rhs: &LogValue, gamma: f64) -> Result<(bool, f64)> {
    if lhs.is_infinite() && rhs.is_infinite() {
        return Ok((true, f64::NEG_INFINITY));
    }
    if rhs.is_infinite() {
        return Ok((true, f64::NEG_INFINITY));
    }
    if lhs.is_infinite() {
        return Ok((false, f64::INFINITY));
    }
    let excess = lhs.sub(rhs);
    let f = excess.to_f64();
    if gamma == 0.0 {
        Ok((!excess.exact_cmp(&LogValue::zero())?.is_gt(), f))
    } else {
        Ok((f <= gamma + BOUND_SLACK, f))
    }
}

/// Symmetry and both triangle inequalities of the arithmetic distance on
/// `P^n`, over sampled triples. The bound profile in the status is the
/// smallest `gamma` for the first triangle inequality that the samples
/// allow.
pub fn check_distance_properties(
    n: usize,
    spec: &SampleSpec,
    gamma: &BoundProfile,
    subscheme: Option<&SubschemePresentation>,
) -> Result<CheckReport> {
    let ambient = Ambient::projective(n);
    let diag = diagonal_presentation(n)?;
    let mut sampler = Sampler::new(spec);
    let cap = spec.count.saturating_mul(100).max(100);
    let mut attempts = 0;
    let mut tally = Tally::new("distance");
    let mut observed = BoundProfile::new();
    let mut observed_ii = BoundProfile::new();
    let mut degenerate = 0;
    let mut symmetric_pairs = 0;
    while tally.samples < spec.count {
        if attempts >= cap {
            return Err(HeightError::SamplingExhausted {
                attempts,
                accepted: tally.samples,
                requested: spec.count,
            });
        }
        attempts += 1;
        let (Some(x), Some(y), Some(z)) = (
            sampler.point(&ambient),
            sampler.point(&ambient),
            sampler.point(&ambient),
        ) else {
            continue;
        };
        let (x, y, z) = (&x, &y, &z);
        if points_equal(x, y)? || points_equal(y, z)? || points_equal(x, z)? {
            degenerate += 1;
            continue;
        }
        tally.samples += 1;
        let xy = x.pair(y)?;
        let yz = y.pair(z)?;
        let xz = x.pair(z)?;
        let mut places: BTreeSet<LocalPlace> = archimedean_places(x.field()).into_iter().collect();
        for p in [&xy, &yz, &xz] {
            places.extend(local_height_support(&diag, p)?.into_keys());
        }
        for &w in &places {
            let dxy = delta(x, y, w)?;
            let dyx = delta(y, x, w)?;
            symmetric_pairs += 1;
            tally.compare(&[x, y], Some(w), dxy.clone(), dyx, "symmetry")?;
            let dyz = delta(y, z, w)?;
            let dxz = delta(x, z, w)?;
            let lhs = min_value(&dxy, &dyz)?;
            let g = gamma.get(w.base());
            let (ok, excess) = within(&lhs, &dxz, g)?;
            observed.raise(w.base(), excess.max(0.0));
            if !ok {
                let note = format!("triangle I: excess {excess:.15} over gamma {g}");
                tally.fail(&[x, y, z], Some(w), lhs, dxz, &note);
            }
        }
        if let Some(ys) = subscheme {
            if !off(ys, y) {
                continue;
            }
            let mut places: BTreeSet<LocalPlace> = archimedean_places(x.field()).into_iter().collect();
            places.extend(local_height_support(&diag, &xy)?.into_keys());
            places.extend(local_height_support(ys, y)?.into_keys());
            for w in places {
                let lx = local_height(ys, x, w)?.value;
                let ly = local_height(ys, y, w)?.value;
                let lhs = min_value(&lx, &delta(x, y, w)?)?;
                let g = gamma.get(w.base());
                let (ok, excess) = within(&lhs, &ly, g)?;
                observed_ii.raise(w.base(), excess.max(0.0));
                if !ok {
                    let note = format!("triangle II: excess {excess:.15} over gamma {g}");
                    tally.fail(&[x, y], Some(w), lhs, ly, &note);
                }
            }
        }
    }
    if degenerate > 0 {
        tally
            .notes
            .push(format!("{degenerate} triples with repeated points skipped"));
    }
    tally.notes.push(format!(
        "symmetry compared at {symmetric_pairs} (pair, place) combinations"
    ));
    let describe = |p: &BoundProfile| {
        let parts: Vec<String> = p.iter().map(|(v, x)| format!("{v}: {x:.15}")).collect();
        if parts.is_empty() {
            "0 everywhere".to_string()
        } else {
            parts.join(", ")
        }
    };
    tally
        .notes
        .push(format!("triangle I: empirical minimal gamma {}", describe(&observed)));
    if subscheme.is_some() {
        tally.notes.push(format!(
            "triangle II: empirical minimal gamma {}",
            describe(&observed_ii)
        ));
    }
    Ok(tally.bound(observed))
}

/// Additivity of global heights and, with a morphism, functoriality.
pub fn check_global_properties(
    y: &SubschemePresentation,
    w: &SubschemePresentation,
    phi: Option<&Morphism>,
    spec: &SampleSpec,
) -> Result<CheckReport> {
    let sum_yw = add_subschemes(y, w)?;
    let samples = sample_points(y.ambient(), spec, |x| Ok(off(y, x) && off(w, x)))?;
    let mut tally = Tally::new("global-properties");
    for x in &samples {
        tally.samples += 1;
        let lhs = global_height(&sum_yw, x)?.value;
        let rhs = global_height(y, x)?.value.add(&global_height(w, x)?.value);
        tally.compare(&[x], None, lhs, rhs, "h_{Y+W} vs h_Y + h_W")?;
    }
    match phi {
        Some(phi) => {
            let pulled = pullback(phi, y)?;
            let pts = sample_points(phi.source(), spec, |x| match phi.apply(x) {
                Ok(fx) => Ok(off(y, &fx)),
                Err(HeightError::IndeterminacyPoint { .. }) => Ok(false),
                Err(e) => Err(e),
            })?;
            for x in &pts {
                tally.samples += 1;
                let fx = phi.apply(x)?;
                let lhs = global_height(y, &fx)?.value;
                let rhs = global_height(&pulled, x)?.value;
                tally.compare(&[x, &fx], None, lhs, rhs, "h_Y(f(x)) vs h_{f^*Y}(x)")?;
            }
        }
        None => tally.notes.push("no morphism given; functoriality not checked".into()),
    }
    Ok(tally.exact())
}

/// The global height of a rational point summed over `Q` and over `Q(sqrt d)`.
pub fn check_field_independence(y: &SubschemePresentation, x: &ProjectivePoint, d: i64) -> Result<CheckReport> {
    let field = QuadraticField::new(d)?;
    let mut tally = Tally::new("field-independence");
    field_independence_at(&mut tally, y, x, field)?;
    Ok(tally.exact())
}

fn field_independence_at(
    tally: &mut Tally,
    y: &SubschemePresentation,
    x: &ProjectivePoint,
    field: QuadraticField,
) -> Result<()> {
    if !x.is_rational() {
        return Err(HeightError::FieldMismatch(
            "field independence needs a rational point".into(),
        ));
    }
    tally.samples += 1;
    let over_q = global_height(y, x)?.value;
    let over_k = global_height_in_field(y, x, field)?.value;
    tally.compare(&[x], None, over_q, over_k, &format!("Q vs {field}"))
}

/// [`check_field_independence`] over sampled rational points and several fields.
pub fn check_field_independence_sampled(
    y: &SubschemePresentation,
    ds: &[i64],
    spec: &SampleSpec,
) -> Result<CheckReport> {
    let fields = ds.iter().map(|&d| QuadraticField::new(d)).collect::<Result<Vec<_>>>()?;
    let rational = spec.clone().with_field(None);
    let samples = sample_points(y.ambient(), &rational, |x| Ok(off(y, x)))?;
    let mut tally = Tally::new("field-independence");
    for x in &samples {
        for &f in &fields {
            field_independence_at(&mut tally, y, x, f)?;
        }
    }
    Ok(tally.exact())
}

/// `sum_v log |x|_v = 0` for sampled nonzero rationals.
pub fn check_product_formula(spec: &SampleSpec) -> Result<CheckReport> {
    let mut sampler = Sampler::new(spec);
    let mut tally = Tally::new("product-formula");
    let dummy = ProjectivePoint::from_ints(&[&[1]])?;
    for _ in 0..spec.count {
        let x = sampler.nonzero_rational();
        tally.samples += 1;
        let total = places::log_abs_sum(&x)?.canonicalize()?;
        if !total.is_empty() {
            tally.fail(&[&dummy], None, total, LogValue::zero(), &format!("x = {x}"));
        }
    }
    Ok(tally.exact())
}

fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| numeric::is_prime(p)).collect()
}

/// `sum_{w | v} [L_w : Q_v] = 2` for every field and every place up to `max_prime`.
pub fn check_degree_formula_suite(ds: &[i64], max_prime: u64) -> Result<CheckReport> {
    let mut tally = Tally::new("degree-formula");
    let dummy = ProjectivePoint::from_ints(&[&[1]])?;
    for &d in ds {
        let field = QuadraticField::new(d)?;
        let mut places = vec![Place::Archimedean];
        places.extend(primes_up_to(max_prime).into_iter().map(|p| Place::finite(p).unwrap()));
        for v in places {
            tally.samples += 1;
            let r = check_degree_formula(field, v);
            if !r.holds {
                let total = LogValue::log_prime(2, BigRational::from_integer(r.total.into()));
                tally.fail(
                    &[&dummy],
                    None,
                    total,
                    LogValue::log_prime(2, BigRational::from_integer(2.into())),
                    &format!("{field} at {v}"),
                );
            }
        }
    }
    tally
        .notes
        .push("degree sums encoded as coefficients of log 2 in witnesses".into());
    Ok(tally.exact())
}

/// Exact norm formula at every place up to `max_prime` and at infinity, with
/// an additional floating-point agreement test.
pub fn check_norm_formula_suite(ds: &[i64], per_field: usize, max_prime: u64, seed: u64) -> Result<CheckReport> {
    let mut tally = Tally::new("norm-formula");
    let dummy = ProjectivePoint::from_ints(&[&[1]])?;
    let mut places = vec![Place::Archimedean];
    places.extend(primes_up_to(max_prime).into_iter().map(|p| Place::finite(p).unwrap()));
    let mut worst = 0.0f64;
    for &d in ds {
        let field = QuadraticField::new(d)?;
        let mut sampler = Sampler::new(
            &SampleSpec::new(per_field, seed ^ d as u64)
                .with_bound(1000)
                .with_field(Some(field)),
        );
        for _ in 0..per_field {
            let alpha = loop {
                let a = sampler.element();
                if !a.is_zero() {
                    break a;
                }
            };
            tally.samples += 1;
            for &v in &places {
                let r = check_norm_formula(&alpha, field, v)?;
                let lhs = LogValue::sum(
                    &r.local
                        .iter()
                        .map(|(_, m, deg)| LogValue::log_magnitude(BigRational::from_integer((*deg).into()), m.clone()))
                        .collect::<Vec<_>>(),
                );
                let rhs = LogValue::log_magnitude(BigRational::one(), r.norm_abs.clone());
                if !r.holds {
                    tally.fail(
                        &[&dummy],
                        Some(LocalPlace::Base(v)),
                        lhs.clone(),
                        rhs.clone(),
                        &format!("alpha = {alpha}"),
                    );
                }
                let gap = (lhs.to_float(64) - rhs.to_float(64)).abs();
                worst = worst.max(gap);
                if gap > 1e-12 {
                    tally.fail(
                        &[&dummy],
                        Some(LocalPlace::Base(v)),
                        lhs,
                        rhs,
                        &format!("float gap {gap:e} for alpha = {alpha}"),
                    );
                }
            }
        }
    }
    tally.notes.push(format!("largest float gap {worst:e}"));
    Ok(tally.exact())
}

/// Split valuations computed through Hensel lifts, against the norm minus the
/// valuation of the conjugate at the same place. Also checks the lifts.
pub fn check_hensel_coherence(d: i64, p: u64, count: usize, seed: u64) -> Result<CheckReport> {
    let field = QuadraticField::new(d)?;
    let v = Place::finite(p)?;
    let above = places_above(v, field);
    if above.len() != 2 {
        return Err(HeightError::NotSplit { d, p });
    }
    let mut tally = Tally::new("hensel");
    let dummy = ProjectivePoint::from_ints(&[&[1]])?;
    for k in 1..=12u32 {
        let r = BigInt::from(hensel_sqrt(d, p, k)?);
        let m = BigInt::from(p).pow(k);
        if ((&r * &r - BigInt::from(d)) % &m) != BigInt::zero() {
            tally.fail(
                &[&dummy],
                None,
                LogValue::zero(),
                LogValue::zero(),
                &format!("lift mod {p}^{k} is not a root"),
            );
        }
    }
    // exercise large valuations: multiply by powers of p and of a generator of a prime above p
    let mut sampler = Sampler::new(&SampleSpec::new(count, seed).with_bound(50).with_field(Some(field)));
    for i in 0..count {
        let mut alpha = loop {
            let a = sampler.element();
            if !a.is_zero() {
                break a;
            }
        };
        let pk = BigRational::from_integer(BigInt::from(p).pow((i % 4) as u32));
        alpha = alpha.scale(&pk);
        tally.samples += 1;
        let norm_val = BigRational::from_integer(numeric::rat_valuation(&alpha.norm(), p).into());
        for w in &above {
            let direct = ext_valuation(&alpha, w)?;
            let via_conjugate = &norm_val - ext_valuation(&alpha.conjugate(), w)?;
            if direct != via_conjugate {
                tally.fail(
                    &[&dummy],
                    Some(LocalPlace::Ext(*w)),
                    LogValue::log_prime(p, direct),
                    LogValue::log_prime(p, via_conjugate),
                    &format!("alpha = {alpha}"),
                );
            }
        }
    }
    Ok(tally.exact())
}

/// `lambda = +inf` on the presented subscheme and `delta(x, x) = +inf`, at
/// constructed points.
pub fn check_conventions(spec: &SampleSpec) -> Result<CheckReport> {
    let p2 = Ambient::projective(2);
    let point = subscheme_presentation(&[parse_polynomial("x0", &p2)?, parse_polynomial("x1", &p2)?])?;
    let conic = subscheme_presentation(&[parse_polynomial("x0*x2 - x1^2", &p2)?])?;
    let mut sampler = Sampler::new(spec);
    let mut tally = Tally::new("conventions");
    let inf = LogValue::infinity();
    let mut places = vec![Place::Archimedean];
    places.extend([2, 3, 5, 7].iter().map(|&p| Place::finite(p).unwrap()));
    let mut constructed = 0;
    while constructed < spec.count {
        let s = sampler.nonzero_rational();
        let t = sampler.rational();
        let on_point =
            ProjectivePoint::from_rationals(&p2, vec![vec![BigRational::zero(), BigRational::zero(), s.clone()]])?;
        let on_conic = ProjectivePoint::from_rationals(&p2, vec![vec![&s * &s, &s * &t, &t * &t]])?;
        let x = match sampler.point(&Ambient::projective(1)) {
            Some(x) => x,
            None => continue,
        };
        let c = FieldElement::rational(sampler.nonzero_rational());
        let x_scaled = x.rescaled(&[c])?;
        constructed += 1;
        tally.samples += 1;
        for &v in &places {
            let w = LocalPlace::Base(v);
            tally.compare(
                &[&on_point],
                Some(w),
                local_height(&point, &on_point, v)?.value,
                inf.clone(),
                "point",
            )?;
            tally.compare(
                &[&on_conic],
                Some(w),
                local_height(&conic, &on_conic, v)?.value,
                inf.clone(),
                "conic",
            )?;
            if x.is_rational() {
                tally.compare(
                    &[&x, &x_scaled],
                    Some(w),
                    delta(&x, &x_scaled, w)?,
                    inf.clone(),
                    "delta(x, x)",
                )?;
            }
        }
        if let Some(f) = x.field() {
            for w in archimedean_places(Some(f)) {
                tally.compare(
                    &[&x, &x_scaled],
                    Some(w),
                    delta(&x, &x_scaled, w)?,
                    inf.clone(),
                    "delta(x, x)",
                )?;
            }
        }
    }
    Ok(tally.exact())
}

/// Smallest `C >= 0` with `lambda_Y <= C lambda_W + gamma` on the samples,
/// or `None` if no such `C` exists there (a sample where the left side
/// exceeds `gamma` while `lambda_W <= 0`). Purely empirical.
pub fn search_support_constant(
    y: &SubschemePresentation,
    w: &SubschemePresentation,
    spec: &SampleSpec,
    gamma: &BoundProfile,
) -> Result<Option<f64>> {
    let samples = sample_points(y.ambient(), spec, |x| Ok(off(y, x) && off(w, x)))?;
    let mut c: f64 = 0.0;
    for x in &samples {
        for v in places_for(x, &[y, w])? {
            let ly = local_height(y, x, v)?.value.to_f64();
            let lw = local_height(w, x, v)?.value.to_f64();
            let need = ly - gamma.get(v.base());
            if need <= BOUND_SLACK {
                continue;
            }
            if lw <= 0.0 {
                return Ok(None);
            }
            c = c.max(need / lw);
        }
    }
    Ok(Some(c))
}

pub const SUITE_NAMES: [&str; 12] = [
    "product-formula",
    "degree-formula",
    "norm-formula",
    "hensel",
    "sum-identity",
    "functoriality",
    "basic-properties",
    "independence",
    "distance",
    "global-properties",
    "field-independence",
    "conventions",
];

fn poly(text: &str, a: &Ambient) -> Result<crate::geometry::MultihomogPolynomial> {
    parse_polynomial(text, a)
}

fn hyperplane(text: &str, a: &Ambient) -> Result<DivisorPresentation> {
    hypersurface_presentation(&poly(text, a)?, None)
}

fn morphism(source: &Ambient, target: &Ambient, comps: &[&[&str]]) -> Result<Morphism> {
    let components = comps
        .iter()
        .map(|b| b.iter().map(|t| poly(t, source)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(source, target, components)
}

const DEGREE_FIELDS: [i64; 8] = [-7, -3, -2, -1, 2, 3, 5, 10];

fn run_one(name: &str, spec: &SampleSpec) -> Result<CheckReport> {
    let p1 = Ambient::projective(1);
    let p2 = Ambient::projective(2);
    match name {
        "product-formula" => {
            check_product_formula(&spec.clone().with_bound(spec.coordinate_height_bound.max(1_000_000)))
        }
        "degree-formula" => check_degree_formula_suite(&DEGREE_FIELDS, 101),
        "norm-formula" => check_norm_formula_suite(&DEGREE_FIELDS, spec.count.min(100), 101, spec.seed),
        "hensel" => check_hensel_coherence(2, 7, spec.count, spec.seed),
        "sum-identity" => check_sum_identity(&hyperplane("x0", &p1)?, &hyperplane("x1", &p1)?, spec),
        "functoriality" => {
            let square = morphism(&p1, &p1, &[&["x0^2", "x1^2"]])?;
            check_functoriality(&square, &hyperplane("x0", &p1)?, spec)
        }
        "basic-properties" => {
            let point = subscheme_presentation(&[poly("x0", &p2)?, poly("x1", &p2)?])?;
            let conic = subscheme_presentation(&[poly("x0*x2 - x1^2", &p2)?])?;
            let cube = morphism(&p2, &p2, &[&["x0^2", "x1^2", "x2^2"]])?;
            check_basic_properties(&point, &conic, Some(&cube), spec)
        }
        "independence" => {
            let x0 = poly("x0", &p1)?;
            let standard = subscheme_presentation(std::slice::from_ref(&x0))?;
            let alternative = SubschemePresentation::from_divisor(hypersurface_presentation(
                &x0,
                Some(vec![x0.clone(), poly("x0 + x1", &p1)?]),
            )?);
            let claimed = BoundProfile::new().with(Place::Archimedean, std::f64::consts::LN_2);
            check_independence(&standard, &alternative, spec, Some(&claimed))
        }
        "distance" => {
            let gamma = BoundProfile::new().with(Place::Archimedean, 4f64.ln());
            let h = subscheme_presentation(&[poly("x0", &p1)?])?;
            check_distance_properties(1, spec, &gamma, Some(&h))
        }
        "global-properties" => {
            let a = SubschemePresentation::from_divisor(hyperplane("x0", &p1)?);
            let b = SubschemePresentation::from_divisor(hyperplane("x1", &p1)?);
            let square = morphism(&p1, &p1, &[&["x0^2", "x1^2"]])?;
            check_global_properties(&a, &b, Some(&square), spec)
        }
        "field-independence" => {
            let a = SubschemePresentation::from_divisor(hyperplane("x0", &p1)?);
            check_field_independence_sampled(&a, &[2, -1, 5], spec)
        }
        "conventions" => check_conventions(spec),
        other => Err(HeightError::UnknownSuite(other.to_string())),
    }
}

/// Run the named suites in order; `"all"` expands to every suite.
pub fn run_suite(names: &[&str], spec: &SampleSpec) -> Result<Vec<CheckReport>> {
    let mut expanded = Vec::new();
    for &n in names {
        if n == "all" {
            expanded.extend(SUITE_NAMES);
        } else if SUITE_NAMES.contains(&n) {
            expanded.push(n);
        } else {
            return Err(HeightError::UnknownSuite(n.to_string()));
        }
    }
    expanded.into_iter().map(|n| run_one(n, spec)).collect()
}
