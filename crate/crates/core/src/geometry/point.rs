use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Ambient;
use crate::error::{HeightError, Result};
use crate::quadratic::{FieldElement, QuadraticField};

/// A point of a multiprojective space with coordinates in `Q` or in a
/// quadratic field, stored as one representative.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    ambient: Ambient,
    field: Option<QuadraticField>,
    coords: Vec<Vec<FieldElement>>,
}

impl ProjectivePoint {
    /// Validate shapes, nonvanishing of every block and field consistency.
    /// With `field` set, every coordinate is moved into that field.
    pub fn new(
        ambient: &Ambient,
        field: Option<QuadraticField>,
        coords: Vec<Vec<FieldElement>>,
    ) -> Result<ProjectivePoint> {
        if coords.len() != ambient.num_blocks() {
            return Err(HeightError::InvalidPoint(format!(
                "expected {} blocks, got {}",
                ambient.num_blocks(),
                coords.len()
            )));
        }
        let mut out = Vec::with_capacity(coords.len());
        for (b, block) in coords.into_iter().enumerate() {
            if block.len() != ambient.blocks()[b] {
                return Err(HeightError::InvalidPoint(format!(
                    "block {b} has {} coordinates, expected {}",
                    block.len(),
                    ambient.blocks()[b]
                )));
            }
            if block.iter().all(FieldElement::is_zero) {
                return Err(HeightError::InvalidPoint(format!("block {b} is all zero")));
            }
            let mut converted = Vec::with_capacity(block.len());
            for c in block {
                converted.push(match (field, c.field()) {
                    (Some(f), _) => c.embed(f)?,
                    (None, None) => c,
                    (None, Some(_)) if c.is_rational() => FieldElement::rational(c.a().clone()),
                    (None, Some(g)) => {
                        return Err(HeightError::FieldMismatch(format!(
                            "coordinate {c} lies in {g} but the point is declared rational"
                        )))
                    }
                });
            }
            out.push(converted);
        }
        Ok(ProjectivePoint {
            ambient: ambient.clone(),
            field,
            coords: out,
        })
    }

    /// A rational point from integer coordinates on `P^{n_1} x ...`.
    pub fn from_ints(blocks: &[&[i64]]) -> Result<ProjectivePoint> {
        let ambient = Ambient::new(blocks.iter().map(|b| b.len()).collect())?;
        let coords = blocks
            .iter()
            .map(|b| b.iter().map(|&n| FieldElement::from_int(n)).collect())
            .collect();
        ProjectivePoint::new(&ambient, None, coords)
    }

    pub fn from_rationals(ambient: &Ambient, blocks: Vec<Vec<BigRational>>) -> Result<ProjectivePoint> {
        let coords = blocks
            .into_iter()
            .map(|b| b.into_iter().map(FieldElement::rational).collect())
            .collect();
        ProjectivePoint::new(ambient, None, coords)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn field(&self) -> Option<QuadraticField> {
        self.field
    }

    pub fn is_rational(&self) -> bool {
        self.field.is_none()
    }

    pub fn coords(&self) -> &[Vec<FieldElement>] {
        &self.coords
    }

    /// Rational coordinates, if every coordinate is rational.
    pub fn rational_coords(&self) -> Option<Vec<Vec<BigRational>>> {
        self.coords
            .iter()
            .map(|b| b.iter().map(|c| c.as_rational().cloned()).collect())
            .collect()
    }

    /// The same point regarded over `field`.
    pub fn over_field(&self, field: QuadraticField) -> Result<ProjectivePoint> {
        ProjectivePoint::new(&self.ambient, Some(field), self.coords.clone())
    }

    /// Representative with block `b` multiplied by `scalars[b]`.
    pub fn rescaled(&self, scalars: &[FieldElement]) -> Result<ProjectivePoint> {
        assert_eq!(scalars.len(), self.coords.len());
        let coords = self
            .coords
            .iter()
            .zip(scalars)
            .map(|(block, s)| block.iter().map(|c| c * s).collect())
            .collect();
        ProjectivePoint::new(&self.ambient, self.field, coords)
    }

    /// The pair `(self, other)` on the product ambient.
    pub fn pair(&self, other: &ProjectivePoint) -> Result<ProjectivePoint> {
        let field = joint_field(self.field, other.field)?;
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        ProjectivePoint::new(&self.ambient.times(&other.ambient), field, coords)
    }

    pub fn normalized(&self) -> ProjectivePoint {
        let coords = self.coords.iter().map(|b| normalize_block(b, self.field)).collect();
        ProjectivePoint {
            ambient: self.ambient.clone(),
            field: self.field,
            coords,
        }
    }
}

pub(crate) fn joint_field(a: Option<QuadraticField>, b: Option<QuadraticField>) -> Result<Option<QuadraticField>> {
    match (a, b) {
        (Some(f), Some(g)) if f != g => Err(HeightError::FieldMismatch(format!("{f} vs {g}"))),
        (Some(f), _) | (_, Some(f)) => Ok(Some(f)),
        _ => Ok(None),
    }
}

/// Clear denominators, divide by the content and make the first nonzero
/// rational component positive.
fn normalize_block(block: &[FieldElement], field: Option<QuadraticField>) -> Vec<FieldElement> {
    let parts: Vec<&BigRational> = block.iter().flat_map(|c| [c.a(), c.b()]).collect();
    let lcm = parts.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = parts.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if ints.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative()) {
        g = -g;
    }
    let factor = BigRational::new(lcm, g);
    block
        .iter()
        .map(|c| {
            let s = c.scale(&factor);
            match field {
                Some(f) => FieldElement::quadratic(s.a().clone(), s.b().clone(), f),
                None => s,
            }
        })
        .collect()
}

/// Canonical representative; idempotent and projectively equal to the input.
pub fn normalize_point(pt: &ProjectivePoint) -> ProjectivePoint {
    pt.normalized()
}

/// Projective equality: every per-block 2x2 minor vanishes.
pub fn points_equal(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<bool> {
    if p.ambient != q.ambient {
        return Err(HeightError::AmbientMismatch(format!("{} vs {}", p.ambient, q.ambient)));
    }
    joint_field(p.field, q.field)?;
    for (bp, bq) in p.coords.iter().zip(&q.coords) {
        for i in 0..bp.len() {
            for j in 0..bp.len() {
                if !(&(&bp[i] * &bq[j]) - &(&bp[j] * &bq[i])).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .coords
            .iter()
            .map(|b| {
                let parts: Vec<String> = b.iter().map(|c| c.to_string()).collect();
                format!("({})", parts.join(":"))
            })
            .collect();
        write!(f, "{}", blocks.join("x"))
    }
}
