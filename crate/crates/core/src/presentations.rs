//! Presentations of Cartier divisors and closed subschemes by sections of
//! line bundles `O(a_1, ..., a_k)`.
//!
//! A divisor presentation `(s_D; L, s_i; M, t_j)` records a defining
//! section `s_D` of `L (x) M^-1` and generating sections of `L` and `M`.
//! The identification `L (x) M^-1 = O(D)` is carried by degrees alone.

use std::fmt;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HeightError, Result};
use crate::geometry::{Ambient, Morphism, Multidegree, MultihomogPolynomial, ProjectivePoint};
use crate::quadratic::FieldElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorPresentation {
    ambient: Ambient,
    s_d: MultihomogPolynomial,
    l_degree: Multidegree,
    l_sections: Vec<MultihomogPolynomial>,
    m_degree: Multidegree,
    m_sections: Vec<MultihomogPolynomial>,
}

fn degree_problems(
    ambient: &Ambient,
    s_d: &MultihomogPolynomial,
    l_degree: &[u32],
    l_sections: &[MultihomogPolynomial],
    m_degree: &[u32],
    m_sections: &[MultihomogPolynomial],
) -> Vec<String> {
    let mut out = Vec::new();
    let k = ambient.num_blocks();
    if l_degree.len() != k || m_degree.len() != k {
        out.push(format!("degrees must have {k} entries"));
        return out;
    }
    if s_d.ambient() != ambient {
        out.push("s_D lives on a different ambient".into());
    }
    if s_d.is_zero() {
        out.push("s_D is zero".into());
    }
    let expected: Vec<i64> = l_degree
        .iter()
        .zip(m_degree)
        .map(|(l, m)| *l as i64 - *m as i64)
        .collect();
    if expected.iter().any(|&e| e < 0) {
        out.push(format!("L - M = {expected:?} has a negative entry"));
    } else if !s_d.is_zero() && s_d.multidegree().iter().map(|&e| e as i64).collect::<Vec<_>>() != expected {
        out.push(format!(
            "s_D has degree {:?}, expected L - M = {expected:?}",
            s_d.multidegree()
        ));
    }
    for (name, degree, sections) in [("L", l_degree, l_sections), ("M", m_degree, m_sections)] {
        if sections.is_empty() {
            out.push(format!("{name} has no sections"));
        }
        for (i, s) in sections.iter().enumerate() {
            if s.ambient() != ambient {
                out.push(format!("{name} section {i} lives on a different ambient"));
            } else if s.is_zero() {
                out.push(format!("{name} section {i} is zero"));
            } else if s.multidegree().as_slice() != degree {
                out.push(format!(
                    "{name} section {i} has degree {:?}, expected {degree:?}",
                    s.multidegree()
                ));
            }
        }
    }
    out
}

impl DivisorPresentation {
    pub fn new(
        s_d: MultihomogPolynomial,
        l_degree: Multidegree,
        l_sections: Vec<MultihomogPolynomial>,
        m_degree: Multidegree,
        m_sections: Vec<MultihomogPolynomial>,
    ) -> Result<Self> {
        let ambient = s_d.ambient().clone();
        let problems = degree_problems(&ambient, &s_d, &l_degree, &l_sections, &m_degree, &m_sections);
        if let Some(first) = problems.into_iter().next() {
            return Err(if first.contains("zero") || first.contains("no sections") {
                HeightError::InvalidPresentation(first)
            } else {
                HeightError::DegreeMismatch(first)
            });
        }
        Ok(Self::new_unchecked(s_d, l_degree, l_sections, m_degree, m_sections))
    }

    /// Skips validation; [`validate`] reports what is wrong with the result.
    pub fn new_unchecked(
        s_d: MultihomogPolynomial,
        l_degree: Multidegree,
        l_sections: Vec<MultihomogPolynomial>,
        m_degree: Multidegree,
        m_sections: Vec<MultihomogPolynomial>,
    ) -> Self {
        DivisorPresentation {
            ambient: s_d.ambient().clone(),
            s_d,
            l_degree,
            l_sections,
            m_degree,
            m_sections,
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn s_d(&self) -> &MultihomogPolynomial {
        &self.s_d
    }

    pub fn l_degree(&self) -> &Multidegree {
        &self.l_degree
    }

    pub fn l_sections(&self) -> &[MultihomogPolynomial] {
        &self.l_sections
    }

    pub fn m_degree(&self) -> &Multidegree {
        &self.m_degree
    }

    pub fn m_sections(&self) -> &[MultihomogPolynomial] {
        &self.m_sections
    }

    /// The same presentation with one `L` section removed.
    pub fn without_l_section(&self, index: usize) -> Self {
        let mut out = self.clone();
        out.l_sections.remove(index);
        out
    }
}

impl fmt::Display for DivisorPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[MultihomogPolynomial]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "({}; O{:?}, {{{}}}; O{:?}, {{{}}})",
            self.s_d,
            self.l_degree,
            list(&self.l_sections),
            self.m_degree,
            list(&self.m_sections)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubschemePresentation {
    divisors: Vec<DivisorPresentation>,
    label: Option<String>,
}

impl SubschemePresentation {
    pub fn new(divisors: Vec<DivisorPresentation>, label: Option<String>) -> Result<Self> {
        let first = divisors
            .first()
            .ok_or_else(|| HeightError::InvalidPresentation("no divisors".into()))?;
        if let Some(d) = divisors.iter().find(|d| d.ambient != first.ambient) {
            return Err(HeightError::AmbientMismatch(format!(
                "{} vs {}",
                d.ambient, first.ambient
            )));
        }
        Ok(SubschemePresentation { divisors, label })
    }

    pub fn from_divisor(d: DivisorPresentation) -> Self {
        SubschemePresentation {
            divisors: vec![d],
            label: None,
        }
    }

    pub fn divisors(&self) -> &[DivisorPresentation] {
        &self.divisors
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn ambient(&self) -> &Ambient {
        &self.divisors[0].ambient
    }

    /// The same presentation with one divisor removed.
    pub fn without_divisor(&self, index: usize) -> Result<Self> {
        let mut divisors = self.divisors.clone();
        divisors.remove(index);
        SubschemePresentation::new(divisors, self.label.clone())
    }
}

/// `V(g)` with `L = O(deg g)` generated by `sections` (default: all
/// monomials) and trivial `M`.
pub fn hypersurface_presentation(
    g: &MultihomogPolynomial,
    sections: Option<Vec<MultihomogPolynomial>>,
) -> Result<DivisorPresentation> {
    if g.is_zero() {
        return Err(HeightError::InvalidPresentation("defining polynomial is zero".into()));
    }
    let ambient = g.ambient();
    let l_sections = match sections {
        Some(s) => s,
        None => MultihomogPolynomial::monomial_basis(ambient, g.multidegree()),
    };
    DivisorPresentation::new(
        g.clone(),
        g.multidegree().clone(),
        l_sections,
        ambient.zero_degree(),
        vec![MultihomogPolynomial::one(ambient)],
    )
}

pub fn subscheme_presentation(generators: &[MultihomogPolynomial]) -> Result<SubschemePresentation> {
    if generators.is_empty() {
        return Err(HeightError::InvalidPresentation("no generators".into()));
    }
    let divisors = generators
        .iter()
        .map(|g| hypersurface_presentation(g, None))
        .collect::<Result<Vec<_>>>()?;
    SubschemePresentation::new(divisors, None)
}

fn products(a: &[MultihomogPolynomial], b: &[MultihomogPolynomial]) -> Result<Vec<MultihomogPolynomial>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            out.push(p.mul(q)?);
        }
    }
    Ok(out)
}

fn add_degrees(a: &[u32], b: &[u32]) -> Multidegree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `D + E`: product of the defining sections and of the section families.
/// Duplicate products are kept.
pub fn sum(d: &DivisorPresentation, e: &DivisorPresentation) -> Result<DivisorPresentation> {
    if d.ambient != e.ambient {
        return Err(HeightError::AmbientMismatch(format!("{} vs {}", d.ambient, e.ambient)));
    }
    Ok(DivisorPresentation::new_unchecked(
        d.s_d.mul(&e.s_d)?,
        add_degrees(&d.l_degree, &e.l_degree),
        products(&d.l_sections, &e.l_sections)?,
        add_degrees(&d.m_degree, &e.m_degree),
        products(&d.m_sections, &e.m_sections)?,
    ))
}

/// `Y cap W`: the divisors of both, concatenated.
pub fn intersect(y: &SubschemePresentation, w: &SubschemePresentation) -> Result<SubschemePresentation> {
    let mut divisors = y.divisors.clone();
    divisors.extend(w.divisors.iter().cloned());
    SubschemePresentation::new(divisors, None)
}

/// `Y + W`: all pairwise sums `D_i + E_j`.
pub fn add_subschemes(y: &SubschemePresentation, w: &SubschemePresentation) -> Result<SubschemePresentation> {
    let mut divisors = Vec::with_capacity(y.divisors.len() * w.divisors.len());
    for d in &y.divisors {
        for e in &w.divisors {
            divisors.push(sum(d, e)?);
        }
    }
    SubschemePresentation::new(divisors, None)
}

fn pull_degree(phi: &Morphism, degree: &[u32]) -> Multidegree {
    let mut out = phi.source().zero_degree();
    for (b, d) in degree.iter().enumerate() {
        for (k, e) in phi.block_degree(b).iter().enumerate() {
            out[k] += d * e;
        }
    }
    out
}

fn pull_family(phi: &Morphism, sections: &[MultihomogPolynomial], name: &str) -> Result<Vec<MultihomogPolynomial>> {
    sections
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let p = s.compose(phi)?;
            if p.is_zero() {
                Err(HeightError::PullbackNotDefined(format!(
                    "{name} section {i} ({s}) pulls back to zero"
                )))
            } else {
                Ok(p)
            }
        })
        .collect()
}

pub fn pullback_divisor(phi: &Morphism, d: &DivisorPresentation) -> Result<DivisorPresentation> {
    if phi.target() != &d.ambient {
        return Err(HeightError::AmbientMismatch(format!(
            "morphism lands in {}, presentation lives on {}",
            phi.target(),
            d.ambient
        )));
    }
    let s_d = d.s_d.compose(phi)?;
    if s_d.is_zero() {
        return Err(HeightError::PullbackNotDefined(format!(
            "the image of the morphism lies in V({})",
            d.s_d
        )));
    }
    DivisorPresentation::new(
        s_d,
        pull_degree(phi, &d.l_degree),
        pull_family(phi, &d.l_sections, "L")?,
        pull_degree(phi, &d.m_degree),
        pull_family(phi, &d.m_sections, "M")?,
    )
}

pub fn pullback(phi: &Morphism, y: &SubschemePresentation) -> Result<SubschemePresentation> {
    let divisors = y
        .divisors
        .iter()
        .map(|d| pullback_divisor(phi, d))
        .collect::<Result<Vec<_>>>()?;
    SubschemePresentation::new(divisors, y.label.clone())
}

/// The diagonal of `P^n x P^n`, cut out by the minors `x_i y_j - x_j y_i`.
pub fn diagonal_presentation(n: usize) -> Result<SubschemePresentation> {
    if n < 1 {
        return Err(HeightError::InvalidPresentation("diagonal needs N >= 1".into()));
    }
    let ambient = Ambient::product_of(&[n, n]);
    let var = |b, j| MultihomogPolynomial::variable(&ambient, b, j);
    let mut divisors = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            let minor = var(0, i).mul(&var(1, j))?.sub(&var(0, j).mul(&var(1, i))?)?;
            divisors.push(hypersurface_presentation(&minor, None)?);
        }
    }
    SubschemePresentation::new(divisors, Some("diagonal".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionFamily {
    L,
    M,
}

#[derive(Clone, Debug)]
pub enum ValidationStatus {
    /// Degree bookkeeping or nonvanishing failed.
    DegreeFail(Vec<String>),
    /// A point where a whole section family vanishes.
    ProvenFail {
        divisor: usize,
        family: SectionFamily,
        witness: ProjectivePoint,
    },
    /// No common zero found among the probe points; not a proof.
    HeuristicPass { probes: usize },
}

impl ValidationStatus {
    pub fn label(&self) -> &'static str {
        match self {
            ValidationStatus::DegreeFail(_) => "DEGREE-FAIL",
            ValidationStatus::ProvenFail { .. } => "PROVEN-FAIL",
            ValidationStatus::HeuristicPass { .. } => "HEURISTIC-PASS",
        }
    }
}

fn probe_points(ambient: &Ambient, trial: &[ProjectivePoint], seed: u64) -> Vec<ProjectivePoint> {
    let mut out: Vec<ProjectivePoint> = trial.iter().filter(|p| p.ambient() == ambient).cloned().collect();
    // products of coordinate vertices
    let mut vertex_choices: Vec<Vec<usize>> = vec![Vec::new()];
    for &size in ambient.blocks() {
        vertex_choices = vertex_choices
            .into_iter()
            .flat_map(|prefix| {
                (0..size).map(move |j| {
                    let mut v = prefix.clone();
                    v.push(j);
                    v
                })
            })
            .collect();
        if vertex_choices.len() > 256 {
            vertex_choices.truncate(256);
        }
    }
    for choice in vertex_choices {
        let coords = ambient
            .blocks()
            .iter()
            .zip(&choice)
            .map(|(&size, &j)| (0..size).map(|i| FieldElement::from_int((i == j) as i64)).collect())
            .collect();
        out.push(ProjectivePoint::new(ambient, None, coords).expect("vertex is a point"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut added = 0;
    while added < 64 {
        let coords: Vec<Vec<FieldElement>> = ambient
            .blocks()
            .iter()
            .map(|&size| {
                (0..size)
                    .map(|_| FieldElement::from_int(rng.gen_range(-3..=3)))
                    .collect()
            })
            .collect();
        if let Ok(p) = ProjectivePoint::new(ambient, None, coords) {
            out.push(p);
            added += 1;
        }
    }
    out
}

/// Check degrees exactly and probe the section families for common zeros
/// at the trial points, the coordinate vertices and seeded small points.
pub fn validate(y: &SubschemePresentation, trial_points: &[ProjectivePoint]) -> ValidationStatus {
    let mut problems = Vec::new();
    for (i, d) in y.divisors.iter().enumerate() {
        for p in degree_problems(
            &d.ambient,
            &d.s_d,
            &d.l_degree,
            &d.l_sections,
            &d.m_degree,
            &d.m_sections,
        ) {
            problems.push(format!("divisor {i}: {p}"));
        }
    }
    if !problems.is_empty() {
        return ValidationStatus::DegreeFail(problems);
    }
    let probes = probe_points(y.ambient(), trial_points, 0x5eed);
    for pt in &probes {
        for (i, d) in y.divisors.iter().enumerate() {
            for (family, sections) in [(SectionFamily::L, &d.l_sections), (SectionFamily::M, &d.m_sections)] {
                if sections.iter().all(|s| s.evaluate(pt.coords()).is_zero()) {
                    return ValidationStatus::ProvenFail {
                        divisor: i,
                        family,
                        witness: pt.clone(),
                    };
                }
            }
        }
    }
    ValidationStatus::HeuristicPass { probes: probes.len() }
}

/// Convenience: the rational constant `c` as a polynomial on `ambient`.
pub fn constant_section(ambient: &Ambient, c: i64) -> MultihomogPolynomial {
    MultihomogPolynomial::constant(ambient, BigRational::from_integer(c.into()))
}
