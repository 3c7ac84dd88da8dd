use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Ambient, Morphism, Multidegree};
use crate::error::{HeightError, Result};
use crate::quadratic::FieldElement;

/// A polynomial with rational coefficients, homogeneous in each block of
/// coordinates. Exponent vectors run over all coordinates of the ambient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultihomogPolynomial {
    ambient: Ambient,
    terms: BTreeMap<Vec<u32>, BigRational>,
    multidegree: Multidegree,
}

pub(crate) fn monomial_degree(ambient: &Ambient, exps: &[u32]) -> Multidegree {
    let mut out = Vec::with_capacity(ambient.num_blocks());
    let mut start = 0;
    for &size in ambient.blocks() {
        out.push(exps[start..start + size].iter().sum());
        start += size;
    }
    out
}

impl MultihomogPolynomial {
    pub fn zero(ambient: &Ambient, multidegree: Multidegree) -> Self {
        assert_eq!(multidegree.len(), ambient.num_blocks());
        MultihomogPolynomial {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
            multidegree,
        }
    }

    pub fn constant(ambient: &Ambient, c: BigRational) -> Self {
        let mut p = MultihomogPolynomial::zero(ambient, ambient.zero_degree());
        if !c.is_zero() {
            p.terms.insert(vec![0; ambient.num_coords()], c);
        }
        p
    }

    pub fn one(ambient: &Ambient) -> Self {
        MultihomogPolynomial::constant(ambient, BigRational::one())
    }

    /// The coordinate `x_{block, index}`.
    pub fn variable(ambient: &Ambient, block: usize, index: usize) -> Self {
        assert!(index < ambient.blocks()[block]);
        let mut exps = vec![0; ambient.num_coords()];
        exps[ambient.offset(block) + index] = 1;
        let mut degree = ambient.zero_degree();
        degree[block] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, BigRational::one());
        MultihomogPolynomial {
            ambient: ambient.clone(),
            terms,
            multidegree: degree,
        }
    }

    /// Build from a term map, inferring the multidegree. An empty map gives
    /// the zero polynomial of degree `fallback`.
    pub fn from_terms(
        ambient: &Ambient,
        terms: BTreeMap<Vec<u32>, BigRational>,
        fallback: Multidegree,
    ) -> Result<Self> {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let mut degree: Option<(Multidegree, &Vec<u32>)> = None;
        for exps in terms.keys() {
            if exps.len() != ambient.num_coords() {
                return Err(HeightError::AmbientMismatch(format!(
                    "exponent vector of length {} on an ambient with {} coordinates",
                    exps.len(),
                    ambient.num_coords()
                )));
            }
            let md = monomial_degree(ambient, exps);
            match &degree {
                None => degree = Some((md, exps)),
                Some((d, first)) if *d != md => {
                    return Err(HeightError::NotHomogeneous {
                        first: format_monomial(ambient, first, &BigRational::one()),
                        second: format_monomial(ambient, exps, &BigRational::one()),
                    })
                }
                _ => {}
            }
        }
        let multidegree = degree.map(|(d, _)| d).unwrap_or(fallback);
        Ok(MultihomogPolynomial {
            ambient: ambient.clone(),
            terms,
            multidegree,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn multidegree(&self) -> &Multidegree {
        &self.multidegree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(HeightError::AmbientMismatch(format!(
                "{} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.multidegree != other.multidegree {
            return Err(HeightError::DegreeMismatch(format!(
                "cannot add degrees {:?} and {:?}",
                self.multidegree, other.multidegree
            )));
        }
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        Ok(MultihomogPolynomial {
            ambient: self.ambient.clone(),
            terms,
            multidegree: self.multidegree.clone(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return MultihomogPolynomial::zero(&self.ambient, self.multidegree.clone());
        }
        MultihomogPolynomial {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
            multidegree: self.multidegree.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let multidegree: Multidegree = self
            .multidegree
            .iter()
            .zip(&other.multidegree)
            .map(|(a, b)| a + b)
            .collect();
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let slot = terms.entry(e).or_insert_with(BigRational::zero);
                *slot += c1 * c2;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(MultihomogPolynomial {
            ambient: self.ambient.clone(),
            terms,
            multidegree,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultihomogPolynomial::one(&self.ambient);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ambient");
        }
        acc
    }

    /// All monomials of the given multidegree, in lexicographic order of
    /// exponent vectors (descending in the first coordinate).
    pub fn monomial_basis(ambient: &Ambient, multidegree: &[u32]) -> Vec<Self> {
        assert_eq!(multidegree.len(), ambient.num_blocks());
        let mut per_block: Vec<Vec<Vec<u32>>> = Vec::new();
        for (b, &size) in ambient.blocks().iter().enumerate() {
            let mut out = Vec::new();
            compositions(multidegree[b], size, &mut Vec::new(), &mut out);
            per_block.push(out);
        }
        let mut exps: Vec<Vec<u32>> = vec![Vec::new()];
        for block in per_block {
            let mut next = Vec::new();
            for prefix in &exps {
                for part in &block {
                    let mut e = prefix.clone();
                    e.extend_from_slice(part);
                    next.push(e);
                }
            }
            exps = next;
        }
        exps.into_iter()
            .map(|e| {
                let mut terms = BTreeMap::new();
                terms.insert(e, BigRational::one());
                MultihomogPolynomial {
                    ambient: ambient.clone(),
                    terms,
                    multidegree: multidegree.to_vec(),
                }
            })
            .collect()
    }

    /// Value at a coordinate representative, one vector per block.
    pub fn evaluate(&self, rep: &[Vec<FieldElement>]) -> FieldElement {
        let flat: Vec<&FieldElement> = rep.iter().flatten().collect();
        assert_eq!(flat.len(), self.ambient.num_coords(), "representative shape");
        let mut powers: Vec<Vec<FieldElement>> = vec![vec![FieldElement::one()]; flat.len()];
        let mut acc = FieldElement::zero();
        for (exps, c) in &self.terms {
            let mut term = FieldElement::rational(c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * flat[i];
                    table.push(next);
                }
                term = &term * &table[e as usize];
            }
            acc = &acc + &term;
        }
        acc
    }

    /// `self` composed with the components of a morphism into its ambient.
    pub fn compose(&self, phi: &Morphism) -> Result<Self> {
        if phi.target() != &self.ambient {
            return Err(HeightError::AmbientMismatch(format!(
                "morphism lands in {}, polynomial lives on {}",
                phi.target(),
                self.ambient
            )));
        }
        let source = phi.source();
        let mut degree = source.zero_degree();
        for (b, d) in self.multidegree.iter().enumerate() {
            for (k, e) in phi.block_degree(b).iter().enumerate() {
                degree[k] += d * e;
            }
        }
        let flat: Vec<&MultihomogPolynomial> = phi.components().iter().flatten().collect();
        let mut powers: Vec<Vec<MultihomogPolynomial>> = vec![vec![MultihomogPolynomial::one(source)]; flat.len()];
        let mut acc = MultihomogPolynomial::zero(source, degree.clone());
        for (exps, c) in &self.terms {
            let mut term = MultihomogPolynomial::constant(source, c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap().mul(flat[i])?;
                    table.push(next);
                }
                term = term.mul(&table[e as usize])?;
            }
            if !term.is_zero() {
                acc = acc.add(&term)?;
            }
        }
        acc.multidegree = degree;
        Ok(acc)
    }
}

/// `evaluate` as a free function.
pub fn evaluate(p: &MultihomogPolynomial, rep: &[Vec<FieldElement>]) -> FieldElement {
    p.evaluate(rep)
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=total).rev() {
        prefix.push(first);
        compositions(total - first, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// A monomial with a nonnegative coefficient, e.g. `3/2*x0^2*y1`.
fn format_monomial(ambient: &Ambient, exps: &[u32], coeff: &BigRational) -> String {
    let mut factors = Vec::new();
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let (b, j) = ambient.locate(i);
        let name = ambient.variable_name(b, j);
        factors.push(if e == 1 { name } else { format!("{name}^{e}") });
    }
    if factors.is_empty() {
        return coeff.to_string();
    }
    if !coeff.is_one() {
        factors.insert(0, coeff.to_string());
    }
    factors.join("*")
}

impl fmt::Display for MultihomogPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest exponent vectors first, so x0 leads
        for (n, (exps, c)) in self.terms.iter().rev().enumerate() {
            let body = format_monomial(&self.ambient, exps, &c.abs());
            match (n, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
