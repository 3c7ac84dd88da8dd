use super::{Ambient, Multidegree, MultihomogPolynomial, ProjectivePoint};
use crate::error::{HeightError, Result};

/// A map between multiprojective spaces given by one tuple of polynomials
/// per target block. Absence of base points is not checked globally; it is
/// detected pointwise by [`Morphism::apply`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Ambient,
    target: Ambient,
    components: Vec<Vec<MultihomogPolynomial>>,
    degrees: Vec<Multidegree>,
}

impl Morphism {
    pub fn new(source: &Ambient, target: &Ambient, components: Vec<Vec<MultihomogPolynomial>>) -> Result<Morphism> {
        if components.len() != target.num_blocks() {
            return Err(HeightError::DegreeMismatch(format!(
                "{} component blocks for a target with {} blocks",
                components.len(),
                target.num_blocks()
            )));
        }
        let mut degrees = Vec::new();
        for (b, block) in components.iter().enumerate() {
            if block.len() != target.blocks()[b] {
                return Err(HeightError::DegreeMismatch(format!(
                    "target block {b} needs {} components, got {}",
                    target.blocks()[b],
                    block.len()
                )));
            }
            let mut degree: Option<&Multidegree> = None;
            for p in block {
                if p.ambient() != source {
                    return Err(HeightError::AmbientMismatch(format!(
                        "component on {} for source {}",
                        p.ambient(),
                        source
                    )));
                }
                if p.is_zero() {
                    continue;
                }
                match degree {
                    None => degree = Some(p.multidegree()),
                    Some(d) if d != p.multidegree() => {
                        return Err(HeightError::DegreeMismatch(format!(
                            "target block {b} mixes multidegrees {:?} and {:?}",
                            d,
                            p.multidegree()
                        )))
                    }
                    _ => {}
                }
            }
            let degree = degree
                .cloned()
                .ok_or_else(|| HeightError::DegreeMismatch(format!("target block {b} has only zero components")))?;
            degrees.push(degree);
        }
        let components = components
            .into_iter()
            .zip(&degrees)
            .map(|(block, d)| {
                block
                    .into_iter()
                    .map(|p| {
                        if p.is_zero() {
                            MultihomogPolynomial::zero(source, d.clone())
                        } else {
                            p
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Morphism {
            source: source.clone(),
            target: target.clone(),
            components,
            degrees,
        })
    }

    pub fn identity(ambient: &Ambient) -> Morphism {
        let components = ambient
            .blocks()
            .iter()
            .enumerate()
            .map(|(b, &size)| {
                (0..size)
                    .map(|j| MultihomogPolynomial::variable(ambient, b, j))
                    .collect()
            })
            .collect();
        Morphism::new(ambient, ambient, components).expect("identity is well formed")
    }

    pub fn source(&self) -> &Ambient {
        &self.source
    }

    pub fn target(&self) -> &Ambient {
        &self.target
    }

    pub fn components(&self) -> &[Vec<MultihomogPolynomial>] {
        &self.components
    }

    /// Multidegree on the source shared by the components of target block `b`.
    pub fn block_degree(&self, b: usize) -> &Multidegree {
        &self.degrees[b]
    }

    pub fn apply(&self, pt: &ProjectivePoint) -> Result<ProjectivePoint> {
        if pt.ambient() != &self.source {
            return Err(HeightError::AmbientMismatch(format!(
                "point on {}, morphism from {}",
                pt.ambient(),
                self.source
            )));
        }
        let mut coords = Vec::with_capacity(self.components.len());
        for (b, block) in self.components.iter().enumerate() {
            let values: Vec<_> = block.iter().map(|p| p.evaluate(pt.coords())).collect();
            if values.iter().all(|v| v.is_zero()) {
                return Err(HeightError::IndeterminacyPoint { block: b });
            }
            coords.push(values);
        }
        ProjectivePoint::new(&self.target, pt.field(), coords)
    }
}

pub fn apply_morphism(phi: &Morphism, pt: &ProjectivePoint) -> Result<ProjectivePoint> {
    phi.apply(pt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{parse_polynomial, points_equal};

    fn polys(texts: &[&str], a: &Ambient) -> Vec<MultihomogPolynomial> {
        texts.iter().map(|t| parse_polynomial(t, a).unwrap()).collect()
    }

    #[test]
    fn square_map() {
        let p1 = Ambient::projective(1);
        let phi = Morphism::new(&p1, &p1, vec![polys(&["x0^2", "x1^2"], &p1)]).unwrap();
        let img = phi.apply(&ProjectivePoint::from_ints(&[&[1, 3]]).unwrap()).unwrap();
        assert!(points_equal(&img, &ProjectivePoint::from_ints(&[&[1, 9]]).unwrap()).unwrap());
    }

    #[test]
    fn segre() {
        let src = Ambient::product_of(&[1, 1]);
        let p3 = Ambient::projective(3);
        let phi = Morphism::new(&src, &p3, vec![polys(&["x0*y0", "x0*y1", "x1*y0", "x1*y1"], &src)]).unwrap();
        let img = phi
            .apply(&ProjectivePoint::from_ints(&[&[1, 2], &[1, 3]]).unwrap())
            .unwrap();
        assert_eq!(img.to_string(), "(1:3:2:6)");
    }

    #[test]
    fn indeterminacy() {
        let p1 = Ambient::projective(1);
        let phi = Morphism::new(&p1, &p1, vec![polys(&["x0*x1", "x1^2"], &p1)]).unwrap();
        assert!(matches!(
            phi.apply(&ProjectivePoint::from_ints(&[&[1, 0]]).unwrap()),
            Err(HeightError::IndeterminacyPoint { block: 0 })
        ));
    }

    #[test]
    fn shape_checks() {
        let p1 = Ambient::projective(1);
        assert!(Morphism::new(&p1, &p1, vec![polys(&["x0"], &p1)]).is_err());
        assert!(Morphism::new(&p1, &p1, vec![polys(&["x0", "x1^2"], &p1)]).is_err());
        assert!(Morphism::new(&p1, &p1, vec![polys(&["0", "0"], &p1)]).is_err());
        let id = Morphism::identity(&Ambient::product_of(&[1, 2]));
        let x = ProjectivePoint::from_ints(&[&[1, 5], &[2, 0, 7]]).unwrap();
        assert!(points_equal(&id.apply(&x).unwrap(), &x).unwrap());
    }
}
