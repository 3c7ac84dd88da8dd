//! Multiprojective ambient spaces `P^{N_1} x ... x P^{N_k}` and the objects
//! living on them.

mod morphism;
mod parser;
mod point;
mod polynomial;

use std::fmt;

pub use morphism::{apply_morphism, Morphism};
pub use parser::parse_polynomial;
pub use point::{normalize_point, points_equal, ProjectivePoint};
pub use polynomial::{evaluate, MultihomogPolynomial};

use crate::error::{HeightError, Result};

/// A multidegree, one entry per block.
pub type Multidegree = Vec<u32>;

/// Block sizes `[N_1 + 1, ..., N_k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ambient {
    blocks: Vec<usize>,
}

impl Ambient {
    pub fn new(blocks: Vec<usize>) -> Result<Ambient> {
        if blocks.is_empty() {
            return Err(HeightError::AmbientMismatch("ambient needs at least one block".into()));
        }
        if blocks.contains(&0) {
            return Err(HeightError::AmbientMismatch("block sizes must be positive".into()));
        }
        Ok(Ambient { blocks })
    }

    /// `P^n`.
    pub fn projective(n: usize) -> Ambient {
        Ambient { blocks: vec![n + 1] }
    }

    /// `P^{n_1} x ... x P^{n_k}` from the dimensions.
    pub fn product_of(dims: &[usize]) -> Ambient {
        assert!(!dims.is_empty());
        Ambient {
            blocks: dims.iter().map(|n| n + 1).collect(),
        }
    }

    /// The ambient of pairs, `self x other`.
    pub fn times(&self, other: &Ambient) -> Ambient {
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        Ambient { blocks }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_coords(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Flat index of the first coordinate of `block`.
    pub fn offset(&self, block: usize) -> usize {
        self.blocks[..block].iter().sum()
    }

    /// `(block, index)` of a flat coordinate index.
    pub fn locate(&self, flat: usize) -> (usize, usize) {
        let mut rest = flat;
        for (b, &size) in self.blocks.iter().enumerate() {
            if rest < size {
                return (b, rest);
            }
            rest -= size;
        }
        panic!("coordinate index {flat} out of range");
    }

    /// Name of a coordinate, using `x`, `y`, `z` when there are at most
    /// three blocks.
    pub fn variable_name(&self, block: usize, index: usize) -> String {
        if self.blocks.len() <= 3 {
            format!("{}{}", ['x', 'y', 'z'][block], index)
        } else {
            format!("x{block}_{index}")
        }
    }

    pub fn zero_degree(&self) -> Multidegree {
        vec![0; self.blocks.len()]
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| format!("P^{}", b - 1)).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ambient_shapes() {
        let a = Ambient::product_of(&[1, 2]);
        assert_eq!(a.blocks(), &[2, 3]);
        assert_eq!(a.num_coords(), 5);
        assert_eq!(a.offset(1), 2);
        assert_eq!(a.locate(3), (1, 1));
        assert_eq!(a.variable_name(1, 2), "y2");
        assert_eq!(a.to_string(), "P^1 x P^2");
        assert!(Ambient::new(vec![]).is_err());
        assert!(Ambient::new(vec![2, 0]).is_err());
        let big = Ambient::new(vec![2; 4]).unwrap();
        assert_eq!(big.variable_name(3, 1), "x3_1");
    }
}
