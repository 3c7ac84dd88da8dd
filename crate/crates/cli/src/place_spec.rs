//! Place specifications: `inf`, `inf:+`, `inf:-`, `inf:complex`, `p=<prime>`
//! and `p=<prime>:split1|split2|inert|ram`.

use std::fmt;
use std::str::FromStr;

use heights_core::heights::LocalPlace;
use heights_core::places::Place;
use heights_core::quadratic::{places_above, EmbeddingSign, ExtPlaceKind, QuadraticField};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decoration {
    Plus,
    Minus,
    Complex,
    Split1,
    Split2,
    Inert,
    Ramified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceSpec {
    pub text: String,
    pub base: Place,
    pub decoration: Option<Decoration>,
}

impl PlaceSpec {
    fn error(&self, message: impl Into<String>) -> CliError {
        CliError::PlaceSpec {
            spec: self.text.clone(),
            message: message.into(),
        }
    }

    /// The place this spec names for a point defined over `field`.
    pub fn resolve(&self, field: Option<QuadraticField>) -> CliResult<LocalPlace> {
        let Some(k) = field else {
            return match self.decoration {
                None => Ok(LocalPlace::Base(self.base)),
                Some(_) => Err(self.error("decorated places need a point over a quadratic field")),
            };
        };
        let above = places_above(self.base, k);
        let pick = |pred: &dyn Fn(&ExtPlaceKind) -> bool, what: &str| {
            above
                .iter()
                .find(|w| pred(&w.kind))
                .map(|w| LocalPlace::Ext(*w))
                .ok_or_else(|| self.error(format!("{k} has no {what} place above {}", self.base)))
        };
        match self.decoration {
            None if above.len() == 1 => Ok(LocalPlace::Ext(above[0])),
            None => Err(self.error(format!(
                "{k} has {} places above {}; choose one of {}",
                above.len(),
                self.base,
                if self.base.is_archimedean() {
                    "inf:+, inf:-"
                } else {
                    "split1, split2"
                }
            ))),
            Some(Decoration::Plus) => pick(
                &|k| *k == ExtPlaceKind::RealEmbedding(EmbeddingSign::Plus),
                "+ embedding",
            ),
            Some(Decoration::Minus) => pick(
                &|k| *k == ExtPlaceKind::RealEmbedding(EmbeddingSign::Minus),
                "- embedding",
            ),
            Some(Decoration::Complex) => pick(&|k| *k == ExtPlaceKind::ComplexPair, "complex"),
            Some(Decoration::Inert) => pick(&|k| *k == ExtPlaceKind::Inert, "inert"),
            Some(Decoration::Ramified) => pick(&|k| *k == ExtPlaceKind::Ramified, "ramified"),
            Some(d @ (Decoration::Split1 | Decoration::Split2)) => {
                let split: Vec<_> = above
                    .iter()
                    .filter(|w| matches!(w.kind, ExtPlaceKind::Split { .. }))
                    .collect();
                let i = if d == Decoration::Split1 { 0 } else { 1 };
                split
                    .get(i)
                    .map(|w| LocalPlace::Ext(**w))
                    .ok_or_else(|| self.error(format!("{} does not split in {k}", self.base)))
            }
        }
    }
}

impl FromStr for PlaceSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<PlaceSpec> {
        let bad = |m: &str| CliError::PlaceSpec {
            spec: s.to_string(),
            message: m.to_string(),
        };
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let base = if head == "inf" {
            Place::Archimedean
        } else if let Some(p) = head.strip_prefix("p=") {
            let p: u64 = p.parse().map_err(|_| bad("expected p=<prime>"))?;
            Place::finite(p).map_err(|e| bad(&e.to_string()))?
        } else {
            return Err(bad("expected `inf` or `p=<prime>`"));
        };
        let decoration = match (base, tail) {
            (_, None) => None,
            (Place::Archimedean, Some("+")) => Some(Decoration::Plus),
            (Place::Archimedean, Some("-")) => Some(Decoration::Minus),
            (Place::Archimedean, Some("complex")) => Some(Decoration::Complex),
            (Place::Finite(_), Some("split1")) => Some(Decoration::Split1),
            (Place::Finite(_), Some("split2")) => Some(Decoration::Split2),
            (Place::Finite(_), Some("inert")) => Some(Decoration::Inert),
            (Place::Finite(_), Some("ram")) => Some(Decoration::Ramified),
            (Place::Archimedean, Some(_)) => return Err(bad("archimedean suffix must be +, - or complex")),
            (Place::Finite(_), Some(_)) => return Err(bad("prime suffix must be split1, split2, inert or ram")),
        };
        Ok(PlaceSpec {
            text: s.to_string(),
            base,
            decoration,
        })
    }
}

impl fmt::Display for PlaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        assert_eq!("inf".parse::<PlaceSpec>().unwrap().base, Place::Archimedean);
        let s: PlaceSpec = "p=7:split2".parse().unwrap();
        assert_eq!(s.base, Place::finite(7).unwrap());
        assert_eq!(s.decoration, Some(Decoration::Split2));
        for bad in ["", "p=", "p=8", "p=7:up", "inf:split1", "q=3", "inf:"] {
            assert!(bad.parse::<PlaceSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn resolution() {
        let k = QuadraticField::new(2).unwrap();
        let s: PlaceSpec = "p=7".parse().unwrap();
        assert!(s.resolve(None).is_ok());
        assert!(s.resolve(Some(k)).is_err());
        let w = "p=7:split1".parse::<PlaceSpec>().unwrap().resolve(Some(k)).unwrap();
        assert_eq!(w.local_degree(), 1);
        assert!("p=3:split1".parse::<PlaceSpec>().unwrap().resolve(Some(k)).is_err());
        assert!("p=3".parse::<PlaceSpec>().unwrap().resolve(Some(k)).is_ok());
        assert!("inf:complex".parse::<PlaceSpec>().unwrap().resolve(Some(k)).is_err());
        let i = QuadraticField::new(-1).unwrap();
        assert_eq!(
            "inf"
                .parse::<PlaceSpec>()
                .unwrap()
                .resolve(Some(i))
                .unwrap()
                .local_degree(),
            2
        );
        assert!("inf:+".parse::<PlaceSpec>().unwrap().resolve(None).is_err());
    }
}
