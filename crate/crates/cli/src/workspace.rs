//! JSON workspace documents: one ambient plus named presentations, points
//! and morphisms, all validated at load time.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::path::Path;

use heights_core::error::HeightError;
use heights_core::geometry::{parse_polynomial, Ambient, Morphism, MultihomogPolynomial, ProjectivePoint};
use heights_core::presentations::{DivisorPresentation, SubschemePresentation};
use heights_core::quadratic::{FieldElement, QuadraticField};
use num_rational::BigRational;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// A JSON object whose keys must be distinct.
struct UniqueMap<T>(Vec<(String, T)>);

trait Kind {
    const KIND: &'static str;
}

impl Kind for RawPresentation {
    const KIND: &'static str = "presentation";
}

impl Kind for RawPoint {
    const KIND: &'static str = "point";
}

impl Kind for RawMorphism {
    const KIND: &'static str = "morphism";
}

impl<T> Default for UniqueMap<T> {
    fn default() -> Self {
        UniqueMap(Vec::new())
    }
}

impl<'de, T: Deserialize<'de> + Kind> Deserialize<'de> for UniqueMap<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de> + Kind> Visitor<'de> for V<T> {
            type Value = UniqueMap<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object keyed by name")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut out: Vec<(String, T)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, T>()? {
                    if out.iter().any(|(n, _)| *n == k) {
                        return Err(de::Error::custom(format!("{DUPLICATE_MARKER}{}:{k}\u{0}", T::KIND)));
                    }
                    out.push((k, v));
                }
                Ok(UniqueMap(out))
            }
        }
        deserializer.deserialize_map(V(PhantomData))
    }
}

const DUPLICATE_MARKER: &str = "duplicate name: ";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorkspace {
    ambient: RawAmbient,
    #[serde(default)]
    presentations: UniqueMap<RawPresentation>,
    #[serde(default)]
    points: UniqueMap<RawPoint>,
    #[serde(default)]
    morphisms: UniqueMap<RawMorphism>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAmbient {
    blocks: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPresentation {
    divisors: Vec<RawDivisor>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDivisor {
    #[serde(rename = "s_D")]
    s_d: String,
    #[serde(rename = "L")]
    l: RawFamily,
    #[serde(rename = "M")]
    m: RawFamily,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    degree: Vec<u32>,
    sections: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    field: Option<RawField>,
    coords: Vec<Vec<RawEntry>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    d: i64,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Rational(String),
    Quadratic([String; 2]),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    target_blocks: Vec<usize>,
    components: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub ambient: Ambient,
    pub presentations: BTreeMap<String, SubschemePresentation>,
    pub points: BTreeMap<String, ProjectivePoint>,
    pub morphisms: BTreeMap<String, Morphism>,
}

fn at<T>(path: &str, r: heights_core::error::Result<T>) -> CliResult<T> {
    r.map_err(|source| CliError::Field {
        path: path.to_string(),
        source,
    })
}

fn polynomial(text: &str, ambient: &Ambient, path: &str) -> CliResult<MultihomogPolynomial> {
    at(path, parse_polynomial(text, ambient))
}

fn rational(text: &str, path: &str) -> CliResult<BigRational> {
    let trimmed = text.trim();
    let r = match trimmed.split_once('/') {
        Some((n, d)) => n
            .trim()
            .parse()
            .ok()
            .zip(d.trim().parse().ok())
            .filter(|(_, d): &(num_bigint::BigInt, num_bigint::BigInt)| *d != 0.into())
            .map(|(n, d)| BigRational::new(n, d)),
        None => trimmed.parse().ok().map(BigRational::from_integer),
    };
    r.ok_or_else(|| CliError::Field {
        path: path.to_string(),
        source: HeightError::InvalidPoint(format!("`{text}` is not a rational number p/q")),
    })
}

fn divisor(raw: &RawDivisor, ambient: &Ambient, path: &str) -> CliResult<DivisorPresentation> {
    let s_d = polynomial(&raw.s_d, ambient, &format!("{path}.s_D"))?;
    let family = |f: &RawFamily, name: &str| -> CliResult<Vec<MultihomogPolynomial>> {
        f.sections
            .iter()
            .enumerate()
            .map(|(i, t)| polynomial(t, ambient, &format!("{path}.{name}.sections[{i}]")))
            .collect()
    };
    let l = family(&raw.l, "L")?;
    let m = family(&raw.m, "M")?;
    at(
        path,
        DivisorPresentation::new(s_d, raw.l.degree.clone(), l, raw.m.degree.clone(), m),
    )
}

fn point(raw: &RawPoint, ambient: &Ambient, path: &str) -> CliResult<ProjectivePoint> {
    let field = match &raw.field {
        Some(f) => Some(at(&format!("{path}.field.d"), QuadraticField::new(f.d))?),
        None => None,
    };
    let mut coords = Vec::with_capacity(raw.coords.len());
    for (b, block) in raw.coords.iter().enumerate() {
        let mut out = Vec::with_capacity(block.len());
        for (j, e) in block.iter().enumerate() {
            let p = format!("{path}.coords[{b}][{j}]");
            out.push(match (e, field) {
                (RawEntry::Rational(s), _) => FieldElement::rational(rational(s, &p)?),
                (RawEntry::Quadratic([a, b]), Some(k)) => {
                    FieldElement::quadratic(rational(a, &p)?, rational(b, &p)?, k)
                }
                (RawEntry::Quadratic(_), None) => {
                    return Err(CliError::Field {
                        path: p,
                        source: HeightError::FieldMismatch("quadratic entry in a point without a field".into()),
                    })
                }
            });
        }
        coords.push(out);
    }
    at(path, ProjectivePoint::new(ambient, field, coords))
}

fn morphism(raw: &RawMorphism, source: &Ambient, path: &str) -> CliResult<Morphism> {
    let target = at(
        &format!("{path}.target_blocks"),
        Ambient::new(raw.target_blocks.clone()),
    )?;
    let components = raw
        .components
        .iter()
        .enumerate()
        .map(|(b, block)| {
            block
                .iter()
                .enumerate()
                .map(|(j, t)| polynomial(t, source, &format!("{path}.components[{b}][{j}]")))
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    at(path, Morphism::new(source, &target, components))
}

/// Parse and validate a workspace document.
pub fn parse_workspace(text: &str) -> CliResult<Workspace> {
    let raw: RawWorkspace = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        match msg.find(DUPLICATE_MARKER) {
            Some(i) => {
                let rest = &msg[i + DUPLICATE_MARKER.len()..];
                let rest = rest.split('\u{0}').next().unwrap_or(rest);
                let (kind, name) = rest.split_once(':').unwrap_or(("entry", rest));
                let kind = [RawPresentation::KIND, RawPoint::KIND, RawMorphism::KIND]
                    .into_iter()
                    .find(|k| *k == kind)
                    .unwrap_or("entry");
                CliError::DuplicateName {
                    kind,
                    name: name.to_string(),
                }
            }
            None => CliError::Json(msg),
        }
    })?;
    let ambient = at("ambient.blocks", Ambient::new(raw.ambient.blocks))?;
    let mut presentations = BTreeMap::new();
    for (name, p) in &raw.presentations.0 {
        let path = format!("presentations.{name}");
        let divisors = p
            .divisors
            .iter()
            .enumerate()
            .map(|(i, d)| divisor(d, &ambient, &format!("{path}.divisors[{i}]")))
            .collect::<CliResult<Vec<_>>>()?;
        let y = at(&path, SubschemePresentation::new(divisors, Some(name.clone())))?;
        presentations.insert(name.clone(), y);
    }
    let mut points = BTreeMap::new();
    for (name, p) in &raw.points.0 {
        points.insert(name.clone(), point(p, &ambient, &format!("points.{name}"))?);
    }
    let mut morphisms = BTreeMap::new();
    for (name, m) in &raw.morphisms.0 {
        morphisms.insert(name.clone(), morphism(m, &ambient, &format!("morphisms.{name}"))?);
    }
    Ok(Workspace {
        ambient,
        presentations,
        points,
        morphisms,
    })
}

pub fn load_workspace(path: &Path) -> CliResult<Workspace> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_workspace(&text)
}

impl Workspace {
    pub fn presentation(&self, name: &str) -> CliResult<&SubschemePresentation> {
        self.presentations.get(name).ok_or_else(|| CliError::UnknownName {
            kind: "presentation",
            name: name.to_string(),
        })
    }

    pub fn point(&self, name: &str) -> CliResult<&ProjectivePoint> {
        self.points.get(name).ok_or_else(|| CliError::UnknownName {
            kind: "point",
            name: name.to_string(),
        })
    }

    pub fn morphism(&self, name: &str) -> CliResult<&Morphism> {
        self.morphisms.get(name).ok_or_else(|| CliError::UnknownName {
            kind: "morphism",
            name: name.to_string(),
        })
    }
}
