use serde_json::{json, Value};

use heights_core::heights::{
    arithmetic_distance_global, arithmetic_distance_local, global_height, local_height, HeightValue, LocalHeightResult,
};
use heights_core::logvalue::LogValue;
use heights_core::places::Place;
use heights_core::quadratic::{places_above, EmbeddingSign, ExtPlaceKind, QuadraticField};
use heights_core::verify::{run_suite, CheckReport, CheckStatus, SampleSpec};

use crate::error::CliResult;
use crate::place_spec::PlaceSpec;
use crate::workspace::Workspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// What a command prints, in both output formats.
#[derive(Clone, Debug)]
pub struct Rendered {
    pub text: String,
    pub json: Value,
}

/// Exact text such as `1/2*log(2) + log(3)`, or a decimal with at least
/// `precision` bits.
pub fn render_value(v: &LogValue, mode: Mode, precision: u32) -> String {
    match mode {
        Mode::Exact => v.to_string(),
        Mode::Float => v.to_decimal(precision),
    }
}

fn value_json(v: &LogValue, precision: u32) -> Value {
    let float = if v.is_infinite() {
        json!("inf")
    } else {
        json!(v.to_float(precision))
    };
    json!({
        "exact": v.to_string(),
        "float": float,
        "decimal": v.to_decimal(precision),
    })
}

fn field_json(field: Option<QuadraticField>) -> Value {
    match field {
        Some(k) => json!({ "d": k.d() }),
        None => Value::Null,
    }
}

fn render_height(h: &HeightValue, mode: Mode, precision: u32, extra: Value) -> Rendered {
    let mut j = value_json(&h.value, precision);
    j["field"] = field_json(h.field);
    merge(&mut j, extra);
    Rendered {
        text: render_value(&h.value, mode, precision),
        json: j,
    }
}

fn render_local(r: &LocalHeightResult, mode: Mode, precision: u32, extra: Value) -> Rendered {
    let mut j = value_json(&r.value, precision);
    j["place"] = json!(r.place.to_string());
    j["witness"] = match &r.witness {
        Some(w) => json!({ "divisor": w.divisor, "section": w.section, "denominator": w.denominator }),
        None => Value::Null,
    };
    merge(&mut j, extra);
    Rendered {
        text: render_value(&r.value, mode, precision),
        json: j,
    }
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        t.extend(e);
    }
}

pub fn cmd_compute(ws: &Workspace, subscheme: &str, point: &str, mode: Mode, precision: u32) -> CliResult<Rendered> {
    let y = ws.presentation(subscheme)?;
    let x = ws.point(point)?;
    let h = global_height(y, x)?;
    Ok(render_height(
        &h,
        mode,
        precision,
        json!({ "command": "compute", "subscheme": subscheme, "point": point }),
    ))
}

pub fn cmd_local(
    ws: &Workspace,
    subscheme: &str,
    point: &str,
    place: &PlaceSpec,
    mode: Mode,
    precision: u32,
) -> CliResult<Rendered> {
    let y = ws.presentation(subscheme)?;
    let x = ws.point(point)?;
    let w = place.resolve(x.field())?;
    let r = local_height(y, x, w)?;
    Ok(render_local(
        &r,
        mode,
        precision,
        json!({ "command": "local", "subscheme": subscheme, "point": point }),
    ))
}

pub fn cmd_distance(
    ws: &Workspace,
    first: &str,
    second: &str,
    place: Option<&PlaceSpec>,
    mode: Mode,
    precision: u32,
) -> CliResult<Rendered> {
    let x = ws.point(first)?;
    let y = ws.point(second)?;
    let extra = json!({ "command": "distance", "points": [first, second] });
    match place {
        Some(spec) => {
            let field = match (x.field(), y.field()) {
                (Some(k), _) | (None, Some(k)) => Some(k),
                _ => None,
            };
            let w = spec.resolve(field)?;
            Ok(render_local(
                &arithmetic_distance_local(x, y, w)?,
                mode,
                precision,
                extra,
            ))
        }
        None => Ok(render_height(
            &arithmetic_distance_global(x, y)?,
            mode,
            precision,
            extra,
        )),
    }
}

/// How `v` decomposes in `Q(sqrt d)`, e.g. `split: roots 3,4; degrees 1,1`.
pub fn cmd_places(d: i64, prime: Option<u64>) -> CliResult<Rendered> {
    let k = QuadraticField::new(d)?;
    let v = match prime {
        Some(p) => Place::finite(p)?,
        None => Place::Archimedean,
    };
    let above = places_above(v, k);
    let degrees: Vec<String> = above.iter().map(|w| w.local_degree().to_string()).collect();
    let (kind, detail) = match above[0].kind {
        ExtPlaceKind::Split { .. } => {
            let roots: Vec<String> = above
                .iter()
                .filter_map(|w| match w.kind {
                    ExtPlaceKind::Split { root_seed } => Some(root_seed.to_string()),
                    _ => None,
                })
                .collect();
            ("split", format!("roots {}", roots.join(",")))
        }
        ExtPlaceKind::RealEmbedding(_) => {
            let signs: Vec<&str> = above
                .iter()
                .map(|w| match w.kind {
                    ExtPlaceKind::RealEmbedding(EmbeddingSign::Plus) => "+",
                    _ => "-",
                })
                .collect();
            ("real", format!("embeddings {}", signs.join(",")))
        }
        ExtPlaceKind::ComplexPair => ("complex", String::new()),
        ExtPlaceKind::Inert => ("inert", String::new()),
        ExtPlaceKind::Ramified => ("ramified", String::new()),
    };
    let degree_part = if degrees.len() == 1 {
        format!("degree {}", degrees[0])
    } else {
        format!("degrees {}", degrees.join(","))
    };
    let text = if detail.is_empty() {
        format!("{kind}: {degree_part}")
    } else {
        format!("{kind}: {detail}; {degree_part}")
    };
    let places: Vec<Value> = above
        .iter()
        .map(|w| json!({ "place": w.to_string(), "local_degree": w.local_degree() }))
        .collect();
    Ok(Rendered {
        text,
        json: json!({
            "command": "places",
            "d": d,
            "base": v.to_string(),
            "decomposition": kind,
            "places": places,
        }),
    })
}

fn report_json(r: &CheckReport) -> Value {
    let profile = match &r.status {
        CheckStatus::BoundPass(p) | CheckStatus::BoundViolation(p) => {
            let m: serde_json::Map<String, Value> = p.iter().map(|(v, x)| (v.to_string(), json!(x))).collect();
            Value::Object(m)
        }
        _ => Value::Null,
    };
    let witnesses: Vec<Value> = r
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "points": w.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "place": w.place.map(|p| p.to_string()),
                "lhs": w.lhs.to_string(),
                "rhs": w.rhs.to_string(),
                "note": w.note,
            })
        })
        .collect();
    json!({
        "check": r.check_name,
        "status": r.status.label(),
        "passed": r.passed(),
        "samples": r.samples_used,
        "profile": profile,
        "notes": r.notes,
        "witnesses": witnesses,
    })
}

/// Run suites; the flag is false when any check failed.
pub fn cmd_verify(names: &[String], samples: usize, seed: u64) -> CliResult<(Rendered, bool)> {
    let names: Vec<&str> = if names.is_empty() {
        vec!["all"]
    } else {
        names.iter().map(String::as_str).collect()
    };
    let spec = SampleSpec::new(samples, seed);
    let reports = run_suite(&names, &spec)?;
    let passed = reports.iter().all(CheckReport::passed);
    let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    let json = json!({
        "command": "verify",
        "seed": seed,
        "samples": samples,
        "passed": passed,
        "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
    });
    Ok((Rendered { text, json }, passed))
}
