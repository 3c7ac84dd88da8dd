use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use heights_core::geometry::{parse_polynomial, Ambient, Morphism, MultihomogPolynomial, ProjectivePoint};
use heights_core::heights::{arithmetic_distance_global, global_height};
use heights_core::logvalue::{BoundProfile, LogValue};
use heights_core::magnitude::Magnitude;
use heights_core::places::Place;
use heights_core::presentations::{
    hypersurface_presentation, subscheme_presentation, DivisorPresentation, SubschemePresentation,
};
use heights_core::quadratic::QuadraticField;
use heights_core::verify::{
    check_basic_properties, check_conventions, check_degree_formula_suite, check_distance_properties,
    check_field_independence_sampled, check_functoriality, check_hensel_coherence, check_independence,
    check_norm_formula_suite, check_product_formula, check_sum_identity, sample_points, CheckReport, CheckStatus,
    SampleSpec,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const FIELDS: [i64; 8] = [-7, -3, -2, -1, 2, 3, 5, 10];

fn poly(text: &str, a: &Ambient) -> MultihomogPolynomial {
    parse_polynomial(text, a).unwrap()
}

fn hyper(text: &str, a: &Ambient) -> DivisorPresentation {
    hypersurface_presentation(&poly(text, a), None).unwrap()
}

fn morphism(source: &Ambient, target: &Ambient, comps: &[&[&str]]) -> Morphism {
    let components = comps
        .iter()
        .map(|b| b.iter().map(|t| poly(t, source)).collect())
        .collect();
    Morphism::new(source, target, components).unwrap()
}

fn require(report: CheckReport) -> Result<CheckReport, String> {
    if report.passed() {
        Ok(report)
    } else {
        Err(report.to_string())
    }
}

fn exact(report: CheckReport) -> Result<usize, String> {
    let r = require(report)?;
    if r.status != CheckStatus::ExactPass {
        return Err(format!("{} is not exact", r.check_name));
    }
    Ok(r.samples_used)
}

fn product_formula() -> Outcome {
    let spec = SampleSpec::new(1000, 1).with_bound(1_000_000);
    let n = exact(check_product_formula(&spec).map_err(|e| e.to_string())?)?;
    Ok(format!("{n} rationals sum to exactly 0"))
}

fn degree_formula() -> Outcome {
    let n = exact(check_degree_formula_suite(&FIELDS, 101).map_err(|e| e.to_string())?)?;
    Ok(format!("{n} (field, place) pairs sum to 2"))
}

fn norm_formula() -> Outcome {
    let r = require(check_norm_formula_suite(&FIELDS, 100, 101, 3).map_err(|e| e.to_string())?)?;
    Ok(format!("{} elements; {}", r.samples_used, r.notes.join("; ")))
}

/// Sum identity, pullback and the basic properties over Q and Q(sqrt 2).
fn local_identities() -> Outcome {
    let p1 = Ambient::projective(1);
    let p2 = Ambient::projective(2);
    let p1p1 = Ambient::product_of(&[1, 1]);
    let p3 = Ambient::projective(3);
    let k = QuadraticField::new(2).unwrap();
    let mut total = 0;
    for (count, field) in [(200, None), (50, Some(k))] {
        let spec = SampleSpec::new(count, 11).with_field(field);
        let run = |r: heights_core::error::Result<CheckReport>| exact(r.map_err(|e| e.to_string())?);
        total += run(check_sum_identity(
            &hyper("x0", &p2),
            &hyper("x0*x2 - x1^2", &p2),
            &spec,
        ))?;
        total += run(check_sum_identity(&hyper("x0", &p1), &hyper("x0 + 2*x1", &p1), &spec))?;
        let square = morphism(&p1, &p1, &[&["x0^2", "x1^2"]]);
        total += run(check_functoriality(&square, &hyper("x0 - x1", &p1), &spec))?;
        let segre = morphism(&p1p1, &p3, &[&["x0*y0", "x0*y1", "x1*y0", "x1*y1"]]);
        total += run(check_functoriality(&segre, &hyper("x0 + x3", &p3), &spec))?;
        let point = subscheme_presentation(&[poly("x0", &p2), poly("x1", &p2)]).unwrap();
        let conic = subscheme_presentation(&[poly("x0*x2 - x1^2", &p2)]).unwrap();
        let cube = morphism(&p2, &p2, &[&["x0^2", "x1^2", "x2^2"]]);
        total += run(check_basic_properties(&point, &conic, Some(&cube), &spec))?;
    }
    Ok(format!("{total} exact samples"))
}

/// Oracle: clear denominators, divide by the gcd, take the largest absolute value.
fn brute_force_weil(coords: &[BigRational]) -> BigInt {
    let lcm = coords.iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    let ints: Vec<BigInt> = coords
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |a, c| a.gcd(c));
    ints.iter().map(|c| (c / &g).abs()).max().unwrap()
}

fn weil_oracle() -> Outcome {
    let mut compared = 0;
    for n in [1, 2] {
        let a = Ambient::projective(n);
        let y = SubschemePresentation::from_divisor(hyper("x0", &a));
        let pts = sample_points(&a, &SampleSpec::new(500, 5 + n as u64).with_bound(1000), |x| {
            Ok(!x.coords()[0][0].is_zero())
        })
        .map_err(|e| e.to_string())?;
        for x in &pts {
            let coords = &x.rational_coords().unwrap()[0];
            let m = brute_force_weil(coords);
            let expected = LogValue::log_magnitude(
                BigRational::one(),
                Magnitude::from_rational(&BigRational::from_integer(m)),
            );
            let got = global_height(&y, x).map_err(|e| e.to_string())?.value;
            if !got.exact_eq(&expected).map_err(|e| e.to_string())? {
                return Err(format!("{x}: {got} vs {expected}"));
            }
            compared += 1;
        }
    }
    let p1 = Ambient::projective(1);
    let y = SubschemePresentation::from_divisor(hyper("x0", &p1));
    let v = global_height(&y, &ProjectivePoint::from_ints(&[&[1, 3]]).unwrap())
        .unwrap()
        .value;
    if v.to_string() != "log(3)" {
        return Err(format!("(1:3) gave {v}"));
    }
    Ok(format!("{compared} points match; (1:3) -> {v}"))
}

fn field_independence() -> Outcome {
    let p1 = Ambient::projective(1);
    let p2 = Ambient::projective(2);
    let mut total = 0;
    let spec = SampleSpec::new(100, 17);
    let h = SubschemePresentation::from_divisor(hyper("x0", &p1));
    total += exact(check_field_independence_sampled(&h, &[2, -1, 5], &spec).map_err(|e| e.to_string())?)?;
    let conic = subscheme_presentation(&[poly("x0*x2 - x1^2", &p2), poly("x0 + x1", &p2)]).unwrap();
    total += exact(check_field_independence_sampled(&conic, &[2, -1, 5], &spec).map_err(|e| e.to_string())?)?;
    Ok(format!("{total} (point, field) comparisons"))
}

fn independence() -> Outcome {
    let p1 = Ambient::projective(1);
    let x0 = poly("x0", &p1);
    let standard = subscheme_presentation(std::slice::from_ref(&x0)).unwrap();
    let alternative = SubschemePresentation::from_divisor(
        hypersurface_presentation(&x0, Some(vec![x0.clone(), poly("x0 + x1", &p1)])).unwrap(),
    );
    let claimed = BoundProfile::new().with(Place::Archimedean, std::f64::consts::LN_2);
    let spec = SampleSpec::new(1000, 23);
    let r = require(check_independence(&standard, &alternative, &spec, Some(&claimed)).map_err(|e| e.to_string())?)?;
    let CheckStatus::BoundPass(profile) = &r.status else {
        unreachable!()
    };
    if let Some((v, x)) = profile.iter().find(|(v, x)| !v.is_archimedean() && **x != 0.0) {
        return Err(format!("nonzero difference {x} at {v}"));
    }
    let arch = profile.get(Place::Archimedean);

    let o2 = DivisorPresentation::new(
        x0.clone(),
        vec![2],
        MultihomogPolynomial::monomial_basis(&p1, &[2]),
        vec![1],
        MultihomogPolynomial::monomial_basis(&p1, &[1]),
    )
    .unwrap();
    let o2 = SubschemePresentation::from_divisor(o2);
    let r2 =
        require(check_independence(&standard, &o2, &spec, Some(&BoundProfile::new())).map_err(|e| e.to_string())?)?;
    let CheckStatus::BoundPass(p2) = &r2.status else {
        unreachable!()
    };
    if !p2.is_identically_zero() {
        return Err(format!("O(2)/O(1) profile not zero: {r2}"));
    }
    Ok(format!(
        "archimedean sup {arch:.15} <= log 2, finite places exactly 0; O(2)/O(1) profile identically 0"
    ))
}

fn distance() -> Outcome {
    let mut lines = Vec::new();
    for n in [1usize, 2] {
        let a = Ambient::projective(n);
        let line = subscheme_presentation(&[poly("x0", &a)]).unwrap();
        let gamma = BoundProfile::new().with(Place::Archimedean, (((n + 1) * (n + 1)) as f64).ln());
        let spec = SampleSpec::new(500, 29 + n as u64);
        let r = require(check_distance_properties(n, &spec, &gamma, Some(&line)).map_err(|e| e.to_string())?)?;
        let CheckStatus::BoundPass(observed) = &r.status else {
            unreachable!()
        };
        if let Some((v, x)) = observed.iter().find(|(v, x)| !v.is_archimedean() && **x != 0.0) {
            return Err(format!("triangle I excess {x} at {v} on P^{n}"));
        }
        let zero = check_distance_properties(n, &spec, &BoundProfile::new(), None).map_err(|e| e.to_string())?;
        lines.push(format!(
            "P^{n}: {} triples, minimal gamma(inf) {:.6} <= log {} (gamma(inf) = 0 gives {})",
            r.samples_used,
            observed.get(Place::Archimedean),
            (n + 1) * (n + 1),
            zero.status.label()
        ));
    }
    let d = arithmetic_distance_global(
        &ProjectivePoint::from_ints(&[&[1, 2]]).unwrap(),
        &ProjectivePoint::from_ints(&[&[1, 3]]).unwrap(),
    )
    .map_err(|e| e.to_string())?
    .value;
    if d.to_string() != "log(6)" {
        return Err(format!("delta((1:2),(1:3)) = {d}"));
    }
    lines.push(format!("delta((1:2),(1:3)) = {d}"));
    Ok(lines.join("; "))
}

fn conventions() -> Outcome {
    let n = exact(check_conventions(&SampleSpec::new(50, 31)).map_err(|e| e.to_string())?)?;
    Ok(format!("{n} constructed points"))
}

fn hensel() -> Outcome {
    let n = exact(check_hensel_coherence(2, 7, 50, 37).map_err(|e| e.to_string())?)?;
    Ok(format!("{n} elements"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("product formula", product_formula),
        ("degree formula", degree_formula),
        ("norm formula", norm_formula),
        ("local height identities", local_identities),
        ("Weil height oracle", weil_oracle),
        ("field independence", field_independence),
        ("independence of presentations", independence),
        ("arithmetic distance", distance),
        ("conventions", conventions),
        ("Hensel coherence", hensel),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
