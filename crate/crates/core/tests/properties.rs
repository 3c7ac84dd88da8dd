use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use heights_core::geometry::{
    apply_morphism, normalize_point, parse_polynomial, points_equal, Ambient, Morphism, MultihomogPolynomial,
    ProjectivePoint,
};
use heights_core::heights::{arithmetic_distance_local, estimate_bound_profile, local_height, LocalPlace};
use heights_core::logvalue::LogValue;
use heights_core::places::{absolute_value, support, Place};
use heights_core::presentations::{
    diagonal_presentation, hypersurface_presentation, pullback_divisor, subscheme_presentation, sum,
    DivisorPresentation, SubschemePresentation,
};
use heights_core::quadratic::{ext_valuation, hensel_sqrt, places_above, FieldElement, QuadraticField};
use heights_core::verify::{sample_points, SampleSpec};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-2000i64..2000, 1i64..500).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    rational().prop_filter("nonzero", |r| !r.is_zero())
}

fn ambients() -> Vec<Ambient> {
    vec![
        Ambient::projective(1),
        Ambient::projective(2),
        Ambient::product_of(&[1, 1]),
    ]
}

/// A nonzero polynomial on one of the test ambients.
fn polynomial() -> impl Strategy<Value = MultihomogPolynomial> {
    (
        0usize..3,
        prop::collection::vec(0u32..3, 2),
        prop::collection::vec((-30i64..30, 1i64..6, any::<bool>()), 12),
    )
        .prop_filter_map("zero polynomial", |(ai, degs, coeffs)| {
            let a = ambients()[ai].clone();
            let md: Vec<u32> = degs[..a.num_blocks()].to_vec();
            let basis = MultihomogPolynomial::monomial_basis(&a, &md);
            let mut p = MultihomogPolynomial::zero(&a, md);
            for (m, (n, d, keep)) in basis.iter().zip(coeffs.iter().cycle()) {
                if *keep {
                    p = p.add(&m.scale(&rat(*n, *d))).unwrap();
                }
            }
            (!p.is_zero()).then_some(p)
        })
}

fn point_on(a: &Ambient, coords: &[(i64, i64)]) -> Option<ProjectivePoint> {
    let mut it = coords.iter().cycle();
    let blocks = a
        .blocks()
        .iter()
        .map(|&s| {
            (0..s)
                .map(|_| {
                    let (n, d) = it.next().unwrap();
                    rat(*n, *d)
                })
                .collect()
        })
        .collect();
    ProjectivePoint::from_rationals(a, blocks).ok()
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-40i64..40, 1i64..12), 6)
}

fn field() -> impl Strategy<Value = QuadraticField> {
    prop::sample::select(vec![2i64, -1, 5, -3, 10]).prop_map(|d| QuadraticField::new(d).unwrap())
}

fn poly(t: &str, a: &Ambient) -> MultihomogPolynomial {
    parse_polynomial(t, a).unwrap()
}

fn sorted_sections(s: &[MultihomogPolynomial]) -> Vec<String> {
    let mut v: Vec<String> = s.iter().map(|p| p.to_string()).collect();
    v.sort();
    v
}

fn same_up_to_order(a: &DivisorPresentation, b: &DivisorPresentation) -> bool {
    a.s_d() == b.s_d()
        && a.l_degree() == b.l_degree()
        && a.m_degree() == b.m_degree()
        && sorted_sections(a.l_sections()) == sorted_sections(b.l_sections())
        && sorted_sections(a.m_sections()) == sorted_sections(b.m_sections())
}

fn degrees_consistent(d: &DivisorPresentation) -> bool {
    d.s_d()
        .multidegree()
        .iter()
        .zip(d.l_degree().iter().zip(d.m_degree()))
        .all(|(&s, (&l, &m))| s as i64 == l as i64 - m as i64)
}

fn p1_divisors() -> Vec<DivisorPresentation> {
    let a = Ambient::projective(1);
    ["x0", "x0 + 3*x1", "x0^2 - 2*x1^2", "x0*x1 + 5*x1^2"]
        .iter()
        .map(|t| hypersurface_presentation(&poly(t, &a), None).unwrap())
        .collect()
}

const SPLIT: [(i64, u64); 6] = [(2, 7), (-1, 5), (5, 11), (-3, 7), (10, 3), (2, 17)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn absolute_values_are_multiplicative(x in nonzero_rational(), y in nonzero_rational(),
                                          v in prop::sample::select(vec![0u64, 2, 3, 5, 7, 11, 13])) {
        let v = if v == 0 { Place::Archimedean } else { Place::finite(v).unwrap() };
        let lhs = absolute_value(&(&x * &y), v);
        let rhs = absolute_value(&x, v).mul(&absolute_value(&y, v)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn finite_places_are_ultrametric(x in rational(), y in rational(),
                                     p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let v = Place::finite(p).unwrap();
        let s = absolute_value(&(&x + &y), v);
        let a = absolute_value(&x, v);
        let b = absolute_value(&y, v);
        let max = if a.try_cmp(&b).unwrap().is_ge() { a } else { b };
        prop_assert!(s.try_cmp(&max).unwrap().is_le());
    }

    #[test]
    fn support_is_where_the_absolute_value_is_not_one(x in nonzero_rational()) {
        let s = support(std::slice::from_ref(&x)).unwrap();
        for p in 2u64..2000 {
            let Ok(v) = Place::finite(p) else { continue };
            let trivial = absolute_value(&x, v) == heights_core::magnitude::Magnitude::one();
            prop_assert_eq!(s.contains(&p), !trivial, "p = {}", p);
        }
    }

    #[test]
    fn float_conversion_is_additive(a in nonzero_rational(), b in nonzero_rational()) {
        let la = LogValue::log_magnitude(BigRational::one(), heights_core::magnitude::Magnitude::from_rational(&a));
        let lb = LogValue::log_prime(3, b.clone());
        let total = la.add(&lb).to_float(64);
        let separate = la.to_float(64) + lb.to_float(64);
        prop_assert!((total - separate).abs() <= 1e-12 * (1.0 + separate.abs()));
    }

    #[test]
    fn hensel_lifts_are_coherent(i in 0usize..SPLIT.len(), k in 2u32..12) {
        let (d, p) = SPLIT[i];
        let hi = hensel_sqrt(d, p, k).unwrap();
        let lo = hensel_sqrt(d, p, k - 1).unwrap();
        prop_assert_eq!(hi % BigUint::from(p).pow(k - 1), lo);
    }

    #[test]
    fn extension_valuations_restrict(x in nonzero_rational(), k in field(),
                                     p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let v = Place::finite(p).unwrap();
        let expected = BigRational::from_integer(heights_core::places::valuation(&x, p).unwrap().into());
        for w in places_above(v, k) {
            prop_assert_eq!(ext_valuation(&FieldElement::rational(x.clone()), &w).unwrap(), expected.clone());
        }
    }

    #[test]
    fn split_valuations_sum_to_the_norm(i in 0usize..SPLIT.len(), a in rational(), b in rational(), e in 0u32..4) {
        let (d, p) = SPLIT[i];
        let k = QuadraticField::new(d).unwrap();
        let alpha = FieldElement::quadratic(a, b, k).scale(&BigRational::from_integer(BigInt::from(p).pow(e)));
        prop_assume!(!alpha.is_zero());
        let above = places_above(Place::finite(p).unwrap(), k);
        prop_assert_eq!(above.len(), 2);
        let total = ext_valuation(&alpha, &above[0]).unwrap() + ext_valuation(&alpha, &above[1]).unwrap();
        let norm = BigRational::from_integer(heights_core::places::valuation(&alpha.norm(), p).unwrap().into());
        prop_assert_eq!(total, norm);
    }

    #[test]
    fn homogeneity(p in polynomial(), c in coords(), s in prop::collection::vec(nonzero_rational(), 2)) {
        let a = p.ambient().clone();
        let x = point_on(&a, &c);
        prop_assume!(x.is_some());
        let x = x.unwrap();
        let scalars: Vec<FieldElement> = s[..a.num_blocks()].iter().cloned().map(FieldElement::rational).collect();
        let y = x.rescaled(&scalars).unwrap();
        let mut factor = FieldElement::one();
        for (sc, &deg) in scalars.iter().zip(p.multidegree()) {
            factor = &factor * &sc.pow(deg);
        }
        prop_assert_eq!(p.evaluate(y.coords()), &factor * &p.evaluate(x.coords()));
    }

    #[test]
    fn normalization_is_idempotent(c in coords(), ai in 0usize..3) {
        let a = ambients()[ai].clone();
        let x = point_on(&a, &c);
        prop_assume!(x.is_some());
        let x = x.unwrap();
        let n = normalize_point(&x);
        prop_assert!(points_equal(&n, &x).unwrap());
        prop_assert_eq!(normalize_point(&n).to_string(), n.to_string());
    }

    #[test]
    fn morphisms_ignore_the_representative(c in coords(), s in nonzero_rational(), which in 0usize..2) {
        let p1 = Ambient::projective(1);
        let p2 = Ambient::projective(2);
        let phi = if which == 0 {
            Morphism::new(&p1, &p2, vec![vec![poly("x0^2", &p1), poly("x0*x1", &p1), poly("x1^2 - x0^2", &p1)]]).unwrap()
        } else {
            Morphism::new(&p1, &p1, vec![vec![poly("x0^3 + x1^3", &p1), poly("x0*x1^2", &p1)]]).unwrap()
        };
        let x = point_on(&p1, &c);
        prop_assume!(x.is_some());
        let x = x.unwrap();
        let y = x.rescaled(&[FieldElement::rational(s)]).unwrap();
        match (apply_morphism(&phi, &x), apply_morphism(&phi, &y)) {
            (Ok(fx), Ok(fy)) => prop_assert!(points_equal(&fx, &fy).unwrap()),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "definedness depends on the representative"),
        }
    }

    #[test]
    fn sums_commute_and_associate(i in 0usize..4, j in 0usize..4, k in 0usize..4) {
        let ds = p1_divisors();
        let (d, e, f) = (&ds[i], &ds[j], &ds[k]);
        prop_assert!(same_up_to_order(&sum(d, e).unwrap(), &sum(e, d).unwrap()));
        let left = sum(&sum(d, e).unwrap(), f).unwrap();
        let right = sum(d, &sum(e, f).unwrap()).unwrap();
        prop_assert!(same_up_to_order(&left, &right));
        prop_assert!(degrees_consistent(&left));
    }

    #[test]
    fn pullback_distributes_over_sum(i in 0usize..4, j in 0usize..4) {
        let p1 = Ambient::projective(1);
        let phi = Morphism::new(&p1, &p1, vec![vec![poly("x0^2 + x1^2", &p1), poly("x0*x1", &p1)]]).unwrap();
        let ds = p1_divisors();
        let lhs = pullback_divisor(&phi, &sum(&ds[i], &ds[j]).unwrap()).unwrap();
        let rhs = sum(&pullback_divisor(&phi, &ds[i]).unwrap(), &pullback_divisor(&phi, &ds[j]).unwrap()).unwrap();
        prop_assert!(same_up_to_order(&lhs, &rhs));
        prop_assert!(degrees_consistent(&lhs));
    }

    #[test]
    fn diagonal_vanishes_exactly_on_pairs(c in coords(), e in coords(), n in 1usize..4) {
        let a = Ambient::projective(n);
        let (x, y) = (point_on(&a, &c), point_on(&a, &e));
        prop_assume!(x.is_some() && y.is_some());
        let (x, y) = (x.unwrap(), y.unwrap());
        let diag = diagonal_presentation(n).unwrap();
        let xx = x.pair(&x).unwrap();
        prop_assert!(diag.divisors().iter().all(|d| d.s_d().evaluate(xx.coords()).is_zero()));
        prop_assert!(diag.divisors().iter().all(degrees_consistent));
        if !points_equal(&x, &y).unwrap() {
            let xy = x.pair(&y).unwrap();
            prop_assert!(diag.divisors().iter().any(|d| !d.s_d().evaluate(xy.coords()).is_zero()));
        }
    }

    #[test]
    fn local_heights_ignore_the_representative(c in coords(), k in field(),
                                               s in (rational(), rational()),
                                               p in prop::sample::select(vec![0u64, 2, 3, 5, 7])) {
        let p2 = Ambient::projective(2);
        let x = point_on(&p2, &c);
        prop_assume!(x.is_some());
        let x = x.unwrap().over_field(k).unwrap();
        let scalar = FieldElement::quadratic(s.0, s.1, k);
        prop_assume!(!scalar.is_zero());
        let y = x.rescaled(&[scalar]).unwrap();
        let z = subscheme_presentation(&[poly("x0*x2 - x1^2", &p2), poly("x0 + x1", &p2)]).unwrap();
        let v = if p == 0 { Place::Archimedean } else { Place::finite(p).unwrap() };
        for w in places_above(v, k) {
            let a = local_height(&z, &x, w);
            let b = local_height(&z, &y, w);
            match (a, b) {
                (Ok(a), Ok(b)) => prop_assert!(a.value.exact_eq(&b.value).unwrap()),
                (Err(a), Err(b)) => prop_assert_eq!(a, b),
                (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
            }
        }
    }

    #[test]
    fn rational_points_see_both_split_places_alike(c in coords(), i in 0usize..SPLIT.len()) {
        let (d, p) = SPLIT[i];
        let k = QuadraticField::new(d).unwrap();
        let p2 = Ambient::projective(2);
        let x = point_on(&p2, &c);
        prop_assume!(x.is_some());
        let x = x.unwrap();
        let z = subscheme_presentation(&[poly("x0*x2 - x1^2", &p2), poly("x0 + 2*x1", &p2)]).unwrap();
        let v = Place::finite(p).unwrap();
        let Ok(base) = local_height(&z, &x, v) else { return Ok(()) };
        let xk = x.over_field(k).unwrap();
        for w in places_above(v, k) {
            let ext = local_height(&z, &xk, LocalPlace::Ext(w)).unwrap();
            prop_assert_eq!(&ext.value, &base.value);
        }
    }

    #[test]
    fn finite_distances_and_hyperplane_heights_are_nonnegative(c in coords(), e in coords(),
                                                                 p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let a = Ambient::projective(2);
        let (x, y) = (point_on(&a, &c), point_on(&a, &e));
        prop_assume!(x.is_some() && y.is_some());
        let (x, y) = (normalize_point(&x.unwrap()), normalize_point(&y.unwrap()));
        let v = Place::finite(p).unwrap();
        let d = arithmetic_distance_local(&x, &y, v).unwrap().value;
        prop_assert!(d.exact_cmp(&LogValue::zero()).unwrap().is_ge());
        let h = subscheme_presentation(&[poly("x0", &a)]).unwrap();
        if let Ok(l) = local_height(&h, &x, v) {
            prop_assert!(l.value.exact_cmp(&LogValue::zero()).unwrap().is_ge());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn printed_polynomials_reparse(p in polynomial()) {
        let text = p.to_string();
        let q = parse_polynomial(&text, p.ambient()).unwrap();
        prop_assert_eq!(q.terms(), p.terms());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn bound_profiles_grow_with_samples(seed in any::<u64>(), n in 5usize..30) {
        let p1 = Ambient::projective(1);
        let x0 = poly("x0", &p1);
        let y = subscheme_presentation(std::slice::from_ref(&x0)).unwrap();
        let y2 = SubschemePresentation::from_divisor(
            hypersurface_presentation(&x0, Some(vec![x0.clone(), poly("x0 + x1", &p1)])).unwrap(),
        );
        let pts = sample_points(&p1, &SampleSpec::new(2 * n, seed), |x| Ok(!x.coords()[0][0].is_zero())).unwrap();
        let small = estimate_bound_profile(&y, &y2, &pts[..n]).unwrap();
        let large = estimate_bound_profile(&y, &y2, &pts).unwrap();
        for (v, x) in small.iter() {
            prop_assert!(large.get(*v) >= *x);
        }
    }
}
