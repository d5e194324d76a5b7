use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use gnomon::anth::{convergents, AnthOutcome, Verdict};
use gnomon::side_diameter::{
    classify_isosceles_apex, generate, pell_residual, pythagorean_classify, signed_right_angle_gap,
};
use gnomon::solid_angle::{
    regular_vertex_solid_angle, trihedral_solid_angle, triple_product_solid_angle,
    validate_trihedral, RegularVertexFigure,
};
use gnomon::spherical::{
    embed_triangle, excess_girard, excess_lhuilier, geodesic_distance, make_triangle,
};
use gnomon::{
    anth_integers, anth_magnitudes, archimedean_witness, compare, gnomon_check, logos_equal,
    normalize_surd, AngleClass, Magnitude,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Stein's binary GCD, kept separate from the division-based implementation.
fn binary_gcd(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn surd_strategy(d: i64) -> impl Strategy<Value = Magnitude> {
    (-30i64..=30, prop_oneof![-12i64..=-1, 1i64..=12], 1i64..=15)
        .prop_map(move |(p, q, r)| normalize_surd(big(p), big(q), big(d), big(r)).unwrap())
}

fn rational_strategy() -> impl Strategy<Value = Magnitude> {
    (-60i64..=60, 1i64..=25).prop_map(|(n, d)| Magnitude::ratio(n, d).unwrap())
}

/// Mixed rationals and elements of Q(sqrt 5).
fn field_element() -> impl Strategy<Value = Magnitude> {
    prop_oneof![rational_strategy(), surd_strategy(5)]
}

fn positive_magnitude() -> impl Strategy<Value = Magnitude> {
    field_element().prop_filter("positive", |x| x.is_positive())
}

fn valid_triangle() -> impl Strategy<Value = (f64, f64, f64)> {
    (1e-3..PI - 1e-3, 1e-3..PI - 1e-3, 1e-3..PI - 1e-3)
        .prop_filter("valid spherical triangle", |&(a, b, c)| {
            make_triangle(a, b, c).is_ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalize_is_idempotent(p in -500i64..500, q in -500i64..500, d in 0i64..400, r in prop_oneof![-50i64..=-1, 1i64..=50]) {
        let x = normalize_surd(big(p), big(q), big(d), big(r)).unwrap();
        let again = match &x {
            Magnitude::Surd(s) => normalize_surd(s.p().clone(), s.q().clone(), s.d().clone(), s.r().clone()).unwrap(),
            Magnitude::Rational(v) => normalize_surd(v.numer().clone(), BigInt::zero(), BigInt::zero(), v.denom().clone()).unwrap(),
        };
        prop_assert_eq!(&again, &x);
        if let Magnitude::Surd(s) = &x {
            prop_assert!(s.r().is_positive());
            prop_assert!(!s.q().is_zero());
            prop_assert!(s.p().gcd(s.q()).gcd(s.r()).is_one());
        }
    }

    #[test]
    fn normalization_preserves_value(p in -50i64..50, q in -50i64..50, d in 0i64..200, r in 1i64..30) {
        let x = normalize_surd(big(p), big(q), big(d), big(r)).unwrap();
        let approx = (p as f64 + q as f64 * (d as f64).sqrt()) / r as f64;
        prop_assert!((x.to_f64() - approx).abs() < 1e-9);
    }

    #[test]
    fn order_is_total_and_compatible(x in field_element(), y in field_element(), z in field_element(), w in positive_magnitude()) {
        let xy = compare(&x, &y).unwrap();
        prop_assert_eq!(compare(&y, &x).unwrap(), xy.reverse());
        if xy.is_eq() {
            prop_assert_eq!(&x, &y);
        }
        let yz = compare(&y, &z).unwrap();
        if xy.is_le() && yz.is_le() {
            prop_assert!(compare(&x, &z).unwrap().is_le());
        }
        let xz = x.checked_add(&z).unwrap();
        let yz_sum = y.checked_add(&z).unwrap();
        prop_assert_eq!(compare(&xz, &yz_sum).unwrap(), xy);
        let xw = x.checked_mul(&w).unwrap();
        let yw = y.checked_mul(&w).unwrap();
        prop_assert_eq!(compare(&xw, &yw).unwrap(), xy);
    }

    #[test]
    fn order_agrees_with_floating_point_when_well_separated(x in field_element(), y in field_element()) {
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(compare(&x, &y).unwrap(), fx.partial_cmp(&fy).unwrap());
        }
    }

    #[test]
    fn floor_brackets_value(x in prop_oneof![field_element(), surd_strategy(2), surd_strategy(7)]) {
        let f = Magnitude::integer(x.floor());
        prop_assert!(compare(&f, &x).unwrap().is_le());
        let next = f.checked_add(&Magnitude::one()).unwrap();
        prop_assert_eq!(compare(&x, &next).unwrap(), Ordering::Less);
    }

    #[test]
    fn archimedean_witness_is_minimal(a in positive_magnitude(), b in positive_magnitude()) {
        let n = archimedean_witness(&a, &b).unwrap();
        let na = a.scale(&n);
        let prev = a.scale(&(&n - 1));
        prop_assert_eq!(compare(&na, &b).unwrap(), Ordering::Greater);
        prop_assert!(compare(&prev, &b).unwrap().is_le());
    }

    #[test]
    fn display_round_trips(x in prop_oneof![field_element(), surd_strategy(2), surd_strategy(30)]) {
        let back: Magnitude = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn integer_gcd_matches_binary_gcd(a in 1u64..1_000_000_000, b in 1u64..1_000_000_000) {
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        match anth_integers(&BigInt::from(hi), &BigInt::from(lo)).unwrap() {
            AnthOutcome::Finite { quotients, gcd } => {
                prop_assert_eq!(gcd, Magnitude::integer(binary_gcd(a, b)));
                // the quotients rebuild hi/lo exactly
                let last = convergents(&quotients).pop().unwrap();
                let g = binary_gcd(a, b);
                prop_assert_eq!(last.numer().to_u64().unwrap(), hi / g);
                prop_assert_eq!(last.denom().to_u64().unwrap(), lo / g);
                prop_assert!(quotients[1..].iter().all(|q| q >= &BigInt::one()));
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn surds_are_eventually_periodic(d in 2i64..=50, p in -20i64..=20, q in prop_oneof![-8i64..=-1, 1i64..=8], r in 1i64..=12) {
        let x = normalize_surd(big(p), big(q), big(d), big(r)).unwrap();
        prop_assume!(x.is_positive() && !x.is_rational());
        let out = anth_magnitudes(&x, &Magnitude::one(), 2000).unwrap();
        let AnthOutcome::EventuallyPeriodic { period, .. } = &out else {
            return Err(TestCaseError::fail(format!("{x}: {out:?}")));
        };
        prop_assert!(!period.is_empty());
        // convergents approach the value within 1/k^2
        let xf = x.to_f64();
        for c in convergents(&out.expand(12)) {
            let k = c.denom().to_f64().unwrap();
            if k > 1e6 {
                break;
            }
            let err = (xf - c.numer().to_f64().unwrap() / k).abs();
            prop_assert!(err <= 1.0 / (k * k) + 1e-12, "{} vs {}", x, c);
        }
    }

    #[test]
    fn rational_scaling_preserves_anthyphairesis(a in 1i64..500, ad in 1i64..60, b in 1i64..500, bd in 1i64..60, l in 1i64..200, ld in 1i64..60) {
        let a = Magnitude::ratio(a, ad).unwrap();
        let b = Magnitude::ratio(b, bd).unwrap();
        let lambda = Magnitude::ratio(l, ld).unwrap();
        let la = lambda.checked_mul(&a).unwrap();
        let lb = lambda.checked_mul(&b).unwrap();
        prop_assert_eq!(logos_equal(&a, &b, &la, &lb, 64).unwrap(), Verdict::Equal);
    }

    #[test]
    fn surd_scaling_preserves_anthyphairesis(x in surd_strategy(5), l in 1i64..50, ld in 1i64..20) {
        prop_assume!(x.is_positive());
        let lambda = Magnitude::ratio(l, ld).unwrap();
        let one = Magnitude::one();
        let verdict = logos_equal(&x, &one, &lambda.checked_mul(&x).unwrap(), &lambda, 256).unwrap();
        prop_assert_eq!(verdict, Verdict::Equal);
    }

    #[test]
    fn gnomon_flags_agree(a in field_element(), b in positive_magnitude()) {
        if let Ok(report) = gnomon_check(&a, &b) {
            prop_assert_eq!(report.gnomon_preserved, report.right_angle);
        }
    }

    #[test]
    fn girard_and_lhuilier_agree((a, b, c) in valid_triangle()) {
        let t = make_triangle(a, b, c).unwrap();
        let (g, _) = excess_girard(&t).unwrap();
        let l = excess_lhuilier(&t).unwrap();
        prop_assert!((g - l).abs() <= 1e-11, "{} {} {}: {} vs {}", a, b, c, g, l);
        prop_assert!(l > 0.0 && l < TAU);
    }

    #[test]
    fn excess_is_permutation_invariant((a, b, c) in valid_triangle()) {
        let base = excess_lhuilier(&make_triangle(a, b, c).unwrap()).unwrap();
        let girard = excess_girard(&make_triangle(a, b, c).unwrap()).unwrap().0;
        for (x, y, z) in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            let t = make_triangle(x, y, z).unwrap();
            prop_assert_eq!(excess_lhuilier(&t).unwrap().to_bits(), base.to_bits());
            prop_assert_eq!(excess_girard(&t).unwrap().0.to_bits(), girard.to_bits());
        }
    }

    #[test]
    fn embedding_round_trips((a, b, c) in valid_triangle()) {
        let t = make_triangle(a, b, c).unwrap();
        let [va, vb, vc] = embed_triangle(&t).unwrap();
        prop_assert!((geodesic_distance(&vb, &vc) - a).abs() <= 1e-12);
        prop_assert!((geodesic_distance(&va, &vc) - b).abs() <= 1e-12);
        prop_assert!((geodesic_distance(&va, &vb) - c).abs() <= 1e-12);
    }

    #[test]
    fn trihedral_routes_agree((a, b, c) in valid_triangle()) {
        let t = validate_trihedral(a, b, c).unwrap();
        let [u, v, w] = t.edges().unwrap();
        let excess = trihedral_solid_angle(&t).unwrap();
        let triple = triple_product_solid_angle(&u, &v, &w).unwrap();
        prop_assert!((excess - triple.steradians).abs() <= 1e-10);
    }

    #[test]
    fn regular_solid_angle_increases_with_apex(n in 3u32..9, t in 0.02f64..0.97) {
        let limit = TAU / f64::from(n);
        let lo = RegularVertexFigure::new(n, t * limit).unwrap();
        let hi = RegularVertexFigure::new(n, (t + 0.02) * limit).unwrap();
        prop_assert!(regular_vertex_solid_angle(&lo).unwrap() < regular_vertex_solid_angle(&hi).unwrap());
    }
}

#[test]
fn root_two_convergents_are_side_diameter_ratios() {
    let out = anth_magnitudes(&"sqrt(2)".parse().unwrap(), &Magnitude::one(), 64).unwrap();
    let conv = convergents(&out.expand(40));
    for (c, pair) in conv.iter().zip(generate(40)) {
        assert_eq!(c.numer(), &pair.q);
        assert_eq!(c.denom(), &pair.p);
    }
}

#[test]
fn pell_alternation_and_classification() {
    for pair in generate(50) {
        let sign = if pair.n % 2 == 0 { big(1) } else { big(-1) };
        assert_eq!(pell_residual(&pair), sign);
        assert!(pair.p.gcd(&pair.q).is_one());
        let class = classify_isosceles_apex(
            &Magnitude::integer(pair.p.clone()),
            &Magnitude::integer(pair.q.clone()),
        )
        .unwrap();
        let want = if pair.n % 2 == 0 {
            AngleClass::Obtuse
        } else {
            AngleClass::Acute
        };
        assert_eq!(class, want, "n = {}", pair.n);
    }
}

#[test]
fn right_angle_gap_contracts_and_alternates() {
    let pairs = generate(31);
    for w in pairs.windows(2) {
        let (g0, g1) = (signed_right_angle_gap(&w[0]), signed_right_angle_gap(&w[1]));
        assert!(g1.abs() < g0.abs(), "n = {}", w[1].n);
        assert!(g0.signum() != g1.signum());
        assert_eq!(g0 > 0.0, w[0].n % 2 == 0);
    }
}

#[test]
fn pythagorean_classifier_agrees_with_right_angle() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 1000 {
        let omega: f64 = rng.random_range(0.0..PI);
        if omega == 0.0 || (omega - FRAC_PI_2).abs() < 1e-6 {
            continue;
        }
        let want = if omega < FRAC_PI_2 {
            AngleClass::Acute
        } else {
            AngleClass::Obtuse
        };
        assert_eq!(
            pythagorean_classify(omega, 20).unwrap(),
            want,
            "omega = {omega}"
        );
        checked += 1;
    }
}

#[test]
fn hypotenuse_to_side_is_one_then_twos() {
    for k in [1, 2, 3, 5, 10] {
        let hyp: Magnitude = format!("{k}*sqrt(2)").parse().unwrap();
        let out = anth_magnitudes(&hyp, &Magnitude::integer(k), 64).unwrap();
        assert_eq!(out.to_string(), "periodic preperiod [1] period [2]");
    }
}

#[test]
fn nearly_flat_trihedral_has_tiny_solid_angle() {
    for &(a, b) in &[(0.5, 0.7), (1.0, 1.0), (0.2, 2.0)] {
        let t = validate_trihedral(a, b, a + b - 1e-9).unwrap();
        let omega = trihedral_solid_angle(&t).unwrap();
        assert!((0.0..1e-3).contains(&omega), "{omega}");
    }
}

#[test]
fn regular_three_face_matches_trihedral() {
    for alpha in [0.5, 1.0, PI / 3.0, FRAC_PI_2, 1.8] {
        let regular =
            regular_vertex_solid_angle(&RegularVertexFigure::new(3, alpha).unwrap()).unwrap();
        let tri = trihedral_solid_angle(&validate_trihedral(alpha, alpha, alpha).unwrap()).unwrap();
        assert!((regular - tri).abs() <= 1e-12, "alpha = {alpha}");
    }
}

#[test]
fn flat_vertex_limit_approaches_half_space() {
    for n in [3u32, 4, 5, 7] {
        let limit = TAU / f64::from(n);
        let mut last = 0.0;
        for k in 1..=8 {
            let alpha = limit * (1.0 - 10f64.powi(-k));
            let omega =
                regular_vertex_solid_angle(&RegularVertexFigure::new(n, alpha).unwrap()).unwrap();
            assert!(omega > last && omega < TAU);
            last = omega;
        }
        assert!(TAU - last < 1e-2, "n = {n}: {last}");
    }
}
