use approx::assert_relative_eq;
use meromorphic_core::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// 1/(a − s): + pole at a with residue −1.
fn one_over_a_minus_s(a: f64) -> ChargedMeromorphicFunction {
    ChargedMeromorphicFunction::pole_term(c(a, 0.0), 1, c(-1.0, 0.0), Charge::Plus)
}

#[test]
fn product_with_a_constant() {
    let h = charged_product(&one_over_a_minus_s(1.0), &ChargedMeromorphicFunction::constant(c(2.0, 0.0))).unwrap();
    assert_relative_eq!(h.residue(c(1.0, 0.0), ChargeSelector::Plus).re, -2.0, epsilon = 1e-12);
    assert_eq!(h.residue(c(1.0, 0.0), ChargeSelector::Minus), c(0.0, 0.0));
    assert_relative_eq!(h.eval(c(0.0, 0.0)).re, 2.0, epsilon = 1e-14);
}

#[test]
fn product_of_opposite_charges_at_distinct_points() {
    let h1 = ChargedMeromorphicFunction::pole_term(c(0.5, 0.0), 1, c(1.0, 0.0), Charge::Minus);
    let h2 = one_over_a_minus_s(1.0);
    let h = charged_product(&h1, &h2).unwrap();
    // partial fractions: 1/((s−½)(1−s)) = 2/(s−½) − 2/(s−1)
    assert_relative_eq!(h.residue(c(0.5, 0.0), ChargeSelector::Minus).re, 2.0, epsilon = 1e-10);
    assert_relative_eq!(h.residue(c(1.0, 0.0), ChargeSelector::Plus).re, -2.0, epsilon = 1e-10);
    assert_eq!(h.residue(c(1.0, 0.0), ChargeSelector::Minus), c(0.0, 0.0));
}

#[test]
fn inadmissible_product_is_rejected() {
    let h1 = ChargedMeromorphicFunction::pole_term(c(0.3, 0.0), 1, c(1.0, 0.0), Charge::Plus);
    let h2 = ChargedMeromorphicFunction::pole_term(c(0.3, 0.0), 1, c(1.0, 0.0), Charge::Minus);
    assert!(matches!(charged_product(&h1, &h2), Err(MeromorphicError::Admissibility { .. })));
    assert!(polar_consistency_check(&h1, &h2).is_err());
}

#[test]
fn negation_examples() {
    let h = negate_argument(&one_over_a_minus_s(0.7));
    let p = h.pole_at(c(-0.7, 0.0)).unwrap();
    assert!(!p.has(Charge::Plus));
    // 1/(a + s) = 1/(s − (−a))
    assert_relative_eq!(p.residue(ChargeSelector::Minus).re, 1.0, epsilon = 1e-15);
    let s = c(0.2, 1.3);
    assert!((h.eval(s) - 1.0 / (0.7 + s)).norm() < 1e-15);

    let dbl = ChargedMeromorphicFunction::pole_term(c(0.5, 0.0), 2, c(1.0, 0.0), Charge::Minus);
    let n = negate_argument(&dbl);
    let p = n.pole_at(c(-0.5, 0.0)).unwrap();
    assert_eq!(p.depth(Charge::Plus), 2);
    assert_relative_eq!(p.coefficient(-2, ChargeSelector::Plus).re, 1.0, epsilon = 1e-15);
    assert_eq!(p.coefficient(-1, ChargeSelector::Plus), c(0.0, 0.0));
}

#[test]
fn negation_is_an_involution() {
    let h = charged_sum(
        &ChargedMeromorphicFunction::pole_term(c(0.5, 1.0), 2, c(0.3, -1.0), Charge::Minus),
        &one_over_a_minus_s(2.0),
    );
    let back = negate_argument(&negate_argument(&h));
    assert_eq!(back.poles, h.poles);
    for s in [c(0.1, 0.2), c(-3.0, 4.0)] {
        assert_eq!(back.eval(s), h.eval(s));
    }
}

#[test]
fn numerical_residues_match_stored_data() {
    let h = charged_sum(
        &ChargedMeromorphicFunction::pole_term(c(0.5, 0.0), 1, c(2.0, 1.0), Charge::Minus),
        &charged_product(&one_over_a_minus_s(1.0), &one_over_a_minus_s(-1.0)).unwrap(),
    );
    for p in &h.poles {
        let numeric = h.numerical_residue(p.location, 1e-2);
        assert!((numeric - p.residue(ChargeSelector::Total)).norm() < 1e-8);
    }
    assert_eq!(h.residue(c(7.0, 0.0), ChargeSelector::Total), c(0.0, 0.0));
}

#[test]
fn polar_consistency_on_rational_pairs() {
    let h1 = ChargedMeromorphicFunction::pole_term(c(0.5, 0.0), 1, c(1.0, 0.0), Charge::Minus);
    let h2 = one_over_a_minus_s(1.0);
    let r = polar_consistency_check(&h1, &h2).unwrap();
    assert!(r.max_deviation < 1e-9, "{r:?}");

    let g = ChargedMeromorphicFunction::entire(|s| (s * s * 0.5).exp(), DecayClass::Rapid);
    let r = polar_consistency_check(&g, &g).unwrap();
    assert!(r.entries.is_empty());

    let sq = charged_product(&h2, &h2).unwrap();
    let p = sq.pole_at(c(1.0, 0.0)).unwrap();
    assert_eq!(p.depth(Charge::Plus), 2);
    assert_relative_eq!(p.coefficient(-2, ChargeSelector::Plus).re, 1.0, epsilon = 1e-12);
    assert!(p.coefficient(-1, ChargeSelector::Plus).norm() < 1e-12);
    assert!(polar_consistency_check(&h2, &h2).unwrap().max_deviation < 1e-9);
}

#[test]
fn consistency_with_transcendental_regular_part() {
    // e^{s}/(s−½)² (−) times e^{s²}/(s−½) (−): regular parts enter the polar product
    let h1 = ChargedMeromorphicFunction::new(
        |s: Complex64| s.exp() / ((s - 0.5) * (s - 0.5)),
        vec![{
            let e = 0.5f64.exp();
            let mut l = ChargedLaurent::new(c(0.5, 0.0));
            l.minus = vec![c(e, 0.0), c(e, 0.0)];
            l
        }],
        Strip::PLANE,
        DecayClass::Unknown,
    );
    let h2 = ChargedMeromorphicFunction::new(
        |s: Complex64| (s * s).exp() / (s - 0.5),
        vec![ChargedLaurent::single(c(0.5, 0.0), 1, c(0.25f64.exp(), 0.0), Charge::Minus)],
        Strip::PLANE,
        DecayClass::Unknown,
    );
    let r = polar_consistency_check(&h1, &h2).unwrap();
    assert!(r.max_deviation < 1e-9, "{r:?}");
    assert_eq!(r.entries[0].order, 3);
}

#[test]
fn vertical_evaluation() {
    let g = ChargedMeromorphicFunction::entire(|s| (s * s * 0.5).exp(), DecayClass::Rapid);
    let grid: Vec<f64> = (0..20).map(|j| 0.3 * j as f64).collect();
    for (t, v) in grid.iter().zip(g.eval_vertical(0.0, &grid, 1e-3)) {
        assert!((v.unwrap() - c((-0.5 * t * t).exp(), 0.0)).norm() < 1e-15);
    }
    let cs = ChargedMeromorphicFunction::new(
        |s| special_functions::intertwining_c(s).unwrap(),
        vec![ChargedLaurent::single(c(1.0, 0.0), 1, c(6.0 / std::f64::consts::PI, 0.0), Charge::Minus)],
        Strip::PLANE,
        DecayClass::Unknown,
    );
    for v in cs.eval_vertical(0.0, &grid, 1e-3) {
        assert!(v.unwrap().norm() <= 1.0 + 1e-8);
    }
    let near = cs.eval_vertical(1.0, &[1e-4], 1e-3);
    assert!(matches!(near[0], Err(MeromorphicError::PoleProximity { .. })));
}

#[test]
fn pole_table_roundtrip() {
    let h = charged_sum(
        &ChargedMeromorphicFunction::pole_term(c(0.5, 0.0), 2, c(1.0, 0.0), Charge::Minus),
        &one_over_a_minus_s(1.0),
    );
    let json = pole_table_json(&h);
    assert!(json.contains("\"charge\": \"minus\""));
    let back = poles_from_json(&json).unwrap();
    for p in &h.poles {
        let q = back.iter().find(|q| q.location == p.location).unwrap();
        assert_eq!(q.depth(Charge::Plus), p.depth(Charge::Plus));
        assert_eq!(q.coefficient(-1, ChargeSelector::Total), p.coefficient(-1, ChargeSelector::Total));
        if p.depth(Charge::Minus) > 1 {
            assert_eq!(q.coefficient(-2, ChargeSelector::Minus), p.coefficient(-2, ChargeSelector::Minus));
        }
    }
}

fn arb_pole() -> impl Strategy<Value = (f64, f64, usize, f64, f64, bool)> {
    (-2.0f64..2.0, -2.0f64..2.0, 1usize..3, -2.0f64..2.0, -2.0f64..2.0, any::<bool>())
}

fn build(p: (f64, f64, usize, f64, f64, bool)) -> ChargedMeromorphicFunction {
    let charge = if p.5 { Charge::Plus } else { Charge::Minus };
    ChargedMeromorphicFunction::pole_term(c(p.0, p.1), p.2, c(p.3, p.4), charge)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polar_parts_of_products_are_consistent(a in arb_pole(), b in arb_pole(), shared in any::<bool>()) {
        let b = if shared { (a.0, a.1, b.2, b.3, b.4, a.5) } else { b };
        let h1 = build(a);
        let h2 = build(b);
        prop_assume!(shared || (c(a.0, a.1) - c(b.0, b.1)).norm() > 0.2);
        prop_assume!(b.3.abs() + b.4.abs() > 0.1 && a.3.abs() + a.4.abs() > 0.1);
        let r = polar_consistency_check(&h1, &h2).unwrap();
        let scale = (1.0 + c(a.3, a.4).norm()) * (1.0 + c(b.3, b.4).norm());
        prop_assert!(r.max_deviation < 1e-9 * scale, "{:?}", r);
    }

    #[test]
    fn negation_swaps_charges(a in arb_pole()) {
        let h = build(a);
        let n = negate_argument(&h);
        let p = &h.poles[0];
        let q = &n.poles[0];
        prop_assert_eq!(p.depth(Charge::Plus), q.depth(Charge::Minus));
        prop_assert_eq!(p.depth(Charge::Minus), q.depth(Charge::Plus));
        let s = c(0.37, 2.9);
        prop_assert!((n.eval(s) - h.eval(-s)).norm() == 0.0);
    }

    #[test]
    fn stored_residue_matches_contour(a in arb_pole()) {
        let h = build(a);
        let loc = c(a.0, a.1);
        let numeric = h.numerical_residue(loc, 1e-2);
        prop_assert!((numeric - h.residue(loc, ChargeSelector::Total)).norm() < 1e-8);
    }
}
