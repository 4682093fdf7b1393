use abelkit::maps::BUILTIN_NAMES;
use abelkit::{
    builtin_map, derive_expansion, orbit_exact, parse_map_expr, reparametrize, t_sequence,
    ConstantSolver, DomainSup, Float, MapSpec, Rational, Reparam,
};
use proptest::prelude::*;

fn maps() -> Vec<MapSpec> {
    BUILTIN_NAMES.iter().map(|n| builtin_map(n).unwrap()).collect()
}

fn upper(map: &MapSpec) -> Rational {
    match map.domain_sup() {
        DomainSup::Finite(r) if *r < 1 => r.clone(),
        _ => Rational::from(1),
    }
}

prop_compose! {
    fn unit_rational()(den in 2u32..200)(num in 1..den, den in Just(den)) -> Rational {
        Rational::from((num, den))
    }
}

prop_compose! {
    fn positive_rational()(num in 1u32..400, den in 1u32..80) -> Rational {
        Rational::from((num, den))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn exact_and_real_evaluation_agree(x in unit_rational(), idx in 0usize..BUILTIN_NAMES.len()) {
        let map = &maps()[idx];
        let x = x * upper(map);
        let exact = map.eval_exact(&x).unwrap();
        let real = map.eval_real(&Float::with_val(256, &x), 256).unwrap();
        let err = Float::with_val(256, real - &exact).abs();
        prop_assert!(err <= Float::with_val(256, exact.abs()) >> 250u32);
    }

    #[test]
    fn map_contracts_towards_zero(x in unit_rational(), idx in 0usize..BUILTIN_NAMES.len()) {
        let map = &maps()[idx];
        let x = x * upper(map);
        let y = map.eval_exact(&x).unwrap();
        prop_assert!(y > 0);
        prop_assert!(y < x);
    }

    #[test]
    fn sum_equals_product(num in 2u32..60, den in 1u32..20, n in 2usize..8) {
        let t1 = Rational::from((num, den));
        prop_assume!(t1 != 1);
        let t = t_sequence(&t1, n).unwrap();
        let mut sum = Rational::new();
        let mut prod = Rational::from(1);
        for (m, v) in t.iter().enumerate() {
            sum += v;
            prod *= v;
            if m >= 1 {
                prop_assert_eq!(&sum, &prod);
            }
        }
    }

    #[test]
    fn reparametrization_is_exact(x0 in positive_rational(), n in 1usize..10) {
        prop_assume!(x0 < 5);
        let shifted = &x0 / Rational::from(&x0 + 1u32);
        for (dir, src, dst) in [(Reparam::BToA, "B", "A"), (Reparam::JToI, "J", "I")] {
            let from = orbit_exact(&builtin_map(src).unwrap(), &x0, n).unwrap();
            let to = orbit_exact(&builtin_map(dst).unwrap(), &shifted, n).unwrap();
            let got = reparametrize(&from, dir).unwrap();
            prop_assert_eq!(got.terms(), to.terms());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn abel_property(x in unit_rational(), idx in 0usize..BUILTIN_NAMES.len()) {
        let map = &maps()[idx];
        let x = x * upper(map);
        let solver = ConstantSolver::new(map, 20).unwrap();
        let c0 = solver.estimate(&x, 20).unwrap().value;
        let c1 = solver.estimate(&map.eval_exact(&x).unwrap(), 20).unwrap().value;
        let defect = Float::with_val(c0.prec(), &c1 - &c0) - 1u32;
        prop_assert!(defect.clone().abs() < 1e-18, "{} at {}: {}", map.name(), x, defect);
    }

    #[test]
    fn oracle_constant_is_reciprocal(x in positive_rational()) {
        let solver = ConstantSolver::new(&builtin_map("ORACLE").unwrap(), 20).unwrap();
        let c = solver.estimate(&x, 25).unwrap().value;
        let err = Float::with_val(c.prec(), c - Rational::from(x.recip_ref())).abs();
        prop_assert!(err < 1e-25);
    }
}

#[test]
fn canonical_form_is_prefix_stable() {
    for map in maps() {
        let short = map.canonical_form(6).unwrap();
        let long = map.canonical_form(12).unwrap();
        assert_eq!(short.coeffs(), &long.coeffs()[..short.coeffs().len()], "{}", map.name());
    }
}

#[test]
fn render_round_trips() {
    for map in maps() {
        let parsed = parse_map_expr(&map.render()).unwrap();
        assert_eq!(parsed.numerator(), map.numerator());
        assert_eq!(parsed.denominator(), map.denominator());
    }
}

#[test]
fn expansion_is_deterministic() {
    for map in maps() {
        assert_eq!(derive_expansion(&map, 12).unwrap().polys(), derive_expansion(&map, 12).unwrap().polys());
    }
}
