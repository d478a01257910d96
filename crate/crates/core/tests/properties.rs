use proptest::prelude::*;
use varlp::exponent::{ExpValue, ExponentFunction};
use varlp::geometry::Cube;
use varlp::grid::{GridDomain, GridExponent, GridFunction, MeasurableSet};
use varlp::k0::{norm_harmonic_sandwich, subdivision_identity, CubeFamily};
use varlp::operators::{fractional_maximal, RadiusPolicy};
use varlp::vnorm::{harmonic_mean, luxemburg_norm, modular};

const CELLS: usize = 48;

fn exp_value() -> impl Strategy<Value = ExpValue> {
    prop_oneof![
        1 => Just(ExpValue::Finite(1.0)),
        1 => Just(ExpValue::Infinite),
        4 => (1.0f64..8.0).prop_map(ExpValue::Finite),
    ]
}

/// Step exponent on [0, 4] with 1 to 4 pieces.
fn step_exponent(finite_only: bool) -> impl Strategy<Value = ExponentFunction> {
    prop::collection::vec((exp_value(), 1.0f64..8.0), 1..5).prop_map(move |vals| {
        let m = vals.len();
        let breaks: Vec<f64> = (0..=m).map(|i| 4.0 * i as f64 / m as f64).collect();
        let values: Vec<ExpValue> = vals
            .iter()
            .map(|&(v, f)| if finite_only { ExpValue::Finite(f) } else { v })
            .collect();
        ExponentFunction::steps(&breaks, &values).unwrap()
    })
}

fn grid() -> GridDomain {
    GridDomain::cube(0.0, 4.0, 1, CELLS).unwrap()
}

fn grid_fn() -> impl Strategy<Value = GridFunction> {
    prop::collection::vec(0.0f64..3.0, CELLS).prop_map(|v| GridFunction::new(grid(), v).unwrap())
}

fn nonzero_fn() -> impl Strategy<Value = GridFunction> {
    grid_fn().prop_filter("nonzero", |f| !f.is_zero())
}

fn sampled(p: &ExponentFunction) -> GridExponent {
    GridExponent::sample(p, &grid()).unwrap()
}

fn add(f: &GridFunction, g: &GridFunction) -> GridFunction {
    let v = f.values().iter().zip(g.values()).map(|(a, b)| a + b).collect();
    GridFunction::new(f.domain().clone(), v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_an_involution(p in exp_value()) {
        let back = p.conjugate().conjugate();
        match (p, back) {
            (ExpValue::Finite(a), ExpValue::Finite(b)) => prop_assert!((a - b).abs() <= 1e-12 * a),
            (a, b) => prop_assert_eq!(a, b),
        }
    }

    #[test]
    fn sobolev_exponent_gap(p in 1.0f64..3.9, alpha in 0.0f64..0.25) {
        let q = ExpValue::Finite(p).sobolev(alpha, 1).unwrap();
        prop_assert!((1.0 / p - q.recip() - alpha).abs() < 1e-12);
    }

    #[test]
    fn norm_is_homogeneous(p in step_exponent(false), f in nonzero_fn(), c in 0.01f64..100.0) {
        let pg = sampled(&p);
        let a = luxemburg_norm(&f.scaled(c).unwrap(), &pg).unwrap();
        let b = c * luxemburg_norm(&f, &pg).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * b, "{a} vs {b}");
    }

    #[test]
    fn norm_is_subadditive(p in step_exponent(false), f in nonzero_fn(), g in nonzero_fn()) {
        let pg = sampled(&p);
        let lhs = luxemburg_norm(&add(&f, &g), &pg).unwrap();
        let rhs = luxemburg_norm(&f, &pg).unwrap() + luxemburg_norm(&g, &pg).unwrap();
        prop_assert!(lhs <= rhs * (1.0 + 1e-9));
    }

    #[test]
    fn norm_is_monotone(p in step_exponent(false), f in nonzero_fn(), g in grid_fn()) {
        let pg = sampled(&p);
        let bigger = add(&f, &g);
        prop_assert!(luxemburg_norm(&f, &pg).unwrap() <= luxemburg_norm(&bigger, &pg).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn unit_ball_matches_unit_modular(p in step_exponent(true), f in nonzero_fn()) {
        let pg = sampled(&p);
        let norm = luxemburg_norm(&f, &pg).unwrap();
        let all = MeasurableSet::Mask(vec![true; CELLS]);
        let at = modular(&f.scaled(1.0 / norm).unwrap(), &pg, &all).unwrap();
        prop_assert!((at - 1.0).abs() < 1e-9, "modular at the norm {at}");
    }

    #[test]
    fn constant_exponent_is_lebesgue(p0 in 1.0f64..6.0, f in nonzero_fn()) {
        let pg = sampled(&ExponentFunction::steps(&[0.0, 4.0], &[ExpValue::Finite(p0)]).unwrap());
        let h = 4.0 / CELLS as f64;
        let lp = (f.values().iter().map(|v| v.powf(p0)).sum::<f64>() * h).powf(1.0 / p0);
        let norm = luxemburg_norm(&f, &pg).unwrap();
        prop_assert!((norm - lp).abs() <= 1e-9 * lp, "{norm} vs {lp}");
    }

    #[test]
    fn harmonic_mean_lies_between_extremes(p in step_exponent(false), a in 0.0f64..3.0, w in 0.2f64..1.0) {
        let pg = sampled(&p);
        let set = MeasurableSet::Cube(Cube::interval(a, a + w).unwrap());
        let hm = harmonic_mean(&pg, &set).unwrap().to_f64();
        let st = p.strata().unwrap();
        prop_assert!(hm >= st.p_minus().to_f64() * (1.0 - 1e-12));
        prop_assert!(hm <= st.p_plus().to_f64() * (1.0 + 1e-12));
    }

    #[test]
    fn holder_constant_at_most_four(p in step_exponent(false)) {
        prop_assert!(p.holder_constant().unwrap() <= 4.0);
    }

    #[test]
    fn subdivision_average_matches_whole(p in step_exponent(false), c in 0.6f64..3.4, m in 1usize..6) {
        let r = c.min(4.0 - c).min(0.6);
        let s = subdivision_identity(&p, &Cube::new(vec![c], r).unwrap(), m).unwrap();
        prop_assert!((s.whole - s.weighted).abs() < 1e-12);
    }

    #[test]
    fn sandwich_on_random_intervals(p in step_exponent(false), ends in prop::collection::vec((0.0f64..3.9, 0.01f64..1.0), 1..8)) {
        let ivs: Vec<(f64, f64)> = ends.iter().map(|&(a, w)| (a, (a + w).min(4.0))).collect();
        let sw = norm_harmonic_sandwich(&p, &CubeFamily::intervals(&ivs).unwrap()).unwrap();
        prop_assert!(sw.all_hold);
    }

    #[test]
    fn dyadic_radii_within_factor_of_exact(f in nonzero_fn(), alpha in 0.0f64..0.95) {
        let e = fractional_maximal(&f, alpha, RadiusPolicy::Exact).unwrap();
        let d = fractional_maximal(&f, alpha, RadiusPolicy::Dyadic).unwrap();
        let cap = 2f64.powf(1.0 - alpha);
        for (x, y) in e.values().iter().zip(d.values()) {
            prop_assert!(*y <= x * (1.0 + 1e-12));
            prop_assert!(*x <= y * cap * (1.0 + 1e-12));
        }
    }

    #[test]
    fn maximal_is_sublinear(f in grid_fn(), g in grid_fn(), c in 0.1f64..10.0, alpha in 0.0f64..0.95) {
        let m = |u: &GridFunction| fractional_maximal(u, alpha, RadiusPolicy::Exact).unwrap();
        let (mf, mg, mfg) = (m(&f), m(&g), m(&add(&f, &g)));
        for i in 0..CELLS {
            prop_assert!(mfg.values()[i] <= (mf.values()[i] + mg.values()[i]) * (1.0 + 1e-12) + 1e-15);
        }
        let mc = m(&f.scaled(c).unwrap());
        for i in 0..CELLS {
            prop_assert!((mc.values()[i] - c * mf.values()[i]).abs() <= 1e-12 * (1.0 + c * mf.values()[i]));
        }
    }

    #[test]
    fn averages_never_exceed_the_sup(f in nonzero_fn()) {
        let mf = fractional_maximal(&f, 0.0, RadiusPolicy::Exact).unwrap();
        prop_assert!(mf.max() <= f.max() * (1.0 + 1e-12));
    }
}
