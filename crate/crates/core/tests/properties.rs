use biphoton::medium::{MediumParams, PathlengthMode};
use biphoton::specfun::{faddeeva, Complex64};
use biphoton::spectra::{eit_exact, eit_lorentzian_summary, DetuningGrid};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = MediumParams> {
    (0.3f64..8.0, 0.005f64..0.2, 10.0f64..600.0).prop_map(|(oc, g, a)| MediumParams::new(oc, g, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn faddeeva_reflection(x in -40.0f64..40.0, y in 1e-6f64..20.0) {
        let z = Complex64::new(x, y);
        let a = faddeeva(z).unwrap();
        let b = faddeeva(Complex64::new(-x, y)).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-13 * a.norm());
        prop_assert!(a.re > 0.0);
    }

    #[test]
    fn eit_transmission_is_bounded_and_even(p in params(), d in 0.0f64..5.0) {
        let grid = DetuningGrid::from_points(vec![-d - 1e-3, d + 1e-3]).unwrap();
        let t = eit_exact(&p, &grid, PathlengthMode::BiphotonQuarter).unwrap();
        prop_assert!(t.values.iter().all(|v| *v > 0.0 && *v <= 1.0));
        prop_assert!((t.values[0] - t.values[1]).abs() <= 1e-12 * t.values[0].max(1e-300));
    }

    #[test]
    fn half_path_absorbs_more(p in params(), d in -3.0f64..3.0) {
        let grid = DetuningGrid::from_points(vec![d, d + 0.1]).unwrap();
        let q = eit_exact(&p, &grid, PathlengthMode::BiphotonQuarter).unwrap();
        let h = eit_exact(&p, &grid, PathlengthMode::ClassicalProbeHalf).unwrap();
        // Half mode doubles the exponent: T_half = T_quarter².
        for (a, b) in q.values.iter().zip(&h.values) {
            prop_assert!((a * a - b).abs() <= 1e-12 * a.max(1e-300));
        }
    }

    #[test]
    fn eit_width_never_exceeds_lorentzian_width(p in params()) {
        if let Ok(s) = eit_lorentzian_summary(&p, PathlengthMode::BiphotonQuarter) {
            prop_assert!(s.gamma_eit <= s.gamma_l * (1.0 + 1e-12));
            prop_assert!(s.a > 0.0 && s.a < 1.0);
            prop_assert!(s.peak >= s.baseline);
        }
    }
}
