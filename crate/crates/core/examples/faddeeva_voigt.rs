// Faddeeva function, a Voigt profile built from it, and the Gauss–Hermite
// Doppler average it replaces.
//
// ```text
// cargo run --example faddeeva_voigt
// ```

use biphoton::specfun::{cached_rule, doppler_average, erfcx, faddeeva, Complex64};

fn run_example() -> biphoton::Result<()> {
    for (x, y) in [(0.0, 1.0), (1.5, 0.2), (-3.0, 1e-4), (20.0, 5.0)] {
        let w = faddeeva(Complex64::new(x, y))?;
        println!("w({x:>5} + {y:>6}i) = {:.15e} {:+.15e}i", w.re, w.im);
    }
    println!("erfcx(3) = {:.15e}", erfcx(3.0));

    // Voigt profile: Gaussian of width sigma convolved with a Lorentzian of
    // half-width gamma, as Re w(z)/(sigma √(2π)).
    let (sigma, gamma) = (1.0, 1.0);
    let rule = cached_rule(400)?;
    for x in [0.0, 0.5, 2.0] {
        let z = Complex64::new(x, gamma) / (sigma * 2f64.sqrt());
        let closed = faddeeva(z)?.re / (sigma * (2.0 * std::f64::consts::PI).sqrt());
        // Same integral by quadrature over the Gaussian. This only converges
        // quickly while gamma is not much smaller than sigma.
        let lorentz = |u: f64| Complex64::new(gamma / std::f64::consts::PI / ((x - u).powi(2) + gamma * gamma), 0.0);
        let quad = doppler_average(lorentz, sigma * 2f64.sqrt(), &rule).re;
        println!("V({x}) closed form {closed:.12}  quadrature {quad:.12}");
        assert!((closed - quad).abs() < 1e-8 * closed);
    }
    Ok(())
}

fn main() -> biphoton::Result<()> {
    run_example()
}
