//! Faddeeva function `w(z) = exp(-z²) erfc(-iz)` on the closed upper half-plane
//! and the scaled complementary error function.
//!
//! Inside `|z| <= CF_RADIUS` the Weideman rational expansion with 40 terms is
//! used; its coefficients are computed once from a cosine transform of the
//! mapped Gaussian. Outside, the Laplace continued fraction converges quickly.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

const WEIDEMAN_TERMS: usize = 40;
const CF_RADIUS: f64 = 12.0;
const CF_DEPTH: usize = 40;

struct Weideman {
    scale: f64,
    coeffs: [f64; WEIDEMAN_TERMS],
}

fn weideman() -> &'static Weideman {
    static TABLE: OnceLock<Weideman> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = WEIDEMAN_TERMS;
        let m = 2 * n;
        let scale = (n as f64 / std::f64::consts::SQRT_2).sqrt();
        // Samples of exp(-t²)(L² + t²) at t = L tan(θ/2), θ = kπ/m, k = -m+1 ..= m-1.
        let samples: Vec<(f64, f64)> = (1 - m as i64..m as i64)
            .map(|k| {
                let theta = k as f64 * PI / m as f64;
                let t = scale * (theta / 2.0).tan();
                (k as f64, (-t * t).exp() * (scale * scale + t * t))
            })
            .collect();
        let mut coeffs = [0.0; WEIDEMAN_TERMS];
        for (j, c) in coeffs.iter_mut().enumerate() {
            let order = (j + 1) as f64;
            let sum: f64 = samples
                .iter()
                .map(|&(k, f)| f * (PI * k * order / m as f64).cos())
                .sum();
            *c = sum / (2 * m) as f64;
        }
        Weideman { scale, coeffs }
    })
}

fn weideman_eval(z: Complex64) -> Complex64 {
    let table = weideman();
    let l = Complex64::new(table.scale, 0.0);
    let iz = Complex64::i() * z;
    let denom = l - iz;
    let big_z = (l + iz) / denom;
    let poly = table
        .coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * big_z + a);
    2.0 * poly / (denom * denom) + FRAC_1_SQRT_PI / denom
}

fn continued_fraction(z: Complex64) -> Complex64 {
    let mut t = z;
    for k in (1..=CF_DEPTH).rev() {
        t = z - (k as f64 * 0.5) / t;
    }
    Complex64::new(0.0, FRAC_1_SQRT_PI) / t
}

/// Evaluates `w(z)` for `Im z >= 0` without checking the domain.
///
/// Symmetric in the sense `w(-conj z) = conj w(z)`, bit for bit.
pub(crate) fn faddeeva_upper(z: Complex64) -> Complex64 {
    let mirrored = z.re < 0.0;
    let zr = Complex64::new(z.re.abs(), z.im);
    let mut w = if zr.norm() > CF_RADIUS {
        continued_fraction(zr)
    } else {
        weideman_eval(zr)
    };
    if z.im == 0.0 {
        w.re = (-zr.re * zr.re).exp();
    }
    if zr.re == 0.0 {
        w.im = 0.0;
    }
    if mirrored {
        w.conj()
    } else {
        w
    }
}

/// Faddeeva function `w(z) = exp(-z²)·erfc(-iz)` for `Im z >= 0`.
///
/// Arguments in the lower half-plane are rejected; use
/// `w(z) = 2 exp(-z²) - w(-z)` or `w(conj z) = conj w(-z)` to map them first.
pub fn faddeeva(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("faddeeva", format!("non-finite argument {z}")));
    }
    if z.im < 0.0 {
        return Err(Error::domain(
            "faddeeva",
            format!("Im(z) = {} < 0; only the upper half-plane is supported", z.im),
        ));
    }
    Ok(faddeeva_upper(z))
}

/// Scaled complementary error function `exp(x²)·erfc(x)`.
///
/// Overflows to `+inf` for `x < -26.6`, where `exp(x²)` is not representable.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 * (x * x).exp() - erfcx(-x);
    }
    if x < 5.0 {
        return (x * x).exp() * libm::erfc(x);
    }
    if x.is_infinite() {
        return 0.0;
    }
    // erfcx(x) = (1/√π) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let mut t = x;
    for k in (1..=60).rev() {
        t = x + (k as f64 * 0.5) / t;
    }
    FRAC_1_SQRT_PI / t
}

/// `∫ dω e^{-ω²/Γ_D²}/(√π Γ_D) · 1/(ω - ζ)` for any non-real pole `ζ`.
///
/// This is the Gaussian-averaged single pole that every Doppler-averaged
/// susceptibility reduces to after partial fractions.
pub(crate) fn gaussian_pole_average(zeta: Complex64, doppler_width: f64) -> Complex64 {
    let scale = PI.sqrt() / doppler_width;
    let arg = zeta / doppler_width;
    if zeta.im >= 0.0 {
        Complex64::new(0.0, scale) * faddeeva_upper(arg)
    } else {
        Complex64::new(0.0, -scale) * faddeeva_upper(arg.conj()).conj()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_is_one() {
        let w = faddeeva(Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(w, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn real_axis_real_part_is_gaussian() {
        let w = faddeeva(Complex64::new(1.0, 0.0)).unwrap();
        assert!((w.re - 0.367_879_441_171_442_3).abs() < 1e-15);
        let mut worst: f64 = 0.0;
        for k in -1000..=1000 {
            let x = k as f64 / 100.0;
            let w = faddeeva(Complex64::new(x, 0.0)).unwrap();
            worst = worst.max((w.re - (-x * x).exp()).abs());
        }
        assert!(worst <= 1e-10, "{worst}");
    }

    #[test]
    fn imaginary_unit_gives_erfcx_one() {
        let w = faddeeva(Complex64::new(0.0, 1.0)).unwrap();
        assert!((w.re - 0.427_583_576_155_807).abs() < 1e-14, "{w}");
        assert_eq!(w.im, 0.0);
    }

    #[test]
    fn lower_half_plane_is_rejected() {
        assert!(matches!(
            faddeeva(Complex64::new(0.3, -1e-3)),
            Err(Error::Domain { .. })
        ));
        assert!(faddeeva(Complex64::new(f64::NAN, 1.0)).is_err());
    }

    #[test]
    fn reflection_is_exact() {
        for &(x, y) in &[(0.3, 0.1), (4.0, 1e-5), (20.0, 3.0), (1.0, 0.0)] {
            let a = faddeeva(Complex64::new(x, y)).unwrap();
            let b = faddeeva(Complex64::new(-x, y)).unwrap();
            assert_eq!(b, a.conj());
        }
    }

    #[test]
    fn branches_agree_at_switch_radius() {
        for k in 0..32 {
            let theta = k as f64 * PI / 64.0;
            let z = Complex64::from_polar(CF_RADIUS, theta);
            let a = weideman_eval(z);
            let b = continued_fraction(z);
            assert!((a - b).norm() / b.norm() < 1e-13, "{z}: {a} vs {b}");
        }
    }

    #[test]
    fn erfcx_values() {
        assert_eq!(erfcx(0.0), 1.0);
        assert!((erfcx(1.0) - 0.427_583_576_155_807).abs() < 1e-15);
        let x = 50.0;
        assert!((erfcx(x) * PI.sqrt() * x - 1.0).abs() < 1e-3);
        assert!(erfcx(-1.0) > 1.0);
        assert_eq!(erfcx(f64::INFINITY), 0.0);
    }

    #[test]
    fn erfcx_matches_faddeeva_on_imaginary_axis() {
        for k in 0..=400 {
            let x = k as f64 * 0.05;
            let w = faddeeva(Complex64::new(0.0, x)).unwrap();
            let e = erfcx(x);
            assert!((w.re - e).abs() <= 1e-12 * e.max(1e-300), "x={x}: {} vs {e}", w.re);
        }
    }

    #[test]
    fn erfcx_decreasing_on_positive_axis() {
        let mut prev = erfcx(0.0);
        for k in 1..2000 {
            let v = erfcx(k as f64 * 0.01);
            assert!(v < prev && v > 0.0);
            prev = v;
        }
    }
}
