//! Independent reference computations used by the integration and acceptance
//! tests: globally adaptive Gauss–Kronrod quadrature of the raw Doppler
//! integrals, CSV readers for the high-precision tables, and a direct
//! Riemann sum for G²(τ).
#![allow(dead_code)]

use std::path::PathBuf;

use biphoton::medium::{MediumParams, PathlengthMode};
use biphoton::specfun::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kronrod += s * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    Piece {
        a,
        b,
        value: kronrod * h,
        error: ((kronrod - gauss) * h).norm(),
    }
}

/// `∫_a^b f` with bisection of the worst interval until the summed error
/// estimate is below `rel_tol·|I|` (or `1e-300`).
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, breaks: &[f64], a: f64, b: f64, rel_tol: f64) -> Complex64 {
    let mut cuts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|x| *x > a && *x < b))
        .chain(std::iter::once(b))
        .collect();
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup();
    let mut pieces: Vec<Piece> = cuts.windows(2).map(|w| gk15(&f, w[0], w[1])).collect();
    for _ in 0..20_000 {
        let total: Complex64 = pieces.iter().map(|p| p.value).sum();
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        if error <= (rel_tol * total.norm()).max(1e-300) {
            return total;
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap();
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        pieces.push(gk15(&f, p.a, mid));
        pieces.push(gk15(&f, mid, p.b));
    }
    panic!("oracle quadrature did not converge");
}

fn gaussian(p: &MediumParams, w: f64) -> f64 {
    (-(w / p.gamma_doppler).powi(2)).exp() / (std::f64::consts::PI.sqrt() * p.gamma_doppler)
}

/// Breakpoints around the EIT pole and the pump pole.
fn breakpoints(p: &MediumParams, delta: f64) -> Vec<f64> {
    let a = Complex64::new(delta, p.gamma);
    let zeta = p.omega_c * p.omega_c / (4.0 * a) - Complex64::new(delta, 0.5);
    let beta = zeta.im.abs();
    let mut out = vec![p.delta_p];
    for k in [0.0, 1.0, 5.0, 25.0, 125.0] {
        out.push(zeta.re - k * beta);
        out.push(zeta.re + k * beta);
    }
    out
}

const TOL: f64 = 1e-12;

/// `(α_s/2) ∫ g(ω) (δ+iγ)/[Ω_c² − 4(δ+iγ)(δ+ω+i/2)] dω`.
pub fn self_term(p: &MediumParams, delta: f64) -> Complex64 {
    let a = Complex64::new(delta, p.gamma);
    let oc2 = p.omega_c * p.omega_c;
    let lim = 12.0 * p.gamma_doppler;
    integrate(
        |w| gaussian(p, w) * (p.alpha_s / 2.0) * a / (oc2 - 4.0 * a * Complex64::new(delta + w, 0.5)),
        &breakpoints(p, delta),
        -lim,
        lim,
        TOL,
    )
}

/// Cross term with the pump denominator inside the average, or replaced by Δ_p.
pub fn cross_term(p: &MediumParams, delta: f64, exact_pump: bool) -> Complex64 {
    let a = Complex64::new(delta, p.gamma);
    let oc2 = p.omega_c * p.omega_c;
    let pre = (p.alpha_as * p.alpha_s).sqrt() / 4.0;
    let lim = 12.0 * p.gamma_doppler;
    integrate(
        |w| {
            let pump = if exact_pump {
                p.omega_p / Complex64::new(p.delta_p - w, 0.5)
            } else {
                Complex64::new(p.omega_p / p.delta_p, 0.0)
            };
            gaussian(p, w) * pre * pump * p.omega_c / (oc2 - 4.0 * a * Complex64::new(delta + w, 0.5))
        },
        &breakpoints(p, delta),
        -lim,
        lim,
        TOL,
    )
}

pub fn eit(p: &MediumParams, delta: f64, mode: PathlengthMode) -> f64 {
    let factor = match mode {
        PathlengthMode::BiphotonQuarter => 1.0,
        PathlengthMode::ClassicalProbeHalf => 2.0,
    };
    (-2.0 * factor * self_term(p, delta).im).exp()
}

pub fn fwm(p: &MediumParams, delta: f64, exact_pump: bool) -> f64 {
    cross_term(p, delta, exact_pump).norm_sqr()
}

/// `|χ·sinc(ξ)·e^{iξ}|²` with the sinc written out.
pub fn overall(p: &MediumParams, delta: f64) -> f64 {
    let s = self_term(p, delta);
    let sinc = if s.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { s.sin() / s };
    (cross_term(p, delta, true) * sinc * (Complex64::i() * s).exp()).norm_sqr()
}

/// `|(1/2π) Σ_k h e^{−iδ_k τ} F_k|²`.
pub fn riemann_g2(delta: &[f64], f: &[Complex64], tau: f64) -> f64 {
    let h = delta[1] - delta[0];
    let sum: Complex64 = delta
        .iter()
        .zip(f)
        .map(|(&d, &v)| v * Complex64::from_polar(1.0, -d * tau))
        .sum();
    (sum * h / (2.0 * std::f64::consts::PI)).norm_sqr()
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// Numeric rows of a CSV with `#` comments and one header line.
pub fn read_table(name: &str) -> Vec<Vec<f64>> {
    let text = std::fs::read_to_string(data_path(name)).expect("reference table");
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .skip(1)
        .map(|l| l.split(',').map(|v| v.trim().parse().expect("number")).collect())
        .collect()
}
