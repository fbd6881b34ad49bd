//! Gauss–Hermite rules for the normalized Gaussian measure and the
//! Doppler average built on top of them.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A Gauss–Hermite rule normalized so that `Σ wᵢ f(tᵢ) ≈ ∫ e^{-t²}/√π f(t) dt`.
///
/// Nodes whose weight underflows are dropped, so `nodes.len()` can be
/// smaller than `order` for very high orders.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

const PI_POW_M1_4: f64 = 0.751_125_544_464_942_5;

impl QuadratureRule {
    /// Builds the `order`-point Gauss–Hermite rule.
    ///
    /// Golub–Welsch (implicit QL on the Jacobi matrix, tracking only the first
    /// eigenvector row) locates the nodes. Each node is then polished by Newton
    /// on the orthonormal Hermite recurrence, which also gives its weight to full
    /// relative accuracy; exponent tracking keeps high orders from overflowing.
    pub fn gauss_hermite(order: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::invalid("order", format!("{order} < 2")));
        }
        let n = order;
        let mut diag = vec![0.0; n];
        let mut off: Vec<f64> = (1..=n).map(|k| (k as f64 / 2.0).sqrt()).collect();
        off[n - 1] = 0.0;
        let mut first_row = vec![0.0; n];
        first_row[0] = 1.0;
        tridiagonal_ql(&mut diag, &mut off, &mut first_row)?;

        let mut positive: Vec<f64> = diag.iter().copied().filter(|&x| x > 1e-8).collect();
        positive.sort_by(|a, b| a.total_cmp(b));
        if positive.len() != n / 2 {
            return Err(Error::NonConvergence {
                what: "Gauss-Hermite eigenvalues",
                iterations: 0,
            });
        }

        let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
        let polish = |guess: f64| -> (f64, f64) {
            let mut z = guess;
            let mut log_pp = 0.0;
            for _ in 0..4 {
                let (p1, pp, scale) = hermite_with_derivative(n, z);
                log_pp = pp.abs().ln() + scale;
                let step = p1 / pp;
                z -= step;
                if step.abs() <= 1e-15 * z.abs().max(1.0) {
                    break;
                }
            }
            let log_w = std::f64::consts::LN_2 - 2.0 * log_pp;
            (z, log_w.exp() * inv_sqrt_pi)
        };

        let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(n);
        if n % 2 == 1 {
            let (_, w) = polish(0.0);
            pairs.push((0.0, w));
        }
        for &x in &positive {
            let (z, w) = polish(x);
            if w > 0.0 {
                pairs.push((z, w));
                pairs.push((-z, w));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(Self {
            order,
            nodes,
            weights,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `Σ wᵢ f(tᵢ)` over the normalized Gaussian measure.
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| f(t) * w)
            .sum()
    }
}

/// Implicit QL with Wilkinson shifts on a symmetric tridiagonal matrix.
/// `off[i]` couples rows `i` and `i+1`. Eigenvalues overwrite `diag` and
/// `first_row` receives the first component of each eigenvector.
fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64], first_row: &mut [f64]) -> Result<()> {
    let n = diag.len();
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let scale = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * scale {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > 60 {
                return Err(Error::NonConvergence {
                    what: "tridiagonal QL",
                    iterations,
                });
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut i = m;
            let mut split = false;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    split = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let upper = first_row[i + 1];
                first_row[i + 1] = s * first_row[i] + c * upper;
                first_row[i] = c * first_row[i] - s * upper;
            }
            if split {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

/// Orthonormal Hermite value `p_n(z)` and derivative factor `√(2n) p_{n-1}(z)`,
/// both divided by `exp(scale)`.
fn hermite_with_derivative(n: usize, z: f64) -> (f64, f64, f64) {
    let mut p1 = PI_POW_M1_4;
    let mut p2 = 0.0;
    let mut scale = 0.0;
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
        if p1.abs() > 1e150 {
            p1 *= 1e-150;
            p2 *= 1e-150;
            scale += 150.0 * std::f64::consts::LN_10;
        }
    }
    (p1, (2.0 * n as f64).sqrt() * p2, scale)
}

/// Shared cache of rules by order.
pub fn cached_rule(order: usize) -> Result<Arc<QuadratureRule>> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<QuadratureRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&order) {
        return Ok(Arc::clone(rule));
    }
    let rule = Arc::new(QuadratureRule::gauss_hermite(order)?);
    cache
        .lock()
        .unwrap()
        .entry(order)
        .or_insert_with(|| Arc::clone(&rule));
    Ok(rule)
}

/// `∫ dω e^{-ω²/Γ_D²}/(√π Γ_D) f(ω)` with a fixed rule.
pub fn doppler_average<F>(f: F, doppler_width: f64, rule: &QuadratureRule) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    rule.integrate(|t| f(doppler_width * t))
}

#[derive(Debug, Clone, Copy)]
pub struct AveragingSettings {
    pub start_order: usize,
    pub max_order: usize,
    pub rel_tol: f64,
}

impl Default for AveragingSettings {
    fn default() -> Self {
        Self {
            start_order: 200,
            max_order: 1600,
            rel_tol: 1e-9,
        }
    }
}

/// Result of an order-doubling Doppler average.
#[derive(Debug, Clone, Copy)]
pub struct Averaged {
    pub value: Complex64,
    /// Order of the last rule used.
    pub order: usize,
    /// Relative change between the last two orders.
    pub last_change: f64,
    /// False when the doubling test still failed at `max_order`.
    pub converged: bool,
}

/// Doppler average with automatic order doubling until two successive
/// results agree to `rel_tol`.
pub fn doppler_average_adaptive<F>(
    f: F,
    doppler_width: f64,
    settings: &AveragingSettings,
) -> Result<Averaged>
where
    F: Fn(f64) -> Complex64,
{
    if !(doppler_width > 0.0) {
        return Err(Error::invalid("gamma_doppler", "must be > 0"));
    }
    let mut order = settings.start_order;
    let mut prev = doppler_average(&f, doppler_width, &*cached_rule(order)?);
    let mut change = f64::INFINITY;
    while order < settings.max_order {
        order = (order * 2).min(settings.max_order);
        let next = doppler_average(&f, doppler_width, &*cached_rule(order)?);
        let scale = next.norm().max(f64::MIN_POSITIVE);
        change = (next - prev).norm() / scale;
        prev = next;
        if change <= settings.rel_tol {
            return Ok(Averaged {
                value: prev,
                order,
                last_change: change,
                converged: true,
            });
        }
    }
    Ok(Averaged {
        value: prev,
        order,
        last_change: change,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn rule_invariants() {
        for &n in &[2usize, 3, 7, 20, 200, 400, 800, 1600] {
            let rule = QuadratureRule::gauss_hermite(n).unwrap();
            let sum: f64 = rule.weights().iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "n={n} sum={sum}");
            assert!(rule.weights().iter().all(|&w| w > 0.0));
            assert!(rule.nodes().windows(2).all(|p| p[0] < p[1]), "n={n}");
        }
        assert!(QuadratureRule::gauss_hermite(1).is_err());
    }

    #[test]
    fn low_order_nodes_are_exact() {
        let rule = QuadratureRule::gauss_hermite(2).unwrap();
        let x = std::f64::consts::FRAC_1_SQRT_2;
        assert!((rule.nodes()[1] - x).abs() < 1e-15);
        assert!((rule.weights()[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn constant_odd_and_second_moment() {
        let rule = cached_rule(200).unwrap();
        let gd = 54.0;
        assert!((doppler_average(|_| c(1.0), gd, &rule) - 1.0).norm() < 1e-12);
        assert!(doppler_average(c, gd, &rule).norm() < 1e-9);
        let m2 = doppler_average(|w| c(w * w), gd, &rule);
        assert!((m2.re - gd * gd / 2.0).abs() < 1e-10 * gd * gd);
    }

    #[test]
    fn adaptive_flags_unresolved_integrand() {
        let narrow = |w: f64| Complex64::new(1.0, 0.0) / Complex64::new(w - 0.3, 0.01);
        let out = doppler_average_adaptive(narrow, 54.0, &AveragingSettings::default()).unwrap();
        assert!(!out.converged);
        assert_eq!(out.order, 1600);
        let smooth = |w: f64| Complex64::new((w / 10.0).cos(), 0.0);
        let out = doppler_average_adaptive(smooth, 3.0, &AveragingSettings::default()).unwrap();
        assert!(out.converged);
        assert!(doppler_average_adaptive(smooth, 0.0, &AveragingSettings::default()).is_err());
    }
}
