//! Levenberg–Marquardt with central-difference Jacobians.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct LmSettings {
    pub max_iterations: usize,
    /// Converged when every accepted step is below this, relative to the
    /// parameter (or its scale when the parameter is near zero).
    pub rel_step_tol: f64,
    /// Jacobian step, relative to the same scale.
    pub jacobian_step: f64,
}

impl Default for LmSettings {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            rel_step_tol: 1e-8,
            jacobian_step: 1e-6,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LmOutcome {
    pub params: Vec<f64>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
    /// `JᵀJ` at the solution, for conditioning diagnostics.
    pub normal_matrix: DMatrix<f64>,
}

impl LmOutcome {
    pub fn rms(&self) -> f64 {
        let n = self.residuals.len().max(1) as f64;
        (self.residuals.iter().map(|r| r * r).sum::<f64>() / n).sqrt()
    }
}

fn cost(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

/// Minimizes `Σ rᵢ(x)²`. `residual` writes `m` residuals and returns false
/// when the model cannot be evaluated at `x` (the step is then rejected).
pub fn levenberg_marquardt<F>(
    mut residual: F,
    x0: &[f64],
    m: usize,
    scales: &[f64],
    settings: &LmSettings,
) -> Result<LmOutcome>
where
    F: FnMut(&[f64], &mut [f64]) -> bool,
{
    let n = x0.len();
    assert_eq!(scales.len(), n);
    let mut x = x0.to_vec();
    let mut r = vec![0.0; m];
    if !residual(&x, &mut r) || r.iter().any(|v| !v.is_finite()) {
        return Err(Error::Fit("model is not finite at the starting point".into()));
    }
    let mut current = cost(&r);
    let mut lambda = 1e-3;
    let mut jac = DMatrix::<f64>::zeros(m, n);
    let mut plus = vec![0.0; m];
    let mut minus = vec![0.0; m];
    let mut trial = vec![0.0; m];

    for iteration in 1..=settings.max_iterations {
        for j in 0..n {
            let h = settings.jacobian_step * x[j].abs().max(scales[j]);
            let mut xp = x.clone();
            xp[j] += h;
            let mut xm = x.clone();
            xm[j] -= h;
            if !(residual(&xp, &mut plus) && residual(&xm, &mut minus)) {
                return Err(Error::Fit("model failed while forming the Jacobian".into()));
            }
            for i in 0..m {
                jac[(i, j)] = (plus[i] - minus[i]) / (2.0 * h);
            }
        }
        let jt = jac.transpose();
        let normal = &jt * &jac;
        let gradient = &jt * DVector::from_column_slice(&r);
        if current == 0.0 {
            return Ok(LmOutcome {
                params: x,
                residuals: r,
                iterations: iteration,
                normal_matrix: normal,
            });
        }

        loop {
            let mut damped = normal.clone();
            for j in 0..n {
                damped[(j, j)] += lambda * normal[(j, j)].max(1e-300);
            }
            let step = match damped.clone().cholesky() {
                Some(c) => c.solve(&(-&gradient)),
                None => match damped.lu().solve(&(-&gradient)) {
                    Some(s) => s,
                    None => {
                        lambda *= 10.0;
                        if lambda > 1e16 {
                            return Err(Error::Fit("singular normal equations".into()));
                        }
                        continue;
                    }
                },
            };
            let candidate: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let rel = step
                .iter()
                .zip(x.iter().zip(scales))
                .map(|(s, (xi, sc))| s.abs() / xi.abs().max(*sc))
                .fold(0.0, f64::max);
            let ok = residual(&candidate, &mut trial) && trial.iter().all(|v| v.is_finite());
            let new_cost = if ok { cost(&trial) } else { f64::INFINITY };
            if new_cost <= current {
                x = candidate;
                std::mem::swap(&mut r, &mut trial);
                current = new_cost;
                lambda = (lambda / 3.0).max(1e-12);
                if rel < settings.rel_step_tol {
                    return Ok(LmOutcome {
                        params: x,
                        residuals: r,
                        iterations: iteration,
                        normal_matrix: normal,
                    });
                }
                break;
            }
            lambda *= 4.0;
            // No downhill step exists at machine precision: we are at the minimum.
            if lambda > 1e12 || rel < settings.rel_step_tol * 1e-3 {
                return Ok(LmOutcome {
                    params: x,
                    residuals: r,
                    iterations: iteration,
                    normal_matrix: normal,
                });
            }
        }
    }
    Err(Error::NonConvergence {
        what: "Levenberg-Marquardt",
        iterations: settings.max_iterations,
    })
}
