//! Tanh-sinh (double exponential) quadrature on a finite interval.
//!
//! Abscissae cluster doubly exponentially at both endpoints, which keeps the
//! rule accurate for integrable algebraic endpoint singularities. The
//! integrand receives the distance of each node to both endpoints computed
//! without cancellation, so factors like `|x - hi|^e` stay accurate right up
//! to the boundary.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Abscissa together with its distances to the two endpoints.
#[derive(Clone, Copy, Debug)]
pub struct Node {
    pub x: f64,
    pub from_lo: f64,
    pub from_hi: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub err_est: f64,
    pub levels: usize,
    pub evaluations: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct TanhSinh {
    pub tol: f64,
    pub max_levels: usize,
    pub min_levels: usize,
}

// Beyond this the node distances underflow.
const T_MAX: f64 = 6.2;

impl Default for TanhSinh {
    fn default() -> Self {
        TanhSinh {
            tol: 1e-10,
            max_levels: 12,
            min_levels: 3,
        }
    }
}

impl TanhSinh {
    pub fn new(tol: f64) -> Self {
        TanhSinh {
            tol,
            ..Default::default()
        }
    }

    /// Integrates `f` over `[lo, hi]`, halving the step until two successive
    /// levels agree to `tol * (1 + |value|)`.
    pub fn integrate<F>(&self, lo: f64, hi: f64, f: F) -> Result<Estimate>
    where
        F: Fn(Node) -> f64,
    {
        if lo >= hi {
            return Ok(Estimate {
                value: 0.0,
                err_est: 0.0,
                levels: 0,
                evaluations: 0,
            });
        }
        let half = 0.5 * (hi - lo);
        let mut evaluations = 0usize;

        // Weighted sample at parameter t, both signs handled by the caller.
        let mut sample = |t: f64| -> Result<f64> {
            let s = FRAC_PI_2 * t.sinh();
            let cosh_s = s.cosh();
            // 1 - tanh|s| without cancellation
            let near = half * (-s.abs()).exp() / cosh_s;
            if near == 0.0 || !near.is_finite() {
                return Ok(0.0);
            }
            let far = 2.0 * half - near;
            let w = half * FRAC_PI_2 * t.cosh() / (cosh_s * cosh_s);
            let node = if s >= 0.0 {
                Node {
                    x: hi - near,
                    from_lo: far,
                    from_hi: near,
                }
            } else {
                Node {
                    x: lo + near,
                    from_lo: near,
                    from_hi: far,
                }
            };
            evaluations += 1;
            let v = f(node);
            if !v.is_finite() {
                return Err(Error::NonIntegrable(format!(
                    "integrand is not finite at x = {:e}",
                    node.x
                )));
            }
            Ok(w * v)
        };

        // level 0: step 1, all integer t
        let mut h = 1.0;
        let mut sum = sample(0.0)?;
        let mut k = 1.0;
        while k * h <= T_MAX {
            sum += sample(k * h)? + sample(-k * h)?;
            k += 1.0;
        }
        let mut estimate = h * sum;
        let mut err = f64::INFINITY;

        for level in 1..=self.max_levels {
            h *= 0.5;
            let mut added = 0.0;
            let mut t = h;
            while t <= T_MAX {
                added += sample(t)? + sample(-t)?;
                t += 2.0 * h;
            }
            sum += added;
            let next = h * sum;
            err = (next - estimate).abs();
            estimate = next;
            if level >= self.min_levels && err <= self.tol * (1.0 + estimate.abs()) {
                return Ok(Estimate {
                    value: estimate,
                    err_est: err,
                    levels: level,
                    evaluations,
                });
            }
        }
        Err(Error::NoConvergence {
            levels: self.max_levels,
            estimate,
            error: err,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_polynomial() {
        let q = TanhSinh::default();
        let r = q.integrate(-1.0, 1.0, |n| n.x * n.x).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn inverse_square_root_singularities() {
        // Integral of 1/sqrt(1 - x^2) over (-1, 1) is pi.
        let q = TanhSinh::default();
        let r = q
            .integrate(-1.0, 1.0, |n| 1.0 / (n.from_lo * n.from_hi).sqrt())
            .unwrap();
        assert!((r.value - std::f64::consts::PI).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn strong_log_like_singularity() {
        // Integral of x^(-0.9) over (0, 1) is 10.
        let q = TanhSinh::default();
        let r = q.integrate(0.0, 1.0, |n| n.from_lo.powf(-0.9)).unwrap();
        assert!((r.value - 10.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn shifted_interval() {
        let q = TanhSinh::new(1e-12);
        let r = q.integrate(2.0, 5.0, |n| n.x.exp()).unwrap();
        let exact = 5f64.exp() - 2f64.exp();
        assert!((r.value - exact).abs() < 1e-10 * exact);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let q = TanhSinh::default();
        assert!(q.integrate(0.0, 1.0, |_| f64::NAN).is_err());
    }

    #[test]
    fn empty_interval() {
        let q = TanhSinh::default();
        assert_eq!(q.integrate(1.0, 1.0, |_| 1.0).unwrap().value, 0.0);
    }
}
