//! Sturm-Liouville weights from the Pearson equation `(p a)' = p b`.
//!
//! The solution `p = exp(integral of (b - a') / a)` is obtained in closed form
//! by partial fractions of `(b - a') / a` over the rationals. Supported leading
//! coefficients: a constant, a linear polynomial, a quadratic with two distinct
//! rational roots, and `c (x^2 + 1)`.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{format_rational, rational_sqrt, to_f64, Poly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Bound {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl Bound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Bound::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Bound::NegInfinity => f64::NEG_INFINITY,
            Bound::Finite(r) => to_f64(r),
            Bound::PosInfinity => f64::INFINITY,
        }
    }

    fn label(&self) -> String {
        match self {
            Bound::NegInfinity => "-inf".to_string(),
            Bound::Finite(r) => format_rational(r),
            Bound::PosInfinity => "+inf".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound) -> Result<Self> {
        if lo >= hi || lo == Bound::PosInfinity || hi == Bound::NegInfinity {
            return Err(Error::InvalidArgument(format!(
                "empty interval ({}, {})",
                lo.label(),
                hi.label()
            )));
        }
        Ok(Interval {
            lo,
            hi,
            lo_open: true,
            hi_open: true,
        })
    }

    pub fn open(lo: Rational, hi: Rational) -> Result<Self> {
        Interval::new(Bound::Finite(lo), Bound::Finite(hi))
    }

    pub fn real_line() -> Self {
        Interval {
            lo: Bound::NegInfinity,
            hi: Bound::PosInfinity,
            lo_open: true,
            hi_open: true,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.finite().is_some() && self.hi.finite().is_some()
    }

    /// Whether `r` lies strictly inside.
    pub fn contains_interior(&self, r: &Rational) -> bool {
        let r = Bound::Finite(r.clone());
        self.lo < r && r < self.hi
    }

    /// A point strictly inside, used to fix signs of `x - r` on the interval.
    pub fn interior_point(&self) -> Rational {
        match (&self.lo, &self.hi) {
            (Bound::Finite(a), Bound::Finite(b)) => (a + b) / Rational::from_integer(2.into()),
            (Bound::Finite(a), _) => a + Rational::one(),
            (_, Bound::Finite(b)) => b - Rational::one(),
            _ => Rational::zero(),
        }
    }

    /// `n` points spread through the interior.
    pub fn sample_points(&self, n: usize) -> Vec<f64> {
        let frac = |k: usize| (k as f64 + 0.5) / n as f64;
        match (&self.lo, &self.hi) {
            (Bound::Finite(a), Bound::Finite(b)) => {
                let (a, b) = (to_f64(a), to_f64(b));
                (0..n).map(|k| a + (b - a) * frac(k)).collect()
            }
            (Bound::Finite(a), _) => {
                let a = to_f64(a);
                (0..n).map(|k| a + 6.0 * frac(k)).collect()
            }
            (_, Bound::Finite(b)) => {
                let b = to_f64(b);
                (0..n).map(|k| b - 6.0 * frac(k)).collect()
            }
            _ => (0..n).map(|k| -4.0 + 8.0 * frac(k)).collect(),
        }
    }

    pub fn to_json(&self) -> IntervalJson {
        IntervalJson {
            lo: self.lo.label(),
            hi: self.hi.label(),
            lo_open: self.lo_open,
            hi_open: self.hi_open,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo.label(),
            self.hi.label(),
            if self.hi_open { ')' } else { ']' }
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalJson {
    pub lo: String,
    pub hi: String,
    pub lo_open: bool,
    pub hi_open: bool,
}

/// `|x - root|^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerFactor {
    pub root: Rational,
    pub exponent: Rational,
}

/// `constant * prod |x - r_i|^e_i * (x^2 + 1)^q * exp(E(x)) * exp(beta * atan x)`
/// on `interval`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightExpr {
    pub constant: Rational,
    pub power_factors: Vec<PowerFactor>,
    pub quad_exponent: Option<Rational>,
    pub exp_poly: Poly,
    pub arctan_coeff: Rational,
    pub interval: Interval,
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerFactorJson {
    pub root: String,
    pub exp: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightJson {
    pub constant: String,
    pub power_factors: Vec<PowerFactorJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quad_exp: Option<String>,
    pub exp_poly: Poly,
    pub arctan_coeff: String,
    pub interval: IntervalJson,
    pub formula: String,
}

impl WeightExpr {
    /// Sum of exponents of power factors rooted at `r`.
    pub fn exponent_at(&self, r: &Rational) -> Rational {
        self.power_factors
            .iter()
            .filter(|f| &f.root == r)
            .fold(Rational::zero(), |acc, f| acc + &f.exponent)
    }

    fn quad(&self) -> Rational {
        self.quad_exponent.clone().unwrap_or_else(Rational::zero)
    }

    /// Growth exponent of the weight's algebraic part at infinity.
    fn algebraic_growth(&self) -> Rational {
        self.power_factors
            .iter()
            .fold(Rational::from_integer(2.into()) * self.quad(), |acc, f| {
                acc + &f.exponent
            })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut v = to_f64(&self.constant);
        for f in &self.power_factors {
            v *= (x - to_f64(&f.root)).abs().powf(to_f64(&f.exponent));
        }
        if let Some(q) = &self.quad_exponent {
            v *= (x * x + 1.0).powf(to_f64(q));
        }
        v * (self.exp_poly.eval_f64(x) + to_f64(&self.arctan_coeff) * x.atan()).exp()
    }

    /// Evaluation at a complex point near the real axis; `|x - r|` is continued
    /// analytically from its sign on the interval.
    fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut v = Complex64::new(to_f64(&self.constant), 0.0);
        let anchor = self.interval.interior_point();
        for f in &self.power_factors {
            let sign = if anchor > f.root { 1.0 } else { -1.0 };
            let base = (z - to_f64(&f.root)) * sign;
            v *= base.powf(to_f64(&f.exponent));
        }
        if let Some(q) = &self.quad_exponent {
            v *= (z * z + 1.0).powf(to_f64(q));
        }
        let e = self
            .exp_poly
            .to_f64_coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        // first-order continuation of atan off the real axis
        let atan = Complex64::new(z.re.atan(), z.im / (1.0 + z.re * z.re));
        v * (e + atan * to_f64(&self.arctan_coeff)).exp()
    }

    /// Sum of the absolute values of the terms making up `p'/p`.
    fn log_derivative_magnitude(&self, x: f64) -> f64 {
        let mut d = abs_eval(&self.exp_poly.derive(1), x);
        for f in &self.power_factors {
            d += (to_f64(&f.exponent) / (x - to_f64(&f.root))).abs();
        }
        let q = to_f64(&self.quad());
        d + ((2.0 * q * x).abs() + to_f64(&self.arctan_coeff).abs()) / (x * x + 1.0)
    }

    pub fn formula(&self, var: &str) -> String {
        let mut parts = Vec::new();
        if !self.constant.is_one() {
            parts.push(format_rational(&self.constant));
        }
        for f in &self.power_factors {
            let base = Poly::linear_factor(&f.root).to_pretty(var);
            parts.push(format!("|{base}|^({})", format_rational(&f.exponent)));
        }
        if let Some(q) = &self.quad_exponent {
            parts.push(format!("({var}^2 + 1)^({})", format_rational(q)));
        }
        if !self.exp_poly.is_zero() {
            parts.push(format!("exp({})", self.exp_poly.to_pretty(var)));
        }
        if !self.arctan_coeff.is_zero() {
            let k = &self.arctan_coeff;
            parts.push(if k.is_one() {
                format!("exp(atan({var}))")
            } else if (-k).is_one() {
                format!("exp(-atan({var}))")
            } else {
                format!("exp({}*atan({var}))", format_rational(k))
            });
        }
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" * ")
        };
        format!("p({var}) = {body} on {}", self.interval)
    }

    pub fn to_json(&self) -> WeightJson {
        WeightJson {
            constant: format_rational(&self.constant),
            power_factors: self
                .power_factors
                .iter()
                .map(|f| PowerFactorJson {
                    root: format_rational(&f.root),
                    exp: format_rational(&f.exponent),
                })
                .collect(),
            quad_exp: self.quad_exponent.as_ref().map(format_rational),
            exp_poly: self.exp_poly.clone(),
            arctan_coeff: format_rational(&self.arctan_coeff),
            interval: self.interval.to_json(),
            formula: self.formula("x"),
        }
    }
}

/// Solves `(p a)' = p b` for `deg a <= 2`, `deg b <= 1`.
///
/// The weight is normalized to `constant = 1`; zero exponents are dropped.
pub fn derive_weight(a: &Poly, b: &Poly) -> Result<WeightExpr> {
    let unsupported = |why: &str| Error::UnsupportedLeadingCoefficient(format!("{a}: {why}"));
    if b.degree().is_some_and(|d| d > 1) {
        return Err(Error::InvalidArgument(format!(
            "drift {b} has degree above one"
        )));
    }
    let two = Rational::from_integer(2.into());
    let (b0, b1) = (b.coeff(0), b.coeff(1));
    let mut w = WeightExpr {
        constant: Rational::one(),
        power_factors: Vec::new(),
        quad_exponent: None,
        exp_poly: Poly::zero(),
        arctan_coeff: Rational::zero(),
        interval: Interval::real_line(),
    };
    match a.degree() {
        None => return Err(unsupported("zero polynomial")),
        Some(0) => {
            // p = exp(integral of b / c)
            let c = a.coeff(0);
            w.exp_poly = b.antiderivative().scale(&c.recip());
        }
        Some(1) => {
            // a = c (x - r); (b - c) / a = b1 / c + (b(r) - c) / (c (x - r))
            let c = a.coeff(1);
            let r = -a.coeff(0) / &c;
            let k = &b1 / &c;
            w.exp_poly = Poly::new(vec![Rational::zero(), k.clone()]);
            w.power_factors.push(PowerFactor {
                root: r.clone(),
                exponent: (b.eval(&r) - &c) / &c,
            });
            w.interval = if k.is_positive() {
                Interval::new(Bound::NegInfinity, Bound::Finite(r))?
            } else {
                Interval::new(Bound::Finite(r), Bound::PosInfinity)?
            };
        }
        Some(2) => {
            let (p2, p1, p0) = (a.coeff(2), a.coeff(1), a.coeff(0));
            let disc = &p1 * &p1 - Rational::from_integer(4.into()) * &p2 * &p0;
            if disc.is_zero() {
                return Err(unsupported(
                    "double root (x^2 normal form has no weight here)",
                ));
            }
            if disc.is_negative() {
                if !p1.is_zero() || p0 != p2 {
                    return Err(unsupported(
                        "complex roots other than c(x^2 + 1); normalize first",
                    ));
                }
                // a = c (x^2 + 1), (b - a') / a = ((b1 - 2c) x + b0) / (c (x^2 + 1))
                let c = p2;
                w.quad_exponent = Some((&b1 - &two * &c) / (&two * &c));
                w.arctan_coeff = &b0 / &c;
            } else {
                let root = rational_sqrt(&disc).ok_or_else(|| unsupported("irrational roots"))?;
                let r1 = (-&p1 - &root) / (&two * &p2);
                let r2 = (-&p1 + &root) / (&two * &p2);
                let (r1, r2) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
                let da = a.derive(1);
                // residues of (b - a') / (p2 (x - r1)(x - r2))
                let residue =
                    |r: &Rational, other: &Rational| (b.eval(r) - da.eval(r)) / (&p2 * (r - other));
                w.power_factors.push(PowerFactor {
                    root: r1.clone(),
                    exponent: residue(&r1, &r2),
                });
                w.power_factors.push(PowerFactor {
                    root: r2.clone(),
                    exponent: residue(&r2, &r1),
                });
                w.interval = Interval::open(r1, r2)?;
            }
        }
        Some(_) => return Err(unsupported("degree above two")),
    }
    w.power_factors.retain(|f| !f.exponent.is_zero());
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PearsonVerdict {
    pub pass: bool,
    /// `(a' - b) D + a D p'/p` with `D` the common denominator; zero when the identity holds.
    pub symbolic_residual: Poly,
    pub max_numeric_residual: f64,
    pub samples: usize,
}

pub const PEARSON_TOL: f64 = 1e-10;

/// `sum |c_k| |x|^k`.
fn abs_eval(p: &Poly, x: f64) -> f64 {
    p.to_f64_coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x.abs() + c.abs())
}

/// Checks `(p a)' = p b` symbolically and at 20 interior points.
///
/// The numeric side differentiates `p a` by a complex step, independent of
/// the closed-form logarithmic derivative used symbolically.
pub fn pearson_check(p: &WeightExpr, a: &Poly, b: &Poly) -> PearsonVerdict {
    let symbolic_residual = symbolic_pearson_residual(p, a, b);
    let samples = p.interval.sample_points(20);
    let a_f = |z: Complex64| {
        a.to_f64_coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let step = 1e-30;
    let mut worst = 0.0f64;
    for &x in &samples {
        let z = Complex64::new(x, step);
        let pa_prime = (p.eval_complex(z) * a_f(z)).im / step;
        let pv = p.eval(x);
        let pb = pv * b.eval_f64(x);
        // magnitudes of the individual terms, so cancellation inside b or p'/p
        // does not shrink the scale
        let scale = pv
            * (abs_eval(&a.derive(1), x)
                + a.eval_f64(x).abs() * p.log_derivative_magnitude(x)
                + abs_eval(b, x))
            + f64::MIN_POSITIVE;
        let r = (pa_prime - pb).abs() / scale;
        worst = worst.max(if r.is_nan() { f64::INFINITY } else { r });
    }
    PearsonVerdict {
        pass: symbolic_residual.is_zero() && worst < PEARSON_TOL,
        symbolic_residual,
        max_numeric_residual: worst,
        samples: samples.len(),
    }
}

fn symbolic_pearson_residual(p: &WeightExpr, a: &Poly, b: &Poly) -> Poly {
    let quad = Poly::from_ints(&[1, 0, 1]);
    let has_quad =
        p.quad_exponent.as_ref().is_some_and(|q| !q.is_zero()) || !p.arctan_coeff.is_zero();
    let mut denom = p
        .power_factors
        .iter()
        .fold(Poly::one(), |acc, f| &acc * &Poly::linear_factor(&f.root));
    if has_quad {
        denom = &denom * &quad;
    }
    // D * p'/p
    let mut log_num = &p.exp_poly.derive(1) * &denom;
    for (i, f) in p.power_factors.iter().enumerate() {
        let others = p
            .power_factors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(Poly::one(), |acc, (_, g)| {
                &acc * &Poly::linear_factor(&g.root)
            });
        let others = if has_quad { &others * &quad } else { others };
        log_num = &log_num + &others.scale(&f.exponent);
    }
    if has_quad {
        let two_q = p.quad() * Rational::from_integer(2.into());
        let lin = Poly::new(vec![p.arctan_coeff.clone(), two_q]);
        let others = p
            .power_factors
            .iter()
            .fold(Poly::one(), |acc, g| &acc * &Poly::linear_factor(&g.root));
        log_num = &log_num + &(&lin * &others);
    }
    &(&(&a.derive(1) - b) * &denom) + &(a * &log_num)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointVerdict {
    pub endpoint: String,
    pub ok: bool,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegrabilityVerdict {
    pub integrable: bool,
    pub endpoints: Vec<EndpointVerdict>,
    /// Set when an exponential factor decided an infinite endpoint; that rule
    /// (used for the Laguerre and Hermite cases) is derived rather than quoted.
    pub derived_rule: bool,
}

/// Sign of `E(x)` as `x` tends to the given infinity; zero for constants.
fn exp_direction(e: &Poly, bound: &Bound) -> i32 {
    match e.degree() {
        None | Some(0) => 0,
        Some(d) => {
            let lead = e.leading().expect("nonzero").is_positive();
            let at_neg = matches!(bound, Bound::NegInfinity) && d % 2 == 1;
            if lead != at_neg {
                1
            } else {
                -1
            }
        }
    }
}

fn integrability_impl(
    p: &WeightExpr,
    interval: &Interval,
    poly_degree: usize,
    product: Option<&Poly>,
) -> IntegrabilityVerdict {
    let mut endpoints = Vec::new();
    let mut derived_rule = false;
    for (name, bound) in [("lo", &interval.lo), ("hi", &interval.hi)] {
        let verdict = match bound {
            Bound::Finite(r) => {
                let mult = product.map_or(0, |q| q.root_multiplicity(r).min(1 << 20));
                let e = p.exponent_at(r) + Rational::from_integer(mult.into());
                let ok = e > -Rational::one();
                EndpointVerdict {
                    endpoint: format!("{name}={}", format_rational(r)),
                    ok,
                    reason: format!(
                        "local exponent {} {} -1",
                        format_rational(&e),
                        if ok { ">" } else { "<=" }
                    ),
                }
            }
            inf => match exp_direction(&p.exp_poly, inf) {
                -1 => {
                    derived_rule = true;
                    EndpointVerdict {
                        endpoint: format!("{name}={}", inf.label()),
                        ok: true,
                        reason: "exponential decay dominates".to_string(),
                    }
                }
                1 => {
                    derived_rule = true;
                    EndpointVerdict {
                        endpoint: format!("{name}={}", inf.label()),
                        ok: false,
                        reason: "exponential growth".to_string(),
                    }
                }
                _ => {
                    let g = Rational::from_integer(poly_degree.into())
                        + p.algebraic_growth()
                        + Rational::one();
                    let ok = g.is_negative();
                    EndpointVerdict {
                        endpoint: format!("{name}={}", inf.label()),
                        ok,
                        reason: format!(
                            "degree + growth + 1 = {} {} 0",
                            format_rational(&g),
                            if ok { "<" } else { ">=" }
                        ),
                    }
                }
            },
        };
        endpoints.push(verdict);
    }
    for f in &p.power_factors {
        if interval.contains_interior(&f.root) && f.exponent <= -Rational::one() {
            endpoints.push(EndpointVerdict {
                endpoint: format!("interior={}", format_rational(&f.root)),
                ok: false,
                reason: format!(
                    "interior singularity with exponent {}",
                    format_rational(&f.exponent)
                ),
            });
        }
    }
    IntegrabilityVerdict {
        integrable: endpoints.iter().all(|e| e.ok),
        endpoints,
        derived_rule,
    }
}

/// Integrability of `p * P` over the interval for a generic polynomial `P` of
/// total degree `total_degree`.
pub fn integrability(
    p: &WeightExpr,
    interval: &Interval,
    total_degree: usize,
) -> IntegrabilityVerdict {
    integrability_impl(p, interval, total_degree, None)
}

/// Integrability of `p * product`, crediting zeros of `product` at finite endpoints.
pub fn integrability_of_product(
    p: &WeightExpr,
    interval: &Interval,
    product: &Poly,
) -> IntegrabilityVerdict {
    integrability_impl(p, interval, product.degree().unwrap_or(0), Some(product))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryVerdict {
    pub vanishes: bool,
    pub endpoints: Vec<EndpointVerdict>,
}

fn boundary_impl(
    p: &WeightExpr,
    a: &Poly,
    interval: &Interval,
    wronskian_degree: Option<usize>,
    wronskian: Option<&Poly>,
) -> BoundaryVerdict {
    let mut endpoints = Vec::new();
    for (name, bound) in [("lo", &interval.lo), ("hi", &interval.hi)] {
        let label = format!("{name}={}", bound.label());
        let v = if wronskian_degree.is_none() {
            EndpointVerdict {
                endpoint: label,
                ok: true,
                reason: "boundary form is identically zero".to_string(),
            }
        } else {
            match bound {
                Bound::Finite(r) => {
                    let mult =
                        a.root_multiplicity(r) + wronskian.map_or(0, |w| w.root_multiplicity(r));
                    let e = p.exponent_at(r) + Rational::from_integer(mult.into());
                    let ok = e.is_positive();
                    EndpointVerdict {
                        endpoint: label,
                        ok,
                        reason: format!("local exponent of p*a*W is {}", format_rational(&e)),
                    }
                }
                inf => match exp_direction(&p.exp_poly, inf) {
                    -1 => EndpointVerdict {
                        endpoint: label,
                        ok: true,
                        reason: "exponential decay dominates".to_string(),
                    },
                    1 => EndpointVerdict {
                        endpoint: label,
                        ok: false,
                        reason: "exponential growth".to_string(),
                    },
                    _ => {
                        let deg_a = a.degree().unwrap_or(0);
                        let g =
                            Rational::from_integer((deg_a + wronskian_degree.unwrap_or(0)).into())
                                + p.algebraic_growth();
                        let ok = g.is_negative();
                        EndpointVerdict {
                            endpoint: label,
                            ok,
                            reason: format!("p*a*W grows like x^({})", format_rational(&g)),
                        }
                    }
                },
            }
        };
        endpoints.push(v);
    }
    BoundaryVerdict {
        vanishes: endpoints.iter().all(|e| e.ok),
        endpoints,
    }
}

/// Whether `p a (P Q' - P' Q)` vanishes at both ends for generic polynomials
/// of degrees `m` and `n`.
pub fn boundary_vanishing(
    p: &WeightExpr,
    a: &Poly,
    interval: &Interval,
    degrees: (usize, usize),
) -> BoundaryVerdict {
    let (m, n) = degrees;
    // generic Wronskian degree m + n - 1; constant pairs have none
    let w = (m + n).checked_sub(1).filter(|_| m != n || m > 0);
    boundary_impl(p, a, interval, w, None)
}

/// Same check for concrete functions, crediting their common zeros at finite endpoints.
pub fn boundary_vanishing_for(
    p: &WeightExpr,
    a: &Poly,
    interval: &Interval,
    f: &Poly,
    g: &Poly,
) -> BoundaryVerdict {
    let w = &(f * &g.derive(1)) - &(&f.derive(1) * g);
    boundary_impl(p, a, interval, w.degree(), Some(&w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn jacobi(alpha: Rational, beta: Rational) -> (Poly, Poly) {
        (Poly::from_ints(&[1, 0, -1]), Poly::new(vec![beta, alpha]))
    }

    #[test]
    fn chaudhry_qadir_weight() {
        let a = Poly::from_ints(&[0, 1, -1]);
        let b = Poly::from_ints(&[1, -1]);
        let w = derive_weight(&a, &b).unwrap();
        assert_eq!(
            w.power_factors,
            vec![PowerFactor {
                root: int(1),
                exponent: int(-1)
            }]
        );
        assert_eq!(w.interval, Interval::open(int(0), int(1)).unwrap());
        assert!(w.exp_poly.is_zero() && w.quad_exponent.is_none());
        assert!(pearson_check(&w, &a, &b).pass);
        let v = integrability(&w, &w.interval, 0);
        assert!(!v.integrable);
    }

    #[test]
    fn jacobi_weight_matches_closed_form() {
        for (al, be) in [
            (rat(-5, 2), rat(1, 3)),
            (int(-2), int(0)),
            (rat(3, 7), rat(-4, 5)),
        ] {
            let (a, b) = jacobi(al.clone(), be.clone());
            let w = derive_weight(&a, &b).unwrap();
            let two = int(2);
            let at_plus = -(&be + &al + &two) / &two;
            let at_minus = (&be - &al - &two) / &two;
            assert_eq!(w.exponent_at(&int(1)), at_plus);
            assert_eq!(w.exponent_at(&int(-1)), at_minus);
            let v = pearson_check(&w, &a, &b);
            assert!(v.pass, "{v:?}");
        }
    }

    #[test]
    fn romanovski_weight() {
        let a = Poly::from_ints(&[1, 0, 1]);
        let b = Poly::new(vec![int(1), rat(-13, 2)]);
        let w = derive_weight(&a, &b).unwrap();
        assert_eq!(w.quad_exponent, Some(rat(-17, 4)));
        assert_eq!(w.arctan_coeff, int(1));
        assert_eq!(w.interval, Interval::real_line());
        assert!(pearson_check(&w, &a, &b).pass);
    }

    #[test]
    fn hermite_weight() {
        let a = Poly::one();
        let b = Poly::from_ints(&[0, -2]);
        let w = derive_weight(&a, &b).unwrap();
        assert_eq!(w.exp_poly, Poly::from_ints(&[0, 0, -1]));
        assert!(pearson_check(&w, &a, &b).pass);
        let v = integrability(&w, &w.interval, 40);
        assert!(v.integrable && v.derived_rule);
    }

    #[test]
    fn laguerre_weight() {
        let a = Poly::x();
        let b = Poly::from_ints(&[1, -1]);
        let w = derive_weight(&a, &b).unwrap();
        assert_eq!(w.exp_poly, Poly::from_ints(&[0, -1]));
        assert!(w.power_factors.is_empty());
        assert_eq!(
            w.interval,
            Interval::new(Bound::Finite(int(0)), Bound::PosInfinity).unwrap()
        );
        assert!(integrability(&w, &w.interval, 10).integrable);
    }

    #[test]
    fn perturbed_exponent_fails() {
        let a = Poly::from_ints(&[0, 1, -1]);
        let b = Poly::from_ints(&[1, -1]);
        let mut w = derive_weight(&a, &b).unwrap();
        w.power_factors[0].exponent = rat(-9, 10);
        let v = pearson_check(&w, &a, &b);
        assert!(!v.pass);
        assert!(!v.symbolic_residual.is_zero());
        assert!(v.max_numeric_residual > 1e-3);
    }

    #[test]
    fn unsupported_leading_coefficients() {
        let b = Poly::from_ints(&[0, 1]);
        assert!(matches!(
            derive_weight(&Poly::monomial(2), &b),
            Err(Error::UnsupportedLeadingCoefficient(_))
        ));
        assert!(matches!(
            derive_weight(&Poly::from_ints(&[-2, 0, 1]), &b),
            Err(Error::UnsupportedLeadingCoefficient(_))
        ));
        assert!(matches!(
            derive_weight(&Poly::from_ints(&[2, -2, 1]), &b),
            Err(Error::UnsupportedLeadingCoefficient(_))
        ));
    }

    #[test]
    fn integrability_examples() {
        let (a, b) = jacobi(int(-2), int(0));
        let w = derive_weight(&a, &b).unwrap();
        assert!(integrability(&w, &w.interval, 30).integrable);

        let a = Poly::from_ints(&[1, 0, 1]);
        let b = Poly::new(vec![int(1), rat(-13, 2)]);
        let w = derive_weight(&a, &b).unwrap();
        assert!(integrability(&w, &w.interval, 7).integrable);
        assert!(!integrability(&w, &w.interval, 8).integrable);
    }

    #[test]
    fn product_zeros_restore_integrability() {
        let a = Poly::from_ints(&[0, 1, -1]);
        let b = Poly::from_ints(&[1, -1]);
        let w = derive_weight(&a, &b).unwrap();
        let f = Poly::from_ints(&[1, -1]);
        assert!(!integrability_of_product(&w, &w.interval, &Poly::one()).integrable);
        assert!(integrability_of_product(&w, &w.interval, &f).integrable);
    }

    #[test]
    fn boundary_examples() {
        let (a, b) = jacobi(int(-2), int(0));
        let w = derive_weight(&a, &b).unwrap();
        assert!(boundary_vanishing(&w, &a, &w.interval, (3, 5)).vanishes);

        let a = Poly::from_ints(&[1, 0, 1]);
        let b = Poly::new(vec![int(1), rat(-13, 2)]);
        let w = derive_weight(&a, &b).unwrap();
        assert!(boundary_vanishing(&w, &a, &w.interval, (3, 4)).vanishes);
        assert!(!boundary_vanishing(&w, &a, &w.interval, (4, 4)).vanishes);

        let a = Poly::from_ints(&[0, 1, -1]);
        let b = Poly::from_ints(&[1, -1]);
        let w = derive_weight(&a, &b).unwrap();
        let xi = Poly::from_ints(&[1, -1]);
        let eta = &xi * &Poly::from_ints(&[3, 2]);
        assert!(boundary_vanishing_for(&w, &a, &w.interval, &xi, &eta).vanishes);
        assert!(!boundary_vanishing_for(&w, &a, &w.interval, &Poly::one(), &Poly::x()).vanishes);
    }

    #[test]
    fn pearson_scale_survives_cancellation() {
        // b and p'/p both vanish at the sample point x = -1/5
        let (a, b) = (Poly::one(), Poly::from_ints(&[-1, -5]));
        let w = derive_weight(&a, &b).unwrap();
        assert!(pearson_check(&w, &a, &b).pass);
    }

    #[test]
    fn formula_text() {
        let a = Poly::from_ints(&[0, 1, -1]);
        let b = Poly::from_ints(&[1, -1]);
        let w = derive_weight(&a, &b).unwrap();
        assert_eq!(w.formula("t"), "p(t) = |t - 1|^(-1) on (0, 1)");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_rat() -> impl Strategy<Value = Rational> {
            (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
        }

        proptest! {
            #[test]
            fn jacobi_monotone_in_alpha(al in small_rat(), be in small_rat()) {
                let (a, b) = jacobi(al.clone(), be.clone());
                let w = derive_weight(&a, &b).unwrap();
                let (a2, b2) = jacobi(al - int(1), be);
                let w2 = derive_weight(&a2, &b2).unwrap();
                if integrability(&w, &w.interval, 3).integrable {
                    prop_assert!(integrability(&w2, &w2.interval, 3).integrable);
                }
            }

            #[test]
            fn romanovski_rule_is_exact(al in small_rat(), be in small_rat(), n in 0usize..20) {
                let a = Poly::from_ints(&[1, 0, 1]);
                let w = derive_weight(&a, &Poly::new(vec![be, al.clone()])).unwrap();
                let gamma = al - int(2);
                let expected = Rational::from_integer(n.into()) < -gamma - int(1);
                prop_assert_eq!(integrability(&w, &w.interval, n).integrable, expected);
            }

            #[test]
            fn pearson_holds_for_supported_shapes(al in small_rat(), be in small_rat(), shape in 0usize..4) {
                let a = match shape {
                    0 => Poly::from_ints(&[1, 0, -1]),
                    1 => Poly::from_ints(&[1, 0, 1]),
                    2 => Poly::x(),
                    _ => Poly::one(),
                };
                let b = Poly::new(vec![be, al]);
                let w = derive_weight(&a, &b).unwrap();
                let v = pearson_check(&w, &a, &b);
                prop_assert!(v.pass, "{:?}", v);
            }
        }
    }
}
