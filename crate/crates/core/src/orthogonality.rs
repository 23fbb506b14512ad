//! Weighted inner products `<f, g> = integral over I of p f g` and Gram reports.
//!
//! Each product is first reduced symbolically: when every power factor of the
//! weight has an integer exponent that cancels against zeros of `f g` and no
//! transcendental factor is present, the integral is a polynomial integral and
//! is computed exactly. Everything else goes through tanh-sinh quadrature. On
//! unbounded intervals the variable is changed to `x = tan u` (shifted or
//! reflected for half-lines), which turns algebraic decay into an integrable
//! endpoint singularity.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{format_rational, to_f64, Poly, Rational};
use crate::eigen::{eigentable, EigenStatus};
use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilySpec, FamilySpecJson};
use crate::operator::DiffOperator;
use crate::quadrature::{Node, TanhSinh};
use crate::weights::{
    derive_weight, integrability_of_product, Bound, Interval, WeightExpr, WeightJson,
};

/// Default mixed absolute/relative quadrature tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Relative Gram magnitude below which a pair counts as orthogonal.
pub const ORTHOGONAL_THRESHOLD: f64 = 1e-8;

/// Exact `<f, g>` when `p f g` reduces to a polynomial on a finite interval.
pub fn inner_product_exact(
    p: &WeightExpr,
    f: &Poly,
    g: &Poly,
    interval: &Interval,
) -> Result<Rational> {
    let not_reducible = |why: String| Error::NotPolynomialReducible(why);
    let (Some(lo), Some(hi)) = (interval.lo.finite(), interval.hi.finite()) else {
        return Err(not_reducible("unbounded interval".into()));
    };
    if !p.exp_poly.is_zero() {
        return Err(not_reducible("exponential factor".into()));
    }
    if p.quad_exponent.as_ref().is_some_and(|q| !q.is_zero()) || !p.arctan_coeff.is_zero() {
        return Err(not_reducible("(x^2 + 1) or arctan factor".into()));
    }
    let mut h = (f * g).scale(&p.constant);
    let anchor = interval.interior_point();
    for factor in &p.power_factors {
        if !factor.exponent.is_integer() {
            return Err(not_reducible(format!(
                "non-integer exponent {} at {}",
                format_rational(&factor.exponent),
                format_rational(&factor.root)
            )));
        }
        if interval.contains_interior(&factor.root) {
            return Err(not_reducible(
                "power factor changes sign inside the interval".into(),
            ));
        }
        let e = factor
            .exponent
            .to_integer()
            .to_i64()
            .ok_or_else(|| not_reducible("exponent out of range".into()))?;
        // |x - r| = sign * (x - r) on the interval
        let negative = anchor < factor.root;
        if negative && e % 2 != 0 {
            h = -h;
        }
        if e >= 0 {
            h = &h * &Poly::linear_factor(&factor.root).pow(e as usize);
        } else {
            for _ in 0..e.unsigned_abs() {
                h = h.divide_linear(&factor.root).map_err(|_| {
                    not_reducible(format!(
                        "f g does not vanish to order {} at {}",
                        -e,
                        format_rational(&factor.root)
                    ))
                })?;
            }
        }
    }
    h.definite_integral(lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumericValue {
    pub value: f64,
    pub err_est: f64,
    pub levels: usize,
}

/// Homogeneous form `sum h_k X^k c^(d-k)` of `h(X / c) c^d`, for `c > 0`.
fn homogeneous(coeffs: &[f64], big_x: f64, c: f64) -> f64 {
    let d = coeffs.len().saturating_sub(1);
    coeffs
        .iter()
        .enumerate()
        .map(|(k, &h)| h * big_x.powi(k as i32) * c.powi((d - k) as i32))
        .sum()
}

/// Variable `x = X / c` with `c > 0`, plus the log of `dx/du` and, when
/// known, accurate distances from `x` to the finite interval endpoints.
struct Point {
    big_x: f64,
    c: f64,
    ln_c: f64,
    ln_jacobian: f64,
    ln_from_lo: Option<f64>,
    ln_from_hi: Option<f64>,
    atan: f64,
}

enum Map {
    Finite { lo: f64, hi: f64 },
    Line,
    RightOf(f64),
    LeftOf(f64),
}

impl Map {
    fn for_interval(interval: &Interval) -> Self {
        match (&interval.lo, &interval.hi) {
            (Bound::Finite(a), Bound::Finite(b)) => Map::Finite {
                lo: to_f64(a),
                hi: to_f64(b),
            },
            (Bound::Finite(a), _) => Map::RightOf(to_f64(a)),
            (_, Bound::Finite(b)) => Map::LeftOf(to_f64(b)),
            _ => Map::Line,
        }
    }

    fn range(&self) -> (f64, f64) {
        use std::f64::consts::FRAC_PI_2;
        match self {
            Map::Finite { lo, hi } => (*lo, *hi),
            Map::Line => (-FRAC_PI_2, FRAC_PI_2),
            Map::RightOf(_) | Map::LeftOf(_) => (0.0, FRAC_PI_2),
        }
    }

    fn point(&self, n: Node) -> Point {
        match *self {
            Map::Finite { .. } => Point {
                big_x: n.x,
                c: 1.0,
                ln_c: 0.0,
                ln_jacobian: 0.0,
                ln_from_lo: Some(n.from_lo.ln()),
                ln_from_hi: Some(n.from_hi.ln()),
                atan: n.x.atan(),
            },
            Map::Line => {
                // cos u = sin(distance to the nearer end)
                let c = n.from_lo.min(n.from_hi).sin();
                let s = n.x.sin();
                Point {
                    big_x: s,
                    c,
                    ln_c: c.ln(),
                    ln_jacobian: -2.0 * c.ln(),
                    ln_from_lo: None,
                    ln_from_hi: None,
                    atan: n.x,
                }
            }
            Map::RightOf(r) | Map::LeftOf(r) => {
                // x = r +- tan u, u = from_lo in (0, pi/2)
                let s = n.from_lo.sin();
                let c = n.from_hi.sin();
                let right = matches!(self, Map::RightOf(_));
                let big_x = if right { r * c + s } else { r * c - s };
                let ln_gap = s.ln() - c.ln();
                Point {
                    big_x,
                    c,
                    ln_c: c.ln(),
                    ln_jacobian: -2.0 * c.ln(),
                    ln_from_lo: right.then_some(ln_gap),
                    ln_from_hi: (!right).then_some(ln_gap),
                    atan: big_x.atan2(c),
                }
            }
        }
    }
}

/// Prepared integrand `p(x) f(x) g(x) dx/du`, evaluated in log space.
struct Integrand<'a> {
    p: &'a WeightExpr,
    map: Map,
    lo: Option<f64>,
    hi: Option<f64>,
    product: Vec<f64>,
    factors: Vec<(f64, f64)>,
    exp_poly: Vec<f64>,
    quad: f64,
    arctan: f64,
    absolute: bool,
}

impl<'a> Integrand<'a> {
    fn new(p: &'a WeightExpr, product: &Poly, interval: &Interval, absolute: bool) -> Self {
        Integrand {
            p,
            map: Map::for_interval(interval),
            lo: interval.lo.finite().map(to_f64),
            hi: interval.hi.finite().map(to_f64),
            product: product.to_f64_coeffs(),
            factors: p
                .power_factors
                .iter()
                .map(|f| (to_f64(&f.root), to_f64(&f.exponent)))
                .collect(),
            exp_poly: p.exp_poly.to_f64_coeffs(),
            quad: p.quad_exponent.as_ref().map_or(0.0, to_f64),
            arctan: to_f64(&p.arctan_coeff),
            absolute,
        }
    }

    fn eval(&self, node: Node) -> f64 {
        let pt = self.map.point(node);
        let d = self.product.len().saturating_sub(1);
        let h = homogeneous(&self.product, pt.big_x, pt.c);
        if h == 0.0 {
            return 0.0;
        }
        let mut log = h.abs().ln() - d as f64 * pt.ln_c + pt.ln_jacobian;
        log += to_f64(&self.p.constant).ln();
        for &(root, e) in &self.factors {
            let ln_gap = match (pt.ln_from_lo, pt.ln_from_hi) {
                (Some(gap), _) if Some(root) == self.lo => gap,
                (_, Some(gap)) if Some(root) == self.hi => gap,
                _ => (pt.big_x - root * pt.c).abs().ln() - pt.ln_c,
            };
            log += e * ln_gap;
        }
        if self.quad != 0.0 {
            log += self.quad * ((pt.big_x * pt.big_x + pt.c * pt.c).ln() - 2.0 * pt.ln_c);
        }
        if !self.exp_poly.is_empty() {
            let de = self.exp_poly.len() - 1;
            log += homogeneous(&self.exp_poly, pt.big_x, pt.c) / pt.c.powi(de as i32);
        }
        log += self.arctan * pt.atan;
        if log == f64::NEG_INFINITY {
            return 0.0;
        }
        let v = log.exp();
        if self.absolute || h > 0.0 {
            v
        } else {
            -v
        }
    }
}

fn numeric(
    p: &WeightExpr,
    product: &Poly,
    interval: &Interval,
    tol: f64,
    absolute: bool,
) -> Result<NumericValue> {
    let verdict = integrability_of_product(p, interval, product);
    if !verdict.integrable {
        let why = verdict
            .endpoints
            .iter()
            .filter(|e| !e.ok)
            .map(|e| format!("{}: {}", e.endpoint, e.reason))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::NonIntegrable(why));
    }
    let integrand = Integrand::new(p, product, interval, absolute);
    let (lo, hi) = integrand.map.range();
    let est = TanhSinh::new(tol).integrate(lo, hi, |n| integrand.eval(n))?;
    Ok(NumericValue {
        value: est.value,
        err_est: est.err_est,
        levels: est.levels,
    })
}

/// `<f, g>` by tanh-sinh quadrature; fails with `NonIntegrable` when `p f g`
/// is not integrable on the interval.
pub fn inner_product_numeric(
    p: &WeightExpr,
    f: &Poly,
    g: &Poly,
    interval: &Interval,
    tol: f64,
) -> Result<NumericValue> {
    numeric(p, &(f * g), interval, tol, false)
}

/// `integral of p |f g|`, the normalizer used when a diagonal entry is unavailable.
///
/// The kinks at real roots of `f g` slow tanh-sinh down, so a run that stops
/// short of `tol` still returns its last estimate with the observed error.
pub fn absolute_inner_product(
    p: &WeightExpr,
    f: &Poly,
    g: &Poly,
    interval: &Interval,
    tol: f64,
) -> Result<NumericValue> {
    match numeric(p, &(f * g), interval, tol, true) {
        Err(Error::NoConvergence {
            levels,
            estimate,
            error,
        }) => Ok(NumericValue {
            value: estimate,
            err_est: error,
            levels,
        }),
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GramValue {
    Exact(Rational),
    Float(f64),
}

impl GramValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            GramValue::Exact(r) => to_f64(r),
            GramValue::Float(v) => *v,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, GramValue::Exact(r) if r.is_zero())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Quadrature,
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GramEntry {
    pub m: usize,
    pub n: usize,
    pub value: Option<GramValue>,
    pub method: Method,
    pub integrable: bool,
    pub err_est: Option<f64>,
    pub note: Option<String>,
}

/// Routes one pair: exact reduction first, quadrature otherwise.
pub fn inner_product(
    p: &WeightExpr,
    f: &Poly,
    g: &Poly,
    interval: &Interval,
    tol: f64,
) -> Result<(GramValue, Method, Option<f64>)> {
    match inner_product_exact(p, f, g, interval) {
        Ok(v) => Ok((GramValue::Exact(v), Method::Exact, Some(0.0))),
        Err(Error::NotPolynomialReducible(_)) => {
            let v = inner_product_numeric(p, f, g, interval, tol)?;
            Ok((
                GramValue::Float(v.value),
                Method::Quadrature,
                Some(v.err_est),
            ))
        }
        Err(e) => Err(e),
    }
}

fn entry(
    p: &WeightExpr,
    interval: &Interval,
    (m, f): (usize, &Poly),
    (n, g): (usize, &Poly),
    tol: f64,
) -> Result<GramEntry> {
    match inner_product(p, f, g, interval, tol) {
        Ok((value, method, err_est)) => Ok(GramEntry {
            m,
            n,
            value: Some(value),
            method,
            integrable: true,
            err_est,
            note: None,
        }),
        Err(Error::NonIntegrable(why)) => Ok(GramEntry {
            m,
            n,
            value: None,
            method: Method::None,
            integrable: false,
            err_est: None,
            note: Some(why),
        }),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStatus {
    Orthogonal,
    NotOrthogonal,
    /// Both members share an eigenvalue, so no orthogonality is implied.
    Inconclusive,
    NonIntegrable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairVerdict {
    pub m: usize,
    pub n: usize,
    pub status: PairStatus,
    pub relative: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenfunction {
    pub degree: usize,
    pub eigenvalue: Rational,
    pub poly: Poly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrthoReport {
    pub family: Option<FamilySpec>,
    pub operator: DiffOperator,
    pub max_degree: usize,
    pub weight: WeightExpr,
    pub functions: Vec<Eigenfunction>,
    /// Upper triangle including the diagonal, row-major by degree.
    pub entries: Vec<GramEntry>,
    pub pairs: Vec<PairVerdict>,
    /// Largest relative off-diagonal magnitude over integrable pairs with distinct eigenvalues.
    pub off_diagonal_max_relative: f64,
    /// `alpha - 2` for the Romanovski family.
    pub gamma: Option<Rational>,
    /// Degrees whose eigenvalue collides with another degree up to `max_degree`.
    pub degenerate_degrees: Vec<usize>,
    pub tol: f64,
}

impl OrthoReport {
    pub fn entry(&self, m: usize, n: usize) -> Option<&GramEntry> {
        let (m, n) = if m <= n { (m, n) } else { (n, m) };
        self.entries.iter().find(|e| e.m == m && e.n == n)
    }

    pub fn pair(&self, m: usize, n: usize) -> Option<&PairVerdict> {
        let (m, n) = if m <= n { (m, n) } else { (n, m) };
        self.pairs.iter().find(|e| e.m == m && e.n == n)
    }

    pub fn to_json(&self) -> OrthoReportJson {
        OrthoReportJson {
            family: self.family.as_ref().map(FamilySpec::to_json),
            operator: self.operator.clone(),
            max_degree: self.max_degree,
            gamma: self.gamma.as_ref().map(format_rational),
            weight: self.weight.to_json(),
            eigenfunctions: self
                .functions
                .iter()
                .map(|f| EigenfunctionJson {
                    degree: f.degree,
                    eigenvalue_of_l: format_rational(&f.eigenvalue),
                    monic: f.poly.clone(),
                })
                .collect(),
            entries: self
                .entries
                .iter()
                .map(|e| GramEntryJson {
                    m: e.m,
                    n: e.n,
                    value: e.value.as_ref().map(|v| match v {
                        GramValue::Exact(r) => serde_json_value::Exact(format_rational(r)),
                        GramValue::Float(x) => serde_json_value::Float(*x),
                    }),
                    method: e.method,
                    integrable: e.integrable,
                    err_est: e.err_est,
                })
                .collect(),
            pairs: self
                .pairs
                .iter()
                .map(|p| PairJson {
                    m: p.m,
                    n: p.n,
                    status: p.status,
                    relative: p.relative,
                })
                .collect(),
            off_diagonal_max_relative: self.off_diagonal_max_relative,
            degenerate_degrees: self.degenerate_degrees.clone(),
            tol: self.tol,
        }
    }
}

pub mod serde_json_value {
    use serde::Serialize;

    /// Exact entries serialize as `"p/q"` strings, quadrature entries as numbers.
    #[derive(Clone, Debug, Serialize)]
    #[serde(untagged)]
    pub enum GramValueJson {
        Exact(String),
        Float(f64),
    }
    pub use GramValueJson::{Exact, Float};
}

#[derive(Clone, Debug, Serialize)]
pub struct GramEntryJson {
    pub m: usize,
    pub n: usize,
    pub value: Option<serde_json_value::GramValueJson>,
    pub method: Method,
    pub integrable: bool,
    pub err_est: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairJson {
    pub m: usize,
    pub n: usize,
    pub status: PairStatus,
    pub relative: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenfunctionJson {
    pub degree: usize,
    #[serde(rename = "eigenvalue_of_L")]
    pub eigenvalue_of_l: String,
    pub monic: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthoReportJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpecJson>,
    pub operator: DiffOperator,
    pub max_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    pub weight: WeightJson,
    pub eigenfunctions: Vec<EigenfunctionJson>,
    pub entries: Vec<GramEntryJson>,
    pub pairs: Vec<PairJson>,
    pub off_diagonal_max_relative: f64,
    pub degenerate_degrees: Vec<usize>,
    pub tol: f64,
}

/// Gram matrix of the monic eigenfunctions of degrees `0..=n_max`.
pub fn gram_matrix(spec: &FamilySpec, n_max: usize, tol: f64) -> Result<OrthoReport> {
    gram_matrix_from(spec, 0, n_max, tol)
}

/// Gram matrix restricted to degrees `min_degree..=n_max`.
pub fn gram_matrix_from(
    spec: &FamilySpec,
    min_degree: usize,
    n_max: usize,
    tol: f64,
) -> Result<OrthoReport> {
    let mut report = gram_matrix_for_operator(&spec.build_operator(), min_degree, n_max, tol)?;
    if matches!(
        spec.kind,
        FamilyKind::Romanovski | FamilyKind::JacobiType { eps: 1 }
    ) {
        report.gamma = Some(&spec.alpha - Rational::from_integer(2.into()));
    }
    report.family = Some(spec.clone());
    Ok(report)
}

/// Gram matrix for a second-order operator `a D^2 + b D + c` with constant `c`,
/// using the weight derived from `(a, b)`.
pub fn gram_matrix_for_operator(
    op: &DiffOperator,
    min_degree: usize,
    n_max: usize,
    tol: f64,
) -> Result<OrthoReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if op.order() != 2 || op.coeff(0).degree().unwrap_or(0) > 0 {
        return Err(Error::InvalidArgument(
            "weights need a second-order operator with constant zeroth-order coefficient".into(),
        ));
    }
    let weight = derive_weight(&op.coeff(2), &op.coeff(1))?;
    let interval = weight.interval.clone();
    let table = eigentable(op, n_max);
    let functions: Vec<Eigenfunction> = table
        .iter()
        .filter(|r| r.degree >= min_degree && r.status != EigenStatus::NoDegreeNEigenfunction)
        .filter_map(|r| {
            r.monic.as_ref().map(|m| Eigenfunction {
                degree: r.degree,
                eigenvalue: r.eigenvalue.clone(),
                poly: m.clone(),
            })
        })
        .collect();

    let mut entries = Vec::new();
    for (i, fi) in functions.iter().enumerate() {
        for fj in &functions[i..] {
            entries.push(entry(
                &weight,
                &interval,
                (fi.degree, &fi.poly),
                (fj.degree, &fj.poly),
                tol,
            )?);
        }
    }
    let diag = |d: usize| {
        entries
            .iter()
            .find(|e| e.m == d && e.n == d)
            .and_then(|e| e.value.as_ref())
            .map(GramValue::to_f64)
            .filter(|v| *v > 0.0)
    };

    let mut pairs = Vec::new();
    let mut worst = 0.0f64;
    for (i, fi) in functions.iter().enumerate() {
        for fj in &functions[i + 1..] {
            let e = entries
                .iter()
                .find(|e| e.m == fi.degree && e.n == fj.degree)
                .expect("entry computed above");
            let Some(value) = &e.value else {
                pairs.push(PairVerdict {
                    m: e.m,
                    n: e.n,
                    status: PairStatus::NonIntegrable,
                    relative: None,
                });
                continue;
            };
            let relative = if value.is_exact_zero() {
                0.0
            } else if let (Some(a), Some(b)) = (diag(fi.degree), diag(fj.degree)) {
                value.to_f64().abs() / (a * b).sqrt()
            } else {
                let norm = absolute_inner_product(&weight, &fi.poly, &fj.poly, &interval, tol)?;
                value.to_f64().abs() / norm.value
            };
            let status = if fi.eigenvalue == fj.eigenvalue {
                PairStatus::Inconclusive
            } else {
                worst = worst.max(relative);
                if relative < ORTHOGONAL_THRESHOLD {
                    PairStatus::Orthogonal
                } else {
                    PairStatus::NotOrthogonal
                }
            };
            pairs.push(PairVerdict {
                m: e.m,
                n: e.n,
                status,
                relative: Some(relative),
            });
        }
    }

    Ok(OrthoReport {
        family: None,
        operator: op.clone(),
        max_degree: n_max,
        weight,
        functions,
        entries,
        pairs,
        off_diagonal_max_relative: worst,
        gamma: None,
        degenerate_degrees: op.spectrum(n_max).degenerate_degrees(),
        tol,
    })
}

/// Finite orthogonality report for `(1 + x^2) y'' + (alpha x + beta) y'`.
pub fn finite_orthogonality_report(
    alpha: Rational,
    beta: Rational,
    n_max: usize,
    tol: f64,
) -> Result<OrthoReport> {
    gram_matrix(&FamilySpec::romanovski(alpha, beta), n_max, tol)
}

/// Largest total degree `N` with `N + gamma + 1 < 0`, if any.
pub fn romanovski_integrable_bound(gamma: &Rational) -> Option<usize> {
    // largest N with N + gamma + 1 < 0
    let limit = -gamma - Rational::one();
    if !limit.is_positive() {
        return None;
    }
    let floor = limit.floor();
    let n = if floor == limit {
        floor - Rational::one()
    } else {
        floor
    };
    n.to_integer().to_usize()
}
