//! Named second-order families and the affine reduction of the leading coefficient.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{format_rational, int, rational_sqrt, Poly, Rational};
use crate::error::{Error, Result};
use crate::operator::DiffOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `eps = -1`: `(1 - x^2) y'' + (alpha x + beta) y'`; `eps = +1`: `(x^2 + 1) y'' + ...`.
    JacobiType { eps: i8 },
    /// `x y'' + (alpha x + beta) y'`.
    LaguerreType,
    /// `y'' + (alpha x + beta) y'`.
    HermiteType,
    /// `(1 + x^2) y'' + (alpha x + beta) y'` on the whole line.
    Romanovski,
    /// `t (1 - t) y'' + (1 - t) y'`, no parameters.
    ChaudhryQadir,
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::JacobiType { .. } => "jacobi",
            FamilyKind::LaguerreType => "laguerre",
            FamilyKind::HermiteType => "hermite",
            FamilyKind::Romanovski => "romanovski",
            FamilyKind::ChaudhryQadir => "chaudhry-qadir",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub alpha: Rational,
    pub beta: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilySpecJson {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<i8>,
    pub alpha: String,
    pub beta: String,
}

impl FamilySpec {
    pub fn jacobi(eps: i8, alpha: Rational, beta: Rational) -> Result<Self> {
        if eps != 1 && eps != -1 {
            return Err(Error::InvalidArgument(format!(
                "eps must be +1 or -1, got {eps}"
            )));
        }
        Ok(FamilySpec {
            kind: FamilyKind::JacobiType { eps },
            alpha,
            beta,
        })
    }

    pub fn laguerre(alpha: Rational, beta: Rational) -> Self {
        FamilySpec {
            kind: FamilyKind::LaguerreType,
            alpha,
            beta,
        }
    }

    pub fn hermite(alpha: Rational, beta: Rational) -> Self {
        FamilySpec {
            kind: FamilyKind::HermiteType,
            alpha,
            beta,
        }
    }

    pub fn romanovski(alpha: Rational, beta: Rational) -> Self {
        FamilySpec {
            kind: FamilyKind::Romanovski,
            alpha,
            beta,
        }
    }

    pub fn chaudhry_qadir() -> Self {
        FamilySpec {
            kind: FamilyKind::ChaudhryQadir,
            alpha: Rational::zero(),
            beta: Rational::zero(),
        }
    }

    /// Leading coefficient `a(x)`.
    pub fn leading(&self) -> Poly {
        match self.kind {
            FamilyKind::JacobiType { eps: -1 } => Poly::from_ints(&[1, 0, -1]),
            FamilyKind::JacobiType { .. } | FamilyKind::Romanovski => Poly::from_ints(&[1, 0, 1]),
            FamilyKind::LaguerreType => Poly::x(),
            FamilyKind::HermiteType => Poly::one(),
            FamilyKind::ChaudhryQadir => Poly::from_ints(&[0, 1, -1]),
        }
    }

    /// First-order coefficient `b(x)`.
    pub fn drift(&self) -> Poly {
        match self.kind {
            FamilyKind::ChaudhryQadir => Poly::from_ints(&[1, -1]),
            _ => Poly::new(vec![self.beta.clone(), self.alpha.clone()]),
        }
    }

    pub fn build_operator(&self) -> DiffOperator {
        DiffOperator::second_order(self.leading(), self.drift(), Poly::zero())
            .expect("family coefficients satisfy the degree bound")
    }

    pub fn to_json(&self) -> FamilySpecJson {
        FamilySpecJson {
            kind: self.kind.name(),
            eps: match self.kind {
                FamilyKind::JacobiType { eps } => Some(eps),
                _ => None,
            },
            alpha: format_rational(&self.alpha),
            beta: format_rational(&self.beta),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FamilyKind::ChaudhryQadir => f.write_str("chaudhry-qadir"),
            FamilyKind::JacobiType { eps } => write!(
                f,
                "jacobi(eps={eps}, alpha={}, beta={})",
                format_rational(&self.alpha),
                format_rational(&self.beta)
            ),
            kind => write!(
                f,
                "{}(alpha={}, beta={})",
                kind.name(),
                format_rational(&self.alpha),
                format_rational(&self.beta)
            ),
        }
    }
}

/// Classical presets by name.
///
/// The Chebyshev assignment (first kind at `alpha = -1`, second kind at
/// `alpha = -3`) and the Laguerre parameters `alpha = -1, beta = 1` come from
/// the standard differential equations of those polynomials.
pub fn classical_presets() -> BTreeMap<&'static str, FamilySpec> {
    let jac = |a: i64| FamilySpec::jacobi(-1, int(a), int(0)).expect("eps is valid");
    BTreeMap::from([
        ("legendre", jac(-2)),
        ("chebyshev1", jac(-1)),
        ("chebyshev2", jac(-3)),
        ("hermite", FamilySpec::hermite(int(-2), int(0))),
        ("laguerre", FamilySpec::laguerre(int(-1), int(1))),
        ("chaudhry-qadir", FamilySpec::chaudhry_qadir()),
    ])
}

pub fn preset(name: &str) -> Result<FamilySpec> {
    classical_presets()
        .remove(name)
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormalForm {
    #[serde(rename = "x^2-1")]
    XSquaredMinusOne,
    #[serde(rename = "x^2+1")]
    XSquaredPlusOne,
    #[serde(rename = "x^2")]
    XSquared,
    #[serde(rename = "x")]
    X,
    #[serde(rename = "1")]
    One,
}

impl NormalForm {
    pub fn poly(&self) -> Poly {
        match self {
            NormalForm::XSquaredMinusOne => Poly::from_ints(&[-1, 0, 1]),
            NormalForm::XSquaredPlusOne => Poly::from_ints(&[1, 0, 1]),
            NormalForm::XSquared => Poly::monomial(2),
            NormalForm::X => Poly::x(),
            NormalForm::One => Poly::one(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            NormalForm::XSquaredMinusOne => "x^2-1",
            NormalForm::XSquaredPlusOne => "x^2+1",
            NormalForm::XSquared => "x^2",
            NormalForm::X => "x",
            NormalForm::One => "1",
        }
    }
}

/// `a(s u + t) = c * normal_form(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineNormalization {
    pub s: Rational,
    pub t: Rational,
    pub c: Rational,
    pub normal_form: NormalForm,
}

/// Reduces a leading coefficient of degree at most two to one of the five
/// normal forms. The scale is always positive; for two real roots the smaller
/// one maps to `-1`.
///
/// `c` carries the sign of `a`, so `1 - x^2` normalizes with `c = -1`.
pub fn bochner_normalize(a: &Poly) -> Result<AffineNormalization> {
    let unsupported = |why: &str| Error::UnsupportedLeadingCoefficient(format!("{a}: {why}"));
    match a.degree() {
        None => Err(unsupported("zero polynomial")),
        Some(0) => Ok(AffineNormalization {
            s: Rational::one(),
            t: Rational::zero(),
            c: a.coeff(0),
            normal_form: NormalForm::One,
        }),
        Some(1) => Ok(AffineNormalization {
            s: Rational::one(),
            t: -a.coeff(0) / a.coeff(1),
            c: a.coeff(1),
            normal_form: NormalForm::X,
        }),
        Some(2) => {
            let (p, q, r) = (a.coeff(2), a.coeff(1), a.coeff(0));
            let center = -&q / (int(2) * &p);
            let disc = &q * &q - int(4) * &p * &r;
            // a(x) = p ((x - center)^2 - disc / (4 p^2))
            let half_width_sq = disc.abs() / (int(4) * &p * &p);
            if disc.is_zero() {
                return Ok(AffineNormalization {
                    s: Rational::one(),
                    t: center,
                    c: p,
                    normal_form: NormalForm::XSquared,
                });
            }
            let s = rational_sqrt(&half_width_sq)
                .ok_or_else(|| unsupported("irrational half-width of the root pair"))?;
            let c = &p * &s * &s;
            let normal_form = if disc.is_positive() {
                NormalForm::XSquaredMinusOne
            } else {
                NormalForm::XSquaredPlusOne
            };
            Ok(AffineNormalization {
                s,
                t: center,
                c,
                normal_form,
            })
        }
        Some(_) => Err(unsupported("degree above two")),
    }
}

/// Rewrites a second-order operator in the variable `u` with `x = s u + t`
/// and rescales by `s^2 / c`, so the leading coefficient is the normal form.
/// The eigenvalues get multiplied by the returned factor `s^2 / c`.
pub fn normalize_operator(
    op: &DiffOperator,
) -> Result<(AffineNormalization, DiffOperator, Rational)> {
    if op.order() != 2 {
        return Err(Error::InvalidArgument(format!(
            "normalization needs a second-order operator, got order {}",
            op.order()
        )));
    }
    let norm = bochner_normalize(&op.coeff(2))?;
    let factor = &norm.s * &norm.s / &norm.c;
    let mut coeffs = Vec::with_capacity(3);
    for k in 0..=2usize {
        let sub = op.coeff(k).affine_sub(&norm.s, &norm.t)?;
        // d/dx = (1/s) d/du
        let s_pow = (0..k).fold(Rational::one(), |acc, _| acc * &norm.s);
        coeffs.push(sub.scale(&(&factor / s_pow)));
    }
    let out = DiffOperator::new(coeffs)?;
    Ok((norm, out, factor))
}
