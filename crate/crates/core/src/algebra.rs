//! Exact scalars and dense univariate polynomials over the rationals.
//!
//! Every other module works on top of [`Rational`] and [`Poly`]. Rationals are
//! always kept in lowest terms with a positive denominator, so structural
//! equality is value equality and the string form is canonical.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary precision rational number, always reduced.
pub type Rational = BigRational;

/// Integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` as a reduced rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical string: `"num/den"`, or `"num"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if negative { -r } else { r });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Lossy conversion used only on the floating-point paths.
pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Serde adapter for a single rational stored as its canonical string.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// Dense polynomial with coefficients in ascending degree order.
///
/// The coefficient vector never ends in a zero; the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Poly { coeffs }
    }

    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from small integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `x - root`.
    pub fn linear_factor(root: &Rational) -> Self {
        Poly::new(vec![-root.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Rescales to leading coefficient one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Exact k-th derivative.
    pub fn derive(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= k {
            return Poly::zero();
        }
        let coeffs = (k..self.coeffs.len())
            .map(|j| &self.coeffs[j] * Rational::from_integer(falling_factorial(j, k)))
            .collect();
        Poly::new(coeffs)
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation in double precision.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// Coefficients rounded to `f64`, ascending.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// Returns `q` with `q(u) = p(s*u + t)`.
    pub fn affine_sub(&self, s: &Rational, t: &Rational) -> Result<Poly> {
        if s.is_zero() {
            return Err(Error::ZeroScale);
        }
        let inner = Poly::new(vec![t.clone(), s.clone()]);
        Ok(self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * &inner) + &Poly::constant(c.clone())
        }))
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Poly {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / int(j as i64 + 1));
        }
        Poly::new(coeffs)
    }

    /// Exact integral over `[lo, hi]`.
    pub fn definite_integral(&self, lo: &Rational, hi: &Rational) -> Result<Rational> {
        if lo > hi {
            return Err(Error::ReversedBounds {
                lo: Box::new(lo.clone()),
                hi: Box::new(hi.clone()),
            });
        }
        let anti = self.antiderivative();
        Ok(anti.eval(hi) - anti.eval(lo))
    }

    /// Synthetic division by `x - root`; fails unless `root` is a root.
    pub fn divide_linear(&self, root: &Rational) -> Result<Poly> {
        let (q, r) = self.div_rem_linear(root);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotARoot {
                root: Box::new(root.clone()),
                remainder: Box::new(r),
            })
        }
    }

    /// Quotient and remainder of division by `x - root`.
    pub fn div_rem_linear(&self, root: &Rational) -> (Poly, Rational) {
        let n = self.coeffs.len();
        if n == 0 {
            return (Poly::zero(), Rational::zero());
        }
        let mut q = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for j in (0..n).rev() {
            carry = &carry * root + &self.coeffs[j];
            if j > 0 {
                q[j - 1] = carry.clone();
            }
        }
        (Poly::new(q), carry)
    }

    /// Multiplicity of `root` as a zero of the polynomial. Zero polynomial gives `usize::MAX`.
    pub fn root_multiplicity(&self, root: &Rational) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = p.div_rem_linear(root);
            if !r.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// `self` written in the basis that makes it human readable, e.g. `x^2 - 1/3`.
    pub fn to_pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&format_rational(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", format_rational(&mag), mono));
            }
        }
        out
    }
}

/// `j (j-1) ... (j-k+1)`; zero when `k > j`, one when `k = 0`.
pub fn falling_factorial(j: usize, k: usize) -> BigInt {
    if k > j {
        return BigInt::zero();
    }
    ((j - k + 1)..=j).fold(BigInt::one(), |acc, f| acc * BigInt::from(f))
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.to_pretty("x"))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty("x"))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        Ok(Poly::new(coeffs))
    }
}
