//! Linear differential operators `L(y) = sum_k a_k(x) y^(k)` with `deg a_k <= k`.
//!
//! Under that degree bound `L` maps every `P_n` into itself, so its matrix in
//! the monomial basis is upper triangular and the diagonal entries are the
//! eigenvalues on `P_n`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use crate::algebra::falling_factorial;
use crate::algebra::{Poly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OperatorJson", into = "OperatorJson")]
pub struct DiffOperator {
    coeffs: Vec<Poly>,
}

/// Wire form: `{"a": [[a_0 coeffs], [a_1 coeffs], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OperatorJson {
    pub a: Vec<Poly>,
}

impl TryFrom<OperatorJson> for DiffOperator {
    type Error = Error;
    fn try_from(value: OperatorJson) -> Result<Self> {
        DiffOperator::new(value.a)
    }
}

impl From<DiffOperator> for OperatorJson {
    fn from(op: DiffOperator) -> Self {
        OperatorJson { a: op.coeffs }
    }
}

impl DiffOperator {
    /// Validates `deg a_k <= k` and drops trailing zero coefficients.
    pub fn new(mut coeffs: Vec<Poly>) -> Result<Self> {
        for (k, a) in coeffs.iter().enumerate() {
            if let Some(degree) = a.degree() {
                if degree > k {
                    return Err(Error::DegreeViolation { k, degree });
                }
            }
        }
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::EmptyOperator);
        }
        Ok(DiffOperator { coeffs })
    }

    /// `a(x) D^2 + b(x) D + c(x)`.
    pub fn second_order(a: Poly, b: Poly, c: Poly) -> Result<Self> {
        DiffOperator::new(vec![c, b, a])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// `a_k`, zero when `k` exceeds the order.
    pub fn coeff(&self, k: usize) -> Poly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .fold(Poly::zero(), |acc, (k, a)| &acc + &(a * &p.derive(k)))
    }

    /// Closed-form diagonal entry: `sum_k [x^k]a_k * j(j-1)...(j-k+1)`.
    pub fn spectrum_value(&self, j: usize) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a.coeff(k) * Rational::from_integer(falling_factorial(j, k)))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    pub fn scale(&self, c: &Rational) -> Result<DiffOperator> {
        DiffOperator::new(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    #[allow(clippy::needless_range_loop)]
    pub fn matrix(&self, n: usize) -> OperatorMatrix {
        let mut entries = vec![vec![Rational::zero(); n + 1]; n + 1];
        for j in 0..=n {
            let image = self.apply(&Poly::monomial(j));
            for (i, c) in image.coeffs().iter().enumerate() {
                entries[i][j] = c.clone();
            }
        }
        OperatorMatrix { n, entries }
    }

    pub fn spectrum(&self, n: usize) -> Spectrum {
        Spectrum::from_values((0..=n).map(|j| self.spectrum_value(j)).collect())
    }

    /// Human readable form such as `(1 - x^2)*D^2 - 2*x*D`.
    pub fn to_pretty(&self, var: &str) -> String {
        let mut terms = Vec::new();
        for (k, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let d = match k {
                0 => String::new(),
                1 => "D".to_string(),
                _ => format!("D^{k}"),
            };
            let coeff = a.to_pretty(var);
            let term = if k == 0 {
                format!("({coeff})")
            } else if a.coeffs().len() == 1 && a.coeffs()[0].is_one() {
                d
            } else {
                format!("({coeff})*{d}")
            };
            terms.push(term);
        }
        terms.join(" + ")
    }
}

/// Matrix of `L` on `P_n`: `entries[i][j]` is the coefficient of `x^i` in `L(x^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub n: usize,
    pub entries: Vec<Vec<Rational>>,
}

impl OperatorMatrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![vec![Rational::zero(); n + 1]; n + 1];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Rational::one();
        }
        OperatorMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n + 1
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().take(i).all(Zero::is_zero))
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.dim())
            .map(|i| self.entries[i][i].clone())
            .collect()
    }

    /// `M - mu I` as plain rows.
    pub fn shifted(&self, mu: &Rational) -> Vec<Vec<Rational>> {
        let mut rows = self.entries.clone();
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] -= mu;
        }
        rows
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub values: Vec<Rational>,
    /// Each distinct eigenvalue mapped to the degrees attaining it, ascending.
    pub multiplicities: BTreeMap<Rational, Vec<usize>>,
}

impl Spectrum {
    pub fn from_values(values: Vec<Rational>) -> Self {
        let mut multiplicities: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for (j, v) in values.iter().enumerate() {
            multiplicities.entry(v.clone()).or_default().push(j);
        }
        Spectrum {
            values,
            multiplicities,
        }
    }

    pub fn is_distinct(&self) -> bool {
        self.multiplicities.len() == self.values.len()
    }

    /// Degrees whose eigenvalue is shared with another degree.
    pub fn degenerate_degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .multiplicities
            .values()
            .filter(|d| d.len() > 1)
            .flatten()
            .copied()
            .collect();
        out.sort_unstable();
        out
    }
}
