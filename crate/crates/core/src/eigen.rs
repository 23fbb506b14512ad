//! Polynomial eigenfunctions by back substitution on the triangular operator matrix.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{format_rational, Poly, Rational};
use crate::linalg::{self, Vector};
use crate::operator::{DiffOperator, OperatorMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EigenStatus {
    /// The eigenvalue of degree `n` is not shared with any lower degree.
    UniqueMonic,
    /// The eigenspace inside `P_n` has dimension at least two and contains a degree `n` member.
    Degenerate,
    /// `mu_n` is an eigenvalue but no eigenfunction has exact degree `n`.
    NoDegreeNEigenfunction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenResult {
    pub degree: usize,
    /// Eigenvalue `mu` of `L` itself, `L v = mu v`.
    pub eigenvalue: Rational,
    pub status: EigenStatus,
    pub monic: Option<Poly>,
    pub eigenspace_dim: usize,
    pub basis: Vec<Poly>,
}

impl EigenResult {
    /// The eigenvalue in the `L y + lambda y = 0` convention.
    pub fn lambda_ode(&self) -> Rational {
        -self.eigenvalue.clone()
    }

    pub fn to_json(&self) -> EigenResultJson {
        EigenResultJson {
            degree: self.degree,
            eigenvalue_of_l: format_rational(&self.eigenvalue),
            lambda_ode_convention: format_rational(&self.lambda_ode()),
            status: self.status,
            monic: self.monic.clone(),
            eigenspace_dim: self.eigenspace_dim,
            basis: self.basis.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenResultJson {
    pub degree: usize,
    #[serde(rename = "eigenvalue_of_L")]
    pub eigenvalue_of_l: String,
    pub lambda_ode_convention: String,
    pub status: EigenStatus,
    pub monic: Option<Poly>,
    pub eigenspace_dim: usize,
    pub basis: Vec<Poly>,
}

/// Eigenfunction of degree `n` normalized to leading coefficient one.
///
/// When `mu_n` differs from every lower diagonal entry this is plain top-down
/// back substitution with `c_n = 1`. Otherwise the full eigenspace is computed
/// and the representative is the member with `c_n = 1` and all free
/// coordinates zero.
pub fn monic_eigenfunction(op: &DiffOperator, n: usize) -> EigenResult {
    let m = op.matrix(n);
    let mu = m.get(n, n).clone();
    if (0..n).all(|i| *m.get(i, i) != mu) {
        let monic = back_substitute(&m, &mu);
        return EigenResult {
            degree: n,
            eigenvalue: mu,
            status: EigenStatus::UniqueMonic,
            basis: vec![monic.clone()],
            monic: Some(monic),
            eigenspace_dim: 1,
        };
    }
    let basis = basis_from_matrix(&m, &mu);
    let top = basis.iter().find(|v| v.degree() == Some(n)).cloned();
    let status = match (&top, basis.len()) {
        (None, _) => EigenStatus::NoDegreeNEigenfunction,
        (Some(_), 1) => EigenStatus::UniqueMonic,
        (Some(_), _) => EigenStatus::Degenerate,
    };
    EigenResult {
        degree: n,
        eigenvalue: mu,
        status,
        monic: top,
        eigenspace_dim: basis.len(),
        basis,
    }
}

/// Solves `(M - mu I) c = 0` with `c_n = 1`, assuming `M[i][i] != mu` for `i < n`.
fn back_substitute(m: &OperatorMatrix, mu: &Rational) -> Poly {
    let n = m.n;
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    for i in (0..n).rev() {
        let rhs = ((i + 1)..=n)
            .map(|j| m.get(i, j) * &c[j])
            .fold(Rational::zero(), |a, b| a + b);
        c[i] = -rhs / (m.get(i, i) - mu);
    }
    Poly::new(c)
}

fn basis_from_matrix(m: &OperatorMatrix, mu: &Rational) -> Vec<Poly> {
    let raw = linalg::nullspace_echelon(&m.shifted(mu));
    linalg::degree_echelon(&raw)
        .into_iter()
        .map(Poly::new)
        .collect()
}

/// Basis of `ker(L - mu)` inside `P_n`, monic with distinct degrees, each
/// vector zero at the leading degrees of the others. Empty when `mu` is not
/// an eigenvalue on `P_n`.
pub fn eigenspace_basis(op: &DiffOperator, mu: &Rational, n: usize) -> Vec<Poly> {
    let m = op.matrix(n);
    if !m.diagonal().contains(mu) {
        return Vec::new();
    }
    basis_from_matrix(&m, mu)
}

/// Independent null space of `M - mu I` by Gauss-Jordan elimination, ignoring
/// the triangular structure. Used to cross-check [`eigenspace_basis`].
pub fn nullspace_oracle(m: &OperatorMatrix, mu: &Rational) -> Vec<Vector> {
    linalg::nullspace_rref(&m.shifted(mu))
}

/// One [`EigenResult`] per degree `0..=n_max`.
pub fn eigentable(op: &DiffOperator, n_max: usize) -> Vec<EigenResult> {
    (0..=n_max).map(|n| monic_eigenfunction(op, n)).collect()
}

/// Coefficient vector of length `n + 1`.
pub fn to_vector(p: &Poly, n: usize) -> Vector {
    (0..=n).map(|k| p.coeff(k)).collect()
}
