//! Exact spectral analysis of polynomial differential operators.
//!
//! Operators `L = sum a_k(x) D^k` with `deg a_k <= k` map each space `P_n` of
//! polynomials of degree at most `n` into itself. Their matrices are upper
//! triangular over the rationals, so spectra and polynomial eigenfunctions are
//! computed exactly. For second-order operators the crate derives the weight
//! solving the Pearson equation, decides integrability and boundary vanishing,
//! and measures orthogonality of eigenfunctions through exact or quadrature
//! Gram matrices.

pub mod algebra;
pub mod eigen;
pub mod error;
pub mod families;
pub mod linalg;
pub mod operator;
pub mod orthogonality;
pub mod quadrature;
pub mod weights;

pub use algebra::{Poly, Rational};
pub use eigen::{eigentable, monic_eigenfunction, EigenResult, EigenStatus};
pub use error::{Error, Result};
pub use families::{
    bochner_normalize, normalize_operator, preset, AffineNormalization, FamilyKind, FamilySpec,
    NormalForm,
};
pub use operator::{DiffOperator, OperatorMatrix, Spectrum};
pub use orthogonality::{
    finite_orthogonality_report, gram_matrix, gram_matrix_for_operator, GramEntry, GramValue,
    OrthoReport, PairStatus,
};
pub use weights::{derive_weight, Bound, Interval, WeightExpr};
