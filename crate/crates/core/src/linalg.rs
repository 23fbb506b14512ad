//! Small dense exact linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::algebra::Rational;

pub type Vector = Vec<Rational>;
pub type Matrix = Vec<Vec<Rational>>;

fn columns(m: &Matrix) -> usize {
    m.first().map_or(0, Vec::len)
}

/// Gauss-Jordan reduced row echelon form. Returns the reduced matrix and its pivot columns.
#[allow(clippy::needless_range_loop)]
pub fn rref(mut m: Matrix) -> (Matrix, Vec<usize>) {
    let rows = m.len();
    let cols = columns(&m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                let delta = &f * &m[r][j];
                m[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m.clone()).1.len()
}

/// Null space from the reduced row echelon form, one vector per free column.
pub fn nullspace_rref(m: &Matrix) -> Vec<Vector> {
    let cols = columns(m);
    let (red, pivots) = rref(m.clone());
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -red[row][free].clone();
            }
            v
        })
        .collect()
}

/// Null space by forward elimination to (unreduced) row echelon form followed
/// by back substitution for each free column.
#[allow(clippy::needless_range_loop)]
pub fn nullspace_echelon(m: &Matrix) -> Vec<Vector> {
    let mut m = m.clone();
    let rows = m.len();
    let cols = columns(&m);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..rows {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[r][c];
            for j in c..cols {
                let delta = &f * &m[r][j];
                m[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate().rev() {
                let s = ((pc + 1)..cols)
                    .map(|j| &m[row][j] * &v[j])
                    .fold(Rational::zero(), |a, b| a + b);
                v[pc] = -s / &m[row][pc];
            }
            v
        })
        .collect()
}

/// Rewrites a spanning set so that leading (highest nonzero) indices are
/// distinct, each vector has a one there, and every other vector has a zero
/// there. Dependent vectors are dropped. Sorted by leading index.
pub fn degree_echelon(vectors: &[Vector]) -> Vec<Vector> {
    let Some(len) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    // Reverse the coordinates so the highest index becomes the first column.
    let rows: Matrix = vectors
        .iter()
        .map(|v| v.iter().rev().cloned().collect())
        .collect();
    let (red, pivots) = rref(rows);
    let mut out: Vec<Vector> = red
        .into_iter()
        .take(pivots.len())
        .map(|row| row.into_iter().rev().collect())
        .collect();
    debug_assert!(out.iter().all(|v| v.len() == len));
    out.reverse();
    out
}

/// Whether every vector of `a` lies in the span of `b` and vice versa.
pub fn same_span(a: &[Vector], b: &[Vector]) -> bool {
    let ra = if a.is_empty() { 0 } else { rank(&a.to_vec()) };
    let rb = if b.is_empty() { 0 } else { rank(&b.to_vec()) };
    if ra != rb {
        return false;
    }
    if ra == 0 {
        return true;
    }
    let both: Matrix = a.iter().chain(b).cloned().collect();
    rank(&both) == ra
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| a * b)
                .fold(Rational::zero(), |x, y| x + y)
        })
        .collect()
}
