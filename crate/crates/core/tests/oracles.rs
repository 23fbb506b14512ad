//! Preset eigenfunctions against monic three-term recurrences, and eigenspace
//! structure against an independent null-space computation.

use num_traits::Zero;
use specpoly::algebra::{int, rat, Poly, Rational};
use specpoly::eigen::{eigenspace_basis, eigentable, nullspace_oracle, to_vector, EigenStatus};
use specpoly::linalg;
use specpoly::{preset, FamilySpec};

/// `p_{n+1} = (x - b_n) p_n - c_n p_{n-1}` starting from `p_0 = 1`.
fn recurrence(
    n_max: usize,
    b: impl Fn(usize) -> Rational,
    c: impl Fn(usize) -> Rational,
) -> Vec<Poly> {
    let mut out = vec![Poly::one()];
    let mut prev = Poly::zero();
    for n in 0..n_max {
        let cur = out[n].clone();
        let shifted = &cur * &Poly::new(vec![-b(n), int(1)]);
        let next = &shifted - &prev.scale(&c(n));
        prev = cur;
        out.push(next);
    }
    out
}

fn monic_table(name: &str, n_max: usize) -> Vec<Poly> {
    let spec = preset(name).unwrap();
    eigentable(&spec.build_operator(), n_max)
        .into_iter()
        .map(|r| {
            assert_eq!(
                r.status,
                EigenStatus::UniqueMonic,
                "{name} degree {}",
                r.degree
            );
            r.monic.unwrap()
        })
        .collect()
}

fn n(k: usize) -> Rational {
    Rational::from_integer((k as i64).into())
}

#[test]
fn hermite_matches_recurrence() {
    let oracle = recurrence(8, |_| int(0), |k| n(k) / int(2));
    assert_eq!(monic_table("hermite", 8), oracle);
}

#[test]
fn laguerre_matches_recurrence() {
    let oracle = recurrence(8, |k| n(2 * k + 1), |k| n(k * k));
    assert_eq!(monic_table("laguerre", 8), oracle);
}

#[test]
fn legendre_matches_recurrence() {
    let oracle = recurrence(
        8,
        |_| int(0),
        |k| {
            if k == 0 {
                int(0)
            } else {
                n(k * k) / (n(4 * k * k) - int(1))
            }
        },
    );
    assert_eq!(monic_table("legendre", 8), oracle);
}

#[test]
fn chebyshev_kinds_match_recurrences() {
    let first = recurrence(
        8,
        |_| int(0),
        |k| match k {
            0 => int(0),
            1 => rat(1, 2),
            _ => rat(1, 4),
        },
    );
    let second = recurrence(8, |_| int(0), |k| if k == 0 { int(0) } else { rat(1, 4) });
    assert_eq!(monic_table("chebyshev1", 8), first);
    assert_eq!(monic_table("chebyshev2", 8), second);
    assert_eq!(first[2], Poly::new(vec![rat(-1, 2), int(0), int(1)]));
}

#[test]
fn chaudhry_qadir_eigenfunctions_vanish_at_one() {
    let table = monic_table("chaudhry-qadir", 10);
    for p in &table[1..] {
        assert!(p.eval(&int(1)).is_zero());
        let q = p.divide_linear(&int(1)).unwrap();
        assert_eq!(&q * &Poly::from_ints(&[-1, 1]), *p);
    }
}

#[test]
fn degenerate_romanovski_structure() {
    // eps = +1, beta = 0, alpha = -(n + k - 1): mu_n = mu_k, and the
    // eigenspace inside P_n is two-dimensional exactly when n - k is odd
    for top in 2..=6usize {
        for k in 1..top {
            let alpha = -n(top + k - 1);
            let op = FamilySpec::jacobi(1, alpha.clone(), int(0))
                .unwrap()
                .build_operator();
            let m = op.matrix(top);
            let mu = m.get(top, top).clone();
            assert_eq!(mu, m.get(k, k).clone());
            let basis = eigenspace_basis(&op, &mu, top);
            let oracle = nullspace_oracle(&m, &mu);
            let ours: Vec<_> = basis.iter().map(|p| to_vector(p, top)).collect();
            assert!(linalg::same_span(&ours, &oracle));
            let expected = if (top - k) % 2 == 1 { 2 } else { 1 };
            assert_eq!(basis.len(), expected, "n={top} k={k}");
            let algebraic = m.diagonal().iter().filter(|d| **d == mu).count();
            assert_eq!(algebraic, 2, "n={top} k={k}");
        }
    }
}
