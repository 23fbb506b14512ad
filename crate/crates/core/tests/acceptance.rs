//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every line is printed on a normal
//! `cargo test` run. Each criterion must hold and finish inside its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use specpoly::algebra::{int, rat, to_f64, Poly, Rational};
use specpoly::eigen::{
    eigenspace_basis, eigentable, monic_eigenfunction, nullspace_oracle, to_vector, EigenStatus,
};
use specpoly::families::classical_presets;
use specpoly::linalg;
use specpoly::orthogonality::{
    finite_orthogonality_report, gram_matrix, gram_matrix_from, inner_product_exact,
    inner_product_numeric, GramValue, Method, PairStatus, DEFAULT_TOL,
};
use specpoly::weights::{derive_weight, pearson_check, PEARSON_TOL};
use specpoly::{preset, DiffOperator, FamilySpec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

const SEED: u64 = 20_261_019;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_rational(rng: &mut impl Rng, span: i64, max_den: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

fn random_poly(rng: &mut impl Rng, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    Poly::new((0..=d).map(|_| random_rational(rng, 6, 4)).collect())
}

fn c1_chaudhry_qadir_spectrum() -> Outcome {
    let op = preset("chaudhry-qadir")
        .map_err(|e| e.to_string())?
        .build_operator();
    let spec = op.spectrum(10);
    let expected: Vec<Rational> = (0..=10i64).map(|n| int(-n * n)).collect();
    ensure(spec.values == expected, || format!("got {:?}", spec.values))?;
    Ok("mu_n = -n^2 for n = 0..10".into())
}

fn c2_jacobi_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..20 {
        let (alpha, beta) = (
            random_rational(&mut rng, 20, 7),
            random_rational(&mut rng, 20, 7),
        );
        let op = FamilySpec::jacobi(-1, alpha.clone(), beta.clone())
            .unwrap()
            .build_operator();
        let spec = op.spectrum(10);
        for (j, v) in spec.values.iter().enumerate() {
            let n = Rational::from_integer((j as i64).into());
            let formula = -(&n * (&n - int(1))) + &n * &alpha;
            ensure(*v == formula, || {
                format!("alpha={alpha} beta={beta} n={j}: {v} != {formula}")
            })?;
        }
    }
    Ok("20 random (alpha, beta), n <= 10".into())
}

fn c3_degeneracy_sweep() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 2..=6usize {
        for k in 1..n {
            cases += 1;
            let alpha = -Rational::from_integer(((n + k - 1) as i64).into());
            let op = FamilySpec::jacobi(1, alpha.clone(), int(0))
                .unwrap()
                .build_operator();
            let nn = Rational::from_integer((n as i64).into());
            let mu = &nn * (&nn - int(1)) + &nn * &alpha;
            let back_sub = monic_eigenfunction(&op, n);
            ensure(back_sub.eigenvalue == mu, || format!("n={n}: mu mismatch"))?;
            let oracle = nullspace_oracle(&op.matrix(n), &mu).len();
            if back_sub.eigenspace_dim != 2 || oracle != 2 {
                failures.push(format!(
                    "(n={n},k={k}): dim {}/{}",
                    back_sub.eigenspace_dim, oracle
                ));
            }
        }
    }
    ensure(failures.is_empty(), || {
        format!(
            "{} of {cases} cases not 2-dimensional: {}",
            failures.len(),
            failures.join(", ")
        )
    })?;
    Ok(format!("{cases} cases, all 2-dimensional by both routes"))
}

fn random_operator(rng: &mut impl Rng) -> DiffOperator {
    loop {
        let order = rng.gen_range(1..=3usize);
        let coeffs = (0..=order)
            .map(|k| {
                // small integers make collisions on the diagonal likely
                Poly::new((0..=k).map(|_| random_rational(rng, 3, 2)).collect())
            })
            .collect();
        if let Ok(op) = DiffOperator::new(coeffs) {
            return op;
        }
    }
}

fn c4_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut checked = 0;
    let mut degenerate = 0;
    for _ in 0..50 {
        let op = random_operator(&mut rng);
        let n = rng.gen_range(0..=8usize);
        let m = op.matrix(n);
        let mut diagonal = m.diagonal();
        diagonal.dedup();
        diagonal.push(int(1000));
        for mu in &diagonal {
            let ours: Vec<_> = eigenspace_basis(&op, mu, n)
                .iter()
                .map(|p| to_vector(p, n))
                .collect();
            let theirs = nullspace_oracle(&m, mu);
            ensure(linalg::same_span(&ours, &theirs), || {
                format!("span mismatch for {op:?} n={n} mu={mu}")
            })?;
            checked += 1;
            if ours.len() > 1 {
                degenerate += 1;
            }
        }
    }
    Ok(format!(
        "50 operators, {checked} eigenvalues ({degenerate} multi-dimensional)"
    ))
}

fn c5_legendre_exact() -> Outcome {
    let r = gram_matrix(&preset("legendre").unwrap(), 8, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let off: Vec<_> = r.entries.iter().filter(|e| e.m != e.n).collect();
    ensure(off.len() == 36, || {
        format!("{} off-diagonal entries", off.len())
    })?;
    for e in off {
        ensure(
            e.method == Method::Exact && e.value.as_ref().is_some_and(GramValue::is_exact_zero),
            || {
                format!(
                    "entry ({}, {}) = {:?} via {:?}",
                    e.m, e.n, e.value, e.method
                )
            },
        )?;
    }
    Ok("36 off-diagonal entries exactly 0".into())
}

fn c6_chaudhry_qadir_exact() -> Outcome {
    let spec = preset("chaudhry-qadir").unwrap();
    let table = eigentable(&spec.build_operator(), 8);
    for r in &table[1..] {
        let p = r.monic.as_ref().ok_or("missing eigenfunction")?;
        ensure(p.eval(&int(1)).is_zero(), || {
            format!("degree {} does not vanish at t=1", r.degree)
        })?;
    }
    let r = gram_matrix_from(&spec, 1, 8, DEFAULT_TOL).map_err(|e| e.to_string())?;
    let off: Vec<_> = r.entries.iter().filter(|e| e.m != e.n).collect();
    ensure(off.len() == 28, || {
        format!("{} off-diagonal entries", off.len())
    })?;
    for e in off {
        ensure(
            e.method == Method::Exact && e.value.as_ref().is_some_and(GramValue::is_exact_zero),
            || {
                format!(
                    "entry ({}, {}) = {:?} via {:?}",
                    e.m, e.n, e.value, e.method
                )
            },
        )?;
    }
    Ok("degrees 1..8 vanish at t=1; 28 off-diagonal entries exactly 0".into())
}

fn c7_romanovski_finite() -> Outcome {
    let r = finite_orthogonality_report(rat(-13, 2), int(1), 7, DEFAULT_TOL)
        .map_err(|e| e.to_string())?;
    ensure(r.gamma == Some(rat(-17, 2)), || {
        format!("gamma {:?}", r.gamma)
    })?;
    let (mut low, mut high, mut worst) = (0, 0, 0.0f64);
    for p in &r.pairs {
        if p.m + p.n <= 7 {
            let rel = p
                .relative
                .ok_or_else(|| format!("({}, {}) has no value", p.m, p.n))?;
            ensure(p.status == PairStatus::Orthogonal && rel < 1e-8, || {
                format!("({}, {}) relative {rel:e} status {:?}", p.m, p.n, p.status)
            })?;
            worst = worst.max(rel);
            low += 1;
        } else {
            ensure(p.status == PairStatus::NonIntegrable, || {
                format!("({}, {}) not flagged", p.m, p.n)
            })?;
            high += 1;
        }
    }
    Ok(format!(
        "{low} pairs with m+n<=7 (max relative {worst:.1e}), {high} pairs with m+n>=8 flagged"
    ))
}

fn c8_pearson() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut specs: Vec<FamilySpec> = classical_presets().into_values().collect();
    for i in 0..20 {
        let (a, b) = (
            random_rational(&mut rng, 12, 5),
            random_rational(&mut rng, 12, 5),
        );
        specs.push(match i % 5 {
            0 => FamilySpec::jacobi(-1, a, b).unwrap(),
            1 => FamilySpec::jacobi(1, a, b).unwrap(),
            2 => FamilySpec::laguerre(a, b),
            3 => FamilySpec::hermite(a, b),
            _ => FamilySpec::romanovski(a, b),
        });
    }
    let mut worst = 0.0f64;
    for s in &specs {
        let (a, b) = (s.leading(), s.drift());
        let w = derive_weight(&a, &b).map_err(|e| format!("{s}: {e}"))?;
        let v = pearson_check(&w, &a, &b);
        ensure(v.pass && v.max_numeric_residual < PEARSON_TOL, || {
            format!("{s}: {v:?}")
        })?;
        worst = worst.max(v.max_numeric_residual);
    }
    Ok(format!("{} weights, max residual {worst:.1e}", specs.len()))
}

fn c9_self_adjoint() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let spec = FamilySpec::jacobi(-1, int(-2), int(0)).unwrap();
    let op = spec.build_operator();
    let w = derive_weight(&spec.leading(), &spec.drift()).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (f, g) = (random_poly(&mut rng, 5), random_poly(&mut rng, 5));
        let (lf, lg) = (op.apply(&f), op.apply(&g));
        let exact_l = inner_product_exact(&w, &lf, &g, &w.interval).map_err(|e| e.to_string())?;
        let exact_r = inner_product_exact(&w, &f, &lg, &w.interval).map_err(|e| e.to_string())?;
        ensure(exact_l == exact_r, || {
            format!("exact mismatch for f={f:?} g={g:?}")
        })?;
        let left = inner_product_numeric(&w, &lf, &g, &w.interval, DEFAULT_TOL)
            .map_err(|e| e.to_string())?;
        let right = inner_product_numeric(&w, &f, &lg, &w.interval, DEFAULT_TOL)
            .map_err(|e| e.to_string())?;
        let gap = (left.value - right.value).abs() / (1.0 + left.value.abs());
        ensure(gap < 1e-8, || format!("gap {gap:e} for f={f:?} g={g:?}"))?;
        ensure(
            (left.value - to_f64(&exact_l)).abs() < 1e-8 * (1.0 + left.value.abs()),
            || format!("quadrature {} vs exact {exact_l}", left.value),
        )?;
        worst = worst.max(gap);
    }
    Ok(format!("100 random pairs, max relative gap {worst:.1e}"))
}

fn c10_residuals() -> Outcome {
    let mut count = 0;
    for (name, spec) in classical_presets() {
        let op = spec.build_operator();
        for r in eigentable(&op, 10) {
            if r.status != EigenStatus::UniqueMonic {
                continue;
            }
            let v = r.monic.as_ref().ok_or("UniqueMonic without a polynomial")?;
            let residual = &op.apply(v) - &v.scale(&r.eigenvalue);
            ensure(residual.is_zero(), || format!("{name} degree {}", r.degree))?;
            count += 1;
        }
    }
    Ok(format!("{count} eigenfunctions with zero residual"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "Chaudhry-Qadir spectrum on P_10",
            c1_chaudhry_qadir_spectrum,
            1_000,
        ),
        ("Jacobi eigenvalue formula", c2_jacobi_formula, 1_000),
        ("degeneracy sweep", c3_degeneracy_sweep, 2_000),
        (
            "eigenspace vs null-space oracle",
            c4_oracle_equivalence,
            10_000,
        ),
        ("exact Legendre orthogonality", c5_legendre_exact, 1_000),
        (
            "exact Chaudhry-Qadir orthogonality",
            c6_chaudhry_qadir_exact,
            1_000,
        ),
        (
            "Romanovski finite orthogonality",
            c7_romanovski_finite,
            30_000,
        ),
        ("Pearson identity", c8_pearson, 2_000),
        ("self-adjointness", c9_self_adjoint, 10_000),
        ("eigenfunction residuals", c10_residuals, 1_000),
    ];
    let mut failed = 0;
    for (i, (name, run, budget_ms)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let budget = Duration::from_millis(*budget_ms);
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over time budget")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {name}: {detail} ({:.3}s / {:.0}s)",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
