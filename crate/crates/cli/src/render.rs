//! Aligned text views for `--format table`.

use std::fmt::Write;

use specpoly::algebra::format_rational;
use specpoly::eigen::EigenResult;
use specpoly::orthogonality::{GramValue, OrthoReport, PairStatus};
use specpoly::weights::{PearsonVerdict, WeightExpr};
use specpoly::{AffineNormalization, DiffOperator, Rational, Spectrum};

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let text: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(text.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    );
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn spectrum(op: &DiffOperator, spec: &Spectrum) -> String {
    let rows: Vec<Vec<String>> = spec
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| {
            vec![
                j.to_string(),
                format_rational(v),
                format_rational(&-v.clone()),
                spec.multiplicities[v].len().to_string(),
            ]
        })
        .collect();
    format!(
        "L = {}\n{}",
        op.to_pretty("x"),
        table(
            &["n", "eigenvalue_of_L", "lambda_ode", "multiplicity"],
            &rows
        )
    )
}

pub fn eigenfns(op: &DiffOperator, results: &[EigenResult]) -> String {
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|r| {
            vec![
                r.degree.to_string(),
                format_rational(&r.eigenvalue),
                format_rational(&r.lambda_ode()),
                format!("{:?}", r.status),
                r.eigenspace_dim.to_string(),
                r.monic
                    .as_ref()
                    .map_or("-".to_string(), |p| p.to_pretty("x")),
            ]
        })
        .collect();
    format!(
        "L = {}\n{}",
        op.to_pretty("x"),
        table(
            &[
                "n",
                "eigenvalue_of_L",
                "lambda_ode",
                "status",
                "dim",
                "monic"
            ],
            &rows
        )
    )
}

pub fn weight(w: &WeightExpr, pearson: &PearsonVerdict) -> String {
    let mut out = String::new();
    writeln!(out, "{}", w.formula("x")).unwrap();
    writeln!(out, "interval      {}", w.interval).unwrap();
    writeln!(
        out,
        "pearson       {} (max relative residual {:.3e})",
        if pearson.pass { "pass" } else { "FAIL" },
        pearson.max_numeric_residual
    )
    .unwrap();
    out
}

pub fn report(r: &OrthoReport) -> String {
    let mut out = String::new();
    match &r.family {
        Some(f) => writeln!(out, "family        {f}").unwrap(),
        None => writeln!(out, "L = {}", r.operator.to_pretty("x")).unwrap(),
    }
    writeln!(out, "{}", r.weight.formula("x")).unwrap();
    if let Some(g) = &r.gamma {
        writeln!(out, "gamma         {}", format_rational(g)).unwrap();
    }
    if !r.degenerate_degrees.is_empty() {
        let d: Vec<String> = r.degenerate_degrees.iter().map(usize::to_string).collect();
        writeln!(out, "degenerate    degrees {}", d.join(", ")).unwrap();
    }
    writeln!(
        out,
        "max relative off-diagonal  {:.3e}",
        r.off_diagonal_max_relative
    )
    .unwrap();
    out.push('\n');
    let rows: Vec<Vec<String>> = r
        .entries
        .iter()
        .map(|e| {
            let status = if e.m == e.n {
                "diagonal".to_string()
            } else {
                r.pair(e.m, e.n)
                    .map_or("-".to_string(), |p| status_label(p.status).to_string())
            };
            let relative = r
                .pair(e.m, e.n)
                .and_then(|p| p.relative)
                .filter(|_| e.m != e.n)
                .map_or("-".to_string(), |v| format!("{v:.3e}"));
            vec![
                e.m.to_string(),
                e.n.to_string(),
                e.value.as_ref().map_or("-".to_string(), value_text),
                format!("{:?}", e.method).to_lowercase(),
                e.err_est.map_or("-".to_string(), |v| format!("{v:.1e}")),
                relative,
                status,
            ]
        })
        .collect();
    out.push_str(&table(
        &["m", "n", "value", "method", "err_est", "relative", "status"],
        &rows,
    ));
    out
}

fn value_text(v: &GramValue) -> String {
    match v {
        GramValue::Exact(r) => format_rational(r),
        GramValue::Float(x) => format!("{x:.12e}"),
    }
}

fn status_label(s: PairStatus) -> &'static str {
    match s {
        PairStatus::Orthogonal => "orthogonal",
        PairStatus::NotOrthogonal => "not orthogonal",
        PairStatus::Inconclusive => "inconclusive (equal eigenvalues)",
        PairStatus::NonIntegrable => "non-integrable",
    }
}

pub fn normalize(op: &DiffOperator, n: &AffineNormalization, factor: &Rational) -> String {
    let mut out = String::new();
    writeln!(out, "normal form       {}", n.normal_form.label()).unwrap();
    writeln!(
        out,
        "x = s u + t       s = {}, t = {}",
        format_rational(&n.s),
        format_rational(&n.t)
    )
    .unwrap();
    writeln!(
        out,
        "a(s u + t)        {} * ({})",
        format_rational(&n.c),
        n.normal_form.label()
    )
    .unwrap();
    writeln!(out, "eigenvalue scale  {}", format_rational(factor)).unwrap();
    writeln!(out, "L = {}", op.to_pretty("u")).unwrap();
    out
}
