//! One function per subcommand, each building a [`Report`].

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use segre_core::asympt::{
    binary_asymptotics, discriminant_ratios, ln_bigint, relative_error, verify_rw_constants, AsymptoticFormula,
};
use segre_core::eddeg::{
    binary_generic_ed_degree, frobenius_ed_degree_with, generic_ed_degree, stabilization_onset_with,
    veronese_frobenius_ed_degree,
};
use segre_core::format::parse_weights;
use segre_core::hyperdet::{binary_hyperdet_degree, hyperdet_degree_with, is_dual_nondefective, sv_hyperdet_degree_with};
use segre_core::identities::{verify_identities, IdentityWitness};
use segre_core::polar::{
    chern_data_product, chern_data_projective_space_product, chern_data_smooth_hypersurface,
    delta0_product_with_hypersurface, dual_profile, stabilization_ratio_check,
};
use segre_core::{factorial, Format, Limits};

use crate::output::{Cell, Report, Row, Table};
use crate::{Command, Failure, FormulaName, Suite, TableName};

type Outcome = Result<Report, Failure>;

/// Witnesses shown per failing check.
const WITNESS_LIMIT: usize = 5;

pub fn dispatch(cmd: &Command, limits: &Limits) -> Outcome {
    match cmd {
        Command::Hyperdet { dims, omega } => hyperdet(dims, *omega, limits),
        Command::Eddeg { dims, generic, weights } => eddeg(dims, *generic, weights.as_deref(), limits),
        Command::Table { name, max } => match name {
            TableName::Table2 => table2(limits),
            TableName::Stabilization => stabilization_table(*max, limits),
            TableName::DualExample => dual_example(),
        },
        Command::Verify { suite, max } => match suite {
            Suite::Identities => verify_identity_suite(max.unwrap_or(30)),
            Suite::RwConstants => verify_rw(max.unwrap_or(10)),
            Suite::Stabilization => verify_stabilization(max.unwrap_or(7), limits),
            Suite::CrossOracle => verify_cross_oracle(max.unwrap_or(7), limits),
        },
        Command::Asympt { formula, d, points, compare, omega } => {
            asympt(*formula, *d, points.as_deref(), *compare, *omega, limits)
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn parse_format(dims: &str) -> Result<Format, Failure> {
    dims.parse::<Format>().map_err(Failure::from)
}

/// `10`, `5..20` (inclusive) or `5,10,20`.
pub fn parse_grid(s: &str) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::usage(format!("bad grid {s:?}; expected n, a..b or a,b,c"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(num).collect()
}

fn hyperdet(dims: &str, omega: Option<u32>, limits: &Limits) -> Outcome {
    let f = parse_format(dims)?;
    let (degree, elapsed) = timed(|| match omega {
        Some(w) => sv_hyperdet_degree_with(&f, w, limits),
        None => hyperdet_degree_with(&f, limits),
    });
    let degree = degree?;
    let mut table = Table::new("hyperdet", &["dims", "omega"], &["degree"]);
    table.push(Row::timed(vec![f.to_string().into(), omega.into(), degree.into()], elapsed));
    let mut report = Report::new(table);
    if omega.is_none() && !is_dual_nondefective(&f) {
        report.notes.push(format!(
            "dual defective: some n_j exceeds the sum of the others in ({f}), so there is no hyperdeterminant"
        ));
    }
    Ok(report)
}

fn eddeg(dims: &str, generic: bool, weights: Option<&str>, limits: &Limits) -> Outcome {
    let f = match weights {
        Some(w) => Format::with_weights(parse_format(dims)?.dims().to_vec(), parse_weights(w)?)?,
        None => parse_format(dims)?,
    };
    let (degree, elapsed) = timed(|| {
        if generic {
            generic_ed_degree(&f)
        } else if f.has_unit_weights() {
            frobenius_ed_degree_with(&f, limits)
        } else if f.factors() == 1 {
            veronese_frobenius_ed_degree(f.dims()[0], f.weights()[0])
        } else {
            Err(segre_core::Error::InvalidArgument(
                "Frobenius ED degree with weights is available for a single Veronese factor only; use --generic".into(),
            ))
        }
    });
    let weights_text = f.weights().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    let metric = if generic { "generic" } else { "frobenius" };
    let mut table = Table::new("eddeg", &["dims", "weights", "metric"], &["degree"]);
    table.push(Row::timed(vec![f.to_string().into(), weights_text.into(), metric.into(), degree?.into()], elapsed));
    Ok(Report::new(table))
}

const TABLE2_BASES: [[u32; 2]; 4] = [[1, 1], [1, 2], [2, 2], [2, 3]];
const TABLE2_COLUMNS: u32 = 6;

fn variety_label(dims: &[u32]) -> String {
    dims.iter().map(|n| format!("P{n}")).collect::<Vec<_>>().join("x")
}

fn table2(limits: &Limits) -> Outcome {
    let cells: Vec<(usize, u32)> =
        (0..TABLE2_BASES.len()).flat_map(|r| (0..TABLE2_COLUMNS).map(move |m| (r, m))).collect();
    let values = cells
        .par_iter()
        .map(|&(r, m)| {
            let f = Format::new(TABLE2_BASES[r].to_vec())?.extended(m)?;
            let (v, t) = timed(|| frobenius_ed_degree_with(&f, limits));
            Ok((v?, t))
        })
        .collect::<Result<Vec<_>, segre_core::Error>>()?;
    let columns: Vec<String> = (0..TABLE2_COLUMNS).map(|m| format!("P{m}")).collect();
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new("table2", &["variety"], &column_refs);
    for (r, base) in TABLE2_BASES.iter().enumerate() {
        let row = &values[r * TABLE2_COLUMNS as usize..(r + 1) * TABLE2_COLUMNS as usize];
        let mut cells: Vec<Cell> = vec![variety_label(base).into()];
        cells.extend(row.iter().map(|(v, _)| Cell::Int(v.clone())));
        table.push(Row::timed(cells, row.iter().map(|(_, t)| *t).sum()));
    }
    Ok(Report::new(table))
}

/// Non-increasing positive dimension vectors with sum at most `max_sum`,
/// largest first.
pub fn sorted_formats(max_sum: u32) -> Vec<Vec<u32>> {
    fn go(left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        for n in (1..=left.min(cap)).rev() {
            cur.push(n);
            go(left - n, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_sum, max_sum, &mut Vec::new(), &mut out);
    out
}

/// The m-range checked past the onset.
const STABLE_SPAN: u32 = 3;

type OnsetRow = (Vec<u32>, Result<Vec<(u32, BigInt)>, segre_core::Error>, Duration);

fn onset_rows(max_sum: u32, limits: &Limits) -> Vec<OnsetRow> {
    sorted_formats(max_sum)
        .into_par_iter()
        .map(|dims| {
            let f = Format::new(dims.clone()).expect("positive dims");
            let n = f.total_dim().expect("small sum");
            let (row, t) = timed(|| stabilization_onset_with(&f, n + STABLE_SPAN, limits));
            (dims, row, t)
        })
        .collect()
}

fn stabilization_table(max_sum: u32, limits: &Limits) -> Outcome {
    let mut table =
        Table::new("stabilization", &["base"], &["stable_from", "stable_value", "degrees"]);
    let mut report_failed = false;
    let mut notes = Vec::new();
    for (dims, row, t) in onset_rows(max_sum, limits) {
        let label = dims.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        let n: u32 = dims.iter().sum();
        match row {
            Ok(row) => {
                let stable = row[n as usize].1.clone();
                let degrees = row.into_iter().map(|(_, v)| v).collect();
                table.push(Row::timed(vec![label.into(), n.into(), stable.into(), Cell::Ints(degrees)], t));
            }
            Err(e @ segre_core::Error::VerificationFailed(_)) => {
                report_failed = true;
                notes.push(e.to_string());
                table.push(Row::timed(vec![label.into(), n.into(), Cell::Empty, Cell::Empty], t));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let mut report = Report::new(table);
    report.failed = report_failed;
    report.notes = notes;
    Ok(report)
}

const DUAL_EXAMPLE_N: u32 = 5;

fn dual_example() -> Outcome {
    let x = chern_data_projective_space_product(&Format::new(vec![1, 1])?)?;
    let rows = (0..=DUAL_EXAMPLE_N)
        .into_par_iter()
        .map(|n| {
            let (pair, t) = timed(|| -> Result<_, segre_core::Error> {
                let q = chern_data_smooth_hypersurface(n, 2)?;
                let full = dual_profile(&chern_data_product(&x, &q)?).delta0().clone();
                Ok((full, delta0_product_with_hypersurface(&x, n, 2)?))
            });
            let (full, short) = pair?;
            Ok((n, full, short, t))
        })
        .collect::<Result<Vec<_>, segre_core::Error>>()?;
    let mut table = Table::new("dual-example", &["n"], &["delta0", "delta0_alpha"]);
    let mut failed = false;
    for (n, full, short, t) in &rows {
        failed |= full != short;
        table.push(Row::timed(vec![(*n).into(), full.clone().into(), short.clone().into()], *t));
    }
    let mut report = Report::new(table);
    report.plain = Some(format!("{}\n", rows.iter().map(|r| r.1.to_string()).collect::<Vec<_>>().join(",")));
    if failed {
        report.failed = true;
        report.notes.push("Chern-product and alpha paths disagree".into());
    }
    Ok(report)
}

/// One summary row per check: cases, failures, the first few witnesses.
struct Suiteboard {
    table: Table,
    notes: Vec<String>,
    failed: bool,
}

impl Suiteboard {
    fn new(command: &str) -> Self {
        Suiteboard { table: Table::new(command, &["check"], &["cases", "failures", "witnesses"]), notes: Vec::new(), failed: false }
    }

    fn add(&mut self, check: &str, cases: usize, witnesses: Vec<String>, elapsed: Duration) {
        let shown = witnesses.iter().take(WITNESS_LIMIT).cloned().collect::<Vec<_>>().join("; ");
        for w in &witnesses {
            self.notes.push(format!("{check} failed at {w}"));
        }
        self.failed |= !witnesses.is_empty();
        self.table.push(Row::timed(vec![check.into(), cases.into(), witnesses.len().into(), shown.into()], elapsed));
    }

    fn finish(self) -> Report {
        let mut report = Report::new(self.table);
        report.notes = self.notes;
        report.failed = self.failed;
        report
    }
}

fn verify_identity_suite(n_max: u32) -> Outcome {
    let mut board = Suiteboard::new("verify-identities");
    let (ids, t) = timed(|| verify_identities(n_max));
    let witnesses = ids
        .failures
        .iter()
        .map(|w| match w {
            IdentityWitness::Masterbinomial { n, m, i } => format!("masterbinomial n={n} m={m} i={i}"),
            IdentityWitness::F { n, m } => format!("f n={n} m={m}"),
            IdentityWitness::G { n, j } => format!("g n={n} j={j}"),
        })
        .collect();
    board.add("identities", ids.checked, witnesses, t);
    let (ratios, t) = timed(|| stabilization_ratio_check(n_max, n_max + 1, 5));
    let witnesses = ratios
        .failures
        .iter()
        .map(|w| format!("n={} m={} d={} i={}: {} vs {}", w.n, w.m, w.deg_d, w.i, w.lhs, w.rhs))
        .collect();
    board.add("alpha-ratio", ratios.checked, witnesses, t);
    Ok(board.finish())
}

fn verify_rw(d_max: u32) -> Outcome {
    if d_max < 3 {
        return Err(Failure::usage("rw-constants needs --max >= 3"));
    }
    let results: Vec<_> = (3..=d_max).into_par_iter().map(|d| (d, timed(|| verify_rw_constants(d)))).collect();
    let mut table = Table::new("verify-rw-constants", &["d"], &["q", "det", "L0", "status"]);
    let mut report_notes = Vec::new();
    let mut failed = false;
    for (d, (res, t)) in results {
        match res {
            Ok(c) => table.push(Row::timed(
                vec![d.into(), c.q.to_string().into(), c.det.to_string().into(), c.l0.to_string().into(), "ok".into()],
                t,
            )),
            Err(e @ segre_core::Error::VerificationFailed(_)) => {
                failed = true;
                report_notes.push(e.to_string());
                table.push(Row::timed(vec![d.into(), Cell::Empty, Cell::Empty, Cell::Empty, "FAIL".into()], t));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let mut report = Report::new(table);
    report.notes = report_notes;
    report.failed = failed;
    Ok(report)
}

/// Largest `dim X` for the `X × Q_n` sweep.
const QUADRIC_SWEEP_MAX: u32 = 5;

fn verify_stabilization(max_sum: u32, limits: &Limits) -> Outcome {
    let mut board = Suiteboard::new("verify-stabilization");
    let (rows, t) = timed(|| onset_rows(max_sum, limits));
    let mut witnesses = Vec::new();
    for (dims, row, _) in &rows {
        match row {
            Ok(_) => {}
            Err(segre_core::Error::VerificationFailed(msg)) => witnesses.push(format!("{dims:?}: {msg}")),
            Err(e) => return Err(e.clone().into()),
        }
    }
    board.add("ed-past-boundary", rows.len(), witnesses, t);

    // δ₀(X × Q_n) must not move once n ≥ dim X
    let (checks, t) = timed(|| {
        sorted_formats(max_sum.min(QUADRIC_SWEEP_MAX))
            .into_par_iter()
            .map(|dims| -> Result<Option<String>, segre_core::Error> {
                let x = chern_data_projective_space_product(&Format::new(dims.clone())?)?;
                let m = x.dim();
                let seq = (m..=m + STABLE_SPAN)
                    .map(|n| delta0_product_with_hypersurface(&x, n, 2))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(seq.windows(2).any(|w| w[0] != w[1]).then(|| format!("{dims:?}: {seq:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
    });
    let checks = checks?;
    let count = checks.len();
    board.add("dual-times-quadric", count, checks.into_iter().flatten().collect(), t);
    Ok(board.finish())
}

fn verify_cross_oracle(max_sum: u32, limits: &Limits) -> Outcome {
    let mut board = Suiteboard::new("verify-cross-oracle");
    let (checks, t) = timed(|| {
        sorted_formats(max_sum)
            .into_par_iter()
            .map(|dims| -> Result<Option<String>, segre_core::Error> {
                let f = Format::new(dims.clone())?;
                let delta0 = dual_profile(&chern_data_projective_space_product(&f)?).delta0().clone();
                let hd = hyperdet_degree_with(&f, limits)?;
                let ok = if is_dual_nondefective(&f) { delta0 == hd && !hd.is_zero() } else { delta0.is_zero() && hd.is_zero() };
                Ok((!ok).then(|| format!("{dims:?}: delta0 {delta0}, hyperdet {hd}")))
            })
            .collect::<Result<Vec<_>, _>>()
    });
    let checks = checks?;
    let count = checks.len();
    board.add("delta0-vs-hyperdet", count, checks.into_iter().flatten().collect(), t);
    Ok(board.finish())
}

fn ratio(a: &BigInt, b: &BigInt) -> f64 {
    (ln_bigint(a) - ln_bigint(b)).exp()
}

fn asympt(formula: FormulaName, d: u32, points: Option<&str>, compare: bool, omega: Option<u32>, limits: &Limits) -> Outcome {
    match formula {
        FormulaName::Binary => {
            if points.is_some() {
                return Err(Failure::usage("binary takes only d"));
            }
            binary(d, compare)
        }
        FormulaName::Discriminant => {
            if points.is_some() {
                return Err(Failure::usage("discriminant takes n and --omega"));
            }
            let omega = omega.ok_or_else(|| Failure::usage("discriminant needs --omega"))?;
            discriminant(d, omega)
        }
        _ => {
            let grid = parse_grid(points.ok_or_else(|| Failure::usage("give n or a range of n"))?)?;
            let f = match formula {
                FormulaName::Hyperdet => AsymptoticFormula::Hyperdet,
                FormulaName::Ed => AsymptoticFormula::EdFrobenius,
                FormulaName::EdShifted => AsymptoticFormula::EdFrobeniusShifted,
                _ => AsymptoticFormula::SvHyperdet {
                    omega: omega.ok_or_else(|| Failure::usage("sv-hyperdet needs --omega"))?,
                },
            };
            if omega.is_some() && !matches!(f, AsymptoticFormula::SvHyperdet { .. }) {
                return Err(Failure::usage(format!("--omega does not apply to {}", f.name())));
            }
            sweep(f, d, &grid, compare, limits)
        }
    }
}

fn exact_value(f: AsymptoticFormula, d: u32, n: u32, limits: &Limits) -> Result<BigInt, segre_core::Error> {
    let cube = Format::cube(n, d as usize)?;
    match f {
        AsymptoticFormula::Hyperdet => hyperdet_degree_with(&cube, limits),
        AsymptoticFormula::SvHyperdet { omega } => sv_hyperdet_degree_with(&cube, omega, limits),
        _ => frobenius_ed_degree_with(&cube, limits),
    }
}

fn sweep(f: AsymptoticFormula, d: u32, grid: &[u32], compare: bool, limits: &Limits) -> Outcome {
    let omega = match f {
        AsymptoticFormula::SvHyperdet { omega } => Some(omega),
        _ => None,
    };
    // estimates first so that invalid parameters fail before any exact work
    let estimates = grid.iter().map(|&n| f.ln_estimate(d, n)).collect::<Result<Vec<_>, _>>()?;
    let results: Vec<_> = grid
        .par_iter()
        .zip(&estimates)
        .map(|(&n, &ln_est)| {
            let (exact, t) = timed(|| compare.then(|| exact_value(f, d, n, limits)).transpose());
            exact.map(|e| (n, ln_est, e, t))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let params = ["formula", "d", "n", "omega"];
    let mut table = if compare {
        Table::new("asympt", &params, &["exact", "estimate", "rel_error"])
    } else {
        Table::new("asympt", &params, &["estimate"])
    };
    let mut errors = Vec::new();
    for (n, ln_est, exact, t) in results {
        let mut cells: Vec<Cell> = vec![f.name().into(), d.into(), n.into(), omega.into()];
        if let Some(exact) = exact {
            let err = relative_error(&exact, ln_est);
            errors.push(err);
            cells.extend([exact.into(), ln_est.exp().into(), err.into()]);
        } else {
            cells.push(ln_est.exp().into());
        }
        table.push(Row::timed(cells, t));
    }
    let mut report = Report::new(table);
    if errors.len() > 1 {
        let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
        report.notes.push(format!(
            "rel_error is {}strictly decreasing over the grid",
            if decreasing { "" } else { "not " }
        ));
    }
    Ok(report)
}

fn binary(d: u32, compare: bool) -> Outcome {
    let est = binary_asymptotics(d)?;
    let mut table = if compare {
        Table::new("asympt-binary", &["d", "quantity"], &["estimate", "exact", "rel_error"])
    } else {
        Table::new("asympt-binary", &["d", "quantity"], &["estimate"])
    };
    let exact = if compare {
        let h = binary_hyperdet_degree(d)?;
        let f = factorial(d as u64);
        let g = binary_generic_ed_degree(d)?;
        Some([h, f, g])
    } else {
        None
    };
    let rows: [(&str, f64); 5] = [
        ("hyperdet", est.hyperdet),
        ("ed-frobenius", est.ed_frobenius),
        ("ed-generic", est.ed_generic),
        ("hyperdet/ed-frobenius", est.hyperdet_over_frobenius()),
        ("hyperdet/ed-generic", est.hyperdet_over_generic()),
    ];
    for (i, (name, value)) in rows.into_iter().enumerate() {
        let mut cells: Vec<Cell> = vec![d.into(), name.into(), value.into()];
        if let Some([h, f, g]) = &exact {
            let (exact_cell, exact_f) = match i {
                0 => (Cell::Int(h.clone()), ln_bigint(h).exp()),
                1 => (Cell::Int(f.clone()), ln_bigint(f).exp()),
                2 => (Cell::Int(g.clone()), ln_bigint(g).exp()),
                3 => (Cell::Float(ratio(h, f)), ratio(h, f)),
                _ => (Cell::Float(ratio(h, g)), ratio(h, g)),
            };
            let err = (value / exact_f - 1.0).abs();
            cells.extend([exact_cell, err.into()]);
        }
        table.push(Row::new(cells));
    }
    Ok(Report::new(table))
}

fn discriminant(n: u32, omega: u32) -> Outcome {
    let r = discriminant_ratios(n, omega)?;
    let mut table = Table::new("asympt-discriminant", &["n", "omega", "quantity"], &["value"]);
    let rows: [(&str, Cell); 6] = [
        ("degree", r.degree.into()),
        ("ed-frobenius", r.ed_frobenius.into()),
        ("ed-generic", r.ed_generic.into()),
        ("fixed-omega-ratio", r.fixed_omega_ratio.into()),
        ("fixed-n-ratio", r.fixed_n_ratio.into()),
        ("generic-ratio", r.gen_ratio.into()),
    ];
    for (name, value) in rows {
        table.push(Row::new(vec![n.into(), omega.into(), name.into(), value]));
    }
    Ok(Report::new(table))
}
