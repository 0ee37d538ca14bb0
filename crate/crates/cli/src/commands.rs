//! The four subcommands.

use qkspin::algebra::{operator_lemmas_report, primitive_dim};
use qkspin::bianchi::{bianchi_check, BianchiSystem};
use qkspin::curvature::{curvature_space_check, injectivity_report};
use qkspin::linalg::Matrix;
use qkspin::model::{extraction_check, model_symmetry_check, ricci_check, sym4_triviality_check};
use qkspin::report::Check;
use qkspin::spinor::{adjointness_check, clifford_relation_check, dimension_check, kraines_check, positivity_check, rank_s};
use qkspin::weitzenboeck::{
    estimate_bound, recover_w, surviving_columns, w_full, we_closed, weitzenboeck_report, wh_closed, COLUMN_LABELS,
    ROW_LABELS,
};
use qkspin::Rational;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{Report, Table};

const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Error)]
pub enum UsageError {
    #[error("n = {n} is out of range for {what} (allowed {min}..={max})")]
    N { n: usize, what: &'static str, min: usize, max: usize },
    #[error("r = {r} must satisfy r <= n = {n}")]
    R { r: usize, n: usize },
    #[error("kappa must be positive, got {0}")]
    Kappa(Rational),
    #[error("cannot parse kappa '{0}' as an integer or p/q")]
    KappaText(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Clifford,
    Lemmas,
    Curvature,
    Bianchi,
    Weitzenboeck,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Lemmas => "lemmas",
            Suite::Curvature => "curvature",
            Suite::Bianchi => "bianchi",
            Suite::Weitzenboeck => "weitzenboeck",
            Suite::All => "all",
        }
    }
}

fn check_n(n: usize, what: &'static str, min: usize, max: usize) -> Result<(), UsageError> {
    if (min..=max).contains(&n) {
        Ok(())
    } else {
        Err(UsageError::N { n, what, min, max })
    }
}

fn check_r(n: usize, r: usize) -> Result<(), UsageError> {
    if r <= n {
        Ok(())
    } else {
        Err(UsageError::R { r, n })
    }
}

pub fn parse_kappa(s: &str) -> Result<Rational, UsageError> {
    let k: Rational = s.parse().map_err(|_| UsageError::KappaText(s.to_string()))?;
    if k.is_positive() {
        Ok(k)
    } else {
        Err(UsageError::Kappa(k))
    }
}

pub fn dims(n: usize) -> Result<Report, UsageError> {
    check_n(n, "dims", 1, 6)?;
    let mut rep = Report::new("dims", json!({ "n": n }));
    let ranks: Vec<i64> = (0..=n).map(|r| rank_s(n, r)).collect();
    let prim: Vec<i64> = (0..=n).map(|r| primitive_dim(n, n - r)).collect();
    let total: i64 = ranks.iter().sum();
    rep.tables.push(Table {
        title: format!("spinor summands S_r = Sym^r H ⊗ Λ^(n-r)∘E, n={n}"),
        columns: vec!["dim Sym^r H".into(), "dim Λ∘".into(), "rank S_r".into()],
        rows: (0..=n).map(|r| (format!("r={r}"), vec![(r + 1).to_string(), prim[r].to_string(), ranks[r].to_string()])).collect(),
    });
    rep.notes.push(format!("total = {total} = 2^{}", 2 * n));
    if n <= 4 {
        rep.add_checks(&dimension_check(n));
    } else {
        rep.notes.push("constructed dimensions are checked for n <= 4 only".into());
    }
    rep.add_checks(&[Check::from_bool(format!("total = 2^(2n) n={n}"), total == 1 << (2 * n), || total.to_string())]);
    rep.set("ranks", json!(ranks));
    rep.set("primitive_dims", json!(prim));
    rep.set("total", json!(total));
    Ok(rep)
}

fn suite_checks(n: usize, suite: Suite, seed: u64, rep: &mut Report) -> Vec<Check> {
    match suite {
        Suite::Clifford => {
            let mut c = clifford_relation_check(n);
            c.extend(dimension_check(n));
            c.extend(kraines_check(n));
            c.extend(adjointness_check(n));
            c.push(positivity_check(n));
            c
        }
        Suite::Lemmas => operator_lemmas_report(n),
        Suite::Curvature => {
            let mut c: Vec<Check> = (2..=4).flat_map(curvature_space_check).collect();
            c.extend([2, 4].into_iter().flat_map(injectivity_report));
            c.extend(ricci_check(n, seed..seed + 20));
            c.extend(model_symmetry_check(n, seed));
            c.extend(extraction_check(n, seed));
            c.extend(sym4_triviality_check(n, seed..seed + 4));
            c
        }
        Suite::Bianchi => {
            if let Ok(sys) = BianchiSystem::new(n) {
                let s = sys.summary();
                rep.notes.push(format!("Bianchi solution dim {} (ambient {})", s.solution_dim, s.ambient_dim));
                rep.set("bianchi_solution_dim", json!(s.solution_dim));
            }
            bianchi_check(n)
        }
        Suite::Weitzenboeck => weitzenboeck_report(n),
        Suite::All => unreachable!(),
    }
}

pub fn verify(n: usize, suite: Suite, seed: u64) -> Result<Report, UsageError> {
    check_n(n, "verify", 1, 4)?;
    let suites: Vec<Suite> = match suite {
        Suite::All => {
            let mut s = vec![Suite::Clifford, Suite::Lemmas, Suite::Curvature, Suite::Weitzenboeck];
            if n <= 2 {
                s.push(Suite::Bianchi);
            }
            s
        }
        Suite::Bianchi => {
            check_n(n, "the bianchi suite", 1, 2)?;
            vec![Suite::Bianchi]
        }
        Suite::Curvature => {
            check_n(n, "the curvature suite", 1, 3)?;
            vec![Suite::Curvature]
        }
        Suite::Weitzenboeck => {
            check_n(n, "the weitzenboeck suite", 1, 3)?;
            vec![Suite::Weitzenboeck]
        }
        s => vec![s],
    };
    let mut rep = Report::new("verify", json!({ "n": n, "suite": suite.name(), "seed": seed }));
    let results: Vec<(Vec<Check>, Report)> = suites
        .par_iter()
        .map(|&s| {
            let mut side = Report::new("", Value::Null);
            let c = suite_checks(n, s, seed, &mut side);
            (c, side)
        })
        .collect();
    for (c, side) in results {
        rep.add_checks(&c);
        rep.notes.extend(side.notes);
        if let Value::Object(m) = side.values {
            for (k, v) in m {
                rep.set(&k, v);
            }
        }
    }
    Ok(rep)
}

fn text_rows(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(Rational::canonical).collect()).collect()
}

fn display_rows(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn weitzenboeck(n: usize, r: usize, oracle: bool) -> Result<Report, UsageError> {
    check_n(n, "weitzenboeck", 1, if oracle { 3 } else { 1000 })?;
    check_r(n, r)?;
    let mut rep = Report::new("weitzenboeck", json!({ "n": n, "r": r, "oracle": oracle }));
    let wh = wh_closed(r);
    let we = we_closed(n, r);
    let w = w_full(n, r);
    rep.tables.push(Table {
        title: "W_H".into(),
        columns: vec!["−+".into(), "+−".into()],
        rows: ["ℂ", "Sym²H"].iter().map(|s| s.to_string()).zip(display_rows(&wh)).collect(),
    });
    rep.tables.push(Table {
        title: "W_E".into(),
        columns: vec!["−+".into(), "+−".into(), "K".into()],
        rows: ["ℂ", "Sym²E", "Λ²∘E"].iter().map(|s| s.to_string()).zip(display_rows(&we)).collect(),
    });
    rep.tables.push(Table {
        title: format!("W = W_E ⊗ W_H, n={n} r={r}"),
        columns: COLUMN_LABELS.iter().map(|s| s.to_string()).collect(),
        rows: ROW_LABELS.iter().map(|s| s.to_string()).zip(display_rows(&w.entries)).collect(),
    });
    rep.set("wh", json!(text_rows(&wh)));
    rep.set("we", json!(text_rows(&we)));
    rep.set("w", json!({ "rows": ROW_LABELS, "columns": COLUMN_LABELS, "entries": w.to_text() }));
    let degenerate = r == 0 || r == n;
    if degenerate {
        let live = surviving_columns(n, r);
        let notice = format!(
            "degenerate grade r={r}: only the surviving columns {:?} are compared; the other entries are formal",
            live.iter().map(|j| COLUMN_LABELS[*j]).collect::<Vec<_>>()
        );
        rep.notes.push(notice.clone());
        rep.set("notice", json!(notice));
    }
    if oracle {
        let check = match recover_w(n, r) {
            Ok(rec) => {
                let mismatch = rec.first_mismatch(&w.entries);
                rep.notes.push(format!("closed form = oracle: {}", mismatch.is_none()));
                rep.set("oracle_rank", json!(rec.rank));
                Check::from_witness(
                    format!("closed form = oracle n={n} r={r}"),
                    mismatch.map(|(i, j, a, b)| format!("entry ({},{}): oracle {a}, closed {b}", i + 1, j + 1)),
                )
            }
            Err(e) => {
                rep.notes.push("closed form = oracle: false".into());
                Check::fail(format!("closed form = oracle n={n} r={r}"), e.to_string())
            }
        };
        rep.set("closed_form_equals_oracle", json!(check.passed));
        rep.add_checks(&[check]);
    }
    Ok(rep)
}

pub fn bound(n: usize, r: usize, kappa: &Rational) -> Result<Report, UsageError> {
    check_n(n, "bound", 2, 1000)?;
    check_r(n, r)?;
    if !kappa.is_positive() {
        return Err(UsageError::Kappa(kappa.clone()));
    }
    let value = estimate_bound(n, r, kappa).map_err(|_| UsageError::Kappa(kappa.clone()))?;
    let coefficient = Rational::new((n + r + 3) as i64, (n + 2) as i64);
    let mut rep = Report::new("bound", json!({ "n": n, "r": r, "kappa": kappa.to_string() }));
    rep.notes.push(format!("λ² ≥ ({coefficient})·κ/4 = {value} ≈ {}", value.to_decimal(DECIMAL_DIGITS)));
    rep.set("coefficient", json!(coefficient.to_string()));
    rep.set("exact", json!(value.to_string()));
    rep.set("decimal", json!(value.to_decimal(DECIMAL_DIGITS)));
    Ok(rep)
}
