//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::displayed_w;
use qkspin::algebra::operator_lemmas_report;
use qkspin::bianchi::{bianchi_check, BianchiSystem};
use qkspin::curvature::{curv_dim, curvature_space_check, injectivity_report};
use qkspin::model::{einstein_prefactor, ricci_check, sym4_triviality_check};
use qkspin::report::Check;
use qkspin::spinor::{clifford_relation_check, dimension_check, kraines_check, rank_s};
use qkspin::weitzenboeck::*;
use qkspin::Rational;

type Outcome = Result<String, String>;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

fn checks(list: Vec<Check>) -> Outcome {
    let total = list.len();
    match list.into_iter().find(|c| !c.passed) {
        Some(c) => Err(format!("{}: {}", c.name, c.witness.unwrap_or_default())),
        None => Ok(format!("{total} checks")),
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn clifford() -> Outcome {
    checks((2..=3).flat_map(clifford_relation_check).collect())
}

fn dimensions() -> Outcome {
    for n in 1..=4i64 {
        let mut total = 0;
        for r in 0..=n {
            let prim = binom(2 * n, n - r) - binom(2 * n, n - r - 2);
            let want = (r + 1) * prim;
            ensure(rank_s(n as usize, r as usize) == want, || format!("rank n={n} r={r}"))?;
            total += want;
        }
        ensure(total == 1 << (2 * n), || format!("total n={n}"))?;
    }
    ensure((0..=2).map(|r| rank_s(2, r)).collect::<Vec<_>>() == [5, 8, 3], || "n=2 ranks".into())?;
    checks((1..=4).flat_map(dimension_check).collect())
}

fn kraines() -> Outcome {
    checks((2..=3).flat_map(kraines_check).collect())
}

fn lemmas() -> Outcome {
    checks((1..=4).flat_map(operator_lemmas_report).collect())
}

fn curvature() -> Outcome {
    ensure([2, 3, 4].map(curv_dim) == [1, 6, 20], || "Curv dimensions".into())?;
    let mut list: Vec<Check> = (2..=4).flat_map(curvature_space_check).collect();
    list.extend([2, 4].into_iter().flat_map(injectivity_report));
    checks(list)
}

fn bianchi() -> Outcome {
    let s = BianchiSystem::new(2).map_err(|e| e.to_string())?.summary();
    ensure(s.solution_dim == 336 && curv_dim(8) == 336, || format!("solution dim {}", s.solution_dim))?;
    checks((1..=2).flat_map(bianchi_check).collect())
}

fn ricci() -> Outcome {
    ensure(einstein_prefactor(2) * &Rational::from(-8) == q(1, 8), || "prefactor".into())?;
    checks((2..=3).flat_map(|n| ricci_check(n, 0..20)).collect())
}

fn sym4() -> Outcome {
    checks((2..=3).flat_map(|n| sym4_triviality_check(n, 0..4)).collect())
}

fn weitzenboeck() -> Outcome {
    for n in 1..=6 {
        for r in 0..=n {
            let shown = displayed_w(n, r);
            let w = w_full(n, r);
            for (i, row) in shown.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    ensure(w.entry(i, j) == x, || format!("display entry ({},{}) at n={n} r={r}", i + 1, j + 1))?;
                }
            }
            let ni = n as i64;
            let ri = r as i64;
            ensure(*w.entry(0, 0) == q(1, ni - ri + 1), || "entry (1,1)".into())?;
            ensure(*w.entry(0, 1) == q(-ri, (ni - ri + 1) * (ri + 1)), || "entry (1,2)".into())?;
        }
    }
    for (n, r) in [(2, 1), (3, 1), (3, 2)] {
        let h = recover_wh(n, r).map_err(|e| e.to_string())?;
        ensure(h.first_mismatch(&wh_closed(r)).is_none(), || format!("W_H oracle n={n} r={r}"))?;
        let e = recover_we(n, r).map_err(|e| e.to_string())?;
        ensure(e.first_mismatch(&we_closed(n, r)).is_none(), || format!("W_E oracle n={n} r={r}"))?;
    }
    let start = Instant::now();
    let rec = recover_w(3, 2).map_err(|e| e.to_string())?;
    let t32 = start.elapsed();
    ensure(t32 < Duration::from_secs(300), || format!("(3,2) took {t32:?}"))?;
    ensure(rec.rank == 6 && rec.first_mismatch(&w_full(3, 2).entries).is_none(), || "recover_w(3,2)".into())?;
    let mut list = Vec::new();
    for n in 2..=3 {
        for r in 0..=n {
            list.extend(recovery_check(n, r));
            list.extend(kernel_projection_check(n, r));
        }
    }
    checks(list).map(|s| format!("{s}, (3,2) recovery {} ms", t32.as_millis()))
}

fn operator_sums() -> Outcome {
    for n in 1..=3usize {
        for r in 0..=n {
            let (ni, ri) = (n as i64, r as i64);
            let cs = curvature_scalars(n, r).map_err(|e| e.to_string())?;
            ensure(cs.h_eigenvalue == Rational::from(-ri * (ri + 2)), || format!("H sum n={n} r={r}"))?;
            ensure(cs.e_eigenvalue == Rational::from(-(ni - ri) * (ni + ri + 2)), || format!("E sum n={n} r={r}"))?;
            ensure(cs.h_kappa == q(ri * (ri + 2), ni + 2), || format!("H κ n={n} r={r}"))?;
            ensure(cs.e_kappa == q((ni + ri + 2) * (ni - ri), ni * (ni + 2)), || format!("E κ n={n} r={r}"))?;
        }
    }
    checks((1..=3).flat_map(|n| (0..=n).flat_map(move |r| curvature_scalar_identities(n, r))).collect())
}

fn row_combinations() -> Outcome {
    for n in 2..=3usize {
        for r in 1..n {
            let c = row_combination(&w_full(n, r), &lichnerowicz_vector(n, r)).map_err(|e| e.to_string())?;
            let d2: Vec<Option<Rational>> = c.products[..4].to_vec();
            ensure(
                c.laplacian == Rational::from(1)
                    && c.kappa == Rational::from(1)
                    && d2 == [Some(q(0, 1)), Some(q(1, 1)), Some(q(1, 1)), Some(q(0, 1))]
                    && c.w_row[4..].iter().all(|x| x.is_zero()),
                || format!("Lichnerowicz n={n} r={r}"),
            )?;
        }
        for r in 0..n {
            let (ni, ri) = (n as i64, r as i64);
            let c = row_combination(&w_full(n, r), &estimate_vector(n, r)).map_err(|e| e.to_string())?;
            ensure(c.w_row[3].is_zero() && c.w_row[5].is_zero(), || format!("estimate columns n={n} r={r}"))?;
            ensure(c.kappa == q((ri + 2) * (ni + ri + 2), ni + 2), || format!("estimate κ n={n} r={r}"))?;
        }
    }
    checks((2..=3).flat_map(|n| (0..=n).flat_map(move |r| row_combination_check(n, r))).collect())
}

fn bounds() -> Outcome {
    for n in 2..=6usize {
        let ni = n as i64;
        for kappa in [q(1, 1), q(16, 1), q(28, 5)] {
            let b = estimate_bound(n, 0, &kappa).map_err(|e| e.to_string())?;
            ensure(b == q(ni + 3, ni + 2) * &kappa * &q(1, 4), || format!("bound n={n}"))?;
        }
    }
    ensure(estimate_bound(2, 0, &Rational::from(16)) == Ok(Rational::from(5)), || "bound(2,0,16)".into())?;
    ensure(estimate_bound(2, 1, &Rational::from(16)) == Ok(Rational::from(6)), || "bound(2,1,16)".into())?;
    ensure(estimate_bound(5, 0, &q(28, 5)) == Ok(q(8, 5)), || "bound(5,0,28/5)".into())?;
    ensure(estimate_bound(2, 0, &Rational::from(0)).is_err(), || "κ = 0 accepted".into())?;
    for n in 2..=3usize {
        for r in 0..n {
            let d = derive_bound_coefficient(n, r).map_err(|e| e.to_string())?;
            let kappa = q(9, 2);
            let hard = estimate_bound(n, r, &kappa).map_err(|e| e.to_string())?;
            ensure(d.ratio.clone() * &kappa * &q(1, 4) == hard, || format!("ratio n={n} r={r}: {}", d.ratio))?;
        }
    }
    let r31 = derive_bound_coefficient(3, 1).map_err(|e| e.to_string())?.ratio;
    ensure(r31 == q(7, 5), || format!("ratio (3,1) = {r31}"))?;
    Ok("n=2..6".into())
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, title: "Clifford relation n=2,3", limit: secs(60), run: clifford },
        Criterion { id: 2, title: "spinor dimensions n<=4", limit: secs(60), run: dimensions },
        Criterion { id: 3, title: "Kraines form and Casimir n=2,3", limit: secs(120), run: kraines },
        Criterion { id: 4, title: "operator lemmas n<=4", limit: secs(300), run: lemmas },
        Criterion { id: 5, title: "curvature space N=2,3,4", limit: secs(120), run: curvature },
        Criterion { id: 6, title: "Bianchi equivalence n=1,2", limit: secs(600), run: bianchi },
        Criterion { id: 7, title: "Einstein and Ricci constants, 20 seeds", limit: secs(300), run: ricci },
        Criterion { id: 8, title: "Sym4 triviality n=2,3", limit: secs(300), run: sym4 },
        Criterion { id: 9, title: "Weitzenboeck matrices and recovery", limit: secs(300), run: weitzenboeck },
        Criterion { id: 10, title: "curvature operator sums n<=3", limit: secs(120), run: operator_sums },
        Criterion { id: 11, title: "row combinations n=2,3", limit: secs(60), run: row_combinations },
        Criterion { id: 12, title: "bound values and ratio", limit: secs(60), run: bounds },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > c.limit => Err(format!("{detail}; took {took:?}, limit {:?}", c.limit)),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {} ({detail}; {} ms)", c.id, c.title, took.as_millis()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {} ({why}; {} ms)", c.id, c.title, took.as_millis());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
