mod common;

use common::{displayed_w, rows};
use proptest::prelude::*;
use qkspin::linalg::Matrix;
use qkspin::weitzenboeck::*;
use qkspin::Rational;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

fn matrix(num: &[&[i64]], den: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(rows(num, den))
}

#[test]
fn h_part_examples() {
    assert_eq!(wh_closed(1), matrix(&[&[1, -1], &[1, 3]], &[&[1, 2], &[1, 2]]));
    assert_eq!(wh_closed(0), matrix(&[&[1, 0], &[0, 0]], &[&[1, 1], &[1, 1]]));
    assert_eq!(wh_closed(2), matrix(&[&[1, -2], &[2, 8]], &[&[1, 3], &[1, 3]]));
}

#[test]
fn e_part_examples() {
    let want = matrix(&[&[1, -1, 1], &[-1, 5, 1], &[-3, -5, 1]], &[&[2, 4, 1], &[2, 4, 1], &[4, 8, 2]]);
    assert_eq!(we_closed(2, 1), want);
    for n in 1..=6usize {
        let ni = n as i64;
        assert_eq!(we_closed(n, 0).row(0), &[q(1, ni + 1), q(-2, ni + 3), q(1, 1)]);
    }
    assert_eq!(we_closed(3, 1)[(2, 2)], q(1, 3));
}

#[test]
fn full_matrix_matches_display() {
    for n in 1..=7 {
        for r in 0..=n {
            let w = w_full(n, r);
            let shown = displayed_w(n, r);
            for (i, row) in shown.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    assert_eq!(w.entry(i, j), x, "n={n} r={r} entry ({},{})", i + 1, j + 1);
                }
            }
        }
    }
    let w = w_full(4, 1);
    assert_eq!(*w.entry(0, 0), q(1, 4));
    assert_eq!(*w.entry(0, 1), q(-1, 8));
    assert_eq!(w_full(2, 1).entries, we_closed(2, 1).kron(&wh_closed(1)));
}

#[test]
fn text_encoding_of_entries() {
    let text = w_full(2, 1).to_text();
    assert_eq!(text[0][0], "1/2");
    assert_eq!(text.len(), 6);
    let w = w_full(3, 2);
    for (i, row) in w.to_text().iter().enumerate() {
        for (j, t) in row.iter().enumerate() {
            assert_eq!(&t.parse::<Rational>().unwrap(), w.entry(i, j));
        }
    }
}

#[test]
fn sub_oracles_recover_closed_forms() {
    for (n, r) in [(2, 1), (3, 1), (3, 2)] {
        let h = recover_wh(n, r).unwrap();
        assert!(h.is_generic());
        assert_eq!(h.first_mismatch(&wh_closed(r)), None);
        let e = recover_we(n, r).unwrap();
        assert!(e.is_generic());
        assert_eq!(e.first_mismatch(&we_closed(n, r)), None);
    }
}

#[test]
fn full_recovery_generic_grades() {
    for (n, r) in [(2, 1), (3, 1), (3, 2)] {
        let rec = recover_w(n, r).unwrap();
        assert_eq!(rec.rank, 6);
        assert_eq!(rec.first_mismatch(&w_full(n, r).entries), None, "n={n} r={r}");
    }
}

#[test]
fn degenerate_grades_use_surviving_members() {
    for n in 1..=3 {
        for r in [0, n] {
            let rec = recover_w(n, r).unwrap();
            assert!(!rec.is_generic());
            assert_eq!(rec.live_cols, surviving_columns(n, r));
            assert_eq!(rec.rank, rec.live_cols.len());
            assert_eq!(rec.first_mismatch(&w_full(n, r).entries), None, "n={n} r={r}");
        }
    }
    assert_eq!(surviving_columns(2, 0), vec![2, 4]);
    assert_eq!(surviving_columns(2, 2), vec![0, 1]);
}

#[test]
fn zero_members_are_flagged() {
    let right = right_projectors(2, 0).unwrap();
    assert_eq!(right.members.len(), 6);
    let zero = right.zero_members();
    assert!(zero.contains(&"(+−,−+)"), "{zero:?}");
    assert!(zero.contains(&"(+−,K)"), "{zero:?}");
    assert_eq!(zero.len(), 4);
    assert!(right_projectors(2, 1).unwrap().zero_members().is_empty());
    assert_eq!(left_projectors(2, 2).unwrap().zero_members().len(), 4);
}

#[test]
fn perturbed_matrix_is_caught() {
    let rec = recover_w(2, 1).unwrap();
    let mut bad = w_full(2, 1).entries;
    bad[(3, 2)] += &q(1, 7);
    let (i, j, _, _) = rec.first_mismatch(&bad).unwrap();
    assert_eq!((i, j), (3, 2));
}

#[test]
fn kernel_projection_properties() {
    for (n, r) in [(2, 0), (2, 1), (3, 1), (3, 3)] {
        for c in kernel_projection_check(n, r) {
            assert!(c.passed, "{}: {:?}", c.name, c.witness);
        }
    }
}

#[test]
fn family_identities() {
    for n in 1..=3 {
        for r in 0..=n {
            for c in family_identities_check(n, r) {
                assert!(c.passed, "{}: {:?}", c.name, c.witness);
            }
        }
    }
}

#[test]
fn operator_sums() {
    assert_eq!(h_operator_sum(1).scalar_value(), Some(Rational::from(-3)));
    assert_eq!(e_operator_sum(2, 0).unwrap().scalar_value(), Some(Rational::from(-8)));
    assert_eq!(curvature_scalars(2, 1).unwrap().h_kappa, q(3, 4));
    for n in 1..=3usize {
        for r in 0..=n {
            let cs = curvature_scalars(n, r).unwrap();
            let (ni, ri) = (n as i64, r as i64);
            assert_eq!(cs.h_eigenvalue, Rational::from(-ri * (ri + 2)));
            assert_eq!(cs.e_eigenvalue, Rational::from(-(ni - ri) * (ni + ri + 2)));
            assert_eq!(cs.h_kappa, q(ri * (ri + 2), ni + 2));
            assert_eq!(cs.e_kappa, q((ni + ri + 2) * (ni - ri), ni * (ni + 2)));
        }
    }
}

#[test]
fn lichnerowicz_and_twistor_free_rows() {
    for n in 2..=3usize {
        for r in 1..n {
            let c = row_combination(&w_full(n, r), &lichnerowicz_vector(n, r)).unwrap();
            assert_eq!(c.laplacian, Rational::from(1));
            assert_eq!(c.kappa, Rational::from(1));
            let prods: Vec<Rational> = c.products[..4].iter().map(|p| p.clone().unwrap()).collect();
            assert_eq!(prods, vec![q(0, 1), q(1, 1), q(1, 1), q(0, 1)]);
            assert!(c.w_row[4..].iter().all(|x| x.is_zero()));
        }
        for r in 1..=n {
            let (ni, ri) = (n as i64, r as i64);
            let c = row_combination(&w_full(n, r), &twistor_free_vector(n, r)).unwrap();
            let prods: Vec<Rational> = c.products[..4].iter().map(|p| p.clone().unwrap()).collect();
            let want = vec![
                q(ri, 2),
                q(ri * (ri + 2), 2 * (ri + 1)),
                q(ri * ri, 2 * (ri + 1)),
                q(ri * ri * (ri + 2), 2 * (ri + 1) * (ri + 1)),
            ];
            assert_eq!(prods, want);
            assert_eq!(c.kappa, q(ri * ri * (ri + 2), ni * (ni + 2)));
        }
    }
}

#[test]
fn estimate_row_and_ratio() {
    for n in 2..=3usize {
        for r in 0..n {
            let (ni, ri) = (n as i64, r as i64);
            let d = derive_bound_coefficient(n, r).unwrap();
            assert!(d.combination.w_row[3].is_zero() && d.combination.w_row[5].is_zero());
            assert_eq!(d.combination.kappa, q((ri + 2) * (ni + ri + 2), ni + 2));
            assert_eq!(d.ratio, q(ni + ri + 3, ni + 2));
        }
        assert!(derive_bound_coefficient(n, n).is_err());
    }
    assert_eq!(derive_bound_coefficient(3, 1).unwrap().ratio, q(7, 5));
    for n in 2..=3 {
        for r in 0..=n {
            for c in row_combination_check(n, r) {
                assert!(c.passed, "{}: {:?}", c.name, c.witness);
            }
        }
    }
}

#[test]
fn bound_values() {
    assert_eq!(estimate_bound(2, 0, &Rational::from(16)).unwrap(), Rational::from(5));
    assert_eq!(estimate_bound(2, 1, &Rational::from(16)).unwrap(), Rational::from(6));
    assert_eq!(estimate_bound(5, 0, &q(28, 5)).unwrap(), q(8, 5));
    for n in 2..=6usize {
        let ni = n as i64;
        let kappa = q(7, 3);
        let b = estimate_bound(n, 0, &kappa).unwrap();
        assert_eq!(b * &q(ni + 2, ni + 3), kappa * &q(1, 4));
    }
}

#[test]
fn bound_rejects_bad_input() {
    assert!(matches!(estimate_bound(2, 0, &Rational::from(0)), Err(WeitzenboeckError::NonPositiveKappa(_))));
    assert!(matches!(estimate_bound(2, 0, &q(-1, 2)), Err(WeitzenboeckError::NonPositiveKappa(_))));
    assert!(estimate_bound(1, 0, &Rational::from(1)).is_err());
    assert!(estimate_bound(2, 3, &Rational::from(1)).is_err());
    assert!(row_combination(&w_full(2, 1), &[q(1, 1)]).is_err());
}

fn small_vec() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-6i64..=6, 1i64..=4).prop_map(|(p, d)| q(p, d)), 6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn row_combination_is_linear(n in 2usize..=5, r in 0usize..=5, a in small_vec(), b in small_vec(), t in -3i64..=3) {
        let r = r.min(n);
        let w = w_full(n, r);
        let sum: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x.clone() * &Rational::from(t) + y).collect();
        let ca = row_combination(&w, &a).unwrap();
        let cb = row_combination(&w, &b).unwrap();
        let cs = row_combination(&w, &sum).unwrap();
        for j in 0..6 {
            prop_assert_eq!(cs.w_row[j].clone(), ca.w_row[j].clone() * &Rational::from(t) + &cb.w_row[j]);
        }
        prop_assert_eq!(cs.kappa, ca.kappa * &Rational::from(t) + &cb.kappa);
        prop_assert_eq!(cs.laplacian, ca.laplacian * &Rational::from(t) + &cb.laplacian);
    }

    #[test]
    fn blocks_are_scaled_h_part(n in 1usize..=8, r in 0usize..=8, i in 0usize..3, j in 0usize..3) {
        let r = r.min(n);
        let w = w_full(n, r);
        let (we, wh) = (we_closed(n, r), wh_closed(r));
        for a in 0..2 {
            for b in 0..2 {
                prop_assert_eq!(w.entry(2 * i + a, 2 * j + b).clone(), we[(i, j)].clone() * &wh[(a, b)]);
            }
        }
    }
}
