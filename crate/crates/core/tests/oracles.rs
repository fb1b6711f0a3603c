//! The three graded-piece oracles against each other and against counts
//! worked out by hand.

use coxring_core::blowup::{general_points, BlowupModel, ProductChecker};
use coxring_core::collinear::{self, CollinearConfig};
use coxring_core::exact::binomial;
use coxring_core::groebner::hilbert_of_intersection;
use coxring_core::poly::rat_point;
use coxring_core::{Field, MultiDegree};
use proptest::prelude::*;

fn md(a: i64, b: &[i64]) -> MultiDegree {
    MultiDegree::new(a, b.to_vec())
}

#[test]
fn simple_general_points_impose_independent_conditions() {
    // m simple points in general position cut C(a+2, 2) - m, down to zero
    for m in 1..=6 {
        let model = BlowupModel::general(2, m, 3);
        for a in 0..=4 {
            let want = (binomial(a + 2, 2) as i64 - m as i64).max(0) as usize;
            assert_eq!(
                model.piece_dim(&md(a, &vec![1; m])).unwrap(),
                want,
                "m={m} a={a}"
            );
        }
    }
}

#[test]
fn special_systems() {
    let two = BlowupModel::new(2, vec![rat_point(&[1, 0, 0]), rat_point(&[0, 1, 0])]).unwrap();
    // six conditions on conics, yet the doubled line through both points survives
    assert_eq!(two.piece_dim(&md(2, &[2, 2])).unwrap(), 1);
    let basis = two.piece_basis(&md(2, &[2, 2])).unwrap().basis;
    assert_eq!(basis[0].to_string(), "Z2^2");
    // three collinear simple points: the line still passes through them
    let three = BlowupModel::new(
        2,
        vec![
            rat_point(&[1, 0, 0]),
            rat_point(&[0, 1, 0]),
            rat_point(&[1, 1, 0]),
        ],
    )
    .unwrap();
    assert_eq!(three.piece_dim(&md(1, &[1, 1, 1])).unwrap(), 1);
    // one double point: three conditions
    let one = BlowupModel::general(2, 1, 9);
    for a in 1..=5 {
        assert_eq!(
            one.piece_dim(&md(a, &[2])).unwrap() as u64,
            binomial(a + 2, 2) - 3
        );
    }
}

#[test]
fn groebner_agrees_off_the_line() {
    let pts = general_points(2, 3, 21);
    let model = BlowupModel::new(2, pts.clone()).unwrap();
    for b in [[1, 1, 1], [2, 1, 0], [2, 2, 1], [3, 1, -1]] {
        for a in 0..=5 {
            let gb = hilbert_of_intersection(Field::Rational, 2, &pts, &b, a).unwrap();
            assert_eq!(model.piece_dim(&md(a, &b)).unwrap(), gb, "a={a} b={b:?}");
        }
    }
}

#[test]
fn three_oracles_in_p3() {
    let cfg = CollinearConfig::parse(
        3,
        &["Z0".into(), "Z0 + Z1".into(), "Z0 - 3*Z1".into()],
        Field::Rational,
    )
    .unwrap();
    let model = cfg.to_blowup_model().unwrap();
    for b in [[1, 1, 1], [2, 1, 0], [2, 2, 2]] {
        for a in 0..=4 {
            let d = md(a, &b);
            let closed = collinear::collinear_dim(&cfg, &d).unwrap();
            let gb = hilbert_of_intersection(Field::Rational, 3, &cfg.points(), &b, a).unwrap();
            assert_eq!(closed, model.piece_dim(&d).unwrap() as u64, "{d}");
            assert_eq!(closed, gb as u64, "{d}");
        }
    }
}

#[test]
fn groebner_and_closed_form_agree_in_positive_characteristic() {
    for p in [2u64, 3, 5] {
        let field = Field::prime(p).unwrap();
        let forms: Vec<String> = if p == 2 {
            vec!["Z0".into(), "Z1".into(), "Z0 + Z1".into()]
        } else {
            vec!["Z0".into(), "Z1".into(), "Z0 + 2*Z1".into()]
        };
        let cfg = CollinearConfig::parse(2, &forms, field).unwrap();
        for d in collinear::degree_box(3, 4, 2) {
            let gb = hilbert_of_intersection(field, 2, &cfg.points(), &d.b, d.a).unwrap();
            assert_eq!(
                collinear::collinear_dim(&cfg, &d).unwrap(),
                gb as u64,
                "p={p} {d}"
            );
        }
    }
}

#[test]
fn products_on_general_points_stay_in_the_piece() {
    let model = BlowupModel::general(2, 3, 5);
    let degrees = collinear::degree_box(3, 3, 2);
    let checker = ProductChecker::new(&model, &degrees, 4).unwrap();
    let mut products = 0;
    for d in &degrees {
        for e in &degrees {
            let c = checker.check_pair(d, e).unwrap();
            assert_eq!(c.violations, 0, "{d} * {e}");
            products += c.products;
        }
    }
    assert!(products > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn interpolation_matches_groebner(seed in 0u64..1000, a in 0i64..=4, b in prop::collection::vec(-1i64..=3, 2)) {
        let pts = general_points(2, 2, seed);
        let model = BlowupModel::new(2, pts.clone()).unwrap();
        let gb = hilbert_of_intersection(Field::Rational, 2, &pts, &b, a).unwrap();
        prop_assert_eq!(model.piece_dim(&md(a, &b)).unwrap(), gb);
    }

    #[test]
    fn closed_form_matches_interpolation(a in 0i64..=6, b in prop::collection::vec(-3i64..=5, 3)) {
        let cfg = CollinearConfig::parse(2, &["Z0 - Z1".into(), "2*Z0 + Z1".into(), "Z1".into()], Field::Rational).unwrap();
        let d = md(a, &b);
        prop_assert_eq!(collinear::collinear_dim(&cfg, &d).unwrap(), cfg.to_blowup_model().unwrap().piece_dim(&d).unwrap() as u64);
    }
}
