use std::collections::BTreeMap;

use fracbinom_core::figure::{figure, format_float, round_significant, FIGURE_IDS};
use fracbinom_core::mittag::ml;
use fracbinom_core::{Column, FigureData};
use proptest::prelude::*;

fn all() -> Vec<FigureData> {
    FIGURE_IDS.iter().map(|&id| figure(id).unwrap()).collect()
}

#[test]
fn columns_are_rectangular_with_unique_names() {
    for f in all() {
        let rows = f.rows();
        assert!(rows > 0, "figure {}", f.figure_id);
        let mut names = f.names();
        for c in &f.columns {
            assert_eq!(c.values.len(), rows, "figure {} column {}", f.figure_id, c.name);
            assert!(c.values.iter().all(|v| v.is_finite()));
        }
        names.sort();
        names.dedup();
        assert_eq!(names.len(), f.columns.len());
        assert!(!f.metadata.is_empty());
    }
    assert!(figure(0).is_err());
    assert!(figure(6).is_err());
}

#[test]
fn construction_checks_shape() {
    let meta = BTreeMap::new();
    let ragged = vec![Column::new("a", vec![1.0, 2.0]), Column::new("b", vec![1.0])];
    assert!(FigureData::new(1, ragged, meta.clone()).is_err());
    let twice = vec![Column::new("a", vec![1.0]), Column::new("a", vec![2.0])];
    assert!(FigureData::new(1, twice, meta.clone()).is_err());
    assert!(FigureData::new(9, vec![], meta).is_err());
}

#[test]
fn coefficient_table_is_reflection_symmetric() {
    let f = figure(1).unwrap();
    let (ns, ks) = (f.column("n").unwrap(), f.column("k").unwrap());
    assert_eq!(f.rows(), 11 * 21);
    let lookup: BTreeMap<(i64, i64), usize> = ns
        .iter()
        .zip(ks)
        .enumerate()
        .map(|(i, (&n, &k))| ((n as i64, k as i64), i))
        .collect();
    for col in ["beta_1_2", "beta_1_4", "beta_1"] {
        let v = f.column(col).unwrap();
        for (&(n, k), &i) in &lookup {
            if let Some(&j) = lookup.get(&(n, n - k)) {
                assert!((v[i] - v[j]).abs() <= 1e-12 * v[i].abs().max(1.0), "{col} n={n} k={k}");
            }
        }
    }
    let half = f.column("beta_1_2").unwrap();
    let at = |n: i64, k: i64| half[lookup[&(n, k)]];
    assert!((at(2, 1) - 4.0 / std::f64::consts::PI).abs() < 1e-15);
    assert_eq!(at(4, -2), 0.0);
    assert_eq!(at(4, 6), 0.0);
    assert_eq!(f.column("beta_1").unwrap()[lookup[&(10, 5)]], 252.0);
}

#[test]
fn middle_coefficient_against_beta() {
    let f = figure(2).unwrap();
    let (betas, values) = (f.column("beta").unwrap(), f.column("binom_8_4").unwrap());
    assert_eq!(f.rows(), 200);
    let one = betas.iter().position(|&b| b == 1.0).unwrap();
    assert!((values[one] - 70.0).abs() < 1e-10);
    let two = betas.iter().position(|&b| b == 2.0).unwrap();
    assert!((values[two] - 12870.0).abs() < 1e-7);
    assert!(values.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn mittag_leffler_curve() {
    let f = figure(3).unwrap();
    let (x, e, sq, dbl) = (
        f.column("x").unwrap(),
        f.column("ml").unwrap(),
        f.column("ml_squared").unwrap(),
        f.column("ml_double").unwrap(),
    );
    assert_eq!((x[0], *x.last().unwrap()), (-0.5, 2.0));
    for i in 0..f.rows() {
        assert_eq!(sq[i], e[i] * e[i]);
        assert_eq!(dbl[i], ml(0.5, 2.0 * x[i]).unwrap());
    }
    let one = x.iter().position(|&v| (v - 1.0).abs() < 1e-12).unwrap();
    assert!(sq[one] > 25.0 && sq[one] < 25.2 && dbl[one] > 108.9);
}

#[test]
fn row_sum_ratios() {
    let four = figure(4).unwrap();
    let r4 = four.column("ratio").unwrap();
    assert_eq!(four.rows(), 51);
    assert_eq!(r4[0], 0.75);
    assert!((r4[40] - 1.0).abs() <= 1e-3);

    let five = figure(5).unwrap();
    let (sums, asym, r5) = (
        five.column("phibar").unwrap(),
        five.column("asymptote").unwrap(),
        five.column("ratio").unwrap(),
    );
    assert!((sums[3] - 5.0).abs() < 1e-13);
    assert!((asym[3] - 5.656_854_2).abs() < 1e-7);
    for r in [r4, r5] {
        assert!(r.windows(2).all(|w| w[1] >= w[0] && w[1] <= 1.0 + 1e-15));
    }
    assert!((r5[40] - 1.0).abs() <= 1e-3);
    assert!((r5[50] - 1.0).abs() <= 1e-6);
}

#[test]
fn rounding_examples() {
    assert_eq!(format_float(4.0 / std::f64::consts::PI, 12), "1.27323954474");
    assert_eq!(format_float(1.0, 12), "1.0");
    assert_eq!(format_float(0.0, 12), "0.0");
    assert_eq!(round_significant(123456.0, 2), 120000.0);
    let f = figure(4).unwrap().rounded(6);
    assert_eq!(f.column("ratio").unwrap()[0], 0.75);
    assert_eq!(
        f.column("phi").unwrap()[2],
        round_significant(3.0 + 2.0 / std::f64::consts::PI, 6)
    );
}

proptest! {
    #[test]
    fn rounding_round_trips(v in -1e12f64..1e12, digits in 1usize..=17) {
        let r = round_significant(v, digits);
        prop_assert_eq!(format_float(v, digits).parse::<f64>().unwrap(), r);
        prop_assert_eq!(round_significant(r, digits), r);
        if v != 0.0 {
            prop_assert!(((r - v) / v).abs() <= 0.5 * 10f64.powi(1 - digits as i32) * (1.0 + 1e-12));
        }
    }
}
