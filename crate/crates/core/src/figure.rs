//! Tabulated data behind the five figures: coefficient rows, `[8 4]_β`
//! against β, the Mittag-Leffler curve and its square, and the two row-sum
//! ratios.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fracbinom::{binom, binom_half_exact, Beta};
use crate::genfunc::phi_closed;
use crate::mittag::ml;
use crate::partial_sum::row_sum;

pub const FIGURE_IDS: [u8; 5] = [1, 2, 3, 4, 5];
/// β grid size for figure 2: β_i = 2i/200, i = 1..=200.
pub const FIGURE2_POINTS: usize = 200;
/// x grid size for figure 3: x_i = −0.5 + 0.01 i, i = 0..=250.
pub const FIGURE3_POINTS: usize = 251;
pub const ROW_SUM_MAX_N: u32 = 50;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

impl Column {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Column {
            name: name.into(),
            values,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureData {
    pub figure_id: u8,
    pub columns: Vec<Column>,
    pub metadata: BTreeMap<String, String>,
}

impl FigureData {
    pub fn new(figure_id: u8, columns: Vec<Column>, metadata: BTreeMap<String, String>) -> Result<Self> {
        if !FIGURE_IDS.contains(&figure_id) {
            return Err(Error::domain(format!("no figure {figure_id}; ids are 1..=5")));
        }
        if let Some(first) = columns.first() {
            if let Some(bad) = columns.iter().find(|c| c.values.len() != first.values.len()) {
                return Err(Error::domain(format!(
                    "column {} has {} rows, column {} has {}",
                    bad.name,
                    bad.values.len(),
                    first.name,
                    first.values.len()
                )));
            }
        }
        for (i, c) in columns.iter().enumerate() {
            if columns[..i].iter().any(|d| d.name == c.name) {
                return Err(Error::domain(format!("duplicate column name {}", c.name)));
            }
        }
        Ok(FigureData {
            figure_id,
            columns,
            metadata,
        })
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.values.len())
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.values.as_slice())
    }

    pub fn names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    /// Every value rounded to `digits` significant digits.
    pub fn rounded(&self, digits: usize) -> FigureData {
        FigureData {
            figure_id: self.figure_id,
            columns: self
                .columns
                .iter()
                .map(|c| {
                    Column::new(
                        c.name.clone(),
                        c.values.iter().map(|&v| round_significant(v, digits)).collect(),
                    )
                })
                .collect(),
            metadata: self.metadata.clone(),
        }
    }
}

/// `v` rounded to `digits` significant decimal digits (at least 1).
pub fn round_significant(v: f64, digits: usize) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    let digits = digits.clamp(1, 17);
    format!("{:.*e}", digits - 1, v).parse().unwrap_or(v)
}

/// Shortest decimal that reads back as `round_significant(v, digits)`.
pub fn format_float(v: f64, digits: usize) -> String {
    format!("{:?}", round_significant(v, digits))
}

fn meta(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Coefficient table for n = 0..=10, k = −5..=15 at β = 1/2, 1/4 and 1.
pub fn figure1() -> Result<FigureData> {
    let quarter = Beta::rational(1, 4)?;
    let one = Beta::rational(1, 1)?;
    let (mut ns, mut ks, mut half, mut q, mut o) = (vec![], vec![], vec![], vec![], vec![]);
    for n in 0..=10u32 {
        for k in -5..=15i64 {
            ns.push(n as f64);
            ks.push(k as f64);
            half.push(binom_half_exact(n, k).to_f64());
            q.push(binom(n, k, quarter)?);
            o.push(binom(n, k, one)?);
        }
    }
    FigureData::new(
        1,
        vec![
            Column::new("n", ns),
            Column::new("k", ks),
            Column::new("beta_1_2", half),
            Column::new("beta_1_4", q),
            Column::new("beta_1", o),
        ],
        meta(&[("n_range", "0..=10".into()), ("k_range", "-5..=15".into())]),
    )
}

/// `[8 4]_β` for β = 2i/200, i = 1..=200.
pub fn figure2() -> Result<FigureData> {
    let mut betas = Vec::with_capacity(FIGURE2_POINTS);
    let mut values = Vec::with_capacity(FIGURE2_POINTS);
    for i in 1..=FIGURE2_POINTS as i64 {
        let beta = Beta::rational(2 * i, FIGURE2_POINTS as i64)?;
        betas.push(beta.value());
        values.push(binom(8, 4, beta)?);
    }
    FigureData::new(
        2,
        vec![Column::new("beta", betas), Column::new("binom_8_4", values)],
        meta(&[
            ("n", "8".into()),
            ("k", "4".into()),
            ("beta_grid", format!("2i/{FIGURE2_POINTS}, i=1..={FIGURE2_POINTS}")),
        ]),
    )
}

/// `E_{1/2}(x)`, its square and `E_{1/2}(2x)` on x = −0.5 + 0.01 i.
pub fn figure3() -> Result<FigureData> {
    let mut xs = Vec::with_capacity(FIGURE3_POINTS);
    let (mut e, mut sq, mut dbl) = (vec![], vec![], vec![]);
    for i in 0..FIGURE3_POINTS {
        let x = -0.5 + 0.01 * i as f64;
        let v = ml(0.5, x)?;
        xs.push(x);
        e.push(v);
        sq.push(v * v);
        dbl.push(ml(0.5, 2.0 * x)?);
    }
    FigureData::new(
        3,
        vec![
            Column::new("x", xs),
            Column::new("ml", e),
            Column::new("ml_squared", sq),
            Column::new("ml_double", dbl),
        ],
        meta(&[
            ("beta", "1/2".into()),
            ("x_grid", format!("-0.5 + 0.01 i, i=0..{FIGURE3_POINTS}")),
        ]),
    )
}

fn asymptote(n: u32) -> f64 {
    2f64.powf(n as f64 / 2.0 + 1.0)
}

/// `φ_n(1)` and its ratio to `2^{n/2+1}`, n = 0..=50.
pub fn figure4() -> Result<FigureData> {
    let (mut ns, mut phi, mut asym, mut ratio) = (vec![], vec![], vec![], vec![]);
    for n in 0..=ROW_SUM_MAX_N {
        let v = phi_closed(n, 1.0)?;
        let a = asymptote(n);
        ns.push(n as f64);
        phi.push(v);
        asym.push(a);
        ratio.push(v / a);
    }
    FigureData::new(
        4,
        vec![
            Column::new("n", ns),
            Column::new("phi", phi),
            Column::new("asymptote", asym),
            Column::new("ratio", ratio),
        ],
        meta(&[("t", "1".into()), ("n_range", format!("0..={ROW_SUM_MAX_N}"))]),
    )
}

/// `φ̄_n(1)` against `2^{n/2+1}`, n = 0..=50.
pub fn figure5() -> Result<FigureData> {
    let (mut ns, mut sums, mut asym, mut ratio) = (vec![], vec![], vec![], vec![]);
    for n in 0..=ROW_SUM_MAX_N {
        let v = row_sum(n);
        let a = asymptote(n);
        ns.push(n as f64);
        sums.push(v);
        asym.push(a);
        ratio.push(v / a);
    }
    FigureData::new(
        5,
        vec![
            Column::new("n", ns),
            Column::new("phibar", sums),
            Column::new("asymptote", asym),
            Column::new("ratio", ratio),
        ],
        meta(&[("t", "1".into()), ("n_range", format!("0..={ROW_SUM_MAX_N}"))]),
    )
}

pub fn figure(id: u8) -> Result<FigureData> {
    match id {
        1 => figure1(),
        2 => figure2(),
        3 => figure3(),
        4 => figure4(),
        5 => figure5(),
        _ => Err(Error::domain(format!("no figure {id}; ids are 1..=5"))),
    }
}
