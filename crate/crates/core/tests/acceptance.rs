//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fracbinom_core::exact::ratio;
use fracbinom_core::figure::figure;
use fracbinom_core::fracbinom::{binom, identity_residual, identity_residual_exact, Identity};
use fracbinom_core::genfunc::{
    phi_closed, phi_integral, phi_recursive, phi_series, w_closed, w_series, z_central_closed, z_central_series,
};
use fracbinom_core::hypergeom::{ellipse_perimeter, gauss_at_one};
use fracbinom_core::mittag::{caputo_derivative, ml, ml_square_cauchy};
use fracbinom_core::oracle::{
    ellipse_arc_length, gamma_integral, gamma_limit_product, integral_binomial_theorem, OracleConfig,
};
use fracbinom_core::partial_sum::{finite_sum_range, phibar_direct, phibar_exact, row_sum, row_sum_exact};
use fracbinom_core::{gamma, Beta, CaputoGrid, PiPoly, QuadraturePolicy, SeriesPolicy, SumId};

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

/// Running maximum of a residual with the case that produced it.
struct Worst {
    value: f64,
    case: String,
    cases: usize,
}

impl Worst {
    fn new() -> Self {
        Worst {
            value: 0.0,
            case: "-".into(),
            cases: 0,
        }
    }

    fn record(&mut self, r: f64, case: impl FnOnce() -> String) {
        self.cases += 1;
        let r = if r.is_nan() { f64::INFINITY } else { r };
        if r > self.value {
            self.value = r;
            self.case = case();
        }
    }

    fn within(&self, bound: f64, what: &str) -> Outcome {
        let line = format!(
            "{what}: {} cases, max {:.3e} (bound {bound:e}) at {}",
            self.cases, self.value, self.case
        );
        if self.cases > 0 && self.value <= bound {
            Ok(line)
        } else {
            Err(line)
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).abs() / b.abs()
}

/// Relative difference with the scale floored at 1, for sides that may vanish.
fn rel1(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn check(ok: bool, what: String) -> Outcome {
    if ok {
        Ok(what)
    } else {
        Err(what)
    }
}

fn join(parts: Vec<Outcome>) -> Outcome {
    let failed = parts.iter().any(|p| p.is_err());
    let text = parts
        .into_iter()
        .map(|p| match p {
            Ok(s) => s,
            Err(s) => format!("[failed] {s}"),
        })
        .collect::<Vec<_>>()
        .join("; ");
    if failed {
        Err(text)
    } else {
        Ok(text)
    }
}

fn exact_identities() -> Outcome {
    let mut nonzero = Vec::new();
    let mut cases = 0usize;
    let mut probe = |id: Identity, n: u32, k: i64, h: i64| -> Result<(), String> {
        cases += 1;
        let r = identity_residual_exact(id, n, k, h).map_err(|e| format!("{id} n={n} k={k} h={h}: {e}"))?;
        if !r.is_zero() {
            nonzero.push(format!("{id} n={n} k={k} h={h}"));
        }
        Ok(())
    };
    for n in 0..=60u32 {
        let ni = n as i64;
        for id in [
            Identity::Pascal,
            Identity::CommitteeChair,
            Identity::Recursion,
            Identity::Difference,
        ] {
            for k in -1..=ni + 3 {
                probe(id, n, k, 0)?;
            }
        }
        for k in -5..=ni + 5 {
            probe(Identity::Reflection, n, k, 0)?;
        }
        for h in 0..=ni {
            for k in 0..=ni {
                probe(Identity::Cancellation, n, k, h)?;
            }
        }
        if n <= 30 {
            for k in 0..=ni {
                probe(Identity::EvenEven, n, k, 0)?;
            }
        }
        probe(Identity::KTwo, n, 0, 0)?;
        probe(Identity::MinusOne, n, 0, 0)?;
        if n >= 2 {
            probe(Identity::ASum, n, 0, 0)?;
        }
    }
    check(
        nonzero.is_empty(),
        format!(
            "{cases} exact cases, {} nonzero residuals{}",
            nonzero.len(),
            nonzero.first().map(|c| format!(", first {c:?}")).unwrap_or_default()
        ),
    )
}

fn float_identities() -> Outcome {
    let betas = [(1, 4), (1, 2), (3, 4), (1, 1), (3, 2)].map(|(p, q)| Beta::rational(p, q).unwrap());
    let mut w = Worst::new();
    for beta in betas {
        for n in 0..=40u32 {
            let ni = n as i64;
            let r = identity_residual(Identity::Boundary, n, 0, 0, beta).map_err(err)?;
            w.record(rel1(r.lhs, r.rhs), || format!("boundary β={beta} n={n}"));
            for k in 0..=ni {
                let r = identity_residual(Identity::Reflection, n, k, 0, beta).map_err(err)?;
                w.record(rel1(r.lhs, r.rhs), || format!("reflection β={beta} n={n} k={k}"));
                for h in 0..=ni - k {
                    let r = identity_residual(Identity::Cancellation, n, k, h, beta).map_err(err)?;
                    w.record(rel1(r.lhs, r.rhs), || {
                        format!("cancellation β={beta} n={n} k={k} h={h}")
                    });
                }
            }
        }
    }
    let half_only = [
        Identity::Pascal,
        Identity::CommitteeChair,
        Identity::Recursion,
        Identity::Difference,
        Identity::KTwo,
        Identity::MinusOne,
    ];
    for n in 0..=40u32 {
        for id in half_only {
            for k in -1..=n as i64 + 1 {
                let r = identity_residual(id, n, k, 0, Beta::half()).map_err(err)?;
                w.record(rel1(r.lhs, r.rhs), || format!("{id} β=1/2 n={n} k={k}"));
            }
        }
        if n <= 20 {
            for k in 0..=n as i64 {
                let r = identity_residual(Identity::EvenEven, n, k, 0, Beta::half()).map_err(err)?;
                w.record(rel1(r.lhs, r.rhs), || format!("even_even n={n} k={k}"));
            }
        }
        if n >= 2 {
            let r = identity_residual(Identity::ASum, n, 0, 0, Beta::half()).map_err(err)?;
            w.record(rel1(r.lhs, r.rhs), || format!("a_sum n={n}"));
        }
    }
    w.within(1e-10, "float identities")
}

fn generating_function_routes() -> Outcome {
    let policy = SeriesPolicy::default();
    let qp = QuadraturePolicy::default();
    let mut exact_routes = Worst::new();
    let mut integral = Worst::new();
    for n in 0..=20u32 {
        for t in [-0.9, -0.5, 0.0, 0.3, 0.9] {
            let closed = phi_closed(n, t).map_err(err)?;
            let series = phi_series(n, t, &policy).map_err(err)?.value;
            let rec = phi_recursive(n, t).map_err(err)?;
            let int = phi_integral(n, t, &qp).map_err(err)?;
            exact_routes.record(rel1(series, closed).max(rel1(rec, closed)), || format!("n={n} t={t}"));
            integral.record(rel1(int, closed), || format!("n={n} t={t}"));
        }
    }
    let target = 3.0 + 2.0 / PI;
    let at_one = [
        ("series", phi_series(2, 1.0, &policy).map(|o| o.value)),
        ("recursive", phi_recursive(2, 1.0)),
        ("closed", phi_closed(2, 1.0)),
        ("integral", phi_integral(2, 1.0, &qp)),
    ];
    let mut phi2 = Worst::new();
    for (route, v) in at_one {
        phi2.record((v.map_err(err)? - target).abs(), || route.to_string());
    }
    join(vec![
        exact_routes.within(1e-8, "series/recursive vs closed"),
        integral.within(1e-6, "integral vs closed"),
        phi2.within(1e-6, "φ₂(1) = 3 + 2/π"),
    ])
}

fn partial_sums() -> Outcome {
    let five = phibar_exact(3, &ratio(1, 1));
    let four_expected = &PiPoly::integer(4) + &PiPoly::monomial(ratio(32, 3), -1);
    let four = row_sum(4);
    let mut w = Worst::new();
    for n in 0..=50u32 {
        w.record(rel(row_sum(n), phibar_direct(n, 1.0)), || format!("n={n}"));
    }
    join(vec![
        check(five == PiPoly::integer(5), format!("φ̄₃(1) = {five}")),
        check(
            row_sum_exact(4) == four_expected && (four - (4.0 + 32.0 / (3.0 * PI))).abs() <= 1e-12,
            format!("φ̄₄(1) = {} ≈ {four}", row_sum_exact(4)),
        ),
        w.within(1e-12, "closed row sums vs direct"),
    ])
}

fn asymptotic_law() -> Outcome {
    let dev = |n: u32| (row_sum(n) / 2f64.powf(n as f64 / 2.0 + 1.0) - 1.0).abs();
    let mut parts = vec![
        check(dev(40) <= 1e-3, format!("n=40: {:.3e}", dev(40))),
        check(dev(80) <= 1e-6, format!("n=80: {:.3e}", dev(80))),
    ];
    for id in [4u8, 5] {
        let f = figure(id).map_err(err)?;
        let r = f.column("ratio").ok_or("no ratio column")?;
        let monotone = r.windows(2).all(|w| w[1] >= w[0]) && r.iter().all(|&v| v <= 1.0 + 1e-15);
        parts.push(check(
            monotone,
            format!("figure {id} ratio {:.6} → {:.12}", r[0], r[r.len() - 1]),
        ));
    }
    join(parts)
}

fn w_and_z() -> Outcome {
    let policy = SeriesPolicy::default();
    let w = w_series(0.5, &policy).map_err(err)?;
    let z = z_central_series(0.125, &policy).map_err(err)?;
    let wc = w_closed(0.5).map_err(err)?;
    let zc = z_central_closed(0.125).map_err(err)?;
    join(vec![
        check(
            w.converged && (w.value - wc).abs() <= 1e-12 && (wc - PI / 2.0).abs() <= 1e-15,
            format!("W(1/2) = {} ({} terms)", w.value, w.terms_used),
        ),
        check(
            z.converged && (z.value - zc).abs() <= 1e-12 && (zc - 2f64.sqrt()).abs() <= 1e-15,
            format!("Z(1/8) = {} ({} terms)", z.value, z.terms_used),
        ),
    ])
}

fn finite_sums() -> Outcome {
    let mut parts = Vec::new();
    for id in SumId::ALL {
        let lo = if id == SumId::S4 { 1 } else { 0 };
        let sums = finite_sum_range(id, lo, 200).map_err(err)?;
        let bad = sums.iter().position(|s| !s.holds()).map(|i| i + lo as usize);
        parts.push(check(
            bad.is_none(),
            match bad {
                None => format!("{} n={lo}..=200 exact", id.name()),
                Some(n) => format!("{} fails at n={n:?}", id.name()),
            },
        ));
    }
    join(parts)
}

fn mittag_leffler() -> Outcome {
    let mut exp = Worst::new();
    for i in 0..=400 {
        let x = -2.0 + 0.01 * i as f64;
        exp.record(rel(ml(1.0, x).map_err(err)?, x.exp()), || format!("x={x}"));
    }
    let mut sq = Worst::new();
    for beta in [0.5, 0.75] {
        for i in 0..=150 {
            let x = -0.5 + 0.01 * i as f64;
            let c = ml_square_cauchy(beta, x, 60).map_err(err)?;
            sq.record(rel(c, ml(beta, x).map_err(err)?.powi(2)), || format!("β={beta} x={x}"));
        }
    }
    let square = ml(0.5, 1.0).map_err(err)?.powi(2);
    let double = ml(0.5, 2.0).map_err(err)?;
    join(vec![
        exp.within(1e-12, "E₁ vs exp"),
        sq.within(1e-8, "Cauchy square"),
        check(
            square < double,
            format!("E_1/2(1)² = {square:.6} < E_1/2(2) = {double:.6}"),
        ),
    ])
}

fn caputo() -> Outcome {
    let beta = 0.5;
    let grid = CaputoGrid::graded(2.0, 10_000, 2.0).map_err(err)?;
    let mut eig = Worst::new();
    for mu in [-1.0, -0.5] {
        let u = grid.sample(|s| ml(beta, mu * s.sqrt())).map_err(err)?;
        for node in grid.nearest_node(0.25)..grid.len() {
            let d = caputo_derivative(&grid, &u, beta, node).map_err(err)?;
            eig.record(rel(d, mu * u[node]), || format!("μ={mu} x={:.4}", grid.mesh()[node]));
        }
    }
    let constant = vec![3.5; grid.len()];
    let zero = (0..grid.len())
        .step_by(97)
        .all(|j| caputo_derivative(&grid, &constant, beta, j) == Ok(0.0));
    let uniform = CaputoGrid::graded(2.0, 10_001, 1.0).map_err(err)?;
    let one = uniform.nearest_node(1.0);
    let line = uniform.sample(Ok).map_err(err)?;
    let d = caputo_derivative(&uniform, &line, beta, one).map_err(err)?;
    join(vec![
        eig.within(1e-2, "D^1/2 E(μx^1/2) = μE"),
        check(zero, "D^1/2 of a constant is 0".into()),
        check(
            uniform.mesh()[one] == 1.0 && (d - 2.0 / PI.sqrt()).abs() <= 1e-4,
            format!("D^1/2(s)(1) = {d}"),
        ),
    ])
}

fn integral_binomial() -> Outcome {
    let cfg = OracleConfig::default();
    let four = integral_binomial_theorem(4.0, &cfg.with_truncation(60.0)).map_err(err)?;
    let six = integral_binomial_theorem(6.0, &cfg.with_truncation(40.0)).map_err(err)?;
    join(vec![
        check((four.value - 16.0).abs() <= 0.05, format!("y=4: {}", four.value)),
        check((six.value - 64.0).abs() <= 0.01, format!("y=6: {}", six.value)),
    ])
}

fn gauss_and_ellipse() -> Outcome {
    let mut w = Worst::new();
    for (p, q) in [(1, 4), (1, 2), (1, 1)] {
        let beta = Beta::rational(p, q).map_err(err)?;
        let b = beta.value();
        for n in 0..=20u32 {
            for k in 0..=n as i64 {
                let g = gauss_at_one(-b * k as f64, -b * (n as i64 - k) as f64, 1.0).map_err(err)?;
                w.record(rel(g, binom(n, k, beta).map_err(err)?), || {
                    format!("β={beta} n={n} k={k}")
                });
            }
        }
    }
    let degenerate = ellipse_perimeter(1.0, 0.0).map_err(err)?;
    let p = ellipse_perimeter(2.0, 1.0).map_err(err)?;
    let arc = ellipse_arc_length(2.0, 1.0, &OracleConfig::default()).map_err(err)?;
    join(vec![
        w.within(1e-10, "Gauss at 1 vs coefficient"),
        check(
            (degenerate - 4.0).abs() <= 1e-10,
            format!("perimeter(1, 0) = {degenerate}"),
        ),
        check(rel(p, arc) <= 1e-8, format!("perimeter(2, 1) = {p}, arc length {arc}")),
    ])
}

fn oracles() -> Outcome {
    let cfg = OracleConfig::default();
    let mut product = Worst::new();
    let mut integral = Worst::new();
    for t in [-0.5, 0.0, 0.5, 1.0, 2.0, 4.0, 7.3] {
        let g = gamma(t + 1.0).map_err(err)?;
        product.record(rel(gamma_limit_product(t, &cfg).map_err(err)?, g), || format!("t={t}"));
        integral.record(rel(gamma_integral(t, &cfg).map_err(err)?, g), || format!("t={t}"));
    }
    join(vec![
        product.within(1e-5, "limit product"),
        integral.within(1e-7, "integral"),
    ])
}

const CRITERIA: [Criterion; 12] = [
    Criterion {
        id: 1,
        name: "exact identity suite",
        limit: Some(Duration::from_secs(10)),
        run: exact_identities,
    },
    Criterion {
        id: 2,
        name: "float identity suite",
        limit: Some(Duration::from_secs(10)),
        run: float_identities,
    },
    Criterion {
        id: 3,
        name: "generating-function routes",
        limit: None,
        run: generating_function_routes,
    },
    Criterion {
        id: 4,
        name: "closed partial sums",
        limit: None,
        run: partial_sums,
    },
    Criterion {
        id: 5,
        name: "asymptotic law",
        limit: Some(Duration::from_secs(5)),
        run: asymptotic_law,
    },
    Criterion {
        id: 6,
        name: "W(1/2) and Z(1/8)",
        limit: None,
        run: w_and_z,
    },
    Criterion {
        id: 7,
        name: "finite sums s1-s5",
        limit: None,
        run: finite_sums,
    },
    Criterion {
        id: 8,
        name: "Mittag-Leffler",
        limit: None,
        run: mittag_leffler,
    },
    Criterion {
        id: 9,
        name: "Caputo eigenfunction",
        limit: None,
        run: caputo,
    },
    Criterion {
        id: 10,
        name: "integral binomial theorem",
        limit: Some(Duration::from_secs(30)),
        run: integral_binomial,
    },
    Criterion {
        id: 11,
        name: "Gauss 2F1 and ellipse",
        limit: None,
        run: gauss_and_ellipse,
    },
    Criterion {
        id: 12,
        name: "oracle cross-checks",
        limit: None,
        run: oracles,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let slow = c.limit.filter(|&l| took > l);
        let (status, detail) = match (&outcome, slow) {
            (Ok(d), None) => ("PASS", d.clone()),
            (Ok(d), Some(l)) => ("FAIL", format!("{d}; took longer than {l:?}")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        let limit = c.limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
        println!(
            "{status} AC-{:02} {} [{:.2}s{limit}] {detail}",
            c.id,
            c.name,
            took.as_secs_f64()
        );
    }
    println!("{} criteria, {failed} failed", CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
