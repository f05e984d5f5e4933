//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL ...` line (visible with `--nocapture`).

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use sinc_deriv::experiments::report::strip_timestamp;
use sinc_deriv::experiments::{
    default_n_list, dominance, fit_rate, run_sweep, verify_inequality, Formula, FunctionId,
    InequalityId, TestFunction, DEFAULT_GRID_SIZE, DEFAULT_WINDOW, PASS_TOLERANCE,
};
use sinc_deriv::{
    basis_term_derivs, select_params, Approximant, DecayProfile, Jet, MapId, MapSpec,
};

fn report(n: u32, name: &str, pass: bool, detail: impl std::fmt::Display) {
    println!(
        "criterion {n}: {} {name}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

fn catalog() -> Vec<MapId> {
    let mut maps = MapId::FIXED.to_vec();
    maps.push(MapId::se5(-1.0, 2.0).unwrap());
    maps.push(MapId::se5(0.0, 10.0).unwrap());
    maps
}

fn sample_fn(map: MapId) -> impl Fn(f64) -> f64 {
    move |t: f64| match map {
        MapId::Se1 | MapId::Se2 | MapId::Imp2 => (t / (1.0 + t)).powf(2.5) * (-t).exp(),
        MapId::Se3 | MapId::Se4 | MapId::Imp4 => 1.0 / (1.0 + t * t),
        MapId::Se5 { a, b } => ((t - a) * (b - t)).powf(2.5) * t.cos(),
    }
}

#[test]
fn criterion_1_interpolation_exactness() {
    let profile = DecayProfile::new(1.0, 1.0, 1.0).unwrap();
    let mut worst = 0.0f64;
    let mut checked = 0;
    for map in catalog() {
        for n in [4, 9, 16] {
            for m in 0..=2 {
                let params = select_params(&profile, n, m).unwrap();
                let f = sample_fn(map);
                let approx = Approximant::build(&f, MapSpec::new(map, m), &params).unwrap();
                for node in approx.nodes() {
                    let v = approx.evaluate_derivative(node.t, 0).unwrap();
                    let want = f(node.t);
                    worst = worst.max((v - want).abs() / (1.0 + want.abs()));
                    checked += 1;
                }
            }
        }
    }
    report(
        1,
        "interpolation exactness",
        worst <= 1e-11,
        format!("{checked} nodes, max |err|/(1+|f|) = {worst:.3e} (tol 1e-11)"),
    );
}

fn poly_derivs(c: &[f64], x: f64, order: usize) -> Vec<f64> {
    let mut cur = c.to_vec();
    let mut out = Vec::with_capacity(order + 1);
    for _ in 0..=order {
        out.push(cur.iter().rev().fold(0.0, |acc, &a| acc * x + a));
        cur = cur
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| i as f64 * a)
            .collect();
    }
    out
}

fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, blocks: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b] += 1;
            go(i + 1, n, blocks, out);
            blocks[b] -= 1;
        }
        blocks.push(1);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn criterion_2_faa_di_bruno_equivalence() {
    let mut rng = StdRng::seed_from_u64(2);
    let order = 5;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let outer: Vec<f64> = (0..7).map(|_| rng.random_range(-3.0..3.0)).collect();
        let inner: Vec<f64> = (0..7).map(|_| rng.random_range(-3.0..3.0)).collect();
        let x = rng.random_range(-1.5..1.5);
        let du = poly_derivs(&inner, x, order);
        let dg = poly_derivs(&outer, du[0], order);
        let jet = Jet::from_derivatives(du[0], &dg)
            .unwrap()
            .compose(&Jet::from_derivatives(x, &du).unwrap())
            .unwrap();
        for j in 0..=order {
            let (want, mag) = if j == 0 {
                (dg[0], dg[0].abs())
            } else {
                set_partitions(j).iter().fold((0.0, 0.0), |(s, a), blocks| {
                    let term = dg[blocks.len()] * blocks.iter().map(|&b| du[b]).product::<f64>();
                    (s + term, a + term.abs())
                })
            };
            if mag > 0.0 {
                worst = worst.max((jet.derivative(j) - want).abs() / mag);
            }
        }
    }
    report(
        2,
        "Faa di Bruno equivalence",
        worst <= 1e-12,
        format!("100 polynomial pairs, j <= 5, max rel err = {worst:.3e} (tol 1e-12)"),
    );
}

#[test]
fn criterion_3_basis_derivatives_vs_finite_differences() {
    let mut rng = StdRng::seed_from_u64(3);
    let maps = catalog();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let map = maps[rng.random_range(0..maps.len())];
        let spec = MapSpec::new(map, 2);
        let h = rng.random_range(0.3..1.0);
        let k: i64 = rng.random_range(-10..=10);
        let t = map.forward(rng.random_range(-3.0..3.0)).unwrap();
        let d = basis_term_derivs(&spec, k, h, t, 2).unwrap();
        let value = |s: f64| basis_term_derivs(&spec, k, h, s, 0).unwrap()[0];
        // fixed step in x = map⁻¹(t), fourth-order stencils
        let step = 1e-3 / map.inverse_jet(t, 1).unwrap().derivative(1);
        let f: Vec<f64> = (-2..=2).map(|i| value(t + i as f64 * step)).collect();
        let fd1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * step);
        let fd2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * step * step);
        for (fd, exact) in [(fd1, d[1]), (fd2, d[2])] {
            worst = worst.max((fd - exact).abs() / exact.abs());
        }
    }
    report(
        3,
        "basis derivatives vs finite differences",
        worst <= 1e-5,
        format!("50 (map, k, t) triples, orders 1-2, max rel err = {worst:.3e} (tol 1e-5)"),
    );
}

#[test]
fn criterion_4_rate_realization() {
    let f = TestFunction::get(FunctionId::Example1);
    let n = default_n_list();
    let mut pass = true;
    let mut parts = Vec::new();
    for formula in [Formula::Improved, Formula::Stenger] {
        let r = run_sweep(&f, formula, 2, &n).unwrap();
        let slope = fit_rate(&r, 0, DEFAULT_WINDOW).unwrap();
        let bound = -0.8 * f.profile(formula).rate_constant();
        pass &= slope <= bound;
        parts.push(format!("{formula} slope {slope:.4} <= {bound:.4}"));
    }
    report(
        4,
        "rate realization (example1, l = 0)",
        pass,
        parts.join(", "),
    );
}

#[test]
fn criterion_5_improvement_claim() {
    let n = default_n_list();
    let mut pass = true;
    let mut parts = Vec::new();
    for id in FunctionId::ALL {
        let f = TestFunction::get(id);
        let se = run_sweep(&f, Formula::Stenger, 2, &n).unwrap();
        let imp = run_sweep(&f, Formula::Improved, 2, &n).unwrap();
        for l in 0..=2 {
            let d = dominance(&se, &imp, l).unwrap();
            let ok = d.compared > 0 && d.fraction() >= 0.9 && d.holds_at_largest;
            pass &= ok;
            parts.push(format!(
                "{id} l={l} {}/{}{}{}",
                d.improved_no_worse,
                d.compared,
                if d.holds_at_largest {
                    ""
                } else {
                    " (lost at largest n)"
                },
                if ok { "" } else { " <-" }
            ));
        }
    }
    report(
        5,
        "improved no worse than classical",
        pass,
        parts.join(", "),
    );
}

#[test]
fn criterion_6_inequality_suite() {
    let mut pass = true;
    let mut parts = Vec::new();
    for id in InequalityId::ALL {
        let v = verify_inequality(id, &id.default_grid(DEFAULT_GRID_SIZE)).unwrap();
        pass &= v <= PASS_TOLERANCE;
        parts.push(format!("{id} {v:.2e}"));
    }
    report(
        6,
        "inequality suite on 2001-point grids",
        pass,
        parts.join(", "),
    );
}

#[test]
fn criterion_7_parameter_rules() {
    // (alpha, beta, d, n, M, N, h) with M, N, h from 50-digit evaluation.
    let table: [(f64, f64, f64, usize, usize, usize, f64); 20] = [
        (0.5, 1.0, 1.57, 50, 50, 25, 0.44417566192379228),
        (0.5, 1.0, 3.14, 50, 50, 25, 0.62815924516867379),
        (2.0, PI / 4.0, 1.57, 40, 16, 40, 0.39623225512317899),
        (2.0, PI / 2.0, 2.07, 40, 32, 40, 0.32171415884290825),
        (1.0, 1.0, 1.0, 10, 10, 10, 0.56049912163979287),
        (0.25, 1.0, 1.0, 7, 7, 2, 1.3398491713813575),
        (1.0, 0.25, 0.5, 7, 2, 7, 0.9474164348509346),
        (3.0, 2.0, 1.2, 33, 22, 33, 0.23899762850058854),
        (0.5, 0.5, PI / 4.0, 1, 1, 1, 2.2214414690791831),
        (1.5, 0.75, 1.0, 100, 50, 100, 0.2046653415892977),
        (0.1, 0.3, 0.9, 17, 17, 6, 1.289649607732274),
        (2.0, 3.0, 1.5, 9, 9, 6, 0.51166335397324424),
        (0.75, 0.5, 2.0, 11, 8, 11, 1.0688298875771142),
        (1.0, 2.0, 3.0, 64, 64, 32, 0.38374751547993318),
        (PI / 4.0, 2.0, 1.57, 25, 25, 10, 0.50119856344566671),
        (0.5, 1.0, 1.57, 5, 5, 3, 1.404606772892111),
        (0.5, 1.0, 3.14, 100, 100, 50, 0.44417566192379228),
        (2.0, PI / 4.0, 1.57, 100, 40, 100, 0.25059928172283336),
        (2.0, PI / 2.0, 2.07, 5, 4, 5, 0.90994505328618607),
        (1.0 / 3.0, 1.0, 1.0, 30, 30, 10, 0.56049912163979289),
    ];
    let mut mismatches = Vec::new();
    for &(alpha, beta, d, n, m_lo, n_hi, h) in &table {
        let p = select_params(&DecayProfile::new(alpha, beta, d).unwrap(), n, 2).unwrap();
        if p.lower != m_lo || p.upper != n_hi || (p.h - h).abs() > 1e-14 * h {
            mismatches.push(format!(
                "({alpha}, {beta}, {d}, {n}) -> ({}, {}, {})",
                p.lower, p.upper, p.h
            ));
        }
    }
    let spot = select_params(&DecayProfile::new(0.5, 1.0, 3.14).unwrap(), 50, 2)
        .unwrap()
        .h;
    let spot_ok = (spot - 0.6281592).abs() <= 1e-7;
    report(
        7,
        "parameter rules",
        mismatches.is_empty() && spot_ok,
        format!(
            "20 tuples, {} mismatches{}; h(1/2, 1, 3.14, 50) = {spot:.10}",
            mismatches.len(),
            if mismatches.is_empty() {
                String::new()
            } else {
                format!(" [{}]", mismatches.join("; "))
            }
        ),
    );
}

fn compare_body(dir: &Path, function: &str, name: &str) -> String {
    let out = dir.join(name);
    let o = Command::new(env!("CARGO_BIN_EXE_sincderiv"))
        .args(["compare", "--function", function, "--m", "2", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    strip_timestamp(&std::fs::read_to_string(out).unwrap())
}

#[test]
fn criterion_8_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for function in ["example1", "example2"] {
        let a = compare_body(dir.path(), function, &format!("{function}_a.csv"));
        let b = compare_body(dir.path(), function, &format!("{function}_b.csv"));
        let same = a.as_bytes() == b.as_bytes();
        pass &= same;
        parts.push(format!(
            "{function} {} bytes {}",
            a.len(),
            if same { "identical" } else { "differ" }
        ));
    }
    report(8, "repeated compare runs", pass, parts.join(", "));
}
