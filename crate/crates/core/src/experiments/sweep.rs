use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;

use super::corpus::{grid_description, Formula, TestFunction};
use crate::error::{Error, Result};
use crate::maps::MapSpec;
use crate::sincdiff::{select_params, Approximant, DecayProfile};

/// Absolute error level below which double precision noise dominates.
pub const ROUNDOFF_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub n: usize,
    pub h: f64,
    /// `M`
    pub lower: usize,
    /// `N`
    pub upper: usize,
    /// Maximum absolute error over the grid, indexed by derivative order `l`.
    pub max_abs_error: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub function: String,
    pub formula: Formula,
    pub m: usize,
    pub profile: DecayProfile,
    pub grid: String,
    pub rows: Vec<ReportRow>,
    /// Seconds since the Unix epoch when the report was produced.
    pub timestamp: u64,
}

impl ErrorReport {
    pub fn errors(&self, l: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.rows.iter().map(move |r| (r.n, r.max_abs_error[l]))
    }
}

/// The default resolutions `5, 10, ..., 100`.
pub fn default_n_list() -> Vec<usize> {
    (1..=20).map(|i| 5 * i).collect()
}

fn wrap(n: usize, t: f64, l: usize, e: Error) -> Error {
    Error::Sweep {
        n,
        t,
        l,
        source: Box::new(e),
    }
}

/// Maximum absolute errors of orders `0..=m` over the function's grid for each `n`.
pub fn run_sweep(
    func: &TestFunction,
    formula: Formula,
    m: usize,
    n_list: &[usize],
) -> Result<ErrorReport> {
    if n_list.is_empty() {
        return Err(Error::usage("n_list must not be empty"));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::usage("n_list must be strictly ascending"));
    }
    let profile = func.profile(formula);
    let spec = MapSpec::new(func.map(formula), m);
    let grid = func.grid();

    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let params = select_params(&profile, n, m).map_err(|e| wrap(n, f64::NAN, 0, e))?;
        let approx = Approximant::build(func.eval, spec, &params).map_err(|e| {
            let t = match &e {
                Error::Sampling { t, .. } | Error::SingularWeight { t, .. } => *t,
                _ => f64::NAN,
            };
            wrap(n, t, 0, e)
        })?;

        let per_point: Vec<Vec<f64>> = grid
            .par_iter()
            .map(|&t| point_errors(func, &approx, m, t).map_err(|(l, e)| wrap(n, t, l, e)))
            .collect::<Result<_>>()?;

        let mut max_abs_error = vec![0.0f64; m + 1];
        for errs in &per_point {
            for (acc, e) in max_abs_error.iter_mut().zip(errs) {
                *acc = acc.max(*e);
            }
        }
        rows.push(ReportRow {
            n,
            h: params.h,
            lower: params.lower,
            upper: params.upper,
            max_abs_error,
        });
    }

    Ok(ErrorReport {
        function: func.id.to_string(),
        formula,
        m,
        profile,
        grid: grid_description(func.id).to_string(),
        rows,
        timestamp: now_unix(),
    })
}

fn point_errors(
    func: &TestFunction,
    approx: &Approximant,
    m: usize,
    t: f64,
) -> std::result::Result<Vec<f64>, (usize, Error)> {
    let approx_vals = approx.evaluate_derivatives(t).map_err(|e| (0, e))?;
    let exact = func.oracle_all(m, t).map_err(|e| (0, e))?;
    approx_vals
        .iter()
        .zip(&exact)
        .enumerate()
        .map(|(l, (a, o))| {
            let err = (a - o).abs();
            if err.is_finite() {
                Ok(err)
            } else {
                Err((
                    l,
                    Error::Usage(format!("non-finite error: approx {a}, oracle {o}")),
                ))
            }
        })
        .collect()
}

pub(crate) fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Outcome of comparing the improved formula against the classical one at one order.
#[derive(Clone, Debug, PartialEq)]
pub struct Dominance {
    pub l: usize,
    /// Sweep points where both errors exceed the roundoff floor.
    pub compared: usize,
    /// How many of those have improved error ≤ classical error.
    pub improved_no_worse: usize,
    /// Largest compared `n`, if any.
    pub largest_n: Option<usize>,
    /// Whether the improved formula is no worse at `largest_n`.
    pub holds_at_largest: bool,
}

impl Dominance {
    pub fn fraction(&self) -> f64 {
        if self.compared == 0 {
            0.0
        } else {
            self.improved_no_worse as f64 / self.compared as f64
        }
    }
}

pub fn dominance(stenger: &ErrorReport, improved: &ErrorReport, l: usize) -> Result<Dominance> {
    if l > stenger.m || l > improved.m {
        return Err(Error::usage(format!(
            "order {l} not present in both reports"
        )));
    }
    let mut d = Dominance {
        l,
        compared: 0,
        improved_no_worse: 0,
        largest_n: None,
        holds_at_largest: false,
    };
    for (se, imp) in stenger.rows.iter().zip(&improved.rows) {
        if se.n != imp.n {
            return Err(Error::usage(format!(
                "reports disagree on n: {} vs {}",
                se.n, imp.n
            )));
        }
        let (a, b) = (se.max_abs_error[l], imp.max_abs_error[l]);
        if a > ROUNDOFF_FLOOR && b > ROUNDOFF_FLOOR {
            d.compared += 1;
            let ok = b <= a;
            if ok {
                d.improved_no_worse += 1;
            }
            d.largest_n = Some(se.n);
            d.holds_at_largest = ok;
        }
    }
    Ok(d)
}
