//! Benchmark corpus, convergence sweeps, rate fits, inequality checks and
//! CSV output.

pub mod corpus;
pub mod inequalities;
pub mod rate;
pub mod report;
pub mod sweep;

pub use corpus::{
    corpus, evaluation_grid, grid_description, oracle_derivative, Formula, FunctionId,
    TestFunction, ORACLE_MAX_ORDER,
};
pub use inequalities::{verify_inequality, InequalityId, DEFAULT_GRID_SIZE, PASS_TOLERANCE};
pub use rate::{fit_rate, least_squares_slope, theoretical_slope, DEFAULT_WINDOW};
pub use report::{read_csv, write_compare_csv, write_csv, write_tabulate_csv, TabulatedPoint};
pub use sweep::{
    default_n_list, dominance, run_sweep, Dominance, ErrorReport, ReportRow, ROUNDOFF_FLOOR,
};

use crate::error::{Error, Result};
use crate::maps::MapSpec;
use crate::sincdiff::{select_params, Approximant};

/// `f^(l)` approximated at `points` with resolution `n`, next to the oracle.
pub fn tabulate(
    func: &TestFunction,
    formula: Formula,
    m: usize,
    l: usize,
    n: usize,
    points: &[f64],
) -> Result<Vec<TabulatedPoint>> {
    if l > m {
        return Err(Error::Usage(format!("order l = {l} exceeds m = {m}")));
    }
    if let Some(&t) = points.iter().find(|&&t| !func.contains(t)) {
        return Err(Error::Domain {
            what: format!("point outside the interval of {}", func.id),
            value: t,
        });
    }
    let params = select_params(&func.profile(formula), n, m)?;
    let approx = Approximant::build(func.eval, MapSpec::new(func.map(formula), m), &params)?;
    points
        .iter()
        .map(|&t| {
            let a = approx.evaluate_derivative(t, l)?;
            let o = func.oracle(l, t)?;
            Ok(TabulatedPoint {
                t,
                approx: a,
                oracle: o,
                abs_error: (a - o).abs(),
            })
        })
        .collect()
}
