//! Fixtures shared by the benchmarks.

use sinc_deriv::experiments::{Formula, FunctionId, TestFunction};
use sinc_deriv::{select_params, Approximant, MapSpec, Result};

/// The benchmark function with the map and parameters of `formula` at resolution `n`.
pub fn approximant(id: FunctionId, formula: Formula, n: usize, m: usize) -> Result<Approximant> {
    let func = TestFunction::get(id);
    let params = select_params(&func.profile(formula), n, m)?;
    Approximant::build(func.eval, MapSpec::new(func.map(formula), m), &params)
}

/// A handful of interior points spread over several orders of magnitude.
pub fn probe_points(id: FunctionId) -> Vec<f64> {
    let grid = TestFunction::get(id).grid();
    grid.iter().step_by(grid.len() / 8).copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        for id in FunctionId::ALL {
            for formula in [Formula::Stenger, Formula::Improved] {
                let a = approximant(id, formula, 20, 2).unwrap();
                for t in probe_points(id) {
                    assert!(a
                        .evaluate_derivatives(t)
                        .unwrap()
                        .iter()
                        .all(|v| v.is_finite()));
                }
            }
        }
    }
}
