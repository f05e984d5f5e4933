//! Real-axis checks of the elementary inequalities behind the convergence
//! theory. Each check evaluates `LHS - RHS` on a grid; a check passes when the
//! largest difference is at most [`PASS_TOLERANCE`].

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use super::corpus::{FunctionId, TestFunction};
use crate::error::{Error, Result};
use crate::maps::{p_jet, MapId};

pub const PASS_TOLERANCE: f64 = 1e-12;

pub const DEFAULT_GRID_SIZE: usize = 2001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InequalityId {
    /// `log(1+e^x)/(1+log(1+e^x)) <= 1/(1+e^{-x})` for real `x`.
    LogRatio,
    /// `1/((1 - e^{-p(t)}) sqrt(4+t^2)) <= 1/(2(1 - e^{-1/2}))` for real `t`.
    SubIneq,
    /// `exp(1/log(1+e^x)) <= exp(1/log 2)` for `x >= 0`.
    DdPlus,
    /// `|1/(-1 + log(1+e^x))| <= 1/(1 - log 2)` for `x < 0`.
    DdMinus,
    /// `|f(t)/g(t)| <= (t/(1+t))^{1/2} e^{-t}` for `example1` with the weight
    /// `g(t) = (1 - e^{-t})^2`, `t > 0`.
    Fg2Decay,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealDomain {
    Line,
    NonNegative,
    Negative,
    Positive,
}

impl RealDomain {
    pub fn contains(&self, x: f64) -> bool {
        x.is_finite()
            && match self {
                RealDomain::Line => true,
                RealDomain::NonNegative => x >= 0.0,
                RealDomain::Negative => x < 0.0,
                RealDomain::Positive => x > 0.0,
            }
    }
}

impl InequalityId {
    pub const ALL: [InequalityId; 5] = [
        InequalityId::LogRatio,
        InequalityId::SubIneq,
        InequalityId::DdPlus,
        InequalityId::DdMinus,
        InequalityId::Fg2Decay,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            InequalityId::LogRatio => "log_ratio",
            InequalityId::SubIneq => "sub_ineq",
            InequalityId::DdPlus => "dd_plus",
            InequalityId::DdMinus => "dd_minus",
            InequalityId::Fg2Decay => "fg2_decay",
        }
    }

    pub fn domain(&self) -> RealDomain {
        match self {
            InequalityId::LogRatio | InequalityId::SubIneq => RealDomain::Line,
            InequalityId::DdPlus => RealDomain::NonNegative,
            InequalityId::DdMinus => RealDomain::Negative,
            InequalityId::Fg2Decay => RealDomain::Positive,
        }
    }

    /// Both sides at `x`.
    pub fn sides(&self, x: f64) -> Result<(f64, f64)> {
        if !self.domain().contains(x) {
            return Err(Error::domain(
                format!("point outside the domain of {}", self.as_str()),
                x,
            ));
        }
        Ok(match self {
            InequalityId::LogRatio => {
                let l = softplus(x);
                (l / (1.0 + l), 1.0 / (1.0 + (-x).exp()))
            }
            InequalityId::SubIneq => {
                let p = p_jet(x, 0)?.value();
                let lhs = 1.0 / (-(-p).exp_m1() * (4.0 + x * x).sqrt());
                (lhs, 1.0 / (2.0 * -(-0.5f64).exp_m1()))
            }
            InequalityId::DdPlus => ((1.0 / softplus(x)).exp(), (1.0 / LN_2).exp()),
            InequalityId::DdMinus => ((1.0 / (softplus(x) - 1.0)).abs(), 1.0 / (1.0 - LN_2)),
            InequalityId::Fg2Decay => {
                let f = (TestFunction::get(FunctionId::Example1).eval)(x);
                let lhs = (f / MapId::Imp2.weight(2, x)?).abs();
                (lhs, (x / (1.0 + x)).sqrt() * (-x).exp())
            }
        })
    }

    /// `size` points covering the domain: log-spaced magnitudes between
    /// `1e-8` and `1e6` (`2^-50..2^50` for `fg2_decay`), mirrored across zero
    /// for the real line.
    pub fn default_grid(&self, size: usize) -> Vec<f64> {
        match self.domain() {
            RealDomain::Line => {
                let pos = size / 2;
                let neg = size.saturating_sub(1 + pos);
                let mut g: Vec<f64> = log_spaced(1e-8, 1e6, neg)
                    .into_iter()
                    .rev()
                    .map(|x| -x)
                    .collect();
                g.push(0.0);
                g.extend(log_spaced(1e-8, 1e6, pos));
                g
            }
            RealDomain::NonNegative => {
                let mut g = vec![0.0];
                g.extend(log_spaced(1e-8, 1e6, size.saturating_sub(1)));
                g
            }
            RealDomain::Negative => log_spaced(1e-8, 1e6, size)
                .into_iter()
                .rev()
                .map(|x| -x)
                .collect(),
            RealDomain::Positive => log_spaced(2f64.powi(-50), 2f64.powi(50), size),
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownInequality(s.to_string()))
    }
}

fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..count)
                .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
                .collect()
        }
    }
}

/// Largest `LHS - RHS` over the grid.
pub fn verify_inequality(id: InequalityId, grid: &[f64]) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for &x in grid {
        let (lhs, rhs) = id.sides(x)?;
        worst = worst.max(lhs - rhs);
    }
    Ok(worst)
}

/// [`verify_inequality`] addressed by the textual id.
pub fn verify_inequality_named(id: &str, grid: &[f64]) -> Result<f64> {
    verify_inequality(id.parse()?, grid)
}
