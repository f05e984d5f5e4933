//! The two benchmark functions, their decay profiles and evaluation grids.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::maps::MapId;
use crate::sincdiff::DecayProfile;

/// Highest derivative order the oracle serves.
pub const ORACLE_MAX_ORDER: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionId {
    /// `sqrt(t/(1+t)) e^{-t} (1 - e^{-t})^2` on `(0, ∞)`.
    Example1,
    /// `1/((4 + t^2)(1 + e^{πt/2}))` on `(-∞, ∞)`.
    Example2,
}

impl FunctionId {
    pub const ALL: [FunctionId; 2] = [FunctionId::Example1, FunctionId::Example2];

    pub fn as_str(&self) -> &'static str {
        match self {
            FunctionId::Example1 => "example1",
            FunctionId::Example2 => "example2",
        }
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "example1" => Ok(FunctionId::Example1),
            "example2" => Ok(FunctionId::Example2),
            other => Err(Error::usage(format!("unknown function `{other}`"))),
        }
    }
}

/// Which map family the approximation uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Stenger,
    Improved,
}

impl Formula {
    pub fn as_str(&self) -> &'static str {
        match self {
            Formula::Stenger => "stenger",
            Formula::Improved => "improved",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stenger" => Ok(Formula::Stenger),
            "improved" => Ok(Formula::Improved),
            other => Err(Error::usage(format!("unknown formula `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct TestFunction {
    pub id: FunctionId,
    pub interval: (f64, f64),
    pub eval: fn(f64) -> f64,
    /// Builds the jet of the same expression from a variable jet.
    pub eval_jet: fn(&Jet) -> Result<Jet>,
    pub profile_se: DecayProfile,
    pub profile_imp: DecayProfile,
    pub map_se: MapId,
    pub map_imp: MapId,
}

impl TestFunction {
    pub fn get(id: FunctionId) -> TestFunction {
        match id {
            FunctionId::Example1 => TestFunction {
                id,
                interval: (0.0, f64::INFINITY),
                eval: example1,
                eval_jet: example1_jet,
                profile_se: DecayProfile {
                    alpha: 0.5,
                    beta: 1.0,
                    d: 1.57,
                },
                profile_imp: DecayProfile {
                    alpha: 0.5,
                    beta: 1.0,
                    d: 3.14,
                },
                map_se: MapId::Se2,
                map_imp: MapId::Imp2,
            },
            FunctionId::Example2 => TestFunction {
                id,
                interval: (f64::NEG_INFINITY, f64::INFINITY),
                eval: example2,
                eval_jet: example2_jet,
                profile_se: DecayProfile {
                    alpha: 2.0,
                    beta: PI / 4.0,
                    d: 1.57,
                },
                profile_imp: DecayProfile {
                    alpha: 2.0,
                    beta: PI / 2.0,
                    d: 2.07,
                },
                map_se: MapId::Se4,
                map_imp: MapId::Imp4,
            },
        }
    }

    /// Same maps, profiles and grid, different sampled function.
    pub fn with_function(self, eval: fn(f64) -> f64, eval_jet: fn(&Jet) -> Result<Jet>) -> Self {
        Self {
            eval,
            eval_jet,
            ..self
        }
    }

    pub fn profile(&self, formula: Formula) -> DecayProfile {
        match formula {
            Formula::Stenger => self.profile_se,
            Formula::Improved => self.profile_imp,
        }
    }

    pub fn map(&self, formula: Formula) -> MapId {
        match formula {
            Formula::Stenger => self.map_se,
            Formula::Improved => self.map_imp,
        }
    }

    pub fn contains(&self, t: f64) -> bool {
        t.is_finite() && self.interval.0 < t && t < self.interval.1
    }

    pub fn grid(&self) -> Vec<f64> {
        evaluation_grid(self.id)
    }

    /// `f^(l)(t)` from the jet of the closed-form expression.
    pub fn oracle(&self, l: usize, t: f64) -> Result<f64> {
        if l > ORACLE_MAX_ORDER {
            return Err(Error::usage(format!(
                "oracle order {l} exceeds {ORACLE_MAX_ORDER}"
            )));
        }
        if !self.contains(t) {
            return Err(Error::domain(
                format!("t outside the interval of {}", self.id),
                t,
            ));
        }
        Ok((self.eval_jet)(&Jet::variable(t, l)?)?.derivative(l))
    }

    /// `f^(j)(t)` for `j = 0..=order`.
    pub fn oracle_all(&self, order: usize, t: f64) -> Result<Vec<f64>> {
        if order > ORACLE_MAX_ORDER {
            return Err(Error::usage(format!(
                "oracle order {order} exceeds {ORACLE_MAX_ORDER}"
            )));
        }
        if !self.contains(t) {
            return Err(Error::domain(
                format!("t outside the interval of {}", self.id),
                t,
            ));
        }
        Ok((self.eval_jet)(&Jet::variable(t, order)?)?.derivatives())
    }
}

pub fn corpus() -> Vec<TestFunction> {
    FunctionId::ALL
        .iter()
        .map(|&id| TestFunction::get(id))
        .collect()
}

pub fn oracle_derivative(id: FunctionId, l: usize, t: f64) -> Result<f64> {
    TestFunction::get(id).oracle(l, t)
}

/// `t = 2^i, i = -50..=50` for example1; `±2^i` and `0` for example2.
/// Powers of two are exact in binary floating point.
pub fn evaluation_grid(id: FunctionId) -> Vec<f64> {
    let positive = (-50..=50).map(|i| 2f64.powi(i));
    match id {
        FunctionId::Example1 => positive.collect(),
        FunctionId::Example2 => {
            let mut grid: Vec<f64> = positive.clone().rev().map(|t| -t).collect();
            grid.push(0.0);
            grid.extend(positive);
            grid
        }
    }
}

pub fn grid_description(id: FunctionId) -> &'static str {
    match id {
        FunctionId::Example1 => "t = 2^i, i = -50..50 (101 points)",
        FunctionId::Example2 => "t = +-2^i, i = -50..50, and t = 0 (203 points)",
    }
}

fn example1(t: f64) -> f64 {
    let g = (-t).exp_m1();
    (t / (1.0 + t)).sqrt() * (-t).exp() * g * g
}

fn example1_jet(t: &Jet) -> Result<Jet> {
    let t = *t;
    let root = t.try_div(&(t + 1.0))?.sqrt()?;
    let g = (-t).exp_m1()?;
    Ok(root * (-t).exp()? * g * g)
}

/// For `t > 0` the factor `e^{-πt/2}` is moved to the numerator so that the
/// value underflows to zero instead of overflowing.
fn example2(t: f64) -> f64 {
    let q = 4.0 + t * t;
    if t > 0.0 {
        let e = (-PI * t / 2.0).exp();
        e / (q * (1.0 + e))
    } else {
        1.0 / (q * (1.0 + (PI * t / 2.0).exp()))
    }
}

fn example2_jet(t: &Jet) -> Result<Jet> {
    let t = *t;
    let q = t * t + 4.0;
    if t.value() > 0.0 {
        let e = (t * (-PI / 2.0)).exp()?;
        e.try_div(&(q * (e + 1.0)))
    } else {
        (q * ((t * (PI / 2.0)).exp()? + 1.0)).recip()
    }
}
