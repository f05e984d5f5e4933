//! Conformal maps `t = map(x)` carrying the real line onto the target interval,
//! together with their inverses and weight functions, all lifted to jets.
//!
//! | id     | interval   | map                              | weight `g(t)`          |
//! |--------|------------|----------------------------------|------------------------|
//! | `Se1`  | (0, ∞)     | `e^x`                            | `(t/(1+t))^m`          |
//! | `Se2`  | (0, ∞)     | `arsinh(e^x)`                    | `(1 - e^{-t})^m`       |
//! | `Se3`  | (-∞, ∞)    | `sinh x`                         | `1`                    |
//! | `Se4`  | (-∞, ∞)    | `sinh(log(arsinh(e^x)))`         | `1`                    |
//! | `Se5`  | (a, b)     | `(b-a)/2 tanh(x/2) + (b+a)/2`    | `(t-a)^m (b-t)^m`      |
//! | `Imp2` | (0, ∞)     | `log(1 + e^x)`                   | `(1 - e^{-t})^m`       |
//! | `Imp4` | (-∞, ∞)    | `2 sinh(log(log(1 + e^x)))`      | `1`                    |
//!
//! # Inverses
//!
//! * `Se2`: `t = arsinh(e^x)` gives `e^x = sinh t`, so `x = log(sinh t)`.
//!   For `t > 1` this is evaluated as `t + log1p(-e^{-2t}) - log 2`.
//! * `Se4`: with `s = arsinh(e^x) > 0`, `t = sinh(log s) = (s - 1/s)/2`.
//!   Solving `s^2 - 2ts - 1 = 0` for the positive root gives
//!   `s = t + sqrt(1 + t^2)`, hence `x = log(sinh(t + sqrt(1 + t^2)))`.
//!   For `t < 0` the root is formed as `1/(sqrt(1 + t^2) - t)`.
//! * `Se5`: `x = log((t - a)/(b - t))`.
//! * `Imp2`: `e^x = e^t - 1`, so `x = log(expm1(t))`; for `t > 1` it is
//!   `t + log1p(-e^{-t})`.
//! * `Imp4`: with `L = log(1 + e^x)`, `t = L - 1/L`, so
//!   `L = p(t) = (t + sqrt(4 + t^2))/2` and the inverse is `Imp2⁻¹(p(t))`.
//!   For `t < 0`, `p(t) = 2/(sqrt(4 + t^2) - t)`.

use std::f64::consts::LN_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::jets::Jet;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MapId {
    Se1,
    Se2,
    Se3,
    Se4,
    Se5 { a: f64, b: f64 },
    Imp2,
    Imp4,
}

impl MapId {
    /// Every catalog map with a fixed interval.
    pub const FIXED: [MapId; 6] = [
        MapId::Se1,
        MapId::Se2,
        MapId::Se3,
        MapId::Se4,
        MapId::Imp2,
        MapId::Imp4,
    ];

    pub fn se5(a: f64, b: f64) -> Result<MapId> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::usage(format!(
                "finite-interval map needs finite a < b, got ({a}, {b})"
            )));
        }
        Ok(MapId::Se5 { a, b })
    }

    pub fn interval(&self) -> (f64, f64) {
        match *self {
            MapId::Se1 | MapId::Se2 | MapId::Imp2 => (0.0, f64::INFINITY),
            MapId::Se3 | MapId::Se4 | MapId::Imp4 => (f64::NEG_INFINITY, f64::INFINITY),
            MapId::Se5 { a, b } => (a, b),
        }
    }

    pub fn is_improved(&self) -> bool {
        matches!(self, MapId::Imp2 | MapId::Imp4)
    }

    pub fn contains(&self, t: f64) -> bool {
        let (a, b) = self.interval();
        t.is_finite() && a < t && t < b
    }

    fn check_interior(&self, t: f64) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            let (a, b) = self.interval();
            Err(Error::domain(
                format!("t outside the open interval ({a}, {b}) of map {self}"),
                t,
            ))
        }
    }

    /// `t = map(x)`.
    pub fn forward(&self, x: f64) -> Result<f64> {
        Ok(self.forward_jet(x, 0)?.value())
    }

    /// Jet of the forward map at `x`.
    pub fn forward_jet(&self, x: f64, order: usize) -> Result<Jet> {
        if !x.is_finite() {
            return Err(Error::usage(format!(
                "map argument must be finite, got {x}"
            )));
        }
        let x = Jet::variable(x, order)?;
        match *self {
            MapId::Se1 => x.exp(),
            MapId::Se2 => arsinh_exp(x),
            MapId::Se3 => x.sinh(),
            MapId::Se4 => {
                let s = arsinh_exp(x)?;
                Ok((s - s.recip()?) * 0.5)
            }
            MapId::Se5 { a, b } => {
                let w = b - a;
                if x.value() <= 0.0 {
                    Ok((1.0 + (-x).exp()?).recip()? * w + a)
                } else {
                    Ok(b - (1.0 + x.exp()?).recip()? * w)
                }
            }
            MapId::Imp2 => softplus(x),
            MapId::Imp4 => {
                let l = softplus(x)?;
                Ok(l - l.recip()?)
            }
        }
    }

    /// `x = map⁻¹(t)`.
    pub fn inverse(&self, t: f64) -> Result<f64> {
        Ok(self.inverse_jet(t, 0)?.value())
    }

    /// Jet of the inverse map at `t`, which must lie strictly inside the interval.
    pub fn inverse_jet(&self, t: f64, order: usize) -> Result<Jet> {
        self.check_interior(t)?;
        let t = Jet::variable(t, order)?;
        match *self {
            MapId::Se1 => t.ln(),
            MapId::Se2 => log_sinh(t),
            MapId::Se3 => t.asinh(),
            MapId::Se4 => {
                let r = (t * t + 1.0).sqrt()?;
                let s = if t.value() >= 0.0 {
                    t + r
                } else {
                    (r - t).recip()?
                };
                log_sinh(s)
            }
            MapId::Se5 { a, b } => Ok((t - a).ln()? - (b - t).ln()?),
            MapId::Imp2 => log_expm1(t),
            MapId::Imp4 => log_expm1(p_of(t)?),
        }
    }

    /// Jet of the weight `g(t)` with exponent `m`.
    pub fn weight_jet(&self, m: usize, t: f64, order: usize) -> Result<Jet> {
        self.check_interior(t)?;
        let one = Jet::constant(t, 1.0, order)?;
        if m == 0 {
            return Ok(one);
        }
        let m = i32::try_from(m).map_err(|_| Error::usage("weight exponent too large"))?;
        let t = Jet::variable(t, order)?;
        match *self {
            MapId::Se1 => t.try_div(&(t + 1.0))?.powi(m),
            MapId::Se2 | MapId::Imp2 => (-(-t).exp_m1()?).powi(m),
            MapId::Se3 | MapId::Se4 | MapId::Imp4 => Ok(one),
            MapId::Se5 { a, b } => ((t - a) * (b - t)).powi(m),
        }
    }

    pub fn weight(&self, m: usize, t: f64) -> Result<f64> {
        Ok(self.weight_jet(m, t, 0)?.value())
    }
}

impl fmt::Display for MapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapId::Se1 => f.write_str("SE1"),
            MapId::Se2 => f.write_str("SE2"),
            MapId::Se3 => f.write_str("SE3"),
            MapId::Se4 => f.write_str("SE4"),
            MapId::Se5 { a, b } => write!(f, "SE5({a},{b})"),
            MapId::Imp2 => f.write_str("IMP2"),
            MapId::Imp4 => f.write_str("IMP4"),
        }
    }
}

/// A map together with the exponent of its weight function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MapSpec {
    pub id: MapId,
    pub weight_exponent: usize,
}

impl MapSpec {
    pub fn new(id: MapId, weight_exponent: usize) -> Self {
        Self {
            id,
            weight_exponent,
        }
    }

    pub fn interval(&self) -> (f64, f64) {
        self.id.interval()
    }

    pub fn weight_jet(&self, t: f64, order: usize) -> Result<Jet> {
        self.id.weight_jet(self.weight_exponent, t, order)
    }
}

/// Jet of `p(t) = (t + sqrt(4 + t^2))/2`.
pub fn p_jet(t: f64, order: usize) -> Result<Jet> {
    if !t.is_finite() {
        return Err(Error::usage(format!("p(t) needs finite t, got {t}")));
    }
    p_of(Jet::variable(t, order)?)
}

fn p_of(t: Jet) -> Result<Jet> {
    let r = (t * t + 4.0).sqrt()?;
    if t.value() >= 0.0 {
        Ok((t + r) * 0.5)
    } else {
        Ok((r - t).recip()? * 2.0)
    }
}

/// `log(1 + e^x)` without overflow.
fn softplus(x: Jet) -> Result<Jet> {
    if x.value() > 0.0 {
        Ok(x + (-x).exp()?.ln_1p()?)
    } else {
        x.exp()?.ln_1p()
    }
}

/// `arsinh(e^x)` without overflow.
fn arsinh_exp(x: Jet) -> Result<Jet> {
    if x.value() > 0.0 {
        let e = (x * -2.0).exp()?;
        Ok(x + ((e + 1.0).sqrt()? + 1.0).ln()?)
    } else {
        x.exp()?.asinh()
    }
}

/// `log(sinh s)` for `s > 0`.
fn log_sinh(s: Jet) -> Result<Jet> {
    if s.value() > 1.0 {
        Ok(s + (-(s * -2.0).exp()?).ln_1p()? - LN_2)
    } else {
        s.sinh()?.ln()
    }
}

/// `log(expm1(s))` for `s > 0`.
fn log_expm1(s: Jet) -> Result<Jet> {
    if s.value() > 1.0 {
        Ok(s + (-(-s).exp()?).ln_1p()?)
    } else {
        s.exp_m1()?.ln()
    }
}
