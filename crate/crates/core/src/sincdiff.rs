//! Sinc approximation of derivatives through a conformal map.
//!
//! With samples `c_k = f(t_k)/g(t_k)` at `t_k = map(kh)`, the `l`-th derivative
//! is approximated by
//!
//! ```text
//! f^(l)(t) ≈ Σ_{k=-M}^{N} c_k (d/dt)^l [ g(t) S(k,h)(map⁻¹(t)) ]
//! ```
//!
//! where `S(k,h)(x) = sinc(π(x - kh)/h)`. The derivative of every basis term is
//! obtained by jet propagation through `map⁻¹`, the sinc kernel and `g`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::jets::{Jet, MAX_ORDER};
use crate::maps::{MapId, MapSpec};
use crate::summation::CompensatedSum;

/// Decay exponents `alpha`, `beta` and strip half-width `d` of the target function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayProfile {
    pub alpha: f64,
    pub beta: f64,
    pub d: f64,
}

impl DecayProfile {
    pub fn new(alpha: f64, beta: f64, d: f64) -> Result<Self> {
        let profile = Self { alpha, beta, d };
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("d", self.d)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::usage(format!(
                    "decay profile field {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn mu(&self) -> f64 {
        self.alpha.min(self.beta)
    }

    /// `sqrt(π d μ)`, the exponent in the `exp(-sqrt(π d μ n))` error rate.
    pub fn rate_constant(&self) -> f64 {
        (PI * self.d * self.mu()).sqrt()
    }

    /// A warning when `d` lies outside the range covered by the convergence
    /// theory for this map (`d < π/2` for the classical maps, `d < π` for the
    /// improved ones).
    pub fn theorem_range_warning(&self, map: MapId) -> Option<String> {
        let limit = if map.is_improved() { PI } else { PI / 2.0 };
        (self.d >= limit).then(|| {
            format!(
                "d = {} is outside the theorem range d < {:.6} for map {map}",
                self.d, limit
            )
        })
    }
}

/// Mesh size and truncation numbers for one resolution `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SincParams {
    /// Highest derivative order the approximant supports.
    pub m: usize,
    pub n: usize,
    pub mu: f64,
    /// `M`: nodes run over `k = -M..=N`.
    pub lower: usize,
    /// `N`.
    pub upper: usize,
    pub h: f64,
}

impl SincParams {
    pub fn node_count(&self) -> usize {
        self.lower + self.upper + 1
    }
}

/// `ceil(ratio * n)`, snapping products that are integers up to rounding.
fn ceil_scaled(ratio: f64, n: usize) -> usize {
    if ratio == 1.0 {
        return n;
    }
    let x = ratio * n as f64;
    let r = x.round();
    let v = if (x - r).abs() <= 4.0 * f64::EPSILON * x {
        r
    } else {
        x.ceil()
    };
    (v as usize).max(1)
}

/// Parameters from the decay profile: `μ = min(α, β)`,
/// `M = ceil(μ n/α)`, `N = ceil(μ n/β)`, `h = sqrt(π d/(μ n))`.
pub fn select_params(profile: &DecayProfile, n: usize, m: usize) -> Result<SincParams> {
    profile.validate()?;
    if n == 0 {
        return Err(Error::usage("resolution n must be at least 1"));
    }
    if m > MAX_ORDER {
        return Err(Error::usage(format!(
            "derivative order {m} exceeds the maximum jet order {MAX_ORDER}"
        )));
    }
    let mu = profile.mu();
    Ok(SincParams {
        m,
        n,
        mu,
        lower: ceil_scaled(mu / profile.alpha, n),
        upper: ceil_scaled(mu / profile.beta, n),
        h: (PI * profile.d / (mu * n as f64)).sqrt(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub k: i64,
    pub x: f64,
    pub t: f64,
}

fn kernel_term(inverse: &Jet, weight: &Jet, k: i64, h: f64) -> Result<Jet> {
    let u = (*inverse - k as f64 * h) * (PI / h);
    Ok(*weight * u.sinc()?)
}

/// Derivatives of orders `0..=max_order` of `g(t) S(k,h)(map⁻¹(t))` at `t`.
pub fn basis_term_derivs(
    map: &MapSpec,
    k: i64,
    h: f64,
    t: f64,
    max_order: usize,
) -> Result<Vec<f64>> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::usage(format!("mesh size must be positive, got {h}")));
    }
    let inverse = map.id.inverse_jet(t, max_order)?;
    let weight = map.weight_jet(t, max_order)?;
    Ok(kernel_term(&inverse, &weight, k, h)?.derivatives())
}

/// A sampled Sinc approximant ready for derivative evaluation.
#[derive(Clone, Debug)]
pub struct Approximant {
    map: MapSpec,
    params: SincParams,
    nodes: Vec<Node>,
    coefficients: Vec<f64>,
}

impl Approximant {
    /// Samples `f` at the nodes `t_k = map(kh)`, `k = -M..=N`, and stores
    /// `f(t_k)/g(t_k)`.
    pub fn build<F>(f: F, map: MapSpec, params: &SincParams) -> Result<Self>
    where
        F: Fn(f64) -> f64,
    {
        if map.weight_exponent != params.m {
            return Err(Error::usage(format!(
                "weight exponent {} does not match derivative order m = {}",
                map.weight_exponent, params.m
            )));
        }
        let lo = -(params.lower as i64);
        let hi = params.upper as i64;
        let mut nodes = Vec::with_capacity(params.node_count());
        let mut coefficients = Vec::with_capacity(params.node_count());
        for k in lo..=hi {
            let x = k as f64 * params.h;
            let t = map.id.forward(x)?;
            if !map.id.contains(t) {
                return Err(Error::domain(
                    format!("node k = {k} maps onto the interval boundary"),
                    t,
                ));
            }
            if let Some(prev) = nodes.last().map(|n: &Node| n.t) {
                if t <= prev {
                    return Err(Error::domain(
                        format!("node k = {k} does not increase past its predecessor"),
                        t,
                    ));
                }
            }
            let g = map.id.weight(map.weight_exponent, t)?;
            if g == 0.0 {
                return Err(Error::SingularWeight { k, t });
            }
            let value = f(t);
            if !value.is_finite() {
                return Err(Error::Sampling { k, t, value });
            }
            let c = value / g;
            if !c.is_finite() {
                return Err(Error::SingularWeight { k, t });
            }
            nodes.push(Node { k, x, t });
            coefficients.push(c);
        }
        Ok(Self {
            map,
            params: *params,
            nodes,
            coefficients,
        })
    }

    pub fn map(&self) -> &MapSpec {
        &self.map
    }

    pub fn params(&self) -> &SincParams {
        &self.params
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Approximations of `f^(l)(t)` for every `l = 0..=m`.
    pub fn evaluate_derivatives(&self, t: f64) -> Result<Vec<f64>> {
        let m = self.params.m;
        let inverse = self.map.id.inverse_jet(t, m)?;
        let weight = self.map.weight_jet(t, m)?;
        let mut sums = vec![CompensatedSum::new(); m + 1];
        for (node, &c) in self.nodes.iter().zip(&self.coefficients) {
            if c == 0.0 {
                continue;
            }
            let term = kernel_term(&inverse, &weight, node.k, self.params.h)?;
            for (l, sum) in sums.iter_mut().enumerate() {
                sum.add(c * term.derivative(l));
            }
        }
        Ok(sums.iter().map(CompensatedSum::value).collect())
    }

    /// Approximation of `f^(l)(t)`, `l <= m`.
    pub fn evaluate_derivative(&self, t: f64, l: usize) -> Result<f64> {
        if l > self.params.m {
            return Err(Error::usage(format!(
                "derivative order l = {l} exceeds the approximant's m = {}",
                self.params.m
            )));
        }
        Ok(self.evaluate_derivatives(t)?[l])
    }
}
