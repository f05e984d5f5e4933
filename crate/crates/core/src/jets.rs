//! Truncated Taylor arithmetic ("jets").
//!
//! A [`Jet`] of order `K` anchored at `x0` stores the normalized Taylor
//! coefficients `c_j = F^(j)(x0) / j!` for `j = 0..=K`. Arithmetic and the
//! elementary functions below propagate these coefficients exactly (up to
//! roundoff) through compositions, which is Faà di Bruno's formula evaluated
//! by recurrence instead of by partition enumeration.
//!
//! Jets are `Copy` and stored inline; the order is bounded by [`MAX_ORDER`].
//! Operator overloads (`+`, `-`, `*`) assume both operands share anchor and
//! order and panic otherwise. The `try_*` methods report the mismatch as an
//! [`Error::Usage`] instead.

// Recurrences index several coefficient arrays at once; `!(x > 0.0)` also rejects NaN.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported jet order.
pub const MAX_ORDER: usize = 8;

const CAP: usize = MAX_ORDER + 1;

/// Radius below which `sinc` is evaluated through its even power series.
pub const SINC_SERIES_RADIUS: f64 = 1.0;

/// Number of terms beyond the constant in the `sinc` power series.
const SINC_SERIES_TERMS: usize = 10;

/// Divisors with `|b.c0|` below this are treated as zero.
const DIV_GUARD: f64 = 1e-300;

const FACTORIALS: [f64; CAP] = {
    let mut f = [1.0; CAP];
    let mut i = 1;
    while i < CAP {
        f[i] = f[i - 1] * i as f64;
        i += 1;
    }
    f
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    anchor: f64,
    order: usize,
    coeffs: [f64; CAP],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Elementary functions that can be lifted to jets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ElemFn {
    Exp,
    Ln,
    Ln1p,
    ExpM1,
    Sqrt,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Asinh,
    Sinc,
    Powf(f64),
}

impl ElemFn {
    pub fn name(&self) -> &'static str {
        match self {
            ElemFn::Exp => "exp",
            ElemFn::Ln => "log",
            ElemFn::Ln1p => "log1p",
            ElemFn::ExpM1 => "expm1",
            ElemFn::Sqrt => "sqrt",
            ElemFn::Sin => "sin",
            ElemFn::Cos => "cos",
            ElemFn::Sinh => "sinh",
            ElemFn::Cosh => "cosh",
            ElemFn::Asinh => "asinh",
            ElemFn::Sinc => "sinc",
            ElemFn::Powf(_) => "pow",
        }
    }

    /// Plain `f64` evaluation of the same function.
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ElemFn::Exp => x.exp(),
            ElemFn::Ln => x.ln(),
            ElemFn::Ln1p => x.ln_1p(),
            ElemFn::ExpM1 => x.exp_m1(),
            ElemFn::Sqrt => x.sqrt(),
            ElemFn::Sin => x.sin(),
            ElemFn::Cos => x.cos(),
            ElemFn::Sinh => x.sinh(),
            ElemFn::Cosh => x.cosh(),
            ElemFn::Asinh => x.asinh(),
            ElemFn::Sinc => {
                if x == 0.0 {
                    1.0
                } else {
                    x.sin() / x
                }
            }
            ElemFn::Powf(r) => x.powf(r),
        }
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::usage(format!(
            "jet order {order} exceeds the maximum {MAX_ORDER}"
        )));
    }
    Ok(())
}

impl Jet {
    /// The identity function `x` expanded at `x0`.
    pub fn variable(x0: f64, order: usize) -> Result<Self> {
        check_order(order)?;
        let mut coeffs = [0.0; CAP];
        coeffs[0] = x0;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Ok(Self {
            anchor: x0,
            order,
            coeffs,
        })
    }

    pub fn constant(anchor: f64, value: f64, order: usize) -> Result<Self> {
        check_order(order)?;
        let mut coeffs = [0.0; CAP];
        coeffs[0] = value;
        Ok(Self {
            anchor,
            order,
            coeffs,
        })
    }

    /// Builds a jet from normalized Taylor coefficients `c_0..=c_K`.
    pub fn from_coeffs(anchor: f64, coeffs: &[f64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::usage("a jet needs at least one coefficient"));
        }
        let order = coeffs.len() - 1;
        check_order(order)?;
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::usage(format!("non-finite jet coefficient {bad}")));
        }
        let mut c = [0.0; CAP];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(Self {
            anchor,
            order,
            coeffs: c,
        })
    }

    /// Builds a jet from plain derivatives `F(x0), F'(x0), ..., F^(K)(x0)`.
    pub fn from_derivatives(anchor: f64, derivs: &[f64]) -> Result<Self> {
        let coeffs: Vec<f64> = derivs
            .iter()
            .enumerate()
            .map(|(j, d)| d / FACTORIALS.get(j).copied().unwrap_or(f64::INFINITY))
            .collect();
        Self::from_coeffs(anchor, &coeffs)
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs[..=self.order]
    }

    /// `F^(j)(anchor)` for `j = 0..=K`.
    pub fn derivatives(&self) -> Vec<f64> {
        self.coeffs()
            .iter()
            .zip(FACTORIALS)
            .map(|(c, f)| c * f)
            .collect()
    }

    pub fn derivative(&self, j: usize) -> f64 {
        if j > self.order {
            0.0
        } else {
            self.coeffs[j] * FACTORIALS[j]
        }
    }

    fn same_shape(&self, value: f64) -> Self {
        let mut coeffs = [0.0; CAP];
        coeffs[0] = value;
        Self {
            anchor: self.anchor,
            order: self.order,
            coeffs,
        }
    }

    fn compatible(&self, other: &Jet) -> Result<()> {
        if self.order != other.order {
            return Err(Error::usage(format!(
                "jet order mismatch: {} vs {}",
                self.order, other.order
            )));
        }
        if self.anchor != other.anchor {
            return Err(Error::usage(format!(
                "jet anchor mismatch: {:e} vs {:e}",
                self.anchor, other.anchor
            )));
        }
        Ok(())
    }

    fn finish(self, op: &'static str, input: f64) -> Result<Self> {
        if self.coeffs().iter().all(|c| c.is_finite()) {
            Ok(self)
        } else {
            Err(Error::Singularity { op, value: input })
        }
    }

    pub fn arith(&self, other: &Jet, op: ArithOp) -> Result<Jet> {
        match op {
            ArithOp::Add => self.try_add(other),
            ArithOp::Sub => self.try_sub(other),
            ArithOp::Mul => self.try_mul(other),
            ArithOp::Div => self.try_div(other),
        }
    }

    pub fn try_add(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        let mut out = *self;
        for (o, b) in out.coeffs[..=self.order].iter_mut().zip(other.coeffs()) {
            *o += b;
        }
        out.finish("add", self.value())
    }

    pub fn try_sub(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        let mut out = *self;
        for (o, b) in out.coeffs[..=self.order].iter_mut().zip(other.coeffs()) {
            *o -= b;
        }
        out.finish("sub", self.value())
    }

    /// Cauchy product truncated at the jet order.
    pub fn try_mul(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut out = self.same_shape(0.0);
        for k in 0..=self.order {
            out.coeffs[k] = (0..=k).map(|j| a[j] * b[k - j]).sum();
        }
        out.finish("mul", self.value())
    }

    pub fn try_div(&self, other: &Jet) -> Result<Jet> {
        self.compatible(other)?;
        let b0 = other.coeffs[0];
        if b0.abs() < DIV_GUARD {
            return Err(Error::Singularity {
                op: "div",
                value: b0,
            });
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut q = self.same_shape(a[0] / b0);
        for k in 1..=self.order {
            let s: f64 = (1..=k).map(|j| b[j] * q.coeffs[k - j]).sum();
            q.coeffs[k] = (a[k] - s) / b0;
        }
        q.finish("div", b0)
    }

    pub fn recip(&self) -> Result<Jet> {
        self.same_shape(1.0).try_div(self)
    }

    pub fn apply(&self, f: ElemFn) -> Result<Jet> {
        match f {
            ElemFn::Exp => self.exp(),
            ElemFn::Ln => self.ln(),
            ElemFn::Ln1p => self.ln_1p(),
            ElemFn::ExpM1 => self.exp_m1(),
            ElemFn::Sqrt => self.sqrt(),
            ElemFn::Sin => self.sin(),
            ElemFn::Cos => self.cos(),
            ElemFn::Sinh => self.sinh(),
            ElemFn::Cosh => self.cosh(),
            ElemFn::Asinh => self.asinh(),
            ElemFn::Sinc => self.sinc(),
            ElemFn::Powf(r) => self.powf(r),
        }
    }

    pub fn exp(&self) -> Result<Jet> {
        let a = &self.coeffs;
        let mut b = self.same_shape(a[0].exp());
        for k in 1..=self.order {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * b.coeffs[k - j]).sum();
            b.coeffs[k] = s / k as f64;
        }
        b.finish("exp", a[0])
    }

    pub fn exp_m1(&self) -> Result<Jet> {
        let mut b = self.exp()?;
        b.coeffs[0] = self.coeffs[0].exp_m1();
        Ok(b)
    }

    /// `log` of `self` where `base0` is the value the recurrence divides by.
    fn log_with(&self, value: f64, base0: f64, op: &'static str) -> Result<Jet> {
        let a = &self.coeffs;
        let mut b = self.same_shape(value);
        for k in 1..=self.order {
            let s: f64 = (1..k).map(|j| j as f64 * b.coeffs[j] * a[k - j]).sum();
            b.coeffs[k] = (a[k] - s / k as f64) / base0;
        }
        b.finish(op, a[0])
    }

    pub fn ln(&self) -> Result<Jet> {
        let a0 = self.coeffs[0];
        if !(a0 > 0.0) {
            return Err(Error::Singularity {
                op: "log",
                value: a0,
            });
        }
        self.log_with(a0.ln(), a0, "log")
    }

    pub fn ln_1p(&self) -> Result<Jet> {
        let a0 = self.coeffs[0];
        if !(a0 > -1.0) {
            return Err(Error::Singularity {
                op: "log1p",
                value: a0,
            });
        }
        self.log_with(a0.ln_1p(), 1.0 + a0, "log1p")
    }

    pub fn sqrt(&self) -> Result<Jet> {
        let a0 = self.coeffs[0];
        if !(a0 > 0.0) {
            return Err(Error::Singularity {
                op: "sqrt",
                value: a0,
            });
        }
        let a = &self.coeffs;
        let mut b = self.same_shape(a0.sqrt());
        let two_b0 = 2.0 * b.coeffs[0];
        for k in 1..=self.order {
            let s: f64 = (1..k).map(|j| b.coeffs[j] * b.coeffs[k - j]).sum();
            b.coeffs[k] = (a[k] - s) / two_b0;
        }
        b.finish("sqrt", a0)
    }

    /// `(sin, cos)` computed by the coupled recurrence.
    pub fn sin_cos(&self) -> Result<(Jet, Jet)> {
        let a = &self.coeffs;
        let (s0, c0) = a[0].sin_cos();
        let mut s = self.same_shape(s0);
        let mut c = self.same_shape(c0);
        for k in 1..=self.order {
            let (mut ss, mut cc) = (0.0, 0.0);
            for j in 1..=k {
                let ja = j as f64 * a[j];
                ss += ja * c.coeffs[k - j];
                cc += ja * s.coeffs[k - j];
            }
            s.coeffs[k] = ss / k as f64;
            c.coeffs[k] = -cc / k as f64;
        }
        Ok((s.finish("sin", a[0])?, c.finish("cos", a[0])?))
    }

    pub fn sin(&self) -> Result<Jet> {
        Ok(self.sin_cos()?.0)
    }

    pub fn cos(&self) -> Result<Jet> {
        Ok(self.sin_cos()?.1)
    }

    pub fn sinh_cosh(&self) -> Result<(Jet, Jet)> {
        let a = &self.coeffs;
        let mut s = self.same_shape(a[0].sinh());
        let mut c = self.same_shape(a[0].cosh());
        for k in 1..=self.order {
            let (mut ss, mut cc) = (0.0, 0.0);
            for j in 1..=k {
                let ja = j as f64 * a[j];
                ss += ja * c.coeffs[k - j];
                cc += ja * s.coeffs[k - j];
            }
            s.coeffs[k] = ss / k as f64;
            c.coeffs[k] = cc / k as f64;
        }
        Ok((s.finish("sinh", a[0])?, c.finish("cosh", a[0])?))
    }

    pub fn sinh(&self) -> Result<Jet> {
        Ok(self.sinh_cosh()?.0)
    }

    pub fn cosh(&self) -> Result<Jet> {
        Ok(self.sinh_cosh()?.1)
    }

    /// Uses `sqrt(1 + a^2) * b' = a'`.
    pub fn asinh(&self) -> Result<Jet> {
        let a = &self.coeffs;
        let q = (*self * *self + 1.0).sqrt()?;
        let mut b = self.same_shape(a[0].asinh());
        for k in 1..=self.order {
            let s: f64 = (1..k)
                .map(|i| q.coeffs[i] * (k - i) as f64 * b.coeffs[k - i])
                .sum();
            b.coeffs[k] = (k as f64 * a[k] - s) / (k as f64 * q.coeffs[0]);
        }
        b.finish("asinh", a[0])
    }

    /// `sin(u)/u`, with the removable singularity at `u = 0` handled by the
    /// even power series whenever `|u0| <= SINC_SERIES_RADIUS`.
    pub fn sinc(&self) -> Result<Jet> {
        let u0 = self.coeffs[0];
        if u0.abs() <= SINC_SERIES_RADIUS {
            let w = *self * *self;
            // Horner in w over sum_i (-1)^i w^i / (2i+1)!
            let mut acc = self.same_shape(sinc_series_coeff(SINC_SERIES_TERMS));
            for i in (0..SINC_SERIES_TERMS).rev() {
                acc = acc * w + sinc_series_coeff(i);
            }
            acc.finish("sinc", u0)
        } else {
            self.sin()?.try_div(self)
        }
    }

    /// Real power. Integer exponents accept any base; others require `c0 > 0`.
    pub fn powf(&self, r: f64) -> Result<Jet> {
        if r.fract() == 0.0 && r.abs() <= i32::MAX as f64 {
            return self.powi(r as i32);
        }
        let a = &self.coeffs;
        let a0 = a[0];
        if !(a0 > 0.0) {
            return Err(Error::Singularity {
                op: "pow",
                value: a0,
            });
        }
        let mut b = self.same_shape(a0.powf(r));
        for k in 1..=self.order {
            let s: f64 = (1..=k)
                .map(|j| ((r + 1.0) * j as f64 - k as f64) * a[j] * b.coeffs[k - j])
                .sum();
            b.coeffs[k] = s / (k as f64 * a0);
        }
        b.finish("pow", a0)
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: i32) -> Result<Jet> {
        let mut result = self.same_shape(1.0);
        let mut base = *self;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        if n < 0 {
            result = result.recip()?;
        }
        result.finish("pow", self.coeffs[0])
    }

    /// Composes `self`, a jet of some outer function `G` anchored at
    /// `inner.value()`, with `inner`, giving the jet of `G(inner(x))`.
    pub fn compose(&self, inner: &Jet) -> Result<Jet> {
        if self.anchor != inner.value() {
            return Err(Error::usage(format!(
                "outer jet anchored at {:e}, inner value is {:e}",
                self.anchor,
                inner.value()
            )));
        }
        if self.order < inner.order {
            return Err(Error::usage(format!(
                "outer jet order {} below inner order {}",
                self.order, inner.order
            )));
        }
        let mut shift = *inner;
        shift.coeffs[0] = 0.0;
        let mut acc = inner.same_shape(self.coeffs[inner.order]);
        for j in (0..inner.order).rev() {
            acc = acc * shift + self.coeffs[j];
        }
        acc.finish("compose", inner.value())
    }
}

fn sinc_series_coeff(i: usize) -> f64 {
    let sign = if i.is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut fact = 1.0;
    for k in 2..=(2 * i + 1) {
        fact *= k as f64;
    }
    sign / fact
}

fn assert_compatible(a: &Jet, b: &Jet) {
    if let Err(e) = a.compatible(b) {
        panic!("{e}");
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        assert_compatible(&self, &rhs);
        for k in 0..=self.order {
            self.coeffs[k] += rhs.coeffs[k];
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        assert_compatible(&self, &rhs);
        for k in 0..=self.order {
            self.coeffs[k] -= rhs.coeffs[k];
        }
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        assert_compatible(&self, &rhs);
        let mut out = self.same_shape(0.0);
        for k in 0..=self.order {
            out.coeffs[k] = (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum();
        }
        out
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        for c in &mut self.coeffs[..=self.order] {
            *c = -*c;
        }
        self
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.coeffs[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.coeffs[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, rhs: f64) -> Jet {
        for c in &mut self.coeffs[..=self.order] {
            *c *= rhs;
        }
        self
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(mut self, rhs: f64) -> Jet {
        for c in &mut self.coeffs[..=self.order] {
            *c /= rhs;
        }
        self
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        rhs + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        -rhs + self
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs * self
    }
}
