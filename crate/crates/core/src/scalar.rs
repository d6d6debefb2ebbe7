//! Precision-polymorphic real and complex scalars.
//!
//! Geometric quantities here are transcendental, so they live in floating
//! point — but at a precision the caller chooses.  [`Real`] abstracts the
//! handful of operations the geometry needs over `f64` (53 bits) and
//! arbitrary-precision [`rug::Float`]; [`Cx`] builds complex arithmetic on
//! top, with principal branches for `sqrt`, `ln` and `acosh`.
//!
//! Precision is carried by values, not by a global: every constant enters
//! a computation by [`Real::lift`]ing an exact `f64` through a scalar that
//! already has the right precision.  Lifting a value that is exact in
//! binary (integers, dyadics, every `f64`) is lossless at any precision
//! `≥ 53`, which is what lets a whole pipeline be rerun at 106 or 212 bits
//! and meaningfully compared against its 53-bit run.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// The real-scalar interface: field ops plus the transcendental functions
/// the hyperbolic formulas use, all precision-preserving.
pub trait Real:
    Clone
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// A value of the same precision as `self`, equal to the given `f64`.
    fn lift(&self, x: f64) -> Self;
    /// Round to double precision.
    fn to_f64(&self) -> f64;
    /// Working precision in bits (53 for `f64`).
    fn prec_bits(&self) -> u32;
    /// π at the precision of `self`.
    fn pi_like(&self) -> Self;
    /// One unit in the last place at 1.0, i.e. `2^(1−prec)`.
    fn epsilon_like(&self) -> Self;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn tanh(self) -> Self;
    fn asinh(self) -> Self;
    fn acosh(self) -> Self;
    fn atan2(self, x: &Self) -> Self;
    fn hypot(self, x: &Self) -> Self;

    fn is_finite(&self) -> bool;
    fn is_nan(&self) -> bool;
}

impl Real for f64 {
    fn lift(&self, x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn prec_bits(&self) -> u32 {
        53
    }
    fn pi_like(&self) -> Self {
        std::f64::consts::PI
    }
    fn epsilon_like(&self) -> Self {
        f64::EPSILON
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    fn asinh(self) -> Self {
        f64::asinh(self)
    }
    fn acosh(self) -> Self {
        f64::acosh(self)
    }
    fn atan2(self, x: &Self) -> Self {
        f64::atan2(self, *x)
    }
    fn hypot(self, x: &Self) -> Self {
        f64::hypot(self, *x)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn is_nan(&self) -> bool {
        f64::is_nan(*self)
    }
}

impl Real for rug::Float {
    fn lift(&self, x: f64) -> Self {
        rug::Float::with_val(self.prec(), x)
    }
    fn to_f64(&self) -> f64 {
        rug::Float::to_f64(self)
    }
    fn prec_bits(&self) -> u32 {
        self.prec()
    }
    fn pi_like(&self) -> Self {
        rug::Float::with_val(self.prec(), rug::float::Constant::Pi)
    }
    fn epsilon_like(&self) -> Self {
        let mut one = rug::Float::with_val(self.prec(), 1.0);
        one >>= self.prec() - 1;
        one
    }
    fn abs(self) -> Self {
        rug::Float::abs(self)
    }
    fn sqrt(self) -> Self {
        rug::Float::sqrt(self)
    }
    fn exp(self) -> Self {
        rug::Float::exp(self)
    }
    fn ln(self) -> Self {
        rug::Float::ln(self)
    }
    fn sin(self) -> Self {
        rug::Float::sin(self)
    }
    fn cos(self) -> Self {
        rug::Float::cos(self)
    }
    fn sinh(self) -> Self {
        rug::Float::sinh(self)
    }
    fn cosh(self) -> Self {
        rug::Float::cosh(self)
    }
    fn tanh(self) -> Self {
        rug::Float::tanh(self)
    }
    fn asinh(self) -> Self {
        rug::Float::asinh(self)
    }
    fn acosh(self) -> Self {
        rug::Float::acosh(self)
    }
    fn atan2(self, x: &Self) -> Self {
        rug::Float::atan2(self, x)
    }
    fn hypot(self, x: &Self) -> Self {
        rug::Float::hypot(self, x)
    }
    fn is_finite(&self) -> bool {
        rug::Float::is_finite(self)
    }
    fn is_nan(&self) -> bool {
        rug::Float::is_nan(self)
    }
}

/// A complex number over any [`Real`] scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx<S: Real> {
    pub re: S,
    pub im: S,
}

impl<S: Real> Cx<S> {
    pub fn new(re: S, im: S) -> Self {
        Cx { re, im }
    }

    /// Lift a double-precision complex value to the carrier's precision.
    pub fn lift(carrier: &S, re: f64, im: f64) -> Self {
        Cx {
            re: carrier.lift(re),
            im: carrier.lift(im),
        }
    }

    pub fn zero_like(&self) -> Self {
        Cx::lift(&self.re, 0.0, 0.0)
    }

    pub fn one_like(&self) -> Self {
        Cx::lift(&self.re, 1.0, 0.0)
    }

    /// `i` at this value's precision.
    pub fn i_like(&self) -> Self {
        Cx::lift(&self.re, 0.0, 1.0)
    }

    pub fn from_real(re: S) -> Self {
        let im = re.lift(0.0);
        Cx { re, im }
    }

    pub fn conj(&self) -> Self {
        Cx {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> S {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn abs(&self) -> S {
        self.re.clone().hypot(&self.im)
    }

    /// Principal argument in `(−π, π]`.
    pub fn arg(&self) -> S {
        self.im.clone().atan2(&self.re)
    }

    pub fn scale(&self, k: f64) -> Self {
        let kk = self.re.lift(k);
        Cx {
            re: self.re.clone() * kk.clone(),
            im: self.im.clone() * kk,
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        Cx {
            re: self.re.clone() / n.clone(),
            im: -self.im.clone() / n,
        }
    }

    /// Principal square root (branch cut on the negative real axis,
    /// `Re ≥ 0` on the result).
    pub fn sqrt(&self) -> Self {
        let zero = self.re.lift(0.0);
        let half = self.re.lift(0.5);
        let r = self.abs();
        if !(r > zero) {
            return self.zero_like();
        }
        let t = ((r.clone() + self.re.clone().abs()) * half).sqrt();
        if self.re >= self.re.lift(0.0) {
            let im = self.im.clone() / (t.clone() + t.clone());
            Cx { re: t, im }
        } else {
            let u = self.im.clone().abs() / (t.clone() + t.clone());
            let im = if self.im < self.im.lift(0.0) { -t } else { t };
            Cx { re: u, im }
        }
    }

    pub fn exp(&self) -> Self {
        let m = self.re.clone().exp();
        Cx {
            re: m.clone() * self.im.clone().cos(),
            im: m * self.im.clone().sin(),
        }
    }

    /// Principal logarithm: `ln|z| + i·arg z` with `arg ∈ (−π, π]`.
    pub fn ln(&self) -> Self {
        Cx {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    pub fn sinh(&self) -> Self {
        Cx {
            re: self.re.clone().sinh() * self.im.clone().cos(),
            im: self.re.clone().cosh() * self.im.clone().sin(),
        }
    }

    pub fn cosh(&self) -> Self {
        Cx {
            re: self.re.clone().cosh() * self.im.clone().cos(),
            im: self.re.clone().sinh() * self.im.clone().sin(),
        }
    }

    /// Principal inverse hyperbolic cosine:
    /// `acosh z = ln(z + √(z−1)·√(z+1))`, image `Re ≥ 0`, `Im ∈ (−π, π]`.
    pub fn acosh(&self) -> Self {
        let one = self.one_like();
        let s = (self.clone() - one.clone()).sqrt() * (self.clone() + one).sqrt();
        (self.clone() + s).ln()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_c64(&self) -> Cx<f64> {
        Cx {
            re: self.re.to_f64(),
            im: self.im.to_f64(),
        }
    }
}

impl<S: Real> Add for Cx<S> {
    type Output = Cx<S>;
    fn add(self, o: Cx<S>) -> Cx<S> {
        Cx {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl<S: Real> Sub for Cx<S> {
    type Output = Cx<S>;
    fn sub(self, o: Cx<S>) -> Cx<S> {
        Cx {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl<S: Real> Mul for Cx<S> {
    type Output = Cx<S>;
    fn mul(self, o: Cx<S>) -> Cx<S> {
        Cx {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl<S: Real> Div for Cx<S> {
    type Output = Cx<S>;
    fn div(self, o: Cx<S>) -> Cx<S> {
        let n = o.norm_sqr();
        let w = self * o.conj();
        Cx {
            re: w.re / n.clone(),
            im: w.im / n,
        }
    }
}

impl<S: Real> Neg for Cx<S> {
    type Output = Cx<S>;
    fn neg(self) -> Cx<S> {
        Cx {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl<S: Real> fmt::Display for Cx<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = self.im.lift(0.0);
        if self.im >= zero {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

/// A fresh `rug` scalar of the requested precision, for seeding pipelines.
pub fn mp_zero(prec: u32) -> rug::Float {
    rug::Float::with_val(prec, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn real_trait_agrees_across_precisions() {
        let x = std::f64::consts::E;
        let mp = mp_zero(106).lift(x);
        for (f, g) in [
            (f64::sqrt(x), mp.clone().sqrt().to_f64()),
            (f64::ln(x), mp.clone().ln().to_f64()),
            (f64::sinh(x), mp.clone().sinh().to_f64()),
            (f64::acosh(x), mp.clone().acosh().to_f64()),
        ] {
            assert!(close(f, g, 1e-14), "{f} vs {g}");
        }
        assert_eq!(mp.prec_bits(), 106);
        assert!(mp.epsilon_like().to_f64() < f64::EPSILON);
        assert!(close(mp.pi_like().to_f64(), std::f64::consts::PI, 1e-15));
    }

    #[test]
    fn complex_field_ops() {
        let z = Cx::new(3.0, 4.0);
        let w = Cx::new(-1.0, 2.0);
        assert_eq!(z.abs(), 5.0);
        let p = z.clone() * w.clone();
        assert_eq!((p.re, p.im), (-11.0, 2.0));
        let q = z.clone() / w.clone();
        let back = q * w;
        assert!(close(back.re, 3.0, 1e-12) && close(back.im, 4.0, 1e-12));
        assert!(close(z.recip().re, 3.0 / 25.0, 1e-15));
    }

    #[test]
    fn principal_branches() {
        // sqrt(−4) = 2i; sqrt(−4 − 0i) stays on the +2i side for im = 0.
        let s = Cx::new(-4.0, 0.0).sqrt();
        assert!(close(s.re, 0.0, 1e-15) && close(s.im, 2.0, 1e-15));
        let s = Cx::new(0.0, 2.0).sqrt();
        assert!(close(s.re, 1.0, 1e-12) && close(s.im, 1.0, 1e-12));
        let s = Cx::new(0.0, -2.0).sqrt();
        assert!(close(s.re, 1.0, 1e-12) && close(s.im, -1.0, 1e-12));
        // ln(−1) = iπ (principal).
        let l = Cx::new(-1.0, 0.0).ln();
        assert!(close(l.re, 0.0, 1e-15) && close(l.im, std::f64::consts::PI, 1e-15));
        // acosh(cosh(1 + i/3)) recovers 1 + i/3.
        let z = Cx::new(1.0, 1.0 / 3.0);
        let back = z.cosh().acosh();
        assert!(close(back.re, 1.0, 1e-12) && close(back.im, 1.0 / 3.0, 1e-12));
        // acosh of a real in (−1, 1) is purely imaginary.
        let a = Cx::new(0.5, 0.0).acosh();
        assert!(close(a.re, 0.0, 1e-12) && close(a.im.abs(), (0.5f64).acos(), 1e-12));
    }

    #[test]
    fn exp_ln_sinh_consistency() {
        let zs = [
            Cx::new(0.3, -0.9),
            Cx::new(-1.5, 2.2),
            Cx::new(2.0, 3.0),
            Cx::new(-0.1, -3.1),
        ];
        for z in zs {
            let r = z.exp().ln();
            // exp∘ln is identity up to 2πi; ln∘exp lands in the principal strip.
            assert!(close(r.re, z.re, 1e-12));
            let dtau = (r.im - z.im) / (2.0 * std::f64::consts::PI);
            assert!(close(dtau, dtau.round(), 1e-12));
            // sinh via exponentials.
            let e = (z.exp() - (-z.clone()).exp()).scale(0.5);
            let s = z.sinh();
            assert!(close(e.re, s.re, 1e-12) && close(e.im, s.im, 1e-12));
        }
    }

    #[test]
    fn mp_complex_matches_f64() {
        let carrier = mp_zero(212);
        let z64 = Cx::new(0.7, -1.9);
        let zmp = Cx::lift(&carrier, 0.7, -1.9);
        let w64 = z64.acosh();
        let wmp = zmp.acosh().to_c64();
        assert!(close(w64.re, wmp.re, 1e-13) && close(w64.im, wmp.im, 1e-13));
    }
}
