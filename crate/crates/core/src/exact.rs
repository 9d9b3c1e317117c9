//! Exact arithmetic in the field `Q(sqrt(2), sqrt(3))`.
//!
//! The incompatibility argument is algebraic, so at angles whose sine and
//! cosine are algebraically known (`pi/6`, `pi/4`, `pi/3`) the residuals can
//! be evaluated without any floating point. A field element is stored as
//! `c0 + c1*sqrt(2) + c2*sqrt(3) + c3*sqrt(6)` with rational coefficients;
//! addition and multiplication stay in the field, and division goes through
//! the product of the three nontrivial conjugates, whose product with the
//! element itself is rational.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

type Q = Ratio<i64>;

/// An element of `Q(sqrt(2), sqrt(3))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Algebraic {
    c0: Q,
    c1: Q,
    c2: Q,
    c3: Q,
}

impl Algebraic {
    fn new(c0: Q, c1: Q, c2: Q, c3: Q) -> Self {
        Self { c0, c1, c2, c3 }
    }

    pub fn zero() -> Self {
        Self::new(Q::zero(), Q::zero(), Q::zero(), Q::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::new(Q::from_integer(n), Q::zero(), Q::zero(), Q::zero())
    }

    pub fn rational(numerator: i64, denominator: i64) -> Self {
        Self::new(Q::new(numerator, denominator), Q::zero(), Q::zero(), Q::zero())
    }

    /// `q * sqrt(2)`.
    pub fn sqrt2_times(numerator: i64, denominator: i64) -> Self {
        Self::new(Q::zero(), Q::new(numerator, denominator), Q::zero(), Q::zero())
    }

    /// `q * sqrt(3)`.
    pub fn sqrt3_times(numerator: i64, denominator: i64) -> Self {
        Self::new(Q::zero(), Q::zero(), Q::new(numerator, denominator), Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero() && self.c3.is_zero()
    }

    /// Conjugate flipping the sign of `sqrt(2)`.
    fn conj_sqrt2(&self) -> Self {
        Self::new(self.c0, -self.c1, self.c2, -self.c3)
    }

    /// Conjugate flipping the sign of `sqrt(3)`.
    fn conj_sqrt3(&self) -> Self {
        Self::new(self.c0, self.c1, -self.c2, -self.c3)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inverse(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero in Q(sqrt2, sqrt3)");
        let conj_product = self.conj_sqrt2() * self.conj_sqrt3() * self.conj_sqrt2().conj_sqrt3();
        let norm = *self * conj_product;
        debug_assert!(
            norm.c1.is_zero() && norm.c2.is_zero() && norm.c3.is_zero(),
            "field norm must be rational"
        );
        let inv_norm = Q::one() / norm.c0;
        Self::new(
            conj_product.c0 * inv_norm,
            conj_product.c1 * inv_norm,
            conj_product.c2 * inv_norm,
            conj_product.c3 * inv_norm,
        )
    }

    /// Absolute value; the sign is decided by the numerical embedding, which
    /// is safe for the well-separated values that arise here (exact zeros are
    /// recognized structurally).
    pub fn abs(&self) -> Self {
        if self.is_zero() || self.to_f64() >= 0.0 {
            *self
        } else {
            -*self
        }
    }

    pub fn to_f64(&self) -> f64 {
        let q = |r: Q| *r.numer() as f64 / *r.denom() as f64;
        q(self.c0) + q(self.c1) * 2f64.sqrt() + q(self.c2) * 3f64.sqrt() + q(self.c3) * 6f64.sqrt()
    }
}

impl Add for Algebraic {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.c0 + rhs.c0,
            self.c1 + rhs.c1,
            self.c2 + rhs.c2,
            self.c3 + rhs.c3,
        )
    }
}

impl Sub for Algebraic {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Algebraic {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.c0, -self.c1, -self.c2, -self.c3)
    }
}

impl Mul for Algebraic {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a0, a1, a2, a3) = (self.c0, self.c1, self.c2, self.c3);
        let (b0, b1, b2, b3) = (rhs.c0, rhs.c1, rhs.c2, rhs.c3);
        let two = Q::from_integer(2);
        let three = Q::from_integer(3);
        let six = Q::from_integer(6);
        Self::new(
            a0 * b0 + two * a1 * b1 + three * a2 * b2 + six * a3 * b3,
            a0 * b1 + a1 * b0 + three * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + two * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )
    }
}

impl Div for Algebraic {
    type Output = Self;
    // Field division is multiplication by the conjugate-product inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse()
    }
}

/// The angles whose sine and cosine lie in `Q(sqrt(2), sqrt(3))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExactAngle {
    PiOverSix,
    PiOverFour,
    PiOverThree,
}

impl ExactAngle {
    pub const ALL: [ExactAngle; 3] = [
        ExactAngle::PiOverSix,
        ExactAngle::PiOverFour,
        ExactAngle::PiOverThree,
    ];

    pub fn radians(&self) -> f64 {
        match self {
            ExactAngle::PiOverSix => std::f64::consts::FRAC_PI_6,
            ExactAngle::PiOverFour => std::f64::consts::FRAC_PI_4,
            ExactAngle::PiOverThree => std::f64::consts::FRAC_PI_3,
        }
    }

    pub fn sin(&self) -> Algebraic {
        match self {
            ExactAngle::PiOverSix => Algebraic::rational(1, 2),
            ExactAngle::PiOverFour => Algebraic::sqrt2_times(1, 2),
            ExactAngle::PiOverThree => Algebraic::sqrt3_times(1, 2),
        }
    }

    pub fn cos(&self) -> Algebraic {
        match self {
            ExactAngle::PiOverSix => Algebraic::sqrt3_times(1, 2),
            ExactAngle::PiOverFour => Algebraic::sqrt2_times(1, 2),
            ExactAngle::PiOverThree => Algebraic::rational(1, 2),
        }
    }
}
