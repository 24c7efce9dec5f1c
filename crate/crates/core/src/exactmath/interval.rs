//! Closed intervals with rational endpoints.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        RatInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Largest absolute value over the interval.
    pub fn mag(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn abs(&self) -> RatInterval {
        if self.contains_zero() {
            RatInterval { lo: BigRational::zero(), hi: self.mag() }
        } else if self.lo.is_positive() {
            self.clone()
        } else {
            -self
        }
    }

    /// Interval quotient; `None` when the divisor straddles zero.
    pub fn div(&self, rhs: &RatInterval) -> Option<RatInterval> {
        if rhs.contains_zero() {
            return None;
        }
        let inv = RatInterval::new(rhs.hi.recip(), rhs.lo.recip());
        Some(self * &inv)
    }

    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (self.lo.to_f64().unwrap_or(f64::NEG_INFINITY), self.hi.to_f64().unwrap_or(f64::INFINITY))
    }
}

impl Add for &RatInterval {
    type Output = RatInterval;

    fn add(self, rhs: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl Sub for &RatInterval {
    type Output = RatInterval;

    fn sub(self, rhs: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl Neg for &RatInterval {
    type Output = RatInterval;

    fn neg(self) -> RatInterval {
        RatInterval { lo: -&self.hi, hi: -&self.lo }
    }
}

impl Mul for &RatInterval {
    type Output = RatInterval;

    fn mul(self, rhs: &RatInterval) -> RatInterval {
        let products = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let lo = products.iter().min().cloned().expect("four products");
        let hi = products.iter().max().cloned().expect("four products");
        RatInterval { lo, hi }
    }
}
