//! Isolation of the largest real root of a squarefree rational polynomial.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::interval::RatInterval;
use super::poly::RatPoly;
use super::MathError;

/// A half-open interval `(lo, hi]` holding exactly one real root of `poly`.
#[derive(Clone, Debug)]
pub struct RealIsolation {
    poly: RatPoly,
    sturm: Vec<RatPoly>,
    lo: BigRational,
    hi: BigRational,
}

impl RealIsolation {
    /// Isolates the largest real root. The polynomial must be squarefree.
    pub fn largest_root(poly: &RatPoly) -> Result<Self, MathError> {
        if poly.degree().unwrap_or(0) == 0 {
            return Err(MathError::NoRealRoot);
        }
        let sturm = poly.sturm_sequence();
        let bound = poly.root_bound();
        let mut lo = -bound.clone();
        let mut hi = bound;
        if RatPoly::count_roots(&sturm, &lo, &hi) == 0 {
            return Err(MathError::NoRealRoot);
        }
        let two = BigRational::from_integer(2.into());
        while RatPoly::count_roots(&sturm, &lo, &hi) > 1 {
            let mid = (&lo + &hi) / &two;
            if RatPoly::count_roots(&sturm, &mid, &hi) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(RealIsolation { poly: poly.clone(), sturm, lo, hi })
    }

    /// Accepts `(lo, hi]` only if it holds exactly one root and no root lies above it.
    pub fn from_bounds(poly: &RatPoly, lo: BigRational, hi: BigRational) -> Option<Self> {
        let sturm = poly.sturm_sequence();
        let bound = poly.root_bound().max(hi.clone());
        (lo < hi && RatPoly::count_roots(&sturm, &lo, &hi) == 1 && RatPoly::count_roots(&sturm, &lo, &bound) == 1)
            .then(|| RealIsolation { poly: poly.clone(), sturm, lo, hi })
    }

    pub fn poly(&self) -> &RatPoly {
        &self.poly
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

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    /// Halves the isolating interval once.
    pub fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        if RatPoly::count_roots(&self.sturm, &self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_to(&mut self, width: &BigRational) {
        while &self.width() > width {
            self.bisect();
        }
    }

    pub fn refined(&self, bits: u32) -> Self {
        let mut out = self.clone();
        let width = BigRational::new(One::one(), num_bigint::BigInt::one() << bits);
        out.refine_to(&width);
        out
    }

    pub fn to_f64(&self) -> f64 {
        let fine = self.refined(60);
        ((&fine.lo + &fine.hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }
}
