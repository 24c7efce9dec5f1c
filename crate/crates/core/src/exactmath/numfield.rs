//! Arithmetic in ℚ(β) for a real algebraic β given by its minimal polynomial
//! and an isolating interval.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::interval::RatInterval;
use super::poly::RatPoly;
use super::realroot::RealIsolation;
use super::MathError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn of_rational(x: &BigRational) -> Sign {
        match x.cmp(&BigRational::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

/// ℚ(β) where β is the root isolated by `isolation` of an irreducible monic
/// polynomial. The isolation is refined lazily and shared between elements.
#[derive(Debug)]
pub struct NumberField {
    minpoly: RatPoly,
    isolation: RwLock<RealIsolation>,
    approx: f64,
}

impl NumberField {
    /// The caller guarantees `minpoly` is irreducible over ℚ.
    pub fn new(minpoly: &RatPoly, isolation: RealIsolation) -> Arc<Self> {
        let minpoly = minpoly.monic();
        let approx = isolation.to_f64();
        let isolation = RwLock::new(isolation.refined(64));
        Arc::new(NumberField { minpoly, isolation, approx })
    }

    /// ℚ(β) for the largest real root β of an irreducible polynomial.
    pub fn from_largest_root(minpoly: &RatPoly) -> Result<Arc<Self>, MathError> {
        if minpoly.is_irreducible() != Some(true) {
            return Err(MathError::ReduciblePolynomial(minpoly.to_string()));
        }
        Ok(Self::new(minpoly, RealIsolation::largest_root(minpoly)?))
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    pub fn minpoly(&self) -> &RatPoly {
        &self.minpoly
    }

    pub fn approx(&self) -> f64 {
        self.approx
    }

    pub fn isolation(&self) -> RealIsolation {
        self.isolation.read().expect("isolation lock").clone()
    }

    fn refine_past(&self, width: &BigRational) {
        let mut iso = self.isolation.write().expect("isolation lock");
        if &iso.width() >= width {
            iso.bisect();
        }
    }
}

#[derive(Clone)]
pub struct NumberFieldElement {
    field: Arc<NumberField>,
    poly: RatPoly,
}

impl NumberFieldElement {
    pub fn from_poly(field: &Arc<NumberField>, poly: &RatPoly) -> Self {
        NumberFieldElement { field: field.clone(), poly: poly.rem(&field.minpoly) }
    }

    pub fn from_rational(field: &Arc<NumberField>, x: BigRational) -> Self {
        NumberFieldElement { field: field.clone(), poly: RatPoly::constant(x) }
    }

    pub fn from_int(field: &Arc<NumberField>, x: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(x.into()))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        NumberFieldElement { field: field.clone(), poly: RatPoly::zero() }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// β itself.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, &RatPoly::x())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Coordinates in the power basis 1, β, β², …
    pub fn coords(&self) -> Vec<BigRational> {
        (0..self.field.degree()).map(|k| self.poly.coeff(k)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.poly.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.poly.coeff(0)),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self, MathError> {
        if self.is_zero() {
            return Err(MathError::DivisionByZero);
        }
        let (g, s, _) = RatPoly::ext_gcd(&self.poly, &self.field.minpoly);
        debug_assert_eq!(g, RatPoly::one());
        Ok(Self::from_poly(&self.field, &s))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, MathError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        NumberFieldElement { field: self.field.clone(), poly: self.poly.scale(c) }
    }

    /// Encloses the value using the current isolating interval of β.
    pub fn enclose(&self) -> RatInterval {
        let beta = self.field.isolation().interval();
        enclose_with(&self.poly, &beta)
    }

    /// Encloses the value for a given enclosure of β.
    pub fn enclose_in(&self, beta: &RatInterval) -> RatInterval {
        enclose_with(&self.poly, beta)
    }

    pub fn sign(&self) -> Sign {
        nf_sign(self)
    }

    pub fn to_f64(&self) -> f64 {
        let b = self.field.approx;
        self.poly.coeffs().iter().rev().fold(0.0, |acc, c| acc * b + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

pub(crate) fn enclose_with(poly: &RatPoly, beta: &RatInterval) -> RatInterval {
    poly.coeffs().iter().rev().fold(RatInterval::point(BigRational::zero()), |acc, c| {
        &(&acc * beta) + &RatInterval::point(c.clone())
    })
}

/// Exact sign of an element: zero is decided symbolically, otherwise the
/// isolating interval of β is refined until an enclosure excludes zero.
pub fn nf_sign(x: &NumberFieldElement) -> Sign {
    if x.is_zero() {
        return Sign::Zero;
    }
    loop {
        let iso = x.field.isolation();
        let enclosure = enclose_with(&x.poly, &iso.interval());
        if !enclosure.contains_zero() {
            return if enclosure.lo().is_positive() { Sign::Positive } else { Sign::Negative };
        }
        x.field.refine_past(&iso.width());
    }
}

fn same_field(a: &NumberFieldElement, b: &NumberFieldElement) {
    debug_assert!(Arc::ptr_eq(&a.field, &b.field) || a.field.minpoly == b.field.minpoly);
}

impl Add for &NumberFieldElement {
    type Output = NumberFieldElement;

    fn add(self, rhs: &NumberFieldElement) -> NumberFieldElement {
        same_field(self, rhs);
        NumberFieldElement { field: self.field.clone(), poly: &self.poly + &rhs.poly }
    }
}

impl Sub for &NumberFieldElement {
    type Output = NumberFieldElement;

    fn sub(self, rhs: &NumberFieldElement) -> NumberFieldElement {
        same_field(self, rhs);
        NumberFieldElement { field: self.field.clone(), poly: &self.poly - &rhs.poly }
    }
}

impl Neg for &NumberFieldElement {
    type Output = NumberFieldElement;

    fn neg(self) -> NumberFieldElement {
        NumberFieldElement { field: self.field.clone(), poly: -&self.poly }
    }
}

impl Mul for &NumberFieldElement {
    type Output = NumberFieldElement;

    fn mul(self, rhs: &NumberFieldElement) -> NumberFieldElement {
        same_field(self, rhs);
        NumberFieldElement::from_poly(&self.field, &(&self.poly * &rhs.poly))
    }
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly && self.field.minpoly == other.field.minpoly
    }
}

impl Eq for NumberFieldElement {}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≈ {:.6}", self.poly.to_string().replace('x', "β"), self.to_f64())
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.to_string().replace('x', "β"))
    }
}
