use std::sync::Arc;

use super::SteppedError;
use crate::exactmath::{
    perron_data_in, IntMatrix, IntVector, LatticeScalar, NumberField, NumberFieldElement, PerronData, RealIsolation, Sign,
};

/// β with its dominant eigenvectors, exact in ℚ(β), plus f64 enclosures of
/// 𝐯 used to decide most signs of ⟨x, v⟩ without touching the number field.
#[derive(Clone, Debug)]
pub struct SpectralData {
    perron: PerronData,
    v_mid: Vec<f64>,
    v_rad: Vec<f64>,
}

impl SpectralData {
    pub fn new<Z: LatticeScalar>(m: &IntMatrix<Z>, field: &Arc<NumberField>) -> Result<Self, SteppedError> {
        let perron = perron_data_in(m, field)?;
        for (k, (u, v)) in perron.u.iter().zip(&perron.v).enumerate() {
            if u.sign() != Sign::Positive || v.sign() != Sign::Positive {
                return Err(SteppedError::NonPositiveEigenvector(k));
            }
        }
        let (v_mid, v_rad) = perron
            .v
            .iter()
            .map(|e| {
                let refined = refined_enclosure(e, 80);
                let (lo, hi) = refined.to_f64_bounds();
                let mid = 0.5 * (lo + hi);
                // outward margin for the rounding of mid itself
                (mid, 0.5 * (hi - lo) + mid.abs() * f64::EPSILON)
            })
            .unzip();
        Ok(SpectralData { perron, v_mid, v_rad })
    }

    pub fn perron(&self) -> &PerronData {
        &self.perron
    }

    pub fn beta(&self) -> &NumberFieldElement {
        &self.perron.beta
    }

    pub fn beta_isolation(&self) -> RealIsolation {
        self.perron.field.isolation()
    }

    pub fn minpoly(&self) -> &crate::exactmath::RatPoly {
        self.perron.field.minpoly()
    }

    /// Right eigenvector, last coordinate 1.
    pub fn u(&self) -> &[NumberFieldElement] {
        &self.perron.u
    }

    /// Left eigenvector, last coordinate 1.
    pub fn v(&self) -> &[NumberFieldElement] {
        &self.perron.v
    }

    pub fn u_f64(&self, bits: u32) -> Vec<f64> {
        self.perron.u.iter().map(|e| midpoint(e, bits)).collect()
    }

    pub fn v_f64(&self, bits: u32) -> Vec<f64> {
        self.perron.v.iter().map(|e| midpoint(e, bits)).collect()
    }

    /// ⟨x, v⟩ exactly.
    pub fn dot_v<Z: LatticeScalar>(&self, x: &IntVector<Z>) -> NumberFieldElement {
        let field = &self.perron.field;
        x.coords().iter().zip(&self.perron.v).fold(NumberFieldElement::zero(field), |acc, (c, v)| {
            &acc + &v.scale(&num_rational::BigRational::from_integer(c.to_big()))
        })
    }

    /// Sign of ⟨x, v⟩. A floating-point sum with a rigorous error bound
    /// settles almost every case; ties go to the exact sign in ℚ(β).
    pub fn sign_dot<Z: LatticeScalar>(&self, x: &IntVector<Z>) -> Sign {
        if let Some(s) = self.fast_sign(x) {
            return s;
        }
        self.dot_v(x).sign()
    }

    fn fast_sign<Z: LatticeScalar>(&self, x: &IntVector<Z>) -> Option<Sign> {
        const EXACT: f64 = 9_007_199_254_740_992.0;
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        let mut spread = 0.0;
        for ((c, mid), rad) in x.coords().iter().zip(&self.v_mid).zip(&self.v_rad) {
            let c = c.to_f64()?;
            if c.abs() >= EXACT {
                return None;
            }
            let term = c * mid;
            sum += term;
            abs_sum += term.abs();
            spread += c.abs() * rad;
        }
        if abs_sum == 0.0 {
            return Some(Sign::Zero);
        }
        let n = x.dim() as f64 + 2.0;
        let bound = spread * (1.0 + 4.0 * n * f64::EPSILON) + 4.0 * n * f64::EPSILON * abs_sum;
        if sum > bound {
            Some(Sign::Positive)
        } else if sum < -bound {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

fn refined_enclosure(e: &NumberFieldElement, bits: u32) -> crate::exactmath::RatInterval {
    let iso = e.field().isolation().refined(bits);
    e.enclose_in(&iso.interval())
}

fn midpoint(e: &NumberFieldElement, bits: u32) -> f64 {
    let (lo, hi) = refined_enclosure(e, bits).to_f64_bounds();
    0.5 * (lo + hi)
}
