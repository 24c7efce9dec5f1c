//! Dominant eigenvalue and eigenvectors of an integer matrix, exactly in ℚ(β).

use std::sync::Arc;

use super::linalg::IntMatrix;
use super::numfield::{NumberField, NumberFieldElement};
use super::poly::RatPoly;
use super::scalar::LatticeScalar;
use super::MathError;

#[derive(Clone, Debug)]
pub struct PerronData {
    pub charpoly: RatPoly,
    pub field: Arc<NumberField>,
    pub beta: NumberFieldElement,
    /// Right eigenvector, `M·u = β·u`, last coordinate 1.
    pub u: Vec<NumberFieldElement>,
    /// Left eigenvector, `Mᵀ·v = β·v`, last coordinate 1.
    pub v: Vec<NumberFieldElement>,
}

/// β is the largest real root of the characteristic polynomial, which must be
/// irreducible.
pub fn perron_data<Z: LatticeScalar>(m: &IntMatrix<Z>) -> Result<PerronData, MathError> {
    let charpoly = RatPoly::from_bigints(&m.charpoly());
    let field = NumberField::from_largest_root(&charpoly)?;
    perron_data_in(m, &field)
}

/// As [`perron_data`], in a field already known to be generated by the largest
/// root of the characteristic polynomial.
pub fn perron_data_in<Z: LatticeScalar>(m: &IntMatrix<Z>, field: &Arc<NumberField>) -> Result<PerronData, MathError> {
    let charpoly = RatPoly::from_bigints(&m.charpoly());
    if charpoly.monic() != field.minpoly().monic() {
        return Err(MathError::ReduciblePolynomial(charpoly.to_string()));
    }
    let field = field.clone();
    let beta = NumberFieldElement::generator(&field);
    let u = eigenvector(m, &field, &beta)?;
    let v = eigenvector(&m.transpose(), &field, &beta)?;
    Ok(PerronData { charpoly, field, beta, u, v })
}

/// Kernel vector of `A − βI` normalised so the last coordinate is 1.
fn eigenvector<Z: LatticeScalar>(
    a: &IntMatrix<Z>,
    field: &Arc<NumberField>,
    beta: &NumberFieldElement,
) -> Result<Vec<NumberFieldElement>, MathError> {
    let n = a.dim();
    let mut rows: Vec<Vec<NumberFieldElement>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let entry = NumberFieldElement::from_rational(
                        field,
                        num_rational::BigRational::from_integer(a.get(r, c).to_big()),
                    );
                    if r == c {
                        &entry - beta
                    } else {
                        entry
                    }
                })
                .collect()
        })
        .collect();

    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = rows[row][col].inv()?;
        rows[row] = rows[row].iter().map(|e| e * &inv).collect();
        for r in 0..n {
            if r != row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                let pivot_row = rows[row].clone();
                for (e, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *e = &*e - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    // β is a simple root, so the kernel is one-dimensional
    let free = (0..n).find(|c| !pivots.contains(c)).ok_or(MathError::SingularMatrix)?;
    let mut w = vec![NumberFieldElement::zero(field); n];
    w[free] = NumberFieldElement::one(field);
    for (r, &pc) in pivots.iter().enumerate() {
        w[pc] = -&rows[r][free];
    }
    let last = w[n - 1].clone();
    if last.is_zero() {
        return Err(MathError::DegenerateEigenvector);
    }
    let inv = last.inv()?;
    Ok(w.iter().map(|e| e * &inv).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn tribonacci_like_example() {
        let m = IntMatrix::<BigInt>::from_i64_rows(&[vec![3, 2, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let p = perron_data(&m).unwrap();
        let v: Vec<f64> = p.v.iter().map(NumberFieldElement::to_f64).collect();
        assert!((v[0] - 3.627365).abs() < 1e-5);
        assert!((v[1] - 2.275691).abs() < 1e-5);
        assert_eq!(v[2], 1.0);
        // exact eigen-equations
        let beta = &p.beta;
        for r in 0..3 {
            let mut lhs = NumberFieldElement::zero(&p.field);
            let mut lhs_t = NumberFieldElement::zero(&p.field);
            for c in 0..3 {
                let e = NumberFieldElement::from_int(&p.field, i64::try_from(m.get(r, c)).unwrap());
                lhs = &lhs + &(&e * &p.u[c]);
                let et = NumberFieldElement::from_int(&p.field, i64::try_from(m.get(c, r)).unwrap());
                lhs_t = &lhs_t + &(&et * &p.v[c]);
            }
            assert_eq!(lhs, beta * &p.u[r]);
            assert_eq!(lhs_t, beta * &p.v[r]);
        }
    }

    #[test]
    fn reducible_characteristic_polynomial() {
        let m = IntMatrix::<i64>::from_i64_rows(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert!(matches!(perron_data(&m), Err(MathError::ReduciblePolynomial(_))));
    }
}
