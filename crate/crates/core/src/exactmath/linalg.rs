//! Integer vectors and matrices, exact integral solving and residue splitting.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::LatticeScalar;
use super::MathError;

/// A point of the integer lattice ℤ^d.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector<Z>(Vec<Z>);

impl<Z: LatticeScalar> IntVector<Z> {
    pub fn new(coords: Vec<Z>) -> Self {
        IntVector(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| Z::from_int(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![Z::zero(); dim])
    }

    /// The standard basis vector e_k, `k` zero-based.
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[k] = Z::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Z] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Z> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &Z) -> Self {
        IntVector(self.0.iter().map(|c| c.clone() * factor.clone()).collect())
    }

    pub fn max_abs(&self) -> Z {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_else(Z::zero)
    }

    pub fn to_big(&self) -> IntVector<BigInt> {
        IntVector(self.0.iter().map(LatticeScalar::to_big).collect())
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().map(|c| BigRational::from_integer(c.to_big())).collect()
    }

    pub fn from_big(v: &IntVector<BigInt>) -> Option<Self> {
        v.0.iter().map(Z::from_big).collect::<Option<Vec<_>>>().map(IntVector)
    }
}

impl<Z: LatticeScalar> Add for &IntVector<Z> {
    type Output = IntVector<Z>;

    fn add(self, rhs: &IntVector<Z>) -> IntVector<Z> {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }
}

impl<Z: LatticeScalar> Sub for &IntVector<Z> {
    type Output = IntVector<Z>;

    fn sub(self, rhs: &IntVector<Z>) -> IntVector<Z> {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }
}

impl<Z: LatticeScalar> Neg for &IntVector<Z> {
    type Output = IntVector<Z>;

    fn neg(self) -> IntVector<Z> {
        IntVector(self.0.iter().map(|a| -a.clone()).collect())
    }
}

impl<Z: fmt::Debug> fmt::Debug for IntVector<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, ")")
    }
}

impl<Z: fmt::Display> fmt::Display for IntVector<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix<Z> {
    dim: usize,
    entries: Vec<Z>,
}

impl<Z: LatticeScalar> IntMatrix<Z> {
    pub fn from_rows(rows: Vec<Vec<Z>>) -> Result<Self, MathError> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(MathError::NotSquare);
        }
        Ok(IntMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, MathError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&c| Z::from_int(c)).collect()).collect())
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Z::zero(); dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = Z::one();
        }
        IntMatrix { dim, entries }
    }

    pub fn from_columns(columns: &[IntVector<Z>]) -> Result<Self, MathError> {
        let dim = columns.len();
        if dim == 0 || columns.iter().any(|c| c.dim() != dim) {
            return Err(MathError::NotSquare);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in columns {
                entries.push(c.coords()[r].clone());
            }
        }
        Ok(IntMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Z {
        &self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<Z>> {
        self.entries.chunks(self.dim).map(<[Z]>::to_vec).collect()
    }

    pub fn column(&self, col: usize) -> IntVector<Z> {
        IntVector((0..self.dim).map(|r| self.get(r, col).clone()).collect())
    }

    pub fn mul_vec(&self, v: &IntVector<Z>) -> IntVector<Z> {
        debug_assert_eq!(v.dim(), self.dim);
        let out = self
            .entries
            .chunks(self.dim)
            .map(|row| {
                row.iter().zip(v.coords()).fold(Z::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect();
        IntVector(out)
    }

    pub fn mul(&self, rhs: &IntMatrix<Z>) -> IntMatrix<Z> {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Z::zero();
                for k in 0..n {
                    acc = acc + self.get(r, k).clone() * rhs.get(k, c).clone();
                }
                entries.push(acc);
            }
        }
        IntMatrix { dim: n, entries }
    }

    pub fn pow(&self, exp: u32) -> IntMatrix<Z> {
        (0..exp).fold(Self::identity(self.dim), |acc, _| acc.mul(self))
    }

    pub fn transpose(&self) -> IntMatrix<Z> {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(self.get(c, r).clone());
            }
        }
        IntMatrix { dim: n, entries }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Z {
        bareiss_det(self.rows())
    }

    pub fn adjugate(&self) -> IntMatrix<Z> {
        let n = self.dim;
        if n == 1 {
            return Self::identity(1);
        }
        let rows = self.rows();
        let mut entries = vec![Z::zero(); n * n];
        for r in 0..n {
            for c in 0..n {
                let minor: Vec<Vec<Z>> = rows
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != r)
                    .map(|(_, row)| {
                        row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, e)| e.clone()).collect()
                    })
                    .collect();
                let cof = bareiss_det(minor);
                // adj = transpose of the cofactor matrix
                entries[c * n + r] = if (r + c) % 2 == 0 { cof } else { -cof };
            }
        }
        IntMatrix { dim: n, entries }
    }

    /// Characteristic polynomial det(xI − M), coefficients from x^0 upwards (monic).
    pub fn charpoly(&self) -> Vec<BigInt> {
        let n = self.dim;
        let a = self.to_big();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut acc = IntMatrix::<BigInt> { dim: n, entries: vec![BigInt::zero(); n * n] };
        for k in 1..=n {
            let mut next = a.mul(&acc);
            for d in 0..n {
                next.entries[d * n + d] += &coeffs[n - k + 1];
            }
            acc = next;
            let prod = a.mul(&acc);
            let trace: BigInt = (0..n).map(|d| prod.get(d, d).clone()).sum();
            coeffs[n - k] = -(trace / BigInt::from(k));
        }
        coeffs
    }

    pub fn to_big(&self) -> IntMatrix<BigInt> {
        IntMatrix { dim: self.dim, entries: self.entries.iter().map(LatticeScalar::to_big).collect() }
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| BigRational::from_integer(e.to_big())).collect(),
        }
    }

    /// Infinity (max row sum) norm.
    pub fn norm_inf(&self) -> Z {
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().fold(Z::zero(), |acc, e| acc + e.abs()))
            .max()
            .unwrap_or_else(Z::zero)
    }
}

impl<Z: fmt::Display + Clone> fmt::Debug for IntMatrix<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (r, row) in self.entries.chunks(self.dim).enumerate() {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", IntVector(row.to_vec()))?;
        }
        write!(f, "]")
    }
}

fn bareiss_det<Z: LatticeScalar>(mut a: Vec<Vec<Z>>) -> Z {
    let n = a.len();
    if n == 0 {
        return Z::one();
    }
    let mut negate = false;
    let mut prev = Z::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Z::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Dense square matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    /// Panics unless `rows` is square and nonempty.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let dim = rows.len();
        assert!(dim > 0 && rows.iter().all(|r| r.len() == dim), "matrix must be square");
        RatMatrix { dim, entries: rows.into_iter().flatten().collect() }
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigRational::zero(); dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = BigRational::one();
        }
        RatMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.dim + col]
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    acc += self.get(r, k) * rhs.get(k, c);
                }
                entries.push(acc);
            }
        }
        RatMatrix { dim: n, entries }
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).fold(BigRational::zero(), |s, t| s + t))
            .collect()
    }

    pub fn column(&self, col: usize) -> Vec<BigRational> {
        (0..self.dim).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn norm_inf(&self) -> BigRational {
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().map(|e| e.abs()).fold(BigRational::zero(), |s, t| s + t))
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    /// Determinant by Gaussian elimination over ℚ.
    pub fn det(&self) -> BigRational {
        let n = self.dim;
        let mut a: Vec<Vec<BigRational>> = self.entries.chunks(n).map(<[BigRational]>::to_vec).collect();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return BigRational::zero();
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let pivot = a[k][k].clone();
            det *= &pivot;
            let (top, rest) = a.split_at_mut(k + 1);
            for row in rest {
                let factor = &row[k] / &pivot;
                for (x, y) in row[k..].iter_mut().zip(&top[k][k..]) {
                    *x -= &factor * y;
                }
            }
        }
        det
    }
}

/// Precomputed adjugate and determinant of a nonsingular integer matrix, used to
/// decide integrality of M⁻¹b cheaply and repeatedly.
#[derive(Clone, Debug)]
pub struct IntegerSolver<Z: LatticeScalar> {
    matrix: IntMatrix<Z>,
    adjugate: IntMatrix<Z>,
    det: Z,
}

impl<Z: LatticeScalar> IntegerSolver<Z> {
    pub fn new(matrix: &IntMatrix<Z>) -> Result<Self, MathError> {
        let det = matrix.det();
        if det.is_zero() {
            return Err(MathError::SingularMatrix);
        }
        Ok(IntegerSolver { matrix: matrix.clone(), adjugate: matrix.adjugate(), det })
    }

    pub fn matrix(&self) -> &IntMatrix<Z> {
        &self.matrix
    }

    pub fn det(&self) -> &Z {
        &self.det
    }

    /// The integral solution of `M·y = b`, if there is one.
    pub fn solve(&self, b: &IntVector<Z>) -> Option<IntVector<Z>> {
        let w = self.adjugate.mul_vec(b);
        let mut out = Vec::with_capacity(w.dim());
        for c in w.into_coords() {
            let (q, r) = c.div_rem(&self.det);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntVector(out))
    }

    pub fn solve_rational(&self, b: &IntVector<Z>) -> Vec<BigRational> {
        let det = self.det.to_big();
        self.adjugate
            .mul_vec(b)
            .coords()
            .iter()
            .map(|c| BigRational::new(c.to_big(), det.clone()))
            .collect()
    }

    pub fn inverse(&self) -> RatMatrix {
        let det = self.det.to_big();
        RatMatrix {
            dim: self.adjugate.dim,
            entries: self.adjugate.entries.iter().map(|e| BigRational::new(e.to_big(), det.clone())).collect(),
        }
    }

    /// Unique `(k, y)` with `v = M·y + digits[k]`.
    pub fn residue_decompose(
        &self,
        digits: &[IntVector<Z>],
        v: &IntVector<Z>,
    ) -> Result<(usize, IntVector<Z>), MathError> {
        let mut found = None;
        for (k, d) in digits.iter().enumerate() {
            if let Some(y) = self.solve(&(v - d)) {
                if found.is_some() {
                    return Err(MathError::NotResidueSystem(format!("{v} is congruent to several digits")));
                }
                found = Some((k, y));
            }
        }
        found.ok_or_else(|| MathError::NotResidueSystem(format!("{v} is congruent to no digit")))
    }
}

/// Integral solution of `M·y = b`; `Ok(None)` when the rational solution is not integral.
pub fn solve_integer<Z: LatticeScalar>(
    matrix: &IntMatrix<Z>,
    b: &IntVector<Z>,
) -> Result<Option<IntVector<Z>>, MathError> {
    if b.dim() != matrix.dim() {
        return Err(MathError::DimensionMismatch { expected: matrix.dim(), found: b.dim() });
    }
    Ok(IntegerSolver::new(matrix)?.solve(b))
}

pub fn residue_decompose<Z: LatticeScalar>(
    matrix: &IntMatrix<Z>,
    digits: &[IntVector<Z>],
    v: &IntVector<Z>,
) -> Result<(usize, IntVector<Z>), MathError> {
    IntegerSolver::new(matrix)?.residue_decompose(digits, v)
}
