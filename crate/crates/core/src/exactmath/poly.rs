//! Dense univariate polynomials over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients are stored from x^0 upwards with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    /// x^n·p(1/x) for a formal degree `n ≥ deg p`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut out = vec![BigRational::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[n - k] = c.clone();
        }
        Self::new(out)
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (RatPoly::zero(), RatPoly::zero());
        };
        if nd < dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn rem(&self, divisor: &RatPoly) -> RatPoly {
        self.divrem(divisor).1
    }

    /// Monic gcd `g` with Bézout cofactors: `s·a + t·b = g`.
    pub fn ext_gcd(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
        let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let norm = r0.leading().recip();
        (r0.scale(&norm), s0.scale(&norm), t0.scale(&norm))
    }

    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        Self::ext_gcd(a, b).0
    }

    pub fn is_squarefree(&self) -> bool {
        Self::gcd(self, &self.derivative()).degree() == Some(0)
    }

    pub fn sturm_sequence(&self) -> Vec<RatPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(sturm: &[RatPoly], lo: &BigRational, hi: &BigRational) -> usize {
        sign_changes(sturm, lo).saturating_sub(sign_changes(sturm, hi))
    }

    /// Cauchy bound: every complex root has modulus strictly below it.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.leading();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / &lead).abs())
            .max()
            .unwrap_or_else(BigRational::zero);
        max + BigRational::one()
    }

    /// Number of roots strictly inside the unit disk by the Schur–Cohn test.
    /// `None` when some δ_k vanishes, i.e. the test is singular.
    pub fn schur_cohn_inside(&self) -> Option<usize> {
        let n = self.degree()?;
        let mut f = self.clone();
        let mut product = BigRational::one();
        let mut negatives = 0;
        for k in 0..n {
            let formal = n - k;
            let a0 = f.coeff(0);
            let an = f.coeff(formal);
            let tf = &f.scale(&a0) - &f.reversed(formal).scale(&an);
            let delta = tf.coeff(0);
            if delta.is_zero() {
                return None;
            }
            product *= delta;
            if product.is_negative() {
                negatives += 1;
            }
            f = tf;
        }
        Some(negatives)
    }

    /// `p(r·x)`: its roots are those of `p` divided by `r`.
    pub fn dilate(&self, r: &BigRational) -> Self {
        let mut power = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &power);
            power *= r;
        }
        Self::new(out)
    }

    /// Exact number of roots in the open unit disk, provided none lies on the
    /// unit circle. The plain Schur–Cohn test is singular for unit polynomials
    /// and for roots paired under z ↦ 1/z̄, so it is applied to dilations by
    /// r = 1 ± 2⁻ᵏ until the counts inside radius 1/r and r agree, which
    /// certifies an empty annulus around the circle. `None` if no agreement is
    /// reached, which happens in particular when a root lies on the circle.
    pub fn roots_inside_unit_disk(&self) -> Option<usize> {
        if let Some(n) = self.schur_cohn_inside() {
            return Some(n);
        }
        for k in 3..=96u32 {
            let eps = BigRational::new(BigInt::one(), BigInt::one() << k);
            let r = BigRational::one() + eps;
            // roots of p(x/r) are r·z, so this counts |z| < 1/r
            let inner = self.dilate(&r.recip()).schur_cohn_inside();
            let outer = self.dilate(&r).schur_cohn_inside();
            if let (Some(a), Some(b)) = (inner, outer) {
                if a == b {
                    return Some(a);
                }
            }
        }
        None
    }

    /// `Some(true)` when every root has modulus strictly greater than 1,
    /// `Some(false)` when some root is certified inside the closed disk.
    pub fn roots_outside_unit_disk(&self) -> Option<bool> {
        if self.coeff(0).is_zero() {
            return Some(false);
        }
        for k in 3..=96u32 {
            let eps = BigRational::new(BigInt::one(), BigInt::one() << k);
            let r = BigRational::one() + eps;
            if self.dilate(&r).schur_cohn_inside() == Some(0) {
                return Some(true);
            }
            if self.dilate(&r.recip()).schur_cohn_inside().is_some_and(|n| n > 0) {
                return Some(false);
            }
        }
        None
    }

    /// Clears denominators and content; `None` for the zero polynomial.
    pub fn primitive_integer(&self) -> Option<Vec<BigInt>> {
        if self.is_zero() {
            return None;
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(Signed::is_negative) { -BigInt::one() } else { BigInt::one() };
        Some(ints.into_iter().map(|c| c / &content * &sign).collect())
    }

    /// Irreducibility over ℚ by Kronecker's method. `None` when the search
    /// would exceed an internal budget.
    pub fn is_irreducible(&self) -> Option<bool> {
        const BUDGET: usize = 200_000;
        let f = self.primitive_integer()?;
        let n = f.len() - 1;
        if n == 0 {
            return Some(false);
        }
        if n == 1 {
            return Some(true);
        }
        let fp = RatPoly::from_bigints(&f);
        // sample points 0, 1, -1, 2, -2, ...
        let mut points: Vec<BigInt> = Vec::new();
        let mut values: Vec<BigInt> = Vec::new();
        let mut candidate = 0i64;
        while points.len() <= n / 2 {
            let x = BigInt::from(candidate);
            let fx = fp.eval(&BigRational::from_integer(x.clone())).to_integer();
            if fx.is_zero() {
                return Some(false);
            }
            points.push(x);
            values.push(fx);
            candidate = if candidate <= 0 { 1 - candidate } else { -candidate };
        }
        let divisor_sets: Vec<Vec<BigInt>> = values.iter().map(signed_divisors).collect::<Option<_>>()?;
        let mut spent = 0usize;
        for k in 1..=n / 2 {
            let sets = &divisor_sets[..=k];
            let combos = sets.iter().try_fold(1usize, |acc, s| acc.checked_mul(s.len()))?;
            spent = spent.checked_add(combos)?;
            if spent > BUDGET {
                return None;
            }
            let mut idx = vec![0usize; k + 1];
            loop {
                let ys: Vec<BigInt> = idx.iter().zip(sets).map(|(&i, s)| s[i].clone()).collect();
                if let Some(g) = interpolate_integer(&points[..=k], &ys) {
                    if g.degree() == Some(k) && fp.rem(&g).is_zero() {
                        return Some(false);
                    }
                }
                // odometer
                let mut pos = 0;
                loop {
                    if pos > k {
                        break;
                    }
                    idx[pos] += 1;
                    if idx[pos] < sets[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos > k {
                    break;
                }
            }
        }
        Some(true)
    }
}

fn sign_changes(sturm: &[RatPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in sturm {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

fn signed_divisors(value: &BigInt) -> Option<Vec<BigInt>> {
    let n = value.abs().to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out.into_iter().flat_map(|d| [BigInt::from(d), -BigInt::from(d)]).collect())
}

/// Lagrange interpolation; `None` unless all coefficients are integers.
fn interpolate_integer(xs: &[BigInt], ys: &[BigInt]) -> Option<RatPoly> {
    let mut acc = RatPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = RatPoly::one();
        let mut denom = BigInt::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = &basis * &RatPoly::from_bigints(&[-xj.clone(), BigInt::one()]);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&BigRational::new(yi.clone(), denom));
    }
    acc.coeffs.iter().all(|c| c.is_integer()).then_some(acc)
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn display_and_divrem() {
        let f = RatPoly::from_ints(&[-1, -2, -3, 1]);
        assert_eq!(f.to_string(), "x^3 - 3x^2 - 2x - 1");
        let (quot, rem) = f.divrem(&RatPoly::from_ints(&[-1, 1]));
        assert_eq!(&(&quot * &RatPoly::from_ints(&[-1, 1])) + &rem, f);
        assert_eq!(rem, RatPoly::constant(q(-5)));
    }

    #[test]
    fn schur_cohn_on_known_polynomials() {
        // roots 1/2 and 3
        let f = &RatPoly::from_ints(&[-1, 2]) * &RatPoly::from_ints(&[-3, 1]);
        assert_eq!(f.schur_cohn_inside(), Some(1));
        // unit constant term makes the first δ vanish
        assert_eq!(RatPoly::from_ints(&[-1, -1, -1, 1]).schur_cohn_inside(), None);
        assert_eq!(RatPoly::from_ints(&[-1, -1, -1, 1]).roots_inside_unit_disk(), Some(2));
        assert_eq!(RatPoly::from_ints(&[-1, -2, -3, 1]).roots_inside_unit_disk(), Some(2));
        assert_eq!(RatPoly::from_ints(&[-1, -3, -2, 1]).roots_inside_unit_disk(), Some(2));
        // x^2 - 1 has roots on the circle
        assert_eq!(RatPoly::from_ints(&[-1, 0, 1]).roots_inside_unit_disk(), None);
        assert_eq!(RatPoly::from_ints(&[5, -4, 1]).roots_outside_unit_disk(), Some(true));
        assert_eq!(RatPoly::from_ints(&[1, -3, 1]).roots_outside_unit_disk(), Some(false));
    }

    #[test]
    fn kronecker_irreducibility() {
        assert_eq!(RatPoly::from_ints(&[-1, -2, -3, 1]).is_irreducible(), Some(true));
        assert_eq!(RatPoly::from_ints(&[-1, -3, -2, 1]).is_irreducible(), Some(true));
        // (x^2+1)^2
        assert_eq!(RatPoly::from_ints(&[1, 0, 2, 0, 1]).is_irreducible(), Some(false));
        // x^4 + 1 is irreducible with no rational root
        assert_eq!(RatPoly::from_ints(&[1, 0, 0, 0, 1]).is_irreducible(), Some(true));
        // (x^2 - 2)(x^2 - 3)
        assert_eq!(RatPoly::from_ints(&[6, 0, -5, 0, 1]).is_irreducible(), Some(false));
        assert_eq!(RatPoly::from_ints(&[-1, -1, 0, 1]).is_irreducible(), Some(true));
    }

    #[test]
    fn sturm_counts() {
        let f = &(&RatPoly::from_ints(&[-1, 1]) * &RatPoly::from_ints(&[2, 1])) * &RatPoly::from_ints(&[-5, 1]);
        let s = f.sturm_sequence();
        assert_eq!(RatPoly::count_roots(&s, &q(-10), &q(10)), 3);
        assert_eq!(RatPoly::count_roots(&s, &q(0), &q(1)), 1);
        assert_eq!(RatPoly::count_roots(&s, &q(1), &q(4)), 0);
    }

    fn poly() -> impl Strategy<Value = RatPoly> {
        prop::collection::vec(-9i64..=9, 1..6).prop_map(|c| RatPoly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn divrem_recomposes(a in poly(), b in poly()) {
            prop_assume!(!b.is_zero());
            let (quot, rem) = a.divrem(&b);
            prop_assert_eq!(&(&quot * &b) + &rem, a);
            prop_assert!(rem.is_zero() || rem.degree() < b.degree());
        }

        #[test]
        fn bezout_identity(a in poly(), b in poly()) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let (g, s, t) = RatPoly::ext_gcd(&a, &b);
            prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
            prop_assert!(a.rem(&g).is_zero());
            prop_assert!(b.rem(&g).is_zero());
        }

        #[test]
        fn products_are_reducible(
            a in prop::collection::vec(-3i64..=3, 2..4),
            b in prop::collection::vec(-3i64..=3, 2..4),
        ) {
            let (a, b) = (RatPoly::from_ints(&a), RatPoly::from_ints(&b));
            prop_assume!(a.degree().unwrap_or(0) >= 1 && b.degree().unwrap_or(0) >= 1);
            prop_assert_ne!((&a * &b).is_irreducible(), Some(true));
        }

        #[test]
        fn schur_cohn_matches_product_of_linear_factors(
            roots in prop::collection::vec((-7i64..=7, 1i64..=4), 1..5)
        ) {
            // roots p/q with |p| != q never sit on the circle
            prop_assume!(roots.iter().all(|(p, q)| p.abs() != *q));
            let f = roots.iter().fold(RatPoly::one(), |acc, &(p, q)| &acc * &RatPoly::from_ints(&[-p, q]));
            let inside = roots.iter().filter(|(p, q)| p.abs() < *q).count();
            prop_assert_eq!(f.roots_inside_unit_disk(), Some(inside));
            prop_assert_eq!(f.roots_outside_unit_disk(), Some(inside == 0));
        }
    }
}
