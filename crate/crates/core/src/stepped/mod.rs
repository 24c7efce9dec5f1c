//! The stepped hypersurface H_σ of a Pisot substitution, faces as unit cubes,
//! the dual substitution σ* and projected approximations of the subtiles ℛ(i).

mod render;
mod spectral;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::exactmath::{IntMatrix, IntVector, IntegerSolver, LatticeScalar, MathError, Sign};
use crate::substitution::{
    abelianize, certify_pisot, prefix_suffix_graph, Letter, PisotCertificate, PrefixSuffixEdge, Rejection,
    Substitution,
};

pub use render::{approximate_subtile, walk_count, ProjectedCell, Projector, SubtilePatch};
pub use spectral::SpectralData;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteppedError {
    #[error("not a Pisot unit substitution: {0}")]
    NotPisot(#[from] Rejection),
    #[error("eigenvector entry {0} is not positive")]
    NonPositiveEigenvector(usize),
    #[error("σ* image of {0} is not integral")]
    NonIntegralImage(String),
    #[error("σ* images overlap at {0}")]
    DisjointnessViolated(String),
    #[error("{cells} cells exceed the cap of {cap}")]
    PatchTooLarge { cells: usize, cap: usize },
    #[error(transparent)]
    Math(#[from] MathError),
}

/// [x, i]: a point of colour i, or the unit cube x + Σ_{k≠i} [0,1]e_k.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face<Z> {
    pub x: IntVector<Z>,
    pub i: Letter,
}

impl<Z: LatticeScalar> Face<Z> {
    pub fn new(x: IntVector<Z>, i: Letter) -> Self {
        Face { x, i }
    }

    pub fn origin(dim: usize, i: Letter) -> Self {
        Face { x: IntVector::zeros(dim), i }
    }
}

impl<Z: fmt::Debug> fmt::Debug for Face<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?},{}]", self.x, self.i)
    }
}

impl<Z: fmt::Display> fmt::Display for Face<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.x, self.i)
    }
}

/// [i, x, j]; stands for the intersection ℛ(i) ∩ (ℛ(j) + π(x)).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedTriple<Z> {
    pub i: Letter,
    pub x: IntVector<Z>,
    pub j: Letter,
}

impl<Z: LatticeScalar> SignedTriple<Z> {
    pub fn new(i: Letter, x: IntVector<Z>, j: Letter) -> Self {
        SignedTriple { i, x, j }
    }

    pub fn from_i64(i: Letter, x: &[i64], j: Letter) -> Self {
        SignedTriple { i, x: IntVector::from_i64(x), j }
    }

    /// −[i, x, j] = [j, −x, i].
    pub fn negate(&self) -> Self {
        SignedTriple { i: self.j, x: -&self.x, j: self.i }
    }

    /// [i, 0, i], which stands for a whole subtile.
    pub fn is_trivial(&self) -> bool {
        self.i == self.j && self.x.is_zero()
    }
}

impl<Z: fmt::Debug> fmt::Debug for SignedTriple<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{:?},{}]", self.i, self.x, self.j)
    }
}

impl<Z: fmt::Display> fmt::Display for SignedTriple<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.i, self.x, self.j)
    }
}

/// A certified Pisot unit substitution together with everything the
/// geometric constructions need: incidence matrix, exact spectral data and the
/// prefix-suffix edges with their abelianized prefixes.
#[derive(Clone, Debug)]
pub struct PisotSystem<Z: LatticeScalar> {
    sigma: Substitution,
    incidence: IntMatrix<Z>,
    solver: IntegerSolver<Z>,
    certificate: PisotCertificate,
    spectral: SpectralData,
    edges: Vec<PrefixSuffixEdge>,
    prefixes: Vec<IntVector<Z>>,
}

impl<Z: LatticeScalar> PisotSystem<Z> {
    pub fn new(sigma: &Substitution) -> Result<Self, SteppedError> {
        let certificate = certify_pisot(sigma)?;
        Self::from_certificate(sigma, certificate)
    }

    /// Skips certification; `certificate` must belong to `sigma`, which is
    /// checked only up to equality of characteristic polynomials.
    pub fn from_certificate(sigma: &Substitution, certificate: PisotCertificate) -> Result<Self, SteppedError> {
        let incidence: IntMatrix<Z> = sigma.incidence();
        let solver = IntegerSolver::new(&incidence)?;
        let spectral = SpectralData::new(&incidence, &certificate.field)?;
        let d = sigma.alphabet_size();
        let edges = prefix_suffix_graph(sigma);
        let prefixes = edges.iter().map(|e| abelianize(&e.prefix, d)).collect();
        Ok(PisotSystem { sigma: sigma.clone(), incidence, solver, certificate, spectral, edges, prefixes })
    }

    pub fn dim(&self) -> usize {
        self.sigma.alphabet_size()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        1..=self.dim() as Letter
    }

    pub fn substitution(&self) -> &Substitution {
        &self.sigma
    }

    pub fn incidence(&self) -> &IntMatrix<Z> {
        &self.incidence
    }

    pub fn solver(&self) -> &IntegerSolver<Z> {
        &self.solver
    }

    pub fn certificate(&self) -> &PisotCertificate {
        &self.certificate
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    /// Prefix-suffix edges paired with 𝐥(p).
    pub fn edges(&self) -> impl Iterator<Item = (&PrefixSuffixEdge, &IntVector<Z>)> {
        self.edges.iter().zip(&self.prefixes)
    }

    /// Prefix-suffix edges leaving letter `from`, i.e. occurrences of `from`.
    pub fn edges_from(&self, from: Letter) -> impl Iterator<Item = (&PrefixSuffixEdge, &IntVector<Z>)> {
        self.edges().filter(move |(e, _)| e.from == from)
    }

    /// Sign of ⟨x, v⟩.
    pub fn sign_dot(&self, x: &IntVector<Z>) -> Sign {
        self.spectral.sign_dot(x)
    }

    /// 0 ≤ ⟨x, v⟩ < ⟨e_i, v⟩.
    pub fn in_h(&self, f: &Face<Z>) -> bool {
        if self.sign_dot(&f.x) == Sign::Negative {
            return false;
        }
        let shifted = &f.x - &IntVector::unit(self.dim(), (f.i - 1) as usize);
        self.sign_dot(&shifted) == Sign::Negative
    }

    /// [i, x, j] ∈ 𝔇: [x, j] ∈ H_σ, and i < j when x = 0.
    pub fn in_dfrak(&self, t: &SignedTriple<Z>) -> bool {
        (!t.x.is_zero() || t.i < t.j) && self.in_h(&Face { x: t.x.clone(), i: t.j })
    }

    /// Node of the simple ambient graph: [i, x, j] ∈ ±(𝒜 × H_σ), not [i, 0, i].
    pub fn in_signed_h(&self, t: &SignedTriple<Z>) -> bool {
        if t.x.is_zero() {
            return t.i != t.j;
        }
        self.in_h(&Face { x: t.x.clone(), i: t.j }) || self.in_h(&Face { x: -&t.x, i: t.i })
    }

    /// σ*[x, i] = {[M⁻¹(x + 𝐥(p)), j] : σ(j) = p·i·s}.
    pub fn dual_image(&self, f: &Face<Z>) -> Result<Vec<Face<Z>>, SteppedError> {
        self.edges_from(f.i)
            .map(|(e, lp)| {
                self.solver
                    .solve(&(&f.x + lp))
                    .map(|y| Face { x: y, i: e.to })
                    .ok_or_else(|| SteppedError::NonIntegralImage(format!("{f:?}")))
            })
            .collect()
    }

    /// (σ*)ⁿ applied to a set of faces, checking that images of distinct
    /// faces never overlap.
    pub fn iterate_dual(&self, seed: &BTreeSet<Face<Z>>, n: u32) -> Result<BTreeSet<Face<Z>>, SteppedError> {
        let mut current = seed.clone();
        for _ in 0..n {
            let faces: Vec<&Face<Z>> = current.iter().collect();
            let images: Vec<Vec<Face<Z>>> =
                faces.par_iter().map(|f| self.dual_image(f)).collect::<Result<_, _>>()?;
            let mut next = BTreeSet::new();
            for face in images.into_iter().flatten() {
                if let Some(dup) = next.replace(face) {
                    return Err(SteppedError::DisjointnessViolated(format!("{dup:?}")));
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// All faces of H_σ with ‖x‖∞ ≤ radius.
    pub fn stepped_patch(&self, radius: i64) -> Vec<Face<Z>> {
        let d = self.dim();
        let mut points: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..d {
            points = points.into_iter().flat_map(|p| (-radius..=radius).map(move |c| [p.as_slice(), &[c]].concat())).collect();
        }
        points
            .par_iter()
            .flat_map_iter(|p| {
                let x = IntVector::from_i64(p);
                self.letters().map(move |i| Face { x: x.clone(), i }).filter(|f| self.in_h(f)).collect::<Vec<_>>()
            })
            .collect()
    }

    /// 𝔇_cont: triples of 𝔇 with [0, i] ∩ [x, j] a (d−2)-cube, x ∈ {−1,0,1}^d.
    pub fn build_dcont(&self) -> BTreeSet<SignedTriple<Z>> {
        let d = self.dim();
        let mut points: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..d {
            points = points.into_iter().flat_map(|p| (-1..=1).map(move |c| [p.as_slice(), &[c]].concat())).collect();
        }
        let mut out = BTreeSet::new();
        for p in &points {
            let x = IntVector::<Z>::from_i64(p);
            for i in self.letters() {
                for j in self.letters() {
                    let t = SignedTriple { i, x: x.clone(), j };
                    let dim = face_intersection_dim(&Face::origin(d, i), &Face { x: x.clone(), i: j });
                    if dim == d as i32 - 2 && self.in_dfrak(&t) {
                        out.insert(t);
                    }
                }
            }
        }
        out
    }
}

/// Dimension of the intersection of two faces read as closed unit cubes, −1 if
/// they are disjoint.
pub fn face_intersection_dim<Z: LatticeScalar>(f: &Face<Z>, g: &Face<Z>) -> i32 {
    let mut dim = 0;
    for (k, (a, b)) in f.x.coords().iter().zip(g.x.coords()).enumerate() {
        let letter = k as Letter + 1;
        let a_hi = if letter == f.i { a.clone() } else { a.clone() + Z::one() };
        let b_hi = if letter == g.i { b.clone() } else { b.clone() + Z::one() };
        let lo = a.clone().max(b.clone());
        let hi = a_hi.min(b_hi);
        if lo > hi {
            return -1;
        }
        if lo < hi {
            dim += 1;
        }
    }
    dim
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn sigma1() -> PisotSystem<BigInt> {
        PisotSystem::new(&Substitution::from_strs(&["1112", "113", "1"]).unwrap()).unwrap()
    }

    fn face(x: &[i64], i: Letter) -> Face<BigInt> {
        Face::new(IntVector::from_i64(x), i)
    }

    #[test]
    fn membership_examples() {
        let s = sigma1();
        for i in 1..=3 {
            assert!(s.in_h(&face(&[0, 0, 0], i)));
        }
        assert!(!s.in_h(&face(&[1, 0, 0], 1)));
        // ⟨e_2, v⟩ ≈ 2.28 < ⟨e_1, v⟩ ≈ 3.63
        assert!(s.in_h(&face(&[0, 1, 0], 1)));
        assert!(!s.in_h(&face(&[0, 1, 0], 2)));
    }

    #[test]
    fn dual_image_example() {
        let s = sigma1();
        let image: BTreeSet<_> = s.dual_image(&face(&[0, 0, 0], 1)).unwrap().into_iter().collect();
        let expected: BTreeSet<_> = [
            face(&[0, 0, 0], 1),
            face(&[0, 0, 1], 1),
            face(&[0, 0, 2], 1),
            face(&[0, 0, 0], 2),
            face(&[0, 0, 1], 2),
            face(&[0, 0, 0], 3),
        ]
        .into_iter()
        .collect();
        assert_eq!(image, expected);
        let trivial = PisotSystem::<BigInt>::new(&Substitution::from_strs(&["12", "1"]).unwrap()).unwrap();
        assert_eq!(trivial.iterate_dual(&BTreeSet::from([face(&[0, 0], 2)]), 0).unwrap().len(), 1);
    }

    #[test]
    fn intersection_dimensions() {
        assert_eq!(face_intersection_dim(&face(&[0, 0, 0], 1), &face(&[0, 0, 0], 1)), 2);
        assert_eq!(face_intersection_dim(&face(&[0, 0, 0], 1), &face(&[0, 1, 0], 1)), 1);
        assert_eq!(face_intersection_dim(&face(&[0, 0, 0], 1), &face(&[0, 2, 0], 1)), -1);
        assert_eq!(face_intersection_dim(&face(&[0, 0, 0], 1), &face(&[0, 0, 0], 2)), 1);
    }

    #[test]
    fn dcont_contains_origin_pairs() {
        let s = sigma1();
        let dc = s.build_dcont();
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert!(dc.contains(&SignedTriple::from_i64(i, &[0, 0, 0], j)));
        }
        assert_eq!(dc.len(), 9);
    }
}
