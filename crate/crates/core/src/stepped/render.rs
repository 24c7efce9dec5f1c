use std::collections::BTreeSet;

use super::{Face, PisotSystem, SteppedError};
use crate::exactmath::{IntVector, LatticeScalar, RenderScalar};
use crate::substitution::Letter;

/// Coordinates on v^⊥: an orthonormal basis B of v^⊥, the projection π along
/// 𝐮 written in B, and 𝐡 = M|_{v^⊥} as the matrix BᵀMB.
#[derive(Clone, Debug)]
pub struct Projector<F> {
    dim: usize,
    basis: Vec<Vec<F>>,
    u: Vec<F>,
    v: Vec<F>,
    uv: F,
    h: Vec<Vec<F>>,
}

impl<F: RenderScalar> Projector<F> {
    /// Eigenvectors are evaluated from exact data with `bits` bits of working
    /// precision before rounding to F.
    pub fn new<Z: LatticeScalar>(system: &PisotSystem<Z>, bits: u32) -> Self {
        let d = system.dim();
        let lit = |x: f64| F::lit(x);
        let u: Vec<F> = system.spectral().u_f64(bits).into_iter().map(lit).collect();
        let v: Vec<F> = system.spectral().v_f64(bits).into_iter().map(lit).collect();
        let uv = dot(&u, &v);

        // Gram-Schmidt on v, e_1, …, e_d; the first d − 1 survivors span v^⊥
        let mut frame: Vec<Vec<F>> = vec![normalize(&v)];
        for k in 0..d {
            let mut w: Vec<F> = (0..d).map(|c| if c == k { F::one() } else { F::zero() }).collect();
            for b in &frame {
                let p = dot(&w, b);
                for (wc, bc) in w.iter_mut().zip(b) {
                    *wc = *wc - p * *bc;
                }
            }
            if norm(&w) > F::lit(1e-6) {
                frame.push(normalize(&w));
            }
            if frame.len() == d {
                break;
            }
        }
        let basis: Vec<Vec<F>> = frame.into_iter().skip(1).collect();

        let m: Vec<Vec<F>> = (0..d)
            .map(|r| (0..d).map(|c| lit(system.incidence().get(r, c).to_f64().unwrap_or(f64::NAN))).collect())
            .collect();
        let h = basis
            .iter()
            .map(|bi| {
                basis
                    .iter()
                    .map(|bj| {
                        let mb: Vec<F> = m.iter().map(|row| dot(row, bj)).collect();
                        dot(bi, &mb)
                    })
                    .collect()
            })
            .collect();
        Projector { dim: d, basis, u, v, uv, h }
    }

    /// Matrix of 𝐡 in the orthonormal basis of v^⊥.
    pub fn contraction_matrix(&self) -> &[Vec<F>] {
        &self.h
    }

    pub fn u(&self) -> &[F] {
        &self.u
    }

    pub fn v(&self) -> &[F] {
        &self.v
    }

    pub fn plane_dim(&self) -> usize {
        self.dim - 1
    }

    /// π(x) = x − (⟨x,v⟩/⟨u,v⟩)·u, in basis coordinates.
    pub fn project(&self, x: &[F]) -> Vec<F> {
        let t = dot(x, &self.v) / self.uv;
        let p: Vec<F> = x.iter().zip(&self.u).map(|(&a, &b)| a - t * b).collect();
        self.basis.iter().map(|b| dot(b, &p)).collect()
    }

    pub fn project_lattice<Z: LatticeScalar>(&self, x: &IntVector<Z>) -> Vec<F> {
        let xs: Vec<F> = x.coords().iter().map(|c| F::lit(c.to_f64().unwrap_or(f64::NAN))).collect();
        self.project(&xs)
    }

    /// 𝐡 applied to a point given in basis coordinates.
    pub fn contract(&self, p: &[F]) -> Vec<F> {
        self.h.iter().map(|row| dot(row, p)).collect()
    }

    pub fn contract_n(&self, p: &[F], n: u32) -> Vec<F> {
        (0..n).fold(p.to_vec(), |acc, _| self.contract(&acc))
    }

    /// 𝐡ⁿ[π(x), i] as a parallelotope.
    pub fn face_cell<Z: LatticeScalar>(&self, f: &Face<Z>, n: u32) -> ProjectedCell<F> {
        let base = self.contract_n(&self.project_lattice(&f.x), n);
        let edges = (0..self.dim)
            .filter(|&k| k as Letter + 1 != f.i)
            .map(|k| {
                let e: Vec<F> = (0..self.dim).map(|c| if c == k { F::one() } else { F::zero() }).collect();
                self.contract_n(&self.project(&e), n)
            })
            .collect();
        ProjectedCell { letter: f.i, base, edges }
    }
}

fn dot<F: RenderScalar>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (&x, &y)| acc + x * y)
}

fn norm<F: RenderScalar>(a: &[F]) -> F {
    dot(a, a).sqrt()
}

fn normalize<F: RenderScalar>(a: &[F]) -> Vec<F> {
    let n = norm(a);
    a.iter().map(|&x| x / n).collect()
}

/// base + Σ t_k·edges[k] in coordinates of v^⊥; `letter` is the face type j.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedCell<F> {
    pub letter: Letter,
    pub base: Vec<F>,
    pub edges: Vec<Vec<F>>,
}

impl<F: RenderScalar> ProjectedCell<F> {
    /// Corners; for two edges in the order 0, e_0, e_0+e_1, e_1.
    pub fn corners(&self) -> Vec<Vec<F>> {
        let k = self.edges.len();
        let masks: Vec<usize> = if k == 2 { vec![0, 1, 3, 2] } else { (0..1 << k).collect() };
        masks
            .into_iter()
            .map(|mask| {
                let mut p = self.base.clone();
                for (b, e) in self.edges.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        for (c, x) in p.iter_mut().zip(e) {
                            *c = *c + *x;
                        }
                    }
                }
                p
            })
            .collect()
    }

    /// Largest distance between two corners.
    pub fn diameter(&self) -> F {
        let cs = self.corners();
        let mut best = F::zero();
        for a in &cs {
            for b in &cs {
                let d: Vec<F> = a.iter().zip(b).map(|(&x, &y)| x - y).collect();
                best = best.max(norm(&d));
            }
        }
        best
    }
}

/// ℛ_n(i) = 𝐡ⁿπ(σ*)ⁿ[0, i].
#[derive(Clone, Debug)]
pub struct SubtilePatch<F> {
    pub letter: Letter,
    pub level: u32,
    pub cells: Vec<ProjectedCell<F>>,
}

impl<F: RenderScalar> SubtilePatch<F> {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Axis-aligned bounding box (min, max) over all corners.
    pub fn bounds(&self) -> (Vec<F>, Vec<F>) {
        let k = self.cells.first().map_or(0, |c| c.base.len());
        let mut lo = vec![F::infinity(); k];
        let mut hi = vec![F::neg_infinity(); k];
        for c in &self.cells {
            for p in c.corners() {
                for (a, (l, h)) in p.iter().zip(lo.iter_mut().zip(hi.iter_mut())) {
                    *l = l.min(*a);
                    *h = h.max(*a);
                }
            }
        }
        (lo, hi)
    }
}

/// |(σ*)ⁿ[0, i]|, the number of prefix-suffix walks of length n leaving i.
pub fn walk_count<Z: LatticeScalar>(system: &PisotSystem<Z>, letter: Letter, n: u32) -> Option<usize> {
    let d = system.dim();
    let mut counts = vec![1usize; d];
    for _ in 0..n {
        let mut next = vec![0usize; d];
        for (e, _) in system.edges() {
            let slot = &mut next[(e.from - 1) as usize];
            *slot = slot.checked_add(counts[(e.to - 1) as usize])?;
        }
        counts = next;
    }
    Some(counts[(letter - 1) as usize])
}

pub fn approximate_subtile<Z: LatticeScalar, F: RenderScalar>(
    system: &PisotSystem<Z>,
    projector: &Projector<F>,
    letter: Letter,
    level: u32,
    max_cells: usize,
) -> Result<SubtilePatch<F>, SteppedError> {
    match walk_count(system, letter, level) {
        Some(c) if c <= max_cells => {}
        c => return Err(SteppedError::PatchTooLarge { cells: c.unwrap_or(usize::MAX), cap: max_cells }),
    }
    let seed = BTreeSet::from([Face::origin(system.dim(), letter)]);
    let faces = system.iterate_dual(&seed, level)?;
    let cells = faces.iter().map(|f| projector.face_cell(f, level)).collect();
    Ok(SubtilePatch { letter, level, cells })
}
