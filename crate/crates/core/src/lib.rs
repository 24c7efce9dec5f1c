//! Contact graphs and neighbor graphs of self-affine tiles and of Rauzy
//! fractals of Pisot unit substitutions.
//!
//! Lattice code is generic over [`exactmath::LatticeScalar`] and drawing code
//! over [`exactmath::RenderScalar`]. The aliases below fix `BigInt` and `f64`.

pub mod corona;
pub mod exactmath;
pub mod formats;
pub mod graph;
pub mod rauzygraphs;
pub mod selfaffine;
pub mod stepped;
pub mod substitution;

pub use num_bigint::BigInt;

pub type Vector = exactmath::IntVector<BigInt>;
pub type Matrix = exactmath::IntMatrix<BigInt>;
pub type TileSystem = selfaffine::TileSystem<BigInt>;
pub type LatticeGraph = selfaffine::LatticeGraph<BigInt>;
pub type TilePatch = selfaffine::TilePatch<BigInt>;
pub type PisotSystem = stepped::PisotSystem<BigInt>;
pub type Face = stepped::Face<BigInt>;
pub type SignedTriple = stepped::SignedTriple<BigInt>;
pub type SimpleGraph = rauzygraphs::SimpleGraph<BigInt>;
pub type NormalizedGraph = rauzygraphs::NormalizedGraph<BigInt>;
pub type Projector = stepped::Projector<f64>;
pub type SubtilePatch = stepped::SubtilePatch<f64>;
