//! Admissible decompositions of finite directed graphs and the pullback
//! squares of Leavitt path algebras they induce.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: finite graphs, paths, hereditary and saturated vertex sets,
//!   quotient graphs;
//! * [`format`]: the line-based graph file format and DOT export;
//! * [`decomposition`]: admissibility of `{F₁, F₂}` and enumeration;
//! * [`leavitt`]: exact arithmetic and normal forms over ℚ;
//! * [`morphisms`]: generator-defined homomorphisms, quotient maps, ideals;
//! * [`pullback`]: the square `E → F₁, F₂ → F₁ ∩ F₂` and its verification;
//! * [`corpus`]: the standard example graphs.

pub mod corpus;
pub mod decomposition;
pub mod format;
pub mod graph;
pub mod leavitt;
pub mod linalg;
pub mod morphisms;
pub mod pullback;
