//! Maximal trigonal curves in Hirzebruch surfaces, handled combinatorially.
//!
//! A maximal trigonal curve is determined by its skeleton, a planar map with
//! vertices of valency at most three. This crate enumerates and classifies
//! skeletons, completes them to dessins, computes braid monodromy and the
//! resulting fundamental-group data, performs exact Weierstraß/j-invariant
//! arithmetic over ℚ, and evaluates the closed-form Zariski k-plet counts.

pub mod braid;
pub mod counting;
pub mod dessin;
pub mod error;
pub mod monodromy;
pub mod pi1;
pub mod skeleton;
pub mod trees;
pub mod weierstrass;

pub use braid::{BraidAutomorphism, BraidWord, FreeWord, Permutation};
pub use error::{Error, Result};
pub use skeleton::{Marking, Skeleton};
pub use trees::RootedBinaryTree;
pub use dessin::{DessinCounts, FiberType, TrichotomicGraph};
pub use monodromy::MonodromyPresentation;
pub use pi1::GroupPresentation;
pub use weierstrass::{RatPoly, RationalFunction};
pub use counting::CountReport;
