//! Finite categories, truncated simplicial sets, Waldhausen-style structures
//! with two independent K0 pipelines, hammock localization, and simplicially
//! enriched categories — all at desk scale with exhaustive checks.

pub mod abelian;
pub mod fincat;
pub mod hammock;
pub mod instances;
pub mod scat;
pub mod sset;
pub mod waldhausen;

pub use abelian::{AbGroupPresentation, CanonicalAbGroup, GroupPresentation};
pub use fincat::{FinCat, FinFunctor, MorId, ObjId, WideSubcat};
pub use sset::{DegSimplex, FinSSet, SMap};
pub use waldhausen::WaldStructure;
