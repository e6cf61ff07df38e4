//! Exact computations with unital partial actions of finite groups on split
//! commutative algebras `S = ⊕ R e_x` over a field `R`.
//!
//! With `R` connected, such an action is a family of partial bijections
//! `σ_g : X_{g⁻¹} → X_g` of the primitive idempotents, and every construction
//! here (globalization, invariants, quotient actions, Galois coordinates,
//! products of extensions) is carried out on that combinatorial data, with
//! exact linear algebra over `ℚ` or `𝔽_p` where a linear question is asked.

pub mod cli;
pub mod envelope;
pub mod error;
pub mod fixtures;
pub mod galois;
pub mod group;
pub mod json;
pub mod notation;
pub mod paction;
pub mod quotient;
pub mod ring;
pub mod semigroup;

pub use error::{Error, Result};
pub use group::{GroupTable, Subgroup};
pub use paction::{AlgElement, ExtensionRecord, PointSet, SetPartialAction};
pub use ring::{BaseRing, Scalar};
