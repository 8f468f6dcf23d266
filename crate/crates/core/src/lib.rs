//! Exact computation of relative tensor products of Vec(Z_p) bimodule
//! categories through ladder categories and their Karoubi envelopes, and of
//! the resulting Brauer-Picard ring of Vec(Z_p).
//!
//! The pipeline runs bottom up:
//!
//! * [`scalar`]: exact arithmetic in Q(ζ_p).
//! * [`group`]: Z_p × Z_p, its subgroups and bilinear cocycles.
//! * [`bimodule`]: the indecomposable bimodules with their action and associator data.
//! * [`ladder`] and [`karoubi`]: the ladder category of a pair of bimodules and its idempotent completion.
//! * [`fusion`]: outer actions on the completed category and classification of the result.
//! * [`ring`]: the full multiplication table and its checks.
//! * [`wall`]: a domain-wall stacking model used as an independent cross-check.

pub mod bimodule;
pub mod error;
pub mod fusion;
pub mod group;
pub mod karoubi;
pub mod ladder;
pub mod ring;
pub mod scalar;
pub mod wall;

pub use bimodule::{catalogue, BimoduleData, BimoduleLabel};
pub use error::{Error, Result};
pub use fusion::{decompose, Decomposition};
pub use group::{CocycleClass, PairElt, Subgroup, ZpElt};
pub use karoubi::{KarObject, KarSimple, KaroubiEnvelope};
pub use ladder::{LadderCategory, LadderMorphism, LadderObject};
pub use ring::{build_table, closed_form_table, RingTable};
pub use scalar::{CyclotomicScalar, Rational};
pub use wall::{oracle_table, WallModel};
