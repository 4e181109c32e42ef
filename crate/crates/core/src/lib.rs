//! Sylow 2-subgroups of symmetric and alternating groups, realised as
//! automorphism groups of truncated binary rooted trees, plus an exhaustive
//! checker for their structural properties.
//!
//! * [`tree`]: portraits of tree automorphisms and their leaf action.
//! * [`perm`]: permutations, parity, cycle type, 2-adic Legendre valuation.
//! * [`sylow`]: generator families and Sylow constructions for `S_n`, `A_n`.
//! * [`group`]: closure enumeration, normality, Frattini subgroup, ranks.
//! * [`verify`]: the claim registry behind the `sylow2 verify` command.
//! * [`cache`]: versioned on-disk cache of enumerated groups.

pub mod cache;
pub mod error;
pub mod group;
pub mod perm;
pub mod sylow;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use group::{EnumeratedGroup, Fingerprint, SubgroupRelation, DEFAULT_CAP};
pub use perm::{legendre_nu2, CycleType, LeafPermutation, Parity};
pub use sylow::{Decomposition, Generator, GeneratorSet, Kind};
pub use tree::{ElementClass, Portrait, VertexAddress};
