//! Computational workbench for tilting theory in module categories of
//! finite-dimensional algebras over prime fields, including the relative
//! exact structures cut out by a list of generators.
//!
//! The layers build on each other bottom-up: [`linalg`] supplies exact
//! arithmetic, [`algebra`] based algebras and quivers, [`modcat`] modules and
//! their homomorphisms, [`homology`] resolutions and derived functors,
//! [`exactstruct`] relative structures, [`subcat`] subcategory membership
//! tests, [`tilting`] the tilting engine and [`miyashita`] the transport
//! functors along an endomorphism algebra.

pub mod algebra;
pub mod error;
pub mod exactstruct;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod miyashita;
pub mod modcat;
pub mod report;
pub mod subcat;
pub mod tilting;

pub use algebra::{BasedAlgebra, Quiver};
pub use error::{Error, Result};
pub use exactstruct::ExactStructure;
pub use linalg::{Fp, Mat};
pub use modcat::{Module, ModuleMap};
pub use subcat::{SubcatSpec, Universe};

/// Default resolution cutoff.
pub const DEFAULT_CUTOFF: usize = 20;
/// Default budget for exhaustive scans, counted in candidate tuples.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Three-valued verdict used wherever a computation can run out of room.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

impl Decision {
    pub fn from_bool(b: bool) -> Decision {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }

    /// Conjunction: any `No` wins, then any `Undecided`.
    pub fn and(self, other: Decision) -> Decision {
        match (self, other) {
            (Decision::No, _) | (_, Decision::No) => Decision::No,
            (Decision::Undecided, _) | (_, Decision::Undecided) => Decision::Undecided,
            _ => Decision::Yes,
        }
    }
}
