//! Galois module structure of Riemann–Roch spaces and polydifferentials of
//! curves with a `p`-hypo-elementary group of automorphisms, together with
//! closed forms for hyperelliptic curves and for modular curves `X(ℓ)` in
//! characteristic 3.

pub mod arith;
pub mod deformation;
pub mod engine;
pub mod genus;
pub mod hyperelliptic;
pub mod model;
pub mod modular;
pub mod synthetic;

pub use engine::{EngineError, EngineOutput, EngineTrace};
pub use model::{
    BranchOrbit, CoverData, Decomposition, GroupData, IndecomposableLabel, Mode, ValidationError,
};
