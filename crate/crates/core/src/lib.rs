//! Multiparticle entanglement of symmetric pure states of `N` two-level atoms.
//!
//! The collective spin of `N` atoms lives in the `j = N/2` sector. For a
//! state with nonzero mean spin, the frame `(x', y', z')` puts `⟨J⟩` on `z'`.
//! The transverse variances then split into `N/4` of single-atom noise plus
//! the pair-correlation terms `CORRX`/`CORRY`, and the entanglement parameter
//! is `E = (CORRX² + CORRY²)/2`.
//!
//! [`squeezed`] evaluates `E` in closed form for the squeezed-vacuum-driven
//! state `A_m e^{ξJ_z} e^{-iπJ_y/2}|j,m⟩`. [`spin`] and [`product`] supply
//! dense and tensor-product oracles that cross-check it.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod entangle;
pub mod error;
pub mod numeric;
pub mod product;
pub mod spin;
pub mod squeezed;
pub mod wigner;

pub use entangle::{analyze, EntanglementReport, FrameAngles};
pub use error::{Error, Result};
pub use numeric::LogScaled;
pub use spin::{make_sector, CollectiveState, MomentTable, SpinOperator, SpinSector};
pub use squeezed::SqueezedVacuumParams;
pub use wigner::SeriesBundle;
