//! Spectra of the model operators: the Robin–Dirichlet slab, power wells on
//! the half-line and the line, and the Airy zeros.

mod airy;
mod power_well;
mod slab;

pub use airy::{airy_ai, airy_zeros};
pub use power_well::{power_well_spectrum, PowerWellSpectrum};
pub use slab::{slab_ground, slab_positive_eigs, SlabGroundState};
