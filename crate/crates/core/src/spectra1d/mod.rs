//! Shared numerical kernel: symmetric pencils assembled from quadratic forms
//! and their lowest eigenpairs.

pub mod banded;
pub mod eigen;
pub mod fem;
pub mod quadrature;
pub mod sparse;

pub use eigen::{
    lowest_eigs, lowest_eigs_with, EigOptions, Method, Spectrum, SymmetricPencil, DENSE_MAX_DOF, TOL_EIG, TOL_RES,
};
pub use fem::{
    assemble_form_1d, assemble_form_1d_uniform, graded_mesh, Bc1d, DofMap1d, Form1d, LagrangeBasis, Mesh1d,
    ReferenceTables,
};
pub use quadrature::{gauss_legendre, gauss_lobatto_nodes};
pub use sparse::{CsrMatrix, TripletBuilder};

/// Lowest `n` eigenvalues of a one-dimensional form, searching the shift automatically.
pub fn form_eigs(form: &Form1d, n: usize, hint: Option<f64>) -> crate::Result<Spectrum> {
    let opts = EigOptions { hint, ..Default::default() };
    let mut s = lowest_eigs_with(&form.pencil, n, &opts)?;
    s.h = form.h_min;
    Ok(s)
}
