//! Power-law wells −f'' + β tᵐ f on the half-line (Dirichlet at 0) and,
//! for even m, on the whole line.

use serde::Serialize;

use crate::spectra1d::{assemble_form_1d, form_eigs, Bc1d, Mesh1d};
use crate::{Error, Result};

const ELEMENT_DEGREE: usize = 8;
const TURNING_SAFETY: f64 = 10.0;
const STABLE_REL: f64 = 1e-8;
const MAX_REFINEMENTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerWellSpectrum {
    pub m: u32,
    pub beta: f64,
    pub halfline: bool,
    pub eigenvalues: Vec<f64>,
    pub t_box: f64,
    pub dof: usize,
}

fn solve_truncated(m: u32, beta: f64, halfline: bool, n: usize, t_box: f64, cells: usize) -> Result<(Vec<f64>, usize)> {
    let (a, b) = if halfline { (0.0, t_box) } else { (-t_box, t_box) };
    let cells = if halfline { cells } else { 2 * cells };
    let mesh = Mesh1d::uniform(a, b, cells)?;
    let form = assemble_form_1d(&mesh, ELEMENT_DEGREE, |_| 1.0, |t| beta * t.abs().powi(m as i32), Bc1d::Dirichlet)?;
    let spec = form_eigs(&form, n, Some(0.0))?;
    Ok((spec.eigenvalues, form.pencil.dof()))
}

/// Lowest `n` eigenvalues of the (half-)line power well, truncated to a box
/// with Dirichlet walls well beyond the classical turning point.
pub fn power_well_spectrum(m: u32, beta: f64, halfline: bool, n: usize) -> Result<PowerWellSpectrum> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidInput("power well needs m ≥ 1 and n ≥ 1".into()));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidInput(format!("β = {beta} must be positive")));
    }
    if !halfline && m % 2 == 1 {
        return Err(Error::InvalidInput(format!("whole-line well needs even m, got {m}")));
    }
    let mf = m as f64;
    // homogeneity: E_n scales like β^{2/(m+2)}; the dimensionless guess grows like n^{2m/(m+2)}
    let scale = beta.powf(2.0 / (mf + 2.0));
    let guess = scale * 2.0 * (2.0 * n as f64 + 1.0).powf(2.0 * mf / (mf + 2.0));
    let box_for = |e: f64| (TURNING_SAFETY * e / beta).powf(1.0 / mf);
    let mut t_box = box_for(guess);
    // cells per unit length follow the local wavenumber at the wall energy
    let mut cells = ((t_box * (TURNING_SAFETY * guess).sqrt() / 6.0).ceil() as usize).max(12);

    let (mut prev, _) = solve_truncated(m, beta, halfline, n, t_box, cells)?;
    if box_for(prev[n - 1]) > t_box {
        t_box = box_for(prev[n - 1]);
        prev = solve_truncated(m, beta, halfline, n, t_box, cells)?.0;
    }
    for _ in 0..MAX_REFINEMENTS {
        let t_next = 1.25 * t_box;
        let cells_next = (cells as f64 * 1.25 * 1.5).ceil() as usize;
        let (next, dof) = solve_truncated(m, beta, halfline, n, t_next, cells_next)?;
        let stable = prev
            .iter()
            .zip(&next)
            .all(|(a, b)| (a - b).abs() <= STABLE_REL * b.abs().max(1e-300));
        if stable {
            return Ok(PowerWellSpectrum { m, beta, halfline, eigenvalues: next, t_box: t_next, dof });
        }
        prev = next;
        t_box = t_next;
        cells = cells_next;
    }
    Err(Error::NoConvergence(format!(
        "power well m = {m}, β = {beta}: eigenvalues did not stabilize to {STABLE_REL:e}"
    )))
}
