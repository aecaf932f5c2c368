//! Tensor-product Lagrange assembly of the strip forms and their solution.

use serde::Serialize;

use super::coefficients::{bound_constant_a, pointwise_bound, StripCoefficients, StripVariant};
use super::grid::{StripGrid, StripMeshOptions};
use crate::geometry::{CurvatureMaxInfo, RobinArc, SampledGeometry};
use crate::spectra1d::{lowest_eigs_with, DofMap1d, EigOptions, ReferenceTables, Spectrum, SymmetricPencil, TripletBuilder};
use crate::Result;

/// Geometry and arc data shared by every strip solve.
#[derive(Debug, Clone)]
pub struct StripProblem<'a> {
    pub geom: &'a SampledGeometry,
    pub arc: RobinArc,
    pub info: CurvatureMaxInfo,
    pub options: StripMeshOptions,
}

/// Eigenvalues of one strip form together with the discretization used.
#[derive(Debug, Clone, Serialize)]
pub struct StripSolution {
    pub variant: StripVariant,
    pub spectrum: Spectrum,
    pub r: f64,
    pub bound_a: f64,
    pub n_s: usize,
    pub n_t: usize,
}

/// Curvature data at one quadrature abscissa in s.
#[derive(Debug, Clone, Copy)]
struct SPoint {
    k: f64,
    k1: f64,
    k2: f64,
}

impl<'a> StripProblem<'a> {
    pub fn new(geom: &'a SampledGeometry, arc: RobinArc, info: CurvatureMaxInfo) -> Self {
        Self { geom, arc, info, options: StripMeshOptions::default() }
    }

    pub fn grid(&self, alpha: f64, sigma: f64, n_s: usize, n_t: usize) -> Result<StripGrid> {
        StripGrid::new(self.geom, self.arc, &self.info, alpha, sigma, n_s, n_t, self.options)
    }

    fn s_points(&self, grid: &StripGrid, tables: &ReferenceTables) -> Result<Vec<Vec<SPoint>>> {
        let v = grid.s_mesh.vertices();
        (0..grid.s_mesh.n_elements())
            .map(|e| {
                tables
                    .qpoints
                    .iter()
                    .map(|&x| {
                        let s = v[e] + 0.5 * (x + 1.0) * (v[e + 1] - v[e]);
                        let f = self.geom.frame(s)?;
                        Ok(SPoint { k: f.k, k1: f.k1, k2: f.k2 })
                    })
                    .collect()
            })
            .collect()
    }

    fn t_points(grid: &StripGrid, tables: &ReferenceTables) -> Vec<Vec<f64>> {
        let v = grid.t_mesh.vertices();
        (0..grid.t_mesh.n_elements())
            .map(|e| tables.qpoints.iter().map(|&x| v[e] + 0.5 * (x + 1.0) * (v[e + 1] - v[e])).collect())
            .collect()
    }

    /// The bound constant on Π_r, raised if any quadrature point needs more.
    pub fn bound_constant(&self, grid: &StripGrid) -> Result<f64> {
        let ts = ReferenceTables::for_degree(grid.options.degree_s);
        let tt = ReferenceTables::for_degree(grid.options.degree_t);
        let sp = self.s_points(grid, &ts)?;
        let tp = Self::t_points(grid, &tt);
        let mut quad = 0.0f64;
        for p in sp.iter().flatten() {
            for &t in tp.iter().flatten() {
                quad = quad.max(pointwise_bound(p.k, p.k1, p.k2, t));
            }
        }
        Ok(bound_constant_a(self.geom, grid.r)?.max(1.1 * quad))
    }

    /// Stiffness and mass matrices of one strip form on `grid`.
    pub fn assemble(&self, grid: &StripGrid, coeffs: &StripCoefficients) -> Result<SymmetricPencil> {
        let (ps, pt) = (grid.options.degree_s, grid.options.degree_t);
        let ts = ReferenceTables::for_degree(ps);
        let tt = ReferenceTables::for_degree(pt);
        let sp = self.s_points(grid, &ts)?;
        let tp = Self::t_points(grid, &tt);
        let dm_s = DofMap1d { degree: ps, periodic: true, n_elements: grid.s_mesh.n_elements() };
        let dm_t = DofMap1d { degree: pt, periodic: false, n_elements: grid.t_mesh.n_elements() };
        let nt = dm_t.n_dofs() - 1; // the node at t = r carries the Dirichlet condition
        let dof = dm_s.n_dofs() * nt;
        let (sv, tv) = (grid.s_mesh.vertices(), grid.t_mesh.vertices());
        let nloc = (ps + 1) * (pt + 1);
        let mut kb = TripletBuilder::with_capacity(dof, grid.s_mesh.n_elements() * grid.t_mesh.n_elements() * nloc * nloc);
        let mut mb = TripletBuilder::with_capacity(dof, grid.s_mesh.n_elements() * grid.t_mesh.n_elements() * nloc * nloc);
        let mut ke = vec![0.0; nloc * nloc];
        let mut me = vec![0.0; nloc * nloc];
        let mut globals = vec![None; nloc];

        for es in 0..grid.s_mesh.n_elements() {
            let js = 0.5 * (sv[es + 1] - sv[es]);
            for et in 0..grid.t_mesh.n_elements() {
                let jt = 0.5 * (tv[et + 1] - tv[et]);
                ke.iter_mut().for_each(|x| *x = 0.0);
                me.iter_mut().for_each(|x| *x = 0.0);
                for (qs, p) in sp[es].iter().enumerate() {
                    let (phi, dphi) = (&ts.phi[qs], &ts.dphi[qs]);
                    for (qt, &t) in tp[et].iter().enumerate() {
                        let (psi, dpsi) = (&tt.phi[qt], &tt.dphi[qt]);
                        let w = ts.qweights[qs] * tt.qweights[qt] * js * jt;
                        let cs = coeffs.ds_coeff(p.k, t) / (js * js);
                        let ct = 1.0 / (jt * jt);
                        let cm = coeffs.mass_coeff(p.k, p.k1, p.k2, t);
                        for i in 0..=ps {
                            for j in 0..=pt {
                                let a = i * (pt + 1) + j;
                                let (u, us, ut) = (phi[i] * psi[j], dphi[i] * psi[j], phi[i] * dpsi[j]);
                                for i2 in 0..=ps {
                                    for j2 in 0..=pt {
                                        let b = i2 * (pt + 1) + j2;
                                        let v = phi[i2] * psi[j2];
                                        let vs = dphi[i2] * psi[j2];
                                        let vt = phi[i2] * dpsi[j2];
                                        ke[a * nloc + b] += w * (cs * us * vs + ct * ut * vt + cm * u * v);
                                        me[a * nloc + b] += w * u * v;
                                    }
                                }
                            }
                        }
                    }
                }
                // Robin term on the bottom edge of arc elements; only the t = 0 node is nonzero there
                if et == 0 && sv[es] < self.arc.ell {
                    for (qs, p) in sp[es].iter().enumerate() {
                        let w = ts.qweights[qs] * js * coeffs.boundary_coeff(p.k);
                        let phi = &ts.phi[qs];
                        for i in 0..=ps {
                            for i2 in 0..=ps {
                                ke[(i * (pt + 1)) * nloc + i2 * (pt + 1)] -= w * phi[i] * phi[i2];
                            }
                        }
                    }
                }
                for i in 0..=ps {
                    for j in 0..=pt {
                        let gt = dm_t.global(et, j);
                        globals[i * (pt + 1) + j] = (gt < nt).then(|| dm_s.global(es, i) * nt + gt);
                    }
                }
                for a in 0..nloc {
                    let Some(ga) = globals[a] else { continue };
                    for b in 0..nloc {
                        let Some(gb) = globals[b] else { continue };
                        kb.add(ga, gb, ke[a * nloc + b]);
                        mb.add(ga, gb, me[a * nloc + b]);
                    }
                }
            }
        }
        SymmetricPencil::new(kb.build(), mb.build())
    }

    /// Lowest `n` eigenvalues of one strip form with depth r = α^{−σ}.
    pub fn solve(&self, alpha: f64, sigma: f64, variant: StripVariant, n: usize, n_s: usize, n_t: usize) -> Result<StripSolution> {
        let grid = self.grid(alpha, sigma, n_s, n_t)?;
        self.solve_on(&grid, variant, n)
    }

    /// Same as [`StripProblem::solve`] on a prebuilt grid, so that several variants share it.
    pub fn solve_on(&self, grid: &StripGrid, variant: StripVariant, n: usize) -> Result<StripSolution> {
        let bound_a = self.bound_constant(grid)?;
        let coeffs = StripCoefficients { alpha: grid.alpha, r: grid.r, variant, bound_a };
        let pencil = self.assemble(grid, &coeffs)?;
        let k_star = self.info.k_star;
        let hint = -(grid.alpha + 0.5 * k_star).powi(2);
        let opts = EigOptions { hint: Some(hint), ..Default::default() };
        let mut spectrum = lowest_eigs_with(&pencil, n, &opts)?;
        spectrum.h = grid.s_mesh.min_spacing().min(grid.t_mesh.min_spacing());
        Ok(StripSolution { variant, spectrum, r: grid.r, bound_a, n_s: grid.n_s(), n_t: grid.n_t() })
    }
}

/// Lowest `n` eigenvalues of the strip form `variant` with default mesh options.
#[allow(clippy::too_many_arguments)]
pub fn strip_eigs(
    geom: &SampledGeometry,
    arc: RobinArc,
    info: &CurvatureMaxInfo,
    alpha: f64,
    sigma: f64,
    variant: StripVariant,
    n: usize,
    n_s: usize,
    n_t: usize,
) -> Result<StripSolution> {
    StripProblem::new(geom, arc, *info).solve(alpha, sigma, variant, n, n_s, n_t)
}
