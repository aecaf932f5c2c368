//! Tensor meshes of the strip Π_r = 𝕋 × (0, r).

use serde::Serialize;

use super::coefficients::{tube_radius, DEPTH_CURVATURE_LIMIT};
use crate::geometry::{CurvatureMaxInfo, LocationClass, RobinArc, SampledGeometry};
use crate::spectra1d::{graded_mesh, Mesh1d};
use crate::{Error, Result};

/// Element degrees and grading parameters of the strip mesh.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StripMeshOptions {
    pub degree_s: usize,
    pub degree_t: usize,
    /// First t-cell height in units of 1/α.
    pub t_first_cell: f64,
    /// Linear growth rate of t-cells beyond the boundary layer.
    pub t_growth: f64,
    /// s-cell width at the ends of the Robin arc in units of 1/α.
    pub s_junction_cell: f64,
    /// Linear growth rate of s-cells away from the arc ends.
    pub s_growth: f64,
    /// Elements across the Robin arc far from its ends (upper bound on cell width).
    pub arc_elements: usize,
    /// Elements across the Neumann part far from the arc ends.
    pub outside_elements: usize,
}

impl Default for StripMeshOptions {
    fn default() -> Self {
        Self {
            degree_s: 2,
            degree_t: 4,
            t_first_cell: 0.5,
            t_growth: 0.35,
            s_junction_cell: 1.0,
            s_growth: 0.3,
            arc_elements: 24,
            outside_elements: 8,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StripGrid {
    pub alpha: f64,
    pub sigma: f64,
    pub r: f64,
    #[serde(skip)]
    pub s_mesh: Mesh1d,
    #[serde(skip)]
    pub t_mesh: Mesh1d,
    pub options: StripMeshOptions,
}

impl StripGrid {
    /// Builds the mesh for depth r = α^{−σ}. `n_s` and `n_t` are lower bounds
    /// on the number of s-nodes and t-nodes; the grading usually exceeds them.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        geom: &SampledGeometry,
        arc: RobinArc,
        info: &CurvatureMaxInfo,
        alpha: f64,
        sigma: f64,
        n_s: usize,
        n_t: usize,
        options: StripMeshOptions,
    ) -> Result<Self> {
        if !(alpha > 0.0) || !(sigma > 0.0 && sigma < 1.0) {
            return Err(Error::InvalidInput(format!("need α > 0 and σ ∈ (0, 1), got α = {alpha}, σ = {sigma}")));
        }
        let r = alpha.powf(-sigma);
        let mut grid = Self::with_depth(geom, arc, info, alpha, r, n_s, n_t, options)?;
        grid.sigma = sigma;
        Ok(grid)
    }

    /// Builds the mesh for an explicit depth `r`; α ≥ 0 only sets the mesh
    /// scales. The reported σ is NaN.
    #[allow(clippy::too_many_arguments)]
    pub fn with_depth(
        geom: &SampledGeometry,
        arc: RobinArc,
        info: &CurvatureMaxInfo,
        alpha: f64,
        r: f64,
        n_s: usize,
        n_t: usize,
        options: StripMeshOptions,
    ) -> Result<Self> {
        if n_t < 32 {
            return Err(Error::BadGrid(format!("n_t = {n_t}, at least 32 required")));
        }
        if !(alpha >= 0.0) || !(r > 0.0) {
            return Err(Error::InvalidInput(format!("need α ≥ 0 and r > 0, got α = {alpha}, r = {r}")));
        }
        let kmax = geom.k_max_abs();
        if r >= tube_radius(geom) || r * kmax >= DEPTH_CURVATURE_LIMIT {
            return Err(Error::OutOfTube(format!(
                "depth r = {r} with max|k| = {kmax} violates r·max|k| < {DEPTH_CURVATURE_LIMIT}"
            )));
        }
        // the boundary layer is never resolved more coarsely than r/8
        let scale_alpha = alpha.max(8.0 / r);
        let s_mesh = refine_to(n_s, options.degree_s, 0, |scale| s_mesh(geom, arc, info, scale_alpha, &options, scale))?;
        let t_mesh = refine_to(n_t, options.degree_t, 1, |scale| t_mesh(scale_alpha, r, &options, scale))?;
        let grid = Self { alpha, sigma: f64::NAN, r, s_mesh, t_mesh, options };
        let layer_nodes = grid.t_nodes().iter().filter(|&&t| t <= 1.0 / scale_alpha).count();
        if layer_nodes < 8 {
            return Err(Error::BadGrid(format!("only {layer_nodes} t-nodes inside the boundary layer")));
        }
        Ok(grid)
    }

    /// Number of s-nodes (periodic).
    pub fn n_s(&self) -> usize {
        self.options.degree_s * self.s_mesh.n_elements()
    }

    /// Number of t-nodes, including the Dirichlet node at t = r.
    pub fn n_t(&self) -> usize {
        self.options.degree_t * self.t_mesh.n_elements() + 1
    }

    /// Unknowns of the discrete problem.
    pub fn dof(&self) -> usize {
        self.n_s() * (self.n_t() - 1)
    }

    pub fn t_nodes(&self) -> Vec<f64> {
        let p = self.options.degree_t;
        let nodes = crate::spectra1d::gauss_lobatto_nodes(p);
        let v = self.t_mesh.vertices();
        let mut out = vec![0.0];
        for e in 0..self.t_mesh.n_elements() {
            for x in &nodes[1..] {
                out.push(v[e] + 0.5 * (x + 1.0) * (v[e + 1] - v[e]));
            }
        }
        out
    }
}

/// Rebuilds a mesh with uniformly shrunk spacing until it carries at least `min_nodes` nodes.
fn refine_to(min_nodes: usize, degree: usize, extra: usize, build: impl Fn(f64) -> Result<Mesh1d>) -> Result<Mesh1d> {
    let mut scale = 1.0;
    for _ in 0..64 {
        let mesh = build(scale)?;
        let nodes = degree * mesh.n_elements() + extra;
        if nodes >= min_nodes {
            return Ok(mesh);
        }
        scale *= (nodes as f64 / min_nodes as f64).min(0.95);
    }
    Err(Error::BadGrid(format!("could not reach {min_nodes} nodes")))
}

fn t_mesh(alpha: f64, r: f64, o: &StripMeshOptions, scale: f64) -> Result<Mesh1d> {
    let h0 = scale * o.t_first_cell / alpha;
    let layer = 2.0 / alpha;
    let h_max = scale * r / 4.0;
    graded_mesh(0.0, r, |t| (h0 + o.t_growth * (t - layer).max(0.0)).min(h_max).max(h0), 4)
}

fn s_mesh(
    geom: &SampledGeometry,
    arc: RobinArc,
    info: &CurvatureMaxInfo,
    alpha: f64,
    o: &StripMeshOptions,
    scale: f64,
) -> Result<Mesh1d> {
    let (ell, len) = (arc.ell, geom.length);
    let p = o.degree_s as f64;
    let h_junction = scale * o.s_junction_cell / alpha;
    let h_arc = scale * ell / o.arc_elements as f64;
    let h_out = scale * (len - ell) / o.outside_elements as f64;
    // refinement around the curvature maximum on its localization scale
    let well = match info.location_class {
        LocationClass::Constant => None,
        _ => {
            let delta = alpha.powf(-1.0 / (info.m as f64 + 2.0));
            Some((info.s_star, delta, scale * p * delta / 16.0))
        }
    };
    let spacing = |s: f64| {
        let dj = s.min(len - s).min((s - ell).abs());
        if s <= ell {
            let mut h = (h_junction + o.s_growth * dj).min(h_arc);
            if let Some((s_star, delta, h_star)) = well {
                let d = ((s - s_star).abs() - delta).max(0.0);
                h = h.min(h_star + o.s_growth * d);
            }
            h
        } else {
            (h_junction + 2.0 * o.s_growth * dj).min(h_out)
        }
    };
    let inside = graded_mesh(0.0, ell, spacing, 4)?;
    let outside = graded_mesh(ell, len, spacing, 2)?;
    inside.join(&outside)
}
