//! One-dimensional Lagrange finite elements and quadratic-form assembly.

use super::eigen::SymmetricPencil;
use super::quadrature::{gauss_legendre, gauss_lobatto_nodes};
use super::sparse::TripletBuilder;
use crate::{Error, Result};

/// Lagrange shape functions on Gauss–Lobatto points of [-1, 1].
#[derive(Debug, Clone)]
pub struct LagrangeBasis {
    pub degree: usize,
    pub nodes: Vec<f64>,
}

impl LagrangeBasis {
    pub fn new(degree: usize) -> Self {
        assert!(degree >= 1, "element degree must be positive");
        Self { degree, nodes: gauss_lobatto_nodes(degree) }
    }

    /// Values and derivatives (w.r.t. the reference coordinate) of every shape function.
    pub fn eval(&self, x: f64) -> (Vec<f64>, Vec<f64>) {
        let p = self.degree;
        let xs = &self.nodes;
        let mut val = vec![0.0; p + 1];
        let mut der = vec![0.0; p + 1];
        for i in 0..=p {
            let mut v = 1.0;
            for j in 0..=p {
                if j != i {
                    v *= (x - xs[j]) / (xs[i] - xs[j]);
                }
            }
            val[i] = v;
            let mut d = 0.0;
            for k in 0..=p {
                if k == i {
                    continue;
                }
                let mut term = 1.0 / (xs[i] - xs[k]);
                for j in 0..=p {
                    if j != i && j != k {
                        term *= (x - xs[j]) / (xs[i] - xs[j]);
                    }
                }
                d += term;
            }
            der[i] = d;
        }
        (val, der)
    }
}

/// Shape-function tables at the points of a Gauss rule.
#[derive(Debug, Clone)]
pub struct ReferenceTables {
    pub basis: LagrangeBasis,
    pub qpoints: Vec<f64>,
    pub qweights: Vec<f64>,
    /// `phi[q][i]`
    pub phi: Vec<Vec<f64>>,
    /// `dphi[q][i]` on the reference element
    pub dphi: Vec<Vec<f64>>,
}

impl ReferenceTables {
    pub fn new(degree: usize, n_quad: usize) -> Self {
        let basis = LagrangeBasis::new(degree);
        let (qpoints, qweights) = gauss_legendre(n_quad);
        let (phi, dphi) = qpoints.iter().map(|&x| basis.eval(x)).unzip();
        Self { basis, qpoints, qweights, phi, dphi }
    }

    pub fn for_degree(degree: usize) -> Self {
        Self::new(degree, degree + 3)
    }
}

/// Strictly increasing element vertices of an interval mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1d {
    vertices: Vec<f64>,
}

impl Mesh1d {
    pub fn new(vertices: Vec<f64>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::BadGrid("a mesh needs at least two vertices".into()));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::BadGrid("non-finite vertex".into()));
        }
        if vertices.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::BadGrid("vertices must be strictly increasing".into()));
        }
        Ok(Self { vertices })
    }

    pub fn uniform(a: f64, b: f64, n_elements: usize) -> Result<Self> {
        if n_elements == 0 || !(b > a) {
            return Err(Error::BadGrid(format!("cannot split [{a}, {b}] into {n_elements} cells")));
        }
        let h = (b - a) / n_elements as f64;
        let mut v: Vec<f64> = (0..=n_elements).map(|i| a + h * i as f64).collect();
        v[n_elements] = b;
        Self::new(v)
    }

    pub fn vertices(&self) -> &[f64] {
        &self.vertices
    }

    pub fn n_elements(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> f64 {
        self.vertices[0]
    }

    pub fn end(&self) -> f64 {
        *self.vertices.last().unwrap()
    }

    pub fn min_spacing(&self) -> f64 {
        self.vertices.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    pub fn max_spacing(&self) -> f64 {
        self.vertices.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    pub fn is_uniform(&self, rel_tol: f64) -> bool {
        let (lo, hi) = (self.min_spacing(), self.max_spacing());
        hi - lo <= rel_tol * hi
    }

    /// Concatenate with a mesh starting where this one ends.
    pub fn join(&self, other: &Mesh1d) -> Result<Mesh1d> {
        if (other.start() - self.end()).abs() > 1e-12 * self.end().abs().max(1.0) {
            return Err(Error::BadGrid("joined meshes must share an endpoint".into()));
        }
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices[1..]);
        Mesh1d::new(v)
    }
}

/// Builds a graded mesh on `[a, b]` from a local spacing function,
/// clamped to `[h_min, h_max]`. Vertices are equidistributed in `∫ dx / h(x)`.
pub fn graded_mesh(a: f64, b: f64, spacing: impl Fn(f64) -> f64, min_elements: usize) -> Result<Mesh1d> {
    if !(b > a) {
        return Err(Error::BadGrid(format!("empty interval [{a}, {b}]")));
    }
    // sample the density finely enough to resolve the smallest spacing
    let mut xs = vec![a];
    let mut x = a;
    while x < b {
        let h = spacing(x);
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::BadGrid(format!("non-positive spacing {h} at {x}")));
        }
        x = (x + 0.05 * h).min(b);
        xs.push(x);
    }
    let mut cum = vec![0.0; xs.len()];
    for i in 1..xs.len() {
        let d = xs[i] - xs[i - 1];
        cum[i] = cum[i - 1] + 0.5 * d * (1.0 / spacing(xs[i - 1]) + 1.0 / spacing(xs[i]));
    }
    let total = *cum.last().unwrap();
    let n = (total.ceil() as usize).max(min_elements).max(1);
    let mut verts = Vec::with_capacity(n + 1);
    verts.push(a);
    let mut j = 1;
    for k in 1..n {
        let target = total * k as f64 / n as f64;
        while cum[j] < target {
            j += 1;
        }
        let f = (target - cum[j - 1]) / (cum[j] - cum[j - 1]);
        verts.push(xs[j - 1] + f * (xs[j] - xs[j - 1]));
    }
    verts.push(b);
    Mesh1d::new(verts)
}

/// Degrees-of-freedom layout of a continuous degree-`p` Lagrange space.
#[derive(Debug, Clone)]
pub struct DofMap1d {
    pub degree: usize,
    pub periodic: bool,
    pub n_elements: usize,
}

impl DofMap1d {
    pub fn n_dofs(&self) -> usize {
        let full = self.degree * self.n_elements;
        if self.periodic {
            full
        } else {
            full + 1
        }
    }

    pub fn global(&self, element: usize, local: usize) -> usize {
        let g = element * self.degree + local;
        if self.periodic {
            g % self.n_dofs()
        } else {
            g
        }
    }

    /// Coordinates of every global dof.
    pub fn coordinates(&self, mesh: &Mesh1d, basis: &LagrangeBasis) -> Vec<f64> {
        let mut c = vec![0.0; self.n_dofs()];
        let v = mesh.vertices();
        for e in 0..self.n_elements {
            let (x0, x1) = (v[e], v[e + 1]);
            for (i, &xi) in basis.nodes.iter().enumerate() {
                let g = self.global(e, i);
                if !(self.periodic && e + 1 == self.n_elements && i == self.degree) {
                    c[g] = x0 + 0.5 * (xi + 1.0) * (x1 - x0);
                }
            }
        }
        c
    }
}

/// Boundary conditions for a one-dimensional form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bc1d {
    /// Dirichlet at both ends.
    Dirichlet,
    /// Natural (Neumann) at both ends.
    Neumann,
    /// The interval is a circle; its endpoints are identified.
    Periodic,
    /// Boundary term `-beta |f(a)|^2` at the left end, Dirichlet at the right end.
    RobinDirichlet { beta: f64 },
}

/// A discretized one-dimensional form with the mapping back to mesh points.
#[derive(Debug, Clone)]
pub struct Form1d {
    pub pencil: SymmetricPencil,
    /// coordinates of the retained (free) dofs, in pencil order
    pub coordinates: Vec<f64>,
    pub h_min: f64,
}

/// Discretizes `∫ a |f'|² + q |f|²` with degree-`degree` Lagrange elements.
pub fn assemble_form_1d(
    mesh: &Mesh1d,
    degree: usize,
    coeff_a: impl Fn(f64) -> f64,
    potential_q: impl Fn(f64) -> f64,
    bc: Bc1d,
) -> Result<Form1d> {
    let nodes = mesh.n_elements() * degree + 1;
    if nodes < 8 {
        return Err(Error::BadGrid(format!("{nodes} grid points, at least 8 required")));
    }
    let tables = ReferenceTables::for_degree(degree);
    let map = DofMap1d { degree, periodic: bc == Bc1d::Periodic, n_elements: mesh.n_elements() };
    let coords = map.coordinates(mesh, &tables.basis);
    let n_all = map.n_dofs();

    // free dofs after removing Dirichlet ends
    let (drop_left, drop_right) = match bc {
        Bc1d::Dirichlet => (true, true),
        Bc1d::RobinDirichlet { .. } => (false, true),
        Bc1d::Neumann | Bc1d::Periodic => (false, false),
    };
    let mut reduced = vec![usize::MAX; n_all];
    let mut free_coords = Vec::with_capacity(n_all);
    for g in 0..n_all {
        let dropped = (drop_left && g == 0) || (drop_right && g == n_all - 1 && !map.periodic);
        if !dropped {
            reduced[g] = free_coords.len();
            free_coords.push(coords[g]);
        }
    }
    let n_free = free_coords.len();
    let per_elem = (degree + 1) * (degree + 1);
    let mut kb = TripletBuilder::with_capacity(n_free, per_elem * mesh.n_elements() + 1);
    let mut mb = TripletBuilder::with_capacity(n_free, per_elem * mesh.n_elements());
    let v = mesh.vertices();
    let mut ke = vec![0.0; per_elem];
    let mut me = vec![0.0; per_elem];
    for e in 0..mesh.n_elements() {
        let (x0, x1) = (v[e], v[e + 1]);
        let jac = 0.5 * (x1 - x0);
        ke.iter_mut().for_each(|x| *x = 0.0);
        me.iter_mut().for_each(|x| *x = 0.0);
        for (qi, &xq) in tables.qpoints.iter().enumerate() {
            let x = x0 + (xq + 1.0) * jac;
            let w = tables.qweights[qi] * jac;
            let (a, q) = (coeff_a(x), potential_q(x));
            let phi = &tables.phi[qi];
            let dphi = &tables.dphi[qi];
            for i in 0..=degree {
                for j in 0..=degree {
                    let di = dphi[i] / jac;
                    let dj = dphi[j] / jac;
                    ke[i * (degree + 1) + j] += w * (a * di * dj + q * phi[i] * phi[j]);
                    me[i * (degree + 1) + j] += w * phi[i] * phi[j];
                }
            }
        }
        for i in 0..=degree {
            let gi = reduced[map.global(e, i)];
            if gi == usize::MAX {
                continue;
            }
            for j in 0..=degree {
                let gj = reduced[map.global(e, j)];
                if gj == usize::MAX {
                    continue;
                }
                kb.add(gi, gj, ke[i * (degree + 1) + j]);
                mb.add(gi, gj, me[i * (degree + 1) + j]);
            }
        }
    }
    if let Bc1d::RobinDirichlet { beta } = bc {
        kb.add(reduced[0], reduced[0], -beta);
    }
    Ok(Form1d {
        pencil: SymmetricPencil::new(kb.build(), mb.build())?,
        coordinates: free_coords,
        h_min: mesh.min_spacing(),
    })
}

/// Same as [`assemble_form_1d`] on a uniform mesh; rejects non-uniform vertex sets.
pub fn assemble_form_1d_uniform(
    mesh: &Mesh1d,
    coeff_a: impl Fn(f64) -> f64,
    potential_q: impl Fn(f64) -> f64,
    bc: Bc1d,
) -> Result<Form1d> {
    if !mesh.is_uniform(1e-9) {
        return Err(Error::BadGrid("grid is not uniform".into()));
    }
    assemble_form_1d(mesh, 1, coeff_a, potential_q, bc)
}
