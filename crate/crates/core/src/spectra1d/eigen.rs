//! Lowest eigenpairs of a symmetric pencil `K x = λ M x`.
//!
//! Small pencils go through a dense Cholesky reduction. Larger ones use a
//! block Krylov space of the shift-inverted operator `(K - σM)⁻¹ M` followed
//! by a Rayleigh–Ritz projection of `K` onto it.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::banded::{reverse_cuthill_mckee, BandedCholesky};
use super::sparse::{axpy, dot, CsrMatrix};
use crate::{Error, Result};

/// Above this dimension the Krylov path is used.
pub const DENSE_MAX_DOF: usize = 600;
pub const TOL_RES: f64 = 1e-9;
pub const TOL_EIG: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct SymmetricPencil {
    pub stiffness: CsrMatrix,
    pub mass: CsrMatrix,
}

impl SymmetricPencil {
    pub fn new(stiffness: CsrMatrix, mass: CsrMatrix) -> Result<Self> {
        if stiffness.dim() != mass.dim() {
            return Err(Error::InvalidInput(format!(
                "stiffness is {0}x{0} but mass is {1}x{1}",
                stiffness.dim(),
                mass.dim()
            )));
        }
        Ok(Self { stiffness, mass })
    }

    pub fn dof(&self) -> usize {
        self.stiffness.dim()
    }

    pub fn bandwidth(&self) -> usize {
        self.stiffness.bandwidth().max(self.mass.bandwidth())
    }

    /// Rayleigh-quotient upper bound for the lowest eigenvalue from unit vectors.
    pub fn diagonal_upper_bound(&self) -> f64 {
        self.stiffness
            .diagonal()
            .iter()
            .zip(self.mass.diagonal())
            .map(|(k, m)| k / m)
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    #[serde(skip)]
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    pub dof: usize,
    /// smallest mesh spacing of the underlying discretization (0 when unknown)
    pub h: f64,
    pub residual_norms: Vec<f64>,
}

impl Spectrum {
    /// Eigenvalues with near-duplicates (within `tol` relative) merged.
    pub fn distinct(&self, tol: f64) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for &v in &self.eigenvalues {
            match out.last() {
                Some(&last) if (v - last).abs() <= tol * (1.0 + v.abs()) => {}
                _ => out.push(v),
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Dense,
    Krylov,
}

#[derive(Debug, Clone)]
pub struct EigOptions {
    /// Shift strictly below the lowest eigenvalue; `None` searches for one.
    pub shift: Option<f64>,
    /// Hint for the location of the lowest eigenvalue, used by the shift search.
    pub hint: Option<f64>,
    pub method: Method,
    pub tol_res: f64,
    pub max_restarts: usize,
    pub seed: u64,
    pub keep_vectors: bool,
}

impl Default for EigOptions {
    fn default() -> Self {
        Self {
            shift: None,
            hint: None,
            method: Method::Auto,
            tol_res: TOL_RES,
            max_restarts: 30,
            seed: 0x5eed_2024,
            keep_vectors: false,
        }
    }
}

/// The `n` smallest generalized eigenvalues with a caller-supplied shift.
///
/// If `K - shift·M` is not positive definite the shift is lowered by one and
/// retried once.
pub fn lowest_eigs(pencil: &SymmetricPencil, n: usize, shift: f64) -> Result<Spectrum> {
    let opts = EigOptions { shift: Some(shift), keep_vectors: true, ..Default::default() };
    lowest_eigs_with(pencil, n, &opts)
}

pub fn lowest_eigs_with(pencil: &SymmetricPencil, n: usize, opts: &EigOptions) -> Result<Spectrum> {
    let dof = pencil.dof();
    if n == 0 {
        return Err(Error::InvalidInput("requested zero eigenvalues".into()));
    }
    if n > dof {
        return Err(Error::InvalidInput(format!("requested {n} eigenvalues of a {dof}-dof pencil")));
    }
    let dense = match opts.method {
        Method::Dense => true,
        Method::Krylov => false,
        Method::Auto => dof <= DENSE_MAX_DOF,
    };
    if dense {
        return dense_lowest(pencil, n, opts.keep_vectors);
    }
    if 4 * n > dof {
        return Err(Error::InvalidInput(format!(
            "Krylov path needs n <= dof/4 (n = {n}, dof = {dof})"
        )));
    }
    let perm = reverse_cuthill_mckee(&pencil.stiffness.adjacency());
    let factor = match opts.shift {
        Some(s) => match shifted_factor(pencil, s, &perm) {
            Some(f) => f,
            None => match shifted_factor(pencil, s - 1.0, &perm) {
                Some(f) => f,
                None => {
                    return Err(Error::FactorizationFailure(format!(
                        "K - σM is not positive definite for σ = {s} or σ = {}",
                        s - 1.0
                    )))
                }
            },
        },
        None => search_shift(pencil, opts.hint, &perm)?.1,
    };
    let mass_factor = BandedCholesky::factor_with(&pencil.mass, perm)
        .ok_or_else(|| Error::FactorizationFailure("mass matrix is not positive definite".into()))?;
    krylov_lowest(pencil, n, &factor, &mass_factor, opts)
}

fn shifted_factor(pencil: &SymmetricPencil, sigma: f64, perm: &[usize]) -> Option<BandedCholesky> {
    let a = pencil.stiffness.add_scaled(-sigma, &pencil.mass);
    BandedCholesky::factor_with(&a, perm.to_vec())
}

/// Bracket the lowest eigenvalue with Cholesky inertia tests: `K - σM` is
/// positive definite exactly when σ lies below the spectrum.
fn search_shift(
    pencil: &SymmetricPencil,
    hint: Option<f64>,
    perm: &[usize],
) -> Result<(f64, BandedCholesky)> {
    let upper = pencil.diagonal_upper_bound();
    let start = hint.map(|h| h.min(upper)).unwrap_or(upper);
    let mut step = 1e-3 * start.abs().max(1.0);
    // an upper point where factorization fails (or the Rayleigh bound)
    let mut hi = upper;
    let mut lo = start;
    let mut lo_factor = None;
    for _ in 0..200 {
        match shifted_factor(pencil, lo, perm) {
            Some(f) => {
                lo_factor = Some(f);
                break;
            }
            None => {
                hi = hi.min(lo);
                lo -= step;
                step *= 2.0;
            }
        }
    }
    let mut lo_factor = lo_factor
        .ok_or_else(|| Error::FactorizationFailure("no shift below the spectrum found".into()))?;
    // tighten from above when the start itself was below the spectrum
    if lo == start && hi > lo {
        let mut probe_step = 1e-3 * lo.abs().max(1.0);
        let mut probe = lo + probe_step;
        while probe < hi {
            match shifted_factor(pencil, probe, perm) {
                Some(f) => {
                    lo = probe;
                    lo_factor = f;
                    probe_step *= 2.0;
                    probe = lo + probe_step;
                }
                None => {
                    hi = probe;
                    break;
                }
            }
        }
    }
    // bisect until the bracket is narrow relative to its position
    for _ in 0..40 {
        let width = hi - lo;
        if width <= 2e-4 * lo.abs().max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        match shifted_factor(pencil, mid, perm) {
            Some(f) => {
                lo = mid;
                lo_factor = f;
            }
            None => hi = mid,
        }
    }
    // step a bracket-width below so the pencil stays well conditioned
    let width = (hi - lo).max(1e-6 * lo.abs().max(1.0));
    let shift = lo - width;
    let f = shifted_factor(pencil, shift, perm).unwrap_or(lo_factor);
    Ok((shift, f))
}

fn dense_from_csr(a: &CsrMatrix) -> DMatrix<f64> {
    let n = a.dim();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for (j, v) in a.row(i) {
            m[(i, j)] = v;
        }
    }
    m
}

fn dense_lowest(pencil: &SymmetricPencil, n: usize, keep_vectors: bool) -> Result<Spectrum> {
    let dof = pencil.dof();
    let k = dense_from_csr(&pencil.stiffness);
    let m = dense_from_csr(&pencil.mass);
    let chol = m
        .clone()
        .cholesky()
        .ok_or_else(|| Error::FactorizationFailure("mass matrix is not positive definite".into()))?;
    let l = chol.l();
    // C = L⁻¹ K L⁻ᵀ
    let linv_k = l
        .solve_lower_triangular(&k)
        .ok_or_else(|| Error::FactorizationFailure("singular mass factor".into()))?;
    let c = l
        .solve_lower_triangular(&linv_k.transpose())
        .ok_or_else(|| Error::FactorizationFailure("singular mass factor".into()))?;
    let c = (&c + c.transpose()) * 0.5;
    let eig = SymmetricEigen::new(c);
    let mut order: Vec<usize> = (0..dof).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let lt = l.transpose();
    let mut eigenvalues = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    let mut residual_norms = Vec::with_capacity(n);
    for &idx in order.iter().take(n) {
        let lambda = eig.eigenvalues[idx];
        let y = eig.eigenvectors.column(idx).into_owned();
        let x = lt
            .solve_upper_triangular(&y)
            .ok_or_else(|| Error::FactorizationFailure("singular mass factor".into()))?;
        let r = &k * &x - &m * &x * lambda;
        let z = chol.solve(&r);
        residual_norms.push(r.dot(&z).max(0.0).sqrt());
        eigenvalues.push(lambda);
        vectors.push(x.iter().copied().collect::<Vec<f64>>());
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: keep_vectors.then_some(vectors),
        dof,
        h: 0.0,
        residual_norms,
    })
}

/// Ritz values, Ritz vectors and residual norms.
type RitzSet = (Vec<f64>, Vec<Vec<f64>>, Vec<f64>);

fn krylov_lowest(
    pencil: &SymmetricPencil,
    n: usize,
    factor: &BandedCholesky,
    mass_factor: &BandedCholesky,
    opts: &EigOptions,
) -> Result<Spectrum> {
    let dof = pencil.dof();
    let (k, m) = (&pencil.stiffness, &pencil.mass);
    let block = (n + 2).clamp(4, 12);
    let max_dim = (8 * block + 2 * n).max(120).min(dof);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let apply = |x: &[f64]| factor.solve(&m.mul_vec(x));

    let mut start: Vec<Vec<f64>> = (0..block)
        .map(|_| (0..dof).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let mut last_best: Option<RitzSet> = None;

    for _restart in 0..=opts.max_restarts {
        let mut q: Vec<Vec<f64>> = Vec::new();
        let mut mq: Vec<Vec<f64>> = Vec::new();
        let mut kq: Vec<Vec<f64>> = Vec::new();
        let mut proj: Vec<Vec<f64>> = Vec::new();
        let mut pending: Vec<Vec<f64>> = start.iter().map(|x| apply(x)).collect();
        loop {
            let added = extend_basis(&mut q, &mut mq, pending, m);
            for idx in (q.len() - added)..q.len() {
                let kx = k.mul_vec(&q[idx]);
                let row: Vec<f64> = q[..=idx].iter().map(|qj| dot(qj, &kx)).collect();
                for (j, &v) in row.iter().enumerate().take(idx) {
                    proj[j].push(v);
                }
                proj.push(row);
                kq.push(kx);
            }
            let dim = q.len();
            if dim >= n + block || dim == dof || added == 0 {
                let (vals, coeffs) = small_eig(&proj);
                let mut converged = true;
                let mut ritz_vals = Vec::with_capacity(n);
                let mut ritz_vecs = Vec::with_capacity(n);
                let mut res = Vec::with_capacity(n);
                for i in 0..n.min(dim) {
                    let y = &coeffs[i];
                    let mut x = vec![0.0; dof];
                    let mut r = vec![0.0; dof];
                    for (j, &c) in y.iter().enumerate() {
                        axpy(c, &q[j], &mut x);
                        axpy(c, &kq[j], &mut r);
                        axpy(-c * vals[i], &mq[j], &mut r);
                    }
                    let z = mass_factor.solve(&r);
                    let rn = dot(&r, &z).max(0.0).sqrt();
                    if !(rn <= opts.tol_res * (vals[i].abs() + 1.0)) {
                        converged = false;
                    }
                    ritz_vals.push(vals[i]);
                    ritz_vecs.push(x);
                    res.push(rn);
                }
                if converged && ritz_vals.len() == n {
                    return Ok(Spectrum {
                        eigenvalues: ritz_vals,
                        eigenvectors: opts.keep_vectors.then_some(ritz_vecs),
                        dof,
                        h: 0.0,
                        residual_norms: res,
                    });
                }
                if dim + block > max_dim || added == 0 || dim == dof {
                    // restart from the current best Ritz vectors
                    let mut next: Vec<Vec<f64>> = Vec::with_capacity(block + n);
                    for i in 0..(n + block).min(dim) {
                        let mut x = vec![0.0; dof];
                        for (j, &c) in coeffs[i].iter().enumerate() {
                            axpy(c, &q[j], &mut x);
                        }
                        next.push(x);
                    }
                    last_best = Some((ritz_vals, ritz_vecs, res));
                    start = next;
                    break;
                }
            }
            let first_new = q.len() - added;
            pending = q[first_new..].iter().map(|x| apply(x)).collect();
        }
    }
    let detail = last_best
        .map(|(v, _, r)| format!("last Ritz values {v:?}, residuals {r:?}"))
        .unwrap_or_default();
    Err(Error::NoConvergence(format!(
        "shift-invert Krylov did not reach tolerance {} after {} restarts; {detail}",
        opts.tol_res, opts.max_restarts
    )))
}

/// M-orthonormalize `new` against `q` (two Gram–Schmidt passes) and append.
fn extend_basis(
    q: &mut Vec<Vec<f64>>,
    mq: &mut Vec<Vec<f64>>,
    new: Vec<Vec<f64>>,
    m: &CsrMatrix,
) -> usize {
    let mut added = 0;
    for mut v in new {
        let norm0 = dot(&v, &m.mul_vec(&v)).max(0.0).sqrt();
        if norm0 == 0.0 || !norm0.is_finite() {
            continue;
        }
        for _pass in 0..2 {
            for (qj, mqj) in q.iter().zip(mq.iter()) {
                let c = dot(mqj, &v);
                axpy(-c, qj, &mut v);
            }
        }
        let mv = m.mul_vec(&v);
        let norm = dot(&v, &mv).max(0.0).sqrt();
        if norm <= 1e-10 * norm0 {
            continue;
        }
        let inv = 1.0 / norm;
        q.push(v.iter().map(|x| x * inv).collect());
        mq.push(mv.iter().map(|x| x * inv).collect());
        added += 1;
    }
    added
}

/// Ascending eigenpairs of a small dense symmetric matrix given as rows.
fn small_eig(a: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = 0.5 * (a[i][j] + a[j][i]);
        }
    }
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = order.iter().map(|&i| eig.eigenvectors.column(i).iter().copied().collect()).collect();
    (vals, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra1d::sparse::TripletBuilder;

    fn tridiag(n: usize, d: f64, o: f64) -> CsrMatrix {
        let mut b = TripletBuilder::new(n);
        for i in 0..n {
            b.add(i, i, d);
            if i + 1 < n {
                b.add(i, i + 1, o);
                b.add(i + 1, i, o);
            }
        }
        b.build()
    }

    #[test]
    fn identity_pencil_has_unit_spectrum() {
        let p = SymmetricPencil::new(CsrMatrix::identity(10), CsrMatrix::identity(10)).unwrap();
        let s = lowest_eigs(&p, 3, 0.0).unwrap();
        for v in s.eigenvalues {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn krylov_matches_dense_on_tridiagonal() {
        let n = 800;
        let p = SymmetricPencil::new(tridiag(n, 2.0, -1.0), CsrMatrix::identity(n)).unwrap();
        let opts = EigOptions { method: Method::Krylov, ..Default::default() };
        let s = lowest_eigs_with(&p, 5, &opts).unwrap();
        for (j, v) in s.eigenvalues.iter().enumerate() {
            let th = std::f64::consts::PI * (j + 1) as f64 / (n + 1) as f64;
            let exact = 2.0 - 2.0 * th.cos();
            assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
        }
    }

    #[test]
    fn shift_inside_spectrum_is_rejected_after_retry() {
        let n = 800;
        let p = SymmetricPencil::new(tridiag(n, 2.0, -1.0), CsrMatrix::identity(n)).unwrap();
        let opts = EigOptions { shift: Some(2.0), method: Method::Krylov, ..Default::default() };
        assert!(matches!(lowest_eigs_with(&p, 2, &opts), Err(Error::FactorizationFailure(_))));
        let opts = EigOptions { shift: Some(0.5), method: Method::Krylov, ..Default::default() };
        // 0.5 fails, 0.5 - 1 succeeds
        let r = lowest_eigs_with(&p, 2, &opts);
        assert!(r.is_ok(), "{r:?}");
    }

    #[test]
    fn zero_request_is_invalid() {
        let p = SymmetricPencil::new(CsrMatrix::identity(4), CsrMatrix::identity(4)).unwrap();
        assert!(lowest_eigs(&p, 0, 0.0).is_err());
    }
}
