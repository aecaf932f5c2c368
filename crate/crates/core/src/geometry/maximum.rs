//! Location and order of the curvature maximum on the Robin arc.

use serde::{Deserialize, Serialize};

use super::sampled::{SampledGeometry, TOL_GEO};
use crate::{Error, Result};

/// Threshold separating vanishing from non-vanishing curvature derivatives.
pub const TOL_DERIV: f64 = 1e-6;

/// The Robin arc Γ = γ((0, ℓ)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobinArc {
    pub ell: f64,
}

impl RobinArc {
    pub fn new(ell: f64, length: f64) -> Result<Self> {
        if !(ell > 0.0 && ell < length) {
            return Err(Error::InvalidInput(format!("arc length {ell} must lie in (0, {length})")));
        }
        Ok(Self { ell })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LocationClass {
    Interior,
    #[serde(rename = "endpoint_0")]
    Endpoint0,
    #[serde(rename = "endpoint_ell")]
    EndpointEll,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvatureMaxInfo {
    pub k_star: f64,
    pub s_star: f64,
    pub location_class: LocationClass,
    /// order of the first non-vanishing derivative at `s_star` (0 for constant curvature)
    pub m: u32,
    /// k^(m)(s_star)
    pub dm: f64,
}

impl CurvatureMaxInfo {
    /// Coefficient |k^(m)(s_*)| / m! of the leading Taylor term of k_* − k,
    /// taken in the direction pointing into the arc.
    pub fn taylor_coefficient(&self) -> f64 {
        let fact: f64 = (1..=self.m).map(f64::from).product();
        self.dm.abs() / fact
    }
}

/// Finds k_* = max over [0, ℓ] and classifies where it is attained.
pub fn max_curvature_on_arc(geom: &SampledGeometry, arc: RobinArc) -> Result<CurvatureMaxInfo> {
    let ell = arc.ell;
    if !(ell > 0.0 && ell < geom.length) {
        return Err(Error::InvalidInput(format!("arc length {ell} outside (0, {})", geom.length)));
    }
    let inside: Vec<usize> = (0..geom.n_samples()).filter(|&i| geom.s_grid[i] <= ell).collect();
    if inside.len() < 32 {
        return Err(Error::InvalidInput(format!(
            "only {} samples on the arc; resample with more points",
            inside.len()
        )));
    }
    // samples along [0, ℓ] with the far endpoint appended
    let mut s: Vec<f64> = inside.iter().map(|&i| geom.s_grid[i]).collect();
    let mut k: Vec<f64> = inside.iter().map(|&i| geom.k[i]).collect();
    if *s.last().unwrap() < ell {
        s.push(ell);
        k.push(geom.frame(ell)?.k);
    }
    let kmax = k.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let kmin = k.iter().copied().fold(f64::INFINITY, f64::min);
    if kmax - kmin <= TOL_GEO {
        return Ok(CurvatureMaxInfo {
            k_star: kmax,
            s_star: 0.5 * ell,
            location_class: LocationClass::Constant,
            m: 0,
            dm: 0.0,
        });
    }

    // candidate maxima, refined by Newton on k'(s) = 0
    let last = s.len() - 1;
    let mut candidates: Vec<(f64, f64)> = Vec::new();
    if k[0] >= k[1] {
        candidates.push((0.0, k[0]));
    }
    if k[last] >= k[last - 1] {
        candidates.push((ell, k[last]));
    }
    for i in 1..last {
        if k[i] >= k[i - 1] && k[i] >= k[i + 1] && !(k[i] == k[i - 1] && k[i] == k[i + 1]) {
            let (s_ref, k_ref) = refine_interior(geom, &s, &k, i, ell)?;
            candidates.push((s_ref, k_ref));
        }
    }
    let (s_star, k_star) = candidates
        .iter()
        .copied()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("a continuous function attains its maximum");
    let min_sep = 4.0 * geom.h_s;
    for &(sc, kc) in &candidates {
        if (sc - s_star).abs() > min_sep && (k_star - kc).abs() <= TOL_GEO {
            return Err(Error::AmbiguousMaximum(format!(
                "k = {k_star} at s = {s_star} and k = {kc} at s = {sc}"
            )));
        }
    }
    let frame = geom.frame(s_star)?;
    let location_class = if s_star == 0.0 {
        LocationClass::Endpoint0
    } else if s_star == ell {
        LocationClass::EndpointEll
    } else {
        LocationClass::Interior
    };
    let (m, dm) = match location_class {
        LocationClass::Interior => {
            if frame.k2.abs() > TOL_DERIV {
                (2, frame.k2)
            } else {
                return Err(Error::DegenerateMaximum(format!(
                    "interior maximum at s = {s_star} with k'' = {:e}",
                    frame.k2
                )));
            }
        }
        _ => {
            if frame.k1.abs() > TOL_DERIV {
                (1, frame.k1)
            } else if frame.k2.abs() > TOL_DERIV {
                (2, frame.k2)
            } else {
                return Err(Error::DegenerateMaximum(format!(
                    "endpoint maximum at s = {s_star} with k' = {:e}, k'' = {:e}",
                    frame.k1, frame.k2
                )));
            }
        }
    };
    Ok(CurvatureMaxInfo { k_star: k_star.max(kmax), s_star, location_class, m, dm })
}

fn refine_interior(
    geom: &SampledGeometry,
    s: &[f64],
    k: &[f64],
    i: usize,
    ell: f64,
) -> Result<(f64, f64)> {
    // vertex of the parabola through three neighbouring samples
    let (s0, s1, s2) = (s[i - 1], s[i], s[i + 1]);
    let (k0, k1, k2) = (k[i - 1], k[i], k[i + 1]);
    let denom = (s0 - s1) * (s0 - s2) * (s1 - s2);
    let a = (s2 * (k1 - k0) + s1 * (k0 - k2) + s0 * (k2 - k1)) / denom;
    let b = (s2 * s2 * (k0 - k1) + s1 * s1 * (k2 - k0) + s0 * s0 * (k1 - k2)) / denom;
    let mut x = if a < 0.0 { (-b / (2.0 * a)).clamp(s0, s2) } else { s1 };
    for _ in 0..30 {
        let f = geom.frame(x)?;
        if f.k2 >= 0.0 {
            break;
        }
        let step = f.k1 / f.k2;
        let next = (x - step).clamp(s0, s2);
        if (next - x).abs() < 1e-15 * (1.0 + x.abs()) {
            x = next;
            break;
        }
        x = next;
    }
    let x = x.clamp(0.0, ell);
    Ok((x, geom.frame(x)?.k))
}
