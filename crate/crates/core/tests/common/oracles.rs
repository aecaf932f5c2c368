//! Independent reference computations used only by tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const AI0: f64 = 0.355_028_053_887_817_2;
pub const AIP0: f64 = -0.258_819_403_792_806_8;

/// One RK4 step of y'' = x y integrated towards negative x (dx < 0).
pub fn rk4(x: f64, y: [f64; 2], dx: f64) -> [f64; 2] {
    let f = |x: f64, y: [f64; 2]| [y[1], x * y[0]];
    let k1 = f(x, y);
    let k2 = f(x + dx / 2.0, [y[0] + dx / 2.0 * k1[0], y[1] + dx / 2.0 * k1[1]]);
    let k3 = f(x + dx / 2.0, [y[0] + dx / 2.0 * k2[0], y[1] + dx / 2.0 * k2[1]]);
    let k4 = f(x + dx, [y[0] + dx * k3[0], y[1] + dx * k3[1]]);
    [
        y[0] + dx / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + dx / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Zeros of Ai on the negative axis: integrate from the values at 0, bracket
/// sign changes and bisect within a single step.
pub fn airy_zero_oracle(n: usize) -> Vec<f64> {
    let h = 1e-3;
    let (mut x, mut y) = (0.0, [AI0, AIP0]);
    let mut zeros = Vec::new();
    while zeros.len() < n {
        let next = rk4(x, y, -h);
        if next[0] * y[0] < 0.0 {
            let (mut lo, mut hi) = (0.0, h);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if rk4(x, y, -mid)[0] * y[0] > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            zeros.push(-(x - 0.5 * (lo + hi)));
        }
        x -= h;
        y = next;
    }
    zeros
}

/// Cyclic Jacobi eigenvalues of a dense symmetric matrix.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Generalized eigenvalues of (K, M) via M = LLᵀ and L⁻¹KL⁻ᵀ.
pub fn pencil_oracle(k: &[Vec<f64>], m: &[Vec<f64>]) -> Vec<f64> {
    let n = k.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = m[i][j] - (0..j).map(|p| l[i][p] * l[j][p]).sum::<f64>();
            l[i][j] = if i == j { s.sqrt() } else { s / l[j][j] };
        }
    }
    // X = L⁻¹ K, then C = X L⁻ᵀ = (L⁻¹ Xᵀ)ᵀ
    let lower_solve = |b: &[f64]| {
        let mut x = vec![0.0; n];
        for i in 0..n {
            x[i] = (b[i] - (0..i).map(|p| l[i][p] * x[p]).sum::<f64>()) / l[i][i];
        }
        x
    };
    let cols: Vec<Vec<f64>> = (0..n).map(|j| lower_solve(&(0..n).map(|i| k[i][j]).collect::<Vec<_>>())).collect();
    let x: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
    let c: Vec<Vec<f64>> = (0..n).map(|i| lower_solve(&x[i])).collect();
    let sym: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| 0.5 * (c[i][j] + c[j][i])).collect()).collect();
    jacobi_eigenvalues(sym)
}

pub fn random_pencil(n: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut k = vec![vec![0.0; n]; n];
    let mut b = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = rng.gen_range(-1.0..1.0);
            k[i][j] = v;
            k[j][i] = v;
        }
        for j in 0..n {
            b[i][j] = rng.gen_range(-1.0..1.0);
        }
    }
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = (0..n).map(|p| b[i][p] * b[j][p]).sum::<f64>() / n as f64;
        }
        m[i][i] += 1.0;
    }
    (k, m)
}

