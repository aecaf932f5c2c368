//! Banded Cholesky factorization behind a reverse Cuthill–McKee ordering.

use std::collections::VecDeque;

use super::sparse::CsrMatrix;

/// Reverse Cuthill–McKee permutation: `perm[new] = old`.
pub fn reverse_cuthill_mckee(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);

    let bfs_levels = |start: usize| -> (Vec<usize>, usize) {
        let mut level = vec![usize::MAX; n];
        let mut queue = VecDeque::from([start]);
        level[start] = 0;
        let mut last = start;
        while let Some(v) = queue.pop_front() {
            last = v;
            for &w in &adj[v] {
                if level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        let depth = level[last];
        (level, depth)
    };

    // lowest-degree unvisited node seeds the next component
    while let Some(seed) = (0..n).filter(|&i| !visited[i]).min_by_key(|&i| (degree[i], i)) {
        // pseudo-peripheral node: repeat BFS from the farthest minimum-degree node
        let mut start = seed;
        let (mut level, mut depth) = bfs_levels(start);
        for _ in 0..8 {
            let far = (0..n)
                .filter(|&i| level[i] == depth)
                .min_by_key(|&i| (degree[i], i))
                .unwrap();
            let (lv, d) = bfs_levels(far);
            if d <= depth {
                break;
            }
            start = far;
            level = lv;
            depth = d;
        }
        let mut queue = VecDeque::from([start]);
        visited[start] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<usize> = adj[v].iter().copied().filter(|&w| !visited[w]).collect();
            next.sort_unstable_by_key(|&w| (degree[w], w));
            for w in next {
                visited[w] = true;
                queue.push_back(w);
            }
        }
    }
    order.reverse();
    order
}

/// Lower-triangular band factor `L` with `A = L Lᵀ` in a permuted ordering.
#[derive(Debug, Clone)]
pub struct BandedCholesky {
    n: usize,
    bw: usize,
    /// row-major, row `i` holds columns `i - bw ..= i` at offsets `0 ..= bw`
    band: Vec<f64>,
    perm: Vec<usize>,
}

impl BandedCholesky {
    /// Factor `a` using the given permutation (`perm[new] = old`).
    /// Returns `None` when `a` is not numerically positive definite.
    pub fn factor_with(a: &CsrMatrix, perm: Vec<usize>) -> Option<Self> {
        let n = a.dim();
        let mut inv = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let mut bw = 0;
        for i in 0..n {
            for (j, _) in a.row(i) {
                bw = bw.max(inv[i].abs_diff(inv[j]));
            }
        }
        let w = bw + 1;
        let mut band = vec![0.0; n * w];
        for i in 0..n {
            let pi = inv[i];
            for (j, v) in a.row(i) {
                let pj = inv[j];
                if pj <= pi {
                    band[pi * w + (pj + bw - pi)] += v;
                }
            }
        }
        for i in 0..n {
            let j0 = i.saturating_sub(bw);
            for j in j0..=i {
                let k0 = j0.max(j.saturating_sub(bw));
                let mut sum = band[i * w + (j + bw - i)];
                if j > k0 {
                    let ri = &band[i * w + (k0 + bw - i)..i * w + (j + bw - i)];
                    let rj = &band[j * w + (k0 + bw - j)..j * w + bw];
                    sum -= ri.iter().zip(rj).map(|(x, y)| x * y).sum::<f64>();
                }
                if i == j {
                    if !(sum > 0.0) || !sum.is_finite() {
                        return None;
                    }
                    band[i * w + bw] = sum.sqrt();
                } else {
                    band[i * w + (j + bw - i)] = sum / band[j * w + bw];
                }
            }
        }
        Some(Self { n, bw, band, perm })
    }

    /// Factor with a reverse Cuthill–McKee ordering of the pattern of `a`.
    pub fn factor(a: &CsrMatrix) -> Option<Self> {
        let perm = reverse_cuthill_mckee(&a.adjacency());
        Self::factor_with(a, perm)
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let (n, bw, w) = (self.n, self.bw, self.bw + 1);
        let mut y: Vec<f64> = self.perm.iter().map(|&old| b[old]).collect();
        for i in 0..n {
            let k0 = i.saturating_sub(bw);
            let row = &self.band[i * w + (k0 + bw - i)..i * w + bw];
            let s: f64 = row.iter().zip(&y[k0..i]).map(|(l, y)| l * y).sum();
            y[i] = (y[i] - s) / self.band[i * w + bw];
        }
        for i in (0..n).rev() {
            y[i] /= self.band[i * w + bw];
            let yi = y[i];
            let k0 = i.saturating_sub(bw);
            let row = &self.band[i * w + (k0 + bw - i)..i * w + bw];
            for (yk, l) in y[k0..i].iter_mut().zip(row) {
                *yk -= l * yi;
            }
        }
        let mut x = vec![0.0; n];
        for (new, &old) in self.perm.iter().enumerate() {
            x[old] = y[new];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra1d::sparse::TripletBuilder;

    fn periodic_laplacian(n: usize, shift: f64) -> CsrMatrix {
        let mut b = TripletBuilder::new(n);
        for i in 0..n {
            b.add(i, i, 2.0 + shift);
            b.add(i, (i + 1) % n, -1.0);
            b.add((i + 1) % n, i, -1.0);
        }
        b.build()
    }

    #[test]
    fn rcm_shrinks_periodic_band() {
        let a = periodic_laplacian(100, 0.1);
        assert_eq!(a.bandwidth(), 99);
        let f = BandedCholesky::factor(&a).unwrap();
        assert!(f.bandwidth() <= 2, "bandwidth {}", f.bandwidth());
    }

    #[test]
    fn solve_recovers_rhs() {
        let a = periodic_laplacian(50, 0.3);
        let f = BandedCholesky::factor(&a).unwrap();
        let x: Vec<f64> = (0..50).map(|i| (i as f64 * 0.37).sin()).collect();
        let b = a.mul_vec(&x);
        let y = f.solve(&b);
        for (u, v) in x.iter().zip(&y) {
            assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn indefinite_matrix_is_rejected() {
        let a = periodic_laplacian(20, -0.01);
        assert!(BandedCholesky::factor(&a).is_none());
    }
}
