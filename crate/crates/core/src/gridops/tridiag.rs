//! Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the lowest
//! eigenvalues, inverse iteration with a pivoted banded solve for the vectors.

/// Symmetric tridiagonal matrix; `off.len() == diag.len() - 1`.
#[derive(Debug, Clone)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length mismatch");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Max row sum, used to scale tolerances.
    pub fn inf_norm(&self) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    /// Number of eigenvalues strictly below `x` (negative pivots of the
    /// LDLᵀ factorization of T − xI). Tiny pivots are clamped to −pivmin so
    /// the e²/q terms cannot overflow.
    fn count_below(&self, x: f64) -> usize {
        let e2_max = self.off.iter().map(|e| e * e).fold(1.0, f64::max);
        let pivmin = f64::MIN_POSITIVE / f64::EPSILON * e2_max;
        let mut count = 0usize;
        let mut q = self.diag[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.len() {
            q = (self.diag[i] - x) - self.off[i - 1] * self.off[i - 1] / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k` lowest eigenvalues, ascending, by bisection on the Sturm count.
    pub fn lowest_eigenvalues(&self, k: usize) -> Vec<f64> {
        assert!(k <= self.len());
        let n = self.len();
        let mut lo_all = f64::INFINITY;
        let mut hi_all = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo_all = lo_all.min(self.diag[i] - left - right);
            hi_all = hi_all.max(self.diag[i] + left + right);
        }
        let mut out = Vec::with_capacity(k);
        for j in 0..k {
            let mut lo = lo_all;
            let mut hi = hi_all;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if self.count_below(mid) > j {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        out
    }

    /// Solve (T − λI)v = b by Gaussian elimination with partial pivoting.
    /// Pivoting introduces one extra superdiagonal of fill.
    fn shifted_solve(&self, lambda: f64, b: &[f64]) -> Vec<f64> {
        let n = self.len();
        let mut dl: Vec<f64> = self.off.clone();
        let mut d: Vec<f64> = self.diag.iter().map(|&v| v - lambda).collect();
        let mut du: Vec<f64> = self.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut rhs = b.to_vec();

        let tiny = f64::MIN_POSITIVE * 1e16;
        for i in 0..n - 1 {
            if dl[i].abs() <= d[i].abs() {
                // no swap
                if d[i].abs() < tiny {
                    d[i] = tiny.copysign(if d[i] == 0.0 { 1.0 } else { d[i] });
                }
                // no fill reaches du2 without a swap
                let m = dl[i] / d[i];
                d[i + 1] -= m * du[i];
                rhs[i + 1] -= m * rhs[i];
                dl[i] = 0.0;
            } else {
                // swap rows i and i+1
                let m = d[i] / dl[i];
                d[i] = dl[i];
                let tmp = d[i + 1];
                d[i + 1] = du[i] - m * tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -m * du2[i];
                }
                du[i] = tmp;
                rhs.swap(i, i + 1);
                rhs[i + 1] -= m * rhs[i];
                dl[i] = 0.0;
            }
        }
        // back substitution
        let mut v = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = rhs[i];
            if i + 1 < n {
                s -= du[i] * v[i + 1];
            }
            if i + 2 < n {
                s -= du2[i] * v[i + 2];
            }
            let mut di = d[i];
            if di.abs() < tiny {
                di = tiny.copysign(if di == 0.0 { 1.0 } else { di });
            }
            v[i] = s / di;
        }
        v
    }

    /// Eigenvector for an eigenvalue `lambda` by inverse iteration.
    /// `previous` holds already-found vectors of nearby eigenvalues to
    /// orthogonalize against (only matters for clustered spectra).
    pub fn eigenvector(&self, lambda: f64, previous: &[(f64, Vec<f64>)]) -> Vec<f64> {
        let n = self.len();
        let scale = self.inf_norm().max(f64::MIN_POSITIVE);
        // deterministic pseudo-random start vector
        let mut seed = 0x9e37_79b9_7f4a_7c15u64;
        let mut v: Vec<f64> = (0..n)
            .map(|_| {
                seed = seed
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        let near: Vec<&Vec<f64>> = previous
            .iter()
            .filter(|(l, _)| (l - lambda).abs() < 1e-8 * scale)
            .map(|(_, v)| v)
            .collect();
        for _ in 0..4 {
            for w in &near {
                let dot: f64 = v.iter().zip(w.iter()).map(|(a, b)| a * b).sum();
                for (x, y) in v.iter_mut().zip(w.iter()) {
                    *x -= dot * y;
                }
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in &mut v {
                *x /= norm;
            }
            v = self.shifted_solve(lambda, &v);
        }
        for w in &near {
            let dot: f64 = v.iter().zip(w.iter()).map(|(a, b)| a * b).sum();
            for (x, y) in v.iter_mut().zip(w.iter()) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in &mut v {
            *x /= norm;
        }
        v
    }

    /// ‖Tv − λv‖₂ / ‖v‖₂.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        let n = self.len();
        let mut r2 = 0.0;
        let mut v2 = 0.0;
        for i in 0..n {
            let mut tv = self.diag[i] * v[i];
            if i > 0 {
                tv += self.off[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                tv += self.off[i] * v[i + 1];
            }
            let r = tv - lambda * v[i];
            r2 += r * r;
            v2 += v[i] * v[i];
        }
        (r2 / v2).sqrt()
    }
}
