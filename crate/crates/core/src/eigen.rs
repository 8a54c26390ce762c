//! Cyclic Jacobi eigensolver for small dense real-symmetric matrices.

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a real symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub dim: usize,
    pub values: Vec<f64>,
    /// Row-major; column `k` holds the eigenvector for `values[k]`.
    pub vectors: Vec<f64>,
}

impl SymmetricEigen {
    /// Diagonalize a row-major `dim × dim` symmetric matrix. Only the symmetric part is used.
    pub fn jacobi(matrix: &[f64], dim: usize) -> Self {
        assert_eq!(matrix.len(), dim * dim, "matrix is not dim × dim");
        let mut a = matrix.to_vec();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let s = 0.5 * (a[i * dim + j] + a[j * dim + i]);
                a[i * dim + j] = s;
                a[j * dim + i] = s;
            }
        }
        let mut v = vec![0.0; dim * dim];
        for i in 0..dim {
            v[i * dim + i] = 1.0;
        }

        let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
        let target = (1e-15 * norm).max(f64::MIN_POSITIVE);

        for _ in 0..MAX_SWEEPS {
            let off: f64 = (0..dim)
                .flat_map(|i| ((i + 1)..dim).map(move |j| (i, j)))
                .map(|(i, j)| a[i * dim + j] * a[i * dim + j])
                .sum::<f64>()
                .sqrt();
            if off <= target {
                break;
            }
            for p in 0..dim {
                for q in (p + 1)..dim {
                    let apq = a[p * dim + q];
                    if apq.abs() <= f64::MIN_POSITIVE {
                        continue;
                    }
                    let theta = (a[q * dim + q] - a[p * dim + p]) / (2.0 * apq);
                    let t = if theta >= 0.0 {
                        1.0 / (theta + theta.hypot(1.0))
                    } else {
                        -1.0 / (-theta + theta.hypot(1.0))
                    };
                    let c = 1.0 / t.hypot(1.0);
                    let s = t * c;
                    rotate(&mut a, &mut v, dim, p, q, c, s);
                }
            }
        }

        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&x, &y| a[x * dim + x].total_cmp(&a[y * dim + y]));
        let values = order.iter().map(|&k| a[k * dim + k]).collect();
        let mut vectors = vec![0.0; dim * dim];
        for (new, &old) in order.iter().enumerate() {
            for i in 0..dim {
                vectors[i * dim + new] = v[i * dim + old];
            }
        }
        Self {
            dim,
            values,
            vectors,
        }
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self.vectors[i * self.dim + k]).collect()
    }
}

/// `A ← Jᵀ A J`, `V ← V J` for the plane rotation in `(p, q)`.
fn rotate(a: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c * apk - s * aqk;
        a[q * n + k] = s * apk + c * aqk;
    }
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}
