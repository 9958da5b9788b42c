//! Small dense symmetric matrices and the two linear solvers used by the
//! resistance computations: an LLᵀ (Cholesky) factorization for the SPD
//! route and Gaussian elimination with partial pivoting for the grounded
//! current-balance route. The two are kept as separate code paths on purpose
//! so each can serve as a check on the other.

/// Row-major square matrix of `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Lower-triangular Cholesky factor `L` with `A = L Lᵀ`.
pub(crate) struct Cholesky {
    l: DenseMatrix,
}

/// Factorizes a symmetric positive-definite matrix. Returns `None` when a
/// pivot collapses to a non-positive value, which for our inputs signals a
/// construction bug rather than an expected condition.
pub(crate) fn cholesky(a: &DenseMatrix) -> Option<Cholesky> {
    let n = a.n();
    let mut l = DenseMatrix::zeros(n);
    for j in 0..n {
        let mut diag = a.get(j, j);
        for k in 0..j {
            diag -= l.get(j, k) * l.get(j, k);
        }
        if diag <= 0.0 || !diag.is_finite() {
            return None;
        }
        let ljj = diag.sqrt();
        l.set(j, j, ljj);
        for i in (j + 1)..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, s / ljj);
        }
    }
    Some(Cholesky { l })
}

impl Cholesky {
    /// Solves `A x = b` by forward then back substitution.
    pub(crate) fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.l.n();
        debug_assert_eq!(b.len(), n);
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.l.get(i, k) * y[k];
            }
            y[i] /= self.l.get(i, i);
        }
        let mut x = y;
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                x[i] -= self.l.get(k, i) * x[k];
            }
            x[i] /= self.l.get(i, i);
        }
        x
    }

    /// Full inverse, column by column against the identity.
    pub(crate) fn inverse(&self) -> DenseMatrix {
        let n = self.l.n();
        let mut inv = DenseMatrix::zeros(n);
        let mut e = vec![0.0; n];
        for col in 0..n {
            e[col] = 1.0;
            let x = self.solve(&e);
            e[col] = 0.0;
            for (row, &value) in x.iter().enumerate() {
                inv.set(row, col, value);
            }
        }
        inv
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting, in place
/// on copies. Returns `None` for a numerically singular system.
pub(crate) fn solve_gaussian(a: &DenseMatrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.n();
    debug_assert_eq!(b.len(), n);
    let mut m = a.clone();
    let mut rhs = b.to_vec();

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_abs = m.get(col, col).abs();
        for r in (col + 1)..n {
            let v = m.get(r, col).abs();
            if v > pivot_abs {
                pivot_abs = v;
                pivot_row = r;
            }
        }
        if pivot_abs < 1e-12 {
            return None;
        }
        if pivot_row != col {
            for c in 0..n {
                let tmp = m.get(col, c);
                m.set(col, c, m.get(pivot_row, c));
                m.set(pivot_row, c, tmp);
            }
            rhs.swap(col, pivot_row);
        }
        let pivot = m.get(col, col);
        for r in (col + 1)..n {
            let factor = m.get(r, col) / pivot;
            if factor == 0.0 {
                continue;
            }
            for c in col..n {
                let v = m.get(r, c) - factor * m.get(col, c);
                m.set(r, c, v);
            }
            rhs[r] -= factor * rhs[col];
        }
    }

    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for c in (i + 1)..n {
            s -= m.get(i, c) * x[c];
        }
        x[i] = s / m.get(i, i);
    }
    Some(x)
}
