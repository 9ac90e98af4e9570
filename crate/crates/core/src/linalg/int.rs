//! Small dense integer matrices.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, data: vec![0; n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), n_cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n_cols, "ragged matrix rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.n_rows
    }

    pub fn cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.n_cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.n_cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<i128>> {
        (0..self.n_rows).map(|i| (0..self.n_cols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.n_rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n_cols, other.n_rows, "IntMatrix product shape mismatch");
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.n_cols {
                    let idx = i * out.n_cols + j;
                    out.data[idx] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        (0..self.n_rows).map(|i| (0..self.n_cols).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn trace(&self) -> i128 {
        (0..self.n_rows.min(self.n_cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> i128 {
        assert_eq!(self.n_rows, self.n_cols, "determinant of a non-square matrix");
        let n = self.n_rows;
        if n == 0 {
            return 1;
        }
        let mut a = self.to_rows();
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                let Some(sw) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
                a.swap(k, sw);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        sign * a[n - 1][n - 1]
    }

    /// Nonzero invariant factors (Smith normal form diagonal, positive) and
    /// the number of zero diagonal entries.
    pub fn smith_invariants(&self) -> (Vec<i128>, usize) {
        let mut a = self.to_rows();
        let (m, n) = (self.n_rows, self.n_cols);
        let mut diag = Vec::new();
        let mut t = 0;
        while t < m.min(n) {
            // smallest nonzero |entry| in the remaining block as pivot
            let piv = (t..m)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = piv else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let mut changed = false;
                for i in t + 1..m {
                    let q = a[i][t].div_euclid(a[t][t]);
                    if q != 0 {
                        for j in t..n {
                            a[i][j] -= q * a[t][j];
                        }
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        changed = true;
                    }
                }
                for j in t + 1..n {
                    let q = a[t][j].div_euclid(a[t][t]);
                    if q != 0 {
                        for row in a.iter_mut().skip(t) {
                            row[j] -= q * row[t];
                        }
                    }
                    if a[t][j] != 0 {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        changed = true;
                    }
                }
                if changed {
                    continue;
                }
                // enforce divisibility of the remaining block
                let bad = (t + 1..m).flat_map(|i| (t + 1..n).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..n {
                            a[t][j] += a[i][j];
                        }
                    }
                    None => break,
                }
            }
            diag.push(a[t][t].abs());
            t += 1;
        }
        let zeros = m.min(n) - diag.len();
        (diag, zeros)
    }
}
