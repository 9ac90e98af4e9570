//! Dense matrices over `F_p`.

use crate::ring::pow_mod;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Reduces integer entries mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i128>], cols: usize) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v.rem_euclid(p as i128) as u32);
            }
        }
        m
    }

    pub fn from_columns(p: u32, cols: &[Vec<u32>], rows: usize) -> Self {
        let mut m = Self::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "FpMatrix product shape mismatch");
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0u64, |acc, j| (acc + self.get(i, j) as u64 * v[j] as u64) % p) as u32)
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        Self {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| (a + p - b) % p).collect(),
        }
    }

    pub fn trace(&self) -> u32 {
        let p = self.p as u64;
        (0..self.rows.min(self.cols)).fold(0u64, |acc, i| (acc + self.get(i, i) as u64) % p) as u32
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), self.p) as u64;
            for j in c..self.cols {
                let v = self.get(r, j) as u64 * inv % p;
                self.set(r, j, v as u32);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = (self.get(i, j) as u64 + (p - f) * self.get(r, j) as u64) % p;
                    self.set(i, j, v as u32);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : self · v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m.get(r, f)) % p;
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self · x = b`.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let mut aug = Self::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % self.p);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    /// Solves `self · X = B` column by column.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        let cols: Option<Vec<Vec<u32>>> = (0..b.cols).map(|j| self.solve(&b.column(j))).collect();
        Some(Self::from_columns(self.p, &cols?, self.cols))
    }

    /// Indices of a maximal linearly independent set of rows (greedy, in order).
    pub fn independent_rows(&self) -> Vec<usize> {
        self.transpose().clone().rref_pivots()
    }

    fn rref_pivots(mut self) -> Vec<usize> {
        self.rref()
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.p, idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m.set(r, j, self.get(i, j));
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        self.transpose().select_rows(idx).transpose()
    }
}
