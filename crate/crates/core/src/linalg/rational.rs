use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Q = Ratio<i128>;

/// Solves the square system `m · x = rhs` over ℚ. `None` if singular.
pub fn solve(m: &[Vec<i128>], rhs: &[i128]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| row.iter().map(|&v| Q::from_integer(v)).chain(std::iter::once(Q::from_integer(b))).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Q::one() / a[col][col];
        for v in a[col].iter_mut() {
            *v *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in col..=n {
                    let t = a[col][c] * f;
                    a[r][c] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n]).collect())
}

/// Solves `m · x = rhs` and requires an integral solution.
pub fn solve_integral(m: &[Vec<i128>], rhs: &[i128]) -> Option<Vec<i128>> {
    solve(m, rhs)?.into_iter().map(|q| q.is_integer().then(|| q.to_integer())).collect()
}

/// Inertia `(positive, negative, zero)` of a symmetric integer matrix, by
/// congruence diagonalisation over ℚ.
pub fn inertia(sym: &[Vec<i128>]) -> (usize, usize, usize) {
    let n = sym.len();
    let mut a: Vec<Vec<Q>> = sym.iter().map(|r| r.iter().map(|&v| Q::from_integer(v)).collect()).collect();
    let mut diag = Vec::with_capacity(n);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // pick a nonzero diagonal pivot, or create one from an off-diagonal entry
        let piv = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    None => {
                        diag.extend(std::iter::repeat_n(Q::zero(), active.len()));
                        break;
                    }
                    Some((i, j)) => {
                        // row/col i += row/col j  gives a[i][i] = 2 a[i][j] != 0
                        for k in 0..n {
                            let t = a[j][k];
                            a[i][k] += t;
                        }
                        for k in 0..n {
                            let t = a[k][j];
                            a[k][i] += t;
                        }
                        i
                    }
                }
            }
        };
        let d = a[piv][piv];
        for &r in &active {
            if r == piv || a[r][piv].is_zero() {
                continue;
            }
            let f = a[r][piv] / d;
            for k in 0..n {
                let t = a[piv][k] * f;
                a[r][k] -= t;
            }
            for k in 0..n {
                let t = a[k][piv] * f;
                a[k][r] -= t;
            }
        }
        diag.push(d);
        active.retain(|&i| i != piv);
    }
    let pos = diag.iter().filter(|d| **d > Q::zero()).count();
    let neg = diag.iter().filter(|d| **d < Q::zero()).count();
    (pos, neg, n - pos - neg)
}
