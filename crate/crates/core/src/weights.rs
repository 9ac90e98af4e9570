//! Weight-space model of the Lefschetz action.
//!
//! A blade of weight `λ ∈ {-1,0,1}^g` is determined by the handles it holds
//! completely. Handles with `λ_i = ±1` carry the single generator `a_i` or
//! `b_i`; the `n` neutral handles are either full (`a_i b_i`) or empty. So the
//! weight space in degree `g - n + 2m` is a copy of the `m`-subsets of an
//! `n`-element set, with `E` adding one element and `F` removing one (both with
//! sign `+1`). The kernel of `F` there is the two-row Specht lattice of shape
//! `(n-m, m)`, spanned by standard polytabloids.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{blades_of_degree, check_genus, Blade, MultiVector};
use crate::ring::ScalarRing;

pub fn binomial(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// `c(n, j) = C(n, j) - C(n, j-1)`, evaluated literally (it may be negative).
pub fn catalan(n: i64, j: i64) -> i128 {
    binomial(n, j) - binomial(n, j - 1)
}

pub type Weight = Vec<i8>;

/// All weights of genus `g` in lexicographic order over `-1 < 0 < 1`.
pub fn all_weights(genus: usize) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..genus {
        out = out
            .into_iter()
            .flat_map(|w: Weight| {
                [-1i8, 0, 1].into_iter().map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Blades of degree `j` with per-handle content `λ`.
pub fn weight_space(genus: usize, j: usize, lambda: &[i8]) -> Result<Vec<Blade>> {
    check_genus(genus)?;
    if lambda.len() != genus {
        return Err(Error::Dimension(format!("weight of length {} in genus {genus}", lambda.len())));
    }
    if lambda.iter().any(|x| !(-1..=1).contains(x)) {
        return Err(Error::InvalidArgument("weights must lie in {-1, 0, 1}".into()));
    }
    Ok(blades_of_degree(genus, j).into_iter().filter(|b| b.weight(genus) == lambda).collect())
}

/// The neutral handles of a weight and the fixed single generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightBlock {
    pub genus: usize,
    pub lambda: Weight,
    /// 1-based handle indices with `λ_i = 0`, ascending.
    pub neutral: Vec<usize>,
    pub singles: Blade,
}

impl WeightBlock {
    pub fn new(genus: usize, lambda: &[i8]) -> Self {
        let mut neutral = Vec::new();
        let mut singles = 0u32;
        for (i, &x) in lambda.iter().enumerate() {
            match x {
                1 => singles |= Blade::a(i + 1).0,
                -1 => singles |= Blade::b(i + 1).0,
                _ => neutral.push(i + 1),
            }
        }
        Self { genus, lambda: lambda.to_vec(), neutral, singles: Blade(singles) }
    }

    pub fn n(&self) -> usize {
        self.neutral.len()
    }

    /// Number of full handles for a blade of degree `j`, if the degree is
    /// realizable in this weight.
    pub fn m_for_degree(&self, j: usize) -> Option<usize> {
        let s = self.genus - self.n();
        (j >= s && (j - s) % 2 == 0 && (j - s) / 2 <= self.n()).then(|| (j - s) / 2)
    }

    /// Blade whose full handles are the neutral positions in `subset`.
    pub fn blade(&self, subset: u32) -> Blade {
        let mut mask = self.singles.0;
        for (pos, &h) in self.neutral.iter().enumerate() {
            if subset >> pos & 1 == 1 {
                mask |= Blade::handle(h).0;
            }
        }
        Blade(mask)
    }

    pub fn to_multivector(&self, v: &SubsetVector, ring: ScalarRing) -> MultiVector {
        MultiVector::from_terms(self.genus, ring, v.iter().map(|(&s, &c)| (self.blade(s), c)))
    }
}

/// Sparse vector on subsets of `{0, …, n-1}` (bit masks).
pub type SubsetVector = BTreeMap<u32, i128>;

fn add_into(v: &mut SubsetVector, key: u32, c: i128, modulus: Option<u32>) {
    let e = v.entry(key).or_insert(0);
    *e += c;
    if let Some(p) = modulus {
        *e = e.rem_euclid(p as i128);
    }
    if *e == 0 {
        v.remove(&key);
    }
}

/// `E` in the subset model: add one element in every possible way.
pub fn subset_e(v: &SubsetVector, n: usize, modulus: Option<u32>) -> SubsetVector {
    let mut out = SubsetVector::new();
    for (&s, &c) in v {
        for i in 0..n {
            if s >> i & 1 == 0 {
                add_into(&mut out, s | 1 << i, c, modulus);
            }
        }
    }
    out
}

/// `F` in the subset model: remove one element in every possible way.
pub fn subset_f(v: &SubsetVector, n: usize, modulus: Option<u32>) -> SubsetVector {
    let mut out = SubsetVector::new();
    for (&s, &c) in v {
        for i in 0..n {
            if s >> i & 1 == 1 {
                add_into(&mut out, s & !(1 << i), c, modulus);
            }
        }
    }
    out
}

pub fn subsets(n: usize, m: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == m).collect()
}

/// Second rows of the standard tableaux of shape `(n-m, m)`: sets
/// `s_0 < … < s_{m-1}` with `s_i ≥ 2i + 1`.
pub fn standard_second_rows(n: usize, m: usize) -> Vec<u32> {
    if 2 * m > n {
        return Vec::new();
    }
    subsets(n, m)
        .into_iter()
        .filter(|&s| (0..n).filter(|i| s >> i & 1 == 1).enumerate().all(|(i, x)| x > 2 * i))
        .collect()
}

/// `∏_i (x_{s_i} - x_{t_i})`, where `t_i` is the `i`-th entry of the first row.
/// Its leading term `{s_i}` has coefficient `+1`; every other term has a
/// strictly smaller element sum.
pub fn polytabloid(n: usize, second_row: u32) -> SubsetVector {
    let s: Vec<usize> = (0..n).filter(|i| second_row >> i & 1 == 1).collect();
    let t: Vec<usize> = (0..n).filter(|i| second_row >> i & 1 == 0).take(s.len()).collect();
    let m = s.len();
    let mut out = SubsetVector::new();
    for choice in 0u32..1 << m {
        let mut mask = 0u32;
        let mut sign = 1;
        for i in 0..m {
            if choice >> i & 1 == 1 {
                mask |= 1 << t[i];
                sign = -sign;
            } else {
                mask |= 1 << s[i];
            }
        }
        add_into(&mut out, mask, sign, None);
    }
    out
}

fn element_sum(s: u32) -> u32 {
    (0..32).filter(|i| s >> i & 1 == 1).sum()
}

/// The polytabloid basis of `ker F` on `m`-subsets of `n` points.
#[derive(Clone, Debug)]
pub struct SpechtLattice {
    pub n: usize,
    pub m: usize,
    pub vectors: Vec<SubsetVector>,
    leads: HashMap<u32, usize>,
}

impl SpechtLattice {
    pub fn new(n: usize, m: usize) -> Self {
        let rows = standard_second_rows(n, m);
        let leads = rows.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let vectors = rows.iter().map(|&s| polytabloid(n, s)).collect();
        Self { n, m, vectors, leads }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `v` in the basis, over `ℤ` (`modulus = None`) or `F_p`.
    /// Leading coefficients are units, so no division occurs.
    pub fn coordinates(&self, v: &SubsetVector, modulus: Option<u32>) -> Result<Vec<i128>> {
        let mut w: SubsetVector = v.clone();
        if let Some(p) = modulus {
            w = w.into_iter().map(|(k, c)| (k, c.rem_euclid(p as i128))).filter(|&(_, c)| c != 0).collect();
        }
        let mut coords = vec![0i128; self.dim()];
        while let Some((&top, _)) = w.iter().max_by_key(|(&s, _)| (element_sum(s), s)) {
            let idx = *self
                .leads
                .get(&top)
                .ok_or_else(|| Error::NotInSpan(format!("subset {top:#b} is not a leading term")))?;
            let c = w[&top];
            coords[idx] = c;
            for (&s, &b) in &self.vectors[idx] {
                add_into(&mut w, s, -c * b, modulus);
            }
        }
        Ok(coords)
    }
}
