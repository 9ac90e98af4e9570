//! Primitive components `V^(k) = ker F ∩ ∧^{g-k+1}` and the Alexander
//! polynomial of a mapping torus via the two trace formulas.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{check_genus, Blade, MultiVector};
use crate::linalg::IntMatrix;
use crate::ring::{Cyc20, CycFp, LaurentPoly, RingElement, ScalarRing};
use crate::symplectic::{exterior_trace, SpMatrix};
use crate::weights::{all_weights, SpechtLattice, WeightBlock};

pub use crate::weights::{binomial, catalan};

/// Degree of the primitive component `V^(k)` in genus `g`, if nonnegative.
pub fn primitive_degree(genus: usize, k: usize) -> Option<usize> {
    (k >= 1 && k <= genus + 1).then(|| genus + 1 - k)
}

/// `C(2g, g-k+1) - C(2g, g-k-1)`, zero for `k > g+1`.
pub fn dim_v(genus: usize, k: usize) -> i128 {
    match primitive_degree(genus, k) {
        None => 0,
        Some(j) => binomial(2 * genus as i64, j as i64) - binomial(2 * genus as i64, j as i64 - 2),
    }
}

/// Blade ordering used for triangular solves: first by the single
/// generators (the weight), then by the sum of full-handle indices.
fn lead_key(b: Blade) -> (u32, u32, u32) {
    let full = b.0 & (b.0 >> 1) & 0x5555_5555;
    let singles = b.0 & !(full | full << 1);
    let sum = (0..16).filter(|i| full >> (2 * i) & 1 == 1).map(|i| i + 1).sum();
    (singles, sum, b.0)
}

/// Polytabloid basis of `V^(k)_ℤ(Σ_g)`, ordered by weight.
#[derive(Clone, Debug)]
pub struct PrimitiveBasis {
    genus: usize,
    k: usize,
    vectors: Vec<MultiVector>,
    leads: HashMap<Blade, usize>,
    /// `(weight, first index, count)` for every weight with a nonzero part.
    blocks: Vec<(Vec<i8>, usize, usize)>,
    block_index: HashMap<Vec<i8>, usize>,
}

impl PrimitiveBasis {
    pub fn new(genus: usize, k: usize) -> Result<Self> {
        check_genus(genus)?;
        if k == 0 {
            return Err(Error::InvalidArgument("component index k must be at least 1".into()));
        }
        let mut out = Self { genus, k, vectors: Vec::new(), leads: HashMap::new(), blocks: Vec::new(), block_index: HashMap::new() };
        let Some(j) = primitive_degree(genus, k) else {
            return Ok(out);
        };
        let mut lattices: HashMap<(usize, usize), SpechtLattice> = HashMap::new();
        for lambda in all_weights(genus) {
            let block = WeightBlock::new(genus, &lambda);
            let Some(m) = block.m_for_degree(j) else { continue };
            let lat = lattices.entry((block.n(), m)).or_insert_with(|| SpechtLattice::new(block.n(), m));
            if lat.dim() == 0 {
                continue;
            }
            let start = out.vectors.len();
            for v in &lat.vectors {
                let mv = block.to_multivector(v, ScalarRing::Integer);
                let lead = mv.terms().map(|(b, _)| b).max_by_key(|&b| lead_key(b)).expect("nonzero polytabloid");
                debug_assert_eq!(mv.coeff(lead), 1);
                out.leads.insert(lead, out.vectors.len());
                out.vectors.push(mv);
            }
            out.block_index.insert(lambda.clone(), out.blocks.len());
            out.blocks.push((lambda, start, lat.dim()));
        }
        Ok(out)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> Option<usize> {
        primitive_degree(self.genus, self.k)
    }

    pub fn vectors(&self) -> &[MultiVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn blocks(&self) -> &[(Vec<i8>, usize, usize)] {
        &self.blocks
    }

    /// `(start, count)` of the block of weight `λ`, if nonzero.
    pub fn block_range(&self, lambda: &[i8]) -> Option<(usize, usize)> {
        self.block_index.get(lambda).map(|&i| (self.blocks[i].1, self.blocks[i].2))
    }

    /// Coordinates of `v` in this basis, over the ring of `v`. Every basis
    /// vector has a distinct leading blade with coefficient `1`, so the solve is
    /// division-free and fails exactly when `v` lies outside the span.
    pub fn coordinates(&self, v: &MultiVector) -> Result<Vec<i128>> {
        let mut coords = vec![0i128; self.len()];
        for (i, c) in self.sparse_coordinates(v)? {
            coords[i] = c;
        }
        Ok(coords)
    }

    /// Nonzero coordinates as `(index, value)` pairs.
    pub fn sparse_coordinates(&self, v: &MultiVector) -> Result<Vec<(usize, i128)>> {
        if v.genus() != self.genus {
            return Err(Error::GenusMismatch(v.genus(), self.genus));
        }
        let ring = v.ring();
        let mut w = v.clone();
        let mut coords = Vec::new();
        while let Some(top) = w.terms().map(|(b, _)| b).max_by_key(|&b| lead_key(b)) {
            let idx = *self
                .leads
                .get(&top)
                .ok_or_else(|| Error::NotInSpan(format!("blade {top} is not a leading term of V^({})", self.k)))?;
            let c = w.coeff(top);
            coords.push((idx, c));
            w = w.sub(&self.vectors[idx].reduce_ring(ring).scale(c))?;
        }
        Ok(coords)
    }

    /// Matrix of `∧φ` restricted to the component, in this basis.
    pub fn restrict(&self, phi: &SpMatrix) -> Result<IntMatrix> {
        let n = self.len();
        let mut out = IntMatrix::zeros(n, n);
        for (col, v) in self.vectors.iter().enumerate() {
            let coords = self.coordinates(&phi.apply_exterior(v)?)?;
            for (row, c) in coords.into_iter().enumerate() {
                out.set(row, col, c);
            }
        }
        Ok(out)
    }
}

pub fn primitive_basis(genus: usize, k: usize) -> Result<PrimitiveBasis> {
    PrimitiveBasis::new(genus, k)
}

fn invert(q: &RingElement) -> Result<RingElement> {
    let bad = || Error::InvalidArgument("q is not invertible".into());
    Ok(match q {
        RingElement::Integer(v) if v.abs() == 1 => RingElement::Integer(*v),
        RingElement::ModP { value, p } if value % p != 0 => {
            RingElement::ModP { value: crate::ring::pow_mod(*value as u64, *p as u64 - 2, *p as u64) as u32, p: *p }
        }
        RingElement::Laurent(l) => {
            let terms = l.to_pairs();
            match terms.as_slice() {
                [(e, c)] if c.abs() == 1 => RingElement::Laurent(LaurentPoly::monomial(*c, -e)),
                _ => return Err(bad()),
            }
        }
        RingElement::CycFp(c) => RingElement::CycFp(c.inverse().ok_or_else(bad)?),
        RingElement::Cyc20(c) => RingElement::Cyc20(c.inverse().ok_or_else(bad)?),
        _ => return Err(bad()),
    })
}

fn one_like(q: &RingElement) -> RingElement {
    match q {
        RingElement::Integer(_) => RingElement::Integer(1),
        RingElement::ModP { p, .. } => RingElement::ModP { value: 1, p: *p },
        RingElement::Laurent(_) => RingElement::Laurent(LaurentPoly::one()),
        RingElement::CycFp(c) => RingElement::CycFp(CycFp::one(c.p())),
        RingElement::Cyc20(_) => RingElement::Cyc20(Cyc20::ONE),
    }
}

/// `[n]_q = Σ_{i=0}^{n-1} q^{n-1-2i}` in the ring of `q`.
pub fn quantum_integer(n: u32, q: &RingElement) -> Result<RingElement> {
    let qi = invert(q)?;
    let q2 = q.mul(q)?;
    let mut term = one_like(q);
    for _ in 0..n.saturating_sub(1) {
        term = term.mul(&qi)?;
    }
    let one = one_like(q);
    let mut acc = one.add(&one.neg())?;
    for _ in 0..n {
        acc = acc.add(&term)?;
        term = term.mul(&q2)?;
    }
    Ok(acc)
}

/// `[n]_{-t}` as a Laurent polynomial.
pub fn quantum_integer_neg_t(n: u32) -> LaurentPoly {
    match quantum_integer(n, &RingElement::Laurent(LaurentPoly::monomial(-1, 1))) {
        Ok(RingElement::Laurent(l)) => l,
        _ => unreachable!("-t is a unit"),
    }
}

/// `Σ_j (-t)^{j-g} tr ∧^j φ`.
pub fn fn_alexander(phi: &SpMatrix) -> Result<LaurentPoly> {
    let g = phi.genus() as i32;
    let mut out = LaurentPoly::zero();
    for j in 0..=2 * g {
        let e = j - g;
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        out.add_term(e, sign * exterior_trace(phi, j as usize)?);
    }
    Ok(out)
}

/// Primitive bases for every `k ≤ g+1`, built once per genus.
#[derive(Clone, Debug)]
pub struct LefschetzDecomposition {
    genus: usize,
    bases: Vec<Arc<PrimitiveBasis>>,
}

impl LefschetzDecomposition {
    pub fn new(genus: usize, exec: Exec) -> Result<Self> {
        check_genus(genus)?;
        let ks: Vec<usize> = (1..=genus + 1).collect();
        let bases = exec.try_map(&ks, |&k| PrimitiveBasis::new(genus, k).map(Arc::new))?;
        Ok(Self { genus, bases })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Basis of `V^(k)`; `k` runs over `1..=g+1`.
    pub fn basis(&self, k: usize) -> Option<&Arc<PrimitiveBasis>> {
        k.checked_sub(1).and_then(|i| self.bases.get(i))
    }

    /// `tr(φ|V^(k))` for `k = 1..=g+1`.
    pub fn component_traces(&self, phi: &SpMatrix) -> Result<Vec<i128>> {
        if phi.genus() != self.genus {
            return Err(Error::GenusMismatch(phi.genus(), self.genus));
        }
        self.bases.iter().map(|b| Ok(b.restrict(phi)?.trace())).collect()
    }

    /// `Σ_{k=1}^{g+1} [k]_{-t} tr(φ|V^(k))`.
    pub fn alexander(&self, phi: &SpMatrix) -> Result<LaurentPoly> {
        let traces = self.component_traces(phi)?;
        Ok(traces
            .iter()
            .enumerate()
            .fold(LaurentPoly::zero(), |acc, (i, &tr)| &acc + &quantum_integer_neg_t(i as u32 + 1).scale(tr)))
    }
}

pub fn lefschetz_alexander(phi: &SpMatrix) -> Result<LaurentPoly> {
    LefschetzDecomposition::new(phi.genus(), Exec::default())?.alexander(phi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlexanderReport {
    pub genus: usize,
    pub fn_formula: Option<LaurentPoly>,
    pub lefschetz_formula: Option<LaurentPoly>,
    pub raw: LaurentPoly,
    pub normalized: LaurentPoly,
    pub formulas_agree: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    Fn,
    Lefschetz,
    Both,
}

pub fn alexander_report(phi: &SpMatrix, formula: Formula) -> Result<AlexanderReport> {
    let f = matches!(formula, Formula::Fn | Formula::Both).then(|| fn_alexander(phi)).transpose()?;
    let l = matches!(formula, Formula::Lefschetz | Formula::Both).then(|| lefschetz_alexander(phi)).transpose()?;
    let raw = f.clone().or_else(|| l.clone()).expect("at least one formula");
    let formulas_agree = match (&f, &l) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    Ok(AlexanderReport {
        genus: phi.genus(),
        normalized: raw.normalized(),
        raw,
        fn_formula: f,
        lefschetz_formula: l,
        formulas_agree,
    })
}

pub fn fibonacci(n: u32) -> i128 {
    let (mut a, mut b) = (0i128, 1i128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// `c(2r, r-1) - c(2r, r-3) + c(2r, r-6) - c(2r, r-8) + …`: offsets `5i+1`
/// enter with `+`, offsets `5i+3` with `-`.
pub fn fibonacci_catalan_sum(r: u32) -> i128 {
    let (n, r) = (2 * r as i64, r as i64);
    let mut acc = 0;
    let mut i = 0;
    while r - (5 * i + 1) >= 0 {
        acc += catalan(n, r - (5 * i + 1)) - catalan(n, r - (5 * i + 3));
        i += 1;
    }
    acc
}

/// `5^{g/2} f_{g-1}` for even `g ≥ 2`.
pub fn fibonacci_tqft_dim(genus: u32) -> Option<i128> {
    (genus >= 2 && genus % 2 == 0).then(|| 5i128.pow(genus / 2) * fibonacci(genus - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::TwistWord;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lp(pairs: &[(i32, i128)]) -> LaurentPoly {
        LaurentPoly::from_terms(pairs.iter().copied())
    }

    #[test]
    fn small_bases() {
        let b = primitive_basis(1, 2).unwrap();
        assert_eq!(b.vectors(), &[MultiVector::one(1, ScalarRing::Integer)]);
        assert_eq!(primitive_basis(2, 1).unwrap().len(), 5);
        assert!(primitive_basis(3, 5).unwrap().is_empty());
        assert!(primitive_basis(3, 0).is_err());
        assert_eq!(dim_v(2, 1), 5);
        assert_eq!(dim_v(4, 5), 1);
        assert_eq!(dim_v(3, 7), 0);
    }

    #[test]
    fn bases_are_primitive_and_homogeneous() {
        for g in 1..=4 {
            for k in 1..=g + 1 {
                let b = primitive_basis(g, k).unwrap();
                assert_eq!(b.len() as i128, dim_v(g, k));
                for v in b.vectors() {
                    assert!(v.op_f().is_zero());
                    assert_eq!(v.degree(), Some(g + 1 - k));
                }
            }
        }
    }

    #[test]
    fn quantum_integers() {
        let t = RingElement::Laurent(LaurentPoly::t());
        assert_eq!(quantum_integer(1, &t).unwrap(), RingElement::Laurent(LaurentPoly::one()));
        assert_eq!(quantum_integer(3, &t).unwrap(), RingElement::Laurent(lp(&[(-2, 1), (0, 1), (2, 1)])));
        assert_eq!(quantum_integer_neg_t(2), lp(&[(-1, -1), (1, -1)]));
        assert_eq!(quantum_integer(0, &t).unwrap(), RingElement::Laurent(LaurentPoly::zero()));
        let z = RingElement::CycFp(CycFp::zeta(5));
        // [5]_ζ = 0 for a primitive fifth root of unity
        assert!(quantum_integer(5, &z).unwrap().is_zero());
    }

    #[test]
    fn identity_alexander() {
        for g in 1..=4 {
            let base = lp(&[(-1, 1), (0, -2), (1, 1)]).pow(g as u32);
            let sign = if g % 2 == 0 { 1 } else { -1 };
            let id = SpMatrix::identity(g);
            assert_eq!(fn_alexander(&id).unwrap(), base.scale(sign));
            assert_eq!(lefschetz_alexander(&id).unwrap(), base.scale(sign));
        }
    }

    #[test]
    fn trefoil_alexander() {
        let w = TwistWord::parse("curve = [1,0], exp = 1\ncurve = [0,1], exp = 1").unwrap();
        let m = w.to_sp().unwrap();
        let expected = lp(&[(-1, -1), (0, 1), (1, -1)]);
        assert_eq!(fn_alexander(&m).unwrap(), expected);
        assert_eq!(lefschetz_alexander(&m).unwrap(), expected);
        assert_eq!(expected.normalized(), lp(&[(-1, 1), (0, -1), (1, 1)]));
    }

    #[test]
    fn formulas_agree_on_random_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in 1..=3 {
            let dec = LefschetzDecomposition::new(g, Exec::Sequential).unwrap();
            for _ in 0..10 {
                let m = TwistWord::random(g, 5, &mut rng).to_sp().unwrap();
                let f = fn_alexander(&m).unwrap();
                assert_eq!(dec.alexander(&m).unwrap(), f);
                assert!(f.is_palindromic());
                // value at t = 1 is det(φ - I) up to sign
                let d = m.matrix().sub(&IntMatrix::identity(2 * g)).determinant();
                assert_eq!(f.eval_one().abs(), d.abs());
            }
        }
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(0), 0);
        assert_eq!(fibonacci(3), 2);
        assert_eq!(fibonacci(10), 55);
        for r in 1..=20 {
            assert_eq!(fibonacci_catalan_sum(r), fibonacci(2 * r), "r={r}");
        }
        assert_eq!(fibonacci_tqft_dim(2), Some(5));
        assert_eq!(fibonacci_tqft_dim(3), None);
    }
}
