//! `F_p` reductions of the primitive components, the null-space quotients
//! `V̄^(k)_p`, the complexes `C(p,k)` and the modular Alexander image.
//!
//! Everything is block diagonal over weights: `E`, `F` and the inner form
//! preserve the weight of a blade, so ranks and exactness are computed one
//! weight space at a time.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{check_genus, MultiVector};
use crate::lefschetz::{dim_v, primitive_degree, quantum_integer, LefschetzDecomposition, PrimitiveBasis};
use crate::linalg::FpMatrix;
use crate::ring::{CycFp, RingElement, ScalarRing};
use crate::symplectic::SpMatrix;

pub fn check_prime(p: u32) -> Result<()> {
    let prime = p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0);
    if prime {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not an odd prime")))
    }
}

/// Index `c_i` of the `i`-th term of `C(p,k)`: `ip + k` for even `i`,
/// `(i+1)p - k` for odd `i`.
pub fn stage_index(p: usize, k: usize, i: usize) -> usize {
    if i % 2 == 0 {
        i * p + k
    } else {
        (i + 1) * p - k
    }
}

/// Reduction of `V^(j)_ℤ` with the Gram matrix of each weight block.
#[derive(Clone, Debug)]
pub struct ModularComponent {
    p: u32,
    j: usize,
    basis: Arc<PrimitiveBasis>,
    grams: Vec<FpMatrix>,
}

impl ModularComponent {
    fn new(basis: Arc<PrimitiveBasis>, p: u32) -> Self {
        let grams = basis
            .blocks()
            .iter()
            .map(|&(_, start, count)| {
                let vs = &basis.vectors()[start..start + count];
                let rows: Vec<Vec<i128>> = vs.iter().map(|u| vs.iter().map(|v| u.dot(v)).collect()).collect();
                FpMatrix::from_rows(p, &rows, count)
            })
            .collect();
        Self { p, j: basis.k(), basis, grams }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn basis(&self) -> &PrimitiveBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `dim V̄^(j)_p`.
    pub fn rank(&self) -> usize {
        self.grams.iter().map(FpMatrix::rank).sum()
    }

    pub fn block_gram(&self, lambda: &[i8]) -> Option<&FpMatrix> {
        let i = self.basis.blocks().iter().position(|(l, _, _)| l == lambda)?;
        Some(&self.grams[i])
    }

    /// The full (block diagonal) Gram matrix.
    pub fn gram(&self) -> FpMatrix {
        let mut g = FpMatrix::zeros(self.p, self.dim(), self.dim());
        for ((_, start, count), b) in self.basis.blocks().iter().zip(&self.grams) {
            for r in 0..*count {
                for c in 0..*count {
                    g.set(start + r, start + c, b.get(r, c));
                }
            }
        }
        g
    }

    pub fn null_quotient(&self) -> NullQuotient {
        let d = self.dim();
        let mut rows = Vec::new();
        let mut null = Vec::new();
        for ((_, start, _), b) in self.basis.blocks().iter().zip(&self.grams) {
            for i in b.independent_rows() {
                let mut r = vec![0u32; d];
                for c in 0..b.cols() {
                    r[start + c] = b.get(i, c);
                }
                rows.push(r);
            }
            for v in b.kernel() {
                let mut full = vec![0u32; d];
                full[*start..start + v.len()].copy_from_slice(&v);
                null.push(full);
            }
        }
        let rank = rows.len();
        let mut projection = FpMatrix::zeros(self.p, rank, d);
        for (i, r) in rows.iter().enumerate() {
            for (c, &v) in r.iter().enumerate() {
                projection.set(i, c, v);
            }
        }
        let lift = projection
            .solve_matrix(&FpMatrix::identity(self.p, rank))
            .expect("independent rows have full row rank");
        NullQuotient { rank, projection, lift, null_basis: null }
    }
}

/// `V^(j)_p → V̄^(j)_p`: `projection` has the null space as kernel and
/// `projection · lift = I`.
#[derive(Clone, Debug)]
pub struct NullQuotient {
    pub rank: usize,
    pub projection: FpMatrix,
    pub lift: FpMatrix,
    pub null_basis: Vec<Vec<u32>>,
}

impl NullQuotient {
    /// Matrix of a map `T: V^(j)_p → V^(i)_p` on the quotients, after checking
    /// that `T` sends the null space of the source into that of the target.
    pub fn induced(&self, map: &FpMatrix, target: &NullQuotient) -> Result<FpMatrix> {
        let p = map.p();
        if !self.null_basis.is_empty() {
            let k = FpMatrix::from_columns(p, &self.null_basis, map.cols());
            if !target.projection.mul(map).mul(&k).is_zero() {
                return Err(Error::Internal("map does not preserve the null spaces".into()));
            }
        }
        Ok(target.projection.mul(map).mul(&self.lift))
    }
}

/// A weight-preserving map, one matrix per source weight.
#[derive(Clone, Debug)]
pub struct BlockMap {
    pub p: u32,
    pub source: usize,
    pub target: usize,
    pub blocks: HashMap<Vec<i8>, FpMatrix>,
}

impl BlockMap {
    pub fn rank(&self) -> usize {
        self.blocks.values().map(FpMatrix::rank).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageReport {
    pub index: usize,
    pub c: usize,
    pub degree: Option<usize>,
    pub dim: usize,
    /// Exponent `r` of the map `E^r` into the previous stage.
    pub map_exponent: Option<usize>,
    pub map_rank: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightFailure {
    pub lambda: Vec<i8>,
    pub stage: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub p: u32,
    pub k: usize,
    pub genus: usize,
    pub stages: Vec<StageReport>,
    pub quotient_dim: usize,
    pub alternating_sum: i128,
    pub weight_spaces_checked: usize,
    pub failures: Vec<WeightFailure>,
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VbarDim {
    pub rank_gram: usize,
    pub alternating_sum: i128,
}

/// Which modular Alexander image: `Δ̄⁺` substitutes `t = ζ_p` (`q = -ζ_p` in
/// the quantum integers), `Δ̄⁻` substitutes `t = -ζ_p` (`q = ζ_p`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    Plus,
    Minus,
}

impl Variant {
    pub fn q(self, p: u32) -> CycFp {
        match self {
            Variant::Plus => -&CycFp::zeta(p),
            Variant::Minus => CycFp::zeta(p),
        }
    }

    pub fn t(self, p: u32) -> CycFp {
        -&self.q(p)
    }
}

/// Primitive bases of one genus, shared by every modular computation.
#[derive(Clone, Debug)]
pub struct ModularContext {
    genus: usize,
    exec: Exec,
    dec: LefschetzDecomposition,
}

impl ModularContext {
    pub fn new(genus: usize, exec: Exec) -> Result<Self> {
        check_genus(genus)?;
        Ok(Self { genus, exec, dec: LefschetzDecomposition::new(genus, exec)? })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn decomposition(&self) -> &LefschetzDecomposition {
        &self.dec
    }

    fn basis(&self, j: usize) -> Result<Arc<PrimitiveBasis>> {
        match self.dec.basis(j) {
            Some(b) => Ok(b.clone()),
            None => Ok(Arc::new(PrimitiveBasis::new(self.genus, j)?)),
        }
    }

    pub fn component(&self, j: usize, p: u32) -> Result<ModularComponent> {
        check_prime(p)?;
        Ok(ModularComponent::new(self.basis(j)?, p))
    }

    /// `E^k: V^(j)_p → V^(j-2k)_p` for `j ≡ k (mod p)`, `0 < k < p`. Fails if
    /// an image leaves the reduced target lattice.
    pub fn ek_map(&self, j: usize, k: usize, p: u32) -> Result<BlockMap> {
        check_prime(p)?;
        if k == 0 || k >= p as usize || j % p as usize != k % p as usize || j <= 2 * k {
            return Err(Error::InvalidArgument(format!("E^{k} on V^({j})_{p} needs j ≡ k mod p, 0 < k < p, j > 2k")));
        }
        let source = self.basis(j)?;
        let target = self.basis(j - 2 * k)?;
        let ring = ScalarRing::ModP(p);
        let blocks = self.exec.try_map(source.blocks(), |(lambda, start, count)| {
            let (t_start, t_count) = target.block_range(lambda).unwrap_or((0, 0));
            let mut m = FpMatrix::zeros(p, t_count, *count);
            for col in 0..*count {
                let mut v = source.vectors()[start + col].reduce_mod(p);
                for _ in 0..k {
                    v = v.op_e();
                }
                debug_assert_eq!(v.ring(), ring);
                for (idx, c) in target.sparse_coordinates(&v)? {
                    if idx < t_start || idx >= t_start + t_count {
                        return Err(Error::Internal(format!("E^{k} moved weight {lambda:?}")));
                    }
                    m.set(idx - t_start, col, c as u32);
                }
            }
            Ok((lambda.clone(), m))
        })?;
        Ok(BlockMap { p, source: j, target: j - 2 * k, blocks: blocks.into_iter().collect() })
    }

    pub fn vbar_dim(&self, k: usize, p: u32) -> Result<VbarDim> {
        check_prime(p)?;
        if k == 0 || k >= p as usize {
            return Err(Error::InvalidArgument(format!("need 0 < k < p, got k={k}, p={p}")));
        }
        let rank_gram = self.component(k, p)?.rank();
        let alternating_sum = (0..)
            .map(|i| (i, stage_index(p as usize, k, i)))
            .take_while(|&(_, c)| c <= self.genus + 1)
            .map(|(i, c)| if i % 2 == 0 { dim_v(self.genus, c) } else { -dim_v(self.genus, c) })
            .sum();
        Ok(VbarDim { rank_gram, alternating_sum })
    }

    /// Exactness of `… → V^(c_1)_p → V^(c_0)_p → V̄^(k)_p → 0`, weight by weight.
    pub fn complex_check(&self, p: u32, k: usize) -> Result<ComplexReport> {
        check_prime(p)?;
        if k == 0 || k >= p as usize {
            return Err(Error::InvalidArgument(format!("need 0 < k < p, got k={k}, p={p}")));
        }
        let g = self.genus;
        let cs: Vec<usize> = (0..).map(|i| stage_index(p as usize, k, i)).take_while(|&c| c <= g + 1).collect();
        let comps: Vec<ModularComponent> = cs.iter().map(|&c| self.component(c, p)).collect::<Result<_>>()?;
        let mut maps = Vec::new();
        let mut failures = Vec::new();
        for i in 1..cs.len() {
            let r = (cs[i] - cs[i - 1]) / 2;
            match self.ek_map(cs[i], r, p) {
                Ok(m) => maps.push(Some(m)),
                Err(e) => {
                    failures.push(WeightFailure { lambda: Vec::new(), stage: i, reason: format!("E^{r} not well defined: {e}") });
                    maps.push(None);
                }
            }
        }
        let mut weights: Vec<Vec<i8>> =
            comps.iter().flat_map(|c| c.basis().blocks().iter().map(|(l, _, _)| l.clone())).collect();
        weights.sort();
        weights.dedup();

        let per_weight = self.exec.map(&weights, |lambda| check_weight(lambda, &comps, &maps, p));
        let mut stage_ok = vec![failures.is_empty(); cs.len()];
        for fails in &per_weight {
            for f in fails {
                stage_ok[f.stage] = false;
            }
        }
        failures.extend(per_weight.into_iter().flatten());

        let stages = cs
            .iter()
            .enumerate()
            .map(|(i, &c)| StageReport {
                index: i,
                c,
                degree: primitive_degree(g, c),
                dim: comps[i].dim(),
                map_exponent: (i > 0).then(|| (c - cs[i - 1]) / 2),
                map_rank: if i > 0 { maps[i - 1].as_ref().map_or(0, BlockMap::rank) } else { 0 },
                exact: stage_ok[i],
            })
            .collect();
        let quotient_dim = comps.first().map_or(0, ModularComponent::rank);
        let alternating_sum = self.vbar_dim(k, p)?.alternating_sum;
        Ok(ComplexReport {
            p,
            k,
            genus: g,
            stages,
            quotient_dim,
            alternating_sum,
            weight_spaces_checked: weights.len(),
            exact: failures.is_empty() && quotient_dim as i128 == alternating_sum,
            failures,
        })
    }

    /// `tr(φ | V̄^(k)_p)`, asserting that `φ` preserves the null space.
    pub fn quotient_trace(&self, phi: &SpMatrix, k: usize, p: u32) -> Result<u32> {
        if phi.genus() != self.genus {
            return Err(Error::GenusMismatch(phi.genus(), self.genus));
        }
        let comp = self.component(k, p)?;
        if comp.dim() == 0 {
            return Ok(0);
        }
        let r = comp.basis().restrict(phi)?;
        let r = FpMatrix::from_rows(p, &r.to_rows(), r.cols());
        let q = comp.null_quotient();
        Ok(q.induced(&r, &q)?.trace())
    }

    /// `Σ_{k=1}^{p-1} [k]_q tr(φ | V̄^(k)_p)` with `q` fixed by `variant`.
    pub fn modular_alexander(&self, phi: &SpMatrix, p: u32, variant: Variant) -> Result<CycFp> {
        check_prime(p)?;
        let q = RingElement::CycFp(variant.q(p));
        let mut acc = CycFp::zero(p);
        for k in 1..p as usize {
            if k > self.genus + 1 {
                break;
            }
            let tr = self.quotient_trace(phi, k, p)?;
            match quantum_integer(k as u32, &q)? {
                RingElement::CycFp(qk) => acc = &acc + &qk.scale(tr as i128),
                _ => unreachable!("quantum integer stays in F_p[ζ]"),
            }
        }
        Ok(acc)
    }
}

fn check_weight(lambda: &[i8], comps: &[ModularComponent], maps: &[Option<BlockMap>], p: u32) -> Vec<WeightFailure> {
    let mut fails = Vec::new();
    let dims: Vec<usize> = comps.iter().map(|c| c.basis().block_range(lambda).map_or(0, |r| r.1)).collect();
    // maps[i-1] is M_i: stage i → stage i-1
    let block = |i: usize| -> Option<FpMatrix> {
        let m = maps.get(i - 1)?.as_ref()?;
        Some(m.blocks.get(lambda).cloned().unwrap_or_else(|| FpMatrix::zeros(p, dims[i - 1], dims[i])))
    };
    let rank_of = |i: usize| -> Option<usize> {
        if i >= comps.len() {
            Some(0)
        } else {
            block(i).map(|m| m.rank())
        }
    };
    let mut fail = |stage: usize, reason: String| fails.push(WeightFailure { lambda: lambda.to_vec(), stage, reason });

    // at V^(k): ker(V → V̄) = null space = image of M_1
    let gram = comps[0].block_gram(lambda).cloned().unwrap_or_else(|| FpMatrix::zeros(p, 0, 0));
    let gram_rank = gram.rank();
    if comps.len() > 1 {
        if let Some(m1) = block(1) {
            if dims[0] > 0 && !gram.mul(&m1).is_zero() {
                fail(0, "image of the incoming map is not null".into());
            }
        }
    }
    match rank_of(1) {
        Some(r) if r + gram_rank == dims[0] => {}
        Some(r) => fail(0, format!("rank {r} of incoming map, null space of dimension {}", dims[0] - gram_rank)),
        None => fail(0, "incoming map unavailable".into()),
    }
    for i in 1..comps.len() {
        let (Some(out_rank), Some(in_rank)) = (rank_of(i), rank_of(i + 1)) else {
            fail(i, "map unavailable".into());
            continue;
        };
        if i + 1 < comps.len() {
            if let (Some(a), Some(b)) = (block(i), block(i + 1)) {
                if !a.mul(&b).is_zero() {
                    fail(i, "consecutive maps do not compose to zero".into());
                }
            }
        }
        if in_rank + out_rank != dims[i] {
            fail(i, format!("dim {} but ranks {in_rank} in, {out_rank} out", dims[i]));
        }
    }
    fails
}

pub fn reduce_component(genus: usize, j: usize, p: u32) -> Result<ModularComponent> {
    check_prime(p)?;
    if j == 0 {
        return Err(Error::InvalidArgument("component index must be at least 1".into()));
    }
    Ok(ModularComponent::new(Arc::new(PrimitiveBasis::new(genus, j)?), p))
}

pub fn complex_check(p: u32, k: usize, genus: usize) -> Result<ComplexReport> {
    ModularContext::new(genus, Exec::default())?.complex_check(p, k)
}

pub fn vbar_dim(genus: usize, k: usize, p: u32) -> Result<VbarDim> {
    ModularContext::new(genus, Exec::default())?.vbar_dim(k, p)
}

pub fn modular_alexander(phi: &SpMatrix, p: u32, variant: Variant) -> Result<CycFp> {
    ModularContext::new(phi.genus(), Exec::default())?.modular_alexander(phi, p, variant)
}

/// Coefficients of `1, y, …, y^{p-2}` with `ζ_p = 1 + y`.
pub fn y_expand(v: &CycFp) -> Vec<u32> {
    v.coeffs().to_vec()
}

/// `ω^n` as an integral multivector.
pub fn omega_power(genus: usize, n: usize) -> MultiVector {
    (0..n).fold(MultiVector::one(genus, ScalarRing::Integer), |acc, _| acc.op_e())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Blade;
    use crate::lefschetz::fn_alexander;
    use crate::symplectic::TwistWord;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn primes() {
        assert!(check_prime(5).is_ok());
        assert!(check_prime(13).is_ok());
        assert!(check_prime(9).is_err());
        assert!(check_prime(2).is_err());
    }

    #[test]
    fn stage_indices() {
        let cs: Vec<usize> = (0..4).map(|i| stage_index(5, 1, i)).collect();
        assert_eq!(cs, vec![1, 9, 11, 19]);
    }

    #[test]
    fn genus_one_gram_is_identity() {
        let c = reduce_component(1, 1, 5).unwrap();
        assert_eq!(c.gram(), FpMatrix::identity(5, 2));
        assert_eq!(c.rank(), 2);
        assert_eq!(reduce_component(2, 4, 5).unwrap().dim(), 0);
    }

    #[test]
    fn explicit_null_vector() {
        let g = 5;
        let v = MultiVector::omega(g, ScalarRing::Integer)
            .sub(&MultiVector::from_blade(g, ScalarRing::Integer, Blade::handle(1), 5))
            .unwrap();
        assert!(v.op_f().is_zero());
        let c = reduce_component(g, 4, 5).unwrap();
        let coords = c.basis().coordinates(&v.reduce_mod(5)).unwrap();
        let coords: Vec<u32> = coords.iter().map(|&x| x as u32).collect();
        assert!(c.gram().mul_vec(&coords).iter().all(|&x| x == 0));
        assert!(c.rank() < c.dim());
    }

    #[test]
    fn small_complexes_are_exact() {
        for g in 1..=5 {
            let ctx = ModularContext::new(g, Exec::Sequential).unwrap();
            for k in 1..5 {
                let r = ctx.complex_check(5, k).unwrap();
                assert!(r.exact, "g={g} k={k}: {:?}", r.failures);
                assert_eq!(r.quotient_dim as i128, r.alternating_sum);
            }
        }
    }

    #[test]
    fn e_power_p_vanishes_mod_p() {
        let w = omega_power(5, 5);
        assert!(!w.is_zero());
        assert!(w.reduce_mod(5).is_zero());
        assert!(!omega_power(5, 4).reduce_mod(5).is_zero());
    }

    #[test]
    fn ek_rejects_bad_indices() {
        let ctx = ModularContext::new(5, Exec::Sequential).unwrap();
        assert!(ctx.ek_map(6, 2, 5).is_err());
        let m = ctx.ek_map(6, 1, 5).unwrap();
        assert!(m.rank() > 0);
    }

    #[test]
    fn modular_alexander_matches_reduction_below_p() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for g in 1..=3 {
            let ctx = ModularContext::new(g, Exec::Sequential).unwrap();
            for _ in 0..4 {
                let m = TwistWord::random(g, 4, &mut rng).to_sp().unwrap();
                let delta = fn_alexander(&m).unwrap();
                for variant in [Variant::Plus, Variant::Minus] {
                    let expected = CycFp::eval_laurent(&delta, &variant.t(5));
                    assert_eq!(ctx.modular_alexander(&m, 5, variant).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn y_expansions() {
        assert_eq!(y_expand(&CycFp::zeta(5)), vec![1, 1, 0, 0]);
        assert_eq!(y_expand(&CycFp::zero(5)), vec![0, 0, 0, 0]);
        let z = CycFp::zeta(5);
        let x = &z - &z.inverse().unwrap();
        // ζ - ζ⁻¹ = 2y - y² + y³ mod y⁴
        assert_eq!(y_expand(&x), vec![0, 2, 4, 1]);
    }
}
