//! The contraction `μ(x)` for `x ∈ ∧³H` and the block representation
//! `(x, m) ↦ [[m, 0], [μ(x)m, m]]` on `V̄^(k)_p ⊕ V̄^(k+3)_p`.
//!
//! `J` is the matrix of the symplectic form acting on `H`: `J a_i = -b_i`,
//! `J b_i = a_i`. It satisfies `m^{-T} J = J m` for symplectic `m`, which is
//! what makes `μ` covariant.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::exterior::{blades_of_degree, Blade, MultiVector};
use crate::linalg::{FpMatrix, IntMatrix};
use crate::modular::{check_prime, ModularComponent, ModularContext, NullQuotient};
use crate::ring::ScalarRing;
use crate::symplectic::{SpMatrix, TwistWord};

/// `J` applied to every degree-one factor.
pub fn apply_j(x: &MultiVector) -> Result<MultiVector> {
    let g = x.genus();
    let image = |slot: usize| {
        let i = slot / 2 + 1;
        if slot % 2 == 0 {
            MultiVector::from_blade(g, x.ring(), Blade::b(i), -1)
        } else {
            MultiVector::from_blade(g, x.ring(), Blade::a(i), 1)
        }
    };
    let mut out = MultiVector::zero(g, x.ring());
    for (b, c) in x.terms() {
        let mut term = MultiVector::one(g, x.ring());
        for s in b.slots() {
            term = term.wedge(&image(s))?;
        }
        out = out.add(&term.scale(c))?;
    }
    Ok(out)
}

fn check_cubic(x: &MultiVector) -> Result<()> {
    match x.degree() {
        None if x.is_zero() => Ok(()),
        Some(3) => Ok(()),
        _ => Err(Error::InvalidArgument("x must be homogeneous of degree 3".into())),
    }
}

/// `μ(x) b`, characterized by `⟨a, μ(x) b⟩ = ⟨(Jx) ∧ a, b⟩`. The result lives
/// in the ring of `b`.
pub fn mu_apply(x: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
    check_cubic(x)?;
    if x.genus() != b.genus() {
        return Err(Error::GenusMismatch(x.genus(), b.genus()));
    }
    let jx = apply_j(x)?;
    let mut out = MultiVector::zero(b.genus(), b.ring());
    for (y, cy) in jx.terms() {
        for (blade, cb) in b.terms() {
            if blade.0 & y.0 != y.0 {
                continue;
            }
            let rest = Blade(blade.0 & !y.0);
            let (sign, _) = y.wedge(rest).expect("disjoint");
            out.add_term(rest, sign as i128 * cy * cb);
        }
    }
    Ok(out)
}

/// Matrix of `μ(x): ∧^j → ∧^{j-3}` in the blade bases.
pub fn mu(x: &MultiVector, j: usize) -> Result<IntMatrix> {
    check_cubic(x)?;
    let g = x.genus();
    if j < 3 || j > 2 * g {
        return Err(Error::DegreeOutOfRange { degree: j, genus: g });
    }
    let src = blades_of_degree(g, j);
    let dst = blades_of_degree(g, j - 3);
    let mut out = IntMatrix::zeros(dst.len(), src.len());
    for (col, &b) in src.iter().enumerate() {
        let img = mu_apply(x, &MultiVector::from_blade(g, ScalarRing::Integer, b, 1))?;
        for (blade, c) in img.terms() {
            let row = dst.binary_search(&blade).expect("degree j-3 blade");
            out.set(row, col, c);
        }
    }
    Ok(out)
}

/// `∧³m · x`.
pub fn act_on_cubic(m: &SpMatrix, x: &MultiVector) -> Result<MultiVector> {
    m.apply_exterior(x)
}

/// Element `(x, m)` of `∧³H ⋊ Sp(2g, ℤ)` with product
/// `(x₁, m₁)(x₂, m₂) = (x₁ + m₁·x₂, m₁m₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JmElement {
    pub x: MultiVector,
    pub m: SpMatrix,
}

impl JmElement {
    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(Self { x: self.x.add(&act_on_cubic(&self.m, &other.x)?)?, m: self.m.mul(&other.m)? })
    }

    pub fn random<R: Rng>(genus: usize, rng: &mut R) -> Self {
        let terms: Vec<(Blade, i128)> =
            blades_of_degree(genus, 3).into_iter().map(|b| (b, rng.gen_range(-2..=2))).collect();
        let x = MultiVector::from_terms(genus, ScalarRing::Integer, terms);
        let m = TwistWord::random(genus, 3, rng).to_sp().expect("random word is well formed");
        Self { x, m }
    }
}

/// The quotients `V̄^(k)_p` and `V̄^(k+3)_p` of one genus.
#[derive(Clone, Debug)]
pub struct JmContext {
    p: u32,
    k: usize,
    low: ModularComponent,
    high: ModularComponent,
    low_q: NullQuotient,
    high_q: NullQuotient,
}

impl JmContext {
    pub fn new(ctx: &ModularContext, k: usize, p: u32) -> Result<Self> {
        check_prime(p)?;
        if k == 0 || k + 3 >= p as usize {
            return Err(Error::InvalidArgument(format!("need 0 < k < p - 3, got k={k}, p={p}")));
        }
        let low = ctx.component(k, p)?;
        let high = ctx.component(k + 3, p)?;
        let (low_q, high_q) = (low.null_quotient(), high.null_quotient());
        Ok(Self { p, k, low, high, low_q, high_q })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.low_q.rank, self.high_q.rank)
    }

    fn action(&self, comp: &ModularComponent, q: &NullQuotient, m: &SpMatrix) -> Result<FpMatrix> {
        if comp.dim() == 0 {
            return Ok(FpMatrix::zeros(self.p, 0, 0));
        }
        let r = comp.basis().restrict(m)?;
        q.induced(&FpMatrix::from_rows(self.p, &r.to_rows(), r.cols()), q)
    }

    /// `V̄(m)` on both factors.
    pub fn sp_action(&self, m: &SpMatrix) -> Result<(FpMatrix, FpMatrix)> {
        Ok((self.action(&self.low, &self.low_q, m)?, self.action(&self.high, &self.high_q, m)?))
    }

    /// `μ̄(x): V̄^(k)_p → V̄^(k+3)_p`.
    pub fn mu_on_quotients(&self, x: &MultiVector) -> Result<FpMatrix> {
        let (src, dst) = (self.low.basis(), self.high.basis());
        if let (Some(a), Some(b)) = (src.degree(), dst.degree()) {
            if a != b + 3 {
                return Err(Error::Internal(format!("degree {a} does not map to degree {b}")));
            }
        }
        let mut t = FpMatrix::zeros(self.p, dst.len(), src.len());
        for (col, v) in src.vectors().iter().enumerate() {
            let img = mu_apply(x, &v.reduce_mod(self.p))?;
            if dst.is_empty() {
                if !img.is_zero() {
                    return Err(Error::Internal("μ has a nonzero image in a zero component".into()));
                }
                continue;
            }
            for (row, c) in dst.sparse_coordinates(&img)? {
                t.set(row, col, c as u32);
            }
        }
        self.low_q.induced(&t, &self.high_q)
    }

    /// `[[V̄(m), 0], [μ̄(x) V̄(m), V̄(m)]]`.
    pub fn jm_rep(&self, e: &JmElement) -> Result<FpMatrix> {
        let (a, b) = self.sp_action(&e.m)?;
        let c = self.mu_on_quotients(&e.x)?.mul(&a);
        let (r1, r2) = self.dims();
        let mut out = FpMatrix::zeros(self.p, r1 + r2, r1 + r2);
        for i in 0..r1 {
            for j in 0..r1 {
                out.set(i, j, a.get(i, j));
            }
        }
        for i in 0..r2 {
            for j in 0..r1 {
                out.set(r1 + i, j, c.get(i, j));
            }
            for j in 0..r2 {
                out.set(r1 + i, r1 + j, b.get(i, j));
            }
        }
        Ok(out)
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JmReport {
    pub p: u32,
    pub k: usize,
    pub genus: usize,
    pub trials: usize,
    pub dims: (usize, usize),
    pub homomorphism: bool,
    pub covariance: bool,
    pub unipotent: bool,
    pub factorization: bool,
    pub corner_nonzero: bool,
    pub pass: bool,
}

/// Random checks of the homomorphism property, covariance, unipotence of
/// `(x, 1)`, and vanishing of `μ̄(ω ∧ h)` on every basis vector `h`.
pub fn jm_check<R: Rng>(genus: usize, k: usize, p: u32, trials: usize, rng: &mut R, exec: Exec) -> Result<JmReport> {
    let ctx = ModularContext::new(genus, exec)?;
    let jm = JmContext::new(&ctx, k, p)?;
    let pairs: Vec<(JmElement, JmElement)> =
        (0..trials).map(|_| (JmElement::random(genus, rng), JmElement::random(genus, rng))).collect();
    let results = exec.try_map(&pairs, |(e1, e2)| -> Result<(bool, bool, bool, bool)> {
        let lhs = jm.jm_rep(e1)?.mul(&jm.jm_rep(e2)?);
        let hom = lhs == jm.jm_rep(&e1.mul(e2)?)?;
        // μ̄(m·x) V̄(m) = V̄(m) μ̄(x)
        let (a, b) = jm.sp_action(&e1.m)?;
        let cov = jm.mu_on_quotients(&act_on_cubic(&e1.m, &e2.x)?)?.mul(&a) == b.mul(&jm.mu_on_quotients(&e2.x)?);
        let u = jm.jm_rep(&JmElement { x: e1.x.clone(), m: SpMatrix::identity(genus) })?;
        let n = u.sub(&FpMatrix::identity(p, u.rows()));
        let unip = n.mul(&n).is_zero();
        let corner = !jm.mu_on_quotients(&e1.x)?.is_zero();
        Ok((hom, cov, unip, corner))
    })?;
    let omega = MultiVector::omega(genus, ScalarRing::Integer);
    let mut factorization = true;
    for i in 0..2 * genus {
        let h = MultiVector::from_blade(genus, ScalarRing::Integer, Blade(1 << i), 1);
        factorization &= jm.mu_on_quotients(&omega.wedge(&h)?)?.is_zero();
    }
    let homomorphism = results.iter().all(|r| r.0);
    let covariance = results.iter().all(|r| r.1);
    let unipotent = results.iter().all(|r| r.2);
    let corner_nonzero = results.iter().any(|r| r.3);
    Ok(JmReport {
        p,
        k,
        genus,
        trials,
        dims: jm.dims(),
        homomorphism,
        covariance,
        unipotent,
        factorization,
        corner_nonzero,
        pass: homomorphism && covariance && unipotent && factorization,
    })
}
