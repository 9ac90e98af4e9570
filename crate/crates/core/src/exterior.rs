//! Exterior algebra `∧*H₁(Σ_g)` with the Lefschetz operators.
//!
//! Generators are stored as bit slots in the fixed order
//! `a₁ < b₁ < a₂ < b₂ < … < a_g < b_g`: `a_i` is slot `2(i-1)`, `b_i` is slot
//! `2(i-1)+1`. A blade lists its generators in ascending slot order, which fixes
//! every Koszul sign.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{RingElement, ScalarRing};

pub const MAX_GENUS: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Blade(pub u32);

impl Blade {
    pub const ONE: Blade = Blade(0);

    pub fn a(i: usize) -> Blade {
        Blade(1 << (2 * (i - 1)))
    }

    pub fn b(i: usize) -> Blade {
        Blade(1 << (2 * (i - 1) + 1))
    }

    /// `a_i ∧ b_i`.
    pub fn handle(i: usize) -> Blade {
        Blade(0b11 << (2 * (i - 1)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn slots(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |s| self.0 >> s & 1 == 1)
    }

    /// `self ∧ other` as `(sign, blade)`, or `None` when a generator repeats.
    pub fn wedge(self, other: Blade) -> Option<(i8, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for y in other.slots() {
            inversions += (self.0 >> (y + 1)).count_ones();
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Blade(self.0 | other.0)))
    }

    /// Per-handle content: `+1` for `a_i` alone, `-1` for `b_i` alone, `0` otherwise.
    pub fn weight(self, genus: usize) -> Vec<i8> {
        (0..genus)
            .map(|i| match (self.0 >> (2 * i)) & 0b11 {
                0b01 => 1,
                0b10 => -1,
                _ => 0,
            })
            .collect()
    }

    pub fn fits_genus(self, genus: usize) -> bool {
        genus >= 16 || self.0 >> (2 * genus) == 0
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for s in self.slots() {
            let kind = if s % 2 == 0 { 'a' } else { 'b' };
            write!(f, "{kind}{}", s / 2 + 1)?;
        }
        Ok(())
    }
}

/// All blades of the given degree in increasing mask order: the standard basis
/// of `∧^degree H₁(Σ_genus)`.
pub fn blades_of_degree(genus: usize, degree: usize) -> Vec<Blade> {
    let n = 2 * genus;
    if degree > n {
        return Vec::new();
    }
    if degree == 0 {
        return vec![Blade::ONE];
    }
    let mut out = Vec::new();
    let mut v: u64 = (1u64 << degree) - 1;
    while v < (1u64 << n) {
        out.push(Blade(v as u32));
        // Gosper's hack: next integer with the same popcount
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

pub(crate) fn check_genus(genus: usize) -> Result<()> {
    if genus > MAX_GENUS {
        Err(Error::GenusTooLarge(genus))
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiVector {
    genus: usize,
    ring: ScalarRing,
    terms: BTreeMap<Blade, i128>,
}

impl MultiVector {
    pub fn zero(genus: usize, ring: ScalarRing) -> Self {
        Self { genus, ring, terms: BTreeMap::new() }
    }

    pub fn one(genus: usize, ring: ScalarRing) -> Self {
        Self::from_blade(genus, ring, Blade::ONE, 1)
    }

    pub fn from_blade(genus: usize, ring: ScalarRing, blade: Blade, coeff: i128) -> Self {
        let mut v = Self::zero(genus, ring);
        v.add_term(blade, coeff);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (Blade, i128)>>(genus: usize, ring: ScalarRing, it: I) -> Self {
        let mut v = Self::zero(genus, ring);
        for (b, c) in it {
            v.add_term(b, c);
        }
        v
    }

    /// The symplectic form `ω = Σ a_i ∧ b_i`.
    pub fn omega(genus: usize, ring: ScalarRing) -> Self {
        Self::from_terms(genus, ring, (1..=genus).map(|i| (Blade::handle(i), 1)))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn add_term(&mut self, blade: Blade, coeff: i128) {
        debug_assert!(blade.fits_genus(self.genus), "blade {blade} outside genus {}", self.genus);
        let c = self.ring.normalize(coeff);
        if c == 0 {
            return;
        }
        let e = self.terms.entry(blade).or_insert(0);
        *e = self.ring.normalize(*e + c);
        if *e == 0 {
            self.terms.remove(&blade);
        }
    }

    pub fn coeff(&self, blade: Blade) -> i128 {
        self.terms.get(&blade).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, i128)> + '_ {
        self.terms.iter().map(|(&b, &c)| (b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|b| b.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i128) -> Self {
        Self::from_terms(self.genus, self.ring, self.terms().map(|(b, v)| (b, v * c)))
    }

    /// Reduction of an integral vector mod `p`.
    pub fn reduce_mod(&self, p: u32) -> Self {
        Self::from_terms(self.genus, ScalarRing::ModP(p), self.terms())
    }

    /// Same coefficients read in `ring` (a no-op for `ℤ`).
    pub fn reduce_ring(&self, ring: ScalarRing) -> Self {
        match ring {
            ScalarRing::Integer => self.clone(),
            ScalarRing::ModP(p) => self.reduce_mod(p),
        }
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.genus, self.ring);
        for (b1, c1) in self.terms() {
            for (b2, c2) in other.terms() {
                if let Some((s, b)) = b1.wedge(b2) {
                    out.add_term(b, s as i128 * c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// `E x = x ∧ ω`. The handle pair `a_i b_i` occupies adjacent slots and has
    /// even degree, so every surviving term comes with sign `+1`.
    pub fn op_e(&self) -> Self {
        let mut out = Self::zero(self.genus, self.ring);
        for (b, c) in self.terms() {
            for i in 1..=self.genus {
                let h = Blade::handle(i);
                if b.0 & h.0 == 0 {
                    out.add_term(Blade(b.0 | h.0), c);
                }
            }
        }
        out
    }

    /// `F = E*`: removes one complete handle `a_i b_i`, sign `+1`.
    pub fn op_f(&self) -> Self {
        let mut out = Self::zero(self.genus, self.ring);
        for (b, c) in self.terms() {
            for i in 1..=self.genus {
                let h = Blade::handle(i);
                if b.0 & h.0 == h.0 {
                    out.add_term(Blade(b.0 & !h.0), c);
                }
            }
        }
        out
    }

    /// `H x = (deg x - g) x` on homogeneous components.
    pub fn op_h(&self) -> Self {
        let g = self.genus as i128;
        Self::from_terms(self.genus, self.ring, self.terms().map(|(b, c)| (b, (b.degree() as i128 - g) * c)))
    }

    /// Inner product with orthonormal blades.
    pub fn inner_product(&self, other: &Self) -> Result<RingElement> {
        self.compatible(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let s: i128 = small.terms().map(|(b, c)| c * large.coeff(b)).sum();
        Ok(self.ring.element(s))
    }

    /// Integer-valued inner product (same as [`Self::inner_product`] for the scalar rings).
    pub fn dot(&self, other: &Self) -> i128 {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        self.ring.normalize(small.terms().map(|(b, c)| c * large.coeff(b)).sum())
    }

    /// Coordinates in the blade basis of `∧^degree`.
    pub fn to_dense(&self, degree: usize) -> Vec<i128> {
        blades_of_degree(self.genus, degree).into_iter().map(|b| self.coeff(b)).collect()
    }
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(b, c)| if c == 1 { format!("{b}") } else { format!("{c}*{b}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: ScalarRing = ScalarRing::Integer;

    fn gen_a(g: usize, i: usize) -> MultiVector {
        MultiVector::from_blade(g, Z, Blade::a(i), 1)
    }

    fn gen_b(g: usize, i: usize) -> MultiVector {
        MultiVector::from_blade(g, Z, Blade::b(i), 1)
    }

    #[test]
    fn blade_wedge_signs() {
        assert_eq!(Blade::a(1).wedge(Blade::b(1)), Some((1, Blade::handle(1))));
        assert_eq!(Blade::b(1).wedge(Blade::a(1)), Some((-1, Blade::handle(1))));
        assert_eq!(Blade::a(1).wedge(Blade::a(1)), None);
    }

    #[test]
    fn omega_squared_genus_two() {
        let w = MultiVector::omega(2, Z);
        let w2 = w.wedge(&w).unwrap();
        assert_eq!(w2, MultiVector::from_blade(2, Z, Blade(0b1111), 2));
    }

    #[test]
    fn four_term_expansion() {
        let u = gen_a(2, 1).add(&gen_a(2, 2)).unwrap();
        let v = gen_b(2, 1).add(&gen_b(2, 2)).unwrap();
        let p = u.wedge(&v).unwrap();
        // a2 ∧ b1 = -(b1 a2) in slot order
        let expected = MultiVector::from_terms(
            2,
            Z,
            [
                (Blade::handle(1), 1),
                (Blade(Blade::a(1).0 | Blade::b(2).0), 1),
                (Blade(Blade::a(2).0 | Blade::b(1).0), -1),
                (Blade::handle(2), 1),
            ],
        );
        assert_eq!(p, expected);
        let one = MultiVector::one(2, Z);
        assert_eq!(one.wedge(&p).unwrap(), p);
    }

    #[test]
    fn lefschetz_operators_on_examples() {
        let e1 = MultiVector::one(3, Z).op_e();
        assert_eq!(e1, MultiVector::omega(3, Z));
        let top = MultiVector::from_blade(2, Z, Blade(0b1111), 1);
        assert!(top.op_e().is_zero());
        let h1 = MultiVector::from_blade(2, Z, Blade::handle(1), 1);
        assert_eq!(h1.op_e(), top);
        for g in 1..=6 {
            assert_eq!(MultiVector::omega(g, Z).op_f(), MultiVector::one(g, Z).scale(g as i128));
        }
        assert!(MultiVector::one(3, Z).op_f().is_zero());
        let v = MultiVector::omega(5, Z).sub(&h1_in(5).scale(5)).unwrap();
        assert!(v.op_f().is_zero());
        assert_eq!(MultiVector::one(3, Z).op_h(), MultiVector::one(3, Z).scale(-3));
        assert_eq!(top.op_h(), top.scale(2));
        let mid = MultiVector::from_blade(2, Z, Blade(0b0110), 1);
        assert!(mid.op_h().is_zero());
    }

    fn h1_in(g: usize) -> MultiVector {
        MultiVector::from_blade(g, Z, Blade::handle(1), 1)
    }

    #[test]
    fn inner_products() {
        let w = MultiVector::omega(4, Z);
        assert_eq!(w.inner_product(&w).unwrap(), RingElement::Integer(4));
        let one = MultiVector::one(4, Z);
        assert_eq!(one.inner_product(&one).unwrap(), RingElement::Integer(1));
        assert_eq!(gen_a(4, 1).inner_product(&gen_b(4, 1)).unwrap(), RingElement::Integer(0));
        let other = MultiVector::one(3, Z);
        assert!(matches!(one.inner_product(&other), Err(Error::GenusMismatch(4, 3))));
        let modp = MultiVector::one(4, ScalarRing::ModP(5));
        assert!(matches!(one.wedge(&modp), Err(Error::RingMismatch(..))));
    }

    #[test]
    fn f_is_adjoint_of_e() {
        let g = 3;
        for d in 0..2 * g - 1 {
            for &u in &blades_of_degree(g, d) {
                for &v in &blades_of_degree(g, d + 2) {
                    let u = MultiVector::from_blade(g, Z, u, 1);
                    let v = MultiVector::from_blade(g, Z, v, 1);
                    assert_eq!(u.op_e().dot(&v), u.dot(&v.op_f()));
                }
            }
        }
    }

    #[test]
    fn basis_enumeration() {
        assert_eq!(blades_of_degree(2, 2).len(), 6);
        assert_eq!(blades_of_degree(3, 0), vec![Blade::ONE]);
        assert_eq!(blades_of_degree(8, 8).len(), 12870);
        let b = blades_of_degree(3, 3);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn display() {
        assert_eq!(Blade(0b1011).to_string(), "a1b1b2");
        assert_eq!(Blade::ONE.to_string(), "1");
    }
}
