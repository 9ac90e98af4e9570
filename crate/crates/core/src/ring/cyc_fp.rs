use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::laurent::LaurentPoly;

/// Element of `F_p[ζ_p] ≅ F_p[y]/(y^{p-1})` with `ζ_p = 1 + y`.
///
/// The isomorphism holds because `Φ_p(1 + y) ≡ y^{p-1} (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CycFp {
    p: u32,
    coeffs: Vec<u32>,
}

impl CycFp {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 3, "CycFp needs an odd prime, got {p}");
        Self { p, coeffs: vec![0; (p - 1) as usize] }
    }

    pub fn from_int(p: u32, c: i128) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = c.rem_euclid(p as i128) as u32;
        z
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    pub fn y(p: u32) -> Self {
        let mut z = Self::zero(p);
        if z.coeffs.len() > 1 {
            z.coeffs[1] = 1;
        }
        z
    }

    pub fn zeta(p: u32) -> Self {
        &Self::one(p) + &Self::y(p)
    }

    pub fn from_coeffs(p: u32, cs: &[i128]) -> Self {
        let mut z = Self::zero(p);
        for (i, &c) in cs.iter().enumerate().take(z.coeffs.len()) {
            z.coeffs[i] = c.rem_euclid(p as i128) as u32;
        }
        z
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// The `p - 1` coefficients of `1, y, …, y^{p-2}`.
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, c: i128) -> Self {
        let c = c.rem_euclid(self.p as i128) as u64;
        let p = self.p as u64;
        Self { p: self.p, coeffs: self.coeffs.iter().map(|&a| ((a as u64 * c) % p) as u32).collect() }
    }

    /// Units are exactly the elements with nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let p = self.p as u64;
        let c0 = self.coeffs[0] as u64;
        if c0 == 0 {
            return None;
        }
        let c0_inv = pow_mod(c0, p - 2, p);
        // self = c0 (1 - n) with n nilpotent; 1/(1-n) = sum n^i.
        let unit = self.scale(c0_inv as i128);
        let n = &Self::one(self.p) - &unit;
        let mut acc = Self::one(self.p);
        let mut power = Self::one(self.p);
        for _ in 1..self.coeffs.len() {
            power = &power * &n;
            acc = &acc + &power;
        }
        Some(acc.scale(c0_inv as i128))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.p);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Image of a Laurent polynomial under `t ↦ u` for a unit `u`.
    pub fn eval_laurent(poly: &LaurentPoly, u: &CycFp) -> Self {
        let mut acc = Self::zero(u.p);
        for (e, c) in poly.terms() {
            let term = u.pow(e as i64).expect("evaluation point must be a unit");
            acc = &acc + &term.scale(c);
        }
        acc
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Add for &CycFp {
    type Output = CycFp;
    fn add(self, rhs: &CycFp) -> CycFp {
        assert_eq!(self.p, rhs.p, "CycFp prime mismatch");
        let p = self.p;
        CycFp { p, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(&a, &b)| (a + b) % p).collect() }
    }
}

impl Sub for &CycFp {
    type Output = CycFp;
    fn sub(self, rhs: &CycFp) -> CycFp {
        self + &(-rhs)
    }
}

impl Neg for &CycFp {
    type Output = CycFp;
    fn neg(self) -> CycFp {
        let p = self.p;
        CycFp { p, coeffs: self.coeffs.iter().map(|&a| (p - a) % p).collect() }
    }
}

impl Mul for &CycFp {
    type Output = CycFp;
    fn mul(self, rhs: &CycFp) -> CycFp {
        assert_eq!(self.p, rhs.p, "CycFp prime mismatch");
        let n = self.coeffs.len();
        let p = self.p as u64;
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        CycFp { p: self.p, coeffs: out.into_iter().map(|c| c as u32).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_is_a_pth_root_of_unity() {
        for p in [3, 5, 7, 11, 13] {
            let z = CycFp::zeta(p);
            assert_eq!(z.pow(p as i64).unwrap(), CycFp::one(p));
            assert_ne!(z.pow(1).unwrap(), CycFp::one(p));
            // Φ_p(ζ) = 0
            let mut phi = CycFp::zero(p);
            for i in 0..p {
                phi = &phi + &z.pow(i as i64).unwrap();
            }
            assert!(phi.is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = CycFp::from_coeffs(7, &[3, 1, 4, 1, 5, 2]);
        let b = a.inverse().unwrap();
        assert_eq!(&a * &b, CycFp::one(7));
        assert!(CycFp::y(7).inverse().is_none());
    }
}
