use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::Serialize;

use super::cyc5::Cyc5;
use crate::linalg::rational;

/// Element of `ℤ[A]/Φ₂₀(A)` in the basis `1, A, …, A⁷`, where
/// `Φ₂₀(A) = A⁸ - A⁶ + A⁴ - A² + 1`. `A` is a primitive 20th root of unity and
/// `A⁴ = ζ₅`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Cyc20(pub [i128; 8]);

impl Cyc20 {
    pub const ZERO: Cyc20 = Cyc20([0; 8]);
    pub const ONE: Cyc20 = Cyc20([1, 0, 0, 0, 0, 0, 0, 0]);

    pub fn from_int(c: i128) -> Self {
        let mut a = [0; 8];
        a[0] = c;
        Cyc20(a)
    }

    /// `A^k` for any integer `k`.
    pub fn a_pow(k: i64) -> Self {
        let mut t = [0i128; 20];
        t[k.rem_euclid(20) as usize] = 1;
        Self::reduce(&mut t)
    }

    fn reduce(t: &mut [i128]) -> Self {
        for k in (8..t.len()).rev() {
            let c = t[k];
            if c != 0 {
                t[k] = 0;
                t[k - 2] += c;
                t[k - 4] -= c;
                t[k - 6] += c;
                t[k - 8] -= c;
            }
        }
        Cyc20(std::array::from_fn(|i| t[i]))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 8]
    }

    pub fn scale(self, c: i128) -> Self {
        Cyc20(self.0.map(|v| v * c))
    }

    pub fn pow(self, n: u32) -> Self {
        (0..n).fold(Self::ONE, |acc, _| acc * self)
    }

    /// Loop value `δ = -A² - A⁻²`.
    pub fn delta() -> Self {
        -(Self::a_pow(2) + Self::a_pow(-2))
    }

    fn mult_matrix(&self) -> Vec<Vec<i128>> {
        let cols: Vec<Cyc20> = (0..8).map(|j| *self * Self::a_pow(j)).collect();
        (0..8).map(|i| cols.iter().map(|c| c.0[i]).collect()).collect()
    }

    pub fn div_exact(&self, d: &Cyc20) -> Option<Cyc20> {
        if d.is_zero() {
            return None;
        }
        let q = rational::solve_integral(&d.mult_matrix(), &self.0)?;
        Some(Cyc20(std::array::from_fn(|i| q[i])))
    }

    pub fn inverse(&self) -> Option<Cyc20> {
        Self::ONE.div_exact(self)
    }

    /// Coercion into the subring `ℤ[A²] = ℤ[ζ₅]`; fails if an odd power of
    /// `A` survives. Uses `A² = -ζ₅³`.
    pub fn to_cyc5(&self) -> Option<Cyc5> {
        if self.0.iter().skip(1).step_by(2).any(|&c| c != 0) {
            return None;
        }
        let a2 = -Cyc5::zeta_pow(3);
        let mut acc = Cyc5::ZERO;
        let mut power = Cyc5::ONE;
        for i in 0..4 {
            acc = acc + power.scale(self.0[2 * i]);
            power = power * a2;
        }
        Some(acc)
    }

    pub fn from_cyc5(z: &Cyc5) -> Self {
        (0..4).fold(Self::ZERO, |acc, j| acc + Self::a_pow(4 * j as i64).scale(z.0[j]))
    }
}

impl Add for Cyc20 {
    type Output = Cyc20;
    fn add(self, r: Cyc20) -> Cyc20 {
        Cyc20(std::array::from_fn(|i| self.0[i] + r.0[i]))
    }
}

impl AddAssign for Cyc20 {
    fn add_assign(&mut self, r: Cyc20) {
        for i in 0..8 {
            self.0[i] += r.0[i];
        }
    }
}

impl Sub for Cyc20 {
    type Output = Cyc20;
    fn sub(self, r: Cyc20) -> Cyc20 {
        Cyc20(std::array::from_fn(|i| self.0[i] - r.0[i]))
    }
}

impl Neg for Cyc20 {
    type Output = Cyc20;
    fn neg(self) -> Cyc20 {
        self.scale(-1)
    }
}

impl Mul for Cyc20 {
    type Output = Cyc20;
    fn mul(self, r: Cyc20) -> Cyc20 {
        let mut t = [0i128; 15];
        for i in 0..8 {
            if self.0[i] == 0 {
                continue;
            }
            for j in 0..8 {
                t[i + j] += self.0[i] * r.0[j];
            }
        }
        Self::reduce(&mut t)
    }
}
