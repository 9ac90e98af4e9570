use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::cyc_fp::CycFp;
use crate::linalg::rational;

/// Element of `ℤ[ζ₅]` in the basis `1, ζ, ζ², ζ³` (with `ζ⁴ = -1 - ζ - ζ² - ζ³`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Cyc5(pub [i128; 4]);

impl Cyc5 {
    pub const ZERO: Cyc5 = Cyc5([0; 4]);
    pub const ONE: Cyc5 = Cyc5([1, 0, 0, 0]);

    pub fn from_int(c: i128) -> Self {
        Cyc5([c, 0, 0, 0])
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let mut t = [0i128; 7];
        t[k.rem_euclid(5) as usize] = 1;
        Self::reduce(t)
    }

    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// `ζ - 1`, the generator of the unique prime above 5.
    pub fn pi() -> Self {
        Cyc5([-1, 1, 0, 0])
    }

    /// `x = ζ - ζ^{-1}`.
    pub fn x() -> Self {
        Self::zeta() - Self::zeta_pow(-1)
    }

    fn reduce(mut t: [i128; 7]) -> Self {
        for k in (4..7).rev() {
            let c = t[k];
            if c != 0 {
                t[k] = 0;
                for j in 1..=4 {
                    t[k - j] -= c;
                }
            }
        }
        Cyc5([t[0], t[1], t[2], t[3]])
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn scale(self, c: i128) -> Self {
        Cyc5(self.0.map(|v| v * c))
    }

    pub fn pow(self, n: u32) -> Self {
        (0..n).fold(Self::ONE, |acc, _| acc * self)
    }

    /// Columns are `self · ζ^j`.
    fn mult_matrix(&self) -> Vec<Vec<i128>> {
        let cols: Vec<Cyc5> = (0..4).map(|j| *self * Self::zeta_pow(j)).collect();
        (0..4).map(|i| cols.iter().map(|c| c.0[i]).collect()).collect()
    }

    /// `self / d` if the quotient lies in `ℤ[ζ₅]`.
    pub fn div_exact(&self, d: &Cyc5) -> Option<Cyc5> {
        if d.is_zero() {
            return None;
        }
        let q = rational::solve_integral(&d.mult_matrix(), &self.0)?;
        Some(Cyc5([q[0], q[1], q[2], q[3]]))
    }

    /// Residue in `ℤ[ζ₅]/(ζ - 1) = F₅`.
    pub fn residue(&self) -> u32 {
        self.0.iter().sum::<i128>().rem_euclid(5) as u32
    }

    /// `(ζ - 1)`-adic valuation; `None` stands for `+∞` (the zero element).
    pub fn valuation(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut cur = *self;
        while cur.residue() == 0 {
            cur = cur.div_exact(&Self::pi()).expect("residue 0 implies divisibility by ζ-1");
            v += 1;
        }
        Some(v)
    }

    /// Reduction `ℤ[ζ₅] → F₅[y]/y⁴` with `ζ ↦ 1 + y`.
    pub fn to_cyc_fp(&self) -> CycFp {
        let z = CycFp::zeta(5);
        let mut acc = CycFp::zero(5);
        let mut power = CycFp::one(5);
        for &c in &self.0 {
            acc = &acc + &power.scale(c);
            power = &power * &z;
        }
        acc
    }

    /// Complex embedding with `ζ = exp(2πi/5)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &c) in self.0.iter().enumerate() {
            let a = 2.0 * std::f64::consts::PI * j as f64 / 5.0;
            re += c as f64 * a.cos();
            im += c as f64 * a.sin();
        }
        (re, im)
    }
}

impl Add for Cyc5 {
    type Output = Cyc5;
    fn add(self, r: Cyc5) -> Cyc5 {
        Cyc5(std::array::from_fn(|i| self.0[i] + r.0[i]))
    }
}

impl Sub for Cyc5 {
    type Output = Cyc5;
    fn sub(self, r: Cyc5) -> Cyc5 {
        Cyc5(std::array::from_fn(|i| self.0[i] - r.0[i]))
    }
}

impl Neg for Cyc5 {
    type Output = Cyc5;
    fn neg(self) -> Cyc5 {
        self.scale(-1)
    }
}

impl Mul for Cyc5 {
    type Output = Cyc5;
    fn mul(self, r: Cyc5) -> Cyc5 {
        let mut t = [0i128; 7];
        for i in 0..4 {
            if self.0[i] == 0 {
                continue;
            }
            for j in 0..4 {
                t[i + j] += self.0[i] * r.0[j];
            }
        }
        Self::reduce(t)
    }
}

impl fmt::Display for Cyc5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| match j {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{j}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
