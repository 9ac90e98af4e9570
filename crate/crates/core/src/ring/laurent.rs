use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer Laurent polynomial in `t`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i128>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: i128) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: i128, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i128)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, c: i128) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(exp).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i128 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: i128) -> Self {
        Self::from_terms(self.terms().map(|(e, v)| (e, v * c)))
    }

    pub fn shift(&self, s: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + s, c)).collect() }
    }

    /// Substitutes `t -> t^{-1}`.
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.invert_variable()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> i128 {
        self.terms.values().sum()
    }

    /// `±t^s · self` centred on exponent zero (lowest exponent `-(span/2)`)
    /// with a positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Self::zero();
        };
        let span = hi - lo;
        let shifted = self.shift(-lo - span / 2);
        if self.coeff(hi) < 0 {
            shifted.scale(-1)
        } else {
            shifted
        }
    }

    /// `[(exponent, coefficient)]` in increasing exponent order.
    pub fn to_pairs(&self) -> Vec<(i32, i128)> {
        self.terms().collect()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{a}*t")?,
                (_, 1) => write!(f, "t^{e}")?,
                _ => write!(f, "{a}*t^{e}")?,
            }
        }
        Ok(())
    }
}
