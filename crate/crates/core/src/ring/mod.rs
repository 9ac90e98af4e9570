//! Exact coefficient rings.

mod cyc20;
mod cyc5;
mod cyc_fp;
mod laurent;

pub use cyc20::Cyc20;
pub use cyc5::Cyc5;
pub use cyc_fp::CycFp;
pub(crate) use cyc_fp::pow_mod;
pub use laurent::LaurentPoly;

use serde::Serialize;

use crate::error::{Error, Result};

/// Run-time tag for the scalar rings a [`crate::exterior::MultiVector`] can carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ScalarRing {
    Integer,
    ModP(u32),
}

impl ScalarRing {
    /// Canonical representative (`[0, p)` for `F_p`).
    pub fn normalize(self, c: i128) -> i128 {
        match self {
            ScalarRing::Integer => c,
            ScalarRing::ModP(p) => c.rem_euclid(p as i128),
        }
    }

    pub fn element(self, c: i128) -> RingElement {
        match self {
            ScalarRing::Integer => RingElement::Integer(c),
            ScalarRing::ModP(p) => RingElement::ModP { value: c.rem_euclid(p as i128) as u32, p },
        }
    }
}

impl std::fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarRing::Integer => write!(f, "Z"),
            ScalarRing::ModP(p) => write!(f, "F_{p}"),
        }
    }
}

/// Tagged exact scalar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RingElement {
    Integer(i128),
    ModP { value: u32, p: u32 },
    Laurent(LaurentPoly),
    CycFp(CycFp),
    Cyc20(Cyc20),
}

impl RingElement {
    fn tag(&self) -> String {
        match self {
            RingElement::Integer(_) => "Z".into(),
            RingElement::ModP { p, .. } => format!("F_{p}"),
            RingElement::Laurent(_) => "Z[t,t^-1]".into(),
            RingElement::CycFp(c) => format!("F_{}[zeta]", c.p()),
            RingElement::Cyc20(_) => "Z[A]/Phi20".into(),
        }
    }

    fn mismatch(&self, other: &Self) -> Error {
        Error::RingMismatch(self.tag(), other.tag())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        use RingElement::*;
        Ok(match (self, other) {
            (Integer(a), Integer(b)) => Integer(a + b),
            (ModP { value: a, p }, ModP { value: b, p: q }) if p == q => ModP { value: (a + b) % p, p: *p },
            (Laurent(a), Laurent(b)) => Laurent(a + b),
            (CycFp(a), CycFp(b)) if a.p() == b.p() => CycFp(a + b),
            (Cyc20(a), Cyc20(b)) => Cyc20(*a + *b),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        use RingElement::*;
        Ok(match (self, other) {
            (Integer(a), Integer(b)) => Integer(a * b),
            (ModP { value: a, p }, ModP { value: b, p: q }) if p == q => {
                ModP { value: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            (Laurent(a), Laurent(b)) => Laurent(a * b),
            (CycFp(a), CycFp(b)) if a.p() == b.p() => CycFp(a * b),
            (Cyc20(a), Cyc20(b)) => Cyc20(*a * *b),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn neg(&self) -> Self {
        use RingElement::*;
        match self {
            Integer(a) => Integer(-a),
            ModP { value, p } => ModP { value: (p - value) % p, p: *p },
            Laurent(a) => Laurent(-a),
            CycFp(a) => CycFp(-a),
            Cyc20(a) => Cyc20(-*a),
        }
    }

    pub fn is_zero(&self) -> bool {
        use RingElement::*;
        match self {
            Integer(a) => *a == 0,
            ModP { value, .. } => *value == 0,
            Laurent(a) => a.is_zero(),
            CycFp(a) => a.is_zero(),
            Cyc20(a) => a.is_zero(),
        }
    }

    /// Integer value for the two scalar kinds.
    pub fn as_integer(&self) -> Option<i128> {
        match self {
            RingElement::Integer(a) => Some(*a),
            RingElement::ModP { value, .. } => Some(*value as i128),
            _ => None,
        }
    }
}
