//! Size limits for the expensive computations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::MAX_GENUS;

/// Default bound on the sweep frontier (strands cut by a slice).
pub const DEFAULT_STRANDS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub genus: usize,
    pub strands: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self { genus: MAX_GENUS, strands: DEFAULT_STRANDS }
    }
}

impl Limits {
    /// Parses `genus=G,strands=S`; either key may be omitted.
    pub fn parse(s: &str) -> Result<Self> {
        let mut l = Self::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("limit `{part}` is not key=value")))?;
            let v: usize = v.trim().parse().map_err(|_| Error::Parse(format!("limit value `{v}`")))?;
            match k.trim() {
                "genus" => l.genus = v,
                "strands" => l.strands = v,
                other => return Err(Error::Parse(format!("unknown limit `{other}`"))),
            }
        }
        if l.genus > MAX_GENUS {
            return Err(Error::GenusTooLarge(l.genus));
        }
        Ok(l)
    }

    pub fn check_genus(&self, g: usize) -> Result<()> {
        if g > self.genus {
            return Err(Error::LimitExceeded(format!("genus {g} exceeds the limit {}", self.genus)));
        }
        Ok(())
    }
}
