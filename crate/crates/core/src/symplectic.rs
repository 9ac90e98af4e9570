//! Homology action of Dehn twists: transvections in `Sp(2g, ℤ)` and the
//! induced action on `∧*H₁`.
//!
//! The symplectic form is `⟨a_i, b_i⟩ = +1`, `⟨b_i, a_i⟩ = -1`, all other
//! pairings of basis vectors zero. A twist about `c` acts by
//! `x ↦ x + ⟨x, c⟩ c`; at genus 1 the twist about `a₁` has matrix
//! `[[1, -1], [0, 1]]` (columns are images of `a₁`, `b₁`).

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{blades_of_degree, check_genus, Blade, MultiVector};
use crate::linalg::IntMatrix;
use crate::ring::ScalarRing;

/// `⟨x, y⟩` for vectors in the `a₁, b₁, …` ordering.
pub fn symplectic_pairing(x: &[i128], y: &[i128]) -> i128 {
    x.chunks(2).zip(y.chunks(2)).map(|(u, v)| u[0] * v[1] - u[1] * v[0]).sum()
}

pub fn standard_form(genus: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        j.set(2 * i, 2 * i + 1, 1);
        j.set(2 * i + 1, 2 * i, -1);
    }
    j
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpMatrix {
    genus: usize,
    m: IntMatrix,
}

impl SpMatrix {
    pub fn identity(genus: usize) -> Self {
        Self { genus, m: IntMatrix::identity(2 * genus) }
    }

    /// Checks `MᵀJM = J`.
    pub fn new(genus: usize, m: IntMatrix) -> Result<Self> {
        if m.rows() != 2 * genus || m.cols() != 2 * genus {
            return Err(Error::Dimension(format!("expected {0}x{0} matrix", 2 * genus)));
        }
        let j = standard_form(genus);
        if m.transpose().mul(&j).mul(&m) != j {
            return Err(Error::InvalidArgument("matrix is not symplectic".into()));
        }
        Ok(Self { genus, m })
    }

    fn new_unchecked(genus: usize, m: IntMatrix) -> Self {
        debug_assert!(Self::new(genus, m.clone()).is_ok(), "constructed matrix lost the symplectic invariant");
        Self { genus, m }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn trace(&self) -> i128 {
        self.m.trace()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(Self::new_unchecked(self.genus, self.m.mul(&other.m)))
    }

    /// `M⁻¹ = -J Mᵀ J`.
    pub fn inverse(&self) -> Self {
        let j = standard_form(self.genus);
        let inv = j.mul(&self.m.transpose()).mul(&j);
        let neg = IntMatrix::zeros(inv.rows(), inv.cols()).sub(&inv);
        Self::new_unchecked(self.genus, neg)
    }

    pub fn apply(&self, v: &[i128]) -> Vec<i128> {
        self.m.mul_vec(v)
    }

    /// Image of a degree-one generator slot as a multivector.
    fn column_vector(&self, slot: usize, ring: ScalarRing) -> MultiVector {
        MultiVector::from_terms(
            self.genus,
            ring,
            (0..2 * self.genus).map(|r| (Blade(1 << r), self.m.get(r, slot))),
        )
    }

    /// `∧φ` applied to an arbitrary multivector.
    pub fn apply_exterior(&self, v: &MultiVector) -> Result<MultiVector> {
        if v.genus() != self.genus {
            return Err(Error::GenusMismatch(v.genus(), self.genus));
        }
        let cols: Vec<MultiVector> = (0..2 * self.genus).map(|s| self.column_vector(s, v.ring())).collect();
        let mut out = MultiVector::zero(self.genus, v.ring());
        for (blade, c) in v.terms() {
            let mut img = MultiVector::one(self.genus, v.ring());
            for s in blade.slots() {
                img = img.wedge(&cols[s])?;
            }
            out = out.add(&img.scale(c))?;
        }
        Ok(out)
    }
}

impl fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// `x ↦ x + n⟨x, c⟩c`, the `n`-th power of the twist about `c`.
pub fn transvection_power(c: &[i128], n: i64) -> Result<SpMatrix> {
    if c.is_empty() || c.len() % 2 != 0 {
        return Err(Error::Dimension(format!("curve vector of odd or zero length {}", c.len())));
    }
    let genus = c.len() / 2;
    check_genus(genus)?;
    let dim = 2 * genus;
    let mut m = IntMatrix::identity(dim);
    for j in 0..dim {
        let mut e = vec![0; dim];
        e[j] = 1;
        let k = n as i128 * symplectic_pairing(&e, c);
        for i in 0..dim {
            m.set(i, j, m.get(i, j) + k * c[i]);
        }
    }
    Ok(SpMatrix::new_unchecked(genus, m))
}

pub fn transvection(c: &[i128]) -> Result<SpMatrix> {
    transvection_power(c, 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Twist {
    pub curve: Vec<i128>,
    pub exp: i64,
}

/// Word in Dehn twists; evaluates to `T₁^{e₁} · T₂^{e₂} ⋯` (leftmost factor
/// applied last).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistWord {
    genus: usize,
    twists: Vec<Twist>,
}

impl TwistWord {
    pub fn new(genus: usize, twists: Vec<Twist>) -> Result<Self> {
        check_genus(genus)?;
        for t in &twists {
            if t.curve.len() != 2 * genus {
                return Err(Error::Dimension(format!("curve of length {} in genus {genus}", t.curve.len())));
            }
            if t.curve.iter().all(|&v| v == 0) {
                return Err(Error::InvalidArgument("twist curve must be nonzero".into()));
            }
        }
        Ok(Self { genus, twists })
    }

    pub fn empty(genus: usize) -> Self {
        Self { genus, twists: Vec::new() }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn twists(&self) -> &[Twist] {
        &self.twists
    }

    pub fn inverse(&self) -> Self {
        let twists = self.twists.iter().rev().map(|t| Twist { curve: t.curve.clone(), exp: -t.exp }).collect();
        Self { genus: self.genus, twists }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Ok(Self { genus: self.genus, twists: self.twists.iter().chain(&other.twists).cloned().collect() })
    }

    pub fn to_sp(&self) -> Result<SpMatrix> {
        self.twists.iter().try_fold(SpMatrix::identity(self.genus), |acc, t| acc.mul(&transvection_power(&t.curve, t.exp)?))
    }

    /// Text format: one `curve = [c1,...,c2g], exp = n` per line; `#` starts a
    /// comment; blank lines and `key: value` metadata lines are ignored. An
    /// optional `genus = g` line fixes the genus of an empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut genus = None;
        let mut twists = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}: `{raw}`", lineno + 1));
            if let Some(rest) = line.strip_prefix("genus") {
                let rest = rest.trim_start_matches([' ', '=', ':']).trim();
                genus = Some(rest.parse::<usize>().map_err(|_| err("bad genus"))?);
                continue;
            }
            if !line.starts_with("curve") {
                if line.contains(':') {
                    continue;
                }
                return Err(err("expected `curve = [...], exp = n`"));
            }
            let open = line.find('[').ok_or_else(|| err("missing `[`"))?;
            let close = line.find(']').ok_or_else(|| err("missing `]`"))?;
            let curve: Vec<i128> = line[open + 1..close]
                .split(',')
                .map(|s| s.trim().parse::<i128>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| err("bad curve entry"))?;
            let tail = &line[close + 1..];
            let exp_pos = tail.find("exp").ok_or_else(|| err("missing `exp`"))?;
            let exp: i64 = tail[exp_pos + 3..]
                .trim_start_matches([' ', '='])
                .trim()
                .parse()
                .map_err(|_| err("bad exponent"))?;
            twists.push(Twist { curve, exp });
        }
        let g = match (genus, twists.first()) {
            (Some(g), _) => g,
            (None, Some(t)) => t.curve.len() / 2,
            (None, None) => return Err(Error::Parse("empty word without `genus = g`".into())),
        };
        Self::new(g, twists)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("genus = {}\n", self.genus);
        for t in &self.twists {
            let c: Vec<String> = t.curve.iter().map(|v| v.to_string()).collect();
            s.push_str(&format!("curve = [{}], exp = {}\n", c.join(","), t.exp));
        }
        s
    }

    /// Random word with curve entries in `{-1, 0, 1}` and exponents in
    /// `{±1, ±2}`.
    pub fn random<R: Rng>(genus: usize, len: usize, rng: &mut R) -> Self {
        let twists = (0..len)
            .map(|_| {
                let curve = loop {
                    let c: Vec<i128> = (0..2 * genus).map(|_| rng.gen_range(-1..=1)).collect();
                    if c.iter().any(|&v| v != 0) {
                        break c;
                    }
                };
                let exp = [-2, -1, 1, 2][rng.gen_range(0..4)];
                Twist { curve, exp }
            })
            .collect();
        Self { genus, twists }
    }
}

/// Matrix of `∧^j φ` in the blade basis of `∧^j` (see [`blades_of_degree`]).
pub fn induced_exterior(m: &SpMatrix, j: usize) -> Result<IntMatrix> {
    let g = m.genus();
    if j > 2 * g {
        return Err(Error::DegreeOutOfRange { degree: j, genus: g });
    }
    let basis = blades_of_degree(g, j);
    let index: std::collections::HashMap<Blade, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut out = IntMatrix::zeros(basis.len(), basis.len());
    for (col, &b) in basis.iter().enumerate() {
        let img = m.apply_exterior(&MultiVector::from_blade(g, ScalarRing::Integer, b, 1))?;
        for (blade, c) in img.terms() {
            out.set(index[&blade], col, c);
        }
    }
    Ok(out)
}

/// `tr ∧^j φ` as the sum of the principal `j×j` minors.
pub fn exterior_trace(m: &SpMatrix, j: usize) -> Result<i128> {
    let g = m.genus();
    if j > 2 * g {
        return Err(Error::DegreeOutOfRange { degree: j, genus: g });
    }
    Ok(blades_of_degree(g, j)
        .into_iter()
        .map(|b| {
            let idx: Vec<usize> = b.slots().collect();
            m.matrix().submatrix(&idx, &idx).determinant()
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn transvection_about_a1() {
        let t = transvection(&[1, 0]).unwrap();
        assert_eq!(t.matrix().to_rows(), vec![vec![1, -1], vec![0, 1]]);
        let t = transvection(&[0, 0, 0, 0]).unwrap();
        assert_eq!(t, SpMatrix::identity(2));
    }

    #[test]
    fn transvection_fixes_its_curve() {
        let c = vec![1, -2, 0, 3, 1, 1];
        assert_eq!(transvection(&c).unwrap().apply(&c), c);
    }

    #[test]
    fn trefoil_monodromy_has_trace_one() {
        let w = TwistWord::parse("curve = [1,0], exp = 1\ncurve = [0,1], exp = 1\n").unwrap();
        let m = w.to_sp().unwrap();
        assert_eq!(m.trace(), 1);
        assert_eq!(m.matrix().to_rows(), vec![vec![0, -1], vec![1, 1]]);
    }

    #[test]
    fn word_times_inverse_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in 1..=3 {
            let w = TwistWord::random(g, 6, &mut rng);
            let id = w.concat(&w.inverse()).unwrap().to_sp().unwrap();
            assert_eq!(id, SpMatrix::identity(g));
            let m = w.to_sp().unwrap();
            assert_eq!(m.mul(&m.inverse()).unwrap(), SpMatrix::identity(g));
        }
        assert_eq!(TwistWord::empty(2).to_sp().unwrap(), SpMatrix::identity(2));
    }

    #[test]
    fn induced_exterior_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = TwistWord::random(2, 5, &mut rng).to_sp().unwrap();
        assert_eq!(induced_exterior(&SpMatrix::identity(2), 2).unwrap(), IntMatrix::identity(6));
        assert_eq!(induced_exterior(&m, 4).unwrap().to_rows(), vec![vec![1]]);
        assert_eq!(induced_exterior(&m, 1).unwrap().trace(), m.trace());
        for j in 0..=4 {
            assert_eq!(induced_exterior(&m, j).unwrap().trace(), exterior_trace(&m, j).unwrap());
        }
        assert!(matches!(induced_exterior(&m, 5), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(TwistWord::parse("curve = [1,0,1], exp = 1").is_err());
        assert!(TwistWord::parse("curve = [0,0], exp = 1").is_err());
        assert!(SpMatrix::new(1, IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]])).is_err());
        let w = TwistWord::parse("genus = 2\n").unwrap();
        assert_eq!(w.genus(), 2);
    }

    #[test]
    fn text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = TwistWord::random(3, 4, &mut rng);
        assert_eq!(TwistWord::parse(&w.to_text()).unwrap(), w);
    }
}
