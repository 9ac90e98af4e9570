//! Built-in inputs: framed surgery diagrams and twist words, each stored as a
//! text file together with the values expected of it.
//!
//! Besides its payload a file carries lines
//! `expect: <quantity> = <value> <TAG> [anchor]` with `TAG` one of the
//! provenance tags listed in [`Provenance`]; the anchor is required for
//! values quoted from the literature.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lefschetz::{fn_alexander, lefschetz_alexander};
use crate::limits::Limits;
use crate::ring::{Cyc5, LaurentPoly};
use crate::skein::{
    homology_from_linking, quantum_order, rt_invariant_5, rt_invariant_5_naive, FramedLinkDiagram, MorseDiagram, MorseOp,
};
use crate::symplectic::{Twist, TwistWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    FramedLink,
    TwistWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    /// Quoted value, with the anchor of the passage it comes from.
    Quoted(String),
    Trivial,
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Quoted(a) => write!(f, "PAPER {a}"),
            Provenance::Trivial => f.write_str("TRIVIAL"),
            Provenance::Derived => f.write_str("DERIVED"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub quantity: String,
    pub value: String,
    pub provenance: Provenance,
}

impl FromStr for Expectation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expectation `{s}`"));
        let (quantity, rest) = s.split_once('=').ok_or_else(bad)?;
        let mut words: Vec<&str> = rest.split_whitespace().collect();
        // the value is everything before the tag
        let tag_at = words.iter().position(|w| matches!(*w, "PAPER" | "TRIVIAL" | "DERIVED")).ok_or_else(bad)?;
        let tail = words.split_off(tag_at);
        if words.is_empty() {
            return Err(bad());
        }
        let provenance = match tail.as_slice() {
            ["PAPER", anchor] => Provenance::Quoted(anchor.to_string()),
            ["TRIVIAL"] => Provenance::Trivial,
            ["DERIVED"] => Provenance::Derived,
            _ => return Err(bad()),
        };
        Ok(Self { quantity: quantity.trim().to_string(), value: words.join(" "), provenance })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: Kind,
    #[serde(skip)]
    pub text: String,
    pub expected: Vec<Expectation>,
}

impl CatalogEntry {
    pub fn parse(name: &str, kind: Kind, text: &str) -> Result<Self> {
        let mut expected = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if let Some(rest) = line.strip_prefix("expect:") {
                expected.push(rest.parse()?);
            }
        }
        let e = Self { name: name.to_string(), kind, text: text.to_string(), expected };
        e.validate()?;
        Ok(e)
    }

    /// Parses and checks the payload.
    pub fn validate(&self) -> Result<()> {
        match self.kind {
            Kind::FramedLink => {
                self.diagram()?;
            }
            Kind::TwistWord => {
                self.word()?.to_sp()?;
            }
        }
        Ok(())
    }

    pub fn diagram(&self) -> Result<FramedLinkDiagram> {
        match self.kind {
            Kind::FramedLink => FramedLinkDiagram::parse(&self.text),
            Kind::TwistWord => Err(Error::InvalidArgument(format!("{} is a twist word", self.name))),
        }
    }

    pub fn word(&self) -> Result<TwistWord> {
        match self.kind {
            Kind::TwistWord => TwistWord::parse(&self.text),
            Kind::FramedLink => Err(Error::InvalidArgument(format!("{} is a framed link", self.name))),
        }
    }

    pub fn expectation(&self, quantity: &str) -> Option<&Expectation> {
        self.expected.iter().find(|e| e.quantity == quantity)
    }
}

macro_rules! shipped {
    ($($name:literal => $kind:expr, $path:literal;)*) => {
        const SHIPPED: &[(&str, Kind, &str)] = &[$(($name, $kind, include_str!(concat!("../catalog/", $path)))),*];
    };
}

shipped! {
    "empty" => Kind::FramedLink, "links/empty.pd";
    "unknot+1" => Kind::FramedLink, "links/unknot+1.pd";
    "unknot-1" => Kind::FramedLink, "links/unknot-1.pd";
    "unknot0" => Kind::FramedLink, "links/unknot0.pd";
    "lens2" => Kind::FramedLink, "links/lens2.pd";
    "lens3" => Kind::FramedLink, "links/lens3.pd";
    "lens4" => Kind::FramedLink, "links/lens4.pd";
    "lens5" => Kind::FramedLink, "links/lens5.pd";
    "hopf00" => Kind::FramedLink, "links/hopf00.pd";
    "trefoil0" => Kind::FramedLink, "links/trefoil0.pd";
    "trefoil+1" => Kind::FramedLink, "links/trefoil+1.pd";
    "trefoil-1" => Kind::FramedLink, "links/trefoil-1.pd";
    "figure-eight0" => Kind::FramedLink, "links/figure-eight0.pd";
    "split-2-3" => Kind::FramedLink, "links/split-2-3.pd";
    "torus-2-4-slid" => Kind::FramedLink, "links/torus-2-4-slid.pd";
    "borromean" => Kind::FramedLink, "links/borromean.pd";
    "borromean-star-a" => Kind::FramedLink, "links/borromean-star-a.pd";
    "borromean-star-b" => Kind::FramedLink, "links/borromean-star-b.pd";
    "borromean-star2-a" => Kind::FramedLink, "links/borromean-star2-a.pd";
    "borromean-star2-b" => Kind::FramedLink, "links/borromean-star2-b.pd";
    "trefoil-monodromy" => Kind::TwistWord, "words/trefoil-monodromy.tw";
    "figure-eight-monodromy" => Kind::TwistWord, "words/figure-eight-monodromy.tw";
    "identity-g2" => Kind::TwistWord, "words/identity-g2.tw";
}

pub fn names() -> Vec<&'static str> {
    SHIPPED.iter().map(|(n, _, _)| *n).collect()
}

pub fn load(name: &str) -> Result<CatalogEntry> {
    let (n, kind, text) = SHIPPED.iter().find(|(n, _, _)| *n == name).ok_or_else(|| Error::UnknownEntry(name.to_string()))?;
    CatalogEntry::parse(n, *kind, text)
}

pub fn list() -> Result<Vec<CatalogEntry>> {
    names().into_iter().map(load).collect()
}

/// A link argument: `catalog:NAME` or a path to a diagram file.
pub fn resolve_link(arg: &str) -> Result<FramedLinkDiagram> {
    match arg.strip_prefix("catalog:") {
        Some(name) => load(name)?.diagram(),
        None => {
            let text = std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
            FramedLinkDiagram::parse(&text)
        }
    }
}

/// A twist-word argument: `catalog:NAME` or a path to a word file.
pub fn resolve_word(arg: &str) -> Result<TwistWord> {
    match arg.strip_prefix("catalog:") {
        Some(name) => load(name)?.word(),
        None => {
            let text = std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
            TwistWord::parse(&text)
        }
    }
}

fn unknots(framings: &[i64]) -> Result<MorseDiagram> {
    MorseDiagram::new(framings.iter().flat_map(|_| [MorseOp::Cup(0), MorseOp::Cap(0)]).collect())
}

fn borromean() -> Result<MorseDiagram> {
    MorseDiagram::braid_closure(3, &[1, -2, 1, -2, 1, -2])
}

/// Rebuilds the payload of a shipped diagram from its construction.
pub fn generate_link(name: &str) -> Result<FramedLinkDiagram> {
    let (morse, framings): (MorseDiagram, Vec<i64>) = match name {
        "empty" => return Ok(FramedLinkDiagram::empty("empty")),
        "unknot+1" => (unknots(&[1])?, vec![1]),
        "unknot-1" => (unknots(&[-1])?, vec![-1]),
        "unknot0" => (unknots(&[0])?, vec![0]),
        "lens2" | "lens3" | "lens4" | "lens5" => {
            let n: i64 = name[4..].parse().expect("lens index");
            (unknots(&[n])?, vec![n])
        }
        "hopf00" => (MorseDiagram::braid_closure(2, &[1, 1])?, vec![0, 0]),
        "trefoil0" => (MorseDiagram::braid_closure(2, &[1, 1, 1])?, vec![0]),
        "trefoil+1" => (MorseDiagram::braid_closure(2, &[1, 1, 1])?, vec![1]),
        "trefoil-1" => (MorseDiagram::braid_closure(2, &[1, 1, 1])?, vec![-1]),
        "figure-eight0" => (MorseDiagram::braid_closure(3, &[1, -2, 1, -2])?, vec![0]),
        "split-2-3" => (unknots(&[2, 3])?, vec![2, 3]),
        "torus-2-4-slid" => (MorseDiagram::braid_closure(2, &[1, 1, 1, 1])?, vec![2, 5]),
        "borromean" => (borromean()?, vec![0, 0, 0]),
        "borromean-star-a" => (borromean()?.whitehead_doubled(&[0], true)?, vec![0, 0, 0]),
        "borromean-star-b" => (borromean()?.whitehead_doubled(&[0], false)?, vec![0, 0, 0]),
        "borromean-star2-a" => (borromean()?.whitehead_doubled(&[0, 1], true)?, vec![0, 0, 0]),
        "borromean-star2-b" => (borromean()?.whitehead_doubled(&[0, 1], false)?, vec![0, 0, 0]),
        _ => return Err(Error::UnknownEntry(name.to_string())),
    };
    morse.to_diagram(name, &framings)
}

/// Rebuilds a shipped twist word.
pub fn generate_word(name: &str) -> Result<TwistWord> {
    let a1 = vec![1, 0];
    let b1 = vec![0, 1];
    match name {
        "trefoil-monodromy" => TwistWord::new(1, vec![Twist { curve: a1, exp: 1 }, Twist { curve: b1, exp: 1 }]),
        "figure-eight-monodromy" => TwistWord::new(1, vec![Twist { curve: a1, exp: 1 }, Twist { curve: b1, exp: -1 }]),
        "identity-g2" => TwistWord::new(2, Vec::new()),
        _ => Err(Error::UnknownEntry(name.to_string())),
    }
}

/// Canonical text of a `ℤ[ζ₅]` value in the basis `1, ζ, ζ², ζ³`.
pub fn cyc5_token(v: &Cyc5) -> String {
    let c: Vec<String> = v.0.iter().map(|c| c.to_string()).collect();
    format!("[{}]", c.join(","))
}

/// Canonical text of a Laurent polynomial: lowest exponent, then coefficients.
pub fn laurent_token(p: &LaurentPoly) -> String {
    match (p.min_exp(), p.max_exp()) {
        (Some(lo), Some(hi)) => {
            let c: Vec<String> = (lo..=hi).map(|e| p.coeff(e).to_string()).collect();
            format!("{lo}:[{}]", c.join(","))
        }
        _ => "0".to_string(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleOutcome {
    Match,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub entry: String,
    pub quantity: String,
    pub stored: String,
    pub provenance: String,
    pub computed: String,
    /// Value from the independent evaluator, when it applies and fits.
    pub independent: Option<String>,
    pub outcome: OracleOutcome,
}

/// Recomputes every expectation of an entry. Link invariants are also
/// recomputed with the brute-force state sum when the cabled networks are
/// small enough; Alexander polynomials with both trace formulas.
pub fn oracle_check(e: &CatalogEntry, limits: &Limits, exec: Exec) -> Result<Vec<OracleCheck>> {
    let mut out = Vec::new();
    let mut computed: Vec<(String, String, Option<String>)> = Vec::new();
    match e.kind {
        Kind::FramedLink => {
            let d = e.diagram()?;
            let h = homology_from_linking(&d)?;
            let v = rt_invariant_5(&d, limits, exec)?;
            let naive = match rt_invariant_5_naive(&d, exec) {
                Ok(n) => Some(n),
                Err(Error::LimitExceeded(_)) => None,
                Err(err) => return Err(err),
            };
            let order = |v: &Cyc5| quantum_order(v).map_or("inf".to_string(), |o| o.to_string());
            computed.push(("components".into(), d.n_components().to_string(), None));
            computed.push(("beta1".into(), h.beta1.to_string(), None));
            computed.push(("det_h1".into(), h.det_h1.to_string(), None));
            computed.push(("value".into(), cyc5_token(&v), naive.as_ref().map(cyc5_token)));
            computed.push(("order5".into(), order(&v), naive.as_ref().map(order)));
        }
        Kind::TwistWord => {
            let sp = e.word()?.to_sp()?;
            computed.push(("trace".into(), sp.trace().to_string(), None));
            computed.push((
                "alexander".into(),
                laurent_token(&fn_alexander(&sp)?),
                Some(laurent_token(&lefschetz_alexander(&sp)?)),
            ));
        }
    }
    for x in &e.expected {
        let (_, c, ind) = computed
            .iter()
            .find(|(q, _, _)| *q == x.quantity)
            .ok_or_else(|| Error::Parse(format!("{}: unknown quantity `{}`", e.name, x.quantity)))?;
        let ok = *c == x.value && ind.as_ref().is_none_or(|i| *i == x.value);
        out.push(OracleCheck {
            entry: e.name.clone(),
            quantity: x.quantity.clone(),
            stored: x.value.clone(),
            provenance: x.provenance.to_string(),
            computed: c.clone(),
            independent: ind.clone(),
            outcome: if ok { OracleOutcome::Match } else { OracleOutcome::Mismatch },
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads_and_matches_its_construction() {
        for e in list().unwrap() {
            match e.kind {
                Kind::FramedLink => {
                    let shipped = e.diagram().unwrap();
                    assert_eq!(shipped, generate_link(&e.name).unwrap(), "{}", e.name);
                }
                Kind::TwistWord => assert_eq!(e.word().unwrap(), generate_word(&e.name).unwrap(), "{}", e.name),
            }
            for x in &e.expected {
                if let Provenance::Quoted(a) = &x.provenance {
                    assert!(!a.is_empty());
                }
            }
        }
    }

    #[test]
    fn named_entries() {
        let b = load("borromean").unwrap();
        let d = b.diagram().unwrap();
        assert_eq!(d.n_components(), 3);
        assert_eq!(d.framings(), vec![0, 0, 0]);
        assert_eq!(b.expectation("beta1").unwrap().value, "3");
        let u = load("unknot+1").unwrap().diagram().unwrap();
        assert_eq!(u.framings(), vec![1]);
        let w = load("trefoil-monodromy").unwrap().word().unwrap();
        assert_eq!(w.to_sp().unwrap().trace(), 1);
        assert!(matches!(load("nope"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn oracle_agrees_on_small_entries() {
        for name in ["unknot0", "lens3", "hopf00", "trefoil-1", "trefoil-monodromy", "identity-g2"] {
            for c in oracle_check(&load(name).unwrap(), &Limits::default(), Exec::Sequential).unwrap() {
                assert_eq!(c.outcome, OracleOutcome::Match, "{c:?}");
            }
        }
    }

    #[test]
    fn expectation_syntax() {
        let e: Expectation = " order5 = 1 PAPER two-examples".parse().unwrap();
        assert_eq!(e.value, "1");
        assert_eq!(e.provenance, Provenance::Quoted("two-examples".into()));
        assert!("order5 = 1 PAPER".parse::<Expectation>().is_err());
        assert!("order5 = 1".parse::<Expectation>().is_err());
        assert!("order5 = TRIVIAL".parse::<Expectation>().is_err());
    }
}
