//! SO(3) Reshetikhin–Turaev invariant at `A⁴ = ζ₅` from a framed surgery
//! diagram.
//!
//! Each component is colored by `ω = 1 + d·(color 2)` with `d = δ² − 1`, the
//! framing is corrected from the blackboard one by the twist `θ = A⁸` of the
//! color-2 strand, and the sum is divided by `U₊^{b₊} U₋^{b₋} (−x)^{b₀}`
//! where `U± = 1 + d²θ^{±1}` are the `±1`-framed unknots and `(b₊, b₋, b₀)`
//! is the inertia of the linking matrix. With this choice `V(S³) = 1` and
//! `V(S¹×S²) = x = ζ₅ − ζ₅⁻¹`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::limits::Limits;
use crate::ring::{Cyc20, Cyc5};

use super::diagram::FramedLinkDiagram;
use super::network::Network;
use super::oracle::naive_evaluate;
use super::sweep::sweep_evaluate;

/// Bracket of the diagram with component `i` replaced by `colors[i] ∈ {0, 2}`
/// parallel strands closed up with the Jones–Wenzl idempotent.
pub fn bracket(d: &FramedLinkDiagram, colors: &[u8], limits: &Limits) -> Result<Cyc20> {
    sweep_evaluate(&Network::cabled(d, colors)?, limits.strands)
}

/// Quantum dimension of color 2.
pub fn color_weight() -> Cyc20 {
    let delta = Cyc20::delta();
    delta * delta - Cyc20::ONE
}

/// Twist eigenvalue of color 2.
pub fn theta() -> Cyc20 {
    Cyc20::a_pow(8)
}

fn theta_pow(k: i64) -> Cyc20 {
    Cyc20::a_pow(8 * k)
}

/// Value of the `±1`-framed unknot colored by `ω`.
pub fn unknot_value(sign: i64) -> Cyc20 {
    let d = color_weight();
    Cyc20::ONE + d * d * theta_pow(sign)
}

/// All colorings in `{0, 2}ⁿ`, component 0 varying fastest.
pub fn colorings(n: usize) -> Vec<Vec<u8>> {
    (0..1u64 << n).map(|m| (0..n).map(|i| if (m >> i) & 1 == 1 { 2 } else { 0 }).collect()).collect()
}

/// Unnormalized surgery sum `Σ_c Π_{c_i = 2} d θ^{f_i − w_i} ⟨L_c⟩`.
pub fn surgery_sum(d: &FramedLinkDiagram, limits: &Limits, exec: Exec) -> Result<Cyc20> {
    surgery_sum_with(d, exec, |net| sweep_evaluate(net, limits.strands))
}

/// Surgery sum with the bracket of each cabled network computed by `eval`.
pub fn surgery_sum_with<F>(d: &FramedLinkDiagram, exec: Exec, eval: F) -> Result<Cyc20>
where
    F: Fn(&Network) -> Result<Cyc20> + Sync + Send,
{
    let n = d.n_components();
    if n > 20 {
        return Err(Error::LimitExceeded(format!("{n} components")));
    }
    let weight = color_weight();
    let corrections: Vec<Cyc20> = (0..n).map(|i| weight * theta_pow(d.components()[i].framing - d.self_writhe(i))).collect();
    let terms = exec.try_map(&colorings(n), |c| {
        let mut t = eval(&Network::cabled(d, c)?)?;
        for (i, &ci) in c.iter().enumerate() {
            if ci == 2 {
                t = t * corrections[i];
            }
        }
        Ok::<_, Error>(t)
    })?;
    Ok(terms.into_iter().fold(Cyc20::ZERO, |a, b| a + b))
}

/// `V(M)` for the manifold obtained by surgery on `d`.
pub fn rt_invariant_5(d: &FramedLinkDiagram, limits: &Limits, exec: Exec) -> Result<Cyc5> {
    normalize(d, surgery_sum(d, limits, exec)?)
}

/// `V(M)` with every bracket taken from the brute-force state sum.
pub fn rt_invariant_5_naive(d: &FramedLinkDiagram, exec: Exec) -> Result<Cyc5> {
    normalize(d, surgery_sum_with(d, exec, naive_evaluate)?)
}

fn normalize(d: &FramedLinkDiagram, raw: Cyc20) -> Result<Cyc5> {
    let (bp, bm, b0) = d.signature_counts()?;
    let minus_x = -Cyc20::from_cyc5(&Cyc5::x());
    let norm = unknot_value(1).pow(bp as u32) * unknot_value(-1).pow(bm as u32) * minus_x.pow(b0 as u32);
    let v = raw
        .div_exact(&norm)
        .ok_or_else(|| Error::Internal("surgery sum not divisible by its normalization".into()))?;
    v.to_cyc5().ok_or_else(|| Error::Internal(format!("invariant {v:?} not in Z[zeta_5]")))
}

/// `(ζ₅ − 1)`-adic valuation, `None` for zero. Since `x = ζ₅ − ζ₅⁻¹` is
/// `ζ₅ − 1` times the unit `ζ₅⁻¹(ζ₅ + 1)`, this is also the `x`-adic order.
pub fn quantum_order(v: &Cyc5) -> Option<u32> {
    v.valuation()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Homology {
    pub beta1: usize,
    /// Order of `H₁` when finite, else 0.
    pub det_h1: i128,
    /// Invariant factors other than 1.
    pub torsion: Vec<i128>,
}

/// `H₁` of the surgered manifold from the Smith form of the linking matrix.
pub fn homology_from_linking(d: &FramedLinkDiagram) -> Result<Homology> {
    let lk = d.linking_matrix()?;
    let (inv, _) = lk.smith_invariants();
    let beta1 = lk.rows() - inv.len();
    let det_h1 = if beta1 == 0 { inv.iter().product() } else { 0 };
    Ok(Homology { beta1, det_h1, torsion: inv.into_iter().filter(|&f| f != 1).collect() })
}

/// `V(S¹×S²)`, the 0-framed unknot.
pub fn s1xs2_value() -> Cyc5 {
    Cyc5::x()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutBoundReport {
    pub name: String,
    pub value: Cyc5,
    /// `None` when the invariant vanishes.
    pub order: Option<u32>,
    pub beta1: usize,
    pub det_h1: i128,
    pub claimed_cut: Option<u32>,
    /// `claimed_cut ≤ 𝔬₅`, if a cut was claimed.
    pub cut_bound_holds: Option<bool>,
    /// Order of `S¹×S²`, used in `β₁/3 ≤ 𝔬₅(M)/𝔬₅(S¹×S²)`.
    pub s1xs2_order: u32,
    pub ratio_bound_holds: bool,
}

pub fn cut_bound_report(d: &FramedLinkDiagram, claimed_cut: Option<u32>, limits: &Limits, exec: Exec) -> Result<CutBoundReport> {
    let value = rt_invariant_5(d, limits, exec)?;
    let order = quantum_order(&value);
    let h = homology_from_linking(d)?;
    let s1xs2_order = quantum_order(&s1xs2_value()).expect("x is nonzero");
    let ratio_bound_holds = match order {
        None => true,
        Some(o) => h.beta1 as u64 * s1xs2_order as u64 <= 3 * o as u64,
    };
    let cut_bound_holds = claimed_cut.map(|c| order.is_none_or(|o| c <= o));
    Ok(CutBoundReport {
        name: d.name.clone(),
        value,
        order,
        beta1: h.beta1,
        det_h1: h.det_h1,
        claimed_cut,
        cut_bound_holds,
        s1xs2_order,
        ratio_bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skein::MorseDiagram;

    fn unknot(f: i64) -> FramedLinkDiagram {
        FramedLinkDiagram::parse(&format!("framings: {f}\nLoop(1)\n")).unwrap()
    }

    #[test]
    fn curl_convention() {
        // a positive curl multiplies the plain bracket by -A^3
        let d = FramedLinkDiagram::parse("framings: 0\nX(1,1,2,2)\n").unwrap();
        let sign = d.crossing_sign(0);
        let v = sweep_evaluate(&Network::from_diagram(&d).unwrap(), 8).unwrap();
        assert_eq!(v, -(Cyc20::a_pow(3 * sign)) * Cyc20::delta());
        // and a color-2 curl by the twist A^8
        let c = bracket(&d, &[2], &Limits::default()).unwrap();
        assert_eq!(c, theta_pow(sign) * color_weight());
    }

    #[test]
    fn colored_hopf() {
        let h = MorseDiagram::braid_closure(2, &[1, 1]).unwrap().to_diagram("h", &[0, 0]).unwrap();
        let v = bracket(&h, &[2, 2], &Limits::default()).unwrap();
        // [9] in the variable A^2
        let q = Cyc20::a_pow(2) - Cyc20::a_pow(-2);
        assert_eq!(v * q, Cyc20::a_pow(18) - Cyc20::a_pow(-18));
        assert_eq!(v, naive_evaluate(&Network::cabled(&h, &[2, 2]).unwrap()).unwrap());
    }

    #[test]
    fn small_manifolds() {
        let l = Limits::default();
        assert_eq!(rt_invariant_5(&FramedLinkDiagram::empty("s3"), &l, Exec::Sequential).unwrap(), Cyc5::ONE);
        for f in [1, -1] {
            assert_eq!(rt_invariant_5(&unknot(f), &l, Exec::Sequential).unwrap(), Cyc5::ONE);
        }
        assert_eq!(rt_invariant_5(&unknot(0), &l, Exec::Sequential).unwrap(), Cyc5::x());
        let h = MorseDiagram::braid_closure(2, &[1, 1]).unwrap().to_diagram("h", &[0, 0]).unwrap();
        assert_eq!(rt_invariant_5(&h, &l, Exec::Sequential).unwrap(), Cyc5::ONE);
        assert_eq!(rt_invariant_5_naive(&h, Exec::Sequential).unwrap(), Cyc5::ONE);
        for n in 2..6 {
            let v = rt_invariant_5(&unknot(n), &l, Exec::Sequential).unwrap();
            assert_eq!(v.residue() as i64, n.rem_euclid(5));
        }
    }

    #[test]
    fn orders() {
        assert_eq!(quantum_order(&Cyc5::ONE), Some(0));
        assert_eq!(quantum_order(&(Cyc5::pi() * Cyc5::pi())), Some(2));
        assert_eq!(quantum_order(&Cyc5::from_int(5)), Some(4));
        assert_eq!(quantum_order(&Cyc5::ZERO), None);
        assert_eq!(quantum_order(&Cyc5::x()), Some(1));
    }

    #[test]
    fn homology() {
        let h = homology_from_linking(&unknot(4)).unwrap();
        assert_eq!((h.beta1, h.det_h1), (0, 4));
        let h = homology_from_linking(&unknot(0)).unwrap();
        assert_eq!((h.beta1, h.det_h1), (1, 0));
        let h = homology_from_linking(&FramedLinkDiagram::empty("s3")).unwrap();
        assert_eq!((h.beta1, h.det_h1), (0, 1));
    }
}
