use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lefschetz_tqft::exec::Exec;
use lefschetz_tqft::exterior::{blades_of_degree, MultiVector};
use lefschetz_tqft::lefschetz::{fn_alexander, lefschetz_alexander};
use lefschetz_tqft::limits::Limits;
use lefschetz_tqft::ring::{Cyc5, ScalarRing};
use lefschetz_tqft::skein::rt::colorings;
use lefschetz_tqft::skein::{naive_evaluate, rt_invariant_5, sweep_evaluate, FramedLinkDiagram, MorseDiagram, Network};
use lefschetz_tqft::symplectic::{SpMatrix, TwistWord};

fn braid() -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2usize..=3).prop_flat_map(|n| {
        let gen = (1..n as i32, any::<bool>()).prop_map(|(s, inv)| if inv { -s } else { s });
        (Just(n), prop::collection::vec(gen, 1..=4))
    })
}

fn closure((n, word): &(usize, Vec<i32>), framings: &[i64]) -> FramedLinkDiagram {
    let m = MorseDiagram::braid_closure(*n, word).unwrap();
    let f: Vec<i64> = (0..m.component_count()).map(|i| framings[i % framings.len()]).collect();
    m.to_diagram("b", &f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sweep_matches_naive(b in braid(), f in prop::collection::vec(-2i64..=2, 3)) {
        let d = closure(&b, &f);
        for c in colorings(d.n_components()) {
            let net = Network::cabled(&d, &c).unwrap();
            if net.vertices.len() <= 20 {
                prop_assert_eq!(sweep_evaluate(&net, 32).unwrap(), naive_evaluate(&net).unwrap());
            }
        }
    }

    #[test]
    fn invariant_is_multiplicative(b1 in braid(), b2 in braid(), f in prop::collection::vec(-2i64..=2, 3)) {
        let l = Limits::default();
        let d1 = closure(&b1, &f);
        let d2 = closure(&b2, &f[1..]);
        let u = d1.disjoint_union(&d2, "u").unwrap();
        let v = rt_invariant_5(&u, &l, Exec::Sequential).unwrap();
        let v1 = rt_invariant_5(&d1, &l, Exec::Sequential).unwrap();
        let v2 = rt_invariant_5(&d2, &l, Exec::Sequential).unwrap();
        prop_assert_eq!(v, v1 * v2);
    }

    #[test]
    fn diagram_text_round_trip(b in braid(), f in prop::collection::vec(-3i64..=3, 3)) {
        let d = closure(&b, &f);
        let e = FramedLinkDiagram::parse(&d.to_text()).unwrap();
        prop_assert_eq!(e.crossings(), d.crossings());
        prop_assert_eq!(e.framings(), d.framings());
        prop_assert_eq!(e.linking_matrix().unwrap(), d.linking_matrix().unwrap());
    }

    #[test]
    fn trace_formulas_agree(g in 1usize..=3, len in 1usize..10, seed in any::<u64>()) {
        let w = TwistWord::random(g, len, &mut ChaCha8Rng::seed_from_u64(seed));
        let m = w.to_sp().unwrap();
        let a = fn_alexander(&m).unwrap();
        prop_assert!(a.is_palindromic());
        prop_assert_eq!(&a, &lefschetz_alexander(&m).unwrap());
        // the inverse monodromy gives the mirror mapping torus
        prop_assert_eq!(fn_alexander(&m.inverse()).unwrap(), a);
    }

    #[test]
    fn words_are_symplectic(g in 1usize..=4, len in 1usize..12, seed in any::<u64>()) {
        let w = TwistWord::random(g, len, &mut ChaCha8Rng::seed_from_u64(seed));
        let m = w.to_sp().unwrap();
        prop_assert!(SpMatrix::new(g, m.matrix().clone()).is_ok());
        prop_assert_eq!(m.mul(&w.inverse().to_sp().unwrap()).unwrap(), SpMatrix::identity(g));
        let parsed = TwistWord::parse(&w.to_text()).unwrap();
        prop_assert_eq!(parsed.to_sp().unwrap(), m);
    }

    #[test]
    fn sl2_commutator(g in 1usize..=4, deg in 0usize..=8, coeffs in prop::collection::vec(-4i128..=4, 70)) {
        let deg = deg.min(2 * g);
        let v = MultiVector::from_terms(
            g,
            ScalarRing::Integer,
            blades_of_degree(g, deg).into_iter().zip(coeffs.iter().cycle().copied()),
        );
        let ef = v.op_f().op_e().sub(&v.op_e().op_f()).unwrap();
        prop_assert_eq!(ef, v.op_h());
    }

    #[test]
    fn valuation_is_additive(a in prop::collection::vec(-6i128..=6, 4), b in prop::collection::vec(-6i128..=6, 4)) {
        let mk = |c: &[i128]| (0..4).fold(Cyc5::ZERO, |acc, i| acc + Cyc5::zeta_pow(i as i64).scale(c[i]));
        let (x, y) = (mk(&a), mk(&b));
        if let (Some(u), Some(w)) = (x.valuation(), y.valuation()) {
            prop_assert_eq!((x * y).valuation(), Some(u + w));
        }
    }
}

#[test]
fn handle_slide_pair_agrees() {
    let l = Limits::default();
    let slid = lefschetz_tqft::catalog::load("torus-2-4-slid").unwrap().diagram().unwrap();
    let split = lefschetz_tqft::catalog::load("split-2-3").unwrap().diagram().unwrap();
    assert_eq!(rt_invariant_5(&slid, &l, Exec::Sequential).unwrap(), rt_invariant_5(&split, &l, Exec::Sequential).unwrap());
}

#[test]
fn parallel_and_sequential_agree() {
    let l = Limits::default();
    let d = lefschetz_tqft::catalog::load("borromean-star-a").unwrap().diagram().unwrap();
    assert_eq!(rt_invariant_5(&d, &l, Exec::Parallel).unwrap(), rt_invariant_5(&d, &l, Exec::Sequential).unwrap());
}
