//! Randomized properties: ring laws, codec round-trips, move invariance,
//! and multiplicativity.

use proptest::prelude::*;

use num_complex::Complex64;
use vlink_core::bracket::{bracket_reduced, bracket_unreduced, f_poly};
use vlink_core::codec::{parse_diagram, Pass, Role, VirtualLinkDiagram};
use vlink_core::moves::{apply, enumerate_sites, MoveKind, MoveSite};
use vlink_core::poly::{delta_generic, Laurent, Ring, RootParams};
use vlink_core::tangle::colored_bracket;

fn laurent_strategy() -> impl Strategy<Value = Laurent> {
    proptest::collection::vec((-6i64..=6, -20i128..=20), 0..6).prop_map(|terms| {
        let mut p = Laurent::new();
        for (e, c) in terms {
            p = p.add(&Laurent::monomial(e, c));
        }
        p
    })
}

/// Random valid virtual link diagram with up to `max_crossings` crossings
/// spread over one or two components.
fn diagram_strategy(max_crossings: u32) -> impl Strategy<Value = VirtualLinkDiagram> {
    (0..=max_crossings)
        .prop_flat_map(move |c| {
            let passes = 2 * c as usize;
            (
                Just(c),
                proptest::collection::vec(any::<u16>(), passes),
                proptest::collection::vec(any::<bool>(), c as usize),
                0..=passes,
            )
        })
        .prop_map(|(c, order_keys, signs, split)| {
            // multiset of passes, shuffled by sorting on random keys
            let mut tokens: Vec<(u16, Pass)> = Vec::new();
            for id in 1..=c {
                let sign = if signs[(id - 1) as usize] { 1 } else { -1 };
                tokens.push((
                    order_keys[2 * (id - 1) as usize],
                    Pass::new(id, Role::Over, sign),
                ));
                tokens.push((
                    order_keys[2 * (id - 1) as usize + 1],
                    Pass::new(id, Role::Under, sign),
                ));
            }
            tokens.sort_by_key(|&(k, p)| (k, p.id, p.role));
            let passes: Vec<Pass> = tokens.into_iter().map(|(_, p)| p).collect();
            let split = split.min(passes.len());
            let comp1 = passes[..split].to_vec();
            let comp2 = passes[split..].to_vec();
            let d = VirtualLinkDiagram {
                components: vec![comp1, comp2],
                name: None,
            };
            d.validate().expect("construction is valid by design");
            d
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in laurent_strategy(), b in laurent_strategy(), c in laurent_strategy()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
    }

    #[test]
    fn eval_is_a_homomorphism(a in laurent_strategy(), b in laurent_strategy(), r in 3u32..8) {
        let params = RootParams::new(r);
        let x = a.mul(&b).eval(params.a);
        let y = a.eval(params.a) * b.eval(params.a);
        prop_assert!((x - y).norm() < 1e-6 * (1.0 + y.norm()));
        let s = a.add(&b).eval(params.a);
        let t = a.eval(params.a) + b.eval(params.a);
        prop_assert!((s - t).norm() < 1e-6 * (1.0 + t.norm()));
    }

    #[test]
    fn delta_recurrence(n in 1i64..10) {
        let d = Laurent::d();
        let lhs = delta_generic(n + 1);
        let rhs = d.mul(&delta_generic(n)).sub(&delta_generic(n - 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parse_serialize_roundtrip(d in diagram_strategy(5)) {
        let text = d.serialize();
        let back = parse_diagram(&text).unwrap();
        prop_assert_eq!(back.components, d.components);
    }

    #[test]
    fn cable_writhe_law(d in diagram_strategy(3), n in 0u32..4) {
        // single-component (knot) case
        let knot = VirtualLinkDiagram {
            components: vec![d.components.concat()],
            name: None,
        };
        let cabled = knot.cable(n);
        prop_assert_eq!(cabled.writhe(), (n as i64) * (n as i64) * knot.writhe());
    }

    #[test]
    fn linking_symmetric(d in diagram_strategy(5)) {
        if d.components.len() == 2 {
            let ab = d.linking_number_doubled(0, 1).unwrap();
            let ba = d.linking_number_doubled(1, 0).unwrap();
            prop_assert_eq!(ab, ba);
        }
    }

    #[test]
    fn bracket_invariant_under_r2_r3(d in diagram_strategy(3), seed in any::<u64>()) {
        let walked = vlink_core::moves::random_walk(
            &d,
            &[MoveKind::R2Add, MoveKind::R2Del, MoveKind::R3],
            3,
            seed,
            10,
        );
        prop_assert_eq!(bracket_reduced(&walked).unwrap(), bracket_reduced(&d).unwrap());
    }

    #[test]
    fn f_invariant_under_r1(d in diagram_strategy(3), pos_key in any::<u16>(), sign in any::<bool>()) {
        let f0 = f_poly(&d).unwrap();
        let comp = 0usize;
        let position = (pos_key as usize) % (d.components[comp].len() + 1);
        let site = MoveSite::R1Add {
            component: comp,
            position,
            sign: if sign { 1 } else { -1 },
        };
        let kinked = apply(&d, &site).unwrap();
        prop_assert_eq!(f_poly(&kinked).unwrap(), f0);
    }

    #[test]
    fn unreduced_bracket_multiplicative(a in diagram_strategy(3), b in diagram_strategy(3)) {
        let ab = a.disjoint_union(&b);
        prop_assert_eq!(
            bracket_unreduced(&ab).unwrap(),
            bracket_unreduced(&a).unwrap().mul(&bracket_unreduced(&b).unwrap())
        );
    }

    #[test]
    fn fundamental_group_invariant_under_moves(d in diagram_strategy(3), seed in any::<u64>()) {
        use vlink_core::groups::{abelianization, wirtinger};
        let walked = vlink_core::moves::random_walk(
            &d,
            &[MoveKind::R1Add, MoveKind::R1Del, MoveKind::R2Add, MoveKind::R2Del, MoveKind::R3],
            3,
            seed,
            10,
        );
        prop_assert_eq!(
            abelianization(&wirtinger(&walked)),
            abelianization(&wirtinger(&d))
        );
    }
}

proptest! {
    // colored evaluations are heavier; fewer cases
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn colored_bracket_invariant_under_framed_moves(
        d in diagram_strategy(2),
        seed in any::<u64>(),
        color_pick in any::<bool>(),
    ) {
        let params = RootParams::new(4);
        let colors: Vec<u32> = d
            .components
            .iter()
            .map(|_| if color_pick { 2 } else { 1 })
            .collect();
        let before = colored_bracket(&d, &colors, &params, 36).unwrap();
        let walked = vlink_core::moves::random_walk(
            &d,
            &[MoveKind::R2Add, MoveKind::R2Del, MoveKind::R3],
            2,
            seed,
            4,
        );
        if walked.components.len() == d.components.len() {
            let after = colored_bracket(&walked, &colors, &params, 36).unwrap();
            prop_assert!(
                (before - after).norm() < 1e-9,
                "colored value changed: {} -> {}",
                before,
                after
            );
        }
    }

    #[test]
    fn colored_bracket_multiplicative(
        a in diagram_strategy(2),
        b in diagram_strategy(2),
        color_pick in any::<bool>(),
    ) {
        let params = RootParams::new(4);
        let ab = a.disjoint_union(&b);
        let color = if color_pick { 2 } else { 1 };
        let ca: Vec<u32> = a.components.iter().map(|_| color).collect();
        let cb: Vec<u32> = b.components.iter().map(|_| color).collect();
        let mut cab = ca.clone();
        cab.extend_from_slice(&cb);
        let va = colored_bracket(&a, &ca, &params, 36).unwrap();
        let vb = colored_bracket(&b, &cb, &params, 36).unwrap();
        let vab = colored_bracket(&ab, &cab, &params, 36).unwrap();
        prop_assert!((vab - va * vb).norm() < 1e-9);
    }
}

#[test]
fn colored_unknot_is_delta() {
    for r in 3..=7u32 {
        let params = RootParams::new(r);
        let unknot = VirtualLinkDiagram::unknot();
        for a in 0..=params.max_color() {
            let v = colored_bracket(&unknot, &[a], &params, 36).unwrap();
            let expect = vlink_core::poly::delta_at(&params, a as i64);
            assert!(
                (v - expect).norm() < 1e-9,
                "r={} a={}: {} vs {}",
                r,
                a,
                v,
                expect
            );
        }
    }
}

#[test]
fn all_ones_coloring_is_plain_bracket() {
    let params = RootParams::new(5);
    for name in ["trefoil", "vtrefoil", "hopf+", "paperKhat"] {
        let d = vlink_core::codec::builtin(name).unwrap();
        let colors: Vec<u32> = d.components.iter().map(|_| 1).collect();
        let v = colored_bracket(&d, &colors, &params, 36).unwrap();
        let plain = vlink_core::bracket::bracket_unreduced_at(&d, &params, 36).unwrap();
        assert!((v - plain).norm() < 1e-9, "{}: {} vs {}", name, v, plain);
    }
}

#[test]
fn delta_vanishes_at_top_color() {
    for r in 3..=8u32 {
        let params = RootParams::new(r);
        let top = vlink_core::poly::delta_at(&params, (r - 1) as i64);
        assert!(top.norm() < 1e-9, "Delta_{} at r={} is {}", r - 1, r, top);
    }
}

#[test]
fn virtual_structure_is_quotient() {
    // two textual presentations of the same code parse identically:
    // whitespace and virtual-crossing data never enter the structure
    let a = parse_diagram("O1+U2+ O2+ U1+").unwrap();
    let b = parse_diagram("O1+U2+O2+U1+").unwrap();
    assert_eq!(a, b);
}

#[test]
fn kirby_delete_sites_require_split_kinks() {
    let d = parse_diagram("O1+U1+O2+U2+").unwrap();
    assert!(enumerate_sites(&d, MoveKind::KirbyDel).is_empty());
    let split = parse_diagram("O1+U1+;O2-U2-").unwrap();
    assert_eq!(enumerate_sites(&split, MoveKind::KirbyDel).len(), 2);
}

#[test]
fn half_integer_linking_rejected_in_matrix() {
    let v = parse_diagram("O1+;U1+").unwrap();
    assert_eq!(v.linking_number_doubled(0, 1).unwrap(), 1);
    assert!(v.linking_matrix().is_err());
    // eigenvalue data is undefined for such links; the error propagates
    assert!(vlink_core::wrt::normalized_wrt_default(&v, 3).is_err());
}

#[test]
fn jones_substitution_matches_f() {
    // V(t) = f(A) under A = t^{-1/4}: check numerically at t0 = A0^{-4}
    let d = vlink_core::codec::builtin("vtrefoil").unwrap();
    let f = f_poly(&d).unwrap();
    let v = vlink_core::bracket::jones(&d).unwrap();
    let a0 = RootParams::new(5).a;
    let lhs: Complex64 = v
        .quarter_terms
        .terms()
        .map(|(e, c)| Complex64::new(c as f64, 0.0) * vlink_core::poly::cpow(a0, -e))
        .sum();
    let rhs = f.eval(a0);
    assert!((lhs - rhs).norm() < 1e-6, "{} vs {}", lhs, rhs);
}
