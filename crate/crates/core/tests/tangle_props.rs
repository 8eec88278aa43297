//! Deterministic tangle-algebra properties beyond the acceptance gate.

use vlink_core::poly::{delta, Field, Laurent, RationalFn, Ring, RootParams};
use vlink_core::tangle::{jw, lemma_product, lemma_product_formula, BrauerDiagram, BrauerElement};

fn d_gen() -> RationalFn {
    RationalFn::from_poly(Laurent::d())
}

/// All permutation diagrams on n strands (virtual tangles).
fn permutation_tangles(n: usize) -> Vec<BrauerDiagram> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..n {
                let mut q = p.clone();
                q.insert(k, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(n)
        .into_iter()
        .map(|p| {
            let pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, n + p[i])).collect();
            BrauerDiagram::from_pairs(n, &pairs)
        })
        .collect()
}

/// Peeling one strand off the projector against any virtual permutation
/// tangle extended by a free strand:
/// `closure(T_n (P ⊗ 1)) = (d - Δ_{n-2}/Δ_{n-1}) closure(T_{n-1} P)`.
#[test]
fn projector_peeling_recursion() {
    let d = d_gen();
    for n in 2..=3usize {
        let tn = jw(n, &d, None).unwrap();
        let tn1 = jw(n - 1, &d, None).unwrap();
        let ratio = delta(&d, n as i64 - 2).div(&delta(&d, n as i64 - 1));
        let factor = d.sub(&ratio);
        for p in permutation_tangles(n - 1) {
            let pe = BrauerElement::from_diagram(p.clone());
            let extended = pe.tensor(&BrauerElement::identity(1));
            let lhs = tn.multiply(&extended, &d).closure(&d);
            let rhs = factor.mul(&tn1.multiply(&pe, &d).closure(&d));
            assert_eq!(lhs, rhs, "n = {}, P = {}", n, p);
        }
    }
}

/// The recursion drives the closed product formula; check the chain matches
/// step by step up to n = 5 and stays nonzero.
#[test]
fn lemma_chain_consistency() {
    let d = d_gen();
    for n in 3..=5usize {
        let value_n = lemma_product(n, &d, None).unwrap();
        let value_prev = lemma_product(n - 1, &d, None).unwrap();
        let ratio = delta(&d, n as i64 - 2).div(&delta(&d, n as i64 - 1));
        assert_eq!(value_n, d.sub(&ratio).mul(&value_prev), "n = {}", n);
        assert!(!value_n.is_zero());
        assert_eq!(value_n, lemma_product_formula(n, &d));
    }
}

/// Nonvanishing is a generic statement; at a root of unity a product factor
/// can hit zero. The values still match the closed product exactly, and the
/// zero locus is precisely where a factor `d - Δ_{k-1}/Δ_k` vanishes.
#[test]
fn lemma_values_at_roots_follow_the_product() {
    for r in 5..=8u32 {
        let params = RootParams::new(r);
        for n in 2..=5usize {
            if n as u32 > r - 1 {
                continue;
            }
            let v = lemma_product(n, &params.d, Some(r)).unwrap();
            let f = lemma_product_formula(n, &params.d);
            assert!((v - f).norm() < 1e-9, "r = {}, n = {}", r, n);
            if v.norm() < 1e-9 {
                // the last factor is d - Δ_{n-2}/Δ_{n-1} = Δ_n/Δ_{n-1},
                // which vanishes exactly at the top admissible projector
                assert_eq!(n as u32, r - 1, "unexpected zero at r = {}, n = {}", r, n);
            }
        }
    }
}

/// Projector coefficients live on planar diagrams only.
#[test]
fn projectors_are_planar_sums() {
    let d = d_gen();
    for n in 1..=4usize {
        let t = jw(n, &d, None).unwrap();
        for (diag, _) in t.terms() {
            assert!(diag.is_planar(), "T_{} contains {}", n, diag);
        }
    }
}
