//! Direct evaluation of closed trivalent networks built from Jones-Wenzl
//! projectors, by expanding every projector into its matchings and counting
//! loops. Independent of the closed-form evaluators in [`crate::recoupling`],
//! which it cross-checks.

use alloc::vec::Vec;

use crate::poly::{QError, Ring, RootParams};
use crate::recoupling::admissible;
use crate::tangle::{jw, BrauerElement};
use num_complex::Complex64;

/// Value of a closed network: `elements` with all their boundary points
/// paired off by `pairings`. Element `k`'s points occupy the id range
/// starting after all earlier elements (tops first, then bottoms, each left
/// to right). One `d` per closed loop.
pub fn evaluate_network<S: Ring>(
    elements: &[&BrauerElement<S>],
    pairings: &[(usize, usize)],
    d: &S,
) -> S {
    let mut offsets = Vec::with_capacity(elements.len());
    let mut total = 0usize;
    for e in elements {
        offsets.push(total);
        total += 2 * e.n;
    }
    debug_assert_eq!(pairings.len() * 2, total, "network must be closed");

    let mut acc = S::zero();
    let mut choice = alloc::vec![0usize; elements.len()];
    let expansions: Vec<Vec<(&S, &crate::tangle::BrauerDiagram)>> = elements
        .iter()
        .map(|e| e.terms().map(|(diag, c)| (c, diag)).collect())
        .collect();
    if expansions.iter().any(|e| e.is_empty()) {
        return S::zero();
    }
    loop {
        let mut coeff = S::one();
        for (k, &c) in choice.iter().enumerate() {
            coeff = coeff.mul(expansions[k][c].0);
        }
        // count loops: union matchings with the fixed pairings
        let mut uf: Vec<usize> = (0..total).collect();
        fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let union = |uf: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(uf, a), find(uf, b));
            if ra != rb {
                uf[ra] = rb;
            }
        };
        for (k, &c) in choice.iter().enumerate() {
            let diag = expansions[k][c].1;
            let n = diag.strands();
            for p in 0..2 * n {
                let q = diag.partner(p);
                if p < q {
                    union(&mut uf, offsets[k] + p, offsets[k] + q);
                }
            }
        }
        for &(a, b) in pairings {
            union(&mut uf, a, b);
        }
        let mut loops = 0;
        for i in 0..total {
            if find(&mut uf, i) == i {
                loops += 1;
            }
        }
        let mut term = coeff;
        for _ in 0..loops {
            term = term.mul(d);
        }
        acc = acc.add(&term);

        let mut i = 0;
        loop {
            if i == choice.len() {
                return acc;
            }
            choice[i] += 1;
            if choice[i] < expansions[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Port ids for one element inside a network.
#[derive(Clone, Copy)]
struct Ports {
    base: usize,
    n: usize,
}

impl Ports {
    fn top(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        self.base + i
    }
    fn bottom(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        self.base + self.n + i
    }
}

fn port_table(sizes: &[usize]) -> Vec<Ports> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut base = 0;
    for &n in sizes {
        out.push(Ports { base, n });
        base += 2 * n;
    }
    out
}

/// Pair two bundles of a trivalent vertex: the `k` points of `left` nearest
/// to `right` attach to the `k` points of `right` nearest to `left`, nested.
/// `left` and `right` are point lists in boundary order around the vertex.
fn vertex_pair(pairings: &mut Vec<(usize, usize)>, left: &[usize], right: &[usize], k: usize) {
    for t in 0..k {
        pairings.push((left[left.len() - 1 - t], right[t]));
    }
}

fn admissible_or_err(a: u32, b: u32, c: u32, r: u32) -> Result<(), QError> {
    if admissible(a, b, c, Some(r)) {
        Ok(())
    } else {
        Err(QError::Inadmissible { a, b, c })
    }
}

/// Theta net by direct expansion: two trivalent vertices joined by edges
/// colored `a`, `b`, `c`, each edge carrying its projector. Unreduced
/// normalization (the (1,1,0) net is a single loop with value `d`).
pub fn theta_net(a: u32, b: u32, c: u32, params: &RootParams) -> Result<Complex64, QError> {
    admissible_or_err(a, b, c, params.r)?;
    let (a_, b_, c_) = (a as usize, b as usize, c as usize);
    let ta = jw(a_, &params.d, Some(params.r))?;
    let tb = jw(b_, &params.d, Some(params.r))?;
    let tc = jw(c_, &params.d, Some(params.r))?;
    let ports = port_table(&[a_, b_, c_]);
    let k_ab = ((a + b - c) / 2) as usize;
    let k_bc = ((b + c - a) / 2) as usize;
    let k_ac = ((a + c - b) / 2) as usize;

    let tops: Vec<Vec<usize>> = (0..3)
        .map(|e| (0..ports[e].n).map(|i| ports[e].top(i)).collect())
        .collect();
    let bots: Vec<Vec<usize>> = (0..3)
        .map(|e| (0..ports[e].n).map(|i| ports[e].bottom(i)).collect())
        .collect();

    let mut pairings = Vec::new();
    // top vertex: bundles a, b, c left to right; a-c arcs wrap outside
    vertex_pair(&mut pairings, &tops[0], &tops[1], k_ab);
    vertex_pair(&mut pairings, &tops[1], &tops[2], k_bc);
    for t in 0..k_ac {
        pairings.push((tops[0][t], tops[2][c_ - 1 - t]));
    }
    // bottom vertex mirrors the top
    vertex_pair(&mut pairings, &bots[0], &bots[1], k_ab);
    vertex_pair(&mut pairings, &bots[1], &bots[2], k_bc);
    for t in 0..k_ac {
        pairings.push((bots[0][t], bots[2][c_ - 1 - t]));
    }
    Ok(evaluate_network(&[&ta, &tb, &tc], &pairings, &params.d))
}

/// Tetrahedral net by direct expansion. Vertices: `(a,b,e)`, `(c,d,e)`,
/// `(b,c,f)`, `(a,d,f)` — the degenerate case `Tet[a b e; b a 0]` is the
/// theta net on `(a, b, e)`.
///
/// Planar layout: vertex 1 on top (bundles a, e, b), vertex 2 at the bottom
/// (d, e, c), vertex 4 on the left (f, d, a), vertex 3 on the right
/// (b, c, f); the f edge routes around the outside.
pub fn tet_net(
    a: u32,
    b: u32,
    e: u32,
    c: u32,
    d: u32,
    f: u32,
    params: &RootParams,
) -> Result<Complex64, QError> {
    admissible_or_err(a, b, e, params.r)?;
    admissible_or_err(c, d, e, params.r)?;
    admissible_or_err(b, c, f, params.r)?;
    admissible_or_err(a, d, f, params.r)?;

    let labels = [a, b, e, c, d, f];
    let sizes: Vec<usize> = labels.iter().map(|&x| x as usize).collect();
    let elems: Vec<BrauerElement<Complex64>> = sizes
        .iter()
        .map(|&n| jw(n, &params.d, Some(params.r)))
        .collect::<Result<_, _>>()?;
    let ports = port_table(&sizes);
    const A: usize = 0;
    const B: usize = 1;
    const E: usize = 2;
    const C: usize = 3;
    const D: usize = 4;
    const F: usize = 5;

    // Edge ends as point lists in the boundary order of each vertex disk.
    // Edge orientation: end0 = element tops in index order; end1 = element
    // bottoms in reversed index order (a flat band reverses once).
    let end0 = |e: usize| -> Vec<usize> { (0..ports[e].n).map(|i| ports[e].top(i)).collect() };
    let end1 = |e: usize| -> Vec<usize> {
        (0..ports[e].n).rev().map(|i| ports[e].bottom(i)).collect()
    };

    let k = |x: u32, y: u32, z: u32| ((x + y - z) / 2) as usize;

    let mut pairings = Vec::new();
    // Vertex disk with bundles (P, Q, R) in cyclic boundary order: adjacent
    // pairs (P,Q), (Q,R), (R,P) nested head-to-tail.
    let vertex = |p: Vec<usize>, q: Vec<usize>, r: Vec<usize>,
                      lp: u32, lq: u32, lr: u32,
                      pairings: &mut Vec<(usize, usize)>| {
        vertex_pair(pairings, &p, &q, k(lp, lq, lr));
        vertex_pair(pairings, &q, &r, k(lq, lr, lp));
        vertex_pair(pairings, &r, &p, k(lr, lp, lq));
    };
    // V1 (top): bundles a, e, b — ccw along the bottom of the disk
    vertex(end0(A), end0(E), end0(B), a, e, b, &mut pairings);
    // V2 (bottom): bundles c, e, d — ccw along the top of the disk
    vertex(end0(C), end1(E), end0(D), c, e, d, &mut pairings);
    // V4 (left): bundles f, d, a
    vertex(end1(F), end1(D), end1(A), f, d, a, &mut pairings);
    // V3 (right): bundles b, c, f
    vertex(end1(B), end1(C), end0(F), b, c, f, &mut pairings);

    let refs: Vec<&BrauerElement<Complex64>> = elems.iter().collect();
    Ok(evaluate_network(&refs, &pairings, &params.d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::delta_at;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn theta_net_simple() {
        let p = RootParams::new(5);
        // (1,1,0) net is one circle
        assert!(close(theta_net(1, 1, 0, &p).unwrap(), p.d));
        // (a,a,0) net is the projector closure Δ_a
        for a in 0..=3 {
            assert!(close(
                theta_net(a, a, 0, &p).unwrap(),
                delta_at(&p, a as i64)
            ));
        }
        assert!(theta_net(1, 1, 1, &p).is_err());
    }

    #[test]
    fn network_trivial_loop() {
        let p = RootParams::new(4);
        let t1 = jw::<Complex64>(1, &p.d, None).unwrap();
        // close a single strand onto itself
        let v = evaluate_network(&[&t1], &[(0, 1)], &p.d);
        assert!(close(v, p.d));
    }
}
