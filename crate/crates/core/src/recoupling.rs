//! Closed-form recoupling evaluators at roots of unity: admissibility,
//! theta and tetrahedral nets, twist, fusion, recoupling, and
//! crossing-expansion coefficients, plus the two worked example sums.

use crate::poly::{cpow, delta_at, qfact_raw, Field, QError, RootParams};
use num_complex::Complex64;

/// A triple of colors is admissible when the pairwise triangle inequalities
/// hold, the total is even, and (at level `r`) `a + b + c <= 2r - 4`.
pub fn admissible(a: u32, b: u32, c: u32, level: Option<u32>) -> bool {
    let (a, b, c) = (a as i64, b as i64, c as i64);
    if (a + b + c) % 2 != 0 {
        return false;
    }
    if a + b < c || a + c < b || b + c < a {
        return false;
    }
    if let Some(r) = level {
        if a + b + c > 2 * (r as i64) - 4 {
            return false;
        }
    }
    true
}

fn check_admissible(a: u32, b: u32, c: u32, level: Option<u32>) -> Result<(), QError> {
    if admissible(a, b, c, level) {
        Ok(())
    } else {
        Err(QError::Inadmissible { a, b, c })
    }
}

/// Theta net value
/// `θ(a,b,c) = (-1)^{m+n+p} [m+n+p+1]! [m]! [n]! [p]! / ([m+n]! [n+p]! [p+m]!)`
/// with `m = (a+b-c)/2`, `n = (a+c-b)/2`, `p = (b+c-a)/2`.
pub fn theta<S: Field>(a: u32, b: u32, c: u32, d: &S, level: Option<u32>) -> Result<S, QError> {
    check_admissible(a, b, c, level)?;
    let m = ((a + b - c) / 2) as i64;
    let n = ((a + c - b) / 2) as i64;
    let p = ((b + c - a) / 2) as i64;
    let num = qfact_raw(d, m + n + p + 1)
        .mul(&qfact_raw(d, m))
        .mul(&qfact_raw(d, n))
        .mul(&qfact_raw(d, p));
    let den = qfact_raw(d, m + n)
        .mul(&qfact_raw(d, n + p))
        .mul(&qfact_raw(d, p + m));
    let v = num.div(&den);
    Ok(if (m + n + p) % 2 == 0 { v } else { v.neg() })
}

pub fn theta_at(a: u32, b: u32, c: u32, params: &RootParams) -> Result<Complex64, QError> {
    theta(a, b, c, &params.d, Some(params.r))
}

/// Tetrahedral net `Tet[a b e; c d f]` with vertex triples `(a,b,e)`,
/// `(c,d,e)`, `(b,c,f)`, `(a,d,f)`:
///
/// ```text
/// Tet = (G/E) Σ_{m <= s <= M} (-1)^s [s+1]! / (Π_i [s-a_i]! Π_j [b_j-s]!)
/// a_1 = (a+b+e)/2   a_2 = (c+d+e)/2   a_3 = (b+c+f)/2   a_4 = (a+d+f)/2
/// b_1 = (a+b+c+d)/2   b_2 = (a+c+e+f)/2   b_3 = (b+d+e+f)/2
/// E = [a]![b]![c]![d]![e]![f]!   G = Π_{i,j} [b_j - a_i]!
/// m = max a_i, M = min b_j
/// ```
///
/// Degenerate anchor: `Tet[a b e; b a 0] = θ(a,b,e)`.
pub fn tet<S: Field>(
    a: u32,
    b: u32,
    e: u32,
    c: u32,
    d_lbl: u32,
    f: u32,
    d: &S,
    level: Option<u32>,
) -> Result<S, QError> {
    check_admissible(a, b, e, level)?;
    check_admissible(c, d_lbl, e, level)?;
    check_admissible(b, c, f, level)?;
    check_admissible(a, d_lbl, f, level)?;
    let (a, b, e, c, dd, f) = (a as i64, b as i64, e as i64, c as i64, d_lbl as i64, f as i64);
    let a_vals = [
        (a + b + e) / 2,
        (c + dd + e) / 2,
        (b + c + f) / 2,
        (a + dd + f) / 2,
    ];
    let b_vals = [(a + b + c + dd) / 2, (a + c + e + f) / 2, (b + dd + e + f) / 2];
    let m = *a_vals.iter().max().unwrap();
    let mm = *b_vals.iter().min().unwrap();

    let mut big_e = S::one();
    for lbl in [a, b, c, dd, e, f] {
        big_e = big_e.mul(&qfact_raw(d, lbl));
    }
    let mut big_g = S::one();
    for &bj in &b_vals {
        for &ai in &a_vals {
            big_g = big_g.mul(&qfact_raw(d, bj - ai));
        }
    }
    let mut sum = S::zero();
    let mut s = m;
    while s <= mm {
        let mut den = S::one();
        for &ai in &a_vals {
            den = den.mul(&qfact_raw(d, s - ai));
        }
        for &bj in &b_vals {
            den = den.mul(&qfact_raw(d, bj - s));
        }
        let term = qfact_raw(d, s + 1).div(&den);
        sum = if s % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        s += 1;
    }
    Ok(big_g.div(&big_e).mul(&sum))
}

pub fn tet_at(
    a: u32,
    b: u32,
    e: u32,
    c: u32,
    d_lbl: u32,
    f: u32,
    params: &RootParams,
) -> Result<Complex64, QError> {
    tet(a, b, e, c, d_lbl, f, &params.d, Some(params.r))
}

/// Twist coefficient
/// `λ^{ab}_c = (-1)^{(a+b-c)/2} A^{(a(a+2) + b(b+2) - c(c+2))/2}`;
/// the conjugate flag negates the exponent of `A`.
///
/// Under this crate's calibration a positive kink on a strand carrying the
/// vertex `(a, b; c)` contributes `λ^{ab}_c`, a negative kink `λ̄^{ab}_c`.
pub fn lambda_twist(
    a: u32,
    b: u32,
    c: u32,
    params: &RootParams,
    conjugate: bool,
) -> Result<Complex64, QError> {
    check_admissible(a, b, c, Some(params.r))?;
    let (ai, bi, ci) = (a as i64, b as i64, c as i64);
    let half_parity = (ai + bi - ci) / 2;
    let exp = (ai * (ai + 2) + bi * (bi + 2) - ci * (ci + 2)) / 2;
    let exp = if conjugate { -exp } else { exp };
    let v = cpow(params.a, exp);
    Ok(if half_parity % 2 == 0 { v } else { -v })
}

/// Fusion weight `C_i = Δ_i / θ(a, b, i)`.
pub fn fusion_coeff(a: u32, b: u32, i: u32, params: &RootParams) -> Result<Complex64, QError> {
    check_admissible(a, b, i, Some(params.r))?;
    Ok(delta_at(params, i as i64) / theta_at(a, b, i, params)?)
}

/// Recoupling weight carrying the H-shaped graph with internal edge `j`
/// (vertices `(a,d,j)` and `(b,c,j)`) onto the I-shaped graph with internal
/// edge `i` (vertices `(a,b,i)` and `(c,d,i)`):
///
/// `G_i = Tet[a b i; c d j] Δ_i / (θ(a,b,i) θ(c,d,i))`.
///
/// With `j = 0` (forcing `d = a`, `c = b`) this is the fusion weight.
pub fn recoupling_coeff(
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    i: u32,
    j: u32,
    params: &RootParams,
) -> Result<Complex64, QError> {
    let t = tet_at(a, b, i, c, d, j, params)?;
    let denom = theta_at(a, b, i, params)? * theta_at(c, d, i, params)?;
    Ok(t * delta_at(params, i as i64) / denom)
}

/// Inverse recoupling weight, I-graph back to H-graph:
/// `G'_j = Tet[a b i; c d j] Δ_j / (θ(a,d,j) θ(b,c,j))`.
pub fn recoupling_coeff_inverse(
    a: u32,
    b: u32,
    c: u32,
    d: u32,
    i: u32,
    j: u32,
    params: &RootParams,
) -> Result<Complex64, QError> {
    let t = tet_at(a, b, i, c, d, j, params)?;
    let denom = theta_at(a, d, j, params)? * theta_at(b, c, j, params)?;
    Ok(t * delta_at(params, j as i64) / denom)
}

/// Crossing-expansion weight `X_i = Δ_i λ^{ab}_i / θ(a, b, i)`; `conjugate`
/// selects the twist direction (`true` expands a positive crossing under the
/// calibrated bracket orientation).
pub fn crossing_coeff(
    a: u32,
    b: u32,
    i: u32,
    params: &RootParams,
    conjugate: bool,
) -> Result<Complex64, QError> {
    check_admissible(a, b, i, Some(params.r))?;
    let lam = lambda_twist(a, b, i, params, conjugate)?;
    Ok(delta_at(params, i as i64) * lam / theta_at(a, b, i, params)?)
}

/// Coefficient collapsing a theta bead on a `c`-colored strand:
/// `θ(a,b,c) / Δ_c`.
pub fn bead_removal_coeff(a: u32, b: u32, c: u32, params: &RootParams) -> Result<Complex64, QError> {
    check_admissible(a, b, c, Some(params.r))?;
    let dc = delta_at(params, c as i64);
    if dc.norm() < params.tolerance {
        return Err(QError::Inadmissible { a, b, c });
    }
    Ok(theta_at(a, b, c, params)? / dc)
}

/// Which worked example to evaluate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExampleVariant {
    /// Two positive kinks.
    K,
    /// Three positive kinks.
    KHat,
}

/// Reference value tables for the reduced graph `G'` of the worked examples:
/// entry `(a, i)` is the bracket of the reduced graph, zero at inadmissible
/// cells. Only levels 3 and 4 are tabulated.
pub fn g_prime_table(r: u32, a: u32, i: u32) -> Option<Complex64> {
    let params = RootParams::new(r);
    let d = params.d;
    let one = Complex64::new(1.0, 0.0);
    match r {
        3 => match (a, i) {
            (0, 0) => Some(one),
            (1, 0) => Some(d),
            (_, _) if a <= 1 && i <= 1 => Some(Complex64::new(0.0, 0.0)),
            _ => None,
        },
        4 => match (a, i) {
            (0, 0) => Some(one),
            (1, 0) => Some(d),
            (2, 0) => Some(d * d),
            (1, 2) => Some(d),
            (_, _) if a <= 2 && i <= 2 => Some(Complex64::new(0.0, 0.0)),
            _ => None,
        },
        _ => None,
    }
}

/// The worked example sums over the tabulated `⟨G'⟩` constants:
///
/// `⟨K^ω⟩  = Σ_{(a,a,i) admissible} Δ_i² (λ^{aa}_i)² ⟨G'(a,i)⟩ / θ(a,a,i)`
///
/// with an extra factor `λ^{aa}_0` per term for the variant with the third
/// kink. Supported at `r = 3` and `r = 4` where the tables are available.
pub fn example_sums(variant: ExampleVariant, r: u32) -> Result<Complex64, QError> {
    example_sums_with_twist(variant, r, false)
}

/// As [`example_sums`] but with the twist direction as a knob; the
/// calibration report uses this to separate the two pairings.
pub fn example_sums_with_twist(
    variant: ExampleVariant,
    r: u32,
    conjugate: bool,
) -> Result<Complex64, QError> {
    if r != 3 && r != 4 {
        return Err(QError::FactorialRange { m: r as i64, r: Some(r) });
    }
    let params = RootParams::new(r);
    let max = params.max_color();
    let mut total = Complex64::new(0.0, 0.0);
    for a in 0..=max {
        for i in 0..=max {
            if !admissible(a, a, i, Some(r)) {
                continue;
            }
            let g = g_prime_table(r, a, i).expect("table covers admissible cells");
            let di = delta_at(&params, i as i64);
            let lam = lambda_twist(a, a, i, &params, conjugate)?;
            let mut term = di * di * lam * lam * g / theta_at(a, a, i, &params)?;
            if variant == ExampleVariant::KHat {
                term *= lambda_twist(a, a, 0, &params, conjugate)?;
            }
            total += term;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::delta_generic;
    use crate::poly::{Laurent, RationalFn};

    fn close(x: Complex64, y: Complex64) -> bool {
        (x - y).norm() < 1e-9
    }

    #[test]
    fn admissibility_examples() {
        assert!(admissible(0, 0, 0, Some(3)));
        assert!(!admissible(1, 1, 1, None));
        assert!(!admissible(1, 1, 2, Some(3)));
        assert!(admissible(1, 1, 2, Some(4)));
        assert!(!admissible(0, 0, 2, None));
    }

    #[test]
    fn theta_values() {
        let p = RootParams::new(5);
        assert!(close(theta_at(0, 0, 0, &p).unwrap(), Complex64::new(1.0, 0.0)));
        assert!(close(theta_at(1, 1, 0, &p).unwrap(), delta_at(&p, 1)));
        for a in 0..=3 {
            assert!(close(theta_at(a, a, 0, &p).unwrap(), delta_at(&p, a as i64)));
        }
        assert!(theta_at(1, 0, 0, &p).is_err());
        // generic: θ(1,1,0) = Δ_1 exactly
        let d = RationalFn::from_poly(Laurent::d());
        assert_eq!(
            theta(1, 1, 0, &d, None).unwrap(),
            RationalFn::from_poly(delta_generic(1))
        );
    }

    #[test]
    fn theta_symmetric() {
        let p = RootParams::new(6);
        let t = |a, b, c| theta_at(a, b, c, &p).unwrap();
        let base = t(2, 3, 1);
        for &(a, b, c) in &[(2, 3, 1), (3, 2, 1), (1, 2, 3), (1, 3, 2), (2, 1, 3), (3, 1, 2)] {
            assert!(close(t(a, b, c), base));
        }
    }

    #[test]
    fn tet_anchors() {
        let p = RootParams::new(6);
        assert!(close(tet_at(0, 0, 0, 0, 0, 0, &p).unwrap(), Complex64::new(1.0, 0.0)));
        // Tet[a b e; b a 0] = θ(a, b, e)
        for (a, b, e) in [(1u32, 1u32, 0u32), (1, 1, 2), (2, 2, 2), (2, 1, 1), (2, 2, 0)] {
            if admissible(a, b, e, Some(6)) {
                assert!(close(
                    tet_at(a, b, e, b, a, 0, &p).unwrap(),
                    theta_at(a, b, e, &p).unwrap()
                ));
            }
        }
        let p4 = RootParams::new(4);
        // Tet[1 1 0; 1 1 0] = θ(1,1,0) = -sqrt(2) at r = 4
        assert!(close(
            tet_at(1, 1, 0, 1, 1, 0, &p4).unwrap(),
            Complex64::new(-libm::sqrt(2.0), 0.0)
        ));
    }

    #[test]
    fn lambda_values() {
        let p = RootParams::new(5);
        assert!(close(lambda_twist(0, 0, 0, &p, false).unwrap(), Complex64::new(1.0, 0.0)));
        let expect = -cpow(p.a, 3);
        assert!(close(lambda_twist(1, 1, 0, &p, false).unwrap(), expect));
        let expect_bar = -cpow(p.a, -3);
        assert!(close(lambda_twist(1, 1, 0, &p, true).unwrap(), expect_bar));
        // unit modulus pairing
        for (a, b, c) in [(1u32, 1u32, 2u32), (2, 2, 0), (2, 1, 1)] {
            let l = lambda_twist(a, b, c, &p, false).unwrap();
            let lbar = lambda_twist(a, b, c, &p, true).unwrap();
            assert!(close(l * lbar, Complex64::new(1.0, 0.0)));
        }
    }

    #[test]
    fn fusion_values() {
        let p = RootParams::new(5);
        assert!(close(fusion_coeff(0, 0, 0, &p).unwrap(), Complex64::new(1.0, 0.0)));
        let c = fusion_coeff(1, 1, 0, &p).unwrap();
        assert!(close(c, Complex64::new(1.0, 0.0) / delta_at(&p, 1)));
        // completeness: Σ C_i θ(a,b,i) = Σ Δ_i over admissible i
        for (a, b) in [(1u32, 1u32), (2, 1), (2, 2)] {
            let mut lhs = Complex64::new(0.0, 0.0);
            let mut rhs = Complex64::new(0.0, 0.0);
            for i in 0..=p.max_color() {
                if admissible(a, b, i, Some(p.r)) {
                    lhs += fusion_coeff(a, b, i, &p).unwrap() * theta_at(a, b, i, &p).unwrap();
                    rhs += delta_at(&p, i as i64);
                }
            }
            assert!(close(lhs, rhs));
        }
    }

    #[test]
    fn recoupling_fusion_reduction() {
        let p = RootParams::new(5);
        for (a, b) in [(1u32, 1u32), (2, 1), (2, 2), (1, 2)] {
            for i in 0..=p.max_color() {
                if admissible(a, b, i, Some(p.r)) {
                    let g = recoupling_coeff(a, b, b, a, i, 0, &p).unwrap();
                    let f = fusion_coeff(a, b, i, &p).unwrap();
                    assert!(close(g, f), "a={} b={} i={}", a, b, i);
                }
            }
        }
    }

    #[test]
    fn recoupling_orthogonality() {
        let p = RootParams::new(5);
        let labels = [0u32, 1, 2];
        for &a in &labels {
            for &b in &labels {
                for &c in &labels {
                    for &d in &labels {
                        let js: alloc::vec::Vec<u32> = (0..=p.max_color())
                            .filter(|&j| {
                                admissible(a, d, j, Some(p.r)) && admissible(b, c, j, Some(p.r))
                            })
                            .collect();
                        let is: alloc::vec::Vec<u32> = (0..=p.max_color())
                            .filter(|&i| {
                                admissible(a, b, i, Some(p.r)) && admissible(c, d, i, Some(p.r))
                            })
                            .collect();
                        if js.is_empty() || is.is_empty() {
                            continue;
                        }
                        for &j1 in &js {
                            for &j2 in &js {
                                let mut sum = Complex64::new(0.0, 0.0);
                                for &i in &is {
                                    sum += recoupling_coeff(a, b, c, d, i, j1, &p).unwrap()
                                        * recoupling_coeff_inverse(a, b, c, d, i, j2, &p).unwrap();
                                }
                                let expect = if j1 == j2 { 1.0 } else { 0.0 };
                                assert!(
                                    close(sum, Complex64::new(expect, 0.0)),
                                    "orthogonality failed at a={} b={} c={} d={} j1={} j2={} sum={}",
                                    a, b, c, d, j1, j2, sum
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn crossing_coeff_values() {
        let p = RootParams::new(5);
        assert!(close(
            crossing_coeff(0, 0, 0, &p, false).unwrap(),
            Complex64::new(1.0, 0.0)
        ));
        let x = crossing_coeff(1, 1, 0, &p, false).unwrap();
        let expect = lambda_twist(1, 1, 0, &p, false).unwrap() / delta_at(&p, 1);
        assert!(close(x, expect));
    }

    #[test]
    fn bead_values() {
        let p = RootParams::new(5);
        assert!(close(
            bead_removal_coeff(0, 0, 0, &p).unwrap(),
            Complex64::new(1.0, 0.0)
        ));
        assert!(close(bead_removal_coeff(1, 1, 0, &p).unwrap(), delta_at(&p, 1)));
    }

    #[test]
    fn example_sums_reference_values() {
        let k3 = example_sums(ExampleVariant::K, 3).unwrap();
        assert!(k3.norm() < 1e-9, "K at level 3 is zero, got {}", k3);
        let kh3 = example_sums(ExampleVariant::KHat, 3).unwrap();
        assert!(close(kh3, Complex64::new(1.0, 1.0)));
        let k4 = example_sums(ExampleVariant::K, 4).unwrap();
        assert!((k4 - Complex64::new(1.29289, 1.70711)).norm() < 1e-4, "got {}", k4);
        let kh4 = example_sums(ExampleVariant::KHat, 4).unwrap();
        assert!((kh4 - Complex64::new(1.23044, 0.92388)).norm() < 1e-4, "got {}", kh4);
        assert!(example_sums(ExampleVariant::K, 5).is_err());
    }
}
