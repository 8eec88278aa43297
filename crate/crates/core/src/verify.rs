//! The verification suite: one runner per acceptance criterion, shared by
//! the integration tests and the command-line `verify` subcommand. Each
//! criterion reports one line per check.
//!
//! Two checks are expected to fail and are marked `known_gap`: the level-4
//! reference values for the two example knots, and the 3-manifold group of
//! the hatted example. The published level-4 sums and the claimed trivial
//! 3-manifold group are mutually inconsistent for every Gauss code with at
//! most three classical crossings: the homology of the 3-manifold of a knot
//! is cyclic of order |writhe|, so the hatted knot needs writhe ±1, while
//! the published bracket sums force all three kinks positive (writhe 3).
//! The calibration report prints the full analysis.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::bracket::{self, DEFAULT_CROSSING_BUDGET};
use crate::codec::{builtin, VirtualLinkDiagram, BUILTIN_NAMES};
use crate::groups::{self, AbelianInvariants};
use crate::moves::{self, MoveKind};
use crate::nets;
use crate::poly::{
    delta_generic, format_complex, Laurent, RationalFn, Ring, RootParams,
};
use crate::recoupling::{self, ExampleVariant};
use crate::tangle::{self, BrauerDiagram, BrauerElement};
use crate::wrt::{self};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub checks: Vec<CheckResult>,
    /// Checks that are documented as unattainable; they still count as
    /// failures but carry an explanation.
    pub known_gap: bool,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let counts = format!(
            "{}/{}",
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        );
        format!("criterion {}: {} [{}] {}", self.id, status, counts, self.name)
    }
}

fn check(
    out: &mut Vec<CheckResult>,
    label: impl Into<String>,
    passed: bool,
    detail: impl Into<String>,
) {
    out.push(CheckResult { label: label.into(), passed, detail: detail.into() });
}

fn check_complex(
    out: &mut Vec<CheckResult>,
    label: impl Into<String>,
    actual: Complex64,
    expected: Complex64,
    tol: f64,
) {
    let passed = (actual - expected).norm() < tol;
    check(
        out,
        label,
        passed,
        format!("expected {}, got {}", format_complex(expected), format_complex(actual)),
    );
}

/// Criterion 1: published reference values through the state-sum pipeline.
pub fn criterion_1() -> CriterionReport {
    let mut checks = Vec::new();
    let k = builtin("paperK").unwrap();
    let khat = builtin("paperKhat").unwrap();
    for (label, r, normalized, expected) in wrt::reference_values() {
        let diagram = if label.contains("hat") { &khat } else { &k };
        let actual = if normalized {
            wrt::normalized_wrt_default(diagram, r).unwrap().normalized
        } else {
            wrt::unnormalized_wrt(diagram, &RootParams::new(r), DEFAULT_CROSSING_BUDGET).unwrap()
        };
        check_complex(&mut checks, label, actual, expected, 1e-4);
    }
    CriterionReport { id: 1, name: "reference-value regression", checks, known_gap: true }
}

/// Criterion 2: the same eight values from the tabulated constants and the
/// θ/λ/Δ formulas alone.
pub fn criterion_2() -> CriterionReport {
    let mut checks = Vec::new();
    for (label, r, normalized, expected) in wrt::reference_values() {
        let variant = if label.contains("hat") { ExampleVariant::KHat } else { ExampleVariant::K };
        let raw = recoupling::example_sums(variant, r).unwrap();
        let actual = if normalized {
            // both example knots carry one positive eigenvalue
            let mu = wrt::mu(r);
            raw * Complex64::new(mu * mu, 0.0) / wrt::alpha(r)
        } else {
            raw
        };
        check_complex(&mut checks, format!("tables: {}", label), actual, expected, 1e-4);
    }
    CriterionReport { id: 2, name: "table regression", checks, known_gap: false }
}

/// Criterion 3: normalization anchors.
pub fn criterion_3() -> CriterionReport {
    let mut checks = Vec::new();
    for r in 3..=6u32 {
        let z = wrt::normalized_wrt_default(&VirtualLinkDiagram::unknot(), r).unwrap();
        check_complex(
            &mut checks,
            format!("Z(unknot, {}) = 1", r),
            z.normalized,
            Complex64::new(1.0, 0.0),
            1e-9,
        );
    }
    for r in 3..=8u32 {
        let params = RootParams::new(r);
        let kink = builtin("kink+").unwrap();
        let raw = wrt::unnormalized_wrt(&kink, &params, DEFAULT_CROSSING_BUDGET).unwrap();
        let lhs = raw * Complex64::new(wrt::mu(r), 0.0);
        check_complex(
            &mut checks,
            format!("alpha = mu <U^w> at r = {}", r),
            lhs,
            wrt::alpha(r),
            1e-9,
        );
    }
    for r in [3u32, 4] {
        for name in BUILTIN_NAMES {
            let d = builtin(name).unwrap();
            let z = wrt::normalized_wrt_default(&d, r).unwrap().normalized;
            for kink in ["kink+", "kink-"] {
                let with_kink = d.disjoint_union(&builtin(kink).unwrap());
                let z2 = wrt::normalized_wrt_default(&with_kink, r).unwrap().normalized;
                check_complex(
                    &mut checks,
                    format!("Z({} u {}, {}) = Z({})", name, kink, r, name),
                    z2,
                    z,
                    1e-6,
                );
            }
        }
    }
    CriterionReport { id: 3, name: "normalization anchors", checks, known_gap: false }
}

/// Criterion 4: Jones-Wenzl projector identities, exact at generic `A`.
pub fn criterion_4() -> CriterionReport {
    let mut checks = Vec::new();
    let d = RationalFn::from_poly(Laurent::d());
    let projectors: Vec<BrauerElement<RationalFn>> = (0..=4)
        .map(|n| tangle::jw(n, &d, None).unwrap())
        .collect();
    for n in 1..=4usize {
        let t = &projectors[n];
        check(
            &mut checks,
            format!("T_{} idempotent", n),
            t.multiply(t, &d) == *t,
            "exact comparison in the planar diagram basis",
        );
        let mut kills = true;
        for i in 1..n {
            let u = BrauerElement::from_diagram(BrauerDiagram::cup_cap(n, i));
            if !t.multiply(&u, &d).is_zero() {
                kills = false;
            }
        }
        check(&mut checks, format!("T_{} U_i = 0", n), kills, "all cup-cap generators");
        let mut absorbs = true;
        for m in 1..=n {
            // extend T_m by free strands to n
            let mut tm = projectors[m].clone();
            for _ in m..n {
                tm = tm.tensor(&BrauerElement::identity(1));
            }
            if t.multiply(&tm, &d) != *t {
                absorbs = false;
            }
        }
        check(&mut checks, format!("T_{} absorbs lower projectors", n), absorbs, "T_n T_m = T_n");
        let closure = t.closure(&d);
        check(
            &mut checks,
            format!("closure(T_{}) = Delta_{}", n, n),
            closure == RationalFn::from_poly(delta_generic(n as i64)),
            "exact Laurent identity",
        );
    }
    CriterionReport { id: 4, name: "projector suite", checks, known_gap: false }
}

/// Criterion 5: the virtual-swap closure product formula, exact and at
/// roots of unity, plus nonvanishing.
pub fn criterion_5() -> CriterionReport {
    let mut checks = Vec::new();
    let d = RationalFn::from_poly(Laurent::d());
    for n in 2..=5usize {
        let value = tangle::lemma_product(n, &d, None).unwrap();
        let formula = tangle::lemma_product_formula(n, &d);
        check(
            &mut checks,
            format!("closure(T_{} E) product formula, generic", n),
            value == formula,
            "exact rational-function identity",
        );
        check(
            &mut checks,
            format!("closure(T_{} E) nonzero, generic", n),
            !value.is_zero(),
            "the projector does not annihilate the virtual swap",
        );
    }
    for r in 5..=8u32 {
        let params = RootParams::new(r);
        for n in 2..=5usize {
            if n as u32 > r - 1 {
                check(
                    &mut checks,
                    format!("closure(T_{} E) at r = {}", n, r),
                    true,
                    "skipped: projector undefined at this level",
                );
                continue;
            }
            let value = tangle::lemma_product(n, &params.d, Some(r)).unwrap();
            let formula = tangle::lemma_product_formula(n, &params.d);
            check_complex(
                &mut checks,
                format!("closure(T_{} E) at r = {}", n, r),
                value,
                formula,
                1e-9,
            );
        }
    }
    CriterionReport { id: 5, name: "virtual swap closure formula", checks, known_gap: false }
}

/// Criterion 6: closed-form theta and tetrahedral values against direct
/// network expansion.
pub fn criterion_6() -> CriterionReport {
    let mut checks = Vec::new();
    for r in 3..=6u32 {
        let params = RootParams::new(r);
        let max = 2u32.min(params.max_color());
        let mut theta_checked = 0;
        let mut theta_ok = true;
        let mut worst = 0.0f64;
        for a in 0..=max {
            for b in 0..=max {
                for c in 0..=max {
                    if !recoupling::admissible(a, b, c, Some(r)) {
                        continue;
                    }
                    let formula = recoupling::theta_at(a, b, c, &params).unwrap();
                    let net = nets::theta_net(a, b, c, &params).unwrap();
                    let err = (formula - net).norm();
                    if err > worst {
                        worst = err;
                    }
                    if err > 1e-9 {
                        theta_ok = false;
                    }
                    theta_checked += 1;
                }
            }
        }
        check(
            &mut checks,
            format!("theta formula vs nets, r = {}", r),
            theta_ok && theta_checked > 0,
            format!("{} admissible triples, worst error {:e}", theta_checked, worst),
        );
        let mut tet_checked = 0;
        let mut tet_ok = true;
        let mut worst = 0.0f64;
        for a in 0..=max {
            for b in 0..=max {
                for e in 0..=max {
                    for c in 0..=max {
                        for dd in 0..=max {
                            for f in 0..=max {
                                let adm = recoupling::admissible(a, b, e, Some(r))
                                    && recoupling::admissible(c, dd, e, Some(r))
                                    && recoupling::admissible(b, c, f, Some(r))
                                    && recoupling::admissible(a, dd, f, Some(r));
                                if !adm {
                                    continue;
                                }
                                let formula =
                                    recoupling::tet_at(a, b, e, c, dd, f, &params).unwrap();
                                let net = nets::tet_net(a, b, e, c, dd, f, &params).unwrap();
                                let err = (formula - net).norm();
                                if err > worst {
                                    worst = err;
                                }
                                if err > 1e-9 {
                                    tet_ok = false;
                                }
                                tet_checked += 1;
                            }
                        }
                    }
                }
            }
        }
        check(
            &mut checks,
            format!("tet formula vs nets, r = {}", r),
            tet_ok && tet_checked > 0,
            format!("{} admissible label sets, worst error {:e}", tet_checked, worst),
        );
    }
    CriterionReport { id: 6, name: "net formula oracle equivalence", checks, known_gap: false }
}

/// Criterion 7: invariance under seeded random move walks.
pub fn criterion_7() -> CriterionReport {
    let mut checks = Vec::new();
    let framed = [MoveKind::R2Add, MoveKind::R2Del, MoveKind::R3];
    let kirby = [
        MoveKind::R2Add,
        MoveKind::R2Del,
        MoveKind::R3,
        MoveKind::KirbyAdd,
        MoveKind::KirbyDel,
        MoveKind::HandleSlide,
    ];
    let mut walks = 0usize;
    let mut framed_ok = true;
    let mut kirby_z_ok = true;
    let mut kirby_group_ok = true;
    let mut framed_detail = String::new();
    let mut kirby_detail = String::new();
    for name in BUILTIN_NAMES {
        let d = builtin(name).unwrap();
        for seed in 0..3u64 {
            let walked = moves::random_walk(&d, &framed, 5, seed * 7 + 1, 10);
            walks += 1;
            let before = bracket::bracket_reduced(&d).unwrap();
            let after = bracket::bracket_reduced(&walked).unwrap();
            if before != after {
                framed_ok = false;
                framed_detail = format!("{} seed {} changed the bracket", name, seed);
            }
        }
        for seed in 0..3u64 {
            let walked = moves::random_walk(&d, &kirby, 5, seed * 13 + 2, 14);
            walks += 1;
            let z0 = wrt::normalized_wrt_default(&d, 3).unwrap().normalized;
            let z1 = wrt::normalized_wrt_default(&walked, 3).unwrap().normalized;
            if (z0 - z1).norm() > 1e-6 {
                kirby_z_ok = false;
                kirby_detail = format!(
                    "{} seed {}: Z changed {} -> {}",
                    name,
                    seed,
                    format_complex(z0),
                    format_complex(z1)
                );
            }
            let g0 = groups::abelianization(&groups::three_manifold_group(&d));
            let g1 = groups::abelianization(&groups::three_manifold_group(&walked));
            if g0 != g1 {
                kirby_group_ok = false;
                kirby_detail = format!("{} seed {}: homology changed {} -> {}", name, seed, g0, g1);
            }
        }
    }
    check(
        &mut checks,
        format!("framed walks preserve the bracket ({} walks)", walks / 2),
        framed_ok,
        if framed_ok { String::from("exact equality at generic A") } else { framed_detail },
    );
    check(
        &mut checks,
        format!("Kirby walks preserve Z at r = 3 ({} walks)", walks / 2),
        kirby_z_ok,
        if kirby_z_ok { String::from("tolerance 1e-6") } else { kirby_detail.clone() },
    );
    check(
        &mut checks,
        "Kirby walks preserve 3-manifold homology",
        kirby_group_ok,
        if kirby_group_ok { String::from("Smith normal form comparison") } else { kirby_detail },
    );
    CriterionReport { id: 7, name: "invariance walks", checks, known_gap: false }
}

/// Criterion 8: group-theoretic anchors.
pub fn criterion_8() -> CriterionReport {
    let mut checks = Vec::new();
    let cases: [(&str, AbelianInvariants); 4] = [
        ("unknot", AbelianInvariants::free(1)),
        ("kink+", AbelianInvariants::trivial()),
        ("kink-", AbelianInvariants::trivial()),
        ("paperK", AbelianInvariants::cyclic(2)),
    ];
    for (name, expected) in cases {
        let d = builtin(name).unwrap();
        let got = groups::abelianization(&groups::three_manifold_group(&d));
        check(
            &mut checks,
            format!("3-manifold homology of {}", name),
            got == expected,
            format!("expected {}, got {}", expected, got),
        );
    }
    {
        let d = builtin("paperKhat").unwrap();
        let got = groups::abelianization(&groups::three_manifold_group(&d));
        let expected = AbelianInvariants::trivial();
        check(
            &mut checks,
            "3-manifold homology of paperKhat",
            got == expected,
            format!(
                "expected {}, got {} — the homology of a knot's 3-manifold is cyclic of \
                 order |writhe|, and the published bracket sums force writhe 3",
                expected, got
            ),
        );
    }
    for name in ["paperK", "paperKhat"] {
        let d = builtin(name).unwrap();
        let got = groups::abelianization(&groups::wirtinger(&d));
        check(
            &mut checks,
            format!("fundamental group abelianization of {}", name),
            got == AbelianInvariants::free(1),
            format!("got {}", got),
        );
    }
    CriterionReport { id: 8, name: "group anchors", checks, known_gap: true }
}

/// Criterion 9: bracket anchors.
pub fn criterion_9() -> CriterionReport {
    let mut checks = Vec::new();
    let unknot = bracket::bracket_reduced(&builtin("unknot").unwrap()).unwrap();
    check(&mut checks, "bracket(unknot) = 1", unknot == Laurent::one(), format!("got {}", unknot));
    let kink = bracket::bracket_reduced(&builtin("kink+").unwrap()).unwrap();
    check(
        &mut checks,
        "bracket(kink+) = -A^3",
        kink == Laurent::monomial(3, -1),
        format!("got {}", kink),
    );
    let hopf = bracket::bracket_reduced(&builtin("hopf+").unwrap()).unwrap();
    let expected = Laurent::monomial(4, -1).add(&Laurent::monomial(-4, -1));
    check(
        &mut checks,
        "bracket(hopf+) = -A^4 - A^-4",
        hopf == expected,
        format!("got {}", hopf),
    );
    // f is strictly invariant under kinking, exactly
    let mut f_ok = true;
    for name in ["unknot", "vtrefoil", "trefoil", "hopf+"] {
        let d = builtin(name).unwrap();
        let f0 = bracket::f_poly(&d).unwrap();
        for sign in [1i8, -1] {
            let kinked =
                moves::apply(&d, &moves::MoveSite::R1Add { component: 0, position: 0, sign })
                    .unwrap();
            if bracket::f_poly(&kinked).unwrap() != f0 {
                f_ok = false;
            }
        }
    }
    check(&mut checks, "f invariant under kinking", f_ok, "exact Laurent equality");
    CriterionReport { id: 9, name: "bracket anchors", checks, known_gap: false }
}

/// Run the whole suite.
pub fn run_all() -> Vec<CriterionReport> {
    alloc::vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
}
