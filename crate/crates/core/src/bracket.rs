//! The generalized bracket state sum, evaluated by enumerating smoothings
//! and counting loops with union-find. Virtual crossings are transparent to
//! loop counting, so the sum only sees the stored classical crossings.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::codec::{Role, VirtualLinkDiagram};
use crate::poly::{Laurent, Ring, RootParams};
use num_complex::Complex64;

/// Default cap on classical crossings for a single state-sum evaluation.
pub const DEFAULT_CROSSING_BUDGET: usize = 36;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    BudgetExceeded { crossings: usize, budget: usize },
    ColorOutOfRange { color: u32, max: u32 },
    ColorCountMismatch { colors: usize, components: usize },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::BudgetExceeded { crossings, budget } => write!(
                f,
                "diagram has {} classical crossings, over the evaluation budget {}",
                crossings, budget
            ),
            EvalError::ColorOutOfRange { color, max } => {
                write!(f, "color {} exceeds the admissible maximum {}", color, max)
            }
            EvalError::ColorCountMismatch { colors, components } => write!(
                f,
                "{} colors supplied for {} components",
                colors, components
            ),
        }
    }
}

/// Coefficient context for a bracket evaluation.
#[derive(Clone, Debug)]
pub struct BracketCtx<S: Ring> {
    pub a: S,
    pub a_inv: S,
    pub d: S,
}

impl BracketCtx<Laurent> {
    pub fn generic() -> Self {
        BracketCtx {
            a: Laurent::a(),
            a_inv: Laurent::a_inv(),
            d: Laurent::d(),
        }
    }
}

impl BracketCtx<crate::poly::RationalFn> {
    pub fn generic_field() -> Self {
        use crate::poly::RationalFn;
        BracketCtx {
            a: RationalFn::from_poly(Laurent::a()),
            a_inv: RationalFn::from_poly(Laurent::a_inv()),
            d: RationalFn::from_poly(Laurent::d()),
        }
    }
}

impl BracketCtx<Complex64> {
    pub fn at_root(params: &RootParams) -> Self {
        BracketCtx {
            a: params.a,
            a_inv: Complex64::new(1.0, 0.0) / params.a,
            d: params.d,
        }
    }
}

/// A diagram prepared for state-sum evaluation: classical crossings with
/// four endpoint slots each, plus fixed endpoint pairings (strand arcs and
/// any splice joints), plus closed curves that touch no crossing.
#[derive(Clone, Debug, Default)]
pub struct StateDiagram {
    signs: Vec<i8>,
    /// Per crossing: `[over_in, over_out, under_in, under_out]` endpoint ids.
    ports: Vec<[u32; 4]>,
    /// Fixed pairings. Every endpoint carries total degree 2 once the two
    /// state-dependent pairs per crossing are added.
    links: Vec<(u32, u32)>,
    free_loops: u32,
    n_endpoints: u32,
}

const OVER_IN: usize = 0;
const OVER_OUT: usize = 1;
const UNDER_IN: usize = 2;
const UNDER_OUT: usize = 3;

impl StateDiagram {
    pub fn new() -> Self {
        StateDiagram::default()
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn add_crossing(&mut self, sign: i8) -> usize {
        let base = self.n_endpoints;
        self.n_endpoints += 4;
        self.ports.push([base, base + 1, base + 2, base + 3]);
        self.signs.push(sign);
        self.signs.len() - 1
    }

    /// A loose endpoint not attached to any crossing (cut points).
    pub fn add_free_endpoint(&mut self) -> u32 {
        let e = self.n_endpoints;
        self.n_endpoints += 1;
        e
    }

    pub fn add_link(&mut self, a: u32, b: u32) {
        self.links.push((a, b));
    }

    pub fn add_free_loop(&mut self) {
        self.free_loops += 1;
    }

    /// Endpoint where crossing `c` receives its incoming strand for `role`.
    pub fn port_in(&self, c: usize, role: Role) -> u32 {
        match role {
            Role::Over => self.ports[c][OVER_IN],
            Role::Under => self.ports[c][UNDER_IN],
        }
    }

    pub fn port_out(&self, c: usize, role: Role) -> u32 {
        match role {
            Role::Over => self.ports[c][OVER_OUT],
            Role::Under => self.ports[c][UNDER_OUT],
        }
    }

    /// Walk every smoothing state, reporting `(#α - #β, loop count)`. Loop
    /// counting treats strands as transparent at virtual crossings, which
    /// never enter the structure at all.
    fn for_each_state(
        &self,
        budget: usize,
        mut visit: impl FnMut(i64, u32),
    ) -> Result<(), EvalError> {
        let nc = self.signs.len();
        if nc > budget {
            return Err(EvalError::BudgetExceeded { crossings: nc, budget });
        }

        // Contract all fixed links once.
        let n = self.n_endpoints as usize;
        let mut uf = UnionFind::new(n);
        for &(a, b) in &self.links {
            uf.union(a as usize, b as usize);
        }
        // Components with no crossing port are already-closed loops.
        let mut has_port = alloc::vec![false; n];
        for p in &self.ports {
            for &e in p {
                has_port[uf.find(e as usize)] = true;
            }
        }
        let mut base_loops = self.free_loops;
        let mut root_seen = alloc::vec![false; n];
        for e in 0..n {
            let r = uf.find(e);
            if !root_seen[r] {
                root_seen[r] = true;
                if !has_port[r] {
                    base_loops += 1;
                }
            }
        }
        // Compact ids for port-bearing classes.
        let mut compact = alloc::vec![u32::MAX; n];
        let mut k = 0u32;
        let mut port_class = Vec::with_capacity(nc);
        for p in &self.ports {
            let mut slots = [0u32; 4];
            for (slot, &e) in p.iter().enumerate() {
                let r = uf.find(e as usize);
                if compact[r] == u32::MAX {
                    compact[r] = k;
                    k += 1;
                }
                slots[slot] = compact[r];
            }
            port_class.push(slots);
        }

        let mut scratch = SmallUf::new(k as usize);
        let states: u64 = 1u64 << nc;
        for s in 0..states {
            scratch.reset();
            let mut alpha_minus_beta: i64 = 0;
            for (c, pc) in port_class.iter().enumerate() {
                let beta = (s >> c) & 1 == 1;
                if beta {
                    alpha_minus_beta -= 1;
                } else {
                    alpha_minus_beta += 1;
                }
                // α is the oriented smoothing at positive crossings and the
                // disoriented one at negative crossings; β the other way.
                let oriented = (self.signs[c] > 0) ^ beta;
                if oriented {
                    scratch.union(pc[OVER_IN], pc[UNDER_OUT]);
                    scratch.union(pc[UNDER_IN], pc[OVER_OUT]);
                } else {
                    scratch.union(pc[OVER_IN], pc[UNDER_IN]);
                    scratch.union(pc[OVER_OUT], pc[UNDER_OUT]);
                }
            }
            visit(alpha_minus_beta, scratch.components() + base_loops);
        }
        Ok(())
    }

    #[cfg(test)]
    fn loop_census(&self, budget: usize) -> Result<Vec<(i64, u32)>, EvalError> {
        let mut out = Vec::new();
        self.for_each_state(budget, |c, l| out.push((c, l)))?;
        Ok(out)
    }

    /// `Σ_s d^{|s|} A^{c(s)}` — one `d` per closed curve. Empty diagram: 1.
    pub fn bracket_unreduced<S: Ring>(
        &self,
        ctx: &BracketCtx<S>,
        budget: usize,
    ) -> Result<S, EvalError> {
        self.state_sum(ctx, budget, 0)
    }

    /// `Σ_s d^{|s|-1} A^{c(s)}` — the unknot evaluates to 1. Empty diagram: 1.
    pub fn bracket_reduced<S: Ring>(
        &self,
        ctx: &BracketCtx<S>,
        budget: usize,
    ) -> Result<S, EvalError> {
        if self.n_endpoints == 0 && self.free_loops == 0 {
            return Ok(S::one());
        }
        self.state_sum(ctx, budget, 1)
    }

    fn state_sum<S: Ring>(
        &self,
        ctx: &BracketCtx<S>,
        budget: usize,
        drop_loops: u32,
    ) -> Result<S, EvalError> {
        let nc = self.signs.len() as i64;
        // A^{c(s)} has c ≡ nc (mod 2); index (c + nc) / 2
        let mut a_pows = Vec::with_capacity(nc as usize + 1);
        for i in 0..=nc {
            let e = 2 * i - nc;
            let p = if e >= 0 {
                ctx.a.pow(e as u32)
            } else {
                ctx.a_inv.pow((-e) as u32)
            };
            a_pows.push(p);
        }
        let mut d_pows: Vec<S> = alloc::vec![S::one()];
        let mut acc = S::zero();
        self.for_each_state(budget, |c, loops| {
            let l = loops.saturating_sub(drop_loops) as usize;
            while d_pows.len() <= l {
                let next = d_pows.last().unwrap().mul(&ctx.d);
                d_pows.push(next);
            }
            let idx = ((c + nc) / 2) as usize;
            acc = acc.add(&d_pows[l].mul(&a_pows[idx]));
        })?;
        Ok(acc)
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let gp = self.parent[self.parent[x] as usize];
            self.parent[x] = gp;
            x = gp as usize;
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb as u32;
        }
    }
}

/// Flat union-find reused across states.
struct SmallUf {
    parent: Vec<u32>,
    n: usize,
}

impl SmallUf {
    fn new(n: usize) -> Self {
        SmallUf {
            parent: (0..n as u32).collect(),
            n,
        }
    }
    fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
    }
    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }
    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra as usize] = rb;
        }
    }
    fn components(&mut self) -> u32 {
        let mut count = 0;
        for i in 0..self.n {
            if self.find(i as u32) == i as u32 {
                count += 1;
            }
        }
        count
    }
}

/// Build the state diagram of a plain (unspliced) virtual link diagram.
pub fn state_diagram(d: &VirtualLinkDiagram) -> StateDiagram {
    let ids = d.crossing_ids();
    let mut index = alloc::collections::BTreeMap::new();
    let mut sd = StateDiagram::new();
    for &id in &ids {
        let sign = d.crossing_sign(id).expect("validated diagram");
        let c = sd.add_crossing(sign);
        index.insert(id, c);
    }
    for comp in &d.components {
        if comp.is_empty() {
            sd.add_free_loop();
            continue;
        }
        let k = comp.len();
        for i in 0..k {
            let from = &comp[i];
            let to = &comp[(i + 1) % k];
            let a = sd.port_out(index[&from.id], from.role);
            let b = sd.port_in(index[&to.id], to.role);
            sd.add_link(a, b);
        }
    }
    sd
}

/// Reduced bracket `⟨K⟩` with exact Laurent coefficients.
pub fn bracket_reduced(d: &VirtualLinkDiagram) -> Result<Laurent, EvalError> {
    bracket_reduced_with(d, DEFAULT_CROSSING_BUDGET)
}

pub fn bracket_reduced_with(d: &VirtualLinkDiagram, budget: usize) -> Result<Laurent, EvalError> {
    state_diagram(d).bracket_reduced(&BracketCtx::generic(), budget)
}

/// Unreduced bracket (one `d` per loop) with exact Laurent coefficients.
pub fn bracket_unreduced(d: &VirtualLinkDiagram) -> Result<Laurent, EvalError> {
    bracket_unreduced_with(d, DEFAULT_CROSSING_BUDGET)
}

pub fn bracket_unreduced_with(
    d: &VirtualLinkDiagram,
    budget: usize,
) -> Result<Laurent, EvalError> {
    state_diagram(d).bracket_unreduced(&BracketCtx::generic(), budget)
}

/// Unreduced bracket evaluated at a root of unity.
pub fn bracket_unreduced_at(
    d: &VirtualLinkDiagram,
    params: &RootParams,
    budget: usize,
) -> Result<Complex64, EvalError> {
    state_diagram(d).bracket_unreduced(&BracketCtx::at_root(params), budget)
}

/// Writhe-normalized polynomial `f_K(A) = (-A)^{-3 w(K)} ⟨K⟩`, invariant
/// under all Reidemeister moves.
pub fn f_poly(d: &VirtualLinkDiagram) -> Result<Laurent, EvalError> {
    f_poly_with(d, DEFAULT_CROSSING_BUDGET)
}

pub fn f_poly_with(d: &VirtualLinkDiagram, budget: usize) -> Result<Laurent, EvalError> {
    let w = d.writhe();
    let br = bracket_reduced_with(d, budget)?;
    Ok(br.mul(&Laurent::neg_a_pow(-3 * w)))
}

/// The Jones polynomial in `t^{1/4}`-powers, from `f_K` via `A = t^{-1/4}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JonesPolynomial {
    /// exponent in quarter-powers of `t` -> coefficient
    pub quarter_terms: Laurent,
}

pub fn jones(d: &VirtualLinkDiagram) -> Result<JonesPolynomial, EvalError> {
    let f = f_poly(d)?;
    Ok(JonesPolynomial {
        quarter_terms: f.mirror(),
    })
}

impl fmt::Display for JonesPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.quarter_terms.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let terms: Vec<(i64, i128)> = self.quarter_terms.terms().collect();
        for &(e, c) in terms.iter().rev() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let var: String = if e == 0 {
                String::new()
            } else if e % 4 == 0 {
                if e / 4 == 1 {
                    String::from("t")
                } else {
                    alloc::format!("t^{}", e / 4)
                }
            } else if e % 2 == 0 {
                alloc::format!("t^{}/2", e / 2)
            } else {
                alloc::format!("t^{}/4", e)
            };
            if var.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag == 1 {
                write!(f, "{}", var)?;
            } else {
                write!(f, "{}{}", mag, var)?;
            }
        }
        Ok(())
    }
}
