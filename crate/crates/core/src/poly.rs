//! Exact Laurent polynomials in the bracket variable `A`, rational functions
//! over them, evaluation contexts at roots of unity, and the quantum-integer
//! ladder `Δ_n`, `[n]`, `[n]!`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

/// Minimal ring interface shared by exact and numeric coefficient types.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Rings with division; needed by the Wenzl recursion and net formulas.
pub trait Field: Ring {
    fn div(&self, other: &Self) -> Self;
}

/// Integer-coefficient Laurent polynomial in `A`.
///
/// Exponent -> coefficient, zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Laurent {
    terms: BTreeMap<i64, i128>,
}

impl Laurent {
    pub fn new() -> Self {
        Laurent { terms: BTreeMap::new() }
    }

    /// The monomial `c * A^e`.
    pub fn monomial(e: i64, c: i128) -> Self {
        let mut t = BTreeMap::new();
        if c != 0 {
            t.insert(e, c);
        }
        Laurent { terms: t }
    }

    pub fn constant(c: i128) -> Self {
        Self::monomial(0, c)
    }

    /// The variable `A`.
    pub fn a() -> Self {
        Self::monomial(1, 1)
    }

    /// `A^{-1}`.
    pub fn a_inv() -> Self {
        Self::monomial(-1, 1)
    }

    /// The loop value `d = -A^2 - A^{-2}`.
    pub fn d() -> Self {
        let mut t = BTreeMap::new();
        t.insert(2, -1);
        t.insert(-2, -1);
        Laurent { terms: t }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i128)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> i128 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    fn insert_add(&mut self, e: i64, c: i128) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    /// Multiply by the monomial `c * A^e`.
    pub fn mul_monomial(&self, e: i64, c: i128) -> Self {
        if c == 0 {
            return Laurent::new();
        }
        Laurent {
            terms: self.terms.iter().map(|(&k, &v)| (k + e, v * c)).collect(),
        }
    }

    /// `(-A)^k`.
    pub fn neg_a_pow(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(k, sign)
    }

    /// Substitute a complex number for `A`.
    pub fn eval(&self, a: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&e, &c) in &self.terms {
            acc += cpow(a, e) * (c as f64);
        }
        acc
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Exponent substitution `A -> A^{-1}`.
    pub fn mirror(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Content = gcd of coefficients (non-negative).
    fn content(&self) -> i128 {
        let mut g: i128 = 0;
        for &c in self.terms.values() {
            g = gcd_i128(g, c);
        }
        g
    }

    /// Exact division; `None` when `self` is not a multiple of `div`.
    pub fn div_exact(&self, div: &Laurent) -> Option<Laurent> {
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::new());
        }
        let mut rem = self.clone();
        let mut quot = Laurent::new();
        let (dexp, dcoef) = {
            let (&e, &c) = div.terms.iter().next_back().unwrap();
            (e, c)
        };
        while !rem.is_zero() {
            let (&re, &rc) = rem.terms.iter().next_back().unwrap();
            if rc % dcoef != 0 {
                return None;
            }
            let qe = re - dexp;
            let qc = rc / dcoef;
            quot.insert_add(qe, qc);
            rem = rem.sub(&div.mul_monomial(qe, qc));
            if let (Some(rmax), Some(_)) = (rem.max_exp(), rem.min_exp()) {
                if rmax > re {
                    return None;
                }
            }
        }
        Some(quot)
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Complex integer power.
pub fn cpow(z: Complex64, e: i64) -> Complex64 {
    if e == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let base = if e < 0 { Complex64::new(1.0, 0.0) / z } else { z };
    let mut acc = Complex64::new(1.0, 0.0);
    let mut b = base;
    let mut n = e.unsigned_abs();
    while n > 0 {
        if n & 1 == 1 {
            acc *= b;
        }
        b *= b;
        n >>= 1;
    }
    acc
}

impl Ring for Laurent {
    fn zero() -> Self {
        Laurent::new()
    }
    fn one() -> Self {
        Laurent::constant(1)
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.insert_add(e, c);
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.insert_add(e, -c);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Laurent::new();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                out.insert_add(e1 + e2, c1 * c2);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        // highest power first
        for (&e, &c) in self.terms.iter().rev() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{}", m)?,
                (1, 1) => write!(f, "A")?,
                (1, m) => write!(f, "{}A", m)?,
                (e, 1) => write!(f, "A^{}", e)?,
                (e, m) => write!(f, "{}A^{}", m, e)?,
            }
        }
        Ok(())
    }
}

/// Ratio of two Laurent polynomials.
///
/// Kept reduced via integer-polynomial gcd; equality would be correct by
/// cross-multiplication even without reduction.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: Laurent,
    den: Laurent,
}

impl RationalFn {
    pub fn from_poly(p: Laurent) -> Self {
        RationalFn { num: p, den: Laurent::one() }
    }

    pub fn new(num: Laurent, den: Laurent) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RationalFn { num, den };
        r.reduce();
        r
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    /// `Some(p)` when the value is a plain Laurent polynomial.
    pub fn as_poly(&self) -> Option<Laurent> {
        self.num.div_exact(&self.den)
    }

    pub fn eval(&self, a: Complex64) -> Complex64 {
        self.num.eval(a) / self.den.eval(a)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Laurent::one();
            return;
        }
        // Shift both to plain polynomials with zero minimum exponent.
        let shift = -self.num.min_exp().unwrap_or(0);
        let dshift = -self.den.min_exp().unwrap_or(0);
        self.num = self.num.mul_monomial(shift, 1);
        self.den = self.den.mul_monomial(dshift, 1);
        let g = poly_gcd(&self.num, &self.den);
        if let (Some(n), Some(d)) = (self.num.div_exact(&g), self.den.div_exact(&g)) {
            self.num = n;
            self.den = d;
        }
        // Monomial content of the denominator moves to the numerator.
        let dmin = self.den.min_exp().unwrap_or(0);
        self.den = self.den.mul_monomial(-dmin, 1);
        self.num = self.num.mul_monomial(-shift + dshift + dmin, 1);
        let c = gcd_i128(self.num.content(), self.den.content());
        if c > 1 {
            self.num = Laurent {
                terms: self.num.terms.iter().map(|(&e, &co)| (e, co / c)).collect(),
            };
            self.den = Laurent {
                terms: self.den.terms.iter().map(|(&e, &co)| (e, co / c)).collect(),
            };
        }
        if self.den.terms.values().next_back().map_or(false, |&c| c < 0) {
            self.num = self.num.neg();
            self.den = self.den.neg();
        }
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Ring for RationalFn {
    fn zero() -> Self {
        Self::from_poly(Laurent::new())
    }
    fn one() -> Self {
        Self::from_poly(Laurent::one())
    }
    fn add(&self, other: &Self) -> Self {
        RationalFn::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        RationalFn::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn mul(&self, other: &Self) -> Self {
        RationalFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RationalFn { num: self.num.neg(), den: self.den.clone() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Field for RationalFn {
    fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        RationalFn::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Laurent::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Least common multiple of two Laurent polynomials (up to units).
pub fn poly_lcm(a: &Laurent, b: &Laurent) -> Laurent {
    if a.is_zero() || b.is_zero() {
        return Laurent::new();
    }
    let g = poly_gcd(a, b);
    a.mul(b).div_exact(&g).expect("gcd divides the product")
}

/// Polynomial gcd over the integers (primitive pseudo-remainder sequence on
/// BigInt coefficients so intermediate swell cannot overflow).
pub(crate) fn poly_gcd(a: &Laurent, b: &Laurent) -> Laurent {
    use num_bigint::BigInt;

    fn to_big(p: &Laurent) -> Vec<BigInt> {
        let min = p.min_exp().unwrap_or(0);
        let max = p.max_exp().unwrap_or(0);
        let mut v = alloc::vec![BigInt::from(0); (max - min + 1) as usize];
        for (e, c) in p.terms() {
            v[(e - min) as usize] = BigInt::from(c);
        }
        v
    }
    fn trim(v: &mut Vec<BigInt>) {
        while v.last().map_or(false, |c| c == &BigInt::from(0)) {
            v.pop();
        }
    }
    fn content_big(v: &[BigInt]) -> BigInt {
        use num_bigint::Sign;
        let mut g = BigInt::from(0);
        for c in v {
            g = big_gcd(g, c.clone());
        }
        if g.sign() == Sign::Minus {
            -g
        } else {
            g
        }
    }
    fn big_gcd(mut a: BigInt, mut b: BigInt) -> BigInt {
        while b != BigInt::from(0) {
            let t = &a % &b;
            a = b;
            b = t;
        }
        a
    }
    fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
        trim(&mut v);
        let c = content_big(&v);
        if c > BigInt::from(1) {
            for x in v.iter_mut() {
                *x = &*x / &c;
            }
        }
        v
    }
    // pseudo-remainder of u by v (deg u >= deg v)
    fn pseudo_rem(mut u: Vec<BigInt>, v: &[BigInt]) -> Vec<BigInt> {
        let dv = v.len() - 1;
        let lv = v.last().unwrap().clone();
        while u.len() >= v.len() && !u.is_empty() {
            let du = u.len() - 1;
            let lu = u.last().unwrap().clone();
            for x in u.iter_mut() {
                *x = &*x * &lv;
            }
            for i in 0..v.len() {
                let idx = du - dv + i;
                u[idx] = &u[idx] - &(&lu * &v[i]);
            }
            trim(&mut u);
        }
        u
    }

    if a.is_zero() {
        return b.mul_monomial(-b.min_exp().unwrap_or(0), 1);
    }
    if b.is_zero() {
        return a.mul_monomial(-a.min_exp().unwrap_or(0), 1);
    }
    let mut u = primitive(to_big(a));
    let mut v = primitive(to_big(b));
    if u.len() < v.len() {
        core::mem::swap(&mut u, &mut v);
    }
    while !v.is_empty() {
        let r = primitive(pseudo_rem(u.clone(), &v));
        u = v;
        v = r;
    }
    let mut out = Laurent::new();
    for (i, c) in u.iter().enumerate() {
        // gcd coefficients stay in i128 range for the sizes this crate uses
        let val = i128::try_from(c).expect("gcd coefficient overflow");
        if val != 0 {
            out.insert_add(i as i64, val);
        }
    }
    if out.is_zero() {
        Laurent::one()
    } else {
        out
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl Field for Complex64 {
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

/// Evaluation context at the level-`r` root of unity `A = e^{iπ/2r}`.
#[derive(Clone, Copy, Debug)]
pub struct RootParams {
    pub r: u32,
    pub a: Complex64,
    pub d: Complex64,
    /// Absolute tolerance for complex comparisons in property tests.
    pub tolerance: f64,
}

impl RootParams {
    pub fn new(r: u32) -> Self {
        assert!(r >= 2, "level r must be at least 2");
        let theta = core::f64::consts::PI / (2.0 * r as f64);
        let a = Complex64::new(libm::cos(theta), libm::sin(theta));
        let a2 = a * a;
        let d = -a2 - Complex64::new(1.0, 0.0) / a2;
        RootParams { r, a, d, tolerance: 1e-9 }
    }

    pub fn a_pow(&self, e: i64) -> Complex64 {
        cpow(self.a, e)
    }

    /// Largest admissible color `r - 2`.
    pub fn max_color(&self) -> u32 {
        self.r - 2
    }
}

/// Domain errors from the quantum-integer ladder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QError {
    /// `[m]!` requested outside `0 <= m <= r-1`.
    FactorialRange { m: i64, r: Option<u32> },
    /// An inadmissible color triple was supplied.
    Inadmissible { a: u32, b: u32, c: u32 },
    /// Level too small for the requested projector.
    ProjectorLevel { n: u32, r: u32 },
}

impl fmt::Display for QError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QError::FactorialRange { m, r } => match r {
                Some(r) => write!(f, "[{}]! outside 0..={} at level {}", m, r - 1, r),
                None => write!(f, "[{}]! undefined for negative argument", m),
            },
            QError::Inadmissible { a, b, c } => {
                write!(f, "inadmissible triple ({}, {}, {})", a, b, c)
            }
            QError::ProjectorLevel { n, r } => {
                write!(f, "Jones-Wenzl projector T_{} undefined at level {}", n, r)
            }
        }
    }
}

/// `Δ_n` over any ring, from `d` by the Chebyshev recurrence
/// `Δ_{n+1} = d Δ_n - Δ_{n-1}` with `Δ_{-1} = 0`, `Δ_0 = 1`.
pub fn delta_ladder<S: Ring>(d: &S, up_to: i64) -> Vec<S> {
    let n = up_to.max(0) as usize;
    let mut out = Vec::with_capacity(n + 1);
    out.push(S::one());
    if n >= 1 {
        out.push(d.clone());
    }
    for k in 2..=n {
        let next = d.mul(&out[k - 1]).sub(&out[k - 2]);
        out.push(next);
    }
    out
}

/// `Δ_n` for a single `n >= -1`.
pub fn delta<S: Ring>(d: &S, n: i64) -> S {
    if n < 0 {
        return S::zero();
    }
    delta_ladder(d, n).pop().unwrap()
}

/// Generic `Δ_n` as an exact Laurent polynomial,
/// `Δ_n = (-1)^n (A^{2n+2} - A^{-(2n+2)}) / (A^2 - A^{-2})`.
pub fn delta_generic(n: i64) -> Laurent {
    delta(&Laurent::d(), n)
}

/// `Δ_n` at the root of unity: `(-1)^n sin((n+1)π/r) / sin(π/r)`.
pub fn delta_at(ctx: &RootParams, n: i64) -> Complex64 {
    if n < -1 {
        return Complex64::new(0.0, 0.0);
    }
    let r = ctx.r as f64;
    let s = libm::sin((n as f64 + 1.0) * core::f64::consts::PI / r)
        / libm::sin(core::f64::consts::PI / r);
    let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Complex64::new(sign * s, 0.0)
}

/// Quantum integer `[n] = (-1)^{n-1} Δ_{n-1}`.
pub fn qint<S: Ring>(d: &S, n: i64) -> S {
    let v = delta(d, n - 1);
    if (n - 1).rem_euclid(2) == 0 {
        v
    } else {
        v.neg()
    }
}

/// Quantum factorial `[m]! = [m][m-1]...[1]`, `[0]! = 1`.
///
/// `level` enforces the root-of-unity domain restriction `0 <= m <= r-1`.
pub fn qfact<S: Ring>(d: &S, m: i64, level: Option<u32>) -> Result<S, QError> {
    if m < 0 {
        return Err(QError::FactorialRange { m, r: level });
    }
    if let Some(r) = level {
        if m > (r as i64) - 1 {
            return Err(QError::FactorialRange { m, r: level });
        }
    }
    let mut acc = S::one();
    for k in 1..=m {
        acc = acc.mul(&qint(d, k));
    }
    Ok(acc)
}

/// Quantum factorial without the level bound; at a root of unity the value
/// simply contains zero factors past `[r-1]`.
pub fn qfact_raw<S: Ring>(d: &S, m: i64) -> S {
    if m < 0 {
        return S::zero();
    }
    let mut acc = S::one();
    for k in 1..=m {
        acc = acc.mul(&qint(d, k));
    }
    acc
}

/// Format a complex number to 6 significant digits as `a+bi`.
pub fn format_complex(z: Complex64) -> String {
    use alloc::format;
    fn fmt_part(x: f64) -> String {
        use alloc::format;
        if x == 0.0 {
            return String::from("0");
        }
        let mag = libm::fabs(x);
        let digits = if mag >= 1.0 {
            let int_digits = libm::floor(libm::log10(mag)) as i32 + 1;
            (6 - int_digits).max(0) as usize
        } else {
            let lead = (-libm::floor(libm::log10(mag))) as i32;
            (5 + lead) as usize
        };
        format!("{:.*}", digits, x)
    }
    let re = if libm::fabs(z.re) < 5e-7 { 0.0 } else { z.re };
    let im = if libm::fabs(z.im) < 5e-7 { 0.0 } else { z.im };
    match (re == 0.0, im == 0.0) {
        (true, true) => String::from("0"),
        (false, true) => fmt_part(re),
        (true, false) => format!("{}i", fmt_part(im)),
        (false, false) => {
            if im < 0.0 {
                format!("{} - {}i", fmt_part(re), fmt_part(-im))
            } else {
                format!("{} + {}i", fmt_part(re), fmt_part(im))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn delta_small_values() {
        assert_eq!(delta_generic(0), Laurent::one());
        // Δ_1 = -(A^2 + A^{-2}) = d
        assert_eq!(delta_generic(1), Laurent::d());
        assert_eq!(delta_generic(-1), Laurent::new());
    }

    #[test]
    fn delta_at_r4() {
        let ctx = RootParams::new(4);
        let d1 = delta_at(&ctx, 1);
        assert!(close(d1, Complex64::new(-libm::sqrt(2.0), 0.0)));
        // closed form matches the Chebyshev ladder
        for n in 0..6 {
            assert!(close(delta_at(&ctx, n), delta(&ctx.d, n)));
        }
        // Δ_{r-1} = 0
        assert!(delta_at(&ctx, 3).norm() < 1e-12);
    }

    #[test]
    fn qfact_values() {
        let d = Laurent::d();
        assert_eq!(qfact(&d, 0, None).unwrap(), Laurent::one());
        assert_eq!(qfact(&d, 1, None).unwrap(), Laurent::one());
        let ctx = RootParams::new(4);
        // [2] = -Δ_1 = sqrt(2) at r = 4
        let q2 = qint(&ctx.d, 2);
        assert!(close(q2, Complex64::new(libm::sqrt(2.0), 0.0)));
        assert!(qfact(&ctx.d, 4, Some(4)).is_err());
    }

    #[test]
    fn eval_substitution() {
        let ctx = RootParams::new(3);
        let p = Laurent::monomial(3, 1);
        assert!(close(p.eval(ctx.a), Complex64::new(0.0, 1.0)));
        assert!(close(Laurent::d().eval(ctx.a), Complex64::new(-1.0, 0.0)));
    }

    #[test]
    fn rational_reduction() {
        let d = Laurent::d();
        let r = RationalFn::new(d.mul(&d), d.clone());
        assert_eq!(r.as_poly().unwrap(), d);
        let half = RationalFn::new(Laurent::one(), d.clone());
        let prod = half.mul(&RationalFn::from_poly(d.clone()));
        assert_eq!(prod, RationalFn::one());
    }
}
