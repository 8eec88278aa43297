//! Wirtinger presentation of the fundamental group of a virtual link
//! diagram, longitudes, the 3-manifold group (fundamental group modulo the
//! longitudes), and abelianization via Smith normal form.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::codec::{Role, VirtualLinkDiagram};

/// A word in the generators: pairs `(generator index, exponent)`.
pub type Word = Vec<(usize, i32)>;

/// A finite presentation: generator names plus relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn free(names: Vec<String>) -> Self {
        GroupPresentation { generators: names, relators: Vec::new() }
    }

    fn word_to_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return String::from("1");
        }
        let mut s = String::new();
        for (i, &(g, e)) in w.iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            if e == 1 {
                s.push_str(&self.generators[g]);
            } else {
                s.push_str(&format!("{}^{}", self.generators[g], e));
            }
        }
        s
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} | ", self.generators.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.word_to_string(r))?;
        }
        write!(f, " >")
    }
}

/// Arc structure of one component: an arc is a maximal run between
/// consecutive underpasses (overpasses and virtual crossings do not break
/// arcs). A component with no underpasses is a single closed arc.
struct ArcStructure {
    /// generator index of the arc occupied at each pass position
    arc_at: Vec<Vec<usize>>,
    /// per component: generator of the arc entering / leaving each underpass
    n_generators: usize,
}

fn arcs(d: &VirtualLinkDiagram) -> ArcStructure {
    let mut arc_at = Vec::new();
    let mut next_gen = 0usize;
    for comp in &d.components {
        let k = comp.len();
        let under_positions: Vec<usize> = (0..k).filter(|&i| comp[i].role == Role::Under).collect();
        if under_positions.is_empty() {
            arc_at.push(alloc::vec![next_gen; k.max(1)]);
            next_gen += 1;
            continue;
        }
        // the arc *after* underpass u (exclusive) up to the next underpass
        // (inclusive) carries one generator
        let m = under_positions.len();
        let base = next_gen;
        next_gen += m;
        let mut assign = alloc::vec![usize::MAX; k];
        for t in 0..m {
            let start = under_positions[t];
            let end = under_positions[(t + 1) % m];
            // positions strictly after start, up to and including end
            let mut p = (start + 1) % k;
            loop {
                assign[p] = base + t;
                if p == end {
                    break;
                }
                p = (p + 1) % k;
            }
        }
        arc_at.push(assign);
    }
    ArcStructure { arc_at, n_generators: next_gen }
}

fn generator_names(d: &VirtualLinkDiagram, n: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(n);
    let letters = ["a", "b", "c", "e", "g", "h", "k", "m", "p", "q"];
    let mut idx = 0usize;
    for (ci, comp) in d.components.iter().enumerate() {
        let unders = comp.iter().filter(|p| p.role == Role::Under).count().max(1);
        let letter = letters[ci % letters.len()];
        for t in 0..unders {
            let _ = t;
            names.push(format!("{}{}", letter, idx));
            idx += 1;
        }
    }
    debug_assert_eq!(names.len(), n);
    names
}

/// The Wirtinger presentation: one generator per arc, one conjugation
/// relator per classical crossing. At a positive crossing with over arc `o`,
/// incoming under arc `u` and outgoing `v`: `o u o^{-1} v^{-1}`; negative
/// crossings conjugate the other way.
pub fn wirtinger(d: &VirtualLinkDiagram) -> GroupPresentation {
    let structure = arcs(d);
    let names = generator_names(d, structure.n_generators);
    let mut relators = Vec::new();
    // locate both passes of every crossing
    for id in d.crossing_ids() {
        let mut over = None;
        let mut under = None;
        for (ci, comp) in d.components.iter().enumerate() {
            for (pi, p) in comp.iter().enumerate() {
                if p.id == id {
                    match p.role {
                        Role::Over => over = Some((ci, pi, p.sign)),
                        Role::Under => under = Some((ci, pi)),
                    }
                }
            }
        }
        let (oc, op, sign) = over.expect("validated diagram");
        let (uc, up) = under.expect("validated diagram");
        let o = structure.arc_at[oc][op];
        let u_in = structure.arc_at[uc][up];
        let k = d.components[uc].len();
        let u_out = structure.arc_at[uc][(up + 1) % k];
        let s = sign as i32;
        relators.push(alloc::vec![(o, s), (u_in, 1), (o, -s), (u_out, -1)]);
    }
    GroupPresentation { generators: names, relators }
}

/// The longitude of a component: traverse from its first pass and record the
/// over arc of each underpass with exponent equal to the crossing sign.
/// Defined up to cyclic permutation.
pub fn longitude(d: &VirtualLinkDiagram, component: usize) -> Word {
    let structure = arcs(d);
    let comp = &d.components[component];
    let mut word = Vec::new();
    for p in comp {
        if p.role != Role::Under {
            continue;
        }
        // find the over pass of this crossing
        for (ci, other) in d.components.iter().enumerate() {
            for (pi, q) in other.iter().enumerate() {
                if q.id == p.id && q.role == Role::Over {
                    word.push((structure.arc_at[ci][pi], p.sign as i32));
                }
            }
        }
    }
    word
}

/// The 3-manifold group: the Wirtinger presentation with one longitude
/// relator per component (blackboard framing).
pub fn three_manifold_group(d: &VirtualLinkDiagram) -> GroupPresentation {
    let mut p = wirtinger(d);
    for c in 0..d.components.len() {
        let l = longitude(d, c);
        p.relators.push(l);
    }
    p
}

/// Invariant factors and free rank of an abelianized presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// invariant factors `d_1 | d_2 | ...`, all > 1
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { free_rank: 0, torsion: Vec::new() }
    }
    pub fn free(rank: usize) -> Self {
        AbelianInvariants { free_rank: rank, torsion: Vec::new() }
    }
    pub fn cyclic(n: u64) -> Self {
        AbelianInvariants { free_rank: 0, torsion: alloc::vec![n] }
    }
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let mut parts = Vec::new();
        for &t in &self.torsion {
            parts.push(format!("Z/{}", t));
        }
        for _ in 0..self.free_rank {
            parts.push(String::from("Z"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Abelianization of a presentation via the Smith normal form of its
/// exponent matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianInvariants {
    let g = p.generators.len();
    let mut matrix: Vec<Vec<BigInt>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = alloc::vec![BigInt::from(0); g];
            for &(gen, e) in r {
                row[gen] += BigInt::from(e);
            }
            row
        })
        .collect();
    let diag = smith_diagonal(&mut matrix, g);
    let rank = diag.iter().filter(|d| **d != BigInt::from(0)).count();
    let torsion: Vec<u64> = diag
        .iter()
        .filter(|d| **d > BigInt::from(1))
        .map(|d| u64::try_from(d).expect("torsion factor fits u64"))
        .collect();
    AbelianInvariants { free_rank: g - rank, torsion }
}

/// Diagonal of the Smith normal form (non-negative, divisibility chain).
fn smith_diagonal(m: &mut Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let zero = BigInt::from(0);
    let mut diag = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols {
        // smallest nonzero entry in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in left..cols {
                if m[i][j] != zero {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => abs(&m[i][j]) < abs(&m[pi][pj]),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(left, pj);
        }
        // reduce column and row
        let mut clean = true;
        for i in top + 1..rows {
            if m[i][left] != zero {
                let q = div_round(&m[i][left], &m[top][left]);
                for j in left..cols {
                    let v = &m[top][j] * &q;
                    m[i][j] = &m[i][j] - v;
                }
                if m[i][left] != zero {
                    clean = false;
                }
            }
        }
        for j in left + 1..cols {
            if m[top][j] != zero {
                let q = div_round(&m[top][j], &m[top][left]);
                for i in top..rows {
                    let v = &m[i][left] * &q;
                    m[i][j] = &m[i][j] - v;
                }
                if m[top][j] != zero {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // repeat with a smaller pivot
        }
        diag.push(abs(&m[top][left]));
        top += 1;
        left += 1;
    }
    // enforce the divisibility chain
    let mut i = 0;
    while i + 1 < diag.len() {
        if diag[i] != zero && &diag[i + 1] % &diag[i] != zero {
            let a = diag[i].clone();
            let b = diag[i + 1].clone();
            let g = gcd_big(a.clone(), b.clone());
            let l = &a * &b / &g;
            diag[i] = g;
            diag[i + 1] = l;
            i = 0;
            continue;
        }
        i += 1;
    }
    diag
}

fn abs(x: &BigInt) -> BigInt {
    if x < &BigInt::from(0) {
        -x
    } else {
        x.clone()
    }
}

fn gcd_big(mut a: BigInt, mut b: BigInt) -> BigInt {
    a = abs(&a);
    b = abs(&b);
    while b != BigInt::from(0) {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

/// Round-toward-nearest quotient so remainders shrink.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = (a / b, a % b);
    if &(abs(&r) * &two) > &abs(b) {
        if (r < BigInt::from(0)) == (b < &BigInt::from(0)) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Count homomorphisms into the symmetric group S3 — a cheap extra
/// separating invariant beyond abelianization.
pub fn count_homs_s3(p: &GroupPresentation) -> u64 {
    // S3 as permutations of 0,1,2
    const ELTS: [[u8; 3]; 6] = [
        [0, 1, 2],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
        [1, 2, 0],
        [2, 0, 1],
    ];
    fn compose(a: [u8; 3], b: [u8; 3]) -> [u8; 3] {
        [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]]
    }
    fn invert(a: [u8; 3]) -> [u8; 3] {
        let mut out = [0u8; 3];
        for i in 0..3 {
            out[a[i] as usize] = i as u8;
        }
        out
    }
    let g = p.generators.len();
    if g > 8 {
        return 0; // enumeration too large; callers treat 0 as "unknown"
    }
    let mut assignment = alloc::vec![0usize; g];
    let mut count = 0u64;
    loop {
        let ok = p.relators.iter().all(|r| {
            let mut acc = [0u8, 1, 2];
            for &(gen, e) in r {
                let elt = ELTS[assignment[gen]];
                let elt = if e < 0 { invert(elt) } else { elt };
                for _ in 0..e.unsigned_abs() {
                    acc = compose(acc, elt);
                }
            }
            acc == [0, 1, 2]
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == g {
                return count;
            }
            assignment[i] += 1;
            if assignment[i] < 6 {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}
