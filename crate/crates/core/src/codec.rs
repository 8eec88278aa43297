//! Virtual link diagrams as signed Gauss codes, parsing and serialization,
//! elementary combinatorial measures, cabling, and the builtin registry.
//!
//! Virtual crossings are never stored: a diagram is exactly its (possibly
//! non-planar) signed Gauss code, which quotients by the virtual Reidemeister
//! moves and the detour move. Two planar pictures that differ only in virtual
//! arcs parse to the identical value.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// Over or under passage through a classical crossing.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

/// One passage of a strand through a classical crossing.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Pass {
    pub id: u32,
    pub role: Role,
    pub sign: i8,
}

impl Pass {
    pub fn new(id: u32, role: Role, sign: i8) -> Self {
        Pass { id, role, sign }
    }
}

/// A virtual link diagram: ordered components, each a cyclic pass sequence.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VirtualLinkDiagram {
    pub components: Vec<Vec<Pass>>,
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodecError {
    Syntax { position: usize, message: String },
    Validation(String),
    UnknownBuiltin(String),
    ComponentIndex(usize),
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::Syntax { position, message } => {
                write!(f, "syntax error at byte {}: {}", position, message)
            }
            CodecError::Validation(m) => write!(f, "invalid diagram: {}", m),
            CodecError::UnknownBuiltin(n) => write!(f, "unknown builtin diagram '{}'", n),
            CodecError::ComponentIndex(i) => write!(f, "component index {} out of range", i),
        }
    }
}

impl VirtualLinkDiagram {
    pub fn new(components: Vec<Vec<Pass>>) -> Result<Self, CodecError> {
        let d = VirtualLinkDiagram { components, name: None };
        d.validate()?;
        Ok(d)
    }

    /// The empty diagram (zero components); bracket value 1 by convention.
    pub fn empty() -> Self {
        VirtualLinkDiagram { components: Vec::new(), name: None }
    }

    pub fn unknot() -> Self {
        VirtualLinkDiagram { components: alloc::vec![Vec::new()], name: None }
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// Each crossing id must appear exactly twice, once over and once under,
    /// with matching signs.
    pub fn validate(&self) -> Result<(), CodecError> {
        let mut seen: alloc::collections::BTreeMap<u32, Vec<Pass>> =
            alloc::collections::BTreeMap::new();
        for comp in &self.components {
            for p in comp {
                if p.sign != 1 && p.sign != -1 {
                    return Err(CodecError::Validation(format!(
                        "crossing {} carries sign {}",
                        p.id, p.sign
                    )));
                }
                seen.entry(p.id).or_default().push(*p);
            }
        }
        for (id, passes) in &seen {
            if passes.len() != 2 {
                return Err(CodecError::Validation(format!(
                    "crossing {} appears {} times (expected 2)",
                    id,
                    passes.len()
                )));
            }
            if passes[0].role == passes[1].role {
                return Err(CodecError::Validation(format!(
                    "crossing {} appears twice as {:?}",
                    id, passes[0].role
                )));
            }
            if passes[0].sign != passes[1].sign {
                return Err(CodecError::Validation(format!(
                    "crossing {} has mismatched signs",
                    id
                )));
            }
        }
        Ok(())
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(|c| c.len()).sum::<usize>() / 2
    }

    /// Crossing ids in first-appearance order.
    pub fn crossing_ids(&self) -> Vec<u32> {
        let mut ids = Vec::new();
        for comp in &self.components {
            for p in comp {
                if !ids.contains(&p.id) {
                    ids.push(p.id);
                }
            }
        }
        ids
    }

    pub fn crossing_sign(&self, id: u32) -> Option<i8> {
        self.components
            .iter()
            .flatten()
            .find(|p| p.id == id)
            .map(|p| p.sign)
    }

    /// Sum of all crossing signs.
    pub fn writhe(&self) -> i64 {
        let mut w = 0i64;
        for comp in &self.components {
            for p in comp {
                if p.role == Role::Over {
                    w += p.sign as i64;
                }
            }
        }
        w
    }

    /// Sum of signs of crossings whose both passes lie on component `i`.
    pub fn self_writhe(&self, i: usize) -> Result<i64, CodecError> {
        let comp = self
            .components
            .get(i)
            .ok_or(CodecError::ComponentIndex(i))?;
        let mut counts: alloc::collections::BTreeMap<u32, (usize, i8)> =
            alloc::collections::BTreeMap::new();
        for p in comp {
            let e = counts.entry(p.id).or_insert((0, p.sign));
            e.0 += 1;
        }
        Ok(counts
            .values()
            .filter(|(n, _)| *n == 2)
            .map(|(_, s)| *s as i64)
            .sum())
    }

    /// Twice the linking number of components `i` and `j` (the linking number
    /// itself may be a half-integer for virtual links).
    pub fn linking_number_doubled(&self, i: usize, j: usize) -> Result<i64, CodecError> {
        if i == j {
            return Err(CodecError::Validation(
                "linking number needs two distinct components".into(),
            ));
        }
        if i >= self.components.len() {
            return Err(CodecError::ComponentIndex(i));
        }
        if j >= self.components.len() {
            return Err(CodecError::ComponentIndex(j));
        }
        let ids_i: alloc::collections::BTreeSet<u32> =
            self.components[i].iter().map(|p| p.id).collect();
        let mut sum = 0i64;
        let mut seen = alloc::collections::BTreeSet::new();
        for p in &self.components[j] {
            if ids_i.contains(&p.id) && seen.insert(p.id) {
                sum += p.sign as i64;
            }
        }
        Ok(sum)
    }

    /// The symmetric matrix with `N_ii = w(K_i)` and `N_ij = lk(K_i, K_j)`.
    ///
    /// Errors when an off-diagonal linking number is a half-integer, in which
    /// case the eigenvalue signature is not defined over the integers.
    pub fn linking_matrix(&self) -> Result<Vec<Vec<i64>>, CodecError> {
        let n = self.components.len();
        let mut m = alloc::vec![alloc::vec![0i64; n]; n];
        for i in 0..n {
            m[i][i] = self.self_writhe(i)?;
            for j in (i + 1)..n {
                let twice = self.linking_number_doubled(i, j)?;
                if twice % 2 != 0 {
                    return Err(CodecError::Validation(format!(
                        "linking number lk(K_{}, K_{}) = {}/2 is not an integer",
                        i, j, twice
                    )));
                }
                m[i][j] = twice / 2;
                m[j][i] = twice / 2;
            }
        }
        Ok(m)
    }

    /// Blackboard-framed cable with a per-component strand count; count 0
    /// deletes the component. Grid crossing `(j, k)` of original crossing `v`
    /// gets id `base(v) + j*n_other + k`, row-major.
    pub fn cable_vector(&self, counts: &[u32]) -> Result<VirtualLinkDiagram, CodecError> {
        if counts.len() != self.components.len() {
            return Err(CodecError::Validation(format!(
                "{} cable counts for {} components",
                counts.len(),
                self.components.len()
            )));
        }
        // Strand count for each pass of a crossing = count of the component
        // the *other* passage lies on.
        let mut comp_of_pass: alloc::collections::BTreeMap<(u32, Role), usize> =
            alloc::collections::BTreeMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for p in comp {
                comp_of_pass.insert((p.id, p.role), ci);
            }
        }
        // id allocation: crossings in id order, each gets a block
        let ids = {
            let mut v = self.crossing_ids();
            v.sort_unstable();
            v
        };
        let mut base = alloc::collections::BTreeMap::new();
        let mut next = 1u32;
        for &id in &ids {
            let co = comp_of_pass[&(id, Role::Over)];
            let cu = comp_of_pass[&(id, Role::Under)];
            let block = counts[co] * counts[cu];
            base.insert(id, next);
            next += block;
        }
        let mut components = Vec::new();
        for (ci, comp) in self.components.iter().enumerate() {
            let n_self = counts[ci];
            for copy in 0..n_self {
                let mut seq = Vec::new();
                for p in comp {
                    let other = match p.role {
                        Role::Over => comp_of_pass[&(p.id, Role::Under)],
                        Role::Under => comp_of_pass[&(p.id, Role::Over)],
                    };
                    let n_other = counts[other];
                    let b = base[&p.id];
                    // Grid id for (over copy j, under copy k): b + j*n_u + k
                    // where n_u is the under-passage count.
                    match p.role {
                        Role::Over => {
                            // over copy j meets under copies in descending
                            // order for positive crossings, ascending for
                            // negative (left push-off convention)
                            let range: Vec<u32> = if p.sign > 0 {
                                (0..n_other).rev().collect()
                            } else {
                                (0..n_other).collect()
                            };
                            for k in range {
                                seq.push(Pass::new(b + copy * n_other + k, Role::Over, p.sign));
                            }
                        }
                        Role::Under => {
                            let range: Vec<u32> = if p.sign > 0 {
                                (0..n_other).collect()
                            } else {
                                (0..n_other).rev().collect()
                            };
                            for j in range {
                                seq.push(Pass::new(b + j * n_self + copy, Role::Under, p.sign));
                            }
                        }
                    }
                }
                components.push(seq);
            }
        }
        VirtualLinkDiagram::new(components)
    }

    /// Uniform `n`-cable of every component.
    pub fn cable(&self, n: u32) -> VirtualLinkDiagram {
        let counts = alloc::vec![n; self.components.len()];
        self.cable_vector(&counts)
            .expect("uniform cable of a valid diagram is valid")
    }

    /// Disjoint union, renumbering the other diagram's crossings.
    pub fn disjoint_union(&self, other: &VirtualLinkDiagram) -> VirtualLinkDiagram {
        let offset = self.crossing_ids().iter().copied().max().unwrap_or(0);
        let mut components = self.components.clone();
        for comp in &other.components {
            components.push(
                comp.iter()
                    .map(|p| Pass::new(p.id + offset, p.role, p.sign))
                    .collect(),
            );
        }
        VirtualLinkDiagram { components, name: None }
    }

    /// Canonical extended Gauss code text.
    pub fn serialize(&self) -> String {
        let mut parts = Vec::new();
        for comp in &self.components {
            let mut s = String::new();
            for p in comp {
                s.push(match p.role {
                    Role::Over => 'O',
                    Role::Under => 'U',
                });
                s.push_str(&p.id.to_string());
                s.push(if p.sign > 0 { '+' } else { '-' });
            }
            parts.push(s);
        }
        parts.join(";")
    }
}

impl fmt::Display for VirtualLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

/// Parse extended Gauss code: components separated by `;`, tokens
/// `O<id><sign>` / `U<id><sign>`, whitespace ignored.
pub fn parse_diagram(text: &str) -> Result<VirtualLinkDiagram, CodecError> {
    let bytes = text.as_bytes();
    let mut components = Vec::new();
    let mut current = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b';' => {
                components.push(core::mem::take(&mut current));
                i += 1;
            }
            b'O' | b'U' | b'o' | b'u' => {
                let role = if b == b'O' || b == b'o' { Role::Over } else { Role::Under };
                let start = i;
                i += 1;
                let num_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == num_start {
                    return Err(CodecError::Syntax {
                        position: start,
                        message: "expected crossing id after O/U".into(),
                    });
                }
                let id: u32 = text[num_start..i].parse().map_err(|_| CodecError::Syntax {
                    position: num_start,
                    message: "crossing id out of range".into(),
                })?;
                if id == 0 {
                    return Err(CodecError::Syntax {
                        position: num_start,
                        message: "crossing ids are positive".into(),
                    });
                }
                let sign = match bytes.get(i) {
                    Some(b'+') => 1i8,
                    Some(b'-') => -1i8,
                    _ => {
                        return Err(CodecError::Syntax {
                            position: i,
                            message: "expected sign + or -".into(),
                        })
                    }
                };
                i += 1;
                current.push(Pass::new(id, role, sign));
            }
            _ => {
                return Err(CodecError::Syntax {
                    position: i,
                    message: format!("unexpected character '{}'", b as char),
                })
            }
        }
    }
    components.push(current);
    let d = VirtualLinkDiagram { components, name: None };
    d.validate()?;
    Ok(d)
}

/// Named example diagrams.
pub const BUILTIN_NAMES: &[&str] = &[
    "unknot",
    "unlink2",
    "kink+",
    "kink-",
    "hopf+",
    "trefoil",
    "vtrefoil",
    "paperK",
    "paperKhat",
];

/// Look up a registered example diagram.
///
/// `paperK` is the two-crossing positive-writhe code singled out by an
/// exhaustive search over small Gauss codes: it is the unique class with
/// writhe +2, vanishing unnormalized WRT at r = 3, infinite cyclic
/// fundamental group, and 3-manifold homology Z/2. `paperKhat` adds one
/// positive kink to it.
pub fn builtin(name: &str) -> Result<VirtualLinkDiagram, CodecError> {
    let code = match name {
        "unknot" => "",
        "unlink2" => ";",
        "kink+" => "O1+U1+",
        "kink-" => "O1-U1-",
        "hopf+" => "O1+O2+;U1+U2+",
        "trefoil" => "O1+U2+O3+U1+O2+U3+",
        "vtrefoil" => "O1+O2+U1+U2+",
        "paperK" => "O1+U1+O2+U2+",
        "paperKhat" => "O1+U1+O2+U2+O3+U3+",
        _ => return Err(CodecError::UnknownBuiltin(name.into())),
    };
    Ok(parse_diagram(code)?.with_name(name))
}
