//! JSON file format for diagrams and stable output schemas.

use serde::{Deserialize, Serialize};
use vlink_core::codec::{CodecError, Pass, Role, VirtualLinkDiagram};

#[derive(Serialize, Deserialize)]
pub struct PassJson {
    pub id: u32,
    pub role: String,
    pub sign: i8,
}

#[derive(Serialize, Deserialize)]
pub struct DiagramJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub components: Vec<Vec<PassJson>>,
}

impl DiagramJson {
    pub fn from_diagram(d: &VirtualLinkDiagram) -> Self {
        DiagramJson {
            name: d.name.clone(),
            components: d
                .components
                .iter()
                .map(|comp| {
                    comp.iter()
                        .map(|p| PassJson {
                            id: p.id,
                            role: match p.role {
                                Role::Over => "O".to_string(),
                                Role::Under => "U".to_string(),
                            },
                            sign: p.sign,
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn into_diagram(self) -> Result<VirtualLinkDiagram, CodecError> {
        let components = self
            .components
            .into_iter()
            .map(|comp| {
                comp.into_iter()
                    .map(|p| {
                        let role = match p.role.as_str() {
                            "O" | "o" => Ok(Role::Over),
                            "U" | "u" => Ok(Role::Under),
                            other => Err(CodecError::Validation(format!(
                                "role must be \"O\" or \"U\", got {:?}",
                                other
                            ))),
                        }?;
                        Ok(Pass::new(p.id, role, p.sign))
                    })
                    .collect::<Result<Vec<_>, CodecError>>()
            })
            .collect::<Result<Vec<_>, CodecError>>()?;
        let mut d = VirtualLinkDiagram::new(components)?;
        d.name = self.name;
        Ok(d)
    }
}

#[derive(Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
    pub text: String,
}

impl ComplexJson {
    pub fn new(z: num_complex::Complex64) -> Self {
        ComplexJson {
            re: z.re,
            im: z.im,
            text: vlink_core::poly::format_complex(z),
        }
    }
}


#[derive(Serialize)]
pub struct WrtJson {
    pub r: u32,
    pub unnormalized: ComplexJson,
    pub b_plus: u32,
    pub b_minus: u32,
    pub n_sig: i64,
    pub mu: f64,
    pub alpha: ComplexJson,
    pub normalized: ComplexJson,
}

impl WrtJson {
    pub fn new(w: &vlink_core::WrtResult) -> Self {
        WrtJson {
            r: w.r,
            unnormalized: ComplexJson::new(w.unnormalized),
            b_plus: w.b_plus,
            b_minus: w.b_minus,
            n_sig: w.n_sig,
            mu: w.mu,
            alpha: ComplexJson::new(w.alpha),
            normalized: ComplexJson::new(w.normalized),
        }
    }
}

#[derive(Serialize)]
pub struct BracketJson {
    pub code: String,
    pub writhe: i64,
    pub reduced: String,
    pub unreduced: String,
    pub f: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_root: Option<ComplexJson>,
}

#[derive(Serialize)]
pub struct ColoredJson {
    pub r: u32,
    pub colors: Vec<u32>,
    pub value: ComplexJson,
}

#[derive(Serialize)]
pub struct GroupJson {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub presentation: String,
    pub abelianization: String,
    pub s3_homomorphisms: u64,
}

#[derive(Serialize)]
pub struct VerifyLineJson {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct VerifyCriterionJson {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub known_gap: bool,
    pub checks: Vec<VerifyLineJson>,
}
