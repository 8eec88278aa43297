//! Command-line front end: parse diagrams, run invariants, apply moves,
//! and drive the verification suite.

mod schema;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vlink_core::bracket::{self, DEFAULT_CROSSING_BUDGET};
use vlink_core::codec::{self, VirtualLinkDiagram};
use vlink_core::groups;
use vlink_core::moves::{self, MoveKind};
use vlink_core::poly::{format_complex, RootParams};
use vlink_core::verify;
use vlink_core::wrt;

use schema::*;

#[derive(Parser)]
#[command(
    name = "vlink",
    about = "Quantum invariants of virtual link diagrams",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Inline extended Gauss code, e.g. "O1+O2+;U1+U2+"
    #[arg(long)]
    code: Option<String>,
    /// File containing a Gauss code or the JSON diagram schema
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    /// Name of a registered example diagram (see builtin-list)
    #[arg(long)]
    builtin: Option<String>,
}

impl Input {
    fn load(&self) -> Result<VirtualLinkDiagram, String> {
        if let Some(code) = &self.code {
            return codec::parse_diagram(code).map_err(|e| e.to_string());
        }
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
            let trimmed = text.trim_start();
            if trimmed.starts_with('{') {
                let parsed: DiagramJson =
                    serde_json::from_str(&text).map_err(|e| e.to_string())?;
                return parsed.into_diagram().map_err(|e| e.to_string());
            }
            return codec::parse_diagram(text.trim()).map_err(|e| e.to_string());
        }
        if let Some(name) = &self.builtin {
            return codec::builtin(name).map_err(|e| e.to_string());
        }
        Err("exactly one of --code, --file, --builtin is required".to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Bracket polynomial, writhe, and the normalized polynomial f
    Bracket {
        #[command(flatten)]
        input: Input,
        /// Also evaluate numerically at the level-r root of unity
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Jones polynomial in quarter powers of t
    Jones {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Colored bracket value for a given color vector at level r
    Colored {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        /// Comma-separated colors, one per component, each in 0..=r-2
        #[arg(long)]
        colors: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Normalized and unnormalized WRT invariant at level r
    Wrt {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Print the full normalization record
        #[arg(long)]
        verbose: bool,
    },
    /// Wirtinger presentation, longitudes, and abelianization
    Group {
        #[command(flatten)]
        input: Input,
        /// Add one longitude relator per component
        #[arg(long)]
        three_manifold: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply moves: list sites, apply one, or run a random walk
    Move {
        #[command(flatten)]
        input: Input,
        /// List applicable sites of a move kind
        #[arg(long, value_name = "KIND")]
        list: Option<String>,
        /// Apply the n-th listed site, as KIND:INDEX
        #[arg(long, value_name = "KIND:INDEX")]
        apply: Option<String>,
        /// Random walk over comma-separated move kinds
        #[arg(long, value_name = "KINDS")]
        walk: Option<String>,
        #[arg(long, default_value = "5")]
        steps: usize,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long, default_value = "24")]
        max_crossings: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the verification suite; nonzero exit on any failing check
    Verify {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also print the convention calibration report
        #[arg(long)]
        calibration: bool,
    },
    /// List the registered example diagrams
    BuiltinList,
}

fn crossing_budget() -> usize {
    std::env::var("VLINK_MAX_CROSSINGS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CROSSING_BUDGET)
}

fn parse_move_kind(s: &str) -> Result<MoveKind, String> {
    Ok(match s.to_ascii_lowercase().as_str() {
        "r1+" | "r1add" | "r1-add" => MoveKind::R1Add,
        "r1-" | "r1del" | "r1-del" => MoveKind::R1Del,
        "r2" | "r2add" | "r2-add" => MoveKind::R2Add,
        "r2del" | "r2-del" => MoveKind::R2Del,
        "r3" => MoveKind::R3,
        "kirby-add" | "kirbyadd" => MoveKind::KirbyAdd,
        "kirby-del" | "kirbydel" | "kirby-delete" => MoveKind::KirbyDel,
        "slide" | "handle-slide" | "handleslide" => MoveKind::HandleSlide,
        other => return Err(format!("unknown move kind '{}'", other)),
    })
}

fn run() -> Result<(), String> {
    let cli = Cli::parse();
    let budget = crossing_budget();
    match cli.command {
        Command::Bracket { input, r, format } => {
            let d = input.load()?;
            let reduced = bracket::bracket_reduced_with(&d, budget).map_err(|e| e.to_string())?;
            let unreduced =
                bracket::bracket_unreduced_with(&d, budget).map_err(|e| e.to_string())?;
            let f = bracket::f_poly_with(&d, budget).map_err(|e| e.to_string())?;
            let at_root = match r {
                Some(level) => {
                    let params = RootParams::new(level);
                    Some(reduced.eval(params.a))
                }
                None => None,
            };
            match format {
                Format::Text => {
                    println!("code:      {}", d.serialize());
                    println!("writhe:    {}", d.writhe());
                    println!("bracket:   {}", reduced);
                    println!("unreduced: {}", unreduced);
                    println!("f:         {}", f);
                    if let Some(v) = at_root {
                        println!("bracket at level {}: {}", r.unwrap(), format_complex(v));
                    }
                }
                Format::Json => {
                    let out = BracketJson {
                        code: d.serialize(),
                        writhe: d.writhe(),
                        reduced: reduced.to_string(),
                        unreduced: unreduced.to_string(),
                        f: f.to_string(),
                        at_root: at_root.map(ComplexJson::new),
                    };
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
        }
        Command::Jones { input, format } => {
            let d = input.load()?;
            let v = bracket::jones(&d).map_err(|e| e.to_string())?;
            match format {
                Format::Text => println!("V = {}", v),
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "jones": v.to_string() })
                ),
            }
        }
        Command::Colored { input, r, colors, format } => {
            let d = input.load()?;
            let colors: Vec<u32> = colors
                .split(',')
                .map(|s| s.trim().parse::<u32>().map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let params = RootParams::new(r);
            let v = vlink_core::tangle::colored_bracket(&d, &colors, &params, budget)
                .map_err(|e| e.to_string())?;
            match format {
                Format::Text => println!("<K^a> = {}", format_complex(v)),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&ColoredJson {
                        r,
                        colors,
                        value: ComplexJson::new(v),
                    })
                    .unwrap()
                ),
            }
        }
        Command::Wrt { input, r, format, verbose } => {
            let d = input.load()?;
            let params = RootParams::new(r);
            let result = wrt::normalized_wrt(&d, &params, budget).map_err(|e| e.to_string())?;
            match format {
                Format::Text => {
                    println!("Z = {}", format_complex(result.normalized));
                    if verbose {
                        println!("unnormalized: {}", format_complex(result.unnormalized));
                        println!(
                            "signature: b+ = {}, b- = {}, n = {}",
                            result.b_plus, result.b_minus, result.n_sig
                        );
                        println!("mu = {}", result.mu);
                        println!("alpha = {}", format_complex(result.alpha));
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&WrtJson::new(&result)).unwrap()
                    );
                }
            }
        }
        Command::Group { input, three_manifold, format } => {
            let d = input.load()?;
            let p = if three_manifold {
                groups::three_manifold_group(&d)
            } else {
                groups::wirtinger(&d)
            };
            let ab = groups::abelianization(&p);
            let homs = groups::count_homs_s3(&p);
            match format {
                Format::Text => {
                    println!("{}", p);
                    println!("abelianization: {}", ab);
                    if homs > 0 {
                        println!("homomorphisms to S3: {}", homs);
                    }
                }
                Format::Json => {
                    let out = GroupJson {
                        generators: p.generators.clone(),
                        relators: p
                            .relators
                            .iter()
                            .map(|r| {
                                r.iter()
                                    .map(|&(g, e)| {
                                        if e == 1 {
                                            p.generators[g].clone()
                                        } else {
                                            format!("{}^{}", p.generators[g], e)
                                        }
                                    })
                                    .collect::<Vec<_>>()
                                    .join(" ")
                            })
                            .collect(),
                        presentation: p.to_string(),
                        abelianization: ab.to_string(),
                        s3_homomorphisms: homs,
                    };
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
        }
        Command::Move { input, list, apply, walk, steps, seed, max_crossings, format } => {
            let d = input.load()?;
            let emit = |moved: &VirtualLinkDiagram| match format {
                Format::Text => println!("{}", moved.serialize()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&DiagramJson::from_diagram(moved)).unwrap()
                ),
            };
            if let Some(kind) = list {
                let kind = parse_move_kind(&kind)?;
                let sites = moves::enumerate_sites(&d, kind);
                for (i, site) in sites.iter().enumerate() {
                    println!("{}: {:?}", i, site);
                }
                if sites.is_empty() {
                    println!("no applicable sites");
                }
            } else if let Some(spec) = apply {
                let (kind, index) = spec
                    .split_once(':')
                    .ok_or_else(|| "expected KIND:INDEX".to_string())?;
                let kind = parse_move_kind(kind)?;
                let index: usize = index.parse().map_err(|_| "bad index".to_string())?;
                let sites = moves::enumerate_sites(&d, kind);
                let site = sites
                    .get(index)
                    .ok_or_else(|| format!("only {} sites available", sites.len()))?;
                let moved = moves::apply(&d, site).map_err(|e| e.to_string())?;
                emit(&moved);
            } else if let Some(kinds) = walk {
                let kinds: Vec<MoveKind> = kinds
                    .split(',')
                    .map(|s| parse_move_kind(s.trim()))
                    .collect::<Result<_, _>>()?;
                let walked = moves::random_walk(&d, &kinds, steps, seed, max_crossings);
                emit(&walked);
            } else {
                return Err("use one of --list, --apply, --walk".to_string());
            }
        }
        Command::Verify { format, calibration } => {
            let reports = verify::run_all();
            let all_pass = reports.iter().all(|r| r.passed());
            match format {
                Format::Text => {
                    for report in &reports {
                        println!("{}", report.summary_line());
                        for c in &report.checks {
                            println!(
                                "  [{}] {} — {}",
                                if c.passed { "pass" } else { "FAIL" },
                                c.label,
                                c.detail
                            );
                        }
                    }
                    let gaps: Vec<u32> = reports
                        .iter()
                        .filter(|r| !r.passed() && r.known_gap)
                        .map(|r| r.id)
                        .collect();
                    if !gaps.is_empty() {
                        println!(
                            "documented gaps in criteria {:?}: the published level-4 values \
                             and the trivial 3-manifold group of the hatted example are \
                             mutually inconsistent; no small diagram attains both (see the \
                             calibration report)",
                            gaps
                        );
                    }
                }
                Format::Json => {
                    let out: Vec<VerifyCriterionJson> = reports
                        .iter()
                        .map(|r| VerifyCriterionJson {
                            id: r.id,
                            name: r.name.to_string(),
                            passed: r.passed(),
                            known_gap: r.known_gap,
                            checks: r
                                .checks
                                .iter()
                                .map(|c| VerifyLineJson {
                                    label: c.label.clone(),
                                    passed: c.passed,
                                    detail: c.detail.clone(),
                                })
                                .collect(),
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&out).unwrap());
                }
            }
            if calibration {
                let report = wrt::calibrate_conventions(budget);
                println!("{}", report);
            }
            if !all_pass {
                return Err("verification reported failing checks".to_string());
            }
        }
        Command::BuiltinList => {
            for name in codec::BUILTIN_NAMES {
                let d = codec::builtin(name).unwrap();
                println!("{:10} {}", name, d.serialize());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::FAILURE
        }
    }
}
