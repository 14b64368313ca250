//! Command-line front end: every verification pipeline of the library,
//! with machine-readable (JSON/CSV/DOT) and human-readable outputs.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input,
//! 3 semantically invalid input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use merminpoly::fine::{fine_check, ChshDistribution};
use merminpoly::lambda2::{
    lambda2_member, membership_cross_check, rho_from, MembershipCertificate, NS232Distribution,
};
use merminpoly::mermin::{
    descriptor_from_vertex, enumerate_mp_vertices, ExpectationPoint,
};
use merminpoly::scenario::{scenario_json, BetaAssignment, CncKind};
use merminpoly::serial::{rat_to_string, ParseError};
use merminpoly::symmetry::{
    canonical_even_vertex, canonical_type1_vertex, canonical_type2_vertex, generate_g0,
    generate_g1, G0Element, G1Element,
};
use merminpoly::verify::{criterion_names, run_criterion, Ctx, VerifyOptions};

#[derive(Parser)]
#[command(name = "merminpoly", version, about = "Exact engine for Mermin-square nonsignaling polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Args)]
struct BetaArg {
    /// Parity assignment: "beta0", "beta1", inline JSON, or a JSON file path.
    #[arg(long, default_value = "beta1")]
    beta: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print the scenario structure (measurements, contexts, beta).
    Scenario {
        #[command(flatten)]
        beta: BetaArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Enumerate the polytope vertices and verify the classification.
    Vertices {
        #[command(flatten)]
        beta: BetaArg,
        /// Output directory for the CSV/JSON artifacts.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build the vertex adjacency graph (DOT plus degree report).
    Graph {
        #[command(flatten)]
        beta: BetaArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Orbit partition of the vertices under the matching symmetry group.
    Orbits {
        #[command(flatten)]
        beta: BetaArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Stabilizer of a vertex, with dihedral recognition.
    Stabilizer {
        #[command(flatten)]
        beta: BetaArg,
        /// "canonical" (the class representative), "type1", "type2", or a
        /// JSON expectation point (inline or a file path).
        #[arg(long, default_value = "canonical")]
        vertex: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate the three noncontextuality criteria on a CHSH distribution.
    Fine {
        /// JSON file with the four context tables.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Membership of a (2,3,2) distribution in the stabilizer-dual polytope.
    Lambda2 {
        /// JSON file with the nine context tables.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the consolidated verification suite.
    VerifyAll {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        /// Comma-separated criterion names (see --list).
        #[arg(long)]
        only: Option<String>,
        /// List criterion names and exit.
        #[arg(long, default_value_t = false)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e.downcast_ref::<ParseError>() {
                Some(ParseError::Semantic(_)) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn parse_beta(spec: &str) -> Result<BetaAssignment, anyhow::Error> {
    match spec {
        "beta0" => Ok(BetaAssignment::beta0()),
        "beta1" => Ok(BetaAssignment::beta1()),
        other => {
            let raw = if Path::new(other).exists() {
                std::fs::read_to_string(other)?
            } else {
                other.to_string()
            };
            let value: serde_json::Value =
                serde_json::from_str(&raw).map_err(|e| ParseError::Malformed(e.to_string()))?;
            Ok(BetaAssignment::from_json(&value)?)
        }
    }
}

fn read_json(path: &Path) -> Result<serde_json::Value, anyhow::Error> {
    let raw = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&raw).map_err(|e| ParseError::Malformed(e.to_string()))?)
}

fn beta_name(beta: &BetaAssignment) -> String {
    if *beta == BetaAssignment::beta0() {
        "beta0".into()
    } else if *beta == BetaAssignment::beta1() {
        "beta1".into()
    } else {
        format!("beta_{}", beta.bits().iter().map(|b| b.to_string()).collect::<String>())
    }
}

fn kind_name(k: Option<CncKind>) -> &'static str {
    match k {
        None => "deterministic",
        Some(CncKind::Type1) => "type1",
        Some(CncKind::Type2) => "type2",
        Some(CncKind::Full) => "full",
    }
}

fn run(cli: Cli) -> Result<ExitCode, anyhow::Error> {
    match cli.command {
        Command::Scenario { beta, format } => {
            let beta = parse_beta(&beta.beta)?;
            let mut j = scenario_json();
            j["beta"] = beta.to_json();
            j["cohomology_class"] = serde_json::Value::from(beta.cohomology_class());
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&j)?),
                _ => {
                    println!("measurements: {}", serde_json::to_string(&j["measurements"])?);
                    println!("contexts: {}", serde_json::to_string(&j["contexts"])?);
                    println!(
                        "beta: {} (class {})",
                        serde_json::to_string(&j["beta"])?,
                        beta.cohomology_class()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Vertices { beta, out, format } => {
            let beta = parse_beta(&beta.beta)?;
            let report = merminpoly::mermin::verify_vertex_classification(&beta)?;
            let (_, vs) = enumerate_mp_vertices(&beta)?;
            let name = beta_name(&beta);
            let mut csv = String::new();
            csv.push_str("index,type,m_00,m_01,m_02,m_10,m_11,m_12,m_20,m_21,m_22\n");
            for (k, v) in vs.vertices.iter().enumerate() {
                let e = ExpectationPoint::from_vec(v).expect("vertex in range");
                let kind = descriptor_from_vertex(&e, &beta).map(|d| d.kind());
                let coords: Vec<String> = v.iter().map(rat_to_string).collect();
                csv.push_str(&format!("{k},{},{}\n", kind_name(kind.flatten()), coords.join(",")));
            }
            let json = serde_json::json!({
                "beta": beta.to_json(),
                "class": report.class,
                "enumerated": report.enumerated,
                "constructed": report.constructed,
                "deterministic": report.deterministic,
                "type1": report.type1,
                "type2": report.type2,
                "bijection": report.bijection,
            });
            if let Some(dir) = &out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("{name}_vertices.csv")), &csv)?;
                std::fs::write(
                    dir.join(format!("{name}_classification.json")),
                    serde_json::to_string_pretty(&json)?,
                )?;
            }
            match format {
                Format::Csv => print!("{csv}"),
                Format::Json => println!("{}", serde_json::to_string_pretty(&json)?),
                _ => println!(
                    "{name}: {} vertices ({} deterministic, {} type1, {} type2), bijection: {}",
                    report.enumerated,
                    report.deterministic,
                    report.type1,
                    report.type2,
                    report.bijection
                ),
            }
            Ok(if report.bijection { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Graph { beta, out, format } => {
            let beta = parse_beta(&beta.beta)?;
            let (p, vs) = enumerate_mp_vertices(&beta)?;
            let mut g = p.build_graph(&vs)?;
            for (k, v) in vs.vertices.iter().enumerate() {
                let e = ExpectationPoint::from_vec(v).expect("vertex in range");
                let kind = descriptor_from_vertex(&e, &beta).map(|d| d.kind());
                g.set_label(k, format!("{k}:{}", kind_name(kind.flatten())));
            }
            let name = beta_name(&beta);
            let degrees = serde_json::json!({
                "beta": beta.to_json(),
                "nodes": g.n(),
                "edges": g.edge_count(),
                "degree_histogram": g.degree_histogram()
                    .into_iter()
                    .map(|(d, n)| serde_json::json!({"degree": d, "count": n}))
                    .collect::<Vec<_>>(),
            });
            if let Some(dir) = &out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join(format!("{name}_graph.dot")), g.to_dot())?;
                std::fs::write(
                    dir.join(format!("{name}_degrees.json")),
                    serde_json::to_string_pretty(&degrees)?,
                )?;
            }
            match format {
                Format::Dot => print!("{}", g.to_dot()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&degrees)?),
                _ => println!(
                    "{name}: {} nodes, {} edges, degrees {:?}",
                    g.n(),
                    g.edge_count(),
                    g.degree_histogram()
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbits { beta, format } => {
            let beta = parse_beta(&beta.beta)?;
            let (_, vs) = enumerate_mp_vertices(&beta)?;
            let points: Vec<ExpectationPoint> = vs
                .vertices
                .iter()
                .map(|v| ExpectationPoint::from_vec(v).expect("vertex in range"))
                .collect();
            let orbits: Vec<Vec<ExpectationPoint>> = if beta.cohomology_class() == 0 {
                let g0 = generate_g0();
                g0.orbit_partition(&points, |g: &G0Element, e| g.act(e))
            } else {
                let g1 = generate_g1();
                g1.orbit_partition(&points, |g: &G1Element, e| g.act(e))
            };
            let json = serde_json::json!({
                "beta": beta.to_json(),
                "orbits": orbits.iter().map(|o| serde_json::json!({
                    "size": o.len(),
                    "representative": o[0].to_json(),
                })).collect::<Vec<_>>(),
            });
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&json)?),
                _ => {
                    println!(
                        "{} orbit(s): sizes {:?}",
                        orbits.len(),
                        orbits.iter().map(|o| o.len()).collect::<Vec<_>>()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Stabilizer { beta, vertex, format } => {
            let beta = parse_beta(&beta.beta)?;
            let class = beta.cohomology_class();
            let point = match vertex.as_str() {
                "canonical" => {
                    if class == 0 {
                        canonical_even_vertex()
                    } else {
                        canonical_type2_vertex()
                    }
                }
                "type1" => canonical_type1_vertex(),
                "type2" => canonical_type2_vertex(),
                other => {
                    let raw = if Path::new(other).exists() {
                        std::fs::read_to_string(other)?
                    } else {
                        other.to_string()
                    };
                    let value: serde_json::Value = serde_json::from_str(&raw)
                        .map_err(|e| ParseError::Malformed(e.to_string()))?;
                    ExpectationPoint::from_json(&value)?
                }
            };
            let (order, dihedral): (usize, Option<usize>) = if class == 0 {
                let g = generate_g0();
                let stab = g.stabilizer(&point, |g: &G0Element, e| g.act(e));
                (stab.order(), stab.dihedral_structure().map(|(n, _, _)| n))
            } else {
                let g = generate_g1();
                let stab = g.stabilizer(&point, |g: &G1Element, e| g.act(e));
                (stab.order(), stab.dihedral_structure().map(|(n, _, _)| n))
            };
            let json = serde_json::json!({
                "beta": beta.to_json(),
                "vertex": point.to_json(),
                "order": order,
                "dihedral_half_order": dihedral,
            });
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&json)?),
                _ => println!(
                    "stabilizer order {order}{}",
                    match dihedral {
                        Some(n) => format!(", dihedral (half order {n})"),
                        None => String::new(),
                    }
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fine { input, format } => {
            let value = read_json(&input)?;
            let dist = ChshDistribution::from_json(&value)?;
            let report = fine_check(&dist)?;
            let violated: Vec<usize> = report
                .values
                .iter()
                .enumerate()
                .filter(|(_, v)| {
                    *v < &merminpoly::rat(0) || *v > &merminpoly::rat(2)
                })
                .map(|(k, _)| k)
                .collect();
            let json = serde_json::json!({
                "chsh_values": report.values.iter().map(rat_to_string).collect::<Vec<_>>(),
                "violated_inequalities": violated,
                "chsh_satisfied": report.chsh_satisfied,
                "interval": {
                    "lower": rat_to_string(&report.interval.lower),
                    "upper": rat_to_string(&report.interval.upper),
                    "nonempty": report.interval.exists(),
                },
                "extension_exists": report.extension_exists,
                "noncontextual": report.decomposition.is_some(),
                "witness": report.decomposition.as_ref().map(|l| l.iter().map(rat_to_string).collect::<Vec<_>>()),
                "criteria_agree": report.agree,
            });
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&json)?),
                _ => println!(
                    "{} (CHSH values {:?})",
                    if report.chsh_satisfied { "noncontextual" } else { "contextual" },
                    report.values.iter().map(rat_to_string).collect::<Vec<_>>()
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Lambda2 { input, format } => {
            let value = read_json(&input)?;
            let dist = NS232Distribution::from_json(&value)?;
            let (member, certificate) = lambda2_member(&dist);
            let cross = membership_cross_check(&dist)
                .map_err(|e| anyhow::anyhow!("cross-check failed: {e}"))?;
            let coeffs = rho_from(&dist);
            let json = serde_json::json!({
                "member": member,
                "operator_test_agrees": cross.member_via_operators == member,
                "violating_projector": cross.violating_projector,
                "pauli_coefficients": coeffs.to_json(),
                "certificate": match &certificate {
                    MembershipCertificate::Member(image) => serde_json::json!({
                        "image": image.to_json(),
                    }),
                    MembershipCertificate::NegativeEntry { ctx, a, b, value } => serde_json::json!({
                        "negative_entry": {
                            "context": merminpoly::scenario::ctx_label(*ctx),
                            "outcome": format!("{a}{b}"),
                            "value": rat_to_string(value),
                        }
                    }),
                },
            });
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&json)?),
                _ => println!("{}", if member { "member" } else { "non-member" }),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyAll { seed, samples, only, list, out } => {
            if list {
                for name in criterion_names() {
                    println!("{name}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let mut opts = VerifyOptions::default();
            if let Some(s) = seed {
                opts.seed = s;
            }
            if let Some(n) = samples {
                opts.samples = n;
            }
            if let Some(names) = only {
                let names: Vec<String> = names.split(',').map(|s| s.trim().to_string()).collect();
                for n in &names {
                    if !criterion_names().contains(&n.as_str()) {
                        return Err(
                            ParseError::Malformed(format!("unknown criterion '{n}'")).into()
                        );
                    }
                }
                opts.only = Some(names);
            }
            let ctx = Ctx::new();
            let selected: Vec<&str> = match &opts.only {
                None => criterion_names(),
                Some(names) => criterion_names()
                    .into_iter()
                    .filter(|n| names.iter().any(|x| x == n))
                    .collect(),
            };
            let mut reports = Vec::new();
            for name in selected {
                let report = run_criterion(name, &ctx, &opts).expect("known criterion");
                println!("{}", report.line());
                reports.push(report);
            }
            let all_pass = reports.iter().all(|r| r.pass);
            let json = serde_json::json!({
                "seed": opts.seed,
                "samples": opts.samples,
                "all_pass": all_pass,
                "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            });
            if let Some(path) = out {
                if let Some(parent) = path.parent() {
                    if !parent.as_os_str().is_empty() {
                        std::fs::create_dir_all(parent)?;
                    }
                }
                std::fs::write(&path, serde_json::to_string_pretty(&json)?)?;
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                let failed: Vec<&str> =
                    reports.iter().filter(|r| !r.pass).map(|r| r.id.as_str()).collect();
                eprintln!("failed criteria: {failed:?}");
                ExitCode::from(1)
            })
        }
    }
}
