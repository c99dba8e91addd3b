//! Command-line front end: analyze / decompose / oracle / crossvalidate /
//! generate. Structured reports go to standard output, human summaries to
//! standard error; all randomness flows from the --seed flag, so a rerun
//! with the same inputs reproduces the report byte for byte.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use cmw::conditions::{
    classify_cm, is_pc_or_vertex_componentwise, CmCertificate, ConditionId, Verdict,
};
use cmw::covers::{
    intersect_all, irreducible_decomposition, is_unmixed, minimal_weighted_covers, UnmixedReport,
    WeightedCover, DEFAULT_COVER_BUDGET,
};
use cmw::generate::{class_pc_graph, girth5_graph, mixed_instance, ClassPcOptions, WeightMode};
use cmw::graph::{parse_graph, WeightedGraph};
use cmw::ideal::{weighted_edge_ideal, MonomialIdeal};
use cmw::oracle::{is_cm_oracle, CmOracleReport, OracleError, OracleOptions, DEFAULT_FACE_BUDGET};
use cmw::structure::girth;
use cmw::Weight;

#[derive(Parser)]
#[command(
    name = "cmw",
    about = "Cohen-Macaulay classification of edge-weighted graphs of girth at least five",
    version
)]
struct Cli {
    /// Work budget for cover enumeration and homology; overrides CMW_BUDGET.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CrossMode {
    /// classifier vs class-PC + unmixedness
    TheoremVsUnmixed,
    /// classifier vs the homology oracle
    TheoremVsOracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    ClassPc,
    AnyGirth5,
}

#[derive(Clone, Copy, ValueEnum)]
enum ForceArg {
    Satisfy,
    ViolateA,
    ViolateB,
    ViolateC,
}

#[derive(Subcommand)]
enum Command {
    /// Girth, class-PC classification, weight conditions and the verdict.
    Analyze { path: PathBuf },
    /// Minimal weighted covers, irreducible decomposition, unmixedness.
    Decompose { path: PathBuf },
    /// Exact Cohen-Macaulayness through polarization and homology.
    Oracle {
        path: PathBuf,
        /// 0 for the rationals or a prime.
        #[arg(long, default_value_t = 0)]
        field_char: u32,
    },
    /// Run both sides of an equivalence on seeded random instances.
    Crossvalidate {
        #[arg(long, value_enum)]
        mode: CrossMode,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
        #[arg(long, default_value_t = 4)]
        max_weight: Weight,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        field_char: u32,
    },
    /// Emit a random graph document on standard output.
    Generate {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_weight: Weight,
        /// Only for class-pc: force the weights to satisfy all conditions or
        /// to violate exactly one.
        #[arg(long, value_enum)]
        force: Option<ForceArg>,
    },
}

#[derive(Serialize)]
struct RunReport<T: Serialize> {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    report: T,
}

fn emit<T: Serialize>(report: &RunReport<T>) {
    println!(
        "{}",
        serde_json::to_string(report).expect("report serialization")
    );
}

fn digest(text: &str) -> String {
    format!("sha256:{:x}", Sha256::digest(text.as_bytes()))
}

fn read_document(path: &PathBuf) -> Result<(String, WeightedGraph)> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
    } else {
        text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    let graph = parse_graph(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok((text, graph))
}

fn budgets(cli_budget: Option<u64>) -> (u64, u64) {
    // (face budget for homology, raw-space budget for cover enumeration)
    let env = std::env::var("CMW_BUDGET")
        .ok()
        .and_then(|v| v.parse::<u64>().ok());
    match cli_budget.or(env) {
        Some(b) => (b, b),
        None => (DEFAULT_FACE_BUDGET, DEFAULT_COVER_BUDGET),
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    certificate: CmCertificate,
    out_of_scope: bool,
}

#[derive(Serialize)]
struct DecomposeReport {
    covers: Vec<WeightedCover>,
    components: Vec<MonomialIdeal>,
    unmixed: UnmixedReport,
    intersection_matches_ideal: bool,
}

#[derive(Serialize)]
struct CrossReport {
    mode: &'static str,
    count: u64,
    max_vertices: usize,
    max_weight: Weight,
    field_char: u32,
    agreements: u64,
    skipped: u64,
    disagreements: Vec<Disagreement>,
}

#[derive(Serialize)]
struct Disagreement {
    index: u64,
    document: String,
    classifier: bool,
    other: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    };
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    code
}

fn run(cli: Cli) -> Result<ExitCode> {
    let (face_budget, cover_budget) = budgets(cli.budget);
    match cli.command {
        Command::Analyze { path } => {
            let (text, graph) = read_document(&path)?;
            let certificate = classify_cm(&graph);
            let out_of_scope = certificate.verdict == Verdict::OutOfScope;
            summarize_certificate(&certificate);
            emit(&RunReport {
                command: "analyze",
                input_digest: Some(digest(&text)),
                seed: None,
                report: AnalyzeReport {
                    certificate,
                    out_of_scope,
                },
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { path } => {
            let (text, graph) = read_document(&path)?;
            let covers = minimal_weighted_covers(&graph, cover_budget)?;
            let components = irreducible_decomposition(&graph, cover_budget)?;
            let unmixed = is_unmixed(&graph, cover_budget)?;
            let intersection_matches_ideal = if components.is_empty() {
                weighted_edge_ideal(&graph).is_zero()
            } else {
                intersect_all(&components).equals(&weighted_edge_ideal(&graph))
            };
            eprintln!(
                "{} minimal covers, height {} .. {}, unmixed: {}",
                covers.len(),
                unmixed.height,
                unmixed.big_height,
                unmixed.unmixed
            );
            emit(&RunReport {
                command: "decompose",
                input_digest: Some(digest(&text)),
                seed: None,
                report: DecomposeReport {
                    covers,
                    components,
                    unmixed,
                    intersection_matches_ideal,
                },
            });
            Ok(if intersection_matches_ideal {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Oracle { path, field_char } => {
            let (text, graph) = read_document(&path)?;
            let report = is_cm_oracle(
                &graph,
                &OracleOptions {
                    characteristic: field_char,
                    budget: face_budget,
                },
            )?;
            eprintln!(
                "cohen-macaulay over characteristic {}: {}{}",
                field_char,
                report.cohen_macaulay,
                if report.torsion_warning {
                    " (torsion seen: field-dependent candidates)"
                } else {
                    ""
                }
            );
            emit(&RunReport {
                command: "oracle",
                input_digest: Some(digest(&text)),
                seed: None,
                report,
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Crossvalidate {
            mode,
            count,
            max_vertices,
            max_weight,
            seed,
            field_char,
        } => {
            let report = crossvalidate(
                mode,
                count,
                max_vertices,
                max_weight,
                seed,
                field_char,
                face_budget,
                cover_budget,
            )?;
            eprintln!(
                "{}: {} agreements, {} skipped, {} disagreements",
                report.mode,
                report.agreements,
                report.skipped,
                report.disagreements.len()
            );
            let ok = report.disagreements.is_empty();
            emit(&RunReport {
                command: "crossvalidate",
                input_digest: None,
                seed: Some(seed),
                report,
            });
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Generate {
            kind,
            n,
            seed,
            max_weight,
            force,
        } => {
            use cmw::generate::GenError;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let graph = match kind {
                GenKind::AnyGirth5 => girth5_graph(n, max_weight, &mut rng)?,
                GenKind::ClassPc => {
                    let mode = match force {
                        None => WeightMode::Random,
                        Some(ForceArg::Satisfy) => WeightMode::Satisfy,
                        Some(ForceArg::ViolateA) => WeightMode::Violate(ConditionId::A),
                        Some(ForceArg::ViolateB) => WeightMode::Violate(ConditionId::B),
                        Some(ForceArg::ViolateC) => WeightMode::Violate(ConditionId::C),
                    };
                    match class_pc_graph(
                        &ClassPcOptions {
                            n,
                            max_weight,
                            mode,
                        },
                        &mut rng,
                    ) {
                        Ok(g) => g,
                        Err(e @ GenError::UnrepresentableSize(_)) => return Err(e.into()),
                        Err(e) => return Err(e.into()),
                    }
                }
            };
            eprintln!(
                "{} vertices, {} edges, girth {}",
                graph.vertex_count(),
                graph.edge_count(),
                girth(&graph)
            );
            println!("{}", graph.to_document());
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn crossvalidate(
    mode: CrossMode,
    count: u64,
    max_vertices: usize,
    max_weight: Weight,
    seed: u64,
    field_char: u32,
    face_budget: u64,
    cover_budget: u64,
) -> Result<CrossReport> {
    let mode_name = match mode {
        CrossMode::TheoremVsUnmixed => "theorem-vs-unmixed",
        CrossMode::TheoremVsOracle => "theorem-vs-oracle",
    };
    let mut agreements = 0u64;
    let mut skipped = 0u64;
    let mut disagreements = Vec::new();
    for index in 0..count {
        let graph = mixed_instance(seed, index, max_vertices, max_weight);
        let classifier = classify_cm(&graph).verdict == Verdict::CohenMacaulay;
        let other = match mode {
            CrossMode::TheoremVsUnmixed => match is_unmixed(&graph, cover_budget) {
                Ok(r) => r.unmixed && is_pc_or_vertex_componentwise(&graph),
                Err(_) => {
                    skipped += 1;
                    continue;
                }
            },
            CrossMode::TheoremVsOracle => {
                match is_cm_oracle(
                    &graph,
                    &OracleOptions {
                        characteristic: field_char,
                        budget: face_budget,
                    },
                ) {
                    Ok(CmOracleReport { cohen_macaulay, .. }) => cohen_macaulay,
                    Err(OracleError::Complex(_)) => {
                        skipped += 1;
                        continue;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        };
        if classifier == other {
            agreements += 1;
        } else {
            disagreements.push(Disagreement {
                index,
                document: graph.to_document(),
                classifier,
                other,
            });
        }
    }
    Ok(CrossReport {
        mode: mode_name,
        count,
        max_vertices,
        max_weight,
        field_char,
        agreements,
        skipped,
        disagreements,
    })
}

fn summarize_certificate(cert: &CmCertificate) {
    let verdict = match cert.verdict {
        Verdict::CohenMacaulay => "cohen-macaulay",
        Verdict::NotCohenMacaulay => "not cohen-macaulay",
        Verdict::OutOfScope => "out of scope (girth below 5)",
    };
    eprintln!(
        "girth {}, {} component(s): {verdict}",
        cert.girth, cert.component_count
    );
    for (cycle, witness) in &cert.balanced {
        eprintln!("  balanced vertex {} on cycle {}", witness.vertex, cycle);
    }
    for violation in &cert.violations {
        eprintln!(
            "  violates ({:?}) at {}: {:?}",
            violation.condition, violation.location, violation.weights
        );
    }
    if let Some(not_pc) = &cert.not_pc {
        eprintln!(
            "  not in class PC: {} ({:?})",
            not_pc.reason, not_pc.vertices
        );
    }
}
