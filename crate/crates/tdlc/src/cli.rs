//! Command line driver: each subcommand reads a TOML job file, runs one
//! stage of the pipeline, writes a JSON artifact plus a text report, and
//! exits 0 when every requested check passed, 1 when a check failed, and 2
//! on input or parse errors.
//!
//! Artifacts are written atomically (a temporary file in the destination
//! directory, then a rename), so a crash never leaves a partial artifact,
//! and configuration errors are detected before anything is written.
//! Identical jobs produce byte-identical artifacts: nothing time- or
//! machine-dependent is recorded.
//!
//! Every artifact carries a `schema` version and the conventions header;
//! see [`crate::config`] for the job-file format.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::certify::{
    certify, min_link_girth, survey_links, Certificate, CertifyOptions, Environment,
};
use crate::complex::{Complex, TriangleOrbit, VertexAction};
use crate::config::{ComplexSource, JobConfig, SubgroupPlan};
use crate::error::{Error, Result};
use crate::homology::{
    chain_homology, complex_boundaries, simplicial_boundaries, HomologyGroup,
};
use crate::perm::{find_subgroups, PermGroup, Permutation, SubgroupFilter};
use crate::pipeline::{
    assemble_coset, certified_triple_search, BuiltGroup, SearchSpec, SearchStats,
};
use crate::raag::{display_edge_word, edge_word_to_raag, rewrite_in_edge_generators, RaagWord};
use crate::tree::{
    build_ball, canonical_labeling, enumerate_universal, max_edge_fixator_size,
    root_local_action_image, TreeSide,
};

/// Version stamped into every JSON artifact.
pub const SCHEMA_VERSION: u32 = 1;

const CONVENTION_NOTE: &str =
    "Convention: permutations act on the right, so cycles and generator words apply left to \
     right; cycle notation is 1-based.";

// ---------------------------------------------------------------------------
// Argument grammar
// ---------------------------------------------------------------------------

/// Top-level argument grammar.
#[derive(Debug, Parser)]
#[command(
    name = "tdlc",
    version,
    about = "Build and certify highly symmetric flag complexes",
    long_about = format!(
        "Build and certify highly symmetric flag complexes.\n\n{CONVENTION_NOTE}\n\nEach \
         subcommand reads a TOML job file (see docs/config.md), writes <name>.json and \
         <name>.txt artifacts, and exits 0 when every requested check passed, 1 when a check \
         failed, 2 on input errors. Set TDLC_CERTIFY_THREADS to cap link-survey parallelism."
    )
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct CommonArgs {
    /// TOML job file describing the group, complex, and checks.
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Directory for artifacts; overrides the job file's output section.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Print the JSON artifact to stdout instead of the text report.
    #[arg(long)]
    pub json: bool,
    /// Print nothing to stdout (artifacts are still written).
    #[arg(long)]
    pub quiet: bool,
}

/// The available subcommands.
#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Build the complex and report its structure (no checks).
    Build(CommonArgs),
    /// Build the complex and evaluate the full curvature/homology
    /// certificate.
    Certify(CommonArgs),
    /// Exact integral homology of the complex (any facet dimension).
    Homology(CommonArgs),
    /// Survey the vertex links: girth, regularity, bipartiteness.
    Links(CommonArgs),
    /// Normal forms and level-kernel rewriting in a graph group.
    RaagCheck(CommonArgs),
    /// Enumerate tree-ball maps with prescribed local actions.
    TreeCheck(CommonArgs),
    /// List conjugacy classes of subgroups matching the search spec.
    SearchSubgroups(CommonArgs),
}

impl Command {
    fn common(&self) -> &CommonArgs {
        match self {
            Command::Build(c)
            | Command::Certify(c)
            | Command::Homology(c)
            | Command::Links(c)
            | Command::RaagCheck(c)
            | Command::TreeCheck(c)
            | Command::SearchSubgroups(c) => c,
        }
    }

    fn kind(&self) -> CommandKind {
        match self {
            Command::Build(_) => CommandKind::Build,
            Command::Certify(_) => CommandKind::Certify,
            Command::Homology(_) => CommandKind::Homology,
            Command::Links(_) => CommandKind::Links,
            Command::RaagCheck(_) => CommandKind::RaagCheck,
            Command::TreeCheck(_) => CommandKind::TreeCheck,
            Command::SearchSubgroups(_) => CommandKind::SearchSubgroups,
        }
    }
}

/// Which stage to run, independent of argument plumbing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Build,
    Certify,
    Homology,
    Links,
    RaagCheck,
    TreeCheck,
    SearchSubgroups,
}

impl CommandKind {
    /// Artifact base name (`<stem>.json` and `<stem>.txt`).
    pub fn artifact_stem(self) -> &'static str {
        match self {
            CommandKind::Build => "complex",
            CommandKind::Certify => "certificate",
            CommandKind::Homology => "homology",
            CommandKind::Links => "links",
            CommandKind::RaagCheck => "raag",
            CommandKind::TreeCheck => "tree",
            CommandKind::SearchSubgroups => "subgroups",
        }
    }

    fn name(self) -> &'static str {
        match self {
            CommandKind::Build => "build",
            CommandKind::Certify => "certify",
            CommandKind::Homology => "homology",
            CommandKind::Links => "links",
            CommandKind::RaagCheck => "raag-check",
            CommandKind::TreeCheck => "tree-check",
            CommandKind::SearchSubgroups => "search-subgroups",
        }
    }
}

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

/// Full command line entry: parse arguments, run, report. Returns the
/// process exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let common = cli.command.common().clone();
    match execute(cli.command.kind(), &common) {
        Ok(outcome) => {
            if common.json && !common.quiet {
                println!("{}", outcome.json.trim_end());
            } else if !common.quiet {
                print!("{}", outcome.report);
            }
            outcome.exit_code
        }
        Err(error) => {
            eprintln!("error: {error}");
            2
        }
    }
}

fn execute(kind: CommandKind, common: &CommonArgs) -> Result<Outcome> {
    let config = JobConfig::from_path(&common.config)?;
    let out_dir = common
        .out
        .clone()
        .or_else(|| {
            config.output.as_ref().and_then(|o| o.directory.as_ref()).map(PathBuf::from)
        })
        .unwrap_or_else(|| PathBuf::from("."));
    let options = RunOptions { out_dir, threads: CertifyOptions::from_env()?.threads };
    run(kind, &config, &options)
}

/// Everything `run` needs beyond the configuration itself.
#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Artifact directory; created if missing.
    pub out_dir: PathBuf,
    /// Link-survey thread cap (from `TDLC_CERTIFY_THREADS`).
    pub threads: Option<usize>,
}

/// What a command produced: the exit code, the artifact paths, and both
/// renderings of the result.
#[derive(Clone, Debug)]
pub struct Outcome {
    /// 0 when every requested check passed, 1 when a check failed.
    pub exit_code: i32,
    /// The JSON artifact and the text report, in that order.
    pub artifacts: Vec<PathBuf>,
    /// The text report (also written to the `.txt` artifact).
    pub report: String,
    /// The JSON artifact contents.
    pub json: String,
}

/// Runs one subcommand against a parsed configuration, writing artifacts to
/// `options.out_dir`. The configuration is fully validated before any file
/// is touched, so a parse or validation error never leaves a partial
/// artifact.
pub fn run(kind: CommandKind, config: &JobConfig, options: &RunOptions) -> Result<Outcome> {
    config.validate()?;
    let (payload, report, failed) = match kind {
        CommandKind::Build => run_build(config)?,
        CommandKind::Certify => run_certify(config, options)?,
        CommandKind::Homology => run_homology(config)?,
        CommandKind::Links => run_links(config, options)?,
        CommandKind::RaagCheck => run_raag(config)?,
        CommandKind::TreeCheck => run_tree(config)?,
        CommandKind::SearchSubgroups => run_search(config)?,
    };
    let artifact = ArtifactEnvelope {
        schema: SCHEMA_VERSION,
        command: kind.name(),
        conventions: Environment::standard_conventions(),
        report: payload,
    };
    let json = serde_json::to_string_pretty(&artifact)
        .map_err(|e| Error::input(format!("cannot serialize artifact: {e}")))?
        + "\n";
    let header = format!("# {}\n# schema {}\n# {}\n\n", kind.name(), SCHEMA_VERSION, CONVENTION_NOTE);
    let report = header + &report;
    std::fs::create_dir_all(&options.out_dir)?;
    let json_path = options.out_dir.join(format!("{}.json", kind.artifact_stem()));
    let text_path = options.out_dir.join(format!("{}.txt", kind.artifact_stem()));
    write_atomically(&json_path, &json)?;
    write_atomically(&text_path, &report)?;
    Ok(Outcome {
        exit_code: i32::from(failed),
        artifacts: vec![json_path, text_path],
        report,
        json,
    })
}

/// Writes via a temporary file in the same directory plus a rename, so
/// readers never observe a half-written artifact.
fn write_atomically(path: &Path, contents: &str) -> Result<()> {
    let directory = path.parent().unwrap_or_else(|| Path::new("."));
    let stem = path.file_name().and_then(|n| n.to_str()).unwrap_or("artifact");
    let temp = directory.join(format!(".{stem}.tmp"));
    std::fs::write(&temp, contents)?;
    std::fs::rename(&temp, path)?;
    Ok(())
}

#[derive(Serialize)]
struct ArtifactEnvelope<T: Serialize> {
    schema: u32,
    command: &'static str,
    conventions: Vec<String>,
    report: T,
}

// ---------------------------------------------------------------------------
// Shared complex assembly
// ---------------------------------------------------------------------------

/// A built complex with whatever action and provenance the configuration
/// yields.
struct PreparedComplex {
    source: &'static str,
    complex: Complex,
    action: Option<VertexAction>,
    environment: Environment,
    group_description: Option<String>,
    subgroup_orders: Option<Vec<u64>>,
    part_sizes: Option<[usize; 3]>,
    /// Search outcome when the subgroups came from a search (certify only).
    search: Option<SearchOutcome>,
    plain_triangle_orbits: Option<Vec<TriangleOrbit>>,
}

struct SearchOutcome {
    spec: SearchSpec,
    stats: SearchStats,
    class_count: usize,
    found: bool,
    certificate: Option<Certificate>,
}

fn complex_section(config: &JobConfig) -> Result<&crate::config::ComplexSection> {
    config
        .complex
        .as_ref()
        .ok_or_else(|| Error::input("this command needs a [complex] section"))
}

/// Builds the complex for `build`, `homology` (2-dimensional case), and
/// `links`: explicit facets, or the coset complex of an explicit subgroup
/// triple. A search spec is only meaningful under `certify`.
fn prepare_complex(
    config: &JobConfig,
    for_certify: bool,
    threads: Option<usize>,
) -> Result<PreparedComplex> {
    let section = complex_section(config)?;
    match section.source {
        ComplexSource::Facets => {
            let vertices = section.facet_vertex_count()?;
            let complex = Complex::from_facets(vertices, &section.facets)?;
            let action = if section.symmetries.is_empty() {
                None
            } else {
                let generators = section
                    .symmetries
                    .iter()
                    .map(|text| Permutation::parse_cycles(text, vertices))
                    .collect::<Result<Vec<_>>>()?;
                Some(VertexAction::new(vertices, generators)?)
            };
            let environment = Environment {
                group: "explicit facet list".to_string(),
                subgroup_generators: Vec::new(),
                conventions: Environment::standard_conventions(),
            };
            Ok(PreparedComplex {
                source: "facets",
                complex,
                action,
                environment,
                group_description: None,
                subgroup_orders: None,
                part_sizes: None,
                search: None,
                plain_triangle_orbits: None,
            })
        }
        ComplexSource::Coset => {
            let built = config.build_group()?;
            match config.subgroup_plan(&built)? {
                SubgroupPlan::Explicit(subgroups) => {
                    if subgroups.len() != 3 {
                        return Err(Error::input(format!(
                            "the coset construction takes exactly three subgroups, got {}",
                            subgroups.len()
                        )));
                    }
                    let orders: Vec<u64> = subgroups.iter().map(|h| h.order()).collect();
                    let triple: [PermGroup; 3] =
                        [subgroups[0].clone(), subgroups[1].clone(), subgroups[2].clone()];
                    let assembled = assemble_coset(&built, triple)?;
                    let plain = plain_orbits(&built, &assembled.coset);
                    Ok(PreparedComplex {
                        source: "coset",
                        part_sizes: Some(assembled.coset.part_sizes()),
                        complex: assembled.coset.complex,
                        action: Some(assembled.action),
                        environment: assembled.environment,
                        group_description: Some(built.description().to_string()),
                        subgroup_orders: Some(orders),
                        search: None,
                        plain_triangle_orbits: plain,
                    })
                }
                SubgroupPlan::Search(spec) => {
                    if !for_certify {
                        return Err(Error::input(
                            "a subgroup search spec only makes sense under `certify`; list \
                             explicit generators for this command",
                        ));
                    }
                    let certify_options = config.checks().certify_options(threads);
                    let search = certified_triple_search(&built, &spec, &certify_options)?;
                    let class_count = search.representatives.len();
                    match search.certified {
                        None => Err(Error::input(format!(
                            "no certified triple found: {} classes, {} triples considered",
                            class_count, search.stats.triples_considered
                        ))),
                        Some(triple) => {
                            let orders: Vec<u64> =
                                triple.subgroups.iter().map(|h| h.order()).collect();
                            Ok(PreparedComplex {
                                source: "coset",
                                part_sizes: Some(triple.coset.part_sizes()),
                                complex: triple.coset.complex,
                                action: Some(triple.action),
                                environment: triple.certificate.environment.clone(),
                                group_description: Some(built.description().to_string()),
                                subgroup_orders: Some(orders),
                                search: Some(SearchOutcome {
                                    spec,
                                    stats: search.stats,
                                    class_count,
                                    found: true,
                                    certificate: Some(triple.certificate),
                                }),
                                plain_triangle_orbits: Some(triple.plain_triangle_orbits),
                            })
                        }
                    }
                }
            }
        }
    }
}

/// Triangle orbits of right multiplication alone (no appended symmetries),
/// which preserves the three parts.
fn plain_orbits(
    built: &BuiltGroup,
    coset: &crate::complex::CosetComplex,
) -> Option<Vec<TriangleOrbit>> {
    let action = coset.right_multiplication_action(built.group().generators()).ok()?;
    Some(action.triangle_orbits(&coset.complex))
}

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct BuildReport {
    source: String,
    group: Option<String>,
    subgroup_orders: Option<Vec<u64>>,
    part_sizes: Option<[usize; 3]>,
    vertices: usize,
    edges: usize,
    triangles: usize,
    euler_characteristic: i64,
    connected: bool,
    flag: bool,
    every_edge_in_a_triangle: bool,
    action_generators: Option<usize>,
    action_respects_complex: Option<bool>,
}

fn run_build(config: &JobConfig) -> Result<(serde_json::Value, String, bool)> {
    let prepared = prepare_complex(config, false, None)?;
    let c = &prepared.complex;
    let report = BuildReport {
        source: prepared.source.to_string(),
        group: prepared.group_description.clone(),
        subgroup_orders: prepared.subgroup_orders.clone(),
        part_sizes: prepared.part_sizes,
        vertices: c.vertex_count(),
        edges: c.edge_count(),
        triangles: c.triangle_count(),
        euler_characteristic: c.euler_characteristic(),
        connected: c.is_connected(),
        flag: c.is_flag(),
        every_edge_in_a_triangle: c.every_edge_in_a_triangle(),
        action_generators: prepared.action.as_ref().map(|a| a.generators().len()),
        action_respects_complex: prepared.action.as_ref().map(|a| a.respects(c)),
    };
    let mut text = String::new();
    let _ = writeln!(text, "source: {}", report.source);
    if let Some(group) = &report.group {
        let _ = writeln!(text, "group: {group}");
    }
    if let Some(orders) = &report.subgroup_orders {
        let _ = writeln!(text, "subgroup orders: {orders:?}");
    }
    if let Some(parts) = &report.part_sizes {
        let _ = writeln!(text, "part sizes: {parts:?}");
    }
    let _ = writeln!(
        text,
        "complex: {} vertices, {} edges, {} triangles, euler characteristic {}",
        report.vertices, report.edges, report.triangles, report.euler_characteristic
    );
    let _ = writeln!(text, "connected: {}", report.connected);
    let _ = writeln!(text, "flag: {}", report.flag);
    let _ = writeln!(text, "every edge in a triangle: {}", report.every_edge_in_a_triangle);
    if let (Some(n), Some(ok)) = (report.action_generators, report.action_respects_complex) {
        let _ = writeln!(text, "action: {n} generator(s), respects complex: {ok}");
    }
    Ok((to_value(report)?, text, false))
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CertifyReport {
    source: String,
    group: Option<String>,
    subgroup_orders: Option<Vec<u64>>,
    search: Option<SearchSummary>,
    certificate: Certificate,
    plain_triangle_orbits: Option<Vec<OrbitEntry>>,
}

#[derive(Serialize)]
struct SearchSummary {
    spec: SearchSpec,
    class_count: usize,
    stats: SearchStats,
    found: bool,
}

#[derive(Serialize)]
struct OrbitEntry {
    representative: [u32; 3],
    size: usize,
}

fn run_certify(
    config: &JobConfig,
    options: &RunOptions,
) -> Result<(serde_json::Value, String, bool)> {
    let prepared = prepare_complex(config, true, options.threads)?;
    let checks = config.checks();
    let certificate = match prepared.search.as_ref().and_then(|s| s.certificate.clone()) {
        Some(c) => c,
        None => certify(
            &prepared.complex,
            prepared.action.as_ref(),
            prepared.environment.clone(),
            &checks.certify_options(options.threads),
        )?,
    };
    let orbits = if checks.triangle_orbits {
        prepared.plain_triangle_orbits.as_ref().map(|orbits| {
            orbits
                .iter()
                .map(|o| OrbitEntry { representative: o.representative, size: o.size })
                .collect::<Vec<_>>()
        })
    } else {
        None
    };
    let failed = certificate.any_premise_failed();
    let report = CertifyReport {
        source: prepared.source.to_string(),
        group: prepared.group_description.clone(),
        subgroup_orders: prepared.subgroup_orders.clone(),
        search: prepared.search.as_ref().map(|s| SearchSummary {
            spec: s.spec,
            class_count: s.class_count,
            stats: s.stats,
            found: s.found,
        }),
        certificate,
        plain_triangle_orbits: orbits,
    };
    let mut text = String::new();
    if let Some(search) = &report.search {
        let _ = writeln!(
            text,
            "search: order={} nonabelian={} count={}",
            search.spec.order, search.spec.nonabelian, search.spec.count
        );
        let _ = writeln!(
            text,
            "  classes {}, pool {}, triples considered {}, certified {}",
            search.class_count,
            search.stats.pool_size,
            search.stats.triples_considered,
            u32::from(search.found),
        );
    }
    text.push_str(&report.certificate.text_report());
    if let Some(orbits) = &report.plain_triangle_orbits {
        let _ = writeln!(
            text,
            "triangle orbits under right multiplication alone: {}",
            orbits.len()
        );
        for orbit in orbits {
            let _ = writeln!(
                text,
                "  representative {:?}, size {}",
                orbit.representative, orbit.size
            );
        }
    }
    Ok((to_value(report)?, text, failed))
}

// ---------------------------------------------------------------------------
// homology
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct HomologyReport {
    source: String,
    /// Cells per dimension, `0..=d`.
    dimensions: Vec<usize>,
    groups: Vec<String>,
    betti: Vec<usize>,
    torsion: Vec<Vec<String>>,
    euler_characteristic: i64,
}

fn run_homology(config: &JobConfig) -> Result<(serde_json::Value, String, bool)> {
    let section = complex_section(config)?;
    let (source, dimensions, boundaries) = match section.source {
        ComplexSource::Facets => {
            let vertices = section.facet_vertex_count()?;
            let (dims, bounds) = simplicial_boundaries(vertices, &section.facets)?;
            ("facets", dims, bounds)
        }
        ComplexSource::Coset => {
            let prepared = prepare_complex(config, false, None)?;
            let (dims, bounds) = complex_boundaries(&prepared.complex);
            ("coset", dims, bounds)
        }
    };
    let groups = chain_homology(&dimensions, &boundaries)?;
    let euler = dimensions
        .iter()
        .enumerate()
        .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum();
    let report = HomologyReport {
        source: source.to_string(),
        dimensions: dimensions.clone(),
        groups: groups.iter().map(HomologyGroup::display).collect(),
        betti: groups.iter().map(|g| g.betti).collect(),
        torsion: groups
            .iter()
            .map(|g| g.torsion.iter().map(|t| t.to_string()).collect())
            .collect(),
        euler_characteristic: euler,
    };
    let mut text = String::new();
    let _ = writeln!(text, "source: {}", report.source);
    let _ = writeln!(text, "cells per dimension: {:?}", report.dimensions);
    let _ = writeln!(text, "euler characteristic: {}", report.euler_characteristic);
    for (k, group) in report.groups.iter().enumerate() {
        let _ = writeln!(text, "H_{k} = {group}");
    }
    Ok((to_value(report)?, text, false))
}

// ---------------------------------------------------------------------------
// links
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct LinksReport {
    source: String,
    vertices: usize,
    min_girth: Option<usize>,
    acyclic_links: usize,
    connected_links: usize,
    regular_links: usize,
    bipartite_links: usize,
    /// Pairs `[girth, how many links attain it]`, ascending.
    girth_histogram: Vec<[usize; 2]>,
}

fn run_links(
    config: &JobConfig,
    options: &RunOptions,
) -> Result<(serde_json::Value, String, bool)> {
    let prepared = prepare_complex(config, false, options.threads)?;
    let survey_options = CertifyOptions { threads: options.threads, ..CertifyOptions::default() };
    let links = survey_links(&prepared.complex, &survey_options)?;
    let mut histogram: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    for link in &links {
        if let Some(girth) = link.girth {
            *histogram.entry(girth).or_insert(0) += 1;
        }
    }
    let report = LinksReport {
        source: prepared.source.to_string(),
        vertices: links.len(),
        min_girth: min_link_girth(&links),
        acyclic_links: links.iter().filter(|l| l.girth.is_none()).count(),
        connected_links: links.iter().filter(|l| l.connected).count(),
        regular_links: links.iter().filter(|l| l.regular_degree.is_some()).count(),
        bipartite_links: links.iter().filter(|l| l.bipartite_sides.is_some()).count(),
        girth_histogram: histogram.into_iter().map(|(g, n)| [g, n]).collect(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "source: {}", report.source);
    let _ = writeln!(text, "links surveyed: {}", report.vertices);
    let _ = writeln!(
        text,
        "minimum girth: {}",
        report.min_girth.map(|g| g.to_string()).unwrap_or_else(|| "none (all acyclic)".into())
    );
    let _ = writeln!(text, "acyclic links: {}", report.acyclic_links);
    let _ = writeln!(text, "connected links: {}", report.connected_links);
    let _ = writeln!(text, "regular links: {}", report.regular_links);
    let _ = writeln!(text, "bipartite links: {}", report.bipartite_links);
    for [girth, count] in &report.girth_histogram {
        let _ = writeln!(text, "  girth {girth}: {count} link(s)");
    }
    Ok((to_value(report)?, text, false))
}

// ---------------------------------------------------------------------------
// raag-check
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct RaagReport {
    graph: String,
    vertices: usize,
    edges: Vec<[u32; 2]>,
    words: Vec<WordReport>,
    all_round_trips_ok: bool,
}

#[derive(Serialize)]
struct WordReport {
    input: String,
    normal_form: String,
    normal_form_length: usize,
    exponent_sum: i64,
    in_level_kernel: bool,
    edge_word: Option<String>,
    edge_word_length: Option<usize>,
    round_trip_ok: Option<bool>,
    note: Option<String>,
}

fn run_raag(config: &JobConfig) -> Result<(serde_json::Value, String, bool)> {
    let section = config
        .raag
        .as_ref()
        .ok_or_else(|| Error::input("this command needs a [raag] section"))?;
    let graph = std::sync::Arc::new(section.build_graph()?);
    let mut words = Vec::new();
    let mut all_ok = true;
    for input in &section.words {
        let word = RaagWord::parse(graph.clone(), input)?;
        let normal = word.normalize();
        let exponent_sum = word.exponent_sum();
        let mut entry = WordReport {
            input: input.clone(),
            normal_form: normal.display(),
            normal_form_length: normal.len(),
            exponent_sum,
            in_level_kernel: exponent_sum == 0,
            edge_word: None,
            edge_word_length: None,
            round_trip_ok: None,
            note: None,
        };
        if entry.in_level_kernel {
            match rewrite_in_edge_generators(&word) {
                Ok(letters) => {
                    let back = edge_word_to_raag(&graph, &letters)?;
                    let ok = back.equals(&word)?;
                    all_ok &= ok;
                    entry.edge_word = Some(display_edge_word(&letters));
                    entry.edge_word_length = Some(letters.len());
                    entry.round_trip_ok = Some(ok);
                }
                Err(error) => {
                    entry.note = Some(format!("edge rewriting unavailable: {error}"));
                }
            }
        }
        words.push(entry);
    }
    let report = RaagReport {
        graph: section.graph.clone(),
        vertices: graph.vertex_count(),
        edges: graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
        words,
        all_round_trips_ok: all_ok,
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "graph {} with {} vertices, {} edges",
        report.graph,
        report.vertices,
        report.edges.len()
    );
    for word in &report.words {
        let _ = writeln!(text, "word {:?}", word.input);
        let _ = writeln!(
            text,
            "  normal form {} (length {}), exponent sum {}",
            word.normal_form, word.normal_form_length, word.exponent_sum
        );
        if word.in_level_kernel {
            match (&word.edge_word, &word.note) {
                (Some(edge_word), _) => {
                    let _ = writeln!(
                        text,
                        "  level-kernel element; edge word {} (length {}), round trip ok: {}",
                        edge_word,
                        word.edge_word_length.unwrap_or(0),
                        word.round_trip_ok.unwrap_or(false)
                    );
                }
                (None, Some(note)) => {
                    let _ = writeln!(text, "  level-kernel element; {note}");
                }
                (None, None) => {}
            }
        } else {
            let _ = writeln!(text, "  not in the level kernel");
        }
    }
    let _ = writeln!(text, "all round trips ok: {}", report.all_round_trips_ok);
    Ok((to_value(report)?, text, !all_ok))
}

// ---------------------------------------------------------------------------
// tree-check
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct TreeReport {
    x_degree: usize,
    y_degree: usize,
    radius: usize,
    fix_root: bool,
    ball_vertices: usize,
    x_group: String,
    x_group_order: u64,
    y_group: String,
    y_group_order: u64,
    map_count: usize,
    root_image_size: Option<usize>,
    root_image_matches_x_group: Option<bool>,
    max_edge_fixator_size: usize,
}

fn run_tree(config: &JobConfig) -> Result<(serde_json::Value, String, bool)> {
    let section = config
        .tree
        .as_ref()
        .ok_or_else(|| Error::input("this command needs a [tree] section"))?;
    let (m, n) = section.local_groups()?;
    let ball = build_ball(section.x_degree, section.y_degree, section.radius, TreeSide::X)?;
    let labeling = canonical_labeling(&ball);
    let maps = enumerate_universal(&ball, &labeling, &m, &n, section.fix_root)?;
    let (root_image_size, matches) = if section.radius >= 2 {
        let image = root_local_action_image(&ball, &labeling, &m, &n)?;
        let size = image.len();
        let matches = size == m.order() as usize
            && image.iter().all(|p| m.contains(p));
        (Some(size), Some(matches))
    } else {
        (None, None)
    };
    let report = TreeReport {
        x_degree: section.x_degree,
        y_degree: section.y_degree,
        radius: section.radius,
        fix_root: section.fix_root,
        ball_vertices: ball.vertex_count(),
        x_group: section.x_group.clone(),
        x_group_order: m.order(),
        y_group: section.y_group.clone(),
        y_group_order: n.order(),
        map_count: maps.len(),
        root_image_size,
        root_image_matches_x_group: matches,
        max_edge_fixator_size: max_edge_fixator_size(&ball, &maps),
    };
    let failed = matches == Some(false);
    let mut text = String::new();
    let _ = writeln!(
        text,
        "ball: degrees ({}, {}), radius {}, {} vertices",
        report.x_degree, report.y_degree, report.radius, report.ball_vertices
    );
    let _ = writeln!(
        text,
        "local groups: {} (order {}) / {} (order {})",
        report.x_group, report.x_group_order, report.y_group, report.y_group_order
    );
    let _ = writeln!(
        text,
        "ball maps with prescribed local actions (fix_root = {}): {}",
        report.fix_root, report.map_count
    );
    if let (Some(size), Some(ok)) = (report.root_image_size, report.root_image_matches_x_group) {
        let _ = writeln!(
            text,
            "root local actions realised: {size}, matches prescribed group: {ok}"
        );
    }
    let _ = writeln!(text, "largest edge fixator: {}", report.max_edge_fixator_size);
    Ok((to_value(report)?, text, failed))
}

// ---------------------------------------------------------------------------
// search-subgroups
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct SubgroupsReport {
    group: String,
    group_order: u64,
    spec: SearchSpec,
    class_count: usize,
    representatives: Vec<SubgroupEntry>,
}

#[derive(Serialize)]
struct SubgroupEntry {
    order: u64,
    abelian: bool,
    generators: Vec<String>,
}

fn run_search(config: &JobConfig) -> Result<(serde_json::Value, String, bool)> {
    let built = config.build_group()?;
    let section = config
        .subgroups
        .as_ref()
        .ok_or_else(|| Error::input("this command needs a [subgroups] section"))?;
    let spec = match section.plan(&built)? {
        SubgroupPlan::Search(spec) => spec,
        SubgroupPlan::Explicit(_) => {
            return Err(Error::input(
                "search-subgroups needs a search spec in [subgroups], not explicit generators",
            ))
        }
    };
    let filter = if spec.nonabelian { SubgroupFilter::Nonabelian } else { SubgroupFilter::Any };
    let representatives = find_subgroups(built.group(), spec.order, filter)?;
    let entries: Vec<SubgroupEntry> = representatives
        .iter()
        .map(|h| SubgroupEntry {
            order: h.order(),
            abelian: h.is_abelian(),
            generators: h.generators().iter().map(|g| g.cycles_string()).collect(),
        })
        .collect();
    let report = SubgroupsReport {
        group: built.description().to_string(),
        group_order: built.group().order(),
        spec,
        class_count: entries.len(),
        representatives: entries,
    };
    let failed = report.class_count == 0;
    let mut text = String::new();
    let _ = writeln!(text, "group: {} (order {})", report.group, report.group_order);
    let _ = writeln!(
        text,
        "search: order={} nonabelian={} -> {} conjugacy class(es)",
        report.spec.order, report.spec.nonabelian, report.class_count
    );
    for (index, entry) in report.representatives.iter().enumerate() {
        let _ = writeln!(
            text,
            "class {}: order {}, abelian {}, generators {}",
            index + 1,
            entry.order,
            entry.abelian,
            entry.generators.join(" ")
        );
    }
    Ok((to_value(report)?, text, failed))
}

fn to_value<T: Serialize>(value: T) -> Result<serde_json::Value> {
    serde_json::to_value(value).map_err(|e| Error::input(format!("cannot serialize report: {e}")))
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{cross_polytope_facets, octahedron};

    fn temp_options() -> (tempfile::TempDir, RunOptions) {
        let dir = tempfile::tempdir().unwrap();
        let options = RunOptions { out_dir: dir.path().to_path_buf(), threads: None };
        (dir, options)
    }

    fn octahedron_facets_toml() -> String {
        let facets: Vec<String> = octahedron()
            .triangles()
            .iter()
            .map(|t| format!("[{}, {}, {}]", t[0], t[1], t[2]))
            .collect();
        format!(
            "[complex]\nsource = \"facets\"\nfacets = [{}]\nsymmetries = [\"(2 3 4 5)\", \
             \"(1 6)\", \"(1 2)(3 5)(4 6)\"]\n",
            facets.join(", ")
        )
    }

    #[test]
    fn certify_octahedron_fails_girth_and_exits_one() {
        let config = JobConfig::from_toml_str(&octahedron_facets_toml()).unwrap();
        let (_dir, options) = temp_options();
        let outcome = run(CommandKind::Certify, &config, &options).unwrap();
        assert_eq!(outcome.exit_code, 1);
        let value: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
        assert_eq!(value["schema"], 1);
        assert_eq!(value["command"], "certify");
        let premises = value["report"]["certificate"]["premises"].as_array().unwrap();
        let girth = premises.iter().find(|p| p["name"] == "link_girth").unwrap();
        assert_eq!(girth["status"], "fail");
        let swap = premises.iter().find(|p| p["name"] == "edge_swap_or_transitive").unwrap();
        assert_eq!(swap["status"], "pass");
        let conclusions = value["report"]["certificate"]["conclusions"].as_array().unwrap();
        let nsc = conclusions.iter().find(|c| c["name"] == "not_simply_connected").unwrap();
        assert_eq!(nsc["derived"], false);
        assert!(outcome.report.contains("minimum link girth 4"));
    }

    #[test]
    fn homology_handles_higher_dimensional_facets() {
        let facets: Vec<String> = cross_polytope_facets(4)
            .iter()
            .map(|f| format!("[{}, {}, {}, {}]", f[0], f[1], f[2], f[3]))
            .collect();
        let toml = format!("[complex]\nsource = \"facets\"\nfacets = [{}]\n", facets.join(", "));
        let config = JobConfig::from_toml_str(&toml).unwrap();
        let (_dir, options) = temp_options();
        let outcome = run(CommandKind::Homology, &config, &options).unwrap();
        assert_eq!(outcome.exit_code, 0);
        let value: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
        let groups = value["report"]["groups"].as_array().unwrap();
        assert_eq!(groups.len(), 4);
        assert_eq!(groups[0], "Z");
        assert_eq!(groups[1], "0");
        assert_eq!(groups[2], "0");
        assert_eq!(groups[3], "Z");
        assert_eq!(value["report"]["dimensions"][0], 8);
        assert_eq!(value["report"]["dimensions"][3], 16);
    }

    #[test]
    fn homology_of_a_hollow_triangle_has_betti_one() {
        let toml = "[complex]\nsource = \"facets\"\nfacets = [[0, 1], [1, 2], [0, 2]]\n";
        let config = JobConfig::from_toml_str(toml).unwrap();
        let (_dir, options) = temp_options();
        let outcome = run(CommandKind::Homology, &config, &options).unwrap();
        assert_eq!(outcome.exit_code, 0);
        let value: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
        assert_eq!(value["report"]["betti"][1], 1);
        assert_eq!(value["report"]["groups"][1], "Z");
    }

    #[test]
    fn build_and_links_write_artifacts_atomically() {
        let config = JobConfig::from_toml_str(&octahedron_facets_toml()).unwrap();
        let (dir, options) = temp_options();
        let outcome = run(CommandKind::Build, &config, &options).unwrap();
        assert_eq!(outcome.exit_code, 0);
        assert!(dir.path().join("complex.json").exists());
        assert!(dir.path().join("complex.txt").exists());
        assert!(!dir.path().join(".complex.json.tmp").exists());
        let outcome = run(CommandKind::Links, &config, &options).unwrap();
        assert_eq!(outcome.exit_code, 0);
        let value: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
        assert_eq!(value["report"]["min_girth"], 4);
        assert_eq!(value["report"]["girth_histogram"][0][0], 4);
        assert_eq!(value["report"]["girth_histogram"][0][1], 6);
    }

    #[test]
    fn coset_certify_with_explicit_generators_passes_structure() {
        // Sym(4) with three dihedral-of-order-8 subgroups; small enough to
        // certify in milliseconds. The complex is connected with 9 vertices.
        let toml = r#"
            [group]
            expression = "symmetric(4)"

            [subgroups]
            generators = [
                ["(1 2)", "(3 4)", "(1 3)(2 4)"],
                ["(1 3)", "(2 4)", "(1 2)(3 4)"],
                ["(1 4)", "(2 3)", "(1 2)(3 4)"],
            ]

            [complex]
            source = "coset"
        "#;
        let config = JobConfig::from_toml_str(toml).unwrap();
        let (_dir, options) = temp_options();
        let outcome = run(CommandKind::Certify, &config, &options).unwrap();
        let value: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
        let counts = &value["report"]["certificate"]["counts"];
        assert_eq!(counts["vertices"], 9);
        let premises = value["report"]["certificate"]["premises"].as_array().unwrap();
        let connected = premises.iter().find(|p| p["name"] == "connected").unwrap();
        assert_eq!(connected["status"], "pass");
        assert!(value["report"]["plain_triangle_orbits"].is_array());
    }

    #[test]
    fn raag_check_reports_normal_forms_and_rewrites() {
        let toml = r#"
            [raag]
            graph = "octahedron"
            words = ["0 1 0^-1 1^-1", "0 5^-1", "2", "e"]
        "#;
        let config = JobConfig::from_toml_str(toml).unwrap();
        let (_dir, options) = temp_options();
        let outcome = run(CommandKind::RaagCheck, &config, &options).unwrap();
        assert_eq!(outcome.exit_code, 0);
        let value: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
        let words = value["report"]["words"].as_array().unwrap();
        assert_eq!(words.len(), 4);
        // 0 and 1 are adjacent in the octahedron, so the commutator is
        // trivial.
        assert_eq!(words[0]["normal_form"], "e");
        assert_eq!(words[0]["in_level_kernel"], true);
        assert_eq!(words[0]["round_trip_ok"], true);
        // 0 and 5 are the two poles: not adjacent, so this kernel element
        // is nontrivial and rewrites to edge generators.
        assert_eq!(words[1]["in_level_kernel"], true);
        assert_eq!(words[1]["round_trip_ok"], true);
        assert_eq!(words[2]["in_level_kernel"], false);
        assert_eq!(value["report"]["all_round_trips_ok"], true);
    }

    #[test]
    fn tree_check_counts_ball_maps() {
        let toml = r#"
            [tree]
            x_degree = 2
            y_degree = 3
            x_group = "symmetric(2)"
            y_group = "symmetric(3)"
            radius = 2
        "#;
        let config = JobConfig::from_toml_str(toml).unwrap();
        let (_dir, options) = temp_options();
        let outcome = run(CommandKind::TreeCheck, &config, &options).unwrap();
        assert_eq!(outcome.exit_code, 0);
        let value: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
        assert_eq!(value["report"]["map_count"], 8);
        assert_eq!(value["report"]["root_image_matches_x_group"], true);
    }

    #[test]
    fn search_subgroups_lists_classes() {
        let toml = r#"
            [group]
            expression = "symmetric(4)"

            [subgroups]
            search = "order=6"
        "#;
        let config = JobConfig::from_toml_str(toml).unwrap();
        let (_dir, options) = temp_options();
        let outcome = run(CommandKind::SearchSubgroups, &config, &options).unwrap();
        assert_eq!(outcome.exit_code, 0);
        let value: serde_json::Value = serde_json::from_str(&outcome.json).unwrap();
        assert_eq!(value["report"]["class_count"], 1);
        assert_eq!(value["report"]["representatives"][0]["order"], 6);
        assert_eq!(value["report"]["representatives"][0]["abelian"], false);
    }

    #[test]
    fn reruns_are_byte_identical() {
        let config = JobConfig::from_toml_str(&octahedron_facets_toml()).unwrap();
        let (dir, options) = temp_options();
        run(CommandKind::Certify, &config, &options).unwrap();
        let first_json = std::fs::read(dir.path().join("certificate.json")).unwrap();
        let first_text = std::fs::read(dir.path().join("certificate.txt")).unwrap();
        run(CommandKind::Certify, &config, &options).unwrap();
        assert_eq!(first_json, std::fs::read(dir.path().join("certificate.json")).unwrap());
        assert_eq!(first_text, std::fs::read(dir.path().join("certificate.txt")).unwrap());
    }

    #[test]
    fn invalid_config_writes_nothing() {
        let toml = "[complex]\nsource = \"facets\"\n";
        let config = JobConfig::from_toml_str(toml).unwrap();
        let (dir, options) = temp_options();
        assert!(run(CommandKind::Certify, &config, &options).is_err());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    }

    #[test]
    fn search_spec_under_build_is_rejected() {
        let toml = r#"
            [group]
            expression = "symmetric(4)"

            [subgroups]
            search = "order=8"

            [complex]
            source = "coset"
        "#;
        let config = JobConfig::from_toml_str(toml).unwrap();
        let (dir, options) = temp_options();
        assert!(run(CommandKind::Build, &config, &options).is_err());
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    }
}
