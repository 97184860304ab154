//! Command-line frontend: property checks on single graphs, block
//! generation, the whisker search, and exhaustive small-graph verification.
//!
//! Exit codes: 0 = verified / true, 2 = counterexample candidate found,
//! 1 = operational error.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::Digest;

use bei_core::blockgen::{generate_blocks, BlockFilterConfig};
use bei_core::codec::{from_graph6, parse_edge_list, to_graph6};
use bei_core::graph::Graph;
use bei_core::properties::{implication_report, StrongMemo};
use bei_core::search::{run_search, PoolBound, SearchConfig, SearchOutcome};

mod manifest;

const EXIT_COUNTEREXAMPLE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "bei",
    version,
    about = "Cut-set combinatorics of binomial edge ideals: property checks and the block-with-whiskers search"
)]
struct Cli {
    /// Append a one-line JSON run manifest to this file.
    #[arg(long, global = true, default_value = "manifest.jsonl")]
    manifest: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide unmixedness, accessibility, good cut vertices, and strong
    /// unmixedness for a single graph.
    Check(CheckArgs),
    /// Run the whisker search for one (n, k) cell.
    Search(SearchArgs),
    /// Check accessible => strongly unmixed over all connected graphs up
    /// to a vertex count, or over a graph6 stream.
    Verify(VerifyArgs),
    /// Emit candidate blocks as graph6 lines.
    GenBlocks(GenBlocksArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Input path, or '-' for stdin.
    input: Option<PathBuf>,
    /// Literal graph6 string instead of a file.
    #[arg(short = 'g', long)]
    graph6: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Auto)]
    format: Format,
    /// Comma-separated selection of properties.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    props: Vec<Prop>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Auto,
    Edges,
    Graph6,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Prop {
    Unmixed,
    Accessible,
    StronglyUnmixed,
    GoodCutVertices,
    All,
}

impl Prop {
    fn name(self) -> &'static str {
        match self {
            Prop::Unmixed => "unmixed",
            Prop::Accessible => "accessible",
            Prop::StronglyUnmixed => "strongly-unmixed",
            Prop::GoodCutVertices => "good-cut-vertices",
            Prop::All => "all",
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    min_edges: Option<usize>,
    #[arg(long)]
    max_edges: Option<usize>,
    #[arg(long, default_value_t = 1)]
    shards: usize,
    #[arg(long, default_value_t = 0)]
    shard_index: usize,
    /// Worker threads; defaults to BEI_JOBS or all cores.
    #[arg(long)]
    jobs: Option<usize>,
    /// Disable a filter (repeatable): free-vertex, degree-two,
    /// edge-bounds, demand-window, degree-bound, coverage, connectivity,
    /// demand-match, induced-shape.
    #[arg(long = "no-filter", value_enum)]
    no_filter: Vec<FilterName>,
    /// Whisker-pool degree cap: strict reproduces the reference counts,
    /// wide is the provable bound, off disables the pool restriction.
    #[arg(long, value_enum, default_value_t = PoolArg::Strict)]
    degree_pool: PoolArg,
    /// Write accessible survivors as graph6 lines here, with a JSON
    /// sidecar of all unmixed candidates at <path>.json.
    #[arg(long)]
    survivors_out: Option<PathBuf>,
    /// Write the stats JSON here instead of stdout.
    #[arg(long)]
    stats_out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PoolArg {
    Strict,
    Wide,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterName {
    FreeVertex,
    DegreeTwo,
    EdgeBounds,
    DemandWindow,
    DegreeBound,
    Coverage,
    Connectivity,
    DemandMatch,
    InducedShape,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest vertex count for internal generation (at most 9).
    #[arg(long, default_value_t = 8)]
    max_vertices: usize,
    /// Verify a graph6 stream instead ('-' for stdin).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct GenBlocksArgs {
    #[arg(long)]
    n: usize,
    /// Apply the reference screens (no free vertices, minimum degree
    /// three, reference edge cap) instead of emitting all blocks.
    #[arg(long)]
    filtered: bool,
    #[arg(long)]
    min_edges: Option<usize>,
    #[arg(long)]
    max_edges: Option<usize>,
    /// Output path; stdout when absent.
    #[arg(long)]
    graph6_out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    });
}

fn default_jobs(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var("BEI_JOBS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(0)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Check(args) => cmd_check(&cli.manifest, args),
        Command::Search(args) => cmd_search(&cli.manifest, args),
        Command::Verify(args) => cmd_verify(&cli.manifest, args),
        Command::GenBlocks(args) => cmd_gen_blocks(&cli.manifest, args),
    }
}

fn read_input(path: &Path) -> Result<(String, String)> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(("stdin".into(), text))
    } else {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        Ok((path.display().to_string(), text))
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(sha2::Sha256::digest(bytes))
}

fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    let effective = match format {
        Format::Auto => {
            if text
                .trim_start()
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_digit())
            {
                Format::Edges
            } else {
                Format::Graph6
            }
        }
        f => f,
    };
    let g = match effective {
        Format::Edges => parse_edge_list(text)?,
        Format::Graph6 => from_graph6(text.trim())?,
        Format::Auto => unreachable!(),
    };
    Ok(g)
}

fn cmd_check(manifest_path: &Path, args: CheckArgs) -> Result<i32> {
    let mut run = manifest::Run::start("check");
    let (g, source, raw) = match (&args.graph6, &args.input) {
        (Some(lit), None) => (from_graph6(lit)?, "literal".to_string(), lit.clone().into_bytes()),
        (None, Some(path)) => {
            let (name, text) = read_input(path)?;
            (parse_graph(&text, args.format)?, name, text.into_bytes())
        }
        _ => bail!("provide exactly one of INPUT or --graph6"),
    };
    run.input_hash(&source, &sha256_hex(&raw));

    let want = |p: Prop| args.props.contains(&Prop::All) || args.props.contains(&p);
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), 1u32.into());
    out.insert("vertices".into(), g.n().into());
    let mut counterexample = false;
    if args.props.contains(&Prop::All) {
        // the full report also asserts the implication order
        let report = implication_report(&g, &StrongMemo::new())?;
        counterexample = report.counterexample_candidate;
        let full = serde_json::to_value(&report)?;
        for (k, v) in full.as_object().unwrap() {
            if k != "schema" && k != "vertices" {
                out.insert(k.clone(), v.clone());
            }
        }
    } else {
        // selections are computed lazily; asking only for unmixedness must
        // not pay for the strong-unmixedness recursion
        if want(Prop::Unmixed) || want(Prop::Accessible) {
            match bei_core::properties::accessibility(&g)? {
                bei_core::properties::Accessibility::NotUnmixed { set, .. } => {
                    out.insert("unmixed".into(), false.into());
                    out.insert(
                        "unmixed_violation".into(),
                        serde_json::to_value(set.to_sorted_1based())?,
                    );
                    if want(Prop::Accessible) {
                        out.insert("accessible".into(), false.into());
                    }
                }
                bei_core::properties::Accessibility::Stuck { stuck, .. } => {
                    out.insert("unmixed".into(), true.into());
                    if want(Prop::Accessible) {
                        out.insert("accessible".into(), false.into());
                        out.insert(
                            "stuck_cut_set".into(),
                            serde_json::to_value(stuck.to_sorted_1based())?,
                        );
                    }
                }
                bei_core::properties::Accessibility::Accessible(_) => {
                    out.insert("unmixed".into(), true.into());
                    if want(Prop::Accessible) {
                        out.insert("accessible".into(), true.into());
                    }
                }
            }
            if !want(Prop::Accessible) {
                out.remove("accessible");
            }
            if !want(Prop::Unmixed) {
                out.remove("unmixed");
                out.remove("unmixed_violation");
            }
        }
        if want(Prop::GoodCutVertices) {
            let good = bei_core::properties::good_cut_vertices(&g)?;
            out.insert(
                "good_cut_vertices".into(),
                serde_json::to_value(good.to_sorted_1based())?,
            );
        }
        if want(Prop::StronglyUnmixed) {
            let strong = bei_core::properties::is_strongly_unmixed(&g, &StrongMemo::new())?;
            out.insert("strongly_unmixed".into(), strong.holds.into());
            out.insert(
                "strong_trace".into(),
                serde_json::to_value(strong.trace.iter().map(|v| v + 1).collect::<Vec<_>>())?,
            );
        }
    }
    let json = serde_json::Value::Object(out);
    println!("{}", serde_json::to_string_pretty(&json)?);
    let props: Vec<&str> = args.props.iter().map(|p| p.name()).collect();
    run.finish(
        manifest_path,
        serde_json::json!({ "props": props }),
        json.clone(),
        Some(!counterexample),
    )?;
    Ok(if counterexample { EXIT_COUNTEREXAMPLE } else { 0 })
}

fn search_config(args: &SearchArgs) -> SearchConfig {
    let mut block_cfg = BlockFilterConfig::filtered_reference(args.n);
    let mut cfg = SearchConfig {
        jobs: default_jobs(args.jobs),
        shards: args.shards,
        shard_index: args.shard_index,
        min_edges: args.min_edges,
        max_edges: args.max_edges,
        block_config: None,
        toggles: Default::default(),
    };
    cfg.toggles.pool = match args.degree_pool {
        PoolArg::Strict => PoolBound::Strict,
        PoolArg::Wide => PoolBound::Wide,
        PoolArg::Off => PoolBound::Off,
    };
    for f in &args.no_filter {
        match f {
            FilterName::FreeVertex => block_cfg.forbid_free_vertices = false,
            FilterName::DegreeTwo => block_cfg.forbid_degree_le_2 = false,
            FilterName::EdgeBounds => block_cfg.max_edges = None,
            FilterName::DemandWindow => cfg.toggles.demand_window = false,
            FilterName::DegreeBound => cfg.toggles.degree_bound = false,
            FilterName::Coverage => cfg.toggles.coverage = false,
            FilterName::Connectivity => cfg.toggles.connectivity = false,
            FilterName::DemandMatch => cfg.toggles.demand_match = false,
            FilterName::InducedShape => cfg.toggles.induced_shape = false,
        }
    }
    cfg.block_config = Some(block_cfg);
    cfg
}

fn cmd_search(manifest_path: &Path, args: SearchArgs) -> Result<i32> {
    let run = manifest::Run::start("search");
    let n = args.n;
    let k = args.k;

    // out-of-range whisker counts are settled without searching
    if (1..=3).contains(&k) {
        println!(
            "{}",
            serde_json::json!({
                "schema": 1, "n": n, "k": k, "verdict": true,
                "reason": "with at most three whiskers an accessible block with whiskers always has a cut vertex whose deletion keeps the ideal unmixed; nothing to search"
            })
        );
        run.finish(manifest_path, serde_json::json!({"n": n, "k": k}), serde_json::json!({"settled": "k<=3"}), Some(true))?;
        return Ok(0);
    }
    if n >= 2 && k >= n - 2 && k <= n {
        println!(
            "{}",
            serde_json::json!({
                "schema": 1, "n": n, "k": k, "verdict": true,
                "reason": "with at least n-2 whiskers an accessible block with whiskers always has a cut vertex whose deletion keeps the ideal unmixed; nothing to search"
            })
        );
        run.finish(manifest_path, serde_json::json!({"n": n, "k": k}), serde_json::json!({"settled": "k>=n-2"}), Some(true))?;
        return Ok(0);
    }

    let cfg = search_config(&args);
    let outcome = run_search(n, k, &cfg)?;
    emit_search_output(&args, &outcome)?;

    let stats_json = serde_json::to_value(&outcome.stats)?;
    run.finish(
        manifest_path,
        serde_json::json!({
            "n": n, "k": k, "shards": args.shards, "shard_index": args.shard_index,
            "min_edges": args.min_edges, "max_edges": args.max_edges,
        }),
        stats_json,
        Some(outcome.verdict),
    )?;
    Ok(if outcome.verdict { 0 } else { EXIT_COUNTEREXAMPLE })
}

fn emit_search_output(args: &SearchArgs, outcome: &SearchOutcome) -> Result<()> {
    let stats = serde_json::to_string_pretty(&serde_json::json!({
        "verdict": outcome.verdict,
        "stats": &outcome.stats,
    }))?;
    match &args.stats_out {
        Some(path) => std::fs::write(path, stats + "\n")?,
        None => println!("{stats}"),
    }
    if let Some(path) = &args.survivors_out {
        let mut lines = String::new();
        for c in outcome.survivors() {
            lines.push_str(&c.graph6);
            lines.push('\n');
        }
        std::fs::write(path, lines)?;
        let sidecar = serde_json::to_string_pretty(&outcome.candidates)?;
        std::fs::write(path.with_extension("json"), sidecar + "\n")?;
    }
    // a counterexample candidate is the most valuable possible output
    for c in &outcome.candidates {
        if c.report.counterexample_candidate {
            eprintln!("counterexample candidate: {}", c.graph6);
            eprintln!("{}", c.edge_list.trim_end());
            eprintln!("{}", serde_json::to_string_pretty(&c.report)?);
        }
    }
    Ok(())
}

fn cmd_verify(manifest_path: &Path, args: VerifyArgs) -> Result<i32> {
    let mut run = manifest::Run::start("verify");
    let jobs = default_jobs(args.jobs);

    let graphs: Vec<Graph> = match &args.input {
        Some(path) => {
            let (name, text) = read_input(path)?;
            run.input_hash(&name, &sha256_hex(text.as_bytes()));
            let lines: Vec<String> = text.lines().map(|l| l.to_string()).collect();
            let mut out = Vec::new();
            for (i, line) in lines.iter().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let g = from_graph6(line.trim())
                    .with_context(|| format!("line {}", i + 1))?;
                out.push(g);
            }
            out
        }
        None => {
            if args.max_vertices > 9 {
                bail!("internal generation supports at most 9 vertices; use --input for larger streams");
            }
            let mut out = Vec::new();
            for n in 1..=args.max_vertices {
                let stream = generate_blocks(&BlockFilterConfig::unfiltered(n))?;
                out.extend(stream.iter());
            }
            out
        }
    };

    let outcome = bei_core::search::verify_connected_graphs(&graphs, jobs)?;
    let json = serde_json::json!({
        "schema": 1,
        "max_vertices": args.max_vertices,
        "graphs_seen": graphs.len(),
        "connected_graphs": outcome.connected,
        "accessible_graphs": outcome.accessible,
        "strongly_unmixed_graphs": outcome.strongly_unmixed,
        "counterexample_candidates": outcome.counterexamples.len(),
    });
    println!("{}", serde_json::to_string_pretty(&json)?);
    for report in &outcome.counterexamples {
        eprintln!("counterexample candidate:");
        eprintln!("{}", serde_json::to_string_pretty(report)?);
    }
    run.finish(
        manifest_path,
        serde_json::json!({"max_vertices": args.max_vertices, "input": args.input}),
        json.clone(),
        Some(outcome.counterexamples.is_empty()),
    )?;
    Ok(if outcome.counterexamples.is_empty() {
        0
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

fn cmd_gen_blocks(manifest_path: &Path, args: GenBlocksArgs) -> Result<i32> {
    let run = manifest::Run::start("gen-blocks");
    let mut cfg = if args.filtered {
        BlockFilterConfig::filtered_reference(args.n)
    } else {
        BlockFilterConfig::blocks_only(args.n)
    };
    if args.min_edges.is_some() {
        cfg.min_edges = args.min_edges.max(cfg.min_edges);
    }
    if let Some(hi) = args.max_edges {
        cfg.max_edges = Some(cfg.max_edges.map_or(hi, |b| b.min(hi)));
    }
    let stream = generate_blocks(&cfg)?;
    let mut text = String::new();
    for g in stream.iter() {
        text.push_str(&to_graph6(&g));
        text.push('\n');
    }
    match &args.graph6_out {
        Some(path) => std::fs::write(path, &text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    run.finish(
        manifest_path,
        serde_json::json!({
            "n": args.n, "filtered": args.filtered,
            "min_edges": args.min_edges, "max_edges": args.max_edges,
        }),
        serde_json::json!({"blocks": stream.len()}),
        None,
    )?;
    Ok(0)
}

