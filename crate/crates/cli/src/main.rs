use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use sumlabel::codec::{self, Container, SumEncoding};
use sumlabel::metrics::{self, StorageReport};
use sumlabel::oracle::{self, SigmaOutcome, MAX_SEARCH_VERTICES};
use sumlabel::{
    check_valid, degeneracy_ordering, is_exclusive, parse_edge_list, schemes, serialize_edge_list, sum_label, Graph,
    Parallelism, SumLabelling, VertexOrdering,
};

#[derive(Parser)]
#[command(name = "sumlabel", version, about = "Encode graphs as sum graphs and account for their storage")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Label a graph with the incremental labeller.
    Label {
        graph: PathBuf,
        /// `given`, `degeneracy` or `file:<path>`.
        #[arg(long, default_value = "given")]
        order: String,
        #[arg(long)]
        unique_isolates: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check validity and exclusivity of a labelling.
    Verify {
        labelling: PathBuf,
        /// Intended graph the labelling must realise.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Decode a labelling or encoding into an edge list over label positions.
    Decode {
        input: PathBuf,
        #[arg(long)]
        edges_out: Option<PathBuf>,
    },
    /// Test adjacency of two labels.
    Query { encoding: PathBuf, u: String, w: String },
    /// Storage report with baselines and bound checks.
    Metrics {
        labelling: PathBuf,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(short = 'd')]
        d: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Closed-form labellings and orderings.
    Scheme {
        kind: SchemeKind,
        /// Size parameter, or a graph file for `incidence`.
        param: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Write an encoding as a tagged binary container.
    Serialize {
        encoding: PathBuf,
        #[arg(long)]
        format: Format,
        #[arg(long)]
        out: PathBuf,
    },
    /// Read a tagged binary container.
    Deserialize {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Storage comparison over seeded random graphs.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seeds: u64,
        /// Vertex ordering for the labeller: `given` or `degeneracy`.
        #[arg(long, default_value = "degeneracy")]
        order: String,
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force reference computations.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Sum number of a small graph with a witness labelling.
    Sigma {
        graph: PathBuf,
        #[arg(long, default_value_t = 30)]
        max_label: u64,
        #[arg(long)]
        max_isolates: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeKind {
    MatchingExp,
    MatchingLin,
    MatchingBlock,
    Complete,
    PathOrder,
    Incidence,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Gamma,
    Incidence,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Label { graph, order, unique_isolates, out, json } => {
            label(&graph, &order, unique_isolates, out.as_deref(), json)
        }
        Command::Verify { labelling, graph } => verify(&labelling, graph.as_deref()),
        Command::Decode { input, edges_out } => decode(&input, edges_out.as_deref()),
        Command::Query { encoding, u, w } => query(&encoding, &u, &w),
        Command::Metrics { labelling, graph, d, json } => metrics_cmd(&labelling, graph.as_deref(), d, json),
        Command::Scheme { kind, param, out, json } => scheme(kind, &param, out.as_deref(), json),
        Command::Serialize { encoding, format, out } => serialize(&encoding, format, &out),
        Command::Deserialize { input, out } => deserialize(&input, out.as_deref()),
        Command::Bench { n, m, seeds, order, sequential, json } => bench(n, m, seeds, &order, sequential, json),
        Command::Oracle { command: OracleCommand::Sigma { graph, max_label, max_isolates } } => {
            sigma(&graph, max_label, max_isolates)
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    parse_edge_list(&read_text(path)?).with_context(|| format!("bad graph file {}", path.display()))
}

fn read_labelling(path: &Path) -> Result<SumLabelling> {
    SumLabelling::parse_any(&read_text(path)?).with_context(|| format!("bad labelling file {}", path.display()))
}

/// Labelling re-attached to an intended graph instead of the induced one.
fn with_graph(l: &SumLabelling, graph: Option<&Path>) -> Result<SumLabelling> {
    match graph {
        None => Ok(l.clone()),
        Some(p) => Ok(SumLabelling::new(read_graph(p)?, l.vertex_labels().clone(), l.isolate_labels().to_vec())?),
    }
}

fn looks_like_labelling(text: &str) -> bool {
    let t = text.trim_start();
    t.starts_with('{') || text.lines().any(|l| l.split('#').next().unwrap_or("").trim() == "vertices")
}

/// Encoding from either a labelling file or a plain label list.
fn read_encoding(path: &Path) -> Result<SumEncoding> {
    let text = read_text(path)?;
    if looks_like_labelling(&text) {
        let l = SumLabelling::parse_any(&text).with_context(|| format!("bad labelling file {}", path.display()))?;
        Ok(codec::encode(&l)?)
    } else {
        SumEncoding::parse_text(&text).with_context(|| format!("bad encoding file {}", path.display()))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn labelling_output(l: &SumLabelling, json: bool) -> String {
    if json {
        format!("{}\n", serde_json::to_string_pretty(&l.to_json()).expect("json value"))
    } else {
        l.to_text()
    }
}

fn commented(text: &str) -> String {
    text.lines().map(|l| format!("# {l}\n")).collect()
}

fn resolve_order(g: &Graph, order: &str) -> Result<(VertexOrdering, Option<u64>)> {
    match order {
        "given" => Ok((VertexOrdering::identity(g.n()), None)),
        "degeneracy" => {
            let r = degeneracy_ordering(g);
            Ok((r.ordering, Some(r.d as u64)))
        }
        other => match other.strip_prefix("file:") {
            Some(path) => Ok((VertexOrdering::parse(&read_text(Path::new(path))?)?, None)),
            None => bail!("unknown ordering {other:?}; use given, degeneracy or file:<path>"),
        },
    }
}

fn label(graph: &Path, order: &str, unique: bool, out: Option<&Path>, json: bool) -> Result<ExitCode> {
    let g = read_graph(graph)?;
    let (ordering, d) = resolve_order(&g, order)?;
    let l = sum_label(&g, &ordering, unique)?;
    let report = StorageReport::new(&l, Some(d))?;
    if json {
        let summary = json!({ "isolates": l.isolate_count(), "d": d, "report": report });
        match out {
            Some(_) => {
                emit(out, &labelling_output(&l, true))?;
                println!("{}", serde_json::to_string_pretty(&summary)?);
            }
            None => {
                let mut doc = l.to_json();
                doc["summary"] = summary;
                println!("{}", serde_json::to_string_pretty(&doc)?);
            }
        }
    } else {
        let mut summary = format!("isolates: {}\n", l.isolate_count());
        if let Some(d) = d {
            let _ = writeln!(summary, "d: {d}");
        }
        summary.push_str(&report.to_text());
        match out {
            Some(_) => {
                emit(out, &l.to_text())?;
                print!("{summary}");
            }
            None => print!("{}{}", l.to_text(), commented(&summary)),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(path: &Path, graph: Option<&Path>) -> Result<ExitCode> {
    let l = with_graph(&read_labelling(path)?, graph)?;
    let report = check_valid(&l, false);
    println!("valid: {}", report.ok);
    println!("exclusive: {}", report.ok && is_exclusive(&l));
    if graph.is_some() {
        println!("matches graph: {}", report.ok);
    }
    for v in &report.violations {
        println!("violation: {v}");
    }
    Ok(if report.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn decode(path: &Path, edges_out: Option<&Path>) -> Result<ExitCode> {
    let enc = read_encoding(path)?;
    let decoded = codec::decode(&enc);
    let mut text = String::new();
    let labels: Vec<String> = enc.labels().iter().map(ToString::to_string).collect();
    let _ = writeln!(text, "# labels: {}", labels.join(" "));
    let isolates: Vec<String> = decoded.isolates.iter().map(|i| (i + 1).to_string()).collect();
    let _ = writeln!(text, "# isolated positions: {}", isolates.join(" "));
    text.push_str(&serialize_edge_list(&decoded.graph));
    emit(edges_out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_label_arg(s: &str) -> Result<BigUint> {
    s.parse().map_err(|_| anyhow!("bad label {s:?}"))
}

fn query(path: &Path, u: &str, w: &str) -> Result<ExitCode> {
    let enc = read_encoding(path)?;
    let adjacent = codec::adjacent_labels(&enc, &parse_label_arg(u)?, &parse_label_arg(w)?)?;
    println!("{}", if adjacent { "edge" } else { "non-edge" });
    Ok(ExitCode::SUCCESS)
}

fn metrics_cmd(path: &Path, graph: Option<&Path>, d: Option<u64>, json: bool) -> Result<ExitCode> {
    let l = with_graph(&read_labelling(path)?, graph)?;
    let report = StorageReport::new(&l, Some(d))?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(ExitCode::SUCCESS)
}

fn scheme(kind: SchemeKind, param: &str, out: Option<&Path>, json: bool) -> Result<ExitCode> {
    let size =
        || -> Result<usize> { param.parse().map_err(|_| anyhow!("expected a non-negative integer, got {param:?}")) };
    let l = match kind {
        SchemeKind::MatchingExp => schemes::matching_exponential(size()?)?,
        SchemeKind::MatchingLin => schemes::matching_linear(size()?)?,
        SchemeKind::MatchingBlock => {
            let d = u32::try_from(size()?)
                .ok()
                .filter(|&d| d <= 20)
                .ok_or_else(|| anyhow!("block depth must be at most 20"))?;
            schemes::matching_block_union(d)?
        }
        SchemeKind::Complete => schemes::complete_graph_labelling(size()?)?,
        SchemeKind::Incidence => schemes::incidence_scheme(&read_graph(Path::new(param))?)?,
        SchemeKind::PathOrder => {
            let ordering = schemes::path_optimal_ordering(size()?)?;
            emit(out, &ordering.to_text())?;
            return Ok(ExitCode::SUCCESS);
        }
    };
    emit(out, &labelling_output(&l, json))?;
    Ok(ExitCode::SUCCESS)
}

fn serialize(path: &Path, format: Format, out: &Path) -> Result<ExitCode> {
    let container = match format {
        Format::Gamma => Container::Gamma(read_encoding(path)?),
        Format::Incidence => {
            let text = read_text(path)?;
            let g = if looks_like_labelling(&text) {
                SumLabelling::parse_any(&text)?.base_graph().clone()
            } else {
                codec::decode(&SumEncoding::parse_text(&text)?).graph
            };
            Container::Incidence(g)
        }
    };
    let bytes = container.to_bytes()?;
    fs::write(out, &bytes).with_context(|| format!("cannot write {}", out.display()))?;
    println!("wrote {} bytes", bytes.len());
    Ok(ExitCode::SUCCESS)
}

fn deserialize(path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let text = match Container::from_bytes(&bytes)? {
        Container::Gamma(enc) => enc.to_text(),
        Container::Incidence(g) => serialize_edge_list(&g),
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

struct BenchRow {
    seed: u64,
    isolates: usize,
    storage_bits: u64,
    gamma_bits: u64,
    matrix_bits: u64,
    list_bits: u64,
    stirling: u64,
}

fn bench_row(n: usize, m: usize, seed: u64, order: &str) -> Result<BenchRow> {
    let g = oracle::random_graph(n, m, seed, 1)?;
    let (ordering, _) = resolve_order(&g, order)?;
    let l = sum_label(&g, &ordering, false)?;
    let enc = codec::encode(&l)?;
    let base = metrics::baseline_costs(n as u64, m as u64);
    Ok(BenchRow {
        seed,
        isolates: l.isolate_count(),
        storage_bits: metrics::storage_bits(enc.labels()),
        gamma_bits: codec::gamma_bit_length(&enc) as u64,
        matrix_bits: base.adjacency_matrix_bits,
        list_bits: base.adjacency_list_bits,
        stirling: metrics::stirling_lower_bound(enc.len() as u64),
    })
}

fn bench(n: usize, m: usize, seeds: u64, order: &str, sequential: bool, json: bool) -> Result<ExitCode> {
    if seeds == 0 {
        bail!("--seeds must be positive");
    }
    if !matches!(order, "given" | "degeneracy") {
        bail!("bench ordering must be given or degeneracy");
    }
    let mode = if sequential { Parallelism::Sequential } else { Parallelism::Parallel };
    let seed_list: Vec<u64> = (0..seeds).collect();
    let rows =
        sumlabel::par::map(&seed_list, mode, |&s| bench_row(n, m, s, order)).into_iter().collect::<Result<Vec<_>>>()?;
    let k = rows.len() as f64;
    let mean = |f: fn(&BenchRow) -> u64| rows.iter().map(|r| f(r) as f64).sum::<f64>() / k;
    let means = [
        rows.iter().map(|r| r.isolates as f64).sum::<f64>() / k,
        mean(|r| r.storage_bits),
        mean(|r| r.gamma_bits),
        mean(|r| r.matrix_bits),
        mean(|r| r.list_bits),
        mean(|r| r.stirling),
    ];
    if json {
        let per_seed: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "seed": r.seed, "isolates": r.isolates, "storage_bits": r.storage_bits,
                    "gamma_bits": r.gamma_bits, "adjacency_matrix_bits": r.matrix_bits,
                    "adjacency_list_bits": r.list_bits, "stirling_lower_bound": r.stirling,
                })
            })
            .collect();
        let names = [
            "isolates",
            "storage_bits",
            "gamma_bits",
            "adjacency_matrix_bits",
            "adjacency_list_bits",
            "stirling_lower_bound",
        ];
        let mean_obj: serde_json::Map<String, Value> =
            names.iter().zip(means).map(|(k, v)| (k.to_string(), json!(v))).collect();
        println!("{}", serde_json::to_string_pretty(&json!({ "n": n, "m": m, "seeds": per_seed, "mean": mean_obj }))?);
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "{:>6} {:>9} {:>13} {:>11} {:>12} {:>10} {:>9}",
        "seed", "isolates", "storage_bits", "gamma_bits", "matrix_bits", "list_bits", "stirling"
    );
    for r in &rows {
        println!(
            "{:>6} {:>9} {:>13} {:>11} {:>12} {:>10} {:>9}",
            r.seed, r.isolates, r.storage_bits, r.gamma_bits, r.matrix_bits, r.list_bits, r.stirling
        );
    }
    println!(
        "{:>6} {:>9.2} {:>13.2} {:>11.2} {:>12.2} {:>10.2} {:>9.2}",
        "mean", means[0], means[1], means[2], means[3], means[4], means[5]
    );
    Ok(ExitCode::SUCCESS)
}

fn sigma(path: &Path, max_label: u64, max_isolates: Option<usize>) -> Result<ExitCode> {
    let g = read_graph(path)?;
    let s_max = max_isolates.unwrap_or_else(|| MAX_SEARCH_VERTICES.saturating_sub(g.n()));
    match oracle::brute_force_sum_number(&g, s_max, max_label)? {
        SigmaOutcome::Found { sigma, witness } => {
            println!("sigma: {sigma}");
            print!("{}", witness.to_text());
        }
        SigmaOutcome::Exhausted => {
            println!("sigma: exhausted (no witness with at most {s_max} isolates and labels <= {max_label})");
        }
    }
    Ok(ExitCode::SUCCESS)
}
