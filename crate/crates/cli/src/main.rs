use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use whitehead::graph::{cyclic_core, fold, to_dot, AGraph};
use whitehead::io::{parse_graph, parse_graph_blocks, write_graph, GraphFile};
use whitehead::mincut::{gadget_node_names, hypergraph_to_network, min_vcut, BRUTE_FORCE_MAX_RANK};
use whitehead::random::oracle_check;
use whitehead::{
    is_free_factor, is_primitive, minimize_conjugacy, minimize_cyclic_word, minimize_subgroup, minimize_tuple,
    minimize_word, Alphabet, Letter, MinimizationTrace, WhiteheadHypergraph, Word,
};

#[derive(Parser, Debug)]
#[command(name = "whitehead", version, about = "Whitehead minimization in free groups")]
struct Cli {
    /// Rank of the free group (default: smallest rank covering the input)
    #[arg(long, global = true)]
    rank: Option<u32>,

    /// Print results as JSON
    #[arg(long, global = true)]
    json: bool,

    /// Also print the automorphism trace
    #[arg(long, global = true)]
    witness: bool,

    /// Seed for randomized harnesses
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for the per-letter cut searches
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Exit with status 1 on a negative verdict
    #[arg(long, global = true)]
    exit_status: bool,

    /// Write the gadget flow network for this pivot letter as DOT to stderr
    /// (with `hypergraph`)
    #[arg(long, global = true, value_name = "LETTER")]
    dump_network: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Shortest word in the automorphic orbit of W
    MinimizeWord { word: String },
    /// Shortest cyclic word in the orbit of the conjugacy class of W
    MinimizeCyclic { word: String },
    /// Smallest graph in the orbit of the subgroup <G1,G2,...>
    MinimizeSubgroup { gens: String },
    /// Minimize the conjugacy class given by a graph file
    MinimizeConjugacy { file: PathBuf },
    /// Minimize a tuple of conjugacy classes given by a multi-block file
    MinimizeTuple { file: PathBuf },
    /// Is W a member of some basis?
    IsPrimitive { word: String },
    /// Is <G1,...> a free factor?
    IsFreeFactor { gens: String },
    /// Fold a graph file to its reduced form
    Fold { file: PathBuf },
    /// Print the Whitehead hypergraph of a cyclically reduced graph
    Hypergraph { file: PathBuf },
    /// Render a graph file as DOT
    ExportDot { file: PathBuf },
    /// Cross-check min-cuts and size changes against exhaustive search
    OracleCheck {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

/// Errors mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let internal = e
            .chain()
            .any(|c| matches!(c.downcast_ref::<whitehead::Error>(), Some(whitehead::Error::Invariant(_))));
        if internal {
            Failure::Internal(e)
        } else {
            Failure::Usage(e)
        }
    }
}

impl From<whitehead::Error> for Failure {
    fn from(e: whitehead::Error) -> Self {
        Failure::from(anyhow::Error::new(e))
    }
}

struct Output {
    text: String,
    json: Value,
    negative: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            negative: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            let written = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("values serialize"))
            } else {
                write!(stdout, "{}", out.text)
            };
            if written.is_err() {
                return ExitCode::from(2);
            }
            if out.negative && cli.exit_status {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::MinimizeWord { word } => cmd_minimize_word(cli, word),
        Command::MinimizeCyclic { word } => cmd_minimize_cyclic(cli, word),
        Command::MinimizeSubgroup { gens } => cmd_minimize_subgroup(cli, gens),
        Command::MinimizeConjugacy { file } => cmd_minimize_conjugacy(cli, file),
        Command::MinimizeTuple { file } => cmd_minimize_tuple(cli, file),
        Command::IsPrimitive { word } => cmd_is_primitive(cli, word),
        Command::IsFreeFactor { gens } => cmd_is_free_factor(cli, gens),
        Command::Fold { file } => cmd_fold(cli, file),
        Command::Hypergraph { file } => cmd_hypergraph(cli, file),
        Command::ExportDot { file } => cmd_export_dot(cli, file),
        Command::OracleCheck { cases } => cmd_oracle_check(cli, *cases),
    }
}

/// Checks the input's letters against `--rank` and returns the rank to use.
fn resolve_rank(cli: &Cli, inferred: u32) -> Result<u32, Failure> {
    match cli.rank {
        None => Ok(inferred.max(1)),
        Some(r) => {
            let alphabet = Alphabet::new(r)?;
            if inferred > r {
                return Err(whitehead::Error::LetterOutOfRange {
                    letter: Letter::generator(inferred).to_string(),
                    rank: alphabet.rank(),
                }
                .into());
            }
            Ok(r)
        }
    }
}

fn parse_word(cli: &Cli, s: &str) -> Result<Word, Failure> {
    let w = Word::parse(s).with_context(|| format!("cannot parse word {s:?}"))?;
    resolve_rank(cli, w.max_generator())?;
    Ok(w)
}

fn parse_nonempty_word(cli: &Cli, s: &str) -> Result<Word, Failure> {
    let w = parse_word(cli, s)?;
    if w.is_empty() {
        return Err(Failure::Usage(anyhow::anyhow!("the word is empty")));
    }
    Ok(w)
}

fn parse_gens(cli: &Cli, s: &str) -> Result<Vec<Word>, Failure> {
    let gens = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| Word::parse(t).with_context(|| format!("cannot parse generator {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    resolve_rank(cli, gens.iter().map(Word::max_generator).max().unwrap_or(1))?;
    Ok(gens)
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("cannot read standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

fn apply_rank(cli: &Cli, g: AGraph) -> Result<AGraph, Failure> {
    match cli.rank {
        Some(r) if r < g.rank() => Err(whitehead::Error::RankMismatch {
            expected: r,
            found: g.rank(),
        }
        .into()),
        Some(r) => Ok(g.with_rank(r)),
        None => Ok(g),
    }
}

fn read_graph(cli: &Cli, path: &Path) -> Result<GraphFile, Failure> {
    let text = read_input(path)?;
    let mut f = parse_graph(&text).with_context(|| format!("in {}", path.display()))?;
    f.graph = apply_rank(cli, f.graph)?;
    Ok(f)
}

/// Reduces a graph to the cyclic core of its folding.
fn core_of(g: &AGraph) -> Result<AGraph, Failure> {
    if g.is_reduced() && g.is_cyclically_reduced() {
        return Ok(g.clone());
    }
    Ok(cyclic_core(&fold(g).graph)?.graph)
}

fn trace_json(trace: &MinimizationTrace) -> Value {
    serde_json::to_value(trace).expect("traces serialize")
}

fn history_text(h: &[usize]) -> String {
    h.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn witness_text(cli: &Cli, trace: &MinimizationTrace) -> String {
    if cli.witness {
        format!("witness: {}\n", serde_json::to_string(trace).expect("traces serialize"))
    } else {
        String::new()
    }
}

fn result_json(input: Value, minimal: Value, history: &[usize], trace: &MinimizationTrace) -> Value {
    json!({
        "input": input,
        "minimal": minimal,
        "size_history": history,
        "trace": trace_json(trace),
    })
}

fn cmd_minimize_word(cli: &Cli, s: &str) -> Result<Output, Failure> {
    let u = parse_nonempty_word(cli, s)?;
    let run = minimize_word(&u)?;
    let text = format!(
        "minimal: {}\nsize history: {}\n{}",
        run.minimal,
        history_text(&run.size_history),
        witness_text(cli, &run.trace)
    );
    let json = result_json(json!(u.to_string()), json!(run.minimal.to_string()), &run.size_history, &run.trace);
    Ok(Output::new(text, json))
}

fn cmd_minimize_cyclic(cli: &Cli, s: &str) -> Result<Output, Failure> {
    let u = parse_nonempty_word(cli, s)?;
    let (_, core) = u.cyclic_core();
    let run = minimize_cyclic_word(&core)?;
    let text = format!(
        "minimal: {}\nsize history: {}\n{}",
        run.minimal,
        history_text(&run.size_history),
        witness_text(cli, &run.trace)
    );
    let json = result_json(json!(core.to_string()), json!(run.minimal.to_string()), &run.size_history, &run.trace);
    Ok(Output::new(text, json))
}

fn words_json(ws: &[Word]) -> Value {
    json!(ws.iter().map(Word::to_string).collect::<Vec<_>>())
}

fn cmd_minimize_subgroup(cli: &Cli, s: &str) -> Result<Output, Failure> {
    let gens = parse_gens(cli, s)?;
    let run = minimize_subgroup(&gens)?;
    let basis = &run.minimal.basis;
    let text = format!(
        "minimal basis: {}\nsize history: {}\n{}",
        if basis.is_empty() {
            "(trivial)".to_string()
        } else {
            basis.iter().map(Word::to_string).collect::<Vec<_>>().join(",")
        },
        history_text(&run.size_history),
        witness_text(cli, &run.trace)
    );
    let minimal = json!({
        "basis": words_json(basis),
        "graph": write_graph(&run.minimal.graph.graph, Some(run.minimal.graph.base)),
    });
    let json = result_json(words_json(&gens), minimal, &run.size_history, &run.trace);
    Ok(Output::new(text, json))
}

fn cmd_minimize_conjugacy(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let f = read_graph(cli, path)?;
    let g = core_of(&f.graph)?;
    let run = minimize_conjugacy(&g)?;
    let graph = write_graph(&run.minimal, None);
    let text = format!(
        "{graph}# size history: {}\n{}",
        history_text(&run.size_history),
        witness_text(cli, &run.trace)
    );
    let json = result_json(json!(write_graph(&g, None)), json!(graph), &run.size_history, &run.trace);
    Ok(Output::new(text, json))
}

fn cmd_minimize_tuple(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let text = read_input(path)?;
    let blocks = parse_graph_blocks(&text).with_context(|| format!("in {}", path.display()))?;
    if blocks.is_empty() {
        return Err(Failure::Usage(anyhow::anyhow!("{} holds no graphs", path.display())));
    }
    let rank = blocks.iter().map(|b| b.graph.rank()).max().unwrap_or(1);
    let parts = blocks
        .into_iter()
        .map(|b| apply_rank(cli, b.graph.with_rank(rank)).and_then(|g| core_of(&g)))
        .collect::<Result<Vec<_>, _>>()?;
    let run = minimize_tuple(&parts)?;
    let graphs: Vec<String> = run.minimal.iter().map(|g| write_graph(g, None)).collect();
    let text = format!(
        "{}# size history: {}\n{}",
        graphs.concat(),
        history_text(&run.size_history),
        witness_text(cli, &run.trace)
    );
    let inputs: Vec<String> = parts.iter().map(|g| write_graph(g, None)).collect();
    let json = result_json(json!(inputs), json!(graphs), &run.size_history, &run.trace);
    Ok(Output::new(text, json))
}

fn verdict_output(cli: &Cli, name: &str, input: Value, v: whitehead::Verdict) -> Output {
    let answer = if v.holds { "yes" } else { "no" };
    let text = format!("{name}: {answer}\n{}", witness_text(cli, &v.witness));
    let mut json = json!({
        "input": input,
        name: v.holds,
        "minimal_size": v.minimal_size,
    });
    if cli.witness {
        json["trace"] = trace_json(&v.witness);
    }
    Output {
        text,
        json,
        negative: !v.holds,
    }
}

fn cmd_is_primitive(cli: &Cli, s: &str) -> Result<Output, Failure> {
    let u = parse_nonempty_word(cli, s)?;
    let v = is_primitive(&u)?;
    Ok(verdict_output(cli, "primitive", json!(u.to_string()), v))
}

fn cmd_is_free_factor(cli: &Cli, s: &str) -> Result<Output, Failure> {
    let gens = parse_gens(cli, s)?;
    let v = is_free_factor(&gens)?;
    Ok(verdict_output(cli, "free-factor", words_json(&gens), v))
}

fn cmd_fold(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let f = read_graph(cli, path)?;
    let folded = fold(&f.graph);
    let base = f.base.map(|b| folded.vertex_map[b]);
    let graph = write_graph(&folded.graph, base);
    let json = json!({
        "input": write_graph(&f.graph, f.base),
        "graph": graph,
        "size": folded.graph.size(),
    });
    Ok(Output::new(graph, json))
}

fn cmd_hypergraph(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let f = read_graph(cli, path)?;
    let hyper = WhiteheadHypergraph::build(&f.graph)?;
    if let Some(letter) = &cli.dump_network {
        let v: Letter = letter.parse().with_context(|| format!("cannot parse letter {letter:?}"))?;
        hyper.alphabet().check(v)?;
        let mut net = hypergraph_to_network(&hyper, v);
        net.max_flow();
        eprint!("{}", net.to_dot(&gadget_node_names(&hyper, &net)));
    }
    let mut text = hyper.dump();
    let mut cuts = Vec::new();
    for v in hyper.active_generators() {
        let r = min_vcut(&hyper, v);
        let delta = r.capacity as i64 - hyper.degree(v) as i64;
        text.push_str(&format!(
            "# {v}: degree {}, min cut {} = {{{}}}, change {delta}\n",
            hyper.degree(v),
            r.capacity,
            r.cut
        ));
        cuts.push(json!({
            "letter": v.to_string(),
            "degree": hyper.degree(v),
            "cut": r.cut.to_string(),
            "capacity": r.capacity,
            "delta": delta,
        }));
    }
    let edges: Vec<Value> = hyper
        .hyperedges()
        .iter()
        .map(|(e, m)| json!({"letters": e.to_string(), "multiplicity": m}))
        .collect();
    let json = json!({
        "input": write_graph(&f.graph, f.base),
        "hyperedges": edges,
        "cuts": cuts,
    });
    Ok(Output::new(text, json))
}

fn cmd_export_dot(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let f = read_graph(cli, path)?;
    let dot = to_dot(&f.graph, f.base);
    let json = json!({ "input": write_graph(&f.graph, f.base), "dot": dot });
    Ok(Output::new(dot, json))
}

fn cmd_oracle_check(cli: &Cli, cases: usize) -> Result<Output, Failure> {
    let rank = cli.rank.unwrap_or(3);
    if rank > BRUTE_FORCE_MAX_RANK {
        bail_usage(format!(
            "rank {rank} is too large for exhaustive search (at most {BRUTE_FORCE_MAX_RANK})"
        ))?;
    }
    let report = oracle_check(rank, cases, cli.seed)?;
    let mut text = format!(
        "cases: {}\nmin-cut checks: {} ({} mismatches)\nsize-change checks: {} ({} mismatches)\ninvalid flows: {}\n",
        report.cases,
        report.mincut_checks,
        report.mincut_mismatches,
        report.delta_checks,
        report.delta_mismatches,
        report.flow_violations
    );
    for f in &report.failures {
        text.push_str(&format!("failure: {f}\n"));
    }
    if !report.passed() {
        let detail = if cli.json {
            serde_json::to_string_pretty(&report).expect("reports serialize")
        } else {
            text
        };
        return Err(Failure::Internal(anyhow::anyhow!("oracle mismatch\n{detail}")));
    }
    let json = serde_json::to_value(&report).expect("reports serialize");
    Ok(Output::new(text, json))
}

fn bail_usage(msg: String) -> Result<(), Failure> {
    Err(Failure::Usage(anyhow::Error::msg(msg)))
}
