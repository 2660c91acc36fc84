//! The `resgraph` command line, kept in the library so it can be driven
//! in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::graph::{parse_graph_expr, Graph};
use crate::instructions::InstructionString;
use crate::machines::{interpret, interpret_modifiable, is_memory_modifiable_output, Choice, MemoryModel, RuleSet};
use crate::randomness::{
    dyad_bits, likelihood_exact, likelihood_extremes, likelihood_mc, likelihood_row, randomness_cost_a,
    sample_gnp, sample_vertex_addition, DegreeDistribution, LikelihoodRow, Probability,
};
use crate::trees::{
    build_tree_from_instructions, encode_parent_bits, is_recursive_tree, prufer_decode, prufer_encode, sample_ua,
    tree_cost, ua_likelihood_exact, ParentVector,
};
use crate::verify::{expressiveness_count, find_constructions, verify_proposition, Proposition};

/// Environment variable naming the directory for relative `--out` paths.
pub const OUT_DIR_VAR: &str = "RESGRAPH_OUT_DIR";

const GRAPH_HELP: &str = "Graph: JSON {\"n\":3,\"edges\":[[1,2]]} or an expression \
K4 (complete), E4 (empty), P5 (path), C6 (cycle), K2,3 (complete bipartite), \
S2,3 (clique joined to independent set), F2,1,3 (union of paths), T5 (star)";

#[derive(Parser, Debug)]
#[command(
    name = "resgraph",
    version,
    about = "Build graphs one vertex per instruction bit under bounded memory, and measure what that costs",
    after_help = "Exit codes: 0 success, 1 verification failure, 2 usage or precondition error.\n\
                  Relative --out paths are resolved against $RESGRAPH_OUT_DIR when it is set."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a rule set on an instruction string and print the graph.
    ///
    /// Rules are written `0>A,1>B` where each action is `-` (no edge),
    /// `E` (join every earlier vertex), `0` or `1` (join earlier vertices
    /// with that label). Models: none, full, fading2, modifiable.
    #[command(verbatim_doc_comment)]
    Build(BuildArgs),
    /// Exhaustively check a construction claim over all rules and strings.
    ///
    /// P2: without memory every output is empty, complete or threshold.
    /// P3: with full memory each rule yields its closed-form family.
    /// P5: with fading memory each rule yields its path-forest or threshold form.
    /// C_modifiable: a modified final step always yields K_l + E_m, K_{l,m} or K_n.
    /// C_pnfree: full memory never yields induced P5, C5, P6, C6, but does yield P4 and C4.
    /// Exits 1 when a counterexample is found.
    #[command(verbatim_doc_comment)]
    Verify(VerifyArgs),
    /// Likelihood of a graph under the uniform-degree vertex addition process.
    ///
    /// --exact prints the exact probability p/q of producing a graph
    /// isomorphic to the input; --mc estimates it by sampling; --extremes
    /// tabulates every class on n vertices; --bounds prints the
    /// automorphism-group bounds.
    Likelihood(LikelihoodArgs),
    /// Sample a random graph (requires --seed).
    Random(RandomArgs),
    /// Uniform attachment trees, Prüfer codes and tree build costs.
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Bit costs: random bits a(n) of vertex addition, C(n,2) dyad coins,
    /// instruction and memory bits of tree building.
    Cost(CostArgs),
    /// List every (rule, string) whose output is isomorphic to a graph.
    Find(FindArgs),
    /// Count isomorphism classes reachable under a memory model.
    Expressiveness(ExpressivenessArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Matrix,
    Csv,
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// Rule set, e.g. "0>1,1>-".
    #[arg(long)]
    rule: String,
    /// Memory model: none, full, fading2, modifiable.
    #[arg(long)]
    model: String,
    /// Instruction string of 0s and 1s.
    #[arg(long)]
    x: String,
    /// Builder choices for the modifiable model, one of s (standard) or m (modify) per bit.
    #[arg(long)]
    choices: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Print the full trace with the resource tally.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// P2, P3, P5, C_modifiable, C_pnfree or all.
    proposition: String,
    /// Longest instruction string checked (at most 12, or 7 for C_modifiable).
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct LikelihoodArgs {
    #[arg(long, help = GRAPH_HELP)]
    graph: Option<String>,
    #[arg(long, conflicts_with_all = ["mc", "extremes", "bounds"])]
    exact: bool,
    /// Number of Monte-Carlo samples (requires --seed).
    #[arg(long, requires = "seed", conflicts_with_all = ["extremes", "bounds"])]
    mc: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Tabulate all isomorphism classes on this many vertices.
    #[arg(long, conflicts_with = "bounds")]
    extremes: Option<usize>,
    #[arg(long)]
    bounds: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RandomProcess {
    /// Every dyad independently with probability p.
    Gnp,
    /// Vertex addition with a degree distribution.
    VertexAddition,
}

#[derive(Args, Debug)]
struct RandomArgs {
    #[arg(value_enum)]
    process: RandomProcess,
    #[arg(long)]
    n: usize,
    /// Edge probability for gnp, as p/q or a decimal.
    #[arg(long, default_value = "1/2")]
    p: String,
    /// Degree distribution for vertex-addition: uniform or binomial:<p>.
    #[arg(long, default_value = "uniform")]
    dist: String,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum TreeCommand {
    /// Uniform attachment: vertex t picks a uniform parent among 1..t-1.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Prüfer sequence of a tree (smallest leaf removed first).
    Prufer {
        #[arg(long, help = GRAPH_HELP)]
        graph: String,
    },
    /// Tree from a Prüfer sequence such as 2,3.
    Decode {
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact probability that uniform attachment grows a tree isomorphic to the input.
    Likelihood {
        #[arg(long, help = GRAPH_HELP)]
        graph: String,
    },
    /// Build a tree from a parent vector [0,0,p2,...,pn] and print its instruction bits.
    Build {
        #[arg(long)]
        parents: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CostKind {
    /// Random bits of the vertex addition process on n vertices.
    A,
    /// Coins for all C(n,2) dyads.
    Dyads,
    /// Instruction and memory bits to build an n-vertex tree.
    Tree,
}

#[derive(Args, Debug)]
struct CostArgs {
    #[arg(value_enum)]
    kind: CostKind,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct FindArgs {
    #[arg(long, help = GRAPH_HELP)]
    graph: String,
    #[arg(long, default_value = "full")]
    model: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
struct ExpressivenessArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: usize,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<String, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let (body, code, err) = match dispatch(&cli.command) {
        Ok(s) => (s, 0, String::new()),
        Err(Failure::Verification(s)) => (s, 1, String::new()),
        Err(Failure::Usage(msg)) => (String::new(), 2, format!("error: {msg}\n")),
    };
    match (&cli.out, code) {
        (Some(path), 0 | 1) => {
            let path = resolve_out(path);
            match std::fs::write(&path, &body) {
                Ok(()) => Outcome { stdout: String::new(), stderr: err, code },
                Err(e) => Outcome {
                    stdout: String::new(),
                    stderr: format!("error: cannot write {}: {e}\n", path.display()),
                    code: 2,
                },
            }
        }
        _ => Outcome { stdout: body, stderr: err, code },
    }
}

fn resolve_out(path: &std::path::Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Build(a) => cmd_build(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Likelihood(a) => cmd_likelihood(a),
        Command::Random(a) => cmd_random(a),
        Command::Tree(t) => cmd_tree(t),
        Command::Cost(a) => cmd_cost(a),
        Command::Find(a) => cmd_find(a),
        Command::Expressiveness(a) => {
            let model: MemoryModel = a.model.parse()?;
            Ok(format!("{}\n", expressiveness_count(model, a.n)?))
        }
    }
}

fn line(s: impl AsRef<str>) -> String {
    let s = s.as_ref();
    if s.ends_with('\n') {
        s.to_string()
    } else {
        format!("{s}\n")
    }
}

fn graph_text(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(i, j)| format!("{i}-{j}")).collect();
    format!("n={} m={} edges: {}\n", g.n(), g.edge_count(), edges.join(" "))
}

fn render_graph(g: &Graph, format: Format) -> String {
    match format {
        Format::Text => graph_text(g),
        Format::Json => line(g.to_json()),
        Format::Dot => g.to_dot(),
        Format::Matrix => line(format!("{} {}", g.n(), g.to_matrix_string())),
        Format::Csv => g.to_csv(),
    }
}

fn parse_choices(s: &str) -> Result<Vec<Choice>, Error> {
    s.chars()
        .filter(|c| !matches!(c, ',' | ' '))
        .map(|c| match c {
            's' | 'S' => Ok(Choice::Standard),
            'm' | 'M' => Ok(Choice::Modify),
            other => Err(Error::Parse(format!("choice {other:?} is not s or m"))),
        })
        .collect()
}

fn cmd_build(a: &BuildArgs) -> CmdResult {
    let rule: RuleSet = a.rule.parse()?;
    let model: MemoryModel = a.model.parse()?;
    let x: InstructionString = a.x.parse()?;
    let trace = match (&a.choices, model) {
        (Some(c), MemoryModel::ModifiableMemory) => interpret_modifiable(rule, &x, &parse_choices(c)?)?,
        (Some(_), other) => {
            return Err(Failure::Usage(format!("--choices needs the modifiable model, got {other}")));
        }
        (None, _) => interpret(rule, model, &x)?,
    };
    if a.verbose {
        let mut s = trace.to_json_pretty();
        s.push('\n');
        if model == MemoryModel::ModifiableMemory {
            let _ = writeln!(s, "memory-modifiable output: {}", is_memory_modifiable_output(&trace)?);
        }
        return Ok(s);
    }
    Ok(match a.format {
        Format::Dot => trace.graph.to_dot(),
        f => render_graph(&trace.graph.graph, f),
    })
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let props: Vec<Proposition> = if a.proposition.eq_ignore_ascii_case("all") {
        Proposition::ALL.to_vec()
    } else {
        vec![a.proposition.parse()?]
    };
    let mut out = String::new();
    let mut reports = Vec::new();
    let mut pass = true;
    for p in props {
        let max_n = if p == Proposition::CModifiable { a.max_n.min(crate::verify::MAX_CHOICE_LENGTH) } else { a.max_n };
        let mut rep = verify_proposition(p, max_n)?;
        if !a.timing {
            rep.wall_time_ms = None;
        }
        pass &= rep.pass;
        match a.format {
            Format::Json => reports.push(rep),
            _ => {
                out.push_str(&rep.summary());
                if let Some(ms) = rep.wall_time_ms {
                    let _ = write!(out, " ({ms} ms)");
                }
                out.push('\n');
                for w in &rep.witnesses {
                    let _ = writeln!(out, "  witness {}: rule {} x {}", w.pattern, w.rule, w.x);
                }
                for m in &rep.missing_witnesses {
                    let _ = writeln!(out, "  missing witness {m}");
                }
                for c in rep.counterexamples.iter().take(20) {
                    let _ = writeln!(out, "  counterexample: {}", serde_json::to_string(c).expect("json"));
                }
            }
        }
    }
    if a.format == Format::Json {
        out = line(serde_json::to_string_pretty(&reports).expect("json"));
    }
    if pass {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn graph_arg(g: &Option<String>) -> Result<Graph, Failure> {
    match g {
        Some(s) => Ok(parse_graph_expr(s)?),
        None => Err(Failure::Usage("--graph is required".into())),
    }
}

fn render_rows(rows: &[LikelihoodRow], format: Format) -> String {
    match format {
        Format::Csv => LikelihoodRow::to_csv(rows),
        Format::Json => line(serde_json::to_string_pretty(rows).expect("json")),
        _ => {
            let mut s = String::new();
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:<24} n={} m={:<3} aut={:<5} L={:<14} ~{:.6e} in [{}, {}]",
                    r.certificate, r.n, r.edges, r.automorphisms, r.likelihood.to_string(), r.approx, r.lower, r.upper
                );
            }
            s
        }
    }
}

fn cmd_likelihood(a: &LikelihoodArgs) -> CmdResult {
    if let Some(n) = a.extremes {
        let rep = likelihood_extremes(n)?;
        return Ok(match a.format {
            Format::Json => line(rep.to_json()),
            Format::Csv => rep.to_csv(),
            _ => {
                let mut s = render_rows(&rep.rows, Format::Text);
                let _ = writeln!(s, "classes: {}", rep.rows.len());
                let _ = writeln!(s, "total: {}", rep.total);
                let _ = writeln!(s, "argmin: {}", rep.argmin.join(" "));
                let _ = writeln!(s, "argmax: {}", rep.argmax.join(" "));
                let _ = writeln!(s, "argmin includes complete bipartite: {}", rep.argmin_has_complete_bipartite);
                let _ = writeln!(s, "argmin includes balanced complete bipartite: {}", rep.argmin_has_balanced_bipartite);
                s
            }
        });
    }
    let g = graph_arg(&a.graph)?;
    if let Some(samples) = a.mc {
        if samples == 0 {
            return Err(Failure::Usage("--mc needs at least one sample".into()));
        }
        let seed = a.seed.expect("clap enforces --seed");
        let est = likelihood_mc(&g, samples, seed)?;
        return Ok(match a.format {
            Format::Json => line(serde_json::to_string(&est).expect("json")),
            Format::Csv => {
                format!("samples,hits,seed,estimate,stderr\n{},{},{},{},{}\n", est.samples, est.hits, seed, est.estimate, est.stderr)
            }
            _ => format!(
                "{:.6} +- {:.6} ({} of {} samples, seed {})\n",
                est.estimate, est.stderr, est.hits, est.samples, seed
            ),
        });
    }
    if a.bounds || matches!(a.format, Format::Csv | Format::Json) {
        let row = likelihood_row(&g)?;
        return Ok(match a.format {
            Format::Text if a.bounds => format!("{} <= {} <= {}\n", row.lower, row.likelihood, row.upper),
            f => render_rows(&[row], f),
        });
    }
    if !a.exact {
        return Err(Failure::Usage("choose one of --exact, --mc, --extremes, --bounds".into()));
    }
    Ok(line(likelihood_exact(&g)?.to_string()))
}

fn cmd_random(a: &RandomArgs) -> CmdResult {
    let (g, process) = match a.process {
        RandomProcess::Gnp => {
            let p: Probability = a.p.parse()?;
            (sample_gnp(a.n, &p, a.seed), format!("gnp:{p}"))
        }
        RandomProcess::VertexAddition => {
            if a.n == 0 {
                return Err(Failure::Usage("vertex addition starts from one vertex; need --n >= 1".into()));
            }
            let d: DegreeDistribution = a.dist.parse()?;
            (sample_vertex_addition(a.n, &d, a.seed), format!("vertex-addition:{d}"))
        }
    };
    Ok(match a.format {
        Format::Json => line(json!({"process": process, "seed": a.seed, "graph": g}).to_string()),
        Format::Dot => format!("// {process} seed={}\n{}", a.seed, g.to_dot()),
        f => render_graph(&g, f),
    })
}

fn cmd_tree(t: &TreeCommand) -> CmdResult {
    match t {
        TreeCommand::Sample { n, seed, format } => {
            if *n == 0 {
                return Err(Failure::Usage("a tree needs --n >= 1".into()));
            }
            let tree = sample_ua(*n, *seed);
            let pv = tree.parent_vector().expect("uniform attachment gives parents below children");
            Ok(match format {
                Format::Json => line(
                    json!({"seed": seed, "parents": pv, "recursive": is_recursive_tree(&tree)}).to_string(),
                ),
                Format::Text => format!("{pv}\nrecursive: {}\n", is_recursive_tree(&tree)),
                Format::Dot => format!("// uniform-attachment seed={seed}\n{}", tree.graph().to_dot()),
                f => render_graph(tree.graph(), *f),
            })
        }
        TreeCommand::Prufer { graph } => {
            let seq = prufer_encode(&parse_graph_expr(graph)?)?;
            let parts: Vec<String> = seq.iter().map(usize::to_string).collect();
            Ok(line(parts.join(",")))
        }
        TreeCommand::Decode { seq, format } => {
            let entries: Vec<usize> = if seq.trim().is_empty() {
                vec![]
            } else {
                seq.split(',')
                    .map(|p| p.trim().parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Failure::Usage(format!("bad sequence {seq:?}")))?
            };
            Ok(render_graph(&prufer_decode(&entries)?, *format))
        }
        TreeCommand::Likelihood { graph } => Ok(line(ua_likelihood_exact(&parse_graph_expr(graph)?)?.to_string())),
        TreeCommand::Build { parents, format } => {
            let pv = ParentVector::from_json(parents)?;
            let tree = build_tree_from_instructions(&pv);
            Ok(match format {
                Format::Json => line(
                    json!({
                        "parents": pv,
                        "instructions": encode_parent_bits(&pv).to_string(),
                        "graph": tree.graph(),
                        "cost": tree_cost(pv.n()),
                    })
                    .to_string(),
                ),
                f => render_graph(tree.graph(), *f),
            })
        }
    }
}

fn cmd_cost(a: &CostArgs) -> CmdResult {
    let value = match a.kind {
        CostKind::A => {
            if a.n == 0 {
                return Err(Failure::Usage("a(n) needs --n >= 1".into()));
            }
            json!({"kind": "a", "n": a.n, "random_bits": randomness_cost_a(a.n)})
        }
        CostKind::Dyads => json!({"kind": "dyads", "n": a.n, "random_bits": dyad_bits(a.n as u64)}),
        CostKind::Tree => {
            if a.n == 0 {
                return Err(Failure::Usage("a tree needs --n >= 1".into()));
            }
            let c = tree_cost(a.n);
            json!({"kind": "tree", "n": a.n, "instruction_bits": c.instruction_bits, "memory_bits": c.memory_bits})
        }
    };
    Ok(match a.format {
        Format::Json => line(value.to_string()),
        _ => match a.kind {
            CostKind::Tree => format!("{} {}\n", value["instruction_bits"], value["memory_bits"]),
            _ => format!("{}\n", value["random_bits"]),
        },
    })
}

fn cmd_find(a: &FindArgs) -> CmdResult {
    let g = parse_graph_expr(&a.graph)?;
    let model: MemoryModel = a.model.parse()?;
    let found = find_constructions(&g, model)?;
    Ok(match a.format {
        Format::Json => line(serde_json::to_string_pretty(&found).expect("json")),
        _ => {
            let mut s = String::new();
            for c in &found {
                let _ = write!(s, "{} {}", c.rule, c.x);
                if let Some(ch) = &c.choices {
                    let marks: String =
                        ch.iter().map(|c| if *c == Choice::Modify { 'm' } else { 's' }).collect();
                    let _ = write!(s, " {marks}");
                }
                s.push('\n');
            }
            let _ = writeln!(s, "constructions: {}", found.len());
            s
        }
    })
}
