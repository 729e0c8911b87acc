use clap::{Args, Parser, Subcommand, ValueEnum};
use gsnet::search::ConfigOutcome;
use gsnet::stabilizer::{verify, VerifyConfig};
use gsnet::*;
use serde_json::{json, Value};
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gsnet",
    version,
    about = "Graph-state transformations on multi-star quantum networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a topology and print it as graph JSON (or DOT).
    Build(BuildArgs),
    /// Apply a measurement protocol to a graph.
    Run(RunArgs),
    /// Run the maximal-connectivity protocol on a multi-star.
    Maxconnect(MaxConnectArgs),
    /// Enumerate removal sets and classify their outcomes.
    Enumerate(EnumerateArgs),
    /// Predicted against simulated measurement counts.
    Cost(CostArgs),
    /// Check the graph rules against the stabilizer simulation.
    Verify(VerifyArgs),
    /// Convert a graph JSON document to DOT or canonical JSON.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Topology {
    MultiStar,
    Star,
    BiStar,
    TriStar,
    Path,
    Complete,
    CompleteBipartite,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(value_enum)]
    topology: Topology,
    /// Number of switches (multi-star).
    #[arg(long)]
    switches: Option<usize>,
    /// Leaves: one count, or a comma list (per switch, or per center).
    #[arg(long, value_delimiter = ',')]
    leaves: Vec<usize>,
    /// Vertex count (path, complete).
    #[arg(long)]
    vertices: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: GraphFormat,
}

#[derive(Args)]
struct RunArgs {
    /// Graph JSON file, `-` for stdin.
    #[arg(long, default_value = "-")]
    graph: PathBuf,
    /// Protocol JSON file.
    #[arg(long)]
    protocol: PathBuf,
    /// Include every intermediate graph.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Right,
    Left,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    DropLast,
    SecondToLast,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    /// End in a star on all survivors.
    Star,
    /// Replace the last switch X measurement by Y, leaving two hubs.
    BiStar,
}

#[derive(Args)]
struct MaxConnectArgs {
    #[arg(long)]
    switches: usize,
    /// One count for every switch, or a comma list with one count per switch.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    leaves: Vec<usize>,
    /// Neighbouring switch used as k0 in the X measurements.
    #[arg(long, value_enum, default_value = "right")]
    k0_side: Side,
    /// How an even number of switches is reduced first.
    #[arg(long, value_enum, default_value = "drop-last")]
    even_reduction: Reduction,
    #[arg(long, value_enum, default_value = "star")]
    variant: Variant,
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    switches: usize,
    /// Leaves per switch.
    #[arg(long, default_value_t = 1)]
    leaves: usize,
    /// Also list the mirror-duplicate sets.
    #[arg(long)]
    all: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: TableFormat,
}

#[derive(Args)]
struct CostArgs {
    #[arg(long, default_value_t = 11)]
    m_max: usize,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Add even m, reduced to odd first.
    #[arg(long)]
    include_even: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 10)]
    max_vertices: usize,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    exhaustive_up_to: usize,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct ExportArgs {
    /// Graph JSON file, `-` for stdin.
    #[arg(long, default_value = "-")]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "dot")]
    format: GraphFormat,
}

/// Failure reported as `{"error": kind, "message": ...}`.
struct Failure {
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            kind: e.kind().into(),
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        kind: "InvalidArguments".into(),
        message: message.into(),
    }
}

type CmdResult = std::result::Result<Output, Failure>;

enum Output {
    Text(String),
    Json(Value),
    /// Printed like `Json`, but the command still exits with failure.
    FailedJson(Value),
}

fn read_input(path: &PathBuf) -> std::result::Result<String, Failure> {
    let io = |e: std::io::Error| Failure {
        kind: "Io".into(),
        message: format!("{}: {e}", path.display()),
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types always serialize")
}

fn graph_output(g: &Graph, format: GraphFormat) -> Output {
    match format {
        GraphFormat::Json => Output::Json(serde_json::from_str(&g.to_json()).expect("graph JSON is valid")),
        GraphFormat::Dot => Output::Text(g.to_dot()),
    }
}

fn exactly<const K: usize>(leaves: &[usize], what: &str) -> std::result::Result<[usize; K], Failure> {
    leaves
        .try_into()
        .map_err(|_| invalid(format!("{what} needs --leaves with {K} comma-separated counts")))
}

fn cmd_build(a: BuildArgs) -> CmdResult {
    let one = |what: &str| -> std::result::Result<usize, Failure> {
        match a.leaves[..] {
            [n] => Ok(n),
            _ => Err(invalid(format!("{what} needs a single --leaves count"))),
        }
    };
    let vertices = || a.vertices.ok_or_else(|| invalid("--vertices is required"));
    let g = match a.topology {
        Topology::MultiStar => build_multi_star(&leaf_spec(
            a.switches.ok_or_else(|| invalid("--switches is required"))?,
            &a.leaves,
        )?),
        Topology::Star => build_star(one("star")?),
        Topology::BiStar => {
            let [x, y] = exactly(&a.leaves, "bi-star")?;
            build_bi_star(x, y)
        }
        Topology::TriStar => {
            let [x, y, z] = exactly(&a.leaves, "tri-star")?;
            build_tri_star(x, y, z)
        }
        Topology::Path => build_path(vertices()?),
        Topology::Complete => build_complete(vertices()?),
        Topology::CompleteBipartite => {
            let [x, y] = exactly(&a.leaves, "complete-bipartite")?;
            build_complete_bipartite(x, y)
        }
    };
    Ok(graph_output(&g, a.format))
}

/// `--leaves 2` means two per switch; `--leaves 2,3,1` gives one per switch.
fn leaf_spec(switches: usize, leaves: &[usize]) -> std::result::Result<MultiStarSpec, Failure> {
    let counts = match leaves {
        [] => vec![0; switches],
        [n] => vec![*n; switches],
        list if list.len() == switches => list.to_vec(),
        list => {
            return Err(invalid(format!(
                "--leaves lists {} counts for {switches} switches",
                list.len()
            )));
        }
    };
    Ok(MultiStarSpec::new(counts)?)
}

fn cmd_run(a: RunArgs) -> CmdResult {
    let g = Graph::from_json(&read_input(&a.graph)?)?;
    let p = Protocol::from_json(&read_input(&a.protocol)?)?;
    let run = if a.trace {
        apply_protocol_traced(&g, &p)?
    } else {
        apply_protocol(&g, &p)?
    };
    let mut out = json!({
        "graph": to_value(&run.graph),
        "topology_class": to_value(&classify_topology(&run.graph)),
        "cost": to_value(&run.cost),
    });
    if a.trace {
        out["trace"] = to_value(&run.trace);
    }
    Ok(Output::Json(out))
}

fn cmd_maxconnect(a: MaxConnectArgs) -> CmdResult {
    let spec = leaf_spec(a.switches, &a.leaves)?;
    let opts = MaxConnectOptions {
        k0_side: match a.k0_side {
            Side::Right => K0Side::Right,
            Side::Left => K0Side::Left,
        },
        keep_trace: a.trace,
    };
    if let Variant::BiStar = a.variant {
        let out = generate_bi_star_variant(&spec)?;
        let mut v = to_value(&out);
        v["alpha"] = json!(out.final_graph.order());
        if a.trace {
            v["trace"] = to_value(&out.trace);
        }
        return Ok(Output::Json(v));
    }
    let (out, route) = if spec.m() % 2 == 1 {
        (generate_max_connect_with(&build_multi_star(&spec), opts)?, "direct")
    } else {
        let how = match a.even_reduction {
            Reduction::DropLast => EvenReduction::DropLast,
            Reduction::SecondToLast => EvenReduction::MeasureSecondToLast,
        };
        (generate_max_connect_even(&spec, how, opts)?, "even_reduction")
    };
    let mut v = to_value(&out);
    v["route"] = json!(route);
    v["leaf_counts"] = json!(spec.leaf_counts);
    if a.trace {
        v["trace"] = to_value(&out.trace);
    }
    Ok(Output::Json(v))
}

fn gates_text(o: &ConfigOutcome) -> String {
    o.outcome
        .gates
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn set_text(s: &[usize]) -> String {
    s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_enumerate(a: EnumerateArgs) -> CmdResult {
    let spec = MultiStarSpec::homogeneous(a.switches, a.leaves)?;
    let e = enumerate_configs(a.switches)?;
    let configs: Vec<_> = e.configs.iter().filter(|c| a.all || c.canonical).collect();
    let rows: Vec<ConfigOutcome> = configs
        .iter()
        .map(|c| classify_config(&spec, &c.removal_set))
        .collect::<Result<_>>()?;
    let source = |o: &ConfigOutcome| if o.tabulated { "table" } else { "gate-selection rule" };
    match a.format {
        TableFormat::Json => Ok(Output::Json(json!({
            "switches": a.switches,
            "leaves": a.leaves,
            "total_sets": e.configs.len(),
            "canonical_classes": e.canonical_count,
            "distinct_results": distinct_results(&rows).len(),
            "rows": rows.iter().map(|o| json!({
                "config": o.config.removal_set,
                "canonical": o.config.canonical,
                "mirror": o.mirror,
                "gates": gates_text(o),
                "protocol": to_value(&o.outcome.protocol),
                "topology_class": to_value(&o.topology_class),
                "heavy_centers": o.outcome.heavy,
                "surviving_vertices": o.surviving_vertices,
                "gate_source": source(o),
            })).collect::<Vec<_>>(),
        }))),
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure {
                kind: "Io".into(),
                message: e.to_string(),
            };
            w.write_record([
                "config",
                "mirror",
                "canonical",
                "gates",
                "topology_class",
                "surviving_vertices",
                "gate_source",
            ])
            .map_err(io)?;
            for o in &rows {
                w.write_record([
                    set_text(&o.config.removal_set),
                    set_text(&o.mirror),
                    o.config.canonical.to_string(),
                    gates_text(o),
                    o.topology_class.to_string(),
                    o.surviving_vertices.to_string(),
                    source(o).to_string(),
                ])
                .map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| invalid(e.to_string()))?;
            Ok(Output::Text(String::from_utf8(bytes).expect("csv output is utf-8")))
        }
    }
}

fn cmd_cost(a: CostArgs) -> CmdResult {
    if a.m_max < 1 || a.n_max < 1 {
        return Err(invalid("--m-max and --n-max must be at least 1"));
    }
    let rows = cost_surface(a.m_max, a.n_max, a.include_even, Exec::default())?;
    Ok(match a.format {
        TableFormat::Csv => Output::Text(cost_csv(&rows, a.include_even)),
        TableFormat::Json => Output::Json(to_value(&rows)),
    })
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    if a.max_vertices > MAX_LC_VERTICES || a.exhaustive_up_to > MAX_LC_VERTICES.min(6) {
        return Err(invalid(format!(
            "--max-vertices is limited to {MAX_LC_VERTICES} and --exhaustive-up-to to 6"
        )));
    }
    let cfg = VerifyConfig {
        max_vertices: a.max_vertices,
        trials: a.trials,
        seed: a.seed,
        exhaustive_up_to: a.exhaustive_up_to,
    };
    let exec = if a.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let report = verify(&cfg, exec);
    let passed = report.measurement_rules.all_passed() && report.lc_unitary.all_passed();
    let mut v = to_value(&report);
    v["config"] = to_value(&cfg);
    v["passed"] = json!(passed);
    Ok(if passed { Output::Json(v) } else { Output::FailedJson(v) })
}

fn cmd_export(a: ExportArgs) -> CmdResult {
    let g = Graph::from_json(&read_input(&a.graph)?)?;
    Ok(graph_output(&g, a.format))
}

fn print_json(v: &Value) {
    let mut out = std::io::stdout().lock();
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    if serde_json::to_writer_pretty(&mut out, v).is_ok() {
        writeln!(out).ok();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let msg = e.render().to_string();
            let text: Vec<&str> = msg
                .lines()
                .take_while(|l| !l.starts_with("Usage:"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            let text = text.join(" ");
            eprintln!(
                "{}",
                json!({"error": "InvalidArguments", "message": text.trim_start_matches("error: ")})
            );
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Run(a) => cmd_run(a),
        Command::Maxconnect(a) => cmd_maxconnect(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Cost(a) => cmd_cost(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Export(a) => cmd_export(a),
    };
    match result {
        Ok(Output::Text(t)) => {
            std::io::stdout().lock().write_all(t.as_bytes()).ok();
            ExitCode::SUCCESS
        }
        Ok(Output::Json(v)) => {
            print_json(&v);
            ExitCode::SUCCESS
        }
        Ok(Output::FailedJson(v)) => {
            print_json(&v);
            ExitCode::FAILURE
        }
        Err(f) => {
            eprintln!("{}", json!({"error": f.kind, "message": f.message}));
            ExitCode::FAILURE
        }
    }
}
