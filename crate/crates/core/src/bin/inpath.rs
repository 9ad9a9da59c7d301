use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use inpath::conflict_dfs::{check_expansion_hypothesis, read_instance, run_dfs};
use inpath::forest::{build_induced_linear_forest, forest_report, verify_induced_forest};
use inpath::graph::{read_edge_list, sample_gnp, write_edge_list, GnpParams, Graph};
use inpath::harness::{
    read_rows_csv, regression_check, run_experiment, summarize, write_report, write_summary_csv, ExperimentConfig,
    GridPoint, HarnessError, Report, ReportFormat,
};
use inpath::moments::{self, ConnectionStats, ForestShape, IntersectionProfile, MomentError, TalagrandParams};
use inpath::oracles;
use inpath::pipeline::{pipeline_graph, pipeline_params, run_pipeline_on, Mode, PipelineError, DEFAULT_FOREST_ROUNDS};

#[derive(Parser)]
#[command(name = "inpath", version, about = "Long induced paths in sparse random graphs")]
struct Cli {
    /// Random seed (base seed for `experiment`).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and print it as an edge list.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "d", required_unless_present = "d")]
        p: Option<f64>,
        /// Average degree; p = d / n.
        #[arg(long)]
        d: Option<f64>,
    },
    /// Build a greedy induced linear forest.
    Forest {
        #[command(flatten)]
        graph: GraphSource,
        /// Component order L.
        #[arg(long, short = 'L')]
        order: usize,
        #[arg(long, default_value_t = DEFAULT_FOREST_ROUNDS)]
        rounds: usize,
    },
    /// Run the conflict DFS on an instance file.
    Dfs {
        #[arg(long)]
        input: PathBuf,
        /// Also check the expansion hypothesis for this k.
        #[arg(long)]
        k: Option<usize>,
        /// Largest |X| in the hypothesis check; defaults to N - 1.
        #[arg(long)]
        x_cap: Option<usize>,
    },
    /// One full pipeline run.
    Pipeline {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long, default_value = "practical")]
        mode: Mode,
        #[arg(long, default_value_t = DEFAULT_FOREST_ROUNDS)]
        rounds: usize,
        /// Write the sampled graph here as an edge list.
        #[arg(long)]
        emit_graph: Option<PathBuf>,
    },
    /// Evaluate one of the moment formulas.
    Moments {
        #[command(subcommand)]
        evaluator: Evaluator,
    },
    /// Exhaustive answers for small instances.
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
    /// Seeded campaign over a parameter grid.
    Experiment(ExperimentArgs),
    /// Compare a saved report against a baseline summary.
    Regress {
        /// Report rows in CSV form.
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        baseline: PathBuf,
        #[arg(long, default_value_t = 0.05)]
        tol: f64,
    },
}

#[derive(Args)]
struct GraphSource {
    /// Edge-list file; otherwise G(n, d/n) is sampled.
    #[arg(long, conflicts_with_all = ["n", "d"])]
    input: Option<PathBuf>,
    #[arg(long, requires = "d")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    d: Option<f64>,
}

#[derive(Subcommand)]
enum Evaluator {
    /// Expected labelled induced copies of a forest pattern.
    ExpectedCopies {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        pattern: String,
    },
    /// Conditional copy probability for an intersection profile.
    Conditional {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        c: usize,
    },
    /// Bound on compatible injections with a given profile.
    CompatibleBound {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        n: usize,
    },
    /// Bound on subtrees of order s through a vertex.
    SubtreeBound {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        s: usize,
    },
    /// Log lower bound on containing a given induced forest.
    CopyLower {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        d: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        eps: f64,
    },
    /// First moment of induced T-matchings with r components.
    Tmatching {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        t_order: usize,
        #[arg(long)]
        r: usize,
    },
    /// Concentration threshold and tail.
    Talagrand {
        #[arg(long)]
        b: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        lipschitz: f64,
        /// Defaults to the Lipschitz constant.
        #[arg(long)]
        offset: Option<f64>,
    },
    /// Connection probability and union-bound margin for pipeline parameters.
    Feasibility {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long, default_value = "practical")]
        mode: Mode,
    },
}

#[derive(Subcommand)]
enum OracleKind {
    /// Longest induced path (n <= 16).
    InducedPath {
        #[arg(long)]
        input: PathBuf,
    },
    /// Largest induced T-matching (n <= 14).
    Tmatching {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        pattern: String,
    },
    /// Labelled induced copies of a pattern.
    Copies {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        pattern: String,
    },
    /// Induced subtrees of a given order through a vertex.
    Subtrees {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        size: usize,
    },
    /// Longest admissible path of a conflict-system instance.
    Admissible {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON experiment config; grid flags are ignored when given.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', default_value = "20000")]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "16")]
    d: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.25")]
    eps: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "practical")]
    mode: Vec<Mode>,
    #[arg(long, default_value_t = 10)]
    seeds: usize,
    #[arg(long, default_value_t = DEFAULT_FOREST_ROUNDS)]
    rounds: usize,
    /// Fill runtime_ms (rows are then not reproducible byte for byte).
    #[arg(long)]
    timing: bool,
    /// Write the per grid point summary CSV here.
    #[arg(long)]
    summary_out: Option<PathBuf>,
    /// Check the campaign against this baseline summary.
    #[arg(long)]
    baseline: Option<PathBuf>,
    #[arg(long, default_value_t = 0.05)]
    tol: f64,
}

/// Bad input from the command line rather than a failed run.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn is_usage(err: &anyhow::Error) -> bool {
    err.chain().any(|e| {
        e.is::<UsageError>()
            || e.is::<MomentError>()
            || matches!(e.downcast_ref::<PipelineError>(), Some(PipelineError::InvalidParams(_)))
            || matches!(e.downcast_ref::<HarnessError>(), Some(HarnessError::InvalidConfig(_)))
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(if is_usage(&err) { 2 } else { 1 })
        }
    }
}

fn output(cli: &Cli) -> anyhow::Result<Box<dyn Write>> {
    Ok(match &cli.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_edge_list(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

/// `path:K`, `cycle:K`, `complete:K`, `star:K` (K leaves), `empty:K`, or an
/// edge-list file.
fn parse_pattern(spec: &str) -> anyhow::Result<Graph> {
    if let Some((family, size)) = spec.split_once(':') {
        let k: usize = size.parse().map_err(|_| usage(format!("bad pattern size in {spec:?}")))?;
        return match family {
            "path" => Ok(Graph::path(k)),
            "cycle" if k >= 3 => Ok(Graph::cycle(k)),
            "complete" => Ok(Graph::complete(k)),
            "star" => Ok(Graph::star(k)),
            "empty" => Ok(Graph::empty(k)),
            _ => Err(usage(format!("unknown pattern {spec:?}"))),
        };
    }
    read_graph(Path::new(spec))
}

/// Prints `rows` as `name<TAB>value` lines or one JSON object.
fn emit_table(out: &mut dyn Write, json: bool, rows: &[(&str, serde_json::Value)]) -> anyhow::Result<()> {
    if json {
        let map: serde_json::Map<String, serde_json::Value> =
            rows.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&map)?)?;
    } else {
        for (k, v) in rows {
            writeln!(out, "{k}\t{v}")?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let json = cli.format == Some(Format::Json);
    match &cli.command {
        Command::Gen { n, p, d } => {
            let p = match (p, d) {
                (Some(p), _) => *p,
                (None, Some(d)) => d / *n as f64,
                (None, None) => unreachable!("clap requires one of --p, --d"),
            };
            if !(0.0..=1.0).contains(&p) {
                return Err(usage(format!("edge probability {p} outside [0, 1]")));
            }
            let g = sample_gnp(GnpParams::new(*n, p), cli.seed);
            let mut out = output(cli)?;
            write_edge_list(&g, &mut out)?;
            out.flush()?;
            Ok(true)
        }
        Command::Forest { graph, order, rounds } => {
            let (g, p) = match (&graph.input, graph.n, graph.d) {
                (Some(path), _, _) => {
                    let g = read_graph(path)?;
                    let n = g.vertex_count() as f64;
                    let p = if n > 1.0 { 2.0 * g.edge_count() as f64 / (n * (n - 1.0)) } else { 0.0 };
                    (g, p)
                }
                (None, Some(n), Some(d)) => {
                    if !(0.0..=n as f64).contains(&d) {
                        return Err(usage(format!("need 0 <= d <= n, got d = {d}")));
                    }
                    let params = GnpParams::with_average_degree(n, d);
                    (sample_gnp(params, cli.seed), params.p)
                }
                _ => return Err(usage("give --input or both --n and --d")),
            };
            let all: Vec<usize> = (0..g.vertex_count()).collect();
            let forest =
                build_induced_linear_forest(&g, &all, *order, *rounds, cli.seed).map_err(|e| usage(e.to_string()))?;
            let verified = verify_induced_forest(&g, &forest);
            let report = forest_report(&forest, g.vertex_count(), p);
            let mut out = output(cli)?;
            if !json {
                for comp in &forest.components {
                    let line: Vec<String> = comp.iter().map(usize::to_string).collect();
                    writeln!(out, "{}", line.join(" "))?;
                }
            }
            let summary = json!({
                "components": report.components,
                "component_order": forest.component_order,
                "order": report.order,
                "ratio_to_scale": report.ratio,
                "verified": verified,
            });
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "forest": forest, "summary": summary }))?)?;
            } else {
                writeln!(out, "{summary}")?;
            }
            out.flush()?;
            Ok(verified)
        }
        Command::Dfs { input, k, x_cap } => {
            let file = File::open(input).with_context(|| format!("opening {}", input.display()))?;
            let (digraph, cs) = read_instance(BufReader::new(file))?;
            let mut invariant_error = None;
            let outcome = run_dfs(&digraph, &cs, |state, _| {
                if invariant_error.is_none() {
                    invariant_error = state.check_invariants(&digraph, &cs).err();
                }
            });
            if let Some(err) = invariant_error {
                bail!("DFS invariant violated: {err}");
            }
            outcome.path.validate(&digraph, &cs)?;
            let mut rows = vec![
                ("vertices", json!(outcome.path.vertices)),
                ("representatives", json!(outcome.path.representatives)),
                ("edge_length", json!(outcome.path.edge_length())),
                ("rounds", json!(outcome.rounds)),
                ("balanced_moment", json!(outcome.balanced_moment)),
                ("representatives_used", json!(outcome.representatives_used)),
            ];
            let mut pass = true;
            if let Some(k) = k {
                let n = digraph.vertex_count();
                let cap = x_cap.unwrap_or(n.saturating_sub(1));
                let holds = check_expansion_hypothesis(&digraph, &cs, *k, cap)?;
                let bound = (n + 1).saturating_sub(2 * k);
                rows.push(("hypothesis_holds", json!(holds)));
                rows.push(("guaranteed_edge_length", json!(if holds { bound } else { 0 })));
                pass = !holds || outcome.path.edge_length() >= bound;
            }
            let mut out = output(cli)?;
            emit_table(&mut out, json, &rows)?;
            out.flush()?;
            Ok(pass)
        }
        Command::Pipeline { n, d, eps, mode, rounds, emit_graph } => {
            let params = pipeline_params(*n, *d, *eps, *mode)?;
            let g = pipeline_graph(&params, cli.seed);
            if let Some(path) = emit_graph {
                let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                let mut w = BufWriter::new(file);
                write_edge_list(&g, &mut w)?;
                w.flush()?;
            }
            let record = run_pipeline_on(&g, &params, cli.seed, *rounds)?;
            let mut out = output(cli)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&record)?)?;
            } else {
                let s = &record.stats;
                emit_table(
                    &mut out,
                    false,
                    &[
                        ("L", json!(params.l)),
                        ("m", json!(params.m)),
                        ("N_target", json!(params.n_components)),
                        ("degenerate", json!(params.degenerate)),
                        ("components_built", json!(s.components_built)),
                        ("components_used", json!(s.components_used)),
                        ("forest_order", json!(s.forest_order)),
                        ("aux_edge_count", json!(s.aux_edge_count)),
                        ("admissible_edge_length", json!(s.admissible_edge_length)),
                        ("final_vertex_length", json!(s.final_vertex_length)),
                        ("normalized_constant", json!(s.normalized_constant)),
                        ("certified", json!(record.certified)),
                        ("path", json!(record.path)),
                    ],
                )?;
            }
            out.flush()?;
            Ok(record.certified)
        }
        Command::Moments { evaluator } => {
            let rows = evaluate(evaluator)?;
            let mut out = output(cli)?;
            emit_table(&mut out, json, &rows)?;
            out.flush()?;
            Ok(true)
        }
        Command::Oracle { kind } => {
            let rows = oracle(kind)?;
            let mut out = output(cli)?;
            emit_table(&mut out, json, &rows)?;
            out.flush()?;
            Ok(true)
        }
        Command::Experiment(args) => experiment(cli, args),
        Command::Regress { report, baseline, tol } => {
            let file = File::open(report).with_context(|| format!("opening {}", report.display()))?;
            let rows = read_rows_csv(BufReader::new(file))?;
            let mut grid: Vec<GridPoint> = Vec::new();
            for r in &rows {
                let point = GridPoint { n: r.n, d: r.d, eps: r.eps, mode: r.mode };
                if !grid.contains(&point) {
                    grid.push(point);
                }
            }
            let summary = summarize(&grid, &rows);
            let outcome = regression_check(&Report { rows, summary }, baseline, *tol)?;
            report_regression(cli, &outcome)
        }
    }
}

fn report_regression(cli: &Cli, outcome: &inpath::harness::RegressionOutcome) -> anyhow::Result<bool> {
    let mut out = output(cli)?;
    if cli.format == Some(Format::Json) {
        writeln!(out, "{}", serde_json::to_string_pretty(outcome)?)?;
    } else {
        writeln!(out, "{}", if outcome.passed { "PASS" } else { "FAIL" })?;
        for diff in &outcome.diffs {
            writeln!(out, "  {diff}")?;
        }
    }
    out.flush()?;
    Ok(outcome.passed)
}

fn experiment(cli: &Cli, args: &ExperimentArgs) -> anyhow::Result<bool> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| usage(format!("config {}: {e}", path.display())))?
        }
        None => {
            let mut c = ExperimentConfig::cartesian(&args.n, &args.d, &args.eps, &args.mode, args.seeds, cli.seed);
            c.forest_rounds = args.rounds;
            c.timing = args.timing;
            c
        }
    };
    match cli.format {
        Some(Format::Json) => config.format = ReportFormat::Json,
        Some(Format::Csv) => config.format = ReportFormat::Csv,
        Some(Format::Text) => return Err(usage("experiment reports are csv or json")),
        None => {}
    }
    if cli.out.is_some() {
        config.output = cli.out.clone();
    }
    let report = run_experiment(&config)?;
    {
        let mut out: Box<dyn Write> = match &config.output {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        write_report(&report, config.format, &mut out)?;
        out.flush()?;
    }
    if let Some(path) = &args.summary_out {
        write_summary_csv(&report.summary, File::create(path)?)?;
    }
    let Some(baseline) = &args.baseline else {
        for s in &report.summary {
            eprintln!(
                "n={} d={} eps={} mode={}: mean {:.6} min {:.6} max {:.6} over {} runs",
                s.n, s.d, s.eps, s.mode, s.mean, s.min, s.max, s.runs
            );
        }
        return Ok(true);
    };
    let outcome = regression_check(&report, baseline, args.tol)?;
    for diff in &outcome.diffs {
        eprintln!("{diff}");
    }
    eprintln!("regression: {}", if outcome.passed { "PASS" } else { "FAIL" });
    Ok(outcome.passed)
}

fn num(x: f64) -> serde_json::Value {
    json!(x)
}

fn evaluate(evaluator: &Evaluator) -> anyhow::Result<Vec<(&'static str, serde_json::Value)>> {
    Ok(match evaluator {
        Evaluator::ExpectedCopies { n, p, pattern } => {
            let shape = ForestShape::of(&parse_pattern(pattern)?)?;
            let ln = moments::expected_labelled_copies_log(*n, *p, &shape)?;
            vec![("k", json!(shape.k)), ("edges", json!(shape.edges)), ("log_value", num(ln)), ("value", num(ln.exp()))]
        }
        Evaluator::Conditional { p, pattern, s, c } => {
            let shape = ForestShape::of(&parse_pattern(pattern)?)?;
            let profile = IntersectionProfile::new(*s, *c)?;
            let ln = moments::conditional_copy_prob_log(*p, &shape, profile)?;
            vec![("log_value", num(ln)), ("value", num(ln.exp()))]
        }
        Evaluator::CompatibleBound { k, s, c, delta, n } => {
            let ln = moments::compatible_count_bound_log(*k, *s, *c, *delta, *n)?;
            let value = moments::compatible_count_bound(*k, *s, *c, *delta, *n)?;
            vec![("log_value", num(ln)), ("value", num(value))]
        }
        Evaluator::SubtreeBound { delta, s } => {
            let ln = moments::subtree_count_bound_log(*delta, *s)?;
            let value = moments::subtree_count_bound(*delta, *s)?;
            vec![("log_value", num(ln)), ("value", num(value))]
        }
        Evaluator::CopyLower { n, d, delta, eps } => {
            if !(*d >= 1.0 && *eps > 0.0 && *eps < 1.0) {
                return Err(usage("need d >= 1 and 0 < eps < 1"));
            }
            let ln = moments::induced_copy_prob_lower_log(*n, *d, *delta, *eps);
            vec![("log_value", num(ln)), ("value", num(ln.exp()))]
        }
        Evaluator::Tmatching { n, p, t_order, r } => {
            let ln = moments::tmatching_first_moment_log(*n, *p, *t_order, *r)?;
            vec![("log_value", num(ln)), ("value", num(ln.exp()))]
        }
        Evaluator::Talagrand { b, t, lipschitz, offset } => {
            let bound = moments::talagrand_tail(&TalagrandParams {
                b: *b,
                t: *t,
                lipschitz: *lipschitz,
                certifiable_offset: offset.unwrap_or(*lipschitz),
            })?;
            vec![("threshold", num(bound.threshold)), ("tail", num(bound.tail))]
        }
        Evaluator::Feasibility { n, d, eps, mode } => {
            let params = pipeline_params(*n, *d, *eps, *mode)?;
            let stats = ConnectionStats {
                m: params.m,
                p: params.p,
                forest_order: params.k_target,
                x_size: params.n_components,
            };
            let report =
                moments::connection_feasibility_report(*n as f64, *d, *eps, params.n_components as f64, &stats);
            vec![
                ("L", json!(params.l)),
                ("m", json!(params.m)),
                ("N", json!(params.n_components)),
                ("alpha", num(report.alpha)),
                ("per_triple_failure_log", num(report.per_triple_failure_log)),
                ("union_bound_log", num(report.union_bound_log)),
                ("margin", num(report.margin)),
            ]
        }
    })
}

fn oracle(kind: &OracleKind) -> anyhow::Result<Vec<(&'static str, serde_json::Value)>> {
    let too_large = |e: oracles::OracleError| match e {
        oracles::OracleError::TooLarge { .. } => usage(e.to_string()),
        other => anyhow!(other),
    };
    Ok(match kind {
        OracleKind::InducedPath { input } => {
            let w = oracles::max_induced_path_exact(&read_graph(input)?).map_err(too_large)?;
            vec![("edge_length", json!(w.edge_length)), ("witness", json!(w.vertices))]
        }
        OracleKind::Tmatching { input, pattern } => {
            let order = oracles::max_induced_tmatching_exact(&read_graph(input)?, &parse_pattern(pattern)?)
                .map_err(too_large)?;
            vec![("order", json!(order))]
        }
        OracleKind::Copies { input, pattern } => {
            let count = oracles::count_labelled_induced_copies(&read_graph(input)?, &parse_pattern(pattern)?)
                .map_err(too_large)?;
            vec![("count", json!(count))]
        }
        OracleKind::Subtrees { input, vertex, size } => {
            let count =
                oracles::count_subtrees_containing(&read_graph(input)?, *vertex, *size).map_err(too_large)?;
            vec![("count", json!(count))]
        }
        OracleKind::Admissible { input } => {
            let file = File::open(input).with_context(|| format!("opening {}", input.display()))?;
            let (digraph, cs) = read_instance(BufReader::new(file))?;
            let best = oracles::longest_admissible_path_exact(&digraph, &cs).map_err(too_large)?;
            vec![
                ("edge_length", json!(best.edge_length())),
                ("vertices", json!(best.vertices)),
                ("representatives", json!(best.representatives)),
            ]
        }
    })
}
