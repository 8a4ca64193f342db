//! Command-line front end: circuit in, partition, network activities,
//! schedules and Gantt charts out.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use netsched_core::circuit::{
    asap_schedule, build_qft, decompose_swaps, parse_circuit, serialize_circuit, Circuit,
    DurationTable,
};
use netsched_core::netmap::{
    build_activity_network, extract_nonlocal_gates, validate_network, ActivityNetwork,
    NonlocalGate, Topology, TopologyConfig,
};
use netsched_core::partition::{
    build_interaction_graph, partition_graph, InteractionGraph, Partition, PartitionFile,
};
use netsched_core::render::{
    circuit_chart, network_chart, render_ascii, render_svg, Chart, DEFAULT_CELL_WIDTH,
};
use netsched_core::scheduler::{
    critical_path, exact_schedule, greedy_schedule, lower_bound, validate_schedule, Project,
    Schedule, SolverLimits,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Greedy tie-break among activities ready at the same time step.
pub const GREEDY_TIE_BREAK: &str = "ascending activity id";

#[derive(Debug, Parser)]
#[command(
    name = "netsched",
    version,
    about = "Schedule network operations for distributed quantum circuits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every stage and write all artifacts to --out.
    Pipeline(PipelineArgs),
    /// Emit a circuit in text or JSON form.
    Gen(GenArgs),
    /// Build the interaction graph and partition it.
    Partition(PartitionArgs),
    /// Extract nonlocal gates and build the activity network.
    Extract(ExtractArgs),
    /// Schedule an activity network.
    Schedule(ScheduleArgs),
    /// Draw a Gantt chart for a network schedule or a local circuit.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Greedy,
    Exact,
    Both,
}

impl MethodChoice {
    fn greedy(self) -> bool {
        self != MethodChoice::Exact
    }

    fn exact(self) -> bool {
        self != MethodChoice::Greedy
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Ascii,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct CircuitArgs {
    /// Circuit file (text or .json) or `qft:N`.
    #[arg(long)]
    pub circuit: String,
    /// JSON duration table, e.g. {"h":1,"cp":2,"swap":3,"cnot":2}.
    #[arg(long)]
    pub durations: Option<PathBuf>,
    /// Replace every SWAP by three CNOTs before anything else.
    #[arg(long)]
    pub decompose_swaps: bool,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    #[arg(long)]
    pub horizon: Option<u32>,
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Wall-clock limit for the exact solver, in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    /// Number of QPUs to partition over; defaults to the topology's QPU count.
    #[arg(long)]
    pub k: Option<usize>,
    /// Preset (`paper2qpu`, `paper4qpu`) or JSON topology file.
    #[arg(long)]
    pub topology: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    pub balance_tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = MethodChoice::Both)]
    pub method: MethodChoice,
    #[command(flatten)]
    pub limits: LimitArgs,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "json,svg")]
    pub format: Vec<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    /// Write JSON instead of the text format.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0.0)]
    pub balance_tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ExtractArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    /// partition.json written by `partition`.
    #[arg(long)]
    pub partition: PathBuf,
    #[arg(long)]
    pub topology: Option<String>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ScheduleArgs {
    /// network.json written by `extract`.
    #[arg(long)]
    pub network: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodChoice::Both)]
    pub method: MethodChoice,
    #[command(flatten)]
    pub limits: LimitArgs,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    /// Network to chart together with --schedule.
    #[arg(long, requires = "schedule", conflicts_with = "circuit")]
    pub network: Option<PathBuf>,
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    /// Chart the ASAP schedule of a local circuit instead.
    #[arg(long, required_unless_present = "network")]
    pub circuit: Option<String>,
    #[arg(long)]
    pub durations: Option<PathBuf>,
    #[arg(long)]
    pub decompose_swaps: bool,
    #[arg(long, value_enum, default_value_t = Format::Ascii)]
    pub format: Format,
    #[arg(long, default_value_t = DEFAULT_CELL_WIDTH)]
    pub cell_width: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// How a command ended, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Stage(&'static str, anyhow::Error),
    Invalid(Vec<String>),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Stage(..) => EXIT_ERROR,
            Failure::Invalid(_) => EXIT_INVALID,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(e) => write!(f, "usage error: {e:#}"),
            Failure::Stage(stage, e) => write!(f, "{stage} stage failed: {e:#}"),
            Failure::Invalid(v) => {
                write!(f, "validation failed:")?;
                for line in v {
                    write!(f, "\n  {line}")?;
                }
                Ok(())
            }
        }
    }
}

trait StageExt<T> {
    fn stage(self, name: &'static str) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> StageExt<T> for Result<T, E> {
    fn stage(self, name: &'static str) -> Result<T, Failure> {
        self.map_err(|e| Failure::Stage(name, e.into()))
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_ERROR,
            };
        }
    };
    match execute(&cli.command) {
        Ok(summary) => {
            if !summary.is_empty() {
                print!("{summary}");
            }
            EXIT_OK
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    }
}

/// Runs a parsed command; the returned text goes to stdout.
pub fn execute(command: &Command) -> Result<String, Failure> {
    match command {
        Command::Pipeline(args) => {
            let report = run_pipeline(args)?;
            Ok(report.summary())
        }
        Command::Gen(args) => cmd_gen(args),
        Command::Partition(args) => cmd_partition(args),
        Command::Extract(args) => cmd_extract(args),
        Command::Schedule(args) => cmd_schedule(args),
        Command::Render(args) => cmd_render(args),
    }
}

pub fn load_circuit(spec: &str) -> anyhow::Result<Circuit> {
    if let Some(n) = spec.strip_prefix("qft:") {
        let n: usize = n
            .parse()
            .with_context(|| format!("bad qubit count in {spec:?}"))?;
        return Ok(build_qft(n)?);
    }
    let text = fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
    if spec.ends_with(".json") {
        let raw: Circuit =
            serde_json::from_str(&text).with_context(|| format!("parsing {spec}"))?;
        // rebuild through the checked constructor
        let mut c = Circuit::new(raw.num_qubits())?;
        for g in raw.gates() {
            c.push(g.kind, &g.qubits, g.angle)?;
        }
        Ok(c)
    } else {
        Ok(parse_circuit(&text)?)
    }
}

fn load_durations(path: Option<&Path>) -> anyhow::Result<DurationTable> {
    let table = match path {
        None => DurationTable::default(),
        Some(p) => read_json(p)?,
    };
    table.validate()?;
    Ok(table)
}

/// Preset name or JSON file; `None` gives `k` QPUs with two of each qubit
/// type and two-step operations.
pub fn load_topology(spec: Option<&str>, k: usize) -> anyhow::Result<TopologyConfig> {
    let config = match spec {
        None => TopologyConfig {
            topology: Topology {
                num_qpus: k,
                comm_per_qpu: 2,
                mem_per_qpu: 2,
                switch_comm: 2,
            },
            op_duration: 2,
        },
        Some(s) if Path::new(s).is_file() => read_json(Path::new(s))?,
        Some(s) => TopologyConfig::preset(s)?,
    };
    config.topology.validate()?;
    if config.op_duration == 0 {
        bail!("op_duration must be at least 1");
    }
    Ok(config)
}

fn prepare_circuit(args: &CircuitArgs) -> Result<(Circuit, DurationTable), Failure> {
    let mut c = load_circuit(&args.circuit).stage("circuit")?;
    if args.decompose_swaps {
        c = decompose_swaps(&c);
    }
    let d = load_durations(args.durations.as_deref()).stage("circuit")?;
    Ok((c, d))
}

impl LimitArgs {
    pub fn to_limits(&self) -> Result<SolverLimits, Failure> {
        let wall_limit = match self.time_limit {
            None => None,
            Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
            Some(s) => return Err(Failure::Usage(anyhow!("invalid --time-limit {s}"))),
        };
        if self.horizon == Some(0) {
            return Err(Failure::Usage(anyhow!("--horizon must be positive")));
        }
        Ok(SolverLimits {
            horizon: self.horizon,
            node_budget: self.node_budget,
            wall_limit,
        })
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_text(dir: &Path, name: &str, text: &str) -> anyhow::Result<()> {
    let path = dir.join(name);
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_json<T: Serialize + ?Sized>(dir: &Path, name: &str, value: &T) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(dir, name, &text)
}

fn write_chart(dir: &Path, stem: &str, chart: &Chart, formats: &[Format]) -> anyhow::Result<()> {
    if formats.contains(&Format::Svg) {
        write_text(dir, &format!("{stem}.svg"), &render_svg(chart))?;
    }
    if formats.contains(&Format::Ascii) {
        write_text(
            dir,
            &format!("{stem}.txt"),
            &render_ascii(chart, DEFAULT_CELL_WIDTH)?,
        )?;
    }
    Ok(())
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .with_context(|| format!("creating {}", dir.display()))
        .stage("output")
}

fn partition_circuit(
    c: &Circuit,
    k: usize,
    balance_tol: f64,
    seed: u64,
) -> Result<(InteractionGraph, Partition), Failure> {
    if k > c.num_qubits() {
        return Err(Failure::Stage(
            "partition",
            anyhow!(
                "circuit has {} qubits, fewer than the {k} parts requested",
                c.num_qubits()
            ),
        ));
    }
    let g = build_interaction_graph(c);
    let p = partition_graph(&g, k, balance_tol, seed).stage("partition")?;
    Ok((g, p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitSummary {
    pub qubits: usize,
    pub gates: usize,
    pub local_makespan: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodReport {
    pub makespan: u32,
    pub complete: bool,
    pub proved_optimal: bool,
    pub valid: bool,
    pub violations: Vec<String>,
}

impl MethodReport {
    fn new(p: &Project, s: &Schedule) -> Self {
        let violations: Vec<String> = validate_schedule(p, s)
            .iter()
            .map(ToString::to_string)
            .collect();
        MethodReport {
            makespan: s.makespan,
            complete: s.is_complete(),
            proved_optimal: s.proved_optimal,
            valid: violations.is_empty(),
            violations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub circuit: CircuitSummary,
    pub k: usize,
    pub parts: Vec<Vec<usize>>,
    pub cut: u64,
    pub nonlocal_gates: usize,
    pub jobs: usize,
    pub activities: usize,
    pub topology: TopologyConfig,
    pub lower_bound: u32,
    pub critical_path: u32,
    pub greedy_tie_break: String,
    pub greedy: Option<MethodReport>,
    pub exact: Option<MethodReport>,
    /// Greedy makespan minus exact makespan, when both are complete.
    pub gap: Option<i64>,
}

impl Report {
    pub fn is_valid(&self) -> bool {
        [&self.greedy, &self.exact]
            .into_iter()
            .flatten()
            .all(|m| m.valid)
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, m) in [("greedy", &self.greedy), ("exact", &self.exact)] {
            if let Some(m) = m {
                out.extend(m.violations.iter().map(|v| format!("{name}: {v}")));
            }
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "qubits {} | k {} | cut {} | nonlocal gates {} | activities {} | lower bound {}\n",
            self.circuit.qubits,
            self.k,
            self.cut,
            self.nonlocal_gates,
            self.activities,
            self.lower_bound
        );
        if let Some(g) = &self.greedy {
            s += &format!(
                "greedy makespan {}{}\n",
                g.makespan,
                if g.complete { "" } else { " (incomplete)" }
            );
        }
        if let Some(e) = &self.exact {
            s += &format!(
                "exact makespan {}{}\n",
                e.makespan,
                if e.proved_optimal {
                    " (optimal)"
                } else {
                    " (not proved optimal)"
                }
            );
        }
        if let Some(gap) = self.gap {
            s += &format!("gap {gap}\n");
        }
        s
    }
}

/// Everything the pipeline computes, kept in memory for callers and tests.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub circuit: Circuit,
    pub graph: InteractionGraph,
    pub partition: Partition,
    pub nonlocal: Vec<NonlocalGate>,
    pub network: ActivityNetwork,
    pub project: Project,
    pub greedy: Option<Schedule>,
    pub exact: Option<Schedule>,
    pub report: Report,
}

fn resolve_k(args: &PipelineArgs) -> Result<(usize, TopologyConfig), Failure> {
    let preset_k = match args.topology.as_deref() {
        Some(spec) => Some(load_topology(Some(spec), 0).stage("topology")?),
        None => None,
    };
    match (args.k, preset_k) {
        (Some(k), Some(t)) if t.topology.num_qpus != k => Err(Failure::Usage(anyhow!(
            "--k {k} differs from the topology's {} QPUs",
            t.topology.num_qpus
        ))),
        (_, Some(t)) => Ok((t.topology.num_qpus, t)),
        (Some(k), None) => {
            if k < 2 {
                return Err(Failure::Usage(anyhow!("--k must be at least 2")));
            }
            Ok((k, load_topology(None, k).stage("topology")?))
        }
        (None, None) => Err(Failure::Usage(anyhow!(
            "either --k or --topology is required"
        ))),
    }
}

/// Runs every stage, writing artifacts as each stage completes.
pub fn run_pipeline(args: &PipelineArgs) -> Result<Report, Failure> {
    let run = pipeline(args)?;
    if run.report.is_valid() {
        Ok(run.report)
    } else {
        Err(Failure::Invalid(run.report.violations()))
    }
}

pub fn pipeline(args: &PipelineArgs) -> Result<PipelineRun, Failure> {
    let limits = args.limits.to_limits()?;
    let (k, config) = resolve_k(args)?;
    let out = args.out.as_path();
    create_dir(out)?;

    let (circuit, durations) = prepare_circuit(&args.circuit)?;
    let gantt = asap_schedule(&circuit, &durations);
    write_json(out, "circuit.json", &circuit).stage("circuit")?;
    write_json(out, "gantt_local.json", &gantt).stage("circuit")?;
    let chart = circuit_chart(&circuit, &gantt).stage("circuit")?;
    write_chart(out, "gantt_local", &chart, &args.format).stage("circuit")?;

    let (graph, partition) = partition_circuit(&circuit, k, args.balance_tol, args.seed)?;
    let pfile = PartitionFile::new(&graph, &partition).stage("partition")?;
    write_json(out, "graph.json", &graph).stage("partition")?;
    write_json(out, "partition.json", &pfile).stage("partition")?;

    let nonlocal = extract_nonlocal_gates(&circuit, &partition, &durations).stage("extract")?;
    write_json(out, "nonlocal.json", &nonlocal).stage("extract")?;
    let network =
        build_activity_network(&nonlocal, &config.topology, config.op_duration).stage("extract")?;
    write_json(out, "network.json", &network).stage("extract")?;
    let problems = validate_network(&network);
    if !problems.is_empty() {
        return Err(Failure::Invalid(
            problems.iter().map(ToString::to_string).collect(),
        ));
    }

    let project = Project::from(&network);
    let greedy = args
        .method
        .greedy()
        .then(|| greedy_schedule(&project, &limits));
    let exact = if args.method.exact() {
        Some(exact_schedule(&project, &limits).stage("schedule")?)
    } else {
        None
    };
    for (name, s) in [("greedy", &greedy), ("exact", &exact)] {
        let Some(s) = s else { continue };
        write_json(out, &format!("schedule_{name}.json"), s).stage("schedule")?;
        if let Ok(chart) = network_chart(&project, s) {
            write_chart(out, &format!("schedule_{name}"), &chart, &args.format).stage("render")?;
        }
    }

    let greedy_report = greedy.as_ref().map(|s| MethodReport::new(&project, s));
    let exact_report = exact.as_ref().map(|s| MethodReport::new(&project, s));
    let gap = match (&greedy_report, &exact_report) {
        (Some(g), Some(e)) if g.complete && e.complete => {
            Some(i64::from(g.makespan) - i64::from(e.makespan))
        }
        _ => None,
    };
    let report = Report {
        circuit: CircuitSummary {
            qubits: circuit.num_qubits(),
            gates: circuit.len(),
            local_makespan: gantt.horizon,
        },
        k,
        parts: partition.canonical_parts(),
        cut: pfile.cut,
        nonlocal_gates: nonlocal.len(),
        jobs: network.jobs.len(),
        activities: network.len(),
        topology: config,
        lower_bound: lower_bound(&project),
        critical_path: critical_path(&project),
        greedy_tie_break: GREEDY_TIE_BREAK.to_string(),
        greedy: greedy_report,
        exact: exact_report,
        gap,
    };
    write_json(out, "report.json", &report).stage("report")?;
    Ok(PipelineRun {
        circuit,
        graph,
        partition,
        nonlocal,
        network,
        project,
        greedy,
        exact,
        report,
    })
}

fn cmd_gen(args: &GenArgs) -> Result<String, Failure> {
    let (c, _) = prepare_circuit(&args.circuit)?;
    let text = if args.json {
        serde_json::to_string_pretty(&c).stage("circuit")? + "\n"
    } else {
        serialize_circuit(&c)
    };
    match &args.out {
        Some(path) => {
            fs::write(path, text)
                .with_context(|| format!("writing {}", path.display()))
                .stage("output")?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_partition(args: &PartitionArgs) -> Result<String, Failure> {
    if args.k < 2 {
        return Err(Failure::Usage(anyhow!("--k must be at least 2")));
    }
    let (c, _) = prepare_circuit(&args.circuit)?;
    let (g, p) = partition_circuit(&c, args.k, args.balance_tol, args.seed)?;
    let file = PartitionFile::new(&g, &p).stage("partition")?;
    create_dir(&args.out)?;
    write_json(&args.out, "graph.json", &g).stage("partition")?;
    write_json(&args.out, "partition.json", &file).stage("partition")?;
    Ok(format!(
        "parts {:?} cut {}\n",
        p.canonical_parts(),
        file.cut
    ))
}

fn cmd_extract(args: &ExtractArgs) -> Result<String, Failure> {
    let (c, durations) = prepare_circuit(&args.circuit)?;
    let file: PartitionFile = read_json(&args.partition).stage("extract")?;
    let partition = file.into_partition(0.0);
    let config = load_topology(args.topology.as_deref(), partition.k).stage("topology")?;
    let nonlocal = extract_nonlocal_gates(&c, &partition, &durations).stage("extract")?;
    let network =
        build_activity_network(&nonlocal, &config.topology, config.op_duration).stage("extract")?;
    create_dir(&args.out)?;
    write_json(&args.out, "nonlocal.json", &nonlocal).stage("extract")?;
    write_json(&args.out, "network.json", &network).stage("extract")?;
    Ok(format!(
        "nonlocal gates {} | activities {}\n",
        nonlocal.len(),
        network.len()
    ))
}

fn load_network(path: &Path) -> Result<(ActivityNetwork, Project), Failure> {
    let network: ActivityNetwork = read_json(path).stage("schedule")?;
    let problems = validate_network(&network);
    if !problems.is_empty() {
        return Err(Failure::Invalid(
            problems.iter().map(ToString::to_string).collect(),
        ));
    }
    let project = Project::from(&network);
    Ok((network, project))
}

fn cmd_schedule(args: &ScheduleArgs) -> Result<String, Failure> {
    let limits = args.limits.to_limits()?;
    let (_, project) = load_network(&args.network)?;
    create_dir(&args.out)?;
    let mut summary = String::new();
    let mut violations = Vec::new();
    let mut schedules = Vec::new();
    if args.method.greedy() {
        schedules.push(("greedy", greedy_schedule(&project, &limits)));
    }
    if args.method.exact() {
        schedules.push((
            "exact",
            exact_schedule(&project, &limits).stage("schedule")?,
        ));
    }
    for (name, s) in &schedules {
        write_json(&args.out, &format!("schedule_{name}.json"), s).stage("schedule")?;
        summary += &format!("{name} makespan {}\n", s.makespan);
        violations.extend(
            validate_schedule(&project, s)
                .iter()
                .map(|v| format!("{name}: {v}")),
        );
    }
    if violations.is_empty() {
        Ok(summary)
    } else {
        Err(Failure::Invalid(violations))
    }
}

fn cmd_render(args: &RenderArgs) -> Result<String, Failure> {
    let chart = match (&args.network, &args.schedule, &args.circuit) {
        (Some(network), Some(schedule), _) => {
            let (_, project) = load_network(network)?;
            let s: Schedule = read_json(schedule).stage("render")?;
            network_chart(&project, &s).map_err(|e| Failure::Invalid(vec![e.to_string()]))?
        }
        (None, _, Some(spec)) => {
            let (c, d) = prepare_circuit(&CircuitArgs {
                circuit: spec.clone(),
                durations: args.durations.clone(),
                decompose_swaps: args.decompose_swaps,
            })?;
            circuit_chart(&c, &asap_schedule(&c, &d)).stage("render")?
        }
        _ => {
            return Err(Failure::Usage(anyhow!(
                "give --network with --schedule, or --circuit"
            )))
        }
    };
    let text = match args.format {
        Format::Ascii => {
            render_ascii(&chart, args.cell_width).map_err(|e| Failure::Usage(e.into()))?
        }
        Format::Svg => render_svg(&chart),
        Format::Json => match &args.schedule {
            Some(path) => fs::read_to_string(path).stage("render")?,
            None => {
                let (c, d) = prepare_circuit(&CircuitArgs {
                    circuit: args.circuit.clone().unwrap_or_default(),
                    durations: args.durations.clone(),
                    decompose_swaps: args.decompose_swaps,
                })?;
                serde_json::to_string_pretty(&asap_schedule(&c, &d)).stage("render")? + "\n"
            }
        },
    };
    match &args.out {
        Some(path) => {
            fs::write(path, text)
                .with_context(|| format!("writing {}", path.display()))
                .stage("output")?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
