//! The `semunit` command line.
//!
//! Every command reads its inputs, runs the stages it needs from scratch and
//! writes its artifacts into the output directory only once all of them have
//! been computed. A `key=value` summary goes to standard output.
//!
//! Exit status: 0 success, 1 usage or configuration error, 2 data error,
//! 3 solver bound exceeded.

mod stages;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Utc};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::semantics::DEFAULT_BOUND;
use crate::store::Upri;

pub use stages::Output;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "semunit", version, about = "Organize RDF knowledge graphs into semantic units")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and merge the inputs into one N-Quads dataset.
    Ingest(Inputs),
    /// Partition the data layer into statement units.
    Partition(Inputs),
    /// Build compound units over the partition.
    Compound(Inputs),
    /// Render the dynamic label of every statement unit.
    Label(Inputs),
    /// Write the logic program: unit facts plus background rules.
    Translate(Inputs),
    /// Solve the program and translate the cautious consequences to OWL.
    Reason(Inputs),
    /// Publish every unit as a nanopublication.
    Nanopub(Inputs),
    /// Align two graphs level by level.
    Align(AlignArgs),
    /// Apply an access policy and write the visible part of the graph.
    Acl(Inputs),
    /// Run every stage.
    Pipeline(PipelineArgs),
}

#[derive(Args, Debug)]
struct Inputs {
    /// TriG or N-Quads files.
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    options: Options,
}

#[derive(Args, Debug)]
struct AlignArgs {
    left: PathBuf,
    right: PathBuf,
    #[command(flatten)]
    options: Options,
}

#[derive(Args, Debug)]
struct PipelineArgs {
    inputs: Vec<PathBuf>,
    /// Also align the result against this graph.
    #[arg(long)]
    align_with: Option<PathBuf>,
    #[command(flatten)]
    options: Options,
}

#[derive(Args, Debug, Default)]
struct Options {
    /// TOML file with defaults for any of the options below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    schemas: Option<PathBuf>,
    /// TOML vocabulary catalog.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Extra rule files, added to the bundled rules.
    #[arg(long = "rules")]
    rules: Vec<PathBuf>,
    /// Extra translation pattern files, added to the bundled patterns.
    #[arg(long = "patterns")]
    patterns: Vec<PathBuf>,
    #[arg(long)]
    policy: Option<PathBuf>,
    /// Requester attribute for the access policy, as key=value.
    #[arg(long = "requester", value_name = "KEY=VALUE")]
    requester: Vec<String>,
    /// Namespace for minted unit identifiers.
    #[arg(long)]
    namespace: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, env = "SEMUNIT_OUT")]
    out: Option<PathBuf>,
    /// Most atoms the solver may guess over.
    #[arg(long)]
    bound: Option<usize>,
    /// Creator recorded in nanopublication provenance.
    #[arg(long)]
    creator: Option<String>,
    /// Creation date (RFC 3339) recorded in nanopublication provenance.
    #[arg(long)]
    created: Option<String>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(default)]
    inputs: Vec<PathBuf>,
    schemas: Option<PathBuf>,
    catalog: Option<PathBuf>,
    #[serde(default)]
    rules: Vec<PathBuf>,
    #[serde(default)]
    patterns: Vec<PathBuf>,
    policy: Option<PathBuf>,
    #[serde(default)]
    requester: BTreeMap<String, String>,
    namespace: Option<String>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    bound: Option<usize>,
    creator: Option<String>,
    created: Option<String>,
}

pub const DEFAULT_NAMESPACE: &str = "https://example.org/unit/";
pub const DEFAULT_OUT: &str = "semunit-out";
/// Creation date used for seeded runs that name none, so their output is reproducible.
pub const SEEDED_CREATED: &str = "2020-01-01T00:00:00Z";

/// Fully resolved settings for one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub inputs: Vec<PathBuf>,
    pub schemas: Option<PathBuf>,
    pub catalog: Option<PathBuf>,
    pub rules: Vec<PathBuf>,
    pub patterns: Vec<PathBuf>,
    pub policy: Option<PathBuf>,
    pub requester: BTreeMap<String, String>,
    pub namespace: String,
    pub seed: Option<u64>,
    pub out: PathBuf,
    pub bound: usize,
    pub creator: Upri,
    pub created: DateTime<Utc>,
}

impl RunConfig {
    /// Flags override the config file; the config file overrides defaults.
    fn resolve(inputs: Vec<PathBuf>, opts: Options) -> Result<RunConfig, CliError> {
        let (file, base) = match &opts.config {
            Some(path) => {
                let text = read(path)?;
                let file: FileConfig = toml::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                (file, path.parent().map(Path::to_path_buf).unwrap_or_default())
            }
            None => (FileConfig::default(), PathBuf::new()),
        };
        let rel = |p: PathBuf| if p.is_absolute() { p } else { base.join(p) };
        let rel_all = |ps: Vec<PathBuf>| ps.into_iter().map(rel).collect::<Vec<_>>();

        let mut requester = file.requester;
        for kv in opts.requester {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("--requester expects KEY=VALUE, got `{kv}`")))?;
            requester.insert(k.to_string(), v.to_string());
        }
        let namespace = opts
            .namespace
            .or(file.namespace)
            .unwrap_or_else(|| DEFAULT_NAMESPACE.to_string());
        let seed = opts.seed.or(file.seed);
        let creator = opts
            .creator
            .or(file.creator)
            .unwrap_or_else(|| format!("{namespace}agent"));
        let creator = Upri::new(creator).map_err(|e| CliError::Usage(format!("creator: {e}")))?;
        let created = match opts.created.or(file.created) {
            Some(s) => parse_date(&s)?,
            None if seed.is_some() => parse_date(SEEDED_CREATED)?,
            None => Utc::now(),
        };
        let config = RunConfig {
            inputs: if inputs.is_empty() { rel_all(file.inputs) } else { inputs },
            schemas: opts.schemas.or(file.schemas.map(rel)),
            catalog: opts.catalog.or(file.catalog.map(rel)),
            rules: if opts.rules.is_empty() { rel_all(file.rules) } else { opts.rules },
            patterns: if opts.patterns.is_empty() { rel_all(file.patterns) } else { opts.patterns },
            policy: opts.policy.or(file.policy.map(rel)),
            requester,
            namespace,
            seed,
            out: opts.out.or(file.out.map(rel)).unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
            bound: opts.bound.or(file.bound).unwrap_or(DEFAULT_BOUND),
            creator,
            created,
        };
        config.check()?;
        Ok(config)
    }

    fn check(&self) -> Result<(), CliError> {
        if self.bound < 1 {
            return Err(CliError::Usage("bound must be at least 1".into()));
        }
        let files = self
            .inputs
            .iter()
            .chain(&self.schemas)
            .chain(&self.catalog)
            .chain(&self.rules)
            .chain(&self.patterns)
            .chain(&self.policy);
        for f in files {
            if !f.is_file() {
                return Err(CliError::Usage(format!("{} does not exist", f.display())));
            }
        }
        Ok(())
    }
}

fn parse_date(s: &str) -> Result<DateTime<Utc>, CliError> {
    DateTime::parse_from_rfc3339(s)
        .map(|d| d.with_timezone(&Utc))
        .map_err(|e| CliError::Usage(format!("date `{s}`: {e}")))
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Runs the command line `argv` (program name first) and returns the exit status.
pub fn execute(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(output) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(output.summary_text().as_bytes());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(command: Command) -> Result<Output, CliError> {
    use stages::Stage;
    let (name, inputs, options, stages, extra) = match command {
        Command::Ingest(a) => ("ingest", a.inputs, a.options, vec![Stage::Ingest], None),
        Command::Partition(a) => ("partition", a.inputs, a.options, vec![Stage::Partition], None),
        Command::Compound(a) => ("compound", a.inputs, a.options, vec![Stage::Compound], None),
        Command::Label(a) => ("label", a.inputs, a.options, vec![Stage::Label], None),
        Command::Translate(a) => ("translate", a.inputs, a.options, vec![Stage::Translate], None),
        Command::Reason(a) => ("reason", a.inputs, a.options, vec![Stage::Reason], None),
        Command::Nanopub(a) => ("nanopub", a.inputs, a.options, vec![Stage::Nanopub], None),
        Command::Acl(a) => ("acl", a.inputs, a.options, vec![Stage::Acl], None),
        Command::Align(a) => ("align", vec![a.left], a.options, vec![Stage::Align], Some(a.right)),
        Command::Pipeline(a) => {
            let mut all = Stage::PIPELINE.to_vec();
            if a.align_with.is_some() {
                all.push(Stage::Align);
            }
            ("pipeline", a.inputs, a.options, all, a.align_with)
        }
    };
    let config = RunConfig::resolve(inputs, options)?;
    if let Some(right) = &extra {
        if !right.is_file() {
            return Err(CliError::Usage(format!("{} does not exist", right.display())));
        }
    }
    if config.inputs.is_empty() {
        return Err(CliError::Usage(format!("{name}: no input files given")));
    }
    if stages.contains(&Stage::Acl) && name == "acl" && config.policy.is_none() {
        return Err(CliError::Usage("acl needs --policy".into()));
    }
    let output = stages::run_stages(name, &config, &stages, extra.as_deref())?;
    output.write(&config.out)?;
    Ok(output)
}
