use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::Path;

use super::{read, CliError, RunConfig};
use crate::align::{align_graphs, LEVELS};
use crate::compound::{CompoundUnit, ProcessedGraph};
use crate::fdo::{
    apply_access_policy, emit_nanopublication, AccessPolicy, Minter, ProvenanceRecord,
    PublishedUnit,
};
use crate::semantics::{
    default_patterns, default_program, facts_from_graph, parse_patterns, reason, LogicProgram,
    Rule, SemanticsError,
};
use crate::store::{
    parse_quads, serialize_quads, QuadDataset, ResourceIndex, Syntax, VocabularyCatalog,
};
use crate::units::{compile_schema, partition, render_with, StatementSchema, UnitError, UnitOrigin};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Stage {
    Ingest,
    Partition,
    Compound,
    Label,
    Translate,
    Reason,
    Nanopub,
    Acl,
    Align,
}

impl Stage {
    /// Stages of `pipeline`; `acl` runs only when a policy is configured.
    pub(crate) const PIPELINE: [Stage; 8] = [
        Stage::Ingest,
        Stage::Partition,
        Stage::Compound,
        Stage::Label,
        Stage::Translate,
        Stage::Reason,
        Stage::Nanopub,
        Stage::Acl,
    ];
}

/// Summary lines and artifact contents of one command.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub command: String,
    pub summary: Vec<(String, String)>,
    /// File name and content.
    pub artifacts: Vec<(String, String)>,
}

impl Output {
    fn put(&mut self, key: impl Into<String>, value: impl ToString) {
        self.summary.push((key.into(), value.to_string()));
    }

    pub fn summary_text(&self) -> String {
        let mut out = format!("command={}\n", self.command);
        for (k, v) in &self.summary {
            out.push_str(&format!("{k}={v}\n"));
        }
        for (name, _) in &self.artifacts {
            out.push_str(&format!("artifact={name}\n"));
        }
        out
    }

    /// Writes each artifact to a temporary file in `dir` and renames it into place.
    pub(crate) fn write(&self, dir: &Path) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Data(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        for (name, content) in &self.artifacts {
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
            tmp.write_all(content.as_bytes()).map_err(io)?;
            tmp.persist(dir.join(name)).map_err(|e| io(e.error))?;
        }
        Ok(())
    }
}

struct Context<'a> {
    config: &'a RunConfig,
    catalog: VocabularyCatalog,
    schemas: Vec<StatementSchema>,
}

impl Context<'_> {
    fn load(&self, paths: &[impl AsRef<Path>]) -> Result<QuadDataset, CliError> {
        let mut quads = Vec::new();
        for path in paths {
            let path = path.as_ref();
            let ds = parse_quads(&read(path)?, Syntax::from_path(path))
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            quads.extend(ds);
        }
        Ok(quads.into_iter().collect())
    }

    /// Partitions and compounds with a fresh minter, so every call mints the same UPRIs.
    fn process(&self, dataset: &QuadDataset) -> Result<ProcessedGraph, CliError> {
        let minter = Minter::new(&self.config.namespace, self.config.seed)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let p = partition(dataset, &self.schemas, &self.catalog, &minter).map_err(unit_error)?;
        Ok(ProcessedGraph::build(p, &self.catalog, &minter))
    }

    fn program(&self) -> Result<LogicProgram, CliError> {
        let mut program = default_program();
        for path in &self.config.rules {
            let extra = LogicProgram::parse(&read(path)?).map_err(|e| semantics_error(path, e))?;
            program.extend(extra);
        }
        Ok(program)
    }
}

fn unit_error(e: UnitError) -> CliError {
    CliError::Data(e.to_string())
}

fn semantics_error(path: &Path, e: SemanticsError) -> CliError {
    match e {
        SemanticsError::BoundExceeded { .. } => CliError::Limit(e.to_string()),
        e => CliError::Data(format!("{}: {e}", path.display())),
    }
}

pub(crate) fn run_stages(
    command: &str,
    config: &RunConfig,
    stages: &[Stage],
    align_with: Option<&Path>,
) -> Result<Output, CliError> {
    let catalog = match &config.catalog {
        Some(path) => VocabularyCatalog::from_toml(&read(path)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?,
        None => VocabularyCatalog::default(),
    };
    let schemas = match &config.schemas {
        Some(path) => compile_schema(&read(path)?)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?,
        None => Vec::new(),
    };
    let cx = Context { config, catalog, schemas };
    let catalog = &cx.catalog;
    let mut out = Output {
        command: command.to_string(),
        ..Output::default()
    };

    let dataset = cx.load(&config.inputs)?;
    let needs_graph = stages.iter().any(|s| *s != Stage::Ingest);
    let graph = if needs_graph { Some(cx.process(&dataset)?) } else { None };
    // With a policy, hidden units are neither published nor shown.
    let view = match (&config.policy, &graph) {
        (Some(path), Some(g)) if stages.iter().any(|s| matches!(s, Stage::Nanopub | Stage::Acl)) => {
            let policy = AccessPolicy::parse(&read(path)?)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            let compounds: Vec<&CompoundUnit> = g.compounds().collect();
            Some(apply_access_policy(
                &g.partition.units,
                &compounds,
                &g.dataset(catalog),
                &policy,
                &config.requester,
                catalog,
            ))
        }
        _ => None,
    };

    for stage in stages {
        match (stage, &graph) {
            (Stage::Ingest, _) => {
                out.put("quads", dataset.len());
                out.put("graphs", dataset.graph_names().len());
                out.artifacts
                    .push(("dataset.nq".into(), serialize_quads(&dataset, Syntax::NQuads)));
            }
            (Stage::Partition, Some(g)) => {
                summarize_partition(g, &mut out);
                let text = serialize_quads(&g.partition.dataset, Syntax::TriG);
                out.artifacts.push(("partition.trig".into(), text));
            }
            (Stage::Compound, Some(g)) => {
                let counts = g.counts();
                out.put("compound_units", counts.values().sum::<usize>());
                for (kind, n) in counts {
                    out.put(format!("compound.{kind}"), n);
                }
                out.put("granularity_cycles", g.cycles.len());
                out.put("compound_warnings", g.warnings.len());
                out.artifacts
                    .push(("compound.trig".into(), serialize_quads(&g.dataset(catalog), Syntax::TriG)));
                out.artifacts.push(("compound.txt".into(), g.report()));
            }
            (Stage::Label, Some(g)) => {
                let index = ResourceIndex::build(&g.partition.dataset, catalog);
                let mut text = String::new();
                let (mut labels, mut warnings) = (0, 0);
                for u in g.partition.units.iter().filter(|u| u.label_template.is_some()) {
                    let rendered = render_with(u, &index).map_err(unit_error)?;
                    text.push_str(&format!("{}\t{}\n", u.upri, rendered.text));
                    labels += 1;
                    warnings += rendered.warnings.len();
                }
                out.put("labels", labels);
                out.put("label_warnings", warnings);
                out.artifacts.push(("labels.txt".into(), text));
            }
            (Stage::Translate, Some(g)) => {
                let facts = facts_from_graph(g, catalog);
                let program = cx.program()?;
                let mut text = String::from("% unit facts\n");
                for f in &facts {
                    text.push_str(&format!("{}\n", Rule::fact(f.clone())));
                }
                text.push_str("% rules\n");
                text.push_str(&program.to_string());
                out.put("facts", facts.len());
                out.put("rules", program.rules.len());
                out.artifacts.push(("model.lp".into(), text));
            }
            (Stage::Reason, Some(g)) => {
                let mut patterns = default_patterns();
                for path in &config.patterns {
                    patterns.extend(parse_patterns(&read(path)?).map_err(|e| semantics_error(path, e))?);
                }
                let r = reason(facts_from_graph(g, catalog), &cx.program()?, &patterns, config.bound, catalog)
                    .map_err(|e| match e {
                        SemanticsError::BoundExceeded { .. } => CliError::Limit(e.to_string()),
                        e => CliError::Data(e.to_string()),
                    })?;
                let axioms = r.owl();
                out.put("stable_models", r.models.len());
                out.put("cautious_atoms", r.cautious.len());
                out.put("axioms", axioms.len());
                out.put("classical_conflicts", r.conflicts.classical.len());
                out.put("disputes", r.conflicts.disputes.len());
                let mut text: String = axioms.iter().map(|a| format!("{a}\n")).collect();
                for (a, b) in &r.conflicts.classical {
                    text.push_str(&format!("# conflict {a} {b}\n"));
                }
                for d in &r.conflicts.disputes {
                    text.push_str(&format!("# dispute {} disputes {}\n", d.disagreement, d.target));
                }
                out.artifacts.push(("axioms.owl".into(), text));
            }
            (Stage::Nanopub, Some(g)) => {
                let mut prov = ProvenanceRecord::new(config.creator.clone(), config.created);
                prov.creation_application = Some("semunit".into());
                let pubinfo = prov.clone();
                let units = g
                    .partition
                    .units
                    .iter()
                    .map(PublishedUnit::from_statement)
                    .chain(g.compounds().map(|c| PublishedUnit::from_compound(c, catalog)))
                    .filter(|u| view.as_ref().is_none_or(|v| v.is_visible(&u.upri)));
                let mut quads = Vec::new();
                let mut n = 0;
                for unit in units {
                    let np = emit_nanopublication(&unit, &prov, &pubinfo, catalog)
                        .map_err(|e| CliError::Data(e.to_string()))?;
                    quads.extend(np.quads);
                    n += 1;
                }
                let ds: QuadDataset = quads.into_iter().collect();
                out.put("nanopublications", n);
                out.artifacts.push(("nanopubs.trig".into(), serialize_quads(&ds, Syntax::TriG)));
            }
            (Stage::Acl, Some(g)) => {
                let Some(view) = &view else { continue };
                let data = g.dataset(catalog);
                out.put("visible_units", view.visible.len());
                out.put("hidden_units", view.hidden.len());
                let visible = view.filter_dataset(&data, catalog);
                out.artifacts.push(("visible.trig".into(), serialize_quads(&visible, Syntax::TriG)));
            }
            (Stage::Align, Some(g)) => {
                let Some(right) = align_with else { continue };
                let other = cx.process(&cx.load(&[right])?)?;
                let report = align_graphs(g, &other);
                for level in LEVELS {
                    let (l, r) = report.unmatched(level);
                    out.put(format!("aligned.{level}"), report.at(level).count());
                    out.put(format!("unmatched_left.{level}"), l);
                    out.put(format!("unmatched_right.{level}"), r);
                }
                out.put("all_perfect", report.all_perfect());
                out.artifacts.push(("alignment.txt".into(), report.to_text()));
            }
            (_, None) => unreachable!("graph is built for every stage after ingest"),
        }
    }
    for w in graph.iter().flat_map(|g| g.partition.warnings.iter().chain(&g.warnings)) {
        eprintln!("warning: {w}");
    }
    Ok(out)
}

fn summarize_partition(g: &ProcessedGraph, out: &mut Output) {
    let units = &g.partition.units;
    let count = |f: &dyn Fn(&UnitOrigin) -> bool| units.iter().filter(|u| f(&u.origin)).count();
    out.put("statement_units", units.len());
    out.put("identification_units", count(&|o| matches!(o, UnitOrigin::Identification(_))));
    out.put("schema_units", count(&|o| matches!(o, UnitOrigin::Schema)));
    out.put("is_about_units", count(&|o| matches!(o, UnitOrigin::IsAbout)));
    out.put("untyped_units", count(&|o| matches!(o, UnitOrigin::Untyped(_))));
    out.put("membership_units", count(&|o| matches!(o, UnitOrigin::Membership)));
    let mut by_class: BTreeMap<&str, usize> = BTreeMap::new();
    for u in units {
        *by_class.entry(u.unit_class.local_name()).or_insert(0) += 1;
    }
    for (class, n) in by_class {
        out.put(format!("unit_class.{class}"), n);
    }
    out.put("partition_warnings", g.partition.warnings.len());
}
