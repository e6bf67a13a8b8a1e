//! The `evicomb` command line.
//!
//! Exit codes: `0` on success (negative answers such as "not combinable"
//! included), `1` on usage or input errors, `2` on domain errors raised by
//! the analysis itself. Reports go to standard output only on success;
//! errors and notes go to standard error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::combination::{conflict_weight, dempster_combine};
use crate::conditional::{
    build_conflict_free_parent, conditional_combinable, parse_conditions, propagate, summarize_where,
    ConditionalParent,
};
use crate::error::Error;
use crate::formats::csv::{conditional_parent_to_csv, infer_frames, parse_frame_spec, relation_from_csv};
use crate::formats::json::{
    mapping_from_json, mass_from_json, mass_to_value, pretty, probability_from_json, probability_to_value,
    ratio_to_value,
};
use crate::frame::Frame;
use crate::mass::MassDistribution;
use crate::probability::{joint_satisfiable, satisfies};
use crate::relational::{check_envelope, combine_relations, summarize, zadeh_combinable, Relation};

#[derive(Debug, Parser)]
#[command(
    name = "evicomb",
    version,
    about = "Exact evidence combination over relational models"
)]
struct Cli {
    /// Output format; JSON is the stable contract.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Frame of a relation attribute: `Attr=lo..hi` or `Attr=a|b|c`.
    #[arg(long = "frame", global = true, value_name = "ATTR=SPEC")]
    frame: Vec<String>,
    /// JSON object mapping attribute names to label arrays or frame specs.
    #[arg(long = "frames", global = true, value_name = "FRAMES_JSON")]
    frames: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Zadeh,
    Conditional,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Granular distribution of one attribute of a relation.
    Summarize {
        relation: PathBuf,
        #[arg(long)]
        attr: String,
    },
    /// Conditional granular distribution over rows matching `K=V` pairs.
    SummarizeWhere {
        relation: PathBuf,
        #[arg(long)]
        attr: String,
        #[arg(long = "where", value_name = "K=V[,K=V]")]
        condition: String,
    },
    /// Belief of a set.
    Bel {
        mass: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Plausibility of a set.
    Pls {
        mass: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Dempster combination of two distributions.
    Combine { m1: PathBuf, m2: PathBuf },
    /// Whether two distributions can be combined under a relational model.
    Combinable {
        m1: PathBuf,
        m2: PathBuf,
        #[arg(long, value_enum, default_value_t = Model::Conditional)]
        model: Model,
        #[arg(long)]
        witness: bool,
    },
    /// Conflict-free combined parent relation of two conditional distributions.
    Parent {
        m1: PathBuf,
        m2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Push a distribution through a multivalued mapping.
    Propagate {
        mass: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Entrywise intersection of two relations aligned by Name.
    Relcombine {
        r1: PathBuf,
        r2: PathBuf,
        #[arg(long)]
        attr: String,
    },
    /// Whether a probability distribution satisfies a mass distribution.
    Satisfies { p: PathBuf, mass: PathBuf },
    /// Find a probability distribution satisfying two mass distributions.
    Satisfiable { m1: PathBuf, m2: PathBuf },
    /// Verify the belief/plausibility envelope of a refined relation.
    CheckEnvelope {
        ra: PathBuf,
        rb: PathBuf,
        #[arg(long)]
        attr: String,
    },
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::Summarize { .. } => "summarize",
            Command::SummarizeWhere { .. } => "summarize-where",
            Command::Bel { .. } => "bel",
            Command::Pls { .. } => "pls",
            Command::Combine { .. } => "combine",
            Command::Combinable { .. } => "combinable",
            Command::Parent { .. } => "parent",
            Command::Propagate { .. } => "propagate",
            Command::Relcombine { .. } => "relcombine",
            Command::Satisfies { .. } => "satisfies",
            Command::Satisfiable { .. } => "satisfiable",
            Command::CheckEnvelope { .. } => "check-envelope",
        }
    }
}

enum Failure {
    /// Unreadable or malformed input.
    Input(String),
    /// The analysis rejected well-formed input.
    Domain(Error),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Domain(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(m) => format!("error[input]: {m}"),
            Failure::Domain(e) => format!("error[{}]: {e}", e.kind()),
        }
    }
}

fn input<T>(path: &Path, r: Result<T, Error>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn domain<T>(r: Result<T, Error>) -> Result<T, Failure> {
    r.map_err(Failure::Domain)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

struct Report {
    verb: &'static str,
    result: Value,
    diagnostics: Vec<Value>,
}

impl Report {
    fn new(verb: &'static str, result: Value) -> Self {
        Report {
            verb,
            result,
            diagnostics: Vec::new(),
        }
    }

    fn note(mut self, kind: &str, message: String) -> Self {
        self.diagnostics.push(json!({ "kind": kind, "message": message }));
        self
    }

    fn to_json(&self) -> String {
        pretty(&json!({
            "verb": self.verb,
            "result": self.result,
            "diagnostics": self.diagnostics,
        }))
    }

    fn to_table(&self) -> String {
        let mut out = format!("verb: {}\n", self.verb);
        render_table(&self.result, 0, &mut out);
        out
    }
}

fn fraction(num: &Value, den: &Value) -> String {
    if den.as_u64() == Some(1) {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

/// `{"num": n, "den": d}` objects print as `n/d`.
fn scalar(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(map) if map.len() == 2 && map.contains_key("num") && map.contains_key("den") => {
            Some(fraction(&map["num"], &map["den"]))
        }
        _ => None,
    }
}

/// Rows of an object array, merging `num`/`den` into a `weight` column.
fn table_rows(items: &[Value]) -> Option<(Vec<String>, Vec<Vec<String>>)> {
    let mut header: Vec<String> = Vec::new();
    let mut rows = Vec::new();
    for item in items {
        let map = item.as_object()?;
        let mut row: Vec<(String, String)> = Vec::new();
        for (k, v) in map {
            if k == "den" {
                continue;
            }
            if k == "num" {
                row.push(("weight".into(), fraction(v, map.get("den")?)));
            } else {
                row.push((k.clone(), scalar(v)?));
            }
        }
        if header.is_empty() {
            header = row.iter().map(|(k, _)| k.clone()).collect();
        }
        rows.push(row.into_iter().map(|(_, v)| v).collect());
    }
    Some((header, rows))
}

fn render_table(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    let Some(map) = value.as_object() else {
        out.push_str(&format!(
            "{pad}{}\n",
            scalar(value).unwrap_or_else(|| value.to_string())
        ));
        return;
    };
    for (key, v) in map {
        if let Some(s) = scalar(v) {
            out.push_str(&format!("{pad}{key}: {s}\n"));
        } else if let Value::Array(items) = v {
            if items.is_empty() {
                out.push_str(&format!("{pad}{key}: []\n"));
            } else if let Some((header, rows)) = table_rows(items) {
                out.push_str(&format!("{pad}{key}:\n"));
                let mut widths: Vec<usize> = header.iter().map(String::len).collect();
                for row in &rows {
                    for (w, c) in widths.iter_mut().zip(row) {
                        *w = (*w).max(c.len());
                    }
                }
                let line = |cells: &[String]| {
                    let body = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ");
                    format!("{pad}  {}\n", body.trim_end())
                };
                out.push_str(&line(&header));
                for row in &rows {
                    out.push_str(&line(row));
                }
            } else {
                let items: Vec<String> = items
                    .iter()
                    .map(|i| scalar(i).unwrap_or_else(|| i.to_string()))
                    .collect();
                out.push_str(&format!("{pad}{key}: [{}]\n", items.join(", ")));
            }
        } else {
            out.push_str(&format!("{pad}{key}:\n"));
            render_table(v, indent + 1, out);
        }
    }
}

struct Context {
    declared: BTreeMap<String, Frame>,
}

impl Context {
    fn new(cli: &Cli) -> Result<Context, Failure> {
        let mut declared = BTreeMap::new();
        if let Some(path) = &cli.frames {
            let text = read(path)?;
            let doc: BTreeMap<String, Value> = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            for (attr, spec) in doc {
                let frame = match spec {
                    Value::String(s) => parse_frame_spec(&s),
                    Value::Array(items) => items
                        .iter()
                        .map(|v| {
                            v.as_str()
                                .map(str::to_string)
                                .ok_or_else(|| Error::Parse(format!("frame of `{attr}` must list strings")))
                        })
                        .collect::<Result<Vec<_>, _>>()
                        .and_then(Frame::new),
                    _ => Err(Error::Parse(format!(
                        "frame of `{attr}` must be a string or an array"
                    ))),
                };
                declared.insert(attr, input(path, frame)?);
            }
        }
        for decl in &cli.frame {
            let (attr, spec) = decl
                .split_once('=')
                .ok_or_else(|| Failure::Input(format!("--frame `{decl}` is not ATTR=SPEC")))?;
            let frame = parse_frame_spec(spec).map_err(|e| Failure::Input(format!("--frame {decl}: {e}")))?;
            declared.insert(attr.trim().to_string(), frame);
        }
        Ok(Context { declared })
    }

    /// Reads relations with frames inferred jointly, so they share frames.
    fn relations(&self, paths: &[&Path]) -> Result<Vec<Relation>, Failure> {
        let texts = paths.iter().map(|p| read(p)).collect::<Result<Vec<_>, _>>()?;
        let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
        let frames = infer_frames(&refs, &self.declared).map_err(|e| {
            let names: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
            Failure::Input(format!("{}: {e}", names.join(", ")))
        })?;
        paths
            .iter()
            .zip(&texts)
            .map(|(path, text)| {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                input(path, relation_from_csv(&name, text, &frames))
            })
            .collect()
    }
}

fn load_mass(path: &Path) -> Result<MassDistribution, Failure> {
    let text = read(path)?;
    input(path, mass_from_json(&text))
}

fn relation_value(relation: &Relation) -> Value {
    let rows: Vec<Value> = relation
        .rows()
        .iter()
        .map(|row| {
            let mut map = Map::new();
            map.insert("Name".into(), json!(row.id));
            for (attr, cell) in relation.attributes().iter().zip(&row.cells) {
                let v = cell
                    .as_ref()
                    .map(|s| Value::from(s.to_string()))
                    .unwrap_or(Value::Null);
                map.insert(attr.clone(), v);
            }
            Value::Object(map)
        })
        .collect();
    json!({ "attributes": relation.attributes(), "rows": rows })
}

fn parent_value(parent: &ConditionalParent) -> Value {
    let rows: Vec<Value> = parent
        .rows
        .iter()
        .map(|row| {
            json!({
                "Name": row.id,
                "Age1": row.first.as_ref().map(ToString::to_string),
                "Age2": row.second.as_ref().map(ToString::to_string),
                "E1": row.tag_first(),
                "E2": row.tag_second(),
            })
        })
        .collect();
    json!({
        "alpha": parent.alpha,
        "shared_pair": [parent.shared_pair.0.to_string(), parent.shared_pair.1.to_string()],
        "row_count": parent.rows.len(),
        "rows": rows,
    })
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let ctx = Context::new(cli)?;
    let verb = cli.command.verb();
    let report = match &cli.command {
        Command::Summarize { relation, attr } => {
            let rel = ctx.relations(&[relation])?.remove(0);
            let summary = domain(summarize(&rel, attr))?;
            Report::new(verb, mass_to_value(&summary.distribution))
        }
        Command::SummarizeWhere {
            relation,
            attr,
            condition,
        } => {
            let rel = ctx.relations(&[relation])?.remove(0);
            let condition =
                parse_conditions(condition).map_err(|e| Failure::Input(format!("--where: {e}")))?;
            let m = domain(summarize_where(&rel, attr, &condition))?;
            Report::new(verb, mass_to_value(&m))
        }
        Command::Bel { mass, set } | Command::Pls { mass, set } => {
            let m = load_mass(mass)?;
            let d = m
                .frame()
                .parse_set(set)
                .map_err(|e| Failure::Input(format!("--set: {e}")))?;
            let value = if verb == "bel" {
                m.belief(&d)
            } else {
                m.plausibility(&d)
            };
            let value = domain(value)?;
            let mut result = Map::new();
            result.insert("set".into(), Value::from(d.to_string()));
            if let Value::Object(r) = ratio_to_value(&value) {
                result.extend(r);
            }
            Report::new(verb, Value::Object(result))
        }
        Command::Combine { m1, m2 } => {
            let (a, b) = (load_mass(m1)?, load_mass(m2)?);
            let conflict = domain(conflict_weight(&a, &b))?;
            let m = domain(dempster_combine(&a, &b))?;
            Report::new(verb, mass_to_value(&m)).note(
                "conflict",
                format!("conflict weight K = {}", conflict.conflict_weight),
            )
        }
        Command::Combinable {
            m1,
            m2,
            model,
            witness,
        } => {
            let (a, b) = (load_mass(m1)?, load_mass(m2)?);
            let conflict = domain(conflict_weight(&a, &b))?;
            let mut result = Map::new();
            match model {
                Model::Zadeh => {
                    let w = domain(zadeh_combinable(&a, &b))?;
                    result.insert("model".into(), json!("zadeh"));
                    result.insert("combinable".into(), json!(w.feasible));
                    result.insert(
                        "blocking_focal".into(),
                        json!(w.blocking_focal.as_ref().map(ToString::to_string)),
                    );
                    if *witness {
                        let weights = w.joint_weights.as_ref().map(|weights| {
                            weights
                                .iter()
                                .map(|((x, y), v)| {
                                    let mut e = Map::new();
                                    e.insert("a".into(), json!(x.to_string()));
                                    e.insert("b".into(), json!(y.to_string()));
                                    if let Value::Object(r) = ratio_to_value(v) {
                                        e.extend(r);
                                    }
                                    Value::Object(e)
                                })
                                .collect::<Vec<_>>()
                        });
                        result.insert("witness".into(), json!(weights));
                    }
                }
                Model::Conditional => {
                    let ok = domain(conditional_combinable(&a, &b))?;
                    result.insert("model".into(), json!("conditional"));
                    result.insert("combinable".into(), json!(ok));
                    if *witness {
                        let parent = if ok {
                            Some(parent_value(&domain(build_conflict_free_parent(&a, &b))?))
                        } else {
                            None
                        };
                        result.insert("witness".into(), json!(parent));
                    }
                }
            }
            result.insert(
                "conflict_weight".into(),
                ratio_to_value(&conflict.conflict_weight),
            );
            Report::new(verb, Value::Object(result))
        }
        Command::Parent { m1, m2, out } => {
            let (a, b) = (load_mass(m1)?, load_mass(m2)?);
            let parent = domain(build_conflict_free_parent(&a, &b))?;
            let csv = conditional_parent_to_csv(&parent);
            let mut result = match parent_value(&parent) {
                Value::Object(map) => map,
                _ => unreachable!("parent_value builds an object"),
            };
            result.remove("rows");
            match out {
                Some(path) => {
                    std::fs::write(path, &csv)
                        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
                    result.insert("out".into(), json!(path.display().to_string()));
                }
                None => {
                    result.insert("csv".into(), json!(csv));
                }
            }
            Report::new(verb, Value::Object(result))
        }
        Command::Propagate { mass, map } => {
            let m = load_mass(mass)?;
            let text = read(map)?;
            let gamma = input(map, mapping_from_json(&text))?;
            let out = domain(propagate(&m, &gamma))?;
            Report::new(verb, mass_to_value(&out))
        }
        Command::Relcombine { r1, r2, attr } => {
            let mut rels = ctx.relations(&[r1, r2])?;
            let b = rels.pop().expect("two relations");
            let a = rels.pop().expect("two relations");
            let c = domain(combine_relations(&a, &b, attr))?;
            Report::new(verb, relation_value(&c))
        }
        Command::Satisfies { p, mass } => {
            let m = load_mass(mass)?;
            let text = read(p)?;
            let prob = input(p, probability_from_json(&text, m.frame()))?;
            let ok = domain(satisfies(&prob, &m))?;
            Report::new(verb, json!({ "satisfies": ok }))
        }
        Command::Satisfiable { m1, m2 } => {
            let (a, b) = (load_mass(m1)?, load_mass(m2)?);
            let w = domain(joint_satisfiable(&a, &b))?;
            Report::new(
                verb,
                json!({
                    "satisfiable": w.is_some(),
                    "witness": w.as_ref().map(probability_to_value),
                }),
            )
        }
        Command::CheckEnvelope { ra, rb, attr } => {
            let mut rels = ctx.relations(&[ra, rb])?;
            let b = rels.pop().expect("two relations");
            let a = rels.pop().expect("two relations");
            let ok = domain(check_envelope(&a, &b, attr))?;
            Report::new(verb, json!({ "envelope_holds": ok }))
        }
    };
    Ok(report)
}

/// Runs one invocation; `args[0]` is the program name. Returns the exit code.
pub fn run<S: AsRef<str>>(args: &[S], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args.iter().map(AsRef::as_ref)) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Json => report.to_json(),
                Format::Table => report.to_table(),
            };
            for d in &report.diagnostics {
                let _ = writeln!(
                    stderr,
                    "note[{}]: {}",
                    d["kind"].as_str().unwrap_or(""),
                    d["message"].as_str().unwrap_or("")
                );
            }
            let _ = stdout.write_all(body.as_bytes());
            0
        }
        Err(failure) => {
            let _ = writeln!(stderr, "{}", failure.message());
            failure.exit_code()
        }
    }
}
