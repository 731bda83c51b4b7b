//! Command-line front end.
//!
//! Settings come from an optional `key=value` config file, overridden by
//! flags. Every JSON document carries the format version and the fully
//! resolved [`RunConfig`]; output is a pure function of that config.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{Action, GeneratorKind, GradedOperator, Window};
use crate::colored::{LaurentPolynomial, Model, ZetaReading};
use crate::partitions::{fixed_points_by_degree, DegreeVector};
use crate::scalars::{fmt_q, random_specialization};
use crate::shuffle::run_shuffle_checks;
use crate::verify::{run_n1_experiment, run_suite, SuiteConfig};
use crate::walgebra::{build_w, WSpec};
use crate::Error;

/// Version tag of every JSON document written by the tool.
pub const FORMAT_VERSION: &str = "toroidal-json/1";

#[derive(Parser, Debug)]
#[command(name = "toroidal", version, about = "Exact fixed-point computations for the shifted quantum toroidal algebra")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct CommonArgs {
    /// Plain key=value config file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Length of the cyclic quiver.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Framing ranks r_1..r_n as a comma list.
    #[arg(long, global = true, value_delimiter = ',')]
    pub r: Option<Vec<usize>>,
    /// Largest total number of boxes in the window.
    #[arg(long = "max-boxes", global = true)]
    pub max_boxes: Option<usize>,
    /// Specialization seed; repeat for several.
    #[arg(long, global = true)]
    pub seed: Vec<u64>,
    /// Modes k, l range over -m..=m in the e-f relation.
    #[arg(long = "mode-range", global = true)]
    pub mode_range: Option<i64>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Permit n = 1 (experimental; results are recorded, not asserted).
    #[arg(long = "allow-n1", global = true)]
    pub allow_n1: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List the torus fixed points in the window.
    FixedPoints,
    /// Emit the matrix of one operator.
    Op {
        /// e, f, psi+, psi-, e-fine, f-fine, e-slope or f-slope.
        #[arg(long)]
        kind: String,
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        /// End of the interval for the fine and slope kinds.
        #[arg(long, allow_negative_numbers = true)]
        j: Option<i64>,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        k: i64,
    },
    /// Emit W_{ij}^k and whether it vanishes.
    W {
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Run the relation and theorem suites.
    Verify {
        /// Perturb selected checks so that they fail.
        #[arg(long)]
        mutate: bool,
        #[arg(long = "skip-theorem")]
        skip_theorem: bool,
        #[arg(long = "skip-relations")]
        skip_relations: bool,
    },
    /// Run the shuffle-algebra property checks.
    ShuffleCheck {
        #[arg(long, default_value_t = 10)]
        triples: usize,
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
}

/// Fully resolved settings, embedded in every output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub r_vec: Vec<usize>,
    pub max_boxes: usize,
    pub seeds: Vec<u64>,
    pub mode_range: i64,
    pub allow_n1: bool,
    pub out: Option<String>,
    pub command: String,
    pub params: BTreeMap<String, String>,
}

impl RunConfig {
    fn defaults() -> Self {
        RunConfig {
            n: 2,
            r_vec: vec![1, 1],
            max_boxes: 4,
            seeds: vec![1, 2, 3],
            mode_range: 4,
            allow_n1: false,
            out: None,
            command: String::new(),
            params: BTreeMap::new(),
        }
    }
}

fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, Error> {
    v.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Config(format!("bad value {:?} for {}", x, key))))
        .collect()
}

fn parse_one<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Error> {
    v.trim().parse().map_err(|_| Error::Config(format!("bad value {:?} for {}", v, key)))
}

/// Applies `key=value` lines (blank lines and `#` comments ignored).
pub fn apply_config_text(cfg: &mut RunConfig, text: &str) -> Result<(), Error> {
    let mut seeds = vec![];
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("config line {}: expected key=value", no + 1)))?;
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "n" => cfg.n = parse_one(&key, value)?,
            "r" | "r_vec" => cfg.r_vec = parse_list(&key, value)?,
            "max_boxes" => cfg.max_boxes = parse_one(&key, value)?,
            "seed" | "seeds" => seeds.extend(parse_list::<u64>(&key, value)?),
            "mode_range" => cfg.mode_range = parse_one(&key, value)?,
            "out" => cfg.out = Some(value.to_string()),
            "allow_n1" => cfg.allow_n1 = parse_one(&key, value)?,
            other => return Err(Error::Config(format!("config line {}: unknown key {:?}", no + 1, other))),
        }
    }
    if !seeds.is_empty() {
        cfg.seeds = seeds;
    }
    Ok(())
}

/// Resolves defaults, then the config file, then flags.
pub fn resolve(common: &CommonArgs, command: &Command) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::defaults();
    if let Some(path) = &common.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {}", path.display(), e)))?;
        apply_config_text(&mut cfg, &text)?;
    }
    if let Some(n) = common.n {
        cfg.n = n;
    }
    if let Some(r) = &common.r {
        cfg.r_vec = r.clone();
    }
    if let Some(m) = common.max_boxes {
        cfg.max_boxes = m;
    }
    if !common.seed.is_empty() {
        cfg.seeds = common.seed.clone();
    }
    if let Some(m) = common.mode_range {
        cfg.mode_range = m;
    }
    if let Some(o) = &common.out {
        cfg.out = Some(o.display().to_string());
    }
    cfg.allow_n1 |= common.allow_n1;
    if cfg.n == 0 || cfg.r_vec.len() != cfg.n || cfg.r_vec.contains(&0) {
        return Err(Error::Config(format!("r must list {} positive ranks, got {:?}", cfg.n, cfg.r_vec)));
    }
    if cfg.n == 1 && !cfg.allow_n1 {
        return Err(Error::Config("n = 1 is experimental; pass --allow-n1".into()));
    }
    if cfg.seeds.is_empty() {
        return Err(Error::Config("at least one seed is required".into()));
    }
    if cfg.mode_range < 0 {
        return Err(Error::Config("mode range must be nonnegative".into()));
    }
    let mut params = BTreeMap::new();
    let name = match command {
        Command::FixedPoints => "fixed-points",
        Command::Op { kind, i, j, k } => {
            params.insert("kind".into(), kind.clone());
            params.insert("i".into(), i.to_string());
            if let Some(j) = j {
                params.insert("j".into(), j.to_string());
            }
            params.insert("k".into(), k.to_string());
            "op"
        }
        Command::W { i, j, k } => {
            params.insert("i".into(), i.to_string());
            params.insert("j".into(), j.to_string());
            params.insert("k".into(), k.to_string());
            "w"
        }
        Command::Verify { mutate, skip_theorem, skip_relations } => {
            params.insert("mutate".into(), mutate.to_string());
            params.insert("skip_theorem".into(), skip_theorem.to_string());
            params.insert("skip_relations".into(), skip_relations.to_string());
            "verify"
        }
        Command::ShuffleCheck { triples, points } => {
            params.insert("triples".into(), triples.to_string());
            params.insert("points".into(), points.to_string());
            "shuffle-check"
        }
    };
    cfg.command = name.into();
    cfg.params = params;
    Ok(cfg)
}

fn model_for(cfg: &RunConfig, seed: u64) -> Result<Model, Error> {
    Ok(Model::new(random_specialization(seed, cfg.n, &cfg.r_vec, cfg.max_boxes)?, ZetaReading::Literal))
}

fn degree_json(d: &DegreeVector) -> Value {
    json!(d.0)
}

/// Matrix JSON: blocks keyed by source degree, entries sorted by (row, col).
pub fn operator_json(w: &Window, op: &GradedOperator) -> Value {
    type Block = Vec<(String, String, String)>;
    let mut blocks: BTreeMap<(DegreeVector, DegreeVector), Block> = BTreeMap::new();
    for (&(col, row), v) in &op.entries {
        blocks
            .entry((w.degrees[col].clone(), w.degrees[row].clone()))
            .or_default()
            .push((w.states[row].id(), w.states[col].id(), fmt_q(v)));
    }
    let blocks: Vec<Value> = blocks
        .into_iter()
        .map(|((src, tgt), mut entries)| {
            entries.sort();
            json!({
                "source_degree": degree_json(&src),
                "target_degree": degree_json(&tgt),
                "entries": entries
                    .into_iter()
                    .map(|(r, c, v)| json!({"row_id": r, "col_id": c, "value": v}))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "shift": op.shift,
        "vertical": op.vertical,
        "dropped_outside_window": op.dropped,
        "nonzero_entries": op.entries.len(),
        "blocks": blocks,
    })
}

fn cmd_fixed_points(cfg: &RunConfig) -> Result<Value, Error> {
    let model = model_for(cfg, cfg.seeds[0])?;
    let degrees: Vec<Value> = fixed_points_by_degree(&model, cfg.max_boxes)
        .into_iter()
        .map(|(d, points)| {
            json!({
                "degree": degree_json(&d),
                "count": points.len(),
                "fixed_points": points.iter().map(|p| json!({
                    "id": p.id(),
                    "boxes": p.cells().iter().map(|c| json!({
                        "a": c.a, "x": c.x, "y": c.y,
                        "color": c.color(&model),
                        "weight": fmt_q(&c.weight(&model)),
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({ "specialization": model.spec, "degrees": degrees }))
}

fn cmd_op(cfg: &RunConfig, kind: &str, i: i64, j: Option<i64>, k: i64) -> Result<Value, Error> {
    let model = model_for(cfg, cfg.seeds[0])?;
    let action = Action::new(Window::new(model, cfg.max_boxes));
    let need_j = || j.ok_or_else(|| Error::Config(format!("--j is required for kind {}", kind)));
    let interval = |j: i64| {
        if j < i {
            Err(Error::Config(format!("interval [{};{}) is reversed", i, j)))
        } else {
            Ok(j)
        }
    };
    let op = match kind {
        "e" => action.generator_extended(GeneratorKind::E, i, k)?,
        "f" => action.generator_extended(GeneratorKind::F, i, k)?,
        "psi+" | "psi-" => {
            if k < 0 {
                return Err(Error::Config("psi modes are indexed by k >= 0".into()));
            }
            let g = if kind == "psi+" { GeneratorKind::PsiPlus } else { GeneratorKind::PsiMinus };
            action.generator_extended(g, i, k)?
        }
        "e-fine" => action.e_interval_k(i, interval(need_j()?)?, k)?,
        "f-fine" => action.f_interval_k(i, interval(need_j()?)?, k)?,
        "e-slope" | "f-slope" => {
            let j = interval(need_j()?)?;
            if j == i {
                return Err(Error::Config("slope operators need a nonempty interval".into()));
            }
            let m = LaurentPolynomial::slope(i, j, k);
            if kind == "e-slope" {
                action.e_fine(i, j, &m)?
            } else {
                action.f_fine(i, j, &m)?
            }
        }
        other => return Err(Error::Config(format!("unknown operator kind {:?}", other))),
    };
    Ok(json!({ "specialization": action.model().spec, "operator": operator_json(&action.window, &op) }))
}

fn cmd_w(cfg: &RunConfig, i: i64, j: i64, k: i64) -> Result<Value, Error> {
    let model = model_for(cfg, cfg.seeds[0])?;
    let rj = model.r_at(j);
    let action = Action::new(Window::new(model, cfg.max_boxes));
    let op = build_w(&action, WSpec { i, j, k })?;
    let witness = op.entries.iter().next().map(|(&(col, row), v)| {
        json!({"row_id": action.window.states[row].id(), "col_id": action.window.states[col].id(), "value": fmt_q(v)})
    });
    Ok(json!({
        "specialization": action.model().spec,
        "theorem_applies": k > rj,
        "zero": op.is_zero(),
        "witness": witness,
        "operator": operator_json(&action.window, &op),
    }))
}

fn suite_config(cfg: &RunConfig, mutate: bool, skip_theorem: bool, skip_relations: bool) -> SuiteConfig {
    let mut s = SuiteConfig::new(cfg.n, cfg.r_vec.clone());
    s.max_boxes = cfg.max_boxes;
    s.seeds = cfg.seeds.clone();
    s.mode_range = cfg.mode_range;
    s.period_window = cfg.max_boxes.min(3);
    s.mutate = mutate;
    s.theorem = !skip_theorem;
    s.relations = !skip_relations;
    s
}

/// Runs a parsed command, returning the JSON payload and the exit code.
pub fn execute(cfg: &RunConfig, command: &Command) -> Result<(Value, i32), Error> {
    Ok(match command {
        Command::FixedPoints => (cmd_fixed_points(cfg)?, 0),
        Command::Op { kind, i, j, k } => (cmd_op(cfg, kind, *i, *j, *k)?, 0),
        Command::W { i, j, k } => (cmd_w(cfg, *i, *j, *k)?, 0),
        Command::Verify { mutate, skip_theorem, skip_relations } => {
            let suite = suite_config(cfg, *mutate, *skip_theorem, *skip_relations);
            if cfg.n == 1 {
                let exp = run_n1_experiment(&suite)?;
                (json!({ "n1_experiment": exp }), 0)
            } else {
                let report = run_suite(&suite)?;
                let code = report.exit_code();
                (json!({ "report": report }), code)
            }
        }
        Command::ShuffleCheck { triples, points } => {
            let mut reports = vec![];
            for &seed in &cfg.seeds {
                let model = Arc::new(model_for(cfg, seed)?);
                reports.push(run_shuffle_checks(model, seed, *triples, *points)?);
            }
            let pass = reports.iter().all(|r| r.pass);
            (json!({ "pass": pass, "seeds": reports }), if pass { 0 } else { 1 })
        }
    })
}

/// Wraps a payload with the format version and the run config.
pub fn document(cfg: &RunConfig, result: Value) -> String {
    let doc = json!({ "format_version": FORMAT_VERSION, "config": cfg, "result": result });
    let mut s = serde_json::to_string_pretty(&doc).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Entry point shared by the binary and the tests; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match resolve(&cli.common, &cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return 2;
        }
    };
    let (value, code) = match execute(&cfg, &cli.command) {
        Ok(x) => x,
        Err(Error::Config(m)) => {
            eprintln!("error: {}", m);
            return 2;
        }
        Err(e) => {
            eprintln!("internal error: {}", e);
            return 3;
        }
    };
    let text = document(&cfg, value);
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {}", path, e);
                return 3;
            }
        }
        None => print!("{}", text),
    }
    code
}
