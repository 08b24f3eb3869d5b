//! Batch experiments over graph corpora: solve the game parameters, check
//! every known bound, persist results, and report on the conjectured gap
//! gcol_total = gcol_edge + 2.

use crate::activation::{activation_invariant, ActivationAlice};
use crate::canon::canonical_key;
use crate::coloring::game_chromatic_budgeted;
use crate::error::{Error, Result};
use crate::families;
use crate::game::{BudgetMeter, Player, Solved};
use crate::graph::{total_graph, ConflictMode, SimpleGraph};
use crate::graph6::{read_graph6_lines, to_graph6};
use crate::marking::gcol_budgeted;
use crate::orientation::min_max_outdegree_orientation;
use crate::play::{exhaustive_verify_marking, VerifyOutcome};
use serde_json::{json, Map, Value};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// A solved (or explicitly not-solved) numeric cell. A budget cutoff is
/// recorded as skipped, never as a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stat {
    Value(u32),
    Skipped,
}

impl Stat {
    pub fn value(self) -> Option<u32> {
        match self {
            Stat::Value(v) => Some(v),
            Stat::Skipped => None,
        }
    }

    fn from_solved(s: Solved<u32>) -> Stat {
        match s {
            Solved::Done(v) => Stat::Value(v),
            Solved::BudgetExceeded => Stat::Skipped,
        }
    }

    fn to_cell(this: Option<Stat>) -> String {
        match this {
            None => String::new(),
            Some(Stat::Skipped) => "skipped".into(),
            Some(Stat::Value(v)) => v.to_string(),
        }
    }

    fn from_cell(cell: &str) -> Result<Option<Stat>> {
        match cell {
            "" => Ok(None),
            "skipped" => Ok(Some(Stat::Skipped)),
            other => other
                .parse()
                .map(|v| Some(Stat::Value(v)))
                .map_err(|_| Error::CacheSchema(format!("bad numeric cell `{other}`"))),
        }
    }

    fn to_json(this: Option<Stat>) -> Value {
        match this {
            None => Value::Null,
            Some(Stat::Skipped) => Value::String("skipped".into()),
            Some(Stat::Value(v)) => json!(v),
        }
    }

    fn from_json(v: &Value) -> Result<Option<Stat>> {
        match v {
            Value::Null => Ok(None),
            Value::String(s) if s == "skipped" => Ok(Some(Stat::Skipped)),
            Value::Number(n) => n
                .as_u64()
                .map(|v| Some(Stat::Value(v as u32)))
                .ok_or_else(|| Error::CacheSchema("negative numeric cell".into())),
            other => Err(Error::CacheSchema(format!("bad cell {other}"))),
        }
    }
}

/// One corpus graph's results. Derived bounds are always present; the game
/// parameters are present when their task ran and was not cut off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultRow {
    pub key: String,
    pub graph6: String,
    pub n: u32,
    pub m: u32,
    pub delta: u32,
    pub dplus: u32,
    pub gcol_edge: Option<Stat>,
    pub gcol_total: Option<Stat>,
    pub chi_g_total: Option<Stat>,
    /// Counting bound 2*delta + 1 on the total game chromatic number.
    pub bound_trivial: u32,
    /// Activation bound delta + 3*dplus + 1 on the total game coloring number.
    pub bound_activation: u32,
    /// gcol_total - gcol_edge, when both are solved.
    pub conj_diff: Option<i64>,
}

pub const CSV_HEADER: &str =
    "key,graph6,n,m,delta,dplus,gcol_edge,gcol_total,chi_g_total,bound_trivial,bound_activation,conj_diff";

impl ResultRow {
    fn derive_conj_diff(&mut self) {
        self.conj_diff = match (self.gcol_edge, self.gcol_total) {
            (Some(Stat::Value(e)), Some(Stat::Value(t))) => Some(t as i64 - e as i64),
            _ => None,
        };
    }

    /// The cross-parameter inequalities every solved row must satisfy; a
    /// violation means a solver or a proved bound is broken and the run
    /// halts.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let chi = self.chi_g_total.and_then(Stat::value);
        let gt = self.gcol_total.and_then(Stat::value);
        let ge = self.gcol_edge.and_then(Stat::value);
        if let (Some(chi), Some(gt)) = (chi, gt) {
            if chi > gt {
                return Err(format!("chi_g_total {chi} > gcol_total {gt}"));
            }
        }
        if let Some(gt) = gt {
            if gt > self.bound_activation {
                return Err(format!(
                    "gcol_total {gt} > activation bound {}",
                    self.bound_activation
                ));
            }
        }
        if let Some(chi) = chi {
            if chi > self.bound_trivial {
                return Err(format!(
                    "chi_g_total {chi} > trivial bound {}",
                    self.bound_trivial
                ));
            }
        }
        if let (Some(ge), Some(gt)) = (ge, gt) {
            if ge > gt {
                return Err(format!("gcol_edge {ge} > gcol_total {gt}"));
            }
        }
        Ok(())
    }

    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.key,
            self.graph6,
            self.n,
            self.m,
            self.delta,
            self.dplus,
            Stat::to_cell(self.gcol_edge),
            Stat::to_cell(self.gcol_total),
            Stat::to_cell(self.chi_g_total),
            self.bound_trivial,
            self.bound_activation,
            self.conj_diff.map(|d| d.to_string()).unwrap_or_default(),
        )
    }

    pub fn from_csv_line(line: &str) -> Result<ResultRow> {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 12 {
            return Err(Error::CacheSchema(format!(
                "expected 12 columns, found {}",
                cells.len()
            )));
        }
        let int = |s: &str| -> Result<u32> {
            s.parse()
                .map_err(|_| Error::CacheSchema(format!("bad integer cell `{s}`")))
        };
        Ok(ResultRow {
            key: cells[0].to_string(),
            graph6: cells[1].to_string(),
            n: int(cells[2])?,
            m: int(cells[3])?,
            delta: int(cells[4])?,
            dplus: int(cells[5])?,
            gcol_edge: Stat::from_cell(cells[6])?,
            gcol_total: Stat::from_cell(cells[7])?,
            chi_g_total: Stat::from_cell(cells[8])?,
            bound_trivial: int(cells[9])?,
            bound_activation: int(cells[10])?,
            conj_diff: if cells[11].is_empty() {
                None
            } else {
                Some(cells[11].parse().map_err(|_| {
                    Error::CacheSchema(format!("bad diff cell `{}`", cells[11]))
                })?)
            },
        })
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("key".into(), json!(self.key));
        map.insert("graph6".into(), json!(self.graph6));
        map.insert("n".into(), json!(self.n));
        map.insert("m".into(), json!(self.m));
        map.insert("delta".into(), json!(self.delta));
        map.insert("dplus".into(), json!(self.dplus));
        map.insert("gcol_edge".into(), Stat::to_json(self.gcol_edge));
        map.insert("gcol_total".into(), Stat::to_json(self.gcol_total));
        map.insert("chi_g_total".into(), Stat::to_json(self.chi_g_total));
        map.insert("bound_trivial".into(), json!(self.bound_trivial));
        map.insert("bound_activation".into(), json!(self.bound_activation));
        map.insert(
            "conj_diff".into(),
            self.conj_diff.map_or(Value::Null, |d| json!(d)),
        );
        Value::Object(map)
    }

    pub fn from_json(v: &Value) -> Result<ResultRow> {
        let bad = |msg: &str| Error::CacheSchema(msg.to_string());
        let obj = v.as_object().ok_or_else(|| bad("row is not an object"))?;
        let str_field = |k: &str| -> Result<String> {
            obj.get(k)
                .and_then(Value::as_str)
                .map(String::from)
                .ok_or_else(|| bad(&format!("missing string field {k}")))
        };
        let int_field = |k: &str| -> Result<u32> {
            obj.get(k)
                .and_then(Value::as_u64)
                .map(|v| v as u32)
                .ok_or_else(|| bad(&format!("missing integer field {k}")))
        };
        let stat_field = |k: &str| -> Result<Option<Stat>> {
            Stat::from_json(obj.get(k).unwrap_or(&Value::Null))
        };
        Ok(ResultRow {
            key: str_field("key")?,
            graph6: str_field("graph6")?,
            n: int_field("n")?,
            m: int_field("m")?,
            delta: int_field("delta")?,
            dplus: int_field("dplus")?,
            gcol_edge: stat_field("gcol_edge")?,
            gcol_total: stat_field("gcol_total")?,
            chi_g_total: stat_field("chi_g_total")?,
            bound_trivial: int_field("bound_trivial")?,
            bound_activation: int_field("bound_activation")?,
            conj_diff: match obj.get("conj_diff") {
                None | Some(Value::Null) => None,
                Some(v) => Some(v.as_i64().ok_or_else(|| bad("bad conj_diff"))?),
            },
        })
    }
}

pub fn write_rows_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

pub fn read_rows_csv(text: &str) -> Result<Vec<ResultRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        _ => return Err(Error::CacheSchema("missing or unknown CSV header".into())),
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(ResultRow::from_csv_line)
        .collect()
}

pub fn write_rows_json(rows: &[ResultRow]) -> String {
    let v = Value::Array(rows.iter().map(ResultRow::to_json).collect());
    let mut s = serde_json::to_string_pretty(&v).expect("rows serialize");
    s.push('\n');
    s
}

pub fn read_rows_json(text: &str) -> Result<Vec<ResultRow>> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::CacheSchema(format!("bad JSON: {e}")))?;
    v.as_array()
        .ok_or_else(|| Error::CacheSchema("expected a JSON array of rows".into()))?
        .iter()
        .map(ResultRow::from_json)
        .collect()
}

const CACHE_SCHEMA: &str = "ggc-results-v1";

/// Persists rows keyed by canonical graph key, so isomorphic duplicates hit.
pub fn cache_store(path: &Path, rows: &[ResultRow]) -> Result<()> {
    let mut map = Map::new();
    map.insert("schema".into(), json!(CACHE_SCHEMA));
    map.insert(
        "rows".into(),
        Value::Array(rows.iter().map(ResultRow::to_json).collect()),
    );
    let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("cache serializes");
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn cache_load(path: &Path) -> Result<Vec<ResultRow>> {
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::CacheSchema(format!("unreadable cache: {e}")))?;
    match v.get("schema").and_then(Value::as_str) {
        Some(CACHE_SCHEMA) => {}
        Some(other) => {
            return Err(Error::CacheSchema(format!(
                "cache schema `{other}` is not `{CACHE_SCHEMA}`"
            )))
        }
        None => return Err(Error::CacheSchema("cache has no schema field".into())),
    }
    v.get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::CacheSchema("cache has no rows array".into()))?
        .iter()
        .map(ResultRow::from_json)
        .collect()
}

/// What to solve for each corpus graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Task {
    GcolEdge,
    GcolTotal,
    ChiGTotal,
    Bounds,
    VerifyActivation,
}

impl Task {
    pub fn parse_list(spec: &str) -> Result<Vec<Task>> {
        let mut out = Vec::new();
        for item in spec.split(',') {
            match item.trim() {
                "gcol_edge" => out.push(Task::GcolEdge),
                "gcol_total" => out.push(Task::GcolTotal),
                "chi_g_total" => out.push(Task::ChiGTotal),
                "bounds" => out.push(Task::Bounds),
                "verify_activation" => out.push(Task::VerifyActivation),
                "all" => {
                    out.extend([
                        Task::GcolEdge,
                        Task::GcolTotal,
                        Task::ChiGTotal,
                        Task::Bounds,
                        Task::VerifyActivation,
                    ]);
                }
                other => {
                    return Err(Error::BadCorpusSpec {
                        spec: spec.into(),
                        msg: format!("unknown task `{other}`"),
                    })
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }
}

/// Where corpus graphs come from.
#[derive(Debug, Clone)]
pub enum CorpusSource {
    /// graph6 line file
    File(PathBuf),
    /// literal graph6 string
    Graph6(String),
    /// all non-isomorphic graphs on exactly n vertices, for n in lo..=hi
    Exhaustive { lo: u32, hi: u32, connected: bool },
    /// generator DSL string
    Generator(String),
}

/// A corpus: sources plus filters. Expansion is deterministic for a fixed
/// spec, and per-graph budgets live alongside because they shape which rows
/// get values.
#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub sources: Vec<CorpusSource>,
    pub connected_only: bool,
    pub cap: u32,
}

impl CorpusSpec {
    /// Parses the `;`-separated corpus DSL: `file:<path>`, `g6:<string>`,
    /// `exhaustive:<n>[-<hi>][:connected]`, or any generator DSL string.
    pub fn parse(spec: &str, cap: u32) -> Result<CorpusSpec> {
        let bad = |msg: String| Error::BadCorpusSpec {
            spec: spec.into(),
            msg,
        };
        let mut sources = Vec::new();
        for item in spec.split(';') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            if let Some(path) = item.strip_prefix("file:") {
                sources.push(CorpusSource::File(PathBuf::from(path)));
            } else if let Some(g6) = item.strip_prefix("g6:") {
                sources.push(CorpusSource::Graph6(g6.to_string()));
            } else if let Some(rest) = item.strip_prefix("exhaustive:") {
                let (range, connected) = match rest.strip_suffix(":connected") {
                    Some(r) => (r, true),
                    None => (rest, false),
                };
                let (lo, hi) = match range.split_once('-') {
                    Some((a, b)) => (
                        a.parse().map_err(|_| bad(format!("bad range `{range}`")))?,
                        b.parse().map_err(|_| bad(format!("bad range `{range}`")))?,
                    ),
                    None => {
                        let n = range
                            .parse()
                            .map_err(|_| bad(format!("bad order `{range}`")))?;
                        (n, n)
                    }
                };
                if lo == 0 || hi < lo || hi > 6 {
                    return Err(bad(format!(
                        "exhaustive range must satisfy 1 <= lo <= hi <= 6, got {lo}-{hi}"
                    )));
                }
                sources.push(CorpusSource::Exhaustive { lo, hi, connected });
            } else {
                sources.push(CorpusSource::Generator(item.to_string()));
            }
        }
        if sources.is_empty() {
            return Err(bad("empty corpus".into()));
        }
        Ok(CorpusSpec {
            sources,
            connected_only: false,
            cap,
        })
    }

    /// Materializes the corpus in source order. Graphs over the object cap
    /// are dropped with a per-graph warning, not a run failure.
    pub fn expand(&self) -> Result<(Vec<SimpleGraph>, Vec<String>)> {
        let mut graphs = Vec::new();
        let mut warnings = Vec::new();
        for source in &self.sources {
            match source {
                CorpusSource::File(path) => {
                    let text = std::fs::read_to_string(path)?;
                    for (idx, line) in text.lines().enumerate() {
                        let line = line.trim();
                        if line.is_empty() || line.starts_with('#') {
                            continue;
                        }
                        match crate::graph6::parse_graph6_with_cap(line, self.cap) {
                            Ok(g) => graphs.push(g),
                            Err(Error::CapExceeded { objects, cap }) => warnings.push(format!(
                                "{}:{}: skipped graph with {objects} objects (cap {cap})",
                                path.display(),
                                idx + 1
                            )),
                            Err(e) => return Err(e),
                        }
                    }
                }
                CorpusSource::Graph6(s) => {
                    graphs.extend(read_graph6_lines(s, self.cap)?);
                }
                CorpusSource::Exhaustive { lo, hi, connected } => {
                    for n in *lo..=*hi {
                        let batch = if *connected {
                            families::all_connected_graphs(n)?
                        } else {
                            families::all_graphs(n)?
                        };
                        for g in batch {
                            if g.objects() > self.cap {
                                warnings.push(format!(
                                    "exhaustive:{n}: skipped graph with {} objects (cap {})",
                                    g.objects(),
                                    self.cap
                                ));
                            } else {
                                graphs.push(g);
                            }
                        }
                    }
                }
                CorpusSource::Generator(spec) => {
                    graphs.push(families::generate(spec, self.cap)?);
                }
            }
        }
        if self.connected_only {
            graphs.retain(|g| g.is_connected());
        }
        Ok((graphs, warnings))
    }
}

/// Per-run solver limits and parallelism.
#[derive(Debug, Clone, Default)]
pub struct LabConfig {
    pub tasks: Vec<Task>,
    pub budget_nodes: Option<u64>,
    pub budget_time: Option<Duration>,
    pub jobs: usize,
    pub cache_path: Option<PathBuf>,
}

impl LabConfig {
    fn meter(&self) -> BudgetMeter {
        BudgetMeter::with_limits(self.budget_nodes, self.budget_time.map(|d| Instant::now() + d))
    }
}

/// Outcome of a corpus run: rows in corpus order plus bookkeeping.
#[derive(Debug)]
pub struct LabReport {
    pub rows: Vec<ResultRow>,
    pub warnings: Vec<String>,
    pub skipped_cells: usize,
    pub cache_hits: usize,
    pub duplicates_dropped: usize,
}

fn solve_row(
    g: &SimpleGraph,
    key: String,
    tasks: &[Task],
    config: &LabConfig,
    cached: Option<&ResultRow>,
) -> Result<(ResultRow, usize)> {
    let delta = g.max_degree();
    let orientation = min_max_outdegree_orientation(g);
    let dplus = orientation.max_outdegree();
    let mut row = ResultRow {
        key,
        graph6: to_graph6(g),
        n: g.n(),
        m: g.m(),
        delta,
        dplus,
        gcol_edge: None,
        gcol_total: None,
        chi_g_total: None,
        bound_trivial: 2 * delta + 1,
        bound_activation: delta + 3 * dplus + 1,
        conj_diff: None,
    };
    let mut skipped = 0usize;
    let cached_value = |field: fn(&ResultRow) -> Option<Stat>| -> Option<Stat> {
        cached.and_then(field).filter(|s| matches!(s, Stat::Value(_)))
    };
    for task in tasks {
        match task {
            Task::Bounds => {} // always derived above
            Task::GcolEdge => {
                row.gcol_edge = match cached_value(|r| r.gcol_edge) {
                    Some(v) => Some(v),
                    None => Some(Stat::from_solved(gcol_budgeted(
                        g,
                        ConflictMode::Line,
                        &config.meter(),
                    )?)),
                };
                if row.gcol_edge == Some(Stat::Skipped) {
                    skipped += 1;
                }
            }
            Task::GcolTotal => {
                row.gcol_total = match cached_value(|r| r.gcol_total) {
                    Some(v) => Some(v),
                    None => Some(Stat::from_solved(gcol_budgeted(
                        g,
                        ConflictMode::Total,
                        &config.meter(),
                    )?)),
                };
                if row.gcol_total == Some(Stat::Skipped) {
                    skipped += 1;
                }
            }
            Task::ChiGTotal => {
                row.chi_g_total = match cached_value(|r| r.chi_g_total) {
                    Some(v) => Some(v),
                    None => {
                        let solved =
                            match game_chromatic_budgeted(g, ConflictMode::Total, &config.meter())? {
                                Solved::Done(report) => Solved::Done(report.value),
                                Solved::BudgetExceeded => Solved::BudgetExceeded,
                            };
                        Some(Stat::from_solved(solved))
                    }
                };
                if row.chi_g_total == Some(Stat::Skipped) {
                    skipped += 1;
                }
            }
            Task::VerifyActivation => {
                let conflict = total_graph(g);
                let parameter = row.bound_activation;
                let alice = ActivationAlice::new(orientation.clone());
                let invariant = activation_invariant(delta, dplus);
                let meter = config.meter();
                match exhaustive_verify_marking(
                    &conflict,
                    parameter,
                    Player::Alice,
                    &alice,
                    &meter,
                    Some(&invariant),
                ) {
                    VerifyOutcome::Ok { .. } => {}
                    VerifyOutcome::BudgetExceeded { .. } => skipped += 1,
                    VerifyOutcome::Counterexample(trace) => {
                        return Err(Error::InternalInconsistency(format!(
                            "activation strategy lost on {} at parameter {parameter}:\n{}",
                            row.graph6,
                            trace.to_text()
                        )))
                    }
                    VerifyOutcome::InvariantBreach { detail, trace } => {
                        return Err(Error::InternalInconsistency(format!(
                            "activation invariant broke on {} at parameter {parameter}: {detail}\n{}",
                            row.graph6,
                            trace.to_text()
                        )))
                    }
                }
            }
        }
    }
    row.derive_conj_diff();
    if let Err(detail) = row.check_invariants() {
        // A broken cross-parameter inequality would contradict a proved
        // bound; attach the full row so the offending solve is replayable.
        return Err(Error::InternalInconsistency(format!(
            "result invariant violated on {}: {detail}; row = {row:?}",
            row.graph6
        )));
    }
    Ok((row, skipped))
}

/// Solves the requested tasks for every non-isomorphic corpus graph.
/// Workers own private solver state; the cache is written once at the end
/// by the caller thread.
pub fn run_corpus(spec: &CorpusSpec, config: &LabConfig) -> Result<LabReport> {
    let (graphs, warnings) = spec.expand()?;
    // Deduplicate by canonical key, keeping first occurrences in order.
    let mut seen = HashSet::new();
    let mut unique: Vec<(String, SimpleGraph)> = Vec::new();
    let mut duplicates_dropped = 0usize;
    for g in graphs {
        let key = canonical_key(&g);
        if seen.insert(key.clone()) {
            unique.push((key, g));
        } else {
            duplicates_dropped += 1;
        }
    }

    let cache: HashMap<String, ResultRow> = match &config.cache_path {
        Some(path) if path.exists() => cache_load(path)?
            .into_iter()
            .map(|r| (r.key.clone(), r))
            .collect(),
        _ => HashMap::new(),
    };

    let cache_hits = unique
        .iter()
        .filter(|(key, _)| cache.contains_key(key))
        .count();

    type RowSlot = Mutex<Option<Result<(ResultRow, usize)>>>;
    let jobs = config.jobs.max(1).min(unique.len().max(1));
    let results: Vec<RowSlot> = (0..unique.len()).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);

    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= unique.len() {
                    break;
                }
                let (key, g) = &unique[idx];
                let outcome = solve_row(g, key.clone(), &config.tasks, config, cache.get(key));
                *results[idx].lock().expect("result slot") = Some(outcome);
            });
        }
    });

    let mut rows = Vec::with_capacity(unique.len());
    let mut skipped_cells = 0usize;
    for slot in results {
        let (row, skipped) = slot
            .into_inner()
            .expect("result slot")
            .expect("every slot filled")?;
        skipped_cells += skipped;
        rows.push(row);
    }

    if let Some(path) = &config.cache_path {
        // Merge newly solved rows over the old cache; values win over gaps.
        let mut merged: BTreeMap<String, ResultRow> =
            cache.into_iter().collect();
        for row in &rows {
            let entry = merged.entry(row.key.clone()).or_insert_with(|| row.clone());
            for (new, old) in [
                (row.gcol_edge, &mut entry.gcol_edge),
                (row.gcol_total, &mut entry.gcol_total),
                (row.chi_g_total, &mut entry.chi_g_total),
            ] {
                if let Some(Stat::Value(_)) = new {
                    *old = new;
                }
            }
            entry.derive_conj_diff();
        }
        let merged_rows: Vec<ResultRow> = merged.into_values().collect();
        cache_store(path, &merged_rows)?;
    }

    Ok(LabReport {
        rows,
        warnings,
        skipped_cells,
        cache_hits,
        duplicates_dropped,
    })
}

/// The conjectured relation: gcol_total exceeds gcol_edge by exactly 2.
/// The report only ever describes the data; a deviation is a finding to
/// look at, not a failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub evaluated: usize,
    pub histogram: BTreeMap<i64, usize>,
    /// (graph6, diff) rows with edges and diff != 2.
    pub counterexamples: Vec<(String, i64)>,
    /// Edgeless rows: the edge marking game is vacuous there, so the diff
    /// carries no evidence either way.
    pub degenerate: Vec<String>,
    /// graph6 of rows missing one of the two values.
    pub excluded: Vec<String>,
}

pub fn check_conjecture(rows: &[ResultRow]) -> ConjectureReport {
    let mut report = ConjectureReport {
        evaluated: 0,
        histogram: BTreeMap::new(),
        counterexamples: Vec::new(),
        degenerate: Vec::new(),
        excluded: Vec::new(),
    };
    for row in rows {
        let (edge, total) = match (
            row.gcol_edge.and_then(Stat::value),
            row.gcol_total.and_then(Stat::value),
        ) {
            (Some(e), Some(t)) => (e, t),
            _ => {
                report.excluded.push(row.graph6.clone());
                continue;
            }
        };
        let diff = total as i64 - edge as i64;
        report.evaluated += 1;
        *report.histogram.entry(diff).or_insert(0) += 1;
        if row.m == 0 {
            report.degenerate.push(row.graph6.clone());
        } else if diff != 2 {
            report.counterexamples.push((row.graph6.clone(), diff));
        }
    }
    report
}

impl std::fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "conjectured gap gcol_total - gcol_edge over {} rows:",
            self.evaluated
        )?;
        for (diff, count) in &self.histogram {
            writeln!(f, "  diff={diff}: {count} graph(s)")?;
        }
        if !self.degenerate.is_empty() {
            writeln!(
                f,
                "degenerate (edgeless, edge game vacuous): {}",
                self.degenerate.join(" ")
            )?;
        }
        if self.counterexamples.is_empty() {
            writeln!(f, "no counterexample")?;
        } else {
            for (g6, diff) in &self.counterexamples {
                writeln!(f, "counterexample: {g6} diff={diff}")?;
            }
        }
        if !self.excluded.is_empty() {
            writeln!(f, "excluded (missing values): {}", self.excluded.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_spec() -> CorpusSpec {
        CorpusSpec::parse("g6:Bw", 64).unwrap()
    }

    fn all_tasks() -> Vec<Task> {
        Task::parse_list("all").unwrap()
    }

    #[test]
    fn single_triangle_row() {
        let report = run_corpus(
            &k3_spec(),
            &LabConfig {
                tasks: all_tasks(),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(report.rows.len(), 1);
        let row = &report.rows[0];
        assert_eq!(row.graph6, "Bw");
        assert_eq!((row.n, row.m, row.delta, row.dplus), (3, 3, 2, 1));
        assert_eq!(row.gcol_edge, Some(Stat::Value(3)));
        assert_eq!(row.gcol_total, Some(Stat::Value(5)));
        assert_eq!(row.chi_g_total, Some(Stat::Value(5)));
        assert_eq!(row.bound_trivial, 5);
        assert_eq!(row.bound_activation, 6);
        assert_eq!(row.conj_diff, Some(2));
        assert_eq!(report.skipped_cells, 0);
    }

    #[test]
    fn exhaustive_four_vertex_corpus_has_eleven_rows() {
        let spec = CorpusSpec::parse("exhaustive:4", 64).unwrap();
        let report = run_corpus(
            &spec,
            &LabConfig {
                tasks: Task::parse_list("bounds").unwrap(),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(report.rows.len(), 11);
    }

    #[test]
    fn empty_corpus_is_an_error_and_blank_expansion_is_empty() {
        assert!(CorpusSpec::parse("", 64).is_err());
        // a file-less zero-graph corpus: a comment-only g6 block
        let spec = CorpusSpec::parse("g6:# nothing", 64).unwrap();
        let report = run_corpus(
            &spec,
            &LabConfig {
                tasks: all_tasks(),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(report.rows.is_empty());
    }

    #[test]
    fn duplicate_graphs_collapse_to_one_row() {
        // Bw and a relabeled triangle via generator DSL
        let spec = CorpusSpec::parse("g6:Bw;complete:3", 64).unwrap();
        let report = run_corpus(
            &spec,
            &LabConfig {
                tasks: Task::parse_list("bounds").unwrap(),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(report.rows.len(), 1);
    }

    #[test]
    fn csv_and_json_roundtrip() {
        let report = run_corpus(
            &k3_spec(),
            &LabConfig {
                tasks: all_tasks(),
                ..Default::default()
            },
        )
        .unwrap();
        let csv = write_rows_csv(&report.rows);
        assert_eq!(read_rows_csv(&csv).unwrap(), report.rows);
        let json = write_rows_json(&report.rows);
        assert_eq!(read_rows_json(&json).unwrap(), report.rows);
    }

    #[test]
    fn cache_roundtrip_and_isomorphic_hit() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("cache.json");
        let config = LabConfig {
            tasks: all_tasks(),
            cache_path: Some(cache.clone()),
            ..Default::default()
        };
        let first = run_corpus(&k3_spec(), &config).unwrap();
        assert_eq!(first.cache_hits, 0);
        let stored = cache_load(&cache).unwrap();
        assert_eq!(stored, first.rows);
        // a relabeling of K3 parses to the same canonical key
        let spec = CorpusSpec::parse("complete:3", 64).unwrap();
        let second = run_corpus(&spec, &config).unwrap();
        assert_eq!(second.cache_hits, 1);
        assert_eq!(second.rows[0].gcol_total, Some(Stat::Value(5)));
    }

    #[test]
    fn corrupted_cache_refuses_cleanly() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("cache.json");
        std::fs::write(&cache, "{not json").unwrap();
        assert!(matches!(cache_load(&cache), Err(Error::CacheSchema(_))));
        std::fs::write(&cache, "{\"schema\":\"other-v9\",\"rows\":[]}").unwrap();
        assert!(matches!(cache_load(&cache), Err(Error::CacheSchema(_))));
    }

    #[test]
    fn conjecture_report_examples() {
        let mut config = LabConfig {
            tasks: Task::parse_list("gcol_edge,gcol_total").unwrap(),
            ..Default::default()
        };
        config.jobs = 2;
        let spec = CorpusSpec::parse("g6:Bw;complete:2", 64).unwrap();
        let report = run_corpus(&spec, &config).unwrap();
        let conj = check_conjecture(&report.rows);
        assert_eq!(conj.evaluated, 2);
        assert_eq!(conj.histogram.get(&2), Some(&2));
        assert!(conj.counterexamples.is_empty());
        assert!(conj.degenerate.is_empty());
        // vacuous report
        let empty = check_conjecture(&[]);
        assert_eq!(empty.evaluated, 0);
        assert!(empty.histogram.is_empty());
    }

    #[test]
    fn rows_missing_fields_are_excluded_and_listed() {
        let spec = CorpusSpec::parse("g6:Bw", 64).unwrap();
        let report = run_corpus(
            &spec,
            &LabConfig {
                tasks: Task::parse_list("gcol_total").unwrap(),
                ..Default::default()
            },
        )
        .unwrap();
        let conj = check_conjecture(&report.rows);
        assert_eq!(conj.evaluated, 0);
        assert_eq!(conj.excluded, vec!["Bw".to_string()]);
    }

    #[test]
    fn budget_skips_are_marked_not_fabricated() {
        let config = LabConfig {
            tasks: Task::parse_list("gcol_total").unwrap(),
            budget_nodes: Some(1),
            ..Default::default()
        };
        let report = run_corpus(&k3_spec(), &config).unwrap();
        assert_eq!(report.rows[0].gcol_total, Some(Stat::Skipped));
        assert_eq!(report.rows[0].conj_diff, None);
        assert_eq!(report.skipped_cells, 1);
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let spec = CorpusSpec::parse("exhaustive:3", 64).unwrap();
        let config = LabConfig {
            tasks: all_tasks(),
            jobs: 3,
            ..Default::default()
        };
        let a = write_rows_csv(&run_corpus(&spec, &config).unwrap().rows);
        let b = write_rows_csv(&run_corpus(&spec, &config).unwrap().rows);
        assert_eq!(a, b);
    }
}
