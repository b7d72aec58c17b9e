//! Depth-first enumeration of additive cyclic codes with bounded `e`.
//!
//! The tree has one level per slot (self-paired coset or `±` pair). A
//! slot's choices carry their `e`-cost, and costs add up over slots, so a
//! branch is cut as soon as its running cost exceeds `e_max`. Leaves are
//! visited in lexicographic order of choice indices, evaluated in parallel
//! batches, and emitted in that order.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{rngs::StdRng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::additive_code::{polys_below_degree, AdditiveCyclicCode, CodeDescriptor, ComponentForm};
use crate::cyclotomic::CosetStructure;
use crate::distance::{within_budget, DistanceOptions, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::quantum::{nearly_self_orthogonal_params_reaching, stabilizer_params_reaching, QuantumParams};
use crate::symplectic::{classify_orthogonality, dual, pair_bucket, self_paired_bucket, slots, OrthogonalityReport, Slot};

const MAX_SLOT_CHOICES: usize = 1_000_000;
const BATCH: usize = 256;

fn default_e_max() -> usize {
    4
}

fn default_budget() -> u32 {
    DEFAULT_BUDGET
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub p: u32,
    pub n: usize,
    #[serde(default = "default_e_max")]
    pub e_max: usize,
    /// Inclusive bounds on `dim C`.
    #[serde(default)]
    pub dim_range: Option<[usize; 2]>,
    #[serde(default = "default_budget")]
    pub distance_budget: u32,
    /// Minimum `d_low` of an emitted record.
    #[serde(default)]
    pub d_target: Option<usize>,
    /// Wall-clock cap in seconds.
    #[serde(default)]
    pub time_budget: Option<f64>,
    /// Shuffles each slot's choice order.
    #[serde(default)]
    pub seed: Option<u64>,
    /// Emit every leaf, ignoring `d_target`.
    #[serde(default)]
    pub emit_all: bool,
    /// Compute quantum parameters for each leaf.
    #[serde(default = "default_true")]
    pub evaluate_quantum: bool,
    #[serde(default)]
    pub threads: Option<usize>,
}

impl SearchConfig {
    pub fn new(n: usize, p: u32) -> Self {
        Self {
            p,
            n,
            e_max: default_e_max(),
            dim_range: None,
            distance_budget: DEFAULT_BUDGET,
            d_target: None,
            time_budget: None,
            seed: None,
            emit_all: false,
            evaluate_quantum: true,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.e_max.is_multiple_of(2) {
            return Err(Error::InvalidConfig(format!("e_max = {} must be even", self.e_max)));
        }
        if let Some([lo, hi]) = self.dim_range {
            if lo > hi || hi > 2 * self.n {
                return Err(Error::InvalidConfig(format!(
                    "dim_range [{lo}, {hi}] must satisfy lo <= hi <= 2n = {}",
                    2 * self.n
                )));
            }
        }
        if self.time_budget.is_some_and(|t| t.is_nan() || t < 0.0) {
            return Err(Error::InvalidConfig("time_budget must be non-negative".into()));
        }
        Ok(())
    }

    /// Parses JSON, or TOML when `toml` is set.
    pub fn parse(text: &str, toml: bool) -> Result<Self> {
        let cfg: SearchConfig = if toml {
            ::toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?
        } else {
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
        let toml = path.extension().is_some_and(|x| x == "toml");
        Self::parse(&text, toml).map_err(|e| match e {
            Error::InvalidConfig(msg) => Error::InvalidConfig(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    fn distance_options(&self) -> DistanceOptions {
        // leaves are already evaluated in parallel
        DistanceOptions { budget: self.distance_budget, threads: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchRecord {
    pub descriptor: CodeDescriptor,
    pub orthogonality: OrthogonalityReport,
    pub quantum: Option<QuantumParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantum_error: Option<String>,
    pub elapsed_ms: f64,
}

/// Choice indices per slot of the last fully processed leaf.
pub type Cursor = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub complete: bool,
    pub cursor: Option<Cursor>,
    pub leaves: u64,
    pub emitted: u64,
}

#[derive(Clone, Debug)]
struct Choice {
    forms: Vec<ComponentForm>,
    cost: usize,
    dim: usize,
}

struct Tree {
    slots: Vec<Slot>,
    choices: Vec<Vec<Choice>>,
    /// Largest dimension reachable from slot `i` onwards.
    max_rest: Vec<usize>,
}

fn coset_forms(cs: &CosetStructure, i: usize) -> Result<Vec<ComponentForm>> {
    let m = cs.coset_size(i);
    let count = (cs.p() as u128).checked_pow(m as u32).map_or(u128::MAX, |c| c + 3);
    if count > MAX_SLOT_CHOICES as u128 {
        return Err(Error::TooManyCodes { count, limit: MAX_SLOT_CHOICES as u128 });
    }
    let mut forms = vec![ComponentForm::Zero, ComponentForm::Plain];
    forms.extend(polys_below_degree(cs.field(), m).map(ComponentForm::Omega));
    forms.push(ComponentForm::Full);
    Ok(forms)
}

fn build_tree(cs: &CosetStructure, cfg: &SearchConfig) -> Result<Tree> {
    let slots = slots(cs);
    let mut rng = cfg.seed.map(StdRng::seed_from_u64);
    let mut choices = Vec::with_capacity(slots.len());
    for &slot in &slots {
        let m = cs.coset_size(slot.first());
        let mut list = Vec::new();
        match slot {
            Slot::SelfPaired(i) => {
                for f in coset_forms(cs, i)? {
                    let cost = self_paired_bucket(cs, i, &f).cost(m);
                    if cost <= cfg.e_max {
                        list.push(Choice { dim: m * f.generator_count(), forms: vec![f], cost });
                    }
                }
            }
            Slot::Pair(i, j) => {
                let fi = coset_forms(cs, i)?;
                let fj = coset_forms(cs, j)?;
                if fi.len().saturating_mul(fj.len()) > MAX_SLOT_CHOICES {
                    return Err(Error::TooManyCodes {
                        count: fi.len() as u128 * fj.len() as u128,
                        limit: MAX_SLOT_CHOICES as u128,
                    });
                }
                for a in &fi {
                    for b in &fj {
                        let cost = pair_bucket(cs, i, j, a, b).cost(m);
                        if cost <= cfg.e_max {
                            let dim = m * (a.generator_count() + b.generator_count());
                            list.push(Choice { forms: vec![a.clone(), b.clone()], cost, dim });
                        }
                    }
                }
            }
        }
        if let Some(rng) = rng.as_mut() {
            list.shuffle(rng);
        }
        choices.push(list);
    }
    let mut max_rest = vec![0; slots.len() + 1];
    for s in (0..slots.len()).rev() {
        max_rest[s] = max_rest[s + 1] + choices[s].iter().map(|c| c.dim).max().unwrap_or(0);
    }
    Ok(Tree { slots, choices, max_rest })
}

impl Tree {
    fn dim_and_cost(&self, path: &[usize]) -> (usize, usize) {
        path.iter().zip(&self.choices).fold((0, 0), |(d, e), (&c, ch)| (d + ch[c].dim, e + ch[c].cost))
    }

    fn components(&self, cs: &CosetStructure, path: &[usize]) -> Vec<ComponentForm> {
        let mut comps = vec![ComponentForm::Zero; cs.len()];
        for ((slot, choices), &c) in self.slots.iter().zip(&self.choices).zip(path) {
            let forms = &choices[c].forms;
            match *slot {
                Slot::SelfPaired(i) => comps[i] = forms[0].clone(),
                Slot::Pair(i, j) => {
                    comps[i] = forms[0].clone();
                    comps[j] = forms[1].clone();
                }
            }
        }
        comps
    }
}

/// Iterative DFS over admissible leaves, strictly after `resume` if given.
struct Leaves<'a> {
    tree: &'a Tree,
    lo: usize,
    hi: usize,
    e_max: usize,
    path: Vec<usize>,
    cost: Vec<usize>,
    dim: Vec<usize>,
    started: bool,
    done: bool,
}

impl<'a> Leaves<'a> {
    fn new(tree: &'a Tree, cfg: &SearchConfig, resume: Option<&Cursor>) -> Result<Self> {
        let [lo, hi] = cfg.dim_range.unwrap_or([0, usize::MAX]);
        let depth = tree.slots.len();
        let mut it = Leaves {
            tree,
            lo,
            hi,
            e_max: cfg.e_max,
            path: Vec::with_capacity(depth),
            cost: vec![0],
            dim: vec![0],
            started: false,
            done: false,
        };
        if let Some(cursor) = resume {
            if cursor.len() != depth || cursor.iter().zip(&tree.choices).any(|(&c, ch)| c >= ch.len()) {
                return Err(Error::InvalidConfig("resume cursor does not match this configuration".into()));
            }
            for &c in cursor {
                it.push(c);
            }
            it.started = true;
        }
        Ok(it)
    }

    fn push(&mut self, c: usize) {
        let s = self.path.len();
        let ch = &self.tree.choices[s][c];
        self.cost.push(self.cost[s] + ch.cost);
        self.dim.push(self.dim[s] + ch.dim);
        self.path.push(c);
    }

    fn pop(&mut self) -> Option<usize> {
        self.cost.pop();
        self.dim.pop();
        self.path.pop()
    }

    fn admissible(&self) -> bool {
        let s = self.path.len();
        let (cost, dim) = (self.cost[s], self.dim[s]);
        cost <= self.e_max && dim <= self.hi && dim + self.tree.max_rest[s] >= self.lo
    }

    /// Moves to the next sibling at the deepest level, popping exhausted
    /// levels; false when the tree is exhausted.
    fn advance(&mut self) -> bool {
        while let Some(c) = self.pop() {
            let s = self.path.len();
            if c + 1 < self.tree.choices[s].len() {
                self.push(c + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for Leaves<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let depth = self.tree.slots.len();
        if self.started {
            if depth == 0 || !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
            if depth == 0 {
                self.done = true;
                return (self.lo == 0).then(Vec::new);
            }
            if self.tree.choices[0].is_empty() {
                self.done = true;
                return None;
            }
            self.push(0);
        }
        loop {
            if !self.admissible() {
                if !self.advance() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            if self.path.len() == depth {
                if self.dim[depth] >= self.lo {
                    return Some(self.path.clone());
                }
                if !self.advance() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            let s = self.path.len();
            if self.tree.choices[s].is_empty() {
                if !self.advance() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            self.push(0);
        }
    }
}

enum Verdict {
    Emit(Box<SearchRecord>),
    Skip,
}

/// Whether the distance of the quantum code from a leaf with this `dim C`
/// and `e` can be settled by enumeration within the budget.
fn certifiable(cfg: &SearchConfig, dim: usize, e: usize) -> bool {
    let dim_dual = 2 * cfg.n - dim;
    let fits = |d| within_budget(cfg.p, d, cfg.distance_budget);
    match (cfg.p, e) {
        // d = min wt(C^⊥s \ C), or d(C) when C = C^⊥s
        (_, 0) => fits(dim_dual),
        // d_low = min{d(D), d(C + D) + 1} with D = C^⊥s, dim(C + D) = dim D + e
        (2, _) => fits(dim_dual) && fits(dim_dual + e),
        _ => false,
    }
}

fn evaluate(cs: &Arc<CosetStructure>, tree: &Tree, path: &[usize], cfg: &SearchConfig) -> Result<Verdict> {
    let start = Instant::now();
    let target = if cfg.emit_all { None } else { cfg.d_target };
    if target.is_some() {
        let (dim, e) = tree.dim_and_cost(path);
        if !certifiable(cfg, dim, e) {
            return Ok(Verdict::Skip);
        }
    }
    let code = AdditiveCyclicCode::from_components(cs.clone(), tree.components(cs, path))?;
    let report = classify_orthogonality(&code)?;
    if report.e > cfg.e_max {
        return Err(Error::OracleMismatch(format!("leaf with e = {} > e_max", report.e)));
    }
    let opts = cfg.distance_options();
    let floor = target.unwrap_or(0);
    let (quantum, quantum_error) = if cfg.evaluate_quantum || target.is_some() {
        let q = if cs.p() == 2 {
            nearly_self_orthogonal_params_reaching(&dual(&code), floor, opts)
        } else if report.e == 0 {
            stabilizer_params_reaching(&code, floor, opts)
        } else {
            Err(Error::UnsupportedField(cs.p()))
        };
        match q {
            Ok(Some(q)) => (Some(q), None),
            Ok(None) => return Ok(Verdict::Skip),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    if let Some(t) = target {
        if !quantum.as_ref().is_some_and(|q| q.d_low >= t) {
            return Ok(Verdict::Skip);
        }
    }
    Ok(Verdict::Emit(Box::new(SearchRecord {
        descriptor: code.descriptor(),
        orthogonality: report,
        quantum,
        quantum_error,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })))
}

/// Runs the search, handing each record to `sink` in lexicographic leaf
/// order. Stops cleanly when the time budget runs out or `sink` breaks.
pub fn enumerate_with_e_budget<F>(cfg: &SearchConfig, resume: Option<&Cursor>, mut sink: F) -> Result<SearchSummary>
where
    F: FnMut(&SearchRecord, &Cursor) -> Result<ControlFlow<()>>,
{
    cfg.validate()?;
    let cs = Arc::new(CosetStructure::build(cfg.n, cfg.p)?);
    let tree = build_tree(&cs, cfg)?;
    let deadline = cfg.time_budget.map(|t| Instant::now() + Duration::from_secs_f64(t));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;

    let mut leaves = Leaves::new(&tree, cfg, resume)?;
    let mut seen: HashSet<CodeDescriptor> = HashSet::new();
    let mut summary = SearchSummary { complete: false, cursor: resume.cloned(), leaves: 0, emitted: 0 };
    loop {
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Ok(summary);
        }
        let batch: Vec<Vec<usize>> = leaves.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            summary.complete = true;
            return Ok(summary);
        }
        let verdicts: Vec<Result<Verdict>> = pool.install(|| {
            batch
                .par_iter()
                .map(|path| evaluate(&cs, &tree, path, cfg))
                .collect()
        });
        for (path, verdict) in batch.iter().zip(verdicts) {
            summary.leaves += 1;
            if let Verdict::Emit(record) = verdict? {
                if !seen.insert(record.descriptor.clone()) {
                    return Err(Error::OracleMismatch(format!(
                        "duplicate canonical descriptor {}",
                        record.descriptor.to_json()
                    )));
                }
                let flow = sink(&record, path)?;
                summary.emitted += 1;
                summary.cursor = Some(path.clone());
                if flow.is_break() {
                    return Ok(summary);
                }
                continue;
            }
            summary.cursor = Some(path.clone());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CursorFile {
    cursor: Option<Cursor>,
    complete: bool,
}

pub fn cursor_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".cursor");
    PathBuf::from(s)
}

/// Appends records to `out` as JSON lines and keeps the resume cursor in
/// `out.cursor`. With `resume`, continues after the stored cursor.
pub fn run_search_to_file(cfg: &SearchConfig, out: &Path, resume: bool) -> anyhow::Result<SearchSummary> {
    let cpath = cursor_path(out);
    let start_cursor = if resume {
        match std::fs::read_to_string(&cpath) {
            Ok(text) => {
                let c: CursorFile = serde_json::from_str(&text)
                    .map_err(|e| anyhow::anyhow!("{}: {e}", cpath.display()))?;
                if c.complete {
                    return Ok(SearchSummary { complete: true, cursor: c.cursor, leaves: 0, emitted: 0 });
                }
                c.cursor
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
            Err(e) => return Err(anyhow::anyhow!("{}: {e}", cpath.display())),
        }
    } else {
        None
    };
    let file = if resume {
        OpenOptions::new().create(true).append(true).open(out)?
    } else {
        File::create(out)?
    };
    let mut writer = BufWriter::new(file);
    let mut write_error: Option<std::io::Error> = None;
    let summary = enumerate_with_e_budget(cfg, start_cursor.as_ref(), |record, _| {
        let written = serde_json::to_writer(&mut writer, record)
            .map_err(std::io::Error::from)
            .and_then(|()| writer.write_all(b"\n"));
        match written {
            Ok(()) => Ok(ControlFlow::Continue(())),
            Err(e) => {
                write_error = Some(e);
                Ok(ControlFlow::Break(()))
            }
        }
    })?;
    if let Some(e) = write_error {
        return Err(anyhow::anyhow!("{}: {e}", out.display()));
    }
    writer.flush()?;
    let cursor_file = CursorFile { cursor: summary.cursor.clone(), complete: summary.complete };
    std::fs::write(&cpath, serde_json::to_string(&cursor_file)?)?;
    Ok(summary)
}
