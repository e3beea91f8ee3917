//! Classification campaigns: condition cascades over generated core trees,
//! parallel execution, and resumable CSV reporting.
//!
//! A cascade is an ordered list of stages. Chain families (hm, jonsson, kk,
//! hmck, nn) expand into one stage per scheduled length; once a length comes
//! back satisfiable the remaining lengths of that family are recorded as
//! skipped. Records are validated against chain monotonicity and the known
//! cross-family implications before they are persisted, and campaigns write
//! byte-identical CSVs for any worker count.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use treecsp_core::conditions::{self, LinearCondition};
use treecsp_core::cores::is_core_tree;
use treecsp_core::digraph::{canonical_encoding, is_triad, parse_canonical, TreeDigraph};
use treecsp_core::generation::{generate_core_triads, Generator};
use treecsp_core::indicator::{decide, DecideOpts, DecisionResult, IndicatorError, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageMode {
    Full,
    Levelwise,
    Auto,
}

impl StageMode {
    fn to_indicator(self) -> Mode {
        match self {
            StageMode::Full => Mode::Full,
            StageMode::Levelwise => Mode::Levelwise,
            StageMode::Auto => Mode::Auto,
        }
    }
}

impl fmt::Display for StageMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StageMode::Full => write!(f, "full"),
            StageMode::Levelwise => write!(f, "levelwise"),
            StageMode::Auto => write!(f, "auto"),
        }
    }
}

pub struct Stage {
    /// CSV column name, e.g. `majority` or `hm-8`.
    pub name: String,
    pub condition: LinearCondition,
    pub mode: StageMode,
    pub steps: Option<u64>,
    /// Chain family id for skip logic (`hm`, `jonsson`, ...).
    pub family: Option<String>,
}

pub struct Cascade {
    pub stages: Vec<Stage>,
}

/// Doubling schedule from `start`, capped and terminated by `bound`.
fn doubling_schedule(start: usize, bound: usize) -> Vec<usize> {
    assert!(
        start >= 1 && bound >= start,
        "schedule must be strictly increasing"
    );
    let mut out = Vec::new();
    let mut v = start;
    while v < bound {
        out.push(v);
        v *= 2;
    }
    out.push(bound);
    out
}

/// The default cascade: quick conclusive tests first, then the chain
/// families with escalating lengths. The Hagemann-Mitschke schedule caps at
/// 30 regardless of a larger chain bound; the other chains run to the bound.
pub fn default_cascade(chain_bound: usize) -> Cascade {
    let mut stages = Vec::new();
    stages.push(Stage {
        name: "ts-all".into(),
        condition: conditions::ts_all(),
        mode: StageMode::Auto,
        steps: None,
        family: None,
    });
    stages.push(Stage {
        name: "wnu-2".into(),
        condition: conditions::wnu(2).unwrap(),
        mode: StageMode::Auto,
        steps: None,
        family: None,
    });
    stages.push(Stage {
        name: "majority".into(),
        condition: conditions::majority(),
        mode: StageMode::Full,
        steps: None,
        family: None,
    });
    stages.push(Stage {
        name: "kmm".into(),
        condition: conditions::kmm(),
        mode: StageMode::Auto,
        steps: None,
        family: None,
    });
    let chain = |family: &str, schedule: Vec<usize>, mode: StageMode| -> Vec<Stage> {
        schedule
            .into_iter()
            .map(|len| Stage {
                name: format!("{family}-{len}"),
                condition: conditions::builtin(family, Some(len)).unwrap(),
                mode,
                steps: None,
                family: Some(family.to_string()),
            })
            .collect()
    };
    stages.extend(chain(
        "hm",
        doubling_schedule(1, chain_bound.min(30)),
        StageMode::Auto,
    ));
    stages.extend(chain(
        "jonsson",
        doubling_schedule(1, chain_bound),
        StageMode::Levelwise,
    ));
    stages.extend(chain(
        "kk",
        doubling_schedule(2, chain_bound.max(2)),
        StageMode::Levelwise,
    ));
    stages.extend(chain(
        "hmck",
        doubling_schedule(1, chain_bound),
        StageMode::Levelwise,
    ));
    stages.extend(chain(
        "nn",
        doubling_schedule(1, chain_bound),
        StageMode::Levelwise,
    ));
    Cascade { stages }
}

/// Error in a cascade description file.
#[derive(Debug)]
pub struct CascadeParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for CascadeParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cascade line {}: {}", self.line, self.message)
    }
}

/// Parses a cascade file: one stage per line,
/// `<condition> [mode] [steps=N]` for single conditions (CLI names) or
/// `<family> <len,len,...> [mode] [steps=N]` for chain families.
/// Modes are `full`, `levelwise`, `auto` (default `auto`).
pub fn parse_cascade(text: &str) -> Result<Cascade, CascadeParseError> {
    let mut stages = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| CascadeParseError {
            line: lineno + 1,
            message,
        };
        let mut words = line.split_whitespace().peekable();
        let head = words.next().unwrap().to_string();
        let mut schedule: Option<Vec<usize>> = None;
        if let Some(next) = words.peek() {
            if next.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                let parsed: Result<Vec<usize>, _> =
                    words.next().unwrap().split(',').map(str::parse).collect();
                let lens = parsed.map_err(|e| err(format!("bad schedule: {e}")))?;
                if lens.windows(2).any(|w| w[0] >= w[1]) || lens.is_empty() {
                    return Err(err("schedule must be strictly increasing".into()));
                }
                schedule = Some(lens);
            }
        }
        let mut mode = StageMode::Auto;
        let mut steps = None;
        for word in words {
            match word {
                "full" => mode = StageMode::Full,
                "levelwise" => mode = StageMode::Levelwise,
                "auto" => mode = StageMode::Auto,
                _ => {
                    if let Some(v) = word.strip_prefix("steps=") {
                        steps = Some(
                            v.parse::<u64>()
                                .map_err(|e| err(format!("bad steps: {e}")))?,
                        );
                    } else {
                        return Err(err(format!("unrecognized token {word:?}")));
                    }
                }
            }
        }
        match schedule {
            None => {
                let condition = conditions::by_cli_name(&head)
                    .map_err(|e| err(format!("unknown condition: {e}")))?;
                stages.push(Stage {
                    name: head,
                    condition,
                    mode,
                    steps,
                    family: None,
                });
            }
            Some(lens) => {
                for len in lens {
                    let condition = conditions::builtin(&head, Some(len))
                        .map_err(|e| err(format!("unknown family: {e}")))?;
                    stages.push(Stage {
                        name: format!("{head}-{len}"),
                        condition,
                        mode,
                        steps,
                        family: Some(head.clone()),
                    });
                }
            }
        }
    }
    if stages.is_empty() {
        return Err(CascadeParseError {
            line: 0,
            message: "cascade has no stages".into(),
        });
    }
    Ok(Cascade { stages })
}

/// Per-stage outcome recorded in the CSV.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageVerdict {
    Sat,
    Unsat,
    LwSat,
    LwUnsat,
    Timeout,
    Skipped,
}

impl StageVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            StageVerdict::Sat => "sat",
            StageVerdict::Unsat => "unsat",
            StageVerdict::LwSat => "lw-sat",
            StageVerdict::LwUnsat => "lw-unsat",
            StageVerdict::Timeout => "timeout",
            StageVerdict::Skipped => "skipped",
        }
    }

    pub fn from_str(s: &str) -> Option<StageVerdict> {
        Some(match s {
            "sat" => StageVerdict::Sat,
            "unsat" => StageVerdict::Unsat,
            "lw-sat" => StageVerdict::LwSat,
            "lw-unsat" => StageVerdict::LwUnsat,
            "timeout" => StageVerdict::Timeout,
            "skipped" => StageVerdict::Skipped,
            _ => return None,
        })
    }

    fn satisfiable_evidence(self) -> bool {
        matches!(self, StageVerdict::Sat | StageVerdict::LwSat)
    }
}

impl fmt::Display for StageVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationRecord {
    pub canonical: String,
    pub n: usize,
    pub is_triad: bool,
    pub verdicts: Vec<StageVerdict>,
}

impl ClassificationRecord {
    pub fn verdict_of(&self, cascade: &Cascade, stage_name: &str) -> Option<StageVerdict> {
        cascade
            .stages
            .iter()
            .position(|s| s.name == stage_name)
            .map(|i| self.verdicts[i])
    }
}

fn map_result(result: &DecisionResult) -> StageVerdict {
    match result.verdict() {
        treecsp_core::indicator::Verdict::Sat => StageVerdict::Sat,
        treecsp_core::indicator::Verdict::Unsat => StageVerdict::Unsat,
        treecsp_core::indicator::Verdict::LwSat => StageVerdict::LwSat,
        treecsp_core::indicator::Verdict::LwUnsat => StageVerdict::LwUnsat,
        treecsp_core::indicator::Verdict::Timeout => StageVerdict::Timeout,
    }
}

/// Runs the cascade on one tree. Warns on stderr when the tree is not a core
/// (campaign inputs from the generator always are).
pub fn classify_tree(
    t: &TreeDigraph,
    canonical: &str,
    cascade: &Cascade,
) -> Result<ClassificationRecord, IndicatorError> {
    if !is_core_tree(t) {
        eprintln!("warning: classifying a non-core tree ({canonical})");
    }
    let mut verdicts = Vec::with_capacity(cascade.stages.len());
    let mut satisfied_families: Vec<&str> = Vec::new();
    for stage in &cascade.stages {
        if let Some(family) = &stage.family {
            if satisfied_families.iter().any(|f| f == family) {
                verdicts.push(StageVerdict::Skipped);
                continue;
            }
        }
        let opts = DecideOpts {
            idempotent: true,
            step_budget: stage.steps,
            ..DecideOpts::default()
        };
        let result = decide(t, &stage.condition, stage.mode.to_indicator(), &opts)?;
        let verdict = map_result(&result);
        if verdict.satisfiable_evidence() {
            if let Some(family) = &stage.family {
                satisfied_families.push(family);
            }
        }
        verdicts.push(verdict);
    }
    Ok(ClassificationRecord {
        canonical: canonical.to_string(),
        n: t.vertex_count(),
        is_triad: is_triad(t),
        verdicts,
    })
}

/// Checks a record against chain monotonicity and the cross-family
/// implications (majority forces every Jónsson length; a satisfiable Jónsson
/// length n forces Kearnes-Kiss from length 2n+4 on; total symmetry forces a
/// binary symmetric polymorphism).
pub fn validate_record(cascade: &Cascade, record: &ClassificationRecord) -> Result<(), String> {
    let find = |name: &str| record.verdict_of(cascade, name);
    // per-family monotonicity
    let mut families: HashMap<&str, Vec<(usize, StageVerdict)>> = HashMap::new();
    for (stage, &verdict) in cascade.stages.iter().zip(&record.verdicts) {
        if let (Some(family), Some((_, len))) = (&stage.family, stage.name.rsplit_once('-')) {
            if let Ok(len) = len.parse::<usize>() {
                families.entry(family).or_default().push((len, verdict));
            }
        }
    }
    for (family, entries) in &families {
        for &(a, va) in entries {
            for &(b, vb) in entries {
                if a >= b {
                    continue;
                }
                let sat_then_refuted = va == StageVerdict::Sat
                    && matches!(vb, StageVerdict::Unsat | StageVerdict::LwUnsat);
                let lwsat_then_lwrefuted = va == StageVerdict::LwSat && vb == StageVerdict::LwUnsat;
                if sat_then_refuted || lwsat_then_lwrefuted {
                    return Err(format!(
                        "{family}-{a} is {va} but {family}-{b} is {vb}: chain monotonicity violated"
                    ));
                }
            }
        }
    }
    // majority = NU(3) implies a Jónsson chain of every length
    if find("majority") == Some(StageVerdict::Sat) {
        if let Some(entries) = families.get("jonsson") {
            for &(len, v) in entries {
                if matches!(v, StageVerdict::Unsat | StageVerdict::LwUnsat) {
                    return Err(format!("majority is sat but jonsson-{len} is {v}"));
                }
            }
        }
    }
    // Jónsson length n implies Kearnes-Kiss length 2n+4
    if let (Some(jonsson), Some(kk)) = (families.get("jonsson"), families.get("kk")) {
        for &(a, va) in jonsson {
            if !va.satisfiable_evidence() {
                continue;
            }
            for &(b, vb) in kk {
                if b < 2 * a + 4 {
                    continue;
                }
                let broken = match va {
                    StageVerdict::Sat => {
                        matches!(vb, StageVerdict::Unsat | StageVerdict::LwUnsat)
                    }
                    StageVerdict::LwSat => vb == StageVerdict::LwUnsat,
                    _ => false,
                };
                if broken {
                    return Err(format!("jonsson-{a} is {va} but kk-{b} is {vb}"));
                }
            }
        }
    }
    // total symmetry of all arities includes the binary symmetric operation
    if find("ts-all") == Some(StageVerdict::Sat)
        && matches!(
            find("wnu-2"),
            Some(StageVerdict::Unsat | StageVerdict::LwUnsat)
        )
    {
        return Err("ts-all is sat but wnu-2 is refuted".into());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// CSV

pub fn csv_header(cascade: &Cascade) -> String {
    let mut out = String::from("canonical,n,is_triad");
    for stage in &cascade.stages {
        out.push(',');
        out.push_str(&stage.name);
    }
    out
}

pub fn record_to_csv(record: &ClassificationRecord) -> String {
    let mut out = format!("{},{},{}", record.canonical, record.n, record.is_triad);
    for v in &record.verdicts {
        out.push(',');
        out.push_str(v.as_str());
    }
    out
}

pub fn parse_csv_record(cascade: &Cascade, line: &str) -> Option<ClassificationRecord> {
    let mut parts = line.trim().split(',');
    let canonical = parts.next()?.to_string();
    let n = parts.next()?.parse().ok()?;
    let is_triad = parts.next()?.parse().ok()?;
    let verdicts: Option<Vec<StageVerdict>> = parts.map(StageVerdict::from_str).collect();
    let verdicts = verdicts?;
    if verdicts.len() != cascade.stages.len() {
        return None;
    }
    Some(ClassificationRecord {
        canonical,
        n,
        is_triad,
        verdicts,
    })
}

// ---------------------------------------------------------------------------
// campaign

pub struct CampaignConfig {
    pub sizes: (usize, usize),
    pub triads: bool,
    pub jobs: usize,
    pub resume: bool,
    pub out: PathBuf,
    /// Trees from a file (one canonical encoding per line) instead of the
    /// generator; still filtered by the size range.
    pub input: Option<PathBuf>,
    /// Exit code 3 when more than this fraction of records timed out.
    pub max_timeout_fraction: f64,
}

#[derive(Debug, Default)]
pub struct CampaignSummary {
    pub records: usize,
    pub reused: usize,
    pub violations: usize,
    pub timeouts: usize,
    /// (n, verdict-combination rendered as CSV verdict cells) -> count
    pub tallies: Vec<((usize, String), usize)>,
    pub exit_code: i32,
}

#[derive(Debug)]
pub enum CampaignError {
    Io(io::Error),
    HeaderMismatch,
    Indicator(IndicatorError),
    BadInput(String),
}

impl fmt::Display for CampaignError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CampaignError::Io(e) => write!(f, "io error: {e}"),
            CampaignError::HeaderMismatch => {
                write!(
                    f,
                    "existing CSV header does not match the cascade (wrong --cascade?)"
                )
            }
            CampaignError::Indicator(e) => write!(f, "{e}"),
            CampaignError::BadInput(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<io::Error> for CampaignError {
    fn from(e: io::Error) -> CampaignError {
        CampaignError::Io(e)
    }
}

impl From<IndicatorError> for CampaignError {
    fn from(e: IndicatorError) -> CampaignError {
        CampaignError::Indicator(e)
    }
}

fn trees_for_size(
    n: usize,
    config: &CampaignConfig,
) -> Result<Vec<(String, TreeDigraph)>, CampaignError> {
    let mut out = Vec::new();
    match &config.input {
        Some(path) => {
            let text = fs::read_to_string(path)?;
            for line in text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
            {
                let (tree, _) = parse_canonical(line)
                    .map_err(|e| CampaignError::BadInput(format!("{line:?}: {e}")))?;
                if tree.vertex_count() == n && (!config.triads || is_triad(&tree)) {
                    out.push((line.to_string(), tree));
                }
            }
        }
        None if config.triads => {
            if n >= 4 {
                generate_core_triads(n, &mut |tree, canon| {
                    out.push((canon.to_string(), tree));
                });
            }
        }
        None => {
            let mut generator = Generator::new();
            generator.core_trees(n, &mut |tree, canon| {
                out.push((canon.to_string(), tree));
            });
        }
    }
    Ok(out)
}

/// Streams trees through the cascade with `jobs` workers and writes a CSV
/// sorted by (n, canonical). With `resume`, records already present in the
/// output are kept instead of recomputed. Interruption leaves the partial
/// file behind; a resumed run produces the same bytes as an uninterrupted
/// one.
pub fn run_campaign(
    config: &CampaignConfig,
    cascade: &Cascade,
) -> Result<CampaignSummary, CampaignError> {
    let header = csv_header(cascade);
    let mut existing: HashMap<String, ClassificationRecord> = HashMap::new();
    if config.resume && config.out.exists() {
        let text = fs::read_to_string(&config.out)?;
        let mut lines = text.lines();
        match lines.next() {
            Some(first) if first.trim() == header => {}
            Some(_) => return Err(CampaignError::HeaderMismatch),
            None => {}
        }
        for line in lines {
            if let Some(record) = parse_csv_record(cascade, line) {
                existing.insert(record.canonical.clone(), record);
            }
        }
    }

    // append in deterministic generation order while the run progresses
    let file = fs::File::create(&config.out)?;
    let mut writer = BufWriter::new(file);
    writeln!(writer, "{header}")?;

    let mut summary = CampaignSummary::default();
    let mut all_records: Vec<ClassificationRecord> = Vec::new();
    let (lo, hi) = config.sizes;
    for n in lo..=hi {
        let trees = trees_for_size(n, config)?;
        let results = classify_batch(cascade, &trees, &existing, config.jobs, &mut summary)?;
        for record in results {
            writeln!(writer, "{}", record_to_csv(&record))?;
            all_records.push(record);
        }
        writer.flush()?;
    }
    drop(writer);

    // validate, drop violators, and rewrite sorted by (n, canonical)
    let mut kept: Vec<ClassificationRecord> = Vec::new();
    for record in all_records {
        match validate_record(cascade, &record) {
            Ok(()) => kept.push(record),
            Err(msg) => {
                eprintln!("record {} refused: {msg}", record.canonical);
                summary.violations += 1;
            }
        }
    }
    check_reverse_pairs(&mut kept, &mut summary);
    kept.sort_by(|a, b| (a.n, &a.canonical).cmp(&(b.n, &b.canonical)));

    let tmp = config.out.with_extension("csv.tmp");
    {
        let file = fs::File::create(&tmp)?;
        let mut writer = BufWriter::new(file);
        writeln!(writer, "{header}")?;
        for record in &kept {
            writeln!(writer, "{}", record_to_csv(record))?;
        }
        writer.flush()?;
    }
    fs::rename(&tmp, &config.out)?;

    summary.records = kept.len();
    summary.timeouts = kept
        .iter()
        .filter(|r| r.verdicts.iter().any(|v| *v == StageVerdict::Timeout))
        .count();
    let mut tallies: HashMap<(usize, String), usize> = HashMap::new();
    for record in &kept {
        let combo = record
            .verdicts
            .iter()
            .map(|v| v.as_str())
            .collect::<Vec<_>>()
            .join(",");
        *tallies.entry((record.n, combo)).or_insert(0) += 1;
    }
    summary.tallies = tallies.into_iter().collect();
    summary.tallies.sort();

    summary.exit_code = if summary.violations > 0 {
        2
    } else if summary.records > 0
        && summary.timeouts as f64 > config.max_timeout_fraction * summary.records as f64
    {
        3
    } else {
        0
    };
    Ok(summary)
}

fn classify_batch(
    cascade: &Cascade,
    trees: &[(String, TreeDigraph)],
    existing: &HashMap<String, ClassificationRecord>,
    jobs: usize,
    summary: &mut CampaignSummary,
) -> Result<Vec<ClassificationRecord>, CampaignError> {
    let jobs = jobs.max(1);
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, Result<ClassificationRecord, IndicatorError>)>();
    let reused = AtomicUsize::new(0);

    let mut slots: Vec<Option<ClassificationRecord>> = vec![None; trees.len()];
    thread::scope(|scope| {
        for _ in 0..jobs {
            let tx = tx.clone();
            let next = &next;
            let reused = &reused;
            scope.spawn(move || loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= trees.len() {
                    break;
                }
                let (canon, tree) = &trees[idx];
                if let Some(record) = existing.get(canon) {
                    reused.fetch_add(1, Ordering::Relaxed);
                    let _ = tx.send((idx, Ok(record.clone())));
                    continue;
                }
                let _ = tx.send((idx, classify_tree(tree, canon, cascade)));
            });
        }
        drop(tx);
        for (idx, result) in rx {
            match result {
                Ok(record) => slots[idx] = Some(record),
                Err(e) => {
                    // surfaced after the scope joins
                    eprintln!("classification failed: {e}");
                }
            }
        }
    });
    summary.reused += reused.load(Ordering::Relaxed);

    let mut out = Vec::with_capacity(trees.len());
    for (idx, slot) in slots.into_iter().enumerate() {
        match slot {
            Some(record) => out.push(record),
            None => {
                return Err(CampaignError::BadInput(format!(
                    "classification failed for {}",
                    trees[idx].0
                )))
            }
        }
    }
    Ok(out)
}

/// Records for a tree and its reverse must agree verdict-for-verdict
/// (polymorphisms are invariant under edge reversal). Timeouts exempt a pair
/// since budgets are search-order dependent.
fn check_reverse_pairs(records: &mut Vec<ClassificationRecord>, summary: &mut CampaignSummary) {
    let index: HashMap<String, usize> = records
        .iter()
        .enumerate()
        .map(|(i, r)| (r.canonical.clone(), i))
        .collect();
    let mut drop_idx: Vec<usize> = Vec::new();
    for (i, record) in records.iter().enumerate() {
        let (tree, _) = match parse_canonical(&record.canonical) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let rev = canonical_encoding(&tree.reverse());
        if rev <= record.canonical {
            continue; // visit each pair once, from its smaller end
        }
        if let Some(&j) = index.get(&rev) {
            let a = &records[i];
            let b = &records[j];
            let timed_out = a
                .verdicts
                .iter()
                .chain(&b.verdicts)
                .any(|v| *v == StageVerdict::Timeout);
            if !timed_out && a.verdicts != b.verdicts {
                eprintln!(
                    "records {} and {} disagree across edge reversal; dropping both",
                    a.canonical, b.canonical
                );
                drop_idx.push(i);
                drop_idx.push(j);
                summary.violations += 2;
            }
        }
    }
    drop_idx.sort_unstable();
    drop_idx.dedup();
    for &i in drop_idx.iter().rev() {
        records.remove(i);
    }
}

/// Renders the per-size tallies of verdict combinations.
pub fn render_summary(cascade: &Cascade, summary: &CampaignSummary) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} records ({} reused, {} violations refused, {} with timeouts)\n",
        summary.records, summary.reused, summary.violations, summary.timeouts
    ));
    let names: Vec<&str> = cascade.stages.iter().map(|s| s.name.as_str()).collect();
    let mut current_n = usize::MAX;
    for ((n, combo), count) in &summary.tallies {
        if *n != current_n {
            out.push_str(&format!("n={n}:\n"));
            current_n = *n;
        }
        let rendered: Vec<String> = combo
            .split(',')
            .zip(&names)
            .filter(|(v, _)| *v != "skipped")
            .map(|(v, name)| format!("{name}={v}"))
            .collect();
        out.push_str(&format!("  {:6}  {}\n", count, rendered.join(" ")));
    }
    out
}
