//! The `hk` command line.
//!
//! Exit codes: 0 ok, 2 mismatch or non-effective, 3 cap or limit exhausted,
//! 4 input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::{Parser, Subcommand, ValueEnum};

use crate::combinatorics::{
    alternating_series, cardinality_formula, catalan_check, describe, idempotent_count, maximal_content_count,
    multiplicity_free_count, reversal_family, reversal_inequality_check, CountReport,
};
use crate::error::{HkError, Result};
use crate::families;
use crate::graph::{parse_graph, DirectedGraph, VertexId};
use crate::presentation::{mf_normal_form, mf_reduce, mf_representative};
use crate::representation::{
    check_cycle_powers, check_effective, represent, zn_check_with, zn_representation_check, WeightFunction,
};
use crate::rewrite::{
    enumerate, oracle_agreement, CompletionLimits, OracleAgreement, RewriteSystem, DEFAULT_CAP,
};
use crate::word::Word;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "hk", version, about = "Hecke-Kiselman monoids of directed graphs")]
pub struct Cli {
    /// Graph file (line format `n`/`e u v`, or a DOT digraph).
    #[arg(long, global = true, conflicts_with = "builder")]
    graph: Option<String>,
    /// Builder expression such as `chain(4)`, `alt(3)`, `orient(4,5)`, `zn(5)`, `triangle`.
    #[arg(long, global = true)]
    builder: Option<String>,
    /// Edge weights `u->v=w,...`; unlisted edges take `--weights-const`.
    #[arg(long, global = true)]
    weights: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    weights_const: Option<i64>,
    /// Permit zero weights.
    #[arg(long, global = true)]
    allow_zero: bool,
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Element cap for enumeration (default 200000, or HK_CAP).
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true, default_value_t = CompletionLimits::default().max_rules)]
    max_rules: usize,
    #[arg(long, global = true, default_value_t = CompletionLimits::default().max_rule_len)]
    max_rule_len: usize,
    #[arg(long, global = true)]
    all_orientations: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for independent graphs; output order is unaffected.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate the monoid and print its normal forms.
    Enumerate {
        /// Also print the right Cayley table.
        #[arg(long)]
        dump: bool,
    },
    /// Compare closed-form counts with enumeration over a graph family.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Oracle word length bound.
        #[arg(long, default_value_t = 6)]
        oracle_len: usize,
        #[arg(long, default_value_t = 2)]
        oracle_slack: usize,
    },
    /// Matrix representation tasks.
    Rep {
        #[arg(value_enum)]
        action: RepAction,
        #[arg(long)]
        word: Option<String>,
        /// Size of Z_n for `check-zn`.
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// Normal form, reduced word, content and multiplicity-free image of a word.
    Reduce { word: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Catalan,
    Fibonacci,
    Product,
    Idempotents,
    Mf,
    Reversal,
    Formula,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RepAction {
    Matrix,
    CheckEffective,
    CheckZn,
    CheckCycle,
}

/// Output of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (including the program name) with `hk_cap` as the
/// value of the `HK_CAP` environment variable.
pub fn run<I, T>(args: I, hk_cap: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, hk_cap, &mut out) {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(e) => {
            let code = exit_code(&e);
            let mut msg = format!("error: {e}\n");
            if matches!(e, HkError::CapExceeded { .. }) {
                if let Ok(g) = load_graph(&cli) {
                    if g.has_oriented_cycle(g.all()) {
                        msg.push_str("the graph has an oriented cycle, so the monoid is likely infinite\n");
                    }
                }
            }
            Outcome { code, stdout: out, stderr: msg }
        }
    }
}

pub fn exit_code(e: &HkError) -> i32 {
    match e {
        HkError::CapExceeded { .. } | HkError::LimitExceeded(_) | HkError::Unstable(_) => EXIT_LIMIT,
        _ => EXIT_INPUT,
    }
}

fn load_graph(cli: &Cli) -> Result<DirectedGraph> {
    match (&cli.graph, &cli.builder) {
        (Some(path), None) => parse_graph(&std::fs::read_to_string(path)?),
        (None, Some(expr)) => families::build(expr),
        (None, None) => Err(HkError::parse(0, "a graph is required: pass --graph or --builder")),
        (Some(_), Some(_)) => Err(HkError::parse(0, "pass only one of --graph and --builder")),
    }
}

fn cap(cli: &Cli, hk_cap: Option<&str>) -> Result<usize> {
    let cap = match (cli.cap, hk_cap) {
        (Some(c), _) => c,
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| HkError::parse(0, format!("HK_CAP must be a positive integer, got `{v}`")))?,
        (None, None) => DEFAULT_CAP,
    };
    if cap == 0 {
        return Err(HkError::parse(0, "the element cap must be positive"));
    }
    Ok(cap)
}

fn limits(cli: &Cli) -> CompletionLimits {
    CompletionLimits {
        max_rules: cli.max_rules,
        max_rule_len: cli.max_rule_len,
    }
}

fn weights(cli: &Cli, g: &DirectedGraph, default: i64) -> Result<WeightFunction> {
    let base = Some(cli.weights_const.unwrap_or(default));
    WeightFunction::parse(g, cli.weights.as_deref().unwrap_or(""), base, cli.allow_zero)
}

fn execute(cli: &Cli, hk_cap: Option<&str>, out: &mut String) -> Result<i32> {
    match &cli.command {
        Command::Enumerate { dump } => cmd_enumerate(cli, hk_cap, *dump, out),
        Command::Verify { suite, oracle_len, oracle_slack } => {
            cmd_verify(cli, hk_cap, *suite, *oracle_len, *oracle_slack, out)
        }
        Command::Rep { action, word, n, kmax } => cmd_rep(cli, hk_cap, *action, word.as_deref(), *n, *kmax, out),
        Command::Reduce { word } => cmd_reduce(cli, word, out),
    }
}

fn cmd_enumerate(cli: &Cli, hk_cap: Option<&str>, dump: bool, out: &mut String) -> Result<i32> {
    let g = load_graph(cli)?;
    let rs = RewriteSystem::for_graph(&g, limits(cli))?;
    let t = enumerate(&rs, &g, cap(cli, hk_cap)?)?;
    match cli.format {
        Format::Machine => {
            let _ = writeln!(out, "graph={} elements={}", describe(&g), t.len());
        }
        Format::Text => {
            let noun = if t.len() == 1 { "element" } else { "elements" };
            let _ = writeln!(out, "{} {noun}", t.len());
            if dump {
                out.push_str(&t.export(&g));
            } else {
                for nf in t.normal_forms() {
                    let _ = writeln!(out, "{}", nf.display(&g));
                }
            }
        }
    }
    Ok(EXIT_OK)
}

/// One independent verification: a label and a closure producing a report.
type Job<'a> = Box<dyn Fn() -> Result<JobResult> + Send + Sync + 'a>;

struct JobResult {
    text: String,
    machine: String,
    passed: bool,
}

impl From<CountReport> for JobResult {
    fn from(r: CountReport) -> Self {
        JobResult {
            text: r.to_string(),
            machine: r.machine_line(),
            passed: r.passed(),
        }
    }
}

/// Runs jobs on `workers` threads; results come back in job order.
fn run_jobs(jobs: &[Job<'_>], workers: usize) -> Vec<Result<JobResult>> {
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<Result<JobResult>>> = (0..jobs.len()).map(|_| None).collect();
    let workers = workers.clamp(1, jobs.len().max(1));
    let results = std::sync::Mutex::new(&mut slots);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let r = jobs[i]();
                results.lock().expect("no poisoned workers")[i] = Some(r);
            });
        }
    });
    slots.into_iter().map(|r| r.expect("every job ran")).collect()
}

/// The default graph family for a suite: the given graph, or chains and
/// alternating graphs (every orientation with `--all-orientations`) up to
/// `max_n` vertices.
fn family(cli: &Cli, max_n: usize, min_n: usize) -> Result<Vec<(String, DirectedGraph)>> {
    if cli.graph.is_some() || cli.builder.is_some() {
        let g = load_graph(cli)?;
        let id = cli.builder.clone().unwrap_or_else(|| describe(&g));
        return Ok(vec![(id, g)]);
    }
    let mut out = Vec::new();
    for n in min_n..=max_n {
        if cli.all_orientations {
            for (mask, g) in families::all_orientations(n)? {
                out.push((format!("orient({n},{mask})"), g));
            }
        } else {
            out.push((format!("chain({n})"), families::chain(n)?));
            if n >= 3 {
                out.push((format!("alt({n})"), families::alternating(n)?));
            }
        }
    }
    Ok(out)
}

fn cmd_verify(
    cli: &Cli,
    hk_cap: Option<&str>,
    suite: Suite,
    oracle_len: usize,
    oracle_slack: usize,
    out: &mut String,
) -> Result<i32> {
    let max_n = cli.max_n.unwrap_or(5);
    let mut extra_ok = true;
    let mut extra_lines = Vec::new();
    let jobs: Vec<Job<'_>> = match suite {
        Suite::Catalan => (1..=max_n)
            .map(|n| Box::new(move || catalan_check(n).map(JobResult::from)) as Job<'_>)
            .collect(),
        Suite::Fibonacci => {
            let (reports, recursion) = alternating_series(max_n)?;
            extra_ok = recursion;
            extra_lines.push(format!("recursion f(n+1) = 3f(n) - f(n-1): {}", if recursion { "ok" } else { "FAILS" }));
            reports
                .into_iter()
                .map(|r| {
                    let r = std::sync::Mutex::new(Some(r));
                    Box::new(move || Ok(JobResult::from(r.lock().expect("single use").take().expect("run once"))))
                        as Job<'_>
                })
                .collect()
        }
        Suite::Product | Suite::Formula | Suite::Mf => {
            let check: fn(&DirectedGraph) -> Result<CountReport> = match suite {
                Suite::Product => maximal_content_count,
                Suite::Formula => cardinality_formula,
                _ => multiplicity_free_count,
            };
            family(cli, max_n, 1)?
                .into_iter()
                .map(|(id, g)| Box::new(move || check(&g).map(|r| JobResult::from(r.named(id.clone())))) as Job<'_>)
                .collect()
        }
        Suite::Idempotents => {
            let graphs = if cli.graph.is_some() || cli.builder.is_some() {
                family(cli, max_n, 0)?
            } else {
                families::fixtures()
                    .into_iter()
                    .filter(|(_, g)| g.vertex_count() <= max_n)
                    .collect()
            };
            graphs
                .into_iter()
                .map(|(id, g)| {
                    Box::new(move || idempotent_count(&g).map(|r| JobResult::from(r.named(id.clone())))) as Job<'_>
                })
                .collect()
        }
        Suite::Reversal => reversal_family()
            .into_iter()
            .filter(|(g, _, _)| g.vertex_count() <= max_n)
            .map(|(g, s1, s2)| {
                Box::new(move || {
                    let r = reversal_inequality_check(&g, s1, s2)?;
                    Ok(JobResult {
                        text: format!(
                            "{:<28} |HK| {:>4}  reversed {:>4}  glue {} isolated {}  {}\n",
                            r.graph,
                            r.original,
                            r.reversed,
                            g.label(r.glue),
                            r.isolated_in_piece,
                            if r.passed() { "ok" } else { "MISMATCH" }
                        ),
                        machine: r.machine_line(),
                        passed: r.passed(),
                    })
                }) as Job<'_>
            })
            .collect(),
        Suite::Oracle => {
            let cap = cap(cli, hk_cap)?;
            let graphs = if cli.graph.is_some() || cli.builder.is_some() {
                family(cli, max_n, 0)?
            } else {
                families::fixtures()
                    .into_iter()
                    .filter(|(_, g)| g.vertex_count() <= max_n.min(4))
                    .collect()
            };
            graphs
                .into_iter()
                .map(|(id, g)| {
                    Box::new(move || {
                        let r = oracle_agreement(&g, oracle_len, oracle_slack, cap)?;
                        let summary = match &r {
                            OracleAgreement::Finite { classes, elements, max_len, words_agree } => format!(
                                "classes={classes} elements={elements} max_len={max_len} words_agree={words_agree}"
                            ),
                            OracleAgreement::BothUnbounded => "unbounded on both sides".to_string(),
                            OracleAgreement::Disagree { detail } => detail.clone(),
                        };
                        Ok(JobResult {
                            text: format!(
                                "{id:<28} {summary}  {}\n",
                                if r.agrees() { "ok" } else { "MISMATCH" }
                            ),
                            machine: format!("graph={id} {summary} match={}", r.agrees()),
                            passed: r.agrees(),
                        })
                    }) as Job<'_>
                })
                .collect()
        }
    };
    let mut all_ok = extra_ok;
    let mut first_error = None;
    for r in run_jobs(&jobs, cli.jobs) {
        match r {
            Ok(r) => {
                all_ok &= r.passed;
                match cli.format {
                    Format::Text => out.push_str(&r.text),
                    Format::Machine => {
                        out.push_str(&r.machine);
                        out.push('\n');
                    }
                }
            }
            Err(e) => {
                let _ = writeln!(out, "error: {e}");
                first_error.get_or_insert(e);
            }
        }
    }
    for line in extra_lines {
        let _ = writeln!(out, "{line}");
    }
    if let Some(e) = first_error {
        return Err(e);
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn cmd_rep(
    cli: &Cli,
    hk_cap: Option<&str>,
    action: RepAction,
    word: Option<&str>,
    n: usize,
    kmax: usize,
    out: &mut String,
) -> Result<i32> {
    match action {
        RepAction::Matrix => {
            let g = load_graph(cli)?;
            let f = weights(cli, &g, 1)?;
            let w = Word::parse(word.ok_or_else(|| HkError::parse(0, "--word is required"))?, &g)?;
            out.push_str(&represent(&g, &f, &w).dump());
            Ok(EXIT_OK)
        }
        RepAction::CheckEffective => {
            let g = load_graph(cli)?;
            let f = weights(cli, &g, 1)?;
            let rs = RewriteSystem::for_graph(&g, limits(cli))?;
            let t = enumerate(&rs, &g, cap(cli, hk_cap)?)?;
            let r = check_effective(&g, &f, &t)?;
            let collision = r
                .collision
                .map(|(x, y)| format!("{} {}", t.normal_form(x).display(&g), t.normal_form(y).display(&g)));
            match cli.format {
                Format::Text => {
                    let _ = writeln!(
                        out,
                        "{}: {} elements, {} distinct matrices",
                        if r.effective { "effective" } else { "not effective" },
                        r.elements,
                        r.distinct_matrices
                    );
                    if let Some(c) = &collision {
                        let _ = writeln!(out, "collision: {c}");
                    }
                }
                Format::Machine => {
                    let _ = writeln!(
                        out,
                        "graph={} elements={} distinct={} effective={}{}",
                        describe(&g),
                        r.elements,
                        r.distinct_matrices,
                        r.effective,
                        collision.map(|c| format!(" collision={}", c.replace(' ', ","))).unwrap_or_default()
                    );
                }
            }
            Ok(if r.effective { EXIT_OK } else { EXIT_MISMATCH })
        }
        RepAction::CheckZn => {
            let r = if cli.weights.is_some() || cli.weights_const.is_some() {
                let z = crate::graph::build_zn(n)?;
                zn_check_with(&z, &weights(cli, &z.graph, 1)?)?
            } else {
                zn_representation_check(n)?
            };
            let e = &r.effectiveness;
            match cli.format {
                Format::Text => {
                    let _ = writeln!(
                        out,
                        "Z_{n}: {} ({} elements, {} distinct matrices)",
                        if e.effective { "effective" } else { "not effective" },
                        e.elements,
                        e.distinct_matrices
                    );
                    let names = ["middles only", "w1 a w2", "w1 b w2", "w1 a w2 b w3", "w1 b w2 a w3"];
                    for (name, count) in names.iter().zip(r.type_counts) {
                        let _ = writeln!(out, "  {name:<14} {count}");
                    }
                    let _ = writeln!(
                        out,
                        "  taxonomy: {} (uncovered {}, ambiguous {})",
                        if r.taxonomy_ok() { "ok" } else { "FAILS" },
                        r.uncovered,
                        r.ambiguous
                    );
                }
                Format::Machine => {
                    let counts: Vec<String> = r.type_counts.iter().map(usize::to_string).collect();
                    let _ = writeln!(
                        out,
                        "zn={n} elements={} distinct={} effective={} types={} taxonomy={}",
                        e.elements,
                        e.distinct_matrices,
                        e.effective,
                        counts.join(","),
                        r.taxonomy_ok()
                    );
                }
            }
            Ok(if r.passed() { EXIT_OK } else { EXIT_MISMATCH })
        }
        RepAction::CheckCycle => {
            let g = load_graph(cli)?;
            let f = weights(cli, &g, 2)?;
            let w = match word {
                Some(s) => Word::parse(s, &g)?,
                None => Word::new(g.vertices().collect()),
            };
            let r = check_cycle_powers(&g, &f, &w, kmax)?;
            let exps: Vec<String> = r
                .exponents
                .iter()
                .map(|e| e.map_or("-".into(), |e| e.to_string()))
                .collect();
            match cli.format {
                Format::Text => {
                    let _ = writeln!(out, "exponents: {}", exps.join(" "));
                    let _ = writeln!(out, "pairwise distinct: {}", r.pairwise_distinct);
                    let _ = writeln!(out, "{}", if r.holds { "ok" } else { "FAILS" });
                }
                Format::Machine => {
                    let _ = writeln!(
                        out,
                        "word={} kmax={kmax} exponents={} distinct={} match={}",
                        w.display(&g),
                        exps.join(","),
                        r.pairwise_distinct,
                        r.holds
                    );
                }
            }
            Ok(if r.holds { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}

fn cmd_reduce(cli: &Cli, word: &str, out: &mut String) -> Result<i32> {
    let g = load_graph(cli)?;
    let rs = RewriteSystem::for_graph(&g, limits(cli))?;
    let w = Word::parse(word, &g)?;
    let nf = rs.normal_form(&w)?;
    let reduced = mf_reduce(&g, &w, g.sources_and_sinks())?;
    let content: Vec<&str> = w.content().iter().map(|v: VertexId| g.label(v)).collect();
    let phi = if g.is_type_an() && !g.has_unoriented_edges() {
        match mf_representative(&rs, &g, &w)? {
            Some(mf) => Some(mf_normal_form(&g, &mf)?.display(&g).to_string()),
            None => None,
        }
    } else {
        None
    };
    match cli.format {
        Format::Text => {
            let _ = writeln!(out, "normal form: {}", nf.display(&g));
            let _ = writeln!(out, "mf-reduced:  {}", reduced.display(&g));
            let _ = writeln!(out, "content:     {{{}}}", content.join(","));
            let _ = writeln!(out, "phi:         {}", phi.as_deref().unwrap_or("n/a"));
        }
        Format::Machine => {
            let _ = writeln!(
                out,
                "normal_form={} mf_reduced={} content={} phi={}",
                nf.display(&g),
                reduced.display(&g),
                if content.is_empty() { "-".to_string() } else { content.join(",") },
                phi.as_deref().unwrap_or("n/a")
            );
        }
    }
    Ok(EXIT_OK)
}
