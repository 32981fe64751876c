use std::io::{self, BufRead, Write};
use std::sync::Arc;

use egyfrac::enumerate::{count_with, enumerate_with, Execution, Progress};
use egyfrac::exactnum::{self, Natural, Ratio};
use egyfrac::operators::{
    closure, coprime_path_search, find_unreachable, first_part_tree, gamma_split, lower_bound_s, o_swap_at,
    ClosureLimits, GammaChoice, OParams, OperatorSet,
};
use egyfrac::repr::{coverage, perfect_representation, validate, Representation, RestrictionProfile};
use egyfrac::shiu::{self, AUTHORITATIVE_MAX_PARTS};
use egyfrac::SearchBounds;
use serde_json::{json, Value};

use crate::args::*;
use crate::config::FileConfig;
use crate::output::{bounds_value, profile_value, rep_value, Emitter};
use crate::{Failure, Outcome};

type Res = Result<Outcome, Failure>;

/// Global settings after merging flags, environment and config file.
struct Settings {
    format: Format,
    threads: usize,
    progress_every: Option<u64>,
    bounds: SearchBounds,
    file: FileConfig,
}

impl Settings {
    fn resolve(cli: &Cli) -> Result<Self, Failure> {
        let file = match &cli.config {
            Some(path) => FileConfig::load(path).map_err(Failure::Usage)?,
            None => FileConfig::default(),
        };
        let format = match cli.format {
            Some(f) => f,
            None => file.format().map_err(Failure::Usage)?.unwrap_or(Format::Jsonl),
        };
        let threads = match cli.threads {
            Some(t) => t,
            None => file
                .get::<usize>("threads")
                .map_err(Failure::Usage)?
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        };
        let progress_every = if cli.no_progress {
            None
        } else {
            cli.progress_every
                .or(file.get::<u64>("progress-every").map_err(Failure::Usage)?)
        };
        let bounds = SearchBounds {
            max_denominator: cli
                .max_denominator
                .clone()
                .or(file.get::<Natural>("max-denominator").map_err(Failure::Usage)?),
            max_results: cli
                .max_results
                .or(file.get::<u64>("max-results").map_err(Failure::Usage)?),
            node_budget: cli
                .node_budget
                .or(file.get::<u64>("node-budget").map_err(Failure::Usage)?),
        };
        if bounds.max_results == Some(0)
            || bounds.node_budget == Some(0)
            || bounds.max_denominator.as_ref().is_some_and(Natural::is_zero)
        {
            return Err(Failure::Usage("limits must be positive".into()));
        }
        if progress_every == Some(0) {
            return Err(Failure::Usage("--progress-every must be positive".into()));
        }
        Ok(Settings {
            format,
            threads: threads.max(1),
            progress_every,
            bounds,
            file,
        })
    }

    fn execution(&self) -> Execution {
        let exec = Execution::parallel(self.threads);
        match self.progress_every {
            Some(every) => exec.with_progress(
                every,
                Arc::new(|p: &Progress| {
                    let rec = json!({ "progress": { "nodes": p.nodes, "depth": p.depth, "found": p.found } });
                    let _ = writeln!(io::stderr().lock(), "{rec}");
                }),
            ),
            None => exec,
        }
    }

    fn profile(&self, flags: &ProfileArgs) -> Result<RestrictionProfile, Failure> {
        self.file.profile(flags).map_err(Failure::Usage)
    }

    fn ops(&self, flag: Option<OperatorSet>) -> Result<OperatorSet, Failure> {
        Ok(match flag {
            Some(o) => o,
            None => self.file.ops().map_err(Failure::Usage)?.unwrap_or(OperatorSet::GAMMA),
        })
    }

    fn depth(&self, flag: Option<usize>) -> Result<Option<usize>, Failure> {
        Ok(match flag {
            Some(d) => Some(d),
            None => self.file.get::<usize>("depth").map_err(Failure::Usage)?,
        })
    }

    /// Settings that change how, not what, a command computes.
    fn echo_execution(&self) {
        let rec = json!({ "execution": { "threads": self.threads, "progress_every": self.progress_every } });
        let _ = writeln!(io::stderr().lock(), "{rec}");
    }

    fn header(&self, command: &str, fields: Value) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("command".into(), command.into());
        if let Value::Object(f) = fields {
            obj.extend(f);
        }
        obj.insert("bounds".into(), bounds_value(&self.bounds));
        obj.insert("format".into(), self.format.name().into());
        Value::Object(obj)
    }
}

pub fn execute<W: Write>(cli: Cli, out: W) -> Res {
    let settings = Settings::resolve(&cli)?;
    settings.echo_execution();
    let mut em = Emitter::new(out, settings.format);
    let outcome = match &cli.command {
        Command::Enumerate(a) => search(&settings, &mut em, a, true),
        Command::Count(a) => search(&settings, &mut em, a, false),
        Command::Apply(a) => apply(&settings, &mut em, a),
        Command::Closure(a) => run_closure(&settings, &mut em, a),
        Command::Gaps(a) => gaps(&settings, &mut em, a),
        Command::LowerBound(a) => lower_bound(&settings, &mut em, a),
        Command::CoprimeSearch(a) => coprime(&settings, &mut em, a),
        Command::ShiuVerify(a) => shiu_verify(&settings, &mut em, a),
        Command::Sigma(a) => sigma(&settings, &mut em, a),
        Command::PerfectRep(a) => perfect(&settings, &mut em, a),
        Command::Analyze(a) => analyze(&settings, &mut em, a),
    }?;
    em.finish()?;
    Ok(outcome)
}

fn outcome(complete: bool) -> Outcome {
    if complete {
        Outcome::Complete
    } else {
        Outcome::Incomplete
    }
}

fn strings(v: &[Natural]) -> Vec<String> {
    v.iter().map(Natural::to_string).collect()
}

fn seed_rep(seed: &SeedArgs) -> Result<Representation, Failure> {
    Ok(match &seed.u {
        Some(u) => Representation::single(u.clone())?,
        None => {
            let target = Ratio::sum_of_units(&seed.denoms)?;
            Representation::canonicalize(target, seed.denoms.clone())?
        }
    })
}

fn search<W: Write>(s: &Settings, em: &mut Emitter<W>, a: &SearchArgs, list: bool) -> Res {
    let target = match (&a.target, &a.u) {
        (Some(t), _) => t.clone(),
        (None, Some(u)) => Ratio::unit(u)?,
        (None, None) => unreachable!("clap requires --target or --u"),
    };
    let profile = s.profile(&a.profile)?;
    em.config(s.header(
        if list { "enumerate" } else { "count" },
        json!({ "target": target.to_string(), "parts": a.parts, "profile": profile_value(&profile) }),
    ))?;
    let exec = s.execution();
    let (count, complete, nodes) = if list {
        let r = enumerate_with(&target, a.parts, &profile, &s.bounds, &exec)?;
        for rep in &r.reps {
            em.rep(rep)?;
        }
        (r.count, r.complete, r.nodes_visited)
    } else {
        let c = count_with(&target, a.parts, &profile, &s.bounds, &exec)?;
        (c.count, c.complete, c.nodes_visited)
    };
    em.summary(json!({ "count": count, "complete": complete, "nodes": nodes }))?;
    Ok(outcome(complete))
}

fn apply<W: Write>(s: &Settings, em: &mut Emitter<W>, a: &ApplyArgs) -> Res {
    let rep = seed_rep(&a.seed)?;
    let result = match a.op {
        OpKind::Gamma => {
            let choice = GammaChoice::new(a.part.unwrap_or(0), a.d.clone());
            em.config(s.header(
                "apply",
                json!({ "seed": rep_value(&rep), "op": "gamma", "part_index": choice.part_index, "d": a.d.to_string() }),
            ))?;
            gamma_split(&rep, &choice)?
        }
        OpKind::O => {
            let q = a.q.clone().ok_or_else(|| Failure::Usage("--op o needs --q".into()))?;
            let pair = a.pair_index.unwrap_or(0);
            em.config(s.header(
                "apply",
                json!({ "seed": rep_value(&rep), "op": "o", "q": q.to_string(), "d": a.d.to_string(), "pair_index": pair }),
            ))?;
            o_swap_at(&rep, &OParams::new(q, a.d.clone())?, pair)?
        }
    };
    em.rep(&result)?;
    Ok(Outcome::Complete)
}

fn run_closure<W: Write>(s: &Settings, em: &mut Emitter<W>, a: &ClosureArgs) -> Res {
    let seed = seed_rep(&a.seed)?;
    let ops = s.ops(a.ops)?;
    let depth = s
        .depth(a.depth)?
        .ok_or_else(|| Failure::Usage("closure needs --depth (closures are unbounded otherwise)".into()))?;
    let limits = ClosureLimits {
        max_depth: depth,
        max_parts: a.max_parts,
        node_budget: s.bounds.node_budget,
    };
    em.config(s.header(
        "closure",
        json!({ "seed": rep_value(&seed), "ops": ops.to_string(), "depth": depth, "max_parts": a.max_parts }),
    ))?;
    let c = closure(&seed, ops, &limits)?;
    for r in &c.reachable {
        em.rep(r)?;
    }
    for e in &c.edges {
        em.edge(e)?;
    }
    em.summary(json!({
        "count": c.reachable.len(),
        "complete": c.complete,
        "nodes": c.edges.len(),
        "duplicates": c.duplicates_detected,
        "frontier_exhausted": c.frontier_exhausted,
    }))?;
    Ok(outcome(c.complete))
}

fn gaps<W: Write>(s: &Settings, em: &mut Emitter<W>, a: &GapsArgs) -> Res {
    let ops = s.ops(a.ops)?;
    let depth = s.depth(a.depth)?.unwrap_or(a.parts.saturating_sub(1));
    em.config(s.header(
        "gaps",
        json!({ "u": a.u.to_string(), "parts": a.parts, "ops": ops.to_string(), "depth": depth }),
    ))?;
    let limits = ClosureLimits {
        max_depth: depth,
        max_parts: Some(a.parts),
        node_budget: s.bounds.node_budget,
    };
    let g = find_unreachable(&a.u, a.parts, ops, &limits, &s.bounds)?;
    for r in &g.missing {
        em.rep(r)?;
    }
    em.summary(json!({
        "count": g.missing.len(),
        "complete": g.complete,
        "enumerated": g.enumerated,
        "reached": g.reached,
    }))?;
    Ok(outcome(g.complete))
}

fn lower_bound<W: Write>(s: &Settings, em: &mut Emitter<W>, a: &LowerBoundArgs) -> Res {
    em.config(s.header(
        "lower-bound",
        json!({ "u": a.u.to_string(), "parts": a.parts, "tree": a.tree }),
    ))?;
    if a.tree {
        let t = first_part_tree(&a.u, a.parts)?;
        for r in &t.representations {
            em.rep(r)?;
        }
        for (r, paths) in &t.collisions {
            em.record(json!({ "repeated": rep_value(r), "paths": paths }))?;
        }
        em.summary(json!({
            "s_k": t.s_k.to_string(),
            "distinct": t.representations.len(),
            "repeated": t.collisions.len(),
        }))?;
    } else {
        let s_k = lower_bound_s(&a.u, a.parts)?;
        em.record(json!({ "u": a.u.to_string(), "parts": a.parts, "s_k": s_k.to_string() }))?;
    }
    Ok(Outcome::Complete)
}

fn coprime<W: Write>(s: &Settings, em: &mut Emitter<W>, a: &CoprimeArgs) -> Res {
    let seed = seed_rep(&a.seed)?;
    let ops = s.ops(a.ops)?;
    let depth = s.depth(a.depth)?.unwrap_or(2);
    em.config(s.header(
        "coprime-search",
        json!({ "seed": rep_value(&seed), "ops": ops.to_string(), "depth": depth }),
    ))?;
    match coprime_path_search(&seed, ops, depth, s.bounds.node_budget) {
        Ok(Some(p)) => {
            for step in &p.steps {
                em.edge(step)?;
            }
            em.record(json!({ "new_denominator": p.new_denominator.to_string(), "depth": p.steps.len() }))?;
            em.summary(json!({ "found": true, "complete": true }))?;
            Ok(Outcome::Complete)
        }
        Ok(None) => {
            em.summary(json!({ "found": false, "complete": true }))?;
            Ok(Outcome::Complete)
        }
        Err(egyfrac::Error::BudgetExceeded { .. }) => {
            em.summary(json!({ "found": false, "complete": false }))?;
            Ok(Outcome::Incomplete)
        }
        Err(e) => Err(e.into()),
    }
}

fn shiu_verify<W: Write>(s: &Settings, em: &mut Emitter<W>, a: &ShiuArgs) -> Res {
    if a.max_parts >= AUTHORITATIVE_MAX_PARTS && !a.full_nine {
        return Err(Failure::Usage(format!(
            "--max-parts {} searches {} parts or more; pass --full-nine to allow it",
            a.max_parts, AUTHORITATIVE_MAX_PARTS
        )));
    }
    em.config(s.header(
        "shiu-verify",
        json!({
            "min_parts": a.min_parts,
            "max_parts": a.max_parts,
            "profile": profile_value(&RestrictionProfile::odd_distinct()),
        }),
    ))?;
    let report = shiu::verify_shiu_from(a.min_parts, a.max_parts, &s.bounds, &s.execution())?;
    let (mut count, mut nodes) = (0u64, 0u64);
    for row in &report.rows {
        let timing = json!({ "timing": { "parts": row.parts, "elapsed_ms": row.elapsed.as_millis() as u64 } });
        let _ = writeln!(io::stderr().lock(), "{timing}");
        em.record(json!({
            "parts": row.parts,
            "count": row.count,
            "complete": row.complete,
            "nodes": row.nodes_visited,
            "authoritative": row.authoritative,
        }))?;
        for r in row.solutions.iter().flatten() {
            em.rep(r)?;
        }
        count += row.count;
        nodes += row.nodes_visited;
    }
    if let Some(diff) = &report.reference {
        em.record(json!({
            "reference_match": diff.is_exact(),
            "missing": diff.missing.iter().map(rep_value).collect::<Vec<_>>(),
            "extra": diff.extra.iter().map(rep_value).collect::<Vec<_>>(),
        }))?;
    }
    em.summary(json!({ "count": count, "complete": report.complete(), "nodes": nodes }))?;
    if report.reference.as_ref().is_some_and(|d| !d.is_exact()) {
        return Err(Failure::Precondition(egyfrac::Error::InvalidArgument(
            "nine-part solutions differ from the reference list".into(),
        )));
    }
    Ok(outcome(report.complete()))
}

fn sigma<W: Write>(s: &Settings, em: &mut Emitter<W>, a: &SigmaArgs) -> Res {
    em.config(s.header("sigma", json!({ "s": a.s, "n": a.n.to_string() })))?;
    let v = exactnum::sigma(a.s, &a.n)?;
    let value = if v.denom().is_one() {
        v.numer().to_string()
    } else {
        v.to_string()
    };
    if s.format == Format::Human {
        em.text(&value)?;
    } else {
        em.record(json!({ "s": a.s, "n": a.n.to_string(), "sigma": value }))?;
    }
    Ok(Outcome::Complete)
}

fn perfect<W: Write>(s: &Settings, em: &mut Emitter<W>, a: &PerfectArgs) -> Res {
    em.config(s.header(
        "perfect-rep",
        json!({ "n": a.n.as_ref().map(Natural::to_string), "up_to": a.up_to }),
    ))?;
    if let Some(n) = &a.n {
        em.rep(&perfect_representation(n)?)?;
        return Ok(Outcome::Complete);
    }
    let limit = a.up_to.expect("clap requires -n or --up-to");
    let mut found = Vec::new();
    for n in 2..=limit {
        let n = Natural::from(n);
        match perfect_representation(&n) {
            Ok(rep) => {
                em.rep(&rep)?;
                found.push(n);
            }
            Err(egyfrac::Error::NotPerfect { .. }) => {}
            Err(e) => return Err(e.into()),
        }
    }
    em.summary(json!({ "count": found.len(), "complete": true, "perfect": strings(&found) }))?;
    Ok(Outcome::Complete)
}

fn analyze<W: Write>(s: &Settings, em: &mut Emitter<W>, a: &AnalyzeArgs) -> Res {
    let profile = s.profile(&a.profile)?;
    let reps = if a.seed_equation {
        vec![shiu::seed_equation()]
    } else if a.stdin {
        read_reps(io::stdin().lock())?
    } else {
        let target = Ratio::sum_of_units(&a.denoms)?;
        vec![Representation::canonicalize(target, a.denoms.clone())?]
    };
    em.config(s.header(
        "analyze",
        json!({ "inputs": reps.len(), "profile": profile_value(&profile) }),
    ))?;
    for rep in &reps {
        let c = coverage(rep)?;
        let violations: Vec<String> = validate(rep, &profile).iter().map(ToString::to_string).collect();
        em.record(json!({
            "rep": rep_value(rep),
            "lcm": c.n.to_string(),
            "divisor_count": c.divisor_count.to_string(),
            "used": c.used.to_string(),
            "missing_count": c.missing_count.to_string(),
            "missing": strings(&c.missing),
            "abundancy": c.abundancy.to_string(),
            "violations": violations,
        }))?;
    }
    Ok(Outcome::Complete)
}

/// Representation records from jsonl or csv lines. Other records (config
/// headers, summaries, `#` lines, csv headers) are skipped, so the output of
/// `enumerate` can be piped straight in.
fn read_reps(input: impl BufRead) -> Result<Vec<Representation>, Failure> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') || t == Representation::CSV_HEADER {
            continue;
        }
        let parsed = if t.starts_with('{') {
            let is_rep = serde_json::from_str::<Value>(t)
                .map(|v| v.get("denoms").is_some())
                .unwrap_or(true);
            if !is_rep {
                continue;
            }
            Representation::from_line(t)
        } else {
            Representation::from_csv_row(t)
        };
        out.push(parsed.map_err(|e| match e {
            egyfrac::Error::Malformed { position, message } => egyfrac::Error::Malformed {
                position: format!("input line {}, {position}", i + 1),
                message,
            },
            other => other,
        })?);
    }
    if out.is_empty() {
        return Err(egyfrac::Error::EmptyInput("analyze").into());
    }
    Ok(out)
}
