use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use hessflag_core::classify::{
    cell_verdict, codim1_perms, flag_record, normality_cross_check, string_heights, CellVerdict,
    Codim1Record, FlagRecord, VarietyReport,
};
use hessflag_core::combinatorics::{enumerate_flags, enumerate_hess, flag_in_hess, hess_codim};
use hessflag_core::complement::complement;
use hessflag_core::generators::{generator_g, generator_set, y_recursive, y_subseq};
use hessflag_core::jacobian::{build_jacobian, generic_rank_probe, rank_at_flag};
use hessflag_core::oracle::conjugated_generators;
use hessflag_core::{HessenbergFunction, Permutation, VarId};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{
    AtlasArgs, ClassifyArgs, Cli, Codim1Args, Command, Format, GeneratorsArgs, VarietyArgs,
    VerifyArgs,
};
use crate::{check_cap, CliError, BATCH_CAP, EXIT_DISAGREEMENT, EXIT_OK, QUERY_CAP};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Label attached to every generic-rank probe result.
const PROBE_NOTE: &str = "sampled, not proven";

type Outcome = Result<i32, CliError>;

pub(crate) fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match &cli.command {
        Command::Classify(a) => classify(a, cli.unsafe_n, out),
        Command::Variety(a) => variety(a, cli.unsafe_n, out),
        Command::Atlas(a) => atlas(a, cli.unsafe_n, out),
        Command::Codim1(a) => codim1(a, cli.unsafe_n, out),
        Command::Generators(a) => generators(a, cli.unsafe_n, out),
        Command::Verify(a) => verify(a, cli.unsafe_n, out),
    }
}

fn unsupported(format: Format, command: &str) -> CliError {
    CliError::Usage(format!("--format {format:?} is not available for {command}").to_lowercase())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn check_same_n(w: &Permutation, h: &HessenbergFunction) -> Result<(), CliError> {
    if w.n() != h.n() {
        return Err(hessflag_core::Error::DimensionMismatch {
            expected: h.n(),
            found: w.n(),
        }
        .into());
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub note: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub max_rank: usize,
    pub target: usize,
    pub witness: BTreeMap<VarId, i64>,
}

/// Result of `classify`. Fields after `in_variety` are absent when the flag
/// does not lie in the variety.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub h: HessenbergFunction,
    pub w: Permutation,
    pub codim: usize,
    pub in_variety: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub string_heights: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<CellVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobian_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeReport>,
}

fn classify(a: &ClassifyArgs, unsafe_n: bool, out: &mut dyn Write) -> Outcome {
    check_same_n(&a.w, &a.h)?;
    check_cap(a.h.n(), QUERY_CAP, unsafe_n)?;
    a.h.require_standing()?;
    let mut report = ClassifyReport {
        h: a.h.clone(),
        w: a.w.clone(),
        codim: hess_codim(&a.h)?,
        in_variety: flag_in_hess(&a.w, &a.h)?,
        singular: None,
        string_heights: None,
        verdict: None,
        jacobian_rank: None,
        agree: None,
        probe: None,
    };
    if report.in_variety {
        let heights = string_heights(&a.w, &a.h)?;
        let singular = !heights.is_empty();
        let verdict = cell_verdict(&a.w, &a.h)?;
        if a.verify_jacobian {
            let rank = rank_at_flag(&a.w, &a.h)?;
            report.jacobian_rank = Some(rank);
            report.agree = Some((rank < report.codim) == singular);
        }
        if verdict == CellVerdict::IndeterminateCell {
            let probe = generic_rank_probe(&a.w, &a.h, a.seed)?;
            report.probe = Some(ProbeReport {
                note: PROBE_NOTE,
                seed: a.seed,
                samples: probe.samples,
                max_rank: probe.max_rank,
                target: probe.target,
                witness: probe.witness,
            });
        }
        report.singular = Some(singular);
        report.string_heights = Some(heights);
        report.verdict = Some(verdict);
    }
    match a.format {
        Format::Json => write_json(out, &report)?,
        Format::Text => write_classify_text(out, &report)?,
        Format::Csv => return Err(unsupported(a.format, "classify")),
    }
    Ok(if report.agree == Some(false) {
        EXIT_DISAGREEMENT
    } else {
        EXIT_OK
    })
}

fn write_classify_text(out: &mut dyn Write, r: &ClassifyReport) -> Result<(), CliError> {
    writeln!(out, "h = {}", r.h)?;
    writeln!(out, "w = {}", r.w)?;
    writeln!(out, "codim = {}", r.codim)?;
    if !r.in_variety {
        writeln!(out, "in variety: no (flag not in variety)")?;
        return Ok(());
    }
    writeln!(out, "in variety: yes")?;
    writeln!(out, "singular: {}", yes_no(r.singular == Some(true)))?;
    let heights = r.string_heights.as_deref().unwrap_or(&[]);
    writeln!(out, "string heights: [{}]", join(heights, ","))?;
    if let Some(v) = r.verdict {
        writeln!(out, "verdict: {v}")?;
    }
    if let (Some(rank), Some(agree)) = (r.jacobian_rank, r.agree) {
        let relation = if rank < r.codim { "<" } else { "=" };
        writeln!(
            out,
            "jacobian rank: {rank} {relation} codim {} (agree: {})",
            r.codim,
            yes_no(agree)
        )?;
    }
    if let Some(p) = &r.probe {
        let witness: Vec<String> = p.witness.iter().map(|(v, x)| format!("{v}={x}")).collect();
        writeln!(
            out,
            "generic rank probe ({}): max rank {} of {} over {} samples (seed {}), witness {{{}}}",
            p.note,
            p.max_rank,
            p.target,
            p.samples,
            p.seed,
            witness.join(", ")
        )?;
    }
    writeln!(out, "complement grid:")?;
    write!(out, "{}", complement(&r.w, &r.h)?.render())?;
    Ok(())
}

fn variety_parallel(
    h: &HessenbergFunction,
    with_jacobian: bool,
) -> Result<VarietyReport, CliError> {
    h.require_standing()?;
    let flags = enumerate_flags(h)?;
    let records = flags
        .par_iter()
        .map(|w| flag_record(w, h, with_jacobian))
        .collect::<Result<Vec<FlagRecord>, _>>()?;
    Ok(VarietyReport::assemble(h, records)?)
}

#[derive(Serialize)]
struct FlagRow {
    w: String,
    singular: bool,
    string_heights: String,
    jacobian_rank: Option<usize>,
}

fn variety(a: &VarietyArgs, unsafe_n: bool, out: &mut dyn Write) -> Outcome {
    check_cap(a.h.n(), QUERY_CAP, unsafe_n)?;
    let report = variety_parallel(&a.h, a.verify_jacobian)?;
    let disagreements: Vec<&FlagRecord> = report
        .flags
        .iter()
        .filter(|f| {
            f.jacobian_rank
                .is_some_and(|r| (r < report.codim) != f.singular)
        })
        .collect();
    match a.format {
        Format::Json => write_json(out, &report)?,
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut *out);
            for f in &report.flags {
                csv.serialize(FlagRow {
                    w: f.w.to_string(),
                    singular: f.singular,
                    string_heights: join(&f.string_heights, ";"),
                    jacobian_rank: f.jacobian_rank,
                })?;
            }
            csv.flush()?;
        }
        Format::Text => {
            writeln!(out, "h = {}", report.h)?;
            writeln!(
                out,
                "n = {}, dim = {}, codim = {}",
                report.n, report.dim, report.codim
            )?;
            writeln!(out, "normal: {}", yes_no(report.normal))?;
            writeln!(out, "permutation flags: {}", report.num_flags)?;
            writeln!(out, "singular flags ({}):", report.num_singular_flags)?;
            for f in report.flags.iter().filter(|f| f.singular) {
                match f.jacobian_rank {
                    Some(r) => writeln!(
                        out,
                        "  {}  heights [{}]  jacobian rank {r}",
                        f.w,
                        join(&f.string_heights, ",")
                    )?,
                    None => writeln!(out, "  {}  heights [{}]", f.w, join(&f.string_heights, ","))?,
                }
            }
            writeln!(out, "codimension-one cells:")?;
            for c in &report.codim1 {
                writeln!(
                    out,
                    "  p_{} = {} (case {}) {}",
                    c.index, c.perm, c.case, c.verdict
                )?;
            }
            if a.verify_jacobian {
                writeln!(out, "jacobian disagreements: {}", disagreements.len())?;
            }
        }
    }
    Ok(if disagreements.is_empty() {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    })
}

/// One line of the atlas.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtlasRecord {
    pub schema_version: u32,
    pub tool_version: String,
    pub n: usize,
    pub h: HessenbergFunction,
    pub normal: bool,
    pub dim: usize,
    pub codim: usize,
    pub num_flags: usize,
    pub num_singular_flags: usize,
    pub codim1: Vec<Codim1Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

#[derive(Serialize)]
struct AtlasRow {
    schema_version: u32,
    tool_version: String,
    n: usize,
    h: String,
    normal: bool,
    dim: usize,
    codim: usize,
    num_flags: usize,
    num_singular_flags: usize,
    codim1: String,
    timestamp: Option<u64>,
}

fn atlas(a: &AtlasArgs, unsafe_n: bool, out: &mut dyn Write) -> Outcome {
    check_cap(a.n, BATCH_CAP, unsafe_n)?;
    if a.n < 2 {
        return Err(CliError::Usage("atlas needs n >= 2".into()));
    }
    if a.format == Format::Text {
        return Err(unsupported(a.format, "atlas"));
    }
    let hs = enumerate_hess(a.n)?;
    let reports = hs
        .par_iter()
        .map(|h| hessflag_core::variety_report(h, false))
        .collect::<Result<Vec<_>, _>>()?;
    let timestamp = a.timestamps.then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let records: Vec<AtlasRecord> = reports
        .into_iter()
        .map(|r| AtlasRecord {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            n: r.n,
            h: r.h,
            normal: r.normal,
            dim: r.dim,
            codim: r.codim,
            num_flags: r.num_flags,
            num_singular_flags: r.num_singular_flags,
            codim1: r.codim1,
            timestamp,
        })
        .collect();

    let mut file;
    let sink: &mut dyn Write = match &a.out {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => out,
    };
    match a.format {
        Format::Json => {
            for r in &records {
                serde_json::to_writer(&mut *sink, r)?;
                writeln!(sink)?;
            }
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut *sink);
            for r in &records {
                let codim1: Vec<String> = r
                    .codim1
                    .iter()
                    .map(|c| format!("{}:{}:{}", c.index, c.case, c.perm))
                    .collect();
                csv.serialize(AtlasRow {
                    schema_version: r.schema_version,
                    tool_version: r.tool_version.clone(),
                    n: r.n,
                    h: r.h.to_string(),
                    normal: r.normal,
                    dim: r.dim,
                    codim: r.codim,
                    num_flags: r.num_flags,
                    num_singular_flags: r.num_singular_flags,
                    codim1: codim1.join(";"),
                    timestamp: r.timestamp,
                })?;
            }
            csv.flush()?;
        }
        Format::Text => unreachable!("rejected above"),
    }
    sink.flush()?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct Codim1Row {
    index: usize,
    case: String,
    perm: String,
    verdict: CellVerdict,
}

fn codim1(a: &Codim1Args, unsafe_n: bool, out: &mut dyn Write) -> Outcome {
    check_cap(a.h.n(), QUERY_CAP, unsafe_n)?;
    let rows = codim1_perms(&a.h)?
        .into_iter()
        .map(|p| {
            Ok(Codim1Record {
                verdict: cell_verdict(&p.perm, &a.h)?,
                index: p.index,
                case: p.case,
                perm: p.perm,
            })
        })
        .collect::<Result<Vec<_>, hessflag_core::Error>>()?;
    match a.format {
        Format::Json => write_json(out, &rows)?,
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(&mut *out);
            for r in &rows {
                csv.serialize(Codim1Row {
                    index: r.index,
                    case: r.case.to_string(),
                    perm: r.perm.to_string(),
                    verdict: r.verdict,
                })?;
            }
            csv.flush()?;
        }
        Format::Text => {
            for r in &rows {
                writeln!(
                    out,
                    "p_{} = {} (case {}) {}",
                    r.index, r.perm, r.case, r.verdict
                )?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct GeneratorEntry {
    cell: [usize; 2],
    g: String,
}

#[derive(Serialize)]
struct GeneratorDump {
    w: Permutation,
    h: HessenbergFunction,
    generators: Vec<GeneratorEntry>,
}

fn generators(a: &GeneratorsArgs, unsafe_n: bool, out: &mut dyn Write) -> Outcome {
    check_same_n(&a.w, &a.h)?;
    check_cap(a.h.n(), QUERY_CAP, unsafe_n)?;
    if a.format == Format::Csv {
        return Err(unsupported(a.format, "generators"));
    }
    if let Some((i, j)) = a.entry {
        let g = generator_g(&a.w, i, j)?;
        match a.format {
            Format::Json => write_json(
                out,
                &GeneratorEntry {
                    cell: [i, j],
                    g: g.to_string(),
                },
            )?,
            _ => writeln!(out, "g[{i},{j}] = {g}")?,
        }
        return Ok(EXIT_OK);
    }
    if a.jacobian {
        let jac = build_jacobian(&a.w, &a.h)?;
        match (a.at_flag, a.format) {
            (false, Format::Json) => write_json(out, &jac.to_json())?,
            (false, _) => write!(out, "{}", jac.to_text())?,
            (true, Format::Json) => write_json(out, &jac.evaluated_json(&jac.eval_at_flag()))?,
            (true, _) => write!(out, "{}", jac.evaluated_text(&jac.eval_at_flag()))?,
        }
        return Ok(EXIT_OK);
    }
    let set = generator_set(&a.w, &a.h)?;
    match a.format {
        Format::Json => write_json(
            out,
            &GeneratorDump {
                w: set.w.clone(),
                h: set.h.clone(),
                generators: set
                    .entries
                    .iter()
                    .map(|((i, j), g)| GeneratorEntry {
                        cell: [*i, *j],
                        g: g.to_string(),
                    })
                    .collect(),
            },
        )?,
        _ => write!(out, "{}", set.to_text())?,
    }
    Ok(EXIT_OK)
}

/// Outcome of one family of cross-checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub comparisons: usize,
    pub disagreements: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub n_max: usize,
    pub checks: Vec<CheckSummary>,
    pub passed: bool,
}

const MAX_EXAMPLES: usize = 5;

fn summarize(name: &'static str, results: Vec<Option<String>>) -> CheckSummary {
    let failures: Vec<String> = results.iter().flatten().cloned().collect();
    CheckSummary {
        name,
        comparisons: results.len(),
        disagreements: failures.len(),
        examples: failures.into_iter().take(MAX_EXAMPLES).collect(),
    }
}

fn all_perms(n: usize) -> Vec<Permutation> {
    std::iter::successors(Some(Permutation::identity(n)), Permutation::next_lex).collect()
}

/// Runs every cross-check for 2 <= n <= n_max.
pub fn verify_summary(n_max: usize) -> Result<VerifySummary, hessflag_core::Error> {
    let mut pairs = Vec::new();
    let mut hs = Vec::new();
    let mut perms = Vec::new();
    for n in 2..=n_max {
        for h in enumerate_hess(n)? {
            for w in enumerate_flags(&h)? {
                pairs.push((h.clone(), w));
            }
            hs.push(h);
        }
        perms.extend(all_perms(n));
    }

    let oracle = pairs
        .par_iter()
        .map(|(h, w)| {
            let same = generator_set(w, h)? == conjugated_generators(w, h)?;
            Ok((!same).then(|| format!("w={w} h={h}")))
        })
        .collect::<Result<Vec<_>, hessflag_core::Error>>()?;

    let agreement = pairs
        .par_iter()
        .map(|(h, w)| {
            let strings = !string_heights(w, h)?.is_empty();
            let jacobian = hessflag_core::is_singular_by_jacobian(w, h)?;
            Ok((strings != jacobian).then(|| format!("w={w} h={h}")))
        })
        .collect::<Result<Vec<_>, hessflag_core::Error>>()?;

    let y = perms
        .par_iter()
        .map(|w| {
            let n = w.n();
            let mut results = Vec::new();
            for i in 1..=n {
                for k in 1..=n {
                    if w.inv_at(i) >= w.inv_at(k) {
                        let same = y_subseq(w, i, k)? == y_recursive(w, i, k)?;
                        results.push((!same).then(|| format!("w={w} i={i} k={k}")));
                    }
                }
            }
            Ok(results)
        })
        .collect::<Result<Vec<_>, hessflag_core::Error>>()?
        .into_iter()
        .flatten()
        .collect();

    let normality = hs
        .par_iter()
        .map(|h| Ok((!normality_cross_check(h)?).then(|| format!("h={h}"))))
        .collect::<Result<Vec<_>, hessflag_core::Error>>()?;

    let checks = vec![
        summarize("oracle_equivalence", oracle),
        summarize("jacobian_agreement", agreement),
        summarize("y_formulas", y),
        summarize("normality_cross_check", normality),
    ];
    let passed = checks.iter().all(|c| c.disagreements == 0);
    Ok(VerifySummary {
        n_max,
        checks,
        passed,
    })
}

fn verify(a: &VerifyArgs, unsafe_n: bool, out: &mut dyn Write) -> Outcome {
    check_cap(a.n_max, BATCH_CAP, unsafe_n)?;
    let summary = verify_summary(a.n_max)?;
    match a.format {
        Format::Json => write_json(out, &summary)?,
        Format::Csv => return Err(unsupported(a.format, "verify")),
        Format::Text => {
            writeln!(out, "n <= {}", summary.n_max)?;
            for c in &summary.checks {
                writeln!(
                    out,
                    "{}: {} comparisons, {} disagreements",
                    c.name, c.comparisons, c.disagreements
                )?;
                for e in &c.examples {
                    writeln!(out, "  {e}")?;
                }
            }
            writeln!(out, "{}", if summary.passed { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(if summary.passed {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    })
}
