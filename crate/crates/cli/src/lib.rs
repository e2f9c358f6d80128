//! Command-line front end. [`run`] takes the full argument vector and
//! returns the exit code and both output streams, so it can be tested
//! without spawning a process.
//!
//! Exit codes: 0 on success or a passing report, 1 when a report fails,
//! 2 on usage, file or parameter errors.

pub mod args;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde_json::json;
use thiserror::Error;
use unicolor::coloring::{enumerate_classes, uniqueness, Uniqueness};
use unicolor::constructions::{
    build_construction, build_nested_sunflowers, build_quasi_sunflower, complete_kpartite,
};
use unicolor::thresholds::{self, phase_point, phi_upper, Branch};
use unicolor::verify::{self, Experiment, Sampling};
use unicolor::{hgr, rational, ConstructionSpec, Hypergraph, Rational, Report, Verdict};

use args::{Cli, Command, ConstructArgs, Family, Harness};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    File { path: PathBuf, source: unicolor::Error },

    #[error(transparent)]
    Core(#[from] unicolor::Error),

    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = Output::default();
    if let Err(e) = dispatch(&cli, &mut out) {
        out.code = 2;
        let _ = writeln!(out.stderr, "error: {e}");
    }
    out
}

fn dispatch(cli: &Cli, out: &mut Output) -> Result<(), CliError> {
    match &cli.command {
        Command::Construct(a) => construct(a, cli.json, out),
        Command::Analyze { file, levels } => analyze(&read_hgr(file)?, levels, cli.json, out),
        Command::Colorings { file, k, limit } => colorings(&read_hgr(file)?, *k, *limit, cli.json, out),
        Command::CheckUnique { file, k } => check_unique(&read_hgr(file)?, *k, cli.json, out),
        Command::Threshold { k, r, i } => threshold(*k, *r, *i, cli.json, out),
        Command::Verify { harness, out: path } => {
            let report = harness_report(harness)?;
            emit_report(&report, path.as_deref(), out)
        }
        Command::ProbeConjecture { k, r, i, alphas, m } => {
            let alphas = alphas.iter().map(|a| parse_alpha(a)).collect::<Result<Vec<_>, _>>()?;
            let report = thresholds::conjecture_probe(*k, *r, *i, &alphas, *m)?;
            out.stdout.push_str(&report.to_json());
            out.stdout.push('\n');
            Ok(())
        }
    }
}

fn read_hgr(path: &Path) -> Result<Hypergraph, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    hgr::parse(&text).map_err(|source| CliError::File { path: path.into(), source })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn parse_alpha(text: &str) -> Result<Rational, CliError> {
    rational::parse(text).map_err(|e| CliError::Usage(format!("--alpha `{text}`: {e}")))
}

fn need(value: Option<usize>, flag: &str, family: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--family {family} needs --{flag}")))
}

fn construct(a: &ConstructArgs, as_json: bool, out: &mut Output) -> Result<(), CliError> {
    let mut extra = serde_json::Map::new();
    let (name, h) = match a.family {
        Family::Hkr => {
            let alpha = a.alpha.as_deref().ok_or_else(|| CliError::Usage("--family hkr needs --alpha".into()))?;
            let spec = ConstructionSpec::new(
                need(a.k, "k", "hkr")?,
                need(a.r, "r", "hkr")?,
                parse_alpha(alpha)?,
                need(a.m, "m", "hkr")?,
            )?;
            let c = build_construction(&spec)?;
            extra.insert("alpha".into(), json!(rational::format(&spec.alpha)));
            extra.insert("psi1".into(), json!(c.psi1.as_slice()));
            extra.insert("psi2".into(), json!(c.psi2.as_slice()));
            ("hkr", c.hypergraph)
        }
        Family::Sunflower => {
            ("sunflower", build_quasi_sunflower(need(a.r, "r", "sunflower")?, need(a.m, "m", "sunflower")?)?)
        }
        Family::NestedSunflower => {
            let family = "nested-sunflower";
            ("nested-sunflower", build_nested_sunflowers(need(a.r, "r", family)?, need(a.m, "m", family)?)?)
        }
        Family::CompleteKpartite => {
            if a.sizes.is_empty() {
                return Err(CliError::Usage("--family complete-kpartite needs --sizes".into()));
            }
            let (h, _) = complete_kpartite(need(a.r, "r", "complete-kpartite")?, &a.sizes)?;
            extra.insert("sizes".into(), json!(a.sizes));
            ("complete-kpartite", h)
        }
    };
    let text = hgr::serialize(&h);
    if let Some(path) = &a.out {
        write_file(path, &text)?;
    }
    if as_json {
        let mut doc = json!({ "family": name, "n": h.n(), "r": h.r(), "edges": h.len() });
        doc.as_object_mut().unwrap().extend(extra);
        if a.out.is_none() {
            doc["hgr"] = json!(text);
        }
        out.stdout.push_str(&format!("{doc:#}\n"));
    } else if let Some(path) = &a.out {
        let _ = writeln!(out.stdout, "wrote {}: n = {}, r = {}, edges = {}", path.display(), h.n(), h.r(), h.len());
    } else {
        out.stdout.push_str(&text);
    }
    Ok(())
}

fn analyze(h: &Hypergraph, levels: &[usize], as_json: bool, out: &mut Output) -> Result<(), CliError> {
    let levels: Vec<usize> = if levels.is_empty() { (1..h.r()).collect() } else { levels.to_vec() };
    let mut degrees = BTreeMap::new();
    for &i in &levels {
        degrees.insert(i, h.min_positive_degree(i)?);
    }
    let shadows = h.shadow_sizes();
    if as_json {
        let degrees: BTreeMap<String, Option<usize>> = degrees.iter().map(|(i, d)| (i.to_string(), *d)).collect();
        let doc = json!({
            "n": h.n(),
            "r": h.r(),
            "edges": h.len(),
            "isolated": h.has_isolated(),
            "shadow_sizes": shadows,
            "min_positive_degree": degrees,
        });
        out.stdout.push_str(&format!("{doc:#}\n"));
        return Ok(());
    }
    let s = &mut out.stdout;
    let _ = writeln!(s, "n: {}", h.n());
    let _ = writeln!(s, "r: {}", h.r());
    let _ = writeln!(s, "edges: {}", h.len());
    let _ = writeln!(s, "isolated vertices: {}", h.has_isolated());
    let shadows: Vec<String> = shadows.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(s, "shadow sizes (i = 0..r-1): {}", shadows.join(" "));
    for (i, d) in degrees {
        let d = d.map_or_else(|| "none".to_string(), |d| d.to_string());
        let _ = writeln!(s, "min positive {i}-degree: {d}");
    }
    Ok(())
}

fn colorings(h: &Hypergraph, k: usize, limit: Option<usize>, as_json: bool, out: &mut Output) -> Result<(), CliError> {
    if k == 0 {
        return Err(CliError::Usage("--k must be positive".into()));
    }
    let classes = enumerate_classes(h, k, limit);
    let reps: Vec<&[u32]> = classes.iter().map(|c| c.as_slice()).collect();
    if as_json {
        let doc = json!({ "k": k, "limit": limit, "classes": classes.len(), "representatives": reps });
        out.stdout.push_str(&format!("{doc:#}\n"));
        return Ok(());
    }
    let _ = writeln!(out.stdout, "classes: {}", classes.len());
    for rep in reps {
        let line: Vec<String> = rep.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out.stdout, "{}", line.join(" "));
    }
    Ok(())
}

fn check_unique(h: &Hypergraph, k: usize, as_json: bool, out: &mut Output) -> Result<(), CliError> {
    if k == 0 {
        return Err(CliError::Usage("--k must be positive".into()));
    }
    let status = uniqueness(h, k);
    let unique = status == Uniqueness::Unique;
    if as_json {
        let doc = json!({ "k": k, "unique": unique, "status": status.as_str() });
        out.stdout.push_str(&format!("{doc:#}\n"));
    } else {
        let _ = writeln!(out.stdout, "uniquely {k}-colorable: {unique}");
        let _ = writeln!(out.stdout, "status: {}", status.as_str());
    }
    Ok(())
}

fn threshold(k: usize, r: usize, i: Option<usize>, as_json: bool, out: &mut Output) -> Result<(), CliError> {
    let i = i.unwrap_or(r.saturating_sub(1));
    let bound = phi_upper::<Rational>(k, r, i)?;
    let (value, exact) = if i + 1 == r {
        (thresholds::phi::<Rational>(k, r)?, true)
    } else {
        (bound.value, bound.exact)
    };
    let phase: Rational = phase_point(r);
    let branch = match Branch::of(k, r) {
        Branch::BelowPhase => "(k-r+1)/(k+2)",
        Branch::AbovePhase => "(3k-3r+1)/(3k-2)",
    };
    let known = ((k, r, i) == (3, 3, 1)).then(thresholds::phi_331::<Rational>);
    if as_json {
        let mut doc = json!({
            "k": k,
            "r": r,
            "i": i,
            "value": rational::format(&value),
            "exact": exact,
            "phase_point": rational::format(&phase),
            "binding_branch": branch,
        });
        if let Some(v) = &known {
            doc["known_value"] = json!(rational::format(v));
        }
        out.stdout.push_str(&format!("{doc:#}\n"));
        return Ok(());
    }
    let s = &mut out.stdout;
    if i + 1 == r {
        let _ = writeln!(s, "phi({k}, {r}) = {}", rational::format(&value));
    } else {
        let _ = writeln!(s, "phi_upper({k}, {r}, {i}) = {}", rational::format(&value));
    }
    let _ = writeln!(s, "bound: {}", if exact { "EXACT" } else { "upper bound only" });
    let _ = writeln!(s, "phase point: {}", rational::format(&phase));
    let _ = writeln!(s, "binding branch for (k, r): {branch}");
    if let Some(v) = known {
        let _ = writeln!(s, "known value: {}", rational::format(&v));
    }
    Ok(())
}

fn harness_report(harness: &Harness) -> Result<Report, CliError> {
    let experiment = match *harness {
        Harness::Construction { k, r, alpha, m } => Experiment::Construction { k, r, alpha, m },
        Harness::Boundary { k, r, m } => Experiment::Boundary { k, r, m },
        Harness::Main { k, r, n_max, trials, seed, exhaustive } => {
            let sampling = if exhaustive { Sampling::Exhaustive } else { Sampling::Random { trials, seed } };
            Experiment::Main { k, r, n_max, sampling }
        }
        Harness::Phi331 { m_max, trials, n_max, seed } => Experiment::Phi331 { m_max, trials, n_max, seed },
        Harness::Sunflower { r_max, m_max } => Experiment::Sunflower { r_max, m_max },
        Harness::Corollary { k, r, i, m } => Experiment::Corollary { k, r, i, m },
        Harness::Ffk { trials, n_max, seed } => Experiment::Ffk { trials, n_max, seed },
        Harness::Replay { ref file } => {
            let text = fs::read_to_string(file).map_err(|source| CliError::Io { path: file.clone(), source })?;
            return Ok(verify::replay(&Report::from_json(&text)?)?);
        }
    };
    Ok(experiment.run()?)
}

fn emit_report(report: &Report, counterexample_path: Option<&Path>, out: &mut Output) -> Result<(), CliError> {
    out.stdout.push_str(&report.to_json());
    out.stdout.push('\n');
    if report.verdict == Some(Verdict::Fail) {
        out.code = 1;
        let detail = report.failures.join("\n");
        let _ = writeln!(out.stderr, "FAIL: {detail}");
        if let Some(h) = &report.counterexample {
            match counterexample_path {
                Some(path) => {
                    write_file(path, h)?;
                    let _ = writeln!(out.stderr, "counterexample written to {}", path.display());
                }
                None => out.stderr.push_str(h),
            }
        }
    }
    Ok(())
}
