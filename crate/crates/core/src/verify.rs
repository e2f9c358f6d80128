//! Reproducible experiments that check the threshold theorems on concrete
//! instances.
//!
//! Every harness returns a [`Report`] whose `params` are enough to rerun it
//! ([`replay`]). Randomized harnesses derive one child seed per trial, run
//! trials in parallel, and aggregate only counts and the lowest-index
//! counterexample, so results do not depend on scheduling. Every instance a
//! harness touches is also run through the `k`-partite shadow inequality.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coloring::{enumerate_classes, is_proper, uniqueness, Coloring, Uniqueness};
use crate::constructions::{
    build_construction, build_nested_sunflowers, complete_kpartite, derive_seed, part_coloring,
    random_composition, random_kpartite, sample_kpartite_above, sample_kpartite_above_level,
    Construction, ConstructionSpec,
};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{self, from_int, ratio};
use crate::report::Report;
use crate::thresholds::{self, binom, branch_values, ffk_from_sizes, phi, Branch};
use crate::{Rational, Vertex};

/// Attempts at drawing a part-size vector whose complete `k`-partite graph
/// meets the bound, per trial.
const MAX_DRAWS: usize = 1000;

/// Checks the shadow inequality for every level `i` with `witness` as the
/// partiteness certificate. Returns the number of tight levels.
fn piggyback_ffk(report: &mut Report, h: &Hypergraph, witness: &Coloring) -> usize {
    let r = h.r();
    if r < 2 || witness.k() < r {
        return 0;
    }
    debug_assert!(is_proper(h, witness));
    let sizes = h.shadow_sizes();
    let mut tight = 0;
    for i in 1..r {
        let o = ffk_from_sizes(witness.k(), r, i, sizes[0], sizes[i]).expect("levels are in range");
        if !o.holds() {
            report.counterexample(format!("shadow inequality fails at i = {i}: {} > {}", o.lhs, o.rhs), h);
        }
        tight += o.is_tight() as usize;
    }
    tight
}

fn codegree(h: &Hypergraph) -> usize {
    h.min_positive_codegree().expect("r >= 2").unwrap_or(0)
}

fn expected_codegree(k: usize, r: usize, alpha: i64, m: usize) -> usize {
    match alpha {
        1 => (k - r + 1) * m,
        _ => (3 * k - 3 * r + 1) * m,
    }
}

/// Shared checks on a construction: no isolated vertices, both colorings
/// proper and inequivalent, at least two classes found by enumeration.
fn check_construction_basics(report: &mut Report, c: &Construction) {
    let h = &c.hypergraph;
    report.measure("n", h.n());
    report.measure("edges", h.len());
    report.check(h.n() == c.spec.n(), || format!("n = {} but (k-2)|V_1| + 4m = {}", h.n(), c.spec.n()));
    report.check(!h.has_isolated(), || "construction has an isolated vertex".into());
    report.check(is_proper(h, &c.psi1), || "psi1 is not proper".into());
    report.check(is_proper(h, &c.psi2), || "psi2 is not proper".into());
    report.check(!c.psi1.is_equivalent(&c.psi2).unwrap(), || "psi1 and psi2 are equivalent".into());
    let classes = enumerate_classes(h, c.spec.k, Some(2)).len();
    report.measure("classes_found", classes);
    report.check(classes >= 2, || format!("only {classes} coloring class found"));
    piggyback_ffk(report, h, &c.psi1);
}

/// The `α ∈ {1, 3}` construction has minimum positive codegree exactly
/// `(k-r+1)m` resp. `(3k-3r+1)m`, ratio to `n` exactly the matching branch
/// value, and at least two coloring classes.
pub fn verify_construction(k: usize, r: usize, alpha: i64, m: usize) -> Result<Report> {
    if alpha != 1 && alpha != 3 {
        return Err(Error::param(format!("alpha must be 1 or 3, got {alpha}")));
    }
    let spec = ConstructionSpec::with_integer_alpha(k, r, alpha, m)?;
    let c = build_construction(&spec)?;
    let mut report = Report::new("construction")
        .with_param("k", k)
        .with_param("r", r)
        .with_param("alpha", alpha)
        .with_param("m", m);
    check_construction_basics(&mut report, &c);

    let delta = codegree(&c.hypergraph);
    let expected = expected_codegree(k, r, alpha, m);
    let measured = ratio(delta as i64, c.hypergraph.n() as i64);
    let (below, above) = branch_values::<Rational>(k, r);
    let branch = if alpha == 1 { below } else { above };
    report.measure("min_codegree", delta);
    report.measure("expected_codegree", expected);
    report.measure("ratio", &measured);
    report.measure("branch_value", &branch);
    report.check(delta == expected, || format!("min codegree {delta} != {expected}"));
    report.check(measured == branch, || {
        format!("ratio {} != branch value {}", rational::format(&measured), rational::format(&branch))
    });
    report.conclude();
    Ok(report)
}

/// The binding construction meets the threshold with equality and is still
/// not uniquely colorable, so the strict inequality cannot be relaxed. The
/// other construction's ratio is recorded without a claim.
pub fn verify_boundary(k: usize, r: usize, m: usize) -> Result<Report> {
    let threshold: Rational = phi(k, r)?;
    let branch = Branch::of(k, r);
    let alpha = branch.alpha();
    let c = build_construction(&ConstructionSpec::with_integer_alpha(k, r, alpha, m)?)?;
    let mut report = Report::new("boundary").with_param("k", k).with_param("r", r).with_param("m", m);
    report.measure("binding_alpha", alpha);
    report.measure("phi", &threshold);
    check_construction_basics(&mut report, &c);

    let h = &c.hypergraph;
    let delta = codegree(h);
    let bound = &threshold * from_int(h.n() as i64);
    report.measure("min_codegree", delta);
    report.measure("phi_times_n", &bound);
    report.check(from_int(delta as i64) == bound, || {
        format!("min codegree {delta} != phi * n = {}", rational::format(&bound))
    });
    let status = uniqueness(h, k);
    report.measure("status", status.as_str());
    report.check(status == Uniqueness::Multiple, || format!("binding construction is {}", status.as_str()));

    let other = 4 - alpha;
    match ConstructionSpec::with_integer_alpha(k, r, other, m).and_then(|s| build_construction(&s)) {
        Ok(oc) => {
            let oh = &oc.hypergraph;
            report.measure("other_alpha", other);
            report.measure("other_ratio", ratio(codegree(oh) as i64, oh.n() as i64));
        }
        Err(e) => report.note(format!("alpha = {other} construction unavailable: {e}")),
    }
    report.conclude();
    Ok(report)
}

/// How [`verify_main_theorem`] chooses instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Seeded draws from the deletion sampler.
    Random { trials: usize, seed: u64 },
    /// Every subgraph of every complete bipartite host; graphs only.
    Exhaustive,
}

struct TrialOutcome {
    index: usize,
    draws: usize,
    instance: Option<Hypergraph>,
    status: Option<Uniqueness>,
    report: Report,
}

/// Merges per-trial sub-reports in index order.
fn aggregate(report: &mut Report, mut outcomes: Vec<TrialOutcome>) -> (usize, usize) {
    outcomes.sort_by_key(|o| o.index);
    let (mut instances, mut unique) = (0, 0);
    let mut redraws = 0;
    for o in outcomes {
        redraws += o.draws.saturating_sub(1);
        if o.instance.is_none() {
            report.failures.extend(o.report.failures);
            continue;
        }
        instances += 1;
        unique += (o.status == Some(Uniqueness::Unique)) as usize;
        report.failures.extend(o.report.failures);
        if report.counterexample.is_none() {
            report.counterexample = o.report.counterexample;
        }
    }
    report.measure("redraws", redraws);
    (instances, unique)
}

/// Every sampled `k`-partite `r`-graph with no isolated vertices and
/// minimum positive codegree above `phi(k, r) · n` is uniquely
/// `k`-colorable.
pub fn verify_main_theorem(k: usize, r: usize, n_max: usize, sampling: Sampling) -> Result<Report> {
    let threshold: Rational = phi(k, r)?;
    if n_max < k {
        return Err(Error::param(format!("n_max = {n_max} is below k = {k}")));
    }
    let mut report = Report::new("main")
        .with_param("k", k)
        .with_param("r", r)
        .with_param("n_max", n_max);
    report.measure("phi", &threshold);
    match sampling {
        Sampling::Exhaustive => {
            if (k, r) != (2, 2) {
                return Err(Error::param("exhaustive mode covers k = r = 2 only"));
            }
            report = report.with_param("mode", "exhaustive");
            exhaustive_bipartite(&mut report, n_max, &threshold);
        }
        Sampling::Random { trials, seed } => {
            report = report.with_param("mode", "random").with_param("trials", trials).with_seed(seed);
            let outcomes: Vec<TrialOutcome> = (0..trials)
                .into_par_iter()
                .map(|t| main_trial(k, r, n_max, &threshold, seed, t))
                .collect();
            let (instances, unique) = aggregate(&mut report, outcomes);
            report.measure("uniquely_colorable", unique);
            report.conclude_over(instances);
        }
    }
    Ok(report)
}

fn main_trial(k: usize, r: usize, n_max: usize, threshold: &Rational, seed: u64, t: usize) -> TrialOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, t as u64));
    let mut sub = Report::new("trial");
    for draw in 1..=MAX_DRAWS {
        let sizes = random_composition(k, n_max, &mut rng).expect("n_max >= k");
        let sampler = sample_kpartite_above(k, r, &sizes, threshold, 1, rng.gen()).expect("valid parameters");
        let Some(h) = sampler.trial(0) else { continue };
        let status = uniqueness(&h, k);
        if status != Uniqueness::Unique {
            sub.counterexample(format!("trial {t}: above-threshold instance is {}", status.as_str()), &h);
        }
        piggyback_ffk(&mut sub, &h, &part_coloring(&sizes));
        return TrialOutcome { index: t, draws: draw, instance: Some(h), status: Some(status), report: sub };
    }
    TrialOutcome { index: t, draws: MAX_DRAWS, instance: None, status: None, report: sub }
}

/// All graphs on `2..=n_max` vertices that are subgraphs of a complete
/// bipartite host, without isolated vertices and with minimum degree above
/// `threshold · n`, must be uniquely 2-colorable.
fn exhaustive_bipartite(report: &mut Report, n_max: usize, threshold: &Rational) {
    let hosts: Vec<(usize, u32)> = (2..=n_max)
        .flat_map(|n| {
            // side A always contains vertex 1; side B must be nonempty
            (0u32..1 << (n - 1)).filter(move |&rest| rest.count_ones() < n as u32 - 1).map(move |rest| (n, rest))
        })
        .collect();
    let outcomes: Vec<(usize, usize, Report)> = hosts
        .par_iter()
        .map(|&(n, rest)| {
            let side_a = |v: usize| v == 0 || rest >> (v - 1) & 1 == 1;
            let host: Vec<[Vertex; 2]> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| side_a(u) != side_a(v))
                .map(|(u, v)| [u as Vertex + 1, v as Vertex + 1])
                .collect();
            let required = rational::strictly_above(&(threshold * from_int(n as i64))).unwrap() as usize;
            let witness = Coloring::new(2, (0..n).map(|v| if side_a(v) { 1 } else { 2 }).collect()).unwrap();
            let mut sub = Report::new("host");
            let (mut instances, mut unique) = (0, 0);
            let mut degree = vec![0usize; n];
            for mask in 0u64..1 << host.len() {
                degree.iter_mut().for_each(|d| *d = 0);
                for (e, [u, v]) in host.iter().enumerate() {
                    if mask >> e & 1 == 1 {
                        degree[*u as usize - 1] += 1;
                        degree[*v as usize - 1] += 1;
                    }
                }
                if degree.iter().any(|&d| d < required.max(1)) {
                    continue;
                }
                let edges = host.iter().enumerate().filter(|(e, _)| mask >> e & 1 == 1).map(|(_, e)| e);
                let g = Hypergraph::new(n, 2, edges).unwrap();
                instances += 1;
                let status = uniqueness(&g, 2);
                if status == Uniqueness::Unique {
                    unique += 1;
                } else {
                    sub.counterexample(format!("graph is {}", status.as_str()), &g);
                }
                piggyback_ffk(&mut sub, &g, &witness);
            }
            (instances, unique, sub)
        })
        .collect();
    let (mut instances, mut unique) = (0, 0);
    for (i, u, sub) in outcomes {
        instances += i;
        unique += u;
        report.failures.extend(sub.failures);
        if report.counterexample.is_none() {
            report.counterexample = sub.counterexample;
        }
    }
    report.measure("uniquely_colorable", unique);
    report.conclude_over(instances);
}

/// (a) For `m ≤ m_max` the `α = 2` three-part construction has minimum
/// vertex degree exactly `2m² = n²/18` and exactly two coloring classes.
/// (b) Sampled 3-partite 3-graphs with minimum vertex degree above `n²/18`
/// are uniquely 3-colorable.
pub fn verify_phi331(m_max: usize, trials: usize, n_max: usize, seed: u64) -> Result<Report> {
    if m_max == 0 {
        return Err(Error::param("m_max must be at least 1"));
    }
    if n_max < 3 {
        return Err(Error::param("n_max must be at least 3"));
    }
    let threshold: Rational = thresholds::phi_331();
    let mut report = Report::new("phi331")
        .with_param("m_max", m_max)
        .with_param("trials", trials)
        .with_param("n_max", n_max)
        .with_seed(seed);
    report.measure("phi", &threshold);

    for m in 1..=m_max {
        let c = build_construction(&ConstructionSpec::with_integer_alpha(3, 3, 2, m)?)?;
        let h = &c.hypergraph;
        let n = h.n();
        let delta = h.min_positive_degree(1)?.unwrap_or(0);
        let target = &threshold * from_int((n * n) as i64);
        let classes = enumerate_classes(h, 3, None).len();
        report.measure(format!("m={m}:min_degree"), delta);
        report.measure(format!("m={m}:classes"), classes);
        report.check(delta == 2 * m * m, || format!("m = {m}: min degree {delta} != 2m^2"));
        report.check(from_int(delta as i64) == target, || {
            format!("m = {m}: min degree {delta} != n^2/18 = {}", rational::format(&target))
        });
        report.check(classes == 2, || format!("m = {m}: {classes} classes, expected 2"));
        piggyback_ffk(&mut report, h, &c.psi1);
    }

    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, t as u64));
            let mut sub = Report::new("trial");
            for draw in 1..=MAX_DRAWS {
                let sizes = random_composition(3, n_max, &mut rng).expect("n_max >= 3");
                let sampler = sample_kpartite_above_level(3, 3, 1, &sizes, &threshold, 1, rng.gen())
                    .expect("valid parameters");
                let Some(h) = sampler.trial(0) else { continue };
                let status = uniqueness(&h, 3);
                if status != Uniqueness::Unique {
                    sub.counterexample(format!("trial {t}: instance is {}", status.as_str()), &h);
                }
                piggyback_ffk(&mut sub, &h, &part_coloring(&sizes));
                return TrialOutcome { index: t, draws: draw, instance: Some(h), status: Some(status), report: sub };
            }
            TrialOutcome { index: t, draws: MAX_DRAWS, instance: None, status: None, report: sub }
        })
        .collect();
    let (instances, unique) = aggregate(&mut report, outcomes);
    report.measure("uniquely_colorable", unique);
    if trials == 0 {
        report.conclude();
    } else {
        report.conclude_over(instances);
    }
    Ok(report)
}

/// Nested quasi-sunflowers on `1..=m` cover every pair, so every proper
/// `m`-coloring is rainbow on all `m` vertices.
pub fn verify_sunflower_fact(r_max: usize, m_max: usize) -> Result<Report> {
    if r_max < 2 {
        return Err(Error::param("r_max must be at least 2"));
    }
    let mut report = Report::new("sunflower").with_param("r_max", r_max).with_param("m_max", m_max);
    let (mut instances, mut pairs) = (0, 0);
    for r in 2..=r_max {
        for m in r..=m_max {
            let h = build_nested_sunflowers(r, m)?;
            instances += 1;
            for u in 1..=m as Vertex {
                for v in u + 1..=m as Vertex {
                    pairs += 1;
                    if !h.pair_covered(u, v)? {
                        report.counterexample(format!("r = {r}, m = {m}: pair {{{u}, {v}}} uncovered"), &h);
                    }
                }
            }
            let classes = enumerate_classes(&h, m, None);
            report.check(!classes.is_empty(), || format!("r = {r}, m = {m}: no proper {m}-coloring"));
            for c in &classes {
                let rainbow = c.class_sizes().iter().all(|&s| s == 1);
                report.check(rainbow, || format!("r = {r}, m = {m}: {:?} repeats a color", c.as_slice()));
            }
            if let Some(c) = classes.first() {
                piggyback_ffk(&mut report, &h, c);
            }
        }
    }
    report.measure("pairs_checked", pairs);
    report.conclude_over(instances);
    Ok(report)
}

/// The `α = 1` construction has positive minimum `i`-degree exactly
/// `C(k-i, r-i) · m^(r-i)`, which equals `C(k-i, r-i) (n/(k+2))^(r-i)`.
pub fn verify_corollary_construction(k: usize, r: usize, i: usize, m: usize) -> Result<Report> {
    let closed: Rational = thresholds::corollary_value(k, r, i)?;
    let c = build_construction(&ConstructionSpec::with_integer_alpha(k, r, 1, m)?)?;
    let h = &c.hypergraph;
    let n = h.n();
    let mut report = Report::new("corollary")
        .with_param("k", k)
        .with_param("r", r)
        .with_param("i", i)
        .with_param("m", m);
    let delta = h.min_positive_degree(i)?.unwrap_or(0);
    let expected = binom(k - i, r - i) * num_bigint::BigUint::from(m).pow((r - i) as u32);
    let scaled = &closed * from_int(n as i64).pow((r - i) as i32);
    report.measure("n", n);
    report.measure("min_degree", delta);
    report.measure("expected", expected.to_string());
    report.measure("corollary_value", &closed);
    report.check(num_bigint::BigUint::from(delta) == expected, || format!("min {i}-degree {delta} != {expected}"));
    report.check(from_int(delta as i64) == scaled, || {
        format!("min {i}-degree {delta} != value * n^(r-i) = {}", rational::format(&scaled))
    });
    piggyback_ffk(&mut report, h, &c.psi1);
    report.conclude();
    Ok(report)
}

/// Shadow inequality on random `k`-partite instances (independent edges
/// and the deletion sampler, alternating), plus tightness on every complete
/// `k`-partite graph with singleton parts for `2 ≤ r ≤ k ≤ 6`.
pub fn verify_ffk(trials: usize, n_max: usize, seed: u64) -> Result<Report> {
    if n_max < 2 {
        return Err(Error::param("n_max must be at least 2"));
    }
    let mut report = Report::new("ffk").with_param("trials", trials).with_param("n_max", n_max).with_seed(seed);
    let k_top = n_max.min(5);
    let outcomes: Vec<(usize, usize, Report)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, t as u64));
            let k = rng.gen_range(2..=k_top);
            let r = rng.gen_range(2..=k);
            let sizes = random_composition(k, n_max, &mut rng).expect("n_max >= k");
            let density: f64 = rng.gen();
            let witness = part_coloring(&sizes);
            let sampled = if t % 2 == 1 {
                let threshold: Rational = phi(k, r).expect("k >= r >= 2");
                sample_kpartite_above(k, r, &sizes, &threshold, 1, rng.gen()).unwrap().trial(0)
            } else {
                None
            };
            let h = match sampled {
                Some(h) => h,
                None => random_kpartite(r, &sizes, density, &mut rng).unwrap().0,
            };
            let mut sub = Report::new("trial");
            piggyback_ffk(&mut sub, &h, &witness);
            (t, r - 1, sub)
        })
        .collect();
    let mut checks = 0;
    for (_, levels, sub) in outcomes {
        checks += levels;
        report.failures.extend(sub.failures);
        if report.counterexample.is_none() {
            report.counterexample = sub.counterexample;
        }
    }

    let (mut singletons, mut tight) = (0, 0);
    for k in 2..=6 {
        for r in 2..=k {
            let (h, witness) = complete_kpartite(r, &vec![1; k])?;
            singletons += r - 1;
            let t = piggyback_ffk(&mut report, &h, &witness);
            tight += t;
            report.check(t == r - 1, || format!("K_{k}^{r}: only {t} of {} levels tight", r - 1));
        }
    }
    report.measure("levels_checked", checks);
    report.measure("singleton_levels", singletons);
    report.measure("singleton_levels_tight", tight);
    report.conclude_over(trials);
    Ok(report)
}

/// A harness together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Experiment {
    Construction { k: usize, r: usize, alpha: i64, m: usize },
    Boundary { k: usize, r: usize, m: usize },
    Main { k: usize, r: usize, n_max: usize, sampling: Sampling },
    Phi331 { m_max: usize, trials: usize, n_max: usize, seed: u64 },
    Sunflower { r_max: usize, m_max: usize },
    Corollary { k: usize, r: usize, i: usize, m: usize },
    Ffk { trials: usize, n_max: usize, seed: u64 },
}

impl Experiment {
    pub fn run(&self) -> Result<Report> {
        match *self {
            Experiment::Construction { k, r, alpha, m } => verify_construction(k, r, alpha, m),
            Experiment::Boundary { k, r, m } => verify_boundary(k, r, m),
            Experiment::Main { k, r, n_max, sampling } => verify_main_theorem(k, r, n_max, sampling),
            Experiment::Phi331 { m_max, trials, n_max, seed } => verify_phi331(m_max, trials, n_max, seed),
            Experiment::Sunflower { r_max, m_max } => verify_sunflower_fact(r_max, m_max),
            Experiment::Corollary { k, r, i, m } => verify_corollary_construction(k, r, i, m),
            Experiment::Ffk { trials, n_max, seed } => verify_ffk(trials, n_max, seed),
        }
    }

    /// Rebuilds the experiment a report came from.
    pub fn from_report(report: &Report) -> Result<Experiment> {
        let p = Params(&report.params);
        let seed = || report.seed.ok_or_else(|| Error::param("report has no seed"));
        Ok(match report.experiment.as_str() {
            "construction" => Experiment::Construction { k: p.get("k")?, r: p.get("r")?, alpha: p.get("alpha")?, m: p.get("m")? },
            "boundary" => Experiment::Boundary { k: p.get("k")?, r: p.get("r")?, m: p.get("m")? },
            "main" => {
                let sampling = match p.text("mode")? {
                    "exhaustive" => Sampling::Exhaustive,
                    _ => Sampling::Random { trials: p.get("trials")?, seed: seed()? },
                };
                Experiment::Main { k: p.get("k")?, r: p.get("r")?, n_max: p.get("n_max")?, sampling }
            }
            "phi331" => Experiment::Phi331 {
                m_max: p.get("m_max")?,
                trials: p.get("trials")?,
                n_max: p.get("n_max")?,
                seed: seed()?,
            },
            "sunflower" => Experiment::Sunflower { r_max: p.get("r_max")?, m_max: p.get("m_max")? },
            "corollary" => Experiment::Corollary { k: p.get("k")?, r: p.get("r")?, i: p.get("i")?, m: p.get("m")? },
            "ffk" => Experiment::Ffk { trials: p.get("trials")?, n_max: p.get("n_max")?, seed: seed()? },
            other => return Err(Error::param(format!("cannot replay experiment `{other}`"))),
        })
    }
}

struct Params<'a>(&'a BTreeMap<String, String>);

impl Params<'_> {
    fn text(&self, key: &str) -> Result<&str> {
        self.0.get(key).map(String::as_str).ok_or_else(|| Error::param(format!("missing parameter `{key}`")))
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let raw = self.text(key)?;
        raw.parse().map_err(|_| Error::param(format!("parameter `{key}` = `{raw}` is malformed")))
    }
}

/// Reruns the experiment described by `report`.
pub fn replay(report: &Report) -> Result<Report> {
    Experiment::from_report(report)?.run()
}
