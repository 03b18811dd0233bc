//! Command-line surface. [`run`] maps a parsed command line to a report
//! whose verdict fixes the exit code: 0 found/verified, 1 none/refuted,
//! 2 budget exhausted or conditional, 3 input error.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::constructions::{
    build_counterexample, build_triple_system_with_method, codegree_histogram, verify_counterexample, Conclusion,
    DesignSpec, VerifyMode,
};
use crate::delta::{complete_semi, find_avd_system, find_sunflower, find_sunflower_through, is_avd, AvdWitness};
use crate::error::{Error, Result};
use crate::extremal::{max_avoiding, parse_rational, stability_scan, ForbiddenConfig};
use crate::hypergraph::Hypergraph;
use crate::intersecting::{
    check_km_codegree_bounds, classify_intersecting, find_nontrivial_subfamily, is_nontrivial, NontrivialCheck,
};
use crate::intersection::extract_homogeneous;
use crate::io::{read_hypergraph, serialize_hypergraph, write_hypergraph};
use crate::outcome::{Budget, SearchOutcome, DEFAULT_NODE_BUDGET};
use crate::report::{Check, CheckVerdict, Report, RunVerdict};
use crate::vertex_set::VertexSet;

#[derive(Debug, Parser)]
#[command(name = "hyperdelta", version, about = "Search and verification for sunflower-type structures in uniform hypergraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Node budget for exhaustive searches.
    #[arg(long, global = true, env = "HYPERDELTA_BUDGET", default_value_t = DEFAULT_NODE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Write the constructed hypergraph to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Size and members of the i-th shadow.
    Shadow {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
    /// Check that edge weights sum to the size of the first shadow.
    WeightCheck { input: PathBuf },
    /// Find s edges forming a sunflower with the given center.
    FindSunflower {
        input: PathBuf,
        /// Comma-separated center vertices (empty for the empty center).
        #[arg(long, default_value = "")]
        center: String,
        #[arg(long)]
        size: usize,
        /// Comma-separated edge that the sunflower must contain.
        #[arg(long)]
        through: Option<String>,
    },
    /// Exact search for an (a,d)-delta-system.
    FindAvd {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<usize>,
        #[arg(long)]
        d: usize,
    },
    /// Complete a semi system (JSON witness) to a full system with the given b.
    CompleteSemi {
        witness: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<usize>,
    },
    /// Test whether the family is d-wise intersecting and non-trivial.
    CheckIntersecting {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        wise: usize,
    },
    /// Exact search for t edges forming a non-trivial d-wise intersecting family.
    FindNontrivial {
        input: PathBuf,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        wise: usize,
    },
    /// Match an intersecting 3-graph (at least 11 edges) to a Kostochka-Mubayi template.
    ClassifyKm { input: PathBuf },
    /// Build a simple triple system with pair multiplicity lambda.
    BuildSteiner {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: usize,
    },
    /// Build a (n,3,m-1) design plus a perfect matching of its complement.
    BuildCounterexample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Verify that the construction has no non-trivial intersecting subfamily of size 3m+1.
    VerifyCounterexample {
        /// Hypergraph to verify; built from --n, --m and --seed when absent.
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
    /// Exact maximum size of a k-graph on [n] avoiding a configuration.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        config: ConfigKind,
        /// Family size for `nontrivial`.
        #[arg(long)]
        t: Option<usize>,
        /// Wise-ness, simplex dimension or system size.
        #[arg(long)]
        d: usize,
        /// Part sizes for `avd`.
        #[arg(long, value_delimiter = ',')]
        a: Vec<usize>,
    },
    /// Vertex of maximum degree and the number of edges missing it.
    StabilityScan {
        input: PathBuf,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        delta: String,
    },
    /// Extract an s-homogeneous subgraph with its certificate.
    HomogeneousExtract {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = crate::intersection::DEFAULT_RESTARTS)]
        restarts: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    DegreeArgument,
    Exhaustive,
    Both,
}

impl From<ModeArg> for VerifyMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::DegreeArgument => VerifyMode::DegreeArgument,
            ModeArg::Exhaustive => VerifyMode::Exhaustive,
            ModeArg::Both => VerifyMode::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConfigKind {
    Nontrivial,
    Simplex,
    Avd,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Shadow { .. } => "shadow",
            Command::WeightCheck { .. } => "weight-check",
            Command::FindSunflower { .. } => "find-sunflower",
            Command::FindAvd { .. } => "find-avd",
            Command::CompleteSemi { .. } => "complete-semi",
            Command::CheckIntersecting { .. } => "check-intersecting",
            Command::FindNontrivial { .. } => "find-nontrivial",
            Command::ClassifyKm { .. } => "classify-km",
            Command::BuildSteiner { .. } => "build-steiner",
            Command::BuildCounterexample { .. } => "build-counterexample",
            Command::VerifyCounterexample { .. } => "verify-counterexample",
            Command::Extremal { .. } => "extremal",
            Command::StabilityScan { .. } => "stability-scan",
            Command::HomogeneousExtract { .. } => "homogeneous-extract",
        }
    }
}

/// Parses `args` (program name first) and runs the command. Argument
/// errors become input-error reports carrying clap's message.
pub fn run_args<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => Report::input_error("arguments", e.to_string()),
    }
}

/// Runs one command on a dedicated thread pool and returns its report.
pub fn run(cli: &Cli) -> Report {
    let name = cli.command.name();
    let start = Instant::now();
    let budget = Budget::new(cli.global.budget);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.global.threads {
        pool = pool.num_threads(t.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return Report::input_error(name, format!("thread pool: {e}")),
    };
    let threads = pool.current_num_threads();
    let mut report = match pool.install(|| dispatch(cli, &budget)) {
        Ok(r) => r,
        Err(e) => Report::input_error(name, e.to_string()),
    };
    report.stats.nodes = budget.used();
    report.stats.elapsed_ms = start.elapsed().as_millis() as u64;
    report.stats.threads = threads;
    if let Some(path) = &cli.global.report {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            report = Report::input_error(name, format!("writing report to {}: {e}", path.display()));
        }
    }
    report
}

fn parse_set(s: &str) -> Result<VertexSet> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(VertexSet::EMPTY);
    }
    let vs = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parameter(format!("{t:?} is not a vertex")))
        })
        .collect::<Result<Vec<u32>>>()?;
    VertexSet::from_vertices(vs)
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn search_verdict<T>(o: &SearchOutcome<T>) -> (RunVerdict, CheckVerdict) {
    match o {
        SearchOutcome::Found(_) => (RunVerdict::Found, CheckVerdict::Found),
        SearchOutcome::NotFound => (RunVerdict::None, CheckVerdict::None),
        SearchOutcome::BudgetExhausted => (RunVerdict::BudgetExhausted, CheckVerdict::BudgetExhausted),
    }
}

fn write_out(path: &Option<PathBuf>, h: &Hypergraph) -> Result<()> {
    if let Some(p) = path {
        write_hypergraph(p, h)?;
    }
    Ok(())
}

fn load(path: &Path) -> Result<Hypergraph> {
    read_hypergraph(path)
}

fn dispatch(cli: &Cli, budget: &Budget) -> Result<Report> {
    let seed = cli.global.seed;
    let name = cli.command.name();
    Ok(match &cli.command {
        Command::Shadow { input, level } => {
            let h = load(input)?;
            let sh = h.shadow(*level)?;
            Report::new(
                name,
                RunVerdict::Verified,
                vec![],
                json!({"level": level, "size": sh.len(), "sets": sh}),
            )
        }
        Command::WeightCheck { input } => {
            let h = load(input)?;
            let total = h.total_weight();
            let per_edge: Vec<String> = h
                .edges()
                .iter()
                .map(|&e| h.edge_weight(e).map(|w| w.to_string()))
                .collect::<Result<_>>()?;
            let shadow = h.shadow(1)?.len();
            let ok = total == num::BigRational::from_integer(shadow.into());
            Report::new(
                name,
                if ok { RunVerdict::Verified } else { RunVerdict::Refuted },
                vec![Check::pass_fail(
                    "weight-identity",
                    ok,
                    "edge weights sum exactly to the size of the first shadow",
                )],
                json!({"total_weight": total.to_string(), "shadow_size": shadow, "edge_weights": per_edge}),
            )
        }
        Command::FindSunflower {
            input,
            center,
            size,
            through,
        } => {
            let h = load(input)?;
            let center = parse_set(center)?;
            let w = match through {
                Some(t) => find_sunflower_through(&h, center, *size, parse_set(t)?)?,
                None => find_sunflower(&h, center, *size)?,
            };
            let found = w.is_some();
            let mut check = Check::new(
                "sunflower",
                if found { CheckVerdict::Found } else { CheckVerdict::None },
                "edges containing the center with pairwise disjoint petals",
            );
            if let Some(w) = &w {
                check = check.with_witness(to_value(w));
            }
            Report::new(
                name,
                if found { RunVerdict::Found } else { RunVerdict::None },
                vec![check],
                to_value(&w),
            )
        }
        Command::FindAvd { input, a, d } => {
            let h = load(input)?;
            let out = find_avd_system(&h, a, *d, budget)?;
            let (rv, cv) = search_verdict(&out);
            let mut checks = Vec::new();
            let mut check = Check::new("avd-search", cv, "exact search for an (a,d)-delta-system");
            if let SearchOutcome::Found(w) = &out {
                check = check.with_witness(to_value(w));
                checks.push(check);
                checks.push(Check::pass_fail(
                    "witness-valid",
                    is_avd(w, *d)?.holds(),
                    "returned witness satisfies the (a,d) definition",
                ));
            } else {
                checks.push(check);
            }
            Report::new(name, rv, checks, json!({"a": a, "d": d, "status": out.status()}))
        }
        Command::CompleteSemi { witness, b } => {
            let text = std::fs::read_to_string(witness)?;
            let w: AvdWitness = serde_json::from_str(&text).map_err(|e| Error::Parse {
                line: e.line(),
                reason: e.to_string(),
            })?;
            let full = complete_semi(&w, b)?;
            let ok = is_avd(&full, b.iter().sum())?.holds();
            Report::new(
                name,
                if ok { RunVerdict::Verified } else { RunVerdict::Refuted },
                vec![Check::pass_fail(
                    "completion-valid",
                    ok,
                    "greedy completion of a semi system is a full (a,b) system",
                )
                .with_witness(to_value(&full))],
                to_value(&full),
            )
        }
        Command::CheckIntersecting { input, wise } => {
            let h = load(input)?;
            let res = is_nontrivial(h.edges(), *wise)?;
            let intersecting = !matches!(res, NontrivialCheck::NotIntersecting { .. });
            let nontrivial = res.holds();
            Report::new(
                name,
                if intersecting { RunVerdict::Verified } else { RunVerdict::Refuted },
                vec![
                    Check::pass_fail("d-wise-intersecting", intersecting, "every d edges share a vertex"),
                    Check::pass_fail("non-trivial", nontrivial, "no vertex lies in every edge"),
                ],
                to_value(&res),
            )
        }
        Command::FindNontrivial { input, size, wise } => {
            let h = load(input)?;
            let out = find_nontrivial_subfamily(&h, *size, *wise, budget)?;
            let (rv, cv) = search_verdict(&out);
            let mut check = Check::new(
                "nontrivial-search",
                cv,
                "exact search for a non-trivial d-wise intersecting subfamily of the given size",
            );
            if let SearchOutcome::Found(w) = &out {
                check = check.with_witness(to_value(w));
            }
            Report::new(
                name,
                rv,
                vec![check],
                json!({"size": size, "wise": wise, "status": out.status()}),
            )
        }
        Command::ClassifyKm { input } => {
            let h = load(input)?;
            let fam = classify_intersecting(&h)?;
            let mut checks = vec![Check::pass_fail(
                "containment",
                h.edges().iter().all(|&e| fam.contains(e)),
                "the relabelled template contains every edge",
            )];
            if fam.tag.codegree_bound(h.len()).is_some() {
                let v = check_km_codegree_bounds(&h, &fam)?;
                checks.push(Check::pass_fail(
                    "codegree-bound",
                    v.holds(),
                    "max pair codegree meets the lower bound attached to the template",
                ));
            }
            let ok = checks.iter().all(|c| c.verdict == CheckVerdict::Pass);
            Report::new(
                name,
                if ok { RunVerdict::Found } else { RunVerdict::Refuted },
                checks,
                to_value(&fam),
            )
        }
        Command::BuildSteiner { n, lambda } => {
            let spec = DesignSpec::new(*n, *lambda)?;
            let (h, method) = build_triple_system_with_method(spec, seed)?;
            write_out(&cli.global.out, &h)?;
            let hist = codegree_histogram(&h);
            let ok = hist.len() == 1 && hist.contains_key(lambda) && h.len() == spec.block_count();
            Report::new(
                name,
                if ok { RunVerdict::Verified } else { RunVerdict::Refuted },
                vec![Check::pass_fail(
                    "pair-codegrees",
                    ok,
                    "every pair of points lies in exactly lambda triples",
                )],
                json!({
                    "n": n, "lambda": lambda, "method": method, "blocks": h.len(),
                    "codegree_histogram": hist, "hypergraph": serialize_hypergraph(&h),
                }),
            )
        }
        Command::BuildCounterexample { n, m } => {
            let (h, rep) = build_counterexample(*n, *m, seed)?;
            write_out(&cli.global.out, &h)?;
            let checks = vec![
                Check::pass_fail(
                    "size",
                    rep.total_size == rep.expected_size,
                    "edge count equals ((m-1)/3) C(n,2) + n/3",
                ),
                Check::pass_fail("max-codegree", rep.max_codegree == *m, "max pair codegree equals m"),
                Check::pass_fail(
                    "codegree-triangles",
                    rep.triangle_decomposition,
                    "pairs of codegree m form n/3 vertex-disjoint triangles",
                ),
            ];
            let ok = checks.iter().all(|c| c.verdict == CheckVerdict::Pass);
            Report::new(
                name,
                if ok { RunVerdict::Verified } else { RunVerdict::Refuted },
                checks,
                json!({"report": rep, "hypergraph": serialize_hypergraph(&h)}),
            )
        }
        Command::VerifyCounterexample { input, n, m, mode } => {
            let h = match (input, n) {
                (Some(p), _) => load(p)?,
                (None, Some(n)) => build_counterexample(*n, *m, seed)?.0,
                (None, None) => {
                    return Err(Error::Parameter("give an input file or --n".into()));
                }
            };
            let rep = verify_counterexample(&h, *m, (*mode).into(), budget)?;
            let mut checks: Vec<Check> = rep
                .checks
                .iter()
                .map(|c| Check::pass_fail(&c.name, c.passed, &c.detail))
                .collect();
            if let Some(s) = &rep.search {
                let cv = match s.status {
                    crate::outcome::SearchStatus::Found => CheckVerdict::Found,
                    crate::outcome::SearchStatus::None => CheckVerdict::None,
                    crate::outcome::SearchStatus::BudgetExhausted => CheckVerdict::BudgetExhausted,
                };
                let mut c = Check::new(
                    "exhaustive-search",
                    cv,
                    "no non-trivial intersecting subfamily with 3m+1 edges",
                );
                if let Some(w) = &s.witness {
                    c = c.with_witness(to_value(w));
                }
                checks.push(c);
            }
            let verdict = match rep.conclusion {
                Conclusion::Verified => RunVerdict::Verified,
                Conclusion::Failed => RunVerdict::Refuted,
                Conclusion::Conditional => RunVerdict::Conditional,
                Conclusion::Inconclusive => RunVerdict::BudgetExhausted,
            };
            Report::new(name, verdict, checks, to_value(&rep))
        }
        Command::Extremal { n, k, config, t, d, a } => {
            let cfg = match config {
                ConfigKind::Nontrivial => ForbiddenConfig::NontrivialIntersecting {
                    t: t.ok_or_else(|| Error::Parameter("--t is required for nontrivial".into()))?,
                    d: *d,
                },
                ConfigKind::Simplex => ForbiddenConfig::Simplex { d: *d },
                ConfigKind::Avd => ForbiddenConfig::AvdSystem { a: a.clone(), d: *d },
            };
            let res = max_avoiding(*n, *k, &cfg, budget)?;
            let checks = vec![
                Check::pass_fail(
                    "star-bound",
                    !res.star_avoids || res.max_size >= res.star_size,
                    "maximum is at least C(n-1,k-1) when the star avoids the configuration",
                ),
                Check::pass_fail("revalidated", res.revalidated, "every extremal family avoids the configuration"),
                Check::pass_fail(
                    "stars-only",
                    res.all_extremal_are_stars,
                    "every extremal family containing {1..k} is a star",
                ),
            ];
            let verdict = if !res.exact {
                RunVerdict::BudgetExhausted
            } else if res.revalidated {
                RunVerdict::Verified
            } else {
                RunVerdict::Refuted
            };
            Report::new(name, verdict, checks, to_value(&res))
        }
        Command::StabilityScan { input, epsilon, delta } => {
            let h = load(input)?;
            let rep = stability_scan(&h, &parse_rational(epsilon)?, &parse_rational(delta)?)?;
            Report::new(
                name,
                if rep.within_allowance { RunVerdict::Verified } else { RunVerdict::Refuted },
                vec![Check::pass_fail(
                    "misses-within-allowance",
                    rep.within_allowance,
                    "edges missing the top vertex number at most delta n^(k-1)",
                )],
                to_value(&rep),
            )
        }
        Command::HomogeneousExtract { input, s, restarts } => {
            let h = load(input)?;
            let cert = extract_homogeneous(&h, *s, seed, *restarts)?;
            let valid = crate::intersection::is_homogeneous(&cert.subgraph, *s, &cert.partition)?
                .certificate()
                .is_some();
            let bound = cert.rank_shadow_bound_holds();
            let closed = cert.pattern.is_closed_under_intersection();
            let checks = vec![
                Check::pass_fail("homogeneous", valid, "extracted subgraph satisfies all four homogeneity conditions"),
                Check::pass_fail("rank-shadow-bound", bound, "|H*| <= |shadow_{k-r}(H*)|"),
                Check::pass_fail("pattern-closed", closed, "pattern is closed under intersection"),
            ];
            let ok = valid && bound && closed;
            Report::new(
                name,
                if ok { RunVerdict::Verified } else { RunVerdict::Refuted },
                checks,
                json!({"size": cert.subgraph.len(), "rank": cert.rank(), "certificate": cert}),
            )
        }
    })
}
