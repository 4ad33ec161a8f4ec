//! chowpoly: Chow polynomials, ab-indexes, and identity verification for
//! graded posets, from files or built-in constructions.
//!
//! Exit codes: 0 success, 1 input error, 2 mathematical disagreement or
//! verification failure.

mod expr;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use chowpoly::braid::{augmented_chow_braid, chow_braid, partition_lattice, PARTITION_GROUND_CAP};
use chowpoly::build::{
    bond_lattice, boolean_lattice, load_graph, load_poset, uniform_matroid_flats,
};
use chowpoly::chow::{
    augmented_chow_by_chains, augmented_chow_by_descents, augmented_chow_by_extab, chow_by_chains,
    chow_by_descents, chow_by_extab,
};
use chowpoly::extab::{
    ab_index, coarse_flag_hp, coarse_flag_series, ext_ab_index, ext_ab_index_truncated,
    ext_ab_via_labeling, omega_identity_check, truncation_identity_check,
};
use chowpoly::rlabel::check_r_labeling;
use chowpoly::{ABPolynomial, EdgeLabeling, Error, GradedPoset, IntPolynomial};

#[derive(Parser)]
#[command(
    name = "chowpoly",
    version,
    about = "Chow polynomials of graded posets, three ways, with cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the (augmented) Chow polynomial of a poset
    Chow(ChowArgs),
    /// Compute ab-index variants, optionally evaluated at polynomial values
    Abindex(AbindexArgs),
    /// Run labeling and identity verification suites
    Verify(VerifyArgs),
    /// Coarse flag Hilbert-Poincare series, optionally specialized
    Cfhp(CfhpArgs),
}

/// Exactly one input source.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Poset JSON file (elements, covers, optional labels)
    #[arg(long, value_name = "FILE")]
    poset: Option<PathBuf>,
    /// Partition lattice of the given rank, with its merge labeling
    #[arg(long, value_name = "N")]
    braid: Option<usize>,
    /// Boolean lattice of the given rank, with added-element labels
    #[arg(long, value_name = "N")]
    boolean: Option<usize>,
    /// Uniform matroid flats, as "K,M"
    #[arg(long, value_name = "K,M")]
    uniform: Option<String>,
    /// Graph JSON file; builds the bond lattice with merge labels
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Chains,
    Descents,
    Extab,
    Formula,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Chains => "chains",
            Method::Descents => "descents",
            Method::Extab => "extab",
            Method::Formula => "formula",
            Method::All => "all",
        }
    }
}

#[derive(Args)]
struct ChowArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Augmented polynomial (chains need not start at the bottom)
    #[arg(long)]
    augmented: bool,
    /// Algorithm; "all" cross-checks every applicable one
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    /// Also report the gamma vector
    #[arg(long)]
    gamma: bool,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AbindexArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Poincare-extended index (coefficients in y)
    #[arg(long, conflicts_with = "truncated")]
    extended: bool,
    /// Extended index with the leading letter deleted
    #[arg(long)]
    truncated: bool,
    /// Evaluate at "Y,A,B" (polynomial expressions in one variable)
    #[arg(long, value_name = "Y,A,B", allow_hyphen_values = true)]
    eval: Option<String>,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Rlabeling,
    Identities,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Rlabeling => "rlabeling",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Which checks to run
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CfhpArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Evaluate the series at "Y,T" and divide exactly
    #[arg(long, value_name = "Y,T", allow_hyphen_values = true)]
    eval: Option<String>,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

/// Input error (exit 1) or mathematical failure (exit 2).
enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::NonzeroRemainder => Failure::Math(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Input(s)
    }
}

/// A resolved input. Braid ranks whose lattice would exceed the ground-set
/// cap carry no poset; only the closed-form method applies to them.
struct Source {
    describe: String,
    poset: Option<GradedPoset>,
    labeling: Option<EdgeLabeling>,
    braid_rank: Option<usize>,
}

impl Source {
    fn require_poset(&self) -> Result<&GradedPoset, Failure> {
        self.poset.as_ref().ok_or_else(|| {
            Failure::Input(format!(
                "{} is too large to build explicitly (ground-set cap {}); \
                 only `chow --method formula` applies",
                self.describe, PARTITION_GROUND_CAP
            ))
        })
    }
}

fn resolve_source(args: &SourceArgs) -> Result<Source, Failure> {
    if let Some(path) = &args.poset {
        let (poset, labeling) = load_poset(path)?;
        return Ok(Source {
            describe: format!("poset file {}", path.display()),
            poset: Some(poset),
            labeling,
            braid_rank: None,
        });
    }
    if let Some(n) = args.braid {
        let (poset, labeling) = if n < PARTITION_GROUND_CAP {
            let (p, l) = partition_lattice(n)?;
            (Some(p), Some(l))
        } else {
            (None, None)
        };
        return Ok(Source {
            describe: format!("braid rank {n}"),
            poset,
            labeling,
            braid_rank: Some(n),
        });
    }
    if let Some(n) = args.boolean {
        let (poset, labeling) = boolean_lattice(n)?;
        return Ok(Source {
            describe: format!("boolean rank {n}"),
            poset: Some(poset),
            labeling: Some(labeling),
            braid_rank: None,
        });
    }
    if let Some(text) = &args.uniform {
        let (k, m) = parse_uniform(text)?;
        let (poset, labeling) = uniform_matroid_flats(k, m)?;
        return Ok(Source {
            describe: format!("uniform matroid k={k} m={m}"),
            poset: Some(poset),
            labeling: Some(labeling),
            braid_rank: None,
        });
    }
    let path = args.graph.as_ref().expect("clap enforces one source");
    let graph = load_graph(path)?;
    let (poset, labeling) = bond_lattice(&graph)?;
    Ok(Source {
        describe: format!(
            "graph file {} ({} vertices, {} edges)",
            path.display(),
            graph.vertices(),
            graph.n_edges()
        ),
        poset: Some(poset),
        labeling: Some(labeling),
        braid_rank: None,
    })
}

fn parse_uniform(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Input(format!("--uniform expects \"K,M\", got {text:?}"));
    let (k, m) = text.split_once(',').ok_or_else(bad)?;
    Ok((
        k.trim().parse::<usize>().map_err(|_| bad())?,
        m.trim().parse::<usize>().map_err(|_| bad())?,
    ))
}

fn poly_json(p: &IntPolynomial) -> serde_json::Value {
    serde_json::to_value(p).expect("polynomial serialization is infallible")
}

fn cmd_chow(args: &ChowArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let source = resolve_source(&args.source)?;

    let mut runs: Vec<(&'static str, IntPolynomial)> = Vec::new();
    let mut notes: Vec<String> = Vec::new();

    let run_one = |m: Method,
                   notes: &mut Vec<String>|
     -> Result<Option<(&'static str, IntPolynomial)>, Failure> {
        let out = match m {
            Method::Chains => {
                let p = source.require_poset()?;
                let poly = if args.augmented {
                    augmented_chow_by_chains(p)
                } else {
                    chow_by_chains(p)
                };
                Some(("chains", poly))
            }
            Method::Extab => {
                let p = source.require_poset()?;
                let poly = if args.augmented {
                    augmented_chow_by_extab(p)?
                } else {
                    chow_by_extab(p)?
                };
                Some(("extab", poly))
            }
            Method::Descents => {
                let p = source.require_poset()?;
                let l = source.labeling.as_ref().ok_or_else(|| {
                    Failure::Input("the descent method needs a labeled source".into())
                })?;
                if let Some(v) = check_r_labeling(p, l)? {
                    if args.method == Method::All {
                        notes.push(format!(
                            "descent method skipped: labeling is not an R-labeling ({v})"
                        ));
                        return Ok(None);
                    }
                    return Err(Failure::Input(format!(
                        "the descent method needs an R-labeling, but {v}"
                    )));
                }
                let poly = if args.augmented {
                    augmented_chow_by_descents(p, l)?
                } else {
                    chow_by_descents(p, l)?
                };
                Some(("descents", poly))
            }
            Method::Formula => {
                let n = source.braid_rank.ok_or_else(|| {
                    Failure::Input("the closed-form method only applies to --braid sources".into())
                })?;
                let poly = if args.augmented {
                    augmented_chow_braid(n)?
                } else {
                    chow_braid(n)?
                };
                Some(("formula", poly))
            }
            Method::All => unreachable!("expanded before dispatch"),
        };
        Ok(out)
    };

    match args.method {
        Method::All => {
            if source.poset.is_some() {
                runs.extend(run_one(Method::Chains, &mut notes)?);
                if source.labeling.is_some() {
                    runs.extend(run_one(Method::Descents, &mut notes)?);
                }
                runs.extend(run_one(Method::Extab, &mut notes)?);
            } else if source.braid_rank.is_some() {
                notes.push(format!(
                    "lattice methods skipped: ground set exceeds the cap of {PARTITION_GROUND_CAP}"
                ));
            }
            if source.braid_rank.is_some() {
                runs.extend(run_one(Method::Formula, &mut notes)?);
            }
            if runs.is_empty() {
                return Err(Failure::Input(format!(
                    "no method applies to {}",
                    source.describe
                )));
            }
        }
        m => runs.extend(run_one(m, &mut notes)?),
    }

    // agreement means identical coefficient vectors, nothing weaker
    let methods_used: Vec<&'static str> = runs.iter().map(|(name, _)| *name).collect();
    let cross_check = if args.method != Method::All {
        "not-requested".to_string()
    } else if runs.len() == 1 {
        "skipped: only one method applies".to_string()
    } else {
        let (first_name, first) = &runs[0];
        match runs.iter().find(|(_, p)| p != first) {
            Some((name, p)) => format!("fail: {first_name} gives {first}, {name} gives {p}"),
            None => "pass".to_string(),
        }
    };
    let disagreed = cross_check.starts_with("fail");

    let polynomial = runs[0].1.clone();
    let which = if args.augmented {
        "augmented chow"
    } else {
        "chow"
    };

    let gamma = if args.gamma {
        let center = polynomial.degree().unwrap_or(0);
        Some(
            polynomial
                .gamma_vector(center)
                .map_err(|e| Failure::Math(format!("gamma extraction failed: {e}")))?,
        )
    } else {
        None
    };

    if args.json {
        let report = json!({
            "command": "chow",
            "input": source.describe,
            "augmented": args.augmented,
            "method": args.method.name(),
            "methods_run": methods_used,
            "polynomial": poly_json(&polynomial),
            "display": polynomial.to_string(),
            "gamma": gamma.as_ref().map(|g| serde_json::to_value(g).unwrap()),
            "notes": notes,
            "cross_check": cross_check,
            "wall_ms": start.elapsed().as_millis(),
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("input: {}", source.describe);
        println!("{which} polynomial: {polynomial}");
        if let Some(g) = &gamma {
            let entries: Vec<String> = g.gammas.iter().map(|v| v.to_string()).collect();
            println!(
                "gamma: [{}] about degree {}",
                entries.join(", "),
                g.center_degree
            );
        }
        for note in &notes {
            println!("note: {note}");
        }
        println!("cross-check: {cross_check} ({})", methods_used.join(", "));
    }

    if disagreed {
        Err(Failure::Math(format!("methods disagree: {cross_check}")))
    } else {
        Ok(())
    }
}

fn cmd_abindex(args: &AbindexArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let source = resolve_source(&args.source)?;
    let poset = source.require_poset()?;

    let (variant, index): (&str, ABPolynomial) = if args.truncated {
        ("truncated", ext_ab_index_truncated(poset)?)
    } else if args.extended {
        ("extended", ext_ab_index(poset))
    } else {
        ("plain", ab_index(poset))
    };

    let evaluation = match &args.eval {
        Some(text) => {
            let values = expr::parse_poly_list(text, 3)?;
            Some(index.evaluate(&values[0], &values[1], &values[2]))
        }
        None => None,
    };

    if args.json {
        let report = json!({
            "command": "abindex",
            "input": source.describe,
            "variant": variant,
            "index": serde_json::to_value(&index).expect("index serialization is infallible"),
            "display": index.to_string(),
            "evaluation": evaluation.as_ref().map(poly_json),
            "evaluation_display": evaluation.as_ref().map(|p| p.to_string()),
            "wall_ms": start.elapsed().as_millis(),
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("input: {}", source.describe);
        println!("{variant} ab-index: {index}");
        if let Some(value) = &evaluation {
            println!("evaluation: {value}");
        }
    }
    Ok(())
}

enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

struct Check {
    name: &'static str,
    status: CheckStatus,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        status: if pass {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail: detail.into(),
    }
}

fn skipped(name: &'static str, why: impl Into<String>) -> Check {
    Check {
        name,
        status: CheckStatus::Skipped,
        detail: why.into(),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let source = resolve_source(&args.source)?;
    let poset = source.require_poset()?;
    let n = poset.rank();

    if args.suite == Suite::Rlabeling && source.labeling.is_none() {
        return Err(Failure::Input(
            "the rlabeling suite needs a labeled source".into(),
        ));
    }

    let r_status = match &source.labeling {
        Some(l) => Some(check_r_labeling(poset, l)?),
        None => None,
    };
    let r_ok = matches!(r_status, Some(None));

    let mut checks: Vec<Check> = Vec::new();

    if args.suite != Suite::Identities {
        match &r_status {
            None => checks.push(skipped("r-labeling", "source has no labeling")),
            Some(None) => checks.push(check(
                "r-labeling",
                true,
                "every interval has exactly one weakly increasing chain",
            )),
            Some(Some(v)) => checks.push(check("r-labeling", false, v.to_string())),
        }

        match (&source.labeling, r_ok) {
            (None, _) => checks.push(skipped("labeling-expansion", "source has no labeling")),
            (Some(_), false) => checks.push(skipped(
                "labeling-expansion",
                "labeling is not an R-labeling",
            )),
            (Some(l), true) => {
                let pass = ext_ab_via_labeling(poset, l)? == ext_ab_index(poset);
                checks.push(check(
                    "labeling-expansion",
                    pass,
                    "signed label words reproduce the chain-sum extended index",
                ));
            }
        }
    }

    if args.suite != Suite::Rlabeling {
        checks.push(check(
            "omega-substitution",
            omega_identity_check(poset),
            "omega applied to the ab-index gives the extended index",
        ));

        if n == 0 {
            checks.push(skipped(
                "truncation-factorization",
                "rank-0 poset has no truncation",
            ));
        } else {
            checks.push(check(
                "truncation-factorization",
                truncation_identity_check(poset)?,
                "b times the truncated index matches the bottom-anchored sum",
            ));
        }

        let x = IntPolynomial::x();
        let minus_x = x.neg();
        let one = IntPolynomial::one();
        let shrink = one.sub(&x).pow(n);
        let chow = chow_by_chains(poset);
        let augmented = augmented_chow_by_chains(poset);

        let mut eval_ok =
            ext_ab_index(poset).evaluate(&minus_x, &one, &x) == shrink.mul(&augmented);
        if n > 0 {
            eval_ok = eval_ok
                && ext_ab_index_truncated(poset)?.evaluate(&minus_x, &one, &x) == shrink.mul(&chow);
        }
        checks.push(check(
            "chow-evaluation",
            eval_ok,
            "index evaluations at (-x, 1, x) recover both polynomials",
        ));

        if n == 0 {
            checks.push(skipped("cfhp-specialization", "rank-0 poset has no series"));
        } else {
            let (num, den) = coarse_flag_hp(poset, &minus_x, &x)?;
            checks.push(check(
                "cfhp-specialization",
                num == chow.mul(&den),
                "series numerator at (-x, x) equals the polynomial times the denominator",
            ));
        }

        let mut methods_ok =
            chow_by_extab(poset)? == chow && augmented_chow_by_extab(poset)? == augmented;
        let mut scope = "chains, extab".to_string();
        if let (Some(l), true) = (&source.labeling, r_ok) {
            methods_ok = methods_ok
                && chow_by_descents(poset, l)? == chow
                && augmented_chow_by_descents(poset, l)? == augmented;
            scope.push_str(", descents");
        }
        if let Some(rank) = source.braid_rank {
            methods_ok =
                methods_ok && chow_braid(rank)? == chow && augmented_chow_braid(rank)? == augmented;
            scope.push_str(", formula");
        }
        checks.push(check("method-agreement", methods_ok, scope));
    }

    let failed: Vec<&'static str> = checks
        .iter()
        .filter(|c| matches!(c.status, CheckStatus::Fail))
        .map(|c| c.name)
        .collect();

    if args.json {
        let report = json!({
            "command": "verify",
            "input": source.describe,
            "suite": args.suite.name(),
            "checks": checks.iter().map(|c| json!({
                "name": c.name,
                "status": match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Skipped => "skipped",
                },
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "failed": failed.len(),
            "wall_ms": start.elapsed().as_millis(),
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("input: {}", source.describe);
        for c in &checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skipped",
            };
            println!("{:<24} {status:<8} {}", c.name, c.detail);
        }
    }

    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Math(format!(
            "verification failed: {}",
            failed.join(", ")
        )))
    }
}

fn cmd_cfhp(args: &CfhpArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let source = resolve_source(&args.source)?;
    let poset = source.require_poset()?;
    let series = coarse_flag_series(poset)?;

    let numerator_display: String = series
        .numerator_t_coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let coeff = c.to_string_with_var("y");
            match k {
                0 => coeff,
                1 => format!("({coeff}) t"),
                _ => format!("({coeff}) t^{k}"),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ");
    let denominator_display = format!("(1 - t)^{}", series.denominator_power);

    // at (y, t) = (-x, x) the quotient must be the chain-sum polynomial
    let mut evaluation = None;
    let mut agreement: Option<bool> = None;
    if let Some(text) = &args.eval {
        let values = expr::parse_poly_list(text, 2)?;
        let (y_val, t_val) = (&values[0], &values[1]);
        let (numerator, denominator) = coarse_flag_hp(poset, y_val, t_val)?;
        let quotient = numerator.exact_div(&denominator).map_err(|e| {
            Failure::Input(format!(
                "series does not specialize to a polynomial at {text:?}: {e}"
            ))
        })?;
        if *y_val == IntPolynomial::x().neg() && *t_val == IntPolynomial::x() {
            agreement = Some(quotient == chow_by_chains(poset));
        }
        evaluation = Some((numerator, denominator, quotient));
    }

    if args.json {
        let report = json!({
            "command": "cfhp",
            "input": source.describe,
            "numerator_t_coeffs": series.numerator_t_coeffs.iter().map(poly_json).collect::<Vec<_>>(),
            "denominator_power": series.denominator_power,
            "display": format!("({numerator_display}) / {denominator_display}"),
            "evaluation": evaluation.as_ref().map(|(num, den, q)| json!({
                "numerator": poly_json(num),
                "denominator": poly_json(den),
                "quotient": poly_json(q),
                "quotient_display": q.to_string(),
            })),
            "chow_agreement": agreement,
            "wall_ms": start.elapsed().as_millis(),
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("input: {}", source.describe);
        println!("numerator: {numerator_display}");
        println!("denominator: {denominator_display}");
        if let Some((_, _, quotient)) = &evaluation {
            println!("specialization: {quotient}");
        }
        if let Some(ok) = agreement {
            println!("chow agreement: {}", if ok { "pass" } else { "FAIL" });
        }
    }

    if agreement == Some(false) {
        return Err(Failure::Math(
            "(-x, x) specialization disagrees with the chain-sum polynomial".into(),
        ));
    }
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(value) = std::env::var("CHOW_THREADS") {
        let threads: usize = value.parse().map_err(|_| {
            Failure::Input(format!(
                "CHOW_THREADS must be a positive integer, got {value:?}"
            ))
        })?;
        if threads == 0 {
            return Err(Failure::Input(
                "CHOW_THREADS must be a positive integer".into(),
            ));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Input(format!("thread pool setup failed: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Chow(args) => cmd_chow(args),
        Command::Abindex(args) => cmd_abindex(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Cfhp(args) => cmd_cfhp(args),
    });

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Math(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
