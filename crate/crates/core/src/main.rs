use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use ratliff_rush::criteria::PullbackData;
use ratliff_rush::family::{family_range, DEFAULT_MAX_N};
use ratliff_rush::limits::{set_scan_bound, SCAN_BOUND_ENV};
use ratliff_rush::notation::{parse_ideal_literal, parse_list};
use ratliff_rush::oracle::{cross_check_arith, random_instances, InstanceBounds};
use ratliff_rush::report::{AnalysisReport, IdealReport, PullbackJson, SemigroupReport};
use ratliff_rush::sweep::{self, SweepConfig};
use ratliff_rush::{Error, NumericalSemigroup, RelativeIdeal, Result};

/// Ratliff-Rush closures, reduction numbers and Cohen-Macaulay tests for
/// ideals of numerical semigroups.
#[derive(Parser, Debug)]
#[command(name = "rrsg", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Render "->" instead of "→" and plain angle brackets.
    #[arg(long, global = true)]
    ascii: bool,
    /// Bound on every integer scan (overrides RRSG_NMAX).
    #[arg(long, global = true, value_name = "N")]
    nmax: Option<i64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Target {
    /// Semigroup generators, e.g. "6,9,11".
    #[arg(long)]
    sgp: Option<String>,
    /// Ideal generators, e.g. "9,11".
    #[arg(long)]
    gens: Option<String>,
    /// Alternatively "9,11 @ 6,9,11".
    literal: Option<String>,
}

impl Target {
    fn ideal(&self) -> Result<RelativeIdeal> {
        let (gens, ambient) = match (&self.literal, &self.sgp, &self.gens) {
            (Some(lit), None, None) => parse_ideal_literal(lit)?,
            (None, Some(s), Some(g)) => (parse_list(g)?, parse_list(s)?),
            _ => {
                return Err(Error::Parse(
                    "give either --sgp and --gens, or a literal \"gens @ sgp\"".into(),
                ))
            }
        };
        RelativeIdeal::new(Arc::new(NumericalSemigroup::new(&ambient)?), &gens)
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Conductor, gaps, Apéry table, blow-up and CM test of a semigroup.
    Semigroup {
        #[arg(long)]
        sgp: Option<String>,
        gens: Option<String>,
    },
    /// Canonical form and basic invariants of an ideal.
    Ideal(Target),
    /// Powers, Ratliff-Rush closures and all criteria for an ideal.
    Rr {
        #[command(flatten)]
        target: Target,
        /// Cross-check closures against the brute-force oracle first.
        #[arg(long)]
        oracle: bool,
    },
    /// The pullback semigroup T = {0} ∪ E and its microinvariants.
    Pullback(Target),
    /// Members n_min..=n_max of the S_n family.
    Family {
        #[arg(default_value_t = 3)]
        n_min: i64,
        n_max: Option<i64>,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        cap: i64,
        #[arg(long)]
        oracle: bool,
    },
    /// Evaluate seeded random instances into a CSV file.
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the library against the oracle on regression and random instances.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

/// Fixed instances always included by `verify`.
const REGRESSION: &[(&[i64], &[i64])] = &[
    (&[6, 9, 11], &[9, 11]),
    (&[4, 5, 11], &[4, 5, 11]),
    (&[4, 5, 6], &[9, 11]),
    (&[4, 5, 7], &[7, 8]),
    (&[6, 11, 15, 31], &[6, 11, 31]),
    (&[1], &[3]),
    (&[2, 3], &[2, 3]),
];

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    println!("{text}");
    Ok(())
}

/// `Ok(false)` signals an internal inconsistency.
fn run(cli: Cli) -> Result<bool> {
    let json = cli.json;
    let ascii = cli.ascii;
    let nmax = cli.nmax;
    match cli.cmd {
        Cmd::Semigroup { sgp, gens } => {
            let text = sgp
                .or(gens)
                .ok_or_else(|| Error::Parse("missing --sgp".into()))?;
            let s = NumericalSemigroup::new(&parse_list(&text)?)?;
            let rep = SemigroupReport::new(&s)?;
            if json {
                print_json(&rep)?;
            } else {
                print!("{}", rep.render(ascii));
            }
            Ok(true)
        }
        Cmd::Ideal(t) => {
            let rep = IdealReport::new(&t.ideal()?)?;
            if json {
                print_json(&rep)?;
            } else {
                print!("{}", rep.render(ascii));
            }
            Ok(true)
        }
        Cmd::Rr { target, oracle } => {
            let rep = AnalysisReport::analyze(&target.ideal()?, oracle)?;
            if json {
                print_json(&rep)?;
            } else {
                print!("{}", rep.render(ascii));
            }
            let breaches = rep.breaches();
            for b in &breaches {
                eprintln!("inconsistency: {b}");
            }
            Ok(breaches.is_empty())
        }
        Cmd::Pullback(t) => {
            let pb = PullbackData::new(&t.ideal()?)?;
            let rep = PullbackJson::from(&pb);
            if json {
                print_json(&rep)?;
            } else {
                let j = ratliff_rush::notation::join;
                println!("T        <{}>", j(&rep.t));
                println!("F gens   {{{}}}", j(&rep.f_gens));
                println!("modulus  {}", rep.modulus);
                println!("Ap(F)    [{}]", j(&rep.apery_f));
                println!("Ap(B(F)) [{}]", j(&rep.apery_bf));
                println!("a        [{}]", j(&rep.a));
                println!("b        [{}]", j(&rep.b));
                println!("h = 1    {}", rep.h_is_one);
            }
            Ok(true)
        }
        Cmd::Family {
            n_min,
            n_max,
            cap,
            oracle,
        } => run_family(n_min, n_max.unwrap_or(n_min), cap, oracle, json, ascii),
        Cmd::Sweep {
            config,
            seed,
            count,
            out,
        } => {
            let mut cfg = match config {
                Some(path) => SweepConfig::from_file(&path)?,
                None => SweepConfig::default(),
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(c) = count {
                cfg.count = c;
            }
            if let Some(o) = out {
                cfg.out = o;
            }
            if nmax.is_some() {
                cfg.nmax = nmax;
            }
            let outcome = sweep::run_to_file(&cfg)?;
            eprintln!(
                "wrote {} rows to {} ({} failed, {} inconsistent)",
                outcome.rows.len(),
                cfg.out.display(),
                outcome.failures,
                outcome.breaches
            );
            Ok(outcome.breaches == 0)
        }
        Cmd::Verify { seed, count } => run_verify(seed, count, json),
    }
}

#[derive(Serialize)]
struct FamilyEntry {
    n: i64,
    checks: Vec<String>,
    report: AnalysisReport,
}

fn run_family(
    n_min: i64,
    n_max: i64,
    cap: i64,
    oracle: bool,
    json: bool,
    ascii: bool,
) -> Result<bool> {
    let mut entries = Vec::new();
    for member in family_range(n_min, n_max, cap)? {
        let report = AnalysisReport::analyze(&member.ideal()?, oracle)?;
        let mut checks = report.breaches();
        let n = member.n;
        if report.rr.r as i64 != n - 1 {
            checks.push(format!("r = {} but expected {}", report.rr.r, n - 1));
        }
        if report.rr.h != 1 || !report.criteria.thm_comp {
            checks.push(format!("h = {} but expected 1", report.rr.h));
        }
        if !member.relations_hold() {
            checks.push("generator relations fail".into());
        }
        if report.pullback.t != member.pullback_gens() {
            checks.push("pullback generators differ from the expected list".into());
        }
        let t = NumericalSemigroup::new(&report.pullback.t)?;
        if !member.hb_minus_a_outside(&t) {
            checks.push("some hb - a lies in T".into());
        }
        entries.push(FamilyEntry { n, checks, report });
    }
    if json {
        print_json(&entries)?;
    } else {
        for e in &entries {
            println!("== n = {} ==", e.n);
            print!("{}", e.report.render(ascii));
            for c in &e.checks {
                println!("CHECK FAILED: {c}");
            }
        }
    }
    Ok(entries.iter().all(|e| e.checks.is_empty()))
}

#[derive(Serialize)]
struct VerifySummary {
    instances: usize,
    mismatches: Vec<String>,
}

fn run_verify(seed: u64, count: usize, json: bool) -> Result<bool> {
    let bounds = InstanceBounds::default();
    let mut cases: Vec<(RelativeIdeal, RelativeIdeal)> = Vec::new();
    for (sgp, gens) in REGRESSION {
        let s = Arc::new(NumericalSemigroup::new(sgp)?);
        let m = RelativeIdeal::new(Arc::clone(&s), s.gens())?;
        cases.push((RelativeIdeal::new(s, gens)?, m));
    }
    for (i, inst) in random_instances(&bounds, seed, count)?.iter().enumerate() {
        let partner = inst.partner(&bounds, seed.wrapping_add(i as u64))?;
        cases.push((inst.build()?, partner));
    }
    let mut mismatches = Vec::new();
    for (e, f) in &cases {
        let rep = AnalysisReport::analyze(e, true)?;
        mismatches.extend(rep.breaches());
        mismatches.extend(cross_check_arith(e, f)?);
    }
    let summary = VerifySummary {
        instances: cases.len(),
        mismatches,
    };
    if json {
        print_json(&summary)?;
    } else {
        println!(
            "verified {} instances, {} mismatches",
            summary.instances,
            summary.mismatches.len()
        );
        for m in &summary.mismatches {
            println!("  {m}");
        }
    }
    Ok(summary.mismatches.is_empty())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let env_bound = std::env::var(SCAN_BOUND_ENV).ok();
    match (cli.nmax, env_bound) {
        (Some(n), _) => set_scan_bound(n),
        (None, Some(v)) => match v.trim().parse() {
            Ok(n) => set_scan_bound(n),
            Err(_) => {
                eprintln!("error: {SCAN_BOUND_ENV} must be an integer, got {v:?}");
                return ExitCode::from(1);
            }
        },
        (None, None) => {}
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
