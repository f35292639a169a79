//! Command-line front end: verify single claims, scan parameter ranges,
//! run the identity and p-adic suites, and check claim files.
//!
//! Exit codes: 0 when every executed verification passed (hypothesis
//! failures inside scans are skipped with a note and do not affect
//! status), 1 when a verification failed or was refused, 2 when an
//! explicitly requested claim fails its hypothesis, 64 for usage errors,
//! 65 for claim-file parse errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qcongr::claims::scan::ScanRange;
use qcongr::claims::{
    builtin, scan, verify, verify_identity, ClaimError, Outcome, Strategy, VerificationReport,
};
use qcongr::dsl::{lower, parse_claims, ClaimSource};
use qcongr::padlim;

#[derive(Parser)]
#[command(
    name = "qcongr",
    about = "Exact verification of q-congruences and their p-adic limits",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Write reports to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for point-evaluation grids and identity specializations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (QCONGR_THREADS overrides; default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Zero the millis field for byte-stable output.
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Clearing,
    PointEval,
    Auto,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Clearing => Strategy::Clearing,
            StrategyArg::PointEval => Strategy::PointEval,
            StrategyArg::Auto => Strategy::Auto,
        }
    }
}

#[derive(Args)]
struct ParamArgs {
    /// Parameter d.
    #[arg(long)]
    d: Option<i64>,
    /// Parameter s (sign, -1 or 1).
    #[arg(long, allow_hyphen_values = true)]
    s: Option<i64>,
    /// Parameter n.
    #[arg(long)]
    n: Option<i64>,
}

impl ParamArgs {
    fn to_map(&self) -> BTreeMap<String, i64> {
        let mut map = BTreeMap::new();
        if let Some(d) = self.d {
            map.insert("d".to_string(), d);
        }
        if let Some(s) = self.s {
            map.insert("s".to_string(), s);
        }
        if let Some(n) = self.n {
            map.insert("n".to_string(), n);
        }
        map
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify a single claim instance.
    Verify {
        /// Claim name (built-in, or from --file).
        claim: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Strategy to use.
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        /// Load the claim from a .qcl file instead of the built-in catalog.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Scan a claim family over parameter ranges.
    Scan {
        /// Claim family name.
        claim: String,
        /// Range for d, e.g. `2..5` or `3`.
        #[arg(long)]
        d: Option<String>,
        /// Values for s, e.g. `-1,1`.
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        /// Smallest n (default 1).
        #[arg(long, default_value_t = 1)]
        n_min: i64,
        /// Largest n.
        #[arg(long)]
        n_max: i64,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        /// Also list inadmissible tuples as HYPOTHESIS_FAIL reports.
        #[arg(long)]
        include_inadmissible: bool,
    },
    /// Run the summation/transformation identity suite.
    Identities {
        /// Comma-separated subset, e.g. `ss-0-0,s-2`.
        #[arg(long)]
        which: Option<String>,
        /// Grid samples per identity instance.
        #[arg(long, default_value_t = 20)]
        samples: i64,
    },
    /// Run the p-adic limit suite.
    Limits {
        /// Van Hamme (H.2) checks for odd primes below the bound.
        #[arg(long)]
        van_hamme: bool,
        /// Quarter-corollary checks for primes p = 3 (mod 4).
        #[arg(long)]
        quarter: bool,
        /// Two-base corollary checks mod p.
        #[arg(long)]
        thm13: bool,
        #[arg(long, default_value_t = 100)]
        p_max: u64,
        #[arg(long, default_value_t = 4)]
        d_max: i64,
    },
    /// Parse claim files and report diagnostics.
    ParseCheck { files: Vec<PathBuf> },
}

fn emit(reports: &[VerificationReport], format: Format, out: &Option<PathBuf>, no_timings: bool) {
    let reports: Vec<VerificationReport> = if no_timings {
        reports.iter().map(|r| r.without_timing()).collect()
    } else {
        reports.to_vec()
    };
    let mut text = String::new();
    match format {
        Format::Json => {
            for r in &reports {
                text.push_str(&r.to_json());
                text.push('\n');
            }
        }
        Format::Csv => {
            text.push_str(VerificationReport::csv_header());
            text.push('\n');
            for r in &reports {
                text.push_str(&r.to_csv_row());
                text.push('\n');
            }
        }
        Format::Pretty => {
            for r in &reports {
                let params = r
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                let mut line = format!(
                    "{:<18} {:<20} {:<12} {}",
                    r.claim, params, r.strategy, r.outcome
                );
                if let Some(residue) = &r.residue {
                    let shown: String = residue.chars().take(120).collect();
                    if shown.chars().count() < residue.chars().count() {
                        line.push_str(&format!("  [{shown}... truncated, full residue in JSON]"));
                    } else {
                        line.push_str(&format!("  [{shown}]"));
                    }
                }
                if !no_timings {
                    line.push_str(&format!("  ({} ms)", r.millis));
                }
                text.push_str(&line);
                text.push('\n');
            }
        }
    }
    match out {
        Some(path) => {
            std::fs::write(path, text).unwrap_or_else(|e| {
                eprintln!("qcongr: cannot write {}: {e}", path.display());
                std::process::exit(74);
            });
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).expect("stdout");
        }
    }
}

/// Exit status from a report set: 1 if anything failed or was refused,
/// 2 if a single explicitly requested claim was inadmissible, else 0.
fn status_of(reports: &[VerificationReport], single: bool) -> ExitCode {
    let mut worst = ExitCode::SUCCESS;
    for r in reports {
        match r.outcome {
            Outcome::Fail | Outcome::NonInvertible => return ExitCode::from(1),
            Outcome::HypothesisFail if single => worst = ExitCode::from(2),
            _ => {}
        }
    }
    worst
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<i64>, String> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range `{text}`"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range `{text}`"))?;
        Ok(lo..=hi)
    } else {
        let v: i64 = text
            .trim()
            .parse()
            .map_err(|_| format!("bad range `{text}`"))?;
        Ok(v..=v)
    }
}

fn parse_list(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|p| p.trim().parse().map_err(|_| format!("bad list `{text}`")))
        .collect()
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("qcongr: {msg}");
    ExitCode::from(64)
}

fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(64);
        }
    };

    let threads = std::env::var("QCONGR_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .or(cli.threads);
    if let Some(t) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build_global();
    }

    match &cli.command {
        Command::Verify {
            claim,
            params,
            strategy,
            file,
        } => {
            let params = params.to_map();
            let built = match file {
                None => builtin(claim, &params),
                Some(path) => {
                    let source = match ClaimSource::from_file(path) {
                        Ok(s) => s,
                        Err(e) => {
                            return usage_error(&format!("cannot read {}: {e}", path.display()))
                        }
                    };
                    let asts = match parse_claims(&source) {
                        Ok(asts) => asts,
                        Err(e) => {
                            eprintln!("qcongr: {e}");
                            return ExitCode::from(65);
                        }
                    };
                    match asts.iter().find(|a| &a.name == claim) {
                        None => {
                            return usage_error(&format!(
                                "claim `{claim}` not found in {}",
                                path.display()
                            ))
                        }
                        Some(ast) => match lower(ast, &params) {
                            Ok(c) => Ok(c),
                            Err(e) => {
                                eprintln!("qcongr: {e}");
                                return ExitCode::from(65);
                            }
                        },
                    }
                }
            };
            let built = match built {
                Ok(c) => c,
                Err(ClaimError::UnknownClaim(name)) => {
                    return usage_error(&format!("unknown claim `{name}`"))
                }
                Err(e) => return usage_error(&e.to_string()),
            };
            match verify(&built, (*strategy).into(), cli.seed) {
                Ok(report) => {
                    let reports = vec![report];
                    emit(&reports, cli.format, &cli.out, cli.no_timings);
                    status_of(&reports, true)
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Scan {
            claim,
            d,
            s,
            n_min,
            n_max,
            strategy,
            include_inadmissible,
        } => {
            let range = ScanRange {
                d: match d {
                    None => None,
                    Some(text) => match parse_range(text) {
                        Ok(r) => Some(r),
                        Err(e) => return usage_error(&e),
                    },
                },
                s: match s {
                    None => None,
                    Some(text) => match parse_list(text) {
                        Ok(v) => Some(v),
                        Err(e) => return usage_error(&e),
                    },
                },
                n: *n_min..=*n_max,
            };
            match scan(claim, &range, (*strategy).into(), cli.seed) {
                Ok(mut reports) => {
                    let skipped = reports
                        .iter()
                        .filter(|r| r.outcome == Outcome::HypothesisFail)
                        .count();
                    if !include_inadmissible {
                        reports.retain(|r| r.outcome != Outcome::HypothesisFail);
                        if skipped > 0 && cli.format == Format::Pretty {
                            eprintln!("qcongr: skipped {skipped} inadmissible tuples");
                        }
                    }
                    emit(&reports, cli.format, &cli.out, cli.no_timings);
                    status_of(&reports, false)
                }
                Err(e) => usage_error(&e.to_string()),
            }
        }
        Command::Identities { which, samples } => {
            let wanted: Option<Vec<String>> = which
                .as_ref()
                .map(|w| w.split(',').map(|s| s.trim().to_string()).collect());
            let want =
                |name: &str| wanted.as_ref().map_or(true, |w| w.iter().any(|x| x == name));
            let mut reports = Vec::new();
            let mut run_id = |name: &str, params: &[(&str, i64)]| {
                let mut map: BTreeMap<String, i64> =
                    params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
                map.insert("samples".to_string(), *samples);
                match verify_identity(name, &map, cli.seed) {
                    Ok(r) => reports.push(r),
                    Err(e) => eprintln!("qcongr: {name}: {e}"),
                }
            };
            if want("ss-0-0") {
                for n in 0..=8 {
                    run_id("ss-0-0", &[("n", n)]);
                }
            }
            if want("ss-0-3") {
                for n in 0..=6 {
                    run_id("ss-0-3", &[("n", n)]);
                }
            }
            if want("ss-0-1") || want("ss-0-4") {
                for d in 2..=6i64 {
                    for n in (3..=45i64).step_by(2) {
                        if (n + 1) % d == 0 {
                            if want("ss-0-1") {
                                run_id("ss-0-1", &[("d", d), ("n", n)]);
                            }
                            if want("ss-0-4") {
                                run_id("ss-0-4", &[("d", d), ("n", n)]);
                            }
                        }
                    }
                }
            }
            if want("ss-0-2") || want("ss-0-5") {
                for d in 1..=5i64 {
                    for n in (3..=45i64).step_by(2) {
                        if (n - 1) % (2 * d) == 0 {
                            if want("ss-0-2") {
                                run_id("ss-0-2", &[("d", d), ("n", n)]);
                            }
                            if want("ss-0-5") {
                                run_id("ss-0-5", &[("d", d), ("n", n)]);
                            }
                        }
                    }
                }
            }
            if want("s-1") {
                run_id("s-1", &[]);
            }
            if want("s-2") {
                run_id("s-2", &[]);
            }
            emit(&reports, cli.format, &cli.out, cli.no_timings);
            status_of(&reports, false)
        }
        Command::Limits {
            van_hamme,
            quarter,
            thm13,
            p_max,
            d_max,
        } => {
            let all = !van_hamme && !quarter && !thm13;
            let mut reports = Vec::new();
            let primes: Vec<u64> = (3..*p_max).filter(|&p| padlim::is_prime(p)).collect();
            if *van_hamme || all {
                for &p in &primes {
                    match padlim::verify_van_hamme(p) {
                        Ok(r) => reports.push(r),
                        Err(e) => eprintln!("qcongr: van-hamme p={p}: {e}"),
                    }
                }
            }
            if *quarter || all {
                for &p in &primes {
                    if p % 4 == 3 {
                        match padlim::verify_quarter_corollary(p) {
                            Ok(r) => reports.push(r),
                            Err(e) => eprintln!("qcongr: quarter p={p}: {e}"),
                        }
                    }
                }
            }
            if *thm13 || all {
                for d in 2..=*d_max {
                    for s in [-1i64, 1] {
                        for &p in &primes {
                            if (p as i64 - s).rem_euclid(2 * d) == 0 {
                                match padlim::verify_thm13_limit(p, d, s) {
                                    Ok(r) => reports.push(r),
                                    Err(e) => eprintln!("qcongr: thm13 p={p} d={d} s={s}: {e}"),
                                }
                            }
                        }
                    }
                }
            }
            emit(&reports, cli.format, &cli.out, cli.no_timings);
            status_of(&reports, false)
        }
        Command::ParseCheck { files } => {
            if files.is_empty() {
                return usage_error("parse-check requires at least one file");
            }
            let mut failed = false;
            for path in files {
                match ClaimSource::from_file(path) {
                    Err(e) => {
                        eprintln!("qcongr: cannot read {}: {e}", path.display());
                        failed = true;
                    }
                    Ok(source) => match parse_claims(&source) {
                        Ok(claims) => {
                            for c in &claims {
                                println!(
                                    "{}: claim {} (params {})",
                                    path.display(),
                                    c.name,
                                    c.params.join(", ")
                                );
                            }
                        }
                        Err(e) => {
                            eprintln!("qcongr: {e}");
                            failed = true;
                        }
                    },
                }
            }
            if failed {
                ExitCode::from(65)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

fn main() -> ExitCode {
    run()
}
