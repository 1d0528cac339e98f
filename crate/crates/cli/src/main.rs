//! Command-line front end: evaluate statistics, apply bijections, encode
//! and decode codes, emit joint distributions, and verify identities.
//!
//! Exit codes: 0 on success (all verifications passing), 1 when a
//! verification fails, 2 on parse or name errors, 3 on a code violating
//! its entry bound, 4 when a size exceeds the cap.

use std::ops::Range;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;

use permstat_core::codes::{self, Code, CodeError};
use permstat_core::dist::{
    self, distribution_range, factorial, DistError, DistPolynomial, Domain, IdentityName,
    VerificationReport, DEFAULT_SIZE_CAP,
};
use permstat_core::perm::Permutation;
use permstat_core::stats::StatDescriptor;

/// Environment variable overriding the default size cap (the `--cap` flag
/// takes precedence over both).
const CAP_ENV_VAR: &str = "PERMSTAT_CAP";

#[derive(Parser)]
#[command(
    name = "permstat",
    version,
    about = "Permutation statistics, coding bijections, and exact distribution checks"
)]
struct Cli {
    /// Emit JSON documents instead of plain text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate statistics of a permutation
    Stat {
        /// Permutation, spaced ("3 1 4 2") or compact ("3142", n <= 9)
        perm: String,
        /// Comma-separated statistic names; k-statistics as "name:k"
        #[arg(long, required = true, value_delimiter = ',')]
        stats: Vec<String>,
    },
    /// Apply a bijection to a permutation
    Bij {
        /// One of: cycle0, cycle0_inv, cycleneg1, cycleneg1_inv, flip, prime
        map: String,
        perm: String,
    },
    /// Encode a permutation as a code, or decode a code
    Code {
        /// One of: inv-encode, inv-decode, maj-encode, maj-decode
        action: String,
        /// A permutation ("3 2 1") or a code ("(0,1,2)"), per the action
        input: String,
        /// Parameter for the maj actions
        #[arg(long)]
        k: Option<usize>,
    },
    /// Joint distribution of a statistic tuple over S_n or codes
    Dist {
        #[arg(long)]
        n: usize,
        /// Comma-separated statistic names; k-statistics as "name:k"
        #[arg(long, required = true, value_delimiter = ',')]
        stats: Vec<String>,
        /// Enumeration domain: perms or codes
        #[arg(long, default_value = "perms")]
        domain: String,
        /// Variable names for the output polynomial (default: stat names)
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        /// Worker threads; the output is independent of this
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Size cap override (flag beats PERMSTAT_CAP beats the default)
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Verify a named identity exhaustively over a range of sizes
    Verify {
        /// Registry name, e.g. prop_ed, pair_k, bij_thm_ii, alg_thm
        identity: String,
        /// Size or inclusive range: "4" or "2..7"
        #[arg(long)]
        n: String,
        /// Parameter or inclusive range, for k-parameterized identities
        #[arg(long)]
        k: Option<String>,
        /// Size cap override (flag beats PERMSTAT_CAP beats the default)
        #[arg(long)]
        cap: Option<usize>,
    },
}

struct Failure {
    exit: u8,
    message: String,
}

impl Failure {
    fn new(exit: u8, message: impl Into<String>) -> Failure {
        Failure {
            exit,
            message: message.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.exit)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Stat { perm, stats } => cmd_stat(&perm, &stats, cli.json),
        Command::Bij { map, perm } => cmd_bij(&map, &perm, cli.json),
        Command::Code { action, input, k } => cmd_code(&action, &input, k, cli.json),
        Command::Dist {
            n,
            stats,
            domain,
            vars,
            threads,
            cap,
        } => cmd_dist(n, &stats, &domain, vars, threads, cap),
        Command::Verify {
            identity,
            n,
            k,
            cap,
        } => cmd_verify(&identity, &n, k.as_deref(), cap, cli.json),
    }
}

fn parse_perm(text: &str) -> Result<Permutation, Failure> {
    Permutation::parse(text).map_err(|e| Failure::new(2, e.to_string()))
}

fn parse_stats(names: &[String]) -> Result<Vec<StatDescriptor>, Failure> {
    names
        .iter()
        .map(|s| StatDescriptor::parse(s).map_err(|e| Failure::new(2, e.to_string())))
        .collect()
}

fn dist_failure(err: DistError) -> Failure {
    let exit = match err {
        DistError::SizeCapExceeded { .. } | DistError::RankSpaceTooLarge { .. } => 4,
        _ => 2,
    };
    Failure::new(exit, err.to_string())
}

/// Resolves the size cap: the flag wins, then the environment variable,
/// then the built-in default.
fn resolve_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_ENV_VAR) {
        Ok(raw) => raw.trim().parse::<usize>().map_err(|_| {
            Failure::new(2, format!("{CAP_ENV_VAR} must be a nonnegative integer, got {raw:?}"))
        }),
        Err(_) => Ok(DEFAULT_SIZE_CAP),
    }
}

fn cmd_stat(perm: &str, stats: &[String], as_json: bool) -> Result<u8, Failure> {
    let sigma = parse_perm(perm)?;
    let descriptors = parse_stats(stats)?;
    for d in &descriptors {
        if d.domain() != permstat_core::stats::StatDomain::Permutations {
            return Err(Failure::new(
                2,
                format!("statistic {d} evaluates on codes, not permutations"),
            ));
        }
    }
    let values: Vec<(String, usize)> = descriptors
        .iter()
        .map(|d| (d.to_string(), d.eval_perm(&sigma)))
        .collect();
    if as_json {
        let items: Vec<_> = values
            .iter()
            .map(|(name, value)| json!({ "name": name, "value": value }))
            .collect();
        println!("{}", json!({ "input": sigma.to_string(), "stats": items }));
    } else {
        for (name, value) in values {
            println!("{name} {value}");
        }
    }
    Ok(0)
}

fn cmd_bij(map: &str, perm: &str, as_json: bool) -> Result<u8, Failure> {
    let sigma = parse_perm(perm)?;
    let image = match map {
        "cycle0" => sigma.cycle0(),
        "cycle0_inv" => sigma.cycle0_inverse(),
        "cycleneg1" => sigma.cycle_neg1(),
        "cycleneg1_inv" => sigma.cycle_neg1_inverse(),
        "flip" => sigma.flip(),
        "prime" => sigma.prime(),
        other => {
            return Err(Failure::new(
                2,
                format!(
                    "unknown map {other:?}; expected cycle0, cycle0_inv, cycleneg1, \
                     cycleneg1_inv, flip, or prime"
                ),
            ))
        }
    };
    if as_json {
        println!(
            "{}",
            json!({ "map": map, "input": sigma.to_string(), "output": image.to_string() })
        );
    } else {
        println!("{image}");
    }
    Ok(0)
}

fn code_failure(err: CodeError) -> Failure {
    let exit = match err {
        CodeError::EntryOutOfRange { .. } => 3,
        _ => 2,
    };
    Failure::new(exit, err.to_string())
}

fn cmd_code(action: &str, input: &str, k: Option<usize>, as_json: bool) -> Result<u8, Failure> {
    let need_k = || {
        k.filter(|&k| k >= 1)
            .ok_or_else(|| Failure::new(2, format!("action {action} requires --k <K> with K >= 1")))
    };
    let output = match action {
        "inv-encode" => codes::inv_encode(&parse_perm(input)?).to_string(),
        "inv-decode" => codes::inv_decode(&Code::parse(input).map_err(code_failure)?).to_string(),
        "maj-encode" => {
            let k = need_k()?;
            codes::maj_encode(&parse_perm(input)?, k).to_string()
        }
        "maj-decode" => {
            let k = need_k()?;
            codes::maj_decode(&Code::parse(input).map_err(code_failure)?, k).to_string()
        }
        other => {
            return Err(Failure::new(
                2,
                format!(
                    "unknown action {other:?}; expected inv-encode, inv-decode, \
                     maj-encode, or maj-decode"
                ),
            ))
        }
    };
    if as_json {
        println!(
            "{}",
            json!({ "action": action, "input": input.trim(), "k": k, "output": output })
        );
    } else {
        println!("{output}");
    }
    Ok(0)
}

fn parse_domain(s: &str) -> Result<Domain, Failure> {
    Domain::parse(s)
        .ok_or_else(|| Failure::new(2, format!("unknown domain {s:?}; expected perms or codes")))
}

fn cmd_dist(
    n: usize,
    stats: &[String],
    domain: &str,
    vars: Option<Vec<String>>,
    threads: usize,
    cap: Option<usize>,
) -> Result<u8, Failure> {
    let descriptors = parse_stats(stats)?;
    let domain = parse_domain(domain)?;
    let cap = resolve_cap(cap)?;
    let mut poly = parallel_distribution(n, &descriptors, domain, threads, cap)?;
    if let Some(vars) = vars {
        poly = poly.rename_vars(vars).map_err(dist_failure)?;
    }
    println!("{}", poly.to_canonical_string());
    Ok(0)
}

/// Splits the rank space into contiguous chunks, accumulates each chunk's
/// partial polynomial on its own thread, and merges the partials in chunk
/// order. Merging is associative addition and the chunks are fixed by the
/// thread count, so the result is byte-identical to the serial run.
fn parallel_distribution(
    n: usize,
    stats: &[StatDescriptor],
    domain: Domain,
    threads: usize,
    cap: usize,
) -> Result<DistPolynomial, Failure> {
    dist::check_size_cap(n, cap).map_err(dist_failure)?;
    // validates statistic names against the domain before spawning
    distribution_range(n, stats, domain, 0..0).map_err(dist_failure)?;
    let size = factorial(n);
    let workers = threads.max(1).min(size.max(1) as usize);
    if workers <= 1 {
        return distribution_range(n, stats, domain, 0..size).map_err(dist_failure);
    }
    let step = size.div_ceil(workers as u64);
    let ranges: Vec<Range<u64>> = (0..workers as u64)
        .map(|w| (w * step).min(size)..((w + 1) * step).min(size))
        .collect();
    let partials: Vec<DistPolynomial> = std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| scope.spawn(move || distribution_range(n, stats, domain, range)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("distribution worker panicked"))
            .collect::<Result<_, _>>()
    })
    .map_err(dist_failure)?;
    let mut merged = DistPolynomial::zero(
        partials
            .first()
            .map(|p| p.vars().to_vec())
            .unwrap_or_default(),
    );
    for part in partials {
        merged.merge(part);
    }
    Ok(merged)
}

/// Parses `"4"` or the inclusive range form `"2..7"`.
fn parse_range(raw: &str, what: &str) -> Result<Range<usize>, Failure> {
    let bad = || Failure::new(2, format!("cannot read {what} range {raw:?}; use N or LO..HI"));
    let raw = raw.trim();
    if let Some((lo, hi)) = raw.split_once("..") {
        let lo = lo.trim().parse::<usize>().map_err(|_| bad())?;
        let hi = hi.trim().parse::<usize>().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok(lo..hi + 1)
    } else {
        let v = raw.parse::<usize>().map_err(|_| bad())?;
        Ok(v..v + 1)
    }
}

fn counterexample_json(c: &dist::Counterexample) -> serde_json::Value {
    match c {
        dist::Counterexample::Element {
            rank,
            element,
            lhs,
            rhs,
        } => json!({
            "type": "element",
            "rank": rank,
            "sigma": element.to_string(),
            "lhs": lhs,
            "rhs": rhs,
        }),
        dist::Counterexample::Term(diff) => json!({
            "type": "term",
            "exponents": diff.exponents,
            "lhs_coef": diff.left.to_string(),
            "rhs_coef": diff.right.to_string(),
        }),
        dist::Counterexample::DuplicateCode {
            rank,
            element,
            code,
        } => json!({
            "type": "duplicate_code",
            "rank": rank,
            "sigma": element.to_string(),
            "code": code.to_string(),
        }),
    }
}

fn print_report(report: &VerificationReport, as_json: bool) {
    if as_json {
        let mut doc = json!({
            "identity": report.identity.as_str(),
            "n": report.n,
            "k": report.k,
            "status": report.status(),
        });
        if let Some(c) = &report.counterexample {
            doc["counterexample"] = counterexample_json(c);
        }
        println!("{doc}");
    } else {
        let k_part = match report.k {
            Some(k) => format!(" k={k}"),
            None => String::new(),
        };
        match &report.counterexample {
            None => println!("{} n={}{}: pass", report.identity, report.n, k_part),
            Some(c) => println!("{} n={}{}: fail — {c}", report.identity, report.n, k_part),
        }
    }
}

fn cmd_verify(
    identity: &str,
    n_range: &str,
    k_range: Option<&str>,
    cap: Option<usize>,
    as_json: bool,
) -> Result<u8, Failure> {
    let identity = IdentityName::parse(identity)
        .ok_or_else(|| Failure::new(2, format!("unknown identity {identity:?}")))?;
    let cap = resolve_cap(cap)?;
    let n_values = parse_range(n_range, "n")?;
    let k_values: Vec<Option<usize>> = if identity.requires_k() {
        let raw = k_range.ok_or_else(|| {
            Failure::new(2, format!("identity {identity} requires --k <K or LO..HI>"))
        })?;
        let range = parse_range(raw, "k")?;
        if range.start < 1 {
            return Err(Failure::new(2, "k must be at least 1".to_string()));
        }
        range.map(Some).collect()
    } else {
        vec![None]
    };
    let mut all_pass = true;
    for n in n_values {
        for &k in &k_values {
            let started = Instant::now();
            let mut report = dist::verify_with_cap(identity, n, k, cap).map_err(dist_failure)?;
            report.elapsed = Some(started.elapsed());
            all_pass &= report.passed();
            print_report(&report, as_json);
        }
    }
    Ok(if all_pass { 0 } else { 1 })
}
