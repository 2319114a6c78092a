//! `twistclass` command-line interface.
//!
//! Exit codes: 0 when the command ran (whatever the verdict), 2 for usage or
//! parse errors, 3 for precondition violations.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use twistclass::conjugacy::{conjugacy_witness, distinguish, equalizer_trivial_by_remnant};
use twistclass::genericity::{run_density, DensityConfig, DensityReport};
use twistclass::hom::HomomorphismJson;
use twistclass::remnant::{compute_remnant, format_ratio, RemnantReport};
use twistclass::{Alphabet, DistinguishResult, Error, Homomorphism, Word};

#[derive(Parser)]
#[command(
    name = "twistclass",
    version,
    about = "Doubly-twisted conjugacy certificates in free groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether [u] and [v] differ for the pair (φ, ψ).
    Check {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(short = 'u')]
        u: String,
        #[arg(short = 'v')]
        v: String,
        /// Search for a witness g with |g| ≤ K when no certificate is found.
        #[arg(long, default_value_t = 0, value_name = "K")]
        oracle_depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Remnant report for a homomorphism.
    Remnant {
        #[arg(long)]
        hom: String,
        #[arg(long, value_name = "N")]
        rank_h: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Certify Eq(φ, ψ) = 1 through remnant of φ * ψ.
    Equalizer {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        json: bool,
    },
    /// Search for g with u = φ(g) v ψ(g)⁻¹ and |g| ≤ depth.
    Witness {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(short = 'u')]
        u: String,
        #[arg(short = 'v')]
        v: String,
        #[arg(long, value_name = "K")]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo density estimates from a JSON config.
    Density {
        #[arg(long, value_name = "FILE")]
        config: String,
        /// Also write the report as CSV.
        #[arg(long, value_name = "FILE")]
        out: Option<String>,
        /// Worker threads (default: all cores). Does not affect the result.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct PairArgs {
    /// Homomorphism "a=aba, b=Ba", a JSON table, or @file.
    #[arg(long)]
    phi: String,
    /// Defaults to the identity.
    #[arg(long)]
    psi: Option<String>,
    /// Rank of the target group; inferred from the letters used if omitted.
    #[arg(long, value_name = "N")]
    rank_h: Option<usize>,
}

enum Failure {
    Usage(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(msg) => Failure::Precondition(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    match run(cli.command, &mut out) {
        Ok(()) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Check {
            pair,
            u,
            v,
            oracle_depth,
            json,
        } => {
            let (u, v) = (read_arg(&u)?, read_arg(&v)?);
            let (phi, psi) = load_pair(&pair, &[&u, &v])?;
            let u = Word::parse(&u, phi.codomain())?;
            let v = Word::parse(&v, phi.codomain())?;
            let result = distinguish(&phi, &psi, &u, &v, oracle_depth)?;
            if json {
                writeln!(out, "{}", to_json(&result.to_json())).unwrap();
            } else {
                render_check(out, &result);
            }
        }
        Command::Remnant { hom, rank_h, json } => {
            let text = read_arg(&hom)?;
            let codomain = codomain_for(rank_h, &[&text])?;
            let h = parse_hom(&text, &codomain)?;
            let report = compute_remnant(&h);
            if json {
                writeln!(out, "{}", to_json(&report.to_json())).unwrap();
            } else {
                render_remnant(out, &report);
            }
        }
        Command::Equalizer { pair, json } => {
            let (phi, psi) = load_pair(&pair, &[])?;
            let trivial = equalizer_trivial_by_remnant(&phi, &psi)?;
            let report = compute_remnant(&phi.free_product(&psi)?);
            if json {
                let value = serde_json::json!({
                    "equalizer_trivial": trivial,
                    "product": report.to_json(),
                });
                writeln!(out, "{}", to_json(&value)).unwrap();
            } else {
                if trivial {
                    out.push_str("equalizer: trivial (phi * psi has remnant)\n");
                } else {
                    out.push_str("equalizer: inconclusive (phi * psi has no remnant)\n");
                }
                render_remnant(out, &report);
            }
        }
        Command::Witness {
            pair,
            u,
            v,
            depth,
            json,
        } => {
            let (u, v) = (read_arg(&u)?, read_arg(&v)?);
            let (phi, psi) = load_pair(&pair, &[&u, &v])?;
            let u = Word::parse(&u, phi.codomain())?;
            let v = Word::parse(&v, phi.codomain())?;
            let found = conjugacy_witness(&phi, &psi, &u, &v, depth)?;
            if json {
                let value = serde_json::json!({
                    "witness": found.as_ref().map(ToString::to_string),
                    "depth": depth,
                });
                writeln!(out, "{}", to_json(&value)).unwrap();
            } else {
                match found {
                    Some(g) => writeln!(out, "{g}").unwrap(),
                    None => writeln!(out, "none <= {depth}").unwrap(),
                }
            }
        }
        Command::Density {
            config,
            out: csv_path,
            threads,
            json,
        } => {
            let text = fs::read_to_string(&config).map_err(|e| Failure::Usage(format!("{config}: {e}")))?;
            let config = DensityConfig::from_json(&text)?;
            let report = run_density(&config, threads)?;
            if let Some(path) = csv_path {
                fs::write(&path, report.to_csv()).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            }
            if json {
                writeln!(out, "{}", to_json(&report)).unwrap();
            } else {
                render_density(out, &report);
            }
        }
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

/// Inline value, or the contents of the file after `@`.
fn read_arg(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Usage(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn load_pair(pair: &PairArgs, words: &[&str]) -> Result<(Homomorphism, Homomorphism), Failure> {
    let phi_text = read_arg(&pair.phi)?;
    let psi_text = pair.psi.as_deref().map(read_arg).transpose()?;

    let Some(psi_text) = psi_text else {
        // ψ = id forces H = G
        let rank = pair
            .rank_h
            .unwrap_or_else(|| phi_text.split(',').filter(|s| s.contains('=')).count().max(1));
        let codomain = Arc::new(Alphabet::standard(rank)?);
        let phi = parse_hom(&phi_text, &codomain)?;
        if **phi.domain() != **phi.codomain() {
            return Err(Failure::Usage(format!(
                "--psi may only be omitted when phi is an endomorphism (domain {} vs codomain {})",
                phi.domain(),
                phi.codomain()
            )));
        }
        eprintln!("warning: --psi omitted, using the identity; remnant certificates can never separate classes when psi is the identity");
        let psi = Homomorphism::identity(phi.codomain());
        return Ok((phi, psi));
    };

    let mut texts = vec![phi_text.as_str(), psi_text.as_str()];
    texts.extend(words);
    let codomain = codomain_for(pair.rank_h, &texts)?;
    let phi = parse_hom(&phi_text, &codomain)?;
    let psi = parse_hom(&psi_text, phi.codomain())?;
    Ok((phi, psi))
}

fn parse_hom(text: &str, codomain: &Arc<Alphabet>) -> Result<Homomorphism, Failure> {
    if text.trim_start().starts_with('{') {
        let json: HomomorphismJson =
            serde_json::from_str(text).map_err(|e| Failure::Usage(format!("homomorphism JSON: {e}")))?;
        return Ok(Homomorphism::from_json(&json)?);
    }
    let h = Homomorphism::parse_with_codomain(text, codomain)?;
    // written with standard names in any order: use the standard domain
    if let Ok(standard) = Alphabet::standard(h.rank()) {
        let standard = Arc::new(standard);
        if h.domain().names().iter().all(|n| standard.index_of(n).is_some()) {
            return Ok(Homomorphism::parse(text, &standard, codomain)?);
        }
    }
    Ok(h)
}

/// The target group: `rank_h` if given, otherwise the standard alphabet
/// covering every single-letter generator used in the texts (JSON tables
/// carry their own alphabets and are skipped).
fn codomain_for(rank_h: Option<usize>, texts: &[&str]) -> Result<Arc<Alphabet>, Failure> {
    if let Some(n) = rank_h {
        return Ok(Arc::new(Alphabet::standard(n)?));
    }
    let mut rank = 1;
    let sources = texts.iter().filter(|t| !t.trim_start().starts_with('{')).flat_map(|t| {
        // only right-hand sides of `name=word` name target generators
        t.split(',').map(|seg| seg.split_once('=').map_or(seg, |(_, rhs)| rhs))
    });
    for text in sources {
        let chars: Vec<char> = text.chars().collect();
        for (i, &c) in chars.iter().enumerate() {
            if !c.is_ascii_alphabetic() {
                continue;
            }
            if chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                return Err(Failure::Usage(
                    "generator names with digits need an explicit --rank-h".into(),
                ));
            }
            rank = rank.max((c.to_ascii_lowercase() as u8 - b'a') as usize + 1);
        }
    }
    Ok(Arc::new(Alphabet::standard(rank)?))
}

fn render_check(out: &mut String, result: &DistinguishResult) {
    writeln!(out, "verdict: {}", result.verdict).unwrap();
    writeln!(out, "method: {}", result.method).unwrap();
    if let Some(g) = &result.witness {
        writeln!(out, "witness: {g}").unwrap();
    }
    if let Some(report) = &result.eta_report {
        out.push_str("eta:\n");
        render_remnant(out, report);
    }
}

fn render_remnant(out: &mut String, report: &RemnantReport) {
    writeln!(
        out,
        "has_remnant: {}  min_length: {}  min_ratio: {}",
        report.has_remnant,
        report.min_remnant_length,
        format_ratio(&report.min_remnant_ratio)
    )
    .unwrap();
    for g in &report.per_generator {
        let remnant = if g.remnant.is_empty() {
            "-".to_string()
        } else {
            g.remnant.to_string()
        };
        writeln!(
            out,
            "  {:<4} -> {:<16} left {:>2}  right {:>2}  remnant {}",
            report.generator_names[g.generator_index],
            report.images[g.generator_index].to_string(),
            g.left_cancel,
            g.right_cancel,
            remnant
        )
        .unwrap();
    }
}

fn render_density(out: &mut String, report: &DensityReport) {
    writeln!(
        out,
        "F{} -> F{}  mode {}  seed {}  trials {}",
        report.rank_g, report.rank_h, report.mode, report.seed, report.trials
    )
    .unwrap();
    writeln!(
        out,
        "{:<22} {:>5} {:>8} {:>9} {:>19}",
        "property", "p", "count", "fraction", "95% interval"
    )
    .unwrap();
    for row in &report.rows {
        writeln!(
            out,
            "{:<22} {:>5} {:>8} {:>9.4} [{:.4}, {:.4}]",
            row.property, row.p, row.count, row.fraction, row.ci_low, row.ci_high
        )
        .unwrap();
    }
}
