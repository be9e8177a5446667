//! `thompson`: command-line front end for computations in `G_{n,r}`.
//!
//! Exit status is 0 for a positive answer or success, 1 for a negative
//! answer and 2 for input errors or an exhausted step budget.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use thompson_core::budget::DEFAULT_MAX_STEPS;
use thompson_core::format::{parse_automorphism, write_automorphism};
use thompson_core::{
    conjugate, emit_dot, multiplier_set, parse_row, parse_word, power_conjugate, quasi_normal_basis, reduce,
    validate_row, Automorphism, Budget, LeafType, Signature,
};

#[derive(Parser)]
#[command(name = "thompson", version, about = "Word, conjugacy and power-conjugacy problems in Higman-Thompson groups")]
struct Cli {
    /// Step limit for orbit scans and conjugator searches.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the standard form of an Omega-row.
    Reduce {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        row: String,
    },
    /// Check whether an Omega-row is a valid word.
    Validate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        row: String,
    },
    /// Print the quasi-normal basis, leaf types, characteristics and ponds.
    Qnf { file: PathBuf },
    /// Print the order of an automorphism.
    Order { file: PathBuf },
    /// Print the orbit segment `w ψ^t` for `-window <= t <= window`.
    Orbit {
        file: PathBuf,
        word: String,
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// Decide whether `v = u ψ^m` for some `m`.
    ShareOrbit { file: PathBuf, u: String, v: String },
    /// Print the ponds of an automorphism.
    Ponds { file: PathBuf },
    /// Print `ψ` followed by `φ`.
    Compose { first: PathBuf, second: PathBuf },
    /// Print the inverse.
    Invert { file: PathBuf },
    /// Print `ψ^k`.
    Power {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    /// Decide conjugacy and print a conjugator `ρ` with `ρ⁻¹ψρ = φ`.
    Conjugate { first: PathBuf, second: PathBuf },
    /// Find all `(a, b)` with `ψ^a` conjugate to `φ^b`.
    PowerConjugate { first: PathBuf, second: PathBuf },
    /// Print the tree-pair diagram in DOT.
    Dot { file: PathBuf },
}

struct Report {
    text: String,
    positive: bool,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, positive: true }
    }
}

fn load(path: &Path) -> Result<Automorphism> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_automorphism(&text).with_context(|| format!("{}", path.display()))
}

fn load_pair(first: &Path, second: &Path) -> Result<(Automorphism, Automorphism)> {
    let (a, b) = (load(first)?, load(second)?);
    a.sig().check(&b.sig())?;
    Ok((a, b))
}

fn indented(psi: &Automorphism) -> String {
    write_automorphism(psi)
        .lines()
        .filter(|l| l.starts_with("map "))
        .map(|l| format!("  {l}\n"))
        .collect()
}

fn run(cli: &Cli) -> Result<Report> {
    let budget = Budget::new(cli.max_steps);
    let mut out = String::new();
    let report = match &cli.command {
        Command::Reduce { n, r, row } => {
            let sig = Signature::new(*n, *r)?;
            let w = reduce(&sig, &parse_row(row)?)?;
            Report::ok(format!("{w}\n"))
        }
        Command::Validate { n, r, row } => {
            let sig = Signature::new(*n, *r)?;
            let valid = validate_row(&sig, &parse_row(row)?)?;
            Report {
                text: if valid { "valid\n" } else { "invalid\n" }.into(),
                positive: valid,
            }
        }
        Command::Qnf { file } => {
            let psi = load(file)?;
            let q = quasi_normal_basis(&psi, &budget)?;
            let leaves = q.basis().leaves();
            writeln!(out, "qnf leaves={}", leaves.len())?;
            for (leaf, t) in leaves.iter().zip(q.types()) {
                match t {
                    LeafType::A { period } => writeln!(out, "leaf {leaf} type=A period={period}")?,
                    LeafType::B(c) => writeln!(out, "leaf {leaf} type=B char={c}")?,
                    LeafType::C { witness, power, path } => {
                        let target = leaves[*witness].extend(path);
                        writeln!(out, "leaf {leaf} type=C image={power} {target}")?
                    }
                }
            }
            if q.is_regular_infinite() {
                writeln!(out, "multipliers {}", multiplier_set(&q))?;
            }
            for p in q.ponds() {
                writeln!(out, "{p}")?;
            }
            for w in q.warnings() {
                writeln!(out, "warning {w}")?;
            }
            Report::ok(out)
        }
        Command::Order { file } => {
            let q = quasi_normal_basis(&load(file)?, &budget)?;
            Report::ok(format!("order {}\n", q.order()))
        }
        Command::Orbit { file, word, window } => {
            let psi = load(file)?;
            let w = parse_word(&psi.sig(), word)?;
            let inv = psi.inverse();
            for t in -window..=*window {
                writeln!(out, "{t} {}", psi.apply_power(&inv, &w, t))?;
            }
            Report::ok(out)
        }
        Command::ShareOrbit { file, u, v } => {
            let psi = load(file)?;
            let q = quasi_normal_basis(&psi, &budget)?;
            let (u, v) = (parse_word(&psi.sig(), u)?, parse_word(&psi.sig(), v)?);
            let answer = q.orbit_test(&u, &v, &budget)?;
            match answer.shift {
                Some(m) => Report::ok(format!("related shift={m}\n")),
                None => Report {
                    text: "unrelated\n".into(),
                    positive: false,
                },
            }
        }
        Command::Ponds { file } => {
            let q = quasi_normal_basis(&load(file)?, &budget)?;
            if q.ponds().is_empty() {
                out.push_str("none\n");
            }
            for p in q.ponds() {
                writeln!(out, "{p}")?;
            }
            Report::ok(out)
        }
        Command::Compose { first, second } => {
            let (a, b) = load_pair(first, second)?;
            Report::ok(write_automorphism(&a.compose(&b)))
        }
        Command::Invert { file } => Report::ok(write_automorphism(&load(file)?.inverse())),
        Command::Power { file, k } => Report::ok(write_automorphism(&load(file)?.power(*k))),
        Command::Conjugate { first, second } => {
            let (a, b) = load_pair(first, second)?;
            let cert = conjugate(&a, &b, &budget)?;
            match (&cert.conjugator, cert.gate) {
                (Some(rho), _) => Report::ok(format!("conjugate\n{}", write_automorphism(rho))),
                (None, gate) => Report {
                    text: format!(
                        "not-conjugate gate={}\n",
                        gate.map_or_else(|| "exhausted-search".to_string(), |g| g.to_string())
                    ),
                    positive: false,
                },
            }
        }
        Command::PowerConjugate { first, second } => {
            let (a, b) = load_pair(first, second)?;
            let set = power_conjugate(&a, &b, &budget)?;
            if set.pairs.is_empty() {
                out.push_str("none\n");
            }
            for p in &set.pairs {
                match p.g {
                    None => writeln!(out, "pair a={} b={} g=free", p.a, p.b)?,
                    Some(g) => writeln!(out, "pair a={} b={} g={g} period={}", p.a, p.b, set.period())?,
                }
                out.push_str(&indented(&p.conjugator));
            }
            if let Some((a_hat, b_hat)) = set.bounds {
                writeln!(out, "bounds a_hat={a_hat} b_hat={b_hat}")?;
            }
            Report {
                positive: !set.pairs.is_empty(),
                text: out,
            }
        }
        Command::Dot { file } => Report::ok(emit_dot(&load(file)?)),
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.text);
            ExitCode::from(if report.positive { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
