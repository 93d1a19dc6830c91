//! Argument grammar and the synchronous commands.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pauli_forge::clifford::{bfs_closure, clifford_identities_check, generators, GeneratorSet, DEFAULT_MAX_ORDER};
use pauli_forge::passes::{
    builtin, builtin_text, derive_amy_toffoli, derive_full_adder, derive_w_adder, expand_ncv,
    ncv_to_clifford_t, toffoli_family, translate_library, ToffoliFamilyParams, BUILTIN_NAMES,
};
use pauli_forge::rules::check_soundness;
use pauli_forge::semantics::{equivalent, truth_table};
use pauli_forge::text::{parse, print};
use pauli_forge::{Axis, Circuit, RuleId};

use crate::{CliError, ExitStatus};

type CmdResult = Result<ExitStatus, CliError>;

#[derive(Debug, Parser)]
#[command(name = "pauli-forge", version, about = "Rewrite and verify circuits over roots of the Pauli matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print depth, T-depth and gate counts.
    Stats {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check two circuits for equality up to global phase.
    Verify { a: PathBuf, b: PathBuf },
    /// Run a mapping pass.
    Map {
        file: PathBuf,
        /// `expand-ncv`, `ncv-to-clifford-t` or `translate:<x|y|z>`.
        #[arg(long)]
        pass: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a derivation and check every intermediate circuit.
    Derive {
        #[command(subcommand)]
        target: DeriveTarget,
    },
    /// Randomized soundness checks of the rewrite rules.
    Rules {
        #[command(subcommand)]
        command: RulesCommand,
    },
    /// Clifford group identities and closures.
    Clifford {
        #[command(subcommand)]
        command: CliffordCommand,
    },
    /// Write a named circuit.
    Builtin {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Serve the session API over HTTP.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = pauli_forge::session::DEFAULT_CAPACITY)]
        capacity: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Bit {
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
}

impl From<Bit> for bool {
    fn from(b: Bit) -> bool {
        matches!(b, Bit::One)
    }
}

#[derive(Debug, Subcommand)]
pub enum DeriveTarget {
    /// The three-bit family `x3 ⊕ f(x1, x2)`.
    Toffoli {
        #[arg(long)]
        a: Bit,
        #[arg(long)]
        b: Bit,
        #[arg(long)]
        c: Bit,
        #[command(flatten)]
        out: Output,
    },
    AmyToffoli {
        #[command(flatten)]
        out: Output,
    },
    FullAdder {
        #[command(flatten)]
        out: Output,
    },
    WAdder {
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum RulesCommand {
    Check {
        #[arg(long)]
        rule: Option<String>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SetArg {
    Standard,
    Rooted,
    Corollary,
    Negator,
}

impl From<SetArg> for GeneratorSet {
    fn from(s: SetArg) -> GeneratorSet {
        match s {
            SetArg::Standard => GeneratorSet::Standard,
            SetArg::Rooted => GeneratorSet::Rooted,
            SetArg::Corollary => GeneratorSet::Corollary,
            SetArg::Negator => GeneratorSet::Negator,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum CliffordCommand {
    Identities,
    Closure {
        #[arg(long, value_enum)]
        set: SetArg,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        qubits: u8,
    },
}

fn read_circuit(path: &Path) -> Result<Circuit, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| CliError::usage(format!("{}:{e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| CliError::usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ensure_equivalent(before: &Circuit, after: &Circuit, what: &str) -> Result<(), CliError> {
    if equivalent(before, after)?.is_none() {
        return Err(CliError::failed(format!("{what}: output is not equivalent to the input")));
    }
    Ok(())
}

/// Runs a parsed command. `serve` is handled by the binary.
pub fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Stats { file, json } => stats(&file, json),
        Command::Verify { a, b } => verify(&a, &b),
        Command::Map { file, pass, output } => map(&file, &pass, output.as_deref()),
        Command::Derive { target } => derive(target),
        Command::Rules {
            command: RulesCommand::Check { rule, trials, seed, json },
        } => rules_check(rule.as_deref(), trials, seed, json),
        Command::Clifford { command } => clifford(command),
        Command::Builtin { name, output } => {
            let text = builtin_text(&name).ok_or_else(|| {
                CliError::usage(format!("unknown builtin `{name}`; known: {}", BUILTIN_NAMES.join(", ")))
            })?;
            emit(text, output.as_deref())?;
            Ok(ExitStatus::Success)
        }
        Command::Serve { .. } => Err(CliError::usage("serve runs from the binary")),
    }
}

fn stats(file: &Path, json: bool) -> CmdResult {
    let s = read_circuit(file)?.stats()?;
    if json {
        println!("{}", serde_json::to_string(&s).expect("stats serialize"));
    } else {
        let mut line = format!(
            "depth={} t_depth={} gate_count={} t_count={}",
            s.depth, s.t_depth, s.gate_count, s.t_count
        );
        for (k, v) in &s.counts {
            let _ = write!(line, " {k}={v}");
        }
        println!("{line}");
        if s.controlled_t {
            eprintln!("note: controlled T gates are not counted in t_depth");
        }
    }
    Ok(ExitStatus::Success)
}

fn verify(a: &Path, b: &Path) -> CmdResult {
    let (ca, cb) = (read_circuit(a)?, read_circuit(b)?);
    match equivalent(&ca, &cb)? {
        Some(phase) => {
            println!("equivalent phase={:.9}{:+.9}i", phase.re, phase.im);
            Ok(ExitStatus::Success)
        }
        None => {
            println!("not equivalent");
            Ok(ExitStatus::VerificationFailed)
        }
    }
}

fn map(file: &Path, pass: &str, output: Option<&Path>) -> CmdResult {
    let c = read_circuit(file)?;
    let out = match pass {
        "expand-ncv" => expand_ncv(&c)?,
        "ncv-to-clifford-t" => ncv_to_clifford_t(&c)?,
        other => {
            let axis = other
                .strip_prefix("translate:")
                .and_then(Axis::from_letter)
                .ok_or_else(|| CliError::usage(format!("unknown pass `{other}`")))?;
            translate_library(&c, axis)?
        }
    };
    ensure_equivalent(&c, &out, pass)?;
    emit(&print(&out, true), output)?;
    Ok(ExitStatus::Success)
}

fn derive(target: DeriveTarget) -> CmdResult {
    let (out, result) = match target {
        DeriveTarget::Toffoli { a, b, c, out } => {
            let p = ToffoliFamilyParams::new(a.into(), b.into(), c.into());
            let circuit = toffoli_family(p);
            let tt = truth_table(&circuit)?.ok_or_else(|| CliError::failed("circuit is not classical"))?;
            let f = p.function();
            for x in 0..8 {
                let bit = |l: usize| (x >> (2 - l)) & 1 == 1;
                if tt.perm[x] != x ^ usize::from(f(bit(0), bit(1))) {
                    return Err(CliError::failed(format!("truth table differs on input {x:03b}")));
                }
            }
            (out, circuit)
        }
        DeriveTarget::AmyToffoli { out } => (out, derive_amy_toffoli()?.execute()?.final_circuit().clone()),
        DeriveTarget::FullAdder { out } => (out, derive_full_adder()?.execute()?.final_circuit().clone()),
        DeriveTarget::WAdder { out } => {
            let w = derive_w_adder()?;
            ensure_equivalent(&builtin("peres-pair-adder").expect("builtin"), &w, "w-adder")?;
            (out, w)
        }
    };
    let s = result.stats()?;
    eprintln!("depth={} t_depth={}", s.depth, s.t_depth);
    emit(&print(&result, true), out.output.as_deref())?;
    Ok(ExitStatus::Success)
}

fn rules_check(rule: Option<&str>, trials: usize, seed: u64, json: bool) -> CmdResult {
    let rules: Vec<RuleId> = match rule {
        Some(r) => vec![r.parse().map_err(CliError::from)?],
        None => RuleId::ALL.to_vec(),
    };
    let reports: Vec<_> = rules.into_iter().map(|r| check_soundness(r, trials, seed)).collect();
    let ok = reports.iter().all(|r| r.passed());
    if json {
        let v = serde_json::json!({ "passed": ok, "reports": reports });
        println!("{v}");
    } else {
        for r in &reports {
            println!(
                "{:<32} {} trials={} reversed={} counterexamples={}",
                r.rule.name(),
                if r.passed() { "ok" } else { "FAIL" },
                r.trials,
                r.reversed,
                r.counterexamples.len()
            );
            for c in r.counterexamples.iter().take(3) {
                eprintln!("  trial {}: {} ({})", c.trial, c.step, c.reason);
            }
        }
    }
    Ok(if ok { ExitStatus::Success } else { ExitStatus::VerificationFailed })
}

fn clifford(cmd: CliffordCommand) -> CmdResult {
    match cmd {
        CliffordCommand::Identities => {
            let results = clifford_identities_check();
            for r in &results {
                println!("{:<14} {} max_error={:.2e}", r.name, if r.holds { "ok" } else { "FAIL" }, r.max_error);
            }
            Ok(if results.iter().all(|r| r.holds) {
                ExitStatus::Success
            } else {
                ExitStatus::VerificationFailed
            })
        }
        CliffordCommand::Closure { set, qubits } => {
            let n = usize::from(qubits);
            let set = GeneratorSet::from(set);
            let closure = bfs_closure(&generators(set, n, Axis::X, Axis::Z)?, DEFAULT_MAX_ORDER)?;
            let standard = bfs_closure(
                &generators(GeneratorSet::Standard, n, Axis::X, Axis::Z)?,
                DEFAULT_MAX_ORDER,
            )?;
            let same = closure.same_set(&standard);
            println!("order={} equals_standard={same}", closure.order());
            Ok(if same { ExitStatus::Success } else { ExitStatus::VerificationFailed })
        }
    }
}
