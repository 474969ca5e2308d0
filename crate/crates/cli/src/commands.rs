use std::fmt::Display;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Duration;

use sepdfa_core::automata::{build_ddfa, build_min_3dfa_incremental, Acceptor};
use sepdfa_core::dfa::LearnedDfa;
use sepdfa_core::generators::{gen_parity_samples, gen_random_dfa, gen_samples_from_dfa, ParityConfig};
use sepdfa_core::miner::{mine_min_dfa, verify_separating, MineError, MineOptions, MiningReport};
use sepdfa_core::sample::{parse_abbadingo, write_abbadingo, SampleSet};
use sepdfa_core::solver::{SolverConfig, SolverError};

use crate::args::{GenParityArgs, GenRandomArgs, MineArgs, StatsArgs, VerifyArgs};

/// A failed command: process exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const USAGE: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const SOLVER: u8 = 3;
    pub const TIMEOUT: u8 = 4;
    pub const VERIFICATION: u8 = 5;
    pub const INTERNAL: u8 = 6;

    fn new(code: u8, message: impl Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(Failure::PARSE, format!("cannot read {}: {e}", path.display())))
}

fn read_samples(path: &Path) -> Result<SampleSet, Failure> {
    parse_abbadingo(&read_text(path)?)
        .map_err(|e| Failure::new(Failure::PARSE, format!("{}: {e}", path.display())))
}

fn write_to(path: Option<&Path>, text: &str) -> CmdResult {
    let result = match path {
        Some(p) => fs::write(p, text).map_err(|e| (p.display().to_string(), e)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| ("stdout".to_string(), e)),
    };
    result.map_err(|(target, e)| Failure::new(Failure::INTERNAL, format!("cannot write {target}: {e}")))
}

pub fn mine(a: MineArgs) -> CmdResult {
    let samples = read_samples(&a.input)?;
    let timeout = a
        .solver
        .timeout
        .map(|secs| {
            Duration::try_from_secs_f64(secs)
                .map_err(|_| Failure::new(Failure::USAGE, format!("invalid timeout {secs}")))
        })
        .transpose()?;
    let solver = SolverConfig::from_command_line(&a.solver.solver).with_timeout(timeout);
    if solver.command.is_empty() {
        return Err(Failure::new(Failure::USAGE, "empty solver command"));
    }
    let options = MineOptions {
        safety: a.safety,
        symmetry_breaking: !a.no_symmetry_breaking,
        solver,
        n_start: a.n_start.map(|n| n as usize),
        n_max: a.n_max.map(|n| n as usize),
    };
    let render = |r: &MiningReport| {
        if a.key_values {
            r.to_key_values()
        } else {
            r.to_text()
        }
    };
    match mine_min_dfa(&samples, a.mode.into(), &options) {
        Ok(report) => {
            let dump = report.dfa.as_ref().expect("successful report has a DFA").to_dump();
            let mut out = render(&report);
            match &a.output {
                Some(path) => write_to(Some(path), &dump)?,
                None => {
                    out.push('\n');
                    out.push_str(&dump);
                }
            }
            write_to(None, &out)
        }
        Err(e) => {
            if let Some(partial) = e.report() {
                eprint!("{}", render(partial));
            }
            let code = match &e {
                MineError::Solver {
                    source: SolverError::Timeout(_),
                    ..
                } => Failure::TIMEOUT,
                MineError::Solver { .. } => Failure::SOLVER,
                MineError::Encoding(_) => Failure::USAGE,
                MineError::Verification { report } => {
                    if let Some(v) = &report.verification {
                        for (word, label) in &v.violations {
                            eprintln!("misclassified {label} {word}");
                        }
                    }
                    Failure::VERIFICATION
                }
                MineError::Decode { .. } | MineError::Exhausted { .. } => Failure::INTERNAL,
            };
            Err(Failure::new(code, e))
        }
    }
}

pub fn gen_parity(a: GenParityArgs) -> CmdResult {
    let cfg = ParityConfig::new(a.colours, a.length).map_err(|e| Failure::new(Failure::USAGE, e))?;
    let samples = gen_parity_samples(&cfg, a.budget).map_err(|e| Failure::new(Failure::USAGE, e))?;
    if a.stats {
        let ordered = samples.ordered();
        let min3dfa = build_min_3dfa_incremental(&ordered).state_count();
        let ddfa = build_ddfa(&samples).state_count();
        // The prefix tree has exactly one state per prefix.
        let apta = samples.prefix_count();
        let line = format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            a.colours,
            a.length,
            samples.positive_count(),
            samples.negative_count(),
            apta,
            min3dfa,
            ddfa
        );
        write_to(None, &line)
    } else {
        write_to(a.output.as_deref(), &write_abbadingo(&samples))
    }
}

pub fn gen_random(a: GenRandomArgs) -> CmdResult {
    let n = a.states as usize;
    let k = a.alphabet as usize;
    let count = a.samples.map_or(50 * n, |c| c as usize);
    let max_len = a.max_len.unwrap_or(2 * n + 3);
    let dfa = gen_random_dfa(n, k, a.seed);
    let samples = gen_samples_from_dfa(&dfa, count, max_len, a.seed.wrapping_add(1))
        .map_err(|e| Failure::new(Failure::USAGE, e))?;
    if let Some(path) = &a.dfa {
        write_to(Some(path), &dfa.to_dump())?;
    }
    write_to(a.output.as_deref(), &write_abbadingo(&samples))
}

pub fn verify(a: VerifyArgs) -> CmdResult {
    let dfa = LearnedDfa::parse_dump(&read_text(&a.dfa)?)
        .map_err(|e| Failure::new(Failure::PARSE, format!("{}: {e}", a.dfa.display())))?;
    let samples = read_samples(&a.samples)?;
    let v = verify_separating(&dfa, &samples).map_err(|e| Failure::new(Failure::PARSE, e))?;
    if v.is_ok() {
        write_to(None, &format!("ok: {} samples separated\n", v.checked))
    } else {
        let mut out = String::new();
        for (word, label) in &v.violations {
            out.push_str(&format!("{label} {word}\n"));
        }
        write_to(None, &out)?;
        Err(Failure::new(
            Failure::VERIFICATION,
            format!("{} of {} samples misclassified", v.violations.len(), v.checked),
        ))
    }
}

pub fn stats(a: StatsArgs) -> CmdResult {
    let samples = read_samples(&a.input)?;
    let ordered = samples.ordered();
    let lines = [
        ("alphabet", samples.alphabet_size()),
        ("positives", samples.positive_count()),
        ("negatives", samples.negative_count()),
        ("apta", samples.prefix_count()),
        ("min3dfa", build_min_3dfa_incremental(&ordered).state_count()),
        ("ddfa", build_ddfa(&samples).state_count()),
    ];
    let text: String = lines.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect();
    write_to(None, &text)
}
