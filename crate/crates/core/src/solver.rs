//! Running an external DIMACS SAT solver as a subprocess.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::{Child, Command, Stdio};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;
use wait_timeout::ChildExt;

use crate::encoder::{Assignment, CnfFormula};

/// Formulas whose DIMACS text is estimated above this size are written to a
/// temporary file instead of being piped.
pub const DEFAULT_FILE_THRESHOLD: usize = 64 << 20;

pub const DEFAULT_SOLVER: &str = "cadical";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Program followed by its arguments.
    pub command: Vec<String>,
    pub timeout: Option<Duration>,
    pub file_threshold: usize,
}

impl SolverConfig {
    pub fn new<I, S>(command: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        SolverConfig {
            command: command.into_iter().map(Into::into).collect(),
            timeout: None,
            file_threshold: DEFAULT_FILE_THRESHOLD,
        }
    }

    /// Splits a command line on whitespace, e.g. `"kissat -q"`.
    pub fn from_command_line(line: &str) -> Self {
        Self::new(line.split_whitespace())
    }

    pub fn with_timeout(mut self, timeout: Option<Duration>) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn with_file_threshold(mut self, bytes: usize) -> Self {
        self.file_threshold = bytes;
        self
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self::new([DEFAULT_SOLVER])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Sat,
    Unsat,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Sat => "sat",
            Outcome::Unsat => "unsat",
        })
    }
}

/// Variable values reported on `v` lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Model {
    values: BTreeMap<usize, bool>,
}

impl Model {
    pub fn get(&self, var: usize) -> Option<bool> {
        self.values.get(&var).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.values.iter().map(|(&v, &b)| (v, b))
    }

    /// Total assignment for `f`. Variables the solver left out are set to
    /// false when they occur in no clause; a missing variable that does
    /// occur is an error.
    pub fn to_assignment(&self, f: &CnfFormula) -> Result<Assignment, SolverError> {
        let occurs = f.occurring_variables();
        let mut out = Assignment::new(f.variable_count());
        let mut missing = Vec::new();
        for (var, &occurs) in occurs.iter().enumerate().skip(1) {
            match self.get(var) {
                Some(value) => out.set(var, value),
                None if occurs => missing.push(var),
                None => {}
            }
        }
        if missing.is_empty() {
            Ok(out)
        } else {
            Err(SolverError::MissingVariables(missing))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverVerdict {
    pub outcome: Outcome,
    /// Present iff the outcome is sat.
    pub model: Option<Assignment>,
    pub wall_time: Duration,
}

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("solver command is empty")]
    EmptyCommand,
    #[error("solver `{0}` not found")]
    NotFound(String),
    #[error("solver timed out after {0:?}")]
    Timeout(Duration),
    #[error("solver exit code {code:?} contradicts status `{outcome}`")]
    InconsistentExit { code: Option<i32>, outcome: Outcome },
    #[error("solver output has no status line (exit code {0:?})")]
    NoStatusLine(Option<i32>),
    #[error("solver reported an unknown result")]
    Unknown,
    #[error("malformed value `{token}` on line {line}")]
    MalformedValue { line: usize, token: String },
    #[error("model misses variables {0:?}")]
    MissingVariables(Vec<usize>),
    #[error("model violates clause {0}")]
    InvalidModel(usize),
    #[error("solver i/o: {0}")]
    Io(#[from] io::Error),
}

/// Result of scanning solver output, before checking it against a formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedOutput {
    pub outcome: Outcome,
    pub model: Option<Model>,
}

/// Reads SAT-competition style output: `s` status line, `v` value lines
/// (possibly split, terminated by `0`), `c` comments ignored.
pub fn parse_solver_output(text: &str) -> Result<ParsedOutput, SolverError> {
    let mut outcome = None;
    let mut values = BTreeMap::new();
    let mut saw_values = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let mut parts = line.splitn(2, char::is_whitespace);
        let tag = parts.next().unwrap_or_default();
        let rest = parts.next().unwrap_or_default();
        match tag {
            "s" => {
                outcome = match rest.trim() {
                    "SATISFIABLE" => Some(Outcome::Sat),
                    "UNSATISFIABLE" => Some(Outcome::Unsat),
                    _ => return Err(SolverError::Unknown),
                };
            }
            "v" => {
                saw_values = true;
                for token in rest.split_whitespace() {
                    let lit: i64 = token.parse().map_err(|_| SolverError::MalformedValue {
                        line: idx + 1,
                        token: token.to_string(),
                    })?;
                    if lit != 0 {
                        values.insert(lit.unsigned_abs() as usize, lit > 0);
                    }
                }
            }
            _ => {}
        }
    }
    let outcome = outcome.ok_or(SolverError::NoStatusLine(None))?;
    let model = (outcome == Outcome::Sat && saw_values).then_some(Model { values });
    Ok(ParsedOutput { outcome, model })
}

/// Solves `f` with the configured solver and verifies any model against it.
pub fn solve(f: &CnfFormula, config: &SolverConfig) -> Result<SolverVerdict, SolverError> {
    let program = config.command.first().ok_or(SolverError::EmptyCommand)?;
    let started = Instant::now();

    let via_file = f.dimacs_size_hint() > config.file_threshold;
    let mut command = Command::new(program);
    command
        .args(&config.command[1..])
        .stdout(Stdio::piped())
        .stderr(Stdio::null());
    #[cfg(unix)]
    {
        use std::os::unix::process::CommandExt;
        command.process_group(0);
    }
    let _file_guard = if via_file {
        let mut tmp = tempfile::Builder::new().suffix(".cnf").tempfile()?;
        let mut out = io::BufWriter::new(tmp.as_file_mut());
        f.write_dimacs(&mut out)?;
        out.flush()?;
        drop(out);
        command.arg(tmp.path()).stdin(Stdio::null());
        Some(tmp.into_temp_path())
    } else {
        command.stdin(Stdio::piped());
        None
    };
    log::debug!(
        "running {:?} on {} vars / {} clauses{}",
        config.command,
        f.variable_count(),
        f.clause_count(),
        if via_file { " via temp file" } else { "" }
    );

    let mut child = command.spawn().map_err(|e| match e.kind() {
        io::ErrorKind::NotFound => SolverError::NotFound(program.clone()),
        _ => SolverError::Io(e),
    })?;

    let writer = child.stdin.take().map(|stdin| {
        let dimacs = crate::encoder::emit_dimacs(f);
        thread::spawn(move || {
            let mut stdin = stdin;
            // The solver may exit before reading everything; that is not ours
            // to report.
            let _ = stdin.write_all(dimacs.as_bytes());
        })
    });
    let mut stdout = child.stdout.take().expect("stdout is piped");
    let reader = thread::spawn(move || {
        let mut buf = String::new();
        stdout.read_to_string(&mut buf).map(|_| buf)
    });

    let status = match config.timeout {
        Some(limit) => match child.wait_timeout(limit)? {
            Some(status) => status,
            None => {
                kill_tree(&mut child);
                let _ = child.wait();
                return Err(SolverError::Timeout(limit));
            }
        },
        None => child.wait()?,
    };
    if let Some(w) = writer {
        let _ = w.join();
    }
    let text = reader.join().expect("reader thread panicked")?;
    let wall_time = started.elapsed();
    let code = status.code();

    let parsed = parse_solver_output(&text).map_err(|e| match e {
        SolverError::NoStatusLine(_) => SolverError::NoStatusLine(code),
        other => other,
    })?;
    match (code, parsed.outcome) {
        (Some(10), Outcome::Sat) | (Some(20), Outcome::Unsat) | (Some(0), _) => {}
        (code, outcome) => return Err(SolverError::InconsistentExit { code, outcome }),
    }
    let model = match parsed.outcome {
        Outcome::Unsat => None,
        Outcome::Sat => {
            let model = parsed.model.unwrap_or_default();
            let assignment = model.to_assignment(f)?;
            if let Some(clause) = f.first_violated(&assignment) {
                return Err(SolverError::InvalidModel(clause));
            }
            Some(assignment)
        }
    };
    log::debug!("solver answered {} in {:.3?}", parsed.outcome, wall_time);
    Ok(SolverVerdict {
        outcome: parsed.outcome,
        model,
        wall_time,
    })
}

fn kill_tree(child: &mut Child) {
    #[cfg(unix)]
    {
        if let Ok(pid) = i32::try_from(child.id()) {
            // SAFETY: signalling our own process group; no memory is touched.
            unsafe {
                libc::kill(-pid, libc::SIGKILL);
            }
        }
    }
    let _ = child.kill();
}

/// Where a solver command line was found, used by tools that want a
/// sensible default without hard-coding one solver.
pub fn find_on_path(program: &str) -> Option<PathBuf> {
    let path = std::env::var_os("PATH")?;
    std::env::split_paths(&path)
        .map(|dir| dir.join(program))
        .find(|candidate| candidate.is_file())
}
