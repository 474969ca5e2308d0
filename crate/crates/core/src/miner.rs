//! The search loop: grow the candidate size until the formula is satisfiable.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::automata::{
    build_apta, build_ddfa, build_min_3dfa_incremental, Acceptor, DoubleDfa, StateId,
    ThreeValuedDfa,
};
use crate::dfa::LearnedDfa;
use crate::encoder::{decode_model, encode, DecodeError, EncodingOptions, ParityEncodingError};
use crate::sample::{Label, Letter, SampleSet, Word};
use crate::solver::{solve, Outcome, SolverConfig, SolverError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Prefix tree of the samples.
    Apta,
    /// Minimal three-valued acceptor built incrementally.
    Min3dfa,
    /// Minimal acceptors of the positive and negative words side by side.
    Ddfa,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Apta, Mode::Min3dfa, Mode::Ddfa];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Apta => "apta",
            Mode::Min3dfa => "min3dfa",
            Mode::Ddfa => "ddfa",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown mode `{0}` (expected apta, min3dfa or ddfa)")]
pub struct UnknownMode(String);

impl FromStr for Mode {
    type Err = UnknownMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| UnknownMode(s.to_string()))
    }
}

/// The acceptor a mining run encodes.
#[derive(Debug, Clone)]
pub enum BuiltAcceptor {
    Single(ThreeValuedDfa),
    Double(DoubleDfa),
}

impl BuiltAcceptor {
    pub fn build(samples: &SampleSet, mode: Mode) -> Self {
        match mode {
            Mode::Apta => BuiltAcceptor::Single(build_apta(&samples.ordered())),
            Mode::Min3dfa => BuiltAcceptor::Single(build_min_3dfa_incremental(&samples.ordered())),
            Mode::Ddfa => BuiltAcceptor::Double(build_ddfa(samples)),
        }
    }

    /// A complete DFA read off the acceptor, separating by construction:
    /// the (positive part of the) acceptor with everything that is not
    /// accepting made rejecting and missing transitions sent to a sink.
    pub fn completion(&self) -> LearnedDfa {
        match self {
            BuiltAcceptor::Single(a) => completion_dfa(a),
            BuiltAcceptor::Double(d) => completion_dfa(d.positive_part()),
        }
    }
}

impl Acceptor for BuiltAcceptor {
    fn alphabet_size(&self) -> usize {
        match self {
            BuiltAcceptor::Single(a) => a.alphabet_size(),
            BuiltAcceptor::Double(d) => d.alphabet_size(),
        }
    }

    fn state_count(&self) -> usize {
        match self {
            BuiltAcceptor::Single(a) => a.state_count(),
            BuiltAcceptor::Double(d) => d.state_count(),
        }
    }

    fn initial_states(&self) -> Vec<StateId> {
        match self {
            BuiltAcceptor::Single(a) => Acceptor::initial_states(a),
            BuiltAcceptor::Double(d) => d.initial_states(),
        }
    }

    fn successor(&self, state: StateId, letter: Letter) -> Option<StateId> {
        match self {
            BuiltAcceptor::Single(a) => a.successor(state, letter),
            BuiltAcceptor::Double(d) => Acceptor::successor(d, state, letter),
        }
    }

    fn status(&self, state: StateId) -> Label {
        match self {
            BuiltAcceptor::Single(a) => a.status(state),
            BuiltAcceptor::Double(d) => Acceptor::status(d, state),
        }
    }
}

/// A size at which a separating DFA certainly exists: one state per
/// acceptor state (of the positive part for a double acceptor) plus a sink.
pub fn upper_bound(acceptor: &BuiltAcceptor) -> usize {
    match acceptor {
        BuiltAcceptor::Single(a) => a.state_count() + 1,
        BuiltAcceptor::Double(d) => d.positive_part().state_count() + 1,
    }
}

/// Completes `a`: accepting states stay accepting, every other state
/// rejects, and a fresh rejecting sink absorbs missing transitions.
pub fn completion_dfa(a: &ThreeValuedDfa) -> LearnedDfa {
    let a = a.canonical();
    let n = a.state_count();
    let k = a.alphabet_size();
    let sink = n;
    let mut transitions = Vec::with_capacity((n + 1) * k);
    for q in 0..=n {
        for letter in 0..k as Letter {
            let next = if q == sink { None } else { a.successor(q, letter) };
            transitions.push(next.unwrap_or(sink));
        }
    }
    let accepting = (0..=n)
        .map(|q| q < n && a.status(q) == Label::Positive)
        .collect();
    LearnedDfa::new(k, transitions, accepting)
}

/// Samples a DFA classifies wrongly.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verification {
    pub checked: usize,
    pub violations: Vec<(Word, Label)>,
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("DFA alphabet has {dfa} letters, samples have {samples}")]
pub struct AlphabetMismatch {
    pub dfa: usize,
    pub samples: usize,
}

/// Runs every sample through `d`, collecting positives it rejects and
/// negatives it accepts.
pub fn verify_separating(d: &LearnedDfa, s: &SampleSet) -> Result<Verification, AlphabetMismatch> {
    if d.alphabet_size() != s.alphabet_size() {
        return Err(AlphabetMismatch {
            dfa: d.alphabet_size(),
            samples: s.alphabet_size(),
        });
    }
    let mut out = Verification::default();
    for (word, label) in s.iter() {
        out.checked += 1;
        if d.accepts(word) != (label == Label::Positive) {
            out.violations.push((word.clone(), label));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct MineOptions {
    /// Add the parity-automaton shape constraints (sink state `n - 1`).
    pub safety: bool,
    pub symmetry_breaking: bool,
    pub solver: SolverConfig,
    /// Defaults to 1, or 2 with `safety`.
    pub n_start: Option<usize>,
    /// Defaults to [`upper_bound`] of the acceptor.
    pub n_max: Option<usize>,
}

impl Default for MineOptions {
    fn default() -> Self {
        MineOptions {
            safety: false,
            symmetry_breaking: true,
            solver: SolverConfig::default(),
            n_start: None,
            n_max: None,
        }
    }
}

/// One candidate size tried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attempt {
    pub n: usize,
    pub outcome: Outcome,
    pub solve_time: Duration,
    pub variables: usize,
    pub clauses: usize,
}

#[derive(Debug, Clone)]
pub struct MiningReport {
    pub mode: Mode,
    pub acceptor_size: usize,
    pub upper_bound: usize,
    pub attempts: Vec<Attempt>,
    pub dfa: Option<LearnedDfa>,
    pub verification: Option<Verification>,
}

impl MiningReport {
    /// Size of the DFA found, if any.
    pub fn minimal_size(&self) -> Option<usize> {
        self.dfa.as_ref().map(LearnedDfa::state_count)
    }

    pub fn total_solve_time(&self) -> Duration {
        self.attempts.iter().map(|a| a.solve_time).sum()
    }

    /// Human-readable summary, one fact per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mode {}", self.mode);
        let _ = writeln!(s, "acceptor states {}", self.acceptor_size);
        for a in &self.attempts {
            let _ = writeln!(
                s,
                "n={} {} vars={} clauses={} time={:.3}s",
                a.n,
                a.outcome,
                a.variables,
                a.clauses,
                a.solve_time.as_secs_f64()
            );
        }
        match self.minimal_size() {
            Some(n) => {
                let _ = writeln!(s, "minimal size {n}");
            }
            None => s.push_str("no separating DFA found\n"),
        }
        if let Some(v) = &self.verification {
            if v.is_ok() {
                let _ = writeln!(s, "verification ok ({} samples)", v.checked);
            } else {
                let _ = writeln!(s, "verification failed ({} violations)", v.violations.len());
            }
        }
        s
    }

    /// Machine-readable `key=value` lines.
    pub fn to_key_values(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mode={}", self.mode);
        let _ = writeln!(s, "acceptor_size={}", self.acceptor_size);
        let _ = writeln!(s, "upper_bound={}", self.upper_bound);
        for a in &self.attempts {
            let _ = writeln!(
                s,
                "attempt.{}={},vars={},clauses={},seconds={:.6}",
                a.n,
                a.outcome,
                a.variables,
                a.clauses,
                a.solve_time.as_secs_f64()
            );
        }
        if let Some(n) = self.minimal_size() {
            let _ = writeln!(s, "minimal_size={n}");
        }
        if let Some(v) = &self.verification {
            let _ = writeln!(s, "verified={}", v.is_ok());
        }
        s
    }
}

#[derive(Debug, Error)]
pub enum MineError {
    #[error("solver failed at n={n}: {source}")]
    Solver {
        n: usize,
        #[source]
        source: SolverError,
        report: Box<MiningReport>,
    },
    #[error(transparent)]
    Encoding(#[from] ParityEncodingError),
    #[error("model at n={n} does not decode: {source}")]
    Decode {
        n: usize,
        #[source]
        source: DecodeError,
        report: Box<MiningReport>,
    },
    #[error("no separating DFA with at most {n_max} states")]
    Exhausted {
        n_max: usize,
        report: Box<MiningReport>,
    },
    #[error("mined DFA misclassifies {} samples", report.verification.as_ref().map_or(0, |v| v.violations.len()))]
    Verification { report: Box<MiningReport> },
}

impl MineError {
    /// The partial report, for errors that happen mid-search.
    pub fn report(&self) -> Option<&MiningReport> {
        match self {
            MineError::Solver { report, .. }
            | MineError::Decode { report, .. }
            | MineError::Exhausted { report, .. }
            | MineError::Verification { report } => Some(report),
            MineError::Encoding(_) => None,
        }
    }
}

/// Finds a minimum-size DFA separating the positive from the negative
/// samples, trying `n_start, n_start + 1, ...` in order.
pub fn mine_min_dfa(
    samples: &SampleSet,
    mode: Mode,
    options: &MineOptions,
) -> Result<MiningReport, MineError> {
    let acceptor = BuiltAcceptor::build(samples, mode);
    mine_with_acceptor(samples, mode, &acceptor, options)
}

/// As [`mine_min_dfa`] with a prebuilt acceptor for `samples`.
pub fn mine_with_acceptor(
    samples: &SampleSet,
    mode: Mode,
    acceptor: &BuiltAcceptor,
    options: &MineOptions,
) -> Result<MiningReport, MineError> {
    let bound = upper_bound(acceptor);
    let mut report = MiningReport {
        mode,
        acceptor_size: acceptor.state_count(),
        upper_bound: bound,
        attempts: Vec::new(),
        dfa: None,
        verification: None,
    };
    let n_start = options.n_start.unwrap_or(if options.safety { 2 } else { 1 }).max(1);
    let n_max = options.n_max.unwrap_or(bound);
    let encoding = EncodingOptions {
        symmetry_breaking: options.symmetry_breaking,
        parity_colours: options.safety.then_some(samples.alphabet_size()),
    };
    log::info!(
        "mining with {} acceptor of {} states, n in {}..={}",
        mode,
        report.acceptor_size,
        n_start,
        n_max
    );

    for n in n_start..=n_max {
        let (vm, cnf) = encode(acceptor, n, encoding)?;
        let verdict = match solve(&cnf, &options.solver) {
            Ok(v) => v,
            Err(source) => {
                return Err(MineError::Solver {
                    n,
                    source,
                    report: Box::new(report),
                })
            }
        };
        log::info!(
            "n={n}: {} ({} vars, {} clauses, {:.3?})",
            verdict.outcome,
            cnf.variable_count(),
            cnf.clause_count(),
            verdict.wall_time
        );
        report.attempts.push(Attempt {
            n,
            outcome: verdict.outcome,
            solve_time: verdict.wall_time,
            variables: cnf.variable_count(),
            clauses: cnf.clause_count(),
        });
        let Some(model) = verdict.model else {
            continue;
        };
        let dfa = match decode_model(&model, &vm) {
            Ok(d) => d,
            Err(source) => {
                return Err(MineError::Decode {
                    n,
                    source,
                    report: Box::new(report),
                })
            }
        };
        let verification =
            verify_separating(&dfa, samples).expect("decoded DFA uses the sample alphabet");
        let ok = verification.is_ok();
        report.dfa = Some(dfa);
        report.verification = Some(verification);
        return if ok {
            Ok(report)
        } else {
            Err(MineError::Verification {
                report: Box::new(report),
            })
        };
    }
    Err(MineError::Exhausted {
        n_max,
        report: Box::new(report),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(k: usize, entries: &[(&[Letter], Label)]) -> SampleSet {
        SampleSet::from_entries(k, entries.iter().map(|(w, l)| (Word::from(*w), *l))).unwrap()
    }

    fn one_state(accepting: bool) -> LearnedDfa {
        LearnedDfa::new(2, vec![0, 0], vec![accepting])
    }

    #[test]
    fn verification_examples() {
        let pos = set(2, &[(&[], Label::Positive)]);
        assert!(verify_separating(&one_state(true), &pos).unwrap().is_ok());
        let neg = set(2, &[(&[], Label::Negative)]);
        let v = verify_separating(&one_state(true), &neg).unwrap();
        assert_eq!(v.violations, vec![(Word::empty(), Label::Negative)]);
        let wrong = set(3, &[]);
        assert!(verify_separating(&one_state(true), &wrong).is_err());
    }

    #[test]
    fn bound_of_trivial_acceptor() {
        let a = BuiltAcceptor::Single(ThreeValuedDfa::new(2));
        assert_eq!(upper_bound(&a), 2);
    }

    #[test]
    fn completion_separates() {
        let s = set(
            2,
            &[
                (&[0, 1], Label::Positive),
                (&[1], Label::Negative),
                (&[0, 0, 1], Label::Negative),
                (&[1, 1, 0], Label::Positive),
            ],
        );
        for mode in Mode::ALL {
            let a = BuiltAcceptor::build(&s, mode);
            let d = a.completion();
            assert_eq!(d.state_count(), upper_bound(&a));
            assert!(verify_separating(&d, &s).unwrap().is_ok(), "{mode}");
        }
    }

    #[test]
    fn modes_round_trip_through_strings() {
        for m in Mode::ALL {
            assert_eq!(m.name().parse::<Mode>(), Ok(m));
        }
        assert!("dfa".parse::<Mode>().is_err());
    }

    #[test]
    fn solver_errors_keep_the_partial_report() {
        let s = set(1, &[(&[], Label::Positive)]);
        let options = MineOptions {
            solver: SolverConfig::new(["sepdfa-no-such-solver-binary"]),
            ..MineOptions::default()
        };
        let err = mine_min_dfa(&s, Mode::Min3dfa, &options).unwrap_err();
        assert!(matches!(err, MineError::Solver { n: 1, .. }));
        assert_eq!(err.report().unwrap().attempts.len(), 0);
    }

    #[test]
    fn report_text() {
        let report = MiningReport {
            mode: Mode::Ddfa,
            acceptor_size: 12,
            upper_bound: 9,
            attempts: vec![
                Attempt {
                    n: 2,
                    outcome: Outcome::Unsat,
                    solve_time: Duration::from_millis(5),
                    variables: 10,
                    clauses: 20,
                },
                Attempt {
                    n: 3,
                    outcome: Outcome::Sat,
                    solve_time: Duration::from_millis(7),
                    variables: 30,
                    clauses: 40,
                },
            ],
            dfa: Some(LearnedDfa::new(1, vec![1, 2, 2], vec![false, false, true])),
            verification: Some(Verification {
                checked: 8,
                violations: vec![],
            }),
        };
        let text = report.to_text();
        assert!(text.contains("minimal size 3\n"));
        assert!(text.contains("n=2 unsat vars=10 clauses=20"));
        let kv = report.to_key_values();
        assert!(kv.contains("minimal_size=3\n"));
        assert!(kv.contains("attempt.3=sat,vars=30,clauses=40,"));
        assert!(kv.contains("verified=true\n"));
        assert_eq!(report.total_solve_time(), Duration::from_millis(12));
    }
}
