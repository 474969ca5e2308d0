//! Helpers shared by the integration tests: solver discovery and
//! brute-force oracles that do not use the library's algorithms.

#![allow(dead_code)]

use rand::Rng;
use sepdfa_core::sample::{Label, Letter, SampleSet, Word};
use sepdfa_core::solver::{find_on_path, SolverConfig};

/// Solvers known to print SAT-competition output on stdout.
const CANDIDATES: [&str; 4] = ["cadical", "kissat", "cryptominisat5", "varisat"];

/// `SEPDFA_SOLVER` if set, otherwise the first known solver on `PATH`.
pub fn solver() -> Option<SolverConfig> {
    if let Ok(cmd) = std::env::var("SEPDFA_SOLVER") {
        if !cmd.trim().is_empty() {
            return Some(SolverConfig::from_command_line(&cmd));
        }
    }
    CANDIDATES
        .iter()
        .find(|c| find_on_path(c).is_some())
        .map(|c| SolverConfig::new([*c]))
}

/// Runs `word` on a complete table `delta[q * k + a]` from state 0.
fn run(delta: &[usize], k: usize, word: &[Letter]) -> usize {
    word.iter().fold(0, |q, &a| delta[q * k + a as usize])
}

/// Whether some complete `n`-state DFA over the sample alphabet accepts
/// every positive and rejects every negative sample, by enumerating all
/// transition tables and acceptance sets.
pub fn separating_dfa_exists(s: &SampleSet, n: usize) -> bool {
    let k = s.alphabet_size();
    let cells = n * k;
    let tables = n.pow(cells as u32);
    let samples: Vec<(Vec<Letter>, bool)> = s
        .iter()
        .map(|(w, l)| (w.letters().to_vec(), l == Label::Positive))
        .collect();
    let mut delta = vec![0; cells];
    for code in 0..tables {
        let mut c = code;
        for cell in delta.iter_mut() {
            *cell = c % n;
            c /= n;
        }
        // Each state must be accepting if a positive ends there and
        // rejecting if a negative does; a table works iff no state is both.
        let mut must_accept = vec![false; n];
        let mut must_reject = vec![false; n];
        for (w, positive) in &samples {
            let q = run(&delta, k, w);
            if *positive {
                must_accept[q] = true;
            } else {
                must_reject[q] = true;
            }
        }
        if (0..n).all(|q| !(must_accept[q] && must_reject[q])) {
            return true;
        }
    }
    false
}

/// Distinct prefixes of the listed words, counted directly.
pub fn prefix_count(s: &SampleSet) -> usize {
    let mut prefixes = std::collections::BTreeSet::new();
    for (w, _) in s.iter() {
        for i in 0..=w.len() {
            prefixes.insert(w.letters()[..i].to_vec());
        }
    }
    prefixes.len()
}

/// A random labelled set over `k` letters whose words have at most
/// `max_prefixes` distinct prefixes in total.
pub fn small_sample_set<R: Rng>(rng: &mut R, k: usize, max_prefixes: usize) -> SampleSet {
    loop {
        let mut s = SampleSet::new(k);
        let target = rng.gen_range(1..=4);
        for _ in 0..target * 3 {
            if s.len() == target {
                break;
            }
            let len = rng.gen_range(0..=3);
            let w: Vec<Letter> = (0..len).map(|_| rng.gen_range(0..k) as Letter).collect();
            let label = if rng.gen() { Label::Positive } else { Label::Negative };
            let mut trial = s.clone();
            if trial.insert(Word::new(w), label).is_ok() && prefix_count(&trial) <= max_prefixes {
                s = trial;
            }
        }
        if !s.is_empty() {
            return s;
        }
    }
}

/// A random set of up to `max_samples` words over `k` letters of length at
/// most `max_len`, with random labels.
pub fn random_sample_set<R: Rng>(rng: &mut R, k: usize, max_len: usize, max_samples: usize) -> SampleSet {
    let mut s = SampleSet::new(k);
    let count = rng.gen_range(0..=max_samples);
    for _ in 0..count {
        let len = rng.gen_range(0..=max_len);
        let w: Vec<Letter> = (0..len).map(|_| rng.gen_range(0..k) as Letter).collect();
        let label = if rng.gen() { Label::Positive } else { Label::Negative };
        // A repeated word keeps its first label.
        let _ = s.insert(Word::new(w), label);
    }
    s
}
