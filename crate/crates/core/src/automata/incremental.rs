//! On-the-fly construction of the minimal 3DFA from lexicographically
//! sorted samples.
//!
//! Samples arrive in strictly increasing order. After inserting word `u_i`,
//! only the states on the path of `u_i` can still gain successors; when
//! `u_{i+1}` arrives, every state on the old path past the common prefix is
//! final and is merged into (or added to) the register, deepest first.

use std::collections::HashMap;

use thiserror::Error;

use super::apta::signature;
use super::{StateId, ThreeValuedDfa};
use crate::sample::{lex_compare, Label, Letter, OrderedSampleSet, Word};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("word {word} does not come strictly after {previous} in lexicographic order")]
    OutOfOrder { previous: Word, word: Word },
    #[error("letter {letter} in word {word} is outside the alphabet of size {alphabet_size}")]
    LetterOutOfRange {
        word: Word,
        letter: Letter,
        alphabet_size: usize,
    },
    #[error("word {0} has label '?'")]
    DontCare(Word),
}

const ROOT: StateId = 0;

/// Streaming builder for the minimal 3DFA of a sorted sample sequence.
///
/// Freed states are recycled, so the arena never holds more slots than the
/// largest number of simultaneously live states, which is bounded by the
/// number of prefixes pushed so far.
#[derive(Debug)]
pub struct IncrementalBuilder {
    alphabet_size: usize,
    status: Vec<Label>,
    transitions: Vec<Option<StateId>>,
    free: Vec<StateId>,
    register: HashMap<Box<[usize]>, StateId>,
    last: Vec<Letter>,
    started: bool,
    live: usize,
    peak: usize,
}

impl IncrementalBuilder {
    pub fn new(alphabet_size: usize) -> Self {
        IncrementalBuilder {
            alphabet_size,
            status: vec![Label::DontCare],
            transitions: vec![None; alphabet_size],
            free: Vec::new(),
            register: HashMap::new(),
            last: Vec::new(),
            started: false,
            live: 1,
            peak: 1,
        }
    }

    /// Largest number of states alive at any point so far.
    pub fn peak_states(&self) -> usize {
        self.peak
    }

    pub fn live_states(&self) -> usize {
        self.live
    }

    /// Adds the next sample. `letters` must be strictly greater than the
    /// previously pushed word.
    pub fn push(&mut self, letters: &[Letter], label: Label) -> Result<(), OrderError> {
        if label == Label::DontCare {
            return Err(OrderError::DontCare(Word::from(letters)));
        }
        if let Some(&letter) = letters.iter().find(|&&a| a as usize >= self.alphabet_size) {
            return Err(OrderError::LetterOutOfRange {
                word: Word::from(letters),
                letter,
                alphabet_size: self.alphabet_size,
            });
        }
        if self.started && lex_compare(&self.last, letters).is_ge() {
            return Err(OrderError::OutOfOrder {
                previous: Word::from(self.last.as_slice()),
                word: Word::from(letters),
            });
        }
        self.started = true;

        // Longest prefix with a run; it lies on the path of the previous word.
        let mut p = ROOT;
        let mut depth = 0;
        while depth < letters.len() {
            match self.successor(p, letters[depth]) {
                Some(t) => {
                    p = t;
                    depth += 1;
                }
                None => break,
            }
        }
        debug_assert!(depth < letters.len() || letters.is_empty());

        if self.has_children(p) {
            self.replace_or_register(p);
        }
        self.add_suffix(p, &letters[depth..], label);

        self.last.clear();
        self.last.extend_from_slice(letters);
        Ok(())
    }

    /// Registers the path of the last word and returns the minimal 3DFA,
    /// renumbered breadth-first from the initial state.
    pub fn finish(mut self) -> ThreeValuedDfa {
        if self.has_children(ROOT) {
            self.replace_or_register(ROOT);
        }
        let slots = self.status.len();
        let raw = ThreeValuedDfa::from_parts(
            self.alphabet_size,
            ROOT,
            std::mem::take(&mut self.status),
            std::mem::take(&mut self.transitions),
        );
        let out = raw.canonical();
        // Every live state must be reachable; freed slots are the only garbage.
        assert_eq!(
            out.state_count(),
            self.live,
            "incremental construction left unreachable live states ({} slots)",
            slots
        );
        out
    }

    fn successor(&self, q: StateId, a: Letter) -> Option<StateId> {
        self.transitions[q * self.alphabet_size + a as usize]
    }

    fn successors(&self, q: StateId) -> &[Option<StateId>] {
        let k = self.alphabet_size;
        &self.transitions[q * k..(q + 1) * k]
    }

    fn has_children(&self, q: StateId) -> bool {
        self.successors(q).iter().any(Option::is_some)
    }

    /// Successor over the largest letter that has one.
    fn last_child(&self, q: StateId) -> Option<(Letter, StateId)> {
        self.successors(q)
            .iter()
            .enumerate()
            .rev()
            .find_map(|(a, t)| t.map(|t| (a as Letter, t)))
    }

    fn new_state(&mut self, status: Label) -> StateId {
        self.live += 1;
        self.peak = self.peak.max(self.live);
        let k = self.alphabet_size;
        match self.free.pop() {
            Some(q) => {
                self.status[q] = status;
                self.transitions[q * k..(q + 1) * k].fill(None);
                q
            }
            None => {
                self.status.push(status);
                self.transitions.extend(std::iter::repeat(None).take(k));
                self.status.len() - 1
            }
        }
    }

    fn release(&mut self, q: StateId) {
        self.live -= 1;
        self.free.push(q);
    }

    fn add_suffix(&mut self, mut p: StateId, suffix: &[Letter], label: Label) {
        for &a in suffix {
            let t = self.new_state(Label::DontCare);
            self.transitions[p * self.alphabet_size + a as usize] = Some(t);
            p = t;
        }
        self.status[p] = label;
    }

    /// Walks the last-child chain below `p`, then, deepest state first,
    /// replaces each state by an equivalent registered one or registers it.
    fn replace_or_register(&mut self, p: StateId) {
        let mut chain: Vec<(StateId, Letter, StateId)> = Vec::new();
        let mut parent = p;
        while let Some((a, r)) = self.last_child(parent) {
            chain.push((parent, a, r));
            if !self.has_children(r) {
                break;
            }
            parent = r;
        }
        for &(parent, a, r) in chain.iter().rev() {
            let key = signature(self.status[r], self.successors(r).iter().copied());
            match self.register.get(&key) {
                Some(&q) => {
                    self.transitions[parent * self.alphabet_size + a as usize] = Some(q);
                    self.release(r);
                }
                None => {
                    self.register.insert(key, r);
                }
            }
        }
    }
}

/// Builds the minimal 3DFA recognising exactly `samples`.
pub fn build_min_3dfa_incremental(samples: &OrderedSampleSet) -> ThreeValuedDfa {
    let mut builder = IncrementalBuilder::new(samples.alphabet_size());
    for (word, label) in samples.entries() {
        builder
            .push(word.letters(), *label)
            .expect("ordered sample sets are strictly increasing and validated");
    }
    builder.finish()
}
