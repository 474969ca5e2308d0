//! Complete two-valued DFAs, the output of mining.

use crate::automata::{DumpError, StateId, ThreeValuedDfa};
use crate::sample::{Label, Letter, Word};

/// A complete deterministic automaton with initial state 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearnedDfa {
    alphabet_size: usize,
    transitions: Vec<StateId>,
    accepting: Vec<bool>,
}

impl LearnedDfa {
    /// `transitions[state * alphabet_size + letter]` is the successor.
    pub fn new(alphabet_size: usize, transitions: Vec<StateId>, accepting: Vec<bool>) -> Self {
        let n = accepting.len();
        assert!(n >= 1, "a DFA needs at least one state");
        assert_eq!(transitions.len(), n * alphabet_size);
        assert!(transitions.iter().all(|&t| t < n));
        LearnedDfa {
            alphabet_size,
            transitions,
            accepting,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn successor(&self, state: StateId, letter: Letter) -> StateId {
        self.transitions[state * self.alphabet_size + letter as usize]
    }

    pub fn is_accepting(&self, state: StateId) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.state_count()).filter(|&q| self.accepting[q])
    }

    pub fn run(&self, word: &Word) -> StateId {
        word.letters()
            .iter()
            .fold(0, |q, &a| self.successor(q, a))
    }

    pub fn accepts(&self, word: &Word) -> bool {
        self.accepting[self.run(word)]
    }

    pub fn reachable_count(&self) -> usize {
        self.to_three_valued().reachable_count()
    }

    pub fn to_three_valued(&self) -> ThreeValuedDfa {
        let status = self
            .accepting
            .iter()
            .map(|&acc| if acc { Label::Positive } else { Label::Negative })
            .collect();
        ThreeValuedDfa::from_parts(
            self.alphabet_size,
            0,
            status,
            self.transitions.iter().map(|&t| Some(t)).collect(),
        )
    }

    /// Same text format as [`ThreeValuedDfa::to_dump`], with only `A`/`R`.
    pub fn to_dump(&self) -> String {
        self.to_three_valued().to_dump()
    }

    /// Parses a dump of a complete DFA. A non-zero initial state is moved
    /// to 0 by breadth-first renumbering (which drops unreachable states).
    pub fn parse_dump(text: &str) -> Result<Self, DumpError> {
        let mut a = ThreeValuedDfa::parse_dump(text)?;
        if a.initial() != 0 {
            a = a.canonical();
        }
        Self::try_from(&a)
    }
}

impl TryFrom<&ThreeValuedDfa> for LearnedDfa {
    type Error = DumpError;

    fn try_from(a: &ThreeValuedDfa) -> Result<Self, DumpError> {
        if a.initial() != 0 {
            return Err(DumpError::NotComplete("initial state must be 0".into()));
        }
        let n = a.state_count();
        let k = a.alphabet_size();
        let mut transitions = Vec::with_capacity(n * k);
        let mut accepting = Vec::with_capacity(n);
        for q in 0..n {
            accepting.push(match a.status(q) {
                Label::Positive => true,
                Label::Negative => false,
                Label::DontCare => {
                    return Err(DumpError::NotComplete(format!("state {q} is don't-care")))
                }
            });
            for letter in 0..k as Letter {
                transitions.push(a.successor(q, letter).ok_or_else(|| {
                    DumpError::NotComplete(format!("state {q} has no transition on {letter}"))
                })?);
            }
        }
        Ok(LearnedDfa {
            alphabet_size: k,
            transitions,
            accepting,
        })
    }
}
