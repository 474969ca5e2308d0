use super::{build_min_3dfa_incremental, Acceptor, StateId, ThreeValuedDfa};
use crate::sample::{Label, Letter, SampleSet, Word};

/// Two minimal acceptors side by side: one for the positive samples, one
/// for the negative samples.
///
/// States share one namespace. The positive half keeps its ids, the
/// negative half is shifted by the size of the positive half. Accepting
/// states of the negative half are stored as rejecting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleDfa {
    positive: ThreeValuedDfa,
    negative: ThreeValuedDfa,
}

impl DoubleDfa {
    pub fn positive_part(&self) -> &ThreeValuedDfa {
        &self.positive
    }

    pub fn negative_part(&self) -> &ThreeValuedDfa {
        &self.negative
    }

    fn offset(&self) -> usize {
        self.positive.state_count()
    }

    /// `+` if the positive half accepts, `-` if the negative half rejects,
    /// `?` otherwise.
    pub fn classify(&self, word: &Word) -> Label {
        if self.positive.run(word) == Some(Label::Positive) {
            Label::Positive
        } else if self.negative.run(word) == Some(Label::Negative) {
            Label::Negative
        } else {
            Label::DontCare
        }
    }
}

impl Acceptor for DoubleDfa {
    fn alphabet_size(&self) -> usize {
        self.positive.alphabet_size()
    }

    fn state_count(&self) -> usize {
        self.positive.state_count() + self.negative.state_count()
    }

    fn initial_states(&self) -> Vec<StateId> {
        vec![
            self.positive.initial(),
            self.offset() + self.negative.initial(),
        ]
    }

    fn successor(&self, state: StateId, letter: Letter) -> Option<StateId> {
        let off = self.offset();
        if state < off {
            self.positive.successor(state, letter)
        } else {
            self.negative
                .successor(state - off, letter)
                .map(|t| t + off)
        }
    }

    fn status(&self, state: StateId) -> Label {
        let off = self.offset();
        if state < off {
            self.positive.status(state)
        } else {
            self.negative.status(state - off)
        }
    }
}

/// Builds the minimal acceptors of `(S⁺, ∅)` and `(S⁻, ∅)` and pairs them.
pub fn build_ddfa(samples: &SampleSet) -> DoubleDfa {
    let positive = build_min_3dfa_incremental(&samples.restricted_to(Label::Positive).ordered());
    let negative = build_min_3dfa_incremental(&samples.restricted_to(Label::Negative).ordered());
    debug_assert_eq!(positive.states_with(Label::Negative).count(), 0);
    debug_assert_eq!(negative.states_with(Label::Positive).count(), 0);
    DoubleDfa { positive, negative }
}
