//! Acceptors for labelled samples: the prefix tree (APTA), its minimal
//! 3-valued form, and the double DFA built from two minimal halves.

mod apta;
mod double;
mod incremental;
mod three_valued;

pub use apta::{build_apta, minimize_acyclic, CycleError};
pub use double::{build_ddfa, DoubleDfa};
pub use incremental::{build_min_3dfa_incremental, IncrementalBuilder, OrderError};
pub use three_valued::{isomorphic, DumpError, StateId, ThreeValuedDfa};

use crate::sample::{Label, Letter};

/// The view of an acceptor the SAT encoding needs: a deterministic
/// transition structure with one or more initial states and a status per
/// state.
pub trait Acceptor {
    fn alphabet_size(&self) -> usize;
    fn state_count(&self) -> usize;
    fn initial_states(&self) -> Vec<StateId>;
    fn successor(&self, state: StateId, letter: Letter) -> Option<StateId>;
    fn status(&self, state: StateId) -> Label;

    /// States reachable from some initial state, ascending.
    fn reachable_states(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = self.initial_states();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for a in 0..self.alphabet_size() as Letter {
                if let Some(t) = self.successor(q, a) {
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        (0..self.state_count()).filter(|&q| seen[q]).collect()
    }
}

impl Acceptor for ThreeValuedDfa {
    fn alphabet_size(&self) -> usize {
        ThreeValuedDfa::alphabet_size(self)
    }

    fn state_count(&self) -> usize {
        ThreeValuedDfa::state_count(self)
    }

    fn initial_states(&self) -> Vec<StateId> {
        vec![self.initial()]
    }

    fn successor(&self, state: StateId, letter: Letter) -> Option<StateId> {
        ThreeValuedDfa::successor(self, state, letter)
    }

    fn status(&self, state: StateId) -> Label {
        ThreeValuedDfa::status(self, state)
    }
}

/// Postorder (children before parents) of the states reachable from the
/// initial state, or `None` if they contain a cycle.
pub(crate) fn topological_postorder(a: &ThreeValuedDfa) -> Option<Vec<StateId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let k = a.alphabet_size();
    let mut mark = vec![Mark::New; a.state_count()];
    let mut order = Vec::with_capacity(a.state_count());
    // (state, next letter to explore)
    let mut stack = vec![(a.initial(), 0usize)];
    mark[a.initial()] = Mark::Open;
    while let Some(top) = stack.last_mut() {
        let (q, next) = *top;
        if next == k {
            mark[q] = Mark::Done;
            order.push(q);
            stack.pop();
            continue;
        }
        top.1 += 1;
        if let Some(t) = a.successor(q, next as Letter) {
            match mark[t] {
                Mark::New => {
                    mark[t] = Mark::Open;
                    stack.push((t, 0));
                }
                Mark::Open => return None,
                Mark::Done => {}
            }
        }
    }
    Some(order)
}
