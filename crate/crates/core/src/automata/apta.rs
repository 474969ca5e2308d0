use std::collections::HashMap;

use thiserror::Error;

use super::{topological_postorder, StateId, ThreeValuedDfa};
use crate::sample::{Label, OrderedSampleSet};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("automaton has a cycle reachable from its initial state")]
pub struct CycleError;

/// The augmented prefix tree acceptor: one state per prefix of the samples,
/// accepting at positives, rejecting at negatives, don't-care elsewhere.
pub fn build_apta(samples: &OrderedSampleSet) -> ThreeValuedDfa {
    let mut a = ThreeValuedDfa::new(samples.alphabet_size());
    for (word, label) in samples.entries() {
        let mut q = a.initial();
        for &letter in word.letters() {
            q = match a.successor(q, letter) {
                Some(t) => t,
                None => {
                    let t = a.add_state(Label::DontCare);
                    a.set_transition(q, letter, t);
                    t
                }
            };
        }
        a.set_status(q, *label);
    }
    a
}

/// Equivalence key of a state once all its successors are canonical:
/// status followed by one slot per letter (0 for absent, `rep + 1`).
pub(crate) fn signature(status: Label, successors: impl Iterator<Item = Option<StateId>>) -> Box<[usize]> {
    std::iter::once(status as usize)
        .chain(successors.map(|t| t.map_or(0, |t| t + 1)))
        .collect()
}

/// Minimises an acyclic 3DFA by a single backward pass.
///
/// States are visited children-first; each state is mapped to the first
/// registered state with the same status and the same (already canonical)
/// successors. Subtrees that lead to no labelled state are dropped, since a
/// missing transition already classifies as don't-care.
pub fn minimize_acyclic(a: &ThreeValuedDfa) -> Result<ThreeValuedDfa, CycleError> {
    let order = topological_postorder(a).ok_or(CycleError)?;
    let n = a.state_count();

    let mut live = vec![false; n];
    for &q in &order {
        live[q] = a.status(q) != Label::DontCare
            || a.successors(q).iter().flatten().any(|&t| live[t]);
    }

    let mut representative = vec![usize::MAX; n];
    let mut register: HashMap<Box<[usize]>, StateId> = HashMap::new();
    let canonical_successors = |q: StateId, representative: &[usize]| {
        a.successors(q)
            .iter()
            .map(|t| t.filter(|&t| live[t]).map(|t| representative[t]))
            .collect::<Vec<_>>()
    };
    for &q in &order {
        let succ = canonical_successors(q, &representative);
        let key = signature(a.status(q), succ.into_iter());
        representative[q] = *register.entry(key).or_insert(q);
    }

    let mut out = ThreeValuedDfa::new(a.alphabet_size());
    let root = representative[a.initial()];
    let mut index = HashMap::from([(root, out.initial())]);
    out.set_status(out.initial(), a.status(root));
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(q) = queue.pop_front() {
        let from = index[&q];
        for (letter, t) in canonical_successors(q, &representative).into_iter().enumerate() {
            let Some(t) = t else { continue };
            let to = *index.entry(t).or_insert_with(|| {
                queue.push_back(t);
                out.add_state(a.status(t))
            });
            out.set_transition(from, letter as u32, to);
        }
    }
    Ok(out)
}
