//! Clause generators. Each appends its constraint group to a formula sized
//! by the given [`VarMap`].

use super::{CnfFormula, VarMap};
use crate::automata::Acceptor;
use crate::sample::{Label, Letter};

/// Determinism (at most one successor per state and letter) and
/// completeness (at least one).
pub fn encode_dfa_shape(vm: &VarMap, out: &mut CnfFormula) {
    let n = vm.n();
    for i in 0..n {
        for a in 0..vm.alphabet_size() as Letter {
            for j in 0..n {
                for k in j + 1..n {
                    out.add_clause(&[-vm.transition(i, a, j), -vm.transition(i, a, k)]);
                }
            }
            let some: Vec<i32> = (0..n).map(|j| vm.transition(i, a, j)).collect();
            out.add_clause(&some);
        }
    }
}

/// Product of the candidate DFA with the acceptor: initial states meet DFA
/// state 0, accepting states force acceptance, rejecting states forbid it,
/// and product reachability follows both transition functions.
pub fn encode_product<A: Acceptor + ?Sized>(vm: &VarMap, acceptor: &A, out: &mut CnfFormula) {
    let n = vm.n();
    for q in acceptor.initial_states() {
        out.add_clause(&[vm.product(q, 0)]);
    }
    for &q in vm.product_states() {
        match acceptor.status(q) {
            Label::Positive => {
                for i in 0..n {
                    out.add_clause(&[-vm.product(q, i), vm.accepting(i)]);
                }
            }
            Label::Negative => {
                for i in 0..n {
                    out.add_clause(&[-vm.product(q, i), -vm.accepting(i)]);
                }
            }
            Label::DontCare => {}
        }
    }
    for &q in vm.product_states() {
        for a in 0..vm.alphabet_size() as Letter {
            let Some(next) = acceptor.successor(q, a) else {
                continue;
            };
            for i in 0..n {
                for j in 0..n {
                    out.add_clause(&[
                        -vm.product(q, i),
                        -vm.transition(i, a, j),
                        vm.product(next, j),
                    ]);
                }
            }
        }
    }
}

/// Breadth-first canonical form of the candidate DFA.
///
/// With `safety_mode`, every clause that mentions DFA state `n - 1` is left
/// out, since the parity constraints pin that state as the sink.
pub fn encode_symmetry_breaking(vm: &VarMap, safety_mode: bool, out: &mut CnfFormula) {
    let n = vm.n();
    let k = vm.alphabet_size() as Letter;
    let skip = |nodes: &[usize]| safety_mode && nodes.contains(&(n - 1));
    let mut clause = Vec::new();

    // Parent of j is the smallest state with a transition into j.
    for j in 1..n {
        for i in 0..j {
            if skip(&[i, j]) {
                continue;
            }
            let p = vm.parent(j, i);
            out.add_clause(&[-p, vm.edge(i, j)]);
            for kk in 0..i {
                out.add_clause(&[-p, -vm.edge(kk, j)]);
            }
            clause.clear();
            clause.push(p);
            clause.push(-vm.edge(i, j));
            clause.extend((0..i).map(|kk| vm.edge(kk, j)));
            out.add_clause(&clause);
        }
    }
    // Parents are non-decreasing in child order.
    for j in 1..n.saturating_sub(1) {
        for i in 0..j {
            for kk in 0..i {
                if skip(&[i, j, j + 1, kk]) {
                    continue;
                }
                out.add_clause(&[-vm.parent(j, i), -vm.parent(j + 1, kk)]);
            }
        }
    }
    // The tree edge carries the smallest letter between the two states.
    for i in 0..n {
        for j in i + 1..n {
            if skip(&[i, j]) {
                continue;
            }
            for a in 0..k {
                let m = vm.tree_edge(i, a, j);
                out.add_clause(&[-m, vm.transition(i, a, j)]);
                for b in 0..a {
                    out.add_clause(&[-m, -vm.transition(i, b, j)]);
                }
                clause.clear();
                clause.push(m);
                clause.push(-vm.transition(i, a, j));
                clause.extend((0..a).map(|b| vm.transition(i, b, j)));
                out.add_clause(&clause);
            }
        }
    }
    // Siblings are ordered by the letter on their tree edge.
    for i in 0..n {
        for j in i + 1..n.saturating_sub(1) {
            if skip(&[i, j, j + 1]) {
                continue;
            }
            for b in 0..k {
                for a in 0..b {
                    out.add_clause(&[
                        -vm.parent(j, i),
                        -vm.parent(j + 1, i),
                        -vm.tree_edge(i, b, j),
                        -vm.tree_edge(i, a, j + 1),
                    ]);
                }
            }
        }
    }
    // Edge variables summarise transitions.
    for i in 0..n {
        for j in i + 1..n {
            if skip(&[i, j]) {
                continue;
            }
            let t = vm.edge(i, j);
            clause.clear();
            clause.push(-t);
            clause.extend((0..k).map(|a| vm.transition(i, a, j)));
            out.add_clause(&clause);
            for a in 0..k {
                out.add_clause(&[-vm.transition(i, a, j), t]);
            }
        }
    }
    // Every non-initial state has a parent.
    for i in 1..n {
        if skip(&[i]) {
            continue;
        }
        let parents: Vec<i32> = (0..i).map(|j| vm.parent(i, j)).collect();
        out.add_clause(&parents);
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParityEncodingError {
    #[error("parity constraints need at least 2 DFA states, got {0}")]
    TooFewStates(usize),
    #[error("parity constraints need at least 2 colours, got {0}")]
    TooFewColours(usize),
    #[error("alphabet size {alphabet_size} does not match {colours} colours")]
    AlphabetMismatch { alphabet_size: usize, colours: usize },
}

/// Shape constraints for separating automata of parity conditions over
/// colours `0..colours`: state 0 is initial, state `n - 1` is the sink.
///
/// With highest colour `h = colours - 1`, "own" colours share the parity of
/// `h` and "opponent" colours have the other parity.
pub fn encode_parity_constraints(
    vm: &VarMap,
    colours: usize,
    out: &mut CnfFormula,
) -> Result<(), ParityEncodingError> {
    let n = vm.n();
    if n < 2 {
        return Err(ParityEncodingError::TooFewStates(n));
    }
    if colours < 2 {
        return Err(ParityEncodingError::TooFewColours(colours));
    }
    if vm.alphabet_size() != colours {
        return Err(ParityEncodingError::AlphabetMismatch {
            alphabet_size: vm.alphabet_size(),
            colours,
        });
    }
    let highest = colours - 1;
    let sink = n - 1;
    let is_opponent = |a: usize| a % 2 != highest % 2;
    let own: Vec<Letter> = (0..colours).filter(|&a| !is_opponent(a)).map(|a| a as Letter).collect();
    let opponent: Vec<Letter> = (0..colours).filter(|&a| is_opponent(a)).map(|a| a as Letter).collect();

    // Initial state loops on own colours.
    for &a in &own {
        out.add_clause(&[vm.transition(0, a, 0)]);
    }
    // Opponent colours leave the initial state, but not to the sink.
    for &a in &opponent {
        let targets: Vec<i32> = (1..sink).map(|i| vm.transition(0, a, i)).collect();
        out.add_clause(&targets);
    }
    // Only opponent colours lead into the sink.
    for i in 0..sink {
        for &a in &own {
            out.add_clause(&[-vm.transition(i, a, sink)]);
        }
    }
    // The highest colour resets to the initial state.
    for i in 0..sink {
        out.add_clause(&[vm.transition(i, highest as Letter, 0)]);
    }
    // The sink is absorbing.
    for a in 0..colours as Letter {
        out.add_clause(&[vm.transition(sink, a, sink)]);
    }
    // No self-loops on opponent colours outside the sink.
    for i in 0..sink {
        for &a in &opponent {
            out.add_clause(&[-vm.transition(i, a, i)]);
        }
    }
    // Safety (sink is the only rejecting state) when the highest colour is
    // even, co-safety (sink is the only accepting state) otherwise.
    let safety = highest % 2 == 0;
    for i in 0..sink {
        let f = vm.accepting(i);
        out.add_clause(&[if safety { f } else { -f }]);
    }
    let f = vm.accepting(sink);
    out.add_clause(&[if safety { -f } else { f }]);
    Ok(())
}
