//! SAT encoding of "is there an `n`-state complete DFA separating this
//! acceptor's accepting and rejecting words?".

mod cnf;
mod constraints;
mod varmap;

pub use cnf::{emit_dimacs, Assignment, CnfFormula};
pub use constraints::{
    encode_dfa_shape, encode_parity_constraints, encode_product, encode_symmetry_breaking,
    ParityEncodingError,
};
pub use varmap::{VarKind, VarMap};

use thiserror::Error;

use crate::automata::Acceptor;
use crate::dfa::LearnedDfa;
use crate::sample::Letter;

/// Which optional constraint groups to add on top of the core formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodingOptions {
    pub symmetry_breaking: bool,
    /// Number of colours when the parity/safety shape constraints are on.
    pub parity_colours: Option<usize>,
}

impl Default for EncodingOptions {
    fn default() -> Self {
        EncodingOptions {
            symmetry_breaking: true,
            parity_colours: None,
        }
    }
}

/// Encodes the full instance for candidate size `n`.
pub fn encode<A: Acceptor + ?Sized>(
    acceptor: &A,
    n: usize,
    options: EncodingOptions,
) -> Result<(VarMap, CnfFormula), ParityEncodingError> {
    let vm = VarMap::new(n, acceptor, options.symmetry_breaking);
    let mut cnf = CnfFormula::new(vm.variable_count());
    encode_dfa_shape(&vm, &mut cnf);
    encode_product(&vm, acceptor, &mut cnf);
    if options.symmetry_breaking {
        encode_symmetry_breaking(&vm, options.parity_colours.is_some(), &mut cnf);
    }
    if let Some(colours) = options.parity_colours {
        encode_parity_constraints(&vm, colours, &mut cnf)?;
    }
    Ok((vm, cnf))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("state {state} has {count} successors on letter {letter}")]
    Nondeterministic {
        state: usize,
        letter: Letter,
        count: usize,
    },
    #[error("state {state} has no successor on letter {letter}")]
    Incomplete { state: usize, letter: Letter },
    #[error("assignment covers {got} variables, layout needs {needed}")]
    TooShort { got: usize, needed: usize },
}

/// Reads the DFA off a model: `i --a--> j` iff `e(i,a,j)`, state `i`
/// accepting iff `f(i)`.
pub fn decode_model(assignment: &Assignment, vm: &VarMap) -> Result<LearnedDfa, DecodeError> {
    if assignment.variable_count() < vm.variable_count() {
        return Err(DecodeError::TooShort {
            got: assignment.variable_count(),
            needed: vm.variable_count(),
        });
    }
    let n = vm.n();
    let k = vm.alphabet_size();
    let mut transitions = Vec::with_capacity(n * k);
    for i in 0..n {
        for a in 0..k as Letter {
            let targets: Vec<usize> = (0..n)
                .filter(|&j| assignment.value(vm.transition(i, a, j) as usize))
                .collect();
            match targets[..] {
                [j] => transitions.push(j),
                [] => return Err(DecodeError::Incomplete { state: i, letter: a }),
                _ => {
                    return Err(DecodeError::Nondeterministic {
                        state: i,
                        letter: a,
                        count: targets.len(),
                    })
                }
            }
        }
    }
    let accepting = (0..n)
        .map(|i| assignment.value(vm.accepting(i) as usize))
        .collect();
    Ok(LearnedDfa::new(k, transitions, accepting))
}
