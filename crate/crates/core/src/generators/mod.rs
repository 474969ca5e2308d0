//! Sample corpora: parity-condition words and random-DFA benchmarks.

mod parity;
mod random;

pub use parity::{
    classify_parity_word, count_parity_samples, gen_parity_samples, ParityConfig, ParityCounts,
    DEFAULT_BUDGET,
};
pub use random::{gen_random_benchmark, gen_random_dfa, gen_samples_from_dfa, word_pool_size};

use thiserror::Error;

use crate::sample::Letter;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("need at least 2 colours, got {0}")]
    TooFewColours(usize),
    #[error("length {length} must exceed the number of colours {colours}")]
    LengthTooShort { length: usize, colours: usize },
    #[error("letter {letter} is not a colour below {colours}")]
    LetterOutOfRange { letter: Letter, colours: usize },
    #[error("{words} words exceed the enumeration budget of {budget}")]
    BudgetExceeded { words: String, budget: u64 },
    #[error("cannot draw {requested} distinct words, only {available} exist")]
    PoolExhausted { requested: usize, available: u128 },
    #[error("{0} must be at least 1")]
    Zero(&'static str),
}
