//! Learning minimal separating DFAs from labelled samples.
//!
//! Samples are turned into an acyclic acceptor (a prefix tree, its minimal
//! three-valued form, or a pair of minimal DFAs), the question "is there a
//! separating DFA with `n` states" is encoded in CNF, and an external SAT
//! solver answers it for increasing `n`.

pub mod automata;
pub mod dfa;
pub mod encoder;
pub mod generators;
pub mod miner;
pub mod sample;
pub mod solver;

pub use automata::{
    build_apta, build_ddfa, build_min_3dfa_incremental, isomorphic, minimize_acyclic, Acceptor,
    DoubleDfa, StateId, ThreeValuedDfa,
};
pub use dfa::LearnedDfa;
pub use encoder::{decode_model, emit_dimacs, encode, CnfFormula, EncodingOptions, VarMap};
pub use miner::{mine_min_dfa, verify_separating, MineOptions, MiningReport, Mode};
pub use sample::{
    lex_compare, parse_abbadingo, sort_and_validate, write_abbadingo, Label, Letter,
    OrderedSampleSet, SampleError, SampleSet, Word,
};
pub use solver::{solve, SolverConfig};
