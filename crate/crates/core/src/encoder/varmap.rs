use std::fmt;
use std::io;

use crate::automata::{Acceptor, StateId};
use crate::sample::Letter;

/// What a propositional variable stands for. `i`, `j`, `k` range over the
/// states `0..n` of the candidate DFA; `state` is an acceptor state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// DFA transition `from --letter--> to`.
    Transition { from: usize, letter: Letter, to: usize },
    /// DFA state is accepting.
    Accepting { state: usize },
    /// Acceptor state and DFA state are reached together by some word.
    Product { state: StateId, dfa_state: usize },
    /// Some letter leads from `from` to `to` (only `from < to`).
    Edge { from: usize, to: usize },
    /// `parent` is the BFS-tree parent of `child` (only `parent < child`).
    Parent { child: usize, parent: usize },
    /// The BFS-tree edge from `from` to `to` carries `letter` (only `from < to`).
    TreeEdge { from: usize, letter: Letter, to: usize },
}

impl VarKind {
    /// Whether the variable refers to DFA state `q`.
    pub fn mentions(&self, q: usize) -> bool {
        match *self {
            VarKind::Transition { from, to, .. }
            | VarKind::Edge { from, to }
            | VarKind::TreeEdge { from, to, .. } => from == q || to == q,
            VarKind::Accepting { state } => state == q,
            VarKind::Product { dfa_state, .. } => dfa_state == q,
            VarKind::Parent { child, parent } => child == q || parent == q,
        }
    }
}

impl fmt::Display for VarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarKind::Transition { from, letter, to } => write!(f, "e {from} {letter} {to}"),
            VarKind::Accepting { state } => write!(f, "f {state}"),
            VarKind::Product { state, dfa_state } => write!(f, "d {state} {dfa_state}"),
            VarKind::Edge { from, to } => write!(f, "t {from} {to}"),
            VarKind::Parent { child, parent } => write!(f, "p {child} {parent}"),
            VarKind::TreeEdge { from, letter, to } => write!(f, "m {from} {letter} {to}"),
        }
    }
}

/// Dense, 1-based variable layout for an `n`-state candidate DFA.
///
/// Blocks in order: transition, accepting, product, then (only with
/// symmetry breaking) edge, parent and tree-edge variables, each block
/// row-major in its indices. Product rows exist only for acceptor states
/// reachable from an initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    n: usize,
    alphabet_size: usize,
    symmetry: bool,
    product_row: Vec<Option<usize>>,
    product_states: Vec<StateId>,
    accepting_base: usize,
    product_base: usize,
    edge_base: usize,
    parent_base: usize,
    tree_edge_base: usize,
    end: usize,
}

impl VarMap {
    pub fn new<A: Acceptor + ?Sized>(n: usize, acceptor: &A, symmetry: bool) -> Self {
        let reachable = acceptor.reachable_states();
        let mut product_row = vec![None; acceptor.state_count()];
        for (row, &q) in reachable.iter().enumerate() {
            product_row[q] = Some(row);
        }
        Self::with_rows(n, acceptor.alphabet_size(), product_row, reachable, symmetry)
    }

    /// Layout without product variables, for encoding the DFA shape alone.
    pub fn without_acceptor(n: usize, alphabet_size: usize, symmetry: bool) -> Self {
        Self::with_rows(n, alphabet_size, Vec::new(), Vec::new(), symmetry)
    }

    fn with_rows(
        n: usize,
        alphabet_size: usize,
        product_row: Vec<Option<usize>>,
        product_states: Vec<StateId>,
        symmetry: bool,
    ) -> Self {
        assert!(n >= 1, "candidate DFA needs at least one state");
        let pairs = n * (n - 1) / 2;
        let accepting_base = 1 + n * alphabet_size * n;
        let product_base = accepting_base + n;
        let edge_base = product_base + product_states.len() * n;
        let (parent_base, tree_edge_base, end) = if symmetry {
            let parent_base = edge_base + pairs;
            let tree_edge_base = parent_base + pairs;
            (parent_base, tree_edge_base, tree_edge_base + pairs * alphabet_size)
        } else {
            (edge_base, edge_base, edge_base)
        };
        VarMap {
            n,
            alphabet_size,
            symmetry,
            product_row,
            product_states,
            accepting_base,
            product_base,
            edge_base,
            parent_base,
            tree_edge_base,
            end,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn has_symmetry_vars(&self) -> bool {
        self.symmetry
    }

    pub fn variable_count(&self) -> usize {
        self.end - 1
    }

    /// Acceptor states that have product variables, ascending.
    pub fn product_states(&self) -> &[StateId] {
        &self.product_states
    }

    /// Pairs `(i, j)` with `i < j` before row `i`.
    fn row_start(&self, i: usize) -> usize {
        i * (self.n - 1) - i * i.saturating_sub(1) / 2
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        self.row_start(i) + (j - i - 1)
    }

    pub fn transition(&self, i: usize, a: Letter, j: usize) -> i32 {
        debug_assert!(i < self.n && j < self.n && (a as usize) < self.alphabet_size);
        (1 + (i * self.alphabet_size + a as usize) * self.n + j) as i32
    }

    pub fn accepting(&self, i: usize) -> i32 {
        debug_assert!(i < self.n);
        (self.accepting_base + i) as i32
    }

    /// Panics if `state` has no product row.
    pub fn product(&self, state: StateId, i: usize) -> i32 {
        let row = self.product_row[state].expect("acceptor state has no product variables");
        (self.product_base + row * self.n + i) as i32
    }

    pub fn has_product_row(&self, state: StateId) -> bool {
        self.product_row.get(state).copied().flatten().is_some()
    }

    pub fn edge(&self, i: usize, j: usize) -> i32 {
        assert!(self.symmetry);
        (self.edge_base + self.pair_index(i, j)) as i32
    }

    pub fn parent(&self, child: usize, parent: usize) -> i32 {
        assert!(self.symmetry);
        debug_assert!(parent < child && child < self.n);
        (self.parent_base + child * (child - 1) / 2 + parent) as i32
    }

    pub fn tree_edge(&self, i: usize, a: Letter, j: usize) -> i32 {
        assert!(self.symmetry);
        debug_assert!(i < j && j < self.n);
        let row_len = self.n - 1 - i;
        (self.tree_edge_base
            + self.row_start(i) * self.alphabet_size
            + a as usize * row_len
            + (j - i - 1)) as i32
    }

    pub fn var(&self, kind: VarKind) -> i32 {
        match kind {
            VarKind::Transition { from, letter, to } => self.transition(from, letter, to),
            VarKind::Accepting { state } => self.accepting(state),
            VarKind::Product { state, dfa_state } => self.product(state, dfa_state),
            VarKind::Edge { from, to } => self.edge(from, to),
            VarKind::Parent { child, parent } => self.parent(child, parent),
            VarKind::TreeEdge { from, letter, to } => self.tree_edge(from, letter, to),
        }
    }

    /// Inverse of allocation; `None` for ids outside the layout.
    pub fn decode(&self, var: usize) -> Option<VarKind> {
        let n = self.n;
        let k = self.alphabet_size;
        if var == 0 || var >= self.end {
            return None;
        }
        if var < self.accepting_base {
            let idx = var - 1;
            let to = idx % n;
            let row = idx / n;
            return Some(VarKind::Transition {
                from: row / k,
                letter: (row % k) as Letter,
                to,
            });
        }
        if var < self.product_base {
            return Some(VarKind::Accepting {
                state: var - self.accepting_base,
            });
        }
        if var < self.edge_base {
            let idx = var - self.product_base;
            return Some(VarKind::Product {
                state: self.product_states[idx / n],
                dfa_state: idx % n,
            });
        }
        if var < self.parent_base {
            let (from, to) = self.pair_from_index(var - self.edge_base);
            return Some(VarKind::Edge { from, to });
        }
        if var < self.tree_edge_base {
            let mut idx = var - self.parent_base;
            let mut child = 1;
            while idx >= child {
                idx -= child;
                child += 1;
            }
            return Some(VarKind::Parent { child, parent: idx });
        }
        let mut idx = var - self.tree_edge_base;
        for from in 0..n {
            let row_len = n - 1 - from;
            if idx < row_len * k {
                return Some(VarKind::TreeEdge {
                    from,
                    letter: (idx / row_len) as Letter,
                    to: from + 1 + idx % row_len,
                });
            }
            idx -= row_len * k;
        }
        None
    }

    fn pair_from_index(&self, mut idx: usize) -> (usize, usize) {
        for i in 0..self.n {
            let row_len = self.n - 1 - i;
            if idx < row_len {
                return (i, i + 1 + idx);
            }
            idx -= row_len;
        }
        unreachable!("pair index out of range")
    }

    /// Writes one `c var <id> = <kind> <indices>` comment line per variable.
    pub fn write_comments<W: io::Write>(&self, out: &mut W) -> io::Result<()> {
        for var in 1..self.end {
            let kind = self.decode(var).expect("every id in range decodes");
            writeln!(out, "c var {var} = {kind}")?;
        }
        Ok(())
    }
}
