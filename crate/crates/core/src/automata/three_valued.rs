use std::fmt::Write as _;

use thiserror::Error;

use crate::sample::{Label, Letter, Word};

/// Dense state index.
pub type StateId = usize;

/// Deterministic, possibly partial automaton whose states are accepting,
/// rejecting or don't-care.
///
/// A missing transition means the word has no run at all; [`run`] reports
/// that as `None`.
///
/// [`run`]: ThreeValuedDfa::run
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeValuedDfa {
    alphabet_size: usize,
    initial: StateId,
    status: Vec<Label>,
    transitions: Vec<Option<StateId>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DumpError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("state {0} is listed more than once")]
    DuplicateState(StateId),
    #[error("state {0} has no status line")]
    MissingState(StateId),
    #[error("state {state} has two transitions on letter {letter}")]
    Nondeterministic { state: StateId, letter: Letter },
    #[error("automaton is not a complete two-valued DFA: {0}")]
    NotComplete(String),
}

impl ThreeValuedDfa {
    /// A single don't-care initial state without transitions.
    pub fn new(alphabet_size: usize) -> Self {
        ThreeValuedDfa {
            alphabet_size,
            initial: 0,
            status: vec![Label::DontCare],
            transitions: vec![None; alphabet_size],
        }
    }

    /// Builds an automaton from raw parts. `transitions` is row-major,
    /// `state * alphabet_size + letter`.
    pub fn from_parts(
        alphabet_size: usize,
        initial: StateId,
        status: Vec<Label>,
        transitions: Vec<Option<StateId>>,
    ) -> Self {
        assert_eq!(transitions.len(), status.len() * alphabet_size);
        assert!(initial < status.len());
        assert!(transitions.iter().flatten().all(|&t| t < status.len()));
        ThreeValuedDfa {
            alphabet_size,
            initial,
            status,
            transitions,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn state_count(&self) -> usize {
        self.status.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn status(&self, state: StateId) -> Label {
        self.status[state]
    }

    pub fn set_status(&mut self, state: StateId, status: Label) {
        self.status[state] = status;
    }

    pub fn successor(&self, state: StateId, letter: Letter) -> Option<StateId> {
        self.transitions[state * self.alphabet_size + letter as usize]
    }

    pub fn successors(&self, state: StateId) -> &[Option<StateId>] {
        let k = self.alphabet_size;
        &self.transitions[state * k..(state + 1) * k]
    }

    pub fn add_state(&mut self, status: Label) -> StateId {
        self.status.push(status);
        self.transitions
            .extend(std::iter::repeat(None).take(self.alphabet_size));
        self.status.len() - 1
    }

    pub fn set_transition(&mut self, from: StateId, letter: Letter, to: StateId) {
        assert!(to < self.status.len());
        self.transitions[from * self.alphabet_size + letter as usize] = Some(to);
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.iter().flatten().count()
    }

    /// `(state, letter, successor)` for every defined transition.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, StateId)> + '_ {
        let k = self.alphabet_size;
        self.transitions
            .iter()
            .enumerate()
            .filter_map(move |(idx, t)| t.map(|t| (idx / k, (idx % k) as Letter, t)))
    }

    pub fn states_with(&self, status: Label) -> impl Iterator<Item = StateId> + '_ {
        self.status
            .iter()
            .enumerate()
            .filter(move |(_, &s)| s == status)
            .map(|(i, _)| i)
    }

    pub fn has_children(&self, state: StateId) -> bool {
        self.successors(state).iter().any(Option::is_some)
    }

    /// Classification of `word`, or `None` when some transition is missing.
    pub fn run(&self, word: &Word) -> Option<Label> {
        self.run_from(self.initial, word.letters())
    }

    pub(crate) fn run_from(&self, start: StateId, letters: &[Letter]) -> Option<Label> {
        let mut q = start;
        for &a in letters {
            q = self.successor(q, a)?;
        }
        Some(self.status[q])
    }

    pub fn reachable_count(&self) -> usize {
        self.bfs_order().len()
    }

    pub fn all_reachable(&self) -> bool {
        self.reachable_count() == self.state_count()
    }

    /// Reachable states in breadth-first order, letters ascending.
    fn bfs_order(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for t in self.successors(q).iter().flatten() {
                if !seen[*t] {
                    seen[*t] = true;
                    order.push(*t);
                }
            }
        }
        order
    }

    /// Breadth-first renumbering of the reachable part: initial becomes 0,
    /// and states are numbered in discovery order with letters ascending.
    pub fn canonical(&self) -> ThreeValuedDfa {
        let order = self.bfs_order();
        let mut index = vec![usize::MAX; self.state_count()];
        for (new, &old) in order.iter().enumerate() {
            index[old] = new;
        }
        let k = self.alphabet_size;
        let mut transitions = Vec::with_capacity(order.len() * k);
        for &old in &order {
            transitions.extend(self.successors(old).iter().map(|t| t.map(|t| index[t])));
        }
        ThreeValuedDfa {
            alphabet_size: k,
            initial: 0,
            status: order.iter().map(|&q| self.status[q]).collect(),
            transitions,
        }
    }

    /// Checks for a cycle among reachable states.
    pub fn is_acyclic(&self) -> bool {
        super::topological_postorder(self).is_some()
    }

    /// Line-oriented text dump: a `states <n> initial <i> alphabet <k>`
    /// header, one `state <id> <A|R|D>` line per state, then one
    /// `trans <src> <letter> <dst>` line per transition.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "states {} initial {} alphabet {}",
            self.state_count(),
            self.initial,
            self.alphabet_size
        );
        for (q, s) in self.status.iter().enumerate() {
            let tag = match s {
                Label::Positive => 'A',
                Label::Negative => 'R',
                Label::DontCare => 'D',
            };
            let _ = writeln!(out, "state {q} {tag}");
        }
        for (q, a, t) in self.transitions() {
            let _ = writeln!(out, "trans {q} {a} {t}");
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self, DumpError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let malformed = |line: usize, reason: &str| DumpError::Malformed {
            line,
            reason: reason.to_string(),
        };

        let (hl, header) = lines
            .next()
            .ok_or_else(|| malformed(1, "empty automaton dump"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (n, initial, k) = match fields[..] {
            ["states", n, "initial", i, "alphabet", k] => {
                let parse = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| malformed(hl, "header fields must be non-negative integers"))
                };
                (parse(n)?, parse(i)?, parse(k)?)
            }
            _ => {
                return Err(malformed(
                    hl,
                    "expected \"states <n> initial <i> alphabet <k>\"",
                ))
            }
        };
        if n == 0 || initial >= n {
            return Err(malformed(hl, "initial state out of range"));
        }

        let mut status: Vec<Option<Label>> = vec![None; n];
        let mut transitions = vec![None; n * k];
        for (line, content) in lines {
            let fields: Vec<&str> = content.split_whitespace().collect();
            let num = |s: &str, bound: usize, what: &str| -> Result<usize, DumpError> {
                match s.parse::<usize>() {
                    Ok(v) if v < bound => Ok(v),
                    _ => Err(malformed(line, &format!("{what} {s:?} out of range"))),
                }
            };
            match fields[..] {
                ["state", id, tag] => {
                    let id = num(id, n, "state")?;
                    let label = match tag {
                        "A" => Label::Positive,
                        "R" => Label::Negative,
                        "D" => Label::DontCare,
                        _ => return Err(malformed(line, "status must be A, R or D")),
                    };
                    if status[id].replace(label).is_some() {
                        return Err(DumpError::DuplicateState(id));
                    }
                }
                ["trans", src, letter, dst] => {
                    let src = num(src, n, "state")?;
                    let letter = num(letter, k, "letter")?;
                    let dst = num(dst, n, "state")?;
                    let slot = &mut transitions[src * k + letter];
                    if slot.is_some() {
                        return Err(DumpError::Nondeterministic {
                            state: src,
                            letter: letter as Letter,
                        });
                    }
                    *slot = Some(dst);
                }
                _ => return Err(malformed(line, "expected a state or trans line")),
            }
        }
        let status = status
            .into_iter()
            .enumerate()
            .map(|(q, s)| s.ok_or(DumpError::MissingState(q)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ThreeValuedDfa {
            alphabet_size: k,
            initial,
            status,
            transitions,
        })
    }
}

/// True iff the breadth-first canonical renumberings of `a` and `b` have
/// identical transition tables and status partitions.
pub fn isomorphic(a: &ThreeValuedDfa, b: &ThreeValuedDfa) -> bool {
    a.alphabet_size == b.alphabet_size && a.canonical() == b.canonical()
}
