use std::fmt::Write as _;
use std::io;

/// A CNF formula over variables `1..=variable_count`.
///
/// Clauses are stored back to back in one literal buffer. A literal is a
/// non-zero signed variable id, negative for negation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfFormula {
    variable_count: usize,
    literals: Vec<i32>,
    ends: Vec<usize>,
}

impl CnfFormula {
    pub fn new(variable_count: usize) -> Self {
        assert!(variable_count < i32::MAX as usize);
        CnfFormula {
            variable_count,
            literals: Vec::new(),
            ends: Vec::new(),
        }
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clause_count(&self) -> usize {
        self.ends.len()
    }

    pub fn literal_count(&self) -> usize {
        self.literals.len()
    }

    /// Appends a clause. An empty disjunction is unsatisfiable and is added
    /// as the contradictory pair `{1}`, `{-1}` so that no stored clause is
    /// empty.
    pub fn add_clause(&mut self, clause: &[i32]) {
        if clause.is_empty() {
            assert!(self.variable_count >= 1, "cannot encode falsity without variables");
            self.add_clause(&[1]);
            self.add_clause(&[-1]);
            return;
        }
        for &lit in clause {
            assert!(
                lit != 0 && lit.unsigned_abs() as usize <= self.variable_count,
                "literal {lit} out of range 1..={}",
                self.variable_count
            );
        }
        self.literals.extend_from_slice(clause);
        self.ends.push(self.literals.len());
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[i32]> + '_ {
        let mut start = 0;
        self.ends.iter().map(move |&end| {
            let c = &self.literals[start..end];
            start = end;
            c
        })
    }

    /// Moves every clause of `other` into `self`.
    pub fn append(&mut self, other: CnfFormula) {
        assert!(other.variable_count <= self.variable_count);
        let base = self.literals.len();
        self.literals.extend(other.literals);
        self.ends.extend(other.ends.into_iter().map(|e| e + base));
    }

    /// Whether `assignment` satisfies every clause.
    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.first_violated(assignment).is_none()
    }

    pub fn first_violated(&self, assignment: &Assignment) -> Option<usize> {
        self.clauses()
            .position(|c| !c.iter().any(|&lit| assignment.literal(lit)))
    }

    /// Marks which variables occur in at least one clause (index 0 unused).
    pub fn occurring_variables(&self) -> Vec<bool> {
        let mut seen = vec![false; self.variable_count + 1];
        for &lit in &self.literals {
            seen[lit.unsigned_abs() as usize] = true;
        }
        seen
    }

    /// Standard DIMACS: a `p cnf <vars> <clauses>` header, then one
    /// zero-terminated clause per line.
    pub fn write_dimacs<W: io::Write>(&self, out: &mut W) -> io::Result<()> {
        let mut line = String::new();
        writeln!(out, "p cnf {} {}", self.variable_count, self.clause_count())?;
        for c in self.clauses() {
            line.clear();
            for lit in c {
                let _ = write!(line, "{lit} ");
            }
            line.push_str("0\n");
            out.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    /// Upper estimate of the DIMACS text size in bytes.
    pub fn dimacs_size_hint(&self) -> usize {
        let digits = self.variable_count.max(1).ilog10() as usize + 3;
        32 + self.literals.len() * digits + self.ends.len() * 2
    }
}

/// Renders `f` as DIMACS text.
pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut buf = Vec::with_capacity(f.dimacs_size_hint());
    f.write_dimacs(&mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}

/// A total truth assignment for variables `1..=variable_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    /// All variables false.
    pub fn new(variable_count: usize) -> Self {
        Assignment {
            values: vec![false; variable_count + 1],
        }
    }

    pub fn variable_count(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, var: usize) -> bool {
        self.values[var]
    }

    pub fn set(&mut self, var: usize, value: bool) {
        assert!(var >= 1, "variable ids start at 1");
        self.values[var] = value;
    }

    pub fn literal(&self, lit: i32) -> bool {
        let v = self.values[lit.unsigned_abs() as usize];
        if lit > 0 {
            v
        } else {
            !v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_output() {
        let mut f = CnfFormula::new(1);
        f.add_clause(&[1]);
        assert_eq!(emit_dimacs(&f), "p cnf 1 1\n1 0\n");

        let mut f = CnfFormula::new(2);
        f.add_clause(&[1, -2]);
        f.add_clause(&[2]);
        assert_eq!(emit_dimacs(&f), "p cnf 2 2\n1 -2 0\n2 0\n");

        assert_eq!(emit_dimacs(&CnfFormula::new(7)), "p cnf 7 0\n");
    }

    #[test]
    fn empty_clause_becomes_contradiction() {
        let mut f = CnfFormula::new(3);
        f.add_clause(&[]);
        assert_eq!(f.clause_count(), 2);
        assert!(f.clauses().all(|c| !c.is_empty()));
        let mut a = Assignment::new(3);
        assert!(!f.is_satisfied_by(&a));
        a.set(1, true);
        assert!(!f.is_satisfied_by(&a));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn rejects_out_of_range_literals() {
        CnfFormula::new(2).add_clause(&[3]);
    }

    #[test]
    fn append_and_evaluate() {
        let mut f = CnfFormula::new(2);
        f.add_clause(&[1, 2]);
        let mut g = CnfFormula::new(2);
        g.add_clause(&[-1]);
        f.append(g);
        assert_eq!(f.clauses().collect::<Vec<_>>(), vec![&[1, 2][..], &[-1][..]]);
        let mut a = Assignment::new(2);
        a.set(2, true);
        assert!(f.is_satisfied_by(&a));
        assert_eq!(f.occurring_variables(), vec![false, true, true]);
    }

    #[test]
    fn size_hint_bounds_output() {
        let mut f = CnfFormula::new(12345);
        for v in 1..=1000 {
            f.add_clause(&[-v, v + 1, 12345]);
        }
        assert!(emit_dimacs(&f).len() <= f.dimacs_size_hint());
    }
}
