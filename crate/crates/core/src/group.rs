use crate::error::{Error, Result};

/// A finite group given by its Cayley table. Elements are indices
/// `0..order()`; `table[a][b]` is the index of `a*b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

/// A violated group axiom, reported as data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupViolation {
    NotLatinRow(usize),
    NotLatinColumn(usize),
    Identity(usize),
    Associativity(usize, usize, usize),
}

impl FiniteGroup {
    /// Validated constructor: rejects any table that is not a group.
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let g = Self::unchecked(labels, table, identity)?;
        let violations = g.violations();
        if let Some(v) = violations.first() {
            return Err(Error::InvalidGroup(format!(
                "{} axiom violation(s), first: {v:?}",
                violations.len()
            )));
        }
        Ok(g)
    }

    /// Checks shapes and index ranges only; group axioms are left to
    /// [`FiniteGroup::violations`].
    pub fn unchecked(labels: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let s = labels.len();
        if s == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidGroup(format!("duplicate label {l:?}")));
            }
        }
        if table.len() != s || table.iter().any(|r| r.len() != s) {
            return Err(Error::InvalidGroup(format!("Cayley table must be {s}x{s}")));
        }
        if let Some(&bad) = table.iter().flatten().find(|&&x| x >= s) {
            return Err(Error::IndexOutOfRange {
                what: "group element",
                index: bad,
                bound: s,
            });
        }
        if identity >= s {
            return Err(Error::IndexOutOfRange {
                what: "group identity",
                index: identity,
                bound: s,
            });
        }
        Ok(FiniteGroup {
            labels,
            table,
            identity,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            labels: vec!["e".into()],
            table: vec![vec![0]],
            identity: 0,
        }
    }

    /// Cyclic group Z_n with labels `"0".."n-1"`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        FiniteGroup {
            labels: (0..n).map(|i| i.to_string()).collect(),
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
            identity: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("validated group has inverses")
    }

    pub fn check_index(&self, g: usize) -> Result<()> {
        if g < self.order() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                what: "group element",
                index: g,
                bound: self.order(),
            })
        }
    }

    /// All violated axioms (empty for a genuine group).
    pub fn violations(&self) -> Vec<GroupViolation> {
        let s = self.order();
        let mut out = Vec::new();
        for a in 0..s {
            let mut row = self.table[a].clone();
            row.sort_unstable();
            if row != (0..s).collect::<Vec<_>>() {
                out.push(GroupViolation::NotLatinRow(a));
            }
            let mut col: Vec<usize> = (0..s).map(|b| self.table[b][a]).collect();
            col.sort_unstable();
            if col != (0..s).collect::<Vec<_>>() {
                out.push(GroupViolation::NotLatinColumn(a));
            }
            if self.table[self.identity][a] != a || self.table[a][self.identity] != a {
                out.push(GroupViolation::Identity(a));
            }
        }
        for a in 0..s {
            for b in 0..s {
                for c in 0..s {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        out.push(GroupViolation::Associativity(a, b, c));
                    }
                }
            }
        }
        out
    }
}
