//! Finite posets, flags, regular flags, and the nerve.

use crate::chains::ChainComplex;
use crate::{Error, Result};

/// A finite poset with a fixed enumeration of its elements. The relation is
/// stored reflexively-transitively closed; constructors accept a generating
/// relation (e.g. Hasse edges) and close it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn new(labels: Vec<String>, generating: &[(usize, usize)]) -> Result<Poset> {
        if labels.is_empty() {
            return Err(Error::Malformed("poset must be non-empty".into()));
        }
        {
            let mut sorted = labels.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != labels.len() {
                return Err(Error::Malformed("duplicate poset labels".into()));
            }
        }
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in generating {
            if a >= n || b >= n {
                return Err(Error::Malformed("relation index out of range".into()));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::Malformed(format!(
                        "antisymmetry fails: {} and {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Poset { labels, leq })
    }

    /// The chain `0 < 1 < ... < n-1` with numeric labels.
    pub fn chain(n: usize) -> Poset {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let gen: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Poset::new(labels, &gen).unwrap()
    }

    /// An antichain on the given labels.
    pub fn antichain(labels: Vec<String>) -> Poset {
        Poset::new(labels, &[]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    /// Length of the longest strictly increasing chain.
    pub fn longest_chain_len(&self) -> usize {
        self.regular_flags()
            .iter()
            .map(|f| f.entries.len())
            .max()
            .unwrap_or(0)
    }

    /// All regular flags (strictly increasing chains), each exactly once,
    /// ordered by (length, lexicographic on element indices).
    pub fn regular_flags(&self) -> Vec<RegularFlag> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<Vec<usize>> = (0..self.len()).map(|i| vec![i]).collect();
        while !frontier.is_empty() {
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for c in &frontier {
                let last = *c.last().unwrap();
                for v in 0..self.len() {
                    if self.lt(last, v) {
                        let mut c2 = c.clone();
                        c2.push(v);
                        next.push(c2);
                    }
                }
            }
            frontier = next;
        }
        out.sort_by_key(|c| (c.len(), c.clone()));
        out.into_iter().map(|entries| RegularFlag { entries }).collect()
    }

    /// All flags (weakly increasing sequences) of length `1..=max_len`.
    pub fn flags_up_to(&self, max_len: usize) -> Vec<Flag> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<Vec<usize>> = (0..self.len()).map(|i| vec![i]).collect();
        for _ in 0..max_len {
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for c in &frontier {
                let last = *c.last().unwrap();
                for v in 0..self.len() {
                    if self.leq(last, v) {
                        let mut c2 = c.clone();
                        c2.push(v);
                        next.push(c2);
                    }
                }
            }
            frontier = next;
        }
        out.sort_by_key(|c| (c.len(), c.clone()));
        out.into_iter().map(|entries| Flag { entries }).collect()
    }

    /// The nerve, truncated to non-degenerate simplices of dimension
    /// `<= dim_bound`, with its tautological stratification.
    pub fn nerve(self: &std::sync::Arc<Poset>, dim_bound: usize) -> crate::stratified::StratifiedSimplicialSet {
        let cc = self.nerve_complex(dim_bound);
        let flags = cc.chains.iter().map(|c| Flag { entries: c.clone() }).collect();
        crate::stratified::StratifiedSimplicialSet::new_unchecked(cc.complex, self.clone(), flags)
    }

    /// The nerve as a chain complex on element indices.
    pub fn nerve_complex(&self, dim_bound: usize) -> ChainComplex<usize> {
        ChainComplex::build(
            (0..self.len()).collect(),
            |&a, &b| self.leq(a, b),
            |_| true,
            Some(dim_bound),
        )
    }
}

/// A weakly increasing non-empty sequence of poset elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    pub entries: Vec<usize>,
}

impl Flag {
    pub fn new(poset: &Poset, entries: Vec<usize>) -> Result<Flag> {
        if entries.is_empty() {
            return Err(Error::Malformed("empty flag".into()));
        }
        for w in entries.windows(2) {
            if !poset.leq(w[0], w[1]) {
                return Err(Error::Malformed("flag entries not weakly increasing".into()));
            }
        }
        if entries.iter().any(|&e| e >= poset.len()) {
            return Err(Error::Malformed("flag entry out of range".into()));
        }
        Ok(Flag { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }

    /// Delete entry `i` (the face operator on flags).
    pub fn delete(&self, i: usize) -> Flag {
        let mut e = self.entries.clone();
        e.remove(i);
        Flag { entries: e }
    }

    /// Repeat entry `i` (the degeneracy operator on flags).
    pub fn repeat(&self, i: usize) -> Flag {
        let mut e = self.entries.clone();
        e.insert(i, e[i]);
        Flag { entries: e }
    }

    pub fn is_regular(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] != w[1])
    }

    /// The underlying regular flag: delete repeated entries.
    pub fn underlying_regular(&self) -> RegularFlag {
        let mut entries = self.entries.clone();
        entries.dedup();
        RegularFlag { entries }
    }

    pub fn as_regular(&self) -> Option<RegularFlag> {
        if self.is_regular() {
            Some(RegularFlag {
                entries: self.entries.clone(),
            })
        } else {
            None
        }
    }
}

/// A strictly increasing non-empty sequence of poset elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegularFlag {
    pub entries: Vec<usize>,
}

impl RegularFlag {
    pub fn new(poset: &Poset, entries: Vec<usize>) -> Result<RegularFlag> {
        let f = Flag::new(poset, entries)?;
        if !f.is_regular() {
            return Err(Error::Malformed("flag has repeated entries".into()));
        }
        Ok(RegularFlag { entries: f.entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_flag(&self) -> Flag {
        Flag {
            entries: self.entries.clone(),
        }
    }

    /// Entry-set inclusion: the morphisms of the category of regular flags.
    pub fn subflag_of(&self, other: &RegularFlag) -> bool {
        self.entries.iter().all(|e| other.entries.contains(e))
    }

    /// All non-empty subflags, ordered by (length, lex).
    pub fn subflags(&self) -> Vec<RegularFlag> {
        let n = self.entries.len();
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            let entries: Vec<usize> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.entries[i])
                .collect();
            out.push(RegularFlag { entries });
        }
        out.sort_by_key(|f| (f.entries.len(), f.entries.clone()));
        out
    }
}

/// `flag_subflag`: entry-set inclusion test.
pub fn flag_subflag(i1: &RegularFlag, i2: &RegularFlag) -> bool {
    i1.subflag_of(i2)
}
