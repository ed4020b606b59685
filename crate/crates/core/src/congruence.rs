//! Partitions of a universe, stored as canonical block assignments.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::Structure;
use crate::tuples::AllTuples;

/// An equivalence relation on `0..n`.
///
/// Blocks are numbered by first occurrence, so two equal relations always have
/// equal representations. Whether the relation is compatible with a structure
/// is a separate question, see [`Congruence::is_compatible`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Congruence {
    labels: Vec<usize>,
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence { labels: (0..n).collect() }
    }

    pub fn full(n: usize) -> Self {
        Congruence { labels: vec![0; n] }
    }

    /// Builds from any block assignment; labels are renumbered canonically.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renumber = std::collections::HashMap::new();
        let labels = labels
            .iter()
            .map(|l| {
                let next = renumber.len();
                *renumber.entry(*l).or_insert(next)
            })
            .collect();
        Congruence { labels }
    }

    /// Builds from a list of blocks; elements not mentioned become singletons.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        for block in blocks {
            for &x in block {
                if x >= n {
                    return Err(Error::ElementOutOfRange { element: x, size: n });
                }
                uf.union(block[0], x);
            }
        }
        Ok(uf.into_congruence())
    }

    pub fn universe_size(&self) -> usize {
        self.labels.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.labels.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.labels.len()
    }

    /// Pairs `(x, rep(x))` whose equivalence closure is this relation.
    pub fn generating_pairs(&self) -> Vec<(usize, usize)> {
        self.blocks()
            .into_iter()
            .flat_map(|b| {
                let rep = b[0];
                b.into_iter().skip(1).map(move |x| (rep, x))
            })
            .collect()
    }

    /// Restriction to `elems`, re-indexed by position in `elems`.
    pub fn restrict(&self, elems: &[usize]) -> Congruence {
        Congruence::from_labels(&elems.iter().map(|&x| self.labels[x]).collect::<Vec<_>>())
    }

    /// Pulls a partition on positions back to the elements `elems[i]` of a
    /// universe of size `n`; other elements become singletons.
    pub fn embed(&self, elems: &[usize], n: usize) -> Congruence {
        let mut uf = UnionFind::new(n);
        for block in self.blocks() {
            for &i in &block[1..] {
                uf.union(elems[block[0]], elems[i]);
            }
        }
        uf.into_congruence()
    }

    /// Whether every pair of this relation is also related in `other`.
    pub fn is_finer_than(&self, other: &Congruence) -> bool {
        self.generating_pairs().into_iter().all(|(x, y)| other.related(x, y))
    }

    pub fn is_compatible(&self, structure: &Structure) -> bool {
        self.compatibility_violation(structure).is_none()
    }

    /// Describes the first operation that fails to respect the partition.
    ///
    /// Compatibility is checked one argument position at a time, which is
    /// equivalent to the full tuple condition by transitivity.
    pub(crate) fn compatibility_violation(&self, structure: &Structure) -> Option<String> {
        let n = structure.size();
        if n != self.labels.len() {
            return Some(format!("partition of {} elements on a universe of size {n}", self.labels.len()));
        }
        let pairs = self.generating_pairs();
        let mut args = Vec::new();
        for (op, sym) in structure.signature().ops().iter().enumerate() {
            if sym.arity == 0 {
                continue;
            }
            let mut tuples = AllTuples::new(n, sym.arity - 1);
            while let Some(rest) = tuples.next_tuple() {
                for pos in 0..sym.arity {
                    for &(x, y) in &pairs {
                        args.clear();
                        args.extend_from_slice(&rest[..pos]);
                        args.push(x);
                        args.extend_from_slice(&rest[pos..]);
                        let u = structure.apply(op, &args);
                        args[pos] = y;
                        let v = structure.apply(op, &args);
                        if !self.related(u, v) {
                            return Some(format!(
                                "`{}` sends related {x} and {y} (position {pos}) to unrelated {u} and {v}",
                                sym.name
                            ));
                        }
                    }
                }
            }
        }
        None
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", blocks.join(" "))
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `x` and `y` were already together.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        if self.size[rx] < self.size[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[ry] = rx;
        self.size[rx] += self.size[ry];
        true
    }

    pub fn into_congruence(mut self) -> Congruence {
        let roots: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence::from_labels(&roots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labels() {
        let c = Congruence::from_labels(&[7, 3, 7, 1]);
        assert_eq!(c.labels(), &[0, 1, 0, 2]);
        assert_eq!(c.blocks(), vec![vec![0, 2], vec![1], vec![3]]);
        assert_eq!(c, Congruence::from_blocks(4, &[vec![2, 0]]).unwrap());
    }

    #[test]
    fn restrict_and_embed() {
        let c = Congruence::from_blocks(6, &[vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        assert_eq!(c.restrict(&[0, 2, 3]), Congruence::from_labels(&[0, 1, 0]));
        let e = Congruence::from_labels(&[0, 1, 0]).embed(&[1, 2, 5], 6);
        assert_eq!(e.blocks(), vec![vec![0], vec![1, 5], vec![2], vec![3], vec![4]]);
    }

    #[test]
    fn finer() {
        let id = Congruence::identity(4);
        let full = Congruence::full(4);
        assert!(id.is_finer_than(&full));
        assert!(!full.is_finer_than(&id));
        assert!(id.is_identity());
        assert_eq!(full.to_string(), "{0,1,2,3}");
    }

    #[test]
    fn out_of_range_block() {
        assert!(Congruence::from_blocks(3, &[vec![0, 3]]).is_err());
    }
}
