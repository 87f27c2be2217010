//! Partitions of a dense ground set `0..n` in canonical form.

use std::fmt;

use crate::error::{Error, Result};

/// A set of disjoint nonempty blocks covering `0..ground`.
///
/// Canonical form: each block ascending, blocks ordered by their smallest
/// element. Equality and ordering are on the canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    ground: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(ground: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; ground];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= ground {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} outside ground of size {ground}"
                    )));
                }
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::InvalidPartition(format!("element {x} appears twice")));
                }
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("element {x} is not covered")));
        }
        Ok(Self::canonical(ground, blocks))
    }

    /// Builds from 1-based element labels, e.g. `{{1},{2,3}}`.
    pub fn from_one_based(ground: usize, blocks: &[&[usize]]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&x| x.checked_sub(1).ok_or_else(|| Error::InvalidPartition("label 0".into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, blocks)
    }

    fn canonical(ground: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition { ground, blocks }
    }

    /// Groups `0..ground` by the value of `key`; blocks keep first-seen keys together.
    pub fn from_key<K: Ord>(ground: usize, key: impl Fn(usize) -> K) -> Self {
        let mut keyed: Vec<(K, usize)> = (0..ground).map(|x| (key(x), x)).collect();
        keyed.sort();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut last: Option<&K> = None;
        for (k, x) in &keyed {
            if last != Some(k) {
                blocks.push(Vec::new());
                last = Some(k);
            }
            blocks.last_mut().unwrap().push(*x);
        }
        Self::canonical(ground, blocks)
    }

    pub fn trivial(ground: usize) -> Self {
        let blocks = if ground == 0 { vec![] } else { vec![(0..ground).collect()] };
        Partition { ground, blocks }
    }

    pub fn discrete(ground: usize) -> Self {
        Partition { ground, blocks: (0..ground).map(|x| vec![x]).collect() }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() <= 1
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }

    /// Block index for every ground element.
    pub fn block_indices(&self) -> Vec<usize> {
        let mut idx = vec![0; self.ground];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &x in b {
                idx[x] = bi;
            }
        }
        idx
    }

    /// True iff every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground, other.ground));
        }
        let theirs = other.block_indices();
        Ok(self.blocks.iter().all(|b| b.iter().all(|&x| theirs[x] == theirs[b[0]])))
    }

    /// Finest common coarsening: elements joined whenever some block of either
    /// partition contains both.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.ground, other.ground));
        }
        let mut parent: Vec<usize> = (0..self.ground).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for b in self.blocks.iter().chain(&other.blocks) {
            for &x in &b[1..] {
                let (ra, rb) = (find(&mut parent, b[0]), find(&mut parent, x));
                parent[ra] = rb;
            }
        }
        let roots: Vec<usize> = (0..self.ground).map(|x| find(&mut parent, x)).collect();
        Ok(Partition::from_key(self.ground, |x| roots[x]))
    }

    /// Renders blocks with the given element labels, e.g. `{{1}, {2, 3}}`.
    pub fn render(&self, labels: &[String]) -> String {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|&x| labels[x].as_str()).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("{{{}}}", blocks.join(", "))
    }
}

impl fmt::Display for Partition {
    /// 1-based rendering.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&crate::automaton::one_based_labels(self.ground)))
    }
}
