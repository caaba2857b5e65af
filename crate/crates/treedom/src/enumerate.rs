//! Streams of all non-isomorphic trees of a given order, the substrate of
//! every exhaustive sweep.
//!
//! Generation grows trees level by level: every tree of order `n` arises
//! from some tree of order `n - 1` by attaching one leaf (delete any leaf
//! to see the converse), so extending every vertex of every smaller class
//! and deduplicating by canonical code is complete by induction. The
//! resulting stream is sorted by canonical code, which makes emission order
//! and round-robin sharding reproducible. Correctness is anchored to a
//! Prüfer-sequence oracle in the tests rather than to published count
//! tables.

use std::collections::BTreeMap;
use std::io::Write;

use crate::graph::Tree;
use crate::{Error, Limits, Result};

/// All isomorphism classes of a fixed order, yielded in canonical-code
/// order. The cursor is a plain index, so iteration is resumable and
/// shardable.
pub struct TreeStream {
    order: usize,
    trees: Vec<Tree>,
    pos: usize,
}

impl TreeStream {
    /// The vertex count every emitted tree has.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of isomorphism classes in the stream.
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Borrowing view of the remaining trees.
    pub fn as_slice(&self) -> &[Tree] {
        &self.trees[self.pos..]
    }

    /// Worker `k` of `m` receives every `m`-th emission, starting at `k`.
    pub fn shard(&self, k: usize, m: usize) -> impl Iterator<Item = &Tree> + '_ {
        assert!(m > 0 && k < m, "shard index {k} out of {m}");
        self.trees[self.pos..].iter().skip(k).step_by(m)
    }
}

impl Iterator for TreeStream {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        let t = self.trees.get(self.pos)?.clone();
        self.pos += 1;
        Some(t)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.trees.len() - self.pos;
        (rest, Some(rest))
    }
}

/// Every isomorphism class of trees on `n` vertices, each exactly once.
pub fn all_trees(n: usize, limits: &Limits) -> Result<TreeStream> {
    if n == 0 || n > limits.order_ceiling {
        return Err(Error::SizeLimitExceeded {
            n,
            limit: limits.order_ceiling,
        });
    }
    let mut level: BTreeMap<_, Tree> = BTreeMap::new();
    let single = Tree::from_edges(1, &[]).expect("single vertex");
    level.insert(single.canonical_form(), single);
    for _ in 1..n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in 0..t.n() {
                let grown = t.add_leaf(v).expect("vertex in range");
                next.entry(grown.canonical_form()).or_insert(grown);
            }
        }
        level = next;
    }
    Ok(TreeStream {
        order: n,
        trees: level.into_values().collect(),
        pos: 0,
    })
}

/// Number of isomorphism classes of trees on `n` vertices.
pub fn count_trees(n: usize, limits: &Limits) -> Result<usize> {
    Ok(all_trees(n, limits)?.len())
}

/// Writes a stream as graph6, one code per line.
pub fn dump_graph6<W: Write>(trees: impl Iterator<Item = Tree>, out: &mut W) -> Result<()> {
    for t in trees {
        writeln!(out, "{}", t.to_graph6()?)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    use crate::graph::CanonicalForm;

    /// Decodes a Prüfer sequence over `0..n` into the labeled tree it
    /// encodes. Independent completeness oracle: the map is a bijection
    /// onto labeled trees on n >= 2 vertices.
    fn prufer_decode(seq: &[usize], n: usize) -> Tree {
        assert_eq!(seq.len() + 2, n);
        let mut degree = vec![1usize; n];
        for &s in seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        let mut used = vec![false; n];
        for &s in seq {
            let leaf = (0..n).find(|&v| degree[v] == 1 && !used[v]).unwrap();
            used[leaf] = true;
            edges.push((leaf, s));
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1 && !used[v]).collect();
        edges.push((rest[0], rest[1]));
        Tree::from_edges(n, &edges).expect("Prüfer decodes to a tree")
    }

    fn prufer_classes(n: usize) -> BTreeSet<CanonicalForm> {
        if n == 1 {
            let t = Tree::from_edges(1, &[]).unwrap();
            return [t.canonical_form()].into();
        }
        let mut out = BTreeSet::new();
        let len = n - 2;
        let mut seq = vec![0usize; len];
        loop {
            out.insert(prufer_decode(&seq, n).canonical_form());
            // odometer over sequences in base n
            let mut i = 0;
            while i < len {
                seq[i] += 1;
                if seq[i] < n {
                    break;
                }
                seq[i] = 0;
                i += 1;
            }
            if i == len {
                break;
            }
        }
        out
    }

    #[test]
    fn counts_match_prufer_dedup() {
        let limits = Limits::default();
        // frozen from the Prüfer oracle below
        let expected = [1usize, 1, 1, 2, 3, 6, 11, 23, 47];
        for n in 1..=9usize {
            assert_eq!(count_trees(n, &limits).unwrap(), expected[n - 1], "n={n}");
        }
        for n in 1..=8usize {
            let stream: BTreeSet<CanonicalForm> = all_trees(n, &limits)
                .unwrap()
                .map(|t| t.canonical_form())
                .collect();
            assert_eq!(stream, prufer_classes(n), "n={n}");
        }
    }

    #[test]
    fn larger_counts_frozen() {
        let limits = Limits::default();
        assert_eq!(count_trees(10, &limits).unwrap(), 106);
        assert_eq!(count_trees(11, &limits).unwrap(), 235);
        assert_eq!(count_trees(12, &limits).unwrap(), 551);
    }

    #[test]
    fn stream_is_duplicate_free_and_valid() {
        let limits = Limits::default();
        for n in 1..=10 {
            let stream = all_trees(n, &limits).unwrap();
            let mut seen = BTreeSet::new();
            let mut count = 0;
            for t in stream {
                assert_eq!(t.n(), n);
                assert_eq!(t.edges().len(), n - 1);
                assert!(t.bfs_distances(0).iter().all(|&d| d != usize::MAX));
                assert!(seen.insert(t.canonical_form()), "duplicate at n={n}");
                count += 1;
            }
            assert_eq!(count, count_trees(n, &limits).unwrap());
        }
    }

    #[test]
    fn sharding_partitions_the_stream() {
        let limits = Limits::default();
        let full: Vec<CanonicalForm> = all_trees(9, &limits)
            .unwrap()
            .map(|t| t.canonical_form())
            .collect();
        let stream = all_trees(9, &limits).unwrap();
        let mut merged: Vec<CanonicalForm> = (0..4)
            .flat_map(|k| {
                stream
                    .shard(k, 4)
                    .map(|t| t.canonical_form())
                    .collect::<Vec<_>>()
            })
            .collect();
        merged.sort();
        let mut sorted_full = full.clone();
        sorted_full.sort();
        assert_eq!(merged, sorted_full);
    }

    #[test]
    fn ceiling_is_enforced() {
        let limits = Limits::with_ceiling(6);
        assert!(all_trees(7, &limits).is_err());
        assert!(all_trees(0, &limits).is_err());
        assert!(all_trees(6, &limits).is_ok());
    }

    #[test]
    fn dump_writes_one_code_per_line() {
        let limits = Limits::default();
        let mut buf = Vec::new();
        dump_graph6(all_trees(4, &limits).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        for line in lines {
            assert_eq!(Tree::from_graph6(line).unwrap().n(), 4);
        }
    }
}
