//! Tree representation, structural queries, serialization and
//! isomorphism canonicalization.
//!
//! Vertices are dense indices `0..n`. A [`Tree`] is immutable after
//! construction and validated to be connected and acyclic, so every other
//! module can take structural soundness for granted.

use std::fmt;

use crate::{Error, Result};

/// An unrooted tree on vertices `0..n` stored as sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds and validates a tree from an edge list.
    ///
    /// Requires exactly `n - 1` edges forming a connected graph with no
    /// self-loops and no repeated edges. `n = 1` with no edges is the
    /// single-vertex tree.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 {
            return Err(Error::NotATree("zero vertices".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::NotATree(format!(
                "expected {} edges for order {}, found {}",
                n - 1,
                n,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex { vertex: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { vertex: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if adj[u].contains(&v) {
                return Err(Error::NotATree(format!("repeated edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let tree = Tree { adj };
        // n - 1 edges and connectivity together rule out cycles.
        if tree.bfs_distances(0).contains(&usize::MAX) {
            return Err(Error::NotATree("disconnected edge set".into()));
        }
        Ok(tree)
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Tree::from_edges(n, &edges).expect("path is a tree")
    }

    /// The star `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Tree {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Tree::from_edges(k + 1, &edges).expect("star is a tree")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Edges as `(u, v)` pairs with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n().saturating_sub(1));
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices of degree one. Meaningful for `n >= 2`; the single-vertex
    /// tree has no leaves.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.degree(v) == 1).collect()
    }

    pub fn leaf_count(&self) -> usize {
        (0..self.n()).filter(|&v| self.degree(v) == 1).count()
    }

    /// Vertices adjacent to at least one leaf.
    pub fn supports(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&v| self.adj[v].iter().any(|&w| self.degree(w) == 1))
            .collect()
    }

    /// True for `K_{1,k}`: some vertex is adjacent to every other vertex.
    pub fn is_star(&self) -> bool {
        self.n() >= 2 && (0..self.n()).any(|v| self.degree(v) == self.n() - 1)
    }

    /// BFS distances from `src`; unreachable vertices get `usize::MAX`
    /// (never happens on a validated tree).
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[src] = 0;
        let mut queue = vec![src];
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.bfs_distances(u)[v])
    }

    /// Diameter by double BFS (exact on trees).
    pub fn diameter(&self) -> usize {
        let first = self.bfs_distances(0);
        let far = (0..self.n()).max_by_key(|&v| first[v]).unwrap_or(0);
        let second = self.bfs_distances(far);
        second.into_iter().max().unwrap_or(0)
    }

    /// A new tree with one extra vertex `n` attached to `v`.
    pub fn add_leaf(&self, v: usize) -> Result<Tree> {
        self.check_vertex(v)?;
        let mut adj = self.adj.clone();
        adj[v].push(self.n());
        adj[v].sort_unstable();
        adj.push(vec![v]);
        Ok(Tree { adj })
    }

    /// Removes a vertex set whose complement stays connected. Returns the
    /// reduced tree plus the old-index-to-new-index mapping.
    pub(crate) fn remove_vertices(&self, removed: &[usize]) -> Result<(Tree, Vec<Option<usize>>)> {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            self.check_vertex(v)?;
            gone[v] = true;
        }
        let mut map = vec![None; self.n()];
        let mut next = 0;
        for v in 0..self.n() {
            if !gone[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let mut edges = Vec::new();
        for (u, v) in self.edges() {
            if let (Some(nu), Some(nv)) = (map[u], map[v]) {
                edges.push((nu, nv));
            }
        }
        let tree = Tree::from_edges(next, &edges)?;
        Ok((tree, map))
    }

    /// Label-invariant canonical encoding of the isomorphism class.
    pub fn canonical_form(&self) -> CanonicalForm {
        self.canonical_with_tags(None)
    }

    /// Canonical encoding where each vertex additionally carries a tag byte;
    /// equal iff there is a tag-preserving isomorphism.
    pub(crate) fn canonical_with_tags(&self, tags: Option<&[u8]>) -> CanonicalForm {
        let mut best: Option<Vec<u8>> = None;
        for root in self.centroids() {
            let enc = self.ahu_encode(root, tags);
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        }
        let mut code = (self.n() as u32).to_be_bytes().to_vec();
        code.extend(best.unwrap_or_default());
        CanonicalForm(code)
    }

    /// One or two adjacent vertices minimizing the largest component left
    /// by their removal.
    fn centroids(&self) -> Vec<usize> {
        let n = self.n();
        if n == 1 {
            return vec![0];
        }
        let (order, parent) = self.rooted_order(0);
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        let mut best = usize::MAX;
        let mut out = Vec::new();
        for v in 0..n {
            let mut largest = n - size[v];
            for &w in &self.adj[v] {
                if parent[w] == Some(v) {
                    largest = largest.max(size[w]);
                }
            }
            match largest.cmp(&best) {
                std::cmp::Ordering::Less => {
                    best = largest;
                    out = vec![v];
                }
                std::cmp::Ordering::Equal => out.push(v),
                std::cmp::Ordering::Greater => {}
            }
        }
        out
    }

    /// BFS order from `root` together with the parent of each vertex.
    pub(crate) fn rooted_order(&self, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
        let mut parent = vec![None; self.n()];
        let mut order = Vec::with_capacity(self.n());
        let mut seen = vec![false; self.n()];
        seen[root] = true;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    order.push(w);
                }
            }
        }
        (order, parent)
    }

    fn ahu_encode(&self, root: usize, tags: Option<&[u8]>) -> Vec<u8> {
        let (order, parent) = self.rooted_order(root);
        let mut code: Vec<Option<Vec<u8>>> = vec![None; self.n()];
        for &v in order.iter().rev() {
            let mut subs: Vec<Vec<u8>> = self.adj[v]
                .iter()
                .filter(|&&w| parent[w] == Some(v))
                .map(|&w| code[w].take().expect("child encoded"))
                .collect();
            subs.sort_unstable();
            let mut enc = Vec::with_capacity(2 + subs.iter().map(Vec::len).sum::<usize>());
            enc.push(b'(');
            if let Some(tags) = tags {
                enc.push(tags[v]);
            }
            for s in subs {
                enc.extend(s);
            }
            enc.push(b')');
            code[v] = Some(enc);
        }
        code[root].take().expect("root encoded")
    }

    /// Serializes to the short graph6 form (`n <= 62`).
    pub fn to_graph6(&self) -> Result<String> {
        let n = self.n();
        if n > 62 {
            return Err(Error::TooLarge { n, max: 62 });
        }
        let mut bits = Vec::with_capacity(n * (n - 1) / 2);
        for v in 1..n {
            for u in 0..v {
                bits.push(self.adj[u].binary_search(&v).is_ok());
            }
        }
        let mut out = String::new();
        out.push((63 + n as u8) as char);
        for chunk in bits.chunks(6) {
            let mut b = 0u8;
            for (i, &bit) in chunk.iter().enumerate() {
                if bit {
                    b |= 1 << (5 - i);
                }
            }
            out.push((b + 63) as char);
        }
        Ok(out)
    }

    /// Parses a short-form graph6 line, rejecting anything that is not a
    /// tree. Tolerates a trailing newline and the optional `>>graph6<<`
    /// header.
    pub fn from_graph6(s: &str) -> Result<Tree> {
        let s = s.trim_end_matches(['\n', '\r']);
        let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
        let bytes = s.as_bytes();
        let Some(&first) = bytes.first() else {
            return Err(Error::MalformedGraph6("empty input".into()));
        };
        if first == 126 {
            return Err(Error::MalformedGraph6(
                "long-form sizes (n > 62) are not supported".into(),
            ));
        }
        if !(63..=125).contains(&first) {
            return Err(Error::MalformedGraph6(format!(
                "invalid size byte {first}"
            )));
        }
        let n = (first - 63) as usize;
        if n == 0 {
            return Err(Error::NotATree("zero vertices".into()));
        }
        let nbits = n * (n - 1) / 2;
        let nbytes = nbits.div_ceil(6);
        let body = &bytes[1..];
        if body.len() != nbytes {
            return Err(Error::MalformedGraph6(format!(
                "expected {} data bytes for order {}, found {}",
                nbytes,
                n,
                body.len()
            )));
        }
        let mut bits = Vec::with_capacity(nbytes * 6);
        for &b in body {
            if !(63..=126).contains(&b) {
                return Err(Error::MalformedGraph6(format!("invalid data byte {b}")));
            }
            let b = b - 63;
            for i in 0..6 {
                bits.push((b >> (5 - i)) & 1 == 1);
            }
        }
        if bits[nbits..].iter().any(|&b| b) {
            return Err(Error::MalformedGraph6("nonzero padding bits".into()));
        }
        let mut edges = Vec::new();
        let mut idx = 0;
        for v in 1..n {
            for u in 0..v {
                if bits[idx] {
                    edges.push((u, v));
                }
                idx += 1;
            }
        }
        Tree::from_edges(n, &edges)
    }

    /// Plain text edge list: first line the order, then one `u v` pair per
    /// line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_edge_list(s: &str) -> Result<Tree> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::MalformedEdgeList("empty input".into()))?
            .parse()
            .map_err(|_| Error::MalformedEdgeList("first line must be the order".into()))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace();
            let u = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::MalformedEdgeList(format!("bad edge line {line:?}")))?;
            let v = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::MalformedEdgeList(format!("bad edge line {line:?}")))?;
            if it.next().is_some() {
                return Err(Error::MalformedEdgeList(format!("bad edge line {line:?}")));
            }
            edges.push((u, v));
        }
        Tree::from_edges(n, &edges)
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// Total-order-comparable byte string identifying the isomorphism class of
/// a tree: two trees have equal codes iff they are isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", String::from_utf8_lossy(&self.0[4..]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    #[test]
    fn from_edges_builds_paths_and_rejects_cycles() {
        let p4 = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.n(), 4);
        assert_eq!(p4.edges(), vec![(0, 1), (1, 2), (2, 3)]);

        let single = Tree::from_edges(1, &[]).unwrap();
        assert_eq!(single.n(), 1);

        assert!(matches!(
            Tree::from_edges(3, &[(0, 1), (1, 2), (0, 2)]),
            Err(Error::NotATree(_))
        ));
        assert!(matches!(
            Tree::from_edges(4, &[(0, 1), (1, 2), (0, 2)]),
            Err(Error::NotATree(_))
        ));
        assert!(matches!(
            Tree::from_edges(2, &[(0, 2)]),
            Err(Error::InvalidVertex { vertex: 2, n: 2 })
        ));
        assert!(matches!(
            Tree::from_edges(2, &[(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
        // right edge count but disconnected (duplicate edge is caught first)
        assert!(Tree::from_edges(4, &[(0, 1), (0, 1), (2, 3)]).is_err());
    }

    #[test]
    fn leaves_and_supports() {
        let p5 = Tree::path(5);
        assert_eq!(p5.leaves(), vec![0, 4]);
        assert_eq!(p5.supports(), vec![1, 3]);

        let star = Tree::star(4);
        assert_eq!(star.leaves(), vec![1, 2, 3, 4]);
        assert_eq!(star.supports(), vec![0]);

        let p2 = Tree::path(2);
        assert_eq!(p2.leaves(), vec![0, 1]);
        assert_eq!(p2.supports(), vec![0, 1]);
    }

    #[test]
    fn distances_and_diameter() {
        let p5 = Tree::path(5);
        assert_eq!(p5.distance(0, 4).unwrap(), 4);
        assert_eq!(p5.distance(2, 2).unwrap(), 0);
        assert_eq!(Tree::path(4).distance(1, 3).unwrap(), 2);
        assert!(p5.distance(0, 9).is_err());

        assert_eq!(p5.diameter(), 4);
        assert_eq!(Tree::star(4).diameter(), 2);
        assert_eq!(Tree::path(1).diameter(), 0);
        // double star: two adjacent centers, each with two leaves
        let ds = Tree::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (3, 5)]).unwrap();
        assert_eq!(ds.diameter(), 3);
    }

    #[test]
    fn graph6_round_trip_matches_hand_encoding() {
        // hand-encoded fixtures: P4 -> "Ch", P2 -> "A_"
        let p4 = Tree::path(4);
        assert_eq!(p4.to_graph6().unwrap(), "Ch");
        assert_eq!(Tree::path(2).to_graph6().unwrap(), "A_");

        let parsed = Tree::from_graph6("Ch").unwrap();
        assert_eq!(parsed.edges(), vec![(0, 1), (1, 2), (2, 3)]);

        assert_eq!(Tree::path(1).to_graph6().unwrap(), "@");
        assert_eq!(Tree::from_graph6("@").unwrap().n(), 1);
    }

    #[test]
    fn graph6_rejects_malformed_input() {
        assert!(matches!(
            Tree::from_graph6(""),
            Err(Error::MalformedGraph6(_))
        ));
        assert!(matches!(
            Tree::from_graph6("C"),
            Err(Error::MalformedGraph6(_))
        ));
        assert!(matches!(
            Tree::from_graph6("~??"),
            Err(Error::MalformedGraph6(_))
        ));
        // K3 parses but is not a tree
        let k3 = "Bw";
        assert!(matches!(Tree::from_graph6(k3), Err(Error::NotATree(_))));
        // order-63 tree is too large for the writer
        let big = Tree::path(63);
        assert!(matches!(big.to_graph6(), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn edge_list_round_trip() {
        let t = Tree::from_edges(5, &[(0, 2), (1, 2), (2, 3), (3, 4)]).unwrap();
        let text = t.to_edge_list();
        let back = Tree::from_edge_list(&text).unwrap();
        assert_eq!(back.edges(), t.edges());
        assert!(Tree::from_edge_list("").is_err());
        assert!(Tree::from_edge_list("x\n0 1\n").is_err());
        assert!(Tree::from_edge_list("2\n0 1 2\n").is_err());
    }

    #[test]
    fn canonical_form_is_labeling_invariant() {
        let a = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        // the same path labeled 2-0-3-1
        let b = Tree::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());

        let star = Tree::star(3);
        assert_ne!(a.canonical_form(), star.canonical_form());

        let star_relabeled = Tree::from_edges(4, &[(0, 2), (1, 2), (3, 2)]).unwrap();
        assert_eq!(star.canonical_form(), star_relabeled.canonical_form());
    }

    #[test]
    fn canonical_form_separates_same_order_classes() {
        // all three 5-vertex classes pairwise distinct
        let p5 = Tree::path(5);
        let star = Tree::star(4);
        let spider = Tree::from_edges(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let codes = [p5.canonical_form(), star.canonical_form(), spider.canonical_form()];
        assert_ne!(codes[0], codes[1]);
        assert_ne!(codes[0], codes[2]);
        assert_ne!(codes[1], codes[2]);
    }
}
