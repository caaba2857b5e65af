//! Constructive generators, invariant checkers and membership tests for two
//! tree families.
//!
//! The first family carries a status labeling (A/B/C per vertex), starts
//! from the path P5 labeled C,A,B,A,C and is closed under two operations:
//! attach a C-leaf at an A-vertex, or attach a five-vertex path labeled
//! C,A,B,A,C at a degree-one C-vertex. Its underlying trees are exactly the
//! trees attaining γ_t2 = 2(n − l + 2)/5 with equality, and the A-labeled
//! vertices always form a minimum semitotal dominating set.
//!
//! The second family starts from P4 and is closed under four unlabeled
//! operations (pendant vertex at a vertex lying in some minimum semitotal
//! set; a 2- or 5-vertex path at a vertex v with γ(T; v) = γ(T); a
//! subdivided star joined by its center; the once-subdivided star Y joined
//! by a center-adjacent leaf). Its members are exactly the trees with
//! γ = γ_t2.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::graph::{CanonicalForm, Tree};
use crate::{dp, exact, Error, Limits, Result};

/// Vertex status in a labeled tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    A,
    B,
    C,
}

impl Status {
    fn tag(self) -> u8 {
        match self {
            Status::A => b'A',
            Status::B => b'B',
            Status::C => b'C',
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag() as char)
    }
}

/// A tree together with a status partition of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    tree: Tree,
    status: Vec<Status>,
}

impl LabeledTree {
    pub fn new(tree: Tree, status: Vec<Status>) -> Result<LabeledTree> {
        if status.len() != tree.n() {
            return Err(Error::InvalidParameter(format!(
                "{} status entries for order {}",
                status.len(),
                tree.n()
            )));
        }
        Ok(LabeledTree { tree, status })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn status(&self) -> &[Status] {
        &self.status
    }

    pub fn status_of(&self, v: usize) -> Status {
        self.status[v]
    }

    /// Vertices carrying the given status, ascending.
    pub fn with_status(&self, s: Status) -> Vec<usize> {
        (0..self.tree.n())
            .filter(|&v| self.status[v] == s)
            .collect()
    }

    /// Canonical code of the labeled tree: equal iff there is a
    /// status-preserving isomorphism.
    pub fn canonical_form(&self) -> CanonicalForm {
        let tags: Vec<u8> = self.status.iter().map(|s| s.tag()).collect();
        self.tree.canonical_with_tags(Some(&tags))
    }

    pub fn to_export(&self) -> LabeledTreeExport {
        LabeledTreeExport {
            edges: self.tree.edges(),
            status: self.status.iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// JSON shape for labeled-tree export.
#[derive(Debug, Serialize)]
pub struct LabeledTreeExport {
    pub edges: Vec<(usize, usize)>,
    pub status: Vec<String>,
}

/// The base member: P5 labeled C,A,B,A,C along the path.
pub fn base_p5() -> LabeledTree {
    use Status::{A, B, C};
    LabeledTree::new(Tree::path(5), vec![C, A, B, A, C]).expect("five labels")
}

/// Attaches a new C-labeled leaf at an A-vertex.
pub fn attach_c_leaf(lt: &LabeledTree, v: usize) -> Result<LabeledTree> {
    lt.tree.check_vertex(v)?;
    if lt.status_of(v) != Status::A {
        return Err(Error::WrongStatus {
            vertex: v,
            expected: Status::A,
            found: lt.status_of(v),
        });
    }
    let tree = lt.tree.add_leaf(v)?;
    let mut status = lt.status.clone();
    status.push(Status::C);
    LabeledTree::new(tree, status)
}

/// Attaches a five-vertex path labeled C,A,B,A,C at a degree-one C-vertex.
pub fn attach_labeled_path5(lt: &LabeledTree, v: usize) -> Result<LabeledTree> {
    lt.tree.check_vertex(v)?;
    if lt.status_of(v) != Status::C {
        return Err(Error::WrongStatus {
            vertex: v,
            expected: Status::C,
            found: lt.status_of(v),
        });
    }
    if lt.tree.degree(v) != 1 {
        return Err(Error::WrongDegree {
            vertex: v,
            expected: 1,
            found: lt.tree.degree(v),
        });
    }
    let mut tree = lt.tree.add_leaf(v)?;
    for _ in 0..4 {
        tree = tree.add_leaf(tree.n() - 1)?;
    }
    let mut status = lt.status.clone();
    status.extend([Status::C, Status::A, Status::B, Status::A, Status::C]);
    LabeledTree::new(tree, status)
}

/// One failed structural property of a labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelingViolation {
    SupportNotA(usize),
    LeafNotC(usize),
    CardinalityMismatch { a: usize, b: usize },
    ANotSemitotal,
    AdjacentSameStatus { status: Status, u: usize, v: usize },
    BVertexShape(usize),
}

impl fmt::Display for LabelingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelingViolation::SupportNotA(v) => write!(f, "support vertex {v} not labeled A"),
            LabelingViolation::LeafNotC(v) => write!(f, "leaf {v} not labeled C"),
            LabelingViolation::CardinalityMismatch { a, b } => {
                write!(f, "|S_A| = {a} but 2|S_B| = {}", 2 * b)
            }
            LabelingViolation::ANotSemitotal => {
                write!(f, "the A-vertices are not a semitotal dominating set")
            }
            LabelingViolation::AdjacentSameStatus { status, u, v } => {
                write!(f, "adjacent vertices {u}, {v} both labeled {status}")
            }
            LabelingViolation::BVertexShape(v) => {
                write!(f, "B-vertex {v} lacks degree two with both neighbors A")
            }
        }
    }
}

/// Checks the five structural properties every family labeling satisfies:
/// supports are A and leaves are C; |S_A| = 2|S_B|; S_A is a semitotal
/// dominating set; S_A and S_B are independent; every B-vertex has degree
/// two with both neighbors labeled A.
pub fn labeling_violations(lt: &LabeledTree) -> Vec<LabelingViolation> {
    let t = lt.tree();
    let mut out = Vec::new();
    for v in 0..t.n() {
        let is_leaf = t.degree(v) == 1;
        let is_support = t.neighbors(v).iter().any(|&w| t.degree(w) == 1);
        if is_support && lt.status_of(v) != Status::A {
            out.push(LabelingViolation::SupportNotA(v));
        }
        if is_leaf && lt.status_of(v) != Status::C {
            out.push(LabelingViolation::LeafNotC(v));
        }
    }
    let sa = lt.with_status(Status::A);
    let sb = lt.with_status(Status::B);
    if sa.len() != 2 * sb.len() {
        out.push(LabelingViolation::CardinalityMismatch {
            a: sa.len(),
            b: sb.len(),
        });
    }
    if !exact::verify_semitotal(t, &sa).expect("labeled vertices are valid") {
        out.push(LabelingViolation::ANotSemitotal);
    }
    for (set, status) in [(&sa, Status::A), (&sb, Status::B)] {
        for &u in set.iter() {
            for &w in t.neighbors(u) {
                if w > u && lt.status_of(w) == status {
                    out.push(LabelingViolation::AdjacentSameStatus { status, u, v: w });
                }
            }
        }
    }
    for &v in &sb {
        if t.degree(v) != 2
            || t.neighbors(v)
                .iter()
                .any(|&w| lt.status_of(w) != Status::A)
        {
            out.push(LabelingViolation::BVertexShape(v));
        }
    }
    out
}

/// The subdivided star X(k): a star with k leaves, every edge subdivided
/// once. Center 0, supports 1..=k, leaf i+k below support i.
pub fn subdivided_star(k: usize) -> Result<Tree> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "subdivided star needs at least two leaves, got {k}"
        )));
    }
    let mut edges = Vec::with_capacity(2 * k);
    for i in 1..=k {
        edges.push((0, i));
        edges.push((i, i + k));
    }
    Tree::from_edges(2 * k + 1, &edges)
}

/// The tree Y(k): a star with k leaves and exactly one edge subdivided
/// once. Center 0 with leaves 1..k-1, subdivision vertex k, far leaf k+1.
pub fn tree_y(k: usize) -> Result<Tree> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "Y needs at least two leaves, got {k}"
        )));
    }
    let mut edges = Vec::with_capacity(k + 1);
    for i in 1..k {
        edges.push((0, i));
    }
    edges.push((0, k));
    edges.push((k, k + 1));
    Tree::from_edges(k + 2, &edges)
}

/// Attaches one pendant vertex at `v`, which must lie in some minimum
/// semitotal dominating set of the host.
pub fn attach_pendant(t: &Tree, v: usize) -> Result<Tree> {
    t.check_vertex(v)?;
    if !dp::in_some_minimum_semitotal(t, v)? {
        return Err(Error::PreconditionFailed(format!(
            "vertex {v} lies in no minimum semitotal dominating set"
        )));
    }
    t.add_leaf(v)
}

/// Path length choices for [`attach_path`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathLen {
    Two,
    Five,
}

impl PathLen {
    pub fn vertices(self) -> usize {
        match self {
            PathLen::Two => 2,
            PathLen::Five => 5,
        }
    }
}

/// Attaches a path of 2 or 5 new vertices by one end to `v`, which must
/// satisfy γ(T; v) = γ(T) on the host tree.
pub fn attach_path(t: &Tree, v: usize, len: PathLen) -> Result<Tree> {
    t.check_vertex(v)?;
    let gamma = dp::dp_domination(t).value;
    let almost = dp::dp_almost_domination(t, v)?.value;
    if almost != gamma {
        return Err(Error::PreconditionFailed(format!(
            "gamma(T; {v}) = {almost} differs from gamma(T) = {gamma}"
        )));
    }
    let mut out = t.add_leaf(v)?;
    for _ in 1..len.vertices() {
        out = out.add_leaf(out.n() - 1)?;
    }
    Ok(out)
}

/// Attaches a subdivided star with k >= 2 leaves, joining its center to
/// `v`.
pub fn attach_subdivided_star(t: &Tree, v: usize, k: usize) -> Result<Tree> {
    t.check_vertex(v)?;
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "subdivided star needs at least two leaves, got {k}"
        )));
    }
    let center = t.n();
    let mut out = t.add_leaf(v)?;
    for _ in 0..k {
        let support = out.n();
        out = out.add_leaf(center)?;
        out = out.add_leaf(support)?;
    }
    Ok(out)
}

/// Attaches Y with three leaves, joining one of the center's leaf
/// neighbors to `v`; the joined vertex ceases to be a leaf.
pub fn attach_y(t: &Tree, v: usize) -> Result<Tree> {
    t.check_vertex(v)?;
    let joined = t.n();
    let mut out = t.add_leaf(v)?; // joined leaf-neighbor of the center
    out = out.add_leaf(joined)?; // center
    out = out.add_leaf(joined + 1)?; // second center leaf
    out = out.add_leaf(joined + 1)?; // subdivision vertex
    out = out.add_leaf(joined + 3)?; // far leaf
    Ok(out)
}

/// True iff γ_t2(T) attains the lower bound 2(n − l + 2)/5 exactly,
/// decided in integer arithmetic.
pub fn is_extremal(t: &Tree) -> Result<bool> {
    if t.n() < 2 {
        return Err(Error::IsolatedVertex);
    }
    let value = dp::dp_semitotal(t)?.value;
    Ok(5 * value == 2 * (t.n() - t.leaf_count() + 2))
}

/// True iff γ(T) = γ_t2(T).
pub fn is_gamma_equal(t: &Tree) -> Result<bool> {
    if t.n() < 2 {
        return Err(Error::IsolatedVertex);
    }
    Ok(dp::dp_domination(t).value == dp::dp_semitotal(t)?.value)
}

/// Canonical-code census of a generated family, deduplicated on the
/// underlying (unlabeled) trees.
#[derive(Debug, Clone)]
pub struct FamilyCensus {
    n_max: usize,
    members: BTreeMap<CanonicalForm, Tree>,
}

impl FamilyCensus {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, code: &CanonicalForm) -> bool {
        self.members.contains_key(code)
    }

    /// Members sorted by canonical code.
    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalForm, &Tree)> {
        self.members.iter()
    }

    /// Canonical codes of the members of one order.
    pub fn codes_of_order(&self, n: usize) -> BTreeSet<CanonicalForm> {
        self.members
            .iter()
            .filter(|(_, t)| t.n() == n)
            .map(|(c, _)| c.clone())
            .collect()
    }

    /// Class counts per order, for orders that are present.
    pub fn counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for t in self.members.values() {
            *out.entry(t.n()).or_insert(0) += 1;
        }
        out
    }
}

/// The labeled family generated from [`base_p5`], plus the census of its
/// underlying trees.
#[derive(Debug, Clone)]
pub struct LabeledFamily {
    /// One representative per status-preserving isomorphism class, sorted
    /// by labeled canonical code.
    pub labeled: Vec<LabeledTree>,
    pub census: FamilyCensus,
}

/// Breadth-first closure of the labeled P5 base under the two labeled
/// operations, up to order `n_max`. The frontier deduplicates on labeled
/// canonical codes; the census deduplicates underlying trees only.
pub fn generate_family_t(n_max: usize, limits: &Limits) -> Result<LabeledFamily> {
    if n_max > limits.order_ceiling {
        return Err(Error::SizeLimitExceeded {
            n: n_max,
            limit: limits.order_ceiling,
        });
    }
    let mut seen: BTreeMap<CanonicalForm, LabeledTree> = BTreeMap::new();
    let mut members: BTreeMap<CanonicalForm, Tree> = BTreeMap::new();
    let mut queue = VecDeque::new();
    if n_max >= 5 {
        let base = base_p5();
        members.insert(base.tree().canonical_form(), base.tree().clone());
        seen.insert(base.canonical_form(), base.clone());
        queue.push_back(base);
    }
    while let Some(lt) = queue.pop_front() {
        let n = lt.tree().n();
        let mut extensions = Vec::new();
        if n < n_max {
            for v in lt.with_status(Status::A) {
                extensions.push(attach_c_leaf(&lt, v).expect("A-vertex"));
            }
        }
        if n + 5 <= n_max {
            for v in lt.with_status(Status::C) {
                if lt.tree().degree(v) == 1 {
                    extensions.push(attach_labeled_path5(&lt, v).expect("degree-one C-vertex"));
                }
            }
        }
        for ext in extensions {
            if let std::collections::btree_map::Entry::Vacant(slot) = seen.entry(ext.canonical_form()) {
                members
                    .entry(ext.tree().canonical_form())
                    .or_insert_with(|| ext.tree().clone());
                slot.insert(ext.clone());
                queue.push_back(ext);
            }
        }
    }
    Ok(LabeledFamily {
        labeled: seen.into_values().collect(),
        census: FamilyCensus {
            n_max,
            members,
        },
    })
}

/// Breadth-first closure of P4 under the four unlabeled operations, up to
/// order `n_max`, deduplicated by canonical code.
pub fn generate_family_o(n_max: usize, limits: &Limits) -> Result<FamilyCensus> {
    if n_max > limits.order_ceiling {
        return Err(Error::SizeLimitExceeded {
            n: n_max,
            limit: limits.order_ceiling,
        });
    }
    let mut members: BTreeMap<CanonicalForm, Tree> = BTreeMap::new();
    let mut queue = VecDeque::new();
    if n_max >= 4 {
        let base = Tree::path(4);
        members.insert(base.canonical_form(), base.clone());
        queue.push_back(base);
    }
    while let Some(t) = queue.pop_front() {
        let n = t.n();
        let mut extensions = Vec::new();
        let consider = |r: Result<Tree>| -> Result<Option<Tree>> {
            match r {
                Ok(ext) => Ok(Some(ext)),
                Err(Error::PreconditionFailed(_)) => Ok(None),
                Err(e) => Err(e),
            }
        };
        if n < n_max {
            for v in 0..n {
                if let Some(ext) = consider(attach_pendant(&t, v))? {
                    extensions.push(ext);
                }
            }
        }
        for len in [PathLen::Two, PathLen::Five] {
            if n + len.vertices() <= n_max {
                for v in 0..n {
                    if let Some(ext) = consider(attach_path(&t, v, len))? {
                        extensions.push(ext);
                    }
                }
            }
        }
        let mut k = 2;
        // a subdivided star with k leaves adds 2k + 1 vertices
        #[allow(clippy::int_plus_one)]
        while 2 * k + 1 <= n_max - n {
            for v in 0..n {
                extensions.push(attach_subdivided_star(&t, v, k)?);
            }
            k += 1;
        }
        if n + 5 <= n_max {
            for v in 0..n {
                extensions.push(attach_y(&t, v)?);
            }
        }
        for ext in extensions {
            if let std::collections::btree_map::Entry::Vacant(slot) = members.entry(ext.canonical_form()) {
                slot.insert(ext.clone());
                queue.push_back(ext);
            }
        }
    }
    Ok(FamilyCensus {
        n_max,
        members,
    })
}

/// Recovers a family labeling for an extremal tree by reversing the two
/// labeled operations: strip a surplus leaf from a multi-leaf support, or
/// strip a terminal five-vertex path (plus the single leaf its fourth
/// vertex may carry), down to P5. Returns `None` exactly when the tree is
/// not extremal.
pub fn find_labeling(t: &Tree) -> Option<LabeledTree> {
    if t.n() < 2 || !is_extremal(t).expect("order checked") {
        return None;
    }
    if t.n() == 5 {
        // the only extremal tree of order five is P5
        let status: Vec<Status> = (0..5)
            .map(|v| {
                if t.degree(v) == 1 {
                    Status::C
                } else if t.neighbors(v).iter().any(|&w| t.degree(w) == 1) {
                    Status::A
                } else {
                    Status::B
                }
            })
            .collect();
        return LabeledTree::new(t.clone(), status).ok();
    }
    if t.n() < 5 {
        return None;
    }

    // a support with two leaves came from attaching a C-leaf
    let leaf_neighbors = |u: usize| -> Vec<usize> {
        t.neighbors(u)
            .iter()
            .copied()
            .filter(|&w| t.degree(w) == 1)
            .collect()
    };
    for u in 0..t.n() {
        let ln = leaf_neighbors(u);
        if ln.len() >= 2 {
            let leaf = ln[0];
            let (sub, map) = t.remove_vertices(&[leaf]).ok()?;
            let inner = find_labeling(&sub)?;
            if inner.status_of(map[u]?) != Status::A {
                return None;
            }
            let status = lift_status(t.n(), &map, &inner, &[(leaf, Status::C)]);
            return LabeledTree::new(t.clone(), status).ok();
        }
    }

    // otherwise a terminal five-vertex path was attached at what is now
    // the sixth path vertex; pick endpoints of a longest path preferring
    // large degrees at positions four and three
    let mut candidates = diametral_paths(t);
    candidates.retain(|p| p.len() >= 6);
    candidates.sort_by(|a, b| {
        (t.degree(b[3]), t.degree(b[2]), a)
            .cmp(&(t.degree(a[3]), t.degree(a[2]), b))
    });
    for p in candidates {
        let (v1, v2, v3, v4, v5, v6) = (p[0], p[1], p[2], p[3], p[4], p[5]);
        let mut removed = vec![v1, v2, v3, v4, v5];
        let extra: Vec<usize> = leaf_neighbors(v4)
            .into_iter()
            .filter(|&w| w != v3 && w != v5)
            .collect();
        removed.extend(&extra);
        // the removed set must hang off the rest of the tree at v6 only
        let removed_set: BTreeSet<usize> = removed.iter().copied().collect();
        let detaches_cleanly = removed.iter().all(|&r| {
            t.neighbors(r)
                .iter()
                .all(|&w| removed_set.contains(&w) || w == v6)
        });
        if !detaches_cleanly {
            continue;
        }
        let Ok((sub, map)) = t.remove_vertices(&removed) else {
            continue;
        };
        if sub.n() < 5 || sub.degree(map[v6].unwrap()) != 1 {
            continue;
        }
        let Some(inner) = find_labeling(&sub) else {
            continue;
        };
        if inner.status_of(map[v6].unwrap()) != Status::C {
            continue;
        }
        let mut assigned = vec![
            (v1, Status::C),
            (v2, Status::A),
            (v3, Status::B),
            (v4, Status::A),
            (v5, Status::C),
        ];
        assigned.extend(extra.iter().map(|&w| (w, Status::C)));
        let status = lift_status(t.n(), &map, &inner, &assigned);
        return LabeledTree::new(t.clone(), status).ok();
    }
    None
}

fn lift_status(
    n: usize,
    map: &[Option<usize>],
    inner: &LabeledTree,
    assigned: &[(usize, Status)],
) -> Vec<Status> {
    let mut status = vec![Status::C; n];
    for v in 0..n {
        if let Some(nv) = map[v] {
            status[v] = inner.status_of(nv);
        }
    }
    for &(v, s) in assigned {
        status[v] = s;
    }
    status
}

/// Every longest path, in both orientations, as vertex sequences.
fn diametral_paths(t: &Tree) -> Vec<Vec<usize>> {
    let n = t.n();
    let mut dist = Vec::with_capacity(n);
    let mut diam = 0;
    for v in 0..n {
        let d = t.bfs_distances(v);
        diam = diam.max(*d.iter().max().unwrap());
        dist.push(d);
    }
    let mut out = Vec::new();
    for (a, from_a) in dist.iter().enumerate() {
        for (b, &d) in from_a.iter().enumerate() {
            if d == diam && a != b {
                out.push(walk(t, a, b));
            }
        }
    }
    out
}

/// The unique path from `a` to `b`.
fn walk(t: &Tree, a: usize, b: usize) -> Vec<usize> {
    let (_, parent) = t.rooted_order(a);
    let mut path = vec![b];
    while let Some(p) = parent[*path.last().unwrap()] {
        path.push(p);
    }
    path.reverse();
    path
}
