//! Brute-force subset-search oracles and validity checkers for the four
//! domination parameters. Exponential in the tree order; this module is the
//! ground truth the dynamic programs are tested against, not the fast path.

use std::fmt;

use itertools::Itertools;

use crate::graph::Tree;
use crate::{Error, Limits, Result};

/// Which domination parameter a solve or certificate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamKind {
    /// γ: every vertex outside the set has a neighbor in it.
    Plain,
    /// γ_t: every vertex of the tree has a neighbor in the set.
    Total,
    /// γ_t2: dominating, and every member has another member within
    /// distance two.
    Semitotal,
    /// γ(T; v): dominates everything except possibly the exempt vertex.
    Almost(usize),
}

impl fmt::Display for ParamKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamKind::Plain => write!(f, "gamma"),
            ParamKind::Total => write!(f, "gamma-t"),
            ParamKind::Semitotal => write!(f, "gamma-t2"),
            ParamKind::Almost(v) => write!(f, "gamma-almost:{v}"),
        }
    }
}

/// An optimal value together with a witness set attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationCertificate {
    pub kind: ParamKind,
    pub value: usize,
    /// Sorted vertex set of cardinality `value` passing the matching
    /// verifier.
    pub witness: Vec<usize>,
}

fn membership(t: &Tree, s: &[usize]) -> Result<Vec<bool>> {
    let mut member = vec![false; t.n()];
    for &v in s {
        t.check_vertex(v)?;
        member[v] = true;
    }
    Ok(member)
}

/// True iff every vertex outside `s` has a neighbor in `s`.
pub fn verify_dominating(t: &Tree, s: &[usize]) -> Result<bool> {
    let member = membership(t, s)?;
    Ok((0..t.n()).all(|v| member[v] || t.neighbors(v).iter().any(|&w| member[w])))
}

/// True iff every vertex of `t`, including members of `s`, has a neighbor
/// in `s`.
pub fn verify_total(t: &Tree, s: &[usize]) -> Result<bool> {
    let member = membership(t, s)?;
    Ok((0..t.n()).all(|v| t.neighbors(v).iter().any(|&w| member[w])))
}

/// True iff `s` is dominating and every member has another member within
/// distance two.
pub fn verify_semitotal(t: &Tree, s: &[usize]) -> Result<bool> {
    let member = membership(t, s)?;
    if !(0..t.n()).all(|v| member[v] || t.neighbors(v).iter().any(|&w| member[w])) {
        return Ok(false);
    }
    for &u in s {
        let mut witnessed = false;
        'search: for &w in t.neighbors(u) {
            if member[w] {
                witnessed = true;
                break;
            }
            for &x in t.neighbors(w) {
                if x != u && member[x] {
                    witnessed = true;
                    break 'search;
                }
            }
        }
        if !witnessed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every vertex outside `s ∪ {v}` has a neighbor in `s`. The
/// exempt vertex may still be dominated; that is allowed.
pub fn verify_almost(t: &Tree, s: &[usize], v: usize) -> Result<bool> {
    t.check_vertex(v)?;
    let member = membership(t, s)?;
    Ok((0..t.n())
        .all(|u| u == v || member[u] || t.neighbors(u).iter().any(|&w| member[w])))
}

fn verify_kind(t: &Tree, s: &[usize], kind: ParamKind) -> Result<bool> {
    match kind {
        ParamKind::Plain => verify_dominating(t, s),
        ParamKind::Total => verify_total(t, s),
        ParamKind::Semitotal => verify_semitotal(t, s),
        ParamKind::Almost(v) => verify_almost(t, s, v),
    }
}

fn check_solvable(t: &Tree, kind: ParamKind, limit: usize) -> Result<()> {
    if t.n() < 2 {
        return Err(Error::IsolatedVertex);
    }
    if t.n() > limit {
        return Err(Error::SizeLimitExceeded {
            n: t.n(),
            limit,
        });
    }
    if let ParamKind::Almost(v) = kind {
        t.check_vertex(v)?;
    }
    Ok(())
}

/// Minimum value and lexicographically smallest witness for `kind`, found
/// by enumerating subsets in order of increasing cardinality and
/// lexicographically within a cardinality.
pub fn oracle_minimum(t: &Tree, kind: ParamKind, limits: &Limits) -> Result<DominationCertificate> {
    check_solvable(t, kind, limits.oracle_solve_max)?;
    for k in 1..=t.n() {
        for subset in (0..t.n()).combinations(k) {
            if verify_kind(t, &subset, kind)? {
                debug_assert!(verify_kind(t, &subset, kind).unwrap());
                return Ok(DominationCertificate {
                    kind,
                    value: k,
                    witness: subset,
                });
            }
        }
    }
    unreachable!("the full vertex set always passes for n >= 2")
}

/// Every minimum set for `kind`, in lexicographic order.
pub fn all_minimum_sets(t: &Tree, kind: ParamKind, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    check_solvable(t, kind, limits.oracle_enumerate_max)?;
    let value = oracle_minimum(t, kind, limits)?.value;
    let mut out = Vec::new();
    for subset in (0..t.n()).combinations(value) {
        if verify_kind(t, &subset, kind)? {
            out.push(subset);
        }
    }
    Ok(out)
}

/// True iff some minimum semitotal dominating set contains `v`, decided by
/// forced-inclusion search.
pub fn in_some_minimum_semitotal(t: &Tree, v: usize, limits: &Limits) -> Result<bool> {
    check_solvable(t, ParamKind::Semitotal, limits.oracle_solve_max)?;
    t.check_vertex(v)?;
    let value = oracle_minimum(t, ParamKind::Semitotal, limits)?.value;
    let rest: Vec<usize> = (0..t.n()).filter(|&u| u != v).collect();
    for others in rest.into_iter().combinations(value - 1) {
        let mut subset = others;
        subset.push(v);
        subset.sort_unstable();
        if verify_semitotal(t, &subset)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verifier_examples() {
        let p4 = Tree::path(4);
        assert!(verify_dominating(&p4, &[1, 2]).unwrap());
        assert!(!verify_dominating(&p4, &[0]).unwrap());
        assert!(verify_dominating(&p4, &[0, 1, 2, 3]).unwrap());

        assert!(verify_total(&p4, &[1, 2]).unwrap());
        assert!(!verify_total(&p4, &[1, 3]).unwrap());
        assert!(verify_total(&Tree::star(3), &[0, 1]).unwrap());

        let p5 = Tree::path(5);
        assert!(verify_semitotal(&p5, &[1, 3]).unwrap());
        let p6 = Tree::path(6);
        assert!(verify_dominating(&p6, &[1, 4]).unwrap());
        assert!(!verify_semitotal(&p6, &[1, 4]).unwrap());
        assert!(!verify_semitotal(&p4, &[1]).unwrap());

        assert!(verify_almost(&p4, &[2], 0).unwrap());
        assert!(!verify_almost(&p4, &[2], 1).unwrap());
        let p2 = Tree::path(2);
        assert!(!verify_almost(&p2, &[], 0).unwrap());
        assert!(verify_dominating(&p4, &[9, 1]).is_err());
    }

    #[test]
    fn oracle_minimum_examples() {
        let limits = Limits::default();
        let p5 = Tree::path(5);
        assert_eq!(
            oracle_minimum(&p5, ParamKind::Semitotal, &limits).unwrap().value,
            2
        );
        let p4 = Tree::path(4);
        assert_eq!(oracle_minimum(&p4, ParamKind::Plain, &limits).unwrap().value, 2);
        assert_eq!(
            oracle_minimum(&p4, ParamKind::Semitotal, &limits).unwrap().value,
            2
        );

        // lexicographically smallest minimum witness for P6 is {0,2,4}
        let p6 = Tree::path(6);
        let cert = oracle_minimum(&p6, ParamKind::Semitotal, &limits).unwrap();
        assert_eq!(cert.value, 3);
        assert_eq!(cert.witness, vec![0, 2, 4]);

        let star = Tree::star(4);
        assert_eq!(oracle_minimum(&star, ParamKind::Plain, &limits).unwrap().value, 1);
        assert_eq!(
            oracle_minimum(&star, ParamKind::Semitotal, &limits).unwrap().value,
            2
        );
    }

    #[test]
    fn oracle_guardrails() {
        let limits = Limits::default();
        assert!(matches!(
            oracle_minimum(&Tree::path(1), ParamKind::Plain, &limits),
            Err(Error::IsolatedVertex)
        ));
        let tight = Limits {
            oracle_solve_max: 4,
            ..Limits::default()
        };
        assert!(matches!(
            oracle_minimum(&Tree::path(5), ParamKind::Plain, &tight),
            Err(Error::SizeLimitExceeded { n: 5, limit: 4 })
        ));
        assert!(oracle_minimum(&Tree::path(4), ParamKind::Almost(7), &limits).is_err());
    }

    #[test]
    fn all_minimum_sets_examples() {
        let limits = Limits::default();
        let p4 = Tree::path(4);
        assert_eq!(
            all_minimum_sets(&p4, ParamKind::Semitotal, &limits).unwrap(),
            vec![vec![0, 2], vec![1, 2], vec![1, 3]]
        );
        let p2 = Tree::path(2);
        assert_eq!(
            all_minimum_sets(&p2, ParamKind::Semitotal, &limits).unwrap(),
            vec![vec![0, 1]]
        );
        let p5 = Tree::path(5);
        assert!(all_minimum_sets(&p5, ParamKind::Plain, &limits)
            .unwrap()
            .contains(&vec![1, 3]));
    }

    #[test]
    fn forced_membership_matches_enumeration() {
        let limits = Limits::default();
        let p4 = Tree::path(4);
        assert!(in_some_minimum_semitotal(&p4, 0, &limits).unwrap());

        // the unique minimum semitotal set of P5 is {1,3}
        let p5 = Tree::path(5);
        assert_eq!(
            all_minimum_sets(&p5, ParamKind::Semitotal, &limits).unwrap(),
            vec![vec![1, 3]]
        );
        assert!(!in_some_minimum_semitotal(&p5, 0, &limits).unwrap());
        assert!(!in_some_minimum_semitotal(&p5, 2, &limits).unwrap());
        assert!(in_some_minimum_semitotal(&p5, 1, &limits).unwrap());

        let p2 = Tree::path(2);
        assert!(in_some_minimum_semitotal(&p2, 0, &limits).unwrap());
        assert!(in_some_minimum_semitotal(&p2, 1, &limits).unwrap());
    }

    #[test]
    fn path_fixtures_frozen_from_oracle() {
        // regression fixtures for the path families, n = 2..=10
        let limits = Limits::default();
        let semitotal = [2, 2, 2, 2, 3, 3, 4, 4, 4];
        let total = [2, 2, 2, 3, 4, 4, 4, 5, 6];
        let plain = [1, 1, 2, 2, 2, 3, 3, 3, 4];
        for n in 2..=10usize {
            let p = Tree::path(n);
            assert_eq!(
                oracle_minimum(&p, ParamKind::Semitotal, &limits).unwrap().value,
                semitotal[n - 2],
                "gamma_t2(P{n})"
            );
            assert_eq!(
                oracle_minimum(&p, ParamKind::Total, &limits).unwrap().value,
                total[n - 2],
                "gamma_t(P{n})"
            );
            assert_eq!(
                oracle_minimum(&p, ParamKind::Plain, &limits).unwrap().value,
                plain[n - 2],
                "gamma(P{n})"
            );
        }
    }
}
