//! Exhaustive verification sweeps over all non-isomorphic trees up to a
//! configurable order, with machine-readable reports.
//!
//! Three checks are provided: the lower bound 5·γ_t2 >= 2(n − l + 2), the
//! equality between detected extremal trees and the labeled-family census,
//! and the equality between trees with γ = γ_t2 and the second family's
//! census. Workers receive round-robin shards of the tree stream and
//! results are reassembled in stream order, so reports are byte-identical
//! across runs and job counts (timing aside).

use std::collections::BTreeMap;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::enumerate::{all_trees, TreeStream};
use crate::family;
use crate::graph::{CanonicalForm, Tree};
use crate::{dp, exact, Limits, Result};

/// Scope and resources of one verification sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepOptions {
    pub n_max: usize,
    pub jobs: usize,
    pub limits: Limits,
}

impl SweepOptions {
    pub fn new(n_max: usize) -> Self {
        SweepOptions {
            n_max,
            jobs: 1,
            limits: Limits::default(),
        }
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }
}

/// One tree failing the predicate under verification. The graph6 code
/// re-parses to a tree that reproduces the failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub graph6: String,
    pub kind: String,
    pub detail: String,
}

/// Wall-clock information, the only non-deterministic part of a report.
#[derive(Debug, Clone, Serialize)]
pub struct Timing {
    pub started_unix_ms: u64,
    pub elapsed_ms: u64,
}

/// Machine-readable outcome of one exhaustive check.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub n_min: usize,
    pub n_max: usize,
    pub trees_examined: u64,
    pub violations: Vec<Violation>,
    pub per_order: BTreeMap<usize, BTreeMap<String, u64>>,
    pub config: SweepOptions,
    pub timing: Timing,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn timing_start() -> (Instant, u64) {
    let unix_ms = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0);
    (Instant::now(), unix_ms)
}

/// Applies `f` to every tree of the stream, fanning out round-robin shards
/// to `jobs` workers; results come back in stream order regardless of the
/// job count.
fn map_stream<T, F>(stream: &TreeStream, jobs: usize, f: F) -> Vec<T>
where
    F: Fn(&Tree) -> T + Sync,
    T: Send,
{
    if jobs <= 1 || stream.len() < 2 {
        return stream.as_slice().iter().map(f).collect();
    }
    let jobs = jobs.min(stream.len());
    let mut results: Vec<Option<T>> = (0..stream.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let f = &f;
        let handles: Vec<_> = (0..jobs)
            .map(|k| {
                scope.spawn(move || {
                    stream
                        .shard(k, jobs)
                        .enumerate()
                        .map(|(i, t)| (k + i * jobs, f(t)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            for (idx, value) in handle.join().expect("worker panicked") {
                results[idx] = Some(value);
            }
        }
    });
    results.into_iter().map(|r| r.expect("shard covered")).collect()
}

fn finish_report(
    check: &str,
    opts: &SweepOptions,
    trees_examined: u64,
    mut violations: Vec<Violation>,
    per_order: BTreeMap<usize, BTreeMap<String, u64>>,
    started: (Instant, u64),
) -> VerificationReport {
    violations.sort_by(|a, b| (&a.kind, &a.graph6).cmp(&(&b.kind, &b.graph6)));
    VerificationReport {
        check: check.to_string(),
        n_min: 2,
        n_max: opts.n_max,
        trees_examined,
        violations,
        per_order,
        config: opts.clone(),
        timing: Timing {
            started_unix_ms: started.1,
            elapsed_ms: started.0.elapsed().as_millis() as u64,
        },
    }
}

/// Checks 5·γ_t2(T) >= 2(n − l + 2) for every tree with 2 <= n <= n_max,
/// counting equality cases per order.
pub fn verify_bound(
    opts: &SweepOptions,
    mut on_order: impl FnMut(usize, &BTreeMap<String, u64>),
) -> Result<VerificationReport> {
    let started = timing_start();
    let mut violations = Vec::new();
    let mut per_order = BTreeMap::new();
    let mut examined = 0u64;
    for n in 2..=opts.n_max {
        let stream = all_trees(n, &opts.limits)?;
        examined += stream.len() as u64;
        let rows = map_stream(&stream, opts.jobs, |t| {
            let value = dp::dp_semitotal(t).expect("order >= 2").value;
            let bound = 2 * (t.n() - t.leaf_count() + 2);
            (5 * value, bound, t.to_graph6().expect("order <= 62"))
        });
        let mut extremal = 0u64;
        for (lhs, rhs, graph6) in rows {
            if lhs < rhs {
                violations.push(Violation {
                    graph6,
                    kind: "bound-violated".into(),
                    detail: format!("5*gamma_t2 = {lhs} < 2*(n-l+2) = {rhs}"),
                });
            } else if lhs == rhs {
                extremal += 1;
            }
        }
        let stats = BTreeMap::from([
            ("trees".to_string(), stream.len() as u64),
            ("extremal".to_string(), extremal),
        ]);
        on_order(n, &stats);
        per_order.insert(n, stats);
    }
    Ok(finish_report(
        "verify-bound",
        opts,
        examined,
        violations,
        per_order,
        started,
    ))
}

/// Symmetric difference between a detected code set and a family census,
/// rendered as violations.
fn census_diff(
    detected: &BTreeMap<CanonicalForm, String>,
    census: &BTreeMap<CanonicalForm, String>,
    missing_kind: &str,
    missing_detail: &str,
    extra_kind: &str,
    extra_detail: &str,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for (code, graph6) in detected {
        if !census.contains_key(code) {
            out.push(Violation {
                graph6: graph6.clone(),
                kind: missing_kind.into(),
                detail: missing_detail.into(),
            });
        }
    }
    for (code, graph6) in census {
        if !detected.contains_key(code) {
            out.push(Violation {
                graph6: graph6.clone(),
                kind: extra_kind.into(),
                detail: extra_detail.into(),
            });
        }
    }
    out
}

/// Compares the exhaustively detected extremal trees against the labeled
/// family census for every order up to n_max, re-derives a labeling for
/// each extremal tree, and checks the generated labelings themselves.
pub fn verify_extremal(
    opts: &SweepOptions,
    mut on_order: impl FnMut(usize, &BTreeMap<String, u64>),
) -> Result<VerificationReport> {
    let started = timing_start();
    let fam = family::generate_family_t(opts.n_max, &opts.limits)?;
    let mut violations = Vec::new();

    // soundness of the generated labelings: the A-set is a minimum
    // semitotal dominating set
    for lt in &fam.labeled {
        let graph6 = lt.tree().to_graph6()?;
        if !family::labeling_violations(lt).is_empty() {
            let detail = family::labeling_violations(lt)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; ");
            violations.push(Violation {
                graph6: graph6.clone(),
                kind: "generated-labeling-invalid".into(),
                detail,
            });
        }
        let sa = lt.with_status(family::Status::A);
        let value = dp::dp_semitotal(lt.tree())?.value;
        if sa.len() != value || !exact::verify_semitotal(lt.tree(), &sa)? {
            violations.push(Violation {
                graph6,
                kind: "generated-a-set-not-minimum".into(),
                detail: format!("|S_A| = {} but gamma_t2 = {value}", sa.len()),
            });
        }
    }

    let mut per_order = BTreeMap::new();
    let mut examined = 0u64;
    for n in 2..=opts.n_max {
        let stream = all_trees(n, &opts.limits)?;
        examined += stream.len() as u64;
        let rows = map_stream(&stream, opts.jobs, |t| {
            let extremal = family::is_extremal(t).expect("order >= 2");
            let labeling = if extremal {
                Some(family::find_labeling(t).map(|lt| {
                    let issues = family::labeling_violations(&lt);
                    let sa = lt.with_status(family::Status::A);
                    let value = dp::dp_semitotal(t).expect("order >= 2").value;
                    (issues, sa.len() == value)
                }))
            } else {
                None
            };
            (
                t.canonical_form(),
                t.to_graph6().expect("order <= 62"),
                labeling,
            )
        });
        let mut detected = BTreeMap::new();
        for (code, graph6, labeling) in rows {
            let Some(labeling) = labeling else { continue };
            match labeling {
                None => violations.push(Violation {
                    graph6: graph6.clone(),
                    kind: "labeling-missing".into(),
                    detail: "extremal tree but no labeling recovered".into(),
                }),
                Some((issues, a_is_minimum)) => {
                    if !issues.is_empty() {
                        let detail = issues
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join("; ");
                        violations.push(Violation {
                            graph6: graph6.clone(),
                            kind: "labeling-invalid".into(),
                            detail,
                        });
                    }
                    if !a_is_minimum {
                        violations.push(Violation {
                            graph6: graph6.clone(),
                            kind: "labeling-a-set-not-minimum".into(),
                            detail: "recovered A-set is not a minimum semitotal set".into(),
                        });
                    }
                }
            }
            detected.insert(code, graph6);
        }
        let census: BTreeMap<CanonicalForm, String> = fam
            .census
            .iter()
            .filter(|(_, t)| t.n() == n)
            .map(|(c, t)| (c.clone(), t.to_graph6().expect("order <= 62")))
            .collect();
        violations.extend(census_diff(
            &detected,
            &census,
            "extremal-not-generated",
            "attains the bound but missing from the family census",
            "generated-not-extremal",
            "in the family census but does not attain the bound",
        ));
        let stats = BTreeMap::from([
            ("trees".to_string(), stream.len() as u64),
            ("extremal".to_string(), detected.len() as u64),
            ("census".to_string(), census.len() as u64),
        ]);
        on_order(n, &stats);
        per_order.insert(n, stats);
    }
    Ok(finish_report(
        "verify-extremal",
        opts,
        examined,
        violations,
        per_order,
        started,
    ))
}

/// Compares the trees with γ = γ_t2 against the second family's census for
/// every order up to n_max.
pub fn verify_gamma_eq(
    opts: &SweepOptions,
    mut on_order: impl FnMut(usize, &BTreeMap<String, u64>),
) -> Result<VerificationReport> {
    let started = timing_start();
    let fam = family::generate_family_o(opts.n_max, &opts.limits)?;
    let mut violations = Vec::new();
    let mut per_order = BTreeMap::new();
    let mut examined = 0u64;
    for n in 2..=opts.n_max {
        let stream = all_trees(n, &opts.limits)?;
        examined += stream.len() as u64;
        let rows = map_stream(&stream, opts.jobs, |t| {
            (
                family::is_gamma_equal(t).expect("order >= 2"),
                t.canonical_form(),
                t.to_graph6().expect("order <= 62"),
            )
        });
        let mut detected = BTreeMap::new();
        for (equal, code, graph6) in rows {
            if equal {
                detected.insert(code, graph6);
            }
        }
        let census: BTreeMap<CanonicalForm, String> = fam
            .iter()
            .filter(|(_, t)| t.n() == n)
            .map(|(c, t)| (c.clone(), t.to_graph6().expect("order <= 62")))
            .collect();
        violations.extend(census_diff(
            &detected,
            &census,
            "gamma-eq-not-generated",
            "has gamma = gamma_t2 but missing from the family census",
            "generated-not-gamma-eq",
            "in the family census but gamma differs from gamma_t2",
        ));
        let stats = BTreeMap::from([
            ("trees".to_string(), stream.len() as u64),
            ("gamma_eq".to_string(), detected.len() as u64),
            ("census".to_string(), census.len() as u64),
        ]);
        on_order(n, &stats);
        per_order.insert(n, stats);
    }
    Ok(finish_report(
        "verify-gamma-eq",
        opts,
        examined,
        violations,
        per_order,
        started,
    ))
}

/// Replays one reported violation against the library, returning true iff
/// the tree indeed violates the predicate named by the violation kind.
/// `in_census` must answer membership in the census the report was
/// produced with; [`FamilyCensus::contains`] is the usual choice.
pub fn violation_holds(
    violation: &Violation,
    in_census: impl Fn(&CanonicalForm) -> bool,
) -> Result<bool> {
    let t = Tree::from_graph6(&violation.graph6)?;
    let generated = in_census(&t.canonical_form());
    Ok(match violation.kind.as_str() {
        "bound-violated" => {
            5 * dp::dp_semitotal(&t)?.value < 2 * (t.n() - t.leaf_count() + 2)
        }
        "extremal-not-generated" => family::is_extremal(&t)? && !generated,
        "generated-not-extremal" => !family::is_extremal(&t)? && generated,
        "gamma-eq-not-generated" => family::is_gamma_equal(&t)? && !generated,
        "generated-not-gamma-eq" => !family::is_gamma_equal(&t)? && generated,
        "labeling-missing" => {
            family::is_extremal(&t)? && family::find_labeling(&t).is_none()
        }
        "labeling-invalid" => family::find_labeling(&t)
            .map(|lt| !family::labeling_violations(&lt).is_empty())
            .unwrap_or(false),
        _ => false,
    })
}
