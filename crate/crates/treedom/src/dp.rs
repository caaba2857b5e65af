//! Rooted-tree dynamic programs for the four domination parameters.
//!
//! Each solver runs one post-order pass with a fixed per-vertex state table
//! and reconstructs a witness by replaying the stored argmin choices, so a
//! solve is O(n · maxdeg) and fully deterministic.
//!
//! The semitotal program is the interesting one. A solution vertex needs
//! another solution vertex within distance two ("a witness"); in a rooted
//! tree that witness is either inside the vertex's own subtree or reachable
//! through the parent (the parent itself, a sibling, or the grandparent).
//! Witness obligations therefore travel at most two levels up, which is why
//! five states per vertex suffice:
//!
//! * `S1`: in the solution, witnessed from within its subtree;
//! * `S2`: in the solution, unwitnessed (nearest other solution vertex in
//!   the subtree is at distance three or more);
//! * `S3`: out of the solution, dominated by a child in the solution, no
//!   pending obligation;
//! * `S4`: out, dominated, but exactly one child is an unresolved `S2`,
//!   so the parent must join the solution;
//! * `S5`: out, undominated, no child in the solution (the parent must
//!   join).
//!
//! Combining children of `v`: if `v` joins the solution it is witnessed iff
//! some child is in `{S1, S2}` (distance one) or `{S3, S4}` (that child's
//! solution-child sits at distance two), and it resolves children in
//! `S2`/`S4`/`S5`. If `v` stays out, children must come from `{S1, S2, S3}`;
//! `v` is dominated iff some child is in `{S1, S2}`; two such children
//! witness each other through `v`, so a single unresolved `S2` child is the
//! only case that escalates (to `S4`). The root must land in `{S1, S3}`.

use crate::exact::{DominationCertificate, ParamKind};
use crate::graph::Tree;
use crate::{Error, Result};

const INF: u32 = u32::MAX / 4;

fn add(a: u32, b: u32) -> u32 {
    a.saturating_add(b).min(INF)
}

/// `expensive - cheap` where `cheap <= expensive`, saturating at infinity.
fn upgrade_delta(expensive: u32, cheap: u32) -> u32 {
    if expensive >= INF {
        INF
    } else {
        expensive - cheap
    }
}

/// Minimum of `cell` over the allowed states, ties to the smallest state
/// index.
fn best_of(cell: &[u32], allowed: &[u8]) -> (u32, u8) {
    let mut best = INF;
    let mut state = allowed[0];
    for &s in allowed {
        if cell[s as usize] < best {
            best = cell[s as usize];
            state = s;
        }
    }
    (best, state)
}

/// Running sum over child costs that can answer "total excluding one
/// element" without ever subtracting infinities.
#[derive(Default)]
struct ExclSum {
    finite: u64,
    infs: u32,
}

impl ExclSum {
    fn push(&mut self, x: u32) {
        if x >= INF {
            self.infs += 1;
        } else {
            self.finite += u64::from(x);
        }
    }

    fn total(&self) -> u32 {
        if self.infs > 0 {
            INF
        } else {
            self.finite.min(u64::from(INF)) as u32
        }
    }

    fn excluding(&self, x: u32) -> u32 {
        if x >= INF {
            if self.infs > 1 {
                INF
            } else {
                self.finite.min(u64::from(INF)) as u32
            }
        } else if self.infs > 0 {
            INF
        } else {
            (self.finite - u64::from(x)).min(u64::from(INF)) as u32
        }
    }
}

struct Rooted {
    order: Vec<usize>,
    children: Vec<Vec<usize>>,
}

fn rooted(t: &Tree, root: usize) -> Rooted {
    let (order, parent) = t.rooted_order(root);
    let mut children = vec![Vec::new(); t.n()];
    for &v in &order {
        if let Some(p) = parent[v] {
            children[p].push(v);
        }
    }
    Rooted { order, children }
}

/// Replays stored child-state choices from the root downward and collects
/// the vertices whose state means "in the solution".
fn extract_witness(
    root: usize,
    start: u8,
    children: &[Vec<usize>],
    pick: &[Vec<Vec<u8>>],
    in_states: &[u8],
) -> Vec<usize> {
    let mut witness = Vec::new();
    let mut stack = vec![(root, start)];
    while let Some((v, s)) = stack.pop() {
        if in_states.contains(&s) {
            witness.push(v);
        }
        let states = &pick[v][s as usize];
        for (i, &c) in children[v].iter().enumerate() {
            stack.push((c, states[i]));
        }
    }
    witness.sort_unstable();
    witness
}

fn semitotal_rooted(t: &Tree, root: usize, forced: Option<usize>) -> (u32, Vec<usize>) {
    let r = rooted(t, root);
    let n = t.n();
    let mut cost = vec![[INF; 5]; n];
    let mut pick: Vec<Vec<Vec<u8>>> = vec![vec![Vec::new(); 5]; n];
    for &v in r.order.iter().rev() {
        let ch = &r.children[v];
        let k = ch.len();
        let mut cell = [INF; 5];
        if k == 0 {
            cell = [INF, 1, INF, INF, 0];
        } else {
            // S2: in the solution with every child undominated-and-empty
            let mut s5sum = ExclSum::default();
            for &c in ch {
                s5sum.push(cost[c][4]);
            }
            cell[1] = add(1, s5sum.total());
            pick[v][1] = vec![4; k];

            // S1: children free, but at least one must put a solution
            // vertex within distance two (any state except S5)
            let mut base = ExclSum::default();
            let mut states = Vec::with_capacity(k);
            let mut have_witness = false;
            let mut best_delta = INF;
            let mut best_pos = 0;
            let mut best_state = 0u8;
            for (i, &c) in ch.iter().enumerate() {
                let (ball, sall) = best_of(&cost[c], &[0, 1, 2, 3, 4]);
                let (bn5, sn5) = best_of(&cost[c], &[0, 1, 2, 3]);
                base.push(ball);
                states.push(sall);
                if sall != 4 {
                    have_witness = true;
                }
                let delta = upgrade_delta(bn5, ball);
                if delta < best_delta {
                    best_delta = delta;
                    best_pos = i;
                    best_state = sn5;
                }
            }
            if have_witness {
                cell[0] = add(1, base.total());
                pick[v][0] = states.clone();
            } else if best_delta < INF {
                cell[0] = add(1, add(base.total(), best_delta));
                let mut upgraded = states.clone();
                upgraded[best_pos] = best_state;
                pick[v][0] = upgraded;
            }

            // out-of-solution states: children restricted to {S1,S2,S3}
            let mut s3sum = ExclSum::default();
            for &c in ch {
                s3sum.push(cost[c][2]);
            }
            cell[4] = s3sum.total();
            pick[v][4] = vec![2; k];

            // S4: exactly one child is an unresolved S2
            let mut s4_best = INF;
            let mut s4_pos = 0;
            for (i, &c) in ch.iter().enumerate() {
                let cand = add(cost[c][1], s3sum.excluding(cost[c][2]));
                if cand < s4_best {
                    s4_best = cand;
                    s4_pos = i;
                }
            }
            cell[3] = s4_best;
            if s4_best < INF {
                let mut choice = vec![2; k];
                choice[s4_pos] = 1;
                pick[v][3] = choice;
            }

            // S3 route one: a single S1 child dominates v, nothing pending
            let mut a_best = INF;
            let mut a_pos = 0;
            for (i, &c) in ch.iter().enumerate() {
                let cand = add(cost[c][0], s3sum.excluding(cost[c][2]));
                if cand < a_best {
                    a_best = cand;
                    a_pos = i;
                }
            }
            // S3 route two: two or more solution children witness each
            // other through v
            let mut free_sum = ExclSum::default();
            let mut free_states = Vec::with_capacity(k);
            let mut in_solution = 0usize;
            let mut d1 = (INF, 0usize, 0u8);
            let mut d2 = (INF, 0usize, 0u8);
            for (i, &c) in ch.iter().enumerate() {
                let (bfree, sfree) = best_of(&cost[c], &[0, 1, 2]);
                let (bin, sin) = best_of(&cost[c], &[0, 1]);
                free_sum.push(bfree);
                free_states.push(sfree);
                if sfree <= 1 {
                    in_solution += 1;
                } else {
                    let delta = upgrade_delta(bin, bfree);
                    if delta < d1.0 {
                        d2 = d1;
                        d1 = (delta, i, sin);
                    } else if delta < d2.0 {
                        d2 = (delta, i, sin);
                    }
                }
            }
            let (b_best, b_states) = if in_solution >= 2 {
                (free_sum.total(), free_states.clone())
            } else if in_solution == 1 && d1.0 < INF {
                let mut s = free_states.clone();
                s[d1.1] = d1.2;
                (add(free_sum.total(), d1.0), s)
            } else if in_solution == 0 && d1.0 < INF && d2.0 < INF {
                let mut s = free_states.clone();
                s[d1.1] = d1.2;
                s[d2.1] = d2.2;
                (add(free_sum.total(), add(d1.0, d2.0)), s)
            } else {
                (INF, Vec::new())
            };
            if a_best <= b_best {
                cell[2] = a_best;
                if a_best < INF {
                    let mut choice = vec![2; k];
                    choice[a_pos] = 0;
                    pick[v][2] = choice;
                }
            } else {
                cell[2] = b_best;
                pick[v][2] = b_states;
            }
        }
        if forced == Some(v) {
            cell[2] = INF;
            cell[3] = INF;
            cell[4] = INF;
        }
        cost[v] = cell;
    }
    let (value, start) = if cost[root][0] <= cost[root][2] {
        (cost[root][0], 0)
    } else {
        (cost[root][2], 2)
    };
    let witness = extract_witness(root, start, &r.children, &pick, &[0, 1]);
    (value, witness)
}

fn total_rooted(t: &Tree, root: usize) -> (u32, Vec<usize>) {
    // T1 in+dominated, T2 in+undominated, T3 out+dominated, T4 out+undominated
    let r = rooted(t, root);
    let n = t.n();
    let mut cost = vec![[INF; 4]; n];
    let mut pick: Vec<Vec<Vec<u8>>> = vec![vec![Vec::new(); 4]; n];
    for &v in r.order.iter().rev() {
        let ch = &r.children[v];
        let k = ch.len();
        let mut cell = [INF; 4];
        if k == 0 {
            cell = [INF, 1, INF, 0];
        } else {
            // T1: children free, at least one child in the solution
            let mut base = ExclSum::default();
            let mut states = Vec::with_capacity(k);
            let mut have_in = false;
            let mut best_delta = INF;
            let mut best_pos = 0;
            let mut best_state = 0u8;
            for (i, &c) in ch.iter().enumerate() {
                let (ball, sall) = best_of(&cost[c], &[0, 1, 2, 3]);
                let (bin, sin) = best_of(&cost[c], &[0, 1]);
                base.push(ball);
                states.push(sall);
                if sall <= 1 {
                    have_in = true;
                }
                let delta = upgrade_delta(bin, ball);
                if delta < best_delta {
                    best_delta = delta;
                    best_pos = i;
                    best_state = sin;
                }
            }
            if have_in {
                cell[0] = add(1, base.total());
                pick[v][0] = states.clone();
            } else if best_delta < INF {
                cell[0] = add(1, add(base.total(), best_delta));
                let mut upgraded = states;
                upgraded[best_pos] = best_state;
                pick[v][0] = upgraded;
            }

            // T2: no child in the solution; v waits for its parent
            let mut sum = ExclSum::default();
            let mut t2_states = Vec::with_capacity(k);
            for &c in ch {
                let (b, s) = best_of(&cost[c], &[2, 3]);
                sum.push(b);
                t2_states.push(s);
            }
            cell[1] = add(1, sum.total());
            pick[v][1] = t2_states;

            // T3: children from {T1, T3}, at least one T1 to dominate v
            let mut base3 = ExclSum::default();
            let mut states3 = Vec::with_capacity(k);
            let mut have_t1 = false;
            let mut best3 = INF;
            let mut pos3 = 0;
            for (i, &c) in ch.iter().enumerate() {
                let (b, s) = best_of(&cost[c], &[0, 2]);
                base3.push(b);
                states3.push(s);
                if s == 0 {
                    have_t1 = true;
                }
                let delta = upgrade_delta(cost[c][0], b);
                if delta < best3 {
                    best3 = delta;
                    pos3 = i;
                }
            }
            if have_t1 {
                cell[2] = base3.total();
                pick[v][2] = states3.clone();
            } else if best3 < INF {
                cell[2] = add(base3.total(), best3);
                let mut upgraded = states3;
                upgraded[pos3] = 0;
                pick[v][2] = upgraded;
            }

            // T4: all children out and already dominated
            let mut sum4 = ExclSum::default();
            for &c in ch {
                sum4.push(cost[c][2]);
            }
            cell[3] = sum4.total();
            pick[v][3] = vec![2; k];
        }
        cost[v] = cell;
    }
    let (value, start) = if cost[root][0] <= cost[root][2] {
        (cost[root][0], 0)
    } else {
        (cost[root][2], 2)
    };
    let witness = extract_witness(root, start, &r.children, &pick, &[0, 1]);
    (value, witness)
}

fn domination_rooted(t: &Tree, root: usize, exempt: Option<usize>) -> (u32, Vec<usize>) {
    // IN, DOM (out + dominated by a child), NEED (out + undominated).
    // The exempt vertex's NEED state carries no obligation to its parent.
    let r = rooted(t, root);
    let n = t.n();
    let mut cost = vec![[INF; 3]; n];
    let mut pick: Vec<Vec<Vec<u8>>> = vec![vec![Vec::new(); 3]; n];
    for &v in r.order.iter().rev() {
        let ch = &r.children[v];
        let k = ch.len();
        let mut cell = [INF; 3];
        if k == 0 {
            cell = [1, INF, 0];
        } else {
            let mut in_sum = ExclSum::default();
            let mut in_states = Vec::with_capacity(k);
            for &c in ch {
                let (b, s) = best_of(&cost[c], &[0, 1, 2]);
                in_sum.push(b);
                in_states.push(s);
            }
            cell[0] = add(1, in_sum.total());
            pick[v][0] = in_states;

            // DOM: at least one child in the solution; out-children must be
            // dominated themselves unless exempt
            let mut base = ExclSum::default();
            let mut states = Vec::with_capacity(k);
            let mut have_in = false;
            let mut best_delta = INF;
            let mut best_pos = 0;
            for (i, &c) in ch.iter().enumerate() {
                let allowed: &[u8] = if exempt == Some(c) { &[0, 1, 2] } else { &[0, 1] };
                let (b, s) = best_of(&cost[c], allowed);
                base.push(b);
                states.push(s);
                if s == 0 {
                    have_in = true;
                }
                let delta = upgrade_delta(cost[c][0], b);
                if delta < best_delta {
                    best_delta = delta;
                    best_pos = i;
                }
            }
            if have_in {
                cell[1] = base.total();
                pick[v][1] = states.clone();
            } else if best_delta < INF {
                cell[1] = add(base.total(), best_delta);
                let mut upgraded = states;
                upgraded[best_pos] = 0;
                pick[v][1] = upgraded;
            }

            // NEED: no child in the solution, every child settled
            let mut sum = ExclSum::default();
            let mut need_states = Vec::with_capacity(k);
            for &c in ch {
                let allowed: &[u8] = if exempt == Some(c) { &[1, 2] } else { &[1] };
                let (b, s) = best_of(&cost[c], allowed);
                sum.push(b);
                need_states.push(s);
            }
            cell[2] = sum.total();
            pick[v][2] = need_states;
        }
        cost[v] = cell;
    }
    let mut value = cost[root][0].min(cost[root][1]);
    let mut start: u8 = if cost[root][0] <= cost[root][1] { 0 } else { 1 };
    if exempt == Some(root) && cost[root][2] < value {
        value = cost[root][2];
        start = 2;
    }
    let witness = extract_witness(root, start, &r.children, &pick, &[0]);
    (value, witness)
}

/// γ(T) with a minimum dominating set, by the classic three-state tree DP.
pub fn dp_domination(t: &Tree) -> DominationCertificate {
    let (value, witness) = domination_rooted(t, 0, None);
    DominationCertificate {
        kind: ParamKind::Plain,
        value: value as usize,
        witness,
    }
}

/// γ_t(T) with a minimum total dominating set.
pub fn dp_total_domination(t: &Tree) -> Result<DominationCertificate> {
    if t.n() < 2 {
        return Err(Error::IsolatedVertex);
    }
    let (value, witness) = total_rooted(t, 0);
    Ok(DominationCertificate {
        kind: ParamKind::Total,
        value: value as usize,
        witness,
    })
}

/// γ_t2(T) with a minimum semitotal dominating set.
pub fn dp_semitotal(t: &Tree) -> Result<DominationCertificate> {
    if t.n() < 2 {
        return Err(Error::IsolatedVertex);
    }
    let (value, witness) = semitotal_rooted(t, 0, None);
    Ok(DominationCertificate {
        kind: ParamKind::Semitotal,
        value: value as usize,
        witness,
    })
}

/// γ(T; v): minimum size of a set dominating every vertex except possibly
/// `v`.
pub fn dp_almost_domination(t: &Tree, v: usize) -> Result<DominationCertificate> {
    if t.n() < 2 {
        return Err(Error::IsolatedVertex);
    }
    t.check_vertex(v)?;
    let (value, witness) = domination_rooted(t, 0, Some(v));
    Ok(DominationCertificate {
        kind: ParamKind::Almost(v),
        value: value as usize,
        witness,
    })
}

/// Minimum semitotal dominating set among sets required to contain `v`.
pub fn dp_semitotal_forced(t: &Tree, v: usize) -> Result<DominationCertificate> {
    if t.n() < 2 {
        return Err(Error::IsolatedVertex);
    }
    t.check_vertex(v)?;
    let (value, witness) = semitotal_rooted(t, 0, Some(v));
    Ok(DominationCertificate {
        kind: ParamKind::Semitotal,
        value: value as usize,
        witness,
    })
}

/// True iff `v` lies in some minimum semitotal dominating set, via the
/// forced DP rather than subset search.
pub fn in_some_minimum_semitotal(t: &Tree, v: usize) -> Result<bool> {
    Ok(dp_semitotal_forced(t, v)?.value == dp_semitotal(t)?.value)
}
