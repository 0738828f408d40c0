//! Ground-truth routines: slow, simple, and independent of the fast paths.
//!
//! Two jobs live here. `brute_force_mono_clique` re-derives what the
//! branch-and-bound search reports by checking every vertex subset
//! directly against the raw colour masks, with no shared search logic, so
//! the two routes can be compared on the same inputs. `exact_ramsey` pins
//! down the smallest order at which every assignment of s-colour sets to
//! the edges forces a clique whose edges share a colour, by exhaustive
//! search with a symmetry reduction on the first edge, returning both the
//! value and a machine-checkable trail: the largest colouring that avoids
//! such cliques, plus per-depth exploration counts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, ConstructionTag};
use crate::colouring::SetColouring;
use crate::verifier::CliqueWitness;

/// Cap on subset-times-colour checks in the brute-force route.
pub const MAX_BRUTE_FORCE_CHECKS: u128 = 1_000_000_000;
/// Cap on the number of candidate colour sets per edge in the exact search.
pub const MAX_EDGE_CHOICES: u128 = 1 << 16;
/// The exact search keeps one machine word per vertex row.
pub const MAX_EXACT_VERTICES: u32 = 64;

#[derive(Debug)]
pub enum OracleError {
    /// (r, s, k) outside what the routine accepts.
    Domain(String),
    /// Brute force would need more than `MAX_BRUTE_FORCE_CHECKS` checks.
    SearchSpaceTooLarge { checks: u128 },
    /// More than `MAX_EDGE_CHOICES` colour sets per edge.
    TooManyEdgeChoices { choices: u128 },
    /// The search hit `max_nodes` candidate assignments.
    NodeBudgetExceeded { nodes: u64, at_order: u32 },
    /// Every order up to the cap still admits a clique-free colouring, so
    /// the exact value lies strictly above `cap`. The witness colouring on
    /// `cap` vertices proves it.
    CapExceeded { cap: u32, witness: Box<Certificate>, log: SearchLog },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Domain(msg) => write!(f, "{msg}"),
            OracleError::SearchSpaceTooLarge { checks } => write!(
                f,
                "brute force would need {checks} checks, more than the {MAX_BRUTE_FORCE_CHECKS} cap",
            ),
            OracleError::TooManyEdgeChoices { choices } => write!(
                f,
                "{choices} colour sets per edge exceed the {MAX_EDGE_CHOICES} cap",
            ),
            OracleError::NodeBudgetExceeded { nodes, at_order } => write!(
                f,
                "search stopped after {nodes} candidate assignments at order {at_order}",
            ),
            OracleError::CapExceeded { cap, .. } => write!(
                f,
                "no forced clique up to order {cap}; the exact value is larger",
            ),
        }
    }
}

impl std::error::Error for OracleError {}

/// C(n, k), saturating at u128::MAX.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        let Some(next) = acc.checked_mul((n - i) as u128) else {
            return u128::MAX;
        };
        acc = next / (i as u128 + 1);
    }
    acc
}

/// Visit every k-subset of 0..n in lexicographic order until `f` returns
/// true; reports whether any call did.
fn any_combination(n: u32, k: u32, mut f: impl FnMut(&[u32]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<u32> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        // Advance the rightmost index that still has room.
        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if idx[pos as usize] < n - (k - pos) {
                idx[pos as usize] += 1;
                for later in pos + 1..k {
                    idx[later as usize] = idx[later as usize - 1] + 1;
                }
                break;
            }
            if pos == 0 {
                return false;
            }
        }
        if k == 0 {
            return false;
        }
    }
}

/// Check every k-subset of vertices against every colour, straight off the
/// masks. Deliberately naive: this is the reference the clever search is
/// measured against. Scans colour-major, so the reported witness has the
/// lowest colour index that admits any clique, with the lexicographically
/// first vertex set for that colour.
pub fn brute_force_mono_clique(
    col: &SetColouring,
    k: u32,
) -> Result<Option<CliqueWitness>, OracleError> {
    if k < 2 {
        return Err(OracleError::Domain(format!("clique order k={k} must be at least 2")));
    }
    let (n, r) = (col.n(), col.r());
    if k > n {
        return Ok(None);
    }
    let checks = binomial(u64::from(n), u64::from(k)).saturating_mul(u128::from(r));
    if checks > MAX_BRUTE_FORCE_CHECKS {
        return Err(OracleError::SearchSpaceTooLarge { checks });
    }
    for colour in 0..r {
        let mut witness = None;
        any_combination(n, k, |subset| {
            let all = subset.iter().enumerate().all(|(i, &u)| {
                subset[i + 1..].iter().all(|&v| col.has_colour(u, v, colour))
            });
            if all {
                witness = Some(CliqueWitness { colour_index: colour, vertices: subset.to_vec() });
            }
            all
        });
        if witness.is_some() {
            return Ok(witness);
        }
    }
    Ok(None)
}

/// How one depth of the exhaustive search behaved: candidate colour sets
/// tried at that edge slot, and how many were rejected for completing a
/// clique with a shared colour.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCounts {
    pub tried: u64,
    pub rejected: u64,
}

/// Exploration record for one graph order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderLog {
    pub order: u32,
    /// One entry per edge slot, in assignment order.
    pub levels: Vec<LevelCounts>,
    pub total_nodes: u64,
    /// True when some assignment avoided all shared-colour cliques.
    pub admits_good_colouring: bool,
}

/// Full trail of an exact computation, one entry per order tried.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SearchLog {
    pub runs: Vec<OrderLog>,
}

/// The answer plus everything needed to audit it.
#[derive(Debug)]
pub struct ExactRamseyResult {
    pub r: u32,
    pub s: u32,
    pub k: u32,
    /// Smallest order at which every assignment forces a shared-colour clique.
    pub value: u32,
    /// True when the value was established by exhausting the search space
    /// at that order (always the case for results returned here).
    pub exhaustive_upper_proof: bool,
    /// A colouring on `value - 1` vertices with no forced clique, proving
    /// the value cannot be smaller. Absent only when `value - 1` is zero.
    pub witness: Option<Certificate>,
    pub log: SearchLog,
}

enum DfsOutcome {
    Found,
    Exhausted,
    OutOfBudget,
}

/// One exhaustive search at a fixed order.
struct EdgeDfs<'a> {
    k: u32,
    edges: Vec<(u32, u32)>,
    /// All candidate colour sets for an edge, as bitmasks over colours.
    choices: &'a [u64],
    /// adjacency[colour][vertex] over already-assigned edges.
    adjacency: Vec<Vec<u64>>,
    /// Chosen colour set per edge slot.
    assignment: Vec<u64>,
    levels: Vec<LevelCounts>,
    nodes: u64,
    budget: u64,
}

impl EdgeDfs<'_> {
    /// Is there a clique of `size` vertices inside `cand`, complete in the
    /// graph whose rows are `adj`?
    fn has_clique_within(adj: &[u64], cand: u64, size: u32) -> bool {
        if size == 0 {
            return true;
        }
        if cand.count_ones() < size {
            return false;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            if Self::has_clique_within(adj, rest & adj[v as usize], size - 1) {
                return true;
            }
        }
        false
    }

    /// Would giving edge (u, v) this colour set complete a clique of order
    /// k all of whose edges share one of the set's colours?
    fn completes_clique(&self, u: u32, v: u32, mask: u64) -> bool {
        let mut colours = mask;
        while colours != 0 {
            let c = colours.trailing_zeros();
            colours &= colours - 1;
            let adj = &self.adjacency[c as usize];
            let common = adj[u as usize] & adj[v as usize];
            if Self::has_clique_within(adj, common, self.k - 2) {
                return true;
            }
        }
        false
    }

    fn set_edge(&mut self, u: u32, v: u32, mask: u64, on: bool) {
        let mut colours = mask;
        while colours != 0 {
            let c = colours.trailing_zeros() as usize;
            colours &= colours - 1;
            if on {
                self.adjacency[c][u as usize] |= 1 << v;
                self.adjacency[c][v as usize] |= 1 << u;
            } else {
                self.adjacency[c][u as usize] &= !(1 << v);
                self.adjacency[c][v as usize] &= !(1 << u);
            }
        }
    }

    fn run(&mut self, depth: usize) -> DfsOutcome {
        if depth == self.edges.len() {
            return DfsOutcome::Found;
        }
        let (u, v) = self.edges[depth];
        // Colour permutations act freely before anything is assigned, so
        // the first edge only ever needs the first candidate set.
        let candidates: &[u64] =
            if depth == 0 { &self.choices[..1] } else { self.choices };
        for &mask in candidates {
            self.levels[depth].tried += 1;
            self.nodes += 1;
            if self.nodes > self.budget {
                return DfsOutcome::OutOfBudget;
            }
            if self.completes_clique(u, v, mask) {
                self.levels[depth].rejected += 1;
                continue;
            }
            self.set_edge(u, v, mask, true);
            self.assignment[depth] = mask;
            match self.run(depth + 1) {
                DfsOutcome::Exhausted => {
                    self.set_edge(u, v, mask, false);
                }
                done => return done,
            }
        }
        DfsOutcome::Exhausted
    }
}

/// All s-subsets of 0..r as colour bitmasks, lexicographic by element list,
/// so the first entry is {0, ..., s-1}.
fn subset_masks(r: u32, s: u32) -> Vec<u64> {
    let mut out = Vec::new();
    any_combination(r, s, |subset| {
        out.push(subset.iter().fold(0u64, |m, &c| m | 1 << c));
        false
    });
    out
}

fn colouring_from_assignment(n: u32, r: u32, edges: &[(u32, u32)], masks: &[u64]) -> SetColouring {
    let mut col = SetColouring::new(n, r);
    for (&(u, v), &mask) in edges.iter().zip(masks) {
        let mut colours = mask;
        while colours != 0 {
            let c = colours.trailing_zeros();
            colours &= colours - 1;
            col.set_colour(u, v, c);
        }
    }
    col
}

/// Edges of a complete graph in column order: all pairs inside {0..v} end
/// before vertex v+1 appears, so each prefix of the assignment is a full
/// colouring of a smaller complete graph.
fn column_major_edges(n: u32) -> Vec<(u32, u32)> {
    let mut edges = Vec::with_capacity(n as usize * (n as usize - 1) / 2);
    for v in 1..n {
        for u in 0..v {
            edges.push((u, v));
        }
    }
    edges
}

fn external_certificate(s: u32, k: u32, col: SetColouring) -> Certificate {
    Certificate {
        s,
        k,
        construction: ConstructionTag::External,
        seed: 0,
        m: None,
        p: None,
        colouring: col,
    }
}

/// Smallest order at which every assignment of s-element colour sets to
/// the edges of the complete graph contains k vertices whose pairs all
/// share a colour. Orders are tried from the trivial end upwards; each
/// order either yields a colouring with no such clique (pushing the value
/// higher) or is exhausted (fixing the value). `max_nodes` bounds the
/// total candidate assignments across all orders.
pub fn exact_ramsey(
    r: u32,
    s: u32,
    k: u32,
    cap: u32,
    max_nodes: u64,
) -> Result<ExactRamseyResult, OracleError> {
    if r < 1 {
        return Err(OracleError::Domain("need at least one colour".to_string()));
    }
    if s < 1 || s > r {
        return Err(OracleError::Domain(format!("need 1 <= s <= r, got s={s}, r={r}")));
    }
    if k < 2 {
        return Err(OracleError::Domain(format!("clique order k={k} must be at least 2")));
    }
    if cap < k || cap > MAX_EXACT_VERTICES {
        return Err(OracleError::Domain(format!(
            "order cap {cap} outside {k}..={MAX_EXACT_VERTICES}; below the clique order the value cannot be determined",
        )));
    }
    if r > MAX_EXACT_VERTICES {
        return Err(OracleError::Domain(format!(
            "r={r} colours exceed the exact search's {MAX_EXACT_VERTICES}-bit masks",
        )));
    }
    let choice_count = binomial(u64::from(r), u64::from(s));
    if choice_count > MAX_EDGE_CHOICES {
        return Err(OracleError::TooManyEdgeChoices { choices: choice_count });
    }
    let choices = subset_masks(r, s);

    let mut log = SearchLog::default();
    let mut witness: Option<Certificate> = None;
    let mut nodes_used = 0u64;
    for order in (k - 1).max(1)..=cap {
        let edges = column_major_edges(order);
        let edge_count = edges.len();
        let mut dfs = EdgeDfs {
            k,
            edges,
            choices: &choices,
            adjacency: vec![vec![0u64; order as usize]; r as usize],
            assignment: vec![0u64; edge_count],
            levels: vec![LevelCounts::default(); edge_count],
            nodes: 0,
            budget: max_nodes - nodes_used,
        };
        let outcome = dfs.run(0);
        nodes_used += dfs.nodes;
        let found = matches!(outcome, DfsOutcome::Found);
        log.runs.push(OrderLog {
            order,
            levels: dfs.levels.clone(),
            total_nodes: dfs.nodes,
            admits_good_colouring: found,
        });
        match outcome {
            DfsOutcome::OutOfBudget => {
                return Err(OracleError::NodeBudgetExceeded { nodes: nodes_used, at_order: order });
            }
            DfsOutcome::Found => {
                let col = colouring_from_assignment(order, r, &dfs.edges, &dfs.assignment);
                witness = Some(external_certificate(s, k, col));
            }
            DfsOutcome::Exhausted => {
                return Ok(ExactRamseyResult {
                    r,
                    s,
                    k,
                    value: order,
                    exhaustive_upper_proof: true,
                    witness,
                    log,
                });
            }
        }
    }
    Err(OracleError::CapExceeded {
        cap,
        witness: Box::new(witness.expect("every completed order stored a witness")),
        log,
    })
}

/// Human-readable account of an exact search, one line per order.
pub fn render_proof_log(log: &SearchLog) -> String {
    let mut out = String::new();
    for run in &log.runs {
        if run.admits_good_colouring {
            out.push_str(&format!(
                "order {}: found an assignment with no shared-colour clique after {} candidates\n",
                run.order, run.total_nodes,
            ));
        } else {
            out.push_str(&format!(
                "order {}: exhausted every assignment after {} candidates; a shared-colour clique is forced\n",
                run.order, run.total_nodes,
            ));
        }
        for (depth, level) in run.levels.iter().enumerate() {
            out.push_str(&format!(
                "  edge slot {depth}: tried {}, rejected {}\n",
                level.tried, level.rejected,
            ));
        }
    }
    out
}
