//! Exact verification: per-edge colour minimums and monochromatic-clique
//! search over the colour class graphs.
//!
//! The clique search is an exact branch and bound over bitset adjacency
//! rows. Vertices are expanded along a fixed deterministic order (degeneracy
//! order at the root, ascending index inside), and candidate sets are pruned
//! with a greedy colouring bound, so the same input always yields the same
//! witness regardless of thread count.

use std::error::Error;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::colouring::SetColouring;

/// One colour's graph: vertex set of the host, bitset adjacency rows.
#[derive(Clone, PartialEq, Eq)]
pub struct ColourClassGraph {
    colour_index: u32,
    n: u32,
    words_per_row: usize,
    rows: Vec<u64>,
}

impl ColourClassGraph {
    pub fn empty(n: u32, colour_index: u32) -> Self {
        let words_per_row = (n as usize).div_ceil(64).max(1);
        ColourClassGraph {
            colour_index,
            n,
            words_per_row,
            rows: vec![0u64; n as usize * words_per_row],
        }
    }

    /// The graph of one colour of a set colouring.
    pub fn from_colouring(c: &SetColouring, colour: u32) -> Self {
        let mut g = ColourClassGraph::empty(c.n(), colour);
        for (u, v) in c.edges() {
            if c.has_colour(u, v, colour) {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn colour_index(&self) -> u32 {
        self.colour_index
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn add_edge(&mut self, u: u32, v: u32) {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u}, {v})");
        let w = self.words_per_row;
        self.rows[u as usize * w + (v / 64) as usize] |= 1u64 << (v % 64);
        self.rows[v as usize * w + (u / 64) as usize] |= 1u64 << (u % 64);
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let w = self.words_per_row;
        self.rows[u as usize * w + (v / 64) as usize] >> (v % 64) & 1 == 1
    }

    pub fn row(&self, u: u32) -> &[u64] {
        let w = self.words_per_row;
        &self.rows[u as usize * w..(u as usize + 1) * w]
    }

    pub fn degree(&self, u: u32) -> u32 {
        self.row(u).iter().map(|w| w.count_ones()).sum()
    }

    pub fn edge_count(&self) -> u64 {
        let total: u64 = (0..self.n).map(|u| self.degree(u) as u64).sum();
        total / 2
    }
}

impl fmt::Debug for ColourClassGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ColourClassGraph(colour={}, n={}, edges={})",
            self.colour_index,
            self.n,
            self.edge_count()
        )
    }
}

/// A clique all of whose edges carry `colour_index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueWitness {
    pub colour_index: u32,
    /// Sorted ascending.
    pub vertices: Vec<u32>,
}

impl CliqueWitness {
    /// Re-checks the witness against raw masks.
    pub fn check(&self, c: &SetColouring) -> bool {
        self.vertices.windows(2).all(|w| w[0] < w[1])
            && self.vertices.iter().all(|&v| v < c.n())
            && pairs(&self.vertices).all(|(u, v)| c.has_colour(u, v, self.colour_index))
    }
}

fn pairs(vs: &[u32]) -> impl Iterator<Item = (u32, u32)> + '_ {
    vs.iter()
        .enumerate()
        .flat_map(move |(i, &u)| vs[i + 1..].iter().map(move |&v| (u, v)))
}

/// Full verification outcome.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub min_colour_ok: bool,
    /// (u, v, colour count) for edges below the minimum, lexicographic.
    pub violating_edges: Vec<(u32, u32, u32)>,
    pub clique_free: bool,
    pub witness: Option<CliqueWitness>,
    /// Exact clique number per colour, when requested.
    pub per_colour_clique_numbers: Option<Vec<u32>>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn valid(&self) -> bool {
        self.min_colour_ok && self.clique_free
    }
}

/// Edges carrying fewer than `s` colours, as (u, v, count) in edge order.
pub fn check_min_colours(c: &SetColouring, s: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for (u, v) in c.edges() {
        let count = c.colour_count(u, v);
        if count < s {
            out.push((u, v, count));
        }
    }
    out
}

/// First monochromatic K_k by colour index, or None if every colour class is
/// K_k-free. Colour classes are searched in increasing colour index and the
/// first witness cancels the rest; the result never depends on thread count.
pub fn find_monochromatic_clique(c: &SetColouring, k: u32) -> Option<CliqueWitness> {
    assert!(k >= 2, "clique order must be at least 2");
    let witness = (0..c.r())
        .into_par_iter()
        .find_map_first(|colour| {
            let g = ColourClassGraph::from_colouring(c, colour);
            clique::find_of_size(&g, k).map(|vertices| CliqueWitness {
                colour_index: colour,
                vertices,
            })
        });
    if let Some(w) = &witness {
        debug_assert!(w.check(c), "witness failed mask re-check");
    }
    witness
}

/// Exact clique number of every colour class.
pub fn per_colour_clique_numbers(c: &SetColouring) -> Vec<u32> {
    (0..c.r())
        .into_par_iter()
        .map(|colour| {
            let g = ColourClassGraph::from_colouring(c, colour);
            clique::maximum(&g).0
        })
        .collect()
}

/// The colour class with the most edges; ties go to the lowest colour.
pub fn densest_colour_class(c: &SetColouring) -> ColourClassGraph {
    let mut best: Option<(u64, ColourClassGraph)> = None;
    for colour in 0..c.r() {
        let g = ColourClassGraph::from_colouring(c, colour);
        let e = g.edge_count();
        match &best {
            Some((be, _)) if *be >= e => {}
            _ => best = Some((e, g)),
        }
    }
    best.expect("palette is non-empty").1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuranThresholdError {
    pub edges: u64,
    pub n: u32,
    pub k: u32,
}

impl fmt::Display for TuranThresholdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "edge count {} of a graph on {} vertices does not exceed the K_{}-free maximum \
             (1 - 1/{})*{}^2/2",
            self.edges,
            self.n,
            self.k,
            self.k - 1,
            self.n
        )
    }
}

impl Error for TuranThresholdError {}

/// Extracts a K_k from a graph dense enough that one must exist: requires
/// edges > (1 - 1/(k-1)) * n^2 / 2, decided in exact integer arithmetic.
pub fn turan_extract_clique(g: &ColourClassGraph, k: u32) -> Result<CliqueWitness, TuranThresholdError> {
    assert!(k >= 2, "clique order must be at least 2");
    let e = g.edge_count();
    let n = g.n() as u128;
    // edges > (1 - 1/(k-1)) n^2/2  <=>  2 e (k-1) > (k-2) n^2
    if 2 * e as u128 * (k as u128 - 1) <= (k as u128 - 2) * n * n {
        return Err(TuranThresholdError {
            edges: e,
            n: g.n(),
            k,
        });
    }
    let vertices = clique::find_of_size(g, k)
        .expect("a graph above the threshold contains K_k");
    Ok(CliqueWitness {
        colour_index: g.colour_index(),
        vertices,
    })
}

/// Number of pairs from `vertices` present in the sorted edge list `bad`.
pub fn count_bad_edges_in_set(vertices: &[u32], bad: &[(u32, u32)]) -> u64 {
    debug_assert!(bad.windows(2).all(|w| w[0] < w[1]), "bad edges not sorted");
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut count = 0;
    for (i, &u) in sorted.iter().enumerate() {
        for &v in &sorted[i + 1..] {
            if bad.binary_search(&(u, v)).is_ok() {
                count += 1;
            }
        }
    }
    count
}

/// Checks the per-edge colour minimum and searches for a monochromatic K_k.
pub fn verify(c: &SetColouring, s: u32, k: u32) -> VerificationReport {
    verify_with(c, s, k, false)
}

/// As `verify`, optionally computing every colour's exact clique number.
pub fn verify_with(c: &SetColouring, s: u32, k: u32, clique_numbers: bool) -> VerificationReport {
    assert!(s <= c.r(), "minimum {s} exceeds palette {}", c.r());
    let start = Instant::now();
    let violating_edges = check_min_colours(c, s);
    let witness = find_monochromatic_clique(c, k);
    let per_colour = clique_numbers.then(|| per_colour_clique_numbers(c));
    VerificationReport {
        min_colour_ok: violating_edges.is_empty(),
        violating_edges,
        clique_free: witness.is_none(),
        witness,
        per_colour_clique_numbers: per_colour,
        elapsed: start.elapsed(),
    }
}

/// Exact clique search over bitset rows.
pub(crate) mod clique {
    use super::ColourClassGraph;

    fn popcount(words: &[u64]) -> u32 {
        words.iter().map(|w| w.count_ones()).sum()
    }

    fn bits_ascending(words: &[u64]) -> impl Iterator<Item = u32> + '_ {
        words.iter().enumerate().flat_map(|(i, &w)| {
            std::iter::successors(Some(w), |&w| w.checked_sub(1).map(|m| w & m))
                .take_while(|&w| w != 0)
                .map(move |w| i as u32 * 64 + w.trailing_zeros())
        })
    }

    fn first_bit(words: &[u64]) -> Option<u32> {
        words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i as u32 * 64 + w.trailing_zeros())
    }

    /// Strip-minimum-degree order; ties go to the lowest vertex id.
    pub fn degeneracy_order(g: &ColourClassGraph) -> Vec<u32> {
        let n = g.n() as usize;
        let mut degree: Vec<i64> = (0..n as u32).map(|u| g.degree(u) as i64).collect();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (degree[v], v))
                .expect("vertices remain");
            removed[v] = true;
            order.push(v as u32);
            for u in bits_ascending(g.row(v as u32)) {
                degree[u as usize] -= 1;
            }
        }
        order
    }

    /// Greedy colouring class count of the candidate set: an upper bound on
    /// its clique number.
    fn colour_bound(g: &ColourClassGraph, cand: &[u64]) -> u32 {
        let mut uncoloured = cand.to_vec();
        let mut classes = 0;
        let mut avail = vec![0u64; cand.len()];
        while popcount(&uncoloured) > 0 {
            classes += 1;
            avail.copy_from_slice(&uncoloured);
            // one independent set: repeatedly take the lowest vertex and
            // drop its neighbours from what can still join the class
            while let Some(v) = first_bit(&avail) {
                let wi = (v / 64) as usize;
                avail[wi] &= !(1u64 << (v % 64));
                uncoloured[wi] &= !(1u64 << (v % 64));
                for (a, r) in avail.iter_mut().zip(g.row(v)) {
                    *a &= !r;
                }
            }
        }
        classes
    }

    struct Search<'a> {
        g: &'a ColourClassGraph,
        /// Some(k): stop at the first clique of size k. None: exact maximum.
        target: Option<u32>,
        best_size: u32,
        best: Vec<u32>,
        clique: Vec<u32>,
        done: bool,
    }

    impl Search<'_> {
        /// Smallest clique size that would still be recorded.
        fn goal(&self) -> u32 {
            match self.target {
                Some(k) => k,
                None => self.best_size + 1,
            }
        }

        fn record(&mut self) {
            let size = self.clique.len() as u32;
            if size >= self.goal() {
                self.best_size = size;
                self.best = self.clique.clone();
                self.best.sort_unstable();
                if self.target.is_some() {
                    self.done = true;
                }
            }
        }

        fn expand(&mut self, cand: &[u64]) {
            if self.done {
                return;
            }
            let size = self.clique.len() as u32;
            if let Some(k) = self.target {
                if size >= k {
                    self.record();
                    return;
                }
            }
            let csize = popcount(cand);
            if size + csize < self.goal() {
                return;
            }
            if csize == 0 {
                // maximal along this branch; an improvement in maximum mode
                self.record();
                return;
            }
            if size + colour_bound(self.g, cand) < self.goal() {
                return;
            }
            let mut rest = cand.to_vec();
            let vs: Vec<u32> = bits_ascending(cand).collect();
            for v in vs {
                if self.done {
                    return;
                }
                if size + popcount(&rest) < self.goal() {
                    return;
                }
                rest[(v / 64) as usize] &= !(1u64 << (v % 64));
                let next: Vec<u64> = rest.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
                self.clique.push(v);
                self.expand(&next);
                self.clique.pop();
            }
        }

        fn run(mut self) -> (u32, Vec<u32>) {
            let order = degeneracy_order(self.g);
            let words = (self.g.n() as usize).div_ceil(64).max(1);
            // all vertices still unprocessed; candidates for a root v are its
            // neighbours strictly later in the degeneracy order
            let mut remaining = vec![u64::MAX; words];
            for &v in &order {
                if self.done {
                    break;
                }
                remaining[(v / 64) as usize] &= !(1u64 << (v % 64));
                let cand: Vec<u64> =
                    remaining.iter().zip(self.g.row(v)).map(|(a, b)| a & b).collect();
                self.clique.push(v);
                self.expand(&cand);
                self.clique.pop();
            }
            (self.best_size, self.best)
        }
    }

    /// First clique of exactly `k` vertices along the deterministic search
    /// order, or None (exact: None proves the graph is K_k-free).
    pub fn find_of_size(g: &ColourClassGraph, k: u32) -> Option<Vec<u32>> {
        if k > g.n() {
            return None;
        }
        let search = Search {
            g,
            target: Some(k),
            best_size: 0,
            best: Vec::new(),
            clique: Vec::new(),
            done: false,
        };
        let (size, best) = search.run();
        (size >= k).then_some(best)
    }

    /// Exact maximum clique: (size, witness). The empty graph on zero
    /// vertices yields (0, []).
    pub fn maximum(g: &ColourClassGraph) -> (u32, Vec<u32>) {
        let search = Search {
            g,
            target: None,
            best_size: 0,
            best: Vec::new(),
            clique: Vec::new(),
            done: false,
        };
        search.run()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> ColourClassGraph {
        let mut g = ColourClassGraph::empty(n, 0);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn full_colouring(n: u32, r: u32) -> SetColouring {
        let mut c = SetColouring::new(n, r);
        for u in 0..n {
            for v in u + 1..n {
                for i in 0..r {
                    c.set_colour(u, v, i);
                }
            }
        }
        c
    }

    #[test]
    fn clique_on_complete_graph_is_prefix() {
        let g = complete(6);
        assert_eq!(clique::find_of_size(&g, 4), Some(vec![0, 1, 2, 3]));
        assert_eq!(clique::maximum(&g), (6, vec![0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn clique_absent_in_sparse_graph() {
        let mut g = ColourClassGraph::empty(5, 0);
        // 5-cycle: triangle-free
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)] {
            g.add_edge(u, v);
        }
        assert_eq!(clique::find_of_size(&g, 3), None);
        assert_eq!(clique::maximum(&g).0, 2);
    }

    #[test]
    fn clique_in_multiword_graph() {
        // vertices beyond word 0 exercise multi-word candidate sets
        let mut g = ColourClassGraph::empty(70, 0);
        for &u in &[3u32, 65, 67, 69] {
            for &v in &[3u32, 65, 67, 69] {
                if u < v {
                    g.add_edge(u, v);
                }
            }
        }
        assert_eq!(clique::find_of_size(&g, 4), Some(vec![3, 65, 67, 69]));
        assert_eq!(clique::find_of_size(&g, 5), None);
    }

    #[test]
    fn full_masks_witness_lowest_colour_and_prefix() {
        let c = full_colouring(5, 3);
        let w = find_monochromatic_clique(&c, 3).unwrap();
        assert_eq!(w.colour_index, 0);
        assert_eq!(w.vertices, vec![0, 1, 2]);
        assert!(w.check(&c));
    }

    #[test]
    fn lowest_colour_with_any_witness_wins() {
        // colour 0 is a 5-cycle (triangle-free), colour 1 holds a triangle
        let mut c = SetColouring::new(5, 3);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)] {
            c.set_colour(u, v, 0);
        }
        for (u, v) in [(1, 3), (1, 4), (3, 4)] {
            c.set_colour(u, v, 1);
        }
        let w = find_monochromatic_clique(&c, 3).unwrap();
        assert_eq!(w.colour_index, 1);
        assert_eq!(w.vertices, vec![1, 3, 4]);
    }

    #[test]
    fn min_colours_lists_violations_in_edge_order() {
        let mut c = SetColouring::new(3, 4);
        c.set_colour(0, 1, 0);
        c.set_colour(0, 1, 2);
        c.set_colour(0, 2, 1);
        // (1,2) stays empty
        let v = check_min_colours(&c, 2);
        assert_eq!(v, vec![(0, 2, 1), (1, 2, 0)]);
        assert!(check_min_colours(&c, 0).is_empty());
    }

    #[test]
    fn verify_flags_both_failure_modes() {
        let c = full_colouring(4, 2);
        let report = verify(&c, 2, 3);
        assert!(report.min_colour_ok);
        assert!(!report.clique_free);
        assert!(!report.valid());
        let empty = SetColouring::new(4, 2);
        let report = verify(&empty, 1, 3);
        assert!(!report.min_colour_ok);
        assert_eq!(report.violating_edges.len(), 6);
        assert!(report.clique_free);
    }

    #[test]
    fn per_colour_numbers_are_exact() {
        let mut c = SetColouring::new(5, 2);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)] {
            c.set_colour(u, v, 0);
        }
        for (u, v) in [(0, 2), (0, 3), (2, 3)] {
            c.set_colour(u, v, 1);
        }
        assert_eq!(per_colour_clique_numbers(&c), vec![2, 3]);
        let report = verify_with(&c, 0, 4, true);
        assert_eq!(report.per_colour_clique_numbers, Some(vec![2, 3]));
        assert!(report.clique_free);
    }

    #[test]
    fn turan_threshold_is_strict() {
        // balanced complete 2-partite graph on 4 vertices sits exactly at the
        // K_3-free maximum, so extraction must refuse
        let mut g = ColourClassGraph::empty(4, 7);
        for (u, v) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            g.add_edge(u, v);
        }
        let err = turan_extract_clique(&g, 3).unwrap_err();
        assert_eq!(err.edges, 4);
        // one more edge pushes it over and a triangle appears
        g.add_edge(0, 1);
        let w = turan_extract_clique(&g, 3).unwrap();
        assert_eq!(w.vertices.len(), 3);
        assert_eq!(w.colour_index, 7);
        assert!(pairs_all_adjacent(&g, &w.vertices));
    }

    fn pairs_all_adjacent(g: &ColourClassGraph, vs: &[u32]) -> bool {
        vs.iter().enumerate().all(|(i, &u)| {
            vs[i + 1..].iter().all(|&v| g.has_edge(u, v))
        })
    }

    #[test]
    fn turan_on_complete_graph_returns_prefix() {
        let g = complete(5);
        let w = turan_extract_clique(&g, 5).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn bad_edge_counting_uses_binary_search() {
        let bad = vec![(0, 1), (0, 3), (2, 5)];
        assert_eq!(count_bad_edges_in_set(&[0, 1, 3], &bad), 2);
        assert_eq!(count_bad_edges_in_set(&[4, 5, 6], &bad), 0);
        assert_eq!(count_bad_edges_in_set(&[5, 2, 0], &bad), 1);
        assert_eq!(count_bad_edges_in_set(&[], &bad), 0);
    }

    #[test]
    fn densest_class_ties_go_low() {
        let mut c = SetColouring::new(4, 3);
        c.set_colour(0, 1, 1);
        c.set_colour(0, 1, 2);
        c.set_colour(2, 3, 2);
        let g = densest_colour_class(&c);
        assert_eq!(g.colour_index(), 2);
        let mut tie = SetColouring::new(4, 3);
        tie.set_colour(0, 1, 0);
        tie.set_colour(0, 1, 1);
        assert_eq!(densest_colour_class(&tie).colour_index(), 0);
    }
}
