//! Measurable statistics on build artifacts.
//!
//! Everything here watches one small subgraph at a time: fix a set of k
//! vertices and t of the pairs between them, then ask how the per-colour
//! partition maps treat it. A vertex "collides" under a map when some
//! vertex earlier in the fixed degree order lands on the same part; the
//! degree-weighted total of collisions over all colours is the headline
//! number, and bucketing vertices by degree localises where that mass
//! sits. For pairs whose endpoints are collision-free in a colour, map
//! injectivity means distinct pairs occupy distinct seed-graph slots, so
//! the count of such pairs missing their seed edge follows a binomial law
//! with the seed graph's miss probability. The routines report all of
//! these exactly; expectations for cross-checking are computed in closed
//! form.

use std::collections::HashSet;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::construction::{BuiltColouring, PartitionMap};
use crate::rng::{self, StreamPurpose};
use crate::verifier;
use crate::Rational;

#[derive(Debug, PartialEq, Eq)]
pub enum SubgraphError {
    NoVertices,
    DuplicateVertex(u32),
    LoopEdge(u32),
    DuplicateEdge(u32, u32),
    EdgeOutsideVertexSet(u32, u32),
    /// More edges requested than distinct pairs exist.
    TooManyEdges { requested: u64, available: u64 },
    NotEnoughVertices { requested: u32, available: u32 },
}

impl fmt::Display for SubgraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgraphError::NoVertices => write!(f, "a subgraph needs at least one vertex"),
            SubgraphError::DuplicateVertex(v) => write!(f, "vertex {v} listed twice"),
            SubgraphError::LoopEdge(v) => write!(f, "loop edge at vertex {v}"),
            SubgraphError::DuplicateEdge(u, v) => write!(f, "edge ({u}, {v}) listed twice"),
            SubgraphError::EdgeOutsideVertexSet(u, v) => {
                write!(f, "edge ({u}, {v}) leaves the vertex set")
            }
            SubgraphError::TooManyEdges { requested, available } => {
                write!(f, "asked for {requested} edges but only {available} pairs exist")
            }
            SubgraphError::NotEnoughVertices { requested, available } => {
                write!(f, "asked for {requested} vertices out of {available}")
            }
        }
    }
}

impl std::error::Error for SubgraphError {}

/// A fixed small subgraph under observation: k vertex ids, t chosen pairs
/// between them, and the canonical processing order (degree descending,
/// id ascending) every statistic below refers to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subgraph {
    /// Sorted ascending.
    vertices: Vec<u32>,
    /// Normalised (u < v), sorted lexicographically.
    edges: Vec<(u32, u32)>,
    /// The vertices permuted so degrees never increase along it.
    degree_order: Vec<u32>,
    /// Degree of `vertices[idx]` within the subgraph.
    degrees: Vec<u32>,
}

impl Subgraph {
    pub fn new(mut vertices: Vec<u32>, edges: Vec<(u32, u32)>) -> Result<Self, SubgraphError> {
        if vertices.is_empty() {
            return Err(SubgraphError::NoVertices);
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(SubgraphError::DuplicateVertex(w[0]));
        }
        let mut normalised: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(SubgraphError::LoopEdge(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            if vertices.binary_search(&u).is_err() || vertices.binary_search(&v).is_err() {
                return Err(SubgraphError::EdgeOutsideVertexSet(u, v));
            }
            normalised.push((u, v));
        }
        normalised.sort_unstable();
        if let Some(w) = normalised.windows(2).find(|w| w[0] == w[1]) {
            return Err(SubgraphError::DuplicateEdge(w[0].0, w[0].1));
        }

        let mut degrees = vec![0u32; vertices.len()];
        for &(u, v) in &normalised {
            degrees[vertices.binary_search(&u).unwrap()] += 1;
            degrees[vertices.binary_search(&v).unwrap()] += 1;
        }
        let mut degree_order = vertices.clone();
        degree_order.sort_by_key(|&v| {
            let idx = vertices.binary_search(&v).unwrap();
            (std::cmp::Reverse(degrees[idx]), v)
        });
        Ok(Subgraph { vertices, edges: normalised, degree_order, degrees })
    }

    /// Uniformly random observation target: k distinct vertices out of
    /// 0..n, then t distinct pairs among them.
    pub fn sample(
        rng: &mut impl rand_core::Rng,
        n: u32,
        k: u32,
        t: u64,
    ) -> Result<Self, SubgraphError> {
        if k > n {
            return Err(SubgraphError::NotEnoughVertices { requested: k, available: n });
        }
        if k == 0 {
            return Err(SubgraphError::NoVertices);
        }
        let pair_count = u64::from(k) * (u64::from(k) - 1) / 2;
        if t > pair_count {
            return Err(SubgraphError::TooManyEdges { requested: t, available: pair_count });
        }
        let vertices: Vec<u32> = rng::sample_distinct_sorted(rng, u64::from(n), u64::from(k))
            .into_iter()
            .map(|v| v as u32)
            .collect();
        let mut pairs = Vec::with_capacity(pair_count as usize);
        for i in 0..k as usize {
            for j in i + 1..k as usize {
                pairs.push((vertices[i], vertices[j]));
            }
        }
        let edges = rng::sample_distinct_sorted(rng, pair_count, t)
            .into_iter()
            .map(|idx| pairs[idx as usize])
            .collect();
        Self::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Vertices in processing order: degree descending, id ascending.
    pub fn degree_order(&self) -> &[u32] {
        &self.degree_order
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertices.len() as u32
    }

    pub fn edge_count(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn degree_of(&self, v: u32) -> u32 {
        self.degrees[self.vertices.binary_search(&v).expect("vertex not in subgraph")]
    }

    /// Number of vertices preceding v in the processing order.
    pub fn rank_of(&self, v: u32) -> u32 {
        self.degree_order
            .iter()
            .position(|&w| w == v)
            .expect("vertex not in subgraph") as u32
    }
}

/// Number of degree buckets for a target clique order k: bucket j
/// (1-indexed) holds degrees in [k/2^j, k/2^(j-1)), so every degree in
/// 1..k lands in exactly one of ceil(log2 k) buckets.
pub fn bucket_count(k: u32) -> u32 {
    assert!(k >= 2, "bucketing needs k >= 2");
    u32::from(!k.is_power_of_two()) + k.ilog2()
}

/// The bucket (1-indexed) a degree falls into, or None for degree 0 or
/// degrees at or above k.
pub fn bucket_of(degree: u32, k: u32) -> Option<u32> {
    if degree == 0 || degree >= k {
        return None;
    }
    let (d, k) = (u64::from(degree), u64::from(k));
    (1..=bucket_count(k as u32)).find(|&j| d << j >= k && d << (j - 1) < k)
}

/// Everything the collision analysis of one subgraph produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterDiagnostics {
    /// Per colour: the vertices that land on a part already taken by an
    /// earlier vertex in the processing order. Sorted ascending.
    pub collided_per_colour: Vec<Vec<u32>>,
    /// Sum over colours and collided vertices of the vertex degree.
    pub collision_weight: u64,
    /// Bucket j-1 holds the vertices with degree in [k/2^j, k/2^(j-1)).
    pub degree_buckets: Vec<Vec<u32>>,
    /// Per bucket: collided vertices in it, summed over colours.
    pub bucket_collision_counts: Vec<u64>,
    /// Least 1-indexed bucket whose collision count exceeds
    /// delta * eps * r * (number of vertices in buckets up to it).
    pub bottleneck_level: Option<u32>,
    /// Vertices in buckets 1..=bottleneck_level, when one exists.
    pub bottleneck_prefix_size: Option<u64>,
}

/// Run the collision analysis of `subgraph` against one partition map per
/// colour. The clique order that shapes the buckets is the subgraph's own
/// vertex count. `slack` and `colour_surplus` (the delta and (r-s)/r of
/// the surrounding build) only locate the bottleneck level; every other
/// field is independent of them.
pub fn compute_cluster_diagnostics(
    subgraph: &Subgraph,
    partitions: &[PartitionMap],
    slack: &Rational,
    colour_surplus: &Rational,
) -> ClusterDiagnostics {
    assert!(!partitions.is_empty(), "need at least one colour");
    let n = partitions[0].n();
    assert!(
        partitions.iter().all(|p| p.n() == n && p.part_count() == partitions[0].part_count()),
        "partition maps must share n and part count",
    );
    assert!(
        subgraph.vertices().last().is_none_or(|&v| v < n),
        "subgraph vertices must lie inside the build's vertex range",
    );

    let k = subgraph.vertex_count();
    let r = partitions.len() as u32;
    let buckets = if k >= 2 { bucket_count(k) } else { 0 };

    let mut degree_buckets = vec![Vec::new(); buckets as usize];
    for &v in subgraph.vertices() {
        if let Some(j) = bucket_of(subgraph.degree_of(v), k) {
            degree_buckets[j as usize - 1].push(v);
        }
    }

    let mut collided_per_colour = Vec::with_capacity(r as usize);
    let mut collision_weight = 0u64;
    let mut bucket_collision_counts = vec![0u64; buckets as usize];
    for phi in partitions {
        let mut seen = HashSet::new();
        let mut collided = Vec::new();
        for &v in subgraph.degree_order() {
            if !seen.insert(phi.part_of(v)) {
                collided.push(v);
                collision_weight += u64::from(subgraph.degree_of(v));
                if let Some(j) = bucket_of(subgraph.degree_of(v), k) {
                    bucket_collision_counts[j as usize - 1] += 1;
                }
            }
        }
        collided.sort_unstable();
        collided_per_colour.push(collided);
    }

    let threshold_base = slack * colour_surplus * Rational::from_integer(r.into());
    let mut bottleneck_level = None;
    let mut bottleneck_prefix_size = None;
    let mut prefix = 0u64;
    for j in 1..=buckets {
        prefix += degree_buckets[j as usize - 1].len() as u64;
        let lhs = Rational::from_integer(bucket_collision_counts[j as usize - 1].into());
        if lhs > &threshold_base * Rational::from_integer(prefix.into()) {
            bottleneck_level = Some(j);
            bottleneck_prefix_size = Some(prefix);
            break;
        }
    }

    ClusterDiagnostics {
        collided_per_colour,
        collision_weight,
        degree_buckets,
        bucket_collision_counts,
        bottleneck_level,
        bottleneck_prefix_size,
    }
}

/// Exact expectation of `collision_weight` for independent uniform maps
/// onto `part_count` parts: a vertex with rank q in the processing order
/// collides with probability 1 - (1 - 1/m)^q, independently per colour,
/// so the weight has mean r * sum_v d(v) * (1 - (1 - 1/m)^rank(v)).
pub fn expected_collision_weight(subgraph: &Subgraph, part_count: u64, colours: u32) -> f64 {
    assert!(part_count >= 1);
    let miss = 1.0 - 1.0 / part_count as f64;
    let per_colour: f64 = subgraph
        .vertices()
        .iter()
        .map(|&v| {
            let rank = subgraph.rank_of(v);
            f64::from(subgraph.degree_of(v)) * (1.0 - miss.powi(rank as i32))
        })
        .sum();
    f64::from(colours) * per_colour
}

/// Counts over the subgraph's (edge, colour) pairs: how many have both
/// endpoints collision-free in that colour, and how many of those lack
/// the corresponding seed-graph edge. Collision-free endpoints occupy
/// distinct parts (a shared part would collide the later one), and no two
/// such edges of one colour occupy the same part pair, so each pair in
/// the first count queries a distinct independent seed-graph slot: the
/// second count is binomial over the first with the seed graph's miss
/// probability.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPairStats {
    pub collision_free_pairs: u64,
    pub absent_edge_pairs: u64,
}

pub fn compute_bad_pair_stats(subgraph: &Subgraph, built: &BuiltColouring) -> BadPairStats {
    let r = built.artifacts.r();
    assert!(
        subgraph.vertices().last().is_none_or(|&v| v < built.artifacts.n()),
        "subgraph vertices must lie inside the build's vertex range",
    );
    let mut stats = BadPairStats::default();
    for colour in 0..r {
        let phi = &built.artifacts.partitions[colour as usize];
        let mut seen = HashSet::new();
        let mut collided = HashSet::new();
        for &v in subgraph.degree_order() {
            if !seen.insert(phi.part_of(v)) {
                collided.insert(v);
            }
        }
        for &(u, v) in subgraph.edges() {
            if collided.contains(&u) || collided.contains(&v) {
                continue;
            }
            stats.collision_free_pairs += 1;
            if !built.artifacts.pre_repair_has(colour, u, v) {
                stats.absent_edge_pairs += 1;
            }
        }
    }
    debug_assert!(stats.absent_edge_pairs <= stats.collision_free_pairs);
    stats
}

/// Largest number of repaired pairs inside any of `samples` uniformly
/// random k-vertex subsets, reported so it can sit next to the budget the
/// analysis allows per clique.
pub fn max_bad_edges_over_sampled_cliques(
    built: &BuiltColouring,
    k: u32,
    samples: u32,
    rng_seed: u64,
) -> u64 {
    assert!(samples >= 1, "need at least one sample");
    let n = built.colouring.n();
    assert!(k <= n, "cannot sample {k} vertices out of {n}");
    let mut rng = rng::stream(rng_seed, 0, StreamPurpose::Sampling);
    let mut worst = 0u64;
    for _ in 0..samples {
        let subset: Vec<u32> = rng::sample_distinct_sorted(&mut rng, u64::from(n), u64::from(k))
            .into_iter()
            .map(|v| v as u32)
            .collect();
        worst = worst.max(verifier::count_bad_edges_in_set(&subset, &built.repaired_edges));
    }
    worst
}

/// Rational value of sum_j |bucket_j| / 2^j, for exact identity checks.
pub fn bucket_weight_sum(diag: &ClusterDiagnostics) -> Rational {
    let mut total = Rational::from_integer(0.into());
    for (idx, bucket) in diag.degree_buckets.iter().enumerate() {
        total += Rational::new((bucket.len() as u64).into(), (1u64 << (idx + 1)).into());
    }
    total
}

/// f64 view of a rational, for report fields only.
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{
        build_main_colouring, sample_artifacts, BlowupArtifacts, SeedGraph,
    };
    use crate::params::{default_delta, derive_params, override_params};
    use crate::ratio::from_frac;

    fn triangle() -> Subgraph {
        Subgraph::new(vec![0, 1, 2], vec![(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn constant_partitions(r: u32, n: u32) -> Vec<PartitionMap> {
        (0..r).map(|_| PartitionMap::from_assignment(1, vec![0; n as usize])).collect()
    }

    #[test]
    fn validation_rejects_malformed_subgraphs() {
        assert_eq!(Subgraph::new(vec![], vec![]), Err(SubgraphError::NoVertices));
        assert_eq!(
            Subgraph::new(vec![1, 1], vec![]),
            Err(SubgraphError::DuplicateVertex(1)),
        );
        assert_eq!(
            Subgraph::new(vec![0, 1], vec![(0, 0)]),
            Err(SubgraphError::LoopEdge(0)),
        );
        assert_eq!(
            Subgraph::new(vec![0, 1], vec![(0, 1), (1, 0)]),
            Err(SubgraphError::DuplicateEdge(0, 1)),
        );
        assert_eq!(
            Subgraph::new(vec![0, 1], vec![(0, 2)]),
            Err(SubgraphError::EdgeOutsideVertexSet(0, 2)),
        );
    }

    #[test]
    fn processing_order_sorts_by_degree_then_id() {
        let path = Subgraph::new(vec![5, 3, 9], vec![(3, 5), (5, 9)]).unwrap();
        assert_eq!(path.degree_order(), &[5, 3, 9]);
        assert_eq!(path.rank_of(5), 0);
        assert_eq!(path.rank_of(9), 2);
        // Equal degrees fall back to id order.
        assert_eq!(triangle().degree_order(), &[0, 1, 2]);
    }

    #[test]
    fn one_part_collides_everything_after_the_first_vertex() {
        let diag = compute_cluster_diagnostics(
            &triangle(),
            &constant_partitions(5, 3),
            &default_delta(),
            &from_frac(1, 2),
        );
        for collided in &diag.collided_per_colour {
            assert_eq!(collided, &vec![1, 2]);
        }
        assert_eq!(diag.collision_weight, 5 * 4);
    }

    #[test]
    fn injective_maps_collide_nothing() {
        let partitions: Vec<PartitionMap> =
            (0..4).map(|_| PartitionMap::from_assignment(7, vec![2, 4, 6])).collect();
        let diag = compute_cluster_diagnostics(
            &triangle(),
            &partitions,
            &default_delta(),
            &from_frac(1, 2),
        );
        assert_eq!(diag.collision_weight, 0);
        assert!(diag.collided_per_colour.iter().all(|c| c.is_empty()));
        assert_eq!(diag.bottleneck_level, None);
        assert_eq!(diag.bottleneck_prefix_size, None);
    }

    #[test]
    fn buckets_partition_positive_degrees() {
        assert_eq!(bucket_count(2), 1);
        assert_eq!(bucket_count(3), 2);
        assert_eq!(bucket_count(8), 3);
        assert_eq!(bucket_count(9), 4);
        for k in 2..40 {
            for d in 1..k {
                let j = bucket_of(d, k).unwrap();
                // Exactly one bucket test passes.
                let hits = (1..=bucket_count(k))
                    .filter(|&jj| {
                        let (d, k) = (u64::from(d), u64::from(k));
                        d << jj >= k && d << (jj - 1) < k
                    })
                    .count();
                assert_eq!(hits, 1, "degree {d}, order {k}, bucket {j}");
            }
            assert_eq!(bucket_of(0, k), None);
            assert_eq!(bucket_of(k, k), None);
        }
    }

    #[test]
    fn bucket_weight_sum_is_bounded_by_average_degree() {
        // For every subgraph, sum_j |A_j| / 2^j <= (sum_v d(v)) / k.
        let mut rng = rng::stream(3, 0, StreamPurpose::Sampling);
        for _ in 0..50 {
            let sub = Subgraph::sample(&mut rng, 30, 6, 9).unwrap();
            let diag = compute_cluster_diagnostics(
                &sub,
                &constant_partitions(2, 30),
                &default_delta(),
                &from_frac(1, 2),
            );
            let degree_total: u64 =
                sub.vertices().iter().map(|&v| u64::from(sub.degree_of(v))).sum();
            let avg = Rational::new(degree_total.into(), u64::from(sub.vertex_count()).into());
            assert!(bucket_weight_sum(&diag) <= avg);
        }
    }

    #[test]
    fn forced_collisions_trip_the_bottleneck_detector() {
        // Complete graph on 4 vertices, one part: every colour collides
        // three vertices of degree 3, all in bucket 1.
        let full = Subgraph::new(
            vec![0, 1, 2, 3],
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        let diag = compute_cluster_diagnostics(
            &full,
            &constant_partitions(6, 4),
            &default_delta(),
            &from_frac(1, 2),
        );
        assert_eq!(diag.bucket_collision_counts, vec![18, 0]);
        // 18 > delta * eps * r * 4 = (1/32)(1/2)(6)(4) = 3/8.
        assert_eq!(diag.bottleneck_level, Some(1));
        assert_eq!(diag.bottleneck_prefix_size, Some(4));
    }

    #[test]
    fn expected_weight_is_exact_in_the_degenerate_cases() {
        let sub = triangle();
        // One part: every vertex past the first collides surely.
        let certain = expected_collision_weight(&sub, 1, 5);
        assert!((certain - 20.0).abs() < 1e-9);
        // Huge part count: collisions vanish.
        let vanishing = expected_collision_weight(&sub, 1 << 40, 5);
        assert!(vanishing < 1e-6);
    }

    #[test]
    fn collision_free_pairs_query_distinct_seed_slots() {
        // Two colours on 4 vertices. First map separates everything;
        // second map collides vertices 2 and 3 (3 comes later in the
        // processing order of the path below).
        let seeds = vec![
            {
                let mut g = SeedGraph::empty(4);
                g.add_edge(0, 1);
                g.add_edge(1, 2);
                g
            },
            SeedGraph::complete(4),
        ];
        let partitions = vec![
            PartitionMap::from_assignment(4, vec![0, 1, 2, 3]),
            PartitionMap::from_assignment(4, vec![0, 1, 2, 2]),
        ];
        let artifacts = BlowupArtifacts { seeds, partitions };
        let colouring = crate::construction::assemble_colouring(&artifacts);
        let built = BuiltColouring { colouring, repaired_edges: vec![], artifacts };
        let sub = Subgraph::new(vec![0, 1, 2, 3], vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let stats = compute_bad_pair_stats(&sub, &built);
        // Colour 0: all three edges are collision-free; (0,1) and (1,2)
        // have seed edges, (2,3) does not. Colour 1: vertex 3 collides,
        // so only (0,1) and (1,2) count, both present in a complete seed.
        assert_eq!(stats.collision_free_pairs, 5);
        assert_eq!(stats.absent_edge_pairs, 1);
    }

    #[test]
    fn full_seed_graphs_never_miss() {
        let params = {
            let base = derive_params(5, 2, 6, &default_delta()).unwrap();
            override_params(&base, Some(16), Some(20), Some(from_frac(1, 1))).unwrap()
        };
        let built = build_main_colouring(&params, 21).unwrap();
        let mut rng = rng::stream(4, 0, StreamPurpose::Sampling);
        for _ in 0..20 {
            let sub = Subgraph::sample(&mut rng, 20, 6, 9).unwrap();
            let stats = compute_bad_pair_stats(&sub, &built);
            assert_eq!(stats.absent_edge_pairs, 0, "p=1 means every slot is an edge");
        }
    }

    #[test]
    fn one_part_maps_leave_no_collision_free_pairs() {
        let artifacts = sample_artifacts(3, 10, 1, &from_frac(1, 2), 9).unwrap();
        let colouring = crate::construction::assemble_colouring(&artifacts);
        let built = BuiltColouring { colouring, repaired_edges: vec![], artifacts };
        let mut rng = rng::stream(5, 0, StreamPurpose::Sampling);
        let sub = Subgraph::sample(&mut rng, 10, 5, 7).unwrap();
        let stats = compute_bad_pair_stats(&sub, &built);
        assert_eq!(stats, BadPairStats { collision_free_pairs: 0, absent_edge_pairs: 0 });
    }

    #[test]
    fn sampled_subsets_bound_bad_edge_exposure() {
        let params = {
            let base = derive_params(4, 2, 5, &default_delta()).unwrap();
            override_params(&base, Some(8), Some(16), Some(from_frac(1, 2))).unwrap()
        };
        let built = build_main_colouring(&params, 3).unwrap();
        let worst = max_bad_edges_over_sampled_cliques(&built, 5, 200, 17);
        assert!(worst <= 10, "at most C(5,2) bad pairs fit in a 5-set");

        // All pairs repaired: every sampled 5-set contains exactly C(5,2).
        let all_pairs: Vec<(u32, u32)> = built
            .colouring
            .edges()
            .collect();
        let saturated = BuiltColouring {
            colouring: built.colouring.clone(),
            repaired_edges: all_pairs,
            artifacts: built.artifacts.clone(),
        };
        assert_eq!(max_bad_edges_over_sampled_cliques(&saturated, 5, 50, 17), 10);

        let clean = BuiltColouring {
            colouring: built.colouring.clone(),
            repaired_edges: vec![],
            artifacts: built.artifacts.clone(),
        };
        assert_eq!(max_bad_edges_over_sampled_cliques(&clean, 5, 50, 17), 0);
    }

    #[test]
    fn sampling_respects_requested_sizes() {
        let mut rng = rng::stream(8, 0, StreamPurpose::Sampling);
        let sub = Subgraph::sample(&mut rng, 40, 7, 11).unwrap();
        assert_eq!(sub.vertex_count(), 7);
        assert_eq!(sub.edge_count(), 11);
        assert!(sub.vertices().iter().all(|&v| v < 40));
        assert_eq!(
            Subgraph::sample(&mut rng, 40, 5, 11),
            Err(SubgraphError::TooManyEdges { requested: 11, available: 10 }),
        );
        assert_eq!(
            Subgraph::sample(&mut rng, 4, 5, 1),
            Err(SubgraphError::NotEnoughVertices { requested: 5, available: 4 }),
        );
    }
}
