//! Builders for the colourings this crate studies.
//!
//! The main builder keys every random choice to a (seed, colour, purpose)
//! stream, so a build is reproducible from its master seed alone and is
//! unaffected by thread count. Per colour it samples a small random seed
//! graph and a random map from the big vertex set onto the seed vertices,
//! colours a pair when its images are adjacent in the seed graph, and then
//! repairs pairs that ended up with too few colours by giving them every
//! colour whose map separates the pair.
//!
//! The simple builder is the special case of a complete seed graph on
//! k - 1 vertices: each colour class is a complete multipartite graph, so
//! it can never contain a clique on k vertices, whatever the maps do.

use std::fmt;

use rand_core::Rng;

use crate::certificate::{Certificate, ConstructionTag};
use crate::colouring::{self, SetColouring};
use crate::params::ConstructionParams;
use crate::rng::{self, StreamPurpose};
use crate::verifier;
use crate::Rational;

/// Largest seed graph this module will materialise.
pub const MAX_SEED_VERTICES: u64 = 4096;
/// Largest blown-up vertex set this module will materialise.
pub const MAX_VERTICES: u64 = 4096;
/// Largest palette this module will materialise.
pub const MAX_COLOURS: u64 = 4096;

#[derive(Debug, PartialEq, Eq)]
pub enum ConstructionError {
    SeedGraphTooLarge { m: u64 },
    TooManyVertices { n: u64 },
    TooManyColours { r: u64 },
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::SeedGraphTooLarge { m } => write!(
                f,
                "seed graphs on m={m} vertices exceed the materialisation cap {MAX_SEED_VERTICES}",
            ),
            ConstructionError::TooManyVertices { n } => {
                write!(f, "n={n} vertices exceed the materialisation cap {MAX_VERTICES}")
            }
            ConstructionError::TooManyColours { r } => {
                write!(f, "r={r} colours exceed the materialisation cap {MAX_COLOURS}")
            }
        }
    }
}

impl std::error::Error for ConstructionError {}

/// A map from the blown-up vertex set onto seed-graph vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionMap {
    part_count: u64,
    assignment: Vec<u64>,
}

impl PartitionMap {
    /// Assign each of `n` vertices an independent uniform part below `part_count`.
    pub fn sample(rng: &mut impl Rng, n: u32, part_count: u64) -> Self {
        assert!(part_count >= 1, "a partition needs at least one part");
        let assignment = (0..n).map(|_| rng::uniform_below(rng, part_count)).collect();
        PartitionMap { part_count, assignment }
    }

    /// Wrap a fixed assignment, mainly so tests can pin the maps.
    pub fn from_assignment(part_count: u64, assignment: Vec<u64>) -> Self {
        assert!(part_count >= 1, "a partition needs at least one part");
        assert!(
            assignment.iter().all(|&part| part < part_count),
            "assignment uses a part id outside 0..{part_count}",
        );
        PartitionMap { part_count, assignment }
    }

    pub fn part_count(&self) -> u64 {
        self.part_count
    }

    pub fn n(&self) -> u32 {
        self.assignment.len() as u32
    }

    pub fn part_of(&self, v: u32) -> u64 {
        self.assignment[v as usize]
    }

    /// True when the two vertices land on different seed vertices.
    pub fn separates(&self, u: u32, v: u32) -> bool {
        self.assignment[u as usize] != self.assignment[v as usize]
    }
}

/// Small undirected graph the blow-up is pulled back from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedGraph {
    m: u32,
    words: usize,
    rows: Vec<u64>,
}

impl SeedGraph {
    pub fn empty(m: u32) -> Self {
        let words = colouring::words_for(m.max(1));
        SeedGraph { m, words, rows: vec![0; words * m as usize] }
    }

    pub fn complete(m: u32) -> Self {
        let mut g = SeedGraph::empty(m);
        for a in 0..m {
            for b in a + 1..m {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// Include each pair independently with probability `p`, pairs visited
    /// in lexicographic order so one rng stream fixes the graph.
    pub fn sample(rng: &mut impl Rng, m: u32, p: &Rational) -> Self {
        let threshold = rng::bernoulli_threshold(p);
        let mut g = SeedGraph::empty(m);
        for a in 0..m {
            for b in a + 1..m {
                if rng::bernoulli(rng, threshold) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    pub fn vertex_count(&self) -> u32 {
        self.m
    }

    pub fn add_edge(&mut self, a: u32, b: u32) {
        assert!(a != b && a < self.m && b < self.m);
        colouring::mask_set(&mut self.rows[a as usize * self.words..][..self.words], b);
        colouring::mask_set(&mut self.rows[b as usize * self.words..][..self.words], a);
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        a != b
            && colouring::mask_test(&self.rows[a as usize * self.words..][..self.words], b)
    }

    pub fn edge_count(&self) -> u64 {
        let total: u64 = self
            .rows
            .chunks(self.words)
            .map(|row| u64::from(colouring::mask_popcount(row)))
            .sum();
        total / 2
    }
}

/// The per-colour random ingredients of one build, kept around so
/// diagnostics can ask how a given pair got (or lost) a given colour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupArtifacts {
    pub seeds: Vec<SeedGraph>,
    pub partitions: Vec<PartitionMap>,
}

impl BlowupArtifacts {
    pub fn r(&self) -> u32 {
        self.seeds.len() as u32
    }

    pub fn n(&self) -> u32 {
        self.partitions[0].n()
    }

    /// Pair (u, v) carries colour i before repair: its images under the
    /// i-th map are distinct and adjacent in the i-th seed graph.
    pub fn pre_repair_has(&self, i: u32, u: u32, v: u32) -> bool {
        let phi = &self.partitions[i as usize];
        let (a, b) = (phi.part_of(u), phi.part_of(v));
        a != b && self.seeds[i as usize].has_edge(a as u32, b as u32)
    }

    /// Pair (u, v) is separated by the i-th map; repair hands out exactly
    /// these colours, and every pre-repair colour is one of them.
    pub fn separates(&self, i: u32, u: u32, v: u32) -> bool {
        self.partitions[i as usize].separates(u, v)
    }

    /// Bitmask of colours whose map separates the pair.
    pub fn separating_mask(&self, u: u32, v: u32) -> Vec<u64> {
        let mut mask = vec![0u64; colouring::words_for(self.r())];
        for i in 0..self.r() {
            if self.separates(i, u, v) {
                colouring::mask_set(&mut mask, i);
            }
        }
        mask
    }
}

fn check_caps(r: u64, n: u64, m: u64) -> Result<(), ConstructionError> {
    if r > MAX_COLOURS {
        return Err(ConstructionError::TooManyColours { r });
    }
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooManyVertices { n });
    }
    if m > MAX_SEED_VERTICES {
        return Err(ConstructionError::SeedGraphTooLarge { m });
    }
    Ok(())
}

/// Draw the r seed graphs and r partition maps for one build. Each colour
/// reads its own keyed streams, so results do not depend on evaluation
/// order or thread count.
pub fn sample_artifacts(
    r: u32,
    n: u32,
    m: u64,
    p: &Rational,
    master_seed: u64,
) -> Result<BlowupArtifacts, ConstructionError> {
    check_caps(u64::from(r), u64::from(n), m)?;
    let mut seeds = Vec::with_capacity(r as usize);
    let mut partitions = Vec::with_capacity(r as usize);
    for colour in 0..r {
        let mut seed_rng = rng::stream(master_seed, colour, StreamPurpose::SeedGraph);
        seeds.push(SeedGraph::sample(&mut seed_rng, m as u32, p));
        let mut part_rng = rng::stream(master_seed, colour, StreamPurpose::Partition);
        partitions.push(PartitionMap::sample(&mut part_rng, n, m));
    }
    Ok(BlowupArtifacts { seeds, partitions })
}

/// Complete-seed variant: every colour uses the complete graph on
/// `part_count` vertices, only the partition maps are random.
pub fn sample_complete_artifacts(
    r: u32,
    n: u32,
    part_count: u64,
    master_seed: u64,
) -> Result<BlowupArtifacts, ConstructionError> {
    check_caps(u64::from(r), u64::from(n), part_count)?;
    let seed = SeedGraph::complete(part_count as u32);
    let mut partitions = Vec::with_capacity(r as usize);
    for colour in 0..r {
        let mut part_rng = rng::stream(master_seed, colour, StreamPurpose::Partition);
        partitions.push(PartitionMap::sample(&mut part_rng, n, part_count));
    }
    Ok(BlowupArtifacts { seeds: vec![seed; r as usize], partitions })
}

/// Pull the seed graphs back through the maps: colour i sits on (u, v)
/// exactly when the images are adjacent in the i-th seed graph.
pub fn assemble_colouring(artifacts: &BlowupArtifacts) -> SetColouring {
    let (r, n) = (artifacts.r(), artifacts.n());
    let mut col = SetColouring::new(n, r);
    for (u, v) in col.edges().collect::<Vec<_>>() {
        for i in 0..r {
            if artifacts.pre_repair_has(i, u, v) {
                col.set_colour(u, v, i);
            }
        }
    }
    col
}

/// Give every pair with fewer than `s` colours all colours whose map
/// separates it. Returns the repaired pairs in lexicographic order. The
/// new colour set always contains the old one, and a repaired pair can
/// still fall short when too few maps separate it; validation catches
/// that afterwards.
pub fn repair_deficient_edges(
    col: &mut SetColouring,
    artifacts: &BlowupArtifacts,
    s: u32,
) -> Vec<(u32, u32)> {
    let mut repaired = Vec::new();
    for (u, v) in col.edges().collect::<Vec<_>>() {
        if col.colour_count(u, v) < s {
            let mask = artifacts.separating_mask(u, v);
            debug_assert!(
                colouring::mask_is_subset(col.mask(u, v), &mask),
                "a pre-repair colour must come from a separating map",
            );
            col.mask_mut(u, v).copy_from_slice(&mask);
            repaired.push((u, v));
        }
    }
    repaired
}

/// One finished build: the colouring, which pairs were repaired, and the
/// random ingredients that produced it.
#[derive(Clone, Debug)]
pub struct BuiltColouring {
    pub colouring: SetColouring,
    pub repaired_edges: Vec<(u32, u32)>,
    pub artifacts: BlowupArtifacts,
}

/// Run the full random build for one master seed.
pub fn build_main_colouring(
    params: &ConstructionParams,
    master_seed: u64,
) -> Result<BuiltColouring, ConstructionError> {
    let artifacts = sample_artifacts(
        params.r,
        params.n.min(u64::from(u32::MAX)) as u32,
        params.m,
        &params.p,
        master_seed,
    )?;
    let mut colouring = assemble_colouring(&artifacts);
    let repaired_edges = repair_deficient_edges(&mut colouring, &artifacts, params.s);
    Ok(BuiltColouring { colouring, repaired_edges, artifacts })
}

/// Build the complete-multipartite colouring on `n` vertices: k - 1 parts
/// per colour, colour present exactly when the parts differ. No repair is
/// ever applied; a pair separated by fewer than `s` maps simply fails
/// validation later.
pub fn build_simple_colouring(
    r: u32,
    k: u32,
    n: u32,
    master_seed: u64,
) -> Result<BuiltColouring, ConstructionError> {
    assert!(k >= 2, "clique order must be at least 2");
    let artifacts = sample_complete_artifacts(r, n, u64::from(k) - 1, master_seed)?;
    let colouring = assemble_colouring(&artifacts);
    Ok(BuiltColouring { colouring, repaired_edges: Vec::new(), artifacts })
}

/// Baseline colouring: each pair independently gets a uniform random
/// s-subset of the palette.
pub fn uniform_random_colouring(n: u32, r: u32, s: u32, master_seed: u64) -> SetColouring {
    assert!(s >= 1 && s <= r, "need 1 <= s <= r");
    let mut rng = rng::stream(master_seed, 0, StreamPurpose::EdgeColours);
    let mut col = SetColouring::new(n, r);
    for (u, v) in col.edges().collect::<Vec<_>>() {
        for colour in rng::sample_distinct_sorted(&mut rng, u64::from(r), u64::from(s)) {
            col.set_colour(u, v, colour as u32);
        }
    }
    col
}

/// Raised when a colouring cannot be thinned to exactly `minimum` colours
/// per pair because some pairs do not have that many to begin with.
#[derive(Debug, PartialEq, Eq)]
pub struct TruncateError {
    pub minimum: u32,
    /// Offending pairs with their colour counts, lexicographic order.
    pub deficient: Vec<(u32, u32, u32)>,
}

impl fmt::Display for TruncateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} pairs have fewer than {} colours:",
            self.deficient.len(),
            self.minimum,
        )?;
        for (u, v, count) in self.deficient.iter().take(8) {
            write!(f, " ({u}, {v}) has {count};")?;
        }
        if self.deficient.len() > 8 {
            write!(f, " ...")?;
        }
        Ok(())
    }
}

impl std::error::Error for TruncateError {}

/// Thin every pair down to exactly `minimum` colours by keeping the
/// lowest-indexed ones. Leaves the colouring untouched and reports the
/// offenders if any pair has fewer than `minimum` colours.
pub fn truncate_to_minimum(
    col: &mut SetColouring,
    minimum: u32,
) -> Result<(), TruncateError> {
    let deficient: Vec<(u32, u32, u32)> = col
        .edges()
        .map(|(u, v)| (u, v, col.colour_count(u, v)))
        .filter(|&(_, _, count)| count < minimum)
        .collect();
    if !deficient.is_empty() {
        return Err(TruncateError { minimum, deficient });
    }
    for (u, v) in col.edges().collect::<Vec<_>>() {
        colouring::mask_keep_lowest(col.mask_mut(u, v), minimum);
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    Main,
    Simple,
}

/// Outcome of repeatedly rebuilding until a colouring passes validation.
#[derive(Clone, Debug)]
pub enum ResampleOutcome {
    Valid { certificate: Certificate, attempts: u32, seed: u64 },
    Exhausted { attempts: u32, min_colour_failures: u32, clique_failures: u32 },
}

/// Try master seeds `base_seed, base_seed + 1, ...` until a build has at
/// least s colours on every pair and no colour class contains a clique on
/// k vertices, or `max_attempts` builds have failed. Each attempt is
/// charged to exactly one failure cause, the colour-count check first.
pub fn resample_until_valid(
    params: &ConstructionParams,
    kind: ConstructionKind,
    base_seed: u64,
    max_attempts: u32,
) -> Result<ResampleOutcome, ConstructionError> {
    assert!(max_attempts >= 1, "need at least one attempt");
    let mut min_colour_failures = 0;
    let mut clique_failures = 0;
    for attempt in 0..max_attempts {
        let seed = base_seed.wrapping_add(u64::from(attempt));
        let built = match kind {
            ConstructionKind::Main => build_main_colouring(params, seed)?,
            ConstructionKind::Simple => build_simple_colouring(
                params.r,
                params.k,
                params.n.min(u64::from(u32::MAX)) as u32,
                seed,
            )?,
        };
        if !verifier::check_min_colours(&built.colouring, params.s).is_empty() {
            min_colour_failures += 1;
            continue;
        }
        if verifier::find_monochromatic_clique(&built.colouring, params.k).is_some() {
            clique_failures += 1;
            continue;
        }
        let (tag, m, p) = match kind {
            ConstructionKind::Main => {
                (ConstructionTag::Main, Some(params.m), Some(params.p.clone()))
            }
            ConstructionKind::Simple => (ConstructionTag::Simple, None, None),
        };
        let certificate = Certificate {
            s: params.s,
            k: params.k,
            construction: tag,
            seed,
            m,
            p,
            colouring: built.colouring,
        };
        return Ok(ResampleOutcome::Valid { certificate, attempts: attempt + 1, seed });
    }
    Ok(ResampleOutcome::Exhausted {
        attempts: max_attempts,
        min_colour_failures,
        clique_failures,
    })
}
