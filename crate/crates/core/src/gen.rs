//! Test-corpus generation: exhaustive enumeration of small delta-matroids
//! and seeded random instances built from adjacency and ribbon-graphic
//! delta-matroids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dm::{family_satisfies_exchange, DeltaMatroid};
use crate::error::{Error, Result};
use crate::graphs::SimpleGraphWithLoops;
use crate::ground::{GroundSet, SubsetMask};
use crate::ribbon::random_ribbon;

/// Complete, duplicate-free stream of all delta-matroids on `n` labelled
/// elements (labels `a`, `b`, ...), obtained by filtering every nonempty
/// family through the exchange axiom. Supported for 1 <= n <= 4.
pub fn enumerate_small(n: usize) -> Result<EnumerateSmall> {
    if n == 0 || n > 4 {
        return Err(Error::EnumSize(n));
    }
    Ok(EnumerateSmall {
        ground: GroundSet::alpha(n),
        family_bits: 0,
        limit: 1u64 << (1usize << n),
    })
}

pub struct EnumerateSmall {
    ground: GroundSet,
    family_bits: u64,
    limit: u64,
}

impl Iterator for EnumerateSmall {
    type Item = DeltaMatroid;

    fn next(&mut self) -> Option<DeltaMatroid> {
        loop {
            self.family_bits += 1;
            if self.family_bits >= self.limit {
                return None;
            }
            let family: Vec<SubsetMask> = (0..(1u64 << self.ground.len()))
                .filter(|s| self.family_bits >> s & 1 == 1)
                .map(SubsetMask)
                .collect();
            if family_satisfies_exchange(&self.ground, &family).expect("family is nonempty") {
                return Some(DeltaMatroid::new_unchecked(self.ground.clone(), family));
            }
        }
    }
}

/// All matroids on `n` labelled elements, enumerated rank by rank as
/// equicardinal families passing the exchange filter. Desk scale: n <= 5.
pub fn enumerate_matroids(n: usize) -> Result<Vec<DeltaMatroid>> {
    if n == 0 || n > 5 {
        return Err(Error::EnumSize(n));
    }
    let ground = GroundSet::alpha(n);
    let mut out = Vec::new();
    for rank in 0..=n {
        let layer: Vec<SubsetMask> = ground.subsets().filter(|m| m.len() == rank).collect();
        for bits in 1u64..(1u64 << layer.len()) {
            let family: Vec<SubsetMask> = layer
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &m)| m)
                .collect();
            if family_satisfies_exchange(&ground, &family)? {
                out.push(DeltaMatroid::new_unchecked(ground.clone(), family));
            }
        }
    }
    Ok(out)
}

/// Random-construction recipes. All recipes are deterministic per seed.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// Random graph on n vertices, adjacency delta-matroid, random twist.
    TwistOfAdjacency,
    /// Random connected ribbon graph with n edges, graphic delta-matroid,
    /// random twist.
    TwistOfGraphic,
    /// Adjacency delta-matroid on n+2 vertices, random twist, then a random
    /// two-element minor back down to n.
    TwistMinorOfAdjacency,
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> SimpleGraphWithLoops {
    let labels: Vec<String> = GroundSet::alpha(n).names().to_vec();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.5) {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    let loops: Vec<String> = (0..n)
        .filter(|_| rng.gen_bool(0.5))
        .map(|i| labels[i].clone())
        .collect();
    SimpleGraphWithLoops::new(
        labels.iter().map(String::as_str),
        edges.iter().map(|(u, v)| (u.as_str(), v.as_str())),
        loops.iter().map(String::as_str),
    )
    .expect("random construction avoids duplicates")
}

fn random_mask<R: Rng>(rng: &mut R, n: usize) -> SubsetMask {
    if n == 0 {
        return SubsetMask::empty();
    }
    SubsetMask(rng.gen_range(0..(1u64 << n)))
}

/// Deterministic random delta-matroid with `n` ground elements.
pub fn random_dm(seed: u64, n: usize, recipe: Recipe) -> Result<DeltaMatroid> {
    if n == 0 {
        return Err(Error::EmptyGround);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match recipe {
        Recipe::TwistOfAdjacency => {
            let g = random_graph(&mut rng, n);
            let dm = g.adjacency_dm();
            dm.twist(random_mask(&mut rng, n))
        }
        Recipe::TwistOfGraphic => {
            // retry until the ribbon graph has exactly n edges
            let g = loop {
                let g = random_ribbon(&mut rng, n);
                if g.edge_count() == n {
                    break g;
                }
            };
            let dm = g.graphic_dm()?;
            dm.twist(random_mask(&mut rng, n))
        }
        Recipe::TwistMinorOfAdjacency => {
            let g = random_graph(&mut rng, n + 2);
            let dm = g.adjacency_dm().twist(random_mask(&mut rng, n + 2))?;
            let i = rng.gen_range(0..n + 2);
            let j = rng.gen_range(0..n + 1);
            let j = if j >= i { j + 1 } else { j };
            let (contract, delete) = if rng.gen_bool(0.5) {
                (SubsetMask::singleton(i), SubsetMask::singleton(j))
            } else {
                (
                    SubsetMask::singleton(i) | SubsetMask::singleton(j),
                    SubsetMask::empty(),
                )
            };
            dm.minor(contract, delete)
        }
    }
}

/// A deterministic mixed corpus: `count` random delta-matroids with ground
/// sizes drawn from `sizes`, cycling through the recipes.
pub fn random_corpus(seed: u64, count: usize, sizes: std::ops::RangeInclusive<usize>) -> Vec<DeltaMatroid> {
    let recipes = [
        Recipe::TwistOfAdjacency,
        Recipe::TwistOfGraphic,
        Recipe::TwistMinorOfAdjacency,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut k = 0usize;
    while out.len() < count {
        let n = rng.gen_range(sizes.clone());
        let recipe = recipes[k % recipes.len()];
        k += 1;
        if let Ok(dm) = random_dm(rng.gen(), n, recipe) {
            out.push(dm);
        }
    }
    out
}
