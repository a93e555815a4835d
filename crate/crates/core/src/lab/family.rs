//! Deterministic families of matroids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::graphs::connected_graphs;
use crate::error::{Error, Result};
use crate::matroid::{k_subsets, Matroid, MAX_ELEMENTS};

/// Largest vertex count accepted for graph enumeration. Nine vertices is
/// already a long run; the default CI scale is six.
pub const MAX_FAMILY_VERTICES: usize = 9;
pub const MAX_RANDOM_GROUND: usize = 12;
pub const MAX_RANDOM_COUNT: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    /// `U_{m,d}` for `1 <= m <= max_m`, `1 <= d <= max_d`, `m` outermost.
    Uniform { max_m: usize, max_d: usize },
    /// `B_1, ..., B_{max_n}`.
    Boolean { max_n: usize },
    /// Cycle matroids of connected simple graphs, one per isomorphism class,
    /// by vertex count, then edge count.
    GraphicConnectedSimple { min_vertices: usize, max_vertices: usize },
    /// Binary matroids of random `rank x ground_size` matrices over GF(2).
    BasesRandom { count: usize, ground_size: usize, rank: usize, seed: u64 },
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::Uniform { max_m, max_d } => format!("uniform m<={max_m} d<={max_d}"),
            Family::Boolean { max_n } => format!("boolean n<={max_n}"),
            Family::GraphicConnectedSimple { min_vertices, max_vertices } => {
                format!("connected simple graphs on {min_vertices}..={max_vertices} vertices")
            }
            Family::BasesRandom { count, ground_size, rank, seed } => {
                format!("{count} random binary matroids, n={ground_size} r<={rank} seed={seed}")
            }
        }
    }

    fn check_limits(&self) -> Result<()> {
        let too_large = |what: String| Err(Error::LimitTooLarge(what));
        match *self {
            Family::Uniform { max_m, max_d } if max_m + max_d > MAX_ELEMENTS => {
                too_large(format!("max_m + max_d = {} exceeds {MAX_ELEMENTS}", max_m + max_d))
            }
            Family::Boolean { max_n } if max_n > MAX_ELEMENTS => {
                too_large(format!("max_n = {max_n} exceeds {MAX_ELEMENTS}"))
            }
            Family::GraphicConnectedSimple { max_vertices, .. } if max_vertices > MAX_FAMILY_VERTICES => {
                too_large(format!("max_vertices = {max_vertices} exceeds {MAX_FAMILY_VERTICES}"))
            }
            Family::BasesRandom { count, ground_size, rank, .. } => {
                if ground_size > MAX_RANDOM_GROUND {
                    too_large(format!("ground_size = {ground_size} exceeds {MAX_RANDOM_GROUND}"))
                } else if count > MAX_RANDOM_COUNT {
                    too_large(format!("count = {count} exceeds {MAX_RANDOM_COUNT}"))
                } else if rank > ground_size {
                    Err(Error::MalformedSpec(format!("rank {rank} exceeds ground_size {ground_size}")))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

/// Members of `family` in its fixed enumeration order.
pub fn generate_family(family: &Family) -> Result<Vec<Matroid>> {
    family.check_limits()?;
    match *family {
        Family::Uniform { max_m, max_d } => {
            let mut out = Vec::with_capacity(max_m * max_d);
            for m in 1..=max_m {
                for d in 1..=max_d {
                    out.push(Matroid::uniform(m, d)?);
                }
            }
            Ok(out)
        }
        Family::Boolean { max_n } => (1..=max_n).map(Matroid::boolean).collect(),
        Family::GraphicConnectedSimple { min_vertices, max_vertices } => {
            let mut out = Vec::new();
            for n in min_vertices.max(1)..=max_vertices {
                for g in connected_graphs(n) {
                    out.push(Matroid::graphic(&g.edges())?);
                }
            }
            Ok(out)
        }
        Family::BasesRandom { count, ground_size, rank, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let mask = if rank == 0 { 0 } else { u64::MAX >> (64 - rank) };
                    let columns: Vec<u64> = (0..ground_size).map(|_| rng.gen::<u64>() & mask).collect();
                    binary_matroid(&columns)
                })
                .collect()
        }
    }
}

fn gf2_rank(vectors: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

/// Matroid of linear dependence among the given GF(2) column vectors.
pub fn binary_matroid(columns: &[u64]) -> Result<Matroid> {
    let n = columns.len();
    let r = gf2_rank(columns.iter().copied());
    let bases: Vec<Vec<usize>> = k_subsets(n, r)
        .filter(|s| gf2_rank(s.iter().map(|e| columns[e])) == r)
        .map(|s| s.iter().collect())
        .collect();
    Matroid::from_bases(n, &bases)
}
