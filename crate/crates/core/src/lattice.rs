//! The lattice of flats of a matroid.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::matroid::{ElementSet, Matroid, MAX_ELEMENTS};

/// Environment variable overriding [`LatticeConfig::max_ground`].
pub const MAX_GROUND_ENV: &str = "MATKLS_MAX_GROUND";

pub const DEFAULT_MAX_GROUND: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeConfig {
    /// Largest ground set for which flats are enumerated.
    pub max_ground: usize,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        LatticeConfig { max_ground: DEFAULT_MAX_GROUND }
    }
}

impl LatticeConfig {
    /// Default configuration, with the ground-set cap taken from
    /// `MATKLS_MAX_GROUND` when set to a valid integer.
    pub fn from_env() -> Self {
        let max_ground = std::env::var(MAX_GROUND_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(|n| n.min(MAX_ELEMENTS))
            .unwrap_or(DEFAULT_MAX_GROUND);
        LatticeConfig { max_ground }
    }
}

/// All flats of a matroid, sorted by rank and then lexicographically.
/// Index `0` is the bottom flat `cl(∅)` and the last index is the ground set.
#[derive(Clone, Debug)]
pub struct FlatLattice {
    flats: Vec<ElementSet>,
    ranks: Vec<usize>,
    /// `up[i]`: indices of flats containing flat `i`, ascending, starting at `i`.
    up: Vec<Vec<usize>>,
    index: HashMap<ElementSet, usize>,
}

impl FlatLattice {
    /// Enumerate flats breadth-first from `cl(∅)`, generating each level
    /// from covers `cl(F ∪ {e})` of the previous one.
    pub fn build(matroid: &Matroid, config: &LatticeConfig) -> Result<Self> {
        let n = matroid.ground_size();
        if n > config.max_ground {
            return Err(Error::GroundSetTooLarge { size: n, limit: config.max_ground });
        }
        let bottom = matroid.closure(ElementSet::EMPTY);
        let mut levels: Vec<Vec<ElementSet>> = vec![vec![bottom]];
        loop {
            let current = levels.last().unwrap();
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for &flat in current {
                let mut covered = flat;
                for e in 0..n {
                    if covered.contains(e) {
                        continue;
                    }
                    let cover = matroid.closure(flat.with(e));
                    covered = covered.union(cover);
                    if seen.insert(cover) {
                        next.push(cover);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }

        let mut flats = Vec::new();
        let mut ranks = Vec::new();
        for (r, mut level) in levels.into_iter().enumerate() {
            level.sort_by(|a, b| a.lex_cmp(*b));
            ranks.extend(std::iter::repeat_n(r, level.len()));
            flats.extend(level);
        }
        Ok(Self::from_sorted(flats, ranks))
    }

    fn from_sorted(flats: Vec<ElementSet>, ranks: Vec<usize>) -> Self {
        let up = (0..flats.len())
            .map(|i| {
                (i..flats.len())
                    .filter(|&j| flats[i].is_subset(flats[j]))
                    .collect()
            })
            .collect();
        let index = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        FlatLattice { flats, ranks, up, index }
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn flat(&self, i: usize) -> ElementSet {
        self.flats[i]
    }

    pub fn flats(&self) -> &[ElementSet] {
        &self.flats
    }

    pub fn index_of(&self, flat: ElementSet) -> Option<usize> {
        self.index.get(&flat).copied()
    }

    /// `rk M_F` for the flat with index `i`.
    pub fn rank_of(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// `rk M`
    pub fn rank(&self) -> usize {
        self.ranks[self.top()]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.flats[a].is_subset(self.flats[b])
    }

    /// `r_{ab} = rk(b) - rk(a)`; callers guarantee `a <= b`.
    pub fn weak_rank(&self, a: usize, b: usize) -> usize {
        self.ranks[b] - self.ranks[a]
    }

    /// Flats above `a`, including `a`, in index order.
    pub fn up(&self, a: usize) -> &[usize] {
        &self.up[a]
    }

    /// Position of `b` in `up(a)`, when `a <= b`.
    pub fn position(&self, a: usize, b: usize) -> Option<usize> {
        self.up[a].binary_search(&b).ok()
    }

    /// Flats `h` with `a <= h <= b`, in index order (so by rank).
    pub fn interval(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        let top = self.flats[b];
        self.up[a]
            .iter()
            .copied()
            .take_while(move |&h| h <= b)
            .filter(move |&h| self.flats[h].is_subset(top))
    }

    /// Number of comparable pairs.
    pub fn interval_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// Count of flats in `[a, b]` at each relative rank `0..=r_{ab}`.
    pub fn rank_profile(&self, a: usize, b: usize) -> Vec<usize> {
        let base = self.ranks[a];
        let mut counts = vec![0; self.weak_rank(a, b) + 1];
        for h in self.interval(a, b) {
            counts[self.ranks[h] - base] += 1;
        }
        counts
    }

    /// Meet of two flats (their intersection).
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.index_of(self.flats[a].intersection(self.flats[b]))
    }
}
