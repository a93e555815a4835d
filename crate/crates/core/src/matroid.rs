//! Matroids given by rank oracles over a ground set `0..n`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;

/// Largest ground set representable by an [`ElementSet`].
pub const MAX_ELEMENTS: usize = 64;

/// Ground sets at or below this size get an exhaustive basis-exchange check.
const EXHAUSTIVE_EXCHANGE_LIMIT: usize = 12;

/// A subset of the ground set, one bit per element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, ..., n-1}`
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        ElementSet(1u64 << e)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        ElementSet(elements.into_iter().fold(0, |acc, e| acc | (1u64 << e)))
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_ELEMENTS && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        ElementSet(self.0 | (1u64 << e))
    }

    pub fn without(self, e: usize) -> Self {
        ElementSet(self.0 & !(1u64 << e))
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    /// Compare as ascending element sequences.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// JSON description of a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform {
        m: usize,
        d: usize,
    },
    Boolean {
        n: usize,
    },
    Graph {
        edges: Vec<[usize; 2]>,
    },
    Bases {
        ground_size: usize,
        bases: Vec<Vec<usize>>,
    },
    DirectSum {
        left: Box<MatroidSpec>,
        right: Box<MatroidSpec>,
    },
}

impl MatroidSpec {
    /// Short human-readable label, e.g. `U(2,3)` or `graph[3 edges]`.
    pub fn label(&self) -> String {
        match self {
            MatroidSpec::Uniform { m, d } => format!("U({m},{d})"),
            MatroidSpec::Boolean { n } => format!("B({n})"),
            MatroidSpec::Graph { edges } => {
                let es: Vec<String> = edges.iter().map(|[u, v]| format!("{u}{v}")).collect();
                format!("graph[{}]", es.join(" "))
            }
            MatroidSpec::Bases { ground_size, bases } => {
                format!("bases[n={ground_size}, {} bases]", bases.len())
            }
            MatroidSpec::DirectSum { left, right } => {
                format!("{} + {}", left.label(), right.label())
            }
        }
    }
}

/// Shape of a matroid's simplification when it is boolean or uniform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleShape {
    Boolean(usize),
    Uniform { m: usize, d: usize },
}

#[derive(Clone, Debug)]
enum Kind {
    Uniform { m: usize, d: usize },
    Boolean,
    Graph { edges: Vec<(usize, usize)>, vertices: usize },
    Bases { bases: Vec<ElementSet> },
    DirectSum(Arc<Matroid>, Arc<Matroid>),
    Minor { parent: Arc<Matroid>, contracted: ElementSet, elements: Vec<usize>, base_rank: usize },
}

/// A matroid on the ground set `0..ground_size`.
#[derive(Clone, Debug)]
pub struct Matroid {
    ground_size: usize,
    kind: Kind,
}

impl Matroid {
    pub fn from_spec(spec: &MatroidSpec) -> Result<Self> {
        match spec {
            MatroidSpec::Uniform { m, d } => Self::uniform(*m, *d),
            MatroidSpec::Boolean { n } => Self::boolean(*n),
            MatroidSpec::Graph { edges } => {
                Self::graphic(&edges.iter().map(|&[u, v]| (u, v)).collect::<Vec<_>>())
            }
            MatroidSpec::Bases { ground_size, bases } => Self::from_bases(*ground_size, bases),
            MatroidSpec::DirectSum { left, right } => {
                Self::direct_sum(&Self::from_spec(left)?, &Self::from_spec(right)?)
            }
        }
    }

    /// `U_{m,d}`: rank `d` on `m + d` elements.
    pub fn uniform(m: usize, d: usize) -> Result<Self> {
        check_size(m + d)?;
        Ok(Matroid { ground_size: m + d, kind: Kind::Uniform { m, d } })
    }

    pub fn boolean(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Matroid { ground_size: n, kind: Kind::Boolean })
    }

    /// Cycle matroid of a multigraph; vertex labels are arbitrary indices.
    pub fn graphic(edges: &[(usize, usize)]) -> Result<Self> {
        check_size(edges.len())?;
        let vertices = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        if vertices > 4096 {
            return Err(Error::MalformedSpec(format!("vertex label {} too large", vertices - 1)));
        }
        Ok(Matroid {
            ground_size: edges.len(),
            kind: Kind::Graph { edges: edges.to_vec(), vertices },
        })
    }

    /// Matroid given by its list of bases.
    pub fn from_bases(ground_size: usize, bases: &[Vec<usize>]) -> Result<Self> {
        check_size(ground_size)?;
        if bases.is_empty() {
            return Err(Error::MalformedSpec("basis list is empty".into()));
        }
        let mut sets = Vec::with_capacity(bases.len());
        for b in bases {
            if let Some(&e) = b.iter().find(|&&e| e >= ground_size) {
                return Err(Error::MalformedSpec(format!(
                    "element {e} outside ground set of size {ground_size}"
                )));
            }
            let set = ElementSet::from_elements(b.iter().copied());
            if set.len() != b.len() {
                return Err(Error::MalformedSpec(format!("basis {b:?} repeats an element")));
            }
            sets.push(set);
        }
        let size = sets[0].len();
        if sets.iter().any(|s| s.len() != size) {
            return Err(Error::NotAMatroid("bases have different cardinalities".into()));
        }
        sets.sort();
        sets.dedup();
        check_exchange(ground_size, &sets)?;
        Ok(Matroid { ground_size, kind: Kind::Bases { bases: sets } })
    }

    pub fn direct_sum(left: &Matroid, right: &Matroid) -> Result<Self> {
        check_size(left.ground_size + right.ground_size)?;
        Ok(Matroid {
            ground_size: left.ground_size + right.ground_size,
            kind: Kind::DirectSum(Arc::new(left.clone()), Arc::new(right.clone())),
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.ground_size)
    }

    pub fn rank(&self, set: ElementSet) -> usize {
        let set = set.intersection(self.ground());
        match &self.kind {
            Kind::Uniform { d, .. } => set.len().min(*d),
            Kind::Boolean => set.len(),
            Kind::Graph { edges, vertices } => graph_rank(edges, *vertices, set),
            Kind::Bases { bases } => bases
                .iter()
                .map(|b| b.intersection(set).len())
                .max()
                .unwrap_or(0),
            Kind::DirectSum(left, right) => {
                let n = left.ground_size;
                let low = set.intersection(ElementSet::full(n));
                let high = ElementSet::from_bits(set.bits() >> n);
                left.rank(low) + right.rank(high)
            }
            Kind::Minor { parent, contracted, elements, base_rank } => {
                let lifted = set.iter().fold(*contracted, |acc, e| acc.with(elements[e]));
                parent.rank(lifted) - base_rank
            }
        }
    }

    /// `rk M`
    pub fn full_rank(&self) -> usize {
        self.rank(self.ground())
    }

    pub fn closure(&self, set: ElementSet) -> ElementSet {
        let r = self.rank(set);
        (0..self.ground_size)
            .filter(|&e| !set.contains(e))
            .fold(set, |acc, e| if self.rank(set.with(e)) == r { acc.with(e) } else { acc })
    }

    pub fn is_flat(&self, set: ElementSet) -> bool {
        self.closure(set) == set
    }

    /// The minor whose lattice of flats is the interval `[lower, upper]`:
    /// restrict to `upper`, then contract `lower`. Its elements are those of
    /// `upper \ lower` in increasing order.
    pub fn minor(&self, lattice: &FlatLattice, lower: usize, upper: usize) -> Result<Matroid> {
        if !lattice.leq(lower, upper) {
            return Err(Error::NotComparable(lower, upper));
        }
        let contracted = lattice.flat(lower);
        let elements: Vec<usize> = lattice.flat(upper).difference(contracted).iter().collect();
        Ok(Matroid {
            ground_size: elements.len(),
            kind: Kind::Minor {
                parent: Arc::new(self.clone()),
                contracted,
                base_rank: self.rank(contracted),
                elements,
            },
        })
    }

    /// Recognize boolean or uniform simplifications from the rank profile.
    pub fn simple_shape(&self) -> Option<SimpleShape> {
        match self.kind {
            Kind::Boolean => return Some(SimpleShape::Boolean(self.ground_size)),
            Kind::Uniform { m, d } => {
                return Some(match (m, d) {
                    (_, 0) => SimpleShape::Boolean(0),
                    (0, d) => SimpleShape::Boolean(d),
                    (m, d) => SimpleShape::Uniform { m, d },
                })
            }
            _ => {}
        }
        let reps = self.parallel_class_representatives();
        let d = self.full_rank();
        let n = reps.len();
        if n == d {
            return Some(SimpleShape::Boolean(d));
        }
        // every d-subset of representatives must be a basis
        if crate::polynomial::binomial(n, d) > 200_000u32.into() {
            return None;
        }
        let all_independent = k_subsets(n, d).all(|mask| {
            let set = ElementSet::from_elements(mask.iter().map(|i| reps[i]));
            self.rank(set) == d
        });
        all_independent.then_some(SimpleShape::Uniform { m: n - d, d })
    }

    /// One element from each parallel class of non-loops.
    pub fn parallel_class_representatives(&self) -> Vec<usize> {
        let mut reps: Vec<usize> = Vec::new();
        for e in 0..self.ground_size {
            if self.rank(ElementSet::singleton(e)) == 0 {
                continue;
            }
            let parallel = reps
                .iter()
                .any(|&f| self.rank(ElementSet::singleton(e).with(f)) == 1);
            if !parallel {
                reps.push(e);
            }
        }
        reps
    }

    /// All bases, by enumeration of `rk M`-subsets.
    pub fn bases(&self) -> Vec<ElementSet> {
        let d = self.full_rank();
        k_subsets(self.ground_size, d)
            .filter(|s| self.rank(*s) == d)
            .collect()
    }

    /// A JSON description of this matroid. Minors are described by their
    /// bases.
    pub fn spec(&self) -> MatroidSpec {
        match &self.kind {
            Kind::Uniform { m, d } => MatroidSpec::Uniform { m: *m, d: *d },
            Kind::Boolean => MatroidSpec::Boolean { n: self.ground_size },
            Kind::Graph { edges, .. } => MatroidSpec::Graph {
                edges: edges.iter().map(|&(u, v)| [u, v]).collect(),
            },
            Kind::DirectSum(l, r) => MatroidSpec::DirectSum {
                left: Box::new(l.spec()),
                right: Box::new(r.spec()),
            },
            Kind::Bases { .. } | Kind::Minor { .. } => {
                let bases = match &self.kind {
                    Kind::Bases { bases } => bases.clone(),
                    _ => self.bases(),
                };
                MatroidSpec::Bases {
                    ground_size: self.ground_size,
                    bases: bases.iter().map(|b| b.iter().collect()).collect(),
                }
            }
        }
    }

    /// The two summands, when this matroid was built as a direct sum.
    pub fn summands(&self) -> Option<(&Matroid, &Matroid)> {
        match &self.kind {
            Kind::DirectSum(l, r) => Some((l, r)),
            _ => None,
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        Err(Error::GroundSetTooLarge { size: n, limit: MAX_ELEMENTS })
    } else {
        Ok(())
    }
}

fn graph_rank(edges: &[(usize, usize)], vertices: usize, set: ElementSet) -> usize {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut rank = 0;
    for e in set.iter() {
        let (u, v) = edges[e];
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            rank += 1;
        }
    }
    rank
}

/// Subsets of `0..n` of size `k`, in increasing bit order.
pub(crate) fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = ElementSet> {
    let limit = if n == MAX_ELEMENTS { u64::MAX } else { (1u64 << n) - 1 };
    let mut next = if k > n {
        None
    } else if k == 0 {
        Some(0u64)
    } else if k == MAX_ELEMENTS {
        Some(u64::MAX)
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.checked_add(c);
            match r {
                Some(r) => {
                    let nxt = (((r ^ cur) >> 2) / c) | r;
                    (nxt <= limit).then_some(nxt)
                }
                None => None,
            }
        };
        Some(ElementSet::from_bits(cur))
    })
}

fn check_exchange(ground_size: usize, bases: &[ElementSet]) -> Result<()> {
    let lookup: std::collections::HashSet<ElementSet> = bases.iter().copied().collect();
    let exchange_holds = |b1: ElementSet, b2: ElementSet| -> Option<usize> {
        b1.difference(b2).iter().find(|&x| {
            !b2.difference(b1)
                .iter()
                .any(|y| lookup.contains(&b1.without(x).with(y)))
        })
    };
    let report = |b1: ElementSet, b2: ElementSet, x: usize| {
        Error::NotAMatroid(format!("exchange fails for {b1} \\ {x} against {b2}"))
    };
    if ground_size <= EXHAUSTIVE_EXCHANGE_LIMIT {
        for &b1 in bases {
            for &b2 in bases {
                if let Some(x) = exchange_holds(b1, b2) {
                    return Err(report(b1, b2, x));
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..4096 {
            let b1 = bases[rng.gen_range(0..bases.len())];
            let b2 = bases[rng.gen_range(0..bases.len())];
            if let Some(x) = exchange_holds(b1, b2) {
                return Err(report(b1, b2, x));
            }
        }
    }
    Ok(())
}
