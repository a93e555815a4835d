//! Connected simple graphs up to isomorphism.
//!
//! Graphs on `n` vertices are grown from those on `n - 1` by attaching a new
//! vertex to a nonempty set of old ones; every connected graph arises this way
//! because it has a vertex whose removal keeps it connected. Duplicates are
//! removed by a canonical adjacency code, maximized over the vertex orders
//! compatible with an invariant color refinement.

use std::collections::{BTreeSet, HashSet};

/// Adjacency-bitmask graph on at most 11 vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u16>,
}

pub const MAX_GRAPH_VERTICES: usize = 11;

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_GRAPH_VERTICES);
        SimpleGraph { n, adj: vec![0; n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen.count_ones() as usize == self.n
    }

    /// Vertex colors from iterated degree refinement; colors are ranks of
    /// isomorphism-invariant keys.
    fn refined_colors(&self) -> Vec<usize> {
        let mut colors: Vec<usize> = self.adj.iter().map(|a| a.count_ones() as usize).collect();
        let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
        loop {
            let keys: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<usize> = (0..self.n)
                        .filter(|&u| self.has_edge(v, u))
                        .map(|u| colors[u])
                        .collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let distinct: Vec<&(usize, Vec<usize>)> =
                keys.iter().collect::<BTreeSet<_>>().into_iter().collect();
            colors = keys
                .iter()
                .map(|k| distinct.binary_search(&k).unwrap())
                .collect();
            if distinct.len() == classes {
                return colors;
            }
            classes = distinct.len();
        }
    }

    fn code_for(&self, order: &[usize]) -> u64 {
        let mut code = 0u64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                code = (code << 1) | self.has_edge(order[i], order[j]) as u64;
            }
        }
        code
    }

    /// Canonical code and the vertex order realizing it.
    pub fn canonical(&self) -> (u64, Vec<usize>) {
        let colors = self.refined_colors();
        let mut cells: Vec<Vec<usize>> = Vec::new();
        let max_color = colors.iter().copied().max().unwrap_or(0);
        for c in 0..=max_color {
            let cell: Vec<usize> = (0..self.n).filter(|&v| colors[v] == c).collect();
            if !cell.is_empty() {
                cells.push(cell);
            }
        }
        let mut best: Option<(u64, Vec<usize>)> = None;
        let mut order = Vec::with_capacity(self.n);
        self.search(&mut cells, 0, &mut order, &mut best);
        best.unwrap_or((0, Vec::new()))
    }

    fn search(
        &self,
        cells: &mut [Vec<usize>],
        cell: usize,
        order: &mut Vec<usize>,
        best: &mut Option<(u64, Vec<usize>)>,
    ) {
        if cell == cells.len() {
            let code = self.code_for(order);
            if best.as_ref().is_none_or(|(b, _)| code > *b) {
                *best = Some((code, order.clone()));
            }
            return;
        }
        permute(&mut cells[cell].clone(), 0, &mut |perm| {
            let base = order.len();
            order.extend_from_slice(perm);
            self.search(cells, cell + 1, order, best);
            order.truncate(base);
        });
    }

    /// Relabel so that vertex `i` becomes the `i`-th vertex of `order`.
    pub fn relabeled(&self, order: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(order[i], order[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Connected simple graphs on exactly `n` vertices, one per isomorphism
/// class, in canonical labeling, sorted by edge count and then code.
pub fn connected_graphs(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= MAX_GRAPH_VERTICES);
    if n == 0 {
        return Vec::new();
    }
    let mut layer = vec![SimpleGraph::empty(1)];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &layer {
            for mask in 1u16..(1 << (size - 1)) {
                let mut h = SimpleGraph::empty(size);
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                for u in 0..size - 1 {
                    if mask >> u & 1 == 1 {
                        h.add_edge(u, size - 1);
                    }
                }
                let (code, order) = h.canonical();
                if seen.insert(code) {
                    next.push((h.edge_count(), code, h.relabeled(&order)));
                }
            }
        }
        next.sort_by_key(|(e, c, _)| (*e, *c));
        layer = next.into_iter().map(|(_, _, g)| g).collect();
    }
    layer
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: canonical code over all n! orders of every labeled graph.
    fn brute_force_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut classes = HashSet::new();
        for mask in 0u32..(1 << pairs.len()) {
            let mut g = SimpleGraph::empty(n);
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            if !g.is_connected() {
                continue;
            }
            let mut best = 0;
            permute(&mut (0..n).collect(), 0, &mut |p| best = best.max(g.code_for(p)));
            classes.insert(best);
        }
        classes.len()
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 1..=5 {
            assert_eq!(connected_graphs(n).len(), brute_force_count(n), "n = {n}");
        }
    }

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn three_vertices() {
        let gs = connected_graphs(3);
        assert_eq!(gs.iter().map(SimpleGraph::edge_count).collect::<Vec<_>>(), vec![2, 3]);
        assert!(gs.iter().all(SimpleGraph::is_connected));
    }

    #[test]
    fn canonical_code_is_label_invariant() {
        let mut g = SimpleGraph::empty(5);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)] {
            g.add_edge(u, v);
        }
        let code = g.canonical().0;
        let perm = [3, 0, 4, 1, 2];
        assert_eq!(g.relabeled(&perm).canonical().0, code);
    }
}
