//! Bipartite matching primitives over small non-negative integer weights.
//!
//! All four entry points are deterministic: vertices are identified by
//! index, adjacency is scanned in insertion order, and ties between
//! optimal solutions are broken by the resulting fixed search order. The
//! weighted solvers run successive shortest augmenting paths over the
//! residual graph, which keeps every intermediate matching extreme
//! (optimal among matchings of its cardinality).

/// Simple bipartite graph; at most one edge per (left, right) pair.
#[derive(Clone, Debug)]
pub struct WeightedBipartiteGraph {
    n_left: usize,
    n_right: usize,
    edges: Vec<(usize, usize, u64)>,
    adj: Vec<Vec<usize>>,
}

impl WeightedBipartiteGraph {
    pub fn new(n_left: usize, n_right: usize) -> Self {
        WeightedBipartiteGraph {
            n_left,
            n_right,
            edges: Vec::new(),
            adj: vec![Vec::new(); n_left],
        }
    }

    pub fn add_edge(&mut self, left: usize, right: usize, weight: u64) {
        assert!(left < self.n_left && right < self.n_right, "endpoint out of range");
        debug_assert!(
            !self.adj[left].iter().any(|&e| self.edges[e].1 == right),
            "duplicate edge ({left}, {right})"
        );
        self.adj[left].push(self.edges.len());
        self.edges.push((left, right, weight));
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn matching_weight(&self, m: &GraphMatching) -> u64 {
        self.edges
            .iter()
            .filter(|&&(l, r, _)| m.mate_left[l] == Some(r))
            .map(|&(_, _, w)| w)
            .sum()
    }
}

/// A matching as mutual mate tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMatching {
    pub mate_left: Vec<Option<usize>>,
    pub mate_right: Vec<Option<usize>>,
}

impl GraphMatching {
    pub fn empty(g: &WeightedBipartiteGraph) -> Self {
        GraphMatching {
            mate_left: vec![None; g.n_left],
            mate_right: vec![None; g.n_right],
        }
    }

    pub fn from_pairs(g: &WeightedBipartiteGraph, pairs: &[(usize, usize)]) -> Self {
        let mut m = GraphMatching::empty(g);
        for &(l, r) in pairs {
            assert!(m.mate_left[l].is_none() && m.mate_right[r].is_none());
            m.mate_left[l] = Some(r);
            m.mate_right[r] = Some(l);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.mate_left.iter().flatten().count()
    }

    /// Matched pairs sorted by left vertex.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate_left
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
            .collect()
    }
}

/// Kuhn-style augmentation: repeatedly search an alternating path from a
/// free left vertex to a free right vertex and flip it. Augmenting never
/// unmatches a matched vertex, it only reassigns partners.
fn augment_all(g: &WeightedBipartiteGraph, m: &mut GraphMatching) {
    for start in 0..g.n_left {
        if m.mate_left[start].is_some() {
            continue;
        }
        let mut visited = vec![false; g.n_right];
        try_augment(g, start, &mut visited, m);
    }
}

fn try_augment(
    g: &WeightedBipartiteGraph,
    l: usize,
    visited: &mut [bool],
    m: &mut GraphMatching,
) -> bool {
    for &e in &g.adj[l] {
        let (_, r, _) = g.edges[e];
        if visited[r] {
            continue;
        }
        visited[r] = true;
        let free = match m.mate_right[r] {
            None => true,
            Some(other) => try_augment(g, other, visited, m),
        };
        if free {
            m.mate_left[l] = Some(r);
            m.mate_right[r] = Some(l);
            return true;
        }
    }
    false
}

/// Maximum-cardinality matching.
pub fn max_cardinality_matching(g: &WeightedBipartiteGraph) -> GraphMatching {
    let mut m = GraphMatching::empty(g);
    augment_all(g, &mut m);
    m
}

/// Extends `m` to maximum cardinality. Every vertex matched in `m` is
/// still matched in the result (possibly to a different partner).
pub fn augment_preserving(g: &WeightedBipartiteGraph, m: &GraphMatching) -> GraphMatching {
    let mut out = m.clone();
    augment_all(g, &mut out);
    out
}

const INF: i64 = i64::MAX / 4;

/// One round of the successive-shortest-path search: the cheapest
/// alternating path from any free left vertex to any free right vertex,
/// under `cost`, found by Bellman-Ford over the residual graph. Returns
/// the path cost after flipping it, or None when no augmenting path exists.
fn cheapest_augmenting_path(
    g: &WeightedBipartiteGraph,
    cost: &[i64],
    m: &mut GraphMatching,
    only_if_negative: bool,
) -> Option<i64> {
    let mut dist_l = vec![INF; g.n_left];
    let mut dist_r = vec![INF; g.n_right];
    // Edge by which each right vertex was reached.
    let mut reached_via = vec![usize::MAX; g.n_right];
    for (d, mate) in dist_l.iter_mut().zip(&m.mate_left) {
        if mate.is_none() {
            *d = 0;
        }
    }
    // Longest simple alternating path has at most n_left left nodes.
    for _ in 0..g.n_left {
        let mut changed = false;
        for (e, &(l, r, _)) in g.edges.iter().enumerate() {
            if dist_l[l] >= INF {
                continue;
            }
            if m.mate_left[l] == Some(r) {
                continue;
            }
            let cand = dist_l[l] + cost[e];
            if cand < dist_r[r] {
                dist_r[r] = cand;
                reached_via[r] = e;
                changed = true;
                // Matched right vertices relay backwards at -cost.
                if let Some(l2) = m.mate_right[r] {
                    let back = g.adj[l2]
                        .iter()
                        .copied()
                        .find(|&e2| g.edges[e2].1 == r)
                        .expect("matched pair has an edge");
                    let cand_l = cand - cost[back];
                    if cand_l < dist_l[l2] {
                        dist_l[l2] = cand_l;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut best: Option<(i64, usize)> = None;
    for (r, &d) in dist_r.iter().enumerate() {
        if m.mate_right[r].is_none() && d < INF && best.is_none_or(|(b, _)| d < b) {
            best = Some((d, r));
        }
    }
    let (d, mut r) = best?;
    if only_if_negative && d >= 0 {
        return None;
    }
    loop {
        let e = reached_via[r];
        let (l, _, _) = g.edges[e];
        let prev = m.mate_left[l];
        m.mate_left[l] = Some(r);
        m.mate_right[r] = Some(l);
        match prev {
            None => break,
            Some(pr) => r = pr,
        }
    }
    Some(d)
}

/// Among all maximum-cardinality matchings, one of minimum total weight.
pub fn min_weight_max_cardinality_matching(g: &WeightedBipartiteGraph) -> GraphMatching {
    let cost: Vec<i64> = g.edges.iter().map(|&(_, _, w)| w as i64).collect();
    let mut m = GraphMatching::empty(g);
    while cheapest_augmenting_path(g, &cost, &mut m, false).is_some() {}
    m
}

/// A matching of maximum total weight, not necessarily of maximum
/// cardinality. Successive path costs are non-decreasing, so the search
/// stops at the first augmentation that would not strictly gain weight.
pub fn max_weight_matching(g: &WeightedBipartiteGraph) -> GraphMatching {
    let cost: Vec<i64> = g.edges.iter().map(|&(_, _, w)| -(w as i64)).collect();
    let mut m = GraphMatching::empty(g);
    while cheapest_augmenting_path(g, &cost, &mut m, true).is_some() {}
    m
}
