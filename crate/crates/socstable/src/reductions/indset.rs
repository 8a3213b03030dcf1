//! Independent-set gadget.
//!
//! Each vertex v becomes two men and two women. Inside the gadget both
//! men want v.w2, woman v.w1 accepts only v.m1, and v.w2 ranks v.m1
//! first and v.m2 last. Across each graph edge (u, v), u.m1 and v.w2
//! list each other, and exactly those cross pairs are acquainted. The
//! graph has an independent set of size r iff the image has a socially
//! stable matching of size n + r, which is what makes maximum socially
//! stable matching as hard as maximum independent set.

use std::collections::{BTreeSet, HashMap};

use crate::model::HrssInstance;

/// Undirected simple graph with string-named vertices.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SimpleGraph {
    ids: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
    index: HashMap<String, usize>,
}

impl SimpleGraph {
    pub fn new() -> Self {
        SimpleGraph::default()
    }

    pub fn add_vertex(&mut self, id: &str) -> usize {
        let v = self.ids.len();
        self.ids.push(id.to_string());
        self.adj.push(BTreeSet::new());
        self.index.entry(id.to_string()).or_insert(v);
        v
    }

    /// Self-loops are rejected; parallel edges collapse.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), String> {
        if a == b {
            return Err(format!("self-loop at vertex {}", self.ids[a]));
        }
        assert!(a < self.ids.len() && b < self.ids.len(), "vertex out of range");
        self.adj[a].insert(b);
        self.adj[b].insert(a);
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.ids.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Neighbors in ascending index order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    /// Edges with a < b, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n_vertices() {
            for &b in &self.adj[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Builds the one-to-one image of a graph. Agents for vertex `v` are
/// named `v.m1`, `v.m2`, `v.w1`, `v.w2`.
pub fn indset_to_smiss(g: &SimpleGraph) -> HrssInstance {
    let mut b = HrssInstance::builder();
    let m1: Vec<_> = (0..g.n_vertices())
        .map(|v| b.resident(&format!("{}.m1", g.vertex_id(v))))
        .collect();
    let m2: Vec<_> = (0..g.n_vertices())
        .map(|v| b.resident(&format!("{}.m2", g.vertex_id(v))))
        .collect();
    let w1: Vec<_> = (0..g.n_vertices())
        .map(|v| b.hospital(&format!("{}.w1", g.vertex_id(v)), 1))
        .collect();
    let w2: Vec<_> = (0..g.n_vertices())
        .map(|v| b.hospital(&format!("{}.w2", g.vertex_id(v)), 1))
        .collect();
    for v in 0..g.n_vertices() {
        let mut list = vec![w2[v]];
        list.extend(g.neighbors(v).map(|u| w2[u]));
        list.push(w1[v]);
        b.resident_prefs_resolved(m1[v], list);
        b.resident_prefs_resolved(m2[v], vec![w2[v]]);
        b.hospital_prefs_resolved(w1[v], vec![m1[v]]);
        let mut list = vec![m1[v]];
        list.extend(g.neighbors(v).map(|u| m1[u]));
        list.push(m2[v]);
        b.hospital_prefs_resolved(w2[v], list);
    }
    for (u, v) in g.edges() {
        b.acquainted_resolved(m1[u], w2[v]);
        b.acquainted_resolved(m1[v], w2[u]);
    }
    b.build()
}
