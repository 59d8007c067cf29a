use alloc::collections::{BTreeSet, BinaryHeap};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_rational::Rational64;

use super::GraphError;
use crate::group::{Ball, GroupModel};

/// Finite undirected graph with positive integer edge weights.
///
/// Weights are stored doubled: an ordinary Cayley edge has weight 2 and a
/// cone half-edge weight 1. Distances reported by [`MetricGraph::distance`]
/// are halved back.
#[derive(Clone, Debug)]
pub struct MetricGraph {
    adj: Vec<Vec<(u32, u32)>>,
    labels: Vec<String>,
    edge_count: usize,
    /// Word length of each vertex and the ball radius, when built from a ball.
    lengths: Option<(Vec<u32>, u32)>,
}

impl MetricGraph {
    pub fn new(labels: Vec<String>) -> Self {
        MetricGraph { adj: vec![Vec::new(); labels.len()], labels, edge_count: 0, lengths: None }
    }

    /// Builds a graph from `(a, b, scaled_weight)` triples. Duplicate edges
    /// keep the smaller weight.
    pub fn from_edges(labels: Vec<String>, edges: &[(u32, u32, u32)]) -> Result<Self, GraphError> {
        let mut g = MetricGraph::new(labels);
        for &(a, b, w) in edges {
            g.add_edge(a, b, w)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: String) -> u32 {
        self.adj.push(Vec::new());
        self.labels.push(label);
        (self.adj.len() - 1) as u32
    }

    /// Adds an undirected edge. Loops and zero weights are rejected; an
    /// existing edge is kept with the smaller weight.
    pub fn add_edge(&mut self, a: u32, b: u32, w: u32) -> Result<(), GraphError> {
        let n = self.adj.len() as u32;
        if a >= n || b >= n {
            return Err(GraphError::NoSuchVertex(a.max(b)));
        }
        if a == b || w == 0 {
            return Err(GraphError::InvalidEdge { a, b, weight: w });
        }
        if let Some(slot) = self.adj[a as usize].iter_mut().find(|e| e.0 == b) {
            slot.1 = slot.1.min(w);
            let w = slot.1;
            self.adj[b as usize].iter_mut().find(|e| e.0 == a).expect("adjacency is symmetric").1 = w;
            return Ok(());
        }
        self.adj[a as usize].push((b, w));
        self.adj[b as usize].push((a, w));
        self.edge_count += 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[(u32, u32)] {
        &self.adj[v as usize]
    }

    /// Scaled weight of edge `{a, b}`, if present.
    pub fn edge_weight(&self, a: u32, b: u32) -> Option<u32> {
        self.adj.get(a as usize)?.iter().find(|e| e.0 == b).map(|e| e.1)
    }

    /// Edges `(a, b, scaled_weight)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32, u32)> {
        let mut out: Vec<(u32, u32, u32)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(a, nb)| nb.iter().filter(move |e| (a as u32) < e.0).map(move |e| (a as u32, e.0, e.1)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Ball radius minus the word length of `v`, for graphs built from a
    /// ball. Pairs with a vertex of margin below 1 can have distances that
    /// overestimate the group metric.
    pub fn radius_margin(&self, v: u32) -> Option<u32> {
        let (lengths, r) = self.lengths.as_ref()?;
        lengths.get(v as usize).map(|l| r - l)
    }

    pub(crate) fn set_lengths(&mut self, lengths: Vec<u32>, radius: u32) {
        self.lengths = Some((lengths, radius));
    }

    /// Scaled single-source distances; `None` marks unreachable vertices.
    pub fn scaled_distances_from(&self, src: u32) -> Vec<Option<u64>> {
        self.dijkstra(src).0
    }

    fn dijkstra(&self, src: u32) -> (Vec<Option<u64>>, Vec<u32>) {
        let n = self.adj.len();
        let mut dist: Vec<Option<u64>> = vec![None; n];
        let mut parent = vec![u32::MAX; n];
        let mut heap = BinaryHeap::new();
        dist[src as usize] = Some(0);
        heap.push(Reverse((0u64, src)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if dist[u as usize].is_some_and(|best| d > best) {
                continue;
            }
            for &(v, w) in &self.adj[u as usize] {
                let nd = d + u64::from(w);
                if dist[v as usize].map_or(true, |old| nd < old) {
                    dist[v as usize] = Some(nd);
                    parent[v as usize] = u;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        (dist, parent)
    }

    pub fn scaled_distance(&self, u: u32, v: u32) -> Result<u64, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.scaled_distances_from(u)[v as usize].ok_or(GraphError::Disconnected(u, v))
    }

    /// Exact shortest-path length.
    pub fn distance(&self, u: u32, v: u32) -> Result<Rational64, GraphError> {
        Ok(Rational64::new(self.scaled_distance(u, v)? as i64, 2))
    }

    /// All-pairs scaled distances. Fails on disconnected graphs.
    pub fn all_pairs(&self) -> Result<Vec<Vec<u64>>, GraphError> {
        (0..self.adj.len() as u32)
            .map(|u| {
                self.scaled_distances_from(u)
                    .into_iter()
                    .enumerate()
                    .map(|(v, d)| d.ok_or(GraphError::Disconnected(u, v as u32)))
                    .collect()
            })
            .collect()
    }

    /// A shortest path from `u` to `v`.
    pub fn shortest_path(&self, u: u32, v: u32) -> Result<GraphPath, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let (dist, parent) = self.dijkstra(u);
        let total = dist[v as usize].ok_or(GraphError::Disconnected(u, v))?;
        let mut vertices = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x as usize];
            vertices.push(x);
        }
        vertices.reverse();
        Ok(GraphPath { vertices, scaled_weight: total })
    }

    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || self.scaled_distances_from(0).iter().all(Option::is_some)
    }

    fn check_vertex(&self, v: u32) -> Result<(), GraphError> {
        if (v as usize) < self.adj.len() {
            Ok(())
        } else {
            Err(GraphError::NoSuchVertex(v))
        }
    }
}

/// A walk in a [`MetricGraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphPath {
    vertices: Vec<u32>,
    scaled_weight: u64,
}

impl GraphPath {
    /// Checks adjacency of consecutive vertices and sums the edge weights.
    pub fn new(graph: &MetricGraph, vertices: Vec<u32>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        graph.check_vertex(vertices[0])?;
        let mut total = 0u64;
        for w in vertices.windows(2) {
            let weight = graph.edge_weight(w[0], w[1]).ok_or(GraphError::NotAdjacent(w[0], w[1]))?;
            total += u64::from(weight);
        }
        Ok(GraphPath { vertices, scaled_weight: total })
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn scaled_weight(&self) -> u64 {
        self.scaled_weight
    }

    pub fn length(&self) -> Rational64 {
        Rational64::new(self.scaled_weight as i64, 2)
    }

    /// Scaled arc-length parameter of each vertex along the path.
    pub fn scaled_positions(&self, graph: &MetricGraph) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.vertices.len());
        let mut acc = 0u64;
        out.push(0);
        for w in self.vertices.windows(2) {
            acc += u64::from(graph.edge_weight(w[0], w[1]).expect("validated path"));
            out.push(acc);
        }
        out
    }
}

/// Cayley graph of the ball: one vertex per element, an edge of scaled
/// weight 2 between `g` and `g·s` for every symmetric generator `s` with both
/// endpoints in the ball. Parallel edges collapse.
pub fn cayley_graph(model: &GroupModel, ball: &Ball) -> MetricGraph {
    let labels = ball.elements().iter().map(|e| e.to_string()).collect();
    let mut g = MetricGraph::new(labels);
    let mut seen = BTreeSet::new();
    for (i, x) in ball.elements().iter().enumerate() {
        for s in ball.generators() {
            if let Some(j) = ball.index_of(&model.mul(x, s)) {
                let key = (i.min(j), i.max(j));
                if i != j && seen.insert(key) {
                    g.add_edge(key.0 as u32, key.1 as u32, 2).expect("ball indices are valid");
                }
            }
        }
    }
    g.set_lengths(ball.lengths().to_vec(), ball.radius());
    g
}
