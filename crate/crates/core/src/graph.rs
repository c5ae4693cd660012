//! Undirected simple graphs over arbitrary ordered node labels.
//!
//! Used for edge graphs, facet adjacency graphs, non-edge graphs and the
//! crossing-edge graph of the handle-deletion construction, so the node type
//! is generic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph<N: Ord + Clone> {
    adj: BTreeMap<N, BTreeSet<N>>,
}

impl<N: Ord + Clone> Graph<N> {
    pub fn new() -> Self {
        Graph { adj: BTreeMap::new() }
    }

    pub fn add_node(&mut self, n: N) {
        self.adj.entry(n).or_default();
    }

    /// Adds an undirected edge, inserting the endpoints if necessary.
    pub fn add_edge(&mut self, a: N, b: N) {
        assert!(a != b, "loops are not allowed");
        self.adj.entry(a.clone()).or_default().insert(b.clone());
        self.adj.entry(b).or_default().insert(a);
    }

    pub fn has_node(&self, n: &N) -> bool {
        self.adj.contains_key(n)
    }

    pub fn has_edge(&self, a: &N, b: &N) -> bool {
        self.adj.get(a).is_some_and(|s| s.contains(b))
    }

    pub fn nodes(&self) -> impl Iterator<Item = &N> {
        self.adj.keys()
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, n: &N) -> usize {
        self.adj.get(n).map_or(0, |s| s.len())
    }

    pub fn neighbors(&self, n: &N) -> impl Iterator<Item = &N> {
        self.adj.get(n).into_iter().flatten()
    }

    /// Edges as ordered pairs (a < b), in lexicographic order.
    pub fn edges(&self) -> Vec<(N, N)> {
        let mut out = Vec::new();
        for (a, nbrs) in &self.adj {
            for b in nbrs {
                if a < b {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    pub fn remove_node(&mut self, n: &N) {
        if let Some(nbrs) = self.adj.remove(n) {
            for b in nbrs {
                if let Some(s) = self.adj.get_mut(&b) {
                    s.remove(n);
                }
            }
        }
    }

    pub fn connected_components(&self) -> Vec<BTreeSet<N>> {
        let mut seen: BTreeSet<N> = BTreeSet::new();
        let mut comps = Vec::new();
        for start in self.adj.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start.clone()]);
            seen.insert(start.clone());
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(&u) {
                    if seen.insert(v.clone()) {
                        queue.push_back(v.clone());
                    }
                }
                comp.insert(u);
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// BFS distance; `None` if `b` is unreachable from `a`.
    pub fn distance(&self, a: &N, b: &N) -> Option<usize> {
        self.shortest_path(a, b).map(|p| p.len() - 1)
    }

    /// A shortest path from `a` to `b`, inclusive of both endpoints.
    pub fn shortest_path(&self, a: &N, b: &N) -> Option<Vec<N>> {
        if !self.has_node(a) || !self.has_node(b) {
            return None;
        }
        if a == b {
            return Some(vec![a.clone()]);
        }
        let mut pred: BTreeMap<N, N> = BTreeMap::new();
        let mut queue = VecDeque::from([a.clone()]);
        let mut seen = BTreeSet::from([a.clone()]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(&u) {
                if seen.insert(v.clone()) {
                    pred.insert(v.clone(), u.clone());
                    if v == b {
                        let mut path = vec![b.clone()];
                        let mut cur = b;
                        while let Some(p) = pred.get(cur) {
                            path.push(p.clone());
                            cur = p;
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(v.clone());
                }
            }
        }
        None
    }

    pub fn is_clique(&self, set: &BTreeSet<N>) -> bool {
        let v: Vec<&N> = set.iter().collect();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if !self.has_edge(v[i], v[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.values().all(|s| s.len() == k)
    }

    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.adj.values().map(|s| s.len()).collect();
        ds.sort_unstable();
        ds
    }

    /// Complete graph on the given nodes.
    pub fn complete(nodes: impl IntoIterator<Item = N>) -> Self {
        let nodes: Vec<N> = nodes.into_iter().collect();
        let mut g = Graph::new();
        for n in &nodes {
            g.add_node(n.clone());
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                g.add_edge(nodes[i].clone(), nodes[j].clone());
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> Graph<u32> {
        let mut g = Graph::new();
        for i in 0..n.saturating_sub(1) {
            g.add_edge(i, i + 1);
        }
        g
    }

    #[test]
    fn bfs_distance_on_path() {
        let g = path(6);
        assert_eq!(g.distance(&0, &5), Some(5));
        assert_eq!(g.distance(&2, &2), Some(0));
        assert_eq!(g.shortest_path(&0, &3).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn components_and_cliques() {
        let mut g = path(3);
        g.add_edge(10, 11);
        assert_eq!(g.connected_components().len(), 2);
        assert!(!g.is_connected());
        let k4 = Graph::complete(0..4u32);
        assert!(k4.is_clique(&(0..4).collect()));
        assert!(k4.is_regular(3));
        assert_eq!(k4.num_edges(), 6);
    }

    #[test]
    fn unreachable_distance_is_none() {
        let mut g = path(2);
        g.add_node(9);
        assert_eq!(g.distance(&0, &9), None);
    }
}
