//! Isomorphism testing and the invariants that separate the handle-addition
//! family: non-edge graphs, backtracking complex/graph isomorphism,
//! automorphism counting and stacked-sphere reconstruction from the edge
//! graph.
//!
//! The search is plain backtracking with degree refinement. Instances stay
//! under ~40 vertices, so no canonical-labelling machinery is attempted.
//! Candidates are tried in ascending label order, making witnesses
//! deterministic.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Outcome of an isomorphism search: a vertex bijection or the invariant
/// that refutes one.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum IsoWitness {
    Mapping(BTreeMap<Vertex, Vertex>),
    Refutation(String),
}

impl IsoWitness {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoWitness::Mapping(_))
    }

    pub fn mapping(&self) -> Option<&BTreeMap<Vertex, Vertex>> {
        match self {
            IsoWitness::Mapping(m) => Some(m),
            IsoWitness::Refutation(_) => None,
        }
    }
}

/// Nodes are the vertices of K; edges are the vertex pairs absent from K.
pub fn non_edge_graph(k: &SimplicialComplex) -> Graph<Vertex> {
    k.non_edge_graph()
}

/// Multiset of component profiles of a graph, where a profile is the sorted
/// degree sequence of the component. Cheap isomorphism invariant.
pub fn component_profiles(g: &Graph<Vertex>) -> Vec<Vec<usize>> {
    let mut profiles: Vec<Vec<usize>> = g
        .connected_components()
        .into_iter()
        .map(|c| {
            let mut degs: Vec<usize> = c.iter().map(|v| g.degree(v)).collect();
            degs.sort();
            degs
        })
        .collect();
    profiles.sort();
    profiles
}

struct ComplexSearch<'a> {
    left: &'a SimplicialComplex,
    left_vertices: Vec<Vertex>,
    right_vertices: Vec<Vertex>,
    /// Invariant class per vertex: (edge degree, facet count).
    left_class: BTreeMap<Vertex, (usize, usize)>,
    right_class: BTreeMap<Vertex, (usize, usize)>,
    /// Number of facets containing each vertex pair.
    left_pair: BTreeMap<(Vertex, Vertex), usize>,
    right_pair: BTreeMap<(Vertex, Vertex), usize>,
    right_facets: BTreeSet<Simplex>,
    all: bool,
    witnesses: Vec<BTreeMap<Vertex, Vertex>>,
}

fn vertex_classes(k: &SimplicialComplex) -> BTreeMap<Vertex, (usize, usize)> {
    let g = k.edge_graph();
    k.vertices()
        .into_iter()
        .map(|v| {
            let facets = k.facets().filter(|f| f.contains(v)).count();
            (v, (g.degree(&v), facets))
        })
        .collect()
}

fn pair_facet_counts(k: &SimplicialComplex) -> BTreeMap<(Vertex, Vertex), usize> {
    let mut out = BTreeMap::new();
    for f in k.facets() {
        let vs = f.vertices();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                *out.entry((vs[i], vs[j])).or_insert(0) += 1;
            }
        }
    }
    out
}

impl<'a> ComplexSearch<'a> {
    fn new(left: &'a SimplicialComplex, right: &'a SimplicialComplex, all: bool) -> Self {
        let mut left_vertices: Vec<Vertex> = left.vertices().into_iter().collect();
        // Assign high-constraint vertices first: rarest invariant class, then
        // vertices adjacent to already-placed ones, approximated by sorting on
        // class rarity then label.
        let left_class = vertex_classes(left);
        let right_class = vertex_classes(right);
        let mut class_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for c in left_class.values() {
            *class_count.entry(*c).or_insert(0) += 1;
        }
        left_vertices.sort_by_key(|v| (class_count[&left_class[v]], *v));
        let right_vertices = right.vertices().into_iter().collect();
        ComplexSearch {
            left_pair: pair_facet_counts(left),
            right_pair: pair_facet_counts(right),
            right_facets: right.facet_set().clone(),
            left,
            left_vertices,
            right_vertices,
            left_class,
            right_class,
            all,
            witnesses: Vec::new(),
        }
    }

    fn extend(&mut self, assigned: &mut BTreeMap<Vertex, Vertex>, used: &mut BTreeSet<Vertex>) -> bool {
        if assigned.len() == self.left_vertices.len() {
            // Full bijection; verify facets map onto facets exactly.
            let image: BTreeSet<Simplex> = self
                .left
                .facets()
                .map(|f| Simplex::new(f.vertices().iter().map(|v| assigned[v])))
                .collect();
            if image == self.right_facets {
                self.witnesses.push(assigned.clone());
                return !self.all;
            }
            return false;
        }
        let x = self.left_vertices[assigned.len()];
        let cx = self.left_class[&x];
        for &y in &self.right_vertices.clone() {
            if used.contains(&y) || self.right_class[&y] != cx {
                continue;
            }
            // Pairwise consistency with everything already placed.
            let ok = assigned.iter().all(|(&a, &b)| {
                let key = |u: Vertex, v: Vertex| if u < v { (u, v) } else { (v, u) };
                self.left_pair.get(&key(x, a)) == self.right_pair.get(&key(y, b))
            });
            if !ok {
                continue;
            }
            // Facets fully inside the assigned set must land on facets.
            let closes = self.left.facets().filter(|f| f.contains(x)).all(|f| {
                if !f.vertices().iter().all(|v| *v == x || assigned.contains_key(v)) {
                    return true;
                }
                let image = Simplex::new(f.vertices().iter().map(|v| if *v == x { y } else { assigned[v] }));
                self.right_facets.contains(&image)
            });
            if !closes {
                continue;
            }
            assigned.insert(x, y);
            used.insert(y);
            if self.extend(assigned, used) {
                return true;
            }
            assigned.remove(&x);
            used.remove(&y);
        }
        false
    }

    fn run(mut self) -> Vec<BTreeMap<Vertex, Vertex>> {
        let mut assigned = BTreeMap::new();
        let mut used = BTreeSet::new();
        self.extend(&mut assigned, &mut used);
        self.witnesses
    }
}

/// Cheap refutation invariants, checked before any search.
fn quick_refutation(k1: &SimplicialComplex, k2: &SimplicialComplex) -> Option<String> {
    if k1.dim() != k2.dim() {
        return Some(format!("dimension {} vs {}", k1.dim(), k2.dim()));
    }
    if k1.f_vector() != k2.f_vector() {
        return Some(format!("f-vector {:?} vs {:?}", k1.f_vector(), k2.f_vector()));
    }
    let d1 = k1.edge_graph().degree_multiset();
    let d2 = k2.edge_graph().degree_multiset();
    if d1 != d2 {
        return Some(format!("degree multiset {d1:?} vs {d2:?}"));
    }
    let p1 = component_profiles(&k1.non_edge_graph());
    let p2 = component_profiles(&k2.non_edge_graph());
    if p1 != p2 {
        return Some(format!("non-edge component profile {p1:?} vs {p2:?}"));
    }
    let mut c1: Vec<_> = vertex_classes(k1).into_values().collect();
    let mut c2: Vec<_> = vertex_classes(k2).into_values().collect();
    c1.sort();
    c2.sort();
    if c1 != c2 {
        return Some("vertex (degree, facet-count) class mismatch".into());
    }
    None
}

/// Searches for a vertex bijection carrying the facets of K1 exactly onto
/// the facets of K2.
pub fn complex_isomorphism(k1: &SimplicialComplex, k2: &SimplicialComplex) -> IsoWitness {
    if let Some(reason) = quick_refutation(k1, k2) {
        return IsoWitness::Refutation(reason);
    }
    match ComplexSearch::new(k1, k2, false).run().into_iter().next() {
        Some(m) => IsoWitness::Mapping(m),
        None => IsoWitness::Refutation("exhaustive search found no facet-preserving bijection".into()),
    }
}

/// Number of self-isomorphisms of K.
pub fn automorphism_count(k: &SimplicialComplex) -> usize {
    ComplexSearch::new(k, k, true).run().len()
}

/// Graph isomorphism by the same backtracking scheme, on degree classes.
pub fn graph_isomorphism(g1: &Graph<Vertex>, g2: &Graph<Vertex>) -> IsoWitness {
    if g1.num_nodes() != g2.num_nodes() || g1.num_edges() != g2.num_edges() {
        return IsoWitness::Refutation("size mismatch".into());
    }
    if g1.degree_multiset() != g2.degree_multiset() {
        return IsoWitness::Refutation("degree multiset mismatch".into());
    }
    let n1: Vec<Vertex> = g1.nodes().cloned().collect();
    let n2: Vec<Vertex> = g2.nodes().cloned().collect();
    let mut assigned: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut used: BTreeSet<Vertex> = BTreeSet::new();
    fn extend(
        g1: &Graph<Vertex>,
        g2: &Graph<Vertex>,
        n1: &[Vertex],
        n2: &[Vertex],
        assigned: &mut BTreeMap<Vertex, Vertex>,
        used: &mut BTreeSet<Vertex>,
    ) -> bool {
        if assigned.len() == n1.len() {
            return true;
        }
        let x = n1[assigned.len()];
        for &y in n2 {
            if used.contains(&y) || g1.degree(&x) != g2.degree(&y) {
                continue;
            }
            if !assigned.iter().all(|(a, b)| g1.has_edge(a, &x) == g2.has_edge(b, &y)) {
                continue;
            }
            assigned.insert(x, y);
            used.insert(y);
            if extend(g1, g2, n1, n2, assigned, used) {
                return true;
            }
            assigned.remove(&x);
            used.remove(&y);
        }
        false
    }
    if extend(g1, g2, &n1, &n2, &mut assigned, &mut used) {
        IsoWitness::Mapping(assigned)
    } else {
        IsoWitness::Refutation("exhaustive search found no edge-preserving bijection".into())
    }
}

/// Rebuilds a stacked d-sphere from its edge graph: repeatedly remove a node
/// of degree d+1 whose neighborhood is a clique, down to K_{d+2}, then replay
/// the removals as starring steps in reverse.
pub fn reconstruct_stacked(g: &Graph<Vertex>, d: usize) -> Result<SimplicialComplex> {
    if d == 0 {
        return Err(Error::InvalidArgument("reconstruction needs d >= 1".into()));
    }
    fn search(
        g: &Graph<Vertex>,
        d: usize,
        steps: &mut Vec<(Simplex, Vertex)>,
        retry: bool,
    ) -> Result<SimplicialComplex> {
        if g.num_nodes() == d + 2 {
            let all: BTreeSet<Vertex> = g.nodes().cloned().collect();
            if !g.is_clique(&all) {
                return Err(Error::NotStackedGraph);
            }
            let verts: Vec<Vertex> = g.nodes().cloned().collect();
            let all = Simplex::new(verts.iter().copied());
            let facets: Vec<Simplex> = all.subfaces(d).into_iter().collect();
            let mut k = SimplicialComplex::from_facets(facets)?;
            for (neighborhood, v) in steps.iter().rev() {
                k = crate::build::star_vertex(&k, neighborhood, *v)?;
            }
            return Ok(k);
        }
        let removable: Vec<Vertex> = g
            .nodes()
            .filter(|v| {
                g.degree(v) == d + 1 && {
                    let nb: BTreeSet<Vertex> = g.neighbors(v).cloned().collect();
                    g.is_clique(&nb)
                }
            })
            .cloned()
            .collect();
        if removable.is_empty() {
            return Err(Error::NotStackedGraph);
        }
        // d >= 3: removable nodes are pairwise independent, any order works.
        // d <= 2: a greedy pick can dead-end, so retry the alternatives.
        let candidates: Vec<Vertex> =
            if retry { removable } else { removable.into_iter().take(1).collect() };
        let mut last = Err(Error::NotStackedGraph);
        for v in candidates {
            let neighborhood = Simplex::new(g.neighbors(&v).cloned());
            let mut h = g.clone();
            h.remove_node(&v);
            steps.push((neighborhood, v));
            match search(&h, d, steps, retry) {
                Ok(k) => return Ok(k),
                Err(e) => last = Err(e),
            }
            steps.pop();
        }
        last
    }
    let mut steps = Vec::new();
    match search(g, d, &mut steps, d <= 2) {
        Ok(k) => {
            debug_assert_eq!(&k.edge_graph(), g);
            Ok(k)
        }
        Err(e) => Err(e),
    }
}
