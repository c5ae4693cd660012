//! Facet-list simplicial complexes and the basic operations on them:
//! faces, links, stars, induced subcomplexes, simplicial complements,
//! edge graphs, joins and the pseudomanifold predicates.
//!
//! Only facets are stored; lower faces are implicit. All operations return
//! new complexes, so values are safe to share across threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertex labels are arbitrary non-negative integers, preserved through
/// every operation. Relabelings are explicit and returned, never silent.
pub type Vertex = u32;

/// A simplex as a strictly increasing sequence of vertex labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from a vertex collection, sorting and deduplicating.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn num_vertices(&self) -> usize {
        self.0.len()
    }

    /// Dimension; panics on the empty sentinel.
    pub fn dim(&self) -> usize {
        assert!(!self.0.is_empty(), "empty simplex has no dimension");
        self.0.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| other.contains(*v)).collect())
    }

    pub fn minus(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn without(&self, v: Vertex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|w| *w != v).collect())
    }

    pub fn with(&self, v: Vertex) -> Simplex {
        let mut s = self.0.clone();
        match s.binary_search(&v) {
            Ok(_) => {}
            Err(i) => s.insert(i, v),
        }
        Simplex(s)
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.intersection(other).is_empty()
    }

    /// All subsets with `k + 1` vertices, i.e. the k-faces of this simplex.
    pub fn subfaces(&self, k: usize) -> impl Iterator<Item = Simplex> + '_ {
        self.0.iter().copied().combinations(k + 1).map(Simplex)
    }

    /// Applies a vertex relabeling. The map must be injective on the simplex.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Simplex {
        Simplex::new(self.0.iter().map(|v| map.get(v).copied().unwrap_or(*v)))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(" "))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<const N: usize> From<[Vertex; N]> for Simplex {
    fn from(v: [Vertex; N]) -> Self {
        Simplex::new(v)
    }
}

/// A simplicial complex given by its facet list. Facets are pairwise
/// incomparable; all lower faces are implicit.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    facets: BTreeSet<Simplex>,
    dim: usize,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex[dim {}; {}]", self.dim, self.facets.iter().join(", "))
    }
}

impl SimplicialComplex {
    /// Builds a complex from maximal faces. Faces contained in another face
    /// are dropped, so any face collection is a valid input. Errors on an
    /// empty collection.
    pub fn from_facets(faces: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let faces: BTreeSet<Simplex> = faces.into_iter().filter(|s| !s.is_empty()).collect();
        if faces.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let facets: BTreeSet<Simplex> = faces
            .iter()
            .filter(|s| !faces.iter().any(|t| *s != t && s.is_subset_of(t)))
            .cloned()
            .collect();
        let dim = facets.iter().map(|s| s.dim()).max().unwrap();
        Ok(SimplicialComplex { facets, dim })
    }

    pub fn facets(&self) -> impl Iterator<Item = &Simplex> {
        self.facets.iter()
    }

    pub fn facet_set(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|s| s.dim() == self.dim)
    }

    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.facets.iter().flat_map(|s| s.vertices().iter().copied()).collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    pub fn max_vertex(&self) -> Vertex {
        *self.vertices().iter().next_back().expect("complex is nonempty")
    }

    pub fn has_face(&self, s: &Simplex) -> bool {
        !s.is_empty() && self.facets.iter().any(|f| s.is_subset_of(f))
    }

    pub fn is_facet(&self, s: &Simplex) -> bool {
        self.facets.contains(s)
    }

    /// All k-faces. Out-of-range k yields the empty set.
    pub fn faces(&self, k: usize) -> BTreeSet<Simplex> {
        let mut out = BTreeSet::new();
        if k > self.dim {
            return out;
        }
        for f in &self.facets {
            if f.dim() >= k {
                out.extend(f.subfaces(k));
            }
        }
        out
    }

    /// Face counts (f_0, ..., f_dim).
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim).map(|k| self.faces(k).len()).collect()
    }

    pub fn num_edges(&self) -> usize {
        self.faces(1).len()
    }

    /// Whether `other`'s faces are all faces of `self`.
    pub fn contains_subcomplex(&self, other: &SimplicialComplex) -> bool {
        other.facets.iter().all(|f| self.has_face(f))
    }

    /// lk(s): faces disjoint from `s` whose union with `s` is a face.
    /// The link of a facet is the empty complex, reported as an error here
    /// since an empty complex has no facet-list representation.
    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex> {
        if !self.has_face(s) {
            return Err(Error::NotAFace(s.clone()));
        }
        let link_facets: BTreeSet<Simplex> = self
            .facets
            .iter()
            .filter(|f| s.is_subset_of(f))
            .map(|f| f.minus(s))
            .filter(|f| !f.is_empty())
            .collect();
        if link_facets.is_empty() {
            return Err(Error::EmptyComplex);
        }
        SimplicialComplex::from_facets(link_facets)
    }

    /// Vertex degree: number of vertices in the link.
    pub fn degree(&self, v: Vertex) -> Result<usize> {
        Ok(self.link(&Simplex::new([v]))?.num_vertices())
    }

    /// st(s): the subcomplex generated by the facets containing `s`.
    pub fn star(&self, s: &Simplex) -> Result<SimplicialComplex> {
        if !self.has_face(s) {
            return Err(Error::NotAFace(s.clone()));
        }
        SimplicialComplex::from_facets(self.facets.iter().filter(|f| s.is_subset_of(f)).cloned())
    }

    /// Induced subcomplex on the vertex set `u`.
    pub fn induced(&self, u: &BTreeSet<Vertex>) -> Result<SimplicialComplex> {
        if u.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let verts = self.vertices();
        if let Some(v) = u.iter().find(|v| !verts.contains(v)) {
            return Err(Error::UnknownVertex(*v));
        }
        let pieces: Vec<Simplex> = self
            .facets
            .iter()
            .map(|f| Simplex(f.vertices().iter().copied().filter(|v| u.contains(v)).collect()))
            .filter(|s| !s.is_empty())
            .collect();
        SimplicialComplex::from_facets(pieces)
    }

    /// Simplicial complement C(Y, X): the induced subcomplex on V(X) \ Y.
    pub fn complement(&self, y: &BTreeSet<Vertex>) -> Result<SimplicialComplex> {
        if y.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let rest: BTreeSet<Vertex> = self.vertices().difference(y).copied().collect();
        if rest.is_empty() {
            return Err(Error::EmptyComplement);
        }
        self.induced(&rest)
    }

    /// The 1-skeleton as a graph.
    pub fn edge_graph(&self) -> Graph<Vertex> {
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_node(v);
        }
        for e in self.faces(1) {
            g.add_edge(e.vertices()[0], e.vertices()[1]);
        }
        g
    }

    /// The graph on the non-edges (missing edges) of the complex.
    pub fn non_edge_graph(&self) -> Graph<Vertex> {
        let verts: Vec<Vertex> = self.vertices().into_iter().collect();
        let edges = self.faces(1);
        let mut g = Graph::new();
        for &v in &verts {
            g.add_node(v);
        }
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                if !edges.contains(&Simplex::new([verts[i], verts[j]])) {
                    g.add_edge(verts[i], verts[j]);
                }
            }
        }
        g
    }

    /// Λ(K): facets adjacent when they share a (dim−1)-face.
    pub fn facet_adjacency(&self) -> Result<Graph<Simplex>> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let facets: Vec<&Simplex> = self.facets.iter().collect();
        let mut g = Graph::new();
        for f in &facets {
            g.add_node((*f).clone());
        }
        for i in 0..facets.len() {
            for j in i + 1..facets.len() {
                if facets[i].intersection(facets[j]).num_vertices() == self.dim {
                    g.add_edge(facets[i].clone(), facets[j].clone());
                }
            }
        }
        Ok(g)
    }

    /// Ridge incidence: each (dim−1)-face with the facets containing it.
    pub fn ridge_incidence(&self) -> BTreeMap<Simplex, Vec<Simplex>> {
        let mut inc: BTreeMap<Simplex, Vec<Simplex>> = BTreeMap::new();
        for f in &self.facets {
            for r in f.subfaces(self.dim.saturating_sub(1)) {
                inc.entry(r).or_default().push(f.clone());
            }
        }
        inc
    }

    /// Connectivity: edge-graph connectivity for dim ≥ 1; a 0-dimensional
    /// complex is connected iff it has a single vertex.
    pub fn is_connected(&self) -> bool {
        if self.dim == 0 {
            return self.num_vertices() == 1;
        }
        self.edge_graph().is_connected()
    }

    /// Every (dim−1)-face lies in exactly two facets.
    pub fn is_weak_pseudomanifold(&self) -> Result<bool> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        if self.dim == 0 {
            return Ok(self.num_facets() == 2);
        }
        Ok(self.ridge_incidence().values().all(|fs| fs.len() == 2))
    }

    /// Strongly connected weak pseudomanifold. By convention the standard
    /// 0-sphere is the only 0-pseudomanifold.
    pub fn is_pseudomanifold(&self) -> Result<bool> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        if self.dim == 0 {
            return Ok(self.num_facets() == 2);
        }
        Ok(self.is_weak_pseudomanifold()? && self.facet_adjacency()?.is_connected())
    }

    /// Connected weak pseudomanifold whose links of faces of dimension
    /// ≤ dim−2 are all connected.
    pub fn is_normal_pseudomanifold(&self) -> Result<bool> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        if self.dim == 0 {
            return Ok(self.num_facets() == 2);
        }
        if !self.is_weak_pseudomanifold()? || !self.is_connected() {
            return Ok(false);
        }
        for k in 0..self.dim.saturating_sub(1) {
            for s in self.faces(k) {
                if !self.link(&s)?.is_connected() {
                    return Ok(false);
                }
            }
        }
        // A normal pseudomanifold is a pseudomanifold.
        debug_assert!(self.is_pseudomanifold()?);
        Ok(true)
    }

    /// Join X ∗ Y. Y is relabeled onto a disjoint block when vertex sets
    /// collide; the (possibly identity) relabeling of Y is returned.
    pub fn join(&self, other: &SimplicialComplex) -> (SimplicialComplex, BTreeMap<Vertex, Vertex>) {
        let mine = self.vertices();
        let theirs = other.vertices();
        let relabel: BTreeMap<Vertex, Vertex> = if mine.is_disjoint(&theirs) {
            theirs.iter().map(|v| (*v, *v)).collect()
        } else {
            let base = mine.iter().chain(theirs.iter()).max().unwrap() + 1;
            theirs.iter().enumerate().map(|(i, v)| (*v, base + i as Vertex)).collect()
        };
        let facets = self
            .facets
            .iter()
            .cartesian_product(other.facets.iter())
            .map(|(f, g)| f.union(&g.relabel(&relabel)));
        let joined = SimplicialComplex::from_facets(facets).expect("join of nonempty complexes");
        (joined, relabel)
    }

    /// The crossing-edge graph G of the two-sidedness criterion: nodes are
    /// the edges with exactly one end in `a`, adjacent when their union is a
    /// 2-face. Requires the induced subcomplex on `a` to be a (dim−1)-dimensional
    /// normal pseudomanifold inside a normal pseudomanifold of dim ≥ 2.
    pub fn one_end_graph(&self, a: &BTreeSet<Vertex>) -> Result<Graph<Simplex>> {
        if self.dim < 2 {
            return Err(Error::OneEndHypothesis("ambient dimension must be >= 2".into()));
        }
        if !self.is_normal_pseudomanifold()? {
            return Err(Error::OneEndHypothesis("ambient complex is not a normal pseudomanifold".into()));
        }
        let induced = self.induced(a)?;
        if induced.dim() + 1 != self.dim {
            return Err(Error::OneEndHypothesis(format!(
                "induced subcomplex has dimension {} instead of {}",
                induced.dim(),
                self.dim - 1
            )));
        }
        if !induced.is_normal_pseudomanifold()? {
            return Err(Error::OneEndHypothesis("induced subcomplex is not a normal pseudomanifold".into()));
        }
        let crossing: Vec<Simplex> = self
            .faces(1)
            .into_iter()
            .filter(|e| e.vertices().iter().filter(|v| a.contains(v)).count() == 1)
            .collect();
        let triangles = self.faces(2);
        let mut g = Graph::new();
        for e in &crossing {
            g.add_node(e.clone());
        }
        for i in 0..crossing.len() {
            for j in i + 1..crossing.len() {
                let u = crossing[i].union(&crossing[j]);
                if u.num_vertices() == 3 && triangles.contains(&u) {
                    g.add_edge(crossing[i].clone(), crossing[j].clone());
                }
            }
        }
        Ok(g)
    }

    /// Applies an injective vertex relabeling to the whole complex.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.facets.iter().map(|f| f.relabel(map)))
            .expect("relabeling preserves nonemptiness")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn faces_of_standard_spheres() {
        let s0 = build::standard_sphere(0);
        assert_eq!(s0.faces(0), BTreeSet::from([Simplex::from([1]), Simplex::from([2])]));
        let s3 = build::standard_sphere(3);
        assert_eq!(s3.faces(1).len(), 10);
        assert_eq!(s3.f_vector(), vec![5, 10, 10, 5]);
    }

    #[test]
    fn link_and_star() {
        let sd = build::standard_sphere(3);
        let lk = sd.link(&Simplex::from([1])).unwrap();
        // Link of a vertex in S^3_5 is S^2_4.
        assert_eq!(lk.dim(), 2);
        assert_eq!(lk.num_vertices(), 4);
        assert!(lk.is_normal_pseudomanifold().unwrap());

        let c = build::cycle(7).unwrap();
        let lk = c.link(&Simplex::from([3])).unwrap();
        assert_eq!(lk.facet_set(), build::standard_sphere(0).relabel(&BTreeMap::from([(1, 2), (2, 4)])).facet_set());

        let st = build::cycle(4).unwrap().star(&Simplex::from([2])).unwrap();
        assert_eq!(
            st.facet_set(),
            &BTreeSet::from([Simplex::from([1, 2]), Simplex::from([2, 3])])
        );

        let s0 = build::standard_sphere(0);
        let st = s0.star(&Simplex::from([1])).unwrap();
        assert_eq!(st.facet_set(), &BTreeSet::from([Simplex::from([1])]));

        assert!(matches!(sd.link(&Simplex::from([1, 99])), Err(Error::NotAFace(_))));
    }

    #[test]
    fn induced_and_complement() {
        let k = build::cycle(5).unwrap();
        // Identity.
        assert_eq!(&k.induced(&k.vertices()).unwrap(), &k);
        // Complement of one vertex of a 5-cycle is a path.
        let p = k.complement(&BTreeSet::from([1])).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(p.num_edges(), 3);
        assert_eq!(p.num_vertices(), 4);

        // Any 4 vertices of S^3_5 induce the solid tetrahedron.
        let s3 = build::standard_sphere(3);
        let t = s3.induced(&BTreeSet::from([1, 2, 3, 4])).unwrap();
        assert_eq!(t.facet_set(), &BTreeSet::from([Simplex::from([1, 2, 3, 4])]));

        // Complement of a facet in S^d_{d+2} is a single vertex.
        let c = s3.complement(&BTreeSet::from([1, 2, 3, 4])).unwrap();
        assert_eq!(c.facet_set(), &BTreeSet::from([Simplex::from([5])]));

        assert!(matches!(k.induced(&BTreeSet::new()), Err(Error::EmptyVertexSet)));
        assert!(matches!(k.complement(&k.vertices()), Err(Error::EmptyComplement)));
    }

    #[test]
    fn edge_and_facet_graphs() {
        let s3 = build::standard_sphere(3);
        let g = s3.edge_graph();
        assert_eq!(g.num_nodes(), 5);
        assert_eq!(g.num_edges(), 10); // K_5
        let lam = s3.facet_adjacency().unwrap();
        assert!(lam.is_regular(4)); // K_5 on facets
        assert_eq!(lam.num_edges(), 10);

        let c5 = build::cycle(5).unwrap();
        let lam = c5.facet_adjacency().unwrap();
        assert!(lam.is_connected());
        assert!(lam.is_regular(2)); // 5-cycle
        assert_eq!(lam.num_nodes(), 5);
    }

    #[test]
    fn pseudomanifold_predicates() {
        for d in 0..4 {
            let s = build::standard_sphere(d);
            assert!(s.is_weak_pseudomanifold().unwrap());
            assert!(s.is_pseudomanifold().unwrap());
            assert!(s.is_normal_pseudomanifold().unwrap());
        }
        // Two tetrahedron boundaries wedged at a vertex: weak pm but not normal.
        let a = build::standard_sphere(2);
        let b = a.relabel(&BTreeMap::from([(1, 1), (2, 5), (3, 6), (4, 7)]));
        let wedge = SimplicialComplex::from_facets(a.facets().chain(b.facets()).cloned()).unwrap();
        assert!(wedge.is_weak_pseudomanifold().unwrap());
        assert!(!wedge.is_normal_pseudomanifold().unwrap());

        let ball = build::standard_ball(2);
        assert!(!ball.is_weak_pseudomanifold().unwrap());

        let impure =
            SimplicialComplex::from_facets([Simplex::from([1, 2, 3]), Simplex::from([4, 5])]).unwrap();
        assert!(matches!(impure.is_weak_pseudomanifold(), Err(Error::NotPure)));
    }

    #[test]
    fn join_basics() {
        let s0 = build::standard_sphere(0);
        let (s1, _) = s0.join(&s0);
        // Suspension of two points is a 4-cycle.
        assert_eq!(s1.dim(), 1);
        assert_eq!(s1.num_vertices(), 4);
        assert!(s1.is_normal_pseudomanifold().unwrap());
        assert_eq!(s1.num_edges(), 4);

        // Joins of standard spheres are normal pseudomanifolds on m+n+4 vertices.
        for (m, n) in [(0, 1), (1, 1), (0, 2)] {
            let (j, _) = build::standard_sphere(m).join(&build::standard_sphere(n));
            assert_eq!(j.dim(), m + n + 1);
            assert_eq!(j.num_vertices(), m + n + 4);
            assert!(j.is_normal_pseudomanifold().unwrap());
        }
    }

    #[test]
    fn join_f_vector_is_convolution() {
        let x = build::cycle(5).unwrap();
        let y = build::standard_sphere(1);
        let (j, _) = x.join(&y);
        // Augmented f-vectors (with f_{-1}=1) convolve.
        let fx = x.f_vector();
        let fy = y.f_vector();
        let aug = |f: &[usize]| {
            let mut a = vec![1];
            a.extend_from_slice(f);
            a
        };
        let (ax, ay) = (aug(&fx), aug(&fy));
        let fj = aug(&j.f_vector());
        for k in 0..fj.len() {
            let conv: usize =
                (0..=k).map(|i| ax.get(i).copied().unwrap_or(0) * ay.get(k - i).copied().unwrap_or(0)).sum();
            assert_eq!(fj[k], conv, "degree {k}");
        }
    }

    #[test]
    fn one_end_graph_rejects_full_vertex_set() {
        let k = build::kuhnel(3).unwrap();
        let err = k.one_end_graph(&k.vertices());
        assert!(matches!(err, Err(Error::OneEndHypothesis(_))));
    }

    #[test]
    fn facet_maximalization() {
        let k = SimplicialComplex::from_facets([
            Simplex::from([1, 2]),
            Simplex::from([1, 2, 3]),
            Simplex::from([4]),
        ])
        .unwrap();
        assert_eq!(k.num_facets(), 2);
        assert!(k.is_facet(&Simplex::from([1, 2, 3])));
        assert!(k.is_facet(&Simplex::from([4])));
    }
}
