//! Explicit constructions: standard spheres and balls, cycles, starring and
//! collapsing, stacked spheres, the cyclinder boundary ∂N, handle addition
//! and deletion, connected sums, the (2d+3)-vertex bundle triangulation and
//! the partition family of (2d+4)-vertex triangulations.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::partitions::{permutation_for, Partition};
use crate::recognize;

/// A bijection between two disjoint facets of an ambient complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetBijection {
    pub source: Simplex,
    pub target: Simplex,
    /// Pairs (x, ψ(x)), sorted by x.
    pub map: Vec<(Vertex, Vertex)>,
}

impl FacetBijection {
    pub fn new(map: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut map: Vec<(Vertex, Vertex)> = map.into_iter().collect();
        map.sort_unstable();
        let source = Simplex::new(map.iter().map(|p| p.0));
        let target = Simplex::new(map.iter().map(|p| p.1));
        if source.num_vertices() != map.len() || target.num_vertices() != map.len() {
            return Err(Error::InvalidArgument("not a bijection".into()));
        }
        if !source.is_disjoint(&target) {
            return Err(Error::InvalidArgument("source and target facets are not disjoint".into()));
        }
        Ok(FacetBijection { source, target, map })
    }

    pub fn apply(&self, x: Vertex) -> Option<Vertex> {
        self.map.iter().find(|(a, _)| *a == x).map(|(_, b)| *b)
    }

    pub fn inverse(&self) -> FacetBijection {
        FacetBijection::new(self.map.iter().map(|(a, b)| (*b, *a))).expect("inverse of a bijection")
    }

    pub fn as_map(&self) -> BTreeMap<Vertex, Vertex> {
        self.map.iter().copied().collect()
    }
}

/// A replayable sequence of starrings: each step names the facet to subdivide
/// and the new vertex label.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarringTrace {
    pub steps: Vec<(Simplex, Vertex)>,
}

/// S^d_{d+2}: all (d+1)-subsets of {1, ..., d+2}.
pub fn standard_sphere(d: usize) -> SimplicialComplex {
    let n = (d + 2) as Vertex;
    SimplicialComplex::from_facets((1..=n).combinations(d + 1).map(Simplex::new))
        .expect("standard sphere is nonempty")
}

/// B^d_{d+1}: the single facet {1, ..., d+1}.
pub fn standard_ball(d: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets([Simplex::new(1..=(d + 1) as Vertex)]).expect("ball is nonempty")
}

/// The n-cycle S^1_n on {1, ..., n}.
pub fn cycle(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
    }
    let mut facets: Vec<Simplex> = (1..n as Vertex).map(|i| Simplex::new([i, i + 1])).collect();
    facets.push(Simplex::new([1, n as Vertex]));
    SimplicialComplex::from_facets(facets)
}

/// Edge count of an n-vertex stacked d-sphere, d ≥ 2: n(d+1) − C(d+2, 2).
pub fn stacked_edge_count(d: usize, n: usize) -> usize {
    n * (d + 1) - (d + 2) * (d + 1) / 2
}

/// Starring the new vertex `v` in the facet `f`: replace `f` by the cones
/// over its ridges with apex `v`.
pub fn star_vertex(k: &SimplicialComplex, f: &Simplex, v: Vertex) -> Result<SimplicialComplex> {
    if !k.is_facet(f) {
        return Err(Error::NotAFacet(f.clone()));
    }
    if f.dim() == 0 {
        return Err(Error::InvalidArgument("cannot star inside a vertex facet".into()));
    }
    if k.vertices().contains(&v) {
        return Err(Error::VertexPresent(v));
    }
    let mut facets: Vec<Simplex> = k.facets().filter(|g| *g != f).cloned().collect();
    facets.extend(f.subfaces(f.dim() - 1).map(|t| t.with(v)));
    SimplicialComplex::from_facets(facets)
}

/// Collapsing a vertex of minimal degree dim+1: the inverse of starring.
pub fn collapse_vertex(k: &SimplicialComplex, v: Vertex) -> Result<SimplicialComplex> {
    let d = k.dim();
    if k.num_vertices() <= d + 2 {
        return Err(Error::AlreadyMinimal);
    }
    let link = k.link(&Simplex::new([v]))?;
    let neighbors = link.vertices();
    if neighbors.len() != d + 1 {
        return Err(Error::NotCollapsible(v));
    }
    let filled = Simplex::new(neighbors);
    if k.has_face(&filled) {
        // The neighbor set is already a face; collapsing would not invert a
        // starring.
        return Err(Error::NotCollapsible(v));
    }
    let mut facets: Vec<Simplex> = k.facets().filter(|f| !f.contains(v)).cloned().collect();
    facets.push(filled);
    SimplicialComplex::from_facets(facets)
}

/// Replays a starring trace from the standard d-sphere.
pub fn stacked_sphere(d: usize, trace: &StarringTrace) -> Result<SimplicialComplex> {
    replay_trace(standard_sphere(d), trace)
}

/// Replays a starring trace from an arbitrary base complex.
pub fn replay_trace(base: SimplicialComplex, trace: &StarringTrace) -> Result<SimplicialComplex> {
    let mut k = base;
    for (i, (f, v)) in trace.steps.iter().enumerate() {
        k = star_vertex(&k, f, *v).map_err(|e| Error::BadTraceStep(i, e.to_string()))?;
    }
    Ok(k)
}

/// A pseudorandom n-vertex stacked d-sphere, starring into uniformly chosen
/// facets with fresh labels d+3, d+4, ...
pub fn random_stacked_sphere(d: usize, n: usize, rng: &mut impl Rng) -> Result<SimplicialComplex> {
    if n < d + 2 {
        return Err(Error::InvalidArgument(format!("need n >= d+2, got n={n}, d={d}")));
    }
    let mut k = standard_sphere(d);
    for v in (d + 3) as Vertex..=n as Vertex {
        let facets: Vec<Simplex> = k.facets().cloned().collect();
        let f = &facets[rng.gen_range(0..facets.len())];
        k = star_vertex(&k, f, v)?;
    }
    Ok(k)
}

/// Facets of the boundary complex of a pure (d+1)-complex: the d-faces lying
/// in exactly one facet.
pub fn boundary_complex(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    if !k.is_pure() {
        return Err(Error::NotPure);
    }
    let d = k.dim() - 1;
    let mut count: BTreeMap<Simplex, usize> = BTreeMap::new();
    for f in k.facets() {
        for r in f.subfaces(d) {
            *count.entry(r).or_default() += 1;
        }
    }
    SimplicialComplex::from_facets(count.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r))
}

/// ∂N^{d+1}_{m+d+1}: boundary of the pure (d+1)-complex on {1, ..., m+d+1}
/// whose facets are the m windows of d+2 consecutive integers. A stacked
/// d-sphere with facets A_m = {1..d+1} and B_m = {m+1..m+d+1}.
pub fn boundary_n(d: usize, m: usize) -> Result<SimplicialComplex> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("boundary_n needs d >= 2, got {d}")));
    }
    if m < 1 {
        return Err(Error::InvalidArgument("boundary_n needs m >= 1".into()));
    }
    let windows = (1..=m as Vertex).map(|n| Simplex::new(n..n + (d + 2) as Vertex));
    boundary_complex(&SimplicialComplex::from_facets(windows)?)
}

/// ψ₀ : B_m → A_m, m+i ↦ i, the canonical admissible bijection on
/// ∂N^{d+1}_{m+d+1}. No admissible bijection exists for m ≤ 2d+2.
pub fn psi_0(d: usize, m: usize) -> Result<FacetBijection> {
    if m < 2 * d + 3 {
        return Err(Error::NoAdmissibleBijection);
    }
    FacetBijection::new((1..=(d + 1) as Vertex).map(|i| (m as Vertex + i, i)))
}

/// ψ_p : B_{2d+4} → A_{2d+4}, 2d+4+i ↦ π_p(i), for a partition p of d+1.
pub fn psi_p(d: usize, p: &Partition) -> Result<FacetBijection> {
    if p.n() != d + 1 {
        return Err(Error::InvalidArgument(format!(
            "partition sums to {} instead of d+1 = {}",
            p.n(),
            d + 1
        )));
    }
    let pi = permutation_for(p);
    let m = (2 * d + 4) as Vertex;
    FacetBijection::new((1..=(d + 1) as Vertex).map(|i| (m + i, pi.image(i as usize) as Vertex)))
}

/// Elementary handle addition: remove the two facets and identify x with
/// ψ(x). Fails with the offending pair if ψ is not admissible.
pub fn handle_add(k: &SimplicialComplex, psi: &FacetBijection) -> Result<SimplicialComplex> {
    let report = recognize::is_admissible(k, psi)?;
    if let Some(pair) = report.violation {
        return Err(Error::NotAdmissible { x: pair.x, y: pair.y, distance: pair.distance });
    }
    let map = psi.as_map();
    let facets = k
        .facets()
        .filter(|f| **f != psi.source && **f != psi.target)
        .map(|f| f.relabel(&map));
    SimplicialComplex::from_facets(facets)
}

/// Elementary connected sum X₁ #_ψ X₂. X₂ is relabeled onto a disjoint
/// block; the relabeling and the bijection actually used are returned.
pub struct ConnectedSum {
    pub complex: SimplicialComplex,
    pub psi: FacetBijection,
    pub relabel: BTreeMap<Vertex, Vertex>,
}

/// `pairing` matches positions of `s1`'s sorted vertices to positions of
/// `s2`'s; `None` uses the order-preserving bijection.
pub fn connected_sum(
    x1: &SimplicialComplex,
    x2: &SimplicialComplex,
    s1: &Simplex,
    s2: &Simplex,
    pairing: Option<&[usize]>,
) -> Result<ConnectedSum> {
    if x1.dim() != x2.dim() || s1.dim() != s2.dim() || s1.dim() != x1.dim() {
        return Err(Error::DimensionMismatch(x1.dim(), x2.dim()));
    }
    if !x1.is_facet(s1) {
        return Err(Error::NotAFacet(s1.clone()));
    }
    if !x2.is_facet(s2) {
        return Err(Error::NotAFacet(s2.clone()));
    }
    let base = x1.max_vertex() + 1;
    let relabel: BTreeMap<Vertex, Vertex> =
        x2.vertices().iter().enumerate().map(|(i, v)| (*v, base + i as Vertex)).collect();
    let y2 = x2.relabel(&relabel);
    let t2 = s2.relabel(&relabel);
    let pairs: Vec<(Vertex, Vertex)> = match pairing {
        Some(perm) => {
            if perm.len() != s1.num_vertices() {
                return Err(Error::InvalidArgument("pairing has wrong length".into()));
            }
            s1.vertices().iter().zip(perm).map(|(a, &j)| (*a, t2.vertices()[j])).collect()
        }
        None => s1.vertices().iter().zip(t2.vertices()).map(|(a, b)| (*a, *b)).collect(),
    };
    let psi = FacetBijection::new(pairs)?;
    let union = SimplicialComplex::from_facets(x1.facets().chain(y2.facets()).cloned())?;
    let complex = handle_add(&union, &psi)?;
    Ok(ConnectedSum { complex, psi, relabel })
}

/// Result of an elementary handle deletion over an induced standard sphere.
pub struct HandleDeletion {
    /// The split complex X̃.
    pub complex: SimplicialComplex,
    /// ψ = f₋ ∘ f₊⁻¹ : W⁺ → W⁻ with handle_add(complex, ψ) ≅ X.
    pub psi: FacetBijection,
    /// f₊ : W → W⁺ and f₋ : W → W⁻ over the original sphere vertices.
    pub plus: BTreeMap<Vertex, Vertex>,
    pub minus: BTreeMap<Vertex, Vertex>,
}

/// Elementary handle deletion over the vertex set `s_vertices`, which must
/// induce a standard (d−1)-sphere that is combinatorially two-sided (its
/// crossing-edge graph has exactly two components).
pub fn handle_delete(x: &SimplicialComplex, s_vertices: &BTreeSet<Vertex>) -> Result<HandleDeletion> {
    let d = x.dim();
    let induced = x.induced(s_vertices)?;
    if !is_standard_sphere(&induced) || induced.dim() + 1 != d {
        return Err(Error::NotStandardSphere);
    }
    let g = x.one_end_graph(s_vertices)?;
    let comps = g.connected_components();
    if comps.len() != 2 {
        return Err(Error::NotTwoSided);
    }
    let (e_plus, e_minus) = (&comps[0], &comps[1]);

    let base = x.max_vertex() + 1;
    let w: Vec<Vertex> = s_vertices.iter().copied().collect();
    let plus: BTreeMap<Vertex, Vertex> = w.iter().enumerate().map(|(i, v)| (*v, base + i as Vertex)).collect();
    let minus: BTreeMap<Vertex, Vertex> =
        w.iter().enumerate().map(|(i, v)| (*v, base + (w.len() + i) as Vertex)).collect();

    let mut facets: Vec<Simplex> = vec![
        Simplex::new(plus.values().copied()),
        Simplex::new(minus.values().copied()),
    ];
    for f in x.facets() {
        let inside = f.intersection(&Simplex::new(s_vertices.iter().copied()));
        if inside.is_empty() {
            facets.push(f.clone());
            continue;
        }
        // Classify by the component holding the facet's crossing edges; all
        // crossing edges of one facet land in the same component.
        let crossing: Vec<Simplex> = inside
            .vertices()
            .iter()
            .flat_map(|a| {
                f.minus(&inside).vertices().iter().map(|b| Simplex::new([*a, *b])).collect::<Vec<_>>()
            })
            .collect();
        let in_plus = crossing.iter().filter(|e| e_plus.contains(e)).count();
        let in_minus = crossing.iter().filter(|e| e_minus.contains(e)).count();
        assert!(
            in_plus == crossing.len() || in_minus == crossing.len(),
            "crossing edges of facet {f} split across components"
        );
        let side = if in_plus == crossing.len() { &plus } else { &minus };
        facets.push(f.relabel(side));
    }
    let complex = SimplicialComplex::from_facets(facets)?;
    let psi = FacetBijection::new(w.iter().map(|v| (plus[v], minus[v])))?;
    Ok(HandleDeletion { complex, psi, plus, minus })
}

/// Whether `k` is the boundary of a simplex on its own vertex set.
pub fn is_standard_sphere(k: &SimplicialComplex) -> bool {
    let n = k.num_vertices();
    n == k.dim() + 2 && k.num_facets() == n && k.facets().all(|f| f.num_vertices() == n - 1)
}

/// K^d_{2d+3}: boundary of the pure (d+1)-complex on Z_{2d+3} whose facets
/// are the paths of d+2 consecutive cycle vertices (labels 0..2d+2).
pub fn kuhnel(d: usize) -> Result<SimplicialComplex> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("kuhnel needs d >= 2, got {d}")));
    }
    let n = (2 * d + 3) as Vertex;
    let windows =
        (0..n).map(|i| Simplex::new((0..(d + 2) as Vertex).map(|j| (i + j) % n)));
    boundary_complex(&SimplicialComplex::from_facets(windows)?)
}

/// K^d_{2d+4}(p) = handle_add(∂N^{d+1}_{3d+5}, ψ_p) for a partition p of d+1.
pub fn k_2d4(d: usize, p: &Partition) -> Result<SimplicialComplex> {
    let ambient = boundary_n(d, 2 * d + 4)?;
    handle_add(&ambient, &psi_p(d, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_shapes() {
        assert_eq!(standard_sphere(0).num_facets(), 2);
        assert_eq!(standard_sphere(3).num_facets(), 5);
        assert_eq!(standard_ball(2).num_facets(), 1);
        let c9 = cycle(9).unwrap();
        assert_eq!(c9.num_edges(), 9);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn star_collapse_round_trip() {
        let k = standard_sphere(2);
        let f = k.facets().next().unwrap().clone();
        let y = star_vertex(&k, &f, 5).unwrap();
        assert_eq!(y.num_facets(), 6); // 4 - 1 + 3
        assert_eq!(y.degree(5).unwrap(), 3);
        assert!(y.is_normal_pseudomanifold().unwrap());
        let back = collapse_vertex(&y, 5).unwrap();
        assert_eq!(back, k);
        assert!(matches!(collapse_vertex(&k, 1), Err(Error::AlreadyMinimal)));
    }

    #[test]
    fn starring_edge_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 2..=4 {
            for n in d + 2..=d + 8 {
                let s = random_stacked_sphere(d, n, &mut rng).unwrap();
                assert_eq!(s.num_edges(), stacked_edge_count(d, n), "d={d} n={n}");
                assert!(s.is_normal_pseudomanifold().unwrap());
            }
        }
    }

    #[test]
    fn empty_trace_is_standard_sphere() {
        assert_eq!(stacked_sphere(3, &StarringTrace::default()).unwrap(), standard_sphere(3));
        let bad = StarringTrace { steps: vec![(Simplex::from([1, 2, 9]), 10)] };
        assert!(matches!(stacked_sphere(2, &bad), Err(Error::BadTraceStep(0, _))));
    }

    #[test]
    fn boundary_n_shape() {
        assert_eq!(boundary_n(3, 1).unwrap(), standard_sphere(3));
        let b = boundary_n(3, 9).unwrap();
        assert_eq!(b.num_vertices(), 13);
        assert_eq!(b.num_edges(), 13 * 4 - 10);
        assert!(b.is_facet(&Simplex::from([1, 2, 3, 4])));
        assert!(b.is_facet(&Simplex::from([10, 11, 12, 13])));
        let b10 = boundary_n(3, 10).unwrap();
        assert!(b10.is_facet(&Simplex::from([1, 2, 3, 4])));
        assert!(b10.is_facet(&Simplex::from([11, 12, 13, 14])));
    }

    /// ∂N via a rolling starring trace: star m+d+1 in B_{m-1} each step.
    #[test]
    fn boundary_n_is_rolling_trace() {
        let (d, m) = (3, 6);
        let mut trace = StarringTrace::default();
        for i in 2..=m {
            let b_prev = Simplex::new((i as Vertex)..(i + d + 1) as Vertex);
            trace.steps.push((b_prev, (i + d + 1) as Vertex));
        }
        assert_eq!(stacked_sphere(d, &trace).unwrap(), boundary_n(d, m).unwrap());
    }

    #[test]
    fn psi_0_bounds() {
        let psi = psi_0(3, 9).unwrap();
        assert_eq!(psi.map, vec![(10, 1), (11, 2), (12, 3), (13, 4)]);
        assert!(matches!(psi_0(3, 8), Err(Error::NoAdmissibleBijection)));
    }

    #[test]
    fn handle_add_counts() {
        for d in 2..=4 {
            let b = boundary_n(d, 2 * d + 3).unwrap();
            let k = handle_add(&b, &psi_0(d, 2 * d + 3).unwrap()).unwrap();
            assert_eq!(k.num_vertices(), 2 * d + 3);
            assert!(k.is_normal_pseudomanifold().unwrap());
        }
        // Edge count drops by C(d+1, 2) under the identification.
        let d = 3;
        let b = boundary_n(d, 2 * d + 3).unwrap();
        let k = handle_add(&b, &psi_0(d, 2 * d + 3).unwrap()).unwrap();
        assert_eq!(b.num_edges() - k.num_edges(), (d + 1) * d / 2);
    }

    #[test]
    fn handle_add_rejects_inadmissible() {
        let d = 3;
        let m = 2 * d + 2;
        let b = boundary_n(d, m).unwrap();
        let psi = FacetBijection::new((1..=(d + 1) as Vertex).map(|i| (m as Vertex + i, i))).unwrap();
        assert!(matches!(handle_add(&b, &psi), Err(Error::NotAdmissible { .. })));
    }

    #[test]
    fn connected_sum_counts() {
        let d = 3;
        let s = standard_sphere(d);
        let f1 = s.facets().next().unwrap().clone();
        let cs = connected_sum(&s, &s, &f1, &f1, None).unwrap();
        assert_eq!(cs.complex.num_vertices(), d + 3);
        assert!(cs.complex.is_normal_pseudomanifold().unwrap());
        // d+3-vertex stacked sphere: one starring worth of edges.
        assert_eq!(cs.complex.num_edges(), stacked_edge_count(d, d + 3));
    }

    #[test]
    fn kuhnel_f_vectors() {
        let k3 = kuhnel(3).unwrap();
        assert_eq!(k3.f_vector(), vec![9, 36, 54, 27]);
        let k2 = kuhnel(2).unwrap();
        assert_eq!(k2.f_vector(), vec![7, 21, 14]);
        assert!(kuhnel(1).is_err());
    }

    #[test]
    fn k_2d4_non_edge_count() {
        let d = 3;
        for p in crate::partitions::enumerate_partitions(d + 1).unwrap() {
            let k = k_2d4(d, &p).unwrap();
            assert_eq!(k.num_vertices(), 2 * d + 4);
            assert_eq!(k.non_edge_graph().num_edges(), d + 2, "partition {p:?}");
        }
    }

    #[test]
    fn handle_delete_round_trip_small() {
        // An explicit two-sided sphere: the connected sum of two standard
        // spheres carries the identified facet as an induced S^{d-1}_{d+1}.
        let d = 3;
        let s = standard_sphere(d);
        let f1 = s.facets().next().unwrap().clone();
        let cs = connected_sum(&s, &s, &f1, &f1, None).unwrap();
        let w: BTreeSet<Vertex> = cs.psi.target.vertices().iter().copied().collect();
        let del = handle_delete(&cs.complex, &w).unwrap();
        let comps = del.complex.edge_graph().connected_components();
        assert_eq!(comps.len(), 2);
        let again = handle_add(&del.complex, &del.psi).unwrap();
        assert!(crate::iso::complex_isomorphism(&again, &cs.complex).is_iso());
    }
}
