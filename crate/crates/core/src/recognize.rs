//! Decision procedures: stacked-sphere recognition with a replayable
//! collapse certificate, the stacked-link class, admissibility of facet
//! bijections (single check and exhaustive enumeration), and the
//! combinatorial two-sidedness criterion.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::build::{self, FacetBijection, StarringTrace};
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

/// Certificate for a positive stacked-sphere verdict: replaying `trace` from
/// `base` (the fully collapsed standard sphere, with its original labels)
/// rebuilds the input exactly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StackedCertificate {
    pub base: SimplicialComplex,
    pub trace: StarringTrace,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StackedReport {
    pub verdict: bool,
    pub certificate: Option<StackedCertificate>,
    /// On a negative verdict, why the collapse procedure stopped.
    pub reason: Option<String>,
}

/// Greedy collapse of minimal-degree vertices down to the standard sphere.
///
/// Requires a normal pseudomanifold. For d ≥ 2 the edge count is checked
/// against the stacked-sphere formula first (for d ≥ 3 that equality is
/// already decisive, but the collapse trace is still produced as the
/// certificate). For d = 2 the collapse procedure alone decides.
pub fn is_stacked_sphere(k: &SimplicialComplex) -> Result<StackedReport> {
    if !k.is_normal_pseudomanifold()? {
        return Err(Error::InvalidArgument("not a normal pseudomanifold".into()));
    }
    let d = k.dim();
    if d >= 2 {
        let expected = build::stacked_edge_count(d, k.num_vertices());
        if k.num_edges() != expected {
            return Ok(StackedReport {
                verdict: false,
                certificate: None,
                reason: Some(format!(
                    "edge count {} differs from the stacked count {}",
                    k.num_edges(),
                    expected
                )),
            });
        }
    }
    let mut current = k.clone();
    let mut steps: Vec<(Simplex, Vertex)> = Vec::new();
    while current.num_vertices() > d + 2 {
        let candidate = current
            .vertices()
            .into_iter()
            .find(|v| build::collapse_vertex(&current, *v).is_ok());
        match candidate {
            Some(v) => {
                let link = current.link(&Simplex::new([v]))?;
                steps.push((Simplex::new(link.vertices()), v));
                current = build::collapse_vertex(&current, v)?;
            }
            None => {
                return Ok(StackedReport {
                    verdict: false,
                    certificate: None,
                    reason: Some("no collapsible vertex of minimal degree".into()),
                });
            }
        }
    }
    if !build::is_standard_sphere(&current) {
        return Ok(StackedReport {
            verdict: false,
            certificate: None,
            reason: Some("collapse terminated away from the standard sphere".into()),
        });
    }
    steps.reverse();
    Ok(StackedReport {
        verdict: true,
        certificate: Some(StackedCertificate { base: current, trace: StarringTrace { steps } }),
        reason: None,
    })
}

/// Membership in the class of normal pseudomanifolds whose vertex links are
/// all stacked spheres.
pub fn is_class_k(k: &SimplicialComplex) -> Result<bool> {
    if k.dim() < 2 {
        return Err(Error::InvalidArgument("class membership needs dim >= 2".into()));
    }
    if !k.is_normal_pseudomanifold()? {
        return Err(Error::InvalidArgument("not a normal pseudomanifold".into()));
    }
    for v in k.vertices() {
        let link = k.link(&Simplex::new([v]))?;
        if !is_stacked_sphere(&link)?.verdict {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A violating pair for an inadmissible bijection, with its shortest path.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdmissibilityViolation {
    pub x: Vertex,
    pub y: Vertex,
    pub distance: usize,
    pub path: Vec<Vertex>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub verdict: bool,
    pub violation: Option<AdmissibilityViolation>,
}

/// A bijection is admissible when every pair (x, ψ(x)) is at edge-graph
/// distance ≥ 3; pairs in different components count as admissible.
pub fn is_admissible(k: &SimplicialComplex, psi: &FacetBijection) -> Result<AdmissibilityReport> {
    if !k.is_facet(&psi.source) {
        return Err(Error::NotAFacet(psi.source.clone()));
    }
    if !k.is_facet(&psi.target) {
        return Err(Error::NotAFacet(psi.target.clone()));
    }
    let g = k.edge_graph();
    for (x, y) in &psi.map {
        if let Some(path) = g.shortest_path(x, y) {
            let distance = path.len() - 1;
            if distance < 3 {
                return Ok(AdmissibilityReport {
                    verdict: false,
                    violation: Some(AdmissibilityViolation { x: *x, y: *y, distance, path }),
                });
            }
        }
    }
    Ok(AdmissibilityReport { verdict: true, violation: None })
}

/// All admissible bijections s1 → s2, in lexicographic order of the map.
/// Backtracking over partial maps, pruning on the distance-≥3 condition.
pub fn enumerate_admissible(
    k: &SimplicialComplex,
    s1: &Simplex,
    s2: &Simplex,
) -> Result<Vec<FacetBijection>> {
    if !s1.is_disjoint(s2) {
        return Ok(Vec::new());
    }
    let g = k.edge_graph();
    let sources = s1.vertices();
    let targets = s2.vertices();
    // Feasible images per source vertex.
    let feasible: Vec<Vec<Vertex>> = sources
        .iter()
        .map(|x| {
            targets
                .iter()
                .copied()
                .filter(|y| g.distance(x, y).map_or(true, |d| d >= 3))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Vertex> = Vec::new();
    fn recurse(
        i: usize,
        feasible: &[Vec<Vertex>],
        chosen: &mut Vec<Vertex>,
        sources: &[Vertex],
        out: &mut Vec<FacetBijection>,
    ) {
        if i == feasible.len() {
            let psi = FacetBijection::new(sources.iter().copied().zip(chosen.iter().copied()))
                .expect("assignments form a bijection");
            out.push(psi);
            return;
        }
        for &y in &feasible[i] {
            if !chosen.contains(&y) {
                chosen.push(y);
                recurse(i + 1, feasible, chosen, sources, out);
                chosen.pop();
            }
        }
    }
    recurse(0, &feasible, &mut chosen, sources, &mut out);
    out.sort_by(|a, b| a.map.cmp(&b.map));
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwoSidedReport {
    pub verdict: bool,
    /// The component partition E⁺ / E⁻ of the crossing-edge graph.
    pub components: Vec<BTreeSet<Simplex>>,
}

/// Operational two-sidedness: the crossing-edge graph over the induced
/// (dim−1)-dimensional normal pseudomanifold has exactly two components.
pub fn is_two_sided(k: &SimplicialComplex, s_vertices: &BTreeSet<Vertex>) -> Result<TwoSidedReport> {
    let g = k.one_end_graph(s_vertices)?;
    let components = g.connected_components();
    Ok(TwoSidedReport { verdict: components.len() == 2, components })
}
