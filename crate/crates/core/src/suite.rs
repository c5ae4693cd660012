//! The end-to-end verification battery: twelve checks exercising the
//! construction, recognition, homology, isomorphism and partition machinery
//! against each other. Each check is independent and reports a verdict plus
//! a human-readable detail line; the CLI `paper-suite` command and the
//! acceptance test both run this battery.
//!
//! Randomized checks draw from a ChaCha stream seeded from the configured
//! seed, so a fixed seed gives a fixed report.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::build::{self, boundary_n, handle_add, k_2d4, kuhnel, psi_0};
use crate::complex::{SimplicialComplex, Vertex};
use crate::homology::{self, alexander_check, betti_z2, orientable};
use crate::iso::{self, complex_isomorphism};
use crate::partitions::{self, enumerate_partitions, Parity};
use crate::recognize::{self, enumerate_admissible};
use crate::{batch, Simplex};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Caps the dimension loops; checks stated for higher dimensions run up
    /// to this cap.
    pub max_dim: usize,
    /// Seed for the randomized samples.
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { max_dim: 4, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

fn rng_for(cfg: &SuiteConfig, check: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9).wrapping_add(check))
}

fn check<F>(id: usize, name: &str, body: F) -> CheckResult
where
    F: FnOnce() -> Result<String, String>,
{
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult { id, name: name.into(), passed, detail, millis: start.elapsed().as_millis() }
}

fn dims(cfg: &SuiteConfig, lo: usize, hi: usize) -> std::ops::RangeInclusive<usize> {
    lo..=hi.min(cfg.max_dim.max(lo))
}

/// 1. Every constructed stacked sphere meets the edge-count law exactly.
fn check_edge_count_law(cfg: &SuiteConfig) -> CheckResult {
    check(1, "stacked edge-count law", || {
        let mut rng = rng_for(cfg, 1);
        let mut instances = 0;
        for d in dims(cfg, 2, 5) {
            for n in d + 2..=d + 12 {
                let s = build::random_stacked_sphere(d, n, &mut rng)
                    .map_err(|e| format!("construction failed: {e}"))?;
                let expected = build::stacked_edge_count(d, n);
                if s.num_edges() != expected {
                    return Err(format!("d={d} n={n}: {} edges, expected {expected}", s.num_edges()));
                }
                instances += 1;
            }
        }
        Ok(format!("{instances} stacked spheres, all exact"))
    })
}

/// The normal pseudomanifolds the battery builds elsewhere, for the lower
/// bound sweep: stacked spheres, cylinder boundaries and both bundle
/// families.
fn lower_bound_instances(cfg: &SuiteConfig) -> Vec<(String, SimplicialComplex, bool)> {
    let mut rng = rng_for(cfg, 2);
    let mut out: Vec<(String, SimplicialComplex, bool)> = Vec::new();
    for d in dims(cfg, 2, 5) {
        for n in [d + 4, d + 9] {
            let s = build::random_stacked_sphere(d, n, &mut rng).expect("stacked sphere");
            out.push((format!("stacked d={d} n={n}"), s, true));
        }
        for m in [1, 4, 2 * d + 3] {
            out.push((format!("boundary-n d={d} m={m}"), boundary_n(d, m).expect("boundary"), true));
        }
        out.push((format!("kuhnel d={d}"), kuhnel(d).expect("kuhnel"), false));
        for p in enumerate_partitions(d + 1).expect("partitions") {
            out.push((format!("k2d4 d={d} p={p}"), k_2d4(d, &p).expect("k2d4"), false));
        }
    }
    out
}

/// 2. Lower-bound inequality, with equality exactly on the stacked spheres
/// for d ≥ 3.
fn check_lower_bound(cfg: &SuiteConfig) -> CheckResult {
    check(2, "lower bound inequality", || {
        let instances = lower_bound_instances(cfg);
        let count = instances.len();
        for (name, k, stacked) in instances {
            let d = k.dim();
            if !k.is_normal_pseudomanifold().map_err(|e| format!("{name}: {e}"))? {
                return Err(format!("{name}: not a normal pseudomanifold"));
            }
            let bound = build::stacked_edge_count(d, k.num_vertices());
            if k.num_edges() < bound {
                return Err(format!("{name}: {} edges below bound {bound}", k.num_edges()));
            }
            if d >= 3 && (k.num_edges() == bound) != stacked {
                return Err(format!(
                    "{name}: equality {} but stacked {}",
                    k.num_edges() == bound,
                    stacked
                ));
            }
        }
        Ok(format!("{count} normal pseudomanifolds within bound"))
    })
}

/// 3. Admissible-bijection census on the cylinder boundary.
fn check_census(cfg: &SuiteConfig) -> CheckResult {
    check(3, "admissibility census", || {
        let mut cases = 0;
        for d in dims(cfg, 2, 5) {
            let a = Simplex::new(1..=(d + 1) as Vertex);
            for (m, expect) in [(2 * d + 2, 0usize), (2 * d + 3, 1), (2 * d + 4, 1 << d)] {
                let b = boundary_n(d, m).map_err(|e| e.to_string())?;
                let bm = Simplex::new((m as Vertex + 1)..=(m + d + 1) as Vertex);
                let found = enumerate_admissible(&b, &bm, &a).map_err(|e| e.to_string())?;
                if found.len() != expect {
                    return Err(format!("d={d} m={m}: {} maps, expected {expect}", found.len()));
                }
                cases += 1;
            }
        }
        Ok(format!("{cases} census cells exact"))
    })
}

/// 4. The (2d+3)-vertex identity: gluing the cylinder boundary along ψ₀
/// gives the minimal bundle triangulation.
fn check_minimal_identity(cfg: &SuiteConfig) -> CheckResult {
    check(4, "minimal bundle identity", || {
        for d in dims(cfg, 2, 4) {
            let m = 2 * d + 3;
            let glued = handle_add(
                &boundary_n(d, m).map_err(|e| e.to_string())?,
                &psi_0(d, m).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let k = kuhnel(d).map_err(|e| e.to_string())?;
            if !complex_isomorphism(&glued, &k).is_iso() {
                return Err(format!("d={d}: glued complex not isomorphic"));
            }
        }
        let k3 = kuhnel(3).map_err(|e| e.to_string())?;
        if k3.f_vector() != vec![9, 36, 54, 27] {
            return Err(format!("f-vector {:?}", k3.f_vector()));
        }
        if betti_z2(&k3) != vec![1, 1, 1, 1] {
            return Err(format!("betti {:?}", betti_z2(&k3)));
        }
        if orientable(&k3).map_err(|e| e.to_string())?.is_orientable() {
            return Err("9-vertex complex unexpectedly orientable".into());
        }
        Ok("isomorphism, f-vector, betti and orientability all as stated".into())
    })
}

/// 5. Handle deletion in the 9-vertex complex and its inverse.
fn check_handle_round_trip(_cfg: &SuiteConfig) -> CheckResult {
    check(5, "handle-deletion round trip", || {
        use itertools::Itertools;
        let k = kuhnel(3).map_err(|e| e.to_string())?;
        let verts: Vec<Vertex> = k.vertices().into_iter().collect();
        let mut chosen = None;
        for w in verts.iter().copied().combinations(4) {
            let set: BTreeSet<Vertex> = w.into_iter().collect();
            let ind = k.induced(&set).map_err(|e| e.to_string())?;
            if build::is_standard_sphere(&ind) && ind.dim() == 2 {
                chosen = Some(set);
                break;
            }
        }
        let set = chosen.ok_or("no induced 4-vertex 2-sphere found")?;
        let two_sided = recognize::is_two_sided(&k, &set).map_err(|e| e.to_string())?;
        if !two_sided.verdict {
            return Err("induced sphere not two-sided".into());
        }
        let del = build::handle_delete(&k, &set).map_err(|e| e.to_string())?;
        let report = recognize::is_stacked_sphere(&del.complex).map_err(|e| e.to_string())?;
        if !report.verdict || del.complex.num_vertices() != 13 {
            return Err(format!(
                "deletion gave {} vertices, stacked={}",
                del.complex.num_vertices(),
                report.verdict
            ));
        }
        let b = boundary_n(3, 9).map_err(|e| e.to_string())?;
        if !complex_isomorphism(&del.complex, &b).is_iso() {
            return Err("deleted complex not the cylinder boundary".into());
        }
        let again = handle_add(&del.complex, &del.psi).map_err(|e| e.to_string())?;
        if !complex_isomorphism(&again, &k).is_iso() {
            return Err("re-gluing did not recover the original".into());
        }
        Ok("delete then add recovers the 9-vertex complex".into())
    })
}

/// 6. Orientability of the (2d+4)-vertex family follows partition parity.
fn check_parity_orientability(cfg: &SuiteConfig) -> CheckResult {
    check(6, "partition-parity orientability", || {
        let mut cases = 0;
        for d in dims(cfg, 3, 4) {
            for p in enumerate_partitions(d + 1).map_err(|e| e.to_string())? {
                let k = k_2d4(d, &p).map_err(|e| e.to_string())?;
                let is_or = orientable(&k).map_err(|e| e.to_string())?.is_orientable();
                let expect = p.parity() == Parity::Even;
                if is_or != expect {
                    return Err(format!("d={d} p={p}: orientable={is_or}, parity says {expect}"));
                }
                cases += 1;
            }
        }
        Ok(format!("{cases} partitions match the parity rule"))
    })
}

/// 7. Non-edge graphs are star forests indexed by the partition, pairwise
/// non-isomorphic.
fn check_non_edge_structure(cfg: &SuiteConfig) -> CheckResult {
    check(7, "non-edge structure", || {
        for d in dims(cfg, 3, 4) {
            let ps = enumerate_partitions(d + 1).map_err(|e| e.to_string())?;
            let mut profiles = Vec::new();
            for p in &ps {
                let k = k_2d4(d, p).map_err(|e| e.to_string())?;
                let g = iso::non_edge_graph(&k);
                if g.num_edges() != d + 2 {
                    return Err(format!("d={d} p={p}: {} non-edges", g.num_edges()));
                }
                let star = |m: usize| {
                    let mut v = vec![1; m];
                    v.push(m);
                    v.sort();
                    v
                };
                let mut expect: Vec<Vec<usize>> = std::iter::once(star(1))
                    .chain(p.parts().iter().map(|&part| star(part)))
                    .collect();
                expect.sort();
                let mut got: Vec<Vec<usize>> = iso::component_profiles(&g)
                    .into_iter()
                    .filter(|c| c != &vec![0])
                    .collect();
                got.sort();
                if got != expect {
                    return Err(format!("d={d} p={p}: profile {got:?} vs {expect:?}"));
                }
                profiles.push((p.clone(), iso::component_profiles(&g)));
            }
            for i in 0..profiles.len() {
                for j in i + 1..profiles.len() {
                    if profiles[i].1 == profiles[j].1 {
                        return Err(format!(
                            "d={d}: {} and {} share a non-edge profile",
                            profiles[i].0, profiles[j].0
                        ));
                    }
                }
            }
        }
        Ok("star-forest profiles exact and pairwise distinct".into())
    })
}

/// 8. Automorphism count of the minimal triangulation is the dihedral 4d+6.
fn check_automorphisms(cfg: &SuiteConfig) -> CheckResult {
    check(8, "automorphism count", || {
        let results: Vec<(usize, usize)> = batch::map(dims(cfg, 2, 4).collect(), |d| {
            (d, iso::automorphism_count(&kuhnel(d).expect("kuhnel")))
        });
        let mut lines = Vec::new();
        let mut failed = Vec::new();
        for (d, got) in results {
            let expect = 4 * d + 6;
            lines.push(format!("d={d}: {got}"));
            if got != expect {
                failed.push(format!("d={d}: counted {got}, stated {expect}"));
            }
        }
        if failed.is_empty() {
            Ok(lines.join(", "))
        } else {
            Err(failed.join("; "))
        }
    })
}

/// 9. Alexander-duality audit on seeded random nested vertex pairs.
fn check_alexander(cfg: &SuiteConfig) -> CheckResult {
    check(9, "alexander duality audit", || {
        let mut rng = rng_for(cfg, 9);
        let mut samples = Vec::new();
        for d in [3usize, 4] {
            if d > cfg.max_dim.max(3) {
                continue;
            }
            let k = kuhnel(d).map_err(|e| e.to_string())?;
            let verts: Vec<Vertex> = k.vertices().into_iter().collect();
            let n = verts.len();
            for _ in 0..50 {
                // Nonempty L strictly inside L', L' a proper vertex subset.
                let lp_size = rng.gen_range(2..n);
                let l_size = rng.gen_range(1..lp_size);
                let mut shuffled = verts.clone();
                shuffled.shuffle(&mut rng);
                let lp: BTreeSet<Vertex> = shuffled[..lp_size].iter().copied().collect();
                let l: BTreeSet<Vertex> = shuffled[..l_size].iter().copied().collect();
                samples.push((d, l, lp));
            }
        }
        let count = samples.len();
        let verdicts = batch::map(samples, |(d, l, lp)| {
            let k = kuhnel(d).expect("kuhnel");
            (d, l.clone(), lp.clone(), alexander_check(&k, &l, &lp))
        });
        for (d, l, lp, v) in verdicts {
            match v {
                Ok(true) => {}
                Ok(false) => return Err(format!("d={d}: duality fails for L={l:?} L'={lp:?}")),
                Err(e) => return Err(format!("d={d}: {e}")),
            }
        }
        Ok(format!("{count} nested pairs satisfy the duality equalities"))
    })
}

/// 10. Partition counts, the half bound and the balance ratio.
fn check_partition_counts(_cfg: &SuiteConfig) -> CheckResult {
    check(10, "partition counts", || {
        let (p10, _, _) = partitions::counts(10).map_err(|e| e.to_string())?;
        if p10 != 42 {
            return Err(format!("P(10) = {p10}"));
        }
        for n in 1..=60 {
            if n <= 40 {
                let (p, p0, p1) = partitions::counts(n).map_err(|e| e.to_string())?;
                if p as u128 != partitions::partition_count(n) {
                    return Err(format!("n={n}: enumeration {p} vs recurrence"));
                }
                if p0 + p1 != p {
                    return Err(format!("n={n}: parity counts do not add up"));
                }
                if n >= 2 && 2 * p0.min(p1) < partitions::partition_count(n - 1) as usize {
                    return Err(format!("n={n}: half bound violated"));
                }
            }
        }
        if partitions::partition_count(60) != 966467 {
            return Err("recurrence disagrees at n=60".into());
        }
        let (p50, p0_50, _) = partitions::counts(50).map_err(|e| e.to_string())?;
        let ratio = p0_50 as f64 / p50 as f64;
        if !(0.45..=0.55).contains(&ratio) {
            return Err(format!("balance ratio {ratio:.4} outside [0.45, 0.55]"));
        }
        Ok(format!("P(10)=42, recurrence to 60, balance ratio {ratio:.4}"))
    })
}

/// 11. The bundle triangulations all have stacked vertex links.
fn check_class_membership(cfg: &SuiteConfig) -> CheckResult {
    check(11, "stacked-link class membership", || {
        let mut instances: Vec<(String, SimplicialComplex)> = Vec::new();
        for d in dims(cfg, 2, 4) {
            instances.push((format!("kuhnel d={d}"), kuhnel(d).map_err(|e| e.to_string())?));
            for p in enumerate_partitions(d + 1).map_err(|e| e.to_string())? {
                instances.push((format!("k2d4 d={d} p={p}"), k_2d4(d, &p).map_err(|e| e.to_string())?));
            }
        }
        let count = instances.len();
        let verdicts = batch::map(instances, |(name, k)| (name, recognize::is_class_k(&k)));
        for (name, v) in verdicts {
            match v {
                Ok(true) => {}
                Ok(false) => return Err(format!("{name}: a vertex link is not stacked")),
                Err(e) => return Err(format!("{name}: {e}")),
            }
        }
        Ok(format!("{count} complexes have all-stacked links"))
    })
}

/// 12. Stacked spheres are reconstructible from their edge graphs.
fn check_reconstruction(cfg: &SuiteConfig) -> CheckResult {
    check(12, "edge-graph reconstruction", || {
        let mut rng = rng_for(cfg, 12);
        let mut samples = Vec::new();
        for i in 0..100 {
            let d = 2 + (i % 3).min(cfg.max_dim.saturating_sub(2)).min(2);
            let n = rng.gen_range(d + 2..=15);
            let s = build::random_stacked_sphere(d, n, &mut rng).map_err(|e| e.to_string())?;
            samples.push((d, s));
        }
        let count = samples.len();
        let results = batch::map(samples, |(d, s)| {
            let rebuilt = iso::reconstruct_stacked(&s.edge_graph(), d);
            (d, s, rebuilt)
        });
        for (d, s, rebuilt) in results {
            let rebuilt = rebuilt.map_err(|e| format!("d={d}: {e}"))?;
            if !complex_isomorphism(&rebuilt, &s).is_iso() {
                return Err(format!("d={d} n={}: reconstruction not isomorphic", s.num_vertices()));
            }
        }
        Ok(format!("{count} random stacked spheres reconstructed"))
    })
}

type CheckFn = fn(&SuiteConfig) -> CheckResult;

const CHECKS: [CheckFn; 12] = [
    check_edge_count_law,
    check_lower_bound,
    check_census,
    check_minimal_identity,
    check_handle_round_trip,
    check_parity_orientability,
    check_non_edge_structure,
    check_automorphisms,
    check_alexander,
    check_partition_counts,
    check_class_membership,
    check_reconstruction,
];

/// Runs one numbered check (1-based), or None for an unknown id.
pub fn run_check(id: usize, cfg: &SuiteConfig) -> Option<CheckResult> {
    CHECKS.get(id.checked_sub(1)?).map(|f| f(cfg))
}

/// Runs all twelve checks; independent checks run through [`batch::map`].
pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut results = batch::map(CHECKS.to_vec(), |f| f(cfg));
    results.sort_by_key(|r| r.id);
    let passed = results.iter().all(|r| r.passed);
    SuiteReport { config: *cfg, checks: results, passed }
}

// Orientability of the glued cylinder follows the parity of ψ relative to
// ψ₀ whenever m·d is even; exercised over the full census for small d.
// Kept here (not in the numbered battery) as a cross-module property.
pub fn psi_parity_orientability(d: usize) -> Result<usize, String> {
    let m = 2 * d + 4;
    if (m * d) % 2 != 0 {
        return Err("needs m*d even".into());
    }
    let b = boundary_n(d, m).map_err(|e| e.to_string())?;
    let a = Simplex::new(1..=(d + 1) as Vertex);
    let bm = Simplex::new((m as Vertex + 1)..=(m + d + 1) as Vertex);
    let all = enumerate_admissible(&b, &bm, &a).map_err(|e| e.to_string())?;
    let psi0 = psi_0(d, m).map_err(|e| e.to_string())?;
    let count = all.len();
    for psi in all {
        let x = handle_add(&b, &psi).map_err(|e| e.to_string())?;
        let is_or = homology::orientable(&x).map_err(|e| e.to_string())?.is_orientable();
        // Composite ψ ∘ ψ₀⁻¹ as a permutation of A's positions.
        let images: Vec<usize> = (1..=(d + 1) as Vertex)
            .map(|i| {
                let b_vertex = psi0.inverse().apply(i).expect("psi0 inverse");
                psi.apply(b_vertex).expect("psi image") as usize
            })
            .collect();
        let perm = partitions::Permutation::new(images).map_err(|e| e.to_string())?;
        let expect = perm.parity() == Parity::Even;
        if is_or != expect {
            return Err(format!("d={d} psi={:?}: orientable={is_or}", psi.map));
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_small_runs_clean() {
        let cfg = SuiteConfig { max_dim: 3, seed: 0 };
        let report = run_suite(&cfg);
        assert_eq!(report.checks.len(), 12);
        for c in &report.checks {
            if c.id == 8 {
                // The stated dihedral count 4d+6 is a proper subgroup at
                // d = 2: the full automorphism group of the 7-vertex complex
                // is the affine group mod 7, order 42. Pinned here so a
                // change in the measured count is noticed.
                assert!(!c.passed);
                assert!(c.detail.contains("d=2: counted 42"), "{}", c.detail);
                continue;
            }
            assert!(c.passed, "check {} failed: {}", c.id, c.detail);
        }
    }

    #[test]
    fn suite_is_deterministic() {
        let cfg = SuiteConfig { max_dim: 3, seed: 17 };
        let a = run_suite(&cfg);
        let b = run_suite(&cfg);
        let lines =
            |r: &SuiteReport| r.checks.iter().map(|c| (c.id, c.passed, c.detail.clone())).collect::<Vec<_>>();
        assert_eq!(lines(&a), lines(&b));
    }

    #[test]
    fn psi_parity_exhaustive_small() {
        for d in 2..=3 {
            let n = psi_parity_orientability(d).unwrap();
            assert_eq!(n, 1 << d, "d={d}");
        }
    }
}
