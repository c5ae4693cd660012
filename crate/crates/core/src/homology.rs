//! Z₂ simplicial homology (absolute and relative), Euler characteristic,
//! orientability by coherent sign propagation, the Alexander-duality check
//! and the H₁ non-simple-connectivity certificate.
//!
//! GF(2) matrices are packed bit rows; ranks come from forward elimination.
//! Everything is exact and sized for desk-scale complexes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Dense GF(2) matrix with u64-packed rows.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    rows: Vec<Vec<u64>>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { rows: vec![vec![0u64; words]; rows], cols }
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.rows[r][c / 64] |= 1 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.rows[r][c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// Rank by forward elimination; consumes a working copy.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let word = c / 64;
            let bit = 1u64 << (c % 64);
            let pivot = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0);
            let Some(p) = pivot else { continue };
            rows.swap(rank, p);
            let (pivot_row, rest) = {
                let (a, b) = rows.split_at_mut(rank + 1);
                (&a[rank], b)
            };
            for row in rest.iter_mut() {
                if row[word] & bit != 0 {
                    for (w, pw) in row.iter_mut().zip(pivot_row) {
                        *w ^= pw;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Basis of the row space in echelon form.
    fn row_echelon(&self) -> Vec<Vec<u64>> {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        for row in &self.rows {
            let mut r = row.clone();
            Self::reduce_against(&mut r, &basis);
            if r.iter().any(|w| *w != 0) {
                basis.push(r);
            }
        }
        basis
    }

    fn leading_bit(row: &[u64]) -> Option<usize> {
        row.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn reduce_against(row: &mut [u64], basis: &[Vec<u64>]) {
        loop {
            let Some(lead) = Self::leading_bit(row) else { return };
            let Some(b) = basis.iter().find(|b| Self::leading_bit(b) == Some(lead)) else { return };
            for (w, bw) in row.iter_mut().zip(b) {
                *w ^= bw;
            }
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.num_rows());
        for r in 0..self.num_rows() {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r);
                }
            }
        }
        t
    }

    /// Basis of the null space (as bit rows over the column index set).
    pub fn null_space(&self) -> Vec<Vec<u64>> {
        // Gauss-Jordan on the transpose trick: track column operations by
        // eliminating on an augmented identity over columns.
        let n = self.cols;
        let words = n.div_ceil(64);
        // work[c] = column c of the matrix, paired with identity row c.
        let m = self.num_rows();
        let col_words = m.div_ceil(64);
        let mut cols: Vec<(Vec<u64>, Vec<u64>)> = (0..n)
            .map(|c| {
                let mut col = vec![0u64; col_words];
                for r in 0..m {
                    if self.get(r, c) {
                        col[r / 64] |= 1 << (r % 64);
                    }
                }
                let mut id = vec![0u64; words];
                id[c / 64] |= 1 << (c % 64);
                (col, id)
            })
            .collect();
        let mut basis: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();
        let mut null = Vec::new();
        for (col, id) in cols.iter_mut() {
            loop {
                let Some(lead) = Self::leading_bit(col) else { break };
                let Some((b, bid)) = basis.iter().find(|(b, _)| Self::leading_bit(b) == Some(lead))
                else {
                    break;
                };
                for (w, bw) in col.iter_mut().zip(b) {
                    *w ^= bw;
                }
                for (w, bw) in id.iter_mut().zip(bid) {
                    *w ^= bw;
                }
            }
            if col.iter().all(|w| *w == 0) {
                null.push(id.clone());
            } else {
                basis.push((col.clone(), id.clone()));
            }
        }
        null
    }
}

/// Per-dimension face bases and GF(2) boundary matrices for a pair (K, L);
/// L empty gives the absolute chain complex.
pub struct Gf2ChainComplex {
    /// bases[k] lists the k-faces, sorted; the chain group basis.
    pub bases: Vec<Vec<Simplex>>,
    /// boundary[k] maps C_k -> C_{k-1}: row per k-face, column per (k-1)-face.
    pub boundary: Vec<BitMatrix>,
}

impl Gf2ChainComplex {
    pub fn absolute(k: &SimplicialComplex) -> Self {
        Self::relative(k, None)
    }

    /// Quotient chain complex on the faces of `k` not in `l`.
    pub fn relative(k: &SimplicialComplex, l: Option<&SimplicialComplex>) -> Self {
        let dim = k.dim();
        let in_l = |s: &Simplex| l.is_some_and(|l| l.has_face(s));
        let bases: Vec<Vec<Simplex>> = (0..=dim)
            .map(|j| k.faces(j).into_iter().filter(|s| !in_l(s)).collect())
            .collect();
        let index: Vec<BTreeMap<&Simplex, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut boundary = Vec::with_capacity(dim + 1);
        for j in 0..=dim {
            let rows = bases[j].len();
            let cols = if j == 0 { 0 } else { bases[j - 1].len() };
            let mut m = BitMatrix::zeros(rows, cols);
            if j > 0 {
                for (r, s) in bases[j].iter().enumerate() {
                    for f in s.subfaces(j - 1) {
                        if let Some(&c) = index[j - 1].get(&f) {
                            m.set(r, c);
                        }
                    }
                }
            }
            boundary.push(m);
        }
        Gf2ChainComplex { bases, boundary }
    }

    /// ∂∂ = 0 over GF(2).
    pub fn verify_boundary_squares_to_zero(&self) -> bool {
        for j in 2..self.boundary.len() {
            for r in 0..self.bases[j].len() {
                let mut acc = vec![0u64; self.bases[j - 2].len().div_ceil(64)];
                for c in 0..self.bases[j - 1].len() {
                    if self.boundary[j].get(r, c) {
                        for (w, bw) in acc.iter_mut().zip(&self.boundary[j - 1].rows[c]) {
                            *w ^= bw;
                        }
                    }
                }
                if acc.iter().any(|w| *w != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Betti numbers β_0 .. β_dim over GF(2).
    pub fn betti(&self) -> Vec<usize> {
        let dim = self.bases.len() - 1;
        let ranks: Vec<usize> = self.boundary.iter().map(|m| m.rank()).collect();
        (0..=dim)
            .map(|j| {
                let n = self.bases[j].len();
                let next = if j + 1 <= dim { ranks[j + 1] } else { 0 };
                n - ranks[j] - next
            })
            .collect()
    }
}

/// Absolute Z₂ Betti numbers of a complex.
pub fn betti_z2(k: &SimplicialComplex) -> Vec<usize> {
    Gf2ChainComplex::absolute(k).betti()
}

/// Z₂ Betti numbers of the pair (K, L); L must be a subcomplex of K.
pub fn relative_betti_z2(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<Vec<usize>> {
    if !k.contains_subcomplex(l) {
        return Err(Error::NotSubcomplex);
    }
    Ok(Gf2ChainComplex::relative(k, Some(l)).betti())
}

/// Alternating sum of the f-vector.
pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    k.f_vector()
        .iter()
        .enumerate()
        .map(|(j, &f)| if j % 2 == 0 { f as i64 } else { -(f as i64) })
        .sum()
}

/// The sphere Betti pattern in dimension `d`: (2) for d = 0, else (1,0,..,0,1).
fn sphere_betti(d: usize) -> Vec<usize> {
    if d == 0 {
        return vec![2];
    }
    let mut b = vec![0; d + 1];
    b[0] = 1;
    b[d] = 1;
    b
}

/// Checks the simplicial Alexander duality equalities
/// β_{d−j}(L′, L) = β_j(R, R′) for nested induced subcomplex pairs, where R
/// and R′ are the simplicial complements of L and L′.
///
/// The closed-manifold hypothesis is asserted as: weak pseudomanifold whose
/// vertex links carry the sphere Betti pattern.
pub fn alexander_check(
    x: &SimplicialComplex,
    l_vertices: &BTreeSet<crate::complex::Vertex>,
    lp_vertices: &BTreeSet<crate::complex::Vertex>,
) -> Result<bool> {
    if !l_vertices.is_subset(lp_vertices) || l_vertices.is_empty() {
        return Err(Error::InvalidArgument("need nonempty L ⊆ L'".into()));
    }
    let verts = x.vertices();
    if !lp_vertices.is_subset(&verts) || *lp_vertices == verts {
        return Err(Error::InvalidArgument("need L' a proper subset of the vertex set".into()));
    }
    let d = x.dim();
    if !x.is_weak_pseudomanifold()? {
        return Err(Error::InvalidArgument("not a weak pseudomanifold".into()));
    }
    for v in &verts {
        let link = x.link(&Simplex::new([*v]))?;
        if betti_z2(&link) != sphere_betti(d - 1) {
            return Err(Error::InvalidArgument(format!("link of {v} is not a homology sphere")));
        }
    }

    let l = x.induced(l_vertices)?;
    let lp = x.induced(lp_vertices)?;
    let r = x.complement(l_vertices)?;
    let rp = x.complement(lp_vertices)?;
    let left = relative_betti_z2(&lp, &l)?;
    let right = relative_betti_z2(&r, &rp)?;
    let get = |v: &[usize], j: usize| v.get(j).copied().unwrap_or(0);
    Ok((0..=d).all(|j| get(&left, d - j) == get(&right, j)))
}

/// A coherent orientation: ±1 per facet, where a facet's reference class is
/// its sorted vertex order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Orientation {
    pub signs: BTreeMap<Simplex, i8>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum OrientationOutcome {
    Orientable(Orientation),
    /// A cycle of facets along which sign propagation is inconsistent.
    Obstruction(Vec<Simplex>),
}

impl OrientationOutcome {
    pub fn is_orientable(&self) -> bool {
        matches!(self, OrientationOutcome::Orientable(_))
    }
}

/// Decides orientability of a weak pseudomanifold by propagating facet signs
/// over the facet adjacency graph, requiring opposite induced orientations
/// on every ridge. Disconnected complexes are handled per component; the
/// verdict is the conjunction.
pub fn orientable(k: &SimplicialComplex) -> Result<OrientationOutcome> {
    if !k.is_weak_pseudomanifold()? {
        return Err(Error::InvalidArgument("not a weak pseudomanifold".into()));
    }
    // Ridge sign: position of the removed vertex in the sorted facet.
    let ridge_sign = |facet: &Simplex, ridge: &Simplex| -> i8 {
        let v = facet.minus(ridge).vertices()[0];
        let i = facet.vertices().iter().position(|w| *w == v).unwrap();
        if i % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let incidence = k.ridge_incidence();
    let mut signs: BTreeMap<Simplex, i8> = BTreeMap::new();
    let mut pred: BTreeMap<Simplex, Simplex> = BTreeMap::new();
    let adjacency = k.facet_adjacency()?;
    for start in k.facets() {
        if signs.contains_key(start) {
            continue;
        }
        signs.insert(start.clone(), 1);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(f) = queue.pop_front() {
            for (ridge, pair) in incidence.iter().filter(|(_, p)| p.contains(&f)) {
                let g = pair.iter().find(|g| **g != f).expect("weak pseudomanifold ridge");
                let required = -signs[&f] * ridge_sign(&f, ridge) * ridge_sign(g, ridge);
                match signs.get(g) {
                    None => {
                        signs.insert(g.clone(), required);
                        pred.insert(g.clone(), f.clone());
                        queue.push_back(g.clone());
                    }
                    Some(&s) if s != required => {
                        // Conflict: report the facet cycle through the tree.
                        let path_to_root = |mut cur: Simplex| {
                            let mut path = vec![cur.clone()];
                            while let Some(p) = pred.get(&cur) {
                                path.push(p.clone());
                                cur = p.clone();
                            }
                            path
                        };
                        let mut a = path_to_root(f.clone());
                        let b = path_to_root(g.clone());
                        a.reverse();
                        a.extend(b);
                        return Ok(OrientationOutcome::Obstruction(a));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let _ = adjacency; // adjacency connectivity is implied by the ridge walk
    Ok(OrientationOutcome::Orientable(Orientation { signs }))
}

/// A nonbounding 1-cycle over Z₂, certifying non-simple-connectivity.
/// `None` when β₁(Z₂) = 0 (inconclusive for simple connectivity).
pub fn h1_certificate(k: &SimplicialComplex) -> Option<Vec<Simplex>> {
    if k.dim() < 1 {
        return None;
    }
    let chain = Gf2ChainComplex::absolute(k);
    // Chains live in the row index set, so cycles are the left null space.
    let kernel = chain.boundary[1].transpose().null_space();
    let image_basis: Vec<Vec<u64>> = if chain.boundary.len() > 2 {
        chain.boundary[2].row_echelon()
    } else {
        Vec::new()
    };
    for vec in kernel {
        let mut v = vec.clone();
        BitMatrix::reduce_against(&mut v, &image_basis);
        if v.iter().any(|w| *w != 0) {
            // Return the original kernel cycle (an actual edge cycle), not
            // its reduced remainder.
            let edges = chain.bases[1]
                .iter()
                .enumerate()
                .filter(|(i, _)| (vec[i / 64] >> (i % 64)) & 1 == 1)
                .map(|(_, e)| e.clone())
                .collect();
            return Some(edges);
        }
    }
    None
}
