//! Integer partitions: enumeration, even/odd classification by the count of
//! even parts, exact counts (with the pentagonal-number recurrence as an
//! independent oracle), the Hardy–Ramanujan estimate, and the cycle
//! permutations that feed the handle-addition bijections.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition: weakly increasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Partition {
    pub fn new(parts: impl IntoIterator<Item = usize>) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().collect();
        if parts.is_empty() {
            return Err(Error::InvalidArgument("partition has no parts".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument("partition parts must be weakly increasing".into()));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Even iff the number of even parts is even.
    pub fn parity(&self) -> Parity {
        if self.parts.iter().filter(|p| *p % 2 == 0).count() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// All partitions of n, lexicographic by part list.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    if n < 1 {
        return Err(Error::InvalidArgument("partitions are defined for n >= 1".into()));
    }
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn recurse(remaining: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            // Stored largest-first; reverse into weakly increasing order.
            let mut parts = current.clone();
            parts.reverse();
            out.push(Partition { parts });
            return;
        }
        for next in (1..=remaining.min(max)).rev() {
            current.push(next);
            recurse(remaining - next, next, current, out);
            current.pop();
        }
    }
    recurse(n, n, &mut current, &mut out);
    out.sort();
    Ok(out)
}

/// Exact (P(n), P₀(n), P₁(n)) by enumeration.
pub fn counts(n: usize) -> Result<(usize, usize, usize)> {
    let all = enumerate_partitions(n)?;
    let even = all.iter().filter(|p| p.parity() == Parity::Even).count();
    Ok((all.len(), even, all.len() - even))
}

/// Exact P(n) by Euler's pentagonal-number recurrence. Independent of the
/// enumeration above, usable far beyond enumeration scale.
pub fn partition_count(n: usize) -> u128 {
    let mut p = vec![0u128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total: i128 = 0;
        let mut k: i64 = 1;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 0 { -1i128 } else { 1i128 };
            total += sign * p[m - g1] as i128;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                total += sign * p[m - g2] as i128;
            }
            k += 1;
        }
        p[m] = total as u128;
    }
    p[n]
}

/// Hardy–Ramanujan estimate (c₁/n)·exp(c₂√n), c₁ = 1/(4√3), c₂ = π√(2/3).
pub fn hardy_ramanujan(n: usize) -> f64 {
    let c1 = 1.0 / (4.0 * 3f64.sqrt());
    let c2 = std::f64::consts::PI * (2f64 / 3.0).sqrt();
    c1 / n as f64 * (c2 * (n as f64).sqrt()).exp()
}

/// A permutation of {1, ..., n}, stored as 1-based images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i < 1 || i > n || seen[i] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// π(i) for 1 ≤ i ≤ n.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Even iff the number of even-length cycles is even.
    pub fn parity(&self) -> Parity {
        let n = self.images.len();
        let mut seen = vec![false; n + 1];
        let mut even_cycles = 0;
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = self.image(cur);
                len += 1;
            }
            if len % 2 == 0 {
                even_cycles += 1;
            }
        }
        if even_cycles % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// π_p: the product of the disjoint cycles (s_{j-1}+1, ..., s_j) given by the
/// partial sums s_j of p. Satisfies π_p(i) ≤ i+1.
pub fn permutation_for(p: &Partition) -> Permutation {
    let n = p.n();
    let mut images = vec![0usize; n];
    let mut start = 1;
    for &part in p.parts() {
        let end = start + part - 1;
        // Cycle start -> start+1 -> ... -> end -> start.
        for i in start..end {
            images[i - 1] = i + 1;
        }
        images[end - 1] = start;
        start = end + 1;
    }
    Permutation { images }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(1).unwrap(), vec![Partition::new([1]).unwrap()]);
        let p4 = enumerate_partitions(4).unwrap();
        let expect: Vec<Partition> = [
            vec![1, 1, 1, 1],
            vec![1, 1, 2],
            vec![1, 3],
            vec![2, 2],
            vec![4],
        ]
        .into_iter()
        .map(|v| Partition::new(v).unwrap())
        .collect();
        assert_eq!(p4, expect);
        assert_eq!(enumerate_partitions(10).unwrap().len(), 42);
        assert!(enumerate_partitions(0).is_err());
    }

    #[test]
    fn parity_of_named_partitions() {
        let even = |v: Vec<usize>| Partition::new(v).unwrap().parity() == Parity::Even;
        assert!(even(vec![1, 1, 1, 1]));
        assert!(even(vec![1, 3]));
        assert!(even(vec![2, 2]));
        assert!(!even(vec![4]));
        assert!(!even(vec![1, 1, 2]));
    }

    #[test]
    fn counts_match_recurrence() {
        for n in 1..=25 {
            let (p, p0, p1) = counts(n).unwrap();
            assert_eq!(p as u128, partition_count(n), "n={n}");
            assert_eq!(p0 + p1, p);
        }
        assert_eq!(counts(1).unwrap(), (1, 1, 0));
        assert_eq!(partition_count(60), 966467);
    }

    #[test]
    fn half_bound_from_injections() {
        for n in 2..=25 {
            let (_, p0, p1) = counts(n).unwrap();
            let prev = partition_count(n - 1) as usize;
            assert!(2 * p0.min(p1) >= prev, "n={n}");
        }
    }

    /// The two parity maps behind the half bound: prepending a 1 preserves
    /// parity, incrementing the largest part flips it; both are injective.
    #[test]
    fn lemma_injections() {
        use std::collections::BTreeSet;
        for n in 2..=20 {
            let prev = enumerate_partitions(n - 1).unwrap();
            let mut prepend_images = BTreeSet::new();
            let mut bump_images = BTreeSet::new();
            for p in &prev {
                let mut with_one = vec![1];
                with_one.extend_from_slice(p.parts());
                let q = Partition::new(with_one).unwrap();
                assert_eq!(q.parity(), p.parity());
                assert!(prepend_images.insert(q));

                let mut bumped = p.parts().to_vec();
                *bumped.last_mut().unwrap() += 1;
                let q = Partition::new(bumped).unwrap();
                assert_ne!(q.parity(), p.parity());
                assert!(bump_images.insert(q));
            }
        }
    }

    #[test]
    fn hardy_ramanujan_constants() {
        let c1 = 1.0 / (4.0 * 3f64.sqrt());
        let c2 = std::f64::consts::PI * (2f64 / 3.0).sqrt();
        assert!((c1 - 0.14433756).abs() < 1e-7);
        assert!((c2 - 2.56509966).abs() < 1e-7);
        // Ratio P(n)/estimate trends toward 1.
        let ratio = |n: usize| partition_count(n) as f64 / hardy_ramanujan(n);
        let (r20, r50, r100) = (ratio(20), ratio(50), ratio(100));
        assert!((r20 - 1.0).abs() > (r50 - 1.0).abs());
        assert!((r50 - 1.0).abs() > (r100 - 1.0).abs());
    }

    #[test]
    fn cycle_permutations() {
        let id = permutation_for(&Partition::new([1, 1, 1, 1]).unwrap());
        assert_eq!(id.images, vec![1, 2, 3, 4]);
        let four = permutation_for(&Partition::new([4]).unwrap());
        assert_eq!(four.images, vec![2, 3, 4, 1]);
        let p13 = permutation_for(&Partition::new([1, 3]).unwrap());
        assert_eq!(p13.images, vec![1, 3, 4, 2]);
    }

    #[test]
    fn permutation_parity_matches_partition_parity() {
        for n in 1..=12 {
            for p in enumerate_partitions(n).unwrap() {
                let pi = permutation_for(&p);
                assert_eq!(pi.parity(), p.parity(), "partition {p:?}");
                // π_p(i) ≤ i+1.
                for i in 1..=n {
                    assert!(pi.image(i) <= i + 1);
                }
            }
        }
    }
}
