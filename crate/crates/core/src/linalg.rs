//! Exact linear algebra: dense solves and a sparse row-echelon accumulator.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::Bound;

use crate::scalar::Scalar;
use crate::sparse::axpy;

/// Solves `A X = B` for square nonsingular `A`. `b` holds one row per row of
/// `a` and may carry several right-hand sides. Returns `None` when `A` is
/// singular or the shapes disagree.
pub fn solve(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|row| row.len() != n) {
        return None;
    }
    let width = b.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|r| !m[*r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip()?;
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            #[allow(clippy::needless_range_loop)]
            for c in col..n + width {
                let d = &f * &m[col][c];
                m[r][c] -= &d;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rank of a dense matrix given by rows.
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let cols = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|r| col < m[*r].len() && !m[*r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip().expect("nonzero pivot");
        for r in rank + 1..m.len() {
            if col >= m[r].len() || m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..m[rank].len() {
                let d = &f * &m[rank][c];
                m[r][c] -= &d;
            }
        }
        rank += 1;
    }
    rank
}

/// Sparse vectors kept in row-echelon form; each row's pivot is its smallest
/// key and has coefficient one.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, Scalar>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The remainder of `v` after eliminating every pivot.
    pub fn reduce(&self, v: &BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
        let mut v = v.clone();
        let mut from: Option<K> = None;
        loop {
            let lower = match &from {
                None => Bound::Unbounded,
                Some(f) => Bound::Excluded(f),
            };
            let next = v
                .range((lower, Bound::Unbounded))
                .map(|(k, _)| k)
                .find(|k| self.rows.contains_key(*k))
                .cloned();
            let Some(p) = next else { break };
            let c = -v[&p].clone();
            axpy(&mut v, &c, &self.rows[&p]);
            from = Some(p);
        }
        v
    }

    pub fn contains(&self, v: &BTreeMap<K, Scalar>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns the reduced, normalized new row if `v`
    /// was independent.
    pub fn insert(&mut self, v: &BTreeMap<K, Scalar>) -> Option<&BTreeMap<K, Scalar>> {
        let mut red = self.reduce(v);
        let (pivot, lead) = red.iter().next().map(|(k, c)| (k.clone(), c.clone()))?;
        let inv = lead.recip().expect("nonzero lead");
        for c in red.values_mut() {
            *c *= &inv;
        }
        self.rows.insert(pivot.clone(), red);
        self.rows.get(&pivot)
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &BTreeMap<K, Scalar>> {
        self.rows.values()
    }

    /// Number of rows whose pivot satisfies `pred`. With keys ordered so that
    /// every excluded key sorts before every included one, this is the
    /// dimension of the span intersected with the included coordinates.
    pub fn count_pivots<F: Fn(&K) -> bool>(&self, pred: F) -> usize {
        self.rows.keys().filter(|k| pred(k)).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn solves_small_system() {
        let a = vec![vec![s(1), s(1)], vec![s(1), s(2)]];
        let b = vec![vec![s(3)], vec![s(5)]];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![vec![s(1)], vec![s(2)]]);
        let sing = vec![vec![s(1), s(2)], vec![s(2), s(4)]];
        assert!(solve(&sing, &b).is_none());
    }

    #[test]
    fn rank_counts_independent_rows() {
        let rows = vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)], vec![s(0), s(1), s(1)]];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn echelon_membership_and_intersection() {
        let mut e: SparseEchelon<(u8, i32)> = SparseEchelon::new();
        // coordinates with tag 0 are "outside"
        let v1: BTreeMap<_, _> = [((0, 1), s(1)), ((1, 1), s(1))].into_iter().collect();
        let v2: BTreeMap<_, _> = [((0, 1), s(2)), ((1, 2), s(1))].into_iter().collect();
        assert!(e.insert(&v1).is_some());
        assert!(e.insert(&v2).is_some());
        assert!(e.insert(&v1).is_none());
        // span ∩ {tag 1} is spanned by 2*v1 - v2
        assert_eq!(e.count_pivots(|k| k.0 == 1), 1);
        let inside: BTreeMap<_, _> = [((1, 1), s(2)), ((1, 2), s(-1))].into_iter().collect();
        assert!(e.contains(&inside));
    }
}
