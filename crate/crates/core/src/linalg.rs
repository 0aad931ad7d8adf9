//! Exact linear algebra over the rationals.
//!
//! Vectors are stored sparsely with primitive integer entries: any rational
//! vector is first scaled to clear denominators and divided by the gcd of its
//! entries. Elimination is fraction-free (`v <- p*v - a*r`, then content
//! removal), so no rational arithmetic happens in the inner loop.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rational;

/// Sparse integer vector, entries sorted by index, no zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: Vec<(usize, BigInt)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    /// Builds a vector from unsorted integer entries, summing duplicates.
    pub fn from_entries(mut entries: Vec<(usize, BigInt)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVec { entries: out }
    }

    /// The primitive integer vector on the same rational line.
    pub fn primitive_from_rationals(entries: Vec<(usize, Rational)>) -> Self {
        let lcm = entries
            .iter()
            .fold(BigInt::one(), |acc, (_, r)| acc.lcm(r.denom()));
        let ints = entries
            .into_iter()
            .map(|(i, r)| (i, r.numer() * (&lcm / r.denom())))
            .collect();
        let mut v = SparseVec::from_entries(ints);
        v.make_primitive();
        v
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &BigInt)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, index: usize) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// Divides by the gcd of the entries and makes the leading entry positive.
    pub fn make_primitive(&mut self) {
        let g = self
            .entries
            .iter()
            .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
        if g.is_zero() {
            return;
        }
        let negate = self.entries[0].1.is_negative();
        let g = if negate { -g } else { g };
        if !g.is_one() {
            for (_, v) in &mut self.entries {
                *v /= &g;
            }
        }
    }

    /// `self * s - other * t`, both scalars integers.
    fn combine(&self, s: &BigInt, other: &SparseVec, t: &BigInt) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x * s));
                        a.next();
                    } else if j < i {
                        out.push((*j, -(y * t)));
                        b.next();
                    } else {
                        let v = x * s - y * t;
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x * s));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, -(y * t)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    /// Eliminates the entry at `col` using `pivot_row`, whose leading entry
    /// sits at `col`.
    fn eliminate(&self, col: usize, pivot_row: &SparseVec) -> SparseVec {
        let a = self.get(col).expect("entry to eliminate");
        let p = pivot_row.get(col).expect("pivot entry");
        let g = a.gcd(p);
        let mut v = self.combine(&(p / &g), pivot_row, &(a / &g));
        v.make_primitive();
        v
    }
}

/// Row-echelon basis of a subspace: rows with pairwise distinct pivot
/// columns, each pivot being the row's leading entry.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduces `v` against the basis. The result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut pos = 0;
        while pos < v.entries.len() {
            let col = v.entries[pos].0;
            match self.pivot_row.get(&col) {
                Some(&r) => v = v.eliminate(col, &self.rows[r]),
                None => pos += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        r.make_primitive();
        let col = r.entries[0].0;
        self.pivot_row.insert(col, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Fully reduces the basis so every pivot column is zero in all other rows.
    /// Returns `(pivot column, row)` pairs sorted by pivot column.
    pub fn into_reduced(self) -> Vec<(usize, SparseVec)> {
        let mut rows: Vec<(usize, SparseVec)> = self
            .rows
            .into_iter()
            .map(|r| (r.entries[0].0, r))
            .collect();
        rows.sort_by_key(|(c, _)| *c);
        for k in (0..rows.len()).rev() {
            let (col, pivot) = rows[k].clone();
            for (_, row) in rows.iter_mut().take(k) {
                if row.get(col).is_some() {
                    *row = row.eliminate(col, &pivot);
                }
            }
        }
        rows
    }
}

/// Rank of a family of vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{x : row . x = 0 for every row}` in dimension `ncols`, one
/// primitive integer vector per free column, ordered by free column.
pub fn nullspace(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    let reduced = e.into_reduced();
    let pivots: HashMap<usize, usize> = reduced
        .iter()
        .enumerate()
        .map(|(k, (c, _))| (*c, k))
        .collect();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains_key(c)) {
        // x_free = 1, x_pivot = -a/p for each row mentioning `free`
        let mut entries = vec![(free, Rational::one())];
        for (col, row) in &reduced {
            if let Some(a) = row.get(free) {
                let p = row.get(*col).expect("pivot entry");
                entries.push((*col, -Rational::new(a.clone(), p.clone())));
            }
        }
        out.push(SparseVec::primitive_from_rationals(entries));
    }
    out
}

/// Rank by dense fraction-free Bareiss elimination.
pub fn bareiss_rank(matrix: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a dense rational matrix.
pub fn rational_rank(matrix: &[Vec<Rational>]) -> usize {
    let rows: Vec<SparseVec> = matrix
        .iter()
        .map(|row| {
            SparseVec::primitive_from_rationals(
                row.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, x.clone()))
                    .collect(),
            )
        })
        .collect();
    rank(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().map(|&(i, v)| (i, BigInt::from(v))).collect())
    }

    fn dense_to_sparse(m: &[Vec<i64>]) -> Vec<SparseVec> {
        m.iter()
            .map(|row| {
                sv(&row
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (i, v))
                    .collect::<Vec<_>>())
            })
            .collect()
    }

    fn dense_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn primitive_scaling() {
        let v = SparseVec::primitive_from_rationals(vec![
            (3, Rational::new((-1).into(), 2.into())),
            (1, Rational::new((-1).into(), 3.into())),
        ]);
        assert_eq!(v, sv(&[(1, 2), (3, 3)]));
    }

    #[test]
    fn small_ranks() {
        let m = vec![vec![2, 0], vec![1, 1]];
        assert_eq!(rank(&dense_to_sparse(&m)), 2);
        assert_eq!(bareiss_rank(&dense_big(&m)), 2);
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        assert_eq!(rank(&dense_to_sparse(&m)), 1);
        assert_eq!(bareiss_rank(&dense_big(&m)), 1);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn nullspace_of_rank_one_row() {
        // x0 + 2 x1 + 3 x2 = 0
        let ns = nullspace(&[sv(&[(0, 1), (1, 2), (2, 3)])], 3);
        assert_eq!(ns, vec![sv(&[(0, 2), (1, -1)]), sv(&[(0, 3), (2, -1)])]);
    }

    #[test]
    fn nullspace_of_zero_map_is_everything() {
        let ns = nullspace(&[], 2);
        assert_eq!(ns, vec![sv(&[(0, 1)]), sv(&[(1, 1)])]);
    }

    fn dot(a: &SparseVec, b: &SparseVec) -> BigInt {
        a.entries()
            .iter()
            .filter_map(|(i, x)| b.get(*i).map(|y| x * y))
            .sum()
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_bareiss(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..6)
        ) {
            let sparse = rank(&dense_to_sparse(&rows));
            let dense = if rows.is_empty() { 0 } else { bareiss_rank(&dense_big(&rows)) };
            prop_assert_eq!(sparse, dense);
        }

        #[test]
        fn nullspace_is_kernel_with_right_dimension(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 0..5)
        ) {
            let sparse = dense_to_sparse(&rows);
            let ns = nullspace(&sparse, 6);
            prop_assert_eq!(ns.len() + rank(&sparse), 6);
            for v in &ns {
                for r in &sparse {
                    prop_assert!(dot(v, r).is_zero());
                }
            }
            prop_assert_eq!(rank(&ns), ns.len());
        }

        #[test]
        fn rank_is_invariant_under_column_permutation(
            rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..6),
            shift in 0usize..5
        ) {
            let permuted: Vec<Vec<i64>> = rows
                .iter()
                .map(|r| (0..5).map(|c| r[(c + shift) % 5]).collect())
                .collect();
            prop_assert_eq!(rank(&dense_to_sparse(&rows)), rank(&dense_to_sparse(&permuted)));
        }
    }
}
