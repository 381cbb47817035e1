//! All `r × r` minors of a square matrix.
//!
//! For a fixed row set `i_1 < … < i_r` the minors over every column subset are
//! built bottom-up by Laplace expansion along the topmost remaining row: level
//! `s` holds the minors of the last `s` chosen rows against all `s`-subsets of
//! columns. Subsets of a given size are stored in colex order, which is the
//! order Gosper's hack enumerates them in, so a level is a plain `Vec`.

use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::Exec;

/// Ring operations the expansion needs. Implemented for `BigInt` and the
/// rational type.
pub trait MinorEntry:
    Clone + Zero + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
}

impl<T> MinorEntry for T where
    T: Clone + Zero + Send + Sync + Add<Output = T> + Sub<Output = T> + Mul<Output = T>
{
}

/// `C(n, k)` table for `n, k ≤ max`.
pub(crate) struct Binomials {
    table: Vec<Vec<usize>>,
}

impl Binomials {
    pub(crate) fn new(max: usize) -> Self {
        let mut table = vec![vec![0usize; max + 2]; max + 2];
        for n in 0..=max + 1 {
            table[n][0] = 1;
            for k in 1..=n {
                table[n][k] = table[n - 1][k - 1] + if k < n { table[n - 1][k] } else { 0 };
            }
        }
        Binomials { table }
    }

    pub(crate) fn get(&self, n: usize, k: usize) -> usize {
        if k > n {
            0
        } else {
            self.table[n][k]
        }
    }

    /// Position of `mask` among subsets of the same size in colex order.
    fn colex_rank(&self, mask: u64) -> usize {
        let mut rank = 0;
        let mut m = mask;
        let mut j = 1;
        while m != 0 {
            let pos = m.trailing_zeros() as usize;
            rank += self.get(pos, j);
            j += 1;
            m &= m - 1;
        }
        rank
    }
}

/// All `size`-subsets of `0..n` as bitmasks, in colex order.
fn colex_subsets(n: usize, size: usize) -> Vec<u64> {
    if size == 0 {
        return vec![0];
    }
    if size > n {
        return Vec::new();
    }
    let limit = 1u64 << n;
    let mut out = Vec::new();
    let mut v: u64 = (1u64 << size) - 1;
    while v < limit {
        out.push(v);
        let t = v | (v - 1);
        let w = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
        v = w;
    }
    out
}

/// All `size`-subsets of `0..n` as sorted index lists, in lexicographic order.
pub fn lex_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

/// Minors of `a` restricted to `rows`, against every column subset of size
/// `rows.len()`, in lexicographic order of the column subsets.
///
/// `binom` must cover `a.len()`.
pub(crate) fn minors_for_rows<T: MinorEntry>(
    a: &[Vec<T>],
    rows: &[usize],
    lex_cols: &[u64],
    binom: &Binomials,
) -> Vec<T> {
    let n = a.len();
    let r = rows.len();
    assert!(r >= 1 && n <= 63);
    let mut level: Vec<T> = (0..n).map(|c| a[rows[r - 1]][c].clone()).collect();
    for s in 1..r {
        let row = &a[rows[r - 1 - s]];
        let subsets = colex_subsets(n, s + 1);
        let mut next = Vec::with_capacity(subsets.len());
        for &mask in &subsets {
            let mut acc = T::zero();
            let mut m = mask;
            let mut idx = 0;
            while m != 0 {
                let c = m.trailing_zeros() as usize;
                m &= m - 1;
                let entry = &row[c];
                if !entry.is_zero() {
                    let sub = &level[binom.colex_rank(mask & !(1u64 << c))];
                    if !sub.is_zero() {
                        let term = entry.clone() * sub.clone();
                        acc = if idx % 2 == 0 { acc + term } else { acc - term };
                    }
                }
                idx += 1;
            }
            next.push(acc);
        }
        level = next;
    }
    lex_cols.iter().map(|&m| level[binom.colex_rank(m)].clone()).collect()
}

/// Precomputed index data for repeated minor extraction of order `r` on an
/// `n × n` matrix.
pub(crate) struct MinorPlan {
    pub(crate) subsets: Vec<Vec<usize>>,
    pub(crate) lex_masks: Vec<u64>,
    pub(crate) binom: Binomials,
}

impl MinorPlan {
    pub(crate) fn new(n: usize, r: usize) -> Self {
        let subsets = lex_subsets(n, r);
        let lex_masks = subsets.iter().map(|s| mask_of(s)).collect();
        MinorPlan { subsets, lex_masks, binom: Binomials::new(n) }
    }

    pub(crate) fn row_minors<T: MinorEntry>(&self, a: &[Vec<T>], row_set: usize) -> Vec<T> {
        minors_for_rows(a, &self.subsets[row_set], &self.lex_masks, &self.binom)
    }
}

/// The `r`-th compound of `a` as rows of minors.
pub fn compound_table<T: MinorEntry>(a: &[Vec<T>], r: usize, exec: Exec) -> Vec<Vec<T>> {
    let plan = MinorPlan::new(a.len(), r);
    exec.map_range(plan.subsets.len(), |i| plan.row_minors(a, i))
}
