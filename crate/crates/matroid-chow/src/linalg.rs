//! Exact integer linear algebra: sparse elimination with unit pivots, a
//! dense Smith normal form for whatever remains, and a fraction-free
//! determinant.
//!
//! The relation matrices this crate builds are extremely sparse with almost
//! all entries in {-2,...,2}, so elimination over unit pivots does nearly
//! all the work; the dense normal-form fallback only ever sees a small core.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Outcome of reducing an integer matrix: the rank over Q and the nontrivial
/// invariant factors of the row lattice (units omitted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub rank: usize,
    pub nonunit_factors: Vec<BigInt>,
}

impl Reduction {
    /// True when the quotient of the ambient Z^n by the row lattice has no
    /// torsion, i.e. every invariant factor is 1.
    pub fn torsion_free(&self) -> bool {
        self.nonunit_factors.is_empty()
    }
}

/// A sparse integer matrix held row-wise; rows are (column, value) lists
/// sorted by column.
pub struct SparseIntMatrix {
    n_cols: usize,
    rows: Vec<Vec<(u32, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn new(n_cols: usize) -> SparseIntMatrix {
        SparseIntMatrix {
            n_cols,
            rows: Vec::new(),
        }
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row given as (column, value) pairs; zeros are dropped and
    /// duplicate columns merged.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, BigInt)>) {
        let mut row: Vec<(u32, BigInt)> = Vec::new();
        for (c, v) in entries {
            assert!(c < self.n_cols);
            row.push((c as u32, v));
        }
        row.sort_by_key(|&(c, _)| c);
        row.dedup_by(|b, a| {
            if a.0 == b.0 {
                let v = std::mem::take(&mut b.1);
                a.1 += v;
                true
            } else {
                false
            }
        });
        row.retain(|(_, v)| !v.is_zero());
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    /// Reduces the matrix: eliminates greedily over +-1 pivots chosen by a
    /// Markowitz fill estimate, then runs the dense Smith normal form on the
    /// remaining core.
    pub fn reduce(mut self) -> Reduction {
        let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); self.n_cols];
        for (i, row) in self.rows.iter().enumerate() {
            for &(c, _) in row {
                col_rows[c as usize].push(i);
            }
        }
        let mut row_alive: Vec<bool> = vec![true; self.rows.len()];
        let mut col_alive: Vec<bool> = vec![true; self.n_cols];
        let mut col_count: Vec<usize> = col_rows.iter().map(|v| v.len()).collect();
        let mut unit_pivots = 0usize;

        // lazy min-heap over (column count, column): stale entries are
        // re-pushed with their current count; columns found to have no unit
        // entry are deferred and retried once more pivots have run
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..self.n_cols)
            .filter(|&c| col_count[c] > 0)
            .map(|c| Reverse((col_count[c], c)))
            .collect();
        let mut deferred: Vec<usize> = Vec::new();
        let mut progressed = false;

        loop {
            // pivot on the sparsest live column that has a unit entry,
            // breaking ties toward the shortest row
            let mut found: Option<(usize, usize, u32)> = None; // (row_len, row, col)
            while found.is_none() {
                let c = match heap.pop() {
                    Some(Reverse((cnt, c))) => {
                        if !col_alive[c] || col_count[c] == 0 {
                            continue;
                        }
                        if cnt != col_count[c] {
                            heap.push(Reverse((col_count[c], c)));
                            continue;
                        }
                        c
                    }
                    None => {
                        // retry deferred columns if anything changed since
                        if progressed && !deferred.is_empty() {
                            for c in deferred.drain(..) {
                                if col_alive[c] && col_count[c] > 0 {
                                    heap.push(Reverse((col_count[c], c)));
                                }
                            }
                            progressed = false;
                            continue;
                        }
                        break;
                    }
                };
                let mut best: Option<(usize, usize)> = None; // (row_len, row)
                for &r in &col_rows[c] {
                    if !row_alive[r] {
                        continue;
                    }
                    let row = &self.rows[r];
                    match row.iter().find(|&&(rc, _)| rc as usize == c) {
                        Some((_, v))
                            if v.abs().is_one() && best.is_none_or(|(len, _)| row.len() < len) =>
                        {
                            best = Some((row.len(), r));
                        }
                        _ => {}
                    }
                }
                match best {
                    Some((len, r)) => found = Some((len, r, c as u32)),
                    None => deferred.push(c),
                }
            }
            let (_, pr, pc) = match found {
                Some(b) => b,
                None => break,
            };
            progressed = true;

            // eliminate column pc using row pr
            let pivot_row = std::mem::take(&mut self.rows[pr]);
            let pivot_val = pivot_row
                .iter()
                .find(|&&(c, _)| c == pc)
                .map(|(_, v)| v.clone())
                .expect("pivot entry present");
            let victims: Vec<usize> = col_rows[pc as usize]
                .iter()
                .copied()
                .filter(|&r| r != pr && row_alive[r] && !self.rows[r].is_empty())
                .collect();
            for r in victims {
                let coeff = match self.rows[r].iter().find(|&&(c, _)| c == pc) {
                    Some((_, v)) => v.clone(),
                    None => continue, // stale index
                };
                // row_r -= (coeff / pivot) * pivot_row, pivot is +-1
                let mult = &coeff * &pivot_val; // coeff * pivot^{-1} since pivot^2 = 1
                let merged = sub_scaled(&self.rows[r], &pivot_row, &mult);
                // update column occupancy
                for &(c, _) in &self.rows[r] {
                    col_count[c as usize] -= 1;
                }
                for &(c, _) in &merged {
                    col_count[c as usize] += 1;
                    col_rows[c as usize].push(r);
                }
                self.rows[r] = merged;
                if self.rows[r].is_empty() {
                    row_alive[r] = false;
                }
            }
            for &(c, _) in &pivot_row {
                col_count[c as usize] -= 1;
            }
            row_alive[pr] = false;
            col_alive[pc as usize] = false;
            unit_pivots += 1;
        }

        // dense core: whatever rows and columns survive
        let live_cols: Vec<usize> = (0..self.n_cols).filter(|&c| col_alive[c]).collect();
        let col_index: std::collections::HashMap<usize, usize> =
            live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense: Vec<Vec<BigInt>> = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            if !row_alive[i] || row.is_empty() {
                continue;
            }
            let mut d = vec![BigInt::zero(); live_cols.len()];
            for &(c, ref v) in row {
                d[col_index[&(c as usize)]] = v.clone();
            }
            dense.push(d);
        }
        let mut factors = smith_normal_form(&mut dense);
        let rank = unit_pivots + factors.len();
        factors.retain(|f| !f.is_one());
        Reduction {
            rank,
            nonunit_factors: factors,
        }
    }
}

fn sub_scaled(a: &[(u32, BigInt)], b: &[(u32, BigInt)], mult: &BigInt) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                let v = -(mult * &b[j].1);
                if !v.is_zero() {
                    out.push((b[j].0, v));
                }
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = &a[i].1 - mult * &b[j].1;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (c, v) in &b[j..] {
        let v = -(mult * v);
        if !v.is_zero() {
            out.push((*c, v));
        }
    }
    out
}

/// Dense Smith normal form over the integers; returns the nonzero invariant
/// factors (all positive, each dividing the next). The input is consumed.
#[allow(clippy::needless_range_loop)] // column ops index across rows
pub fn smith_normal_form(mat: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut factors: Vec<BigInt> = Vec::new();
    let mut top = 0usize;

    while top < rows.min(cols) {
        // find the nonzero entry of smallest magnitude in the working block
        let mut pivot: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in top..cols {
                if !mat[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| mat[i][j].abs() < mat[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        mat.swap(top, pi);
        for row in mat.iter_mut() {
            row.swap(top, pj);
        }

        // clear the pivot row and column; restart if a remainder shrinks the pivot
        'outer: loop {
            for i in (top + 1)..rows {
                if !mat[i][top].is_zero() {
                    let q = div_nearest(&mat[i][top], &mat[top][top]);
                    if !q.is_zero() {
                        for j in top..cols {
                            let s = &q * &mat[top][j];
                            mat[i][j] -= s;
                        }
                    }
                    if !mat[i][top].is_zero() {
                        mat.swap(top, i);
                        continue 'outer;
                    }
                }
            }
            for j in (top + 1)..cols {
                if !mat[top][j].is_zero() {
                    let q = div_nearest(&mat[top][j], &mat[top][top]);
                    if !q.is_zero() {
                        for row in mat.iter_mut().take(rows).skip(top) {
                            let s = &q * &row[top];
                            row[j] -= s;
                        }
                    }
                    if !mat[top][j].is_zero() {
                        for row in mat.iter_mut() {
                            row.swap(top, j);
                        }
                        continue 'outer;
                    }
                }
            }
            break;
        }

        // divisibility: pivot must divide every remaining entry
        let p = mat[top][top].clone();
        let mut fixed = false;
        'scan: for i in (top + 1)..rows {
            for j in (top + 1)..cols {
                if !(&mat[i][j] % &p).is_zero() {
                    // fold row i into the pivot row and redo this pivot
                    for j2 in top..cols {
                        let v = mat[i][j2].clone();
                        mat[top][j2] += v;
                    }
                    fixed = true;
                    break 'scan;
                }
            }
        }
        if fixed {
            continue;
        }
        factors.push(p.abs());
        top += 1;
    }
    factors
}

/// Quotient rounding to nearest, so remainders have magnitude <= |d|/2.
fn div_nearest(n: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = n.div_rem(d);
    if r.abs() * 2u8 > d.abs() {
        if r.is_negative() == d.is_negative() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(
        mat.iter().all(|r| r.len() == n),
        "determinant needs a square matrix"
    );
    let mut a: Vec<Vec<BigInt>> = mat.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev; // exact by Sylvester's identity
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn reduce(rows: &[&[i64]], n_cols: usize) -> Reduction {
        let mut m = SparseIntMatrix::new(n_cols);
        for r in rows {
            m.push_row(r.iter().enumerate().map(|(c, &v)| (c, BigInt::from(v))));
        }
        m.reduce()
    }

    #[test]
    fn identity_reduces_fully() {
        let r = reduce(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3);
        assert_eq!(r.rank, 3);
        assert!(r.torsion_free());
    }

    #[test]
    fn torsion_detected() {
        // Z^2 / <(2,0)> has a Z/2 summand
        let r = reduce(&[&[2, 0]], 2);
        assert_eq!(r.rank, 1);
        assert_eq!(r.nonunit_factors, vec![BigInt::from(2)]);
    }

    #[test]
    fn saturated_non_unit_entries() {
        // rows (2,1) and (3,2) span a finite-index... actually det=1: saturated
        let r = reduce(&[&[2, 1], &[3, 2]], 2);
        assert_eq!(r.rank, 2);
        assert!(r.torsion_free());
    }

    #[test]
    fn dependent_rows() {
        // (1,2,3) - (1,0,1) = (0,2,2): the quotient picks up a Z/2 summand
        let r = reduce(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]], 3);
        assert_eq!(r.rank, 2);
        assert_eq!(r.nonunit_factors, vec![BigInt::from(2)]);
    }

    #[test]
    fn snf_classic() {
        // diag(2,6,12)-style example
        let mut m = big(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let f = smith_normal_form(&mut m);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
    }

    #[test]
    fn snf_divisibility_chain() {
        let mut m = big(&[&[6, 0], &[0, 10]]);
        let f = smith_normal_form(&mut m);
        assert_eq!(f, vec![BigInt::from(2), BigInt::from(30)]);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&big(&[&[3]])), BigInt::from(3));
        assert_eq!(determinant(&big(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(
            determinant(&big(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]])),
            BigInt::from(5)
        );
        assert_eq!(determinant(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&big(&[&[0, 0], &[1, 1]])), BigInt::zero());
    }

    #[test]
    fn determinant_agrees_with_snf_magnitude() {
        let rows: &[&[i64]] = &[&[4, -2, 7], &[1, 0, 3], &[-5, 2, 2]];
        let det = determinant(&big(rows));
        let mut m = big(rows);
        let f = smith_normal_form(&mut m);
        let prod: BigInt = f.iter().product();
        assert_eq!(det.abs(), prod);
    }

    #[test]
    fn sparse_matches_dense_snf_on_random_small() {
        // deterministic pseudo-random small matrices
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..20 {
            let rows = 4 + (next() % 3) as usize;
            let cols = 3 + (next() % 3) as usize;
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| (next() % 7) as i64 - 3).collect())
                .collect();
            let mut sm = SparseIntMatrix::new(cols);
            for r in &data {
                sm.push_row(r.iter().enumerate().map(|(c, &v)| (c, BigInt::from(v))));
            }
            let red = sm.reduce();
            let mut dense: Vec<Vec<BigInt>> = data
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            let f = smith_normal_form(&mut dense);
            assert_eq!(red.rank, f.len());
            let nonunit: Vec<BigInt> = f.into_iter().filter(|x| !x.is_one()).collect();
            assert_eq!(red.nonunit_factors, nonunit);
        }
    }
}
