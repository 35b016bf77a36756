//! Finite posets and meet-semilattices with dense comparability tables.
//!
//! Everything downstream (matroid lattices, straightening, the algebra
//! `B(L)` over a meet-semilattice) queries comparability in inner loops, so
//! the order relation is stored as a dense bit table and all structure is
//! validated eagerly at construction. Values are immutable afterwards.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation references element {element} but the poset has size {size}")]
    ElementOutOfRange { element: usize, size: usize },
    #[error("cycle detected: elements {a} and {b} are mutually comparable")]
    CycleDetected { a: usize, b: usize },
    #[error("elements {a} and {b} have no unique greatest lower bound")]
    NotASemilattice { a: usize, b: usize },
    #[error("poset must have at least one element")]
    Empty,
}

/// A finite poset on elements `0..size`, with the full reflexive-transitive
/// order relation stored as a bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    size: usize,
    stride: usize,
    // row-major bit rows: bit j of row i set iff i <= j
    up: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl Poset {
    /// Builds a poset from generating relations `(a, b)` meaning `a <= b`.
    /// The reflexive-transitive closure is computed; a closure that violates
    /// antisymmetry is rejected.
    pub fn build(size: usize, relations: &[(usize, usize)]) -> Result<Poset, PosetError> {
        if size == 0 {
            return Err(PosetError::Empty);
        }
        let stride = size.div_ceil(64);
        let mut up = vec![0u64; size * stride];
        for i in 0..size {
            up[i * stride + i / 64] |= 1 << (i % 64);
        }
        for &(a, b) in relations {
            for e in [a, b] {
                if e >= size {
                    return Err(PosetError::ElementOutOfRange { element: e, size });
                }
            }
            up[a * stride + b / 64] |= 1 << (b % 64);
        }
        // Warshall closure on bit rows: if i <= k then row(i) |= row(k).
        for k in 0..size {
            for i in 0..size {
                if up[i * stride + k / 64] >> (k % 64) & 1 == 1 && i != k {
                    for w in 0..stride {
                        let v = up[k * stride + w];
                        up[i * stride + w] |= v;
                    }
                }
            }
        }
        let p = Poset {
            size,
            stride,
            up,
            labels: None,
        };
        for i in 0..size {
            for j in (i + 1)..size {
                if p.leq(i, j) && p.leq(j, i) {
                    return Err(PosetError::CycleDetected { a: i, b: j });
                }
            }
        }
        Ok(p)
    }

    /// Builds directly from a closed relation. The table must already be
    /// reflexive and transitive; antisymmetry is still checked.
    pub fn from_closed_leq<F: Fn(usize, usize) -> bool>(
        size: usize,
        leq: F,
    ) -> Result<Poset, PosetError> {
        if size == 0 {
            return Err(PosetError::Empty);
        }
        let stride = size.div_ceil(64);
        let mut up = vec![0u64; size * stride];
        for i in 0..size {
            for j in 0..size {
                if i == j || leq(i, j) {
                    up[i * stride + j / 64] |= 1 << (j % 64);
                }
            }
        }
        let p = Poset {
            size,
            stride,
            up,
            labels: None,
        };
        for i in 0..size {
            for j in (i + 1)..size {
                if p.leq(i, j) && p.leq(j, i) {
                    return Err(PosetError::CycleDetected { a: i, b: j });
                }
            }
        }
        #[cfg(debug_assertions)]
        for i in 0..size {
            for j in 0..size {
                for w in 0..stride {
                    let rj = p.up[j * stride + w];
                    if p.leq(i, j) && p.up[i * stride + w] & rj != rj {
                        // i <= j but up(j) not a subset of up(i): not transitive
                        panic!("from_closed_leq: relation is not transitively closed");
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a * self.stride + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.size);
        self.labels = Some(labels);
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[x].as_str())
    }

    /// The order-dual poset, on the same element identifiers.
    pub fn dual(&self) -> Poset {
        let mut up = vec![0u64; self.size * self.stride];
        for i in 0..self.size {
            for j in 0..self.size {
                if self.leq(j, i) {
                    up[i * self.stride + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Poset {
            size: self.size,
            stride: self.stride,
            up,
            labels: self.labels.clone(),
        }
    }

    /// Elements covering `x`: minimal elements strictly above it.
    pub fn covers(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        'cand: for y in 0..self.size {
            if !self.lt(x, y) {
                continue;
            }
            for z in 0..self.size {
                if self.lt(x, z) && self.lt(z, y) {
                    continue 'cand;
                }
            }
            out.push(y);
        }
        out
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| (0..self.size).all(|y| !self.lt(y, x)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| (0..self.size).all(|y| !self.lt(x, y)))
            .collect()
    }

    /// Chain counts of the order complex: `f_vector[k]` is the number of
    /// k-element chains, with `f_vector[0] = 1` for the empty chain.
    pub fn chain_f_vector(&self) -> ChainComplexStats {
        // ends[x][k]: chains of k+1 elements with maximum x
        let mut ends = vec![vec![0u64; 0]; self.size];
        // process in a linear extension so all y < x are done before x
        let order = self.linear_extension();
        let mut max_len = 0usize;
        for &x in &order {
            let mut row = vec![1u64]; // the singleton chain {x}
            loop {
                let k = row.len(); // next: chains of k+1 elements ending at x
                let mut total = 0u64;
                for (y, row_y) in ends.iter().enumerate() {
                    if self.lt(y, x) && row_y.len() >= k {
                        total += row_y[k - 1];
                    }
                }
                if total == 0 {
                    break;
                }
                row.push(total);
            }
            max_len = max_len.max(row.len());
            ends[x] = row;
        }
        let mut f = vec![0u64; max_len + 1];
        f[0] = 1;
        for row in &ends {
            for (k, &c) in row.iter().enumerate() {
                f[k + 1] += c;
            }
        }
        ChainComplexStats { f_vector: f }
    }

    /// Some linear extension (elements listed bottom-up).
    pub fn linear_extension(&self) -> Vec<usize> {
        // y < x implies strictly fewer elements below y, so the count is a
        // valid topological key
        let down_count: Vec<usize> = (0..self.size)
            .map(|x| (0..self.size).filter(|&y| self.lt(y, x)).count())
            .collect();
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&x| down_count[x]);
        order
    }

    /// Longest-chain height of each element: number of elements strictly
    /// below it on a longest chain.
    pub fn heights(&self) -> Vec<usize> {
        let order = self.linear_extension();
        let mut h = vec![0usize; self.size];
        for &x in &order {
            for y in 0..self.size {
                if self.lt(y, x) {
                    h[x] = h[x].max(h[y] + 1);
                }
            }
        }
        h
    }

    /// Interprets this poset as a meet-semilattice, computing the full meet
    /// table. Fails on the first pair without a unique greatest lower bound.
    pub fn as_meet_semilattice(&self) -> Result<MeetSemilattice, PosetError> {
        let n = self.size;
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let lower: Vec<usize> = (0..n)
                    .filter(|&z| self.leq(z, a) && self.leq(z, b))
                    .collect();
                let maxima: Vec<usize> = lower
                    .iter()
                    .copied()
                    .filter(|&z| !lower.iter().any(|&w| self.lt(z, w)))
                    .collect();
                if maxima.len() != 1 {
                    return Err(PosetError::NotASemilattice { a, b });
                }
                meet[a * n + b] = maxima[0] as u32;
                meet[b * n + a] = maxima[0] as u32;
            }
        }
        let mut bottom = 0usize;
        for x in 0..n {
            bottom = meet[bottom * n + x] as usize;
        }
        Ok(MeetSemilattice {
            poset: self.clone(),
            meet,
            bottom,
        })
    }
}

/// A finite meet-semilattice: a poset in which every pair has a greatest
/// lower bound, with the meet table precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetSemilattice {
    poset: Poset,
    meet: Vec<u32>,
    bottom: usize,
}

impl MeetSemilattice {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.size
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.poset.size + b] as usize
    }

    /// The minimal element `0^`.
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn covers(&self, x: usize) -> Vec<usize> {
        self.poset.covers(x)
    }
}

/// Face counts of the order complex of a poset, indexed by chain size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexStats {
    pub f_vector: Vec<u64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> Poset {
        let rels: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::build(n, &rels).unwrap()
    }

    #[test]
    fn two_element_chain() {
        let p = Poset::build(2, &[(0, 1)]).unwrap();
        assert!(p.leq(0, 1));
        assert!(!p.leq(1, 0));
        assert!(p.leq(0, 0));
    }

    #[test]
    fn singleton() {
        let p = Poset::build(1, &[]).unwrap();
        assert_eq!(p.size(), 1);
        assert!(p.leq(0, 0));
        assert_eq!(p.chain_f_vector().f_vector, vec![1, 1]);
    }

    #[test]
    fn antisymmetry_violation() {
        let err = Poset::build(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, PosetError::CycleDetected { .. }));
    }

    #[test]
    fn transitive_closure_cycle() {
        let err = Poset::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert!(matches!(err, PosetError::CycleDetected { .. }));
    }

    #[test]
    fn out_of_range() {
        let err = Poset::build(2, &[(0, 5)]).unwrap_err();
        assert!(matches!(
            err,
            PosetError::ElementOutOfRange {
                element: 5,
                size: 2
            }
        ));
    }

    #[test]
    fn chain_meets_are_minima() {
        let p = chain(3);
        let s = p.as_meet_semilattice().unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(s.meet(a, b), a.min(b));
            }
        }
        assert_eq!(s.bottom(), 0);
    }

    #[test]
    fn diamond_meet() {
        // 0 < 1, 2 < 3
        let p = Poset::build(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let s = p.as_meet_semilattice().unwrap();
        assert_eq!(s.meet(1, 2), 0);
        assert_eq!(s.meet(1, 3), 1);
        assert_eq!(s.bottom(), 0);
    }

    #[test]
    fn bowtie_is_not_a_semilattice() {
        // two maximal lower bounds 0,1 for the pair (3,4):
        // 0 < 3, 0 < 4, 1 < 3, 1 < 4, and 2 unrelated filler below 0.
        // Exhaustive lower-bound enumeration on the 5-element counterexample:
        // lower(3) /\ lower(4) = {0,1,2}, whose maxima are {0,1}.
        let p = Poset::build(5, &[(2, 0), (2, 1), (0, 3), (0, 4), (1, 3), (1, 4)]).unwrap();
        let err = p.as_meet_semilattice().unwrap_err();
        assert!(matches!(err, PosetError::NotASemilattice { .. }));
    }

    #[test]
    fn covers_of_bottom_in_boolean_2() {
        // Boolean lattice on {1,2}: 0=empty, 1={1}, 2={2}, 3={1,2}
        let p = Poset::build(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let mut c = p.covers(0);
        c.sort();
        assert_eq!(c, vec![1, 2]);
        assert_eq!(p.covers(3), Vec::<usize>::new());
        assert_eq!(chain(3).covers(0), vec![1]);
    }

    // independent oracle: enumerate all subsets, keep those forming chains
    fn f_vector_by_enumeration(p: &Poset) -> Vec<u64> {
        let n = p.size();
        assert!(n <= 16);
        let mut f = vec![0u64; n + 2];
        for mask in 0u32..(1 << n) {
            let elems: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let is_chain = elems
                .iter()
                .all(|&a| elems.iter().all(|&b| p.leq(a, b) || p.leq(b, a)));
            if is_chain {
                f[elems.len()] += 1;
            }
        }
        while f.len() > 1 && *f.last().unwrap() == 0 {
            f.pop();
        }
        f
    }

    #[test]
    fn f_vector_examples() {
        let antichain = Poset::build(2, &[]).unwrap();
        assert_eq!(antichain.chain_f_vector().f_vector, vec![1, 2]);
        assert_eq!(f_vector_by_enumeration(&antichain), vec![1, 2]);

        let c3 = chain(3);
        assert_eq!(c3.chain_f_vector().f_vector, vec![1, 3, 3, 1]);
        assert_eq!(f_vector_by_enumeration(&c3), vec![1, 3, 3, 1]);
    }

    #[test]
    fn f_vector_matches_enumeration_on_mixed_posets() {
        let posets = [
            Poset::build(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
            Poset::build(5, &[(0, 1), (0, 2), (3, 4)]).unwrap(),
            Poset::build(6, &[(0, 1), (1, 2), (0, 3), (3, 4), (4, 5)]).unwrap(),
        ];
        for p in &posets {
            assert_eq!(p.chain_f_vector().f_vector, f_vector_by_enumeration(p));
        }
    }

    #[test]
    fn f_vector_invariant_under_relabeling() {
        // conjugate by a permutation and compare
        let p = Poset::build(5, &[(0, 2), (1, 2), (2, 3), (2, 4)]).unwrap();
        let perm = [3usize, 0, 4, 1, 2];
        let rels: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| (0..5).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && p.leq(a, b))
            .map(|(a, b)| (perm[a], perm[b]))
            .collect();
        let q = Poset::build(5, &rels).unwrap();
        assert_eq!(p.chain_f_vector(), q.chain_f_vector());
    }

    #[test]
    fn meet_laws() {
        // commutative, idempotent, absorbed by the bottom
        let posets = [
            Poset::build(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap(),
            Poset::build(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap(),
            chain(4),
        ];
        for p in posets {
            let s = p.as_meet_semilattice().unwrap();
            let bottom = s.bottom();
            for x in 0..s.size() {
                assert_eq!(s.meet(x, x), x);
                assert_eq!(s.meet(x, bottom), bottom);
                for y in 0..s.size() {
                    assert_eq!(s.meet(x, y), s.meet(y, x));
                    // the meet is a common lower bound dominating all others
                    let m = s.meet(x, y);
                    assert!(s.leq(m, x) && s.leq(m, y));
                    for z in 0..s.size() {
                        if s.leq(z, x) && s.leq(z, y) {
                            assert!(s.leq(z, m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn covers_reach_everything_above() {
        // every y > x passes through some cover of x
        let p = Poset::build(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (2, 5)]).unwrap();
        for x in 0..p.size() {
            let covers = p.covers(x);
            for y in 0..p.size() {
                if p.lt(x, y) {
                    assert!(
                        covers.iter().any(|&z| p.leq(z, y)),
                        "no cover of {x} below {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn dual_reverses_order() {
        let p = chain(3);
        let d = p.dual();
        assert!(d.leq(2, 0));
        assert!(!d.leq(0, 2));
        assert_eq!(d.covers(2), vec![1]);
    }

    #[test]
    fn heights_on_chain_and_diamond() {
        assert_eq!(chain(3).heights(), vec![0, 1, 2]);
        let p = Poset::build(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(p.heights(), vec![0, 1, 1, 2]);
    }
}
