//! Lattices of flats with rank functions.
//!
//! A matroid here is exactly a finite nonempty atomic ranked lattice whose
//! rank function is submodular; flats are abstract lattice elements and the
//! optional ground-set labels are cosmetic. Constructors for the standard
//! families (Boolean, uniform, graphic) and the minor operations
//! (restriction `M^F`, contraction `M_F`, truncation `Tr M`) all funnel
//! through the same validator.

use std::sync::Arc;

use thiserror::Error;

use crate::poset::Poset;

/// Hard ceiling on the number of flats accepted by any constructor.
/// Straightening cost grows quickly with chain structure; this is a
/// desk-scale verifier.
pub const MAX_FLATS: usize = 4096;

/// Identifier of a flat inside a specific [`MatroidLattice`].
///
/// After construction, flats are indexed canonically: sorted by rank, then
/// by ground-set label, then by construction order. Index 0 is always the
/// minimal flat.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlatId(pub u32);

impl FlatId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for FlatId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("not a lattice: elements {a} and {b} lack a unique {kind}")]
    NotALattice {
        a: usize,
        b: usize,
        kind: &'static str,
    },
    #[error("not ranked: cover {lower} < {upper} has rank jump {jump}")]
    NotRanked {
        lower: usize,
        upper: usize,
        jump: i64,
    },
    #[error("rank of the minimal flat is {rank}, expected 0")]
    BadBottomRank { rank: u32 },
    #[error("not atomic: flat {flat} is not the join of the atoms below it")]
    NotAtomic { flat: usize },
    #[error("not submodular: witness pair ({a}, {b})")]
    NotSubmodular { a: usize, b: usize },
    #[error("size limit exceeded: {actual} (limit {limit})")]
    SizeLimit { actual: usize, limit: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("operation requires positive rank")]
    RankZero,
    #[error("empty lattice")]
    Empty,
}

/// A validated lattice of flats: the single source of combinatorial truth
/// for everything built on top.
#[derive(Debug, Clone)]
pub struct MatroidLattice {
    size: usize,
    stride: usize,
    up: Vec<u64>, // bit j of row i set iff flat i <= flat j
    meet: Vec<u32>,
    join: Vec<u32>,
    rank: Vec<u32>,
    atoms: Vec<FlatId>,
    ground_size: usize,
    labels: Option<Vec<Vec<u16>>>, // sorted ground-element lists per flat
}

impl MatroidLattice {
    /// Validates a candidate lattice given as a closed order relation plus
    /// ranks, and canonically reindexes the flats.
    ///
    /// Checks, in order: antisymmetry, unique bottom and top, existence of
    /// all meets and joins, rank 0 at the bottom with every cover a rank
    /// jump of exactly 1, atomicity, and submodularity.
    pub fn validate(
        size: usize,
        leq: impl Fn(usize, usize) -> bool,
        rank: Vec<u32>,
        ground_size: usize,
        labels: Option<Vec<Vec<u16>>>,
    ) -> Result<MatroidLattice, MatroidError> {
        Self::build_canonical(size, leq, rank, ground_size, labels, true).map(|(m, _)| m)
    }

    /// Canonicalizes and (optionally) validates. Returns the lattice together
    /// with the permutation `order` mapping canonical index -> input index.
    fn build_canonical(
        size: usize,
        leq: impl Fn(usize, usize) -> bool,
        rank: Vec<u32>,
        ground_size: usize,
        labels: Option<Vec<Vec<u16>>>,
        check: bool,
    ) -> Result<(MatroidLattice, Vec<usize>), MatroidError> {
        if size == 0 {
            return Err(MatroidError::Empty);
        }
        if size > MAX_FLATS {
            return Err(MatroidError::SizeLimit {
                actual: size,
                limit: MAX_FLATS,
            });
        }
        assert_eq!(rank.len(), size);
        if let Some(ref l) = labels {
            assert_eq!(l.len(), size);
        }

        // canonical order: (rank, label, input index)
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by(|&a, &b| {
            let la = labels.as_ref().map(|l| &l[a]);
            let lb = labels.as_ref().map(|l| &l[b]);
            (rank[a], la, a).cmp(&(rank[b], lb, b))
        });

        let stride = size.div_ceil(64);
        let mut up = vec![0u64; size * stride];
        for i in 0..size {
            for j in 0..size {
                if i == j || leq(order[i], order[j]) {
                    up[i * stride + j / 64] |= 1 << (j % 64);
                }
            }
        }
        let rank: Vec<u32> = order.iter().map(|&o| rank[o]).collect();
        let labels = labels.map(|l| order.iter().map(|&o| l[o].clone()).collect::<Vec<_>>());

        let mut m = MatroidLattice {
            size,
            stride,
            up,
            meet: Vec::new(),
            join: Vec::new(),
            rank,
            atoms: Vec::new(),
            ground_size,
            labels,
        };
        m.finish(check)?;
        Ok((m, order))
    }

    fn finish(&mut self, check: bool) -> Result<(), MatroidError> {
        let n = self.size;

        if check {
            // antisymmetry: corrupt flats files can hand us anything
            for i in 0..n {
                for j in (i + 1)..n {
                    if self.leq_raw(i, j) && self.leq_raw(j, i) {
                        return Err(MatroidError::NotALattice {
                            a: i,
                            b: j,
                            kind: "order",
                        });
                    }
                }
            }
            let minimals: Vec<usize> = (0..n)
                .filter(|&x| (0..n).all(|y| y == x || !self.leq_raw(y, x)))
                .collect();
            let maximals: Vec<usize> = (0..n)
                .filter(|&x| (0..n).all(|y| y == x || !self.leq_raw(x, y)))
                .collect();
            if minimals.len() != 1 || maximals.len() != 1 {
                return Err(MatroidError::NotALattice {
                    a: *minimals.first().unwrap_or(&0),
                    b: *maximals.first().unwrap_or(&0),
                    kind: "bottom/top",
                });
            }
        }

        // meets and joins via bitset intersections of down-sets / up-sets
        let w = self.stride;
        let mut down = vec![0u64; n * w];
        for i in 0..n {
            for j in 0..n {
                if self.leq_raw(j, i) {
                    down[i * w + j / 64] |= 1 << (j % 64);
                }
            }
        }
        self.meet = vec![0u32; n * n];
        self.join = vec![0u32; n * n];
        let mut buf = vec![0u64; w];
        for a in 0..n {
            for b in a..n {
                for (k, slot) in buf.iter_mut().enumerate() {
                    *slot = down[a * w + k] & down[b * w + k];
                }
                let cand = Self::unique_extremal(&buf, &self.rank, true)
                    .filter(|&c| !check || buf[..w] == down[c * w..c * w + w]);
                let cand = match cand {
                    Some(c) => c,
                    None => return Err(MatroidError::NotALattice { a, b, kind: "meet" }),
                };
                self.meet[a * n + b] = cand as u32;
                self.meet[b * n + a] = cand as u32;

                for (k, slot) in buf.iter_mut().enumerate() {
                    *slot = self.up[a * w + k] & self.up[b * w + k];
                }
                let cand = Self::unique_extremal(&buf, &self.rank, false)
                    .filter(|&c| !check || buf[..w] == self.up[c * w..c * w + w]);
                let cand = match cand {
                    Some(c) => c,
                    None => return Err(MatroidError::NotALattice { a, b, kind: "join" }),
                };
                self.join[a * n + b] = cand as u32;
                self.join[b * n + a] = cand as u32;
            }
        }

        self.atoms = (0..n)
            .filter(|&x| self.rank[x] == 1)
            .map(|x| FlatId(x as u32))
            .collect();

        if check {
            // ranked: bottom at rank 0, covers jump by exactly 1
            if self.rank[0] != 0 {
                return Err(MatroidError::BadBottomRank { rank: self.rank[0] });
            }
            for lower in 0..n {
                'upper: for upper in 0..n {
                    if !self.lt_raw(lower, upper) {
                        continue;
                    }
                    for z in 0..n {
                        if self.lt_raw(lower, z) && self.lt_raw(z, upper) {
                            continue 'upper;
                        }
                    }
                    let jump = self.rank[upper] as i64 - self.rank[lower] as i64;
                    if jump != 1 {
                        return Err(MatroidError::NotRanked { lower, upper, jump });
                    }
                }
            }

            // atomic: every flat is the join of the atoms below it
            for f in 0..n {
                let mut j = 0usize; // bottom is index 0 after the canonical sort
                for a in &self.atoms {
                    if self.leq_raw(a.index(), f) {
                        j = self.join[j * n + a.index()] as usize;
                    }
                }
                if j != f {
                    return Err(MatroidError::NotAtomic { flat: f });
                }
            }

            // submodular
            for a in 0..n {
                for b in (a + 1)..n {
                    let j = self.join[a * n + b] as usize;
                    let m = self.meet[a * n + b] as usize;
                    if self.rank[j] + self.rank[m] > self.rank[a] + self.rank[b] {
                        return Err(MatroidError::NotSubmodular { a, b });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    fn leq_raw(&self, a: usize, b: usize) -> bool {
        self.up[a * self.stride + b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    fn lt_raw(&self, a: usize, b: usize) -> bool {
        a != b && self.leq_raw(a, b)
    }

    /// Unique extremal element (max or min rank) of a bitset of flats.
    /// A tie at the extremal rank means the bound is not unique.
    fn unique_extremal(bits: &[u64], rank: &[u32], max: bool) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut count_at_best = 0usize;
        for (w, &word) in bits.iter().enumerate() {
            let mut word = word;
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                let x = w * 64 + b;
                match best {
                    None => {
                        best = Some(x);
                        count_at_best = 1;
                    }
                    Some(cur) => {
                        if rank[x] == rank[cur] {
                            count_at_best += 1;
                        } else if max == (rank[x] > rank[cur]) {
                            best = Some(x);
                            count_at_best = 1;
                        }
                    }
                }
            }
        }
        best.filter(|_| count_at_best == 1)
    }

    // ------------------------------------------------------------------
    // queries

    pub fn size(&self) -> usize {
        self.size
    }

    /// Rank of the whole matroid, `rk(E)`.
    pub fn rank_top(&self) -> u32 {
        self.rank[self.size - 1]
    }

    #[inline]
    pub fn rank(&self, f: FlatId) -> u32 {
        self.rank[f.index()]
    }

    pub fn bottom(&self) -> FlatId {
        FlatId(0)
    }

    pub fn top(&self) -> FlatId {
        FlatId(self.size as u32 - 1)
    }

    #[inline]
    pub fn leq(&self, a: FlatId, b: FlatId) -> bool {
        self.leq_raw(a.index(), b.index())
    }

    #[inline]
    pub fn lt(&self, a: FlatId, b: FlatId) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn join(&self, a: FlatId, b: FlatId) -> FlatId {
        FlatId(self.join[a.index() * self.size + b.index()])
    }

    #[inline]
    pub fn meet(&self, a: FlatId, b: FlatId) -> FlatId {
        FlatId(self.meet[a.index() * self.size + b.index()])
    }

    pub fn atoms(&self) -> &[FlatId] {
        &self.atoms
    }

    pub fn flats(&self) -> impl Iterator<Item = FlatId> + '_ {
        (0..self.size as u32).map(FlatId)
    }

    /// Nonempty flats, i.e. everything except the bottom.
    pub fn nonempty_flats(&self) -> impl Iterator<Item = FlatId> + '_ {
        (1..self.size as u32).map(FlatId)
    }

    pub fn covers(&self, f: FlatId) -> Vec<FlatId> {
        let x = f.index();
        let mut out = Vec::new();
        'cand: for y in 0..self.size {
            if !self.lt_raw(x, y) {
                continue;
            }
            for z in 0..self.size {
                if self.lt_raw(x, z) && self.lt_raw(z, y) {
                    continue 'cand;
                }
            }
            out.push(FlatId(y as u32));
        }
        out
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn label(&self, f: FlatId) -> Option<&[u16]> {
        self.labels.as_ref().map(|l| l[f.index()].as_slice())
    }

    /// Atoms of the matroid not lying below `g`.
    pub fn atoms_outside(&self, g: FlatId) -> Vec<FlatId> {
        self.atoms
            .iter()
            .copied()
            .filter(|&a| !self.leq(a, g))
            .collect()
    }

    pub fn as_poset(&self) -> Poset {
        Poset::from_closed_leq(self.size, |a, b| self.leq_raw(a, b))
            .expect("validated lattice is a poset")
    }

    // ------------------------------------------------------------------
    // constructors

    /// The Boolean matroid: all subsets of an n-element set, rank = cardinality.
    pub fn boolean(n: usize) -> Result<Arc<MatroidLattice>, MatroidError> {
        if n == 0 || n > 12 {
            return Err(MatroidError::InvalidParams(format!(
                "boolean matroid needs 1 <= n <= 12, got {n}"
            )));
        }
        let size = 1usize << n;
        let labels: Vec<Vec<u16>> = (0..size)
            .map(|s| (0..n as u16).filter(|&e| s >> e & 1 == 1).collect())
            .collect();
        let rank: Vec<u32> = (0..size).map(|s| (s as u32).count_ones()).collect();
        let m = Self::validate(size, |a, b| a & b == a, rank, n, Some(labels))?;
        Ok(Arc::new(m))
    }

    /// The uniform matroid U_{r,n}: flats are all subsets of size < r plus
    /// the full set.
    pub fn uniform(r: usize, n: usize) -> Result<Arc<MatroidLattice>, MatroidError> {
        if r == 0 || r > n || n > 16 {
            return Err(MatroidError::InvalidParams(format!(
                "uniform matroid needs 0 < r <= n <= 16, got r={r} n={n}"
            )));
        }
        let mut subsets: Vec<u32> = (0..(1u32 << n))
            .filter(|s| (s.count_ones() as usize) < r)
            .collect();
        subsets.push((1u32 << n) - 1);
        if subsets.len() > MAX_FLATS {
            return Err(MatroidError::SizeLimit {
                actual: subsets.len(),
                limit: MAX_FLATS,
            });
        }
        let labels: Vec<Vec<u16>> = subsets
            .iter()
            .map(|&s| (0..n as u16).filter(|&e| s >> e & 1 == 1).collect())
            .collect();
        let rank: Vec<u32> = subsets
            .iter()
            .map(|&s| s.count_ones().min(r as u32))
            .collect();
        let m = Self::validate(
            subsets.len(),
            |a, b| subsets[a] & subsets[b] == subsets[a],
            rank,
            n,
            Some(labels),
        )?;
        Ok(Arc::new(m))
    }

    /// The graphic matroid of a multigraph. Edges are the ground set; flats
    /// are the closed edge sets under the cycle closure, and rank of an edge
    /// set is `#vertices - #components` of the spanning subgraph.
    pub fn graphic(
        vertices: usize,
        edges: &[(usize, usize)],
    ) -> Result<Arc<MatroidLattice>, MatroidError> {
        if edges.len() > 10 {
            return Err(MatroidError::SizeLimit {
                actual: edges.len(),
                limit: 10,
            });
        }
        if vertices == 0 {
            return Err(MatroidError::InvalidParams(
                "graph needs at least one vertex".into(),
            ));
        }
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(MatroidError::InvalidParams(format!(
                    "edge ({u},{v}) out of range for {vertices} vertices"
                )));
            }
        }
        let m = edges.len();

        // vertex components of the spanning subgraph picked out by an edge mask
        let components = |mask: u32| -> Vec<usize> {
            let mut root: Vec<usize> = (0..vertices).collect();
            fn find(root: &mut [usize], x: usize) -> usize {
                while root[x] != root[root[x]] {
                    root[x] = root[root[x]];
                }
                root[x]
            }
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let (ru, rv) = (find(&mut root, u), find(&mut root, v));
                    root[ru] = rv;
                }
            }
            (0..vertices).map(|x| find(&mut root, x)).collect()
        };
        let closure = |mask: u32| -> u32 {
            let comp = components(mask);
            let mut out = 0u32;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if comp[u] == comp[v] {
                    out |= 1 << i;
                }
            }
            out
        };
        let rank_of = |mask: u32| -> u32 {
            let mut comp = components(mask);
            comp.sort_unstable();
            comp.dedup();
            (vertices - comp.len()) as u32
        };

        // enumerate flats by closure extension from the bottom
        let mut flats: Vec<u32> = vec![closure(0)];
        let mut seen = std::collections::HashSet::new();
        seen.insert(flats[0]);
        let mut queue = vec![flats[0]];
        while let Some(f) = queue.pop() {
            for e in 0..m {
                if f >> e & 1 == 0 {
                    let c = closure(f | (1 << e));
                    if seen.insert(c) {
                        flats.push(c);
                        queue.push(c);
                    }
                }
            }
        }
        flats.sort_unstable();
        let labels: Vec<Vec<u16>> = flats
            .iter()
            .map(|&s| (0..m as u16).filter(|&e| s >> e & 1 == 1).collect())
            .collect();
        let rank: Vec<u32> = flats.iter().map(|&s| rank_of(s)).collect();
        let lat = Self::validate(
            flats.len(),
            |a, b| flats[a] & flats[b] == flats[a],
            rank,
            m,
            Some(labels),
        )?;
        Ok(Arc::new(lat))
    }

    // ------------------------------------------------------------------
    // minors

    /// The restriction M^F: the interval `[bottom, F]` with inherited ranks.
    pub fn restriction(self: &Arc<Self>, f: FlatId) -> Minor {
        let keep: Vec<usize> = (0..self.size)
            .filter(|&x| self.leq_raw(x, f.index()))
            .collect();
        self.interval_minor(keep, 0)
    }

    /// The contraction M_G: the interval `[G, top]`, ranks shifted so the
    /// new bottom has rank 0.
    pub fn contraction(self: &Arc<Self>, g: FlatId) -> Minor {
        let keep: Vec<usize> = (0..self.size)
            .filter(|&x| self.leq_raw(g.index(), x))
            .collect();
        self.interval_minor(keep, self.rank(g))
    }

    fn interval_minor(self: &Arc<Self>, keep: Vec<usize>, rank_shift: u32) -> Minor {
        let rank: Vec<u32> = keep.iter().map(|&x| self.rank[x] - rank_shift).collect();
        let base_label: Vec<u16> = if rank_shift > 0 {
            self.labels
                .as_ref()
                .map(|l| l[keep[0]].clone())
                .unwrap_or_default()
        } else {
            Vec::new()
        };
        let labels = self.labels.as_ref().map(|l| {
            keep.iter()
                .map(|&x| {
                    l[x].iter()
                        .copied()
                        .filter(|e| !base_label.contains(e))
                        .collect()
                })
                .collect::<Vec<Vec<u16>>>()
        });
        // intervals of geometric lattices are geometric: trust in release,
        // re-validate in debug
        let (matroid, order) = Self::build_canonical(
            keep.len(),
            |a, b| self.leq_raw(keep[a], keep[b]),
            rank,
            self.ground_size,
            labels,
            cfg!(debug_assertions),
        )
        .expect("interval of a validated matroid lattice must validate");
        let to_parent: Vec<FlatId> = order.iter().map(|&i| FlatId(keep[i] as u32)).collect();
        Minor::new(self.clone(), Arc::new(matroid), to_parent)
    }

    /// The truncation Tr M: corank-1 flats removed, the top dropping to
    /// rank r-1. The result is re-validated.
    pub fn truncation(self: &Arc<Self>) -> Result<Minor, MatroidError> {
        let r = self.rank_top();
        if r == 0 {
            return Err(MatroidError::RankZero);
        }
        let keep: Vec<usize> = (0..self.size).filter(|&x| self.rank[x] != r - 1).collect();
        let rank: Vec<u32> = keep
            .iter()
            .map(|&x| {
                if self.rank[x] == r {
                    r - 1
                } else {
                    self.rank[x]
                }
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| keep.iter().map(|&x| l[x].clone()).collect::<Vec<_>>());
        let (matroid, order) = Self::build_canonical(
            keep.len(),
            |a, b| self.leq_raw(keep[a], keep[b]),
            rank,
            self.ground_size,
            labels,
            true,
        )?;
        let to_parent: Vec<FlatId> = order.iter().map(|&i| FlatId(keep[i] as u32)).collect();
        Ok(Minor::new(self.clone(), Arc::new(matroid), to_parent))
    }
}

/// A minor together with the index maps between its flats and the parent's.
#[derive(Debug, Clone)]
pub struct Minor {
    pub parent: Arc<MatroidLattice>,
    pub matroid: Arc<MatroidLattice>,
    to_parent: Vec<FlatId>,
    from_parent: Vec<Option<FlatId>>,
}

impl Minor {
    fn new(
        parent: Arc<MatroidLattice>,
        matroid: Arc<MatroidLattice>,
        to_parent: Vec<FlatId>,
    ) -> Minor {
        let mut from_parent = vec![None; parent.size()];
        for (i, &p) in to_parent.iter().enumerate() {
            from_parent[p.index()] = Some(FlatId(i as u32));
        }
        Minor {
            parent,
            matroid,
            to_parent,
            from_parent,
        }
    }

    pub fn to_parent(&self, f: FlatId) -> FlatId {
        self.to_parent[f.index()]
    }

    pub fn from_parent(&self, f: FlatId) -> Option<FlatId> {
        self.from_parent[f.index()]
    }
}
