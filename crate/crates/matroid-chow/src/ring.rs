//! Sparse exact polynomial arithmetic in the generators `h[F]`, the three
//! relation systems (augmented, reduced, semilattice), and the straightening
//! normalizer onto the standard monomial basis.
//!
//! Coefficients are arbitrary-precision integers throughout: dual-basis
//! expansions and pairing determinants can exceed machine words on contrived
//! inputs, and exactness is the entire point of the artifact.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matroid::{FlatId, MatroidLattice};
use crate::poset::{MeetSemilattice, Poset};

/// Straightening steps allowed per call before we conclude the rewrite has
/// gone wrong. The measure from the chain-reduction argument guarantees
/// termination; the cap guards against implementation bugs only.
const STEP_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("flat multiset has size {actual}, expected {expected}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("flat {0} is not valid here")]
    InvalidFlat(u32),
    #[error("generator index {0} is unknown in this ring")]
    UnknownFlat(u32),
    #[error("degree {degree} out of range 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("size limit exceeded: {actual} (limit {limit})")]
    SizeLimit { actual: usize, limit: usize },
    #[error("too many atoms outside the flat: {actual} (limit {limit})")]
    AtomLimit { actual: usize, limit: usize },
    #[error("monomial is not standard for this ring mode")]
    NotStandard,
    #[error("ring context mismatch: {0}")]
    ContextMismatch(String),
    #[error("operation requires a {0} ring context")]
    WrongMode(&'static str),
}

// ---------------------------------------------------------------------
// monomials

/// A monomial in the generators: a sorted exponent map from flats to
/// positive exponents, with the total degree cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(FlatId, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial {
            factors: Vec::new(),
            degree: 0,
        }
    }

    pub fn generator(f: FlatId) -> Monomial {
        Monomial {
            factors: vec![(f, 1)],
            degree: 1,
        }
    }

    pub fn power(f: FlatId, exp: u32) -> Monomial {
        if exp == 0 {
            return Monomial::one();
        }
        Monomial {
            factors: vec![(f, exp)],
            degree: exp,
        }
    }

    /// Builds from arbitrary factor pairs: merges duplicates, drops zero
    /// exponents, sorts by flat index.
    pub fn from_factors(pairs: impl IntoIterator<Item = (FlatId, u32)>) -> Monomial {
        let mut map: Vec<(FlatId, u32)> = Vec::new();
        for (f, e) in pairs {
            if e == 0 {
                continue;
            }
            match map.iter_mut().find(|(g, _)| *g == f) {
                Some((_, acc)) => *acc += e,
                None => map.push((f, e)),
            }
        }
        map.sort_by_key(|&(f, _)| f);
        let degree = map.iter().map(|&(_, e)| e).sum();
        Monomial {
            factors: map,
            degree,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(FlatId, u32)] {
        &self.factors
    }

    pub fn support(&self) -> impl Iterator<Item = FlatId> + '_ {
        self.factors.iter().map(|&(f, _)| f)
    }

    pub fn exponent(&self, f: FlatId) -> u32 {
        self.factors
            .iter()
            .find(|&&(g, _)| g == f)
            .map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (f, e) = self.factors[i];
            let (g, d) = other.factors[j];
            match f.cmp(&g) {
                std::cmp::Ordering::Less => {
                    out.push((f, e));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((g, d));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((f, e + d));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial {
            degree: self.degree + other.degree,
            factors: out,
        }
    }

    /// Multiplies by a single generator power.
    pub fn times(&self, f: FlatId, exp: u32) -> Monomial {
        self.mul(&Monomial::power(f, exp))
    }

    /// Removes one power of `f`; panics if absent.
    fn drop_one(&self, f: FlatId) -> Monomial {
        let mut factors = self.factors.clone();
        let k = factors
            .iter()
            .position(|&(g, _)| g == f)
            .expect("factor present");
        if factors[k].1 == 1 {
            factors.remove(k);
        } else {
            factors[k].1 -= 1;
        }
        Monomial {
            degree: self.degree - 1,
            factors,
        }
    }

    /// The flats of the monomial listed with multiplicity.
    pub fn flat_multiset(&self) -> Vec<FlatId> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for &(f, e) in &self.factors {
            for _ in 0..e {
                out.push(f);
            }
        }
        out
    }

    /// All degree-`d` monomials on the given (sorted) generators.
    pub fn enumerate_free(gens: &[FlatId], d: usize) -> Vec<Monomial> {
        fn rec(
            gens: &[FlatId],
            d: usize,
            from: usize,
            acc: &mut Vec<(FlatId, u32)>,
            out: &mut Vec<Monomial>,
        ) {
            if d == 0 {
                out.push(Monomial::from_factors(acc.iter().copied()));
                return;
            }
            if from >= gens.len() {
                return;
            }
            // exponent of gens[from] ranges over 0..=d
            rec(gens, d, from + 1, acc, out);
            for e in 1..=d as u32 {
                acc.push((gens[from], e));
                rec(gens, d - e as usize, from + 1, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(gens, d, 0, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Number of degree-`d` monomials on `g` generators.
    pub fn count_free(g: usize, d: usize) -> usize {
        // C(g + d - 1, d), saturating
        if d == 0 {
            return 1;
        }
        if g == 0 {
            return 0;
        }
        let mut acc: u128 = 1;
        for i in 0..d {
            acc = acc.saturating_mul((g + i) as u128) / (i as u128 + 1);
            if acc > usize::MAX as u128 {
                return usize::MAX;
            }
        }
        acc as usize
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree, &self.factors).cmp(&(other.degree, &other.factors))
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(flat, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "h[{}]", flat.0)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------
// polynomials

/// A finitely supported integer combination of monomials. Zero coefficients
/// are never stored; homogeneity is not an invariant.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: std::collections::BTreeMap<Monomial, BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn generator(f: FlatId) -> Polynomial {
        Polynomial::from_monomial(Monomial::generator(f))
    }

    pub fn from_monomial(m: Monomial) -> Polynomial {
        let mut p = Polynomial::zero();
        p.add_term(m, BigInt::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Bilinear product in the free polynomial ring; no reduction happens.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut it = self.terms.keys();
        match it.next() {
            None => Homogeneity::Zero,
            Some(first) => {
                let d = first.degree();
                if it.all(|m| m.degree() == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Mixed
                }
            }
        }
    }

    /// The degree-`d` homogeneous part.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Self) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Self) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Self) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // leading term first: descending (degree, factors)
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------
// ring contexts

/// Which relation system applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingMode {
    /// Augmented Chow ring: generators on nonempty flats, atom squares and
    /// atom absorption relations included.
    Augmented,
    /// Chow ring: augmented relations plus vanishing atom generators.
    Reduced,
    /// The straightening-law algebra over a meet-semilattice: quadratic
    /// relations through the meet, generators on every element.
    Semilattice,
}

impl RingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RingMode::Augmented => "augmented",
            RingMode::Reduced => "reduced",
            RingMode::Semilattice => "semilattice",
        }
    }
}

#[derive(Debug, Clone)]
enum Substrate {
    Matroid(Arc<MatroidLattice>),
    Semilattice {
        lattice: Arc<MeetSemilattice>,
        op_of: Option<Arc<MatroidLattice>>,
    },
}

/// A lattice plus a mode selector: everything straightening needs.
#[derive(Debug, Clone)]
pub struct RingContext {
    mode: RingMode,
    inner: Substrate,
}

impl RingContext {
    pub fn augmented(m: Arc<MatroidLattice>) -> RingContext {
        RingContext {
            mode: RingMode::Augmented,
            inner: Substrate::Matroid(m),
        }
    }

    pub fn reduced(m: Arc<MatroidLattice>) -> RingContext {
        RingContext {
            mode: RingMode::Reduced,
            inner: Substrate::Matroid(m),
        }
    }

    pub fn for_mode(m: Arc<MatroidLattice>, mode: RingMode) -> RingContext {
        match mode {
            RingMode::Augmented => Self::augmented(m),
            RingMode::Reduced => Self::reduced(m),
            RingMode::Semilattice => Self::semilattice_op(&m),
        }
    }

    pub fn semilattice(l: Arc<MeetSemilattice>) -> RingContext {
        RingContext {
            mode: RingMode::Semilattice,
            inner: Substrate::Semilattice {
                lattice: l,
                op_of: None,
            },
        }
    }

    /// The inverted poset of nonempty flats of a matroid, as a
    /// meet-semilattice context. Element `i` stands for flat `i + 1`; meets
    /// here are joins there, and the bottom here is the top flat.
    ///
    /// The matroid must have positive rank: a rank-0 matroid has no
    /// nonempty flats to invert.
    pub fn semilattice_op(m: &Arc<MatroidLattice>) -> RingContext {
        assert!(
            m.size() > 1,
            "the inverted flat poset of a rank-0 matroid is empty"
        );
        let n = m.size() - 1;
        let poset =
            Poset::from_closed_leq(n, |a, b| m.leq(FlatId(b as u32 + 1), FlatId(a as u32 + 1)))
                .expect("dual of a lattice order is a poset");
        let lattice = poset
            .as_meet_semilattice()
            .expect("joins of a lattice give meets here");
        RingContext {
            mode: RingMode::Semilattice,
            inner: Substrate::Semilattice {
                lattice: Arc::new(lattice),
                op_of: Some(m.clone()),
            },
        }
    }

    pub fn mode(&self) -> RingMode {
        self.mode
    }

    pub fn matroid(&self) -> Option<&Arc<MatroidLattice>> {
        match &self.inner {
            Substrate::Matroid(m) => Some(m),
            Substrate::Semilattice { .. } => None,
        }
    }

    pub fn require_matroid(&self) -> Result<&Arc<MatroidLattice>, RingError> {
        self.matroid().ok_or(RingError::WrongMode("matroid"))
    }

    pub fn semilattice_ref(&self) -> Option<&Arc<MeetSemilattice>> {
        match &self.inner {
            Substrate::Semilattice { lattice, .. } => Some(lattice),
            Substrate::Matroid(_) => None,
        }
    }

    /// The matroid this semilattice context was derived from, if any.
    pub fn op_source(&self) -> Option<&Arc<MatroidLattice>> {
        match &self.inner {
            Substrate::Semilattice { op_of, .. } => op_of.as_ref(),
            Substrate::Matroid(_) => None,
        }
    }

    /// Maps an op-semilattice element to the matroid flat it stands for.
    pub fn op_to_flat(&self, x: FlatId) -> FlatId {
        FlatId(x.0 + 1)
    }

    pub fn element_count(&self) -> usize {
        match &self.inner {
            Substrate::Matroid(m) => m.size(),
            Substrate::Semilattice { lattice, .. } => lattice.size(),
        }
    }

    pub fn is_generator(&self, f: FlatId) -> bool {
        match self.mode {
            RingMode::Semilattice => f.index() < self.element_count(),
            _ => f.index() >= 1 && f.index() < self.element_count(),
        }
    }

    pub fn generators(&self) -> Vec<FlatId> {
        match self.mode {
            RingMode::Semilattice => (0..self.element_count() as u32).map(FlatId).collect(),
            _ => (1..self.element_count() as u32).map(FlatId).collect(),
        }
    }

    fn leq(&self, a: FlatId, b: FlatId) -> bool {
        match &self.inner {
            Substrate::Matroid(m) => m.leq(a, b),
            Substrate::Semilattice { lattice, .. } => lattice.leq(a.index(), b.index()),
        }
    }

    /// The flat the straightening relation rewrites through: the join for
    /// the Chow modes, the meet for the semilattice algebra.
    fn rewrite_bound(&self, a: FlatId, b: FlatId) -> FlatId {
        match &self.inner {
            Substrate::Matroid(m) => m.join(a, b),
            Substrate::Semilattice { lattice, .. } => {
                FlatId(lattice.meet(a.index(), b.index()) as u32)
            }
        }
    }

    /// Top nonvanishing degree for the Chow modes.
    pub fn top_degree(&self) -> Result<usize, RingError> {
        let m = self.require_matroid()?;
        Ok(match self.mode {
            RingMode::Augmented => m.rank_top() as usize,
            RingMode::Reduced => m.rank_top().saturating_sub(1) as usize,
            RingMode::Semilattice => unreachable!(),
        })
    }

    pub fn check_generators(&self, p: &Polynomial) -> Result<(), RingError> {
        for (m, _) in p.terms() {
            for f in m.support() {
                if !self.is_generator(f) {
                    return Err(RingError::UnknownFlat(f.0));
                }
            }
        }
        Ok(())
    }

    /// The defining relation generators of this mode, as free polynomials.
    /// Identically-zero combinations (comparable pairs and absorbed atoms)
    /// are skipped.
    pub fn relation_generators(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        match (&self.inner, self.mode) {
            (Substrate::Matroid(m), mode) => {
                let gens = self.generators();
                for (i, &f) in gens.iter().enumerate() {
                    for &g in &gens[i + 1..] {
                        if m.leq(f, g) || m.leq(g, f) {
                            continue;
                        }
                        let j = m.join(f, g);
                        // (h_f - h_j)(h_g - h_j)
                        let hf = Polynomial::generator(f);
                        let hg = Polynomial::generator(g);
                        let hj = Polynomial::generator(j);
                        out.push(&(&hf - &hj) * &(&hg - &hj));
                    }
                }
                match mode {
                    RingMode::Augmented => {
                        for &a in m.atoms() {
                            out.push(Polynomial::from_monomial(Monomial::power(a, 2)));
                            for f in m.nonempty_flats() {
                                if m.leq(a, f) {
                                    continue;
                                }
                                let fa = m.join(f, a);
                                let lhs = Monomial::generator(a).mul(&Monomial::generator(f));
                                let rhs = Monomial::generator(a).mul(&Monomial::generator(fa));
                                let mut p = Polynomial::zero();
                                p.add_term(lhs, BigInt::one());
                                p.add_term(rhs, -BigInt::one());
                                out.push(p);
                            }
                        }
                    }
                    RingMode::Reduced => {
                        for &a in m.atoms() {
                            out.push(Polynomial::generator(a));
                        }
                    }
                    RingMode::Semilattice => unreachable!(),
                }
            }
            (Substrate::Semilattice { lattice, .. }, _) => {
                let n = lattice.size();
                for a in 0..n {
                    for b in (a + 1)..n {
                        if lattice.leq(a, b) || lattice.leq(b, a) {
                            continue;
                        }
                        let w = lattice.meet(a, b);
                        let ha = Polynomial::generator(FlatId(a as u32));
                        let hb = Polynomial::generator(FlatId(b as u32));
                        let hw = Polynomial::generator(FlatId(w as u32));
                        out.push(&(&ha - &hw) * &(&hb - &hw));
                    }
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------
// straightening

/// Rewrites `p` into the standard monomial basis of the context's mode.
/// Total: any input has a normal form equal to it in the ring.
pub fn straighten(ctx: &RingContext, p: &Polynomial) -> Polynomial {
    let mut norm = Normalizer {
        ctx,
        memo: HashMap::new(),
        steps: 0,
    };
    let mut out = Polynomial::zero();
    for (m, c) in p.terms() {
        let n = norm.monomial(m);
        for (nm, nc) in n.terms() {
            out.add_term(nm.clone(), nc * c);
        }
    }
    out
}

/// Normal form of a free product without materializing the intermediate.
pub fn straighten_product(ctx: &RingContext, p: &Polynomial, q: &Polynomial) -> Polynomial {
    straighten(ctx, &p.mul(q))
}

struct Normalizer<'a> {
    ctx: &'a RingContext,
    memo: HashMap<Monomial, Polynomial>,
    steps: u64,
}

impl Normalizer<'_> {
    fn monomial(&mut self, m: &Monomial) -> Polynomial {
        if let Some(hit) = self.memo.get(m) {
            return hit.clone();
        }
        self.steps += 1;
        assert!(
            self.steps < STEP_CAP,
            "straightening exceeded the step cap: internal bug"
        );

        let result = match self.rewrite_pair(m) {
            Some((f, g)) => {
                // h_f h_g = h_f h_j + h_g h_j - h_j^2 with j the bound flat
                let j = self.ctx.rewrite_bound(f, g);
                let rest = m.drop_one(f).drop_one(g);
                let t1 = rest.times(f, 1).times(j, 1);
                let t2 = rest.times(g, 1).times(j, 1);
                let t3 = rest.times(j, 2);
                let mut out = self.monomial(&t1);
                out = out.add(&self.monomial(&t2));
                out = out.sub(&self.monomial(&t3));
                out
            }
            None => self.chain_normal_form(m),
        };
        self.memo.insert(m.clone(), result.clone());
        result
    }

    /// Finds the rewrite pair: peel settled extremal elements off the
    /// support, then take the lexicographically smallest pair of distinct
    /// extremal flats of the remainder. Returns None when the support is a
    /// chain. "Extremal" is maximal in the Chow modes and minimal in the
    /// semilattice mode, matching which side the rewrite bound lives on.
    fn rewrite_pair(&self, m: &Monomial) -> Option<(FlatId, FlatId)> {
        let toward_bound = |x: FlatId, y: FlatId| -> bool {
            // true if y blocks x from being extremal
            match self.ctx.mode {
                RingMode::Semilattice => self.ctx.leq(y, x) && x != y,
                _ => self.ctx.leq(x, y) && x != y,
            }
        };
        let mut rem: Vec<FlatId> = m.support().collect();
        loop {
            if rem.len() <= 1 {
                return None;
            }
            let extremal: Vec<FlatId> = rem
                .iter()
                .copied()
                .filter(|&x| !rem.iter().any(|&y| toward_bound(x, y)))
                .collect();
            if extremal.len() >= 2 {
                // rem was kept sorted by flat index, so this is the lex
                // smallest pair
                return Some((extremal[0], extremal[1]));
            }
            let settled = extremal[0];
            rem.retain(|&x| x != settled);
        }
    }

    /// Normal form of a chain-supported monomial. In the semilattice mode
    /// every chain monomial is standard. In the Chow modes, excess exponents
    /// collapse down cover chains: an overfull bottom segment annihilates
    /// against the atom relations, and an overfull gap merges the two flats.
    fn chain_normal_form(&mut self, m: &Monomial) -> Polynomial {
        if self.ctx.mode == RingMode::Semilattice {
            return Polynomial::from_monomial(m.clone());
        }
        let lat = self.ctx.matroid().expect("chow modes carry a matroid");
        let mut chain: Vec<(FlatId, u32)> = m.factors().to_vec();
        chain.sort_by_key(|&(f, _)| lat.rank(f));
        loop {
            if chain.is_empty() {
                return Polynomial::one();
            }
            let (f1, a1) = chain[0];
            let r1 = lat.rank(f1);
            let dies = match self.ctx.mode {
                RingMode::Augmented => a1 > r1,
                RingMode::Reduced => a1 >= r1,
                RingMode::Semilattice => unreachable!(),
            };
            if dies {
                return Polynomial::zero();
            }
            let mut merged = false;
            for i in 1..chain.len() {
                let gap = lat.rank(chain[i].0) - lat.rank(chain[i - 1].0);
                if chain[i].1 >= gap {
                    // h_{F_{i-1}}^{a} h_{F_i}^{b} = h_{F_i}^{a+b} when b
                    // reaches the rank gap (collapse down a cover chain)
                    self.steps += 1;
                    chain[i].1 += chain[i - 1].1;
                    chain.remove(i - 1);
                    merged = true;
                    break;
                }
            }
            if !merged {
                let mono = Monomial::from_factors(chain.iter().copied());
                return Polynomial::from_monomial(mono);
            }
        }
    }
}

/// Admission test for the standard monomial basis of the context's mode.
pub fn is_standard(ctx: &RingContext, m: &Monomial) -> bool {
    match ctx.mode() {
        RingMode::Semilattice => {
            let s: Vec<FlatId> = m.support().collect();
            s.iter()
                .all(|&a| s.iter().all(|&b| ctx.leq(a, b) || ctx.leq(b, a)))
        }
        mode => {
            let lat = match ctx.matroid() {
                Some(l) => l,
                None => return false,
            };
            let mut chain: Vec<(FlatId, u32)> = m.factors().to_vec();
            chain.sort_by_key(|&(f, _)| lat.rank(f));
            let mut prev_rank = 0u32;
            for (i, &(f, a)) in chain.iter().enumerate() {
                if i > 0 && !lat.lt(chain[i - 1].0, f) {
                    return false;
                }
                let gap = lat.rank(f) - prev_rank;
                let ok = if i == 0 && mode == RingMode::Augmented {
                    a <= gap
                } else {
                    a < gap
                };
                if !ok {
                    return false;
                }
                prev_rank = lat.rank(f);
            }
            true
        }
    }
}

/// Exactly the admissible monomials of degree `d`, in the canonical order:
/// delta-lexicographic for the Chow modes (ties by factor list), plain
/// factor-list order for the semilattice mode.
pub fn enumerate_standard_monomials(ctx: &RingContext, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d == 0 {
        out.push(Monomial::one());
        return out;
    }
    match ctx.mode() {
        RingMode::Semilattice => {
            let n = ctx.element_count();
            // chains with positive exponents summing to d
            fn rec(
                ctx: &RingContext,
                n: usize,
                d: usize,
                last: Option<FlatId>,
                acc: &mut Vec<(FlatId, u32)>,
                out: &mut Vec<Monomial>,
            ) {
                if d == 0 {
                    out.push(Monomial::from_factors(acc.iter().copied()));
                    return;
                }
                for x in 0..n as u32 {
                    let f = FlatId(x);
                    if let Some(l) = last {
                        if !(ctx.leq(l, f) && l != f) {
                            continue;
                        }
                    }
                    for e in 1..=d as u32 {
                        acc.push((f, e));
                        rec(ctx, n, d - e as usize, Some(f), acc, out);
                        acc.pop();
                    }
                }
            }
            rec(ctx, n, d, None, &mut Vec::new(), &mut out);
            out.sort();
        }
        mode => {
            let lat = ctx.matroid().expect("chow modes carry a matroid");
            fn rec(
                lat: &MatroidLattice,
                mode: RingMode,
                d: usize,
                last: Option<FlatId>,
                acc: &mut Vec<(FlatId, u32)>,
                out: &mut Vec<Monomial>,
            ) {
                if d == 0 {
                    out.push(Monomial::from_factors(acc.iter().copied()));
                    return;
                }
                for f in lat.nonempty_flats() {
                    let (prev_rank, ok_order) = match last {
                        None => (0, true),
                        Some(l) => (lat.rank(l), lat.lt(l, f)),
                    };
                    if !ok_order {
                        continue;
                    }
                    let gap = lat.rank(f) - prev_rank;
                    let max_e = if last.is_none() && mode == RingMode::Augmented {
                        gap
                    } else {
                        gap.saturating_sub(1)
                    };
                    for e in 1..=max_e.min(d as u32) {
                        acc.push((f, e));
                        rec(lat, mode, d - e as usize, Some(f), acc, out);
                        acc.pop();
                    }
                }
            }
            rec(lat, mode, d, None, &mut Vec::new(), &mut out);
            let lat = lat.clone();
            out.sort_by(|a, b| {
                let da = crate::pairing::delta(&lat, a);
                let db = crate::pairing::delta(&lat, b);
                da.cmp(&db).then_with(|| a.cmp(b))
            });
        }
    }
    out
}

/// Counts of standard monomials per degree, `0..=top`.
pub fn hilbert_series(ctx: &RingContext) -> Result<Vec<usize>, RingError> {
    let top = ctx.top_degree()?;
    Ok((0..=top)
        .map(|d| enumerate_standard_monomials(ctx, d).len())
        .collect())
}

/// The standard monomial basis listed degree by degree in the canonical
/// order, with positional lookup.
#[derive(Debug, Clone)]
pub struct StandardMonomialIndex {
    pub by_degree: Vec<Vec<Monomial>>,
}

impl StandardMonomialIndex {
    /// Enumerates degrees `0..=d_max`.
    pub fn build(ctx: &RingContext, d_max: usize) -> StandardMonomialIndex {
        StandardMonomialIndex {
            by_degree: (0..=d_max)
                .map(|d| enumerate_standard_monomials(ctx, d))
                .collect(),
        }
    }

    /// Through the top degree of a Chow context.
    pub fn build_full(ctx: &RingContext) -> Result<StandardMonomialIndex, RingError> {
        Ok(Self::build(ctx, ctx.top_degree()?))
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        let d = m.degree() as usize;
        self.by_degree.get(d)?.iter().position(|x| x == m)
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.by_degree.iter().map(|v| v.len()).collect()
    }
}

/// Dimension counts of the semilattice algebra through degree `d_max`,
/// computed from the order complex: chains of k elements carry
/// C(d-1, k-1) monomials of degree d.
pub fn series_truncated(ctx: &RingContext, d_max: usize) -> Result<Vec<u64>, RingError> {
    if ctx.mode() != RingMode::Semilattice {
        return Err(RingError::WrongMode("semilattice"));
    }
    let lattice = ctx.semilattice_ref().expect("semilattice mode");
    let f = lattice.poset().chain_f_vector().f_vector;
    let mut out = vec![0u64; d_max + 1];
    out[0] = 1;
    for (d, slot) in out.iter_mut().enumerate().skip(1) {
        let mut total = 0u64;
        for (k, &chains) in f.iter().enumerate().skip(1) {
            // compositions of d into k positive parts
            total += chains * binomial(d as u64 - 1, k as u64 - 1);
        }
        *slot = total;
    }
    Ok(out)
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
