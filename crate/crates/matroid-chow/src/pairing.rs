//! Hall-Rado predicates, the two degree maps, the dual-basis machinery
//! (`x_G` elements, the factoring homomorphisms, essential flats, the delta
//! statistic), Poincare-pairing matrices, and the verification suites for
//! the basis, degree, and duality theorems.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::determinant;
use crate::matroid::{FlatId, MatroidLattice, Minor};
use crate::oracle::oracle_basis;
use crate::report::Report;
use crate::ring::{
    enumerate_standard_monomials, hilbert_series, is_standard, straighten, Homogeneity, Monomial,
    Polynomial, RingContext, RingError, RingMode,
};
use crate::rng::SplitMix64;

/// Atoms outside the flat that `x_G` may range over; the expansion
/// enumerates all their subsets.
pub const MAX_OUTSIDE_ATOMS: usize = 20;

/// A multiset of flats, listed with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatMultiset(pub Vec<FlatId>);

impl FlatMultiset {
    pub fn size(&self) -> usize {
        self.0.len()
    }
}

/// Outcome of a (dragon-)Hall-Rado test; on failure, a minimal-cardinality
/// witness subset (positions into the multiset).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadoOutcome {
    pub satisfied: bool,
    pub witness: Option<Vec<usize>>,
}

#[allow(clippy::needless_range_loop)] // masks are subsets, not positions
fn joins_by_mask(m: &MatroidLattice, flats: &[FlatId]) -> Vec<FlatId> {
    let n = flats.len();
    let mut joins = vec![m.bottom(); 1 << n];
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        joins[mask] = m.join(joins[mask & (mask - 1)], flats[low]);
    }
    joins
}

/// The Hall-Rado condition for a multiset of size `rk(E)`: every subset `T`
/// has `rk(join over T) >= |T|`.
#[allow(clippy::needless_range_loop)] // masks are subsets, not positions
pub fn hall_rado(m: &MatroidLattice, fs: &FlatMultiset) -> Result<RadoOutcome, RingError> {
    let r = m.rank_top() as usize;
    if fs.size() != r {
        return Err(RingError::SizeMismatch {
            expected: r,
            actual: fs.size(),
        });
    }
    let joins = joins_by_mask(m, &fs.0);
    let mut witness: Option<usize> = None;
    for mask in 1usize..(1 << r) {
        let t = mask.count_ones();
        if m.rank(joins[mask]) < t && witness.is_none_or(|w| t < w.count_ones()) {
            witness = Some(mask);
        }
    }
    Ok(match witness {
        None => RadoOutcome {
            satisfied: true,
            witness: None,
        },
        Some(mask) => RadoOutcome {
            satisfied: false,
            witness: Some((0..r).filter(|i| mask >> i & 1 == 1).collect()),
        },
    })
}

/// The dragon-Hall-Rado condition for a multiset of size `rk(E) - 1`: every
/// nonempty subset `T` has `rk(join over T) >= |T| + 1`.
#[allow(clippy::needless_range_loop)] // masks are subsets, not positions
pub fn dragon_hall_rado(m: &MatroidLattice, fs: &FlatMultiset) -> Result<RadoOutcome, RingError> {
    let r = m.rank_top() as usize;
    let k = r.saturating_sub(1);
    if fs.size() != k {
        return Err(RingError::SizeMismatch {
            expected: k,
            actual: fs.size(),
        });
    }
    if fs.0.iter().any(|&f| f == m.bottom()) {
        return Err(RingError::InvalidFlat(0));
    }
    let joins = joins_by_mask(m, &fs.0);
    let mut witness: Option<usize> = None;
    for mask in 1usize..(1 << k) {
        let t = mask.count_ones();
        if m.rank(joins[mask]) < t + 1 && witness.is_none_or(|w| t < w.count_ones()) {
            witness = Some(mask);
        }
    }
    Ok(match witness {
        None => RadoOutcome {
            satisfied: true,
            witness: None,
        },
        Some(mask) => RadoOutcome {
            satisfied: false,
            witness: Some((0..k).filter(|i| mask >> i & 1 == 1).collect()),
        },
    })
}

#[allow(clippy::needless_range_loop)] // masks are subsets, not positions
fn monomial_hr(m: &MatroidLattice, mono: &Monomial) -> bool {
    let flats = mono.flat_multiset();
    let joins = joins_by_mask(m, &flats);
    for mask in 1usize..(1 << flats.len()) {
        if m.rank(joins[mask]) < mask.count_ones() {
            return false;
        }
    }
    true
}

#[allow(clippy::needless_range_loop)] // masks are subsets, not positions
fn monomial_dhr(m: &MatroidLattice, mono: &Monomial) -> bool {
    let flats = mono.flat_multiset();
    let joins = joins_by_mask(m, &flats);
    for mask in 1usize..(1 << flats.len()) {
        if m.rank(joins[mask]) < mask.count_ones() + 1 {
            return false;
        }
    }
    true
}

/// The augmented degree map: 1 on top-degree monomials whose flat multiset
/// satisfies Hall-Rado, 0 on the rest, extended by zero off the top degree.
pub fn degree_aug(ctx: &RingContext, p: &Polynomial) -> Result<BigInt, RingError> {
    if ctx.mode() != RingMode::Augmented {
        return Err(RingError::WrongMode("augmented"));
    }
    let m = ctx.require_matroid()?;
    let r = m.rank_top();
    degree_by(p, r, |mono| monomial_hr(m, mono))
}

/// The reduced degree map, via the dragon-Hall-Rado condition in degree
/// `rk(E) - 1`, extended by zero elsewhere.
pub fn degree_red(ctx: &RingContext, p: &Polynomial) -> Result<BigInt, RingError> {
    if ctx.mode() != RingMode::Reduced {
        return Err(RingError::WrongMode("reduced"));
    }
    let m = ctx.require_matroid()?;
    let top = m.rank_top().saturating_sub(1);
    degree_by(p, top, |mono| monomial_dhr(m, mono))
}

/// Mode-dispatching degree map for the two Chow modes.
pub fn degree_of(ctx: &RingContext, p: &Polynomial) -> Result<BigInt, RingError> {
    match ctx.mode() {
        RingMode::Augmented => degree_aug(ctx, p),
        RingMode::Reduced => degree_red(ctx, p),
        RingMode::Semilattice => Err(RingError::WrongMode("chow")),
    }
}

fn degree_by(
    p: &Polynomial,
    top: u32,
    indicator: impl Fn(&Monomial) -> bool,
) -> Result<BigInt, RingError> {
    match p.homogeneity() {
        Homogeneity::Zero => Ok(BigInt::zero()),
        Homogeneity::Mixed => Err(RingError::NotHomogeneous),
        Homogeneity::Degree(d) if d != top => Ok(BigInt::zero()),
        Homogeneity::Degree(_) => {
            let mut out = BigInt::zero();
            for (mono, c) in p.terms() {
                if indicator(mono) {
                    out += c;
                }
            }
            Ok(out)
        }
    }
}

// ---------------------------------------------------------------------
// x_G elements and the factoring homomorphism

/// The element `x_G`: minus the alternating sum of `h` over joins of `G`
/// with subsets of the atoms outside `G`, with `h` of the bottom flat read
/// as zero. Defined for proper flats; in the reduced ring `G` must also be
/// nonempty.
pub fn x_element(ctx: &RingContext, g: FlatId) -> Result<Polynomial, RingError> {
    let m = ctx.require_matroid()?;
    if g == m.top() || (ctx.mode() == RingMode::Reduced && g == m.bottom()) {
        return Err(RingError::InvalidFlat(g.0));
    }
    let outside = m.atoms_outside(g);
    if outside.len() > MAX_OUTSIDE_ATOMS {
        return Err(RingError::AtomLimit {
            actual: outside.len(),
            limit: MAX_OUTSIDE_ATOMS,
        });
    }
    let joins = joins_by_mask(m, &outside);
    let mut coeffs: BTreeMap<FlatId, BigInt> = BTreeMap::new();
    for (mask, &sub_join) in joins.iter().enumerate() {
        let k = m.join(g, sub_join);
        if k == m.bottom() {
            continue; // h of the bottom flat is zero by convention
        }
        let sign = if mask.count_ones() % 2 == 0 {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        *coeffs.entry(k).or_default() += sign;
    }
    let mut out = Polynomial::zero();
    for (f, c) in coeffs {
        out.add_term(Monomial::generator(f), c);
    }
    Ok(out)
}

/// An element of the two-factor image ring: a finitely supported pairing of
/// monomials over the restriction and the contraction.
#[derive(Debug, Clone)]
pub struct TensorElement {
    pub left: RingContext,
    pub right: RingContext,
    pub terms: BTreeMap<(Monomial, Monomial), BigInt>,
}

impl TensorElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The product of the factor degree maps, summed over terms.
    pub fn degree(&self) -> Result<BigInt, RingError> {
        let mut out = BigInt::zero();
        for ((ml, mr), c) in &self.terms {
            let dl = degree_of(&self.left, &Polynomial::from_monomial(ml.clone()))?;
            if dl.is_zero() {
                continue;
            }
            let dr = degree_of(&self.right, &Polynomial::from_monomial(mr.clone()))?;
            out += c * dl * dr;
        }
        Ok(out)
    }

    /// Terms grouped as (left monomial) -> polynomial in the right factor.
    pub fn right_components(&self) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for ((ml, mr), c) in &self.terms {
            out.entry(ml.clone())
                .or_default()
                .add_term(mr.clone(), c.clone());
        }
        out
    }

    /// Componentwise product, each factor straightened in its own ring.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut terms: BTreeMap<(Monomial, Monomial), BigInt> = BTreeMap::new();
        for ((la, ra), ca) in &self.terms {
            for ((lb, rb), cb) in &other.terms {
                let l = straighten(&self.left, &Polynomial::from_monomial(la.mul(lb)));
                let r = straighten(&self.right, &Polynomial::from_monomial(ra.mul(rb)));
                for (lm, lc) in l.terms() {
                    for (rm, rc) in r.terms() {
                        let slot = terms.entry((lm.clone(), rm.clone())).or_default();
                        *slot += ca * cb * lc * rc;
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TensorElement {
            left: self.left.clone(),
            right: self.right.clone(),
            terms,
        }
    }
}

/// The ring homomorphism splitting the ring at a proper flat `G`:
/// generators below `G` land in the restriction factor, the rest join with
/// `G` and land in the contraction factor.
pub struct PhiHom {
    pub g: FlatId,
    pub restriction: Minor,
    pub contraction: Minor,
    pub left: RingContext,
    pub right: RingContext,
    parent_mode: RingMode,
}

impl PhiHom {
    pub fn new(ctx: &RingContext, g: FlatId) -> Result<PhiHom, RingError> {
        let m = ctx.require_matroid()?;
        if g == m.top() {
            return Err(RingError::InvalidFlat(g.0));
        }
        if ctx.mode() == RingMode::Reduced && g == m.bottom() {
            return Err(RingError::InvalidFlat(g.0));
        }
        let restriction = m.restriction(g);
        let contraction = m.contraction(g);
        let left = match ctx.mode() {
            RingMode::Augmented => RingContext::augmented(restriction.matroid.clone()),
            RingMode::Reduced => RingContext::reduced(restriction.matroid.clone()),
            RingMode::Semilattice => return Err(RingError::WrongMode("chow")),
        };
        let right = RingContext::reduced(contraction.matroid.clone());
        Ok(PhiHom {
            g,
            restriction,
            contraction,
            left,
            right,
            parent_mode: ctx.mode(),
        })
    }

    /// Image of a generator, as a pure tensor.
    pub fn map_generator(&self, f: FlatId) -> (Monomial, Monomial) {
        let m = &self.restriction.parent;
        if m.leq(f, self.g) {
            let lf = self.restriction.from_parent(f).expect("flat below g");
            (Monomial::generator(lf), Monomial::one())
        } else {
            let j = m.join(f, self.g);
            let rf = self.contraction.from_parent(j).expect("join above g");
            (Monomial::one(), Monomial::generator(rf))
        }
    }

    /// Applies the homomorphism and straightens each factor independently.
    pub fn apply(&self, p: &Polynomial) -> TensorElement {
        let mut terms: BTreeMap<(Monomial, Monomial), BigInt> = BTreeMap::new();
        for (mono, c) in p.terms() {
            let mut lm = Monomial::one();
            let mut rm = Monomial::one();
            for &(f, e) in mono.factors() {
                let (lf, rf) = self.map_generator(f);
                for _ in 0..e {
                    lm = lm.mul(&lf);
                    rm = rm.mul(&rf);
                }
            }
            let ln = straighten(&self.left, &Polynomial::from_monomial(lm));
            let rn = straighten(&self.right, &Polynomial::from_monomial(rm));
            for (l, cl) in ln.terms() {
                for (r, cr) in rn.terms() {
                    let key = (l.clone(), r.clone());
                    let v = c * cl * cr;
                    let slot = terms.entry(key).or_default();
                    *slot += v;
                    if slot.is_zero() {
                        terms.remove(&(l.clone(), r.clone()));
                    }
                }
            }
        }
        TensorElement {
            left: self.left.clone(),
            right: self.right.clone(),
            terms,
        }
    }

    pub fn parent_mode(&self) -> RingMode {
        self.parent_mode
    }
}

// ---------------------------------------------------------------------
// essential flats, delta, dual elements

/// A strictly increasing chain of flats attached to a standard monomial;
/// multiplying the matching `x_G` gives the dual basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialFlats {
    pub flats: Vec<FlatId>,
}

/// Cumulative exponent counts by rank threshold; the lexicographic order on
/// these vectors drives the triangularity of the pairing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DeltaVector(pub Vec<u64>);

/// `delta(m)`: component `j` sums the exponents of flats of rank at most
/// `j + 1`; the last component is the total degree.
pub fn delta(m: &MatroidLattice, mono: &Monomial) -> DeltaVector {
    let r = m.rank_top() as usize;
    let mut v = vec![0u64; r];
    for &(f, e) in mono.factors() {
        let rk = m.rank(f) as usize;
        for slot in v.iter_mut().skip(rk.saturating_sub(1)) {
            *slot += e as u64;
        }
    }
    DeltaVector(v)
}

/// The essential flats of a standard monomial: extend its support to a
/// maximal chain (ascending through the lexicographically smallest covers),
/// then drop, for each support flat, the flats occupying the positions of
/// its exponent window just below it, and drop the top.
pub fn essential_flats(ctx: &RingContext, mono: &Monomial) -> Result<EssentialFlats, RingError> {
    let m = ctx.require_matroid()?;
    if !is_standard(ctx, mono) {
        return Err(RingError::NotStandard);
    }
    let r = m.rank_top() as usize;
    let mut support: Vec<FlatId> = mono.support().collect();
    support.sort_by_key(|&f| m.rank(f));

    // the maximal chain, positions 0..=r indexed by rank
    let mut chain: Vec<FlatId> = Vec::with_capacity(r + 1);
    let mut cur = m.bottom();
    chain.push(cur);
    let mut targets = support.clone();
    targets.push(m.top());
    for t in targets {
        while cur != t {
            let step = m
                .covers(cur)
                .into_iter()
                .filter(|&c| m.leq(c, t))
                .min()
                .expect("ranked lattice interval has a cover step");
            cur = step;
            chain.push(cur);
        }
    }
    debug_assert_eq!(chain.len(), r + 1);

    let mut removed = vec![false; r + 1];
    removed[r] = true; // the top
    for &(f, a) in mono.factors() {
        let pos = m.rank(f) as usize;
        for slot in removed[(pos - a as usize)..pos].iter_mut() {
            debug_assert!(!*slot, "standard exponent windows are disjoint");
            *slot = true;
        }
    }
    let flats: Vec<FlatId> = (0..=r).filter(|&k| !removed[k]).map(|k| chain[k]).collect();
    Ok(EssentialFlats { flats })
}

/// The dual element `d(m)`: the product of `x_G` over the essential flats,
/// skipping the bottom flat in the reduced mode. Returned unreduced.
pub fn dual_element(ctx: &RingContext, mono: &Monomial) -> Result<Polynomial, RingError> {
    let m = ctx.require_matroid()?;
    let ess = essential_flats(ctx, mono)?;
    let mut out = Polynomial::one();
    for &g in &ess.flats {
        if ctx.mode() == RingMode::Reduced && g == m.bottom() {
            continue;
        }
        out = out.mul(&x_element(ctx, g)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// pairing matrices

/// The matrix of degrees against dual elements at one degree, with
/// triangularity verdicts, and optionally the full complementary-degree
/// pairing determinant.
#[derive(Debug, Clone)]
pub struct PairingReport {
    pub degree: usize,
    pub rows: Vec<Monomial>,
    pub matrix: Vec<Vec<BigInt>>,
    pub lower_triangular_unit: bool,
    /// Every nonzero off-diagonal entry (m, m') has delta(m) > delta(m').
    pub delta_dominance: bool,
    pub full_pairing_det: Option<BigInt>,
}

/// Degree of `m * d(m')` for all pairs of standard monomials of degree `k`,
/// rows and columns in the canonical delta-refining order.
///
/// Entries are degrees of free products: the degree maps are well defined
/// on the free ring (that is exactly what `verify_degree_welldefined`
/// certifies), so no straightening is needed here.
pub fn pairing_matrix(
    ctx: &RingContext,
    k: usize,
    with_full_det: bool,
) -> Result<PairingReport, RingError> {
    let m = ctx.require_matroid()?;
    let top = ctx.top_degree()?;
    if k > top {
        return Err(RingError::DegreeOutOfRange { degree: k, top });
    }
    let rows = enumerate_standard_monomials(ctx, k);
    let duals: Vec<Polynomial> = rows
        .iter()
        .map(|mono| dual_element(ctx, mono))
        .collect::<Result<_, _>>()?;

    let n = rows.len();
    let mut matrix = vec![vec![BigInt::zero(); n]; n];
    for (j, d) in duals.iter().enumerate() {
        for (i, row) in rows.iter().enumerate() {
            let prod = d.mul(&Polynomial::from_monomial(row.clone()));
            matrix[i][j] = degree_of(ctx, &prod)?;
        }
    }

    let mut lower_unit = true;
    let mut delta_dom = true;
    let deltas: Vec<DeltaVector> = rows.iter().map(|mono| delta(m, mono)).collect();
    for i in 0..n {
        if matrix[i][i] != BigInt::one() {
            lower_unit = false;
        }
        for j in 0..n {
            if i < j && !matrix[i][j].is_zero() {
                lower_unit = false;
            }
            if i != j && !matrix[i][j].is_zero() && deltas[i] <= deltas[j] {
                delta_dom = false;
            }
        }
    }

    let full_pairing_det = if with_full_det {
        full_pairing_determinant(ctx, k)?
    } else {
        None
    };

    Ok(PairingReport {
        degree: k,
        rows,
        matrix,
        lower_triangular_unit: lower_unit,
        delta_dominance: delta_dom,
        full_pairing_det,
    })
}

/// Determinant of the pairing between the standard monomials of degree `k`
/// and those of the complementary degree. `None` when the two families have
/// different sizes.
pub fn full_pairing_determinant(ctx: &RingContext, k: usize) -> Result<Option<BigInt>, RingError> {
    let top = ctx.top_degree()?;
    if k > top {
        return Err(RingError::DegreeOutOfRange { degree: k, top });
    }
    let rows = enumerate_standard_monomials(ctx, k);
    let cols = enumerate_standard_monomials(ctx, top - k);
    if rows.len() != cols.len() {
        return Ok(None);
    }
    let n = rows.len();
    let mut full = vec![vec![BigInt::zero(); n]; n];
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in cols.iter().enumerate() {
            full[i][j] = degree_of(ctx, &Polynomial::from_monomial(a.mul(b)))?;
        }
    }
    Ok(Some(determinant(&full)))
}

// ---------------------------------------------------------------------
// verification suites

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Free-monomial ceiling for the linear-algebra oracle.
    pub oracle_max_monomials: usize,
    /// Above this many complementary monomials, degree well-definedness is
    /// sampled instead of exhausted.
    pub welldef_exhaustive_limit: usize,
    pub welldef_samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle_max_monomials: crate::oracle::DEFAULT_MAX_MONOMIALS,
            welldef_exhaustive_limit: 20_000,
            welldef_samples: 2_000,
            seed: 0,
        }
    }
}

/// Checks that the degree map kills every product (defining relation) x
/// (complementary-degree monomial): this is what makes the degree map
/// descend from the free ring.
pub fn verify_degree_welldefined(ctx: &RingContext, opts: &VerifyOptions) -> Report {
    let mut report = Report::new();
    let top = match ctx.top_degree() {
        Ok(t) => t,
        Err(_) => {
            report.push("degree-welldefined", false, "not a chow context");
            return report;
        }
    };
    let gens = ctx.generators();
    let mut rng = SplitMix64::new(opts.seed);
    let mut violations = 0usize;
    let mut checked = 0usize;
    let mut sampled = false;
    for rel in ctx.relation_generators() {
        let rel_deg = match rel.homogeneity() {
            Homogeneity::Degree(d) => d as usize,
            _ => continue,
        };
        if rel_deg > top {
            continue; // products land above the top degree and die by extension
        }
        let comp = top - rel_deg;
        let count = Monomial::count_free(gens.len(), comp);
        let monomials: Vec<Monomial> = if count <= opts.welldef_exhaustive_limit {
            Monomial::enumerate_free(&gens, comp)
        } else {
            sampled = true;
            (0..opts.welldef_samples)
                .map(|_| {
                    let mut mono = Monomial::one();
                    for _ in 0..comp {
                        mono = mono.times(*rng.choose(&gens), 1);
                    }
                    mono
                })
                .collect()
        };
        for u in monomials {
            let prod = rel.mul(&Polynomial::from_monomial(u));
            let d = degree_of(ctx, &prod).expect("homogeneous product");
            checked += 1;
            if !d.is_zero() {
                violations += 1;
            }
        }
    }
    report.push(
        format!("degree-welldefined[{}]", ctx.mode().as_str()),
        violations == 0,
        format!(
            "{checked} relation-times-monomial products checked{}, {violations} violations",
            if sampled {
                " (sampled)"
            } else {
                " (exhaustive)"
            }
        ),
    );
    report
}

/// Checks `x_G * g = 0` for every stated kernel generator `g` of the
/// factoring homomorphism at `G`: the covers of `G`, and the differences of
/// generators with the same join with `G`.
pub fn verify_annihilator(ctx: &RingContext, g: FlatId) -> Result<Report, RingError> {
    let m = ctx.require_matroid()?;
    let xg = x_element(ctx, g)?;
    let mut report = Report::new();
    let mut bad: Vec<String> = Vec::new();
    let mut checked = 0usize;

    for f in m.covers(g) {
        let prod = xg.mul(&Polynomial::generator(f));
        checked += 1;
        if !straighten(ctx, &prod).is_zero() {
            bad.push(format!("x_{} * h[{}]", g, f));
        }
    }
    let gens: Vec<FlatId> = ctx
        .generators()
        .into_iter()
        .filter(|&f| !m.leq(f, g))
        .collect();
    for (i, &h) in gens.iter().enumerate() {
        for &k in &gens[i + 1..] {
            if m.join(h, g) != m.join(k, g) {
                continue;
            }
            let diff = &Polynomial::generator(h) - &Polynomial::generator(k);
            let prod = xg.mul(&diff);
            checked += 1;
            if !straighten(ctx, &prod).is_zero() {
                bad.push(format!("x_{} * (h[{}] - h[{}])", g, h, k));
            }
        }
    }
    report.push(
        format!("annihilator[G={}]", g),
        bad.is_empty(),
        if bad.is_empty() {
            format!("{checked} kernel generators annihilated")
        } else {
            format!("violations: {}", bad.join(", "))
        },
    );
    Ok(report)
}

/// Compares `deg(phi_G(y))` with `deg(x_G * y)`: the projection formula.
pub fn verify_projection_formula(
    ctx: &RingContext,
    g: FlatId,
    y: &Polynomial,
) -> Result<bool, RingError> {
    let phi = PhiHom::new(ctx, g)?;
    let lhs = phi.apply(y).degree()?;
    let xg = x_element(ctx, g)?;
    let rhs = degree_of(ctx, &straighten(ctx, &xg.mul(y)))?;
    Ok(lhs == rhs)
}

/// The full per-context suite: basis counts against the oracle, degree
/// normalization and well-definedness, triangular pairing with unit
/// diagonal at every degree, unimodular complementary pairing, and the
/// palindromic Hilbert sequence in the reduced mode.
pub fn verify_theorems(ctx: &RingContext, opts: &VerifyOptions) -> Report {
    let mut report = Report::new();
    let mode = ctx.mode().as_str();
    let m = match ctx.require_matroid() {
        Ok(m) => m.clone(),
        Err(_) => {
            report.push("verify-theorems", false, "not a chow context");
            return report;
        }
    };
    let top = ctx.top_degree().expect("chow context");
    let hilbert = hilbert_series(ctx).expect("chow context");

    // standard monomial counts vs the oracle
    let gens = ctx.generators().len();
    let mut mismatches = Vec::new();
    let mut torsion = Vec::new();
    let mut skipped = Vec::new();
    for (d, &count) in hilbert.iter().enumerate() {
        if Monomial::count_free(gens, d) > opts.oracle_max_monomials {
            skipped.push(d.to_string());
            continue;
        }
        let rep = oracle_basis(ctx, d, opts.oracle_max_monomials).expect("within guard");
        if rep.free_rank != count {
            mismatches.push(format!(
                "d={d}: enumerated {count}, oracle {}",
                rep.free_rank
            ));
        }
        if !rep.torsion_free {
            torsion.push(d.to_string());
        }
    }
    let skip_note = if skipped.is_empty() {
        String::new()
    } else {
        format!(" (degrees {} beyond oracle guard)", skipped.join(","))
    };
    report.push(
        format!("standard-monomial-basis[{mode}]"),
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("counts {hilbert:?} match oracle{skip_note}")
        } else {
            mismatches.join("; ")
        },
    );
    report.push(
        format!("torsion-free[{mode}]"),
        torsion.is_empty(),
        if torsion.is_empty() {
            format!("all checked degrees torsion-free{skip_note}")
        } else {
            format!("torsion at degrees {}", torsion.join(","))
        },
    );

    // degree normalization on the top power of the top flat
    let e_top = Polynomial::from_monomial(Monomial::power(m.top(), top as u32));
    let norm = degree_of(ctx, &e_top).expect("homogeneous");
    report.push(
        format!("degree-normalization[{mode}]"),
        norm == BigInt::one(),
        format!("deg(h[{}]^{top}) = {norm}", m.top()),
    );

    report.merge(verify_degree_welldefined(ctx, opts));

    // pairing triangularity and duality at every degree
    let mut tri_bad = Vec::new();
    let mut delta_bad = Vec::new();
    let mut det_bad = Vec::new();
    for k in 0..=top {
        match pairing_matrix(ctx, k, true) {
            Ok(rep) => {
                if !rep.lower_triangular_unit {
                    tri_bad.push(k.to_string());
                }
                if !rep.delta_dominance {
                    delta_bad.push(k.to_string());
                }
                match rep.full_pairing_det {
                    Some(det) if det.abs() == BigInt::one() => {}
                    Some(det) => det_bad.push(format!("k={k}: det {det}")),
                    None => det_bad.push(format!("k={k}: non-square")),
                }
            }
            Err(e) => {
                tri_bad.push(format!("k={k}: {e}"));
            }
        }
    }
    report.push(
        format!("pairing-triangular[{mode}]"),
        tri_bad.is_empty(),
        if tri_bad.is_empty() {
            format!("lower triangular with unit diagonal at degrees 0..={top}")
        } else {
            format!("failures at {}", tri_bad.join(","))
        },
    );
    report.push(
        format!("pairing-delta-dominance[{mode}]"),
        delta_bad.is_empty(),
        if delta_bad.is_empty() {
            "nonzero off-diagonal entries increase delta".to_string()
        } else {
            format!("failures at {}", delta_bad.join(","))
        },
    );
    report.push(
        format!("poincare-duality[{mode}]"),
        det_bad.is_empty(),
        if det_bad.is_empty() {
            "complementary pairing determinant is a unit at every degree".to_string()
        } else {
            det_bad.join("; ")
        },
    );

    if ctx.mode() == RingMode::Reduced {
        let palindromic = (0..hilbert.len()).all(|i| hilbert[i] == hilbert[hilbert.len() - 1 - i]);
        report.push(
            "hilbert-palindromic[reduced]",
            palindromic,
            format!("{hilbert:?}"),
        );
    }
    report
}
