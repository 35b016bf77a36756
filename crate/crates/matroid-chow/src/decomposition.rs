//! The flat-indexed direct-sum decomposition, the graded Mobius algebra
//! embedding, and the Chow-polynomial recursion through truncated
//! restrictions.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matroid::{FlatId, MatroidLattice};
use crate::report::Report;
use crate::ring::{
    enumerate_standard_monomials, hilbert_series, straighten, Monomial, Polynomial, RingContext,
    RingError, RingMode,
};

/// One summand of the decomposition: the terms whose support joins to the
/// given flat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub flat: FlatId,
    pub component: Polynomial,
}

/// Join of the support of a monomial; the bottom flat for the constant.
pub fn support_join(m: &MatroidLattice, mono: &Monomial) -> FlatId {
    mono.support().fold(m.bottom(), |acc, f| m.join(acc, f))
}

/// Splits a polynomial by the support join of its terms. Arbitrary inputs
/// are straightened first: the decomposition is a statement about the
/// quotient ring, so it is computed on canonical representatives.
pub fn split_by_flat(ctx: &RingContext, p: &Polynomial) -> Result<Vec<GradedPiece>, RingError> {
    let m = ctx.require_matroid()?;
    let normal = straighten(ctx, p);
    let mut pieces: BTreeMap<FlatId, Polynomial> = BTreeMap::new();
    for (mono, c) in normal.terms() {
        pieces
            .entry(support_join(m, mono))
            .or_default()
            .add_term(mono.clone(), c.clone());
    }
    Ok(pieces
        .into_iter()
        .map(|(flat, component)| GradedPiece { flat, component })
        .collect())
}

/// Dimension counts by degree, `0..=rk(F)`, of the piece at a nonempty flat
/// `F`: standard monomials whose support joins to exactly `F`.
pub fn piece_dimensions(ctx: &RingContext, f: FlatId) -> Result<Vec<usize>, RingError> {
    let m = ctx.require_matroid()?;
    if f == m.bottom() {
        return Err(RingError::InvalidFlat(f.0));
    }
    let top = m.rank(f) as usize;
    let mut out = vec![0usize; top + 1];
    for (d, slot) in out.iter_mut().enumerate() {
        *slot = enumerate_standard_monomials(ctx, d)
            .into_iter()
            .filter(|mono| support_join(m, mono) == f)
            .count();
    }
    Ok(out)
}

/// An element of the graded Mobius algebra in the flat basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MobiusElement {
    pub coeffs: BTreeMap<FlatId, BigInt>,
}

impl MobiusElement {
    pub fn basis(f: FlatId) -> MobiusElement {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(f, BigInt::one());
        MobiusElement { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&mut self, f: FlatId, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(f).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&f);
        }
    }
}

/// Multiplication in the graded Mobius algebra: basis elements multiply to
/// the join when ranks add, and to zero otherwise.
pub fn mobius_multiply(m: &MatroidLattice, u: &MobiusElement, v: &MobiusElement) -> MobiusElement {
    let mut out = MobiusElement::default();
    for (&f, cf) in &u.coeffs {
        for (&g, cg) in &v.coeffs {
            let j = m.join(f, g);
            if m.rank(f) + m.rank(g) == m.rank(j) {
                out.add(j, cf * cg);
            }
        }
    }
    out
}

/// Checks the Mobius algebra against straightening: powers `h_F^{rk F}`
/// must multiply exactly like the basis elements, and atom products must
/// collapse to the power of their join.
pub fn verify_mobius_embedding(ctx: &RingContext) -> Result<Report, RingError> {
    if ctx.mode() != RingMode::Augmented {
        return Err(RingError::WrongMode("augmented"));
    }
    let m = ctx.require_matroid()?;
    let mut report = Report::new();

    let mut bad = Vec::new();
    let mut checked = 0usize;
    for f in m.flats() {
        for g in m.flats() {
            let hf = Monomial::power(f, m.rank(f));
            let hg = Monomial::power(g, m.rank(g));
            let got = straighten(ctx, &Polynomial::from_monomial(hf.mul(&hg)));
            let j = m.join(f, g);
            let expect = if m.rank(f) + m.rank(g) == m.rank(j) {
                Polynomial::from_monomial(Monomial::power(j, m.rank(j)))
            } else {
                Polynomial::zero()
            };
            checked += 1;
            if got != expect {
                bad.push(format!("({f},{g})"));
            }
        }
    }
    report.push(
        "mobius-multiplication-table",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{checked} flat pairs match")
        } else {
            format!("mismatches at {}", bad.join(", "))
        },
    );

    // atom products: every subset of atoms collapses to the power of its join
    let atoms = m.atoms();
    let mut bad = Vec::new();
    let mut checked = 0usize;
    for mask in 1usize..(1 << atoms.len().min(12)) {
        let chosen: Vec<FlatId> = (0..atoms.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| atoms[i])
            .collect();
        if chosen.len() > m.rank_top() as usize {
            continue;
        }
        let join = chosen.iter().fold(m.bottom(), |acc, &a| m.join(acc, a));
        let mono = Monomial::from_factors(chosen.iter().map(|&a| (a, 1)));
        let got = straighten(ctx, &Polynomial::from_monomial(mono));
        let expect = if m.rank(join) as usize == chosen.len() {
            Polynomial::from_monomial(Monomial::power(join, m.rank(join)))
        } else {
            Polynomial::zero()
        };
        checked += 1;
        if got != expect {
            bad.push(format!("{chosen:?}"));
        }
    }
    report.push(
        "mobius-atom-products",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{checked} atom sets collapse correctly")
        } else {
            format!("mismatches at {}", bad.join(", "))
        },
    );
    Ok(report)
}

/// Checks the flat grading: piece dimensions sum to the Hilbert series, the
/// top piece dimension is 1 and is spanned by the top power, and each piece
/// matches the degree-shifted Hilbert series of the truncated restriction.
pub fn verify_flat_grading(ctx: &RingContext) -> Result<Report, RingError> {
    if ctx.mode() != RingMode::Augmented {
        return Err(RingError::WrongMode("augmented"));
    }
    let m = ctx.require_matroid()?;
    let mut report = Report::new();
    let hilbert = hilbert_series(ctx)?;
    let top = hilbert.len() - 1;

    // sum over flats, degree by degree
    let mut sums = vec![0usize; top + 1];
    sums[0] += 1; // the piece at the bottom flat is spanned by 1
    let mut piece_dims: Vec<(FlatId, Vec<usize>)> = Vec::new();
    for f in m.nonempty_flats() {
        let dims = piece_dimensions(ctx, f)?;
        for (d, &c) in dims.iter().enumerate() {
            sums[d] += c;
        }
        piece_dims.push((f, dims));
    }
    report.push(
        "flat-grading-sum",
        sums == hilbert,
        format!("piece sums {sums:?} vs series {hilbert:?}"),
    );

    // top of each piece: dimension one, spanned by h_F^{rk F}
    let mut bad = Vec::new();
    for (f, dims) in &piece_dims {
        let rk = m.rank(*f) as usize;
        if dims[rk] != 1 {
            bad.push(format!("{f}: top dim {}", dims[rk]));
            continue;
        }
        let span: Vec<Monomial> = enumerate_standard_monomials(ctx, rk)
            .into_iter()
            .filter(|mono| support_join(m, mono) == *f)
            .collect();
        if span != vec![Monomial::power(*f, rk as u32)] {
            bad.push(format!("{f}: top not the pure power"));
        }
    }
    report.push(
        "flat-grading-top",
        bad.is_empty(),
        if bad.is_empty() {
            "each piece is one-dimensional at its top, spanned by the pure power".to_string()
        } else {
            bad.join("; ")
        },
    );

    // piece dimensions are the shifted series of the truncated restriction
    let mut bad = Vec::new();
    for (f, dims) in &piece_dims {
        let rest = m.restriction(*f);
        let tr = rest
            .matroid
            .truncation()
            .map_err(|_| RingError::InvalidFlat(f.0))?;
        let sub = hilbert_series(&RingContext::augmented(tr.matroid.clone()))?;
        let mut expect = vec![0usize; dims.len()];
        for (d, &c) in sub.iter().enumerate() {
            expect[d + 1] = c;
        }
        if *dims != expect {
            bad.push(format!("{f}: {dims:?} vs shifted {expect:?}"));
        }
    }
    report.push(
        "flat-grading-truncation",
        bad.is_empty(),
        if bad.is_empty() {
            "piece dimensions equal shifted series of truncated restrictions".to_string()
        } else {
            bad.join("; ")
        },
    );
    Ok(report)
}

/// Checks the two Hilbert-series recursions through truncated restrictions.
pub fn verify_hilbert_recursion(m: &Arc<MatroidLattice>) -> Result<Report, RingError> {
    let mut report = Report::new();

    // augmented: H_M = 1 + t * sum over nonempty flats of H_{Tr M^F}
    let aug = RingContext::augmented(m.clone());
    let lhs = hilbert_series(&aug)?;
    let mut rhs = vec![0usize; lhs.len().max(1)];
    rhs[0] = 1;
    for f in m.nonempty_flats() {
        let tr = m
            .restriction(f)
            .matroid
            .truncation()
            .map_err(|_| RingError::InvalidFlat(f.0))?;
        let sub = hilbert_series(&RingContext::augmented(tr.matroid.clone()))?;
        for (d, &c) in sub.iter().enumerate() {
            rhs[d + 1] += c;
        }
    }
    report.push(
        "hilbert-recursion[augmented]",
        lhs == rhs,
        format!("series {lhs:?} vs recursion {rhs:?}"),
    );

    // reduced: only flats of rank at least 2 contribute
    let red = RingContext::reduced(m.clone());
    let lhs = hilbert_series(&red)?;
    let mut rhs = vec![0usize; lhs.len().max(1)];
    rhs[0] = 1;
    for f in m.flats().filter(|&f| m.rank(f) >= 2) {
        let tr = m
            .restriction(f)
            .matroid
            .truncation()
            .map_err(|_| RingError::InvalidFlat(f.0))?;
        let sub = hilbert_series(&RingContext::reduced(tr.matroid.clone()))?;
        for (d, &c) in sub.iter().enumerate() {
            rhs[d + 1] += c;
        }
    }
    report.push(
        "hilbert-recursion[reduced]",
        lhs == rhs,
        format!("series {lhs:?} vs recursion {rhs:?}"),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::MatroidLattice;

    fn b3_aug() -> RingContext {
        RingContext::augmented(MatroidLattice::boolean(3).unwrap())
    }

    #[test]
    fn split_examples() {
        let ctx = b3_aug();
        let m = ctx.require_matroid().unwrap().clone();

        let pieces = split_by_flat(&ctx, &Polynomial::one()).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].flat, m.bottom());

        let f = m.flats().find(|&f| m.rank(f) == 2).unwrap();
        let p = Polynomial::from_monomial(Monomial::power(f, 2));
        let pieces = split_by_flat(&ctx, &p).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].flat, f);

        let a = m.atoms()[0];
        let p = &Polynomial::generator(a) + &Polynomial::generator(m.top());
        let pieces = split_by_flat(&ctx, &p).unwrap();
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0].flat, a);
        assert_eq!(pieces[1].flat, m.top());
    }

    #[test]
    fn split_reassembles_and_respects_grading() {
        let ctx = b3_aug();
        let m = ctx.require_matroid().unwrap().clone();
        let fl: Vec<FlatId> = m.nonempty_flats().collect();
        let mut p = Polynomial::zero();
        for (i, &f) in fl.iter().enumerate() {
            for &g in &fl[i..] {
                p.add_term(
                    Monomial::generator(f).mul(&Monomial::generator(g)),
                    BigInt::from(1 + (i as i64 % 2)),
                );
            }
        }
        let normal = straighten(&ctx, &p);
        let pieces = split_by_flat(&ctx, &p).unwrap();
        let mut reassembled = Polynomial::zero();
        for piece in &pieces {
            for (mono, c) in piece.component.terms() {
                assert_eq!(support_join(&m, mono), piece.flat);
                reassembled.add_term(mono.clone(), c.clone());
            }
        }
        assert_eq!(reassembled, normal);
    }

    #[test]
    fn straighten_preserves_support_join() {
        // a monomial with support joining to F straightens to terms joining to F
        let ctx = b3_aug();
        let m = ctx.require_matroid().unwrap().clone();
        let fl: Vec<FlatId> = m.nonempty_flats().collect();
        for &f in &fl {
            for &g in &fl {
                let mono = Monomial::generator(f).mul(&Monomial::generator(g));
                let join = support_join(&m, &mono);
                let n = straighten(&ctx, &Polynomial::from_monomial(mono));
                for (t, _) in n.terms() {
                    assert_eq!(support_join(&m, t), join);
                }
            }
        }
    }

    #[test]
    fn piece_dimension_examples() {
        let ctx = b3_aug();
        let m = ctx.require_matroid().unwrap().clone();
        let a = m.atoms()[0];
        assert_eq!(piece_dimensions(&ctx, a).unwrap(), vec![0, 1]);
        let f2 = m.flats().find(|&f| m.rank(f) == 2).unwrap();
        assert_eq!(piece_dimensions(&ctx, f2).unwrap(), vec![0, 1, 1]);
        assert!(matches!(
            piece_dimensions(&ctx, m.bottom()).unwrap_err(),
            RingError::InvalidFlat(0)
        ));

        // the top piece matches the truncation's series shifted by one
        let tr = m.truncation().unwrap();
        let sub = hilbert_series(&RingContext::augmented(tr.matroid.clone())).unwrap();
        let dims = piece_dimensions(&ctx, m.top()).unwrap();
        let mut expect = vec![0usize; dims.len()];
        for (d, &c) in sub.iter().enumerate() {
            expect[d + 1] = c;
        }
        assert_eq!(dims, expect);
    }

    #[test]
    fn mobius_rules() {
        let m = MatroidLattice::boolean(2).unwrap();
        let a = m.atoms()[0];
        let bflat = m.atoms()[1];
        let ya = MobiusElement::basis(a);
        let yb = MobiusElement::basis(bflat);
        let y0 = MobiusElement::basis(m.bottom());
        // bottom acts as identity
        assert_eq!(mobius_multiply(&m, &y0, &ya), ya);
        // two distinct atoms multiply to the top
        assert_eq!(mobius_multiply(&m, &ya, &yb), MobiusElement::basis(m.top()));
        // a repeated atom dies: ranks no longer add
        let u23 = MatroidLattice::uniform(2, 3).unwrap();
        let a = u23.atoms()[0];
        assert!(
            mobius_multiply(&u23, &MobiusElement::basis(a), &MobiusElement::basis(a)).is_zero()
        );
    }

    #[test]
    fn mobius_embedding_small() {
        for m in [
            MatroidLattice::boolean(3).unwrap(),
            MatroidLattice::uniform(2, 4).unwrap(),
            MatroidLattice::uniform(1, 1).unwrap(),
        ] {
            let ctx = RingContext::augmented(m);
            let rep = verify_mobius_embedding(&ctx).unwrap();
            assert!(rep.all_passed(), "{}", rep.render_text());
        }
    }

    #[test]
    fn hilbert_recursion_examples() {
        // rank 1: series (1,1), recursion 1 + t * series(rank 0) = 1 + t
        let r1 = MatroidLattice::uniform(1, 1).unwrap();
        assert!(verify_hilbert_recursion(&r1).unwrap().all_passed());
        for m in [
            MatroidLattice::boolean(2).unwrap(),
            MatroidLattice::boolean(3).unwrap(),
            MatroidLattice::uniform(2, 4).unwrap(),
        ] {
            let rep = verify_hilbert_recursion(&m).unwrap();
            assert!(rep.all_passed(), "{}", rep.render_text());
        }
    }

    #[test]
    fn flat_grading_boolean3() {
        let rep = verify_flat_grading(&b3_aug()).unwrap();
        assert!(rep.all_passed(), "{}", rep.render_text());
    }
}
