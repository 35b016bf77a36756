//! Property tests for the algebraic invariants: idempotence and confluence
//! of straightening, degree-map monotonicity and well-definedness, grading
//! exactness, and text round-trips.

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use matroid_chow::decomposition::{split_by_flat, support_join};
use matroid_chow::matroid::{FlatId, MatroidLattice};
use matroid_chow::pairing::{degree_of, hall_rado, FlatMultiset};
use matroid_chow::poset::Poset;
use matroid_chow::ring::{
    enumerate_standard_monomials, is_standard, series_truncated, straighten, Monomial, Polynomial,
    RingContext, RingMode,
};
use matroid_chow::text::parse_polynomial;

fn b3() -> Arc<MatroidLattice> {
    MatroidLattice::boolean(3).unwrap()
}

fn u24() -> Arc<MatroidLattice> {
    MatroidLattice::uniform(2, 4).unwrap()
}

/// Membership of a vector in the integer row lattice of the degree-d
/// relation matrix, decided by comparing normal forms with and without the
/// vector adjoined: a sublattice with the same rank and invariant factors
/// as its extension equals it.
fn in_relation_lattice(ctx: &RingContext, v: &Polynomial, d: usize) -> bool {
    use matroid_chow::linalg::SparseIntMatrix;
    let gens = ctx.generators();
    let monomials = Monomial::enumerate_free(&gens, d);
    let index: std::collections::HashMap<&Monomial, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let build = |extra: Option<&Polynomial>| {
        let mut mat = SparseIntMatrix::new(monomials.len());
        for rel in ctx.relation_generators() {
            let rel_deg = match rel.homogeneity() {
                matroid_chow::ring::Homogeneity::Degree(k) => k as usize,
                _ => unreachable!(),
            };
            if rel_deg > d {
                continue;
            }
            for u in Monomial::enumerate_free(&gens, d - rel_deg) {
                mat.push_row(rel.terms().map(|(m, c)| (index[&u.mul(m)], c.clone())));
            }
        }
        if let Some(p) = extra {
            mat.push_row(p.terms().map(|(m, c)| (index[m], c.clone())));
        }
        mat.reduce()
    };
    let base = build(None);
    let extended = build(Some(v));
    base == extended
}

// soundness of the normalizer: straighten(p) - p lies in the relation ideal,
// degree by degree, checked against the independent linear algebra
#[test]
fn straighten_soundness_via_ideal_membership() {
    let mut rng = matroid_chow::rng::SplitMix64::new(404);
    for (m, modes) in [
        (b3(), [RingMode::Augmented, RingMode::Reduced]),
        (
            MatroidLattice::uniform(2, 3).unwrap(),
            [RingMode::Augmented, RingMode::Reduced],
        ),
    ] {
        for mode in modes {
            let ctx = RingContext::for_mode(m.clone(), mode);
            let gens = ctx.generators();
            for d in 1..=3usize {
                for _ in 0..8 {
                    let mut mono = Monomial::one();
                    for _ in 0..d {
                        mono = mono.times(*rng.choose(&gens), 1);
                    }
                    let p = Polynomial::from_monomial(mono);
                    let diff = &straighten(&ctx, &p) - &p;
                    if diff.is_zero() {
                        continue;
                    }
                    assert!(
                        in_relation_lattice(&ctx, &diff, d),
                        "difference not in the ideal at degree {d} ({mode:?})"
                    );
                }
            }
        }
    }
}

/// A random polynomial over the nonempty flats of a matroid with `gens`
/// generators: up to `terms` terms of degree at most `max_deg`.
fn poly_strategy(gens: u32, terms: usize, max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(1..=gens, 0..=max_deg), -4i64..=4),
        0..=terms,
    )
    .prop_map(|raw| {
        let mut p = Polynomial::zero();
        for (flats, coeff) in raw {
            let mono = Monomial::from_factors(flats.into_iter().map(|f| (FlatId(f), 1)));
            p.add_term(mono, BigInt::from(coeff));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn straighten_idempotent_and_standard(p in poly_strategy(7, 5, 4)) {
        for mode in [RingMode::Augmented, RingMode::Reduced] {
            let ctx = RingContext::for_mode(b3(), mode);
            let once = straighten(&ctx, &p);
            prop_assert_eq!(&straighten(&ctx, &once), &once);
            for (m, _) in once.terms() {
                prop_assert!(is_standard(&ctx, m));
            }
        }
    }

    #[test]
    fn straighten_commutes_with_products(
        p in poly_strategy(7, 3, 2),
        q in poly_strategy(7, 3, 2),
        s in poly_strategy(7, 2, 2),
    ) {
        let ctx = RingContext::augmented(b3());
        let a = straighten(&ctx, &(&(&p * &q) * &s));
        let b = straighten(&ctx, &(&p * &(&q * &s)));
        let c = straighten(&ctx, &(&(&q * &p) * &s));
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &c);
    }

    #[test]
    fn reduced_factors_through_augmented(p in poly_strategy(7, 4, 3)) {
        let aug = RingContext::augmented(b3());
        let red = RingContext::reduced(b3());
        let via = straighten(&red, &straighten(&aug, &p));
        prop_assert_eq!(via, straighten(&red, &p));
    }

    #[test]
    fn degree_is_well_defined_on_normal_forms(p in poly_strategy(7, 4, 3)) {
        // extension by zero makes the degree linear over mixed degrees too,
        // so compare it termwise against the straightened form
        let ctx = RingContext::augmented(b3());
        let mut free = BigInt::from(0);
        for (m, c) in p.terms() {
            let mono = Polynomial::from_monomial(m.clone());
            free += c * degree_of(&ctx, &mono).unwrap();
        }
        let mut normal = BigInt::from(0);
        for (m, c) in straighten(&ctx, &p).terms() {
            let mono = Polynomial::from_monomial(m.clone());
            normal += c * degree_of(&ctx, &mono).unwrap();
        }
        prop_assert_eq!(free, normal);
    }

    #[test]
    fn hall_rado_monotone_under_enlargement(
        picks in prop::collection::vec(0u32..15, 4),
        pos in 0usize..4,
    ) {
        // replacing a flat by any larger one preserves satisfaction
        let m = MatroidLattice::boolean(4).unwrap();
        let flats: Vec<FlatId> = picks.iter().map(|&i| FlatId(i)).collect();
        let base = hall_rado(&m, &FlatMultiset(flats.clone())).unwrap();
        if base.satisfied {
            for larger in m.flats().filter(|&g| m.leq(flats[pos], g)) {
                let mut bigger = flats.clone();
                bigger[pos] = larger;
                prop_assert!(hall_rado(&m, &FlatMultiset(bigger)).unwrap().satisfied);
            }
        }
    }

    #[test]
    fn grading_partitions_normal_forms(p in poly_strategy(5, 5, 3)) {
        let ctx = RingContext::augmented(u24());
        let m = ctx.require_matroid().unwrap().clone();
        let normal = straighten(&ctx, &p);
        let pieces = split_by_flat(&ctx, &p).unwrap();
        let mut total = 0usize;
        for piece in &pieces {
            for (mono, c) in piece.component.terms() {
                prop_assert_eq!(support_join(&m, mono), piece.flat);
                prop_assert_eq!(c, &normal.coefficient(mono));
                total += 1;
            }
        }
        prop_assert_eq!(total, normal.num_terms());
    }

    #[test]
    fn text_roundtrip(p in poly_strategy(9, 6, 4)) {
        let text = p.to_string();
        let back = parse_polynomial(&text).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn semilattice_normal_forms_are_chains(
        raw in prop::collection::vec((0u32..4, 0u32..4), 1..4)
    ) {
        // products over the diamond straighten onto chain monomials, and the
        // counts by degree match the order-complex series
        let poset = Poset::build(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let ctx = RingContext::semilattice(Arc::new(poset.as_meet_semilattice().unwrap()));
        let mut p = Polynomial::one();
        for (a, b) in raw {
            let factor = Polynomial::from_monomial(
                Monomial::generator(FlatId(a)).mul(&Monomial::generator(FlatId(b))),
            );
            p = &p * &factor;
        }
        let n = straighten(&ctx, &p);
        for (mono, _) in n.terms() {
            prop_assert!(is_standard(&ctx, mono));
        }
        for d in 0..=4usize {
            let count = enumerate_standard_monomials(&ctx, d).len() as u64;
            prop_assert_eq!(count, series_truncated(&ctx, d).unwrap()[d]);
        }
    }
}
