//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! The roster mixes the named families (Boolean ranks 2..=5, uniform,
//! graphic K_4) with twenty seeded pseudo-random matroids that travel
//! through the flats-file format before use.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use matroid_chow::asl::{check_asl, enumerate_meet_semilattices};
use matroid_chow::decomposition::{
    piece_dimensions, verify_flat_grading, verify_hilbert_recursion, verify_mobius_embedding,
};
use matroid_chow::io::{matroid_from_json, matroid_to_flats_json};
use matroid_chow::matroid::{FlatId, MatroidLattice};
use matroid_chow::oracle::{oracle_basis, DEFAULT_MAX_MONOMIALS};
use matroid_chow::pairing::{
    degree_aug, degree_of, degree_red, delta, dual_element, essential_flats,
    full_pairing_determinant, pairing_matrix, verify_annihilator, verify_degree_welldefined,
    verify_projection_formula, x_element, VerifyOptions,
};
use matroid_chow::ring::{
    enumerate_standard_monomials, hilbert_series, straighten, Monomial, Polynomial, RingContext,
};
use matroid_chow::rng::SplitMix64;

fn k4() -> Arc<MatroidLattice> {
    MatroidLattice::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

/// The named test matroids.
fn named_roster() -> Vec<(String, Arc<MatroidLattice>)> {
    let mut out: Vec<(String, Arc<MatroidLattice>)> = Vec::new();
    for n in 2..=5 {
        out.push((format!("boolean-{n}"), MatroidLattice::boolean(n).unwrap()));
    }
    for (r, n) in [(2, 3), (2, 4), (3, 5)] {
        out.push((
            format!("uniform-{r}-{n}"),
            MatroidLattice::uniform(r, n).unwrap(),
        ));
    }
    out.push(("graphic-k4".to_string(), k4()));
    out
}

/// Twenty seeded random matroids, each serialized to a flats document and
/// read back through the public parser.
fn random_flats_roster() -> Vec<(String, Arc<MatroidLattice>)> {
    let mut rng = SplitMix64::new(0xACCE97);
    let mut out = Vec::new();
    let mut attempt = 0usize;
    while out.len() < 20 {
        attempt += 1;
        assert!(attempt < 500, "random roster generation stalled");
        let m: Result<Arc<MatroidLattice>, _> = match rng.below(4) {
            0 => {
                let v = 3 + rng.below(3) as usize;
                let e = v - 1 + rng.below(4) as usize;
                let edges: Vec<(usize, usize)> = (0..e)
                    .map(|_| {
                        let a = rng.below(v as u64) as usize;
                        let mut b = rng.below(v as u64) as usize;
                        if a == b {
                            b = (b + 1) % v;
                        }
                        (a, b)
                    })
                    .collect();
                MatroidLattice::graphic(v, &edges)
            }
            1 => {
                let n = 2 + rng.below(4) as usize;
                let r = 1 + rng.below(n as u64) as usize;
                MatroidLattice::uniform(r, n)
            }
            2 => {
                let n = 3 + rng.below(3) as usize;
                MatroidLattice::boolean(n).and_then(|b| Ok(b.truncation()?.matroid))
            }
            _ => {
                let n = 2 + rng.below(4) as usize;
                let r = 1 + rng.below(n as u64) as usize;
                MatroidLattice::uniform(r, n).and_then(|u| {
                    if u.rank_top() >= 2 {
                        Ok(u.truncation()?.matroid)
                    } else {
                        Ok(u)
                    }
                })
            }
        };
        let m = match m {
            Ok(m) => m,
            Err(_) => continue,
        };
        // stay well inside the 64-flat bound so dual-basis expansions and
        // full-pairing determinants run in seconds
        if m.size() > 40 || m.size() < 2 || m.atoms().len() > 12 {
            continue;
        }
        let doc = matroid_to_flats_json(&m).expect("constructors carry labels");
        let back = matroid_from_json(&doc).expect("roundtrip through the flats format");
        assert_eq!(back.size(), m.size());
        out.push((format!("random-{}", out.len()), back));
    }
    out
}

fn full_roster() -> Vec<(String, Arc<MatroidLattice>)> {
    let mut out = named_roster();
    out.extend(random_flats_roster());
    out
}

fn contexts(m: &Arc<MatroidLattice>) -> [RingContext; 2] {
    [
        RingContext::augmented(m.clone()),
        RingContext::reduced(m.clone()),
    ]
}

// criterion 1: standard monomial counts equal the oracle's free ranks, with
// torsion-free quotients, at every degree within the oracle's size guard
#[test]
fn criterion_01_standard_monomial_basis() {
    let mut degrees_checked = 0usize;
    for (name, m) in full_roster() {
        for ctx in contexts(&m) {
            let gens = ctx.generators().len();
            for d in 0..=ctx.top_degree().unwrap() {
                if Monomial::count_free(gens, d) > DEFAULT_MAX_MONOMIALS {
                    continue;
                }
                let rep = oracle_basis(&ctx, d, DEFAULT_MAX_MONOMIALS).unwrap();
                let count = enumerate_standard_monomials(&ctx, d).len();
                assert_eq!(
                    rep.free_rank,
                    count,
                    "{name} {} degree {d}",
                    ctx.mode().as_str()
                );
                assert!(
                    rep.torsion_free,
                    "{name} {} degree {d}",
                    ctx.mode().as_str()
                );
                degrees_checked += 1;
            }
        }
    }
    println!("[PASS] criterion 1: standard monomial basis ({degrees_checked} degree checks)");
}

// criterion 2: the degree maps kill relation multiples, exhaustively
#[test]
fn criterion_02_degree_well_defined() {
    let opts = VerifyOptions::default();
    let mut list: Vec<(String, Arc<MatroidLattice>)> = (2..=4)
        .map(|n| (format!("boolean-{n}"), MatroidLattice::boolean(n).unwrap()))
        .collect();
    list.push(("uniform-2-4".into(), MatroidLattice::uniform(2, 4).unwrap()));
    for (name, m) in list {
        for ctx in contexts(&m) {
            let rep = verify_degree_welldefined(&ctx, &opts);
            assert!(rep.all_passed(), "{name}: {}", rep.render_text());
            assert!(
                rep.checks[0].detail.contains("(exhaustive)"),
                "{name}: expected exhaustive coverage"
            );
        }
    }
    println!("[PASS] criterion 2: degree maps well defined (exhaustive)");
}

// criterion 3: the top powers of the top flat have degree 1
#[test]
fn criterion_03_degree_normalization() {
    for (name, m) in full_roster() {
        let r = m.rank_top();
        let aug = RingContext::augmented(m.clone());
        let p = Polynomial::from_monomial(Monomial::power(m.top(), r));
        assert_eq!(
            degree_aug(&aug, &p).unwrap(),
            BigInt::one(),
            "{name} augmented"
        );
        let red = RingContext::reduced(m.clone());
        let p = Polynomial::from_monomial(Monomial::power(m.top(), r.saturating_sub(1)));
        assert_eq!(
            degree_red(&red, &p).unwrap(),
            BigInt::one(),
            "{name} reduced"
        );
    }
    println!("[PASS] criterion 3: degree normalization deg(h_E^top) = 1");
}

// criterion 4: the dual pairing is lower triangular with unit diagonal in a
// delta-refining order, and nonzero off-diagonal entries increase delta
#[test]
fn criterion_04_triangular_pairing() {
    let mut matrices = 0usize;
    for (name, m) in full_roster() {
        for ctx in contexts(&m) {
            for k in 0..=ctx.top_degree().unwrap() {
                let rep = pairing_matrix(&ctx, k, false).unwrap();
                assert!(
                    rep.lower_triangular_unit,
                    "{name} {} degree {k}",
                    ctx.mode().as_str()
                );
                assert!(
                    rep.delta_dominance,
                    "{name} {} degree {k}",
                    ctx.mode().as_str()
                );
                matrices += 1;
            }
        }
    }
    println!("[PASS] criterion 4: triangular pairings with unit diagonal ({matrices} matrices)");
}

// criterion 5: the complementary-degree pairing of standard monomials is
// unimodular at every degree
#[test]
fn criterion_05_poincare_duality() {
    let mut dets = 0usize;
    for (name, m) in full_roster() {
        for ctx in contexts(&m) {
            for k in 0..=ctx.top_degree().unwrap() {
                let det = full_pairing_determinant(&ctx, k)
                    .unwrap()
                    .unwrap_or_else(|| panic!("{name} degree {k}: non-square pairing"));
                assert_eq!(
                    det.abs(),
                    BigInt::one(),
                    "{name} {} k={k}",
                    ctx.mode().as_str()
                );
                dets += 1;
            }
        }
    }
    println!("[PASS] criterion 5: unimodular complementary pairings ({dets} determinants)");
}

// criterion 6: the rank-6 Boolean worked computation
#[test]
fn criterion_06_rank6_worked_example() {
    let start = std::time::Instant::now();
    let b6 = MatroidLattice::boolean(6).unwrap();
    let aug = RingContext::augmented(b6.clone());
    let prefix = |k: usize| -> FlatId {
        b6.flats()
            .find(|&f| {
                b6.label(f)
                    .map(|l| l == (0..k as u16).collect::<Vec<_>>())
                    .unwrap_or(false)
            })
            .unwrap()
    };
    let f2 = prefix(2);
    let f5 = prefix(5);
    let m = Monomial::from_factors([(f2, 1), (f5, 2)]);

    let ess = essential_flats(&aug, &m).unwrap();
    assert_eq!(ess.flats, vec![b6.bottom(), f2, f5]);

    let d = dual_element(&aug, &m).unwrap();
    let diag = degree_aug(&aug, &d.mul(&Polynomial::from_monomial(m.clone()))).unwrap();
    assert_eq!(diag, BigInt::one());

    // standard monomials of degree 3 supported above rank 3 pair to zero
    // against d(m); their delta precedes delta(m) lexicographically
    let dm = delta(&b6, &m);
    let mut vanishing = 0usize;
    for m2 in enumerate_standard_monomials(&aug, 3) {
        let min_rank = m2.support().map(|f| b6.rank(f)).min().unwrap_or(0);
        if min_rank < 3 {
            continue;
        }
        assert!(delta(&b6, &m2) < dm);
        let v = degree_aug(&aug, &d.mul(&Polynomial::from_monomial(m2.clone()))).unwrap();
        assert!(v.is_zero(), "expected 0 for {m2}, got {v}");
        vanishing += 1;
    }
    assert!(vanishing > 0);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "worked example took {elapsed:?}");
    println!(
        "[PASS] criterion 6: rank-6 worked example (diagonal 1, {vanishing} vanishing entries, {elapsed:?})"
    );
}

// criterion 7: the flat grading: dimensions sum to the series, tops are
// one-dimensional pure powers, pieces match truncated restrictions
#[test]
fn criterion_07_flat_grading() {
    let mut list = full_roster();
    list.push(("boolean-6".into(), MatroidLattice::boolean(6).unwrap()));
    for (name, m) in list {
        if m.size() > 64 {
            continue;
        }
        let aug = RingContext::augmented(m.clone());
        let rep = verify_flat_grading(&aug).unwrap();
        assert!(rep.all_passed(), "{name}: {}", rep.render_text());
        // spot check the piece shape on the top flat
        if m.rank_top() >= 1 {
            let dims = piece_dimensions(&aug, m.top()).unwrap();
            assert_eq!(dims[m.rank_top() as usize], 1, "{name}");
        }
    }
    println!("[PASS] criterion 7: flat grading decomposition");
}

// criterion 8: both Hilbert-series recursions hold coefficientwise
#[test]
fn criterion_08_hilbert_recursion() {
    let mut list = full_roster();
    list.push(("boolean-6".into(), MatroidLattice::boolean(6).unwrap()));
    for (name, m) in list {
        let rep = verify_hilbert_recursion(&m).unwrap();
        assert!(rep.all_passed(), "{name}: {}", rep.render_text());
    }
    println!("[PASS] criterion 8: Hilbert series recursions");
}

// criterion 9: the multiplication table of the pure powers matches the
// graded Mobius algebra on every pair of flats
#[test]
fn criterion_09_mobius_embedding() {
    let mut list = full_roster();
    list.push(("boolean-6".into(), MatroidLattice::boolean(6).unwrap()));
    for (name, m) in list {
        let aug = RingContext::augmented(m.clone());
        let rep = verify_mobius_embedding(&aug).unwrap();
        assert!(rep.all_passed(), "{name}: {}", rep.render_text());
    }
    println!("[PASS] criterion 9: graded Mobius algebra embedding");
}

// criterion 10: straightening-law axioms over every meet-semilattice on at
// most 5 elements, plus the inverted flat posets of U_{2,3} and B_3
#[test]
fn criterion_10_asl() {
    let mut checked = 0usize;
    for n in 1..=5 {
        for sl in enumerate_meet_semilattices(n) {
            let ctx = RingContext::semilattice(Arc::new(sl));
            let rep = check_asl(&ctx, 4).unwrap();
            assert!(
                rep.all_ok(),
                "semilattice on {n} elements: {:?}",
                rep.details
            );
            checked += 1;
        }
    }
    for (name, m) in [
        ("uniform-2-3", MatroidLattice::uniform(2, 3).unwrap()),
        ("boolean-3", MatroidLattice::boolean(3).unwrap()),
    ] {
        let ctx = RingContext::semilattice_op(&m);
        let rep = check_asl(&ctx, 4).unwrap();
        assert!(rep.all_ok(), "{name}: {:?}", rep.details);
        checked += 1;
    }
    println!("[PASS] criterion 10: straightening-law axioms ({checked} semilattices)");
}

// criterion 11: projection formulas on seeded random elements, and
// exhaustive annihilator containment
#[test]
fn criterion_11_projection_formulas() {
    let mut rng = SplitMix64::new(0x9A0);
    let mut formula_checks = 0usize;
    for n in 2..=4 {
        let m = MatroidLattice::boolean(n).unwrap();
        let ctx = RingContext::augmented(m.clone());
        let gens: Vec<FlatId> = ctx.generators();
        let r = m.rank_top();
        for g in m.flats().filter(|&g| g != m.top()) {
            for _ in 0..100 {
                // a random homogeneous element of degree r - 1
                let mut y = Polynomial::zero();
                for _ in 0..3 {
                    let mut mono = Monomial::one();
                    for _ in 0..(r - 1) {
                        mono = mono.times(*rng.choose(&gens), 1);
                    }
                    let coeff = rng.below(7) as i64 - 3;
                    y.add_term(mono, BigInt::from(coeff));
                }
                assert!(
                    verify_projection_formula(&ctx, g, &y).unwrap(),
                    "boolean-{n} at flat {g}: projection formula failed for {y}"
                );
                formula_checks += 1;
            }
            let rep = verify_annihilator(&ctx, g).unwrap();
            assert!(
                rep.all_passed(),
                "boolean-{n} at {g}: {}",
                rep.render_text()
            );
        }
    }
    println!(
        "[PASS] criterion 11: projection formulas ({formula_checks} random elements) and annihilators"
    );
}

// cross-cutting: the degree of a free product equals the degree of its
// normal form, tying the fast pairing path to the straightening path
#[test]
fn degree_agrees_with_straightened_degree() {
    let mut rng = SplitMix64::new(7);
    for (_, m) in named_roster() {
        for ctx in contexts(&m) {
            let gens = ctx.generators();
            let top = ctx.top_degree().unwrap() as u32;
            for _ in 0..25 {
                let mut mono = Monomial::one();
                for _ in 0..top {
                    mono = mono.times(*rng.choose(&gens), 1);
                }
                let p = Polynomial::from_monomial(mono);
                let free = degree_of(&ctx, &p).unwrap();
                let normal = degree_of(&ctx, &straighten(&ctx, &p)).unwrap();
                assert_eq!(free, normal);
            }
        }
    }
    println!("[PASS] free-product degrees match straightened degrees");
}

// cross-cutting: x_G expansions stay within the outside-atom cap and error
// beyond it
#[test]
fn x_element_guard() {
    let m = MatroidLattice::boolean(5).unwrap();
    let ctx = RingContext::augmented(m.clone());
    for g in m.flats().filter(|&g| g != m.top()) {
        x_element(&ctx, g).unwrap();
    }
    // the top flat is rejected outright
    assert!(x_element(&ctx, m.top()).is_err());
    println!("[PASS] x element domain checks");
}

// determinism: hilbert series of a random roster is stable across calls
#[test]
fn roster_is_deterministic() {
    let a = random_flats_roster();
    let b = random_flats_roster();
    assert_eq!(a.len(), b.len());
    for ((na, ma), (nb, mb)) in a.iter().zip(&b) {
        assert_eq!(na, nb);
        assert_eq!(ma.size(), mb.size());
        let ha = hilbert_series(&RingContext::augmented(ma.clone())).unwrap();
        let hb = hilbert_series(&RingContext::augmented(mb.clone())).unwrap();
        assert_eq!(ha, hb);
    }
    println!("[PASS] seeded roster determinism");
}
