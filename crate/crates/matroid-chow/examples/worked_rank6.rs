//! A worked computation in the rank-6 Boolean matroid: the essential flats
//! of h_{F_2} h_{F_5}^2 along the chain of prefixes, its unit diagonal
//! pairing entry, and the vanishing entries against monomials supported
//! above rank 3.
//!
//! ```bash
//! cargo run -p matroid-chow --example worked_rank6
//! ```

use matroid_chow::matroid::{FlatId, MatroidLattice};
use matroid_chow::pairing::{degree_aug, delta, dual_element, essential_flats};
use matroid_chow::ring::{enumerate_standard_monomials, Monomial, Polynomial, RingContext};

fn main() {
    let b6 = MatroidLattice::boolean(6).unwrap();
    let aug = RingContext::augmented(b6.clone());

    // the prefix flats {0}, {0,1}, ..., {0..4}
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
    println!(
        "m = {m}  (degree {}, delta {:?})",
        m.degree(),
        delta(&b6, &m).0
    );

    let ess = essential_flats(&aug, &m).unwrap();
    println!(
        "essential flats of m: {:?}  (the bottom, F_2, F_5)",
        ess.flats
    );

    let d = dual_element(&aug, &m).unwrap();
    println!("d(m) = x_bottom * x_F2 * x_F5 has {} terms", d.num_terms());

    let diag = degree_aug(&aug, &d.mul(&Polynomial::from_monomial(m.clone()))).unwrap();
    println!("deg(m * d(m)) = {diag}");

    // standard monomials of the same degree supported entirely above rank 3
    // pair to zero against d(m)
    let mut vanished = 0;
    for m2 in enumerate_standard_monomials(&aug, 3) {
        let min_rank = m2.support().map(|f| b6.rank(f)).min().unwrap_or(0);
        if m2 == m || min_rank < 3 {
            continue;
        }
        let v = degree_aug(&aug, &d.mul(&Polynomial::from_monomial(m2.clone()))).unwrap();
        assert_eq!(v, 0.into(), "expected vanishing for {m2}");
        vanished += 1;
    }
    println!("deg(m' * d(m)) = 0 for all {vanished} standard m' supported above rank 3");
}
