//! The straightening-law algebra B(L) over a finite meet-semilattice, and
//! its quotients onto the Chow rings.
//!
//! ```bash
//! cargo run -p matroid-chow --example semilattice_asl
//! ```

use std::sync::Arc;

use matroid_chow::asl::{check_asl, enumerate_meet_semilattices, quotient_to_chow};
use matroid_chow::matroid::{FlatId, MatroidLattice};
use matroid_chow::poset::Poset;
use matroid_chow::ring::{
    series_truncated, straighten, Monomial, Polynomial, RingContext, RingMode,
};

fn main() {
    // the diamond: incomparable products straighten through the meet
    let diamond = Poset::build(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let ctx = RingContext::semilattice(Arc::new(diamond.as_meet_semilattice().unwrap()));
    let p = Polynomial::from_monomial(
        Monomial::generator(FlatId(1)).mul(&Monomial::generator(FlatId(2))),
    );
    println!("diamond: h[1]*h[2] -> {}", straighten(&ctx, &p));
    println!(
        "series through degree 4: {:?}",
        series_truncated(&ctx, 4).unwrap()
    );
    let rep = check_asl(&ctx, 4).unwrap();
    println!(
        "axiom 1 (basis): {}, axiom 2 (factoring): {}, bottom non-zero-divisor: {}",
        rep.axiom1_ok, rep.axiom2_ok, rep.nzd_ok
    );

    // every meet-semilattice on up to 4 elements passes the axioms
    let mut count = 0;
    for sl in enumerate_meet_semilattices(4) {
        let ctx = RingContext::semilattice(Arc::new(sl));
        assert!(check_asl(&ctx, 3).unwrap().all_ok());
        count += 1;
    }
    println!("\nchecked {count} labeled meet-semilattices on 4 elements");

    // the inverted poset of nonempty flats of a matroid is the main example,
    // and B of it maps onto both Chow rings
    let b3 = MatroidLattice::boolean(3).unwrap();
    let op = RingContext::semilattice_op(&b3);
    let rep = check_asl(&op, 4).unwrap();
    println!("\ninverted flat poset of B_3 passes: {}", rep.all_ok());

    let p = Polynomial::from_monomial(
        Monomial::generator(FlatId(0)).mul(&Monomial::generator(FlatId(1))),
    );
    let in_b = straighten(&op, &p);
    let to_aug = quotient_to_chow(&op, &p, RingMode::Augmented).unwrap();
    let to_red = quotient_to_chow(&op, &p, RingMode::Reduced).unwrap();
    println!("an incomparable product in B: {in_b}");
    println!("  its image in the augmented ring: {to_aug}");
    println!("  its image in the reduced ring:   {to_red}");
}
