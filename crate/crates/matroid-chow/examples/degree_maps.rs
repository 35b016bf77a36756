//! The Hall-Rado and dragon-Hall-Rado degree maps.
//!
//! ```bash
//! cargo run -p matroid-chow --example degree_maps
//! ```

use matroid_chow::matroid::MatroidLattice;
use matroid_chow::pairing::{degree_aug, degree_red, dragon_hall_rado, hall_rado, FlatMultiset};
use matroid_chow::ring::{Monomial, Polynomial, RingContext};

fn main() {
    let b3 = MatroidLattice::boolean(3).unwrap();
    let aug = RingContext::augmented(b3.clone());
    let red = RingContext::reduced(b3.clone());
    let e = b3.top();
    let a = b3.atoms()[0];
    let f2 = b3.flats().find(|&f| b3.rank(f) == 2).unwrap();

    // the multiset {E, E, E} satisfies Hall-Rado, so deg(h_E^3) = 1
    let out = hall_rado(&b3, &FlatMultiset(vec![e, e, e])).unwrap();
    println!("HR({{E,E,E}}) satisfied: {}", out.satisfied);
    let he3 = Polynomial::from_monomial(Monomial::power(e, 3));
    println!("deg(h_E^3) = {}", degree_aug(&aug, &he3).unwrap());

    // a repeated atom fails, with the minimal witness reported
    let out = hall_rado(&b3, &FlatMultiset(vec![a, a, e])).unwrap();
    println!(
        "HR({{a,a,E}}) satisfied: {}, witness positions {:?}",
        out.satisfied,
        out.witness.unwrap()
    );

    // dragon-Hall-Rado drives the reduced degree map in degree r-1
    let out = dragon_hall_rado(&b3, &FlatMultiset(vec![f2, e])).unwrap();
    println!("\ndHR({{F_2,E}}) satisfied: {}", out.satisfied);
    let p = Polynomial::from_monomial(Monomial::generator(f2).mul(&Monomial::generator(e)));
    println!(
        "reduced deg(h_F2 * h_E) = {}",
        degree_red(&red, &p).unwrap()
    );
    let p = Polynomial::from_monomial(Monomial::generator(a).mul(&Monomial::generator(e)));
    println!("reduced deg(h_a * h_E) = {}", degree_red(&red, &p).unwrap());

    // degrees away from the top extend by zero
    let he2 = Polynomial::from_monomial(Monomial::power(e, 2));
    println!(
        "\ndeg of a non-top-degree element: {}",
        degree_aug(&aug, &he2).unwrap()
    );
}
