//! Rewrite ring elements onto the standard monomial basis.
//!
//! ```bash
//! cargo run -p matroid-chow --example straightening
//! ```

use matroid_chow::matroid::MatroidLattice;
use matroid_chow::ring::{straighten, Polynomial, RingContext};
use matroid_chow::text::parse_polynomial;

fn main() {
    let b2 = MatroidLattice::boolean(2).unwrap();
    let aug = RingContext::augmented(b2.clone());
    let red = RingContext::reduced(b2);

    // the product of the two atoms collapses to the top power
    let p = parse_polynomial("h[1]*h[2]").unwrap();
    println!("augmented B_2: h[1]*h[2]  ->  {}", straighten(&aug, &p));

    // atom generators die in the reduced ring
    let p = parse_polynomial("h[1]").unwrap();
    println!("reduced B_2:   h[1]       ->  {}", straighten(&red, &p));

    // atom squares die in the augmented ring
    let p = parse_polynomial("h[1]^2").unwrap();
    println!("augmented B_2: h[1]^2     ->  {}", straighten(&aug, &p));

    // a bigger mixed element over B_3
    let b3 = MatroidLattice::boolean(3).unwrap();
    let aug3 = RingContext::augmented(b3);
    let p = parse_polynomial("3*h[1]*h[5] - h[2]*h[4] + h[7]^2").unwrap();
    let n = straighten(&aug3, &p);
    println!("\naugmented B_3: 3*h[1]*h[5] - h[2]*h[4] + h[7]^2");
    println!("            -> {n}");

    // normal forms are idempotent
    assert_eq!(straighten(&aug3, &n), n);
    println!("(straightening the normal form again is a no-op)");

    let q = parse_polynomial("h[1]*h[2]*h[4]").unwrap();
    println!(
        "\nproduct of the three atoms of B_3 -> {}",
        straighten(&aug3, &q)
    );
    let zero = straighten(&aug3, &Polynomial::zero());
    println!("zero stays {zero}");
}
