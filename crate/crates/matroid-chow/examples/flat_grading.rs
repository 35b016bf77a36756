//! The direct-sum decomposition by support join, and the graded Mobius
//! algebra sitting inside the augmented ring.
//!
//! ```bash
//! cargo run -p matroid-chow --example flat_grading
//! ```

use matroid_chow::decomposition::{
    mobius_multiply, piece_dimensions, split_by_flat, verify_mobius_embedding, MobiusElement,
};
use matroid_chow::matroid::MatroidLattice;
use matroid_chow::ring::{Polynomial, RingContext};
use matroid_chow::text::parse_polynomial;

fn main() {
    let b3 = MatroidLattice::boolean(3).unwrap();
    let aug = RingContext::augmented(b3.clone());

    // splitting an element by the join of each term's support
    let p = parse_polynomial("h[1] + h[7] + 2*h[1]*h[2]").unwrap();
    println!("pieces of h[1] + h[7] + 2*h[1]*h[2]:");
    for piece in split_by_flat(&aug, &p).unwrap() {
        println!("  at flat {}: {}", piece.flat, piece.component);
    }
    let one = split_by_flat(&aug, &Polynomial::one()).unwrap();
    println!(
        "the constants sit at the bottom flat: piece at {}",
        one[0].flat
    );

    // per-flat dimension sequences
    println!("\npiece dimensions by degree:");
    for f in b3.nonempty_flats() {
        println!(
            "  flat {f} (rank {}): {:?}",
            b3.rank(f),
            piece_dimensions(&aug, f).unwrap()
        );
    }

    // the Mobius algebra: basis elements multiply by rank additivity
    let a = b3.atoms()[0];
    let b = b3.atoms()[1];
    let ya = MobiusElement::basis(a);
    let yb = MobiusElement::basis(b);
    println!("\ny_a * y_b = {:?}", mobius_multiply(&b3, &ya, &yb).coeffs);
    println!(
        "y_a * y_a = {:?} (ranks stop adding)",
        mobius_multiply(&b3, &ya, &ya).coeffs
    );

    // and the embedding into the augmented ring via pure powers checks out
    let report = verify_mobius_embedding(&aug).unwrap();
    print!("{}", report.render_text());
}
