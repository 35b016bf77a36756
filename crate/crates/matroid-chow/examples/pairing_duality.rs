//! Dual elements, the triangular pairing, and Poincare duality.
//!
//! ```bash
//! cargo run -p matroid-chow --example pairing_duality
//! ```

use matroid_chow::matroid::MatroidLattice;
use matroid_chow::pairing::{delta, dual_element, essential_flats, pairing_matrix, x_element};
use matroid_chow::ring::{enumerate_standard_monomials, RingContext};

fn main() {
    let b3 = MatroidLattice::boolean(3).unwrap();
    let aug = RingContext::augmented(b3.clone());

    // x_G elements: alternating sums over joins with outside atoms
    println!(
        "x at the bottom flat: {}",
        x_element(&aug, b3.bottom()).unwrap()
    );
    let a = b3.atoms()[0];
    println!("x at an atom:         {}", x_element(&aug, a).unwrap());

    // each standard monomial owns a chain of essential flats and a dual
    // element d(m), the product of the matching x_G
    println!("\nstandard monomials of degree 1 with their duals:");
    for m in enumerate_standard_monomials(&aug, 1) {
        let ess = essential_flats(&aug, &m).unwrap();
        println!(
            "  m = {m}: delta {:?}, essential flats {:?}, d(m) has {} terms",
            delta(&b3, &m).0,
            ess.flats,
            dual_element(&aug, &m).unwrap().num_terms()
        );
    }

    // the pairing deg(m * d(m')) is lower triangular with unit diagonal in
    // the delta-refining order, and the complementary-degree pairing of
    // standard monomials has determinant +-1
    for k in 0..=3 {
        let rep = pairing_matrix(&aug, k, true).unwrap();
        println!(
            "\ndegree {k}: {} monomials, triangular-unit {}, full pairing det {:?}",
            rep.rows.len(),
            rep.lower_triangular_unit,
            rep.full_pairing_det
        );
        for (row, m) in rep.matrix.iter().zip(&rep.rows) {
            println!("  {row:?}  {m}");
        }
    }
}
