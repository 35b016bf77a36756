//! Hilbert series of both Chow rings, and the recursion through truncated
//! restrictions.
//!
//! ```bash
//! cargo run -p matroid-chow --example hilbert
//! ```

use matroid_chow::decomposition::verify_hilbert_recursion;
use matroid_chow::matroid::MatroidLattice;
use matroid_chow::ring::{hilbert_series, RingContext};

fn main() {
    for n in 1..=6 {
        let b = MatroidLattice::boolean(n).unwrap();
        let aug = hilbert_series(&RingContext::augmented(b.clone())).unwrap();
        let red = hilbert_series(&RingContext::reduced(b)).unwrap();
        println!("B_{n}: augmented {aug:?}, reduced {red:?}");
    }

    let k4 = MatroidLattice::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    println!(
        "\nK_4: augmented {:?}, reduced {:?}",
        hilbert_series(&RingContext::augmented(k4.clone())).unwrap(),
        hilbert_series(&RingContext::reduced(k4.clone())).unwrap()
    );

    // the series satisfy a recursion over truncated restrictions
    let report = verify_hilbert_recursion(&k4).unwrap();
    print!("{}", report.render_text());
}
