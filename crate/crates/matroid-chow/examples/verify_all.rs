//! Run the whole verification suite over a family of matroids.
//!
//! ```bash
//! cargo run --release -p matroid-chow --example verify_all
//! ```

use matroid_chow::decomposition::{
    verify_flat_grading, verify_hilbert_recursion, verify_mobius_embedding,
};
use matroid_chow::matroid::MatroidLattice;
use matroid_chow::pairing::{verify_theorems, VerifyOptions};
use matroid_chow::ring::{RingContext, RingMode};

fn main() {
    let opts = VerifyOptions::default();
    let matroids = vec![
        ("B_2", MatroidLattice::boolean(2).unwrap()),
        ("B_3", MatroidLattice::boolean(3).unwrap()),
        ("B_4", MatroidLattice::boolean(4).unwrap()),
        ("U_{2,4}", MatroidLattice::uniform(2, 4).unwrap()),
        ("U_{3,5}", MatroidLattice::uniform(3, 5).unwrap()),
        (
            "M(K_4)",
            MatroidLattice::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
        ),
    ];

    let mut all = true;
    for (name, m) in matroids {
        println!("== {name} ==");
        for mode in [RingMode::Augmented, RingMode::Reduced] {
            let ctx = RingContext::for_mode(m.clone(), mode);
            let rep = verify_theorems(&ctx, &opts);
            all &= rep.all_passed();
            print!("{}", rep.render_text());
        }
        let aug = RingContext::augmented(m.clone());
        for rep in [
            verify_flat_grading(&aug).unwrap(),
            verify_mobius_embedding(&aug).unwrap(),
            verify_hilbert_recursion(&m).unwrap(),
        ] {
            all &= rep.all_passed();
            print!("{}", rep.render_text());
        }
        println!();
    }
    println!(
        "overall: {}",
        if all {
            "all checks passed"
        } else {
            "FAILURES PRESENT"
        }
    );
    std::process::exit(if all { 0 } else { 2 });
}
