//! Build lattices of flats and take minors.
//!
//! ```bash
//! cargo run -p matroid-chow --example lattices
//! ```

use matroid_chow::matroid::MatroidLattice;

fn main() {
    let b3 = MatroidLattice::boolean(3).unwrap();
    println!(
        "Boolean matroid of rank 3: {} flats, {} atoms",
        b3.size(),
        b3.atoms().len()
    );
    for f in b3.flats() {
        println!(
            "  flat {f}: rank {}, ground {:?}",
            b3.rank(f),
            b3.label(f).unwrap()
        );
    }

    let u23 = MatroidLattice::uniform(2, 3).unwrap();
    println!("\nU_{{2,3}}: {} flats, rank {}", u23.size(), u23.rank_top());

    // the triangle graph carries the same lattice
    let k3 = MatroidLattice::graphic(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    println!("graphic K_3: {} flats, rank {}", k3.size(), k3.rank_top());

    // minors: restriction to a flat, contraction at a flat, truncation
    let f = b3.flats().find(|&f| b3.rank(f) == 2).unwrap();
    let restriction = b3.restriction(f);
    println!(
        "\nrestriction of B_3 to a rank-2 flat: {} flats (a copy of B_2)",
        restriction.matroid.size()
    );
    let contraction = b3.contraction(b3.atoms()[0]);
    println!(
        "contraction of B_3 at an atom: {} flats, rank {}",
        contraction.matroid.size(),
        contraction.matroid.rank_top()
    );
    let truncation = b3.truncation().unwrap();
    println!(
        "truncation of B_3: {} flats, rank {} (the lattice of U_{{2,3}})",
        truncation.matroid.size(),
        truncation.matroid.rank_top()
    );
}
