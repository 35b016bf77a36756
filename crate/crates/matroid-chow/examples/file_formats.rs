//! The JSON document formats: flats files, graph files, builtins, and
//! poset files.
//!
//! ```bash
//! cargo run -p matroid-chow --example file_formats
//! ```

use matroid_chow::io::{matroid_from_json, matroid_to_flats_json, poset_from_json};

fn main() {
    // a flats document: ranks are inferred from chain lengths
    let doc = r#"{"format":"flats","ground_set":3,
        "flats":[[],[0],[1],[2],[0,1,2]]}"#;
    let m = matroid_from_json(doc).unwrap();
    println!("flats document: rank {}, {} flats", m.rank_top(), m.size());

    // round-trip through the writer
    let out = matroid_to_flats_json(&m).unwrap();
    println!("serialized: {out}");
    assert_eq!(matroid_from_json(&out).unwrap().size(), m.size());

    // graphs and builtins
    let m = matroid_from_json(
        r#"{"format":"graph","vertices":4,
        "edges":[[0,1],[1,2],[2,3],[3,0],[0,2],[1,3]]}"#,
    )
    .unwrap();
    println!(
        "\nK_4 graph document: rank {}, {} flats",
        m.rank_top(),
        m.size()
    );
    let m = matroid_from_json(r#"{"format":"builtin","name":"uniform","params":[2,4]}"#).unwrap();
    println!(
        "builtin document:   rank {}, {} flats",
        m.rank_top(),
        m.size()
    );

    // validation failures carry a mathematical witness
    let bad = r#"{"format":"flats","ground_set":4,
        "flats":[[],[0],[1],[2],[3],[0,1],[2,3],[0,1,2,3]]}"#;
    println!(
        "\ncorrupted flats file: {}",
        matroid_from_json(bad).unwrap_err()
    );

    // poset documents list covering pairs
    let p = poset_from_json(r#"{"size":4,"covers":[[0,1],[0,2],[1,3],[2,3]]}"#).unwrap();
    println!(
        "\nposet document: {} elements, f-vector {:?}",
        p.size(),
        p.chain_f_vector().f_vector
    );
}
