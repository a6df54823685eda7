//! Prints, for every tiling, the coloring number and what the search found
//! there: admissible subgroups, schemes, classes and the period lattice.
//!
//! `cargo run --release -p tilecolor --example survey`

use std::collections::BTreeSet;
use std::time::Instant;

use tilecolor::catalog::load_all;
use tilecolor::chroma::{admissible_subgroups, coloring_number, enumerate_classes, enumerate_schemes};

fn main() {
    println!("{:<10} {:>3} {:>4} {:>8} {:>8}  {:<18} {:>8}", "tiling", "n", "J", "schemes", "classes", "cell", "time");
    for spec in load_all().expect("catalog loads") {
        let start = Instant::now();
        let n = coloring_number(&spec).expect("within the bound");
        let j = admissible_subgroups(&spec, n).unwrap().len();
        let schemes = enumerate_schemes(&spec, n).unwrap().len();
        let classes = enumerate_classes(&spec, n).unwrap();
        let cells: BTreeSet<String> = classes.iter().map(|c| format!("{:?}", c.fingerprint.cell.rows)).collect();
        println!(
            "{:<10} {:>3} {:>4} {:>8} {:>8}  {:<18} {:>8.2?}",
            spec.name,
            n,
            j,
            schemes,
            classes.len(),
            cells.into_iter().collect::<Vec<_>>().join(" "),
            start.elapsed()
        );
    }
}
