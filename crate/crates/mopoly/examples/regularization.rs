//! A redundant covering relation: the diagnostics report, the witness pair
//! and the regularized poset whose covers biject with facets.

use mopoly::document;

fn main() {
    let text = include_str!("data/fig3.mop");
    let (m, _) = document::parse_document(text).unwrap();
    let report = m.regularity_report();
    println!("marking strict: {}", report.marking_strict);
    println!("no marked covers: {}", report.no_marked_covers);
    println!("single marked neighbors: {}", report.single_marked_neighbors);
    println!("regular: {}", report.is_regular);
    for ((p, q), (a, b)) in &report.redundant_covers {
        println!("cover {p}<{q} is redundant: {a} ≤ {q} and {p} ≤ {b} with λ({a}) ≥ λ({b})");
    }
    let (regular, removed) = m.regularize().unwrap();
    println!("removed: {removed:?}");
    println!(
        "remaining covers (one facet each): {:?}",
        regular.poset().cover_names()
    );
}
