//! The weighted decomposition of a marked order polyhedron into 0-1 marked
//! summands, verified geometrically against the oracle.

use mopoly::document;
use mopoly::geometry;
use mopoly::rational::format_rat;

fn main() {
    let text = include_str!("data/pentagon.mop");
    let (m, _) = document::parse_document(text).unwrap();
    let summands = geometry::minkowski_markings(&m).unwrap();
    println!("O(P,λ) = Σ cᵢ · O(P,λᵢ) with:");
    for s in &summands {
        let marks = s
            .marking()
            .iter()
            .map(|(k, v)| format!("{k}={}", format_rat(v)))
            .collect::<Vec<_>>()
            .join(" ");
        println!("  c = {}, λᵢ: {marks}", format_rat(&s.coefficient));
    }
    println!(
        "vertex sums reproduce the polyhedron exactly: {}",
        geometry::minkowski_sum_check(&m).unwrap()
    );
}
