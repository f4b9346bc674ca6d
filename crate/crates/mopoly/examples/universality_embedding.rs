//! Every rational polyhedron is affinely isomorphic to a conditional marked
//! order polyhedron: embed the unit square and recover its corners.

use mopoly::conditional;
use mopoly::oracle;
use mopoly::rational::{format_rat, rat};

fn main() {
    // 0 ≤ x1 ≤ 1, 0 ≤ x2 ≤ 1 as coeffs·x ≥ rhs rows.
    let ineqs = vec![
        (vec![rat(1), rat(0)], rat(0)),
        (vec![rat(0), rat(1)], rat(0)),
        (vec![rat(-1), rat(0)], rat(-1)),
        (vec![rat(0), rat(-1)], rat(-1)),
    ];
    let (m, s, projection) = conditional::embed_polyhedron(&ineqs, &[], 2).unwrap();
    println!("embedding poset: {:?}", m.poset().elements());
    println!("covers: {:?}", m.poset().cover_names());
    let h = conditional::conditional_h_representation(&m, &s);
    let rep = oracle::enumerate_vertices_and_rays(&h);
    println!("projected vertices:");
    for v in &rep.vertices {
        let coords: Vec<String> = projection.iter().map(|&i| format_rat(&v[i])).collect();
        println!("  ({})", coords.join(", "));
    }
}
