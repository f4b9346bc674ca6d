//! Vertices of marked order polyhedra: the canonical constructed vertex,
//! the full vertex set, and how vertices move in the family Q_t while the
//! face lattice stays put.

use mopoly::geometry::{self, pentagon_with_t};
use mopoly::partition;
use mopoly::rational::{format_rat, ratio};

fn main() {
    for t in [ratio(0, 1), ratio(1, 2), ratio(1, 1)] {
        let m = pentagon_with_t(t.clone());
        let v = geometry::construct_vertex(&m).unwrap();
        println!(
            "Q_{}: constructed vertex ({})",
            format_rat(&t),
            v.coords().iter().map(format_rat).collect::<Vec<_>>().join(", ")
        );
        for vertex in geometry::vertices(&m).unwrap() {
            let p = m.poset().index_of("p").unwrap();
            let q = m.poset().index_of("q").unwrap();
            println!(
                "  vertex (x_p, x_q) = ({}, {})",
                format_rat(vertex.coord(p)),
                format_rat(vertex.coord(q))
            );
        }
        let faces = partition::enumerate_face_partitions(&m).unwrap().len();
        let lattice = geometry::is_lattice_polyhedron(&m).unwrap();
        println!("  {faces} faces, lattice polyhedron: {lattice}");
    }
}
