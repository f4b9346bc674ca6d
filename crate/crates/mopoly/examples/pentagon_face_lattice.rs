//! Enumerate the face lattice of the pentagon from its document and show
//! the partition ↔ face correspondence.

use mopoly::document;
use mopoly::partition;

fn main() {
    let text = include_str!("data/pentagon.mop");
    let (m, _) = document::parse_document(text).unwrap();
    let lattice = partition::enumerate_face_partitions(&m).unwrap();
    println!(
        "O(P,λ) of the pentagon has {} faces, f-vector {:?}",
        lattice.len(),
        lattice.f_vector()
    );
    for (pi, dim) in lattice.nodes.iter().zip(&lattice.dims) {
        println!("dim {dim}: {}", pi.canonical_encoding(m.poset()));
    }
    // Refinement encodes inclusion of faces: the minimal faces (vertices)
    // refine everything above them.
    let vertex_count = lattice
        .nodes
        .iter()
        .filter(|pi| pi.free_block_count(&m) == 0)
        .count();
    println!("{vertex_count} of them are vertices");
}
