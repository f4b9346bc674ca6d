//! The central consistency check: for random marked posets, the
//! combinatorial face partitions must coincide with the faces found by the
//! independent geometric oracle.

use mopoly::geometry::{self, RationalPoint};
use mopoly::oracle;
use mopoly::partition;
use mopoly::sampling;

fn main() {
    let mut rng = sampling::rng(2024);
    for case in 0..10 {
        let m = sampling::random_marked_poset(&mut rng, 5, &[0, 1, 2]);
        let h = geometry::h_representation(&m);
        let mut combinatorial = partition::enumerate_face_partitions(&m)
            .unwrap()
            .encodings(m.poset());
        combinatorial.sort();
        let mut geometric: Vec<String> = oracle::enumerate_faces(&h)
            .unwrap()
            .iter()
            .map(|f| {
                let witness = RationalPoint::from_coords(f.witness.clone());
                partition::partition_from_point(&m, &witness)
                    .unwrap()
                    .canonical_encoding(m.poset())
            })
            .collect();
        geometric.sort();
        geometric.dedup();
        assert_eq!(combinatorial, geometric);
        println!(
            "case {case}: {} faces agree on both routes",
            combinatorial.len()
        );
    }
}
