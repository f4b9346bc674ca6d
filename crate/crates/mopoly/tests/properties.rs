//! Randomized law suites (100 seeded cases each) plus proptest invariants.

use std::collections::BTreeMap;

use mopoly::geometry;
use mopoly::marked::MarkedPoset;
use mopoly::oracle;
use mopoly::partition;
use mopoly::rational::{rat, Rat};
use mopoly::sampling;
use mopoly::RationalPoint;
use rand::Rng;

const CASES: usize = 100;

/// Prop 2.4: O(P,λ) is never empty for an order-preserving marking.
#[test]
fn non_emptiness() {
    let mut rng = sampling::rng(11);
    for _ in 0..CASES {
        let n = rng.gen_range(1..=7);
        let m = sampling::random_marked_poset(&mut rng, n, &[0, 1, 2]);
        let x = geometry::generic_point(&m);
        assert!(geometry::membership(&m, &x));
        assert!(oracle::lp_feasible(&geometry::h_representation(&m), &[]).is_some());
    }
}

/// Strict markings admit strictly order-preserving generic points.
#[test]
fn strict_generic_points() {
    let mut rng = sampling::rng(12);
    for _ in 0..CASES {
        let n = rng.gen_range(1..=7);
        let m = sampling::random_strict_marked_poset(&mut rng, n);
        let x = geometry::generic_point(&m);
        for &(p, q) in m.poset().covers() {
            assert!(x.coord(p) < x.coord(q));
        }
        // Strictness is certified by the oracle as well: every defining
        // inequality can be made slack at once.
        let h = geometry::h_representation(&m);
        let strict: Vec<usize> = (0..h.inequalities.len()).collect();
        assert!(oracle::lp_feasible(&h, &strict).is_some());
    }
}

/// Summand points combine into the decomposed polyhedron:
/// Σ cᵢ O(P,λᵢ) ⊆ O(P,λ) for nonnegative markings.
#[test]
fn minkowski_containment() {
    let mut rng = sampling::rng(13);
    for _ in 0..CASES {
        let n = rng.gen_range(1..=7);
        let m = shift_nonnegative(&sampling::random_strict_marked_poset(&mut rng, n));
        let summands = geometry::minkowski_markings(&m).unwrap();
        let mut combined = vec![Rat::from_integer(0.into()); m.len()];
        for s in &summands {
            let x = geometry::generic_point(&s.marked_poset);
            for (c, v) in combined.iter_mut().zip(x.coords()) {
                *c += &s.coefficient * v;
            }
        }
        assert!(geometry::membership(&m, &RationalPoint::from_coords(combined)));
    }
}

/// O(P ⊔ Q) = O(P) × O(Q): dimensions add and vertex counts multiply.
#[test]
fn product_law() {
    let mut rng = sampling::rng(14);
    for _ in 0..CASES {
        let na = rng.gen_range(1..=5);
        let a = sampling::random_strict_marked_poset(&mut rng, na);
        let nb = rng.gen_range(1..=5);
        let b = renamed(&sampling::random_strict_marked_poset(&mut rng, nb));
        let ab = geometry::disjoint_union(&a, &b).unwrap();
        assert_eq!(
            geometry::dimension(&ab),
            geometry::dimension(&a) + geometry::dimension(&b)
        );
        let va = geometry::vertices(&a).unwrap().len();
        let vb = geometry::vertices(&b).unwrap().len();
        assert_eq!(geometry::vertices(&ab).unwrap().len(), va * vb);
    }
}

/// The recession cone of O(P,λ) is O(P,0): identical ray sets, apex at 0.
#[test]
fn recession_cone_law() {
    let mut rng = sampling::rng(15);
    for _ in 0..CASES {
        let n = rng.gen_range(1..=6);
        let m = sampling::random_strict_marked_poset(&mut rng, n);
        let rep = oracle::enumerate_vertices_and_rays(&geometry::h_representation(&m));
        let cone = geometry::recession_cone(&m);
        let cone_rep = oracle::enumerate_vertices_and_rays(&geometry::h_representation(&cone));
        assert_eq!(rep.rays, cone_rep.rays);
        assert_eq!(cone_rep.vertices, vec![vec![Rat::from_integer(0.into()); m.len()]]);
        assert!(cone_rep.pointed);
    }
}

/// Pulling back along a quotient map is injective into the source polyhedron.
#[test]
fn pull_back_injectivity() {
    let mut rng = sampling::rng(16);
    for _ in 0..CASES {
        let n = rng.gen_range(2..=6);
        let m = sampling::random_strict_marked_poset(&mut rng, n);
        let lattice = partition::enumerate_face_partitions(&m).unwrap();
        let pi = &lattice.nodes[rng.gen_range(0..lattice.len())];
        let (quot, map) = m.quotient(pi).unwrap();
        let x1 = geometry::generic_point(&quot);
        let x2 = geometry::construct_vertex(&quot).unwrap();
        let y1 = map.pull_back_point(&x1).unwrap();
        let y2 = map.pull_back_point(&x2).unwrap();
        assert!(geometry::membership(&m, &y1));
        assert!(geometry::membership(&m, &y2));
        assert_eq!(x1 == x2, y1 == y2);
    }
}

fn shift_nonnegative(m: &MarkedPoset) -> MarkedPoset {
    let min = m.marking().values().min().cloned().unwrap();
    let shift = if min < rat(0) { -min } else { rat(0) };
    let marking: BTreeMap<usize, Rat> = m
        .marking()
        .iter()
        .map(|(&a, v)| (a, v + &shift))
        .collect();
    m.with_marking(marking).unwrap()
}

fn renamed(m: &MarkedPoset) -> MarkedPoset {
    let elements: Vec<String> = m.poset().elements().iter().map(|e| format!("{e}b")).collect();
    let relations: Vec<(String, String)> = m
        .poset()
        .cover_names()
        .into_iter()
        .map(|(a, b)| (format!("{a}b"), format!("{b}b")))
        .collect();
    let marking: BTreeMap<String, Rat> = m
        .marking_by_name()
        .into_iter()
        .map(|(k, v)| (format!("{k}b"), v))
        .collect();
    MarkedPoset::new(mopoly::Poset::build(&elements, &relations).unwrap(), &marking).unwrap()
}

mod proptests {
    use mopoly::{document, geometry, partition, sampling};
    use proptest::prelude::*;
    use rand::Rng;

    proptest! {
        /// parse ∘ serialize is the identity on canonical documents.
        #[test]
        fn document_round_trip(seed in any::<u64>()) {
            let mut rng = sampling::rng(seed);
            let n = rng.gen_range(1..=7);
            let m = sampling::random_marked_poset(&mut rng, n, &[0, 1, 2, 3]);
            let text = document::serialize_document(&m, None);
            let (parsed, conditions) = document::parse_document(&text).unwrap();
            prop_assert_eq!(&parsed, &m);
            prop_assert!(conditions.is_none());
            prop_assert_eq!(document::serialize_document(&parsed, None), text);
        }

        /// Face partitions are closed under the face predicate and their
        /// dimensions are the free-block counts; the point partition of a
        /// face's generic interior is the partition itself.
        #[test]
        fn face_partition_invariants(seed in any::<u64>()) {
            let mut rng = sampling::rng(seed);
            let n = rng.gen_range(1..=6);
            let m = sampling::random_marked_poset(&mut rng, n, &[0, 1]);
            let lattice = partition::enumerate_face_partitions(&m).unwrap();
            for (pi, &d) in lattice.nodes.iter().zip(&lattice.dims) {
                prop_assert!(partition::is_face_partition(&m, pi));
                prop_assert_eq!(geometry::face_dimension(&m, pi).unwrap(), d);
            }
            // Refinement is a partial order with the point's partition below.
            let x = geometry::generic_point(&m);
            let pix = partition::partition_from_point(&m, &x).unwrap();
            prop_assert!(lattice.nodes.contains(&pix));
            for pi in &lattice.nodes {
                prop_assert!(pix.refines(pi) || !pi.refines(&pix) || pi == &pix);
            }
        }
    }
}
