//! Conditional polyhedra: the chain with two sum conditions is tiled by
//! faces of the unconditional polyhedron, and the dimension of the piece
//! through a point is the kernel dimension of its tiling map.

use std::collections::BTreeMap;

use mopoly::conditional;
use mopoly::document;
use mopoly::geometry::RationalPoint;
use mopoly::partition;
use mopoly::rational::{format_rat, parse_rat};

fn main() {
    let text = include_str!("data/example53.mop");
    let (m, s) = document::parse_document(text).unwrap();
    let s = s.unwrap();
    for coords in ["p=1,q=2,r=3,s=4", "p=3/2,q=5/2,r=5/2,s=7/2", "p=2,q=2,r=2,s=4"] {
        let assignment: BTreeMap<String, _> = coords
            .split(',')
            .map(|kv| {
                let (k, v) = kv.split_once('=').unwrap();
                (k.to_string(), parse_rat(v).unwrap())
            })
            .collect();
        let x = RationalPoint::on(&m, &assignment).unwrap();
        assert!(conditional::conditional_membership(&m, &s, &x));
        let pi = partition::partition_from_point(&m, &x).unwrap();
        let map = conditional::tiling_map(&m, &s, &pi).unwrap();
        println!("point {coords}:");
        println!(
            "  free blocks: {}",
            map.free_blocks
                .iter()
                .map(|b| b.join("+"))
                .collect::<Vec<_>>()
                .join(" | ")
        );
        for row in &map.entries {
            println!("  [{}]", row.iter().map(format_rat).collect::<Vec<_>>().join(" "));
        }
        println!("  kernel dimension = {}", map.kernel_dimension());
    }
}
