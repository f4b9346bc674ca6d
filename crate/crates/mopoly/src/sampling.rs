//! Seeded random marked posets for cross-validation. All samplers are
//! deterministic functions of the supplied RNG, so a seed pins down the
//! whole test universe.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::marked::MarkedPoset;
use crate::poset::Poset;
use crate::rational::{rat, Rat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random poset on `n` elements e0 … e{n−1}: each pair (i, j) with i < j is
/// related with the given probability, so the result is acyclic by
/// construction.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, edge_probability: f64) -> Poset {
    let elements: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_probability) {
                relations.push((elements[i].clone(), elements[j].clone()));
            }
        }
    }
    Poset::build(&elements, &relations).expect("i < j relations cannot form a cycle")
}

fn random_marked_set<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut marked: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if marked.is_empty() && n > 0 {
        marked.push(rng.gen_range(0..n));
    }
    marked
}

/// A random marked poset whose marks are drawn from `values` (few distinct
/// values make constant intervals and coarse face partitions likely). The
/// marking is order-preserving because a non-decreasing value sequence is
/// assigned along a linear extension.
pub fn random_marked_poset<R: Rng>(rng: &mut R, n: usize, values: &[i64]) -> MarkedPoset {
    let poset = random_poset(rng, n, 0.35);
    let marked = random_marked_set(rng, n);
    let mut draws: Vec<i64> = (0..marked.len())
        .map(|_| values[rng.gen_range(0..values.len())])
        .collect();
    draws.sort_unstable();
    let mut marking: BTreeMap<String, Rat> = BTreeMap::new();
    let mut next = 0;
    for p in poset.topological_order() {
        if marked.contains(&p) {
            marking.insert(poset.element(p).to_string(), rat(draws[next]));
            next += 1;
        }
    }
    MarkedPoset::new(poset, &marking).expect("monotone assignment is order-preserving")
}

/// A random strictly marked poset that is also pointed: every Hasse component
/// gets at least one mark, and values strictly increase along a linear
/// extension.
pub fn random_strict_marked_poset<R: Rng>(rng: &mut R, n: usize) -> MarkedPoset {
    let poset = random_poset(rng, n, 0.35);
    let mut marked = random_marked_set(rng, n);
    let comp = poset.component_ids();
    for c in 0..=comp.iter().copied().max().unwrap_or(0) {
        if !marked.iter().any(|&p| comp[p] == c) {
            let members: Vec<usize> = (0..n).filter(|&p| comp[p] == c).collect();
            marked.push(members[rng.gen_range(0..members.len())]);
        }
    }
    let mut marking: BTreeMap<String, Rat> = BTreeMap::new();
    let mut value: i64 = rng.gen_range(-3..3);
    for p in poset.topological_order() {
        if marked.contains(&p) {
            marking.insert(poset.element(p).to_string(), rat(value));
            value += rng.gen_range(1..4);
        }
    }
    MarkedPoset::new(poset, &marking).expect("increasing assignment is order-preserving")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry;

    #[test]
    fn samplers_are_deterministic() {
        let a = random_marked_poset(&mut rng(7), 6, &[0, 1, 2]);
        let b = random_marked_poset(&mut rng(7), 6, &[0, 1, 2]);
        assert_eq!(a, b);
    }

    #[test]
    fn strict_sampler_is_strict_and_pointed() {
        let mut r = rng(42);
        for _ in 0..50 {
            let n = r.gen_range(1..=7);
            let m = random_strict_marked_poset(&mut r, n);
            assert!(m.is_strict());
            assert!(geometry::is_pointed(&m));
        }
    }
}
