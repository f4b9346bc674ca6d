//! Partitions of a marked poset's ground set, the combinatorial face-partition
//! predicate and face-lattice enumeration.
//!
//! A partition π is a face partition iff it is (P,λ)-compatible, connected and
//! the induced marking on the quotient is strict. Faces of the marked order
//! polyhedron ordered by inclusion correspond to face partitions ordered by
//! refinement, and the dimension of a face is the number of free blocks of its
//! partition.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::geometry::{self, RationalPoint};
use crate::marked::MarkedPoset;
use crate::poset::Poset;

/// Default ground-set bound for face-lattice enumeration (Bell-number growth).
pub const DEFAULT_MAX_ELEMENTS: usize = 12;

/// A set partition of {0, …, n−1}. Blocks are sorted internally and listed by
/// smallest member, so equal partitions compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn singletons(n: usize) -> Partition {
        Partition {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Partition> {
        let mut seen = vec![false; n];
        let mut sorted: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return Err(Error::NotCompatible);
            }
            block.sort_unstable();
            for &p in &block {
                if p >= n || seen[p] {
                    return Err(Error::NotCompatible);
                }
                seen[p] = true;
            }
            sorted.push(block);
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::NotCompatible);
        }
        sorted.sort();
        Ok(Partition { n, blocks: sorted })
    }

    /// Builds a partition from blocks of element names on a poset.
    pub fn from_name_blocks<S: AsRef<str>>(poset: &Poset, blocks: &[&[S]]) -> Result<Partition> {
        let mut out = Vec::new();
        for block in blocks {
            let mut ids = Vec::new();
            for name in block.iter() {
                ids.push(poset.index_of(name.as_ref())?);
            }
            out.push(ids);
        }
        Partition::from_blocks(poset.len(), out)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, p: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&p).is_ok())
            .expect("element outside ground set")
    }

    pub fn merge_blocks(&self, bi: usize, bj: usize) -> Partition {
        assert_ne!(bi, bj);
        let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(self.blocks.len() - 1);
        let mut merged = self.blocks[bi].clone();
        merged.extend_from_slice(&self.blocks[bj]);
        merged.sort_unstable();
        for (k, block) in self.blocks.iter().enumerate() {
            if k != bi && k != bj {
                blocks.push(block.clone());
            }
        }
        blocks.push(merged);
        blocks.sort();
        Partition { n: self.n, blocks }
    }

    /// True iff every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        assert_eq!(self.n, other.n);
        self.blocks.iter().all(|block| {
            let target = other.block_of(block[0]);
            block
                .iter()
                .all(|&p| other.blocks[target].binary_search(&p).is_ok())
        })
    }

    /// Per-block free flags: a block is free iff it contains no marked element.
    pub fn free_flags(&self, m: &MarkedPoset) -> Vec<bool> {
        self.blocks
            .iter()
            .map(|block| block.iter().all(|&p| !m.is_marked(p)))
            .collect()
    }

    pub fn free_block_count(&self, m: &MarkedPoset) -> usize {
        self.free_flags(m).iter().filter(|&&f| f).count()
    }

    /// Sorted blocks of sorted element identifiers, e.g. "m0+p | q | m1".
    pub fn canonical_encoding(&self, poset: &Poset) -> String {
        self.block_names(poset).join(" | ")
    }

    pub fn block_names(&self, poset: &Poset) -> Vec<String> {
        self.blocks
            .iter()
            .map(|block| {
                let mut names: Vec<&str> = block.iter().map(|&p| poset.element(p)).collect();
                names.sort_unstable();
                names.join("+")
            })
            .collect()
    }
}

/// π_x: the transitive closure of p ∼ q when x_p = x_q and p, q comparable;
/// equivalently blocks of constant values split into Hasse components.
pub fn partition_from_point(m: &MarkedPoset, x: &RationalPoint) -> Result<Partition> {
    if !geometry::membership(m, x) {
        return Err(Error::NotInPolyhedron);
    }
    let mut uf = crate::marked::UnionFind::new(m.len());
    for &(p, q) in m.poset().covers() {
        if x.coord(p) == x.coord(q) {
            uf.union(p, q);
        }
    }
    Ok(uf.partition())
}

/// Every block connected as an induced subposet (comparability graph).
pub fn is_connected_partition(m: &MarkedPoset, pi: &Partition) -> bool {
    let poset = m.poset();
    pi.blocks().iter().all(|block| {
        if block.len() <= 1 {
            return true;
        }
        let mut reached = vec![false; block.len()];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..block.len() {
                if !reached[j]
                    && (poset.leq(block[i], block[j]) || poset.leq(block[j], block[i]))
                {
                    reached[j] = true;
                    stack.push(j);
                }
            }
        }
        reached.iter().all(|&r| r)
    })
}

/// Reflexive-transitive closure of the induced relation on blocks.
fn block_closure(m: &MarkedPoset, pi: &Partition) -> Vec<Vec<bool>> {
    let k = pi.block_count();
    let mut leq = vec![vec![false; k]; k];
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for (bi, block) in pi.blocks().iter().enumerate() {
        for (bj, other) in pi.blocks().iter().enumerate() {
            if bi != bj
                && block
                    .iter()
                    .any(|&p| other.iter().any(|&q| m.poset().leq(p, q)))
            {
                leq[bi][bj] = true;
            }
        }
    }
    for c in 0..k {
        for a in 0..k {
            if leq[a][c] {
                for b in 0..k {
                    if leq[c][b] {
                        leq[a][b] = true;
                    }
                }
            }
        }
    }
    leq
}

/// The induced block relation is antisymmetric.
pub fn is_p_compatible(m: &MarkedPoset, pi: &Partition) -> bool {
    let leq = block_closure(m, pi);
    let k = pi.block_count();
    (0..k).all(|i| (0..k).all(|j| i == j || !(leq[i][j] && leq[j][i])))
}

/// (P,λ)-compatibility: antisymmetric block relation and λ(a) ≤ λ(b) across
/// related non-free blocks (in particular equal marks within a block).
pub fn is_pl_compatible(m: &MarkedPoset, pi: &Partition) -> bool {
    if !is_p_compatible(m, pi) {
        return false;
    }
    let leq = block_closure(m, pi);
    for (bi, block) in pi.blocks().iter().enumerate() {
        for (bj, other) in pi.blocks().iter().enumerate() {
            if !leq[bi][bj] {
                continue;
            }
            for &p in block {
                for &q in other {
                    if let (Some(va), Some(vb)) = (m.mark(p), m.mark(q)) {
                        if va > vb {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// The full face-partition predicate: (P,λ)-compatible, connected, and the
/// induced marking on the quotient is strict.
pub fn is_face_partition(m: &MarkedPoset, pi: &Partition) -> bool {
    if !is_pl_compatible(m, pi) || !is_connected_partition(m, pi) {
        return false;
    }
    // Strictness of λ/π without building the quotient: distinct related
    // non-free blocks must carry strictly increasing marks.
    let leq = block_closure(m, pi);
    let flags = pi.free_flags(m);
    let mark_of = |bi: usize| {
        pi.blocks()[bi]
            .iter()
            .find_map(|&p| m.mark(p))
            .expect("non-free block has a marked element")
    };
    for bi in 0..pi.block_count() {
        for bj in 0..pi.block_count() {
            if bi != bj && leq[bi][bj] && !flags[bi] && !flags[bj] && mark_of(bi) >= mark_of(bj) {
                return false;
            }
        }
    }
    true
}

/// The face lattice of O(P,λ): all face partitions ordered by refinement.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub nodes: Vec<Partition>,
    /// (i, j) whenever nodes[i] refines nodes[j], i ≠ j.
    pub refines: Vec<(usize, usize)>,
    /// Free-block count per node (the dimension of the face).
    pub dims: Vec<usize>,
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Face counts by dimension, index d = number of d-faces.
    pub fn f_vector(&self) -> Vec<usize> {
        let max = self.dims.iter().copied().max().unwrap_or(0);
        let mut f = vec![0; max + 1];
        for &d in &self.dims {
            f[d] += 1;
        }
        f
    }

    pub fn encodings(&self, poset: &Poset) -> Vec<String> {
        self.nodes
            .iter()
            .map(|pi| pi.canonical_encoding(poset))
            .collect()
    }
}

pub fn enumerate_face_partitions(m: &MarkedPoset) -> Result<FaceLattice> {
    enumerate_face_partitions_bounded(m, DEFAULT_MAX_ELEMENTS)
}

/// Depth-first coarsening from the all-singletons partition, merging only
/// Hasse-adjacent blocks, memoized by the canonical block structure. Every
/// face partition has Hasse-connected blocks, so each one is reached by a
/// chain of such merges.
pub fn enumerate_face_partitions_bounded(m: &MarkedPoset, max_elements: usize) -> Result<FaceLattice> {
    let n = m.len();
    if n > max_elements {
        return Err(Error::SizeLimit {
            actual: n,
            limit: max_elements,
        });
    }
    let mut visited: HashSet<Partition> = HashSet::new();
    let mut faces: Vec<Partition> = Vec::new();
    let mut stack = vec![Partition::singletons(n)];
    visited.insert(Partition::singletons(n));
    while let Some(pi) = stack.pop() {
        if is_face_partition(m, &pi) {
            faces.push(pi.clone());
        }
        for &(p, q) in m.poset().covers() {
            let (bp, bq) = (pi.block_of(p), pi.block_of(q));
            if bp != bq {
                let merged = pi.merge_blocks(bp, bq);
                if visited.insert(merged.clone()) {
                    stack.push(merged);
                }
            }
        }
    }
    faces.sort_by_key(|pi| (pi.free_block_count(m), pi.canonical_encoding(m.poset())));
    let dims: Vec<usize> = faces.iter().map(|pi| pi.free_block_count(m)).collect();
    let mut refines = Vec::new();
    for (i, a) in faces.iter().enumerate() {
        for (j, b) in faces.iter().enumerate() {
            if i != j && a.refines(b) {
                refines.push((i, j));
            }
        }
    }
    Ok(FaceLattice {
        nodes: faces,
        refines,
        dims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{self, pentagon};
    use crate::marked::MarkedPoset;
    use crate::rational::rat;

    #[test]
    fn partition_of_a_vertex_point() {
        let m = pentagon();
        // The vertex (x_p, x_q) = (0, 1).
        let x = RationalPoint::from_coords(
            [0, 0, 1, 4, 1, 3].iter().map(|&n| rat(n)).collect(),
        );
        let pi = partition_from_point(&m, &x).unwrap();
        assert_eq!(pi.canonical_encoding(m.poset()), "m0+p | m1+q | m4 | m3");
        assert_eq!(pi.free_block_count(&m), 0);
        assert!(is_face_partition(&m, &pi));
        let outside = RationalPoint::from_coords(vec![rat(9); 6]);
        assert!(matches!(
            partition_from_point(&m, &outside),
            Err(Error::NotInPolyhedron)
        ));
    }

    #[test]
    fn refinement_order() {
        let m = pentagon();
        let fine = Partition::singletons(6);
        let coarse = Partition::from_name_blocks(m.poset(), &[&["m0", "p"], &["q"], &["m4"], &["m1"], &["m3"]]).unwrap();
        assert!(fine.refines(&coarse));
        assert!(!coarse.refines(&fine));
        assert!(coarse.refines(&coarse));
    }

    #[test]
    fn fig3_pseudo_face_block() {
        // Merging the free chain p, q is connected and antisymmetric, yet the
        // closure m2-block ≤ {p,q} ≤ m1-block would force λ(m2) ≤ λ(m1),
        // i.e. 2 ≤ 1 — so the partition is not even (P,λ)-compatible here.
        let m = MarkedPoset::from_parts(
            &["m0", "p", "q", "m3", "m2", "m1"],
            &[("m0", "p"), ("p", "q"), ("q", "m3"), ("m2", "q"), ("p", "m1")],
            &[("m0", 0, 1), ("m2", 2, 1), ("m1", 1, 1), ("m3", 3, 1)],
        )
        .unwrap();
        let pi = Partition::from_name_blocks(
            m.poset(),
            &[&["p", "q"], &["m0"], &["m3"], &["m2"], &["m1"]],
        )
        .unwrap();
        assert!(is_connected_partition(&m, &pi));
        assert!(is_p_compatible(&m, &pi));
        assert!(!is_pl_compatible(&m, &pi));
        assert!(!is_face_partition(&m, &pi));
    }

    #[test]
    fn pentagon_face_lattice() {
        let m = pentagon();
        let lattice = enumerate_face_partitions(&m).unwrap();
        assert_eq!(lattice.len(), 11);
        assert_eq!(lattice.f_vector(), vec![5, 5, 1]);
        // The whole polytope is the all-singletons partition, refined by all.
        let top = lattice
            .nodes
            .iter()
            .position(|pi| *pi == Partition::singletons(6))
            .unwrap();
        assert_eq!(lattice.dims[top], 2);
        for (i, _) in lattice.nodes.iter().enumerate() {
            assert!(i == top || lattice.refines.contains(&(top, i)));
        }
    }

    #[test]
    fn trivial_and_oversized_instances() {
        let one = MarkedPoset::from_parts(&["a"], &[], &[("a", 0, 1)]).unwrap();
        let lattice = enumerate_face_partitions(&one).unwrap();
        assert_eq!(lattice.len(), 1);
        assert_eq!(lattice.dims, vec![0]);

        let names: Vec<String> = (0..13).map(|i| format!("e{i}")).collect();
        let big = MarkedPoset::from_parts(
            &names.iter().map(String::as_str).collect::<Vec<_>>(),
            &[],
            &[("e0", 0, 1)],
        )
        .unwrap();
        assert!(matches!(
            enumerate_face_partitions(&big),
            Err(Error::SizeLimit { actual: 13, limit: 12 })
        ));
        assert!(enumerate_face_partitions_bounded(&big, 13).is_ok());
    }

    #[test]
    fn non_strict_marking_coarsens_the_bottom_face() {
        // a < p < b with λ(a) = λ(b) = 1: the whole polyhedron is the single
        // point where everything collapses.
        let m = MarkedPoset::from_parts(
            &["a", "p", "b"],
            &[("a", "p"), ("p", "b")],
            &[("a", 1, 1), ("b", 1, 1)],
        )
        .unwrap();
        let lattice = enumerate_face_partitions(&m).unwrap();
        assert_eq!(lattice.len(), 1);
        assert_eq!(lattice.nodes[0].block_count(), 1);
        let x = geometry::generic_point(&m);
        assert_eq!(partition_from_point(&m, &x).unwrap(), lattice.nodes[0]);
    }
}
