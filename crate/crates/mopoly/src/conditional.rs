//! Conditional marked order polyhedra: O(P,λ) intersected with affine
//! conditions s(x) = b, their tiling by faces of O(P,λ), and the embedding
//! showing every rational polyhedron arises this way.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::geometry::{self, HPolyhedron, RationalPoint};
use crate::marked::MarkedPoset;
use crate::partition::{self, Partition};
use crate::poset::Poset;
use crate::rational::{rat, Rat};

/// Affine conditions s(x) = b on the coordinates of a marked poset: `rows`
/// is the k × P coefficient matrix of s, `rhs` is b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConditions {
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
}

impl LinearConditions {
    /// Builds conditions from sparse named rows Σ coeff·element = rhs.
    pub fn new(m: &MarkedPoset, sparse: &[(Vec<(String, Rat)>, Rat)]) -> Result<LinearConditions> {
        let mut rows = Vec::with_capacity(sparse.len());
        let mut rhs = Vec::with_capacity(sparse.len());
        for (terms, b) in sparse {
            let mut row = vec![Rat::zero(); m.len()];
            for (name, coeff) in terms {
                row[m.poset().index_of(name)?] += coeff;
            }
            rows.push(row);
            rhs.push(b.clone());
        }
        Ok(LinearConditions { rows, rhs })
    }

    pub fn from_dense(rows: Vec<Vec<Rat>>, rhs: Vec<Rat>) -> LinearConditions {
        assert_eq!(rows.len(), rhs.len());
        LinearConditions { rows, rhs }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[Rat] {
        &self.rhs
    }

    pub fn satisfied_by(&self, x: &RationalPoint) -> bool {
        self.rows.iter().zip(&self.rhs).all(|(row, b)| {
            &row.iter()
                .zip(x.coords())
                .map(|(c, v)| c * v)
                .sum::<Rat>()
                == b
        })
    }
}

/// x ∈ O(P,λ,s,b): membership in O(P,λ) plus the conditions.
pub fn conditional_membership(m: &MarkedPoset, s: &LinearConditions, x: &RationalPoint) -> bool {
    geometry::membership(m, x) && s.satisfied_by(x)
}

/// The defining system of O(P,λ,s,b).
pub fn conditional_h_representation(m: &MarkedPoset, s: &LinearConditions) -> HPolyhedron {
    let mut h = geometry::h_representation(m);
    for (row, b) in s.rows.iter().zip(&s.rhs) {
        h.equations.push((row.clone(), b.clone()));
    }
    h
}

/// The conditions restricted to a face F_π of O(P,λ), as a matrix over the
/// free blocks of π: entry (k, B) = Σ_{p ∈ B} s_{k,p}. The kernel dimension
/// of this matrix is the dimension of the piece F_π contributes to the tiling
/// of the conditional polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingMap {
    /// Element names of each free block, in block order.
    pub free_blocks: Vec<Vec<String>>,
    /// k × free-block coefficient matrix.
    pub entries: Vec<Vec<Rat>>,
}

impl TilingMap {
    pub fn kernel_dimension(&self) -> usize {
        self.free_blocks.len() - rank_of(&self.entries)
    }
}

pub fn tiling_map(m: &MarkedPoset, s: &LinearConditions, pi: &Partition) -> Result<TilingMap> {
    if !partition::is_face_partition(m, pi) {
        return Err(Error::NotAFacePartition);
    }
    let flags = pi.free_flags(m);
    let free: Vec<usize> = (0..pi.block_count()).filter(|&b| flags[b]).collect();
    let free_blocks: Vec<Vec<String>> = free
        .iter()
        .map(|&b| {
            let mut names: Vec<String> = pi.blocks()[b]
                .iter()
                .map(|&p| m.poset().element(p).to_string())
                .collect();
            names.sort();
            names
        })
        .collect();
    let entries: Vec<Vec<Rat>> = s
        .rows
        .iter()
        .map(|row| {
            free.iter()
                .map(|&b| pi.blocks()[b].iter().map(|&p| row[p].clone()).sum())
                .collect()
        })
        .collect();
    Ok(TilingMap {
        free_blocks,
        entries,
    })
}

/// Dimension of the minimal face of O(P,λ,s,b) through x: the kernel
/// dimension of the tiling map on the face partition of x.
pub fn minimal_face_dimension(
    m: &MarkedPoset,
    s: &LinearConditions,
    x: &RationalPoint,
) -> Result<usize> {
    if !s.satisfied_by(x) {
        return Err(Error::NotInPolyhedron);
    }
    let pi = partition::partition_from_point(m, x)?;
    Ok(tiling_map(m, s, &pi)?.kernel_dimension())
}

/// Pushes the conditions down to a quotient of (P,λ): the coefficient of a
/// block is the sum over its members, the right-hand side is unchanged.
pub fn conditions_quotient(
    m: &MarkedPoset,
    s: &LinearConditions,
    pi: &Partition,
) -> Result<LinearConditions> {
    if !partition::is_pl_compatible(m, pi) {
        return Err(Error::NotCompatible);
    }
    let rows: Vec<Vec<Rat>> = s
        .rows
        .iter()
        .map(|row| {
            pi.blocks()
                .iter()
                .map(|block| block.iter().map(|&p| row[p].clone()).sum())
                .collect()
        })
        .collect();
    Ok(LinearConditions {
        rows,
        rhs: s.rhs.clone(),
    })
}

/// Realizes an arbitrary rational system { x : ineqs·x ≥ rhs, eqs·x = rhs }
/// in n variables as a conditional marked order polyhedron: one unrelated
/// element p_i per variable, one slack element q_l per inequality below a
/// single marked element r with λ(r) = 0, and one condition per row.
/// The returned indices project a point of the conditional polyhedron to
/// (x_{p_1}, …, x_{p_n}); this projection is an affine isomorphism onto the
/// input polyhedron.
pub fn embed_polyhedron(
    ineq_rows: &[(Vec<Rat>, Rat)],
    eq_rows: &[(Vec<Rat>, Rat)],
    n: usize,
) -> Result<(MarkedPoset, LinearConditions, Vec<usize>)> {
    let mut elements: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    let slack_names: Vec<String> = (1..=ineq_rows.len()).map(|l| format!("q{l}")).collect();
    elements.extend(slack_names.iter().cloned());
    elements.push("r".to_string());
    let relations: Vec<(String, String)> = slack_names
        .iter()
        .map(|s| (s.clone(), "r".to_string()))
        .collect();
    let poset = Poset::build(&elements, &relations)?;
    let marking: BTreeMap<String, Rat> = [("r".to_string(), Rat::zero())].into();
    let m = MarkedPoset::new(poset, &marking)?;
    let total = m.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    // a·x ≥ c becomes −a·x − x_{q_l} = −c with x_{q_l} ≤ 0.
    for (l, (coeffs, c)) in ineq_rows.iter().enumerate() {
        let mut row = vec![Rat::zero(); total];
        for (i, a) in coeffs.iter().enumerate() {
            row[i] = -a.clone();
        }
        row[n + l] = rat(-1);
        rows.push(row);
        rhs.push(-c.clone());
    }
    for (coeffs, c) in eq_rows {
        let mut row = vec![Rat::zero(); total];
        row[..n].clone_from_slice(coeffs);
        rows.push(row);
        rhs.push(c.clone());
    }
    Ok((m, LinearConditions { rows, rhs }, (0..n).collect()))
}

/// Row rank by plain rational elimination.
fn rank_of(rows: &[Vec<Rat>]) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut work: Vec<Vec<Rat>> = rows.to_vec();
    let mut rank = 0;
    for c in 0..width {
        let Some(pivot) = (rank..work.len()).find(|&i| !work[i][c].is_zero()) else {
            continue;
        };
        work.swap(rank, pivot);
        for i in rank + 1..work.len() {
            if !work[i][c].is_zero() {
                let factor = &work[i][c] / &work[rank][c];
                for j in c..width {
                    let delta = &factor * &work[rank][j];
                    work[i][j] -= delta;
                }
            }
        }
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::rational::ratio;

    /// The chain 0 ≺ p ≺ q ≺ r ≺ s ≺ 5 with x_p + x_r = 4 and x_q + x_s = 6.
    fn chain_with_sums() -> (MarkedPoset, LinearConditions) {
        let m = MarkedPoset::from_parts(
            &["b0", "p", "q", "r", "s", "b5"],
            &[("b0", "p"), ("p", "q"), ("q", "r"), ("r", "s"), ("s", "b5")],
            &[("b0", 0, 1), ("b5", 5, 1)],
        )
        .unwrap();
        let s = LinearConditions::new(
            &m,
            &[
                (vec![("p".into(), rat(1)), ("r".into(), rat(1))], rat(4)),
                (vec![("q".into(), rat(1)), ("s".into(), rat(1))], rat(6)),
            ],
        )
        .unwrap();
        (m, s)
    }

    fn chain_point(m: &MarkedPoset, p: Rat, q: Rat, r: Rat, s: Rat) -> RationalPoint {
        let _ = m;
        RationalPoint::from_coords(vec![Rat::zero(), p, q, r, s, rat(5)])
    }

    #[test]
    fn membership_with_and_without_conditions() {
        let (m, s) = chain_with_sums();
        let inside = chain_point(&m, rat(1), rat(2), rat(3), rat(4));
        assert!(conditional_membership(&m, &s, &inside));
        let off_condition = chain_point(&m, rat(1), rat(2), rat(2), rat(4));
        assert!(geometry::membership(&m, &off_condition));
        assert!(!conditional_membership(&m, &s, &off_condition));
        let empty = LinearConditions::from_dense(vec![], vec![]);
        assert!(conditional_membership(&m, &empty, &off_condition));
    }

    #[test]
    fn tiling_maps_of_the_three_faces() {
        let (m, s) = chain_with_sums();
        let cases: [(RationalPoint, Vec<Vec<Rat>>, usize); 3] = [
            (
                chain_point(&m, rat(1), rat(2), rat(3), rat(4)),
                vec![
                    vec![rat(1), rat(0), rat(1), rat(0)],
                    vec![rat(0), rat(1), rat(0), rat(1)],
                ],
                2,
            ),
            (
                chain_point(&m, ratio(3, 2), ratio(5, 2), ratio(5, 2), ratio(7, 2)),
                vec![
                    vec![rat(1), rat(1), rat(0)],
                    vec![rat(0), rat(1), rat(1)],
                ],
                1,
            ),
            (
                chain_point(&m, rat(2), rat(2), rat(2), rat(4)),
                vec![vec![rat(2), rat(0)], vec![rat(1), rat(1)]],
                0,
            ),
        ];
        for (x, matrix, kernel) in cases {
            let pi = crate::partition::partition_from_point(&m, &x).unwrap();
            let map = tiling_map(&m, &s, &pi).unwrap();
            assert_eq!(map.entries, matrix);
            assert_eq!(map.kernel_dimension(), kernel);
            assert_eq!(minimal_face_dimension(&m, &s, &x).unwrap(), kernel);
        }
    }

    #[test]
    fn kernel_dimension_matches_oracle() {
        let (m, s) = chain_with_sums();
        let x = chain_point(&m, rat(1), rat(2), rat(3), rat(4));
        // The minimal conditional face through x is the intersection of the
        // minimal unconditional face through x with the condition hyperplanes.
        let pi = crate::partition::partition_from_point(&m, &x).unwrap();
        let mut h = geometry::face_polyhedron(&m, &pi);
        for (row, b) in s.rows().iter().zip(s.rhs()) {
            h.equations.push((row.clone(), b.clone()));
        }
        assert_eq!(oracle::affine_dimension(&h), 2);
        assert_eq!(minimal_face_dimension(&m, &s, &x).unwrap(), 2);
    }

    #[test]
    fn quotient_conditions_sum_block_coefficients() {
        let (m, s) = chain_with_sums();
        let x = chain_point(&m, rat(2), rat(2), rat(2), rat(4));
        let pi = crate::partition::partition_from_point(&m, &x).unwrap();
        let qs = conditions_quotient(&m, &s, &pi).unwrap();
        assert_eq!(qs.len(), 2);
        // Coefficients per block of {b0}, {p,q,r}, {s}, {b5}.
        assert_eq!(qs.rows()[0], vec![rat(0), rat(2), rat(0), rat(0)]);
        assert_eq!(qs.rows()[1], vec![rat(0), rat(1), rat(1), rat(0)]);
        let (quot, map) = m.quotient(&pi).unwrap();
        let y = RationalPoint::from_coords(
            (0..quot.len())
                .map(|b| x.coord(pi.blocks()[b][0]).clone())
                .collect(),
        );
        assert!(conditional_membership(&quot, &qs, &y));
        assert!(conditional_membership(&m, &s, &map.pull_back_point(&y).unwrap()));
        let zero = LinearConditions::from_dense(vec![], vec![]);
        assert!(conditions_quotient(&m, &zero, &pi).unwrap().is_empty());
    }

    #[test]
    fn embedding_the_unit_square() {
        // 0 ≤ x1 ≤ 1, 0 ≤ x2 ≤ 1 as four ≥-rows.
        let ineqs = vec![
            (vec![rat(1), rat(0)], rat(0)),
            (vec![rat(0), rat(1)], rat(0)),
            (vec![rat(-1), rat(0)], rat(-1)),
            (vec![rat(0), rat(-1)], rat(-1)),
        ];
        let (m, s, projection) = embed_polyhedron(&ineqs, &[], 2).unwrap();
        assert_eq!(m.len(), 7);
        assert_eq!(m.poset().covers().len(), 4);
        assert_eq!(projection, vec![0, 1]);
        let h = conditional_h_representation(&m, &s);
        let rep = oracle::enumerate_vertices_and_rays(&h);
        let mut projected: Vec<Vec<Rat>> = rep
            .vertices
            .iter()
            .map(|v| projection.iter().map(|&i| v[i].clone()).collect())
            .collect();
        projected.sort();
        projected.dedup();
        let corners: Vec<Vec<Rat>> = vec![
            vec![rat(0), rat(0)],
            vec![rat(0), rat(1)],
            vec![rat(1), rat(0)],
            vec![rat(1), rat(1)],
        ];
        assert_eq!(projected, corners);
    }

    #[test]
    fn embedding_a_single_equation() {
        let (m, s, _) = embed_polyhedron(&[], &[(vec![rat(1)], rat(0))], 1).unwrap();
        assert_eq!(m.len(), 2);
        assert!(m.poset().covers().is_empty());
        assert_eq!(s.len(), 1);
        let x = RationalPoint::from_coords(vec![rat(0), rat(0)]);
        assert!(conditional_membership(&m, &s, &x));
    }
}
