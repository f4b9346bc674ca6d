//! The double description method for a pointed polyhedral cone
//! {w ∈ ℚ^d : rows · w ≥ 0} whose rows have full column rank.

use num::{Signed, Zero};

use super::linalg;
use crate::rational::{primitive_integer_vector, Rat};

fn primitive(v: Vec<Rat>) -> Vec<Rat> {
    primitive_integer_vector(&v)
        .into_iter()
        .map(Rat::from_integer)
        .collect()
}

/// The extreme rays of the cone, as sorted primitive integer vectors.
///
/// Starts from a simplicial cone cut out by d independent rows (whose rays
/// are the columns of the inverse row matrix) and inserts the remaining rows
/// one at a time, combining adjacent positive/negative ray pairs. Adjacency
/// is the combinatorial test over the rows processed so far.
pub fn extreme_rays(rows: &[Vec<Rat>], d: usize) -> Vec<Vec<Rat>> {
    assert!(rows.len() <= 128, "row bitmasks are u128");
    if d == 0 {
        return Vec::new();
    }
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<Rat>> = basis.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if linalg::rank(&trial) == basis.len() + 1 {
            basis.push(i);
        }
        if basis.len() == d {
            break;
        }
    }
    assert_eq!(basis.len(), d, "pointed cone rows must have rank d");
    let m: Vec<Vec<Rat>> = basis.iter().map(|&i| rows[i].clone()).collect();
    let inv = linalg::invert(&m).expect("independent rows are invertible");
    let mut rays: Vec<Vec<Rat>> = (0..d)
        .map(|j| primitive((0..d).map(|i| inv[i][j].clone()).collect()))
        .collect();
    rays.sort();
    let mut processed = basis.clone();
    for i in 0..rows.len() {
        if processed.contains(&i) {
            continue;
        }
        let vals: Vec<Rat> = rays.iter().map(|r| linalg::dot(&rows[i], r)).collect();
        if vals.iter().any(|v| v.is_negative()) {
            let masks: Vec<u128> = rays
                .iter()
                .map(|r| {
                    processed
                        .iter()
                        .enumerate()
                        .filter(|&(_, &j)| linalg::dot(&rows[j], r).is_zero())
                        .fold(0u128, |acc, (k, _)| acc | (1 << k))
                })
                .collect();
            let mut next: Vec<Vec<Rat>> = Vec::new();
            for (k, r) in rays.iter().enumerate() {
                if !vals[k].is_negative() {
                    next.push(r.clone());
                }
            }
            for (p, rp) in rays.iter().enumerate() {
                if !vals[p].is_positive() {
                    continue;
                }
                for (q, rq) in rays.iter().enumerate() {
                    if !vals[q].is_negative() {
                        continue;
                    }
                    let common = masks[p] & masks[q];
                    let adjacent = (0..rays.len())
                        .all(|k| k == p || k == q || common & !masks[k] != 0);
                    if adjacent {
                        let combined: Vec<Rat> = (0..d)
                            .map(|c| &vals[p] * &rq[c] - &vals[q] * &rp[c])
                            .collect();
                        next.push(primitive(combined));
                    }
                }
            }
            next.sort();
            next.dedup();
            rays = next;
        }
        processed.push(i);
    }
    rays
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn square_cone_over_a_diamond() {
        // w3 ≥ |w1| + |w2| as four rows: w3 ± w1 ± w2 ≥ 0.
        let rows = vec![
            vec![rat(1), rat(1), rat(1)],
            vec![rat(-1), rat(1), rat(1)],
            vec![rat(1), rat(-1), rat(1)],
            vec![rat(-1), rat(-1), rat(1)],
        ];
        let rays = extreme_rays(&rows, 3);
        assert_eq!(rays.len(), 4);
        for r in &rays {
            assert!(rows.iter().all(|row| !linalg::dot(row, r).is_negative()));
        }
        assert!(rays.contains(&vec![rat(1), rat(0), rat(1)]));
        assert!(rays.contains(&vec![rat(0), rat(-1), rat(1)]));
    }

    #[test]
    fn redundant_row_changes_nothing() {
        let rows = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
        let mut more = rows.clone();
        more.push(vec![rat(1), rat(1)]);
        assert_eq!(extreme_rays(&rows, 2), extreme_rays(&more, 2));
    }
}
