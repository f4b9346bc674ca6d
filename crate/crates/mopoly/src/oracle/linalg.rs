//! Exact rational linear algebra for the oracle: Gaussian elimination based
//! rank, nullspace and inversion. Kept private to the oracle so its results
//! are independent of the combinatorial code.

use num::Zero;

use crate::rational::Rat;

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reduced row echelon form in place; returns the pivot columns. Pivots are
/// searched in the first `width` columns only, so rows may carry augmented
/// columns beyond `width`.
fn rref(rows: &mut Vec<Vec<Rat>>, width: usize) -> Vec<usize> {
    let total = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(src) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, src);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..total {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut work = rows.to_vec();
    rref(&mut work, width).len()
}

/// A basis of { x ∈ ℚ^width : rows · x = 0 }. For an empty system this is the
/// standard basis.
pub fn nullspace(rows: &[Vec<Rat>], width: usize) -> Vec<Vec<Rat>> {
    let mut work = rows.to_vec();
    let pivots = rref(&mut work, width);
    let mut basis = Vec::new();
    for free in 0..width {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); width];
        v[free] = Rat::from_integer(1.into());
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix, if it exists.
pub fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let d = m.len();
    let mut work: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..d {
                r.push(if i == j {
                    Rat::from_integer(1.into())
                } else {
                    Rat::zero()
                });
            }
            r
        })
        .collect();
    let pivots = rref(&mut work, d);
    if pivots.len() < d {
        return None;
    }
    Some(work.into_iter().map(|row| row[d..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(0), rat(1), rat(1)],
        ];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            assert!(dot(row, &ns[0]).is_zero());
        }
        assert_eq!(nullspace(&[], 2).len(), 2);
    }

    #[test]
    fn inversion() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![rat(1), rat(-1)], vec![rat(-1), rat(2)]]);
        let singular = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert!(invert(&singular).is_none());
    }
}
