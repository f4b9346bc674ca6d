//! An independent geometric oracle.
//!
//! Everything here works directly on H-representations with exact rational
//! arithmetic (homogenization, nullspace elimination of equations, double
//! description for the pointed part) and deliberately shares no logic with
//! the combinatorial modules, so agreement between the two routes is a real
//! check rather than a tautology.

mod dd;
mod linalg;

use std::collections::{BTreeSet, VecDeque};

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::HPolyhedron;
use crate::rational::{primitive_integer_vector, rat, Rat};

/// Row bound for face enumeration; the face count is exponential in it.
pub const MAX_ORACLE_ROWS: usize = 24;

/// Generators of a polyhedron: points, recession rays and lineality
/// directions. When `pointed` the points are exactly the vertices; rays and
/// lineality are primitive integer vectors. All three lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VRepresentation {
    pub vertices: Vec<Vec<Rat>>,
    pub rays: Vec<Vec<Rat>>,
    pub lineality: Vec<Vec<Rat>>,
    pub pointed: bool,
}

impl VRepresentation {
    pub fn is_empty_polyhedron(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// A face reported by the oracle, identified by its canonical active set
/// (the inequality rows tight on the whole face).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveSetFace {
    pub active: Vec<usize>,
    pub affine_dim: i64,
    /// A relative-interior point of the face.
    pub witness: Vec<Rat>,
}

fn primitive(v: Vec<Rat>) -> Vec<Rat> {
    primitive_integer_vector(&v)
        .into_iter()
        .map(Rat::from_integer)
        .collect()
}

fn unit(d: usize, c: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); d];
    v[c] = rat(1);
    v
}

/// Generators of the cone {y : ineqs·y ≥ 0, eqs·y = 0} in ℚ^n as
/// (extreme rays of the pointed part, lineality basis).
fn cone_generators(ineqs: &[Vec<Rat>], eqs: &[Vec<Rat>], n: usize) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let nbasis = linalg::nullspace(eqs, n);
    if nbasis.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let d1 = nbasis.len();
    // The system restricted to the solution space of the equations.
    let b: Vec<Vec<Rat>> = ineqs
        .iter()
        .map(|row| nbasis.iter().map(|nb| linalg::dot(row, nb)).collect())
        .collect();
    let kernel = linalg::nullspace(&b, d1);
    // Split off the lineality: a complement of the kernel chosen greedily
    // from the standard basis.
    let mut chosen: Vec<usize> = Vec::new();
    for c in 0..d1 {
        let mut trial = kernel.clone();
        trial.extend(chosen.iter().map(|&cc| unit(d1, cc)));
        trial.push(unit(d1, c));
        if linalg::rank(&trial) == kernel.len() + chosen.len() + 1 {
            chosen.push(c);
        }
    }
    let d = chosen.len();
    let rows_w: Vec<Vec<Rat>> = b
        .iter()
        .map(|row| chosen.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let rays_w = dd::extreme_rays(&rows_w, d);
    let lift = |z: &[Rat]| -> Vec<Rat> {
        (0..n)
            .map(|i| (0..d1).map(|j| &z[j] * &nbasis[j][i]).sum())
            .collect()
    };
    let mut rays: Vec<Vec<Rat>> = rays_w
        .iter()
        .map(|w| {
            let mut z = vec![Rat::zero(); d1];
            for (j, &c) in chosen.iter().enumerate() {
                z[c] = w[j].clone();
            }
            primitive(lift(&z))
        })
        .collect();
    rays.sort();
    let mut lineality: Vec<Vec<Rat>> = kernel.iter().map(|z| primitive(lift(z))).collect();
    lineality.sort();
    (rays, lineality)
}

fn homogenize(c: &[Rat], rhs: &Rat) -> Vec<Rat> {
    let mut row = vec![-rhs.clone()];
    row.extend(c.iter().cloned());
    row
}

/// All generators of the polyhedron via homogenization: coordinate 0 is the
/// homogenizing x₀ with the extra row x₀ ≥ 0; rays with x₀ > 0 dehomogenize
/// to points, rays with x₀ = 0 to recession rays.
pub fn enumerate_vertices_and_rays(h: &HPolyhedron) -> VRepresentation {
    let n = h.dim();
    let mut ineqs: Vec<Vec<Rat>> = h
        .inequalities
        .iter()
        .map(|(c, rhs)| homogenize(c, rhs))
        .collect();
    ineqs.push(unit(n + 1, 0));
    let eqs: Vec<Vec<Rat>> = h
        .equations
        .iter()
        .map(|(c, rhs)| homogenize(c, rhs))
        .collect();
    let (cone_rays, cone_lineality) = cone_generators(&ineqs, &eqs, n + 1);
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for y in cone_rays {
        if y[0].is_zero() {
            rays.push(y[1..].to_vec());
        } else {
            vertices.push(y[1..].iter().map(|v| v / &y[0]).collect());
        }
    }
    let lineality: Vec<Vec<Rat>> = cone_lineality.iter().map(|y| y[1..].to_vec()).collect();
    vertices.sort();
    rays.sort();
    VRepresentation {
        pointed: lineality.is_empty(),
        vertices,
        rays,
        lineality,
    }
}

/// A feasibility LP with optional strict rows: returns a point of `h` that is
/// strictly slack on the inequalities listed in `strict_rows`, or `None`.
///
/// Adds a slack coordinate t with row t ≥ 0, subtracted from every strict
/// row; the sum of the homogenized cone's extreme rays then certifies strict
/// feasibility exactly when both its x₀ and t components are positive.
pub fn lp_feasible(h: &HPolyhedron, strict_rows: &[usize]) -> Option<Vec<Rat>> {
    let n = h.dim();
    let mut ineqs: Vec<Vec<Rat>> = h
        .inequalities
        .iter()
        .enumerate()
        .map(|(i, (c, rhs))| {
            let mut row = homogenize(c, rhs);
            row.push(if strict_rows.contains(&i) { rat(-1) } else { Rat::zero() });
            row
        })
        .collect();
    ineqs.push(unit(n + 2, 0));
    ineqs.push(unit(n + 2, n + 1));
    let eqs: Vec<Vec<Rat>> = h
        .equations
        .iter()
        .map(|(c, rhs)| {
            let mut row = homogenize(c, rhs);
            row.push(Rat::zero());
            row
        })
        .collect();
    let (rays, _) = cone_generators(&ineqs, &eqs, n + 2);
    let mut sum = vec![Rat::zero(); n + 2];
    for r in &rays {
        for (s, v) in sum.iter_mut().zip(r) {
            *s += v;
        }
    }
    if sum[0].is_positive() && sum[n + 1].is_positive() {
        Some(sum[1..=n].iter().map(|v| v / &sum[0]).collect())
    } else {
        None
    }
}

fn generator_dimension(rep: &VRepresentation) -> i64 {
    if rep.vertices.is_empty() {
        return -1;
    }
    let v0 = &rep.vertices[0];
    let mut dirs: Vec<Vec<Rat>> = rep.vertices[1..]
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    dirs.extend(rep.rays.iter().cloned());
    dirs.extend(rep.lineality.iter().cloned());
    linalg::rank(&dirs) as i64
}

/// Affine dimension of the solution set; −1 for the empty polyhedron.
pub fn affine_dimension(h: &HPolyhedron) -> i64 {
    generator_dimension(&enumerate_vertices_and_rays(h))
}

/// All nonempty faces of `h`, each as its canonical active set with an exact
/// dimension and relative-interior witness. Faces are found by breadth-first
/// tightening: turn one more inequality into an equation, recompute the
/// generators, and canonicalize the active set.
pub fn enumerate_faces(h: &HPolyhedron) -> Result<Vec<ActiveSetFace>> {
    if h.inequalities.len() > MAX_ORACLE_ROWS {
        return Err(Error::SizeLimit {
            actual: h.inequalities.len(),
            limit: MAX_ORACLE_ROWS,
        });
    }
    let subsystem = |active: &[usize]| -> HPolyhedron {
        let mut equations = h.equations.clone();
        equations.extend(active.iter().map(|&i| h.inequalities[i].clone()));
        HPolyhedron {
            coordinates: h.coordinates.clone(),
            inequalities: h.inequalities.clone(),
            equations,
        }
    };
    // Canonical active set of the face: every row tight on all generators.
    let canonical = |active: &[usize]| -> Option<(Vec<usize>, VRepresentation)> {
        let rep = enumerate_vertices_and_rays(&subsystem(active));
        if rep.vertices.is_empty() {
            return None;
        }
        let mut canon = Vec::new();
        for (i, (c, rhs)) in h.inequalities.iter().enumerate() {
            let on_points = rep.vertices.iter().all(|v| &linalg::dot(c, v) == rhs);
            let on_dirs = rep
                .rays
                .iter()
                .chain(&rep.lineality)
                .all(|r| linalg::dot(c, r).is_zero());
            if on_points && on_dirs {
                canon.push(i);
            }
        }
        Some((canon, rep))
    };
    let mut out = Vec::new();
    let mut visited: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: VecDeque<(Vec<usize>, VRepresentation)> = VecDeque::new();
    if let Some((canon, rep)) = canonical(&[]) {
        visited.insert(canon.clone());
        queue.push_back((canon, rep));
    }
    while let Some((active, rep)) = queue.pop_front() {
        let count = rat(rep.vertices.len() as i64);
        let mut witness = vec![Rat::zero(); h.dim()];
        for v in &rep.vertices {
            for (w, x) in witness.iter_mut().zip(v) {
                *w += x / &count;
            }
        }
        for r in &rep.rays {
            for (w, x) in witness.iter_mut().zip(r) {
                *w += x;
            }
        }
        for i in 0..h.inequalities.len() {
            if active.contains(&i) {
                continue;
            }
            let mut tighter = active.clone();
            tighter.push(i);
            if let Some((canon, sub)) = canonical(&tighter) {
                if visited.insert(canon.clone()) {
                    queue.push_back((canon, sub));
                }
            }
        }
        out.push(ActiveSetFace {
            affine_dim: generator_dimension(&rep),
            active,
            witness,
        });
    }
    out.sort_by(|a, b| (a.affine_dim, &a.active).cmp(&(b.affine_dim, &b.active)));
    Ok(out)
}

/// Is `point` in conv(points) + cone(rays)? Solved as a feasibility LP in the
/// multipliers.
pub fn in_convex_hull(point: &[Rat], points: &[&Vec<Rat>], rays: &[Vec<Rat>]) -> bool {
    let k = points.len() + rays.len();
    let mut equations: Vec<(Vec<Rat>, Rat)> = Vec::new();
    for c in 0..point.len() {
        let mut row: Vec<Rat> = points.iter().map(|p| p[c].clone()).collect();
        row.extend(rays.iter().map(|r| r[c].clone()));
        equations.push((row, point[c].clone()));
    }
    let mut convex = vec![rat(1); points.len()];
    convex.extend(vec![Rat::zero(); rays.len()]);
    equations.push((convex, rat(1)));
    let inequalities: Vec<(Vec<Rat>, Rat)> =
        (0..k).map(|i| (unit(k, i), Rat::zero())).collect();
    let lp = HPolyhedron {
        coordinates: (0..k).map(|i| format!("c{i}")).collect(),
        inequalities,
        equations,
    };
    lp_feasible(&lp, &[]).is_some()
}
