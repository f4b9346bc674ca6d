//! Exact H-representations of marked order polyhedra and their convex
//! geometry: generic points, dimensions, recession cones, products, vertex
//! construction and enumeration, Minkowski decomposition, lattice-ness.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::marked::MarkedPoset;
use crate::oracle;
use crate::partition::{self, Partition, DEFAULT_MAX_ELEMENTS};
use crate::rational::{is_integer, rat, ratio, Rat};

/// An exact rational coordinate vector indexed by the poset's elements (in
/// element input order).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint {
    coords: Vec<Rat>,
}

impl RationalPoint {
    pub fn from_coords(coords: Vec<Rat>) -> RationalPoint {
        RationalPoint { coords }
    }

    /// Builds a point on `m` from explicit coordinates for the unmarked
    /// elements; marked coordinates are filled in from λ.
    pub fn on(m: &MarkedPoset, unmarked: &BTreeMap<String, Rat>) -> Result<RationalPoint> {
        let mut coords = Vec::with_capacity(m.len());
        for i in 0..m.len() {
            let name = m.poset().element(i);
            match m.mark(i) {
                Some(v) => coords.push(v.clone()),
                None => coords.push(
                    unmarked
                        .get(name)
                        .cloned()
                        .ok_or_else(|| Error::UnknownElement(name.to_string()))?,
                ),
            }
        }
        Ok(RationalPoint { coords })
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn by_name(&self, m: &MarkedPoset) -> BTreeMap<String, Rat> {
        (0..self.len())
            .map(|i| (m.poset().element(i).to_string(), self.coords[i].clone()))
            .collect()
    }
}

/// Exact-rational H-representation: rows `coeffs · x ≥ rhs` and
/// `coeffs · x = rhs` over named coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolyhedron {
    pub coordinates: Vec<String>,
    pub inequalities: Vec<(Vec<Rat>, Rat)>,
    pub equations: Vec<(Vec<Rat>, Rat)>,
}

impl HPolyhedron {
    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn row_count(&self) -> usize {
        self.inequalities.len() + self.equations.len()
    }

    pub fn satisfies(&self, x: &[Rat]) -> bool {
        let dot = |c: &[Rat]| -> Rat { c.iter().zip(x).map(|(a, b)| a * b).sum() };
        self.inequalities.iter().all(|(c, rhs)| &dot(c) >= rhs)
            && self.equations.iter().all(|(c, rhs)| &dot(c) == rhs)
    }
}

/// One inequality x_q − x_p ≥ 0 per covering relation (the closure rows are
/// implied), one equation x_a = λ(a) per marked element.
pub fn h_representation(m: &MarkedPoset) -> HPolyhedron {
    let n = m.len();
    let mut inequalities = Vec::new();
    for &(p, q) in m.poset().covers() {
        let mut row = vec![Rat::zero(); n];
        row[p] = rat(-1);
        row[q] = rat(1);
        inequalities.push((row, Rat::zero()));
    }
    let mut equations = Vec::new();
    for (&a, v) in m.marking() {
        let mut row = vec![Rat::zero(); n];
        row[a] = rat(1);
        equations.push((row, v.clone()));
    }
    HPolyhedron {
        coordinates: m.poset().elements().to_vec(),
        inequalities,
        equations,
    }
}

/// Exact membership test x ∈ O(P,λ).
pub fn membership(m: &MarkedPoset, x: &RationalPoint) -> bool {
    if x.len() != m.len() {
        return false;
    }
    for (&a, v) in m.marking() {
        if x.coord(a) != v {
            return false;
        }
    }
    m.poset()
        .covers()
        .iter()
        .all(|&(p, q)| x.coord(p) <= x.coord(q))
}

/// A deterministic point of O(P,λ): unmarked elements processed in
/// topological order, each assigned the midpoint of its determined bounds
/// (lower + 1 / upper − 1 when one side is unbounded, 0 when both are).
/// Coordinates coincide along a relation exactly when a constant interval
/// forces them to; for strict markings the point is strictly order-preserving.
pub fn generic_point(m: &MarkedPoset) -> RationalPoint {
    let n = m.len();
    let mut coords: Vec<Option<Rat>> = vec![None; n];
    for (&a, v) in m.marking() {
        coords[a] = Some(v.clone());
    }
    for p in m.poset().topological_order() {
        if coords[p].is_some() {
            continue;
        }
        // Everything below p is already determined; above p only marks are.
        let lower = (0..n)
            .filter(|&q| m.poset().less(q, p))
            .filter_map(|q| coords[q].clone())
            .max();
        let upper = m
            .marking()
            .iter()
            .filter(|(&a, _)| m.poset().less(p, a))
            .map(|(_, v)| v.clone())
            .min();
        let value = match (lower, upper) {
            (Some(l), Some(u)) => (l + u) / rat(2),
            (Some(l), None) => l + rat(1),
            (None, Some(u)) => u - rat(1),
            (None, None) => Rat::zero(),
        };
        coords[p] = Some(value);
    }
    RationalPoint {
        coords: coords.into_iter().map(|c| c.unwrap()).collect(),
    }
}

/// F_π as an H-polyhedron: the defining system of O(P,λ) plus equations
/// making x constant on each block (spanning rows per block suffice).
pub fn face_polyhedron(m: &MarkedPoset, pi: &Partition) -> HPolyhedron {
    let mut h = h_representation(m);
    for block in pi.blocks() {
        for pair in block.windows(2) {
            let mut row = vec![Rat::zero(); m.len()];
            row[pair[0]] = rat(1);
            row[pair[1]] = rat(-1);
            h.equations.push((row, Rat::zero()));
        }
    }
    h
}

/// dim F_π = number of free blocks of π.
pub fn face_dimension(m: &MarkedPoset, pi: &Partition) -> Result<usize> {
    if !partition::is_face_partition(m, pi) {
        return Err(Error::NotAFacePartition);
    }
    Ok(pi.free_block_count(m))
}

/// Dimension of O(P,λ): the number of unmarked elements after strictification.
pub fn dimension(m: &MarkedPoset) -> usize {
    let (strict, _) = m.strictify();
    strict.unmarked_indices().len()
}

/// The recession cone O(P,0): same poset, same marked set, zero marking.
pub fn recession_cone(m: &MarkedPoset) -> MarkedPoset {
    let zero = m
        .marked_indices()
        .into_iter()
        .map(|a| (a, Rat::zero()))
        .collect();
    m.with_marking(zero)
        .expect("zero marking is order-preserving")
}

/// Coproduct of marked posets; its polyhedron is the product of the factors.
pub fn disjoint_union(m1: &MarkedPoset, m2: &MarkedPoset) -> Result<MarkedPoset> {
    let mut elements: Vec<String> = m1.poset().elements().to_vec();
    elements.extend(m2.poset().elements().iter().cloned());
    let mut relations = m1.poset().cover_names();
    relations.extend(m2.poset().cover_names());
    let poset = crate::poset::Poset::build(&elements, &relations)?;
    let mut marking = m1.marking_by_name();
    marking.extend(m2.marking_by_name());
    MarkedPoset::new(poset, &marking)
}

/// Pointed iff every Hasse component carries a marked element.
pub fn is_pointed(m: &MarkedPoset) -> bool {
    unmarked_component_witness(m).is_none()
}

fn unmarked_component_witness(m: &MarkedPoset) -> Option<String> {
    let comp = m.poset().component_ids();
    let count = comp.iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..count {
        let members: Vec<usize> = (0..m.len()).filter(|&p| comp[p] == c).collect();
        if members.iter().all(|&p| !m.is_marked(p)) {
            return Some(m.poset().element(members[0]).to_string());
        }
    }
    None
}

/// A vertex of a pointed O(P,λ): seed the marked values, then repeatedly pick
/// the smallest-index undetermined element Hasse-adjacent to a determined one
/// and set it to the max over its determined lower covers, falling back to the
/// min over its determined upper covers.
pub fn construct_vertex(m: &MarkedPoset) -> Result<RationalPoint> {
    if let Some(witness) = unmarked_component_witness(m) {
        return Err(Error::NotPointed(witness));
    }
    let n = m.len();
    let mut coords: Vec<Option<Rat>> = vec![None; n];
    for (&a, v) in m.marking() {
        coords[a] = Some(v.clone());
    }
    while coords.iter().any(|c| c.is_none()) {
        let p = (0..n)
            .find(|&p| {
                coords[p].is_none()
                    && m.poset()
                        .hasse_neighbors(p)
                        .iter()
                        .any(|&q| coords[q].is_some())
            })
            .expect("pointed components always reach every element");
        let from_lower = m
            .poset()
            .lower_covers(p)
            .into_iter()
            .filter_map(|q| coords[q].clone())
            .max();
        let value = match from_lower {
            Some(v) => v,
            None => m
                .poset()
                .upper_covers(p)
                .into_iter()
                .filter_map(|q| coords[q].clone())
                .min()
                .expect("adjacent determined neighbor exists"),
        };
        coords[p] = Some(value);
    }
    let v = RationalPoint {
        coords: coords.into_iter().map(|c| c.unwrap()).collect(),
    };
    debug_assert!(membership(m, &v));
    Ok(v)
}

pub fn vertices(m: &MarkedPoset) -> Result<Vec<RationalPoint>> {
    vertices_bounded(m, DEFAULT_MAX_ELEMENTS)
}

/// All vertices: one per face partition without free blocks. Exact even for
/// unbounded (pointed) polyhedra, since pointed minimal faces are points.
pub fn vertices_bounded(m: &MarkedPoset, max_elements: usize) -> Result<Vec<RationalPoint>> {
    if let Some(witness) = unmarked_component_witness(m) {
        return Err(Error::NotPointed(witness));
    }
    let lattice = partition::enumerate_face_partitions_bounded(m, max_elements)?;
    let mut out: Vec<RationalPoint> = Vec::new();
    for pi in lattice
        .nodes
        .iter()
        .filter(|pi| pi.free_block_count(m) == 0)
    {
        let mut coords = vec![Rat::zero(); m.len()];
        for block in pi.blocks() {
            let value = block
                .iter()
                .find_map(|&p| m.mark(p))
                .expect("vertex partition has no free blocks")
                .clone();
            for &p in block {
                coords[p] = value.clone();
            }
        }
        out.push(RationalPoint { coords });
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// A Minkowski summand: a weight and a 0-1 marking on the same (P, P*).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinkowskiSummand {
    pub coefficient: Rat,
    pub marked_poset: MarkedPoset,
}

impl MinkowskiSummand {
    pub fn marking(&self) -> BTreeMap<String, Rat> {
        self.marked_poset.marking_by_name()
    }
}

/// The weighted 0-1 decomposition: with λ(P*) = {c₀ < … < c_k} and c₋₁ = 0,
/// summand i has weight c_i − c_{i−1} and marking 1 on {λ ≥ c_i}, 0 below.
pub fn minkowski_markings(m: &MarkedPoset) -> Result<Vec<MinkowskiSummand>> {
    if m.marking().is_empty() {
        return Err(Error::EmptyMarking);
    }
    let mut values: Vec<Rat> = m.marking().values().cloned().collect();
    values.sort();
    values.dedup();
    let mut out = Vec::new();
    let mut previous = Rat::zero();
    for c in values {
        let marking: BTreeMap<usize, Rat> = m
            .marking()
            .iter()
            .map(|(&a, v)| (a, if v >= &c { rat(1) } else { rat(0) }))
            .collect();
        out.push(MinkowskiSummand {
            coefficient: &c - &previous,
            marked_poset: m.with_marking(marking)?,
        });
        previous = c;
    }
    Ok(out)
}

/// Verifies the Minkowski decomposition against the oracle: the vertex set of
/// O(P,λ) must equal the irredundant weighted vertex sums of the summands,
/// and all recession cones must agree.
pub fn minkowski_sum_check(m: &MarkedPoset) -> Result<bool> {
    if let Some(witness) = unmarked_component_witness(m) {
        return Err(Error::NotPointed(witness));
    }
    let summands = minkowski_markings(m)?;
    let whole = oracle::enumerate_vertices_and_rays(&h_representation(m));
    // Same poset and marked set everywhere, so every recession cone is the
    // H-system O(P,0); compare the oracle's ray sets anyway.
    for summand in &summands {
        let part = oracle::enumerate_vertices_and_rays(&h_representation(&summand.marked_poset));
        if part.rays != whole.rays || !part.lineality.is_empty() {
            return Ok(false);
        }
    }
    // All weighted sums of summand vertices.
    let mut candidates: Vec<Vec<Rat>> = vec![vec![Rat::zero(); m.len()]];
    for summand in &summands {
        let part = oracle::enumerate_vertices_and_rays(&h_representation(&summand.marked_poset));
        if part.vertices.is_empty() {
            return Ok(false);
        }
        let mut next = Vec::new();
        for base in &candidates {
            for v in &part.vertices {
                let sum: Vec<Rat> = base
                    .iter()
                    .zip(v)
                    .map(|(b, x)| b + &summand.coefficient * x)
                    .collect();
                next.push(sum);
            }
        }
        next.sort();
        next.dedup();
        candidates = next;
    }
    // Convex-hull reduction (recession directions included): keep the points
    // not expressible over the others.
    let mut irredundant = Vec::new();
    for (i, point) in candidates.iter().enumerate() {
        let others: Vec<&Vec<Rat>> = candidates
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p)
            .collect();
        if !oracle::in_convex_hull(point, &others, &whole.rays) {
            irredundant.push(point.clone());
        }
    }
    irredundant.sort();
    let mut ours: Vec<Vec<Rat>> = vertices(m)?
        .into_iter()
        .map(|p| p.coords)
        .collect();
    ours.sort();
    Ok(irredundant == ours)
}

/// With integral markings the polyhedron is a lattice polyhedron; this checks
/// vertex integrality on the pointed part (the recession cone is rational by
/// construction).
pub fn is_lattice_polyhedron(m: &MarkedPoset) -> Result<bool> {
    let comp = m.poset().component_ids();
    let count = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut pointed_members: Vec<usize> = Vec::new();
    for c in 0..count {
        let members: Vec<usize> = (0..m.len()).filter(|&p| comp[p] == c).collect();
        if members.iter().any(|&p| m.is_marked(p)) {
            pointed_members.extend(members);
        }
    }
    if pointed_members.is_empty() {
        return Ok(true);
    }
    let sub = m.poset().induced(&pointed_members);
    let marking: BTreeMap<String, Rat> = m
        .marking_by_name()
        .into_iter()
        .filter(|(name, _)| pointed_members.iter().any(|&p| m.poset().element(p) == name))
        .collect();
    let pointed = MarkedPoset::new(sub, &marking)?;
    let vs = vertices(&pointed)?;
    Ok(vs
        .iter()
        .all(|v| v.coords().iter().all(is_integer)))
}

/// The pentagon running example: marks 0 < 1 < 3 < 4, free chain p < q.
pub fn pentagon() -> MarkedPoset {
    pentagon_with_t(ratio(0, 1))
}

/// The Q_t family: the pentagon with the mark 1 replaced by 1 + t.
pub fn pentagon_with_t(t: Rat) -> MarkedPoset {
    let poset = crate::poset::Poset::from_names(
        &["m0", "p", "q", "m4", "m1", "m3"],
        &[("m0", "p"), ("p", "q"), ("q", "m4"), ("m1", "q"), ("p", "m3")],
    )
    .unwrap();
    let marking: BTreeMap<String, Rat> = [
        ("m0".to_string(), rat(0)),
        ("m1".to_string(), rat(1) + t),
        ("m3".to_string(), rat(3)),
        ("m4".to_string(), rat(4)),
    ]
    .into_iter()
    .collect();
    MarkedPoset::new(poset, &marking).unwrap()
}
