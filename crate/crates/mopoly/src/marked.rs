//! Markings on posets: strictness, constant intervals, quotients, redundancy
//! of covering relations, regularization and maps of marked posets.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::{self, RationalPoint};
use crate::partition::{self, Partition};
use crate::poset::Poset;
use crate::rational::Rat;

/// A finite poset together with an order-preserving marking λ on a subset of
/// its elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPoset {
    poset: Poset,
    /// element index → λ value; the key set is P*.
    marking: BTreeMap<usize, Rat>,
}

impl MarkedPoset {
    pub fn new(poset: Poset, marking: &BTreeMap<String, Rat>) -> Result<MarkedPoset> {
        let mut by_index = BTreeMap::new();
        for (name, value) in marking {
            by_index.insert(poset.index_of(name)?, value.clone());
        }
        let m = MarkedPoset {
            poset,
            marking: by_index,
        };
        if let Some((a, b)) = m.order_violation() {
            return Err(Error::MarkingNotOrderPreserving(
                m.poset.element(a).to_string(),
                m.poset.element(b).to_string(),
            ));
        }
        Ok(m)
    }

    /// Convenience constructor from name/value pairs given as (name, num, den).
    pub fn from_parts<S: AsRef<str>>(
        elements: &[S],
        relations: &[(S, S)],
        marks: &[(S, i64, i64)],
    ) -> Result<MarkedPoset> {
        let poset = Poset::from_names(elements, relations)?;
        let marking: BTreeMap<String, Rat> = marks
            .iter()
            .map(|(e, n, d)| (e.as_ref().to_string(), crate::rational::ratio(*n, *d)))
            .collect();
        MarkedPoset::new(poset, &marking)
    }

    fn order_violation(&self) -> Option<(usize, usize)> {
        for (&a, va) in &self.marking {
            for (&b, vb) in &self.marking {
                if self.poset.less(a, b) && va > vb {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn marking(&self) -> &BTreeMap<usize, Rat> {
        &self.marking
    }

    pub fn marking_by_name(&self) -> BTreeMap<String, Rat> {
        self.marking
            .iter()
            .map(|(&i, v)| (self.poset.element(i).to_string(), v.clone()))
            .collect()
    }

    pub fn is_marked(&self, i: usize) -> bool {
        self.marking.contains_key(&i)
    }

    pub fn mark(&self, i: usize) -> Option<&Rat> {
        self.marking.get(&i)
    }

    pub fn marked_indices(&self) -> Vec<usize> {
        self.marking.keys().copied().collect()
    }

    pub fn unmarked_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|i| !self.is_marked(*i)).collect()
    }

    /// Replaces the marking values (same marked set), e.g. for the zero marking
    /// of the recession cone or the 0-1 markings of the Minkowski summands.
    pub fn with_marking(&self, marking: BTreeMap<usize, Rat>) -> Result<MarkedPoset> {
        assert_eq!(
            marking.keys().collect::<Vec<_>>(),
            self.marking.keys().collect::<Vec<_>>(),
            "marked set must be unchanged"
        );
        let m = MarkedPoset {
            poset: self.poset.clone(),
            marking,
        };
        if let Some((a, b)) = m.order_violation() {
            return Err(Error::MarkingNotOrderPreserving(
                m.poset.element(a).to_string(),
                m.poset.element(b).to_string(),
            ));
        }
        Ok(m)
    }

    /// λ(a) < λ(b) for all comparable marked a < b; equivalently there is no
    /// non-trivial constant interval.
    pub fn is_strict(&self) -> bool {
        for (&a, va) in &self.marking {
            for (&b, vb) in &self.marking {
                if self.poset.less(a, b) && va >= vb {
                    return false;
                }
            }
        }
        true
    }

    /// All non-trivial constant intervals [a, b] together with their element
    /// sets.
    pub fn constant_intervals(&self) -> Vec<ConstantInterval> {
        let mut out = Vec::new();
        for (&a, va) in &self.marking {
            for (&b, vb) in &self.marking {
                if a != b && self.poset.less(a, b) && va == vb {
                    let elements = (0..self.len())
                        .filter(|&p| self.poset.leq(a, p) && self.poset.leq(p, b))
                        .map(|p| self.poset.element(p).to_string())
                        .collect();
                    out.push(ConstantInterval {
                        lower: self.poset.element(a).to_string(),
                        upper: self.poset.element(b).to_string(),
                        elements,
                    });
                }
            }
        }
        out
    }

    /// Contracts all constant intervals, yielding a strictly marked quotient
    /// and the partition that was contracted.
    pub fn strictify(&self) -> (MarkedPoset, Partition) {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for (&a, va) in &self.marking {
            for (&b, vb) in &self.marking {
                if a != b && self.poset.less(a, b) && va == vb {
                    for p in 0..n {
                        if self.poset.leq(a, p) && self.poset.leq(p, b) {
                            uf.union(a, p);
                        }
                    }
                }
            }
        }
        let pi = uf.partition();
        let (quot, _) = self
            .quotient(&pi)
            .expect("constant-interval partition is always compatible");
        debug_assert!(quot.is_strict());
        (quot, pi)
    }

    /// Witness (a, b) for redundancy of the covering relation p ≺ q, or `None`
    /// when it is non-redundant. The witness is the lexicographically first
    /// marked pair in element input order.
    pub fn is_redundant_cover(&self, p: &str, q: &str) -> Result<Option<(String, String)>> {
        let pi = self.poset.index_of(p)?;
        let qi = self.poset.index_of(q)?;
        if !self.poset.is_cover(pi, qi) {
            return Err(Error::NotACover(p.to_string(), q.to_string()));
        }
        Ok(self.redundancy_witness(pi, qi))
    }

    fn redundancy_witness(&self, p: usize, q: usize) -> Option<(String, String)> {
        for (&a, va) in &self.marking {
            for (&b, vb) in &self.marking {
                if a != b && self.poset.leq(a, q) && self.poset.leq(p, b) && va >= vb {
                    return Some((
                        self.poset.element(a).to_string(),
                        self.poset.element(b).to_string(),
                    ));
                }
            }
        }
        None
    }

    /// Removes redundant covering relations one at a time (first redundant
    /// cover in lexicographic cover order, re-scanning after each removal)
    /// until the marked poset is regular. Requires a strict marking.
    pub fn regularize(&self) -> Result<(MarkedPoset, Vec<(String, String)>)> {
        if !self.is_strict() {
            return Err(Error::NotStrict);
        }
        let mut current = self.clone();
        let mut removed = Vec::new();
        loop {
            let target = current
                .poset
                .covers()
                .iter()
                .copied()
                .find(|&(p, q)| current.redundancy_witness(p, q).is_some());
            match target {
                Some((p, q)) => {
                    removed.push((
                        current.poset.element(p).to_string(),
                        current.poset.element(q).to_string(),
                    ));
                    current = MarkedPoset {
                        poset: current.poset.without_cover(p, q)?,
                        marking: current.marking.clone(),
                    };
                }
                None => return Ok((current, removed)),
            }
        }
    }

    /// Regularity diagnostics: redundant covers plus the three necessary
    /// conditions for regularity, each with witnesses when violated.
    pub fn regularity_report(&self) -> RegularityReport {
        let redundant_covers: Vec<_> = self
            .poset
            .covers()
            .iter()
            .filter_map(|&(p, q)| {
                self.redundancy_witness(p, q).map(|w| {
                    (
                        (
                            self.poset.element(p).to_string(),
                            self.poset.element(q).to_string(),
                        ),
                        w,
                    )
                })
            })
            .collect();
        let non_strict_pair = self.marking.iter().find_map(|(&a, va)| {
            self.marking.iter().find_map(|(&b, vb)| {
                (self.poset.less(a, b) && va >= vb).then(|| {
                    (
                        self.poset.element(a).to_string(),
                        self.poset.element(b).to_string(),
                    )
                })
            })
        });
        let marked_cover_pairs: Vec<_> = self
            .poset
            .covers()
            .iter()
            .filter(|&&(p, q)| self.is_marked(p) && self.is_marked(q))
            .map(|&(p, q)| {
                (
                    self.poset.element(p).to_string(),
                    self.poset.element(q).to_string(),
                )
            })
            .collect();
        let mut multi_marked_witnesses = Vec::new();
        for p in 0..self.len() {
            let marked_lower: Vec<usize> = self
                .poset
                .lower_covers(p)
                .into_iter()
                .filter(|&a| self.is_marked(a))
                .collect();
            let marked_upper: Vec<usize> = self
                .poset
                .upper_covers(p)
                .into_iter()
                .filter(|&a| self.is_marked(a))
                .collect();
            for group in [marked_lower, marked_upper] {
                if group.len() > 1 {
                    multi_marked_witnesses.push((
                        self.poset.element(p).to_string(),
                        group
                            .into_iter()
                            .map(|a| self.poset.element(a).to_string())
                            .collect(),
                    ));
                }
            }
        }
        RegularityReport {
            is_regular: redundant_covers.is_empty(),
            redundant_covers,
            marking_strict: non_strict_pair.is_none(),
            non_strict_pair,
            no_marked_covers: marked_cover_pairs.is_empty(),
            marked_cover_pairs,
            single_marked_neighbors: multi_marked_witnesses.is_empty(),
            multi_marked_witnesses,
        }
    }

    /// Quotient by a (P,λ)-compatible partition: the poset of blocks with the
    /// induced marking on non-free blocks, plus the quotient map.
    /// Block identifiers join the sorted member identifiers with `+`.
    pub fn quotient(&self, pi: &Partition) -> Result<(MarkedPoset, MarkedPosetMap)> {
        if !partition::is_pl_compatible(self, pi) {
            return Err(Error::NotCompatible);
        }
        let names: Vec<String> = pi
            .blocks()
            .iter()
            .map(|block| {
                let mut member_names: Vec<&str> =
                    block.iter().map(|&p| self.poset.element(p)).collect();
                member_names.sort_unstable();
                member_names.join("+")
            })
            .collect();
        let mut relations = Vec::new();
        for (bi, block) in pi.blocks().iter().enumerate() {
            for (bj, other) in pi.blocks().iter().enumerate() {
                if bi == bj {
                    continue;
                }
                let related = block
                    .iter()
                    .any(|&p| other.iter().any(|&q| self.poset.less(p, q)));
                if related {
                    relations.push((names[bi].clone(), names[bj].clone()));
                }
            }
        }
        let poset = Poset::build(&names, &relations)?;
        let mut marking = BTreeMap::new();
        for (bi, block) in pi.blocks().iter().enumerate() {
            if let Some(&a) = block.iter().find(|&&p| self.is_marked(p)) {
                marking.insert(bi, self.marking[&a].clone());
            }
        }
        let target = MarkedPoset { poset, marking };
        let assignment = (0..self.len()).map(|p| pi.block_of(p)).collect();
        let map = MarkedPosetMap {
            source: self.clone(),
            target: target.clone(),
            assignment,
        };
        Ok((target, map))
    }
}

/// A constant interval [a, b]: both endpoints marked with equal values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantInterval {
    pub lower: String,
    pub upper: String,
    pub elements: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub is_regular: bool,
    /// (cover, witness pair (a, b)) for each redundant cover.
    pub redundant_covers: Vec<((String, String), (String, String))>,
    /// Condition (i): the marking is strict.
    pub marking_strict: bool,
    pub non_strict_pair: Option<(String, String)>,
    /// Condition (ii): no covering relation between marked elements.
    pub no_marked_covers: bool,
    pub marked_cover_pairs: Vec<(String, String)>,
    /// Condition (iii): every element covers / is covered by at most one
    /// marked element.
    pub single_marked_neighbors: bool,
    pub multi_marked_witnesses: Vec<(String, Vec<String>)>,
}

impl RegularityReport {
    pub fn conditions_hold(&self) -> bool {
        self.marking_strict && self.no_marked_covers && self.single_marked_neighbors
    }
}

/// An order- and marking-preserving map between marked posets.
#[derive(Debug, Clone)]
pub struct MarkedPosetMap {
    source: MarkedPoset,
    target: MarkedPoset,
    /// source element index → target element index.
    assignment: Vec<usize>,
}

impl MarkedPosetMap {
    pub fn new(
        source: MarkedPoset,
        target: MarkedPoset,
        assignment: &BTreeMap<String, String>,
    ) -> Result<MarkedPosetMap> {
        let mut by_index = vec![usize::MAX; source.len()];
        for (from, to) in assignment {
            by_index[source.poset.index_of(from)?] = target.poset.index_of(to)?;
        }
        if by_index.contains(&usize::MAX) {
            return Err(Error::NotCompatible);
        }
        let map = MarkedPosetMap {
            source,
            target,
            assignment: by_index,
        };
        map.validate()?;
        Ok(map)
    }

    pub fn identity(m: &MarkedPoset) -> MarkedPosetMap {
        MarkedPosetMap {
            source: m.clone(),
            target: m.clone(),
            assignment: (0..m.len()).collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        for p in 0..self.source.len() {
            for q in 0..self.source.len() {
                if self.source.poset.leq(p, q)
                    && !self
                        .target
                        .poset
                        .leq(self.assignment[p], self.assignment[q])
                {
                    return Err(Error::NotCompatible);
                }
            }
        }
        for (&a, v) in &self.source.marking {
            match self.target.mark(self.assignment[a]) {
                Some(w) if w == v => {}
                _ => return Err(Error::NotCompatible),
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &MarkedPoset {
        &self.source
    }

    pub fn target(&self) -> &MarkedPoset {
        &self.target
    }

    pub fn apply(&self, source_index: usize) -> usize {
        self.assignment[source_index]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        for &t in &self.assignment {
            hit[t] = true;
        }
        hit.iter().all(|&h| h)
    }

    /// f*(x) = x ∘ f. Checks x ∈ O(target); the result lies in O(source).
    pub fn pull_back_point(&self, x: &RationalPoint) -> Result<RationalPoint> {
        if !geometry::membership(&self.target, x) {
            return Err(Error::NotInPolyhedron);
        }
        let coords = (0..self.source.len())
            .map(|p| x.coord(self.assignment[p]).clone())
            .collect();
        let y = RationalPoint::from_coords(coords);
        debug_assert!(geometry::membership(&self.source, &y));
        Ok(y)
    }
}


pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller index wins so blocks list in input order.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn partition(&mut self) -> Partition {
        let n = self.parent.len();
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..n {
            let root = self.find(x);
            groups.entry(root).or_default().push(x);
        }
        Partition::from_blocks(n, groups.into_values().collect())
            .expect("union-find blocks always partition")
    }
}
