//! Finite posets presented by covering relations.
//!
//! Elements are opaque string identifiers; internally they are dense indices
//! in input order so that all downstream enumeration is deterministic.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    /// Covering relations (lower, upper), sorted lexicographically by index.
    covers: Vec<(usize, usize)>,
    /// Reflexive-transitive closure of the covers.
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds a poset from arbitrary order relations (not only covers).
    /// The stored covers are the transitive reduction of the closure.
    pub fn build(elements: &[String], relations: &[(String, String)]) -> Result<Poset> {
        let mut index = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let n = elements.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in relations {
            let i = *index.get(a).ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let j = *index.get(b).ok_or_else(|| Error::UnknownElement(b.clone()))?;
            leq[i][j] = true;
        }
        // Warshall closure; the posets here are tiny.
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::Cycle(elements[i].clone()));
                }
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] {
                    let implied = (0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]);
                    if !implied {
                        covers.push((i, j));
                    }
                }
            }
        }
        covers.sort();
        Ok(Poset {
            elements: elements.to_vec(),
            index,
            covers,
            leq,
        })
    }

    pub fn from_names<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Poset> {
        let es: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let rs: Vec<(String, String)> = relations
            .iter()
            .map(|(a, b)| (a.as_ref().to_string(), b.as_ref().to_string()))
            .collect();
        Poset::build(&es, &rs)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn cover_names(&self) -> Vec<(String, String)> {
        self.covers
            .iter()
            .map(|&(p, q)| (self.elements[p].clone(), self.elements[q].clone()))
            .collect()
    }

    /// p ≤ q by index.
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p][q]
    }

    pub fn less(&self, p: usize, q: usize) -> bool {
        p != q && self.leq[p][q]
    }

    pub fn less_or_equal(&self, p: &str, q: &str) -> Result<bool> {
        Ok(self.leq(self.index_of(p)?, self.index_of(q)?))
    }

    pub fn is_cover(&self, p: usize, q: usize) -> bool {
        self.covers.binary_search(&(p, q)).is_ok()
    }

    /// Neighbors of `p` in the Hasse diagram.
    pub fn hasse_neighbors(&self, p: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.covers {
            if a == p {
                out.push(b);
            } else if b == p {
                out.push(a);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Lower covers of `q`.
    pub fn lower_covers(&self, q: usize) -> Vec<usize> {
        self.covers.iter().filter(|&&(_, b)| b == q).map(|&(a, _)| a).collect()
    }

    /// Upper covers of `p`.
    pub fn upper_covers(&self, p: usize) -> Vec<usize> {
        self.covers.iter().filter(|&&(a, _)| a == p).map(|&(_, b)| b).collect()
    }

    /// { p : a ≤ p ≤ b }; empty unless a ≤ b.
    pub fn interval(&self, a: &str, b: &str) -> Result<Vec<String>> {
        let i = self.index_of(a)?;
        let j = self.index_of(b)?;
        Ok((0..self.len())
            .filter(|&p| self.leq(i, p) && self.leq(p, j))
            .map(|p| self.elements[p].clone())
            .collect())
    }

    /// Indices of elements in the Hasse component of each element; component
    /// ids are numbered by smallest member index.
    pub fn component_ids(&self) -> Vec<usize> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(p) = stack.pop() {
                for q in self.hasse_neighbors(p) {
                    if comp[q] == usize::MAX {
                        comp[q] = next;
                        stack.push(q);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Hasse-graph connected components as induced sub-posets, ordered by
    /// smallest element index.
    pub fn connected_components(&self) -> Vec<Poset> {
        let comp = self.component_ids();
        let count = comp.iter().copied().max().map_or(0, |m| m + 1);
        (0..count)
            .map(|c| {
                let members: Vec<usize> = (0..self.len()).filter(|&p| comp[p] == c).collect();
                self.induced(&members)
            })
            .collect()
    }

    /// Induced sub-poset on the given indices (input order preserved).
    pub fn induced(&self, members: &[usize]) -> Poset {
        let elements: Vec<String> = members.iter().map(|&p| self.elements[p].clone()).collect();
        let mut relations = Vec::new();
        for &p in members {
            for &q in members {
                if self.less(p, q) {
                    relations.push((self.elements[p].clone(), self.elements[q].clone()));
                }
            }
        }
        Poset::build(&elements, &relations).expect("induced sub-poset is always valid")
    }

    /// Rebuilds the poset with one covering relation removed. The remaining
    /// covers define a weaker order; the removed relation is gone entirely.
    pub fn without_cover(&self, p: usize, q: usize) -> Result<Poset> {
        if !self.is_cover(p, q) {
            return Err(Error::NotACover(
                self.elements[p].clone(),
                self.elements[q].clone(),
            ));
        }
        let relations: Vec<(String, String)> = self
            .covers
            .iter()
            .filter(|&&c| c != (p, q))
            .map(|&(a, b)| (self.elements[a].clone(), self.elements[b].clone()))
            .collect();
        Poset::build(&self.elements, &relations)
    }

    /// Indices in a topological order (linear extension), smallest index first
    /// among the available minima.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut remaining: Vec<bool> = vec![true; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let p = (0..n)
                .find(|&p| {
                    remaining[p] && (0..n).all(|q| q == p || !remaining[q] || !self.less(q, p))
                })
                .expect("acyclic by construction");
            remaining[p] = false;
            out.push(p);
        }
        out
    }
}

#[cfg(test)]
pub(crate) fn pentagon_poset() -> Poset {
    Poset::from_names(
        &["m0", "p", "q", "m4", "m1", "m3"],
        &[("m0", "p"), ("p", "q"), ("q", "m4"), ("m1", "q"), ("p", "m3")],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_poset() {
        let p = Poset::from_names::<&str>(&[], &[]).unwrap();
        assert_eq!(p.len(), 0);
        assert!(p.covers().is_empty());
        assert!(p.connected_components().is_empty());
    }

    #[test]
    fn pentagon_covers() {
        let p = pentagon_poset();
        assert_eq!(p.covers().len(), 5);
        assert!(p.less_or_equal("m0", "q").unwrap());
        assert!(p.less_or_equal("p", "p").unwrap());
        assert!(!p.less_or_equal("m1", "p").unwrap());
    }

    #[test]
    fn cycle_detected() {
        let err = Poset::from_names(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, Error::Cycle(_)));
    }

    #[test]
    fn unknown_element() {
        let err = Poset::from_names(&["a"], &[("a", "b")]).unwrap_err();
        assert_eq!(err, Error::UnknownElement("b".into()));
    }

    #[test]
    fn reduction_drops_implied_relations() {
        // a<b<c given with the implied a<c; reduction keeps 2 covers.
        let p = Poset::from_names(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(p.covers().len(), 2);
        // Rebuilding from the covers reproduces them.
        let again = Poset::build(&p.elements, &p.cover_names()).unwrap();
        assert_eq!(again.covers(), p.covers());
    }

    #[test]
    fn intervals() {
        let p = pentagon_poset();
        assert_eq!(p.interval("m0", "m4").unwrap(), vec!["m0", "p", "q", "m4"]);
        assert_eq!(p.interval("p", "p").unwrap(), vec!["p"]);
        assert!(p.interval("m1", "m3").unwrap().is_empty());
    }

    #[test]
    fn components() {
        let p = pentagon_poset();
        assert_eq!(p.connected_components().len(), 1);
        let q = Poset::from_names(
            &["m0", "p", "q", "m4", "m1", "m3", "z"],
            &[("m0", "p"), ("p", "q"), ("q", "m4"), ("m1", "q"), ("p", "m3")],
        )
        .unwrap();
        let comps = q.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), 6);
        assert_eq!(comps[1].elements(), &["z".to_string()]);
    }
}
