//! Finite complete lattices stored as dense order, join and meet tables.
//!
//! Elements are the indices `0..n`; labels are carried along for printing
//! and parsing only. Every finite lattice is complete, so arbitrary joins and
//! meets are folds of the binary tables starting at bottom or top.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Index of a lattice element.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    n: usize,
    leq: Vec<bool>,
    join: Vec<Elem>,
    meet: Vec<Elem>,
    bottom: Elem,
    top: Elem,
    labels: Vec<String>,
    irreducibles: Vec<Elem>,
}

impl FiniteLattice {
    /// Builds the lattice generated by a cover (or any acyclic) relation.
    pub fn from_covers<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = elements.iter().map(|e| e.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, name) in labels.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let n = labels.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let (lo, hi) = (lookup(lo.as_ref())?, lookup(hi.as_ref())?);
            if lo == hi {
                return Err(Error::Cycle(labels[lo].clone()));
            }
            leq[lo * n + hi] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::Cycle(labels[i].clone()));
                }
            }
        }
        Self::from_order(labels, leq)
    }

    /// Builds a lattice from a complete partial order table, computing joins
    /// and meets by scanning bounds.
    pub fn from_order(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if leq.len() != n * n {
            return Err(Error::TableSize {
                expected: n * n,
                found: leq.len(),
            });
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        for a in 0..n {
            if !le(a, a) {
                return Err(Error::InvalidArgument(format!(
                    "order is not reflexive at `{}`",
                    labels[a]
                )));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return Err(Error::Cycle(labels[a].clone()));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return Err(Error::InvalidArgument(format!(
                            "order is not transitive at `{}` ≤ `{}` ≤ `{}`",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lub = (0..n)
                    .filter(|&u| le(a, u) && le(b, u))
                    .find(|&u| (0..n).all(|v| !(le(a, v) && le(b, v)) || le(u, v)))
                    .ok_or_else(|| Error::NoJoin(labels[a].clone(), labels[b].clone()))?;
                let glb = (0..n)
                    .filter(|&u| le(u, a) && le(u, b))
                    .find(|&u| (0..n).all(|v| !(le(v, a) && le(v, b)) || le(v, u)))
                    .ok_or_else(|| Error::NoMeet(labels[a].clone(), labels[b].clone()))?;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| le(b, x)))
            .ok_or_else(|| Error::NoMeet(labels[0].clone(), labels[n - 1].clone()))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| le(x, t)))
            .ok_or_else(|| Error::NoJoin(labels[0].clone(), labels[n - 1].clone()))?;
        let mut lattice = Self {
            n,
            leq,
            join,
            meet,
            bottom,
            top,
            labels,
            irreducibles: Vec::new(),
        };
        lattice.irreducibles = lattice.compute_irreducibles();
        Ok(lattice)
    }

    /// Builds a lattice from an order table and a join table known to be the
    /// least upper bounds. Meets are recovered from join-irreducibles, so the
    /// cost is `O(n²·|J|)` rather than cubic.
    pub(crate) fn from_join_table(labels: Vec<String>, leq: Vec<bool>, join: Vec<Elem>) -> Self {
        let n = labels.len();
        debug_assert_eq!(leq.len(), n * n);
        debug_assert_eq!(join.len(), n * n);
        let bottom = (0..n).fold(0, |acc, x| if leq[x * n + acc] { x } else { acc });
        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        let mut lattice = Self {
            n,
            leq,
            join,
            meet: Vec::new(),
            bottom,
            top,
            labels,
            irreducibles: Vec::new(),
        };
        lattice.irreducibles = lattice.compute_irreducibles();
        let mut meet = vec![bottom; n * n];
        let below: Vec<Vec<Elem>> = (0..n)
            .map(|x| {
                lattice
                    .irreducibles
                    .iter()
                    .copied()
                    .filter(|&j| lattice.leq(j, x))
                    .collect()
            })
            .collect();
        for a in 0..n {
            for b in a..n {
                let m = below[a]
                    .iter()
                    .filter(|&&j| lattice.leq(j, b))
                    .fold(bottom, |acc, &j| lattice.join(acc, j));
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        lattice.meet = meet;
        lattice
    }

    fn compute_irreducibles(&self) -> Vec<Elem> {
        (0..self.n)
            .filter(|&j| {
                j != self.bottom
                    && (0..self.n)
                        .filter(|&x| x != j && self.leq(x, j))
                        .fold(self.bottom, |acc, x| self.join(acc, x))
                        != j
            })
            .collect()
    }

    /// The chain `0 < 1 < … < k-1`.
    pub fn chain(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Empty);
        }
        let labels: Vec<String> = (0..k).map(|i| chain_label(i, k)).collect();
        let covers: Vec<(String, String)> = (1..k)
            .map(|i| (labels[i - 1].clone(), labels[i].clone()))
            .collect();
        Self::from_covers(&labels, &covers)
    }

    /// The Boolean algebra of subsets of a `k`-element set.
    pub fn boolean(k: usize) -> Result<Self> {
        let n = 1usize << k;
        let labels: Vec<String> = (0..n)
            .map(|s| {
                if s == 0 {
                    "0".to_string()
                } else if s == n - 1 {
                    "1".to_string()
                } else {
                    (0..k)
                        .filter(|i| s & (1 << i) != 0)
                        .map(|i| (b'a' + i as u8) as char)
                        .collect()
                }
            })
            .collect();
        let leq = (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                a & !b == 0
            })
            .collect();
        Self::from_order(labels, leq)
    }

    /// The diamond `M3`: three atoms under a common top.
    pub fn m3() -> Self {
        Self::from_covers(
            &["0", "a", "b", "c", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("0", "c"),
                ("a", "1"),
                ("b", "1"),
                ("c", "1"),
            ],
        )
        .expect("M3 is a lattice")
    }

    /// The pentagon `N5`: `0 < a < b < 1` and `0 < c < 1`.
    pub fn n5() -> Self {
        Self::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
        )
        .expect("N5 is a lattice")
    }

    /// Cartesian product with componentwise order; element indices are
    /// mixed-radix with the first factor most significant.
    pub fn product(factors: &[&FiniteLattice]) -> Self {
        let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
        let n: usize = sizes.iter().product();
        let decode = |mut x: usize| {
            let mut parts = vec![0; sizes.len()];
            for (slot, &s) in parts.iter_mut().zip(&sizes).rev() {
                *slot = x % s;
                x /= s;
            }
            parts
        };
        let encode = |parts: &[usize]| parts.iter().zip(&sizes).fold(0, |acc, (&p, &s)| acc * s + p);
        let tuples: Vec<Vec<usize>> = (0..n).map(decode).collect();
        let labels = tuples
            .iter()
            .map(|t| {
                let inner: Vec<&str> = t
                    .iter()
                    .zip(factors)
                    .map(|(&x, f)| f.label(x))
                    .collect();
                format!("({})", inner.join(";"))
            })
            .collect();
        let mut leq = vec![false; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let (ta, tb) = (&tuples[a], &tuples[b]);
                leq[a * n + b] = factors
                    .iter()
                    .enumerate()
                    .all(|(i, f)| f.leq(ta[i], tb[i]));
                let j: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.join(ta[i], tb[i]))
                    .collect();
                join[a * n + b] = encode(&j);
            }
        }
        Self::from_join_table(labels, leq, join)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn lt(&self, a: Elem, b: Elem) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n + b]
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n + b]
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn top(&self) -> Elem {
        self.top
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.n
    }

    pub fn join_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    /// Replaces the element names; the count must match.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::TableSize {
                expected: self.n,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    /// Join-irreducible elements in index order. Every element is the join of
    /// the irreducibles below it.
    pub fn join_irreducibles(&self) -> &[Elem] {
        &self.irreducibles
    }

    /// The opposite lattice. Indices are kept; labels gain or lose a `'`.
    pub fn op_dual(&self) -> Self {
        let n = self.n;
        let leq = (0..n * n).map(|i| self.leq[(i % n) * n + i / n]).collect();
        let mut dual = Self {
            n,
            leq,
            join: self.meet.clone(),
            meet: self.join.clone(),
            bottom: self.top,
            top: self.bottom,
            labels: self.labels.iter().map(|l| prime(l)).collect(),
            irreducibles: Vec::new(),
        };
        dual.irreducibles = dual.compute_irreducibles();
        dual
    }

    /// The cover relation `x ⋖ y`, in lexicographic order.
    ///
    /// Uses `x ⋖ y ⟺ x < y ∧ x ∨ j = y` for every irreducible `j ≤ y`,
    /// `j ≰ x`.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y)
                    && self
                        .irreducibles
                        .iter()
                        .filter(|&&j| self.leq(j, y) && !self.leq(j, x))
                        .all(|&j| self.join(x, j) == y)
                {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// A triple `(a, b, c)` with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`, if any.
    pub fn distributivity_witness(&self) -> Option<(Elem, Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// For finite lattices complete distributivity coincides with binary
    /// distributivity.
    pub fn is_completely_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// True iff `map` is a bijection onto `other` with `x ≤ y ⟺ map[x] ≤ map[y]`.
    pub fn is_order_isomorphism(&self, other: &FiniteLattice, map: &[Elem]) -> bool {
        is_order_embedding_onto(
            self.n,
            other.n,
            map,
            |a, b| self.leq(a, b),
            |a, b| other.leq(a, b),
        )
    }
}

/// Checks that `map: 0..n → 0..m` is a bijection reflecting and preserving
/// the given orders.
pub fn is_order_embedding_onto(
    n: usize,
    m: usize,
    map: &[usize],
    src_leq: impl Fn(usize, usize) -> bool,
    dst_leq: impl Fn(usize, usize) -> bool,
) -> bool {
    if n != m || map.len() != n {
        return false;
    }
    let mut seen = vec![false; m];
    for &y in map {
        if y >= m || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    (0..n).all(|a| (0..n).all(|b| src_leq(a, b) == dst_leq(map[a], map[b])))
}

fn chain_label(i: usize, k: usize) -> String {
    match (i, k) {
        (0, _) => "0".to_string(),
        (i, k) if i + 1 == k => "1".to_string(),
        (i, 3) if i == 1 => "m".to_string(),
        (i, _) => format!("m{i}"),
    }
}

/// Toggles the trailing `'` that marks elements of an opposite lattice.
pub(crate) fn prime(label: &str) -> String {
    match label.strip_suffix('\'') {
        Some(base) => base.to_string(),
        None => format!("{label}'"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_lattice_laws(l: &FiniteLattice) {
        for a in l.elements() {
            assert_eq!(l.join(a, a), a);
            assert_eq!(l.meet(a, a), a);
            assert!(l.leq(l.bottom(), a) && l.leq(a, l.top()));
            for b in l.elements() {
                assert_eq!(l.join(a, b), l.join(b, a));
                assert_eq!(l.meet(a, b), l.meet(b, a));
                assert_eq!(l.join(a, l.meet(a, b)), a);
                assert_eq!(l.meet(a, l.join(a, b)), a);
                assert_eq!(l.leq(a, b), l.join(a, b) == b);
                for c in l.elements() {
                    assert_eq!(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
                    assert_eq!(l.meet(a, l.meet(b, c)), l.meet(l.meet(a, b), c));
                }
            }
        }
    }

    #[test]
    fn two_chain() {
        let l = FiniteLattice::from_covers(&["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(l.size(), 2);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 1);
        assert_lattice_laws(&l);
    }

    #[test]
    fn m3_tables() {
        let l = FiniteLattice::m3();
        let (a, b) = (l.index_of("a").unwrap(), l.index_of("b").unwrap());
        assert_eq!(l.label(l.join(a, b)), "1");
        assert_eq!(l.label(l.meet(a, b)), "0");
        assert_lattice_laws(&l);
    }

    #[test]
    fn missing_join_is_rejected() {
        let err = FiniteLattice::from_covers(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b")])
            .unwrap_err();
        assert!(matches!(err, Error::NoJoin(..)), "{err}");
    }

    #[test]
    fn cycles_and_duplicates_are_rejected() {
        let cyc = FiniteLattice::from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(cyc, Err(Error::Cycle(_))));
        let dup = FiniteLattice::from_covers(&["a", "a"], &[]);
        assert!(matches!(dup, Err(Error::DuplicateElement(_))));
        let unknown = FiniteLattice::from_covers(&["a"], &[("a", "z")]);
        assert!(matches!(unknown, Err(Error::UnknownElement(_))));
    }

    #[test]
    fn op_dual_swaps_roles() {
        let c2 = FiniteLattice::chain(2).unwrap();
        let d = c2.op_dual();
        assert_eq!(d.bottom(), c2.top());
        assert_eq!(d.top(), c2.bottom());
        assert_eq!(d.label(0), "0'");
        assert_eq!(d.op_dual(), c2);

        let n5 = FiniteLattice::n5();
        let d = n5.op_dual();
        assert_lattice_laws(&d);
        for a in n5.elements() {
            for b in n5.elements() {
                assert_eq!(d.leq(a, b), n5.leq(b, a));
                assert_eq!(d.join(a, b), n5.meet(a, b));
            }
        }
        assert_eq!(d.op_dual(), n5);
    }

    #[test]
    fn distributivity() {
        assert!(FiniteLattice::chain(4).unwrap().is_completely_distributive());
        assert!(FiniteLattice::boolean(3).unwrap().is_completely_distributive());
        let m3 = FiniteLattice::m3();
        let (a, b, c) = m3.distributivity_witness().unwrap();
        assert_ne!(
            m3.meet(a, m3.join(b, c)),
            m3.join(m3.meet(a, b), m3.meet(a, c))
        );
        assert!(!FiniteLattice::n5().is_completely_distributive());
        assert!(!FiniteLattice::n5().op_dual().is_completely_distributive());
    }

    #[test]
    fn irreducibles_and_covers() {
        let b2 = FiniteLattice::boolean(2).unwrap();
        assert_eq!(b2.join_irreducibles().len(), 2);
        assert_eq!(b2.covers().len(), 4);
        let n5 = FiniteLattice::n5();
        let names: Vec<&str> = n5.join_irreducibles().iter().map(|&j| n5.label(j)).collect();
        assert_eq!(names, ["a", "b", "c"]);
        assert_eq!(n5.covers().len(), 5);
    }

    #[test]
    fn product_matches_order_scan() {
        let c2 = FiniteLattice::chain(2).unwrap();
        let c3 = FiniteLattice::chain(3).unwrap();
        let p = FiniteLattice::product(&[&c2, &c3]);
        assert_eq!(p.size(), 6);
        assert_lattice_laws(&p);
        let scanned = FiniteLattice::from_order(p.labels().to_vec(), p.leq.clone()).unwrap();
        assert_eq!(scanned, p);
        let empty = FiniteLattice::product(&[]);
        assert_eq!(empty.size(), 1);
    }

    #[test]
    fn boolean_is_product_of_chains() {
        let b2 = FiniteLattice::boolean(2).unwrap();
        let c2 = FiniteLattice::chain(2).unwrap();
        let p = FiniteLattice::product(&[&c2, &c2]);
        // subset bits (a, b) ↦ tuple (b, a) in mixed radix
        let map: Vec<usize> = (0..4).map(|s| ((s & 1) << 1) | (s >> 1)).collect();
        assert!(b2.is_order_isomorphism(&p, &map));
    }
}
