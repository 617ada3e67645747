//! Join-preserving maps between finite lattices, their right adjoints and
//! duals, and exhaustive enumeration.

use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupMap {
    source: Arc<FiniteLattice>,
    target: Arc<FiniteLattice>,
    table: Vec<Elem>,
}

impl SupMap {
    /// Validates that `table` preserves bottom and binary joins.
    pub fn new(
        source: Arc<FiniteLattice>,
        target: Arc<FiniteLattice>,
        table: Vec<Elem>,
    ) -> Result<Self> {
        if let Some((x, y)) = join_failure(&source, &target, &table)? {
            return Err(Error::NotJoinPreserving {
                x: source.label(x).to_string(),
                y: source.label(y).to_string(),
            });
        }
        Ok(Self {
            source,
            target,
            table,
        })
    }

    pub(crate) fn new_unchecked(
        source: Arc<FiniteLattice>,
        target: Arc<FiniteLattice>,
        table: Vec<Elem>,
    ) -> Self {
        Self {
            source,
            target,
            table,
        }
    }

    pub fn identity(lattice: Arc<FiniteLattice>) -> Self {
        let table = lattice.elements().collect();
        Self::new_unchecked(lattice.clone(), lattice, table)
    }

    pub fn constant_bottom(source: Arc<FiniteLattice>, target: Arc<FiniteLattice>) -> Self {
        let table = vec![target.bottom(); source.size()];
        Self::new_unchecked(source, target, table)
    }

    pub fn source(&self) -> &Arc<FiniteLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteLattice> {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    /// `f♯(t) = ⋁{s | f(s) ≤ t}`, the meet-preserving right adjoint.
    pub fn right_adjoint(&self) -> Vec<Elem> {
        right_adjoint_table(&self.source, &self.target, &self.table)
    }

    /// The dual map `f*: T^op → S^op`, `f*(t') = f♯(t)'`.
    pub fn dual(&self) -> SupMap {
        SupMap::new_unchecked(
            Arc::new(self.target.op_dual()),
            Arc::new(self.source.op_dual()),
            self.right_adjoint(),
        )
    }

    /// Preserves the top element.
    pub fn is_strong(&self) -> bool {
        self.table[self.source.top()] == self.target.top()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SupMap) -> SupMap {
        let table = inner.table.iter().map(|&x| self.table[x]).collect();
        SupMap::new_unchecked(inner.source.clone(), self.target.clone(), table)
    }
}

pub(crate) fn right_adjoint_table(
    source: &FiniteLattice,
    target: &FiniteLattice,
    table: &[Elem],
) -> Vec<Elem> {
    target
        .elements()
        .map(|t| source.join_all(source.elements().filter(|&s| target.leq(table[s], t))))
        .collect()
}

/// Returns a pair whose join is not preserved, or `Ok(None)` for a sup-map.
fn join_failure(
    source: &FiniteLattice,
    target: &FiniteLattice,
    table: &[Elem],
) -> Result<Option<(Elem, Elem)>> {
    if table.len() != source.size() {
        return Err(Error::TableSize {
            expected: source.size(),
            found: table.len(),
        });
    }
    if let Some(&bad) = table.iter().find(|&&y| y >= target.size()) {
        return Err(Error::OutOfRange(bad));
    }
    if table[source.bottom()] != target.bottom() {
        return Err(Error::BottomNotPreserved);
    }
    // joins with irreducibles generate all binary joins
    for x in source.elements() {
        for &j in source.join_irreducibles() {
            if table[source.join(x, j)] != target.join(table[x], table[j]) {
                return Ok(Some((x, j)));
            }
        }
    }
    Ok(None)
}

pub(crate) fn is_sup_map(source: &FiniteLattice, target: &FiniteLattice, table: &[Elem]) -> bool {
    matches!(join_failure(source, target, table), Ok(None))
}

/// All join-preserving maps `S → T`, ordered lexicographically by the images
/// of the join-irreducibles of `S`.
pub fn enumerate_sup_maps(
    source: &Arc<FiniteLattice>,
    target: &Arc<FiniteLattice>,
    budget: &Budget,
) -> Result<Vec<SupMap>> {
    let irreducibles = source.join_irreducibles();
    let needed = (target.size() as u128).saturating_pow(irreducibles.len() as u32);
    Budget::check("sup-map candidates", needed, budget.enumeration as u128)?;

    // For each irreducible, the earlier irreducibles below it: images must be
    // monotone along these.
    let below: Vec<Vec<usize>> = irreducibles
        .iter()
        .map(|&j| {
            irreducibles
                .iter()
                .enumerate()
                .filter(|&(_, &i)| i != j && source.leq(i, j))
                .map(|(k, _)| k)
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut images = vec![0; irreducibles.len()];
    extend(source, target, irreducibles, &below, &mut images, 0, &mut out);
    Ok(out)
}

fn extend(
    source: &Arc<FiniteLattice>,
    target: &Arc<FiniteLattice>,
    irreducibles: &[Elem],
    below: &[Vec<usize>],
    images: &mut Vec<Elem>,
    depth: usize,
    out: &mut Vec<SupMap>,
) {
    if depth == irreducibles.len() {
        let table: Vec<Elem> = source
            .elements()
            .map(|x| {
                target.join_all(
                    irreducibles
                        .iter()
                        .zip(images.iter())
                        .filter(|&(&j, _)| source.leq(j, x))
                        .map(|(_, &img)| img),
                )
            })
            .collect();
        if is_sup_map(source, target, &table) {
            out.push(SupMap::new_unchecked(source.clone(), target.clone(), table));
        }
        return;
    }
    for t in target.elements() {
        // monotone on the irreducibles already placed
        if below[depth]
            .iter()
            .filter(|&&k| k < depth)
            .all(|&k| target.leq(images[k], t))
        {
            images[depth] = t;
            extend(source, target, irreducibles, below, images, depth + 1, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(l: FiniteLattice) -> Arc<FiniteLattice> {
        Arc::new(l)
    }

    /// All maps `S → T` filtered by join preservation, without the
    /// irreducible decomposition.
    fn brute_force_count(s: &FiniteLattice, t: &FiniteLattice) -> usize {
        let n = s.size();
        let total = t.size().pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let table: Vec<usize> = (0..n)
                    .map(|_| {
                        let v = c % t.size();
                        c /= t.size();
                        v
                    })
                    .collect();
                table[s.bottom()] == t.bottom()
                    && s.elements().all(|a| {
                        s.elements()
                            .all(|b| table[s.join(a, b)] == t.join(table[a], table[b]))
                    })
            })
            .count()
    }

    #[test]
    fn sup_map_counts() {
        let budget = Budget::default();
        let c2 = arc(FiniteLattice::chain(2).unwrap());
        let c3 = arc(FiniteLattice::chain(3).unwrap());
        let b2 = arc(FiniteLattice::boolean(2).unwrap());
        assert_eq!(enumerate_sup_maps(&c2, &c2, &budget).unwrap().len(), 2);
        assert_eq!(enumerate_sup_maps(&c3, &c3, &budget).unwrap().len(), 6);
        assert_eq!(enumerate_sup_maps(&b2, &b2, &budget).unwrap().len(), 16);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let budget = Budget::default();
        let corpus = [
            FiniteLattice::chain(2).unwrap(),
            FiniteLattice::chain(3).unwrap(),
            FiniteLattice::boolean(2).unwrap(),
            FiniteLattice::m3(),
            FiniteLattice::n5(),
        ];
        for s in &corpus {
            for t in &corpus {
                if t.size().pow(s.size() as u32) > 400_000 {
                    continue;
                }
                let maps = enumerate_sup_maps(&arc(s.clone()), &arc(t.clone()), &budget).unwrap();
                assert_eq!(maps.len(), brute_force_count(s, t));
            }
        }
    }

    #[test]
    fn adjunction_holds_for_all_enumerated_maps() {
        let budget = Budget::default();
        for l in [FiniteLattice::chain(3).unwrap(), FiniteLattice::m3(), FiniteLattice::n5()] {
            let l = arc(l);
            for f in enumerate_sup_maps(&l, &l, &budget).unwrap() {
                let adj = f.right_adjoint();
                for s in l.elements() {
                    for t in l.elements() {
                        assert_eq!(l.leq(f.apply(s), t), l.leq(s, adj[t]));
                    }
                }
                // f♯ preserves meets
                for a in l.elements() {
                    for b in l.elements() {
                        assert_eq!(adj[l.meet(a, b)], l.meet(adj[a], adj[b]));
                    }
                }
            }
        }
    }

    #[test]
    fn right_adjoint_examples() {
        let c3 = arc(FiniteLattice::chain(3).unwrap());
        let id = SupMap::identity(c3.clone());
        assert_eq!(id.right_adjoint(), vec![0, 1, 2]);
        let zero = SupMap::constant_bottom(c3.clone(), c3.clone());
        assert_eq!(zero.right_adjoint(), vec![2, 2, 2]);
        // f(m) = 0, f(1) = 1
        let f = SupMap::new(c3.clone(), c3.clone(), vec![0, 0, 2]).unwrap();
        assert_eq!(f.right_adjoint(), vec![1, 1, 2]);
        let dual = f.dual();
        assert_eq!(dual.table(), &[1, 1, 2]);
        assert!(is_sup_map(dual.source(), dual.target(), dual.table()));
        assert_eq!(dual.source().label(1), "m'");
    }

    #[test]
    fn dual_is_an_involution() {
        let budget = Budget::default();
        let n5 = arc(FiniteLattice::n5());
        let c3 = arc(FiniteLattice::chain(3).unwrap());
        for f in enumerate_sup_maps(&n5, &c3, &budget).unwrap() {
            let dd = f.dual().dual();
            assert_eq!(dd.table(), f.table());
            assert_eq!(**dd.source(), *n5);
        }
        let zero = SupMap::constant_bottom(c3.clone(), c3.clone()).dual();
        assert!(zero.table().iter().all(|&x| x == zero.target().bottom()));
    }

    #[test]
    fn strong_maps() {
        let c2 = arc(FiniteLattice::chain(2).unwrap());
        assert!(SupMap::identity(c2.clone()).is_strong());
        assert!(!SupMap::constant_bottom(c2.clone(), c2).is_strong());
    }

    #[test]
    fn rejects_non_join_preserving_tables() {
        let b2 = arc(FiniteLattice::boolean(2).unwrap());
        // sends both atoms to themselves but top to an atom
        let err = SupMap::new(b2.clone(), b2.clone(), vec![0, 1, 2, 1]).unwrap_err();
        assert!(matches!(err, Error::NotJoinPreserving { .. }));
        let err = SupMap::new(b2.clone(), b2, vec![3, 1, 2, 3]).unwrap_err();
        assert_eq!(err, Error::BottomNotPreserved);
    }

    #[test]
    fn budget_is_enforced() {
        let b3 = arc(FiniteLattice::boolean(3).unwrap());
        let budget = Budget {
            enumeration: 100,
            ..Budget::default()
        };
        assert!(matches!(
            enumerate_sup_maps(&b3, &b3, &budget),
            Err(Error::Budget(_))
        ));
    }
}
