//! Quantales as multiplication tables over finite lattices.
//!
//! Validation happens at construction. Distributivity is checked against
//! joins with join-irreducibles, and because a multiplication that preserves
//! joins in each argument is determined by its values on irreducibles,
//! associativity is then checked on irreducible triples only. A failure is
//! always reported with a concrete triple.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quantale {
    lattice: Arc<FiniteLattice>,
    mul: Vec<Elem>,
    unit: Option<Elem>,
}

/// Right-, left- and two-sided elements, each in index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SidedSets {
    pub right: Vec<Elem>,
    pub left: Vec<Elem>,
    pub two: Vec<Elem>,
}

impl Quantale {
    /// Validates the table and discovers the unit, if one exists.
    pub fn new(lattice: Arc<FiniteLattice>, mul: Vec<Elem>) -> Result<Self> {
        validate(&lattice, &mul)?;
        let unit = find_unit(&lattice, &mul);
        Ok(Self { lattice, mul, unit })
    }

    /// Like [`Quantale::new`] but checks a declared unit instead of searching.
    pub fn with_unit(lattice: Arc<FiniteLattice>, mul: Vec<Elem>, unit: Elem) -> Result<Self> {
        validate(&lattice, &mul)?;
        if unit >= lattice.size() {
            return Err(Error::OutOfRange(unit));
        }
        let n = lattice.size();
        if (0..n).any(|a| mul[unit * n + a] != a || mul[a * n + unit] != a) {
            return Err(Error::NotNeutral(lattice.label(unit).to_string()));
        }
        Ok(Self {
            lattice,
            mul,
            unit: Some(unit),
        })
    }

    /// `a·b = a ∧ b`. This is a quantale exactly when the lattice is
    /// distributive.
    pub fn meet_quantale(lattice: Arc<FiniteLattice>) -> Result<Self> {
        let mul = lattice
            .elements()
            .flat_map(|a| lattice.elements().map(move |b| (a, b)))
            .map(|(a, b)| lattice.meet(a, b))
            .collect();
        Self::new(lattice, mul)
    }

    /// `a·b = 0` for all `a, b`.
    pub fn zero_multiplication(lattice: Arc<FiniteLattice>) -> Self {
        let n = lattice.size();
        let mul = vec![lattice.bottom(); n * n];
        Self {
            unit: find_unit(&lattice, &mul),
            lattice,
            mul,
        }
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size() + b]
    }

    pub fn table(&self) -> &[Elem] {
        &self.mul
    }

    pub fn unit(&self) -> Option<Elem> {
        self.unit
    }

    pub fn top(&self) -> Elem {
        self.lattice.top()
    }

    pub fn bottom(&self) -> Elem {
        self.lattice.bottom()
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.lattice.join(a, b)
    }

    pub fn label(&self, a: Elem) -> &str {
        self.lattice.label(a)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        self.lattice.elements()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `b ← a = ⋁{c | a·c ≤ b}`.
    pub fn residual_left(&self, b: Elem, a: Elem) -> Elem {
        self.lattice
            .join_all(self.elements().filter(|&c| self.leq(self.mul(a, c), b)))
    }

    /// `a → b = ⋁{c | c·a ≤ b}`.
    pub fn residual_right(&self, a: Elem, b: Elem) -> Elem {
        self.lattice
            .join_all(self.elements().filter(|&c| self.leq(self.mul(c, a), b)))
    }

    pub fn is_right_sided(&self, r: Elem) -> bool {
        self.leq(self.mul(r, self.top()), r)
    }

    pub fn is_left_sided(&self, l: Elem) -> bool {
        self.leq(self.mul(self.top(), l), l)
    }

    pub fn sided_sets(&self) -> SidedSets {
        let right: Vec<Elem> = self.elements().filter(|&r| self.is_right_sided(r)).collect();
        let left: Vec<Elem> = self.elements().filter(|&l| self.is_left_sided(l)).collect();
        let two = right.iter().copied().filter(|r| left.contains(r)).collect();
        SidedSets { right, left, two }
    }

    /// `r·1 = r` and `1·l = l` for all sided elements.
    pub fn is_semiunital(&self) -> bool {
        let one = self.top();
        let sided = self.sided_sets();
        sided.right.iter().all(|&r| self.mul(r, one) == r)
            && sided.left.iter().all(|&l| self.mul(one, l) == l)
    }

    /// The annulators `r ↦ r→0` and `l ↦ 0←l` are mutually inverse
    /// order-reversing bijections between right- and left-sided elements.
    pub fn is_von_neumann(&self) -> bool {
        let zero = self.bottom();
        let sided = self.sided_sets();
        let to_left = |r| self.residual_right(r, zero);
        let to_right = |l| self.residual_left(zero, l);
        sided
            .right
            .iter()
            .all(|&r| self.is_left_sided(to_left(r)) && to_right(to_left(r)) == r)
            && sided
                .left
                .iter()
                .all(|&l| self.is_right_sided(to_right(l)) && to_left(to_right(l)) == l)
            && sided.right.iter().all(|&r| {
                sided
                    .right
                    .iter()
                    .all(|&s| !self.leq(r, s) || self.leq(to_left(s), to_left(r)))
            })
    }

    /// `a·b ≤ d ⟺ b·a ≤ d` for all `a, b`.
    pub fn is_cyclic_element(&self, d: Elem) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.leq(self.mul(a, b), d) == self.leq(self.mul(b, a), d))
        })
    }

    /// `d ← (a → d) = (d ← a) → d = a` for all `a`.
    pub fn is_dualizing_element(&self, d: Elem) -> bool {
        let right: Vec<Elem> = self.elements().map(|a| self.residual_right(a, d)).collect();
        let left: Vec<Elem> = self.elements().map(|a| self.residual_left(d, a)).collect();
        self.elements()
            .all(|a| self.residual_left(d, right[a]) == a && self.residual_right(left[a], d) == a)
    }

    /// Every cyclic dualizing element, by exhaustive search.
    pub fn girard_elements(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&d| self.is_cyclic_element(d) && self.is_dualizing_element(d))
            .collect()
    }

    pub fn is_girard(&self) -> bool {
        self.elements()
            .any(|d| self.is_cyclic_element(d) && self.is_dualizing_element(d))
    }

    /// Exhaustive cubic check of associativity and binary distributivity.
    /// Independent of the irreducible-based validation; meant for small
    /// quantales and for tests.
    pub fn exhaustive_law_failure(&self) -> Option<String> {
        exhaustive_failure(&self.lattice, &self.mul)
    }
}

pub(crate) fn exhaustive_failure(lattice: &FiniteLattice, mul: &[Elem]) -> Option<String> {
    let n = lattice.size();
    let m = |a: usize, b: usize| mul[a * n + b];
    let l = |x: usize| lattice.label(x);
    for a in 0..n {
        if m(a, lattice.bottom()) != lattice.bottom() || m(lattice.bottom(), a) != lattice.bottom()
        {
            return Some(format!("0 not absorbing at {}", l(a)));
        }
        for b in 0..n {
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Some(format!("associativity fails at ({}, {}, {})", l(a), l(b), l(c)));
                }
                if m(a, lattice.join(b, c)) != lattice.join(m(a, b), m(a, c)) {
                    return Some(format!("left distributivity fails at ({}, {}, {})", l(a), l(b), l(c)));
                }
                if m(lattice.join(b, c), a) != lattice.join(m(b, a), m(c, a)) {
                    return Some(format!("right distributivity fails at ({}, {}, {})", l(a), l(b), l(c)));
                }
            }
        }
    }
    None
}

fn validate(lattice: &FiniteLattice, mul: &[Elem]) -> Result<()> {
    let n = lattice.size();
    if mul.len() != n * n {
        return Err(Error::TableSize {
            expected: n * n,
            found: mul.len(),
        });
    }
    if let Some(&bad) = mul.iter().find(|&&x| x >= n) {
        return Err(Error::OutOfRange(bad));
    }
    let m = |a: usize, b: usize| mul[a * n + b];
    let zero = lattice.bottom();
    let label = |x: usize| lattice.label(x).to_string();
    for a in 0..n {
        if m(a, zero) != zero || m(zero, a) != zero {
            return Err(Error::ZeroNotAbsorbing(label(a)));
        }
    }
    // f(x ∨ j) = f(x) ∨ f(j) for every x and irreducible j gives all binary
    // joins by induction on the irreducible decomposition.
    let irr = lattice.join_irreducibles();
    for a in 0..n {
        for x in 0..n {
            for &j in irr {
                let xj = lattice.join(x, j);
                if m(a, xj) != lattice.join(m(a, x), m(a, j)) {
                    return Err(Error::NotLeftDistributive {
                        a: label(a),
                        b: label(x),
                        c: label(j),
                    });
                }
                if m(xj, a) != lattice.join(m(x, a), m(j, a)) {
                    return Err(Error::NotRightDistributive {
                        a: label(a),
                        b: label(x),
                        c: label(j),
                    });
                }
            }
        }
    }
    for &a in irr {
        for &b in irr {
            for &c in irr {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(Error::NotAssociative {
                        a: label(a),
                        b: label(b),
                        c: label(c),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Units are unique; by distributivity it is enough to test on irreducibles.
fn find_unit(lattice: &FiniteLattice, mul: &[Elem]) -> Option<Elem> {
    let n = lattice.size();
    let irr = lattice.join_irreducibles();
    (0..n).find(|&e| {
        irr.iter()
            .all(|&j| mul[e * n + j] == j && mul[j * n + e] == j)
    })
}
