//! Tensor products of finite sup-lattices.
//!
//! An element of `S ⊗ T` is represented by its bi-ideal: the set of pairs
//! `(s, t)` with `s ⊗ t` below it. Bi-ideals are down-closed, contain every
//! pair with a zero coordinate, and are closed under joins taken in one slot
//! with the other slot fixed. The generator `x ⊗ y` is the least bi-ideal
//! containing `(x, y)`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::endo::EndoQuantale;
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};

/// A subset of `S × T`, pair `(s, t)` at bit `s·|T| + t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiIdeal {
    bits: Vec<u64>,
}

impl BiIdeal {
    fn empty(pairs: usize) -> Self {
        Self {
            bits: vec![0; pairs.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.bits[w] >> b & 1 == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    fn get(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn union(&self, other: &Self) -> Self {
        Self {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect(),
        }
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> u32 {
        self.bits.iter().map(|w| w.count_ones()).sum()
    }
}

#[derive(Debug, Clone)]
pub struct TensorProduct {
    left: Arc<FiniteLattice>,
    right: Arc<FiniteLattice>,
    ideals: Vec<BiIdeal>,
    index: HashMap<BiIdeal, Elem>,
    generators: Vec<Elem>,
    lattice: Arc<FiniteLattice>,
}

impl TensorProduct {
    /// Enumerates all bi-ideals by closing the generators under joins.
    pub fn new(left: Arc<FiniteLattice>, right: Arc<FiniteLattice>, budget: &Budget) -> Result<Self> {
        let pairs = left.size() * right.size();
        Budget::check("tensor product pairs", pairs as u128, budget.tensor_pairs as u128)?;
        let closer = Closer::new(&left, &right);

        let mut generator_ideals = Vec::with_capacity(pairs);
        for x in left.elements() {
            for y in right.elements() {
                let mut seed = BiIdeal::empty(pairs);
                seed.insert(x * right.size() + y);
                generator_ideals.push(closer.close(seed));
            }
        }

        let mut found: Vec<BiIdeal> = vec![closer.close(BiIdeal::empty(pairs))];
        let mut seen: HashMap<BiIdeal, ()> = HashMap::new();
        seen.insert(found[0].clone(), ());
        for g in &generator_ideals {
            if seen.insert(g.clone(), ()).is_none() {
                found.push(g.clone());
            }
        }
        let mut frontier = 0;
        while frontier < found.len() {
            let a = found[frontier].clone();
            let mut k = 0;
            while k < found.len() {
                let joined = closer.close(a.union(&found[k]));
                if seen.insert(joined.clone(), ()).is_none() {
                    found.push(joined);
                }
                k += 1;
            }
            frontier += 1;
        }
        found.sort_by(|a, b| (a.count(), a).cmp(&(b.count(), b)));
        let index: HashMap<BiIdeal, Elem> =
            found.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let n = found.len();
        let mut leq = vec![false; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = found[a].is_subset(&found[b]);
                join[a * n + b] = index[&closer.close(found[a].union(&found[b]))];
            }
        }
        let labels = found.iter().map(|r| ideal_label(&left, &right, r)).collect();
        let lattice = Arc::new(FiniteLattice::from_join_table(labels, leq, join));
        let generators = generator_ideals.iter().map(|g| index[g]).collect();
        Ok(Self {
            left,
            right,
            ideals: found,
            index,
            generators,
            lattice,
        })
    }

    pub fn lattice(&self) -> &Arc<FiniteLattice> {
        &self.lattice
    }

    pub fn left(&self) -> &Arc<FiniteLattice> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FiniteLattice> {
        &self.right
    }

    pub fn size(&self) -> usize {
        self.ideals.len()
    }

    /// Index of `x ⊗ y`.
    pub fn generator(&self, x: Elem, y: Elem) -> Elem {
        self.generators[x * self.right.size() + y]
    }

    pub fn ideal(&self, c: Elem) -> &BiIdeal {
        &self.ideals[c]
    }

    pub fn index_of(&self, ideal: &BiIdeal) -> Option<Elem> {
        self.index.get(ideal).copied()
    }

    /// `x ⊗ y ≤ c`, i.e. `(x, y)` belongs to the bi-ideal of `c`.
    pub fn contains(&self, c: Elem, x: Elem, y: Elem) -> bool {
        self.ideals[c].get(x * self.right.size() + y)
    }

    /// The pairs of the bi-ideal of `c` with both coordinates nonzero.
    pub fn members(&self, c: Elem) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        let (l, r) = (&self.left, &self.right);
        l.elements()
            .filter(move |&x| x != l.bottom())
            .flat_map(move |x| {
                r.elements()
                    .filter(move |&y| y != r.bottom())
                    .map(move |y| (x, y))
            })
            .filter(move |&(x, y)| self.contains(c, x, y))
    }

    /// Least bi-ideal containing `pairs`, without going through the table.
    pub fn close_pairs(&self, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> BiIdeal {
        let mut seed = BiIdeal::empty(self.left.size() * self.right.size());
        for (x, y) in pairs {
            seed.insert(x * self.right.size() + y);
        }
        Closer::new(&self.left, &self.right).close(seed)
    }
}

/// Fixpoint closure under down-closure, zero pairs, and slotwise joins.
struct Closer<'a> {
    left: &'a FiniteLattice,
    right: &'a FiniteLattice,
}

impl<'a> Closer<'a> {
    fn new(left: &'a FiniteLattice, right: &'a FiniteLattice) -> Self {
        Self { left, right }
    }

    fn close(&self, mut r: BiIdeal) -> BiIdeal {
        let (s, t) = (self.left, self.right);
        let m = t.size();
        for x in s.elements() {
            r.insert(x * m + t.bottom());
        }
        for y in t.elements() {
            r.insert(s.bottom() * m + y);
        }
        loop {
            let mut changed = false;
            // join-closure in the left slot, then in the right slot
            for y in t.elements() {
                let top = s.join_all(s.elements().filter(|&x| r.get(x * m + y)));
                changed |= r.insert(top * m + y);
            }
            for x in s.elements() {
                let top = t.join_all(t.elements().filter(|&y| r.get(x * m + y)));
                changed |= r.insert(x * m + top);
            }
            // down-closure
            for x in s.elements() {
                for y in t.elements() {
                    if !r.get(x * m + y) {
                        continue;
                    }
                    for x2 in s.elements().filter(|&x2| s.leq(x2, x)) {
                        for y2 in t.elements().filter(|&y2| t.leq(y2, y)) {
                            changed |= r.insert(x2 * m + y2);
                        }
                    }
                }
            }
            if !changed {
                return r;
            }
        }
    }
}

fn ideal_label(s: &FiniteLattice, t: &FiniteLattice, r: &BiIdeal) -> String {
    let m = t.size();
    let members: Vec<(Elem, Elem)> = s
        .elements()
        .filter(|&x| x != s.bottom())
        .flat_map(|x| t.elements().filter(|&y| y != t.bottom()).map(move |y| (x, y)))
        .filter(|&(x, y)| r.get(x * m + y))
        .collect();
    let maximal: Vec<String> = members
        .iter()
        .filter(|&&(x, y)| {
            !members
                .iter()
                .any(|&(u, v)| (u, v) != (x, y) && s.leq(x, u) && t.leq(y, v))
        })
        .map(|&(x, y)| format!("{}@{}", s.label(x), t.label(y)))
        .collect();
    if maximal.is_empty() {
        "0".to_string()
    } else {
        maximal.join("+")
    }
}

/// The order-reversing bijection between `S ⊗ S^op` and `Q(S)` given by
/// `(x ⊗ y')⊥ = λ_x ∨ ρ_y`, extended through the relation
/// `α ⊥ c ⟺ (x ⊗ y' ≤ c ⟹ α ≤ λ_x ∨ ρ_y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorEndoDuality {
    /// `c ↦ ⋀{λ_x ∨ ρ_y | x ⊗ y' ≤ c}`.
    pub to_endo: Vec<Elem>,
    /// `α ↦ ⋁{x ⊗ y' | α ≤ λ_x ∨ ρ_y}`.
    pub to_tensor: Vec<Elem>,
}

/// Builds and verifies the duality. `tensor` must be `S ⊗ S^op` for the base
/// `S` of `endo`.
pub fn tensor_dual_to_endo(tensor: &TensorProduct, endo: &EndoQuantale) -> Result<TensorEndoDuality> {
    let s = endo.base();
    if **tensor.left() != **s || **tensor.right() != s.op_dual() {
        return Err(Error::InvalidArgument(
            "tensor product is not S ⊗ S^op for the endomorphism base".into(),
        ));
    }
    let q = endo.quantale();
    let ql = q.lattice();
    let cl = tensor.lattice();
    let witness: Vec<Elem> = s
        .elements()
        .flat_map(|x| s.elements().map(move |y| (x, y)))
        .map(|(x, y)| ql.join(endo.lambda(x), endo.rho(y)))
        .collect();
    let w = |x: Elem, y: Elem| witness[x * s.size() + y];

    let to_endo: Vec<Elem> = cl
        .elements()
        .map(|c| ql.meet_all(tensor.members(c).map(|(x, y)| w(x, y))))
        .collect();
    let to_tensor: Vec<Elem> = ql
        .elements()
        .map(|alpha| {
            cl.join_all(
                s.elements()
                    .flat_map(|x| s.elements().map(move |y| (x, y)))
                    .filter(|&(x, y)| ql.leq(alpha, w(x, y)))
                    .map(|(x, y)| tensor.generator(x, y)),
            )
        })
        .collect();

    let fail = |what: &str| Err(Error::InvalidArgument(format!("tensor/endo duality: {what}")));
    if cl.size() != ql.size() {
        return fail("sizes differ");
    }
    for c in cl.elements() {
        if to_tensor[to_endo[c]] != c {
            return fail("not inverse on the tensor side");
        }
    }
    for alpha in ql.elements() {
        if to_endo[to_tensor[alpha]] != alpha {
            return fail("not inverse on the endomorphism side");
        }
    }
    for a in cl.elements() {
        for b in cl.elements() {
            if cl.leq(a, b) != ql.leq(to_endo[b], to_endo[a]) {
                return fail("not order-reversing");
            }
        }
    }
    Ok(TensorEndoDuality { to_endo, to_tensor })
}
