//! The endomorphism quantale `Q(S)` of a finite sup-lattice.

use std::collections::HashMap;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::Result;
use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::Quantale;
use crate::sup_map::{enumerate_sup_maps, right_adjoint_table, SupMap};

/// Sup-endomaps of `S` under pointwise order and composition, `α·β = α∘β`.
#[derive(Debug, Clone)]
pub struct EndoQuantale {
    base: Arc<FiniteLattice>,
    maps: Vec<Vec<Elem>>,
    index: HashMap<Vec<Elem>, Elem>,
    quantale: Quantale,
}

impl EndoQuantale {
    pub fn build(base: Arc<FiniteLattice>, budget: &Budget) -> Result<Self> {
        Budget::check(
            "endomorphism quantale base size",
            base.size() as u128,
            budget.endo_base as u128,
        )?;
        let maps: Vec<Vec<Elem>> = enumerate_sup_maps(&base, &base, budget)?
            .into_iter()
            .map(|f| f.table().to_vec())
            .collect();
        let index: HashMap<Vec<Elem>, Elem> =
            maps.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = maps.len();
        let lookup = |table: &[Elem]| index[table];

        let labels = maps
            .iter()
            .map(|m| {
                let images: Vec<&str> = m.iter().map(|&x| base.label(x)).collect();
                format!("[{}]", images.join(";"))
            })
            .collect();
        let mut leq = vec![false; n * n];
        let mut join = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for (a, f) in maps.iter().enumerate() {
            for (b, g) in maps.iter().enumerate() {
                leq[a * n + b] = base.elements().all(|x| base.leq(f[x], g[x]));
                let pointwise: Vec<Elem> = base.elements().map(|x| base.join(f[x], g[x])).collect();
                join[a * n + b] = lookup(&pointwise);
                let composite: Vec<Elem> = g.iter().map(|&x| f[x]).collect();
                mul[a * n + b] = lookup(&composite);
            }
        }
        let lattice = Arc::new(FiniteLattice::from_join_table(labels, leq, join));
        let identity: Vec<Elem> = base.elements().collect();
        let quantale = Quantale::with_unit(lattice, mul, lookup(&identity))?;
        Ok(Self {
            base,
            maps,
            index,
            quantale,
        })
    }

    pub fn base(&self) -> &Arc<FiniteLattice> {
        &self.base
    }

    pub fn quantale(&self) -> &Quantale {
        &self.quantale
    }

    pub fn size(&self) -> usize {
        self.maps.len()
    }

    /// The map table of element `alpha`.
    pub fn map(&self, alpha: Elem) -> &[Elem] {
        &self.maps[alpha]
    }

    pub fn index_of(&self, table: &[Elem]) -> Option<Elem> {
        self.index.get(table).copied()
    }

    pub fn as_sup_map(&self, alpha: Elem) -> SupMap {
        SupMap::new_unchecked(self.base.clone(), self.base.clone(), self.maps[alpha].clone())
    }

    pub fn identity(&self) -> Elem {
        self.quantale.unit().expect("Q(S) is unital")
    }

    /// `α♯` as a map table on `S`.
    pub fn right_adjoint(&self, alpha: Elem) -> Vec<Elem> {
        right_adjoint_table(&self.base, &self.base, &self.maps[alpha])
    }

    /// `ρ_x(y) = x` for `y ≠ 0`, `ρ_x(0) = 0`.
    pub fn rho(&self, x: Elem) -> Elem {
        let s = &self.base;
        let table: Vec<Elem> = s
            .elements()
            .map(|y| if y == s.bottom() { s.bottom() } else { x })
            .collect();
        self.index[&table]
    }

    /// `λ_x(y) = 1` for `y ≰ x`, `λ_x(y) = 0` for `y ≤ x`.
    pub fn lambda(&self, x: Elem) -> Elem {
        let s = &self.base;
        let table: Vec<Elem> = s
            .elements()
            .map(|y| if s.leq(y, x) { s.bottom() } else { s.top() })
            .collect();
        self.index[&table]
    }

    /// The first `α` violating `α = ⋀_x (ρ_{α(x)} ∨ λ_x) = ⋀_x (ρ_x ∨ λ_{α♯(x)})`.
    pub fn decomposition_failure(&self) -> Option<Elem> {
        let q = &self.quantale;
        let lat = q.lattice();
        (0..self.size()).find(|&alpha| {
            let f = &self.maps[alpha];
            let adj = self.right_adjoint(alpha);
            let first = lat.meet_all(
                self.base
                    .elements()
                    .map(|x| lat.join(self.rho(f[x]), self.lambda(x))),
            );
            let second = lat.meet_all(
                self.base
                    .elements()
                    .map(|x| lat.join(self.rho(x), self.lambda(adj[x]))),
            );
            first != alpha || second != alpha
        })
    }

    pub fn check_decomposition(&self) -> bool {
        self.decomposition_failure().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn endo(l: FiniteLattice) -> EndoQuantale {
        EndoQuantale::build(Arc::new(l), &Budget::default()).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(endo(FiniteLattice::chain(2).unwrap()).size(), 2);
        assert_eq!(endo(FiniteLattice::chain(3).unwrap()).size(), 6);
        assert_eq!(endo(FiniteLattice::boolean(2).unwrap()).size(), 16);
        assert_eq!(endo(FiniteLattice::m3()).size(), 50);
    }

    #[test]
    fn two_chain_endo_is_the_two_chain_quantale() {
        let e = endo(FiniteLattice::chain(2).unwrap());
        let q = e.quantale();
        assert_eq!(q.unit(), Some(q.top()));
        assert_eq!(q.mul(q.top(), q.top()), q.top());
        assert_eq!(q.mul(q.bottom(), q.top()), q.bottom());
    }

    #[test]
    fn rho_and_lambda() {
        let e = endo(FiniteLattice::chain(2).unwrap());
        let s = e.base().clone();
        assert_eq!(e.rho(s.bottom()), e.quantale().bottom());
        assert_eq!(e.lambda(s.top()), e.quantale().bottom());
        assert_eq!(e.lambda(s.bottom()), e.identity());

        let e = endo(FiniteLattice::boolean(2).unwrap());
        let (s, q) = (e.base().clone(), e.quantale());
        assert_eq!(q.mul(e.rho(s.top()), e.lambda(s.bottom())), q.top());
    }

    #[test]
    fn decomposition_formula() {
        for l in [
            FiniteLattice::chain(2).unwrap(),
            FiniteLattice::boolean(2).unwrap(),
            FiniteLattice::n5(),
            FiniteLattice::m3(),
        ] {
            assert!(endo(l).check_decomposition());
        }
    }

    #[test]
    fn sided_elements_are_rho_and_lambda() {
        for l in [
            FiniteLattice::chain(3).unwrap(),
            FiniteLattice::boolean(2).unwrap(),
            FiniteLattice::n5(),
        ] {
            let e = endo(l);
            let (s, q) = (e.base().clone(), e.quantale());
            let sided = q.sided_sets();
            let mut rhos: Vec<Elem> = s.elements().map(|x| e.rho(x)).collect();
            let mut lambdas: Vec<Elem> = s.elements().map(|x| e.lambda(x)).collect();
            rhos.sort();
            lambdas.sort();
            assert_eq!(sided.right, rhos);
            assert_eq!(sided.left, lambdas);
            assert_eq!(sided.two.len(), 2);
            for x in s.elements() {
                assert_eq!(q.residual_right(e.rho(x), q.bottom()), e.lambda(x));
                assert_eq!(q.residual_left(q.bottom(), e.lambda(x)), e.rho(x));
                for y in s.elements() {
                    assert_eq!(s.leq(x, y), q.leq(e.rho(x), e.rho(y)));
                    assert_eq!(s.leq(x, y), q.leq(e.lambda(y), e.lambda(x)));
                }
            }
            assert!(q.is_von_neumann());
            assert!(q.is_semiunital());
        }
    }

    #[test]
    fn base_size_budget() {
        let b3 = Arc::new(FiniteLattice::boolean(3).unwrap());
        assert!(EndoQuantale::build(b3, &Budget::default()).is_err());
    }
}
