//! The couple `C(S) → Q(S)` with `C(S) = S ⊗ S^op`.
//!
//! On generators `(x⊗y')(u⊗v') = 0` if `u ≤ y` and `x⊗v'` otherwise,
//! `φ(x⊗y') = ρ_x λ_y`, `α·(x⊗y') = α(x)⊗y'` and `(x⊗y')·α = x⊗α♯(y)'`.
//! Everything is extended to arbitrary elements by joins over the
//! generators below them. The dualizer is `d = ⋁_x x⊗x'`.

use std::sync::Arc;

use crate::budget::Budget;
use crate::couple::{Couple, CoupleElem};
use crate::endo::EndoQuantale;
use crate::error::Result;
use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::Quantale;
use crate::report::CheckReport;
use crate::tensor::{tensor_dual_to_endo, TensorProduct};

#[derive(Debug, Clone)]
pub struct CsCouple {
    pub couple: Couple,
    pub endo: EndoQuantale,
    pub tensor: TensorProduct,
}

pub fn cs_couple(s: Arc<FiniteLattice>, budget: &Budget) -> Result<CsCouple> {
    let endo = EndoQuantale::build(s.clone(), budget)?;
    let tensor = TensorProduct::new(s.clone(), Arc::new(s.op_dual()), budget)?;
    let cl = tensor.lattice().clone();
    let (nc, nq) = (cl.size(), endo.size());
    let q = endo.quantale().clone();
    let members: Vec<Vec<(Elem, Elem)>> = cl.elements().map(|c| tensor.members(c).collect()).collect();

    let gen_mul = |(x, y): (Elem, Elem), (u, v): (Elem, Elem)| {
        if s.leq(u, y) {
            cl.bottom()
        } else {
            tensor.generator(x, v)
        }
    };
    let mut c_mul = Vec::with_capacity(nc * nc);
    for a in &members {
        for b in &members {
            c_mul.push(cl.join_all(a.iter().flat_map(|&g| b.iter().map(move |&h| gen_mul(g, h)))));
        }
    }
    let c = Quantale::new(cl.clone(), c_mul)?;

    let adjoints: Vec<Vec<Elem>> = q.elements().map(|alpha| endo.right_adjoint(alpha)).collect();
    let mut act_l = Vec::with_capacity(nq * nc);
    for alpha in q.elements() {
        let f = endo.map(alpha);
        for m in &members {
            act_l.push(cl.join_all(m.iter().map(|&(x, y)| tensor.generator(f[x], y))));
        }
    }
    let mut act_r = Vec::with_capacity(nq * nc);
    for m in &members {
        for adj in &adjoints {
            act_r.push(cl.join_all(m.iter().map(|&(x, y)| tensor.generator(x, adj[y]))));
        }
    }
    let phi = members
        .iter()
        .map(|m| q.lattice().join_all(m.iter().map(|&(x, y)| q.mul(endo.rho(x), endo.lambda(y)))))
        .collect();
    let d = cl.join_all(s.elements().map(|x| tensor.generator(x, x)));
    let couple = Couple::new(c, q, phi, act_l, act_r, Some(d))?;
    Ok(CsCouple { couple, endo, tensor })
}

impl CsCouple {
    pub fn d(&self) -> Elem {
        self.couple.dualizer().expect("designated at construction")
    }

    pub fn base(&self) -> &Arc<FiniteLattice> {
        self.endo.base()
    }

    /// The explicit formulas for negation and `φ` on generators:
    /// `(x⊗y')⊥ = λ_x∨ρ_y` on both sides, `(λ_x∨ρ_y)⊥ = x⊗y'`,
    /// `α⊥ = ⋁_x α♯(x)⊗x'`, `u⊗w' ≤ d ⟺ u ≤ w`, and pointwise
    /// `φ(x⊗y')(u) = x` for `u ≰ y`, `0` otherwise.
    pub fn formula_report(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let (k, e, t, s) = (&self.couple, &self.endo, &self.tensor, self.base());
        let d = self.d();
        let q = k.q();
        let pairs = || s.elements().flat_map(|x| s.elements().map(move |y| (x, y)));
        let label = |(x, y): (Elem, Elem)| format!("x={}, y={}", s.label(x), s.label(y));
        let witness = |x, y| q.join(e.lambda(x), e.rho(y));

        report.record(
            "dualizer is the join of x⊗x'",
            "d = ⋁_x x⊗x'",
            (d != t.lattice().join_all(s.elements().map(|x| t.generator(x, x))))
                .then(|| "designated dualizer differs".into()),
        );
        report.record(
            "generators below d",
            "u⊗w' ≤ d ⟺ u ≤ w",
            pairs()
                .filter(|&(u, w)| u != s.bottom() && w != s.top())
                .find(|&(u, w)| t.contains(d, u, w) != s.leq(u, w))
                .map(label),
        );
        report.record(
            "perp of a generator",
            "(x⊗y')→d = d←(x⊗y') = λ_x∨ρ_y",
            pairs()
                .find(|&(x, y)| {
                    let g = t.generator(x, y);
                    k.residual_c_right(g, d) != witness(x, y) || k.residual_c_left(d, g) != witness(x, y)
                })
                .map(label),
        );
        report.record(
            "perp of lambda-join-rho",
            "(λ_x∨ρ_y)→d = d←(λ_x∨ρ_y) = x⊗y'",
            pairs()
                .find(|&(x, y)| {
                    let a = witness(x, y);
                    let g = t.generator(x, y);
                    k.residual_q_right(a, d) != g || k.residual_q_left(d, a) != g
                })
                .map(label),
        );
        report.record(
            "perp of an endomorphism",
            "α→d = ⋁_x α♯(x)⊗x'",
            q.elements()
                .find(|&alpha| {
                    let adj = e.right_adjoint(alpha);
                    let expected = t.lattice().join_all(s.elements().map(|x| t.generator(adj[x], x)));
                    k.perp(CoupleElem::Q(alpha)) != Ok(CoupleElem::C(expected))
                })
                .map(|alpha| format!("α={}", q.label(alpha))),
        );
        report.record(
            "phi on generators",
            "φ(x⊗y') = ρ_xλ_y, u ↦ x if u≰y else 0",
            pairs()
                .find(|&(x, y)| {
                    let f = e.map(k.phi(t.generator(x, y)));
                    s.elements()
                        .any(|u| f[u] != if s.leq(u, y) { s.bottom() } else { x })
                })
                .map(label),
        );
        let duality = tensor_dual_to_endo(t, e);
        let perp_matches = duality.as_ref().ok().and_then(|dual| {
            k.c().elements()
                .find(|&c| k.perp(CoupleElem::C(c)) != Ok(CoupleElem::Q(dual.to_endo[c])))
        });
        report.record(
            "perp is the tensor/endomorphism duality",
            "C(S) ≅ Q(S)^op",
            match (&duality, perp_matches) {
                (Err(err), _) => Some(err.to_string()),
                (_, Some(c)) => Some(format!("c={}", k.c().label(c))),
                _ => None,
            },
        );
        report.record(
            "strong",
            "φ(1_C) = φ(1⊗0') = ρ₁λ₀ = 1",
            (!k.is_strong()).then(|| format!("φ(1_C)={}", q.label(k.phi(k.c().top())))),
        );
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(l: FiniteLattice) -> CsCouple {
        cs_couple(Arc::new(l), &Budget::default()).unwrap()
    }

    #[test]
    fn two_chain_collapses_d_to_zero() {
        let k = cs(FiniteLattice::chain(2).unwrap());
        assert_eq!(k.d(), k.couple.c().bottom());
        assert_eq!(k.couple.c().size(), 2);
        assert!(k.couple.validate().all_passed());
        assert!(k.formula_report().all_passed());
    }

    #[test]
    fn small_lattices_give_strong_girard_couples() {
        for l in [
            FiniteLattice::chain(3).unwrap(),
            FiniteLattice::boolean(2).unwrap(),
            FiniteLattice::n5(),
            FiniteLattice::m3(),
        ] {
            let k = cs(l);
            let report = k.couple.validate();
            assert!(report.all_passed(), "{:?}", report.failures().collect::<Vec<_>>());
            let formulas = k.formula_report();
            assert!(formulas.all_passed(), "{:?}", formulas.failures().collect::<Vec<_>>());
            assert!(k.couple.is_strong());
            assert!(k.couple.check_self_adjoint());
            assert!(k.couple.check_strong_sided_iso().all_passed());
            assert!(k.couple.check_girard_implies().all_passed());
        }
    }

    #[test]
    fn unit_is_the_identity_map() {
        let k = cs(FiniteLattice::boolean(2).unwrap());
        let e = k.couple.perp(CoupleElem::C(k.d())).unwrap();
        assert_eq!(e, CoupleElem::Q(k.endo.identity()));
        assert_eq!(k.couple.unit(), Some(k.endo.identity()));
    }

    #[test]
    fn par_with_own_negation_is_above_the_unit() {
        let k = cs(FiniteLattice::boolean(2).unwrap());
        let unit = CoupleElem::Q(k.endo.identity());
        for a in k.couple.q().elements() {
            let a = CoupleElem::Q(a);
            let p = k.couple.par(a, k.couple.perp(a).unwrap()).unwrap();
            assert!(k.couple.leq(unit, p));
        }
    }
}
