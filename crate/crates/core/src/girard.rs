//! The Girard quantale `G = {(a, c) ∈ Q × C | φ(c) ≤ a}` of a Girard couple,
//! with `(a₁,c₁)(a₂,c₂) = (a₁a₂, a₁c₂ ∨ c₁a₂)`, unit `(e, 0)`, dualizer
//! `(1, d)` and negation `(a, c)⊥ = (c⊥, a⊥)`. The coupling map factors as
//! `φ = α∘γ` with `γ(c) = (φ(c), c)` and `α(a, c) = a`.

use std::sync::Arc;

use crate::budget::Budget;
use crate::couple::{zero_couple, Couple};
use crate::cs::{cs_couple, CsCouple};
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::Quantale;
use crate::report::CheckReport;
use crate::sup_map::is_sup_map;

const ABSENT: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct GirardQuantale {
    couple: Couple,
    quantale: Quantale,
    pairs: Vec<(Elem, Elem)>,
    /// `index[a·|C| + c]`, or `ABSENT` outside the carrier.
    index: Vec<Elem>,
    unit: Elem,
    dualizer: Elem,
    gamma: Vec<Elem>,
    alpha: Vec<Elem>,
    negation: Vec<Elem>,
}

/// Builds `G` from a couple with a designated cyclic dualizing element.
pub fn build_g(k: &Couple) -> Result<GirardQuantale> {
    let d = k.dualizer().ok_or(Error::NoDualizer)?;
    if !(k.is_cyclic(d) && k.is_dualizing(d)) {
        return Err(Error::NotGirard {
            element: k.c().label(d).to_string(),
        });
    }
    let (q, c) = (k.q(), k.c());
    let nc = c.size();
    let mut pairs = Vec::new();
    let mut index = vec![ABSENT; q.size() * nc];
    for a in q.elements() {
        for x in c.elements() {
            if q.leq(k.phi(x), a) {
                index[a * nc + x] = pairs.len();
                pairs.push((a, x));
            }
        }
    }
    let n = pairs.len();
    let lookup = |a: Elem, x: Elem, what: &str| -> Result<Elem> {
        match index[a * nc + x] {
            ABSENT => Err(Error::InvalidArgument(format!(
                "{what} leaves the carrier at ({}, {})",
                q.label(a),
                c.label(x)
            ))),
            g => Ok(g),
        }
    };

    let mut leq = vec![false; n * n];
    let mut join = vec![0; n * n];
    let mut mul = vec![0; n * n];
    for (g, &(a1, c1)) in pairs.iter().enumerate() {
        for (h, &(a2, c2)) in pairs.iter().enumerate() {
            leq[g * n + h] = q.leq(a1, a2) && c.leq(c1, c2);
            join[g * n + h] = lookup(q.join(a1, a2), c.join(c1, c2), "join")?;
            let mixed = c.join(k.act_left(a1, c2), k.act_right(c1, a2));
            mul[g * n + h] = lookup(q.mul(a1, a2), mixed, "product")?;
        }
    }
    let labels = pairs
        .iter()
        .map(|&(a, x)| format!("({};{})", q.label(a), c.label(x)))
        .collect();
    let lattice = Arc::new(FiniteLattice::from_join_table(labels, leq, join));
    let e = k.residual_c_right(d, d);
    let unit = lookup(e, c.bottom(), "unit")?;
    let quantale = Quantale::with_unit(lattice, mul, unit)?;
    let dualizer = lookup(q.top(), d, "dualizer")?;
    let gamma = c
        .elements()
        .map(|x| lookup(k.phi(x), x, "γ"))
        .collect::<Result<Vec<_>>>()?;
    let alpha = pairs.iter().map(|&(a, _)| a).collect();
    let (perp_q, perp_c) = k.perp_tables()?;
    let negation = pairs
        .iter()
        .map(|&(a, x)| lookup(perp_c[x], perp_q[a], "negation"))
        .collect::<Result<Vec<_>>>()?;
    Ok(GirardQuantale {
        couple: k.clone(),
        quantale,
        pairs,
        index,
        unit,
        dualizer,
        gamma,
        alpha,
        negation,
    })
}

/// `G` of the zero couple on `Q`: Rosenthal's `Q × Q^op`.
pub fn rosenthal(q: &Quantale) -> Result<GirardQuantale> {
    build_g(&zero_couple(q)?)
}

/// `G(S)`, built from the couple `C(S) → Q(S)`.
pub fn g_of_s(s: Arc<FiniteLattice>, budget: &Budget) -> Result<(CsCouple, GirardQuantale)> {
    let cs = cs_couple(s, budget)?;
    let g = build_g(&cs.couple)?;
    Ok((cs, g))
}

impl GirardQuantale {
    pub fn couple(&self) -> &Couple {
        &self.couple
    }

    pub fn quantale(&self) -> &Quantale {
        &self.quantale
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(Elem, Elem)] {
        &self.pairs
    }

    pub fn pair(&self, g: Elem) -> (Elem, Elem) {
        self.pairs[g]
    }

    pub fn index_of(&self, a: Elem, c: Elem) -> Option<Elem> {
        let nc = self.couple.c().size();
        if a >= self.couple.q().size() || c >= nc {
            return None;
        }
        Some(self.index[a * nc + c]).filter(|&g| g != ABSENT)
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn dualizer(&self) -> Elem {
        self.dualizer
    }

    pub fn gamma(&self) -> &[Elem] {
        &self.gamma
    }

    pub fn alpha(&self) -> &[Elem] {
        &self.alpha
    }

    /// `(a, c)⊥ = (c⊥, a⊥)`.
    pub fn negation(&self) -> &[Elem] {
        &self.negation
    }

    /// The structural claims about `G`, each exhaustively.
    pub fn verify(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let (k, g) = (&self.couple, &self.quantale);
        let (q, c) = (k.q(), k.c());
        let lg = |x: Elem| g.label(x).to_string();
        let dz = self.dualizer;

        report.record(
            "(e,0) is neutral",
            "(e,0) is a unit of G",
            g.elements()
                .find(|&x| g.mul(self.unit, x) != x || g.mul(x, self.unit) != x)
                .map(lg),
        );
        report.record(
            "(1,d) is cyclic",
            "(1,d) is a cyclic element of G",
            (!g.is_cyclic_element(dz)).then(|| format!("d={}", lg(dz))),
        );
        report.record(
            "(1,d) is dualizing",
            "(1,d) is a dualizing element of G",
            (!g.is_dualizing_element(dz)).then(|| format!("d={}", lg(dz))),
        );
        report.record(
            "negation is componentwise",
            "(a,c)⊥ = (c⊥,a⊥)",
            g.elements()
                .find(|&x| {
                    let n = self.negation[x];
                    g.residual_right(x, dz) != n || g.residual_left(dz, x) != n
                })
                .map(lg),
        );
        report.record(
            "negation is an involution",
            "(a,c)⊥⊥ = (a,c)",
            g.elements().find(|&x| self.negation[self.negation[x]] != x).map(lg),
        );
        report.record(
            "phi factors through G",
            "φ = α∘γ",
            c.elements()
                .find(|&x| self.alpha[self.gamma[x]] != k.phi(x))
                .map(|x| format!("c={}", c.label(x))),
        );
        report.record(
            "products stay in G",
            "φ(a₁c₂∨c₁a₂) ≤ a₁a₂",
            g.elements()
                .flat_map(|x| g.elements().map(move |y| (x, y)))
                .find(|&(x, y)| {
                    let ((a1, c1), (a2, c2)) = (self.pairs[x], self.pairs[y]);
                    let mixed = c.join(k.act_left(a1, c2), k.act_right(c1, a2));
                    !q.leq(k.phi(mixed), q.mul(a1, a2))
                })
                .map(|(x, y)| format!("{}, {}", lg(x), lg(y))),
        );
        report.record(
            "alpha is a strong homomorphism",
            "α is a strong quantale homomorphism",
            if !is_sup_map(g.lattice(), q.lattice(), &self.alpha) {
                Some("α does not preserve joins".into())
            } else if self.alpha[g.top()] != q.top() {
                Some("α(1) ≠ 1".into())
            } else {
                g.elements()
                    .flat_map(|x| g.elements().map(move |y| (x, y)))
                    .find(|&(x, y)| self.alpha[g.mul(x, y)] != q.mul(self.alpha[x], self.alpha[y]))
                    .map(|(x, y)| format!("{}, {}", lg(x), lg(y)))
            },
        );
        report.record(
            "gamma is a homomorphism",
            "γ is a quantale homomorphism, strong whenever φ is",
            if !is_sup_map(c.lattice(), g.lattice(), &self.gamma) {
                Some("γ does not preserve joins".into())
            } else if k.is_strong() && self.gamma[c.top()] != g.top() {
                Some("φ is strong but γ(1) ≠ 1".into())
            } else {
                c.elements()
                    .flat_map(|x| c.elements().map(move |y| (x, y)))
                    .find(|&(x, y)| self.gamma[c.mul(x, y)] != g.mul(self.gamma[x], self.gamma[y]))
                    .map(|(x, y)| format!("c₁={}, c₂={}", c.label(x), c.label(y)))
            },
        );
        report.record(
            "convolution",
            "(ab)_i = ⋁_{j∧k≤i} a_j b_k",
            self.convolution_failure(),
        );
        report
    }

    /// Reads `(a, c)` as a family graded by `{0 < 1}` with `C` in degree 0
    /// and `Q` in degree 1; products of degrees `j, k` land in `j ∧ k`
    /// and are carried upward by `φ`.
    pub fn convolution_failure(&self) -> Option<String> {
        let (k, g) = (&self.couple, &self.quantale);
        let (q, c) = (k.q(), k.c());
        for x in g.elements() {
            for y in g.elements() {
                let ((a1, c1), (a2, c2)) = (self.pairs[x], self.pairs[y]);
                let mut slot_c = c.bottom();
                let mut slot_q = q.bottom();
                for j in 0..2 {
                    for kk in 0..2 {
                        let degree = j.min(kk);
                        let (in_c, in_q) = match (j, kk) {
                            (0, 0) => (Some(c.mul(c1, c2)), None),
                            (0, _) => (Some(k.act_right(c1, a2)), None),
                            (_, 0) => (Some(k.act_left(a1, c2)), None),
                            _ => (None, Some(q.mul(a1, a2))),
                        };
                        for i in 0..2 {
                            if degree > i {
                                continue;
                            }
                            match (i, in_c, in_q) {
                                (0, Some(m), _) => slot_c = c.join(slot_c, m),
                                (1, Some(m), _) => slot_q = q.join(slot_q, k.phi(m)),
                                (1, _, Some(a)) => slot_q = q.join(slot_q, a),
                                _ => {}
                            }
                        }
                    }
                }
                if self.pairs[g.mul(x, y)] != (slot_q, slot_c) {
                    return Some(format!("{}, {}", g.label(x), g.label(y)));
                }
            }
        }
        None
    }

    pub fn check_convolution(&self) -> bool {
        self.convolution_failure().is_none()
    }

    /// `C → G` with `g·c = α(g)·c` and `c·g = c·α(g)` is again a couple.
    pub fn restriction_of_scalars(&self) -> Result<Couple> {
        let (k, g) = (&self.couple, &self.quantale);
        let c = k.c();
        let mut act_l = Vec::with_capacity(g.size() * c.size());
        for x in g.elements() {
            for m in c.elements() {
                act_l.push(k.act_left(self.alpha[x], m));
            }
        }
        let mut act_r = Vec::with_capacity(g.size() * c.size());
        for m in c.elements() {
            for x in g.elements() {
                act_r.push(k.act_right(m, self.alpha[x]));
            }
        }
        Couple::new(c.clone(), g.clone(), self.gamma.clone(), act_l, act_r, None)
    }

    pub fn check_restriction_of_scalars(&self) -> CheckReport {
        match self.restriction_of_scalars() {
            Ok(k) => k.validate(),
            Err(err) => {
                let mut report = CheckReport::new();
                report.record("restriction of scalars", "C → G is a couple", Some(err.to_string()));
                report
            }
        }
    }

    /// For strong couples: `R(C) ≅ R(Q) ≅ R(G)` through `φ` and
    /// `r ↦ (r, r·1_C)`, with `α` inverse to the latter; dually
    /// `l ↦ (l, 1_C·l)` on left-sided elements.
    pub fn check_sided_chain(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let anchor = "R(C) ≅ R(G) ≅ R(Q), L(C) ≅ L(G) ≅ L(Q)";
        let (k, g) = (&self.couple, &self.quantale);
        if !k.is_strong() {
            report.record("sided chain precondition", anchor, Some("couple is not strong".into()));
            return report;
        }
        report.record("sided chain precondition", anchor, None);
        let (c, q) = (k.c(), k.q());
        let (sc, sq, sg) = (c.sided_sets(), q.sided_sets(), g.sided_sets());
        let one_c = c.top();
        let lift_right = |r: Elem| self.index_of(r, k.act_left(r, one_c));
        let lift_left = |l: Elem| self.index_of(l, k.act_right(one_c, l));

        report.record(
            "R(C) ≅ R(Q)",
            anchor,
            sided_iso_failure(&sc.right, &sq.right, |x| Some(k.phi(x)), c.lattice(), q.lattice()),
        );
        report.record(
            "R(Q) ≅ R(G)",
            anchor,
            sided_iso_failure(&sq.right, &sg.right, lift_right, q.lattice(), g.lattice())
                .or_else(|| inverse_failure(&sg.right, &self.alpha, lift_right, g)),
        );
        report.record(
            "L(C) ≅ L(Q)",
            anchor,
            sided_iso_failure(&sc.left, &sq.left, |x| Some(k.phi(x)), c.lattice(), q.lattice()),
        );
        report.record(
            "L(Q) ≅ L(G)",
            anchor,
            sided_iso_failure(&sq.left, &sg.left, lift_left, q.lattice(), g.lattice())
                .or_else(|| inverse_failure(&sg.left, &self.alpha, lift_left, g)),
        );
        report
    }

    /// Girard negation on sided elements agrees with the annulators:
    /// `r⊥ = r → 0` and `l⊥ = 0 ← l`.
    pub fn negation_extends_annulators(&self) -> Option<String> {
        negation_annulator_failure(&self.quantale, self.dualizer)
    }
}

/// `r → d = r → 0` for right-sided `r` and `d ← l = 0 ← l` for left-sided `l`.
pub fn negation_annulator_failure(q: &Quantale, d: Elem) -> Option<String> {
    let zero = q.bottom();
    let sided = q.sided_sets();
    sided
        .right
        .iter()
        .find(|&&r| q.residual_right(r, d) != q.residual_right(r, zero))
        .map(|&r| format!("right-sided {}", q.label(r)))
        .or_else(|| {
            sided
                .left
                .iter()
                .find(|&&l| q.residual_left(d, l) != q.residual_left(zero, l))
                .map(|&l| format!("left-sided {}", q.label(l)))
        })
}

/// `map` sends `from` bijectively onto `to` and reflects and preserves order.
fn sided_iso_failure(
    from: &[Elem],
    to: &[Elem],
    map: impl Fn(Elem) -> Option<Elem>,
    source: &FiniteLattice,
    target: &FiniteLattice,
) -> Option<String> {
    let images: Vec<Option<Elem>> = from.iter().map(|&x| map(x)).collect();
    for (&x, image) in from.iter().zip(&images) {
        match image {
            Some(y) if to.contains(y) => {}
            _ => return Some(format!("{} has no sided image", source.label(x))),
        }
    }
    let images: Vec<Elem> = images.into_iter().flatten().collect();
    let mut sorted = images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != to.len() {
        return Some(format!("{} sided elements map onto {} of {}", from.len(), sorted.len(), to.len()));
    }
    for (i, &x) in from.iter().enumerate() {
        for (j, &y) in from.iter().enumerate() {
            if source.leq(x, y) != target.leq(images[i], images[j]) {
                return Some(format!("order differs at {}, {}", source.label(x), source.label(y)));
            }
        }
    }
    None
}

fn inverse_failure(
    sided: &[Elem],
    alpha: &[Elem],
    lift: impl Fn(Elem) -> Option<Elem>,
    g: &Quantale,
) -> Option<String> {
    sided
        .iter()
        .find(|&&x| lift(alpha[x]) != Some(x))
        .map(|&x| format!("α is not inverse at {}", g.label(x)))
}

/// `R(G(S)) ≅ S` via `x ↦ (ρ_x, ρ_x·1)` and `L(G(S)) ≅ S^op` via
/// `x ↦ (λ_x, 1·λ_x)`.
pub fn check_g_of_s(cs: &CsCouple, g: &GirardQuantale) -> CheckReport {
    let mut report = CheckReport::new();
    let (s, e, k) = (cs.base(), &cs.endo, &cs.couple);
    let gq = g.quantale();
    let sided = gq.sided_sets();
    let one_c = k.c().top();
    let right: Vec<Option<Elem>> = s
        .elements()
        .map(|x| g.index_of(e.rho(x), k.act_left(e.rho(x), one_c)))
        .collect();
    let left: Vec<Option<Elem>> = s
        .elements()
        .map(|x| g.index_of(e.lambda(x), k.act_right(one_c, e.lambda(x))))
        .collect();
    let all: Vec<Elem> = s.elements().collect();
    let op = s.op_dual();
    let mapping = |images: &[Option<Elem>]| {
        let parts: Vec<String> = s
            .elements()
            .map(|x| format!("{} ↦ {}", s.label(x), images[x].map_or("?", |y| gq.label(y))))
            .collect();
        parts.join(", ")
    };
    let mut record = |name: &str, anchor: &str, failure: Option<String>, images: &[Option<Elem>]| match failure {
        None => report.record_with_witness(name, anchor, true, mapping(images)),
        failure => report.record(name, anchor, failure),
    };
    record(
        "R(G(S)) ≅ S",
        "RG(S) ≅ S via x ↦ (ρ_x, ρ_x·1)",
        sided_iso_failure(&all, &sided.right, |x| right[x], s, gq.lattice()),
        &right,
    );
    record(
        "L(G(S)) ≅ S^op",
        "LG(S) ≅ S^op via x ↦ (λ_x, 1·λ_x)",
        sided_iso_failure(&all, &sided.left, |x| left[x], &op, gq.lattice()),
        &left,
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::couple::identity_couple;
    use crate::ring::sub_ring_quantale;

    fn chain_quantale(k: usize) -> Quantale {
        Quantale::meet_quantale(Arc::new(FiniteLattice::chain(k).unwrap())).unwrap()
    }

    fn assert_passes(report: &CheckReport) {
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn rosenthal_on_two_chain() {
        let g = rosenthal(&chain_quantale(2)).unwrap();
        assert_eq!(g.size(), 4);
        assert_passes(&g.verify());
        assert!(g.quantale().girard_elements().contains(&g.dualizer()));
        assert_passes(&g.check_restriction_of_scalars());
        assert_eq!(g.check_sided_chain().failures().count(), 1);
        assert!(g.negation_extends_annulators().is_none());
    }

    #[test]
    fn rosenthal_on_sub_z4() {
        let g = rosenthal(&sub_ring_quantale(4).unwrap()).unwrap();
        assert_eq!(g.size(), 9);
        assert_passes(&g.verify());
    }

    #[test]
    fn identity_couple_gives_the_pairs_below_the_diagonal() {
        let k = identity_couple(&chain_quantale(2));
        let g = build_g(&k).unwrap();
        assert_eq!(g.pairs(), &[(0, 0), (1, 0), (1, 1)]);
        assert_passes(&g.verify());
        assert_passes(&g.check_sided_chain());
        assert_passes(&g.check_restriction_of_scalars());
    }

    #[test]
    fn g_of_s_sided_elements() {
        for l in [
            FiniteLattice::chain(2).unwrap(),
            FiniteLattice::boolean(2).unwrap(),
            FiniteLattice::n5(),
            FiniteLattice::m3(),
        ] {
            let (cs, g) = g_of_s(Arc::new(l), &Budget::default()).unwrap();
            assert_passes(&g.verify());
            assert_passes(&g.check_sided_chain());
            assert_passes(&check_g_of_s(&cs, &g));
            assert_eq!(g.quantale().unit(), Some(g.unit()));
        }
    }

    #[test]
    fn needs_a_dualizer() {
        let zero_mult = Quantale::zero_multiplication(Arc::new(FiniteLattice::chain(2).unwrap()));
        assert_eq!(build_g(&identity_couple(&zero_mult)).unwrap_err(), Error::NoDualizer);
    }
}
