//! Couples of quantales `φ: C → Q`, where `C` is a `Q`-bimodule and
//! `φ(c₁)c₂ = c₁φ(c₂) = c₁c₂`, together with the Girard structure carried by
//! a cyclic dualizing element `d ∈ C`.
//!
//! Residuals across the couple follow the module conventions:
//! for `a ∈ Q` and `m ∈ C`, `a → m = ⋁{c ∈ C | c·a ≤ m}` and
//! `m ← a = ⋁{c ∈ C | a·c ≤ m}`; for `c, m ∈ C`,
//! `c → m = ⋁{a ∈ Q | a·c ≤ m}` and `m ← c = ⋁{a ∈ Q | c·a ≤ m}`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::Quantale;
use crate::report::CheckReport;
use crate::ring;
use crate::sup_map::{is_sup_map, right_adjoint_table, SupMap};

/// Above this many triples the trilinear laws are checked on
/// join-irreducibles only (equivalent once distributivity holds).
const EXHAUSTIVE_TRIPLES: usize = 8_000_000;

/// An element of `C ∪ Q`, tagged with its component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoupleElem {
    Q(Elem),
    C(Elem),
}

impl fmt::Display for CoupleElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoupleElem::Q(a) => write!(f, "Q:{a}"),
            CoupleElem::C(c) => write!(f, "C:{c}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Couple {
    c: Quantale,
    q: Quantale,
    phi: Vec<Elem>,
    act_l: Vec<Elem>,
    act_r: Vec<Elem>,
    dualizer: Option<Elem>,
}

impl Couple {
    /// Checks table shapes only; the axioms are checked by [`Couple::validate`].
    ///
    /// `act_l[a·|C| + c] = a·c` and `act_r[c·|Q| + a] = c·a`.
    pub fn new(
        c: Quantale,
        q: Quantale,
        phi: Vec<Elem>,
        act_l: Vec<Elem>,
        act_r: Vec<Elem>,
        dualizer: Option<Elem>,
    ) -> Result<Self> {
        let (nc, nq) = (c.size(), q.size());
        let shape = |expected: usize, found: usize| {
            if expected == found {
                Ok(())
            } else {
                Err(Error::TableSize { expected, found })
            }
        };
        shape(nc, phi.len())?;
        shape(nc * nq, act_l.len())?;
        shape(nc * nq, act_r.len())?;
        if let Some(&bad) = phi.iter().find(|&&a| a >= nq) {
            return Err(Error::OutOfRange(bad));
        }
        if let Some(&bad) = act_l.iter().chain(&act_r).find(|&&x| x >= nc) {
            return Err(Error::OutOfRange(bad));
        }
        if let Some(d) = dualizer.filter(|&d| d >= nc) {
            return Err(Error::OutOfRange(d));
        }
        Ok(Self {
            c,
            q,
            phi,
            act_l,
            act_r,
            dualizer,
        })
    }

    /// Designates `d` after checking it is cyclic and dualizing.
    pub fn with_dualizer(mut self, d: Elem) -> Result<Self> {
        if d >= self.c.size() {
            return Err(Error::OutOfRange(d));
        }
        if !(self.is_cyclic(d) && self.is_dualizing(d)) {
            return Err(Error::NotGirard {
                element: self.c.label(d).to_string(),
            });
        }
        self.dualizer = Some(d);
        Ok(self)
    }

    pub fn c(&self) -> &Quantale {
        &self.c
    }

    pub fn q(&self) -> &Quantale {
        &self.q
    }

    pub fn phi(&self, c: Elem) -> Elem {
        self.phi[c]
    }

    pub fn phi_table(&self) -> &[Elem] {
        &self.phi
    }

    pub fn phi_map(&self) -> SupMap {
        SupMap::new_unchecked(self.c.lattice().clone(), self.q.lattice().clone(), self.phi.clone())
    }

    /// `a·c` for `a ∈ Q`, `c ∈ C`.
    pub fn act_left(&self, a: Elem, c: Elem) -> Elem {
        self.act_l[a * self.c.size() + c]
    }

    /// `c·a` for `c ∈ C`, `a ∈ Q`.
    pub fn act_right(&self, c: Elem, a: Elem) -> Elem {
        self.act_r[c * self.q.size() + a]
    }

    pub fn act_left_table(&self) -> &[Elem] {
        &self.act_l
    }

    pub fn act_right_table(&self) -> &[Elem] {
        &self.act_r
    }

    pub fn dualizer(&self) -> Option<Elem> {
        self.dualizer
    }

    pub fn is_strong(&self) -> bool {
        self.phi[self.c.top()] == self.q.top()
    }

    /// The unit of `Q` when it exists and also acts neutrally on `C`.
    pub fn unit(&self) -> Option<Elem> {
        let e = self.q.unit()?;
        self.c
            .elements()
            .all(|c| self.act_left(e, c) == c && self.act_right(c, e) == c)
            .then_some(e)
    }

    pub fn is_unital(&self) -> bool {
        self.unit().is_some()
    }

    /// `a → m = ⋁{c ∈ C | c·a ≤ m}`.
    pub fn residual_q_right(&self, a: Elem, m: Elem) -> Elem {
        let c = &self.c;
        c.lattice()
            .join_all(c.elements().filter(|&x| c.leq(self.act_right(x, a), m)))
    }

    /// `m ← a = ⋁{c ∈ C | a·c ≤ m}`.
    pub fn residual_q_left(&self, m: Elem, a: Elem) -> Elem {
        let c = &self.c;
        c.lattice()
            .join_all(c.elements().filter(|&x| c.leq(self.act_left(a, x), m)))
    }

    /// `c → m = ⋁{a ∈ Q | a·c ≤ m}`.
    pub fn residual_c_right(&self, c: Elem, m: Elem) -> Elem {
        let q = &self.q;
        q.lattice()
            .join_all(q.elements().filter(|&a| self.c.leq(self.act_left(a, c), m)))
    }

    /// `m ← c = ⋁{a ∈ Q | c·a ≤ m}`.
    pub fn residual_c_left(&self, m: Elem, c: Elem) -> Elem {
        let q = &self.q;
        q.lattice()
            .join_all(q.elements().filter(|&a| self.c.leq(self.act_right(c, a), m)))
    }

    /// First `(a, c)` with `a·c ≤ d` but not `c·a ≤ d` or vice versa.
    pub fn cyclic_failure(&self, d: Elem) -> Option<(Elem, Elem)> {
        let c = &self.c;
        self.q
            .elements()
            .flat_map(|a| c.elements().map(move |x| (a, x)))
            .find(|&(a, x)| c.leq(self.act_left(a, x), d) != c.leq(self.act_right(x, a), d))
    }

    pub fn is_cyclic(&self, d: Elem) -> bool {
        self.cyclic_failure(d).is_none()
    }

    /// First element on which `d` fails to be dualizing.
    pub fn dualizing_failure(&self, d: Elem) -> Option<CoupleElem> {
        for a in self.q.elements() {
            let right = self.residual_q_right(a, d);
            let left = self.residual_q_left(d, a);
            if self.residual_c_left(d, right) != a || self.residual_c_right(left, d) != a {
                return Some(CoupleElem::Q(a));
            }
        }
        for c in self.c.elements() {
            let right = self.residual_c_right(c, d);
            let left = self.residual_c_left(d, c);
            if self.residual_q_left(d, right) != c || self.residual_q_right(left, d) != c {
                return Some(CoupleElem::C(c));
            }
        }
        None
    }

    pub fn is_dualizing(&self, d: Elem) -> bool {
        self.dualizing_failure(d).is_none()
    }

    /// All cyclic dualizing elements of `C`.
    pub fn girard_elements(&self) -> Vec<Elem> {
        self.c
            .elements()
            .filter(|&d| self.is_cyclic(d) && self.is_dualizing(d))
            .collect()
    }

    pub fn is_girard(&self) -> bool {
        self.c
            .elements()
            .any(|d| self.is_cyclic(d) && self.is_dualizing(d))
    }

    fn require_dualizer(&self) -> Result<Elem> {
        self.dualizer.ok_or(Error::NoDualizer)
    }

    /// The Girard negation `a⊥ = a → d` and `c⊥ = c → d`, landing in the
    /// opposite component.
    pub fn perp(&self, z: CoupleElem) -> Result<CoupleElem> {
        let d = self.require_dualizer()?;
        Ok(match z {
            CoupleElem::Q(a) => CoupleElem::C(self.residual_q_right(a, d)),
            CoupleElem::C(c) => CoupleElem::Q(self.residual_c_right(c, d)),
        })
    }

    /// `(Q → C, C → Q)` negation tables.
    pub fn perp_tables(&self) -> Result<(Vec<Elem>, Vec<Elem>)> {
        let d = self.require_dualizer()?;
        let q_side = self.q.elements().map(|a| self.residual_q_right(a, d)).collect();
        let c_side = self.c.elements().map(|c| self.residual_c_right(c, d)).collect();
        Ok((q_side, c_side))
    }

    /// The product on `C ∪ Q`: both quantale multiplications and both actions.
    pub fn mul(&self, x: CoupleElem, y: CoupleElem) -> CoupleElem {
        use CoupleElem::{C, Q};
        match (x, y) {
            (Q(a), Q(b)) => Q(self.q.mul(a, b)),
            (C(a), C(b)) => C(self.c.mul(a, b)),
            (Q(a), C(c)) => C(self.act_left(a, c)),
            (C(c), Q(a)) => C(self.act_right(c, a)),
        }
    }

    /// `x ⅋ y = (y⊥ · x⊥)⊥`.
    pub fn par(&self, x: CoupleElem, y: CoupleElem) -> Result<CoupleElem> {
        let product = self.mul(self.perp(y)?, self.perp(x)?);
        self.perp(product)
    }

    pub fn leq(&self, x: CoupleElem, y: CoupleElem) -> bool {
        match (x, y) {
            (CoupleElem::Q(a), CoupleElem::Q(b)) => self.q.leq(a, b),
            (CoupleElem::C(a), CoupleElem::C(b)) => self.c.leq(a, b),
            _ => false,
        }
    }

    pub fn label(&self, z: CoupleElem) -> String {
        match z {
            CoupleElem::Q(a) => format!("Q:{}", self.q.label(a)),
            CoupleElem::C(c) => format!("C:{}", self.c.label(c)),
        }
    }

    /// Every couple axiom group, each with a counterexample on failure:
    /// distributivity of the actions, bimodule laws, `φ` a sup-map and a
    /// bimodule homomorphism, the coupling identity, the derived mixed
    /// associativity laws, multiplicativity of `φ`, and the designated
    /// dualizer.
    pub fn validate(&self) -> CheckReport {
        let (q, c) = (&self.q, &self.c);
        let (nq, nc) = (q.size(), c.size());
        let exhaustive = nq.max(nc).pow(3) <= EXHAUSTIVE_TRIPLES;
        let gens = |quantale: &Quantale| -> Vec<Elem> {
            if exhaustive {
                quantale.elements().collect()
            } else {
                quantale.lattice().join_irreducibles().to_vec()
            }
        };
        let (gq_all, gc_all) = (gens(q), gens(c));
        let (gq, gc) = (&gq_all, &gc_all);
        let lq = |a: Elem| q.label(a).to_string();
        let lc = |x: Elem| c.label(x).to_string();
        let al = |a, x| self.act_left(a, x);
        let ar = |x, a| self.act_right(x, a);
        let mut report = CheckReport::new();

        report.record(
            "phi is a sup-map",
            "the coupling map preserves joins",
            (!is_sup_map(c.lattice(), q.lattice(), &self.phi)).then(|| "φ fails join preservation".into()),
        );

        let zero = q.elements().find_map(|a| {
            (al(a, c.bottom()) != c.bottom() || ar(c.bottom(), a) != c.bottom())
                .then(|| format!("a={}", lq(a)))
        });
        let zero = zero.or_else(|| {
            c.elements().find_map(|x| {
                (al(q.bottom(), x) != c.bottom() || ar(x, q.bottom()) != c.bottom())
                    .then(|| format!("c={}", lc(x)))
            })
        });
        report.record("actions absorb zero", "0·c = a·0 = 0 = c·0 = 0·a", zero);

        let mut dist = None;
        'dist: for a in q.elements() {
            for x in c.elements() {
                for &j in gc {
                    let xj = c.join(x, j);
                    if al(a, xj) != c.join(al(a, x), al(a, j)) || ar(xj, a) != c.join(ar(x, a), ar(j, a)) {
                        dist = Some(format!("a={}, c={}, c'={}", lq(a), lc(x), lc(j)));
                        break 'dist;
                    }
                }
                for &j in gq {
                    let aj = q.join(a, j);
                    if al(aj, x) != c.join(al(a, x), al(j, x)) || ar(x, aj) != c.join(ar(x, a), ar(x, j)) {
                        dist = Some(format!("a={}, a'={}, c={}", lq(a), lq(j), lc(x)));
                        break 'dist;
                    }
                }
            }
        }
        report.record("actions distribute over joins", "the actions respect joins in both variables", dist);

        let triples_qqc = || {
            gq.iter()
                .flat_map(|&a| gq.iter().flat_map(move |&b| gc.iter().map(move |&x| (a, b, x))))
        };
        report.record(
            "left module law",
            "(ab)m = a(bm)",
            triples_qqc()
                .find(|&(a, b, x)| al(q.mul(a, b), x) != al(a, al(b, x)))
                .map(|(a, b, x)| format!("a={}, b={}, m={}", lq(a), lq(b), lc(x))),
        );
        report.record(
            "right module law",
            "m(ab) = (ma)b",
            triples_qqc()
                .find(|&(a, b, x)| ar(x, q.mul(a, b)) != ar(ar(x, a), b))
                .map(|(a, b, x)| format!("m={}, a={}, b={}", lc(x), lq(a), lq(b))),
        );
        report.record(
            "bimodule law",
            "(am)b = a(mb)",
            triples_qqc()
                .find(|&(a, b, x)| ar(al(a, x), b) != al(a, ar(x, b)))
                .map(|(a, b, x)| format!("a={}, m={}, b={}", lq(a), lc(x), lq(b))),
        );

        let pairs_qc = || gq.iter().flat_map(|&a| gc.iter().map(move |&x| (a, x)));
        report.record(
            "phi is a bimodule homomorphism",
            "φ(a·c) = a·φ(c) and φ(c·a) = φ(c)·a",
            pairs_qc()
                .find(|&(a, x)| {
                    self.phi[al(a, x)] != q.mul(a, self.phi[x]) || self.phi[ar(x, a)] != q.mul(self.phi[x], a)
                })
                .map(|(a, x)| format!("a={}, c={}", lq(a), lc(x))),
        );

        let pairs_cc = || gc.iter().flat_map(|&x| gc.iter().map(move |&y| (x, y)));
        report.record(
            "coupling identity",
            "φ(c₁)c₂ = c₁φ(c₂) = c₁c₂",
            pairs_cc()
                .find(|&(x, y)| al(self.phi[x], y) != c.mul(x, y) || ar(x, self.phi[y]) != c.mul(x, y))
                .map(|(x, y)| format!("c₁={}, c₂={}", lc(x), lc(y))),
        );

        let triples_qcc = || {
            gq.iter()
                .flat_map(|&a| gc.iter().flat_map(move |&x| gc.iter().map(move |&y| (a, x, y))))
        };
        report.record(
            "mixed associativity",
            "a(c₁c₂) = (ac₁)c₂, (c₁c₂)a = c₁(c₂a), (c₁a)c₂ = c₁(ac₂)",
            triples_qcc()
                .find(|&(a, x, y)| {
                    al(a, c.mul(x, y)) != c.mul(al(a, x), y)
                        || ar(c.mul(x, y), a) != c.mul(x, ar(y, a))
                        || c.mul(ar(x, a), y) != c.mul(x, al(a, y))
                })
                .map(|(a, x, y)| format!("a={}, c₁={}, c₂={}", lq(a), lc(x), lc(y))),
        );
        report.record(
            "phi is multiplicative",
            "φ is a quantale homomorphism",
            pairs_cc()
                .find(|&(x, y)| self.phi[c.mul(x, y)] != q.mul(self.phi[x], self.phi[y]))
                .map(|(x, y)| format!("c₁={}, c₂={}", lc(x), lc(y))),
        );

        if let Some(d) = self.dualizer {
            report.record(
                "dualizer is cyclic",
                "ac ≤ d ⟺ ca ≤ d",
                self.cyclic_failure(d)
                    .map(|(a, x)| format!("d={}, a={}, c={}", lc(d), lq(a), lc(x))),
            );
            report.record(
                "dualizer is dualizing",
                "d←(z→d) = (d←z)→d = z on C ∪ Q",
                self.dualizing_failure(d)
                    .map(|z| format!("d={}, at {}", lc(d), self.label(z))),
            );
        }
        report
    }

    /// `φ♯(c⊥) = φ(c)⊥` for all `c`, together with the chain
    /// `c₁ ≤ φ♯(c₂⊥) ⟺ φ(c₁)c₂ ≤ d ⟺ c₁ ≤ φ(c₂)⊥`.
    pub fn self_adjoint_failure(&self) -> Option<String> {
        let d = self.dualizer?;
        let (perp_q, perp_c) = self.perp_tables().ok()?;
        let adj = right_adjoint_table(self.c.lattice(), self.q.lattice(), &self.phi);
        let c = &self.c;
        for x in c.elements() {
            if adj[perp_c[x]] != perp_q[self.phi[x]] {
                return Some(format!("φ♯(c⊥) ≠ φ(c)⊥ at c={}", c.label(x)));
            }
            for y in c.elements() {
                let first = c.leq(y, adj[perp_c[x]]);
                let second = c.leq(self.act_left(self.phi[y], x), d);
                let third = c.leq(y, perp_q[self.phi[x]]);
                if first != second || second != third {
                    return Some(format!("adjunction chain breaks at c₁={}, c₂={}", c.label(y), c.label(x)));
                }
            }
        }
        None
    }

    /// `φ* = φ` under the identifications given by the negation.
    pub fn check_self_adjoint(&self) -> bool {
        self.dualizer.is_some() && self.self_adjoint_failure().is_none()
    }

    /// For strong couples of semiunital quantales: `φ` restricted to
    /// right-sided elements and `r ↦ r·1_C` are mutually inverse, and
    /// dually `l ↦ 1_C·l` on the left.
    pub fn check_strong_sided_iso(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let anchor = "a strong couple of semiunital quantales is an isomorphism on sided elements";
        let mut missing = Vec::new();
        if !self.is_strong() {
            missing.push("couple is not strong");
        }
        if !self.c.is_semiunital() {
            missing.push("C is not semiunital");
        }
        if !self.q.is_semiunital() {
            missing.push("Q is not semiunital");
        }
        if !missing.is_empty() {
            report.record("sided isomorphism precondition", anchor, Some(missing.join("; ")));
            return report;
        }
        report.record("sided isomorphism precondition", anchor, None);
        let (sc, sq) = (self.c.sided_sets(), self.q.sided_sets());
        let one_c = self.c.top();
        let right = sided_inverse_failure(
            &sc.right,
            &sq.right,
            |x| self.phi[x],
            |r| self.act_left(r, one_c),
            &self.c,
            &self.q,
        );
        report.record("right-sided isomorphism", "φ|R(C) and r ↦ r·1_C are inverse", right);
        let left = sided_inverse_failure(
            &sc.left,
            &sq.left,
            |x| self.phi[x],
            |l| self.act_right(one_c, l),
            &self.c,
            &self.q,
        );
        report.record("left-sided isomorphism", "φ|L(C) and l ↦ 1_C·l are inverse", left);
        report
    }

    /// A Girard couple is unital with unit `d⊥`; if strong, both quantales are
    /// von Neumann and `0` is the only sided element of `C` below `d`.
    pub fn check_girard_implies(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let Some(d) = self.dualizer else {
            report.record("designated dualizer", "Girard couple", Some("no dualizer designated".into()));
            return report;
        };
        let e = self.residual_c_right(d, d);
        let (q, c) = (&self.q, &self.c);
        report.record(
            "d-perp is the unit of Q",
            "e = d⊥ is a unit for Q",
            q.elements()
                .find(|&a| q.mul(e, a) != a || q.mul(a, e) != a)
                .map(|a| format!("e={}, a={}", q.label(e), q.label(a))),
        );
        report.record(
            "d-perp acts neutrally on C",
            "a Girard couple is unital",
            c.elements()
                .find(|&x| self.act_left(e, x) != x || self.act_right(x, e) != x)
                .map(|x| format!("e={}, c={}", q.label(e), c.label(x))),
        );
        if self.is_strong() {
            report.record(
                "C is von Neumann",
                "a strong Girard couple has von Neumann components",
                (!c.is_von_neumann()).then(|| "annulators are not a duality on C".into()),
            );
            report.record(
                "Q is von Neumann",
                "a strong Girard couple has von Neumann components",
                (!q.is_von_neumann()).then(|| "annulators are not a duality on Q".into()),
            );
            let sided = c.sided_sets();
            report.record(
                "no nonzero sided element below d",
                "the only right- or left-sided element below d is 0",
                sided
                    .right
                    .iter()
                    .chain(&sided.left)
                    .find(|&&x| x != c.bottom() && c.leq(x, d))
                    .map(|&x| format!("c={}", c.label(x))),
            );
        } else {
            report.record_with_witness(
                "strong branch",
                "a strong Girard couple has von Neumann components",
                true,
                "skipped: couple is not strong".into(),
            );
        }
        report
    }
}

fn sided_inverse_failure(
    from: &[Elem],
    to: &[Elem],
    forward: impl Fn(Elem) -> Elem,
    backward: impl Fn(Elem) -> Elem,
    c: &Quantale,
    q: &Quantale,
) -> Option<String> {
    if from.len() != to.len() {
        return Some(format!("{} sided elements in C, {} in Q", from.len(), to.len()));
    }
    for &x in from {
        let y = forward(x);
        if !to.contains(&y) || backward(y) != x {
            return Some(format!("c={}", c.label(x)));
        }
    }
    for &y in to {
        let x = backward(y);
        if !from.contains(&x) || forward(x) != y {
            return Some(format!("a={}", q.label(y)));
        }
    }
    None
}

/// `Q → Q` with `φ = id` and both actions the multiplication. The first
/// cyclic dualizing element of `Q`, if any, is designated.
pub fn identity_couple(q: &Quantale) -> Couple {
    let n = q.size();
    let table = q.table().to_vec();
    let dualizer = q.girard_elements().first().copied();
    Couple {
        c: q.clone(),
        q: q.clone(),
        phi: (0..n).collect(),
        act_l: table.clone(),
        act_r: table,
        dualizer,
    }
}

/// `Q^op → Q` with zero multiplication on `Q^op`, actions
/// `a·c = (a → c')'` and `c·a = (c' ← a)'`, `φ = 0` and dualizer `e'`.
pub fn zero_couple(q: &Quantale) -> Result<Couple> {
    let e = q.unit().ok_or(Error::NotUnital)?;
    let n = q.size();
    let op = Arc::new(q.lattice().op_dual());
    let c = Quantale::new(op.clone(), vec![op.bottom(); n * n])?;
    let mut act_l = vec![0; n * n];
    let mut act_r = vec![0; n * n];
    for a in q.elements() {
        for x in q.elements() {
            act_l[a * n + x] = q.residual_right(a, x);
            act_r[x * n + a] = q.residual_left(x, a);
        }
    }
    Couple::new(c, q.clone(), vec![q.bottom(); n], act_l, act_r, Some(e))
}

/// Componentwise product. A dualizer is designated when every factor has one.
pub fn product_couple(parts: &[&Couple]) -> Result<Couple> {
    let c_lattices: Vec<&FiniteLattice> = parts.iter().map(|k| k.c.lattice().as_ref()).collect();
    let q_lattices: Vec<&FiniteLattice> = parts.iter().map(|k| k.q.lattice().as_ref()).collect();
    let cl = Arc::new(FiniteLattice::product(&c_lattices));
    let ql = Arc::new(FiniteLattice::product(&q_lattices));
    let c_radix = Radix::new(parts.iter().map(|k| k.c.size()).collect());
    let q_radix = Radix::new(parts.iter().map(|k| k.q.size()).collect());
    let (nc, nq) = (cl.size(), ql.size());
    let c_tuples: Vec<Vec<Elem>> = (0..nc).map(|x| c_radix.decode(x)).collect();
    let q_tuples: Vec<Vec<Elem>> = (0..nq).map(|a| q_radix.decode(a)).collect();

    let componentwise = |xs: &[Elem], ys: &[Elem], f: &dyn Fn(&Couple, Elem, Elem) -> Elem| -> Vec<Elem> {
        parts
            .iter()
            .enumerate()
            .map(|(i, k)| f(k, xs[i], ys[i]))
            .collect()
    };
    let mut c_mul = Vec::with_capacity(nc * nc);
    for x in &c_tuples {
        for y in &c_tuples {
            c_mul.push(c_radix.encode(&componentwise(x, y, &|k, a, b| k.c.mul(a, b))));
        }
    }
    let mut q_mul = Vec::with_capacity(nq * nq);
    for a in &q_tuples {
        for b in &q_tuples {
            q_mul.push(q_radix.encode(&componentwise(a, b, &|k, u, v| k.q.mul(u, v))));
        }
    }
    let mut act_l = Vec::with_capacity(nq * nc);
    for a in &q_tuples {
        for x in &c_tuples {
            act_l.push(c_radix.encode(&componentwise(a, x, &|k, u, v| k.act_left(u, v))));
        }
    }
    let mut act_r = Vec::with_capacity(nq * nc);
    for x in &c_tuples {
        for a in &q_tuples {
            act_r.push(c_radix.encode(&componentwise(x, a, &|k, u, v| k.act_right(u, v))));
        }
    }
    let phi = c_tuples
        .iter()
        .map(|x| q_radix.encode(&componentwise(x, x, &|k, u, _| k.phi(u))))
        .collect();
    let dualizer = parts
        .iter()
        .map(|k| k.dualizer)
        .collect::<Option<Vec<Elem>>>()
        .map(|ds| c_radix.encode(&ds));
    Couple::new(
        Quantale::new(cl, c_mul)?,
        Quantale::new(ql, q_mul)?,
        phi,
        act_l,
        act_r,
        dualizer,
    )
}

/// Mixed-radix tuple encoding matching [`FiniteLattice::product`].
struct Radix {
    sizes: Vec<usize>,
}

impl Radix {
    fn new(sizes: Vec<usize>) -> Self {
        Self { sizes }
    }

    fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut parts = vec![0; self.sizes.len()];
        for (slot, &s) in parts.iter_mut().zip(&self.sizes).rev() {
            *slot = x % s;
            x /= s;
        }
        parts
    }

    fn encode(&self, parts: &[usize]) -> usize {
        parts.iter().zip(&self.sizes).fold(0, |acc, (&p, &s)| acc * s + p)
    }
}

/// `Sub(kℤ_n) ⊆ Sub(ℤ_n)` with `φ` the inclusion and subgroup products as
/// actions.
pub fn sub_ideal_couple(n: usize, k: usize) -> Result<Couple> {
    if k == 0 || n < 2 || n % k != 0 {
        return Err(Error::InvalidArgument(format!("{k} does not divide {n}")));
    }
    let q = ring::sub_ring_quantale(n)?;
    let all = ring::subgroups(n);
    let ideal = ring::generated(n, 1 << (k % n));
    let inner: Vec<ring::Subgroup> = all.iter().copied().filter(|&g| g & !ideal == 0).collect();
    let c = ring::subgroup_quantale(n, &inner)?;
    let pos = |list: &[ring::Subgroup], g| list.iter().position(|&h| h == g).expect("closed");
    let phi = inner.iter().map(|&g| pos(&all, g)).collect();
    let mut act_l = Vec::with_capacity(all.len() * inner.len());
    for &a in &all {
        for &x in &inner {
            act_l.push(pos(&inner, ring::product(n, a, x)));
        }
    }
    let mut act_r = Vec::with_capacity(all.len() * inner.len());
    for &x in &inner {
        for &a in &all {
            act_r.push(pos(&inner, ring::product(n, x, a)));
        }
    }
    Couple::new(c, q, phi, act_l, act_r, None)
}
