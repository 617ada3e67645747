use quantale_core::girard::negation_annulator_failure;
use quantale_core::{build_g, Budget, CheckReport, Couple, Elem, FiniteLattice, GirardQuantale, Quantale};

use crate::report::{Builder, Suite};

/// Exhaustive cubic law checks are run up to this size; larger quantales rely
/// on the irreducible-based validation done when they were built.
const EXHAUSTIVE_MAX: usize = 128;

pub fn lattice(out: &mut Builder, l: &FiniteLattice) {
    let n = l.size();
    let all = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));
    let pair = |(x, y): (Elem, Elem)| format!("({}, {})", l.label(x), l.label(y));
    out.check(
        Suite::Lattice,
        "order is a partial order",
        "reflexive, antisymmetric, transitive",
        (0..n)
            .find(|&x| !l.leq(x, x))
            .map(|x| format!("{} ≰ itself", l.label(x)))
            .or_else(|| {
                all()
                    .find(|&(x, y)| x != y && l.leq(x, y) && l.leq(y, x))
                    .map(pair)
            })
            .or_else(|| {
                all()
                    .flat_map(|(x, y)| (0..n).map(move |z| (x, y, z)))
                    .find(|&(x, y, z)| l.leq(x, y) && l.leq(y, z) && !l.leq(x, z))
                    .map(|(x, y, z)| format!("({}, {}, {})", l.label(x), l.label(y), l.label(z)))
            }),
    );
    let lub = |x, y| {
        let j = l.join(x, y);
        l.leq(x, j) && l.leq(y, j) && (0..n).all(|u| !(l.leq(x, u) && l.leq(y, u)) || l.leq(j, u))
    };
    let glb = |x, y| {
        let m = l.meet(x, y);
        l.leq(m, x) && l.leq(m, y) && (0..n).all(|u| !(l.leq(u, x) && l.leq(u, y)) || l.leq(u, m))
    };
    out.check(
        Suite::Lattice,
        "join is the least upper bound",
        "x ∨ y = min{u : x ≤ u, y ≤ u}",
        all().find(|&(x, y)| !lub(x, y)).map(pair),
    );
    out.check(
        Suite::Lattice,
        "meet is the greatest lower bound",
        "x ∧ y = max{u : u ≤ x, u ≤ y}",
        all().find(|&(x, y)| !glb(x, y)).map(pair),
    );
    out.check(
        Suite::Lattice,
        "bounded",
        "0 ≤ x ≤ 1",
        (0..n)
            .find(|&x| !(l.leq(l.bottom(), x) && l.leq(x, l.top())))
            .map(|x| l.label(x).to_string()),
    );
    out.fact("lattice.size", n);
    out.fact("lattice.join_irreducibles", l.join_irreducibles().len());
    match l.distributivity_witness() {
        None => out.fact("distributive", true),
        Some((x, y, z)) => out.fact(
            "distributive",
            format!("false, witness ({}, {}, {})", l.label(x), l.label(y), l.label(z)),
        ),
    }
}

pub fn quantale(out: &mut Builder, q: &Quantale) {
    let n = q.size();
    if n <= EXHAUSTIVE_MAX {
        out.check(
            Suite::Quantale,
            "quantale laws",
            "associative, distributes over joins, 0 absorbs",
            q.exhaustive_law_failure(),
        );
    } else {
        let mut r = CheckReport::new();
        r.record_with_witness(
            "quantale laws",
            "associative, distributes over joins, 0 absorbs",
            true,
            format!("{n} elements: checked on join-irreducibles at construction"),
        );
        out.extend(Suite::Quantale, r);
    }
    out.fact("quantale.size", n);
    out.fact("unit", q.unit().map_or("none".to_string(), |e| q.label(e).to_string()));
    out.fact("commutative", q.is_commutative());
    out.fact("semiunital", q.is_semiunital());
    let sided = q.sided_sets();
    out.fact("right_sided", sided.right.len());
    out.fact("left_sided", sided.left.len());
}

/// Girard checks for a quantale, at the designated element or at every
/// cyclic dualizing element found by search.
pub fn girard_quantale(out: &mut Builder, q: &Quantale, designated: Option<Elem>) {
    let ds = match designated {
        Some(d) => {
            let ok = q.is_cyclic_element(d) && q.is_dualizing_element(d);
            out.check(
                Suite::Girard,
                "designated element is cyclic and dualizing",
                "ab ≤ d ⟺ ba ≤ d, d←(a→d) = a",
                (!ok).then(|| format!("d={}", q.label(d))),
            );
            if ok {
                vec![d]
            } else {
                Vec::new()
            }
        }
        None => {
            let ds = q.girard_elements();
            let mut r = CheckReport::new();
            r.record_with_witness(
                "cyclic dualizing element exists",
                "Girard quantale",
                !ds.is_empty(),
                if ds.is_empty() {
                    "no element is both cyclic and dualizing".into()
                } else {
                    let labels: Vec<&str> = ds.iter().map(|&d| q.label(d)).collect();
                    format!("d ∈ {{{}}}", labels.join(", "))
                },
            );
            out.extend(Suite::Girard, r);
            ds
        }
    };
    if ds.is_empty() {
        return;
    }
    out.check(
        Suite::Girard,
        "von Neumann",
        "annulators are inverse bijections R(Q) ⇄ L(Q)",
        (!q.is_von_neumann()).then(|| "annulators are not inverse".into()),
    );
    for d in ds {
        out.check(
            Suite::Girard,
            &format!("negation at {} is the annulator on sided elements", q.label(d)),
            "r→d = r→0, d←l = 0←l",
            negation_annulator_failure(q, d),
        );
    }
}

pub fn couple(out: &mut Builder, k: &Couple) {
    out.extend(Suite::Couple, k.validate());
    out.fact("couple.C", k.c().size());
    out.fact("couple.Q", k.q().size());
    out.fact("strong", k.is_strong());
    out.fact("unital", k.is_unital());
}

/// Girard checks for a couple, including the quantale `G` built from it.
pub fn girard_couple(out: &mut Builder, k: &Couple, budget: &Budget) -> Option<GirardQuantale> {
    let d = match k.dualizer().or_else(|| k.girard_elements().first().copied()) {
        Some(d) => d,
        None => {
            out.check(
                Suite::Girard,
                "cyclic dualizing element exists",
                "Girard couple",
                Some("no element of C is both cyclic and dualizing".into()),
            );
            return None;
        }
    };
    let girard = k.is_cyclic(d) && k.is_dualizing(d);
    out.check(
        Suite::Girard,
        "dualizer is cyclic and dualizing",
        "Girard couple",
        (!girard).then(|| format!("d={}", k.c().label(d))),
    );
    if !girard {
        return None;
    }
    let k = &k.clone().with_dualizer(d).expect("checked above");
    out.fact("dualizer", k.c().label(d));
    out.check(Suite::Girard, "self-adjoint", "φ♯(c⊥) = φ(c)⊥", k.self_adjoint_failure());
    out.extend(Suite::Girard, k.check_girard_implies());
    if k.is_strong() {
        out.extend(Suite::Girard, k.check_strong_sided_iso());
    }
    let carrier = (k.c().size() * k.q().size()) as u128;
    if let Err(e) = Budget::check("G carrier candidates", carrier, budget.enumeration as u128) {
        out.check(Suite::Girard, "G construction", "φ factors through a Girard quantale", Some(e.to_string()));
        return None;
    }
    match build_g(k) {
        Err(e) => {
            out.check(Suite::Girard, "G construction", "φ factors through a Girard quantale", Some(e.to_string()));
            None
        }
        Ok(g) => {
            out.extend(Suite::Girard, g.verify());
            if k.is_strong() {
                out.extend(Suite::Girard, g.check_sided_chain());
            }
            out.fact("G.size", g.size());
            Some(g)
        }
    }
}

/// Checks for a constructed Girard quantale with its couple.
pub fn construction(out: &mut Builder, g: &GirardQuantale) {
    out.extend(Suite::Girard, g.verify());
    if g.couple().is_strong() {
        out.extend(Suite::Girard, g.check_sided_chain());
    }
    out.check(
        Suite::Girard,
        "negation extends the annulators",
        "r→d = r→0, d←l = 0←l",
        g.negation_extends_annulators(),
    );
    out.check(
        Suite::Girard,
        "von Neumann",
        "annulators are inverse bijections R(G) ⇄ L(G)",
        (!g.quantale().is_von_neumann()).then(|| "annulators are not inverse".into()),
    );
    out.fact("G.size", g.size());
}
