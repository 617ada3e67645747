//! Brute-force oracles that recompute laws straight from the tables, with no
//! join-irreducible shortcuts and no library residuals.
#![allow(dead_code)]

use quantale_core::{Couple, Elem, Quantale};

fn sup(q: &Quantale, items: impl IntoIterator<Item = Elem>) -> Elem {
    items.into_iter().fold(q.bottom(), |acc, x| q.join(acc, x))
}

/// Every couple law over every tuple of elements.
pub fn couple_failure(k: &Couple) -> Option<String> {
    let (c, q) = (k.c(), k.q());
    let (nc, nq) = (c.size(), q.size());
    let al = |a: Elem, x: Elem| k.act_left_table()[a * nc + x];
    let ar = |x: Elem, a: Elem| k.act_right_table()[x * nq + a];
    let phi = |x: Elem| k.phi_table()[x];
    let cm = |x: Elem, y: Elem| c.table()[x * nc + y];
    let qm = |a: Elem, b: Elem| q.table()[a * nq + b];

    if phi(c.bottom()) != q.bottom() {
        return Some("phi(0) != 0".into());
    }
    for x in 0..nc {
        for y in 0..nc {
            if phi(c.join(x, y)) != q.join(phi(x), phi(y)) {
                return Some(format!("phi not join-preserving at ({x},{y})"));
            }
            if phi(cm(x, y)) != qm(phi(x), phi(y)) {
                return Some(format!("phi not multiplicative at ({x},{y})"));
            }
            if ar(x, phi(y)) != cm(x, y) || al(phi(x), y) != cm(x, y) {
                return Some(format!("coupling identity fails at ({x},{y})"));
            }
        }
    }
    for a in 0..nq {
        if al(a, c.bottom()) != c.bottom() || ar(c.bottom(), a) != c.bottom() {
            return Some(format!("action of {a} does not absorb 0"));
        }
        for x in 0..nc {
            if phi(al(a, x)) != qm(a, phi(x)) || phi(ar(x, a)) != qm(phi(x), a) {
                return Some(format!("phi not a bimodule map at ({a},{x})"));
            }
            for y in 0..nc {
                let j = c.join(x, y);
                if al(a, j) != c.join(al(a, x), al(a, y)) || ar(j, a) != c.join(ar(x, a), ar(y, a)) {
                    return Some(format!("action not join-preserving at ({a},{x},{y})"));
                }
                if al(a, cm(x, y)) != cm(al(a, x), y)
                    || cm(ar(x, a), y) != cm(x, al(a, y))
                    || ar(cm(x, y), a) != cm(x, ar(y, a))
                {
                    return Some(format!("mixed associativity fails at ({a},{x},{y})"));
                }
            }
            for b in 0..nq {
                let ab = q.join(a, b);
                if al(ab, x) != c.join(al(a, x), al(b, x)) || ar(x, ab) != c.join(ar(x, a), ar(x, b)) {
                    return Some(format!("action not join-preserving in Q at ({a},{b},{x})"));
                }
                if al(qm(a, b), x) != al(a, al(b, x))
                    || ar(x, qm(a, b)) != ar(ar(x, a), b)
                    || ar(al(a, x), b) != al(a, ar(x, b))
                {
                    return Some(format!("module law fails at ({a},{b},{x})"));
                }
            }
        }
    }
    if (0..nc).any(|x| al(q.bottom(), x) != c.bottom() || ar(x, q.bottom()) != c.bottom()) {
        return Some("0 of Q does not act as 0".into());
    }
    None
}

/// `a → d` and `d ← a` by scanning.
fn negations(q: &Quantale, d: Elem) -> (Vec<Elem>, Vec<Elem>) {
    let right = q
        .elements()
        .map(|a| sup(q, q.elements().filter(|&c| q.leq(q.mul(c, a), d))))
        .collect();
    let left = q
        .elements()
        .map(|a| sup(q, q.elements().filter(|&c| q.leq(q.mul(a, c), d))))
        .collect();
    (right, left)
}

pub fn is_girard_element(q: &Quantale, d: Elem) -> bool {
    let cyclic = q
        .elements()
        .all(|a| q.elements().all(|b| q.leq(q.mul(a, b), d) == q.leq(q.mul(b, a), d)));
    if !cyclic {
        return false;
    }
    let (right, left) = negations(q, d);
    q.elements().all(|a| left[right[a]] == a && right[left[a]] == a)
}

pub fn girard_elements(q: &Quantale) -> Vec<Elem> {
    q.elements().filter(|&d| is_girard_element(q, d)).collect()
}

fn sided(q: &Quantale) -> (Vec<Elem>, Vec<Elem>) {
    let top = q.top();
    let right = q.elements().filter(|&r| q.leq(q.mul(r, top), r)).collect();
    let left = q.elements().filter(|&l| q.leq(q.mul(top, l), l)).collect();
    (right, left)
}

/// The annulators `r ↦ r→0` and `l ↦ 0←l` are inverse bijections between
/// right- and left-sided elements.
pub fn is_von_neumann(q: &Quantale) -> bool {
    let (right, left) = sided(q);
    let (ann_r, ann_l) = negations(q, q.bottom());
    right.iter().all(|&r| left.contains(&ann_r[r]) && ann_l[ann_r[r]] == r)
        && left.iter().all(|&l| right.contains(&ann_l[l]) && ann_r[ann_l[l]] == l)
}

/// Girard negation agrees with the annulators on sided elements.
pub fn negation_is_annulator(q: &Quantale, d: Elem) -> bool {
    let (right, left) = sided(q);
    let (neg_r, neg_l) = negations(q, d);
    let (ann_r, ann_l) = negations(q, q.bottom());
    right.iter().all(|&r| neg_r[r] == ann_r[r]) && left.iter().all(|&l| neg_l[l] == ann_l[l])
}
