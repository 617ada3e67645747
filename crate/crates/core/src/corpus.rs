//! Named builtin structures.
//!
//! | name | structure |
//! |---|---|
//! | `chain2`..`chain5`, `bool2`, `bool3`, `M3`, `N5`, `2x3`, … | lattice |
//! | `subZ<n>` | subgroups of `ℤ_n` under ideal product |
//! | `endo-<lattice>` | join-preserving endomaps |
//! | `zero-<lattice>` | zero multiplication |
//! | `identity-<quantale>`, `zero-couple-<quantale>`, `cs-couple-<lattice>` | couples |
//! | `rosenthal-<quantale>`, `GofS-<lattice>` | Girard quantales |
//!
//! Wherever a quantale is expected a distributive lattice stands for its meet
//! quantale.

use std::sync::Arc;

use crate::budget::Budget;
use crate::couple::{identity_couple, zero_couple, Couple};
use crate::cs::cs_couple;
use crate::endo::EndoQuantale;
use crate::error::{Error, Result};
use crate::girard::{g_of_s, rosenthal, GirardQuantale};
use crate::lattice::FiniteLattice;
use crate::quantale::Quantale;
use crate::ring::sub_ring_quantale;

#[derive(Debug, Clone)]
pub enum Builtin {
    Lattice(FiniteLattice),
    Quantale(Quantale),
    Couple(Couple),
    Girard(GirardQuantale),
}

fn unknown(name: &str) -> Error {
    Error::InvalidArgument(format!("unknown builtin `{name}`"))
}

pub fn lattice(name: &str) -> Result<FiniteLattice> {
    match name {
        "M3" => return Ok(FiniteLattice::m3()),
        "N5" => return Ok(FiniteLattice::n5()),
        _ => {}
    }
    if let Some(k) = name.strip_prefix("chain").and_then(|k| k.parse().ok()) {
        return FiniteLattice::chain(k);
    }
    if let Some(k) = name.strip_prefix("bool").and_then(|k| k.parse().ok()) {
        return FiniteLattice::boolean(k);
    }
    // `2x3`: product of chains with that many elements.
    let sizes: Option<Vec<usize>> = name.split('x').map(|k| k.parse().ok()).collect();
    match sizes {
        Some(sizes) if sizes.len() > 1 => {
            let chains = sizes
                .into_iter()
                .map(FiniteLattice::chain)
                .collect::<Result<Vec<_>>>()?;
            Ok(FiniteLattice::product(&chains.iter().collect::<Vec<_>>()))
        }
        _ => Err(unknown(name)),
    }
}

pub fn quantale(name: &str, budget: &Budget) -> Result<Quantale> {
    if let Some(n) = name.strip_prefix("subZ").and_then(|n| n.parse().ok()) {
        return sub_ring_quantale(n);
    }
    if let Some(base) = name.strip_prefix("endo-") {
        return Ok(EndoQuantale::build(Arc::new(lattice(base)?), budget)?.quantale().clone());
    }
    if let Some(base) = name.strip_prefix("zero-") {
        return Ok(Quantale::zero_multiplication(Arc::new(lattice(base)?)));
    }
    let l = lattice(name)?;
    if let Some((x, y, z)) = l.distributivity_witness() {
        return Err(Error::InvalidArgument(format!(
            "{name} is not distributive ({}, {}, {}), so its meet is not a quantale",
            l.label(x),
            l.label(y),
            l.label(z)
        )));
    }
    Quantale::meet_quantale(Arc::new(l))
}

pub fn couple(name: &str, budget: &Budget) -> Result<Couple> {
    if let Some(base) = name.strip_prefix("cs-couple-") {
        return Ok(cs_couple(Arc::new(lattice(base)?), budget)?.couple);
    }
    if let Some(q) = name.strip_prefix("zero-couple-") {
        return zero_couple(&quantale(q, budget)?);
    }
    if let Some(q) = name.strip_prefix("identity-") {
        return Ok(identity_couple(&quantale(q, budget)?));
    }
    Err(unknown(name))
}

pub fn girard(name: &str, budget: &Budget) -> Result<GirardQuantale> {
    if let Some(q) = name.strip_prefix("rosenthal-") {
        return rosenthal(&quantale(q, budget)?);
    }
    if let Some(base) = name.strip_prefix("GofS-") {
        return Ok(g_of_s(Arc::new(lattice(base)?), budget)?.1);
    }
    Err(unknown(name))
}

/// Resolves any builtin name, most specific kind first.
pub fn builtin(name: &str, budget: &Budget) -> Result<Builtin> {
    let is_girard = name.starts_with("rosenthal-") || name.starts_with("GofS-");
    let is_couple = ["cs-couple-", "zero-couple-", "identity-"].iter().any(|p| name.starts_with(p));
    let is_quantale = ["subZ", "endo-", "zero-"].iter().any(|p| name.starts_with(p));
    if is_girard {
        girard(name, budget).map(Builtin::Girard)
    } else if is_couple {
        couple(name, budget).map(Builtin::Couple)
    } else if is_quantale {
        quantale(name, budget).map(Builtin::Quantale)
    } else {
        lattice(name).map(Builtin::Lattice)
    }
}

/// The lattices registered by name.
pub const LATTICES: [&str; 8] = ["chain2", "chain3", "chain4", "chain5", "bool2", "bool3", "M3", "N5"];

/// Lattices small enough for the endomorphism quantale and `C(S)`.
pub const ENDO_LATTICES: [&str; 7] = ["chain2", "chain3", "chain4", "chain5", "bool2", "M3", "N5"];

/// The quantale corpus: meet quantales of the distributive lattices,
/// subgroup quantales, a zero multiplication and every `Q(S)`.
pub fn quantales(budget: &Budget) -> Result<Vec<(String, Quantale)>> {
    let mut names: Vec<String> = ["chain2", "chain3", "chain4", "chain5", "bool2", "bool3"]
        .map(String::from)
        .to_vec();
    names.extend(["subZ4", "subZ6", "subZ8", "subZ12", "zero-chain3"].map(String::from));
    names.extend(ENDO_LATTICES.iter().map(|l| format!("endo-{l}")));
    names
        .into_iter()
        .map(|n| quantale(&n, budget).map(|q| (n, q)))
        .collect()
}

/// Identity couples on every corpus quantale, zero couples on the unital
/// ones and `C(S)` for every endomorphism-sized lattice.
pub fn couples(budget: &Budget) -> Result<Vec<(String, Couple)>> {
    let mut out = Vec::new();
    let qs = quantales(budget)?;
    for (name, q) in &qs {
        out.push((format!("identity-{name}"), identity_couple(q)));
    }
    for (name, q) in &qs {
        if q.unit().is_some() {
            out.push((format!("zero-couple-{name}"), zero_couple(q)?));
        }
    }
    for l in ENDO_LATTICES {
        out.push((format!("cs-couple-{l}"), cs_couple(Arc::new(lattice(l)?), budget)?.couple));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        let b = Budget::default();
        assert_eq!(lattice("2x2").unwrap().size(), 4);
        assert_eq!(lattice("bool3").unwrap().size(), 8);
        assert_eq!(quantale("endo-chain3", &b).unwrap().size(), 6);
        assert_eq!(girard("rosenthal-chain2", &b).unwrap().size(), 4);
        assert!(matches!(builtin("cs-couple-2x2", &b).unwrap(), Builtin::Couple(_)));
        assert!(matches!(builtin("M3", &b).unwrap(), Builtin::Lattice(_)));
        assert!(quantale("M3", &b).is_err());
        assert!(builtin("nope", &b).is_err());
    }

    #[test]
    fn corpus_builds() {
        let b = Budget::default();
        let qs = quantales(&b).unwrap();
        assert_eq!(qs.len(), 18);
        assert!(qs.iter().any(|(_, q)| q.unit().is_none()));
    }
}
