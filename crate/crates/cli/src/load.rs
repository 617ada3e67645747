use std::sync::Arc;

use anyhow::{bail, Context, Result};
use quantale_core::corpus::{self, Builtin};
use quantale_core::{parse_definition, Budget, Couple, Definition, Elem, FiniteLattice, GirardQuantale, Quantale};

/// Anything a command can take as input.
#[derive(Debug, Clone)]
pub enum Loaded {
    Lattice(FiniteLattice),
    Quantale(Quantale),
    /// A quantale read from a file with a designated dualizer.
    Girard(Quantale, Elem),
    Construction(GirardQuantale),
    Couple(Couple),
}

impl Loaded {
    pub fn kind(&self) -> &'static str {
        match self {
            Loaded::Lattice(_) => "lattice",
            Loaded::Quantale(_) => "quantale",
            Loaded::Girard(..) | Loaded::Construction(_) => "Girard quantale",
            Loaded::Couple(_) => "couple",
        }
    }
}

/// `builtin:NAME` or a path to a definition file. Returns the object and the
/// bytes that identify it.
pub fn load(spec: &str, budget: &Budget) -> Result<(Loaded, Vec<u8>)> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let loaded = match corpus::builtin(name, budget)? {
            Builtin::Lattice(l) => Loaded::Lattice(l),
            Builtin::Quantale(q) => Loaded::Quantale(q),
            Builtin::Couple(k) => Loaded::Couple(k),
            Builtin::Girard(g) => Loaded::Construction(g),
        };
        return Ok((loaded, spec.as_bytes().to_vec()));
    }
    let bytes = std::fs::read(spec).with_context(|| format!("cannot read {spec}"))?;
    let text = String::from_utf8(bytes.clone()).with_context(|| format!("{spec} is not UTF-8"))?;
    let loaded = match parse_definition(&text).with_context(|| format!("in {spec}"))? {
        Definition::Lattice(l) => Loaded::Lattice(l),
        Definition::Quantale(q) => Loaded::Quantale(q),
        Definition::Girard { quantale, dualizer } => Loaded::Girard(quantale, dualizer),
        Definition::Couple(k) => Loaded::Couple(k),
    };
    Ok((loaded, bytes))
}

/// A lattice argument: a builtin name (with or without `builtin:`) or a file.
pub fn lattice(spec: &str, budget: &Budget) -> Result<(Arc<FiniteLattice>, Vec<u8>)> {
    let spec = qualify(spec);
    match load(&spec, budget)? {
        (Loaded::Lattice(l), bytes) => Ok((Arc::new(l), bytes)),
        (other, _) => bail!("{spec} is a {}, expected a lattice", other.kind()),
    }
}

/// A quantale argument; a distributive lattice stands for its meet quantale.
pub fn quantale(spec: &str, budget: &Budget) -> Result<(Quantale, Vec<u8>)> {
    let spec = qualify(spec);
    match load(&spec, budget)? {
        (Loaded::Quantale(q) | Loaded::Girard(q, _), bytes) => Ok((q, bytes)),
        (Loaded::Construction(g), bytes) => Ok((g.quantale().clone(), bytes)),
        (Loaded::Lattice(l), bytes) => Ok((meet_quantale(l)?, bytes)),
        (other, _) => bail!("{spec} is a {}, expected a quantale", other.kind()),
    }
}

pub fn couple(spec: &str, budget: &Budget) -> Result<(Couple, Vec<u8>)> {
    let spec = qualify(spec);
    match load(&spec, budget)? {
        (Loaded::Couple(k), bytes) => Ok((k, bytes)),
        (other, _) => bail!("{spec} is a {}, expected a couple", other.kind()),
    }
}

pub fn meet_quantale(l: FiniteLattice) -> Result<Quantale> {
    if let Some((x, y, z)) = l.distributivity_witness() {
        bail!(
            "the lattice is not distributive at ({}, {}, {}), so meet is not a quantale multiplication",
            l.label(x),
            l.label(y),
            l.label(z)
        );
    }
    Ok(Quantale::meet_quantale(Arc::new(l))?)
}

/// Bare names that are not existing files are taken as builtins.
fn qualify(spec: &str) -> String {
    if spec.starts_with("builtin:") || std::path::Path::new(spec).exists() {
        spec.to_string()
    } else {
        format!("builtin:{spec}")
    }
}
