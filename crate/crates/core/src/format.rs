//! Line-oriented text formats for lattices, quantales and couples.
//!
//! ```text
//! # lattice
//! elements: 0 a b 1
//! covers: 0<a, 0<b, a<1, b<1
//! # quantale: the lattice block plus every product
//! mul: a*b=0
//! ```
//!
//! A couple has a `[C]` and a `[Q]` section, each a quantale block, followed
//! by `phi: c->a`, `actl: a*c=m`, `actr: c*a=m` and an optional
//! `dualizer: d`. Several entries may share a line, separated by commas.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::couple::Couple;
use crate::error::{Error, Result};
use crate::lattice::{Elem, FiniteLattice};
use crate::quantale::Quantale;

/// A parsed definition file.
#[derive(Debug, Clone)]
pub enum Definition {
    Lattice(FiniteLattice),
    Quantale(Quantale),
    /// A quantale with a designated cyclic dualizing element.
    Girard { quantale: Quantale, dualizer: Elem },
    Couple(Couple),
}

#[derive(Debug, Default)]
struct Block {
    elements: Option<(usize, Vec<String>)>,
    covers: Vec<(usize, String, String)>,
    products: Vec<(usize, String, String, String)>,
}

#[derive(Debug, Default)]
struct Document {
    top: Block,
    c: Option<Block>,
    q: Option<Block>,
    phi: Vec<(usize, String, String)>,
    actl: Vec<(usize, String, String, String)>,
    actr: Vec<(usize, String, String, String)>,
    dualizer: Option<(usize, String)>,
    negation: Vec<(usize, String, String)>,
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column: 1,
        message: message.into(),
    }
}

fn split_pair<'a>(line: usize, entry: &'a str, sep: &str) -> Result<(&'a str, &'a str)> {
    let (x, y) = entry
        .split_once(sep)
        .ok_or_else(|| syntax(line, format!("expected `{sep}` in `{entry}`")))?;
    let (x, y) = (x.trim(), y.trim());
    if x.is_empty() || y.is_empty() {
        return Err(syntax(line, format!("empty operand in `{entry}`")));
    }
    Ok((x, y))
}

/// `x*y=z`.
fn product_entry(line: usize, entry: &str) -> Result<(usize, String, String, String)> {
    let (lhs, z) = split_pair(line, entry, "=")?;
    let (x, y) = split_pair(line, lhs, "*")?;
    Ok((line, x.into(), y.into(), z.into()))
}

fn parse_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut section: Option<char> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match content {
            "[C]" => {
                section = Some('C');
                doc.c.get_or_insert_with(Block::default);
                continue;
            }
            "[Q]" => {
                section = Some('Q');
                doc.q.get_or_insert_with(Block::default);
                continue;
            }
            _ => {}
        }
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| syntax(line, format!("expected `key: value`, got `{content}`")))?;
        let entries = || rest.split(',').map(str::trim).filter(|e| !e.is_empty());
        let block = match section {
            Some('C') => doc.c.as_mut().expect("opened"),
            Some('Q') => doc.q.as_mut().expect("opened"),
            _ => &mut doc.top,
        };
        match key.trim() {
            "elements" => {
                if block.elements.is_some() {
                    return Err(syntax(line, "elements declared twice"));
                }
                block.elements = Some((line, rest.split_whitespace().map(String::from).collect()));
            }
            "covers" => {
                for e in entries() {
                    let (x, y) = split_pair(line, e, "<")?;
                    block.covers.push((line, x.into(), y.into()));
                }
            }
            "mul" => {
                for e in entries() {
                    block.products.push(product_entry(line, e)?);
                }
            }
            "phi" => {
                for e in entries() {
                    let (x, y) = split_pair(line, e, "->")?;
                    doc.phi.push((line, x.into(), y.into()));
                }
            }
            "actl" => {
                for e in entries() {
                    doc.actl.push(product_entry(line, e)?);
                }
            }
            "actr" => {
                for e in entries() {
                    doc.actr.push(product_entry(line, e)?);
                }
            }
            "dualizer" => doc.dualizer = Some((line, rest.trim().to_string())),
            "negation" => {
                for e in entries() {
                    let (x, y) = split_pair(line, e, "->")?;
                    doc.negation.push((line, x.into(), y.into()));
                }
            }
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
    }
    Ok(doc)
}

fn build_lattice(block: &Block) -> Result<FiniteLattice> {
    let (line, elements) = block
        .elements
        .as_ref()
        .ok_or_else(|| syntax(1, "missing `elements:` line"))?;
    let covers: Vec<(String, String)> = block.covers.iter().map(|(_, x, y)| (x.clone(), y.clone())).collect();
    FiniteLattice::from_covers(elements, &covers).map_err(|e| match e {
        Error::UnknownElement(name) => {
            let at = block
                .covers
                .iter()
                .find(|(_, x, y)| *x == name || *y == name)
                .map_or(*line, |c| c.0);
            syntax(at, format!("unknown element `{name}`"))
        }
        other => other,
    })
}

fn lookup(lattice: &FiniteLattice, line: usize, name: &str) -> Result<Elem> {
    lattice
        .index_of(name)
        .ok_or_else(|| syntax(line, format!("unknown element `{name}`")))
}

/// Fills an `outer × inner` table from entries, requiring every cell once.
fn fill_table(
    entries: &[(usize, String, String, String)],
    outer: &FiniteLattice,
    inner: &FiniteLattice,
    result: &FiniteLattice,
    what: &str,
) -> Result<Vec<Elem>> {
    let mut table = vec![None; outer.size() * inner.size()];
    for (line, x, y, z) in entries {
        let (x, y, z) = (lookup(outer, *line, x)?, lookup(inner, *line, y)?, lookup(result, *line, z)?);
        let cell = &mut table[x * inner.size() + y];
        if cell.is_some() {
            return Err(syntax(
                *line,
                format!("{what} {}*{} given twice", outer.label(x), inner.label(y)),
            ));
        }
        *cell = Some(z);
    }
    table
        .iter()
        .enumerate()
        .map(|(i, z)| {
            z.ok_or_else(|| {
                let (x, y) = (i / inner.size(), i % inner.size());
                Error::InvalidArgument(format!(
                    "{what} table is not total: {}*{} is missing",
                    outer.label(x),
                    inner.label(y)
                ))
            })
        })
        .collect()
}

fn build_quantale(block: &Block) -> Result<Quantale> {
    let lattice = Arc::new(build_lattice(block)?);
    let mul = fill_table(&block.products, &lattice, &lattice, &lattice, "mul")?;
    Quantale::new(lattice, mul)
}

pub fn parse_lattice(text: &str) -> Result<FiniteLattice> {
    build_lattice(&parse_document(text)?.top)
}

pub fn parse_quantale(text: &str) -> Result<Quantale> {
    build_quantale(&parse_document(text)?.top)
}

pub fn parse_couple(text: &str) -> Result<Couple> {
    let doc = parse_document(text)?;
    couple_from(&doc)
}

fn couple_from(doc: &Document) -> Result<Couple> {
    let c = build_quantale(doc.c.as_ref().ok_or_else(|| syntax(1, "missing [C] section"))?)?;
    let q = build_quantale(doc.q.as_ref().ok_or_else(|| syntax(1, "missing [Q] section"))?)?;
    let (cl, ql) = (c.lattice().clone(), q.lattice().clone());
    let mut phi = vec![None; c.size()];
    for (line, x, a) in &doc.phi {
        phi[lookup(&cl, *line, x)?] = Some(lookup(&ql, *line, a)?);
    }
    let phi = phi
        .iter()
        .enumerate()
        .map(|(x, a)| a.ok_or_else(|| Error::InvalidArgument(format!("phi is missing {}", cl.label(x)))))
        .collect::<Result<Vec<_>>>()?;
    let act_l = fill_table(&doc.actl, &ql, &cl, &cl, "actl")?;
    let act_r = fill_table(&doc.actr, &cl, &ql, &cl, "actr")?;
    let dualizer = doc
        .dualizer
        .as_ref()
        .map(|(line, d)| lookup(&cl, *line, d))
        .transpose()?;
    Couple::new(c, q, phi, act_l, act_r, dualizer)
}

/// Recognizes the kind of definition from its contents.
pub fn parse_definition(text: &str) -> Result<Definition> {
    let doc = parse_document(text)?;
    if doc.c.is_some() || doc.q.is_some() {
        return Ok(Definition::Couple(couple_from(&doc)?));
    }
    if doc.top.products.is_empty() {
        return Ok(Definition::Lattice(build_lattice(&doc.top)?));
    }
    let quantale = build_quantale(&doc.top)?;
    match &doc.dualizer {
        None => Ok(Definition::Quantale(quantale)),
        Some((line, d)) => {
            let dualizer = lookup(quantale.lattice(), *line, d)?;
            if !(quantale.is_cyclic_element(dualizer) && quantale.is_dualizing_element(dualizer)) {
                return Err(syntax(*line, format!("`{d}` is not a cyclic dualizing element")));
            }
            for (line, x, y) in &doc.negation {
                let (x, y) = (lookup(quantale.lattice(), *line, x)?, lookup(quantale.lattice(), *line, y)?);
                if quantale.residual_right(x, dualizer) != y {
                    return Err(syntax(*line, format!("negation of `{}` is not `{}`", quantale.label(x), quantale.label(y))));
                }
            }
            Ok(Definition::Girard { quantale, dualizer })
        }
    }
}

fn check_labels(lattice: &FiniteLattice) -> Result<()> {
    let reserved = |l: &str| {
        l.is_empty()
            || l.chars().any(|ch| ch.is_whitespace() || ",#*=<:".contains(ch))
            || l.contains("->")
    };
    match lattice.labels().iter().find(|l| reserved(l)) {
        Some(l) => Err(Error::InvalidArgument(format!("label `{l}` cannot be written in the text format"))),
        None => Ok(()),
    }
}

pub fn emit_lattice(lattice: &FiniteLattice) -> Result<String> {
    check_labels(lattice)?;
    let mut out = String::new();
    writeln!(out, "elements: {}", lattice.labels().join(" ")).unwrap();
    let covers: Vec<String> = lattice
        .covers()
        .into_iter()
        .map(|(x, y)| format!("{}<{}", lattice.label(x), lattice.label(y)))
        .collect();
    if !covers.is_empty() {
        writeln!(out, "covers: {}", covers.join(", ")).unwrap();
    }
    Ok(out)
}

fn emit_table(
    out: &mut String,
    key: &str,
    outer: &FiniteLattice,
    inner: &FiniteLattice,
    result: &FiniteLattice,
    value: impl Fn(Elem, Elem) -> Elem,
) {
    for x in outer.elements() {
        let row: Vec<String> = inner
            .elements()
            .map(|y| format!("{}*{}={}", outer.label(x), inner.label(y), result.label(value(x, y))))
            .collect();
        writeln!(out, "{key}: {}", row.join(", ")).unwrap();
    }
}

pub fn emit_quantale(q: &Quantale) -> Result<String> {
    let mut out = emit_lattice(q.lattice())?;
    let l = q.lattice();
    emit_table(&mut out, "mul", l, l, l, |a, b| q.mul(a, b));
    Ok(out)
}

/// A quantale followed by its dualizer and negation table.
pub fn emit_girard_quantale(q: &Quantale, dualizer: Elem) -> Result<String> {
    let mut out = emit_quantale(q)?;
    writeln!(out, "dualizer: {}", q.label(dualizer)).unwrap();
    let neg: Vec<String> = q
        .elements()
        .map(|a| format!("{}->{}", q.label(a), q.label(q.residual_right(a, dualizer))))
        .collect();
    writeln!(out, "negation: {}", neg.join(", ")).unwrap();
    Ok(out)
}

pub fn emit_couple(k: &Couple) -> Result<String> {
    let (cl, ql) = (k.c().lattice(), k.q().lattice());
    let mut out = format!("[C]\n{}[Q]\n{}", emit_quantale(k.c())?, emit_quantale(k.q())?);
    let phi: Vec<String> = cl
        .elements()
        .map(|x| format!("{}->{}", cl.label(x), ql.label(k.phi(x))))
        .collect();
    writeln!(out, "phi: {}", phi.join(", ")).unwrap();
    emit_table(&mut out, "actl", ql, cl, cl, |a, c| k.act_left(a, c));
    emit_table(&mut out, "actr", cl, ql, cl, |c, a| k.act_right(c, a));
    if let Some(d) = k.dualizer() {
        writeln!(out, "dualizer: {}", cl.label(d)).unwrap();
    }
    Ok(out)
}
