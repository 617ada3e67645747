use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::Args;
use quantale_core::{
    build_g, check_g_of_s, check_girard_sampled, cs_couple, emit_couple, emit_girard_quantale, emit_lattice,
    emit_quantale, g_of_s, parse, product_algebra_spectrum, rosenthal, sub_ring_quantale, Budget, EndoQuantale,
    Error, FiniteLattice, GirardModel, GirardQuantale, TensorProduct, Valuation,
};

use crate::load::{self, Loaded};
use crate::report::{Builder, Suite};
use crate::suites;
use crate::{Kind, SuiteArg};

pub struct Context {
    pub budget: Budget,
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Lattice: builtin name or definition file.
    #[arg(long)]
    lattice: Option<String>,
    /// Right factor for `tensor`; defaults to the order dual of the lattice.
    #[arg(long)]
    right: Option<String>,
    /// Quantale: builtin name or definition file.
    #[arg(long)]
    quantale: Option<String>,
    /// Couple: builtin name or definition file.
    #[arg(long)]
    couple: Option<String>,
    /// Modulus for `subring`.
    #[arg(long)]
    n: Option<usize>,
    /// Write the constructed object here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

/// The suite a construction error belongs to, if it is a law violation
/// rather than a malformed input.
fn law_violation(err: &anyhow::Error) -> Option<Suite> {
    match err.chain().find_map(|e| e.downcast_ref::<Error>())? {
        Error::NoJoin(..) | Error::NoMeet(..) | Error::Cycle(_) => Some(Suite::Lattice),
        Error::NotAssociative { .. }
        | Error::NotLeftDistributive { .. }
        | Error::NotRightDistributive { .. }
        | Error::ZeroNotAbsorbing(_)
        | Error::NotNeutral(_) => Some(Suite::Quantale),
        _ => None,
    }
}

pub fn check(ctx: &Context, input: &str, requested: &[SuiteArg]) -> Result<Builder> {
    let mut out = Builder::new();
    if let Some(seed) = ctx.seed {
        out.seed(seed);
    }
    let loaded = match load::load(input, &ctx.budget) {
        Ok((loaded, bytes)) => {
            out.input(&bytes);
            loaded
        }
        Err(err) => {
            let suite = law_violation(&err).ok_or(err)?;
            if let Ok(bytes) = std::fs::read(input) {
                out.input(&bytes);
            }
            let (name, anchor) = match suite {
                Suite::Lattice => ("lattice laws", "every pair has a join and a meet"),
                _ => ("quantale laws", "associative, distributes over joins, 0 absorbs"),
            };
            let cause = input_error(input);
            out.check(suite, name, anchor, Some(cause));
            return Ok(out);
        }
    };
    let suites: Vec<SuiteArg> = if requested.is_empty() {
        match &loaded {
            Loaded::Lattice(_) => vec![SuiteArg::Lattice],
            Loaded::Quantale(_) => vec![SuiteArg::Lattice, SuiteArg::Quantale],
            Loaded::Girard(..) | Loaded::Construction(_) => {
                vec![SuiteArg::Lattice, SuiteArg::Quantale, SuiteArg::Girard]
            }
            Loaded::Couple(k) if k.dualizer().is_some() => vec![SuiteArg::Couple, SuiteArg::Girard],
            Loaded::Couple(_) => vec![SuiteArg::Couple],
        }
    } else {
        requested.to_vec()
    };
    out.fact("input", loaded.kind());
    for suite in suites {
        run_suite(ctx, &mut out, &loaded, suite)?;
    }
    Ok(out)
}

/// Re-reads the input to recover the law violation message for the report.
fn input_error(input: &str) -> String {
    match load::load(input, &Budget::default()) {
        Err(e) => format!("{:#}", e),
        Ok(_) => "inconsistent input".into(),
    }
}

fn run_suite(ctx: &Context, out: &mut Builder, loaded: &Loaded, suite: SuiteArg) -> Result<()> {
    match (suite, loaded) {
        (SuiteArg::Lattice, Loaded::Lattice(l)) => suites::lattice(out, l),
        (SuiteArg::Lattice, Loaded::Quantale(q) | Loaded::Girard(q, _)) => suites::lattice(out, q.lattice()),
        (SuiteArg::Lattice, Loaded::Construction(g)) => suites::lattice(out, g.quantale().lattice()),
        (SuiteArg::Lattice, Loaded::Couple(k)) => {
            suites::lattice(out, k.c().lattice());
            suites::lattice(out, k.q().lattice());
        }
        (SuiteArg::Quantale, Loaded::Lattice(l)) => match load::meet_quantale(l.clone()) {
            Ok(q) => suites::quantale(out, &q),
            Err(e) => out.check(Suite::Quantale, "meet is a quantale multiplication", "distributive lattice", Some(e.to_string())),
        },
        (SuiteArg::Quantale, Loaded::Quantale(q) | Loaded::Girard(q, _)) => suites::quantale(out, q),
        (SuiteArg::Quantale, Loaded::Construction(g)) => suites::quantale(out, g.quantale()),
        (SuiteArg::Quantale, Loaded::Couple(k)) => {
            suites::quantale(out, k.c());
            suites::quantale(out, k.q());
        }
        (SuiteArg::Couple, Loaded::Couple(k)) => suites::couple(out, k),
        (SuiteArg::Couple, Loaded::Construction(g)) => suites::couple(out, g.couple()),
        (SuiteArg::Couple, other) => bail!("the couple suite needs a couple, got a {}", other.kind()),
        (SuiteArg::Girard, Loaded::Lattice(l)) => match load::meet_quantale(l.clone()) {
            Ok(q) => suites::girard_quantale(out, &q, None),
            Err(e) => out.check(Suite::Girard, "meet is a quantale multiplication", "distributive lattice", Some(e.to_string())),
        },
        (SuiteArg::Girard, Loaded::Quantale(q)) => suites::girard_quantale(out, q, None),
        (SuiteArg::Girard, Loaded::Girard(q, d)) => suites::girard_quantale(out, q, Some(*d)),
        (SuiteArg::Girard, Loaded::Construction(g)) => suites::construction(out, g),
        (SuiteArg::Girard, Loaded::Couple(k)) => {
            suites::girard_couple(out, k, &ctx.budget);
        }
    }
    Ok(())
}

fn emit(args: &ConstructArgs, text: String) -> Result<()> {
    match &args.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            println!();
            Ok(())
        }
    }
}

fn need<'a>(value: &'a Option<String>, flag: &str, kind: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| anyhow!("construct {kind} needs --{flag}"))
}

fn emit_g(args: &ConstructArgs, out: &mut Builder, g: &GirardQuantale) -> Result<()> {
    suites::construction(out, g);
    emit(args, emit_girard_quantale(g.quantale(), g.dualizer())?)
}

pub fn construct(ctx: &Context, kind: Kind, args: &ConstructArgs) -> Result<Builder> {
    let budget = &ctx.budget;
    let mut out = Builder::new();
    if let Some(seed) = ctx.seed {
        out.seed(seed);
    }
    match kind {
        Kind::Endo => {
            let (s, bytes) = load::lattice(need(&args.lattice, "lattice", "endo")?, budget)?;
            out.input(&bytes);
            let e = EndoQuantale::build(s.clone(), budget)?;
            let q = e.quantale();
            out.check(
                Suite::Construct,
                "endomorphism decomposition",
                "α = ⋀_x (ρ_{α(x)} ∨ λ_x) = ⋀_x (ρ_x ∨ λ_{α♯(x)})",
                e.decomposition_failure().map(|a| format!("α={}", q.label(a))),
            );
            let ds = q.girard_elements();
            let distributive = s.distributivity_witness().is_none();
            let mut r = quantale_core::CheckReport::new();
            r.record_with_witness(
                "Girard iff distributive",
                "Q(S) has a cyclic dualizing element ⟺ S is distributive",
                ds.is_empty() != distributive,
                format!("distributive={distributive}, Girard elements={}", ds.len()),
            );
            out.extend(Suite::Construct, r);
            suites::quantale(&mut out, q);
            match ds.first() {
                Some(&d) => emit(args, emit_girard_quantale(q, d)?)?,
                None => emit(args, emit_quantale(q)?)?,
            }
        }
        Kind::Tensor => {
            let (s, bytes) = load::lattice(need(&args.lattice, "lattice", "tensor")?, budget)?;
            out.input(&bytes);
            let t: Arc<FiniteLattice> = match &args.right {
                Some(r) => {
                    let (t, bytes) = load::lattice(r, budget)?;
                    out.input(&bytes);
                    t
                }
                None => Arc::new(s.op_dual()),
            };
            let tensor = TensorProduct::new(s, t, budget)?;
            let l = tensor.lattice();
            out.check(
                Suite::Construct,
                "generated by pure tensors",
                "c = ⋁{x⊗y : x⊗y ≤ c}",
                l.elements()
                    .find(|&c| l.join_all(tensor.members(c).map(|(x, y)| tensor.generator(x, y))) != c)
                    .map(|c| l.label(c).to_string()),
            );
            suites::lattice(&mut out, l);
            emit(args, emit_lattice(l)?)?;
        }
        Kind::CsCouple => {
            let (s, bytes) = load::lattice(need(&args.lattice, "lattice", "cs-couple")?, budget)?;
            out.input(&bytes);
            let cs = cs_couple(s, budget)?;
            suites::couple(&mut out, &cs.couple);
            out.extend(Suite::Construct, cs.formula_report());
            suites::girard_couple(&mut out, &cs.couple, budget);
            emit(args, emit_couple(&cs.couple)?)?;
        }
        Kind::G => {
            let (k, bytes) = load::couple(need(&args.couple, "couple", "G")?, budget)?;
            out.input(&bytes);
            let carrier = (k.c().size() * k.q().size()) as u128;
            Budget::check("G carrier candidates", carrier, budget.enumeration as u128)?;
            let g = build_g(&k)?;
            emit_g(args, &mut out, &g)?;
        }
        Kind::Rosenthal => {
            let (q, bytes) = load::quantale(need(&args.quantale, "quantale", "rosenthal")?, budget)?;
            out.input(&bytes);
            Budget::check("G carrier candidates", (q.size() * q.size()) as u128, budget.enumeration as u128)?;
            let g = rosenthal(&q)?;
            out.check(
                Suite::Construct,
                "carrier is Q × Q^op",
                "|G| = |Q|²",
                (g.size() != q.size() * q.size()).then(|| format!("|G|={}, |Q|={}", g.size(), q.size())),
            );
            emit_g(args, &mut out, &g)?;
        }
        Kind::GofS => {
            let (s, bytes) = load::lattice(need(&args.lattice, "lattice", "GofS")?, budget)?;
            out.input(&bytes);
            let (cs, g) = g_of_s(s, budget)?;
            out.extend(Suite::Construct, check_g_of_s(&cs, &g));
            emit_g(args, &mut out, &g)?;
        }
        Kind::Subring => {
            let n = args.n.ok_or_else(|| anyhow!("construct subring needs --n"))?;
            out.input(format!("subring {n}").as_bytes());
            let q = sub_ring_quantale(n)?;
            suites::quantale(&mut out, &q);
            emit(args, emit_quantale(&q)?)?;
        }
    }
    Ok(out)
}

pub fn spectrum(ctx: &Context, n: usize, dims: Option<&[usize]>, samples: usize, tol: f64) -> Result<Builder> {
    let seed = ctx.seed.unwrap_or(42);
    let mut out = Builder::new();
    out.seed(seed);
    let report = match dims {
        Some(dims) => {
            out.input(format!("dims {dims:?} samples {samples} tol {tol:e}").as_bytes());
            out.fact("algebra", format!("block diagonal {dims:?}"));
            product_algebra_spectrum(dims, samples, seed, tol, &ctx.budget)?
        }
        None => {
            out.input(format!("n {n} samples {samples} tol {tol:e}").as_bytes());
            out.fact("algebra", format!("M_{n}(C)"));
            check_girard_sampled(n, samples, seed, tol, &ctx.budget)?
        }
    };
    let worst = report.checks.iter().filter_map(|c| c.error).fold(0.0, f64::max);
    out.fact("samples", samples);
    out.fact("tolerance", format!("{tol:e}"));
    out.fact("max_error", format!("{worst:e}"));
    if n == 1 && dims.is_none() {
        out.fact("note", "M_1 has spectrum {0, M_1}: the two-element chain with d = 0");
    }
    out.extend(Suite::Spectrum, report);
    Ok(out)
}

fn model(ctx: &Context, spec: &str, out: &mut Builder) -> Result<GirardModel> {
    let spec = if spec.starts_with("builtin:") || std::path::Path::new(spec).exists() {
        spec.to_string()
    } else {
        format!("builtin:{spec}")
    };
    let (loaded, bytes) = load::load(&spec, &ctx.budget)?;
    out.input(&bytes);
    let m = match loaded {
        Loaded::Lattice(l) => GirardModel::search(load::meet_quantale(l)?)?,
        Loaded::Quantale(q) => GirardModel::search(q)?,
        Loaded::Girard(q, d) => GirardModel::new(q, d)?,
        Loaded::Construction(g) => GirardModel::from_girard(&g)?,
        Loaded::Couple(k) => GirardModel::from_girard(&build_g(&k)?)?,
    };
    out.fact("model", format!("{spec} ({} elements)", m.quantale().size()));
    Ok(m)
}

fn show(m: &GirardModel, v: &Valuation) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|(a, &x)| format!("{a}={}", m.quantale().label(x)))
        .collect();
    if parts.is_empty() {
        "no atoms".into()
    } else {
        parts.join(", ")
    }
}

pub fn eval(
    ctx: &Context,
    model_spec: &str,
    formula: &str,
    assign: Option<&str>,
    tautology: bool,
    equivalent: Option<&str>,
) -> Result<Builder> {
    let f = parse(formula)?;
    let g = equivalent.map(parse).transpose()?;
    let mut out = Builder::new();
    if let Some(seed) = ctx.seed {
        out.seed(seed);
    }
    out.input(formula.as_bytes());
    let m = model(ctx, model_spec, &mut out)?;
    let q = m.quantale();
    out.fact("formula", &f);
    if tautology {
        let counter = m.tautology_counterexample(&f, &ctx.budget)?;
        out.check(Suite::Logic, "tautology", "1 ≤ ⟦f⟧ under every valuation", counter.map(|v| show(&m, &v)));
    }
    if let Some(g) = &g {
        let counter = m.equivalence_counterexample(&f, g, &ctx.budget)?;
        out.check(
            Suite::Logic,
            &format!("equivalent to {g}"),
            "⟦f⟧ = ⟦g⟧ under every valuation",
            counter.map(|v| show(&m, &v)),
        );
    }
    if !tautology && g.is_none() || assign.is_some() {
        let mut v = Valuation::new();
        for entry in assign.unwrap_or("").split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (atom, label) = entry
                .split_once('=')
                .ok_or_else(|| anyhow!("--assign entries look like a=x, got `{entry}`"))?;
            let x = q
                .lattice()
                .index_of(label.trim())
                .ok_or_else(|| anyhow!("`{}` is not an element of the model", label.trim()))?;
            v.insert(atom.trim().to_string(), x);
        }
        let value = m.eval(&f, &v)?;
        out.fact("value", q.label(value));
        let valid = q.leq(m.unit(), value);
        out.check(
            Suite::Logic,
            "valid",
            "1 ≤ ⟦f⟧",
            (!valid).then(|| format!("⟦f⟧ = {} under {}", q.label(value), show(&m, &v))),
        );
    }
    Ok(out)
}
