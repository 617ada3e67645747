//! Multiplicative cyclic linear logic over Girard quantales.
//!
//! Syntax: atoms `[a-z][a-z0-9]*`, negation `~f` or `f^`, tensor `f * g`
//! (alias `⊗`), par `f | g` (alias `⅋`), constants `1`, `bot` (`⊥`), `0`
//! and `top` (`⊤`). Negation binds tightest, then `*`, then `|`; both
//! binary connectives associate to the left.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::girard::GirardQuantale;
use crate::lattice::Elem;
use crate::quantale::Quantale;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    Neg(Box<Formula>),
    One,
    Bot,
    Zero,
    Top,
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_string())
    }

    pub fn tensor(f: Formula, g: Formula) -> Self {
        Formula::Tensor(Box::new(f), Box::new(g))
    }

    pub fn par(f: Formula, g: Formula) -> Self {
        Formula::Par(Box::new(f), Box::new(g))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(f: Formula) -> Self {
        Formula::Neg(Box::new(f))
    }

    /// Atom names in order of first appearance.
    pub fn atoms(&self) -> Vec<String> {
        fn walk(f: &Formula, seen: &mut BTreeSet<String>, out: &mut Vec<String>) {
            match f {
                Formula::Atom(a) => {
                    if seen.insert(a.clone()) {
                        out.push(a.clone());
                    }
                }
                Formula::Tensor(x, y) | Formula::Par(x, y) => {
                    walk(x, seen, out);
                    walk(y, seen, out);
                }
                Formula::Neg(x) => walk(x, seen, out),
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(self, &mut BTreeSet::new(), &mut out);
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Par(..) => 0,
            Formula::Tensor(..) => 1,
            _ => 2,
        }
    }
}

/// Prints with the fewest parentheses that still parse back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, g: &Formula, min: u8| {
            if g.precedence() < min {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        };
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::One => write!(f, "1"),
            Formula::Bot => write!(f, "bot"),
            Formula::Zero => write!(f, "0"),
            Formula::Top => write!(f, "top"),
            Formula::Neg(g) => {
                write!(f, "~")?;
                wrap(f, g, 2)
            }
            Formula::Tensor(x, y) => {
                wrap(f, x, 1)?;
                write!(f, " * ")?;
                wrap(f, y, 2)
            }
            Formula::Par(x, y) => {
                wrap(f, x, 0)?;
                write!(f, " | ")?;
                wrap(f, y, 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Atom(String),
    One,
    Bot,
    Zero,
    Top,
    Tilde,
    Caret,
    Star,
    Bar,
    Open,
    Close,
}

fn syntax(column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: 1,
        column,
        message: message.into(),
    }
}

/// Tokens with their 1-based character columns; the end column is returned
/// for error reporting at end of input.
fn tokenize(text: &str) -> Result<(Vec<(Token, usize)>, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let column = i + 1;
        let ch = chars[i];
        let single = match ch {
            '~' | '¬' => Some(Token::Tilde),
            '^' => Some(Token::Caret),
            '*' | '⊗' => Some(Token::Star),
            '|' | '⅋' => Some(Token::Bar),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            '1' => Some(Token::One),
            '0' => Some(Token::Zero),
            '⊥' => Some(Token::Bot),
            '⊤' => Some(Token::Top),
            _ => None,
        };
        if let Some(token) = single {
            tokens.push((token, column));
            i += 1;
        } else if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_lowercase() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_lowercase() || chars[i].is_ascii_digit()) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let token = match word.as_str() {
                "bot" => Token::Bot,
                "top" => Token::Top,
                _ => Token::Atom(word),
            };
            tokens.push((token, column));
        } else {
            return Err(syntax(column, format!("unknown token `{ch}`")));
        }
    }
    Ok((tokens, chars.len() + 1))
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |&(_, c)| c)
    }

    fn binary(&mut self, min: u8) -> Result<Formula> {
        let mut left = self.unary()?;
        loop {
            let level = match self.peek() {
                Some(Token::Bar) => 0,
                Some(Token::Star) => 1,
                _ => return Ok(left),
            };
            if level < min {
                return Ok(left);
            }
            self.pos += 1;
            let right = self.binary(level + 1)?;
            left = if level == 0 {
                Formula::par(left, right)
            } else {
                Formula::tensor(left, right)
            };
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.peek() == Some(&Token::Tilde) {
            self.pos += 1;
            return Ok(Formula::neg(self.unary()?));
        }
        let mut f = self.primary()?;
        while self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            f = Formula::neg(f);
        }
        Ok(f)
    }

    fn primary(&mut self) -> Result<Formula> {
        let column = self.column();
        let Some((token, _)) = self.tokens.get(self.pos).cloned() else {
            return Err(syntax(column, "unexpected end of input"));
        };
        self.pos += 1;
        Ok(match token {
            Token::Atom(a) => Formula::Atom(a),
            Token::One => Formula::One,
            Token::Bot => Formula::Bot,
            Token::Zero => Formula::Zero,
            Token::Top => Formula::Top,
            Token::Open => {
                let inner = self.binary(0)?;
                if self.peek() != Some(&Token::Close) {
                    return Err(syntax(self.column(), "expected `)`"));
                }
                self.pos += 1;
                inner
            }
            other => return Err(syntax(column, format!("unexpected {}", describe(&other)))),
        })
    }
}

fn describe(token: &Token) -> &'static str {
    match token {
        Token::Caret => "`^`",
        Token::Star => "`*`",
        Token::Bar => "`|`",
        Token::Close => "`)`",
        _ => "token",
    }
}

pub fn parse(text: &str) -> Result<Formula> {
    let (tokens, end) = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end };
    let f = parser.binary(0)?;
    if parser.pos < parser.tokens.len() {
        let column = parser.column();
        let token = parser.tokens[parser.pos].0.clone();
        return Err(syntax(column, format!("unexpected {}", describe(&token))));
    }
    Ok(f)
}

pub type Valuation = BTreeMap<String, Elem>;

/// A Girard quantale with a designated cyclic dualizing element.
/// A formula with atoms replaced by their position in a valuation.
enum Compiled {
    Atom(usize),
    Tensor(Box<Compiled>, Box<Compiled>),
    Par(Box<Compiled>, Box<Compiled>),
    Neg(Box<Compiled>),
    Const(Elem),
}

#[derive(Debug, Clone)]
pub struct GirardModel {
    quantale: Quantale,
    unit: Elem,
    dualizer: Elem,
    perp: Vec<Elem>,
}

impl GirardModel {
    pub fn new(quantale: Quantale, dualizer: Elem) -> Result<Self> {
        if dualizer >= quantale.size() {
            return Err(Error::OutOfRange(dualizer));
        }
        if !(quantale.is_cyclic_element(dualizer) && quantale.is_dualizing_element(dualizer)) {
            return Err(Error::NotGirard {
                element: quantale.label(dualizer).to_string(),
            });
        }
        let perp: Vec<Elem> = quantale
            .elements()
            .map(|a| quantale.residual_right(a, dualizer))
            .collect();
        let unit = perp[dualizer];
        Ok(Self {
            quantale,
            unit,
            dualizer,
            perp,
        })
    }

    /// Uses the first cyclic dualizing element found.
    pub fn search(quantale: Quantale) -> Result<Self> {
        let d = *quantale.girard_elements().first().ok_or(Error::NoDualizer)?;
        Self::new(quantale, d)
    }

    pub fn from_girard(g: &GirardQuantale) -> Result<Self> {
        Self::new(g.quantale().clone(), g.dualizer())
    }

    pub fn quantale(&self) -> &Quantale {
        &self.quantale
    }

    pub fn unit(&self) -> Elem {
        self.unit
    }

    pub fn dualizer(&self) -> Elem {
        self.dualizer
    }

    pub fn perp(&self, a: Elem) -> Elem {
        self.perp[a]
    }

    /// `a ⅋ b = (b⊥·a⊥)⊥`.
    pub fn par(&self, a: Elem, b: Elem) -> Elem {
        self.perp[self.quantale.mul(self.perp[b], self.perp[a])]
    }

    pub fn eval(&self, f: &Formula, v: &Valuation) -> Result<Elem> {
        let q = &self.quantale;
        Ok(match f {
            Formula::Atom(a) => {
                let x = *v.get(a).ok_or_else(|| Error::UnboundAtom(a.clone()))?;
                if x >= q.size() {
                    return Err(Error::OutOfRange(x));
                }
                x
            }
            Formula::Tensor(x, y) => q.mul(self.eval(x, v)?, self.eval(y, v)?),
            Formula::Par(x, y) => self.par(self.eval(x, v)?, self.eval(y, v)?),
            Formula::Neg(x) => self.perp[self.eval(x, v)?],
            Formula::One => self.unit,
            Formula::Bot => self.dualizer,
            Formula::Zero => q.bottom(),
            Formula::Top => q.top(),
        })
    }

    /// `e ≤ ⟦f⟧`.
    pub fn is_valid(&self, f: &Formula, v: &Valuation) -> Result<bool> {
        Ok(self.quantale.leq(self.unit, self.eval(f, v)?))
    }

    fn eval_compiled(&self, f: &Compiled, digits: &[Elem]) -> Elem {
        let q = &self.quantale;
        match f {
            Compiled::Atom(i) => digits[*i],
            Compiled::Tensor(x, y) => q.mul(self.eval_compiled(x, digits), self.eval_compiled(y, digits)),
            Compiled::Par(x, y) => self.par(self.eval_compiled(x, digits), self.eval_compiled(y, digits)),
            Compiled::Neg(x) => self.perp[self.eval_compiled(x, digits)],
            Compiled::Const(c) => *c,
        }
    }

    fn compile(&self, f: &Formula, atoms: &[String]) -> Compiled {
        let sub = |x: &Formula| Box::new(self.compile(x, atoms));
        match f {
            Formula::Atom(a) => Compiled::Atom(atoms.iter().position(|x| x == a).expect("atom collected")),
            Formula::Tensor(x, y) => Compiled::Tensor(sub(x), sub(y)),
            Formula::Par(x, y) => Compiled::Par(sub(x), sub(y)),
            Formula::Neg(x) => Compiled::Neg(sub(x)),
            Formula::One => Compiled::Const(self.unit),
            Formula::Bot => Compiled::Const(self.dualizer),
            Formula::Zero => Compiled::Const(self.quantale.bottom()),
            Formula::Top => Compiled::Const(self.quantale.top()),
        }
    }

    /// Runs through every valuation of `atoms` until `found` holds, and
    /// returns that valuation.
    fn search_valuations(
        &self,
        atoms: &[String],
        budget: &Budget,
        found: impl Fn(&[Elem]) -> bool,
    ) -> Result<Option<Valuation>> {
        let n = self.quantale.size() as u128;
        let needed = n.checked_pow(atoms.len() as u32).unwrap_or(u128::MAX);
        Budget::check("valuations", needed, budget.enumeration as u128)?;
        let mut digits = vec![0; atoms.len()];
        loop {
            if found(&digits) {
                return Ok(Some(atoms.iter().cloned().zip(digits).collect()));
            }
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return Ok(None);
                }
                digits[i] += 1;
                if digits[i] < self.quantale.size() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    /// A falsifying valuation, or `None` if `f` is valid under all of them.
    pub fn tautology_counterexample(&self, f: &Formula, budget: &Budget) -> Result<Option<Valuation>> {
        let atoms = f.atoms();
        let c = self.compile(f, &atoms);
        self.search_valuations(&atoms, budget, |v| !self.quantale.leq(self.unit, self.eval_compiled(&c, v)))
    }

    pub fn is_tautology(&self, f: &Formula, budget: &Budget) -> Result<bool> {
        Ok(self.tautology_counterexample(f, budget)?.is_none())
    }

    /// A valuation on which `f` and `g` differ, if any.
    pub fn equivalence_counterexample(&self, f: &Formula, g: &Formula, budget: &Budget) -> Result<Option<Valuation>> {
        let mut atoms = f.atoms();
        for a in g.atoms() {
            if !atoms.contains(&a) {
                atoms.push(a);
            }
        }
        let (cf, cg) = (self.compile(f, &atoms), self.compile(g, &atoms));
        self.search_valuations(&atoms, budget, |v| self.eval_compiled(&cf, v) != self.eval_compiled(&cg, v))
    }

    pub fn equivalent(&self, f: &Formula, g: &Formula, budget: &Budget) -> Result<bool> {
        Ok(self.equivalence_counterexample(f, g, budget)?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::girard::rosenthal;
    use crate::ring::sub_ring_quantale;
    use crate::FiniteLattice;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn a() -> Formula {
        Formula::atom("a")
    }

    fn b() -> Formula {
        Formula::atom("b")
    }

    #[test]
    fn grammar() {
        assert_eq!(parse("a * ~a").unwrap(), Formula::tensor(a(), Formula::neg(a())));
        assert_eq!(
            parse("a | b | c").unwrap(),
            Formula::par(Formula::par(a(), b()), Formula::atom("c"))
        );
        assert_eq!(
            parse("a * (b | 1)").unwrap(),
            Formula::tensor(a(), Formula::par(b(), Formula::One))
        );
        assert_eq!(parse("a^").unwrap(), parse("~a").unwrap());
        assert_eq!(parse("a ⊗ b ⅋ ⊥").unwrap(), parse("a * b | bot").unwrap());
        assert_eq!(parse("a | b * c").unwrap(), Formula::par(a(), Formula::tensor(b(), Formula::atom("c"))));
        assert_eq!(parse("~a * b").unwrap(), Formula::tensor(Formula::neg(a()), b()));
        assert_eq!(parse("top | 0").unwrap(), Formula::par(Formula::Top, Formula::Zero));
    }

    #[test]
    fn syntax_errors_carry_columns() {
        let column = |text: &str| match parse(text).unwrap_err() {
            Error::Syntax { column, .. } => column,
            other => panic!("{other}"),
        };
        assert_eq!(column("a * ("), 6);
        assert_eq!(column("a + b"), 3);
        assert_eq!(column("(a"), 3);
        assert_eq!(column("a b"), 3);
        assert_eq!(column("* a"), 1);
        assert_eq!(column("A"), 1);
    }

    fn rosenthal_model(q: Quantale) -> GirardModel {
        GirardModel::from_girard(&rosenthal(&q).unwrap()).unwrap()
    }

    fn chain2() -> Quantale {
        Quantale::meet_quantale(Arc::new(FiniteLattice::chain(2).unwrap())).unwrap()
    }

    #[test]
    fn evaluation_laws() {
        let m = rosenthal_model(chain2());
        let budget = Budget::default();
        let eq = |x: &str, y: &str| m.equivalent(&parse(x).unwrap(), &parse(y).unwrap(), &budget).unwrap();
        assert!(eq("1 * a", "a"));
        assert!(eq("~~a", "a"));
        assert!(eq("~(a * b)", "~b | ~a"));
        assert!(m.is_tautology(&parse("a | ~a").unwrap(), &budget).unwrap());
        assert!(m.is_valid(&Formula::One, &Valuation::new()).unwrap());
    }

    #[test]
    fn a_tensor_not_a_is_falsifiable() {
        let m = rosenthal_model(sub_ring_quantale(4).unwrap());
        let f = parse("a * ~a").unwrap();
        let v = m.tautology_counterexample(&f, &Budget::default()).unwrap().unwrap();
        assert!(!m.is_valid(&f, &v).unwrap());
    }

    #[test]
    fn unbound_atoms_and_budget() {
        let m = rosenthal_model(chain2());
        assert_eq!(m.eval(&a(), &Valuation::new()), Err(Error::UnboundAtom("a".into())));
        let many = parse("a*b*c*d*e*f*g*h*i*j*k").unwrap();
        assert!(matches!(m.is_tautology(&many, &Budget::default()), Err(Error::Budget(_))));
    }

    fn formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            "[a-d][0-9]?".prop_map(|s: String| Formula::Atom(s)),
            Just(Formula::One),
            Just(Formula::Bot),
            Just(Formula::Zero),
            Just(Formula::Top),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::neg),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| Formula::tensor(x, y)),
                (inner.clone(), inner).prop_map(|(x, y)| Formula::par(x, y)),
            ]
        })
    }

    proptest! {
        #[test]
        fn printer_round_trips(f in formula()) {
            prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
        }
    }
}
