use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Propositional formula over named atoms with `∧` and `→` only.
///
/// The derived `Ord` is the structural order used to make closure
/// iteration and proof traces reproducible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

pub type FormulaSet = BTreeSet<Formula>;

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn implies(left: Formula, right: Formula) -> Formula {
        Formula::Implies(Box::new(left), Box::new(right))
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    pub fn is_conjunction(&self) -> bool {
        matches!(self, Formula::And(..))
    }

    pub fn is_implication(&self) -> bool {
        matches!(self, Formula::Implies(..))
    }

    /// Atom occurrences, left to right.
    pub fn atom_list(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Atom(a) => out.push(a),
            Formula::And(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        self.atom_list().into_iter().map(str::to_string).collect()
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::And(l, r) | Formula::Implies(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Leaves of a pure conjunction tree, or `None` if an implication occurs.
    pub fn conjuncts(&self) -> Option<Vec<&Formula>> {
        match self {
            Formula::Atom(_) => Some(vec![self]),
            Formula::And(l, r) => {
                let mut v = l.conjuncts()?;
                v.extend(r.conjuncts()?);
                Some(v)
            }
            Formula::Implies(..) => None,
        }
    }

    /// Left-ordered conjunction `((x0 ∧ x1) ∧ x2) ∧ …` of the given parts.
    pub fn left_conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    /// Truth value under an assignment of atoms.
    pub fn eval(&self, valuation: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Formula::Atom(a) => valuation(a),
            Formula::And(l, r) => l.eval(valuation) && r.eval(valuation),
            Formula::Implies(l, r) => !l.eval(valuation) || r.eval(valuation),
        }
    }
}

fn fmt_operand(f: &mut fmt::Formatter<'_>, x: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({x})")
    } else {
        write!(f, "{x}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => f.write_str(a),
            Formula::And(l, r) => {
                fmt_operand(f, l, l.is_implication())?;
                f.write_str(" & ")?;
                fmt_operand(f, r, !r.is_atom())
            }
            Formula::Implies(l, r) => {
                fmt_operand(f, l, l.is_implication())?;
                f.write_str(" -> ")?;
                fmt_operand(f, r, false)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("formula syntax error at byte {position}: {message}")]
pub struct ParseFormulaError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    And,
    Arrow,
    Open,
    Close,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '′'
}

fn tokenize(s: &str) -> Result<Vec<(usize, Token)>, ParseFormulaError> {
    let mut out = Vec::new();
    let mut chars = s.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '&' || c == '∧' {
            chars.next();
            out.push((i, Token::And));
        } else if c == '→' {
            chars.next();
            out.push((i, Token::Arrow));
        } else if c == '-' {
            chars.next();
            match chars.next() {
                Some((_, '>')) => out.push((i, Token::Arrow)),
                _ => return Err(ParseFormulaError { position: i, message: "expected `->`".into() }),
            }
        } else if c == '(' {
            chars.next();
            out.push((i, Token::Open));
        } else if c == ')' {
            chars.next();
            out.push((i, Token::Close));
        } else if is_ident_char(c) {
            let mut name = String::new();
            while let Some(&(_, c)) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                name.push(c);
                chars.next();
            }
            out.push((i, Token::Ident(name)));
        } else {
            return Err(ParseFormulaError { position: i, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(i, _)| *i)
    }

    fn fail<T>(&self, message: &str) -> Result<T, ParseFormulaError> {
        Err(ParseFormulaError { position: self.here(), message: message.into() })
    }

    // implication: weakest, right-associative
    fn implication(&mut self) -> Result<Formula, ParseFormulaError> {
        let left = self.conjunction()?;
        if self.peek() == Some(&Token::Arrow) {
            self.pos += 1;
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    // conjunction: left-associative
    fn conjunction(&mut self) -> Result<Formula, ParseFormulaError> {
        let mut left = self.primary()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            let right = self.primary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn primary(&mut self) -> Result<Formula, ParseFormulaError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Ok(Formula::Atom(name))
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.implication()?;
                if self.peek() != Some(&Token::Close) {
                    return self.fail("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.fail("expected atom or `(`"),
            None => self.fail("unexpected end of input"),
        }
    }
}

impl FromStr for Formula {
    type Err = ParseFormulaError;

    fn from_str(s: &str) -> Result<Formula, ParseFormulaError> {
        let tokens = tokenize(s)?;
        let mut p = Parser { tokens, pos: 0, end: s.len() };
        let f = p.implication()?;
        if p.pos != p.tokens.len() {
            return p.fail("trailing input");
        }
        Ok(f)
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    #[test]
    fn conjunction_is_left_associative() {
        let a = Formula::atom("a");
        let b = Formula::atom("b");
        let c = Formula::atom("c");
        assert_eq!(f("a & b & c"), Formula::and(Formula::and(a, b), c));
    }

    #[test]
    fn arrow_binds_weakest() {
        assert_eq!(f("a & b -> a"), Formula::implies(f("a & b"), f("a")));
        assert_eq!(f("a -> b -> c"), Formula::implies(f("a"), f("b -> c")));
    }

    #[test]
    fn display_round_trips() {
        for s in ["a & (b & c) -> (a & b) & c", "(a -> b) -> a", "a & (b -> c)", "F0 & F1 & F2"] {
            let x = f(s);
            assert_eq!(f(&x.to_string()), x, "{s}");
        }
        assert_eq!(f("((F0 & F1) & F2)").to_string(), "F0 & F1 & F2");
    }

    #[test]
    fn unicode_connectives() {
        assert_eq!(f("a ∧ b → a"), f("a & b -> a"));
    }

    #[test]
    fn syntax_errors_report_position() {
        let e = "a & ".parse::<Formula>().unwrap_err();
        assert_eq!(e.position, 4);
        assert!("a - b".parse::<Formula>().is_err());
        assert!("(a & b".parse::<Formula>().is_err());
        assert!("a b".parse::<Formula>().is_err());
    }
}
