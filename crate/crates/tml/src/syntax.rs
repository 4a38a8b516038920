//! Formulas over `{∨, ∧, ¬, □, ⊥}`: parsing, rendering, substitution, closure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A propositional modal formula. Children are shared, so cloning is cheap.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(Arc<str>),
    Bot,
    Neg(Arc<Formula>),
    Box(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
}

/// Output alphabet for [`Formula::render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Ascii,
    Unicode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at line {line}, column {column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(Arc::from(name))
    }

    pub fn neg(&self) -> Formula {
        Formula::Neg(Arc::new(self.clone()))
    }

    pub fn boxed(&self) -> Formula {
        Formula::Box(Arc::new(self.clone()))
    }

    pub fn and(a: &Formula, b: &Formula) -> Formula {
        Formula::And(Arc::new(a.clone()), Arc::new(b.clone()))
    }

    pub fn or(a: &Formula, b: &Formula) -> Formula {
        Formula::Or(Arc::new(a.clone()), Arc::new(b.clone()))
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bot => 1,
            Formula::Neg(a) | Formula::Box(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Number of connective occurrences, counting `⊥` as a nullary connective.
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Bot => 1,
            Formula::Neg(a) | Formula::Box(a) => 1 + a.connectives(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.connectives() + b.connectives(),
        }
    }

    pub fn is_neg(&self) -> bool {
        matches!(self, Formula::Neg(_))
    }

    pub fn contains_bot(&self) -> bool {
        match self {
            Formula::Var(_) => false,
            Formula::Bot => true,
            Formula::Neg(a) | Formula::Box(a) => a.contains_bot(),
            Formula::And(a, b) | Formula::Or(a, b) => a.contains_bot() || b.contains_bot(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Bot => {}
            Formula::Neg(a) | Formula::Box(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// All subformulas, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    pub(crate) fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Var(_) | Formula::Bot => {}
            Formula::Neg(a) | Formula::Box(a) => a.collect_subformulas(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
        }
    }

    /// Simultaneous substitution of variables. Unmapped variables stay put.
    pub fn substitute(&self, map: &BTreeMap<Arc<str>, Formula>) -> Formula {
        match self {
            Formula::Var(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::Bot => Formula::Bot,
            Formula::Neg(a) => a.substitute(map).neg(),
            Formula::Box(a) => a.substitute(map).boxed(),
            Formula::And(a, b) => Formula::and(&a.substitute(map), &b.substitute(map)),
            Formula::Or(a, b) => Formula::or(&a.substitute(map), &b.substitute(map)),
        }
    }

    /// Substitute a single variable.
    pub fn instantiate(&self, var: &str, by: &Formula) -> Formula {
        let mut map = BTreeMap::new();
        map.insert(Arc::from(var), by.clone());
        self.substitute(&map)
    }

    pub fn render(&self, style: Style) -> String {
        let mut s = String::new();
        self.render_into(style, &mut s);
        s
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Neg(_) | Formula::Box(_) => 3,
            Formula::Var(_) | Formula::Bot => 4,
        }
    }

    fn render_child(child: &Formula, min_prec: u8, style: Style, out: &mut String) {
        if child.prec() < min_prec {
            out.push('(');
            child.render_into(style, out);
            out.push(')');
        } else {
            child.render_into(style, out);
        }
    }

    fn render_into(&self, style: Style, out: &mut String) {
        let (neg, nec, and, or, bot) = match style {
            Style::Ascii => ("~", "#", " & ", " | ", "bot"),
            Style::Unicode => ("¬", "□", " ∧ ", " ∨ ", "⊥"),
        };
        match self {
            Formula::Var(v) => out.push_str(v),
            Formula::Bot => out.push_str(bot),
            Formula::Neg(a) => {
                out.push_str(neg);
                Self::render_child(a, 3, style, out);
            }
            Formula::Box(a) => {
                out.push_str(nec);
                Self::render_child(a, 3, style, out);
            }
            // Left-associative: the right operand needs parentheses at equal precedence.
            Formula::And(a, b) => {
                Self::render_child(a, 2, style, out);
                out.push_str(and);
                Self::render_child(b, 3, style, out);
            }
            Formula::Or(a, b) => {
                Self::render_child(a, 1, style, out);
                out.push_str(or);
                Self::render_child(b, 2, style, out);
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            f.write_str(&self.render(Style::Unicode))
        } else {
            f.write_str(&self.render(Style::Ascii))
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render(Style::Ascii))
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Sort formulas by size, then by ASCII rendering.
pub fn canonical_order(fs: &mut [Formula]) {
    fs.sort_by_cached_key(|f| (f.size(), f.render(Style::Ascii)));
}

/// The negation closure: subformulas plus `¬φ` for every member `φ` that is not a negation.
pub fn closure<'a, I: IntoIterator<Item = &'a Formula>>(fs: I) -> BTreeSet<Formula> {
    let mut subs = BTreeSet::new();
    for f in fs {
        f.collect_subformulas(&mut subs);
    }
    let mut out = subs.clone();
    for f in &subs {
        if !f.is_neg() {
            out.insert(f.neg());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Lexer and parser

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    Neg,
    Nec,
    And,
    Or,
    LParen,
    RParen,
    Comma,
    Arrow,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Bot => "`bot`".into(),
            Tok::Neg => "`~`".into(),
            Tok::Nec => "`#`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`=>`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Result<Lexer, ParseError> {
        let mut toks = Vec::new();
        let chars: Vec<char> = src.chars().collect();
        let (mut line, mut col) = (1usize, 1usize);
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (l0, c0) = (line, col);
            let mut adv = 1;
            let tok = match c {
                '\n' => {
                    line += 1;
                    col = 1;
                    i += 1;
                    continue;
                }
                c if c.is_whitespace() => None,
                '~' | '¬' => Some(Tok::Neg),
                '#' | '□' => Some(Tok::Nec),
                '&' | '∧' => Some(Tok::And),
                '|' | '∨' => Some(Tok::Or),
                '⊥' => Some(Tok::Bot),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ',' => Some(Tok::Comma),
                '⇒' => Some(Tok::Arrow),
                '=' if chars.get(i + 1) == Some(&'>') => {
                    adv = 2;
                    Some(Tok::Arrow)
                }
                c if c.is_ascii_lowercase() => {
                    let mut j = i;
                    while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                        j += 1;
                    }
                    let word: String = chars[i..j].iter().collect();
                    adv = j - i;
                    Some(if word == "bot" { Tok::Bot } else { Tok::Ident(word) })
                }
                other => {
                    return Err(ParseError {
                        line,
                        column: col,
                        expected: "a formula token".into(),
                        found: format!("character `{other}`"),
                    })
                }
            };
            if let Some(t) = tok {
                toks.push((t, l0, c0));
            }
            i += adv;
            col += adv;
        }
        toks.push((Tok::End, line, col));
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let (t, line, column) = &self.toks[self.pos];
        ParseError { line: *line, column: *column, expected: expected.into(), found: t.describe() }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conj()?;
            lhs = Formula::or(&lhs, &rhs);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Formula::and(&lhs, &rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Neg => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Nec => {
                self.bump();
                Ok(self.unary()?.boxed())
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::var(&name))
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(f)
            }
            _ => Err(self.error("a variable, `bot`, `~`, `#` or `(`")),
        }
    }

    fn formula_list(&mut self, stop: &[Tok]) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if stop.contains(self.peek()) {
            return Ok(out);
        }
        loop {
            out.push(self.formula()?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }
}

/// Parse a single formula.
pub fn parse(src: &str) -> Result<Formula, ParseError> {
    let mut lx = Lexer::new(src)?;
    let f = lx.formula()?;
    if *lx.peek() != Tok::End {
        return Err(lx.error("an operator or end of input"));
    }
    Ok(f)
}

/// Parse a comma-separated, possibly empty list of formulas.
pub fn parse_list(src: &str) -> Result<Vec<Formula>, ParseError> {
    let mut lx = Lexer::new(src)?;
    let fs = lx.formula_list(&[Tok::End])?;
    if *lx.peek() != Tok::End {
        return Err(lx.error("`,` or end of input"));
    }
    Ok(fs)
}

/// Parse `Γ => Δ` into its two formula lists.
pub fn parse_sequent_parts(src: &str) -> Result<(Vec<Formula>, Vec<Formula>), ParseError> {
    let mut lx = Lexer::new(src)?;
    let left = lx.formula_list(&[Tok::Arrow])?;
    if *lx.peek() != Tok::Arrow {
        return Err(lx.error("`,` or `=>`"));
    }
    lx.bump();
    let right = lx.formula_list(&[Tok::End])?;
    if *lx.peek() != Tok::End {
        return Err(lx.error("`,` or end of input"));
    }
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn renders_minimal_parentheses() {
        assert_eq!(p("~#p | q & r").render(Style::Ascii), "~#p | q & r");
        assert_eq!(p("(p | q) & r").render(Style::Ascii), "(p | q) & r");
        assert_eq!(p("p | (q | r)").render(Style::Ascii), "p | (q | r)");
        assert_eq!(p("(p | q) | r").render(Style::Ascii), "p | q | r");
        assert_eq!(p("~(p & q)").render(Style::Unicode), "¬(p ∧ q)");
        assert_eq!(p("bot | ⊥").render(Style::Ascii), "bot | bot");
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(p("¬□p ∨ q ∧ ⊥"), p("~#p | q & bot"));
    }

    #[test]
    fn reports_position_of_failure() {
        let e = parse("p & (q |").unwrap_err();
        assert_eq!((e.line, e.column), (1, 9));
        assert!(e.expected.contains("variable"));
        let e = parse("p\n  & )").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        let e = parse("p q").unwrap_err();
        assert_eq!(e.column, 3);
        assert!(parse("P").is_err());
    }

    #[test]
    fn sequent_parts() {
        let (l, r) = parse_sequent_parts(" => p | ~p").unwrap();
        assert!(l.is_empty());
        assert_eq!(r, vec![p("p | ~p")]);
        let (l, r) = parse_sequent_parts("p, #q =>").unwrap();
        assert_eq!(l.len(), 2);
        assert!(r.is_empty());
        assert!(parse_sequent_parts("p, q").is_err());
    }

    #[test]
    fn closure_examples() {
        let c = closure([&p("#p")]);
        let want: BTreeSet<_> = ["#p", "~#p", "p", "~p"].iter().map(|s| p(s)).collect();
        assert_eq!(c, want);
        let c = closure([&p("~(p | q)")]);
        let want: BTreeSet<_> = ["~(p | q)", "p | q", "p", "q", "~p", "~q"].iter().map(|s| p(s)).collect();
        assert_eq!(c, want);
    }

    #[test]
    fn substitution_is_simultaneous() {
        let mut m = BTreeMap::new();
        m.insert(Arc::from("p"), p("q"));
        m.insert(Arc::from("q"), p("p"));
        assert_eq!(p("p & ~q").substitute(&m), p("q & ~p"));
    }
}
