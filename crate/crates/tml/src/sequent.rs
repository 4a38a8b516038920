//! Two-sided sequents `Γ ⇒ Δ` read as pairs of finite sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::syntax::{canonical_order, parse_sequent_parts, Formula, ParseError, Style};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Sequent {
    pub left: BTreeSet<Formula>,
    pub right: BTreeSet<Formula>,
}

impl Sequent {
    pub fn new<L, R>(left: L, right: R) -> Sequent
    where
        L: IntoIterator<Item = Formula>,
        R: IntoIterator<Item = Formula>,
    {
        Sequent { left: left.into_iter().collect(), right: right.into_iter().collect() }
    }

    pub fn parse(src: &str) -> Result<Sequent, ParseError> {
        let (l, r) = parse_sequent_parts(src)?;
        Ok(Sequent::new(l, r))
    }

    pub fn is_axiom(&self) -> bool {
        self.left.intersection(&self.right).next().is_some()
    }

    /// `self` is obtained from `other` by adding formulas on either side.
    pub fn extends(&self, other: &Sequent) -> bool {
        other.left.is_subset(&self.left) && other.right.is_subset(&self.right)
    }

    pub fn with_left<I: IntoIterator<Item = Formula>>(&self, extra: I) -> Sequent {
        let mut s = self.clone();
        s.left.extend(extra);
        s
    }

    pub fn with_right<I: IntoIterator<Item = Formula>>(&self, extra: I) -> Sequent {
        let mut s = self.clone();
        s.right.extend(extra);
        s
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.left.iter().chain(self.right.iter())
    }

    pub fn contains_bot(&self) -> bool {
        self.formulas().any(Formula::contains_bot)
    }

    /// `¬Δ ⇒ ¬Γ`.
    pub fn contrapositive(&self) -> Sequent {
        Sequent::new(self.right.iter().map(Formula::neg), self.left.iter().map(Formula::neg))
    }

    pub fn render(&self, style: Style) -> String {
        let side = |s: &BTreeSet<Formula>| {
            let mut v: Vec<Formula> = s.iter().cloned().collect();
            canonical_order(&mut v);
            v.iter().map(|f| f.render(style)).collect::<Vec<_>>().join(", ")
        };
        let arrow = match style {
            Style::Ascii => "=>",
            Style::Unicode => "⇒",
        };
        let (l, r) = (side(&self.left), side(&self.right));
        match (l.is_empty(), r.is_empty()) {
            (true, true) => arrow.to_string(),
            (true, false) => format!("{arrow} {r}"),
            (false, true) => format!("{l} {arrow}"),
            (false, false) => format!("{l} {arrow} {r}"),
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let style = if f.alternate() { Style::Unicode } else { Style::Ascii };
        f.write_str(&self.render(style))
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::str::FromStr for Sequent {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Sequent::parse(s)
    }
}
