use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::check::CheckError;
use crate::layout::render_tree;
use crate::sequent::Sequent;
use crate::syntax::{Formula, Style};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScRule {
    Axiom,
    WeakL,
    WeakR,
    Cut,
    OrL,
    OrR,
    NegOrL,
    NegOrR,
    AndL,
    AndR,
    NegAndL,
    NegAndR,
    NegNegL,
    NegNegR,
    BoxL1,
    BoxL2,
    BoxR,
    NegBoxL,
    NegBoxR1,
    NegBoxR2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Side formulas a logical rule adds to each premise, split by side.
pub type Additions = Vec<(Vec<Formula>, Vec<Formula>)>;

impl ScRule {
    pub const LOGICAL: [ScRule; 16] = [
        ScRule::OrL,
        ScRule::OrR,
        ScRule::NegOrL,
        ScRule::NegOrR,
        ScRule::AndL,
        ScRule::AndR,
        ScRule::NegAndL,
        ScRule::NegAndR,
        ScRule::NegNegL,
        ScRule::NegNegR,
        ScRule::BoxL1,
        ScRule::BoxL2,
        ScRule::BoxR,
        ScRule::NegBoxL,
        ScRule::NegBoxR1,
        ScRule::NegBoxR2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScRule::Axiom => "axiom",
            ScRule::WeakL => "weak_l",
            ScRule::WeakR => "weak_r",
            ScRule::Cut => "cut",
            ScRule::OrL => "or_l",
            ScRule::OrR => "or_r",
            ScRule::NegOrL => "neg_or_l",
            ScRule::NegOrR => "neg_or_r",
            ScRule::AndL => "and_l",
            ScRule::AndR => "and_r",
            ScRule::NegAndL => "neg_and_l",
            ScRule::NegAndR => "neg_and_r",
            ScRule::NegNegL => "neg_neg_l",
            ScRule::NegNegR => "neg_neg_r",
            ScRule::BoxL1 => "box_l1",
            ScRule::BoxL2 => "box_l2",
            ScRule::BoxR => "box_r",
            ScRule::NegBoxL => "neg_box_l",
            ScRule::NegBoxR1 => "neg_box_r1",
            ScRule::NegBoxR2 => "neg_box_r2",
        }
    }

    /// Conventional label, e.g. `(⇒□)` or `(□⇒)₂`.
    pub fn label(self) -> &'static str {
        match self {
            ScRule::Axiom => "",
            ScRule::WeakL => "(w⇒)",
            ScRule::WeakR => "(⇒w)",
            ScRule::Cut => "(cut)",
            ScRule::OrL => "(∨⇒)",
            ScRule::OrR => "(⇒∨)",
            ScRule::NegOrL => "(¬∨⇒)",
            ScRule::NegOrR => "(⇒¬∨)",
            ScRule::AndL => "(∧⇒)",
            ScRule::AndR => "(⇒∧)",
            ScRule::NegAndL => "(¬∧⇒)",
            ScRule::NegAndR => "(⇒¬∧)",
            ScRule::NegNegL => "(¬¬⇒)",
            ScRule::NegNegR => "(⇒¬¬)",
            ScRule::BoxL1 => "(□⇒)₁",
            ScRule::BoxL2 => "(□⇒)₂",
            ScRule::BoxR => "(⇒□)",
            ScRule::NegBoxL => "(¬□⇒)",
            ScRule::NegBoxR1 => "(⇒¬□)₁",
            ScRule::NegBoxR2 => "(⇒¬□)₂",
        }
    }

    pub fn from_name(s: &str) -> Option<ScRule> {
        [ScRule::Axiom, ScRule::WeakL, ScRule::WeakR, ScRule::Cut]
            .into_iter()
            .chain(ScRule::LOGICAL)
            .find(|r| r.name() == s)
    }

    pub fn is_logical(self) -> bool {
        ScRule::LOGICAL.contains(&self)
    }

    /// The side of the principal formula and the premises' side formulas, if `principal`
    /// has the shape the rule decomposes.
    pub fn decompose(self, principal: &Formula) -> Option<(Side, Additions)> {
        use Formula::*;
        use ScRule::*;
        let l = |fs: Vec<Formula>| (fs, vec![]);
        let r = |fs: Vec<Formula>| (vec![], fs);
        let (side, adds) = match (self, principal) {
            (OrL, Or(a, b)) => (Side::Left, vec![l(vec![f(a)]), l(vec![f(b)])]),
            (OrR, Or(a, b)) => (Side::Right, vec![r(vec![f(a), f(b)])]),
            (AndL, And(a, b)) => (Side::Left, vec![l(vec![f(a), f(b)])]),
            (AndR, And(a, b)) => (Side::Right, vec![r(vec![f(a)]), r(vec![f(b)])]),
            (BoxL1, Box(a)) => (Side::Left, vec![l(vec![f(a)])]),
            (BoxL2, Box(a)) => (Side::Left, vec![r(vec![a.neg()])]),
            (BoxR, Box(a)) => (Side::Right, vec![r(vec![f(a)]), l(vec![a.neg()])]),
            (_, Neg(x)) => match (self, &**x) {
                (NegOrL, Or(a, b)) => (Side::Left, vec![l(vec![a.neg(), b.neg()])]),
                (NegOrR, Or(a, b)) => (Side::Right, vec![r(vec![a.neg()]), r(vec![b.neg()])]),
                (NegAndL, And(a, b)) => (Side::Left, vec![l(vec![a.neg()]), l(vec![b.neg()])]),
                (NegAndR, And(a, b)) => (Side::Right, vec![r(vec![a.neg(), b.neg()])]),
                (NegNegL, Neg(a)) => (Side::Left, vec![l(vec![f(a)])]),
                (NegNegR, Neg(a)) => (Side::Right, vec![r(vec![f(a)])]),
                (NegBoxL, Box(a)) => (Side::Left, vec![r(vec![f(a)]), l(vec![a.neg()])]),
                (NegBoxR1, Box(a)) => (Side::Right, vec![l(vec![f(a)])]),
                (NegBoxR2, Box(a)) => (Side::Right, vec![r(vec![a.neg()])]),
                _ => return None,
            },
            _ => return None,
        };
        Some((side, adds))
    }
}

fn f(a: &std::sync::Arc<Formula>) -> Formula {
    (**a).clone()
}

impl fmt::Display for ScRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A proof tree. `principal` holds the decomposed formula of a logical rule, the cut
/// formula of a cut, and optionally the shared formula of an axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScProof {
    pub rule: ScRule,
    pub sequent: Sequent,
    #[serde(default)]
    pub principal: Vec<Formula>,
    #[serde(default)]
    pub premises: Vec<ScProof>,
}

impl ScProof {
    pub fn axiom(sequent: Sequent) -> ScProof {
        let principal = sequent.left.intersection(&sequent.right).next().cloned().into_iter().collect();
        ScProof { rule: ScRule::Axiom, sequent, principal, premises: vec![] }
    }

    pub fn node(rule: ScRule, sequent: Sequent, principal: Formula, premises: Vec<ScProof>) -> ScProof {
        ScProof { rule, sequent, principal: vec![principal], premises }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ScProof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(ScProof::height).max().unwrap_or(0)
    }

    pub fn is_cut_free(&self) -> bool {
        self.rule != ScRule::Cut && self.premises.iter().all(ScProof::is_cut_free)
    }

    /// Rule names in pre-order.
    pub fn rule_sequence(&self) -> Vec<ScRule> {
        let mut out = vec![self.rule];
        for p in &self.premises {
            out.extend(p.rule_sequence());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(src: &str) -> Result<ScProof, serde_json::Error> {
        serde_json::from_str(src)
    }

    pub fn render_text(&self, style: Style) -> String {
        render_tree(self, &|p: &ScProof| {
            let label = if style == Style::Unicode { p.rule.label().to_string() } else { p.rule.name().to_string() };
            let label = if p.rule == ScRule::Axiom { String::new() } else { label };
            (p.sequent.render(style), label, p.premises.iter().collect())
        })
    }
}

/// Check every node against its schema. Axioms are read as `α ⇒ α` plus weakening, so any
/// leaf whose sides meet is accepted.
pub fn check_sc_proof(p: &ScProof, allow_cut: bool) -> Result<(), CheckError> {
    let mut path = Vec::new();
    check_rec(p, allow_cut, &mut path)
}

fn check_rec(p: &ScProof, allow_cut: bool, path: &mut Vec<usize>) -> Result<(), CheckError> {
    check_node(p, allow_cut).map_err(|m| CheckError::new(path, p.rule.name(), m))?;
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        check_rec(q, allow_cut, path)?;
        path.pop();
    }
    Ok(())
}

fn arity(p: &ScProof, n: usize) -> Result<(), String> {
    if p.premises.len() == n {
        Ok(())
    } else {
        Err(format!("expected {n} premise(s), found {}", p.premises.len()))
    }
}

fn single_principal(p: &ScProof) -> Result<&Formula, String> {
    match p.principal.as_slice() {
        [a] => Ok(a),
        _ => Err(format!("expected one principal formula, found {}", p.principal.len())),
    }
}

fn check_node(p: &ScProof, allow_cut: bool) -> Result<(), String> {
    let s = &p.sequent;
    match p.rule {
        ScRule::Axiom => {
            arity(p, 0)?;
            match p.principal.as_slice() {
                [] if s.is_axiom() => Ok(()),
                [] => Err("sides share no formula".into()),
                [a] if s.left.contains(a) && s.right.contains(a) => Ok(()),
                [a] => Err(format!("`{a}` is not on both sides")),
                _ => Err("at most one axiom formula".into()),
            }
        }
        ScRule::WeakL | ScRule::WeakR => {
            arity(p, 1)?;
            let q = &p.premises[0].sequent;
            let ok = if p.rule == ScRule::WeakL {
                q.right == s.right && q.left.is_subset(&s.left)
            } else {
                q.left == s.left && q.right.is_subset(&s.right)
            };
            if ok {
                Ok(())
            } else {
                Err("premise is not a weakening of the conclusion on the stated side".into())
            }
        }
        ScRule::Cut => {
            if !allow_cut {
                return Err("cut is not allowed".into());
            }
            arity(p, 2)?;
            let a = single_principal(p)?;
            let want1 = s.with_right([a.clone()]);
            let want2 = s.with_left([a.clone()]);
            if p.premises[0].sequent != want1 {
                return Err(format!("first premise should be `{want1}`"));
            }
            if p.premises[1].sequent != want2 {
                return Err(format!("second premise should be `{want2}`"));
            }
            Ok(())
        }
        rule => {
            let phi = single_principal(p)?;
            let (side, adds) = rule.decompose(phi).ok_or_else(|| format!("`{phi}` does not have the rule's shape"))?;
            arity(p, adds.len())?;
            let home = match side {
                Side::Left => &s.left,
                Side::Right => &s.right,
            };
            if !home.contains(phi) {
                return Err(format!("principal `{phi}` is not in the conclusion"));
            }
            let mut without = home.clone();
            without.remove(phi);
            let fits = |ctx: &BTreeSet<Formula>| {
                let base = match side {
                    Side::Left => Sequent { left: ctx.clone(), right: s.right.clone() },
                    Side::Right => Sequent { left: s.left.clone(), right: ctx.clone() },
                };
                p.premises
                    .iter()
                    .zip(&adds)
                    .all(|(q, (al, ar))| q.sequent == base.with_left(al.iter().cloned()).with_right(ar.iter().cloned()))
            };
            if fits(home) || fits(&without) {
                Ok(())
            } else {
                Err("premises do not match the schema instance".into())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(s: &str) -> Sequent {
        Sequent::parse(s).unwrap()
    }

    fn fm(s: &str) -> Formula {
        crate::parse(s).unwrap()
    }

    #[test]
    fn two_step_modal_axiom_checks() {
        let p = ScProof::node(
            ScRule::OrR,
            sq("=> p | ~#p"),
            fm("p | ~#p"),
            vec![ScProof::node(ScRule::NegBoxR1, sq("=> p, ~#p"), fm("~#p"), vec![ScProof::axiom(sq("p => p"))])],
        );
        assert_eq!(check_sc_proof(&p, false), Ok(()));
        assert!(p.is_cut_free());
    }

    #[test]
    fn box_r_with_one_premise_fails() {
        let p = ScProof::node(ScRule::BoxR, sq("=> #p"), fm("#p"), vec![ScProof::axiom(sq("p => p"))]);
        let e = check_sc_proof(&p, false).unwrap_err();
        assert_eq!(e.path, Vec::<usize>::new());
        assert!(e.message.contains("premise"));
    }

    #[test]
    fn cut_needs_permission() {
        let ax = |s| ScProof::axiom(sq(s));
        let p = ScProof::node(ScRule::Cut, sq("p => p"), fm("p"), vec![ax("p => p"), ax("p => p")]);
        assert!(check_sc_proof(&p, false).is_err());
        assert_eq!(check_sc_proof(&p, true), Ok(()));
    }

    #[test]
    fn json_shape() {
        let p = ScProof::node(
            ScRule::BoxR,
            sq("~p => q, #p"),
            fm("#p"),
            vec![ScProof::axiom(sq("~p => q, #p, p")), ScProof::axiom(sq("~p => q, #p"))],
        );
        let v: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(v["rule"], "box_r");
        assert_eq!(v["principal"][0], "#p");
        assert_eq!(v["sequent"]["left"][0], "~p");
        assert_eq!(ScProof::from_json(&p.to_json()).unwrap(), p);
    }
}
