//! The single-conclusion calculus with structural and modal axioms: checking, a bounded
//! cut-free search, and the probe showing that search misses `⇒ □(α ∨ ¬□α)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::check::CheckError;
use crate::layout::render_tree;
use crate::matrix::{m4, matrix_consequence};
use crate::sc::provable;
use crate::sequent::Sequent;
use crate::syntax::{Formula, Style};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GRule {
    #[serde(rename = "g.struct_ax")]
    StructAx,
    #[serde(rename = "g.modal_ax")]
    ModalAx,
    #[serde(rename = "g.weak")]
    Weak,
    #[serde(rename = "g.cut")]
    Cut,
    #[serde(rename = "g.and_l")]
    AndL,
    #[serde(rename = "g.and_r")]
    AndR,
    #[serde(rename = "g.or_l")]
    OrL,
    #[serde(rename = "g.or_r1")]
    OrR1,
    #[serde(rename = "g.or_r2")]
    OrR2,
    #[serde(rename = "g.neg")]
    NegRule,
    #[serde(rename = "g.bot")]
    BotRule,
    #[serde(rename = "g.neg_neg_l")]
    NegNegL,
    #[serde(rename = "g.neg_neg_r")]
    NegNegR,
    #[serde(rename = "g.box_l")]
    BoxL,
    #[serde(rename = "g.box_r")]
    BoxR,
}

impl GRule {
    pub fn label(self) -> &'static str {
        match self {
            GRule::StructAx => "",
            GRule::ModalAx => "(MA)",
            GRule::Weak => "(w)",
            GRule::Cut => "(cut)",
            GRule::AndL => "(∧⇒)",
            GRule::AndR => "(⇒∧)",
            GRule::OrL => "(∨⇒)",
            GRule::OrR1 => "(⇒∨)₁",
            GRule::OrR2 => "(⇒∨)₂",
            GRule::NegRule => "(¬)",
            GRule::BotRule => "(⊥)",
            GRule::NegNegL => "(¬¬⇒)",
            GRule::NegNegR => "(⇒¬¬)",
            GRule::BoxL => "(□⇒)",
            GRule::BoxR => "(⇒□)",
        }
    }
}

impl fmt::Display for GRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("serializable");
        f.write_str(v.as_str().expect("string tag"))
    }
}

/// `Δ ⇒ α` with exactly one formula on the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GSequent {
    pub left: BTreeSet<Formula>,
    pub right: Formula,
}

impl GSequent {
    pub fn new<I: IntoIterator<Item = Formula>>(left: I, right: Formula) -> GSequent {
        GSequent { left: left.into_iter().collect(), right }
    }

    /// Parses `Δ => α`; the right side must hold exactly one formula.
    pub fn parse(src: &str) -> Result<GSequent, String> {
        let s = Sequent::parse(src).map_err(|e| e.to_string())?;
        match s.right.len() {
            1 => Ok(GSequent { left: s.left, right: s.right.into_iter().next().expect("one") }),
            n => Err(format!("expected one formula on the right, found {n}")),
        }
    }

    pub fn to_sequent(&self) -> Sequent {
        Sequent::new(self.left.iter().cloned(), [self.right.clone()])
    }

    fn with_left(&self, extra: &[&Formula], right: &Formula) -> GSequent {
        let mut left = self.left.clone();
        left.extend(extra.iter().map(|f| (*f).clone()));
        GSequent { left, right: right.clone() }
    }
}

impl fmt::Display for GSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sequent())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GProof {
    pub rule: GRule,
    pub sequent: GSequent,
    #[serde(default)]
    pub premises: Vec<GProof>,
}

impl GProof {
    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(GProof::height).max().unwrap_or(0)
    }

    pub fn is_cut_free(&self) -> bool {
        self.rule != GRule::Cut && self.premises.iter().all(GProof::is_cut_free)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(src: &str) -> Result<GProof, serde_json::Error> {
        serde_json::from_str(src)
    }

    pub fn render_text(&self, style: Style) -> String {
        render_tree(self, &|p: &GProof| {
            let label = if style == Style::Unicode { p.rule.label().to_string() } else { p.rule.to_string() };
            (p.sequent.to_sequent().render(style), label, p.premises.iter().collect())
        })
    }
}

fn modal_axiom(a: &Formula) -> Formula {
    Formula::or(a, &a.boxed().neg())
}

/// Contexts `Δ` with `Δ ∪ {φ} = left`: with or without `φ` itself.
fn contexts(left: &BTreeSet<Formula>, phi: &Formula) -> [BTreeSet<Formula>; 2] {
    let mut without = left.clone();
    without.remove(phi);
    [left.clone(), without]
}

pub fn check_g_proof(p: &GProof, allow_cut: bool) -> Result<(), CheckError> {
    fn rec(p: &GProof, allow_cut: bool, path: &mut Vec<usize>) -> Result<(), CheckError> {
        check_node(p, allow_cut).map_err(|m| CheckError::new(path, p.rule.to_string(), m))?;
        for (i, q) in p.premises.iter().enumerate() {
            path.push(i);
            rec(q, allow_cut, path)?;
            path.pop();
        }
        Ok(())
    }
    rec(p, allow_cut, &mut vec![])
}

fn check_node(p: &GProof, allow_cut: bool) -> Result<(), String> {
    use Formula as F;
    let want = match p.rule {
        GRule::StructAx | GRule::ModalAx => 0,
        GRule::Cut | GRule::AndR | GRule::OrL => 2,
        _ => 1,
    };
    if p.premises.len() != want {
        return Err(format!("expected {want} premise(s), found {}", p.premises.len()));
    }
    let s = &p.sequent;
    let prem = |i: usize| &p.premises[i].sequent;
    let ok = match p.rule {
        GRule::StructAx => s.left.len() == 1 && s.left.contains(&s.right),
        GRule::ModalAx => {
            s.left.is_empty() && matches!(&s.right, F::Or(a, b) if **b == a.boxed().neg())
        }
        GRule::Weak => {
            prem(0).right == s.right && prem(0).left.is_subset(&s.left) && s.left.len() <= prem(0).left.len() + 1
        }
        GRule::Cut => {
            if !allow_cut {
                return Err("cut is not allowed".into());
            }
            let a = &prem(0).right;
            prem(0).left == s.left && *prem(1) == s.with_left(&[a], &s.right)
        }
        GRule::AndR => match &s.right {
            F::And(a, b) => *prem(0) == GSequent { left: s.left.clone(), right: (**a).clone() }
                && *prem(1) == GSequent { left: s.left.clone(), right: (**b).clone() },
            _ => false,
        },
        GRule::OrR1 | GRule::OrR2 => match &s.right {
            F::Or(a, b) => {
                let pick = if p.rule == GRule::OrR1 { a } else { b };
                *prem(0) == GSequent { left: s.left.clone(), right: (**pick).clone() }
            }
            _ => false,
        },
        GRule::NegRule => match (s.left.iter().collect::<Vec<_>>().as_slice(), &s.right) {
            ([F::Neg(b)], F::Neg(a)) => *prem(0) == GSequent::new([(**a).clone()], (**b).clone()),
            _ => false,
        },
        GRule::BotRule => *prem(0) == GSequent { left: s.left.clone(), right: F::Bot },
        GRule::NegNegR => match &s.right {
            F::Neg(x) => matches!(&**x, F::Neg(a) if *prem(0) == GSequent { left: s.left.clone(), right: (**a).clone() }),
            _ => false,
        },
        GRule::BoxR => match &s.right {
            F::And(a, nb) => {
                **nb == a.boxed().neg()
                    && *prem(0) == GSequent { left: s.left.clone(), right: F::and(a, &a.neg()) }
            }
            _ => false,
        },
        GRule::AndL | GRule::OrL | GRule::NegNegL | GRule::BoxL => s.left.iter().any(|phi| {
            contexts(&s.left, phi).iter().any(|d| {
                let base = GSequent { left: d.clone(), right: s.right.clone() };
                match (p.rule, phi) {
                    (GRule::AndL, F::And(a, b)) => *prem(0) == base.with_left(&[a, b], &s.right),
                    (GRule::OrL, F::Or(a, b)) => {
                        *prem(0) == base.with_left(&[a], &s.right) && *prem(1) == base.with_left(&[b], &s.right)
                    }
                    (GRule::NegNegL, F::Neg(x)) => {
                        matches!(&**x, F::Neg(a) if *prem(0) == base.with_left(&[a], &s.right))
                    }
                    (GRule::BoxL, F::Neg(x)) => match &**x {
                        F::Box(a) => s.left.contains(&**a) && *prem(0) == base.with_left(&[a, &a.neg()], &s.right),
                        _ => false,
                    },
                    _ => false,
                }
            })
        }),
    };
    if ok {
        Ok(())
    } else {
        Err("premises do not match the schema instance".into())
    }
}

// ---------------------------------------------------------------------------
// Bounded search

type State = (Vec<usize>, usize);

struct GSearch {
    forms: Vec<Formula>,
    index: HashMap<Formula, usize>,
    /// Largest depth at which a state is known to have no proof.
    failed: HashMap<State, usize>,
}

impl GSearch {
    fn new(goal: &GSequent) -> GSearch {
        let mut s = BTreeSet::new();
        for f in goal.left.iter().chain([&goal.right]) {
            f.collect_subformulas(&mut s);
        }
        let negs: Vec<Formula> = s.iter().map(Formula::neg).collect();
        s.extend(negs);
        let extra: Vec<Formula> = s
            .iter()
            .filter_map(|f| match f {
                Formula::And(a, nb) if **nb == a.boxed().neg() => Some(Formula::and(a, &a.neg())),
                _ => None,
            })
            .collect();
        s.extend(extra);
        s.insert(Formula::Bot);
        let forms: Vec<Formula> = s.into_iter().collect();
        let index = forms.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        GSearch { forms, index, failed: HashMap::new() }
    }

    fn state(&self, s: &GSequent) -> Option<State> {
        let left = s.left.iter().map(|f| self.index.get(f).copied()).collect::<Option<Vec<_>>>()?;
        Some((left, *self.index.get(&s.right)?))
    }

    fn seq(&self, st: &State) -> GSequent {
        GSequent { left: st.0.iter().map(|&i| self.forms[i].clone()).collect(), right: self.forms[st.1].clone() }
    }

    /// Backward rule applications, each with its premises.
    fn options(&self, s: &GSequent) -> Vec<(GRule, Vec<GSequent>)> {
        use Formula as F;
        let mut out = Vec::new();
        let r = &s.right;
        match r {
            F::And(a, b) => {
                out.push((GRule::AndR, vec![GSequent { left: s.left.clone(), right: (**a).clone() }, GSequent {
                    left: s.left.clone(),
                    right: (**b).clone(),
                }]));
                if **b == a.boxed().neg() {
                    out.push((GRule::BoxR, vec![GSequent { left: s.left.clone(), right: F::and(a, &a.neg()) }]));
                }
            }
            F::Or(a, b) => {
                out.push((GRule::OrR1, vec![GSequent { left: s.left.clone(), right: (**a).clone() }]));
                out.push((GRule::OrR2, vec![GSequent { left: s.left.clone(), right: (**b).clone() }]));
            }
            F::Neg(x) => {
                if let F::Neg(a) = &**x {
                    out.push((GRule::NegNegR, vec![GSequent { left: s.left.clone(), right: (**a).clone() }]));
                }
                if let [F::Neg(b)] = s.left.iter().collect::<Vec<_>>().as_slice() {
                    out.push((GRule::NegRule, vec![GSequent::new([(**x).clone()], (**b).clone())]));
                }
            }
            _ => {}
        }
        for phi in &s.left {
            let mut d = s.clone();
            d.left.remove(phi);
            match phi {
                F::And(a, b) => out.push((GRule::AndL, vec![d.with_left(&[a, b], r)])),
                F::Or(a, b) => out.push((GRule::OrL, vec![d.with_left(&[a], r), d.with_left(&[b], r)])),
                F::Neg(x) => match &**x {
                    F::Neg(a) => out.push((GRule::NegNegL, vec![d.with_left(&[a], r)])),
                    F::Box(a) if s.left.contains(&**a) => {
                        out.push((GRule::BoxL, vec![d.with_left(&[a, &a.neg()], r)]))
                    }
                    _ => {}
                },
                _ => {}
            }
            out.push((GRule::Weak, vec![d]));
        }
        if *r != F::Bot {
            out.push((GRule::BotRule, vec![GSequent { left: s.left.clone(), right: F::Bot }]));
        }
        out
    }

    fn search(&mut self, s: &GSequent, depth: usize) -> Option<GProof> {
        if depth == 0 {
            return None;
        }
        if (s.left.len() == 1 && s.left.contains(&s.right))
            || (s.left.is_empty() && matches!(&s.right, Formula::Or(a, b) if **b == a.boxed().neg()))
        {
            let rule = if s.left.is_empty() { GRule::ModalAx } else { GRule::StructAx };
            return Some(GProof { rule, sequent: s.clone(), premises: vec![] });
        }
        let st = self.state(s)?;
        if self.failed.get(&st).is_some_and(|&d| d >= depth) {
            return None;
        }
        for (rule, prems) in self.options(s) {
            if prems.iter().any(|p| p == s || self.state(p).is_none()) {
                continue;
            }
            let mut kids = Vec::with_capacity(prems.len());
            for p in &prems {
                match self.search(p, depth - 1) {
                    Some(k) => kids.push(k),
                    None => break,
                }
            }
            if kids.len() == prems.len() {
                return Some(GProof { rule, sequent: self.seq(&st), premises: kids });
            }
        }
        self.failed.insert(st, depth);
        None
    }
}

/// Exhaustive cut-free search for proofs of height at most `depth`. Premise formulas are
/// confined to the subformulas of the goal, their negations, `α ∧ ¬α` for each `α ∧ ¬□α`
/// there, and `⊥`.
pub fn g_search_cutfree(goal: &GSequent, depth: usize) -> Option<GProof> {
    GSearch::new(goal).search(goal, depth)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutProbe {
    pub sequent: String,
    pub depth: usize,
    /// The sequent holds in M₄.
    pub valid: bool,
    pub g_cutfree_found: bool,
    pub sc_cutfree_found: bool,
    /// A zero depth bound admits no proof at all, so the search result says nothing.
    pub vacuous: bool,
}

/// Probe `⇒ □(α ∨ ¬□α)`: valid, out of reach of bounded cut-free search here, and provable
/// without cut in the two-sided calculus. Evidence only; a bound is not an impossibility proof.
pub fn cut_necessity_probe(alpha: &Formula, depth: usize) -> CutProbe {
    let target = modal_axiom(alpha).boxed();
    let goal = GSequent::new([], target.clone());
    CutProbe {
        sequent: goal.to_string(),
        depth,
        valid: matrix_consequence([], [&target], m4()),
        g_cutfree_found: g_search_cutfree(&goal, depth).is_some(),
        sc_cutfree_found: provable(&goal.to_sequent()),
        vacuous: depth == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse;

    fn gs(s: &str) -> GSequent {
        GSequent::parse(s).unwrap()
    }

    #[test]
    fn checks_displayed_rules() {
        let ma = GProof { rule: GRule::ModalAx, sequent: gs("=> p | ~#p"), premises: vec![] };
        assert_eq!(check_g_proof(&ma, false), Ok(()));
        let leaf = GProof { rule: GRule::StructAx, sequent: gs("q => q"), premises: vec![] };
        let w = GProof { rule: GRule::Weak, sequent: gs("q, r => q"), premises: vec![leaf.clone()] };
        let conj = gs("q, r => q & ~q");
        let boxr = GProof {
            rule: GRule::BoxR,
            sequent: gs("q, r => q & ~#q"),
            premises: vec![GProof {
                rule: GRule::AndR,
                sequent: conj,
                premises: vec![w, GProof { rule: GRule::StructAx, sequent: gs("q, r => ~q"), premises: vec![] }],
            }],
        };
        assert_eq!(check_node(&boxr, false), Ok(()));
        let e = check_g_proof(&boxr, false).unwrap_err();
        assert_eq!(e.path, vec![0, 1]);
        let neg = GProof { rule: GRule::NegRule, sequent: gs("~q => ~q"), premises: vec![leaf.clone()] };
        assert_eq!(check_g_proof(&neg, false), Ok(()));
        let neg_ctx = GProof { rule: GRule::NegRule, sequent: gs("~q, r => ~q"), premises: vec![leaf] };
        assert!(check_g_proof(&neg_ctx, false).is_err());
    }

    #[test]
    fn search_examples() {
        let p = g_search_cutfree(&gs("=> p | ~#p"), 3).unwrap();
        assert_eq!(p.rule, GRule::ModalAx);
        let p = g_search_cutfree(&gs("p & q => p"), 4).unwrap();
        assert_eq!(check_g_proof(&p, false), Ok(()));
        assert!(p.height() <= 4);
        assert!(g_search_cutfree(&gs("=> #(p | ~#p)"), 12).is_none());
        assert!(g_search_cutfree(&gs("p => p"), 0).is_none());
    }

    #[test]
    fn probe_verdicts() {
        let r = cut_necessity_probe(&parse("p").unwrap(), 12);
        assert!(r.valid && !r.g_cutfree_found && r.sc_cutfree_found && !r.vacuous);
        let r = cut_necessity_probe(&parse("q & q").unwrap(), 10);
        assert!(r.valid && !r.g_cutfree_found && r.sc_cutfree_found);
        assert!(cut_necessity_probe(&parse("p").unwrap(), 0).vacuous);
    }

    #[test]
    fn json_names() {
        let ma = GProof { rule: GRule::ModalAx, sequent: gs("=> p | ~#p"), premises: vec![] };
        let v: serde_json::Value = serde_json::from_str(&ma.to_json()).unwrap();
        assert_eq!(v["rule"], "g.modal_ax");
        assert_eq!(v["sequent"]["right"], "p | ~#p");
        assert_eq!(GProof::from_json(&ma.to_json()).unwrap(), ma);
    }
}
