//! From signed n-sequents to ordinary two-sided sequents via an expressiveness specification.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::matrix::{eval, valuations, LogicalMatrix, TruthValue, Valuation};
use crate::sequent::Sequent;
use crate::signed::{nsequent_satisfied, NSequent, RuleKind, SignedRule};
use crate::syntax::{canonical_order, Formula, Style};

/// The placeholder variable of the templates.
pub const PLACEHOLDER: &str = "p";

/// Templates characterizing one truth value: `v(φ) = t` iff every `n_side[j][p:=φ]` is
/// non-designated and every `d_side[k][p:=φ]` is designated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueSpec {
    pub value: String,
    pub n_side: Vec<Formula>,
    pub d_side: Vec<Formula>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpressivenessSpec {
    pub values: Vec<ValueSpec>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("spec lists {found} values, matrix has {want}")]
    Arity { found: usize, want: usize },
    #[error("spec entry {index} names `{found}`, matrix value is `{want}`")]
    ValueName { index: usize, found: String, want: String },
    #[error("value `{0}`: the placeholder must head the {1} list")]
    PlaceholderFirst(String, &'static str),
    #[error("value `{value}`: templates do not characterize it (fails at v(p)={at})")]
    NotCharacterizing { value: String, at: String },
}

/// The M₄ specification: designation of `φ` and `¬φ` pins down `v(φ)`.
pub fn m4_spec() -> ExpressivenessSpec {
    let p = Formula::var(PLACEHOLDER);
    let np = p.neg();
    let entry = |v: &str, n: Vec<Formula>, d: Vec<Formula>| ValueSpec { value: v.into(), n_side: n, d_side: d };
    ExpressivenessSpec {
        values: vec![
            entry("0", vec![p.clone()], vec![np.clone()]),
            entry("n", vec![p.clone(), np.clone()], vec![]),
            entry("b", vec![], vec![p.clone(), np.clone()]),
            entry("1", vec![np], vec![p]),
        ],
    }
}

impl ExpressivenessSpec {
    pub fn from_json(src: &str) -> Result<ExpressivenessSpec, serde_json::Error> {
        serde_json::from_str(src)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Check both conditions against `m` over every value of a fresh variable.
    pub fn verify(&self, m: &LogicalMatrix) -> Result<(), SpecError> {
        if self.values.len() != m.len() {
            return Err(SpecError::Arity { found: self.values.len(), want: m.len() });
        }
        let p = Formula::var(PLACEHOLDER);
        for (i, (vs, t)) in self.values.iter().zip(m.values()).enumerate() {
            if vs.value != m.name(t) {
                return Err(SpecError::ValueName { index: i, found: vs.value.clone(), want: m.name(t).into() });
            }
            let (list, side) = if m.is_designated(t) { (&vs.d_side, "d_side") } else { (&vs.n_side, "n_side") };
            if list.first() != Some(&p) {
                return Err(SpecError::PlaceholderFirst(vs.value.clone(), side));
            }
            for v in valuations(&p.vars(), m) {
                let holds = vs.n_side.iter().all(|f| !m.is_designated(eval(f, &v, m).expect("placeholder only")))
                    && vs.d_side.iter().all(|f| m.is_designated(eval(f, &v, m).expect("placeholder only")));
                let actual = v.get(PLACEHOLDER) == Some(t);
                if holds != actual {
                    let at = m.name(v.get(PLACEHOLDER).unwrap()).to_string();
                    return Err(SpecError::NotCharacterizing { value: vs.value.clone(), at });
                }
            }
        }
        Ok(())
    }

    fn slots(&self, i: usize) -> usize {
        self.values[i].n_side.len() + self.values[i].d_side.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slot {
    N(usize),
    D(usize),
}

/// For each component, every formula of that component paired with its slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub assignment: Vec<Vec<(Formula, Slot)>>,
}

/// All `∏ᵢ (lᵢ+mᵢ)^{|Γᵢ|}` partitions. The first formula of the first component varies slowest.
pub fn partitions(s: &NSequent, spec: &ExpressivenessSpec) -> Vec<Partition> {
    assert_eq!(s.arity(), spec.values.len(), "arity mismatch");
    let items: Vec<(usize, &Formula)> =
        s.components.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |f| (i, f))).collect();
    let radix: Vec<usize> = items.iter().map(|(i, _)| spec.slots(*i)).collect();
    if radix.contains(&0) {
        return vec![];
    }
    let mut digits = vec![0usize; items.len()];
    let mut out = Vec::new();
    loop {
        let mut assignment = vec![Vec::new(); s.arity()];
        for ((i, f), d) in items.iter().zip(&digits) {
            let l = spec.values[*i].n_side.len();
            let slot = if *d < l { Slot::N(*d) } else { Slot::D(*d - l) };
            assignment[*i].push(((*f).clone(), slot));
        }
        out.push(Partition { assignment });
        let mut k = digits.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < radix[k] {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// `Σ_π`: instantiated n-side templates on the left, d-side templates on the right.
pub fn sigma_pi(pi: &Partition, spec: &ExpressivenessSpec) -> Sequent {
    let mut out = Sequent::default();
    for (i, comp) in pi.assignment.iter().enumerate() {
        for (f, slot) in comp {
            match slot {
                Slot::N(j) => out.left.insert(spec.values[i].n_side[*j].instantiate(PLACEHOLDER, f)),
                Slot::D(k) => out.right.insert(spec.values[i].d_side[*k].instantiate(PLACEHOLDER, f)),
            };
        }
    }
    out
}

/// `TWO(Σ)` in partition order, duplicates removed.
pub fn two_ordered(s: &NSequent, spec: &ExpressivenessSpec) -> Vec<Sequent> {
    let mut seen = BTreeSet::new();
    partitions(s, spec).iter().map(|pi| sigma_pi(pi, spec)).filter(|q| seen.insert(q.clone())).collect()
}

pub fn two_of_nsequent(s: &NSequent, spec: &ExpressivenessSpec) -> BTreeSet<Sequent> {
    two_ordered(s, spec).into_iter().collect()
}

fn two_sided_satisfied(v: &Valuation, s: &Sequent, m: &LogicalMatrix) -> bool {
    let des = |f: &Formula| m.is_designated(eval(f, v, m).expect("total valuation"));
    s.left.iter().any(|f| !des(f)) || s.right.iter().any(des)
}

/// `v ⊨ Σ` iff `v ⊨ Σ'` for every `Σ' ∈ TWO(Σ)`, over all valuations of Σ's variables.
pub fn verify_two_equivalence(s: &NSequent, spec: &ExpressivenessSpec, m: &LogicalMatrix) -> bool {
    let two = two_of_nsequent(s, spec);
    let mut vars = BTreeSet::new();
    for f in s.formulas() {
        f.collect_vars(&mut vars);
    }
    valuations(&vars, m).iter().all(|v| {
        nsequent_satisfied(v, s, m).expect("total valuation") == two.iter().all(|q| two_sided_satisfied(v, q, m))
    })
}

// ---------------------------------------------------------------------------
// Rule translation

/// A two-sided rule instance. With `context` set, every sequent carries the shared
/// context slots `G` on the left and `D` on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoSidedRule {
    pub name: String,
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
    pub context: bool,
}

/// Translate each signed rule: premises `⋃ TWO(sᵢ)`, one rule per member of `TWO(conclusion)`.
/// Rules whose conclusion is among their premises are dropped; weakening is not translated.
pub fn two_of_calculus(rules: &[SignedRule], spec: &ExpressivenessSpec) -> Vec<TwoSidedRule> {
    let arity = spec.values.len();
    let nseq = |fs: &[crate::signed::SignedFormula]| {
        let mut n = NSequent::empty(arity);
        for x in fs {
            n.components[x.sign.index()].insert(x.body.clone());
        }
        n
    };
    let mut out = Vec::new();
    for r in rules {
        if r.kind == RuleKind::Weakening {
            continue;
        }
        let mut premises: Vec<Sequent> = Vec::new();
        for p in &r.premises {
            for q in two_ordered(&nseq(p), spec) {
                if !premises.contains(&q) {
                    premises.push(q);
                }
            }
        }
        for c in two_ordered(&nseq(&r.conclusion), spec) {
            if premises.contains(&c) {
                continue;
            }
            out.push(TwoSidedRule {
                name: r.name.clone(),
                premises: premises.clone(),
                conclusion: c,
                context: r.kind != RuleKind::Axiom,
            });
        }
    }
    out
}

fn schema_side(fs: &BTreeSet<Formula>, slot: Option<&str>) -> Vec<String> {
    let mut v: Vec<Formula> = fs.iter().cloned().collect();
    canonical_order(&mut v);
    slot.into_iter().map(String::from).chain(v.iter().map(|f| f.render(Style::Ascii))).collect()
}

fn schema_text(s: &Sequent, context: bool) -> String {
    let l = schema_side(&s.left, context.then_some("G")).join(", ");
    let r = schema_side(&s.right, context.then_some("D")).join(", ");
    match (l.is_empty(), r.is_empty()) {
        (true, true) => "=>".into(),
        (true, false) => format!("=> {r}"),
        (false, true) => format!("{l} =>"),
        (false, false) => format!("{l} => {r}"),
    }
}

fn grouped(rules: &[TwoSidedRule]) -> Vec<(&TwoSidedRule, Vec<&Sequent>)> {
    let mut groups: Vec<(&TwoSidedRule, Vec<&Sequent>)> = Vec::new();
    for r in rules {
        match groups.last_mut() {
            Some((head, cs)) if head.name == r.name && head.premises == r.premises => cs.push(&r.conclusion),
            _ => groups.push((r, vec![&r.conclusion])),
        }
    }
    groups
}

/// One block per source rule: premises above a rule line, alternative conclusions below.
pub fn rule_sheet_text(rules: &[TwoSidedRule]) -> String {
    let mut out = String::new();
    for (r, concs) in grouped(rules) {
        let top = r.premises.iter().map(|p| schema_text(p, r.context)).collect::<Vec<_>>().join("    ");
        let bottom = concs.iter().map(|c| schema_text(c, r.context)).collect::<Vec<_>>().join("  ;  ");
        let w = top.chars().count().max(bottom.chars().count());
        out.push_str(&format!("{top}\n{} {}\n{bottom}\n\n", "-".repeat(w), r.name));
    }
    out
}

/// `[{"name", "premises": [schema], "conclusions": [schema]}]`, schemas as `{"left", "right"}`.
pub fn rule_sheet_json(rules: &[TwoSidedRule]) -> String {
    let schema = |s: &Sequent, ctx: bool| {
        json!({"left": schema_side(&s.left, ctx.then_some("G")), "right": schema_side(&s.right, ctx.then_some("D"))})
    };
    let v: Vec<serde_json::Value> = grouped(rules)
        .into_iter()
        .map(|(r, concs)| {
            json!({
                "name": r.name,
                "premises": r.premises.iter().map(|p| schema(p, r.context)).collect::<Vec<_>>(),
                "conclusions": concs.iter().map(|c| schema(c, r.context)).collect::<Vec<_>>(),
            })
        })
        .collect();
    serde_json::to_string_pretty(&v).expect("serializable")
}

/// Signed-rule sheet, for inspecting the generated calculus itself.
pub fn signed_sheet_text(rules: &[SignedRule], m: &LogicalMatrix) -> String {
    let show = |fs: &[crate::signed::SignedFormula]| {
        std::iter::once("W".to_string()).chain(fs.iter().map(|x| x.render(m))).collect::<Vec<_>>().join(", ")
    };
    let mut out = String::new();
    for r in rules {
        let top = r.premises.iter().map(|p| format!("{{{}}}", show(p))).collect::<Vec<_>>().join("    ");
        let bottom = match r.kind {
            RuleKind::Axiom => format!("{{{}}}", r.conclusion.iter().map(|x| x.render(m)).collect::<Vec<_>>().join(", ")),
            RuleKind::Weakening => "{W'}  where W is a subset of W'".into(),
            _ => format!("{{{}}}", show(&r.conclusion)),
        };
        let w = top.chars().count().max(bottom.chars().count());
        out.push_str(&format!("{top}\n{} {}\n{bottom}\n\n", "-".repeat(w), r.name));
    }
    out
}

pub fn signed_sheet_json(rules: &[SignedRule], m: &LogicalMatrix) -> String {
    let v: Vec<serde_json::Value> = rules
        .iter()
        .map(|r| {
            let show = |fs: &[crate::signed::SignedFormula]| fs.iter().map(|x| x.render(m)).collect::<Vec<_>>();
            json!({
                "name": r.name,
                "premises": r.premises.iter().map(|p| show(p)).collect::<Vec<_>>(),
                "conclusion": show(&r.conclusion),
            })
        })
        .collect();
    serde_json::to_string_pretty(&v).expect("serializable")
}

/// Value whose single-slot translation is requested; convenience for tests and examples.
pub fn single_slot(value: TruthValue, f: &Formula, arity: usize) -> NSequent {
    let mut n = NSequent::empty(arity);
    n.components[value.index()].insert(f.clone());
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{m4, m4v};
    use crate::syntax::parse;

    fn seqs(xs: &[&str]) -> BTreeSet<Sequent> {
        xs.iter().map(|s| Sequent::parse(s).unwrap()).collect()
    }

    #[test]
    fn m4_spec_is_sufficiently_expressive() {
        let s = m4_spec();
        assert_eq!(s.verify(m4()), Ok(()));
        assert_eq!((s.values[1].n_side.len(), s.values[1].d_side.len()), (2, 0));
    }

    #[test]
    fn single_slot_translations() {
        let phi = parse("phi").unwrap();
        let spec = m4_spec();
        let t = |v| two_of_nsequent(&single_slot(v, &phi, 4), &spec);
        assert_eq!(t(m4v::ZERO), seqs(&["phi =>", "=> ~phi"]));
        assert_eq!(t(m4v::N), seqs(&["phi =>", "~phi =>"]));
        assert_eq!(t(m4v::B), seqs(&["=> phi", "=> ~phi"]));
        assert_eq!(t(m4v::ONE), seqs(&["~phi =>", "=> phi"]));
    }

    #[test]
    fn partition_counts() {
        let spec = m4_spec();
        let a = parse("a").unwrap();
        assert_eq!(partitions(&single_slot(m4v::ZERO, &a, 4), &spec).len(), 2);
        let all = NSequent { components: vec![[a.clone()].into(); 4] };
        assert_eq!(partitions(&all, &spec).len(), 16);
        assert_eq!(partitions(&NSequent::empty(4), &spec).len(), 1);
    }

    #[test]
    fn corrupted_spec_is_caught() {
        let mut bad = m4_spec();
        bad.values[0].d_side = vec![parse("p").unwrap()];
        assert!(bad.verify(m4()).is_err());
        let s = single_slot(m4v::ZERO, &parse("p").unwrap(), 4);
        assert!(verify_two_equivalence(&s, &m4_spec(), m4()));
        assert!(!verify_two_equivalence(&s, &bad, m4()));
    }
}
