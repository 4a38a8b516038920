//! Signed formulas, n-sequents and the signed calculus generated from a matrix's tables.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitSet;
use crate::check::CheckError;
use crate::matrix::{Connective, Enumerator, LogicalMatrix, MatrixError, TruthValue, Valuation};
use crate::syntax::{canonical_order, parse, Formula, ParseError, Style};

/// `t : φ`, asserting that `φ` takes value `t`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SignedFormula {
    pub sign: TruthValue,
    pub body: Formula,
}

pub type SignedSet = BTreeSet<SignedFormula>;

#[derive(Debug, Error)]
pub enum SignedError {
    #[error("signed formula `{0}` must look like `sign:formula`")]
    Shape(String),
    #[error("unknown sign `{0}`")]
    UnknownSign(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl SignedFormula {
    pub fn new(sign: TruthValue, body: Formula) -> SignedFormula {
        SignedFormula { sign, body }
    }

    pub fn render(&self, m: &LogicalMatrix) -> String {
        format!("{}:{}", m.name(self.sign), self.body.render(Style::Ascii))
    }

    pub fn parse(src: &str, m: &LogicalMatrix) -> Result<SignedFormula, SignedError> {
        let (sign, body) = src.split_once(':').ok_or_else(|| SignedError::Shape(src.into()))?;
        let sign = m.value_named(sign.trim()).ok_or_else(|| SignedError::UnknownSign(sign.trim().into()))?;
        Ok(SignedFormula { sign, body: parse(body)? })
    }

    pub fn satisfied(&self, v: &Valuation, m: &LogicalMatrix) -> Result<bool, MatrixError> {
        Ok(crate::matrix::eval(&self.body, v, m)? == self.sign)
    }
}

/// Parse a comma-separated list of signed formulas, e.g. `0:p, 1:p | q`.
pub fn parse_signed_set(src: &str, m: &LogicalMatrix) -> Result<SignedSet, SignedError> {
    src.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| SignedFormula::parse(s, m)).collect()
}

pub fn render_signed_set(s: &SignedSet, m: &LogicalMatrix) -> String {
    s.iter().map(|x| x.render(m)).collect::<Vec<_>>().join(", ")
}

/// `Γ₀ | … | Γ_{n−1}`, one component per truth value in index order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NSequent {
    pub components: Vec<BTreeSet<Formula>>,
}

impl NSequent {
    pub fn empty(arity: usize) -> NSequent {
        NSequent { components: vec![BTreeSet::new(); arity] }
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn to_signed(&self) -> SignedSet {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |f| SignedFormula::new(TruthValue(i as u8), f.clone())))
            .collect()
    }

    pub fn from_signed(s: &SignedSet, arity: usize) -> NSequent {
        let mut out = NSequent::empty(arity);
        for x in s {
            out.components[x.sign.index()].insert(x.body.clone());
        }
        out
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.components.iter().flatten()
    }
}

impl fmt::Display for NSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let mut v: Vec<Formula> = c.iter().cloned().collect();
                canonical_order(&mut v);
                v.iter().map(|x| x.render(Style::Ascii)).collect::<Vec<_>>().join(", ")
            })
            .collect();
        write!(f, "{}", parts.join(" ; "))
    }
}

/// Some formula of some component `Γᵢ` takes value `tᵢ`.
pub fn nsequent_satisfied(v: &Valuation, s: &NSequent, m: &LogicalMatrix) -> Result<bool, MatrixError> {
    for x in s.to_signed() {
        if x.satisfied(v, m)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Every valuation of the set's variables satisfies some member.
pub fn signed_valid(s: &SignedSet, m: &LogicalMatrix) -> bool {
    let items: Vec<&SignedFormula> = s.iter().collect();
    let en = Enumerator::new(items.iter().map(|x| &x.body), m);
    let mut ok = true;
    en.for_each(|_, vals| {
        ok = items.iter().zip(vals).any(|(x, v)| x.sign == *v);
        ok
    });
    ok
}

/// The n-sequent with Γ in every non-designated component and Δ in every designated one.
pub fn embed_two_sided_in(g: &BTreeSet<Formula>, d: &BTreeSet<Formula>, m: &LogicalMatrix) -> NSequent {
    NSequent {
        components: m.values().map(|t| if m.is_designated(t) { d.clone() } else { g.clone() }).collect(),
    }
}

/// `Γ | Γ | Δ | Δ` over M₄.
pub fn embed_two_sided(g: &BTreeSet<Formula>, d: &BTreeSet<Formula>) -> NSequent {
    embed_two_sided_in(g, d, crate::matrix::m4())
}

// ---------------------------------------------------------------------------
// Rules

pub(crate) const META: [&str; 2] = ["alpha", "beta"];

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RuleKind {
    Axiom,
    Weakening,
    Logical { connective: Connective, tuple: Vec<TruthValue> },
    /// A nullary connective's table entry, `f̂ : f`, which needs no premises.
    Constant { connective: Connective },
}

/// A rule schema. Patterns range over the metavariables `alpha`, `beta`; every premise and
/// the conclusion carry an implicit shared context `Ω`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedRule {
    pub name: String,
    pub kind: RuleKind,
    pub premises: Vec<Vec<SignedFormula>>,
    pub conclusion: Vec<SignedFormula>,
}

fn meta(i: usize) -> Formula {
    Formula::var(META[i])
}

/// Axiom schema, weakening schema, then one rule per connective and value tuple.
pub fn generate_sf_rules(m: &LogicalMatrix) -> Vec<SignedRule> {
    let mut rules = vec![
        SignedRule {
            name: "axiom".into(),
            kind: RuleKind::Axiom,
            premises: vec![],
            conclusion: m.values().map(|t| SignedFormula::new(t, meta(0))).collect(),
        },
        SignedRule { name: "weaken".into(), kind: RuleKind::Weakening, premises: vec![vec![]], conclusion: vec![] },
    ];
    for c in m.connectives() {
        let k = c.arity();
        let args: Vec<Formula> = (0..k).map(meta).collect();
        let body = c.apply(&args);
        if k == 0 {
            let t = m.apply(c, &[]).expect("table");
            rules.push(SignedRule {
                name: c.name().into(),
                kind: RuleKind::Constant { connective: c },
                premises: vec![],
                conclusion: vec![SignedFormula::new(t, body)],
            });
            continue;
        }
        for tuple in value_tuples(m, k) {
            let out = m.apply(c, &tuple).expect("table");
            let name = std::iter::once(c.name())
                .chain(tuple.iter().map(|t| m.name(*t)))
                .collect::<Vec<_>>()
                .join("_");
            rules.push(SignedRule {
                name,
                kind: RuleKind::Logical { connective: c, tuple: tuple.clone() },
                premises: tuple.iter().zip(&args).map(|(t, a)| vec![SignedFormula::new(*t, a.clone())]).collect(),
                conclusion: vec![SignedFormula::new(out, body.clone())],
            });
        }
    }
    rules
}

pub(crate) fn value_tuples(m: &LogicalMatrix, k: usize) -> Vec<Vec<TruthValue>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t: Vec<TruthValue>| {
                m.values().map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn logical_rule_count(rules: &[SignedRule]) -> usize {
    rules.iter().filter(|r| matches!(r.kind, RuleKind::Logical { .. })).count()
}

// ---------------------------------------------------------------------------
// Derivations

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SfDerivation {
    pub signed: SignedSet,
    pub rule: String,
    pub premises: Vec<SfDerivation>,
}

#[derive(Serialize, Deserialize)]
struct SfWire {
    signed: Vec<String>,
    rule: String,
    #[serde(default)]
    premises: Vec<SfWire>,
}

impl SfDerivation {
    fn to_wire(&self, m: &LogicalMatrix) -> SfWire {
        SfWire {
            signed: self.signed.iter().map(|x| x.render(m)).collect(),
            rule: self.rule.clone(),
            premises: self.premises.iter().map(|p| p.to_wire(m)).collect(),
        }
    }

    fn from_wire(w: SfWire, m: &LogicalMatrix) -> Result<SfDerivation, SignedError> {
        Ok(SfDerivation {
            signed: w.signed.iter().map(|s| SignedFormula::parse(s, m)).collect::<Result<_, _>>()?,
            rule: w.rule,
            premises: w.premises.into_iter().map(|p| SfDerivation::from_wire(p, m)).collect::<Result<_, _>>()?,
        })
    }

    pub fn to_json(&self, m: &LogicalMatrix) -> String {
        serde_json::to_string_pretty(&self.to_wire(m)).expect("serializable")
    }

    pub fn from_json(src: &str, m: &LogicalMatrix) -> Result<SfDerivation, SignedError> {
        SfDerivation::from_wire(serde_json::from_str(src)?, m)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(SfDerivation::size).sum::<usize>()
    }

    pub fn render_text(&self, m: &LogicalMatrix) -> String {
        crate::layout::render_tree(self, &|d: &SfDerivation| {
            (format!("{{{}}}", render_signed_set(&d.signed, m)), d.rule.clone(), d.premises.iter().collect())
        })
    }
}

fn is_axiomatic(s: &SignedSet, m: &LogicalMatrix) -> bool {
    let mut signs: BTreeMap<&Formula, usize> = BTreeMap::new();
    for x in s {
        *signs.entry(&x.body).or_default() += 1;
    }
    signs.values().any(|&c| c == m.len())
}

/// Check every node against the rules generated from `m`.
pub fn check_sf_derivation(d: &SfDerivation, m: &LogicalMatrix) -> Result<(), CheckError> {
    let rules: HashMap<String, SignedRule> = generate_sf_rules(m).into_iter().map(|r| (r.name.clone(), r)).collect();
    check_node(d, m, &rules, &mut Vec::new())
}

fn check_node(
    d: &SfDerivation,
    m: &LogicalMatrix,
    rules: &HashMap<String, SignedRule>,
    path: &mut Vec<usize>,
) -> Result<(), CheckError> {
    check_step(d, m, rules).map_err(|msg| CheckError::new(path, d.rule.clone(), msg))?;
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(p, m, rules, path)?;
        path.pop();
    }
    Ok(())
}

/// Check only the rule instance at the root of `d`, ignoring the premises' own justifications.
pub fn check_sf_step(d: &SfDerivation, m: &LogicalMatrix) -> Result<(), CheckError> {
    let rules: HashMap<String, SignedRule> = generate_sf_rules(m).into_iter().map(|r| (r.name.clone(), r)).collect();
    check_step(d, m, &rules).map_err(|msg| CheckError::new(&[], d.rule.clone(), msg))
}

fn check_step(d: &SfDerivation, m: &LogicalMatrix, rules: &HashMap<String, SignedRule>) -> Result<(), String> {
    let rule = rules.get(&d.rule).ok_or_else(|| format!("unknown rule `{}`", d.rule))?;
    if d.premises.len() != rule.premises.len() {
        return Err(format!("expected {} premises, found {}", rule.premises.len(), d.premises.len()));
    }
    match &rule.kind {
        RuleKind::Axiom => {
            if !is_axiomatic(&d.signed, m) {
                return Err("no formula carries every sign".into());
            }
        }
        RuleKind::Weakening => {
            if !d.premises[0].signed.is_subset(&d.signed) {
                return Err("premise is not a subset of the conclusion".into());
            }
        }
        RuleKind::Constant { connective } => {
            let want = SignedFormula::new(m.apply(*connective, &[]).expect("table"), connective.apply(&[]));
            if !d.signed.contains(&want) {
                return Err(format!("set lacks `{}`", want.render(m)));
            }
        }
        RuleKind::Logical { connective, tuple } => {
            let out = m.apply(*connective, tuple).expect("table");
            let fits = d
                .signed
                .iter()
                .filter(|x| x.sign == out && Connective::split(&x.body).is_some_and(|(c, _)| c == *connective))
                .any(|principal| {
                    let (_, args) = Connective::split(&principal.body).expect("compound");
                    let mut without = d.signed.clone();
                    without.remove(principal);
                    let ok = [&d.signed, &without].into_iter().any(|ctx| {
                        d.premises.iter().zip(tuple.iter().zip(&args)).all(|(p, (t, a))| {
                            let mut want = ctx.clone();
                            want.insert(SignedFormula::new(*t, a.clone()));
                            p.signed == want
                        })
                    });
                    ok
                });
            if !fits {
                return Err("no principal formula and context fit the rule instance".into());
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Search

struct SfSearch<'m> {
    m: &'m LogicalMatrix,
    n: usize,
    forms: Vec<Formula>,
    shape: Vec<Option<(Connective, Vec<usize>)>>,
    memo: HashMap<BitSet, Option<usize>>,
    arena: Vec<(BitSet, String, Vec<usize>)>,
}

impl<'m> SfSearch<'m> {
    fn new(goal: &SignedSet, m: &'m LogicalMatrix) -> SfSearch<'m> {
        let mut subs = BTreeSet::new();
        for x in goal {
            x.body.collect_subformulas(&mut subs);
        }
        let mut forms: Vec<Formula> = subs.into_iter().collect();
        canonical_order(&mut forms);
        let index: HashMap<&Formula, usize> = forms.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let shape = forms
            .iter()
            .map(|f| Connective::split(f).map(|(c, args)| (c, args.iter().map(|a| index[a]).collect())))
            .collect();
        SfSearch { m, n: m.len(), forms: forms.clone(), shape, memo: HashMap::new(), arena: Vec::new() }
    }

    fn slot(&self, f: usize, t: TruthValue) -> usize {
        f * self.n + t.index()
    }

    fn leaf_rule(&self, s: &BitSet) -> Option<String> {
        for f in 0..self.forms.len() {
            if (0..self.n).all(|t| s.contains(f * self.n + t)) {
                return Some("axiom".into());
            }
            if let Some((c, args)) = &self.shape[f] {
                if args.is_empty() {
                    let t = self.m.apply(*c, &[]).expect("table");
                    if s.contains(self.slot(f, t)) {
                        return Some(c.name().into());
                    }
                }
            }
        }
        None
    }

    fn search(&mut self, s: BitSet) -> Option<usize> {
        if let Some(r) = self.memo.get(&s) {
            return *r;
        }
        let result = self.expand(&s);
        self.memo.insert(s, result);
        result
    }

    fn expand(&mut self, s: &BitSet) -> Option<usize> {
        if let Some(rule) = self.leaf_rule(s) {
            self.arena.push((s.clone(), rule, vec![]));
            return Some(self.arena.len() - 1);
        }
        // Sign index first, then formula size: `forms` is already size-ordered.
        for t in 0..self.n {
            let t = TruthValue(t as u8);
            for f in 0..self.forms.len() {
                if !s.contains(self.slot(f, t)) {
                    continue;
                }
                let Some((c, args)) = self.shape[f].clone() else { continue };
                if args.is_empty() {
                    continue;
                }
                for tuple in value_tuples(self.m, args.len()) {
                    if self.m.apply(c, &tuple).expect("table") != t {
                        continue;
                    }
                    let premises: Vec<BitSet> = args
                        .iter()
                        .zip(&tuple)
                        .map(|(a, v)| {
                            let mut p = s.clone();
                            p.insert(self.slot(*a, *v));
                            p
                        })
                        .collect();
                    if premises.iter().any(|p| p == s) {
                        continue;
                    }
                    // Premises extend the conclusion, so a valid conclusion has valid premises:
                    // the first applicable rule decides the set.
                    let mut kids = Vec::new();
                    for p in premises {
                        kids.push(self.search(p)?);
                    }
                    let name = std::iter::once(c.name())
                        .chain(tuple.iter().map(|v| self.m.name(*v)))
                        .collect::<Vec<_>>()
                        .join("_");
                    self.arena.push((s.clone(), name, kids));
                    return Some(self.arena.len() - 1);
                }
            }
        }
        None
    }

    fn materialize(&self, id: usize) -> SfDerivation {
        let (s, rule, kids) = &self.arena[id];
        SfDerivation {
            signed: s
                .iter()
                .map(|i| SignedFormula::new(TruthValue((i % self.n) as u8), self.forms[i / self.n].clone()))
                .collect(),
            rule: rule.clone(),
            premises: kids.iter().map(|k| self.materialize(*k)).collect(),
        }
    }
}

/// Backward search for a derivation of `goal`. Succeeds exactly when `goal` is valid in `m`.
pub fn sf_prove(goal: &SignedSet, m: &LogicalMatrix) -> Option<SfDerivation> {
    let mut search = SfSearch::new(goal, m);
    let index: HashMap<Formula, usize> = search.forms.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
    let mut root = BitSet::new(search.forms.len() * search.n);
    for x in goal {
        root.insert(search.slot(index[&x.body], x.sign));
    }
    let id = search.search(root)?;
    Some(search.materialize(id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{boolean, m4};

    fn set(s: &str) -> SignedSet {
        parse_signed_set(s, m4()).unwrap()
    }

    #[test]
    fn rule_counts() {
        let rules = generate_sf_rules(m4());
        assert_eq!(logical_rule_count(&rules), 40);
        assert_eq!(logical_rule_count(&generate_sf_rules(&boolean())), 10);
        let r = rules.iter().find(|r| r.name == "or_n_b").unwrap();
        assert_eq!(m4().name(r.conclusion[0].sign), "1");
    }

    #[test]
    fn satisfaction_examples() {
        let f = |s: &str| parse(s).unwrap();
        let axiom = NSequent { components: vec![[f("p")].into(); 4] };
        let top = NSequent { components: vec![BTreeSet::new(), BTreeSet::new(), BTreeSet::new(), [f("p | ~#p")].into()] };
        for v in crate::matrix::valuations(&f("p").vars(), m4()) {
            assert!(nsequent_satisfied(&v, &axiom, m4()).unwrap());
            assert!(nsequent_satisfied(&v, &top, m4()).unwrap());
        }
        let s = NSequent { components: vec![[f("p")].into(), BTreeSet::new(), BTreeSet::new(), BTreeSet::new()] };
        let v = Valuation::parse("p=1", m4()).unwrap();
        assert!(!nsequent_satisfied(&v, &s, m4()).unwrap());
    }

    #[test]
    fn embedding_matches_two_sided_satisfaction() {
        let f = |s: &str| parse(s).unwrap();
        let g: BTreeSet<_> = [f("p")].into();
        let d: BTreeSet<_> = [f("#p")].into();
        let e = embed_two_sided(&g, &d);
        assert_eq!(e.to_string(), "p ; p ; #p ; #p");
        for v in crate::matrix::valuations(&f("p").vars(), m4()) {
            let two = !m4().is_designated(crate::eval(&f("p"), &v, m4()).unwrap())
                || m4().is_designated(crate::eval(&f("#p"), &v, m4()).unwrap());
            assert_eq!(nsequent_satisfied(&v, &e, m4()).unwrap(), two);
        }
        let empty = embed_two_sided(&BTreeSet::new(), &BTreeSet::new());
        assert!(!nsequent_satisfied(&Valuation::default(), &empty, m4()).unwrap());
    }

    #[test]
    fn check_examples() {
        let leaf = |s: &str| SfDerivation { signed: set(s), rule: "axiom".into(), premises: vec![] };
        assert!(check_sf_derivation(&leaf("0:p, n:p, b:p, 1:p"), m4()).is_ok());
        assert!(check_sf_derivation(&leaf("0:p, n:p, 1:p"), m4()).is_err());
        let node = SfDerivation {
            signed: set("1:p | q"),
            rule: "or_1_0".into(),
            premises: vec![leaf("1:p"), leaf("0:q")],
        };
        assert!(check_sf_step(&node, m4()).is_ok());
        // The instance is fine but its premises are not axioms.
        assert_eq!(check_sf_derivation(&node, m4()).unwrap_err().path, vec![0]);
        let wrong = SfDerivation { rule: "or_0_1".into(), ..node };
        assert!(check_sf_step(&wrong, m4()).is_err());
    }

    #[test]
    fn prove_examples() {
        let d = sf_prove(&set("0:p, n:p, b:p, 1:p"), m4()).unwrap();
        assert_eq!(d.rule, "axiom");
        let d = sf_prove(&set("b:p | ~#p, 1:p | ~#p"), m4()).unwrap();
        assert!(check_sf_derivation(&d, m4()).is_ok());
        assert!(sf_prove(&set("1:p"), m4()).is_none());
        assert!(sf_prove(&set("0:bot"), m4()).is_some());
    }

    #[test]
    fn json_round_trip() {
        let d = sf_prove(&set("b:p | ~#p, 1:p | ~#p"), m4()).unwrap();
        let back = SfDerivation::from_json(&d.to_json(m4()), m4()).unwrap();
        assert_eq!(back, d);
    }
}
