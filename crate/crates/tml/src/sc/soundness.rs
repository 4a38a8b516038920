use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::{assignments, product_algebra, sequent_holds_in, Algebra};
use crate::matrix::{eval, m4, valuations, LogicalMatrix, Valuation};
use crate::sequent::Sequent;
use crate::syntax::Formula;

use super::proof::{ScRule, Side};

/// A rule instance over the metavariables `alpha`, `beta` with one-formula contexts `g`, `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSchema {
    pub name: String,
    pub premises: Vec<Sequent>,
    pub conclusion: Sequent,
}

fn principal_shape(rule: ScRule) -> Option<Formula> {
    use ScRule::*;
    let (a, b) = (Formula::var("alpha"), Formula::var("beta"));
    Some(match rule {
        OrL | OrR => Formula::or(&a, &b),
        AndL | AndR => Formula::and(&a, &b),
        NegOrL | NegOrR => Formula::or(&a, &b).neg(),
        NegAndL | NegAndR => Formula::and(&a, &b).neg(),
        NegNegL | NegNegR => a.neg().neg(),
        BoxL1 | BoxL2 | BoxR => a.boxed(),
        NegBoxL | NegBoxR1 | NegBoxR2 => a.boxed().neg(),
        _ => return None,
    })
}

impl RuleSchema {
    pub fn of(rule: ScRule) -> RuleSchema {
        let (g, d, a) = (Formula::var("g"), Formula::var("d"), Formula::var("alpha"));
        let ctx = Sequent::new([g.clone()], [d.clone()]);
        let (premises, conclusion) = match rule {
            ScRule::Axiom => (vec![], Sequent::new([g.clone(), a.clone()], [d.clone(), a.clone()])),
            ScRule::WeakL => (vec![ctx.clone()], ctx.with_left([a.clone()])),
            ScRule::WeakR => (vec![ctx.clone()], ctx.with_right([a.clone()])),
            ScRule::Cut => (vec![ctx.with_right([a.clone()]), ctx.with_left([a.clone()])], ctx.clone()),
            rule => {
                let phi = principal_shape(rule).expect("logical rule");
                let (side, adds) = rule.decompose(&phi).expect("shape matches");
                let premises = adds.into_iter().map(|(l, r)| ctx.with_left(l).with_right(r)).collect();
                let conclusion = match side {
                    Side::Left => ctx.with_left([phi]),
                    Side::Right => ctx.with_right([phi]),
                };
                (premises, conclusion)
            }
        };
        RuleSchema { name: rule.name().to_string(), premises, conclusion }
    }

    fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        for s in self.premises.iter().chain([&self.conclusion]) {
            for f in s.formulas() {
                f.collect_vars(&mut out);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    pub rule: String,
    /// Under every M₄ valuation, satisfied premises give a satisfied conclusion.
    pub matrix: bool,
    /// `⋀Γ ≤ ⋁Δ` is preserved under every homomorphism into M₄.
    pub m4_lattice: bool,
    /// The same into M₄×M₄.
    pub product_lattice: bool,
    /// The first counterexample found, as `var=value` pairs.
    pub witness: Option<String>,
}

impl SoundnessReport {
    pub fn sound(&self) -> bool {
        self.matrix && self.m4_lattice && self.product_lattice
    }
}

fn satisfied(s: &Sequent, v: &Valuation, m: &LogicalMatrix) -> bool {
    let des = |f: &Formula| m.is_designated(eval(f, v, m).expect("total"));
    s.left.iter().any(|f| !des(f)) || s.right.iter().any(des)
}

fn lattice_witness(schema: &RuleSchema, a: &Algebra) -> Option<String> {
    let vars: Vec<Arc<str>> = schema.vars().into_iter().collect();
    let holds = |s: &Sequent, env: &BTreeMap<Arc<str>, usize>| sequent_holds_in(&s.left, &s.right, a, env).expect("total");
    assignments(&vars, a).into_iter().find_map(|env| {
        let fails = schema.premises.iter().all(|p| holds(p, &env)) && !holds(&schema.conclusion, &env);
        fails.then(|| env.iter().map(|(k, v)| format!("{k}={}", a.names[*v])).collect::<Vec<_>>().join(","))
    })
}

/// Local soundness of one schema, checked exhaustively.
pub fn schema_soundness(schema: &RuleSchema) -> SoundnessReport {
    let m = m4();
    let matrix_witness = valuations(&schema.vars(), m).into_iter().find(|v| {
        schema.premises.iter().all(|p| satisfied(p, v, m)) && !satisfied(&schema.conclusion, v, m)
    });
    let alg = Algebra::m4();
    let m4_witness = lattice_witness(schema, &alg);
    let product_witness = lattice_witness(schema, &product_algebra(&alg, &alg));
    SoundnessReport {
        rule: schema.name.clone(),
        matrix: matrix_witness.is_none(),
        m4_lattice: m4_witness.is_none(),
        product_lattice: product_witness.is_none(),
        witness: matrix_witness.map(|v| v.render(m)).or(m4_witness).or(product_witness),
    }
}

pub fn rule_soundness(rule: ScRule) -> SoundnessReport {
    schema_soundness(&RuleSchema::of(rule))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_rule_is_sound() {
        for r in [ScRule::Axiom, ScRule::WeakL, ScRule::WeakR, ScRule::Cut].into_iter().chain(ScRule::LOGICAL) {
            let rep = rule_soundness(r);
            assert!(rep.sound(), "{rep:?}");
        }
    }

    #[test]
    fn box_r_schema_shape() {
        let s = RuleSchema::of(ScRule::BoxR);
        assert_eq!(s.premises, vec![Sequent::parse("g => d, alpha").unwrap(), Sequent::parse("g, ~alpha => d").unwrap()]);
        assert_eq!(s.conclusion, Sequent::parse("g => d, #alpha").unwrap());
    }

    #[test]
    fn box_r_without_second_premise_fails_at_b() {
        let mut s = RuleSchema::of(ScRule::BoxR);
        s.premises.truncate(1);
        let rep = schema_soundness(&s);
        assert!(!rep.sound());
        assert!(rep.witness.as_deref().unwrap().split(',').any(|kv| kv == "alpha=b"), "{rep:?}");
    }
}
