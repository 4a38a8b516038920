use std::collections::BTreeSet;

use thiserror::Error;

use crate::check::CheckError;
use crate::sc::{cut, prove, weaken, ScProof, ScRule};
use crate::sequent::Sequent;
use crate::syntax::Formula;

use super::{check_nd, NdDeduction, NdRule};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NdToScError {
    #[error("deduction does not check: {0}")]
    Check(#[from] CheckError),
    #[error("no proof found for the lemma {0}")]
    Lemma(Sequent),
}

/// Replace `⊥` by `¬p ∧ □p`, which takes the value 0 everywhere. The two-sided calculus has
/// no rule for `⊥`.
pub fn tau(f: &Formula) -> Formula {
    match f {
        Formula::Bot => {
            let p = Formula::var("p");
            Formula::and(&p.neg(), &p.boxed())
        }
        Formula::Var(_) => f.clone(),
        Formula::Neg(a) => tau(a).neg(),
        Formula::Box(a) => tau(a).boxed(),
        Formula::And(a, b) => Formula::and(&tau(a), &tau(b)),
        Formula::Or(a, b) => Formula::or(&tau(a), &tau(b)),
    }
}

/// From a deduction of `φ` with open hypotheses `Γ`, a proof (possibly with cuts) of
/// `τΓ ⇒ τφ`.
pub fn nd_to_sc(d: &NdDeduction) -> Result<ScProof, NdToScError> {
    check_nd(d)?;
    go(d)
}

fn open_of(d: &NdDeduction) -> BTreeSet<Formula> {
    check_nd(d).expect("checked at the root").open().iter().map(tau).collect()
}

fn lemma(s: Sequent) -> Result<ScProof, NdToScError> {
    prove(&s).ok_or(NdToScError::Lemma(s))
}

fn go(d: &NdDeduction) -> Result<ScProof, NdToScError> {
    use NdRule::*;
    let o = open_of(d);
    let c = tau(&d.conclusion);
    let goal = Sequent { left: o.clone(), right: BTreeSet::from([c.clone()]) };
    let subs = d.premises.iter().map(go).collect::<Result<Vec<_>, _>>()?;
    let concl: Vec<Formula> = d.premises.iter().map(|p| tau(&p.conclusion)).collect();
    let on_right = |extra: &[&Formula]| goal.with_right(extra.iter().map(|f| (*f).clone()));
    let node = |rule: ScRule, premises: Vec<ScProof>| ScProof::node(rule, goal.clone(), c.clone(), premises);
    Ok(match d.rule {
        Hyp => ScProof::axiom(goal),
        Ma => weaken(lemma(Sequent::new([], [c.clone()]))?, &goal),
        AndI | NegOrI => {
            let rule = if d.rule == AndI { ScRule::AndR } else { ScRule::NegOrR };
            let ps = subs.into_iter().zip(&concl).map(|(p, x)| weaken(p, &on_right(&[x]))).collect();
            node(rule, ps)
        }
        OrI1 | OrI2 | NegAndI1 | NegAndI2 => {
            let (x, y) = match &c {
                Formula::Or(x, y) => ((**x).clone(), (**y).clone()),
                Formula::Neg(n) => match &**n {
                    Formula::And(x, y) => (x.neg(), y.neg()),
                    _ => unreachable!("checked"),
                },
                _ => unreachable!("checked"),
            };
            let rule = if matches!(d.rule, OrI1 | OrI2) { ScRule::OrR } else { ScRule::NegAndR };
            let p = subs.into_iter().next().expect("one premise");
            node(rule, vec![weaken(p, &on_right(&[&x, &y]))])
        }
        NegNegI | NegBoxI => {
            let rule = if d.rule == NegNegI { ScRule::NegNegR } else { ScRule::NegBoxR2 };
            let p = subs.into_iter().next().expect("one premise");
            node(rule, vec![weaken(p, &on_right(&[&concl[0]]))])
        }
        OrE | NegAndE => {
            let m = concl[0].clone();
            let hyps: Vec<Formula> = d.discharges.iter().map(|x| tau(&x.formula)).collect();
            let above = goal.with_left([m.clone()]);
            let rule = if d.rule == OrE { ScRule::OrL } else { ScRule::NegAndL };
            let mut subs = subs.into_iter();
            let major = subs.next().expect("major premise");
            let ps = subs.zip(&hyps).map(|(p, h)| weaken(p, &above.with_left([h.clone()]))).collect();
            let split = ScProof::node(rule, above.clone(), m.clone(), ps);
            cut(&m, &goal, major, split)
        }
        BoxIStar => {
            let (psi, bphi) = match &c {
                Formula::Or(x, y) => ((**x).clone(), (**y).clone()),
                _ => unreachable!("checked"),
            };
            let phi = match &bphi {
                Formula::Box(x) => (**x).clone(),
                _ => unreachable!("checked"),
            };
            let mut subs = subs.into_iter();
            let (p1, p2) = (subs.next().expect("two premises"), subs.next().expect("two premises"));
            let mid = Sequent { left: o.clone(), right: BTreeSet::from([psi.clone(), bphi.clone()]) };
            let with_phi = mid.with_right([phi.clone()]);
            let or_lemma = lemma(Sequent::new([concl[0].clone()], [psi.clone(), phi.clone()]))?;
            let first = cut(&concl[0], &with_phi, p1, or_lemma);
            let second = weaken(p2, &mid.with_left([phi.neg()]));
            let boxed = ScProof::node(ScRule::BoxR, mid, bphi.clone(), vec![first, second]);
            node(ScRule::OrR, vec![boxed])
        }
        AndE1 | AndE2 | NegOrE1 | NegOrE2 | NegNegE | BoxE | NegBoxE | BotI | BotE => {
            let lem = lemma(Sequent::new(concl.clone(), [c.clone()]))?;
            cut_many(&o, &c, subs.into_iter().zip(concl).collect(), lem)
        }
    })
}

/// Discharge the premises of `lemma : C ⇒ c` one cut at a time against proofs of each member of `C`.
fn cut_many(o: &BTreeSet<Formula>, c: &Formula, prems: Vec<(ScProof, Formula)>, lemma: ScProof) -> ScProof {
    let mut rest: BTreeSet<Formula> = prems.iter().map(|(_, x)| x.clone()).collect();
    let right = BTreeSet::from([c.clone()]);
    let at = |rest: &BTreeSet<Formula>| Sequent { left: o.union(rest).cloned().collect(), right: right.clone() };
    let mut current = weaken(lemma, &at(&rest));
    for (p, x) in prems {
        if !rest.remove(&x) {
            continue;
        }
        current = cut(&x, &at(&rest), p, current);
    }
    current
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{m4, matrix_consequence};
    use crate::nd::{box_intro, distrib_lr, sc_to_nd};
    use crate::sc::check_sc_proof;

    fn back(d: &NdDeduction) -> ScProof {
        let p = nd_to_sc(d).unwrap();
        assert_eq!(check_sc_proof(&p, true), Ok(()));
        let s = check_nd(d).unwrap();
        assert_eq!(p.sequent.left, s.open().iter().map(tau).collect());
        assert_eq!(p.sequent.right, BTreeSet::from([tau(&s.conclusion)]));
        p
    }

    #[test]
    fn round_trip_through_deductions() {
        for s in ["p | q => q | p", "=> #(p | ~#p)", "~#~#p => ~p, #p", "p, ~#p => ~p", "#p => #p & p"] {
            let sq = Sequent::parse(s).unwrap();
            let d = sc_to_nd(&prove(&sq).unwrap()).unwrap();
            let p = back(&d);
            assert!(matrix_consequence(&p.sequent.left, &p.sequent.right, m4()), "{s}");
        }
    }

    #[test]
    fn macros_translate_back() {
        let h = NdDeduction::hyp("h1", crate::parse("(g | a) & (g | b)").unwrap());
        back(&distrib_lr(h));
        let phi = crate::parse("p | ~#p").unwrap();
        let d1 = NdDeduction::infer(NdRule::Ma, phi.clone(), vec![]);
        let hyp = NdDeduction::hyp("w", phi.neg());
        let np = NdDeduction::infer(NdRule::NegOrE1, Formula::var("p").neg(), vec![hyp.clone()]);
        let nn = NdDeduction::infer(NdRule::NegOrE2, Formula::var("p").boxed().neg().neg(), vec![hyp]);
        let bp = NdDeduction::infer(NdRule::NegNegE, Formula::var("p").boxed(), vec![nn]);
        let k = Formula::and(&np.conclusion, &bp.conclusion);
        let bot = NdDeduction::infer(NdRule::BotI, Formula::Bot, vec![NdDeduction::infer(NdRule::AndI, k, vec![np, bp])]);
        let p = back(&box_intro(d1, bot, "w"));
        assert_eq!(p.sequent, Sequent::parse("=> #(p | ~#p)").unwrap());
    }

    #[test]
    fn bot_reads_as_a_contradiction() {
        assert_eq!(tau(&crate::parse("~bot").unwrap()), crate::parse("~(~p & #p)").unwrap());
    }
}
