use std::collections::BTreeMap;

use crate::sc::{check_sc_proof, first_cut, ScProof, ScRule, TransformError};
use crate::syntax::Formula;

use super::macros::{and_i, bot_e, bot_collapse_lr, cases, distrib_lr, fresh, or_i1, or_i2};
use super::{fold_disjuncts, renumber, sorted_disjuncts, Discharge, NdDeduction, NdRule};

/// How each left formula of the current sequent is obtained from the root hypotheses.
type Env = BTreeMap<Formula, NdDeduction>;

/// From a cut-free proof of `Γ ⇒ Δ`, a deduction of `⋁Δ` whose open hypotheses lie in `Γ`.
/// Root hypotheses are labelled `h1`, `h2`, … in the order of `Γ`.
pub fn sc_to_nd(p: &ScProof) -> Result<NdDeduction, TransformError> {
    if let Some(path) = first_cut(p, &mut vec![]) {
        return Err(TransformError::Cut(path));
    }
    check_sc_proof(p, false)?;
    let env: Env = p
        .sequent
        .left
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), NdDeduction::hyp(&format!("h{}", i + 1), f.clone())))
        .collect();
    let mut out = translate(p, &env);
    renumber(&mut out);
    Ok(out)
}

fn right_of(p: &ScProof) -> Vec<Formula> {
    sorted_disjuncts(&p.sequent.right)
}

/// From a deduction of `x`, with `x` among `r`, a deduction of `⋁r`.
fn inject(d: NdDeduction, r: &[Formula]) -> NdDeduction {
    match r {
        [_] => d,
        [first, rest @ ..] if *first == d.conclusion => or_i1(d, &fold_disjuncts(rest)),
        [first, rest @ ..] => or_i2(first, inject(d, rest)),
        [] => panic!("`{}` is not among the disjuncts", d.conclusion),
    }
}

/// From a deduction of `⋁s`, a deduction of `target` given one for each disjunct.
fn split(d: NdDeduction, s: &[Formula], target: &Formula, each: &dyn Fn(NdDeduction) -> NdDeduction) -> NdDeduction {
    match s {
        [] => bot_e(d, target),
        [_] => each(d),
        [_, rest @ ..] => cases(d, target, each, |h| split(h, rest, target, each)),
    }
}

fn with(env: &Env, extra: Vec<NdDeduction>) -> Env {
    let mut out = env.clone();
    for d in extra {
        out.entry(d.conclusion.clone()).or_insert(d);
    }
    out
}

fn infer1(rule: NdRule, c: Formula, d: NdDeduction) -> NdDeduction {
    NdDeduction::infer(rule, c, vec![d])
}

fn children(phi: &Formula) -> (Formula, Formula) {
    match phi {
        Formula::Neg(x) => match &**x {
            Formula::And(a, b) | Formula::Or(a, b) => ((**a).clone(), (**b).clone()),
            Formula::Neg(a) | Formula::Box(a) => ((**a).clone(), (**a).clone()),
            f => panic!("no children for `¬{f}`"),
        },
        Formula::And(a, b) | Formula::Or(a, b) => ((**a).clone(), (**b).clone()),
        Formula::Box(a) => ((**a).clone(), (**a).clone()),
        f => panic!("no children for `{f}`"),
    }
}

/// A case split whose branches translate the two premises of a branching left rule.
fn branch(rule: NdRule, major: NdDeduction, hyps: [Formula; 2], target: &Formula, p: &ScProof, env: &Env) -> NdDeduction {
    let markers = [fresh(), fresh()];
    let prems = (0..2).map(|i| {
        let h = NdDeduction::hyp(&markers[i], hyps[i].clone());
        translate(&p.premises[i], &with(env, vec![h]))
    });
    let premises = std::iter::once(major).chain(prems).collect();
    let discharges = markers.into_iter().zip(hyps).map(|(marker, formula)| Discharge { marker, formula }).collect();
    NdDeduction::infer(rule, target.clone(), premises).discharging(discharges)
}

/// `⋁r ∨ □α` from a proof of `… ⇒ r, α` and one of `…, ¬α ⇒ r`.
fn star(p: &ScProof, env: &Env, alpha: &Formula) -> NdDeduction {
    let r = right_of(p);
    let psi = fold_disjuncts(&r);
    let d1 = translate(&p.premises[0], env);
    let reshaped = split(d1, &right_of(&p.premises[0]), &Formula::or(&psi, alpha), &|y| {
        if y.conclusion == *alpha {
            or_i2(&psi, y)
        } else {
            or_i1(inject(y, &r), alpha)
        }
    });
    let u = fresh();
    let d2 = translate(&p.premises[1], &with(env, vec![NdDeduction::hyp(&u, alpha.neg())]));
    NdDeduction::infer(NdRule::BoxIStar, Formula::or(&psi, &alpha.boxed()), vec![reshaped, d2])
        .discharging(vec![Discharge { marker: u, formula: alpha.neg() }])
}

fn translate(p: &ScProof, env: &Env) -> NdDeduction {
    use ScRule::*;
    let r = right_of(p);
    let target = fold_disjuncts(&r);
    let widen = |d: NdDeduction, q: &ScProof| split(d, &right_of(q), &target, &|y| inject(y, &r));
    if p.rule == Axiom {
        let a = p.sequent.left.intersection(&p.sequent.right).next().expect("axiom");
        return inject(env[a].clone(), &r);
    }
    if p.rule == WeakL {
        return translate(&p.premises[0], env);
    }
    if p.rule == WeakR {
        return widen(translate(&p.premises[0], env), &p.premises[0]);
    }
    let phi = p.principal[0].clone();
    let (a, b) = children(&phi);
    let major = || env[&phi].clone();
    let prem = |i: usize, extra: Vec<NdDeduction>| translate(&p.premises[i], &with(env, extra));
    match p.rule {
        AndL => prem(0, vec![infer1(NdRule::AndE1, a, major()), infer1(NdRule::AndE2, b, major())]),
        NegOrL => prem(0, vec![infer1(NdRule::NegOrE1, a.neg(), major()), infer1(NdRule::NegOrE2, b.neg(), major())]),
        NegNegL => prem(0, vec![infer1(NdRule::NegNegE, a, major())]),
        BoxL1 => prem(0, vec![infer1(NdRule::BoxE, a, major())]),
        OrL => branch(NdRule::OrE, major(), [a, b], &target, p, env),
        NegAndL => branch(NdRule::NegAndE, major(), [a.neg(), b.neg()], &target, p, env),
        BoxL2 => split(prem(0, vec![]), &right_of(&p.premises[0]), &target, &|y| {
            if r.contains(&y.conclusion) {
                inject(y, &r)
            } else {
                let bot = NdDeduction::infer(NdRule::BotI, Formula::Bot, vec![and_i(y, major())]);
                bot_e(bot, &target)
            }
        }),
        OrR | NegAndR | NegNegR | NegBoxR2 => split(prem(0, vec![]), &right_of(&p.premises[0]), &target, &|y| {
            if r.contains(&y.conclusion) {
                return inject(y, &r);
            }
            let intro = match p.rule {
                OrR if y.conclusion == a => or_i1(y, &b),
                OrR => or_i2(&a, y),
                NegAndR if y.conclusion == a.neg() => infer1(NdRule::NegAndI1, phi.clone(), y),
                NegAndR => infer1(NdRule::NegAndI2, phi.clone(), y),
                NegNegR => infer1(NdRule::NegNegI, phi.clone(), y),
                _ => infer1(NdRule::NegBoxI, phi.clone(), y),
            };
            inject(intro, &r)
        }),
        AndR | NegOrR => {
            let (side1, side2, rule) = match p.rule {
                AndR => (a, b, NdRule::AndI),
                _ => (a.neg(), b.neg(), NdRule::NegOrI),
            };
            let d2 = prem(1, vec![]);
            let s2 = right_of(&p.premises[1]);
            split(prem(0, vec![]), &right_of(&p.premises[0]), &target, &|x| {
                if r.contains(&x.conclusion) {
                    return inject(x, &r);
                }
                debug_assert_eq!(x.conclusion, side1);
                split(d2.clone(), &s2, &target, &|y| {
                    if r.contains(&y.conclusion) {
                        return inject(y, &r);
                    }
                    debug_assert_eq!(y.conclusion, side2);
                    inject(NdDeduction::infer(rule, phi.clone(), vec![x.clone(), y]), &r)
                })
            })
        }
        NegBoxR1 => {
            let ma = NdDeduction::infer(NdRule::Ma, Formula::or(&a, &phi), vec![]);
            cases(ma, &target, |h| prem(0, vec![h]), |h| inject(h, &r))
        }
        BoxR => cases(star(p, env, &a), &target, |h| h, |h| inject(h, &r)),
        NegBoxL => {
            let psi = target.clone();
            let both = and_i(star(p, env, &a), or_i2(&psi, major()));
            let collapsed = bot_collapse_lr(distrib_lr(both));
            cases(collapsed, &target, |h| h, |h| bot_e(h, &target))
        }
        Axiom | WeakL | WeakR | Cut => unreachable!(),
    }
}
