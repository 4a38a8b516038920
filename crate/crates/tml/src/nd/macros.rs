//! Derived rules, each built from primitive steps.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::syntax::Formula;

use super::{renumber, Discharge, NdDeduction, NdRule};

static NEXT: AtomicUsize = AtomicUsize::new(0);

/// A marker no other construction will pick; [`renumber`] tidies these away.
pub(crate) fn fresh() -> String {
    format!("_t{}", NEXT.fetch_add(1, Ordering::Relaxed))
}

fn parts(f: &Formula) -> (Formula, Formula) {
    match f {
        Formula::Or(a, b) | Formula::And(a, b) => ((**a).clone(), (**b).clone()),
        _ => panic!("`{f}` is not binary"),
    }
}

/// Case analysis on a deduction of `x ∨ y`: each branch gets a hypothesis of its disjunct.
pub(crate) fn cases(
    major: NdDeduction,
    target: &Formula,
    left: impl FnOnce(NdDeduction) -> NdDeduction,
    right: impl FnOnce(NdDeduction) -> NdDeduction,
) -> NdDeduction {
    let (x, y) = parts(&major.conclusion);
    let (u, v) = (fresh(), fresh());
    let l = left(NdDeduction::hyp(&u, x.clone()));
    let r = right(NdDeduction::hyp(&v, y.clone()));
    NdDeduction::infer(NdRule::OrE, target.clone(), vec![major, l, r])
        .discharging(vec![Discharge { marker: u, formula: x }, Discharge { marker: v, formula: y }])
}

pub(crate) fn or_i1(d: NdDeduction, right: &Formula) -> NdDeduction {
    let c = Formula::or(&d.conclusion, right);
    NdDeduction::infer(NdRule::OrI1, c, vec![d])
}

pub(crate) fn or_i2(left: &Formula, d: NdDeduction) -> NdDeduction {
    let c = Formula::or(left, &d.conclusion);
    NdDeduction::infer(NdRule::OrI2, c, vec![d])
}

pub(crate) fn and_i(a: NdDeduction, b: NdDeduction) -> NdDeduction {
    let c = Formula::and(&a.conclusion, &b.conclusion);
    NdDeduction::infer(NdRule::AndI, c, vec![a, b])
}

pub(crate) fn and_e(d: NdDeduction, first: bool) -> NdDeduction {
    let (a, b) = parts(&d.conclusion);
    let (rule, c) = if first { (NdRule::AndE1, a) } else { (NdRule::AndE2, b) };
    NdDeduction::infer(rule, c, vec![d])
}

pub(crate) fn bot_e(d: NdDeduction, target: &Formula) -> NdDeduction {
    NdDeduction::infer(NdRule::BotE, target.clone(), vec![d])
}

/// `(γ∨α) ∧ (γ∨β)` to `γ ∨ (α∧β)`.
pub fn distrib_lr(d: NdDeduction) -> NdDeduction {
    let (ga, gb) = parts(&d.conclusion);
    let ((g, a), (_, b)) = (parts(&ga), parts(&gb));
    let ab = Formula::and(&a, &b);
    let target = Formula::or(&g, &ab);
    let second = and_e(d.clone(), false);
    let mut out = cases(
        and_e(d, true),
        &target,
        |hg| or_i1(hg, &ab),
        |ha| cases(second, &target, |hg| or_i1(hg, &ab), |hb| or_i2(&g, and_i(ha, hb))),
    );
    renumber(&mut out);
    out
}

/// `γ ∨ (α∧β)` to `(γ∨α) ∧ (γ∨β)`.
pub fn distrib_rl(d: NdDeduction) -> NdDeduction {
    let (g, ab) = parts(&d.conclusion);
    let (a, b) = parts(&ab);
    let half = |d: NdDeduction, x: &Formula, first: bool| {
        let target = Formula::or(&g, x);
        cases(d, &target, |hg| or_i1(hg, x), |hab| or_i2(&g, and_e(hab, first)))
    };
    let mut out = and_i(half(d.clone(), &a, true), half(d, &b, false));
    renumber(&mut out);
    out
}

/// `α ∨ (□γ ∧ ¬□γ)` to `α ∨ ⊥`.
pub fn bot_collapse_lr(d: NdDeduction) -> NdDeduction {
    let (a, _) = parts(&d.conclusion);
    let target = Formula::or(&a, &Formula::Bot);
    let mut out = cases(
        d,
        &target,
        |ha| or_i1(ha, &Formula::Bot),
        |hk| {
            let bg = and_e(hk.clone(), true);
            let g = match &bg.conclusion {
                Formula::Box(g) => (**g).clone(),
                f => panic!("`{f}` is not boxed"),
            };
            let gamma = NdDeduction::infer(NdRule::BoxE, g.clone(), vec![bg.clone()]);
            let ng = NdDeduction::infer(NdRule::NegBoxE, g.neg(), vec![and_e(hk, false), gamma]);
            or_i2(&a, NdDeduction::infer(NdRule::BotI, Formula::Bot, vec![and_i(ng, bg)]))
        },
    );
    renumber(&mut out);
    out
}

/// `α ∨ ⊥` to `α ∨ (□γ ∧ ¬□γ)`.
pub fn bot_collapse_rl(d: NdDeduction, gamma: &Formula) -> NdDeduction {
    let (a, _) = parts(&d.conclusion);
    let k = Formula::and(&gamma.boxed(), &gamma.boxed().neg());
    let target = Formula::or(&a, &k);
    let mut out = cases(d, &target, |ha| or_i1(ha, &k), |hb| bot_e(hb, &target));
    renumber(&mut out);
    out
}

/// Derived `□I`: from `φ`, and `⊥` under the hypothesis `¬φ` labelled `marker`, conclude `□φ`.
pub fn box_intro(d1: NdDeduction, d2: NdDeduction, marker: &str) -> NdDeduction {
    let phi = d1.conclusion.clone();
    let star = NdDeduction::infer(
        NdRule::BoxIStar,
        Formula::or(&Formula::Bot, &phi.boxed()),
        vec![or_i2(&Formula::Bot, d1), d2],
    )
    .discharging(vec![Discharge { marker: marker.into(), formula: phi.neg() }]);
    let target = phi.boxed();
    let mut out = cases(star, &target, |hb| bot_e(hb, &target), |x| x);
    renumber(&mut out);
    out
}
