use std::collections::BTreeSet;

use thiserror::Error;

use crate::check::CheckError;
use crate::sequent::Sequent;
use crate::syntax::Formula;

use super::proof::{check_sc_proof, ScProof, ScRule};
use super::search::prove;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("the input proof contains a cut at {0:?}")]
    Cut(Vec<usize>),
    #[error("{0}")]
    Shape(String),
    #[error("input does not check: {0}")]
    Check(#[from] CheckError),
}

fn seq(left: BTreeSet<Formula>, right: BTreeSet<Formula>) -> Sequent {
    Sequent { left, right }
}

fn plus(s: &BTreeSet<Formula>, extra: &[&Formula]) -> BTreeSet<Formula> {
    let mut out = s.clone();
    out.extend(extra.iter().map(|f| (*f).clone()));
    out
}

fn negs(s: &BTreeSet<Formula>) -> BTreeSet<Formula> {
    s.iter().map(Formula::neg).collect()
}

/// Extend `p` to prove `target` by weakening. Panics unless both sides of `p` are subsets.
pub fn weaken(p: ScProof, target: &Sequent) -> ScProof {
    assert!(p.sequent.left.is_subset(&target.left) && p.sequent.right.is_subset(&target.right), "not a weakening");
    let mut p = p;
    if p.sequent.left != target.left {
        let s = seq(target.left.clone(), p.sequent.right.clone());
        p = ScProof { rule: ScRule::WeakL, sequent: s, principal: vec![], premises: vec![p] };
    }
    if p.sequent.right != target.right {
        p = ScProof { rule: ScRule::WeakR, sequent: target.clone(), principal: vec![], premises: vec![p] };
    }
    p
}

/// Cut on `a`: from `p1 : X ⇒ Y, a` and `p2 : X, a ⇒ Y` weakened as needed, conclude `target`.
pub fn cut(a: &Formula, target: &Sequent, p1: ScProof, p2: ScProof) -> ScProof {
    let p1 = weaken(p1, &target.with_right([a.clone()]));
    let p2 = weaken(p2, &target.with_left([a.clone()]));
    ScProof::node(ScRule::Cut, target.clone(), a.clone(), vec![p1, p2])
}

/// `α ⇒ ¬¬α`
pub fn dn_intro(a: &Formula) -> ScProof {
    let nna = a.neg().neg();
    let top = Sequent::new([a.clone()], [nna.clone(), a.clone()]);
    ScProof::node(ScRule::NegNegR, Sequent::new([a.clone()], [nna.clone()]), nna, vec![ScProof::axiom(top)])
}

/// `¬¬α ⇒ α`
pub fn dn_elim(a: &Formula) -> ScProof {
    let nna = a.neg().neg();
    let top = Sequent::new([nna.clone(), a.clone()], [a.clone()]);
    ScProof::node(ScRule::NegNegL, Sequent::new([nna.clone()], [a.clone()]), nna, vec![ScProof::axiom(top)])
}

/// From `p : X ⇒ Y` with `Y ⊆ target.right ∪ {¬¬α …}`, prove `target` by cutting each listed
/// `¬¬α` against `¬¬α ⇒ α`.
fn swap_right(p: ScProof, target: &Sequent, bodies: &[&Formula]) -> ScProof {
    match bodies.split_first() {
        None => weaken(p, target),
        Some((a, rest)) => {
            let nna = a.neg().neg();
            let upper = swap_right(p, &target.with_right([nna.clone()]), rest);
            cut(&nna, target, upper, dn_elim(a))
        }
    }
}

/// Left-side counterpart of [`swap_right`], using `α ⇒ ¬¬α`.
fn swap_left(p: ScProof, target: &Sequent, bodies: &[&Formula]) -> ScProof {
    match bodies.split_first() {
        None => weaken(p, target),
        Some((a, rest)) => {
            let nna = a.neg().neg();
            let lower = swap_left(p, &target.with_left([nna.clone()]), rest);
            cut(&nna, target, dn_intro(a), lower)
        }
    }
}

pub(crate) fn first_cut(p: &ScProof, path: &mut Vec<usize>) -> Option<Vec<usize>> {
    if p.rule == ScRule::Cut {
        return Some(path.clone());
    }
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        if let Some(found) = first_cut(q, path) {
            return Some(found);
        }
        path.pop();
    }
    None
}

/// From a cut-free proof of `Γ ⇒ Δ`, a proof of `¬Δ ⇒ ¬Γ`. Cuts against the double-negation
/// lemmas appear where a rule has no direct dual.
pub fn contrapose(p: &ScProof) -> Result<ScProof, TransformError> {
    if let Some(path) = first_cut(p, &mut vec![]) {
        return Err(TransformError::Cut(path));
    }
    check_sc_proof(p, false)?;
    Ok(contra(p))
}

/// A cut-free proof of the contrapositive, found by search.
pub fn contrapose_cut_free(p: &ScProof) -> Option<ScProof> {
    prove(&p.sequent.contrapositive())
}

fn contra(p: &ScProof) -> ScProof {
    use Formula as F;
    use ScRule::*;
    let (l, r) = (&p.sequent.left, &p.sequent.right);
    let (nr, nl) = (negs(r), negs(l));
    let target = seq(nr.clone(), nl.clone());
    let ih: Vec<ScProof> = p.premises.iter().map(contra).collect();
    let node = |rule, sequent: Sequent, principal: Formula, premises| ScProof::node(rule, sequent, principal, premises);
    match p.rule {
        Axiom => ScProof::axiom(target),
        WeakL | WeakR => {
            let rule = if p.rule == WeakL { WeakR } else { WeakL };
            ScProof { rule, sequent: target, principal: vec![], premises: ih }
        }
        Cut => unreachable!("rejected before transforming"),
        rule => {
            let phi = p.principal[0].clone();
            let nphi = phi.neg();
            let dual = match rule {
                OrR => Some(NegOrL),
                OrL => Some(NegOrR),
                AndL => Some(NegAndR),
                AndR => Some(NegAndL),
                NegNegL => Some(NegNegR),
                NegNegR => Some(NegNegL),
                BoxL1 => Some(NegBoxR2),
                _ => None,
            };
            if let Some(d) = dual {
                return node(d, target, nphi, ih);
            }
            let mut ih = ih.into_iter();
            let mut next = || ih.next().expect("premise");
            match (rule, &phi) {
                (NegOrL, F::Neg(x)) | (NegAndL, F::Neg(x)) => {
                    let (F::Or(a, b) | F::And(a, b)) = &**x else { unreachable!() };
                    let (a, b): (&Formula, &Formula) = (a, b);
                    let inner = (**x).clone();
                    let s1 = seq(nr.clone(), plus(&nl, &[&inner]));
                    let prem = if rule == NegOrL {
                        let s2 = seq(nr.clone(), plus(&nl, &[&inner, a, b]));
                        vec![node(OrR, s1.clone(), inner.clone(), vec![swap_right(next(), &s2, &[a, b])])]
                    } else {
                        let s2a = seq(nr.clone(), plus(&nl, &[&inner, a]));
                        let s2b = seq(nr.clone(), plus(&nl, &[&inner, b]));
                        let (pa, pb) = (swap_right(next(), &s2a, &[a]), swap_right(next(), &s2b, &[b]));
                        vec![node(AndR, s1.clone(), inner.clone(), vec![pa, pb])]
                    };
                    node(NegNegR, target, nphi.clone(), prem)
                }
                (NegOrR, F::Neg(x)) | (NegAndR, F::Neg(x)) => {
                    let (F::Or(a, b) | F::And(a, b)) = &**x else { unreachable!() };
                    let (a, b): (&Formula, &Formula) = (a, b);
                    let inner = (**x).clone();
                    let s1 = seq(plus(&nr, &[&inner]), nl.clone());
                    let prem = if rule == NegAndR {
                        let s2 = seq(plus(&nr, &[&inner, a, b]), nl.clone());
                        vec![node(AndL, s1.clone(), inner.clone(), vec![swap_left(next(), &s2, &[a, b])])]
                    } else {
                        let s2a = seq(plus(&nr, &[&inner, a]), nl.clone());
                        let s2b = seq(plus(&nr, &[&inner, b]), nl.clone());
                        let (pa, pb) = (swap_left(next(), &s2a, &[a]), swap_left(next(), &s2b, &[b]));
                        vec![node(OrL, s1.clone(), inner.clone(), vec![pa, pb])]
                    };
                    node(NegNegL, target, nphi.clone(), prem)
                }
                (BoxL2, F::Box(a)) => {
                    let a: &Formula = a;
                    let s1 = seq(plus(&nr, &[a]), nl.clone());
                    node(NegBoxR1, target, nphi, vec![swap_left(next(), &s1, &[a])])
                }
                (NegBoxR1, F::Neg(x)) | (NegBoxR2, F::Neg(x)) => {
                    let F::Box(a) = &**x else { unreachable!() };
                    let a: &Formula = a;
                    let bx = (**x).clone();
                    let s1 = seq(plus(&nr, &[&bx]), nl.clone());
                    let inner = if rule == NegBoxR1 {
                        let s2 = seq(plus(&nr, &[&bx]), plus(&nl, &[&a.neg()]));
                        node(BoxL2, s1.clone(), bx.clone(), vec![weaken(next(), &s2)])
                    } else {
                        let s2 = seq(plus(&nr, &[&bx, a]), nl.clone());
                        node(BoxL1, s1.clone(), bx.clone(), vec![swap_left(next(), &s2, &[a])])
                    };
                    node(NegNegL, target, nphi.clone(), vec![inner])
                }
                (BoxR, F::Box(a)) => {
                    let a: &Formula = a;
                    let (c1, c2) = (next(), next());
                    let s1 = seq(nr.clone(), plus(&nl, &[a]));
                    let s2 = seq(plus(&nr, &[&a.neg()]), nl.clone());
                    node(NegBoxL, target, nphi, vec![swap_right(c2, &s1, &[a]), weaken(c1, &s2)])
                }
                (NegBoxL, F::Neg(x)) => {
                    let F::Box(a) = &**x else { unreachable!() };
                    let a: &Formula = a;
                    let bx = (**x).clone();
                    let (c1, c2) = (next(), next());
                    let s1 = seq(nr.clone(), plus(&nl, &[&bx]));
                    let s2a = seq(nr.clone(), plus(&nl, &[&bx, a]));
                    let s2b = seq(plus(&nr, &[&a.neg()]), plus(&nl, &[&bx]));
                    let boxr = node(BoxR, s1, bx.clone(), vec![swap_right(c2, &s2a, &[a]), weaken(c1, &s2b)]);
                    node(NegNegR, target, nphi.clone(), vec![boxr])
                }
                _ => unreachable!("checked proofs match their schemas"),
            }
        }
    }
}

/// From a proof of `⇒ ψ`, a proof of `⇒ □ψ`.
pub fn necessitate(p: &ScProof) -> Result<ScProof, TransformError> {
    let s = &p.sequent;
    let psi = match (s.left.len(), s.right.iter().collect::<Vec<_>>().as_slice()) {
        (0, [psi]) => (*psi).clone(),
        _ => return Err(TransformError::Shape(format!("expected `=> ψ`, got `{s}`"))),
    };
    let q = contrapose(p)?;
    let bx = psi.boxed();
    Ok(ScProof::node(ScRule::BoxR, Sequent::new([], [bx.clone()]), bx, vec![p.clone(), q]))
}

/// From a proof of `⇒ □ψ`, a proof of `⇒ ψ` read off the first premise of the final
/// `(⇒□)`. When that premise still carries `□ψ` on the right and the formula is inert in it,
/// it is dropped throughout; otherwise a cut against `□ψ ⇒ ψ` removes it.
pub fn denecessitate(p: &ScProof) -> Result<ScProof, TransformError> {
    check_sc_proof(p, true)?;
    let s = &p.sequent;
    let bx = match (s.left.len(), s.right.iter().collect::<Vec<_>>().as_slice()) {
        (0, [f @ Formula::Box(_)]) => (*f).clone(),
        _ => return Err(TransformError::Shape(format!("expected `=> □ψ`, got `{s}`"))),
    };
    let Formula::Box(psi) = &bx else { unreachable!() };
    let psi = (**psi).clone();
    let mut root = p;
    while matches!(root.rule, ScRule::WeakL | ScRule::WeakR) {
        root = &root.premises[0];
    }
    if root.rule != ScRule::BoxR || root.principal != [bx.clone()] {
        return Err(TransformError::Shape(format!("last inference is {}, not (⇒□) on `{bx}`", root.rule)));
    }
    let first = root.premises[0].clone();
    let target = Sequent::new([], [psi.clone()]);
    if first.sequent == target {
        return Ok(first);
    }
    if let Some(stripped) = strip_right(&first, &bx) {
        if stripped.sequent.left.is_empty() && check_sc_proof(&stripped, true).is_ok() {
            return Ok(weaken(stripped, &target));
        }
    }
    let lower = ScProof::node(
        ScRule::BoxL1,
        Sequent::new([bx.clone()], [psi.clone()]),
        bx.clone(),
        vec![ScProof::axiom(Sequent::new([bx.clone(), psi.clone()], [psi.clone()]))],
    );
    let upper = weaken(first, &Sequent::new([], [psi.clone(), bx.clone()]));
    Ok(cut(&bx, &target, upper, lower))
}

fn strip_right(p: &ScProof, f: &Formula) -> Option<ScProof> {
    if p.principal.first() == Some(f) && p.rule != ScRule::Axiom {
        return None;
    }
    let mut sequent = p.sequent.clone();
    sequent.right.remove(f);
    if p.rule == ScRule::Axiom {
        return sequent.is_axiom().then(|| ScProof::axiom(sequent));
    }
    let premises = p.premises.iter().map(|q| strip_right(q, f)).collect::<Option<Vec<_>>>()?;
    Some(ScProof { rule: p.rule, sequent, principal: p.principal.clone(), premises })
}

/// A cut-free proof of `¬α ∧ □α ⇒`, the sequent that lets `¬α ∧ □α` stand in for `⊥`.
pub fn bot_lemma(alpha: &Formula) -> ScProof {
    let f = Formula::and(&alpha.neg(), &alpha.boxed());
    prove(&Sequent::new([f], [])).expect("valid for every α")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{m4, matrix_consequence};

    fn sq(s: &str) -> Sequent {
        Sequent::parse(s).unwrap()
    }

    fn contra_ok(s: &str) -> ScProof {
        let p = prove(&sq(s)).unwrap();
        let q = contrapose(&p).unwrap();
        assert_eq!(check_sc_proof(&q, true), Ok(()), "{s}");
        assert_eq!(q.sequent, sq(s).contrapositive());
        q
    }

    #[test]
    fn contrapose_examples() {
        assert_eq!(contra_ok("p & q => p").sequent, sq("~p => ~(p & q)"));
        assert_eq!(contra_ok("p => p").rule, ScRule::Axiom);
        contra_ok("=> p | ~#p");
        for s in [
            "~(p | q) => ~p",
            "~~p => p",
            "p => ~~p",
            "~(p & q) => ~p, ~q",
            "~p, ~q => ~(p | q)",
            "#p => ~~p",
            "~#p, p => ~p",
            "p => ~#~p",
            "=> #(p | ~#p)",
            "~#p => ~#p | q",
            "#p, ~p =>",
            "~(p & #q) => ~p, ~#q",
        ] {
            let q = contra_ok(s);
            assert!(matrix_consequence(q.sequent.left.iter(), q.sequent.right.iter(), m4()));
        }
    }

    #[test]
    fn contrapose_rejects_cut() {
        let ax = ScProof::axiom(sq("p => p"));
        let c = cut(&crate::parse("p").unwrap(), &sq("p => p"), ax.clone(), ax);
        assert!(matches!(contrapose(&c), Err(TransformError::Cut(_))));
    }

    #[test]
    fn necessitate_round_trip() {
        let p = prove(&sq("=> p | ~#p")).unwrap();
        let n = necessitate(&p).unwrap();
        assert_eq!(n.sequent, sq("=> #(p | ~#p)"));
        assert_eq!(check_sc_proof(&n, true), Ok(()));
        assert_eq!(denecessitate(&prove(&sq("=> #(p | ~#p)")).unwrap()).unwrap().sequent, sq("=> p | ~#p"));
        assert!(matches!(necessitate(&prove(&sq("p => p")).unwrap()), Err(TransformError::Shape(_))));
        let q = crate::parse("~(~p & #p)").unwrap();
        let p = prove(&Sequent::new([], [q.clone()])).unwrap();
        let n = necessitate(&p).unwrap();
        assert_eq!(check_sc_proof(&n, true), Ok(()));
        let found = prove(&Sequent::new([], [q.boxed()])).unwrap();
        let back = denecessitate(&found).unwrap();
        assert_eq!(back.sequent, Sequent::new([], [q]));
        assert_eq!(check_sc_proof(&back, true), Ok(()));
    }

    #[test]
    fn bot_lemma_proves() {
        let p = bot_lemma(&crate::parse("p | q").unwrap());
        assert_eq!(check_sc_proof(&p, false), Ok(()));
    }
}
