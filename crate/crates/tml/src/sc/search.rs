use std::collections::{BTreeSet, HashMap};

use crate::bits::{BitSet, Bits};
use crate::sequent::Sequent;
use crate::syntax::{Formula, Style};

use super::proof::{ScProof, ScRule, Side};

/// Single-premise rules first, then branching ones.
const TIER1: [ScRule; 10] = [
    ScRule::NegNegL,
    ScRule::NegNegR,
    ScRule::AndL,
    ScRule::OrR,
    ScRule::NegOrL,
    ScRule::NegAndR,
    ScRule::NegBoxR1,
    ScRule::NegBoxR2,
    ScRule::BoxL1,
    ScRule::BoxL2,
];
const TIER2: [ScRule; 6] = [ScRule::OrL, ScRule::AndR, ScRule::NegOrR, ScRule::NegAndL, ScRule::BoxR, ScRule::NegBoxL];

/// Interned formulas: subformulas of the goal and their negations.
struct Space {
    forms: Vec<Formula>,
    /// Indices in (size, ascii rendering) order.
    ranked: Vec<usize>,
}

struct App<B> {
    rule: ScRule,
    principal: usize,
    adds: Vec<(B, B)>,
}

impl Space {
    fn new(goal: &Sequent) -> Space {
        let mut sub = BTreeSet::new();
        for f in goal.formulas() {
            f.collect_subformulas(&mut sub);
        }
        let negs: Vec<Formula> = sub.iter().map(Formula::neg).collect();
        sub.extend(negs);
        let forms: Vec<Formula> = sub.into_iter().collect();
        let mut ranked: Vec<usize> = (0..forms.len()).collect();
        let keys: Vec<(usize, String)> = forms.iter().map(|f| (f.size(), f.render(Style::Ascii))).collect();
        ranked.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        Space { forms, ranked }
    }

    fn index(&self, f: &Formula) -> usize {
        self.forms.binary_search(f).expect("closed under the rules")
    }

    fn encode<B: Bits>(&self, fs: &BTreeSet<Formula>) -> B {
        let mut b = B::with_len(self.forms.len());
        for f in fs {
            b.set(self.index(f));
        }
        b
    }

    fn decode<B: Bits>(&self, b: &B) -> BTreeSet<Formula> {
        (0..self.forms.len()).filter(|&i| b.has(i)).map(|i| self.forms[i].clone()).collect()
    }

    /// Applications per formula, per side, in tier order.
    fn apps<B: Bits>(&self) -> Vec<[Vec<App<B>>; 2]> {
        let n = self.forms.len();
        let set = |fs: &[Formula]| {
            let mut b = B::with_len(n);
            for f in fs {
                b.set(self.index(f));
            }
            b
        };
        (0..n)
            .map(|i| {
                let mut out: [Vec<App<B>>; 2] = [vec![], vec![]];
                for rule in TIER1.iter().chain(&TIER2) {
                    if let Some((side, adds)) = rule.decompose(&self.forms[i]) {
                        let adds = adds.iter().map(|(l, r)| (set(l), set(r))).collect();
                        out[side as usize].push(App { rule: *rule, principal: i, adds });
                    }
                }
                out
            })
            .collect()
    }
}

struct Node<B> {
    rule: ScRule,
    left: B,
    right: B,
    principal: usize,
    premises: Vec<usize>,
}

struct Search<B: Bits> {
    space: Space,
    apps: Vec<[Vec<App<B>>; 2]>,
    memo: HashMap<(B, B), Option<usize>>,
    nodes: Vec<Node<B>>,
}

impl<B: Bits> Search<B> {
    fn premises(&self, app: &App<B>, l: &B, r: &B) -> Option<Vec<(B, B)>> {
        let ps: Vec<(B, B)> = app.adds.iter().map(|(al, ar)| (l.union(al), r.union(ar))).collect();
        ps.iter().all(|(pl, pr)| pl != l || pr != r).then_some(ps)
    }

    fn candidates(&self, l: &B, r: &B, tier: &[ScRule]) -> Vec<(&App<B>, Vec<(B, B)>)> {
        let mut out = Vec::new();
        for &i in &self.space.ranked {
            for (side, set) in [(Side::Left, l), (Side::Right, r)] {
                if !set.has(i) {
                    continue;
                }
                for app in &self.apps[i][side as usize] {
                    if tier.contains(&app.rule) {
                        if let Some(ps) = self.premises(app, l, r) {
                            out.push((app, ps));
                        }
                    }
                }
            }
        }
        out
    }

    fn solve(&mut self, l: B, r: B) -> Option<usize> {
        let key = (l, r);
        if let Some(&hit) = self.memo.get(&key) {
            return hit;
        }
        let (l, r) = key;
        let result = self.expand(&l, &r);
        self.memo.insert((l, r), result);
        result
    }

    fn expand(&mut self, l: &B, r: &B) -> Option<usize> {
        if let Some(i) = l.first_common(r) {
            return Some(self.push(ScRule::Axiom, l.clone(), r.clone(), i, vec![]));
        }
        let chosen = [&TIER1[..], &TIER2[..]].into_iter().find_map(|tier| {
            let cands = self.candidates(l, r, tier);
            let closing = cands.iter().position(|(_, ps)| ps.iter().all(|(pl, pr)| pl.first_common(pr).is_some()));
            let pick = closing.or(if cands.is_empty() { None } else { Some(0) })?;
            let (app, ps) = &cands[pick];
            Some((app.rule, app.principal, ps.clone()))
        });
        let (rule, principal, ps) = chosen?;
        let mut kids = Vec::with_capacity(ps.len());
        for (pl, pr) in ps {
            kids.push(self.solve(pl, pr)?);
        }
        Some(self.push(rule, l.clone(), r.clone(), principal, kids))
    }

    fn push(&mut self, rule: ScRule, left: B, right: B, principal: usize, premises: Vec<usize>) -> usize {
        self.nodes.push(Node { rule, left, right, principal, premises });
        self.nodes.len() - 1
    }

    fn build(&self, id: usize) -> ScProof {
        let n = &self.nodes[id];
        ScProof {
            rule: n.rule,
            sequent: Sequent { left: self.space.decode(&n.left), right: self.space.decode(&n.right) },
            principal: vec![self.space.forms[n.principal].clone()],
            premises: n.premises.iter().map(|&k| self.build(k)).collect(),
        }
    }
}

fn run<B: Bits>(goal: &Sequent, want_proof: bool) -> (bool, Option<ScProof>) {
    let space = Space::new(goal);
    let apps = space.apps::<B>();
    let (l, r) = (space.encode::<B>(&goal.left), space.encode::<B>(&goal.right));
    let mut s = Search { space, apps, memo: HashMap::new(), nodes: Vec::new() };
    match s.solve(l, r) {
        Some(root) => (true, want_proof.then(|| s.build(root))),
        None => (false, None),
    }
}

fn dispatch(goal: &Sequent, want_proof: bool) -> (bool, Option<ScProof>) {
    let mut sub = BTreeSet::new();
    for f in goal.formulas() {
        f.collect_subformulas(&mut sub);
    }
    if 2 * sub.len() <= 128 {
        run::<u128>(goal, want_proof)
    } else {
        run::<BitSet>(goal, want_proof)
    }
}

/// Backward cut-free proof search. Every rule keeps its principal formula, so every rule is
/// invertible and the first applicable rule can be committed to; a rule applies only when
/// each premise is strictly larger than the conclusion. A leaf is any sequent whose sides meet.
///
/// `⊥` is treated as an atom: the calculus has no rule for it.
pub fn prove(goal: &Sequent) -> Option<ScProof> {
    dispatch(goal, true).1
}

/// As [`prove`], without building the proof.
pub fn provable(goal: &Sequent) -> bool {
    dispatch(goal, false).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sc::check_sc_proof;

    fn sq(s: &str) -> Sequent {
        Sequent::parse(s).unwrap()
    }

    #[test]
    fn examples() {
        for (s, want) in [
            ("=> p | ~#p", true),
            ("~#p => p", false),
            ("~p & #p =>", true),
            ("p & q => q & p", true),
            ("=> p | ~p", false),
            ("p | q => q | p", true),
        ] {
            let got = prove(&sq(s));
            assert_eq!(got.is_some(), want, "{s}");
            assert_eq!(provable(&sq(s)), want);
            if let Some(p) = got {
                assert_eq!(p.sequent, sq(s));
                assert_eq!(check_sc_proof(&p, false), Ok(()));
            }
        }
    }

    #[test]
    fn golden_modal_axiom() {
        let p = prove(&sq("=> p | ~#p")).unwrap();
        use ScRule::*;
        assert_eq!(p.rule_sequence(), vec![OrR, NegBoxR1, Axiom]);
    }

    #[test]
    fn golden_boxed_modal_axiom() {
        let p = prove(&sq("=> #(p | ~#p)")).unwrap();
        use ScRule::*;
        assert_eq!(p.rule_sequence(), vec![BoxR, OrR, NegBoxR1, Axiom, NegOrL, NegNegL, BoxL2, Axiom]);
        assert_eq!(p.premises[1].sequent, sq("~(p | ~#p) => #(p | ~#p)"));
    }

    #[test]
    fn wide_goals_use_the_general_key() {
        let big: Vec<String> = (0..70).map(|i| format!("x{i}")).collect();
        let s = sq(&format!("{} => x3 | y", big.join(", ")));
        let p = prove(&s).unwrap();
        assert_eq!(check_sc_proof(&p, false), Ok(()));
        assert!(!provable(&sq(&format!("{} => y", big.join(", ")))));
    }
}
