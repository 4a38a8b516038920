//! Finite algebras in the signature `(∧, ∨, ¬, □, 0)` and a brute-force law checker.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::matrix::{Connective, LogicalMatrix, TruthValue};
use crate::syntax::Formula;

/// A finite algebra with elements `0..len`. Operation tables are indexed by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    pub names: Vec<String>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    pub nec: Vec<usize>,
    pub zero: usize,
}

impl Algebra {
    /// The algebra reduct of a matrix with `and`, `or`, `neg`, `box` and `bot` tables.
    pub fn from_matrix(m: &LogicalMatrix) -> Option<Algebra> {
        let n = m.len();
        let v = |i: usize| TruthValue(i as u8);
        let bin = |c: Connective| -> Option<Vec<Vec<usize>>> {
            m.table(c)?;
            Some((0..n).map(|a| (0..n).map(|b| m.apply(c, &[v(a), v(b)]).unwrap().index()).collect()).collect())
        };
        let un = |c: Connective| -> Option<Vec<usize>> {
            m.table(c)?;
            Some((0..n).map(|a| m.apply(c, &[v(a)]).unwrap().index()).collect())
        };
        Some(Algebra {
            names: m.values().map(|x| m.name(x).to_string()).collect(),
            meet: bin(Connective::And)?,
            join: bin(Connective::Or)?,
            neg: un(Connective::Neg)?,
            nec: un(Connective::Box)?,
            zero: m.apply(Connective::Bot, &[]).ok()?.index(),
        })
    }

    pub fn m4() -> Algebra {
        Algebra::from_matrix(crate::matrix::m4()).expect("M4 has all operations")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn one(&self) -> usize {
        self.neg[self.zero]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet[a][b] == a
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// The value of `f` under the homomorphism extending `env`, if every variable is assigned.
pub fn eval_in(f: &Formula, a: &Algebra, env: &BTreeMap<Arc<str>, usize>) -> Option<usize> {
    Some(match f {
        Formula::Var(x) => *env.get(x)?,
        Formula::Bot => a.zero,
        Formula::Neg(x) => a.neg[eval_in(x, a, env)?],
        Formula::Box(x) => a.nec[eval_in(x, a, env)?],
        Formula::And(x, y) => a.meet[eval_in(x, a, env)?][eval_in(y, a, env)?],
        Formula::Or(x, y) => a.join[eval_in(x, a, env)?][eval_in(y, a, env)?],
    })
}

/// `⋀ h(Γ) ≤ ⋁ h(Δ)`, with the empty meet `1` and the empty join `0`.
pub fn sequent_holds_in<'a>(
    gamma: impl IntoIterator<Item = &'a Formula>,
    delta: impl IntoIterator<Item = &'a Formula>,
    a: &Algebra,
    env: &BTreeMap<Arc<str>, usize>,
) -> Option<bool> {
    let mut lo = a.one();
    for g in gamma {
        lo = a.meet[lo][eval_in(g, a, env)?];
    }
    let mut hi = a.zero;
    for d in delta {
        hi = a.join[hi][eval_in(d, a, env)?];
    }
    Some(a.leq(lo, hi))
}

/// Every assignment of elements of `a` to `vars`, the first variable varying slowest.
pub fn assignments(vars: &[Arc<str>], a: &Algebra) -> Vec<BTreeMap<Arc<str>, usize>> {
    let mut out = vec![BTreeMap::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|env| {
                (0..a.len()).map(move |e| {
                    let mut env = env.clone();
                    env.insert(Arc::clone(v), e);
                    env
                })
            })
            .collect();
    }
    out
}

/// Componentwise product. Elements are pairs `(a, b)` encoded as `a * |B| + b`.
pub fn product_algebra(a: &Algebra, b: &Algebra) -> Algebra {
    let (na, nb) = (a.len(), b.len());
    let enc = |x: usize, y: usize| x * nb + y;
    let n = na * nb;
    let dec = |e: usize| (e / nb, e % nb);
    let bin = |fa: &Vec<Vec<usize>>, fb: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        (0..n)
            .map(|e| {
                (0..n)
                    .map(|f| {
                        let ((x1, y1), (x2, y2)) = (dec(e), dec(f));
                        enc(fa[x1][x2], fb[y1][y2])
                    })
                    .collect()
            })
            .collect()
    };
    let un = |fa: &Vec<usize>, fb: &Vec<usize>| -> Vec<usize> {
        (0..n).map(|e| { let (x, y) = dec(e); enc(fa[x], fb[y]) }).collect()
    };
    Algebra {
        names: (0..n).map(|e| { let (x, y) = dec(e); format!("({},{})", a.names[x], b.names[y]) }).collect(),
        meet: bin(&a.meet, &b.meet),
        join: bin(&a.join, &b.join),
        neg: un(&a.neg, &b.neg),
        nec: un(&a.nec, &b.nec),
        zero: enc(a.zero, b.zero),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub name: &'static str,
    pub passed: bool,
    /// The first failing tuple of element names, in enumeration order.
    pub counterexample: Option<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn all_pass(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn get(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawResult> {
        self.laws.iter().filter(|l| !l.passed)
    }
}

type Law = (&'static str, usize, fn(&Algebra, &[usize]) -> bool);

fn laws() -> Vec<Law> {
    fn m(a: &Algebra, x: usize, y: usize) -> usize {
        a.meet[x][y]
    }
    fn j(a: &Algebra, x: usize, y: usize) -> usize {
        a.join[x][y]
    }
    vec![
        // bounded distributive lattice
        ("meet idempotent", 1, |a, t| m(a, t[0], t[0]) == t[0]),
        ("join idempotent", 1, |a, t| j(a, t[0], t[0]) == t[0]),
        ("meet commutative", 2, |a, t| m(a, t[0], t[1]) == m(a, t[1], t[0])),
        ("join commutative", 2, |a, t| j(a, t[0], t[1]) == j(a, t[1], t[0])),
        ("meet associative", 3, |a, t| m(a, m(a, t[0], t[1]), t[2]) == m(a, t[0], m(a, t[1], t[2]))),
        ("join associative", 3, |a, t| j(a, j(a, t[0], t[1]), t[2]) == j(a, t[0], j(a, t[1], t[2]))),
        ("absorption meet", 2, |a, t| m(a, t[0], j(a, t[0], t[1])) == t[0]),
        ("absorption join", 2, |a, t| j(a, t[0], m(a, t[0], t[1])) == t[0]),
        ("meet distributes", 3, |a, t| m(a, t[0], j(a, t[1], t[2])) == j(a, m(a, t[0], t[1]), m(a, t[0], t[2]))),
        ("join distributes", 3, |a, t| j(a, t[0], m(a, t[1], t[2])) == m(a, j(a, t[0], t[1]), j(a, t[0], t[2]))),
        ("zero is bottom", 1, |a, t| m(a, t[0], a.zero) == a.zero && j(a, t[0], a.zero) == t[0]),
        ("one is top", 1, |a, t| m(a, t[0], a.one()) == t[0] && j(a, t[0], a.one()) == a.one()),
        // De Morgan
        ("double negation", 1, |a, t| a.neg[a.neg[t[0]]] == t[0]),
        ("de morgan join", 2, |a, t| a.neg[j(a, t[0], t[1])] == m(a, a.neg[t[0]], a.neg[t[1]])),
        ("de morgan meet", 2, |a, t| a.neg[m(a, t[0], t[1])] == j(a, a.neg[t[0]], a.neg[t[1]])),
        // TMA axioms
        ("box a and not a is zero", 1, |a, t| m(a, a.nec[t[0]], a.neg[t[0]]) == a.zero),
        ("not box a and a", 1, |a, t| m(a, a.neg[a.nec[t[0]]], t[0]) == m(a, a.neg[t[0]], t[0])),
        // Consequences valid in every TMA
        ("lemma i", 1, |a, t| j(a, a.neg[a.nec[t[0]]], t[0]) == a.one()),
        ("lemma ii", 1, |a, t| j(a, a.nec[t[0]], a.neg[t[0]]) == j(a, t[0], a.neg[t[0]])),
        ("lemma iii", 1, |a, t| j(a, a.nec[t[0]], a.neg[a.nec[t[0]]]) == a.one()),
        ("lemma iv", 1, |a, t| m(a, a.nec[t[0]], a.neg[a.nec[t[0]]]) == a.zero),
        ("lemma v", 1, |a, t| a.leq(a.nec[t[0]], t[0])),
        ("lemma vi", 0, |a, _| a.nec[a.one()] == a.one()),
        ("lemma vii", 0, |a, _| a.nec[a.zero] == a.zero),
        ("lemma viii", 1, |a, t| a.nec[a.nec[t[0]]] == a.nec[t[0]]),
        ("lemma ix", 2, |a, t| a.nec[m(a, t[0], t[1])] == m(a, a.nec[t[0]], a.nec[t[1]])),
        ("lemma x", 2, |a, t| a.nec[j(a, t[0], a.nec[t[1]])] == j(a, a.nec[t[0]], a.nec[t[1]])),
        ("lemma xi", 1, |a, t| a.nec[a.neg[a.nec[t[0]]]] == a.neg[a.nec[t[0]]]),
        ("lemma xii", 1, |a, t| m(a, t[0], a.nec[a.neg[t[0]]]) == a.zero),
        ("lemma xiii", 2, |a, t| {
            let v = m(a, a.nec[t[0]], a.nec[t[1]]);
            a.nec[v] == v
        }),
        ("lemma xiv", 2, |a, t| {
            let v = j(a, a.nec[t[0]], a.nec[t[1]]);
            a.nec[v] == v
        }),
        // x ≤ y∨z and x∧¬z ≤ y imply x ≤ y∨□z
        ("box introduction", 3, |a, t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            !(a.leq(x, j(a, y, z)) && a.leq(m(a, x, a.neg[z]), y)) || a.leq(x, j(a, y, a.nec[z]))
        }),
    ]
}

/// Names of all laws checked by [`check_tma_laws`], in report order.
pub fn law_names() -> Vec<&'static str> {
    laws().into_iter().map(|l| l.0).collect()
}

/// Check every law over all element tuples of the right arity.
pub fn check_tma_laws(a: &Algebra) -> LawReport {
    let n = a.len();
    let mut report = LawReport::default();
    for (name, arity, law) in laws() {
        let mut t = vec![0usize; arity];
        let mut counterexample = None;
        'outer: loop {
            if !law(a, &t) {
                counterexample = Some(t.iter().map(|&e| a.names[e].clone()).collect());
                break;
            }
            let mut i = arity;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                t[i] += 1;
                if t[i] < n {
                    break;
                }
                t[i] = 0;
            }
        }
        report.laws.push(LawResult { name, passed: counterexample.is_none(), counterexample });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m4_is_a_tma() {
        let r = check_tma_laws(&Algebra::m4());
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.laws.len(), 32);
    }

    #[test]
    fn identity_box_breaks_first_axiom_at_n() {
        let mut a = Algebra::m4();
        a.nec = vec![0, 1, 2, 3];
        let r = check_tma_laws(&a);
        let law = r.get("box a and not a is zero").unwrap();
        assert!(!law.passed);
        assert_eq!(law.counterexample.as_deref(), Some(&["n".to_string()][..]));
    }

    #[test]
    fn evaluation_in_algebras() {
        let m = Algebra::m4();
        let f = crate::parse("p | ~#p").unwrap();
        let vars: Vec<Arc<str>> = f.vars().into_iter().collect();
        let envs = assignments(&vars, &m);
        assert_eq!(envs.len(), 4);
        assert!(envs.iter().all(|e| eval_in(&f, &m, e) == Some(m.one())));
        let p = product_algebra(&m, &m);
        assert_eq!(assignments(&vars, &p).len(), 16);
        let g = crate::parse("p").unwrap();
        assert_eq!(sequent_holds_in([&g], [&g], &p, &assignments(&vars, &p)[7]), Some(true));
        assert_eq!(eval_in(&g, &m, &BTreeMap::new()), None);
    }

    #[test]
    fn product_examples() {
        let m = Algebra::m4();
        let p = product_algebra(&m, &m);
        assert_eq!(p.len(), 16);
        let e = |s: &str| p.element(s).unwrap();
        assert_eq!(p.neg[e("(1,0)")], e("(0,1)"));
        assert_eq!(p.nec[e("(1,b)")], e("(1,0)"));
        assert!(check_tma_laws(&p).all_pass());
    }
}
