//! Finite logical matrices, valuations and the two consequence relations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::Formula;

/// Index of a carrier element in its matrix's `values` list.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TruthValue(pub u8);

impl TruthValue {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Names of the M₄ carrier in index order.
pub mod m4v {
    use super::TruthValue;
    pub const ZERO: TruthValue = TruthValue(0);
    pub const N: TruthValue = TruthValue(1);
    pub const B: TruthValue = TruthValue(2);
    pub const ONE: TruthValue = TruthValue(3);
    pub const ALL: [TruthValue; 4] = [ZERO, N, B, ONE];
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Connective {
    Or,
    And,
    Neg,
    Box,
    Bot,
}

impl Connective {
    pub const ALL: [Connective; 5] =
        [Connective::Or, Connective::And, Connective::Neg, Connective::Box, Connective::Bot];

    pub fn name(self) -> &'static str {
        match self {
            Connective::Or => "or",
            Connective::And => "and",
            Connective::Neg => "neg",
            Connective::Box => "box",
            Connective::Bot => "bot",
        }
    }

    pub fn from_name(s: &str) -> Option<Connective> {
        Connective::ALL.into_iter().find(|c| c.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            Connective::Or | Connective::And => 2,
            Connective::Neg | Connective::Box => 1,
            Connective::Bot => 0,
        }
    }

    /// `f(args)` as a formula.
    pub fn apply(self, args: &[Formula]) -> Formula {
        match self {
            Connective::Or => Formula::or(&args[0], &args[1]),
            Connective::And => Formula::and(&args[0], &args[1]),
            Connective::Neg => args[0].neg(),
            Connective::Box => args[0].boxed(),
            Connective::Bot => Formula::Bot,
        }
    }

    /// Split a formula into its main connective and immediate subformulas.
    pub fn split(f: &Formula) -> Option<(Connective, Vec<Formula>)> {
        match f {
            Formula::Var(_) => None,
            Formula::Bot => Some((Connective::Bot, vec![])),
            Formula::Neg(a) => Some((Connective::Neg, vec![(**a).clone()])),
            Formula::Box(a) => Some((Connective::Box, vec![(**a).clone()])),
            Formula::And(a, b) => Some((Connective::And, vec![(**a).clone(), (**b).clone()])),
            Formula::Or(a, b) => Some((Connective::Or, vec![(**a).clone(), (**b).clone()])),
        }
    }
}

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("valuation does not assign variable `{0}`")]
    MissingVariable(String),
    #[error("matrix has no table for connective `{0}`")]
    UnknownConnective(String),
    #[error("invalid matrix: {0}")]
    Invalid(String),
    #[error("matrix has no order, or its order is not a bounded lattice")]
    NoLattice,
    #[error("bad valuation text: {0}")]
    BadValuation(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// A total operation table, stored row-major over `values^arity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub arity: usize,
    pub out: Vec<TruthValue>,
}

impl Table {
    pub fn get(&self, args: &[TruthValue], n: usize) -> TruthValue {
        let mut idx = 0;
        for a in args {
            idx = idx * n + a.index();
        }
        self.out[idx]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalMatrix {
    values: Vec<String>,
    designated: Vec<bool>,
    order_pairs: Option<Vec<(usize, usize)>>,
    leq: Option<Vec<Vec<bool>>>,
    meet: Option<Vec<Vec<TruthValue>>>,
    top: Option<TruthValue>,
    ops: BTreeMap<Connective, Table>,
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    values: Vec<String>,
    designated: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<(String, String)>>,
    connectives: BTreeMap<String, TableFile>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    arity: usize,
    table: BTreeMap<String, String>,
}

fn tuples(n: usize, arity: usize) -> Vec<Vec<TruthValue>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        let mut next = Vec::with_capacity(out.len() * n);
        for t in &out {
            for v in 0..n {
                let mut t2 = t.clone();
                t2.push(TruthValue(v as u8));
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

impl LogicalMatrix {
    /// Build a matrix from value names, designated names, optional order pairs (covering or
    /// otherwise; the reflexive-transitive closure is taken) and operation tables.
    pub fn new(
        values: Vec<String>,
        designated: &[&str],
        order_pairs: Option<Vec<(usize, usize)>>,
        ops: BTreeMap<Connective, Table>,
    ) -> Result<LogicalMatrix, MatrixError> {
        let n = values.len();
        if n == 0 || n > 255 {
            return Err(MatrixError::Invalid("carrier must have 1..=255 elements".into()));
        }
        let uniq: BTreeSet<&String> = values.iter().collect();
        if uniq.len() != n {
            return Err(MatrixError::Invalid("duplicate value names".into()));
        }
        let mut des = vec![false; n];
        for d in designated {
            let i = values
                .iter()
                .position(|v| v == d)
                .ok_or_else(|| MatrixError::Invalid(format!("designated value `{d}` not in carrier")))?;
            des[i] = true;
        }
        let count = des.iter().filter(|d| **d).count();
        if count == 0 || count == n {
            return Err(MatrixError::Invalid("designated set must be a non-empty proper subset".into()));
        }
        for (c, t) in &ops {
            if t.arity != c.arity() {
                return Err(MatrixError::Invalid(format!("connective `{}` must have arity {}", c.name(), c.arity())));
            }
            if t.out.len() != n.pow(t.arity as u32) || t.out.iter().any(|v| v.index() >= n) {
                return Err(MatrixError::Invalid(format!("table for `{}` is not total", c.name())));
            }
        }
        let mut m = LogicalMatrix {
            values,
            designated: des,
            order_pairs: None,
            leq: None,
            meet: None,
            top: None,
            ops,
        };
        if let Some(pairs) = order_pairs {
            m.set_order(pairs)?;
        }
        Ok(m)
    }

    fn set_order(&mut self, pairs: Vec<(usize, usize)>) -> Result<(), MatrixError> {
        let n = self.values.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &pairs {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(MatrixError::Invalid("order is not antisymmetric".into()));
                }
            }
        }
        // Greatest lower bounds and a top, when they exist.
        let mut meet = vec![vec![TruthValue(0); n]; n];
        let mut lattice = true;
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| leq[c][a] && leq[c][b]).collect();
                match lower.iter().find(|&&c| lower.iter().all(|&d| leq[d][c])) {
                    Some(&g) => meet[a][b] = TruthValue(g as u8),
                    None => lattice = false,
                }
            }
        }
        let top = (0..n).find(|&t| (0..n).all(|a| leq[a][t]));
        self.order_pairs = Some(pairs);
        self.leq = Some(leq);
        if lattice && top.is_some() {
            self.meet = Some(meet);
            self.top = top.map(|t| TruthValue(t as u8));
        }
        Ok(())
    }

    pub fn from_json(src: &str) -> Result<LogicalMatrix, MatrixError> {
        let file: MatrixFile = serde_json::from_str(src)?;
        let n = file.values.len();
        let idx = |s: &str| -> Result<usize, MatrixError> {
            file.values
                .iter()
                .position(|v| v == s)
                .ok_or_else(|| MatrixError::Invalid(format!("unknown value `{s}`")))
        };
        let mut ops = BTreeMap::new();
        for (name, tf) in &file.connectives {
            let c = Connective::from_name(name).ok_or_else(|| MatrixError::UnknownConnective(name.clone()))?;
            let mut out = Vec::new();
            for t in tuples(n, tf.arity) {
                let key = t.iter().map(|v| file.values[v.index()].as_str()).collect::<Vec<_>>().join(",");
                let res = tf
                    .table
                    .get(&key)
                    .ok_or_else(|| MatrixError::Invalid(format!("table for `{name}` lacks entry `{key}`")))?;
                out.push(TruthValue(idx(res)? as u8));
            }
            ops.insert(c, Table { arity: tf.arity, out });
        }
        let order = match &file.order {
            None => None,
            Some(pairs) => {
                let mut v = Vec::new();
                for (a, b) in pairs {
                    v.push((idx(a)?, idx(b)?));
                }
                Some(v)
            }
        };
        let des: Vec<&str> = file.designated.iter().map(String::as_str).collect();
        LogicalMatrix::new(file.values.clone(), &des, order, ops)
    }

    /// Pretty JSON, newline-terminated. The bundled M₄ file is exactly this output.
    pub fn to_json(&self) -> String {
        let n = self.values.len();
        let mut connectives = BTreeMap::new();
        for (c, t) in &self.ops {
            let mut table = BTreeMap::new();
            for args in tuples(n, t.arity) {
                let key = args.iter().map(|v| self.name(*v)).collect::<Vec<_>>().join(",");
                table.insert(key, self.name(t.get(&args, n)).to_string());
            }
            connectives.insert(c.name().to_string(), TableFile { arity: t.arity, table });
        }
        let file = MatrixFile {
            values: self.values.clone(),
            designated: self.designated_values().map(|v| self.name(v).to_string()).collect(),
            order: self.order_pairs.as_ref().map(|ps| {
                ps.iter().map(|&(a, b)| (self.values[a].clone(), self.values[b].clone())).collect()
            }),
            connectives,
        };
        let mut s = serde_json::to_string_pretty(&file).expect("matrix serializes");
        s.push('\n');
        s
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = TruthValue> + '_ {
        (0..self.values.len()).map(|i| TruthValue(i as u8))
    }

    pub fn designated_values(&self) -> impl Iterator<Item = TruthValue> + '_ {
        self.values().filter(|v| self.is_designated(*v))
    }

    pub fn name(&self, v: TruthValue) -> &str {
        &self.values[v.index()]
    }

    pub fn value_named(&self, name: &str) -> Option<TruthValue> {
        self.values.iter().position(|v| v == name).map(|i| TruthValue(i as u8))
    }

    pub fn is_designated(&self, v: TruthValue) -> bool {
        self.designated[v.index()]
    }

    pub fn table(&self, c: Connective) -> Option<&Table> {
        self.ops.get(&c)
    }

    pub fn connectives(&self) -> impl Iterator<Item = Connective> + '_ {
        self.ops.keys().copied()
    }

    pub fn apply(&self, c: Connective, args: &[TruthValue]) -> Result<TruthValue, MatrixError> {
        let t = self.ops.get(&c).ok_or_else(|| MatrixError::UnknownConnective(c.name().into()))?;
        Ok(t.get(args, self.len()))
    }

    pub fn leq(&self, a: TruthValue, b: TruthValue) -> Option<bool> {
        self.leq.as_ref().map(|l| l[a.index()][b.index()])
    }

    /// Greatest lower bound in the matrix order, if the order is a lattice.
    pub fn meet(&self, a: TruthValue, b: TruthValue) -> Option<TruthValue> {
        self.meet.as_ref().map(|m| m[a.index()][b.index()])
    }

    pub fn top(&self) -> Option<TruthValue> {
        self.top
    }

    /// Replace one connective's table; used to build mutated matrices in tests.
    pub fn with_table(&self, c: Connective, out: Vec<TruthValue>) -> LogicalMatrix {
        let mut m = self.clone();
        m.ops.insert(c, Table { arity: c.arity(), out });
        m
    }
}

const M4_JSON: &str = include_str!("../data/m4.json");

/// The canonical four-element matrix, loaded from the bundled file.
pub fn m4() -> &'static LogicalMatrix {
    static M4: OnceLock<LogicalMatrix> = OnceLock::new();
    M4.get_or_init(|| LogicalMatrix::from_json(M4_JSON).expect("bundled M4 matrix is valid"))
}

/// The bundled M₄ file contents.
pub fn m4_json() -> &'static str {
    M4_JSON
}

/// The two-element Boolean matrix over `{∨, ∧, ¬}`.
pub fn boolean() -> LogicalMatrix {
    let t = |v: &[u8]| v.iter().map(|&x| TruthValue(x)).collect::<Vec<_>>();
    let mut ops = BTreeMap::new();
    ops.insert(Connective::Or, Table { arity: 2, out: t(&[0, 1, 1, 1]) });
    ops.insert(Connective::And, Table { arity: 2, out: t(&[0, 0, 0, 1]) });
    ops.insert(Connective::Neg, Table { arity: 1, out: t(&[1, 0]) });
    LogicalMatrix::new(vec!["0".into(), "1".into()], &["1"], Some(vec![(0, 1)]), ops).expect("boolean matrix")
}

// ---------------------------------------------------------------------------
// Valuations

#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Valuation(pub BTreeMap<Arc<str>, TruthValue>);

impl Valuation {
    pub fn get(&self, var: &str) -> Option<TruthValue> {
        self.0.get(var).copied()
    }

    pub fn set(&mut self, var: &str, v: TruthValue) {
        self.0.insert(Arc::from(var), v);
    }

    /// Parse `p=n,q=b`.
    pub fn parse(src: &str, m: &LogicalMatrix) -> Result<Valuation, MatrixError> {
        let mut out = Valuation::default();
        for part in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (var, val) = part
                .split_once('=')
                .ok_or_else(|| MatrixError::BadValuation(format!("`{part}` is not of the form var=value")))?;
            let (var, val) = (var.trim(), val.trim());
            if var.is_empty() || !var.starts_with(|c: char| c.is_ascii_lowercase()) {
                return Err(MatrixError::BadValuation(format!("bad variable name `{var}`")));
            }
            let v = m.value_named(val).ok_or_else(|| MatrixError::BadValuation(format!("unknown value `{val}`")))?;
            out.set(var, v);
        }
        Ok(out)
    }

    pub fn render(&self, m: &LogicalMatrix) -> String {
        self.0.iter().map(|(k, v)| format!("{}={}", k, m.name(*v))).collect::<Vec<_>>().join(",")
    }
}

/// Homomorphic extension of `v` to `f`.
pub fn eval(f: &Formula, v: &Valuation, m: &LogicalMatrix) -> Result<TruthValue, MatrixError> {
    match f {
        Formula::Var(x) => v.get(x).ok_or_else(|| MatrixError::MissingVariable(x.to_string())),
        _ => {
            let (c, args) = Connective::split(f).expect("compound formula");
            let vals = args.iter().map(|a| eval(a, v, m)).collect::<Result<Vec<_>, _>>()?;
            m.apply(c, &vals)
        }
    }
}

/// All valuations of `vars`, first variable (in name order) varying slowest.
pub fn valuations(vars: &BTreeSet<Arc<str>>, m: &LogicalMatrix) -> Vec<Valuation> {
    let names: Vec<&Arc<str>> = vars.iter().collect();
    tuples(m.len(), names.len())
        .into_iter()
        .map(|t| Valuation(names.iter().map(|n| Arc::clone(n)).zip(t).collect()))
        .collect()
}

// Formulas compiled to postfix code over variable slots, for the enumeration loops.
enum Op {
    Var(usize),
    Const(TruthValue),
    Un(Connective),
    Bin(Connective),
}

pub(crate) struct Compiled {
    code: Vec<Op>,
}

impl Compiled {
    fn new(f: &Formula, slots: &BTreeMap<Arc<str>, usize>, m: &LogicalMatrix) -> Compiled {
        fn go(f: &Formula, slots: &BTreeMap<Arc<str>, usize>, m: &LogicalMatrix, code: &mut Vec<Op>) {
            match f {
                Formula::Var(x) => code.push(Op::Var(slots[x])),
                Formula::Bot => code.push(Op::Const(
                    m.apply(Connective::Bot, &[]).unwrap_or_else(|_| panic!("matrix has no table for `bot`")),
                )),
                Formula::Neg(a) | Formula::Box(a) => {
                    go(a, slots, m, code);
                    code.push(Op::Un(if f.is_neg() { Connective::Neg } else { Connective::Box }));
                }
                Formula::And(a, b) | Formula::Or(a, b) => {
                    go(a, slots, m, code);
                    go(b, slots, m, code);
                    code.push(Op::Bin(if matches!(f, Formula::And(..)) { Connective::And } else { Connective::Or }));
                }
            }
        }
        let mut code = Vec::new();
        go(f, slots, m, &mut code);
        for op in &code {
            if let Op::Un(c) | Op::Bin(c) = op {
                assert!(m.table(*c).is_some(), "matrix has no table for `{}`", c.name());
            }
        }
        Compiled { code }
    }

    fn run(&self, env: &[TruthValue], m: &LogicalMatrix, stack: &mut Vec<TruthValue>) -> TruthValue {
        stack.clear();
        let n = m.len();
        for op in &self.code {
            match op {
                Op::Var(i) => stack.push(env[*i]),
                Op::Const(v) => stack.push(*v),
                Op::Un(c) => {
                    let a = stack.pop().unwrap();
                    stack.push(m.ops[c].out[a.index()]);
                }
                Op::Bin(c) => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    stack.push(m.ops[c].out[a.index() * n + b.index()]);
                }
            }
        }
        stack[0]
    }
}

/// A batch of formulas evaluated together over every valuation of their variables.
pub(crate) struct Enumerator<'m> {
    m: &'m LogicalMatrix,
    names: Vec<Arc<str>>,
    progs: Vec<Compiled>,
}

impl<'m> Enumerator<'m> {
    pub(crate) fn new<'a, I: IntoIterator<Item = &'a Formula>>(fs: I, m: &'m LogicalMatrix) -> Enumerator<'m> {
        let fs: Vec<&Formula> = fs.into_iter().collect();
        let mut vars = BTreeSet::new();
        for f in &fs {
            f.collect_vars(&mut vars);
        }
        let slots: BTreeMap<Arc<str>, usize> = vars.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let progs = fs.iter().map(|f| Compiled::new(f, &slots, m)).collect();
        Enumerator { m, names: vars.into_iter().collect(), progs }
    }

    /// Visit each valuation in order with the values of all formulas; stop when `visit` returns false.
    pub(crate) fn for_each(&self, mut visit: impl FnMut(&[TruthValue], &[TruthValue]) -> bool) {
        let k = self.names.len();
        let n = self.m.len();
        let mut env = vec![TruthValue(0); k];
        let mut vals = vec![TruthValue(0); self.progs.len()];
        let mut stack = Vec::new();
        loop {
            for (slot, p) in vals.iter_mut().zip(&self.progs) {
                *slot = p.run(&env, self.m, &mut stack);
            }
            if !visit(&env, &vals) {
                return;
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if env[i].index() + 1 < n {
                    env[i] = TruthValue(env[i].0 + 1);
                    break;
                }
                env[i] = TruthValue(0);
            }
        }
    }

    pub(crate) fn valuation(&self, env: &[TruthValue]) -> Valuation {
        Valuation(self.names.iter().cloned().zip(env.iter().copied()).collect())
    }
}

/// `Γ ⊨ Δ` in the matrix: every valuation either fails some premise or designates some conclusion.
///
/// Panics if `m` lacks a table for a connective occurring in the formulas.
pub fn matrix_consequence<'a, G, D>(gamma: G, delta: D, m: &LogicalMatrix) -> bool
where
    G: IntoIterator<Item = &'a Formula>,
    D: IntoIterator<Item = &'a Formula>,
{
    countermodel(gamma, delta, m).is_none()
}

/// The first valuation (in [`valuations`] order) designating all of Γ and none of Δ.
pub fn countermodel<'a, G, D>(gamma: G, delta: D, m: &LogicalMatrix) -> Option<Valuation>
where
    G: IntoIterator<Item = &'a Formula>,
    D: IntoIterator<Item = &'a Formula>,
{
    let g: Vec<&Formula> = gamma.into_iter().collect();
    let d: Vec<&Formula> = delta.into_iter().collect();
    let en = Enumerator::new(g.iter().copied().chain(d.iter().copied()), m);
    let k = g.len();
    let mut found = None;
    en.for_each(|env, vals| {
        let refutes = vals[..k].iter().all(|v| m.is_designated(*v)) && !vals[k..].iter().any(|v| m.is_designated(*v));
        if refutes {
            found = Some(en.valuation(env));
        }
        !refutes
    });
    found
}

/// Degree-preserving consequence over `m`'s order: `inf v(Γ) ≤ v(φ)` for every valuation.
pub fn degree_consequence_in<'a, G>(gamma: G, phi: &Formula, m: &LogicalMatrix) -> Result<bool, MatrixError>
where
    G: IntoIterator<Item = &'a Formula>,
{
    let top = m.top().ok_or(MatrixError::NoLattice)?;
    let g: Vec<&Formula> = gamma.into_iter().collect();
    let en = Enumerator::new(g.iter().copied().chain(std::iter::once(phi)), m);
    let k = g.len();
    let mut ok = true;
    en.for_each(|_, vals| {
        let inf = vals[..k].iter().fold(top, |acc, v| m.meet(acc, *v).expect("lattice"));
        ok = m.leq(inf, vals[k]).expect("ordered");
        ok
    });
    Ok(ok)
}

/// Degree-preserving consequence over M₄.
pub fn degree_consequence<'a, G>(gamma: G, phi: &Formula) -> bool
where
    G: IntoIterator<Item = &'a Formula>,
{
    degree_consequence_in(gamma, phi, m4()).expect("M4 is a lattice")
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", m4().values.get(self.index()).map(String::as_str).unwrap_or("?"))
    }
}

#[cfg(test)]
mod tests {
    use super::m4v::*;
    use super::*;
    use crate::syntax::parse;

    fn val(s: &str) -> Valuation {
        Valuation::parse(s, m4()).unwrap()
    }

    fn ev(f: &str, v: &str) -> TruthValue {
        eval(&parse(f).unwrap(), &val(v), m4()).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(ev("#p", "p=n"), ZERO);
        assert_eq!(ev("~p", "p=b"), B);
        assert_eq!(ev("p | q", "p=n,q=b"), ONE);
        assert_eq!(ev("p | ~#p", "p=b"), ONE);
        assert_eq!(ev("bot", ""), ZERO);
    }

    #[test]
    fn eval_errors() {
        let e = eval(&parse("p & q").unwrap(), &val("p=1"), m4()).unwrap_err();
        assert!(matches!(e, MatrixError::MissingVariable(ref v) if v == "q"));
        let e = eval(&parse("#p").unwrap(), &Valuation::parse("p=1", &boolean()).unwrap(), &boolean()).unwrap_err();
        assert!(matches!(e, MatrixError::UnknownConnective(ref c) if c == "box"));
    }

    #[test]
    fn valuation_counts_and_order() {
        let vars = |xs: &[&str]| xs.iter().map(|x| Arc::from(*x)).collect::<BTreeSet<_>>();
        assert_eq!(valuations(&vars(&[]), m4()).len(), 1);
        assert_eq!(valuations(&vars(&["p"]), m4()).len(), 4);
        let vs = valuations(&vars(&["q", "p"]), m4());
        assert_eq!(vs.len(), 16);
        assert_eq!(vs[1].render(m4()), "p=0,q=n");
        assert_eq!(vs[4].render(m4()), "p=n,q=0");
    }

    #[test]
    fn consequence_examples() {
        let f = |s: &str| parse(s).unwrap();
        assert!(matrix_consequence([], [&f("p | ~#p")], m4()));
        assert!(!matrix_consequence([], [&f("p | ~p")], m4()));
        assert!(matrix_consequence([&f("~p & #p")], [], m4()));
        assert!(degree_consequence([&f("p & q")], &f("p")));
        assert!(degree_consequence([], &f("p | ~#p")));
        assert!(!degree_consequence([&f("p")], &f("#p")));
        assert_eq!(countermodel([], [&f("p | ~p")], m4()).unwrap().render(m4()), "p=n");
        assert!(countermodel([&f("p")], [&f("p")], m4()).is_none());
        assert_eq!(countermodel([&f("~#p")], [&f("p")], m4()).unwrap().render(m4()), "p=0");
    }

    #[test]
    fn bundled_file_matches_order_and_round_trips() {
        let m = m4();
        assert_eq!(m.leq(N, B), Some(false));
        assert_eq!(m.leq(B, N), Some(false));
        assert_eq!(m.leq(ZERO, N), Some(true));
        assert_eq!(m.leq(N, ONE), Some(true));
        assert_eq!(m.meet(N, B), Some(ZERO));
        assert_eq!(m.top(), Some(ONE));
        assert_eq!(m.to_json(), m4_json());
    }

    #[test]
    fn valuation_text_errors() {
        assert!(Valuation::parse("p=x", m4()).is_err());
        assert!(Valuation::parse("p", m4()).is_err());
        assert!(Valuation::parse("", m4()).unwrap().0.is_empty());
    }
}
