//! Natural deduction for TML: deductions with discharged hypotheses, checking, and the
//! translations to and from the two-sided calculus.

mod from_sc;
mod macros;
mod to_sc;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::check::CheckError;
use crate::layout::render_tree;
use crate::syntax::{Formula, Style};

pub use from_sc::sc_to_nd;
pub use macros::{bot_collapse_lr, bot_collapse_rl, box_intro, distrib_lr, distrib_rl};
pub use to_sc::{nd_to_sc, tau, NdToScError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NdRule {
    Hyp,
    Ma,
    AndI,
    AndE1,
    AndE2,
    NegAndI1,
    NegAndI2,
    NegAndE,
    OrI1,
    OrI2,
    OrE,
    NegOrI,
    NegOrE1,
    NegOrE2,
    NegNegI,
    NegNegE,
    BoxIStar,
    BoxE,
    NegBoxI,
    NegBoxE,
    BotI,
    BotE,
}

impl NdRule {
    pub fn label(self) -> &'static str {
        match self {
            NdRule::Hyp => "",
            NdRule::Ma => "MA",
            NdRule::AndI => "∧I",
            NdRule::AndE1 => "∧E₁",
            NdRule::AndE2 => "∧E₂",
            NdRule::NegAndI1 => "¬∧I₁",
            NdRule::NegAndI2 => "¬∧I₂",
            NdRule::NegAndE => "¬∧E",
            NdRule::OrI1 => "∨I₁",
            NdRule::OrI2 => "∨I₂",
            NdRule::OrE => "∨E",
            NdRule::NegOrI => "¬∨I",
            NdRule::NegOrE1 => "¬∨E₁",
            NdRule::NegOrE2 => "¬∨E₂",
            NdRule::NegNegI => "¬¬I",
            NdRule::NegNegE => "¬¬E",
            NdRule::BoxIStar => "□I*",
            NdRule::BoxE => "□E",
            NdRule::NegBoxI => "¬□I",
            NdRule::NegBoxE => "¬□E",
            NdRule::BotI => "⊥I",
            NdRule::BotE => "⊥E",
        }
    }

    fn name(self) -> String {
        serde_json::to_value(self).expect("serializable").as_str().expect("string tag").to_string()
    }

    fn arity(self) -> usize {
        match self {
            NdRule::Hyp | NdRule::Ma => 0,
            NdRule::AndI | NdRule::NegOrI | NdRule::BoxIStar | NdRule::NegBoxE => 2,
            NdRule::OrE | NdRule::NegAndE => 3,
            _ => 1,
        }
    }

    /// Premise index holding each discharged class, in discharge order.
    fn discharge_slots(self) -> &'static [usize] {
        match self {
            NdRule::OrE | NdRule::NegAndE => &[1, 2],
            NdRule::BoxIStar => &[1],
            _ => &[],
        }
    }
}

impl fmt::Display for NdRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Discharge {
    pub marker: String,
    pub formula: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NdDeduction {
    pub rule: NdRule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marker: Option<String>,
    pub conclusion: Formula,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub discharges: Vec<Discharge>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<NdDeduction>,
}

impl NdDeduction {
    pub fn hyp(marker: &str, f: Formula) -> NdDeduction {
        NdDeduction { rule: NdRule::Hyp, marker: Some(marker.into()), conclusion: f, discharges: vec![], premises: vec![] }
    }

    pub fn infer(rule: NdRule, conclusion: Formula, premises: Vec<NdDeduction>) -> NdDeduction {
        NdDeduction { rule, marker: None, conclusion, discharges: vec![], premises }
    }

    pub fn discharging(mut self, discharges: Vec<Discharge>) -> NdDeduction {
        self.discharges = discharges;
        self
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(NdDeduction::size).sum::<usize>()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(src: &str) -> Result<NdDeduction, serde_json::Error> {
        serde_json::from_str(src)
    }

    /// Tree layout; discharged hypotheses are bracketed and tagged with their marker.
    pub fn render_text(&self, style: Style) -> String {
        let mut closed = BTreeSet::new();
        collect_discharged(self, &mut closed);
        render_tree(self, &|d: &NdDeduction| {
            let f = d.conclusion.render(style);
            match (&d.marker, d.rule) {
                (Some(m), NdRule::Hyp) if closed.contains(m) => (format!("[{f}]{m}"), String::new(), vec![]),
                (_, NdRule::Hyp) => (f, String::new(), vec![]),
                _ => {
                    let name = if style == Style::Unicode { d.rule.label().to_string() } else { d.rule.name() };
                    let label =
                        std::iter::once(name).chain(d.discharges.iter().map(|x| x.marker.clone())).collect::<Vec<_>>();
                    (f, label.join(","), d.premises.iter().collect())
                }
            }
        })
    }
}

fn collect_discharged(d: &NdDeduction, out: &mut BTreeSet<String>) {
    out.extend(d.discharges.iter().map(|x| x.marker.clone()));
    for p in &d.premises {
        collect_discharged(p, out);
    }
}

/// Right-nested disjunction of the formulas sorted by ascii rendering; `⊥` when empty.
pub fn disjunction_of<'a, I: IntoIterator<Item = &'a Formula>>(delta: I) -> Formula {
    let items = sorted_disjuncts(delta);
    fold_disjuncts(&items)
}

pub(crate) fn sorted_disjuncts<'a, I: IntoIterator<Item = &'a Formula>>(delta: I) -> Vec<Formula> {
    let mut items: Vec<(String, Formula)> = delta.into_iter().map(|f| (f.render(Style::Ascii), f.clone())).collect();
    items.sort();
    items.dedup();
    items.into_iter().map(|(_, f)| f).collect()
}

pub(crate) fn fold_disjuncts(items: &[Formula]) -> Formula {
    match items {
        [] => Formula::Bot,
        [x] => x.clone(),
        [x, rest @ ..] => Formula::or(x, &fold_disjuncts(rest)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdSummary {
    pub conclusion: Formula,
    /// Undischarged hypotheses by marker.
    pub open_markers: BTreeMap<String, Formula>,
}

impl NdSummary {
    pub fn open(&self) -> BTreeSet<Formula> {
        self.open_markers.values().cloned().collect()
    }
}

/// Check every node's schema and the discharge bookkeeping: a discharged class may only
/// occur in its designated premise, each marker is discharged at most once, and no marker
/// is both discharged and still open.
pub fn check_nd(d: &NdDeduction) -> Result<NdSummary, CheckError> {
    let mut sites = BTreeSet::new();
    let open = check_rec(d, &mut vec![], &mut sites)?;
    if let Some(m) = open.keys().find(|m| sites.contains(*m)) {
        return Err(CheckError::new(&[], d.rule.name(), format!("marker `{m}` is both open and discharged")));
    }
    Ok(NdSummary { conclusion: d.conclusion.clone(), open_markers: open })
}

fn merge(into: &mut BTreeMap<String, Formula>, from: BTreeMap<String, Formula>) -> Result<(), String> {
    for (m, f) in from {
        match into.get(&m) {
            Some(g) if *g != f => return Err(format!("marker `{m}` labels both `{g}` and `{f}`")),
            _ => {
                into.insert(m, f);
            }
        }
    }
    Ok(())
}

fn check_rec(
    d: &NdDeduction,
    path: &mut Vec<usize>,
    sites: &mut BTreeSet<String>,
) -> Result<BTreeMap<String, Formula>, CheckError> {
    let err = |path: &[usize], m: String| CheckError::new(path, d.rule.name(), m);
    if d.premises.len() != d.rule.arity() {
        let msg = format!("expected {} premise(s), found {}", d.rule.arity(), d.premises.len());
        return Err(err(path, msg));
    }
    if d.rule == NdRule::Hyp {
        let m = d.marker.clone().ok_or_else(|| err(path, "hypothesis without a marker".into()))?;
        return Ok(BTreeMap::from([(m, d.conclusion.clone())]));
    }
    if d.marker.is_some() {
        return Err(err(path, "only hypotheses carry a marker".into()));
    }
    let mut opens = Vec::with_capacity(d.premises.len());
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        opens.push(check_rec(p, path, sites)?);
        path.pop();
    }
    let wants = schema(d).map_err(|m| err(path, m))?;
    let slots = d.rule.discharge_slots();
    if d.discharges.len() != slots.len() {
        let msg = format!("expected {} discharge(s), found {}", slots.len(), d.discharges.len());
        return Err(err(path, msg));
    }
    for ((x, &slot), want) in d.discharges.iter().zip(slots).zip(&wants) {
        if x.formula != *want {
            return Err(err(path, format!("discharged class should be `{want}`, not `{}`", x.formula)));
        }
        if !sites.insert(x.marker.clone()) {
            return Err(err(path, format!("marker `{}` is discharged at more than one site", x.marker)));
        }
        for (i, o) in opens.iter().enumerate() {
            match o.get(&x.marker) {
                Some(f) if i == slot && *f != x.formula => {
                    return Err(err(path, format!("marker `{}` labels `{f}`, not `{}`", x.marker, x.formula)))
                }
                Some(_) if i != slot => {
                    return Err(err(path, format!("marker `{}` occurs outside premise {slot}", x.marker)))
                }
                _ => {}
            }
        }
    }
    for (x, &slot) in d.discharges.iter().zip(slots) {
        opens[slot].remove(&x.marker);
    }
    let mut out = BTreeMap::new();
    for o in opens {
        merge(&mut out, o).map_err(|m| err(path, m))?;
    }
    Ok(out)
}

/// Validate the node's formulas; returns the formulas its discharge classes must carry.
fn schema(d: &NdDeduction) -> Result<Vec<Formula>, String> {
    use Formula as F;
    use NdRule::*;
    let c = &d.conclusion;
    let p: Vec<&Formula> = d.premises.iter().map(|q| &q.conclusion).collect();
    let mismatch = || Err(format!("premises do not fit `{}` concluding `{c}`", d.rule));
    let neg_of = |f: &Formula| match f {
        F::Neg(x) => Some((**x).clone()),
        _ => None,
    };
    let ok = match d.rule {
        Hyp => true,
        Ma => matches!(c, F::Or(a, b) if **b == a.boxed().neg()),
        AndI => *c == F::and(p[0], p[1]),
        AndE1 => matches!(p[0], F::And(a, _) if **a == *c),
        AndE2 => matches!(p[0], F::And(_, b) if **b == *c),
        NegAndI1 => matches!(neg_of(c), Some(F::And(a, _)) if a.neg() == *p[0]),
        NegAndI2 => matches!(neg_of(c), Some(F::And(_, b)) if b.neg() == *p[0]),
        OrI1 => matches!(c, F::Or(a, _) if **a == *p[0]),
        OrI2 => matches!(c, F::Or(_, b) if **b == *p[0]),
        NegOrI => matches!(neg_of(c), Some(F::Or(a, b)) if a.neg() == *p[0] && b.neg() == *p[1]),
        NegOrE1 => matches!(neg_of(p[0]), Some(F::Or(a, _)) if a.neg() == *c),
        NegOrE2 => matches!(neg_of(p[0]), Some(F::Or(_, b)) if b.neg() == *c),
        NegNegI => *c == p[0].neg().neg(),
        NegNegE => *p[0] == c.neg().neg(),
        BoxE => *p[0] == c.boxed(),
        NegBoxI => matches!(neg_of(c), Some(F::Box(a)) if a.neg() == *p[0]),
        NegBoxE => *p[0] == p[1].boxed().neg() && *c == p[1].neg(),
        BotI => matches!(p[0], F::And(na, ba) if matches!(&**ba, F::Box(a) if a.neg() == **na)) && *c == F::Bot,
        BotE => *p[0] == F::Bot,
        OrE => {
            return match p[0] {
                F::Or(a, b) if p[1] == c && p[2] == c => Ok(vec![(**a).clone(), (**b).clone()]),
                _ => mismatch(),
            }
        }
        NegAndE => {
            return match neg_of(p[0]) {
                Some(F::And(a, b)) if p[1] == c && p[2] == c => Ok(vec![a.neg(), b.neg()]),
                _ => mismatch(),
            }
        }
        BoxIStar => {
            return match (c, p[0]) {
                (F::Or(psi, bphi), F::Or(psi2, phi)) if psi == psi2 && **bphi == phi.boxed() && **psi == *p[1] => {
                    Ok(vec![phi.neg()])
                }
                _ => mismatch(),
            }
        }
    };
    if ok {
        Ok(vec![])
    } else {
        mismatch()
    }
}

/// Give every discharge site a distinct marker, `u1`, `u2`, … in pre-order, skipping names
/// already used by open hypotheses. Needed after a sub-deduction has been copied into more
/// than one place.
pub(crate) fn renumber(d: &mut NdDeduction) {
    let mut free = BTreeSet::new();
    free_markers(d, &mut vec![], &mut free);
    // first to names nothing else uses, so the final pass cannot capture
    let mut counter = 0;
    renumber_rec(d, &mut || {
        counter += 1;
        format!("\0{counter}")
    });
    let mut counter = 0;
    renumber_rec(d, &mut || loop {
        counter += 1;
        let m = format!("u{counter}");
        if !free.contains(&m) {
            break m;
        }
    });
}

fn free_markers(d: &NdDeduction, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    if let (NdRule::Hyp, Some(m)) = (d.rule, &d.marker) {
        if !bound.contains(m) {
            out.insert(m.clone());
        }
        return;
    }
    let slots = d.rule.discharge_slots();
    for (i, p) in d.premises.iter().enumerate() {
        let here: Vec<String> =
            d.discharges.iter().zip(slots).filter(|(_, &s)| s == i).map(|(x, _)| x.marker.clone()).collect();
        let n = here.len();
        bound.extend(here);
        free_markers(p, bound, out);
        bound.truncate(bound.len() - n);
    }
}

fn renumber_rec(d: &mut NdDeduction, next: &mut dyn FnMut() -> String) {
    let slots = d.rule.discharge_slots();
    for i in 0..d.discharges.len() {
        let fresh = next();
        let old = std::mem::replace(&mut d.discharges[i].marker, fresh.clone());
        rename_bound(&mut d.premises[slots[i]], &old, &fresh);
    }
    for p in &mut d.premises {
        renumber_rec(p, next);
    }
}

/// Rename hypotheses `old` bound by an enclosing site, stopping where an inner site rebinds it.
fn rename_bound(d: &mut NdDeduction, old: &str, fresh: &str) {
    if d.rule == NdRule::Hyp {
        if d.marker.as_deref() == Some(old) {
            d.marker = Some(fresh.to_string());
        }
        return;
    }
    let slots = d.rule.discharge_slots();
    for (i, p) in d.premises.iter_mut().enumerate() {
        let shadowed = d.discharges.iter().zip(slots).any(|(x, &s)| s == i && x.marker == old);
        if !shadowed {
            rename_bound(p, old, fresh);
        }
    }
}
