//! Acceptance run: one line per criterion, then a nonzero exit if any criterion outside the
//! known-unattainable list fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tml::algebra::{check_tma_laws, product_algebra, Algebra};
use tml::g::cut_necessity_probe;
use tml::matrix::{degree_consequence, Connective};
use tml::nd::{check_nd, disjunction_of, nd_to_sc, sc_to_nd, tau};
use tml::sc::{check_sc_proof, contrapose, denecessitate, necessitate, prove, provable, weaken, ScProof, ScRule};
use tml::signed::{generate_sf_rules, logical_rule_count, NSequent};
use tml::two::{m4_spec, single_slot, two_of_nsequent, verify_two_equivalence};
use tml::{m4, matrix_consequence, parse, Formula, Sequent, TruthValue};

/// The axiom translation yields 7 sequents where 5 are listed; see the notes in the README.
const KNOWN_UNATTAINABLE: &[usize] = &[4];

// ---------------------------------------------------------------------------
// Independent oracle: M₄ written out by hand, values 0, n, b, 1 as 0..4.

const NEG: [u8; 4] = [3, 1, 2, 0];
const BOX: [u8; 4] = [0, 0, 0, 3];
const MEET: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]];
const JOIN: [[u8; 4]; 4] = [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]];

fn designated(v: u8) -> bool {
    v >= 2
}

/// Values under the 16 valuations of `(p, q)`, index `4·v(p) + v(q)`.
type Table = [u8; 16];

fn table_of(f: &Formula) -> Table {
    let mut t = [0u8; 16];
    for (i, slot) in t.iter_mut().enumerate() {
        *slot = value(f, (i / 4) as u8, (i % 4) as u8, &[]);
    }
    t
}

fn value(f: &Formula, p: u8, q: u8, rest: &[(String, u8)]) -> u8 {
    match f {
        Formula::Var(x) if &**x == "p" => p,
        Formula::Var(x) if &**x == "q" => q,
        Formula::Var(x) => rest.iter().find(|(n, _)| n == &**x).map(|(_, v)| *v).expect("assigned"),
        Formula::Bot => 0,
        Formula::Neg(a) => NEG[value(a, p, q, rest) as usize],
        Formula::Box(a) => BOX[value(a, p, q, rest) as usize],
        Formula::And(a, b) => MEET[value(a, p, q, rest) as usize][value(b, p, q, rest) as usize],
        Formula::Or(a, b) => JOIN[value(a, p, q, rest) as usize][value(b, p, q, rest) as usize],
    }
}

/// Brute force over `p`, `q`, `r`.
fn oracle(s: &Sequent) -> bool {
    (0..64u8).all(|i| {
        let rest = [("r".to_string(), i % 4)];
        let (p, q) = (i / 16, (i / 4) % 4);
        !s.left.iter().all(|f| designated(value(f, p, q, &rest))) || s.right.iter().any(|f| designated(value(f, p, q, &rest)))
    })
}

// ---------------------------------------------------------------------------
// Corpus: sequents over {p, q}, at most two formulas a side, at most 4 connectives in all.

struct Pool {
    forms: Vec<Formula>,
    weight: Vec<usize>,
    table: Vec<Table>,
    /// Element indices under the 16 homomorphisms into M₄ and the 256 into M₄×M₄, via the
    /// library's algebra tables.
    hom: Vec<[u8; 16]>,
    hom2: Vec<[u8; 256]>,
    by_weight: Vec<Vec<usize>>,
}

impl Pool {
    fn add(&mut self, f: Formula, w: usize, hom: [u8; 16], hom2: [u8; 256]) {
        self.table.push(table_of(&f));
        self.forms.push(f);
        self.weight.push(w);
        self.hom.push(hom);
        self.hom2.push(hom2);
        self.by_weight[w].push(self.forms.len() - 1);
    }

    fn new(max: usize) -> Pool {
        let a = Algebra::m4();
        let a2 = product_algebra(&a, &a);
        let mut pool =
            Pool { forms: vec![], weight: vec![], table: vec![], hom: vec![], hom2: vec![], by_weight: vec![vec![]; max + 1] };
        for (k, x) in ["p", "q"].iter().enumerate() {
            let hom: [u8; 16] = std::array::from_fn(|i| if k == 0 { (i / 4) as u8 } else { (i % 4) as u8 });
            let hom2: [u8; 256] = std::array::from_fn(|i| if k == 0 { (i / 16) as u8 } else { (i % 16) as u8 });
            pool.add(Formula::var(x), 0, hom, hom2);
        }
        for w in 1..=max {
            for i in pool.by_weight[w - 1].clone() {
                let f = pool.forms[i].clone();
                let (h, h2) = (pool.hom[i], pool.hom2[i]);
                pool.add(f.neg(), w, h.map(|e| a.neg[e as usize] as u8), h2.map(|e| a2.neg[e as usize] as u8));
                pool.add(f.boxed(), w, h.map(|e| a.nec[e as usize] as u8), h2.map(|e| a2.nec[e as usize] as u8));
            }
            for wl in 0..w {
                for i in pool.by_weight[wl].clone() {
                    for j in pool.by_weight[w - 1 - wl].clone() {
                        let (f, g) = (pool.forms[i].clone(), pool.forms[j].clone());
                        for (c, ops, ops2) in [(0, &a.meet, &a2.meet), (1, &a.join, &a2.join)] {
                            let h: [u8; 16] =
                                std::array::from_fn(|k| ops[pool.hom[i][k] as usize][pool.hom[j][k] as usize] as u8);
                            let h2: [u8; 256] =
                                std::array::from_fn(|k| ops2[pool.hom2[i][k] as usize][pool.hom2[j][k] as usize] as u8);
                            let fg = if c == 0 { Formula::and(&f, &g) } else { Formula::or(&f, &g) };
                            pool.add(fg, w, h, h2);
                        }
                    }
                }
            }
        }
        pool
    }

    /// Sides of total weight `w`: sets of at most two distinct formulas.
    fn sides(&self, w: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if w == 0 {
            out.push(vec![]);
        }
        out.extend(self.by_weight[w].iter().map(|&i| vec![i]));
        for wa in 0..=w / 2 {
            for &i in &self.by_weight[wa] {
                for &j in &self.by_weight[w - wa] {
                    if wa < w - wa || i < j {
                        out.push(vec![i, j]);
                    }
                }
            }
        }
        out
    }

    fn sequent(&self, l: &[usize], r: &[usize]) -> Sequent {
        Sequent::new(l.iter().map(|&i| self.forms[i].clone()), r.iter().map(|&i| self.forms[i].clone()))
    }

    fn valid(&self, l: &[usize], r: &[usize]) -> bool {
        (0..16).all(|k| !l.iter().all(|&i| designated(self.table[i][k])) || r.iter().any(|&i| designated(self.table[i][k])))
    }

    /// `⋀h(Γ) ≤ ⋁h(Δ)` for every homomorphism into `a` (tables given by `vals`).
    fn lattice_holds<const N: usize>(&self, a: &Algebra, vals: impl Fn(usize) -> [u8; N], l: &[usize], r: &[usize]) -> bool {
        let (lv, rv): (Vec<[u8; N]>, Vec<[u8; N]>) = (l.iter().map(|&i| vals(i)).collect(), r.iter().map(|&i| vals(i)).collect());
        (0..N).all(|k| {
            let lo = lv.iter().fold(a.one(), |acc, t| a.meet[acc][t[k] as usize]);
            let hi = rv.iter().fold(a.zero, |acc, t| a.join[acc][t[k] as usize]);
            a.leq(lo, hi)
        })
    }
}

// ---------------------------------------------------------------------------

struct Report {
    id: usize,
    pass: bool,
    detail: String,
    took: Duration,
}

fn timed(f: impl FnOnce() -> (bool, String)) -> (bool, String, Duration) {
    let t = Instant::now();
    let (pass, detail) = f();
    (pass, detail, t.elapsed())
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn c1() -> (bool, String) {
    let m = m4();
    let v = TruthValue;
    let names: Vec<&str> = m.values().map(|x| m.name(x)).collect();
    let mut bad = Vec::new();
    if names != ["0", "n", "b", "1"] {
        bad.push(format!("values {names:?}"));
    }
    for i in 0..4u8 {
        if m.apply(Connective::Neg, &[v(i)]).unwrap() != v(NEG[i as usize]) {
            bad.push(format!("neg {i}"));
        }
        if m.apply(Connective::Box, &[v(i)]).unwrap() != v(BOX[i as usize]) {
            bad.push(format!("box {i}"));
        }
        if m.is_designated(v(i)) != designated(i) {
            bad.push(format!("designation {i}"));
        }
        for j in 0..4u8 {
            if m.apply(Connective::And, &[v(i), v(j)]).unwrap() != v(MEET[i as usize][j as usize]) {
                bad.push(format!("and {i} {j}"));
            }
            if m.apply(Connective::Or, &[v(i), v(j)]).unwrap() != v(JOIN[i as usize][j as usize]) {
                bad.push(format!("or {i} {j}"));
            }
        }
    }
    (bad.is_empty(), if bad.is_empty() { "4+4+16+16 entries match".into() } else { bad.join("; ") })
}

fn c2() -> (bool, String) {
    let a = Algebra::m4();
    let r1 = check_tma_laws(&a);
    let r2 = check_tma_laws(&product_algebra(&a, &a));
    let wanted = ["de morgan join", "de morgan meet", "box a and not a is zero", "not box a and a", "lemma i", "lemma xiv", "box introduction"];
    let present = wanted.iter().all(|w| r1.get(w).is_some());
    let fails: Vec<&str> = r1.failures().chain(r2.failures()).map(|l| l.name).collect();
    (
        present && fails.is_empty(),
        format!("{} laws on M4 and on M4xM4, failures: {fails:?}", r1.laws.len()),
    )
}

fn c3() -> (bool, String) {
    let n = logical_rule_count(&generate_sf_rules(m4()));
    (n == 40, format!("{n} logical rules"))
}

fn c4() -> (bool, String) {
    let spec = m4_spec();
    let m = m4();
    let phi = parse("phi").unwrap();
    let expected = [
        ["phi =>", "=> ~phi"],
        ["phi =>", "~phi =>"],
        ["=> phi", "=> ~phi"],
        ["~phi =>", "=> phi"],
    ];
    let mut single_ok = true;
    for (i, want) in expected.iter().enumerate() {
        let got = two_of_nsequent(&single_slot(TruthValue(i as u8), &phi, 4), &spec);
        let want: BTreeSet<Sequent> = want.iter().map(|s| Sequent::parse(s).unwrap()).collect();
        single_ok &= got == want;
    }
    let a = parse("alpha").unwrap();
    let axiom = NSequent { components: vec![[a.clone()].into(); 4] };
    let got = two_of_nsequent(&axiom, &spec);
    let listed: BTreeSet<Sequent> = [
        "alpha, ~alpha => alpha",
        "alpha, ~alpha => ~alpha",
        "alpha => ~alpha, alpha",
        "alpha, ~alpha => ~alpha, alpha",
        "~alpha => ~alpha, alpha",
    ]
    .iter()
    .map(|s| Sequent::parse(s).unwrap())
    .collect();
    let by_weakening = got.iter().all(|s| {
        let x = s.left.intersection(&s.right).next().cloned();
        x.is_some_and(|x| {
            let p = weaken(ScProof::axiom(Sequent::new([x.clone()], [x])), s);
            check_sc_proof(&p, false).is_ok()
        })
    });
    let extra: Vec<String> = got.difference(&listed).map(|s| s.to_string()).collect();
    let exact = got == listed;
    let _ = m;
    (
        single_ok && by_weakening && exact,
        format!(
            "single-slot translations {}; axiom yields {} sequents, listed five {} contained, extra {extra:?}; all by weakening from an axiom instance: {by_weakening}",
            if single_ok { "exact" } else { "DIFFER" },
            got.len(),
            if listed.is_subset(&got) { "all" } else { "not all" },
        ),
    )
}

fn random_formula(rng: &mut StdRng, budget: usize, vars: &[&str]) -> Formula {
    if budget == 0 {
        return Formula::var(vars[rng.gen_range(0..vars.len())]);
    }
    match rng.gen_range(0..4) {
        0 => random_formula(rng, budget - 1, vars).neg(),
        1 => random_formula(rng, budget - 1, vars).boxed(),
        k => {
            let left = rng.gen_range(0..budget);
            let (a, b) = (random_formula(rng, left, vars), random_formula(rng, budget - 1 - left, vars));
            if k == 2 {
                Formula::and(&a, &b)
            } else {
                Formula::or(&a, &b)
            }
        }
    }
}

fn c5() -> (bool, String) {
    let mut rng = StdRng::seed_from_u64(5);
    let spec = m4_spec();
    let mut fails = 0;
    for _ in 0..200 {
        let components = (0..4)
            .map(|_| {
                let k = rng.gen_range(0..=2);
                (0..k).map(|_| {
                    let b = rng.gen_range(0..=3);
                    random_formula(&mut rng, b, &["p", "q"])
                }).collect()
            })
            .collect();
        if !verify_two_equivalence(&NSequent { components }, &spec, m4()) {
            fails += 1;
        }
    }
    (fails == 0, format!("200 random n-sequents, {fails} failures"))
}

fn c8() -> (bool, String) {
    use ScRule::*;
    let a = prove(&Sequent::parse("=> p | ~#p").unwrap()).map(|p| p.rule_sequence());
    let b = prove(&Sequent::parse("=> #(p | ~#p)").unwrap()).map(|p| p.rule_sequence());
    let ok = a.as_deref() == Some(&[OrR, NegBoxR1, Axiom][..])
        && b.as_deref() == Some(&[BoxR, OrR, NegBoxR1, Axiom, NegOrL, NegNegL, BoxL2, Axiom][..]);
    (ok, format!("{a:?} / {b:?}"))
}

fn c9() -> (bool, String) {
    let r = cut_necessity_probe(&parse("p").unwrap(), 12);
    (
        r.valid && !r.g_cutfree_found && r.sc_cutfree_found && !r.vacuous,
        format!(
            "valid={} cut-free found within 12={} two-sided cut-free={} (evidence, not a proof of the metatheorem)",
            r.valid, r.g_cutfree_found, r.sc_cutfree_found
        ),
    )
}

fn c6_random() -> (bool, String) {
    let mut rng = StdRng::seed_from_u64(6);
    let mut bad = Vec::new();
    let mut yes = 0;
    for _ in 0..1000 {
        let side = |rng: &mut StdRng| {
            let k = rng.gen_range(0..=2);
            (0..k)
                .map(|_| {
                    let b = rng.gen_range(0..=7);
                    random_formula(rng, b, &["p", "q", "r"])
                })
                .collect::<Vec<_>>()
        };
        let s = Sequent::new(side(&mut rng), side(&mut rng));
        let (got, want) = (prove(&s).is_some(), oracle(&s));
        yes += want as usize;
        if got != want {
            bad.push(s.to_string());
        }
    }
    (bad.is_empty(), format!("1000 random sequents ({yes} valid), disagreements {bad:?}"))
}

#[derive(Default)]
struct CorpusStats {
    total: usize,
    valid: usize,
    disagree: Vec<String>,
    cut_found: usize,
    proof_rejected: usize,
    contra_fail: Vec<String>,
    theorems: Vec<usize>,
    degree_checked: usize,
    degree_disagree: Vec<String>,
    hom_fail: Vec<String>,
    nd_sample: Vec<(Vec<usize>, Vec<usize>)>,
    t_prove: Duration,
    t_cut: Duration,
    t_contra: Duration,
    t_degree: Duration,
    t_hom: Duration,
}

fn corpus(pool: &Pool) -> CorpusStats {
    let mut st = CorpusStats::default();
    let sides: Vec<Vec<Vec<usize>>> = (0..=4).map(|w| pool.sides(w)).collect();
    let a = Algebra::m4();
    let a2 = product_algebra(&a, &a);
    let mut candidates = Vec::new();
    for wl in 0..=4 {
        for wr in 0..=4 - wl {
            for l in &sides[wl] {
                for r in &sides[wr] {
                    st.total += 1;
                    let s = pool.sequent(l, r);
                    let want = pool.valid(l, r);

                    let t = Instant::now();
                    let got = prove(&s);
                    st.t_prove += t.elapsed();
                    if got.is_some() != want {
                        st.disagree.push(s.to_string());
                    }
                    st.valid += want as usize;

                    if r.len() == 1 {
                        let t = Instant::now();
                        let g: Vec<&Formula> = l.iter().map(|&i| &pool.forms[i]).collect();
                        let phi = &pool.forms[r[0]];
                        st.degree_checked += 1;
                        if degree_consequence(g.iter().copied(), phi) != matrix_consequence(g.iter().copied(), [phi], m4()) {
                            st.degree_disagree.push(s.to_string());
                        }
                        st.t_degree += t.elapsed();
                    }

                    let Some(p) = got else { continue };
                    let t = Instant::now();
                    if !p.is_cut_free() {
                        st.cut_found += 1;
                    }
                    if check_sc_proof(&p, false).is_err() || p.sequent != s {
                        st.proof_rejected += 1;
                    }
                    st.t_cut += t.elapsed();

                    let t = Instant::now();
                    let c = contrapose(&p);
                    let cs = s.contrapositive();
                    let ok = c.is_ok_and(|c| c.sequent == cs && check_sc_proof(&c, true).is_ok())
                        && prove(&cs).is_some_and(|q| q.is_cut_free());
                    if !ok {
                        st.contra_fail.push(s.to_string());
                    }
                    st.t_contra += t.elapsed();

                    let t = Instant::now();
                    if !pool.lattice_holds(&a, |i| pool.hom[i], l, r) || !pool.lattice_holds(&a2, |i| pool.hom2[i], l, r) {
                        st.hom_fail.push(s.to_string());
                    }
                    st.t_hom += t.elapsed();

                    if l.is_empty() && r.len() == 1 {
                        st.theorems.push(r[0]);
                    }
                    if l.len() == 2 || r.len() == 2 {
                        candidates.push((l.clone(), r.clone()));
                    }
                }
            }
        }
    }
    // 300 provable sequents with a two-formula side, evenly spaced through the corpus
    let stride = (candidates.len() / 300).max(1);
    st.nd_sample = candidates.into_iter().step_by(stride).take(300).collect();
    st
}

fn c11(pool: &Pool, theorems: &[usize]) -> (bool, String) {
    let mut fails = Vec::new();
    for &i in theorems {
        let psi = &pool.forms[i];
        let s = Sequent::new([], [psi.clone()]);
        let p = prove(&s).expect("theorem");
        let ok = necessitate(&p).is_ok_and(|b| {
            b.sequent == Sequent::new([], [psi.boxed()])
                && check_sc_proof(&b, true).is_ok()
                && denecessitate(&b).is_ok_and(|back| back == p)
        });
        if !ok {
            fails.push(s.to_string());
        }
    }
    // the converse over every formula of weight at most 3, whose box is still in the corpus
    let mut converse = 0;
    for (i, psi) in pool.forms.iter().enumerate() {
        if pool.weight[i] <= 3 && provable(&Sequent::new([], [psi.boxed()]))  {
            converse += 1;
            if !provable(&Sequent::new([], [psi.clone()])) {
                fails.push(format!("=> #{psi} without => {psi}"));
            }
        }
    }
    (fails.is_empty(), format!("{} theorems necessitated and inverted, {converse} boxed theorems unboxed, failures {fails:?}", theorems.len()))
}

fn c13(pool: &Pool, sample: &[(Vec<usize>, Vec<usize>)]) -> (bool, String) {
    let mut fails = Vec::new();
    let mut sizes = 0;
    for (l, r) in sample {
        let s = pool.sequent(l, r);
        let p = prove(&s).expect("provable");
        let ok = (|| {
            let d = sc_to_nd(&p).ok()?;
            sizes += d.size();
            let sum = check_nd(&d).ok()?;
            let big = disjunction_of(&s.right);
            if sum.conclusion != big || !sum.open().is_subset(&s.left) {
                return None;
            }
            let back = nd_to_sc(&d).ok()?;
            check_sc_proof(&back, true).ok()?;
            // the new sequent is valid, its left side lies in Γ, and ⋁Δ is equivalent to Δ
            // (an empty Δ gives ⊥, read back as ¬p ∧ □p)
            let equiv = oracle(&back.sequent)
                && back.sequent.left.is_subset(&s.left)
                && back.sequent.right == BTreeSet::from([tau(&big)])
                && oracle(&Sequent::new([big.clone()], s.right.iter().cloned()))
                && s.right.iter().all(|x| oracle(&Sequent::new([x.clone()], [big.clone()])));
            equiv.then_some(())
        })();
        if ok.is_none() {
            fails.push(s.to_string());
        }
    }
    (
        sample.len() == 300 && fails.is_empty(),
        format!("{} sequents, {sizes} deduction nodes in all, failures {fails:?}", sample.len()),
    )
}

fn main() {
    let mut reports: Vec<Report> = Vec::new();
    let mut record = |id: usize, (pass, detail, took): (bool, String, Duration)| {
        let limit_ok = match id {
            1 => took < Duration::from_millis(1),
            2 | 4 | 8 => took < Duration::from_secs(1),
            5 => took < Duration::from_secs(5),
            9 => took < Duration::from_secs(30),
            13 => took < Duration::from_secs(120),
            _ => true,
        };
        let pass = pass && limit_ok;
        let detail = if limit_ok { detail } else { format!("{detail}; over the time limit") };
        println!("criterion {id:>2}: {} ({}) {detail}", if pass { "PASS" } else { "FAIL" }, secs(took));
        reports.push(Report { id, pass, detail, took });
    };

    record(1, timed(c1));
    record(2, timed(c2));
    record(3, timed(c3));
    record(4, timed(c4));
    record(5, timed(c5));

    let t = Instant::now();
    let pool = Pool::new(4);
    let st = corpus(&pool);
    eprintln!("corpus: {} formulas, {} sequents, {} valid, pass took {}", pool.forms.len(), st.total, st.valid, secs(t.elapsed()));

    let (rand_ok, rand_detail, rand_took) = timed(c6_random);
    let exhaustive_ok = st.disagree.is_empty() && st.t_prove < Duration::from_secs(60);
    record(
        6,
        (
            exhaustive_ok && rand_ok && rand_took < Duration::from_secs(120),
            format!(
                "{} corpus sequents ({} valid), {} disagreements {:?}, proving took {}; {rand_detail} in {}",
                st.total,
                st.valid,
                st.disagree.len(),
                st.disagree.iter().take(5).collect::<Vec<_>>(),
                secs(st.t_prove),
                secs(rand_took)
            ),
            st.t_prove + rand_took,
        ),
    );
    record(
        7,
        (
            st.cut_found == 0 && st.proof_rejected == 0,
            format!("{} proofs, {} with a cut, {} rejected by the checker", st.valid, st.cut_found, st.proof_rejected),
            st.t_cut,
        ),
    );
    record(8, timed(c8));
    record(9, timed(c9));
    record(
        10,
        (
            st.contra_fail.is_empty(),
            format!("{} proofs contraposed, failures {:?}", st.valid, st.contra_fail.iter().take(5).collect::<Vec<_>>()),
            st.t_contra,
        ),
    );
    record(11, timed(|| c11(&pool, &st.theorems)));
    record(
        12,
        (
            st.degree_disagree.is_empty(),
            format!("{} single-conclusion sequents, disagreements {:?}", st.degree_checked, st.degree_disagree),
            st.t_degree,
        ),
    );
    record(13, timed(|| c13(&pool, &st.nd_sample)));
    record(
        14,
        (
            st.hom_fail.is_empty(),
            format!(
                "{} proved sequents under all 16 homomorphisms into M4 and all 256 into M4xM4, failures {:?}",
                st.valid,
                st.hom_fail.iter().take(5).collect::<Vec<_>>()
            ),
            st.t_hom,
        ),
    );

    let unexpected: Vec<usize> = reports.iter().filter(|r| !r.pass && !KNOWN_UNATTAINABLE.contains(&r.id)).map(|r| r.id).collect();
    let total: Duration = reports.iter().map(|r| r.took).sum();
    println!(
        "{} of {} criteria pass ({} in criteria); known unattainable: {KNOWN_UNATTAINABLE:?}",
        reports.iter().filter(|r| r.pass).count(),
        reports.len(),
        secs(total)
    );
    if !unexpected.is_empty() {
        for r in reports.iter().filter(|r| unexpected.contains(&r.id)) {
            eprintln!("unexpected failure {}: {}", r.id, r.detail);
        }
        std::process::exit(1);
    }
}
