use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tml::g::{check_g_proof, cut_necessity_probe, g_search_cutfree, GProof, GSequent};
use tml::matrix::{countermodel, degree_consequence_in, eval, m4, matrix_consequence, LogicalMatrix, Valuation};
use tml::nd::{check_nd, nd_to_sc, sc_to_nd, NdDeduction};
use tml::sc::{check_sc_proof, contrapose, denecessitate, necessitate, prove, ScProof};
use tml::signed::{check_sf_derivation, embed_two_sided, generate_sf_rules, parse_signed_set, sf_prove, render_signed_set, SfDerivation};
use tml::syntax::{parse, parse_list, Formula, Style};
use tml::two::{m4_spec, rule_sheet_json, rule_sheet_text, signed_sheet_json, signed_sheet_text, two_of_calculus, ExpressivenessSpec};
use tml::Sequent;

#[derive(Parser)]
#[command(name = "tml", version, about = "Tetravalent modal logic toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Render formulas with ¬ □ ∧ ∨ ⊥ instead of ~ # & | bot.
    #[arg(long, global = true)]
    unicode: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Calculus {
    Sc,
    G,
    Sf4,
    Nd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Relation {
    Matrix,
    Degree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Translation {
    Contrapose,
    Necessitate,
    Denecessitate,
    Sc2nd,
    Nd2sc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    Sf,
    Two,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print it back.
    Parse { formula: String },
    /// Evaluate a formula under a valuation such as `p=n,q=1`.
    Eval {
        #[arg(long)]
        valuation: String,
        #[arg(long)]
        matrix: Option<String>,
        formula: String,
    },
    /// Is the formula valid in M₄?
    Valid { formula: String },
    /// Decide `Γ ⇒ Δ`, given as one sequent or as two formula lists.
    Consequence {
        #[arg(long, value_enum, default_value_t = Relation::Matrix)]
        relation: Relation,
        #[arg(required = true, num_args = 1..=2)]
        sequent: Vec<String>,
    },
    /// Print a falsifying valuation if there is one.
    Countermodel {
        #[arg(required = true, num_args = 1..=2)]
        sequent: Vec<String>,
    },
    /// Search for a proof.
    Prove {
        #[arg(long, value_enum, default_value_t = Calculus::Sc)]
        calculus: Calculus,
        /// Height bound for the bounded search.
        #[arg(long, default_value_t = 12)]
        depth: usize,
        sequent: String,
    },
    /// Check a proof stored as JSON (`-` reads standard input).
    Check {
        #[arg(long, value_enum, default_value_t = Calculus::Sc)]
        calculus: Calculus,
        #[arg(long)]
        allow_cut: bool,
        file: String,
    },
    /// Transform a proof stored as JSON.
    Translate {
        #[arg(value_enum)]
        kind: Translation,
        file: String,
    },
    /// Print the rules generated from a matrix.
    GenRules {
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, value_enum, default_value_t = Stage::Two)]
        stage: Stage,
    },
    /// Bounded cut-free search for `⇒ □(α ∨ ¬□α)` in the single-conclusion calculus.
    ProbeCut {
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
}

/// A failure that is the caller's fault: exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.to_string())
    }
}

/// Print a line; a closed pipe is not an error.
fn say(s: &str) {
    let _ = writeln!(std::io::stdout(), "{s}");
}

struct Out {
    format: Format,
    style: Style,
}

impl Out {
    fn emit(&self, text: impl AsRef<str>, value: serde_json::Value) {
        match self.format {
            Format::Text => say(text.as_ref()),
            Format::Json => say(&serde_json::to_string_pretty(&value).expect("serializable")),
        }
    }

    fn formula(&self, f: &Formula) -> String {
        f.render(self.style)
    }

    fn sequent(&self, s: &Sequent) -> String {
        s.render(self.style)
    }
}

fn read_input(path: &str) -> Result<String, Usage> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Usage(format!("{path}: {e}")))
    }
}

fn load_matrix(path: &Option<String>) -> Result<LogicalMatrix, Usage> {
    match path {
        Some(p) => Ok(LogicalMatrix::from_json(&read_input(p)?)?),
        None => Ok(m4().clone()),
    }
}

fn sequent_arg(parts: &[String]) -> Result<Sequent, Usage> {
    match parts {
        [one] => Ok(Sequent::parse(one)?),
        [left, right] => Ok(Sequent::new(parse_list(left)?, parse_list(right)?)),
        _ => Err(Usage("expected a sequent or two formula lists".into())),
    }
}

fn verdict(yes: bool) -> ExitCode {
    ExitCode::from(if yes { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode, Usage> {
    let out = Out { format: cli.format, style: if cli.unicode { Style::Unicode } else { Style::Ascii } };
    match cli.command {
        Command::Parse { formula } => {
            let f = parse(&formula)?;
            let vars: Vec<String> = f.vars().iter().map(|v| v.to_string()).collect();
            out.emit(
                out.formula(&f),
                json!({"formula": f, "unicode": f.render(Style::Unicode), "size": f.size(),
                       "connectives": f.connectives(), "vars": vars}),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { valuation, matrix, formula } => {
            let m = load_matrix(&matrix)?;
            let f = parse(&formula)?;
            let v = Valuation::parse(&valuation, &m)?;
            let value = eval(&f, &v, &m)?;
            let name = m.name(value).to_string();
            out.emit(&name, json!({"formula": f, "value": name, "designated": m.is_designated(value)}));
            Ok(ExitCode::SUCCESS)
        }
        Command::Valid { formula } => {
            let f = parse(&formula)?;
            let cm = countermodel([], [&f], m4()).map(|v| v.render(m4()));
            let text = match &cm {
                None => "valid".to_string(),
                Some(v) => format!("not valid: {v}"),
            };
            out.emit(text, json!({"formula": f, "valid": cm.is_none(), "countermodel": cm}));
            Ok(verdict(cm.is_none()))
        }
        Command::Consequence { relation, sequent } => {
            let s = sequent_arg(&sequent)?;
            let holds = match relation {
                Relation::Matrix => matrix_consequence(&s.left, &s.right, m4()),
                Relation::Degree => {
                    let phi = match s.right.iter().collect::<Vec<_>>()[..] {
                        [phi] => phi,
                        _ => return Err(Usage("degree consequence needs exactly one conclusion".into())),
                    };
                    degree_consequence_in(&s.left, phi, m4())?
                }
            };
            let text = format!("{}: {}", out.sequent(&s), if holds { "holds" } else { "fails" });
            out.emit(text, json!({"sequent": s, "holds": holds}));
            Ok(verdict(holds))
        }
        Command::Countermodel { sequent } => {
            let s = sequent_arg(&sequent)?;
            let cm = countermodel(&s.left, &s.right, m4()).map(|v| v.render(m4()));
            out.emit(cm.clone().unwrap_or_else(|| "none".into()), json!({"sequent": s, "countermodel": cm}));
            Ok(verdict(cm.is_none()))
        }
        Command::Prove { calculus, depth, sequent } => prove_cmd(&out, calculus, depth, &sequent),
        Command::Check { calculus, allow_cut, file } => check_cmd(&out, calculus, allow_cut, &read_input(&file)?),
        Command::Translate { kind, file } => translate_cmd(&out, kind, &read_input(&file)?),
        Command::GenRules { matrix, spec, stage } => {
            let m = load_matrix(&matrix)?;
            let rules = generate_sf_rules(&m);
            let (text, value) = match stage {
                Stage::Sf => (signed_sheet_text(&rules, &m), signed_sheet_json(&rules, &m)),
                Stage::Two => {
                    let spec = match spec {
                        Some(p) => ExpressivenessSpec::from_json(&read_input(&p)?)?,
                        None if matrix.is_none() => m4_spec(),
                        None => return Err(Usage("--stage two with a custom matrix needs --spec".into())),
                    };
                    spec.verify(&m)?;
                    let two = two_of_calculus(&rules, &spec);
                    (rule_sheet_text(&two), rule_sheet_json(&two))
                }
            };
            match out.format {
                Format::Text => say(text.trim_end()),
                Format::Json => say(&value),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ProbeCut { alpha, depth } => {
            let alpha = parse(&alpha)?;
            let r = cut_necessity_probe(&alpha, depth);
            let text = format!(
                "sequent: {}\ndepth: {}\nvalid: {}\ncut-free proof within depth: {}\ncut-free two-sided proof: {}{}",
                r.sequent,
                r.depth,
                r.valid,
                r.g_cutfree_found,
                r.sc_cutfree_found,
                if r.vacuous { "\nnote: depth 0 admits no proof, so the search result is vacuous" } else { "" }
            );
            out.emit(text, serde_json::to_value(&r)?);
            Ok(verdict(r.valid && !r.g_cutfree_found && r.sc_cutfree_found && !r.vacuous))
        }
    }
}

fn prove_cmd(out: &Out, calculus: Calculus, depth: usize, src: &str) -> Result<ExitCode, Usage> {
    match calculus {
        Calculus::Sc => {
            let s = Sequent::parse(src)?;
            let p = prove(&s);
            match &p {
                Some(p) => out.emit(p.render_text(out.style), serde_json::to_value(p)?),
                None => out.emit(format!("not provable: {}", out.sequent(&s)), serde_json::Value::Null),
            }
            Ok(verdict(p.is_some()))
        }
        Calculus::G => {
            let s = GSequent::parse(src).map_err(Usage)?;
            let p = g_search_cutfree(&s, depth);
            match &p {
                Some(p) => out.emit(p.render_text(out.style), serde_json::to_value(p)?),
                None => out.emit(format!("no cut-free proof of height <= {depth}: {s}"), serde_json::Value::Null),
            }
            Ok(verdict(p.is_some()))
        }
        Calculus::Sf4 => {
            let m = m4();
            let goal = if src.contains("=>") {
                let s = Sequent::parse(src)?;
                embed_two_sided(&s.left, &s.right).to_signed()
            } else {
                parse_signed_set(src, m)?
            };
            let d = sf_prove(&goal, m);
            match &d {
                Some(d) => {
                    let value: serde_json::Value = serde_json::from_str(&d.to_json(m))?;
                    out.emit(d.render_text(m), value)
                }
                None => out.emit(format!("not provable: {}", render_signed_set(&goal, m)), serde_json::Value::Null),
            }
            Ok(verdict(d.is_some()))
        }
        Calculus::Nd => Err(Usage("proof search is not offered for natural deduction; prove with sc and translate".into())),
    }
}

fn check_cmd(out: &Out, calculus: Calculus, allow_cut: bool, src: &str) -> Result<ExitCode, Usage> {
    let (result, concl) = match calculus {
        Calculus::Sc => {
            let p = ScProof::from_json(src)?;
            (check_sc_proof(&p, allow_cut), out.sequent(&p.sequent))
        }
        Calculus::G => {
            let p = GProof::from_json(src)?;
            (check_g_proof(&p, allow_cut), p.sequent.to_string())
        }
        Calculus::Sf4 => {
            let d = SfDerivation::from_json(src, m4())?;
            (check_sf_derivation(&d, m4()), render_signed_set(&d.signed, m4()))
        }
        Calculus::Nd => {
            let d = NdDeduction::from_json(src)?;
            match check_nd(&d) {
                Ok(s) => {
                    let open: Vec<String> = s.open().iter().map(|f| out.formula(f)).collect();
                    (Ok(()), format!("{} |- {}", open.join(", "), out.formula(&s.conclusion)))
                }
                Err(e) => (Err(e), String::new()),
            }
        }
    };
    match result {
        Ok(()) => {
            out.emit(format!("ok: {concl}"), json!({"ok": true, "conclusion": concl}));
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            out.emit(format!("rejected: {e}"), json!({"ok": false, "error": e.to_string(), "path": e.path}));
            Ok(ExitCode::from(1))
        }
    }
}

fn translate_cmd(out: &Out, kind: Translation, src: &str) -> Result<ExitCode, Usage> {
    let sc_out = |r: Result<ScProof, String>| match r {
        Ok(p) => {
            out.emit(p.render_text(out.style), serde_json::to_value(&p).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("tml: {e}");
            ExitCode::from(1)
        }
    };
    Ok(match kind {
        Translation::Contrapose => sc_out(contrapose(&ScProof::from_json(src)?).map_err(|e| e.to_string())),
        Translation::Necessitate => sc_out(necessitate(&ScProof::from_json(src)?).map_err(|e| e.to_string())),
        Translation::Denecessitate => sc_out(denecessitate(&ScProof::from_json(src)?).map_err(|e| e.to_string())),
        Translation::Nd2sc => sc_out(nd_to_sc(&NdDeduction::from_json(src)?).map_err(|e| e.to_string())),
        Translation::Sc2nd => match sc_to_nd(&ScProof::from_json(src)?) {
            Ok(d) => {
                out.emit(d.render_text(out.style), serde_json::to_value(&d)?);
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("tml: {e}");
                ExitCode::from(1)
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("tml: {msg}");
            ExitCode::from(2)
        }
    }
}
