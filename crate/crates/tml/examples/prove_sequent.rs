//! Prove sequents in the cut-free two-sided calculus and print the proofs.

use tml::sc::{check_sc_proof, prove};
use tml::{Sequent, Style};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let goals = if args.is_empty() { vec!["=> p | ~#p".to_string(), "=> #(p | ~#p)".to_string(), "=> p | ~p".to_string()] } else { args };
    for g in goals {
        let s = Sequent::parse(&g).unwrap();
        match prove(&s) {
            Some(p) => {
                assert!(check_sc_proof(&p, false).is_ok());
                println!("{}\n{:?}\n", p.render_text(Style::Unicode), p.rule_sequence());
            }
            None => println!("{} is not provable\n", s.render(Style::Unicode)),
        }
    }
}
