//! From a proof of ⇒ ψ to one of ⇒ □ψ, and back.

use tml::sc::{check_sc_proof, denecessitate, necessitate, prove};
use tml::{Sequent, Style};

fn main() {
    let p = prove(&Sequent::parse("=> ~(#p & ~p)").unwrap()).unwrap();
    let boxed = necessitate(&p).unwrap();
    check_sc_proof(&boxed, true).unwrap();
    println!("{}\n", boxed.render_text(Style::Unicode));
    let back = denecessitate(&boxed).unwrap();
    println!("recovered: {}", back.sequent.render(Style::Unicode));
}
