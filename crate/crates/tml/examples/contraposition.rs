//! Turn a proof of Γ ⇒ Δ into a proof of ¬Δ ⇒ ¬Γ.

use tml::sc::{check_sc_proof, contrapose, contrapose_cut_free, prove};
use tml::{Sequent, Style};

fn main() {
    let s = Sequent::parse("#p, q => p & q").unwrap();
    let p = prove(&s).unwrap();
    let c = contrapose(&p).unwrap();
    check_sc_proof(&c, true).unwrap();
    println!("{}\n", c.render_text(Style::Unicode));
    println!("{} nodes, cut-free: {}", c.size(), c.is_cut_free());

    let direct = contrapose_cut_free(&p).unwrap();
    println!("searched directly: {} nodes, cut-free: {}", direct.size(), direct.is_cut_free());
}
