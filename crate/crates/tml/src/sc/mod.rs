//! The cut-free two-sided calculus for TML.

mod proof;
mod search;
mod soundness;
mod transform;

pub use proof::{check_sc_proof, Additions, ScProof, ScRule, Side};
pub use search::{prove, provable};
pub(crate) use transform::first_cut;
pub use transform::{bot_lemma, contrapose, contrapose_cut_free, cut, denecessitate, dn_elim, dn_intro, necessitate, weaken, TransformError};
pub use soundness::{rule_soundness, schema_soundness, RuleSchema, SoundnessReport};
