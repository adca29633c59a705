//! λ-term syntax, α/β machinery and the Gödel numeration.

mod godel;
mod parse;
mod reduce;
mod syntax;

pub use godel::{enumerate_closed_terms, godel_decode, godel_encode, identifier, identifier_index};
pub use parse::{parse, ALIASES};
pub use reduce::{
    is_normal, normalize, normalize_nameless, one_step_reducts, step, ReductionResult, ReductionStatus,
};
pub use syntax::{alpha_eq, combinators, fresh_name, Nameless, Term};
