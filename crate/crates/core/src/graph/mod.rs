//! Interpretation in completions, approximated along the chain
//! `B_0 ≤ B_1 ≤ ... ≤ E_A` of rank restrictions.
//!
//! Membership in `t^{E_A}` is semi-decidable: a member shows up in some
//! `t^{B_k}`, and that finite evidence can be shrunk to a finite subpair in
//! which the member is re-derived. Non-membership is only ever reported
//! relative to a rank bound.

mod eval;
mod verdict;
mod witness;

use std::collections::BTreeSet;

use crate::completion::{Completion, Element};
use crate::error::Result;
use crate::semantics::Environment;
use crate::term::Term;

pub use eval::{Evaluator, DEFAULT_FUEL};
pub use verdict::{check_equation, check_inequation, EquationVerdict, Inequation, Outcome, Verdict, DEFAULT_K_M, DEFAULT_K_N};
pub use witness::{extract_witness_subpair, WitnessSubpair};

/// Result of a bounded membership search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Least rank at which the element enters the approximation.
    Found(u32),
    /// Absent from every approximation up to this rank.
    NotFoundUpTo(u32),
}

/// `t^{B_k}_ρ` over completion elements, with `ρ` cut down to rank `k`.
pub fn approx_interpret(t: &Term, c: &Completion, env: &Environment<Element>, k: u32) -> Result<BTreeSet<Element>> {
    let ev = Evaluator::new(c, k);
    let v = ev.eval(t, &ev.env(env))?;
    ev.enumerate(&v)
}

/// Whether `e ∈ t^{B_k}_ρ`, without enumerating the interpretation.
pub fn approx_contains(t: &Term, c: &Completion, env: &Environment<Element>, k: u32, e: &Element) -> Result<bool> {
    if e.rank() > k {
        return Ok(false);
    }
    let ev = Evaluator::new(c, k);
    let v = ev.eval(t, &ev.env(env))?;
    ev.member(e, &v)
}

/// Least `k' ≤ max_rank` with `e ∈ t^{B_k'}_ρ`.
pub fn member(t: &Term, c: &Completion, env: &Environment<Element>, e: &Element, max_rank: u32) -> Result<Membership> {
    for k in e.rank()..=max_rank {
        if approx_contains(t, c, env, k, e)? {
            return Ok(Membership::Found(k));
        }
    }
    Ok(Membership::NotFoundUpTo(max_rank))
}
