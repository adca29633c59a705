use serde_json::{json, Value as Json};

use super::eval::Evaluator;
use super::witness::{extract_witness_subpair, WitnessSubpair};
use super::{approx_interpret, member, Membership};
use crate::completion::{Completion, Element};
use crate::error::{Error, Result};
use crate::pair::{pair_to_json, PartialPair};
use crate::semantics::Environment;
use crate::term::Term;

pub const DEFAULT_K_M: u32 = 2;
pub const DEFAULT_K_N: u32 = DEFAULT_K_M + 2;

/// `lhs ⊑ rhs`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Inequation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Inequation { lhs, rhs }
    }

    pub fn flipped(&self) -> Self {
        Inequation { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    /// `lhs^{B_rank} ⊆ rhs^{B_against}`.
    HoldsUpTo { rank: u32, against: u32 },
    /// `witness ∈ lhs^{B_member_rank}` but `witness ∉ rhs^{B_nonmember_bound}`.
    /// Non-membership is bounded, so this is evidence and not a refutation.
    FailsWithEvidence {
        witness: Element,
        member_rank: u32,
        nonmember_bound: u32,
        witness_subpair: Box<WitnessSubpair>,
    },
    /// The evaluation budget ran out.
    Unknown { rank: u32, reason: String },
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub inequation: Inequation,
    pub outcome: Outcome,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self.outcome, Outcome::HoldsUpTo { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self.outcome, Outcome::FailsWithEvidence { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self.outcome {
            Outcome::HoldsUpTo { .. } => "holds_up_to",
            Outcome::FailsWithEvidence { .. } => "fails_with_evidence",
            Outcome::Unknown { .. } => "unknown",
        }
    }

    pub fn witness(&self) -> Option<&Element> {
        match &self.outcome {
            Outcome::FailsWithEvidence { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// Elements print with the labels of `p`.
    pub fn to_json(&self, p: &PartialPair) -> Json {
        let head = json!({"lhs": self.inequation.lhs.to_string(), "rhs": self.inequation.rhs.to_string()});
        match &self.outcome {
            Outcome::HoldsUpTo { rank, against } => json!({
                "inequation": head,
                "kind": self.kind(),
                "rank": rank,
                "against_rank": against,
            }),
            Outcome::FailsWithEvidence { witness, member_rank, nonmember_bound, witness_subpair } => json!({
                "inequation": head,
                "kind": self.kind(),
                "witness": witness.render(p),
                "member_rank": member_rank,
                "nonmember_bound": nonmember_bound,
                "nonmembership": "bounded",
                "witness_subpair": pair_to_json(&witness_subpair.pair),
            }),
            Outcome::Unknown { rank, reason } => json!({
                "inequation": head,
                "kind": self.kind(),
                "rank": rank,
                "reason": reason,
            }),
        }
    }
}

/// Both directions of `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct EquationVerdict {
    pub forward: Verdict,
    pub backward: Verdict,
}

impl EquationVerdict {
    pub fn holds(&self) -> bool {
        self.forward.holds() && self.backward.holds()
    }

    pub fn fails(&self) -> bool {
        self.forward.fails() || self.backward.fails()
    }

    pub fn kind(&self) -> &'static str {
        if self.fails() {
            "fails_with_evidence"
        } else if self.holds() {
            "holds_up_to"
        } else {
            "unknown"
        }
    }

    pub fn to_json(&self, p: &PartialPair) -> Json {
        json!({
            "equation": {
                "lhs": self.forward.inequation.lhs.to_string(),
                "rhs": self.forward.inequation.rhs.to_string(),
            },
            "kind": self.kind(),
            "directions": [self.forward.to_json(p), self.backward.to_json(p)],
        })
    }
}

fn scan(ineq: &Inequation, c: &Completion, k_m: u32, k_n: u32) -> Result<Outcome> {
    let env = Environment::new();
    let candidates = approx_interpret(&ineq.lhs, c, &env, k_m)?;
    let ev = Evaluator::new(c, k_n);
    let rhs = ev.eval(&ineq.rhs, &Default::default())?;
    for alpha in candidates {
        if ev.member(&alpha, &rhs)? {
            continue;
        }
        let member_rank = match member(&ineq.lhs, c, &env, &alpha, k_m)? {
            Membership::Found(r) => r,
            Membership::NotFoundUpTo(_) => unreachable!("candidate taken from the approximation"),
        };
        let witness_subpair = extract_witness_subpair(&ineq.lhs, c, &env, &alpha, member_rank)?;
        return Ok(Outcome::FailsWithEvidence {
            witness: alpha,
            member_rank,
            nonmember_bound: k_n,
            witness_subpair: Box::new(witness_subpair),
        });
    }
    Ok(Outcome::HoldsUpTo { rank: k_m, against: k_n })
}

/// Looks for the least `α ∈ M^{B_{k_M}}` outside `N^{B_{k_N}}`.
pub fn check_inequation(m: &Term, n: &Term, c: &Completion, k_m: u32, k_n: u32) -> Result<Verdict> {
    if k_n < k_m {
        return Err(Error::Format(format!("k_N = {k_n} must be at least k_M = {k_m}")));
    }
    let inequation = Inequation::new(m.clone(), n.clone());
    let outcome = match scan(&inequation, c, k_m, k_n) {
        Err(Error::EvaluationBudget(steps)) => {
            Outcome::Unknown { rank: k_m, reason: format!("evaluation budget of {steps} steps exhausted") }
        }
        other => other?,
    };
    Ok(Verdict { inequation, outcome })
}

/// `M ⊑ N` and `N ⊑ M`, checked concurrently.
pub fn check_equation(m: &Term, n: &Term, c: &Completion, k_m: u32, k_n: u32) -> Result<EquationVerdict> {
    let (forward, backward) =
        rayon::join(|| check_inequation(m, n, c, k_m, k_n), || check_inequation(n, m, c, k_m, k_n));
    Ok(EquationVerdict { forward: forward?, backward: backward? })
}
