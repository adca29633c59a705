//! Leftmost-outermost β-reduction on the locally nameless form.

use super::syntax::{Nameless, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionStatus {
    NormalForm,
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub status: ReductionStatus,
    pub term: Term,
    pub steps: usize,
}

fn shift(t: &Nameless, by: usize, cutoff: usize) -> Nameless {
    match t {
        Nameless::Bound(i) if *i >= cutoff => Nameless::Bound(i + by),
        Nameless::Bound(_) | Nameless::Free(_) => t.clone(),
        Nameless::Abs(h, b) => Nameless::Abs(h.clone(), Box::new(shift(b, by, cutoff + 1))),
        Nameless::App(f, a) => Nameless::App(Box::new(shift(f, by, cutoff)), Box::new(shift(a, by, cutoff))),
    }
}

/// `body[0 := arg]` with the outer binder removed.
fn instantiate(body: &Nameless, arg: &Nameless) -> Nameless {
    fn go(t: &Nameless, arg: &Nameless, depth: usize) -> Nameless {
        match t {
            Nameless::Bound(i) if *i == depth => shift(arg, depth, 0),
            Nameless::Bound(i) if *i > depth => Nameless::Bound(i - 1),
            Nameless::Bound(_) | Nameless::Free(_) => t.clone(),
            Nameless::Abs(h, b) => Nameless::Abs(h.clone(), Box::new(go(b, arg, depth + 1))),
            Nameless::App(f, a) => Nameless::App(Box::new(go(f, arg, depth)), Box::new(go(a, arg, depth))),
        }
    }
    go(body, arg, 0)
}

/// One leftmost-outermost step, or `None` on a normal form.
pub fn step(t: &Nameless) -> Option<Nameless> {
    match t {
        Nameless::App(f, a) => {
            if let Nameless::Abs(_, body) = &**f {
                return Some(instantiate(body, a));
            }
            if let Some(f2) = step(f) {
                return Some(Nameless::App(Box::new(f2), a.clone()));
            }
            step(a).map(|a2| Nameless::App(f.clone(), Box::new(a2)))
        }
        Nameless::Abs(h, b) => step(b).map(|b2| Nameless::Abs(h.clone(), Box::new(b2))),
        _ => None,
    }
}

/// Every one-step reduct, one per redex, in leftmost-outermost order.
pub fn one_step_reducts(t: &Nameless) -> Vec<Nameless> {
    let mut out = Vec::new();
    match t {
        Nameless::App(f, a) => {
            if let Nameless::Abs(_, body) = &**f {
                out.push(instantiate(body, a));
            }
            for f2 in one_step_reducts(f) {
                out.push(Nameless::App(Box::new(f2), a.clone()));
            }
            for a2 in one_step_reducts(a) {
                out.push(Nameless::App(f.clone(), Box::new(a2)));
            }
        }
        Nameless::Abs(h, b) => {
            for b2 in one_step_reducts(b) {
                out.push(Nameless::Abs(h.clone(), Box::new(b2)));
            }
        }
        _ => {}
    }
    out
}

pub fn is_normal(t: &Nameless) -> bool {
    step(t).is_none()
}

/// Performs at most `budget` leftmost-outermost β-steps.
pub fn normalize(t: &Term, budget: usize) -> ReductionResult {
    normalize_nameless(t.to_nameless(), budget)
}

pub fn normalize_nameless(mut current: Nameless, budget: usize) -> ReductionResult {
    let mut steps = 0;
    loop {
        match step(&current) {
            None => {
                return ReductionResult { status: ReductionStatus::NormalForm, term: current.to_named(), steps }
            }
            Some(_) if steps == budget => {
                return ReductionResult { status: ReductionStatus::BudgetExceeded, term: current.to_named(), steps }
            }
            Some(next) => {
                current = next;
                steps += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse::parse;
    use crate::term::syntax::{alpha_eq, combinators::*};

    fn nf(text: &str, budget: usize) -> ReductionResult {
        normalize(&parse(text).unwrap(), budget)
    }

    #[test]
    fn identity_applied_to_itself() {
        let r = nf("I I", 10);
        assert_eq!(r.status, ReductionStatus::NormalForm);
        assert_eq!(r.steps, 1);
        assert!(alpha_eq(&r.term, &identity()));
    }

    #[test]
    fn omega_exhausts_budget() {
        let r = nf("Omega", 10);
        assert_eq!(r.status, ReductionStatus::BudgetExceeded);
        assert_eq!(r.steps, 10);
        assert!(alpha_eq(&r.term, &omega()));
    }

    #[test]
    fn k_reduction() {
        let r = nf("T a b", 10);
        assert_eq!(r.status, ReductionStatus::NormalForm);
        assert_eq!(r.term, Term::var("a"));
        assert_eq!(r.steps, 2);
    }

    #[test]
    fn zero_budget() {
        assert_eq!(nf("I I", 0).status, ReductionStatus::BudgetExceeded);
        assert_eq!(nf("x", 0).status, ReductionStatus::NormalForm);
    }

    #[test]
    fn normal_order_discards_divergent_argument() {
        let r = nf("F Omega I", 10);
        assert_eq!(r.status, ReductionStatus::NormalForm);
        assert!(alpha_eq(&r.term, &identity()));
    }

    #[test]
    fn capture_avoidance() {
        // (\x.\y.x) y  →  \y'.y
        let r = nf("(\\x y.x) y", 5);
        let expected = Term::abs("z", Term::var("y"));
        assert!(alpha_eq(&r.term, &expected), "{}", r.term);
        assert!(r.term.free_vars().contains("y"));
    }

    #[test]
    fn reducts_enumerate_every_redex() {
        let t = parse("(I I) (I I)").unwrap().to_nameless();
        assert_eq!(one_step_reducts(&t).len(), 2);
        let t = parse("(\\x.x x) (I I)").unwrap().to_nameless();
        assert_eq!(one_step_reducts(&t).len(), 2);
        assert!(one_step_reducts(&parse("\\x.x").unwrap().to_nameless()).is_empty());
    }

    #[test]
    fn s_k_k_is_identity() {
        let r = nf("(\\x y z.x z (y z)) T T", 20);
        assert_eq!(r.status, ReductionStatus::NormalForm);
        assert!(alpha_eq(&r.term, &identity()));
    }
}
