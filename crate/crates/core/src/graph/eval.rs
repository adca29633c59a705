//! Lazy evaluation of `t^{B_k}`, the interpretation of a term in the
//! rank-`k` restriction of a completion.
//!
//! Materialising `B_k` is out of reach beyond tiny ranks (`|E_3|` of the
//! one-atom free pair has about 10^7 digits), but membership in `t^{B_k}`
//! only ever inspects the decompositions of the element being tested. An
//! abstraction therefore evaluates to a closure whose members are decided
//! on demand, and an application whose function is a closure reduces, by
//! monotonicity in the argument, to one evaluation of the body with the
//! argument cut down to the admissible ranks:
//!
//! ```text
//! (λx.P)·N at cap r = {α : (a,α) ∈ dom c_A, a ⊆ N, α ∈ P[x:=a]}
//!                   ∪ (P[x := N ∩ E_{r-1}] ∩ E_{r-1})        (r ≥ 1)
//! ```
//!
//! Only [`Evaluator::enumerate`] of a closure visits subsets of `E_{r-1}`.

use std::cell::Cell;
use std::collections::BTreeSet;
use std::rc::Rc;

use crate::completion::{Completion, Element};
use crate::error::{Error, Result};
use crate::semantics::Environment;
use crate::term::Term;

/// Default number of evaluation steps before giving up.
pub const DEFAULT_FUEL: u64 = 20_000_000;

#[derive(Clone)]
pub(crate) enum Value<'t> {
    Set(Rc<BTreeSet<Element>>),
    Lam(Rc<Closure<'t>>),
    Union(Rc<[Value<'t>]>),
}

pub(crate) struct Closure<'t> {
    pub param: &'t str,
    pub body: &'t Term,
    pub env: Env<'t>,
    /// Members have rank at most `cap`.
    pub cap: u32,
}

#[derive(Clone, Default)]
pub(crate) struct Env<'t>(Rc<Vec<(&'t str, Value<'t>)>>);

impl<'t> Env<'t> {
    fn get(&self, x: &str) -> Option<&Value<'t>> {
        self.0.iter().rev().find(|(y, _)| *y == x).map(|(_, v)| v)
    }

    pub fn bind(&self, x: &'t str, v: Value<'t>) -> Env<'t> {
        let mut next: Vec<_> = self.0.iter().filter(|(y, _)| *y != x).cloned().collect();
        next.push((x, v));
        Env(Rc::new(next))
    }
}

impl Value<'_> {
    pub fn set(s: BTreeSet<Element>) -> Self {
        Value::Set(Rc::new(s))
    }

    fn empty() -> Self {
        Value::set(BTreeSet::new())
    }
}

/// Evaluates terms in `B_k` for a fixed completion and rank.
pub struct Evaluator<'t> {
    completion: &'t Completion,
    k: u32,
    budget: u64,
    fuel: Cell<u64>,
}

impl<'t> Evaluator<'t> {
    pub fn new(completion: &'t Completion, k: u32) -> Self {
        Evaluator { completion, k, budget: DEFAULT_FUEL, fuel: Cell::new(DEFAULT_FUEL) }
    }

    pub fn with_fuel(mut self, fuel: u64) -> Self {
        self.budget = fuel;
        self.fuel = Cell::new(fuel);
        self
    }

    pub fn rank(&self) -> u32 {
        self.k
    }

    pub fn completion(&self) -> &'t Completion {
        self.completion
    }

    fn burn(&self) -> Result<()> {
        let left = self.fuel.get();
        if left == 0 {
            return Err(Error::EvaluationBudget(self.budget));
        }
        self.fuel.set(left - 1);
        Ok(())
    }

    /// The user environment cut down to `E_k`.
    pub(crate) fn env(&self, env: &'t Environment<Element>) -> Env<'t> {
        let mut out = Env::default();
        for (x, s) in env.iter() {
            let kept: BTreeSet<Element> = s.iter().filter(|e| e.rank() <= self.k).cloned().collect();
            out = out.bind(x, Value::set(kept));
        }
        out
    }

    pub(crate) fn eval(&self, t: &'t Term, env: &Env<'t>) -> Result<Value<'t>> {
        self.burn()?;
        Ok(match t {
            Term::Var(x) => env.get(x).cloned().unwrap_or_else(Value::empty),
            Term::Abs(x, body) => Value::Lam(Rc::new(Closure { param: x, body, env: env.clone(), cap: self.k })),
            Term::App(m, n) => {
                let f = self.eval(m, env)?;
                let a = self.eval(n, env)?;
                self.apply(&f, &a)?
            }
        })
    }

    fn apply(&self, f: &Value<'t>, arg: &Value<'t>) -> Result<Value<'t>> {
        self.burn()?;
        match f {
            Value::Set(s) => {
                let mut out = BTreeSet::new();
                for u in s.iter() {
                    if let Some((a, alpha)) = self.completion.decode(u) {
                        if !out.contains(&alpha) && self.all_members(&a, arg)? {
                            out.insert(alpha);
                        }
                    }
                }
                Ok(Value::set(out))
            }
            Value::Union(parts) => {
                let parts = parts.iter().map(|p| self.apply(p, arg)).collect::<Result<Vec<_>>>()?;
                Ok(Value::Union(parts.into()))
            }
            Value::Lam(lam) => {
                let mut coded = BTreeSet::new();
                for key in self.completion.pair().coding().keys() {
                    let res = Element::base(key.res);
                    if coded.contains(&res) {
                        continue;
                    }
                    let a: BTreeSet<Element> = key.args.iter().map(|&x| Element::base(x)).collect();
                    if self.all_members(&a, arg)? && self.member_under(lam, a, &res)? {
                        coded.insert(res);
                    }
                }
                if lam.cap == 0 {
                    return Ok(Value::set(coded));
                }
                let cut = self.restrict(arg, lam.cap - 1);
                let body = self.eval(lam.body, &lam.env.bind(lam.param, cut))?;
                Ok(Value::Union(vec![Value::set(coded), self.restrict(&body, lam.cap - 1)].into()))
            }
        }
    }

    /// `v ∩ E_r`
    pub(crate) fn restrict(&self, v: &Value<'t>, r: u32) -> Value<'t> {
        match v {
            Value::Set(s) => {
                if s.iter().all(|e| e.rank() <= r) {
                    v.clone()
                } else {
                    Value::set(s.iter().filter(|e| e.rank() <= r).cloned().collect())
                }
            }
            Value::Lam(lam) if lam.cap <= r => v.clone(),
            Value::Lam(lam) => Value::Lam(Rc::new(Closure {
                param: lam.param,
                body: lam.body,
                env: lam.env.clone(),
                cap: r,
            })),
            Value::Union(parts) => Value::Union(parts.iter().map(|p| self.restrict(p, r)).collect()),
        }
    }

    fn all_members<'a>(&self, a: impl IntoIterator<Item = &'a Element>, v: &Value<'t>) -> Result<bool> {
        for x in a {
            if !self.member(x, v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `α ∈ body[param := a]`
    fn member_under(&self, lam: &Closure<'t>, a: BTreeSet<Element>, alpha: &Element) -> Result<bool> {
        let inner = self.eval(lam.body, &lam.env.bind(lam.param, Value::set(a)))?;
        self.member(alpha, &inner)
    }

    pub(crate) fn member(&self, e: &Element, v: &Value<'t>) -> Result<bool> {
        self.burn()?;
        match v {
            Value::Set(s) => Ok(s.contains(e)),
            Value::Union(parts) => {
                for p in parts.iter() {
                    if self.member(e, p)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Value::Lam(lam) => {
                if e.rank() > lam.cap {
                    return Ok(false);
                }
                match self.completion.decode(e) {
                    Some((a, alpha)) => self.member_under(lam, a.into_iter().collect(), &alpha),
                    None => Ok(false),
                }
            }
        }
    }

    /// Every member of `v`, as an explicit set.
    pub(crate) fn enumerate(&self, v: &Value<'t>) -> Result<BTreeSet<Element>> {
        self.burn()?;
        match v {
            Value::Set(s) => Ok((**s).clone()),
            Value::Union(parts) => {
                let mut out = BTreeSet::new();
                for p in parts.iter() {
                    out.extend(self.enumerate(p)?);
                }
                Ok(out)
            }
            Value::Lam(lam) => {
                let mut out = BTreeSet::new();
                for (key, &value) in self.completion.pair().coding() {
                    let a = key.args.iter().map(|&x| Element::base(x)).collect();
                    if self.member_under(lam, a, &Element::base(key.res))? {
                        out.insert(Element::base(value));
                    }
                }
                if lam.cap == 0 {
                    return Ok(out);
                }
                let below: Vec<Element> = self.completion.elements_up_to(lam.cap - 1)?.into_iter().collect();
                let n = below.len();
                if n >= 63 || (1u64 << n) > self.completion.ceiling() {
                    return Err(Error::CeilingExceeded {
                        predicted: format!("2^{n} argument sets"),
                        ceiling: self.completion.ceiling(),
                    });
                }
                for mask in 0u64..1 << n {
                    let a: Vec<Element> =
                        below.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x.clone()).collect();
                    let inner = self.eval(lam.body, &lam.env.bind(lam.param, Value::set(a.iter().cloned().collect())))?;
                    for alpha in self.enumerate(&self.restrict(&inner, lam.cap - 1))? {
                        out.insert(self.completion.apply_coding(&a, &alpha));
                    }
                }
                Ok(out)
            }
        }
    }

    /// Some `a ⊆ arg` with `c(a, e) ∈ f`, preferring small ones.
    pub(crate) fn find_argument(&self, f: &Value<'t>, arg: &Value<'t>, e: &Element) -> Result<Option<Vec<Element>>> {
        if let Some(atom) = e.as_base() {
            for (key, &value) in self.completion.pair().coding() {
                if key.res != atom {
                    continue;
                }
                let a: BTreeSet<Element> = key.args.iter().map(|&x| Element::base(x)).collect();
                if self.all_members(&a, arg)? && self.member(&Element::base(value), f)? {
                    return Ok(Some(a.into_iter().collect()));
                }
            }
        }
        match f {
            Value::Set(s) => {
                for u in s.iter() {
                    if let Some((a, alpha)) = self.completion.decode(u) {
                        if &alpha == e && self.all_members(&a, arg)? {
                            return Ok(Some(a));
                        }
                    }
                }
                Ok(None)
            }
            Value::Union(parts) => {
                for p in parts.iter() {
                    if let Some(a) = self.find_argument(p, arg, e)? {
                        return Ok(Some(a));
                    }
                }
                Ok(None)
            }
            Value::Lam(lam) => {
                if lam.cap == 0 || e.rank() > lam.cap - 1 {
                    return Ok(None);
                }
                let mut a = self.enumerate(&self.restrict(arg, lam.cap - 1))?;
                if !self.member_under(lam, a.clone(), e)? {
                    return Ok(None);
                }
                for x in a.clone() {
                    a.remove(&x);
                    if !self.member_under(lam, a.clone(), e)? {
                        a.insert(x);
                    }
                }
                Ok(Some(a.into_iter().collect()))
            }
        }
    }
}
