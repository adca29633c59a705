//! Interpretation of λ-terms inside a finite partial pair.
//!
//! ```text
//! x^A_ρ    = ρ(x)
//! (MN)^A_ρ = {α : (a,α) ∈ dom(c_A), a ⊆ N^A_ρ, c_A(a,α) ∈ M^A_ρ}
//! (λx.M)^A_ρ = {c_A(a,α) : (a,α) ∈ dom(c_A), α ∈ M^A_{ρ[x:=a]}}
//! ```
//!
//! Both clauses only range over `dom(c_A)`, so interpretation is plain
//! structural recursion and always terminates.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::pair::{Atom, EnvFile, PartialPair};
use crate::term::Term;

/// A finite-support valuation of variables in sets; unbound variables
/// denote the empty set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Environment<T: Ord> {
    map: BTreeMap<String, BTreeSet<T>>,
}

impl<T: Ord> Default for Environment<T> {
    fn default() -> Self {
        Environment { map: BTreeMap::new() }
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for Environment<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.map.iter()).finish()
    }
}

impl<T: Ord + Clone> Environment<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, x: &str) -> BTreeSet<T> {
        self.map.get(x).cloned().unwrap_or_default()
    }

    pub fn lookup(&self, x: &str) -> Option<&BTreeSet<T>> {
        self.map.get(x)
    }

    /// `ρ[x := set]`
    pub fn bind(&self, x: &str, set: BTreeSet<T>) -> Self {
        let mut next = self.clone();
        next.insert(x, set);
        next
    }

    pub fn insert(&mut self, x: &str, set: BTreeSet<T>) {
        if set.is_empty() {
            self.map.remove(x);
        } else {
            self.map.insert(x.to_string(), set);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BTreeSet<T>)> {
        self.map.iter()
    }

    /// Keeps only the bindings of `vars`.
    pub fn restrict_to(&self, vars: &BTreeSet<String>) -> Self {
        Environment {
            map: self.map.iter().filter(|(x, _)| vars.contains(*x)).map(|(x, s)| (x.clone(), s.clone())).collect(),
        }
    }

    /// Pointwise intersection with `keep`.
    pub fn filter(&self, keep: impl Fn(&T) -> bool) -> Self {
        let mut out = Environment::new();
        for (x, s) in &self.map {
            out.insert(x, s.iter().filter(|e| keep(e)).cloned().collect());
        }
        out
    }

    pub fn map<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> Environment<U> {
        Environment { map: self.map.iter().map(|(x, s)| (x.clone(), s.iter().map(&f).collect())).collect() }
    }

    /// `ρ ⊆ σ` pointwise.
    pub fn is_below(&self, other: &Self) -> bool {
        self.map.iter().all(|(x, s)| other.map.get(x).is_some_and(|t| s.is_subset(t)))
    }
}

impl<T: Ord + Clone> FromIterator<(String, BTreeSet<T>)> for Environment<T> {
    fn from_iter<I: IntoIterator<Item = (String, BTreeSet<T>)>>(iter: I) -> Self {
        let mut env = Environment::new();
        for (x, s) in iter {
            env.insert(&x, s);
        }
        env
    }
}

/// Resolves an environment file against the labels of `p`. Labels may also
/// be plain atom numbers.
pub fn environment_for_pair(file: &EnvFile, p: &PartialPair) -> Result<Environment<Atom>> {
    let by_label: BTreeMap<String, Atom> = p.atoms().iter().map(|&a| (p.label(a), a)).collect();
    let mut env = Environment::new();
    for entry in &file.env {
        let mut set = BTreeSet::new();
        for label in &entry.atoms {
            let atom = by_label
                .get(label)
                .copied()
                .or_else(|| label.parse::<u128>().ok().map(Atom).filter(|a| p.contains(*a)))
                .ok_or_else(|| Error::EnvironmentOutsideCarrier { var: entry.var.clone(), element: label.clone() })?;
            set.insert(atom);
        }
        let mut merged = env.get(&entry.var);
        merged.extend(set);
        env.insert(&entry.var, merged);
    }
    Ok(env)
}

fn check_carrier(p: &PartialPair, env: &Environment<Atom>) -> Result<()> {
    for (x, set) in env.iter() {
        if let Some(a) = set.iter().find(|a| !p.contains(**a)) {
            return Err(Error::EnvironmentOutsideCarrier { var: x.clone(), element: p.label(*a) });
        }
    }
    Ok(())
}

struct Interpreter<'p> {
    pair: &'p PartialPair,
    free: HashMap<*const Term, BTreeSet<String>>,
    memo: HashMap<(*const Term, Environment<Atom>), BTreeSet<Atom>>,
}

impl Interpreter<'_> {
    fn free_vars(&mut self, t: &Term) -> BTreeSet<String> {
        self.free.entry(t as *const Term).or_insert_with(|| t.free_vars()).clone()
    }

    fn eval(&mut self, t: &Term, env: &Environment<Atom>) -> BTreeSet<Atom> {
        if let Term::Var(x) = t {
            return env.get(x);
        }
        let vars = self.free_vars(t);
        let key = (t as *const Term, env.restrict_to(&vars));
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let env = &key.1;
        let out = match t {
            Term::Var(_) => unreachable!(),
            Term::App(m, n) => {
                let fun = self.eval(m, env);
                let arg = self.eval(n, env);
                self.pair
                    .coding()
                    .iter()
                    .filter(|(k, v)| fun.contains(v) && k.args.iter().all(|a| arg.contains(a)))
                    .map(|(k, _)| k.res)
                    .collect()
            }
            Term::Abs(x, body) => {
                let mut out = BTreeSet::new();
                for (k, v) in self.pair.coding() {
                    let inner = env.bind(x, k.args.iter().copied().collect());
                    if self.eval(body, &inner).contains(&k.res) {
                        out.insert(*v);
                    }
                }
                out
            }
        };
        self.memo.insert(key, out.clone());
        out
    }
}

/// `t^p_ρ`. Fails when `ρ` mentions an atom outside the carrier.
pub fn interpret(t: &Term, p: &PartialPair, env: &Environment<Atom>) -> Result<BTreeSet<Atom>> {
    check_carrier(p, env)?;
    let mut it = Interpreter { pair: p, free: HashMap::new(), memo: HashMap::new() };
    Ok(it.eval(t, env))
}

/// Interpretation of a closed term (or of a term with all free variables
/// denoting the empty set).
pub fn interpret_closed(t: &Term, p: &PartialPair) -> BTreeSet<Atom> {
    interpret(t, p, &Environment::new()).expect("empty environment")
}

/// `{α : ∃a ⊆ (λx.xx)^p, (a,α) ∈ dom(c_p), c_p(a,α) ∈ a}`: the
/// interpretation of Ω, computed without evaluating the application.
pub fn omega_characterization(p: &PartialPair) -> BTreeSet<Atom> {
    let delta = interpret_closed(&crate::term::combinators::self_apply(), p);
    p.coding()
        .iter()
        .filter(|(k, v)| k.args.contains(v) && k.args.iter().all(|a| delta.contains(a)))
        .map(|(k, _)| k.res)
        .collect()
}
