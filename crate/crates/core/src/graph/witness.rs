use std::collections::{BTreeMap, BTreeSet};

use super::eval::{Env, Evaluator, Value};
use super::{member, Membership};
use crate::completion::{Completion, Element};
use crate::error::{Error, Result};
use crate::pair::{Atom, Key, PairData, PartialPair};
use crate::semantics::{interpret, Environment};
use crate::term::Term;

/// A finite subpair `A' ≤ E_A` in which a member of `t^{E_A}` is re-derived
/// by plain pair interpretation.
///
/// Atoms of `A` keep their numbers; the other elements of `A'` are numbered
/// after the largest atom of `A`, in (rank, structural) order. Labels are the
/// element syntax.
#[derive(Clone, Debug)]
pub struct WitnessSubpair {
    pub pair: PartialPair,
    pub element: Element,
    pub atom: Atom,
    elements: BTreeMap<Atom, Element>,
}

impl WitnessSubpair {
    pub fn element_of(&self, a: Atom) -> Option<&Element> {
        self.elements.get(&a)
    }

    pub fn elements(&self) -> impl Iterator<Item = (&Atom, &Element)> {
        self.elements.iter()
    }

    /// `ρ ∩ A'` as an environment over the subpair's atoms.
    pub fn environment(&self, env: &Environment<Element>) -> Environment<Atom> {
        let ids: BTreeMap<&Element, Atom> = self.elements.iter().map(|(a, e)| (e, *a)).collect();
        env.iter()
            .map(|(x, s)| (x.clone(), s.iter().filter_map(|e| ids.get(e).copied()).collect()))
            .collect()
    }

    /// Re-derives the element by interpreting `t` in the subpair.
    pub fn verify(&self, t: &Term, env: &Environment<Element>) -> bool {
        interpret(t, &self.pair, &self.environment(env)).is_ok_and(|s| s.contains(&self.atom))
    }

    /// Whether the subpair sits inside `E_A`: its atoms are elements of the
    /// completion and its coding agrees with `c_E`.
    pub fn is_below_completion(&self, c: &Completion) -> bool {
        self.elements.values().all(|e| c.validate_element(e).is_ok())
            && self.pair.coding().iter().all(|(key, v)| {
                let args: Vec<Element> = key.args.iter().map(|a| self.elements[a].clone()).collect();
                c.apply_coding(&args, &self.elements[&key.res]) == self.elements[v]
            })
    }
}

#[derive(Default)]
struct Builder {
    elements: BTreeSet<Element>,
    keys: BTreeMap<(Vec<Element>, Element), Element>,
}

impl Builder {
    fn key(&mut self, args: Vec<Element>, res: Element, value: Element) {
        self.elements.extend(args.iter().cloned());
        self.elements.insert(res.clone());
        self.elements.insert(value.clone());
        self.keys.insert((args, res), value);
    }
}

fn collect<'t>(ev: &Evaluator<'t>, t: &'t Term, env: &Env<'t>, e: &Element, out: &mut Builder) -> Result<()> {
    match t {
        Term::Var(_) => {
            out.elements.insert(e.clone());
        }
        Term::Abs(x, body) => {
            let (args, res) = ev.completion().decode(e).expect("abstraction members are coded");
            out.key(args.clone(), res.clone(), e.clone());
            let inner = env.bind(x, Value::set(args.into_iter().collect()));
            collect(ev, body, &inner, &res, out)?;
        }
        Term::App(m, n) => {
            let f = ev.eval(m, env)?;
            let a = ev.eval(n, env)?;
            let args = ev.find_argument(&f, &a, e)?.expect("application members have an argument set");
            let u = ev.completion().apply_coding(&args, e);
            out.key(args.clone(), e.clone(), u.clone());
            collect(ev, m, env, &u, out)?;
            for d in &args {
                collect(ev, n, env, d, out)?;
            }
        }
    }
    Ok(())
}

/// A finite `A' ≤ E_A` with `e ∈ t^{A'}_{ρ∩A'}`, built by following how
/// `e` enters the least approximation containing it: a variable contributes
/// `{e}`; an abstraction member `c(b, β)` contributes its key and a witness
/// for `β` under `x := b`; an application member `α` contributes a key
/// `(a, α)` with `a` drawn from the argument and witnesses for `c(a, α)` in
/// the function and for every member of `a` in the argument.
pub fn extract_witness_subpair(
    t: &Term,
    c: &Completion,
    env: &Environment<Element>,
    e: &Element,
    k: u32,
) -> Result<WitnessSubpair> {
    let k = match member(t, c, env, e, k)? {
        Membership::Found(k) => k,
        Membership::NotFoundUpTo(k) => return Err(Error::NotFound { element: e.render(c.pair()), bound: k }),
    };
    let ev = Evaluator::new(c, k);
    let mut out = Builder::default();
    collect(&ev, t, &ev.env(env), e, &mut out)?;
    out.elements.insert(e.clone());

    let a = c.pair();
    let next = a.atoms().iter().next_back().map_or(0, |x| x.0 + 1);
    let mut order: Vec<&Element> = out.elements.iter().filter(|x| !x.is_base()).collect();
    order.sort_by(|x, y| x.rank().cmp(&y.rank()).then_with(|| x.cmp(y)));
    let mut ids: BTreeMap<Element, Atom> = BTreeMap::new();
    for x in out.elements.iter().filter(|x| x.is_base()) {
        ids.insert(x.clone(), x.as_base().unwrap());
    }
    for (i, x) in order.into_iter().enumerate() {
        ids.insert(x.clone(), Atom(next + i as u128));
    }
    let data = PairData {
        atoms: ids.values().copied().collect(),
        entries: out
            .keys
            .iter()
            .map(|((args, res), v)| (Key::new(args.iter().map(|x| ids[x]), ids[res]), ids[v]))
            .collect(),
        labels: ids.iter().map(|(x, id)| (*id, x.render(a))).collect(),
    };
    let pair = data.into_pair().expect("keys of an injective coding");
    let witness = WitnessSubpair {
        pair,
        element: e.clone(),
        atom: ids[e],
        elements: ids.into_iter().map(|(x, id)| (id, x)).collect(),
    };
    assert!(witness.verify(t, env), "witness for {e} in {t} does not re-derive the element");
    Ok(witness)
}
