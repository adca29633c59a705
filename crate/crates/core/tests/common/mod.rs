//! Generators and oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gml::pair::{Atom, Key, PairData, PartialPair};
use gml::term::Term;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn p1() -> PartialPair {
    PartialPair::build([0], [(vec![0], 0, 0)]).unwrap()
}

/// Every key `(a, α)` over the given atoms.
pub fn all_keys(atoms: &[u128]) -> Vec<Key> {
    let mut keys = Vec::new();
    for mask in 0u32..(1 << atoms.len()) {
        let args: Vec<Atom> = (0..atoms.len()).filter(|i| mask >> i & 1 == 1).map(|i| Atom(atoms[i])).collect();
        for &r in atoms {
            keys.push(Key::new(args.iter().copied(), Atom(r)));
        }
    }
    keys
}

/// All valid pairs on the carrier `0..n` with at most `max_entries` coded keys.
pub fn all_pairs(n: u128, max_entries: usize) -> Vec<PartialPair> {
    let atoms: Vec<u128> = (0..n).collect();
    let keys = all_keys(&atoms);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn go(
        keys: &[Key],
        atoms: &[u128],
        from: usize,
        left: usize,
        chosen: &mut Vec<(Key, Atom)>,
        out: &mut Vec<PartialPair>,
    ) {
        let data = PairData { atoms: atoms.iter().map(|&a| Atom(a)).collect(), entries: chosen.clone(), ..Default::default() };
        if let Ok(p) = data.into_pair() {
            out.push(p);
        } else {
            return;
        }
        if left == 0 {
            return;
        }
        for i in from..keys.len() {
            for &v in atoms {
                chosen.push((keys[i].clone(), Atom(v)));
                go(keys, atoms, i + 1, left - 1, chosen, out);
                chosen.pop();
            }
        }
    }
    go(&keys, &atoms, 0, max_entries, &mut chosen, &mut out);
    out
}

/// A random valid pair on `0..n` with at most `max_entries` coded keys.
pub fn random_pair(rng: &mut impl Rng, n: u128, max_entries: usize) -> PartialPair {
    let atoms: Vec<u128> = (0..n).collect();
    let mut keys = all_keys(&atoms);
    keys.shuffle(rng);
    let mut values = atoms.clone();
    values.shuffle(rng);
    let entries = rng.gen_range(0..=max_entries.min(atoms.len()));
    let data = PairData {
        atoms: atoms.iter().map(|&a| Atom(a)).collect(),
        entries: keys.into_iter().zip(values).take(entries).map(|(k, v)| (k, Atom(v))).collect(),
        ..Default::default()
    };
    data.into_pair().unwrap()
}

/// A random subpair: a subset of the atoms and of the entries that stay
/// inside it.
pub fn random_subpair(rng: &mut impl Rng, b: &PartialPair) -> PartialPair {
    let atoms: BTreeSet<Atom> = b.atoms().iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
    let entries = b
        .coding()
        .iter()
        .filter(|(k, v)| {
            k.args.iter().chain([&k.res, *v]).all(|a| atoms.contains(a))
        })
        .filter(|_| rng.gen_bool(0.7))
        .map(|(k, v)| (k.clone(), *v))
        .collect();
    PairData { atoms: atoms.into_iter().collect(), entries, ..Default::default() }.into_pair().unwrap()
}

/// Every closed term of exactly `size` nodes, binders named by depth.
pub fn closed_terms_of_size(size: usize) -> Vec<Term> {
    fn go(size: usize, depth: usize) -> Vec<Term> {
        let mut out = Vec::new();
        if size == 1 {
            out.extend((0..depth).map(|i| Term::var(format!("v{i}"))));
            return out;
        }
        for body in go(size - 1, depth + 1) {
            out.push(Term::abs(format!("v{depth}"), body));
        }
        for left in 1..size - 1 {
            for f in go(left, depth) {
                for a in go(size - 1 - left, depth) {
                    out.push(Term::app(f.clone(), a));
                }
            }
        }
        out
    }
    go(size, 0)
}

pub fn closed_terms_up_to(size: usize) -> Vec<Term> {
    (1..=size).flat_map(closed_terms_of_size).collect()
}

/// A random term of at most `size` nodes over the free names in `free`.
pub fn random_term(rng: &mut impl Rng, size: usize, free: &[&str]) -> Term {
    fn go(rng: &mut impl Rng, size: usize, scope: &mut Vec<String>) -> Term {
        let leaf = size <= 1 || rng.gen_bool(0.2);
        if leaf && !scope.is_empty() {
            return Term::var(scope.choose(rng).unwrap().clone());
        }
        if size >= 3 && rng.gen_bool(0.5) {
            let left = rng.gen_range(1..size - 1);
            let f = go(rng, left, scope);
            let a = go(rng, size - 1 - left, scope);
            return Term::app(f, a);
        }
        let x = ["x", "y", "z", "u"][rng.gen_range(0..4)].to_string();
        scope.push(x.clone());
        let body = go(rng, size.saturating_sub(1).max(1), scope);
        scope.pop();
        Term::abs(x, body)
    }
    let mut scope: Vec<String> = free.iter().map(|s| s.to_string()).collect();
    go(rng, size, &mut scope)
}

/// Pair interpretation written directly from the three clauses, with no
/// sharing or memoisation:
/// `x ↦ ρ(x)`, `MN ↦ {α : (a,α) ∈ dom c, a ⊆ N, c(a,α) ∈ M}`,
/// `λx.M ↦ {c(a,α) : (a,α) ∈ dom c, α ∈ M[x := a]}`.
pub fn naive_interpret(t: &Term, p: &PartialPair, env: &[(String, BTreeSet<Atom>)]) -> BTreeSet<Atom> {
    match t {
        Term::Var(x) => env.iter().rev().find(|(y, _)| y == x).map(|(_, s)| s.clone()).unwrap_or_default(),
        Term::App(m, n) => {
            let fm = naive_interpret(m, p, env);
            let fn_ = naive_interpret(n, p, env);
            p.coding()
                .iter()
                .filter(|(k, v)| k.args.iter().all(|a| fn_.contains(a)) && fm.contains(v))
                .map(|(k, _)| k.res)
                .collect()
        }
        Term::Abs(x, body) => {
            let mut out = BTreeSet::new();
            for (k, v) in p.coding() {
                let mut inner = env.to_vec();
                inner.push((x.clone(), k.args.iter().copied().collect()));
                if naive_interpret(body, p, &inner).contains(&k.res) {
                    out.insert(*v);
                }
            }
            out
        }
    }
}
