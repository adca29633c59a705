//! Finite partial pairs: a carrier of atoms with a partial injective coding
//! `c : A* × A ⇀ A`, the subpair order, unions, morphisms, automorphism
//! groups and orbits.

mod closure;
mod json;
mod morphism;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub use closure::{generate_subgraphmodel, Coding, GeneratedSubmodel};
pub use json::{
    environment_from_json, pair_from_json, pair_to_json, EnvEntry, EnvFile, PairEntry, PairFile,
};
pub use morphism::{Morphism, DEFAULT_AUTOMORPHISM_BOUND};

/// An element of a pair's carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(pub u128);

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u128> for Atom {
    fn from(n: u128) -> Self {
        Atom(n)
    }
}

/// A point `(a, α)` of `A* × A`; `args` is kept sorted and duplicate free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub args: Vec<Atom>,
    pub res: Atom,
}

impl Key {
    pub fn new(args: impl IntoIterator<Item = Atom>, res: Atom) -> Key {
        let args: BTreeSet<Atom> = args.into_iter().collect();
        Key { args: args.into_iter().collect(), res }
    }

    fn atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.args.iter().copied().chain(std::iter::once(self.res))
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("({")?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}},{})", self.res)
    }
}

/// One failure of the partial pair invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateAtom(Atom),
    /// The same key is given two different values.
    NotAFunction { key: Key, values: (Atom, Atom) },
    /// Two keys share a value.
    NotInjective { keys: (Key, Key), value: Atom },
    /// A key or value mentions an atom outside the carrier.
    OutsideCarrier { key: Key, atom: Atom },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateAtom(a) => write!(f, "atom {a} listed twice"),
            Violation::NotAFunction { key, values } => {
                write!(f, "key {key} coded as both {} and {}", values.0, values.1)
            }
            Violation::NotInjective { keys, value } => {
                write!(f, "keys {} and {} share the value {value}", keys.0, keys.1)
            }
            Violation::OutsideCarrier { key, atom } => {
                write!(f, "entry at {key} mentions {atom}, which is not in the carrier")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Unchecked pair data as read from a file or built by hand.
#[derive(Clone, Debug, Default)]
pub struct PairData {
    pub atoms: Vec<Atom>,
    pub entries: Vec<(Key, Atom)>,
    pub labels: BTreeMap<Atom, String>,
}

impl PairData {
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut carrier = BTreeSet::new();
        for &a in &self.atoms {
            if !carrier.insert(a) {
                violations.push(Violation::DuplicateAtom(a));
            }
        }
        let mut by_key: BTreeMap<&Key, Atom> = BTreeMap::new();
        let mut by_value: BTreeMap<Atom, &Key> = BTreeMap::new();
        for (key, value) in &self.entries {
            for atom in key.atoms().chain(std::iter::once(*value)) {
                if !carrier.contains(&atom) {
                    violations.push(Violation::OutsideCarrier { key: key.clone(), atom });
                    break;
                }
            }
            match by_key.get(key) {
                Some(&v) if v != *value => {
                    violations.push(Violation::NotAFunction { key: key.clone(), values: (v, *value) });
                    continue;
                }
                Some(_) => continue,
                None => {
                    by_key.insert(key, *value);
                }
            }
            if let Some(&other) = by_value.get(value) {
                violations.push(Violation::NotInjective { keys: (other.clone(), key.clone()), value: *value });
            } else {
                by_value.insert(*value, key);
            }
        }
        ValidationReport { violations }
    }

    pub fn into_pair(self) -> Result<PartialPair> {
        let report = self.validate();
        if !report.is_ok() {
            return Err(Error::InvalidPair(report));
        }
        let mut pair = PartialPair::empty();
        pair.atoms = self.atoms.into_iter().collect();
        for (key, value) in self.entries {
            pair.inverse.insert(value, key.clone());
            pair.coding.insert(key, value);
        }
        pair.labels = self.labels;
        Ok(pair)
    }
}

/// A valid finite partial pair. Equality ignores presentation labels.
#[derive(Clone, Debug, Default)]
pub struct PartialPair {
    atoms: BTreeSet<Atom>,
    coding: BTreeMap<Key, Atom>,
    inverse: BTreeMap<Atom, Key>,
    labels: BTreeMap<Atom, String>,
}

impl PartialEq for PartialPair {
    fn eq(&self, other: &Self) -> bool {
        self.atoms == other.atoms && self.coding == other.coding
    }
}

impl Eq for PartialPair {}

impl PartialPair {
    pub fn empty() -> PartialPair {
        PartialPair::default()
    }

    /// Builds and validates a pair from raw numbers: `entries` are
    /// `(args, res, value)` triples.
    pub fn build(
        atoms: impl IntoIterator<Item = u128>,
        entries: impl IntoIterator<Item = (Vec<u128>, u128, u128)>,
    ) -> Result<PartialPair> {
        PairData {
            atoms: atoms.into_iter().map(Atom).collect(),
            entries: entries
                .into_iter()
                .map(|(args, res, value)| (Key::new(args.into_iter().map(Atom), Atom(res)), Atom(value)))
                .collect(),
            labels: BTreeMap::new(),
        }
        .into_pair()
    }

    /// The free pair (empty coding) on atoms `0..n`.
    pub fn free(n: u128) -> PartialPair {
        PartialPair::build(0..n, []).expect("free pair is valid")
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, a: Atom) -> bool {
        self.atoms.contains(&a)
    }

    pub fn coding(&self) -> &BTreeMap<Key, Atom> {
        &self.coding
    }

    pub fn lookup(&self, key: &Key) -> Option<Atom> {
        self.coding.get(key).copied()
    }

    /// The unique key coded as `value`, if any.
    pub fn preimage(&self, value: Atom) -> Option<&Key> {
        self.inverse.get(&value)
    }

    pub fn labels(&self) -> &BTreeMap<Atom, String> {
        &self.labels
    }

    pub fn label(&self, a: Atom) -> String {
        self.labels.get(&a).cloned().unwrap_or_else(|| a.to_string())
    }

    pub fn with_labels(mut self, labels: BTreeMap<Atom, String>) -> PartialPair {
        self.labels = labels;
        self
    }

    pub fn to_data(&self) -> PairData {
        PairData {
            atoms: self.atoms.iter().copied().collect(),
            entries: self.coding.iter().map(|(k, v)| (k.clone(), *v)).collect(),
            labels: self.labels.clone(),
        }
    }

    /// `self ≤ other`: carrier inclusion and `other` agrees with `self` on
    /// every coded key of `self`.
    pub fn is_subpair(&self, other: &PartialPair) -> bool {
        self.atoms.is_subset(&other.atoms)
            && self.coding.iter().all(|(k, v)| other.coding.get(k) == Some(v))
    }

    /// Union of carriers and codings; fails when the codings disagree on a
    /// shared key or the merged coding is not injective.
    pub fn union(&self, other: &PartialPair) -> Result<PartialPair> {
        let mut data = self.to_data();
        for &a in &other.atoms {
            if !self.atoms.contains(&a) {
                data.atoms.push(a);
            }
        }
        for (k, v) in &other.coding {
            match self.coding.get(k) {
                Some(w) if w != v => {
                    return Err(Error::UnionConflict(format!("key {k} is coded as {w} and as {v}")));
                }
                Some(_) => {}
                None => data.entries.push((k.clone(), *v)),
            }
        }
        for (a, l) in &other.labels {
            data.labels.entry(*a).or_insert_with(|| l.clone());
        }
        data.into_pair().map_err(|e| match e {
            Error::InvalidPair(report) => Error::UnionConflict(report.to_string()),
            e => e,
        })
    }

    /// The sub pair induced on `keep`: atoms in `keep`, and the coded
    /// entries whose atoms all lie in `keep`.
    pub fn induced(&self, keep: &BTreeSet<Atom>) -> PartialPair {
        let mut data = PairData {
            atoms: self.atoms.intersection(keep).copied().collect(),
            entries: Vec::new(),
            labels: self.labels.iter().filter(|(a, _)| keep.contains(a)).map(|(a, l)| (*a, l.clone())).collect(),
        };
        for (k, v) in &self.coding {
            if keep.contains(v) && k.atoms().all(|a| keep.contains(&a)) {
                data.entries.push((k.clone(), *v));
            }
        }
        data.into_pair().expect("induced sub pair of a valid pair is valid")
    }

    /// Renames atoms along an injective map defined on the whole carrier.
    pub fn transport(&self, f: impl Fn(Atom) -> Atom) -> Result<PartialPair> {
        let mut data = PairData::default();
        for &a in &self.atoms {
            data.atoms.push(f(a));
            if let Some(l) = self.labels.get(&a) {
                data.labels.insert(f(a), l.clone());
            }
        }
        for (k, v) in &self.coding {
            data.entries.push((Key::new(k.args.iter().map(|&a| f(a)), f(k.res)), f(*v)));
        }
        data.into_pair()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> PartialPair {
        PartialPair::build([0], [(vec![0], 0, 0)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(p1().to_data().validate().is_ok());

        let bad = PairData {
            atoms: vec![Atom(0)],
            entries: vec![(Key::new([Atom(0)], Atom(0)), Atom(0)), (Key::new([], Atom(0)), Atom(0))],
            labels: BTreeMap::new(),
        };
        let report = bad.validate();
        assert!(matches!(report.violations[..], [Violation::NotInjective { .. }]));

        let outside = PairData {
            atoms: vec![Atom(0)],
            entries: vec![(Key::new([Atom(0)], Atom(5)), Atom(0))],
            labels: BTreeMap::new(),
        };
        assert!(matches!(
            outside.validate().violations[..],
            [Violation::OutsideCarrier { atom: Atom(5), .. }]
        ));

        let fun = PairData {
            atoms: vec![Atom(0), Atom(1)],
            entries: vec![(Key::new([], Atom(0)), Atom(0)), (Key::new([], Atom(0)), Atom(1))],
            labels: BTreeMap::new(),
        };
        assert!(matches!(fun.validate().violations[..], [Violation::NotAFunction { .. }]));
        assert!(matches!(fun.into_pair(), Err(Error::InvalidPair(_))));
    }

    #[test]
    fn subpair_examples() {
        let p = p1();
        assert!(p.is_subpair(&p));
        assert!(PartialPair::empty().is_subpair(&p));
        assert!(!p.is_subpair(&PartialPair::free(1)));
        assert!(PartialPair::free(1).is_subpair(&p));
    }

    #[test]
    fn union_examples() {
        let p = p1();
        assert_eq!(p.union(&p).unwrap(), p);

        let q = PartialPair::build([7, 8], [(vec![], 7, 8)]).unwrap();
        let u = p.union(&q).unwrap();
        assert_eq!(u.len(), 3);
        assert!(p.is_subpair(&u) && q.is_subpair(&u));

        let a = PartialPair::build([0, 1, 2], [(vec![0], 0, 1)]).unwrap();
        let b = PartialPair::build([0, 1, 2], [(vec![0], 0, 2)]).unwrap();
        assert!(matches!(a.union(&b), Err(Error::UnionConflict(_))));

        let c = PartialPair::build([0, 1, 2], [(vec![], 0, 1)]).unwrap();
        assert!(matches!(a.union(&c), Err(Error::UnionConflict(_))), "shared value breaks injectivity");
    }

    #[test]
    fn induced_and_transport() {
        let p = PartialPair::build([0, 1, 2], [(vec![0], 1, 2), (vec![], 0, 0)]).unwrap();
        let sub = p.induced(&[Atom(0), Atom(1)].into_iter().collect());
        assert_eq!(sub, PartialPair::build([0, 1], [(vec![], 0, 0)]).unwrap());
        assert!(sub.is_subpair(&p));

        let moved = p.transport(|a| Atom(a.0 + 10)).unwrap();
        assert_eq!(moved.lookup(&Key::new([Atom(10)], Atom(11))), Some(Atom(12)));
        assert_eq!(moved.preimage(Atom(10)), Some(&Key::new([], Atom(10))));
    }
}
