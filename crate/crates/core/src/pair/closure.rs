use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Atom, Key, PairData, PartialPair};

/// A computable coding `c : X* × X ⇀ X` over some element type.
///
/// Graph models (completions, the minimum model) implement it totally;
/// finite partial pairs return `None` off their domain.
pub trait Coding {
    type Elem: Clone + Ord + fmt::Debug;

    /// `args` is sorted and duplicate free.
    fn code(&self, args: &[Self::Elem], res: &Self::Elem) -> Option<Self::Elem>;
}

impl Coding for PartialPair {
    type Elem = Atom;

    fn code(&self, args: &[Atom], res: &Atom) -> Option<Atom> {
        self.lookup(&Key { args: args.to_vec(), res: *res })
    }
}

type Entries<E> = BTreeMap<(Vec<E>, E), E>;

/// The closure of a seed under a coding, cut off after a number of rounds.
#[derive(Clone, Debug)]
pub struct GeneratedSubmodel<E> {
    pub elements: BTreeSet<E>,
    /// Every scanned key whose value stays inside `elements`.
    pub coding: Entries<E>,
    pub rounds: usize,
    /// No round added an element: `elements` is closed under the coding.
    pub saturated: bool,
}

impl<E: Clone + Ord + fmt::Debug> GeneratedSubmodel<E> {
    /// Re-expresses the closure as a finite partial pair with atoms `0..n`
    /// in element order.
    pub fn to_partial_pair(&self, label: impl Fn(&E) -> String) -> PartialPair {
        let ids: BTreeMap<&E, Atom> =
            self.elements.iter().enumerate().map(|(i, e)| (e, Atom(i as u128))).collect();
        let data = PairData {
            atoms: ids.values().copied().collect(),
            entries: self
                .coding
                .iter()
                .map(|((args, res), v)| (Key::new(args.iter().map(|a| ids[a]), ids[res]), ids[v]))
                .collect(),
            labels: ids.iter().map(|(e, a)| (*a, label(e))).collect(),
        };
        data.into_pair().expect("closure of an injective coding is a partial pair")
    }
}

fn subsets<E: Clone>(xs: &[E]) -> impl Iterator<Item = Vec<E>> + '_ {
    (0u64..1 << xs.len()).map(move |mask| {
        xs.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

/// Applies `coding` to every `(a, α)` with `a ⊆ X`, `α ∈ X` for up to
/// `rounds` rounds starting from `X = seed`. A round whose key count
/// `2^|X|·|X|` would exceed `key_ceiling` is not run and leaves the result
/// unsaturated.
pub fn generate_subgraphmodel<C: Coding>(
    coding: &C,
    seed: impl IntoIterator<Item = C::Elem>,
    rounds: usize,
    key_ceiling: u64,
) -> GeneratedSubmodel<C::Elem> {
    let mut elements: BTreeSet<C::Elem> = seed.into_iter().collect();
    let mut entries = BTreeMap::new();
    let mut done = 0;
    let within = |n: usize| n < 63 && (1u64 << n).saturating_mul(n as u64) <= key_ceiling;

    let scan = |xs: &BTreeSet<C::Elem>, entries: &mut Entries<C::Elem>| {
        let list: Vec<C::Elem> = xs.iter().cloned().collect();
        let mut produced = BTreeSet::new();
        for a in subsets(&list) {
            for res in &list {
                if let Some(v) = coding.code(&a, res) {
                    entries.insert((a.clone(), res.clone()), v.clone());
                    produced.insert(v);
                }
            }
        }
        produced
    };

    let mut saturated = false;
    while done < rounds && within(elements.len()) {
        let produced = scan(&elements, &mut entries);
        done += 1;
        let before = elements.len();
        elements.extend(produced);
        if elements.len() == before {
            saturated = true;
            break;
        }
    }
    if !saturated && within(elements.len()) {
        // complete the induced coding on the final carrier
        scan(&elements, &mut entries);
    }
    entries.retain(|_, v| elements.contains(v));
    GeneratedSubmodel { elements, coding: entries, rounds: done, saturated }
}
