//! The free completion `E_A` of a partial pair.
//!
//! `E_0 = A` and `E_{n+1} = E_n ∪ ((E_n* × E_n) − dom(c_A))`, with the
//! total injective coding `c_E(a, α) = c_A(a, α)` where defined and the
//! formal pair `(a, α)` otherwise.

mod element;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::pair::{Atom, Coding, Key, Morphism, PairData, PartialPair};

pub use element::Element;

/// Default bound on the number of elements any explicit enumeration may produce.
pub const DEFAULT_CEILING: u64 = 1_000_000;

/// A partial pair viewed through its completion.
#[derive(Clone, Debug)]
pub struct Completion {
    pair: PartialPair,
    ceiling: u64,
}

/// The rank-`k` restriction `B_k ≤ E_A` as a finite partial pair.
///
/// Atoms of `A` keep their numbers; the remaining elements of `E_k` are
/// numbered after the largest atom in (rank, structural) order, so
/// `B_k ≤ B_{k+1}` holds literally.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub pair: PartialPair,
    pub rank: u32,
    elements: BTreeMap<Atom, Element>,
    ids: HashMap<Element, Atom>,
}

impl Restriction {
    pub fn element(&self, a: Atom) -> Option<&Element> {
        self.elements.get(&a)
    }

    pub fn atom(&self, e: &Element) -> Option<Atom> {
        self.ids.get(e).copied()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.elements.values()
    }
}

fn subsets(xs: &[Element]) -> impl Iterator<Item = Vec<Element>> + '_ {
    (0u64..1 << xs.len()).map(move |mask| {
        xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x.clone()).collect()
    })
}

impl Completion {
    pub fn new(pair: PartialPair) -> Completion {
        Completion { pair, ceiling: DEFAULT_CEILING }
    }

    pub fn with_ceiling(mut self, ceiling: u64) -> Completion {
        self.ceiling = ceiling;
        self
    }

    pub fn pair(&self) -> &PartialPair {
        &self.pair
    }

    pub fn ceiling(&self) -> u64 {
        self.ceiling
    }

    /// `c_E(a, α)`. `args` need not be sorted.
    pub fn apply_coding(&self, args: &[Element], res: &Element) -> Element {
        if let Some(key) = self.base_key(args, res) {
            if let Some(v) = self.pair.lookup(&key) {
                return Element::base(v);
            }
        }
        Element::pair(args.iter().cloned(), res.clone())
    }

    fn base_key(&self, args: &[Element], res: &Element) -> Option<Key> {
        let atoms = args.iter().map(Element::as_base).collect::<Option<Vec<_>>>()?;
        Some(Key::new(atoms, res.as_base()?))
    }

    /// Inverse of the coding: the unique `(a, α)` with `c_E(a, α) = e`, if any.
    /// Pairs always decode; atoms decode when they are coded values of `A`.
    pub fn decode(&self, e: &Element) -> Option<(Vec<Element>, Element)> {
        match e.as_pair() {
            Some((args, res)) => Some((args.to_vec(), res.clone())),
            None => {
                let key = self.pair.preimage(e.as_base()?)?;
                Some((key.args.iter().map(|&a| Element::base(a)).collect(), Element::base(key.res)))
            }
        }
    }

    /// Checks that `e` lies in `E_A`: atoms belong to `A`, and no pair node
    /// has a key coded by `c_A`.
    pub fn validate_element(&self, e: &Element) -> Result<()> {
        if let Some(a) = e.as_base() {
            return if self.pair.contains(a) {
                Ok(())
            } else {
                Err(Error::InvalidElement(format!("atom {a} is not in the carrier")))
            };
        }
        let (args, res) = e.as_pair().unwrap();
        for x in args.iter().chain(std::iter::once(res)) {
            self.validate_element(x)?;
        }
        if let Some(key) = self.base_key(args, res) {
            if let Some(v) = self.pair.lookup(&key) {
                return Err(Error::InvalidElement(format!(
                    "{} is coded as {} in the pair",
                    e.render(&self.pair),
                    self.pair.label(v)
                )));
            }
        }
        Ok(())
    }

    /// Parses and validates an element.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let e = Element::parse(text, &self.pair)?;
        self.validate_element(&e)?;
        Ok(e)
    }

    /// `|E_0|, ..., |E_k|` by `|E_{n+1}| = |A| + 2^{|E_n|}·|E_n| − |dom c_A|`,
    /// or `None` past `u128`.
    pub fn counts(&self, k: u32) -> Vec<Option<u128>> {
        let base = self.pair.len() as u128;
        let dom = self.pair.coding().len() as u128;
        let mut out = vec![Some(base)];
        for _ in 0..k {
            let next = out.last().unwrap().and_then(|n| {
                let pow = if n < 128 { 1u128.checked_shl(n as u32)? } else { return None };
                (base + pow.checked_mul(n)?).checked_sub(dom)
            });
            out.push(next);
        }
        out
    }

    fn check_ceiling(&self, k: u32) -> Result<()> {
        match self.counts(k)[k as usize] {
            Some(n) if n <= self.ceiling as u128 => Ok(()),
            Some(n) => Err(Error::CeilingExceeded { predicted: n.to_string(), ceiling: self.ceiling }),
            None => Err(Error::CeilingExceeded {
                predicted: "more than 2^128".to_string(),
                ceiling: self.ceiling,
            }),
        }
    }

    /// `E_0, ..., E_k` as levels: `levels[n]` holds the elements of rank exactly `n`.
    pub fn levels(&self, k: u32) -> Result<Vec<Vec<Element>>> {
        self.check_ceiling(k)?;
        let mut levels: Vec<Vec<Element>> = vec![self.pair.atoms().iter().map(|&a| Element::base(a)).collect()];
        let mut all: Vec<Element> = levels[0].clone();
        for n in 1..=k {
            let mut fresh = BTreeSet::new();
            for a in subsets(&all) {
                for res in &all {
                    let e = self.apply_coding(&a, res);
                    if e.rank() == n {
                        fresh.insert(e);
                    }
                }
            }
            all.extend(fresh.iter().cloned());
            levels.push(fresh.into_iter().collect());
        }
        Ok(levels)
    }

    /// `E_k`, in structural order.
    pub fn elements_up_to(&self, k: u32) -> Result<BTreeSet<Element>> {
        Ok(self.levels(k)?.into_iter().flatten().collect())
    }

    /// The finite pair `B_k`: carrier `E_k`, and every key of `c_E` whose
    /// arguments and value all lie in `E_k`.
    pub fn restriction(&self, k: u32) -> Result<Restriction> {
        let levels = self.levels(k)?;
        let next = self.pair.atoms().iter().next_back().map_or(0, |a| a.0 + 1);
        let mut elements = BTreeMap::new();
        let mut ids = HashMap::new();
        for (i, e) in levels.iter().flatten().enumerate() {
            let id = match e.as_base() {
                Some(a) => a,
                None => Atom(next + (i - levels[0].len()) as u128),
            };
            elements.insert(id, e.clone());
            ids.insert(e.clone(), id);
        }
        let mut data = PairData {
            atoms: elements.keys().copied().collect(),
            entries: self.pair.coding().iter().map(|(k, v)| (k.clone(), *v)).collect(),
            labels: elements.iter().map(|(a, e)| (*a, e.render(&self.pair))).collect(),
        };
        for level in &levels[1..] {
            for e in level {
                let (args, res) = e.as_pair().expect("positive rank elements are pairs");
                data.entries.push((Key::new(args.iter().map(|x| ids[x]), ids[res]), ids[e]));
            }
        }
        let pair = data.into_pair().expect("restriction of a completion is a partial pair");
        Ok(Restriction { pair, rank: k, elements, ids })
    }

    /// The image of `e` under the unique morphism `E_A → G` fixing `A`
    /// (through `embed`) into a total coding `g` that extends `c_A`.
    pub fn canonical_morphism<G: Coding>(
        &self,
        g: &G,
        embed: impl Fn(Atom) -> G::Elem,
        e: &Element,
    ) -> Result<G::Elem> {
        for (key, &value) in self.pair.coding() {
            let args: Vec<G::Elem> = key.args.iter().map(|&a| embed(a)).collect();
            let mut args = args;
            args.sort();
            args.dedup();
            if g.code(&args, &embed(key.res)) != Some(embed(value)) {
                return Err(Error::NotAnExtension(key.to_string()));
            }
        }
        let mut memo = HashMap::new();
        self.morph(g, &embed, e, &mut memo)
    }

    fn morph<G: Coding>(
        &self,
        g: &G,
        embed: &impl Fn(Atom) -> G::Elem,
        e: &Element,
        memo: &mut HashMap<Element, G::Elem>,
    ) -> Result<G::Elem> {
        if let Some(hit) = memo.get(e) {
            return Ok(hit.clone());
        }
        let image = match e.as_pair() {
            None => embed(e.as_base().unwrap()),
            Some((args, res)) => {
                let mut fa = args.iter().map(|x| self.morph(g, embed, x, memo)).collect::<Result<Vec<_>>>()?;
                fa.sort();
                fa.dedup();
                let fr = self.morph(g, embed, res, memo)?;
                g.code(&fa, &fr).ok_or_else(|| Error::NotAnExtension(format!("target coding undefined at {e}")))?
            }
        };
        memo.insert(e.clone(), image.clone());
        Ok(image)
    }

    /// The automorphism of `E_A` induced by an automorphism of `A`.
    pub fn lift(&self, theta: &Morphism, e: &Element) -> Result<Element> {
        let embed = |a: Atom| Element::base(theta.apply(a).expect("automorphism is total"));
        self.canonical_morphism(self, embed, e)
    }
}

impl Coding for Completion {
    type Elem = Element;

    fn code(&self, args: &[Element], res: &Element) -> Option<Element> {
        Some(self.apply_coding(args, res))
    }
}
