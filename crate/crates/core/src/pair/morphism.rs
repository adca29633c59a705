use std::collections::{BTreeMap, BTreeSet};

use super::{Atom, Key, PartialPair};
use crate::error::{Error, Result};

/// Largest carrier for which [`PartialPair::automorphisms`] runs by default.
pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 8;

/// A carrier map between partial pairs. Whether it commutes with the
/// codings is checked against a concrete source and target by
/// [`Morphism::is_morphism`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    map: BTreeMap<Atom, Atom>,
}

impl Morphism {
    pub fn new(map: BTreeMap<Atom, Atom>) -> Morphism {
        Morphism { map }
    }

    pub fn identity(p: &PartialPair) -> Morphism {
        Morphism { map: p.atoms().iter().map(|&a| (a, a)).collect() }
    }

    pub fn map(&self) -> &BTreeMap<Atom, Atom> {
        &self.map
    }

    pub fn apply(&self, a: Atom) -> Option<Atom> {
        self.map.get(&a).copied()
    }

    pub fn apply_key(&self, key: &Key) -> Option<Key> {
        let args = key.args.iter().map(|&a| self.apply(a)).collect::<Option<Vec<_>>>()?;
        Some(Key::new(args, self.apply(key.res)?))
    }

    /// `self ∘ first`
    pub fn after(&self, first: &Morphism) -> Morphism {
        Morphism {
            map: first.map.iter().filter_map(|(&a, &b)| Some((a, self.apply(b)?))).collect(),
        }
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let mut inv = BTreeMap::new();
        for (&a, &b) in &self.map {
            if inv.insert(b, a).is_some() {
                return None;
            }
        }
        Some(Morphism { map: inv })
    }

    /// Total on `source`, lands in `target`, and for every coded `(a, α)`
    /// of the source, `(f a, f α)` is coded in the target with
    /// `f(c_A(a, α)) = c_B(f a, f α)`.
    pub fn is_morphism(&self, source: &PartialPair, target: &PartialPair) -> bool {
        let total = source
            .atoms()
            .iter()
            .all(|a| self.apply(*a).is_some_and(|b| target.contains(b)));
        total
            && source.coding().iter().all(|(key, value)| {
                let image = self.apply_key(key).expect("total");
                target.lookup(&image) == self.apply(*value)
            })
    }

    pub fn is_automorphism(&self, p: &PartialPair) -> bool {
        self.map.len() == p.len()
            && self.is_morphism(p, p)
            && self.inverse().is_some_and(|inv| inv.is_morphism(p, p))
    }
}

impl PartialPair {
    /// All automorphisms, identity first, for carriers of at most `bound` atoms.
    ///
    /// Backtracking over partial bijections; every coded entry is checked as
    /// soon as all atoms it mentions have an image.
    pub fn automorphisms_bounded(&self, bound: usize) -> Result<Vec<Morphism>> {
        if self.len() > bound {
            return Err(Error::TooManyAtoms { atoms: self.len(), limit: bound });
        }
        let atoms: Vec<Atom> = self.atoms().iter().copied().collect();
        let index: BTreeMap<Atom, usize> = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut ready: Vec<Vec<(&Key, Atom)>> = vec![Vec::new(); atoms.len()];
        for (key, &value) in self.coding() {
            let last = key.atoms().chain(std::iter::once(value)).map(|a| index[&a]).max().unwrap();
            ready[last].push((key, value));
        }

        let mut found = Vec::new();
        let mut image: Vec<Option<Atom>> = vec![None; atoms.len()];
        let mut used = BTreeSet::new();
        self.extend_bijection(&atoms, &index, &ready, 0, &mut image, &mut used, &mut found);
        Ok(found)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend_bijection(
        &self,
        atoms: &[Atom],
        index: &BTreeMap<Atom, usize>,
        ready: &[Vec<(&Key, Atom)>],
        i: usize,
        image: &mut Vec<Option<Atom>>,
        used: &mut BTreeSet<Atom>,
        found: &mut Vec<Morphism>,
    ) {
        if i == atoms.len() {
            let map = atoms.iter().zip(image.iter()).map(|(&a, b)| (a, b.unwrap())).collect();
            found.push(Morphism { map });
            return;
        }
        // identity candidate first so the identity is found first
        let candidates = std::iter::once(atoms[i]).chain(atoms.iter().copied().filter(|&b| b != atoms[i]));
        for b in candidates {
            if used.contains(&b) {
                continue;
            }
            image[i] = Some(b);
            used.insert(b);
            let f = |a: Atom| image[index[&a]].unwrap();
            let consistent = ready[i].iter().all(|(key, value)| {
                let k = Key::new(key.args.iter().map(|&a| f(a)), f(key.res));
                self.lookup(&k) == Some(f(*value))
            });
            if consistent {
                self.extend_bijection(atoms, index, ready, i + 1, image, used, found);
            }
            used.remove(&b);
            image[i] = None;
        }
    }

    pub fn automorphisms(&self) -> Result<Vec<Morphism>> {
        self.automorphisms_bounded(DEFAULT_AUTOMORPHISM_BOUND)
    }

    /// Orbit partition under the automorphism group, ordered by least member.
    pub fn orbits(&self) -> Result<Vec<BTreeSet<Atom>>> {
        let auts = self.automorphisms()?;
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for &a in self.atoms() {
            if seen.contains(&a) {
                continue;
            }
            let orbit: BTreeSet<Atom> = auts.iter().map(|t| t.apply(a).unwrap()).collect();
            seen.extend(orbit.iter().copied());
            orbits.push(orbit);
        }
        Ok(orbits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u128]) -> BTreeSet<Atom> {
        xs.iter().map(|&x| Atom(x)).collect()
    }

    #[test]
    fn free_pair_has_full_symmetric_group() {
        let p = PartialPair::free(2);
        let auts = p.automorphisms().unwrap();
        assert_eq!(auts.len(), 2);
        assert_eq!(auts[0], Morphism::identity(&p));
        assert_eq!(p.orbits().unwrap(), vec![set(&[0, 1])]);
        assert_eq!(PartialPair::free(4).automorphisms().unwrap().len(), 24);
    }

    #[test]
    fn coded_singleton_is_rigid() {
        let p = PartialPair::build([0], [(vec![0], 0, 0)]).unwrap();
        assert_eq!(p.automorphisms().unwrap(), vec![Morphism::identity(&p)]);
        assert_eq!(p.orbits().unwrap(), vec![set(&[0])]);
    }

    #[test]
    fn coded_triple_breaks_swap() {
        // Exhaustively: the swap sends ({0},0)↦0 to ({1},1)↦1, which is not coded.
        let p = PartialPair::build([0, 1], [(vec![0], 0, 0)]).unwrap();
        let swap = Morphism::new([(Atom(0), Atom(1)), (Atom(1), Atom(0))].into_iter().collect());
        assert!(!swap.is_morphism(&p, &p));
        assert!(Morphism::identity(&p).is_morphism(&p, &p));
        assert_eq!(p.automorphisms().unwrap().len(), 1);
        assert_eq!(p.orbits().unwrap(), vec![set(&[0]), set(&[1])]);
    }

    #[test]
    fn symmetric_coding_keeps_swap() {
        let p = PartialPair::build([0, 1], [(vec![0], 0, 1), (vec![1], 1, 0)]).unwrap();
        assert_eq!(p.automorphisms().unwrap().len(), 2);
        assert_eq!(p.orbits().unwrap().len(), 1);
    }

    #[test]
    fn bound_enforced() {
        assert!(matches!(
            PartialPair::free(9).automorphisms(),
            Err(Error::TooManyAtoms { atoms: 9, limit: 8 })
        ));
        assert_eq!(PartialPair::free(9).automorphisms_bounded(9).unwrap().len(), 362_880);
    }

    #[test]
    fn group_laws() {
        let p = PartialPair::build([0, 1, 2, 3], [(vec![0], 1, 2), (vec![1], 0, 3)]).unwrap();
        let auts = p.automorphisms().unwrap();
        for a in &auts {
            assert!(a.is_automorphism(&p));
            assert!(auts.contains(&a.inverse().unwrap()));
            for b in &auts {
                assert!(auts.contains(&a.after(b)));
            }
        }
    }

    #[test]
    fn morphism_into_larger_pair() {
        let a = PartialPair::build([0], [(vec![0], 0, 0)]).unwrap();
        let b = PartialPair::build([5, 6], [(vec![5], 5, 5), (vec![], 6, 5 + 1)]).unwrap();
        let f = Morphism::new([(Atom(0), Atom(5))].into_iter().collect());
        assert!(f.is_morphism(&a, &b));
        let g = Morphism::new([(Atom(0), Atom(6))].into_iter().collect());
        assert!(!g.is_morphism(&a, &b));
    }
}
