//! The effective minimum graph model `E_P`.
//!
//! Every finite partial pair `N_k` is moved onto the carrier
//! `P_k = {p_k^{x+1} : x ∈ N_k}` (with `p_k` the `k`-th prime), making the
//! components pairwise disjoint. `P = ∪ P_k` with the union coding is a
//! partial pair with decidable carrier and coding, and its completion `E_P`
//! has the least order theory among graph models. An inequation failing in
//! some graph model already fails in the completion of a single component,
//! which is what [`search_counterexample`] scans for.

mod coded;
mod numeration;
mod primes;

use std::collections::BTreeMap;

use log::info;
use rayon::prelude::*;

use crate::completion::Completion;
use crate::error::{Error, Result};
use crate::graph::{approx_contains, approx_interpret, check_inequation, Verdict};
use crate::pair::{Atom, Coding, Key, Morphism, PartialPair};
use crate::semantics::Environment;
use crate::term::Term;

pub use coded::CodedElement;
pub use numeration::{decode_pair_code, encode_pair, enumerate_pair, pair_code};
pub use primes::{nth_prime, prime_index, prime_power, PRIME_INDEX_LIMIT};

/// The relocation `x ↦ p_k^{x+1}` as a map on the carrier of `N_k`.
pub fn relocation(k: usize) -> Result<Morphism> {
    let p = nth_prime(k) as u128;
    let n = enumerate_pair(k);
    let mut map = BTreeMap::new();
    for &x in n.atoms() {
        let exp = u32::try_from(x.0 + 1).map_err(|_| Error::Overflow(format!("exponent {}", x.0 + 1)))?;
        let y = p.checked_pow(exp).ok_or_else(|| Error::Overflow(format!("{p}^{exp}")))?;
        map.insert(x, Atom(y));
    }
    Ok(Morphism::new(map))
}

/// The component `P_k ≅ N_k`.
pub fn relocate(k: usize) -> Result<PartialPair> {
    let f = relocation(k)?;
    enumerate_pair(k).transport(|x| f.apply(x).expect("total on the carrier"))
}

/// The component containing `n`: `n = p_k^{x+1}` with `x` an atom of `N_k`.
pub fn component_of(n: u128) -> Result<usize> {
    let Some((p, e)) = prime_power(n)? else {
        return Err(Error::NotInCarrier(n));
    };
    let k = prime_index(p)?.expect("prime_power returns primes");
    if enumerate_pair(k).contains(Atom(e as u128 - 1)) {
        Ok(k)
    } else {
        Err(Error::NotInCarrier(n))
    }
}

/// Membership in `P`. Fails only when the smallest prime factor of `n` is
/// too large to index.
pub fn is_in_p(n: u128) -> Result<bool> {
    match component_of(n) {
        Ok(_) => Ok(true),
        Err(Error::NotInCarrier(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `c_{E_P}`: the component coding when every input is an atom of one
/// component `P_k` and the key is coded there, the formal pair otherwise.
pub fn universal_coding(args: &[CodedElement], res: &CodedElement) -> Result<CodedElement> {
    let formal = || CodedElement::pair(args.iter().cloned(), res.clone());
    let atoms: Option<Vec<u128>> = args.iter().chain(std::iter::once(res)).map(CodedElement::as_atom).collect();
    let Some(atoms) = atoms else {
        return Ok(formal());
    };
    let mut component = None;
    for &n in &atoms {
        let k = match component_of(n) {
            Ok(k) => k,
            Err(Error::NotInCarrier(_)) => return Ok(formal()),
            Err(e) => return Err(e),
        };
        if component.is_some_and(|j| j != k) {
            return Ok(formal());
        }
        component = Some(k);
    }
    let pk = relocate(component.expect("res is an atom"))?;
    let key = Key::new(args.iter().map(|e| Atom(e.as_atom().unwrap())), Atom(res.as_atom().unwrap()));
    Ok(match pk.lookup(&key) {
        Some(v) => CodedElement::Atom(v.0),
        None => formal(),
    })
}

/// `E_P` as a coding handle. Inputs whose components cannot be indexed
/// leave the coding undefined.
#[derive(Clone, Copy, Debug, Default)]
pub struct MinimalModel;

impl Coding for MinimalModel {
    type Elem = CodedElement;

    fn code(&self, args: &[CodedElement], res: &CodedElement) -> Option<CodedElement> {
        universal_coding(args, res).ok()
    }
}

/// Scans the components `P_0, ..., P_K` for the first one whose completion
/// separates `M ⊑ N` at the given bounds. Components run in parallel; the
/// least index wins. Components whose completions exceed the ceiling are
/// skipped with a logged notice.
pub fn search_counterexample(m: &Term, n: &Term, max_index: usize, k_m: u32, k_n: u32) -> Result<Option<(usize, Verdict)>> {
    if k_n < k_m {
        return Err(Error::Format(format!("k_N = {k_n} must be at least k_M = {k_m}")));
    }
    Ok((0..=max_index).into_par_iter().find_map_first(|k| {
        let attempt = relocate(k).and_then(|p| check_inequation(m, n, &Completion::new(p), k_m, k_n));
        match attempt {
            Ok(v) if v.fails() => Some((k, v)),
            Ok(_) => None,
            Err(e) => {
                info!("component {k} skipped: {e}");
                None
            }
        }
    }))
}

/// Checks `Q^{E_{P_k}} = Q^{E_U} ∩ E_{P_k}` at rank `r`, where `U` is the
/// union of the components `0..=k+2`. Both sides are compared on every
/// element of rank at most `r` built from `P_k` alone.
pub fn restriction_property_check(q: &Term, k: usize, r: u32) -> Result<bool> {
    let components: Vec<usize> = (0..=k + 2).collect();
    restriction_property_check_with(q, k, r, &components)
}

/// As [`restriction_property_check`] with an explicit set of components for `U`.
pub fn restriction_property_check_with(q: &Term, k: usize, r: u32, components: &[usize]) -> Result<bool> {
    let own = Completion::new(relocate(k)?);
    let mut union = own.pair().clone();
    for &j in components {
        union = union.union(&relocate(j)?)?;
    }
    let whole = Completion::new(union);
    let env = Environment::new();
    let inside = approx_interpret(q, &own, &env, r)?;
    for e in own.elements_up_to(r)? {
        if approx_contains(q, &whole, &env, r, &e)? != inside.contains(&e) {
            info!("restriction property fails at {e}");
            return Ok(false);
        }
    }
    Ok(true)
}
