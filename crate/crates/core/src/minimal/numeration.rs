//! A bijective numeration `k ↦ N_k` of all finite partial pairs with
//! carrier a finite set of naturals.
//!
//! A pair has the code `⟨carrier, Σ_t 2^t⟩`, where `carrier` is the
//! characteristic number of the carrier, `t = ⟨⟨args, α⟩, value⟩` ranges over
//! the coded entries, `args` is again a characteristic number and `⟨·,·⟩`
//! is Cantor pairing. Every natural decodes to some raw structure; `N_k` is
//! the pair with the `k`-th smallest code that decodes to a valid pair.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::natural::{bitset_code, bitset_members, cantor_pair, cantor_unpair};
use crate::pair::{Atom, Key, PairData, PartialPair};

fn small(a: Atom) -> Result<u64> {
    u64::try_from(a.0).map_err(|_| Error::Overflow(format!("atom {a} is too large to number")))
}

/// The code of a pair. Atoms must fit in 64 bits.
pub fn pair_code(p: &PartialPair) -> Result<BigUint> {
    let carrier = bitset_code(p.atoms().iter().map(|&a| small(a)).collect::<Result<Vec<_>>>()?);
    let mut coding = BigUint::zero();
    for (key, &value) in p.coding() {
        let args = bitset_code(key.args.iter().map(|&a| small(a)).collect::<Result<Vec<_>>>()?);
        let inner = cantor_pair(&args, &BigUint::from(small(key.res)?));
        let t = cantor_pair(&inner, &BigUint::from(small(value)?));
        let bit = t.to_u64().ok_or_else(|| Error::Overflow("coded entry out of range".into()))?;
        coding.set_bit(bit, true);
    }
    Ok(cantor_pair(&carrier, &coding))
}

/// The pair with this code, if the code describes a valid pair.
pub fn decode_pair_code(code: &BigUint) -> Option<PartialPair> {
    let (carrier, coding) = cantor_unpair(code);
    let mut data = PairData { atoms: bitset_members(&carrier).into_iter().map(|x| Atom(x as u128)).collect(), ..Default::default() };
    for t in bitset_members(&coding) {
        let (inner, value) = cantor_unpair(&BigUint::from(t));
        let (args, res) = cantor_unpair(&inner);
        let args = bitset_members(&args).into_iter().map(|x| Atom(x as u128));
        data.entries.push((Key::new(args, Atom(res.to_u64()? as u128)), Atom(value.to_u64()? as u128)));
    }
    data.into_pair().ok()
}

#[derive(Default)]
struct Table {
    codes: Vec<BigUint>,
    next: BigUint,
}

impl Table {
    fn extend_to_len(&mut self, len: usize) {
        while self.codes.len() < len {
            self.step();
        }
    }

    fn extend_past(&mut self, code: &BigUint) {
        while &self.next <= code {
            self.step();
        }
    }

    fn step(&mut self) {
        if decode_pair_code(&self.next).is_some() {
            self.codes.push(self.next.clone());
        }
        self.next += 1u32;
    }
}

fn table() -> &'static Mutex<Table> {
    static TABLE: OnceLock<Mutex<Table>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// `N_k`
pub fn enumerate_pair(k: usize) -> PartialPair {
    let code = {
        let mut t = table().lock().expect("numeration table poisoned");
        t.extend_to_len(k + 1);
        t.codes[k].clone()
    };
    decode_pair_code(&code).expect("table holds valid codes")
}

/// The index `k` with `N_k = p`; labels are ignored.
pub fn encode_pair(p: &PartialPair) -> Result<usize> {
    let code = pair_code(p)?;
    let mut t = table().lock().expect("numeration table poisoned");
    t.extend_past(&code);
    Ok(t.codes.binary_search(&code).expect("valid pairs have valid codes"))
}
